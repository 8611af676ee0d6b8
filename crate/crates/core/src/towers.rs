//! The function-space tower `X, Q^X, Q^{Q^X}, ...`.
//!
//! A level-`L` function is a map from the level-`L-1` space into the
//! quantale. Functions whose argument space is small enough are stored as
//! tables in codec order; the codec is the base-`|Q|` positional encoding
//! `Σ g(i)·|Q|^i`. Anything larger is procedural. Procedural functions can
//! still be hashed ("fingerprinted") by evaluating them on a deterministic
//! probe set, which is what makes seeded sampling possible at levels whose
//! spaces cannot be enumerated.

use crate::quantale::Elem;
use num_bigint::BigUint;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Default materialization cap, in table entries.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// Argument spaces above this size are fingerprinted through probes instead
/// of full tabulation.
const FINGERPRINT_LIMIT: u64 = 4096;

/// Probe count per non-enumerable space.
const PROBES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("space at level {level} has {cardinality} elements, above the cap of {cap}")]
    CapExceeded { level: u32, cardinality: String, cap: u64 },
}

/// SplitMix64 finalizer. Every seeded choice in the crate goes through this
/// mix so runs are reproducible bit-for-bit.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        mix64(self.0)
    }

    /// Uniform in `0..bound` (bound > 0), by rejection.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}

/// Derives an independent seed from a parent seed and a tag.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    mix64(seed ^ mix64(tag.wrapping_add(0x632b_e59b_d9b4_e019)))
}

// ---------------------------------------------------------------------------
// codec

/// Positional base-`n` encoding of a table.
pub fn encode(n: usize, digits: &[Elem]) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * n as u64 + d as u64)
}

/// Inverse of [`encode`] for tables of length `len`.
pub fn decode(n: usize, len: usize, mut index: u64) -> Vec<Elem> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((index % n as u64) as Elem);
        index /= n as u64;
    }
    out
}

/// `n^len` if it fits in `u64`.
pub fn pow_checked(n: usize, len: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..len {
        acc = acc.checked_mul(n as u64)?;
    }
    Some(acc)
}

fn cap_error(level: u32, n: usize, len: usize, cap: u64) -> TowerError {
    TowerError::CapExceeded {
        level,
        cardinality: pow_checked(n, len).map_or_else(|| format!("{n}^{len}"), |c| c.to_string()),
        cap,
    }
}

/// All tables `Q^len` in codec order, provided there are at most `cap`.
pub fn enumerate_tables(n: usize, len: usize, cap: u64) -> Result<impl Iterator<Item = Vec<Elem>>, TowerError> {
    let count = pow_checked(n, len).filter(|&c| c <= cap).ok_or_else(|| cap_error(1, n, len, cap))?;
    Ok((0..count).map(move |i| decode(n, len, i)))
}

/// All maps `{0..from} -> {0..to}` as image vectors, in codec order.
pub fn enumerate_maps(from: usize, to: usize, cap: u64) -> Result<impl Iterator<Item = Vec<usize>>, TowerError> {
    let count = pow_checked(to, from).filter(|&c| c <= cap).ok_or_else(|| cap_error(0, to, from, cap))?;
    Ok((0..count).map(move |mut i| {
        (0..from)
            .map(|_| {
                let d = (i % to as u64) as usize;
                i /= to as u64;
                d
            })
            .collect()
    }))
}

// ---------------------------------------------------------------------------
// space descriptors

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cardinality {
    Exact(BigUint),
    Overflow,
}

impl Cardinality {
    pub fn as_u64(&self) -> Option<u64> {
        match self {
            Cardinality::Exact(b) => u64::try_from(b).ok(),
            Cardinality::Overflow => None,
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Exact(b) if b.bits() <= 64 => write!(f, "{b}"),
            Cardinality::Exact(b) => write!(f, "~2^{}", b.bits()),
            Cardinality::Overflow => f.write_str("overflow"),
        }
    }
}

/// Level `level` of the tower over a base set of `base` points and a
/// quantale with `q` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceDescriptor {
    pub q: usize,
    pub base: usize,
    pub level: u32,
}

/// Exponents above this are reported as overflow rather than computed.
const MAX_EXACT_EXPONENT: u64 = 1 << 20;

impl SpaceDescriptor {
    pub fn new(q: usize, base: usize, level: u32) -> Self {
        SpaceDescriptor { q, base, level }
    }

    pub fn cardinality(&self) -> Cardinality {
        let mut card = Cardinality::Exact(BigUint::from(self.base));
        for _ in 0..self.level {
            card = match card {
                Cardinality::Exact(c) => match u64::try_from(&c) {
                    Ok(e) if e <= MAX_EXACT_EXPONENT => Cardinality::Exact(BigUint::from(self.q).pow(e as u32)),
                    _ => Cardinality::Overflow,
                },
                Cardinality::Overflow => Cardinality::Overflow,
            };
        }
        card
    }

    pub fn argument_space(&self) -> Option<SpaceDescriptor> {
        (self.level > 0).then(|| SpaceDescriptor { level: self.level - 1, ..*self })
    }
}

// ---------------------------------------------------------------------------
// values

pub type Evaluator = Arc<dyn Fn(&Value) -> Elem + Send + Sync>;

/// A sparse function: explicit entries, bottom elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sparse {
    entries: Vec<(u64, Elem)>,
    bottom: Elem,
}

impl Sparse {
    /// Entries equal to `bottom` are dropped; duplicate keys are joined by
    /// the caller beforehand.
    pub fn new(mut entries: Vec<(u64, Elem)>, bottom: Elem) -> Self {
        entries.retain(|&(_, v)| v != bottom);
        entries.sort_unstable_by_key(|&(k, _)| k);
        Sparse { entries, bottom }
    }

    pub fn get(&self, index: u64) -> Elem {
        match self.entries.binary_search_by_key(&index, |&(k, _)| k) {
            Ok(i) => self.entries[i].1,
            Err(_) => self.bottom,
        }
    }

    /// The entries that differ from bottom, by increasing index.
    pub fn support(&self) -> &[(u64, Elem)] {
        &self.entries
    }
}

/// An element of some level of a tower. Points live at level 0; everything
/// else is a function of the level below.
#[derive(Clone)]
pub enum Value {
    Point(usize),
    Table(Arc<[Elem]>),
    Sparse(Arc<Sparse>),
    Proc(Evaluator),
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Point(p) => write!(f, "Point({p})"),
            Value::Table(t) => write!(f, "Table({t:?})"),
            Value::Sparse(s) => write!(f, "Sparse({:?})", s.support()),
            Value::Proc(_) => f.write_str("Proc(..)"),
        }
    }
}

impl Value {
    pub fn table(t: Vec<Elem>) -> Value {
        Value::Table(t.into())
    }

    pub fn procedural(f: impl Fn(&Value) -> Elem + Send + Sync + 'static) -> Value {
        Value::Proc(Arc::new(f))
    }

    pub fn as_point(&self) -> usize {
        match self {
            Value::Point(p) => *p,
            other => panic!("expected a point, got {other:?}"),
        }
    }
}

/// A functional together with the space it lives in.
#[derive(Debug, Clone)]
pub struct Functional {
    pub space: SpaceDescriptor,
    pub value: Value,
}

/// Context for one tower: quantale size, base size and the cap. Shared by
/// reference-counting because procedural values capture it.
#[derive(Debug)]
pub struct Tower {
    q: usize,
    base: usize,
    cap: u64,
    seed: u64,
    /// `card[L]` for every level whose cardinality fits in `u64`.
    card: Vec<u64>,
}

impl Tower {
    pub fn new(q: usize, base: usize, cap: u64, seed: u64) -> Arc<Tower> {
        let mut card = vec![base as u64];
        while card.len() < 16 {
            match pow_checked(q, *card.last().unwrap() as usize) {
                Some(c) => card.push(c),
                None => break,
            }
        }
        Arc::new(Tower { q, base, cap, seed, card })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn space(&self, level: u32) -> SpaceDescriptor {
        SpaceDescriptor::new(self.q, self.base, level)
    }

    /// Cardinality of a level, if it fits in `u64`.
    pub fn card(&self, level: u32) -> Option<u64> {
        self.card.get(level as usize).copied()
    }

    /// Cardinality of a level if it is at most the cap.
    pub fn enumerable(&self, level: u32) -> Option<u64> {
        self.card(level).filter(|&c| c <= self.cap)
    }

    fn require(&self, level: u32) -> Result<u64, TowerError> {
        self.enumerable(level).ok_or_else(|| TowerError::CapExceeded {
            level,
            cardinality: self.space(level).cardinality().to_string(),
            cap: self.cap,
        })
    }

    /// The element of a level with the given codec index.
    pub fn decode(&self, level: u32, index: u64) -> Value {
        if level == 0 {
            Value::Point(index as usize)
        } else {
            let len = self.card(level - 1).expect("argument space fits in u64") as usize;
            Value::table(decode(self.q, len, index))
        }
    }

    /// Every element of a level, in codec order.
    pub fn enumerate(&self, level: u32) -> Result<impl Iterator<Item = Value> + '_, TowerError> {
        let count = self.require(level)?;
        if level > 0 {
            self.require(level - 1)?;
        }
        Ok((0..count).map(move |i| self.decode(level, i)))
    }

    /// Evaluates a level-`level` function at an argument from `level - 1`.
    ///
    /// Table and sparse functions only exist over argument spaces with a
    /// `u64` codec, so lookups here cannot fail.
    pub fn apply(&self, level: u32, f: &Value, arg: &Value) -> Elem {
        match f {
            Value::Table(t) => t[self.index(level - 1, arg) as usize],
            Value::Sparse(s) => s.get(self.index(level - 1, arg)),
            Value::Proc(p) => p(arg),
            Value::Point(_) => panic!("a point cannot be applied"),
        }
    }

    /// Codec index of a value. Panics if the level has no `u64` codec.
    pub fn index(&self, level: u32, v: &Value) -> u64 {
        match v {
            Value::Point(p) => *p as u64,
            Value::Table(t) => encode(self.q, t),
            _ => {
                let t = self.materialize(level, v).expect("argument of a tabulated function is enumerable");
                encode(self.q, &t)
            }
        }
    }

    /// Tabulates a function over its whole argument space.
    pub fn materialize(&self, level: u32, v: &Value) -> Result<Arc<[Elem]>, TowerError> {
        assert!(level > 0, "points have no table");
        if let Value::Table(t) = v {
            return Ok(t.clone());
        }
        let n = self.require(level - 1)?;
        Ok((0..n).map(|i| self.apply(level, v, &self.decode(level - 1, i))).collect())
    }

    /// A 64-bit hash that depends only on the function's values on a fixed
    /// deterministic set of arguments (all of them when there are few).
    /// Extensionally equal functions get equal fingerprints.
    pub fn fingerprint(&self, level: u32, v: &Value) -> u64 {
        if level == 0 {
            return mix64(v.as_point() as u64 ^ 0x5851_f42d_4c95_7f2d);
        }
        let fold = |acc: u64, d: Elem| mix64(acc ^ (d as u64 + 1)).wrapping_add(0x9e37_79b9);
        match self.card(level - 1) {
            Some(n) if n <= FINGERPRINT_LIMIT => match v {
                Value::Table(t) => t.iter().fold(level as u64, |a, &d| fold(a, d)),
                _ => (0..n).fold(level as u64, |a, i| fold(a, self.apply(level, v, &self.decode(level - 1, i)))),
            },
            _ => self.probes(level - 1).iter().fold(level as u64 ^ 0xabcd, |a, p| fold(a, self.apply(level, v, p))),
        }
    }

    /// The deterministic probe arguments for a level.
    pub fn probes(&self, level: u32) -> Vec<Value> {
        (0..PROBES)
            .map(|i| self.random_value(level, derive_seed(self.seed, 1000 + level as u64 * 64 + i as u64)))
            .collect()
    }

    /// A seeded element of a level: uniform tables when the argument space is
    /// enumerable, otherwise a procedural function whose value at each
    /// argument is a seeded hash of the argument's fingerprint.
    pub fn random_value(&self, level: u32, seed: u64) -> Value {
        let mut rng = SplitMix64::new(seed);
        if level == 0 {
            assert!(self.base > 0, "the empty set has no points to sample");
            return Value::Point(rng.below(self.base as u64) as usize);
        }
        match self.enumerable(level - 1) {
            Some(n) => Value::table((0..n).map(|_| rng.below(self.q as u64) as Elem).collect()),
            None => {
                let inner = Tower::new(self.q, self.base, self.cap, self.seed);
                let q = self.q as u64;
                Value::procedural(move |arg| (mix64(seed ^ inner.fingerprint(level - 1, arg)) % q) as Elem)
            }
        }
    }

    /// `count` seeded elements of a level; deterministic in `(seed, count)`.
    pub fn sample(&self, level: u32, count: usize, seed: u64) -> Vec<Value> {
        (0..count).map(|i| self.random_value(level, derive_seed(seed, i as u64))).collect()
    }

    /// `γ̂` for a level-`level` value `γ`: the level-`level + 2` function
    /// `Λ ↦ Λ(γ)`.
    pub fn hat(self: &Arc<Self>, level: u32, gamma: Value) -> Value {
        let tower = Arc::clone(self);
        Value::procedural(move |lambda| tower.apply(level + 1, lambda, &gamma))
    }

    /// The constant function at a level.
    pub fn constant(r: Elem) -> Value {
        Value::procedural(move |_| r)
    }
}

/// Free-standing form of [`Tower::sample`] keyed by a descriptor.
pub fn sample_function(space: SpaceDescriptor, count: usize, seed: u64, cap: u64) -> Vec<Value> {
    Tower::new(space.q, space.base, cap, seed).sample(space.level, count, seed)
}
