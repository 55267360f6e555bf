//! Finite pastures: a finite abelian unit group with zero adjoined, a
//! distinguished involution `eps` playing the role of `-1`, and a set of
//! three-term sums declared null.
//!
//! Elements are indices: `0` is zero, `1` is the unit one and `1..=k` are the
//! units. The null set is stored as sorted triples and is kept closed under
//! multiplication by units, so membership is a single lookup.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::smallfield::{make_field, FieldError, FieldTable};

/// An element index: `0` is zero, `1..=units` are the units.
pub type Elem = u8;

/// Largest number of elements accepted by [`hom_enumerate`].
pub const HOM_SIZE_CAP: usize = 32;

/// Largest number of units a pasture may have.
pub const MAX_UNITS: usize = 255;

/// A single failed pasture axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    MulTableShape,
    MulOutOfRange { a: Elem, b: Elem },
    NotAssociative { a: Elem, b: Elem, c: Elem },
    NotCommutative { a: Elem, b: Elem },
    NotIdentity { a: Elem },
    NoInverse { a: Elem },
    EpsOutOfRange,
    EpsSquareNotOne,
    TripleOutOfRange { triple: [Elem; 3] },
    ZeroTripleMissing,
    SingleUnitNull { a: Elem },
    NegationMissing { x: Elem },
    NegationNotUnique { x: Elem, y: Elem },
    NotClosed { triple: [Elem; 3], unit: Elem },
}

/// Errors raised by pasture constructions and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PastureError {
    #[error("pasture axioms fail: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("unknown pasture `{0}`")]
    UnknownName(String),
    #[error("pasture with {0} elements exceeds the enumeration cap of 32")]
    TooLarge(usize),
    #[error("relation {0:?} needs at least two nonzero entries inside the pasture")]
    BadRelation([Elem; 3]),
    #[error("too many units ({0})")]
    TooManyUnits(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A finite pasture.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePasture {
    units: usize,
    eps: Elem,
    mul: Vec<Elem>,
    null: BTreeSet<[Elem; 3]>,
}

impl fmt::Debug for FinitePasture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePasture")
            .field("units", &self.units)
            .field("eps", &self.eps)
            .field("null", &self.null.len())
            .finish()
    }
}

/// JSON form: `{"units": k, "eps": e, "mul": [[..]], "null": [[a,b,c], ..]}`.
///
/// `mul` is the `k x k` table on units `1..=k` (row `i` holds the products
/// of unit `i + 1`), and `null` lists triples over `0..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PastureJson {
    pub units: usize,
    pub eps: Elem,
    pub mul: Vec<Vec<Elem>>,
    pub null: Vec<[Elem; 3]>,
}

fn sorted(mut t: [Elem; 3]) -> [Elem; 3] {
    t.sort_unstable();
    t
}

impl FinitePasture {
    /// Assembles a pasture from raw parts without checking any axiom.
    pub fn from_parts(
        units: usize,
        eps: Elem,
        mul: Vec<Elem>,
        null: impl IntoIterator<Item = [Elem; 3]>,
    ) -> Self {
        FinitePasture {
            units,
            eps,
            mul,
            null: null.into_iter().map(sorted).collect(),
        }
    }

    /// Builds the pasture whose null set is generated by `generators`, the
    /// trivial sum `0 + 0 + 0` and the sums `0 + x + eps*x`, then validates it.
    pub fn generated(
        units: usize,
        eps: Elem,
        mul: Vec<Elem>,
        generators: impl IntoIterator<Item = [Elem; 3]>,
    ) -> Result<Self, PastureError> {
        if units > MAX_UNITS {
            return Err(PastureError::TooManyUnits(units));
        }
        let mut p = FinitePasture::from_parts(units, eps, mul, generators);
        p.null.insert([0, 0, 0]);
        p.null.insert(sorted([0, 1, eps]));
        p.null = p.closure_of(&p.null);
        p.check()?;
        Ok(p)
    }

    /// Parses and validates the JSON form.
    pub fn from_json(json: &PastureJson) -> Result<Self, PastureError> {
        if json.units > MAX_UNITS {
            return Err(PastureError::TooManyUnits(json.units));
        }
        if json.mul.len() != json.units || json.mul.iter().any(|row| row.len() != json.units) {
            return Err(PastureError::Invalid(vec![Violation::MulTableShape]));
        }
        let p = FinitePasture::from_parts(
            json.units,
            json.eps,
            json.mul.concat(),
            json.null.iter().copied(),
        );
        p.check()?;
        Ok(p)
    }

    /// The JSON form with the full null set in sorted order.
    pub fn to_json(&self) -> PastureJson {
        PastureJson {
            units: self.units,
            eps: self.eps,
            mul: self
                .mul
                .chunks(self.units.max(1))
                .map(<[Elem]>::to_vec)
                .collect(),
            null: self.null.iter().copied().collect(),
        }
    }

    fn check(&self) -> Result<(), PastureError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(PastureError::Invalid(v))
        }
    }

    /// Number of units.
    pub fn units(&self) -> usize {
        self.units
    }

    /// Number of elements including zero.
    pub fn size(&self) -> usize {
        self.units + 1
    }

    /// The element playing the role of `-1`.
    pub fn eps(&self) -> Elem {
        self.eps
    }

    /// Unit indices `1..=k`.
    pub fn unit_elems(&self) -> impl Iterator<Item = Elem> + Clone {
        1..=self.units as Elem
    }

    /// Product of two elements.
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.mul[(a as usize - 1) * self.units + b as usize - 1]
        }
    }

    /// Multiplicative inverse of a unit; zero maps to zero.
    pub fn inv(&self, a: Elem) -> Elem {
        if a == 0 {
            return 0;
        }
        self.unit_elems()
            .find(|&b| self.mul(a, b) == 1)
            .unwrap_or(0)
    }

    /// `eps * a`.
    pub fn neg(&self, a: Elem) -> Elem {
        self.mul(self.eps, a)
    }

    /// `a^k` for a unit `a`.
    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Whether `a + b + c` is null.
    #[inline]
    pub fn is_null(&self, a: Elem, b: Elem, c: Elem) -> bool {
        self.null.contains(&sorted([a, b, c]))
    }

    /// The null set as sorted triples.
    pub fn null_triples(&self) -> &BTreeSet<[Elem; 3]> {
        &self.null
    }

    fn scale(&self, t: [Elem; 3], u: Elem) -> [Elem; 3] {
        sorted([self.mul(t[0], u), self.mul(t[1], u), self.mul(t[2], u)])
    }

    fn closure_of(&self, set: &BTreeSet<[Elem; 3]>) -> BTreeSet<[Elem; 3]> {
        let mut out = BTreeSet::new();
        for &t in set {
            for u in self.unit_elems() {
                out.insert(self.scale(t, u));
            }
        }
        out
    }

    /// Checks the group axioms, `eps^2 = 1`, and the null-set axioms.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let k = self.units as Elem;
        if self.mul.len() != self.units * self.units {
            return vec![Violation::MulTableShape];
        }
        for a in 1..=k {
            for b in 1..=k {
                let ab = self.mul(a, b);
                if ab == 0 || ab > k {
                    out.push(Violation::MulOutOfRange { a, b });
                    return out;
                }
            }
        }
        for a in 1..=k {
            if self.mul(1, a) != a || self.mul(a, 1) != a {
                out.push(Violation::NotIdentity { a });
            }
            if !(1..=k).any(|b| self.mul(a, b) == 1) {
                out.push(Violation::NoInverse { a });
            }
            for b in 1..=k {
                if self.mul(a, b) != self.mul(b, a) {
                    out.push(Violation::NotCommutative { a, b });
                }
                for c in 1..=k {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        out.push(Violation::NotAssociative { a, b, c });
                        return out;
                    }
                }
            }
        }
        if self.eps == 0 || self.eps > k {
            out.push(Violation::EpsOutOfRange);
            return out;
        }
        if self.mul(self.eps, self.eps) != 1 {
            out.push(Violation::EpsSquareNotOne);
        }
        for &t in &self.null {
            if t.iter().any(|&x| x > k) {
                out.push(Violation::TripleOutOfRange { triple: t });
                return out;
            }
        }
        if !self.null.contains(&[0, 0, 0]) {
            out.push(Violation::ZeroTripleMissing);
        }
        for x in 1..=k {
            if self.null.contains(&[0, 0, x]) {
                out.push(Violation::SingleUnitNull { a: x });
            }
            if !self.is_null(0, x, self.neg(x)) {
                out.push(Violation::NegationMissing { x });
            }
            for y in 1..=k {
                if y != self.neg(x) && self.is_null(0, x, y) && x <= y {
                    out.push(Violation::NegationNotUnique { x, y });
                }
            }
        }
        for &t in &self.null {
            for u in 1..=k {
                if !self.null.contains(&self.scale(t, u)) {
                    out.push(Violation::NotClosed { triple: t, unit: u });
                    break;
                }
            }
        }
        out
    }

    /// Order of a unit in the multiplicative group.
    pub fn order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// A small generating set of the unit group, chosen greedily.
    pub fn unit_generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span: BTreeSet<Elem> = [1].into();
        for u in self.unit_elems() {
            if span.contains(&u) {
                continue;
            }
            gens.push(u);
            span = self.subgroup(&gens);
        }
        gens
    }

    /// The subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[Elem]) -> BTreeSet<Elem> {
        let mut span: BTreeSet<Elem> = [1].into();
        let mut queue: VecDeque<Elem> = [1].into();
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if span.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        span
    }
}

/// The pasture of a finite field; field indices are kept as element indices.
pub fn field_pasture(field: &FieldTable) -> Result<FinitePasture, PastureError> {
    let q = field.order();
    let k = q - 1;
    let mut mul = Vec::with_capacity(k * k);
    for a in 1..q as u8 {
        for b in 1..q as u8 {
            mul.push(field.mul(a, b));
        }
    }
    let mut null = Vec::new();
    for a in 0..q as u8 {
        for b in a..q as u8 {
            let c = field.neg(field.add(a, b));
            if c >= b {
                null.push([a, b, c]);
            }
        }
    }
    FinitePasture::generated(k, field.neg(1), mul, null)
}

/// The cyclic group of order `k` with generator at index 2.
fn cyclic_mul(k: usize) -> Vec<Elem> {
    let mut mul = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            mul.push(((i + j) % k + 1) as Elem);
        }
    }
    mul
}

/// Catalog pasture names accepted by [`named_pasture`].
pub const NAMED_PASTURES: [&str; 13] = [
    "F1pm", "F2", "F3", "F4", "F5", "F7", "F8", "F9", "K", "S", "W", "H", "DmodZ2",
];

/// Catalog pastures.
///
/// `H` has units `z^i` at index `i + 1` with `z^3 = -1`; `DmodZ2` has units
/// `1, -1, z, -z` at indices `1..=4` with `z^2 = 1` and `z + z - 1` null.
pub fn named_pasture(name: &str) -> Result<FinitePasture, PastureError> {
    match name {
        "F1pm" => FinitePasture::generated(2, 2, cyclic_mul(2), []),
        "F2" | "F3" | "F4" | "F5" | "F7" | "F8" | "F9" => {
            let q: usize = name[1..]
                .parse()
                .map_err(|_| PastureError::UnknownName(name.to_string()))?;
            field_pasture(&make_field(q)?)
        }
        "K" => FinitePasture::generated(1, 1, vec![1], [[1, 1, 1]]),
        "S" => FinitePasture::generated(2, 2, cyclic_mul(2), [[1, 1, 2]]),
        "W" => FinitePasture::generated(2, 2, cyclic_mul(2), [[1, 1, 2], [1, 1, 1]]),
        "H" => FinitePasture::generated(6, 4, cyclic_mul(6), [[2, 6, 4]]),
        "DmodZ2" => {
            let mut mul = Vec::with_capacity(16);
            for a in 0..4u8 {
                for b in 0..4u8 {
                    mul.push((a ^ b) + 1);
                }
            }
            FinitePasture::generated(4, 2, mul, [[3, 3, 2]])
        }
        _ => Err(PastureError::UnknownName(name.to_string())),
    }
}

/// The categorical product: units are pairs, nullity is componentwise.
pub fn product(p1: &FinitePasture, p2: &FinitePasture) -> Result<FinitePasture, PastureError> {
    let (k1, k2) = (p1.units, p2.units);
    let k = k1 * k2;
    if k > MAX_UNITS {
        return Err(PastureError::TooManyUnits(k));
    }
    let idx = |a: Elem, b: Elem| -> Elem { ((a as usize - 1) * k2 + b as usize) as Elem };
    let comps = |x: Elem| -> (Elem, Elem) {
        if x == 0 {
            (0, 0)
        } else {
            let i = x as usize - 1;
            ((i / k2 + 1) as Elem, (i % k2 + 1) as Elem)
        }
    };
    let mut mul = Vec::with_capacity(k * k);
    for x in 1..=k as Elem {
        for y in 1..=k as Elem {
            let (a1, a2) = comps(x);
            let (b1, b2) = comps(y);
            mul.push(idx(p1.mul(a1, b1), p2.mul(a2, b2)));
        }
    }
    let mut null = Vec::new();
    for a in 0..=k as Elem {
        for b in a..=k as Elem {
            for c in b..=k as Elem {
                let (a1, a2) = comps(a);
                let (b1, b2) = comps(b);
                let (c1, c2) = comps(c);
                if p1.is_null(a1, b1, c1) && p2.is_null(a2, b2, c2) {
                    null.push([a, b, c]);
                }
            }
        }
    }
    FinitePasture::generated(k, idx(p1.eps, p2.eps), mul, null)
}

/// The tensor product (categorical coproduct): unit pairs modulo
/// `(x1, x2) ~ (-x1, -x2)`, with null sums generated from each factor.
pub fn tensor(p1: &FinitePasture, p2: &FinitePasture) -> Result<FinitePasture, PastureError> {
    let mut class: BTreeMap<(Elem, Elem), Elem> = BTreeMap::new();
    let mut reps: Vec<(Elem, Elem)> = Vec::new();
    for a in p1.unit_elems() {
        for b in p2.unit_elems() {
            if class.contains_key(&(a, b)) {
                continue;
            }
            reps.push((a, b));
            let id = reps.len() as Elem;
            class.insert((a, b), id);
            class.insert((p1.neg(a), p2.neg(b)), id);
        }
    }
    let k = reps.len();
    if k > MAX_UNITS {
        return Err(PastureError::TooManyUnits(k));
    }
    let pair = |a: Elem, b: Elem| -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            class[&(a, b)]
        }
    };
    let mut mul = Vec::with_capacity(k * k);
    for &(a1, a2) in &reps {
        for &(b1, b2) in &reps {
            mul.push(pair(p1.mul(a1, b1), p2.mul(a2, b2)));
        }
    }
    let mut gens = Vec::new();
    for t in p1.null_triples() {
        for y in p2.unit_elems() {
            gens.push([pair(t[0], y), pair(t[1], y), pair(t[2], y)]);
        }
    }
    for t in p2.null_triples() {
        for x in p1.unit_elems() {
            gens.push([pair(x, t[0]), pair(x, t[1]), pair(x, t[2])]);
        }
    }
    FinitePasture::generated(k, pair(p1.eps, 1), mul, gens)
}

/// Result of [`quotient_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientReport {
    pub pasture: FinitePasture,
    /// Map from elements of the input to elements of the quotient.
    pub projection: Vec<Elem>,
    /// Number of unit-collapse rounds that were needed.
    pub collapse_passes: usize,
}

impl QuotientReport {
    /// True when more than one collapse round was needed.
    pub fn needed_iteration(&self) -> bool {
        self.collapse_passes > 1
    }
}

/// The quotient `P // S`: add the relations to the null set, saturate under
/// the unit action, identify every unit `a` with `a - 1 + 0` null with `1`,
/// and repeat until no further units collapse.
pub fn quotient_report(
    p: &FinitePasture,
    relations: &[[Elem; 3]],
) -> Result<QuotientReport, PastureError> {
    for &t in relations {
        if t.iter().any(|&x| x as usize > p.units) || t.iter().filter(|&&x| x != 0).count() < 2 {
            return Err(PastureError::BadRelation(t));
        }
    }
    let mut cur = p.clone();
    cur.null.extend(relations.iter().map(|&t| sorted(t)));
    cur.null = cur.closure_of(&cur.null);
    let mut projection: Vec<Elem> = (0..=p.units as Elem).collect();
    let mut passes = 0;
    loop {
        let collapsing: Vec<Elem> = cur
            .unit_elems()
            .filter(|&a| a != 1 && cur.is_null(0, a, cur.eps))
            .collect();
        if collapsing.is_empty() {
            break;
        }
        passes += 1;
        let kernel = cur.subgroup(&collapsing);
        let mut coset_of: Vec<Elem> = vec![0; cur.units + 1];
        let mut reps: Vec<Elem> = Vec::new();
        for a in cur.unit_elems() {
            if coset_of[a as usize] != 0 {
                continue;
            }
            reps.push(a);
            let id = reps.len() as Elem;
            for &h in &kernel {
                coset_of[cur.mul(a, h) as usize] = id;
            }
        }
        let k = reps.len();
        let mut mul = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                mul.push(coset_of[cur.mul(a, b) as usize]);
            }
        }
        let null = cur.null.iter().map(|t| {
            sorted([
                coset_of[t[0] as usize],
                coset_of[t[1] as usize],
                coset_of[t[2] as usize],
            ])
        });
        let next = FinitePasture::from_parts(k, coset_of[cur.eps as usize], mul, null);
        for x in projection.iter_mut() {
            *x = coset_of[*x as usize];
        }
        cur = next;
        cur.null = cur.closure_of(&cur.null);
    }
    cur.check()?;
    Ok(QuotientReport {
        pasture: cur,
        projection,
        collapse_passes: passes,
    })
}

/// The quotient `P // S`; see [`quotient_report`].
pub fn quotient(p: &FinitePasture, relations: &[[Elem; 3]]) -> Result<FinitePasture, PastureError> {
    Ok(quotient_report(p, relations)?.pasture)
}

/// Ordered unit pairs `(u, v)` with `u + v - 1` null.
pub fn fundamental_pairs(p: &FinitePasture) -> Vec<(Elem, Elem)> {
    let mut out = Vec::new();
    for u in p.unit_elems() {
        for v in p.unit_elems() {
            if p.is_null(u, v, p.eps) {
                out.push((u, v));
            }
        }
    }
    out
}

/// The factor pastures produced by the foundation pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FactorType {
    U,
    D,
    H,
    F3,
    F2,
    F1pm,
    K,
}

impl FactorType {
    pub const ALL: [FactorType; 7] = [
        FactorType::U,
        FactorType::D,
        FactorType::H,
        FactorType::F3,
        FactorType::F2,
        FactorType::F1pm,
        FactorType::K,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FactorType::U => "U",
            FactorType::D => "D",
            FactorType::H => "H",
            FactorType::F3 => "F3",
            FactorType::F2 => "F2",
            FactorType::F1pm => "F1pm",
            FactorType::K => "K",
        }
    }
}

impl fmt::Display for FactorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FactorType {
    type Err = PastureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FactorType::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| PastureError::UnknownName(s.to_string()))
    }
}

/// Number of morphisms from a factor pasture to a finite pasture.
pub fn hom_count_factor(f: FactorType, p: &FinitePasture) -> usize {
    let eps = p.eps;
    let f3 = usize::from(p.is_null(1, 1, 1));
    let f2 = usize::from(eps == 1);
    match f {
        FactorType::U => fundamental_pairs(p).len(),
        FactorType::D => p.unit_elems().filter(|&u| p.is_null(u, u, eps)).count(),
        FactorType::H => p
            .unit_elems()
            .filter(|&u| p.pow(u, 3) == eps && p.is_null(u, p.neg(p.mul(u, u)), eps))
            .count(),
        FactorType::F3 => f3,
        FactorType::F2 => f2,
        FactorType::F1pm => 1,
        FactorType::K => f2 * f3,
    }
}

/// Infinite pastures that only appear as representability targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InfiniteTargetId {
    /// The near-regular partial field.
    U,
    /// The dyadic partial field.
    D,
    Q,
    R,
    C,
    /// The phase hyperfield.
    PhaseP,
}

impl InfiniteTargetId {
    pub const ALL: [InfiniteTargetId; 6] = [
        InfiniteTargetId::U,
        InfiniteTargetId::D,
        InfiniteTargetId::Q,
        InfiniteTargetId::R,
        InfiniteTargetId::C,
        InfiniteTargetId::PhaseP,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InfiniteTargetId::U => "U",
            InfiniteTargetId::D => "D",
            InfiniteTargetId::Q => "Q",
            InfiniteTargetId::R => "R",
            InfiniteTargetId::C => "C",
            InfiniteTargetId::PhaseP => "P",
        }
    }

    /// Whether a morphism from the factor type exists.
    pub fn admits(self, f: FactorType) -> bool {
        use FactorType as F;
        use InfiniteTargetId as T;
        match f {
            F::F1pm => true,
            F::U => true,
            F::D => !matches!(self, T::U),
            F::H => matches!(self, T::C | T::PhaseP),
            F::F3 | F::F2 | F::K => false,
        }
    }
}

/// A representability target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Finite(Box<FinitePasture>),
    Infinite(InfiniteTargetId),
}

/// Resolves a target name: catalog pastures, `U`, `D`, `Q`, `R`, `C`, and
/// `P` (or `PhaseP`) for the phase hyperfield.
pub fn target_by_name(name: &str) -> Result<Target, PastureError> {
    if name == "PhaseP" {
        return Ok(Target::Infinite(InfiniteTargetId::PhaseP));
    }
    if let Some(t) = InfiniteTargetId::ALL.into_iter().find(|t| t.name() == name) {
        return Ok(Target::Infinite(t));
    }
    Ok(Target::Finite(Box::new(named_pasture(name)?)))
}

/// Whether a morphism from the factor type to the target exists.
pub fn admits_morphism(f: FactorType, target: &Target) -> bool {
    match target {
        Target::Finite(p) => hom_count_factor(f, p) > 0,
        Target::Infinite(t) => t.admits(f),
    }
}

/// All morphisms `P -> Q`, each given as the list of images of the units
/// `1..=k` of `P`.
pub fn hom_enumerate(p: &FinitePasture, q: &FinitePasture) -> Result<Vec<Vec<Elem>>, PastureError> {
    for size in [p.size(), q.size()] {
        if size > HOM_SIZE_CAP {
            return Err(PastureError::TooLarge(size));
        }
    }
    let gens = p.unit_generators();
    let mut out = Vec::new();
    let mut choice = vec![1 as Elem; gens.len()];
    loop {
        if let Some(map) = extend_hom(p, q, &gens, &choice) {
            let image = |x: Elem| if x == 0 { 0 } else { map[x as usize - 1] };
            if image(p.eps) == q.eps
                && p.null
                    .iter()
                    .all(|t| q.is_null(image(t[0]), image(t[1]), image(t[2])))
            {
                out.push(map);
            }
        }
        let Some(i) = (0..choice.len()).find(|&i| (choice[i] as usize) < q.units) else {
            break;
        };
        choice[i] += 1;
        for c in choice.iter_mut().take(i) {
            *c = 1;
        }
    }
    Ok(out)
}

/// Extends generator images to a group homomorphism, if consistent.
fn extend_hom(
    p: &FinitePasture,
    q: &FinitePasture,
    gens: &[Elem],
    images: &[Elem],
) -> Option<Vec<Elem>> {
    let mut map = vec![0 as Elem; p.units];
    map[0] = 1;
    let mut queue: VecDeque<Elem> = [1].into();
    while let Some(x) = queue.pop_front() {
        let fx = map[x as usize - 1];
        for (&g, &fg) in gens.iter().zip(images) {
            let y = p.mul(x, g);
            let fy = q.mul(fx, fg);
            match map[y as usize - 1] {
                0 => {
                    map[y as usize - 1] = fy;
                    queue.push_back(y);
                }
                existing if existing != fy => return None,
                _ => {}
            }
        }
    }
    Some(map)
}

/// Whether some morphism `P -> Q` is bijective with a morphism as inverse.
pub fn is_isomorphic(p: &FinitePasture, q: &FinitePasture) -> Result<bool, PastureError> {
    if p.units != q.units || p.null.len() != q.null.len() {
        return Ok(false);
    }
    Ok(hom_enumerate(p, q)?.iter().any(|map| {
        let distinct: BTreeSet<Elem> = map.iter().copied().collect();
        distinct.len() == p.units
    }))
}
