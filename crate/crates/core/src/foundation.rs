//! The foundation pipeline for matroids without `U(2,5)` and `U(3,5)` minors.
//!
//! Every nondegenerate cross ratio lives in the hexagon of some embedded
//! `U(2,4)` minor. The degenerate tip, cotip and parallel relations identify
//! slots of different hexagons; transporting along these identifications with
//! a union-find whose nodes carry hexagon symmetries yields, per component, a
//! monodromy subgroup of `S3`. The foundation is the tensor product of one
//! factor per component (`U`, `D`, `H` or `F3` for subgroup orders 1, 2, 3, 6)
//! with `F2` when a Fano-type minor is present.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bits::{self, Set};
use crate::crossratio::{
    build_hexagons, hexsym_from_anchor, omega_status, CrossRatioError, GpFunction, HexSym, Hexagon,
    OmegaStatus, PlueckerViolation, Slot, PLUS_EDGES,
};
use crate::matroid::{FanoPresence, Matroid, MatroidError, MAX_ELEMENTS};
use crate::pasture::{admits_morphism, hom_count_factor, FactorType, FinitePasture, Target};

/// Errors raised by the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoundationError {
    #[error("the matroid has a U(2,5) or U(3,5) minor")]
    LargeUniformMinor,
    #[error("relation {relation:?} at J={j:?}, elements {elems:?}: {reason}")]
    Integrity {
        relation: RelationSource,
        j: Vec<usize>,
        elems: Vec<usize>,
        reason: &'static str,
    },
    #[error("monodromy subgroup of order {0}")]
    BadSubgroupOrder(usize),
    #[error("chirotope violates a Pluecker relation at J={:?}, quad={:?}", .0.j, .0.quad)]
    InvalidChirotope(PlueckerViolation),
    #[error("chirotope is not all positive")]
    NotPositive,
    #[error("a {0} factor admits no orientation")]
    NotOrientable(FactorType),
    #[error("sign pattern of hexagon {hexagon} disagrees with its component")]
    InconsistentSigns { hexagon: usize },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    CrossRatio(#[from] CrossRatioError),
}

/// Which relation family produced an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationSource {
    /// Tip relation `<12|34>_J <12|45>_J <12|53>_J = 1`.
    R3,
    /// Cotip relation `<12|34>_{J5} <12|45>_{J3} <12|53>_{J4} = 1`.
    R4,
    /// Parallel relation `<1234>_{J5} = <1234>_{J6}`.
    R5,
}

/// An identification of slot `slot_a` of hexagon `hex_a` with slot `slot_b`
/// of hexagon `hex_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationEdge {
    pub hex_a: usize,
    pub slot_a: Slot,
    pub hex_b: usize,
    pub slot_b: Slot,
    pub source: RelationSource,
    /// The set `J` of the instance.
    pub j: Vec<usize>,
    /// The elements `e1, ..., e5` (or `e1, ..., e6` for parallel relations).
    pub elems: Vec<usize>,
}

/// Hexagons of a matroid with a lookup from `(J, residual)`.
pub struct HexagonIndex {
    pub hexagons: Vec<Hexagon>,
    lookup: HashMap<(Set, Set), usize>,
}

impl HexagonIndex {
    pub fn new(m: &Matroid) -> HexagonIndex {
        let hexagons = build_hexagons(m);
        let lookup = hexagons
            .iter()
            .enumerate()
            .map(|(i, h)| ((h.contracted(), h.site.residual_set()), i))
            .collect();
        HexagonIndex { hexagons, lookup }
    }

    /// The hexagon and slot of a nondegenerate tuple.
    pub fn locate(&self, j: Set, quad: [usize; 4]) -> Option<(usize, Slot)> {
        let &i = self.lookup.get(&(j, bits::from_elems(&quad)))?;
        Some((i, self.hexagons[i].slot_of(quad).ok()?))
    }
}

fn swap_last(q: [usize; 4]) -> [usize; 4] {
    [q[0], q[1], q[3], q[2]]
}

type Endpoint = (usize, Slot);

struct Harvest<'a> {
    m: &'a Matroid,
    index: &'a HexagonIndex,
    edges: BTreeMap<(Endpoint, Endpoint), RelationEdge>,
}

impl Harvest<'_> {
    fn status(&self, j: Set, quad: [usize; 4]) -> Result<OmegaStatus, FoundationError> {
        Ok(omega_status(self.m, j, quad)?.status)
    }

    fn add(
        &mut self,
        a: (Set, [usize; 4]),
        b: (Set, [usize; 4]),
        source: RelationSource,
        j: Set,
        elems: Vec<usize>,
    ) -> Result<(), FoundationError> {
        let integrity = |reason| FoundationError::Integrity {
            relation: source,
            j: bits::elems(j),
            elems: elems.clone(),
            reason,
        };
        let pa = self
            .index
            .locate(a.0, a.1)
            .ok_or_else(|| integrity("nondegenerate tuple without a hexagon"))?;
        let pb = self
            .index
            .locate(b.0, b.1)
            .ok_or_else(|| integrity("nondegenerate tuple without a hexagon"))?;
        if pa == pb {
            return Ok(());
        }
        let (p, q) = if pa <= pb { (pa, pb) } else { (pb, pa) };
        self.edges.entry((p, q)).or_insert(RelationEdge {
            hex_a: p.0,
            slot_a: p.1,
            hex_b: q.0,
            slot_b: q.1,
            source,
            j: bits::elems(j),
            elems,
        });
        Ok(())
    }

    /// Handles a three-term product relation whose tuples are given in order.
    fn product_relation(
        &mut self,
        tuples: [(Set, [usize; 4]); 3],
        source: RelationSource,
        j: Set,
        elems: Vec<usize>,
    ) -> Result<(), FoundationError> {
        let mut status = [OmegaStatus::NotInOmega; 3];
        for (s, t) in status.iter_mut().zip(tuples) {
            *s = self.status(t.0, t.1)?;
            if *s == OmegaStatus::NotInOmega {
                return Ok(());
            }
        }
        let degenerate: Vec<usize> = (0..3)
            .filter(|&i| status[i] == OmegaStatus::Degenerate)
            .collect();
        match degenerate.len() {
            0 => Err(FoundationError::Integrity {
                relation: source,
                j: bits::elems(j),
                elems,
                reason: "no degenerate member; the matroid has a large uniform minor",
            }),
            1 => {
                let d = degenerate[0];
                let ta = tuples[(d + 1) % 3];
                let tb = tuples[(d + 2) % 3];
                self.add(ta, (tb.0, swap_last(tb.1)), source, j, elems)
            }
            2 => Err(FoundationError::Integrity {
                relation: source,
                j: bits::elems(j),
                elems,
                reason: "two degenerate members force a nondegenerate cross ratio to equal 1",
            }),
            _ => Ok(()),
        }
    }
}

fn ordered_pairs(s: &[usize]) -> Vec<(usize, usize, [usize; 3])> {
    let mut out = Vec::new();
    for &a in s {
        for &b in s {
            if a != b {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != a && x != b).collect();
                out.push((a, b, [rest[0], rest[1], rest[2]]));
            }
        }
    }
    out
}

/// Harvests the identifications between hexagon slots coming from tip,
/// cotip and parallel relations with exactly one degenerate member.
pub fn harvest_relations(m: &Matroid) -> Result<Vec<RelationEdge>, FoundationError> {
    guard(m)?;
    let index = HexagonIndex::new(m);
    harvest_with_index(m, &index)
}

fn harvest_with_index(
    m: &Matroid,
    index: &HexagonIndex,
) -> Result<Vec<RelationEdge>, FoundationError> {
    let r = m.rank();
    let g = m.ground();
    let mut h = Harvest {
        m,
        index,
        edges: BTreeMap::new(),
    };
    if r >= 2 {
        for j in bits::subsets_of_size(g, r - 2)
            .into_iter()
            .filter(|&j| m.is_independent(j))
        {
            for five in bits::subsets_of_size(g & !j, 5) {
                for (e1, e2, [e3, e4, e5]) in ordered_pairs(&bits::elems(five)) {
                    let tuples = [
                        (j, [e1, e2, e3, e4]),
                        (j, [e1, e2, e4, e5]),
                        (j, [e1, e2, e5, e3]),
                    ];
                    h.product_relation(tuples, RelationSource::R3, j, vec![e1, e2, e3, e4, e5])?;
                }
            }
        }
    }
    if r >= 3 {
        for j in bits::subsets_of_size(g, r - 3)
            .into_iter()
            .filter(|&j| m.is_independent(j))
        {
            for five in bits::subsets_of_size(g & !j, 5) {
                for (e1, e2, [e3, e4, e5]) in ordered_pairs(&bits::elems(five)) {
                    let b = bits::bit;
                    let tuples = [
                        (j | b(e5), [e1, e2, e3, e4]),
                        (j | b(e3), [e1, e2, e4, e5]),
                        (j | b(e4), [e1, e2, e5, e3]),
                    ];
                    h.product_relation(tuples, RelationSource::R4, j, vec![e1, e2, e3, e4, e5])?;
                }
            }
            let rest = bits::elems(g & !j);
            for (i, &e5) in rest.iter().enumerate() {
                for &e6 in &rest[i + 1..] {
                    let (j5, j6) = (j | bits::bit(e5), j | bits::bit(e6));
                    if m.rank_of(j5) != r - 2 || m.closure(j5) != m.closure(j6) {
                        continue;
                    }
                    for quad in bits::subsets_of_size(g & !j5 & !j6, 4) {
                        let q = bits::elems(quad);
                        let quad = [q[0], q[1], q[2], q[3]];
                        if h.status(j5, quad)? == OmegaStatus::Nondegenerate
                            && h.status(j6, quad)? == OmegaStatus::Nondegenerate
                        {
                            let elems = vec![q[0], q[1], q[2], q[3], e5, e6];
                            h.add((j5, quad), (j6, quad), RelationSource::R5, j, elems)?;
                        }
                    }
                }
            }
        }
    }
    let mut edges: Vec<RelationEdge> = h.edges.into_values().collect();
    edges.sort_by_key(|e| (e.hex_a, e.slot_a, e.hex_b, e.slot_b, e.source));
    Ok(edges)
}

/// A connected component of the hexagon graph with its monodromy subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Member hexagon indices in increasing order; the first is the root frame.
    pub hexagons: Vec<usize>,
    /// Order of the monodromy subgroup, one of 1, 2, 3, 6.
    pub order: usize,
    /// The monodromy subgroup in the frame of the first member.
    pub subgroup: Vec<HexSym>,
    /// For each member, the transport from its slots to the frame of the first member.
    pub transport: Vec<HexSym>,
}

impl Component {
    /// The factor attached to the component.
    pub fn factor(&self) -> FactorType {
        match self.order {
            1 => FactorType::U,
            2 => FactorType::D,
            3 => FactorType::H,
            _ => FactorType::F3,
        }
    }
}

fn generate_subgroup(gens: &[HexSym]) -> BTreeSet<HexSym> {
    let mut group: BTreeSet<HexSym> = [HexSym::IDENTITY].into();
    loop {
        let mut next = group.clone();
        for &a in &group {
            for &g in gens {
                next.insert(a.compose(g));
            }
        }
        if next.len() == group.len() {
            return group;
        }
        group = next;
    }
}

struct UnionFind {
    parent: Vec<usize>,
    /// Transport from a node's slots to its parent's slots.
    offset: Vec<HexSym>,
    /// Monodromy generators, in the frame of each root.
    gens: Vec<Vec<HexSym>>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            offset: vec![HexSym::IDENTITY; n],
            gens: vec![Vec::new(); n],
        }
    }

    fn find(&mut self, i: usize) -> (usize, HexSym) {
        let p = self.parent[i];
        if p == i {
            return (i, HexSym::IDENTITY);
        }
        let (root, to_root) = self.find(p);
        let t = to_root.compose(self.offset[i]);
        self.parent[i] = root;
        self.offset[i] = t;
        (root, t)
    }

    fn union(&mut self, a: usize, b: usize, g: HexSym) {
        let (ra, ta) = self.find(a);
        let (rb, tb) = self.find(b);
        let k = tb.compose(g).compose(ta.inverse());
        if ra == rb {
            if !k.is_identity() {
                self.gens[ra].push(k);
            }
            return;
        }
        self.parent[ra] = rb;
        self.offset[ra] = k;
        let moved = std::mem::take(&mut self.gens[ra]);
        let conj = moved.into_iter().map(|h| k.compose(h).compose(k.inverse()));
        self.gens[rb].extend(conj);
    }
}

/// Union-find over hexagons; each edge transports slots by the unique
/// symmetry sending one endpoint to the other.
pub fn monodromy_components(
    n_hexagons: usize,
    edges: &[RelationEdge],
) -> Result<Vec<Component>, FoundationError> {
    let mut uf = UnionFind::new(n_hexagons);
    for e in edges {
        uf.union(e.hex_a, e.hex_b, hexsym_from_anchor(e.slot_a, e.slot_b));
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n_hexagons {
        let (root, _) = uf.find(i);
        members.entry(root).or_default().push(i);
    }
    let mut out = Vec::new();
    for (root, hexagons) in members {
        let to_root: Vec<HexSym> = hexagons.iter().map(|&i| uf.find(i).1).collect();
        let first_to_root = to_root[0];
        let back = first_to_root.inverse();
        let transport: Vec<HexSym> = to_root.iter().map(|t| back.compose(*t)).collect();
        let gens: Vec<HexSym> = uf.gens[root]
            .iter()
            .map(|h| back.compose(*h).compose(first_to_root))
            .collect();
        let subgroup: Vec<HexSym> = generate_subgroup(&gens).into_iter().collect();
        let order = subgroup.len();
        if ![1, 2, 3, 6].contains(&order) {
            return Err(FoundationError::BadSubgroupOrder(order));
        }
        out.push(Component {
            hexagons,
            order,
            subgroup,
            transport,
        });
    }
    out.sort_by(|a, b| a.hexagons.cmp(&b.hexagons));
    Ok(out)
}

/// Representation classes `C1` to `C12`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepresentationClass(pub u8);

impl RepresentationClass {
    /// Whether matroids in the class are representable over some field.
    pub fn field_representable(self) -> bool {
        matches!(self.0, 1..=8 | 10)
    }

    pub fn name(self) -> String {
        format!("C{}", self.0)
    }
}

impl fmt::Display for RepresentationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

impl Serialize for RepresentationClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// The foundation as a head pasture tensored with factors `U`, `D`, `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundationDecomposition {
    pub head: FactorType,
    pub fano: FanoPresence,
    pub hexagons: Vec<Hexagon>,
    pub edges: Vec<RelationEdge>,
    pub components: Vec<Component>,
}

impl FoundationDecomposition {
    /// Number of `U`, `D` and `H` factors.
    pub fn factor_counts(&self) -> BTreeMap<FactorType, usize> {
        let mut out: BTreeMap<FactorType, usize> =
            [(FactorType::U, 0), (FactorType::D, 0), (FactorType::H, 0)].into();
        for c in &self.components {
            if let Some(n) = out.get_mut(&c.factor()) {
                *n += 1;
            }
        }
        out
    }

    /// Head and factors as a list, the head first.
    pub fn factor_list(&self) -> Vec<FactorType> {
        let mut out = vec![self.head];
        for (t, n) in self.factor_counts() {
            out.extend(std::iter::repeat_n(t, n));
        }
        out
    }

    /// The `(head, factor multiset)` pair.
    pub fn signature(&self) -> (FactorType, BTreeMap<FactorType, usize>) {
        (self.head, self.factor_counts())
    }

    pub fn class(&self) -> RepresentationClass {
        let counts = self.factor_counts();
        let (u, d, h) = (
            counts[&FactorType::U] > 0,
            counts[&FactorType::D] > 0,
            counts[&FactorType::H] > 0,
        );
        let id = match self.head {
            FactorType::K => 12,
            FactorType::F3 => 6,
            FactorType::F2 => match (d, h, u) {
                (true, true, _) => 11,
                (true, false, _) => 9,
                (false, true, _) => 10,
                (false, false, true) => 8,
                (false, false, false) => 7,
            },
            _ => match (d, h, u) {
                (true, true, _) => 5,
                (true, false, _) => 3,
                (false, true, _) => 4,
                (false, false, true) => 2,
                (false, false, false) => 1,
            },
        };
        RepresentationClass(id)
    }

    /// JSON record with head, factor counts, class and per-component hexagons.
    pub fn to_json(&self) -> Value {
        let factors: serde_json::Map<String, Value> = self
            .factor_counts()
            .into_iter()
            .map(|(t, n)| (t.name().to_string(), json!(n)))
            .collect();
        let components: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                let hexagons: Vec<Value> = c
                    .hexagons
                    .iter()
                    .map(|&i| {
                        let h = &self.hexagons[i];
                        json!({"contracted": bits::elems(h.contracted()), "residual": h.residual})
                    })
                    .collect();
                json!({"factor": c.factor().name(), "order": c.order, "hexagons": hexagons})
            })
            .collect();
        let class = self.class();
        json!({
            "head": self.head.name(),
            "factors": factors,
            "class": class.name(),
            "field_representable": class.field_representable(),
            "fano": self.fano,
            "components": components,
        })
    }
}

/// Refuses matroids that are too large or have a large uniform minor.
pub fn guard(m: &Matroid) -> Result<(), FoundationError> {
    if m.n() > MAX_ELEMENTS {
        return Err(MatroidError::TooLarge(m.n()).into());
    }
    if m.has_large_uniform_minor() {
        return Err(FoundationError::LargeUniformMinor);
    }
    Ok(())
}

/// The foundation of `m`.
pub fn foundation(m: &Matroid) -> Result<FoundationDecomposition, FoundationError> {
    foundation_with_seed(m, None)
}

/// The foundation of `m`, processing relation edges in a seeded random order
/// when `seed` is given.
pub fn foundation_with_seed(
    m: &Matroid,
    seed: Option<u64>,
) -> Result<FoundationDecomposition, FoundationError> {
    guard(m)?;
    let index = HexagonIndex::new(m);
    let edges = harvest_with_index(m, &index)?;
    let mut order = edges.clone();
    if let Some(seed) = seed {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let components = monodromy_components(index.hexagons.len(), &order)?;
    let fano = m.fano_minor_presence()?;
    let has_f3 = components.iter().any(|c| c.order == 6);
    let head = match (fano.any(), has_f3) {
        (true, true) => FactorType::K,
        (true, false) => FactorType::F2,
        (false, true) => FactorType::F3,
        (false, false) => FactorType::F1pm,
    };
    Ok(FoundationDecomposition {
        head,
        fano,
        hexagons: index.hexagons,
        edges,
        components,
    })
}

/// The representation class of `m`.
pub fn classify(m: &Matroid) -> Result<RepresentationClass, FoundationError> {
    Ok(foundation(m)?.class())
}

/// Whether `m` is representable over the target.
pub fn representable_over(m: &Matroid, target: &Target) -> Result<bool, FoundationError> {
    let f = foundation(m)?;
    Ok(f.factor_list()
        .into_iter()
        .all(|t| admits_morphism(t, target)))
}

/// Number of morphisms from the foundation to a finite pasture, which is the
/// number of rescaling classes of representations.
pub fn hom_count(m: &Matroid, target: &FinitePasture) -> Result<u64, FoundationError> {
    let f = foundation(m)?;
    Ok(f.factor_list()
        .into_iter()
        .map(|t| hom_count_factor(t, target) as u64)
        .product())
}

/// A unit `+-2^exp` of the dyadic partial field; `z = 2^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicUnit {
    pub negative: bool,
    pub exp: i32,
}

impl DyadicUnit {
    pub const ONE: DyadicUnit = DyadicUnit {
        negative: false,
        exp: 0,
    };
    pub const MINUS_ONE: DyadicUnit = DyadicUnit {
        negative: true,
        exp: 0,
    };
    pub const Z: DyadicUnit = DyadicUnit {
        negative: false,
        exp: -1,
    };
    pub const Z_INV: DyadicUnit = DyadicUnit {
        negative: false,
        exp: 1,
    };

    /// The sign, as `1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    /// The image in GF(p) for an odd prime `p`.
    pub fn in_prime_field(self, p: u64) -> u64 {
        let two = if self.exp >= 0 { 2 } else { p.div_ceil(2) };
        let mut v = 1;
        for _ in 0..self.exp.unsigned_abs() {
            v = v * two % p;
        }
        if self.negative {
            (p - v) % p
        } else {
            v
        }
    }
}

impl fmt::Display for DyadicUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "" };
        match self.exp {
            0 => write!(f, "{sign}1"),
            -1 => write!(f, "{sign}z"),
            e => write!(f, "{sign}z^{}", -e),
        }
    }
}

impl Serialize for DyadicUnit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Lifts the six slot signs of a hexagon to the dyadic partial field: the
/// `+` edge with both signs positive receives `(z, z)`, the inverses of its
/// slots receive `z^-1`, and the remaining two slots receive `-1`.
pub fn lift_hexagon(signs: [i64; 6]) -> Option<[DyadicUnit; 6]> {
    let (a, b) = PLUS_EDGES
        .into_iter()
        .find(|&(a, b)| signs[a.0 as usize] == 1 && signs[b.0 as usize] == 1)?;
    let mut out = [DyadicUnit::MINUS_ONE; 6];
    for s in [a, b] {
        out[s.0 as usize] = DyadicUnit::Z;
        out[s.inverse().0 as usize] = DyadicUnit::Z_INV;
    }
    (out.map(DyadicUnit::sign) == signs).then_some(out)
}

/// The dyadic lift of one component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentLift {
    pub factor: FactorType,
    pub hexagons: Vec<usize>,
    /// Lifted values of `x` and `y` in the first member hexagon.
    pub pair: [DyadicUnit; 2],
    /// Lifted values of all six slots of every member hexagon.
    #[serde(skip)]
    pub slot_values: Vec<[DyadicUnit; 6]>,
}

/// The dyadic lift of an orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DyadicLift {
    pub components: Vec<ComponentLift>,
}

/// Cross-ratio signs of a chirotope at all six slots of a hexagon.
pub fn hexagon_signs(
    m: &Matroid,
    chirotope: &GpFunction,
    hex: &Hexagon,
) -> Result<[i64; 6], FoundationError> {
    let eps = chirotope.pasture().eps();
    let mut out = [0i64; 6];
    for s in Slot::ALL {
        let v = chirotope.cross_ratio(m, hex.contracted(), hex.quad_of(s))?;
        out[s.0 as usize] = if v == eps { -1 } else { 1 };
    }
    Ok(out)
}

/// Lifts an orientation of `m` to the dyadic partial field.
pub fn lift_orientation(
    m: &Matroid,
    chirotope: &GpFunction,
) -> Result<DyadicLift, FoundationError> {
    chirotope
        .validate(m)
        .map_err(FoundationError::InvalidChirotope)?;
    let f = foundation(m)?;
    if f.head != FactorType::F1pm {
        return Err(FoundationError::NotOrientable(f.head));
    }
    let mut components = Vec::new();
    for c in &f.components {
        let factor = c.factor();
        if !matches!(factor, FactorType::U | FactorType::D) {
            return Err(FoundationError::NotOrientable(factor));
        }
        let mut frame: Option<[i64; 6]> = None;
        let mut slot_values = Vec::new();
        for (&i, &t) in c.hexagons.iter().zip(&c.transport) {
            let signs = hexagon_signs(m, chirotope, &f.hexagons[i])?;
            let mut in_frame = [0i64; 6];
            for s in Slot::ALL {
                in_frame[t.apply(s).0 as usize] = signs[s.0 as usize];
            }
            match frame {
                None => frame = Some(in_frame),
                Some(prev) if prev != in_frame => {
                    return Err(FoundationError::InconsistentSigns { hexagon: i })
                }
                _ => {}
            }
            slot_values.push(
                lift_hexagon(signs).ok_or(FoundationError::InconsistentSigns { hexagon: i })?,
            );
        }
        let frame = frame.unwrap_or([1; 6]);
        for h in &c.subgroup {
            if Slot::ALL
                .iter()
                .any(|&s| frame[h.apply(s).0 as usize] != frame[s.0 as usize])
            {
                return Err(FoundationError::InconsistentSigns {
                    hexagon: c.hexagons[0],
                });
            }
        }
        let pair = [slot_values[0][0], slot_values[0][1]];
        components.push(ComponentLift {
            factor,
            hexagons: c.hexagons.clone(),
            pair,
            slot_values,
        });
    }
    Ok(DyadicLift { components })
}

/// Summary of an all-positive orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositiveOrientation {
    pub r: usize,
    pub near_regular: bool,
    pub lifts_to_u: u64,
    /// Whether the all-positive sign map satisfies every Pluecker relation.
    pub pluecker_ok: bool,
}

/// Checks that the foundation under an all-positive sign map is `U^r` and
/// counts the `2^r` lifts to the near-regular partial field. The Pluecker
/// relations of the sign map are reported, not enforced.
pub fn check_positive_orientation(
    m: &Matroid,
    chirotope: &GpFunction,
) -> Result<PositiveOrientation, FoundationError> {
    if m.bases().iter().any(|&b| chirotope.value(b) != 1) {
        return Err(FoundationError::NotPositive);
    }
    guard(m)?;
    let pluecker_ok = chirotope.validate(m).is_ok();
    let f = foundation(m)?;
    let counts = f.factor_counts();
    let near_regular =
        f.head == FactorType::F1pm && counts[&FactorType::D] == 0 && counts[&FactorType::H] == 0;
    if !near_regular {
        let bad = f
            .factor_list()
            .into_iter()
            .find(|&t| t != FactorType::U && t != FactorType::F1pm);
        return Err(FoundationError::NotOrientable(bad.unwrap_or(f.head)));
    }
    let r = counts[&FactorType::U];
    Ok(PositiveOrientation {
        r,
        near_regular,
        lifts_to_u: 1u64 << r,
        pluecker_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::catalog;
    use crate::pasture::{named_pasture, target_by_name};

    fn sig(name: &str) -> (FactorType, Vec<usize>) {
        let f = foundation(&catalog(name).unwrap()).unwrap();
        (f.head, f.factor_counts().into_values().collect())
    }

    #[test]
    fn foundation_examples() {
        let f = foundation(&Matroid::uniform(2, 4).unwrap()).unwrap();
        assert_eq!(f.head, FactorType::F1pm);
        assert_eq!(f.factor_counts()[&FactorType::U], 1);
        assert_eq!(sig("F7"), (FactorType::F2, vec![0, 0, 0]));
        assert_eq!(sig("C5dual"), (FactorType::F1pm, vec![1, 0, 0]));
    }

    #[test]
    fn harvest_examples() {
        assert!(harvest_relations(&Matroid::uniform(2, 4).unwrap())
            .unwrap()
            .is_empty());
        let c5 = harvest_relations(&catalog("C5").unwrap()).unwrap();
        assert!(!c5.is_empty() && c5.iter().all(|e| e.hex_a != e.hex_b));
        assert_eq!(
            harvest_relations(&catalog("C5dual").unwrap())
                .unwrap()
                .len(),
            6
        );
    }

    #[test]
    fn monodromy_examples() {
        let c5 = foundation(&catalog("C5").unwrap()).unwrap();
        assert_eq!(c5.components.len(), 1);
        assert_eq!(c5.components[0].order, 1);
        let f7m = foundation(&catalog("F7minus").unwrap()).unwrap();
        assert!(f7m.components.iter().any(|c| c.order == 2));
        assert!(f7m.components.iter().all(|c| c.order <= 2));
        let ag = foundation(&catalog("AG23").unwrap()).unwrap();
        assert!(ag.components.iter().any(|c| c.order == 3));
        assert!(ag.components.iter().all(|c| c.order == 1 || c.order == 3));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&catalog("F7minus").unwrap()).unwrap(),
            RepresentationClass(3)
        );
        assert_eq!(
            classify(&catalog("T8").unwrap()).unwrap(),
            RepresentationClass(6)
        );
        let sum = catalog("F7")
            .unwrap()
            .direct_sum(&catalog("F7minus").unwrap())
            .unwrap();
        let class = classify(&sum).unwrap();
        assert_eq!(class, RepresentationClass(9));
        assert!(!class.field_representable());
    }

    #[test]
    fn representability_examples() {
        let rep = |name: &str, over: &str| {
            representable_over(&catalog(name).unwrap(), &target_by_name(over).unwrap()).unwrap()
        };
        assert!(!rep("F7", "F3"));
        assert!(rep("F7minus", "S"));
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert!(!representable_over(&u24, &target_by_name("F2").unwrap()).unwrap());
    }

    #[test]
    fn hom_count_examples() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(hom_count(&u24, &named_pasture("F5").unwrap()).unwrap(), 3);
        assert_eq!(hom_count(&u24, &named_pasture("S").unwrap()).unwrap(), 3);
        assert_eq!(
            hom_count(&catalog("T8").unwrap(), &named_pasture("F3").unwrap()).unwrap(),
            1
        );
    }

    #[test]
    fn lift_examples() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        let hex = &foundation(&u24).unwrap().hexagons[0];
        let with_negative = |negative: &[[usize; 2]]| {
            let mut signs: BTreeMap<Set, i64> = u24.bases().iter().map(|&b| (b, 1)).collect();
            for pair in negative {
                signs.insert(bits::from_elems(pair), -1);
            }
            GpFunction::chirotope(&u24, &signs).unwrap()
        };
        let cases = [
            (vec![[1, 2]], [1, 1], [DyadicUnit::Z, DyadicUnit::Z]),
            (vec![], [1, -1], [DyadicUnit::Z_INV, DyadicUnit::MINUS_ONE]),
            (
                vec![[2, 3]],
                [-1, 1],
                [DyadicUnit::MINUS_ONE, DyadicUnit::Z_INV],
            ),
        ];
        for (negative, pattern, pair) in cases {
            let chi = with_negative(&negative);
            assert_eq!(hexagon_signs(&u24, &chi, hex).unwrap()[..2], pattern);
            assert_eq!(
                lift_orientation(&u24, &chi).unwrap().components[0].pair,
                pair
            );
        }
        let bad = with_negative(&[[1, 3]]);
        assert!(matches!(
            lift_orientation(&u24, &bad),
            Err(FoundationError::InvalidChirotope(_))
        ));
    }

    #[test]
    fn positive_orientation_examples() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        let p = check_positive_orientation(&u24, &GpFunction::all_positive(&u24)).unwrap();
        assert_eq!(
            (p.r, p.near_regular, p.lifts_to_u, p.pluecker_ok),
            (1, true, 2, true)
        );
        let mk4 = catalog("MK4").unwrap();
        let p = check_positive_orientation(&mk4, &GpFunction::all_positive(&mk4)).unwrap();
        assert_eq!(
            (p.r, p.near_regular, p.lifts_to_u, p.pluecker_ok),
            (0, true, 1, false)
        );
        let u25 = Matroid::uniform(2, 5).unwrap();
        assert_eq!(
            check_positive_orientation(&u25, &GpFunction::all_positive(&u25)),
            Err(FoundationError::LargeUniformMinor)
        );
    }

    #[test]
    fn dyadic_units_in_gf5() {
        assert_eq!(DyadicUnit::Z.in_prime_field(5), 3);
        assert_eq!(DyadicUnit::Z_INV.in_prime_field(5), 2);
        assert_eq!(DyadicUnit::MINUS_ONE.in_prime_field(5), 4);
    }
}
