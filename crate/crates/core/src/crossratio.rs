//! Cross ratios: membership in the tuple set Omega, hexagons of cross ratios
//! attached to embedded `U(2,4)` minors, the label-preserving symmetries of a
//! hexagon, and evaluation of cross ratios of concrete Grassmann-Pluecker
//! functions (field representations and chirotopes).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, Set};
use crate::matroid::{EmbeddedMinorSite, Matroid, MatroidError, MatroidJson};
use crate::pasture::{self, Elem, FinitePasture, PastureError};
use crate::smallfield::{FieldError, FieldTable};

/// Errors raised by cross-ratio operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossRatioError {
    #[error("J must have {expected} elements, found {found}")]
    WrongJSize { expected: usize, found: usize },
    #[error("quad {0:?} must consist of four distinct elements of the ground set outside J")]
    MalformedQuad([usize; 4]),
    #[error("tuple (J={j:?}; {quad:?}) is not in Omega")]
    NotInOmega { j: Vec<usize>, quad: [usize; 4] },
    #[error("quad {quad:?} is not a permutation of the residual {residual:?}")]
    NotAPermutation {
        quad: [usize; 4],
        residual: [usize; 4],
    },
    #[error("value missing for basis {0:?}")]
    MissingBasis(Vec<usize>),
    #[error("value given for non-basis {0:?}")]
    NotABasis(Vec<usize>),
    #[error("value {0} is not a unit")]
    NotAUnit(i64),
    #[error("bad chirotope key `{0}`")]
    BadKey(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Pasture(#[from] PastureError),
}

/// Status of a tuple `(J; e1, e2, e3, e4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaStatus {
    NotInOmega,
    Degenerate,
    Nondegenerate,
}

/// A tuple `(J; e1, e2, e3, e4)` with its status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaTuple {
    pub j: Set,
    pub quad: [usize; 4],
    pub status: OmegaStatus,
}

fn check_tuple(m: &Matroid, j: Set, quad: [usize; 4]) -> Result<(), CrossRatioError> {
    let expected = m.rank().saturating_sub(2);
    if m.rank() < 2 || bits::size(j) != expected || j & !m.ground() != 0 {
        return Err(CrossRatioError::WrongJSize {
            expected,
            found: bits::size(j),
        });
    }
    let in_range = quad.iter().all(|&e| (1..=m.n()).contains(&e));
    if !in_range || bits::size(bits::from_elems(&quad)) != 4 || bits::from_elems(&quad) & j != 0 {
        return Err(CrossRatioError::MalformedQuad(quad));
    }
    Ok(())
}

/// Classifies `(J; quad)` as outside Omega, degenerate, or nondegenerate.
pub fn omega_status(m: &Matroid, j: Set, quad: [usize; 4]) -> Result<OmegaTuple, CrossRatioError> {
    check_tuple(m, j, quad)?;
    let [e1, e2, e3, e4] = quad;
    let basis = |a: usize, b: usize| m.is_basis(j | bits::bit(a) | bits::bit(b));
    let status = if !(basis(e1, e3) && basis(e2, e4) && basis(e1, e4) && basis(e2, e3)) {
        OmegaStatus::NotInOmega
    } else if basis(e1, e2) && basis(e3, e4) {
        OmegaStatus::Nondegenerate
    } else {
        OmegaStatus::Degenerate
    };
    Ok(OmegaTuple { j, quad, status })
}

/// The six positions of a hexagon, `[x, y, y^-1, -x y^-1, -x^-1 y, x^-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot(pub u8);

impl Slot {
    pub const X: Slot = Slot(0);
    pub const Y: Slot = Slot(1);
    pub const Y_INV: Slot = Slot(2);
    pub const NEG_X_Y_INV: Slot = Slot(3);
    pub const NEG_X_INV_Y: Slot = Slot(4);
    pub const X_INV: Slot = Slot(5);

    pub const ALL: [Slot; 6] = [Slot(0), Slot(1), Slot(2), Slot(3), Slot(4), Slot(5)];

    pub fn name(self) -> &'static str {
        ["x", "y", "y^-1", "-x y^-1", "-x^-1 y", "x^-1"][self.0 as usize]
    }

    /// The slot whose value is the inverse of this one.
    pub fn inverse(self) -> Slot {
        Slot([5, 2, 1, 4, 3, 0][self.0 as usize])
    }

    /// The slot `v` with `self + v = 1`.
    pub fn additive_partner(self) -> Slot {
        Slot(self.0 ^ 1)
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Pairs of slots joined by a `+` edge (their values sum to one).
pub const PLUS_EDGES: [(Slot, Slot); 3] =
    [(Slot(0), Slot(1)), (Slot(2), Slot(3)), (Slot(4), Slot(5))];

/// Pairs of slots joined by a `*` edge (their values multiply to one).
pub const TIMES_EDGES: [(Slot, Slot); 3] =
    [(Slot(1), Slot(2)), (Slot(3), Slot(4)), (Slot(5), Slot(0))];

/// Reduces a quad by the Klein-four moves `1234 = 2143 = 3412 = 4321` so that
/// its minimum comes first.
pub fn klein_normalize(quad: [usize; 4]) -> [usize; 4] {
    let [a, b, c, d] = quad;
    let min = *quad.iter().min().unwrap_or(&a);
    if b == min {
        [b, a, d, c]
    } else if c == min {
        [c, d, a, b]
    } else if d == min {
        [d, c, b, a]
    } else {
        quad
    }
}

/// The cross ratio of `quad` as a slot of the hexagon on the sorted residual
/// `a < b < c < d`, with `x = <a b | c d>` and `y = <a c | b d>`.
pub fn slot_in_frame(residual: [usize; 4], quad: [usize; 4]) -> Result<Slot, CrossRatioError> {
    let mut sorted_quad = quad;
    sorted_quad.sort_unstable();
    if sorted_quad != residual || residual.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CrossRatioError::NotAPermutation { quad, residual });
    }
    let [_, b, c, d] = residual;
    let [_, q2, q3, q4] = klein_normalize(quad);
    let slot = match (q2, q3, q4) {
        _ if (q2, q3, q4) == (b, c, d) => Slot::X,
        _ if (q2, q3, q4) == (c, b, d) => Slot::Y,
        _ if (q2, q3, q4) == (c, d, b) => Slot::Y_INV,
        _ if (q2, q3, q4) == (d, c, b) => Slot::NEG_X_Y_INV,
        _ if (q2, q3, q4) == (d, b, c) => Slot::NEG_X_INV_Y,
        _ => Slot::X_INV,
    };
    Ok(slot)
}

/// The hexagon of cross ratios attached to an embedded `U(2,4)` site.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hexagon {
    pub site: EmbeddedMinorSite,
    pub residual: [usize; 4],
}

impl Hexagon {
    pub fn new(site: EmbeddedMinorSite) -> Hexagon {
        let residual = [
            site.residual[0],
            site.residual[1],
            site.residual[2],
            site.residual[3],
        ];
        Hexagon { site, residual }
    }

    pub fn contracted(&self) -> Set {
        self.site.contracted
    }

    /// The slot occupied by the cross ratio of an ordering of the residual.
    pub fn slot_of(&self, quad: [usize; 4]) -> Result<Slot, CrossRatioError> {
        slot_in_frame(self.residual, quad)
    }

    /// A representative ordering of the residual for each slot.
    pub fn quad_of(&self, slot: Slot) -> [usize; 4] {
        let [a, b, c, d] = self.residual;
        match slot.0 {
            0 => [a, b, c, d],
            1 => [a, c, b, d],
            2 => [a, c, d, b],
            3 => [a, d, c, b],
            4 => [a, d, b, c],
            _ => [a, b, d, c],
        }
    }
}

/// One hexagon per embedded `U(2,4)` site.
pub fn build_hexagons(m: &Matroid) -> Vec<Hexagon> {
    m.embedded_u24_sites()
        .into_iter()
        .map(Hexagon::new)
        .collect()
}

/// A label-preserving symmetry of the hexagon, as the image of each slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HexSym(pub [u8; 6]);

impl HexSym {
    pub const IDENTITY: HexSym = HexSym([0, 1, 2, 3, 4, 5]);

    /// The rotation `x -> y^-1, y -> -x y^-1`.
    pub fn rho() -> HexSym {
        HexSym::rotation(1)
    }

    /// The reflection swapping `x` and `y`.
    pub fn sigma() -> HexSym {
        HexSym::reflection(0)
    }

    fn rotation(k: u8) -> HexSym {
        HexSym(std::array::from_fn(|i| ((i as u8) + 2 * k) % 6))
    }

    fn reflection(k: u8) -> HexSym {
        HexSym(std::array::from_fn(|i| (2 * k + 7 - i as u8) % 6))
    }

    /// All six symmetries: three rotations followed by three reflections.
    pub fn all() -> [HexSym; 6] {
        [
            HexSym::rotation(0),
            HexSym::rotation(1),
            HexSym::rotation(2),
            HexSym::reflection(0),
            HexSym::reflection(1),
            HexSym::reflection(2),
        ]
    }

    pub fn apply(self, s: Slot) -> Slot {
        Slot(self.0[s.0 as usize])
    }

    /// `self` after `other`: `(self . other)(s) = self(other(s))`.
    pub fn compose(self, other: HexSym) -> HexSym {
        HexSym(std::array::from_fn(|i| self.0[other.0[i] as usize]))
    }

    pub fn inverse(self) -> HexSym {
        let mut out = [0u8; 6];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        HexSym(out)
    }

    pub fn is_identity(self) -> bool {
        self == HexSym::IDENTITY
    }

    /// Order of the symmetry in the group.
    pub fn order(self) -> usize {
        let mut g = self;
        let mut k = 1;
        while !g.is_identity() {
            g = g.compose(self);
            k += 1;
        }
        k
    }
}

/// The unique label-preserving symmetry mapping slot `p` to slot `q`.
pub fn hexsym_from_anchor(p: Slot, q: Slot) -> HexSym {
    HexSym::all()
        .into_iter()
        .find(|g| g.apply(p) == q)
        .unwrap_or(HexSym::IDENTITY)
}

/// A Grassmann-Pluecker function with values in a finite pasture, stored on
/// sorted bases; values on reordered tuples pick up the sign of the sorting
/// permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GpFunction {
    pasture: FinitePasture,
    values: BTreeMap<Set, Elem>,
}

/// Chirotope JSON: `{"matroid": {..}, "signs": {"1,2,3": 1, ..}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChirotopeJson {
    pub matroid: MatroidJson,
    pub signs: BTreeMap<String, i64>,
}

impl GpFunction {
    /// Values on every basis of `m`; fails when a basis is missing, a
    /// non-basis is given, or a value is not a unit.
    pub fn new(
        m: &Matroid,
        pasture: FinitePasture,
        values: BTreeMap<Set, Elem>,
    ) -> Result<GpFunction, CrossRatioError> {
        for &b in m.bases() {
            if !values.contains_key(&b) {
                return Err(CrossRatioError::MissingBasis(bits::elems(b)));
            }
        }
        for (&s, &v) in &values {
            if !m.is_basis(s) {
                return Err(CrossRatioError::NotABasis(bits::elems(s)));
            }
            if v == 0 || v as usize > pasture.units() {
                return Err(CrossRatioError::NotAUnit(v as i64));
            }
        }
        Ok(GpFunction { pasture, values })
    }

    /// Maximal minors of a matrix over GF(q), with field indices as pasture
    /// elements.
    pub fn from_matrix(
        m: &Matroid,
        field: &FieldTable,
        rows: &[Vec<u8>],
    ) -> Result<GpFunction, CrossRatioError> {
        let pasture = pasture::field_pasture(field)?;
        let mut values = BTreeMap::new();
        for &b in m.bases() {
            values.insert(b, field.det(rows, &bits::elems(b))?);
        }
        GpFunction::new(m, pasture, values)
    }

    /// A chirotope: signs in the sign hyperfield, `+1 -> 1`, `-1 -> eps`.
    pub fn chirotope(
        m: &Matroid,
        signs: &BTreeMap<Set, i64>,
    ) -> Result<GpFunction, CrossRatioError> {
        let pasture = pasture::named_pasture("S")?;
        let mut values = BTreeMap::new();
        for (&s, &v) in signs {
            let e = match v {
                1 => 1,
                -1 => pasture.eps(),
                _ => return Err(CrossRatioError::NotAUnit(v)),
            };
            values.insert(s, e);
        }
        GpFunction::new(m, pasture, values)
    }

    /// Parses the chirotope JSON form.
    pub fn chirotope_from_json(
        json: &ChirotopeJson,
    ) -> Result<(Matroid, GpFunction), CrossRatioError> {
        let m = Matroid::from_json(&json.matroid)?;
        let mut signs = BTreeMap::new();
        for (key, &v) in &json.signs {
            let elems: Result<Vec<usize>, _> =
                key.split(',').map(|t| t.trim().parse::<usize>()).collect();
            let elems = elems.map_err(|_| CrossRatioError::BadKey(key.clone()))?;
            if elems.iter().any(|&e| e == 0 || e > m.n()) {
                return Err(CrossRatioError::BadKey(key.clone()));
            }
            signs.insert(bits::from_elems(&elems), v);
        }
        let gp = GpFunction::chirotope(&m, &signs)?;
        Ok((m, gp))
    }

    /// The all-positive chirotope on `m`.
    pub fn all_positive(m: &Matroid) -> GpFunction {
        let pasture = pasture::named_pasture("S").expect("catalog pasture");
        let values = m.bases().iter().map(|&b| (b, 1)).collect();
        GpFunction { pasture, values }
    }

    pub fn pasture(&self) -> &FinitePasture {
        &self.pasture
    }

    /// Value on a sorted basis, or zero for a non-basis.
    pub fn value(&self, s: Set) -> Elem {
        self.values.get(&s).copied().unwrap_or(0)
    }

    /// Value on an ordered tuple of distinct elements.
    pub fn delta(&self, seq: &[usize]) -> Elem {
        let v = self.value(bits::from_elems(seq));
        if v != 0 && bits::sort_parity(seq) {
            self.pasture.neg(v)
        } else {
            v
        }
    }

    fn delta_with(&self, j: &[usize], a: usize, b: usize) -> Elem {
        let mut seq = j.to_vec();
        seq.push(a);
        seq.push(b);
        self.delta(&seq)
    }

    /// `Delta(J e1 e3) Delta(J e2 e4) / (Delta(J e1 e4) Delta(J e2 e3))`,
    /// or `1` for a degenerate tuple.
    pub fn cross_ratio(
        &self,
        m: &Matroid,
        j: Set,
        quad: [usize; 4],
    ) -> Result<Elem, CrossRatioError> {
        let t = omega_status(m, j, quad)?;
        match t.status {
            OmegaStatus::NotInOmega => Err(CrossRatioError::NotInOmega {
                j: bits::elems(j),
                quad,
            }),
            OmegaStatus::Degenerate => Ok(1),
            OmegaStatus::Nondegenerate => {
                let js = bits::elems(j);
                let [e1, e2, e3, e4] = quad;
                let p = &self.pasture;
                let num = p.mul(self.delta_with(&js, e1, e3), self.delta_with(&js, e2, e4));
                let den = p.mul(self.delta_with(&js, e1, e4), self.delta_with(&js, e2, e3));
                Ok(p.mul(num, p.inv(den)))
            }
        }
    }

    /// Checks every three-term Pluecker relation; returns the first failure.
    pub fn validate(&self, m: &Matroid) -> Result<(), PlueckerViolation> {
        let r = m.rank();
        if r < 2 {
            return Ok(());
        }
        let p = &self.pasture;
        for j in bits::subsets_of_size(m.ground(), r - 2) {
            let js = bits::elems(j);
            for quad in bits::subsets_of_size(m.ground() & !j, 4) {
                let [e1, e2, e3, e4] = [0, 1, 2, 3].map(|i| bits::elems(quad)[i]);
                let terms = [
                    p.mul(self.delta_with(&js, e1, e2), self.delta_with(&js, e3, e4)),
                    p.neg(p.mul(self.delta_with(&js, e1, e3), self.delta_with(&js, e2, e4))),
                    p.mul(self.delta_with(&js, e1, e4), self.delta_with(&js, e2, e3)),
                ];
                if !p.is_null(terms[0], terms[1], terms[2]) {
                    return Err(PlueckerViolation {
                        j: js,
                        quad: [e1, e2, e3, e4],
                        terms,
                    });
                }
            }
        }
        Ok(())
    }
}

/// A failed three-term Pluecker relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlueckerViolation {
    pub j: Vec<usize>,
    pub quad: [usize; 4],
    pub terms: [Elem; 3],
}

/// Cross ratio of a GP function; see [`GpFunction::cross_ratio`].
pub fn eval_cross_ratio(
    gp: &GpFunction,
    m: &Matroid,
    j: Set,
    quad: [usize; 4],
) -> Result<Elem, CrossRatioError> {
    gp.cross_ratio(m, j, quad)
}

/// Checks the Pluecker sign conditions of a chirotope.
pub fn validate_chirotope(m: &Matroid, chirotope: &GpFunction) -> Result<(), PlueckerViolation> {
    chirotope.validate(m)
}
