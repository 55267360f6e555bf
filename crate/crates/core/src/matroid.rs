//! Matroids on at most 16 elements given by their basis families.
//!
//! Elements are labelled `1..=n`; subsets are bitmasks (see [`crate::bits`]).
//! Besides construction and the minor calculus this module detects the
//! minor patterns the foundation pipeline depends on: embedded `U(2,4)`
//! sites, large uniform minors `U(2,5)`/`U(3,5)`, and Fano minors.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, Set};
use crate::smallfield::{make_field, mat_rank, FieldError, FieldTable};

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 16;

/// Errors raised while building or manipulating matroids.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("ground set of size {0} exceeds the limit of 16 elements")]
    TooLarge(usize),
    #[error("rank {r} is larger than the ground set size {n}")]
    RankTooLarge { r: usize, n: usize },
    #[error("the basis family is empty")]
    EmptyBasisFamily,
    #[error("basis {basis:?} does not have {expected} elements")]
    WrongCardinality { basis: Vec<usize>, expected: usize },
    #[error("element {e} is outside 1..={n}")]
    ElementOutOfRange { e: usize, n: usize },
    #[error("basis exchange fails: no element of {second:?} replaces {element} in {first:?}")]
    ExchangeViolation {
        first: Vec<usize>,
        second: Vec<usize>,
        element: usize,
    },
    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("unknown catalog matroid `{0}`")]
    UnknownName(String),
    #[error("catalog entry `{name}` failed validation: {detail}")]
    CatalogMismatch { name: String, detail: String },
    #[error("deleted and contracted sets overlap")]
    OverlappingMinor,
    #[error("the contracted set is dependent")]
    DependentContraction,
    #[error("the deleted set is not coindependent after contraction")]
    NonCoindependentDeletion,
}

/// A matroid on `{1, ..., n}` stored by its bases.
#[derive(Clone)]
pub struct Matroid {
    n: usize,
    r: usize,
    bases: Vec<Set>,
    basis_bits: Vec<u64>,
    rank_table: OnceLock<Vec<u8>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.n)
            .field("rank", &self.r)
            .field("bases", &self.bases.len())
            .finish()
    }
}

/// An embedded minor `M \ I / J` together with its residual elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmbeddedMinorSite {
    /// The contracted set `J`.
    pub contracted: Set,
    /// The deleted set `I`.
    pub deleted: Set,
    /// Residual elements in increasing order.
    pub residual: Vec<usize>,
}

impl EmbeddedMinorSite {
    pub fn residual_set(&self) -> Set {
        bits::from_elems(&self.residual)
    }
}

/// Which Fano-type minors a matroid has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FanoPresence {
    None,
    #[serde(rename = "F7")]
    F7,
    #[serde(rename = "F7*")]
    F7Dual,
    Both,
}

impl FanoPresence {
    /// True when `F7` or its dual occurs.
    pub fn any(self) -> bool {
        self != FanoPresence::None
    }
}

/// JSON form of a matroid: `{"n": .., "rank": .., "bases": [[..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub n: usize,
    pub rank: usize,
    pub bases: Vec<Vec<usize>>,
}

/// JSON form of a matrix over GF(q): `{"field": q, "rows": [[..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: usize,
    pub rows: Vec<Vec<u8>>,
}

fn lex_key(s: Set) -> Vec<usize> {
    bits::elems(s)
}

impl Matroid {
    /// Builds a matroid from a trusted basis family (no exchange check).
    pub(crate) fn from_basis_sets(n: usize, r: usize, mut bases: Vec<Set>) -> Matroid {
        bases.sort_by_key(|&b| lex_key(b));
        bases.dedup();
        let mut basis_bits = vec![0u64; (1usize << n).div_ceil(64)];
        for &b in &bases {
            basis_bits[b as usize / 64] |= 1 << (b % 64);
        }
        Matroid {
            n,
            r,
            bases,
            basis_bits,
            rank_table: OnceLock::new(),
        }
    }

    /// Builds and validates a matroid from explicit bases.
    pub fn from_bases(n: usize, r: usize, bases: &[Vec<usize>]) -> Result<Matroid, MatroidError> {
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge(n));
        }
        if r > n {
            return Err(MatroidError::RankTooLarge { r, n });
        }
        if bases.is_empty() {
            return Err(MatroidError::EmptyBasisFamily);
        }
        let mut sets = Vec::with_capacity(bases.len());
        for basis in bases {
            if let Some(&e) = basis.iter().find(|&&e| e == 0 || e > n) {
                return Err(MatroidError::ElementOutOfRange { e, n });
            }
            let s = bits::from_elems(basis);
            if bits::size(s) != r || basis.len() != r {
                return Err(MatroidError::WrongCardinality {
                    basis: basis.clone(),
                    expected: r,
                });
            }
            sets.push(s);
        }
        let m = Matroid::from_basis_sets(n, r, sets);
        m.check_exchange()?;
        Ok(m)
    }

    /// Builds a matroid from its JSON form.
    pub fn from_json(json: &MatroidJson) -> Result<Matroid, MatroidError> {
        Matroid::from_bases(json.n, json.rank, &json.bases)
    }

    /// JSON form with bases in lexicographic order.
    pub fn to_json(&self) -> MatroidJson {
        MatroidJson {
            n: self.n,
            rank: self.r,
            bases: self.bases.iter().map(|&b| bits::elems(b)).collect(),
        }
    }

    /// Verifies the basis exchange axiom, reporting a witness on failure.
    pub fn check_exchange(&self) -> Result<(), MatroidError> {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for x in bits::iter(b1 & !b2) {
                    let base = b1 & !bits::bit(x);
                    if !bits::iter(b2 & !b1).any(|y| self.is_basis(base | bits::bit(y))) {
                        return Err(MatroidError::ExchangeViolation {
                            first: bits::elems(b1),
                            second: bits::elems(b2),
                            element: x,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Bases are the `r`-subsets of columns of full rank.
    pub fn from_matrix(field: &FieldTable, rows: &[Vec<u8>]) -> Result<Matroid, MatroidError> {
        let r = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge(n));
        }
        if r > n {
            return Err(MatroidError::RankTooLarge { r, n });
        }
        let all: Vec<usize> = (1..=n).collect();
        let rank = mat_rank(field, rows, &all)?;
        if rank < r {
            return Err(MatroidError::RankDeficient { rank, rows: r });
        }
        let mut bases = Vec::new();
        for s in bits::subsets_of_size(bits::full(n), r) {
            if mat_rank(field, rows, &bits::elems(s))? == r {
                bases.push(s);
            }
        }
        Ok(Matroid::from_basis_sets(n, r, bases))
    }

    /// Builds a matroid from a matrix in JSON form.
    pub fn from_matrix_json(json: &MatrixJson) -> Result<Matroid, MatroidError> {
        let field = make_field(json.field)?;
        Matroid::from_matrix(&field, &json.rows)
    }

    /// The uniform matroid `U(r, n)`.
    pub fn uniform(r: usize, n: usize) -> Result<Matroid, MatroidError> {
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge(n));
        }
        if r > n {
            return Err(MatroidError::RankTooLarge { r, n });
        }
        Ok(Matroid::from_basis_sets(
            n,
            r,
            bits::subsets_of_size(bits::full(n), r),
        ))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// The ground set as a bitmask.
    pub fn ground(&self) -> Set {
        bits::full(self.n)
    }

    /// Bases in lexicographic order.
    pub fn bases(&self) -> &[Set] {
        &self.bases
    }

    #[inline]
    pub fn is_basis(&self, s: Set) -> bool {
        (s as usize) < (1usize << self.n) && self.basis_bits[s as usize / 64] >> (s % 64) & 1 == 1
    }

    fn rank_table(&self) -> &[u8] {
        self.rank_table.get_or_init(|| {
            let size = 1usize << self.n;
            let mut indep = vec![false; size];
            for &b in &self.bases {
                indep[b as usize] = true;
            }
            for s in (0..size).rev() {
                if !indep[s] {
                    indep[s] = (0..self.n).any(|i| s >> i & 1 == 0 && indep[s | 1 << i]);
                }
            }
            let mut rank = vec![0u8; size];
            for s in 1..size {
                rank[s] = if indep[s] {
                    (s as u32).count_ones() as u8
                } else {
                    (0..self.n)
                        .filter(|i| s >> i & 1 == 1)
                        .map(|i| rank[s & !(1 << i)])
                        .max()
                        .unwrap_or(0)
                };
            }
            rank
        })
    }

    /// Rank of a subset.
    pub fn rank_of(&self, s: Set) -> usize {
        self.rank_table()[(s & self.ground()) as usize] as usize
    }

    pub fn is_independent(&self, s: Set) -> bool {
        self.rank_of(s) == bits::size(s)
    }

    /// Whether `s` is independent in the dual matroid.
    pub fn is_coindependent(&self, s: Set) -> bool {
        self.rank_of(self.ground() & !s) == self.r
    }

    /// The closure `{e : rank(S + e) = rank(S)}`.
    pub fn closure(&self, s: Set) -> Set {
        let rs = self.rank_of(s);
        (1..=self.n)
            .filter(|&e| self.rank_of(s | bits::bit(e)) == rs)
            .fold(0, |acc, e| acc | bits::bit(e))
    }

    /// The dual matroid.
    pub fn dual(&self) -> Matroid {
        let g = self.ground();
        Matroid::from_basis_sets(
            self.n,
            self.n - self.r,
            self.bases.iter().map(|&b| g & !b).collect(),
        )
    }

    /// The minor `M \ I / J`, relabelled so the residual elements become
    /// `1..=m` in increasing order.
    pub fn minor(&self, deleted: Set, contracted: Set) -> Result<Matroid, MatroidError> {
        if deleted & contracted != 0 {
            return Err(MatroidError::OverlappingMinor);
        }
        if !self.is_independent(contracted) {
            return Err(MatroidError::DependentContraction);
        }
        let keep = self.ground() & !deleted;
        let bases: Vec<Set> = self
            .bases
            .iter()
            .filter(|&&b| b & contracted == contracted && b & !keep == 0)
            .map(|&b| b & !contracted)
            .collect();
        if bases.is_empty() {
            return Err(MatroidError::NonCoindependentDeletion);
        }
        let residual = keep & !contracted;
        let relabel: Vec<usize> = bits::elems(residual);
        let compress = |s: Set| -> Set {
            relabel
                .iter()
                .enumerate()
                .filter(|(_, &e)| s & bits::bit(e) != 0)
                .fold(0, |acc, (i, _)| acc | 1 << i)
        };
        Ok(Matroid::from_basis_sets(
            relabel.len(),
            self.r - bits::size(contracted),
            bases.into_iter().map(compress).collect(),
        ))
    }

    /// Direct sum; the elements of `other` are shifted by `self.n()`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        let n = self.n + other.n;
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge(n));
        }
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &a in &self.bases {
            for &b in &other.bases {
                bases.push(a | b << self.n);
            }
        }
        Ok(Matroid::from_basis_sets(n, self.r + other.r, bases))
    }

    /// Contracted sets `J` of size `r - 2` paired with the graph of pairs
    /// `{i, j}` for which `J + i + j` is a basis.
    fn pair_graphs(&self) -> Vec<(Set, Vec<Set>)> {
        if self.r < 2 {
            return Vec::new();
        }
        let g = self.ground();
        bits::subsets_of_size(g, self.r - 2)
            .into_iter()
            .filter(|&j| self.is_independent(j))
            .map(|j| {
                let mut adj = vec![0 as Set; self.n + 1];
                for e in bits::iter(g & !j) {
                    for f in bits::iter(g & !j) {
                        if e != f && self.is_basis(j | bits::bit(e) | bits::bit(f)) {
                            adj[e] |= bits::bit(f);
                        }
                    }
                }
                (j, adj)
            })
            .collect()
    }

    fn cliques(&self, j: Set, adj: &[Set], k: usize) -> Vec<Set> {
        bits::subsets_of_size(self.ground() & !j, k)
            .into_iter()
            .filter(|&s| bits::iter(s).all(|e| adj[e] & s == s & !bits::bit(e)))
            .collect()
    }

    /// All embedded `U(2,4)` sites `(J; a < b < c < d)` in lexicographic order.
    pub fn embedded_u24_sites(&self) -> Vec<EmbeddedMinorSite> {
        let mut sites = Vec::new();
        for (j, adj) in self.pair_graphs() {
            for s in self.cliques(j, &adj, 4) {
                sites.push(EmbeddedMinorSite {
                    contracted: j,
                    deleted: self.ground() & !j & !s,
                    residual: bits::elems(s),
                });
            }
        }
        sites
    }

    fn has_u25_site(&self) -> bool {
        self.pair_graphs()
            .iter()
            .any(|(j, adj)| !self.cliques(*j, adj, 5).is_empty())
    }

    /// True when the matroid has a `U(2,5)` or `U(3,5)` minor.
    pub fn has_large_uniform_minor(&self) -> bool {
        self.has_u25_site() || self.dual().has_u25_site()
    }

    /// Scans all embedded minors on seven elements for `F7` and its dual.
    pub fn fano_minor_presence(&self) -> Result<FanoPresence, MatroidError> {
        if self.n > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge(self.n));
        }
        let fano = catalog("F7")?;
        let fano_dual = fano.dual();
        let mut found_f7 = false;
        let mut found_dual = false;
        if self.n >= 7 {
            for residual in bits::subsets_of_size(self.ground(), 7) {
                if !found_f7 {
                    found_f7 = self.has_minor_on(residual, &fano);
                }
                if !found_dual {
                    found_dual = self.has_minor_on(residual, &fano_dual);
                }
                if found_f7 && found_dual {
                    break;
                }
            }
        }
        Ok(match (found_f7, found_dual) {
            (false, false) => FanoPresence::None,
            (true, false) => FanoPresence::F7,
            (false, true) => FanoPresence::F7Dual,
            (true, true) => FanoPresence::Both,
        })
    }

    /// Whether some minor with the given residual set is isomorphic to
    /// `template`; contracted sets are taken up to closure.
    fn has_minor_on(&self, residual: Set, template: &Matroid) -> bool {
        if self.r < template.r {
            return false;
        }
        let outside = self.ground() & !residual;
        let k = self.r - template.r;
        let mut seen_flats = HashSet::new();
        for j in bits::subsets_of_size(outside, k) {
            if !self.is_independent(j) || self.rank_of(residual | j) != self.r {
                continue;
            }
            if !seen_flats.insert(self.closure(j)) {
                continue;
            }
            let deleted = outside & !j;
            let Ok(minor) = self.minor(deleted, j) else {
                continue;
            };
            if minor.bases.len() == template.bases.len() && isomorphic_small(&minor, template) {
                return true;
            }
        }
        false
    }
}

/// Nonbasis degree of every element: the number of dependent `r`-subsets
/// that contain it.
fn nonbasis_degrees(m: &Matroid) -> Vec<usize> {
    let mut deg = vec![0; m.n + 1];
    for s in bits::subsets_of_size(m.ground(), m.r) {
        if !m.is_basis(s) {
            for e in bits::iter(s) {
                deg[e] += 1;
            }
        }
    }
    deg
}

/// Backtracking isomorphism test for matroids on at most nine elements,
/// pruned by nonbasis degrees.
pub fn isomorphic_small(a: &Matroid, b: &Matroid) -> bool {
    if a.n != b.n || a.r != b.r || a.bases.len() != b.bases.len() {
        return false;
    }
    let da = nonbasis_degrees(a);
    let db = nonbasis_degrees(b);
    let mut sa: Vec<usize> = da[1..].to_vec();
    let mut sb: Vec<usize> = db[1..].to_vec();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let mut image = vec![0usize; a.n + 1];
    let mut used = vec![false; b.n + 1];
    extend_isomorphism(a, b, &da, &db, 1, &mut image, &mut used)
}

fn extend_isomorphism(
    a: &Matroid,
    b: &Matroid,
    da: &[usize],
    db: &[usize],
    e: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if e > a.n {
        return true;
    }
    let assigned: Set = bits::full(e - 1);
    for cand in 1..=b.n {
        if used[cand] || db[cand] != da[e] {
            continue;
        }
        image[e] = cand;
        let consistent = a.r == 0
            || bits::subsets_of_size(assigned, a.r - 1)
                .into_iter()
                .all(|rest| {
                    let s = rest | bits::bit(e);
                    let t = bits::iter(s).fold(0, |acc, x| acc | bits::bit(image[x]));
                    a.is_basis(s) == b.is_basis(t)
                });
        if consistent {
            used[cand] = true;
            if extend_isomorphism(a, b, da, db, e + 1, image, used) {
                return true;
            }
            used[cand] = false;
        }
    }
    false
}

/// Names accepted by [`catalog`] besides `U(r,n)`.
pub const CATALOG_NAMES: [&str; 8] = [
    "F7", "F7dual", "F7minus", "AG23", "T8", "C5", "C5dual", "MK4",
];

/// The matrix `[I3 | (0,1,1), (1,0,1), (1,1,0), (1,1,1)]` whose matroid over
/// GF(2) is the Fano plane and over GF(3) the non-Fano matroid.
pub fn fano_matrix() -> Vec<Vec<u8>> {
    vec![
        vec![1, 0, 0, 0, 1, 1, 1],
        vec![0, 1, 0, 1, 0, 1, 1],
        vec![0, 0, 1, 1, 1, 0, 1],
    ]
}

/// The ternary affine plane: columns `(1, a, b)` for `a, b` in GF(3), in
/// lexicographic order of `(a, b)`.
pub fn ag23_matrix() -> Vec<Vec<u8>> {
    let mut rows = vec![Vec::new(), Vec::new(), Vec::new()];
    for a in 0..3u8 {
        for b in 0..3u8 {
            rows[0].push(1);
            rows[1].push(a);
            rows[2].push(b);
        }
    }
    rows
}

/// `[I4 | J4 - I4]` over GF(3).
pub fn t8_matrix() -> Vec<Vec<u8>> {
    (0..4)
        .map(|i| {
            let mut row: Vec<u8> = (0..4).map(|j| u8::from(i == j)).collect();
            row.extend((0..4).map(|j| u8::from(i != j)));
            row
        })
        .collect()
}

/// A GF(2) representation of the cycle matroid of `K4`.
pub fn mk4_matrix() -> Vec<Vec<u8>> {
    vec![
        vec![1, 0, 0, 1, 0, 1],
        vec![0, 1, 0, 1, 1, 0],
        vec![0, 0, 1, 0, 1, 1],
    ]
}

fn parse_uniform(name: &str) -> Option<(usize, usize)> {
    let inner = name.strip_prefix("U(")?.strip_suffix(')')?;
    let (r, n) = inner.split_once(',')?;
    Some((r.trim().parse().ok()?, n.trim().parse().ok()?))
}

fn checked(
    name: &str,
    m: Matroid,
    n: usize,
    r: usize,
    bases: usize,
) -> Result<Matroid, MatroidError> {
    if m.n != n || m.r != r || m.bases.len() != bases {
        return Err(MatroidError::CatalogMismatch {
            name: name.to_string(),
            detail: format!(
                "got n={}, r={}, {} bases; expected n={n}, r={r}, {bases} bases",
                m.n,
                m.r,
                m.bases.len()
            ),
        });
    }
    Ok(m)
}

/// Named matroids: `U(r,n)` with `n <= 9`, `F7`, `F7dual`, `F7minus`,
/// `AG23`, `T8`, `C5`, `C5dual` and `MK4`.
pub fn catalog(name: &str) -> Result<Matroid, MatroidError> {
    let gf2 = || make_field(2);
    let gf3 = || make_field(3);
    if let Some((r, n)) = parse_uniform(name) {
        if n > 9 {
            return Err(MatroidError::UnknownName(name.to_string()));
        }
        return Matroid::uniform(r, n);
    }
    match name {
        "F7" => checked(
            name,
            Matroid::from_matrix(&gf2()?, &fano_matrix())?,
            7,
            3,
            28,
        ),
        "F7dual" => Ok(catalog("F7")?.dual()),
        "F7minus" => checked(
            name,
            Matroid::from_matrix(&gf3()?, &fano_matrix())?,
            7,
            3,
            29,
        ),
        "AG23" => checked(
            name,
            Matroid::from_matrix(&gf3()?, &ag23_matrix())?,
            9,
            3,
            72,
        ),
        "T8" => checked(name, Matroid::from_matrix(&gf3()?, &t8_matrix())?, 8, 4, 59),
        "C5" => {
            let excluded = bits::from_elems(&[3, 4, 5]);
            let bases = bits::subsets_of_size(bits::full(5), 3)
                .into_iter()
                .filter(|&b| b != excluded)
                .collect();
            checked(name, Matroid::from_basis_sets(5, 3, bases), 5, 3, 9)
        }
        "C5dual" => Ok(catalog("C5")?.dual()),
        "MK4" => checked(
            name,
            Matroid::from_matrix(&gf2()?, &mk4_matrix())?,
            6,
            3,
            16,
        ),
        _ => Err(MatroidError::UnknownName(name.to_string())),
    }
}
