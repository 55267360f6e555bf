//! Exact arithmetic over the Galois fields GF(q) for q in {2, 3, 4, 5, 7, 8, 9}.
//!
//! Elements are canonical indices `0..q`. For a field of order `p^d` the index
//! of a polynomial `c_0 + c_1 x + ... + c_{d-1} x^{d-1}` over GF(p) is
//! `c_0 + c_1 p + ... + c_{d-1} p^{d-1}`, so index 0 is zero and index 1 is one.
//! Extension fields reduce modulo fixed irreducible polynomials:
//!
//! | q | modulus     |
//! |---|-------------|
//! | 4 | x^2 + x + 1 |
//! | 8 | x^3 + x + 1 |
//! | 9 | x^2 + 1     |

use thiserror::Error;

/// Field orders supported by [`make_field`].
pub const SUPPORTED_ORDERS: [usize; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Errors raised by field construction and matrix rank computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("unsupported field order {0}")]
    UnsupportedOrder(usize),
    #[error("field axiom `{0}` fails on the constructed tables")]
    AxiomViolation(&'static str),
    #[error("matrix entry {entry} at row {row} is not an element of GF({q})")]
    EntryOutOfRange { row: usize, entry: usize, q: usize },
    #[error("column {col} is outside 1..={ncols}")]
    ColumnOutOfRange { col: usize, ncols: usize },
    #[error("matrix rows have inconsistent lengths")]
    RaggedMatrix,
}

/// Addition, multiplication, negation and inversion tables of GF(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    q: usize,
    p: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Builds GF(q) and verifies all field axioms exhaustively.
pub fn make_field(q: usize) -> Result<FieldTable, FieldError> {
    let (p, modulus): (usize, &[usize]) = match q {
        2 | 3 | 5 | 7 => (q, &[]),
        4 => (2, &[1, 1, 1]),
        8 => (2, &[1, 1, 0, 1]),
        9 => (3, &[1, 0, 1]),
        _ => return Err(FieldError::UnsupportedOrder(q)),
    };
    let d = if modulus.is_empty() {
        1
    } else {
        modulus.len() - 1
    };
    let digits = |mut v: usize| -> Vec<usize> {
        let mut out = vec![0; d];
        for slot in out.iter_mut() {
            *slot = v % p;
            v /= p;
        }
        out
    };
    let encode = |c: &[usize]| -> usize { c.iter().rev().fold(0, |acc, &x| acc * p + x) };

    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = encode(&sum) as u8;

            let mut prod = vec![0usize; 2 * d];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            for deg in (d..2 * d).rev() {
                let c = prod[deg];
                if c != 0 {
                    for (k, m) in modulus.iter().enumerate() {
                        let idx = deg - d + k;
                        prod[idx] = (prod[idx] + p * p - c * m % p) % p;
                    }
                }
            }
            mul[a * q + b] = encode(&prod[..d]) as u8;
        }
    }
    let neg = (0..q)
        .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap_or(0) as u8)
        .collect();
    let inv = (0..q)
        .map(|a| {
            if a == 0 {
                0
            } else {
                (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as u8
            }
        })
        .collect();
    let field = FieldTable {
        q,
        p,
        add,
        mul,
        neg,
        inv,
    };
    field.check_axioms()?;
    Ok(field)
}

impl FieldTable {
    /// Order of the field.
    pub fn order(&self) -> usize {
        self.q
    }

    /// Characteristic of the field.
    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `inv(0)` is reported as 0.
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    fn check_axioms(&self) -> Result<(), FieldError> {
        let q = self.q as u8;
        let all = || 0..q;
        for a in all() {
            if self.add(a, 0) != a {
                return Err(FieldError::AxiomViolation("additive identity"));
            }
            if self.mul(a, 1) != a {
                return Err(FieldError::AxiomViolation("multiplicative identity"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(FieldError::AxiomViolation("additive inverse"));
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return Err(FieldError::AxiomViolation("multiplicative inverse"));
            }
            for b in all() {
                if self.add(a, b) != self.add(b, a) {
                    return Err(FieldError::AxiomViolation("additive commutativity"));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(FieldError::AxiomViolation("multiplicative commutativity"));
                }
                for c in all() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(FieldError::AxiomViolation("additive associativity"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(FieldError::AxiomViolation("multiplicative associativity"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(FieldError::AxiomViolation("distributivity"));
                    }
                }
            }
        }
        let mut sum = 0u8;
        for _ in 0..self.p {
            sum = self.add(sum, 1);
        }
        if sum != 0 || !self.q.is_multiple_of(self.p) {
            return Err(FieldError::AxiomViolation("characteristic"));
        }
        Ok(())
    }

    fn check_matrix(&self, matrix: &[Vec<u8>]) -> Result<usize, FieldError> {
        let ncols = matrix.first().map_or(0, Vec::len);
        for (row, entries) in matrix.iter().enumerate() {
            if entries.len() != ncols {
                return Err(FieldError::RaggedMatrix);
            }
            if let Some(&bad) = entries.iter().find(|&&e| e as usize >= self.q) {
                return Err(FieldError::EntryOutOfRange {
                    row,
                    entry: bad as usize,
                    q: self.q,
                });
            }
        }
        Ok(ncols)
    }

    fn select(&self, matrix: &[Vec<u8>], cols: &[usize]) -> Result<Vec<Vec<u8>>, FieldError> {
        let ncols = self.check_matrix(matrix)?;
        if let Some(&col) = cols.iter().find(|&&c| c == 0 || c > ncols) {
            return Err(FieldError::ColumnOutOfRange { col, ncols });
        }
        Ok(matrix
            .iter()
            .map(|row| cols.iter().map(|&c| row[c - 1]).collect())
            .collect())
    }

    /// Reduces `m` to row echelon form in place, returning the rank and the
    /// product of the pivots (with a sign flip per row swap).
    fn eliminate(&self, m: &mut [Vec<u8>]) -> (usize, u8) {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        let mut scale = 1u8;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
                continue;
            };
            if pivot != rank {
                m.swap(pivot, rank);
                scale = self.neg(scale);
            }
            let pv = m[rank][col];
            scale = self.mul(scale, pv);
            let pinv = self.inv(pv);
            let (top, below) = m.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            for row in below.iter_mut() {
                let factor = self.mul(row[col], pinv);
                if factor == 0 {
                    continue;
                }
                for (x, &p) in row[col..cols].iter_mut().zip(&pivot_row[col..cols]) {
                    *x = self.sub(*x, self.mul(factor, p));
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        (rank, scale)
    }

    /// Determinant of the square submatrix formed by the given 1-indexed
    /// columns, in the order listed.
    pub fn det(&self, matrix: &[Vec<u8>], cols: &[usize]) -> Result<u8, FieldError> {
        let mut sub = self.select(matrix, cols)?;
        if sub.len() != cols.len() {
            return Err(FieldError::RaggedMatrix);
        }
        let (rank, scale) = self.eliminate(&mut sub);
        Ok(if rank == cols.len() { scale } else { 0 })
    }
}

/// Rank of the submatrix formed by the given 1-indexed columns.
pub fn mat_rank(
    field: &FieldTable,
    matrix: &[Vec<u8>],
    cols: &[usize],
) -> Result<usize, FieldError> {
    let mut sub = field.select(matrix, cols)?;
    Ok(field.eliminate(&mut sub).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supported_orders_build() {
        for q in SUPPORTED_ORDERS {
            let f = make_field(q).unwrap();
            assert_eq!(f.order(), q);
        }
    }

    #[test]
    fn gf2_has_characteristic_two() {
        let f = make_field(2).unwrap();
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn gf4_generator_satisfies_its_modulus() {
        let f = make_field(4).unwrap();
        let roots: Vec<u8> = (0..4)
            .filter(|&w| f.add(f.add(f.mul(w, w), w), 1) == 0)
            .collect();
        assert_eq!(roots, vec![2, 3]);
        for w in roots {
            assert_eq!(f.mul(w, w), f.add(w, 1));
        }
    }

    #[test]
    fn unsupported_order_is_rejected() {
        assert_eq!(make_field(6), Err(FieldError::UnsupportedOrder(6)));
        assert!(make_field(16).is_err());
    }

    #[test]
    fn rank_examples() {
        let f2 = make_field(2).unwrap();
        assert_eq!(
            mat_rank(&f2, &[vec![1, 0, 1], vec![0, 1, 1]], &[1, 2, 3]).unwrap(),
            2
        );
        let f3 = make_field(3).unwrap();
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(mat_rank(&f3, &id, &[1, 2]).unwrap(), 2);
        let f5 = make_field(5).unwrap();
        let m = vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]];
        assert_eq!(mat_rank(&f5, &m, &[3, 4]).unwrap(), 2);
        assert_eq!(f5.det(&m, &[3, 4]).unwrap(), 1);
    }

    #[test]
    fn out_of_range_entry_is_rejected() {
        let f3 = make_field(3).unwrap();
        let err = mat_rank(&f3, &[vec![1, 3]], &[1, 2]).unwrap_err();
        assert!(matches!(err, FieldError::EntryOutOfRange { entry: 3, .. }));
    }

    #[test]
    fn determinant_is_alternating() {
        let f7 = make_field(7).unwrap();
        let m = vec![vec![1, 2, 3], vec![4, 5, 6], vec![0, 1, 5]];
        let d = f7.det(&m, &[1, 2, 3]).unwrap();
        let swapped = f7.det(&m, &[2, 1, 3]).unwrap();
        assert_eq!(swapped, f7.neg(d));
    }
}
