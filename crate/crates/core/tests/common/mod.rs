#![allow(dead_code)]

use std::collections::BTreeMap;

use matroid_foundations::bits::{self, Set};
use matroid_foundations::crossratio::GpFunction;
use matroid_foundations::matroid::{catalog, Matroid};
use matroid_foundations::pasture::{Elem, FinitePasture};
use matroid_foundations::smallfield::{make_field, FieldTable};

/// The oracle comparison suite.
pub fn oracle_suite() -> Vec<(&'static str, Matroid)> {
    let u24 = Matroid::uniform(2, 4).unwrap();
    let u11 = Matroid::uniform(1, 1).unwrap();
    vec![
        ("U(1,2)", Matroid::uniform(1, 2).unwrap()),
        ("U(2,4)", u24.clone()),
        ("C5", catalog("C5").unwrap()),
        ("C5dual", catalog("C5dual").unwrap()),
        ("MK4", catalog("MK4").unwrap()),
        ("F7", catalog("F7").unwrap()),
        ("F7dual", catalog("F7dual").unwrap()),
        ("F7minus", catalog("F7minus").unwrap()),
        ("U(2,4)+U(1,1)", u24.direct_sum(&u11).unwrap()),
    ]
}

/// Catalog matroids without large uniform minors, plus `U(2,4)`.
pub fn named_suite() -> Vec<(String, Matroid)> {
    let mut out: Vec<(String, Matroid)> = [
        "F7", "F7dual", "F7minus", "AG23", "T8", "C5", "C5dual", "MK4",
    ]
    .iter()
    .map(|n| (n.to_string(), catalog(n).unwrap()))
    .collect();
    out.push(("U(2,4)".to_string(), Matroid::uniform(2, 4).unwrap()));
    out
}

/// A `r x n` matrix over GF(q) whose matroid is `U(r, n)`: columns
/// `(1, t, t^2, ..)` for distinct `t`, then `(0, .., 0, 1)`.
pub fn uniform_matrix(field: &FieldTable, r: usize, n: usize) -> Vec<Vec<u8>> {
    assert!(n <= field.order() + 1);
    let mut rows = vec![Vec::new(); r];
    for t in 0..(n.min(field.order())) as u8 {
        let mut v = 1u8;
        for row in rows.iter_mut() {
            row.push(v);
            v = field.mul(v, t);
        }
    }
    if n > field.order() {
        for (i, row) in rows.iter_mut().enumerate() {
            row.push(u8::from(i == r - 1));
        }
    }
    rows
}

/// The GF(q) representation of `U(r, n)` from [`uniform_matrix`].
pub fn uniform_rep(q: usize, r: usize, n: usize) -> (Matroid, GpFunction, FieldTable) {
    let field = make_field(q).unwrap();
    let rows = uniform_matrix(&field, r, n);
    let m = Matroid::from_matrix(&field, &rows).unwrap();
    assert_eq!(m, Matroid::uniform(r, n).unwrap());
    let gp = GpFunction::from_matrix(&m, &field, &rows).unwrap();
    (m, gp, field)
}

/// A GP function from an oracle assignment listed in basis order.
pub fn gp_from_assignment(m: &Matroid, p: &FinitePasture, values: &[Elem]) -> GpFunction {
    let map: BTreeMap<Set, Elem> = m
        .bases()
        .iter()
        .copied()
        .zip(values.iter().copied())
        .collect();
    GpFunction::new(m, p.clone(), map).unwrap()
}

/// All ordered 4-tuples of distinct elements of `s`.
pub fn ordered_quads(s: Set) -> Vec<[usize; 4]> {
    let e = bits::elems(s);
    let mut out = Vec::new();
    for &a in &e {
        for &b in &e {
            for &c in &e {
                for &d in &e {
                    if bits::size(bits::from_elems(&[a, b, c, d])) == 4 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}
