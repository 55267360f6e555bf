//! Brute-force enumeration of representations of a matroid over a finite
//! pasture, and orbit counting under rescaling.
//!
//! A representation assigns a unit to every basis such that each three-term
//! Pluecker relation is null. Assignments are searched by backtracking over
//! bases in an order that closes relations as early as possible, narrowing
//! the values of a basis once it is the last open member of a relation;
//! rescaling classes are counted by breadth-first search over explicit orbits.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::bits::{self, Set};
use crate::matroid::Matroid;
use crate::pasture::{Elem, FinitePasture};

/// Default bound on visited search nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Largest number of assignments kept for orbit counting.
pub const MAX_STORED_ASSIGNMENTS: usize = 2_000_000;

/// Errors raised by the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search exceeded the budget of {0} nodes")]
    BudgetExceeded(u64),
    #[error("{0} satisfying assignments exceed the orbit-counting cap")]
    TooManyAssignments(u64),
}

/// A unit-valued assignment on the bases of a matroid, in basis order.
pub type RepAssignment = Vec<Elem>;

/// Result of an exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub count: u64,
    pub nodes: u64,
    /// Every satisfying assignment when `count` is at most the storage cap.
    #[serde(skip)]
    pub assignments: Vec<RepAssignment>,
}

/// One term `+-Delta(J a b) Delta(J c d)` of a Pluecker relation, as basis
/// positions and a sign flag; `None` when one factor is a non-basis.
type Term = Option<(usize, usize, bool)>;

struct Relation {
    terms: [Term; 3],
}

/// A set of units as a bitmask over indices `0..256`.
type Domain = [u64; 4];

fn dom_contains(d: &Domain, u: Elem) -> bool {
    d[u as usize / 64] >> (u % 64) & 1 == 1
}

fn dom_full(p: &FinitePasture) -> Domain {
    let mut d = [0u64; 4];
    for u in p.unit_elems() {
        d[u as usize / 64] |= 1 << (u % 64);
    }
    d
}

struct Search<'a> {
    p: &'a FinitePasture,
    order: Vec<usize>,
    /// Relations that become fully assigned at each depth.
    checks: Vec<Vec<usize>>,
    /// Relations left with one unassigned basis at each depth, with that basis.
    narrow: Vec<Vec<(usize, usize)>>,
    relations: Vec<Relation>,
    values: Vec<Elem>,
    domains: Vec<Domain>,
    budget: u64,
    nodes: u64,
    count: u64,
    stored: Vec<RepAssignment>,
}

fn relations_of(m: &Matroid, index: &HashMap<Set, usize>) -> Vec<Relation> {
    let r = m.rank();
    let mut out = Vec::new();
    if r < 2 {
        return out;
    }
    for j in bits::subsets_of_size(m.ground(), r - 2) {
        let js = bits::elems(j);
        let term = |a: usize, b: usize, c: usize, d: usize, twist: bool| -> Term {
            let mut s1 = js.clone();
            s1.extend([a, b]);
            let mut s2 = js.clone();
            s2.extend([c, d]);
            let i1 = index.get(&bits::from_elems(&s1))?;
            let i2 = index.get(&bits::from_elems(&s2))?;
            Some((
                *i1,
                *i2,
                twist ^ bits::sort_parity(&s1) ^ bits::sort_parity(&s2),
            ))
        };
        for quad in bits::subsets_of_size(m.ground() & !j, 4) {
            let q = bits::elems(quad);
            let (e1, e2, e3, e4) = (q[0], q[1], q[2], q[3]);
            out.push(Relation {
                terms: [
                    term(e1, e2, e3, e4, false),
                    term(e1, e3, e2, e4, true),
                    term(e1, e4, e2, e3, false),
                ],
            });
        }
    }
    out
}

fn involved(rel: &Relation) -> Vec<usize> {
    rel.terms
        .iter()
        .flatten()
        .flat_map(|&(a, b, _)| [a, b])
        .collect()
}

/// Orders bases greedily so that relations become fully assigned early.
fn search_order(n_bases: usize, relations: &[Relation]) -> Vec<usize> {
    let members: Vec<Vec<usize>> = relations.iter().map(involved).collect();
    let mut placed = vec![false; n_bases];
    let mut order = Vec::with_capacity(n_bases);
    for _ in 0..n_bases {
        let score = |b: usize| -> (usize, usize) {
            let mut closes = 0;
            let mut touches = 0;
            for mem in &members {
                if mem.contains(&b) {
                    touches += 1;
                    if mem.iter().all(|&x| x == b || placed[x]) {
                        closes += 1;
                    }
                }
            }
            (closes, touches)
        };
        let best = (0..n_bases)
            .filter(|&b| !placed[b])
            .max_by_key(|&b| (score(b), std::cmp::Reverse(b)))
            .unwrap_or(0);
        placed[best] = true;
        order.push(best);
    }
    order
}

impl Search<'_> {
    fn holds(&self, rel: &Relation) -> bool {
        let p = self.p;
        let t = rel.terms.map(|t| match t {
            None => 0,
            Some((a, b, neg)) => {
                let v = p.mul(self.values[a], self.values[b]);
                if neg {
                    p.neg(v)
                } else {
                    v
                }
            }
        });
        p.is_null(t[0], t[1], t[2])
    }

    fn run(&mut self, depth: usize) -> Result<(), OracleError> {
        if depth == self.order.len() {
            self.count += 1;
            if self.stored.len() < MAX_STORED_ASSIGNMENTS {
                self.stored.push(self.values.clone());
            }
            return Ok(());
        }
        let b = self.order[depth];
        for u in self.p.unit_elems() {
            if !dom_contains(&self.domains[b], u) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OracleError::BudgetExceeded(self.budget));
            }
            self.values[b] = u;
            if !self.checks[depth]
                .iter()
                .all(|&i| self.holds(&self.relations[i]))
            {
                continue;
            }
            let mut trail = Vec::new();
            if self.forward_check(depth, &mut trail) {
                self.run(depth + 1)?;
            }
            for (c, old) in trail.into_iter().rev() {
                self.domains[c] = old;
            }
        }
        self.values[b] = 0;
        Ok(())
    }

    /// Restricts the domain of each basis that is the last unassigned member
    /// of a relation; false when some domain becomes empty.
    fn forward_check(&mut self, depth: usize, trail: &mut Vec<(usize, Domain)>) -> bool {
        for k in 0..self.narrow[depth].len() {
            let (rel, c) = self.narrow[depth][k];
            let old = self.domains[c];
            let mut new = [0u64; 4];
            for u in self.p.unit_elems() {
                if dom_contains(&old, u) {
                    self.values[c] = u;
                    if self.holds(&self.relations[rel]) {
                        new[u as usize / 64] |= 1 << (u % 64);
                    }
                }
            }
            self.values[c] = 0;
            if new != old {
                trail.push((c, old));
                self.domains[c] = new;
            }
            if new == [0; 4] {
                return false;
            }
        }
        true
    }
}

/// Counts all representations of `m` over `p`, visiting at most `budget`
/// search nodes.
pub fn enumerate_with_budget(
    m: &Matroid,
    p: &FinitePasture,
    budget: u64,
) -> Result<Enumeration, OracleError> {
    let bases = m.bases();
    let index: HashMap<Set, usize> = bases.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let relations = relations_of(m, &index);
    let order = search_order(bases.len(), &relations);
    let mut position = vec![0; bases.len()];
    for (i, &b) in order.iter().enumerate() {
        position[b] = i;
    }
    let mut checks = vec![Vec::new(); bases.len().max(1)];
    let mut narrow = vec![Vec::new(); bases.len().max(1)];
    let mut search = Search {
        p,
        order,
        checks: Vec::new(),
        narrow: Vec::new(),
        relations: Vec::new(),
        values: vec![0; bases.len()],
        domains: vec![dom_full(p); bases.len()],
        budget,
        nodes: 0,
        count: 0,
        stored: Vec::new(),
    };
    let mut kept = Vec::new();
    for rel in relations {
        let mut members = involved(&rel);
        members.sort_by_key(|&b| position[b]);
        match members.last() {
            Some(&last) => {
                checks[position[last]].push(kept.len());
                if members.len() >= 2 {
                    narrow[position[members[members.len() - 2]]].push((kept.len(), last));
                }
                kept.push(rel);
            }
            None if !search.holds(&rel) => {
                return Ok(Enumeration {
                    count: 0,
                    nodes: 0,
                    assignments: Vec::new(),
                });
            }
            None => {}
        }
    }
    search.checks = checks;
    search.narrow = narrow;
    search.relations = kept;
    search.run(0)?;
    let assignments = if search.count as usize == search.stored.len() {
        search.stored
    } else {
        Vec::new()
    };
    Ok(Enumeration {
        count: search.count,
        nodes: search.nodes,
        assignments,
    })
}

/// Counts all representations of `m` over `p` with the default budget.
pub fn enumerate_representations(
    m: &Matroid,
    p: &FinitePasture,
) -> Result<Enumeration, OracleError> {
    enumerate_with_budget(m, p, DEFAULT_NODE_BUDGET)
}

/// Number of rescaling classes of representations of `m` over `p`.
pub fn rescaling_classes(m: &Matroid, p: &FinitePasture) -> Result<u64, OracleError> {
    let en = enumerate_representations(m, p)?;
    orbit_count(m, p, &en)
}

/// Partitions the enumerated assignments into orbits under global scaling
/// and single-element rescalings.
pub fn orbit_count(m: &Matroid, p: &FinitePasture, en: &Enumeration) -> Result<u64, OracleError> {
    if en.count as usize != en.assignments.len() {
        return Err(OracleError::TooManyAssignments(en.count));
    }
    let gens = p.unit_generators();
    let bases = m.bases();
    let mut moves: Vec<(Set, Elem)> = Vec::new();
    for &u in &gens {
        moves.push((m.ground(), u));
        for e in 1..=m.n() {
            moves.push((bits::bit(e), u));
        }
    }
    let lookup: HashMap<&[Elem], usize> = en
        .assignments
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_slice(), i))
        .collect();
    let mut seen = vec![false; en.assignments.len()];
    let mut orbits = 0;
    for start in 0..en.assignments.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let a = &en.assignments[i];
            for &(support, u) in &moves {
                let next: Vec<Elem> = if support == m.ground() {
                    a.iter().map(|&v| p.mul(v, u)).collect()
                } else {
                    a.iter()
                        .zip(bases)
                        .map(|(&v, &b)| if b & support != 0 { p.mul(v, u) } else { v })
                        .collect()
                };
                if let Some(&k) = lookup.get(next.as_slice()) {
                    if !seen[k] {
                        seen[k] = true;
                        queue.push_back(k);
                    }
                }
            }
        }
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::catalog;
    use crate::pasture::named_pasture;

    fn count(m: &Matroid, name: &str) -> u64 {
        enumerate_representations(m, &named_pasture(name).unwrap())
            .unwrap()
            .count
    }

    fn classes(m: &Matroid, name: &str) -> u64 {
        rescaling_classes(m, &named_pasture(name).unwrap()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(count(&Matroid::uniform(1, 2).unwrap(), "F3"), 4);
        assert_eq!(count(&catalog("F7").unwrap(), "F2"), 1);
        assert_eq!(count(&Matroid::uniform(2, 4).unwrap(), "F2"), 0);
    }

    #[test]
    fn rescaling_examples() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(classes(&u24, "F3"), 1);
        assert_eq!(classes(&u24, "F4"), 2);
        assert_eq!(classes(&u24, "S"), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        let f5 = named_pasture("F5").unwrap();
        assert_eq!(
            enumerate_with_budget(&u24, &f5, 10),
            Err(OracleError::BudgetExceeded(10))
        );
    }

    #[test]
    fn global_scaling_divides_count() {
        let c5 = catalog("C5").unwrap();
        let f5 = named_pasture("F5").unwrap();
        let c = enumerate_representations(&c5, &f5).unwrap().count;
        assert!(c > 0 && c.is_multiple_of(4));
    }
}
