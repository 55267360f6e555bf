//! Bitmask helpers for subsets of a ground set `{1, ..., n}` with `n <= 16`.
//!
//! Element `e` is stored in bit `e - 1`.

/// A subset of the ground set.
pub type Set = u32;

/// The singleton `{e}`.
#[inline]
pub fn bit(e: usize) -> Set {
    1 << (e - 1)
}

/// The full ground set `{1, ..., n}`.
#[inline]
pub fn full(n: usize) -> Set {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

/// Builds a set from 1-indexed elements.
pub fn from_elems(elems: &[usize]) -> Set {
    elems.iter().fold(0, |acc, &e| acc | bit(e))
}

/// Elements of `s` in increasing order.
pub fn elems(s: Set) -> Vec<usize> {
    iter(s).collect()
}

/// Iterates over the elements of `s` in increasing order.
pub fn iter(mut s: Set) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let e = s.trailing_zeros() as usize + 1;
            s &= s - 1;
            Some(e)
        }
    })
}

/// Number of elements in `s`.
#[inline]
pub fn size(s: Set) -> usize {
    s.count_ones() as usize
}

/// All `k`-subsets of `within`, in lexicographic order of their sorted
/// element lists.
pub fn subsets_of_size(within: Set, k: usize) -> Vec<Set> {
    let items = elems(within);
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let m = items.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0, |acc, &i| acc | bit(items[i])));
        let Some(i) = (0..k).rev().find(|&i| idx[i] < m - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Parity of the permutation that sorts `seq` (entries must be distinct):
/// `true` when an odd number of transpositions is needed.
pub fn sort_parity(seq: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                odd = !odd;
            }
        }
    }
    odd
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_count_binomials() {
        assert_eq!(subsets_of_size(full(5), 2).len(), 10);
        assert_eq!(subsets_of_size(full(5), 0), vec![0]);
        assert_eq!(subsets_of_size(full(3), 3), vec![0b111]);
        assert!(subsets_of_size(full(3), 4).is_empty());
        assert_eq!(subsets_of_size(from_elems(&[2, 4, 7]), 2).len(), 3);
    }

    #[test]
    fn element_round_trip() {
        let s = from_elems(&[1, 5, 16]);
        assert_eq!(elems(s), vec![1, 5, 16]);
        assert_eq!(size(s), 3);
        assert_eq!(full(16), 0xffff);
    }

    #[test]
    fn parity_of_transposition() {
        assert!(!sort_parity(&[1, 2, 3]));
        assert!(sort_parity(&[2, 1, 3]));
        assert!(!sort_parity(&[3, 1, 2]));
    }
}
