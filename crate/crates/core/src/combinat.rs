//! Enumerators for permutations, compositions and (ordered) set partitions.
//!
//! All enumerators are 0-based and return their output in a fixed,
//! documented order so that downstream sums are reproducible.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::arith::factorial;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Compositions of `n` (ordered tuples of positive parts), lexicographic.
/// `n = 0` has the single empty composition.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Breakpoint form of `compositions`: strictly increasing `0 = a_0 < ... < a_m = n`.
pub fn breakpoints(n: usize) -> Vec<Vec<usize>> {
    compositions(n)
        .into_iter()
        .map(|c| {
            let mut a = vec![0];
            for p in c {
                a.push(a.last().unwrap() + p);
            }
            a
        })
        .collect()
}

/// Set partitions of `0..n`. Blocks are sorted and listed by their least element.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    // restricted growth strings
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        let n = rgs.len();
        if i == n {
            let blocks = if n == 0 { 0 } else { max + 1 };
            let mut p: Vec<Vec<usize>> = vec![Vec::new(); blocks];
            for (x, &b) in rgs.iter().enumerate() {
                p[b].push(x);
            }
            out.push(p);
            return;
        }
        let top = if i == 0 { 0 } else { max + 1 };
        for b in 0..=top {
            rgs[i] = b;
            rec(i + 1, if i == 0 { 0 } else { max.max(b) }, rgs, out);
        }
    }
    rec(0, 0, &mut rgs, &mut out);
    out
}

/// Ordered set partitions of `0..n`: every set partition in every block order.
pub fn ordered_set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for p in set_partitions(n) {
        for perm in permutations(p.len()) {
            out.push(perm.iter().map(|&i| p[i].clone()).collect());
        }
    }
    out
}

/// `n! / (k_1! ... k_m!)` with `n = sum k_i`.
pub fn multinomial(parts: &[usize]) -> BigInt {
    let n: usize = parts.iter().sum();
    parts
        .iter()
        .fold(factorial(n as u64), |acc, &k| acc / factorial(k as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(compositions(4).len(), 8);
        assert_eq!(
            compositions(3),
            vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]
        );
        assert_eq!(breakpoints(2), vec![vec![0, 1, 2], vec![0, 2]]);
        // Bell and Fubini numbers
        let bell: Vec<usize> = (0..7).map(|n| set_partitions(n).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52, 203]);
        let fubini: Vec<usize> = (0..6).map(|n| ordered_set_partitions(n).len()).collect();
        assert_eq!(fubini, vec![1, 1, 3, 13, 75, 541]);
        assert_eq!(multinomial(&[2, 1, 1]), BigInt::from(12));
    }

    #[test]
    fn set_partition_shape() {
        let p = set_partitions(3);
        assert_eq!(p[0], vec![vec![0, 1, 2]]);
        for part in &p {
            let mut all: Vec<usize> = part.iter().flatten().copied().collect();
            all.sort();
            assert_eq!(all, vec![0, 1, 2]);
            assert!(part.windows(2).all(|w| w[0][0] < w[1][0]));
        }
    }
}
