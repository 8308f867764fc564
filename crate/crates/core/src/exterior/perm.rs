//! Permutations, Koszul signs and unshuffles.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, .., n-1}`; `images[i]` is the image of `i`.
///
/// Displayed 1-based, as one-line notation `[σ(1) σ(2) …]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidInput(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from 1-based images, e.g. `[2, 3, 1]` for the cycle (1 2 3).
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidInput(format!("1-based images expected: {images:?}")));
        }
        Permutation::new(images.iter().map(|i| i - 1).collect())
    }

    /// The transposition of positions `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    /// `(-1)^σ`.
    pub fn sign(&self) -> i32 {
        let inversions = self.inversions().count();
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    fn inversions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.images.len();
        (0..n).flat_map(move |a| {
            ((a + 1)..n).filter_map(move |b| {
                (self.images[a] > self.images[b]).then_some((self.images[a], self.images[b]))
            })
        })
    }

    /// Rearranges `items` into `items[σ(0)], items[σ(1)], …`.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| items[i].clone()).collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Koszul sign `ε(σ; x_1..x_n)` defined by
/// `x_1 ∧ … ∧ x_n = ε(σ) x_σ(1) ∧ … ∧ x_σ(n)` in the free graded-commutative algebra.
/// The permutation sign `(-1)^σ` is not included.
pub fn koszul_sign(perm: &Permutation, degrees: &[i64]) -> Result<i32> {
    if degrees.len() != perm.len() {
        return Err(Error::InvalidInput(format!(
            "koszul sign: {} degrees for a permutation of {} elements",
            degrees.len(),
            perm.len()
        )));
    }
    // every out-of-order pair of elements is swapped exactly once when sorting
    let odd = perm
        .inversions()
        .filter(|&(a, b)| (degrees[a] * degrees[b]).rem_euclid(2) == 1)
        .count();
    Ok(if odd % 2 == 0 { 1 } else { -1 })
}

/// All `(p, q)`-unshuffles: `σ(1) < … < σ(p)` and `σ(p+1) < … < σ(p+q)`,
/// in lexicographic order of the first block.
pub fn unshuffles(p: usize, q: usize) -> Vec<Permutation> {
    let n = p + q;
    let mut out = Vec::new();
    for first in combinations(n, p) {
        let mut images = first.clone();
        images.extend((0..n).filter(|i| !first.contains(i)));
        out.push(Permutation { images });
    }
    out
}

/// All of `S_n`, in lexicographic order of the one-line notation.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if cur.len() == n {
            out.push(Permutation { images: cur.clone() });
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Increasing `k`-subsets of `{0..n-1}` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn koszul_examples() {
        let id = Permutation::identity(3);
        assert_eq!(koszul_sign(&id, &[1, 2, 3]).unwrap(), 1);
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        assert_eq!(koszul_sign(&swap, &[1, 1]).unwrap(), -1);
        // x1∧x2∧x3 = ε x2∧x3∧x1: moving the odd x1 past odd x2 and even x3
        let cycle = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(koszul_sign(&cycle, &[1, 1, 0]).unwrap(), -1);
        assert_eq!(koszul_sign(&cycle, &[1, 1, 1]).unwrap(), 1);
        assert!(koszul_sign(&cycle, &[1, 1]).is_err());
    }

    #[test]
    fn koszul_matches_adjacent_swap_expansion() {
        // independent route: bubble-sort the sequence σ(1..n) back to identity
        for images in all_perms(4) {
            let perm = Permutation::new(images.clone()).unwrap();
            for mask in 0..16u32 {
                let deg: Vec<i64> = (0..4).map(|i| ((mask >> i) & 1) as i64).collect();
                let mut seq = images.clone();
                let mut s = 1;
                for _ in 0..seq.len() {
                    for a in 0..seq.len() - 1 {
                        if seq[a] > seq[a + 1] {
                            if deg[seq[a]] * deg[seq[a + 1]] % 2 == 1 {
                                s = -s;
                            }
                            seq.swap(a, a + 1);
                        }
                    }
                }
                assert_eq!(koszul_sign(&perm, &deg).unwrap(), s, "{perm} {deg:?}");
            }
        }
    }

    #[test]
    fn unshuffle_examples() {
        let sh21 = unshuffles(2, 1);
        let expect: Vec<Permutation> = [[1, 2, 3], [1, 3, 2], [2, 3, 1]]
            .iter()
            .map(|im| Permutation::from_one_based(im).unwrap())
            .collect();
        assert_eq!(sh21, expect);
        assert_eq!(unshuffles(0, 3), vec![Permutation::identity(3)]);
        let sh22 = unshuffles(2, 2);
        // brute-force filter of S_4
        let brute: Vec<Vec<usize>> = all_perms(4)
            .into_iter()
            .filter(|p| p[0] < p[1] && p[2] < p[3])
            .collect();
        assert_eq!(sh22.len(), 6);
        assert_eq!(brute.len(), 6);
        for p in &sh22 {
            assert!(brute.contains(&p.images().to_vec()));
        }
    }

    #[test]
    fn permutation_sign() {
        assert_eq!(Permutation::from_one_based(&[2, 3, 1]).unwrap().sign(), 1);
        assert_eq!(Permutation::from_one_based(&[1, 3, 2]).unwrap().sign(), -1);
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(all_permutations(0), vec![Permutation::identity(0)]);
    }
}
