//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Invariant factors `d_1 | d_2 | …` (all positive) of an integer matrix.
pub fn invariant_factors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero entry in the remaining block
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !a[r][c].is_zero())
            .min_by(|&(r1, c1), &(r2, c2)| a[r1][c1].abs().cmp(&a[r2][c2].abs()))
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                for c in t..cols {
                    let v = &q * &a[t][c];
                    a[r][c] -= v;
                }
                if !a[r][t].is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for r in t..rows {
                    let v = &q * &a[r][t];
                    a[r][c] -= v;
                }
                if !a[t][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows).flat_map(|r| (t + 1..cols).map(move |c| (r, c))).find(|&(r, c)| !(&a[r][c] % &a[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((r, _)) => {
                        for c in t..cols {
                            let v = a[r][c].clone();
                            a[t][c] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t into the pivot
            let (mut br, mut bc) = (t, t);
            for r in t..rows {
                if !a[r][t].is_zero() && a[r][t].abs() < a[br][bc].abs() {
                    (br, bc) = (r, t);
                }
            }
            for c in t..cols {
                if !a[t][c].is_zero() && a[t][c].abs() < a[br][bc].abs() {
                    (br, bc) = (t, c);
                }
            }
            a.swap(t, br);
            for row in a.iter_mut() {
                row.swap(t, bc);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

pub fn rank(m: &[Vec<BigInt>]) -> usize {
    invariant_factors(m).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(invariant_factors(&mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), ints(&[2, 6, 12]));
        assert_eq!(invariant_factors(&mat(&[&[2, 0], &[0, 3]])), ints(&[1, 6]));
        assert_eq!(invariant_factors(&mat(&[&[0, 0], &[0, 0]])), ints(&[]));
        assert!(invariant_factors(&[]).is_empty());
        assert_eq!(rank(&mat(&[&[1, 1], &[1, 1]])), 1);
    }
}
