//! Exact small-matrix routines over scalars and over function rings.

use crate::function::Function;
use crate::scalar::GaussianRational;

pub type Matrix = Vec<Vec<GaussianRational>>;

/// Rank by Gaussian elimination in exact arithmetic.
pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().unwrap();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] -= &t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn det(m: &Matrix) -> GaussianRational {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = GaussianRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return GaussianRational::zero() };
        if p != c {
            a.swap(c, p);
            acc = -acc;
        }
        acc *= &a[c][c];
        let inv = a[c][c].inv().unwrap();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= &t;
            }
        }
    }
    acc
}

/// Cofactor expansion along the first row; intended for sizes up to about 5.
pub fn det_symbolic<F: Function>(m: &[Vec<F>]) -> F {
    match m.len() {
        0 => panic!("determinant of an empty matrix"),
        1 => m[0][0].clone(),
        2 => m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
        n => {
            let mut acc = m[0][0].zero_like();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<F>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = m[0][j].clone() * det_symbolic(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// The submatrix on the given rows and columns.
pub fn submatrix<T: Clone>(m: &[Vec<T>], rows: &[usize], cols: &[usize]) -> Vec<Vec<T>> {
    rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect()
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

pub fn is_hermitian(m: &Matrix) -> bool {
    m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| *x == m[j][i].conj()))
}

/// Signature of a Hermitian matrix. Uses the signs of leading principal minors
/// when none vanish, otherwise diagonalizes by congruence.
pub fn inertia(m: &Matrix) -> Inertia {
    assert!(is_hermitian(m), "inertia needs a Hermitian matrix");
    let n = m.len();
    let minors: Vec<GaussianRational> = (1..=n)
        .map(|k| det(&submatrix(m, &(0..k).collect::<Vec<_>>(), &(0..k).collect::<Vec<_>>())))
        .collect();
    if minors.iter().all(|d| !d.is_zero()) {
        let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
        let mut prev_positive = true;
        for d in &minors {
            let positive = d.re() > &num_rational::BigRational::from_integer(0.into());
            if positive == prev_positive {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            prev_positive = positive;
        }
        return out;
    }
    inertia_by_congruence(m)
}

/// Signature via symmetric elimination `A ↦ E A E*`.
pub fn inertia_by_congruence(m: &Matrix) -> Inertia {
    let mut a = m.clone();
    let n = a.len();
    let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
    let mut k = 0;
    while k < n {
        let pivot = (k..n).find(|&i| !a[i][i].is_zero());
        match pivot {
            Some(p) => {
                a.swap(k, p);
                for row in a.iter_mut() {
                    row.swap(k, p);
                }
            }
            None => {
                let off = (k..n).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
                let Some((i, j)) = off else {
                    out.zero += n - k;
                    break;
                };
                // row_i += c·row_j, col_i += c̄·col_j with c = a_ij gives a_ii = 2|a_ij|²
                let c = a[i][j].clone();
                for col in 0..n {
                    let t = &c * &a[j][col];
                    a[i][col] += &t;
                }
                let cc = c.conj();
                for row in 0..n {
                    let t = &a[row][j] * &cc;
                    a[row][i] += &t;
                }
                continue;
            }
        }
        let d = a[k][k].clone();
        let inv = d.inv().unwrap();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] * &inv;
            for col in 0..n {
                let t = &f * &a[k][col];
                a[i][col] -= &t;
            }
            let fc = f.conj();
            for row in 0..n {
                let t = &a[row][k] * &fc;
                a[row][i] -= &t;
            }
        }
        if d.re() > &num_rational::BigRational::from_integer(0.into()) {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| GaussianRational::from_int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_det() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        assert!(det(&a).is_zero());
        let b = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(det(&b), 5.into());
    }

    #[test]
    fn inertia_with_zero_diagonal() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(inertia(&a), Inertia { positive: 1, negative: 1, zero: 0 });
        let b = m(&[&[1, 0, 0], &[0, -2, 0], &[0, 0, 0]]);
        assert_eq!(inertia(&b), Inertia { positive: 1, negative: 1, zero: 1 });
        let i = GaussianRational::i();
        let c = vec![
            vec![GaussianRational::zero(), i.clone()],
            vec![-i, GaussianRational::zero()],
        ];
        assert_eq!(inertia(&c), Inertia { positive: 1, negative: 1, zero: 0 });
    }
}
