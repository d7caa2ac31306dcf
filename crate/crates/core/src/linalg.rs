//! Exact dense linear algebra over ℚ(i) and symmetric inertia over ℚ.

use num_traits::{One, Signed, Zero};

use crate::series::scalar::{CScalar, Rational};

pub type CMatrix = Vec<Vec<CScalar>>;

pub fn identity(n: usize) -> CMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        CScalar::one()
                    } else {
                        CScalar::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let inner = b.len();
    let cols = b.first().map(|r| r.len()).unwrap_or(0);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = CScalar::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &CMatrix, v: &[CScalar]) -> Vec<CScalar> {
    a.iter()
        .map(|row| {
            let mut acc = CScalar::zero();
            for (x, y) in row.iter().zip(v) {
                acc += &(x * y);
            }
            acc
        })
        .collect()
}

/// Row-reduced echelon form. Pivots are taken in column order, choosing the
/// lowest-index row with a nonzero entry. Returns the pivot columns.
pub fn rref(m: &mut CMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for x in m[r][c..].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r][c..].to_vec();
                for (x, p) in m[i][c..].iter_mut().zip(&pivot_row) {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &CMatrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// A basis of `{v : m v = 0}`.
pub fn nullspace(m: &CMatrix) -> Vec<Vec<CScalar>> {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![CScalar::zero(); cols];
            v[f] = CScalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&a[i][f];
            }
            v
        })
        .collect()
}

/// Some solution of `a x = b`, or `None` if the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(a: &CMatrix, b: &[CScalar]) -> Option<Vec<CScalar>> {
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut aug: CMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![CScalar::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][cols].clone();
    }
    Some(x)
}

/// Unique solution of a square system, `None` if singular.
pub fn solve_unique(a: &CMatrix, b: &[CScalar]) -> Option<Vec<CScalar>> {
    if rank(a) < a.len() {
        return None;
    }
    solve(a, b)
}

pub fn inverse(a: &CMatrix) -> Option<CMatrix> {
    let n = a.len();
    let mut aug: CMatrix = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Signature of a real symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn is_psd(&self) -> bool {
        self.negative == 0
    }
    pub fn is_nsd(&self) -> bool {
        self.positive == 0
    }
}

/// Inertia via exact symmetric-pivoted LDLᵀ. A nonzero diagonal entry of
/// lowest index is used as a 1×1 pivot; when the remaining diagonal is zero
/// but the block is not, the lowest off-diagonal pair gives a 2×2 pivot
/// `[[0, c], [c, 0]]` contributing one positive and one negative direction.
pub fn symmetric_inertia(m: &[Vec<Rational>]) -> Inertia {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut active: Vec<usize> = (0..a.len()).collect();
    let mut inertia = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.remove(pos);
            let d = a[p][p].clone();
            if d.is_positive() {
                inertia.positive += 1;
            } else {
                inertia.negative += 1;
            }
            for &i in &active {
                let f = &a[i][p] / &d;
                if f.is_zero() {
                    continue;
                }
                for &j in &active {
                    let delta = &f * &a[p][j];
                    a[i][j] -= delta;
                }
            }
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(ii, &i)| {
            active[ii + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((p, q)) = pair else {
            inertia.zero += active.len();
            break;
        };
        active.retain(|&i| i != p && i != q);
        inertia.positive += 1;
        inertia.negative += 1;
        // Block [[0, c], [c, 0]] has inverse [[0, 1/c], [1/c, 0]].
        let c = a[p][q].clone();
        let rows: Vec<(usize, Rational, Rational)> = active
            .iter()
            .map(|&i| (i, a[i][p].clone(), a[i][q].clone()))
            .collect();
        for (i, aip, aiq) in &rows {
            for (j, ajp, ajq) in &rows {
                let delta = (aip * ajq + aiq * ajp) / &c;
                a[*i][*j] -= delta;
            }
        }
    }
    inertia
}

/// Realification of a Hermitian matrix H = A + iB as the symmetric matrix
/// `[[A, -B], [B, A]]`.
pub fn realify_hermitian(h: &CMatrix) -> Vec<Vec<Rational>> {
    let n = h.len();
    let mut out = vec![vec![Rational::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = h[i][j].re.clone();
            out[i + n][j + n] = h[i][j].re.clone();
            out[i][j + n] = -h[i][j].im.clone();
            out[i + n][j] = h[i][j].im.clone();
        }
    }
    out
}

pub fn is_hermitian(h: &CMatrix) -> bool {
    h.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, v)| *v == h[j][i].conj()))
}

/// Inertia of a Hermitian matrix (each direction counted once over ℂ).
pub fn hermitian_inertia(h: &CMatrix) -> Inertia {
    let r = symmetric_inertia(&realify_hermitian(h));
    Inertia {
        positive: r.positive / 2,
        negative: r.negative / 2,
        zero: r.zero / 2,
    }
}

pub fn is_zero_vec(v: &[CScalar]) -> bool {
    v.iter().all(|c| c.is_zero())
}

pub fn one() -> CScalar {
    CScalar::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::scalar::{int, rat};

    fn c(n: i64) -> CScalar {
        CScalar::from_int(n)
    }

    #[test]
    fn solves_and_inverts() {
        let a = vec![vec![c(2), c(1)], vec![c(1), c(3)]];
        let x = solve_unique(&a, &[c(3), c(5)]).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![c(3), c(5)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        let sing = vec![vec![c(1), c(2)], vec![c(2), c(4)]];
        assert!(inverse(&sing).is_none());
        assert_eq!(nullspace(&sing), vec![vec![c(-2), c(1)]]);
        assert!(solve(&sing, &[c(1), c(3)]).is_none());
    }

    #[test]
    fn complex_nullspace() {
        // [[1, i], [-i, 1]] has kernel spanned by (-i, 1).
        let i = CScalar::i();
        let h = vec![vec![c(1), i.clone()], vec![-&i, c(1)]];
        assert!(is_hermitian(&h));
        let k = nullspace(&h);
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&mat_vec(&h, &k[0])));
        let inertia = hermitian_inertia(&h);
        assert_eq!(
            inertia,
            Inertia {
                positive: 1,
                negative: 0,
                zero: 1
            }
        );
    }

    #[test]
    fn inertia_with_zero_diagonal() {
        let m = vec![
            vec![int(0), int(1), int(0)],
            vec![int(1), int(0), int(0)],
            vec![int(0), int(0), rat(1, 2)],
        ];
        assert_eq!(
            symmetric_inertia(&m),
            Inertia {
                positive: 2,
                negative: 1,
                zero: 0
            }
        );
    }
}
