//! Matrices with series entries.

use num_traits::One;

use super::multi::MultiSeries;
use super::scalar::CScalar;
use crate::error::SeriesError;
use crate::linalg::{self, CMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiSeries>,
}

impl SeriesMatrix {
    pub fn from_rows(rows: Vec<Vec<MultiSeries>>) -> Result<Self, SeriesError> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(SeriesError::DimensionMismatch("ragged rows".into()));
        }
        let entries: Vec<MultiSeries> = rows.into_iter().flatten().collect();
        if let Some(first) = entries.first() {
            if entries.iter().any(|e| e.nvars() != first.nvars()) {
                return Err(SeriesError::DimensionMismatch(
                    "entries have different variable counts".into(),
                ));
            }
        }
        let acc = entries.iter().map(|e| e.accuracy()).min().unwrap_or(0);
        Ok(SeriesMatrix {
            rows: r,
            cols: c,
            entries: entries.into_iter().map(|e| e.truncate(acc)).collect(),
        })
    }

    pub fn from_columns(cols: Vec<Vec<MultiSeries>>) -> Result<Self, SeriesError> {
        let c = cols.len();
        let r = cols.first().map(|col| col.len()).unwrap_or(0);
        let rows = (0..r)
            .map(|i| (0..c).map(|j| cols[j][i].clone()).collect())
            .collect();
        SeriesMatrix::from_rows(rows)
    }

    pub fn constant(m: &CMatrix, nvars: usize, accuracy: u32) -> Self {
        let rows = m
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| MultiSeries::constant(nvars, accuracy, c.clone()))
                    .collect()
            })
            .collect();
        SeriesMatrix::from_rows(rows).unwrap()
    }

    pub fn identity(n: usize, nvars: usize, accuracy: u32) -> Self {
        SeriesMatrix::constant(&linalg::identity(n), nvars, accuracy)
    }

    pub fn zero(rows: usize, cols: usize, nvars: usize, accuracy: u32) -> Self {
        SeriesMatrix {
            rows,
            cols,
            entries: vec![MultiSeries::zero(nvars, accuracy); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.entries.first().map(|e| e.nvars()).unwrap_or(0)
    }

    pub fn accuracy(&self) -> u32 {
        self.entries.first().map(|e| e.accuracy()).unwrap_or(0)
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiSeries {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[MultiSeries] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<MultiSeries> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn constant_term(&self) -> CMatrix {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).constant_term())
                    .collect()
            })
            .collect()
    }

    pub fn map(&self, f: impl Fn(&MultiSeries) -> MultiSeries) -> SeriesMatrix {
        let entries: Vec<MultiSeries> = self.entries.iter().map(f).collect();
        let acc = entries.iter().map(|e| e.accuracy()).min().unwrap_or(0);
        SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: entries.into_iter().map(|e| e.truncate(acc)).collect(),
        }
    }

    pub fn truncate(&self, accuracy: u32) -> SeriesMatrix {
        self.map(|e| e.truncate(accuracy))
    }

    pub fn scale(&self, c: &CScalar) -> SeriesMatrix {
        self.map(|e| e.scale(c))
    }

    pub fn neg(&self) -> SeriesMatrix {
        self.map(|e| -e)
    }

    fn zip(&self, other: &SeriesMatrix, sub: bool) -> Result<SeriesMatrix, SeriesError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(SeriesError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| if sub { a - b } else { a + b })
            .collect();
        Ok(SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn add(&self, other: &SeriesMatrix) -> Result<SeriesMatrix, SeriesError> {
        self.zip(other, false)
    }

    pub fn sub(&self, other: &SeriesMatrix) -> Result<SeriesMatrix, SeriesError> {
        self.zip(other, true)
    }

    pub fn mul(&self, other: &SeriesMatrix) -> Result<SeriesMatrix, SeriesError> {
        if self.cols != other.rows {
            return Err(SeriesError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let acc = self.accuracy().min(other.accuracy());
        let nvars = self.nvars();
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = MultiSeries::zero(nvars, acc);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    s = &s + &a.mul_truncated(b, acc);
                }
                entries.push(s);
            }
        }
        Ok(SeriesMatrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// Matrix times a column of series.
    pub fn apply(&self, v: &[MultiSeries]) -> Result<Vec<MultiSeries>, SeriesError> {
        if v.len() != self.cols {
            return Err(SeriesError::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let acc = v
            .iter()
            .map(|e| e.accuracy())
            .min()
            .unwrap_or(0)
            .min(self.accuracy());
        let nvars = v.first().map(|e| e.nvars()).unwrap_or(self.nvars());
        Ok((0..self.rows)
            .map(|i| {
                let mut s = MultiSeries::zero(nvars, acc);
                for (k, vk) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if a.is_zero() || vk.is_zero() {
                        continue;
                    }
                    s = &s + &a.mul_truncated(vk, acc);
                }
                s
            })
            .collect())
    }

    /// Substitutes series into every entry.
    pub fn compose(&self, args: &[MultiSeries]) -> Result<SeriesMatrix, SeriesError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.compose(args))
            .collect::<Result<Vec<_>, _>>()?;
        let acc = entries.iter().map(|e| e.accuracy()).min().unwrap_or(0);
        Ok(SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: entries.into_iter().map(|e| e.truncate(acc)).collect(),
        })
    }

    /// Inverse of a square matrix whose constant term is invertible. Writing
    /// M = M₀ + E, iterates N ← M₀⁻¹ − M₀⁻¹ E N until it stabilises; each pass
    /// fixes one more degree.
    pub fn inverse(&self) -> Result<SeriesMatrix, SeriesError> {
        if self.rows != self.cols {
            return Err(SeriesError::DimensionMismatch(
                "inverse of non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let nvars = self.nvars();
        let acc = self.accuracy();
        let m0 = self.constant_term();
        let m0_inv = linalg::inverse(&m0).ok_or(SeriesError::SingularConstantTerm)?;
        let m0_inv_s = SeriesMatrix::constant(&m0_inv, nvars, acc);
        let e = self.sub(&SeriesMatrix::constant(&m0, nvars, acc))?;
        if e.entries.iter().all(|x| x.is_zero()) {
            return Ok(m0_inv_s);
        }
        let k = m0_inv_s.mul(&e)?;
        let mut inv = m0_inv_s.clone();
        for _ in 0..=acc {
            let next = m0_inv_s.sub(&k.mul(&inv)?)?;
            if next == inv {
                break;
            }
            inv = next;
        }
        debug_assert_eq!(inv.rows, n);
        Ok(inv)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.len() == 1 && e.constant_term() == CScalar::one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn valuation(&self) -> Option<u32> {
        self.entries.iter().filter_map(|e| e.valuation()).min()
    }

    pub fn to_rows(&self) -> Vec<Vec<MultiSeries>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::scalar::rat;

    #[test]
    fn identity_inverts_to_identity() {
        let id = SeriesMatrix::identity(3, 2, 4);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn neumann_series() {
        // Id + E with E = [[0, x], [y, 0]]
        let x = MultiSeries::var(2, 4, 0);
        let y = MultiSeries::var(2, 4, 1);
        let z = MultiSeries::zero(2, 4);
        let e =
            SeriesMatrix::from_rows(vec![vec![z.clone(), x.clone()], vec![y.clone(), z.clone()]])
                .unwrap();
        let m = SeriesMatrix::identity(2, 2, 4).add(&e).unwrap();
        let inv = m.inverse().unwrap();
        let mut expected = SeriesMatrix::identity(2, 2, 4);
        let mut power = SeriesMatrix::identity(2, 2, 4);
        for k in 1..=4 {
            power = power.mul(&e.neg()).unwrap();
            let _ = k;
            expected = expected.add(&power).unwrap();
        }
        assert_eq!(inv, expected);
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn singular_constant_term() {
        let x = MultiSeries::var(1, 3, 0);
        let m = SeriesMatrix::from_rows(vec![vec![x]]).unwrap();
        assert_eq!(m.inverse(), Err(SeriesError::SingularConstantTerm));
        let half = MultiSeries::constant(1, 3, CScalar::real(rat(1, 2)));
        let m = SeriesMatrix::from_rows(vec![vec![half]]).unwrap();
        assert_eq!(
            m.inverse().unwrap().get(0, 0).constant_term(),
            CScalar::from_int(2)
        );
    }
}
