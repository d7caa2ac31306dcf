//! Frames and almost complex structures.

use num_traits::{One, Zero};

use super::field::VectorField;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::series::{CScalar, MultiSeries, SeriesMatrix};

/// The standard structure J₀ on ℝ²ⁿ: J₀ ∂x_j = ∂y_j, J₀ ∂y_j = −∂x_j.
pub fn standard_j_matrix(dim: usize) -> CMatrix {
    let mut m = vec![vec![CScalar::zero(); dim]; dim];
    for i in (0..dim).step_by(2) {
        m[i + 1][i] = CScalar::one();
        m[i][i + 1] = -CScalar::one();
    }
    m
}

/// An ordered frame L₁, …, L₂ₙ with the pairing J L_{2i−1} = L_{2i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    fields: Vec<VectorField>,
    names: Vec<String>,
}

impl Frame {
    pub fn new(fields: Vec<VectorField>, names: Vec<String>) -> Result<Self> {
        let dim = fields.len();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::Input(format!(
                "a frame needs an even positive number of fields, got {dim}"
            )));
        }
        if names.len() != dim {
            return Err(Error::Input("one name per frame field is required".into()));
        }
        if fields.iter().any(|f| f.dim() != dim) {
            return Err(Error::Input(
                "frame fields must live in the frame's dimension".into(),
            ));
        }
        let acc = fields.iter().map(|f| f.accuracy()).min().unwrap_or(0);
        let frame = Frame {
            fields: fields.into_iter().map(|f| f.truncate(acc)).collect(),
            names,
        };
        if linalg::rank(&frame.matrix().constant_term()) < dim {
            return Err(Error::DegenerateFrame);
        }
        Ok(frame)
    }

    pub fn with_default_names(fields: Vec<VectorField>) -> Result<Self> {
        let names = (1..=fields.len()).map(|i| format!("L{i}")).collect();
        Frame::new(fields, names)
    }

    pub fn standard(dim: usize, accuracy: u32) -> Self {
        Frame::with_default_names(
            (0..dim)
                .map(|i| VectorField::coordinate(dim, accuracy, i))
                .collect(),
        )
        .expect("coordinate frame")
    }

    pub fn dim(&self) -> usize {
        self.fields.len()
    }

    pub fn accuracy(&self) -> u32 {
        self.fields[0].accuracy()
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self, i: usize) -> &VectorField {
        &self.fields[i]
    }

    pub fn by_name(&self, name: &str) -> Option<&VectorField> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| &self.fields[i])
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Component matrix B whose columns are the frame fields.
    pub fn matrix(&self) -> SeriesMatrix {
        SeriesMatrix::from_columns(
            self.fields
                .iter()
                .map(|f| f.components().to_vec())
                .collect(),
        )
        .expect("frame matrix")
    }

    /// Coefficient series c_i with v = Σ c_i L_i.
    pub fn decompose(&self, v: &VectorField) -> Result<Vec<MultiSeries>> {
        let b_inv = self
            .matrix()
            .inverse()
            .map_err(|_| Error::DegenerateFrame)?;
        Ok(b_inv.apply(v.components())?)
    }

    /// Rewrites the value of a field at 0 in the real basis {L_i(0)}.
    pub fn coordinates_at_origin(&self, v: &[CScalar]) -> Option<Vec<CScalar>> {
        linalg::solve_unique(&self.matrix().constant_term(), v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostComplexStructure {
    j: SeriesMatrix,
}

impl AlmostComplexStructure {
    /// Wraps a matrix after checking J² = −Id up to its accuracy.
    pub fn from_matrix(j: SeriesMatrix) -> Result<Self> {
        if j.rows() != j.cols() || !j.rows().is_multiple_of(2) || j.nvars() != j.rows() {
            return Err(Error::Input(
                "J must be a square 2n×2n matrix of series in 2n variables".into(),
            ));
        }
        let s = AlmostComplexStructure { j };
        if !s.squares_to_minus_identity() {
            return Err(Error::Input("J² ≠ −Id".into()));
        }
        Ok(s)
    }

    pub fn standard(dim: usize, accuracy: u32) -> Self {
        AlmostComplexStructure {
            j: SeriesMatrix::constant(&standard_j_matrix(dim), dim, accuracy),
        }
    }

    pub fn matrix(&self) -> &SeriesMatrix {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn accuracy(&self) -> u32 {
        self.j.accuracy()
    }

    pub fn truncate(&self, accuracy: u32) -> Self {
        AlmostComplexStructure {
            j: self.j.truncate(accuracy),
        }
    }

    pub fn apply(&self, x: &VectorField) -> VectorField {
        VectorField::new(
            self.j
                .apply(x.components())
                .expect("J applied to a field of matching dimension"),
        )
    }

    pub fn at_origin(&self) -> CMatrix {
        self.j.constant_term()
    }

    pub fn is_standard_at_origin(&self) -> bool {
        self.at_origin() == standard_j_matrix(self.dim())
    }

    pub fn squares_to_minus_identity(&self) -> bool {
        let sq = self.j.mul(&self.j).expect("square matrix");
        sq.add(&SeriesMatrix::identity(
            self.dim(),
            self.dim(),
            self.accuracy(),
        ))
        .expect("same shape")
        .is_zero()
    }

    /// N(X, Y) = [JX, JY] − J[JX, Y] − J[X, JY] − [X, Y].
    pub fn nijenhuis(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let jx = self.apply(x);
        let jy = self.apply(y);
        jx.bracket(&jy)
            .sub(&self.apply(&jx.bracket(y)))
            .sub(&self.apply(&x.bracket(&jy)))
            .sub(&x.bracket(y))
    }

    /// Vanishing of the Nijenhuis tensor on all coordinate pairs, up to accuracy.
    /// Returns the first failing pair otherwise.
    pub fn integrability_defect(&self) -> Option<(usize, usize, VectorField)> {
        let dim = self.dim();
        let acc = self.accuracy();
        for a in 0..dim {
            for b in a + 1..dim {
                let n = self.nijenhuis(
                    &VectorField::coordinate(dim, acc, a),
                    &VectorField::coordinate(dim, acc, b),
                );
                if !n.is_zero() {
                    return Some((a, b, n));
                }
            }
        }
        None
    }

    /// Pushes J through the constant linear change of coordinates z = P w:
    /// the new structure is P⁻¹ J(P w) P.
    pub fn linear_pullback(&self, p: &CMatrix) -> Result<Self> {
        let dim = self.dim();
        let acc = self.accuracy();
        let p_inv =
            linalg::inverse(p).ok_or_else(|| Error::SingularSystem("change of basis".into()))?;
        let args = linear_substitution(p, acc);
        let composed = self.j.compose(&args)?;
        let ps = SeriesMatrix::constant(p, dim, acc);
        let pis = SeriesMatrix::constant(&p_inv, dim, acc);
        Ok(AlmostComplexStructure {
            j: pis.mul(&composed)?.mul(&ps)?,
        })
    }
}

/// The coordinate functions z = P w, as series in w.
pub fn linear_substitution(p: &CMatrix, accuracy: u32) -> Vec<MultiSeries> {
    let dim = p.len();
    (0..dim)
        .map(|i| {
            let terms = (0..dim).filter(|&j| !p[i][j].is_zero()).map(|j| {
                let mut e = vec![0u32; dim];
                e[j] = 1;
                (e, p[i][j].clone())
            });
            MultiSeries::from_exponent_terms(dim, accuracy, terms)
        })
        .collect()
}

/// J = B P₀ B⁻¹ for the frame matrix B, so that J L_{2i−1} = L_{2i}.
pub fn j_from_frame(frame: &Frame) -> Result<AlmostComplexStructure> {
    let dim = frame.dim();
    let acc = frame.accuracy();
    let b = frame.matrix();
    let b_inv = b.inverse().map_err(|_| Error::DegenerateFrame)?;
    let p0 = SeriesMatrix::constant(&standard_j_matrix(dim), dim, acc);
    let j = b.mul(&p0)?.mul(&b_inv)?;
    Ok(AlmostComplexStructure { j })
}

/// A real basis (v₁, J₀v₁, v₂, J₀v₂, …) with each vᵢ taken greedily from the
/// standard basis, for a constant complex structure `j0`. In that basis `j0`
/// becomes the standard structure.
pub fn standardizing_basis(j0: &CMatrix) -> Result<CMatrix> {
    complex_basis(j0, &[])
}

/// Like [`standardizing_basis`], but starting from the given vectors, which must
/// be independent over ℂ for `j0`.
pub fn complex_basis(j0: &CMatrix, seeds: &[Vec<CScalar>]) -> Result<CMatrix> {
    let dim = j0.len();
    let mut cols: Vec<Vec<CScalar>> = Vec::new();
    let standard = (0..dim).map(|i| {
        let mut e = vec![CScalar::zero(); dim];
        e[i] = CScalar::one();
        e
    });
    for e in seeds.iter().cloned().chain(standard) {
        if cols.len() == dim {
            break;
        }
        let je = linalg::mat_vec(j0, &e);
        let mut trial = cols.clone();
        trial.push(e);
        trial.push(je);
        let as_rows: CMatrix = (0..dim)
            .map(|r| trial.iter().map(|c| c[r].clone()).collect())
            .collect();
        if linalg::rank(&as_rows) == trial.len() {
            cols = trial;
        }
    }
    if cols.len() != dim {
        return Err(Error::Input("J(0) is not a complex structure".into()));
    }
    Ok((0..dim)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect())
}
