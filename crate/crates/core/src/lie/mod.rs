//! Coefficient modules for twisted cohomology.
//!
//! All modules sit inside `gl(4)` and are acted on by conjugation. With the
//! Lorentzian form `J = diag(1,1,1,-1)` the traceless matrices split as
//! `sl(4) = so(3,1) + v` where `so(3,1) = {a : a^t J = -J a}` and
//! `v = {a : a^t J = J a}`. Both summands are preserved by `O(3,1)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};
use crate::linalg::{LinalgError, Matrix, Vector};

mod lift;
mod representation;
mod su31;

pub use lift::{hermitian_basis, lift_sl2c};
pub use representation::{invariant_subspace_of_matrices, InputForm, InvariantElement, Representation};
pub use su31::{su31_root_check, Su31Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("matrix is not an element of the module {0}")]
    NotInModule(ModuleKind),
    #[error("conjugation does not preserve the module {0}")]
    ModuleNotPreserved(ModuleKind),
    #[error("expected a {expected} matrix, got {rows}x{cols}")]
    Shape { expected: &'static str, rows: usize, cols: usize },
    #[error("determinant is {0}, expected 1")]
    Determinant(String),
    #[error("matrix does not preserve the Lorentzian form J")]
    NotLorentzian,
    #[error("lifted matrix has non-real entries")]
    NotReal,
    #[error("trace is {0}, expected 0")]
    NotTraceless(String),
    #[error("relator {index} evaluates to a matrix other than the identity")]
    RelatorNotSatisfied { index: usize },
    #[error("representation has {have} generators, presentation has {want}")]
    GeneratorCount { have: usize, want: usize },
    #[error("element is not invariant under word {0}")]
    NotInvariant(String),
    #[error("field mismatch: representation over d={rep}, input over d={input}")]
    FieldMismatch { rep: u64, input: u64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleKind {
    Sl4,
    So31,
    V,
    Gl4,
}

impl ModuleKind {
    pub const ALL: [ModuleKind; 4] = [ModuleKind::Sl4, ModuleKind::So31, ModuleKind::V, ModuleKind::Gl4];

    pub fn dim(self) -> usize {
        match self {
            ModuleKind::Sl4 => 15,
            ModuleKind::So31 => 6,
            ModuleKind::V => 9,
            ModuleKind::Gl4 => 16,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModuleKind::Sl4 => "sl4",
            ModuleKind::So31 => "so31",
            ModuleKind::V => "v",
            ModuleKind::Gl4 => "gl4",
        }
    }
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModuleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sl4" => Ok(ModuleKind::Sl4),
            "so31" => Ok(ModuleKind::So31),
            "v" => Ok(ModuleKind::V),
            "gl4" => Ok(ModuleKind::Gl4),
            other => Err(format!("unknown module {other:?}; expected one of sl4, so31, v, gl4")),
        }
    }
}

/// The Lorentzian form `diag(1,1,1,-1)`.
pub fn j_matrix(field: Field) -> Matrix {
    Matrix::from_ints(field, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]])
}

/// Elementary matrix `E_ij` (zero-based indices).
pub fn elementary(field: Field, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(field, 4, 4);
    m[(i, j)] = field.one();
    m
}

/// Basis `[r12, r13, r23, b1, b2, b3]` with `r_ij = E_ij - E_ji` and
/// `b_i = E_i4 + E_4i`.
pub fn so31_basis(field: Field) -> Vec<Matrix> {
    let e = |i, j| elementary(field, i, j);
    let mut basis = Vec::with_capacity(6);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        basis.push(e(i, j).sub(&e(j, i)));
    }
    for i in 0..3 {
        basis.push(e(i, 3).add(&e(3, i)));
    }
    basis
}

/// Basis `v1..v9` of `v`, built from `x* = x^t J`:
/// `v_i = e_i e_i* + e_4 e_4*` for `i = 1..3`, then `e_a e_b* + e_b e_a*` for
/// `(a,b) = (1,2), (1,3), (1,4), (2,3), (2,4), (3,4)`, except that `v6` carries
/// the opposite sign, `v6 = E14 - E41`. The sign is frozen by golden tests on
/// the adjoint matrices of the figure-eight holonomy.
pub fn v_basis(field: Field) -> Vec<Matrix> {
    let j = j_matrix(field);
    let outer = |a: usize, b: usize| elementary(field, a, b).mul(&j);
    let mut basis = Vec::with_capacity(9);
    for i in 0..3 {
        basis.push(outer(i, i).add(&outer(3, 3)));
    }
    for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        let sym = outer(a, b).add(&outer(b, a));
        basis.push(if (a, b) == (0, 3) { sym.neg() } else { sym });
    }
    basis
}

fn gl4_basis(field: Field) -> Vec<Matrix> {
    (0..4).flat_map(|i| (0..4).map(move |j| elementary(field, i, j))).collect()
}

/// One of the four coefficient modules together with its fixed ordered basis.
///
/// Coordinates are computed by solving on a fixed set of `dim` matrix entries
/// and then checked against the full matrix, so `coords` doubles as an exact
/// membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieModule {
    kind: ModuleKind,
    field: Field,
    basis: Vec<Matrix>,
    entry_indices: Vec<usize>,
    entry_inverse: Matrix,
}

impl LieModule {
    pub fn new(kind: ModuleKind, field: Field) -> Self {
        let basis = match kind {
            ModuleKind::Sl4 => so31_basis(field).into_iter().chain(v_basis(field)).collect(),
            ModuleKind::So31 => so31_basis(field),
            ModuleKind::V => v_basis(field),
            ModuleKind::Gl4 => gl4_basis(field),
        };
        let dim = basis.len();
        // Rows of this matrix are flattened basis elements; its pivot columns
        // are matrix entries on which the basis is independent.
        let flat = Matrix::from_rows(field, basis.iter().map(|b| b.entries().to_vec()).collect())
            .expect("basis rows have equal length");
        let (_, entry_indices) = flat.rref();
        let mut square = Matrix::zeros(field, dim, dim);
        for (row, &entry) in entry_indices.iter().enumerate() {
            for (k, b) in basis.iter().enumerate() {
                square[(row, k)] = b.entries()[entry].clone();
            }
        }
        let entry_inverse = square.inverse().expect("module basis is linearly independent");
        LieModule { kind, field, basis, entry_indices, entry_inverse }
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// Coordinates of `x` in the module basis.
    pub fn coords(&self, x: &Matrix) -> Result<Vector, LieError> {
        if x.rows() != 4 || x.cols() != 4 {
            return Err(LieError::Shape { expected: "4x4", rows: x.rows(), cols: x.cols() });
        }
        let sampled: Vector = self.entry_indices.iter().map(|&e| x.entries()[e].clone()).collect();
        let c = self.entry_inverse.mul_vec(&sampled)?;
        if &self.element(&c) != x {
            return Err(LieError::NotInModule(self.kind));
        }
        Ok(c)
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        self.coords(x).is_ok()
    }

    /// The matrix `sum_k c_k b_k`.
    pub fn element(&self, c: &[FieldElement]) -> Matrix {
        assert_eq!(c.len(), self.dim(), "coordinate vector length");
        let mut m = Matrix::zeros(self.field, 4, 4);
        for (ck, b) in c.iter().zip(&self.basis) {
            if ck.is_zero() {
                continue;
            }
            for i in 0..4 {
                for j in 0..4 {
                    let e = &b[(i, j)];
                    if !e.is_zero() {
                        m[(i, j)] += &(ck * e);
                    }
                }
            }
        }
        m
    }

    /// Matrix of `X -> g X g^-1` in the module basis, given `g` and its inverse.
    pub fn adjoint_with_inverse(&self, g: &Matrix, g_inv: &Matrix) -> Result<Matrix, LieError> {
        let mut columns = Vec::with_capacity(self.dim());
        for b in &self.basis {
            let image = g.mul(b).mul(g_inv);
            let c = self.coords(&image).map_err(|_| LieError::ModuleNotPreserved(self.kind))?;
            columns.push(c);
        }
        Ok(Matrix::from_columns(self.field, self.dim(), &columns)?)
    }

    /// Matrix of `X -> g X g^-1` in the module basis.
    pub fn adjoint(&self, g: &Matrix) -> Result<Matrix, LieError> {
        let g_inv = g.inverse()?;
        self.adjoint_with_inverse(g, &g_inv)
    }
}

/// `Ad_g(x) = g x g^-1` as a 4x4 matrix.
pub fn conjugate(g: &Matrix, g_inv: &Matrix, x: &Matrix) -> Matrix {
    g.mul(x).mul(g_inv)
}

/// The Killing form of `sl(4)`, `B(X, Y) = 8 tr(XY)`.
pub fn killing(x: &Matrix, y: &Matrix) -> FieldElement {
    let mut t = x.field().zero();
    for i in 0..x.rows() {
        for k in 0..x.cols() {
            let a = &x[(i, k)];
            let b = &y[(k, i)];
            if !a.is_zero() && !b.is_zero() {
                t += &(a * b);
            }
        }
    }
    t * x.field().int(8)
}

/// Splits a traceless matrix into its `so(3,1)` and `v` parts,
/// `(X - J X^t J)/2` and `(X + J X^t J)/2`.
pub fn decompose_sl4(x: &Matrix) -> Result<(Matrix, Matrix), LieError> {
    let field = x.field();
    if x.rows() != 4 || x.cols() != 4 {
        return Err(LieError::Shape { expected: "4x4", rows: x.rows(), cols: x.cols() });
    }
    let tr = x.trace();
    if !tr.is_zero() {
        return Err(LieError::NotTraceless(tr.to_string()));
    }
    let j = j_matrix(field);
    let reflected = j.mul(&x.transpose()).mul(&j);
    let half = field.ratio(1, 2);
    Ok((x.sub(&reflected).scale(&half), x.add(&reflected).scale(&half)))
}

/// Whether `a^t J a = J`.
pub fn is_lorentzian(a: &Matrix) -> bool {
    if a.rows() != 4 || a.cols() != 4 {
        return false;
    }
    let j = j_matrix(a.field());
    a.transpose().mul(&j).mul(a) == j
}

/// Inverse of a matrix in `O(3,1)`, `J a^t J`.
pub fn lorentzian_inverse(a: &Matrix) -> Matrix {
    let j = j_matrix(a.field());
    j.mul(&a.transpose()).mul(&j)
}

/// Diagonal 4x4 matrix with integer entries.
pub fn diag4(field: Field, entries: [i64; 4]) -> Matrix {
    Matrix::diagonal(field, &entries.map(|e| field.int(e)))
}

/// `diag(-1, 3, -1, -1)`, the element of `v` fixed by every isometry fixing the
/// second basis vector; used as the invariant element for longitudes.
pub fn a_lambda(field: Field) -> Matrix {
    diag4(field, [-1, 3, -1, -1])
}

/// `diag(3, -1, -1, -1)`, the companion of [`a_lambda`] for the first basis vector.
pub fn a_mu_right_angle(field: Field) -> Matrix {
    diag4(field, [3, -1, -1, -1])
}

/// `diag(1, 1, -1, -1)`.
pub fn v_zero(field: Field) -> Matrix {
    diag4(field, [1, 1, -1, -1])
}

/// `-I + 4 u u^t J` for a spacelike unit vector `u` (with `u^t J u = 1`); the
/// element of `v` fixed by every isometry fixing `u`.
pub fn reflection_element(u: &[FieldElement]) -> Matrix {
    let field = u[0].field();
    let j = j_matrix(field);
    let col = Matrix::from_columns(field, 4, &[u.to_vec()]).expect("4-vector");
    let outer = col.mul(&col.transpose()).mul(&j);
    outer.scale(&field.int(4)).sub(&Matrix::identity(field, 4))
}
