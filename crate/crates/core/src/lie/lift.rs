//! The spin cover `SL(2,C) -> SO(3,1)`.
//!
//! `SL(2,C)` acts on 2x2 Hermitian matrices by `X -> A X A^*`, preserving the
//! determinant, which is a Lorentzian quadratic form. In the ordered basis
//! `(-sigma_y, sigma_x, sigma_z, I)` the determinant is
//! `x4^2 - x1^2 - x2^2 - x3^2`, so the action lands in `SO(3,1)` for
//! `J = diag(1,1,1,-1)`. This ordering and these signs are the ones for which
//! the parabolic generators `[[1,1],[0,1]]` and `[[1,0],[w,1]]` map to the
//! normal forms fixing `(0,0,1,1)` and `(0,0,-1,1)`.

use crate::field::Field;
use crate::linalg::Matrix;

use super::LieError;

/// The ordered Hermitian basis `(-sigma_y, sigma_x, sigma_z, I)`.
///
/// It is orthonormal for `<X, Y> = tr(XY)/2`.
pub fn hermitian_basis(field: Field) -> [Matrix; 4] {
    let z = field.zero();
    let o = field.one();
    let i = field.i();
    let m = |rows: [[crate::field::FieldElement; 2]; 2]| {
        Matrix::from_rows(field, rows.into_iter().map(|r| r.to_vec()).collect()).expect("2x2")
    };
    [
        m([[z.clone(), i.clone()], [-&i, z.clone()]]),
        m([[z.clone(), o.clone()], [o.clone(), z.clone()]]),
        m([[o.clone(), z.clone()], [z.clone(), -&o]]),
        m([[o.clone(), z.clone()], [z, o]]),
    ]
}

/// Image of `A` in `SO(3,1)`: entry `(i, k)` is `tr(A b_k A^* b_i) / 2` for the
/// basis of [`hermitian_basis`].
pub fn lift_sl2c(a: &Matrix) -> Result<Matrix, LieError> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(LieError::Shape { expected: "2x2", rows: a.rows(), cols: a.cols() });
    }
    let field = a.field();
    let det = a.det()?;
    if !det.is_one() {
        return Err(LieError::Determinant(det.to_string()));
    }
    let basis = hermitian_basis(field);
    let a_star = a.conj_transpose();
    let half = field.ratio(1, 2);
    let mut out = Matrix::zeros(field, 4, 4);
    for (k, bk) in basis.iter().enumerate() {
        let image = a.mul(bk).mul(&a_star);
        for (i, bi) in basis.iter().enumerate() {
            let entry = image.mul(bi).trace() * half.clone();
            if !entry.is_real() {
                return Err(LieError::NotReal);
            }
            out[(i, k)] = entry;
        }
    }
    Ok(out)
}
