//! Root-space structure of `su(3,1)` with respect to a real translation.
//!
//! `su(3,1) = {a : conj(a)^t J = -J a}` is treated as a real 15-dimensional
//! space with basis `so(3,1)` followed by `i * v`. Everything is exact over
//! `Q(i)`.

use crate::field::{Field, FieldElement};
use crate::linalg::{Matrix, Subspace, Vector};

use super::{elementary, killing, LieError, LieModule, ModuleKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Su31Report {
    /// Dimensions of `g_k` for `k = -2, -1, 0, 1, 2`.
    pub dims: [usize; 5],
    /// Whether `g_k` and `g_l` are Killing-orthogonal whenever `k != -l`.
    pub orthogonal: bool,
    /// Dimension of the Killing radical of `g_0 + g_1 + g_2`.
    pub radical_dim: usize,
    /// Whether that radical equals `g_1 + g_2`.
    pub radical_is_parabolic: bool,
}

impl Su31Report {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn passed(&self) -> bool {
        self.dims == [1, 4, 5, 4, 1] && self.orthogonal && self.radical_is_parabolic
    }
}

struct RealForm {
    field: Field,
    so31: LieModule,
    v: LieModule,
    basis: Vec<Matrix>,
}

impl RealForm {
    fn new() -> Self {
        let field = Field::gaussian();
        let so31 = LieModule::new(ModuleKind::So31, field);
        let v = LieModule::new(ModuleKind::V, field);
        let i = field.i();
        let basis = so31.basis().iter().cloned().chain(v.basis().iter().map(|b| b.scale(&i))).collect();
        RealForm { field, so31, v, basis }
    }

    /// Real coordinates of `x = A + iB` with `A` in `so(3,1)` and `B` in `v`.
    fn coords(&self, x: &Matrix) -> Result<Vector, LieError> {
        let re = map_entries(x, FieldElement::re);
        let im = map_entries(x, FieldElement::im);
        let mut c = self.so31.coords(&re)?;
        c.extend(self.v.coords(&im)?);
        Ok(c)
    }

    fn element(&self, c: &[FieldElement]) -> Matrix {
        let mut m = Matrix::zeros(self.field, 4, 4);
        for (ck, b) in c.iter().zip(&self.basis) {
            if !ck.is_zero() {
                m = m.add(&b.scale(ck));
            }
        }
        m
    }
}

fn map_entries(x: &Matrix, f: impl Fn(&FieldElement) -> FieldElement) -> Matrix {
    let rows = x.to_rows().iter().map(|r| r.iter().map(&f).collect()).collect();
    Matrix::from_rows(x.field(), rows).expect("same shape")
}

fn bilinear(gram: &Matrix, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let gb = gram.mul_vec(b).expect("dimensions agree");
    a.iter().zip(&gb).fold(gram.field().zero(), |acc, (x, y)| acc + x * y)
}

/// Computes the eigenspaces `g_k = ker(ad_eta - k)` of `eta = E34 + E43` on
/// `su(3,1)`, checks `g_k` is orthogonal to `g_l` for `k != -l`, and compares
/// the Killing radical of `g_0 + g_1 + g_2` with `g_1 + g_2`.
pub fn su31_root_check() -> Result<Su31Report, LieError> {
    let form = RealForm::new();
    let field = form.field;
    let n = form.basis.len();
    let eta = elementary(field, 2, 3).add(&elementary(field, 3, 2));

    let mut columns = Vec::with_capacity(n);
    for b in &form.basis {
        let bracket = eta.mul(b).sub(&b.mul(&eta));
        columns.push(form.coords(&bracket)?);
    }
    let ad_eta = Matrix::from_columns(field, n, &columns)?;
    let id = Matrix::identity(field, n);
    let spaces: Vec<Subspace> = (-2i64..=2).map(|k| ad_eta.sub(&id.scale(&field.int(k))).kernel()).collect();
    let mut dims = [0; 5];
    for (d, s) in dims.iter_mut().zip(&spaces) {
        *d = s.dim();
    }

    let gram_rows: Vec<Vector> = form.basis.iter().map(|a| form.basis.iter().map(|b| killing(a, b)).collect()).collect();
    let gram = Matrix::from_rows(field, gram_rows)?;
    debug_assert!(gram.is_real());

    let mut orthogonal = true;
    for (ki, gk) in spaces.iter().enumerate() {
        for (li, gl) in spaces.iter().enumerate() {
            let (k, l) = (ki as i64 - 2, li as i64 - 2);
            if k == -l {
                continue;
            }
            for a in gk.basis() {
                for b in gl.basis() {
                    if !bilinear(&gram, a, b).is_zero() {
                        orthogonal = false;
                    }
                }
            }
        }
    }

    let g_plus = spaces[2].sum(&spaces[3]).sum(&spaces[4]);
    let h_plus = spaces[3].sum(&spaces[4]);
    let p = Matrix::from_rows(field, g_plus.basis().to_vec())?;
    let restricted = p.mul(&gram).mul(&p.transpose());
    let radical_coeffs = restricted.kernel();
    let radical_vectors: Vec<Vector> = radical_coeffs
        .basis()
        .iter()
        .map(|c| p.transpose().mul_vec(c))
        .collect::<Result<_, _>>()?;
    let radical = Subspace::span(field, n, radical_vectors);

    // Sanity: the basis really is a basis of su(3,1).
    let j = super::j_matrix(field);
    for b in &form.basis {
        debug_assert_eq!(b.conj_transpose().mul(&j), j.mul(b).neg());
        debug_assert_eq!(form.coords(b).map(|c| form.element(&c)).as_ref(), Ok(b));
    }

    Ok(Su31Report {
        dims,
        orthogonal,
        radical_dim: radical.dim(),
        radical_is_parabolic: radical == h_plus,
    })
}
