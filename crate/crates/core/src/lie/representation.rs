//! Representations of finitely presented groups into `SO(3,1)`.

use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::presentation::{GroupRingElement, Presentation, Word};

use super::{is_lorentzian, lift_sl2c, lorentzian_inverse, LieError, LieModule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputForm {
    Sl2c,
    So31,
}

impl InputForm {
    pub fn name(self) -> &'static str {
        match self {
            InputForm::Sl2c => "sl2c",
            InputForm::So31 => "so31",
        }
    }
}

/// Generator images in `SO(3,1)`, with exact inverses cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    field: Field,
    form: InputForm,
    inputs: Vec<Matrix>,
    matrices: Vec<Matrix>,
    inverses: Vec<Matrix>,
}

fn check_field(field: Field, m: &Matrix) -> Result<(), LieError> {
    if m.field() != field {
        return Err(LieError::FieldMismatch { rep: field.d(), input: m.field().d() });
    }
    Ok(())
}

impl Representation {
    /// Lifts `SL(2,C)` generator images through [`lift_sl2c`].
    pub fn from_sl2c(field: Field, inputs: Vec<Matrix>) -> Result<Self, LieError> {
        let mut matrices = Vec::with_capacity(inputs.len());
        for a in &inputs {
            check_field(field, a)?;
            matrices.push(lift_sl2c(a)?);
        }
        Ok(Self::assemble(field, InputForm::Sl2c, inputs, matrices))
    }

    /// Takes `SO(3,1)` generator images directly, checking `A^t J A = J` and
    /// `det A = 1`.
    pub fn from_so31(field: Field, inputs: Vec<Matrix>) -> Result<Self, LieError> {
        for a in &inputs {
            check_field(field, a)?;
            if a.rows() != 4 || a.cols() != 4 {
                return Err(LieError::Shape { expected: "4x4", rows: a.rows(), cols: a.cols() });
            }
            if !is_lorentzian(a) {
                return Err(LieError::NotLorentzian);
            }
            let det = a.det()?;
            if !det.is_one() {
                return Err(LieError::Determinant(det.to_string()));
            }
        }
        let matrices = inputs.clone();
        Ok(Self::assemble(field, InputForm::So31, inputs, matrices))
    }

    fn assemble(field: Field, form: InputForm, inputs: Vec<Matrix>, matrices: Vec<Matrix>) -> Self {
        let inverses = matrices.iter().map(lorentzian_inverse).collect();
        Representation { field, form, inputs, matrices, inverses }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn form(&self) -> InputForm {
        self.form
    }

    pub fn generator_count(&self) -> usize {
        self.matrices.len()
    }

    /// Generator images as supplied (2x2 or 4x4).
    pub fn inputs(&self) -> &[Matrix] {
        &self.inputs
    }

    /// Lifted 4x4 image of generator `g`.
    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    pub fn inverse(&self, g: usize) -> &Matrix {
        &self.inverses[g]
    }

    /// Image of a single letter `g^{+-1}`.
    pub fn letter(&self, g: usize, sign: i64) -> &Matrix {
        if sign > 0 {
            &self.matrices[g]
        } else {
            &self.inverses[g]
        }
    }

    pub fn eval_word(&self, w: &Word) -> Matrix {
        let mut out = Matrix::identity(self.field, 4);
        for (g, sign) in w.letters() {
            out = out.mul(self.letter(g, sign));
        }
        out
    }

    /// `rho(w)` and `rho(w)^-1`.
    pub fn eval_word_with_inverse(&self, w: &Word) -> (Matrix, Matrix) {
        let m = self.eval_word(w);
        let inv = lorentzian_inverse(&m);
        (m, inv)
    }

    /// Matrix of `Ad(rho(w))` on `module`.
    pub fn adjoint_word(&self, w: &Word, module: &LieModule) -> Result<Matrix, LieError> {
        let (g, g_inv) = self.eval_word_with_inverse(w);
        module.adjoint_with_inverse(&g, &g_inv)
    }

    /// `sum c_w Ad(rho(w))` on `module`.
    pub fn eval_ring(&self, r: &GroupRingElement, module: &LieModule) -> Result<Matrix, LieError> {
        let mut out = Matrix::zeros(self.field, module.dim(), module.dim());
        for (w, c) in r.terms() {
            let ad = self.adjoint_word(w, module)?;
            out = out.add(&ad.scale(&self.field.int(c)));
        }
        Ok(out)
    }

    /// Checks that the generator count matches and every relator maps to `I`.
    pub fn check_relators(&self, presentation: &Presentation) -> Result<(), LieError> {
        if presentation.generator_count() != self.generator_count() {
            return Err(LieError::GeneratorCount { have: self.generator_count(), want: presentation.generator_count() });
        }
        for (index, r) in presentation.relators().iter().enumerate() {
            if !self.eval_word(r).is_identity() {
                return Err(LieError::RelatorNotSatisfied { index });
            }
        }
        Ok(())
    }

    /// Elements of `module` fixed by `Ad(rho(w))` for every `w` in `words`.
    pub fn invariant_subspace(&self, words: &[Word], module: &LieModule) -> Result<Subspace, LieError> {
        let mats: Vec<Matrix> = words.iter().map(|w| self.eval_word(w)).collect();
        invariant_subspace_of_matrices(&mats, module)
    }
}

/// Elements of `module` fixed by conjugation by each matrix in `mats`.
pub fn invariant_subspace_of_matrices(mats: &[Matrix], module: &LieModule) -> Result<Subspace, LieError> {
    let field = module.field();
    let n = module.dim();
    let id = Matrix::identity(field, n);
    let mut blocks = Vec::with_capacity(mats.len());
    for g in mats {
        blocks.push(module.adjoint(g)?.sub(&id));
    }
    if blocks.is_empty() {
        return Ok(Subspace::whole(field, n));
    }
    Ok(Matrix::vstack(field, n, &blocks).kernel())
}

/// A module element together with words it is known to be invariant under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantElement {
    element: Matrix,
    words: Vec<Word>,
}

impl InvariantElement {
    /// Checks membership in `module` and `Ad(rho(w)) a = a` for each word.
    pub fn new(element: Matrix, words: Vec<Word>, rep: &Representation, module: &LieModule) -> Result<Self, LieError> {
        module.coords(&element)?;
        for w in &words {
            let (g, g_inv) = rep.eval_word_with_inverse(w);
            if g.mul(&element).mul(&g_inv) != element {
                return Err(LieError::NotInvariant(format!("{w}")));
            }
        }
        Ok(InvariantElement { element, words })
    }

    pub fn element(&self) -> &Matrix {
        &self.element
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }
}
