//! Twisted cohomology of a presentation 2-complex.
//!
//! For a presentation with generators `x_1..x_g` and relators `w_1..w_r` and a
//! module `m` the cochain complex is
//!
//! ```text
//! m --delta0--> m^g --delta1--> m^r
//! ```
//!
//! with `delta0(a) = ((Ad(x_i) - 1) a)_i` and `delta1` the block matrix whose
//! `(j, i)` block is `Ad` applied to the Fox derivative of `w_j` with respect to
//! `x_i`. Vectors in `m^g` are concatenated module coordinates, generator by
//! generator.

use std::sync::OnceLock;

use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::lie::{conjugate, killing, LieError, LieModule, ModuleKind, Representation};
use crate::linalg::{LinalgError, Matrix, Subspace, Vector};
use crate::presentation::{fox_derivative, Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("element is not invariant under {0}")]
    NotInvariant(String),
    #[error("intertwiner identity fails on generator {generator}")]
    IntertwinerFails { generator: usize },
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("cochain lives in {got}, complex is over {expected}")]
    ModuleMismatch { expected: ModuleKind, got: ModuleKind },
    #[error("no invariant element pairs nontrivially with the restricted class")]
    NoPairingWitness,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A 1-cochain: one module element per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain1 {
    kind: ModuleKind,
    values: Vec<Matrix>,
}

impl Cochain1 {
    /// Checks that every value lies in `module`.
    pub fn new(module: &LieModule, values: Vec<Matrix>) -> Result<Self, CohomologyError> {
        for v in &values {
            module.coords(v)?;
        }
        Ok(Cochain1 { kind: module.kind(), values })
    }

    /// Splits a vector of length `g * dim(m)` into per-generator elements.
    pub fn from_vector(module: &LieModule, v: &[FieldElement]) -> Result<Self, CohomologyError> {
        let n = module.dim();
        if v.len() % n != 0 {
            return Err(CohomologyError::Length { expected: n * (v.len() / n + 1), got: v.len() });
        }
        let values = v.chunks(n).map(|c| module.element(c)).collect();
        Ok(Cochain1 { kind: module.kind(), values })
    }

    pub fn zero(module: &LieModule, generators: usize) -> Self {
        Cochain1 { kind: module.kind(), values: vec![Matrix::zeros(module.field(), 4, 4); generators] }
    }

    pub fn to_vector(&self, module: &LieModule) -> Result<Vector, CohomologyError> {
        let mut out = Vec::with_capacity(self.values.len() * module.dim());
        for v in &self.values {
            out.extend(module.coords(v)?);
        }
        Ok(out)
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn values(&self) -> &[Matrix] {
        &self.values
    }

    pub fn value(&self, generator: usize) -> &Matrix {
        &self.values[generator]
    }

    pub fn add(&self, other: &Cochain1) -> Cochain1 {
        assert_eq!(self.values.len(), other.values.len(), "cochain lengths");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect();
        Cochain1 { kind: self.kind, values }
    }

    pub fn scale(&self, s: &FieldElement) -> Cochain1 {
        Cochain1 { kind: self.kind, values: self.values.iter().map(|a| a.scale(s)).collect() }
    }
}

/// A 2-cochain: one `gl(4)` element per relator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain2 {
    values: Vec<Matrix>,
}

impl Cochain2 {
    pub fn values(&self) -> &[Matrix] {
        &self.values
    }

    pub fn to_vector(&self, module: &LieModule) -> Result<Vector, CohomologyError> {
        let mut out = Vec::with_capacity(self.values.len() * module.dim());
        for v in &self.values {
            out.extend(module.coords(v)?);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H2Report {
    /// `dim m^r - rank(delta1)`.
    pub dim: usize,
    /// Caller's assertion that the presentation complex is aspherical, under
    /// which this is the group cohomology.
    pub valid: bool,
    /// `h0 - h1 + h2 = (1 - g + r) dim(m)`.
    pub euler_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub module: ModuleKind,
    pub fox_rank: usize,
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub h0_dim: usize,
    pub h1_dim: usize,
    pub h2: Option<H2Report>,
    /// Reduced echelon basis of `Z^1`.
    pub z1_basis: Vec<Vector>,
    /// Cocycles whose classes form a basis of `H^1`, each reduced modulo `B^1`.
    pub h1_basis: Vec<Vector>,
    /// Reduced echelon basis of the invariants `H^0`.
    pub h0_basis: Vec<Vector>,
}

/// Evidence for whether a class restricts trivially to a cyclic subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Restriction {
    /// `z(gamma) = (Ad(rho(gamma)) - 1) b`.
    Trivial { witness: Matrix },
    /// An `Ad(rho(gamma))`-invariant `a` with `B(z(gamma), a) != 0`.
    Nontrivial { invariant: Matrix, pairing: FieldElement },
}

impl Restriction {
    pub fn is_nontrivial(&self) -> bool {
        matches!(self, Restriction::Nontrivial { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupProduct {
    /// `gl(4)`-valued cup product evaluated on each relator.
    pub values: Cochain2,
    /// Normal form of `values` modulo the image of `delta1` over `gl(4)`.
    pub class: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KillingCup {
    /// Real-valued cup product `B(z1, z2)` on each relator.
    pub values: Vector,
    /// Normal form modulo coboundaries with trivial coefficients.
    pub class: Vector,
}

/// The cochain complex of a presentation with coefficients in one module.
#[derive(Debug)]
pub struct TwistedComplex<'a> {
    presentation: &'a Presentation,
    rep: &'a Representation,
    module: LieModule,
    delta0: Matrix,
    delta1: Matrix,
    gl4_image: OnceLock<Subspace>,
}

impl<'a> TwistedComplex<'a> {
    /// Builds both coboundary maps after checking the relators.
    pub fn new(presentation: &'a Presentation, rep: &'a Representation, kind: ModuleKind) -> Result<Self, CohomologyError> {
        rep.check_relators(presentation)?;
        let field = rep.field();
        let module = LieModule::new(kind, field);
        let n = module.dim();
        let g = presentation.generator_count();
        let id = Matrix::identity(field, n);

        let mut blocks = Vec::with_capacity(g);
        for i in 0..g {
            blocks.push(module.adjoint_with_inverse(rep.matrix(i), rep.inverse(i))?.sub(&id));
        }
        let delta0 = Matrix::vstack(field, n, &blocks);

        let relators = presentation.relators();
        let mut delta1 = Matrix::zeros(field, relators.len() * n, g * n);
        for (j, w) in relators.iter().enumerate() {
            for i in 0..g {
                let block = rep.eval_ring(&fox_derivative(w, i), &module)?;
                delta1.set_block(j * n, i * n, &block);
            }
        }
        Ok(TwistedComplex { presentation, rep, module, delta0, delta1, gl4_image: OnceLock::new() })
    }

    pub fn module(&self) -> &LieModule {
        &self.module
    }

    pub fn presentation(&self) -> &Presentation {
        self.presentation
    }

    pub fn representation(&self) -> &Representation {
        self.rep
    }

    fn field(&self) -> Field {
        self.rep.field()
    }

    /// `m -> m^g`.
    pub fn delta0(&self) -> &Matrix {
        &self.delta0
    }

    /// The Fox block matrix `m^g -> m^r`.
    pub fn delta1(&self) -> &Matrix {
        &self.delta1
    }

    /// Dimensions, bases and (optionally) `H^2`.
    pub fn report(&self, with_h2: bool, aspherical: bool) -> CohomologyReport {
        let z1 = self.delta1.kernel();
        let b1 = self.delta0.image();
        let h0 = self.delta0.kernel();
        let h1_basis = complement_basis(&z1, &b1);
        let fox_rank = self.delta1.rows() - self.delta1.cokernel_dim();
        let h1_dim = z1.dim() - b1.dim();
        let h2 = with_h2.then(|| {
            let dim = self.delta1.rows() - fox_rank;
            let chi = self.presentation.euler_characteristic() * self.module.dim() as i64;
            H2Report { dim, valid: aspherical, euler_consistent: h0.dim() as i64 - h1_dim as i64 + dim as i64 == chi }
        });
        CohomologyReport {
            module: self.module.kind(),
            fox_rank,
            z1_dim: z1.dim(),
            b1_dim: b1.dim(),
            h0_dim: h0.dim(),
            h1_dim,
            h2,
            z1_basis: z1.basis().to_vec(),
            h1_basis,
            h0_basis: h0.basis().to_vec(),
        }
    }

    fn check_kind(&self, z: &Cochain1) -> Result<(), CohomologyError> {
        if z.kind != self.module.kind() {
            return Err(CohomologyError::ModuleMismatch { expected: self.module.kind(), got: z.kind });
        }
        if z.values.len() != self.presentation.generator_count() {
            return Err(CohomologyError::Length { expected: self.presentation.generator_count(), got: z.values.len() });
        }
        Ok(())
    }

    pub fn is_cocycle(&self, z: &Cochain1) -> Result<bool, CohomologyError> {
        self.check_kind(z)?;
        let v = z.to_vector(&self.module)?;
        Ok(self.delta1.mul_vec(&v)?.iter().all(FieldElement::is_zero))
    }

    fn require_cocycle(&self, z: &Cochain1) -> Result<(), CohomologyError> {
        if self.is_cocycle(z)? {
            Ok(())
        } else {
            Err(CohomologyError::NotCocycle)
        }
    }

    /// The coboundary `x_i -> Ad(x_i) a - a`.
    pub fn coboundary(&self, a: &Matrix) -> Result<Cochain1, CohomologyError> {
        self.module.coords(a)?;
        let values = (0..self.presentation.generator_count())
            .map(|i| conjugate(self.rep.matrix(i), self.rep.inverse(i), a).sub(a))
            .collect();
        Ok(Cochain1 { kind: self.module.kind(), values })
    }

    /// Value of the crossed homomorphism on a single letter `x_g^{+-1}`.
    fn letter_value(&self, z: &Cochain1, g: usize, sign: i64) -> Matrix {
        if sign > 0 {
            z.values[g].clone()
        } else {
            conjugate(self.rep.inverse(g), self.rep.matrix(g), &z.values[g]).neg()
        }
    }

    fn extend_unchecked(&self, z: &Cochain1, w: &Word) -> Matrix {
        let field = self.field();
        let mut value = Matrix::zeros(field, 4, 4);
        let mut p = Matrix::identity(field, 4);
        let mut p_inv = Matrix::identity(field, 4);
        for (g, sign) in w.letters() {
            value = value.add(&conjugate(&p, &p_inv, &self.letter_value(z, g, sign)));
            p = p.mul(self.rep.letter(g, sign));
            p_inv = self.rep.letter(g, -sign).mul(&p_inv);
        }
        value
    }

    /// Value of the cocycle `z` on the group element `w`, using
    /// `z(uv) = z(u) + Ad(rho(u)) z(v)` letter by letter.
    pub fn extend_cocycle(&self, z: &Cochain1, w: &Word) -> Result<Matrix, CohomologyError> {
        self.require_cocycle(z)?;
        Ok(self.extend_unchecked(z, w))
    }

    /// Decides whether `z` restricts to a nontrivial class on `<gamma>` and
    /// returns the evidence.
    ///
    /// Since `B` is nondegenerate and invariant, the image of `Ad - 1` is the
    /// orthogonal complement of the invariants, so a nontrivial restriction
    /// always has a pairing witness among the invariant basis vectors.
    pub fn restriction(&self, z: &Cochain1, gamma: &Word) -> Result<Restriction, CohomologyError> {
        let value = self.extend_cocycle(z, gamma)?;
        let target = self.module.coords(&value)?;
        let ad = self.rep.adjoint_word(gamma, &self.module)?;
        let shifted = ad.sub(&Matrix::identity(self.field(), self.module.dim()));
        if let Some(b) = shifted.solve(&target)? {
            return Ok(Restriction::Trivial { witness: self.module.element(&b) });
        }
        for a in shifted.kernel().basis() {
            let a = self.module.element(a);
            let pairing = killing(&value, &a);
            if !pairing.is_zero() {
                return Ok(Restriction::Nontrivial { invariant: a, pairing });
            }
        }
        Err(CohomologyError::NoPairingWitness)
    }

    pub fn restriction_nontrivial(&self, z: &Cochain1, gamma: &Word) -> Result<bool, CohomologyError> {
        Ok(self.restriction(z, gamma)?.is_nontrivial())
    }

    /// `B(z(gamma), a)` for an element `a` fixed by `Ad(rho(gamma))`.
    pub fn pairing_certificate(&self, z: &Cochain1, gamma: &Word, a: &Matrix) -> Result<FieldElement, CohomologyError> {
        self.module.coords(a)?;
        let (g, g_inv) = self.rep.eval_word_with_inverse(gamma);
        if &conjugate(&g, &g_inv, a) != a {
            return Err(CohomologyError::NotInvariant(self.presentation.render_word(gamma)));
        }
        let value = self.extend_cocycle(z, gamma)?;
        Ok(killing(&value, a))
    }

    /// Evaluates the bar cup product `c1(g) Ad(g) c2(h)` on each relator.
    ///
    /// A relator `s_1...s_m` is sent to the bar chain
    /// `sum_{i=1}^{m-1} [p_i | s_{i+1}] - sum p_i [t^-1 | t]`, where `p_i` is the
    /// prefix of length `i` and the second sum runs over positions where
    /// `s_{i+1} = t^-1`. The correction terms make this a chain map from the
    /// cellular complex, which is what makes the class independent of the
    /// cocycle representatives.
    fn cup_values(&self, z1: &Cochain1, z2: &Cochain1, inverse_correction: bool) -> Vec<Matrix> {
        let field = self.field();
        self.presentation
            .relators()
            .iter()
            .map(|w| {
                let mut acc = Matrix::zeros(field, 4, 4);
                let mut p = Matrix::identity(field, 4);
                let mut p_inv = Matrix::identity(field, 4);
                let mut z1_prefix = Matrix::zeros(field, 4, 4);
                for (g, sign) in w.letters() {
                    let z2_letter = self.letter_value(z2, g, sign);
                    acc = acc.add(&z1_prefix.mul(&conjugate(&p, &p_inv, &z2_letter)));
                    if inverse_correction && sign < 0 {
                        let z1_inv = self.letter_value(z1, g, -1);
                        let moved = conjugate(self.rep.inverse(g), self.rep.matrix(g), &z2.values[g]);
                        acc = acc.sub(&conjugate(&p, &p_inv, &z1_inv.mul(&moved)));
                    }
                    z1_prefix = z1_prefix.add(&conjugate(&p, &p_inv, &self.letter_value(z1, g, sign)));
                    p = p.mul(self.rep.letter(g, sign));
                    p_inv = self.rep.letter(g, -sign).mul(&p_inv);
                }
                acc
            })
            .collect()
    }

    fn gl4_image(&self) -> Result<&Subspace, CohomologyError> {
        if let Some(image) = self.gl4_image.get() {
            return Ok(image);
        }
        let image = if self.module.kind() == ModuleKind::Gl4 {
            self.delta1.image()
        } else {
            TwistedComplex::new(self.presentation, self.rep, ModuleKind::Gl4)?.delta1.image()
        };
        Ok(self.gl4_image.get_or_init(|| image))
    }

    /// `gl(4)`-valued cup product of two cocycles and its class in `H^2`.
    pub fn cup_product(&self, z1: &Cochain1, z2: &Cochain1) -> Result<CupProduct, CohomologyError> {
        self.require_cocycle(z1)?;
        self.require_cocycle(z2)?;
        let values = Cochain2 { values: self.cup_values(z1, z2, true) };
        let gl4 = LieModule::new(ModuleKind::Gl4, self.field());
        let class = self.gl4_image()?.reduce(&values.to_vector(&gl4)?)?;
        Ok(CupProduct { values, class })
    }

    /// Cup product composed with the Killing form, with values in the trivial
    /// module; its class lives in the cokernel of the augmented Fox matrix.
    pub fn killing_cup(&self, z1: &Cochain1, z2: &Cochain1) -> Result<KillingCup, CohomologyError> {
        self.require_cocycle(z1)?;
        self.require_cocycle(z2)?;
        let eight = self.field().int(8);
        let values: Vector = self.cup_values(z1, z2, true).iter().map(|m| m.trace() * eight.clone()).collect();
        let class = self.trivial_image().reduce(&values)?;
        Ok(KillingCup { values, class })
    }

    /// Image of `delta1` with trivial real coefficients (exponent sums).
    fn trivial_image(&self) -> Subspace {
        let field = self.field();
        let g = self.presentation.generator_count();
        let rows = self
            .presentation
            .relators()
            .iter()
            .map(|w| (0..g).map(|i| field.int(fox_derivative(w, i).augmentation())).collect())
            .collect();
        match Matrix::from_rows(field, rows) {
            Ok(m) if m.rows() > 0 => m.image(),
            _ => Subspace::zero(field, self.presentation.relators().len()),
        }
    }

    /// Pulls `z` back along the automorphism `x_i -> images[i]` intertwined by
    /// `a`, i.e. `rho(images[i]) = a rho(x_i) a^-1`. The result is
    /// `x_i -> Ad(a^-1) z(images[i])`.
    pub fn pullback_by_automorphism(&self, z: &Cochain1, images: &[Word], a: &Matrix) -> Result<Cochain1, CohomologyError> {
        let g = self.presentation.generator_count();
        if images.len() != g {
            return Err(CohomologyError::Length { expected: g, got: images.len() });
        }
        self.require_cocycle(z)?;
        let a_inv = a.inverse()?;
        check_intertwiner(self.rep, images, a, &a_inv)?;
        let values = images.iter().map(|w| conjugate(&a_inv, a, &self.extend_unchecked(z, w))).collect();
        let pulled = Cochain1::new(&self.module, values)?;
        self.require_cocycle(&pulled)?;
        Ok(pulled)
    }
}

/// Checks `rho(images[i]) = a rho(x_i) a^-1` for every generator.
pub fn check_intertwiner(rep: &Representation, images: &[Word], a: &Matrix, a_inv: &Matrix) -> Result<(), CohomologyError> {
    for (i, w) in images.iter().enumerate() {
        if rep.eval_word(w) != conjugate(a, a_inv, rep.matrix(i)) {
            return Err(CohomologyError::IntertwinerFails { generator: i });
        }
    }
    Ok(())
}

/// Greedy complement of `sub` in `whole`, scanning the echelon basis of
/// `whole` in order and reducing each chosen vector modulo `sub`.
fn complement_basis(whole: &Subspace, sub: &Subspace) -> Vec<Vector> {
    let mut span = sub.clone();
    let mut out = Vec::new();
    for v in whole.basis() {
        if span.contains(v).expect("same ambient dimension") {
            continue;
        }
        out.push(sub.reduce(v).expect("same ambient dimension"));
        span = span.sum(&Subspace::span(whole.field(), whole.ambient_dim(), vec![v.clone()]));
    }
    out
}
