//! Strategies and property checks shared by the randomized suites.
#![allow(dead_code)]

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use projrigid::cohomology::{Cochain1, TwistedComplex};
use projrigid::examples::{self, Example};
use projrigid::lie::{conjugate, is_lorentzian, killing, lift_sl2c, LieModule, ModuleKind};
use projrigid::{Field, FieldElement, Matrix, Presentation, Representation, Word};

pub type Check = Result<(), TestCaseError>;

pub const CASES: u32 = 200;

pub fn fig8_field() -> Field {
    examples::figure_eight_field()
}

pub fn figure_eight() -> &'static Example {
    static EX: OnceLock<Example> = OnceLock::new();
    EX.get_or_init(examples::figure_eight)
}

pub fn whitehead() -> &'static Example {
    static EX: OnceLock<Example> = OnceLock::new();
    EX.get_or_init(examples::whitehead)
}

pub fn torus() -> &'static Example {
    static EX: OnceLock<Example> = OnceLock::new();
    EX.get_or_init(examples::torus)
}

fn complex_v(ex: &'static Example) -> TwistedComplex<'static> {
    TwistedComplex::new(&ex.presentation, &ex.representation, ModuleKind::V).expect("built-in complex")
}

pub fn figure_eight_v() -> &'static TwistedComplex<'static> {
    static C: OnceLock<TwistedComplex<'static>> = OnceLock::new();
    C.get_or_init(|| complex_v(figure_eight()))
}

pub fn whitehead_v() -> &'static TwistedComplex<'static> {
    static C: OnceLock<TwistedComplex<'static>> = OnceLock::new();
    C.get_or_init(|| complex_v(whitehead()))
}

pub fn torus_v() -> &'static TwistedComplex<'static> {
    static C: OnceLock<TwistedComplex<'static>> = OnceLock::new();
    C.get_or_init(|| complex_v(torus()))
}

/// `H^1(v)` classes as cocycles, cached per complex.
fn h1_classes(c: &TwistedComplex<'_>) -> Vec<Cochain1> {
    c.report(false, true).h1_basis.iter().map(|v| Cochain1::from_vector(c.module(), v).unwrap()).collect()
}

pub fn figure_eight_h1() -> &'static [Cochain1] {
    static H: OnceLock<Vec<Cochain1>> = OnceLock::new();
    H.get_or_init(|| h1_classes(figure_eight_v()))
}

pub fn whitehead_h1() -> &'static [Cochain1] {
    static H: OnceLock<Vec<Cochain1>> = OnceLock::new();
    H.get_or_init(|| h1_classes(whitehead_v()))
}

pub fn torus_h1() -> &'static [Cochain1] {
    static H: OnceLock<Vec<Cochain1>> = OnceLock::new();
    H.get_or_init(|| h1_classes(torus_v()))
}

// ---------------------------------------------------------------- strategies

pub fn small_ratio() -> impl Strategy<Value = (i64, i64)> {
    (-5i64..=5, 1i64..=3)
}

pub fn element(f: Field) -> impl Strategy<Value = FieldElement> {
    [small_ratio(), small_ratio(), small_ratio(), small_ratio()].prop_map(move |[a, b, c, e]| {
        f.ratio(a.0, a.1) + f.ratio(b.0, b.1) * f.sqrt_d() + f.ratio(c.0, c.1) * f.i() + f.ratio(e.0, e.1) * f.i() * f.sqrt_d()
    })
}

pub fn rational(f: Field) -> impl Strategy<Value = FieldElement> {
    small_ratio().prop_map(move |(n, d)| f.ratio(n, d))
}

pub fn coords(f: Field, n: usize) -> impl Strategy<Value = Vec<FieldElement>> {
    proptest::collection::vec(rational(f), n)
}

/// Random element of a module, as a 4x4 matrix.
pub fn module_element(kind: ModuleKind, f: Field) -> impl Strategy<Value = Matrix> {
    coords(f, kind.dim()).prop_map(move |c| LieModule::new(kind, f).element(&c))
}

#[derive(Debug, Clone)]
pub enum Elementary {
    Upper(FieldElement),
    Lower(FieldElement),
    Diagonal(FieldElement),
}

impl Elementary {
    fn matrix(&self) -> Matrix {
        let f = match self {
            Elementary::Upper(t) | Elementary::Lower(t) | Elementary::Diagonal(t) => t.field(),
        };
        let (o, z) = (f.one(), f.zero());
        let rows = match self {
            Elementary::Upper(t) => vec![vec![o.clone(), t.clone()], vec![z, o]],
            Elementary::Lower(t) => vec![vec![o.clone(), z], vec![t.clone(), o]],
            Elementary::Diagonal(u) => vec![vec![u.clone(), z.clone()], vec![z, u.inv().expect("nonzero")]],
        };
        Matrix::from_rows(f, rows).expect("2x2")
    }
}

/// Random element of `SL(2, Q(i, sqrt 3))` as a product of elementary factors.
pub fn sl2c(f: Field) -> impl Strategy<Value = Matrix> {
    let factor = prop_oneof![
        element(f).prop_map(Elementary::Upper),
        element(f).prop_map(Elementary::Lower),
        element(f).prop_filter("invertible", |u| !u.is_zero()).prop_map(Elementary::Diagonal),
    ];
    proptest::collection::vec(factor, 1..=3)
        .prop_map(move |fs| fs.iter().fold(Matrix::identity(f, 2), |acc, e| acc.mul(&e.matrix())))
}

/// Random word in `generators` letters with exponents in `-2..=2`.
pub fn word(generators: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec((0..generators, prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)]), 0..=6)
        .prop_map(Word::from_syllables)
}

/// Integer matrix of shape `rows x cols` and rank at most `k`.
pub fn low_rank_integer() -> impl Strategy<Value = (usize, usize, Vec<i64>, Vec<i64>)> {
    (1usize..=6, 1usize..=6, 0usize..=6).prop_flat_map(|(m, n, k)| {
        (
            Just(m),
            Just(n),
            proptest::collection::vec(-3i64..=3, m * k),
            proptest::collection::vec(-3i64..=3, k * n),
        )
    })
}

pub fn low_rank_field(f: Field) -> impl Strategy<Value = (Matrix, Matrix)> {
    (1usize..=5, 1usize..=5, 0usize..=5).prop_flat_map(move |(m, n, k)| {
        (proptest::collection::vec(element(f), m * k), proptest::collection::vec(element(f), k * n)).prop_map(
            move |(a, b)| {
                let build = |r: usize, c: usize, e: Vec<FieldElement>| {
                    if c == 0 {
                        return Matrix::zeros(f, r, 0);
                    }
                    Matrix::from_rows(f, e.chunks(c).map(<[FieldElement]>::to_vec).collect()).expect("shape")
                };
                let left = if k == 0 { Matrix::zeros(f, m, 0) } else { build(m, k, a) };
                let right = if k == 0 { Matrix::zeros(f, 0, n) } else { build(k, n, b) };
                (left, right)
            },
        )
    })
}

// --------------------------------------------------------------- properties

pub fn field_axioms(a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Check {
    let f = a.field();
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!((a + b) + c, a + (b + c));
    prop_assert_eq!((a * b) * c, a * (b * c));
    prop_assert_eq!(a * (b + c), a * b + a * c);
    prop_assert_eq!(a + &f.zero(), a.clone());
    prop_assert_eq!(a * &f.one(), a.clone());
    prop_assert!((a - a).is_zero());
    prop_assert_eq!(-(-a), a.clone());
    if !a.is_zero() {
        prop_assert!((a * &a.inv().unwrap()).is_one());
        prop_assert_eq!(&(b / a) * a, b.clone());
    }
    // Both Galois conjugations are field automorphisms.
    prop_assert_eq!((a * b).conj_i(), a.conj_i() * b.conj_i());
    prop_assert_eq!((a * b).conj_sqrt(), a.conj_sqrt() * b.conj_sqrt());
    prop_assert_eq!(f.parse(&a.to_string()).unwrap(), a.clone());
    // Float embedding is a ring homomorphism.
    let (fa, fb) = (a.to_float(), b.to_float());
    prop_assert!(((a * b).to_float() - fa * fb).norm() < 1e-9);
    prop_assert!(((a + b).to_float() - (fa + fb)).norm() < 1e-9);
    Ok(())
}

pub fn lift_homomorphism(a: &Matrix, b: &Matrix) -> Check {
    let (la, lb) = (lift_sl2c(a).unwrap(), lift_sl2c(b).unwrap());
    prop_assert!(is_lorentzian(&la));
    prop_assert!(la.det().unwrap().is_one());
    prop_assert_eq!(lift_sl2c(&a.mul(b)).unwrap(), la.mul(&lb));
    prop_assert_eq!(lift_sl2c(&a.inverse().unwrap()).unwrap(), la.inverse().unwrap());
    prop_assert_eq!(lift_sl2c(&a.neg()).unwrap(), la);
    Ok(())
}

pub fn killing_ad_invariance(g2: &Matrix, x: &Matrix, y: &Matrix) -> Check {
    let g = lift_sl2c(g2).unwrap();
    let g_inv = g.inverse().unwrap();
    let (gx, gy) = (conjugate(&g, &g_inv, x), conjugate(&g, &g_inv, y));
    prop_assert_eq!(killing(&gx, &gy), killing(x, y));
    prop_assert_eq!(killing(x, y), killing(y, x));
    Ok(())
}

/// `B(X, Y) = tr(ad X ad Y)` computed from the structure constants of `sl(4)`.
pub fn killing_matches_trace_of_ad(x: &Matrix, y: &Matrix) -> Check {
    let f = x.field();
    let sl4 = LieModule::new(ModuleKind::Sl4, f);
    let ad = |z: &Matrix| {
        let cols: Vec<_> =
            sl4.basis().iter().map(|b| sl4.coords(&z.mul(b).sub(&b.mul(z))).unwrap()).collect();
        Matrix::from_columns(f, 15, &cols).unwrap()
    };
    prop_assert_eq!(ad(x).mul(&ad(y)).trace(), killing(x, y));
    Ok(())
}

/// Builds a presentation of the same group whose relators are the originals
/// followed by products and conjugates of them.
pub fn with_extra_relators(p: &Presentation, extras: &[(usize, usize, Word)]) -> Presentation {
    let rels = p.relators();
    let mut relators = rels.to_vec();
    for (i, j, w) in extras {
        let (r1, r2) = (&rels[i % rels.len()], &rels[j % rels.len()]);
        relators.push(w.mul(&r1.mul(&r2.inverse())).mul(&w.inverse()));
    }
    Presentation::new(p.generators().to_vec(), relators, p.cusps().to_vec()).unwrap()
}

pub fn delta_squared_vanishes(ex: &Example, kind: ModuleKind, extras: &[(usize, usize, Word)]) -> Check {
    let p = with_extra_relators(&ex.presentation, extras);
    let c = TwistedComplex::new(&p, &ex.representation, kind).unwrap();
    prop_assert!(c.delta1().mul(c.delta0()).is_zero());
    Ok(())
}

/// `sum_j Ad(d w / d x_j) (Ad x_j - 1) = Ad w - 1` for any word.
pub fn fox_fundamental_identity(rep: &Representation, w: &Word, kind: ModuleKind) -> Check {
    let module = LieModule::new(kind, rep.field());
    let n = module.dim();
    let id = Matrix::identity(rep.field(), n);
    let mut lhs = Matrix::zeros(rep.field(), n, n);
    for j in 0..rep.generator_count() {
        let d = rep.eval_ring(&projrigid::fox_derivative(w, j), &module).unwrap();
        let x = module.adjoint(rep.matrix(j)).unwrap();
        lhs = lhs.add(&d.mul(&x.sub(&id)));
    }
    prop_assert_eq!(lhs, rep.adjoint_word(w, &module).unwrap().sub(&id));
    Ok(())
}

fn peripheral_invariant(ex: &Example) -> Matrix {
    let module = LieModule::new(ModuleKind::V, ex.representation.field());
    let cusp = &ex.presentation.cusps()[0];
    let fixed =
        ex.representation.invariant_subspace(&[cusp.meridian.clone(), cusp.longitude.clone()], &module).unwrap();
    module.element(&fixed.basis()[0])
}

/// Shifting a cocycle by a coboundary does not change its pairing with a
/// peripheral invariant, and coboundaries pair to zero.
pub fn pairing_kills_coboundaries(
    ex: &Example,
    c: &TwistedComplex<'_>,
    classes: &[Cochain1],
    weights: &[FieldElement],
    a: &Matrix,
    slope: (i64, i64),
) -> Check {
    let inv = peripheral_invariant(ex);
    let gamma = ex.presentation.cusps()[0].slope_word(slope.0, slope.1);
    let delta = c.coboundary(a).unwrap();
    prop_assert!(c.pairing_certificate(&delta, &gamma, &inv).unwrap().is_zero());
    let z = combination(c, classes, weights);
    let before = c.pairing_certificate(&z, &gamma, &inv).unwrap();
    let after = c.pairing_certificate(&z.add(&delta), &gamma, &inv).unwrap();
    prop_assert_eq!(before, after);
    Ok(())
}

pub fn combination(c: &TwistedComplex<'_>, classes: &[Cochain1], weights: &[FieldElement]) -> Cochain1 {
    classes
        .iter()
        .zip(weights)
        .fold(Cochain1::zero(c.module(), c.presentation().generator_count()), |acc, (z, w)| acc.add(&z.scale(w)))
}

pub fn cup_shift_invariance(
    c: &TwistedComplex<'_>,
    classes: &[Cochain1],
    w1: &[FieldElement],
    w2: &[FieldElement],
    a: &Matrix,
    b: &Matrix,
) -> Check {
    let z1 = combination(c, classes, w1);
    let z2 = combination(c, classes, w2);
    let s1 = z1.add(&c.coboundary(a).unwrap());
    let s2 = z2.add(&c.coboundary(b).unwrap());
    prop_assert_eq!(c.cup_product(&z1, &z2).unwrap().class, c.cup_product(&s1, &s2).unwrap().class);
    prop_assert_eq!(c.killing_cup(&z1, &z2).unwrap().class, c.killing_cup(&s1, &s2).unwrap().class);
    Ok(())
}

fn float_rank(rows: usize, cols: usize, entries: Vec<Complex64>) -> usize {
    if rows == 0 || cols == 0 {
        return 0;
    }
    let m = DMatrix::from_row_slice(rows, cols, &entries);
    let sv = m.svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > 1e-9 * max.max(1.0)).count()
}

fn exact_vs_float(m: &Matrix) -> Check {
    let entries: Vec<Complex64> = m.to_float().into_iter().flatten().collect();
    prop_assert_eq!(m.rank(), float_rank(m.rows(), m.cols(), entries));
    prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
    prop_assert_eq!(m.image().dim(), m.rank());
    Ok(())
}

pub fn rank_matches_float_integer(rows: usize, cols: usize, left: &[i64], right: &[i64]) -> Check {
    let f = Field::new(1).unwrap();
    let k = left.len() / rows;
    let m = if k == 0 {
        Matrix::zeros(f, rows, cols)
    } else {
        let l: Vec<Vec<FieldElement>> = left.chunks(k).map(|r| r.iter().map(|&e| f.int(e)).collect()).collect();
        let r: Vec<Vec<FieldElement>> = right.chunks(cols).map(|r| r.iter().map(|&e| f.int(e)).collect()).collect();
        Matrix::from_rows(f, l).unwrap().mul(&Matrix::from_rows(f, r).unwrap())
    };
    exact_vs_float(&m)
}

pub fn rank_matches_float_field(left: &Matrix, right: &Matrix) -> Check {
    let m = if left.cols() == 0 { Matrix::zeros(left.field(), left.rows(), right.cols()) } else { left.mul(right) };
    exact_vs_float(&m)
}
