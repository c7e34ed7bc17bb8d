//! Built-in groups and holonomies used by tests and the command line tool.
//!
//! * figure-eight knot group, `<x, y | x y^-1 x^-1 y x y^-1 x y x^-1 y^-1>` with
//!   the parabolic holonomy over `Q(i, sqrt 3)`;
//! * Whitehead link group over `Q(i)`;
//! * the rank-two abelian group `<m, l | [m, l]>` with the peripheral holonomy
//!   of the figure-eight cusp;
//! * the same abelian group with two parabolics at a prescribed angle.

use crate::field::{Field, FieldElement};
use crate::lie::{reflection_element, Representation};
use crate::linalg::Matrix;
use crate::presentation::Presentation;

/// A presentation together with a representation satisfying it.
#[derive(Debug, Clone)]
pub struct Example {
    pub presentation: Presentation,
    pub representation: Representation,
    pub aspherical: bool,
}

pub const FIGURE_EIGHT_RELATOR: &str = "x*y^-1*x^-1*y*x*y^-1*x*y*x^-1*y^-1";
/// Longitude of the figure-eight knot commuting with `x`.
pub const FIGURE_EIGHT_LONGITUDE: &str = "y*x^-1*y^-1*x^2*y^-1*x^-1*y";
pub const WHITEHEAD_RELATOR: &str = "x*y^-1*x^-1*y*x^-1*y^-1*x*y*x^-1*y*x*y^-1*x*y*x^-1*y^-1";
/// Longitude of the first component, commuting with `x`.
pub const WHITEHEAD_LONGITUDE_X: &str = "y*x^-1*y^-1*x*y^-1*x^-1*y*x";
/// Longitude of the second component, commuting with `y`.
pub const WHITEHEAD_LONGITUDE_Y: &str = "x*y^-1*x^-1*y*x^-1*y^-1*x*y";

fn parse_matrix(field: Field, rows: &[&[&str]]) -> Matrix {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|e| field.parse(e).expect("built-in entry")).collect())
        .collect();
    Matrix::from_rows(field, rows).expect("built-in matrix")
}

pub fn figure_eight_field() -> Field {
    Field::new(3).expect("3 is square-free")
}

/// `x -> [[1,1],[0,1]]`, `y -> [[1,0],[(1 - i sqrt 3)/2, 1]]`.
pub fn figure_eight_sl2c() -> Vec<Matrix> {
    let f = figure_eight_field();
    vec![
        parse_matrix(f, &[&["1", "1"], &["0", "1"]]),
        parse_matrix(f, &[&["1", "0"], &["1/2 - 1/2*i*r", "1"]]),
    ]
}

pub fn figure_eight() -> Example {
    let f = figure_eight_field();
    let presentation =
        Presentation::parse(&["x", "y"], &[FIGURE_EIGHT_RELATOR], &[("x", FIGURE_EIGHT_LONGITUDE)]).expect("built-in");
    let representation = Representation::from_sl2c(f, figure_eight_sl2c()).expect("built-in");
    Example { presentation, representation, aspherical: true }
}

/// `x -> [[1,1],[0,1]]`, `y -> [[1,0],[1 + i, 1]]`.
pub fn whitehead_sl2c() -> Vec<Matrix> {
    let f = Field::gaussian();
    vec![parse_matrix(f, &[&["1", "1"], &["0", "1"]]), parse_matrix(f, &[&["1", "0"], &["1 + i", "1"]])]
}

pub fn whitehead() -> Example {
    let presentation = Presentation::parse(
        &["x", "y"],
        &[WHITEHEAD_RELATOR],
        &[("x", WHITEHEAD_LONGITUDE_X), ("y", WHITEHEAD_LONGITUDE_Y)],
    )
    .expect("built-in");
    let representation = Representation::from_sl2c(Field::gaussian(), whitehead_sl2c()).expect("built-in");
    Example { presentation, representation, aspherical: true }
}

/// Lifted figure-eight meridian image.
pub fn figure_eight_meridian_so31() -> Matrix {
    parse_matrix(
        figure_eight_field(),
        &[&["1", "0", "0", "0"], &["0", "1", "-1", "1"], &["0", "1", "1/2", "1/2"], &["0", "1", "-1/2", "3/2"]],
    )
}

/// Lifted figure-eight longitude image.
pub fn figure_eight_longitude_so31() -> Matrix {
    parse_matrix(
        figure_eight_field(),
        &[
            &["1", "0", "-2*r", "2*r"],
            &["0", "1", "0", "0"],
            &["2*r", "0", "-5", "6"],
            &["2*r", "0", "-6", "7"],
        ],
    )
}

/// `<m, l | m l m^-1 l^-1>` with the figure-eight peripheral holonomy.
pub fn torus() -> Example {
    let presentation = Presentation::parse(&["m", "l"], &["m*l*m^-1*l^-1"], &[("m", "l")]).expect("built-in");
    let representation = Representation::from_so31(
        figure_eight_field(),
        vec![figure_eight_meridian_so31(), figure_eight_longitude_so31()],
    )
    .expect("built-in");
    Example { presentation, representation, aspherical: true }
}

/// Parabolic fixing `(0,0,-1,1)` with real translation vector `(z1, z2)`.
pub fn parabolic_translation(z1: &FieldElement, z2: &FieldElement) -> Matrix {
    let f = z1.field();
    let half_norm = (z1 * z1 + z2 * z2) * f.ratio(1, 2);
    let (zero, one) = (f.zero(), f.one());
    let rows = vec![
        vec![one.clone(), zero.clone(), z1.clone(), z1.clone()],
        vec![zero, one.clone(), z2.clone(), z2.clone()],
        vec![-z1, -z2, &one - &half_norm, -&half_norm],
        vec![z1.clone(), z2.clone(), half_norm.clone(), &one + &half_norm],
    ];
    Matrix::from_rows(f, rows).expect("4x4")
}

/// `<mu, lambda | [mu, lambda]>` with `lambda` translating by `(1, 0)` and `mu`
/// by `(cos phi, -sin phi)`, both fixing the same point at infinity.
pub fn torus_at_angle(cos: &FieldElement, sin: &FieldElement) -> Example {
    let f = cos.field();
    let presentation =
        Presentation::parse(&["mu", "lambda"], &["mu*lambda*mu^-1*lambda^-1"], &[("mu", "lambda")]).expect("built-in");
    let representation = Representation::from_so31(
        f,
        vec![parabolic_translation(cos, &-sin), parabolic_translation(&f.one(), &f.zero())],
    )
    .expect("parabolic translations are in SO(3,1)");
    Example { presentation, representation, aspherical: true }
}

/// The element of `v` fixed by the `mu` of [`torus_at_angle`]:
/// `[[1 - 2 cos 2phi, 2 sin 2phi], [2 sin 2phi, 1 + 2 cos 2phi]] + diag(-1, -1)`.
pub fn a_mu(cos: &FieldElement, sin: &FieldElement) -> Matrix {
    let f = cos.field();
    reflection_element(&[sin.clone(), cos.clone(), f.zero(), f.zero()])
}
