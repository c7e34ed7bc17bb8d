//! Rigidity verdicts, flexing-slope scans and filling predictions.
//!
//! A cusped hyperbolic 3-manifold with `k` cusps is infinitesimally
//! projectively rigid exactly when `dim H^1(v) = k`; a closed one when
//! `H^1(sl4) = 0`. A slope of a rigid manifold is flexing when some class of
//! `H^1(v)` restricts nontrivially to it.

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::cohomology::{Cochain1, CohomologyError, CohomologyReport, Restriction, TwistedComplex};
use crate::lie::{LieModule, ModuleKind, Representation};
use crate::presentation::{Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RigidityError {
    #[error("meridian and longitude of cusp {index} do not commute under the representation")]
    InconsistentCusp { index: usize },
    #[error("cusp {index} out of range ({count} cusps)")]
    CuspOutOfRange { index: usize, count: usize },
    #[error("slope {p}/{q} is not primitive")]
    NotCoprime { p: i64, q: i64 },
    #[error("flexing slopes are only defined for infinitesimally rigid manifolds")]
    NotRigid,
    #[error("slope {p}/{q} is not a flexing slope of cusp {cusp}")]
    SlopeNotFlexing { cusp: usize, p: i64, q: i64 },
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityVerdict {
    pub cusps: usize,
    pub h1_v: usize,
    pub h1_so31: usize,
    pub h1_sl4: usize,
    /// `dim H^1(su(3,1)) = dim H^1(so(3,1)) + dim H^1(v)`.
    pub h1_su31: usize,
    pub rigid: bool,
    /// `dim H^1(so(3,1)) = 2k`, expected at a complete hyperbolic structure.
    pub weil_garland: bool,
    /// `dim H^1(sl4) = dim H^1(so31) + dim H^1(v)`.
    pub split_consistent: bool,
    /// Cohomology reports for `v`, `so31`, `sl4`, in that order.
    pub reports: Vec<CohomologyReport>,
}

/// Checks that each cusp's meridian and longitude commute under `rep`.
pub fn check_cusps(presentation: &Presentation, rep: &Representation) -> Result<(), RigidityError> {
    for (index, c) in presentation.cusps().iter().enumerate() {
        let m = rep.eval_word(&c.meridian);
        let l = rep.eval_word(&c.longitude);
        if m.mul(&l) != l.mul(&m) {
            return Err(RigidityError::InconsistentCusp { index });
        }
    }
    Ok(())
}

/// Computes `H^1` with coefficients in `v`, `so31` and `sl4` and the verdict.
pub fn rigidity_report(presentation: &Presentation, rep: &Representation, aspherical: bool) -> Result<RigidityVerdict, RigidityError> {
    rep.check_relators(presentation).map_err(CohomologyError::from)?;
    check_cusps(presentation, rep)?;
    let reports = [ModuleKind::V, ModuleKind::So31, ModuleKind::Sl4]
        .par_iter()
        .map(|&kind| Ok(TwistedComplex::new(presentation, rep, kind)?.report(true, aspherical)))
        .collect::<Result<Vec<_>, CohomologyError>>()?;
    let (h1_v, h1_so31, h1_sl4) = (reports[0].h1_dim, reports[1].h1_dim, reports[2].h1_dim);
    let k = presentation.cusps().len();
    let rigid = if k == 0 { h1_sl4 == 0 } else { h1_v == k };
    Ok(RigidityVerdict {
        cusps: k,
        h1_v,
        h1_so31,
        h1_sl4,
        h1_su31: h1_so31 + h1_v,
        rigid,
        weil_garland: h1_so31 == 2 * k,
        split_consistent: h1_sl4 == h1_so31 + h1_v,
        reports,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeResult {
    pub p: i64,
    pub q: i64,
    /// `meridian^p * longitude^q`.
    pub word: Word,
    pub flexing: bool,
    /// One entry per `H^1(v)` basis class.
    pub certificates: Vec<Restriction>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeScan {
    pub cusp: usize,
    pub slopes: Vec<SlopeResult>,
}

impl SlopeScan {
    pub fn find(&self, p: i64, q: i64) -> Option<&SlopeResult> {
        self.slopes.iter().find(|s| s.p == p && s.q == q)
    }
}

/// Restricts each class to `<gamma>`; the slope is flexing when any restriction
/// is nontrivial.
pub fn slope_is_flexing(
    complex: &TwistedComplex<'_>,
    classes: &[Cochain1],
    gamma: &Word,
) -> Result<(bool, Vec<Restriction>), CohomologyError> {
    let certificates = classes.iter().map(|z| complex.restriction(z, gamma)).collect::<Result<Vec<_>, _>>()?;
    Ok((certificates.iter().any(Restriction::is_nontrivial), certificates))
}

/// Tests each slope `(p, q)` of the given cusp for flexing. Requires a rigid
/// verdict.
pub fn flexing_scan(
    presentation: &Presentation,
    rep: &Representation,
    cusp: usize,
    slopes: &[(i64, i64)],
) -> Result<SlopeScan, RigidityError> {
    let count = presentation.cusps().len();
    let c = presentation.cusps().get(cusp).ok_or(RigidityError::CuspOutOfRange { index: cusp, count })?;
    for &(p, q) in slopes {
        if p.gcd(&q) != 1 {
            return Err(RigidityError::NotCoprime { p, q });
        }
    }
    let verdict = rigidity_report(presentation, rep, true)?;
    if !verdict.rigid {
        return Err(RigidityError::NotRigid);
    }
    let complex = TwistedComplex::new(presentation, rep, ModuleKind::V)?;
    let module = LieModule::new(ModuleKind::V, rep.field());
    let classes = verdict.reports[0]
        .h1_basis
        .iter()
        .map(|v| Cochain1::from_vector(&module, v))
        .collect::<Result<Vec<_>, _>>()?;
    let results = slopes
        .par_iter()
        .map(|&(p, q)| {
            let word = c.slope_word(p, q);
            let (flexing, certificates) = slope_is_flexing(&complex, &classes, &word)?;
            Ok(SlopeResult { p, q, word, flexing, certificates })
        })
        .collect::<Result<Vec<_>, CohomologyError>>()?;
    Ok(SlopeScan { cusp, slopes: results })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillingPrediction {
    pub cusp: usize,
    /// The flexing slope `(p, q)`, i.e. `p * meridian + q * longitude`.
    pub slope: (i64, i64),
    /// `(a, b, c)` for the line `a p + b q = c`, where the slope is `-b mu + a lambda`.
    pub line: (i64, i64, i64),
    pub statement: String,
}

/// States the qualitative consequence of a flexing slope: fillings along the
/// line `a p + b q = c` parallel to it are eventually rigid. No threshold is
/// computed.
pub fn filling_prediction(scan: &SlopeScan, slope: (i64, i64), c: i64) -> Result<FillingPrediction, RigidityError> {
    let (p, q) = slope;
    let result = scan.find(p, q).filter(|r| r.flexing);
    if result.is_none() {
        return Err(RigidityError::SlopeNotFlexing { cusp: scan.cusp, p, q });
    }
    let (a, b) = (q, -p);
    let statement = format!(
        "slope {p}/{q} of cusp {cusp} is flexing: the Dehn fillings (p, q) of cusp {cusp} on the line \
         {line} = {c} are infinitesimally projectively rigid once |p| + |q| is large enough \
         (no explicit bound is computed)",
        cusp = scan.cusp,
        line = linear_form(a, b),
    );
    Ok(FillingPrediction { cusp: scan.cusp, slope, line: (a, b, c), statement })
}

/// Renders `a p + b q` as `2p - q`, `-q`, `p + 3q` and so on.
fn linear_form(a: i64, b: i64) -> String {
    let term = |k: i64, var: &str| match k.abs() {
        1 => var.to_string(),
        n => format!("{n}{var}"),
    };
    match (a, b) {
        (0, 0) => "0".to_string(),
        (a, 0) => format!("{}{}", if a < 0 { "-" } else { "" }, term(a, "p")),
        (0, b) => format!("{}{}", if b < 0 { "-" } else { "" }, term(b, "q")),
        (a, b) => format!(
            "{}{} {} {}",
            if a < 0 { "-" } else { "" },
            term(a, "p"),
            if b < 0 { '-' } else { '+' },
            term(b, "q")
        ),
    }
}
