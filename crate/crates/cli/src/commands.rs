//! One function per subcommand. Each validates its preconditions, runs the
//! core computation and returns a [`Report`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use projrigid::cohomology::{Cochain1, CohomologyReport, Restriction, TwistedComplex};
use projrigid::lie::{su31_root_check, LieModule, ModuleKind};
use projrigid::rigidity::{check_cusps, filling_prediction};
use projrigid::{flexing_scan, rigidity_report, Matrix};

use crate::document::{AutomorphismFile, CochainFile, Form, MatrixFile, Problem};
use crate::error::CliError;
use crate::report::{self, matrix_text, vector_text, Report};

fn require_relators(p: &Problem) -> Result<(), CliError> {
    Ok(p.representation.check_relators(&p.presentation)?)
}

fn complex(p: &Problem, kind: ModuleKind) -> Result<TwistedComplex<'_>, CliError> {
    require_relators(p)?;
    Ok(TwistedComplex::new(&p.presentation, &p.representation, kind)?)
}

fn report(p: &Problem, command: &'static str, result: Value, text: String) -> Report {
    Report { command, input_sha256: Some(p.input_sha256.clone()), result, text }
}

/// Parses `"p/q,p/q,..."`.
pub fn parse_slopes(text: &str) -> Result<Vec<(i64, i64)>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (p, q) = s.split_once('/').ok_or_else(|| CliError::input(format!("slope {s:?} is not of the form p/q")))?;
            let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| CliError::input(format!("slope {s:?}: {e}")));
            Ok((parse(p)?, parse(q)?))
        })
        .collect()
}

/// Splits a comma-separated list of words.
pub fn parse_word_list(text: &str) -> Vec<String> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

pub fn check(p: &Problem) -> Result<Report, CliError> {
    require_relators(p)?;
    check_cusps(&p.presentation, &p.representation)?;
    let form = match p.document.representation.form {
        Form::Sl2c => "sl2c",
        Form::So31 => "so31",
    };
    let result = json!({
        "field_d": p.field.d(),
        "form": form,
        "generators": p.presentation.generator_count(),
        "relators": p.presentation.relators().len(),
        "cusps": p.presentation.cusps().len(),
        "relators_satisfied": true,
        "cusps_commute": true,
    });
    let text = format!(
        "field Q(i, sqrt {}), {} generators, {} relators, {} cusps, {form} input\nall relators hold and every cusp is abelian\n",
        p.field.d(),
        p.presentation.generator_count(),
        p.presentation.relators().len(),
        p.presentation.cusps().len()
    );
    Ok(report(p, "check", result, text))
}

fn dims_json(r: &CohomologyReport) -> Value {
    json!({
        "fox_rank": r.fox_rank,
        "z1": r.z1_dim,
        "b1": r.b1_dim,
        "h0": r.h0_dim,
        "h1": r.h1_dim,
        "h2": r.h2.as_ref().map(|h| json!({
            "dim": h.dim,
            "valid": h.valid,
            "euler_consistent": h.euler_consistent,
        })),
    })
}

fn dims_text(r: &CohomologyReport) -> String {
    let mut s = format!(
        "{}: rank(delta1) = {}, dim Z1 = {}, dim B1 = {}, dim H0 = {}, dim H1 = {}",
        r.module, r.fox_rank, r.z1_dim, r.b1_dim, r.h0_dim, r.h1_dim
    );
    if let Some(h) = &r.h2 {
        write!(s, ", dim H2 = {}", h.dim).unwrap();
        if !h.valid {
            s.push_str(" (of the presentation complex)");
        }
        if !h.euler_consistent {
            s.push_str(" [Euler characteristic check FAILED]");
        }
    }
    s
}

pub fn cohomology(p: &Problem, kind: ModuleKind, with_h2: bool) -> Result<Report, CliError> {
    let c = complex(p, kind)?;
    let r = c.report(with_h2, p.aspherical);
    let module = c.module();
    let gens = p.presentation.generators();
    let h1: Vec<Cochain1> =
        r.h1_basis.iter().map(|v| Cochain1::from_vector(module, v)).collect::<Result<_, _>>()?;
    let h0: Vec<Matrix> = r.h0_basis.iter().map(|v| module.element(v)).collect();
    let result = json!({
        "module": kind.name(),
        "module_dim": kind.dim(),
        "dims": dims_json(&r),
        "h1_basis": h1.iter().map(|z| report::cochain(z, gens)).collect::<Vec<_>>(),
        "h0_basis": h0.iter().map(report::matrix).collect::<Vec<_>>(),
    });
    let mut text = dims_text(&r);
    text.push('\n');
    for (k, z) in h1.iter().enumerate() {
        writeln!(text, "H1 class {k}:").unwrap();
        for (g, m) in gens.iter().zip(z.values()) {
            writeln!(text, "  {g} ->").unwrap();
            text.push_str(&matrix_text(m, 4));
        }
    }
    for (k, m) in h0.iter().enumerate() {
        writeln!(text, "H0 element {k}:").unwrap();
        text.push_str(&matrix_text(m, 2));
    }
    Ok(report(p, "cohomology", result, text))
}

pub fn rigidity(p: &Problem) -> Result<Report, CliError> {
    let v = rigidity_report(&p.presentation, &p.representation, p.aspherical)?;
    let verdict = if v.rigid { "rigid" } else { "non-rigid" };
    let modules: BTreeMap<&str, Value> = v.reports.iter().map(|r| (r.module.name(), dims_json(r))).collect();
    let result = json!({
        "cusps": v.cusps,
        "h1": { "v": v.h1_v, "so31": v.h1_so31, "sl4": v.h1_sl4, "su31": v.h1_su31 },
        "rigid": v.rigid,
        "verdict": verdict,
        "weil_garland": v.weil_garland,
        "split_consistent": v.split_consistent,
        "modules": modules,
    });
    let mut text = format!("cusps: {}\n", v.cusps);
    for r in &v.reports {
        writeln!(text, "{}", dims_text(r)).unwrap();
    }
    writeln!(text, "dim H1(su31) = {}", v.h1_su31).unwrap();
    let criterion = if v.cusps == 0 { "dim H1(sl4) = 0".to_string() } else { format!("dim H1(v) = {}", v.cusps) };
    writeln!(text, "verdict: {verdict} (criterion {criterion})").unwrap();
    writeln!(
        text,
        "dim H1(so31) = 2k: {}\ndim H1(sl4) = dim H1(so31) + dim H1(v): {}",
        if v.weil_garland { "yes" } else { "no" },
        if v.split_consistent { "yes" } else { "no" }
    )
    .unwrap();
    Ok(report(p, "rigidity", result, text))
}

fn restriction_json(r: &Restriction) -> Value {
    match r {
        Restriction::Trivial { witness } => json!({ "restriction": "trivial", "witness": report::matrix(witness) }),
        Restriction::Nontrivial { invariant, pairing } => json!({
            "restriction": "nontrivial",
            "invariant": report::matrix(invariant),
            "pairing": report::element(pairing),
        }),
    }
}

pub fn flexing(p: &Problem, cusp: usize, slopes: &[(i64, i64)], line: Option<i64>) -> Result<Report, CliError> {
    require_relators(p)?;
    let scan = flexing_scan(&p.presentation, &p.representation, cusp, slopes)?;
    let c = &p.presentation.cusps()[cusp];
    let mut text = format!(
        "cusp {cusp}: meridian {}, longitude {}\n",
        p.presentation.render_word(&c.meridian),
        p.presentation.render_word(&c.longitude)
    );
    let mut rows = Vec::new();
    for s in &scan.slopes {
        let word = p.presentation.render_word(&s.word);
        writeln!(text, "slope {}/{} ({word}): {}", s.p, s.q, if s.flexing { "flexing" } else { "not flexing" }).unwrap();
        for (k, r) in s.certificates.iter().enumerate() {
            match r {
                Restriction::Trivial { .. } => writeln!(text, "  class {k}: restricts to a coboundary").unwrap(),
                Restriction::Nontrivial { pairing, .. } => {
                    writeln!(text, "  class {k}: nontrivial, pairing with an invariant element = {pairing}").unwrap()
                }
            }
        }
        rows.push(json!({
            "p": s.p,
            "q": s.q,
            "word": word,
            "flexing": s.flexing,
            "certificates": s.certificates.iter().map(restriction_json).collect::<Vec<_>>(),
        }));
    }
    let mut predictions = Vec::new();
    if let Some(constant) = line {
        for s in scan.slopes.iter().filter(|s| s.flexing) {
            let pred = filling_prediction(&scan, (s.p, s.q), constant)?;
            writeln!(text, "prediction: {}", pred.statement).unwrap();
            predictions.push(json!({
                "slope": [pred.slope.0, pred.slope.1],
                "line": [pred.line.0, pred.line.1, pred.line.2],
                "statement": pred.statement,
            }));
        }
    }
    let result = json!({
        "cusp": cusp,
        "meridian": p.presentation.render_word(&c.meridian),
        "longitude": p.presentation.render_word(&c.longitude),
        "slopes": rows,
        "predictions": predictions,
    });
    Ok(report(p, "flexing", result, text))
}

pub fn invariant(p: &Problem, words: &[String], kind: ModuleKind) -> Result<Report, CliError> {
    require_relators(p)?;
    let parsed = words.iter().map(|w| p.parse_word(w)).collect::<Result<Vec<_>, _>>()?;
    let module = LieModule::new(kind, p.field);
    let fixed = p.representation.invariant_subspace(&parsed, &module)?;
    let basis: Vec<Matrix> = fixed.basis().iter().map(|v| module.element(v)).collect();
    let rendered: Vec<String> = parsed.iter().map(|w| p.presentation.render_word(w)).collect();
    let result = json!({
        "module": kind.name(),
        "words": rendered,
        "dim": fixed.dim(),
        "basis": basis.iter().map(report::matrix).collect::<Vec<_>>(),
    });
    let mut text = format!("elements of {kind} fixed by {}: dimension {}\n", rendered.join(", "), fixed.dim());
    for (k, m) in basis.iter().enumerate() {
        writeln!(text, "basis element {k}:").unwrap();
        text.push_str(&matrix_text(m, 2));
    }
    Ok(report(p, "invariant", result, text))
}

pub fn pairing(p: &Problem, z: &CochainFile, word: &str, inv: &MatrixFile) -> Result<Report, CliError> {
    let z = p.cochain(z)?;
    let c = complex(p, z.kind())?;
    let gamma = p.parse_word(word)?;
    let a = p.matrix4(inv, "invariant element")?;
    let value = c.pairing_certificate(&z, &gamma, &a)?;
    let z_gamma = c.extend_cocycle(&z, &gamma)?;
    let rendered = p.presentation.render_word(&gamma);
    let result = json!({
        "module": z.kind().name(),
        "word": rendered,
        "cocycle_value": report::matrix(&z_gamma),
        "pairing": report::element(&value),
    });
    let mut text = format!("z({rendered}) =\n");
    text.push_str(&matrix_text(&z_gamma, 2));
    writeln!(text, "B(z({rendered}), a) = {value}").unwrap();
    Ok(report(p, "pairing", result, text))
}

pub fn cup(p: &Problem, z1: &CochainFile, z2: &CochainFile) -> Result<Report, CliError> {
    let z1 = p.cochain(z1)?;
    let z2 = p.cochain(z2)?;
    if z1.kind() != z2.kind() {
        return Err(CliError::input(format!("cochains live in different modules ({} and {})", z1.kind(), z2.kind())));
    }
    let c = complex(p, z1.kind())?;
    let cup = c.cup_product(&z1, &z2)?;
    let kc = c.killing_cup(&z1, &z2)?;
    let relators: Vec<String> = p.presentation.relators().iter().map(|w| p.presentation.render_word(w)).collect();
    let result = json!({
        "module": z1.kind().name(),
        "relators": relators,
        "gl4_values": cup.values.values().iter().map(report::matrix).collect::<Vec<_>>(),
        "gl4_class": report::vector(&cup.class),
        "gl4_class_is_zero": cup.class.iter().all(|e| e.is_zero()),
        "killing_values": report::vector(&kc.values),
        "killing_class": report::vector(&kc.class),
        "killing_class_is_zero": kc.class.iter().all(|e| e.is_zero()),
    });
    let mut text = String::new();
    for (k, (r, m)) in relators.iter().zip(cup.values.values()).enumerate() {
        writeln!(text, "relator {k} ({r}): cup value").unwrap();
        text.push_str(&matrix_text(m, 2));
        writeln!(text, "  Killing cup value {}", kc.values[k]).unwrap();
    }
    writeln!(text, "Killing cup class {}", vector_text(&kc.class)).unwrap();
    writeln!(
        text,
        "gl4 cup class is {}",
        if cup.class.iter().all(|e| e.is_zero()) { "zero" } else { "nonzero" }
    )
    .unwrap();
    Ok(report(p, "cup", result, text))
}

pub fn auto(p: &Problem, phi: &AutomorphismFile, a: &MatrixFile, z: &CochainFile) -> Result<Report, CliError> {
    let images = p.automorphism(phi)?;
    let a = p.matrix4(a, "intertwiner")?;
    let z = p.cochain(z)?;
    let c = complex(p, z.kind())?;
    let pulled = c.pullback_by_automorphism(&z, &images, &a)?;
    let diff = pulled.add(&z.scale(&-p.field.one())).to_vector(c.module())?;
    let coboundaries = c.delta0().image();
    let same_class = coboundaries.contains(&diff)?;
    let negated = pulled.add(&z).to_vector(c.module())?;
    let opposite_class = coboundaries.contains(&negated)?;
    let gens = p.presentation.generators();
    let result = json!({
        "module": z.kind().name(),
        "intertwiner_holds": true,
        "pullback": report::cochain(&pulled, gens),
        "pullback_equals_class": same_class,
        "pullback_equals_negated_class": opposite_class,
    });
    let mut text = String::from("intertwiner identity holds on every generator\npulled-back cocycle:\n");
    for (g, m) in gens.iter().zip(pulled.values()) {
        writeln!(text, "  {g} ->").unwrap();
        text.push_str(&matrix_text(m, 4));
    }
    let relation = match (same_class, opposite_class) {
        (true, true) => "[phi* z] = [z] = 0",
        (true, false) => "[phi* z] = [z]",
        (false, true) => "[phi* z] = -[z]",
        (false, false) => "[phi* z] is not +-[z]",
    };
    writeln!(text, "{relation}").unwrap();
    Ok(report(p, "auto", result, text))
}

pub fn su31_selftest() -> Result<Report, CliError> {
    let r = su31_root_check()?;
    let result = json!({
        "dims": { "-2": r.dims[0], "-1": r.dims[1], "0": r.dims[2], "1": r.dims[3], "2": r.dims[4] },
        "total_dim": r.total_dim(),
        "orthogonal": r.orthogonal,
        "radical_dim": r.radical_dim,
        "radical_is_parabolic": r.radical_is_parabolic,
        "passed": r.passed(),
    });
    let text = format!(
        "root spaces g_-2..g_2 of su(3,1): dimensions {:?} (total {})\n\
         g_k orthogonal to g_l for k != -l: {}\n\
         Killing radical of g_0 + g_1 + g_2: dimension {}, equal to g_1 + g_2: {}\n\
         self-test {}\n",
        r.dims,
        r.total_dim(),
        r.orthogonal,
        r.radical_dim,
        r.radical_is_parabolic,
        if r.passed() { "passed" } else { "FAILED" }
    );
    Ok(Report { command: "su31-selftest", input_sha256: None, result, text })
}
