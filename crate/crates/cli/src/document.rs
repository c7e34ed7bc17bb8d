//! Input file formats.
//!
//! All files are UTF-8 JSON. Field elements are strings in the grammar
//! `term (('+' | '-') term)*` with `term := coeff ('*' symbol)? | symbol`,
//! `symbol := 'i' | 'r' | 'i*r'` where `r` stands for `sqrt d`, and
//! `coeff := int | int '/' posint`. Words are `*`-separated factors
//! `name('^' int)?`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use projrigid::cohomology::Cochain1;
use projrigid::lie::{LieModule, ModuleKind};
use projrigid::{Field, Matrix, Presentation, Representation, Word};

use crate::error::CliError;

/// A group presentation with a representation and cusp data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub field: FieldSpec,
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub representation: RepresentationSpec,
    pub cusps: Vec<CuspSpec>,
    /// Whether the presentation 2-complex is aspherical, so that its `H^2` is
    /// group cohomology.
    pub aspherical: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    /// Square-free `d > 0`; the field is `Q(i, sqrt d)`.
    pub d: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// 2x2 matrices of determinant 1, lifted to `SO(3,1)`.
    Sl2c,
    /// 4x4 matrices preserving `diag(1,1,1,-1)` with determinant 1.
    So31,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationSpec {
    pub form: Form,
    /// One matrix per generator, keyed by generator name.
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuspSpec {
    pub meridian: String,
    pub longitude: String,
}

/// A 1-cochain: one module element per generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    /// One of `v`, `so31`, `sl4`, `gl4`.
    pub module: String,
    pub values: BTreeMap<String, Vec<Vec<String>>>,
}

/// A single 4x4 matrix (an invariant element or an intertwiner).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub matrix: Vec<Vec<String>>,
}

/// A group automorphism given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismFile {
    pub images: BTreeMap<String, String>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

/// A validated input: everything parsed, nothing computed.
#[derive(Debug, Clone)]
pub struct Problem {
    pub document: InputDocument,
    pub field: Field,
    pub presentation: Presentation,
    pub representation: Representation,
    pub aspherical: bool,
    /// Hex SHA-256 of the compact canonical serialization of the document, so
    /// that formatting differences do not change it.
    pub input_sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn parse_matrix(field: Field, rows: &[Vec<String>], what: &str) -> Result<Matrix, CliError> {
    let parsed = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| field.parse(e).map_err(|err| CliError::input(format!("{what}: entry {e:?}: {err}"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(field, parsed).map_err(|e| CliError::input(format!("{what}: {e}")))
}

fn expect_shape(m: &Matrix, n: usize, what: &str) -> Result<(), CliError> {
    if m.rows() == n && m.cols() == n {
        Ok(())
    } else {
        Err(CliError::input(format!("{what}: expected a {n}x{n} matrix, got {}x{}", m.rows(), m.cols())))
    }
}

/// Checks that a map keyed by generator names has exactly one entry per
/// generator, and returns the values in generator order.
fn per_generator<'a, T>(map: &'a BTreeMap<String, T>, generators: &[String], what: &str) -> Result<Vec<&'a T>, CliError> {
    if let Some(extra) = map.keys().find(|k| !generators.contains(k)) {
        return Err(CliError::input(format!("{what}: {extra:?} is not a generator")));
    }
    generators
        .iter()
        .map(|g| map.get(g).ok_or_else(|| CliError::input(format!("{what}: missing generator {g:?}"))))
        .collect()
}

impl Problem {
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CliError> {
        let text = std::str::from_utf8(bytes).map_err(|e| CliError::input(format!("input is not UTF-8: {e}")))?;
        Self::from_document(InputDocument::from_json(text)?)
    }

    pub fn from_document(document: InputDocument) -> Result<Self, CliError> {
        let field = Field::new(document.field.d)?;
        let generators: Vec<&str> = document.generators.iter().map(String::as_str).collect();
        let relators: Vec<&str> = document.relators.iter().map(String::as_str).collect();
        let cusps: Vec<(&str, &str)> =
            document.cusps.iter().map(|c| (c.meridian.as_str(), c.longitude.as_str())).collect();
        let presentation = Presentation::parse(&generators, &relators, &cusps)?;
        let (n, what) = match document.representation.form {
            Form::Sl2c => (2, "sl2c matrix"),
            Form::So31 => (4, "so31 matrix"),
        };
        let matrices = per_generator(&document.representation.matrices, &document.generators, "representation")?
            .into_iter()
            .zip(&document.generators)
            .map(|(rows, g)| {
                let label = format!("{what} for {g}");
                let m = parse_matrix(field, rows, &label)?;
                expect_shape(&m, n, &label)?;
                Ok(m)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let representation = match document.representation.form {
            Form::Sl2c => Representation::from_sl2c(field, matrices)?,
            Form::So31 => Representation::from_so31(field, matrices)?,
        };
        let text = serde_json::to_string(&document).expect("documents serialize");
        Ok(Problem {
            aspherical: document.aspherical,
            input_sha256: sha256_hex(text.as_bytes()),
            document,
            field,
            presentation,
            representation,
        })
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, CliError> {
        Ok(self.presentation.parse_word(text.trim())?)
    }

    pub fn cochain(&self, file: &CochainFile) -> Result<Cochain1, CliError> {
        let kind: ModuleKind = file.module.parse().map_err(CliError::Input)?;
        let module = LieModule::new(kind, self.field);
        let values = per_generator(&file.values, &self.document.generators, "cochain")?
            .into_iter()
            .zip(&self.document.generators)
            .map(|(rows, g)| {
                let label = format!("cochain value on {g}");
                let m = parse_matrix(self.field, rows, &label)?;
                expect_shape(&m, 4, &label)?;
                Ok(m)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(Cochain1::new(&module, values)?)
    }

    pub fn matrix4(&self, file: &MatrixFile, what: &str) -> Result<Matrix, CliError> {
        let m = parse_matrix(self.field, &file.matrix, what)?;
        expect_shape(&m, 4, what)?;
        Ok(m)
    }

    pub fn automorphism(&self, file: &AutomorphismFile) -> Result<Vec<Word>, CliError> {
        per_generator(&file.images, &self.document.generators, "automorphism")?
            .into_iter()
            .map(|w| self.parse_word(w))
            .collect()
    }
}

/// Reads and parses a side file (cochain, matrix or automorphism).
pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: invalid JSON: {e}", path.display())))
}
