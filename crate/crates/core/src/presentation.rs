//! Finitely presented groups, free reduction and Fox calculus.
//!
//! Words are stored in syllable form `(generator, exponent)`. Text uses
//! factors `ident('^'int)?` joined by `*`, e.g. `y*x^-1*y^-1*x^2*y^-1*x^-1*y`;
//! the identity may be written as `1` or as an empty string.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at byte {position} in {text:?}: {message}")]
    Syntax { text: String, position: usize, message: String },
    #[error("undeclared generator {0:?}")]
    UndeclaredGenerator(String),
    #[error("invalid generator name {0:?}")]
    InvalidGeneratorName(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

/// A freely reduced word in the free group on generators `0..n`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: usize) -> Self {
        Word::power(g, 1)
    }

    pub fn power(g: usize, exponent: i64) -> Self {
        Word::from_syllables([(g, exponent)])
    }

    /// Builds a word and freely reduces it; zero exponents are dropped and
    /// adjacent powers of one generator are merged.
    pub fn from_syllables<I: IntoIterator<Item = (usize, i64)>>(items: I) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for (generator, exponent) in items {
            push_syllable(&mut out, Syllable { generator, exponent });
        }
        Word { syllables: out }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters `x^{+-1}`.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.exponent.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Expands into letters with exponents `+-1`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.syllables
            .iter()
            .flat_map(|s| std::iter::repeat((s.generator, s.exponent.signum())).take(s.exponent.unsigned_abs() as usize))
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable { generator: s.generator, exponent: -s.exponent })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.syllables.clone();
        for s in &other.syllables {
            push_syllable(&mut out, *s);
        }
        Word { syllables: out }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Free reduction of an already stored word; the identity on valid words.
    pub fn reduce(&self) -> Word {
        Word::from_syllables(self.syllables.iter().map(|s| (s.generator, s.exponent)))
    }

    /// Applies a substitution `generator -> image word`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for s in &self.syllables {
            out = out.mul(&images[s.generator].pow(s.exponent));
        }
        out
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.generator).max()
    }
}

fn push_syllable(out: &mut Vec<Syllable>, s: Syllable) {
    if s.exponent == 0 {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.generator == s.generator {
            last.exponent += s.exponent;
            if last.exponent == 0 {
                out.pop();
            }
            return;
        }
    }
    out.push(s);
}

/// Formal integer combination of words, an element of the integral group
/// ring of the free group.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Word)>>(terms: I) -> Self {
        let mut out = GroupRingElement::zero();
        for (c, w) in terms {
            out.add_term(c, w);
        }
        out
    }

    pub fn add_term(&mut self, coefficient: i64, word: Word) {
        if coefficient == 0 {
            return;
        }
        let entry = self.terms.entry(word).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Image under the augmentation map (sum of coefficients).
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }
}

/// Fox derivative of `w` with respect to generator `g`.
///
/// Powers are expanded with `d(x^n)/dx = 1 + x + ... + x^(n-1)` and
/// `d(x^-n)/dx = -(x^-1 + ... + x^-n)`.
pub fn fox_derivative(w: &Word, g: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for s in w.syllables() {
        if s.generator == g {
            if s.exponent > 0 {
                for k in 0..s.exponent {
                    out.add_term(1, prefix.mul(&Word::power(g, k)));
                }
            } else {
                for k in 1..=-s.exponent {
                    out.add_term(-1, prefix.mul(&Word::power(g, -k)));
                }
            }
        }
        prefix = prefix.mul(&Word::power(s.generator, s.exponent));
    }
    out
}

/// One boundary torus: a meridian and a longitude word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cusp {
    pub meridian: Word,
    pub longitude: Word,
}

impl Cusp {
    /// The slope word `meridian^p * longitude^q`.
    pub fn slope_word(&self, p: i64, q: i64) -> Word {
        self.meridian.pow(p).mul(&self.longitude.pow(q))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    cusps: Vec<Cusp>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>, cusps: Vec<Cusp>) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if !is_identifier(g) {
                return Err(PresentationError::InvalidGeneratorName(g.clone()));
            }
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let count = generators.len();
        let check = |w: &Word| match w.max_generator() {
            Some(index) if index >= count => Err(PresentationError::GeneratorOutOfRange { index, count }),
            _ => Ok(()),
        };
        for w in relators.iter().chain(cusps.iter().flat_map(|c| [&c.meridian, &c.longitude])) {
            check(w)?;
        }
        Ok(Presentation { generators, relators, cusps })
    }

    /// Parses generator names and relator/cusp word strings.
    pub fn parse(generators: &[&str], relators: &[&str], cusps: &[(&str, &str)]) -> Result<Self, PresentationError> {
        let names: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let rels = relators.iter().map(|r| parse_word(r, &names)).collect::<Result<Vec<_>, _>>()?;
        let cs = cusps
            .iter()
            .map(|(m, l)| Ok(Cusp { meridian: parse_word(m, &names)?, longitude: parse_word(l, &names)? }))
            .collect::<Result<Vec<_>, PresentationError>>()?;
        Presentation::new(names, rels, cs)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn cusps(&self) -> &[Cusp] {
        &self.cusps
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        parse_word(text, &self.generators)
    }

    pub fn render_word(&self, w: &Word) -> String {
        render_word(w, &self.generators)
    }

    /// Same group with generators reordered: new generator `k` is old
    /// generator `order[k]`.
    pub fn permute_generators(&self, order: &[usize]) -> Presentation {
        let mut old_to_new = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            old_to_new[old] = new;
        }
        let map = |w: &Word| Word::from_syllables(w.syllables().iter().map(|s| (old_to_new[s.generator], s.exponent)));
        Presentation {
            generators: order.iter().map(|&i| self.generators[i].clone()).collect(),
            relators: self.relators.iter().map(map).collect(),
            cusps: self
                .cusps
                .iter()
                .map(|c| Cusp { meridian: map(&c.meridian), longitude: map(&c.longitude) })
                .collect(),
        }
    }

    /// Euler characteristic of the presentation 2-complex.
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.generators.len() as i64 + self.relators.len() as i64
    }
}

pub fn parse_word(text: &str, generators: &[String]) -> Result<Word, PresentationError> {
    let syntax = |position: usize, message: &str| PresentationError::Syntax {
        text: text.to_string(),
        position,
        message: message.to_string(),
    };
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Ok(Word::identity());
    }
    if text.trim() == "1" {
        return Ok(Word::identity());
    }
    let mut syllables = Vec::new();
    loop {
        skip_ws(&mut pos);
        let start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
            pos += 1;
        }
        if start == pos {
            return Err(syntax(pos, "expected generator name"));
        }
        let name = &text[start..pos];
        if !is_identifier(name) {
            return Err(syntax(start, "generator names start with a letter"));
        }
        let g = generators
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| PresentationError::UndeclaredGenerator(name.to_string()))?;
        skip_ws(&mut pos);
        let mut exponent = 1i64;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            skip_ws(&mut pos);
            let estart = pos;
            if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
                pos += 1;
            }
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            exponent = text[estart..pos].parse().map_err(|_| syntax(estart, "expected integer exponent"))?;
            skip_ws(&mut pos);
        }
        syllables.push((g, exponent));
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'*' {
            return Err(syntax(pos, "expected '*'"));
        }
        pos += 1;
    }
    Ok(Word::from_syllables(syllables))
}

pub fn render_word(w: &Word, generators: &[String]) -> String {
    if w.is_identity() {
        return "1".to_string();
    }
    w.syllables()
        .iter()
        .map(|s| {
            let name = &generators[s.generator];
            if s.exponent == 1 {
                name.clone()
            } else {
                format!("{}^{}", name, s.exponent)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0)).map(|i| format!("g{}", i)).collect();
        f.write_str(&render_word(self, &names))
    }
}
