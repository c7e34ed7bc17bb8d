//! Exact arithmetic in the biquadratic field `Q(i, sqrt(d))`.
//!
//! An element is stored as `a + b*r + c*i + e*i*r` where `r = sqrt(d)` and the
//! four coefficients are arbitrary precision rationals. When `d = 1` the field
//! degenerates to `Q(i)`; the `r` and `i*r` coefficients are then folded into
//! `a` and `c` so that equality stays structural.
//!
//! The string form used in input files is
//!
//! ```text
//! element := term (('+'|'-') term)*
//! term    := coeff ('*' symbol)? | symbol
//! symbol  := 'i' | 'r' | 'i*r'
//! coeff   := int | int '/' posint
//! ```
//!
//! e.g. `"-1/2 + 1/2*i*r"`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("incompatible fields: Q(i, sqrt({left})) vs Q(i, sqrt({right}))")]
    IncompatibleFields { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a square-free positive integer")]
    NotSquareFree(u64),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Handle for the field `Q(i, sqrt(d))`; a factory for elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    d: u64,
}

fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl Field {
    pub fn new(d: u64) -> Result<Self, FieldError> {
        if is_square_free(d) {
            Ok(Field { d })
        } else {
            Err(FieldError::NotSquareFree(d))
        }
    }

    /// `Q(i)`.
    pub fn gaussian() -> Self {
        Field { d: 1 }
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_rational(*self, Rational::zero())
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_rational(*self, Rational::one())
    }

    pub fn int(&self, n: i64) -> FieldElement {
        FieldElement::from_rational(*self, Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(&self, num: i64, den: i64) -> FieldElement {
        FieldElement::from_rational(*self, Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(&self, q: Rational) -> FieldElement {
        FieldElement::from_rational(*self, q)
    }

    pub fn i(&self) -> FieldElement {
        self.element(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    /// `sqrt(d)`.
    pub fn sqrt_d(&self) -> FieldElement {
        self.element(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    /// `a + b*sqrt(d) + c*i + e*i*sqrt(d)`.
    pub fn element(&self, a: Rational, b: Rational, c: Rational, e: Rational) -> FieldElement {
        FieldElement::normalized(self.d, [a, b, c, e])
    }

    pub fn parse(&self, text: &str) -> Result<FieldElement, FieldError> {
        parse_element(*self, text)
    }
}

/// Exact element of `Q(i, sqrt(d))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    d: u64,
    // a, b, c, e in a + b*r + c*i + e*i*r
    coeffs: [Rational; 4],
}

impl FieldElement {
    fn normalized(d: u64, mut coeffs: [Rational; 4]) -> Self {
        if d == 1 {
            let b = std::mem::take(&mut coeffs[1]);
            let e = std::mem::take(&mut coeffs[3]);
            coeffs[0] += b;
            coeffs[2] += e;
        }
        FieldElement { d, coeffs }
    }

    pub fn from_rational(field: Field, q: Rational) -> Self {
        FieldElement {
            d: field.d,
            coeffs: [q, Rational::zero(), Rational::zero(), Rational::zero()],
        }
    }

    pub fn field(&self) -> Field {
        Field { d: self.d }
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// The coefficients `(a, b, c, e)`.
    pub fn coefficients(&self) -> &[Rational; 4] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs[2].is_zero() && self.coeffs[3].is_zero()
    }

    /// Returns the rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(FieldError::IncompatibleFields { left: self.d, right: other.d })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (x, y) in coeffs.iter_mut().zip(&other.coeffs) {
            if !y.is_zero() {
                *x += y;
            }
        }
        FieldElement { d: self.d, coeffs }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if let Some(q) = other.as_rational() {
            return self.scale(q);
        }
        if let Some(q) = self.as_rational() {
            return other.scale(q);
        }
        // Index bits: 1 = r, 2 = i. Products multiply by d when both factors
        // carry r and by -1 when both carry i.
        let d = BigInt::from(self.d);
        let mut out: [Rational; 4] = Default::default();
        for (p, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (q, y) in other.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let mut term = x * y;
                if p & q & 1 != 0 {
                    term *= &d;
                }
                if p & q & 2 != 0 {
                    out[p ^ q] -= term;
                } else {
                    out[p ^ q] += term;
                }
            }
        }
        FieldElement::normalized(self.d, out)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return self.field().zero();
        }
        FieldElement { d: self.d, coeffs: self.coeffs.clone().map(|x| if x.is_zero() { x } else { x * q }) }
    }

    /// Complex conjugation `i -> -i`.
    pub fn conj_i(&self) -> Self {
        let [a, b, c, e] = self.coeffs.clone();
        FieldElement { d: self.d, coeffs: [a, b, -c, -e] }
    }

    /// The Galois conjugation `sqrt(d) -> -sqrt(d)`; the identity when `d = 1`.
    pub fn conj_sqrt(&self) -> Self {
        let [a, b, c, e] = self.coeffs.clone();
        FieldElement { d: self.d, coeffs: [a, -b, c, -e] }
    }

    /// Product of the four Galois conjugates.
    pub fn norm(&self) -> Rational {
        let n = self.mul_unchecked(&self.conj_i());
        let n = n.mul_unchecked(&n.conj_sqrt());
        debug_assert!(n.coeffs[1..].iter().all(Zero::is_zero));
        n.coeffs[0].clone()
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field().rational(q.recip()));
        }
        let ci = self.conj_i();
        let cs = self.conj_sqrt();
        let cb = cs.conj_i();
        let num = ci.mul_unchecked(&cs).mul_unchecked(&cb);
        let norm = self.mul_unchecked(&num);
        let n = norm.coeffs[0].clone();
        debug_assert!(norm.coeffs[1..].iter().all(Zero::is_zero));
        Ok(num.scale(&n.recip()))
    }

    /// Real part `a + b*sqrt(d)` as a real field element.
    pub fn re(&self) -> Self {
        FieldElement {
            d: self.d,
            coeffs: [self.coeffs[0].clone(), self.coeffs[1].clone(), Rational::zero(), Rational::zero()],
        }
    }

    /// Imaginary part `c + e*sqrt(d)` as a real field element.
    pub fn im(&self) -> Self {
        FieldElement {
            d: self.d,
            coeffs: [self.coeffs[2].clone(), self.coeffs[3].clone(), Rational::zero(), Rational::zero()],
        }
    }

    /// Floating point value, for diagnostics and cross-checks only.
    pub fn to_float(&self) -> Complex64 {
        let r = (self.d as f64).sqrt();
        let f = |q: &Rational| q.to_f64().unwrap_or(f64::NAN);
        let [a, b, c, e] = &self.coeffs;
        Complex64::new(f(a) + f(b) * r, f(c) + f(e) * r)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [d={}]", self, self.d)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SYMBOLS: [&str; 4] = ["", "r", "i", "i*r"];
        let mut first = true;
        for (q, sym) in self.coeffs.iter().zip(SYMBOLS) {
            if q.is_zero() {
                continue;
            }
            let negative = q.is_negative();
            let mag = q.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if sym.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                // a bare leading "-r" is outside the grammar
                if first && negative {
                    write!(f, "1*{}", sym)?;
                } else {
                    f.write_str(sym)?;
                }
            } else {
                write!(f, "{}*{}", mag, sym)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> FieldError {
        FieldError::Parse { position: self.pos, message: message.into() }
    }

    fn integer(&mut self) -> Result<BigInt, FieldError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse as integer"))
    }

    /// `symbol := 'i' | 'r' | 'i*r'`, returning the coefficient slot.
    fn symbol(&mut self) -> Result<usize, FieldError> {
        match self.peek() {
            Some(b'r') => {
                self.pos += 1;
                Ok(1)
            }
            Some(b'i') => {
                self.pos += 1;
                let save = self.pos;
                if self.eat(b'*') {
                    if self.eat(b'r') {
                        return Ok(3);
                    }
                    self.pos = save;
                }
                Ok(2)
            }
            _ => Err(self.error("expected 'i', 'r' or 'i*r'")),
        }
    }
}

fn parse_element(field: Field, text: &str) -> Result<FieldElement, FieldError> {
    let mut cur = Cursor { bytes: text.as_bytes(), pos: 0 };
    let mut coeffs: [Rational; 4] = Default::default();
    let mut first = true;
    loop {
        let mut negative = false;
        if cur.eat(b'-') {
            negative = true;
        } else if cur.eat(b'+') {
            if first {
                return Err(cur.error("unexpected '+'"));
            }
        } else if !first {
            return Err(cur.error("expected '+' or '-'"));
        }
        let (value, slot) = match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = cur.integer()?;
                let value = if cur.eat(b'/') {
                    let den = cur.integer()?;
                    if den.is_zero() {
                        return Err(cur.error("zero denominator"));
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                let slot = if cur.eat(b'*') { cur.symbol()? } else { 0 };
                (value, slot)
            }
            Some(b'i') | Some(b'r') => (Rational::one(), cur.symbol()?),
            None => return Err(cur.error("unexpected end of input")),
            Some(_) => return Err(cur.error("unexpected character")),
        };
        coeffs[slot] += if negative { -value } else { value };
        first = false;
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(field.element(
        coeffs[0].clone(),
        coeffs[1].clone(),
        coeffs[2].clone(),
        coeffs[3].clone(),
    ))
}

fn incompatible(a: &FieldElement, b: &FieldElement) -> ! {
    panic!("{}", FieldError::IncompatibleFields { left: a.d, right: b.d })
}

// Operator impls panic on mismatched fields; the `try_*` methods report it.
impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        if self.d != rhs.d {
            incompatible(self, rhs)
        }
        self.add_unchecked(rhs)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        if self.d != rhs.d {
            incompatible(self, rhs)
        }
        let [a, b, c, e] = &self.coeffs;
        let [a2, b2, c2, e2] = &rhs.coeffs;
        FieldElement { d: self.d, coeffs: [a - a2, b - b2, c - c2, e - e2] }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        if self.d != rhs.d {
            incompatible(self, rhs)
        }
        self.mul_unchecked(rhs)
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &'a FieldElement) -> FieldElement {
        match self.try_div(rhs) {
            Ok(x) => x,
            Err(e) => panic!("{}", e),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        if self.d != rhs.d {
            incompatible(self, rhs)
        }
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        if self.d != rhs.d {
            incompatible(self, rhs)
        }
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !y.is_zero() {
                *x -= y;
            }
        }
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { d: self.d, coeffs: self.coeffs.clone().map(|x| -x) }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { d: self.d, coeffs: self.coeffs.map(|x| -x) }
    }
}
