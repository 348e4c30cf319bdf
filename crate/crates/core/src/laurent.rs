//! Exact Laurent polynomials in one variable with exponents in `(1/2)·ℤ`.
//!
//! Exponents are stored doubled, so `t^(3/2)` lives under key `3` and `t^2`
//! under key `4`. The same type carries Alexander polynomials in `t`, Conway
//! polynomials in `z`, Jones polynomials in `t^(1/2)` and Kauffman brackets in
//! `A`; the variable name only matters when rendering or parsing text.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial has a half-integer exponent where integer exponents are required")]
    HalfExponent,
    #[error("polynomial is not symmetric under t -> 1/t up to a unit")]
    NotSymmetric,
    #[error("|p(1)| = {0}, expected 1 for a knot Alexander polynomial")]
    BadAugmentation(BigInt),
    #[error("polynomial in z contains an odd power z^{0}")]
    OddPower(i64),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Exact integer Laurent polynomial. No stored coefficient is ever zero, so
/// derived equality is structural equality of polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · x^(halfexp/2)`.
    pub fn monomial(c: impl Into<BigInt>, halfexp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(halfexp, c.into());
        p
    }

    /// `c · x^exp` with an integer exponent.
    pub fn int_monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        Self::monomial(c, 2 * exp)
    }

    /// Builds from `(integer exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_int_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(2 * e, c.into());
        }
        p
    }

    /// Builds from `(doubled exponent, coefficient)` pairs.
    pub fn from_half_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, halfexp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(halfexp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&halfexp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(doubled exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `x^(halfexp/2)`.
    pub fn coeff_half(&self, halfexp: i64) -> BigInt {
        self.terms.get(&halfexp).cloned().unwrap_or_default()
    }

    /// Coefficient of `x^exp`.
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeff_half(2 * exp)
    }

    pub fn min_half_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_half_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every exponent is an integer.
    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// Largest integer exponent, or an error for zero / half-integer input.
    pub fn degree(&self) -> Result<i64, LaurentError> {
        let top = self.max_half_exp().ok_or(LaurentError::ZeroPolynomial)?;
        if !self.has_integer_exponents() {
            return Err(LaurentError::HalfExponent);
        }
        Ok(top / 2)
    }

    /// Multiplies by `x^(halfexp/2)`.
    pub fn shift(&self, halfexp: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + halfexp, c.clone())).collect() }
    }

    /// Max exponent minus min exponent, counted in halves.
    pub fn span_half(&self) -> Result<i64, LaurentError> {
        match (self.min_half_exp(), self.max_half_exp()) {
            (Some(lo), Some(hi)) => Ok(hi - lo),
            _ => Err(LaurentError::ZeroPolynomial),
        }
    }

    /// Breadth in halves; [`Span::as_integer`] gives the usual integer breadth.
    pub fn span(&self) -> Result<Span, LaurentError> {
        self.span_half().map(Span)
    }

    /// Sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Evaluates at an integer point. Only meaningful for integer exponents and
    /// a nonzero point; negative powers must divide exactly.
    pub fn eval_int(&self, x: i64) -> Option<BigInt> {
        if !self.has_integer_exponents() {
            return None;
        }
        let lo = self.min_half_exp().unwrap_or(0) / 2;
        let shift = (-lo).max(0);
        let mut acc = BigInt::zero();
        for (e, c) in self.terms.iter().rev() {
            let k = e / 2 + shift;
            acc += c * BigInt::from(x).pow(k as u32);
        }
        if shift == 0 {
            return Some(acc);
        }
        let d = BigInt::from(x).pow(shift as u32);
        if d.is_zero() || !(&acc % &d).is_zero() {
            return None;
        }
        Some(acc / d)
    }

    /// Substitutes `x -> x^(-1)`.
    pub fn invert_variable(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Scales every exponent by an integer factor (`x -> x^k`).
    pub fn scale_exponents(&self, k: i64) -> Self {
        let mut p = Self::zero();
        for (e, c) in &self.terms {
            p.add_term(e * k, c.clone());
        }
        p
    }

    /// Divides every doubled exponent by `k`; `None` if some exponent is not a multiple.
    pub fn divide_exponents(&self, k: i64) -> Option<Self> {
        if self.terms.keys().any(|e| e % k != 0) {
            return None;
        }
        Some(Self { terms: self.terms.iter().map(|(e, c)| (e / k, c.clone())).collect() })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor` in the Laurent ring, or `None` if the
    /// division does not come out exactly.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (d_lo, d_hi) = (divisor.min_half_exp()?, divisor.max_half_exp()?);
        let lead = divisor.terms[&d_hi].clone();
        let floor = self.min_half_exp()? - d_lo;
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some(r_hi) = rem.max_half_exp() {
            let qe = r_hi - d_hi;
            if qe < floor {
                return None;
            }
            let (qc, r) = rem.terms[&r_hi].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let step = Self::monomial(qc, qe);
            rem -= &(&step * divisor);
            quotient += &step;
        }
        Some(quotient)
    }

    /// Representative `q = ±t^k·p` with `q(t) = q(1/t)` and `q(1) = +1`.
    pub fn normalize_alexander(&self) -> Result<Self, LaurentError> {
        let (lo, hi) = match (self.min_half_exp(), self.max_half_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(LaurentError::ZeroPolynomial),
        };
        if !self.has_integer_exponents() {
            return Err(LaurentError::HalfExponent);
        }
        if (lo + hi) % 4 != 0 {
            return Err(LaurentError::NotSymmetric);
        }
        let centred = self.shift(-(lo + hi) / 2);
        if centred != centred.invert_variable() {
            return Err(LaurentError::NotSymmetric);
        }
        let aug = centred.eval_at_one();
        if aug.is_one() {
            Ok(centred)
        } else if (-&aug).is_one() {
            Ok(-centred)
        } else {
            Err(LaurentError::BadAugmentation(aug))
        }
    }

    /// Conway polynomial `∇(z)` of a normalized knot Alexander polynomial,
    /// through the basis `q_k(z) ↔ t^k + t^(-k)` with
    /// `q_0 = 2`, `q_1 = z²+2`, `q_(k+1) = (z²+2)·q_k − q_(k−1)`.
    pub fn conway_from_alexander(&self) -> Result<Self, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroPolynomial);
        }
        if !self.has_integer_exponents() {
            return Err(LaurentError::HalfExponent);
        }
        if *self != self.invert_variable() {
            return Err(LaurentError::NotSymmetric);
        }
        let top = self.degree()?;
        let z2_plus_2 = Self::from_int_terms([(2, 1), (0, 2)]);
        let mut conway = Self::constant(self.coeff(0));
        let (mut prev, mut cur) = (Self::constant(2), z2_plus_2.clone());
        for k in 1..=top {
            let a = self.coeff(k);
            if !a.is_zero() {
                conway += &cur.scale(&a);
            }
            let next = &(&z2_plus_2 * &cur) - &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        Ok(conway)
    }

    /// Replaces `z²` by `t − 2 + t⁻¹`. Only even powers of `z` are allowed.
    pub fn substitute_z(&self) -> Result<Self, LaurentError> {
        if let Some((e, _)) = self.terms.iter().find(|(e, _)| *e % 4 != 0) {
            return Err(if e % 2 != 0 { LaurentError::HalfExponent } else { LaurentError::OddPower(e / 2) });
        }
        let z2 = Self::from_int_terms([(1, 1), (0, -2), (-1, 1)]);
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if *e < 0 {
                return Err(LaurentError::OddPower(e / 2));
            }
            out += &z2.pow((*e / 4) as u32).scale(c);
        }
        Ok(out)
    }

    /// Renders with the given variable name, descending exponents, e.g.
    /// `-5*z^4 + 2*z^2 + 1` or `t^(-3/2) - 2*t^(1/2)`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono = render_power(var, *e);
            match (mono, mag.is_one()) {
                (None, _) => out.push_str(&mag.to_string()),
                (Some(m), true) => out.push_str(&m),
                (Some(m), false) => {
                    out.push_str(&mag.to_string());
                    out.push('*');
                    out.push_str(&m);
                }
            }
        }
        out
    }

    /// Parses the [`Self::render`] grammar:
    ///
    /// ```text
    /// poly  := "0" | ["-"] term ((" + " | " - ") term)*
    /// term  := coeff | [coeff "*"] var [ "^" exp ]
    /// exp   := int | "(" ["-"] int ["/2"] ")"
    /// ```
    ///
    /// Whitespace is optional; `^` exponents may also be bare negative
    /// integers and `/2` fractions. Unicode minus signs are accepted.
    pub fn parse(text: &str, var: &str) -> Result<Self, LaurentError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
        if s.is_empty() {
            return Err(LaurentError::Parse("empty input".into()));
        }
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        let mut depth = 0i32;
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > start && bytes[i - 1] != b'^' => {
                    pieces.push(&s[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        pieces.push(&s[start..]);
        let mut p = Self::zero();
        for piece in pieces {
            let (sign, body) = match piece.as_bytes().first() {
                Some(b'-') => (-1, &piece[1..]),
                Some(b'+') => (1, &piece[1..]),
                _ => (1, piece),
            };
            let (c, e) = parse_term(body, var)?;
            p.add_term(e, c * sign);
        }
        Ok(p)
    }
}

/// A span measured in half-units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Span(pub i64);

impl Span {
    /// The span as an integer, when it is one.
    pub fn as_integer(self) -> Option<i64> {
        (self.0 % 2 == 0).then_some(self.0 / 2)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

fn render_power(var: &str, halfexp: i64) -> Option<String> {
    if halfexp == 0 {
        return None;
    }
    if halfexp % 2 != 0 {
        return Some(format!("{var}^({halfexp}/2)"));
    }
    let e = halfexp / 2;
    Some(match e {
        1 => var.to_string(),
        e if e < 0 => format!("{var}^({e})"),
        e => format!("{var}^{e}"),
    })
}

fn parse_term(body: &str, var: &str) -> Result<(BigInt, i64), LaurentError> {
    let bad = || LaurentError::Parse(format!("bad term `{body}`"));
    if body.is_empty() {
        return Err(bad());
    }
    let Some(vpos) = body.find(var) else {
        let c: BigInt = body.parse().map_err(|_| bad())?;
        return Ok((c, 0));
    };
    let coeff_part = &body[..vpos];
    let c = if coeff_part.is_empty() {
        BigInt::one()
    } else {
        let digits = coeff_part.strip_suffix('*').unwrap_or(coeff_part);
        digits.parse().map_err(|_| bad())?
    };
    let rest = &body[vpos + var.len()..];
    let halfexp = if rest.is_empty() {
        2
    } else {
        let exp = rest.strip_prefix('^').ok_or_else(bad)?;
        let exp = exp.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(exp);
        match exp.split_once('/') {
            Some((num, "2")) => num.parse::<i64>().map_err(|_| bad())?,
            Some(_) => return Err(bad()),
            None => 2 * exp.parse::<i64>().map_err(|_| bad())?,
        }
    };
    Ok((c, halfexp))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &'a LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl<'a> SubAssign<&'a LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &'a LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl<'a> Mul<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                *acc.entry(ea + eb).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}
