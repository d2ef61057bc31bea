//! Laurent polynomials in one variable `t` with coefficients in a signed
//! integer-like scalar.
//!
//! Text form: terms `c*t^e` joined by `+` (or `-`), printed in ascending
//! exponent order. The coefficient is omitted when it is 1, `t^1` prints as
//! `t`, and negative exponents are written `t^-m`. The zero polynomial is `0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::Signed;
use thiserror::Error;

/// Scalar types usable as Laurent polynomial coefficients.
pub trait Coefficient:
    Clone + Ord + fmt::Debug + fmt::Display + FromStr + Signed + AddAssign + SubAssign
{
}

impl<T> Coefficient for T where
    T: Clone + Ord + fmt::Debug + fmt::Display + FromStr + Signed + AddAssign + SubAssign
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid polynomial at byte {pos}: {msg}")]
pub struct PolyParseError {
    pub pos: usize,
    pub msg: String,
}

/// Sparse Laurent polynomial; only nonzero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPolynomial<T> {
    coeffs: BTreeMap<i64, T>,
}

impl<T: Coefficient> LaurentPolynomial<T> {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: T, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// `t^e`.
    pub fn t_pow(e: i64) -> Self {
        Self::monomial(T::one(), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, T)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: T) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(T::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> T {
        self.coeffs.get(&e).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// True when no negative powers of `t` occur.
    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 0)
    }

    /// Value at `t = -1`.
    pub fn eval_at_minus_one(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |mut acc, (e, c)| {
            if e.rem_euclid(2) == 0 {
                acc += c.clone();
            } else {
                acc -= c.clone();
            }
            acc
        })
    }

    /// Value at `t = 1`, the sum of all coefficients.
    pub fn eval_at_one(&self) -> T {
        self.coeffs.values().fold(T::zero(), |mut acc, c| {
            acc += c.clone();
            acc
        })
    }

    /// `p(t^{-1})`.
    pub fn invert_variable(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// `t^shift * p(t)`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }
}

impl<T: Coefficient> Default for LaurentPolynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Coefficient> Add for LaurentPolynomial<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<T: Coefficient> AddAssign for LaurentPolynomial<T> {
    fn add_assign(&mut self, rhs: Self) {
        for (e, c) in rhs.coeffs {
            self.add_term(e, c);
        }
    }
}

impl<T: Coefficient> Sub for LaurentPolynomial<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<T: Coefficient> SubAssign for LaurentPolynomial<T> {
    fn sub_assign(&mut self, rhs: Self) {
        for (e, c) in rhs.coeffs {
            self.add_term(e, -c);
        }
    }
}

impl<T: Coefficient> Neg for LaurentPolynomial<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<T: Coefficient> Mul for LaurentPolynomial<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Coefficient> Mul<T> for LaurentPolynomial<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        Self::from_terms(self.coeffs.into_iter().map(|(e, c)| (e, c * rhs.clone())))
    }
}

impl<T: Coefficient> fmt::Display for LaurentPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{mag}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl<T: Coefficient> fmt::Debug for LaurentPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Coefficient> FromStr for LaurentPolynomial<T> {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolyParser {
            src: s.as_bytes(),
            pos: 0,
        }
        .parse()
    }
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn err<R>(&self, msg: impl Into<String>) -> Result<R, PolyParseError> {
        Err(PolyParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn parse<T: Coefficient>(mut self) -> Result<LaurentPolynomial<T>, PolyParseError> {
        let mut out = LaurentPolynomial::zero();
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut negative = false;
        if self.peek() == Some(b'-') {
            negative = true;
            self.pos += 1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let (e, c) = self.term::<T>()?;
            out.add_term(e, if negative { -c } else { c });
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(ch) => return self.err(format!("unexpected '{}'", ch as char)),
            }
            self.pos += 1;
        }
    }

    fn term<T: Coefficient>(&mut self) -> Result<(i64, T), PolyParseError> {
        let coeff = match self.peek() {
            Some(ch) if ch.is_ascii_digit() => {
                let start = self.pos;
                let text = self.digits().to_owned();
                match text.parse::<T>() {
                    Ok(c) => Some(c),
                    Err(_) => {
                        self.pos = start;
                        return self.err("coefficient out of range");
                    }
                }
            }
            Some(b't') => None,
            _ => return self.err("expected coefficient or 't'"),
        };
        if let Some(c) = &coeff {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    if self.peek() != Some(b't') {
                        return self.err("expected 't' after '*'");
                    }
                }
                Some(b't') => {}
                _ => return Ok((0, c.clone())),
            }
        }
        // at 't'
        self.pos += 1;
        let mut exp = 1i64;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let braced = self.peek() == Some(b'{');
            if braced {
                self.pos += 1;
            }
            let neg = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ => false,
            };
            self.skip_ws();
            let text = self.digits().to_owned();
            if text.is_empty() {
                return self.err("expected exponent");
            }
            exp = match text.parse::<i64>() {
                Ok(v) if neg => -v,
                Ok(v) => v,
                Err(_) => return self.err("exponent out of range"),
            };
            if braced {
                if self.peek() != Some(b'}') {
                    return self.err("expected '}'");
                }
                self.pos += 1;
            }
        }
        Ok((exp, coeff.unwrap_or_else(T::one)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = LaurentPolynomial<i64>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    #[test]
    fn display_is_ascending_with_explicit_negative_exponents() {
        let q = P::from_terms([(1, 1), (0, 2)]);
        assert_eq!(q.to_string(), "2 + t");
        let q = P::from_terms([(-1, 1), (0, 3), (1, 1)]);
        assert_eq!(q.to_string(), "t^-1 + 3 + t");
        assert_eq!(P::from_terms([(2, -3), (0, 1)]).to_string(), "1 - 3*t^2");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(P::monomial(-1, 0).to_string(), "-1");
    }

    #[test]
    fn parse_accepts_the_usual_spellings() {
        assert_eq!(
            p("1 + t^-1 + t^2"),
            P::from_terms([(0, 1), (-1, 1), (2, 1)])
        );
        assert_eq!(p("t + 2"), P::from_terms([(1, 1), (0, 2)]));
        assert_eq!(p("2*t^3+t^{-4}"), P::from_terms([(3, 2), (-4, 1)]));
        assert_eq!(p("2t"), P::from_terms([(1, 2)]));
        assert_eq!(p("t - t"), P::zero());
        assert_eq!(p("0"), P::zero());
        assert_eq!(p("-t"), P::monomial(-1, 1));
        assert!("".parse::<P>().is_err());
        assert!("t^".parse::<P>().is_err());
        assert!("1 + x".parse::<P>().is_err());
        assert!("1 +".parse::<P>().is_err());
    }

    #[test]
    fn evaluation_and_substitution() {
        let q = p("t^-1 + 3 + 2*t");
        assert_eq!(q.eval_at_minus_one(), 0);
        assert_eq!(q.eval_at_one(), 6);
        assert_eq!(q.invert_variable(), p("t + 3 + 2*t^-1"));
        assert_eq!(q.shift(2), p("t + 3*t^2 + 2*t^3"));
        assert_eq!(p("1 + t") * p("1 - t"), p("1 - t^2"));
        assert_eq!(p("1 + t") - p("1"), p("t"));
    }

    #[test]
    fn generic_over_scalar() {
        let q: LaurentPolynomial<i32> = "3 + t^-2".parse().unwrap();
        assert_eq!(q.eval_at_minus_one(), 4);
        let q: LaurentPolynomial<i128> = "t^5".parse().unwrap();
        assert_eq!(q.coeff(5), 1);
    }

    proptest! {
        #[test]
        fn text_round_trip(terms in proptest::collection::vec((-6i64..7, -4i64..5), 0..6)) {
            let q = P::from_terms(terms);
            prop_assert_eq!(q.to_string().parse::<P>().unwrap(), q);
        }
    }
}
