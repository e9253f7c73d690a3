//! Exact scalars: rational numbers extended by formal parameters.
//!
//! A `Scalar` is an affine combination `q0 + q1*a_{j1} + ... + qm*a_{jm}`
//! with rational coefficients and formal parameters `a_j`. This tier is
//! closed under addition, subtraction and rational multiples, and the
//! predicate "the difference of two scalars is an integer" is decidable:
//! it holds exactly when the parameter parts agree and the rational parts
//! differ by an integer. Full field arithmetic (products and quotients of
//! scalars) lives in [`crate::ratfun`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{GtError, Result};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Affine exact scalar `q + sum_j c_j * a_j`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub rational: Rat,
    /// Parameter index -> coefficient; zero coefficients are never stored.
    pub params: BTreeMap<u32, Rat>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn from_rat(q: Rat) -> Self {
        Scalar {
            rational: q,
            params: BTreeMap::new(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// The formal parameter `a_j`.
    pub fn param(j: u32) -> Self {
        let mut params = BTreeMap::new();
        params.insert(j, Rat::one());
        Scalar {
            rational: Rat::zero(),
            params,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.params.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.params.is_empty()
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let mut params = self.params.clone();
        for (j, c) in &other.params {
            let entry = params.entry(*j).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                params.remove(j);
            }
        }
        Scalar {
            rational: &self.rational + &other.rational,
            params,
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            rational: -self.rational.clone(),
            params: self.params.iter().map(|(j, c)| (*j, -c.clone())).collect(),
        }
    }

    pub fn add_int(&self, n: i64) -> Scalar {
        let mut s = self.clone();
        s.rational += rat_int(n);
        s
    }

    pub fn scale(&self, q: &Rat) -> Scalar {
        if q.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            rational: &self.rational * q,
            params: self.params.iter().map(|(j, c)| (*j, c * q)).collect(),
        }
    }

    /// Same parameter part, so the difference is a plain rational.
    pub fn same_param_part(&self, other: &Scalar) -> bool {
        self.params == other.params
    }

    /// `Some(n)` iff `self - other` equals the integer `n`.
    pub fn integer_difference(&self, other: &Scalar) -> Option<BigInt> {
        if !self.same_param_part(other) {
            return None;
        }
        let d = &self.rational - &other.rational;
        if d.is_integer() {
            Some(d.to_integer())
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.params.is_empty() && self.rational.is_integer()
    }

    /// Total ordering key used for canonical arrangements. Not a numeric
    /// order; only used to fix deterministic output.
    pub fn sort_key(&self) -> (Vec<(u32, Rat)>, Rat) {
        (
            self.params.iter().map(|(j, c)| (*j, c.clone())).collect(),
            self.rational.clone(),
        )
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.rational.is_zero() || self.params.is_empty() {
            write!(f, "{}", self.rational)?;
            first = false;
        }
        for (j, c) in &self.params {
            if first {
                if c.is_one() {
                    write!(f, "a_{}", j)?;
                } else if *c == -Rat::one() {
                    write!(f, "-a_{}", j)?;
                } else {
                    write!(f, "{}*a_{}", c, j)?;
                }
                first = false;
            } else if c.is_positive() {
                if c.is_one() {
                    write!(f, "+a_{}", j)?;
                } else {
                    write!(f, "+{}*a_{}", c, j)?;
                }
            } else {
                let nc = -c.clone();
                if nc.is_one() {
                    write!(f, "-a_{}", j)?;
                } else {
                    write!(f, "-{}*a_{}", nc, j)?;
                }
            }
        }
        Ok(())
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|_| GtError::Malformed(format!("bad rational `{}`", s)))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| GtError::Malformed(format!("bad rational `{}`", s)))?;
        if d.is_zero() {
            return Err(GtError::Malformed(format!("zero denominator in `{}`", s)));
        }
        Ok(Rat::new(n, d))
    } else {
        let n = BigInt::from_str(s)
            .map_err(|_| GtError::Malformed(format!("bad rational `{}`", s)))?;
        Ok(Rat::from_integer(n))
    }
}

/// Parameter name -> index. `a_j` maps to `j`; a bare letter `a`..`z`
/// maps to 1..26 as a convenience for hand-written inputs.
fn parse_param_name(s: &str) -> Result<u32> {
    if let Some(rest) = s.strip_prefix("a_") {
        rest.parse::<u32>()
            .map_err(|_| GtError::Malformed(format!("bad parameter `{}`", s)))
    } else if s.len() == 1 {
        let c = s.chars().next().unwrap();
        if c.is_ascii_lowercase() {
            Ok((c as u32) - ('a' as u32) + 1)
        } else {
            Err(GtError::Malformed(format!("bad parameter `{}`", s)))
        }
    } else {
        Err(GtError::Malformed(format!("bad parameter `{}`", s)))
    }
}

impl FromStr for Scalar {
    type Err = GtError;

    /// Grammar: terms joined by `+`/`-`; each term is a rational `q`,
    /// `q/p`, a parameter `a_j` (or a single letter), or `q*a_j`.
    fn from_str(s: &str) -> Result<Scalar> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(GtError::Malformed("empty scalar".into()));
        }
        let mut out = Scalar::zero();
        let mut term = String::new();
        let mut terms: Vec<String> = Vec::new();
        for (idx, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && idx != 0 {
                terms.push(term.clone());
                term.clear();
                if ch == '-' {
                    term.push('-');
                }
            } else {
                term.push(ch);
            }
        }
        terms.push(term);
        for t in terms {
            if t.is_empty() || t == "-" {
                return Err(GtError::Malformed(format!("bad scalar `{}`", s)));
            }
            let (sign, body) = if let Some(rest) = t.strip_prefix('-') {
                (-Rat::one(), rest.to_string())
            } else {
                (Rat::one(), t.clone())
            };
            let piece = if let Some((coef, name)) = body.split_once('*') {
                Scalar::param(parse_param_name(name)?).scale(&parse_rat(coef)?)
            } else if body.chars().next().unwrap().is_ascii_digit() {
                Scalar::from_rat(parse_rat(&body)?)
            } else {
                Scalar::param(parse_param_name(&body)?)
            };
            out = out.add(&piece.scale(&sign));
        }
        Ok(out)
    }
}
