//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are identified by `u32` ids. Two disjoint ranges are used:
//! formal parameters `a_j` occupy low ids, and tableau coordinates
//! `x_{k,i}` occupy a high range (see [`x_var`], [`param_var`]).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Rat, Scalar};

pub type Var = u32;

const X_BASE: u32 = 1 << 16;

/// Variable id for the coordinate `x_{k,i}`, rows/positions 1-based.
pub fn x_var(k: usize, i: usize) -> Var {
    debug_assert!(k >= 1 && i >= 1 && i <= k);
    X_BASE + (k as u32) * 256 + i as u32
}

/// Variable id for the formal parameter `a_j`.
pub fn param_var(j: u32) -> Var {
    debug_assert!(j < X_BASE);
    j
}

pub fn is_x_var(v: Var) -> bool {
    v >= X_BASE
}

pub fn x_var_index(v: Var) -> (usize, usize) {
    debug_assert!(is_x_var(v));
    let r = v - X_BASE;
    ((r / 256) as usize, (r % 256) as usize)
}

/// Exponent vector, sorted by variable id, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub Vec<(Var, u32)>);

/// Graded lexicographic order: total degree first, ties broken by the
/// first variable (ascending id) with a differing exponent, larger
/// exponent winning. A genuine monomial order, so leading terms of
/// products are products of leading terms.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        match ea.cmp(&eb) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            ord => return ord,
                        }
                    } else if va < vb {
                        // self has positive exponent on the smaller var
                        return Ordering::Greater;
                    } else {
                        return Ordering::Less;
                    }
                }
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
            }
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Mono(vec![(v, 1)])
    }

    /// `v^e`; the empty monomial when `e == 0`.
    pub fn power(v: Var, e: u32) -> Self {
        if e == 0 {
            Mono::one()
        } else {
            Mono(vec![(v, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exp_of(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Mono(out)
    }

    /// `self / other` when every exponent of `other` fits under `self`.
    pub fn try_div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            let mut rem = e;
            while j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                if other.0[j].1 > e {
                    return None;
                }
                rem = e - other.0[j].1;
                j += 1;
            }
            if rem > 0 {
                out.push((v, rem));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Mono(out))
    }

    pub fn without(&self, v: Var) -> Mono {
        Mono(self.0.iter().cloned().filter(|(w, _)| *w != v).collect())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if is_x_var(*v) {
                let (k, i) = x_var_index(*v);
                write!(f, "x[{},{}]", k, i)?;
            } else {
                write!(f, "a_{}", v)?;
            }
            if *e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial: monomial -> nonzero rational coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    pub terms: BTreeMap<Mono, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(q: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Mono::one(), q);
        }
        MPoly { terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rat::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(v), Rat::one());
        MPoly { terms }
    }

    pub fn from_scalar(s: &Scalar) -> Self {
        let mut p = Self::constant(s.rational.clone());
        for (j, c) in &s.params {
            p.add_term(Mono::var(param_var(*j)), c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            Some(Rat::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        debug_assert!(m.0.iter().all(|&(_, e)| e > 0), "zero exponent in monomial");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, q: &Rat) -> MPoly {
        if q.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = Vec::new();
        for m in self.terms.keys() {
            for (v, _) in &m.0 {
                if !vs.contains(v) {
                    vs.push(*v);
                }
            }
        }
        vs.sort_unstable();
        vs
    }

    pub fn max_exp(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp_of(v)).max().unwrap_or(0)
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp_of(v);
            if e == 0 {
                continue;
            }
            let reduced = m.without(v).mul(&Mono::power(v, e - 1));
            out.add_term(reduced, c * Rat::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Substitute polynomials for a subset of variables.
    pub fn substitute(&self, map: &BTreeMap<Var, MPoly>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(c.clone());
            for (v, e) in &m.0 {
                if let Some(val) = map.get(v) {
                    term = term.mul(&val.pow(*e));
                } else {
                    term = term.mul(&MPoly::var(*v).pow(*e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Swap two variables.
    pub fn swap_vars(&self, a: Var, b: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let swapped: Vec<(Var, u32)> = m
                .0
                .iter()
                .map(|&(v, e)| {
                    if v == a {
                        (b, e)
                    } else if v == b {
                        (a, e)
                    } else {
                        (v, e)
                    }
                })
                .collect();
            let mut sorted = swapped;
            sorted.sort_unstable_by_key(|(v, _)| *v);
            out.add_term(Mono(sorted), c.clone());
        }
        out
    }

    pub fn rename_vars(&self, map: &BTreeMap<Var, Var>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut renamed: Vec<(Var, u32)> = m
                .0
                .iter()
                .map(|&(v, e)| (*map.get(&v).unwrap_or(&v), e))
                .collect();
            renamed.sort_unstable_by_key(|(v, _)| *v);
            // merge duplicates if the renaming identifies variables
            let mut merged: Vec<(Var, u32)> = Vec::new();
            for (v, e) in renamed {
                if let Some(last) = merged.last_mut() {
                    if last.0 == v {
                        last.1 += e;
                        continue;
                    }
                }
                merged.push((v, e));
            }
            out.add_term(Mono(merged), c.clone());
        }
        out
    }

    fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `None` when the division leaves a remainder.
    pub fn try_div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&(Rat::one() / c)));
        }
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        let (dm, dc) = {
            let (m, c) = divisor.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.try_div(&dm)?;
            let qc = rc / dc.clone();
            let mut t = MPoly::zero();
            t.add_term(qm, qc);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(divisor));
        }
        Some(quot)
    }

    /// View as univariate in `v`: degree -> coefficient polynomial.
    fn univariate_in(&self, v: Var) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp_of(v);
            out.entry(e)
                .or_insert_with(MPoly::zero)
                .add_term(m.without(v), c.clone());
        }
        out
    }


    /// Make the leading rational coefficient 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, c)) => self.scale(&(Rat::one() / c.clone())),
        }
    }

    pub fn eval_rat(&self, assign: &BTreeMap<Var, Rat>) -> Option<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in &m.0 {
                let val = assign.get(v)?;
                for _ in 0..*e {
                    t *= val;
                }
            }
            acc += t;
        }
        Some(acc)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if first {
                if m.is_one() {
                    write!(f, "{}", c)?;
                } else if c.is_one() {
                    write!(f, "{:?}", m)?;
                } else if *c == -Rat::one() {
                    write!(f, "-{:?}", m)?;
                } else {
                    write!(f, "{}*{:?}", c, m)?;
                }
                first = false;
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if m.is_one() {
                write!(f, "{}{}", sign, mag)?;
            } else if mag.is_one() {
                write!(f, "{}{:?}", sign, m)?;
            } else {
                write!(f, "{}{}*{:?}", sign, mag, m)?;
            }
        }
        Ok(())
    }
}

/// GCD of two polynomials, monic-normalized; primitive PRS recursion.
pub fn poly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    // Pull out a common monomial factor first.
    let mono_a = common_monomial(a);
    let mono_b = common_monomial(b);
    let shared = mono_gcd(&mono_a, &mono_b);
    let a1 = a
        .try_div_exact(&mono_poly(&mono_a))
        .expect("monomial factor divides");
    let b1 = b
        .try_div_exact(&mono_poly(&mono_b))
        .expect("monomial factor divides");
    let core = gcd_main(&a1, &b1);
    core.mul(&mono_poly(&shared)).monic()
}

fn common_monomial(p: &MPoly) -> Mono {
    let mut iter = p.terms.keys();
    let mut acc = iter.next().expect("nonzero").clone();
    for m in iter {
        acc = mono_gcd(&acc, m);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn mono_gcd(a: &Mono, b: &Mono) -> Mono {
    let mut out = Vec::new();
    for &(v, e) in &a.0 {
        let eb = b.exp_of(v);
        let m = e.min(eb);
        if m > 0 {
            out.push((v, m));
        }
    }
    Mono(out)
}

fn mono_poly(m: &Mono) -> MPoly {
    let mut p = MPoly::zero();
    p.add_term(m.clone(), Rat::one());
    p
}

fn gcd_main(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let mut vars = a.vars();
    for v in b.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    let v = *vars.iter().max().unwrap();
    if a.max_exp(v) == 0 || b.max_exp(v) == 0 {
        // One side does not involve the main variable: gcd divides the
        // content of the other side with respect to v.
        let (f, g) = if a.max_exp(v) == 0 { (a, b) } else { (b, a) };
        let cont = content_wrt(g, v);
        return gcd_main(f, &cont);
    }
    let ca = content_wrt(a, v);
    let cb = content_wrt(b, v);
    let pa = a.try_div_exact(&ca).expect("content divides");
    let pb = b.try_div_exact(&cb).expect("content divides");
    let cont_gcd = gcd_main(&ca, &cb);
    let prim_gcd = primitive_prs(&pa, &pb, v);
    cont_gcd.mul(&prim_gcd).monic()
}

fn content_wrt(p: &MPoly, v: Var) -> MPoly {
    let uni = p.univariate_in(v);
    let mut acc = MPoly::zero();
    for c in uni.values() {
        acc = gcd_main(&acc, c);
        if acc.is_constant() && !acc.is_zero() {
            return MPoly::one();
        }
    }
    acc
}

fn primitive_part(p: &MPoly, v: Var) -> MPoly {
    let c = content_wrt(p, v);
    p.try_div_exact(&c).expect("content divides").monic_in(v)
}

impl MPoly {
    /// Normalize so the leading coefficient with respect to `v` is monic
    /// as a polynomial (deterministic representative).
    fn monic_in(&self, v: Var) -> MPoly {
        let uni = self.univariate_in(v);
        if let Some((_, lead)) = uni.iter().next_back() {
            if let Some((_, c)) = lead.leading() {
                return self.scale(&(Rat::one() / c.clone()));
            }
        }
        self.clone()
    }
}

fn primitive_prs(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let mut f = primitive_part(a, v);
    let mut g = primitive_part(b, v);
    if f.max_exp(v) < g.max_exp(v) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.is_zero() {
            return primitive_part(&f, v);
        }
        if g.max_exp(v) == 0 {
            return MPoly::one();
        }
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            return primitive_part(&g, v);
        }
        f = g;
        g = if r.max_exp(v) == 0 {
            return MPoly::one();
        } else {
            primitive_part(&r, v)
        };
    }
}

fn pseudo_rem(f: &MPoly, g: &MPoly, v: Var) -> MPoly {
    let df = f.max_exp(v);
    let dg = g.max_exp(v);
    debug_assert!(df >= dg && dg > 0);
    let g_uni = g.univariate_in(v);
    let lead_g = g_uni.get(&dg).cloned().unwrap();
    let mut r = f.clone();
    while !r.is_zero() && r.max_exp(v) >= dg {
        let dr = r.max_exp(v);
        let r_uni = r.univariate_in(v);
        let lead_r = r_uni.get(&dr).cloned().unwrap();
        // r := lead_g * r - lead_r * v^(dr-dg) * g
        let mut shift = MPoly::zero();
        shift.add_term(Mono::power(v, dr - dg), Rat::one());
        r = r.mul(&lead_g).sub(&lead_r.mul(&shift).mul(g));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn exact_division() {
        let a = v(1).add(&v(2));
        let b = v(1).sub(&v(2));
        let prod = a.mul(&b);
        assert_eq!(prod.try_div_exact(&a).unwrap(), b);
        assert!(a.try_div_exact(&b).is_none());
    }

    #[test]
    fn gcd_of_products() {
        let a = v(1).add(&v(2));
        let b = v(1).sub(&v(2));
        let c = v(2).add(&MPoly::one());
        let p = a.mul(&b);
        let q = a.mul(&c);
        let g = poly_gcd(&p, &q);
        assert_eq!(g, a.monic());

        let g2 = poly_gcd(&a.mul(&a).mul(&b), &a.mul(&b).mul(&b));
        assert_eq!(g2, a.mul(&b).monic());
    }

    #[test]
    fn gcd_with_monomial_content() {
        let x = v(1);
        let y = v(2);
        let p = x.mul(&y).mul(&x.add(&y));
        let q = x.pow(2).mul(&x.add(&y));
        let g = poly_gcd(&p, &q);
        assert_eq!(g, x.mul(&x.add(&y)).monic());
    }

    #[test]
    fn derivative_and_substitute() {
        let x = v(1);
        let p = x.pow(3).add(&x.scale(&Rat::from_integer(2.into())));
        let d = p.derivative(1);
        let mut map = BTreeMap::new();
        map.insert(1u32, MPoly::int(2));
        assert_eq!(d.substitute(&map).constant_value().unwrap(), Rat::from_integer(14.into()));
    }
}
