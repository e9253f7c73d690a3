//! The exact symbolic layer behind the module action: coefficient
//! functions for raising/lowering moves, Zhelobenko generators, divided
//! differences, and the evaluated differential operators indexed by
//! Bruhat pairs.
//!
//! For a pair `tau <= sigma` the operator is a constant-coefficient
//! differential operator of degree `len(sigma) - len(tau)` obtained by
//! summing, over all saturated Bruhat chains from `tau` to `sigma` by
//! right multiplications `u -> u·t_{(a b)}`, the products of directional
//! derivatives `d_{k,a} - d_{k,b}`, normalized by 1/m!. The expansion is
//! represented as a polynomial in commuting derivative symbols.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;

use crate::combin::Point;
use crate::error::{GtError, Result};
use crate::perm::Permutation;
use crate::poly::{x_var, MPoly, Mono, Var};
use crate::ratfun::RatFn;
use crate::scalar::Rat;
use crate::shuffles::Parabolic;

pub fn x_rf(k: usize, i: usize) -> RatFn {
    RatFn::from_poly(MPoly::var(x_var(k, i)))
}

/// Raising coefficient function attached to an interval [a,b] of row k:
/// the product of `x_{k,a} - x_{k+1,j}` over the row above divided by the
/// products `x_{k,a} - x_{k,j}` over the rest of row k.
pub fn e_fun(n: usize, k: usize, a: usize, b: usize) -> Result<RatFn> {
    if k >= n || a < 1 || a > b || b > k {
        return Err(GtError::Malformed(format!(
            "bad interval [{},{}] on row {} of {}",
            a, b, k, n
        )));
    }
    let mut num = RatFn::one();
    for j in 1..=k + 1 {
        num = num.mul(&x_rf(k, a).sub(&x_rf(k + 1, j)));
    }
    let mut den = RatFn::one();
    for j in 1..=k {
        if j < a || j > b {
            den = den.mul(&x_rf(k, a).sub(&x_rf(k, j)));
        }
    }
    num.div(&den)
}

/// Lowering coefficient function attached to [a,b] of row k: the product
/// of `x_{k,b} - x_{k-1,j}` over the row below divided by the products
/// `x_{k,b} - x_{k,j}` over the rest of row k.
pub fn f_fun(n: usize, k: usize, a: usize, b: usize) -> Result<RatFn> {
    if k >= n || a < 1 || a > b || b > k {
        return Err(GtError::Malformed(format!(
            "bad interval [{},{}] on row {} of {}",
            a, b, k, n
        )));
    }
    let mut num = RatFn::one();
    for j in 1..k {
        num = num.mul(&x_rf(k, b).sub(&x_rf(k - 1, j)));
    }
    let mut den = RatFn::one();
    for j in 1..=k {
        if j < a || j > b {
            den = den.mul(&x_rf(k, b).sub(&x_rf(k, j)));
        }
    }
    num.div(&den)
}

/// Diagonal coefficient: row-sum difference plus k-1.
pub fn h_fun(k: usize) -> MPoly {
    let mut p = MPoly::int(k as i64 - 1);
    for i in 1..=k {
        p = p.add(&MPoly::var(x_var(k, i)));
    }
    if k > 1 {
        for i in 1..k {
            p = p.sub(&MPoly::var(x_var(k - 1, i)));
        }
    }
    p
}

/// Zhelobenko generator expanded into a genuine polynomial: the sum over
/// j of `(x_{k,j} + k - 1)^i prod_{m != j} (1 - 1/(x_{k,j} - x_{k,m}))`
/// with all poles cancelled.
///
/// Computed over the common denominator `prod_{a<b} (x_a - x_b)`: the
/// j-th summand contributes
/// `(-1)^{j-1} (x_j+k-1)^i prod_{m!=j}(x_j - x_m - 1) prod_{a<b != j}(x_a - x_b)`
/// to the numerator, and the alternating sum divides exactly.
pub fn gamma_poly(k: usize, i: usize) -> MPoly {
    let x = |j: usize| MPoly::var(x_var(k, j));
    let mut vandermonde = MPoly::one();
    for a in 1..=k {
        for b in a + 1..=k {
            vandermonde = vandermonde.mul(&x(a).sub(&x(b)));
        }
    }
    let mut num = MPoly::zero();
    for j in 1..=k {
        let mut term = x(j).add(&MPoly::int(k as i64 - 1)).pow(i as u32);
        for m in 1..=k {
            if m != j {
                term = term.mul(&x(j).sub(&x(m)).sub(&MPoly::one()));
            }
        }
        for a in 1..=k {
            for b in a + 1..=k {
                if a != j && b != j {
                    term = term.mul(&x(a).sub(&x(b)));
                }
            }
        }
        if j % 2 == 0 {
            term = term.neg();
        }
        num = num.add(&term);
    }
    num.try_div_exact(&vandermonde)
        .expect("the symmetrized sum has no poles left")
}

impl RatFn {
    pub fn pow(&self, e: u32) -> RatFn {
        let mut out = RatFn::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

/// Divided difference on the adjacent pair (i, i+1) of row k:
/// `(f - s f) / (x_{k,i} - x_{k,i+1})`.
pub fn divided_difference(k: usize, i: usize, f: &RatFn) -> RatFn {
    let (a, b) = (x_var(k, i), x_var(k, i + 1));
    let sf = f.swap_vars(a, b);
    let num = f.sub(&sf);
    let den = RatFn::from_poly(MPoly::var(a).sub(&MPoly::var(b)));
    num.div(&den).expect("denominator is a nonzero polynomial")
}

/// Derivative-symbol polynomial: monomials are products of partial
/// derivative symbols, encoded with the same variable ids as the
/// coordinates they differentiate.
pub type DiffPoly = MPoly;

/// Expansion cache, keyed by the pair of permutations.
pub struct PsTable {
    parab: Parabolic,
    cache: RefCell<BTreeMap<(Permutation, Permutation), DiffPoly>>,
    cache_dir: Option<std::path::PathBuf>,
}

impl PsTable {
    pub fn new(parab: Parabolic) -> Self {
        let cache_dir = std::env::var_os("GT_CACHE_DIR").map(std::path::PathBuf::from);
        PsTable {
            parab,
            cache: RefCell::new(BTreeMap::new()),
            cache_dir,
        }
    }

    pub fn parabolic(&self) -> &Parabolic {
        &self.parab
    }

    /// The expansion for the pair `(tau, upper)`: zero unless
    /// `tau <= upper` in Bruhat order.
    pub fn expansion(&self, tau: &Permutation, upper: &Permutation) -> DiffPoly {
        if let Some(hit) = self.cache.borrow().get(&(tau.clone(), upper.clone())) {
            return hit.clone();
        }
        let exp = self
            .load_cached(tau, upper)
            .unwrap_or_else(|| self.compute_expansion(tau, upper));
        self.store_cached(tau, upper, &exp);
        self.cache
            .borrow_mut()
            .insert((tau.clone(), upper.clone()), exp.clone());
        exp
    }

    fn compute_expansion(&self, tau: &Permutation, upper: &Permutation) -> DiffPoly {
        if !tau.bruhat_leq(upper) {
            return DiffPoly::zero();
        }
        let deficit = upper.length() - tau.length();
        if deficit == 0 {
            return DiffPoly::one();
        }
        let mut acc = DiffPoly::zero();
        self.chains(tau, upper, &DiffPoly::one(), &mut acc);
        let mut mfact = Rat::one();
        for t in 2..=deficit {
            mfact *= Rat::from_integer(BigInt::from(t));
        }
        acc.scale(&(Rat::one() / mfact))
    }

    fn chains(&self, u: &Permutation, upper: &Permutation, weight: &DiffPoly, acc: &mut DiffPoly) {
        if u == upper {
            *acc = acc.add(weight);
            return;
        }
        for (w, (k, a, b)) in self.parab.covers_below(u, upper, &[]) {
            let step = MPoly::var(x_var(k, a)).sub(&MPoly::var(x_var(k, b)));
            self.chains(&w, upper, &weight.mul(&step), acc);
        }
    }

    fn cache_key(&self, tau: &Permutation, upper: &Permutation) -> Option<String> {
        self.cache_dir.as_ref()?;
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        let mut desc = String::new();
        for row in &self.parab.part.rows {
            let _ = write!(desc, "{:?};", row);
        }
        let _ = write!(desc, "{:?}|{:?}", tau, upper);
        h.update(desc.as_bytes());
        Some(format!("{:x}.json", h.finalize()))
    }

    fn load_cached(&self, tau: &Permutation, upper: &Permutation) -> Option<DiffPoly> {
        let dir = self.cache_dir.as_ref()?;
        let path = dir.join(self.cache_key(tau, upper)?);
        let data = std::fs::read_to_string(path).ok()?;
        crate::json::diff_poly_from_json(&data).ok()
    }

    fn store_cached(&self, tau: &Permutation, upper: &Permutation, exp: &DiffPoly) {
        let Some(dir) = self.cache_dir.as_ref() else {
            return;
        };
        let Some(key) = self.cache_key(tau, upper) else {
            return;
        };
        if std::fs::create_dir_all(dir).is_ok() {
            let _ = std::fs::write(dir.join(key), crate::json::diff_poly_to_json(exp));
        }
    }
}

/// Rational function with the denominator kept as a product of factors
/// (linear in practice). Derivatives avoid gcd reduction entirely: the
/// denominator exponents just grow, which keeps repeated symbolic
/// differentiation cheap.
#[derive(Clone, Debug)]
pub struct LinFrac {
    pub num: MPoly,
    pub den: Vec<(MPoly, u32)>,
}

impl LinFrac {
    pub fn from_poly(p: MPoly) -> Self {
        LinFrac {
            num: p,
            den: Vec::new(),
        }
    }

    pub fn new(num: MPoly, den_factors: Vec<MPoly>) -> Self {
        LinFrac {
            num,
            den: den_factors.into_iter().map(|f| (f, 1)).collect(),
        }
    }

    pub fn derivative(&self, v: Var) -> LinFrac {
        // d(N / prod M_i^{e_i})
        //   = [N_v prod M_i - N sum_i e_i (M_i)_v prod_{j != i} M_j]
        //     / prod M_i^{e_i + 1},
        // restricted to the factors that involve v.
        let touched: Vec<usize> = self
            .den
            .iter()
            .enumerate()
            .filter(|(_, (m, _))| !m.derivative(v).is_zero())
            .map(|(i, _)| i)
            .collect();
        let mut num = self.num.derivative(v);
        for &i in &touched {
            num = num.mul(&self.den[i].0);
        }
        for &i in &touched {
            let (m, e) = &self.den[i];
            let mut term = self
                .num
                .mul(&m.derivative(v))
                .scale(&Rat::from_integer(BigInt::from(*e)));
            for &j in &touched {
                if j != i {
                    term = term.mul(&self.den[j].0);
                }
            }
            num = num.sub(&term);
        }
        let den = self
            .den
            .iter()
            .enumerate()
            .map(|(i, (m, e))| (m.clone(), if touched.contains(&i) { e + 1 } else { *e }))
            .collect();
        LinFrac { num, den }
    }

    pub fn eval(&self, point: &EvalPoint) -> Result<RatFn> {
        let num = self.num.substitute(&point.assign);
        if num.is_zero() {
            return Ok(RatFn::zero());
        }
        let mut acc = RatFn::from_poly(num);
        for (m, e) in &self.den {
            let val = m.substitute(&point.assign);
            if val.is_zero() {
                return Err(GtError::PoleEvaluation);
            }
            let inv = RatFn::from_poly(val).inv()?;
            for _ in 0..*e {
                acc = acc.mul(&inv);
            }
        }
        Ok(acc)
    }
}

/// Factored form of the raising coefficient function.
pub fn e_fun_factored(n: usize, k: usize, a: usize, b: usize) -> Result<LinFrac> {
    if k >= n || a < 1 || a > b || b > k {
        return Err(GtError::Malformed(format!(
            "bad interval [{},{}] on row {} of {}",
            a, b, k, n
        )));
    }
    let mut num = MPoly::one();
    for j in 1..=k + 1 {
        num = num.mul(&MPoly::var(x_var(k, a)).sub(&MPoly::var(x_var(k + 1, j))));
    }
    let mut den = Vec::new();
    for j in 1..=k {
        if j < a || j > b {
            den.push(MPoly::var(x_var(k, a)).sub(&MPoly::var(x_var(k, j))));
        }
    }
    Ok(LinFrac::new(num, den))
}

/// Factored form of the lowering coefficient function.
pub fn f_fun_factored(n: usize, k: usize, a: usize, b: usize) -> Result<LinFrac> {
    if k >= n || a < 1 || a > b || b > k {
        return Err(GtError::Malformed(format!(
            "bad interval [{},{}] on row {} of {}",
            a, b, k, n
        )));
    }
    let mut num = MPoly::one();
    for j in 1..k {
        num = num.mul(&MPoly::var(x_var(k, b)).sub(&MPoly::var(x_var(k - 1, j))));
    }
    let mut den = Vec::new();
    for j in 1..=k {
        if j < a || j > b {
            den.push(MPoly::var(x_var(k, b)).sub(&MPoly::var(x_var(k, j))));
        }
    }
    Ok(LinFrac::new(num, den))
}

/// Evaluation point: assignment of coordinate variables to exact values
/// (polynomials in the formal parameters).
#[derive(Clone)]
pub struct EvalPoint {
    pub assign: BTreeMap<Var, MPoly>,
}

impl EvalPoint {
    pub fn from_point(point: &Point) -> Self {
        let mut assign = BTreeMap::new();
        for k in 1..=point.n() {
            for i in 1..=k {
                assign.insert(x_var(k, i), MPoly::from_scalar(point.get(k, i)));
            }
        }
        EvalPoint { assign }
    }

    /// Evaluate a rational function of the coordinates at this point.
    pub fn eval(&self, f: &RatFn) -> Result<RatFn> {
        f.substitute(&self.assign)
    }
}

/// Apply a derivative-symbol polynomial to `f` and evaluate at `point`.
/// Derivatives are cached per monomial prefix.
pub fn apply_diff_poly(op: &DiffPoly, f: &RatFn, point: &EvalPoint) -> Result<RatFn> {
    let mut acc = RatFn::zero();
    let mut derivs: BTreeMap<Mono, RatFn> = BTreeMap::new();
    derivs.insert(Mono::one(), f.clone());
    for (m, c) in &op.terms {
        let df = derivative_for(m, f, &mut derivs);
        let val = point.eval(&df)?;
        acc = acc.add(&val.scale(c));
    }
    Ok(acc)
}

fn derivative_for(m: &Mono, f: &RatFn, derivs: &mut BTreeMap<Mono, RatFn>) -> RatFn {
    if let Some(hit) = derivs.get(m) {
        return hit.clone();
    }
    // peel one derivative off the monomial
    let (v, e) = m.0[0];
    let parent = if e > 1 {
        let mut p = m.clone();
        p.0[0].1 -= 1;
        p
    } else {
        Mono(m.0[1..].to_vec())
    };
    let base = derivative_for(&parent, f, derivs);
    let out = base.derivative(v);
    derivs.insert(m.clone(), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::{partition_of, Point};
    use crate::scalar::Scalar;

    #[test]
    fn h_of_zero_point_is_k_minus_one() {
        let p = EvalPoint::from_point(&Point::zero(4));
        for k in 1..=4 {
            let v = p.eval(&RatFn::from_poly(h_fun(k))).unwrap();
            assert_eq!(v, RatFn::from_int(k as i64 - 1));
        }
    }

    #[test]
    fn gamma_small_cases() {
        // the rank-1 generator is the single coordinate
        assert_eq!(gamma_poly(1, 1), MPoly::var(x_var(1, 1)));
        // rank-2, degree-1: x_{2,1} + x_{2,2} + 1
        let g21 = gamma_poly(2, 1);
        let expect = MPoly::var(x_var(2, 1))
            .add(&MPoly::var(x_var(2, 2)))
            .add(&MPoly::one());
        assert_eq!(g21, expect);
        // finite at a repeated point
        let p = EvalPoint::from_point(&Point::zero(2));
        let v = p.eval(&RatFn::from_poly(g21)).unwrap();
        assert_eq!(v, RatFn::from_int(1));
    }

    #[test]
    fn gamma_is_symmetric_in_its_row() {
        for k in 2..=4usize {
            for i in 1..=k {
                let g = gamma_poly(k, i);
                for t in 1..k {
                    let swapped = g.swap_vars(x_var(k, t), x_var(k, t + 1));
                    assert_eq!(swapped, g, "gamma[{},{}] swap at {}", k, i, t);
                }
            }
        }
    }

    #[test]
    fn divided_difference_basics() {
        let x1 = x_rf(2, 1);
        let x2 = x_rf(2, 2);
        // symmetric input -> 0
        let sym = x1.mul(&x2);
        assert!(divided_difference(2, 1, &sym).is_zero());
        // linear: d(x) = 1
        assert_eq!(divided_difference(2, 1, &x1), RatFn::one());
        // d(x^2) = x + x'
        assert_eq!(divided_difference(2, 1, &x1.mul(&x1)), x1.add(&x2));
        // polynomial in, polynomial out
        let f = x1.pow(3);
        let d = divided_difference(2, 1, &f);
        assert!(d.as_poly().is_some());
    }

    #[test]
    fn expansion_of_cover_is_root_difference() {
        let parab = Parabolic::new(partition_of(&Point::zero(3)).unwrap());
        let e = Permutation::identity(3);
        let s = Permutation::transposition(3, 2, 1, 2);
        let table = PsTable::new(parab);
        let exp = table.expansion(&e, &s);
        let expect = MPoly::var(x_var(2, 1)).sub(&MPoly::var(x_var(2, 2)));
        assert_eq!(exp, expect);
        // diagonal: evaluation
        assert_eq!(table.expansion(&s, &s), MPoly::one());
        // incomparable: zero
        assert!(table.expansion(&s, &e).is_zero());
    }

    #[test]
    fn expansion_full_cycle_row3() {
        // tau = e, upper = the forward 3-cycle on row 3 of the zero seed:
        // two chains, giving ((d1-d2)(d2-d3) + (d2-d3)(d1-d3))/2
        let parab = Parabolic::new(partition_of(&Point::zero(4)).unwrap());
        let table = PsTable::new(parab);
        let e = Permutation::identity(4);
        let c3 = Permutation::beta(4, 3, 1, 3);
        let exp = table.expansion(&e, &c3);
        let d = |i: usize| MPoly::var(x_var(3, i));
        let expect = d(1)
            .sub(&d(2))
            .mul(&d(2).sub(&d(3)))
            .add(&d(2).sub(&d(3)).mul(&d(1).sub(&d(3))))
            .scale(&Rat::new(1.into(), 2.into()));
        assert_eq!(exp, expect);
        // coefficient of d3^2 is (+1)^2/2!
        let m = Mono::power(x_var(3, 3), 2);
        assert_eq!(exp.terms.get(&m), Some(&Rat::new(1.into(), 2.into())));
    }

    #[test]
    fn lowering_coefficient_value_with_one_collision() {
        // row 2 of a rank-3 triangle, block [1,2] at the zero point, one
        // matching entry below: the degree-1 operator evaluates to -1
        let parab = Parabolic::new(partition_of(&Point::zero(3)).unwrap());
        let table = PsTable::new(parab);
        let e = Permutation::identity(3);
        let s = Permutation::transposition(3, 2, 1, 2);
        let f = f_fun(3, 2, 1, 2).unwrap();
        let point = EvalPoint::from_point(&Point::zero(3));
        let op = table.expansion(&e, &s);
        let val = apply_diff_poly(&op, &f, &point).unwrap();
        assert_eq!(val, RatFn::from_int(-1));
        // and the diagonal term vanishes there
        let val0 = point.eval(&f).unwrap();
        assert!(val0.is_zero());
    }

    #[test]
    fn raising_coefficient_with_parameters() {
        // the raising function vanishes when the row above holds a
        // matching value, even in the presence of parameters
        let mut seed = Point::zero(2);
        seed.set(2, 1, Scalar::param(1));
        assert!(crate::combin::is_seed(&seed));
        let point = EvalPoint::from_point(&seed);
        let e = e_fun(2, 1, 1, 1).unwrap();
        // (x11 - x21)(x11 - x22) at ((0),(a,0)) = (-a)(0) = 0
        let val = point.eval(&e).unwrap();
        assert!(val.is_zero());
    }
}
