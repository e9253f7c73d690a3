//! JSON wire formats.
//!
//! Point: `{"n": n, "rows": [[scalar-string, ...], ...]}` with rows from
//! bottom (one entry) to top (n entries) and the scalar grammar of
//! [`crate::scalar::Scalar`]. Shift: `{"rows": [[int]]}` covering rows
//! 1..n-1 only. Permutation: `{"rows": [[int]]}` in one-line notation.
//! Tableau vectors are lists of `{"z": ..., "sigma": ..., "coeff": ...}`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::combin::{Point, Shift};
use crate::error::{GtError, Result};
use crate::perm::Permutation;
use crate::poly::{is_x_var, param_var, x_var, MPoly, Mono};
use crate::ratfun::RatFn;
use crate::scalar::{Rat, Scalar};

#[derive(Serialize, Deserialize)]
pub struct PointJson {
    pub n: usize,
    pub rows: Vec<Vec<String>>,
}

pub fn point_to_json(p: &Point) -> PointJson {
    PointJson {
        n: p.n(),
        rows: p
            .rows
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect(),
    }
}

pub fn point_from_json(j: &PointJson) -> Result<Point> {
    if j.rows.len() != j.n {
        return Err(GtError::Malformed(format!(
            "expected {} rows, found {}",
            j.n,
            j.rows.len()
        )));
    }
    let mut rows = Vec::new();
    for (kk, row) in j.rows.iter().enumerate() {
        if row.len() != kk + 1 {
            return Err(GtError::Malformed(format!(
                "row {} must have {} entries",
                kk + 1,
                kk + 1
            )));
        }
        let mut out = Vec::new();
        for s in row {
            out.push(s.parse::<Scalar>()?);
        }
        rows.push(out);
    }
    Ok(Point { rows })
}

#[derive(Serialize, Deserialize)]
pub struct ShiftJson {
    pub rows: Vec<Vec<i64>>,
}

pub fn shift_to_json(z: &Shift) -> ShiftJson {
    ShiftJson {
        rows: z.rows.clone(),
    }
}

pub fn shift_from_json(n: usize, j: &ShiftJson) -> Result<Shift> {
    Shift::from_rows(n, j.rows.clone())
}

#[derive(Serialize, Deserialize)]
pub struct PermJson {
    pub rows: Vec<Vec<usize>>,
}

pub fn perm_to_json(p: &Permutation) -> PermJson {
    PermJson {
        rows: p
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v + 1).collect())
            .collect(),
    }
}

pub fn perm_from_json(j: &PermJson) -> Result<Permutation> {
    let n = j.rows.len();
    let mut p = Permutation::identity(n);
    for (kk, row) in j.rows.iter().enumerate() {
        let k = kk + 1;
        if row.len() != k {
            return Err(GtError::Malformed(format!(
                "permutation row {} must have {} entries",
                k, k
            )));
        }
        let mut seen = vec![false; k];
        for &v in row {
            if v < 1 || v > k || seen[v - 1] {
                return Err(GtError::Malformed(format!(
                    "row {} is not a permutation of 1..{}",
                    k, k
                )));
            }
            seen[v - 1] = true;
        }
        p.set_row(k, row);
    }
    Ok(p)
}

// ---- polynomial / rational-function strings ----

pub fn diff_poly_to_json(p: &MPoly) -> String {
    let terms: Vec<(Vec<(u32, u32)>, String)> = p
        .terms
        .iter()
        .map(|(m, c)| (m.0.clone(), c.to_string()))
        .collect();
    serde_json::to_string(&terms).expect("serializable")
}

pub fn diff_poly_from_json(s: &str) -> Result<MPoly> {
    let terms: Vec<(Vec<(u32, u32)>, String)> =
        serde_json::from_str(s).map_err(|e| GtError::Malformed(e.to_string()))?;
    let mut out = MPoly::zero();
    for (m, c) in terms {
        let c = parse_rat_str(&c)?;
        out.add_term(Mono(m), c);
    }
    Ok(out)
}

fn parse_rat_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = num
        .parse()
        .map_err(|_| GtError::Malformed(format!("bad rational `{}`", s)))?;
    let d: num_bigint::BigInt = den
        .parse()
        .map_err(|_| GtError::Malformed(format!("bad rational `{}`", s)))?;
    if d == 0.into() {
        return Err(GtError::Malformed("zero denominator".into()));
    }
    Ok(Rat::new(n, d))
}

/// Parse the polynomial strings produced by the display impls: terms of
/// shape `q`, `q*m`, `m` with `m` a `*`-separated product of `a_j` and
/// `x[k,i]` powers.
pub fn parse_poly(s: &str) -> Result<MPoly> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(GtError::Malformed("empty polynomial".into()));
    }
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for (idx, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if (ch == '+' || ch == '-') && idx != 0 && depth == 0 {
            terms.push(cur.clone());
            cur.clear();
            if ch == '-' {
                cur.push('-');
            }
            continue;
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut out = MPoly::zero();
    for term in terms {
        if term.is_empty() || term == "-" {
            return Err(GtError::Malformed(format!("bad polynomial `{}`", s)));
        }
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-Rat::one(), rest.to_string()),
            None => (Rat::one(), term),
        };
        let mut coeff = sign;
        let mut mono = Mono::one();
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(GtError::Malformed(format!("bad term in `{}`", s)));
            }
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.parse::<u32>()
                        .map_err(|_| GtError::Malformed(format!("bad power `{}`", factor)))?,
                ),
                None => (factor, 1),
            };
            if base.starts_with(|c: char| c.is_ascii_digit()) {
                let q = parse_rat_str(base)?;
                let mut acc = Rat::one();
                for _ in 0..exp {
                    acc *= &q;
                }
                coeff *= acc;
            } else if let Some(rest) = base.strip_prefix("x[") {
                let inner = rest
                    .strip_suffix(']')
                    .ok_or_else(|| GtError::Malformed(format!("bad coordinate `{}`", base)))?;
                let (k, i) = inner
                    .split_once(',')
                    .ok_or_else(|| GtError::Malformed(format!("bad coordinate `{}`", base)))?;
                let k: usize = k
                    .parse()
                    .map_err(|_| GtError::Malformed(format!("bad coordinate `{}`", base)))?;
                let i: usize = i
                    .parse()
                    .map_err(|_| GtError::Malformed(format!("bad coordinate `{}`", base)))?;
                mono = mono.mul(&Mono::power(x_var(k, i), exp));
            } else if let Some(rest) = base.strip_prefix("a_") {
                let j: u32 = rest
                    .parse()
                    .map_err(|_| GtError::Malformed(format!("bad parameter `{}`", base)))?;
                mono = mono.mul(&Mono::power(param_var(j), exp));
            } else {
                return Err(GtError::Malformed(format!("bad factor `{}`", base)));
            }
        }
        out.add_term(mono, coeff);
    }
    Ok(out)
}

/// Parse `p` or `(p)/(q)` in the display format of [`RatFn`].
pub fn parse_ratfn(s: &str) -> Result<RatFn> {
    let s = s.trim();
    if let Some(stripped) = s.strip_prefix('(') {
        if let Some((num, den)) = stripped.split_once(")/(") {
            let den = den
                .strip_suffix(')')
                .ok_or_else(|| GtError::Malformed(format!("bad fraction `{}`", s)))?;
            let n = parse_poly(num)?;
            let d = parse_poly(den)?;
            if d.is_zero() {
                return Err(GtError::Malformed("zero denominator".into()));
            }
            return Ok(RatFn::new(n, d));
        }
    }
    Ok(RatFn::from_poly(parse_poly(s)?))
}

/// Ensure a rational function only involves formal parameters (no
/// coordinate variables); values of evaluated expressions satisfy this.
pub fn assert_param_only(f: &RatFn) -> Result<()> {
    for p in [&f.num, &f.den] {
        for m in p.terms.keys() {
            for (v, _) in &m.0 {
                if is_x_var(*v) {
                    return Err(GtError::Malformed(
                        "value still depends on coordinates".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_round_trip() {
        let j = PointJson {
            n: 3,
            rows: vec![
                vec!["a_1".into()],
                vec!["1/2".into(), "-3".into()],
                vec!["0".into(), "1+a_2".into(), "2".into()],
            ],
        };
        let p = point_from_json(&j).unwrap();
        let j2 = point_to_json(&p);
        let p2 = point_from_json(&j2).unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn ratfn_round_trip() {
        let x = RatFn::from_poly(MPoly::var(param_var(1)));
        let y = RatFn::from_poly(MPoly::var(param_var(2)));
        let f = x
            .mul(&x)
            .sub(&y.scale(&Rat::new(3.into(), 2.into())))
            .div(&x.add(&y))
            .unwrap();
        let s = f.to_string();
        let g = parse_ratfn(&s).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn perm_round_trip_rejects_garbage() {
        let bad = PermJson {
            rows: vec![vec![1], vec![1, 1]],
        };
        assert!(perm_from_json(&bad).is_err());
        let ok = PermJson {
            rows: vec![vec![1], vec![2, 1]],
        };
        let p = perm_from_json(&ok).unwrap();
        assert_eq!(perm_to_json(&p).rows, vec![vec![1], vec![2, 1]]);
    }
}
