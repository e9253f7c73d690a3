//! Brute-force highest-weight module oracle: the module is realized on
//! ordered monomials in the lowering generators, the action is computed
//! by exact straightening, and the commuting-generator matrices are
//! decomposed into joint generalized eigenspaces over the rationals.
//!
//! Everything here is independent of the tableaux engine; the only
//! shared dictionary is the polynomial expression of the commuting
//! generators used to name characters.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combin::{enumerate_d_shifts_box, partition_of, Point, Shift};
use crate::engine::hw_tableau;
use crate::error::{GtError, Result};
use crate::psop::{gamma_poly, EvalPoint};
use crate::ratfun::RatFn;
use crate::scalar::{Rat, Scalar};

/// Ordered product of lowering generators applied to the highest-weight
/// vector: exponents of `E_{j,i}` (j > i) in a fixed lexicographic factor
/// order.
pub type PbwMono = Vec<((usize, usize), u32)>;

/// Finite rational combination of ordered monomials.
pub type VermaVec = BTreeMap<PbwMono, Rat>;

fn add_term(out: &mut VermaVec, m: PbwMono, c: Rat) {
    if c.is_zero() {
        return;
    }
    let entry = out.entry(m.clone()).or_insert_with(Rat::zero);
    *entry += c;
    if entry.is_zero() {
        out.remove(&m);
    }
}

fn vec_add(a: &mut VermaVec, b: &VermaVec, scale: &Rat) {
    for (m, c) in b {
        add_term(a, m.clone(), c * scale);
    }
}

pub struct VermaModule {
    pub n: usize,
    pub lambda: Vec<Rat>,
    act_cache: std::cell::RefCell<BTreeMap<((usize, usize), PbwMono), VermaVec>>,
}

impl VermaModule {
    pub fn new(lambda: Vec<Rat>) -> Self {
        VermaModule {
            n: lambda.len(),
            lambda,
            act_cache: std::cell::RefCell::new(BTreeMap::new()),
        }
    }

    /// `lambda = -(0, 1, ..., n-1)` rotated to the highest-weight frame:
    /// entries `k - 1`.
    pub fn antidominant_singular(n: usize) -> Self {
        Self::new((0..n).map(|k| Rat::from_integer(BigInt::from(k))).collect())
    }

    /// Action of a single generator `E_{p,q}` on an ordered monomial.
    pub fn act_gen(&self, p: usize, q: usize, mono: &PbwMono) -> VermaVec {
        let key = ((p, q), mono.clone());
        if let Some(hit) = self.act_cache.borrow().get(&key) {
            return hit.clone();
        }
        let out = self.act_gen_inner(p, q, mono);
        self.act_cache.borrow_mut().insert(key, out.clone());
        out
    }

    fn act_gen_inner(&self, p: usize, q: usize, mono: &PbwMono) -> VermaVec {
        let mut out = VermaVec::new();
        if mono.is_empty() {
            if p < q {
                // raising kills the highest-weight vector
            } else if p == q {
                add_term(&mut out, Vec::new(), self.lambda[p - 1].clone());
            } else {
                add_term(&mut out, vec![((p, q), 1)], Rat::one());
            }
            return out;
        }
        let ((a, b), e) = mono[0];
        if p > q && (p, q) <= (a, b) {
            // prepend in order
            let mut m = mono.clone();
            if (p, q) == (a, b) {
                m[0].1 += 1;
            } else {
                m.insert(0, ((p, q), 1));
            }
            add_term(&mut out, m, Rat::one());
            return out;
        }
        // E_{p,q} E_{a,b} X = E_{a,b} E_{p,q} X + [E_{p,q}, E_{a,b}] X
        let rest = {
            let mut m = mono.clone();
            if e > 1 {
                m[0].1 -= 1;
            } else {
                m.remove(0);
            }
            m
        };
        let tail = self.act_gen(p, q, &rest);
        for (m, c) in tail {
            let shifted = self.mul_left(a, b, &m);
            vec_add(&mut out, &shifted, &c);
        }
        // commutator: [E_{p,q}, E_{a,b}] = d_{q,a} E_{p,b} - d_{b,p} E_{a,q}
        if q == a {
            let t = self.act_gen(p, b, &rest);
            vec_add(&mut out, &t, &Rat::one());
        }
        if b == p {
            let t = self.act_gen(a, q, &rest);
            vec_add(&mut out, &t, &(-Rat::one()));
        }
        out
    }

    /// Left multiplication by the lowering generator `E_{a,b}` (a > b),
    /// restoring the ordered form.
    fn mul_left(&self, a: usize, b: usize, mono: &PbwMono) -> VermaVec {
        self.act_gen(a, b, mono)
    }

    pub fn act(&self, p: usize, q: usize, v: &VermaVec) -> VermaVec {
        let mut out = VermaVec::new();
        for (m, c) in v {
            let t = self.act_gen(p, q, m);
            vec_add(&mut out, &t, c);
        }
        out
    }

    /// Apply a product of generators, rightmost first.
    pub fn act_word(&self, word: &[(usize, usize)], v: &VermaVec) -> VermaVec {
        let mut cur = v.clone();
        for &(p, q) in word.iter().rev() {
            cur = self.act(p, q, &cur);
        }
        cur
    }

    /// Action of the degree-i commuting generator of the top-left k-by-k
    /// corner: the sum over cyclic index tuples of length i.
    pub fn act_c(&self, k: usize, i: usize, v: &VermaVec) -> VermaVec {
        let mut out = VermaVec::new();
        let mut tuple = vec![1usize; i];
        loop {
            // word E_{r1,r2} E_{r2,r3} ... E_{ri,r1}
            let mut word = Vec::with_capacity(i);
            for t in 0..i {
                word.push((tuple[t], tuple[(t + 1) % i]));
            }
            let term = self.act_word(&word, v);
            vec_add(&mut out, &term, &Rat::one());
            // next tuple in [1,k]^i
            let mut pos = 0;
            loop {
                if pos == i {
                    return out;
                }
                tuple[pos] += 1;
                if tuple[pos] <= k {
                    break;
                }
                tuple[pos] = 1;
                pos += 1;
            }
        }
    }

    /// Root-lattice coordinates of the depth of a monomial: entry k is
    /// the number of simple-root steps crossing position k.
    pub fn beta_of(mono: &PbwMono) -> Vec<u32> {
        let mut beta = Vec::new();
        for &((j, i), e) in mono {
            if beta.len() < j {
                beta.resize(j, 0);
            }
            for t in i..j {
                beta[t - 1] += e;
            }
        }
        beta
    }

    /// All ordered monomials with the given root-lattice depth.
    pub fn block_basis(&self, beta: &[u32]) -> Vec<PbwMono> {
        let n = self.n;
        let pairs: Vec<(usize, usize)> = {
            let mut v = Vec::new();
            for j in 2..=n {
                for i in 1..j {
                    v.push((j, i));
                }
            }
            v.sort();
            v
        };
        let mut out = Vec::new();
        let mut cur: PbwMono = Vec::new();
        fn rec(
            pairs: &[(usize, usize)],
            t: usize,
            remaining: &mut Vec<i64>,
            cur: &mut PbwMono,
            out: &mut Vec<PbwMono>,
        ) {
            if t == pairs.len() {
                if remaining.iter().all(|&r| r == 0) {
                    out.push(cur.clone());
                }
                return;
            }
            let (j, i) = pairs[t];
            let max_e = (i..j).map(|s| remaining[s - 1]).min().unwrap_or(0).max(0);
            for e in 0..=max_e {
                for s in i..j {
                    remaining[s - 1] -= e;
                }
                if e > 0 {
                    cur.push(((j, i), e as u32));
                }
                rec(pairs, t + 1, remaining, cur, out);
                if e > 0 {
                    cur.pop();
                }
                for s in i..j {
                    remaining[s - 1] += e;
                }
            }
        }
        let mut remaining: Vec<i64> = beta.iter().map(|&b| b as i64).collect();
        remaining.resize(n.saturating_sub(1), 0);
        rec(&pairs, 0, &mut remaining, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Matrix of an operator on a block, columns indexed by the basis.
    fn matrix_of(
        &self,
        basis: &[PbwMono],
        apply: impl Fn(&VermaVec) -> VermaVec,
    ) -> Vec<Vec<Rat>> {
        let index: BTreeMap<&PbwMono, usize> =
            basis.iter().enumerate().map(|(t, m)| (m, t)).collect();
        let dim = basis.len();
        let mut mat = vec![vec![Rat::zero(); dim]; dim];
        for (col, m) in basis.iter().enumerate() {
            let mut v = VermaVec::new();
            add_term(&mut v, m.clone(), Rat::one());
            let image = apply(&v);
            for (m2, c) in image {
                let row = *index
                    .get(&m2)
                    .expect("operator must preserve the weight block");
                mat[row][col] = c;
            }
        }
        mat
    }
}

// ---- exact linear algebra over the rationals ----

pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner > 0 { b[0].len() } else { 0 };
    let mut out = vec![vec![Rat::zero(); cols]; rows];
    for r in 0..rows {
        for t in 0..inner {
            if a[r][t].is_zero() {
                continue;
            }
            for c in 0..cols {
                if !b[t][c].is_zero() {
                    let delta = &a[r][t] * &b[t][c];
                    out[r][c] = &out[r][c] + &delta;
                }
            }
        }
    }
    out
}

/// Kernel basis (as row vectors) of a matrix acting on column vectors.
pub fn kernel_basis(mat: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let rows = mat.len();
    let cols = if rows > 0 { mat[0].len() } else { 0 };
    let mut m: Vec<Vec<Rat>> = mat.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = Rat::one() / m[rank][col].clone();
        for c in 0..cols {
            m[rank][c] = &m[rank][c] * &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..cols {
                    let delta = &m[rank][c] * &f;
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for &(r, c) in &pivots {
            v[c] = -m[r][free].clone();
        }
        out.push(v);
    }
    out
}

/// Rank of a rational matrix given as rows.
pub fn rat_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    rref(&mut rows);
    rows.len()
}

/// Reduced row echelon form; returns (matrix, pivot columns).
fn rref(mat: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = mat.len();
    let cols = if rows > 0 { mat[0].len() } else { 0 };
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, p);
        let inv = Rat::one() / mat[rank][col].clone();
        for c in 0..cols {
            mat[rank][c] = &mat[rank][c] * &inv;
        }
        for r in 0..rows {
            if r != rank && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in 0..cols {
                    let delta = &mat[rank][c] * &f;
                    mat[r][c] = &mat[r][c] - &delta;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    mat.truncate(rank);
    pivots
}

/// Intersection of row-span subspaces, each given by basis rows.
pub fn intersect_subspaces(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let cols = a[0].len();
    // x in span(a) and span(b): solve [A^T | -B^T] nullspace
    let mut stacked: Vec<Vec<Rat>> = Vec::new();
    for r in 0..cols {
        let mut row = Vec::with_capacity(a.len() + b.len());
        for v in a {
            row.push(v[r].clone());
        }
        for v in b {
            row.push(-v[r].clone());
        }
        stacked.push(row);
    }
    let null = kernel_basis(&stacked);
    let mut out = Vec::new();
    for coeffs in null {
        let mut v = vec![Rat::zero(); cols];
        for (t, va) in a.iter().enumerate() {
            if coeffs[t].is_zero() {
                continue;
            }
            for c in 0..cols {
                let delta = &va[c] * &coeffs[t];
                v[c] = &v[c] + &delta;
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            out.push(v);
        }
    }
    let _ = rref(&mut out);
    out
}

/// Generalized kernel of `A - mu I` intersected with the row-space `w`:
/// grows kernels of increasing powers until stable.
fn generalized_eigenspace(a: &[Vec<Rat>], mu: &Rat, w: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let dim = a.len();
    let mut shifted = a.to_vec();
    for t in 0..dim {
        shifted[t][t] = &shifted[t][t] - mu;
    }
    let mut power = shifted.clone();
    let mut prev_dim = usize::MAX;
    loop {
        let kern = kernel_basis(&power);
        let current = intersect_subspaces(&kern, w);
        if current.len() == prev_dim || current.is_empty() || current.len() == w.len() {
            return current;
        }
        prev_dim = current.len();
        power = mat_mul(&power, &shifted);
    }
}

/// One character found in a weight block.
#[derive(Debug, Clone)]
pub struct CharacterEntry {
    /// Cartan weight of the block.
    pub weight: Vec<Rat>,
    /// Canonical shift naming the character relative to the base point.
    pub shift: Shift,
    pub multiplicity: usize,
}

#[derive(Debug, Default)]
pub struct Decomposition {
    pub entries: Vec<CharacterEntry>,
    pub blocks_explored: usize,
}

/// Gelfand-Tsetlin style decomposition of the highest-weight module into
/// joint generalized eigenspaces of the commuting generators, explored
/// over all root-lattice depths with coordinate sum at most `depth`.
/// `jobs` bounds the worker threads used across blocks.
pub fn gt_decompose(module: &VermaModule, depth: u32, jobs: usize) -> Result<Decomposition> {
    let n = module.n;
    // base point naming characters: rows are prefixes of the shifted
    // weight in canonical arrangement
    let lambda_scalars: Vec<Scalar> = module
        .lambda
        .iter()
        .map(|q| Scalar::from_rat(q.clone()))
        .collect();
    let base = hw_tableau(&lambda_scalars, &(1..=n).collect::<Vec<_>>())?;
    let betas = enumerate_betas(n - 1, depth);
    let work: Vec<Vec<u32>> = betas;
    let results: Vec<Result<Vec<CharacterEntry>>> = if jobs <= 1 {
        work.iter()
            .map(|beta| decompose_block(module, &base, beta))
            .collect()
    } else {
        // workers build their own module so the straightening cache
        // stays thread-local
        let lambda = module.lambda.clone();
        let base_ref = &base;
        std::thread::scope(|scope| {
            let chunks: Vec<_> = work.chunks((work.len() + jobs - 1) / jobs.max(1)).collect();
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    let lambda = lambda.clone();
                    scope.spawn(move || {
                        let local = VermaModule::new(lambda);
                        chunk
                            .iter()
                            .map(|beta| decompose_block(&local, base_ref, beta))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker"))
                .collect()
        })
    };
    let mut entries = Vec::new();
    let blocks = results.len();
    for r in results {
        entries.extend(r?);
    }
    entries.sort_by(|x, y| x.shift.cmp(&y.shift));
    Ok(Decomposition {
        entries,
        blocks_explored: blocks,
    })
}

fn enumerate_betas(len: usize, depth: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; len];
    fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(cur, pos + 1, left - v, out);
        }
        cur[pos] = 0;
    }
    rec(&mut cur, 0, depth, &mut out);
    out
}

fn decompose_block(
    module: &VermaModule,
    base: &Point,
    beta: &[u32],
) -> Result<Vec<CharacterEntry>> {
    let n = module.n;
    let basis = module.block_basis(beta);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let dim = basis.len();
    // commuting generator matrices on the block
    let mut gens: Vec<((usize, usize), Vec<Vec<Rat>>)> = Vec::new();
    for k in 1..=n {
        for i in 1..=k {
            let mat = module.matrix_of(&basis, |v| module.act_c(k, i, v));
            gens.push(((k, i), mat));
        }
    }
    // candidate characters: shifts from the base point with row sums
    // pinned by the block depth
    let depth_bound: i64 = beta.iter().map(|&b| b as i64).sum();
    let part = partition_of(base)?;
    let mut candidates: Vec<(Shift, Vec<Rat>)> = Vec::new();
    for z in enumerate_d_shifts_box(&part, -depth_bound, depth_bound) {
        // row sums of z must match the depth profile: sum_k = -b_k... the
        // partial sums of beta pin each row sum
        let mut ok = true;
        for k in 1..n {
            let expected: i64 = -(beta.get(k - 1).copied().unwrap_or(0) as i64);
            let got: i64 = (1..=k).map(|i| z.get(k, i)).sum();
            if got != expected {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let point = base.add_shift(&z);
        let ep = EvalPoint::from_point(&point);
        let mut tuple = Vec::new();
        let mut rational = true;
        for k in 1..=n {
            for i in 1..=k {
                let val = ep
                    .eval(&RatFn::from_poly(gamma_poly(k, i)))
                    .map_err(|_| GtError::Oracle("character value has a pole".into()))?;
                match val.as_rat() {
                    Some(q) => tuple.push(q),
                    None => {
                        rational = false;
                        break;
                    }
                }
            }
            if !rational {
                break;
            }
        }
        if rational {
            candidates.push((z, tuple));
        }
    }
    // joint generalized eigenspaces per candidate tuple
    let full: Vec<Vec<Rat>> = (0..dim)
        .map(|t| {
            let mut v = vec![Rat::zero(); dim];
            v[t] = Rat::one();
            v
        })
        .collect();
    let mut found = Vec::new();
    let mut total = 0usize;
    for (z, tuple) in candidates {
        let mut space = full.clone();
        for (idx, (_, mat)) in gens.iter().enumerate() {
            if space.is_empty() {
                break;
            }
            space = generalized_eigenspace(mat, &tuple[idx], &space);
        }
        if !space.is_empty() {
            total += space.len();
            found.push(CharacterEntry {
                weight: block_weight(module, beta),
                shift: z,
                multiplicity: space.len(),
            });
        }
    }
    if total != dim {
        return Err(GtError::Oracle(format!(
            "block {:?}: joint eigenspaces cover {} of {} dimensions",
            beta, total, dim
        )));
    }
    Ok(found)
}

fn block_weight(module: &VermaModule, beta: &[u32]) -> Vec<Rat> {
    // lambda - sum_k beta_k alpha_k
    let n = module.n;
    let mut w = module.lambda.clone();
    for k in 1..n {
        let b = Rat::from_integer(BigInt::from(beta.get(k - 1).copied().unwrap_or(0)));
        w[k - 1] = &w[k - 1] - &b;
        w[k] = &w[k] + &b;
    }
    w
}

/// Comparison report of the oracle against the closed-form predictions.
#[derive(Debug, Default)]
pub struct ComparisonReport {
    pub characters: usize,
    pub mismatches: Vec<String>,
}

impl ComparisonReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// For the singular antidominant module: every found character passes the
/// closed-form support test, the support box is covered, and the
/// essential characters are exactly those attaining the sharpness bound.
pub fn compare_with_predictions(n: usize, depth: u32, jobs: usize) -> Result<ComparisonReport> {
    use crate::cone::{fo_bound, verma_essupp_test, verma_supp_test};
    use crate::shuffles::Parabolic;
    let module = VermaModule::antidominant_singular(n);
    let decomposition = gt_decompose(&module, depth, jobs)?;
    let mut report = ComparisonReport::default();
    report.characters = decomposition.entries.len();
    let parab = Parabolic::new(partition_of(&Point::zero(n))?);
    let mut found: BTreeMap<Shift, usize> = BTreeMap::new();
    for entry in &decomposition.entries {
        found.insert(entry.shift.clone(), entry.multiplicity);
        if !verma_supp_test(&entry.shift) {
            report.mismatches.push(format!(
                "character {:?} found with multiplicity {} outside the support cone",
                entry.shift, entry.multiplicity
            ));
            continue;
        }
        let bound = fo_bound(&parab, &entry.shift)? as usize;
        if verma_essupp_test(&entry.shift) {
            if entry.multiplicity != bound {
                report.mismatches.push(format!(
                    "essential character {:?} has multiplicity {} instead of {}",
                    entry.shift, entry.multiplicity, bound
                ));
            }
        } else if entry.multiplicity >= bound {
            report.mismatches.push(format!(
                "non-essential character {:?} attains the bound {}",
                entry.shift, entry.multiplicity
            ));
        }
    }
    // coverage: every shift in the box passing the support test and with
    // total depth within range must be found
    let part = partition_of(&Point::zero(n))?;
    for z in enumerate_d_shifts_box(&part, -(depth as i64), 0) {
        if z.norm1() > depth as i64 || !verma_supp_test(&z) {
            continue;
        }
        if !found.contains_key(&z) {
            report
                .mismatches
                .push(format!("support shift {:?} missing from the oracle", z));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn highest_weight_action() {
        let m = VermaModule::antidominant_singular(3);
        let hw: VermaVec = {
            let mut v = VermaVec::new();
            add_term(&mut v, Vec::new(), Rat::one());
            v
        };
        // diagonal scalars (the k = 1 eigenvalue is 0, so no term)
        for k in 1..=3 {
            let out = m.act(k, k, &hw);
            let mut expected = VermaVec::new();
            add_term(
                &mut expected,
                Vec::new(),
                Rat::from_integer(BigInt::from(k as i64 - 1)),
            );
            assert_eq!(out, expected, "diagonal {}", k);
        }
        // raising kills the highest-weight vector
        assert!(m.act(1, 2, &hw).is_empty());
        assert!(m.act(2, 3, &hw).is_empty());
    }

    #[test]
    fn bracket_self_consistency() {
        // [E_{p,q}, E_{q,p}] = E_{p,p} - E_{q,q} on assorted vectors
        let m = VermaModule::antidominant_singular(3);
        let mut v = VermaVec::new();
        add_term(&mut v, vec![((2, 1), 1)], Rat::one());
        add_term(&mut v, vec![((3, 1), 2), ((3, 2), 1)], Rat::from_integer(3.into()));
        for (p, q) in [(1usize, 2usize), (2, 3), (1, 3)] {
            let lhs = {
                let a = m.act(p, q, &m.act(q, p, &v));
                let b = m.act(q, p, &m.act(p, q, &v));
                let mut out = a;
                vec_add(&mut out, &b, &(-Rat::one()));
                out
            };
            let rhs = {
                let a = m.act(p, p, &v);
                let b = m.act(q, q, &v);
                let mut out = a;
                vec_add(&mut out, &b, &(-Rat::one()));
                out
            };
            assert_eq!(lhs, rhs, "bracket at ({},{})", p, q);
        }
    }

    #[test]
    fn block_dimensions_are_partition_counts() {
        let m = VermaModule::antidominant_singular(3);
        // depth (1,1): monomials E31, E21 E32: dimension 2
        assert_eq!(m.block_basis(&[1, 1]).len(), 2);
        assert_eq!(m.block_basis(&[1, 0]).len(), 1);
        assert_eq!(m.block_basis(&[2, 1]).len(), 2);
        assert_eq!(m.block_basis(&[2, 2]).len(), 3);
        assert_eq!(m.block_basis(&[0, 0]).len(), 1);
    }

    #[test]
    fn commuting_matrices_commute() {
        let m = VermaModule::antidominant_singular(3);
        let basis = m.block_basis(&[1, 1]);
        let c21 = m.matrix_of(&basis, |v| m.act_c(2, 1, v));
        let c22 = m.matrix_of(&basis, |v| m.act_c(2, 2, v));
        let c31 = m.matrix_of(&basis, |v| m.act_c(3, 1, v));
        assert_eq!(mat_mul(&c21, &c22), mat_mul(&c22, &c21));
        assert_eq!(mat_mul(&c21, &c31), mat_mul(&c31, &c21));
        assert_eq!(mat_mul(&c22, &c31), mat_mul(&c31, &c22));
    }

    #[test]
    fn scalar_on_highest_weight_matches_character_values() {
        // the commuting generators act on the highest-weight vector by
        // the character of the base point
        let n = 3;
        let m = VermaModule::antidominant_singular(n);
        let basis = vec![Vec::new()];
        let lambda_scalars: Vec<Scalar> = m
            .lambda
            .iter()
            .map(|q| Scalar::from_rat(q.clone()))
            .collect();
        let base = hw_tableau(&lambda_scalars, &[1, 2, 3]).unwrap();
        let ep = EvalPoint::from_point(&base);
        for k in 1..=n {
            for i in 1..=k {
                let mat = m.matrix_of(&basis, |v| m.act_c(k, i, v));
                let expected = ep
                    .eval(&RatFn::from_poly(gamma_poly(k, i)))
                    .unwrap()
                    .as_rat()
                    .unwrap();
                assert_eq!(mat[0][0], expected, "generator ({},{})", k, i);
            }
        }
    }

    #[test]
    fn small_decomposition_multiplicities() {
        let m = VermaModule::antidominant_singular(3);
        let d = gt_decompose(&m, 3, 1).unwrap();
        // depth 0: the highest weight character with multiplicity 1
        let z0 = Shift::zero(3);
        let e0 = d.entries.iter().find(|e| e.shift == z0).unwrap();
        assert_eq!(e0.multiplicity, 1);
        // the fully-critical shift rows ((-1),(0,-1)) has the maximal
        // multiplicity 2 = 1! 2!
        let zc = Shift::from_rows(3, vec![vec![-1], vec![0, -1]]).unwrap();
        let ec = d.entries.iter().find(|e| e.shift == zc).unwrap();
        assert_eq!(ec.multiplicity, 2);
    }
}
