//! Triangular points, integral shifts, normal forms, seeds, interval
//! partitions and shuffles.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::error::{GtError, Result};
use crate::perm::Permutation;
use crate::scalar::Scalar;

/// A position (k, i) with 1 <= i <= k <= n.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Index {
    pub k: usize,
    pub i: usize,
}

impl Index {
    pub fn new(k: usize, i: usize) -> Self {
        Index { k, i }
    }
}

/// All positions of the triangle for rank `n`, row-major from row 1.
pub fn all_indices(n: usize) -> Vec<Index> {
    let mut out = Vec::new();
    for k in 1..=n {
        for i in 1..=k {
            out.push(Index::new(k, i));
        }
    }
    out
}

/// Positions restricted to rows 1..n-1.
pub fn inner_indices(n: usize) -> Vec<Index> {
    all_indices(n).into_iter().filter(|p| p.k < n).collect()
}

/// Triangular array of exact scalars; row k has k entries.
#[derive(Clone, PartialEq, Eq)]
pub struct Point {
    pub rows: Vec<Vec<Scalar>>,
}

impl Point {
    pub fn zero(n: usize) -> Self {
        Point {
            rows: (1..=n).map(|k| vec![Scalar::zero(); k]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, k: usize, i: usize) -> &Scalar {
        &self.rows[k - 1][i - 1]
    }

    pub fn set(&mut self, k: usize, i: usize, v: Scalar) {
        self.rows[k - 1][i - 1] = v;
    }

    pub fn validate(&self) -> Result<()> {
        for (kk, row) in self.rows.iter().enumerate() {
            if row.len() != kk + 1 {
                return Err(GtError::Malformed(format!(
                    "row {} has {} entries, expected {}",
                    kk + 1,
                    row.len(),
                    kk + 1
                )));
            }
        }
        Ok(())
    }

    pub fn add_shift(&self, z: &Shift) -> Point {
        let mut out = self.clone();
        for k in 1..self.n() {
            for i in 1..=k {
                out.rows[k - 1][i - 1] = out.rows[k - 1][i - 1].add_int(z.get(k, i));
            }
        }
        out
    }

    /// Apply a permutation: entry at position i moves to position sigma(i).
    pub fn permute(&self, sigma: &Permutation) -> Point {
        Point {
            rows: sigma.apply_rows(&self.rows),
        }
    }

    /// Whether integer-linked entries weakly decrease along each row
    /// segment, with each linkage class occupying a contiguous interval.
    pub fn is_normal_form(&self) -> bool {
        for row in &self.rows {
            let k = row.len();
            for a in 0..k {
                for b in a + 1..k {
                    if let Some(d) = row[a].integer_difference(&row[b]) {
                        if d.is_negative() {
                            return false;
                        }
                        // everything between must be in the same class
                        for m in a + 1..b {
                            if row[a].integer_difference(&row[m]).is_none() {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|s| s.to_string()).collect();
                cells.join(", ")
            })
            .collect();
        write!(f, "Point[{}]", rows.join(" | "))
    }
}

/// Integral shift with row n identically zero. Only rows 1..n-1 are stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shift {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

impl Shift {
    pub fn zero(n: usize) -> Self {
        Shift {
            n,
            rows: (1..n).map(|k| vec![0; k]).collect(),
        }
    }

    pub fn from_rows(n: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.len() != n - 1 {
            return Err(GtError::Malformed(format!(
                "shift must have {} rows, found {}",
                n - 1,
                rows.len()
            )));
        }
        for (kk, row) in rows.iter().enumerate() {
            if row.len() != kk + 1 {
                return Err(GtError::Malformed(format!(
                    "shift row {} has {} entries",
                    kk + 1,
                    row.len()
                )));
            }
        }
        Ok(Shift { n, rows })
    }

    pub fn get(&self, k: usize, i: usize) -> i64 {
        if k >= self.n {
            0
        } else {
            self.rows[k - 1][i - 1]
        }
    }

    pub fn set(&mut self, k: usize, i: usize, v: i64) {
        assert!(k < self.n, "row n of a shift is identically zero");
        self.rows[k - 1][i - 1] = v;
    }

    pub fn delta(n: usize, k: usize, i: usize, sign: i64) -> Self {
        let mut z = Shift::zero(n);
        z.set(k, i, sign);
        z
    }

    pub fn add(&self, other: &Shift) -> Shift {
        let mut out = self.clone();
        for (r, o) in out.rows.iter_mut().zip(&other.rows) {
            for (x, y) in r.iter_mut().zip(o) {
                *x += y;
            }
        }
        out
    }

    pub fn add_delta(&self, k: usize, i: usize, sign: i64) -> Shift {
        let mut out = self.clone();
        out.rows[k - 1][i - 1] += sign;
        out
    }

    pub fn scale(&self, c: i64) -> Shift {
        let mut out = self.clone();
        for r in out.rows.iter_mut() {
            for x in r.iter_mut() {
                *x *= c;
            }
        }
        out
    }

    pub fn norm1(&self) -> i64 {
        self.rows.iter().flatten().map(|x| x.abs()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|&x| x == 0)
    }

    /// Entry at sigma^{-1}(i): the permuted shift (sigma . z).
    pub fn permute(&self, sigma: &Permutation) -> Shift {
        Shift {
            n: self.n,
            rows: sigma.apply_rows(&self.rows),
        }
    }
}

impl fmt::Debug for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "z{{{}}}", rows.join(" "))
    }
}

/// Interval partition of the triangle: per row, a list of (a, b) blocks
/// covering 1..k in order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntervalPartition {
    pub rows: Vec<Vec<(usize, usize)>>,
}

impl IntervalPartition {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn blocks(&self, k: usize) -> &[(usize, usize)] {
        &self.rows[k - 1]
    }

    /// The block of row k containing position i.
    pub fn block_of(&self, k: usize, i: usize) -> (usize, usize) {
        *self.rows[k - 1]
            .iter()
            .find(|(a, b)| *a <= i && i <= *b)
            .expect("position covered")
    }

    pub fn order(&self) -> u128 {
        let mut acc: u128 = 1;
        for row in &self.rows {
            for (a, b) in row {
                let size = (b - a + 1) as u128;
                let mut f: u128 = 1;
                for t in 2..=size {
                    f *= t;
                }
                acc *= f;
            }
        }
        acc
    }

    /// Is `other` a refinement of `self` (every block of `other` is
    /// contained in a block of `self`)?
    pub fn refines(&self, other: &IntervalPartition) -> bool {
        other.rows.iter().enumerate().all(|(kk, blocks)| {
            blocks
                .iter()
                .all(|&(a, b)| self.block_of(kk + 1, a) == self.block_of(kk + 1, b))
        })
    }
}

/// Row-interval partition of a normal-form point: blocks are the integer
/// linkage classes (rows < n) and singletons on row n.
pub fn partition_of(point: &Point) -> Result<IntervalPartition> {
    if !point.is_normal_form() {
        return Err(GtError::NotNormalForm(format!("{:?}", point)));
    }
    let n = point.n();
    let mut rows = Vec::new();
    for k in 1..=n {
        let mut blocks = Vec::new();
        if k == n {
            for i in 1..=k {
                blocks.push((i, i));
            }
        } else {
            let mut a = 1;
            for i in 1..k {
                if point
                    .get(k, i)
                    .integer_difference(point.get(k, i + 1))
                    .is_none()
                {
                    blocks.push((a, i));
                    a = i + 1;
                }
            }
            blocks.push((a, k));
        }
        rows.push(blocks);
    }
    Ok(IntervalPartition { rows })
}

/// Normal form: within each row, group integer-linked entries into
/// contiguous runs (ordered by first occurrence) sorted by weakly
/// decreasing integer offset, stably.
pub fn normal_form(point: &Point) -> (Point, Permutation) {
    let n = point.n();
    let mut sigma = Permutation::identity(n);
    let mut out = point.clone();
    for k in 1..=n {
        let row = &point.rows[k - 1];
        // classes by first occurrence
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..k {
            let mut placed = false;
            for class in classes.iter_mut() {
                if row[class[0]].integer_difference(&row[i]).is_some() {
                    class.push(i);
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(vec![i]);
            }
        }
        // order each class by decreasing rational offset, stable
        let mut target_order: Vec<usize> = Vec::with_capacity(k);
        for class in classes.iter() {
            let mut c = class.clone();
            let base = &row[class[0]];
            c.sort_by(|&p, &q| {
                let dp = row[p].integer_difference(base).unwrap();
                let dq = row[q].integer_difference(base).unwrap();
                dq.cmp(&dp).then(p.cmp(&q))
            });
            target_order.extend(c);
        }
        // position src moves to position dst
        let mut one_line = vec![0; k];
        for (dst, &src) in target_order.iter().enumerate() {
            one_line[src] = dst + 1;
        }
        sigma.set_row(k, &one_line);
        for (dst, &src) in target_order.iter().enumerate() {
            out.rows[k - 1][dst] = row[src].clone();
        }
    }
    debug_assert!(out.is_normal_form());
    (out, sigma)
}

/// Seed predicate: normal form, and on each connected component of the
/// integer-linkage graph the below-top-row entries are all equal and
/// bounded above by every top-row member of the component.
pub fn is_seed(point: &Point) -> bool {
    if !point.is_normal_form() {
        return false;
    }
    let n = point.n();
    let comps = linkage_components(point);
    for comp in comps {
        let below: Vec<&Index> = comp.iter().filter(|p| p.k < n).collect();
        if below.is_empty() {
            continue;
        }
        let first = point.get(below[0].k, below[0].i);
        for p in &below {
            if point.get(p.k, p.i) != first {
                return false;
            }
        }
        for p in comp.iter().filter(|p| p.k == n) {
            let top = point.get(p.k, p.i);
            match top.integer_difference(first) {
                Some(d) => {
                    if d.is_negative() {
                        return false;
                    }
                }
                None => return false,
            }
        }
    }
    true
}

/// Connected components of the adjacency "integer difference and the rows
/// differ by at most one".
pub fn linkage_components(point: &Point) -> Vec<Vec<Index>> {
    let n = point.n();
    let idx = all_indices(n);
    let pos: BTreeMap<Index, usize> = idx.iter().enumerate().map(|(t, p)| (*p, t)).collect();
    let mut dsu: Vec<usize> = (0..idx.len()).collect();
    fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
        if dsu[x] != x {
            let r = find(dsu, dsu[x]);
            dsu[x] = r;
        }
        dsu[x]
    }
    for (t, p) in idx.iter().enumerate() {
        for q in &idx {
            if q.k < p.k || (q.k == p.k && q.i <= p.i) {
                continue;
            }
            if q.k > p.k + 1 {
                continue;
            }
            if point
                .get(p.k, p.i)
                .integer_difference(point.get(q.k, q.i))
                .is_some()
            {
                let (a, b) = (find(&mut dsu, t), find(&mut dsu, pos[q]));
                dsu[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Index>> = BTreeMap::new();
    for (t, p) in idx.iter().enumerate() {
        groups.entry(find(&mut dsu, t)).or_default().push(*p);
    }
    groups.into_values().collect()
}

/// Canonical seed of the orbit of `point` under row permutations and
/// integral shifts of rows 1..n-1. Returns `(seed, shift, sigma)` with
/// `sigma(point) = seed + shift`.
///
/// Canonical choices: each linkage component with top-row members gets the
/// minimum of those members as its common below-top value; a component
/// without top-row members gets its fractional-part representative in
/// [0,1). Within each row the linkage classes are arranged by a content
/// key so that every orbit element produces the same seed.
pub fn seed_of(point: &Point) -> (Point, Shift, Permutation) {
    let n = point.n();
    let (w, sigma0) = normal_form(point);
    let comps = linkage_components(&w);
    let mut seeded = w.clone();
    for comp in &comps {
        let below: Vec<Index> = comp.iter().filter(|p| p.k < n).copied().collect();
        if below.is_empty() {
            continue;
        }
        let tops: Vec<Index> = comp.iter().filter(|p| p.k == n).copied().collect();
        let value = if tops.is_empty() {
            // fractional representative: v - floor(v)
            let v = w.get(below[0].k, below[0].i).clone();
            let floor = v.rational.floor();
            let mut out = v.clone();
            out.rational = &v.rational - &floor;
            out
        } else {
            let mut m = w.get(tops[0].k, tops[0].i).clone();
            for t in &tops[1..] {
                let other = w.get(t.k, t.i);
                if other.integer_difference(&m).map(|d| d.is_negative()) == Some(true) {
                    m = other.clone();
                }
            }
            m
        };
        for p in &below {
            seeded.set(p.k, p.i, value.clone());
        }
    }
    // canonical class arrangement inside each row
    let mut sigma1 = Permutation::identity(n);
    let mut arranged = seeded.clone();
    for k in 1..=n {
        let row = &seeded.rows[k - 1];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..k {
            let mut placed = false;
            for class in classes.iter_mut() {
                if row[class[0]].integer_difference(&row[i]).is_some() {
                    class.push(i);
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(vec![i]);
            }
        }
        classes.sort_by_key(|c| {
            c.iter()
                .map(|&i| row[i].sort_key())
                .collect::<Vec<_>>()
        });
        let mut target: Vec<usize> = Vec::new();
        for c in &classes {
            target.extend(c);
        }
        let mut one_line = vec![0; k];
        for (dst, &src) in target.iter().enumerate() {
            one_line[src] = dst + 1;
        }
        sigma1.set_row(k, &one_line);
        for (dst, &src) in target.iter().enumerate() {
            arranged.rows[k - 1][dst] = row[src].clone();
        }
    }
    let sigma = sigma1.compose(&sigma0);
    // shift = sigma(point) - seed; rows < n only
    let moved = point.permute(&sigma);
    let mut shift = Shift::zero(n);
    for k in 1..n {
        for i in 1..=k {
            let d = moved
                .get(k, i)
                .integer_difference(arranged.get(k, i))
                .expect("seed shift must be integral");
            shift.set(
                k,
                i,
                i64::try_from(&d).expect("seed shift fits in i64"),
            );
        }
    }
    debug_assert!(is_seed(&arranged), "constructed point is a seed");
    (arranged, shift, sigma)
}

/// The admissible-shift predicate: z restricted to each block of the
/// seed's partition is nonincreasing.
pub fn shift_in_d_set(part: &IntervalPartition, z: &Shift) -> bool {
    let n = part.n();
    for k in 1..n {
        for &(a, b) in part.blocks(k) {
            for i in a..b {
                if z.get(k, i) < z.get(k, i + 1) {
                    return false;
                }
            }
        }
    }
    true
}

/// Refinement of the seed partition by equal z-values; rows < n only,
/// singletons on row n.
pub fn refined_partition(part: &IntervalPartition, z: &Shift) -> IntervalPartition {
    let n = part.n();
    let mut rows = Vec::new();
    for k in 1..=n {
        let mut blocks = Vec::new();
        if k == n {
            for i in 1..=k {
                blocks.push((i, i));
            }
        } else {
            for &(a, b) in part.blocks(k) {
                let mut start = a;
                for i in a..b {
                    if z.get(k, i) != z.get(k, i + 1) {
                        blocks.push((start, i));
                        start = i + 1;
                    }
                }
                blocks.push((start, b));
            }
        }
        rows.push(blocks);
    }
    IntervalPartition { rows }
}

/// All admissible shifts with 1-norm at most `max_norm`.
pub fn enumerate_d_shifts_norm(part: &IntervalPartition, max_norm: i64) -> Vec<Shift> {
    enumerate_d_shifts(part, &|z| z.norm1() <= max_norm, max_norm, -max_norm)
}

/// All admissible shifts with every entry in `[lo, hi]`.
pub fn enumerate_d_shifts_box(part: &IntervalPartition, lo: i64, hi: i64) -> Vec<Shift> {
    enumerate_d_shifts(part, &|_| true, hi, lo)
}

fn enumerate_d_shifts(
    part: &IntervalPartition,
    keep: &dyn Fn(&Shift) -> bool,
    hi: i64,
    lo: i64,
) -> Vec<Shift> {
    let n = part.n();
    let positions = inner_indices(n);
    let mut out = Vec::new();
    let mut z = Shift::zero(n);
    fn rec(
        positions: &[Index],
        t: usize,
        part: &IntervalPartition,
        z: &mut Shift,
        lo: i64,
        hi: i64,
        keep: &dyn Fn(&Shift) -> bool,
        out: &mut Vec<Shift>,
    ) {
        if t == positions.len() {
            if keep(z) {
                out.push(z.clone());
            }
            return;
        }
        let p = positions[t];
        // stay weakly below the left neighbour inside the same block
        let (a, _) = part.block_of(p.k, p.i);
        let cap = if p.i > a { z.get(p.k, p.i - 1) } else { hi };
        for v in lo..=cap.min(hi) {
            z.set(p.k, p.i, v);
            rec(positions, t + 1, part, z, lo, hi, keep, out);
        }
        z.set(p.k, p.i, 0);
    }
    rec(&positions, 0, part, &mut z, lo, hi, keep, &mut out);
    out
}

#[doc(hidden)]
pub mod tests_support {
    use super::*;

    /// Shifts in the admissible set with 1-norm bounded by `bound`.
    pub fn enumerate_shifts(part: &IntervalPartition, bound: i64) -> Vec<Shift> {
        enumerate_d_shifts_norm(part, bound)
    }
}
