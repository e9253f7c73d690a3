//! Polyhedral support cones on shift coordinates: the inequality systems
//! cut out by an oriented position graph, their generators and ranks, and
//! the closed-form support/essential-support tests for the zero seed.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combin::{
    inner_indices, partition_of, shift_in_d_set, Index, IntervalPartition, Point, Shift,
};
use crate::error::{GtError, Result};
use crate::graph::{orient, split, GtGraph};
use crate::scalar::Rat;
use crate::shuffles::Parabolic;

/// A single integral inequality `z_pos - z_neg REL rhs` (or `z_pos REL
/// rhs` when `neg` is absent).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ineq {
    pub pos: Index,
    pub neg: Option<Index>,
    pub strict_greater: bool,
    pub rhs: i64,
}

impl Ineq {
    pub fn holds(&self, z: &Shift) -> bool {
        let mut lhs = z.get(self.pos.k, self.pos.i);
        if let Some(n) = self.neg {
            lhs -= z.get(n.k, n.i);
        }
        if self.strict_greater {
            lhs > self.rhs
        } else {
            lhs <= self.rhs
        }
    }

    pub fn render(&self) -> String {
        let lhs = match self.neg {
            Some(n) => format!("z[{},{}] - z[{},{}]", self.pos.k, self.pos.i, n.k, n.i),
            None => format!("z[{},{}]", self.pos.k, self.pos.i),
        };
        if self.strict_greater {
            format!("{} > {}", lhs, self.rhs)
        } else {
            format!("{} <= {}", lhs, self.rhs)
        }
    }
}

/// Finite system of integral inequalities with an optional generator list.
#[derive(Clone, Debug, Default)]
pub struct Cone {
    pub n: usize,
    pub ineqs: Vec<Ineq>,
    pub generators: Vec<Shift>,
}

impl Cone {
    pub fn contains(&self, z: &Shift) -> bool {
        self.ineqs.iter().all(|q| q.holds(z))
    }

    pub fn with_generators(mut self, gens: Vec<Shift>) -> Result<Self> {
        for g in &gens {
            if !self.contains(g) {
                return Err(GtError::Precondition(format!(
                    "generator {:?} violates the inequality system",
                    g
                )));
            }
        }
        self.generators = gens;
        Ok(self)
    }

    /// Rank of the rational span of the generators.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let coords = inner_indices(n);
        let mut rows: Vec<Vec<Rat>> = self
            .generators
            .iter()
            .map(|g| {
                coords
                    .iter()
                    .map(|p| Rat::from_integer(BigInt::from(g.get(p.k, p.i))))
                    .collect()
            })
            .collect();
        let mut rank = 0;
        let cols = coords.len();
        for col in 0..cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = Rat::from_integer(BigInt::from(1)) / rows[rank][col].clone();
            for c in 0..cols {
                rows[rank][c] = &rows[rank][c] * &inv;
            }
            for r in 0..rows.len() {
                if r != rank && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in 0..cols {
                        let delta = &rows[rank][c] * &f;
                        rows[r][c] = &rows[r][c] - &delta;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn render(&self) -> String {
        self.ineqs
            .iter()
            .map(|q| q.render())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// The inequality system of the shifts whose oriented graph matches (for
/// `closed = false`) or dominates (for `closed = true`, downward edges
/// only) the oriented graph of `seed + w`.
pub fn cone_of(seed: &Point, w: &Shift, closed: bool) -> Result<Cone> {
    let n = seed.n();
    let part = partition_of(seed)?;
    if !shift_in_d_set(&part, w) {
        return Err(GtError::ShiftNotAdmissible(format!("{:?}", w)));
    }
    let oriented = orient(seed, w);
    let mut ineqs = Vec::new();
    // same-row admissibility constraints (adjacent positions per block)
    for k in 1..n {
        for &(a, b) in part.blocks(k) {
            for i in a..b {
                ineqs.push(Ineq {
                    pos: Index::new(k, i + 1),
                    neg: Some(Index::new(k, i)),
                    strict_greater: false,
                    rhs: 0,
                });
            }
        }
    }
    for (from, to) in &oriented.edges {
        if from.k == to.k {
            continue;
        }
        if from.k == n && to.k == n - 1 {
            // downward edge out of the top row: bounded above by the
            // integral gap of the seed entries
            let gap = seed
                .get(from.k, from.i)
                .integer_difference(seed.get(to.k, to.i))
                .expect("edge endpoints are integer-linked");
            ineqs.push(Ineq {
                pos: *to,
                neg: None,
                strict_greater: false,
                rhs: i64::try_from(&gap).expect("gap fits"),
            });
        } else if to.k == n && from.k == n - 1 {
            if !closed {
                let gap = seed
                    .get(to.k, to.i)
                    .integer_difference(seed.get(from.k, from.i))
                    .expect("edge endpoints are integer-linked");
                ineqs.push(Ineq {
                    pos: *from,
                    neg: None,
                    strict_greater: true,
                    rhs: i64::try_from(&gap).expect("gap fits"),
                });
            }
        } else if from.k == to.k + 1 {
            // downward edge between inner rows: z at the head stays
            // weakly below z at the tail
            ineqs.push(Ineq {
                pos: *to,
                neg: Some(*from),
                strict_greater: false,
                rhs: 0,
            });
        } else if to.k == from.k + 1 && !closed {
            ineqs.push(Ineq {
                pos: *from,
                neg: Some(*to),
                strict_greater: true,
                rhs: 0,
            });
        }
    }
    Ok(Cone {
        n,
        ineqs,
        generators: Vec::new(),
    })
}

/// Generators of the cone of shifts preserving the seed's oriented graph:
/// one generator per inner position, with entry -1 exactly on the
/// positions reachable from it (including itself).
pub fn seed_cone_generators(seed: &Point) -> Result<Vec<Shift>> {
    let n = seed.n();
    if !crate::combin::is_seed(seed) {
        return Err(GtError::NotSeed(format!("{:?}", seed)));
    }
    let oriented = orient(seed, &Shift::zero(n));
    let mut out = Vec::new();
    for p in inner_indices(n) {
        let reach = oriented.reachable_set(p);
        let mut g = Shift::zero(n);
        for q in reach {
            if q.k < n {
                g.set(q.k, q.i, -1);
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// The sharpness bound: group order divided by the stabilizer order.
pub fn fo_bound(parab: &Parabolic, z: &Shift) -> Result<u128> {
    let stab = parab.stabilizer(z)?;
    Ok(parab.order() / stab.order())
}

/// Build a shift in the seed's cone whose stabilizer is exactly the
/// parabolic described by `orbits` (an interval partition refining the
/// seed partition on rows < n): equalities inside each orbit, strict
/// drops across orbit boundaries, rows capped so every downward edge of
/// the seed's oriented graph is preserved.
pub fn parabolic_realization(seed: &Point, orbits: &IntervalPartition) -> Result<Shift> {
    let n = seed.n();
    let part = partition_of(seed)?;
    if !part.refines(orbits) {
        return Err(GtError::Precondition(
            "orbit partition does not refine the seed partition".into(),
        ));
    }
    let oriented = orient(seed, &Shift::zero(n));
    let mut z = Shift::zero(n);
    for k in (1..n).rev() {
        for &(a, b) in part.blocks(k) {
            // cap from the row above (or the top-row gaps)
            let mut cap = i64::MAX;
            for i in a..=b {
                for from in oriented.predecessors(Index::new(k, i)) {
                    if from.k != k + 1 {
                        continue;
                    }
                    let c = if from.k == n {
                        let gap = seed
                            .get(from.k, from.i)
                            .integer_difference(seed.get(k, i))
                            .expect("linked");
                        i64::try_from(&gap).expect("gap fits")
                    } else {
                        z.get(from.k, from.i)
                    };
                    cap = cap.min(c);
                }
            }
            if cap == i64::MAX {
                cap = 0;
            }
            let mut value = cap;
            let mut prev_orbit = orbits.block_of(k, a);
            for i in a..=b {
                let orb = orbits.block_of(k, i);
                if orb != prev_orbit {
                    value -= 1;
                    prev_orbit = orb;
                }
                z.set(k, i, value);
            }
        }
    }
    Ok(z)
}

/// Closed-form support test for the zero seed: admissible, every entry
/// weakly below zero, and `z_{k-1,j} <= z_{k,i}` for all `i <= j`.
pub fn verma_supp_test(z: &Shift) -> bool {
    let n = z.n;
    let part = zero_partition(n);
    if !shift_in_d_set(&part, z) {
        return false;
    }
    for k in 1..n {
        for i in 1..=k {
            if z.get(k, i) > 0 {
                return false;
            }
        }
    }
    for k in 2..n {
        for i in 1..=k {
            for j in i..k {
                if z.get(k - 1, j) > z.get(k, i) {
                    return false;
                }
            }
        }
    }
    true
}

/// Closed-form essential-support test for the zero seed: membership in
/// the cone preserving every downward edge, i.e. nonincreasing rows with
/// every entry of each row weakly below every entry of the row above
/// (top row treated as zero).
pub fn verma_essupp_test(z: &Shift) -> bool {
    let n = z.n;
    let part = zero_partition(n);
    if !shift_in_d_set(&part, z) {
        return false;
    }
    for i in 1..n {
        if z.get(n - 1, i) > 0 {
            return false;
        }
    }
    for k in 2..n {
        // rows are nonincreasing, so compare the extremes
        if z.get(k - 1, 1) > z.get(k, k) {
            return false;
        }
    }
    true
}

fn zero_partition(n: usize) -> IntervalPartition {
    partition_of(&Point::zero(n)).expect("zero point is normal")
}

/// A family of (downward graph, cone, witness shift) triples collected by
/// enumerating shifts and grouping by the downward part of the oriented
/// graph, ordered by edge count (minimal first).
pub struct ConeFamily {
    pub members: Vec<(GtGraph, Cone, Shift)>,
}

/// Group the shifts of `box_shifts` satisfying `keep` by their downward
/// graph part.
pub fn family_from_predicate(
    seed: &Point,
    box_shifts: &[Shift],
    keep: &dyn Fn(&Shift) -> bool,
) -> Result<ConeFamily> {
    let mut members: Vec<(GtGraph, Cone, Shift)> = Vec::new();
    for z in box_shifts {
        if !keep(z) {
            continue;
        }
        let plus = split(&orient(seed, z)).0;
        if members.iter().any(|(g, _, _)| g == &plus) {
            continue;
        }
        let cone = cone_of(seed, z, false)?;
        members.push((plus, cone, z.clone()));
    }
    members.sort_by_key(|(g, _, _)| g.edge_count());
    Ok(ConeFamily { members })
}

/// All standard parabolic orbit partitions refining the seed partition.
pub fn standard_parabolics(part: &IntervalPartition) -> Vec<IntervalPartition> {
    let n = part.n();
    let mut rows_choices: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    for k in 1..=n {
        let mut choices: Vec<Vec<(usize, usize)>> = vec![vec![]];
        if k < n {
            for &(a, b) in part.blocks(k) {
                let pairs: Vec<usize> = (a..b).collect();
                let mut next = Vec::new();
                for mask in 0..(1u32 << pairs.len()) {
                    for base in &choices {
                        let mut cuts = base.clone();
                        let mut start = a;
                        for (t, &i) in pairs.iter().enumerate() {
                            if mask & (1 << t) == 0 {
                                cuts.push((start, i));
                                start = i + 1;
                            }
                        }
                        cuts.push((start, b));
                        next.push(cuts);
                    }
                }
                choices = next;
            }
        } else {
            choices = vec![(1..=k).map(|i| (i, i)).collect()];
        }
        rows_choices.push(choices);
    }
    let mut out = vec![IntervalPartition { rows: vec![] }];
    for row_choice in rows_choices {
        let mut next = Vec::new();
        for base in &out {
            for choice in &row_choice {
                let mut rows = base.rows.clone();
                let mut sorted = choice.clone();
                sorted.sort();
                rows.push(sorted);
                next.push(IntervalPartition { rows });
            }
        }
        out = next;
    }
    out
}

/// Bounded-box monoid membership: is `z` a nonnegative integral
/// combination of the generators with coefficients up to `coeff_bound`?
pub fn in_monoid(generators: &[Shift], z: &Shift, coeff_bound: i64) -> bool {
    fn rec(gens: &[Shift], target: &Shift, bound: i64) -> bool {
        if gens.is_empty() {
            return target.is_zero();
        }
        let g = &gens[0];
        for c in 0..=bound {
            let rest = target.add(&g.scale(-c));
            if rec(&gens[1..], &rest, bound) {
                return true;
            }
        }
        false
    }
    rec(generators, z, coeff_bound)
}

/// A fully-critical representative inside the seed cone: realize the full
/// seed parabolic as a stabilizer.
pub fn fully_critical_staircase(seed: &Point) -> Result<Shift> {
    let part = partition_of(seed)?;
    parabolic_realization(seed, &part)
}
