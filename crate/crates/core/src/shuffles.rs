//! The row-block parabolic group of a seed, its enumeration, shuffles
//! (minimal coset representatives) and the factorizations used by the
//! raising/lowering moves.

use crate::combin::{refined_partition, shift_in_d_set, IntervalPartition, Shift};
use crate::error::{GtError, Result};
use crate::perm::Permutation;

/// The parabolic group attached to a seed partition: the direct product
/// of the symmetric groups of its blocks (rows < n; row n is trivial).
#[derive(Clone, Debug)]
pub struct Parabolic {
    pub part: IntervalPartition,
}

impl Parabolic {
    pub fn new(part: IntervalPartition) -> Self {
        Parabolic { part }
    }

    pub fn n(&self) -> usize {
        self.part.n()
    }

    pub fn order(&self) -> u128 {
        self.part.order()
    }

    /// Every element, as full per-row permutations.
    pub fn elements(&self) -> Vec<Permutation> {
        let n = self.n();
        let mut out = vec![Permutation::identity(n)];
        for k in 1..=n {
            for &(a, b) in self.part.blocks(k) {
                if a == b {
                    continue;
                }
                let block: Vec<usize> = (a..=b).collect();
                let mut next = Vec::new();
                for perm_of_block in permutations_of(&block) {
                    for base in &out {
                        let mut p = base.clone();
                        for (t, &src) in block.iter().enumerate() {
                            p.rows[k - 1][src - 1] = perm_of_block[t] - 1;
                        }
                        next.push(p);
                    }
                }
                out = next;
            }
        }
        out.sort();
        out
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        let n = self.n();
        for k in 1..=n {
            for i in 1..=k {
                let img = p.map(k, i);
                let (a, b) = self.part.block_of(k, i);
                if img < a || img > b {
                    return false;
                }
            }
        }
        true
    }

    /// Longest element: the reversal of every block.
    pub fn longest(&self) -> Permutation {
        let n = self.n();
        let mut w = Permutation::identity(n);
        for k in 1..=n {
            for &(a, b) in self.part.blocks(k) {
                for i in a..=b {
                    w.rows[k - 1][i - 1] = (a + b - i) - 1;
                }
            }
        }
        w
    }

    /// Is `p` increasing over every block of `refined`?
    pub fn is_shuffle(p: &Permutation, refined: &IntervalPartition) -> bool {
        let n = refined.n();
        for k in 1..=n {
            for &(a, b) in refined.blocks(k) {
                for i in a..b {
                    if p.map(k, i) >= p.map(k, i + 1) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Minimal-length representative of `p`'s coset modulo the stabilizer
    /// of `z`: sort the images over every block of the refinement.
    pub fn shuffle_of(&self, p: &Permutation, z: &Shift) -> Permutation {
        let refined = refined_partition(&self.part, z);
        let mut out = p.clone();
        let n = self.n();
        for k in 1..=n {
            for &(a, b) in refined.blocks(k) {
                let mut imgs: Vec<usize> = (a..=b).map(|i| out.rows[k - 1][i - 1]).collect();
                imgs.sort_unstable();
                for (t, i) in (a..=b).enumerate() {
                    out.rows[k - 1][i - 1] = imgs[t];
                }
            }
        }
        out
    }

    /// All shuffles for `z`: elements increasing over every refined block.
    pub fn shuffles(&self, z: &Shift) -> Vec<Permutation> {
        let refined = refined_partition(&self.part, z);
        self.elements()
            .into_iter()
            .filter(|p| Self::is_shuffle(p, &refined))
            .collect()
    }

    /// Longest shuffle for `z` (minimal representative of the longest
    /// element's coset).
    pub fn longest_shuffle(&self, z: &Shift) -> Permutation {
        self.shuffle_of(&self.longest(), z)
    }

    /// Stabilizer of `z`: the parabolic of the refined partition.
    pub fn stabilizer(&self, z: &Shift) -> Result<Parabolic> {
        if !shift_in_d_set(&self.part, z) {
            return Err(GtError::ShiftNotAdmissible(format!("{:?}", z)));
        }
        Ok(Parabolic::new(refined_partition(&self.part, z)))
    }

    /// Covers of `u` below `upper` in Bruhat order, paired with the
    /// transposition positions (k, a, b) of the step `u -> u·t`.
    pub fn covers_below(
        &self,
        u: &Permutation,
        upper: &Permutation,
        elements: &[Permutation],
    ) -> Vec<(Permutation, (usize, usize, usize))> {
        let n = self.n();
        let lu = u.length();
        let mut out = Vec::new();
        for k in 1..=n {
            for &(a0, b0) in self.part.blocks(k) {
                for a in a0..=b0 {
                    for b in a + 1..=b0 {
                        let t = Permutation::transposition(n, k, a, b);
                        let w = u.compose(&t);
                        if w.length() == lu + 1 && w.bruhat_leq(upper) {
                            out.push((w, (k, a, b)));
                        }
                    }
                }
            }
        }
        let _ = elements;
        out
    }
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (t, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(t);
        for mut p in permutations_of(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Valid unit moves: `z + delta^{k,i}` stays admissible iff `i` starts a
/// refined block; `z - delta^{k,i}` iff `i` ends one.
pub fn delta_step_valid(
    part: &IntervalPartition,
    z: &Shift,
    k: usize,
    i: usize,
    sign: i64,
) -> bool {
    let n = part.n();
    if k >= n {
        return false;
    }
    let refined = refined_partition(part, z);
    let (a, b) = refined.block_of(k, i);
    if sign > 0 {
        i == a
    } else {
        i == b
    }
}

/// For a refined block `I = [a,b]` of row k and a sign, return the pair
/// `(shuffle factor, cycle factor)` whose product is the longest shuffle
/// at the shifted z. Raising factors through the backward cycle on I,
/// lowering through the forward cycle.
pub fn omega_delta_factorization(
    parab: &Parabolic,
    z: &Shift,
    k: usize,
    a: usize,
    b: usize,
    sign: i64,
) -> Result<(Permutation, Permutation)> {
    let n = parab.n();
    let refined = refined_partition(&parab.part, z);
    if !refined.blocks(k).contains(&(a, b)) {
        return Err(GtError::Precondition(format!(
            "[{},{}] is not a refined block of row {}",
            a, b, k
        )));
    }
    let (pos, cyc) = if sign > 0 {
        (a, Permutation::alpha(n, k, a, b))
    } else {
        (b, Permutation::beta(n, k, a, b))
    };
    let shifted = z.add_delta(k, pos, sign);
    if !shift_in_d_set(&parab.part, &shifted) {
        return Err(GtError::ShiftNotAdmissible(format!("{:?}", shifted)));
    }
    let target = parab.longest_shuffle(&shifted);
    let factor = target.compose(&cyc.inverse());
    Ok((factor, cyc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::{partition_of, Point};

    fn zero_parabolic(n: usize) -> Parabolic {
        Parabolic::new(partition_of(&Point::zero(n)).unwrap())
    }

    #[test]
    fn order_of_zero_seed_group() {
        assert_eq!(zero_parabolic(4).order(), 12); // 1! 2! 3!
        assert_eq!(zero_parabolic(5).order(), 288);
    }

    #[test]
    fn lagrange_on_small_shifts() {
        for n in [3usize, 4] {
            let parab = zero_parabolic(n);
            let shifts =
                crate::combin::enumerate_d_shifts_norm(&parab.part, 2);
            for z in shifts {
                let stab = parab.stabilizer(&z).unwrap();
                let shuffles = parab.shuffles(&z);
                assert_eq!(
                    shuffles.len() as u128 * stab.order(),
                    parab.order(),
                    "z = {:?}",
                    z
                );
            }
        }
    }

    #[test]
    fn longest_shuffle_product_formula() {
        // the longest shuffle equals the longest element times the
        // reversal of every refined block, computed independently
        for n in [3usize, 4] {
            let parab = zero_parabolic(n);
            for z in crate::combin::enumerate_d_shifts_norm(&parab.part, 2) {
                let refined = refined_partition(&parab.part, &z);
                let mut prod = parab.longest();
                for k in 1..n {
                    for &(a, b) in refined.blocks(k) {
                        prod = prod.compose(&Permutation::reversal(n, k, a, b));
                    }
                }
                assert_eq!(parab.longest_shuffle(&z), prod, "z = {:?}", z);
            }
        }
    }

    #[test]
    fn trivial_and_full_stabilizer_cases() {
        let parab = zero_parabolic(4);
        // z = 0: full stabilizer, only the identity shuffle
        let z0 = Shift::zero(4);
        assert_eq!(parab.shuffles(&z0).len(), 1);
        assert!(parab.longest_shuffle(&z0).is_identity());
        // strictly decreasing rows: trivial stabilizer
        let z = Shift::from_rows(4, vec![vec![0], vec![0, -1], vec![0, -1, -2]]).unwrap();
        assert_eq!(parab.stabilizer(&z).unwrap().order(), 1);
        assert_eq!(parab.shuffles(&z).len(), 12);
        assert_eq!(parab.longest_shuffle(&z), parab.longest());
    }

    #[test]
    fn delta_step_validity() {
        let parab = zero_parabolic(3);
        let z0 = Shift::zero(3);
        assert!(delta_step_valid(&parab.part, &z0, 2, 1, 1));
        assert!(!delta_step_valid(&parab.part, &z0, 2, 1, -1));
        assert!(!delta_step_valid(&parab.part, &z0, 2, 2, 1));
        assert!(delta_step_valid(&parab.part, &z0, 2, 2, -1));
    }

    #[test]
    fn factorization_multiplies_back() {
        let parab = zero_parabolic(3);
        let z0 = Shift::zero(3);
        for sign in [1i64, -1] {
            let (factor, cyc) = omega_delta_factorization(&parab, &z0, 2, 1, 2, sign).unwrap();
            let shifted = if sign > 0 {
                z0.add_delta(2, 1, 1)
            } else {
                z0.add_delta(2, 2, -1)
            };
            assert_eq!(
                factor.compose(&cyc),
                parab.longest_shuffle(&shifted)
            );
            // the factor is a shuffle for the original z
            let refined = refined_partition(&parab.part, &z0);
            assert!(Parabolic::is_shuffle(&factor, &refined), "sign {}", sign);
        }
        // singleton block: the cycle factor is the identity
        let z = Shift::from_rows(3, vec![vec![0], vec![0, -1]]).unwrap();
        let (factor, cyc) = omega_delta_factorization(&parab, &z, 2, 1, 1, 1).unwrap();
        assert!(cyc.is_identity());
        assert_eq!(factor, parab.longest_shuffle(&z.add_delta(2, 1, 1)));
    }
}
