//! Permutations with one factor per row: elements of S_1 x S_2 x ... x S_n.
//!
//! Composition is right-to-left: `(a.compose(b))(i) = a(b(i))`. Length is
//! the sum of per-row inversion counts and Bruhat order is componentwise.

use std::fmt;

/// One-line notation per row; row k holds a permutation of `0..k`
/// (0-based internally, 1-based in all I/O).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    pub rows: Vec<Vec<usize>>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            rows: (1..=n).map(|k| (0..k).collect()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().enumerate().all(|(i, &v)| i == v))
    }

    /// Image of position `i` (1-based) in row `k` (1-based).
    pub fn map(&self, k: usize, i: usize) -> usize {
        self.rows[k - 1][i - 1] + 1
    }

    /// Set the row-k factor from 1-based one-line notation.
    pub fn set_row(&mut self, k: usize, one_line: &[usize]) {
        assert_eq!(one_line.len(), k);
        self.rows[k - 1] = one_line.iter().map(|&v| v - 1).collect();
    }

    /// Transposition (a b) in row k, identity elsewhere (1-based).
    pub fn transposition(n: usize, k: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.rows[k - 1].swap(a - 1, b - 1);
        p
    }

    /// The cycle sending b -> b-1 -> ... -> a -> b in row k: the
    /// "collapse" permutation attached to a raising move on [a,b].
    pub fn alpha(n: usize, k: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        let row = &mut p.rows[k - 1];
        for i in a..=b {
            row[i - 1] = if i == a { b - 1 } else { i - 2 };
        }
        p
    }

    /// The cycle sending a -> a+1 -> ... -> b -> a in row k: the
    /// inverse of [`Permutation::alpha`], attached to lowering moves.
    pub fn beta(n: usize, k: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        let row = &mut p.rows[k - 1];
        for i in a..=b {
            row[i - 1] = if i == b { a - 1 } else { i };
        }
        p
    }

    /// Reversal of the interval [a,b] in row k.
    pub fn reversal(n: usize, k: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        let row = &mut p.rows[k - 1];
        for i in a..=b {
            row[i - 1] = (b + a - i) - 1;
        }
        p
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| b.iter().map(|&v| a[v]).collect())
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            rows: self
                .rows
                .iter()
                .map(|r| {
                    let mut inv = vec![0; r.len()];
                    for (i, &v) in r.iter().enumerate() {
                        inv[v] = i;
                    }
                    inv
                })
                .collect(),
        }
    }

    pub fn row_length(row: &[usize]) -> usize {
        let mut c = 0;
        for i in 0..row.len() {
            for j in i + 1..row.len() {
                if row[i] > row[j] {
                    c += 1;
                }
            }
        }
        c
    }

    pub fn length(&self) -> usize {
        self.rows.iter().map(|r| Self::row_length(r)).sum()
    }

    /// Componentwise Bruhat order via the rank-matrix criterion.
    pub fn bruhat_leq(&self, other: &Permutation) -> bool {
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| row_bruhat_leq(a, b))
    }

    /// Action on shifts/points: position i moves to sigma(i).
    /// Returns the row-wise permuted copy of `values`.
    pub fn apply_rows<T: Clone>(&self, values: &[Vec<T>]) -> Vec<Vec<T>> {
        values
            .iter()
            .enumerate()
            .map(|(kk, row)| {
                let fac = &self.rows[kk];
                let mut out = row.clone();
                for (i, &v) in fac.iter().enumerate() {
                    out[v] = row[i].clone();
                }
                out
            })
            .collect()
    }
}

/// u <= w in Bruhat order on a single symmetric group factor.
/// Criterion: for all i,j, #{a <= i : u(a) <= j} >= #{a <= i : w(a) <= j}.
pub fn row_bruhat_leq(u: &[usize], w: &[usize]) -> bool {
    let n = u.len();
    debug_assert_eq!(w.len(), n);
    for i in 0..n {
        for j in 0..n {
            let cu = (0..=i).filter(|&a| u[a] <= j).count();
            let cw = (0..=i).filter(|&a| w[a] <= j).count();
            if cu < cw {
                return false;
            }
        }
    }
    true
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "[")?;
        for (k, row) in self.rows.iter().enumerate() {
            if !first {
                write!(f, " | ")?;
            }
            first = false;
            let _ = k;
            let s: Vec<String> = row.iter().map(|v| (v + 1).to_string()).collect();
            write!(f, "{}", s.join(","))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn all_perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }

    /// Transposition-chain Bruhat oracle: u <= w iff w is reachable from
    /// u by transpositions that each increase the inversion count.
    fn bruhat_oracle(u: &[usize], w: &[usize]) -> bool {
        if u == w {
            return true;
        }
        let lu = Permutation::row_length(u);
        let lw = Permutation::row_length(w);
        if lu >= lw {
            return false;
        }
        let mut frontier: BTreeSet<Vec<usize>> = BTreeSet::new();
        frontier.insert(u.to_vec());
        for _ in lu..lw {
            let mut next = BTreeSet::new();
            for p in &frontier {
                let lp = Permutation::row_length(p);
                for a in 0..p.len() {
                    for b in a + 1..p.len() {
                        let mut q = p.clone();
                        q.swap(a, b);
                        if Permutation::row_length(&q) == lp + 1 {
                            next.insert(q);
                        }
                    }
                }
            }
            frontier = next;
        }
        frontier.contains(&w.to_vec())
    }

    #[test]
    fn bruhat_matches_chain_oracle() {
        for k in 1..=4 {
            let perms = all_perms(k);
            for u in &perms {
                for w in &perms {
                    assert_eq!(
                        row_bruhat_leq(u, w),
                        bruhat_oracle(u, w),
                        "u={:?} w={:?}",
                        u,
                        w
                    );
                }
            }
        }
    }

    #[test]
    fn alpha_beta_are_mutual_inverses() {
        for (a, b) in [(1, 3), (2, 4), (1, 1), (2, 3)] {
            let al = Permutation::alpha(4, 4, a, b);
            let be = Permutation::beta(4, 4, a, b);
            assert!(al.compose(&be).is_identity());
            assert!(be.compose(&al).is_identity());
        }
    }

    #[test]
    fn alpha_maps_start_to_end() {
        // alpha on [a,b] sends a |-> b and slides the rest down by one
        let al = Permutation::alpha(4, 4, 2, 4);
        assert_eq!(al.map(4, 2), 4);
        assert_eq!(al.map(4, 3), 2);
        assert_eq!(al.map(4, 4), 3);
        assert_eq!(al.map(4, 1), 1);
    }

    #[test]
    fn compose_applies_right_first() {
        let s12 = Permutation::transposition(3, 3, 1, 2);
        let s23 = Permutation::transposition(3, 3, 2, 3);
        let c = s12.compose(&s23);
        // (s12 . s23)(1) = s12(s23(1)) = s12(1) = 2
        assert_eq!(c.map(3, 1), 2);
        assert_eq!(c.map(3, 2), 3);
        assert_eq!(c.map(3, 3), 1);
        assert_eq!(c.length(), 2);
    }
}
