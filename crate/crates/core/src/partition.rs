//! Integer partitions and their Young diagrams.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::num::{factorial, Int};

/// A partition: weakly decreasing list of positive integers.
///
/// The empty list is the empty partition with size 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros, so any bag of non-negative integers is accepted.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Single row `(n)`; `(0)` is the empty partition.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// Staircase `(c, c-1, ..., 1)`.
    pub fn staircase(c: u32) -> Self {
        Partition {
            parts: (1..=c).rev().collect(),
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|λ|`, the number being partitioned.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// `ℓ(λ)`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` with 1-based `i`, zero beyond the last part.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    /// Containment of Young diagrams.
    pub fn contains(&self, inner: &Partition) -> bool {
        inner
            .parts
            .iter()
            .enumerate()
            .all(|(i, &p)| self.part(i + 1) >= p)
    }

    /// Conjugate partition λ'.
    pub fn transpose(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut t = vec![0u32; cols];
        for (j, tj) in t.iter_mut().enumerate() {
            *tj = self.parts.iter().take_while(|&&p| p as usize > j).count() as u32;
        }
        Partition { parts: t }
    }

    /// Multiplicity vector: `m[i]` = number of parts equal to `i`.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Number of odd parts.
    pub fn odd_parts(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 1).count()
    }

    /// Hook lengths row by row: entry `(i, j)` is arm + leg + 1.
    pub fn hook_rows(&self) -> Vec<Vec<u32>> {
        let t = self.transpose();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row as usize)
                    .map(|j| row - (j as u32 + 1) + t.parts[j] - (i as u32 + 1) + 1)
                    .collect()
            })
            .collect()
    }

    /// The hook-length multiset, unordered.
    pub fn hook_lengths(&self) -> Vec<u32> {
        self.hook_rows().into_iter().flatten().collect()
    }

    /// Product of all hook lengths (u128-chunked to limit bignum traffic).
    pub fn hook_product(&self) -> Int {
        let t = self.transpose();
        let mut acc = Int::one();
        let mut chunk: u128 = 1;
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let h = (row - (j as u32 + 1) + t.parts[j] - (i as u32 + 1) + 1) as u128;
                match chunk.checked_mul(h) {
                    Some(next) => chunk = next,
                    None => {
                        acc *= chunk;
                        chunk = h;
                    }
                }
            }
        }
        if chunk > 1 {
            acc *= chunk;
        }
        acc
    }

    /// Dimension of the irreducible S(n)-representation: n! / ∏ hooks.
    pub fn dimension(&self) -> Int {
        factorial(self.size()) / self.hook_product()
    }

    /// Dimension through the determinant-free coordinate form
    /// n! ∏_{i<j}(λ_i - λ_j - i + j) / ∏_i (λ_i + ℓ - i)!.
    pub fn dimension_determinant(&self) -> Int {
        let l = self.len() as i64;
        let mut num = factorial(self.size());
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                num *= self.parts[i] as i64 - self.parts[j] as i64 - i as i64 + j as i64;
            }
        }
        let mut den = Int::one();
        for i in 0..self.len() {
            den *= factorial((self.parts[i] as i64 + l - 1 - i as i64) as u64);
        }
        num / den
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            let top = rem.min(max);
            for p in (1..=top).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out
    }

    /// All sub-diagrams μ ⊆ λ with |μ| = k.
    pub fn subdiagrams_of_size(&self, k: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = Vec::new();
        fn rec(
            lam: &Partition,
            row: usize,
            rem: u32,
            prev: u32,
            cur: &mut Vec<u32>,
            out: &mut Vec<Partition>,
        ) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            if row >= lam.len() {
                return;
            }
            let top = lam.parts[row].min(prev).min(rem);
            // skip this and deeper rows entirely only when nothing fits
            for p in (1..=top).rev() {
                cur.push(p);
                rec(lam, row + 1, rem - p, p, cur, out);
                cur.pop();
            }
        }
        rec(self, 0, k, u32::MAX, &mut cur, &mut out);
        out
    }

    /// Parses the text syntax: comma-separated decreasing parts with optional
    /// `^` exponents (`5,4,4,2`, `3^2,1^5`); `-` or the empty string is ∅.
    pub fn parse(s: &str) -> Result<Partition> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let (base, mult) = match tok.split_once('^') {
                Some((b, e)) => {
                    let e: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    (b.trim(), e)
                }
                None => (tok, 1),
            };
            let p: u32 = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad part `{tok}`")))?;
            for _ in 0..mult {
                parts.push(p);
            }
        }
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

/// A skew shape λ/μ with μ ⊆ λ.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::Containment(format!("{inner} not inside {outer}")));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn size(&self) -> u64 {
        self.outer.size() - self.inner.size()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn hook_lengths_worked_example() {
        // rows 8,7,5,4,1 / 6,5,3,2 / 5,4,2,1 / 2,1
        let rows = p(&[5, 4, 4, 2]).hook_rows();
        assert_eq!(
            rows,
            vec![vec![8, 7, 5, 4, 1], vec![6, 5, 3, 2], vec![5, 4, 2, 1], vec![2, 1]]
        );
    }

    #[test]
    fn hook_lengths_edge_cases() {
        assert!(Partition::empty().hook_lengths().is_empty());
        let mut h = p(&[2, 2]).hook_lengths();
        h.sort_unstable();
        assert_eq!(h, vec![1, 2, 2, 3]);
    }

    #[test]
    fn dimension_values() {
        assert_eq!(p(&[5, 4, 4, 2]).dimension(), Int::from(81081));
        assert_eq!(Partition::empty().dimension(), Int::from(1));
        assert_eq!(p(&[7]).dimension(), Int::from(1));
        // 4!/(4*2*1*1)
        assert_eq!(p(&[3, 1]).dimension(), Int::from(3));
    }

    /// Brute-force count of standard Young tableaux by adding cells one at a time.
    fn syt_count(lam: &Partition) -> u64 {
        fn rec(target: &Partition, cur: &mut Vec<u32>) -> u64 {
            let cur_size: u64 = cur.iter().map(|&x| x as u64).sum();
            if cur_size == target.size() {
                return 1;
            }
            let mut total = 0;
            for i in 0..=cur.len() {
                let above = if i == 0 { u32::MAX } else { cur[i - 1] };
                let here = if i < cur.len() { cur[i] } else { 0 };
                if here < above && here < target.part(i + 1) {
                    if i < cur.len() {
                        cur[i] += 1;
                        total += rec(target, cur);
                        cur[i] -= 1;
                    } else {
                        cur.push(1);
                        total += rec(target, cur);
                        cur.pop();
                    }
                }
            }
            total
        }
        rec(lam, &mut Vec::new())
    }

    #[test]
    fn dimension_matches_tableau_count() {
        for n in 0..=7u32 {
            for lam in Partition::all(n) {
                assert_eq!(lam.dimension(), Int::from(syt_count(&lam)), "λ = {lam}");
            }
        }
    }

    #[test]
    fn dimension_determinant_agrees() {
        for n in 0..=10u32 {
            for lam in Partition::all(n) {
                assert_eq!(lam.dimension(), lam.dimension_determinant(), "λ = {lam}");
            }
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(Partition::parse("5,4,4,2").unwrap(), p(&[5, 4, 4, 2]));
        assert_eq!(
            Partition::parse("3^2,1^5").unwrap(),
            p(&[3, 3, 1, 1, 1, 1, 1])
        );
        assert_eq!(Partition::parse("-").unwrap(), Partition::empty());
        assert_eq!(Partition::parse("").unwrap(), Partition::empty());
        assert!(Partition::parse("2,3").is_err());
        assert!(Partition::parse("0").is_err());
        assert_eq!(p(&[5, 4, 4, 2]).to_string(), "5,4,4,2");
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn subdiagram_enumeration() {
        let lam = p(&[2, 2]);
        let subs = lam.subdiagrams_of_size(2);
        assert_eq!(subs, vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(lam.subdiagrams_of_size(0), vec![Partition::empty()]);
        assert!(p(&[2]).subdiagrams_of_size(3).is_empty());
    }

    proptest! {
        #[test]
        fn transpose_involution(parts in proptest::collection::vec(1u32..9, 0..8)) {
            let lam = Partition::from_unsorted(parts);
            prop_assert_eq!(lam.transpose().transpose(), lam.clone());
            let mut h1 = lam.hook_lengths();
            let mut h2 = lam.transpose().hook_lengths();
            h1.sort_unstable();
            h2.sort_unstable();
            prop_assert_eq!(h1, h2);
        }
    }
}
