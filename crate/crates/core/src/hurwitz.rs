//! Hurwitz numbers for covers of the sphere: character sums and the
//! brute-force monodromy-tuple oracle.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::character::{f_eta_with, CharCache};
use crate::error::{Error, Result};
use crate::num::{factorial, Rat};
use crate::partition::Partition;
use crate::series::Series;
use crate::RationalSeries;

/// A degree and a list of ramification profiles, each a partition of the degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzQuery {
    pub degree: u32,
    pub profiles: Vec<Partition>,
}

impl HurwitzQuery {
    pub fn new(degree: u32, profiles: Vec<Partition>) -> Result<Self> {
        for eta in &profiles {
            if eta.size() != degree as u64 {
                return Err(Error::SizeMismatch(format!(
                    "profile {eta} is not a partition of {degree}"
                )));
            }
        }
        Ok(HurwitzQuery { degree, profiles })
    }
}

/// H_d(η¹,...,ηᵏ) = Σ_{|λ|=d} (dim λ/d!)² ∏_i f_{ηⁱ}(λ).
pub fn hurwitz_number(q: &HurwitzQuery) -> Result<Rat> {
    let d = q.degree;
    let mut cache = CharCache::new();
    let dfact = Rat::from_integer(factorial(d as u64));
    let mut acc = Rat::zero();
    for lam in Partition::all(d) {
        let mut term = Rat::from_integer(lam.dimension()) / dfact.clone();
        term = term.clone() * term;
        for eta in &q.profiles {
            if term.is_zero() {
                break;
            }
            term *= f_eta_with(&mut cache, eta, &lam)?;
        }
        acc += term;
    }
    Ok(acc)
}

fn cycle_type(perm: &[u8]) -> Partition {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        parts.push(len);
    }
    Partition::from_unsorted(parts)
}

fn all_permutations(d: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..d as u8).collect();
    fn heap(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(d, &mut cur, &mut out);
    out
}

fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    // (a ∘ b)(x) = a(b(x))
    b.iter().map(|&x| a[x as usize]).collect()
}

fn inverse(a: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

/// Brute-force count of monodromy tuples: |A_η|/d! with
/// A_η = {(s₁,...,s_k) : s_i of type ηⁱ, s₁···s_k = 1}. Guarded at d ≤ 6.
pub fn hurwitz_brute_force(q: &HurwitzQuery) -> Result<Rat> {
    let d = q.degree as usize;
    if d > 6 {
        return Err(Error::Budget(format!(
            "brute force enumerates |S({d})| tuples; limit is d ≤ 6"
        )));
    }
    if d == 0 {
        return Ok(Rat::one());
    }
    let dfact = Rat::from_integer(factorial(d as u64));
    let k = q.profiles.len();
    if k == 0 {
        // the empty tuple has identity product
        return Ok(Rat::one() / dfact);
    }
    let perms = all_permutations(d);
    let classes: Vec<Vec<&Vec<u8>>> = q
        .profiles
        .iter()
        .map(|eta| perms.iter().filter(|p| &cycle_type(p) == eta).collect())
        .collect();
    if k == 1 {
        // s₁ = 1 forces the identity profile
        let ones = Partition::from_unsorted(vec![1; d]);
        let count = if q.profiles[0] == ones { 1u64 } else { 0 };
        return Ok(Rat::from_integer(count.into()) / dfact);
    }
    // iterate s₁..s_{k-1} over their classes; s_k is the inverse of the product
    let last = &q.profiles[k - 1];
    let count: u64 = classes[0]
        .par_iter()
        .map(|s1| {
            let mut stack: Vec<(usize, Vec<u8>)> = vec![(1, (*s1).clone())];
            let mut local = 0u64;
            while let Some((i, prod)) = stack.pop() {
                if i == k - 1 {
                    if &cycle_type(&inverse(&prod)) == last {
                        local += 1;
                    }
                    continue;
                }
                for s in &classes[i] {
                    stack.push((i + 1, compose(&prod, s)));
                }
            }
            local
        })
        .sum();
    Ok(Rat::from_integer(count.into()) / dfact)
}

/// Generating function for pillowcase covers:
/// Σ_λ q^{|λ|/2} (dim λ/|λ|!)² f_{(ν∪μ, 2,...,2)}(λ) f_{(2,...,2)}(λ)³,
/// truncated at q^order (so |λ| ≤ 2·order).
pub fn pillowcase_cover_series(
    nu: &Partition,
    mu: &Partition,
    order: usize,
) -> Result<RationalSeries> {
    crate::weight::validate_nu(nu)?;
    let mut merged = nu.parts().to_vec();
    merged.extend_from_slice(mu.parts());
    let merged = Partition::from_unsorted(merged);
    let mut out = Series::zero(order);
    if merged.size() % 2 != 0 {
        return Ok(out); // no even |λ| admits the profile
    }
    let mut cache = CharCache::new();
    for half in 0..=order as u64 {
        let n = 2 * half;
        if n < merged.size() {
            if half == 0 && merged.is_empty() {
                out.set_coeff(0, Rat::one());
            }
            continue;
        }
        let mut profile_parts = merged.parts().to_vec();
        profile_parts.extend(std::iter::repeat(2).take(((n - merged.size()) / 2) as usize));
        let profile = Partition::from_unsorted(profile_parts);
        let twos = Partition::from_unsorted(vec![2; (n / 2) as usize]);
        let nfact = Rat::from_integer(factorial(n));
        let mut acc = Rat::zero();
        for lam in Partition::all(n as u32) {
            let f2 = f_eta_with(&mut cache, &twos, &lam)?;
            if f2.is_zero() {
                continue;
            }
            let dim_ratio = Rat::from_integer(lam.dimension()) / nfact.clone();
            let fm = f_eta_with(&mut cache, &profile, &lam)?;
            acc += &dim_ratio * &dim_ratio * fm * f2.pow(3);
        }
        out.set_coeff(half as usize, acc);
    }
    Ok(out)
}

#[allow(unused_imports)]
use num_traits::Pow;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;
    use crate::stats::z_n;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn degree_two_and_three() {
        let q = HurwitzQuery::new(2, vec![p(&[2]), p(&[2])]).unwrap();
        assert_eq!(hurwitz_number(&q).unwrap(), rat(1, 2));
        assert_eq!(hurwitz_brute_force(&q).unwrap(), rat(1, 2));
        let q = HurwitzQuery::new(3, vec![p(&[3]), p(&[3])]).unwrap();
        assert_eq!(hurwitz_number(&q).unwrap(), rat(1, 3));
        assert_eq!(hurwitz_brute_force(&q).unwrap(), rat(1, 3));
    }

    #[test]
    fn identity_profiles() {
        for d in 1..=5u32 {
            let ones = Partition::from_unsorted(vec![1; d as usize]);
            let q = HurwitzQuery::new(d, vec![ones.clone()]).unwrap();
            let expect = Rat::one() / Rat::from_integer(factorial(d as u64));
            assert_eq!(hurwitz_number(&q).unwrap(), expect);
            assert_eq!(hurwitz_brute_force(&q).unwrap(), expect);
        }
    }

    #[test]
    fn profile_size_must_match() {
        assert!(HurwitzQuery::new(3, vec![p(&[2])]).is_err());
        let q = HurwitzQuery {
            degree: 7,
            profiles: vec![],
        };
        assert!(hurwitz_brute_force(&q).is_err());
    }

    #[test]
    fn riemann_hurwitz_parity() {
        // H vanishes when Σ (|ηⁱ| - ℓ(ηⁱ)) is odd
        let q = HurwitzQuery::new(3, vec![p(&[2, 1]), p(&[3]), p(&[3])]).unwrap();
        let defect: u64 = q.profiles.iter().map(|e| e.size() - e.len() as u64).sum();
        assert_eq!(defect % 2, 1);
        assert_eq!(hurwitz_number(&q).unwrap(), Rat::zero());
        assert_eq!(hurwitz_brute_force(&q).unwrap(), Rat::zero());
    }

    #[test]
    fn oracle_grid_small() {
        // exhaustive profile grid at d = 4 (d = 5 runs in the acceptance suite)
        let d = 4u32;
        let shapes = [p(&[4]), p(&[2, 1, 1]), p(&[1, 1, 1, 1]), p(&[2, 2])];
        for a in &shapes {
            for b in &shapes {
                let q = HurwitzQuery::new(d, vec![a.clone(), b.clone()]).unwrap();
                assert_eq!(
                    hurwitz_number(&q).unwrap(),
                    hurwitz_brute_force(&q).unwrap(),
                    "profiles ({a}) ({b})"
                );
                for c in &shapes {
                    let q = HurwitzQuery::new(d, vec![a.clone(), b.clone(), c.clone()]).unwrap();
                    assert_eq!(
                        hurwitz_number(&q).unwrap(),
                        hurwitz_brute_force(&q).unwrap(),
                        "profiles ({a}) ({b}) ({c})"
                    );
                }
            }
        }
    }

    #[test]
    fn cover_series_examples() {
        let s = pillowcase_cover_series(&Partition::empty(), &Partition::empty(), 5).unwrap();
        assert_eq!(s.coeff(0), rat(1, 1));
        assert_eq!(s.coeff(1), rat(1, 2));
        assert_eq!(s.coeff(2), rat(7, 8));
        // coefficients are Z_{2d}
        for d in 0..=5u64 {
            assert_eq!(s.coeff(d as usize), z_n(2 * d), "d = {d}");
        }
        // ν = (1,1): q¹ coefficient vanishes
        let s = pillowcase_cover_series(&p(&[1, 1]), &Partition::empty(), 3).unwrap();
        assert_eq!(s.coeff(1), Rat::zero());
        assert!(pillowcase_cover_series(&p(&[2]), &Partition::empty(), 3).is_err());
    }
}
