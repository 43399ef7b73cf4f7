//! Pillowcase weights and the near-involution ratio g_ν.
//!
//! `weight_def` follows the defining expression through the character engine,
//! `weight_hooks` the odd/even hook-product form; the two are independent
//! computation routes and their equality is part of the acceptance suite.

use num_traits::{One, Zero};

use crate::character::{class_data, f_eta_with, CharCache};
use crate::error::{Error, Result};
use crate::num::{factorial, int, Int, Rat};
use crate::partition::Partition;
use crate::quotient::{is_balanced, sigma, two_quotient};
use crate::shifted::shifted_schur;

/// w(λ) = (dim λ/|λ|!)² f_{(2,2,...)}(λ)⁴, evaluated through the
/// Murnaghan-Nakayama character; zero for odd |λ| (the involution class is
/// empty) and on unbalanced partitions.
pub fn weight_def(lam: &Partition, cache: &mut CharCache) -> Rat {
    let n = lam.size();
    if n % 2 != 0 {
        return Rat::zero();
    }
    let twos = Partition::from_unsorted(vec![2; (n / 2) as usize]);
    let f = f_eta_with(cache, &twos, lam).expect("sizes match");
    let dim_ratio = Rat::new(lam.dimension(), factorial(n));
    &dim_ratio * &dim_ratio * f.pow(4)
}

/// w(λ) = (∏ odd hooks / ∏ even hooks)² on balanced λ, zero elsewhere.
pub fn weight_hooks(lam: &Partition) -> Rat {
    if !is_balanced(lam) {
        return Rat::zero();
    }
    let mut odd = Int::one();
    let mut even = Int::one();
    for h in lam.hook_lengths() {
        if h % 2 == 0 {
            even *= h;
        } else {
            odd *= h;
        }
    }
    let r = Rat::new(odd, even);
    &r * &r
}

/// Checks that ν indexes a pillowcase ramification profile: |ν| even, all
/// parts odd.
pub fn validate_nu(nu: &Partition) -> Result<()> {
    if nu.size() % 2 != 0 {
        return Err(Error::Domain(format!("|ν| = {} must be even", nu.size())));
    }
    if nu.parts().iter().any(|p| p % 2 == 0) {
        return Err(Error::Domain(format!("ν = {nu} must have odd parts")));
    }
    Ok(())
}

/// g_ν(λ) = f_{(ν,2,2,...,2)}(λ) / f_{(2,2,...,2)}(λ), both profiles padded
/// with 2's to |λ|.
pub fn g_nu_direct(nu: &Partition, lam: &Partition, cache: &mut CharCache) -> Result<Rat> {
    validate_nu(nu)?;
    if lam.size() % 2 != 0 {
        return Err(Error::Domain(format!("|λ| = {} must be even", lam.size())));
    }
    if nu.size() > lam.size() {
        return Err(Error::SizeMismatch(format!(
            "|ν| = {} exceeds |λ| = {}",
            nu.size(),
            lam.size()
        )));
    }
    if !is_balanced(lam) {
        return Err(Error::ZeroDenominator);
    }
    let pad = ((lam.size() - nu.size()) / 2) as usize;
    let mut parts = nu.parts().to_vec();
    parts.extend(std::iter::repeat(2).take(pad));
    let profile = Partition::from_unsorted(parts);
    let twos = Partition::from_unsorted(vec![2; (lam.size() / 2) as usize]);
    let num = f_eta_with(cache, &profile, lam)?;
    let den = f_eta_with(cache, &twos, lam)?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(num / den)
}

/// The near-involution formula:
/// g_ν(λ) = 2^{|ν|/2}/z(ν) Σ_μ σ_μ χ^μ(ν) s*_a(α) s*_b(β),
/// summed over balanced μ ⊆ λ of size |ν|, with (a,b) and (α,β) the
/// 2-quotients of μ and λ.
pub fn g_nu_formula(nu: &Partition, lam: &Partition) -> Result<Rat> {
    g_nu_formula_with(&mut CharCache::new(), nu, lam)
}

pub fn g_nu_formula_with(cache: &mut CharCache, nu: &Partition, lam: &Partition) -> Result<Rat> {
    validate_nu(nu)?;
    if lam.size() % 2 != 0 {
        return Err(Error::Domain(format!("|λ| = {} must be even", lam.size())));
    }
    if nu.size() > lam.size() {
        return Err(Error::SizeMismatch(format!(
            "|ν| = {} exceeds |λ| = {}",
            nu.size(),
            lam.size()
        )));
    }
    if !is_balanced(lam) {
        return Err(Error::ZeroDenominator);
    }
    let q = two_quotient(lam);
    let mut acc = Rat::zero();
    for mu in lam.subdiagrams_of_size(nu.size() as u32) {
        if !is_balanced(&mu) {
            continue;
        }
        let chi = crate::character::character_with(cache, &mu, nu)?;
        if chi.is_zero() {
            continue;
        }
        let s = sigma(&mu).expect("balanced");
        let qq = two_quotient(&mu);
        let term = Rat::from_integer(Int::from(s) * chi)
            * shifted_schur(&qq.alpha, &q.alpha)
            * shifted_schur(&qq.beta, &q.beta);
        acc += term;
    }
    let z = class_data(nu).centralizer;
    let scale = Rat::new(int(2).pow(nu.size() as u32 / 2), z);
    Ok(scale * acc)
}

/// Σ_{balanced |μ| = |ν|} σ_μ χ^μ(ν) (dim a/|a|!)(dim b/|b|!); vanishes by
/// character orthogonality.
pub fn vanishing_sum(nu: &Partition) -> Result<Rat> {
    validate_nu(nu)?;
    let mut cache = CharCache::new();
    let mut acc = Rat::zero();
    for mu in crate::quotient::balanced_partitions(nu.size()) {
        let chi = crate::character::character_with(&mut cache, &mu, nu)?;
        if chi.is_zero() {
            continue;
        }
        let s = sigma(&mu).expect("balanced");
        let q = two_quotient(&mu);
        let term = Rat::from_integer(Int::from(s) * chi)
            * Rat::new(q.alpha.dimension(), factorial(q.alpha.size()))
            * Rat::new(q.beta.dimension(), factorial(q.beta.size()));
        acc += term;
    }
    Ok(acc)
}

/// v(λ) = [dim λ/(|λ|-2)!] · [s*_{(2)}(λ) - s*_{(1,1)}(λ)] / |λ|!,
/// zero for |λ| < 2.
pub fn v_factor(lam: &Partition) -> Rat {
    if lam.size() < 2 {
        return Rat::zero();
    }
    let two = Partition::row(2);
    let one_one = Partition::from_unsorted(vec![1, 1]);
    Rat::new(lam.dimension(), factorial(lam.size() - 2))
        * (shifted_schur(&two, lam) - shifted_schur(&one_one, lam))
        / Rat::from_integer(factorial(lam.size()))
}

/// The structured next-term sum Σ_μ σ_μ χ^μ(ν) v(a) v(b) over balanced μ of
/// size |ν|. The scalar prefactor 2 K^{|ν|-2} ⟨p₂⟩/z(ν) is reported
/// separately as a series object by the statistics layer.
pub fn next_term_sum(nu: &Partition) -> Result<Rat> {
    validate_nu(nu)?;
    let mut cache = CharCache::new();
    let mut acc = Rat::zero();
    for mu in crate::quotient::balanced_partitions(nu.size()) {
        let chi = crate::character::character_with(&mut cache, &mu, nu)?;
        if chi.is_zero() {
            continue;
        }
        let s = sigma(&mu).expect("balanced");
        let q = two_quotient(&mu);
        acc += Rat::from_integer(Int::from(s) * chi) * v_factor(&q.alpha) * v_factor(&q.beta);
    }
    Ok(acc)
}

/// Fomin-Lulov bound check: 0 ≤ w(λ) < 1 for non-empty λ, with w = 0 exactly
/// on unbalanced partitions. (w(∅) = 1 is the normalization constant; the
/// bound concerns partitions of positive integers.)
pub fn weight_in_bounds(lam: &Partition) -> bool {
    use num_traits::Signed;
    let w = weight_hooks(lam);
    if lam.is_empty() {
        return w.is_one();
    }
    if is_balanced(lam) {
        w.is_positive() && w < Rat::one()
    } else {
        w.is_zero()
    }
}

#[allow(unused_imports)]
use num_traits::Pow;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::{char_involution, character};
    use crate::num::{rat, rat_int};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn weight_examples() {
        let mut cache = CharCache::new();
        assert_eq!(weight_def(&p(&[2]), &mut cache), rat(1, 4));
        assert_eq!(weight_def(&p(&[1]), &mut cache), Rat::zero());
        assert_eq!(weight_def(&p(&[2, 2]), &mut cache), rat(9, 16));
        assert_eq!(weight_hooks(&p(&[2, 2])), rat(9, 16));
        assert_eq!(weight_hooks(&p(&[4])), rat(9, 64));
        assert_eq!(weight_hooks(&p(&[3, 2, 1])), Rat::zero());
        assert_eq!(weight_hooks(&Partition::empty()), rat_int(1));
    }

    #[test]
    fn weight_routes_agree_small() {
        let mut cache = CharCache::new();
        for n in 0..=12u32 {
            for lam in Partition::all(n) {
                assert_eq!(
                    weight_def(&lam, &mut cache),
                    weight_hooks(&lam),
                    "λ = {lam}"
                );
            }
        }
    }

    #[test]
    fn weight_transpose_invariance() {
        for n in 0..=12u32 {
            for lam in Partition::all(n) {
                assert_eq!(weight_hooks(&lam), weight_hooks(&lam.transpose()));
            }
        }
    }

    #[test]
    fn g_nu_examples() {
        let mut cache = CharCache::new();
        assert_eq!(
            g_nu_direct(&p(&[1, 1]), &p(&[2, 2]), &mut cache).unwrap(),
            Rat::zero()
        );
        assert_eq!(
            g_nu_direct(&p(&[3, 1]), &p(&[2, 2]), &mut cache).unwrap(),
            rat(-4, 3)
        );
        assert_eq!(
            g_nu_direct(&p(&[1, 1]), &p(&[2]), &mut cache).unwrap(),
            rat_int(1)
        );
        assert_eq!(
            g_nu_formula(&p(&[3, 1]), &p(&[2, 2])).unwrap(),
            rat(-4, 3)
        );
        assert_eq!(g_nu_formula(&p(&[1, 1]), &p(&[2, 2])).unwrap(), Rat::zero());
        assert_eq!(g_nu_formula(&p(&[1, 1]), &p(&[2])).unwrap(), rat_int(1));
        // unbalanced λ has a vanishing denominator
        assert_eq!(
            g_nu_direct(&p(&[1, 1]), &p(&[3, 2, 1]), &mut cache),
            Err(Error::ZeroDenominator)
        );
        // ν must have odd parts of even total size
        assert!(g_nu_direct(&p(&[2]), &p(&[2, 2]), &mut cache).is_err());
        assert!(g_nu_direct(&p(&[1]), &p(&[2, 2]), &mut cache).is_err());
    }

    #[test]
    fn g_nu_routes_agree() {
        let mut cache = CharCache::new();
        let nus = [p(&[1, 1]), p(&[3, 1]), p(&[1, 1, 1, 1])];
        for n in (2..=8u64).step_by(2) {
            for lam in crate::quotient::balanced_partitions(n) {
                for nu in &nus {
                    if nu.size() > n {
                        continue;
                    }
                    let direct = g_nu_direct(nu, &lam, &mut cache).unwrap();
                    let formula = g_nu_formula_with(&mut cache, nu, &lam).unwrap();
                    assert_eq!(direct, formula, "ν = {nu}, λ = {lam}");
                }
            }
        }
    }

    #[test]
    fn vanishing_sums() {
        for nu in [
            p(&[1, 1]),
            p(&[3, 1]),
            p(&[1, 1, 1, 1]),
            p(&[5, 1]),
            p(&[3, 3]),
            p(&[3, 1, 1, 1]),
            p(&[1, 1, 1, 1, 1, 1]),
        ] {
            assert_eq!(vanishing_sum(&nu).unwrap(), Rat::zero(), "ν = {nu}");
        }
        assert!(vanishing_sum(&p(&[2, 2])).is_err());
        assert!(vanishing_sum(&p(&[1])).is_err());
    }

    #[test]
    fn next_term_small() {
        // all quotient components of |μ| = 2 partitions have size < 2
        assert_eq!(next_term_sum(&p(&[1, 1])).unwrap(), Rat::zero());
        // values for |ν| ∈ {4, 6} are recorded by the report, not asserted;
        // here just check they evaluate
        next_term_sum(&p(&[3, 1])).unwrap();
        next_term_sum(&p(&[3, 3])).unwrap();
        next_term_sum(&p(&[5, 1])).unwrap();
    }

    #[test]
    fn near_involution_character_identity() {
        // χ^η(2,1,...,1) = dim η (s*_{(2)}(η) - s*_{(1,1)}(η)) / (|η| ↓ 2),
        // checked against the Murnaghan-Nakayama value for all |η| ≤ 6
        for n in 2..=6u32 {
            for eta in Partition::all(n) {
                let mut profile = vec![2u32];
                profile.extend(std::iter::repeat(1).take(n as usize - 2));
                let chi = character(&eta, &Partition::from_unsorted(profile)).unwrap();
                let rhs = Rat::from_integer(eta.dimension())
                    * (shifted_schur(&p(&[2]), &eta) - shifted_schur(&p(&[1, 1]), &eta))
                    / rat_int((n * (n - 1)) as i64);
                assert_eq!(Rat::from_integer(chi), rhs, "η = {eta}");
            }
        }
    }

    #[test]
    fn sign_of_involution_character_is_sigma() {
        use num_traits::Signed;
        for n in (2..=12u64).step_by(2) {
            for lam in crate::quotient::balanced_partitions(n) {
                let chi = char_involution(&lam).unwrap();
                let expect = sigma(&lam).unwrap();
                assert_eq!(chi.is_negative(), expect < 0, "λ = {lam}");
                assert!(!chi.is_zero());
            }
        }
    }
}
