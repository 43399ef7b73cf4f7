//! Symmetric-group characters via the Murnaghan-Nakayama rule.
//!
//! Strips are removed largest part first; removal candidates are read off the
//! beta-number encoding: a `p`-strip can be removed exactly when some beta
//! number `b` has `b - p ≥ 0` vacant, and the height of the strip is the
//! number of beta numbers strictly between `b - p` and `b`.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{factorial, Int, Rat};
use crate::partition::{Partition, SkewShape};
use crate::quotient::{sigma, two_quotient};

/// Conjugacy-class data for a cycle type ρ of S(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub cycle_type: Partition,
    pub centralizer: Int,
    pub class_size: Int,
}

/// z(ρ) = ∏ i^{m_i} m_i! and |C_ρ| = n!/z(ρ).
pub fn class_data(rho: &Partition) -> ClassData {
    let z = centralizer_size(rho);
    let class_size = factorial(rho.size()) / &z;
    ClassData {
        cycle_type: rho.clone(),
        centralizer: z,
        class_size,
    }
}

pub fn centralizer_size(rho: &Partition) -> Int {
    let mut z = Int::one();
    for (part, mult) in rho.multiplicities() {
        for _ in 0..mult {
            z *= part;
        }
        z *= factorial(mult as u64);
    }
    z
}

/// Memo cache for character values; share one per batch of related calls.
#[derive(Default)]
pub struct CharCache {
    plain: HashMap<(Vec<u32>, Vec<u32>), Int>,
    skew: HashMap<(Vec<u32>, Vec<u32>, Vec<u32>), Int>,
}

impl CharCache {
    pub fn new() -> Self {
        Self::default()
    }
}

/// All ways to remove a border strip of length `p` from λ: `(result, height)`.
fn strip_removals(lam: &Partition, p: u32) -> Vec<(Partition, u32)> {
    let m = lam.len();
    if p == 0 || m == 0 {
        return Vec::new();
    }
    // beta numbers b_i = λ_i + m - 1 - i (0-based i), strictly decreasing
    let betas: Vec<i64> = lam
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &l)| l as i64 + m as i64 - 1 - i as i64)
        .collect();
    let mut out = Vec::new();
    for (idx, &b) in betas.iter().enumerate() {
        let target = b - p as i64;
        if target < 0 || betas.contains(&target) {
            continue;
        }
        let height = betas.iter().filter(|&&x| target < x && x < b).count() as u32;
        let mut nb = betas.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = nb
            .iter()
            .enumerate()
            .filter_map(|(i, &bi)| {
                let li = bi - (m as i64 - 1 - i as i64);
                (li > 0).then_some(li as u32)
            })
            .collect();
        out.push((Partition::from_unsorted(parts), height));
    }
    out
}

fn mn_rec(cache: &mut CharCache, lam: &Partition, mu_rest: &[u32]) -> Int {
    if mu_rest.is_empty() {
        return if lam.is_empty() { Int::one() } else { Int::zero() };
    }
    let key = (lam.parts().to_vec(), mu_rest.to_vec());
    if let Some(v) = cache.plain.get(&key) {
        return v.clone();
    }
    let mut acc = Int::zero();
    for (rest, height) in strip_removals(lam, mu_rest[0]) {
        let term = mn_rec(cache, &rest, &mu_rest[1..]);
        if height % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    cache.plain.insert(key, acc.clone());
    acc
}

/// χ^λ(μ) for |λ| = |μ|.
pub fn character(lam: &Partition, mu: &Partition) -> Result<Int> {
    character_with(&mut CharCache::new(), lam, mu)
}

pub fn character_with(cache: &mut CharCache, lam: &Partition, mu: &Partition) -> Result<Int> {
    if lam.size() != mu.size() {
        return Err(Error::SizeMismatch(format!(
            "|λ| = {} but |μ| = {}",
            lam.size(),
            mu.size()
        )));
    }
    Ok(mn_rec(cache, lam, mu.parts()))
}

fn mn_skew_rec(cache: &mut CharCache, lam: &Partition, inner: &Partition, eta_rest: &[u32]) -> Int {
    if eta_rest.is_empty() {
        return if lam == inner { Int::one() } else { Int::zero() };
    }
    let key = (
        lam.parts().to_vec(),
        inner.parts().to_vec(),
        eta_rest.to_vec(),
    );
    if let Some(v) = cache.skew.get(&key) {
        return v.clone();
    }
    let mut acc = Int::zero();
    for (rest, height) in strip_removals(lam, eta_rest[0]) {
        if !rest.contains(inner) {
            continue;
        }
        let term = mn_skew_rec(cache, &rest, inner, &eta_rest[1..]);
        if height % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    cache.skew.insert(key, acc.clone());
    acc
}

/// Skew character χ^{λ/μ}(η): signed count of η-strip decompositions of λ/μ.
pub fn skew_character(shape: &SkewShape, eta: &Partition) -> Result<Int> {
    skew_character_with(&mut CharCache::new(), shape, eta)
}

pub fn skew_character_with(
    cache: &mut CharCache,
    shape: &SkewShape,
    eta: &Partition,
) -> Result<Int> {
    if eta.size() != shape.size() {
        return Err(Error::SizeMismatch(format!(
            "|λ/μ| = {} but |η| = {}",
            shape.size(),
            eta.size()
        )));
    }
    Ok(mn_skew_rec(cache, &shape.outer, &shape.inner, eta.parts()))
}

/// dim(λ/μ) = χ^{λ/μ}(1,...,1), the number of standard skew tableaux.
pub fn dim_skew(shape: &SkewShape) -> Int {
    dim_skew_with(&mut CharCache::new(), shape)
}

pub fn dim_skew_with(cache: &mut CharCache, shape: &SkewShape) -> Int {
    let ones = Partition::from_unsorted(vec![1; shape.size() as usize]);
    skew_character_with(cache, shape, &ones).expect("sizes match")
}

/// f_η(λ) = |C_η'| χ^λ(η') / dim λ, with η' the padding of η by parts 1.
pub fn f_eta(eta: &Partition, lam: &Partition) -> Result<Rat> {
    f_eta_with(&mut CharCache::new(), eta, lam)
}

pub fn f_eta_with(cache: &mut CharCache, eta: &Partition, lam: &Partition) -> Result<Rat> {
    if eta.size() > lam.size() {
        return Err(Error::SizeMismatch(format!(
            "|η| = {} exceeds |λ| = {}",
            eta.size(),
            lam.size()
        )));
    }
    let mut parts = eta.parts().to_vec();
    parts.extend(std::iter::repeat(1).take((lam.size() - eta.size()) as usize));
    let padded = Partition::from_unsorted(parts);
    let chi = character_with(cache, lam, &padded)?;
    let cls = class_data(&padded);
    Ok(Rat::new(cls.class_size * chi, lam.dimension()))
}

/// χ^λ(2,2,...,2) through the domino formula
/// σ_λ · C(|λ|/2, |α|) · dim α · dim β, zero off balanced partitions.
pub fn char_involution(lam: &Partition) -> Result<Int> {
    if lam.size() % 2 != 0 {
        return Err(Error::Domain(format!(
            "χ^λ(2,...,2) needs even |λ|, got {}",
            lam.size()
        )));
    }
    let q = two_quotient(lam);
    if q.core_size != 0 {
        return Ok(Int::zero());
    }
    let s = sigma(lam).expect("balanced");
    let binom = crate::num::binomial(lam.size() / 2, q.alpha.size());
    Ok(Int::from(s) * binom * q.alpha.dimension() * q.beta.dimension())
}

/// Skew analogue: σ_λσ_μ · C(|λ/μ|/2, |α/a|) · dim(α/a) · dim(β/b), zero when
/// the 2-cores of λ and μ differ. Equal cores force o_λ ≡ o_μ (mod 2), so the
/// sign is computed jointly as (-1)^{(o_λ-o_μ)/2}; this also covers common
/// non-empty cores where the individual σ's are undefined.
pub fn skew_char_involution(shape: &SkewShape) -> Result<Int> {
    skew_char_involution_with(&mut CharCache::new(), shape)
}

pub fn skew_char_involution_with(cache: &mut CharCache, shape: &SkewShape) -> Result<Int> {
    if shape.size() % 2 != 0 {
        return Err(Error::Domain(format!(
            "χ^{{λ/μ}}(2,...,2) needs even |λ/μ|, got {}",
            shape.size()
        )));
    }
    let ql = two_quotient(&shape.outer);
    let qm = two_quotient(&shape.inner);
    if ql.core_size != qm.core_size {
        return Ok(Int::zero());
    }
    if !ql.alpha.contains(&qm.alpha) || !ql.beta.contains(&qm.beta) {
        return Ok(Int::zero());
    }
    let o = shape.outer.odd_parts() as i64 - shape.inner.odd_parts() as i64;
    debug_assert!(o % 2 == 0);
    let sign = if (o / 2).rem_euclid(2) == 0 { 1 } else { -1 };
    let da = ql.alpha.size() - qm.alpha.size();
    let binom = crate::num::binomial(shape.size() / 2, da);
    let skew_a = SkewShape::new(ql.alpha, qm.alpha).expect("checked");
    let skew_b = SkewShape::new(ql.beta, qm.beta).expect("checked");
    Ok(Int::from(sign) * binom * dim_skew_with(cache, &skew_a) * dim_skew_with(cache, &skew_b))
}

/// Littlewood-Richardson coefficient through the character inner product:
/// c^η_{ab} = Σ_{ρ,τ} χ^a(ρ) χ^b(τ) χ^η(ρ ∪ τ) / (z(ρ) z(τ)).
pub fn lr_coefficient(a: &Partition, b: &Partition, eta: &Partition) -> Result<Int> {
    if a.size() + b.size() != eta.size() {
        return Err(Error::SizeMismatch(format!(
            "|a| + |b| = {} but |η| = {}",
            a.size() + b.size(),
            eta.size()
        )));
    }
    let mut cache = CharCache::new();
    let mut acc = Rat::zero();
    for rho in Partition::all(a.size() as u32) {
        let chi_a = character_with(&mut cache, a, &rho)?;
        if chi_a.is_zero() {
            continue;
        }
        let z_rho = centralizer_size(&rho);
        for tau in Partition::all(b.size() as u32) {
            let chi_b = character_with(&mut cache, b, &tau)?;
            if chi_b.is_zero() {
                continue;
            }
            let z_tau = centralizer_size(&tau);
            let mut union = rho.parts().to_vec();
            union.extend_from_slice(tau.parts());
            let chi_eta = character_with(&mut cache, eta, &Partition::from_unsorted(union))?;
            acc += Rat::new(&chi_a * &chi_b * chi_eta, &z_rho * &z_tau);
        }
    }
    debug_assert!(acc.is_integer() && !acc.is_negative(), "c^η_ab = {acc}");
    Ok(acc.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, rat_int};
    use std::collections::BTreeMap;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn worked_example() {
        assert_eq!(
            character(&p(&[4, 3, 2]), &p(&[6, 2, 1])).unwrap(),
            Int::zero()
        );
    }

    #[test]
    fn trivial_representation() {
        for mu in Partition::all(6) {
            assert_eq!(character(&p(&[6]), &mu).unwrap(), Int::one());
        }
    }

    #[test]
    fn size_mismatch_is_error() {
        assert!(character(&p(&[2, 1]), &p(&[2, 2])).is_err());
    }

    /// Independent oracle: the Frobenius coefficient formula. χ^λ(μ) is the
    /// coefficient of x^{λ + δ} in a_δ(x) ∏_k p_{μ_k}(x), computed by exact
    /// multivariate polynomial expansion.
    fn frobenius_character(lam: &Partition, mu: &Partition) -> Int {
        let n = lam.len().max(1);
        type Poly = BTreeMap<Vec<u32>, Int>;
        fn mul(a: &Poly, b: &Poly) -> Poly {
            let mut out = Poly::new();
            for (ea, ca) in a {
                for (eb, cb) in b {
                    let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    *out.entry(e).or_insert_with(Int::zero) += ca * cb;
                }
            }
            out
        }
        // Vandermonde ∏_{i<j}(x_i - x_j) expanded term by term
        let mut poly: Poly = BTreeMap::new();
        poly.insert(vec![0; n], Int::one());
        for i in 0..n {
            for j in (i + 1)..n {
                let mut factor: Poly = BTreeMap::new();
                let mut ei = vec![0; n];
                ei[i] = 1;
                factor.insert(ei, Int::one());
                let mut ej = vec![0; n];
                ej[j] = 1;
                factor.insert(ej, -Int::one());
                poly = mul(&poly, &factor);
            }
        }
        for &k in mu.parts() {
            let mut pk: Poly = BTreeMap::new();
            for i in 0..n {
                let mut e = vec![0; n];
                e[i] = k;
                pk.insert(e, Int::one());
            }
            poly = mul(&poly, &pk);
        }
        let target: Vec<u32> = (0..n)
            .map(|i| lam.part(i + 1) + (n - 1 - i) as u32)
            .collect();
        poly.get(&target).cloned().unwrap_or_else(Int::zero)
    }

    #[test]
    fn matches_frobenius_oracle() {
        for n in 1..=6u32 {
            for lam in Partition::all(n) {
                for mu in Partition::all(n) {
                    assert_eq!(
                        character(&lam, &mu).unwrap(),
                        frobenius_character(&lam, &mu),
                        "λ = {lam}, μ = {mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn s4_example_from_class_algebra() {
        // χ^{(2,2)}((2,2)) = 2, cross-checked by the Frobenius oracle
        assert_eq!(character(&p(&[2, 2]), &p(&[2, 2])).unwrap(), int(2));
        assert_eq!(frobenius_character(&p(&[2, 2]), &p(&[2, 2])), int(2));
    }

    #[test]
    fn dimension_is_character_at_identity() {
        for n in 0..=8u32 {
            for lam in Partition::all(n) {
                let ones = Partition::from_unsorted(vec![1; n as usize]);
                assert_eq!(character(&lam, &ones).unwrap(), lam.dimension());
            }
        }
    }

    #[test]
    fn orthogonality() {
        // Σ_λ χ^λ(μ)χ^λ(ρ) = δ_{μρ} z(μ)
        let mut cache = CharCache::new();
        for n in 1..=8u32 {
            let mus = Partition::all(n);
            for mu in &mus {
                for rho in &mus {
                    let mut acc = Int::zero();
                    for lam in Partition::all(n) {
                        acc += character_with(&mut cache, &lam, mu).unwrap()
                            * character_with(&mut cache, &lam, rho).unwrap();
                    }
                    let expect = if mu == rho {
                        centralizer_size(mu)
                    } else {
                        Int::zero()
                    };
                    assert_eq!(acc, expect, "n = {n}, μ = {mu}, ρ = {rho}");
                }
            }
        }
    }

    #[test]
    fn character_order_independent() {
        // MN value must not depend on the strip removal order
        let lam = p(&[4, 3, 1]);
        let chi = character(&lam, &p(&[3, 2, 2, 1])).unwrap();
        for perm in [[2, 1, 2, 3], [1, 2, 3, 2], [2, 2, 3, 1], [3, 2, 2, 1]] {
            let mut cache = CharCache::new();
            assert_eq!(mn_rec(&mut cache, &lam, &perm), chi);
        }
    }

    #[test]
    fn class_data_examples() {
        let cd = class_data(&p(&[2, 2, 2]));
        assert_eq!(cd.centralizer, int(48)); // 2^3 3!
        assert_eq!(class_data(&p(&[1, 1, 1, 1])).centralizer, int(24));
        assert_eq!(class_data(&p(&[1, 1, 1, 1])).class_size, int(1));
        let cd = class_data(&p(&[3, 1]));
        assert_eq!(cd.centralizer, int(3));
        assert_eq!(cd.class_size, int(8));
        for rho in Partition::all(7) {
            let cd = class_data(&rho);
            assert_eq!(cd.centralizer * cd.class_size, factorial(7));
        }
    }

    #[test]
    fn f_eta_examples() {
        assert_eq!(f_eta(&p(&[2, 2]), &p(&[2, 2])).unwrap(), rat_int(3));
        assert_eq!(f_eta(&p(&[3, 1]), &p(&[2, 2])).unwrap(), rat_int(-4));
        for lam in Partition::all(5) {
            let ones = Partition::from_unsorted(vec![1; 5]);
            assert_eq!(f_eta(&ones, &lam).unwrap(), rat_int(1));
        }
        // padding: f_{(2)} on |λ| = 4 partitions uses profile (2,1,1)
        let direct = {
            let chi = character(&p(&[2, 2]), &p(&[2, 1, 1])).unwrap();
            Rat::new(
                class_data(&p(&[2, 1, 1])).class_size * chi,
                p(&[2, 2]).dimension(),
            )
        };
        assert_eq!(f_eta(&p(&[2]), &p(&[2, 2])).unwrap(), direct);
        assert!(f_eta(&p(&[3, 1]), &p(&[2])).is_err());
    }

    #[test]
    fn involution_examples() {
        assert_eq!(char_involution(&p(&[2, 2])).unwrap(), int(2));
        assert_eq!(char_involution(&p(&[2])).unwrap(), int(1));
        assert!(char_involution(&p(&[2, 1])).is_err());
        assert_eq!(
            char_involution(&p(&[3, 2, 1])).unwrap(),
            Int::zero(),
            "unbalanced must vanish"
        );
    }

    #[test]
    fn involution_matches_murnaghan_nakayama() {
        let mut cache = CharCache::new();
        for n in (0..=12u64).step_by(2) {
            for lam in Partition::all(n as u32) {
                let twos = Partition::from_unsorted(vec![2; (n / 2) as usize]);
                let via_mn = character_with(&mut cache, &lam, &twos).unwrap();
                assert_eq!(char_involution(&lam).unwrap(), via_mn, "λ = {lam}");
            }
        }
    }

    #[test]
    fn quotient_dimension_product_formula() {
        // dim α dim β = |α|!|β|! / ∏(even hooks of λ)/2 — holds with a core too
        for lam in [p(&[5, 4, 4, 2]), p(&[4, 3, 3, 2]), p(&[6, 4, 2])] {
            let q = two_quotient(&lam);
            let mut den = Int::one();
            for h in lam.hook_lengths().into_iter().filter(|h| h % 2 == 0) {
                den *= h / 2;
            }
            let lhs = q.alpha.dimension() * q.beta.dimension();
            let rhs_num = factorial(q.alpha.size()) * factorial(q.beta.size());
            assert_eq!(lhs * den, rhs_num, "λ = {lam}");
        }
    }

    #[test]
    fn skew_examples() {
        let shape = SkewShape::new(p(&[3, 1]), p(&[1])).unwrap();
        assert_eq!(
            skew_character(&shape, &p(&[1, 1, 1])).unwrap(),
            int(3),
            "standard skew tableaux of (3,1)/(1)"
        );
        let lam = p(&[3, 2]);
        let triv = SkewShape::new(lam.clone(), lam).unwrap();
        assert_eq!(skew_character(&triv, &Partition::empty()).unwrap(), int(1));
        // (2,2)/(2) is a horizontal domino (height 0), (2,2)/(1,1) the
        // vertical one in column 2 (height 1)
        let shape = SkewShape::new(p(&[2, 2]), p(&[2])).unwrap();
        assert_eq!(skew_character(&shape, &p(&[2])).unwrap(), int(1));
        let shape = SkewShape::new(p(&[2, 2]), p(&[1, 1])).unwrap();
        assert_eq!(skew_character(&shape, &p(&[2])).unwrap(), int(-1));
        // reduces to the plain character when the inner shape is empty
        let mut cache = CharCache::new();
        for n in 1..=6u32 {
            for lam in Partition::all(n) {
                for mu in Partition::all(n) {
                    let shape = SkewShape::new(lam.clone(), Partition::empty()).unwrap();
                    assert_eq!(
                        skew_character_with(&mut cache, &shape, &mu).unwrap(),
                        character_with(&mut cache, &lam, &mu).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn skew_involution_small() {
        let mut cache = CharCache::new();
        for n in 0..=7u32 {
            for lam in Partition::all(n) {
                for k in (0..=n).filter(|k| (n - k) % 2 == 0) {
                    for mu in lam.subdiagrams_of_size(k) {
                        let shape = SkewShape::new(lam.clone(), mu).unwrap();
                        let twos = Partition::from_unsorted(vec![2; (shape.size() / 2) as usize]);
                        let mn = skew_character_with(&mut cache, &shape, &twos).unwrap();
                        let dom = skew_char_involution_with(&mut cache, &shape).unwrap();
                        assert_eq!(dom, mn, "shape = {:?}", shape);
                    }
                }
            }
        }
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[2])).unwrap(), int(1));
        assert_eq!(
            lr_coefficient(&p(&[1]), &p(&[1]), &p(&[1, 1])).unwrap(),
            int(1)
        );
        assert!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[3])).is_err());
    }

    #[test]
    fn lr_symmetry_and_dimension_identity() {
        // c^η_ab = c^η_ba, and Σ_η c^η_ab dim η = C(|a|+|b|, |a|) dim a dim b
        let pairs = [
            (p(&[1]), p(&[1])),
            (p(&[2]), p(&[1, 1])),
            (p(&[2, 1]), p(&[2])),
            (p(&[2, 2]), p(&[2, 1])),
            (p(&[3, 1]), p(&[2, 1])),
        ];
        for (a, b) in pairs {
            let n = (a.size() + b.size()) as u32;
            let mut total = Int::zero();
            for eta in Partition::all(n) {
                let c = lr_coefficient(&a, &b, &eta).unwrap();
                assert_eq!(c, lr_coefficient(&b, &a, &eta).unwrap());
                total += c * eta.dimension();
            }
            let expect =
                crate::num::binomial(a.size() + b.size(), a.size()) * a.dimension() * b.dimension();
            assert_eq!(total, expect, "a = {a}, b = {b}");
        }
    }
}
