//! Partition statistics: the normalizer Z(q), Meinardus ratios, measure
//! concentration, the hook-approximation remainder and the limit-shape curve.

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::contour::sobolev_sq_scale1;
use crate::error::{Error, Result};
use crate::num::{int, ln_int, ln_rat, Int, Rat};
use crate::partition::Partition;
use crate::quotient::{balanced_with_quotients, from_two_quotient, TwoQuotient};
use crate::series::Series;
use crate::weight::weight_hooks;
use crate::RationalSeries;

/// p(0..=n) by the standard coin-change recurrence.
pub fn partition_counts(n: u64) -> Vec<Int> {
    let n = n as usize;
    let mut table = vec![Int::zero(); n + 1];
    table[0] = Int::one();
    for part in 1..=n {
        for m in part..=n {
            let add = table[m - part].clone();
            table[m] += add;
        }
    }
    table
}

/// Generating function Σ p(n) qⁿ = ∏ (1-q^i)^{-1}.
pub fn partition_gf(order: usize) -> RationalSeries {
    Series::from_coeffs(
        partition_counts(order as u64)
            .into_iter()
            .map(Rat::from_integer)
            .collect(),
    )
}

/// Scaled integer coefficients u_m = Z_{2m} 4^m of Z(q)² = ∏(1-q^{2i})^{-1}:
/// u_m = (p(m) 4^m - Σ_{j=1}^{m-1} u_j u_{m-j}) / 2.
fn z_scaled_integers(m_max: usize) -> Vec<Int> {
    let p = partition_counts(m_max as u64);
    let mut u = Vec::with_capacity(m_max + 1);
    u.push(Int::one());
    let four = int(4);
    let mut four_pow = Int::one();
    for m in 1..=m_max {
        four_pow *= &four;
        let mut acc = &p[m] * &four_pow;
        for j in 1..m {
            acc -= &u[j] * &u[m - j];
        }
        u.push(acc / 2);
    }
    u
}

/// Z(q) = Σ_λ q^{|λ|} w(λ) = ∏ (1-q^{2i})^{-1/2}, via the product expansion.
pub fn z_series(order: usize) -> RationalSeries {
    let u = z_scaled_integers(order / 2);
    let mut coeffs = vec![Rat::zero(); order + 1];
    let mut four_pow = Int::one();
    for (m, um) in u.iter().enumerate() {
        if 2 * m <= order {
            coeffs[2 * m] = Rat::new(um.clone(), four_pow.clone());
        }
        four_pow *= 4;
    }
    Series::from_coeffs(coeffs)
}

/// Z(q) by direct enumeration of all partitions with their hook weights.
pub fn z_series_enumerated(order: usize) -> RationalSeries {
    let coeffs: Vec<Rat> = (0..=order as u64)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            Partition::all(n as u32)
                .into_par_iter()
                .map(|lam| weight_hooks(&lam))
                .reduce(Rat::zero, |a, b| a + b)
        })
        .collect();
    Series::from_coeffs(coeffs)
}

/// Z_n, the total pillowcase weight of partitions of n.
pub fn z_n(n: u64) -> Rat {
    if n % 2 != 0 {
        return Rat::zero();
    }
    let m = (n / 2) as usize;
    let u = z_scaled_integers(m);
    Rat::new(u[m].clone(), int(4).pow(m as u32))
}

/// Z_n n^{7/8} e^{-π√(n/6)} 2^{1/8} 3^{3/8}; this is the normalization of
/// Lemma-style claims with constant 1/(2^{1/8} 3^{3/8}). The Meinardus
/// theorem applied to ∏(1-q^{2i})^{-1/2} actually yields the constant
/// 1/(2^{9/8} 3^{3/8}), so the ratio tends to 1/2; see
/// [`meinardus_ratio_corrected`] for the version normalized to 1.
pub fn meinardus_ratio(n: u64) -> Result<f64> {
    if n % 2 != 0 || n == 0 {
        return Err(Error::Domain("meinardus ratio needs even n ≥ 2".into()));
    }
    let zn = z_n(n);
    let ln = ln_rat(&zn) + (7.0 / 8.0) * (n as f64).ln()
        - std::f64::consts::PI * (n as f64 / 6.0).sqrt()
        + (2f64).ln() / 8.0
        + 3.0 * (3f64).ln() / 8.0;
    Ok(ln.exp())
}

/// Z_n n^{7/8} e^{-π√(n/6)} 2^{9/8} 3^{3/8}, which tends to 1 (the constant
/// 2^{-9/8} 3^{-3/8} follows from Meinardus' theorem with a_n = 1/2, α = 1,
/// A = 1/2, D(0) = -1/4, D'(0) = -(1/4) log 2π and the q → q² substitution).
pub fn meinardus_ratio_corrected(n: u64) -> Result<f64> {
    Ok(meinardus_ratio(n)? * 2.0)
}

/// p(n) · 4n√3 · e^{-π√(2n/3)}, which tends to 1.
pub fn meinardus_partition_ratio(n: u64) -> f64 {
    let p = partition_counts(n);
    let ln = ln_int(&p[n as usize]) + (4.0 * n as f64 * (3f64).sqrt()).ln()
        - std::f64::consts::PI * (2.0 * n as f64 / 3.0).sqrt();
    ln.exp()
}

/// c(x) = ½ Σ_{k≥1} 1/(k(k+1)(2k+1) x^{2k}) to absolute tolerance ~1e-12.
pub fn c_remainder(x: f64) -> Result<f64> {
    if x < 1.0 {
        return Err(Error::Domain(format!("c(x) needs x ≥ 1, got {x}")));
    }
    let tol = 1e-12;
    let x2 = x * x;
    let mut acc = 0.0;
    let mut xpow = 1.0;
    for k in 1..1_000_000u64 {
        xpow *= x2;
        let kf = k as f64;
        let term = 1.0 / (kf * (kf + 1.0) * (2.0 * kf + 1.0) * xpow);
        acc += term;
        // tail bound: Σ_{j>k} 1/(2j³ x^{2j}) ≤ 1/(4k²) for x ≥ 1
        if 1.0 / (4.0 * kf * kf) < tol && term < tol {
            break;
        }
    }
    Ok(0.5 * acc)
}

/// w-probability of {balanced λ ⊢ n : ‖Δ‖ > ε} at scale 1/√n; ε = 0 counts
/// everything with α ≠ β exactly.
pub fn concentration_stat(n: u64, eps: f64) -> Result<Rat> {
    if n % 2 != 0 {
        return Err(Error::Domain("concentration needs even n".into()));
    }
    if n > crate::engine::DEFAULT_BUDGET {
        return Err(Error::Budget(format!(
            "n = {n} exceeds the enumeration budget {}",
            crate::engine::DEFAULT_BUDGET
        )));
    }
    let items = balanced_with_quotients(n);
    let (num, den) = items
        .into_par_iter()
        .map(|(lam, alpha, beta)| {
            let w = weight_hooks(&lam);
            let over = if alpha == beta {
                false
            } else if eps <= 0.0 {
                true
            } else {
                sobolev_sq_scale1(&alpha, &beta) / n as f64 > eps * eps
            };
            if over {
                (w.clone(), w)
            } else {
                (Rat::zero(), w)
            }
        })
        .reduce(
            || (Rat::zero(), Rat::zero()),
            |a, b| (a.0 + b.0, a.1 + b.1),
        );
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(num / den)
}

/// The limit-shape curve y(x) solving e^{-πx/√6} + e^{-πy/√6} = 1.
pub fn limit_shape_curve(x: f64) -> f64 {
    let c = std::f64::consts::PI / 6f64.sqrt();
    -(-(-c * x).exp()).ln_1p() / c
}

/// Deterministic sample of balanced partitions with |λ| ≤ max_size.
pub fn random_balanced(max_size: u64, count: usize, seed: u64) -> Vec<Partition> {
    assert!(max_size >= 2);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let m_max = (max_size / 2) as u32;
    // pre-enumerate partitions of each size up to m_max
    let tables: Vec<Vec<Partition>> = (0..=m_max).map(Partition::all).collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let m = rng.gen_range(1..=m_max);
        let k = rng.gen_range(0..=m);
        let alpha = tables[k as usize][rng.gen_range(0..tables[k as usize].len())].clone();
        let rest = &tables[(m - k) as usize];
        let beta = rest[rng.gen_range(0..rest.len())].clone();
        out.push(from_two_quotient(&TwoQuotient::new(alpha, beta, 0)));
    }
    out
}

/// Scalar prefactor of the next-term expansion as a q-series:
/// 2 K^{|ν|-2} ⟨p₂⟩ / z(ν) with K = √2 ⟨p₁(α)⟩, i.e.
/// 2^{|ν|/2} ⟨p₁(α)⟩^{|ν|-2} ⟨p₂⟩ / z(ν).
pub fn next_term_prefactor_series(nu: &Partition, order: usize) -> Result<RationalSeries> {
    crate::weight::validate_nu(nu)?;
    if nu.size() < 2 {
        return Err(Error::Domain("|ν| must be at least 2".into()));
    }
    use crate::engine::{expectation, ExpectationQuery, Measure, Mode, Obs};
    let p1a = expectation(&ExpectationQuery::new(
        Obs::PAlpha(1),
        Measure::Pillowcase,
        Mode::QSeries(order),
    ))?
    .into_series();
    let p2 = expectation(&ExpectationQuery::new(
        Obs::P(2),
        Measure::Pillowcase,
        Mode::QSeries(order),
    ))?
    .into_series();
    let z = crate::character::class_data(nu).centralizer;
    let scale = Rat::new(int(2).pow(nu.size() as u32 / 2), z);
    Ok(p1a.pow(nu.size() as u32 - 2).mul(&p2).scale(&scale))
}
