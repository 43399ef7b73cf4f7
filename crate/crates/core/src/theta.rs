//! Dedekind eta and the Jacobi theta function as exact truncated products.
//!
//! Fractional q-exponents (1/24 for eta, 1/8 for eta³ against the theta sum
//! side) are handled by a sparse series over the lattice (1/den)Z.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::num::{Int, Rat};

/// Sparse truncated series Σ c_k q^{k/den}, known for k/den < trunc/den.
#[derive(Clone, Debug, PartialEq)]
pub struct FracSeries {
    pub den: i64,
    /// exponent numerators -> coefficients
    pub coeffs: BTreeMap<i64, Rat>,
    /// truncation bound, in numerator units
    pub trunc: i64,
}

impl FracSeries {
    pub fn zero(den: i64, trunc: i64) -> Self {
        FracSeries {
            den,
            coeffs: BTreeMap::new(),
            trunc,
        }
    }

    pub fn one(den: i64, trunc: i64) -> Self {
        let mut s = Self::zero(den, trunc);
        s.coeffs.insert(0, Rat::one());
        s
    }

    /// Coefficient of q^{num/den} (num in this series' units).
    pub fn coeff(&self, num: i64) -> Rat {
        self.coeffs.get(&num).cloned().unwrap_or_else(Rat::zero)
    }

    /// Rescales the exponent lattice to a finer denominator.
    pub fn with_den(&self, den: i64) -> Self {
        assert!(den % self.den == 0);
        let f = den / self.den;
        FracSeries {
            den,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k * f, c.clone())).collect(),
            trunc: self.trunc * f,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let den = num_integer::lcm(self.den, rhs.den);
        let a = self.with_den(den);
        let b = rhs.with_den(den);
        let trunc = a.trunc.min(b.trunc);
        let mut out = FracSeries::zero(den, trunc);
        for (&ka, ca) in &a.coeffs {
            for (&kb, cb) in &b.coeffs {
                let k = ka + kb;
                if k >= trunc {
                    continue;
                }
                let entry = out.coeffs.entry(k).or_insert_with(Rat::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    out.coeffs.remove(&k);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        FracSeries {
            den: self.den,
            coeffs: self.coeffs.iter().map(|(&k, x)| (k, x * c)).collect(),
            trunc: self.trunc,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let den = num_integer::lcm(self.den, rhs.den);
        let a = self.with_den(den);
        let b = rhs.with_den(den);
        let trunc = a.trunc.min(b.trunc);
        let mut out = FracSeries::zero(den, trunc);
        for (&k, c) in a.coeffs.iter().chain(b.coeffs.iter()) {
            if k >= trunc {
                continue;
            }
            let entry = out.coeffs.entry(k).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                out.coeffs.remove(&k);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FracSeries::one(self.den, self.trunc);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// η(q) = q^{1/24} ∏_{n≥1} (1 - q^n), with exponents below order + 1.
pub fn dedekind_eta(order: usize) -> FracSeries {
    let trunc = 24 * (order as i64 + 1);
    let mut acc = FracSeries::zero(24, trunc);
    acc.coeffs.insert(1, Rat::one()); // q^{1/24}
    for n in 1..=order as i64 {
        let mut factor = FracSeries::one(24, trunc);
        factor.coeffs.insert(24 * n, -Rat::one());
        acc = acc.mul(&factor);
    }
    acc
}

/// Laurent polynomial in x with [`FracSeries`] coefficients; x-exponents are
/// half-integers stored doubled.
pub type ThetaExpansion = BTreeMap<i64, FracSeries>;

/// ϑ(x, q) = (x^{1/2} - x^{-1/2}) ∏_{i≥1} (1-q^i x)(1-q^i/x)/(1-q^i)²,
/// expanded to q-order `order` over all reachable x-exponents.
///
/// The product form is antisymmetric under x -> 1/x; together with the
/// triple-product identity against η³ this pins the prefactor convention.
pub fn theta(order: usize) -> ThetaExpansion {
    let trunc = order as i64 + 1;
    // start with x^{1/2} - x^{-1/2}
    let mut acc: ThetaExpansion = BTreeMap::new();
    acc.insert(1, FracSeries::one(1, trunc));
    let mut neg = FracSeries::zero(1, trunc);
    neg.coeffs.insert(0, -Rat::one());
    acc.insert(-1, neg);

    // (1 - q^i)^{-2} as a plain series: expand ∏ (1-q^i)^{-2} once
    let mut inv_part = crate::RationalSeries::one(order);
    for i in 1..=order {
        // multiply by Σ_k (k+1) q^{ik}
        let mut factor = crate::RationalSeries::zero(order);
        let mut k = 0usize;
        while i * k <= order {
            factor.set_coeff(i * k, Rat::from_integer(Int::from(k as i64 + 1)));
            k += 1;
        }
        inv_part = inv_part.mul(&factor);
    }

    for i in 1..=order as i64 {
        // multiply by (1 - q^i x) then (1 - q^i / x)
        for shift in [1i64, -1] {
            let mut next: ThetaExpansion = BTreeMap::new();
            for (&xe, qs) in &acc {
                // copy term
                let entry = next.entry(xe).or_insert_with(|| FracSeries::zero(1, trunc));
                *entry = entry.add(qs);
                // - q^i x^{±1} term
                let mut shifted = FracSeries::zero(1, trunc);
                for (&k, c) in &qs.coeffs {
                    if k + i < trunc {
                        shifted.coeffs.insert(k + i, -c.clone());
                    }
                }
                if !shifted.coeffs.is_empty() {
                    let entry = next
                        .entry(xe + 2 * shift)
                        .or_insert_with(|| FracSeries::zero(1, trunc));
                    *entry = entry.add(&shifted);
                }
            }
            next.retain(|_, v| !v.coeffs.is_empty());
            acc = next;
        }
    }

    // multiply every x-coefficient by ∏(1-q^i)^{-2}
    let inv_frac = FracSeries {
        den: 1,
        coeffs: inv_part
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64, c.clone()))
            .collect(),
        trunc,
    };
    acc.into_iter()
        .map(|(xe, qs)| (xe, qs.mul(&inv_frac)))
        .filter(|(_, qs)| !qs.coeffs.is_empty())
        .collect()
}

/// Restriction of [`theta`] to a window of doubled x-exponents.
pub fn theta_expansion(window: (i64, i64), order: usize) -> ThetaExpansion {
    theta(order)
        .into_iter()
        .filter(|(xe, _)| window.0 <= *xe && *xe <= window.1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, rat_int};

    #[test]
    fn eta_leading_terms() {
        let eta = dedekind_eta(12);
        assert_eq!(eta.coeff(1), rat_int(1)); // q^{1/24}
        // η = q^{1/24}(1 - q - q² + q⁵ + q⁷ - q¹² - ...)
        assert_eq!(eta.coeff(1 + 24), rat_int(-1));
        assert_eq!(eta.coeff(1 + 48), rat_int(-1));
        assert_eq!(eta.coeff(1 + 24 * 5), rat_int(1));
        assert_eq!(eta.coeff(1 + 24 * 7), rat_int(1));
        assert_eq!(eta.coeff(1 + 24 * 3), rat_int(0));
        assert_eq!(eta.coeff(1 + 24 * 12), rat_int(-1));
    }

    #[test]
    fn theta_antisymmetry() {
        let th = theta(8);
        for (&xe, qs) in &th {
            let mirrored = th.get(&(-xe)).expect("mirror exponent present");
            assert_eq!(qs.scale(&rat(-1, 1)), mirrored.clone(), "x-exp {xe}");
        }
    }

    #[test]
    fn jacobi_triple_product() {
        // η³(q) ϑ(x, q) = Σ_n (-1)^n q^{(n+1/2)²/2} x^{n+1/2},
        // checked coefficientwise to order q^10 on x-exponents in [-9/2, 9/2]
        let order = 10;
        let eta3 = dedekind_eta(order).pow(3);
        let th = theta_expansion((-9, 9), order);
        for xe in (-9..=9i64).step_by(2) {
            let lhs = th
                .get(&xe)
                .map(|qs| eta3.mul(qs))
                .unwrap_or_else(|| FracSeries::zero(24, 24 * order as i64));
            // rhs: n + 1/2 = xe/2 → n = (xe-1)/2; exponent (n+1/2)²/2 = xe²/8
            let n = (xe - 1) / 2;
            let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
            let q_num_24 = 3 * xe * xe; // (xe²/8)·24
            for k in 0..lhs.trunc {
                let expect = if k == q_num_24 { rat_int(sign) } else { rat_int(0) };
                assert_eq!(lhs.coeff(k), expect, "x-exp {xe}/2, q-exp {k}/24");
            }
        }
    }
}
