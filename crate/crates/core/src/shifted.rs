//! Shifted Schur functions and the shifted power sums `p_k`, `pbar_k`.
//!
//! `s*_μ` is evaluated through its determinant-ratio definition in
//! `n = max(ℓ(λ), ℓ(μ)) + 1` variables; both determinants have integer
//! entries (falling factorials of non-negative integers), so a fraction-free
//! Bareiss elimination keeps everything exact. The regularization constants
//! use exact Bernoulli numbers for ζ(-k) and, for the twisted sums, the
//! coefficients of 1/(e^{z/2} + e^{-z/2}).

use num_traits::{One, Zero};

use crate::num::{factorial, int, rat, Int, Rat};
use crate::partition::Partition;

/// Bernoulli numbers B_0..B_n (B_1 = -1/2 convention).
pub fn bernoulli_numbers(n: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Rat::one());
            continue;
        }
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rat::from_integer(crate::num::binomial(m as u64 + 1, j as u64)) * bj;
        }
        b.push(-acc / Rat::from_integer(int(m as i64 + 1)));
    }
    b
}

/// ζ(-k) = -B_{k+1}/(k+1) for k ≥ 1 (and ζ(0) = -1/2).
pub fn zeta_neg(k: u64) -> Rat {
    use std::sync::OnceLock;
    static SMALL: OnceLock<Vec<Rat>> = OnceLock::new();
    let table = SMALL.get_or_init(|| {
        let b = bernoulli_numbers(33);
        (0..32)
            .map(|k| -b[k + 1].clone() / Rat::from_integer(int(k as i64 + 1)))
            .collect()
    });
    if let Some(v) = table.get(k as usize) {
        return v.clone();
    }
    let b = bernoulli_numbers(k as usize + 1);
    -b[k as usize + 1].clone() / Rat::from_integer(int(k as i64 + 1))
}

/// Falling factorial (x ↓ k) = x(x-1)...(x-k+1); (x ↓ 0) = 1.
pub fn falling_factorial(x: &Rat, k: u64) -> Rat {
    let mut acc = Rat::one();
    for j in 0..k {
        acc *= x - Rat::from_integer(int(j as i64));
    }
    acc
}

fn falling_int(x: i64, k: i64) -> Int {
    debug_assert!(k >= 0);
    let mut acc = Int::one();
    for j in 0..k {
        acc *= x - j;
    }
    acc
}

/// Fraction-free Bareiss determinant of an integer matrix.
fn det_bareiss(mut m: Vec<Vec<Int>>) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Int::from(sign) * m[n - 1][n - 1].clone()
}

/// s*_μ(λ) in a fixed number `n ≥ max(ℓ(λ), ℓ(μ))` of variables.
pub fn shifted_schur_n(mu: &Partition, lam: &Partition, n: usize) -> Rat {
    assert!(n >= lam.len().max(mu.len()), "too few variables");
    if n == 0 {
        return Rat::one(); // both empty
    }
    let a: Vec<i64> = (1..=n)
        .map(|i| lam.part(i) as i64 + n as i64 - i as i64)
        .collect();
    let num: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| falling_int(a[i], mu.part(j + 1) as i64 + n as i64 - j as i64 - 1))
                .collect()
        })
        .collect();
    let den: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| falling_int(a[i], n as i64 - j as i64 - 1)).collect())
        .collect();
    Rat::new(det_bareiss(num), det_bareiss(den))
}

/// Shifted Schur function s*_μ evaluated at the partition λ.
pub fn shifted_schur(mu: &Partition, lam: &Partition) -> Rat {
    let n = lam.len().max(mu.len()) + 1;
    shifted_schur_n(mu, lam, n)
}

fn pow_int(base: i64, k: u32) -> Int {
    let mut acc = Int::one();
    for _ in 0..k {
        acc *= base;
    }
    acc
}

fn pow_i128(base: i128, k: u32) -> Option<i128> {
    let mut acc: i128 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Telescoping numerator Σ_i [(2λ_i-2i+1)^k - (1-2i)^k] in machine words,
/// None on (unlikely) overflow.
fn telescope_i128(lam: &Partition, k: u32, twisted: bool) -> Option<i128> {
    let mut acc: i128 = 0;
    for i in 1..=lam.len() as i128 {
        let li = lam.part(i as usize) as i128;
        let mut up = pow_i128(2 * li - 2 * i + 1, k)?;
        let mut down = pow_i128(1 - 2 * i, k)?;
        if twisted {
            if (li - i + 1).rem_euclid(2) == 1 {
                up = -up;
            }
            if (1 - i).rem_euclid(2) == 1 {
                down = -down;
            }
        }
        acc = acc.checked_add(up.checked_sub(down)?)?;
    }
    Some(acc)
}

/// Shifted power sum
/// p_k(λ) = Σ_i [(λ_i - i + 1/2)^k - (-i + 1/2)^k] + (1 - 2^{-k}) ζ(-k).
pub fn p_k(lam: &Partition, k: u32) -> Rat {
    assert!(k >= 1);
    let two_k = Rat::from_integer(pow_int(2, k));
    let reg = (Rat::one() - Rat::one() / &two_k) * zeta_neg(k as u64);
    if let Some(num) = telescope_i128(lam, k, false) {
        return Rat::new(Int::from(num), pow_int(2, k)) + reg;
    }
    let mut acc = Rat::zero();
    for i in 1..=lam.len() as i64 {
        let up = pow_int(2 * lam.part(i as usize) as i64 - 2 * i + 1, k);
        let down = pow_int(1 - 2 * i, k);
        acc += Rat::new(up - down, pow_int(2, k));
    }
    acc + reg
}

/// Twisted constants c_k: Σ_k c_k z^k / k! = 1/(e^{z/2} + e^{-z/2}).
pub fn twisted_constant(k: u32) -> Rat {
    use std::sync::OnceLock;
    static SMALL: OnceLock<Vec<Rat>> = OnceLock::new();
    let table = SMALL.get_or_init(|| (0..32).map(twisted_constant_uncached).collect());
    match table.get(k as usize) {
        Some(v) => v.clone(),
        None => twisted_constant_uncached(k),
    }
}

fn twisted_constant_uncached(k: u32) -> Rat {
    // invert 2 cosh(z/2) = Σ_{m even} 2 (1/2)^m z^m / m!
    let k = k as usize;
    let mut inv: Vec<Rat> = Vec::with_capacity(k + 1);
    let a = |m: usize| -> Rat {
        if m % 2 != 0 {
            return Rat::zero();
        }
        rat(2, 1) / (Rat::from_integer(pow_int(2, m as u32)) * Rat::from_integer(factorial(m as u64)))
    };
    for j in 0..=k {
        if j == 0 {
            inv.push(Rat::one() / a(0));
            continue;
        }
        let mut acc = Rat::zero();
        for (i, c) in inv.iter().enumerate() {
            acc += c * a(j - i);
        }
        inv.push(-acc / a(0));
    }
    inv[k].clone() * Rat::from_integer(factorial(k as u64))
}

/// Twisted shifted power sum
/// pbar_k(λ) = Σ_i [(-1)^{λ_i-i+1}(λ_i-i+1/2)^k - (-1)^{i+1}(-i+1/2)^k] + c_k.
pub fn p_bar_k(lam: &Partition, k: u32) -> Rat {
    assert!(k >= 1);
    if let Some(num) = telescope_i128(lam, k, true) {
        return Rat::new(Int::from(num), pow_int(2, k)) + twisted_constant(k);
    }
    let mut acc = Rat::zero();
    for i in 1..=lam.len() as i64 {
        let li = lam.part(i as usize) as i64;
        let s_up = if (li - i + 1).rem_euclid(2) == 0 { 1 } else { -1 };
        let s_down = if (-i + 1).rem_euclid(2) == 0 { 1 } else { -1 };
        let up = pow_int(2 * li - 2 * i + 1, k) * s_up;
        let down = pow_int(1 - 2 * i, k) * s_down;
        acc += Rat::new(up - down, pow_int(2, k));
    }
    acc + twisted_constant(k)
}
