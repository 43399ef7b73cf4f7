//! Contour functions of rotated Young diagrams and the Sobolev norm of
//! quotient differences.
//!
//! The contour `L_λ` is piecewise linear with slopes ±1: on the unit
//! interval around an occupied Maya site the slope is -1, on a vacant site
//! +1, and `L(x) = |x|` outside a compact set. Corners therefore sit at
//! integer abscissae (before scaling), which keeps the double-integral
//! quadrature for ‖Δ‖² exactly decomposable into per-rectangle closed forms
//! with logarithmic terms.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::num::Rat;
use crate::partition::Partition;
use crate::quotient::{is_balanced, two_quotient};

/// Piecewise-linear contour with `L(x) = |x|` tails outside the corner range.
#[derive(Clone, Debug, PartialEq)]
pub struct ContourFunction {
    /// corner points (x, L(x)) with strictly increasing x; never empty
    pub corners: Vec<(Rat, Rat)>,
    pub scale: Rat,
}

/// Integer corner list of the contour of λ at scale 1.
pub fn integer_corners(lam: &Partition) -> Vec<(i64, i64)> {
    let l = lam.len() as i64;
    let lo = -(l + 1);
    let hi = lam.part(1) as i64 + 1;
    // occupied(k + 1/2) ⇔ ∃ i ≥ 1: λ_i - i = k (including the tail i > ℓ)
    let occupied = |k: i64| -> bool {
        if k < -l {
            return true;
        }
        (1..=l).any(|i| lam.part(i as usize) as i64 - i == k)
    };
    let mut corners = vec![(lo, -lo)];
    let mut x = lo;
    let mut y = -lo;
    let mut prev_slope = -1i64; // left tail
    while x < hi {
        let slope = if occupied(x) { -1 } else { 1 };
        if slope != prev_slope {
            if corners.last() != Some(&(x, y)) {
                corners.push((x, y));
            }
            prev_slope = slope;
        }
        x += 1;
        y += slope;
    }
    corners.push((hi, y));
    debug_assert_eq!(y, hi, "contour must land on the |x| tail");
    // drop anchor points that are collinear with their neighbours
    let mut out: Vec<(i64, i64)> = Vec::with_capacity(corners.len());
    for c in corners {
        while out.len() >= 2 {
            let a = out[out.len() - 2];
            let b = out[out.len() - 1];
            if (b.0 - a.0) * (c.1 - a.1) == (c.0 - a.0) * (b.1 - a.1) {
                out.pop();
            } else {
                break;
            }
        }
        out.push(c);
    }
    // trim outermost corners lying on |x| with matching tail slope
    while out.len() >= 2 && out[0].1 == -out[0].0 && out[1].1 == -out[1].0 {
        out.remove(0);
    }
    while out.len() >= 2
        && out[out.len() - 1].1 == out[out.len() - 1].0
        && out[out.len() - 2].1 == out[out.len() - 2].0
    {
        out.pop();
    }
    out
}

/// Contour of λ, rescaled by `scale`.
pub fn contour(lam: &Partition, scale: Rat) -> Result<ContourFunction> {
    if !scale.is_positive() {
        return Err(Error::Domain("scale must be positive".into()));
    }
    let corners = integer_corners(lam)
        .into_iter()
        .map(|(x, y)| {
            (
                Rat::from_integer(x.into()) * &scale,
                Rat::from_integer(y.into()) * &scale,
            )
        })
        .collect();
    Ok(ContourFunction { corners, scale })
}

impl ContourFunction {
    pub fn eval(&self, x: &Rat) -> Rat {
        let first = &self.corners[0];
        if *x <= first.0 {
            return &first.1 + (&first.0 - x);
        }
        let last = &self.corners[self.corners.len() - 1];
        if *x >= last.0 {
            return &last.1 + (x - &last.0);
        }
        for w in self.corners.windows(2) {
            let (ref x0, ref y0) = w[0];
            let (ref x1, ref y1) = w[1];
            if x0 <= x && x <= x1 {
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            }
        }
        unreachable!("corner scan covers the interval")
    }

    /// ∫ (L(x) - |x|) dx, which equals 2 |λ| scale².
    pub fn area_above_abs(&self) -> Rat {
        let mut xs: Vec<Rat> = self.corners.iter().map(|(x, _)| x.clone()).collect();
        if xs.first().map_or(true, |x| x.is_positive()) || xs.last().map_or(true, |x| x.is_negative())
        {
            xs.push(Rat::zero());
            xs.sort();
        } else if !xs.iter().any(|x| x.is_zero()) {
            xs.push(Rat::zero());
            xs.sort();
        }
        let mut acc = Rat::zero();
        for w in xs.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            // integrand linear on [a, b]: trapezoid of L - |x|
            let fa = self.eval(a) - a.abs();
            let fb = self.eval(b) - b.abs();
            acc += (fa + fb) * (b - a) / Rat::from_integer(2.into());
        }
        acc
    }

    /// Slope sequence between consecutive integer sites over a window, as
    /// 0/1 bits (1 = occupied = slope -1), read with decreasing site order.
    pub fn slope_bits(lam: &Partition, window: std::ops::RangeInclusive<i64>) -> Vec<u8> {
        let l = lam.len() as i64;
        let occupied = |k: i64| -> bool {
            if k < -l {
                return true;
            }
            (1..=l).any(|i| lam.part(i as usize) as i64 - i == k)
        };
        window.rev().map(|k| u8::from(occupied(k))).collect()
    }
}

/// Piece of a piecewise-linear function: value `slope * x + intercept` on [lo, hi].
#[derive(Clone, Copy, Debug)]
struct Piece {
    lo: f64,
    hi: f64,
    slope: f64,
    intercept: f64,
}

/// Δ = L_α - L_β at scale 1 as pieces covering its support, or None if Δ ≡ 0.
fn delta_pieces(alpha: &Partition, beta: &Partition) -> Option<Vec<Piece>> {
    if alpha == beta {
        return None;
    }
    let ca = integer_corners(alpha);
    let cb = integer_corners(beta);
    let mut xs: Vec<i64> = ca.iter().map(|c| c.0).chain(cb.iter().map(|c| c.0)).collect();
    xs.sort_unstable();
    xs.dedup();
    let eval_int = |corners: &[(i64, i64)], x: i64| -> i64 {
        let first = corners[0];
        if x <= first.0 {
            return first.1 + (first.0 - x);
        }
        let last = corners[corners.len() - 1];
        if x >= last.0 {
            return last.1 + (x - last.0);
        }
        for w in corners.windows(2) {
            if w[0].0 <= x && x <= w[1].0 {
                return w[0].1 + (w[1].1 - w[0].1) * (x - w[0].0) / (w[1].0 - w[0].0);
            }
        }
        unreachable!()
    };
    let mut pieces = Vec::new();
    for w in xs.windows(2) {
        let (a, b) = (w[0], w[1]);
        let da = eval_int(&ca, a) - eval_int(&cb, a);
        let db = eval_int(&ca, b) - eval_int(&cb, b);
        let slope = (db - da) / (b - a);
        pieces.push(Piece {
            lo: a as f64,
            hi: b as f64,
            slope: slope as f64,
            intercept: (da - slope * a) as f64,
        });
    }
    // trim zero pieces at both ends (Δ vanishes outside the corner hull)
    while pieces
        .first()
        .map_or(false, |p| p.slope == 0.0 && p.intercept == 0.0)
    {
        pieces.remove(0);
    }
    while pieces
        .last()
        .map_or(false, |p| p.slope == 0.0 && p.intercept == 0.0)
    {
        pieces.pop();
    }
    if pieces.is_empty() {
        None
    } else {
        Some(pieces)
    }
}

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.abs().ln()
    }
}

/// ∫_c^d (αt + β) log|x - t| dt.
fn int_linear_log(alpha: f64, beta: f64, x: f64, c: f64, d: f64) -> f64 {
    let anti = |t: f64| {
        let u = x - t;
        -(alpha * x + beta) * (xlogx(u) - u)
            + alpha * (0.5 * u * xlogx(u) - 0.25 * u * u)
    };
    anti(d) - anti(c)
}

/// ∫_c^d q(t)/(x - t) dt for q(t) = (at + b)², assuming q(x) = 0 whenever
/// x touches [c, d] (continuity of Δ across shared breakpoints).
fn int_quad_over_linear(a: f64, b: f64, x: f64, c: f64, d: f64) -> f64 {
    let qa = a * a;
    let qb = 2.0 * a * b;
    let qx = (a * x + b) * (a * x + b);
    let anti = |t: f64| {
        let u: f64 = x - t;
        let log_term = if qx == 0.0 { 0.0 } else { qx * u.abs().ln() };
        -(0.5 * qa * u * u - (2.0 * qa * x + qb) * u + log_term)
    };
    anti(d) - anti(c)
}

/// ∫_{s∈P} ∫_{t∈Q} ((Δ(s) - Δ(t))/(s - t))² dt ds for two linear pieces.
fn rect_integral(p: &Piece, q: &Piece) -> f64 {
    let (a, b) = (p.lo, p.hi);
    let (c, d) = (q.lo, q.hi);
    let (s1, i1) = (p.slope, p.intercept);
    let (s2, i2) = (q.slope, q.intercept);
    if a == c && b == d && s1 == s2 && i1 == i2 {
        // diagonal block: constant integrand slope²
        return s1 * s1 * (b - a) * (d - c);
    }
    // ((Δ(s)-Δ(t))/(s-t))² = s1² + 2 s1 g(t)/(s-t) + g(t)²/(s-t)²,
    // g(t) = (s1 - s2) t + (i1 - i2)
    let ga = s1 - s2;
    let gb = i1 - i2;
    let term1 = s1 * s1 * (b - a) * (d - c);
    // ∫_a^b ds/(s-t) = log|b-t| - log|a-t|
    let term2 = 2.0
        * s1
        * (int_linear_log(ga, gb, b, c, d) - int_linear_log(ga, gb, a, c, d));
    // ∫_a^b ds/(s-t)² = 1/(a-t) - 1/(b-t); ∫ g² · that
    let term3 = int_quad_over_linear(ga, gb, a, c, d) - int_quad_over_linear(ga, gb, b, c, d);
    term1 + term2 + term3
}

/// Tail strips: t ranges over (-∞, lo] or [hi, ∞) where Δ(t) = 0.
/// ∫_{s∈P} Δ(s)² / (s - edge) ds with the sign arranged per side.
fn strip_integral(p: &Piece, edge: f64, left_side: bool) -> f64 {
    // ∫ q(s)/(s - edge) ds over [lo, hi], q(s) = (slope·s + intercept)²
    let qa = p.slope * p.slope;
    let qb = 2.0 * p.slope * p.intercept;
    let qe = (p.slope * edge + p.intercept) * (p.slope * edge + p.intercept);
    let anti = |s: f64| {
        let u: f64 = s - edge;
        let log_term = if qe == 0.0 { 0.0 } else { qe * u.abs().ln() };
        0.5 * qa * u * u + (2.0 * qa * edge + qb) * u + log_term
    };
    let val = anti(p.hi) - anti(p.lo);
    if left_side {
        val
    } else {
        -val
    }
}

/// ‖Δ‖² = ∫∫ ((Δ(s) - Δ(t))/(s - t))² ds dt for Δ = L_α - L_β at scale 1.
pub fn sobolev_sq_scale1(alpha: &Partition, beta: &Partition) -> f64 {
    let Some(pieces) = delta_pieces(alpha, beta) else {
        return 0.0;
    };
    let lo = pieces.first().unwrap().lo;
    let hi = pieces.last().unwrap().hi;
    let mut acc = 0.0;
    for p in &pieces {
        for q in &pieces {
            acc += rect_integral(p, q);
        }
        // t in (-∞, lo]: ∫ Δ(s)²/(s - t)² dt = Δ(s)²/(s - lo)
        acc += strip_integral(p, lo, true);
        // t in [hi, ∞): ∫ Δ(s)²/(s - t)² dt = Δ(s)²/(hi - s)
        acc += strip_integral(p, hi, false);
        // and symmetrically s in the tails, t in the support: equal by symmetry
        acc += strip_integral(p, lo, true);
        acc += strip_integral(p, hi, false);
    }
    acc
}

/// ‖Δ‖² for Δ = L_α - L_β at scale 1/√|λ| with (α, β) the 2-quotient of λ.
pub fn sobolev_norm_sq(lam: &Partition) -> Result<f64> {
    if !is_balanced(lam) {
        return Err(Error::Unbalanced);
    }
    if lam.is_empty() {
        return Ok(0.0);
    }
    let q = two_quotient(lam);
    Ok(sobolev_sq_scale1(&q.alpha, &q.beta) / lam.size() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, rat_int};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn vacuum_contour() {
        let c = contour(&Partition::empty(), rat_int(1)).unwrap();
        assert_eq!(c.eval(&rat_int(3)), rat_int(3));
        assert_eq!(c.eval(&rat_int(-2)), rat_int(2));
        assert_eq!(c.area_above_abs(), Rat::zero());
    }

    #[test]
    fn single_cell_contour() {
        // L(x) = 2 - |x| on [-1, 1]
        let c = contour(&p(&[1]), rat_int(1)).unwrap();
        assert_eq!(c.eval(&rat_int(0)), rat_int(2));
        assert_eq!(c.eval(&rat(1, 2)), rat(3, 2));
        assert_eq!(c.eval(&rat_int(1)), rat_int(1));
        assert_eq!(c.eval(&rat_int(5)), rat_int(5));
        assert_eq!(c.area_above_abs(), rat_int(2));
    }

    #[test]
    fn area_scaling() {
        for lam in [p(&[5, 4, 4, 2]), p(&[3, 1]), p(&[2, 2, 2])] {
            let c1 = contour(&lam, rat_int(1)).unwrap();
            assert_eq!(c1.area_above_abs(), rat_int(2 * lam.size() as i64));
            let c = contour(&lam, rat(1, 3)).unwrap();
            assert_eq!(
                c.area_above_abs(),
                rat_int(2 * lam.size() as i64) * rat(1, 9)
            );
        }
        assert!(contour(&p(&[1]), rat(-1, 2)).is_err());
    }

    #[test]
    fn slope_sequence_worked_example() {
        // 1 = occupied = vertical segment; decreasing site order matches the
        // printed sequence ...,0,0,0,1,0,1,1,0,0,1,0,0,1,1,1,...
        let bits = ContourFunction::slope_bits(&p(&[5, 4, 4, 2]), -7..=5);
        assert_eq!(bits, vec![0, 1, 0, 1, 1, 0, 0, 1, 0, 0, 1, 1, 1]);
    }

    /// Brute-force double quadrature over the plane (midpoint rule plus
    /// analytically-integrated tails), used as the oracle for the closed form.
    fn sobolev_brute(alpha: &Partition, beta: &Partition) -> f64 {
        let Some(pieces) = delta_pieces(alpha, beta) else {
            return 0.0;
        };
        let lo = pieces.first().unwrap().lo;
        let hi = pieces.last().unwrap().hi;
        let delta = |x: f64| -> f64 {
            if x <= lo || x >= hi {
                return 0.0;
            }
            for p in &pieces {
                if p.lo <= x && x <= p.hi {
                    return p.slope * x + p.intercept;
                }
            }
            0.0
        };
        let n = 2000usize;
        let step = (hi - lo) / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let s = lo + (i as f64 + 0.5) * step;
            for j in 0..n {
                let t = lo + (j as f64 + 0.5) * step;
                let q = if s == t {
                    // measure-zero; midpoints never coincide across cells anyway
                    0.0
                } else {
                    ((delta(s) - delta(t)) / (s - t)).powi(2)
                };
                acc += q * step * step;
            }
            // tails in t, exact: Δ(s)²(1/(s-lo) + 1/(hi-s)), doubled for s-tails
            let ds = delta(s);
            acc += 2.0 * ds * ds * (1.0 / (s - lo) + 1.0 / (hi - s)) * step;
        }
        acc
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let cases = [
            (p(&[1]), Partition::empty()),
            (p(&[2]), p(&[1])),
            (p(&[2, 1]), Partition::empty()),
            (p(&[3, 1]), p(&[2, 2])),
            (p(&[2, 2]), p(&[1])),
        ];
        for (a, b) in cases {
            let exact = sobolev_sq_scale1(&a, &b);
            let brute = sobolev_brute(&a, &b);
            assert!(
                (exact - brute).abs() < 5e-3 * exact.max(1.0),
                "α = {a}, β = {b}: {exact} vs {brute}"
            );
            // symmetry in the pair
            let swapped = sobolev_sq_scale1(&b, &a);
            assert!((exact - swapped).abs() < 1e-9);
        }
    }

    #[test]
    fn sobolev_norm_examples() {
        assert_eq!(sobolev_norm_sq(&p(&[2, 2])).unwrap(), 0.0);
        // 2x2 blocks have α = β
        assert_eq!(sobolev_norm_sq(&p(&[4, 4, 2, 2])).unwrap(), 0.0);
        assert!(sobolev_norm_sq(&p(&[2])).unwrap() > 0.0);
        assert!(sobolev_norm_sq(&p(&[3, 2, 1])).is_err());
        // scale covariance: ‖Δ‖² at scale 1/√n is the scale-1 value over n
        let lam = p(&[2]);
        let q = two_quotient(&lam);
        let s1 = sobolev_sq_scale1(&q.alpha, &q.beta);
        assert!((sobolev_norm_sq(&lam).unwrap() - s1 / 2.0).abs() < 1e-12);
    }
}
