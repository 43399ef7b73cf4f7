//! Eisenstein series, quasimodular fitting, and exact h → 0 asymptotics.
//!
//! The fit basis is the set of monomials E2(q)^a E2(q^2)^b E4(q^2)^c of
//! weight 2a + 2b + 4c up to a bound, together with the constant monomial.
//! These three series generate the quasimodular forms needed here and are
//! algebraically independent, so an exact linear solve either recovers the
//! unique polynomial or refutes quasimodularity at that weight.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::num::{rat, Int, Rat};
use crate::series::Series;
use crate::shifted::zeta_neg;
use crate::RationalSeries;

/// Σ_{d|n} d^k.
pub fn sigma_power(n: u64, k: u32) -> Int {
    let mut acc = Int::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            acc += crate::num::int(d as i64).pow(k);
            let e = n / d;
            if e != d {
                acc += crate::num::int(e as i64).pow(k);
            }
        }
        d += 1;
    }
    acc
}

/// Eisenstein series E_{2k}(q) = ζ(1-2k)/2 + Σ_n σ_{2k-1}(n) q^n.
pub fn eisenstein(two_k: u32, order: usize) -> Result<RationalSeries> {
    if two_k == 0 || two_k % 2 != 0 {
        return Err(Error::Domain(format!("E_{two_k} needs even positive weight")));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(zeta_neg(two_k as u64 - 1) / rat(2, 1));
    for n in 1..=order as u64 {
        coeffs.push(Rat::from_integer(sigma_power(n, two_k - 1)));
    }
    Ok(Series::from_coeffs(coeffs))
}

/// A polynomial in E2(q), E2(q^2), E4(q^2) and (for level-4 fits) E2(q^4):
/// exponent tuple (a, b, c, d) -> coefficient.
///
/// The three series named by the monomial indices a, b, c lie in QM(Γ₀(4))
/// but do not generate it; observables mixing the two quotient components or
/// the twisted sums need the fourth generator E2(q^4). The free generating
/// set of QM(Γ₀(4)) is {E2(q), E2(q^2), E2(q^4)}, with
/// E4(q^2) = (4/5)X² - (8/5)XY + (16/5)Y² for X = 2E2(q²)-E2(q),
/// Y = 2E2(q⁴)-E2(q²).
#[derive(Clone, PartialEq, Default)]
pub struct QuasimodularPoly {
    pub terms: BTreeMap<(u32, u32, u32, u32), Rat>,
}

impl QuasimodularPoly {
    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0, 0, 0), c);
        }
        QuasimodularPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial weight 2a + 2b + 4c + 2d.
    pub fn weight(&self) -> u32 {
        self.terms
            .keys()
            .map(|&(a, b, c, d)| 2 * a + 2 * b + 4 * c + 2 * d)
            .max()
            .unwrap_or(0)
    }

    /// True when no E2(q^4) monomial occurs.
    pub fn is_level2_basis(&self) -> bool {
        self.terms.keys().all(|&(_, _, _, d)| d == 0)
    }

    /// Expands the polynomial back into a q-series of the given order.
    pub fn expand(&self, order: usize) -> RationalSeries {
        let e2 = eisenstein(2, order).expect("weight 2");
        let e2q2 = e2.substitute_q_power(2, order);
        let e2q4 = e2.substitute_q_power(4, order);
        let e4q2 = eisenstein(4, order)
            .expect("weight 4")
            .substitute_q_power(2, order);
        let mut acc = Series::zero(order);
        for (&(a, b, c, d), coeff) in &self.terms {
            let mono = e2
                .pow(a)
                .mul(&e2q2.pow(b))
                .mul(&e4q2.pow(c))
                .mul(&e2q4.pow(d));
            acc = acc.add(&mono.scale(coeff));
        }
        acc
    }
}

impl fmt::Debug for QuasimodularPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuasimodularPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b, c, d), coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", crate::num::format_rat(coeff))?;
            if a > 0 {
                write!(f, "*E2(q)^{a}")?;
            }
            if b > 0 {
                write!(f, "*E2(q^2)^{b}")?;
            }
            if c > 0 {
                write!(f, "*E4(q^2)^{c}")?;
            }
            if d > 0 {
                write!(f, "*E2(q^4)^{d}")?;
            }
        }
        Ok(())
    }
}

/// Basis monomials (a, b, c, 0) in E2(q), E2(q²), E4(q²) with
/// 2a + 2b + 4c ≤ max_weight, constants first.
pub fn qm_basis(max_weight: u32) -> Vec<(u32, u32, u32, u32)> {
    let mut basis = Vec::new();
    for w in (0..=max_weight).step_by(2) {
        for c in 0..=(w / 4) {
            let rest = w - 4 * c;
            for a in 0..=(rest / 2) {
                let b = rest / 2 - a;
                basis.push((a, b, c, 0));
            }
        }
    }
    basis.sort_by_key(|&(a, b, c, _)| (2 * a + 2 * b + 4 * c, a, b, c));
    basis
}

/// Level-4 basis: monomials (a, b, 0, d) in the free generators E2(q),
/// E2(q²), E2(q⁴) with 2(a + b + d) ≤ max_weight.
pub fn qm_basis_level4(max_weight: u32) -> Vec<(u32, u32, u32, u32)> {
    let mut basis = Vec::new();
    let top = max_weight / 2;
    for t in 0..=top {
        for a in 0..=t {
            for b in 0..=(t - a) {
                basis.push((a, b, 0, t - a - b));
            }
        }
    }
    basis.sort_by_key(|&(a, b, _, d)| (a + b + d, a, b, d));
    basis
}

/// Exact least-structure fit of a q-series as a polynomial in the basis.
///
/// Requires the series order to be at least twice the number of basis
/// monomials (overdetermination guard). On a residual mismatch returns
/// `Error::FitFailed` carrying the first series index that cannot be matched.
pub fn quasimodular_fit(s: &RationalSeries, max_weight: u32) -> Result<QuasimodularPoly> {
    if max_weight % 2 != 0 {
        return Err(Error::Domain("max_weight must be even".into()));
    }
    fit_in_basis(s, qm_basis(max_weight))
}

/// Fit over the full level-4 generating set {E2(q), E2(q²), E2(q⁴)}; used
/// for observables that mix the quotient components or involve pbar, which
/// lie in QM(Γ₀(4)) but outside Q[E2(q), E2(q²), E4(q²)].
pub fn quasimodular_fit_level4(s: &RationalSeries, max_weight: u32) -> Result<QuasimodularPoly> {
    if max_weight % 2 != 0 {
        return Err(Error::Domain("max_weight must be even".into()));
    }
    fit_in_basis(s, qm_basis_level4(max_weight))
}

fn fit_in_basis(
    s: &RationalSeries,
    basis: Vec<(u32, u32, u32, u32)>,
) -> Result<QuasimodularPoly> {
    let m = basis.len();
    let need = 2 * m;
    if s.order() + 1 < need {
        return Err(Error::InsufficientOrder {
            have: s.order() + 1,
            need,
        });
    }
    let order = s.order();
    let cols: Vec<RationalSeries> = {
        let e2 = eisenstein(2, order)?;
        let e2q2 = e2.substitute_q_power(2, order);
        let e2q4 = e2.substitute_q_power(4, order);
        let e4q2 = eisenstein(4, order)?.substitute_q_power(2, order);
        basis
            .iter()
            .map(|&(a, b, c, d)| {
                e2.pow(a)
                    .mul(&e2q2.pow(b))
                    .mul(&e4q2.pow(c))
                    .mul(&e2q4.pow(d))
            })
            .collect()
    };
    // Gaussian elimination over Q on the (order+1) x m system
    let rows = order + 1;
    let mut mat: Vec<Vec<Rat>> = (0..rows)
        .map(|n| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c.coeff(n)).collect();
            row.push(s.coeff(n));
            row
        })
        .collect();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for col in 0..m {
        let Some(p) = (r..rows).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][col].clone();
        for j in col..=m {
            let v = mat[r][j].clone() / inv.clone();
            mat[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                for j in col..=m {
                    let v = mat[i][j].clone() - f.clone() * mat[r][j].clone();
                    mat[i][j] = v;
                }
            }
        }
        pivot_rows.push(col);
        r += 1;
        if r == rows {
            break;
        }
    }
    if pivot_rows.len() < m {
        return Err(Error::Domain(
            "fit basis degenerate at this order".into(),
        ));
    }
    let mut solution = vec![Rat::zero(); m];
    for (row, &col) in pivot_rows.iter().enumerate() {
        solution[col] = mat[row][m].clone();
    }
    // verify every coefficient; first mismatch is the residual index
    for n in 0..=order {
        let mut acc = Rat::zero();
        for (x, c) in solution.iter().zip(&cols) {
            if !x.is_zero() {
                acc += x * c.coeff(n);
            }
        }
        if acc != s.coeff(n) {
            return Err(Error::FitFailed { residual: n });
        }
    }
    let mut terms = BTreeMap::new();
    for (x, &mono) in solution.into_iter().zip(&basis) {
        if !x.is_zero() {
            terms.insert(mono, x);
        }
    }
    Ok(QuasimodularPoly { terms })
}

/// Polynomial in π² with rational coefficients; index j holds the (π²)^j term.
#[derive(Clone, PartialEq, Default)]
pub struct PiPoly(pub Vec<Rat>);

impl PiPoly {
    pub fn zero() -> Self {
        PiPoly(Vec::new())
    }

    pub fn rational(c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            PiPoly(vec![c])
        }
    }

    pub fn pi_power(two_j: u32, c: Rat) -> Self {
        let j = (two_j / 2) as usize;
        let mut v = vec![Rat::zero(); j + 1];
        v[j] = c;
        PiPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    fn trim(mut self) -> Self {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let mut v = vec![Rat::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in rhs.0.iter().enumerate() {
            v[i] += c;
        }
        PiPoly(v).trim()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rat::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        PiPoly(v).trim()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        PiPoly(self.0.iter().map(|x| x * c).collect()).trim()
    }

    pub fn eval_f64(&self) -> f64 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let mut acc = 0.0;
        for c in self.0.iter().rev() {
            acc = acc * pi2 + crate::num::rat_to_f64(c);
        }
        acc
    }
}

impl fmt::Debug for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{}", crate::num::format_rat(c))?,
                1 => write!(f, "({})*pi^2", crate::num::format_rat(c))?,
                _ => write!(f, "({})*pi^{}", crate::num::format_rat(c), 2 * j)?,
            }
        }
        Ok(())
    }
}

/// Laurent polynomial in 1/h with coefficients in Q[π²], valid up to
/// exponentially small terms as h → 0⁺ with q = e^{-h}.
#[derive(Clone, PartialEq, Default)]
pub struct LaurentAsymptotics {
    /// key e holds the coefficient of h^{-e}; e ≤ 0 encodes constants/positive powers
    pub terms: BTreeMap<i64, PiPoly>,
}

impl LaurentAsymptotics {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(0, PiPoly::rational(c));
        }
        LaurentAsymptotics { terms: t }
    }

    pub fn insert(&mut self, e: i64, p: PiPoly) {
        if !p.is_zero() {
            self.terms.insert(e, p);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&e, p) in &rhs.terms {
            let combined = out.terms.get(&e).map_or_else(|| p.clone(), |q| q.add(p));
            if combined.is_zero() {
                out.terms.remove(&e);
            } else {
                out.terms.insert(e, combined);
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = LaurentAsymptotics::zero();
        for (&e1, p1) in &self.terms {
            for (&e2, p2) in &rhs.terms {
                let prod = p1.mul(p2);
                if prod.is_zero() {
                    continue;
                }
                let e = e1 + e2;
                let combined = out.terms.get(&e).map_or(prod.clone(), |q| q.add(&prod));
                if combined.is_zero() {
                    out.terms.remove(&e);
                } else {
                    out.terms.insert(e, combined);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentAsymptotics {
            terms: self.terms.iter().map(|(&e, p)| (e, p.scale(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Highest power of 1/h with its coefficient.
    pub fn leading(&self) -> Option<(i64, &PiPoly)> {
        self.terms.iter().next_back().map(|(&e, p)| (e, p))
    }

    pub fn eval_f64(&self, h: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&e, p)| p.eval_f64() * h.powi(-e as i32))
            .sum()
    }
}

impl fmt::Debug for LaurentAsymptotics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentAsymptotics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + e.s.t.");
        }
        let mut first = true;
        for (&e, p) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "[{p}]")?,
                _ => write!(f, "[{p}]*h^{}", -e)?,
            }
        }
        write!(f, " + e.s.t.")
    }
}

/// The substitution laws, exact modulo exponentially small terms:
/// E2(e^{-h}) = π²/(6h²) - 1/(2h),
/// E2(e^{-2h}) = π²/(24h²) - 1/(4h),
/// E4(e^{-2h}) = π⁴/(240h⁴).
fn law_e2() -> LaurentAsymptotics {
    let mut l = LaurentAsymptotics::zero();
    l.insert(2, PiPoly::pi_power(2, rat(1, 6)));
    l.insert(1, PiPoly::rational(rat(-1, 2)));
    l
}

fn law_e2_q2() -> LaurentAsymptotics {
    let mut l = LaurentAsymptotics::zero();
    l.insert(2, PiPoly::pi_power(2, rat(1, 24)));
    l.insert(1, PiPoly::rational(rat(-1, 4)));
    l
}

fn law_e4_q2() -> LaurentAsymptotics {
    let mut l = LaurentAsymptotics::zero();
    l.insert(4, PiPoly::pi_power(4, rat(1, 240)));
    l
}

fn law_e2_q4() -> LaurentAsymptotics {
    let mut l = LaurentAsymptotics::zero();
    l.insert(2, PiPoly::pi_power(2, rat(1, 96)));
    l.insert(1, PiPoly::rational(rat(-1, 8)));
    l
}

/// Substitutes the h-laws into a quasimodular polynomial (the fourth law is
/// E2(e^{-4h}) = π²/(96h²) - 1/(8h) + e.s.t.).
pub fn asymptotics(p: &QuasimodularPoly) -> LaurentAsymptotics {
    let (e2, e2q2, e4q2, e2q4) = (law_e2(), law_e2_q2(), law_e4_q2(), law_e2_q4());
    let mut acc = LaurentAsymptotics::zero();
    for (&(a, b, c, d), coeff) in &p.terms {
        let term = e2
            .pow(a)
            .mul(&e2q2.pow(b))
            .mul(&e4q2.pow(c))
            .mul(&e2q4.pow(d))
            .scale(coeff);
        acc = acc.add(&term);
    }
    acc
}

/// A numeric value with a certified absolute error bound.
#[derive(Clone, Copy, Debug)]
pub struct Certified {
    pub value: f64,
    pub error: f64,
}

/// Evaluates Σ c_n e^{-hn} with a certified truncation bound, assuming
/// |c_n| ≤ e^{growth_c √n}. Errors out if the certificate exceeds `tol`.
pub fn eval_at_h(s: &RationalSeries, h: f64, growth_c: f64, tol: f64) -> Result<Certified> {
    if h <= 0.0 {
        return Err(Error::Domain("h must be positive".into()));
    }
    let n1 = s.order() as f64 + 1.0;
    // for n ≥ N+1 the exponent c√n - hn decreases at rate ≥ g per step
    let g = h - growth_c.max(0.0) / (2.0 * n1.sqrt());
    let tail = if g > 0.0 {
        (growth_c.max(0.0) * n1.sqrt() - h * n1).exp() / (1.0 - (-g).exp())
    } else {
        f64::INFINITY
    };
    let mut value = 0.0;
    let mut mag = 0.0;
    for (k, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = crate::num::rat_to_f64(c) * (-h * k as f64).exp();
        value += term;
        mag += term.abs();
    }
    let rounding = mag * 1e-14;
    let error = tail + rounding;
    if !(error <= tol) {
        return Err(Error::TailBound { bound: error, tol });
    }
    Ok(Certified { value, error })
}

#[allow(unused_imports)]
use num_traits::Pow;
