//! Expectations of shifted-symmetric observables under the pillowcase and
//! uniform measures, in fixed-n and q-series modes.
//!
//! Observables are expression trees over p_k(λ), pbar_k(λ), p_k(α), p_k(β),
//! s*_μ(α), s*_μ(β), |λ| and rational constants, combined with +, -, *, ^.
//! `center(e)^k` denotes the k-th centered moment factor (e - ⟨e⟩)^k; it is
//! expanded binomially through plain moments, so it must be the entire
//! observable (possibly scaled by a constant).

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::num::{int, Rat};
use crate::partition::Partition;
use crate::series::Series;
use crate::shifted::{p_bar_k, p_k, shifted_schur};
use crate::stats::{partition_gf, z_series};
use crate::RationalSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    Pillowcase,
    Uniform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    FixedN(u64),
    QSeries(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Obs {
    Const(Rat),
    Size,
    P(u32),
    PBar(u32),
    PAlpha(u32),
    PBeta(u32),
    SStarAlpha(Partition),
    SStarBeta(Partition),
    Add(Box<Obs>, Box<Obs>),
    Sub(Box<Obs>, Box<Obs>),
    Mul(Box<Obs>, Box<Obs>),
    Neg(Box<Obs>),
    Pow(Box<Obs>, u32),
    /// centered power (inner - ⟨inner⟩)^k
    Center(Box<Obs>, u32),
}

/// Per-partition memo for the atom values shared across a batch of
/// observables (p_k, pbar_k and the quotient variants for small k).
#[derive(Default)]
pub struct EvalCache {
    p: Vec<Option<Rat>>,
    pbar: Vec<Option<Rat>>,
    p_alpha: Vec<Option<Rat>>,
    p_beta: Vec<Option<Rat>>,
}

impl EvalCache {
    pub fn reset(&mut self) {
        for v in [
            &mut self.p,
            &mut self.pbar,
            &mut self.p_alpha,
            &mut self.p_beta,
        ] {
            v.clear();
        }
    }

    fn slot(v: &mut Vec<Option<Rat>>, k: u32, fill: impl FnOnce() -> Rat) -> Rat {
        let k = k as usize;
        if v.len() <= k {
            v.resize(k + 1, None);
        }
        if v[k].is_none() {
            v[k] = Some(fill());
        }
        v[k].clone().unwrap()
    }
}

impl Obs {
    pub(crate) fn eval_cached(
        &self,
        lam: &Partition,
        alpha: &Partition,
        beta: &Partition,
        cache: &mut EvalCache,
    ) -> Rat {
        match self {
            Obs::P(k) => EvalCache::slot(&mut cache.p, *k, || p_k(lam, *k)),
            Obs::PBar(k) => EvalCache::slot(&mut cache.pbar, *k, || p_bar_k(lam, *k)),
            Obs::PAlpha(k) => EvalCache::slot(&mut cache.p_alpha, *k, || p_k(alpha, *k)),
            Obs::PBeta(k) => EvalCache::slot(&mut cache.p_beta, *k, || p_k(beta, *k)),
            Obs::Add(a, b) => {
                a.eval_cached(lam, alpha, beta, cache) + b.eval_cached(lam, alpha, beta, cache)
            }
            Obs::Sub(a, b) => {
                a.eval_cached(lam, alpha, beta, cache) - b.eval_cached(lam, alpha, beta, cache)
            }
            Obs::Mul(a, b) => {
                a.eval_cached(lam, alpha, beta, cache) * b.eval_cached(lam, alpha, beta, cache)
            }
            Obs::Neg(a) => -a.eval_cached(lam, alpha, beta, cache),
            Obs::Pow(a, e) => a.eval_cached(lam, alpha, beta, cache).pow(*e as i32),
            _ => self.eval(lam, alpha, beta),
        }
    }

    pub fn eval(&self, lam: &Partition, alpha: &Partition, beta: &Partition) -> Rat {
        match self {
            Obs::Const(c) => c.clone(),
            Obs::Size => Rat::from_integer(int(lam.size() as i64)),
            Obs::P(k) => p_k(lam, *k),
            Obs::PBar(k) => p_bar_k(lam, *k),
            Obs::PAlpha(k) => p_k(alpha, *k),
            Obs::PBeta(k) => p_k(beta, *k),
            Obs::SStarAlpha(mu) => shifted_schur(mu, alpha),
            Obs::SStarBeta(mu) => shifted_schur(mu, beta),
            Obs::Add(a, b) => a.eval(lam, alpha, beta) + b.eval(lam, alpha, beta),
            Obs::Sub(a, b) => a.eval(lam, alpha, beta) - b.eval(lam, alpha, beta),
            Obs::Mul(a, b) => a.eval(lam, alpha, beta) * b.eval(lam, alpha, beta),
            Obs::Neg(a) => -a.eval(lam, alpha, beta),
            Obs::Pow(a, e) => a.eval(lam, alpha, beta).pow(*e as i32),
            Obs::Center(..) => panic!("centered observables are expanded by the engine"),
        }
    }

    fn contains_center(&self) -> bool {
        match self {
            Obs::Center(..) => true,
            Obs::Add(a, b) | Obs::Sub(a, b) | Obs::Mul(a, b) => {
                a.contains_center() || b.contains_center()
            }
            Obs::Neg(a) | Obs::Pow(a, _) => a.contains_center(),
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExpectationQuery {
    pub observable: Obs,
    pub measure: Measure,
    pub mode: Mode,
    /// largest |λ| the enumeration may touch
    pub budget: u64,
}

impl ExpectationQuery {
    pub fn new(observable: Obs, measure: Measure, mode: Mode) -> Self {
        ExpectationQuery {
            observable,
            measure,
            mode,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Default enumeration cap on |λ|; explicit budgets may raise it.
pub const DEFAULT_BUDGET: u64 = 60;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rat),
    Series(RationalSeries),
}

impl Value {
    pub fn into_series(self) -> RationalSeries {
        match self {
            Value::Series(s) => s,
            Value::Exact(c) => Series::from_coeffs(vec![c]),
        }
    }

    pub fn into_exact(self) -> Rat {
        match self {
            Value::Exact(c) => c,
            Value::Series(_) => panic!("expected a scalar expectation"),
        }
    }
}

fn check_budget(n: u64, budget: u64) -> Result<()> {
    if n > budget {
        let estimate = crate::stats::partition_counts(n.min(400))
            .last()
            .cloned()
            .unwrap_or_default();
        return Err(Error::Budget(format!(
            "requested |λ| up to {n} exceeds budget {budget} (p({n}) ≈ {estimate} partitions per size)"
        )));
    }
    Ok(())
}

/// Pairwise (balanced-tree) summation: keeps intermediate denominators small,
/// which matters for long exact-rational reductions.
fn tree_sum(mut rows: Vec<Vec<Rat>>, width: usize) -> Vec<Rat> {
    if rows.is_empty() {
        return vec![Rat::zero(); width];
    }
    while rows.len() > 1 {
        let mut next = Vec::with_capacity(rows.len() / 2 + 1);
        let mut it = rows.into_iter();
        while let Some(mut a) = it.next() {
            if let Some(b) = it.next() {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
            }
            next.push(a);
        }
        rows = next;
    }
    rows.pop().unwrap()
}

/// Precomputed partition tables with hook products, reused across sizes.
struct PairTables {
    parts: Vec<Vec<Partition>>,
    hooks: Vec<Vec<crate::num::Int>>,
}

impl PairTables {
    fn new(m_max: usize) -> Self {
        let parts: Vec<Vec<Partition>> = (0..=m_max as u32).map(Partition::all).collect();
        let hooks = parts
            .iter()
            .map(|t| t.iter().map(|p| p.hook_product()).collect())
            .collect();
        PairTables { parts, hooks }
    }

    /// Σ over balanced λ of size 2m of w(λ) f_i(λ), using
    /// w = (∏all hooks / ∏even hooks²)² and ∏even = 2^m H_α H_β.
    fn sums(&self, obs: &[Obs], m: usize) -> Vec<Rat> {
        let merge = |mut a: Vec<Rat>, b: Vec<Rat>| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        };
        (0..=m)
            .into_par_iter()
            .map(|k| {
                let mut blocks: Vec<Vec<Rat>> = Vec::new();
                let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(1024);
                let mut cache = EvalCache::default();
                for (ai, alpha) in self.parts[k].iter().enumerate() {
                    for (bi, beta) in self.parts[m - k].iter().enumerate() {
                        let lam = crate::quotient::from_two_quotient(
                            &crate::quotient::TwoQuotient::new(alpha.clone(), beta.clone(), 0),
                        );
                        let p_all = lam.hook_product();
                        let even = (&self.hooks[k][ai] * &self.hooks[m - k][bi]) << m;
                        let ratio = Rat::new(p_all, &even * &even);
                        let w = &ratio * &ratio;
                        cache.reset();
                        rows.push(
                            obs.iter()
                                .map(|o| match o {
                                    Obs::Const(c) => c * &w,
                                    _ => o.eval_cached(&lam, alpha, beta, &mut cache) * &w,
                                })
                                .collect(),
                        );
                        if rows.len() == 1024 {
                            blocks.push(tree_sum(std::mem::take(&mut rows), obs.len()));
                        }
                    }
                }
                if !rows.is_empty() {
                    blocks.push(tree_sum(rows, obs.len()));
                }
                tree_sum(blocks, obs.len())
            })
            .reduce(|| vec![Rat::zero(); obs.len()], merge)
    }
}

/// Raw sums Σ_{|λ| = n} m(λ) f_i(λ) for several observables over a single
/// enumeration pass.
fn raw_sums(obs: &[Obs], measure: Measure, n: u64) -> Vec<Rat> {
    let k = obs.len();
    let merge = |mut a: Vec<Rat>, b: Vec<Rat>| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    match measure {
        Measure::Pillowcase => {
            if n % 2 != 0 {
                return vec![Rat::zero(); k];
            }
            PairTables::new((n / 2) as usize).sums(obs, (n / 2) as usize)
        }
        Measure::Uniform => Partition::all(n as u32)
            .into_par_iter()
            .map_init(EvalCache::default, |cache, lam| {
                let q = crate::quotient::two_quotient(&lam);
                cache.reset();
                obs.iter()
                    .map(|o| o.eval_cached(&lam, &q.alpha, &q.beta, cache))
                    .collect::<Vec<_>>()
            })
            .reduce(|| vec![Rat::zero(); k], merge),
    }
}

/// Expectations of several center-free observables sharing one enumeration.
pub fn plain_expectations(
    obs: &[Obs],
    measure: Measure,
    mode: Mode,
    budget: u64,
) -> Result<Vec<Value>> {
    match mode {
        Mode::FixedN(n) => {
            check_budget(n, budget)?;
            let nums = raw_sums(obs, measure, n);
            let den = match measure {
                Measure::Pillowcase => raw_sums(&[Obs::Const(Rat::one())], measure, n)
                    .pop()
                    .unwrap(),
                Measure::Uniform => {
                    Rat::from_integer(crate::stats::partition_counts(n)[n as usize].clone())
                }
            };
            if den.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(nums.into_iter().map(|x| Value::Exact(x / &den)).collect())
        }
        Mode::QSeries(order) => {
            check_budget(order as u64, budget)?;
            let per_n: Vec<Vec<Rat>> = match measure {
                Measure::Pillowcase => {
                    let tables = PairTables::new(order / 2);
                    (0..=order).map(|n| {
                        if n % 2 != 0 {
                            vec![Rat::zero(); obs.len()]
                        } else {
                            tables.sums(obs, n / 2)
                        }
                    }).collect()
                }
                Measure::Uniform => (0..=order as u64)
                    .collect::<Vec<_>>()
                    .into_par_iter()
                    .map(|n| raw_sums(obs, measure, n))
                    .collect(),
            };
            let den = match measure {
                Measure::Pillowcase => z_series(order),
                Measure::Uniform => partition_gf(order),
            };
            let inv = den.inverse()?;
            (0..obs.len())
                .map(|i| {
                    let num =
                        Series::from_coeffs(per_n.iter().map(|row| row[i].clone()).collect());
                    Ok(Value::Series(num.mul(&inv)))
                })
                .collect()
        }
    }
}

fn plain_expectation(obs: &Obs, measure: Measure, mode: Mode, budget: u64) -> Result<Value> {
    Ok(plain_expectations(std::slice::from_ref(obs), measure, mode, budget)?
        .pop()
        .unwrap())
}

/// Expectation of the query's observable; exact rational in fixed-n mode,
/// truncated series in q-series mode.
pub fn expectation(query: &ExpectationQuery) -> Result<Value> {
    let obs = &query.observable;
    if !obs.contains_center() {
        return plain_expectation(obs, query.measure, query.mode, query.budget);
    }
    // centered moments: supported shapes are center(e)^k, possibly scaled
    // or negated; rewrite via E[(X - m)^k] = Σ_j C(k,j) E[X^j] (-m)^{k-j}
    let (scale, inner, k) = extract_center(obs)?;
    let powers: Vec<Obs> = (0..=k)
        .map(|j| Obs::Pow(Box::new(inner.clone()), j))
        .collect();
    let moments = plain_expectations(&powers, query.measure, query.mode, query.budget)?;
    match query.mode {
        Mode::FixedN(_) => {
            let ms: Vec<Rat> = moments.into_iter().map(Value::into_exact).collect();
            let mean = ms[1].clone();
            let mut acc = Rat::zero();
            for (j, mj) in ms.iter().enumerate() {
                let c = Rat::from_integer(crate::num::binomial(k as u64, j as u64));
                acc += c * mj * (-mean.clone()).pow((k - j as u32) as i32);
            }
            Ok(Value::Exact(acc * scale))
        }
        Mode::QSeries(order) => {
            let ms: Vec<RationalSeries> = moments.into_iter().map(Value::into_series).collect();
            let mean = ms[1].clone();
            let mut acc = Series::zero(order);
            for (j, mj) in ms.iter().enumerate() {
                let c = Rat::from_integer(crate::num::binomial(k as u64, j as u64));
                let term = mj.mul(&mean.neg().pow(k - j as u32)).scale(&c);
                acc = acc.add(&term);
            }
            Ok(Value::Series(acc.scale(&scale)))
        }
    }
}

/// Splits `c * center(e)^k` (with optional negation) into (c, e, k).
fn extract_center(obs: &Obs) -> Result<(Rat, Obs, u32)> {
    match obs {
        Obs::Center(inner, k) => Ok((Rat::one(), (**inner).clone(), *k)),
        Obs::Pow(inner, e) => {
            let (c, o, k) = extract_center(inner)?;
            if !c.is_one() {
                return Err(Error::Parse("center(...) may only be scaled, not nested".into()));
            }
            Ok((Rat::one(), o, k * e))
        }
        Obs::Neg(inner) => {
            let (c, o, k) = extract_center(inner)?;
            Ok((-c, o, k))
        }
        Obs::Mul(a, b) => match (&**a, a.contains_center(), b.contains_center()) {
            (Obs::Const(c), false, true) => {
                let (c2, o, k) = extract_center(b)?;
                Ok((c * c2, o, k))
            }
            _ => match (&**b, b.contains_center()) {
                (Obs::Const(c), false) => {
                    let (c2, o, k) = extract_center(a)?;
                    Ok((c * c2, o, k))
                }
                _ => Err(Error::Parse(
                    "center(...) must be the whole observable up to a constant factor".into(),
                )),
            },
        },
        _ => Err(Error::Parse(
            "center(...) must be the whole observable up to a constant factor".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// observable grammar

struct Parser<'a> {
    toks: Vec<Token<'a>>,
    pos: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Token<'a> {
    Num(i64),
    Ident(&'a str),
    Bracket(&'a str), // contents of [...]
    ArgAlpha,
    ArgBeta,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token<'_>>> {
    let mut toks = Vec::new();
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                toks.push(Token::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Token::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Token::Star);
                i += 1;
            }
            '^' => {
                toks.push(Token::Caret);
                i += 1;
            }
            '/' => {
                toks.push(Token::Slash);
                i += 1;
            }
            '(' => {
                // argument tags (alpha)/(beta) are lexed as dedicated tokens
                let rest = &s[i..];
                if let Some(r) = rest.strip_prefix("(alpha)") {
                    let _ = r;
                    toks.push(Token::ArgAlpha);
                    i += "(alpha)".len();
                } else if rest.starts_with("(beta)") {
                    toks.push(Token::ArgBeta);
                    i += "(beta)".len();
                } else {
                    toks.push(Token::LParen);
                    i += 1;
                }
            }
            ')' => {
                toks.push(Token::RParen);
                i += 1;
            }
            '[' => {
                let close = s[i..]
                    .find(']')
                    .ok_or_else(|| Error::Parse("unterminated [".into()))?;
                toks.push(Token::Bracket(&s[i + 1..i + close]));
                i += close + 1;
            }
            '0'..='9' => {
                let mut j = i;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                let n: i64 = s[i..j]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad number in `{s}`")))?;
                toks.push(Token::Num(n));
                i = j;
            }
            'a'..='z' | 'A'..='Z' | '_' | '|' => {
                let mut j = i;
                while j < b.len()
                    && (b[j].is_ascii_alphanumeric() || b[j] == b'_' || b[j] == b'|')
                {
                    j += 1;
                }
                toks.push(Token::Ident(&s[i..j]));
                i = j;
            }
            _ => return Err(Error::Parse(format!("unexpected character `{c}`"))),
        }
    }
    Ok(toks)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Token<'a>> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Token<'a>) -> Result<()> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(Error::Parse(format!("expected {t:?}, got {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Obs> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = Obs::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = Obs::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Obs> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.next();
            acc = Obs::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Obs> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.next();
            return Ok(Obs::Neg(Box::new(self.factor()?)));
        }
        let mut base = self.atom()?;
        while matches!(self.peek(), Some(Token::Caret)) {
            self.next();
            match self.next() {
                Some(Token::Num(e)) if e >= 0 => {
                    base = Obs::Pow(Box::new(base), e as u32);
                }
                t => return Err(Error::Parse(format!("expected exponent, got {t:?}"))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Obs> {
        match self.next() {
            Some(Token::Num(n)) => {
                // rational literal n or n/d
                if matches!(self.peek(), Some(Token::Slash)) {
                    self.next();
                    match self.next() {
                        Some(Token::Num(d)) if d != 0 => {
                            Ok(Obs::Const(crate::num::rat(n, d)))
                        }
                        t => Err(Error::Parse(format!("expected denominator, got {t:?}"))),
                    }
                } else {
                    Ok(Obs::Const(Rat::from_integer(int(n))))
                }
            }
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(e)
            }
            Some(Token::Ident(name)) => self.primitive(name),
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }

    fn primitive(&mut self, name: &str) -> Result<Obs> {
        if name == "size" || name == "|lambda|" {
            return Ok(Obs::Size);
        }
        if name == "center" {
            self.expect(Token::LParen)?;
            let inner = self.expr()?;
            self.expect(Token::RParen)?;
            return Ok(Obs::Center(Box::new(inner), 1));
        }
        if name == "sstar" {
            let mu = match self.next() {
                Some(Token::Bracket(inner)) => Partition::parse(inner)?,
                t => return Err(Error::Parse(format!("sstar needs [μ], got {t:?}"))),
            };
            return match self.next() {
                Some(Token::ArgAlpha) => Ok(Obs::SStarAlpha(mu)),
                Some(Token::ArgBeta) => Ok(Obs::SStarBeta(mu)),
                t => Err(Error::Parse(format!("sstar[μ] needs (alpha)/(beta), got {t:?}"))),
            };
        }
        if let Some(rest) = name.strip_prefix("pbar") {
            let k: u32 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad pbar index `{name}`")))?;
            if k == 0 {
                return Err(Error::Parse("pbar index must be ≥ 1".into()));
            }
            return Ok(Obs::PBar(k));
        }
        if let Some(rest) = name.strip_prefix('p') {
            let k: u32 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("unknown primitive `{name}`")))?;
            if k == 0 {
                return Err(Error::Parse("p index must be ≥ 1".into()));
            }
            return match self.peek() {
                Some(Token::ArgAlpha) => {
                    self.next();
                    Ok(Obs::PAlpha(k))
                }
                Some(Token::ArgBeta) => {
                    self.next();
                    Ok(Obs::PBeta(k))
                }
                _ => Ok(Obs::P(k)),
            };
        }
        Err(Error::Parse(format!("unknown primitive `{name}`")))
    }
}

/// Parses the CLI observable grammar, e.g. `p1^2`, `p1(alpha)*p1(beta)`,
/// `center(pbar1)^4`, `sstar[2,1](alpha) - 3/4`.
pub fn parse_observable(s: &str) -> Result<Obs> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input after observable: `{s}`"
        )));
    }
    // center(e) alone means the first centered moment; normalize powers here
    Ok(e)
}
