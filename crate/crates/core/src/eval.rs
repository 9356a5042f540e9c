//! Numeric evaluation of words: `F_q`, truncated sums `Z_{q,M}`, the
//! adaptive limit `Z_q` with a certified tail bound, symmetric truncations,
//! the Kontsevich-order sum, the trilinear map `T_{q,M}`, the `t`-series
//! `L_q`, and the `B_q` bounds.
//!
//! Everything is generic over [`QField`], so the same code runs with exact
//! rationals (finite-`M` identities are decided exactly) and with `f64`
//! (limit probes close to `q = 1`).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::classical::Mode;
use crate::coeffring::{binomial, parse_rational, rational_to_f64, HPoly, Rational};
use crate::error::{Error, Result};
use crate::freealg::{ALetter, AMap, AWord, NCPoly, Space};
use crate::qops;

/// Scalars the evaluators can run on.
pub trait QField:
    Clone
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + PartialOrd
    + Send
    + Sync
{
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;

    /// `acc += x`, with a running compensation term where it matters.
    fn accumulate(acc: &mut Self, _comp: &mut Self, x: Self) {
        *acc = acc.clone() + x;
    }
    fn finish(acc: Self, _comp: Self) -> Self {
        acc
    }
}

impl QField for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl QField for f64 {
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    // Neumaier summation
    fn accumulate(acc: &mut Self, comp: &mut Self, x: Self) {
        let t = *acc + x;
        if acc.abs() >= x.abs() {
            *comp += (*acc - t) + x;
        } else {
            *comp += (x - t) + *acc;
        }
        *acc = t;
    }
    fn finish(acc: Self, comp: Self) -> Self {
        acc + comp
    }
}

// ---------------------------------------------------------------------------
// context and results

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => rational_to_f64(r),
            Value::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Float(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Float(x) => write!(f, "{x:.15e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum QValue {
    Exact(Rational),
    Float(f64),
}

/// Where and how to evaluate.
#[derive(Clone, Debug)]
pub struct QContext {
    pub q: QValue,
    pub sqrt_q: Option<Rational>,
    pub tail_tol: f64,
}

pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

impl QContext {
    pub fn exact(q: Rational) -> Result<Self> {
        if !(q > Rational::zero() && q < Rational::one()) {
            return Err(Error::InvalidArgument(format!("q must lie in (0,1), got {q}")));
        }
        Ok(QContext { q: QValue::Exact(q), sqrt_q: None, tail_tol: DEFAULT_TAIL_TOL })
    }

    pub fn float(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidArgument(format!("q must lie in (0,1), got {q}")));
        }
        Ok(QContext { q: QValue::Float(q), sqrt_q: None, tail_tol: DEFAULT_TAIL_TOL })
    }

    /// `"1/2"` or `"3"`-style input is exact; anything with a decimal point
    /// or exponent is evaluated in floating point.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(['.', 'e', 'E']) {
            let q: f64 = s
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad q `{s}`")))?;
            Self::float(q)
        } else {
            let q = parse_rational(s).ok_or_else(|| Error::InvalidArgument(format!("bad q `{s}`")))?;
            Self::exact(q)
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tail_tol = tol;
        self
    }

    /// Attaches `√q`; it must square to `q` exactly.
    pub fn with_sqrt_q(mut self, s: Rational) -> Result<Self> {
        match &self.q {
            QValue::Exact(q) if &(&s * &s) == q && s.is_positive() => {
                self.sqrt_q = Some(s);
                Ok(self)
            }
            _ => Err(Error::InvalidArgument(format!("{s} is not the square root of q"))),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.q, QValue::Exact(_))
    }

    pub fn q_f64(&self) -> f64 {
        match &self.q {
            QValue::Exact(r) => rational_to_f64(r),
            QValue::Float(x) => *x,
        }
    }
}

/// A value together with the bound on what was cut off.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalResult {
    pub value: Value,
    pub tail_bound: f64,
    pub m_used: usize,
}

// ---------------------------------------------------------------------------
// the evaluator core

/// Tables of `q^m` and `[m]` for `0 ≤ m < size`.
#[derive(Clone, Debug)]
pub struct Evaluator<T> {
    hbar: T,
    qpow: Vec<T>,
    qint: Vec<T>,
    ratio: Vec<T>,
}

/// A letter of `A` given as a linear combination (the image of a letter
/// under `ψ•`, or `e_k = g_k + ħ g_{k-1}`), with coefficients evaluated.
pub type LetterForm<T> = Vec<(ALetter, T)>;

impl<T: QField> Evaluator<T> {
    pub fn new(q: T, size: usize) -> Self {
        let size = size.max(2);
        let mut qpow = Vec::with_capacity(size);
        let mut qint = Vec::with_capacity(size);
        let mut ratio = Vec::with_capacity(size);
        let (mut p, mut s) = (T::one(), T::zero());
        for m in 0..size {
            qpow.push(p.clone());
            qint.push(s.clone());
            ratio.push(if m == 0 { T::zero() } else { p.clone() / s.clone() });
            s = s + p.clone();
            p = p * q.clone();
        }
        Evaluator { hbar: T::one() - q, qpow, qint, ratio }
    }

    pub fn zero(&self) -> T {
        T::zero()
    }

    pub fn size(&self) -> usize {
        self.qpow.len()
    }

    pub fn q(&self) -> T {
        T::one() - self.hbar.clone()
    }

    pub fn hbar(&self) -> T {
        self.hbar.clone()
    }

    /// `[m] = 1 + q + ⋯ + q^{m-1}`.
    pub fn qint(&self, m: usize) -> T {
        self.qint[m].clone()
    }

    pub fn hpoly(&self, p: &HPoly) -> T {
        p.coeffs()
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * self.hbar.clone() + T::from_rational(c))
    }

    /// `F_q(m; u)` for a letter and `m ≥ 1`.
    pub fn f(&self, m: usize, u: ALetter) -> T {
        match u {
            ALetter::H => self.hbar.clone(),
            ALetter::G(k) => num_traits::pow(self.ratio[m].clone(), k as usize),
        }
    }

    pub fn f_form(&self, m: usize, form: &LetterForm<T>) -> T {
        form.iter()
            .fold(T::zero(), |acc, (l, c)| acc + c.clone() * self.f(m, *l))
    }

    pub fn form_of(&self, m: &AMap) -> LetterForm<T> {
        m.iter()
            .map(|(w, c)| {
                debug_assert_eq!(w.len(), 1);
                (w[0], self.hpoly(c))
            })
            .collect()
    }

    pub fn plain(&self, l: ALetter) -> LetterForm<T> {
        vec![(l, T::one())]
    }

    pub fn psi_form(&self, l: ALetter, mode: Mode) -> LetterForm<T> {
        self.form_of(&qops::psi_letter(l, mode))
    }

    /// `F_q(m; u)` for nonzero `m`; negative arguments go through `ψ•`.
    pub fn f_ext(&self, m: i64, u: ALetter, mode: Mode) -> T {
        if m > 0 {
            self.f(m as usize, u)
        } else {
            self.f_form((-m) as usize, &self.psi_form(u, mode))
        }
    }

    /// `v[p] = Σ_{0<p₁<⋯<p_r=p} Π val(i, p_i)` for `p < n` (and `v[0] = 1`
    /// exactly when `r = 0`).
    pub fn chain_by_last(r: usize, n: usize, val: impl Fn(usize, usize) -> T) -> Vec<T> {
        let mut out = vec![T::zero(); n.max(1)];
        if r == 0 {
            out[0] = T::one();
            return out;
        }
        let mut s = vec![T::zero(); r + 1];
        let mut comp = vec![T::zero(); r + 1];
        s[0] = T::one();
        let mut contrib = vec![T::zero(); r + 1];
        for p in 1..n {
            for j in 1..=r {
                let prev = T::finish(s[j - 1].clone(), comp[j - 1].clone());
                contrib[j] = if prev.is_zero() { T::zero() } else { prev * val(j - 1, p) };
            }
            out[p] = contrib[r].clone();
            for j in 1..=r {
                let c = std::mem::replace(&mut contrib[j], T::zero());
                T::accumulate(&mut s[j], &mut comp[j], c);
            }
        }
        out
    }

    /// Chain sums for an `A`-word, indexed by the last summation variable.
    pub fn word_by_last(&self, w: &[ALetter], n: usize) -> Vec<T> {
        Self::chain_by_last(w.len(), n, |i, p| self.f(p, w[i]))
    }

    pub fn forms_by_last(&self, forms: &[LetterForm<T>], n: usize) -> Vec<T> {
        Self::chain_by_last(forms.len(), n, |i, p| self.f_form(p, &forms[i]))
    }

    fn total(v: Vec<T>) -> T {
        let (mut acc, mut comp) = (T::zero(), T::zero());
        for x in v {
            T::accumulate(&mut acc, &mut comp, x);
        }
        T::finish(acc, comp)
    }

    /// `Z_{q,M}` of one `A`-word.
    pub fn zqm_word(&self, w: &[ALetter], m: usize) -> T {
        Self::total(self.word_by_last(w, m))
    }

    /// `Z_{q,M}` of an `A`-basis map.
    pub fn zqm_amap(&self, a: &AMap, m: usize) -> T {
        a.iter()
            .fold(T::zero(), |acc, (w, c)| acc + self.hpoly(c) * self.zqm_word(w, m))
    }

    /// The double-sum formula for `Z^{S,•}_{q,M}` of one `A`-word.
    pub fn zsqm_direct_word(&self, w: &[ALetter], m: usize, mode: Mode) -> T {
        let r = w.len();
        let mut acc = T::zero();
        for i in 0..=r {
            let head = self.word_by_last(&w[..i], m);
            let tail_forms: Vec<LetterForm<T>> =
                w[i..].iter().rev().map(|&l| self.psi_form(l, mode)).collect();
            let tail = self.forms_by_last(&tail_forms, m);
            match mode {
                Mode::Star => acc = acc + Self::total(head) * Self::total(tail),
                Mode::Sh => {
                    for (p, hp) in head.iter().enumerate() {
                        if hp.is_zero() {
                            continue;
                        }
                        for ts in tail.iter().take(m.saturating_sub(p)) {
                            if !ts.is_zero() {
                                acc = acc + hp.clone() * ts.clone();
                            }
                        }
                    }
                }
            }
        }
        acc
    }

    /// Sum over `m₁ ≺ ⋯ ≺ m_r` in Kontsevich's order, `0 < |m_i| < M`.
    pub fn kontsevich_word(&self, w: &[ALetter], m: usize) -> T {
        // positions 1..m-1 are the positive integers, m..2m-2 run from -(m-1) to -1
        let n = 2 * m.max(1) - 1;
        let forms: Vec<LetterForm<T>> = w.iter().map(|&l| self.psi_form(l, Mode::Star)).collect();
        let v = Self::chain_by_last(w.len(), n, |i, p| {
            if p < m {
                self.f(p, w[i])
            } else {
                self.f_form(2 * m - 1 - p, &forms[i])
            }
        });
        Self::total(v)
    }

    /// `T_{q,M}` on three `A`-words; `w` has `r₃ − 1` letters.
    pub fn t_words(&self, u: &[ALetter], v: &[ALetter], w: &[ALetter], m: usize) -> T {
        if u.is_empty() && v.is_empty() && w.is_empty() {
            return T::one();
        }
        let (r1, r2, r3) = (u.len(), v.len(), w.len() + 1);
        let n = r1 + r2 + r3;
        let f_at = |l: ALetter, x: i64| self.f_ext(x, l, Mode::Sh);
        let mut acc = T::zero();
        let mut parts = vec![0i64; n];
        for neg in 0..n {
            for size in 1..m as i64 {
                // the other n-1 slots are positive and sum to `size`
                let mut others = Vec::new();
                compositions(size, n - 1, &mut Vec::new(), &mut others);
                for c in others {
                    let mut it = c.into_iter();
                    for (slot, x) in parts.iter_mut().enumerate() {
                        *x = if slot == neg { -size } else { it.next().unwrap() };
                    }
                    let (lu, rest) = parts.split_at(r1);
                    let (lv, lw) = rest.split_at(r2);
                    let mut prod = T::one();
                    let mut partial = 0;
                    for (i, x) in lu.iter().enumerate() {
                        partial += x;
                        prod = prod * f_at(u[i], partial);
                    }
                    let su = partial;
                    partial = 0;
                    for (i, x) in lv.iter().enumerate() {
                        partial += x;
                        prod = prod * f_at(v[i], partial);
                    }
                    partial += su;
                    for (i, x) in lw.iter().take(r3 - 1).enumerate() {
                        partial += x;
                        prod = prod * f_at(w[i], partial);
                    }
                    acc = acc + prod;
                }
            }
        }
        acc
    }
}

/// All compositions of `total` into exactly `k` positive parts.
fn compositions(total: i64, k: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if k == 0 {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for x in 1..=(total - (k as i64 - 1)) {
        cur.push(x);
        compositions(total - x, k - 1, cur, out);
        cur.pop();
    }
}

// ---------------------------------------------------------------------------
// context-level API

fn with_ctx<R>(
    ctx: &QContext,
    size: usize,
    exact: impl FnOnce(&Evaluator<Rational>) -> Result<R>,
    float: impl FnOnce(&Evaluator<f64>) -> Result<R>,
) -> Result<R> {
    match &ctx.q {
        QValue::Exact(q) => exact(&Evaluator::new(q.clone(), size)),
        QValue::Float(q) => float(&Evaluator::new(*q, size)),
    }
}

fn value_of<T: QField + 'static>(x: T) -> Value {
    let any: &dyn std::any::Any = &x;
    match any.downcast_ref::<Rational>() {
        Some(r) => Value::Exact(r.clone()),
        None => Value::Float(x.to_f64()),
    }
}

macro_rules! dispatch {
    ($ctx:expr, $size:expr, |$ev:ident| $body:expr) => {
        with_ctx(
            $ctx,
            $size,
            |$ev| Ok(value_of($body)),
            |$ev| Ok(value_of($body)),
        )
    };
}

pub fn qint(m: usize, ctx: &QContext) -> Result<Value> {
    if m == 0 {
        return Err(Error::InvalidArgument("[m] needs m ≥ 1".into()));
    }
    dispatch!(ctx, m + 1, |ev| ev.qint(m))
}

fn depth_one(u: &NCPoly) -> Result<AMap> {
    let a = u.to_a_basis()?;
    if a.keys().any(|w| w.len() != 1) {
        return Err(Error::NotDepthOne(u.to_string()));
    }
    Ok(a)
}

/// `F_q(m; u)` for `m ≥ 1` and `u` in the span of `A` (e.g. `e_k`).
pub fn f(m: usize, u: &NCPoly, ctx: &QContext) -> Result<Value> {
    if m == 0 {
        return Err(Error::InvalidArgument("F_q(m; u) needs m ≥ 1".into()));
    }
    let a = depth_one(u)?;
    dispatch!(ctx, m + 1, |ev| ev.f_form(m, &ev.form_of(&a)))
}

/// `F_q(m; u)` for nonzero `m`, with `F_q(−m; u) = F_q(m; ψ•(u))`.
pub fn f_ext(m: i64, u: &NCPoly, mode: Mode, ctx: &QContext) -> Result<Value> {
    if m == 0 {
        return Err(Error::InvalidArgument("F_q(m; u) needs m ≠ 0".into()));
    }
    let a = depth_one(u)?;
    let a = if m < 0 { qops::psi_amap(&a, mode) } else { a };
    let n = m.unsigned_abs() as usize;
    dispatch!(ctx, n + 1, |ev| ev.f_form(n, &ev.form_of(&a)))
}

/// `Z_{q,M}(w)`.
pub fn zqm(w: &NCPoly, m: usize, ctx: &QContext) -> Result<Value> {
    let a = w.to_a_basis()?;
    dispatch!(ctx, m, |ev| ev.zqm_amap(&a, m))
}

/// `Z^{S,•}_{q,M}(w) = Z_{q,M}(w^{S,•}_ħ(w))`.
pub fn zsqm(w: &NCPoly, m: usize, mode: Mode, ctx: &QContext) -> Result<Value> {
    zqm(&qops::ws_q(w, mode)?, m, ctx)
}

/// The same quantity through the explicit double-sum formula.
pub fn zsqm_direct(w: &NCPoly, m: usize, mode: Mode, ctx: &QContext) -> Result<Value> {
    let a = w.to_a_basis()?;
    dispatch!(ctx, m, |ev| a.iter().fold(ev.zero(), |acc, (word, c)| {
        acc + ev.hpoly(c) * ev.zsqm_direct_word(word, m, mode)
    }))
}

/// `Z^{S,∗}_{q,M}` as a single ordered sum in Kontsevich's order.
pub fn kontsevich_zs_star(w: &NCPoly, m: usize, ctx: &QContext) -> Result<Value> {
    let a = w.to_a_basis()?;
    dispatch!(ctx, m, |ev| a.iter().fold(ev.zero(), |acc, (word, c)| {
        acc + ev.hpoly(c) * ev.kontsevich_word(word, m)
    }))
}

/// The trilinear map `T_{q,M}(u, v, w)`.
pub fn t_qm(u: &NCPoly, v: &NCPoly, w: &NCPoly, m: usize, ctx: &QContext) -> Result<Value> {
    let (a, b, c) = (u.to_a_basis()?, v.to_a_basis()?, w.to_a_basis()?);
    dispatch!(ctx, m, |ev| {
        let mut acc = ev.zero();
        for (x, cx) in &a {
            for (y, cy) in &b {
                for (z, cz) in &c {
                    let coef = ev.hpoly(cx) * ev.hpoly(cy) * ev.hpoly(cz);
                    acc = acc + coef * ev.t_words(x, y, z, m);
                }
            }
        }
        acc
    })
}

/// Coefficients of `t^0, …, t^{Tmax−1}` in `L_q(w)(t)`.
pub fn lq_tseries(w: &NCPoly, tmax: usize, ctx: &QContext) -> Result<Vec<Value>> {
    let a = w.to_a_basis()?;
    fn go<T: QField + 'static>(ev: &Evaluator<T>, a: &AMap, tmax: usize) -> Vec<Value> {
        let mut out = vec![T::zero(); tmax];
        for (word, c) in a {
            let cv = ev.hpoly(c);
            for (i, x) in ev.word_by_last(word, tmax).into_iter().enumerate().take(tmax) {
                out[i] = out[i].clone() + cv.clone() * x;
            }
        }
        out.into_iter().map(value_of).collect()
    }
    with_ctx(ctx, tmax, |ev| Ok(go(ev, &a, tmax)), |ev| Ok(go(ev, &a, tmax)))
}

/// `Σ_{m_r + n_s < M}` of the chain sums of `u` and `v` (the right-hand
/// side of the truncated shuffle formula).
pub fn truncated_shuffle_rhs(u: &NCPoly, v: &NCPoly, m: usize, ctx: &QContext) -> Result<Value> {
    let (a, b) = (u.to_a_basis()?, v.to_a_basis()?);
    fn by_last<T: QField>(ev: &Evaluator<T>, a: &AMap, m: usize) -> Vec<T> {
        let mut out = vec![T::zero(); m.max(1)];
        for (w, c) in a {
            let cv = ev.hpoly(c);
            for (i, x) in ev.word_by_last(w, m).into_iter().enumerate() {
                out[i] = out[i].clone() + cv.clone() * x;
            }
        }
        out
    }
    dispatch!(ctx, m, |ev| {
        let (x, y) = (by_last(ev, &a, m), by_last(ev, &b, m));
        let mut acc = ev.zero();
        for (i, xi) in x.iter().enumerate() {
            for yj in y.iter().take(m.saturating_sub(i)) {
                acc = acc + xi.clone() * yj.clone();
            }
        }
        acc
    })
}

// ---------------------------------------------------------------------------
// Z_q with a certified tail

/// `Σ_{n ≥ M} C(n−1, r−1) q^n`, bounded above in closed form.
pub fn chain_tail_bound(r: usize, m: usize, q: f64) -> f64 {
    if r == 0 {
        return 0.0;
    }
    let m = m.max(1);
    let term = |n: usize| -> f64 {
        // C(n-1, r-1) q^n in log space
        let mut l = n as f64 * q.ln();
        for i in 0..r - 1 {
            l += ((n - 1 - i) as f64).ln() - ((i + 1) as f64).ln();
        }
        if n < r {
            0.0
        } else {
            l.exp()
        }
    };
    let mut n = m.max(r);
    let mut sum = 0.0f64;
    loop {
        let t = term(n);
        // ratio t(n+1)/t(n) = q·n/(n−r+1) is decreasing in n
        let ratio = q * n as f64 / (n + 1 - r) as f64;
        if ratio < 1.0 && n >= m {
            // everything from n on is dominated by a geometric series
            let geo = t / (1.0 - ratio);
            if geo <= 1e-3 * sum.max(f64::MIN_POSITIVE) || geo < 1e-300 || n > m + 200_000 {
                return sum + geo;
            }
        }
        sum += t;
        n += 1;
    }
}

/// Tail bound of `Z_q(w) − Z_{q,M}(w)` for `w` in `ℌ̂⁰`.
pub fn tail_bound(a: &AMap, m: usize, q: f64) -> f64 {
    a.iter()
        .filter(|(w, _)| !w.is_empty())
        .map(|(w, c)| c.abs_bound_f64(q) * chain_tail_bound(w.len(), m, q))
        .sum()
}

/// Smallest tried `M` whose tail bound is below `tol`.
pub fn choose_m(a: &AMap, q: f64, tol: f64) -> usize {
    let mut hi = 16;
    while tail_bound(a, hi, q) >= tol {
        hi *= 2;
        if hi > 1 << 26 {
            return hi;
        }
    }
    let mut lo = hi / 2;
    while hi - lo > hi / 16 + 1 {
        let mid = (lo + hi) / 2;
        if tail_bound(a, mid, q) < tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `Z_q(w) = lim Z_{q,M}(w)` for `w ∈ ℌ̂⁰`, with a certified tail.
pub fn zq(w: &NCPoly, ctx: &QContext) -> Result<EvalResult> {
    if !w.membership(Space::Hhat0)? {
        return Err(Error::NotConvergentInput(w.to_string()));
    }
    let a = w.to_a_basis()?;
    let q = ctx.q_f64();
    let m = choose_m(&a, q, ctx.tail_tol);
    let value = dispatch!(ctx, m, |ev| ev.zqm_amap(&a, m))?;
    Ok(EvalResult { value, tail_bound: tail_bound(&a, m, q), m_used: m })
}

/// `Z_q(w^{S,∗}_ħ(g_k))`.
pub fn zqs_star(k: &crate::freealg::Index, ctx: &QContext) -> Result<EvalResult> {
    zq(&qops::ws_q(&NCPoly::g_index(k), Mode::Star)?, ctx)
}

/// `Z_q(w^{S,sh}_ħ(E_k))`.
pub fn zqs_sh(k: &crate::freealg::Index, ctx: &QContext) -> Result<EvalResult> {
    zq(&qops::ws_q(&qops::e_index(k), Mode::Sh)?, ctx)
}

/// One row of a limit probe.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct LimitRow {
    pub q: f64,
    pub value: f64,
    pub tail_bound: f64,
    pub m_used: usize,
    /// `Z_q(w) / ((1−q)(−log(1−q))^r)`, reported for elements of `𝔫`.
    pub scaled: Option<f64>,
}

/// Floating-point `Z_q(w)` along an increasing grid of `q`.
pub fn limit_probe(w: &NCPoly, grid: &[f64], tol: f64) -> Result<Vec<LimitRow>> {
    if grid.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::InvalidArgument("grid must be increasing".into()));
    }
    let in_n = w.membership(Space::N)?;
    let depth = w
        .to_a_basis()?
        .keys()
        .map(|aw| aw.iter().filter(|l| matches!(l, ALetter::G(_))).count())
        .max()
        .unwrap_or(0);
    grid.iter()
        .map(|&q| {
            let ctx = QContext::float(q)?.with_tol(tol);
            let r = zq(w, &ctx)?;
            let v = r.value.to_f64();
            let scaled = in_n.then(|| v / ((1.0 - q) * (-(1.0 - q).ln()).powi(depth as i32)));
            Ok(LimitRow { q, value: v, tail_bound: r.tail_bound, m_used: r.m_used, scaled })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Appendix-style bounds

/// The basis monomial `H^{α₁} g_{β₁+1} ⋯ H^{α_r} g_{β_r+1}`.
pub fn basis_monomial(alphas: &[u32], betas: &[u32]) -> AWord {
    let mut w = Vec::new();
    for (&a, &b) in alphas.iter().zip(betas) {
        w.extend(std::iter::repeat(ALetter::H).take(a as usize));
        w.push(ALetter::G(b + 1));
    }
    w
}

/// `B_q(α; β)` truncated to `1 ≤ l_j < M`, exactly; needs `√q`.
pub fn b_bound(alphas: &[u32], betas: &[u32], m: usize, ctx: &QContext) -> Result<Rational> {
    if alphas.len() != betas.len() || alphas.is_empty() {
        return Err(Error::InvalidArgument("α and β need equal nonzero length".into()));
    }
    let s = ctx.sqrt_q.clone().ok_or(Error::MissingSqrtQ)?;
    let hbar = Rational::one() - &s * &s;
    let max_sum = alphas.len() * m;
    // dp[L] = weighted sum over (l_1..l_j) with l_1+⋯+l_j = L
    let mut dp = vec![Rational::zero(); max_sum + 1];
    dp[0] = Rational::one();
    let spow: Vec<Rational> = (0..m).scan(Rational::one(), |p, _| {
        let cur = p.clone();
        *p = &*p * &s;
        Some(cur)
    }).collect();
    for (&a, &b) in alphas.iter().zip(betas) {
        let ha = num_traits::pow(hbar.clone(), a as usize);
        let mut next = vec![Rational::zero(); max_sum + 1];
        for (total, x) in dp.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for l in 1..m {
                let c = binomial(l as u64, a as u64);
                if c.is_zero() {
                    continue;
                }
                let t = total + l;
                let denom = num_traits::pow(Rational::from_integer((t as i64).into()), b as usize + 1);
                next[t] += x * &Rational::from_integer(c) * &ha * &spow[l] / denom;
            }
        }
        dp = next;
    }
    Ok(dp.into_iter().fold(Rational::zero(), |a, b| a + b))
}

/// `x^α (1−x)/(1−x^β) ≤ 1/β`, checked exactly at a rational point.
pub fn cor_bound_holds(alpha: u32, beta: u32, x: &Rational) -> bool {
    let one = Rational::one();
    let lhs = num_traits::pow(x.clone(), alpha as usize) * (&one - x)
        / (&one - num_traits::pow(x.clone(), beta as usize));
    lhs <= Rational::new(1.into(), (beta as i64).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{int, rat};
    use crate::freealg::Index;

    fn half() -> QContext {
        QContext::exact(rat(1, 2)).unwrap()
    }
    fn ex(v: Value) -> Rational {
        v.as_exact().unwrap().clone()
    }
    fn g(v: &[u32]) -> NCPoly {
        NCPoly::g_index(&Index(v.to_vec()))
    }

    #[test]
    fn qint_and_f() {
        let c = half();
        assert_eq!(ex(qint(1, &c).unwrap()), int(1));
        assert_eq!(ex(qint(3, &c).unwrap()), rat(7, 4));
        assert_eq!(ex(f(2, &g(&[1]), &c).unwrap()), rat(1, 6));
        assert_eq!(ex(f(5, &NCPoly::h(), &c).unwrap()), rat(1, 2));
        // F(−m; g_k) with ψ* = (−1)^k F(m; g_k)
        let a = ex(f_ext(-2, &g(&[3]), Mode::Star, &c).unwrap());
        let b = ex(f(2, &g(&[3]), &c).unwrap());
        assert_eq!(a, -b);
        assert!(matches!(f(1, &g(&[1, 1]), &c), Err(Error::NotDepthOne(_))));
    }

    #[test]
    fn zqm_examples() {
        let c = half();
        assert_eq!(ex(zqm(&g(&[2]), 3, &c).unwrap()), rat(5, 18));
        assert_eq!(ex(zqm(&NCPoly::one(), 3, &c).unwrap()), int(1));
        let s = qops::qshuf(&g(&[1]), &g(&[1]));
        assert_eq!(ex(zqm(&s, 3, &c).unwrap()), rat(1, 4));
        assert_eq!(ex(truncated_shuffle_rhs(&g(&[1]), &g(&[1]), 3, &c).unwrap()), rat(1, 4));
    }

    #[test]
    fn zsqm_closed_forms() {
        let c = half();
        let e1 = NCPoly::e(1);
        let sq = (&e1 + &g(&[1])).pow(2);
        for m in 1..12usize {
            let hb = rat(1, 2);
            assert_eq!(ex(zsqm(&e1, m, Mode::Sh, &c).unwrap()), &hb * int(m as i64 - 1));
            let b = Rational::from_integer(binomial((m as u64).saturating_sub(1), 2));
            assert_eq!(ex(zsqm(&sq, m, Mode::Sh, &c).unwrap()), &hb * &hb * b);
            assert!(ex(zsqm(&g(&[1]), m, Mode::Star, &c).unwrap()).is_zero());
        }
    }

    #[test]
    fn direct_and_kontsevich_agree() {
        let c = half();
        for k in Index::all_up_to(4) {
            let w = g(&k.0);
            for m in 1..6 {
                let a = zsqm(&w, m, Mode::Star, &c).unwrap();
                assert_eq!(a, zsqm_direct(&w, m, Mode::Star, &c).unwrap(), "{k} {m}");
                assert_eq!(a, kontsevich_zs_star(&w, m, &c).unwrap(), "{k} {m}");
                let b = zsqm(&w, m, Mode::Sh, &c).unwrap();
                assert_eq!(b, zsqm_direct(&w, m, Mode::Sh, &c).unwrap(), "{k} {m}");
            }
        }
    }

    #[test]
    fn t_map_examples() {
        let c = half();
        let one = NCPoly::one();
        assert_eq!(ex(t_qm(&one, &one, &one, 4, &c).unwrap()), int(1));
        let (g1, g2) = (g(&[1]), g(&[2]));
        for m in 2..5 {
            let lhs = t_qm(&g1, &g2, &one, m, &c).unwrap();
            let rhs = zsqm(&(&g1 * &qops::psi_sh(&g2).unwrap()), m, Mode::Sh, &c).unwrap();
            assert_eq!(lhs, rhs);
        }
        let lhs = t_qm(&g1, &g1, &g2, 4, &c).unwrap();
        let rhs = zsqm(&(&qops::qshuf(&g1, &g1) * &g2), 4, Mode::Sh, &c).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lq_series() {
        let c = half();
        let s = lq_tseries(&g(&[1]), 5, &c).unwrap();
        let ev = Evaluator::new(rat(1, 2), 5);
        for m in 1..5 {
            assert_eq!(ex(s[m].clone()), ev.f(m, ALetter::G(1)));
        }
        let w = &g(&[2, 1]) + &NCPoly::h();
        let s = lq_tseries(&w, 6, &c).unwrap();
        let sum: Rational = s.iter().map(|v| ex(v.clone())).sum();
        assert_eq!(sum, ex(zqm(&w, 6, &c).unwrap()));
    }

    #[test]
    fn zq_resummation() {
        let c = half().with_tol(1e-12);
        let a = zq(&(&NCPoly::h() * &g(&[1])), &c).unwrap();
        let b = zq(&g(&[2]), &c).unwrap();
        assert!((a.value.to_f64() - b.value.to_f64()).abs() < 1e-10);
        assert!(a.tail_bound < 1e-12);
        assert!(matches!(zq(&NCPoly::letter_a(), &c), Err(Error::NotInSubalgebra(_))));
        assert!(matches!(zq(&NCPoly::h(), &c), Err(Error::NotConvergentInput(_))));
    }

    #[test]
    fn zqs_examples() {
        let c = half();
        assert!(zqs_star(&Index(vec![3]), &c).unwrap().value.to_f64() == 0.0);
        let two = zqs_star(&Index(vec![2]), &c).unwrap().value.to_f64();
        let z2 = zq(&g(&[2]), &c).unwrap().value.to_f64();
        assert!((two - 2.0 * z2).abs() < 1e-12);
        assert_eq!(zqs_sh(&Index::ones(2), &c).unwrap().value.to_f64(), 0.0);
    }

    #[test]
    fn b_bound_example() {
        let c = QContext::exact(rat(1, 4)).unwrap().with_sqrt_q(rat(1, 2)).unwrap();
        assert_eq!(b_bound(&[0], &[1], 3, &c).unwrap(), rat(9, 16));
        assert!(matches!(b_bound(&[0], &[1], 3, &half()), Err(Error::MissingSqrtQ)));
        assert!(cor_bound_holds(2, 3, &rat(99, 100)));
    }

    #[test]
    fn context_parsing() {
        assert!(QContext::parse("1/2").unwrap().is_exact());
        assert!(!QContext::parse("0.9").unwrap().is_exact());
        assert!(QContext::parse("3/2").is_err());
        assert!(QContext::exact(rat(1, 4)).unwrap().with_sqrt_q(rat(1, 3)).is_err());
    }
}
