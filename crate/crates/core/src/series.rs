//! Truncated formal power series in one or two commuting variables with
//! coefficients in `ℌ`, the generating series `R(X)`, `E(X)`, `e⁰(X)`, the
//! maps `ρ_{U(X)}`, `K^sh_ħ`, `Ξ`, `∂`, `Λ_Y`, and the catalog of series
//! identities.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::classical::Mode;
use crate::coeffring::{factorial, HPoly, Rational};
use crate::error::{Error, Result};
use crate::freealg::{Index, Letter, NCPoly, Space};
use crate::qops;
use crate::report::{Case, Report};

/// Exponents of `(X, Y)`; one-variable series only use the first slot.
pub type Exp = [u32; 2];

fn total(e: &Exp) -> u32 {
    e[0] + e[1]
}

fn fmt_exp(e: &Exp) -> String {
    match (e[0], e[1]) {
        (0, 0) => "1".into(),
        (i, 0) => format!("X^{i}"),
        (0, j) => format!("Y^{j}"),
        (i, j) => format!("X^{i}Y^{j}"),
    }
}

/// A power series known exactly in total degree `< order`.
#[derive(Clone, PartialEq)]
pub struct HSeries {
    nvars: usize,
    order: u32,
    coeffs: BTreeMap<Exp, NCPoly>,
}

impl fmt::Debug for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if total(e) > 0 {
                write!(f, "*{}", fmt_exp(e))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(deg {})", self.order)
    }
}

impl HSeries {
    pub fn zero(nvars: usize, order: u32) -> Self {
        assert!((1..=2).contains(&nvars), "one or two variables");
        HSeries { nvars, order, coeffs: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, order: u32, p: NCPoly) -> Self {
        Self::term(nvars, order, [0, 0], p)
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        Self::constant(nvars, order, NCPoly::one())
    }

    /// `p · X^i Y^j`.
    pub fn term(nvars: usize, order: u32, e: Exp, p: NCPoly) -> Self {
        let mut s = Self::zero(nvars.max(if e[1] > 0 { 2 } else { 1 }), order);
        s.add_at(e, &p);
        s
    }

    /// `Σ cs[n] V^n` in the variable `var` (0 = X, 1 = Y).
    pub fn from_coeffs(var: usize, nvars: usize, order: u32, cs: Vec<NCPoly>) -> Self {
        let mut s = Self::zero(nvars, order);
        for (n, c) in cs.into_iter().enumerate() {
            let mut e = [0, 0];
            e[var] = n as u32;
            s.add_at(e, &c);
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &BTreeMap<Exp, NCPoly> {
        &self.coeffs
    }

    pub fn coeff(&self, e: Exp) -> NCPoly {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// Coefficient of `X^n` in a one-variable series.
    pub fn c(&self, n: u32) -> NCPoly {
        self.coeff([n, 0])
    }

    pub fn constant_term(&self) -> NCPoly {
        self.coeff([0, 0])
    }

    fn add_at(&mut self, e: Exp, p: &NCPoly) {
        if total(&e) >= self.order || p.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_default();
        *slot += p;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    fn like(&self, other: &HSeries) -> HSeries {
        HSeries::zero(self.nvars.max(other.nvars), self.order.min(other.order))
    }

    pub fn truncate(&self, order: u32) -> HSeries {
        let mut s = HSeries::zero(self.nvars, order.min(self.order));
        for (e, c) in &self.coeffs {
            s.add_at(*e, c);
        }
        s
    }

    pub fn add(&self, other: &HSeries) -> HSeries {
        let mut s = self.like(other);
        for (e, c) in self.coeffs.iter().chain(&other.coeffs) {
            s.add_at(*e, c);
        }
        s
    }

    pub fn sub(&self, other: &HSeries) -> HSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HSeries {
        self.map(|c| -c)
    }

    pub fn map(&self, f: impl Fn(&NCPoly) -> NCPoly) -> HSeries {
        let mut s = HSeries::zero(self.nvars, self.order);
        for (e, c) in &self.coeffs {
            s.add_at(*e, &f(c));
        }
        s
    }

    pub fn try_map(&self, f: impl Fn(&NCPoly) -> Result<NCPoly>) -> Result<HSeries> {
        let mut s = HSeries::zero(self.nvars, self.order);
        for (e, c) in &self.coeffs {
            s.add_at(*e, &f(c)?);
        }
        Ok(s)
    }

    pub fn scale_h(&self, c: &HPoly) -> HSeries {
        self.map(|p| p.scale_h(c))
    }

    pub fn scale(&self, c: &Rational) -> HSeries {
        self.map(|p| p.scale(c))
    }

    /// Multiplies by `X^i Y^j`.
    pub fn shift(&self, e: Exp) -> HSeries {
        let mut s = HSeries::zero(self.nvars.max(if e[1] > 0 { 2 } else { 1 }), self.order);
        for (x, c) in &self.coeffs {
            s.add_at([x[0] + e[0], x[1] + e[1]], c);
        }
        s
    }

    /// Exact division by `X^i Y^j`; the known order drops accordingly.
    pub fn div_monomial(&self, e: Exp) -> Result<HSeries> {
        let mut s = HSeries::zero(self.nvars, self.order.saturating_sub(total(&e)));
        for (x, c) in &self.coeffs {
            if x[0] < e[0] || x[1] < e[1] {
                return Err(Error::InvalidArgument(format!(
                    "series is not divisible by {}",
                    fmt_exp(&e)
                )));
            }
            s.add_at([x[0] - e[0], x[1] - e[1]], c);
        }
        Ok(s)
    }

    pub fn try_bilinear(
        &self,
        other: &HSeries,
        f: impl Fn(&NCPoly, &NCPoly) -> Result<NCPoly>,
    ) -> Result<HSeries> {
        let mut s = self.like(other);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = [e1[0] + e2[0], e1[1] + e2[1]];
                if total(&e) < s.order {
                    s.add_at(e, &f(c1, c2)?);
                }
            }
        }
        Ok(s)
    }

    pub fn bilinear(&self, other: &HSeries, f: impl Fn(&NCPoly, &NCPoly) -> NCPoly) -> HSeries {
        self.try_bilinear(other, |a, b| Ok(f(a, b))).expect("infallible")
    }

    /// Concatenation product.
    pub fn mul(&self, other: &HSeries) -> HSeries {
        self.bilinear(other, |a, b| a * b)
    }

    pub fn lmul(&self, p: &NCPoly) -> HSeries {
        self.map(|c| p * c)
    }

    pub fn rmul(&self, p: &NCPoly) -> HSeries {
        self.map(|c| c * p)
    }

    pub fn shuffle(&self, other: &HSeries) -> HSeries {
        self.bilinear(other, qops::qshuf)
    }

    pub fn harm(&self, other: &HSeries) -> Result<HSeries> {
        self.try_bilinear(other, qops::qharm)
    }

    pub fn product(&self, other: &HSeries, mode: Mode) -> Result<HSeries> {
        match mode {
            Mode::Star => self.harm(other),
            Mode::Sh => Ok(self.shuffle(other)),
        }
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn geom_inverse(&self) -> Result<HSeries> {
        let c0 = self.constant_term();
        let c = match c0.terms().get(&crate::freealg::Word::empty()) {
            Some(h) if c0.len() == 1 => h.as_constant(),
            _ => None,
        };
        let c = match c {
            Some(c) if !c.is_zero() => c,
            _ => return Err(Error::NonInvertibleConstant(c0.to_string())),
        };
        let inv = Rational::one() / c;
        // f = c (1 - h) with h(0) = 0, so f⁻¹ = c⁻¹ Σ hⁿ
        let h = HSeries::one(self.nvars, self.order).sub(&self.scale(&inv));
        let mut acc = HSeries::one(self.nvars, self.order);
        let mut pw = HSeries::one(self.nvars, self.order);
        for _ in 1..self.order {
            pw = pw.mul(&h);
            if pw.coeffs.is_empty() {
                break;
            }
            acc = acc.add(&pw);
        }
        Ok(acc.scale(&inv))
    }

    /// `exp_{•_ħ}(f) = Σ f^{•n}/n!` for `f(0) = 0`.
    pub fn exp_prod(&self, mode: Mode) -> Result<HSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = HSeries::one(self.nvars, self.order);
        let mut pw = HSeries::one(self.nvars, self.order);
        for n in 1..self.order as u64 {
            pw = pw.product(self, mode)?;
            if pw.coeffs.is_empty() {
                break;
            }
            acc = acc.add(&pw.scale(&Rational::new(BigInt::one(), factorial(n))));
        }
        Ok(acc)
    }

    /// `f(−X)` (or `f(−Y)`).
    pub fn neg_var(&self, var: usize) -> HSeries {
        let mut s = HSeries::zero(self.nvars, self.order);
        for (e, c) in &self.coeffs {
            s.add_at(*e, &if e[var] % 2 == 1 { -c } else { c.clone() });
        }
        s
    }

    /// Moves a one-variable series from `X` to `Y`.
    pub fn to_y(&self) -> HSeries {
        let mut s = HSeries::zero(2, self.order);
        for (e, c) in &self.coeffs {
            s.add_at([e[1], e[0]], c);
        }
        s
    }

    /// `f(X + Y)` for a one-variable series `f(X)`.
    pub fn sum_vars(&self) -> HSeries {
        let mut s = HSeries::zero(2, self.order);
        for (e, c) in &self.coeffs {
            let n = e[0];
            for i in 0..=n {
                let b = Rational::from_integer(crate::coeffring::binomial(n as u64, i as u64));
                s.add_at([i, n - i], &c.scale(&b));
            }
        }
        s
    }

    /// Coefficients of total degree `< below` where the two series differ.
    pub fn first_mismatch(&self, other: &HSeries, below: u32) -> Option<(Exp, NCPoly, NCPoly)> {
        let keys: std::collections::BTreeSet<Exp> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.into_iter()
            .filter(|e| total(e) < below)
            .map(|e| (e, self.coeff(e), other.coeff(e)))
            .find(|(_, a, b)| a != b)
    }

    /// First coefficient of total degree `< below` whose difference is not in `𝔫`.
    pub fn first_non_n(&self, other: &HSeries, below: u32) -> Option<(Exp, NCPoly)> {
        let d = self.sub(other);
        d.coeffs
            .iter()
            .filter(|(e, _)| total(e) < below)
            .find(|(_, c)| !c.membership(Space::N).unwrap_or(false))
            .map(|(e, c)| (*e, c.clone()))
    }
}

// ---------------------------------------------------------------------------
// named series

fn inv_factorial(n: u64) -> Rational {
    Rational::new(BigInt::one(), factorial(n))
}

/// `R(X) = Σ_{n≥1} Xⁿ/n! · H^{n−1}` in the variable `var`.
pub fn r_series(var: usize, nvars: usize, order: u32) -> HSeries {
    let h = NCPoly::h();
    let cs = (0..order as u64)
        .map(|n| if n == 0 { NCPoly::zero() } else { h.pow(n as u32 - 1).scale(&inv_factorial(n)) })
        .collect();
    HSeries::from_coeffs(var, nvars, order, cs)
}

/// `e^{ħbX} = Σ Hⁿ Xⁿ/n!`.
pub fn exp_hb(var: usize, nvars: usize, order: u32) -> HSeries {
    let h = NCPoly::h();
    let cs = (0..order as u64).map(|n| h.pow(n as u32).scale(&inv_factorial(n))).collect();
    HSeries::from_coeffs(var, nvars, order, cs)
}

/// `V·p` for a variable `V` and a polynomial `p`.
pub fn var_times(var: usize, nvars: usize, order: u32, p: NCPoly) -> HSeries {
    let mut e = [0, 0];
    e[var] = 1;
    HSeries::term(nvars, order, e, p)
}

/// `(1 − f)⁻¹`.
pub fn one_minus_inv(f: &HSeries) -> Result<HSeries> {
    HSeries::one(f.nvars, f.order).sub(f).geom_inverse()
}

/// `E(X) = (1 − R(X)g₁)⁻¹ R(X)/X`.
pub fn e_series(order: u32) -> Result<HSeries> {
    let r = r_series(0, 1, order + 1);
    let inv = one_minus_inv(&r.rmul(&NCPoly::g(1)))?;
    Ok(inv.mul(&r.div_monomial([1, 0])?).truncate(order))
}

/// `Σ E_{1^m} X^m`, built from the E-words directly.
pub fn e_series_direct(var: usize, nvars: usize, order: u32) -> HSeries {
    HSeries::from_coeffs(var, nvars, order, (0..order).map(qops::e_ones).collect())
}

/// `e⁰(X) = Σ_{k≥2} e_k X^{k−2}`.
pub fn e0_series(var: usize, nvars: usize, order: u32) -> HSeries {
    HSeries::from_coeffs(var, nvars, order, (0..order).map(|n| NCPoly::e(n + 2)).collect())
}

fn check_b_only(u: &HSeries) -> Result<()> {
    for c in u.coeffs.values() {
        if c.terms().keys().any(|w| w.0.contains(&Letter::A)) {
            return Err(Error::BadU(c.to_string()));
        }
    }
    if !u.constant_term().is_zero() {
        return Err(Error::BadU("nonzero constant term".into()));
    }
    Ok(())
}

/// `ρ_U(a)` and `ρ_U(b)`.
pub fn rho_images(u: &HSeries) -> Result<(HSeries, HSeries)> {
    check_b_only(u)?;
    let (n, o) = (u.nvars, u.order);
    let ug1 = u.rmul(&NCPoly::g(1));
    let inv = one_minus_inv(&ug1)?;
    let one = HSeries::one(n, o);
    let hb = NCPoly::h();
    let ra = inv.mul(&one.add(&u.lmul(&hb))).rmul(&NCPoly::letter_a());
    let rb = inv.rmul(&NCPoly::letter_b()).mul(&one.sub(&ug1));
    Ok((ra, rb))
}

/// `ρ_U(w)` via the homomorphism property and the images of `a`, `b`.
pub fn rho_u(w: &NCPoly, u: &HSeries) -> Result<HSeries> {
    let (ra, rb) = rho_images(u)?;
    let mut out = HSeries::zero(u.nvars, u.order);
    for (word, c) in w.terms() {
        let mut t = HSeries::constant(u.nvars, u.order, NCPoly::constant(c.clone()));
        for l in &word.0 {
            t = t.mul(if *l == Letter::A { &ra } else { &rb });
        }
        out = out.add(&t);
    }
    Ok(out)
}

/// `ρ_U(w) = ((1 − Ug₁)⁻¹ sh_ħ w)(1 − Ug₁)` straight from the definition.
pub fn rho_u_direct(w: &NCPoly, u: &HSeries) -> Result<HSeries> {
    check_b_only(u)?;
    let ug1 = u.rmul(&NCPoly::g(1));
    let inv = one_minus_inv(&ug1)?;
    let ws = HSeries::constant(u.nvars, u.order, w.clone());
    Ok(inv.shuffle(&ws).mul(&HSeries::one(u.nvars, u.order).sub(&ug1)))
}

/// `K^sh_ħ(w, u₁⋯u_r, w') = Σ_i w u₁⋯u_i sh_ħ ψ^sh(u_{i+1}⋯u_r w')`.
pub fn k_sh(w: &NCPoly, mid: &NCPoly, w2: &NCPoly) -> Result<NCPoly> {
    let mut out = NCPoly::zero();
    for (aw, c) in mid.to_a_basis()? {
        for i in 0..=aw.len() {
            let head = w * &NCPoly::from_aword(&aw[..i]);
            let tail = qops::psi_sh(&(&NCPoly::from_aword(&aw[i..]) * w2))?;
            out.add_scaled(&qops::qshuf(&head, &tail), &c);
        }
    }
    Ok(out)
}

/// `Ξ(w, w') = w sh_ħ w'E₁ + wE₁ sh_ħ w'`.
pub fn xi(w: &HSeries, w2: &HSeries) -> HSeries {
    let e1 = qops::e_ones(1);
    w.shuffle(&w2.rmul(&e1)).add(&w.rmul(&e1).shuffle(w2))
}

/// `∂(w, w') = wg₁ sh_ħ w' − (w sh_ħ w')g₁`.
pub fn partial(w: &HSeries, w2: &HSeries) -> HSeries {
    let g1 = NCPoly::g(1);
    w.rmul(&g1).shuffle(w2).sub(&w.shuffle(w2).rmul(&g1))
}

/// `Λ_Y(w, w') = (w(1 − R(Y)g₁)⁻¹ sh_ħ w')(1 − R(Y)g₁)`.
pub fn lambda_y(w: &HSeries, w2: &HSeries) -> Result<HSeries> {
    let o = w.order.min(w2.order);
    let rg = r_series(1, 2, o).rmul(&NCPoly::g(1));
    let inv = one_minus_inv(&rg)?;
    Ok(w.mul(&inv).shuffle(w2).mul(&HSeries::one(2, o).sub(&rg)))
}

/// `E(Y₁,Y₂) = (Y₁Y₂)⁻¹ Σ_j Y_j (E(Y₁+Y₂) − E(Y_j))`, known below `order`.
pub fn e_two(order: u32) -> HSeries {
    let o = order + 2;
    let e = e_series_direct(0, 1, o);
    let sum = e.sum_vars();
    let e1 = e_series_direct(0, 2, o);
    let e2 = e.to_y();
    let t = sum.sub(&e1).shift([1, 0]).add(&sum.sub(&e2).shift([0, 1]));
    t.div_monomial([1, 1]).expect("each summand is divisible by Y1 Y2")
}

// ---------------------------------------------------------------------------
// the identity catalog

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    B9,
    B10,
    B11,
    B12,
    B13,
    B14,
    B15,
    B16,
    L58,
    SG1,
    SG2,
    SG3,
}

use IdentityId::*;

impl IdentityId {
    pub const ALL: [IdentityId; 20] = [
        B1, B2, B3, B4, B5, B6, B7, B8, B9, B10, B11, B12, B13, B14, B15, B16, L58, SG1, SG2, SG3,
    ];

    /// Number of word parameters and index parameters.
    pub fn arity(self) -> (usize, usize) {
        match self {
            B5 | B6 | B7 | B9 | B15 => (0, 0),
            B10 | L58 | B16 => (0, 1),
            SG2 | SG3 => (2, 1),
            _ => (2, 0),
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            B1 => "(w/(1-Ua) sh w'/(1-Va))(1-(U+V+hbar UV)a) expansion",
            B2 => "(w/(1-Ua) sh w'a)(1-Ua) expansion",
            B3 => "rho_U is a concatenation homomorphism with the stated images",
            B4 => "ug1/(1-aX) sh vg1/(1-aY) product formula",
            B5 => "exp_sh(g1 X) = 1/(1-R(X)g1)",
            B6 => "E(X) = 1/(1-R(X)g1) R(X)/X",
            B7 => "psi_sh(E(X)) = E(-X)",
            B8 => "K_sh(w, E(X), w') closed form",
            B9 => "1 + R(X)e1 = exp(hbar b X)(1 - R(-X)g1)",
            B10 => "rho_R(X)(g_k) = rho_X(E_k) mod n[[X]]",
            B11 => "Xi(wE(Y1), w'E(Y2)) expansion",
            B12 => "partial(w, w'e0(X)) and Lambda_Y(w, w'e0(X)) formulas",
            B13 => "wE(Y) sh w'e0(X) closed form",
            B14 => "we0(X1) sh w'e0(X2) closed form",
            B15 => "R(Y1) + R(Y2) + hbar b R(Y1)R(Y2) = R(Y1+Y2)",
            B16 => "1/(1-g_k X) = exp_*(sum (-1)^(n-1)/n g_nk X^n)",
            L58 => "1/(1-R(X)g1) sh g_k/(1-g1X) = 1/(1-g1X) sh E_k/(1-R(X)g1) mod n[[X]]",
            SG1 => "wg1 sh w'g1 recursion",
            SG2 => "wg1 sh w'g_(k+1) recursion",
            SG3 => "wg_(k+1) sh w'g_(l+1) recursion",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

/// A parameter for an identity check.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Word(NCPoly),
    Index(Index),
}

/// Default parameter sets: word pairs of weight ≤ 3 and the listed indices.
pub fn default_params(id: IdentityId) -> Vec<Vec<Param>> {
    let g = |v: &[u32]| NCPoly::g_index(&Index(v.to_vec()));
    let h = NCPoly::h();
    let pairs: Vec<(NCPoly, NCPoly)> = vec![
        (NCPoly::one(), NCPoly::one()),
        (g(&[1]), NCPoly::one()),
        (NCPoly::one(), g(&[2])),
        (g(&[1]), g(&[1])),
        (h.clone(), g(&[2])),
        (NCPoly::e(1), &g(&[1]) * &h),
        (g(&[3]), g(&[1])),
        (&g(&[1]) * &h, &g(&[1]) + &NCPoly::e(2)),
    ];
    let words = |extra: Vec<Param>| -> Vec<Vec<Param>> {
        pairs
            .iter()
            .map(|(a, b)| {
                let mut v = vec![Param::Word(a.clone()), Param::Word(b.clone())];
                v.extend(extra.clone());
                v
            })
            .collect()
    };
    let idx = |v: &[u32]| Param::Index(Index(v.to_vec()));
    match id {
        B5 | B6 | B7 | B9 | B15 => vec![vec![]],
        B10 | L58 => [[2].as_slice(), &[3], &[1, 2], &[2, 2]].iter().map(|k| vec![idx(k)]).collect(),
        B16 => vec![vec![idx(&[1])], vec![idx(&[2])], vec![idx(&[3])]],
        SG2 => [1, 2].iter().flat_map(|&k| words(vec![idx(&[k])])).collect(),
        SG3 => [[1, 1], [1, 2], [2, 1]].iter().flat_map(|k| words(vec![idx(k)])).collect(),
        _ => words(vec![]),
    }
}

fn label(params: &[Param]) -> String {
    let parts: Vec<String> = params
        .iter()
        .map(|p| match p {
            Param::Word(w) => w.to_string(),
            Param::Index(k) => k.to_string(),
        })
        .collect();
    format!("[{}]", parts.join("; "))
}

fn compare(id: String, lhs: &HSeries, rhs: &HSeries, below: u32) -> Case {
    let below = below.min(lhs.order).min(rhs.order);
    match lhs.first_mismatch(rhs, below) {
        None => Case::pass(id).detail(format!("equal in total degree < {below}")),
        Some((e, a, b)) => Case::fail(id, format!("coefficient of {} differs", fmt_exp(&e))).sides(a, b),
    }
}

fn compare_mod_n(id: String, lhs: &HSeries, rhs: &HSeries, below: u32) -> Case {
    let below = below.min(lhs.order).min(rhs.order);
    match lhs.first_non_n(rhs, below) {
        None => Case::pass(id).detail(format!("difference in n in total degree < {below}")),
        Some((e, d)) => Case::fail(id, format!("coefficient of {} not in n", fmt_exp(&e))).sides(d, "0 mod n"),
    }
}

fn compare_poly(id: String, lhs: &NCPoly, rhs: &NCPoly) -> Case {
    Case::check(id, lhs == rhs, lhs, rhs)
}

fn split(id: IdentityId, params: &[Param]) -> Result<(Vec<NCPoly>, Vec<Index>)> {
    let (nw, ni) = id.arity();
    if params.len() != nw + ni {
        return Err(Error::ArityMismatch { id: id.to_string(), expected: nw + ni, got: params.len() });
    }
    let mut ws = vec![];
    let mut ks = vec![];
    for (i, p) in params.iter().enumerate() {
        match (i < nw, p) {
            (true, Param::Word(w)) => ws.push(w.clone()),
            (false, Param::Index(k)) => ks.push(k.clone()),
            (true, _) => return Err(Error::Type(format!("{id}: parameter {} must be a word", i + 1))),
            (false, _) => return Err(Error::Type(format!("{id}: parameter {} must be an index", i + 1))),
        }
    }
    Ok((ws, ks))
}

fn cst(nvars: usize, order: u32, p: &NCPoly) -> HSeries {
    HSeries::constant(nvars, order, p.clone())
}

/// Runs one identity on one parameter set.
fn check_one(id: IdentityId, n: u32, params: &[Param]) -> Result<Vec<Case>> {
    let (ws, ks) = split(id, params)?;
    let tag = |s: &str| format!("{id}{}{s}", label(params));
    let g1 = NCPoly::g(1);
    let a = NCPoly::letter_a();
    let h = NCPoly::h();
    let hbar = HPoly::hbar();
    // working order; B14 divides by XY and so needs two extra degrees
    let o = if id == B14 { n + 2 } else { n };
    let mut out = vec![];
    match id {
        B1 => {
            let (w, w2) = (&ws[0], &ws[1]);
            let choices = [
                ("U=X,V=Y", var_times(0, 2, o, NCPoly::one()), var_times(1, 2, o, NCPoly::one())),
                ("U=R(X),V=R(Y)", r_series(0, 2, o), r_series(1, 2, o)),
            ];
            for (name, u, v) in choices {
                let ua = u.rmul(&a);
                let va = v.rmul(&a);
                let wi = cst(2, o, w).mul(&one_minus_inv(&ua)?);
                let w2i = cst(2, o, w2).mul(&one_minus_inv(&va)?);
                let uv = u.add(&v).add(&u.mul(&v).scale_h(&hbar)).rmul(&a);
                let lhs = wi.shuffle(&w2i).mul(&HSeries::one(2, o).sub(&uv));
                let ww = cst(2, o, &qops::qshuf(w, w2));
                let rhs = ww
                    .neg()
                    .add(&wi.shuffle(&cst(2, o, w2)).mul(&HSeries::one(2, o).sub(&ua)))
                    .add(&cst(2, o, w).shuffle(&w2i).mul(&HSeries::one(2, o).sub(&va)));
                out.push(compare(tag(name), &lhs, &rhs, n));
            }
        }
        B2 => {
            let (w, w2) = (&ws[0], &ws[1]);
            for (name, u) in [("U=X", var_times(0, 1, o, NCPoly::one())), ("U=R(X)", r_series(0, 1, o))] {
                let ua = u.rmul(&a);
                let wi = cst(1, o, w).mul(&one_minus_inv(&ua)?);
                let lhs = wi.shuffle(&cst(1, o, &(w2 * &a))).mul(&HSeries::one(1, o).sub(&ua));
                let rhs = cst(1, o, &qops::qshuf(w, &(w2 * &a)))
                    .sub(&cst(1, o, &(&qops::qshuf(w, w2) * &a)))
                    .add(
                        &wi.shuffle(&cst(1, o, w2))
                            .mul(&HSeries::one(1, o).add(&u.scale_h(&hbar)))
                            .rmul(&a),
                    );
                out.push(compare(tag(name), &lhs, &rhs, n));
            }
        }
        B3 => {
            let (w, w2) = (&ws[0], &ws[1]);
            for (name, u) in [("U=X", var_times(0, 1, o, NCPoly::one())), ("U=R(X)", r_series(0, 1, o))] {
                for (sub, p) in [("w", w.clone()), ("w'", w2.clone()), ("ww'", w * w2)] {
                    let lhs = rho_u_direct(&p, &u)?;
                    let rhs = rho_u(&p, &u)?;
                    out.push(compare(tag(&format!("{name} rho({sub})")), &lhs, &rhs, n));
                }
            }
        }
        B4 => {
            let (u, v) = (&ws[0], &ws[1]);
            let geo = |var: usize| -> Result<HSeries> {
                one_minus_inv(&var_times(var, 2, o, a.clone()))
            };
            let ux = cst(2, o, &(u * &g1)).mul(&geo(0)?);
            let vy = cst(2, o, &(v * &g1)).mul(&geo(1)?);
            let lhs = ux.shuffle(&vy);
            let one = HSeries::one(2, o);
            let hx = one.add(&var_times(0, 2, o, NCPoly::hbar()));
            let hy = one.add(&var_times(1, 2, o, NCPoly::hbar()));
            let brace = hx
                .mul(&ux.shuffle(&cst(2, o, v)))
                .add(&hy.mul(&cst(2, o, u).shuffle(&vy)))
                .add(&cst(2, o, &(&qops::qshuf(u, v) * &h)));
            let s = var_times(0, 2, o, NCPoly::one())
                .add(&var_times(1, 2, o, NCPoly::one()))
                .add(&HSeries::term(2, o, [1, 1], NCPoly::hbar()));
            let rhs = brace.rmul(&g1).mul(&one_minus_inv(&s.rmul(&a))?);
            out.push(compare(tag(""), &lhs, &rhs, n));
        }
        B5 => {
            let lhs = var_times(0, 1, o, g1.clone()).exp_prod(Mode::Sh)?;
            let rhs = one_minus_inv(&r_series(0, 1, o).rmul(&g1))?;
            out.push(compare(tag(""), &lhs, &rhs, n));
        }
        B6 => {
            let lhs = e_series_direct(0, 1, o);
            let rhs = e_series(o)?;
            out.push(compare(tag(""), &lhs, &rhs, n));
        }
        B7 => {
            let e = e_series_direct(0, 1, o);
            let lhs = e.try_map(qops::psi_sh)?;
            out.push(compare(tag(""), &lhs, &e.neg_var(0), n));
        }
        B8 => {
            let (w, w2) = (&ws[0], &ws[1]);
            let e = e_series_direct(0, 1, o);
            let lhs = e.try_map(|c| k_sh(w, c, w2))?;
            let r = r_series(0, 1, o);
            let left = cst(1, o, w).mul(&one_minus_inv(&r.rmul(&g1))?);
            let right = cst(1, o, &qops::psi_sh(w2)?).mul(&one_minus_inv(&r.neg_var(0).rmul(&g1))?);
            out.push(compare(tag(""), &lhs, &left.shuffle(&right), n));
        }
        B9 => {
            let r = r_series(0, 1, o);
            let lhs = HSeries::one(1, o).add(&r.rmul(&NCPoly::e(1)));
            let rhs = exp_hb(0, 1, o).mul(&HSeries::one(1, o).sub(&r.neg_var(0).rmul(&g1)));
            out.push(compare(tag(""), &lhs, &rhs, n));
        }
        B10 => {
            let k = &ks[0];
            let lhs = rho_u(&NCPoly::g_index(k), &r_series(0, 1, o))?;
            let rhs = rho_u(&qops::e_index(k), &var_times(0, 1, o, NCPoly::one()))?;
            out.push(compare_mod_n(tag(""), &lhs, &rhs, n));
            if k.depth() == 1 && k.0[0] >= 2 {
                // ρ_X(e_k) ≡ (1−g₁X)⁻¹ g₁ ((1−g₁X)⁻¹ a)^{k−1}
                let inv = one_minus_inv(&var_times(0, 1, o, g1.clone()))?;
                let step = inv.rmul(&a);
                let mut rhs = inv.rmul(&g1);
                for _ in 1..k.0[0] {
                    rhs = rhs.mul(&step);
                }
                let lhs = rho_u(&NCPoly::e(k.0[0]), &var_times(0, 1, o, NCPoly::one()))?;
                out.push(compare_mod_n(tag(" rho_X(e_k)"), &lhs, &rhs, n));
            }
        }
        B11 => {
            let (w, w2) = (&ws[0], &ws[1]);
            let e1 = e_series_direct(0, 2, o);
            let e2 = e1.to_y();
            let we = cst(2, o, w).mul(&e1);
            let w2e = cst(2, o, w2).mul(&e2);
            let lhs = xi(&we, &w2e);
            let paren = cst(2, o, &qops::qshuf(w, w2))
                .neg()
                .add(&lambda_x(&cst(2, o, w), &cst(2, o, w2))?)
                .add(&lambda_y(&cst(2, o, w2), &cst(2, o, w))?);
            let rhs = partial(&w2e, &cst(2, o, w))
                .mul(&e1)
                .add(&partial(&we, &cst(2, o, w2)).mul(&e2))
                .add(&paren.mul(&e_two(o)));
            out.push(compare(tag(""), &lhs, &rhs, n));
        }
        B12 => {
            let (w, w2) = (&ws[0], &ws[1]);
            let e0 = e0_series(0, 2, o);
            let (cw, cw2) = (cst(2, o, w), cst(2, o, w2));
            let w2e0 = cw2.mul(&e0);
            let lhs = partial(&cw, &w2e0);
            let rhs = xi(&cw, &cw2).add(&cw.shuffle(&w2e0).shift([1, 0])).mul(&e0);
            out.push(compare(tag(" partial"), &lhs, &rhs, n));
            let ey = e_series_direct(1, 2, o);
            let lhs = lambda_y(&cw, &w2e0)?;
            let rhs = cw.shuffle(&w2e0).add(&partial(&cw.mul(&ey), &w2e0).shift([0, 1]));
            out.push(compare(tag(" Lambda"), &lhs, &rhs, n));
        }
        B13 => {
            let (w, w2) = (&ws[0], &ws[1]);
            let e0 = e0_series(0, 2, o);
            let ey = e_series_direct(1, 2, o);
            let (cw, cw2) = (cst(2, o, w), cst(2, o, w2));
            let w2e0 = cw2.mul(&e0);
            let lhs = cw.mul(&ey).shuffle(&w2e0);
            let brace = cw.shuffle(&w2e0).add(&xi(&cw.mul(&ey), &cw2).mul(&e0).shift([0, 1]));
            let tail = one_minus_inv(&e0.mul(&ey).shift([1, 1]))?;
            let rhs = brace.mul(&ey).mul(&tail);
            out.push(compare(tag(""), &lhs, &rhs, n));
        }
        B14 => {
            let (w, w2) = (&ws[0], &ws[1]);
            let e0x = e0_series(0, 2, o);
            let e0y = e0_series(1, 2, o);
            let (cw, cw2) = (cst(2, o, w), cst(2, o, w2));
            let lhs = cw.mul(&e0x).shuffle(&cw2.mul(&e0y));
            let s = var_times(0, 2, o, NCPoly::one())
                .add(&var_times(1, 2, o, NCPoly::one()))
                .add(&HSeries::term(2, o, [1, 1], NCPoly::hbar()));
            let one = HSeries::one(2, o);
            let hx = one.add(&var_times(0, 2, o, NCPoly::hbar()));
            let hy = one.add(&var_times(1, 2, o, NCPoly::hbar()));
            let brace = s
                .mul(&xi(&cw, &cw2).rmul(&NCPoly::e(2)))
                .neg()
                .add(&hy.mul(&partial(&cw, &cw2.mul(&e0y))).shift([1, 0]))
                .add(&hx.mul(&partial(&cw2, &cw.mul(&e0x))).shift([0, 1]));
            let rhs = brace.div_monomial([1, 1])?.mul(&one_minus_inv(&s.rmul(&a))?);
            out.push(compare(tag(""), &lhs, &rhs, n));
        }
        B15 => {
            let r1 = r_series(0, 2, o);
            let r2 = r_series(1, 2, o);
            let lhs = r1.add(&r2).add(&r1.mul(&r2).lmul(&h));
            out.push(compare(tag(""), &lhs, &r_series(0, 1, o).sum_vars(), n));
        }
        B16 => {
            let k = single(&ks[0])?;
            let lhs = one_minus_inv(&var_times(0, 1, o, NCPoly::g(k)))?;
            let cs = (0..o)
                .map(|m| {
                    if m == 0 {
                        NCPoly::zero()
                    } else {
                        let sign = if m % 2 == 1 { 1 } else { -1 };
                        NCPoly::g(m * k).scale(&Rational::new(sign.into(), (m as i64).into()))
                    }
                })
                .collect();
            let rhs = HSeries::from_coeffs(0, 1, o, cs).exp_prod(Mode::Star)?;
            out.push(compare(tag(""), &lhs, &rhs, n));
        }
        L58 => {
            let k = &ks[0];
            let rg = one_minus_inv(&r_series(0, 1, o).rmul(&g1))?;
            let gx = one_minus_inv(&var_times(0, 1, o, g1.clone()))?;
            let lhs = rg.shuffle(&cst(1, o, &NCPoly::g_index(k)).mul(&gx));
            let rhs = gx.shuffle(&cst(1, o, &qops::e_index(k)).mul(&rg));
            out.push(compare_mod_n(tag(""), &lhs, &rhs, n));
        }
        SG1 => {
            let (w, w2) = (&ws[0], &ws[1]);
            let lhs = qops::qshuf(&(w * &g1), &(w2 * &g1));
            let inner = &(&qops::qshuf(w, &(w2 * &g1)) + &qops::qshuf(&(w * &g1), w2))
                + &(&qops::qshuf(w, w2) * &h);
            out.push(compare_poly(tag(""), &lhs, &(&inner * &g1)));
        }
        SG2 => {
            let (w, w2) = (&ws[0], &ws[1]);
            let k = single(&ks[0])?;
            let lhs = qops::qshuf(&(w * &g1), &(w2 * &NCPoly::g(k + 1)));
            let rhs = &(&(&qops::qshuf(w, &(w2 * &NCPoly::g(k + 1))) * &g1)
                + &(&qops::qshuf(&(w * &g1), &(w2 * &NCPoly::g(k))) * &a))
                + &(&qops::qshuf(w, &(w2 * &NCPoly::g(k))) * &g1).scale_h(&hbar);
            out.push(compare_poly(tag(""), &lhs, &rhs));
        }
        SG3 => {
            let (w, w2) = (&ws[0], &ws[1]);
            let kl = &ks[0];
            if kl.depth() != 2 {
                return Err(Error::InvalidArgument("SG3 takes an index (k,l)".into()));
            }
            let (k, l) = (kl.0[0], kl.0[1]);
            let gk = |j: u32| NCPoly::g(j);
            let lhs = qops::qshuf(&(w * &gk(k + 1)), &(w2 * &gk(l + 1)));
            let inner = &(&qops::qshuf(&(w * &gk(k)), &(w2 * &gk(l + 1)))
                + &qops::qshuf(&(w * &gk(k + 1)), &(w2 * &gk(l))))
                + &qops::qshuf(&(w * &gk(k)), &(w2 * &gk(l))).scale_h(&hbar);
            out.push(compare_poly(tag(""), &lhs, &(&inner * &a)));
        }
    }
    Ok(out)
}

/// `Λ_{X}` (the variable-`X` twin of [`lambda_y`]) used for `Λ_{Y₁}`.
fn lambda_x(w: &HSeries, w2: &HSeries) -> Result<HSeries> {
    let o = w.order.min(w2.order);
    let rg = r_series(0, 2, o).rmul(&NCPoly::g(1));
    let inv = one_minus_inv(&rg)?;
    Ok(w.mul(&inv).shuffle(w2).mul(&HSeries::one(2, o).sub(&rg)))
}

fn single(k: &Index) -> Result<u32> {
    match k.0.as_slice() {
        [k] => Ok(*k),
        _ => Err(Error::InvalidArgument(format!("expected a single integer, got {k}"))),
    }
}

/// Checks one catalog identity to total degree `< order`.  With no
/// parameters the default parameter sets are swept.
pub fn check_identity(id: IdentityId, order: u32, params: &[Param]) -> Result<Report> {
    let sets = if params.is_empty() && id.arity() != (0, 0) {
        default_params(id)
    } else {
        vec![params.to_vec()]
    };
    let mut rep = Report::new(format!("identity {id}"))
        .param("id", id)
        .param("order", order);
    for set in sets {
        rep.extend(check_one(id, order, &set)?);
    }
    Ok(rep.finish())
}

/// Every catalog identity with its default parameters.
pub fn check_catalog(order: u32) -> Result<Report> {
    use rayon::prelude::*;
    let jobs: Vec<(IdentityId, Vec<Param>)> = IdentityId::ALL
        .iter()
        .flat_map(|&id| default_params(id).into_iter().map(move |p| (id, p)))
        .collect();
    let parts: Vec<Result<Vec<Case>>> = jobs.par_iter().map(|(id, p)| check_one(*id, order, p)).collect();
    let mut rep = Report::new("identities").param("order", order);
    for p in parts {
        rep.extend(p?);
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{int, rat};

    #[test]
    fn r_series_coefficients() {
        let r = r_series(0, 1, 5);
        assert!(r.c(0).is_zero());
        assert_eq!(r.c(1), NCPoly::one());
        assert_eq!(r.c(2), NCPoly::h().scale(&rat(1, 2)));
    }

    #[test]
    fn exp_examples() {
        let z = HSeries::zero(1, 4);
        assert_eq!(z.exp_prod(Mode::Sh).unwrap(), HSeries::one(1, 4));
        let g1x = var_times(0, 1, 3, NCPoly::g(1));
        let e = g1x.exp_prod(Mode::Star).unwrap();
        let g11 = NCPoly::g_index(&Index(vec![1, 1]));
        assert_eq!(e.c(1), NCPoly::g(1));
        assert_eq!(e.c(2), &g11 + &NCPoly::g(2).scale(&rat(1, 2)));
        let c = HSeries::one(1, 3);
        assert_eq!(c.exp_prod(Mode::Sh), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn geometric_inverse() {
        let f = HSeries::one(1, 5).sub(&var_times(0, 1, 5, NCPoly::g(1)));
        let inv = f.geom_inverse().unwrap();
        assert_eq!(inv.c(3), NCPoly::g(1).pow(3));
        assert_eq!(f.mul(&inv), HSeries::one(1, 5));
        let bad = var_times(0, 1, 5, NCPoly::g(1));
        assert!(matches!(bad.geom_inverse(), Err(Error::NonInvertibleConstant(_))));
        let e = e_series(4).unwrap();
        assert_eq!(e.c(0), NCPoly::one());
        assert_eq!(e.c(2), qops::e_ones(2));
        let two = HSeries::constant(1, 3, NCPoly::constant(HPoly::from_int(2)));
        assert_eq!(two.geom_inverse().unwrap().c(0), NCPoly::one().scale(&rat(1, 2)));
        assert_eq!(int(1), Rational::one());
    }

    #[test]
    fn rho_examples() {
        let x = var_times(0, 1, 4, NCPoly::one());
        assert_eq!(rho_u(&NCPoly::one(), &x).unwrap(), HSeries::one(1, 4));
        let bad = var_times(0, 1, 4, NCPoly::letter_a());
        assert!(matches!(rho_u(&NCPoly::one(), &bad), Err(Error::BadU(_))));
        let (ra, _) = rho_images(&x).unwrap();
        assert_eq!(ra, rho_u_direct(&NCPoly::letter_a(), &x).unwrap());
    }

    #[test]
    fn catalog_ids_parse() {
        assert_eq!("b5".parse::<IdentityId>().unwrap(), B5);
        assert!(matches!("B99".parse::<IdentityId>(), Err(Error::UnknownIdentity(_))));
        let r = check_identity(B5, 3, &[Param::Word(NCPoly::one())]);
        assert!(matches!(r, Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn cheap_identities_pass() {
        for id in [B5, B6, B7, B9, B15, SG1] {
            let r = check_identity(id, 5, &[]).unwrap();
            assert!(r.all_passed(), "{id}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
