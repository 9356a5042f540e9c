//! The classical word algebra `𝔥 = Q⟨x, y⟩` with `z_k = y x^{k−1}`:
//! harmonic and shuffle products, the anti-automorphism `ψ`, the
//! symmetrizer `w^{S,•}`, truncated (symmetric) multiple zeta values and
//! the combinatorics behind Ohno-type relations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeffring::{int, Rational};
use crate::error::{Error, Result};
use crate::freealg::Index;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CLetter {
    X,
    Y,
}

pub type CWord = Vec<CLetter>;

/// Which product a symmetrizer or coefficient table refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Star,
    Sh,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star" | "*" | "harm" => Ok(Mode::Star),
            "sh" | "shuf" => Ok(Mode::Sh),
            _ => Err(Error::InvalidArgument(format!("unknown mode `{s}` (star|sh)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Star => "star",
            Mode::Sh => "sh",
        })
    }
}

/// Element of `𝔥` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ClassicalPoly {
    terms: BTreeMap<CWord, Rational>,
}

pub fn z_word(k: &Index) -> CWord {
    let mut w = Vec::new();
    for &kk in &k.0 {
        w.push(CLetter::Y);
        w.extend(std::iter::repeat_n(CLetter::X, (kk - 1) as usize));
    }
    w
}

pub fn format_cword(w: &[CLetter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let s: Vec<&str> = w.iter().map(|l| if *l == CLetter::X { "x" } else { "y" }).collect();
    s.join("*")
}

/// Reads a word in `𝔥¹` as an index; `None` if it starts with `x`.
pub fn word_index(w: &[CLetter]) -> Option<Index> {
    let mut parts: Vec<u32> = Vec::new();
    for l in w {
        match l {
            CLetter::Y => parts.push(1),
            CLetter::X => *parts.last_mut()? += 1,
        }
    }
    Some(Index(parts))
}

impl ClassicalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Vec::new(), Rational::one())
    }

    pub fn monomial(w: CWord, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(w, &c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(vec![CLetter::X], Rational::one())
    }

    pub fn y() -> Self {
        Self::monomial(vec![CLetter::Y], Rational::one())
    }

    pub fn z(k: &Index) -> Self {
        Self::monomial(z_word(k), Rational::one())
    }

    pub fn from_index_map(m: &BTreeMap<Index, Rational>) -> Self {
        let mut p = Self::zero();
        for (k, c) in m {
            p.add_term(z_word(k), c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<CWord, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: CWord, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut p = Self::zero();
        for (w, k) in &self.terms {
            p.add_term(w.clone(), &(k * c));
        }
        p
    }

    /// Coefficients in the `z`-index basis; fails outside `𝔥¹`.
    pub fn index_map(&self) -> Result<BTreeMap<Index, Rational>> {
        self.terms
            .iter()
            .map(|(w, c)| {
                word_index(w)
                    .map(|k| (k, c.clone()))
                    .ok_or_else(|| Error::NotInH1(format_cword(w)))
            })
            .collect()
    }

    /// Every monomial is constant or ends in `x` (`𝔥⁰`).
    pub fn in_h0(&self) -> bool {
        self.terms
            .keys()
            .all(|w| w.is_empty() || (w.first() == Some(&CLetter::Y) && w.last() == Some(&CLetter::X)))
    }
}

impl fmt::Display for ClassicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let as_index = self.index_map().ok();
        let mut first = true;
        let entries: Vec<(String, &Rational)> = match &as_index {
            Some(m) => m
                .iter()
                .map(|(k, c)| {
                    let s: Vec<String> = k.0.iter().map(u32::to_string).collect();
                    let body = if k.is_empty() { String::new() } else { format!("z[{}]", s.join(",")) };
                    (body, c)
                })
                .collect(),
            None => self
                .terms
                .iter()
                .map(|(w, c)| (if w.is_empty() { String::new() } else { format_cword(w) }, c))
                .collect(),
        };
        for (body, c) in entries {
            let neg = c.is_negative();
            let mag = c.abs();
            let sign = match (first, neg) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            first = false;
            if body.is_empty() {
                write!(f, "{sign}{mag}")?;
            } else if mag.is_one() {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, "{sign}{mag}*{body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ClassicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassicalPoly({self})")
    }
}

impl std::ops::Add<&ClassicalPoly> for &ClassicalPoly {
    type Output = ClassicalPoly;
    fn add(self, rhs: &ClassicalPoly) -> ClassicalPoly {
        let mut p = self.clone();
        for (w, c) in &rhs.terms {
            p.add_term(w.clone(), c);
        }
        p
    }
}

impl std::ops::Sub<&ClassicalPoly> for &ClassicalPoly {
    type Output = ClassicalPoly;
    fn sub(self, rhs: &ClassicalPoly) -> ClassicalPoly {
        self + &rhs.scale(&int(-1))
    }
}

/// Concatenation.
impl std::ops::Mul<&ClassicalPoly> for &ClassicalPoly {
    type Output = ClassicalPoly;
    fn mul(self, rhs: &ClassicalPoly) -> ClassicalPoly {
        let mut p = ClassicalPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                p.add_term(w, &(c1 * c2));
            }
        }
        p
    }
}

// ---------------------------------------------------------------------------
// products

type IndexCounts = BTreeMap<Index, i64>;

fn add_count(m: &mut IndexCounts, k: Index, c: i64) {
    let e = m.entry(k.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        m.remove(&k);
    }
}

/// Quasi-shuffle of two indices, as integer multiplicities.
pub fn harm_indices(k: &[u32], l: &[u32]) -> IndexCounts {
    fn go(k: &[u32], l: &[u32], memo: &mut HashMap<(usize, usize), IndexCounts>) -> IndexCounts {
        if k.is_empty() {
            return IndexCounts::from([(Index(l.to_vec()), 1)]);
        }
        if l.is_empty() {
            return IndexCounts::from([(Index(k.to_vec()), 1)]);
        }
        if let Some(r) = memo.get(&(k.len(), l.len())) {
            return r.clone();
        }
        let (u, kp) = (k[k.len() - 1], &k[..k.len() - 1]);
        let (v, lp) = (l[l.len() - 1], &l[..l.len() - 1]);
        let mut out = IndexCounts::new();
        for (last, a, b) in [(u, kp, l), (v, k, lp), (u + v, kp, lp)] {
            for (m, c) in go(a, b, memo) {
                let mut parts = m.0;
                parts.push(last);
                add_count(&mut out, Index(parts), c);
            }
        }
        memo.insert((k.len(), l.len()), out.clone());
        out
    }
    go(k, l, &mut HashMap::new())
}

/// Letterwise shuffle of two words, as integer multiplicities.
pub fn shuffle_words<T: Clone + Ord>(u: &[T], v: &[T]) -> BTreeMap<Vec<T>, i64> {
    fn go<T: Clone + Ord>(
        u: &[T],
        v: &[T],
        memo: &mut HashMap<(usize, usize), BTreeMap<Vec<T>, i64>>,
    ) -> BTreeMap<Vec<T>, i64> {
        if u.is_empty() || v.is_empty() {
            let w = if u.is_empty() { v.to_vec() } else { u.to_vec() };
            return BTreeMap::from([(w, 1)]);
        }
        if let Some(r) = memo.get(&(u.len(), v.len())) {
            return r.clone();
        }
        let mut out: BTreeMap<Vec<T>, i64> = BTreeMap::new();
        for (a, b, last) in [
            (&u[..u.len() - 1], v, &u[u.len() - 1]),
            (u, &v[..v.len() - 1], &v[v.len() - 1]),
        ] {
            for (mut w, c) in go(a, b, memo) {
                w.push(last.clone());
                *out.entry(w).or_insert(0) += c;
            }
        }
        memo.insert((u.len(), v.len()), out.clone());
        out
    }
    go(u, v, &mut HashMap::new())
}

/// Harmonic (stuffle) product on `𝔥¹`.
pub fn harm(w: &ClassicalPoly, w2: &ClassicalPoly) -> Result<ClassicalPoly> {
    let a = w.index_map()?;
    let b = w2.index_map()?;
    let mut out = ClassicalPoly::zero();
    for (k, c1) in &a {
        for (l, c2) in &b {
            let cc = c1 * c2;
            for (m, n) in harm_indices(&k.0, &l.0) {
                out.add_term(z_word(&m), &(&cc * int(n)));
            }
        }
    }
    Ok(out)
}

/// Shuffle product on `𝔥`.
pub fn shuf(w: &ClassicalPoly, w2: &ClassicalPoly) -> ClassicalPoly {
    let mut out = ClassicalPoly::zero();
    for (u, c1) in &w.terms {
        for (v, c2) in &w2.terms {
            let cc = c1 * c2;
            for (m, n) in shuffle_words(u, v) {
                out.add_term(m, &(&cc * int(n)));
            }
        }
    }
    out
}

pub fn product(mode: Mode, w: &ClassicalPoly, w2: &ClassicalPoly) -> Result<ClassicalPoly> {
    match mode {
        Mode::Star => harm(w, w2),
        Mode::Sh => Ok(shuf(w, w2)),
    }
}

/// Anti-automorphism `z_k ↦ (−1)^k z_k`.
pub fn psi(w: &ClassicalPoly) -> Result<ClassicalPoly> {
    let mut out = ClassicalPoly::zero();
    for (k, c) in w.index_map()? {
        let sign = if k.weight() % 2 == 0 { c } else { -c };
        out.add_term(z_word(&k.reversed()), &sign);
    }
    Ok(out)
}

/// `w^{S,•}(u₁⋯u_r) = Σ_i u₁⋯u_i • ψ(u_{i+1}⋯u_r)`.
pub fn ws_classical(w: &ClassicalPoly, mode: Mode) -> Result<ClassicalPoly> {
    let mut out = ClassicalPoly::zero();
    for (k, c) in w.index_map()? {
        for i in 0..=k.depth() {
            let head = ClassicalPoly::z(&Index(k.0[..i].to_vec()));
            let tail = psi(&ClassicalPoly::z(&Index(k.0[i..].to_vec())))?;
            let term = product(mode, &head, &tail)?;
            for (m, x) in term.terms {
                out.add_term(m, &(x * &c));
            }
        }
    }
    Ok(out)
}

/// Coefficients `d^{•,m}_{k,l}` of `z_m` in `z_k • z_l`.
pub fn d_coeffs(k: &Index, l: &Index, mode: Mode) -> BTreeMap<Index, i64> {
    match mode {
        Mode::Star => harm_indices(&k.0, &l.0),
        Mode::Sh => {
            let mut out = BTreeMap::new();
            for (w, c) in shuffle_words(&z_word(k), &z_word(l)) {
                // shuffles of words starting with y start with y
                let m = word_index(&w).expect("shuffle of h^1 words stays in h^1");
                add_count(&mut out, m, c);
            }
            out
        }
    }
}

// ---------------------------------------------------------------------------
// truncated sums

fn pow_inv(m: u64, k: u32) -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(m).pow(k))
}

/// `ζ_M(k) = Σ_{0<m₁<⋯<m_r<M} Π m_i^{−k_i}`.
pub fn zeta_m(k: &Index, m_max: u64) -> Rational {
    if k.is_empty() {
        return Rational::one();
    }
    chain_sums_by_last(&k.0, m_max)
        .iter()
        .fold(Rational::zero(), |a, b| a + b)
}

/// `Z_M` extended linearly over `𝔥¹`.
pub fn z_m(w: &ClassicalPoly, m_max: u64) -> Result<Rational> {
    let mut total = Rational::zero();
    for (k, c) in w.index_map()? {
        total += c * zeta_m(&k, m_max);
    }
    Ok(total)
}

/// `Z_M^{S,•} = Z_M ∘ w^{S,•}`.
pub fn zm_s_classical(w: &ClassicalPoly, m_max: u64, mode: Mode) -> Result<Rational> {
    z_m(&ws_classical(w, mode)?, m_max)
}

/// The same value from the explicit double-sum formula, summing over the
/// two chains directly.
pub fn zm_s_direct(k: &Index, m_max: u64, mode: Mode) -> Rational {
    let r = k.depth();
    let mut total = Rational::zero();
    for i in 0..=r {
        let sign_exp: u32 = k.0[i..].iter().sum();
        let head = &k.0[..i];
        // tail chain m_r < ⋯ < m_{i+1}: reversed tail read increasingly
        let tail: Vec<u32> = k.0[i..].iter().rev().copied().collect();
        let lead = chain_sums_by_last(head, m_max);
        let trail = chain_sums_by_last(&tail, m_max);
        let mut s = Rational::zero();
        match mode {
            Mode::Star => {
                let a: Rational = lead.iter().fold(Rational::zero(), |x, y| x + y);
                let b: Rational = trail.iter().fold(Rational::zero(), |x, y| x + y);
                s = a * b;
            }
            Mode::Sh => {
                // index 0 stands for an empty chain (m_0 = 0 or m_{r+1} = 0)
                for (p, x) in lead.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (q, y) in trail.iter().enumerate() {
                        if (p + q) < m_max as usize || (p == 0 && q == 0) {
                            s += x * y;
                        }
                    }
                }
            }
        }
        total += if sign_exp % 2 == 0 { s } else { -s };
    }
    total
}

/// `v[m]` = sum over chains `0<m₁<⋯<m_j=m<M` of `Π m_i^{−k_i}`; `v[0]` is 1
/// exactly when the chain is empty.
fn chain_sums_by_last(k: &[u32], m_max: u64) -> Vec<Rational> {
    let n = (m_max as usize).max(1);
    let mut v = vec![Rational::zero(); n];
    v[0] = Rational::one();
    for &kk in k {
        let mut cur = vec![Rational::zero(); n];
        let mut acc = Rational::zero();
        for m in 1..n {
            acc += &v[m - 1];
            cur[m] = &acc * pow_inv(m as u64, kk);
        }
        v = cur;
    }
    v
}

// ---------------------------------------------------------------------------
// Ohno machinery

/// `a_s(k) = Σ Π_i ( y Π_{l ≤ k_i} (y^{j_l} x) )` over `j ∈ Z_{≥0}^{wt(k)}` with
/// `Σ j = s`.  Parts of `k` may be zero.
pub fn ohno_a(k: &[u32], s: u32) -> ClassicalPoly {
    let slots: u32 = k.iter().sum();
    let mut out = ClassicalPoly::zero();
    let mut js = vec![0u32; slots as usize];
    fn rec(pos: usize, left: u32, js: &mut Vec<u32>, k: &[u32], out: &mut ClassicalPoly) {
        if pos == js.len() {
            if left != 0 {
                return;
            }
            let mut w = Vec::new();
            let mut it = js.iter();
            for &kk in k {
                w.push(CLetter::Y);
                for _ in 0..kk {
                    let j = *it.next().unwrap();
                    w.extend(std::iter::repeat_n(CLetter::Y, j as usize));
                    w.push(CLetter::X);
                }
            }
            out.add_term(w, &Rational::one());
            return;
        }
        for j in 0..=left {
            js[pos] = j;
            rec(pos + 1, left - j, js, k, out);
        }
        js[pos] = 0;
    }
    if slots == 0 && s > 0 {
        return out;
    }
    rec(0, s, &mut js, k, &mut out);
    out
}

/// `A_{k,s,p} = Σ_{λ ∈ {0,1}^r, Σλ = p} a_s(k₁+λ₁−1, …, k_r+λ_r−1)`.
pub fn ohno_big_a(k: &Index, s: u32, p: u32) -> ClassicalPoly {
    let r = k.depth();
    let mut out = ClassicalPoly::zero();
    for mask in 0u32..(1 << r) {
        if mask.count_ones() != p {
            continue;
        }
        let shifted: Vec<u32> = (0..r)
            .map(|i| k.0[i] + ((mask >> i) & 1) - 1)
            .collect();
        out = &out + &ohno_a(&shifted, s);
    }
    out
}

/// Whether `Σ_p Σ_{m+s=n−p} (−1)^s A_{k,s,p} sh z₁^m = z_k ∗ z₁^n`.
pub fn ohno_machinery_check(k: &Index, n: u32) -> Result<bool> {
    let r = k.depth() as u32;
    let mut lhs = ClassicalPoly::zero();
    for p in 0..=n.min(r) {
        for s in 0..=(n - p) {
            let m = n - p - s;
            let z1m = ClassicalPoly::z(&Index::ones(m as usize));
            let term = shuf(&ohno_big_a(k, s, p), &z1m);
            lhs = if s % 2 == 0 { &lhs + &term } else { &lhs - &term };
        }
    }
    let rhs = harm(&ClassicalPoly::z(k), &ClassicalPoly::z(&Index::ones(n as usize)))?;
    Ok(lhs == rhs)
}

/// Exact small-integer view of a rational, for display.
pub fn as_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::rat;

    fn z(v: &[u32]) -> ClassicalPoly {
        ClassicalPoly::z(&Index(v.to_vec()))
    }

    fn lin(terms: &[(i64, &[u32])]) -> ClassicalPoly {
        let mut p = ClassicalPoly::zero();
        for (c, k) in terms {
            p = &p + &z(k).scale(&int(*c));
        }
        p
    }

    #[test]
    fn harm_examples() {
        assert_eq!(harm(&z(&[1]), &z(&[1])).unwrap(), lin(&[(2, &[1, 1]), (1, &[2])]));
        assert_eq!(harm(&z(&[2]), &z(&[2])).unwrap(), lin(&[(2, &[2, 2]), (1, &[4])]));
        assert_eq!(harm(&ClassicalPoly::one(), &z(&[3, 1])).unwrap(), z(&[3, 1]));
        assert!(matches!(harm(&ClassicalPoly::x(), &z(&[1])), Err(Error::NotInH1(_))));
    }

    #[test]
    fn shuf_examples() {
        assert_eq!(shuf(&z(&[1]), &z(&[1])), lin(&[(2, &[1, 1])]));
        assert_eq!(shuf(&z(&[1]), &z(&[2])), lin(&[(2, &[1, 2]), (1, &[2, 1])]));
        let xy = &ClassicalPoly::x() * &ClassicalPoly::y();
        let yx = &ClassicalPoly::y() * &ClassicalPoly::x();
        assert_eq!(shuf(&ClassicalPoly::x(), &ClassicalPoly::y()), &xy + &yx);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&z(&[3])).unwrap(), z(&[3]).scale(&int(-1)));
        assert_eq!(psi(&z(&[2, 3])).unwrap(), z(&[3, 2]).scale(&int(-1)));
        assert_eq!(psi(&ClassicalPoly::one()).unwrap(), ClassicalPoly::one());
    }

    #[test]
    fn ws_examples() {
        assert!(ws_classical(&z(&[1]), Mode::Star).unwrap().is_zero());
        assert_eq!(ws_classical(&ClassicalPoly::one(), Mode::Sh).unwrap(), ClassicalPoly::one());
        assert_eq!(ws_classical(&z(&[2]), Mode::Star).unwrap(), z(&[2]).scale(&int(2)));
    }

    #[test]
    fn d_coeff_examples() {
        let d = d_coeffs(&Index(vec![1]), &Index(vec![1]), Mode::Star);
        assert_eq!(d, BTreeMap::from([(Index(vec![2]), 1), (Index(vec![1, 1]), 2)]));
        let d = d_coeffs(&Index(vec![1]), &Index(vec![2]), Mode::Sh);
        assert_eq!(d, BTreeMap::from([(Index(vec![1, 2]), 2), (Index(vec![2, 1]), 1)]));
        let k = Index(vec![2, 1]);
        assert_eq!(d_coeffs(&Index::empty(), &k, Mode::Sh), BTreeMap::from([(k.clone(), 1)]));
        assert_eq!(d_coeffs(&Index::empty(), &k, Mode::Star), BTreeMap::from([(k, 1)]));
    }

    #[test]
    fn zeta_m_examples() {
        assert_eq!(zeta_m(&Index::empty(), 5), int(1));
        assert_eq!(zeta_m(&Index(vec![2]), 2), int(1));
        assert_eq!(zeta_m(&Index(vec![2]), 3), rat(5, 4));
        assert_eq!(zeta_m(&Index(vec![1, 1]), 2), int(0));
        assert_eq!(zeta_m(&Index(vec![1, 2, 1]), 3), int(0));
        // 1/(1·2²) + 1/(1·3²) + 1/(2·3²)
        assert_eq!(zeta_m(&Index(vec![1, 2]), 4), rat(1, 4) + rat(1, 9) + rat(1, 18));
    }

    #[test]
    fn zm_s_examples() {
        assert_eq!(zm_s_classical(&z(&[2]), 3, Mode::Star).unwrap(), rat(5, 2));
        assert_eq!(zm_s_classical(&ClassicalPoly::one(), 4, Mode::Sh).unwrap(), int(1));
        assert_eq!(zm_s_classical(&z(&[1]), 7, Mode::Star).unwrap(), int(0));
    }

    #[test]
    fn direct_formula_agrees() {
        for k in Index::all_up_to(5) {
            for m in 1..7 {
                for mode in [Mode::Star, Mode::Sh] {
                    assert_eq!(
                        zm_s_classical(&ClassicalPoly::z(&k), m, mode).unwrap(),
                        zm_s_direct(&k, m, mode),
                        "k={k} M={m} mode={mode}"
                    );
                }
            }
        }
    }

    #[test]
    fn ohno_examples() {
        // a_0(k − 1) = z_k
        assert_eq!(ohno_a(&[1, 2], 0), z(&[2, 3]));
        assert_eq!(ohno_a(&[0, 1], 0), z(&[1, 2]));
        assert_eq!(ohno_a(&[1], 1), z(&[1, 2]));
        assert!(ohno_machinery_check(&Index(vec![2]), 1).unwrap());
    }
}
