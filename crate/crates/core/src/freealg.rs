//! Indices, words over `{a, b}`, the alphabet `A = {H} ∪ {G(k)}`, and
//! elements of the free algebra `ℌ = Q[ħ]⟨a, b⟩`.
//!
//! Storage is always in the `(a, b)`-word basis.  The `A`-basis view
//! ([`NCPoly::to_a_basis`]) is computed on demand and is what the
//! membership tests and the quasi-shuffle product work with.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::coeffring::{HPoly, Rational};
use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Index

/// A tuple of positive integers `(k₁, …, k_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Index(pub Vec<u32>);

/// Summary returned by [`Index::stats`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexStats {
    pub weight: u32,
    pub depth: usize,
    pub reversed: Index,
    pub admissible: bool,
}

/// `k = (1^{s₀}, t₁+2, 1^{s₁}, …, t_r+2, 1^{s_r})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EShape {
    pub s0: u32,
    pub blocks: Vec<(u32, u32)>,
}

impl Index {
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let parts = parts.into();
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "index parts must be positive".into(),
            ));
        }
        Ok(Index(parts))
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    pub fn ones(m: usize) -> Self {
        Index(vec![1; m])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Index {
        Index(self.0.iter().rev().copied().collect())
    }

    pub fn is_admissible(&self) -> bool {
        self.0.last().is_none_or(|&k| k >= 2)
    }

    pub fn stats(&self) -> IndexStats {
        IndexStats {
            weight: self.weight(),
            depth: self.depth(),
            reversed: self.reversed(),
            admissible: self.is_admissible(),
        }
    }

    pub fn concat(&self, other: &Index) -> Index {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Index(v)
    }

    /// Hoffman dual: writing `z_k = y·w`, the dual index has `z = y·σ(w)`
    /// where `σ` swaps `x` and `y` letterwise.
    pub fn hoffman_dual(&self) -> Index {
        if self.0.is_empty() {
            return Index::empty();
        }
        // word of z_k with x = false, y = true
        let mut word = Vec::new();
        for &k in &self.0 {
            word.push(true);
            word.extend(std::iter::repeat_n(false, (k - 1) as usize));
        }
        let mut parts: Vec<u32> = vec![1];
        for &letter in &word[1..] {
            // swapped: an original x starts a new part, an original y extends it
            if !letter {
                parts.push(1);
            } else {
                *parts.last_mut().unwrap() += 1;
            }
        }
        Index(parts)
    }

    /// Split around parts ≥ 2.  `None` for the empty index.
    pub fn e_shape(&self) -> Option<EShape> {
        if self.0.is_empty() {
            return None;
        }
        let mut s0 = 0;
        let mut blocks: Vec<(u32, u32)> = Vec::new();
        for &k in &self.0 {
            if k == 1 {
                match blocks.last_mut() {
                    Some(b) => b.1 += 1,
                    None => s0 += 1,
                }
            } else {
                blocks.push((k - 2, 0));
            }
        }
        Some(EShape { s0, blocks })
    }

    pub fn from_e_shape(shape: &EShape) -> Index {
        let mut v = vec![1; shape.s0 as usize];
        for &(t, s) in &shape.blocks {
            v.push(t + 2);
            v.extend(std::iter::repeat_n(1, s as usize));
        }
        Index(v)
    }

    /// All indices of exactly the given weight, in lexicographic order.
    pub fn compositions(weight: u32) -> Vec<Index> {
        if weight == 0 {
            return vec![Index::empty()];
        }
        let mut out = Vec::new();
        for first in 1..=weight {
            for rest in Index::compositions(weight - first) {
                let mut v = vec![first];
                v.extend(rest.0);
                out.push(Index(v));
            }
        }
        out
    }

    /// All non-empty indices of weight ≤ `max_weight`, ordered by weight.
    pub fn all_up_to(max_weight: u32) -> Vec<Index> {
        (1..=max_weight).flat_map(Index::compositions).collect()
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for Index {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Index::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidArgument(format!("bad index part `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Index::new(parts)
    }
}

// ---------------------------------------------------------------------------
// Words over {a, b}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

/// A word over `{a, b}`.  Ordered length-first, then lexicographically with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn count_b(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::B).count()
    }

    pub fn count_a(&self) -> usize {
        self.0.len() - self.count_b()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", if *l == Letter::A { 'a' } else { 'b' })?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// The alphabet A

/// `H` stands for `ħb = e₁ − g₁`; `G(k)` for `g_k = b a^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ALetter {
    H,
    G(u32),
}

impl ALetter {
    pub fn weight(&self) -> u32 {
        match self {
            ALetter::H => 1,
            ALetter::G(k) => *k,
        }
    }
}

pub type AWord = Vec<ALetter>;

/// `A`-basis coefficients of an element of `C⟨A⟩`.
pub type AMap = BTreeMap<AWord, HPoly>;

pub fn aword_weight(w: &[ALetter]) -> u32 {
    w.iter().map(ALetter::weight).sum()
}

pub fn g_word(k: &Index) -> AWord {
    k.0.iter().map(|&k| ALetter::G(k)).collect()
}

/// Prints an `A`-word in the expression syntax, e.g. `g[1,2]*H*g[3]`.
pub fn format_aword(w: &[ALetter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut pieces: Vec<String> = Vec::new();
    let mut run: Vec<u32> = Vec::new();
    let flush = |run: &mut Vec<u32>, pieces: &mut Vec<String>| {
        if !run.is_empty() {
            let s: Vec<String> = run.iter().map(u32::to_string).collect();
            pieces.push(format!("g[{}]", s.join(",")));
            run.clear();
        }
    };
    for l in w {
        match l {
            ALetter::G(k) => run.push(*k),
            ALetter::H => {
                flush(&mut run, &mut pieces);
                pieces.push("H".into());
            }
        }
    }
    flush(&mut run, &mut pieces);
    pieces.join("*")
}

/// The `(a,b)`-word and ħ-power of an `A`-word: `H ↦ ħ·b`, `G(k) ↦ b a^k`.
pub fn expand_aword(w: &[ALetter]) -> (Word, usize) {
    let mut letters = Vec::new();
    let mut hpow = 0;
    for l in w {
        letters.push(Letter::B);
        match l {
            ALetter::H => hpow += 1,
            ALetter::G(k) => letters.extend(std::iter::repeat_n(Letter::A, *k as usize)),
        }
    }
    (Word(letters), hpow)
}

// ---------------------------------------------------------------------------
// NCPoly

/// An element of `Q[ħ]⟨a, b⟩`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, HPoly>,
}

/// Submodules recognised by [`NCPoly::membership`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// `C + Σ_k C⟨A⟩ g_k`: words ending in some `g_k`.
    Hhat0,
    /// Span of basis monomials containing `H` before (or at) some `g_k`, `k ≥ 2`.
    N0,
    /// `𝔫₀ + ħ·Ĥ⁰`.
    N,
    /// `C + Σ_{k≥2} C⟨A⟩ g_k + 𝔫`.
    H0,
    /// Span of the `g`-words.
    GSpan,
    /// Integer span of `g`-words with admissible index.
    ZSpanAdm,
}

impl std::str::FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "Hhat0" => Space::Hhat0,
            "n0" => Space::N0,
            "n" => Space::N,
            "H0" => Space::H0,
            "gspan" => Space::GSpan,
            "Zspan_adm" => Space::ZSpanAdm,
            _ => return Err(Error::InvalidArgument(format!("unknown space `{s}`"))),
        })
    }
}

fn is_n0_monomial(w: &[ALetter]) -> bool {
    if !matches!(w.last(), Some(ALetter::G(_))) {
        return false;
    }
    match w.iter().position(|l| *l == ALetter::H) {
        Some(i) => w[i..].iter().any(|l| matches!(l, ALetter::G(k) if *k >= 2)),
        None => false,
    }
}

fn ends_in_g(w: &[ALetter]) -> bool {
    w.is_empty() || matches!(w.last(), Some(ALetter::G(_)))
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), HPoly::one())
    }

    pub fn constant(c: HPoly) -> Self {
        Self::monomial(Word::empty(), c)
    }

    pub fn monomial(w: Word, c: HPoly) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, &c);
        p
    }

    pub fn letter_a() -> Self {
        Self::monomial(Word(vec![Letter::A]), HPoly::one())
    }

    pub fn letter_b() -> Self {
        Self::monomial(Word(vec![Letter::B]), HPoly::one())
    }

    pub fn hbar() -> Self {
        Self::constant(HPoly::hbar())
    }

    /// `g_k = b a^k`.
    pub fn g(k: u32) -> Self {
        Self::from_aword(&[ALetter::G(k)])
    }

    /// `H = ħb = e₁ − g₁`.
    pub fn h() -> Self {
        Self::from_aword(&[ALetter::H])
    }

    /// `e_k = b(a + ħ)a^{k−1} = g_k + ħ g_{k−1}` (with `ħ g₀ = H`).
    pub fn e(k: u32) -> Self {
        assert!(k >= 1, "e_k needs k >= 1");
        let lower = if k == 1 {
            NCPoly::letter_b()
        } else {
            Self::g(k - 1)
        };
        &Self::g(k) + &lower.scale_h(&HPoly::hbar())
    }

    pub fn g_index(k: &Index) -> Self {
        Self::from_aword(&g_word(k))
    }

    pub fn e_index(k: &Index) -> Self {
        k.0.iter().fold(Self::one(), |acc, &kk| &acc * &Self::e(kk))
    }

    pub fn from_aword(w: &[ALetter]) -> Self {
        let (word, hpow) = expand_aword(w);
        Self::monomial(word, HPoly::monomial(Rational::one(), hpow))
    }

    /// Inverse of [`NCPoly::to_a_basis`].
    pub fn from_a_map(m: &AMap) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in m {
            let (word, hpow) = expand_aword(w);
            p.add_term(word, &c.shift(hpow));
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Word, HPoly> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, HPoly> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> HPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: &HPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NCPoly, c: &HPoly) {
        if c.is_zero() {
            return;
        }
        for (w, k) in &other.terms {
            self.add_term(w.clone(), &(k * c));
        }
    }

    pub fn scale_h(&self, c: &HPoly) -> Self {
        let mut p = NCPoly::zero();
        p.add_scaled(self, c);
        p
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.scale_h(&HPoly::constant(c.clone()))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Constant (empty-word) coefficient.
    pub fn constant_term(&self) -> HPoly {
        self.coeff(&Word::empty())
    }

    /// The specialization `ħ = 0`.
    pub fn at_hbar_zero(&self) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in &self.terms {
            p.add_term(w.clone(), &HPoly::constant(c.constant_term()));
        }
        p
    }

    /// Whether every coefficient is divisible by ħ.
    pub fn hbar_divisible(&self) -> bool {
        self.terms.values().all(|c| c.constant_term().is_zero())
    }

    /// Largest ħ-degree of any coefficient.
    pub fn hbar_degree(&self) -> usize {
        self.terms.values().filter_map(HPoly::degree).max().unwrap_or(0)
    }

    /// `A`-basis decomposition.  Fails when some monomial is not a product of
    /// letters of `A` with the necessary ħ-powers.
    pub fn to_a_basis(&self) -> Result<AMap> {
        let mut out = AMap::new();
        for (word, c) in &self.terms {
            let letters = &word.0;
            if letters.first() == Some(&Letter::A) {
                return Err(Error::NotInSubalgebra(format!(
                    "monomial `{word}` starts with a"
                )));
            }
            let mut aw = Vec::new();
            let mut bare = 0;
            let mut i = 0;
            while i < letters.len() {
                // letters[i] == B
                let mut j = i + 1;
                while j < letters.len() && letters[j] == Letter::A {
                    j += 1;
                }
                let run = (j - i - 1) as u32;
                if run == 0 {
                    bare += 1;
                    aw.push(ALetter::H);
                } else {
                    aw.push(ALetter::G(run));
                }
                i = j;
            }
            let reduced = c.hbar_quotient(bare).ok_or_else(|| {
                Error::NotInSubalgebra(format!(
                    "coefficient {c} of `{word}` is not divisible by hbar^{bare}"
                ))
            })?;
            out.insert(aw, reduced);
        }
        Ok(out)
    }

    pub fn membership(&self, space: Space) -> Result<bool> {
        let m = self.to_a_basis()?;
        let hhat0 = m.keys().all(|w| ends_in_g(w));
        Ok(match space {
            Space::Hhat0 => hhat0,
            Space::N0 => m.keys().all(|w| is_n0_monomial(w)),
            Space::N => {
                hhat0
                    && m.iter()
                        .all(|(w, c)| is_n0_monomial(w) || c.constant_term().is_zero())
            }
            Space::H0 => {
                hhat0
                    && m.iter().all(|(w, c)| {
                        w.is_empty()
                            || matches!(w.last(), Some(ALetter::G(k)) if *k >= 2)
                            || is_n0_monomial(w)
                            || c.constant_term().is_zero()
                    })
            }
            Space::GSpan => m.keys().all(|w| w.iter().all(|l| *l != ALetter::H)),
            Space::ZSpanAdm => m.iter().all(|(w, c)| {
                w.iter().all(|l| *l != ALetter::H)
                    && matches!(w.last(), None | Some(ALetter::G(2..)))
                    && c.as_constant().is_some_and(|r| r.is_integer())
            }),
        })
    }

    /// `A`-weight bookkeeping: (max total weight, max depth) over the `A`-basis.
    pub fn weight_depth_bounds(&self) -> Result<(u32, usize)> {
        let m = self.to_a_basis()?;
        let wt = m.keys().map(|w| aword_weight(w)).max().unwrap_or(0);
        let dep = m.keys().map(Vec::len).max().unwrap_or(0);
        Ok((wt, dep))
    }
}

fn format_coeff_prefix(c: &HPoly, first: bool, is_unit_word: bool) -> String {
    // returns the sign/connector and coefficient text preceding a monomial
    if let Some(r) = c.as_constant() {
        let neg = r.is_negative();
        let mag = r.abs();
        let sign = match (first, neg) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        if mag.is_one() && !is_unit_word {
            sign.to_string()
        } else if is_unit_word {
            format!("{sign}{mag}")
        } else {
            format!("{sign}{mag}*")
        }
    } else {
        let conn = if first { "" } else { " + " };
        if is_unit_word {
            format!("{conn}({c})")
        } else {
            format!("{conn}({c})*")
        }
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        match self.to_a_basis() {
            Ok(m) => {
                for (i, (w, c)) in m.iter().enumerate() {
                    out.push_str(&format_coeff_prefix(c, i == 0, w.is_empty()));
                    if !w.is_empty() {
                        out.push_str(&format_aword(w));
                    }
                }
            }
            Err(_) => {
                for (i, (w, c)) in self.terms.iter().enumerate() {
                    out.push_str(&format_coeff_prefix(c, i == 0, w.is_empty()));
                    if !w.is_empty() {
                        let s: Vec<String> = w.0.iter().map(|l| {
                            if *l == Letter::A { "a".to_string() } else { "b".to_string() }
                        }).collect();
                        out.push_str(&s.join("*"));
                    }
                }
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({self})")
    }
}

impl std::ops::Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut p = self.clone();
        p.add_scaled(rhs, &HPoly::one());
        p
    }
}

impl std::ops::Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut p = self.clone();
        p.add_scaled(rhs, &HPoly::from_int(-1));
        p
    }
}

impl std::ops::Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale_h(&HPoly::from_int(-1))
    }
}

/// Concatenation product.
impl std::ops::Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut p = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                p.add_term(w1.concat(w2), &(c1 * c2));
            }
        }
        p
    }
}

impl std::ops::AddAssign<&NCPoly> for NCPoly {
    fn add_assign(&mut self, rhs: &NCPoly) {
        self.add_scaled(rhs, &HPoly::one());
    }
}

impl std::ops::SubAssign<&NCPoly> for NCPoly {
    fn sub_assign(&mut self, rhs: &NCPoly) {
        self.add_scaled(rhs, &HPoly::from_int(-1));
    }
}

impl std::iter::Sum for NCPoly {
    fn sum<I: Iterator<Item = NCPoly>>(iter: I) -> NCPoly {
        iter.fold(NCPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl From<&AMap> for NCPoly {
    fn from(m: &AMap) -> Self {
        NCPoly::from_a_map(m)
    }
}

/// Rational part helper: an `HPoly` that is the integer `n`.
pub fn hp(n: i64) -> HPoly {
    HPoly::from_int(n)
}

/// Zero-test that tolerates both representations.
pub fn amap_is_zero(m: &AMap) -> bool {
    m.values().all(HPoly::is_zero)
}

/// Adds `c·w` into an `A`-basis map.
pub fn amap_add(m: &mut AMap, w: AWord, c: &HPoly) {
    if c.is_zero() {
        return;
    }
    match m.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::int;

    fn idx(v: &[u32]) -> Index {
        Index(v.to_vec())
    }

    #[test]
    fn index_stats_examples() {
        let s = idx(&[2, 3]).stats();
        assert_eq!((s.weight, s.depth, s.reversed, s.admissible), (5, 2, idx(&[3, 2]), true));
        let s = Index::empty().stats();
        assert_eq!((s.weight, s.depth, s.admissible), (0, 0, true));
        assert!(!idx(&[3, 1]).is_admissible());
        assert_eq!(idx(&[3, 1]).reversed(), idx(&[1, 3]));
    }

    #[test]
    fn hoffman_dual_examples() {
        assert_eq!(idx(&[3, 1, 2, 1]).hoffman_dual(), idx(&[1, 1, 3, 2]));
        assert_eq!(Index::empty().hoffman_dual(), Index::empty());
        for k in 1..6 {
            assert_eq!(idx(&[k]).hoffman_dual(), Index::ones(k as usize));
        }
    }

    #[test]
    fn hoffman_dual_is_involution() {
        for k in Index::all_up_to(10) {
            assert_eq!(k.hoffman_dual().hoffman_dual(), k);
            assert_eq!(k.hoffman_dual().weight(), k.weight());
        }
    }

    #[test]
    fn e_shape_examples() {
        let s = idx(&[1, 3, 1]).e_shape().unwrap();
        assert_eq!(s, EShape { s0: 1, blocks: vec![(1, 1)] });
        assert_eq!(idx(&[1, 1]).e_shape().unwrap(), EShape { s0: 2, blocks: vec![] });
        assert_eq!(idx(&[2]).e_shape().unwrap(), EShape { s0: 0, blocks: vec![(0, 0)] });
    }

    #[test]
    fn e_shape_round_trip() {
        for k in Index::all_up_to(10) {
            assert_eq!(Index::from_e_shape(&k.e_shape().unwrap()), k);
        }
    }

    #[test]
    fn expand_examples() {
        let g2 = NCPoly::g(2);
        assert_eq!(g2.len(), 1);
        assert_eq!(g2.coeff(&Word(vec![Letter::B, Letter::A, Letter::A])), HPoly::one());
        let h = NCPoly::h();
        assert_eq!(h.coeff(&Word(vec![Letter::B])), HPoly::hbar());
        let e2 = NCPoly::e(2);
        assert_eq!(e2.coeff(&Word(vec![Letter::B, Letter::A])), HPoly::hbar());
        assert_eq!(e2.coeff(&Word(vec![Letter::B, Letter::A, Letter::A])), HPoly::one());
        // e_k = b (a + ħ) a^{k-1}
        let direct = &(&NCPoly::letter_b() * &(&NCPoly::letter_a() + &NCPoly::hbar()))
            * &NCPoly::letter_a().pow(2);
        assert_eq!(NCPoly::e(3), direct);
    }

    #[test]
    fn to_a_basis_examples() {
        let m = NCPoly::e(1).to_a_basis().unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[&vec![ALetter::G(1)]], HPoly::one());
        assert_eq!(m[&vec![ALetter::H]], HPoly::one());
        assert!(matches!(
            NCPoly::letter_a().to_a_basis(),
            Err(Error::NotInSubalgebra(_))
        ));
        assert!(NCPoly::letter_b().to_a_basis().is_err());
        let m = NCPoly::g(2).scale_h(&HPoly::hbar()).to_a_basis().unwrap();
        assert_eq!(m[&vec![ALetter::G(2)]], HPoly::hbar());
    }

    #[test]
    fn membership_examples() {
        let hg2 = &NCPoly::h() * &NCPoly::g(2);
        assert!(hg2.membership(Space::N0).unwrap());
        assert!(hg2.membership(Space::N).unwrap());
        let hg1 = &NCPoly::h() * &NCPoly::g(1);
        assert!(!hg1.membership(Space::N).unwrap());
        assert!(NCPoly::g(2).membership(Space::H0).unwrap());
        assert!(!NCPoly::g(1).membership(Space::H0).unwrap());
        assert!(NCPoly::g(1).membership(Space::Hhat0).unwrap());
        assert!(!NCPoly::h().membership(Space::Hhat0).unwrap());
        assert!(NCPoly::g_index(&idx(&[1, 2])).membership(Space::ZSpanAdm).unwrap());
        assert!(!NCPoly::g_index(&idx(&[2, 1])).membership(Space::ZSpanAdm).unwrap());
        assert!(!NCPoly::g(2).scale(&crate::coeffring::rat(1, 2)).membership(Space::ZSpanAdm).unwrap());
        assert!(NCPoly::e(2).membership(Space::GSpan).unwrap());
        assert!(!NCPoly::e(1).membership(Space::GSpan).unwrap());
    }

    #[test]
    fn display_uses_expression_syntax() {
        let p = &(&NCPoly::g_index(&idx(&[1, 2])) - &NCPoly::h().scale(&int(3)))
            + &NCPoly::one();
        assert_eq!(p.to_string(), "1 - 3*H + g[1,2]");
        assert_eq!(NCPoly::e(2).to_string(), "(hbar)*g[1] + g[2]");
        assert_eq!(NCPoly::letter_a().to_string(), "a");
    }
}
