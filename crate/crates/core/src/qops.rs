//! The q-side operations: `∘_ħ`, the harmonic product `∗_ħ`, the shuffle
//! product `sh_ħ`, the anti-involutions `ψ*`, `ψ^sh`, the symmetrizers
//! `w^{S,•}_ħ`, the projection `ι`, and the E-words.
//!
//! Word-level products are computed by dynamic programming over prefix
//! pairs with small integer polynomials in ħ, and only then scaled by the
//! (rational) coefficients of the operands.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::classical::{ClassicalPoly, Mode};
use crate::coeffring::{binomial, factorial, HPoly, Rational};
use crate::error::{Error, Result};
use crate::freealg::{amap_add, ALetter, AMap, Index, Letter, NCPoly, Word};
use crate::linalg;

// ---------------------------------------------------------------------------
// integer polynomials in ħ used inside word-level DPs

type IPoly = Vec<i128>;

fn ip_add_shifted(dst: &mut IPoly, src: &IPoly, shift: usize) {
    if dst.len() < src.len() + shift {
        dst.resize(src.len() + shift, 0);
    }
    for (i, c) in src.iter().enumerate() {
        dst[i + shift] += c;
    }
}

fn ip_to_hpoly(p: &IPoly) -> HPoly {
    HPoly::from_coeffs(p.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
}

type WordTable<K> = HashMap<Vec<K>, IPoly>;

fn append_all<K: Clone + Eq + std::hash::Hash>(
    dst: &mut WordTable<K>,
    src: &WordTable<K>,
    letter: &K,
    shift: usize,
) {
    for (w, c) in src {
        let mut nw = Vec::with_capacity(w.len() + 1);
        nw.extend_from_slice(w);
        nw.push(letter.clone());
        ip_add_shifted(dst.entry(nw).or_default(), c, shift);
    }
}

// ---------------------------------------------------------------------------
// ∘_ħ

/// `u ∘_ħ v` for letters: the resulting letter and the power of ħ.
pub fn circ_letters(u: ALetter, v: ALetter) -> (ALetter, usize) {
    match (u, v) {
        (ALetter::H, ALetter::H) => (ALetter::H, 1),
        (ALetter::H, g @ ALetter::G(_)) | (g @ ALetter::G(_), ALetter::H) => (g, 1),
        (ALetter::G(k), ALetter::G(l)) => (ALetter::G(k + l), 0),
    }
}

/// Bilinear `∘_ħ` on the span of `A`.
pub fn circ(u: &NCPoly, v: &NCPoly) -> Result<NCPoly> {
    let a = u.to_a_basis()?;
    let b = v.to_a_basis()?;
    for w in a.keys().chain(b.keys()) {
        if w.len() != 1 {
            return Err(Error::NotDepthOne(crate::freealg::format_aword(w)));
        }
    }
    let mut out = AMap::new();
    for (x, c1) in &a {
        for (y, c2) in &b {
            let (l, h) = circ_letters(x[0], y[0]);
            amap_add(&mut out, vec![l], &(c1 * c2).shift(h));
        }
    }
    Ok(NCPoly::from_a_map(&out))
}

// ---------------------------------------------------------------------------
// ∗_ħ

/// Quasi-shuffle of two `A`-words.
pub fn qharm_words(u: &[ALetter], v: &[ALetter]) -> WordTable<ALetter> {
    let (n, m) = (u.len(), v.len());
    let mut t: Vec<Vec<WordTable<ALetter>>> = vec![vec![WordTable::new(); m + 1]; n + 1];
    for i in 0..=n {
        t[i][0].insert(u[..i].to_vec(), vec![1]);
    }
    for j in 0..=m {
        t[0][j].insert(v[..j].to_vec(), vec![1]);
    }
    for i in 1..=n {
        for j in 1..=m {
            let mut cell = WordTable::new();
            append_all(&mut cell, &t[i - 1][j], &u[i - 1], 0);
            append_all(&mut cell, &t[i][j - 1], &v[j - 1], 0);
            let (l, h) = circ_letters(u[i - 1], v[j - 1]);
            append_all(&mut cell, &t[i - 1][j - 1], &l, h);
            t[i][j] = cell;
        }
    }
    std::mem::take(&mut t[n][m])
}

pub fn qharm_amap(a: &AMap, b: &AMap) -> AMap {
    let mut out = AMap::new();
    for (w1, c1) in a {
        for (w2, c2) in b {
            let c = c1 * c2;
            for (w, p) in qharm_words(w1, w2) {
                amap_add(&mut out, w, &(&c * &ip_to_hpoly(&p)));
            }
        }
    }
    out
}

/// Harmonic product `∗_ħ` on `C⟨A⟩`.
pub fn qharm(w: &NCPoly, w2: &NCPoly) -> Result<NCPoly> {
    Ok(NCPoly::from_a_map(&qharm_amap(&w.to_a_basis()?, &w2.to_a_basis()?)))
}

// ---------------------------------------------------------------------------
// sh_ħ

/// `u sh_ħ v` for two `(a,b)`-words, recursing on last letters.
pub fn qshuf_words(u: &[Letter], v: &[Letter]) -> WordTable<Letter> {
    let (n, m) = (u.len(), v.len());
    let mut t: Vec<Vec<WordTable<Letter>>> = vec![vec![WordTable::new(); m + 1]; n + 1];
    for i in 0..=n {
        t[i][0].insert(u[..i].to_vec(), vec![1]);
    }
    for j in 0..=m {
        t[0][j].insert(v[..j].to_vec(), vec![1]);
    }
    for i in 1..=n {
        for j in 1..=m {
            let mut cell = WordTable::new();
            if u[i - 1] == Letter::B {
                append_all(&mut cell, &t[i - 1][j], &Letter::B, 0);
            } else if v[j - 1] == Letter::B {
                append_all(&mut cell, &t[i][j - 1], &Letter::B, 0);
            } else {
                append_all(&mut cell, &t[i][j - 1], &Letter::A, 0);
                append_all(&mut cell, &t[i - 1][j], &Letter::A, 0);
                append_all(&mut cell, &t[i - 1][j - 1], &Letter::A, 1);
            }
            t[i][j] = cell;
        }
    }
    std::mem::take(&mut t[n][m])
}

type ShufEntry = Arc<Vec<(Vec<Letter>, HPoly)>>;

/// Word-pair shuffles are recomputed constantly by the series code, so
/// converted tables are kept (the key is ordered: `sh_ħ` is commutative).
fn qshuf_words_cached(u: &[Letter], v: &[Letter]) -> ShufEntry {
    static CACHE: OnceLock<Mutex<HashMap<(Vec<Letter>, Vec<Letter>), ShufEntry>>> = OnceLock::new();
    let (u, v) = if u <= v { (u, v) } else { (v, u) };
    let key = (u.to_vec(), v.to_vec());
    let cache = CACHE.get_or_init(Default::default);
    if let Some(e) = cache.lock().unwrap().get(&key) {
        return e.clone();
    }
    let e: ShufEntry =
        Arc::new(qshuf_words(u, v).iter().map(|(w, p)| (w.clone(), ip_to_hpoly(p))).collect());
    let mut guard = cache.lock().unwrap();
    if guard.len() > 1 << 18 {
        guard.clear();
    }
    guard.insert(key, e.clone());
    e
}

/// Shuffle product `sh_ħ` on `ℌ`.
pub fn qshuf(w: &NCPoly, w2: &NCPoly) -> NCPoly {
    let mut acc: HashMap<Vec<Letter>, HPoly> = HashMap::new();
    for (u, c1) in w.terms() {
        for (v, c2) in w2.terms() {
            let c = c1 * c2;
            let one = c.is_one();
            for (word, p) in qshuf_words_cached(&u.0, &v.0).iter() {
                let slot = acc.entry(word.clone()).or_default();
                if one {
                    *slot += p;
                } else {
                    *slot += &(&c * p);
                }
            }
        }
    }
    let mut out = NCPoly::zero();
    for (word, c) in acc {
        out.add_term(Word(word), &c);
    }
    out
}

pub fn qproduct(mode: Mode, w: &NCPoly, w2: &NCPoly) -> Result<NCPoly> {
    match mode {
        Mode::Star => qharm(w, w2),
        Mode::Sh => Ok(qshuf(w, w2)),
    }
}

/// `u^{sh_ħ n}` with `u^{sh 0} = 1`.
pub fn qshuf_pow(u: &NCPoly, n: u32) -> NCPoly {
    (0..n).fold(NCPoly::one(), |acc, _| qshuf(u, &acc))
}

// ---------------------------------------------------------------------------
// ψ*, ψ^sh

/// Image of a single letter under `ψ•`, as an `A`-basis map.
pub fn psi_letter(l: ALetter, mode: Mode) -> AMap {
    let mut out = AMap::new();
    match (l, mode) {
        (ALetter::H, _) => {
            out.insert(vec![ALetter::H], HPoly::one());
        }
        (ALetter::G(k), Mode::Star) => {
            out.insert(vec![l], HPoly::from_int(if k % 2 == 0 { 1 } else { -1 }));
        }
        (ALetter::G(k), Mode::Sh) => {
            // b(−a−ħ)^k = (−1)^k [ Σ_{j≥1} C(k,j) ħ^{k−j} g_j + ħ^{k−1} H ]
            let sign = if k % 2 == 0 { 1 } else { -1 };
            for j in 1..=k {
                let c = Rational::from_integer(binomial(k as u64, j as u64) * sign);
                out.insert(vec![ALetter::G(j)], HPoly::monomial(c, (k - j) as usize));
            }
            out.insert(
                vec![ALetter::H],
                HPoly::monomial(Rational::from_integer(BigInt::from(sign)), (k - 1) as usize),
            );
        }
    }
    out
}

fn concat_amap(a: &AMap, b: &AMap) -> AMap {
    let mut out = AMap::new();
    for (w1, c1) in a {
        for (w2, c2) in b {
            let mut w = w1.clone();
            w.extend_from_slice(w2);
            amap_add(&mut out, w, &(c1 * c2));
        }
    }
    out
}

/// `ψ•` of a single `A`-word (anti-homomorphic).
pub fn psi_aword(w: &[ALetter], mode: Mode) -> AMap {
    let mut out = AMap::from([(Vec::new(), HPoly::one())]);
    for &l in w.iter().rev() {
        out = concat_amap(&out, &psi_letter(l, mode));
    }
    out
}

pub fn psi_amap(a: &AMap, mode: Mode) -> AMap {
    let mut out = AMap::new();
    for (w, c) in a {
        for (v, d) in psi_aword(w, mode) {
            amap_add(&mut out, v, &(c * &d));
        }
    }
    out
}

pub fn psi_q(w: &NCPoly, mode: Mode) -> Result<NCPoly> {
    Ok(NCPoly::from_a_map(&psi_amap(&w.to_a_basis()?, mode)))
}

pub fn psi_star(w: &NCPoly) -> Result<NCPoly> {
    psi_q(w, Mode::Star)
}

pub fn psi_sh(w: &NCPoly) -> Result<NCPoly> {
    psi_q(w, Mode::Sh)
}

// ---------------------------------------------------------------------------
// symmetrizers

/// `w^{S,•}_ħ` on a single `A`-word, as an `A`-basis map.
pub fn ws_aword(w: &[ALetter], mode: Mode) -> AMap {
    let mut out = AMap::new();
    for i in 0..=w.len() {
        let head = AMap::from([(w[..i].to_vec(), HPoly::one())]);
        let tail = psi_aword(&w[i..], mode);
        let prod = match mode {
            Mode::Star => qharm_amap(&head, &tail),
            Mode::Sh => NCPoly::from_a_map(&head)
                .to_a_basis()
                .map(|h| {
                    qshuf(&NCPoly::from_a_map(&h), &NCPoly::from_a_map(&tail))
                        .to_a_basis()
                        .expect("C<A> is closed under the shuffle product")
                })
                .expect("A-words expand into C<A>"),
        };
        for (v, c) in prod {
            amap_add(&mut out, v, &c);
        }
    }
    out
}

/// `w^{S,•}_ħ(w) = Σ_i u₁⋯u_i •_ħ ψ•(u_{i+1}⋯u_r)`, extended linearly.
pub fn ws_q(w: &NCPoly, mode: Mode) -> Result<NCPoly> {
    let mut out = AMap::new();
    for (aw, c) in w.to_a_basis()? {
        for (v, d) in ws_aword(&aw, mode) {
            amap_add(&mut out, v, &(&c * &d));
        }
    }
    Ok(NCPoly::from_a_map(&out))
}

// ---------------------------------------------------------------------------
// ι

/// `ħ ↦ 0`, `H ↦ 0`, `g_k ↦ z_k`.
pub fn iota(w: &NCPoly) -> Result<ClassicalPoly> {
    let mut out = ClassicalPoly::zero();
    for (aw, c) in w.to_a_basis()? {
        if aw.contains(&ALetter::H) {
            continue;
        }
        let k = Index(
            aw.iter()
                .map(|l| match l {
                    ALetter::G(k) => *k,
                    ALetter::H => unreachable!(),
                })
                .collect(),
        );
        out.add_term(crate::classical::z_word(&k), &c.constant_term());
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// E-words

fn e_ones_cache() -> &'static Mutex<HashMap<u32, NCPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, NCPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `E_{1^m} = (1/(m+1)!) Σ_j g₁^{sh j} sh e₁^{sh(m−j)}`.
pub fn e_ones(m: u32) -> NCPoly {
    if let Some(p) = e_ones_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let g1 = NCPoly::g(1);
    let e1 = NCPoly::e(1);
    let gp: Vec<NCPoly> = (0..=m).map(|j| qshuf_pow(&g1, j)).collect();
    let ep: Vec<NCPoly> = (0..=m).map(|j| qshuf_pow(&e1, j)).collect();
    let mut sum = NCPoly::zero();
    for j in 0..=m {
        sum += &qshuf(&gp[j as usize], &ep[(m - j) as usize]);
    }
    let p = sum.scale(&Rational::new(BigInt::one(), factorial(m as u64 + 1)));
    e_ones_cache().lock().unwrap().insert(m, p.clone());
    p
}

/// `E_k = E_{1^{s₀}} e_{t₁+2} E_{1^{s₁}} ⋯`; `E_∅ = 1`.
pub fn e_index(k: &Index) -> NCPoly {
    let Some(shape) = k.e_shape() else {
        return NCPoly::one();
    };
    let mut p = e_ones(shape.s0);
    for (t, s) in shape.blocks {
        p = &(&p * &NCPoly::e(t + 2)) * &e_ones(s);
    }
    p
}

/// Result of expanding an element in the E-basis.
#[derive(Clone, Debug, PartialEq)]
pub struct EBasisDecomp {
    pub coeffs: BTreeMap<Index, HPoly>,
    pub residual: NCPoly,
}

impl EBasisDecomp {
    pub fn is_exact(&self) -> bool {
        self.residual.is_zero()
    }

    /// The `ħ = 0` parts of the coefficients (zero entries dropped).
    pub fn at_hbar_zero(&self) -> BTreeMap<Index, Rational> {
        self.coeffs
            .iter()
            .map(|(k, c)| (k.clone(), c.constant_term()))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

/// Default candidate bounds read off the grading of `p`: the largest
/// `#a + ħ-degree` and the largest `#b` of any term.
pub fn default_e_bounds(p: &NCPoly) -> (u32, usize) {
    let wt = p
        .terms()
        .iter()
        .map(|(w, c)| w.count_a() + c.degree().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let dep = p.terms().keys().map(Word::count_b).max().unwrap_or(0);
    (wt as u32, dep)
}

/// Expresses `p` in `{E_m : wt(m) ≤ wt_max, dep(m) ≤ dep_max}` over `Q[ħ]`,
/// solving one rational linear system per ħ-degree.  Anything that cannot
/// be matched is returned as the residual.
pub fn decompose_e(p: &NCPoly, wt_max: Option<u32>, dep_max: Option<usize>) -> Result<EBasisDecomp> {
    p.to_a_basis()?;
    let (dw, dd) = default_e_bounds(p);
    let wt_max = wt_max.unwrap_or(dw);
    let dep_max = dep_max.unwrap_or(dd);
    let depths: std::collections::BTreeSet<usize> = p.terms().keys().map(Word::count_b).collect();

    let mut cands: Vec<Index> = vec![];
    if depths.contains(&0) {
        cands.push(Index::empty());
    }
    cands.extend(
        Index::all_up_to(wt_max)
            .into_iter()
            .filter(|k| k.depth() <= dep_max && depths.contains(&k.depth())),
    );
    let basis: Vec<NCPoly> = cands.iter().map(e_index).collect();

    // rows: every word occurring at ħ⁰ in some candidate
    let mut rows: BTreeMap<Word, usize> = BTreeMap::new();
    for e in &basis {
        for (w, c) in e.terms() {
            if !c.constant_term().is_zero() {
                let n = rows.len();
                rows.entry(w.clone()).or_insert(n);
            }
        }
    }
    let mut mat = vec![vec![Rational::zero(); basis.len()]; rows.len()];
    for (j, e) in basis.iter().enumerate() {
        for (w, c) in e.terms() {
            if let Some(&i) = rows.get(w) {
                mat[i][j] = c.constant_term();
            }
        }
    }

    let mut coeffs: BTreeMap<Index, HPoly> = BTreeMap::new();
    let mut residual = p.clone();
    let max_deg = wt_max as usize;
    for n in 0..=max_deg {
        if residual.is_zero() {
            break;
        }
        let mut rhs = vec![Rational::zero(); rows.len()];
        let mut outside = false;
        for (w, c) in residual.terms() {
            let x = c.coeff(n);
            if x.is_zero() {
                continue;
            }
            match rows.get(w) {
                Some(&i) => rhs[i] = x,
                None => outside = true,
            }
        }
        if outside {
            break;
        }
        if rhs.iter().all(Zero::is_zero) {
            continue;
        }
        let Some(x) = linalg::solve(&mat, &rhs) else {
            break;
        };
        for (j, xj) in x.into_iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            let c = HPoly::monomial(xj, n);
            residual.add_scaled(&basis[j], &(-&c));
            *coeffs.entry(cands[j].clone()).or_default() += &c;
        }
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(EBasisDecomp { coeffs, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{int, rat};
    use crate::freealg::Space;

    fn g(v: &[u32]) -> NCPoly {
        NCPoly::g_index(&Index(v.to_vec()))
    }
    fn h() -> NCPoly {
        NCPoly::h()
    }

    #[test]
    fn circ_examples() {
        assert_eq!(circ(&g(&[2]), &g(&[3])).unwrap(), g(&[5]));
        assert_eq!(circ(&h(), &g(&[4])).unwrap(), g(&[4]).scale_h(&HPoly::hbar()));
        assert_eq!(circ(&h(), &h()).unwrap(), h().scale_h(&HPoly::hbar()));
        assert!(matches!(circ(&g(&[1, 1]), &h()), Err(Error::NotDepthOne(_))));
    }

    #[test]
    fn qharm_examples() {
        let lhs = qharm(&g(&[1]), &g(&[1])).unwrap();
        assert_eq!(lhs, &g(&[1, 1]).scale(&int(2)) + &g(&[2]));
        assert_eq!(qharm(&NCPoly::one(), &g(&[2, 1])).unwrap(), g(&[2, 1]));
        for k in 3..7 {
            for m in 1..k {
                let lhs = qharm(&g(&[m]), &g(&[k - m])).unwrap();
                let rhs = &(&g(&[m, k - m]) + &g(&[k - m, m])) + &g(&[k]);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn qshuf_examples() {
        let lhs = qshuf(&g(&[1]), &g(&[1]));
        assert_eq!(lhs, &g(&[1, 1]).scale(&int(2)) + &(&h() * &g(&[1])));
        let e1 = e_index(&Index(vec![1]));
        let lhs = qshuf(&e1, &e1);
        let (g1, ee1) = (g(&[1]), NCPoly::e(1));
        let rhs = (&(&(&(&g1 * &g1) + &(&g1 * &ee1).scale(&int(3))) + &(&ee1 * &g1).scale(&int(3)))
            + &(&ee1 * &ee1))
            .scale(&rat(1, 4));
        assert_eq!(lhs, rhs);
        assert_eq!(qshuf(&h(), &g(&[2])), &g(&[2]) * &h());
    }

    #[test]
    fn psi_examples() {
        let k = Index(vec![1, 2, 4]);
        assert_eq!(psi_star(&g(&k.0)).unwrap(), g(&k.reversed().0).scale(&int(-1)));
        assert_eq!(psi_sh(&g(&[1])).unwrap(), NCPoly::e(1).scale(&int(-1)));
        let e3 = NCPoly::e(3);
        let expect = (&e3 + &NCPoly::e(2).scale_h(&HPoly::hbar())).scale(&int(-1));
        assert_eq!(psi_sh(&e3).unwrap(), expect);
        assert_eq!(psi_sh(&h()).unwrap(), h());
    }

    #[test]
    fn ws_examples() {
        let e1 = NCPoly::e(1);
        let g1 = g(&[1]);
        assert_eq!(ws_q(&e1, Mode::Sh).unwrap(), h());
        assert_eq!(ws_q(&g1, Mode::Sh).unwrap(), h().scale(&int(-1)));
        let w = &(&e1 * &g1) + &(&g1 * &e1);
        assert_eq!(ws_q(&w, Mode::Sh).unwrap(), (&h() * &h()).scale(&int(-1)));
        for (a, b) in [(1, 1), (1, 3), (3, 5), (5, 1)] {
            assert_eq!(ws_q(&g(&[a, b]), Mode::Star).unwrap(), g(&[a + b]).scale(&int(-1)));
        }
    }

    #[test]
    fn iota_examples() {
        let k = Index(vec![2, 1, 3]);
        assert_eq!(iota(&g(&k.0)).unwrap(), ClassicalPoly::z(&k));
        assert!(iota(&h()).unwrap().is_zero());
        for m in 0..4 {
            assert_eq!(iota(&e_ones(m)).unwrap(), ClassicalPoly::z(&Index::ones(m as usize)));
        }
        let k = Index(vec![1, 3]);
        assert_eq!(iota(&e_index(&k)).unwrap(), ClassicalPoly::z(&k));
    }

    #[test]
    fn e_word_examples() {
        let (g1, e1) = (g(&[1]), NCPoly::e(1));
        assert_eq!(e_ones(0), NCPoly::one());
        assert_eq!(e_ones(1), (&e1 + &g1).scale(&rat(1, 2)));
        let six = &(&(&(&e1 * &e1) + &(&e1 * &g1).scale(&int(2))) + &(&g1 * &e1).scale(&int(2)))
            + &(&g1 * &g1);
        assert_eq!(e_ones(2), six.scale(&rat(1, 6)));
        let k = Index(vec![1, 3, 1]);
        assert_eq!(e_index(&k), &(&e_ones(1) * &NCPoly::e(3)) * &e_ones(1));
    }

    #[test]
    fn decompose_examples() {
        let e1 = e_index(&Index(vec![1]));
        let d = decompose_e(&qshuf(&e1, &e1), None, None).unwrap();
        assert!(!d.is_exact());
        let d = decompose_e(&NCPoly::e(2), None, None).unwrap();
        assert!(d.is_exact());
        assert_eq!(d.coeffs, BTreeMap::from([(Index(vec![2]), HPoly::one())]));
        let e2 = e_index(&Index(vec![2]));
        let d = decompose_e(&qshuf(&e2, &e2), None, None).unwrap();
        assert!(d.is_exact());
        assert_eq!(
            d.at_hbar_zero(),
            BTreeMap::from([(Index(vec![1, 3]), int(4)), (Index(vec![2, 2]), int(2))])
        );
    }

    #[test]
    fn ws_sh_of_e_ones_vanishes() {
        for m in 1..=3 {
            assert!(ws_q(&e_ones(m), Mode::Sh).unwrap().is_zero(), "m={m}");
        }
        assert!(ws_q(&e_index(&Index(vec![2, 1])), Mode::Sh).unwrap().membership(Space::H0).unwrap());
    }
}
