//! Filtrations of monoid semialgebras over B, growth sequences, Hilbert
//! series, GK dimension estimates, and the two-element Ore witness search.
//!
//! An element of `B[X]` is a finite set of words. Over B a finite module is a
//! join semilattice, so the relative rank `[L : K]` is the number of
//! join-irreducibles of `L` outside `K`, which is what the filtration ranks
//! below count.

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairs::Pair;
use crate::poly::{enumerate_polynomials, format_polynomial, poly_eval, Polynomial};
use crate::report::{Verdict, SAMPLE_LIMIT};

/// A monoid with an absorbing zero, given by a partial product.
pub trait WordMonoid: Sync {
    type Word: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Word;
    /// `None` is the zero of the contracted semialgebra.
    fn mul(&self, a: &Self::Word, b: &Self::Word) -> Option<Self::Word>;
    fn label(&self, w: &Self::Word) -> String;
}

fn letter(i: usize, count: usize) -> String {
    if count <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// Words over `letters` letters.
#[derive(Debug, Clone, Copy)]
pub struct FreeMonoid {
    pub letters: usize,
}

impl FreeMonoid {
    pub fn letter(&self, i: usize) -> Vec<u8> {
        vec![i as u8]
    }
}

impl WordMonoid for FreeMonoid {
    type Word = Vec<u8>;

    fn identity(&self) -> Vec<u8> {
        Vec::new()
    }
    fn mul(&self, a: &Vec<u8>, b: &Vec<u8>) -> Option<Vec<u8>> {
        Some(a.iter().chain(b).copied().collect())
    }
    fn label(&self, w: &Vec<u8>) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&i| letter(i as usize, self.letters)).collect()
    }
}

/// Monomials in `vars` commuting variables, as exponent vectors.
#[derive(Debug, Clone, Copy)]
pub struct FreeCommutativeMonoid {
    pub vars: usize,
}

impl FreeCommutativeMonoid {
    pub fn variable(&self, i: usize) -> Vec<u32> {
        let mut e = vec![0; self.vars];
        e[i] = 1;
        e
    }
}

impl WordMonoid for FreeCommutativeMonoid {
    type Word = Vec<u32>;

    fn identity(&self) -> Vec<u32> {
        vec![0; self.vars]
    }
    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Option<Vec<u32>> {
        Some(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
    fn label(&self, w: &Vec<u32>) -> String {
        let parts: Vec<String> = w
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| match e {
                1 => letter(i, self.vars),
                _ => format!("{}^{e}", letter(i, self.vars)),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MatrixWord {
    Identity,
    Unit(usize, usize),
}

/// Matrix units `e_ij` of size `n` with `e_ij e_kl = e_il` when `j = k` and
/// zero otherwise. `B[X]` is then the matrix semiring `M_n(B)`, with the
/// identity matrix the sum of the diagonal units.
#[derive(Debug, Clone, Copy)]
pub struct MatrixUnits {
    pub n: usize,
}

impl MatrixUnits {
    pub fn units(&self) -> Vec<MatrixWord> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| MatrixWord::Unit(i, j)))
            .collect()
    }

    /// The identity matrix as a vector of units.
    pub fn identity_vector(&self) -> BTreeSet<MatrixWord> {
        (0..self.n).map(|i| MatrixWord::Unit(i, i)).collect()
    }
}

impl WordMonoid for MatrixUnits {
    type Word = MatrixWord;

    fn identity(&self) -> MatrixWord {
        MatrixWord::Identity
    }
    fn mul(&self, a: &MatrixWord, b: &MatrixWord) -> Option<MatrixWord> {
        match (a, b) {
            (MatrixWord::Identity, x) | (x, MatrixWord::Identity) => Some(*x),
            (MatrixWord::Unit(i, j), MatrixWord::Unit(k, l)) => (j == k).then_some(MatrixWord::Unit(*i, *l)),
        }
    }
    fn label(&self, w: &MatrixWord) -> String {
        match w {
            MatrixWord::Identity => "1".into(),
            MatrixWord::Unit(i, j) => format!("e{}{}", i + 1, j + 1),
        }
    }
}

/// Direct product; `B[X x Y]` is `B[X]` tensor `B[Y]`.
#[derive(Debug, Clone, Copy)]
pub struct ProductMonoid<A, B>(pub A, pub B);

impl<A: WordMonoid, B: WordMonoid> WordMonoid for ProductMonoid<A, B> {
    type Word = (A::Word, B::Word);

    fn identity(&self) -> Self::Word {
        (self.0.identity(), self.1.identity())
    }
    fn mul(&self, a: &Self::Word, b: &Self::Word) -> Option<Self::Word> {
        Some((self.0.mul(&a.0, &b.0)?, self.1.mul(&a.1, &b.1)?))
    }
    fn label(&self, w: &Self::Word) -> String {
        match (self.0.label(&w.0).as_str(), self.1.label(&w.1).as_str()) {
            ("1", r) => r.to_string(),
            (l, "1") => l.to_string(),
            (l, r) => format!("{l}*{r}"),
        }
    }
}

/// An element of `B[X]`.
pub type Vector<W> = BTreeSet<W>;

pub fn singleton<W: Ord>(w: W) -> Vector<W> {
    BTreeSet::from([w])
}

pub fn vector_mul<M: WordMonoid>(m: &M, x: &Vector<M::Word>, y: &Vector<M::Word>) -> Vector<M::Word> {
    x.iter()
        .flat_map(|a| y.iter().filter_map(move |b| m.mul(a, b)))
        .collect()
}

/// Generators of the extension and of its quasi-zero part.
#[derive(Debug, Clone)]
pub struct GrowthSpec<W: Ord> {
    pub generators: Vec<Vector<W>>,
    /// Indices into `generators` of the ones spanning the quasi-zero part.
    pub quasi_zero: Vec<usize>,
    /// Start the filtration at `B 1` instead of zero.
    pub unital: bool,
}

impl<W: Ord + Clone> GrowthSpec<W> {
    pub fn new(generators: Vec<Vector<W>>) -> Self {
        GrowthSpec {
            generators,
            quasi_zero: Vec::new(),
            unital: false,
        }
    }

    pub fn unital(mut self) -> Self {
        self.unital = true;
        self
    }

    pub fn with_quasi_zero(mut self, quasi_zero: Vec<usize>) -> Self {
        self.quasi_zero = quasi_zero;
        self
    }
}

/// Cap on spanning vectors kept per filtration level.
pub const GROWTH_VECTOR_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthProfile {
    pub kmax: usize,
    /// `d[k-1]` is the rank of `W_k` over `W_{k-1} + W0_k`.
    pub d: Vec<usize>,
    /// `cumulative[k-1]` is the rank of `W_k` over `W0_k`.
    pub cumulative: Vec<usize>,
    /// Distinct words supporting `W_k`.
    pub support: Vec<usize>,
    /// Set when a level outgrew [`GROWTH_VECTOR_LIMIT`]; the sequences then
    /// stop early.
    pub truncated: bool,
}

/// Join-irreducible members of the span of `gens` (union-closed family).
fn join_irreducibles<W: Ord + Clone + Sync + Send>(gens: &BTreeSet<Vector<W>>) -> Vec<&Vector<W>> {
    let list: Vec<&Vector<W>> = gens.iter().filter(|g| !g.is_empty()).collect();
    list.par_iter()
        .filter(|g| {
            let below: BTreeSet<&W> = list
                .iter()
                .filter(|h| h.len() < g.len() && h.is_subset(g))
                .flat_map(|h| h.iter())
                .collect();
            below.len() != g.len()
        })
        .copied()
        .collect()
}

fn in_span<W: Ord>(x: &Vector<W>, gens: &BTreeSet<Vector<W>>) -> bool {
    let covered: BTreeSet<&W> = gens
        .iter()
        .filter(|k| k.is_subset(x))
        .flat_map(|k| k.iter())
        .collect();
    covered.len() == x.len()
}

/// `[span(big) : span(small)]` over B, assuming `span(small)` lies inside
/// `span(big)`.
pub fn boolean_relative_rank<W: Ord + Clone + Sync + Send>(
    big: &BTreeSet<Vector<W>>,
    small: &BTreeSet<Vector<W>>,
) -> usize {
    join_irreducibles(big).into_iter().filter(|j| !in_span(j, small)).count()
}

/// Spanning vectors of `sum_{i<=k} V^i` for `k = 1..=kmax`, each level
/// cumulative. Stops early past the vector limit.
fn filtration<M: WordMonoid>(
    m: &M,
    gens: &[Vector<M::Word>],
    unital: bool,
    kmax: usize,
) -> (Vec<BTreeSet<Vector<M::Word>>>, bool) {
    let mut levels = Vec::with_capacity(kmax);
    let mut acc: BTreeSet<Vector<M::Word>> = BTreeSet::new();
    if unital {
        acc.insert(singleton(m.identity()));
    }
    let gens: Vec<&Vector<M::Word>> = gens.iter().filter(|g| !g.is_empty()).collect();
    let mut layer: BTreeSet<Vector<M::Word>> = BTreeSet::new();
    for k in 1..=kmax {
        layer = if k == 1 {
            gens.iter().map(|g| (*g).clone()).collect()
        } else {
            layer
                .par_iter()
                .flat_map_iter(|p| gens.iter().map(move |g| vector_mul(m, p, g)))
                .filter(|v| !v.is_empty())
                .collect::<Vec<_>>()
                .into_iter()
                .collect()
        };
        acc.extend(layer.iter().cloned());
        if acc.len() > GROWTH_VECTOR_LIMIT {
            return (levels, true);
        }
        levels.push(acc.clone());
    }
    (levels, false)
}

/// Ranks of the filtration `W_k = sum_{i<=k} V^i` of `B[X]`, graded against
/// `W_{k-1} + W0_k` and cumulative against `W0_k`.
pub fn growth_sequence<M: WordMonoid>(m: &M, spec: &GrowthSpec<M::Word>, kmax: usize) -> Result<GrowthProfile> {
    if let Some(&bad) = spec.quasi_zero.iter().find(|&&i| i >= spec.generators.len()) {
        return Err(Error::Config(format!("quasi-zero generator {bad} out of range")));
    }
    let (w, truncated) = filtration(m, &spec.generators, spec.unital, kmax);
    let qz: Vec<Vector<M::Word>> = spec.quasi_zero.iter().map(|&i| spec.generators[i].clone()).collect();
    let (w0, _) = filtration(m, &qz, false, w.len());
    let mut start = BTreeSet::new();
    if spec.unital {
        start.insert(singleton(m.identity()));
    }
    let mut d = Vec::with_capacity(w.len());
    let mut cumulative = Vec::with_capacity(w.len());
    let mut support = Vec::with_capacity(w.len());
    for (k, wk) in w.iter().enumerate() {
        let prev = if k == 0 { &start } else { &w[k - 1] };
        let below: BTreeSet<Vector<M::Word>> = prev.iter().chain(w0[k].iter()).cloned().collect();
        d.push(boolean_relative_rank(wk, &below));
        cumulative.push(boolean_relative_rank(wk, &w0[k]));
        support.push(wk.iter().flatten().collect::<BTreeSet<_>>().len());
    }
    Ok(GrowthProfile {
        kmax,
        d,
        cumulative,
        support,
        truncated,
    })
}

/// Free semialgebra on `letters` letters, generated by the letters.
pub fn free_profile(letters: usize, kmax: usize) -> Result<GrowthProfile> {
    let m = FreeMonoid { letters };
    let gens = (0..letters).map(|i| singleton(m.letter(i))).collect();
    growth_sequence(&m, &GrowthSpec::new(gens), kmax)
}

/// Polynomial semialgebra over B in `vars` variables, generated by the
/// variables.
pub fn polynomial_profile(vars: usize, kmax: usize, unital: bool) -> Result<GrowthProfile> {
    let m = FreeCommutativeMonoid { vars };
    let gens = (0..vars).map(|i| singleton(m.variable(i))).collect();
    let mut spec = GrowthSpec::new(gens);
    spec.unital = unital;
    growth_sequence(&m, &spec, kmax)
}

/// `M_n(B)` over its scalars: generators are the identity (spanning the
/// quasi-zero part) and the matrix units.
pub fn matrix_profile(n: usize, kmax: usize) -> Result<GrowthProfile> {
    let m = MatrixUnits { n };
    let mut gens = vec![m.identity_vector()];
    gens.extend(m.units().into_iter().map(singleton));
    growth_sequence(&m, &GrowthSpec::new(gens).with_quasi_zero(vec![0]), kmax)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    /// Coefficient of `t^k` at index `k - 1`.
    pub coefficients: Vec<usize>,
    pub truncated: bool,
}

pub fn hilbert_series(profile: &GrowthProfile, kmax: usize) -> HilbertSeries {
    let take = kmax.min(profile.d.len());
    HilbertSeries {
        coefficients: profile.d[..take].to_vec(),
        truncated: profile.truncated || take < kmax,
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients of `t^1 .. t^kmax` in `1 / (1 - t)^vars`.
pub fn polynomial_closed_form(vars: usize, kmax: usize) -> Vec<usize> {
    (1..=kmax as u64)
        .map(|k| binomial(k + vars as u64 - 1, vars as u64 - 1) as usize)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GkEstimate {
    /// Least-squares slope of `ln cumulative` against `ln k`.
    pub estimate: f64,
    /// The log-linear model (`ln cumulative` against `k`) fits better with
    /// a positive slope, so growth looks exponential and the dimension
    /// infinite.
    pub divergent: bool,
    /// Levels used for the fit.
    pub from: usize,
    pub to: usize,
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let residual: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - my - slope * (x - mx)).powi(2))
        .sum();
    (slope, residual)
}

/// Finite-level estimate of the GK dimension from the top half of the
/// cumulative ranks.
pub fn gk_dimension(profile: &GrowthProfile) -> Result<GkEstimate> {
    let levels = profile.cumulative.len();
    if levels < 4 {
        return Err(Error::Precondition(format!(
            "GK estimate needs at least 4 levels, profile has {levels}"
        )));
    }
    let from = levels / 2 + 1;
    let ks: Vec<usize> = (from..=levels).collect();
    let ys: Vec<f64> = ks
        .iter()
        .map(|&k| (profile.cumulative[k - 1].max(1) as f64).ln())
        .collect();
    let log_k: Vec<f64> = ks.iter().map(|&k| (k as f64).ln()).collect();
    let lin_k: Vec<f64> = ks.iter().map(|&k| k as f64).collect();
    let (estimate, power_residual) = least_squares(&log_k, &ys);
    let (rate, exp_residual) = least_squares(&lin_k, &ys);
    let divergent = rate > 1e-9 && exp_residual < power_residual;
    Ok(GkEstimate {
        estimate,
        divergent,
        from,
        to: levels,
    })
}

/// Smallest `m1, m2 <= bound` with `d2[k] <= m1 d1[m2 k]` and
/// `d1[k] <= m2 d2[m1 k]` wherever both sides are computed.
pub fn growth_equivalence(d1: &[usize], d2: &[usize], bound: usize) -> Option<(usize, usize)> {
    let dominated = |a: &[usize], b: &[usize], c: usize, stretch: usize| {
        (1..=a.len())
            .filter(|k| k * stretch <= b.len())
            .all(|k| a[k - 1] <= c * b[k * stretch - 1])
    };
    let mut candidates: Vec<(usize, usize)> = (1..=bound)
        .flat_map(|m1| (1..=bound).map(move |m2| (m1, m2)))
        .collect();
    candidates.sort_by_key(|&(m1, m2)| (m1.max(m2), m1 + m2, m1));
    candidates
        .into_iter()
        .find(|&(m1, m2)| dominated(d2, d1, m1, m2) && dominated(d1, d2, m2, m1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OreWitness {
    pub verdict: Verdict,
    pub b1: Option<String>,
    pub b2: Option<String>,
    /// `g` and `h` with `f = g x + h y`.
    pub g: Option<String>,
    pub h: Option<String>,
    pub degree: Option<u32>,
    pub degree_bound: u32,
    /// Window of the regularity check when the carrier is sampled.
    pub window: Option<i64>,
}

/// First tangible or zero element whose product with a tangible lands in A0
/// without itself being in A0.
pub fn semidomain_violation<P: Pair>(p: &P) -> Option<(String, String)> {
    let dom = p.domain();
    let tang = p.tangible_domain();
    tang.elements.iter().find_map(|t| {
        dom.elements
            .iter()
            .find(|b| !p.in_a0(b) && (p.in_a0(&p.mul(t, b)) || p.in_a0(&p.mul(b, t))))
            .map(|b| (p.label(t), p.label(b)))
    })
}

/// Searches `f = g x + h y` with coefficients in `coeffs` (plus zero) by
/// increasing total degree for `f(a1, a2)` in A0 while `g(a1, a2)` and
/// `h(a1, a2)` stay outside it.
pub fn ore_witness<P: Pair>(
    p: &P,
    a1: &P::Elem,
    a2: &P::Elem,
    degree_bound: u32,
    coeffs: &[P::Elem],
) -> Result<OreWitness> {
    for a in [a1, a2] {
        if !p.is_tangible(a) {
            return Err(Error::Precondition(format!("{} is not tangible", p.label(a))));
        }
    }
    if let Some((t, b)) = semidomain_violation(p) {
        return Err(Error::Precondition(format!(
            "not a semidomain pair: {t} times {b} is quasi-zero"
        )));
    }
    if let Some(c) = coeffs.iter().find(|c| !p.is_tangible(c) && **c != p.zero()) {
        return Err(Error::Precondition(format!("coefficient {} is not tangible", p.label(c))));
    }
    let point = [a1.clone(), a2.clone()];
    for degree in 1..=degree_bound {
        let polys = enumerate_polynomials(p, coeffs, 2, degree - 1, SAMPLE_LIMIT)?;
        let values: Vec<(usize, P::Elem)> = polys
            .iter()
            .enumerate()
            .map(|(i, f)| poly_eval(p, f, &point).map(|v| (i, v)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, v)| !p.in_a0(v))
            .collect();
        let hit = values.iter().find_map(|(i, b1)| {
            values.iter().find_map(|(j, b2)| {
                let f = p.add(&p.mul(b1, a1), &p.mul(b2, a2));
                p.in_a0(&f).then(|| (*i, b1.clone(), *j, b2.clone()))
            })
        });
        if let Some((i, b1, j, b2)) = hit {
            let show = |f: &Polynomial<P::Elem>| format_polynomial(p, f, &["x", "y"]);
            return Ok(OreWitness {
                verdict: Verdict::Holds,
                b1: Some(p.label(&b1)),
                b2: Some(p.label(&b2)),
                g: Some(show(&polys[i])),
                h: Some(show(&polys[j])),
                degree: Some(degree),
                degree_bound,
                window: p.domain().window,
            });
        }
    }
    Ok(OreWitness {
        verdict: Verdict::Unknown,
        b1: None,
        b2: None,
        g: None,
        h: None,
        degree: None,
        degree_bound,
        window: p.domain().window,
    })
}
