//! Finite-support polynomials over a carrier, polynomial pairs, roots and
//! twist substitution.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::congruence::{twist_product, Twist};
use crate::constructions::{NaturalPair, SuperValue, Supertropical};
use crate::error::{Error, Result};
use crate::pairs::{FinitePair, Pair};
use crate::report::{Domain, Verdict};
use crate::semiring::{FiniteSemiring, MaxPlus, MaxPlusValue, NatPlusTimes, Semiring};

/// Carriers whose elements can be read back from their labels.
pub trait ParseElem: Semiring {
    fn parse_elem(&self, text: &str) -> Result<Self::Elem>;
}

impl ParseElem for FiniteSemiring {
    fn parse_elem(&self, text: &str) -> Result<usize> {
        self.index_of(text.trim())
            .ok_or_else(|| Error::Config(format!("unknown element label {:?}", text.trim())))
    }
}

impl ParseElem for FinitePair {
    fn parse_elem(&self, text: &str) -> Result<usize> {
        self.semiring().parse_elem(text)
    }
}

impl ParseElem for Supertropical {
    fn parse_elem(&self, text: &str) -> Result<SuperValue> {
        SuperValue::parse(text)
    }
}

impl ParseElem for MaxPlus {
    fn parse_elem(&self, text: &str) -> Result<MaxPlusValue> {
        let t = text.trim();
        if t == "-inf" {
            return Ok(MaxPlusValue::NegInf);
        }
        t.parse()
            .map(MaxPlusValue::Fin)
            .map_err(|_| Error::Config(format!("not a max-plus value: {t}")))
    }
}

fn parse_natural(text: &str) -> Result<u64> {
    text.trim()
        .parse()
        .map_err(|_| Error::Config(format!("not a natural number: {}", text.trim())))
}

impl ParseElem for NatPlusTimes {
    fn parse_elem(&self, text: &str) -> Result<u64> {
        parse_natural(text)
    }
}

impl ParseElem for NaturalPair {
    fn parse_elem(&self, text: &str) -> Result<u64> {
        parse_natural(text)
    }
}

/// Exponent vector, ordered by total degree and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `nvars` variables of total degree at most `d`, ascending.
pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::unit(nvars)];
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &out {
            for i in 0..nvars {
                let mut e = m.0.clone();
                e[i] += 1;
                next.push(Monomial(e));
            }
        }
        out.extend(next);
        out.sort();
        out.dedup();
    }
    out
}

/// Polynomial with coefficients in a carrier; zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial<E> {
    nvars: usize,
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone + Eq + Ord> Polynomial<E> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<S>(s: &S, nvars: usize, terms: impl IntoIterator<Item = (Monomial, E)>) -> Result<Self>
    where
        S: Semiring<Elem = E>,
    {
        let mut f = Polynomial::zero(nvars);
        for (m, c) in terms {
            if m.0.len() != nvars {
                return Err(Error::Precondition(format!(
                    "monomial {:?} has {} exponents, expected {nvars}",
                    m.0,
                    m.0.len()
                )));
            }
            f.add_term(s, m, c);
        }
        Ok(f)
    }

    pub fn constant<S: Semiring<Elem = E>>(s: &S, c: E, nvars: usize) -> Self {
        let mut f = Polynomial::zero(nvars);
        f.add_term(s, Monomial::unit(nvars), c);
        f
    }

    /// `c * x_0^k` in one variable.
    pub fn monomial<S: Semiring<Elem = E>>(s: &S, c: E, k: u32) -> Self {
        let mut f = Polynomial::zero(1);
        f.add_term(s, Monomial(vec![k]), c);
        f
    }

    pub fn variable<S: Semiring<Elem = E>>(s: &S, i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut f = Polynomial::zero(nvars);
        f.add_term(s, Monomial(e), s.one());
        f
    }

    fn add_term<S: Semiring<Elem = E>>(&mut self, s: &S, m: Monomial, c: E) {
        let sum = match self.terms.get(&m) {
            Some(old) => s.add(old, &c),
            None => c,
        };
        if sum == s.zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }
}

pub fn poly_add<S: Semiring>(s: &S, f: &Polynomial<S::Elem>, g: &Polynomial<S::Elem>) -> Polynomial<S::Elem> {
    let mut out = f.clone();
    for (m, c) in &g.terms {
        out.add_term(s, m.clone(), c.clone());
    }
    out
}

/// Convolution product.
pub fn poly_mul<S: Semiring>(s: &S, f: &Polynomial<S::Elem>, g: &Polynomial<S::Elem>) -> Polynomial<S::Elem> {
    let mut out = Polynomial::zero(f.nvars);
    for (m1, c1) in &f.terms {
        for (m2, c2) in &g.terms {
            out.add_term(s, m1.times(m2), s.mul(c1, c2));
        }
    }
    out
}

/// Drops every term of total degree above `d`.
pub fn truncate<E: Clone + Eq + Ord>(f: &Polynomial<E>, d: u32) -> Polynomial<E> {
    Polynomial {
        nvars: f.nvars,
        terms: f
            .terms
            .iter()
            .filter(|(m, _)| m.degree() <= d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect(),
    }
}

pub fn poly_eval<S: Semiring>(s: &S, f: &Polynomial<S::Elem>, point: &[S::Elem]) -> Result<S::Elem> {
    if point.len() != f.nvars {
        return Err(Error::Precondition(format!(
            "point has {} coordinates, polynomial has {} variables",
            point.len(),
            f.nvars
        )));
    }
    Ok(eval_unchecked(s, f, point))
}

fn eval_unchecked<S: Semiring>(s: &S, f: &Polynomial<S::Elem>, point: &[S::Elem]) -> S::Elem {
    let mut acc = s.zero();
    for (m, c) in &f.terms {
        let mut t = c.clone();
        for (x, &k) in point.iter().zip(&m.0) {
            t = s.mul(&t, &s.pow(x, k));
        }
        acc = s.add(&acc, &t);
    }
    acc
}

/// Substitutes the one-variable polynomial `g` into the one-variable `f`.
pub fn poly_compose<S: Semiring>(s: &S, f: &Polynomial<S::Elem>, g: &Polynomial<S::Elem>) -> Result<Polynomial<S::Elem>> {
    if f.nvars != 1 || g.nvars != 1 {
        return Err(Error::Unsupported("composition is for one-variable polynomials".into()));
    }
    let mut out = Polynomial::zero(1);
    for (m, c) in &f.terms {
        let mut power = Polynomial::constant(s, s.one(), 1);
        for _ in 0..m.0[0] {
            power = poly_mul(s, &power, g);
        }
        out = poly_add(s, &out, &poly_mul(s, &Polynomial::constant(s, c.clone(), 1), &power));
    }
    Ok(out)
}

/// Reads `2*x^2*y + 1v*x + 4`. Terms are separated by `+`, factors by `*`;
/// a factor is a variable with an optional `^k` or a coefficient label.
pub fn parse_polynomial<S: ParseElem>(s: &S, text: &str, vars: &[&str]) -> Result<Polynomial<S::Elem>> {
    let nvars = vars.len();
    let mut f = Polynomial::zero(nvars);
    if text.trim().is_empty() {
        return Err(Error::Config("empty polynomial".into()));
    }
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Config(format!("empty term in {text:?}")));
        }
        let mut exps = vec![0u32; nvars];
        let mut coeff = s.one();
        for factor in term.split('*') {
            let factor = factor.trim();
            let (base, power) = match factor.split_once('^') {
                Some((b, k)) => {
                    let k: u32 = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::Config(format!("bad exponent in {factor:?}")))?;
                    (b.trim(), Some(k))
                }
                None => (factor, None),
            };
            match vars.iter().position(|v| *v == base) {
                Some(i) => exps[i] += power.unwrap_or(1),
                None => {
                    let c = s.parse_elem(base)?;
                    coeff = s.mul(&coeff, &s.pow(&c, power.unwrap_or(1)));
                }
            }
        }
        f.add_term(s, Monomial(exps), coeff);
    }
    Ok(f)
}

/// Canonical text, highest term first; parses back to the same polynomial.
pub fn format_polynomial<S: Semiring>(s: &S, f: &Polynomial<S::Elem>, vars: &[&str]) -> String {
    if f.is_zero() {
        return s.label(&s.zero());
    }
    let one = s.one();
    f.terms
        .iter()
        .rev()
        .map(|(m, c)| {
            let mut parts = Vec::new();
            if *c != one || m.degree() == 0 {
                parts.push(s.label(c));
            }
            for (v, &k) in vars.iter().zip(&m.0) {
                match k {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{k}")),
                }
            }
            parts.join("*")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Default variable names for `n` variables.
pub fn default_vars(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 | 3 => ["x", "y", "z"][..n].iter().map(|v| v.to_string()).collect(),
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

/// Every polynomial of degree at most `d` whose coefficients come from
/// `coeffs` (zero is always allowed). Refuses more than `limit` results.
pub fn enumerate_polynomials<S: Semiring>(
    s: &S,
    coeffs: &[S::Elem],
    nvars: usize,
    d: u32,
    limit: usize,
) -> Result<Vec<Polynomial<S::Elem>>> {
    let z = s.zero();
    let mut choices: Vec<S::Elem> = vec![z.clone()];
    choices.extend(coeffs.iter().filter(|c| **c != z).cloned());
    choices.sort();
    choices.dedup();
    let monos = monomials_up_to(nvars, d);
    let total = (choices.len() as u128).checked_pow(monos.len() as u32).unwrap_or(u128::MAX);
    if total > limit as u128 {
        return Err(Error::TooLarge {
            what: "polynomial enumeration".into(),
            size: monos.len(),
            limit,
            estimate: format!("{}^{} polynomials", choices.len(), monos.len()),
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    for idx in crate::report::index_tuples(choices.len(), monos.len(), None, 0) {
        let f = Polynomial::from_terms(
            s,
            nvars,
            monos.iter().cloned().zip(idx.iter().map(|&i| choices[i].clone())),
        )?;
        out.push(f);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// First point where `f` and `g` take different values.
pub fn functional_difference<S: Semiring>(
    s: &S,
    f: &Polynomial<S::Elem>,
    g: &Polynomial<S::Elem>,
    points: &[Vec<S::Elem>],
) -> Result<Option<Vec<S::Elem>>> {
    for pt in points {
        if poly_eval(s, f, pt)? != poly_eval(s, g, pt)? {
            return Ok(Some(pt.clone()));
        }
    }
    Ok(None)
}

/// True iff `f` and `g` agree at every listed point.
pub fn agree_as_functions<S: Semiring>(
    s: &S,
    f: &Polynomial<S::Elem>,
    g: &Polynomial<S::Elem>,
    points: &[Vec<S::Elem>],
) -> Result<bool> {
    Ok(functional_difference(s, f, g, points)?.is_none())
}

/// Cartesian power of a coordinate list.
pub fn grid<E: Clone>(coords: &[E], nvars: usize) -> Vec<Vec<E>> {
    crate::report::index_tuples(coords.len(), nvars, None, 0)
        .into_iter()
        .map(|ix| ix.into_iter().map(|i| coords[i].clone()).collect())
        .collect()
}

/// Nonzero with every coefficient tangible.
pub fn is_tangible_poly<P: Pair>(p: &P, f: &Polynomial<P::Elem>) -> bool {
    !f.is_zero() && f.terms.values().all(|c| p.is_tangible(c))
}

/// Every point of `coords^m` at which `f` lands in A0, in grid order.
pub fn find_preceq_roots<P: Pair>(p: &P, f: &Polynomial<P::Elem>, coords: &[P::Elem]) -> Vec<Vec<P::Elem>> {
    grid(coords, f.nvars)
        .into_par_iter()
        .filter(|pt| p.in_a0(&eval_unchecked(p, f, pt)))
        .collect()
}

/// `(f1(z1) + f2(z2), f1(z2) + f2(z1))`.
pub fn twist_substitute<S: Semiring>(
    s: &S,
    f: &Twist<Polynomial<S::Elem>>,
    z: &(Vec<S::Elem>, Vec<S::Elem>),
) -> Result<Twist<S::Elem>> {
    let (f1, f2) = f;
    let (z1, z2) = z;
    Ok((
        s.add(&poly_eval(s, f1, z1)?, &poly_eval(s, f2, z2)?),
        s.add(&poly_eval(s, f1, z2)?, &poly_eval(s, f2, z1)?),
    ))
}

/// Twist substitution of a one-variable pair into a twist of carrier values.
pub fn twist_substitute_value<S: Semiring>(
    s: &S,
    f: &Twist<Polynomial<S::Elem>>,
    z: &Twist<S::Elem>,
) -> Result<Twist<S::Elem>> {
    twist_substitute(s, f, &(vec![z.0.clone()], vec![z.1.clone()]))
}

/// The twist of one-variable polynomial pairs under composition:
/// `(f1 o f3 + f2 o f4, f1 o f4 + f2 o f3)`.
pub fn compose_twist<S: Semiring>(
    s: &S,
    f: &Twist<Polynomial<S::Elem>>,
    g: &Twist<Polynomial<S::Elem>>,
) -> Result<Twist<Polynomial<S::Elem>>> {
    let c = |a, b| poly_compose(s, a, b);
    Ok((
        poly_add(s, &c(&f.0, &g.0)?, &c(&f.1, &g.1)?),
        poly_add(s, &c(&f.0, &g.1)?, &c(&f.1, &g.0)?),
    ))
}

/// Both sides of the mixed associativity identity for one-variable pairs.
pub fn mixed_associativity<S: Semiring>(
    s: &S,
    f: &Twist<Polynomial<S::Elem>>,
    g: &Twist<Polynomial<S::Elem>>,
    z: &Twist<S::Elem>,
) -> Result<(Twist<S::Elem>, Twist<S::Elem>)> {
    let lhs = twist_substitute_value(s, &compose_twist(s, f, g)?, z)?;
    let rhs = twist_substitute_value(s, f, &twist_substitute_value(s, g, z)?)?;
    Ok((lhs, rhs))
}

/// Point pair for geometric congruences.
pub type PointPair<E> = (Vec<E>, Vec<E>);

/// Pairs of polynomials of degree at most `d` over a finite pair whose twist
/// substitution lands in `A0 x A0` at every given point pair.
pub fn geometric_congruence(
    p: &FinitePair,
    points: &[PointPair<usize>],
    nvars: usize,
    d: u32,
) -> Result<Vec<Twist<Polynomial<usize>>>> {
    let polys = enumerate_polynomials(p, &p.domain().elements, nvars, d, 4096)?;
    for (z1, z2) in points {
        if z1.len() != nvars || z2.len() != nvars {
            return Err(Error::Precondition("point arity differs from variable count".into()));
        }
    }
    // values[f][k] = (f(z1), f(z2)) at the k-th point
    let values: Vec<Vec<(usize, usize)>> = polys
        .iter()
        .map(|f| {
            points
                .iter()
                .map(|(z1, z2)| (eval_unchecked(p, f, z1), eval_unchecked(p, f, z2)))
                .collect()
        })
        .collect();
    let n = polys.len();
    let hits: Vec<(usize, usize)> = (0..n * n)
        .into_par_iter()
        .map(|k| (k / n, k % n))
        .filter(|&(i, j)| {
            values[i].iter().zip(&values[j]).all(|(&(a1, a2), &(b1, b2))| {
                p.in_a0(&p.add(&a1, &b2)) && p.in_a0(&p.add(&a2, &b1))
            })
        })
        .collect();
    Ok(hits
        .into_iter()
        .map(|(i, j)| (polys[i].clone(), polys[j].clone()))
        .collect())
}

/// How a polynomial pair is squared in the radical probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistSquare {
    /// `(f1 f1 + f2 f2, f1 f2 + f2 f1)` with the ordinary product.
    Product,
    /// [`compose_twist`] of the pair with itself; one variable only.
    Composition,
}

/// Looks for a pair of degree at most `d` outside the geometric congruence
/// whose twist square lies inside it. Squares are not truncated.
pub fn geometric_radical_witness(
    p: &FinitePair,
    points: &[PointPair<usize>],
    nvars: usize,
    d: u32,
    square: TwistSquare,
) -> Result<Option<Twist<Polynomial<usize>>>> {
    if square == TwistSquare::Composition && nvars != 1 {
        return Err(Error::Unsupported("composition squares need one variable".into()));
    }
    let polys = enumerate_polynomials(p, &p.domain().elements, nvars, d, 4096)?;
    let inside = |f: &Twist<Polynomial<usize>>| -> bool {
        points.iter().all(|z| {
            let (a, b) = twist_substitute(p, f, z).expect("arity checked");
            p.in_a0(&a) && p.in_a0(&b)
        })
    };
    if points.iter().any(|(z1, z2)| z1.len() != nvars || z2.len() != nvars) {
        return Err(Error::Precondition("point arity differs from variable count".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..polys.len())
        .flat_map(|i| (0..polys.len()).map(move |j| (i, j)))
        .collect();
    let bad = pairs.par_iter().find_first(|&&(i, j)| {
        let f = (polys[i].clone(), polys[j].clone());
        if inside(&f) {
            return false;
        }
        let sq = match square {
            TwistSquare::Product => (
                poly_add(p, &poly_mul(p, &f.0, &f.0), &poly_mul(p, &f.1, &f.1)),
                poly_add(p, &poly_mul(p, &f.0, &f.1), &poly_mul(p, &f.1, &f.0)),
            ),
            TwistSquare::Composition => compose_twist(p, &f, &f).expect("one variable"),
        };
        inside(&sq)
    });
    Ok(bad.map(|&(i, j)| (polys[i].clone(), polys[j].clone())))
}

/// How the quasi-zero part of a polynomial pair is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum A0Flavor {
    /// Polynomials with every coefficient in A0.
    Coeffwise,
    /// Coefficientwise A0 together with every polynomial of two or more terms.
    Shallowized,
}

/// Polynomials over a pair. Tangibles are monomials with tangible
/// coefficient. `degree` and `coeffs` only bound the sample domain.
pub struct PolynomialPair<'a, P: Pair> {
    pub base: &'a P,
    pub nvars: usize,
    pub flavor: A0Flavor,
    pub degree: u32,
    coeffs: Vec<P::Elem>,
}

impl<'a, P: Pair> PolynomialPair<'a, P> {
    pub fn new(base: &'a P, nvars: usize, flavor: A0Flavor, degree: u32) -> Self {
        PolynomialPair {
            base,
            nvars,
            flavor,
            degree,
            coeffs: base.domain().elements,
        }
    }

    /// Restricts the sampled coefficients, for carriers too large to
    /// enumerate at the chosen degree.
    pub fn with_coefficients(mut self, coeffs: Vec<P::Elem>) -> Self {
        self.coeffs = coeffs;
        self
    }
}

impl<P: Pair> Semiring for PolynomialPair<'_, P> {
    type Elem = Polynomial<P::Elem>;

    fn zero(&self) -> Self::Elem {
        Polynomial::zero(self.nvars)
    }
    fn one(&self) -> Self::Elem {
        Polynomial::constant(self.base, self.base.one(), self.nvars)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        poly_add(self.base, a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        poly_mul(self.base, a, b)
    }
    fn domain(&self) -> Domain<Self::Elem> {
        let polys = enumerate_polynomials(self.base, &self.coeffs, self.nvars, self.degree, 1 << 16)
            .unwrap_or_else(|_| {
                let small: Vec<P::Elem> = self.coeffs.iter().take(4).cloned().collect();
                enumerate_polynomials(self.base, &small, self.nvars, self.degree.min(1), 1 << 16)
                    .unwrap_or_default()
            });
        Domain::windowed(polys, i64::from(self.degree))
    }
    fn label(&self, a: &Self::Elem) -> String {
        let vars = default_vars(self.nvars);
        let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
        format_polynomial(self.base, a, &refs)
    }
}

impl<P: Pair> Pair for PolynomialPair<'_, P> {
    fn in_a0(&self, f: &Self::Elem) -> bool {
        let coeffwise = f.terms.values().all(|c| self.base.in_a0(c));
        match self.flavor {
            A0Flavor::Coeffwise => coeffwise,
            A0Flavor::Shallowized => coeffwise || f.terms.len() >= 2,
        }
    }
    fn is_tangible(&self, f: &Self::Elem) -> bool {
        f.terms.len() == 1 && f.terms.values().all(|c| self.base.is_tangible(c))
    }
    /// Coefficientwise: `g = f + h` with `h` in A0[x] splits monomial by
    /// monomial. Only decided for the coefficientwise flavor.
    fn precedes_zero_exact(&self, f: &Self::Elem, g: &Self::Elem) -> Option<bool> {
        if self.flavor != A0Flavor::Coeffwise {
            return None;
        }
        let z = self.base.zero();
        let mut all = true;
        for m in f.terms.keys().chain(g.terms.keys()) {
            let a = f.terms.get(m).unwrap_or(&z);
            let b = g.terms.get(m).unwrap_or(&z);
            match crate::pairs::surpasses(self.base, crate::pairs::SurpassKind::PrecedesZero, a, b) {
                Ok(Verdict::Holds) => {}
                Ok(Verdict::Fails) => return Some(false),
                _ => all = false,
            }
        }
        all.then_some(true)
    }
    fn spanning_by_construction(&self) -> bool {
        true
    }
}

/// Result of the tangible-polynomial scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Nondegeneracy {
    pub verdict: Verdict,
    pub window: Option<i64>,
    /// A tangible polynomial that lands in A0 at every tangible input.
    pub degenerate: Option<String>,
    /// Shallow pairs only: a tangible polynomial with no tangible value.
    pub no_tangible_value: Option<String>,
}

/// Scans tangible polynomials up to degree `d` in `nvars` variables for one
/// that vanishes into A0 at every tangible input.
pub fn check_nondegenerate<P: Pair>(p: &P, d: u32, nvars: usize) -> Result<Nondegeneracy> {
    if d == 0 || nvars == 0 {
        return Err(Error::Precondition("degree and variable bounds must be at least 1".into()));
    }
    let t = p.tangible_domain();
    let polys: Vec<Polynomial<P::Elem>> = enumerate_polynomials(p, &t.elements, nvars, d, 1 << 18)?
        .into_iter()
        .filter(|f| is_tangible_poly(p, f))
        .collect();
    let inputs = grid(&t.elements, nvars);
    let degenerate = polys
        .par_iter()
        .find_first(|f| inputs.iter().all(|b| p.in_a0(&eval_unchecked(p, f, b))));
    let shallow = crate::pairs::is_shallow(p).holds;
    let no_tangible = if shallow && degenerate.is_none() {
        polys
            .par_iter()
            .find_first(|f| !inputs.iter().any(|b| p.is_tangible(&eval_unchecked(p, f, b))))
    } else {
        None
    };
    let vars = default_vars(nvars);
    let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let verdict = match (degenerate.is_some(), t.is_exhaustive()) {
        (true, true) => Verdict::Fails,
        (false, true) => Verdict::Holds,
        // a degenerate polynomial on a window may still escape A0 outside it
        (true, false) => Verdict::Unknown,
        (false, false) => Verdict::Holds,
    };
    Ok(Nondegeneracy {
        verdict,
        window: t.window,
        degenerate: degenerate.map(|f| format_polynomial(p, f, &refs)),
        no_tangible_value: no_tangible.map(|f| format_polynomial(p, f, &refs)),
    })
}

/// A non-diagonal `b` with `b * c * b` diagonal for every `c`, over the
/// listed elements; `None` means the diagonal passes the element test.
pub fn diagonal_semiprime_witness<S: Semiring>(s: &S, elements: &[S::Elem]) -> Option<Twist<S::Elem>> {
    let twists: Vec<Twist<S::Elem>> = elements
        .iter()
        .flat_map(|x| elements.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let off: Vec<&Twist<S::Elem>> = twists.iter().filter(|b| b.0 != b.1).collect();
    off.par_iter()
        .find_first(|b| {
            !twists.iter().any(|c| {
                let r = twist_product(s, &twist_product(s, b, c), b);
                r.0 != r.1
            })
        })
        .map(|b| (*b).clone())
}

/// Semiprimeness of the diagonal for the base pair and for its polynomial
/// functions. Both `b` and the middle factor range over polynomials of
/// degree at most `d`; products are not truncated. A function witness lifted
/// from a base witness is exact, any other one is only a verdict at the bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolySemiprime {
    pub base_semiprime: bool,
    pub functions: Verdict,
    pub degree: u32,
    pub base_witness: Option<Vec<String>>,
    pub function_witness: Option<Vec<String>>,
}

pub fn check_polypair_semiprime(p: &FinitePair, nvars: usize, d: u32) -> Result<PolySemiprime> {
    let base_elems = p.domain().elements;
    let base = diagonal_semiprime_witness(p, &base_elems);
    let polys = PolynomialPair::new(p, nvars, A0Flavor::Coeffwise, d);
    let elems = enumerate_polynomials(p, &base_elems, nvars, d, 256)?;
    let lifted = diagonal_semiprime_witness(&polys, &elems);
    let functions = match (&base, &lifted) {
        (_, None) => Verdict::Holds,
        (Some(_), Some(_)) => Verdict::Fails,
        (None, Some(_)) if d == 0 => Verdict::Fails,
        (None, Some(_)) => Verdict::Unknown,
    };
    Ok(PolySemiprime {
        base_semiprime: base.is_none(),
        functions,
        degree: d,
        base_witness: base.map(|(a, b)| vec![p.label(&a), p.label(&b)]),
        function_witness: lifted.map(|(a, b)| vec![polys.label(&a), polys.label(&b)]),
    })
}
