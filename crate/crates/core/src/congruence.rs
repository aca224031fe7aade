use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairs::{FinitePair, Pair};
use crate::report::{index_tuples, Domain, Verdict, SAMPLE_LIMIT};
use crate::semiring::{FiniteSemiring, Semiring};

/// An ordered pair of carrier elements, multiplied by the twist product.
pub type Twist<E> = (E, E);

/// `(a1,a1')(a2,a2') = (a1 a2 + a1' a2', a1 a2' + a1' a2)`.
pub fn twist_product<S: Semiring>(s: &S, x: &Twist<S::Elem>, y: &Twist<S::Elem>) -> Twist<S::Elem> {
    let (a1, b1) = x;
    let (a2, b2) = y;
    (
        s.add(&s.mul(a1, a2), &s.mul(b1, b2)),
        s.add(&s.mul(a1, b2), &s.mul(b1, a2)),
    )
}

pub fn switch<E: Clone>(x: &Twist<E>) -> Twist<E> {
    (x.1.clone(), x.0.clone())
}

/// `x^m` under the twist product, `m >= 1`.
pub fn twist_power<S: Semiring>(s: &S, x: &Twist<S::Elem>, m: u32) -> Twist<S::Elem> {
    let mut acc = x.clone();
    for _ in 1..m.max(1) {
        acc = twist_product(s, &acc, x);
    }
    acc
}

/// A congruence on a finite carrier, stored as a partition. Classes are
/// numbered in order of their lowest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Congruence {
    class_of: Vec<usize>,
}

impl Congruence {
    pub fn diagonal(n: usize) -> Self {
        Congruence {
            class_of: (0..n).collect(),
        }
    }

    /// Renumbers arbitrary class ids into canonical form.
    pub fn from_classes(ids: &[usize]) -> Self {
        let mut map = BTreeMap::new();
        let class_of = ids
            .iter()
            .map(|id| {
                let next = map.len();
                *map.entry(*id).or_insert(next)
            })
            .collect();
        Congruence { class_of }
    }

    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_ids(&self) -> &[usize] {
        &self.class_of
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn contains_pair(&self, x: &Twist<usize>) -> bool {
        self.contains(x.0, x.1)
    }

    pub fn num_classes(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// Sorted list of related ordered pairs, diagonal included.
    pub fn pairs(&self) -> Vec<Twist<usize>> {
        let n = self.size();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.contains(a, b))
            .collect()
    }

    pub fn pair_count(&self) -> usize {
        self.classes().iter().map(|c| c.len() * c.len()).sum()
    }

    pub fn is_diagonal(&self) -> bool {
        self.num_classes() == self.size()
    }

    pub fn is_subset(&self, other: &Congruence) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| !self.contains(a, b) || other.contains(a, b)))
    }

    pub fn intersect(&self, other: &Congruence) -> Congruence {
        let ids: Vec<usize> = (0..self.size())
            .map(|a| self.class_of[a] * self.size() + other.class_of[a])
            .collect();
        Congruence::from_classes(&ids)
    }

    /// Classes as label lists, for reports.
    pub fn class_labels<S: Semiring<Elem = usize>>(&self, s: &S) -> Vec<Vec<String>> {
        self.classes().iter().map(|c| s.labels(c)).collect()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

/// Least semiring congruence containing `base` and `seeds`.
pub fn close_semiring(s: &FiniteSemiring, base: &Congruence, seeds: &[Twist<usize>]) -> Congruence {
    let n = s.size();
    let mut uf = UnionFind((0..n).collect());
    let mut first = vec![usize::MAX; base.num_classes()];
    for x in 0..n {
        let c = base.class_of(x);
        if first[c] == usize::MAX {
            first[c] = x;
        } else {
            uf.union(first[c], x);
        }
    }
    let mut work: VecDeque<Twist<usize>> = seeds.iter().copied().collect();
    while let Some((a, b)) = work.pop_front() {
        if !uf.union(a, b) {
            continue;
        }
        for c in 0..n {
            work.push_back((s.add(&a, &c), s.add(&b, &c)));
            work.push_back((s.mul(&a, &c), s.mul(&b, &c)));
            work.push_back((s.mul(&c, &a), s.mul(&c, &b)));
        }
    }
    let ids: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Congruence::from_classes(&ids)
}

/// First class, in canonical order, that mixes a tangible with an element
/// of A0.
pub fn admissibility_violation(p: &FinitePair, c: &Congruence) -> Option<(usize, usize)> {
    c.classes().iter().find_map(|cls| {
        let t = cls.iter().find(|&&x| p.is_tangible(&x))?;
        let z = cls.iter().find(|&&x| p.in_a0(&x))?;
        Some((*t, *z))
    })
}

pub fn is_pair_congruence(p: &FinitePair, c: &Congruence) -> bool {
    admissibility_violation(p, c).is_none()
}

/// The pair-congruence generated by `base` and `seeds`.
pub fn extend_congruence(p: &FinitePair, base: &Congruence, seeds: &[Twist<usize>]) -> Result<Congruence> {
    let c = close_semiring(p.semiring(), base, seeds);
    match admissibility_violation(p, &c) {
        Some((t, z)) => Err(Error::Inadmissible(p.label(&t), p.label(&z))),
        None => Ok(c),
    }
}

pub fn generate_congruence(p: &FinitePair, seeds: &[Twist<usize>]) -> Result<Congruence> {
    extend_congruence(p, &Congruence::diagonal(p.size()), seeds)
}

/// Semiring congruence generated by `{(x a, y a)}` for a commutative carrier.
pub fn element_congruence(s: &FiniteSemiring, a: usize) -> Result<Congruence> {
    if !s.is_commutative() {
        return Err(Error::Unsupported("element congruences need a commutative carrier".into()));
    }
    let n = s.size();
    let seeds: Vec<Twist<usize>> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| (s.mul(&x, &a), s.mul(&y, &a)))
        .collect();
    Ok(close_semiring(s, &Congruence::diagonal(n), &seeds))
}

/// Upper bound for exhaustive lattice enumeration.
pub const LATTICE_LIMIT: usize = 10;

fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty")];
        for v in &row {
            let last = *next.last().expect("nonempty");
            next.push(last.saturating_add(*v));
        }
        row = next;
    }
    row[0]
}

/// All pair-congruences of a finite pair, sorted by size then by their
/// pair lists. Index 0 is the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceLattice {
    pub congruences: Vec<Congruence>,
}

impl CongruenceLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|x| x == c)
    }

    /// Indices of the congruences containing `c`.
    pub fn above(&self, c: &Congruence) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| c.is_subset(&self.congruences[i]))
            .collect()
    }
}

pub fn enumerate_congruences(p: &FinitePair) -> Result<CongruenceLattice> {
    let n = p.size();
    if n > LATTICE_LIMIT {
        return Err(Error::TooLarge {
            what: "congruence lattice".into(),
            size: n,
            limit: LATTICE_LIMIT,
            estimate: format!("up to {} partitions", bell(n)),
        });
    }
    let s = p.semiring();
    let pairs: Vec<Twist<usize>> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut principal: Vec<Option<Congruence>> = Vec::with_capacity(pairs.len());
    for &(a, b) in &pairs {
        principal.push(generate_congruence(p, &[(a, b)]).ok());
    }
    let mut seen: HashSet<Congruence> = HashSet::new();
    let diag = Congruence::diagonal(n);
    seen.insert(diag.clone());
    let mut frontier = vec![diag];
    while !frontier.is_empty() {
        let next: Vec<Congruence> = frontier
            .par_iter()
            .flat_map_iter(|c| {
                pairs
                    .iter()
                    .zip(&principal)
                    .filter(|((a, b), pc)| pc.is_some() && !c.contains(*a, *b))
                    .filter_map(|((a, b), _)| {
                        let j = close_semiring(s, c, &[(*a, *b)]);
                        is_pair_congruence(p, &j).then_some(j)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        frontier = next.into_iter().filter(|c| seen.insert(c.clone())).collect();
    }
    let mut congruences: Vec<Congruence> = seen.into_iter().collect();
    congruences.sort_by_cached_key(|c| (c.pair_count(), c.pairs()));
    Ok(CongruenceLattice { congruences })
}

/// Whether every twist product of a pair in `c1` with a pair in `c2` lies
/// in `target`.
pub fn twist_contained(s: &FiniteSemiring, c1: &Congruence, c2: &Congruence, target: &Congruence) -> bool {
    let p1 = c1.pairs();
    let p2 = c2.pairs();
    p1.iter()
        .all(|x| p2.iter().all(|y| target.contains_pair(&twist_product(s, x, y))))
}

fn all_twists(n: usize) -> Vec<Twist<usize>> {
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
}

/// First `a` in `A x A` with `x * a * y` outside `c`.
fn sandwich_escape(s: &FiniteSemiring, c: &Congruence, x: &Twist<usize>, y: &Twist<usize>, all: &[Twist<usize>]) -> Option<Twist<usize>> {
    all.iter()
        .find(|a| !c.contains_pair(&twist_product(s, &twist_product(s, x, a), y)))
        .copied()
}

/// Pairs outside `c` that may serve as witnesses. With `admissible_only`,
/// only pairs whose join with `c` is still a pair-congruence qualify.
fn witness_candidates(p: &FinitePair, c: &Congruence, admissible_only: bool) -> Vec<Twist<usize>> {
    all_twists(p.size())
        .into_par_iter()
        .filter(|b| !c.contains_pair(b))
        .filter(|b| !admissible_only || extend_congruence(p, c, &[*b]).is_ok())
        .collect()
}

/// Element criterion: `c` is semiprime iff `b * (A x A) * b` inside `c`
/// forces `b` into `c`. Returns the first `b` breaking this.
///
/// `admissible_only` restricts `b` to pairs generating a pair-congruence
/// together with `c`; without it, pairs whose join meets `T x A0` also
/// count as witnesses.
pub fn semiprime_witness_with(p: &FinitePair, c: &Congruence, admissible_only: bool) -> Option<Twist<usize>> {
    let s = p.semiring();
    let all = all_twists(p.size());
    witness_candidates(p, c, admissible_only)
        .into_par_iter()
        .find_first(|b| sandwich_escape(s, c, b, b, &all).is_none())
}

/// Two-element criterion for primeness: the first `(b1, b2)` outside `c`
/// with `b1 * (A x A) * b2` inside `c`.
pub fn prime_witness_with(p: &FinitePair, c: &Congruence, admissible_only: bool) -> Option<(Twist<usize>, Twist<usize>)> {
    let s = p.semiring();
    let all = all_twists(p.size());
    let outside = witness_candidates(p, c, admissible_only);
    let candidates: Vec<(Twist<usize>, Twist<usize>)> = outside
        .iter()
        .flat_map(|x| outside.iter().map(move |y| (*x, *y)))
        .collect();
    candidates
        .into_par_iter()
        .find_first(|(x, y)| sandwich_escape(s, c, x, y, &all).is_none())
}

pub fn semiprime_witness(p: &FinitePair, c: &Congruence) -> Option<Twist<usize>> {
    semiprime_witness_with(p, c, true)
}

pub fn prime_witness(p: &FinitePair, c: &Congruence) -> Option<(Twist<usize>, Twist<usize>)> {
    prime_witness_with(p, c, true)
}

pub fn is_semiprime(p: &FinitePair, c: &Congruence) -> bool {
    semiprime_witness(p, c).is_none()
}

pub fn is_prime(p: &FinitePair, c: &Congruence) -> bool {
    prime_witness(p, c).is_none()
}

/// Primeness straight from the definition, quantifying over the lattice.
pub fn is_prime_in_lattice(p: &FinitePair, lattice: &CongruenceLattice, c: &Congruence) -> bool {
    let s = p.semiring();
    let above = lattice.above(c);
    above.iter().all(|&i| {
        above.iter().all(|&j| {
            let (c1, c2) = (&lattice.congruences[i], &lattice.congruences[j]);
            c1 == c || c2 == c || !twist_contained(s, c1, c2, c)
        })
    })
}

pub fn is_semiprime_in_lattice(p: &FinitePair, lattice: &CongruenceLattice, c: &Congruence) -> bool {
    let s = p.semiring();
    lattice.above(c).iter().all(|&i| {
        let c1 = &lattice.congruences[i];
        c1 == c || !twist_contained(s, c1, c1, c)
    })
}

pub fn is_irreducible(lattice: &CongruenceLattice, c: &Congruence) -> bool {
    let above: Vec<&Congruence> = lattice
        .above(c)
        .into_iter()
        .map(|i| &lattice.congruences[i])
        .filter(|x| *x != c)
        .collect();
    !above
        .iter()
        .enumerate()
        .any(|(i, x)| above[i + 1..].iter().any(|y| x.intersect(y) == *c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub prime: bool,
    pub semiprime: bool,
    pub irreducible: bool,
    /// The same two properties decided over the lattice directly.
    pub prime_by_definition: bool,
    pub semiprime_by_definition: bool,
    pub prime_witness: Option<Vec<String>>,
    pub semiprime_witness: Option<Vec<String>>,
}

pub fn classify_congruence(p: &FinitePair, lattice: &CongruenceLattice, c: &Congruence) -> Classification {
    let l = |x: &Twist<usize>| format!("({},{})", p.label(&x.0), p.label(&x.1));
    let pw = prime_witness(p, c);
    let sw = semiprime_witness(p, c);
    Classification {
        prime: pw.is_none(),
        semiprime: sw.is_none(),
        irreducible: is_irreducible(lattice, c),
        prime_by_definition: is_prime_in_lattice(p, lattice, c),
        semiprime_by_definition: is_semiprime_in_lattice(p, lattice, c),
        prime_witness: pw.map(|(x, y)| vec![l(&x), l(&y)]),
        semiprime_witness: sw.map(|x| vec![l(&x)]),
    }
}

/// Closure of a set of congruences under pairwise intersection.
pub fn intersections(cs: &[Congruence]) -> BTreeSet<Congruence> {
    let mut out: BTreeSet<Congruence> = cs.iter().cloned().collect();
    loop {
        let current: Vec<Congruence> = out.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                grew |= out.insert(a.intersect(b));
            }
        }
        if !grew {
            return out;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub primes: Vec<Congruence>,
    pub krull_dimension: Option<usize>,
    /// A longest chain, smallest first.
    pub longest_chain: Vec<Congruence>,
}

/// Prime congruences by the element criterion, and the longest strict chain.
pub fn prime_spectrum_krull(p: &FinitePair, lattice: &CongruenceLattice) -> Spectrum {
    let primes: Vec<Congruence> = lattice
        .congruences
        .par_iter()
        .filter(|c| is_prime(p, c))
        .cloned()
        .collect();
    // primes are sorted by size, so strict containment only points forward
    let k = primes.len();
    let mut best: Vec<(usize, Option<usize>)> = vec![(0, None); k];
    for j in 0..k {
        for i in 0..j {
            if primes[i] != primes[j] && primes[i].is_subset(&primes[j]) && best[i].0 + 1 > best[j].0 {
                best[j] = (best[i].0 + 1, Some(i));
            }
        }
    }
    let top = (0..k).max_by_key(|&j| (best[j].0, std::cmp::Reverse(j)));
    let mut longest_chain = Vec::new();
    let mut cur = top;
    while let Some(j) = cur {
        longest_chain.push(primes[j].clone());
        cur = best[j].1;
    }
    longest_chain.reverse();
    Spectrum {
        krull_dimension: top.map(|j| best[j].0),
        primes,
        longest_chain,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadicalReport {
    pub radical: Congruence,
    /// Whether the twist-power set was already a congruence.
    pub closed_already: bool,
    pub contains_original: bool,
    pub semiprime: bool,
    /// Twist-power members left out because their join with the
    /// congruence meets `T x A0`.
    pub escapes: Vec<Twist<usize>>,
    /// Intersection of the primes containing the congruence; `None` when no
    /// prime contains it.
    pub prime_intersection: Option<Congruence>,
}

/// Pairs with some twist power in `c`.
pub fn twist_power_set(s: &FiniteSemiring, c: &Congruence) -> Vec<Twist<usize>> {
    all_twists(s.size())
        .into_iter()
        .filter(|x| {
            let mut seen = HashSet::new();
            let mut cur = *x;
            loop {
                if c.contains_pair(&cur) {
                    return true;
                }
                if !seen.insert(cur) {
                    return false;
                }
                cur = twist_product(s, &cur, x);
            }
        })
        .collect()
}

/// Congruence generated by `c` and its twist-power members, keeping only
/// members whose join with `c` is still a pair-congruence.
pub fn radical(p: &FinitePair, lattice: &CongruenceLattice, c: &Congruence) -> Result<RadicalReport> {
    let s = p.semiring();
    if !s.is_commutative() {
        return Err(Error::Unsupported("twist-power radical needs a commutative carrier".into()));
    }
    let (set, escapes): (Vec<Twist<usize>>, Vec<Twist<usize>>) = twist_power_set(s, c)
        .into_iter()
        .partition(|b| extend_congruence(p, c, &[*b]).is_ok());
    let radical = extend_congruence(p, c, &set)?;
    let closed_already = radical.pair_count() == set.len();
    let containing: Vec<Congruence> = lattice
        .congruences
        .iter()
        .filter(|x| c.is_subset(x) && is_prime(p, x))
        .cloned()
        .collect();
    let prime_intersection = containing
        .iter()
        .cloned()
        .reduce(|a, b| a.intersect(&b));
    Ok(RadicalReport {
        contains_original: c.is_subset(&radical),
        semiprime: is_semiprime(p, &radical),
        escapes,
        closed_already,
        prime_intersection,
        radical,
    })
}

/// Result of the sequence construction separating a pair from a congruence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Separation {
    /// `b * (A x A) * b` lies in the congruence, so it is not semiprime.
    Stuck { element: Twist<usize> },
    /// The sequence, and the maximal congruences avoiding it that are prime.
    Separated {
        sequence: Vec<Twist<usize>>,
        primes: Vec<Congruence>,
    },
}

/// Starting from `s` outside `c`, extends `s_{i+1} = s_i * a_i * s_i`
/// outside `c` until it cycles, then looks for congruences containing `c`
/// that are maximal with respect to avoiding the sequence.
pub fn levitzki_separation(
    p: &FinitePair,
    lattice: &CongruenceLattice,
    c: &Congruence,
    start: Twist<usize>,
) -> Result<Separation> {
    if c.contains_pair(&start) {
        return Err(Error::Precondition("start pair already lies in the congruence".into()));
    }
    let s = p.semiring();
    let all = all_twists(p.size());
    let mut sequence = vec![start];
    loop {
        let cur = *sequence.last().expect("nonempty");
        let Some(a) = sandwich_escape(s, c, &cur, &cur, &all) else {
            return Ok(Separation::Stuck { element: cur });
        };
        let next = twist_product(s, &twist_product(s, &cur, &a), &cur);
        if sequence.contains(&next) {
            break;
        }
        sequence.push(next);
    }
    let avoiding: Vec<&Congruence> = lattice
        .congruences
        .iter()
        .filter(|x| c.is_subset(x) && sequence.iter().all(|y| !x.contains_pair(y)))
        .collect();
    let primes = avoiding
        .iter()
        .filter(|x| !avoiding.iter().any(|y| y != *x && x.is_subset(y)))
        .filter(|x| is_prime(p, x))
        .map(|x| (*x).clone())
        .collect();
    Ok(Separation::Separated { sequence, primes })
}

/// Quotient by a pair-congruence; returns the pair and the projection.
pub fn quotient_pair(p: &FinitePair, c: &Congruence) -> Result<(FinitePair, Vec<usize>)> {
    let n = p.size();
    if c.size() != n {
        return Err(Error::Structure("congruence lives on another carrier".into()));
    }
    let classes = c.classes();
    let k = classes.len();
    let s = p.semiring();
    let mut add = vec![vec![0; k]; k];
    let mut mul = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let (ra, rb) = (classes[i][0], classes[j][0]);
            add[i][j] = c.class_of(s.add(&ra, &rb));
            mul[i][j] = c.class_of(s.mul(&ra, &rb));
            for &x in &classes[i] {
                for &y in &classes[j] {
                    if c.class_of(s.add(&x, &y)) != add[i][j] || c.class_of(s.mul(&x, &y)) != mul[i][j] {
                        return Err(Error::Consistency(format!(
                            "operations not constant on classes at ({}, {})",
                            p.label(&x),
                            p.label(&y)
                        )));
                    }
                }
            }
        }
    }
    let labels: Vec<String> = classes.iter().map(|cl| format!("[{}]", p.label(&cl[0]))).collect();
    let q = FiniteSemiring::new(labels, add, mul, c.class_of(p.zero()), c.class_of(p.one()))?;
    let a0: Vec<usize> = (0..k).filter(|&i| classes[i].iter().any(|x| p.in_a0(x))).collect();
    let t: Vec<usize> = (0..k)
        .filter(|&i| classes[i].iter().any(|x| p.is_tangible(x)))
        .collect();
    let mut fp = FinitePair::new(format!("{} quotient", p.name()), q, &a0, &t)?;
    if let Some(neg) = p.negation_table() {
        let img: Option<Vec<usize>> = classes
            .iter()
            .map(|cl| {
                let v = c.class_of(neg[cl[0]]);
                cl.iter().all(|&x| c.class_of(neg[x]) == v).then_some(v)
            })
            .collect();
        if let Some(img) = img {
            fp = fp.with_negation(img)?;
        }
    }
    Ok((fp, c.class_ids().to_vec()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub kernel: Congruence,
    /// Whether A0 is sent into the target's A0.
    pub preserves_a0: bool,
    /// Whether the kernel avoids `T x A0`.
    pub pair_congruence: bool,
    /// Whether `[a] -> f(a)` is an injective homomorphism from the quotient.
    pub quotient_embeds: bool,
}

/// Kernel of a semiring homomorphism given by its image table.
pub fn congruence_kernel(src: &FinitePair, dst: &FinitePair, f: &[usize]) -> Result<KernelReport> {
    let n = src.size();
    if f.len() != n || f.iter().any(|&y| y >= dst.size()) {
        return Err(Error::Structure("map table has wrong shape".into()));
    }
    let l = |a: usize| src.label(&a);
    if f[src.zero()] != dst.zero() || f[src.one()] != dst.one() {
        return Err(Error::Precondition("map does not preserve zero and one".into()));
    }
    for a in 0..n {
        for b in 0..n {
            if f[src.add(&a, &b)] != dst.add(&f[a], &f[b]) {
                return Err(Error::Precondition(format!("map is not additive at ({}, {})", l(a), l(b))));
            }
            if f[src.mul(&a, &b)] != dst.mul(&f[a], &f[b]) {
                return Err(Error::Precondition(format!(
                    "map is not multiplicative at ({}, {})",
                    l(a),
                    l(b)
                )));
            }
        }
    }
    let kernel = Congruence::from_classes(f);
    let preserves_a0 = (0..n).all(|a| !src.in_a0(&a) || dst.in_a0(&f[a]));
    let pair_congruence = is_pair_congruence(src, &kernel);
    let (q, proj) = quotient_pair(src, &kernel)?;
    let mut induced = vec![usize::MAX; q.size()];
    for a in 0..n {
        induced[proj[a]] = f[a];
    }
    let injective = induced.iter().collect::<BTreeSet<_>>().len() == induced.len();
    let hom = (0..q.size()).all(|i| {
        (0..q.size()).all(|j| {
            induced[q.add(&i, &j)] == dst.add(&induced[i], &induced[j])
                && induced[q.mul(&i, &j)] == dst.mul(&induced[i], &induced[j])
        })
    });
    Ok(KernelReport {
        kernel,
        preserves_a0,
        pair_congruence,
        quotient_embeds: injective && hom,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strictness {
    Strict,
    Equal,
    UnknownAtBound,
}

/// One link `C_i <= C_j` of a probed chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub from: i64,
    pub to: i64,
    pub included: Verdict,
    pub inclusion_witness: Option<Vec<String>>,
    pub strictness: Strictness,
    pub separating: Option<Vec<String>>,
    pub window: Option<i64>,
}

/// Probes consecutive links of a chain of relations given by membership,
/// over the carrier's domain (sampled when windowed).
pub fn acc_chain_probe<S: Semiring>(
    s: &S,
    indices: &[i64],
    member: impl Fn(i64, &S::Elem, &S::Elem) -> bool + Sync,
) -> Vec<ChainLink> {
    let dom: Domain<S::Elem> = s.domain();
    let limit = (!dom.is_exhaustive()).then_some(SAMPLE_LIMIT);
    let ix = index_tuples(dom.len(), 2, limit, 41);
    let e = &dom.elements;
    indices
        .windows(2)
        .map(|w| {
            let (i, j) = (w[0], w[1]);
            let window = dom.window;
            if i == j {
                return ChainLink {
                    from: i,
                    to: j,
                    included: Verdict::Holds,
                    inclusion_witness: None,
                    strictness: Strictness::Equal,
                    separating: None,
                    window,
                };
            }
            let lab = |t: &Vec<usize>| vec![s.label(&e[t[0]]), s.label(&e[t[1]])];
            let escape = ix
                .iter()
                .find(|t| member(i, &e[t[0]], &e[t[1]]) && !member(j, &e[t[0]], &e[t[1]]));
            let sep = ix
                .iter()
                .find(|t| member(j, &e[t[0]], &e[t[1]]) && !member(i, &e[t[0]], &e[t[1]]));
            let included = match escape {
                Some(_) => Verdict::Fails,
                None => Verdict::from_search(false, dom.is_exhaustive()).not(),
            };
            let strictness = match (sep, dom.is_exhaustive()) {
                (Some(_), _) => Strictness::Strict,
                (None, true) => Strictness::Equal,
                (None, false) => Strictness::UnknownAtBound,
            };
            ChainLink {
                from: i,
                to: j,
                included,
                inclusion_witness: escape.map(lab),
                strictness,
                separating: sep.map(lab),
                window,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::semiring::{nmax_trunc, MaxPlus, MaxPlusValue};

    /// All partitions of `0..n` as class-id vectors, by restricted growth.
    fn partitions(n: usize) -> Vec<Vec<usize>> {
        fn go(i: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == n {
                out.push(cur.clone());
                return;
            }
            let m = cur.iter().max().map_or(0, |x| x + 1);
            for c in 0..=m {
                cur.push(c);
                go(i + 1, n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, n, &mut Vec::new(), &mut out);
        out
    }

    /// Brute-force lattice: filter every partition by compatibility.
    fn lattice_oracle(p: &FinitePair) -> BTreeSet<Congruence> {
        let n = p.size();
        partitions(n)
            .into_iter()
            .map(|ids| Congruence::from_classes(&ids))
            .filter(|c| {
                (0..n).all(|a| {
                    (0..n).all(|b| {
                        !c.contains(a, b)
                            || (0..n).all(|x| {
                                c.contains(p.add(&a, &x), p.add(&b, &x))
                                    && c.contains(p.mul(&a, &x), p.mul(&b, &x))
                                    && c.contains(p.mul(&x, &a), p.mul(&x, &b))
                            })
                    })
                })
            })
            .filter(|c| is_pair_congruence(p, c))
            .collect()
    }

    #[test]
    fn twist_examples() {
        let b = crate::semiring::boolean();
        assert_eq!(twist_product(&b, &(0, 1), &(0, 1)), (1, 0));
        for x in all_twists(2) {
            let d = twist_product(&b, &(1, 1), &x);
            assert_eq!(d.0, d.1);
        }
    }

    #[test]
    fn lattice_matches_partition_filter() {
        for p in all_pairs() {
            let lat = enumerate_congruences(&p).unwrap();
            let got: BTreeSet<Congruence> = lat.congruences.iter().cloned().collect();
            assert_eq!(got, lattice_oracle(&p), "{}", p.name());
            assert!(lat.congruences[0].is_diagonal());
        }
    }

    #[test]
    fn boolean_has_only_the_diagonal() {
        let p = boolean_pair();
        let lat = enumerate_congruences(&p).unwrap();
        assert_eq!(lat.len(), 1);
        let spec = prime_spectrum_krull(&p, &lat);
        assert_eq!(spec.primes.len(), 1);
        assert_eq!(spec.krull_dimension, Some(0));
        assert!(matches!(
            generate_congruence(&p, &[(1, 0)]),
            Err(Error::Inadmissible(t, z)) if t == "1" && z == "0"
        ));
    }

    #[test]
    fn congruences_are_closed_under_switch_and_twist() {
        for p in all_pairs() {
            let s = p.semiring();
            for c in enumerate_congruences(&p).unwrap().congruences {
                let pairs = c.pairs();
                for x in &pairs {
                    assert!(c.contains_pair(&switch(x)));
                    for y in &pairs {
                        assert!(c.contains_pair(&twist_product(s, x, y)));
                    }
                }
            }
        }
    }

    #[test]
    fn criteria_agree_with_definitions() {
        for p in admissible_pairs() {
            let lat = enumerate_congruences(&p).unwrap();
            for c in &lat.congruences {
                let cl = classify_congruence(&p, &lat, c);
                assert_eq!(cl.semiprime, is_semiprime_in_lattice(&p, &lat, c), "{}", p.name());
                assert_eq!(cl.prime, is_prime_in_lattice(&p, &lat, c), "{}", p.name());
                assert_eq!(cl.prime, cl.semiprime && cl.irreducible, "{}", p.name());
            }
        }
    }

    #[test]
    fn unrestricted_criterion_overshoots() {
        let p = doubled_boolean();
        let lat = enumerate_congruences(&p).unwrap();
        let d = &lat.congruences[0];
        assert!(semiprime_witness_with(&p, d, false).is_some());
        assert!(semiprime_witness_with(&p, d, true).is_none());
        assert!(is_semiprime_in_lattice(&p, &lat, d));
    }

    #[test]
    fn restricted_criterion_still_misses_a_transitive_join() {
        let s = doubled_boolean().semiring().clone();
        let p = FinitePair::new("zero only", s, &[0], &[1, 2, 3]).unwrap();
        let lat = enumerate_congruences(&p).unwrap();
        let d = &lat.congruences[0];
        let b = semiprime_witness(&p, d).unwrap();
        assert_eq!((p.label(&b.0), p.label(&b.1)), ("(0,1)".into(), "(1,1)".into()));
        let joined = extend_congruence(&p, d, &[b]).unwrap();
        assert!(!twist_contained(p.semiring(), &joined, &joined, d));
        assert!(is_semiprime_in_lattice(&p, &lat, d));
    }

    #[test]
    fn sweep_of_small_structures() {
        let mut mismatches = Vec::new();
        for (name, s) in small_carriers() {
            for p in admissible_structures(&s, &name) {
                let lat = enumerate_congruences(&p).unwrap();
                assert_eq!(
                    lat.congruences.iter().cloned().collect::<BTreeSet<_>>(),
                    lattice_oracle(&p)
                );
                let defs: Vec<Congruence> = lat
                    .congruences
                    .iter()
                    .filter(|c| is_prime_in_lattice(&p, &lat, c))
                    .cloned()
                    .collect();
                let meets = if defs.is_empty() { BTreeSet::new() } else { intersections(&defs) };
                for c in &lat.congruences {
                    assert_eq!(is_semiprime_in_lattice(&p, &lat, c), meets.contains(c), "{}", p.name());
                    assert_eq!(
                        is_prime(&p, c),
                        is_semiprime(&p, c) && is_irreducible(&lat, c),
                        "{}",
                        p.name()
                    );
                    if is_semiprime(&p, c) != is_semiprime_in_lattice(&p, &lat, c) {
                        mismatches.push(p.name().to_string());
                    }
                }
            }
        }
        mismatches.dedup();
        assert_eq!(mismatches, ["double B A0=[\"(0,0)\"] T=[\"(0,1)\", \"(1,0)\"]", "double B A0=[\"(0,0)\"] T=[\"(0,1)\", \"(1,0)\", \"(1,1)\"]"]);
    }

    #[test]
    fn element_congruence_matches_seed_closure() {
        let s = integers_mod_pair_semiring();
        for a in 0..s.size() {
            let direct = element_congruence(&s, a).unwrap();
            let seeded = close_semiring(&s, &Congruence::diagonal(s.size()), &[(a, 0)]);
            assert_eq!(direct, seeded);
        }
    }

    fn integers_mod_pair_semiring() -> FiniteSemiring {
        crate::semiring::integers_mod(6).unwrap()
    }

    #[test]
    fn radical_is_extensive_idempotent_and_matches_primes() {
        for p in admissible_pairs() {
            if !p.semiring().is_commutative() {
                continue;
            }
            let lat = enumerate_congruences(&p).unwrap();
            for c in &lat.congruences {
                let r = radical(&p, &lat, c).unwrap();
                assert!(r.contains_original);
                assert!(r.semiprime);
                assert_eq!(r.prime_intersection.as_ref(), Some(&r.radical), "{}", p.name());
                let again = radical(&p, &lat, &r.radical).unwrap();
                assert_eq!(again.radical, r.radical);
            }
        }
    }

    #[test]
    fn literal_radical_of_doubled_diagonal_meets_tangibles() {
        let p = doubled_boolean();
        let lat = enumerate_congruences(&p).unwrap();
        let d = &lat.congruences[0];
        let b = (p.index_of("(0,1)").unwrap(), p.index_of("(1,1)").unwrap());
        assert!(twist_power_set(p.semiring(), d).contains(&b));
        assert!(extend_congruence(&p, d, &twist_power_set(p.semiring(), d)).is_err());
        let r = radical(&p, &lat, d).unwrap();
        assert!(r.escapes.contains(&b));
        assert_eq!(&r.radical, d);
        assert_eq!(r.prime_intersection.as_ref(), Some(d));
    }

    #[test]
    fn quotient_by_diagonal_is_isomorphic() {
        let p = doubled_boolean();
        let (q, proj) = quotient_pair(&p, &Congruence::diagonal(4)).unwrap();
        assert_eq!(proj, vec![0, 1, 2, 3]);
        assert_eq!(q.semiring().add_table(), p.semiring().add_table());
        assert_eq!(q.semiring().mul_table(), p.semiring().mul_table());
        assert_eq!(q.a0_indices(), p.a0_indices());
    }

    #[test]
    fn kernel_of_sum_map_on_doubled_boolean() {
        let p = doubled_boolean();
        let b = boolean_pair();
        let f: Vec<usize> = (0..4)
            .map(|i| {
                let l = p.label(&i);
                usize::from(l != "(0,0)")
            })
            .collect();
        let k = congruence_kernel(&p, &b, &f).unwrap();
        assert_eq!(k.kernel.num_classes(), 2);
        assert!(!k.pair_congruence);
        assert!(!k.preserves_a0);
        assert!(k.quotient_embeds);
        let id: Vec<usize> = (0..4).collect();
        let k = congruence_kernel(&p, &p, &id).unwrap();
        assert!(k.kernel.is_diagonal());
    }

    #[test]
    fn kernel_of_projection_is_the_congruence() {
        for p in admissible_pairs() {
            for c in enumerate_congruences(&p).unwrap().congruences {
                let (q, proj) = quotient_pair(&p, &c).unwrap();
                let k = congruence_kernel(&p, &q, &proj).unwrap();
                assert_eq!(k.kernel, c);
                assert!(k.pair_congruence && k.preserves_a0);
            }
        }
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let p = doubled_boolean();
        let f = vec![0, 1, 0, 1];
        assert!(matches!(congruence_kernel(&p, &p, &f), Err(Error::Precondition(_))));
    }

    #[test]
    fn levitzki_on_semiprime_and_not() {
        for p in admissible_pairs() {
            let lat = enumerate_congruences(&p).unwrap();
            for c in &lat.congruences {
                let semiprime = is_semiprime(&p, c);
                for x in all_twists(p.size()).into_iter().filter(|x| !c.contains_pair(x)) {
                    match levitzki_separation(&p, &lat, c, x).unwrap() {
                        Separation::Stuck { element } => {
                            assert!(!semiprime || extend_congruence(&p, c, &[element]).is_err())
                        }
                        Separation::Separated { primes, .. } => {
                            assert!(!semiprime || !primes.is_empty(), "{}", p.name());
                            for q in &primes {
                                assert!(c.is_subset(q) && !q.contains_pair(&x));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nmax_chain_stops_growing() {
        let s = nmax_trunc(12).unwrap();
        let n = s.size();
        let one = s.index_of("1").unwrap();
        let closures: Vec<Congruence> = (1..=5)
            .map(|i| {
                let seeds: Vec<Twist<usize>> =
                    (2..=i).map(|k| (one, s.index_of(&k.to_string()).unwrap())).collect();
                close_semiring(&s, &Congruence::diagonal(n), &seeds)
            })
            .collect();
        let links = acc_chain_probe(&s, &[1, 2, 3, 4, 5], |i, a, b| {
            closures[(i - 1) as usize].contains(*a, *b)
        });
        assert_eq!(links[0].strictness, Strictness::Strict);
        assert!(links.iter().all(|l| l.included == Verdict::Holds));
        assert!(links[1..].iter().all(|l| l.strictness == Strictness::Equal));
    }

    #[test]
    fn max_plus_divisibility_chain() {
        let z = MaxPlus::integers(12);
        let member = |i: i64, a: &MaxPlusValue, b: &MaxPlusValue| match (a, b) {
            (MaxPlusValue::Fin(x), MaxPlusValue::Fin(y)) => (y - x).rem_euclid(i) == 0,
            _ => a == b,
        };
        let links = acc_chain_probe(&z, &[8, 4, 2, 1], member);
        for l in &links {
            assert_eq!(l.included, Verdict::Unknown);
            assert_eq!(l.strictness, Strictness::Strict);
        }
        let up = acc_chain_probe(&z, &[1, 2], member);
        assert_eq!(up[0].included, Verdict::Fails);
        let same = acc_chain_probe(&z, &[3, 3], member);
        assert_eq!(same[0].strictness, Strictness::Equal);
    }
}
