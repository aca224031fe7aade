use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{index_tuples, tally, AxiomReport, Domain, Outcome, Tally, Verdict, SAMPLE_LIMIT};
use crate::semiring::{FiniteSemiring, Semiring};

/// Which surpassing relation a question is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurpassKind {
    /// `b1 <= b2` iff `b2 = b1 + y` for some `y` in A0.
    PrecedesZero,
    SubsetInclusion,
    Custom,
}

/// A semiring with a quasi-zero sub-semiring A0 and a tangible monoid T.
///
/// The embedding of A0 is always the inclusion. Pairs that carry their own
/// surpassing relation report it through [`Pair::native_relation`] and
/// [`Pair::relation`].
pub trait Pair: Semiring {
    fn in_a0(&self, a: &Self::Elem) -> bool;
    fn is_tangible(&self, a: &Self::Elem) -> bool;

    fn native_relation(&self) -> SurpassKind {
        SurpassKind::PrecedesZero
    }

    /// The pair's own relation, when it is not the A0-translation one.
    fn relation(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<bool> {
        None
    }

    /// Closed-form decision of `a <=0 b` for carriers where the witness
    /// search would otherwise be windowed.
    fn precedes_zero_exact(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<bool> {
        None
    }

    fn negate(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// True when T is known to span the carrier from how it was built.
    fn spanning_by_construction(&self) -> bool {
        false
    }

    fn a0_domain(&self) -> Domain<Self::Elem> {
        self.domain().filter(|x| self.in_a0(x))
    }

    fn tangible_domain(&self) -> Domain<Self::Elem> {
        self.domain().filter(|x| self.is_tangible(x))
    }
}

/// Outcome of a universally quantified check. `window` is set when only a
/// sample of an infinite carrier was inspected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub holds: bool,
    pub window: Option<i64>,
    pub witness: Option<Vec<String>>,
}

impl Decision {
    pub fn from_counterexample(witness: Option<Vec<String>>, window: Option<i64>) -> Self {
        Decision {
            holds: witness.is_none(),
            window,
            witness,
        }
    }

    pub fn verdict(&self) -> Verdict {
        match (self.holds, self.window) {
            (false, _) => Verdict::Fails,
            (true, None) => Verdict::Holds,
            (true, Some(_)) => Verdict::Unknown,
        }
    }
}

/// Evaluates `b1 <= b2` for the requested relation.
pub fn surpasses<P: Pair>(p: &P, kind: SurpassKind, b1: &P::Elem, b2: &P::Elem) -> Result<Verdict> {
    match kind {
        SurpassKind::PrecedesZero => {
            if let Some(v) = p.precedes_zero_exact(b1, b2) {
                return Ok(Verdict::from_bool(v));
            }
            let a0 = p.a0_domain();
            let found = a0.elements.iter().any(|y| p.add(b1, y) == *b2);
            Ok(Verdict::from_search(found, a0.is_exhaustive()))
        }
        other if other == p.native_relation() => p
            .relation(b1, b2)
            .map(Verdict::from_bool)
            .ok_or_else(|| {
                Error::Evaluation(format!(
                    "relation evaluator failed on ({}, {})",
                    p.label(b1),
                    p.label(b2)
                ))
            }),
        other => Err(Error::Evaluation(format!(
            "pair carries no {other:?} relation"
        ))),
    }
}

/// Finite pair on `0..n` with optional explicit relation and negation tables.
#[derive(Debug, Clone)]
pub struct FinitePair {
    name: String,
    semiring: FiniteSemiring,
    a0: Vec<bool>,
    tangible: Vec<bool>,
    relation_kind: SurpassKind,
    relation: Option<Vec<Vec<bool>>>,
    negation: Option<Vec<usize>>,
    preceq0: OnceLock<Vec<Vec<bool>>>,
}

impl FinitePair {
    pub fn new(
        name: impl Into<String>,
        semiring: FiniteSemiring,
        a0: &[usize],
        tangibles: &[usize],
    ) -> Result<Self> {
        let n = semiring.size();
        let mut a0m = vec![false; n];
        let mut tm = vec![false; n];
        for (set, mask) in [(a0, &mut a0m), (tangibles, &mut tm)] {
            for &i in set {
                if i >= n {
                    return Err(Error::Structure(format!("index {i} outside 0..{n}")));
                }
                mask[i] = true;
            }
        }
        Ok(FinitePair {
            name: name.into(),
            semiring,
            a0: a0m,
            tangible: tm,
            relation_kind: SurpassKind::PrecedesZero,
            relation: None,
            negation: None,
            preceq0: OnceLock::new(),
        })
    }

    /// Replaces the native relation by an explicit table.
    pub fn with_relation(mut self, kind: SurpassKind, table: Vec<Vec<bool>>) -> Result<Self> {
        let n = self.size();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Structure("relation table is not n x n".into()));
        }
        self.relation_kind = kind;
        self.relation = Some(table);
        Ok(self)
    }

    pub fn with_negation(mut self, image: Vec<usize>) -> Result<Self> {
        if image.len() != self.size() || image.iter().any(|&i| i >= self.size()) {
            return Err(Error::Structure("negation table has wrong shape".into()));
        }
        self.negation = Some(image);
        Ok(self)
    }

    /// Tabulates a pair whose domain is its whole carrier. Returns the
    /// element behind each index.
    pub fn from_pair<P: Pair>(p: &P, name: impl Into<String>) -> Result<(Self, Vec<P::Elem>)> {
        let (semiring, elems) = FiniteSemiring::tabulate(p)?;
        let a0: Vec<usize> = (0..elems.len()).filter(|&i| p.in_a0(&elems[i])).collect();
        let t: Vec<usize> = (0..elems.len())
            .filter(|&i| p.is_tangible(&elems[i]))
            .collect();
        let mut fp = FinitePair::new(name, semiring, &a0, &t)?;
        let idx = |x: &P::Elem| elems.binary_search(x).ok();
        if p.native_relation() != SurpassKind::PrecedesZero {
            let mut table = vec![vec![false; elems.len()]; elems.len()];
            for (i, a) in elems.iter().enumerate() {
                for (j, b) in elems.iter().enumerate() {
                    table[i][j] = p.relation(a, b).ok_or_else(|| {
                        Error::Evaluation("relation evaluator failed while tabulating".into())
                    })?;
                }
            }
            fp = fp.with_relation(p.native_relation(), table)?;
        }
        let neg: Option<Vec<usize>> = elems
            .iter()
            .map(|x| p.negate(x).and_then(|y| idx(&y)))
            .collect();
        if let Some(neg) = neg {
            fp = fp.with_negation(neg)?;
        }
        Ok((fp, elems))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn semiring(&self) -> &FiniteSemiring {
        &self.semiring
    }

    pub fn size(&self) -> usize {
        self.semiring.size()
    }

    pub fn a0_indices(&self) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.a0[i]).collect()
    }

    pub fn tangible_indices(&self) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.tangible[i]).collect()
    }

    pub fn relation_table(&self) -> Option<&Vec<Vec<bool>>> {
        self.relation.as_ref()
    }

    pub fn negation_table(&self) -> Option<&Vec<usize>> {
        self.negation.as_ref()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.semiring.index_of(label)
    }

    /// Looks up several labels at once, failing on the first unknown one.
    pub fn indices(&self, labels: &[&str]) -> Result<Vec<usize>> {
        labels
            .iter()
            .map(|l| {
                self.index_of(l)
                    .ok_or_else(|| Error::Config(format!("unknown element {l}")))
            })
            .collect()
    }

    /// The `<=0` table, computed once.
    pub fn preceq0_table(&self) -> &Vec<Vec<bool>> {
        self.preceq0.get_or_init(|| {
            let n = self.size();
            let a0 = self.a0_indices();
            let mut t = vec![vec![false; n]; n];
            for (b1, row) in t.iter_mut().enumerate() {
                for &y in &a0 {
                    row[self.semiring.add(&b1, &y)] = true;
                }
            }
            t
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl Semiring for FinitePair {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.semiring.zero()
    }
    fn one(&self) -> usize {
        self.semiring.one()
    }
    fn add(&self, a: &usize, b: &usize) -> usize {
        self.semiring.add(a, b)
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.semiring.mul(a, b)
    }
    fn domain(&self) -> Domain<usize> {
        self.semiring.domain()
    }
    fn label(&self, a: &usize) -> String {
        self.semiring.label(a)
    }
}

impl Pair for FinitePair {
    fn in_a0(&self, a: &usize) -> bool {
        self.a0[*a]
    }
    fn is_tangible(&self, a: &usize) -> bool {
        self.tangible[*a]
    }
    fn native_relation(&self) -> SurpassKind {
        self.relation_kind
    }
    fn relation(&self, a: &usize, b: &usize) -> Option<bool> {
        self.relation.as_ref().map(|t| t[*a][*b])
    }
    fn precedes_zero_exact(&self, a: &usize, b: &usize) -> Option<bool> {
        Some(self.preceq0_table()[*a][*b])
    }
    fn negate(&self, a: &usize) -> Option<usize> {
        self.negation.as_ref().map(|t| t[*a])
    }
}

fn limit_for<E: Clone>(d: &Domain<E>) -> Option<usize> {
    (!d.is_exhaustive()).then_some(SAMPLE_LIMIT)
}

/// Sub-semiring, monoid, disjointness and spanning conditions.
pub fn verify_admissible<P: Pair>(p: &P) -> AxiomReport {
    let dom = p.domain();
    let mut report = AxiomReport::new("admissible pair", dom.window);
    let a0 = p.a0_domain();
    let t = p.tangible_domain();
    let z = p.zero();
    let o = p.one();

    report.push(
        "zero in A0",
        tally(&[()], |_| Outcome::require(p.in_a0(&z), || vec![p.label(&z)])),
    );
    let a0_pairs = index_tuples(a0.len(), 2, limit_for(&a0), 11);
    report.push(
        "A0 closed under addition",
        tally(&a0_pairs, |ix| {
            let (x, y) = (&a0.elements[ix[0]], &a0.elements[ix[1]]);
            Outcome::require(p.in_a0(&p.add(x, y)), || vec![p.label(x), p.label(y)])
        }),
    );
    report.push(
        "A0 closed under multiplication",
        tally(&a0_pairs, |ix| {
            let (x, y) = (&a0.elements[ix[0]], &a0.elements[ix[1]]);
            Outcome::require(p.in_a0(&p.mul(x, y)), || vec![p.label(x), p.label(y)])
        }),
    );
    report.push(
        "one is tangible",
        tally(&[()], |_| {
            Outcome::require(p.is_tangible(&o), || vec![p.label(&o)])
        }),
    );
    let t_pairs = index_tuples(t.len(), 2, limit_for(&t), 12);
    report.push(
        "T closed under multiplication",
        tally(&t_pairs, |ix| {
            let (x, y) = (&t.elements[ix[0]], &t.elements[ix[1]]);
            Outcome::require(p.is_tangible(&p.mul(x, y)), || {
                vec![p.label(x), p.label(y)]
            })
        }),
    );
    report.push(
        "A0 and T disjoint",
        tally(&dom.elements, |x| {
            Outcome::require(!(p.in_a0(x) && p.is_tangible(x)), || vec![p.label(x)])
        }),
    );
    if dom.is_exhaustive() {
        let mut reach: std::collections::BTreeSet<P::Elem> = std::collections::BTreeSet::new();
        reach.insert(z.clone());
        let mut frontier = vec![z.clone()];
        while let Some(x) = frontier.pop() {
            for a in &t.elements {
                let y = p.add(&x, a);
                if reach.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let missing = dom.elements.iter().find(|x| !reach.contains(*x));
        report.push(
            "T spans",
            Tally {
                checked: dom.len() as u64,
                unknown: 0,
                witness: missing.map(|m| vec![p.label(m)]),
            },
        );
    } else {
        report.push(
            "T spans",
            Tally {
                checked: 0,
                unknown: u64::from(!p.spanning_by_construction()),
                witness: None,
            },
        );
    }
    report
}

/// Every carrier element tangible or quasi-zero.
pub fn is_shallow<P: Pair>(p: &P) -> Decision {
    let dom = p.domain();
    let bad = dom
        .elements
        .iter()
        .find(|x| !p.is_tangible(x) && !p.in_a0(x));
    Decision::from_counterexample(bad.map(|x| vec![p.label(x)]), dom.window)
}

fn outcome_of(v: Result<Verdict>, witness: impl FnOnce() -> Vec<String>) -> Outcome {
    match v {
        Ok(v) => Outcome::from_verdict(v, witness),
        Err(_) => Outcome::Unknown,
    }
}

/// Checks the surpassing-relation axioms for `kind` on `p`. The strong
/// variant is checked when asked for, and always for `<=0` on shallow pairs.
pub fn verify_surpassing<P: Pair>(p: &P, kind: SurpassKind, strong: bool) -> AxiomReport {
    let dom = p.domain();
    let mut report = AxiomReport::new(format!("surpassing relation {kind:?}"), dom.window);
    let e = &dom.elements;
    let rel = |a: &P::Elem, b: &P::Elem| surpasses(p, kind, a, b);
    let z = p.zero();
    let lab2 = |a: &P::Elem, b: &P::Elem| vec![p.label(a), p.label(b)];

    let a0 = p.a0_domain();
    report.push(
        "zero below A0",
        tally(&a0.elements, |c| outcome_of(rel(&z, c), || lab2(&z, c))),
    );

    let limit = limit_for(&dom);
    let pair_ix = index_tuples(e.len(), 2, limit, 21);
    let related: Vec<(usize, usize)> = pair_ix
        .iter()
        .filter(|ix| matches!(rel(&e[ix[0]], &e[ix[1]]), Ok(Verdict::Holds)))
        .map(|ix| (ix[0], ix[1]))
        .collect();
    let rel_pairs: Vec<Vec<usize>> = index_tuples(related.len(), 2, limit, 22);

    report.push(
        "reflexive",
        tally(e, |a| outcome_of(rel(a, a), || vec![p.label(a)])),
    );
    report.push(
        "transitive",
        tally(&rel_pairs, |ix| {
            let (a, b) = related[ix[0]];
            let (c, d) = related[ix[1]];
            if b != c {
                return Outcome::Ok;
            }
            outcome_of(rel(&e[a], &e[d]), || {
                vec![p.label(&e[a]), p.label(&e[b]), p.label(&e[d])]
            })
        }),
    );
    report.push(
        "additive",
        tally(&rel_pairs, |ix| {
            let (b1, b2) = related[ix[0]];
            let (c1, c2) = related[ix[1]];
            let lhs = p.add(&e[b1], &e[c1]);
            let rhs = p.add(&e[b2], &e[c2]);
            outcome_of(rel(&lhs, &rhs), || {
                vec![
                    p.label(&e[b1]),
                    p.label(&e[b2]),
                    p.label(&e[c1]),
                    p.label(&e[c2]),
                ]
            })
        }),
    );
    let t = p.tangible_domain();
    let t_rel: Vec<(usize, usize)> = (0..t.len())
        .flat_map(|a| (0..related.len()).map(move |r| (a, r)))
        .collect();
    report.push(
        "tangible action",
        tally(&t_rel, |&(a, r)| {
            let (b1, b2) = related[r];
            let a = &t.elements[a];
            outcome_of(rel(&p.mul(a, &e[b1]), &p.mul(a, &e[b2])), || {
                vec![p.label(a), p.label(&e[b1]), p.label(&e[b2])]
            })
        }),
    );
    report.push(
        "equality on tangibles",
        tally(&related, |&(a, b)| {
            let (x, y) = (&e[a], &e[b]);
            Outcome::require(!(p.is_tangible(x) && p.is_tangible(y)) || x == y, || {
                lab2(x, y)
            })
        }),
    );
    let shallow = is_shallow(p).holds;
    if strong || (shallow && kind == SurpassKind::PrecedesZero) {
        report.push(
            "strong",
            tally(&related, |&(b, a)| {
                let (x, y) = (&e[b], &e[a]);
                Outcome::require(!p.is_tangible(y) || x == y, || lab2(x, y))
            }),
        );
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyNClass {
    None,
    PropertyN,
    NegCompatible,
    TangiblySeparating,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyNReport {
    /// Strongest class that applies, in the order none < N < neg-compatible <
    /// tangibly separating. The flags below are independent.
    pub class: PropertyNClass,
    pub property_n: bool,
    pub neg_compatible: bool,
    pub tangibly_separating: bool,
    /// Each tangible with the tangibles `a'` such that `a + a'` lies in A0.
    pub quasi_negatives: BTreeMap<String, Vec<String>>,
    pub separation_failure: Option<Vec<String>>,
    pub window: Option<i64>,
}

/// For each tangible `a`, the tangibles `a'` with `a + a'` in A0.
pub fn quasi_negatives<P: Pair>(p: &P) -> Vec<(P::Elem, Vec<P::Elem>)> {
    let t = p.tangible_domain();
    t.elements
        .iter()
        .map(|a| {
            let qs = t
                .elements
                .iter()
                .filter(|b| p.in_a0(&p.add(a, b)))
                .cloned()
                .collect();
            (a.clone(), qs)
        })
        .collect()
}

pub fn property_n_status<P: Pair>(p: &P) -> PropertyNReport {
    let t = p.tangible_domain();
    let qn = quasi_negatives(p);
    let property_n = qn.iter().all(|(_, q)| !q.is_empty());
    let neg_compatible = qn.iter().all(|(_, q)| q.len() == 1);
    let mut separation_failure = None;
    'outer: for (a, qs) in &qn {
        for c in &t.elements {
            if c == a {
                continue;
            }
            if !qs.iter().any(|a2| p.is_tangible(&p.add(c, a2))) {
                separation_failure = Some(vec![p.label(c), p.label(a)]);
                break 'outer;
            }
        }
    }
    let tangibly_separating = property_n && separation_failure.is_none();
    let class = if tangibly_separating {
        PropertyNClass::TangiblySeparating
    } else if neg_compatible {
        PropertyNClass::NegCompatible
    } else if property_n {
        PropertyNClass::PropertyN
    } else {
        PropertyNClass::None
    };
    PropertyNReport {
        class,
        property_n,
        neg_compatible,
        tangibly_separating,
        quasi_negatives: qn
            .iter()
            .map(|(a, q)| (p.label(a), p.labels(q)))
            .collect(),
        separation_failure,
        window: t.window,
    }
}

/// Negation map on a finite pair, stored as an image table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegationMap {
    pub image: Vec<usize>,
}

impl NegationMap {
    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }
}

/// Extends the unique quasi-negative on T additively to the whole carrier.
pub fn derive_negation(p: &FinitePair) -> Result<NegationMap> {
    let qn = quasi_negatives(p);
    let mut prime: HashMap<usize, usize> = HashMap::new();
    for (a, q) in &qn {
        if q.len() != 1 {
            return Err(Error::Precondition(format!(
                "pair is not neg-compatible: {} has {} quasi-negatives",
                p.label(a),
                q.len()
            )));
        }
        prime.insert(*a, q[0]);
    }
    let tangibles = p.tangible_indices();
    let n = p.size();
    let mut image: Vec<Option<usize>> = vec![None; n];
    let z = p.zero();
    image[z] = Some(z);
    let mut work = vec![z];
    while let Some(x) = work.pop() {
        let ix = image[x].expect("processed elements have images");
        for &a in &tangibles {
            let y = p.add(&x, &a);
            let iy = p.add(&ix, &prime[&a]);
            match image[y] {
                Some(prev) if prev != iy => {
                    return Err(Error::Consistency(format!(
                        "{} gets images {} and {}",
                        p.label(&y),
                        p.label(&prev),
                        p.label(&iy)
                    )))
                }
                Some(_) => {}
                None => {
                    image[y] = Some(iy);
                    work.push(y);
                }
            }
        }
    }
    let image: Vec<usize> = image
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                Error::Precondition(format!("{} is not a sum of tangibles", p.label(&i)))
            })
        })
        .collect::<Result<_>>()?;
    let map = NegationMap { image };
    let report = verify_negation(p, &map);
    if let Some(bad) = report.violations().next() {
        return Err(Error::Consistency(format!(
            "derived map breaks {}: {:?}",
            bad.axiom, bad.witness
        )));
    }
    Ok(map)
}

/// Laws of a negation map on a finite pair.
pub fn verify_negation(p: &FinitePair, neg: &NegationMap) -> AxiomReport {
    let n = p.size();
    let mut report = AxiomReport::new("negation map", None);
    let all: Vec<usize> = (0..n).collect();
    let pairs = index_tuples(n, 2, None, 0);
    let l = |x: usize| p.label(&x);
    report.push(
        "order at most two",
        tally(&all, |&a| Outcome::require(neg.apply(neg.apply(a)) == a, || vec![l(a)])),
    );
    report.push(
        "additive",
        tally(&pairs, |ix| {
            let (a, b) = (ix[0], ix[1]);
            Outcome::require(
                neg.apply(p.add(&a, &b)) == p.add(&neg.apply(a), &neg.apply(b)),
                || vec![l(a), l(b)],
            )
        }),
    );
    report.push(
        "multiplicative",
        tally(&pairs, |ix| {
            let (a, b) = (ix[0], ix[1]);
            let whole = neg.apply(p.mul(&a, &b));
            Outcome::require(
                whole == p.mul(&neg.apply(a), &b) && whole == p.mul(&a, &neg.apply(b)),
                || vec![l(a), l(b)],
            )
        }),
    );
    report.push(
        "b minus b in A0",
        tally(&all, |&a| {
            Outcome::require(p.in_a0(&p.add(&a, &neg.apply(a))), || vec![l(a)])
        }),
    );
    report.push(
        "A0 preserved",
        tally(&all, |&a| {
            Outcome::require(!p.in_a0(&a) || p.in_a0(&neg.apply(a)), || vec![l(a)])
        }),
    );
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReversibilityMode {
    Plain,
    Power(u32),
    Tangible,
    NegPlain,
    NegPower(u32),
    NegTangible,
}

fn reversible_at<P: Pair>(p: &P, a: &P::Elem, negated: bool) -> Result<Option<Vec<String>>> {
    let shifted = if negated {
        Some(p.negate(a).ok_or_else(|| {
            Error::Precondition("reversibility with negation needs a negation map".into())
        })?)
    } else {
        None
    };
    let kind = p.native_relation();
    let z = p.zero();
    for b in &p.domain().elements {
        let s = match &shifted {
            Some(na) => p.add(b, na),
            None => p.add(b, a),
        };
        if surpasses(p, kind, &z, &s)? != Verdict::Holds {
            continue;
        }
        if surpasses(p, kind, a, b)? == Verdict::Fails {
            return Ok(Some(vec![p.label(a), p.label(b)]));
        }
    }
    Ok(None)
}

/// `b + a >= 0` implies `b >= a` (or `b (-) a >= 0` in the negated modes),
/// for one element, its powers, or all tangibles.
pub fn check_reversibility<P: Pair>(p: &P, a: &P::Elem, mode: ReversibilityMode) -> Result<Decision> {
    let window = p.domain().window;
    let targets: Vec<P::Elem> = match mode {
        ReversibilityMode::Plain | ReversibilityMode::NegPlain => vec![a.clone()],
        ReversibilityMode::Power(n) | ReversibilityMode::NegPower(n) => {
            (1..=n).map(|k| p.pow(a, k)).collect()
        }
        ReversibilityMode::Tangible | ReversibilityMode::NegTangible => {
            p.tangible_domain().elements
        }
    };
    let negated = matches!(
        mode,
        ReversibilityMode::NegPlain | ReversibilityMode::NegPower(_) | ReversibilityMode::NegTangible
    );
    for x in &targets {
        if let Some(w) = reversible_at(p, x, negated)? {
            return Ok(Decision::from_counterexample(Some(w), window));
        }
    }
    Ok(Decision::from_counterexample(None, window))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterReport {
    pub center: Vec<String>,
    pub whole_carrier: bool,
    /// Whether `w + y0 + y0' = w` forces `w + y0 = w` for `y0, y0'` in A0;
    /// only evaluated on finite carriers.
    pub absorption_hypothesis: Option<bool>,
    pub window: Option<i64>,
}

/// Elements `z` with `yz <= zy` for every `y`.
pub fn compute_center<P: Pair>(p: &P) -> CenterReport {
    let dom = p.domain();
    let kind = p.native_relation();
    let center: Vec<P::Elem> = dom
        .elements
        .iter()
        .filter(|z| {
            dom.elements.iter().all(|y| {
                matches!(
                    surpasses(p, kind, &p.mul(y, z), &p.mul(z, y)),
                    Ok(Verdict::Holds)
                )
            })
        })
        .cloned()
        .collect();
    let absorption_hypothesis = dom.is_exhaustive().then(|| {
        let a0 = p.a0_domain().elements;
        dom.elements.iter().all(|w| {
            a0.iter().all(|y0| {
                a0.iter().all(|y1| {
                    p.add(&p.add(w, y0), y1) != *w || p.add(w, y0) == *w
                })
            })
        })
    });
    CenterReport {
        whole_carrier: center.len() == dom.len(),
        center: p.labels(&center),
        absorption_hypothesis,
        window: dom.window,
    }
}

/// `a + a'` in `{a, a'}` or `a^2 = a'^2` for all tangibles.
pub fn check_weakly_bipotent<P: Pair>(p: &P) -> Decision {
    let t = p.tangible_domain();
    let ix = index_tuples(t.len(), 2, limit_for(&t), 31);
    let bad = ix.iter().find(|ix| {
        let (a, b) = (&t.elements[ix[0]], &t.elements[ix[1]]);
        let s = p.add(a, b);
        !(s == *a || s == *b || p.mul(a, a) == p.mul(b, b))
    });
    Decision::from_counterexample(
        bad.map(|ix| vec![p.label(&t.elements[ix[0]]), p.label(&t.elements[ix[1]])]),
        t.window,
    )
}

/// Directional comparison of subsets: every `s2` has some `s1 <= s2`.
pub fn subset_surpasses<P: Pair>(p: &P, kind: SurpassKind, s1: &[P::Elem], s2: &[P::Elem]) -> Result<Verdict> {
    let mut overall = Verdict::Holds;
    for b in s2 {
        let mut best = Verdict::Fails;
        for a in s1 {
            match surpasses(p, kind, a, b)? {
                Verdict::Holds => {
                    best = Verdict::Holds;
                    break;
                }
                Verdict::Unknown => best = Verdict::Unknown,
                Verdict::Fails => {}
            }
        }
        match best {
            Verdict::Fails => return Ok(Verdict::Fails),
            Verdict::Unknown => overall = Verdict::Unknown,
            Verdict::Holds => {}
        }
    }
    Ok(overall)
}
