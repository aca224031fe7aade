use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairs::{FinitePair, Pair};
use crate::report::Domain;
use crate::semiring::{verify_semiring_axioms, FiniteSemiring, Semiring};

/// Carrier element of a supertropical semiring over the integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SuperValue {
    Zero,
    Tangible(i64),
    Ghost(i64),
}

impl SuperValue {
    /// The value ignoring ghost status; `None` for zero.
    pub fn nu(self) -> Option<i64> {
        match self {
            SuperValue::Zero => None,
            SuperValue::Tangible(v) | SuperValue::Ghost(v) => Some(v),
        }
    }

    pub fn parse(text: &str) -> Result<SuperValue> {
        let t = text.trim();
        if t == "-inf" || t == "zero" {
            return Ok(SuperValue::Zero);
        }
        let (digits, ghost) = match t.strip_suffix('v') {
            Some(d) => (d, true),
            None => (t, false),
        };
        let v: i64 = digits
            .parse()
            .map_err(|_| Error::Config(format!("not a supertropical value: {t}")))?;
        Ok(if ghost {
            SuperValue::Ghost(v)
        } else {
            SuperValue::Tangible(v)
        })
    }
}

/// Supertropical extension of the ordered group of integers (or the ordered
/// monoid of naturals): tangibles `a`, ghosts `av`, and a zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Supertropical {
    pub window: i64,
    pub naturals: bool,
}

impl Supertropical {
    pub fn integers(window: i64) -> Self {
        Supertropical {
            window,
            naturals: false,
        }
    }

    pub fn naturals(window: i64) -> Self {
        Supertropical {
            window,
            naturals: true,
        }
    }

    pub fn tangible_window(&self) -> Vec<SuperValue> {
        let lo = if self.naturals { 0 } else { -self.window };
        (lo..=self.window).map(SuperValue::Tangible).collect()
    }
}

impl Semiring for Supertropical {
    type Elem = SuperValue;

    fn zero(&self) -> SuperValue {
        SuperValue::Zero
    }
    fn one(&self) -> SuperValue {
        SuperValue::Tangible(0)
    }
    fn add(&self, a: &SuperValue, b: &SuperValue) -> SuperValue {
        match (a.nu(), b.nu()) {
            (None, _) => *b,
            (_, None) => *a,
            (Some(x), Some(y)) if x > y => *a,
            (Some(x), Some(y)) if y > x => *b,
            (Some(x), _) => SuperValue::Ghost(x),
        }
    }
    fn mul(&self, a: &SuperValue, b: &SuperValue) -> SuperValue {
        match (a, b) {
            (SuperValue::Zero, _) | (_, SuperValue::Zero) => SuperValue::Zero,
            (SuperValue::Tangible(x), SuperValue::Tangible(y)) => SuperValue::Tangible(x + y),
            _ => SuperValue::Ghost(a.nu().unwrap_or(0) + b.nu().unwrap_or(0)),
        }
    }
    fn domain(&self) -> Domain<SuperValue> {
        let lo = if self.naturals { 0 } else { -self.window };
        let mut v = vec![SuperValue::Zero];
        v.extend((lo..=self.window).map(SuperValue::Tangible));
        v.extend((lo..=self.window).map(SuperValue::Ghost));
        Domain::windowed(v, self.window)
    }
    fn label(&self, a: &SuperValue) -> String {
        match a {
            SuperValue::Zero => "-inf".into(),
            SuperValue::Tangible(v) => v.to_string(),
            SuperValue::Ghost(v) => format!("{v}v"),
        }
    }
}

impl Pair for Supertropical {
    fn in_a0(&self, a: &SuperValue) -> bool {
        !matches!(a, SuperValue::Tangible(_))
    }
    fn is_tangible(&self, a: &SuperValue) -> bool {
        matches!(a, SuperValue::Tangible(_))
    }
    fn precedes_zero_exact(&self, a: &SuperValue, b: &SuperValue) -> Option<bool> {
        // a + y over quasi-zeros y is a itself or a ghost at least as large
        Some(
            a == b
                || match (b, a.nu()) {
                    (SuperValue::Ghost(_), None) => true,
                    (SuperValue::Ghost(vb), Some(va)) => *vb >= va,
                    _ => false,
                },
        )
    }
    fn negate(&self, a: &SuperValue) -> Option<SuperValue> {
        Some(*a)
    }
    fn spanning_by_construction(&self) -> bool {
        true
    }
}

/// A finite monoid with a total order, given as a list of element indices
/// from smallest to largest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedMonoid {
    pub labels: Vec<String>,
    pub mul: Vec<Vec<usize>>,
    pub one: usize,
    pub order: Option<Vec<usize>>,
}

impl OrderedMonoid {
    pub fn trivial(label: &str) -> Self {
        OrderedMonoid {
            labels: vec![label.to_string()],
            mul: vec![vec![0]],
            one: 0,
            order: Some(vec![0]),
        }
    }
}

/// Supertropical pair over a finite totally ordered monoid. Index 0 is the
/// zero, then the tangibles, then their ghosts (label suffix `v`).
pub fn supertropical_extension(t: &OrderedMonoid) -> Result<FinitePair> {
    let m = t.labels.len();
    let order = t
        .order
        .as_ref()
        .ok_or_else(|| Error::Unsupported("monoid carries no order".into()))?;
    let mut rank = vec![usize::MAX; m];
    for (r, &i) in order.iter().enumerate() {
        if i >= m || rank[i] != usize::MAX {
            return Err(Error::Unsupported("order is not a total order on the monoid".into()));
        }
        rank[i] = r;
    }
    if rank.contains(&usize::MAX) {
        return Err(Error::Unsupported("order does not rank every element".into()));
    }
    if t.mul.len() != m || t.mul.iter().any(|r| r.len() != m || r.iter().any(|&x| x >= m)) {
        return Err(Error::Structure("monoid table has wrong shape".into()));
    }
    // index 0: zero; 1..=m tangibles; m+1..=2m ghosts
    let n = 2 * m + 1;
    let base = |x: usize| (x - 1) % m;
    let ghost = |x: usize| x > m;
    let mut labels = vec!["0".to_string()];
    labels.extend(t.labels.iter().cloned());
    labels.extend(t.labels.iter().map(|l| format!("{l}v")));
    let add = |x: usize, y: usize| -> usize {
        if x == 0 {
            return y;
        }
        if y == 0 {
            return x;
        }
        let (rx, ry) = (rank[base(x)], rank[base(y)]);
        if rx > ry {
            x
        } else if ry > rx {
            y
        } else {
            base(x) + m + 1
        }
    };
    let mul = |x: usize, y: usize| -> usize {
        if x == 0 || y == 0 {
            return 0;
        }
        let p = t.mul[base(x)][base(y)];
        if ghost(x) || ghost(y) {
            p + m + 1
        } else {
            p + 1
        }
    };
    let s = FiniteSemiring::from_fn(labels, add, mul, 0, t.one + 1)?;
    let report = verify_semiring_axioms(&s);
    if let Some(v) = report.violations().next() {
        return Err(Error::Unsupported(format!(
            "order is not compatible with the monoid: {} fails at {:?}",
            v.axiom, v.witness
        )));
    }
    let a0: Vec<usize> = std::iter::once(0).chain(m + 1..n).collect();
    let tangibles: Vec<usize> = (1..=m).collect();
    let negation: Vec<usize> = (0..n).collect();
    FinitePair::new("supertropical", s, &a0, &tangibles)?.with_negation(negation)
}

/// `S x S` with componentwise addition and the twisted product
/// `(a,b)(c,d) = (ac+bd, ad+bc)`; quasi-zeros are the diagonal.
#[derive(Debug, Clone)]
pub struct Doubled<S> {
    pub base: S,
}

impl<S: Semiring> Semiring for Doubled<S> {
    type Elem = (S::Elem, S::Elem);

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        (self.base.one(), self.base.zero())
    }
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.base.add(&x.0, &y.0), self.base.add(&x.1, &y.1))
    }
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let s = &self.base;
        (
            s.add(&s.mul(&x.0, &y.0), &s.mul(&x.1, &y.1)),
            s.add(&s.mul(&x.0, &y.1), &s.mul(&x.1, &y.0)),
        )
    }
    fn domain(&self) -> Domain<Self::Elem> {
        let d = self.base.domain();
        let v = d
            .elements
            .iter()
            .flat_map(|a| d.elements.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        Domain {
            elements: v,
            window: d.window,
        }
    }
    fn label(&self, x: &Self::Elem) -> String {
        format!("({},{})", self.base.label(&x.0), self.base.label(&x.1))
    }
}

impl<S: Semiring> Pair for Doubled<S> {
    fn in_a0(&self, x: &Self::Elem) -> bool {
        x.0 == x.1
    }
    fn is_tangible(&self, x: &Self::Elem) -> bool {
        let z = self.base.zero();
        (x.0 == z) != (x.1 == z)
    }
    fn negate(&self, x: &Self::Elem) -> Option<Self::Elem> {
        Some((x.1.clone(), x.0.clone()))
    }
    fn spanning_by_construction(&self) -> bool {
        true
    }
}

/// Tabulated doubling of a finite semiring, with the swap as negation.
pub fn double(s: &FiniteSemiring) -> Result<FinitePair> {
    let report = verify_semiring_axioms(s);
    if let Some(v) = report.violations().next() {
        return Err(Error::Precondition(format!(
            "base is not a semiring: {} fails at {:?}",
            v.axiom, v.witness
        )));
    }
    let (p, _) = FinitePair::from_pair(&Doubled { base: s.clone() }, "doubled")?;
    Ok(p)
}

/// A pair restricted to the elements satisfying a predicate. The predicate
/// must describe a sub-pair; operations are inherited unchanged.
#[derive(Clone)]
pub struct SubPair<P: Pair> {
    pub inner: P,
    keep: Arc<dyn Fn(&P::Elem) -> bool + Send + Sync>,
}

impl<P: Pair> SubPair<P> {
    pub fn new(inner: P, keep: impl Fn(&P::Elem) -> bool + Send + Sync + 'static) -> Self {
        SubPair {
            inner,
            keep: Arc::new(keep),
        }
    }

    pub fn contains(&self, x: &P::Elem) -> bool {
        (self.keep)(x)
    }
}

impl<P: Pair> Semiring for SubPair<P> {
    type Elem = P::Elem;

    fn zero(&self) -> P::Elem {
        self.inner.zero()
    }
    fn one(&self) -> P::Elem {
        self.inner.one()
    }
    fn add(&self, a: &P::Elem, b: &P::Elem) -> P::Elem {
        self.inner.add(a, b)
    }
    fn mul(&self, a: &P::Elem, b: &P::Elem) -> P::Elem {
        self.inner.mul(a, b)
    }
    fn domain(&self) -> Domain<P::Elem> {
        self.inner.domain().filter(|x| (self.keep)(x))
    }
    fn label(&self, a: &P::Elem) -> String {
        self.inner.label(a)
    }
}

impl<P: Pair> Pair for SubPair<P> {
    fn in_a0(&self, a: &P::Elem) -> bool {
        self.inner.in_a0(a)
    }
    fn is_tangible(&self, a: &P::Elem) -> bool {
        self.inner.is_tangible(a)
    }
    fn native_relation(&self) -> crate::pairs::SurpassKind {
        self.inner.native_relation()
    }
    fn relation(&self, a: &P::Elem, b: &P::Elem) -> Option<bool> {
        self.inner.relation(a, b)
    }
    fn precedes_zero_exact(&self, a: &P::Elem, b: &P::Elem) -> Option<bool> {
        // quasi-zero witnesses must come from the sub-pair itself
        if !self.inner.domain().is_exhaustive() {
            return None;
        }
        let found = self
            .domain()
            .elements
            .iter()
            .any(|y| self.in_a0(y) && self.add(a, y) == *b);
        Some(found)
    }
    fn negate(&self, a: &P::Elem) -> Option<P::Elem> {
        self.inner.negate(a)
    }
    fn spanning_by_construction(&self) -> bool {
        self.inner.spanning_by_construction()
    }
}

/// The natural numbers with ordinary operations as a pair: A0 = {0},
/// tangibles the positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NaturalPair {
    pub window: i64,
}

impl Semiring for NaturalPair {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        a.checked_add(*b).expect("natural number overflow")
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a.checked_mul(*b).expect("natural number overflow")
    }
    fn domain(&self) -> Domain<u64> {
        Domain::windowed((0..=self.window.max(0) as u64).collect(), self.window)
    }
    fn label(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Pair for NaturalPair {
    fn in_a0(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_tangible(&self, a: &u64) -> bool {
        *a > 0
    }
    fn precedes_zero_exact(&self, a: &u64, b: &u64) -> Option<bool> {
        Some(a == b)
    }
    fn spanning_by_construction(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::{surpasses, verify_admissible, SurpassKind};
    use crate::report::Verdict;
    use crate::semiring::boolean;

    #[test]
    fn supertropical_rules() {
        let s = Supertropical::integers(10);
        let t = SuperValue::Tangible;
        assert_eq!(s.add(&t(2), &t(2)), SuperValue::Ghost(2));
        assert_eq!(s.add(&t(2), &t(3)), t(3));
        assert_eq!(s.add(&SuperValue::Ghost(4), &SuperValue::Ghost(4)), SuperValue::Ghost(4));
        assert!(verify_semiring_axioms(&s).is_valid());
        for x in s.domain().elements {
            let two = s.add(&x, &x);
            assert_eq!(s.add(&two, &x), two);
        }
    }

    #[test]
    fn supertropical_exact_order_matches_search() {
        let s = Supertropical::integers(4);
        let dom = s.domain().elements;
        for a in &dom {
            for b in &dom {
                let exact = s.precedes_zero_exact(a, b).unwrap();
                let search = dom.iter().any(|y| s.in_a0(y) && s.add(a, y) == *b);
                assert_eq!(exact, search, "{a:?} {b:?}");
            }
        }
        let two = SuperValue::Tangible(2);
        assert_eq!(
            surpasses(&s, SurpassKind::PrecedesZero, &two, &SuperValue::Ghost(2)).unwrap(),
            Verdict::Holds
        );
        assert_eq!(
            surpasses(&s, SurpassKind::PrecedesZero, &two, &SuperValue::Tangible(3)).unwrap(),
            Verdict::Fails
        );
    }

    #[test]
    fn trivial_monoid_gives_three_elements() {
        let p = supertropical_extension(&OrderedMonoid::trivial("a")).unwrap();
        assert_eq!(p.semiring().label_list(), &["0", "a", "av"]);
        assert_eq!(p.add(&1, &1), 2);
        assert!(verify_admissible(&p).is_valid());
    }

    #[test]
    fn unordered_or_incompatible_monoids_are_rejected() {
        let mut m = OrderedMonoid {
            labels: vec!["1".into(), "t".into()],
            mul: vec![vec![0, 1], vec![1, 1]],
            one: 0,
            order: None,
        };
        assert!(matches!(supertropical_extension(&m), Err(Error::Unsupported(_))));
        m.order = Some(vec![0, 1]);
        assert!(matches!(supertropical_extension(&m), Err(Error::Unsupported(_))));
    }

    #[test]
    fn doubled_boolean_shape() {
        let p = double(&boolean()).unwrap();
        assert_eq!(p.size(), 4);
        let l = |i: usize| p.label(&i);
        let a0: Vec<String> = p.a0_indices().into_iter().map(l).collect();
        let t: Vec<String> = p.tangible_indices().into_iter().map(l).collect();
        assert_eq!(a0, ["(0,0)", "(1,1)"]);
        assert_eq!(t, ["(0,1)", "(1,0)"]);
        assert!(verify_admissible(&p).is_valid());
        for &d in &p.a0_indices() {
            for &e in &p.a0_indices() {
                assert!(p.in_a0(&p.mul(&d, &e)));
            }
        }
    }

    #[test]
    fn diagonal_times_anything_is_diagonal() {
        let d = Doubled {
            base: Supertropical::integers(3),
        };
        for a in d.base.domain().elements {
            for b in d.base.domain().elements {
                for c in [SuperValue::Zero, SuperValue::Tangible(1), SuperValue::Ghost(-2)] {
                    assert!(d.in_a0(&d.mul(&(a, a), &(b, c))));
                }
            }
        }
    }
}
