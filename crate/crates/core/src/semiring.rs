use std::fmt::Debug;
use std::hash::Hash;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{index_tuples, tally, AxiomReport, Domain, Outcome, SAMPLE_LIMIT};

/// Default integer window for symbolic carriers.
pub const DEFAULT_WINDOW: i64 = 50;

/// A semiring presented by its operations and a domain to check laws over.
///
/// Finite carriers return their whole element list from [`Semiring::domain`];
/// infinite ones return a window sample and laws are only tested there.
pub trait Semiring: Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn domain(&self) -> Domain<Self::Elem>;
    fn label(&self, a: &Self::Elem) -> String;

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    fn pow(&self, a: &Self::Elem, k: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    fn labels(&self, items: &[Self::Elem]) -> Vec<String> {
        items.iter().map(|x| self.label(x)).collect()
    }
}

/// Table-backed semiring on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteSemiring {
    labels: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

impl FiniteSemiring {
    /// Checks shapes and index ranges only; the laws are left to
    /// [`verify_semiring_axioms`].
    pub fn new(
        labels: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Structure("empty carrier".into()));
        }
        for (name, t) in [("add", &add), ("mul", &mul)] {
            if t.len() != n {
                return Err(Error::Structure(format!(
                    "{name} table has {} rows, expected {n}",
                    t.len()
                )));
            }
            for (i, row) in t.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::Structure(format!(
                        "{name} table row {i} has {} entries, expected {n}",
                        row.len()
                    )));
                }
                if let Some(bad) = row.iter().find(|&&v| v >= n) {
                    return Err(Error::Structure(format!(
                        "{name} table row {i} holds index {bad} outside 0..{n}"
                    )));
                }
            }
        }
        if zero >= n || one >= n {
            return Err(Error::Structure("zero or one outside the carrier".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::Structure(format!("duplicate label {l}")));
            }
        }
        Ok(FiniteSemiring {
            labels,
            add,
            mul,
            zero,
            one,
        })
    }

    pub fn from_fn(
        labels: Vec<String>,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = labels.len();
        let add = (0..n).map(|i| (0..n).map(|j| add(i, j)).collect()).collect();
        let mul = (0..n).map(|i| (0..n).map(|j| mul(i, j)).collect()).collect();
        Self::new(labels, add, mul, zero, one)
    }

    /// Tabulates any semiring whose domain is the full carrier and closed
    /// under both operations.
    pub fn tabulate<S: Semiring>(s: &S) -> Result<(Self, Vec<S::Elem>)> {
        let dom = s.domain();
        if !dom.is_exhaustive() {
            return Err(Error::Unsupported(
                "cannot tabulate a windowed carrier".into(),
            ));
        }
        let mut elems = dom.elements;
        elems.sort();
        elems.dedup();
        let index = |x: &S::Elem| -> Result<usize> {
            elems
                .binary_search(x)
                .map_err(|_| Error::Structure(format!("operation leaves the carrier: {}", s.label(x))))
        };
        let n = elems.len();
        let mut add = vec![vec![0; n]; n];
        let mut mul = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                add[i][j] = index(&s.add(&elems[i], &elems[j]))?;
                mul[i][j] = index(&s.mul(&elems[i], &elems[j]))?;
            }
        }
        let labels = elems.iter().map(|e| s.label(e)).collect();
        let zero = index(&s.zero())?;
        let one = index(&s.one())?;
        Ok((Self::new(labels, add, mul, zero, one)?, elems))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label_list(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn one_index(&self) -> usize {
        self.one
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.mul[i][j] == self.mul[j][i]))
    }
}

impl Semiring for FiniteSemiring {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }
    fn one(&self) -> usize {
        self.one
    }
    fn add(&self, a: &usize, b: &usize) -> usize {
        self.add[*a][*b]
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul[*a][*b]
    }
    fn domain(&self) -> Domain<usize> {
        Domain::exhaustive((0..self.size()).collect())
    }
    fn label(&self, a: &usize) -> String {
        self.labels[*a].clone()
    }
}

/// Checks every semiring law over all triples of the domain, or over a seeded
/// sample of triples when the domain is a window.
pub fn verify_semiring_axioms<S: Semiring>(s: &S) -> AxiomReport {
    let dom = s.domain();
    let mut report = AxiomReport::new("semiring", dom.window);
    let e = &dom.elements;
    let limit = (!dom.is_exhaustive()).then_some(SAMPLE_LIMIT);
    let singles = index_tuples(e.len(), 1, limit, 1);
    let pairs = index_tuples(e.len(), 2, limit, 2);
    let triples = index_tuples(e.len(), 3, limit, 3);
    let lab = |ix: &[usize]| -> Vec<String> { ix.iter().map(|&i| s.label(&e[i])).collect() };
    let z = s.zero();
    let o = s.one();

    report.push(
        "additive associativity",
        tally(&triples, |t| {
            let (a, b, c) = (&e[t[0]], &e[t[1]], &e[t[2]]);
            Outcome::require(
                s.add(&s.add(a, b), c) == s.add(a, &s.add(b, c)),
                || lab(t),
            )
        }),
    );
    report.push(
        "additive commutativity",
        tally(&pairs, |t| {
            let (a, b) = (&e[t[0]], &e[t[1]]);
            Outcome::require(s.add(a, b) == s.add(b, a), || lab(t))
        }),
    );
    report.push(
        "additive identity",
        tally(&singles, |t| {
            let a = &e[t[0]];
            Outcome::require(s.add(a, &z) == *a && s.add(&z, a) == *a, || lab(t))
        }),
    );
    report.push(
        "multiplicative associativity",
        tally(&triples, |t| {
            let (a, b, c) = (&e[t[0]], &e[t[1]], &e[t[2]]);
            Outcome::require(
                s.mul(&s.mul(a, b), c) == s.mul(a, &s.mul(b, c)),
                || lab(t),
            )
        }),
    );
    report.push(
        "multiplicative identity",
        tally(&singles, |t| {
            let a = &e[t[0]];
            Outcome::require(s.mul(a, &o) == *a && s.mul(&o, a) == *a, || lab(t))
        }),
    );
    report.push(
        "zero absorbs",
        tally(&singles, |t| {
            let a = &e[t[0]];
            Outcome::require(s.mul(a, &z) == z && s.mul(&z, a) == z, || {
                if s.mul(a, &z) != z {
                    vec![s.label(a), s.label(&z)]
                } else {
                    vec![s.label(&z), s.label(a)]
                }
            })
        }),
    );
    report.push(
        "left distributivity",
        tally(&triples, |t| {
            let (a, b, c) = (&e[t[0]], &e[t[1]], &e[t[2]]);
            Outcome::require(
                s.mul(a, &s.add(b, c)) == s.add(&s.mul(a, b), &s.mul(a, c)),
                || lab(t),
            )
        }),
    );
    report.push(
        "right distributivity",
        tally(&triples, |t| {
            let (a, b, c) = (&e[t[0]], &e[t[1]], &e[t[2]]);
            Outcome::require(
                s.mul(&s.add(a, b), c) == s.add(&s.mul(a, c), &s.mul(b, c)),
                || lab(t),
            )
        }),
    );
    report
}

/// Element of max-plus carriers: minus infinity or an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum MaxPlusValue {
    NegInf,
    Fin(i64),
}

/// Symbolic max-plus semiring: `max` as addition, `+` as multiplication.
/// With `naturals` set the finite part is restricted to nonnegative integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxPlus {
    pub window: i64,
    pub naturals: bool,
}

impl MaxPlus {
    pub fn integers(window: i64) -> Self {
        MaxPlus {
            window,
            naturals: false,
        }
    }

    pub fn naturals(window: i64) -> Self {
        MaxPlus {
            window,
            naturals: true,
        }
    }
}

impl Semiring for MaxPlus {
    type Elem = MaxPlusValue;

    fn zero(&self) -> MaxPlusValue {
        MaxPlusValue::NegInf
    }
    fn one(&self) -> MaxPlusValue {
        MaxPlusValue::Fin(0)
    }
    fn add(&self, a: &MaxPlusValue, b: &MaxPlusValue) -> MaxPlusValue {
        *a.max(b)
    }
    fn mul(&self, a: &MaxPlusValue, b: &MaxPlusValue) -> MaxPlusValue {
        match (a, b) {
            (MaxPlusValue::Fin(x), MaxPlusValue::Fin(y)) => MaxPlusValue::Fin(x + y),
            _ => MaxPlusValue::NegInf,
        }
    }
    fn domain(&self) -> Domain<MaxPlusValue> {
        let lo = if self.naturals { 0 } else { -self.window };
        let mut v = vec![MaxPlusValue::NegInf];
        v.extend((lo..=self.window).map(MaxPlusValue::Fin));
        Domain::windowed(v, self.window)
    }
    fn label(&self, a: &MaxPlusValue) -> String {
        match a {
            MaxPlusValue::NegInf => "-inf".into(),
            MaxPlusValue::Fin(x) => x.to_string(),
        }
    }
}

/// The natural numbers under ordinary addition and multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NatPlusTimes {
    pub window: i64,
}

impl Semiring for NatPlusTimes {
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

/// Nonnegative rationals; the window bounds numerators and denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonNegRationals {
    pub window: i64,
}

impl Semiring for NonNegRationals {
    type Elem = Ratio<i64>;

    fn zero(&self) -> Ratio<i64> {
        Ratio::from_integer(0)
    }
    fn one(&self) -> Ratio<i64> {
        Ratio::from_integer(1)
    }
    fn add(&self, a: &Ratio<i64>, b: &Ratio<i64>) -> Ratio<i64> {
        a + b
    }
    fn mul(&self, a: &Ratio<i64>, b: &Ratio<i64>) -> Ratio<i64> {
        a * b
    }
    fn domain(&self) -> Domain<Ratio<i64>> {
        let w = self.window.max(1);
        let mut v: Vec<Ratio<i64>> = (0..=w)
            .flat_map(|p| (1..=w).map(move |q| Ratio::new(p, q)))
            .collect();
        v.sort();
        v.dedup();
        Domain::windowed(v, self.window)
    }
    fn label(&self, a: &Ratio<i64>) -> String {
        a.to_string()
    }
}

/// Truncated max-plus on `{-inf, 0, .., n}` where `n` plays the role of a
/// saturating top.
pub fn nmax_trunc(n: u32) -> Result<FiniteSemiring> {
    if n == 0 {
        return Err(Error::Config("nmax_trunc needs n >= 1".into()));
    }
    let size = n as usize + 2;
    let mut labels = vec!["-inf".to_string()];
    labels.extend((0..=n).map(|k| k.to_string()));
    // index 0 is -inf, index k+1 is the integer k
    FiniteSemiring::from_fn(
        labels,
        |a, b| a.max(b),
        |a, b| {
            if a == 0 || b == 0 {
                0
            } else {
                ((a - 1) + (b - 1)).min(size - 2) + 1
            }
        },
        0,
        1,
    )
}

pub fn boolean() -> FiniteSemiring {
    FiniteSemiring::from_fn(
        vec!["0".into(), "1".into()],
        |a, b| a | b,
        |a, b| a & b,
        0,
        1,
    )
    .expect("boolean tables are well formed")
}

/// Arithmetic modulo `n`; a ring, hence a semiring.
pub fn integers_mod(n: usize) -> Result<FiniteSemiring> {
    if n < 2 {
        return Err(Error::Config("modulus must be at least 2".into()));
    }
    FiniteSemiring::from_fn(
        (0..n).map(|k| k.to_string()).collect(),
        |a, b| (a + b) % n,
        |a, b| (a * b) % n,
        0,
        1,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedSemiring {
    Boolean,
    NmaxTrunc(u32),
    ZmaxSymbolic,
    NatPlusTimes,
}

impl FromStr for NamedSemiring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "boolean" => return Ok(NamedSemiring::Boolean),
            "zmax_symbolic" => return Ok(NamedSemiring::ZmaxSymbolic),
            "nat_plus_times" => return Ok(NamedSemiring::NatPlusTimes),
            _ => {}
        }
        if let Some(arg) = t
            .strip_prefix("nmax_trunc(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let n: u32 = arg
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad truncation bound in {t}")))?;
            return Ok(NamedSemiring::NmaxTrunc(n));
        }
        Err(Error::Config(format!("unknown semiring name {t}")))
    }
}

/// Result of [`build_named`].
#[derive(Debug, Clone)]
pub enum NamedCarrier {
    Finite(FiniteSemiring),
    MaxPlus(MaxPlus),
    Natural(NatPlusTimes),
}

impl NamedCarrier {
    pub fn verify(&self) -> AxiomReport {
        match self {
            NamedCarrier::Finite(s) => verify_semiring_axioms(s),
            NamedCarrier::MaxPlus(s) => verify_semiring_axioms(s),
            NamedCarrier::Natural(s) => verify_semiring_axioms(s),
        }
    }
}

pub fn build_named(name: NamedSemiring, window: i64) -> Result<NamedCarrier> {
    Ok(match name {
        NamedSemiring::Boolean => NamedCarrier::Finite(boolean()),
        NamedSemiring::NmaxTrunc(n) => NamedCarrier::Finite(nmax_trunc(n)?),
        NamedSemiring::ZmaxSymbolic => NamedCarrier::MaxPlus(MaxPlus::integers(window)),
        NamedSemiring::NatPlusTimes => NamedCarrier::Natural(NatPlusTimes { window }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_is_valid() {
        let b = boolean();
        assert!(verify_semiring_axioms(&b).is_valid());
        assert_eq!(b.add(&1, &1), 1);
    }

    #[test]
    fn swapped_absorption_is_reported() {
        let b = FiniteSemiring::new(
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![1, 1]],
            0,
            1,
        )
        .unwrap();
        let r = verify_semiring_axioms(&b);
        assert!(!r.is_valid());
        assert_eq!(
            r.violation("zero absorbs"),
            Some(&vec!["1".to_string(), "0".to_string()])
        );
    }

    #[test]
    fn ragged_table_is_structural() {
        let e = FiniteSemiring::new(
            vec!["0".into(), "1".into()],
            vec![vec![0, 1, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 1]],
            0,
            1,
        );
        assert!(matches!(e, Err(Error::Structure(_))));
    }

    #[test]
    fn truncated_max_plus_is_valid() {
        let s = nmax_trunc(3).unwrap();
        assert_eq!(s.size(), 5);
        let r = verify_semiring_axioms(&s);
        assert!(r.is_valid(), "{r:?}");
        assert_eq!(r.check("left distributivity").unwrap().checked, 125);
        // 2 + 2 saturates at the top
        assert_eq!(s.label(&s.mul(&3, &3)), "3");
    }

    #[test]
    fn named_carriers() {
        assert!(matches!(
            "nmax_trunc(4)".parse::<NamedSemiring>(),
            Ok(NamedSemiring::NmaxTrunc(4))
        ));
        assert!(matches!(
            "tropical".parse::<NamedSemiring>(),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            build_named(NamedSemiring::NmaxTrunc(0), 5),
            Err(Error::Config(_))
        ));
        for name in ["boolean", "nmax_trunc(3)", "zmax_symbolic", "nat_plus_times"] {
            let c = build_named(name.parse().unwrap(), DEFAULT_WINDOW).unwrap();
            assert!(c.verify().is_valid(), "{name}");
        }
    }

    #[test]
    fn windowed_report_carries_bound() {
        let r = verify_semiring_axioms(&MaxPlus::integers(50));
        assert_eq!(r.window, Some(50));
        assert_eq!(r.check("left distributivity").unwrap().checked, SAMPLE_LIMIT as u64);
    }

    #[test]
    fn rationals_and_modular() {
        assert!(verify_semiring_axioms(&NonNegRationals { window: 4 }).is_valid());
        assert!(verify_semiring_axioms(&integers_mod(4).unwrap()).is_valid());
    }
}
