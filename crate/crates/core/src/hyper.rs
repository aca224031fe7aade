use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairs::{FinitePair, SurpassKind};
use crate::report::{index_tuples, tally, AxiomReport, Outcome};
use crate::semiring::{FiniteSemiring, Semiring};

/// Commutative multivalued addition on `0..n`; every sum is a nonempty
/// sorted set of indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiHypergroup {
    labels: Vec<String>,
    hyperadd: Vec<Vec<Vec<usize>>>,
    zero: usize,
}

impl SemiHypergroup {
    pub fn new(labels: Vec<String>, hyperadd: Vec<Vec<Vec<usize>>>, zero: usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 || zero >= n {
            return Err(Error::Structure("empty carrier or zero out of range".into()));
        }
        if hyperadd.len() != n || hyperadd.iter().any(|r| r.len() != n) {
            return Err(Error::Structure("hyperaddition table is not n x n".into()));
        }
        let mut table = hyperadd;
        for (i, row) in table.iter_mut().enumerate() {
            for (j, set) in row.iter_mut().enumerate() {
                if set.is_empty() {
                    return Err(Error::Structure(format!(
                        "empty sum set at ({}, {})",
                        labels[i], labels[j]
                    )));
                }
                if set.iter().any(|&x| x >= n) {
                    return Err(Error::Structure(format!(
                        "sum set at ({}, {}) leaves the carrier",
                        labels[i], labels[j]
                    )));
                }
                set.sort_unstable();
                set.dedup();
            }
        }
        Ok(SemiHypergroup {
            labels,
            hyperadd: table,
            zero,
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn sum(&self, a: usize, b: usize) -> &[usize] {
        &self.hyperadd[a][b]
    }

    pub fn table(&self) -> &[Vec<Vec<usize>>] {
        &self.hyperadd
    }

    /// Elementwise extension to sets.
    pub fn set_sum(&self, s: &[usize], t: &[usize]) -> Vec<usize> {
        let mut out = BTreeSet::new();
        for &a in s {
            for &b in t {
                out.extend(self.hyperadd[a][b].iter().copied());
            }
        }
        out.into_iter().collect()
    }

    pub fn set_label(&self, s: &[usize]) -> String {
        format!("{{{}}}", s.iter().map(|&i| self.labels[i].as_str()).join(","))
    }
}

/// Semi-hypergroup with a single-valued multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiHyperring {
    pub group: SemiHypergroup,
    mul: Vec<Vec<usize>>,
    one: usize,
}

impl SemiHyperring {
    pub fn new(group: SemiHypergroup, mul: Vec<Vec<usize>>, one: usize) -> Result<Self> {
        let n = group.size();
        if one >= n {
            return Err(Error::Structure("one out of range".into()));
        }
        if mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Structure("multiplication table is not n x n".into()));
        }
        Ok(SemiHyperring { group, mul, one })
    }

    /// A semiring seen as a hyperring with singleton sums.
    pub fn from_semiring(s: &FiniteSemiring) -> Self {
        let n = s.size();
        let hyperadd = (0..n)
            .map(|i| (0..n).map(|j| vec![s.add(&i, &j)]).collect())
            .collect();
        let group = SemiHypergroup::new(s.label_list().to_vec(), hyperadd, s.zero())
            .expect("semiring tables are well formed");
        SemiHyperring {
            group,
            mul: s.mul_table().to_vec(),
            one: s.one(),
        }
    }

    pub fn size(&self) -> usize {
        self.group.size()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn zero(&self) -> usize {
        self.group.zero
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.group.labels.iter().position(|l| l == label)
    }

    fn scale_left(&self, a: usize, s: &[usize]) -> Vec<usize> {
        s.iter().map(|&x| self.mul[a][x]).collect::<BTreeSet<_>>().into_iter().collect()
    }

    fn scale_right(&self, s: &[usize], a: usize) -> Vec<usize> {
        s.iter().map(|&x| self.mul[x][a]).collect::<BTreeSet<_>>().into_iter().collect()
    }
}

pub fn verify_semihypergroup(h: &SemiHypergroup) -> AxiomReport {
    let n = h.size();
    let mut report = AxiomReport::new("semi-hypergroup", None);
    let pairs = index_tuples(n, 2, None, 0);
    let triples = index_tuples(n, 3, None, 0);
    let l = |ix: &[usize]| ix.iter().map(|&i| h.labels[i].clone()).collect::<Vec<_>>();
    report.push(
        "commutativity",
        tally(&pairs, |t| Outcome::require(h.sum(t[0], t[1]) == h.sum(t[1], t[0]), || l(t))),
    );
    report.push(
        "associativity",
        tally(&triples, |t| {
            let left = h.set_sum(h.sum(t[0], t[1]), &[t[2]]);
            let right = h.set_sum(&[t[0]], h.sum(t[1], t[2]));
            Outcome::require(left == right, || l(t))
        }),
    );
    let all: Vec<usize> = (0..n).collect();
    report.push(
        "neutral zero",
        tally(&all, |&a| {
            Outcome::require(h.sum(h.zero, a) == [a], || l(&[h.zero, a]))
        }),
    );
    report
}

/// Hypergroup laws plus multiplicative monoid, absorption and elementwise
/// distributivity.
pub fn verify_semihyperring(h: &SemiHyperring) -> AxiomReport {
    let mut report = verify_semihypergroup(&h.group);
    report.subject = "semi-hyperring".into();
    let n = h.size();
    let g = &h.group;
    let all: Vec<usize> = (0..n).collect();
    let triples = index_tuples(n, 3, None, 0);
    let l = |ix: &[usize]| ix.iter().map(|&i| g.labels[i].clone()).collect::<Vec<_>>();
    report.push(
        "multiplicative associativity",
        tally(&triples, |t| {
            Outcome::require(
                h.mul(h.mul(t[0], t[1]), t[2]) == h.mul(t[0], h.mul(t[1], t[2])),
                || l(t),
            )
        }),
    );
    report.push(
        "multiplicative identity",
        tally(&all, |&a| {
            Outcome::require(h.mul(a, h.one) == a && h.mul(h.one, a) == a, || l(&[a]))
        }),
    );
    report.push(
        "zero absorbs",
        tally(&all, |&a| {
            Outcome::require(
                h.mul(a, h.zero()) == h.zero() && h.mul(h.zero(), a) == h.zero(),
                || l(&[a]),
            )
        }),
    );
    report.push(
        "left distributivity",
        tally(&triples, |t| {
            let lhs = h.scale_left(t[0], g.sum(t[1], t[2]));
            let rhs = g.set_sum(&[h.mul(t[0], t[1])], &[h.mul(t[0], t[2])]);
            Outcome::require(lhs == rhs, || l(t))
        }),
    );
    report.push(
        "right distributivity",
        tally(&triples, |t| {
            let lhs = h.scale_right(g.sum(t[0], t[1]), t[2]);
            let rhs = g.set_sum(&[h.mul(t[0], t[2])], &[h.mul(t[1], t[2])]);
            Outcome::require(lhs == rhs, || l(t))
        }),
    );
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum A0Choice {
    ContainsZero,
    SizeGeTwo,
}

impl std::str::FromStr for A0Choice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "contains_zero" => Ok(A0Choice::ContainsZero),
            "size_ge_two" => Ok(A0Choice::SizeGeTwo),
            other => Err(Error::Config(format!("unknown A0 choice {other}"))),
        }
    }
}

/// Pair on the subsets reachable from singletons by elementwise sums and
/// products, ordered by inclusion. Index order: by size, then contents.
///
/// The size-two choice also keeps `{0}` in A0, since A0 must contain zero.
pub fn powerset_pair(h: &SemiHyperring, choice: A0Choice) -> Result<FinitePair> {
    let n = h.size();
    let g = &h.group;
    let mut found: BTreeSet<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
    loop {
        let current: Vec<Vec<usize>> = found.iter().cloned().collect();
        let mut grew = false;
        for s in &current {
            for t in &current {
                let sum = g.set_sum(s, t);
                let prod: Vec<usize> = s
                    .iter()
                    .flat_map(|&a| t.iter().map(move |&b| h.mul(a, b)))
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                grew |= found.insert(sum);
                grew |= found.insert(prod);
            }
        }
        if !grew {
            break;
        }
    }
    let mut sets: Vec<Vec<usize>> = found.into_iter().collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: BTreeMap<Vec<usize>, usize> =
        sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let m = sets.len();
    let labels: Vec<String> = sets.iter().map(|s| g.set_label(s)).collect();
    let add = |i: usize, j: usize| index[&g.set_sum(&sets[i], &sets[j])];
    let mul = |i: usize, j: usize| {
        let p: Vec<usize> = sets[i]
            .iter()
            .flat_map(|&a| sets[j].iter().map(move |&b| h.mul(a, b)))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        index[&p]
    };
    let zero = index[&vec![h.zero()]];
    let one = index[&vec![h.one()]];
    let s = FiniteSemiring::from_fn(labels, add, mul, zero, one)?;
    let a0: Vec<usize> = (0..m)
        .filter(|&i| match choice {
            A0Choice::ContainsZero => sets[i].contains(&h.zero()),
            A0Choice::SizeGeTwo => sets[i].len() >= 2 || i == zero,
        })
        .collect();
    let t: Vec<usize> = (0..m)
        .filter(|&i| sets[i].len() == 1 && sets[i][0] != h.zero())
        .collect();
    let inclusion = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| sets[i].iter().all(|x| sets[j].contains(x)))
                .collect()
        })
        .collect();
    FinitePair::new(format!("powerset {choice:?}"), s, &a0, &t)?
        .with_relation(SurpassKind::SubsetInclusion, inclusion)
}

/// A coset hyperring together with the projection from the base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetQuotient {
    pub ring: SemiHyperring,
    /// Coset index of each base element.
    pub class_of: Vec<usize>,
}

fn check_subgroup(
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    one: usize,
    g: &[usize],
    label: impl Fn(usize) -> String,
) -> Result<Vec<bool>> {
    let mut member = vec![false; n];
    for &x in g {
        if x >= n {
            return Err(Error::Precondition(format!("subgroup index {x} out of range")));
        }
        member[x] = true;
    }
    if !member[one] {
        return Err(Error::Precondition("subgroup misses the unit".into()));
    }
    for &a in g {
        for &b in g {
            if !member[mul(a, b)] {
                return Err(Error::Precondition(format!(
                    "subgroup not closed: {} * {}",
                    label(a),
                    label(b)
                )));
            }
        }
        if !g.iter().any(|&b| mul(a, b) == one && mul(b, a) == one) {
            return Err(Error::Precondition(format!(
                "{} has no inverse in the subgroup",
                label(a)
            )));
        }
    }
    Ok(member)
}

/// Orbits `xG`, numbered by their lowest element.
fn orbits(n: usize, mul: impl Fn(usize, usize) -> usize, g: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut class_of = vec![usize::MAX; n];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c: Vec<usize> = g.iter().map(|&s| mul(x, s)).collect::<BTreeSet<_>>().into_iter().collect();
        for &y in &c {
            class_of[y] = cosets.len();
        }
        cosets.push(c);
    }
    (cosets, class_of)
}

/// Cosets of a multiplicative subgroup of a finite semiring, with
/// `[a] + [b] = {[x + y] : x in aG, y in bG}`.
pub fn krasner_quotient(r: &FiniteSemiring, g: &[usize]) -> Result<CosetQuotient> {
    let n = r.size();
    check_subgroup(n, |a, b| r.mul(&a, &b), r.one(), g, |a| r.label(&a))?;
    let (cosets, class_of) = orbits(n, |a, b| r.mul(&a, &b), g);
    let k = cosets.len();
    let labels: Vec<String> = cosets.iter().map(|c| format!("[{}]", r.label(&c[0]))).collect();
    let mut hyperadd = vec![vec![Vec::new(); k]; k];
    let mut mul = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let mut sums = BTreeSet::new();
            let mut prods = BTreeSet::new();
            for &x in &cosets[i] {
                for &y in &cosets[j] {
                    sums.insert(class_of[r.add(&x, &y)]);
                    prods.insert(class_of[r.mul(&x, &y)]);
                }
            }
            if prods.len() != 1 {
                return Err(Error::Precondition(format!(
                    "product of cosets {} and {} is not a coset",
                    labels[i], labels[j]
                )));
            }
            hyperadd[i][j] = sums.into_iter().collect();
            mul[i][j] = *prods.iter().next().expect("one class");
        }
    }
    let group = SemiHypergroup::new(labels, hyperadd, class_of[r.zero()])?;
    let ring = SemiHyperring::new(group, mul, class_of[r.one()])?;
    Ok(CosetQuotient { ring, class_of })
}

/// Coset quotient of a semi-hyperring:
/// `[a] + [b] = {[z] : z in x + y, x in aG, y in bG}`.
pub fn hyper_coset_quotient(h: &SemiHyperring, g: &[usize]) -> Result<CosetQuotient> {
    let n = h.size();
    check_subgroup(n, |a, b| h.mul(a, b), h.one(), g, |a| h.group.labels[a].clone())?;
    let (cosets, class_of) = orbits(n, |a, b| h.mul(a, b), g);
    let k = cosets.len();
    let labels: Vec<String> = cosets
        .iter()
        .map(|c| format!("[{}]", h.group.labels[c[0]]))
        .collect();
    let hyperadd = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    cosets[i]
                        .iter()
                        .flat_map(|&x| cosets[j].iter().map(move |&y| (x, y)))
                        .flat_map(|(x, y)| h.group.sum(x, y).iter().map(|&z| class_of[z]))
                        .collect::<BTreeSet<_>>()
                        .into_iter()
                        .collect()
                })
                .collect()
        })
        .collect();
    let mul = (0..k)
        .map(|i| (0..k).map(|j| class_of[h.mul(cosets[i][0], cosets[j][0])]).collect())
        .collect();
    let group = SemiHypergroup::new(labels, hyperadd, class_of[h.zero()])?;
    let ring = SemiHyperring::new(group, mul, class_of[h.one()])?;
    Ok(CosetQuotient { ring, class_of })
}

/// A bijection preserving zero, one, products and sum sets, found by search.
pub fn find_isomorphism(a: &SemiHyperring, b: &SemiHyperring) -> Option<Vec<usize>> {
    let n = a.size();
    if n != b.size() || n > 8 {
        return None;
    }
    (0..n).permutations(n).find(|f| {
        f[a.zero()] == b.zero()
            && f[a.one()] == b.one()
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    let img: BTreeSet<usize> = a.group.sum(x, y).iter().map(|&z| f[z]).collect();
                    f[a.mul(x, y)] == b.mul(f[x], f[y])
                        && img.into_iter().eq(b.group.sum(f[x], f[y]).iter().copied())
                })
            })
    })
}

/// Outcome of comparing `H/G2` with `(H/G1)/(G2/G1)` for `G1 <= G2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IteratedQuotient {
    pub one_step: SemiHyperring,
    pub two_step: SemiHyperring,
    pub isomorphism: Option<Vec<usize>>,
}

pub fn iterated_quotient(h: &SemiHyperring, small: &[usize], large: &[usize]) -> Result<IteratedQuotient> {
    if let Some(x) = small.iter().find(|x| !large.contains(x)) {
        return Err(Error::Precondition(format!(
            "{} lies in the smaller subgroup only",
            h.group.labels[*x]
        )));
    }
    let first = hyper_coset_quotient(h, small)?;
    let image: Vec<usize> = large
        .iter()
        .map(|&x| first.class_of[x])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let two_step = hyper_coset_quotient(&first.ring, &image)?.ring;
    let one_step = hyper_coset_quotient(h, large)?.ring;
    let isomorphism = find_isomorphism(&one_step, &two_step);
    Ok(IteratedQuotient {
        one_step,
        two_step,
        isomorphism,
    })
}

/// Coset structure of an infinite semiring, described by a classifier that
/// sends each element to one of finitely many cosets.
pub struct SymbolicCosets<'a, E> {
    pub labels: Vec<String>,
    pub class_of: Box<dyn Fn(&E) -> usize + Sync + 'a>,
    pub in_subgroup: Box<dyn Fn(&E) -> bool + Sync + 'a>,
}

/// Krasner quotient of a windowed carrier. Sum sets are those observed on
/// sampled representatives, so the result is qualified by the window.
pub fn krasner_quotient_symbolic<S: Semiring>(
    r: &S,
    cosets: &SymbolicCosets<'_, S::Elem>,
) -> Result<SemiHyperring> {
    let k = cosets.labels.len();
    let dom = r.domain().elements;
    let group: Vec<&S::Elem> = dom.iter().filter(|x| (cosets.in_subgroup)(x)).collect();
    if !(cosets.in_subgroup)(&r.one()) {
        return Err(Error::Precondition("subgroup misses the unit".into()));
    }
    for a in &group {
        for b in &group {
            if !(cosets.in_subgroup)(&r.mul(a, b)) {
                return Err(Error::Precondition(format!(
                    "subgroup not closed at {} * {}",
                    r.label(a),
                    r.label(b)
                )));
            }
        }
        if !group.iter().any(|b| r.mul(a, b) == r.one()) {
            return Err(Error::Precondition(format!(
                "{} has no inverse in the sampled subgroup",
                r.label(a)
            )));
        }
    }
    let mut hyperadd = vec![vec![BTreeSet::new(); k]; k];
    let mut mul = vec![vec![BTreeSet::new(); k]; k];
    for x in &dom {
        for y in &dom {
            let (i, j) = ((cosets.class_of)(x), (cosets.class_of)(y));
            if i >= k || j >= k {
                return Err(Error::Structure("coset classifier out of range".into()));
            }
            hyperadd[i][j].insert((cosets.class_of)(&r.add(x, y)));
            mul[i][j].insert((cosets.class_of)(&r.mul(x, y)));
        }
    }
    let mul: Vec<Vec<usize>> = mul
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|s| {
                    if s.len() == 1 {
                        Ok(*s.iter().next().expect("one class"))
                    } else {
                        Err(Error::Precondition("coset product not well defined".into()))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let hyperadd = hyperadd
        .into_iter()
        .map(|row| row.into_iter().map(|s| s.into_iter().collect()).collect())
        .collect();
    let g = SemiHypergroup::new(cosets.labels.clone(), hyperadd, (cosets.class_of)(&r.zero()))?;
    SemiHyperring::new(g, mul, (cosets.class_of)(&r.one()))
}

/// The Krasner hyperfield `{0, 1}` with `1 + 1 = {0, 1}`.
pub fn krasner_hyperfield() -> SemiHyperring {
    let g = SemiHypergroup::new(
        vec!["0".into(), "1".into()],
        vec![vec![vec![0], vec![1]], vec![vec![1], vec![0, 1]]],
        0,
    )
    .expect("well formed");
    SemiHyperring::new(g, vec![vec![0, 0], vec![0, 1]], 1).expect("well formed")
}

/// The sign hyperfield `{0, 1, -1}` with `1 + -1 = {0, 1, -1}`.
pub fn sign_hyperfield() -> SemiHyperring {
    let all = vec![0, 1, 2];
    let g = SemiHypergroup::new(
        vec!["0".into(), "1".into(), "-1".into()],
        vec![
            vec![vec![0], vec![1], vec![2]],
            vec![vec![1], vec![1], all.clone()],
            vec![vec![2], all, vec![2]],
        ],
        0,
    )
    .expect("well formed");
    SemiHyperring::new(g, vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]], 1).expect("well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::{is_shallow, verify_admissible, verify_surpassing, Pair};
    use crate::semiring::{integers_mod, verify_semiring_axioms, NonNegRationals};
    use num_rational::Ratio;

    #[test]
    fn krasner_and_sign_are_valid() {
        assert!(verify_semihyperring(&krasner_hyperfield()).is_valid());
        assert!(verify_semihyperring(&sign_hyperfield()).is_valid());
        let b = SemiHyperring::from_semiring(&crate::semiring::boolean());
        assert!(verify_semihyperring(&b).is_valid());
    }

    #[test]
    fn broken_neutrality_is_located() {
        let g = SemiHypergroup::new(
            vec!["0".into(), "1".into()],
            vec![vec![vec![0], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]],
            0,
        )
        .unwrap();
        let r = verify_semihypergroup(&g);
        assert_eq!(r.violation("neutral zero"), Some(&vec!["0".to_string(), "1".to_string()]));
    }

    #[test]
    fn empty_sum_is_structural() {
        let g = SemiHypergroup::new(
            vec!["0".into(), "1".into()],
            vec![vec![vec![0], vec![1]], vec![vec![1], vec![]]],
            0,
        );
        assert!(matches!(g, Err(Error::Structure(_))));
    }

    #[test]
    fn powerset_over_krasner() {
        let k = krasner_hyperfield();
        for choice in [A0Choice::ContainsZero, A0Choice::SizeGeTwo] {
            let p = powerset_pair(&k, choice).unwrap();
            assert_eq!(p.semiring().label_list(), &["{0}", "{1}", "{0,1}"]);
            assert!(verify_semiring_axioms(&p).is_valid());
            assert!(verify_admissible(&p).is_valid());
            assert!(is_shallow(&p).holds);
            assert!(verify_surpassing(&p, SurpassKind::SubsetInclusion, true).is_valid());
            let one = p.index_of("{1}").unwrap();
            assert_eq!(p.label(&p.add(&one, &one)), "{0,1}");
            assert!(p.in_a0(&p.index_of("{0,1}").unwrap()));
            assert!(!p.in_a0(&one));
        }
    }

    #[test]
    fn f3_modulo_units_is_krasner() {
        let f3 = integers_mod(3).unwrap();
        let q = krasner_quotient(&f3, &[1, 2]).unwrap();
        assert_eq!(q.ring.size(), 2);
        assert_eq!(q.ring.group.sum(1, 1), [0, 1]);
        assert!(verify_semihyperring(&q.ring).is_valid());
        assert!(find_isomorphism(&q.ring, &krasner_hyperfield()).is_some());
    }

    #[test]
    fn trivial_subgroup_reproduces_base() {
        let f3 = integers_mod(3).unwrap();
        let q = krasner_quotient(&f3, &[1]).unwrap();
        assert!(find_isomorphism(&q.ring, &SemiHyperring::from_semiring(&f3)).is_some());
        let k = krasner_hyperfield();
        let q = hyper_coset_quotient(&k, &[1]).unwrap();
        assert_eq!(q.ring, {
            let mut r = k.clone();
            r.group.labels = vec!["[0]".into(), "[1]".into()];
            r
        });
    }

    #[test]
    fn two_quotient_routes_agree_on_single_valued_input() {
        let f5 = integers_mod(5).unwrap();
        for g in [vec![1], vec![1, 4], vec![1, 2, 3, 4]] {
            let a = krasner_quotient(&f5, &g).unwrap();
            let b = hyper_coset_quotient(&SemiHyperring::from_semiring(&f5), &g).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn non_subgroups_are_rejected() {
        let f5 = integers_mod(5).unwrap();
        assert!(matches!(krasner_quotient(&f5, &[1, 2]), Err(Error::Precondition(_))));
        assert!(matches!(krasner_quotient(&f5, &[2, 3]), Err(Error::Precondition(_))));
    }

    #[test]
    fn positive_rationals_collapse_to_boolean() {
        let q = NonNegRationals { window: 6 };
        let zero = Ratio::from_integer(0);
        let cosets = SymbolicCosets {
            labels: vec!["[0]".into(), "[1]".into()],
            class_of: Box::new(move |x: &Ratio<i64>| usize::from(*x != zero)),
            in_subgroup: Box::new(|x: &Ratio<i64>| *x > Ratio::from_integer(0)),
        };
        let h = krasner_quotient_symbolic(&q, &cosets).unwrap();
        assert_eq!(h.group.sum(1, 1), [1]);
        assert!(verify_semihyperring(&h).is_valid());
    }

    #[test]
    fn iterated_quotients_match() {
        let f3 = SemiHyperring::from_semiring(&integers_mod(3).unwrap());
        let it = iterated_quotient(&f3, &[1], &[1, 2]).unwrap();
        assert!(it.isomorphism.is_some());
        let f7 = SemiHyperring::from_semiring(&integers_mod(7).unwrap());
        let it = iterated_quotient(&f7, &[1], &[1, 2, 4]).unwrap();
        assert_eq!(it.one_step.size(), 3);
        assert!(it.isomorphism.is_some());
    }
}
