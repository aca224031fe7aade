//! Finite module pairs over a finite pair: free pairs, bases, rank and
//! morphisms.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairs::{FinitePair, Pair};
use crate::report::{index_tuples, tally, AxiomReport, Outcome, Verdict};
use crate::semiring::Semiring;

/// Largest module the exhaustive rank search accepts.
pub const RANK_MODULE_LIMIT: usize = 16;
/// Largest generating set the rank search tries.
pub const RANK_GENERATOR_LIMIT: usize = 6;
const FREE_MODULE_LIMIT: usize = 4096;

/// A module over a finite semiring, given by an addition table and an action
/// table `act[a][m] = a m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteModule {
    labels: Vec<String>,
    add: Vec<Vec<usize>>,
    act: Vec<Vec<usize>>,
    zero: usize,
}

impl FiniteModule {
    pub fn new(
        labels: Vec<String>,
        add: Vec<Vec<usize>>,
        act: Vec<Vec<usize>>,
        zero: usize,
        base_size: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Structure("empty module".into()));
        }
        if zero >= n {
            return Err(Error::Structure("module zero outside the carrier".into()));
        }
        if add.len() != n || add.iter().any(|r| r.len() != n) {
            return Err(Error::Structure(format!("module add table is not {n} x {n}")));
        }
        if act.len() != base_size || act.iter().any(|r| r.len() != n) {
            return Err(Error::Structure(format!("action table is not {base_size} x {n}")));
        }
        if add.iter().chain(act.iter()).flatten().any(|&v| v >= n) {
            return Err(Error::Structure(format!("module table entry outside 0..{n}")));
        }
        Ok(FiniteModule { labels, add, act, zero })
    }

    /// The base semiring acting on itself.
    pub fn regular(p: &FinitePair) -> Self {
        let s = p.semiring();
        FiniteModule {
            labels: s.label_list().to_vec(),
            add: s.add_table().to_vec(),
            act: s.mul_table().to_vec(),
            zero: s.zero_index(),
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn label(&self, m: usize) -> &str {
        &self.labels[m]
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

    pub fn act_table(&self) -> &[Vec<usize>] {
        &self.act
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x][y]
    }

    pub fn act(&self, a: usize, m: usize) -> usize {
        self.act[a][m]
    }

    /// Membership mask of the submodule generated by `gens` together with
    /// the submodule `over`.
    pub fn span_over(&self, gens: &[usize], over: &[bool]) -> Vec<bool> {
        let n = self.size();
        let mut inside = over.to_vec();
        inside[self.zero] = true;
        let mut members: Vec<usize> = (0..n).filter(|&i| inside[i]).collect();
        let mut frontier: Vec<usize> = Vec::new();
        let push = |x: usize, inside: &mut Vec<bool>, frontier: &mut Vec<usize>| {
            if !inside[x] {
                inside[x] = true;
                frontier.push(x);
            }
        };
        for &g in gens {
            for a in 0..self.act.len() {
                push(self.act[a][g], &mut inside, &mut frontier);
            }
        }
        while let Some(x) = frontier.pop() {
            members.push(x);
            for a in 0..self.act.len() {
                push(self.act[a][x], &mut inside, &mut frontier);
            }
            for i in 0..members.len() {
                let y = members[i];
                push(self.add[x][y], &mut inside, &mut frontier);
            }
        }
        inside
    }

    pub fn span(&self, gens: &[usize]) -> Vec<bool> {
        self.span_over(gens, &vec![false; self.size()])
    }

    /// True when the mask contains zero and is closed under both operations.
    pub fn is_submodule(&self, mask: &[bool]) -> bool {
        let members: Vec<usize> = (0..self.size()).filter(|&i| mask[i]).collect();
        mask[self.zero]
            && members.iter().all(|&x| {
                members.iter().all(|&y| mask[self.add[x][y]])
                    && (0..self.act.len()).all(|a| mask[self.act[a][x]])
            })
    }
}

fn mask_of(n: usize, items: &[usize]) -> Result<Vec<bool>> {
    let mut m = vec![false; n];
    for &i in items {
        if i >= n {
            return Err(Error::Structure(format!("index {i} outside 0..{n}")));
        }
        m[i] = true;
    }
    Ok(m)
}

fn indices_of(mask: &[bool]) -> Vec<usize> {
    (0..mask.len()).filter(|&i| mask[i]).collect()
}

/// Module laws over the base semiring, checked exhaustively.
pub fn verify_module(p: &FinitePair, m: &FiniteModule) -> AxiomReport {
    let mut report = AxiomReport::new("module", None);
    let n = m.size();
    let k = p.size();
    let (z, o) = (p.zero(), p.one());
    let lbl = |x: usize| m.label(x).to_string();
    let al = |a: usize| p.label(&a);

    let triples = index_tuples(n, 3, None, 0);
    report.push(
        "addition associative",
        tally(&triples, |t| {
            let (x, y, w) = (t[0], t[1], t[2]);
            Outcome::require(m.add(m.add(x, y), w) == m.add(x, m.add(y, w)), || {
                vec![lbl(x), lbl(y), lbl(w)]
            })
        }),
    );
    let pairs = index_tuples(n, 2, None, 0);
    report.push(
        "addition commutative",
        tally(&pairs, |t| {
            Outcome::require(m.add(t[0], t[1]) == m.add(t[1], t[0]), || vec![lbl(t[0]), lbl(t[1])])
        }),
    );
    let singles: Vec<usize> = (0..n).collect();
    report.push(
        "zero neutral",
        tally(&singles, |&x| Outcome::require(m.add(x, m.zero) == x, || vec![lbl(x)])),
    );
    report.push(
        "unit acts trivially",
        tally(&singles, |&x| Outcome::require(m.act(o, x) == x, || vec![lbl(x)])),
    );
    report.push(
        "zero scalar annihilates",
        tally(&singles, |&x| Outcome::require(m.act(z, x) == m.zero, || vec![lbl(x)])),
    );
    let scalars: Vec<usize> = (0..k).collect();
    report.push(
        "scalar times zero",
        tally(&scalars, |&a| Outcome::require(m.act(a, m.zero) == m.zero, || vec![al(a)])),
    );
    let amm: Vec<(usize, usize, usize)> = (0..k)
        .flat_map(|a| (0..n).flat_map(move |x| (0..n).map(move |y| (a, x, y))))
        .collect();
    report.push(
        "distributive over module sum",
        tally(&amm, |&(a, x, y)| {
            Outcome::require(m.act(a, m.add(x, y)) == m.add(m.act(a, x), m.act(a, y)), || {
                vec![al(a), lbl(x), lbl(y)]
            })
        }),
    );
    let aam: Vec<(usize, usize, usize)> = (0..k)
        .flat_map(|a| (0..k).flat_map(move |b| (0..n).map(move |x| (a, b, x))))
        .collect();
    report.push(
        "distributive over scalar sum",
        tally(&aam, |&(a, b, x)| {
            Outcome::require(m.act(p.add(&a, &b), x) == m.add(m.act(a, x), m.act(b, x)), || {
                vec![al(a), al(b), lbl(x)]
            })
        }),
    );
    report.push(
        "action associative",
        tally(&aam, |&(a, b, x)| {
            Outcome::require(m.act(p.mul(&a, &b), x) == m.act(a, m.act(b, x)), || {
                vec![al(a), al(b), lbl(x)]
            })
        }),
    );
    report
}

/// A module `M` with a submodule `N` (the map into `M` is the inclusion) and
/// a tangible subset.
#[derive(Debug, Clone)]
pub struct ModulePair {
    base: FinitePair,
    module: FiniteModule,
    sub: Vec<bool>,
    tangible: Vec<bool>,
}

impl ModulePair {
    pub fn new(base: FinitePair, module: FiniteModule, sub: &[usize], tangible: &[usize]) -> Result<Self> {
        if module.act.len() != base.size() {
            return Err(Error::Structure("action table does not match the base".into()));
        }
        let n = module.size();
        Ok(ModulePair {
            sub: mask_of(n, sub)?,
            tangible: mask_of(n, tangible)?,
            base,
            module,
        })
    }

    /// `N = A0 M`, the submodule generated by quasi-zero multiples.
    pub fn with_quasi_zero_sub(base: FinitePair, module: FiniteModule, tangible: &[usize]) -> Result<Self> {
        let gens: Vec<usize> = base
            .a0_indices()
            .into_iter()
            .flat_map(|a| (0..module.size()).map(move |x| (a, x)))
            .map(|(a, x)| module.act(a, x))
            .sorted()
            .dedup()
            .collect();
        let sub = indices_of(&module.span(&gens));
        Self::new(base, module, &sub, tangible)
    }

    pub fn base(&self) -> &FinitePair {
        &self.base
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn sub_mask(&self) -> &[bool] {
        &self.sub
    }

    pub fn sub_indices(&self) -> Vec<usize> {
        indices_of(&self.sub)
    }

    pub fn tangible_indices(&self) -> Vec<usize> {
        indices_of(&self.tangible)
    }

    pub fn in_sub(&self, x: usize) -> bool {
        self.sub[x]
    }

    /// `x <= y` iff `y = x + n` for some `n` in `N`.
    pub fn precedes(&self, x: usize, y: usize) -> bool {
        (0..self.module.size()).any(|n| self.sub[n] && self.module.add(x, n) == y)
    }

    fn precedes_table(&self) -> Vec<Vec<bool>> {
        let n = self.module.size();
        let mut t = vec![vec![false; n]; n];
        for (x, row) in t.iter_mut().enumerate() {
            for s in indices_of(&self.sub) {
                row[self.module.add(x, s)] = true;
            }
        }
        t
    }
}

/// Module laws, `N` a submodule, `A0 M` inside `N`, and, when asked, the
/// tangible spanning conditions.
pub fn verify_module_pair(mp: &ModulePair, admissible: bool) -> AxiomReport {
    let m = &mp.module;
    let mut report = verify_module(&mp.base, m);
    report.push(
        "N is a submodule",
        tally(&[()], |_| {
            let members = mp.sub_indices();
            if !mp.sub[m.zero] {
                return Outcome::Violated(vec![m.label(m.zero).to_string()]);
            }
            for &x in &members {
                for &y in &members {
                    if !mp.sub[m.add(x, y)] {
                        return Outcome::Violated(vec![m.label(x).into(), m.label(y).into()]);
                    }
                }
                for a in 0..mp.base.size() {
                    if !mp.sub[m.act(a, x)] {
                        return Outcome::Violated(vec![mp.base.label(&a), m.label(x).into()]);
                    }
                }
            }
            Outcome::Ok
        }),
    );
    let qm: Vec<(usize, usize)> = mp
        .base
        .a0_indices()
        .into_iter()
        .flat_map(|a| (0..m.size()).map(move |x| (a, x)))
        .collect();
    report.push(
        "A0 M inside N",
        tally(&qm, |&(a, x)| {
            Outcome::require(mp.sub[m.act(a, x)], || {
                vec![mp.base.label(&a), m.label(x).into(), m.label(m.act(a, x)).into()]
            })
        }),
    );
    if admissible {
        let tang = mp.tangible_indices();
        report.push(
            "tangibles outside N",
            tally(&tang, |&x| Outcome::require(!mp.sub[x], || vec![m.label(x).into()])),
        );
        report.push(
            "tangibles span",
            tally(&[()], |_| {
                let mut reach = vec![false; m.size()];
                reach[m.zero] = true;
                let mut changed = true;
                while changed {
                    changed = false;
                    for x in 0..m.size() {
                        if !reach[x] {
                            continue;
                        }
                        for &t in &tang {
                            let y = m.add(x, t);
                            if !reach[y] {
                                reach[y] = true;
                                changed = true;
                            }
                        }
                    }
                }
                match reach.iter().position(|r| !r) {
                    Some(x) => Outcome::Violated(vec![m.label(x).into()]),
                    None => Outcome::Ok,
                }
            }),
        );
        let tt: Vec<(usize, usize)> = mp
            .base
            .tangible_indices()
            .into_iter()
            .flat_map(|a| tang.iter().map(move |&x| (a, x)))
            .collect();
        report.push(
            "tangible action",
            tally(&tt, |&(a, x)| {
                Outcome::require(mp.tangible[m.act(a, x)], || vec![mp.base.label(&a), m.label(x).into()])
            }),
        );
    }
    report
}

/// Index of the vector `coords` in the free module of rank `coords.len()`;
/// coordinate 0 is the most significant digit.
pub fn free_index(base_size: usize, coords: &[usize]) -> usize {
    coords.iter().fold(0, |acc, &c| acc * base_size + c)
}

pub fn free_coords(base_size: usize, rank: usize, mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; rank];
    for slot in out.iter_mut().rev() {
        *slot = idx % base_size;
        idx /= base_size;
    }
    out
}

/// `(A^I, A0^I)` with componentwise operations. Tangibles are the vectors
/// `a e_i` with `a` tangible.
pub fn free_module_pair(p: &FinitePair, rank: usize) -> Result<ModulePair> {
    let k = p.size();
    let n = k
        .checked_pow(rank as u32)
        .filter(|&n| n <= FREE_MODULE_LIMIT)
        .ok_or_else(|| Error::TooLarge {
            what: "free module".into(),
            size: k.saturating_pow(rank as u32),
            limit: FREE_MODULE_LIMIT,
            estimate: format!("{k}^{rank}"),
        })?;
    let coords: Vec<Vec<usize>> = (0..n).map(|i| free_coords(k, rank, i)).collect();
    let labels = coords
        .iter()
        .map(|c| format!("({})", c.iter().map(|a| p.label(a)).join(",")))
        .collect();
    let add = coords
        .iter()
        .map(|x| {
            coords
                .iter()
                .map(|y| {
                    let s: Vec<usize> = x.iter().zip(y).map(|(a, b)| p.add(a, b)).collect();
                    free_index(k, &s)
                })
                .collect()
        })
        .collect();
    let act = (0..k)
        .map(|a| {
            coords
                .iter()
                .map(|x| {
                    let s: Vec<usize> = x.iter().map(|b| p.mul(&a, b)).collect();
                    free_index(k, &s)
                })
                .collect()
        })
        .collect();
    let zero = free_index(k, &vec![p.zero(); rank]);
    let module = FiniteModule::new(labels, add, act, zero, k)?;
    let sub: Vec<usize> = (0..n)
        .filter(|&i| coords[i].iter().all(|a| p.in_a0(a)))
        .collect();
    let tangible: Vec<usize> = (0..n)
        .filter(|&i| {
            let nonzero: Vec<&usize> = coords[i].iter().filter(|&&a| a != p.zero()).collect();
            nonzero.len() == 1 && p.is_tangible(nonzero[0])
        })
        .collect();
    ModulePair::new(p.clone(), module, &sub, &tangible)
}

/// The unit vectors `e_1, ..., e_n` of a free module pair.
pub fn unit_vectors(p: &FinitePair, rank: usize) -> Vec<usize> {
    (0..rank)
        .map(|i| {
            let mut c = vec![p.zero(); rank];
            c[i] = p.one();
            free_index(p.size(), &c)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseCheck {
    pub spans: Verdict,
    pub independent: Verdict,
    pub is_base: Verdict,
    /// An element no combination of the set reaches from below.
    pub span_witness: Option<String>,
    /// Two coefficient tuples `a`, `a'` with `sum a s <= sum a' s` but some
    /// `a_i` not below `a'_i`.
    pub independence_witness: Option<Vec<String>>,
    /// Whether independence was checked on every coefficient tuple.
    pub exhaustive: bool,
}

const INDEPENDENCE_TUPLES: usize = 2000;

/// Spanning (every element sits above a combination of `set`, modulo `N`)
/// and independence (the order on combinations reflects the coefficient
/// order).
pub fn base_check(mp: &ModulePair, set: &[usize], seed: u64) -> BaseCheck {
    let m = &mp.module;
    let p = &mp.base;
    let le = mp.precedes_table();
    let span = m.span(set);
    let span_witness = (0..m.size())
        .find(|&v| !(0..m.size()).any(|c| span[c] && le[c][v]))
        .map(|v| m.label(v).to_string());
    let spans = Verdict::from_bool(span_witness.is_none());

    let k = p.size();
    let total = (k as u128).checked_pow(set.len() as u32);
    let exhaustive = total.is_some_and(|t| t <= INDEPENDENCE_TUPLES as u128);
    let tuples = index_tuples(k, set.len(), Some(INDEPENDENCE_TUPLES), seed);
    let combos: Vec<usize> = tuples
        .iter()
        .map(|a| {
            a.iter()
                .zip(set)
                .fold(m.zero, |acc, (&ai, &si)| m.add(acc, m.act(ai, si)))
        })
        .collect();
    let ple = p.preceq0_table();
    let independence_witness = (0..tuples.len())
        .into_par_iter()
        .find_map_first(|i| {
            (0..tuples.len()).find_map(|j| {
                let ok = !le[combos[i]][combos[j]]
                    || tuples[i].iter().zip(&tuples[j]).all(|(&a, &b)| ple[a][b]);
                (!ok).then(|| {
                    let fmt = |t: &[usize]| format!("[{}]", t.iter().map(|a| p.label(a)).join(","));
                    vec![fmt(&tuples[i]), fmt(&tuples[j])]
                })
            })
        });
    let independent = match (&independence_witness, exhaustive) {
        (Some(_), _) => Verdict::Fails,
        (None, true) => Verdict::Holds,
        (None, false) => Verdict::Unknown,
    };
    let is_base = match (spans, independent) {
        (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
        (Verdict::Holds, Verdict::Holds) => Verdict::Holds,
        _ => Verdict::Unknown,
    };
    BaseCheck {
        spans,
        independent,
        is_base,
        span_witness,
        independence_witness,
        exhaustive,
    }
}

/// `[big : small]`: the least number of elements that generate the
/// submodule `big` together with the submodule `small`.
pub fn rank(m: &FiniteModule, big: &[usize], small: &[usize]) -> Result<usize> {
    let n = m.size();
    let big_mask = mask_of(n, big)?;
    let small_mask = mask_of(n, small)?;
    if !m.is_submodule(&big_mask) || !m.is_submodule(&small_mask) {
        return Err(Error::Precondition("rank needs two submodules".into()));
    }
    if small.iter().any(|&x| !big_mask[x]) {
        return Err(Error::Precondition("the smaller submodule is not contained in the larger".into()));
    }
    let big_count = big_mask.iter().filter(|b| **b).count();
    if big_count > RANK_MODULE_LIMIT {
        return Err(Error::TooLarge {
            what: "rank search".into(),
            size: big_count,
            limit: RANK_MODULE_LIMIT,
            estimate: format!("2^{big_count} candidate sets"),
        });
    }
    let candidates: Vec<usize> = (0..n).filter(|&x| big_mask[x] && !small_mask[x]).collect();
    for size in 0..=RANK_GENERATOR_LIMIT.min(candidates.len()) {
        let combos: Vec<Vec<usize>> = candidates.iter().copied().combinations(size).collect();
        let hit = combos
            .par_iter()
            .any(|g| m.span_over(g, &small_mask) == big_mask);
        if hit {
            return Ok(size);
        }
    }
    Err(Error::BoundExhausted {
        what: format!("no generating set of size <= {RANK_GENERATOR_LIMIT}"),
        lower_bound: RANK_GENERATOR_LIMIT + 1,
    })
}

/// All module homomorphisms `src -> dst` over the same base, by
/// backtracking with every law checked as soon as its elements are
/// assigned. `order` lists the source elements in assignment order.
pub fn module_homomorphisms(base_size: usize, src: &FiniteModule, dst: &FiniteModule) -> Vec<Vec<usize>> {
    let n = src.size();
    let mut out = Vec::new();
    let mut f: Vec<Option<usize>> = vec![None; n];
    fn consistent(src: &FiniteModule, dst: &FiniteModule, base_size: usize, f: &[Option<usize>], x: usize) -> bool {
        let fx = f[x].expect("just assigned");
        for y in 0..src.size() {
            let Some(fy) = f[y] else { continue };
            if let Some(fs) = f[src.add(x, y)] {
                if fs != dst.add(fx, fy) {
                    return false;
                }
            }
            for z in 0..src.size() {
                if src.add(y, z) == x {
                    if let Some(fz) = f[z] {
                        if dst.add(fy, fz) != fx {
                            return false;
                        }
                    }
                }
            }
        }
        for a in 0..base_size {
            if let Some(fa) = f[src.act(a, x)] {
                if fa != dst.act(a, fx) {
                    return false;
                }
            }
            for y in 0..src.size() {
                if src.act(a, y) == x {
                    if let Some(fy) = f[y] {
                        if dst.act(a, fy) != fx {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
    fn go(
        src: &FiniteModule,
        dst: &FiniteModule,
        base_size: usize,
        f: &mut Vec<Option<usize>>,
        pos: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == src.size() {
            out.push(f.iter().map(|v| v.expect("complete")).collect());
            return;
        }
        for v in 0..dst.size() {
            f[pos] = Some(v);
            if consistent(src, dst, base_size, f, pos) {
                go(src, dst, base_size, f, pos + 1, out);
            }
        }
        f[pos] = None;
    }
    go(src, dst, base_size, &mut f, 0, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalProbe {
    pub assignments: usize,
    /// Assignments with no morphism or with more than one.
    pub failures: Vec<String>,
    /// Morphisms that send `N` outside the target's `N`.
    pub sub_violations: Vec<String>,
}

impl UniversalProbe {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.sub_violations.is_empty()
    }
}

/// For every assignment of the unit vectors into `target`, counts the
/// morphisms out of the free pair extending it; each count must be one.
pub fn universal_property_probe(free: &ModulePair, rank: usize, target: &ModulePair) -> UniversalProbe {
    let p = &free.base;
    let units = unit_vectors(p, rank);
    let homs = module_homomorphisms(p.size(), &free.module, &target.module);
    let mut by_assignment: BTreeMap<Vec<usize>, Vec<&Vec<usize>>> = BTreeMap::new();
    for h in &homs {
        by_assignment
            .entry(units.iter().map(|&u| h[u]).collect())
            .or_default()
            .push(h);
    }
    let tgt = &target.module;
    let mut failures = Vec::new();
    let mut sub_violations = Vec::new();
    let mut assignments = 0;
    for assignment in (0..rank).map(|_| 0..tgt.size()).multi_cartesian_product() {
        assignments += 1;
        let found = by_assignment.get(&assignment).map_or(0, |v| v.len());
        let show = || assignment.iter().map(|&x| tgt.label(x)).join(",");
        if found != 1 {
            failures.push(format!("[{}] -> {found} morphisms", show()));
            continue;
        }
        let h = by_assignment[&assignment][0];
        if let Some(x) = free.sub_indices().into_iter().find(|&x| !target.in_sub(h[x])) {
            sub_violations.push(format!("[{}] sends {} outside N", show(), free.module.label(x)));
        }
    }
    if rank == 0 {
        assignments = 1;
    }
    UniversalProbe {
        assignments,
        failures,
        sub_violations,
    }
}

/// For a coefficient `c`, a combination `sum h_i b_i` over `h` lying below
/// `c b_1`; returns its first coefficient.
pub fn first_coefficient_below(mp: &ModulePair, basis: &[usize], h: &[usize], c: usize) -> Option<usize> {
    let m = &mp.module;
    let target = m.act(c, basis[0]);
    (0..basis.len())
        .map(|_| h.iter().copied())
        .multi_cartesian_product()
        .find(|coeffs| {
            let v = coeffs
                .iter()
                .zip(basis)
                .fold(m.zero, |acc, (&a, &b)| m.add(acc, m.act(a, b)));
            mp.precedes(v, target)
        })
        .map(|coeffs| coeffs[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{boolean_pair, doubled_boolean, supertropical_three};
    use crate::semiring::boolean;

    fn free(p: &FinitePair, r: usize) -> ModulePair {
        free_module_pair(p, r).expect("small free module")
    }

    #[test]
    fn free_pairs_verify() {
        for p in [boolean_pair(), doubled_boolean(), supertropical_three()] {
            for r in 1..=3 {
                let mp = free(&p, r);
                let report = verify_module_pair(&mp, true);
                assert!(report.is_valid(), "{} rank {r}: {:?}", p.name(), report.violations().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn rank_one_free_pair_is_the_pair_itself() {
        let p = supertropical_three();
        let mp = free(&p, 1);
        assert_eq!(mp.module().size(), p.size());
        for a in 0..p.size() {
            for b in 0..p.size() {
                assert_eq!(mp.module().add(a, b), p.add(&a, &b));
                assert_eq!(mp.module().act(a, b), p.mul(&a, &b));
            }
        }
        assert_eq!(mp.sub_indices(), p.a0_indices());
    }

    #[test]
    fn quasi_zero_submodule_is_valid() {
        for p in [doubled_boolean(), supertropical_three()] {
            let module = free(&p, 2).module().clone();
            let mp = ModulePair::with_quasi_zero_sub(p.clone(), module, &[]).unwrap();
            assert!(verify_module_pair(&mp, false).is_valid(), "{}", p.name());
        }
    }

    #[test]
    fn zero_submodule_misses_quasi_zero_multiples() {
        let p = supertropical_three();
        let module = FiniteModule::regular(&p);
        let mp = ModulePair::new(p.clone(), module, &[p.zero()], &p.tangible_indices()).unwrap();
        let report = verify_module_pair(&mp, false);
        let w = report.violation("A0 M inside N").expect("violation");
        assert_eq!(w, &vec!["av".to_string(), "a".to_string(), "av".to_string()]);
    }

    #[test]
    fn doubled_boolean_square_has_unit_vector_base() {
        let p = doubled_boolean();
        let mp = free(&p, 2);
        assert_eq!(mp.module().size(), 16);
        let check = base_check(&mp, &unit_vectors(&p, 2), 1);
        assert_eq!(check.spans, Verdict::Holds);
        assert_eq!(check.independent, Verdict::Holds);
        assert_eq!(check.is_base, Verdict::Holds);
        assert!(check.exhaustive);
    }

    #[test]
    fn unit_vectors_are_bases_everywhere() {
        for p in [boolean_pair(), doubled_boolean(), supertropical_three()] {
            for r in 1..=3 {
                let check = base_check(&free(&p, r), &unit_vectors(&p, r), 2);
                assert_eq!(check.is_base, Verdict::Holds, "{} rank {r}", p.name());
            }
        }
    }

    #[test]
    fn whole_carrier_spans_but_is_dependent() {
        let p = doubled_boolean();
        let mp = free(&p, 2);
        let all: Vec<usize> = (0..mp.module().size()).collect();
        let check = base_check(&mp, &all, 3);
        assert_eq!(check.spans, Verdict::Holds);
        assert_eq!(check.independent, Verdict::Fails);
        assert!(check.independence_witness.is_some());
    }

    #[test]
    fn missing_unit_vector_fails_to_span() {
        for p in [boolean_pair(), doubled_boolean(), supertropical_three()] {
            let mp = free(&p, 2);
            let e = unit_vectors(&p, 2);
            let check = base_check(&mp, &e[..1], 4);
            assert_eq!(check.spans, Verdict::Fails);
            // Oracle: some vector with a non-quasi-zero second coordinate is
            // not reachable.
            let w = check.span_witness.expect("witness");
            let x = mp.module().index_of(&w).unwrap();
            let c = free_coords(p.size(), 2, x);
            assert!(!p.in_a0(&c[1]));
        }
    }

    /// Oracle for spanning: brute force over all coefficient tuples.
    #[test]
    fn spanning_matches_coefficient_enumeration() {
        let p = supertropical_three();
        let mp = free(&p, 2);
        let m = mp.module();
        let sets: Vec<Vec<usize>> = (0..m.size()).combinations(2).collect();
        for set in sets {
            let combos: Vec<usize> = (0..2)
                .map(|_| 0..p.size())
                .multi_cartesian_product()
                .map(|a| m.add(m.act(a[0], set[0]), m.act(a[1], set[1])))
                .collect();
            let expected = (0..m.size()).all(|v| combos.iter().any(|&c| mp.precedes(c, v)));
            assert_eq!(base_check(&mp, &set, 0).spans, Verdict::from_bool(expected), "{set:?}");
        }
    }

    #[test]
    fn rank_examples() {
        let p = boolean_pair();
        let mp = free(&p, 2);
        let m = mp.module();
        let all: Vec<usize> = (0..m.size()).collect();
        assert_eq!(rank(m, &all, &all).unwrap(), 0);
        assert_eq!(rank(m, &all, &mp.sub_indices()).unwrap(), 2);
        assert_eq!(rank(m, &all, &[m.zero()]).unwrap(), 2);
    }

    /// Over B a finite module is a join semilattice, so the relative rank is
    /// the number of join-irreducibles outside the smaller submodule.
    #[test]
    fn rank_matches_join_irreducible_count_over_b() {
        let p = boolean_pair();
        for r in 1..=3 {
            let mp = free(&p, r);
            let m = mp.module();
            let subs = all_submodules(m);
            for big in &subs {
                for small in subs.iter().filter(|s| s.iter().all(|x| big.contains(x))) {
                    let ji = big
                        .iter()
                        .filter(|&&x| x != m.zero())
                        .filter(|&&x| {
                            let below: Vec<usize> = big
                                .iter()
                                .copied()
                                .filter(|&y| y != x && m.add(x, y) == x)
                                .collect();
                            below.iter().fold(m.zero(), |acc, &y| m.add(acc, y)) != x
                        })
                        .filter(|x| !small.contains(x))
                        .count();
                    assert_eq!(rank(m, big, small).unwrap(), ji, "r={r} big={big:?} small={small:?}");
                }
            }
        }
    }

    fn all_submodules(m: &FiniteModule) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..m.size())
            .map(|x| indices_of(&m.span(&[x])))
            .collect();
        let mut i = 0;
        while i < out.len() {
            for j in 0..out.len() {
                let gens: Vec<usize> = out[i].iter().chain(&out[j]).copied().collect();
                let s = indices_of(&m.span(&gens));
                if !out.contains(&s) {
                    out.push(s);
                }
            }
            i += 1;
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn rank_is_sub_additive_on_chains() {
        for p in [boolean_pair(), supertropical_three()] {
            let mp = free(&p, 2);
            let m = mp.module();
            let subs = all_submodules(m);
            let contains = |a: &Vec<usize>, b: &Vec<usize>| b.iter().all(|x| a.contains(x));
            let mut chains = 0;
            for top in subs.iter().filter(|s| s.len() <= RANK_MODULE_LIMIT) {
                for mid in subs.iter().filter(|s| contains(top, s)) {
                    for low in subs.iter().filter(|s| contains(mid, s)) {
                        let whole = rank(m, top, low).unwrap();
                        let upper = rank(m, top, mid).unwrap();
                        let lower = rank(m, mid, low).unwrap();
                        assert!(whole <= upper + lower, "{} {top:?} {mid:?} {low:?}", p.name());
                        chains += 1;
                    }
                }
            }
            assert!(chains > 10);
        }
    }

    /// The product bound fails already for `B^2 > B e1 > 0`: both steps need
    /// one generator, the whole chain needs two.
    #[test]
    fn rank_is_not_sub_multiplicative() {
        let p = boolean_pair();
        let mp = free(&p, 2);
        let m = mp.module();
        let all: Vec<usize> = (0..m.size()).collect();
        let e1 = unit_vectors(&p, 2)[0];
        let line = indices_of(&m.span(&[e1]));
        let zero = vec![m.zero()];
        let whole = rank(m, &all, &zero).unwrap();
        let upper = rank(m, &all, &line).unwrap();
        let lower = rank(m, &line, &zero).unwrap();
        assert_eq!((whole, upper, lower), (2, 1, 1));
        assert!(whole > upper * lower);
    }

    #[test]
    fn rank_refuses_large_modules() {
        let p = supertropical_three();
        let mp = free(&p, 3);
        let m = mp.module();
        let all: Vec<usize> = (0..m.size()).collect();
        assert!(matches!(rank(m, &all, &[m.zero()]), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn rank_rejects_non_submodules() {
        let p = boolean_pair();
        let mp = free(&p, 2);
        let e = unit_vectors(&p, 2);
        let m = mp.module();
        assert!(matches!(rank(m, &e, &[m.zero()]), Err(Error::Precondition(_))));
    }

    fn small_targets(p: &FinitePair) -> Vec<ModulePair> {
        let mut out = vec![ModulePair::with_quasi_zero_sub(p.clone(), FiniteModule::regular(p), &p.tangible_indices()).unwrap()];
        if p.size() == 2 {
            // The chain 0 < e < 1 as a module over B.
            let chain = crate::fixtures::chain_pair();
            let module = FiniteModule::new(
                chain.semiring().label_list().to_vec(),
                chain.semiring().add_table().to_vec(),
                vec![vec![0, 0, 0], vec![0, 1, 2]],
                0,
                2,
            )
            .unwrap();
            out.push(ModulePair::new(p.clone(), module, &[0], &[2]).unwrap());
            out.push(free(p, 2));
        }
        out
    }

    #[test]
    fn free_pairs_have_the_universal_property() {
        for p in [boolean_pair(), doubled_boolean(), supertropical_three()] {
            for target in small_targets(&p) {
                assert!(target.module().size() <= 4);
                assert!(verify_module_pair(&target, false).is_valid());
                for r in 1..=2 {
                    let probe = universal_property_probe(&free(&p, r), r, &target);
                    assert_eq!(probe.assignments, target.module().size().pow(r as u32));
                    assert!(probe.holds(), "{} rank {r}: {probe:?}", p.name());
                }
            }
        }
    }

    #[test]
    fn morphism_search_finds_identity_and_zero() {
        let p = supertropical_three();
        let m = FiniteModule::regular(&p);
        let homs = module_homomorphisms(p.size(), &m, &m);
        let id: Vec<usize> = (0..m.size()).collect();
        assert!(homs.contains(&id));
        assert!(homs.contains(&vec![m.zero(); m.size()]));
        // Oracle: a map of the regular module is fixed by the image of one.
        for h in &homs {
            for a in 0..p.size() {
                assert_eq!(h[a], p.mul(&a, &h[p.one()]));
            }
        }
    }

    /// A base that still spans over a sub-semiring `H` leaves every
    /// coefficient above some element of `H`.
    #[test]
    fn spanning_over_a_subsemiring_bounds_coefficients() {
        for p in [boolean_pair(), doubled_boolean(), supertropical_three()] {
            let mp = free(&p, 2);
            let basis = unit_vectors(&p, 2);
            let k = p.size();
            let mut tried = 0;
            for mask in 0u32..(1 << k) {
                let h: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
                let closed = h.contains(&p.zero())
                    && h.contains(&p.one())
                    && h.iter().all(|a| h.iter().all(|b| h.contains(&p.add(a, b)) && h.contains(&p.mul(a, b))));
                if !closed {
                    continue;
                }
                let m = mp.module();
                let spans = (0..m.size()).all(|v| {
                    (0..2)
                        .map(|_| h.iter().copied())
                        .multi_cartesian_product()
                        .any(|c| mp.precedes(m.add(m.act(c[0], basis[0]), m.act(c[1], basis[1])), v))
                });
                if !spans {
                    continue;
                }
                tried += 1;
                for c in 0..k {
                    let h1 = first_coefficient_below(&mp, &basis, &h, c).expect("spanning gives a combination");
                    assert!(p.preceq0_table()[h1][c], "{}: {h1} vs {c}", p.name());
                }
            }
            assert!(tried >= 1);
        }
    }

    #[test]
    fn module_shape_errors() {
        let b = boolean();
        assert!(FiniteModule::new(vec!["0".into()], vec![vec![0]], vec![vec![0]], 0, b.size()).is_err());
        assert!(FiniteModule::new(vec!["0".into()], vec![vec![1]], vec![vec![0], vec![0]], 0, 2).is_err());
    }
}
