use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Three-valued answer for searches that may run out of room.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// Nothing decisive was found inside the search window.
    Unknown,
}

impl Verdict {
    /// Outcome of an existence search: a hit is definite, a miss is definite
    /// only when the search space was exhaustive.
    pub fn from_search(found: bool, exhaustive: bool) -> Verdict {
        match (found, exhaustive) {
            (true, _) => Verdict::Holds,
            (false, true) => Verdict::Fails,
            (false, false) => Verdict::Unknown,
        }
    }

    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    pub fn fails(self) -> bool {
        self == Verdict::Fails
    }

    pub fn not(self) -> Verdict {
        match self {
            Verdict::Holds => Verdict::Fails,
            Verdict::Fails => Verdict::Holds,
            Verdict::Unknown => Verdict::Unknown,
        }
    }
}

/// The elements a check ranges over. `window` is `None` when the list is the
/// whole carrier, otherwise it records the sampling bound used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain<E> {
    pub elements: Vec<E>,
    pub window: Option<i64>,
}

impl<E: Clone> Domain<E> {
    pub fn exhaustive(elements: Vec<E>) -> Self {
        Domain {
            elements,
            window: None,
        }
    }

    pub fn windowed(elements: Vec<E>, window: i64) -> Self {
        Domain {
            elements,
            window: Some(window),
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        self.window.is_none()
    }

    pub fn filter(&self, keep: impl Fn(&E) -> bool) -> Domain<E> {
        Domain {
            elements: self.elements.iter().filter(|e| keep(e)).cloned().collect(),
            window: self.window,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// One law checked over a domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub checked: u64,
    /// Instances whose truth could not be decided inside the window.
    pub unknown: u64,
    /// First violating instance in canonical order, as element labels.
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub subject: String,
    pub window: Option<i64>,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn new(subject: impl Into<String>, window: Option<i64>) -> Self {
        AxiomReport {
            subject: subject.into(),
            window,
            checks: Vec::new(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn violations(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| c.witness.is_some())
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn violation(&self, axiom: &str) -> Option<&Vec<String>> {
        self.check(axiom).and_then(|c| c.witness.as_ref())
    }

    pub fn push(&mut self, axiom: &str, tally: Tally) {
        self.checks.push(AxiomCheck {
            axiom: axiom.to_string(),
            checked: tally.checked,
            unknown: tally.unknown,
            witness: tally.witness,
        });
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }
}

/// Outcome of one instance of a law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Unknown,
    Violated(Vec<String>),
}

impl Outcome {
    pub fn from_verdict(v: crate::report::Verdict, witness: impl FnOnce() -> Vec<String>) -> Self {
        match v {
            Verdict::Holds => Outcome::Ok,
            Verdict::Unknown => Outcome::Unknown,
            Verdict::Fails => Outcome::Violated(witness()),
        }
    }

    pub fn require(ok: bool, witness: impl FnOnce() -> Vec<String>) -> Self {
        if ok {
            Outcome::Ok
        } else {
            Outcome::Violated(witness())
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: u64,
    pub unknown: u64,
    pub witness: Option<Vec<String>>,
}

/// Evaluates `law` on every instance in parallel and keeps the first
/// violation in input order, so reports do not depend on scheduling.
pub fn tally<T: Sync>(instances: &[T], law: impl Fn(&T) -> Outcome + Sync) -> Tally {
    let outcomes: Vec<Outcome> = instances.par_iter().map(&law).collect();
    let mut t = Tally {
        checked: instances.len() as u64,
        ..Tally::default()
    };
    for o in outcomes {
        match o {
            Outcome::Ok => {}
            Outcome::Unknown => t.unknown += 1,
            Outcome::Violated(w) => {
                if t.witness.is_none() {
                    t.witness = Some(w);
                }
            }
        }
    }
    t
}

/// Cap on instances per law when the domain is a sampling window.
pub const SAMPLE_LIMIT: usize = 20_000;

/// All `k`-tuples of indices into a domain of size `n`, or a seeded random
/// subset of `limit` of them when the full product is larger.
pub fn index_tuples(n: usize, k: usize, limit: Option<usize>, seed: u64) -> Vec<Vec<usize>> {
    let total = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    match limit {
        Some(lim) if total > lim as u128 => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let idx: Vec<usize> = (0..n).collect();
            (0..lim)
                .map(|_| (0..k).map(|_| *idx.choose(&mut rng).expect("nonempty domain")).collect())
                .collect()
        }
        _ => {
            let mut out = Vec::with_capacity(total as usize);
            let mut cur = vec![0usize; k];
            if n == 0 {
                return out;
            }
            loop {
                out.push(cur.clone());
                let mut pos = k;
                loop {
                    if pos == 0 {
                        return out;
                    }
                    pos -= 1;
                    cur[pos] += 1;
                    if cur[pos] < n {
                        break;
                    }
                    cur[pos] = 0;
                }
            }
        }
    }
}
