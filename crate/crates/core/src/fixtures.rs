//! Small named pairs shared by tests, acceptance runs and the CLI.

use crate::constructions::{double, supertropical_extension, OrderedMonoid};
use crate::error::Result;
use crate::hyper::{krasner_hyperfield, powerset_pair, A0Choice};
use crate::pairs::FinitePair;
use crate::semiring::{boolean, integers_mod, FiniteSemiring, Semiring};

/// `(B, {0})` with `T = {1}`.
pub fn boolean_pair() -> FinitePair {
    FinitePair::new("boolean", boolean(), &[0], &[1]).expect("valid indices")
}

pub fn doubled_boolean() -> FinitePair {
    double(&boolean())
        .expect("boolean semiring is valid")
        .with_name("doubled boolean")
}

/// Supertropical pair `{0, a, av}` over the trivial monoid.
pub fn supertropical_three() -> FinitePair {
    supertropical_extension(&OrderedMonoid::trivial("a"))
        .expect("trivial monoid is ordered")
        .with_name("supertropical three")
}

pub fn krasner_powerset(choice: A0Choice) -> FinitePair {
    let name = match choice {
        A0Choice::ContainsZero => "krasner powerset contains_zero",
        A0Choice::SizeGeTwo => "krasner powerset size_ge_two",
    };
    powerset_pair(&krasner_hyperfield(), choice)
        .expect("krasner hyperfield is valid")
        .with_name(name)
}

/// `Z/4` with A0 = `{0, 2}` and `T = {1, 3}`.
pub fn mod4_pair() -> FinitePair {
    FinitePair::new("mod 4", integers_mod(4).expect("n > 0"), &[0, 2], &[1, 3]).expect("valid indices")
}

/// Chain `0 < e < 1` with max and min. A0 = `{0, e}`, `T = {1}`; not
/// spanned by T, and `e` is not regular.
pub fn chain_pair() -> FinitePair {
    let labels = vec!["0".to_string(), "e".to_string(), "1".to_string()];
    let s = FiniteSemiring::from_fn(labels, |a, b| a.max(b), |a, b| a.min(b), 0, 2)
        .expect("chain tables are square");
    FinitePair::new("chain", s, &[0, 1], &[2]).expect("valid indices")
}

/// Upper triangular 2x2 matrices over B. Index bits: `(a, b, d)` for
/// `[[a, b], [0, d]]`. A0 is zero, T the nonzero matrices; the pair is
/// not admissible and serves only non-commutative checks.
pub fn upper_triangular_boolean() -> FinitePair {
    let decode = |i: usize| ((i >> 2) & 1, (i >> 1) & 1, i & 1);
    let encode = |a: usize, b: usize, d: usize| (a << 2) | (b << 1) | d;
    let labels = (0..8)
        .map(|i| {
            let (a, b, d) = decode(i);
            format!("[{a}{b};0{d}]")
        })
        .collect();
    let add = |x: usize, y: usize| x | y;
    let mul = |x: usize, y: usize| {
        let (a1, b1, d1) = decode(x);
        let (a2, b2, d2) = decode(y);
        encode(a1 & a2, (a1 & b2) | (b1 & d2), d1 & d2)
    };
    let s = FiniteSemiring::from_fn(labels, add, mul, 0, encode(1, 0, 1)).expect("square tables");
    let t: Vec<usize> = (1..8).collect();
    FinitePair::new("upper triangular boolean", s, &[0], &t).expect("valid indices")
}

/// The pairs shipped as structure files.
pub fn shipped_pairs() -> Vec<FinitePair> {
    vec![
        boolean_pair(),
        doubled_boolean(),
        supertropical_three(),
        krasner_powerset(A0Choice::ContainsZero),
        krasner_powerset(A0Choice::SizeGeTwo),
    ]
}

/// Shipped pairs plus the extra test pairs.
pub fn all_pairs() -> Vec<FinitePair> {
    let mut out = shipped_pairs();
    out.extend([mod4_pair(), chain_pair(), upper_triangular_boolean()]);
    out
}

/// Admissible fixtures, the ones most checks are stated for.
pub fn admissible_pairs() -> Vec<FinitePair> {
    all_pairs()
        .into_iter()
        .filter(|p| crate::pairs::verify_admissible(p).is_valid())
        .collect()
}

pub fn by_name(name: &str) -> Result<FinitePair> {
    all_pairs()
        .into_iter()
        .find(|p| p.name() == name)
        .ok_or_else(|| crate::error::Error::Config(format!("unknown fixture {name}")))
}

/// Every admissible pair structure on a small carrier, by exhaustive choice
/// of A0 and T.
pub fn admissible_structures(s: &FiniteSemiring, name: &str) -> Vec<FinitePair> {
    let n = s.size();
    let (z, o) = (s.zero_index(), s.one_index());
    let others: Vec<usize> = (0..n).filter(|&x| x != z).collect();
    let mut out = Vec::new();
    for amask in 0u32..(1 << others.len()) {
        let a0: Vec<usize> = std::iter::once(z)
            .chain(others.iter().enumerate().filter(|(i, _)| amask >> i & 1 == 1).map(|(_, &x)| x))
            .collect();
        if a0.contains(&o) {
            continue;
        }
        let rest: Vec<usize> = (0..n).filter(|x| !a0.contains(x) && *x != o).collect();
        for tmask in 0u32..(1 << rest.len()) {
            let mut t: Vec<usize> = std::iter::once(o)
                .chain(rest.iter().enumerate().filter(|(i, _)| tmask >> i & 1 == 1).map(|(_, &x)| x))
                .collect();
            t.sort_unstable();
            let mut a0 = a0.clone();
            a0.sort_unstable();
            let label = format!(
                "{name} A0={:?} T={:?}",
                s.labels(&a0),
                s.labels(&t)
            );
            let p = FinitePair::new(label, s.clone(), &a0, &t).expect("valid indices");
            if crate::pairs::verify_admissible(&p).is_valid() {
                out.push(p);
            }
        }
    }
    out
}

/// Small carriers used for exhaustive structure sweeps.
pub fn small_carriers() -> Vec<(String, FiniteSemiring)> {
    let mut out = vec![("B".to_string(), crate::semiring::boolean())];
    for k in 1..=3 {
        out.push((format!("Nmax{k}"), crate::semiring::nmax_trunc(k).expect("k > 0")));
    }
    for m in 2..=5 {
        out.push((format!("Z{m}"), integers_mod(m).expect("m > 0")));
    }
    out.push(("chain".to_string(), chain_pair().semiring().clone()));
    out.push(("double B".to_string(), doubled_boolean().semiring().clone()));
    out.push(("supertropical".to_string(), supertropical_three().semiring().clone()));
    out.push((
        "powerset".to_string(),
        krasner_powerset(A0Choice::ContainsZero).semiring().clone(),
    ));
    out
}
