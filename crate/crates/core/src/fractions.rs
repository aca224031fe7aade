//! Regular elements, the Ore condition and fraction pairs `S^-1 A`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairs::{surpasses, Decision, FinitePair, Pair, SurpassKind};
use crate::report::{index_tuples, tally, AxiomReport, Outcome, Verdict, SAMPLE_LIMIT};
use crate::semiring::FiniteSemiring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularMode {
    /// `b1 s = b2 s` forces `b1 = b2`.
    Left,
    /// `s b1 = s b2` forces `b1 = b2`.
    Right,
    /// `b1 s <=0 b2 s` forces `b1 <=0 b2`.
    PrecedesLeft,
}

/// Cancellation check for `s` over the carrier (or its window).
pub fn check_regular<P: Pair>(p: &P, s: &P::Elem, mode: RegularMode) -> Result<Decision> {
    if !p.is_tangible(s) {
        return Err(Error::Precondition(format!("{} is not tangible", p.label(s))));
    }
    let dom = p.domain();
    let n = dom.len();
    let pairs = index_tuples(n, 2, (!dom.is_exhaustive()).then_some(SAMPLE_LIMIT), 31);
    let le = |a: &P::Elem, b: &P::Elem| surpasses(p, SurpassKind::PrecedesZero, a, b);
    let t = tally(&pairs, |ix| {
        let (b1, b2) = (&dom.elements[ix[0]], &dom.elements[ix[1]]);
        let w = || vec![p.label(b1), p.label(b2)];
        match mode {
            RegularMode::Left => Outcome::require(p.mul(b1, s) != p.mul(b2, s) || b1 == b2, w),
            RegularMode::Right => Outcome::require(p.mul(s, b1) != p.mul(s, b2) || b1 == b2, w),
            RegularMode::PrecedesLeft => match (le(&p.mul(b1, s), &p.mul(b2, s)), le(b1, b2)) {
                (Ok(Verdict::Holds), Ok(Verdict::Fails)) => Outcome::Violated(w()),
                (Ok(Verdict::Holds), Ok(Verdict::Unknown)) | (Err(_), _) | (_, Err(_)) => Outcome::Unknown,
                _ => Outcome::Ok,
            },
        }
    });
    Ok(Decision::from_counterexample(t.witness, dom.window))
}

/// Fraction `den^-1 num`, stored unreduced.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fraction<E> {
    pub num: E,
    pub den: E,
}

impl<E> Fraction<E> {
    pub fn new(num: E, den: E) -> Self {
        Fraction { num, den }
    }
}

type Membership<'a, E> = Box<dyn Fn(&E) -> bool + Send + Sync + 'a>;

/// A base pair with a verified multiplicative set `S` of regular tangibles.
/// `s_sample` lists the members of `S` that witness searches may use.
pub struct LocalizationContext<'a, P: Pair> {
    pub base: &'a P,
    pub s_sample: Vec<P::Elem>,
    in_s: Membership<'a, P::Elem>,
    pub central: bool,
    /// Whether `S` and the carrier were both searched in full.
    pub exhaustive: bool,
}

impl<'a, P: Pair> LocalizationContext<'a, P> {
    /// Checks that `S` is made of regular tangibles, is closed on the
    /// sample, and satisfies the Ore condition.
    pub fn new(
        base: &'a P,
        s_sample: Vec<P::Elem>,
        in_s: impl Fn(&P::Elem) -> bool + Send + Sync + 'a,
        sample_is_all_of_s: bool,
    ) -> Result<Self> {
        let in_s: Membership<'a, P::Elem> = Box::new(in_s);
        if s_sample.is_empty() {
            return Err(Error::Precondition("S is empty".into()));
        }
        if !in_s(&base.one()) {
            return Err(Error::Precondition("S must contain one".into()));
        }
        for s in &s_sample {
            if !in_s(s) {
                return Err(Error::Precondition(format!("{} listed but not in S", base.label(s))));
            }
            for mode in [RegularMode::Left, RegularMode::Right] {
                let d = check_regular(base, s, mode)?;
                if !d.holds {
                    return Err(Error::Precondition(format!(
                        "{} is not {:?}-regular: {:?}",
                        base.label(s),
                        mode,
                        d.witness
                    )));
                }
            }
        }
        for a in &s_sample {
            for b in &s_sample {
                let ab = base.mul(a, b);
                if !in_s(&ab) {
                    return Err(Error::Precondition(format!(
                        "S is not closed: {} * {} = {}",
                        base.label(a),
                        base.label(b),
                        base.label(&ab)
                    )));
                }
            }
        }
        let dom = base.domain();
        let central = s_sample
            .iter()
            .all(|s| dom.elements.iter().all(|b| base.mul(s, b) == base.mul(b, s)));
        let ctx = LocalizationContext {
            base,
            s_sample,
            in_s,
            central,
            exhaustive: sample_is_all_of_s && dom.is_exhaustive(),
        };
        if let Some(w) = ctx.ore_violation() {
            return Err(Error::Precondition(format!("Ore condition fails at {w:?}")));
        }
        Ok(ctx)
    }

    pub fn in_s(&self, x: &P::Elem) -> bool {
        (self.in_s)(x)
    }

    /// Both Ore conditions, searched over the sample. Central sets pass
    /// without a search.
    pub fn ore_violation(&self) -> Option<Vec<String>> {
        if self.central {
            return None;
        }
        let p = self.base;
        let dom = p.domain().elements;
        for s in &self.s_sample {
            for b in &dom {
                if self.ore_pair(s, b).is_none() {
                    return Some(vec!["common multiple".into(), p.label(s), p.label(b)]);
                }
            }
            for b1 in &dom {
                for b2 in &dom {
                    if p.mul(b1, s) == p.mul(b2, s)
                        && !self.s_sample.iter().any(|t| p.mul(t, b1) == p.mul(t, b2))
                    {
                        return Some(vec!["cancellation".into(), p.label(s), p.label(b1), p.label(b2)]);
                    }
                }
            }
        }
        None
    }

    /// `(s', b')` with `s' b = b' s` and `s'` in S.
    fn ore_pair(&self, s: &P::Elem, b: &P::Elem) -> Option<(P::Elem, P::Elem)> {
        let p = self.base;
        if self.central {
            return Some((s.clone(), b.clone()));
        }
        let dom = p.domain().elements;
        self.s_sample.iter().find_map(|s2| {
            let lhs = p.mul(s2, b);
            dom.iter()
                .find(|b2| p.mul(b2, s) == lhs)
                .map(|b2| (s2.clone(), b2.clone()))
        })
    }

    pub fn fraction(&self, num: P::Elem, den: P::Elem) -> Result<Fraction<P::Elem>> {
        if !self.in_s(&den) {
            return Err(Error::Precondition(format!("denominator {} not in S", self.base.label(&den))));
        }
        Ok(Fraction { num, den })
    }

    pub fn zero(&self) -> Fraction<P::Elem> {
        Fraction::new(self.base.zero(), self.base.one())
    }

    pub fn one(&self) -> Fraction<P::Elem> {
        Fraction::new(self.base.one(), self.base.one())
    }

    pub fn label(&self, x: &Fraction<P::Elem>) -> String {
        format!("{}/{}", self.base.label(&x.num), self.base.label(&x.den))
    }

    /// Multipliers `a1, a2` in T with `a1 b1 = a2 b2` and `a1 s1 = a2 s2` in S.
    pub fn equiv_witness(&self, x: &Fraction<P::Elem>, y: &Fraction<P::Elem>) -> Option<(P::Elem, P::Elem)> {
        let p = self.base;
        let ok = |a1: &P::Elem, a2: &P::Elem| {
            let d = p.mul(a1, &x.den);
            p.mul(a1, &x.num) == p.mul(a2, &y.num) && d == p.mul(a2, &y.den) && self.in_s(&d)
        };
        let one = p.one();
        if ok(&one, &one) {
            return Some((one.clone(), one));
        }
        if self.central && ok(&y.den, &x.den) {
            return Some((y.den.clone(), x.den.clone()));
        }
        let t = p.tangible_domain().elements;
        t.iter()
            .flat_map(|a1| t.iter().map(move |a2| (a1, a2)))
            .find(|(a1, a2)| ok(a1, a2))
            .map(|(a1, a2)| (a1.clone(), a2.clone()))
    }

    pub fn frac_equiv(&self, x: &Fraction<P::Elem>, y: &Fraction<P::Elem>) -> Verdict {
        let found = self.equiv_witness(x, y).is_some();
        Verdict::from_search(found, self.base.tangible_domain().is_exhaustive())
    }

    /// Brings both fractions to a common denominator and adds numerators.
    pub fn frac_add(&self, x: &Fraction<P::Elem>, y: &Fraction<P::Elem>) -> Result<Fraction<P::Elem>> {
        let p = self.base;
        if x.den == y.den {
            return Ok(Fraction::new(p.add(&x.num, &y.num), x.den.clone()));
        }
        // s' s1 = b' s2 = s
        let (s1p, bp) = self.ore_pair(&y.den, &x.den).ok_or_else(|| self.exhausted("common denominator"))?;
        let s = p.mul(&s1p, &x.den);
        if s != p.mul(&bp, &y.den) || !self.in_s(&s) {
            return Err(Error::Consistency(format!(
                "common denominator {} is not in S",
                p.label(&s)
            )));
        }
        Ok(Fraction::new(
            p.add(&p.mul(&s1p, &x.num), &p.mul(&bp, &y.num)),
            s,
        ))
    }

    /// `s1^-1 b1 * s2^-1 b2 = (s' s1)^-1 (b' b2)` with `s' b1 = b' s2`.
    pub fn frac_mul(&self, x: &Fraction<P::Elem>, y: &Fraction<P::Elem>) -> Result<Fraction<P::Elem>> {
        let p = self.base;
        let (sp, bp) = self.ore_pair(&y.den, &x.num).ok_or_else(|| self.exhausted("Ore pair"))?;
        Ok(Fraction::new(p.mul(&bp, &y.num), p.mul(&sp, &x.den)))
    }

    fn exhausted(&self, what: &str) -> Error {
        Error::BoundExhausted {
            what: format!("{what} in localization"),
            lower_bound: self.s_sample.len(),
        }
    }

    /// Fractions over the base domain with denominators from the sample.
    pub fn sample_fractions(&self) -> Vec<Fraction<P::Elem>> {
        let dom = self.base.domain().elements;
        self.s_sample
            .iter()
            .flat_map(|s| dom.iter().map(move |b| Fraction::new(b.clone(), s.clone())))
            .collect()
    }

    pub fn in_a0(&self, x: &Fraction<P::Elem>) -> bool {
        self.base.in_a0(&x.num)
    }

    pub fn is_tangible(&self, x: &Fraction<P::Elem>) -> bool {
        self.base.is_tangible(&x.num)
    }
}

const FRACTION_LAWS: [&str; 8] = [
    "additive associativity",
    "additive commutativity",
    "multiplicative associativity",
    "left distributivity",
    "right distributivity",
    "additive unit",
    "multiplicative unit",
    "zero absorbs",
];

/// Semiring laws on sampled fractions, with equality read as fraction
/// equivalence. Failed witness searches count as unknown.
pub fn verify_fraction_axioms<P: Pair>(
    ctx: &LocalizationContext<'_, P>,
    sample: &[Fraction<P::Elem>],
    seed: u64,
) -> AxiomReport {
    let mut report = AxiomReport::new("fraction semiring", ctx.base.domain().window);
    let triples = index_tuples(sample.len(), 3, Some(2000), seed);
    let add = |x: &Fraction<P::Elem>, y: &Fraction<P::Elem>| ctx.frac_add(x, y);
    let mul = |x: &Fraction<P::Elem>, y: &Fraction<P::Elem>| ctx.frac_mul(x, y);
    let sides = |law: usize, x: &Fraction<P::Elem>, y: &Fraction<P::Elem>, z: &Fraction<P::Elem>| -> Result<(Fraction<P::Elem>, Fraction<P::Elem>)> {
        Ok(match law {
            0 => (add(&add(x, y)?, z)?, add(x, &add(y, z)?)?),
            1 => (add(x, y)?, add(y, x)?),
            2 => (mul(&mul(x, y)?, z)?, mul(x, &mul(y, z)?)?),
            3 => (mul(x, &add(y, z)?)?, add(&mul(x, y)?, &mul(x, z)?)?),
            4 => (mul(&add(x, y)?, z)?, add(&mul(x, z)?, &mul(y, z)?)?),
            5 => (add(x, &ctx.zero())?, x.clone()),
            6 => (mul(&ctx.one(), x)?, mul(x, &ctx.one())?),
            _ => (mul(x, &ctx.zero())?, ctx.zero()),
        })
    };
    for (law, name) in FRACTION_LAWS.iter().enumerate() {
        report.push(
            name,
            tally(&triples, |ix| {
                let (x, y, z) = (&sample[ix[0]], &sample[ix[1]], &sample[ix[2]]);
                match sides(law, x, y, z) {
                    Ok((a, b)) => Outcome::from_verdict(ctx.frac_equiv(&a, &b), || {
                        vec![ctx.label(x), ctx.label(y), ctx.label(z)]
                    }),
                    Err(_) => Outcome::Unknown,
                }
            }),
        );
    }
    report
}

/// Fraction pair of a finite context, tabulated on equivalence classes of
/// `(numerator, denominator)` with denominators in S. Labels read `b/s`.
pub fn build_fraction_pair(ctx: &LocalizationContext<'_, FinitePair>) -> Result<(FinitePair, Vec<Fraction<usize>>)> {
    if !ctx.exhaustive {
        return Err(Error::Unsupported("fraction pairs are tabulated only for finite S and carriers".into()));
    }
    let all = ctx.sample_fractions();
    let mut reps: Vec<Fraction<usize>> = Vec::new();
    let mut class_of: Vec<usize> = Vec::with_capacity(all.len());
    for x in &all {
        match reps.iter().position(|r| ctx.frac_equiv(r, x).holds()) {
            Some(c) => class_of.push(c),
            None => {
                class_of.push(reps.len());
                reps.push(x.clone());
            }
        }
    }
    for (x, &c) in all.iter().zip(&class_of) {
        if !ctx.frac_equiv(x, &reps[c]).holds() {
            return Err(Error::Consistency(format!("fraction equivalence is not symmetric at {}", ctx.label(x))));
        }
    }
    let find = |x: &Fraction<usize>| -> Result<usize> {
        reps.iter()
            .position(|r| ctx.frac_equiv(r, x).holds())
            .ok_or_else(|| Error::Consistency(format!("{} has no class", ctx.label(x))))
    };
    let k = reps.len();
    let mut add = vec![vec![0; k]; k];
    let mut mul = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            add[i][j] = find(&ctx.frac_add(&reps[i], &reps[j])?)?;
            mul[i][j] = find(&ctx.frac_mul(&reps[i], &reps[j])?)?;
        }
    }
    let labels = reps.iter().map(|r| ctx.label(r)).collect();
    let s = FiniteSemiring::new(labels, add, mul, find(&ctx.zero())?, find(&ctx.one())?)?;
    let a0: Vec<usize> = (0..k)
        .filter(|&i| all.iter().zip(&class_of).any(|(x, &c)| c == i && ctx.in_a0(x)))
        .collect();
    let t: Vec<usize> = (0..k)
        .filter(|&i| all.iter().zip(&class_of).any(|(x, &c)| c == i && ctx.is_tangible(x)))
        .collect();
    let name = format!("{} localized", ctx.base.name());
    Ok((FinitePair::new(name, s, &a0, &t)?, reps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{NaturalPair, Supertropical};
    use crate::fixtures::{boolean_pair, supertropical_three, upper_triangular_boolean};
    use crate::semiring::{integers_mod, Semiring};
    use num_rational::Ratio;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dyadic(n: &NaturalPair) -> LocalizationContext<'_, NaturalPair> {
        let sample: Vec<u64> = (0..6).map(|k| 1u64 << k).collect();
        LocalizationContext::new(n, sample, |x: &u64| x.is_power_of_two(), false).unwrap()
    }

    fn ratio(x: &Fraction<u64>) -> Ratio<i64> {
        Ratio::new(x.num as i64, x.den as i64)
    }

    fn chain_with_tangible_e() -> FinitePair {
        let labels = vec!["0".to_string(), "e".to_string(), "1".to_string()];
        let s = FiniteSemiring::from_fn(labels, |a, b| a.max(b), |a, b| a.min(b), 0, 2).unwrap();
        FinitePair::new("chain", s, &[0], &[1, 2]).unwrap()
    }

    #[test]
    fn regular_elements() {
        let n = NaturalPair { window: 12 };
        for mode in [RegularMode::Left, RegularMode::Right, RegularMode::PrecedesLeft] {
            assert!(check_regular(&n, &1, mode).unwrap().holds);
            let d = check_regular(&n, &2, mode).unwrap();
            assert!(d.holds);
            assert_eq!(d.window, Some(12));
        }
        let c = chain_with_tangible_e();
        assert!(check_regular(&c, &2, RegularMode::Left).unwrap().holds);
        let d = check_regular(&c, &1, RegularMode::Left).unwrap();
        assert_eq!(d.witness, Some(vec!["e".to_string(), "1".to_string()]));
        assert!(check_regular(&c, &0, RegularMode::Left).is_err());
    }

    #[test]
    fn ore_condition() {
        let b = boolean_pair();
        assert!(LocalizationContext::new(&b, vec![1], |x: &usize| *x == 1, true).unwrap().central);
        let ut = upper_triangular_boolean();
        let one = ut.one();
        let ctx = LocalizationContext::new(&ut, vec![one], move |x: &usize| *x == one, true).unwrap();
        // only the identity is regular in this non-commutative carrier
        assert!(ctx.central);
        assert_eq!(ctx.ore_violation(), None);
        let regular: Vec<usize> = ut
            .tangible_indices()
            .into_iter()
            .filter(|s| check_regular(&ut, s, RegularMode::Left).unwrap().holds)
            .collect();
        assert_eq!(regular, vec![one]);
        let z5 = FinitePair::new("Z5", integers_mod(5).unwrap(), &[0], &[1, 2, 3, 4]).unwrap();
        let open = LocalizationContext::new(&z5, vec![1, 2], |x: &usize| [1, 2].contains(x), true);
        assert!(matches!(open, Err(Error::Precondition(_))));
        let c = chain_with_tangible_e();
        let bad = LocalizationContext::new(&c, vec![2, 1], |x: &usize| *x > 0, true);
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }

    #[test]
    fn equivalence_examples() {
        let n = NaturalPair { window: 12 };
        let ctx = dyadic(&n);
        let x = Fraction::new(4, 2);
        assert_eq!(ctx.frac_equiv(&x, &x), Verdict::Holds);
        assert_eq!(ctx.equiv_witness(&x, &Fraction::new(2, 1)), Some((1, 2)));
        assert_eq!(ctx.frac_equiv(&Fraction::new(3, 2), &Fraction::new(2, 1)), Verdict::Unknown);
        assert!(ctx.fraction(3, 3).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let n = NaturalPair { window: 12 };
        let ctx = dyadic(&n);
        let (a, b) = (Fraction::new(3, 2), Fraction::new(5, 2));
        assert_eq!(ctx.frac_add(&a, &b).unwrap(), Fraction::new(8, 2));
        assert_eq!(ctx.frac_mul(&a, &b).unwrap(), Fraction::new(15, 4));
        assert_eq!(ctx.frac_add(&a, &ctx.zero()).unwrap(), Fraction::new(3, 2));
        assert!(ctx.frac_equiv(&ctx.frac_add(&a, &ctx.zero()).unwrap(), &a).holds());
    }

    #[test]
    fn dyadic_fractions_match_rationals() {
        let n = NaturalPair { window: 12 };
        let ctx = dyadic(&n);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let rand_frac = |rng: &mut ChaCha8Rng| Fraction::new(rng.gen_range(0..40u64), 1u64 << rng.gen_range(0..5));
        for _ in 0..200 {
            let x = rand_frac(&mut rng);
            let y = rand_frac(&mut rng);
            assert_eq!(ratio(&ctx.frac_add(&x, &y).unwrap()), ratio(&x) + ratio(&y));
            assert_eq!(ratio(&ctx.frac_mul(&x, &y).unwrap()), ratio(&x) * ratio(&y));
            // equivalence agrees with equality of rationals whenever it decides
            match ctx.frac_equiv(&x, &y) {
                Verdict::Holds => assert_eq!(ratio(&x), ratio(&y)),
                _ => assert_ne!(ratio(&x), ratio(&y)),
            }
        }
        for _ in 0..100 {
            let x = rand_frac(&mut rng);
            let y = rand_frac(&mut rng);
            let k = 1u64 << rng.gen_range(0..3);
            let x2 = Fraction::new(x.num * k, x.den * k);
            assert!(ctx.frac_equiv(&x, &x2).holds());
            assert!(ctx.frac_equiv(&ctx.frac_add(&x, &y).unwrap(), &ctx.frac_add(&x2, &y).unwrap()).holds());
            assert!(ctx.frac_equiv(&ctx.frac_mul(&x, &y).unwrap(), &ctx.frac_mul(&x2, &y).unwrap()).holds());
        }
    }

    #[test]
    fn sampled_fraction_laws() {
        let n = NaturalPair { window: 8 };
        let ctx = dyadic(&n);
        let sample: Vec<Fraction<u64>> = (0..7u64)
            .flat_map(|b| [1u64, 2, 4].map(|s| Fraction::new(b, s)))
            .collect();
        let r = verify_fraction_axioms(&ctx, &sample, 3);
        assert!(r.violations().next().is_none(), "{r:?}");
    }

    #[test]
    fn equivalence_is_an_equivalence_on_samples() {
        let s = Supertropical::naturals(4);
        let t = s.tangible_window();
        let ctx = LocalizationContext::new(&s, t.clone(), |x: &crate::constructions::SuperValue| s.is_tangible(x), false).unwrap();
        let sample: Vec<_> = s
            .domain()
            .elements
            .iter()
            .flat_map(|b| t.iter().map(move |d| Fraction::new(*b, *d)))
            .collect();
        for x in &sample {
            assert!(ctx.frac_equiv(x, x).holds());
            for y in &sample {
                let xy = ctx.frac_equiv(x, y).holds();
                assert_eq!(xy, ctx.frac_equiv(y, x).holds());
                if xy {
                    for z in sample.iter().step_by(3) {
                        if ctx.frac_equiv(y, z).holds() {
                            assert!(ctx.frac_equiv(x, z).holds());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tangible_fractions_are_invertible_in_supertropical_naturals() {
        let s = Supertropical::naturals(4);
        let t = s.tangible_window();
        let ctx = LocalizationContext::new(&s, t.clone(), |x: &crate::constructions::SuperValue| s.is_tangible(x), false).unwrap();
        for b in &t {
            for d in &t {
                let x = Fraction::new(*b, *d);
                let inv = t
                    .iter()
                    .flat_map(|u| t.iter().map(move |v| Fraction::new(*u, *v)))
                    .find(|y| ctx.frac_equiv(&ctx.frac_mul(&x, y).unwrap(), &ctx.one()).holds());
                assert!(inv.is_some(), "{}", ctx.label(&x));
            }
        }
    }

    #[test]
    fn trivial_localization_is_the_pair() {
        for p in [boolean_pair(), supertropical_three()] {
            let one = p.one();
            let ctx = LocalizationContext::new(&p, vec![one], move |x: &usize| *x == one, true).unwrap();
            let (q, reps) = build_fraction_pair(&ctx).unwrap();
            assert_eq!(q.size(), p.size());
            for i in 0..q.size() {
                assert_eq!(reps[i].den, one);
                for j in 0..q.size() {
                    assert_eq!(reps[q.add(&i, &j)].num, p.add(&reps[i].num, &reps[j].num));
                    assert_eq!(reps[q.mul(&i, &j)].num, p.mul(&reps[i].num, &reps[j].num));
                }
            }
            assert!(crate::pairs::verify_admissible(&q).is_valid());
        }
    }

    #[test]
    fn localizing_a_field_at_its_units() {
        let z5 = FinitePair::new("Z5", integers_mod(5).unwrap(), &[0], &[1, 2, 3, 4]).unwrap();
        let ctx = LocalizationContext::new(&z5, vec![1, 2, 3, 4], |x: &usize| *x != 0, true).unwrap();
        let (q, _) = build_fraction_pair(&ctx).unwrap();
        assert_eq!(q.size(), 5);
        for t in q.tangible_indices() {
            assert!(q.tangible_indices().iter().any(|u| q.mul(&t, u) == q.one()));
        }
    }
}
