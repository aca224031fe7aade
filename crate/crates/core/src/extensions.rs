//! Integral, algebraic and congruence-algebraic elements of an extension,
//! and determinants over pairs with a negation map.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairs::{surpasses, Pair};
use crate::poly::{enumerate_polynomials, format_polynomial, Polynomial};
use crate::report::{index_tuples, tally, AxiomReport, Outcome, Verdict, SAMPLE_LIMIT};

/// A pair `W` together with a base sub-pair `A`, given by its elements
/// inside `W`. A0 and T of the base are read off `W`.
pub struct Extension<'a, W: Pair> {
    pub ext: &'a W,
    pub base: Vec<W::Elem>,
    /// True when `base` lists all of `A`, not a window of it.
    pub base_complete: bool,
}

impl<'a, W: Pair> Extension<'a, W> {
    pub fn new(ext: &'a W, base: Vec<W::Elem>, base_complete: bool) -> Self {
        let mut base = base;
        base.sort();
        base.dedup();
        Extension {
            ext,
            base,
            base_complete,
        }
    }

    /// `W` over itself.
    pub fn whole(ext: &'a W) -> Self {
        let dom = ext.domain();
        let complete = dom.is_exhaustive();
        Self::new(ext, dom.elements, complete)
    }

    pub fn base_tangibles(&self) -> Vec<W::Elem> {
        self.base.iter().filter(|a| self.ext.is_tangible(a)).cloned().collect()
    }

    fn label_all(&self, xs: &[W::Elem]) -> Vec<String> {
        xs.iter().map(|x| self.ext.label(x)).collect()
    }
}

/// Closure of the base, centrality of base tangibles, and `A0 W` inside `W0`.
pub fn verify_extension<W: Pair>(e: &Extension<'_, W>) -> AxiomReport {
    let w = e.ext;
    let dom = w.domain();
    let mut report = AxiomReport::new("extension", dom.window);
    let base_pairs = index_tuples(e.base.len(), 2, Some(SAMPLE_LIMIT), 41);
    let in_base = |x: &W::Elem| e.base.binary_search(x).is_ok();
    report.push(
        "base contains zero and one",
        tally(&[()], |_| {
            Outcome::require(in_base(&w.zero()) && in_base(&w.one()), Vec::new)
        }),
    );
    report.push(
        "base closed",
        tally(&base_pairs, |ix| {
            let (a, b) = (&e.base[ix[0]], &e.base[ix[1]]);
            if !e.base_complete {
                return Outcome::Ok;
            }
            Outcome::require(in_base(&w.add(a, b)) && in_base(&w.mul(a, b)), || {
                vec![w.label(a), w.label(b)]
            })
        }),
    );
    let t = e.base_tangibles();
    let tw: Vec<(usize, usize)> = (0..t.len())
        .flat_map(|i| (0..dom.len()).map(move |j| (i, j)))
        .collect();
    report.push(
        "centralizing",
        tally(&tw, |&(i, j)| {
            let (a, x) = (&t[i], &dom.elements[j]);
            Outcome::require(w.mul(a, x) == w.mul(x, a), || vec![w.label(a), w.label(x)])
        }),
    );
    let a0: Vec<&W::Elem> = e.base.iter().filter(|a| w.in_a0(a)).collect();
    let a0w: Vec<(usize, usize)> = (0..a0.len())
        .flat_map(|i| (0..dom.len()).map(move |j| (i, j)))
        .collect();
    report.push(
        "A0 W inside W0",
        tally(&a0w, |&(i, j)| {
            let (a, x) = (a0[i], &dom.elements[j]);
            Outcome::require(w.in_a0(&w.mul(a, x)), || vec![w.label(a), w.label(x)])
        }),
    );
    report
}

/// Result of a bounded relation search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationSearch {
    /// `Holds` when a relation was found; never `Fails`, since higher
    /// degrees stay unexplored.
    pub verdict: Verdict,
    pub degree: Option<usize>,
    /// Coefficients `a_0 .. a_{n-1}` (integral) or `a_0 .. a_n` (algebraic).
    pub coefficients: Vec<String>,
    pub degree_bound: usize,
}

impl RelationSearch {
    fn not_found(bound: usize) -> Self {
        RelationSearch {
            verdict: Verdict::Unknown,
            degree: None,
            coefficients: Vec::new(),
            degree_bound: bound,
        }
    }
}

fn powers<W: Pair>(w: &W, y: &W::Elem, n: usize) -> Vec<W::Elem> {
    let mut out = vec![w.one()];
    for i in 1..=n {
        out.push(w.mul(&out[i - 1], y));
    }
    out
}

fn combination<W: Pair>(w: &W, coeffs: &[&W::Elem], pw: &[W::Elem]) -> W::Elem {
    coeffs
        .iter()
        .zip(pw)
        .fold(w.zero(), |acc, (a, p)| w.add(&acc, &w.mul(a, p)))
}

/// Searches `sum_{i<n} a_i y^i <= y^n` for `n = 1..=bound`, with the
/// coefficients in the base, or in its tangibles plus zero when
/// `tangible_only` is set. The relation is the extension's own.
pub fn is_integral<W: Pair>(e: &Extension<'_, W>, y: &W::Elem, bound: usize, tangible_only: bool) -> Result<RelationSearch> {
    let w = e.ext;
    let coeffs: Vec<W::Elem> = if tangible_only {
        std::iter::once(w.zero()).chain(e.base_tangibles()).collect()
    } else {
        e.base.clone()
    };
    let pw = powers(w, y, bound);
    let kind = w.native_relation();
    for n in 1..=bound {
        let tuples = coefficient_tuples(coeffs.len(), n)?;
        let hit = tuples.par_iter().find_first(|ix| {
            let cs: Vec<&W::Elem> = ix.iter().map(|&i| &coeffs[i]).collect();
            let lhs = combination(w, &cs, &pw[..n]);
            matches!(surpasses(w, kind, &lhs, &pw[n]), Ok(Verdict::Holds))
        });
        if let Some(ix) = hit {
            let cs: Vec<W::Elem> = ix.iter().map(|&i| coeffs[i].clone()).collect();
            return Ok(RelationSearch {
                verdict: Verdict::Holds,
                degree: Some(n),
                coefficients: e.label_all(&cs),
                degree_bound: bound,
            });
        }
    }
    Ok(RelationSearch::not_found(bound))
}

fn coefficient_tuples(n: usize, k: usize) -> Result<Vec<Vec<usize>>> {
    let total = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > (1 << 20) {
        return Err(Error::TooLarge {
            what: "coefficient search".into(),
            size: n,
            limit: 1 << 20,
            estimate: format!("{n}^{k} tuples"),
        });
    }
    Ok(index_tuples(n, k, None, 0))
}

/// Algebraic relation search: `sum_{i<=n} a_i y^i` in W0 with `n >= 1` and
/// leading coefficient outside A0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraicSearch {
    pub relation: RelationSearch,
    /// Shallow bases only: whether some relation of the found degree also
    /// exists with every coefficient tangible or zero.
    pub tangible_coefficients: Option<bool>,
}

pub fn is_algebraic<W: Pair>(e: &Extension<'_, W>, y: &W::Elem, bound: usize) -> Result<AlgebraicSearch> {
    let w = e.ext;
    let pw = powers(w, y, bound);
    let search = |coeffs: &[W::Elem], n: usize| -> Result<Option<Vec<W::Elem>>> {
        let tuples = coefficient_tuples(coeffs.len(), n + 1)?;
        Ok(tuples
            .par_iter()
            .find_first(|ix| {
                let cs: Vec<&W::Elem> = ix.iter().map(|&i| &coeffs[i]).collect();
                !w.in_a0(cs[n]) && w.in_a0(&combination(w, &cs, &pw[..=n]))
            })
            .map(|ix| ix.iter().map(|&i| coeffs[i].clone()).collect()))
    };
    for n in 1..=bound {
        if let Some(cs) = search(&e.base, n)? {
            let shallow = e.base.iter().all(|a| w.in_a0(a) || w.is_tangible(a));
            let tangible_coefficients = if shallow {
                let tz: Vec<W::Elem> = std::iter::once(w.zero()).chain(e.base_tangibles()).collect();
                Some(search(&tz, n)?.is_some())
            } else {
                None
            };
            return Ok(AlgebraicSearch {
                relation: RelationSearch {
                    verdict: Verdict::Holds,
                    degree: Some(n),
                    coefficients: e.label_all(&cs),
                    degree_bound: bound,
                },
                tangible_coefficients,
            });
        }
    }
    Ok(AlgebraicSearch {
        relation: RelationSearch::not_found(bound),
        tangible_coefficients: None,
    })
}

/// Evidence that `y` is not transcendental: `f2(y) <= f1(y)` while
/// `f2(b) <= f1(b)` fails at the base point `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceAlgebraic {
    /// `Holds` with a certificate, `Unknown` when none exists up to the bound.
    pub verdict: Verdict,
    pub certificate: Option<Vec<String>>,
    pub degree_bound: u32,
}

/// Scans one-variable polynomial pairs over the base up to `degree`.
pub fn is_congruence_algebraic<W: Pair>(e: &Extension<'_, W>, y: &W::Elem, degree: u32) -> Result<CongruenceAlgebraic> {
    let w = e.ext;
    let polys: Vec<Polynomial<W::Elem>> = enumerate_polynomials(w, &e.base, 1, degree, 1 << 12)?;
    let eval = |f: &Polynomial<W::Elem>, x: &W::Elem| crate::poly::poly_eval(w, f, std::slice::from_ref(x));
    let at_y: Vec<W::Elem> = polys.iter().map(|f| eval(f, y)).collect::<Result<_>>()?;
    let at_base: Vec<Vec<W::Elem>> = polys
        .iter()
        .map(|f| e.base.iter().map(|b| eval(f, b)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let kind = w.native_relation();
    let le = |a: &W::Elem, b: &W::Elem| surpasses(w, kind, a, b);
    let n = polys.len();
    let hit = (0..n * n).into_par_iter().find_first(|&k| {
        let (i1, i2) = (k / n, k % n);
        if !matches!(le(&at_y[i2], &at_y[i1]), Ok(Verdict::Holds)) {
            return false;
        }
        (0..e.base.len()).any(|j| matches!(le(&at_base[i2][j], &at_base[i1][j]), Ok(Verdict::Fails)))
    });
    let vars = ["x"];
    Ok(match hit {
        Some(k) => {
            let (i1, i2) = (k / n, k % n);
            let j = (0..e.base.len())
                .find(|&j| matches!(le(&at_base[i2][j], &at_base[i1][j]), Ok(Verdict::Fails)))
                .expect("hit has a failing point");
            CongruenceAlgebraic {
                verdict: Verdict::Holds,
                certificate: Some(vec![
                    format_polynomial(w, &polys[i1], &vars),
                    format_polynomial(w, &polys[i2], &vars),
                    w.label(&e.base[j]),
                ]),
                degree_bound: degree,
            }
        }
        None => CongruenceAlgebraic {
            verdict: Verdict::Unknown,
            certificate: None,
            degree_bound: degree,
        },
    })
}

/// Square matrix over a pair's carrier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairMatrix<E> {
    pub rows: Vec<Vec<E>>,
}

impl<E: Clone> PairMatrix<E> {
    pub fn new(rows: Vec<Vec<E>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Structure("matrix is not square".into()));
        }
        Ok(PairMatrix { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    fn minor(&self, row: usize, col: usize) -> PairMatrix<E> {
        PairMatrix {
            rows: self
                .rows
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != row)
                .map(|(_, r)| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != col)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect(),
        }
    }
}

fn negation<P: Pair>(p: &P, a: &P::Elem) -> Result<P::Elem> {
    p.negate(a)
        .ok_or_else(|| Error::Precondition("pair carries no negation map".into()))
}

fn is_odd(perm: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            odd ^= perm[i] > perm[j];
        }
    }
    odd
}

/// Sum over permutations of the products, negated for odd permutations.
pub fn negated_determinant<P: Pair>(p: &P, m: &PairMatrix<P::Elem>) -> Result<P::Elem> {
    let n = m.size();
    if n > 4 {
        return Err(Error::Unsupported("permutation expansion is limited to 4x4".into()));
    }
    let mut acc = p.zero();
    for perm in (0..n).permutations(n) {
        let prod = perm
            .iter()
            .enumerate()
            .fold(p.one(), |x, (i, &j)| p.mul(&x, &m.rows[i][j]));
        let term = if is_odd(&perm) { negation(p, &prod)? } else { prod };
        acc = p.add(&acc, &term);
    }
    Ok(acc)
}

/// Transposed signed cofactors: entry `(j, i)` is the negated determinant of
/// the minor at `(i, j)`, negated once more when `i + j` is odd.
pub fn negated_adjugate<P: Pair>(p: &P, m: &PairMatrix<P::Elem>) -> Result<PairMatrix<P::Elem>> {
    let n = m.size();
    if n == 1 {
        return PairMatrix::new(vec![vec![p.one()]]);
    }
    let mut rows = vec![vec![p.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let d = negated_determinant(p, &m.minor(i, j))?;
            rows[j][i] = if (i + j) % 2 == 1 { negation(p, &d)? } else { d };
        }
    }
    PairMatrix::new(rows)
}

pub fn matrix_product<P: Pair>(p: &P, a: &PairMatrix<P::Elem>, b: &PairMatrix<P::Elem>) -> Result<PairMatrix<P::Elem>> {
    let n = a.size();
    if b.size() != n {
        return Err(Error::Precondition("matrix sizes differ".into()));
    }
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(p.zero(), |acc, k| p.add(&acc, &p.mul(&a.rows[i][k], &b.rows[k][j]))))
                .collect()
        })
        .collect();
    PairMatrix::new(rows)
}

/// Whether `sum_i a_i g_i <= target` for some base coefficients, where the
/// relation is the extension's own; returns the coefficients found.
pub fn spanning_coefficients<W: Pair>(
    e: &Extension<'_, W>,
    gens: &[W::Elem],
    target: &W::Elem,
) -> Result<Option<Vec<W::Elem>>> {
    let w = e.ext;
    let kind = w.native_relation();
    let tuples = coefficient_tuples(e.base.len(), gens.len())?;
    Ok(tuples
        .par_iter()
        .find_first(|ix| {
            let cs: Vec<&W::Elem> = ix.iter().map(|&i| &e.base[i]).collect();
            matches!(surpasses(w, kind, &combination(w, &cs, gens), target), Ok(Verdict::Holds))
        })
        .map(|ix| ix.iter().map(|&i| e.base[i].clone()).collect()))
}

/// Elements of `A[y]`: the closure of the base and `y` under both operations.
pub fn adjoin<W: Pair>(e: &Extension<'_, W>, y: &W::Elem, limit: usize) -> Result<Vec<W::Elem>> {
    let w = e.ext;
    let mut set: std::collections::BTreeSet<W::Elem> = e.base.iter().cloned().collect();
    set.insert(y.clone());
    loop {
        let cur: Vec<W::Elem> = set.iter().cloned().collect();
        let mut grew = false;
        for a in &cur {
            for b in &cur {
                grew |= set.insert(w.add(a, b));
                grew |= set.insert(w.mul(a, b));
            }
        }
        if set.len() > limit {
            return Err(Error::TooLarge {
                what: "adjoined sub-semiring".into(),
                size: set.len(),
                limit,
                estimate: "closure did not stabilise".into(),
            });
        }
        if !grew {
            return Ok(set.into_iter().collect());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{SuperValue, Supertropical};
    use crate::fixtures::{doubled_boolean, supertropical_three};
    use crate::poly::{A0Flavor, PolynomialPair};
    use crate::semiring::Semiring;

    fn sv(t: &str) -> SuperValue {
        SuperValue::parse(t).unwrap()
    }

    #[test]
    fn base_elements_are_integral_of_degree_one() {
        let s = supertropical_three();
        let e = Extension::whole(&s);
        assert!(verify_extension(&e).is_valid());
        for y in 0..3 {
            let r = is_integral(&e, &y, 2, false).unwrap();
            assert_eq!(r.degree, Some(1));
        }
        let r = is_integral(&e, &1, 0, false).unwrap();
        assert_eq!(r.verdict, Verdict::Unknown);
    }

    #[test]
    fn integral_over_the_prime_sub_pair() {
        let s = Supertropical::integers(8);
        let prime = vec![SuperValue::Zero, sv("0"), sv("0v")];
        let e = Extension::new(&s, prime, true);
        assert!(verify_extension(&e).is_valid());
        // a ghost is reached from below by a ghost slack: 0v * y <= y^2 for y = 2v
        let r = is_integral(&e, &sv("2v"), 2, false).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        // a tangible above one is not: lower powers never reach y^n exactly
        let r = is_integral(&e, &sv("3"), 3, false).unwrap();
        assert_eq!(r.verdict, Verdict::Unknown);
        let r = is_integral(&e, &sv("0"), 2, true).unwrap();
        assert_eq!(r.degree, Some(1));
    }

    #[test]
    fn algebraic_elements() {
        let s = supertropical_three();
        let e = Extension::whole(&s);
        let a = s.index_of("a").unwrap();
        let r = is_algebraic(&e, &a, 2).unwrap();
        assert_eq!(r.relation.degree, Some(1));
        // a + a = av
        assert_eq!(r.relation.coefficients, ["a", "a"]);
        assert_eq!(r.tangible_coefficients, Some(true));
        let r = is_algebraic(&e, &a, 0).unwrap();
        assert_eq!(r.relation.verdict, Verdict::Unknown);
    }

    #[test]
    fn integral_witnesses_with_a0_slack_are_algebraic() {
        let s = Supertropical::integers(3);
        let e = Extension::new(&s, s.domain().elements, false);
        for y in s.domain().elements {
            let i = is_integral(&e, &y, 2, false).unwrap();
            if i.verdict.holds() {
                let a = is_algebraic(&e, &y, 2).unwrap();
                assert_eq!(a.relation.verdict, Verdict::Holds, "{y:?}");
            }
        }
    }

    #[test]
    fn base_points_are_congruence_algebraic() {
        let s = supertropical_three();
        let e = Extension::whole(&s);
        let a = s.index_of("a").unwrap();
        let r = is_congruence_algebraic(&e, &a, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        let d = doubled_boolean();
        let e = Extension::whole(&d);
        for t in d.tangible_indices() {
            assert_eq!(is_congruence_algebraic(&e, &t, 1).unwrap().verdict, Verdict::Holds);
        }
    }

    #[test]
    fn formal_variable_is_transcendental_at_bound() {
        let b = crate::fixtures::boolean_pair();
        let w = PolynomialPair::new(&b, 1, A0Flavor::Coeffwise, 2);
        let base: Vec<Polynomial<usize>> = (0..2).map(|c| Polynomial::constant(&b, c, 1)).collect();
        let e = Extension::new(&w, base, true);
        let x = Polynomial::variable(&b, 0, 1);
        let r = is_congruence_algebraic(&e, &x, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Unknown);
        assert_eq!(r.certificate, None);
    }

    #[test]
    fn determinants_over_doubled_boolean() {
        let d = doubled_boolean();
        let idx = |l: &str| d.index_of(l).unwrap();
        let (one, zero) = (idx("(1,0)"), idx("(0,0)"));
        let id = PairMatrix::new(vec![vec![one, zero], vec![zero, one]]).unwrap();
        assert_eq!(negated_determinant(&d, &id).unwrap(), one);
        let ones = PairMatrix::new(vec![vec![one, one], vec![one, one]]).unwrap();
        assert_eq!(negated_determinant(&d, &ones).unwrap(), idx("(1,1)"));
    }

    #[test]
    fn supertropical_determinant_of_units() {
        let s = Supertropical::integers(3);
        let m = PairMatrix::new(vec![vec![sv("0"), sv("0")], vec![sv("0"), sv("0")]]).unwrap();
        assert_eq!(negated_determinant(&s, &m).unwrap(), sv("0v"));
    }

    #[test]
    fn determinant_needs_a_negation_map() {
        let b = crate::fixtures::boolean_pair();
        let m = PairMatrix::new(vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert!(matches!(negated_determinant(&b, &m), Err(Error::Precondition(_))));
        // no odd permutation, so no negation is needed
        assert_eq!(negated_determinant(&b, &PairMatrix::new(vec![vec![1]]).unwrap()).unwrap(), 1);
        assert!(PairMatrix::new(vec![vec![1, 0]]).is_err());
    }

    #[test]
    fn adjugate_product_surpasses_determinant() {
        // adj(A) A equals det(A) on the diagonal up to A0 slack, and is
        // quasi-zero off the diagonal
        for p in [doubled_boolean(), supertropical_three()] {
            let n = p.size();
            for ix in index_tuples(n, 4, None, 0) {
                let m = PairMatrix::new(vec![vec![ix[0], ix[1]], vec![ix[2], ix[3]]]).unwrap();
                let det = negated_determinant(&p, &m).unwrap();
                let prod = matrix_product(&p, &negated_adjugate(&p, &m).unwrap(), &m).unwrap();
                for i in 0..2 {
                    for j in 0..2 {
                        let target = if i == j { det } else { p.zero() };
                        let v = surpasses(&p, crate::pairs::SurpassKind::PrecedesZero, &target, &prod.rows[i][j]).unwrap();
                        assert_eq!(v, Verdict::Holds, "{} {:?}", p.name(), ix);
                    }
                }
            }
        }
    }

    #[test]
    fn integral_powers_span_the_adjoined_semiring() {
        let s = supertropical_three();
        let e = Extension::whole(&s);
        for y in 0..3usize {
            let r = is_integral(&e, &y, 2, false).unwrap();
            let n = r.degree.unwrap();
            let gens = powers(&s, &y, n - 1);
            for target in adjoin(&e, &y, 64).unwrap() {
                assert!(spanning_coefficients(&e, &gens, &target).unwrap().is_some());
            }
        }
    }
}
