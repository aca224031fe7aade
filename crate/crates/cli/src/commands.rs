use std::fmt;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use tpairs::congruence::{
    classify_congruence, enumerate_congruences, generate_congruence, prime_spectrum_krull, radical as radical_of,
    Congruence,
};
use tpairs::constructions::{NaturalPair, SuperValue, Supertropical};
use tpairs::format::{load_structure, parse_structure, ParseError, StructureFile};
use tpairs::fractions::{check_regular, Fraction, LocalizationContext, RegularMode};
use tpairs::growth::{
    free_profile, gk_dimension, hilbert_series, matrix_profile, ore_witness as find_ore_witness, polynomial_profile,
    GrowthProfile,
};
use tpairs::hyper::{hyper_coset_quotient, krasner_quotient, powerset_pair, verify_semihyperring, A0Choice};
use tpairs::modules::verify_module_pair;
use tpairs::pairs::{
    check_reversibility, compute_center, is_shallow, property_n_status, verify_admissible, verify_surpassing,
    FinitePair, Pair, ReversibilityMode, SurpassKind,
};
use tpairs::poly::{find_preceq_roots, parse_polynomial};
use tpairs::semiring::{integers_mod, verify_semiring_axioms, Semiring};
use tpairs::{AxiomReport, Error, Verdict};

use crate::GrowthSource;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Computed,
    Holds,
    Fails,
    Unknown,
    InputError,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Computed => "computed",
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Unknown => "unknown",
            Status::InputError => "input_error",
        }
    }

    fn from_bool(b: bool) -> Status {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }

    fn from_verdict(v: Verdict) -> Status {
        match v {
            Verdict::Holds => Status::Holds,
            Verdict::Fails => Status::Fails,
            Verdict::Unknown => Status::Unknown,
        }
    }
}

pub struct Outcome {
    pub status: Status,
    pub result: Value,
    /// Path and digest of the structure file read, if any.
    pub input: Option<Value>,
    pub window: Option<i64>,
    pub summary: Vec<String>,
}

impl Outcome {
    fn new(status: Status, result: Value) -> Self {
        Outcome {
            status,
            result,
            input: None,
            window: None,
            summary: Vec::new(),
        }
    }

    fn input(mut self, input: Value) -> Self {
        self.input = Some(input);
        self
    }

    fn window(mut self, window: Option<i64>) -> Self {
        self.window = window;
        self
    }

    fn say(mut self, line: impl Into<String>) -> Self {
        self.summary.push(line.into());
        self
    }
}

#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, std::io::Error),
    Parse(PathBuf, ParseError),
    Lib(Error),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Lib(Error::BoundExhausted { .. } | Error::TooLarge { .. }) => Status::Unknown,
            _ => Status::InputError,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Parse(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type Res<T> = Result<T, CliError>;

fn config(msg: impl Into<String>) -> CliError {
    CliError::Lib(Error::Config(msg.into()))
}

fn read_input(path: &Path) -> Res<(String, Value)> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    let digest = format!("{:x}", Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|e| config(format!("{}: {e}", path.display())))?;
    Ok((text, json!({ "path": path.display().to_string(), "sha256": digest })))
}

fn load(path: &Path) -> Res<(StructureFile, Value)> {
    let (text, input) = read_input(path)?;
    let file = load_structure(&text).map_err(|e| CliError::Parse(path.to_path_buf(), e))?;
    Ok((file, input))
}

fn load_pair(path: &Path) -> Res<(FinitePair, Value)> {
    let (file, input) = load(path)?;
    Ok((file.pair()?, input))
}

fn classes(p: &FinitePair, c: &Congruence) -> Vec<Vec<String>> {
    c.class_labels(p)
}

fn element(p: &FinitePair, label: &str) -> Res<usize> {
    p.index_of(label.trim())
        .ok_or_else(|| config(format!("unknown element label {:?}", label.trim())))
}

fn report_lines(r: &AxiomReport) -> Vec<String> {
    r.violations()
        .map(|c| format!("{}: {} fails at {}", r.subject, c.axiom, c.witness.as_deref().unwrap_or_default().join(", ")))
        .collect()
}

pub fn verify(path: &Path) -> Res<Outcome> {
    let (text, input) = read_input(path)?;
    let file = parse_structure(&text).map_err(|e| CliError::Parse(path.to_path_buf(), e))?;
    let mut reports = Vec::new();
    if file.is_hyper() {
        reports.push(verify_semihyperring(&file.hyperring()?));
    } else {
        let s = file.semiring()?;
        let laws = verify_semiring_axioms(&s);
        let laws_ok = laws.is_valid();
        reports.push(laws);
        if laws_ok && (file.pair.is_some() || file.module.is_some()) {
            let p = file.pair()?;
            let adm = verify_admissible(&p);
            let admissible = adm.is_valid();
            if file.pair.is_some() {
                reports.push(adm);
            }
            if file.module.is_some() {
                reports.push(verify_module_pair(&file.module_pair()?, admissible));
            }
        }
    }
    let valid = reports.iter().all(AxiomReport::is_valid);
    let mut out = Outcome::new(Status::from_bool(valid), json!({ "reports": reports })).input(input);
    for r in &reports {
        out.summary.extend(report_lines(r));
    }
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    Ok(out.say(format!("{}: {checks} laws checked, {}", file.name, if valid { "all hold" } else { "violations found" })))
}

pub fn shallow(path: &Path) -> Res<Outcome> {
    let (p, input) = load_pair(path)?;
    let d = is_shallow(&p);
    let mut result = json!({ "shallow": d });
    let mut out_lines = vec![format!("shallow: {}", d.holds)];
    if d.holds {
        let strong = verify_surpassing(&p, SurpassKind::PrecedesZero, true);
        out_lines.extend(report_lines(&strong));
        result["strong_precedes_zero"] = json!(strong);
    }
    let mut out = Outcome::new(Status::from_verdict(d.verdict()), result).input(input);
    out.summary = out_lines;
    Ok(out)
}

pub fn property_n(path: &Path) -> Res<Outcome> {
    let (p, input) = load_pair(path)?;
    let r = property_n_status(&p);
    let line = format!("class {:?}, property N {}", r.class, r.property_n);
    Ok(Outcome::new(Status::from_bool(r.property_n), json!(r)).input(input).say(line))
}

pub fn congruences(path: &Path) -> Res<Outcome> {
    let (p, input) = load_pair(path)?;
    let lat = enumerate_congruences(&p)?;
    let list: Vec<Value> = lat
        .congruences
        .iter()
        .map(|c| json!({ "classes": classes(&p, c), "classification": classify_congruence(&p, &lat, c) }))
        .collect();
    let line = format!("{} pair-congruences", list.len());
    Ok(Outcome::new(Status::Computed, json!({ "congruences": list })).input(input).say(line))
}

pub fn spectrum(path: &Path) -> Res<Outcome> {
    let (p, input) = load_pair(path)?;
    let lat = enumerate_congruences(&p)?;
    let sp = prime_spectrum_krull(&p, &lat);
    let primes: Vec<_> = sp.primes.iter().map(|c| classes(&p, c)).collect();
    let line = format!("{} primes, Krull dimension {:?}", primes.len(), sp.krull_dimension);
    Ok(Outcome::new(
        Status::Computed,
        json!({ "primes": primes, "krull_dimension": sp.krull_dimension }),
    )
    .input(input)
    .say(line))
}

pub fn krull(path: &Path) -> Res<Outcome> {
    let (p, input) = load_pair(path)?;
    let lat = enumerate_congruences(&p)?;
    let sp = prime_spectrum_krull(&p, &lat);
    let chain: Vec<_> = sp.longest_chain.iter().map(|c| classes(&p, c)).collect();
    let line = format!("Krull dimension {:?}", sp.krull_dimension);
    Ok(Outcome::new(
        Status::Computed,
        json!({ "krull_dimension": sp.krull_dimension, "longest_chain": chain }),
    )
    .input(input)
    .say(line))
}

pub fn radical(path: &Path, seeds: &[String]) -> Res<Outcome> {
    let (p, input) = load_pair(path)?;
    let mut pairs = Vec::new();
    for s in seeds {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| config(format!("seed {s:?} is not of the form a:b")))?;
        pairs.push((element(&p, a)?, element(&p, b)?));
    }
    let c = if pairs.is_empty() {
        Congruence::diagonal(p.size())
    } else {
        generate_congruence(&p, &pairs)?
    };
    let lat = enumerate_congruences(&p)?;
    let r = radical_of(&p, &lat, &c)?;
    let matches = r.prime_intersection.as_ref() == Some(&r.radical);
    let escapes: Vec<_> = r.escapes.iter().map(|(a, b)| vec![p.label(a), p.label(b)]).collect();
    let result = json!({
        "congruence": classes(&p, &c),
        "radical": classes(&p, &r.radical),
        "prime_intersection": r.prime_intersection.as_ref().map(|x| classes(&p, x)),
        "matches_prime_intersection": matches,
        "semiprime": r.semiprime,
        "contains_original": r.contains_original,
        "closed_already": r.closed_already,
        "inadmissible_twist_powers": escapes,
    });
    let line = format!(
        "radical has {} classes, equals the prime intersection: {matches}",
        r.radical.num_classes()
    );
    Ok(Outcome::new(Status::Computed, result).input(input).say(line))
}

fn var_list(names: &str) -> Vec<&str> {
    names.split(',').map(str::trim).filter(|v| !v.is_empty()).collect()
}

pub fn polyroots(poly: &str, path: Option<&Path>, var_names: &str, window: i64) -> Res<Outcome> {
    let vars = var_list(var_names);
    if vars.is_empty() {
        return Err(config("no variable names"));
    }
    match path {
        Some(path) => {
            let (p, input) = load_pair(path)?;
            let f = parse_polynomial(&p, poly, &vars)?;
            let coords = p.domain().elements;
            let roots: Vec<Vec<String>> = find_preceq_roots(&p, &f, &coords).iter().map(|r| p.labels(r)).collect();
            let line = format!("{} roots", roots.len());
            Ok(Outcome::new(Status::from_bool(!roots.is_empty()), json!({ "roots": roots }))
                .input(input)
                .say(line))
        }
        None => {
            let s = Supertropical::integers(window);
            let f = parse_polynomial(&s, poly, &vars)?;
            let mut coords = vec![SuperValue::Zero];
            coords.extend(s.tangible_window());
            let roots: Vec<Vec<String>> = find_preceq_roots(&s, &f, &coords).iter().map(|r| s.labels(r)).collect();
            let status = if roots.is_empty() { Status::Unknown } else { Status::Holds };
            let line = format!("{} roots with tangible coordinates in [-{window}, {window}]", roots.len());
            Ok(Outcome::new(status, json!({ "carrier": "supertropical integers", "roots": roots }))
                .window(Some(window))
                .say(line))
        }
    }
}

fn parse_fraction(text: &str) -> Res<Fraction<u64>> {
    let (a, b) = text.split_once('/').unwrap_or((text, "1"));
    let num = a.trim().parse().map_err(|_| config(format!("bad numerator in {text:?}")))?;
    let den = b.trim().parse().map_err(|_| config(format!("bad denominator in {text:?}")))?;
    Ok(Fraction::new(num, den))
}

pub fn localize(x: &str, y: &str, window: i64) -> Res<Outcome> {
    if window < 1 {
        return Err(config("window must be positive"));
    }
    let n = NaturalPair { window };
    let sample: Vec<u64> = (0..63).map(|k| 1u64 << k).take_while(|&s| s <= window as u64).collect();
    let ctx = LocalizationContext::new(&n, sample, |v: &u64| v.is_power_of_two(), false)?;
    let (fx, fy) = (parse_fraction(x)?, parse_fraction(y)?);
    let fx = ctx.fraction(fx.num, fx.den)?;
    let fy = ctx.fraction(fy.num, fy.den)?;
    let sum = ctx.frac_add(&fx, &fy)?;
    let prod = ctx.frac_mul(&fx, &fy)?;
    let equiv = ctx.frac_equiv(&fx, &fy);
    let result = json!({
        "denominators": "powers of two",
        "sum": ctx.label(&sum),
        "product": ctx.label(&prod),
        "equivalent": equiv,
    });
    let line = format!("sum {}, product {}, equivalent {equiv:?}", ctx.label(&sum), ctx.label(&prod));
    Ok(Outcome::new(Status::Computed, result).window(Some(window)).say(line))
}

pub fn classify_element(path: &Path, label: &str, degree: u32) -> Res<Outcome> {
    let (p, input) = load_pair(path)?;
    let a = element(&p, label)?;
    let tangible = p.is_tangible(&a);
    let quasi_negatives: Vec<String> = if tangible {
        p.tangible_indices()
            .into_iter()
            .filter(|b| p.in_a0(&p.add(&a, b)))
            .map(|b| p.label(&b))
            .collect()
    } else {
        Vec::new()
    };
    let mut reversibility = json!({
        "plain": check_reversibility(&p, &a, ReversibilityMode::Plain)?.holds,
        "power": check_reversibility(&p, &a, ReversibilityMode::Power(degree))?.holds,
    });
    if p.negation_table().is_some() {
        reversibility["negated"] = json!(check_reversibility(&p, &a, ReversibilityMode::NegPlain)?.holds);
        reversibility["negated_power"] = json!(check_reversibility(&p, &a, ReversibilityMode::NegPower(degree))?.holds);
    }
    let regular = if tangible {
        json!({
            "left": check_regular(&p, &a, RegularMode::Left)?.holds,
            "right": check_regular(&p, &a, RegularMode::Right)?.holds,
        })
    } else {
        Value::Null
    };
    let central = compute_center(&p).center.contains(&p.label(&a));
    let kind = match (tangible, p.in_a0(&a)) {
        (true, _) => "tangible",
        (false, true) => "quasi-zero",
        (false, false) => "other",
    };
    let result = json!({
        "element": p.label(&a),
        "kind": kind,
        "in_a0": p.in_a0(&a),
        "tangible": tangible,
        "quasi_negatives": quasi_negatives,
        "reversible": reversibility,
        "regular": regular,
        "central": central,
        "power_degree": degree,
    });
    let line = format!("{} is {kind}", p.label(&a));
    Ok(Outcome::new(Status::Computed, result).input(input).say(line))
}

fn profile(source: &GrowthSource, kmax: usize, unital: bool) -> Res<(String, GrowthProfile)> {
    if kmax == 0 {
        return Err(config("kmax must be positive"));
    }
    if unital && source.vars.is_none() {
        return Err(config("--unital applies to --vars only"));
    }
    match (source.free_letters, source.vars, source.matrix) {
        (Some(t), _, _) => Ok((format!("free semialgebra on {t} letters"), free_profile(t, kmax)?)),
        (_, Some(t), _) => Ok((format!("polynomials in {t} variables"), polynomial_profile(t, kmax, unital)?)),
        (_, _, Some(n)) => Ok((format!("{n}x{n} matrix units"), matrix_profile(n, kmax)?)),
        _ => Err(config("choose --free-letters, --vars or --matrix")),
    }
}

fn truncation_status(p: &GrowthProfile) -> Status {
    if p.truncated {
        Status::Unknown
    } else {
        Status::Computed
    }
}

pub fn growth(source: &GrowthSource, kmax: usize, unital: bool) -> Res<Outcome> {
    let (what, prof) = profile(source, kmax, unital)?;
    let line = format!("{what}: d = {:?}", prof.d);
    Ok(Outcome::new(truncation_status(&prof), json!({ "semialgebra": what, "profile": prof })).say(line))
}

pub fn hilbert(source: &GrowthSource, kmax: usize, unital: bool) -> Res<Outcome> {
    let (what, prof) = profile(source, kmax, unital)?;
    let h = hilbert_series(&prof, kmax);
    let line = format!("{what}: {:?}", h.coefficients);
    let status = if h.truncated { Status::Unknown } else { Status::Computed };
    Ok(Outcome::new(status, json!({ "semialgebra": what, "coefficients": h.coefficients })).say(line))
}

pub fn gk(source: &GrowthSource, kmax: usize, unital: bool) -> Res<Outcome> {
    let (what, prof) = profile(source, kmax, unital)?;
    let est = gk_dimension(&prof)?;
    let line = if est.divergent {
        format!("{what}: exponential growth")
    } else {
        format!("{what}: GK estimate {:.3}", est.estimate)
    };
    Ok(Outcome::new(truncation_status(&prof), json!({ "semialgebra": what, "estimate": est, "kmax": kmax })).say(line))
}

pub fn ore_witness(a1: &str, a2: &str, degree: u32, coeff_max: i64, window: i64) -> Res<Outcome> {
    let s = Supertropical::naturals(window);
    let (x, y) = (SuperValue::parse(a1)?, SuperValue::parse(a2)?);
    let coeffs: Vec<SuperValue> = (0..=coeff_max).map(SuperValue::Tangible).collect();
    let w = find_ore_witness(&s, &x, &y, degree, &coeffs)?;
    let mut result = json!({ "witness": w });
    let mut line = format!("no witness up to degree {degree}");
    if let (Some(b1), Some(b2)) = (&w.b1, &w.b2) {
        let (b1, b2) = (SuperValue::parse(b1)?, SuperValue::parse(b2)?);
        let value = s.add(&s.mul(&b1, &x), &s.mul(&b2, &y));
        result["evaluated"] = json!(s.label(&value));
        result["evaluated_in_a0"] = json!(s.in_a0(&value));
        line = format!("b1 = {}, b2 = {}, b1 a1 + b2 a2 = {}", s.label(&b1), s.label(&b2), s.label(&value));
    }
    Ok(Outcome::new(Status::from_verdict(w.verdict), result).window(Some(window)).say(line))
}

pub fn krasner(source: &str, subgroup: &str) -> Res<Outcome> {
    let labels: Vec<&str> = subgroup.split(',').map(str::trim).filter(|l| !l.is_empty()).collect();
    let lookup = |found: Option<usize>, l: &str| found.ok_or_else(|| config(format!("unknown element label {l:?}")));
    let modulus = source
        .strip_prefix('Z')
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|_| !Path::new(source).exists());
    let (q, name, input) = match modulus {
        Some(n) => {
            let r = integers_mod(n)?;
            let g = labels.iter().map(|l| lookup(r.index_of(l), l)).collect::<Res<Vec<_>>>()?;
            (krasner_quotient(&r, &g)?, format!("Z{n} modulo {{{subgroup}}}"), None)
        }
        None => {
            let (file, input) = load(Path::new(source))?;
            let name = format!("{} modulo {{{subgroup}}}", file.name);
            let q = if file.is_hyper() {
                let h = file.hyperring()?;
                let g = labels.iter().map(|l| lookup(h.index_of(l), l)).collect::<Res<Vec<_>>>()?;
                hyper_coset_quotient(&h, &g)?
            } else {
                let r = file.semiring()?;
                let g = labels.iter().map(|l| lookup(r.index_of(l), l)).collect::<Res<Vec<_>>>()?;
                krasner_quotient(&r, &g)?
            };
            (q, name, Some(input))
        }
    };
    let report = verify_semihyperring(&q.ring);
    let structure = StructureFile::from_hyperring(&q.ring, &name).to_text();
    let result = json!({
        "cosets": q.ring.group.labels(),
        "class_of": q.class_of,
        "structure": structure,
        "report": report,
    });
    let mut out = Outcome::new(Status::from_bool(report.is_valid()), result)
        .say(format!("{} cosets", q.ring.size()));
    out.summary.extend(report_lines(&report));
    out.summary.push(structure);
    out.input = input;
    Ok(out)
}

pub fn powerset(path: &Path, choice: &str) -> Res<Outcome> {
    let choice: A0Choice = choice.parse()?;
    let (file, input) = load(path)?;
    let h = file.hyperring()?;
    let p = powerset_pair(&h, choice)?;
    let report = verify_admissible(&p);
    let structure = StructureFile::from_pair(&p).to_text();
    let result = json!({
        "size": p.size(),
        "a0": p.labels(&p.a0_indices()),
        "tangible": p.labels(&p.tangible_indices()),
        "structure": structure,
        "admissibility": report,
    });
    let mut out = Outcome::new(Status::from_bool(report.is_valid()), result)
        .input(input)
        .say(format!("power-set pair with {} elements", p.size()));
    out.summary.extend(report_lines(&report));
    Ok(out)
}
