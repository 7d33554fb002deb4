use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::term::HypTerm;
use crate::error::{Error, Result};
use crate::exact::{Poly, RatFunc, Rational};
use crate::gammaexpr::{num_verdict, Verdict};
use crate::hyper::HypParams;
use crate::mpreal::Precision;

/// `ka·a + kb·b + kc·c + k0`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub ka: Rational,
    pub kb: Rational,
    pub kc: Rational,
    pub k0: Rational,
}

impl Affine {
    pub fn new(ka: &str, kb: &str, kc: &str, k0: &str) -> Self {
        let p = |s: &str| s.parse::<Rational>().expect("literal rational");
        Affine { ka: p(ka), kb: p(kb), kc: p(kc), k0: p(k0) }
    }

    pub fn eval(&self, p: &HypParams) -> Rational {
        &(&(&(&self.ka * &p.a) + &(&self.kb * &p.b)) + &(&self.kc * &p.c)) + &self.k0
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, v) in [(&self.ka, "a"), (&self.kb, "b"), (&self.kc, "c")] {
            if k.is_one() {
                parts.push(v.to_string());
            } else if !k.is_zero() {
                parts.push(format!("({k})·{v}"));
            }
        }
        if !self.k0.is_zero() || parts.is_empty() {
            parts.push(self.k0.to_string());
        }
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for Affine {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Param {
    A,
    B,
    C,
}

/// Which upper parameter of the term plays the rule's `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pivot {
    AsGiven,
    Swapped,
    /// the first ordering that satisfies the constraints
    Either,
}

/// `prefactor(w) · ₂F₁(mapped params; argMap(w)) = ₂F₁(a, b; c; w)`.
#[derive(Clone, Debug, Serialize)]
pub struct TransformRule {
    pub name: String,
    /// each `(x, e)` requires parameter `x` to equal `e(a, b, c)` exactly
    pub constraints: Vec<(Param, Affine)>,
    pub param_map: [Affine; 3],
    pub arg_map: RatFunc,
    pub prefactor: Vec<(Poly, Affine)>,
    pub pivot: Pivot,
    /// w-interval on which the rule is checked numerically
    pub region: (Rational, Rational),
}

fn poly(c: &[&str]) -> Poly {
    Poly::new(c.iter().map(|s| s.parse().expect("literal rational")).collect())
}

fn rf(num: &[&str], den: &[&str]) -> RatFunc {
    RatFunc::new(poly(num), poly(den)).expect("nonzero denominator")
}

fn q(s: &str) -> Rational {
    s.parse().expect("literal rational")
}

impl TransformRule {
    /// (c−a, c−b; c), prefactor (1−w)^(c−a−b)
    pub fn euler() -> Self {
        TransformRule {
            name: "euler".into(),
            constraints: vec![],
            param_map: [
                Affine::new("-1", "0", "1", "0"),
                Affine::new("0", "-1", "1", "0"),
                Affine::new("0", "0", "1", "0"),
            ],
            arg_map: RatFunc::identity(),
            prefactor: vec![(poly(&["1", "-1"]), Affine::new("-1", "-1", "1", "0"))],
            pivot: Pivot::AsGiven,
            region: (q("-1/2"), q("1/2")),
        }
    }

    /// (a, c−b; c) at w/(w−1), prefactor (1−w)^(−a)
    pub fn pfaff() -> Self {
        TransformRule {
            name: "pfaff".into(),
            constraints: vec![],
            param_map: [
                Affine::new("1", "0", "0", "0"),
                Affine::new("0", "-1", "1", "0"),
                Affine::new("0", "0", "1", "0"),
            ],
            arg_map: rf(&["0", "1"], &["-1", "1"]),
            prefactor: vec![(poly(&["1", "-1"]), Affine::new("-1", "0", "0", "0"))],
            pivot: Pivot::AsGiven,
            region: (q("-1/2"), q("2/5")),
        }
    }

    /// c = 2b: (b − a/2, b + 1/2 − a/2; b + 1/2) at w²/(2−w)²,
    /// prefactor (1−w)^(b−a) (1−w/2)^(a−2b)
    pub fn q1() -> Self {
        TransformRule {
            name: "q1".into(),
            constraints: vec![(Param::C, Affine::new("0", "2", "0", "0"))],
            param_map: [
                Affine::new("-1/2", "1", "0", "0"),
                Affine::new("-1/2", "1", "0", "1/2"),
                Affine::new("0", "1", "0", "1/2"),
            ],
            arg_map: rf(&["0", "0", "1"], &["4", "-4", "1"]),
            prefactor: vec![
                (poly(&["1", "-1"]), Affine::new("-1", "1", "0", "0")),
                (poly(&["1", "-1/2"]), Affine::new("1", "-2", "0", "0")),
            ],
            pivot: Pivot::Either,
            region: (q("-1/2"), q("1/2")),
        }
    }

    /// c = (a+b+1)/2: (a/2, (a+1)/2; c) at 4w(w−1)/(2w−1)², prefactor (1−2w)^(−a)
    pub fn q2() -> Self {
        TransformRule {
            name: "q2".into(),
            constraints: vec![(Param::C, Affine::new("1/2", "1/2", "0", "1/2"))],
            param_map: [
                Affine::new("1/2", "0", "0", "0"),
                Affine::new("1/2", "0", "0", "1/2"),
                Affine::new("0", "0", "1", "0"),
            ],
            arg_map: rf(&["0", "-4", "4"], &["1", "-4", "4"]),
            prefactor: vec![(poly(&["1", "-2"]), Affine::new("-1", "0", "0", "0"))],
            pivot: Pivot::Either,
            region: (q("-1/2"), q("1/8")),
        }
    }

    /// b = a + 1/2, c = (4a+5)/6: (a/3, a/3 + 1/2; c) at −27w(1−w)²/(1−9w)²,
    /// prefactor (1−9w)^(−2a/3)
    pub fn cubic() -> Self {
        TransformRule {
            name: "cubic".into(),
            constraints: vec![
                (Param::B, Affine::new("1", "0", "0", "1/2")),
                (Param::C, Affine::new("2/3", "0", "0", "5/6")),
            ],
            param_map: [
                Affine::new("1/3", "0", "0", "0"),
                Affine::new("1/3", "0", "0", "1/2"),
                Affine::new("0", "0", "1", "0"),
            ],
            arg_map: rf(&["0", "-27", "54", "-27"], &["1", "-18", "81"]),
            prefactor: vec![(poly(&["1", "-9"]), Affine::new("-2/3", "0", "0", "0"))],
            pivot: Pivot::Either,
            region: (q("-1/12"), q("1/60")),
        }
    }

    pub fn standard() -> Vec<TransformRule> {
        vec![Self::euler(), Self::pfaff(), Self::q1(), Self::q2(), Self::cubic()]
    }

    pub fn by_name(name: &str) -> Option<TransformRule> {
        Self::standard().into_iter().find(|r| r.name == name)
    }

    pub fn with_pivot(mut self, pivot: Pivot) -> Self {
        self.pivot = pivot;
        self
    }

    fn check(&self, p: &HypParams) -> Result<()> {
        for (x, e) in &self.constraints {
            let (name, have) = match x {
                Param::A => ("a", &p.a),
                Param::B => ("b", &p.b),
                Param::C => ("c", &p.c),
            };
            let want = e.eval(p);
            if have != &want {
                return Err(Error::RuleConstraint {
                    rule: self.name.clone(),
                    reason: format!("{name} = {have} but {e} = {want} for {p}"),
                });
            }
        }
        Ok(())
    }

    fn orderings(&self, p: &HypParams) -> Vec<HypParams> {
        match self.pivot {
            Pivot::AsGiven => vec![p.clone()],
            Pivot::Swapped => vec![p.swapped()],
            Pivot::Either => vec![p.clone(), p.swapped()],
        }
    }

    fn mapped_params(&self, p: &HypParams) -> Result<HypParams> {
        let [a, b, c] = &self.param_map;
        HypParams::new(a.eval(p), b.eval(p), c.eval(p))
    }
}

/// Rewrite `term` with `rule`: the new argument is `argMap ∘ argument` and
/// every rule prefactor `P(w)^e` becomes `H(z)^e · D(z)^(−e·deg P)` where
/// `argument = N/D` and `H` is `P` homogenized at `(N, D)`.
pub fn apply_rule(rule: &TransformRule, term: &HypTerm) -> Result<HypTerm> {
    let mut last = None;
    for p in rule.orderings(&term.params) {
        match rule.check(&p) {
            Ok(()) => return rewrite(rule, term, &p),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one ordering"))
}

fn rewrite(rule: &TransformRule, term: &HypTerm, p: &HypParams) -> Result<HypTerm> {
    let params = rule.mapped_params(p)?;
    let argument = rule.arg_map.compose(&term.argument)?;
    let mut out = HypTerm { prefactor: term.prefactor.clone(), params, argument };
    let (n, d) = (term.argument.num(), term.argument.den());
    for (base, e) in &rule.prefactor {
        let e = e.eval(p);
        let deg = base.degree().unwrap_or(0);
        out.push_factor(&base.homogenize(n, d), &e)?;
        out.push_factor(d, &(-&e * &Rational::int(deg as u64)))?;
    }
    Ok(out)
}

/// One numerical check of a rule at a sample point.
#[derive(Clone, Debug, Serialize)]
pub struct SoundnessSample {
    pub params: HypParams,
    pub w: Rational,
    pub verdict: Verdict,
}

fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(lo * den..=hi * den);
    Rational::new(num, den).expect("nonzero")
}

/// Draw parameters satisfying the rule's constraints whose images are not poles.
fn sample_params(rule: &TransformRule, rng: &mut ChaCha8Rng) -> HypParams {
    loop {
        let mut v = [random_rational(rng, -2, 3, 8), random_rational(rng, -2, 3, 8), random_rational(rng, -2, 3, 8)];
        for (x, e) in &rule.constraints {
            let cur = HypParams { a: v[0].clone(), b: v[1].clone(), c: v[2].clone() };
            v[*x as usize] = e.eval(&cur);
        }
        let [a, b, c] = v;
        let Ok(p) = HypParams::new(a, b, c) else { continue };
        if p.termination().is_some() || rule.mapped_params(&p).is_err() {
            continue;
        }
        return p;
    }
}

/// Check `₂F₁(a,b;c;w) = prefactor · ₂F₁(mapped; argMap(w))` at `samples`
/// random points of the rule's region. Deterministic for a given seed.
pub fn rule_soundness(
    rule: &TransformRule,
    samples: usize,
    prec: Precision,
    seed: u64,
) -> Result<Vec<SoundnessSample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = &rule.region;
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let p = sample_params(rule, &mut rng);
        let t: Rational = Rational::new(rng.gen_range(0..=1000i64), 1000).expect("nonzero");
        let w = lo + &(&t * &(hi - lo));
        if w.is_zero() {
            continue;
        }
        let lhs = HypTerm::plain(p.clone()).eval_at(&w, prec)?;
        let rhs =
            apply_rule(&rule.clone().with_pivot(Pivot::AsGiven), &HypTerm::plain(p.clone()))?.eval_at(&w, prec)?;
        out.push(SoundnessSample { params: p, w, verdict: num_verdict(&lhs, &rhs, prec.target_digits()) });
    }
    Ok(out)
}
