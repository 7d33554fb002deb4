use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use super::families::{evidence, Evidence};
use super::report::{Achieved, Outcome, ReportEntry, VerificationReport};
use super::{catalog_load, IdentityRecord, Kind, Lhs, Rhs};
use crate::error::{Error, Result};
use crate::gammaexpr::{ge_eval, Verdict};
use crate::hyper::{f21_eval, f21_terminating};
use crate::mpreal::{BigReal, Precision};
use crate::transforms::StepCheck;

fn point_evidence(lhs: &Lhs, rhs: &Rhs, prec: Precision) -> Result<Evidence> {
    if let (Rhs::Rational(r), Some(_)) = (rhs, lhs.params.termination()) {
        let v = f21_terminating(&lhs.params, &lhs.z)?;
        let mismatches = if &v == r { vec![] } else { vec![format!("{v} ≠ {r}")] };
        return Ok(Evidence::Exact { mismatches });
    }
    let l = f21_eval(&lhs.params, &lhs.z, prec)?;
    let r = match rhs {
        Rhs::Gamma(e) => ge_eval(e, prec)?,
        Rhs::GammaSum(s) => s.eval(prec)?,
        Rhs::Rational(q) => BigReal::from_rational(q, prec.work_bits()),
        Rhs::PochRatio { .. } => return Err(Error::Catalog("Pochhammer ratio needs an index".into())),
    };
    Ok(Evidence::Numeric(vec![StepCheck::compare(format!("2F1{} at z = {}", lhs.params, lhs.z), &l, &r, prec)]))
}

fn gather(r: &IdentityRecord, prec: Precision) -> Result<Evidence> {
    match (&r.kind, &r.lhs, &r.rhs, &r.parameters) {
        (Kind::PointEvaluation, Some(l), Some(rhs), _) => point_evidence(l, rhs, prec),
        (_, _, _, Some(p)) => evidence(p, prec),
        _ => Err(Error::Catalog(format!("record {:?} has nothing to verify", r.id))),
    }
}

struct Attempt {
    verdict: Outcome,
    digits: Achieved,
    diagnostics: Vec<String>,
}

fn judge(ev: Evidence) -> Attempt {
    match ev {
        Evidence::Exact { mismatches } if mismatches.is_empty() => {
            Attempt { verdict: Outcome::Pass, digits: Achieved::Exact, diagnostics: vec![] }
        }
        Evidence::Exact { mismatches } => {
            Attempt { verdict: Outcome::Fail, digits: Achieved::None, diagnostics: mismatches }
        }
        Evidence::Numeric(checks) if checks.is_empty() => {
            Attempt { verdict: Outcome::Skipped, digits: Achieved::None, diagnostics: vec!["no sample points".into()] }
        }
        Evidence::Numeric(checks) => {
            let digits = Achieved::Digits(checks.iter().map(|c| c.agreement_digits).min().unwrap_or(0));
            let describe = |c: &StepCheck| {
                if c.lhs.is_empty() {
                    format!("{}: {}", c.step, c.verdict)
                } else {
                    format!("{}: {}\n      lhs {}\n      rhs {}", c.step, c.verdict, c.lhs, c.rhs)
                }
            };
            let distinct: Vec<String> =
                checks.iter().filter(|c| c.verdict == Verdict::Distinct).map(describe).collect();
            if !distinct.is_empty() {
                return Attempt { verdict: Outcome::Fail, digits, diagnostics: distinct };
            }
            let open: Vec<String> = checks.iter().filter(|c| !c.passed()).map(describe).collect();
            if open.is_empty() {
                Attempt { verdict: Outcome::Pass, digits, diagnostics: vec![] }
            } else {
                Attempt { verdict: Outcome::Inconclusive, digits, diagnostics: open }
            }
        }
    }
}

fn attempt(r: &IdentityRecord, prec: Precision) -> Attempt {
    if r.kind == Kind::Unsupported {
        return Attempt {
            verdict: Outcome::Skipped,
            digits: Achieved::None,
            diagnostics: vec!["record kind is not supported by this version".into()],
        };
    }
    match gather(r, prec) {
        Ok(ev) => judge(ev),
        Err(e) => {
            let verdict = match e {
                Error::NoStrategy(_) => Outcome::Skipped,
                Error::TermCap(_) | Error::QuadratureNonConvergence { .. } => Outcome::Inconclusive,
                _ => Outcome::Fail,
            };
            Attempt { verdict, digits: Achieved::None, diagnostics: vec![e.to_string()] }
        }
    }
}

/// Verify one record at `prec` (or the record's pinned precision, if
/// higher). An inconclusive result is retried once at doubled precision.
pub fn verify_identity(r: &IdentityRecord, prec: Precision) -> ReportEntry {
    let start = Instant::now();
    let mut prec = Precision::digits(prec.target_digits().max(r.digits.unwrap_or(0)));
    let mut a = attempt(r, prec);
    let mut retried = false;
    if a.verdict == Outcome::Inconclusive {
        prec = prec.doubled();
        a = attempt(r, prec);
        retried = true;
    }
    ReportEntry {
        id: r.id.clone(),
        kind: r.kind,
        verdict: a.verdict,
        digits: a.digits,
        precision: prec.target_digits(),
        retried,
        wall_seconds: start.elapsed().as_secs_f64(),
        diagnostics: a.diagnostics,
    }
}

/// Verify `records` on `jobs` worker threads; the report is sorted by id.
pub fn run_records(records: &[IdentityRecord], prec: Precision, jobs: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Catalog(format!("cannot start workers: {e}")))?;
    let entries = pool.install(|| records.par_iter().map(|r| verify_identity(r, prec)).collect());
    Ok(VerificationReport::new(prec.target_digits(), entries, start.elapsed().as_secs_f64()))
}

pub fn run_all(path: impl AsRef<Path>, prec: Precision, jobs: usize) -> Result<VerificationReport> {
    run_records(&catalog_load(path)?, prec, jobs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_from_str;

    fn one(rec: &str) -> IdentityRecord {
        catalog_from_str(&format!(r#"{{"schema_version": 1, "records": [{rec}]}}"#)).unwrap().remove(0)
    }

    #[test]
    fn point_pass_and_canary() {
        let good = one(r#"{"id": "cl", "kind": "point-evaluation", "source": "t",
            "lhs": {"params": {"a": "1/2", "b": "2/3", "c": "1/6"}, "z": "1/4"},
            "rhs": {"gamma": {"rat": [["2", "1/3"], ["4/3", "1"]]}}}"#);
        let e = verify_identity(&good, Precision::digits(60));
        assert_eq!(e.verdict, Outcome::Pass, "{e:?}");
        let bad = one(r#"{"id": "cl", "kind": "point-evaluation", "source": "t",
            "lhs": {"params": {"a": "1/2", "b": "2/3", "c": "1/6"}, "z": "1/4"},
            "rhs": {"gamma": {"rat": [["2", "1/3"], ["4/3", "1"], ["100000000000000000001/100000000000000000000", "1"]]}}}"#);
        let e = verify_identity(&bad, Precision::digits(60));
        assert_eq!(e.verdict, Outcome::Fail);
        assert!(e.diagnostics[0].contains("lhs") && e.diagnostics[0].contains("rhs"));
    }

    #[test]
    fn exact_family_and_skips() {
        let az = one(r#"{"id": "az", "kind": "parametric-family", "source": "t",
            "parameters": {"type": "apagodu-zeilberger", "n_max": 12,
              "rhs": {"poch_ratio": {"base": "16384/15625",
                "ratio": {"upper": ["9/8", "11/8", "13/8", "15/8"], "lower": ["6/5", "9/5", "13/10", "17/10"]}}}}}"#);
        let e = verify_identity(&az, Precision::digits(30));
        assert_eq!((e.verdict, e.digits), (Outcome::Pass, Achieved::Exact));
        assert_eq!(serde_json::to_value(&e).unwrap()["digits"], "exact");
        let unknown = one(r#"{"id": "u", "kind": "mystery", "source": "t"}"#);
        assert_eq!(verify_identity(&unknown, Precision::digits(30)).verdict, Outcome::Skipped);
    }

    #[test]
    fn report_ordering_and_exit_code() {
        let recs = catalog_from_str(
            r#"{"schema_version": 1, "records": [
            {"id": "z-last", "kind": "mystery", "source": "t"},
            {"id": "a-first", "kind": "point-evaluation", "source": "t",
             "lhs": {"params": {"a": "-2", "b": "1/2", "c": "3"}, "z": "1/2"}, "rhs": {"rational": "163/192"}}]}"#,
        )
        .unwrap();
        let rep = run_records(&recs, Precision::digits(20), 2).unwrap();
        let ids: Vec<&str> = rep.entries.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["a-first", "z-last"]);
        assert_eq!(rep.entries[0].digits, Achieved::Exact);
        assert_eq!(rep.exit_code(), 0);
        let empty = run_records(&[], Precision::digits(20), 1).unwrap();
        assert_eq!((empty.entries.len(), empty.exit_code()), (0, 0));
    }
}
