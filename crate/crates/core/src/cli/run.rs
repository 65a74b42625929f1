//! Command verbs.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::config::JobConfig;
use super::report::{CheckRecord, Report};
use super::suite::{a1_table_failure, coalgebra_retraction, run_criterion, select};
use crate::cocycle::{
    delta_connecting, prop36_check, sigma_formula_failure, split_values, theorem33_check, Bosonization, KCharacter,
    LiftedAlgebra, Nichols, SquareLevel,
};
use crate::cyclotomic::CycNum;
use crate::datum::{CartanDatum, Family};
use crate::error::{Error, Result};
use crate::freehopf::{free_elt_to_json, lemma31_oracle};
use crate::presented::{build_coalgebra_retraction, retraction_u, retraction_u2, Retraction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Lift,
    Check,
    Lemma31 { m: u32, n: u32 },
    RetractionBuild,
    RetractionVerify,
    Theorem33,
    Prop36,
    Selftest,
}

impl Command {
    /// Parses a command line from a config's `commands` list, e.g.
    /// `"oracle lemma31 --m 3 --n 2"` or `"retraction verify"`.
    pub fn parse(line: &str) -> Result<Command> {
        let words: Vec<&str> = line.split_whitespace().collect();
        let flag = |name: &str| -> Result<u32> {
            let pos = words.iter().position(|w| *w == name).ok_or_else(|| Error::Parse(format!("`{line}`: missing {name}")))?;
            words
                .get(pos + 1)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("`{line}`: {name} needs a non-negative integer")))
        };
        match words.as_slice() {
            ["lift"] => Ok(Command::Lift),
            ["check"] => Ok(Command::Check),
            ["oracle", "lemma31", ..] => Ok(Command::Lemma31 { m: flag("--m")?, n: flag("--n")? }),
            ["retraction", "build"] => Ok(Command::RetractionBuild),
            ["retraction", "verify"] => Ok(Command::RetractionVerify),
            ["theorem33"] => Ok(Command::Theorem33),
            ["prop36"] => Ok(Command::Prop36),
            ["selftest"] => Ok(Command::Selftest),
            _ => Err(Error::Parse(format!("unknown command `{line}`"))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Command::Lift => "lift".into(),
            Command::Check => "check".into(),
            Command::Lemma31 { m, n } => format!("oracle lemma31 --m {m} --n {n}"),
            Command::RetractionBuild => "retraction build".into(),
            Command::RetractionVerify => "retraction verify".into(),
            Command::Theorem33 => "theorem33".into(),
            Command::Prop36 => "prop36".into(),
            Command::Selftest => "selftest".into(),
        }
    }
}

struct Job {
    d: CartanDatum,
    nich: Arc<Nichols>,
    cutoff: u32,
    f: Vec<CycNum>,
}

impl Job {
    fn new(cfg: &JobConfig) -> Result<Job> {
        let d = cfg.datum()?;
        let nich = Arc::new(Nichols::from_datum(&d)?);
        let f = cfg.generator_values(&d)?;
        Ok(Job { cutoff: cfg.cutoff_for(&d), d, nich, f })
    }

    fn require(&self, families: &[Family], what: &str) -> Result<()> {
        if families.contains(&self.d.family) {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("{what} needs a {} datum", families.iter().map(|f| f.name()).collect::<Vec<_>>().join(" or "))))
        }
    }

    fn f_json(&self) -> serde_json::Value {
        let names = self.nich.p.k_generator_names();
        json!(names.iter().zip(&self.f).map(|(n, v)| (n.clone(), json!(v))).collect::<serde_json::Map<_, _>>())
    }
}

/// Runs one command. Input problems are errors; failed verifications are
/// recorded in the report.
pub fn run(cmd: &Command, cfg: &JobConfig) -> Result<Report> {
    match cmd {
        Command::Selftest => {
            let family = cfg.datum().ok().map(|d| d.family);
            Ok(selftest(family))
        }
        _ => {
            let job = Job::new(cfg)?;
            let mut report = Report::new(cmd.name());
            report.data.insert("family".into(), json!(job.d.family.name()));
            report.data.insert("N".into(), json!(job.d.n));
            match cmd {
                Command::Lift => lift(&job, &mut report)?,
                Command::Check => check(&job, &mut report)?,
                Command::Lemma31 { m, n } => oracle(&job, *m, *n, &mut report)?,
                Command::RetractionBuild => retraction_build(&job, &mut report)?,
                Command::RetractionVerify => retraction_verify(&job, &mut report)?,
                Command::Theorem33 => theorem33(&job, &mut report)?,
                Command::Prop36 => prop36(&job, &mut report)?,
                Command::Selftest => unreachable!(),
            }
            Ok(report)
        }
    }
}

/// The acceptance criteria touching `family` (all of them for `None`).
pub fn selftest(family: Option<Family>) -> Report {
    let mut report = Report::new("selftest");
    for c in select(family) {
        let r = run_criterion(&c);
        report.push(CheckRecord::new(format!("{}. {}", r.id, r.title), r.pass, (!r.pass).then(|| r.detail.clone()), r.elapsed));
        report.data.insert(format!("criterion_{:02}", r.id), json!(r.detail));
    }
    report
}

fn cocycle(job: &Job, report: &mut Report) -> Result<crate::cocycle::Cocycle2> {
    let u = coalgebra_retraction(&job.nich, job.cutoff)?;
    report.data.insert("retraction".into(), json!(u.name));
    report.data.insert("f_values".into(), job.f_json());
    delta_connecting(&job.nich, &KCharacter::new(&job.nich.p, job.f.clone())?, &u)
}

fn lift(job: &Job, report: &mut Report) -> Result<()> {
    let nich = &job.nich;
    let sigma = cocycle(job, report)?;
    let cocycle_ok = report.check("braided 2-cocycle", || Ok(nich.cos.cocycle_failure(&sigma).map(|t| nich.triple_name(t))))?;
    report.data.insert("cocycle".into(), sigma.to_json());
    if !cocycle_ok {
        return Ok(());
    }
    let boson = Arc::new(Bosonization::new(nich.clone()));
    let alg = LiftedAlgebra::from_braided(boson.clone(), &sigma)?;
    report.check("unit", || Ok(alg.unit_failure().map(|a| boson.name(a))))?;
    if job.d.family == Family::A1 {
        report.check("closed form fs(z)x^{m+n-N}(1-g^N)", || {
            Ok(a1_table_failure(&boson, &alg, &job.f[0]).map(|(m, n)| format!("x^{m} · x^{n}")))
        })?;
    }
    report.data.insert("lifted_algebra".into(), alg.to_json());
    Ok(())
}

fn check(job: &Job, report: &mut Report) -> Result<()> {
    let nich = &job.nich;
    let sigma = cocycle(job, report)?;
    report.check("normalized", || Ok(nich.cos.normalization_failure(&sigma).map(|x| nich.name(x))))?;
    let ok = report.check("braided 2-cocycle", || Ok(nich.cos.cocycle_failure(&sigma).map(|t| nich.triple_name(t))))?;
    let boson = Arc::new(Bosonization::new(nich.clone()));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let triples = boson.sample_triples(&mut rng, 300);
    let name3 = |(a, b, c): (usize, usize, usize)| format!("{} ⊗ {} ⊗ {}", boson.name(a), boson.name(b), boson.name(c));
    report.check("bosonized 2-cocycle (sampled)", || Ok(boson.ordinary_cocycle_failure(&sigma, &triples).map(name3)))?;
    if !ok {
        return Ok(());
    }
    let alg = LiftedAlgebra::from_braided(boson.clone(), &sigma)?;
    report.check("associativity (sampled)", || Ok(alg.associativity_failure(&triples).map(name3)))?;
    report.check("unit", || Ok(alg.unit_failure().map(|a| boson.name(a))))?;
    let pairs = boson.sample_pairs(&mut rng, 200);
    report.check("comultiplicativity (sampled)", || {
        Ok(alg.bialgebra_failure(&pairs).map(|(a, b)| format!("{} ⊗ {}", boson.name(a), boson.name(b))))
    })?;
    Ok(())
}

fn oracle(job: &Job, m: u32, n: u32, report: &mut Report) -> Result<()> {
    job.require(&[Family::QPlane, Family::Qls], "the commutation oracle")?;
    let out = lemma31_oracle(&job.d, m, n)?;
    report.check(&format!("x2^{m} x1^{n} remainder lies in the ideal"), || {
        Ok((!out.holds()).then(|| format!("{} residual terms", out.membership.residual.len())))
    })?;
    report.data.insert("remainder".into(), free_elt_to_json(&out.remainder));
    report.data.insert("certificate_terms".into(), json!(out.membership.certificate.len()));
    Ok(())
}

fn default_retraction(job: &Job) -> Result<Retraction> {
    match job.d.family {
        Family::A2 => retraction_u2(&job.nich.p),
        _ => Ok(retraction_u(&job.nich.p)),
    }
}

fn retraction_build(job: &Job, report: &mut Report) -> Result<()> {
    let p = &job.nich.p;
    let mut built = build_coalgebra_retraction(p, job.cutoff, &[])?;
    report.check("coalgebra law", || Ok(built.verify_coalgebra(p, job.cutoff)?.map(|m| p.mono_name(&m))))?;
    let reference = default_retraction(job)?;
    report.check(&format!("agrees with {} on B", reference.name), || {
        Ok(p.b_basis().into_iter().find(|b| built.apply_mono(p, b) != reference.apply_mono(p, b)).map(|b| p.mono_name(&b)))
    })?;
    report.data.insert("retraction".into(), built.to_json());
    Ok(())
}

fn retraction_verify(job: &Job, report: &mut Report) -> Result<()> {
    let p = &job.nich.p;
    let u = default_retraction(job)?;
    report.data.insert("retraction".into(), json!(u.name));
    report.check("u∘κ = id", || Ok(u.check_u_kappa(p, job.cutoff).map(|z| p.mono_name(&z))))?;
    let samples = p.rbar_basis(job.cutoff.min(6));
    report.check("K-bimodule law (sampled)", || {
        Ok(u.check_bimodule(p, &samples).map(|(a, r, b)| format!("{} · {} · {}", p.mono_name(&a), p.mono_name(&r), p.mono_name(&b))))
    })?;
    report.check("coalgebra law", || Ok(u.check_coalgebra(p, job.cutoff)?.map(|m| p.mono_name(&m))))?;
    Ok(())
}

fn theorem33(job: &Job, report: &mut Report) -> Result<()> {
    job.require(&[Family::QPlane], "the exponential square")?;
    let nich = &job.nich;
    let cases: Vec<(String, Vec<CycNum>)> = if job.f.iter().any(|v| !v.is_zero()) {
        vec![("d".into(), job.f.clone())]
    } else {
        [("d1", [1, 0, 0]), ("d2", [0, 1, 0]), ("d21", [0, 0, 1]), ("d1+d2+d21", [1, 1, 1])]
            .into_iter()
            .map(|(n, v)| (n.to_string(), v.iter().map(|&x| CycNum::from_int(x)).collect()))
            .collect()
    };
    for (name, d) in cases {
        let out = theorem33_check(nich, &d)?;
        report.check(&format!("δ(e^{name}) = Exp_q(δ_hoch {name})"), || {
            Ok(out.mismatch.map(|k| format!("{}: {} vs {}", nich.pair_name(k), out.delta_exp.values[k], out.exp_q.values[k])))
        })?;
        let level = match &out.level {
            SquareLevel::Cocycle => json!("cocycle"),
            SquareLevel::Class(chi) => json!({"class": chi.to_json()}),
            SquareLevel::Unresolved => json!("no relating twist on K-degrees"),
        };
        report.data.insert(format!("{name}_level"), level);
        report.data.insert(format!("{name}_zeta21_first_equal"), json!(out.reordered_mismatch.is_none()));
    }
    Ok(())
}

fn prop36(job: &Job, report: &mut Report) -> Result<()> {
    job.require(&[Family::Qls], "the splitting check")?;
    let mut s: Vec<usize> = job.d.linking.iter().flat_map(|&(i, j)| [i, j]).collect();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() {
        s.push(0);
    }
    let (f_s, f_t) = split_values(&job.d, &s, &job.f)?;
    report.data.insert("S".into(), json!(s.iter().map(|v| v + 1).collect::<Vec<_>>()));
    let out = prop36_check(&job.d, &s, &f_s, &f_t)?;
    report.check("δ(ρ¹(f_S, f_T)) = ρ²(δf_S, δf_T)", || Ok(out.mismatch.map(|k| job.nich.pair_name(k))))?;
    let f = KCharacter::new(&job.nich.p, job.f.clone())?;
    report.check("σ on powers of root vectors", || Ok(sigma_formula_failure(&job.nich, &f)?.map(|k| job.nich.pair_name(k))))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(preset: &str, f: &[(&str, i64)]) -> JobConfig {
        let mut c = JobConfig::preset(preset, 3);
        c.f_values = f.iter().map(|(k, v)| (k.to_string(), CycNum::from_int(*v))).collect();
        c
    }

    #[test]
    fn command_lines_parse() {
        assert_eq!(Command::parse("oracle lemma31 --m 3 --n 2").unwrap(), Command::Lemma31 { m: 3, n: 2 });
        assert_eq!(Command::parse("retraction verify").unwrap(), Command::RetractionVerify);
        assert!(Command::parse("oracle lemma31 --m x").is_err());
        assert!(Command::parse("frobnicate").is_err());
    }

    #[test]
    fn lift_on_a1_matches_the_closed_form() {
        let r = run(&Command::Lift, &cfg("a1", &[("z", 1)])).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.checks.iter().any(|c| c.name.starts_with("closed form")));
        assert!(r.data.contains_key("lifted_algebra"));
    }

    #[test]
    fn oracle_and_checks_on_the_quantum_plane() {
        assert!(run(&Command::Lemma31 { m: 3, n: 2 }, &cfg("qplane", &[])).unwrap().passed());
        let r = run(&Command::Check, &cfg("qplane", &[("z1", 1), ("z2", 2), ("z21", 1)])).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(matches!(run(&Command::Prop36, &cfg("qplane", &[])), Err(Error::Unsupported(_))));
    }

    #[test]
    fn prop36_and_retraction_commands() {
        let r = run(&Command::Prop36, &cfg("qls", &[("z1", 1), ("z2", 2), ("z3", 3), ("z21", 1)])).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        let r = run(&Command::RetractionVerify, &cfg("qplane", &[])).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn identical_runs_serialize_identically() {
        let c = cfg("qplane", &[("z1", 1), ("z21", 2)]);
        let a = run(&Command::Check, &c).unwrap();
        let b = run(&Command::Check, &c).unwrap();
        let fmt = super::super::report::Format::Json;
        assert_eq!(a.render(fmt), b.render(fmt));
    }
}
