//! Acceptance criteria 1 to 10; prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use casimir_core::report::CheckRecord;
use casimir_core::rootsys::{RootSystem, RootType};
use casimir_core::suites::{eta_records, inversion_records, run, Suite, SuiteConfig};
use casimir_core::Result;

struct Verdict {
    pass: bool,
    detail: String,
}

fn judge(records: &[CheckRecord], wanted: impl Fn(&CheckRecord) -> bool) -> Verdict {
    let selected: Vec<&CheckRecord> = records.iter().filter(|r| wanted(r)).collect();
    let failing: Vec<&&CheckRecord> = selected.iter().filter(|r| !r.pass).collect();
    let detail = match failing.first() {
        Some(r) => format!("{} of {} records fail, first: {} residual {} {:?}", failing.len(), selected.len(), r.name, r.residual, r.parameters),
        None => format!("{} records", selected.len()),
    };
    Verdict {
        pass: !selected.is_empty() && failing.is_empty(),
        detail,
    }
}

fn suite_records(suite: Suite) -> Result<Vec<CheckRecord>> {
    Ok(run(suite, &SuiteConfig::default())?.into_iter().flat_map(|o| o.checks).collect())
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> (Result<T>, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn report<E: std::fmt::Display>(index: usize, title: &str, verdict: std::result::Result<Verdict, E>, elapsed: Duration, limit: Option<Duration>) -> bool {
    let (mut pass, mut detail) = match verdict {
        Ok(v) => (v.pass, v.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            pass = false;
            detail.push_str(&format!("; runtime exceeds {} s", limit.as_secs()));
        }
    }
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("criterion {index:>2}: {tag}  {title} [{:.1} s] {detail}", elapsed.as_secs_f64());
    pass
}

fn main() -> ExitCode {
    let mut all = true;

    let (flat, t) = timed(|| suite_records(Suite::Flatness));
    let (flat_verdict, eq_verdict) = match &flat {
        Ok(r) => (
            Ok(judge(r, |c| matches!(c.name.as_str(), "flatness" | "form agreement" | "mutant flatness"))),
            Ok(judge(r, |c| c.name.starts_with("equiv"))),
        ),
        Err(e) => (Err(e.to_string()), Err(e.to_string())),
    };
    all &= report(1, "flatness on the (n, m) grid with negative control", flat_verdict, t, Some(Duration::from_secs(60)));
    all &= report(2, "equivariance under simple transpositions", eq_verdict, t, None);

    let (v, t) = timed(|| suite_records(Suite::Relations).map(|r| judge(&r, |_| true)));
    all &= report(3, "generic relation suites (Casimir and group algebra)", v, t, None);

    let (v, t) = timed(|| {
        let rs = RootSystem::new(RootType::A(2))?;
        Ok(judge(&eta_records(&rs, 100, 7)?, |_| true))
    });
    all &= report(4, "eta identity at 100 complex and 10 rational points", v, t, None);

    let (v, t) = timed(|| {
        let mut recs = Vec::new();
        for ty in [RootType::A(2), RootType::B(2), RootType::G2, RootType::A(3), RootType::B(3)] {
            recs.extend(inversion_records(&RootSystem::new(ty)?, 50, 7)?);
        }
        Ok(judge(&recs, |_| true))
    });
    all &= report(5, "inversion-set decomposition", v, t, None);

    let (v, t) = timed(|| suite_records(Suite::Yangian).map(|r| judge(&r, |_| true)));
    all &= report(6, "RTT, Gelfand-Zetlin and D_i identities", v, t, None);

    let (v, t) = timed(|| suite_records(Suite::Qkz).map(|r| judge(&r, |_| true)));
    all &= report(7, "qKZ consistency, product formula and bispectrality", v, t, Some(Duration::from_secs(120)));

    let (v, t) = timed(|| suite_records(Suite::Daha).map(|r| judge(&r, |_| true)));
    all &= report(8, "dAHA action, AKZ equality and non-small control", v, t, None);

    let (v, t) = timed(|| {
        suite_records(Suite::Monodromy).map(|r| {
            judge(&r, |c| matches!(c.name.as_str(), "affine braid relation" | "inverse path" | "contractible loop"))
        })
    });
    all &= report(9, "affine braid monodromy of affine A2 on (C^3)^⊗2", v, t, Some(Duration::from_secs(300)));

    let (v, t) = timed(|| suite_records(Suite::Tits).map(|r| judge(&r, |_| true)));
    all &= report(10, "Tits extension models, coroot section and lifts", v, t, None);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
