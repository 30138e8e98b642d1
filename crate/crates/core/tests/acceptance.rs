//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use common::{brute_force_count, canonical_pairings, colorings, kind_strings};
use patterned::freeness::{
    concentration_check, free_moment_prediction, role_report, semicircle_moment, trace_factorization_check,
    AlternatingMonomial,
};
use patterned::limits::{alpha_bound, count_circuits_exact, LimitMethod, LimitParams, LimitSolver, DEFAULT_BUDGET};
use patterned::sampler::InputDistribution;
use patterned::spectra::{lsd_report, sum_limit_moments, sum_lsd_report, LsdConfig, MatrixPolynomial};
use patterned::tables::reference_rows;
use patterned::{ColoredWord, Letter, LinkKind, Monomial};
use rayon::prelude::*;

const SEED: u64 = 5;

const TABLE_MC_SAMPLES: u64 = 1_000_000;
const TABLE_MC_TOL: f64 = 0.02;
const TABLE_EXACT_TOL: f64 = 0.05;

const CATALAN_MC_SAMPLES: u64 = 200_000;
const CATALAN_TOL: f64 = 0.01;
const CATALAN_SIZES: [usize; 3] = [8, 16, 24];

const SWEEP_MC_SAMPLES: u64 = 200_000;
const BOUND_SLACK: f64 = 0.02;
const FREENESS_TOL: f64 = 0.03;
const WITNESS_GAP: f64 = 2.0 / 3.0;
const WITNESS_TOL: f64 = 0.02;

const SEMICIRCLE_TOL: f64 = 0.02;
const ESD_N: usize = 512;
const ESD_REPS: usize = 20;
const M2_TOL: f64 = 0.05;
const M4_TOL: f64 = 0.15;

const ODD_TOL: f64 = 0.05;
const BETA2_TOL: f64 = 0.1;

const CONCENTRATION_REPS: usize = 200;
const CONCENTRATION_FACTOR: f64 = 2.0;

const FACTORIZATION_REPS: usize = 200;
const FACTORIZATION_RATIO: f64 = 0.5;

const ORACLE_MAX_N: usize = 12;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn mc(samples: u64) -> LimitSolver {
    LimitSolver::new(
        LimitMethod::MonteCarlo,
        LimitParams {
            samples,
            seed: SEED,
            ..LimitParams::default()
        },
    )
}

fn exact() -> LimitSolver {
    LimitSolver::new(
        LimitMethod::ExactCountExtrapolate,
        LimitParams {
            seed: SEED,
            ..LimitParams::default()
        },
    )
}

fn monomials(kinds: &[LinkKind], len: usize) -> Vec<Monomial> {
    kind_strings(kinds, len)
        .iter()
        .map(|s| Monomial::parse(s).unwrap())
        .collect()
}

fn kinds_used(q: &Monomial) -> BTreeSet<LinkKind> {
    q.kinds().collect()
}

fn golden_tables() -> Outcome {
    let (mc, exact) = (mc(TABLE_MC_SAMPLES), exact());
    let rows = reference_rows();
    let checked: Vec<(String, bool)> = rows
        .par_iter()
        .map(|r| {
            let w = r.colored_word();
            let a = mc.p_limit(&w).unwrap().value;
            let b = exact.p_limit(&w).unwrap().value;
            let ok = (a - r.value()).abs() <= TABLE_MC_TOL && (b - r.value()).abs() <= TABLE_EXACT_TOL;
            (
                format!("{} {} ref {:.4} mc {a:.4} exact {b:.4}", r.monomial, r.word, r.value()),
                ok,
            )
        })
        .collect();
    let bad: Vec<&str> = checked.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
    let mut detail = format!(
        "{}/{} rows within mc ±{TABLE_MC_TOL} and exact ±{TABLE_EXACT_TOL}",
        rows.len() - bad.len(),
        rows.len()
    );
    if !bad.is_empty() {
        detail += &format!("; off: {}", bad.join("; "));
    }
    outcome(bad.is_empty(), detail)
}

fn catalan_words() -> Outcome {
    let mut words = BTreeSet::new();
    for len in [2, 4, 6] {
        for pairing in canonical_pairings(len) {
            for a in 0..LinkKind::ALL.len() {
                for b in (a + 1)..LinkKind::ALL.len() {
                    for w in colorings(&pairing, &[LinkKind::ALL[a], LinkKind::ALL[b]]) {
                        if w.is_catalan() {
                            words.insert(w);
                        }
                    }
                }
            }
        }
    }
    let solver = mc(CATALAN_MC_SAMPLES);
    let words: Vec<ColoredWord> = words.into_iter().collect();
    let bad: Vec<String> = words
        .par_iter()
        .filter_map(|w| {
            let p = solver.p_limit(w).unwrap().value;
            let k = w.len() as u32 / 2;
            let short = CATALAN_SIZES
                .iter()
                .find(|&&n| count_circuits_exact(w, n, DEFAULT_BUDGET).unwrap() < (n as u64).pow(k + 1));
            ((p - 1.0).abs() > CATALAN_TOL || short.is_some())
                .then(|| format!("{} {} p={p:.4}", w.monomial(), w.text()))
        })
        .collect();
    outcome(
        bad.is_empty(),
        format!(
            "{} colored Catalan words, p within ±{CATALAN_TOL} of 1 and counts ≥ n^(k+1) at n in {CATALAN_SIZES:?}; failures {bad:?}",
            words.len()
        ),
    )
}

fn vanishing_alpha() -> Outcome {
    let letters: Vec<Letter> = LinkKind::ALL
        .iter()
        .flat_map(|&k| [Letter::new(k, 1), Letter::new(k, 2)])
        .collect();
    let solver = exact();
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for _ in 1..=5 {
        frontier = frontier
            .iter()
            .flat_map(|m| letters.iter().map(move |l| [m.as_slice(), &[*l]].concat()))
            .collect();
        for letters in &frontier {
            let q = Monomial::new(letters.clone()).unwrap();
            let odd = q.len() % 2 == 1 || q.symbol_counts().values().any(|c| c % 2 == 1);
            if odd {
                checked += 1;
                if solver.alpha(&q).unwrap().value != 0.0 {
                    bad.push(q.to_string());
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{checked} monomials of length ≤ 5 with odd length or odd multiplicity give α = 0 exactly; failures {bad:?}"),
    )
}

fn two_kind_monomials(max_len: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..LinkKind::ALL.len() {
        for b in (a + 1)..LinkKind::ALL.len() {
            for len in 2..=max_len {
                out.extend(
                    monomials(&[LinkKind::ALL[a], LinkKind::ALL[b]], len)
                        .into_iter()
                        .filter(|q| kinds_used(q).len() == 2),
                );
            }
        }
    }
    out
}

fn universal_bound() -> Outcome {
    let solver = mc(SWEEP_MC_SAMPLES);
    let qs = two_kind_monomials(6);
    let worst = qs
        .par_iter()
        .map(|q| (solver.alpha(q).unwrap().value - alpha_bound(q), q.to_string()))
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .unwrap();
    outcome(
        worst.0 <= BOUND_SLACK,
        format!(
            "{} two-kind monomials of length ≤ 6; largest α - bound is {:.4} at {} (allowed {BOUND_SLACK})",
            qs.len(),
            worst.0,
            worst.1
        ),
    )
}

fn freeness() -> Outcome {
    let solver = mc(SWEEP_MC_SAMPLES);
    let mut qs = Vec::new();
    for other in [
        LinkKind::Toeplitz,
        LinkKind::Hankel,
        LinkKind::ReverseCirculant,
        LinkKind::SymmetricCirculant,
    ] {
        for len in 2..=6 {
            qs.extend(
                monomials(&[LinkKind::Wigner, other], len)
                    .into_iter()
                    .filter(|q| kinds_used(q).len() == 2),
            );
        }
    }
    let worst = qs
        .par_iter()
        .map(|q| {
            let alt = AlternatingMonomial::from_monomial(q).unwrap();
            let pred = free_moment_prediction(&alt, |m| Ok(solver.alpha(m)?.value)).unwrap();
            ((solver.alpha(q).unwrap().value - pred).abs(), q.to_string())
        })
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .unwrap();
    let witness = role_report(
        &Monomial::parse("THTH").unwrap(),
        LinkKind::Toeplitz,
        0,
        InputDistribution::Gaussian,
        0,
        SEED,
        &solver,
    )
    .unwrap();
    let witness_ok = (witness.deviation - WITNESS_GAP).abs() <= WITNESS_TOL;
    outcome(
        worst.0 <= FREENESS_TOL && witness_ok,
        format!(
            "{} W-mixed monomials, worst |α - free prediction| {:.4} at {} (allowed {FREENESS_TOL}); THTH gap {:.4} (want {WITNESS_GAP:.4} ± {WITNESS_TOL})",
            qs.len(),
            worst.0,
            worst.1,
            witness.deviation
        ),
    )
}

fn semicircle() -> Outcome {
    let solver = exact();
    let mut parts = Vec::new();
    let mut ok = true;
    for k in 1..=3 {
        let q = Monomial::from_kinds(&vec![LinkKind::Wigner; 2 * k]).unwrap();
        let a = solver.alpha(&q).unwrap().value;
        ok &= (a - semicircle_moment(2 * k)).abs() <= SEMICIRCLE_TOL;
        parts.push(format!("α(W^{}) = {a:.4}", 2 * k));
    }
    let cfg = LsdConfig {
        n: ESD_N,
        reps: ESD_REPS,
        seed: SEED,
        kmax: 4,
        ..LsdConfig::default()
    };
    let r = lsd_report(&MatrixPolynomial::parse("W").unwrap(), &cfg).unwrap();
    let (m2, m4) = (r.moments[1], r.moments[3]);
    ok &= (m2 - 1.0).abs() <= M2_TOL && (m4 - 2.0).abs() <= M4_TOL;
    outcome(
        ok,
        format!(
            "{}; ESD n={ESD_N} reps={ESD_REPS}: m2 {m2:.4} (1 ± {M2_TOL}), m4 {m4:.4} (2 ± {M4_TOL})",
            parts.join(", ")
        ),
    )
}

fn sums() -> Outcome {
    use LinkKind::*;
    let solver = exact();
    let cfg = LsdConfig {
        n: ESD_N,
        reps: ESD_REPS,
        seed: SEED,
        kmax: 6,
        ..LsdConfig::default()
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for (a, b) in [
        (Toeplitz, Hankel),
        (ReverseCirculant, SymmetricCirculant),
        (Toeplitz, SymmetricCirculant),
    ] {
        let r = sum_lsd_report(a, b, &cfg, None).unwrap();
        let limit = sum_limit_moments(a, b, 3, &solver).unwrap();
        let m = &r.moments;
        let this = m[0].abs() <= ODD_TOL
            && m[2].abs() <= ODD_TOL
            && (m[1] - 2.0).abs() <= BETA2_TOL
            && r.even_growth_nondecreasing
            && limit[0] == 0.0
            && limit[2] == 0.0;
        ok &= this;
        parts.push(format!(
            "{}+{} {}: β1 {:.3} β2 {:.3} β3 {:.3} growth {} limit β1,β2,β3 {:.3},{:.3},{:.3}",
            a.code(),
            b.code(),
            if this { "ok" } else { "off" },
            m[0],
            m[1],
            m[2],
            r.even_growth_nondecreasing,
            limit[0],
            limit[1],
            limit[2]
        ));
    }
    outcome(
        ok,
        format!(
            "n={ESD_N} reps={ESD_REPS} |β odd| ≤ {ODD_TOL}, β2 = 2 ± {BETA2_TOL}; {}",
            parts.join("; ")
        ),
    )
}

fn concentration() -> Outcome {
    let (rows, _) = concentration_check(
        &Monomial::parse("THTH").unwrap(),
        &[128, 256],
        InputDistribution::Gaussian,
        CONCENTRATION_REPS,
        SEED,
    )
    .unwrap();
    let factor = rows[1].decrease_factor.unwrap();
    outcome(
        factor >= CONCENTRATION_FACTOR,
        format!(
            "THTH fourth central moment {:.3e} at n=128, {:.3e} at n=256, factor {factor:.2} (need ≥ {CONCENTRATION_FACTOR})",
            rows[0].fourth_central_moment, rows[1].fourth_central_moment
        ),
    )
}

fn factorization() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for powers in [[2, 2], [2, 4]] {
        let rows = trace_factorization_check(
            LinkKind::Toeplitz,
            &powers,
            &[100, 400],
            InputDistribution::Gaussian,
            FACTORIZATION_REPS,
            SEED,
        )
        .unwrap();
        let ratio = rows[1].ratio_to_previous.unwrap();
        ok &= ratio <= FACTORIZATION_RATIO;
        parts.push(format!("{powers:?} gap ratio {ratio:.3}"));
    }
    outcome(
        ok,
        format!(
            "Toeplitz n=100 to 400: {} (need ≤ {FACTORIZATION_RATIO})",
            parts.join(", ")
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let words: Vec<ColoredWord> = canonical_pairings(4)
        .iter()
        .flat_map(|p| colorings(p, &LinkKind::ALL))
        .collect();
    let bad: Vec<String> = words
        .par_iter()
        .flat_map_iter(|w| {
            (1..=ORACLE_MAX_N).filter_map(move |n| {
                let fast = count_circuits_exact(w, n, DEFAULT_BUDGET).unwrap();
                let brute = brute_force_count(w, n);
                (fast != brute).then(|| format!("{w} n={n}: {fast} vs {brute}"))
            })
        })
        .collect();
    outcome(
        bad.is_empty(),
        format!(
            "{} words of length 4 at n = 1..={ORACLE_MAX_N} agree exactly with brute force; mismatches {bad:?}",
            words.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("golden tables", golden_tables),
        ("catalan words", catalan_words),
        ("vanishing alpha", vanishing_alpha),
        ("universal bound", universal_bound),
        ("wigner freeness", freeness),
        ("semicircle", semicircle),
        ("sum spectra", sums),
        ("concentration", concentration),
        ("trace factorization", factorization),
        ("oracle equivalence", oracle_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name} ({:.1}s): {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
