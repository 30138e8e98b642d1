use std::fs::File;
use std::io::{self, Write};

use patterned::freeness::{freeness_report, role_report};
use patterned::limits::{alpha_bound, LimitMethod, LimitParams, LimitSolver};
use patterned::sampler::{empirical_trace_moment, InputDistribution};
use patterned::spectra::{lsd_report, sum_lsd_report, Histogram, LsdConfig, LsdReport, MatrixPolynomial};
use patterned::tables::reference_rows;
use patterned::{enumerate_pair_matched_words, ColoredWord, LinkKind, Monomial};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{
    AlphaArgs, Cli, Command, FileConfig, Format, FreenessArgs, LimitArgs, LsdArgs, MomentsArgs, PcwArgs, SimArgs,
    TablesArgs, WordsArgs,
};
use crate::output::{csv_float, envelope, to_json_string, write_json, Provenance};
use crate::{Failure, EXIT_NUMERICAL, EXIT_OK};

/// Largest tolerated gap between a computed and a reference table value.
pub const TABLE_TOL: f64 = 0.02;

const DEFAULT_MOMENT_N: usize = 200;
const DEFAULT_MOMENT_REPS: usize = 20;

/// Global settings after merging flags over the config file.
pub struct Context {
    seed: u64,
    budget: Option<u64>,
    format: Option<Format>,
    config: FileConfig,
}

impl Context {
    pub fn new(cli: &Cli, config: FileConfig) -> Result<Context, Failure> {
        // surface bad enum strings in the config before any work starts
        config.method()?;
        config.dist()?;
        config.solver()?;
        Ok(Context {
            seed: cli.seed.or(config.seed).unwrap_or(0),
            budget: cli.budget.or(config.budget),
            format: cli.format.or(config.format),
            config,
        })
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn limit_solver(&self, args: &LimitArgs) -> Result<LimitSolver, Failure> {
        let defaults = LimitParams::default();
        let method = match args.method {
            Some(m) => m,
            None => self.config.method()?.unwrap_or(LimitMethod::MonteCarlo),
        };
        let params = LimitParams {
            samples: args.samples.or(self.config.samples).unwrap_or(defaults.samples),
            seed: self.seed,
            budget: self.budget.unwrap_or(defaults.budget),
            sizes: args.sizes.or(self.config.sizes),
        };
        Ok(LimitSolver::new(method, params))
    }

    fn sim(&self, args: &SimArgs, n: usize, reps: usize) -> Result<(usize, usize, InputDistribution), Failure> {
        let dist = match args.dist {
            Some(d) => d,
            None => self.config.dist()?.unwrap_or_default(),
        };
        Ok((
            args.n.or(self.config.n).unwrap_or(n),
            args.reps.or(self.config.reps).unwrap_or(reps),
            dist,
        ))
    }
}

pub fn dispatch(ctx: &Context, command: &Command) -> Result<u8, Failure> {
    match command {
        Command::Words(a) => words(ctx, a),
        Command::Tables(a) => tables(ctx, a),
        Command::Pcw(a) => pcw(ctx, a),
        Command::Alpha(a) => alpha(ctx, a),
        Command::Moments(a) => moments(ctx, a),
        Command::Lsd(a) => lsd(ctx, a),
        Command::Freeness(a) => freeness(ctx, a),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(x) if x.is_f64() => csv_float(x.as_f64().unwrap()),
        Value::String(s) => s.clone(),
        other => to_json_string(other).unwrap_or_default(),
    }
}

/// One object as a header line and a value line.
fn write_object_csv<W: Write>(out: W, v: &Value) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    let map = v.as_object().expect("documents are objects");
    w.write_record(map.keys())?;
    w.write_record(map.values().map(cell))?;
    w.flush()?;
    Ok(())
}

fn emit<T: Serialize>(ctx: &Context, prov: &Provenance<'_>, body: &T) -> Result<(), Failure> {
    let doc = envelope(prov, body)?;
    let stdout = io::stdout();
    match ctx.format(Format::Json) {
        Format::Json => write_json(&mut stdout.lock(), &doc)?,
        Format::Csv => write_object_csv(stdout.lock(), &doc)?,
    }
    Ok(())
}

fn words(ctx: &Context, a: &WordsArgs) -> Result<u8, Failure> {
    let q = Monomial::parse(&a.q)?;
    let mut records: Vec<_> = enumerate_pair_matched_words(&q, !a.ignore_indices)
        .iter()
        .map(ColoredWord::record)
        .collect();
    // Catalan words first, otherwise in enumeration order
    records.sort_by_key(|r| !r.catalan);
    let prov = Provenance {
        command: "words",
        seed: ctx.seed,
        n: None,
        method: "enumeration",
    };
    match ctx.format(Format::Json) {
        Format::Json => emit(
            ctx,
            &prov,
            &json!({"q": q.to_string(), "count": records.len(), "words": records}),
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record(["word", "colors", "indices", "catalan"])?;
            for r in &records {
                let indices: Vec<String> = r.indices.iter().map(u32::to_string).collect();
                w.write_record([r.word.as_str(), &r.colors, &indices.join(" "), &r.catalan.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct TableRow {
    monomial: &'static str,
    word: &'static str,
    p_paper: f64,
    p_computed: f64,
    abs_err: f64,
    stderr: f64,
}

fn tables(ctx: &Context, a: &TablesArgs) -> Result<u8, Failure> {
    let solver = ctx.limit_solver(&a.limit)?;
    let rows: Vec<TableRow> = reference_rows()
        .par_iter()
        .map(|r| {
            let est = solver.p_limit(&r.colored_word())?;
            Ok(TableRow {
                monomial: r.monomial,
                word: r.word,
                p_paper: r.value(),
                p_computed: est.value,
                abs_err: (est.value - r.value()).abs(),
                stderr: est.stderr,
            })
        })
        .collect::<Result<_, Failure>>()?;
    let worst = rows.iter().map(|r| r.abs_err).fold(0.0, f64::max);
    let failing: Vec<String> = rows
        .iter()
        .filter(|r| r.abs_err > TABLE_TOL)
        .map(|r| format!("{} {}", r.monomial, r.word))
        .collect();
    let prov = Provenance {
        command: "tables",
        seed: ctx.seed,
        n: None,
        method: solver.method().name(),
    };
    let summary = json!({
        "rows": rows.len(),
        "tolerance": TABLE_TOL,
        "max_abs_err": worst,
        "failing": failing,
    });
    match ctx.format(Format::Csv) {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record(["monomial", "word", "p_paper", "p_computed", "abs_err"])?;
            for r in &rows {
                w.write_record([
                    r.monomial.to_string(),
                    r.word.to_string(),
                    csv_float(r.p_paper),
                    csv_float(r.p_computed),
                    csv_float(r.abs_err),
                ])?;
            }
            w.flush()?;
            write_json(&mut io::stderr().lock(), &envelope(&prov, &summary)?)?;
        }
        Format::Json => {
            let mut doc = envelope(&prov, &summary)?;
            doc["table"] = serde_json::to_value(&rows)?;
            write_json(&mut io::stdout().lock(), &doc)?;
        }
    }
    for f in &failing {
        eprintln!("mismatch beyond {TABLE_TOL}: {f}");
    }
    Ok(if failing.is_empty() { EXIT_OK } else { EXIT_NUMERICAL })
}

fn pcw(ctx: &Context, a: &PcwArgs) -> Result<u8, Failure> {
    let solver = ctx.limit_solver(&a.limit)?;
    let w = ColoredWord::parse(&a.word, &a.q)?;
    let est = solver.p_limit(&w)?;
    let prov = Provenance {
        command: "pcw",
        seed: ctx.seed,
        n: est.n_used,
        method: solver.method().name(),
    };
    let body = json!({
        "q": w.monomial().to_string(),
        "word": w.text(),
        "value": est.value,
        "stderr": est.stderr,
        "volume_method": est.method.name(),
        "samples": est.samples,
        "catalan": w.is_catalan(),
    });
    emit(ctx, &prov, &body)?;
    Ok(EXIT_OK)
}

fn alpha(ctx: &Context, a: &AlphaArgs) -> Result<u8, Failure> {
    let solver = ctx.limit_solver(&a.limit)?;
    let q = Monomial::parse(&a.q)?;
    let est = solver.alpha(&q)?;
    let prov = Provenance {
        command: "alpha",
        seed: ctx.seed,
        n: None,
        method: solver.method().name(),
    };
    let body = json!({
        "q": q.to_string(),
        "value": est.value,
        "stderr": est.stderr,
        "words": est.words,
        "bound": alpha_bound(&q),
    });
    emit(ctx, &prov, &body)?;
    Ok(EXIT_OK)
}

fn moments(ctx: &Context, a: &MomentsArgs) -> Result<u8, Failure> {
    let q = Monomial::parse(&a.q)?;
    let (n, reps, dist) = ctx.sim(&a.sim, DEFAULT_MOMENT_N, DEFAULT_MOMENT_REPS)?;
    let est = empirical_trace_moment(&q, n, dist, reps, ctx.seed)?;
    let mut body = json!({
        "q": q.to_string(),
        "mean": est.mean,
        "sd": est.sd,
        "stderr": est.stderr(),
        "reps": reps,
        "dist": dist.name(),
    });
    if a.limit {
        let solver = ctx.limit_solver(&a.limit_args)?;
        let lim = solver.alpha(&q)?;
        body["limit"] = json!(lim.value);
        body["limit_stderr"] = json!(lim.stderr);
        body["limit_method"] = json!(solver.method().name());
    }
    let prov = Provenance {
        command: "moments",
        seed: ctx.seed,
        n: Some(n),
        method: "simulation",
    };
    emit(ctx, &prov, &body)?;
    Ok(EXIT_OK)
}

fn write_histogram_csv<W: Write>(out: W, h: &Histogram) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["bin_lo", "bin_hi", "count", "density"])?;
    for i in 0..h.bins() {
        w.write_record([
            csv_float(h.edges[i]),
            csv_float(h.edges[i + 1]),
            h.counts[i].to_string(),
            csv_float(h.density[i]),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn lsd(ctx: &Context, a: &LsdArgs) -> Result<u8, Failure> {
    let defaults = LsdConfig::default();
    let (n, reps, dist) = ctx.sim(&a.sim, defaults.n, defaults.reps)?;
    let solver_kind = match a.solver {
        Some(s) => s,
        None => ctx.config.solver()?.unwrap_or_default(),
    };
    let cfg = LsdConfig {
        n,
        reps,
        dist,
        seed: ctx.seed,
        kmax: a.kmax.or(ctx.config.kmax).unwrap_or(defaults.kmax),
        bins: a.bins.or(ctx.config.bins).unwrap_or(defaults.bins),
        range: a.range,
        solver: solver_kind,
        cap: a.cap.or(ctx.config.cap).unwrap_or(defaults.cap),
        single_replicate: a.single_replicate,
    };
    let report: LsdReport = match (a.a, a.b, &a.poly) {
        (Some(x), Some(y), _) => {
            let limit = ctx.limit_solver(&a.limit)?;
            let with_limit = a.limit_order.map(|k| (&limit, k));
            sum_lsd_report(x, y, &cfg, with_limit)?
        }
        (_, _, Some(p)) => {
            if a.limit_order.is_some() {
                return Err(Failure::Usage("--limit-order needs --a and --b".into()));
            }
            lsd_report(&MatrixPolynomial::parse(p)?, &cfg)?
        }
        _ => return Err(Failure::Usage("give --a and --b, or --poly".into())),
    };
    let prov = Provenance {
        command: "lsd",
        seed: ctx.seed,
        n: Some(n),
        method: "simulation",
    };
    let doc = envelope(&prov, &report)?;
    match &a.out {
        Some(prefix) => {
            let csv_path = prefix.with_extension("csv");
            let json_path = prefix.with_extension("json");
            write_histogram_csv(File::create(&csv_path)?, &report.histogram)?;
            write_json(&mut File::create(&json_path)?, &doc)?;
        }
        None => {
            write_histogram_csv(io::stdout().lock(), &report.histogram)?;
            write_json(&mut io::stderr().lock(), &doc)?;
        }
    }
    Ok(EXIT_OK)
}

fn freeness(ctx: &Context, a: &FreenessArgs) -> Result<u8, Failure> {
    let q = Monomial::parse(&a.q)?;
    let (n, reps, dist) = ctx.sim(&a.sim, DEFAULT_MOMENT_N, DEFAULT_MOMENT_REPS)?;
    let solver = ctx.limit_solver(&a.limit)?;
    let role = a.role.unwrap_or(LinkKind::Wigner);
    let report = if role == LinkKind::Wigner {
        freeness_report(&q, n, dist, reps, ctx.seed, &solver)?
    } else {
        role_report(&q, role, n, dist, reps, ctx.seed, &solver)?
    };
    let prov = Provenance {
        command: "freeness",
        seed: ctx.seed,
        n: Some(n),
        method: solver.method().name(),
    };
    let mut body = serde_json::to_value(&report)?;
    body["role"] = json!(role);
    emit(ctx, &prov, &body)?;
    // only the Wigner role carries a freeness claim
    Ok(if role == LinkKind::Wigner && !report.free_within_tol {
        EXIT_NUMERICAL
    } else {
        EXIT_OK
    })
}
