mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hexwr::enumeration::{count_n, list_representations};
use hexwr::lattice::gamma_theta;
use hexwr::optimizer::{self, elimination_case, max_min, oracle_row, rank_by_snr_with_tol, ranking_is_separated};
use hexwr::triples::{generate_tree, pairs_up_to};
use hexwr::{ClassParams, Error};
use serde_json::{json, Value};

use report::{OutputFormat, Report};

/// Indices of the published table of largest minima.
const TABLE1: [u64; 11] = [8, 15, 21, 24, 32, 35, 40, 45, 55, 60, 65];

#[derive(Debug, Parser)]
#[command(name = "hexwr", version, about = "Well-rounded sublattices of the hexagonal lattice")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: OutputFormat,

    /// Largest index scanned by `oracle` and `index-set`.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jmax: Option<u64>,

    /// Largest hypotenuse for `tree` and `classes`.
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(1..))]
    cmax: Option<i64>,

    /// Relative tolerance of the Epstein zeta sums behind `snr`.
    #[arg(long, global = true, default_value_t = optimizer::SNR_REL_TOL)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of similarity classes with an index-J member, and their representations.
    Count {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        j: u64,
    },
    /// Largest minimum among index-J well-rounded sublattices.
    Maxmin {
        #[arg(value_parser = clap::value_parser!(u64).range(1..), required_unless_present = "table1")]
        j: Option<u64>,
        /// Replay the indices of the published table.
        #[arg(long, conflicts_with = "j")]
        table1: bool,
    },
    /// Index-J well-rounded sublattices ranked by signal-to-noise ratio.
    Snr {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        j: u64,
    },
    /// Orbit of <0,1,1> under the pair generators, up to --cmax (default 19).
    Tree,
    /// Compare parameterized counts and minima with brute force for J <= JMAX.
    Oracle {
        #[arg(value_name = "JMAX", value_parser = clap::value_parser!(u64).range(1..))]
        limit: Option<u64>,
    },
    /// Similarity classes whose associated pair has c <= --cmax (default 100).
    Classes,
    /// Indices J <= --jmax (default 100) with and without well-rounded sublattices.
    IndexSet,
}

enum Failure {
    Usage(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::Conjecture(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violated: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    configure_threads()?;
    if cli.format == OutputFormat::Dot && !matches!(cli.command, Command::Tree) {
        return Err(Failure::Usage("--format dot is only available for `tree`".into()));
    }
    if !(cli.tol > 0.0) {
        return Err(Failure::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let (report, verdict) = match &cli.command {
        Command::Count { j } => (count(*j)?, None),
        Command::Maxmin { j, table1 } => {
            let js: Vec<u64> = if *table1 { TABLE1.to_vec() } else { j.iter().copied().collect() };
            (maxmin(&js)?, None)
        }
        Command::Snr { j } => snr(*j, cli.tol)?,
        Command::Tree => (tree(cli.cmax.unwrap_or(19))?, None),
        Command::Oracle { limit } => oracle(limit.or(cli.jmax).unwrap_or(300), cli.format)?,
        Command::Classes => (classes(cli.cmax.unwrap_or(100))?, None),
        Command::IndexSet => (index_set(cli.jmax.unwrap_or(100))?, None),
    };
    let out = report.render(cli.format).map_err(Failure::Usage)?;
    match verdict {
        Some(msg) => {
            print!("{out}");
            Err(Failure::Invariant(msg))
        }
        None => Ok(out),
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("HEXWR_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("HEXWR_THREADS must be a positive integer, got {raw:?}")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot size the thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn cos_string(p: ClassParams) -> String {
    let (num, den) = p.cos();
    format!("{num}/{den}")
}

fn no_wr_message(j: u64) -> String {
    match elimination_case(j) {
        Some(case) => format!("no WR sublattice of index {j} (eliminated: {case})"),
        None => format!("no WR sublattice of index {j}"),
    }
}

fn count(j: u64) -> Result<Report, Failure> {
    let reps = list_representations(j)?;
    let rows = reps
        .iter()
        .map(|r| {
            vec![
                r.u.to_string(),
                r.j.to_string(),
                r.d.to_string(),
                r.params.m().to_string(),
                r.params.n().to_string(),
                r.k().to_string(),
                r.minimum().to_string(),
                optimizer::lattice_name(r),
            ]
        })
        .collect();
    Ok(Report {
        lines: vec![format!("N({j}) = {}", reps.len())],
        header: vec!["u", "j", "d", "m", "n", "k", "minimum", "lattice"],
        rows,
        csv_header: true,
        json: json!({ "J": j, "reps": reps }),
        dot: None,
    })
}

fn maxmin(js: &[u64]) -> Result<Report, Failure> {
    let mut report = Report { header: vec!["J", "maximal minimum", "lattice"], ..Report::default() };
    let mut results = Vec::new();
    for &j in js {
        let r = max_min(j)?;
        match r.best_minimum {
            Some(best) => {
                let names: Vec<&str> = r.witnesses.iter().map(|w| w.name.as_str()).collect();
                report.rows.push(vec![j.to_string(), best.to_string(), names.join(" / ")]);
            }
            None => report.lines.push(no_wr_message(j)),
        }
        results.push(r);
    }
    report.json = if results.len() == 1 { json!(results[0]) } else { json!(results) };
    Ok(report)
}

fn snr(j: u64, tol: f64) -> Result<(Report, Option<String>), Failure> {
    let ranked = rank_by_snr_with_tol(j, tol)?;
    let mut report = Report {
        header: vec!["rank", "m", "n", "minimum", "snr_db", "error_db", "lattice"],
        csv_header: true,
        ..Report::default()
    };
    if ranked.is_empty() {
        report.lines.push(no_wr_message(j));
    }
    for (i, r) in ranked.iter().enumerate() {
        report.rows.push(vec![
            (i + 1).to_string(),
            r.rep.params.m().to_string(),
            r.rep.params.n().to_string(),
            r.minimum.to_string(),
            format!("{:.12}", r.snr.db),
            format!("{:.1e}", r.snr.abs_error_bound),
            r.name.clone(),
        ]);
    }
    report.json = json!({ "J": j, "ranking": ranked });
    let verdict = (!ranking_is_separated(&ranked))
        .then(|| format!("index {j}: SNR order differs from minimum order or gaps are within error bounds"));
    Ok((report, verdict))
}

fn tree(c_max: i64) -> Result<Report, Failure> {
    let t = generate_tree(c_max)?;
    let rows = t
        .edges
        .iter()
        .map(|e| vec![t.nodes[e.from].label(), e.generator.to_string(), t.nodes[e.to].label()])
        .collect();
    let mut json = serde_json::to_value(t.export()).map_err(|e| Failure::Invariant(e.to_string()))?;
    if let Value::Object(map) = &mut json {
        map.insert("node_count".into(), json!(t.node_count()));
        map.insert("edge_count".into(), json!(t.edge_count()));
    }
    if !t.revisits.is_empty() {
        return Err(Failure::Invariant(format!("{} pairs reached twice below c = {c_max}", t.revisits.len())));
    }
    Ok(Report {
        lines: vec![format!("nodes: {}, edges: {} (c <= {c_max})", t.node_count(), t.edge_count())],
        header: vec!["from", "generator", "to"],
        rows,
        csv_header: true,
        json,
        dot: Some(t.to_dot()),
    })
}

fn oracle(jmax: u64, format: OutputFormat) -> Result<(Report, Option<String>), Failure> {
    let rows = (1..=jmax).map(oracle_row).collect::<Result<Vec<_>, _>>()?;
    let bad: Vec<_> = rows.iter().filter(|r| !r.agrees()).collect();
    let opt = |v: Option<u64>| v.map_or("-".to_string(), |m| m.to_string());
    let mut report = Report {
        header: vec!["J", "N", "brute_force_classes", "max_min", "brute_force_max_min", "classes_match", "eliminated"],
        csv_header: true,
        ..Report::default()
    };
    for r in &bad {
        report.lines.push(format!("disagreement at J = {}: {r:?}", r.index));
    }
    let agree = rows.len() - bad.len();
    report.lines.push(if bad.is_empty() {
        format!("OK: {agree}/{jmax} indices agree")
    } else {
        format!("FAIL: {}/{jmax} indices disagree", bad.len())
    });
    report.rows = rows
        .iter()
        .map(|r| {
            vec![
                r.index.to_string(),
                r.count_n.to_string(),
                r.count_bruteforce.to_string(),
                opt(r.max_min),
                opt(r.max_min_bruteforce),
                r.classes_match.to_string(),
                r.eliminated.to_string(),
            ]
        })
        .collect();
    if format == OutputFormat::Table {
        report.rows.clear();
    }
    report.json = json!({ "jmax": jmax, "agree": agree, "rows": rows });
    let verdict = (!bad.is_empty()).then(|| format!("{} of {jmax} indices disagree with brute force", bad.len()));
    Ok((report, verdict))
}

fn classes(c_max: i64) -> Result<Report, Failure> {
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for pair in pairs_up_to(c_max) {
        let (m, n) = hexwr::triples::params_from_triple(&pair.upper())?;
        let p = ClassParams::new(m, n)?;
        let g = gamma_theta(p);
        rows.push(vec![
            m.to_string(),
            n.to_string(),
            pair.to_string(),
            cos_string(p),
            g.index().to_string(),
            p.base_minimum().to_string(),
            g.to_string(),
        ]);
        items.push(json!({
            "m": m,
            "n": n,
            "pair": pair.label(),
            "cos": cos_string(p),
            "index": g.index(),
            "minimum": p.base_minimum(),
            "matrix": g,
        }));
    }
    Ok(Report {
        lines: vec![format!("{} classes with c <= {c_max}", rows.len())],
        header: vec!["m", "n", "pair", "cos", "index", "minimum", "matrix"],
        rows,
        csv_header: true,
        json: json!({ "cmax": c_max, "classes": items }),
        dot: None,
    })
}

fn index_set(jmax: u64) -> Result<Report, Failure> {
    let mut rows = Vec::new();
    let mut items = Vec::new();
    let mut members = 0;
    for j in 1..=jmax {
        let n = count_n(j)?;
        members += usize::from(n > 0);
        let elim = elimination_case(j);
        rows.push(vec![
            j.to_string(),
            (n > 0).to_string(),
            n.to_string(),
            elim.map_or("-".to_string(), |c| c.to_string()),
        ]);
        items.push(json!({ "J": j, "member": n > 0, "N": n, "eliminated": elim }));
    }
    Ok(Report {
        lines: vec![format!("{members} of {jmax} indices admit WR sublattices")],
        header: vec!["J", "member", "N", "eliminated"],
        rows,
        csv_header: true,
        json: json!({ "jmax": jmax, "indices": items }),
        dot: None,
    })
}
