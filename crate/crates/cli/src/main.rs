//! `spherorb`: batch reports for the spherical nilpotent orbit toolkit.
//!
//! Every report carries a header object with the toolkit version, the
//! command and its parameters, followed by the data rows in a canonical
//! order. Exit status is 0 when every check passes, 1 when a verification
//! fails and 2 on invalid input.

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use spherorb_core::cg::{degenerate_products, tensor_semigroup_upto, verify_gamma_product};
use spherorb_core::hermitian::{center_order, enumerate_pairs, parse_pair_key, SymmetricPairSpec};
use spherorb_core::orbits::{
    build_triple, check_orbit, list_orbits, parse_orbit_id, verify_triple, OrbitCheck, OrbitRecord,
};
use spherorb_core::rootlat::CartanType;
use spherorb_core::semigroup::{
    closed_form_generators, compare_with_closed_form, gamma_sigma_semigroup, normality_check,
    SemigroupTriple,
};
use spherorb_core::spherical::{
    hermitian_systems, minimal_block_sizes, system_for_case, CaseParams, Regime,
};
use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest rank of `G` covered by `report-all`.
const REPORT_MAX_RANK: usize = 8;

#[derive(Parser, Debug)]
#[command(
    name = "spherorb",
    version,
    about = "Reports on spherical nilpotent orbits in Hermitian symmetric pairs"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Output file (a directory for `report-all`); standard output otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest degree `n1 + n2` in semigroup enumerations.
    #[arg(long, default_value_t = 4, global = true)]
    max_degree: u32,
    /// Largest value of the orbit parameters `r`, `s`, and of the block
    /// sizes in `normality`.
    #[arg(long, visible_alias = "max", default_value_t = 4, global = true)]
    max_params: usize,
    /// Largest entry of `T` in `cg-verify`.
    #[arg(long, default_value_t = 3, global = true)]
    max_entry: u32,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Tsv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Tsv => "tsv",
        }
    }
}

#[derive(Args, Debug, Clone, Copy, Default)]
struct CaseArgs {
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hermitian symmetric pairs of a given type and rank.
    Pairs { g_type: String, rank: usize },
    /// Spherical nilpotent orbits of a pair with their structural checks.
    Orbits { pair_key: String },
    /// The normal triple of one orbit, e.g. `A:3:p=2/1.6/r=0,s=0`.
    Triple { orbit_id: String },
    /// Hilbert basis of the weight semigroup against its closed form.
    Semigroup {
        case_id: String,
        #[command(flatten)]
        params: CaseArgs,
    },
    /// Minuscule test of the designated colors.
    Normality {
        /// A single case; all encoded systems otherwise.
        case_id: Option<String>,
        #[command(flatten)]
        params: CaseArgs,
    },
    /// Surjectivity of the products `Γ(m)·Γ(n) → Γ(m + n)`.
    CgVerify {
        /// Overrides `--max-entry`.
        max_entry: Option<u32>,
    },
    /// Every report, one file per suite, written into the `--out` directory.
    ReportAll,
}

/// A finished report: header, JSON data and the TSV projection.
struct Report {
    command: String,
    params: BTreeMap<String, Value>,
    ok: bool,
    data: Value,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Report {
    fn header(&self) -> Value {
        json!({
            "tool": "spherorb",
            "version": VERSION,
            "command": self.command,
            "params": self.params,
            "ok": self.ok,
        })
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let doc = json!({ "header": self.header(), "data": self.data });
                let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
                s.push('\n');
                s
            }
            Format::Tsv => {
                let mut s = format!("# {}\n", self.header());
                s.push_str(&self.columns.join("\t"));
                s.push('\n');
                for row in &self.rows {
                    s.push_str(&row.join("\t"));
                    s.push('\n');
                }
                s
            }
        }
    }
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn yes(b: bool) -> String {
    b.to_string()
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn render_triple(t: &SemigroupTriple) -> String {
    format!("({},{};{})", t.n1, t.n2, join(&t.e, ","))
}

#[derive(Serialize)]
struct PairRow {
    key: String,
    family: String,
    g_type: String,
    p_index: usize,
    m: u64,
    center_order: u64,
    k_levi_types: Vec<String>,
    p1_highest_weight: Vec<i64>,
    p2_highest_weight: Vec<i64>,
    chi_charges: (i64, i64),
}

fn pair_row(spec: &SymmetricPairSpec) -> PairRow {
    PairRow {
        key: spec.key(),
        family: spec.family.to_string(),
        g_type: format!("{}{}", spec.g_type.0, spec.g_type.1),
        p_index: spec.p_index,
        m: spec.m,
        center_order: center_order(spec),
        k_levi_types: spec
            .k_levi_types
            .iter()
            .map(|(t, n)| format!("{t}{n}"))
            .collect(),
        p1_highest_weight: spec.p1_highest_weight.coords.clone(),
        p2_highest_weight: spec.p2_highest_weight.coords.clone(),
        chi_charges: spec.chi_charges,
    }
}

fn pairs_report(specs: &[SymmetricPairSpec], params: BTreeMap<String, Value>) -> Report {
    let rows: Vec<PairRow> = specs.iter().map(pair_row).collect();
    Report {
        command: "pairs".into(),
        params,
        ok: true,
        columns: vec![
            "key",
            "family",
            "g_type",
            "p_index",
            "m",
            "k_levi",
            "p1_weight",
            "p2_weight",
        ],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.key.clone(),
                    r.family.clone(),
                    r.g_type.clone(),
                    r.p_index.to_string(),
                    r.m.to_string(),
                    r.k_levi_types.join("+"),
                    join(&r.p1_highest_weight, ","),
                    join(&r.p2_highest_weight, ","),
                ]
            })
            .collect(),
        data: serde_json::to_value(&rows).expect("serializable"),
    }
}

fn cmd_pairs(g_type: &str, rank: usize) -> anyhow::Result<Report> {
    let ty: CartanType = g_type.parse()?;
    let specs = enumerate_pairs(ty, rank)?;
    Ok(pairs_report(
        &specs,
        params(&[("g_type", json!(ty.to_string())), ("rank", json!(rank))]),
    ))
}

/// Number of closed-form generators for the cases with a known semigroup.
fn generator_count(orbit: &OrbitRecord) -> Option<usize> {
    let (p, q) = orbit.pair.pq()?;
    let cp = CaseParams::new(
        p,
        q,
        orbit.params.r.unwrap_or(0),
        orbit.params.s.unwrap_or(0),
    );
    system_for_case(&orbit.case_id, &cp).ok()?;
    closed_form_generators(&orbit.case_id, &cp)
        .ok()
        .map(|g| g.len())
}

fn orbit_rows(orbits: &[OrbitRecord]) -> anyhow::Result<(Vec<OrbitCheck>, Vec<Vec<String>>)> {
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for o in orbits {
        let c = check_orbit(o).with_context(|| format!("orbit {}", o.id()))?;
        rows.push(vec![
            c.id.clone(),
            c.case_id.clone(),
            c.signed_partition.clone(),
            c.p_height.to_string(),
            "-".to_string(),
            generator_count(o).map_or("-".to_string(), |n| n.to_string()),
            c.dim_orbit.to_string(),
            c.dim_k_e.to_string(),
            yes(c.triple.sl2_ok),
            yes(c.triple.all_ok()),
            yes(c.spherical),
            yes(c.jordan_ok),
            yes(c.grading_ok),
            yes(c.bicone.both_components_nonzero),
        ]);
        checks.push(c);
    }
    Ok((checks, rows))
}

const ORBIT_COLUMNS: [&str; 14] = [
    "id",
    "case",
    "signed_partition",
    "ht_p",
    "codim",
    "generators",
    "dim_orbit",
    "dim_k_e",
    "sl2_ok",
    "triple_ok",
    "spherical",
    "jordan_ok",
    "grading_ok",
    "bicone",
];

fn orbits_report(
    orbits: &[OrbitRecord],
    params: BTreeMap<String, Value>,
) -> anyhow::Result<Report> {
    let (checks, rows) = orbit_rows(orbits)?;
    Ok(Report {
        command: "orbits".into(),
        params,
        ok: checks.iter().all(OrbitCheck::all_ok),
        data: serde_json::to_value(&checks)?,
        columns: ORBIT_COLUMNS.to_vec(),
        rows,
    })
}

fn cmd_orbits(key: &str, max_params: usize) -> anyhow::Result<Report> {
    let pair = parse_pair_key(key)?;
    let orbits = list_orbits(&pair, max_params);
    orbits_report(
        &orbits,
        params(&[
            ("pair", json!(pair.key())),
            ("max_params", json!(max_params)),
        ]),
    )
}

fn cmd_triple(id: &str) -> anyhow::Result<Report> {
    let orbit = parse_orbit_id(id)?;
    let t = build_triple(&orbit)?;
    let report = verify_triple(&t);
    let mut rows = Vec::new();
    for (name, m) in [("h", &t.h), ("e", &t.e), ("f", &t.f)] {
        for (i, row) in m.rows().iter().enumerate() {
            rows.push(vec![name.to_string(), i.to_string(), join(row, " ")]);
        }
    }
    Ok(Report {
        command: "triple".into(),
        params: params(&[("orbit", json!(orbit.id()))]),
        ok: report.all_ok(),
        data: json!({ "orbit": orbit.id(), "checks": report, "triple": t }),
        columns: vec!["matrix", "row", "entries"],
        rows,
    })
}

fn case_params(case_id: &str, a: &CaseArgs) -> anyhow::Result<CaseParams> {
    Ok(match case_id {
        "1.4" => CaseParams::new(a.p.unwrap_or(4), a.q.unwrap_or(2), 0, 0),
        "1.5" => CaseParams::new(a.p.unwrap_or(2), a.q.unwrap_or(4), 0, 0),
        "1.6" | "1.7" => {
            let (r, s) = (a.r.unwrap_or(1), a.s.unwrap_or(1));
            let (p0, q0) = minimal_block_sizes(case_id, r, s, Regime::Generic);
            CaseParams::new(a.p.unwrap_or(p0), a.q.unwrap_or(q0), r, s)
        }
        other => bail!(spherorb_core::Error::UnsupportedCase(other.to_string())),
    })
}

fn case_param_map(case_id: &str, cp: &CaseParams) -> BTreeMap<String, Value> {
    let mut m = params(&[("case", json!(case_id))]);
    match case_id {
        "1.4" => {
            m.insert("p".into(), json!(cp.p));
        }
        "1.5" => {
            m.insert("q".into(), json!(cp.q));
        }
        _ => {
            for (k, v) in [("p", cp.p), ("q", cp.q), ("r", cp.r), ("s", cp.s)] {
                m.insert(k.into(), json!(v));
            }
        }
    }
    m
}

fn semigroup_report(case_id: &str, cp: &CaseParams, max_degree: u32) -> anyhow::Result<Report> {
    let sys = system_for_case(case_id, cp)?;
    let cmp = compare_with_closed_form(case_id, cp, max_degree)?;
    let gamma_sigma = gamma_sigma_semigroup(&sys, 3)?;
    let mut p = case_param_map(case_id, cp);
    p.insert("max_degree".into(), json!(max_degree));
    let mut rows = Vec::new();
    for t in &cmp.enumerated {
        rows.push(vec![
            "enumerated".into(),
            render_triple(t),
            t.degree().to_string(),
        ]);
    }
    for t in &cmp.closed_form {
        rows.push(vec![
            "closed_form".into(),
            render_triple(t),
            t.degree().to_string(),
        ]);
    }
    Ok(Report {
        command: "semigroup".into(),
        params: p,
        ok: cmp.matches,
        data: json!({
            "system": sys.name,
            "colors": sys.colors,
            "enumerated": cmp.enumerated,
            "closed_form": cmp.closed_form,
            "match": cmp.matches,
            "gamma_sigma_generators": gamma_sigma,
        }),
        columns: vec!["set", "generator", "degree"],
        rows,
    })
}

fn cmd_semigroup(case_id: &str, a: &CaseArgs, max_degree: u32) -> anyhow::Result<Report> {
    let cp = case_params(case_id, a)?;
    semigroup_report(case_id, &cp, max_degree)
}

fn cmd_normality(case_id: Option<&str>, a: &CaseArgs, max_params: usize) -> anyhow::Result<Report> {
    let (systems, mut p) = match case_id {
        Some(c) => {
            let cp = case_params(c, a)?;
            (vec![system_for_case(c, &cp)?], case_param_map(c, &cp))
        }
        None => (
            hermitian_systems(max_params),
            params(&[("max_params", json!(max_params))]),
        ),
    };
    p.insert("systems".into(), json!(systems.len()));
    let mut data = Vec::new();
    let mut rows = Vec::new();
    for sys in &systems {
        let rep = normality_check(sys);
        rows.push(vec![
            sys.name.clone(),
            yes(rep.normal),
            rep.checks
                .iter()
                .map(|c| {
                    format!(
                        "D{}:{}",
                        c.index,
                        if c.minuscule {
                            "minuscule"
                        } else {
                            "dominated"
                        }
                    )
                })
                .collect::<Vec<_>>()
                .join(","),
        ]);
        data.push(json!({ "system": sys.name, "report": rep }));
    }
    Ok(Report {
        command: "normality".into(),
        params: p,
        ok: rows.iter().all(|r| r[1] == "true"),
        data: Value::Array(data),
        columns: vec!["system", "normal", "designated"],
        rows,
    })
}

fn cmd_cg_verify(max_entry: u32) -> anyhow::Result<Report> {
    let ts = tensor_semigroup_upto(max_entry);
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for m in &ts {
        for n in &ts {
            pairs += 1;
            let rep = verify_gamma_product(m, n)?;
            if !rep.ok {
                failures.push(rep);
            }
        }
    }
    let degenerate = degenerate_products(max_entry);
    let mut rows: Vec<Vec<String>> = failures
        .iter()
        .map(|f| {
            vec![
                "failure".into(),
                f.m.to_string(),
                f.n.to_string(),
                join(&f.missing, " "),
            ]
        })
        .collect();
    rows.extend(degenerate.iter().map(|w| {
        vec![
            "degenerate".into(),
            w.m.to_string(),
            w.n.to_string(),
            w.k.to_string(),
        ]
    }));
    Ok(Report {
        command: "cg-verify".into(),
        params: params(&[("max_entry", json!(max_entry))]),
        ok: failures.is_empty(),
        data: json!({
            "ok": failures.is_empty(),
            "pairs_checked": pairs,
            "failures": failures,
            "degenerate": degenerate,
        }),
        columns: vec!["kind", "m", "n", "k"],
        rows,
    })
}

fn write_report(report: &Report, format: Format, out: Option<&Path>) -> anyhow::Result<()> {
    let text = report.render(format);
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn report_all(common: &Common) -> anyhow::Result<Vec<(String, Report)>> {
    let mut specs = Vec::new();
    for ty in [CartanType::A, CartanType::B, CartanType::C, CartanType::D] {
        for rank in ty.min_rank()..=REPORT_MAX_RANK {
            if let Ok(found) = enumerate_pairs(ty, rank) {
                specs.extend(found);
            }
        }
    }
    let mut out = vec![(
        "pairs".to_string(),
        pairs_report(&specs, params(&[("max_rank", json!(REPORT_MAX_RANK))])),
    )];
    let orbits: Vec<OrbitRecord> = specs
        .iter()
        .flat_map(|s| list_orbits(s, common.max_params))
        .collect();
    out.push((
        "orbits".into(),
        orbits_report(
            &orbits,
            params(&[
                ("max_rank", json!(REPORT_MAX_RANK)),
                ("max_params", json!(common.max_params)),
            ]),
        )?,
    ));
    let mut runs = vec![
        ("1.4".to_string(), CaseParams::new(4, 2, 0, 0)),
        ("1.5".to_string(), CaseParams::new(2, 4, 0, 0)),
    ];
    for case in ["1.6", "1.7"] {
        for (r, s) in [(1, 0), (0, 1), (1, 1)] {
            for regime in [Regime::Generic, Regime::Boundary] {
                let (p, q) = minimal_block_sizes(case, r, s, regime);
                runs.push((case.to_string(), CaseParams::new(p, q, r, s)));
            }
        }
    }
    for (case, cp) in runs {
        let name = format!(
            "semigroup_{}_p{}_q{}_r{}_s{}",
            case.replace('.', "_"),
            cp.p,
            cp.q,
            cp.r,
            cp.s
        );
        out.push((name, semigroup_report(&case, &cp, common.max_degree)?));
    }
    out.push((
        "normality".into(),
        cmd_normality(None, &CaseArgs::default(), common.max_params)?,
    ));
    out.push(("cg_verify".into(), cmd_cg_verify(common.max_entry)?));
    Ok(out)
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let c = &cli.common;
    let report = match &cli.command {
        Command::Pairs { g_type, rank } => cmd_pairs(g_type, *rank)?,
        Command::Orbits { pair_key } => cmd_orbits(pair_key, c.max_params)?,
        Command::Triple { orbit_id } => cmd_triple(orbit_id)?,
        Command::Semigroup { case_id, params } => cmd_semigroup(case_id, params, c.max_degree)?,
        Command::Normality { case_id, params } => {
            cmd_normality(case_id.as_deref(), params, c.max_params)?
        }
        Command::CgVerify { max_entry } => cmd_cg_verify(max_entry.unwrap_or(c.max_entry))?,
        Command::ReportAll => {
            let Some(dir) = &c.out else {
                bail!("report-all needs --out <DIR>");
            };
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let reports = report_all(c)?;
            let mut ok = true;
            for (name, r) in &reports {
                ok &= r.ok;
                write_report(
                    r,
                    c.format,
                    Some(&dir.join(format!("{name}.{}", c.format.extension()))),
                )?;
            }
            return Ok(ok);
        }
    };
    write_report(&report, c.format, c.out.as_deref())?;
    Ok(report.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
