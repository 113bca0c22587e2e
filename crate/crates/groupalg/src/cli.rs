//! The `groupalg` command line.
//!
//! Exit codes: 0 when the analysis completed, whatever the verdicts; 1 when
//! an input fails validation (the report lists the violations); 2 on usage
//! errors, including unreadable files.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{diagonal, FiniteDimAlgebra};
use crate::coarse::{decompose_into_bisections, is_bisection, matrix_rep_norm_bound, n_of, ControlledMatrix};
use crate::crosscheck::{theorem_crosscheck, trivial_rep_crosscheck};
use crate::error::Error;
use crate::graph::DirectedGraph;
use crate::groupoid::{validate, FiniteGroupoid};
use crate::io;
use crate::paction::{validate_action, validate_action_cocycle};
use crate::random;
use crate::report::{Check, Report};
use crate::scalar::{Field, Gauss, Scalar};
use crate::selfsim::{validate_cocycle_identities, DEFAULT_DEPTH};
use crate::semigroup::validate_semigroup;
use crate::twisted::{
    expectation_restrict, norm, operator_norm, regular_rep, validate_cocycle, ConvElement, NormKind, TwoCocycle,
};
use crate::verdict::ValidationReport;

/// Arrows allowed in a boundary path groupoid before the Burnside oracle is
/// skipped.
pub const GRAPH_ORACLE_CAP: usize = 144;

#[derive(Debug, Parser)]
#[command(name = "groupalg", version, about = "Finite groupoid algebra toolkit")]
pub struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized inputs and corpus runs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Search depth for self-similar probes.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH)]
    pub depth: usize,
    /// Add wall-clock timing to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Norms and representations of one convolution element.
    Algebra {
        #[arg(long)]
        groupoid: PathBuf,
        #[arg(long)]
        cocycle: Option<PathBuf>,
        /// Element file; a random element is drawn from `--seed` otherwise.
        #[arg(long)]
        element: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "norms")]
        op: AlgebraOp,
        /// 1, 2 or inf.
        #[arg(long, default_value = "2")]
        p: String,
    },
    /// Linear-algebra oracles on the groupoid algebra.
    Oracle {
        #[arg(long)]
        groupoid: PathBuf,
        #[arg(long)]
        cocycle: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "crosscheck")]
        check: OracleCheck,
    },
    /// Finite inverse semigroups and their tight groupoids.
    Sgrp {
        #[arg(long = "in")]
        input: PathBuf,
        /// All checks when omitted.
        #[arg(long, value_enum)]
        check: Option<SgrpCheck>,
    },
    /// Partial group actions.
    Paction {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        check: Option<PactionCheck>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Print the transformation groupoid (and cocycle) as JSON.
        #[arg(long)]
        emit_groupoid: bool,
    },
    /// Directed graphs, JSON or DOT.
    Graph {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        verdict: bool,
        #[arg(long, value_enum)]
        check: Option<GraphCheck>,
    },
    /// Self-similar graph actions.
    Selfsim {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        verdict: bool,
        #[arg(long, value_enum)]
        check: Option<SelfsimCheck>,
    },
    /// Coarse spaces and controlled propagation matrices.
    Roe {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        check: Option<RoeCheck>,
        /// 1, 2 or inf; all three when omitted.
        #[arg(long)]
        p: Option<String>,
    },
    /// Randomized corpus runs.
    Corpus {
        #[arg(long, value_enum)]
        kind: CorpusKind,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraOp {
    Norms,
    Rep,
    Expect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleCheck {
    Simple,
    Maxabelian,
    Crosscheck,
    Trivialrep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SgrpCheck {
    Closed,
    Topfree,
    Minimal,
    Loccontract,
    TightGroupoid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PactionCheck {
    Topfree,
    Minimal,
    Filling,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphCheck {
    Entry,
    Cofinal,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SelfsimCheck {
    Identities,
    Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RoeCheck {
    Simple,
    Decompose,
    Normbound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorpusKind {
    Groupoids,
    Graphs,
    Roe,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Invalid(Box<Report>),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// Either a report or raw output (`--emit-groupoid`, `--op rep --json`).
enum Output {
    Report(Report),
    Raw(String),
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let start = Instant::now();
    let render = |mut r: Report| {
        if cli.timing {
            r.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        if cli.json {
            r.to_json() + "\n"
        } else {
            r.to_text()
        }
    };
    match dispatch(&cli) {
        Ok(Output::Report(r)) => Outcome {
            code: 0,
            stdout: render(r),
            stderr: String::new(),
        },
        Ok(Output::Raw(s)) => Outcome {
            code: 0,
            stdout: s,
            stderr: String::new(),
        },
        Err(Failure::Invalid(r)) => Outcome {
            code: 1,
            stdout: render(*r),
            stderr: "input failed validation\n".into(),
        },
        Err(Failure::Usage(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {}\n", m),
        },
        Err(Failure::Error(e)) => {
            let code = match e {
                Error::UnsupportedP(_) | Error::Io(_) => 2,
                _ => 1,
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {}\n", e),
            }
        }
    }
}

fn read(path: &Path) -> Run<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {}", path.display(), e)))
}

fn parse_p(s: &str) -> Run<f64> {
    match s.trim().to_ascii_lowercase().as_str() {
        "1" => Ok(1.0),
        "2" => Ok(2.0),
        "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
        other => Err(Failure::Usage(format!("unsupported p `{}`; use 1, 2 or inf", other))),
    }
}

fn p_name(p: f64) -> &'static str {
    if p == 1.0 {
        "1"
    } else if p == 2.0 {
        "2"
    } else {
        "inf"
    }
}

fn invalid(mut r: Report, name: &str, v: &ValidationReport) -> Run<()> {
    if v.is_ok() {
        return Ok(());
    }
    r.push(Check::new(name, "invalid", Some(false), &v.violations));
    Err(Failure::Invalid(Box::new(r)))
}

fn dispatch(cli: &Cli) -> Run<Output> {
    match &cli.command {
        Command::Algebra {
            groupoid,
            cocycle,
            element,
            op,
            p,
        } => algebra_cmd(cli, groupoid, cocycle.as_deref(), element.as_deref(), *op, p),
        Command::Oracle {
            groupoid,
            cocycle,
            check,
        } => oracle_cmd(groupoid, cocycle.as_deref(), *check),
        Command::Sgrp { input, check } => sgrp_cmd(input, *check),
        Command::Paction {
            input,
            check,
            n,
            emit_groupoid,
        } => paction_cmd(input, *check, *n, *emit_groupoid),
        Command::Graph { input, verdict, check } => graph_cmd(input, *verdict, *check),
        Command::Selfsim { input, verdict, check } => selfsim_cmd(cli, input, *verdict, *check),
        Command::Roe { input, check, p } => roe_cmd(cli, input, *check, p.as_deref()),
        Command::Corpus { kind, trials } => corpus_cmd(cli, *kind, *trials),
    }
}

/// Loads and validates a groupoid with an optional cocycle.
fn load_groupoid(
    command: &str,
    path: &Path,
    cocycle: Option<&Path>,
    extra: &[&[u8]],
) -> Run<(FiniteGroupoid, TwoCocycle<Gauss>, Report)> {
    let gtext = read(path)?;
    let ctext = cocycle.map(read).transpose()?;
    let mut inputs: Vec<&[u8]> = vec![gtext.as_bytes()];
    if let Some(c) = &ctext {
        inputs.push(c.as_bytes());
    }
    inputs.extend_from_slice(extra);
    let report = Report::new(command, &inputs);
    let g = io::groupoid_from_json(&gtext)?;
    invalid(report.clone(), "groupoid", &validate(&g))?;
    let s = match &ctext {
        Some(c) => io::cocycle_from_json::<Gauss>(&g, c)?,
        None => TwoCocycle::trivial(Field::Complex),
    };
    invalid(report.clone(), "cocycle", &validate_cocycle(&g, &s))?;
    Ok((g, s, report))
}

fn algebra_cmd(
    cli: &Cli,
    gpath: &Path,
    cpath: Option<&Path>,
    epath: Option<&Path>,
    op: AlgebraOp,
    p: &str,
) -> Run<Output> {
    let etext = epath.map(read).transpose()?;
    let extra: Vec<&[u8]> = etext.iter().map(|t| t.as_bytes()).collect();
    let (g, s, mut report) = load_groupoid("algebra", gpath, cpath, &extra)?;
    let f: ConvElement<Gauss> = match &etext {
        Some(t) => io::element_from_json(&g, t)?,
        None => {
            let seed = cli.seed.unwrap_or(0);
            report.seed = Some(seed);
            random::random_element(&mut random::rng(seed), &g)
        }
    };
    let ps = [1.0, 2.0, f64::INFINITY];
    match op {
        AlgebraOp::Norms => {
            let sup = norm(&g, &f, NormKind::Sup);
            let d = norm(&g, &f, NormKind::StarD);
            let r = norm(&g, &f, NormKind::StarR);
            let i = norm(&g, &f, NormKind::I);
            for (name, v) in [("sup", &sup), ("star_d", &d), ("star_r", &r), ("i", &i)] {
                report.push(Check::new(&format!("norm_{}", name), v.value, None, v));
            }
            let mut ops = Vec::new();
            for p in ps {
                let v = operator_norm(&regular_rep(&g, &f, &s, p)?, p)?;
                report.push(Check::new(&format!("operator_norm_{}", p_name(p)), v.value, None, &v));
                ops.push(v);
            }
            let mid = (d.value * r.value).sqrt();
            let tol = 1e-9 * i.value.max(1.0);
            let chain = ops[1].value <= mid + tol && mid <= i.value + tol;
            report.push(Check::flag(
                "chain_l2_le_geometric_le_i",
                chain,
                &[ops[1].value, mid, i.value],
            ));
            report.push(Check::flag("l1_equals_star_d", ops[0].equals(&d, 1e-12), &ops[0]));
            report.push(Check::flag("linf_equals_star_r", ops[2].equals(&r, 1e-12), &ops[2]));
        }
        AlgebraOp::Rep => {
            let p = parse_p(p)?;
            let m = regular_rep(&g, &f, &s, p)?;
            let rows: Vec<Vec<[f64; 2]>> = m
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| {
                            let c = x.to_c64();
                            [c.re, c.im]
                        })
                        .collect()
                })
                .collect();
            if cli.json {
                #[derive(Serialize)]
                struct Rep<'a> {
                    p: &'a str,
                    arrows: &'a [String],
                    rows: Vec<Vec<[f64; 2]>>,
                }
                let out = Rep {
                    p: p_name(p),
                    arrows: g.labels(),
                    rows,
                };
                return Ok(Output::Raw(
                    serde_json::to_string_pretty(&out).expect("rep json") + "\n",
                ));
            }
            let mut out = format!(
                "# Λ_{} on ℓ^{}(G), rows and columns: {}\n",
                p_name(p),
                p_name(p),
                g.labels().join(" ")
            );
            for r in &m.rows {
                out.push_str(&r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t"));
                out.push('\n');
            }
            return Ok(Output::Raw(out));
        }
        AlgebraOp::Expect => {
            let e = expectation_restrict(&f, &g.unit_set());
            let sup = norm(&g, &e, NormKind::Sup);
            report.push(Check::new("expectation_sup", sup.value, None, &sup));
            for p in ps {
                let v = operator_norm(&regular_rep(&g, &f, &s, p)?, p)?;
                let ok = sup.value <= v.value * (1.0 + 1e-9) + 1e-12;
                report.push(Check::flag(
                    &format!("expectation_le_operator_norm_{}", p_name(p)),
                    ok,
                    &v,
                ));
            }
        }
    }
    Ok(Output::Report(report))
}

fn oracle_cmd(gpath: &Path, cpath: Option<&Path>, check: OracleCheck) -> Run<Output> {
    let (g, s, mut report) = load_groupoid("oracle", gpath, cpath, &[])?;
    let alg = FiniteDimAlgebra::from_groupoid(&g, &s);
    match check {
        OracleCheck::Simple => {
            let (v, caveat) = alg.is_simple_complexified()?;
            report.push(Check::flag("simple", v.holds, &v.witness));
            if let Some(c) = caveat {
                report.push(Check::new("caveat", c, None, &()));
            }
        }
        OracleCheck::Maxabelian => {
            let v = alg.is_maximal_abelian(&diagonal(&g))?;
            report.push(Check::flag("diagonal_maximal_abelian", v, &()));
        }
        OracleCheck::Crosscheck => {
            let c = theorem_crosscheck(&g, &s)?;
            report.push(Check::flag("simple", c.simple, &()));
            report.push(Check::flag("diagonal_maximal_abelian", c.diagonal_maximal_abelian, &()));
            report.push(Check::flag(
                "topologically_free",
                c.topologically_free,
                &g.is_topologically_free().witness,
            ));
            report.push(Check::flag("minimal", c.minimal, &g.is_minimal().witness));
            let left = if !c.simple {
                "not simple"
            } else if !c.diagonal_maximal_abelian {
                "simple, diagonal not maximal abelian"
            } else {
                "simple, diagonal maximal abelian"
            };
            let right = if !c.topologically_free {
                "not topologically free"
            } else if !c.minimal {
                "topologically free, not minimal"
            } else {
                "topologically free, minimal"
            };
            let summary = format!(
                "{} ({} ∧ {})",
                if c.agree { "agreement" } else { "disagreement" },
                left,
                right
            );
            report.push(Check::new("crosscheck", summary, Some(c.agree), &c));
        }
        OracleCheck::Trivialrep => {
            if !s.is_trivial() {
                return Err(Failure::Error(Error::Twisted));
            }
            let c = trivial_rep_crosscheck::<Gauss>(&g)?;
            report.push(Check::flag("trivial_rep_injective", c.injective, &c));
            report.push(Check::flag("topologically_free", c.topologically_free, &()));
            report.push(Check::flag("agreement", c.agree, &()));
        }
    }
    Ok(Output::Report(report))
}

fn sgrp_cmd(path: &Path, check: Option<SgrpCheck>) -> Run<Output> {
    let text = read(path)?;
    let mut report = Report::new("sgrp", &[text.as_bytes()]);
    let s = io::semigroup_from_json(&text)?;
    invalid(report.clone(), "semigroup", &validate_semigroup(&s))?;
    let all = check.is_none();
    let want = |c: SgrpCheck| all || check == Some(c);
    let tg = (want(SgrpCheck::TightGroupoid) || all).then(|| s.tight_groupoid());
    if want(SgrpCheck::Closed) {
        let v = s.is_closed();
        report.push(Check::flag("closed", v.holds, &v.witness));
    }
    if want(SgrpCheck::Topfree) {
        let v = s.is_topologically_free_s();
        report.push(Check::flag("topologically_free", v.holds, &v.witness));
    }
    if want(SgrpCheck::Minimal) {
        let v = s.is_minimal_s();
        report.push(Check::flag("minimal", v.holds, &v.witness));
    }
    if want(SgrpCheck::Loccontract) {
        let v = s.is_locally_contracting_s()?;
        report.push(Check::flag("locally_contracting", v.holds, &v.witness));
    }
    if let Some(tg) = tg {
        let g = &tg.groupoid;
        let tight = s.tight_filters();
        let ultra = s.ultrafilters();
        report.push(Check::flag("tight_filters_are_ultrafilters", tight == ultra, &tight));
        #[derive(Serialize)]
        struct Summary<'a> {
            arrows: Vec<&'a str>,
            units: usize,
            hausdorff: bool,
            topologically_free: bool,
            minimal: bool,
            valid: bool,
        }
        let sum = Summary {
            arrows: g.labels().iter().map(|s| s.as_str()).collect(),
            units: g.units().len(),
            hausdorff: g.is_hausdorff().holds,
            topologically_free: g.is_topologically_free().holds,
            minimal: g.is_minimal().holds,
            valid: validate(g).is_ok(),
        };
        report.push(Check::new(
            "tight_groupoid",
            format!("{} arrows, {} units", g.len(), sum.units),
            Some(sum.valid),
            &sum,
        ));
        report.push(Check::flag(
            "closed_iff_hausdorff",
            s.is_closed().holds == sum.hausdorff,
            &(),
        ));
        report.push(Check::flag(
            "topfree_iff_groupoid_topfree",
            s.is_topologically_free_s().holds == sum.topologically_free,
            &(),
        ));
        report.push(Check::flag(
            "minimal_iff_groupoid_minimal",
            s.is_minimal_s().holds == sum.minimal,
            &(),
        ));
    }
    Ok(Output::Report(report))
}

fn paction_cmd(path: &Path, check: Option<PactionCheck>, n: usize, emit: bool) -> Run<Output> {
    let text = read(path)?;
    let mut report = Report::new("paction", &[text.as_bytes()]);
    let (a, u) = io::paction_from_json::<Gauss>(&text)?;
    invalid(report.clone(), "partial_action", &validate_action(&a))?;
    if let Some(u) = &u {
        invalid(
            report.clone(),
            "cocycle",
            &validate_action_cocycle(&a, u, Field::Complex),
        )?;
    }
    if emit {
        let tg = a.transformation_groupoid()?;
        let gj = io::groupoid_to_value(&tg.groupoid);
        let out = match &u {
            None => serde_json::to_string_pretty(&gj).expect("groupoid json"),
            Some(u) => {
                let s = a.induced_cocycle(&tg, u, Field::Complex)?;
                let cj: serde_json::Value =
                    serde_json::from_str(&io::cocycle_to_json(&tg.groupoid, &s)).expect("cocycle json");
                serde_json::to_string_pretty(&serde_json::json!({ "groupoid": gj, "cocycle": cj })).expect("json")
            }
        };
        return Ok(Output::Raw(out + "\n"));
    }
    let all = check.is_none();
    let want = |c: PactionCheck| all || check == Some(c);
    if want(PactionCheck::Topfree) {
        let v = a.is_topologically_free_pa();
        report.push(Check::flag("topologically_free", v.holds, &v.witness));
    }
    if want(PactionCheck::Minimal) {
        let v = a.is_minimal_pa();
        report.push(Check::flag("minimal", v.holds, &v.witness));
    }
    if want(PactionCheck::Filling) {
        let r = a.is_n_filling_pa(n)?;
        report.push(Check::flag(&format!("{}_filling", n), r.full.holds, &r.full.witness));
        report.push(Check::flag(
            &format!("{}_filling_cover_condition", n),
            r.cover_condition.holds,
            &r.cover_condition.witness,
        ));
    }
    if want(PactionCheck::Boundary) {
        let v = a.is_local_boundary_pa();
        report.push(Check::flag("local_boundary", v.holds, &v.witness));
    }
    Ok(Output::Report(report))
}

pub fn load_graph(text: &str) -> crate::Result<DirectedGraph> {
    if text.trim_start().starts_with('{') {
        DirectedGraph::from_json(text)
    } else {
        DirectedGraph::from_dot(text)
    }
}

/// Burnside simplicity of the boundary path groupoid algebra of an acyclic
/// graph; `None` above [`GRAPH_ORACLE_CAP`] arrows.
pub fn graph_oracle(q: &DirectedGraph) -> crate::Result<Option<bool>> {
    let g = q.boundary_path_groupoid_acyclic()?;
    if g.len() > GRAPH_ORACLE_CAP {
        return Ok(None);
    }
    let alg = FiniteDimAlgebra::from_groupoid(&g, &TwoCocycle::<Gauss>::trivial(Field::Complex));
    Ok(Some(alg.is_simple_burnside()?.holds))
}

fn graph_cmd(path: &Path, verdict: bool, check: Option<GraphCheck>) -> Run<Output> {
    let text = read(path)?;
    let mut report = Report::new("graph", &[text.as_bytes()]);
    let q = load_graph(&text)?;
    let all = check.is_none() && !verdict;
    let want = |c: GraphCheck| all || check == Some(c);
    if verdict || all {
        let v = q.simplicity_verdict();
        report.push(Check::new("verdict", v.label(), Some(v.is_simple()), &v));
    }
    if want(GraphCheck::Entry) {
        let v = q.every_cycle_has_entry();
        report.push(Check::flag("every_cycle_has_entry", v.holds, &v.witness));
    }
    if want(GraphCheck::Cofinal) {
        let v = q.is_cofinal();
        report.push(Check::flag("cofinal", v.holds, &v.witness));
    }
    if want(GraphCheck::Oracle) {
        if q.has_cycle() {
            report.push(Check::new("burnside_oracle", "skipped: graph has a cycle", None, &()));
        } else {
            match graph_oracle(&q)? {
                Some(b) => {
                    let agree = b == q.simplicity_verdict().is_simple();
                    report.push(Check::flag("burnside_oracle_simple", b, &()));
                    report.push(Check::flag("oracle_agrees", agree, &()));
                }
                None => report.push(Check::new("burnside_oracle", "skipped: groupoid too large", None, &())),
            }
        }
    }
    Ok(Output::Report(report))
}

fn selfsim_cmd(cli: &Cli, path: &Path, verdict: bool, check: Option<SelfsimCheck>) -> Run<Output> {
    let text = read(path)?;
    let mut report = Report::new("selfsim", &[text.as_bytes()]);
    report.depth = Some(cli.depth);
    let a = io::selfsim_from_json(&text)?;
    let v = validate_cocycle_identities(&a);
    invalid(report.clone(), "cocycle_identities", &v)?;
    if check == Some(SelfsimCheck::Identities) || (check.is_none() && !verdict) {
        report.push(Check::flag("cocycle_identities", true, &()));
    }
    if verdict || check == Some(SelfsimCheck::Verdict) || check.is_none() {
        let r = a.verdict(cli.depth)?;
        report.push(Check::new("cofinal", r.cofinal.label(), None, &r.cofinal));
        report.push(Check::new(
            "every_cycle_has_entry",
            r.every_cycle_has_entry.label(),
            None,
            &r.every_cycle_has_entry,
        ));
        report.push(Check::new(
            "fixing_implies_slack",
            r.fixing_implies_slack.label(),
            None,
            &r.fixing_implies_slack,
        ));
        report.push(Check::new(
            "finitely_many_minimal_fixed",
            r.finitely_many_minimal_fixed.label(),
            None,
            &r.finitely_many_minimal_fixed,
        ));
        let name = |c| {
            serde_json::to_value(c)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default()
        };
        report.push(Check::new("essential", name(r.essential), None, &()));
        report.push(Check::new("reduced", name(r.reduced), None, &()));
    }
    Ok(Output::Report(report))
}

fn roe_cmd(cli: &Cli, path: &Path, check: Option<RoeCheck>, p: Option<&str>) -> Run<Output> {
    let text = read(path)?;
    let mut report = Report::new("roe", &[text.as_bytes()]);
    let file = io::coarse_from_json::<Gauss>(&text).map_err(|e| match e {
        Error::Invalid(m) => {
            let mut r = report.clone();
            r.push(Check::new("matrix", "invalid", Some(false), &m));
            Failure::Invalid(Box::new(r))
        }
        e => Failure::Error(e),
    })?;
    let cs = &file.space;
    let all = check.is_none();
    let want = |c: RoeCheck| all || check == Some(c);
    if want(RoeCheck::Simple) {
        let v = cs.is_simple_coarse()?;
        report.push(Check::flag("simple", v.holds, &v.witness));
        report.push(Check::flag("unital", cs.is_unital(), &()));
    }
    if want(RoeCheck::Decompose) {
        let e = match &file.matrix {
            Some(t) => t.support(),
            None => cs.maximal_entourage().clone(),
        };
        let parts = decompose_into_bisections(&e);
        let n = n_of(&e);
        let disjoint = parts.iter().map(|p| p.len()).sum::<usize>() == e.len();
        let union: crate::coarse::Entourage = parts.iter().flatten().copied().collect();
        let ok = disjoint && union == e && parts.iter().all(is_bisection) && parts.len() <= n * n + 1;
        #[derive(Serialize)]
        struct Decomp {
            n: usize,
            pieces: usize,
            bound: usize,
            bisections: Vec<Vec<(String, String)>>,
        }
        let d = Decomp {
            n,
            pieces: parts.len(),
            bound: n * n + 1,
            bisections: parts
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|&(x, y)| (cs.points[x].clone(), cs.points[y].clone()))
                        .collect()
                })
                .collect(),
        };
        report.push(Check::new(
            "decompose",
            format!("{} bisections, n = {}", d.pieces, n),
            Some(ok),
            &d,
        ));
    }
    if want(RoeCheck::Normbound) {
        let t = match &file.matrix {
            Some(t) => t.clone(),
            None => {
                let seed = cli.seed.unwrap_or(0);
                report.seed = Some(seed);
                let mut rng = random::rng(seed);
                let blocks: Vec<_> = cs
                    .maximal_entourage()
                    .iter()
                    .map(|&xy| {
                        let k = file.blockdim;
                        (
                            xy,
                            (0..k)
                                .map(|_| (0..k).map(|_| random::small_scalar(&mut rng, 0.3, true)).collect())
                                .collect(),
                        )
                    })
                    .collect();
                ControlledMatrix::new(cs.len(), file.blockdim, blocks)?
            }
        };
        let ps = match p {
            Some(p) => vec![parse_p(p)?],
            None => vec![1.0, 2.0, f64::INFINITY],
        };
        for p in ps {
            let b = matrix_rep_norm_bound(&t, p)?;
            report.push(Check::new(
                &format!("normbound_{}", p_name(p)),
                format!("{} <= {}", b.exact.value, b.bound),
                Some(b.holds),
                &b,
            ));
        }
    }
    Ok(Output::Report(report))
}

fn corpus_cmd(cli: &Cli, kind: CorpusKind, trials: usize) -> Run<Output> {
    let seed = cli.seed.unwrap_or(0);
    let mut report = Report::new("corpus", &[format!("{:?}", kind).as_bytes()]);
    report.seed = Some(seed);
    let mut rng = random::rng(seed);
    let mut disagreements = Vec::new();
    match kind {
        CorpusKind::Groupoids => {
            for i in 0..trials {
                let rg = random::random_groupoid(&mut rng, 6, 30);
                let c = theorem_crosscheck(&rg.groupoid, &rg.cocycle)?;
                if !c.agree {
                    disagreements.push(i);
                }
            }
        }
        CorpusKind::Graphs => {
            for i in 0..trials {
                let q = random::random_dag(&mut rng, 8, GRAPH_ORACLE_CAP);
                if graph_oracle(&q)? != Some(q.simplicity_verdict().is_simple()) {
                    disagreements.push(i);
                }
            }
        }
        CorpusKind::Roe => {
            for i in 0..trials {
                let (_, t) = random::random_controlled_matrix(&mut rng, 12, 2);
                for p in [1.0, 2.0, f64::INFINITY] {
                    if !matrix_rep_norm_bound(&t, p)?.holds {
                        disagreements.push(i);
                    }
                }
            }
        }
    }
    report.push(Check::new(
        "disagreements",
        format!("{} of {}", disagreements.len(), trials),
        Some(disagreements.is_empty()),
        &disagreements,
    ));
    Ok(Output::Report(report))
}
