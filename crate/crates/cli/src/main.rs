//! `lierig`: cohomology tables, chain-map and identity verification, and
//! rigidity certificates, all emitted as JSON.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 for usage and parse errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use lie_rigidity::charmap::{maurer_cartan_check, phi_chain_suite, zeta_image};
use lie_rigidity::exact::{filtration_check, les_check, SequenceKind};
use lie_rigidity::forms::{forms_report, FormExpr};
use lie_rigidity::homology::{cohomology_report, weight_sweep, Theory};
use lie_rigidity::liealg::{Algebra, StructureConstants};
use lie_rigidity::maps::{maps_report, rigidity_certify, MapKind};
use lie_rigidity::Error;

const DEFAULT_WINDOW: u32 = 3;
const DEFAULT_K: u32 = 8;
const RANDOM_PRODUCTS: usize = 200;
/// Index bound for structure scans of infinite algebras.
const SCAN_BOUND: usize = 24;

#[derive(Parser)]
#[command(name = "lierig", version, about = "Exact Lie and Leibniz cohomology and rigidity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Clone)]
struct Options {
    /// Built-in name (sl2, heisenberg3, abelian(n), w1) or a JSON file.
    #[arg(long, global = true)]
    algebra: Option<String>,
    /// Highest cohomological degree p (at least 1).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_degree: Option<u64>,
    /// A single weight slice.
    #[arg(long, global = true, allow_hyphen_values = true)]
    weight: Option<i64>,
    /// Sweep weights -W..=W (infinite-dimensional algebras only).
    #[arg(long, global = true)]
    weight_window: Option<u32>,
    /// Truncation level for forms and Maurer-Cartan checks.
    #[arg(long, global = true)]
    k: Option<u32>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized checks; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Structure checks on an algebra.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Betti numbers per (degree, weight) slice.
    Cohomology {
        theory: TheoryArg,
        #[arg(value_name = "ALGEBRA")]
        name: Option<String>,
    },
    /// Exact verification of maps, sequences and identities.
    Verify {
        target: Target,
        #[arg(value_name = "ALGEBRA")]
        name: Option<String>,
        /// For `verify forms`: also print the normal form and differential of this expression.
        #[arg(long)]
        expr: Option<String>,
    },
    /// Rigidity certificate for degrees 1..=p.
    Certify {
        #[arg(value_name = "ALGEBRA")]
        name: Option<String>,
    },
}

#[derive(Subcommand)]
enum AlgebraAction {
    Check {
        #[arg(value_name = "ALGEBRA")]
        name: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Lie,
    Leibniz,
    Coadjoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Maps,
    Les,
    Filtration,
    Forms,
    MaurerCartan,
    Zeta,
}

#[derive(Serialize)]
struct RunConfig {
    task: String,
    algebra: Option<String>,
    max_degree: Option<usize>,
    weight: Option<i64>,
    weight_window: Option<u32>,
    k: Option<u32>,
    seed: u64,
}

#[derive(Serialize)]
struct Envelope {
    config: RunConfig,
    pass: bool,
    failures: Vec<String>,
    report: Value,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAComplex { .. } | Error::NotInjective { .. } => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

fn load_algebra(source: &str) -> Result<Algebra, Failure> {
    let name = source.trim().to_ascii_lowercase();
    match name.as_str() {
        "sl2" => return Ok(StructureConstants::sl2().into()),
        "heisenberg3" => return Ok(StructureConstants::heisenberg3().into()),
        "w1" => return Ok(Algebra::W1),
        _ => {}
    }
    let abelian = name
        .strip_prefix("abelian(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| name.strip_prefix("abelian"));
    if let Some(n) = abelian {
        return match n.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(StructureConstants::abelian(n).into()),
            _ => Err(Failure::Usage(format!("bad abelian dimension in '{source}'"))),
        };
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| Failure::Usage(format!("'{source}' is neither a built-in algebra nor a readable file: {e}")))?;
    StructureConstants::from_json(&text)
        .map(Algebra::from)
        .map_err(|e| Failure::Usage(format!("{source}: {e}")))
}

struct Run {
    opts: Options,
    task: String,
    algebra_source: Option<String>,
}

impl Run {
    fn algebra(&self) -> Result<Algebra, Failure> {
        let src = self
            .algebra_source
            .as_deref()
            .ok_or_else(|| Failure::Usage("an algebra is required (positional or --algebra)".into()))?;
        load_algebra(src)
    }

    fn max_degree(&self, default: usize) -> usize {
        self.opts.max_degree.map_or(default, |p| p as usize)
    }

    /// A single slice: `--weight`, else weight 0 for infinite algebras, else the whole space.
    fn single_weight(&self, alg: &Algebra) -> Option<i64> {
        self.opts.weight.or((!alg.is_finite()).then_some(0))
    }

    fn config(&self, max_degree: Option<usize>, weight: Option<i64>, window: Option<u32>, k: Option<u32>) -> RunConfig {
        RunConfig {
            task: self.task.clone(),
            algebra: self.algebra_source.clone(),
            max_degree,
            weight,
            weight_window: window,
            k,
            seed: self.opts.seed,
        }
    }
}

fn envelope(config: RunConfig, failures: Vec<String>, report: impl Serialize) -> Result<Envelope, Failure> {
    Ok(Envelope {
        config,
        pass: failures.is_empty(),
        failures,
        report: serde_json::to_value(report)?,
    })
}

fn algebra_check(run: &Run) -> Result<Envelope, Failure> {
    #[derive(Serialize)]
    struct Report {
        algebra: String,
        dim: Option<usize>,
        scan_bound: Option<usize>,
        antisymmetry_violations: Vec<(String, String)>,
        jacobi_violations: Vec<(String, String, String)>,
        grading_violations: Vec<(String, String)>,
    }
    let alg = run.algebra()?;
    let l = |i: usize| alg.label(i);
    let report = Report {
        algebra: alg.name(),
        dim: alg.dim(),
        scan_bound: (!alg.is_finite()).then_some(SCAN_BOUND),
        antisymmetry_violations: alg.antisymmetry_violations(SCAN_BOUND).into_iter().map(|(i, j)| (l(i), l(j))).collect(),
        jacobi_violations: alg
            .jacobi_violations(SCAN_BOUND)
            .into_iter()
            .map(|(i, j, k)| (l(i), l(j), l(k)))
            .collect(),
        grading_violations: alg.grading_violations(SCAN_BOUND).into_iter().map(|(i, j)| (l(i), l(j))).collect(),
    };
    let mut failures = Vec::new();
    failures.extend(report.antisymmetry_violations.iter().map(|(a, b)| format!("antisymmetry: [{a},{b}] != -[{b},{a}]")));
    failures.extend(report.jacobi_violations.iter().map(|(a, b, c)| format!("jacobi: ({a},{b},{c})")));
    failures.extend(report.grading_violations.iter().map(|(a, b)| format!("grading: [{a},{b}]")));
    envelope(run.config(None, None, None, None), failures, report)
}

fn cohomology(run: &Run, theory: TheoryArg) -> Result<Envelope, Failure> {
    let alg = run.algebra()?;
    let theory = match theory {
        TheoryArg::Lie => Theory::Lie,
        TheoryArg::Leibniz => Theory::Leibniz,
        TheoryArg::Coadjoint => Theory::Coadjoint,
    };
    let p = run.max_degree(4);
    let (weights, window) = match run.opts.weight {
        Some(w) => (vec![Some(w)], None),
        None if alg.is_finite() => (vec![None], None),
        None => {
            let w = run.opts.weight_window.unwrap_or(DEFAULT_WINDOW);
            (weight_sweep(&alg, w), Some(w))
        }
    };
    let report = cohomology_report(&alg, theory, p, &weights, window)?;
    let weight = run.opts.weight;
    envelope(run.config(Some(p), weight, window, None), Vec::new(), report)
}

fn verify(run: &Run, target: Target, expr: Option<&str>) -> Result<Envelope, Failure> {
    let k = run.opts.k.unwrap_or(DEFAULT_K);
    match target {
        Target::Maps => {
            let alg = run.algebra()?;
            let (p, w) = (run.max_degree(4), run.single_weight(&alg));
            let r = maps_report(&alg, p, w)?;
            let mut failures = Vec::new();
            for c in &r.commutation {
                if !c.commutes {
                    failures.push(format!("{} does not commute with d at q = {}", c.map, c.q));
                }
                if !c.injective && matches!(c.map, MapKind::Var | MapKind::I) {
                    failures.push(format!("{} is not injective at q = {} (rank {} < {})", c.map, c.q, c.rank, c.source_dim));
                }
            }
            failures.extend(r.phi_var_equals_d.iter().filter(|(_, ok)| !ok).map(|(q, _)| format!("Phi∘Var != D at q = {q}")));
            failures.extend(r.diagram.iter().filter(|d| !d.commutes).map(|d| format!("diagram fails at q = {}", d.q)));
            envelope(run.config(Some(p), w, None, None), failures, r)
        }
        Target::Les => {
            let alg = run.algebra()?;
            let (p, w) = (run.max_degree(4), run.single_weight(&alg));
            let mut reports = Vec::new();
            let mut failures = Vec::new();
            for kind in [SequenceKind::RelativeGeneral, SequenceKind::Variation, SequenceKind::Relative] {
                let r = les_check(kind, &alg, p, w)?;
                for d in r.degreewise.iter().filter(|d| !d.short_exact || !d.chain_maps) {
                    failures.push(format!("{kind}: not short exact at q = {}", d.q));
                }
                for n in r.nodes.iter().filter(|n| !n.exact) {
                    failures.push(format!("{kind}: not exact at {}", n.label));
                }
                if r.head_isomorphism == Some(false) {
                    failures.push(format!("{kind}: H^0_Lie(g;g') -> HL^1 is not an isomorphism"));
                }
                reports.push(r);
            }
            envelope(run.config(Some(p), w, None, None), failures, reports)
        }
        Target::Filtration => {
            let alg = run.algebra()?;
            let (p, w) = (run.max_degree(5), run.single_weight(&alg));
            let s_max = 3;
            let r = filtration_check(&alg, s_max, p, w)?;
            let mut failures: Vec<String> = r
                .entries
                .iter()
                .filter(|e| !e.d_preserves || !e.contains_next)
                .map(|e| format!("F^{} fails at q = {}", e.s, e.q))
                .collect();
            failures.extend(r.bottom_vanishes.iter().filter(|(_, ok)| !ok).map(|(s, _)| format!("F^{s}_0 != 0")));
            envelope(run.config(Some(p), w, None, None), failures, r)
        }
        Target::Forms => {
            #[derive(Serialize)]
            struct Expr {
                input: String,
                normal_form: FormExpr,
                differential: FormExpr,
                degree: Option<usize>,
            }
            #[derive(Serialize)]
            struct Report {
                #[serde(flatten)]
                suite: lie_rigidity::forms::FormsReport,
                expr: Option<Expr>,
            }
            let expr = expr
                .map(|text| {
                    let e = FormExpr::parse(text)?;
                    Ok::<_, Error>(Expr {
                        input: text.to_string(),
                        normal_form: e.normal_form(),
                        differential: e.differential().normal_form(),
                        degree: e.degree(),
                    })
                })
                .transpose()?;
            let suite = forms_report(k, RANDOM_PRODUCTS, run.opts.seed)?;
            let mut failures: Vec<String> = suite.square_zero.failures.iter().map(|e| format!("d∘d != 0 on {e}")).collect();
            for proof in [&suite.c_zeta_rewrite, &suite.scale_invariance, &suite.shift_invariance] {
                failures.extend(proof.identities.iter().filter(|i| !i.holds).map(|i| format!("fails: {}", i.name)));
            }
            envelope(run.config(None, None, None, Some(k)), failures, Report { suite, expr })
        }
        Target::MaurerCartan => {
            #[derive(Serialize)]
            struct Report {
                maurer_cartan: lie_rigidity::charmap::MaurerCartanReport,
                chain_map: Vec<lie_rigidity::charmap::ChainMapCheck>,
            }
            let mc = maurer_cartan_check(k)?;
            let mut failures = Vec::new();
            let chain_map = match mc.epsilon {
                Some(e) => phi_chain_suite(e)?,
                None => {
                    failures.push("no single sign satisfies the Maurer-Cartan equation".into());
                    Vec::new()
                }
            };
            failures.extend(chain_map.iter().filter(|c| !c.holds).map(|c| format!("chain map fails on {}", c.cochain)));
            envelope(run.config(None, None, None, Some(k)), failures, Report { maurer_cartan: mc, chain_map })
        }
        Target::Zeta => {
            let z = zeta_image()?;
            let failures = if z.pass {
                Vec::new()
            } else {
                vec![format!("zeta image is {}, expected {}", z.image, z.expected)]
            };
            envelope(run.config(None, Some(0), None, None), failures, z)
        }
    }
}

fn certify(run: &Run) -> Result<Envelope, Failure> {
    let alg = run.algebra()?;
    let p = run.max_degree(4);
    let window = run.opts.weight_window.unwrap_or(DEFAULT_WINDOW);
    let cert = rigidity_certify(&alg, p, window)?;
    let mut failures = Vec::new();
    if !cert.routes_agree {
        failures.push("the Leibniz route certifies a degree the direct route does not".into());
    }
    // A not-certified verdict is a finding, not a failed check.
    let window = cert.weight_window;
    envelope(run.config(Some(p), None, window, None), failures, &cert)
}

fn execute(cli: Cli) -> Result<Envelope, Failure> {
    let opts = cli.opts.clone();
    let pick = |positional: Option<String>| positional.or_else(|| opts.algebra.clone());
    let (task, source) = match &cli.command {
        Command::Algebra { action: AlgebraAction::Check { name } } => ("algebra check".to_string(), pick(name.clone())),
        Command::Cohomology { theory, name } => (
            format!("cohomology {}", theory.to_possible_value().expect("named").get_name()),
            pick(name.clone()),
        ),
        Command::Verify { target, name, .. } => {
            (format!("verify {}", target.to_possible_value().expect("named").get_name()), pick(name.clone()))
        }
        Command::Certify { name } => ("certify".to_string(), pick(name.clone())),
    };
    let run = Run {
        opts,
        task,
        algebra_source: source,
    };
    match &cli.command {
        Command::Algebra { .. } => algebra_check(&run),
        Command::Cohomology { theory, .. } => cohomology(&run, *theory),
        Command::Verify { target, expr, .. } => verify(&run, *target, expr.as_deref()),
        Command::Certify { .. } => certify(&run),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.opts.out.clone();
    let env = match execute(cli) {
        Ok(env) => env,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            return ExitCode::from(1);
        }
    };
    let mut text = serde_json::to_string_pretty(&env).expect("reports serialize");
    text.push('\n');
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    for f in &env.failures {
        eprintln!("FAIL {f}");
    }
    if env.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
