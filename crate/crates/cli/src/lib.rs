//! The `trilie` command line. Every command writes one JSON report to
//! stdout (except `eval --plain`) and exits with
//! 0 when all checks pass, 1 when a mathematical violation was found and 2
//! on usage or parse errors.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use trilie::algebra::{basis, BasisIndex, ThreeBracket};
use trilie::derivations::{self, Derivation};
use trilie::embeddings::{self, EmbeddingSpec, ModelKind};
use trilie::expr::{self, Value};
use trilie::json as tj;
use trilie::models::{self, W3};
use trilie::sampling::{self, Campaign};
use trilie::structure::{self, Coset};
use trilie::{Element, Error, HalfInt, Scalar};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "trilie",
    version,
    about = "Exact computations in the unital 3-Lie Poisson algebra L"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression such as "[L[0,1;1], L[0,1;3], L[1,0;-2]]".
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Print only the value instead of a JSON report.
        #[arg(long)]
        plain: bool,
    },
    /// Run a seeded identity campaign.
    Verify(VerifyArgs),
    /// Exhaustive fundamental-identity scan of a model algebra.
    ModelScan {
        #[arg(value_enum)]
        model: ScanModel,
        /// Structure parameter, as a scalar expression ("2*i", "0").
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 2)]
        window: i64,
    },
    /// Check or resolve an embedding of a classical 3-Lie algebra.
    Embed(EmbedArgs),
    /// Structure theory: reachability, support reduction, generators, weights, H.
    #[command(subcommand)]
    Structure(StructureCmd),
    /// Derivations given as JSON images of the three half generators.
    Derivation(DerivationArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScanModel {
    W3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    Fi,
    Leibniz,
    Skew,
    Nambu,
    Product,
    PoissonAll,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    kind: VerifyKind,
    /// Overridden by the TRILIE_SEED environment variable.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    /// Half-integer bound on every sampled index component.
    #[arg(long, default_value = "4")]
    window: HalfInt,
    /// Worker threads; the report does not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EmbedModel {
    W3,
    Awd,
    Aw,
    Winf,
}

impl From<EmbedModel> for ModelKind {
    fn from(m: EmbedModel) -> Self {
        match m {
            EmbedModel::W3 => ModelKind::W3,
            EmbedModel::Awd => ModelKind::Awd,
            EmbedModel::Aw => ModelKind::Aw,
            EmbedModel::Winf => ModelKind::Winf,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EmbedAction {
    Check,
    Resolve,
}

#[derive(Debug, Args)]
struct EmbedArgs {
    #[arg(value_enum)]
    model: EmbedModel,
    #[arg(value_enum)]
    action: EmbedAction,
    #[arg(long, default_value_t = 3)]
    window: i64,
    /// `check` only: use the uncorrected convention instead of the
    /// certified one (W3: signs (1,-1,1) with z = 2i; W_inf: offset 1/2).
    #[arg(long)]
    literal: bool,
    /// `check` on winf only: the lower-index offset.
    #[arg(long, allow_hyphen_values = true)]
    offset: Option<HalfInt>,
}

#[derive(Debug, Subcommand)]
enum StructureCmd {
    /// Certificate that the ideal of L_source mod the center contains L_target.
    Reach {
        /// Source index followed by target index: SL SM SR TL TM TR.
        #[arg(num_args = 6, required = true, allow_hyphen_values = true, value_names = ["SL", "SM", "SR", "TL", "TM", "TR"])]
        indices: Vec<HalfInt>,
    },
    /// Bracket a multi-term coset down to a single term.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Write L_{l,m}^r as a product of the six generators.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        l: HalfInt,
        #[arg(allow_hyphen_values = true)]
        m: HalfInt,
        #[arg(allow_hyphen_values = true)]
        r: HalfInt,
    },
    /// Eigenvalue of ad(L_{i,i}^t, L_{1-i,1-i}^{-t}) on L_{l,m}^r, checked against the bracket.
    Weights {
        #[arg(long, allow_hyphen_values = true)]
        t: HalfInt,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        i: HalfInt,
        #[arg(allow_hyphen_values = true)]
        l: HalfInt,
        #[arg(allow_hyphen_values = true)]
        m: HalfInt,
        #[arg(allow_hyphen_values = true)]
        r: HalfInt,
    },
    /// Exhaustive closure checks for H = span{L_{i,i}^t} on a window.
    HCheck {
        #[arg(long, default_value = "3")]
        window: HalfInt,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DerivationAction {
    CheckGd,
    Residual,
}

#[derive(Debug, Args)]
struct DerivationArgs {
    #[arg(value_enum)]
    action: DerivationAction,
    /// JSON object with keys img_r, img_l, img_m.
    #[arg(long)]
    input: std::path::PathBuf,
    /// `residual` only: number of random basis triples besides the witness.
    #[arg(long, default_value_t = 500)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "3")]
    window: HalfInt,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn report(passed: bool, body: &Json) -> Self {
        let mut stdout = serde_json::to_string_pretty(body).expect("serializable report");
        stdout.push('\n');
        Output {
            code: if passed { EXIT_PASS } else { EXIT_VIOLATION },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Output {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Runs the command line `args` (including the program name).
/// `env_seed` is the value of `TRILIE_SEED`, if set.
pub fn run<I, T>(args: I, env_seed: Option<&str>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output {
                        code: EXIT_PASS,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let seed_override = match env_seed.map(|s| s.trim().parse::<u64>()) {
        None => None,
        Some(Ok(s)) => Some(s),
        Some(Err(_)) => {
            return Output::usage(format!(
                "TRILIE_SEED is not an unsigned integer: {:?}",
                env_seed.unwrap()
            ))
        }
    };
    match dispatch(cli.command, seed_override) {
        Ok(out) => out,
        Err(e) => Output::usage(e),
    }
}

fn dispatch(cmd: Command, seed_override: Option<u64>) -> Result<Output, Error> {
    match cmd {
        Command::Eval { expr, plain } => eval(&expr, plain),
        Command::Verify(a) => Ok(verify(a, seed_override)),
        Command::ModelScan {
            model: ScanModel::W3,
            z,
            window,
        } => model_scan(&z, window),
        Command::Embed(a) => Ok(embed(a)),
        Command::Structure(s) => structure_cmd(s),
        Command::Derivation(a) => derivation(a, seed_override),
    }
}

fn eval(src: &str, plain: bool) -> Result<Output, Error> {
    let e = expr::parse(src)?;
    let v = e.eval()?;
    if plain {
        return Ok(Output {
            code: EXIT_PASS,
            stdout: format!("{v}\n"),
            stderr: String::new(),
        });
    }
    let body = match &v {
        Value::Scalar(c) => {
            json!({ "expr": e.to_string(), "kind": "scalar", "value": c.to_string(), "scalar": tj::scalar_to_json(c) })
        }
        Value::Element(x) => {
            json!({ "expr": e.to_string(), "kind": "element", "value": x.to_string(), "element": tj::element_to_json(x) })
        }
    };
    Ok(Output::report(true, &body))
}

fn verify(a: VerifyArgs, seed_override: Option<u64>) -> Output {
    let seed = seed_override.unwrap_or(a.seed);
    let kinds: Vec<Campaign> = match a.kind {
        VerifyKind::Fi => vec![Campaign::Fi],
        VerifyKind::Leibniz => vec![Campaign::Leibniz],
        VerifyKind::Skew => vec![Campaign::Skew],
        VerifyKind::Nambu => vec![Campaign::Nambu],
        VerifyKind::Product => vec![Campaign::Product],
        VerifyKind::PoissonAll => Campaign::ALL.to_vec(),
    };
    let reports: Vec<_> = kinds
        .into_iter()
        .map(|c| sampling::run_campaign(c, seed, a.samples, a.window, a.workers))
        .collect();
    let passed = reports.iter().all(|r| r.passed);
    let body = if reports.len() == 1 {
        serde_json::to_value(&reports[0]).expect("report")
    } else {
        json!({ "passed": passed, "reports": reports })
    };
    Output::report(passed, &body)
}

fn model_scan(z: &str, window: i64) -> Result<Output, Error> {
    let z: Scalar = z.parse()?;
    let alg = W3::new(z.clone());
    let hit = models::w3_fi_scan(&z, window);
    let witness = hit.map(|q| {
        let e: Vec<_> = q.iter().map(|b| trilie::Combination::basis(*b)).collect();
        let residual = alg.fi_residual(&e[0], &e[1], &e[2], &e[3], &e[4]);
        json!({
            "quintuple": q.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "residual": residual.to_string(),
        })
    });
    let body = json!({
        "model": "w3",
        "z": z.to_string(),
        "window": window,
        "passed": witness.is_none(),
        "counterexample": witness,
    });
    Ok(Output::report(hit.is_none(), &body))
}

fn embed(a: EmbedArgs) -> Output {
    let kind = ModelKind::from(a.model);
    match a.action {
        EmbedAction::Check => {
            let spec = match (kind, a.literal, a.offset) {
                (ModelKind::Winf, _, Some(off)) => EmbeddingSpec::winf(off),
                (ModelKind::Winf, true, None) => EmbeddingSpec::winf(HalfInt::HALF),
                (ModelKind::W3, true, _) => EmbeddingSpec::w3_literal_plus(),
                (k, _, _) => EmbeddingSpec::certified_default(k),
            };
            let r = embeddings::hom_check(&spec, a.window);
            Output::report(r.passed, &serde_json::to_value(&r).expect("report"))
        }
        EmbedAction::Resolve => {
            let found = embeddings::resolve_conventions(kind, a.window);
            let params: Vec<_> = found.iter().map(|s| s.parameters()).collect();
            let mut body = json!({
                "model": kind.to_string(),
                "window": a.window,
                "certified": params,
                "count": found.len(),
            });
            if kind == ModelKind::W3 {
                let classes: Vec<Vec<String>> = embeddings::negation_classes(&found)
                    .iter()
                    .map(|c| c.iter().map(embeddings::describe).collect())
                    .collect();
                body["negation_classes"] = json!(classes);
            }
            Output::report(!found.is_empty(), &body)
        }
    }
}

fn index3(v: &[HalfInt]) -> BasisIndex {
    BasisIndex::new(v[0], v[1], v[2])
}

fn structure_cmd(s: StructureCmd) -> Result<Output, Error> {
    Ok(match s {
        StructureCmd::Reach { indices } => {
            let (s, t) = (index3(&indices[..3]), index3(&indices[3..]));
            match structure::reach(s, t) {
                Ok(c) => {
                    let ok = c.verify();
                    Output::report(
                        ok,
                        &serde_json::to_value(tj::certificate_to_json(&c)).expect("json"),
                    )
                }
                Err(e @ Error::NoCertificate { .. }) => {
                    let mut body = json!({
                        "source": tj::index_to_json(&s),
                        "target": tj::index_to_json(&t),
                        "error": e.to_string(),
                    });
                    if structure::outside_bracket_image(&t) {
                        body["reason"] = json!("the target index never occurs as a bracket output");
                    }
                    Output::report(false, &body)
                }
                Err(e) => return Err(e),
            }
        }
        StructureCmd::Reduce { expr } => {
            let u = Coset::new(expr::eval(&expr)?.into_element());
            let rounds = structure::reduce_to_single(&u)?;
            let body = json!({
                "input": u.representative().to_string(),
                "rounds": rounds.iter().map(tj::reduction_to_json).collect::<Vec<_>>(),
                "result": rounds.last().map(|r| r.result.representative().to_string()).unwrap_or_else(|| u.representative().to_string()),
            });
            Output::report(true, &body)
        }
        StructureCmd::Decompose { l, m, r } => {
            let idx = BasisIndex::new(l, m, r);
            let w = structure::decompose(&idx);
            let ok = w.evaluate() == basis(idx);
            let word: serde_json::Map<String, Json> = w
                .nonzero()
                .into_iter()
                .map(|(g, e)| (g.to_string(), json!(e)))
                .collect();
            Output::report(
                ok,
                &json!({ "index": idx.to_string(), "word": word, "verified": ok }),
            )
        }
        StructureCmd::Weights { t, i, l, m, r } => {
            let idx = BasisIndex::new(l, m, r);
            let w = structure::weight_of(t, i, &idx);
            let direct = structure::weight_operator(t, i, &idx);
            let ok = direct == basis(idx).scale(&w);
            Output::report(
                ok,
                &json!({ "index": idx.to_string(), "t": t.to_string(), "i": i.to_string(), "weight": w.to_string(), "direct": direct.to_string(), "matches": ok }),
            )
        }
        StructureCmd::HCheck { window } => {
            let r = structure::h_closure_checks(window);
            Output::report(r.passed, &serde_json::to_value(&r).expect("report"))
        }
    })
}

fn derivation(a: DerivationArgs, seed_override: Option<u64>) -> Result<Output, Error> {
    let text = std::fs::read_to_string(&a.input)
        .map_err(|e| Error::Json(format!("cannot read {}: {e}", a.input.display())))?;
    let d: Derivation = tj::parse_derivation(&text)?;
    Ok(match a.action {
        DerivationAction::CheckGd => {
            let r = derivations::gd_check(&d);
            let printed = derivations::gd_check_as_printed(&d);
            let body = json!({
                "satisfied": r.satisfied,
                "violated_conditions": r.violated_conditions,
                "as_printed": printed,
                "obstruction": derivations::obstruction(&d).to_string(),
            });
            Output::report(r.satisfied, &body)
        }
        DerivationAction::Residual => {
            let seed = seed_override.unwrap_or(a.seed);
            let mut nonzero = Vec::new();
            if let Some(t) = derivations::violation_witness(&d) {
                let res = derivations::bracket_derivation_residual(&d, &t[0], &t[1], &t[2]);
                nonzero.push(residual_json(None, &t, &res));
            }
            for k in 0..a.samples {
                let mut rng = sampling::rng_for(seed, k);
                let t: [Element; 3] =
                    std::array::from_fn(|_| basis(sampling::random_index(&mut rng, a.window)));
                let res = derivations::bracket_derivation_residual(&d, &t[0], &t[1], &t[2]);
                if !res.is_zero() {
                    nonzero.push(residual_json(Some(k), &t, &res));
                }
            }
            let passed = nonzero.is_empty();
            let body = json!({
                "seed": seed,
                "samples": a.samples,
                "window": a.window.to_string(),
                "passed": passed,
                "nonzero_count": nonzero.len(),
                "nonzero": nonzero.into_iter().take(16).collect::<Vec<_>>(),
            });
            Output::report(passed, &body)
        }
    })
}

fn residual_json(sample: Option<u64>, t: &[Element; 3], res: &Element) -> Json {
    json!({
        "sample": sample,
        "triple": t.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "residual": res.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Output {
        run(std::iter::once("trilie").chain(args.iter().copied()), None)
    }

    #[test]
    fn eval_plain() {
        let o = go(&["eval", "--plain", "[L[0,1;1], L[0,1;3], L[1,0;-2]]"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "2*L[0,1;2]\n"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(go(&["eval", "L[1,"]).code, EXIT_USAGE);
        assert_eq!(go(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(go(&["verify", "fi", "--window", "1/3"]).code, EXIT_USAGE);
        assert_eq!(go(&["--help"]).code, EXIT_PASS);
    }

    #[test]
    fn decompose_word() {
        let o = go(&["structure", "decompose", "1", "0", "0"]);
        assert_eq!(o.code, 0);
        let v: Json = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["word"], json!({ "L[1/2,0;0]": 2 }));
        let o = go(&["structure", "decompose", "-3/2", "0", "-1"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let o = go(&["structure", "reach", "1", "-1/2", "0", "-1", "-1", "0"]);
        assert_eq!(o.code, EXIT_VIOLATION, "{}", o.stderr);
        let o = go(&[
            "structure",
            "weights",
            "--t",
            "-1/2",
            "--i",
            "3",
            "1",
            "-2",
            "0",
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
    }

    #[test]
    fn env_seed_overrides() {
        let a = run(
            ["trilie", "verify", "skew", "--seed", "1", "--samples", "20"],
            Some("9"),
        );
        let b = run(
            ["trilie", "verify", "skew", "--seed", "9", "--samples", "20"],
            None,
        );
        assert_eq!(a, b);
        assert_eq!(
            run(["trilie", "verify", "skew"], Some("x")).code,
            EXIT_USAGE
        );
    }
}
