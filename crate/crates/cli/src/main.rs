//! Command-line front end: parse algebra documents, dispatch to the library,
//! and emit machine-readable (JSON) or prose reports.
//!
//! Exit status: 0 on success, 1 when a check-style command reaches a
//! mathematical verdict of "fails", 2 on input errors.

mod report;

use std::fmt;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::*;
use ternalg::algebras::{builtin_example, builtin_names, check_identity, IdentityKind};
use ternalg::cochain::{cohomology, derivations, matrixize, Cochain, Theory};
use ternalg::exactmath::{FieldKind, Scalar};
use ternalg::format::{emit_algebra, emit_cochain, parse_algebra, parse_cochain, AlgebraDocument};
use ternalg::nogo::{solve, weak_delta3_coefficients, weak_inversion, AnsatzCase};
use ternalg::takhtajan::{
    assoc_type_analysis, lift_cochain, recovery_check, RecoveryOutcome, TernaryIdentityClass,
};

#[derive(Parser)]
#[command(
    name = "ternalg",
    about = "Exact-arithmetic toolkit for ternary and binary algebras given by structure constants",
    version
)]
struct Cli {
    /// Report format on standard output.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check a defining identity on an algebra file by exhaustive basis
    /// enumeration. Exits 1 when the identity fails.
    Check {
        /// Identity to check: total, weak-total, partial, alternate-first,
        /// alternate-second, symmetric, skew-symmetric, commutative,
        /// ternary-lie-s5, ternary-lie-s3, nambu, lie-triple,
        /// binary-associative, binary-skew.
        #[arg(long)]
        identity: String,
        file: String,
    },
    /// Cohomology dimensions (dim Z, dim B, dim H) at one level.
    Cohomology {
        /// Theory: partial, weak, hochschild, or skew.
        #[arg(long)]
        theory: String,
        /// Level p (coboundary from degree p-1 to degree p cochains).
        #[arg(long)]
        p: usize,
        file: String,
    },
    /// Basis of the derivation space (kernel of the level-1 coboundary).
    Derivations { file: String },
    /// Check d·d = 0 in exact matrix form for levels 1..=pmax. Exits 1 when
    /// some product is nonzero.
    VerifyComplex {
        #[arg(long)]
        theory: String,
        #[arg(long, default_value_t = 2)]
        pmax: usize,
        file: String,
    },
    /// Build and solve a degree-3 extension obstruction system.
    Nogo {
        /// Case: ternary-partial, ternary-alt1, ternary-alt2, binary-skew,
        /// or weak-sanity (the control run that must find a solution).
        #[arg(long)]
        case: String,
    },
    /// Tensor-square constructions.
    Takhtajan(TakhtajanArgs),
    /// List or emit the built-in example algebras.
    Examples {
        #[command(subcommand)]
        which: ExamplesCommand,
    },
}

#[derive(Args)]
struct TakhtajanArgs {
    /// analyze: solve the associative-type conditions on (alpha, lambda);
    /// lift: lift a ternary cochain to the tensor square;
    /// recover: compare the Hochschild route with the weak coboundary.
    #[arg(long, value_enum)]
    mode: TakhtajanMode,
    /// Scalar parameter for `lift`, e.g. "0", "1/2", "i".
    #[arg(long, default_value = "0")]
    alpha: String,
    /// Identity class for `analyze`: total or partial.
    #[arg(long, default_value = "total")]
    identity: String,
    /// Field for `analyze`: Q or Q(i).
    #[arg(long, default_value = "Q")]
    field: String,
    /// Cochain document for `lift`; defaults to the algebra's own
    /// multiplication as a degree-1 cochain.
    #[arg(long)]
    cochain: Option<String>,
    /// Highest level for `recover`.
    #[arg(long, default_value_t = 2)]
    pmax: usize,
    /// Algebra document (`lift` and `recover`).
    file: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TakhtajanMode {
    Analyze,
    Lift,
    Recover,
}

#[derive(Subcommand)]
enum ExamplesCommand {
    /// Print the accepted example names.
    List,
    /// Emit an example as an algebra document on standard output.
    Emit { name: String },
}

/// Input-validation error: anything that prevents a command from computing.
#[derive(Debug)]
struct InputError(String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl InputError {
    fn new(msg: impl Into<String>) -> Self {
        InputError(msg.into())
    }
}

fn fail(msg: impl Into<String>) -> InputError {
    InputError::new(msg)
}

/// Size caps, overridable through the environment.
struct Caps {
    nmax: usize,
    pmax: usize,
}

fn caps() -> Result<Caps, InputError> {
    let read = |name: &str, default: usize| -> Result<usize, InputError> {
        match std::env::var(name) {
            Err(_) => Ok(default),
            Ok(text) => text
                .parse::<usize>()
                .map_err(|_| fail(format!("{name} must be a positive integer, got `{text}`"))),
        }
    };
    Ok(Caps {
        nmax: read("TERNALG_NMAX", 4)?,
        pmax: read("TERNALG_PMAX", 3)?,
    })
}

fn load_algebra(path: &str) -> Result<AlgebraDocument, InputError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| fail(format!("cannot read `{path}`: {e}")))?;
    let doc = parse_algebra(&text).map_err(|e| fail(format!("{path}: {e}")))?;
    let caps = caps()?;
    if doc.algebra.dim() > caps.nmax {
        return Err(fail(format!(
            "{path}: dimension {} exceeds the cap {} (set TERNALG_NMAX to raise it)",
            doc.algebra.dim(),
            caps.nmax
        )));
    }
    Ok(doc)
}

fn parse_theory(name: &str) -> Result<Theory, InputError> {
    match name {
        "partial" => Ok(Theory::TernaryPartial),
        "weak" => Ok(Theory::TernaryWeak),
        "hochschild" => Ok(Theory::BinaryAssociative),
        "skew" => Ok(Theory::BinarySkew),
        other => Err(fail(format!(
            "unknown theory `{other}` (expected partial, weak, hochschild, or skew)"
        ))),
    }
}

fn check_level_cap(p: usize, what: &str) -> Result<(), InputError> {
    let caps = caps()?;
    if p == 0 {
        return Err(fail(format!("{what} must be at least 1")));
    }
    if p > caps.pmax {
        return Err(fail(format!(
            "{what} {p} exceeds the cap {} (set TERNALG_PMAX to raise it)",
            caps.pmax
        )));
    }
    Ok(())
}

fn identity_of_theory(theory: Theory) -> IdentityKind {
    match theory {
        Theory::TernaryPartial => IdentityKind::PartiallyAssociative,
        Theory::TernaryWeak => IdentityKind::WeakTotallyAssociative,
        Theory::BinaryAssociative => IdentityKind::BinaryAssociative,
        Theory::BinarySkew => IdentityKind::BinarySkewAssociative,
    }
}

fn cochain_entries(c: &Cochain) -> Vec<CochainEntryOut> {
    c.nonzero_entries()
        .into_iter()
        .map(|(inputs, output, value)| CochainEntryOut {
            inputs,
            output,
            c: value.to_string(),
        })
        .collect()
}

struct Outcome {
    body: String,
    status: u8,
}

fn render<R: Serialize + TextRender>(report: &R, format: OutputFormat, status: u8) -> Outcome {
    let body = match format {
        OutputFormat::Json => serde_json::to_string_pretty(report).expect("reports serialize"),
        OutputFormat::Text => report.text(),
    };
    Outcome { body, status }
}

fn run_check(identity: &str, file: &str, format: OutputFormat) -> Result<Outcome, InputError> {
    let kind = IdentityKind::from_str(identity)
        .map_err(|_| fail(format!("unknown identity `{identity}`")))?;
    let doc = load_algebra(file)?;
    let report = check_identity(&doc.algebra, kind).map_err(|e| fail(e.to_string()))?;
    let out = CheckReport {
        command: "check",
        input: file.to_string(),
        identity: kind.name().to_string(),
        dim: doc.algebra.dim(),
        arity: doc.algebra.arity(),
        holds: report.holds,
        counterexample: report.counterexample.map(|ce| CounterexampleOut {
            tuple: ce.tuple,
            defect: vector_strings(&ce.defect),
        }),
    };
    let status = if out.holds { 0 } else { 1 };
    Ok(render(&out, format, status))
}

fn run_cohomology(
    theory: &str,
    p: usize,
    file: &str,
    format: OutputFormat,
) -> Result<Outcome, InputError> {
    let theory = parse_theory(theory)?;
    check_level_cap(p, "--p")?;
    let doc = load_algebra(file)?;
    let report = cohomology(&doc.algebra, theory, p).map_err(|e| fail(e.to_string()))?;
    let out = CohomologyOut {
        command: "cohomology",
        input: file.to_string(),
        theory: theory.name().to_string(),
        p,
        dim_cocycles: report.dim_cocycles,
        dim_coboundaries: report.dim_coboundaries,
        dim_h: report.dim_h,
    };
    Ok(render(&out, format, 0))
}

fn run_derivations(file: &str, format: OutputFormat) -> Result<Outcome, InputError> {
    let doc = load_algebra(file)?;
    let basis = derivations(&doc.algebra).map_err(|e| fail(e.to_string()))?;
    let out = DerivationsReport {
        command: "derivations",
        input: file.to_string(),
        dimension: basis.len(),
        basis: basis.iter().map(cochain_entries).collect(),
    };
    Ok(render(&out, format, 0))
}

fn run_verify_complex(
    theory: &str,
    pmax: usize,
    file: &str,
    format: OutputFormat,
) -> Result<Outcome, InputError> {
    let theory = parse_theory(theory)?;
    check_level_cap(pmax, "--pmax")?;
    let doc = load_algebra(file)?;
    let kind = identity_of_theory(theory);
    let identity_holds = check_identity(&doc.algebra, kind)
        .map_err(|e| fail(e.to_string()))?
        .holds;
    let mut levels = Vec::new();
    let mut undefined = Vec::new();
    let mut all_zero = true;
    for p in 1..=pmax {
        let defined = theory.max_level().is_none_or(|max| p < max);
        if !defined {
            undefined.push(format!(
                "level {p}: no level-{} operator exists for this theory",
                p + 1
            ));
            continue;
        }
        let d_lo = matrixize(&doc.algebra, theory, p).map_err(|e| fail(e.to_string()))?;
        let d_hi = matrixize(&doc.algebra, theory, p + 1).map_err(|e| fail(e.to_string()))?;
        let product = d_hi.mul(&d_lo).expect("chained coboundaries compose");
        let is_zero = product.is_zero();
        all_zero &= is_zero;
        levels.push(LevelVerdict {
            p,
            rows: d_hi.rows(),
            cols: d_lo.cols(),
            product_is_zero: is_zero,
        });
    }
    let out = VerifyComplexReport {
        command: "verify-complex",
        input: file.to_string(),
        theory: theory.name().to_string(),
        identity: kind.name().to_string(),
        identity_holds,
        levels,
        undefined_levels: undefined,
        all_zero,
    };
    let status = if all_zero { 0 } else { 1 };
    Ok(render(&out, format, status))
}

fn run_nogo(case: &str, format: OutputFormat) -> Result<Outcome, InputError> {
    let verdict = match case {
        "weak-sanity" => weak_inversion(),
        other => {
            let case = AnsatzCase::from_str(other).map_err(InputError)?;
            solve(case)
        }
    };
    let verdict_text = if case == "weak-sanity" {
        let witness = weak_delta3_coefficients();
        let solves = verdict
            .system
            .matrix
            .apply(&witness)
            .expect("witness length matches")
            .iter()
            .all(Scalar::is_zero);
        format!(
            "control run: solution space has dimension {}; the general weak level-3 \
             coefficient pattern (1,0,1,-1,0,1,0,-1) {} it",
            verdict.dimension,
            if solves { "solves" } else { "DOES NOT solve" }
        )
    } else if verdict.extension_exists {
        "a nontrivial degree-3 extension exists".to_string()
    } else {
        "no nontrivial degree-3 coboundary exists".to_string()
    };
    let out = NogoReport {
        command: "nogo",
        case: case.to_string(),
        coefficients: verdict.system.matrix.cols(),
        variables: if verdict.system.matrix.cols() == 8 {
            7
        } else {
            4
        },
        constraints: verdict
            .system
            .rows
            .iter()
            .map(|r| ConstraintOut {
                combination: r.combination_string(),
                term: r.basis_term.to_string(),
            })
            .collect(),
        matrix: matrix_rows(&verdict.system.matrix),
        nullspace_dimension: verdict.dimension,
        nullspace_basis: verdict
            .nullspace
            .iter()
            .map(|v| vector_strings(v))
            .collect(),
        verdict: verdict_text,
    };
    Ok(render(&out, format, 0))
}

fn run_takhtajan(args: &TakhtajanArgs, format: OutputFormat) -> Result<Outcome, InputError> {
    match args.mode {
        TakhtajanMode::Analyze => {
            let identity = match args.identity.as_str() {
                "total" => TernaryIdentityClass::Total,
                "partial" => TernaryIdentityClass::Partial,
                other => return Err(fail(format!("unknown identity class `{other}`"))),
            };
            let field: FieldKind = args
                .field
                .parse()
                .map_err(|_| fail(format!("unknown field `{}`", args.field)))?;
            let report = assoc_type_analysis(identity, field).map_err(|e| fail(e.to_string()))?;
            let out = AnalyzeReport {
                command: "takhtajan",
                mode: "analyze",
                identity: identity.name().to_string(),
                field: field.to_string(),
                constraints: report.constraints.iter().map(|p| p.to_string()).collect(),
                nondegeneracy: report.nonvanishing.iter().map(|p| p.to_string()).collect(),
                solutions: report
                    .solutions
                    .iter()
                    .map(|(a, l)| SolutionOut {
                        alpha: a.to_string(),
                        lambda: l.to_string(),
                    })
                    .collect(),
                possible: report.possible(),
            };
            Ok(render(&out, format, 0))
        }
        TakhtajanMode::Lift => {
            let file = args
                .file
                .as_deref()
                .ok_or_else(|| fail("lift mode needs an algebra file"))?;
            let doc = load_algebra(file)?;
            let alpha: Scalar = args
                .alpha
                .parse()
                .map_err(|e| fail(format!("--alpha: {e}")))?;
            if !alpha.lies_in(doc.field) {
                return Err(fail(format!(
                    "--alpha {} does not lie in the document's field {}",
                    alpha, doc.field
                )));
            }
            let base = doc
                .algebra
                .as_ternary()
                .ok_or_else(|| fail("lift mode needs a ternary algebra"))?;
            let phi = match &args.cochain {
                None => Cochain::of_ternary_multiplication(Theory::TernaryWeak, base),
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| fail(format!("cannot read `{path}`: {e}")))?;
                    let cdoc = parse_cochain(&text).map_err(|e| fail(format!("{path}: {e}")))?;
                    if cdoc.cochain.dim() != base.dim() {
                        return Err(fail(format!(
                            "cochain dimension {} does not match algebra dimension {}",
                            cdoc.cochain.dim(),
                            base.dim()
                        )));
                    }
                    if cdoc.cochain.theory().arity() != 3 {
                        return Err(fail("lift mode needs a ternary cochain"));
                    }
                    cdoc.cochain
                }
            };
            let lifted = lift_cochain(&phi, &alpha).map_err(|e| fail(e.to_string()))?;
            let out = LiftReport {
                command: "takhtajan",
                mode: "lift",
                input: file.to_string(),
                alpha: alpha.to_string(),
                base_dim: base.dim(),
                w_dim: base.dim() * base.dim(),
                degree: lifted.degree(),
                entries: cochain_entries(&lifted),
                document: emit_cochain(&lifted, doc.field),
            };
            Ok(render(&out, format, 0))
        }
        TakhtajanMode::Recover => {
            let file = args
                .file
                .as_deref()
                .ok_or_else(|| fail("recover mode needs an algebra file"))?;
            check_level_cap(args.pmax, "--pmax")?;
            let doc = load_algebra(file)?;
            let base = doc
                .algebra
                .as_ternary()
                .ok_or_else(|| fail("recover mode needs a ternary algebra"))?;
            let report = recovery_check(base, args.pmax).map_err(|e| fail(e.to_string()))?;
            let out = RecoverReport {
                command: "takhtajan",
                mode: "recover",
                input: file.to_string(),
                pmax: args.pmax,
                degrees: report
                    .degrees
                    .iter()
                    .map(|d| RecoverDegreeOut {
                        level: d.level,
                        outcome: match d.outcome {
                            RecoveryOutcome::Exact => "exact".to_string(),
                            RecoveryOutcome::SignFlipped => "sign-flipped".to_string(),
                            RecoveryOutcome::Failed => "failed".to_string(),
                        },
                        basis_cochains: d.basis_cochains,
                    })
                    .collect(),
                all_commute: report.all_commute(),
            };
            let status = if report.all_commute() { 0 } else { 1 };
            Ok(render(&out, format, status))
        }
    }
}

fn run_examples(which: &ExamplesCommand, format: OutputFormat) -> Result<Outcome, InputError> {
    match which {
        ExamplesCommand::List => {
            let out = ExamplesListReport {
                command: "examples",
                names: builtin_names().into_iter().map(String::from).collect(),
            };
            Ok(render(&out, format, 0))
        }
        ExamplesCommand::Emit { name } => {
            let algebra = builtin_example(name).map_err(|e| fail(e.to_string()))?;
            // the emitted document is the artifact itself in both formats
            let body = emit_algebra(&algebra, FieldKind::Rational);
            Ok(Outcome { body, status: 0 })
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Check { identity, file } => run_check(identity, file, cli.format),
        Command::Cohomology { theory, p, file } => run_cohomology(theory, *p, file, cli.format),
        Command::Derivations { file } => run_derivations(file, cli.format),
        Command::VerifyComplex { theory, pmax, file } => {
            run_verify_complex(theory, *pmax, file, cli.format)
        }
        Command::Nogo { case } => run_nogo(case, cli.format),
        Command::Takhtajan(args) => run_takhtajan(args, cli.format),
        Command::Examples { which } => run_examples(which, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            println!("{}", outcome.body);
            ExitCode::from(outcome.status)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theory_names_round_trip() {
        for name in ["partial", "weak", "hochschild", "skew"] {
            assert!(parse_theory(name).is_ok());
        }
        assert!(parse_theory("nope").is_err());
    }
}
