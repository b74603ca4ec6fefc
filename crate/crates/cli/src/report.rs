//! Machine-readable report structures and their prose rendering.
//!
//! Every command emits exactly one JSON document on standard output (the
//! default) or the equivalent prose with `--format text`. All scalars are
//! exact strings and all orderings are canonical, so reports are byte-stable
//! across runs.

use serde::Serialize;

use ternalg::exactmath::{ExactMatrix, Scalar};

pub fn matrix_rows(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|c| c.to_string()).collect())
        .collect()
}

pub fn vector_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

#[derive(Serialize)]
pub struct CounterexampleOut {
    pub tuple: Vec<usize>,
    pub defect: Vec<String>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub command: &'static str,
    pub input: String,
    pub identity: String,
    pub dim: usize,
    pub arity: usize,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleOut>,
}

#[derive(Serialize)]
pub struct CohomologyOut {
    pub command: &'static str,
    pub input: String,
    pub theory: String,
    pub p: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_h: usize,
}

#[derive(Serialize)]
pub struct CochainEntryOut {
    pub inputs: Vec<usize>,
    pub output: usize,
    pub c: String,
}

#[derive(Serialize)]
pub struct DerivationsReport {
    pub command: &'static str,
    pub input: String,
    pub dimension: usize,
    pub basis: Vec<Vec<CochainEntryOut>>,
}

#[derive(Serialize)]
pub struct LevelVerdict {
    pub p: usize,
    pub rows: usize,
    pub cols: usize,
    pub product_is_zero: bool,
}

#[derive(Serialize)]
pub struct VerifyComplexReport {
    pub command: &'static str,
    pub input: String,
    pub theory: String,
    pub identity: String,
    pub identity_holds: bool,
    pub levels: Vec<LevelVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub undefined_levels: Vec<String>,
    pub all_zero: bool,
}

#[derive(Serialize)]
pub struct ConstraintOut {
    pub combination: String,
    pub term: String,
}

#[derive(Serialize)]
pub struct NogoReport {
    pub command: &'static str,
    pub case: String,
    pub coefficients: usize,
    pub variables: usize,
    pub constraints: Vec<ConstraintOut>,
    pub matrix: Vec<Vec<String>>,
    pub nullspace_dimension: usize,
    pub nullspace_basis: Vec<Vec<String>>,
    pub verdict: String,
}

#[derive(Serialize)]
pub struct SolutionOut {
    pub alpha: String,
    pub lambda: String,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub command: &'static str,
    pub mode: &'static str,
    pub identity: String,
    pub field: String,
    pub constraints: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub nondegeneracy: Vec<String>,
    pub solutions: Vec<SolutionOut>,
    pub possible: bool,
}

#[derive(Serialize)]
pub struct LiftReport {
    pub command: &'static str,
    pub mode: &'static str,
    pub input: String,
    pub alpha: String,
    pub base_dim: usize,
    pub w_dim: usize,
    pub degree: usize,
    pub entries: Vec<CochainEntryOut>,
    /// The lifted cochain as a document, ready to be written to a file.
    pub document: String,
}

#[derive(Serialize)]
pub struct RecoverDegreeOut {
    pub level: usize,
    pub outcome: String,
    pub basis_cochains: usize,
}

#[derive(Serialize)]
pub struct RecoverReport {
    pub command: &'static str,
    pub mode: &'static str,
    pub input: String,
    pub pmax: usize,
    pub degrees: Vec<RecoverDegreeOut>,
    pub all_commute: bool,
}

#[derive(Serialize)]
pub struct ExamplesListReport {
    pub command: &'static str,
    pub names: Vec<String>,
}

/// Prose rendering for `--format text`.
pub trait TextRender {
    fn text(&self) -> String;
}

impl TextRender for CheckReport {
    fn text(&self) -> String {
        let mut out = format!(
            "check {} against `{}` (dim {}, arity {}): {}",
            self.input,
            self.identity,
            self.dim,
            self.arity,
            if self.holds { "holds" } else { "fails" }
        );
        if let Some(ce) = &self.counterexample {
            out.push_str(&format!(
                "\nfirst failing basis tuple: {:?}, defect vector: [{}]",
                ce.tuple,
                ce.defect.join(", ")
            ));
        }
        out
    }
}

impl TextRender for CohomologyOut {
    fn text(&self) -> String {
        format!(
            "cohomology of {} ({} theory) at p = {}:\n  dim Z^{} = {}\n  dim B^{} = {}\n  dim H^{} = {}",
            self.input,
            self.theory,
            self.p,
            self.p,
            self.dim_cocycles,
            self.p,
            self.dim_coboundaries,
            self.p,
            self.dim_h
        )
    }
}

fn entries_line(entries: &[CochainEntryOut]) -> String {
    if entries.is_empty() {
        return "0".to_string();
    }
    entries
        .iter()
        .map(|e| format!("{:?} -> e{} : {}", e.inputs, e.output, e.c))
        .collect::<Vec<_>>()
        .join(", ")
}

impl TextRender for DerivationsReport {
    fn text(&self) -> String {
        let mut out = format!(
            "derivation space of {}: dimension {}",
            self.input, self.dimension
        );
        for (i, basis) in self.basis.iter().enumerate() {
            out.push_str(&format!("\n  d{}: {}", i + 1, entries_line(basis)));
        }
        out
    }
}

impl TextRender for VerifyComplexReport {
    fn text(&self) -> String {
        let mut out = format!(
            "complex verification for {} ({} theory); defining identity `{}` {}",
            self.input,
            self.theory,
            self.identity,
            if self.identity_holds {
                "holds"
            } else {
                "FAILS"
            }
        );
        for level in &self.levels {
            out.push_str(&format!(
                "\n  level {}: d^{}·d^{} ({}x{} times previous) {}",
                level.p,
                level.p + 1,
                level.p,
                level.rows,
                level.cols,
                if level.product_is_zero {
                    "= 0"
                } else {
                    "≠ 0"
                }
            ));
        }
        for msg in &self.undefined_levels {
            out.push_str(&format!("\n  {msg}"));
        }
        out.push_str(if self.all_zero {
            "\nall products vanish exactly"
        } else {
            "\nsome product is nonzero"
        });
        out
    }
}

impl TextRender for NogoReport {
    fn text(&self) -> String {
        let mut out = format!(
            "obstruction system for case {}: {} rows on {} coefficients over {} variables",
            self.case,
            self.constraints.len(),
            self.coefficients,
            self.variables
        );
        for c in &self.constraints {
            out.push_str(&format!("\n  ({})  {}", c.combination, c.term));
        }
        out.push_str(&format!(
            "\nnullspace dimension: {}\n{}",
            self.nullspace_dimension, self.verdict
        ));
        out
    }
}

impl TextRender for AnalyzeReport {
    fn text(&self) -> String {
        let mut out = format!(
            "associative-type analysis ({} identity, field {}):\nconstraints:",
            self.identity, self.field
        );
        for c in &self.constraints {
            out.push_str(&format!("\n  {c} = 0"));
        }
        for n in &self.nondegeneracy {
            out.push_str(&format!("\n  {n} ≠ 0"));
        }
        if self.solutions.is_empty() {
            out.push_str("\nno solutions: the construction is impossible over this field");
        } else {
            out.push_str("\nsolutions (alpha, lambda):");
            for s in &self.solutions {
                out.push_str(&format!("\n  ({}, {})", s.alpha, s.lambda));
            }
        }
        out
    }
}

impl TextRender for LiftReport {
    fn text(&self) -> String {
        format!(
            "lift of a degree-{} cochain from dim {} to the tensor square (dim {}), alpha = {}:\n{}",
            self.degree, self.base_dim, self.w_dim, self.alpha, self.document
        )
    }
}

impl TextRender for RecoverReport {
    fn text(&self) -> String {
        let mut out = format!(
            "recovery check for {} up to level {}:",
            self.input, self.pmax
        );
        for d in &self.degrees {
            out.push_str(&format!(
                "\n  level {}: {} ({} basis cochains)",
                d.level, d.outcome, d.basis_cochains
            ));
        }
        out.push_str(if self.all_commute {
            "\nthe Hochschild route commutes with the weak coboundary"
        } else {
            "\ncommutation FAILS at some level"
        });
        out
    }
}

impl TextRender for ExamplesListReport {
    fn text(&self) -> String {
        let mut out = String::from("built-in examples:");
        for n in &self.names {
            out.push_str(&format!("\n  {n}"));
        }
        out
    }
}
