//! The JSON document printed on standard output.
//!
//! Every scalar is a string: `p/q` (or a radical expression) in exact mode,
//! a 17-significant-digit decimal in float mode. Node indices are 0-based.

use maxvis::io::format_scalar;
use maxvis::{MaxMatrix, MaxVector, Scalar};
use serde::Serialize;

pub type Matrix = Vec<Vec<String>>;

#[derive(Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub mode: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub star: Option<Matrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical: Option<Critical>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Basis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimensions: Option<Dimensions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<Rank>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub visualization: Option<Status>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaling: Option<Scaling>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preservation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<Quotient>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Assignment>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Oracle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Serialize)]
pub struct Critical {
    pub nodes: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
    pub critical_components: Vec<Vec<usize>>,
    /// Components of the closure digraph: critical ones plus non-critical
    /// singletons.
    pub components: Vec<Vec<usize>>,
    pub representatives: Vec<usize>,
    pub non_critical: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct Basis {
    pub kind: String,
    pub vectors: Vec<Vec<String>>,
    pub source_columns: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct Dimensions {
    pub maxdim_eigencone: usize,
    pub maxdim_subeigencone: usize,
    pub linear_hull_dim: usize,
    pub linear_rank_star: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct Rank {
    pub matrix: usize,
    pub star: usize,
}

#[derive(Debug, Serialize)]
pub struct Status {
    pub status: String,
    pub witnesses: Vec<Witness>,
    pub margin: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct Scaling {
    pub method: String,
    pub vector: Vec<String>,
    pub scaled: Matrix,
}

#[derive(Debug, Serialize)]
pub struct Quotient {
    pub m: usize,
    pub alpha: Matrix,
    pub components: Vec<Vec<usize>>,
    pub star_block_structure: bool,
}

#[derive(Debug, Serialize)]
pub struct Assignment {
    pub permutation: Vec<usize>,
    pub weight: String,
    pub x: Vec<String>,
    pub row_scaling: Vec<String>,
    pub strongly_definite_form: Matrix,
    pub result: Matrix,
}

#[derive(Debug, Serialize)]
pub struct Oracle {
    pub stage: String,
    pub trials: usize,
    pub agreements: usize,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Serialize)]
pub struct Mismatch {
    pub trial: usize,
    /// The offending matrix in the input file format.
    pub matrix: String,
    pub fast: String,
    pub oracle: String,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub seconds: f64,
}

pub fn matrix<S: Scalar>(a: &MaxMatrix<S>) -> Matrix {
    a.rows().map(|row| row.iter().map(format_scalar).collect()).collect()
}

pub fn vector<S: Scalar>(v: &MaxVector<S>) -> Vec<String> {
    values(v.as_slice())
}

pub fn values<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}
