//! Subcommands that analyse one matrix, generic over the backend.

use maxvis::io::{format_scalar, parse_vector, ParsedVector};
use maxvis::{
    check_visualization, critical_structure, dimensions, eigencone_basis, kleene_star, linear_rank,
    preserving_scaling_check, quotient_matrix, star_block_structure, strict_visualizer,
    subeigencone_basis, visualize_assignment, Error, Exact, LogReal, MaxMatrix, Method,
    Preservation, Scalar, ScalingVector, Visualization,
};

use crate::report::{self, Report};
use crate::CliError;

#[derive(Debug, Clone)]
pub enum Task {
    Lambda,
    Star,
    Critical,
    Basis { eigen: bool },
    Dims,
    Rank,
    Check,
    Visualize { method: Method },
    Preserve { scaling: ParsedVector },
    Quotient,
    Assign,
}

/// Conversion of a parsed vector into a backend.
pub trait FromParsed: Scalar {
    fn from_parsed(v: ParsedVector) -> Result<Vec<Self>, CliError>;
}

impl FromParsed for Exact {
    fn from_parsed(v: ParsedVector) -> Result<Vec<Self>, CliError> {
        match v {
            ParsedVector::Exact(values) => Ok(values),
            ParsedVector::Float(_) => Err(CliError::Usage(
                "a plus-domain scaling needs --mode float".to_string(),
            )),
        }
    }
}

impl FromParsed for LogReal {
    fn from_parsed(v: ParsedVector) -> Result<Vec<Self>, CliError> {
        Ok(match v {
            ParsedVector::Exact(values) => values
                .iter()
                .map(|e| LogReal::from_rational(e.as_ratio().expect("parsed values are rational")))
                .collect(),
            ParsedVector::Float(values) => values,
        })
    }
}

pub fn run<S: FromParsed>(task: Task, a: &MaxMatrix<S>, report: &mut Report) -> Result<(), CliError> {
    match task {
        Task::Lambda => {
            report.lambda = Some(format_scalar(&maxvis::max_cycle_geometric_mean(a)?));
        }
        Task::Star => {
            report.star = Some(report::matrix(&kleene_star(a)?.star));
        }
        Task::Critical => {
            let spec = critical_structure(a)?;
            report.lambda = Some(format_scalar(&spec.lambda));
            report.critical = Some(report::Critical {
                nodes: spec.critical_nodes.clone(),
                edges: spec.critical_edges.iter().map(|&(i, j)| [i, j]).collect(),
                critical_components: spec.critical_components.clone(),
                components: spec.components.clone(),
                representatives: spec.representatives.clone(),
                non_critical: spec.non_critical.clone(),
            });
        }
        Task::Basis { eigen } => {
            let basis = if eigen { eigencone_basis(a)? } else { subeigencone_basis(a)? };
            report.basis = Some(report::Basis {
                kind: if eigen { "eigen" } else { "subeigen" }.to_string(),
                vectors: basis.generators.iter().map(report::vector).collect(),
                source_columns: basis.source_columns,
            });
        }
        Task::Dims => {
            let d = dimensions(a)?;
            report.dimensions = Some(report::Dimensions {
                maxdim_eigencone: d.maxdim_eigencone,
                maxdim_subeigencone: d.maxdim_subeigencone,
                linear_hull_dim: d.linear_hull_dim,
                linear_rank_star: d.linear_rank_star,
            });
        }
        Task::Rank => {
            let star = critical_structure(a)?.star;
            report.rank = Some(report::Rank { matrix: linear_rank(a)?, star: linear_rank(&star)? });
        }
        Task::Check => {
            let status = check_visualization(a)?;
            report.lambda = Some(format_scalar(&critical_structure(a)?.lambda));
            report.visualization = Some(status_report(&status));
        }
        Task::Visualize { method } => {
            let x = strict_visualizer(a, &method)?;
            let scaled = a.diag_similarity(&x)?;
            report.visualization = Some(status_report(&check_visualization(&scaled)?));
            report.scaling = Some(report::Scaling {
                method: method_name(&method).to_string(),
                vector: report::vector(x.as_vector()),
                scaled: report::matrix(&scaled),
            });
        }
        Task::Preserve { scaling } => {
            let x = ScalingVector::user(S::from_parsed(scaling)?)?;
            let verdict = preserving_scaling_check(a, &x)?;
            report.preservation = Some(
                match verdict {
                    Preservation::Breaks => "breaks",
                    Preservation::PreservesVisualized => "preserves_visualized",
                    Preservation::MakesStrict => "makes_strict",
                }
                .to_string(),
            );
            let scaled = a.diag_similarity(&x)?;
            report.scaling = Some(report::Scaling {
                method: "user".to_string(),
                vector: report::vector(x.as_vector()),
                scaled: report::matrix(&scaled),
            });
        }
        Task::Quotient => {
            let q = quotient_matrix(a)?;
            report.quotient = Some(report::Quotient {
                m: q.m,
                alpha: report::matrix(&q.alpha),
                components: q.component_nodes.clone(),
                star_block_structure: star_block_structure(a)?,
            });
        }
        Task::Assign => {
            let v = visualize_assignment(a)?;
            report.assignment = Some(report::Assignment {
                permutation: v.pi.map.clone(),
                weight: format_scalar(&v.pi.weight),
                x: report::vector(v.x.as_vector()),
                row_scaling: report::values(&v.row_scaling),
                strongly_definite_form: report::matrix(&v.strongly_definite_form),
                result: report::matrix(&v.result),
            });
        }
    }
    Ok(())
}

fn status_report<S: Scalar>(s: &maxvis::VisualizationStatus<S>) -> report::Status {
    report::Status {
        status: match s.status {
            Visualization::NotVisualized => "not_visualized",
            Visualization::Visualized => "visualized",
            Visualization::StrictlyVisualized => "strictly_visualized",
        }
        .to_string(),
        witnesses: s
            .witnesses
            .iter()
            .map(|w| report::Witness { row: w.row, col: w.col, value: format_scalar(&w.value) })
            .collect(),
        margin: s.margin.as_ref().map(format_scalar),
    }
}

fn method_name(m: &Method) -> &'static str {
    match m {
        Method::ColumnSum => "sum",
        Method::LogConvex(_) => "logconvex",
        Method::Perron => "perron",
    }
}

/// Log-convex weights from `--weights`, or equal weights `1/n`.
pub fn weights(given: Option<&[String]>, n: usize) -> Result<Method, CliError> {
    let text = match given {
        Some(w) => format!("{}\n{}", w.len(), w.join(" ")),
        None => format!("{n}\n{}", vec![format!("1/{n}"); n].join(" ")),
    };
    match parse_vector(&text).map_err(|e| CliError::Usage(format!("--weights: {e}")))? {
        ParsedVector::Exact(values) => Ok(Method::LogConvex(
            values.iter().map(|v| v.as_ratio().expect("parsed values are rational").clone()).collect(),
        )),
        ParsedVector::Float(_) => Err(CliError::Lib(Error::InvalidWeights("weights must be rational".into()))),
    }
}
