//! Catalog-wide dichotomy sweeps: build every catalog group, build its word
//! graph, resolve the gap constant (fixed or the empirical catalog
//! supremum), and collect one row per (group, m, n, policy).

use chrono::{SecondsFormat, Utc};
use thiserror::Error;

use crate::bounds::{BoundsError, GapConstant};
use crate::catalog::{default_catalog, CatalogError};
use crate::graph::WordGraph;
use crate::property::dichotomy_rows;
use crate::report::{SweepMetadata, SweepReport};
use crate::word::Word;

/// Sweep ceilings. The m-subset enumeration and the per-group work grow
/// quickly, so exceeding these is an error rather than a silent truncation.
pub const MAX_SWEEP_ORDER: usize = 512;
pub const MAX_SWEEP_M: usize = 4;

#[derive(Error, Debug)]
pub enum SweepError {
    #[error("sweep cap exceeded: {0}")]
    CapExceeded(String),
    #[error(
        "empirical gap constant unavailable: the word is an identity in every catalog group"
    )]
    EmpiricalUnavailable,
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// How to obtain the gap constant for a sweep.
#[derive(Clone, Debug)]
pub enum GammaSpec {
    Fixed(GapConstant),
    /// Use the largest satisfaction probability observed over the catalog
    /// groups in which the word is not an identity.
    Empirical,
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub word: Word,
    pub gamma: GammaSpec,
    pub max_order: usize,
    pub m_max: usize,
    pub n_max: usize,
}

/// Largest satisfaction probability over the graphs whose word is not an
/// identity (arc count > 0); `None` when the word is an identity everywhere.
pub fn empirical_gap<'a>(
    graphs: impl IntoIterator<Item = &'a WordGraph>,
) -> Option<GapConstant> {
    graphs
        .into_iter()
        .filter(|g| g.arc_count() > 0)
        .map(|g| g.satisfaction_probability())
        .max()
        .map(|p| GapConstant::empirical(p).expect("probabilities below one are valid gaps"))
}

/// Run a full catalog sweep.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport, SweepError> {
    if config.max_order < 1 || config.max_order > MAX_SWEEP_ORDER {
        return Err(SweepError::CapExceeded(format!(
            "max_order must be within 1..={MAX_SWEEP_ORDER}, got {}",
            config.max_order
        )));
    }
    if config.m_max < 1 || config.m_max > MAX_SWEEP_M {
        return Err(SweepError::CapExceeded(format!(
            "m_max must be within 1..={MAX_SWEEP_M}, got {}",
            config.m_max
        )));
    }
    if config.n_max < 1 {
        return Err(SweepError::CapExceeded("n_max must be >= 1".into()));
    }

    let mut graphs = Vec::new();
    for entry in default_catalog(config.max_order) {
        let group = entry.build()?;
        graphs.push(WordGraph::build(&group, &config.word));
    }

    let gamma = match &config.gamma {
        GammaSpec::Fixed(gap) => gap.clone(),
        GammaSpec::Empirical => {
            empirical_gap(graphs.iter()).ok_or(SweepError::EmpiricalUnavailable)?
        }
    };

    let mut rows = Vec::new();
    for graph in &graphs {
        rows.extend(dichotomy_rows(graph, &gamma, config.m_max, config.n_max)?);
    }

    Ok(SweepReport {
        metadata: SweepMetadata {
            word: config.word.source().to_string(),
            gamma: gamma.value().to_string(),
            gamma_source: gamma.source().to_string(),
            max_order: config.max_order,
            m_max: config.m_max,
            n_max: config.n_max,
            timestamp: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
        },
        rows,
    })
}
