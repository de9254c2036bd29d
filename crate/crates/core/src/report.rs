//! Per-group analysis pipeline and the dimension report.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::formulas::{alpha_bound, dim_formula_for_spec, Branch, FormulaResult};
use crate::graph::{difference_graph, Graph};
use crate::group::{Group, GroupSpec, SylowFactors};
use crate::metric::{metric_dimension_with_partition, ResolvingWitness};
use crate::twins::{twin_partition, TwinPartition};
use crate::verify::{run_checks, Check, CheckOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Formula,
    Both,
}

/// Everything computed for one group: difference graph, twins, exact
/// dimension and the closed-form values that apply.
#[derive(Debug)]
pub struct Analysis {
    pub spec: GroupSpec,
    pub group: Group,
    /// `None` for non-nilpotent groups.
    pub sylow: Option<SylowFactors>,
    pub difference: Graph,
    pub partition: TwinPartition,
    pub witness: Option<ResolvingWitness>,
    pub formula: Option<FormulaResult>,
    pub alpha: Option<u64>,
}

impl Analysis {
    pub fn new(spec: &GroupSpec, max_order: u64, exact: bool) -> Result<Analysis> {
        let group = Group::build_with_limit(spec, max_order)?;
        let sylow = SylowFactors::from_group(&group).ok();
        let difference = difference_graph(&group);
        let partition = twin_partition(&difference);
        let witness = exact.then(|| metric_dimension_with_partition(&difference, &partition));
        let alpha = match &sylow {
            Some(s) if !difference.is_empty() => alpha_bound(s, &partition).ok(),
            _ => None,
        };
        Ok(Analysis {
            spec: spec.clone(),
            group,
            sylow,
            difference,
            partition,
            witness,
            formula: dim_formula_for_spec(spec),
            alpha,
        })
    }

    pub fn dim(&self) -> Option<usize> {
        self.witness.as_ref().map(|w| w.size)
    }

    fn labels(&self, vertices: &[usize]) -> Vec<String> {
        vertices
            .iter()
            .map(|&v| self.difference.vertices()[v].label.clone())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimReport {
    pub spec: String,
    pub order: usize,
    pub vertex_count: usize,
    pub removed_count: usize,
    pub twin_classes: usize,
    /// Exact metric dimension of the difference graph.
    pub dim: Option<usize>,
    pub witness_labels: Vec<String>,
    pub forced_by_twins: Vec<String>,
    pub search_nodes_expanded: u64,
    pub dim_formula: Option<u64>,
    pub branch: Option<Branch>,
    pub alpha: Option<u64>,
    pub nilpotent: bool,
    pub connected: bool,
    /// Empty or single-vertex difference graph.
    pub degenerate: bool,
    pub verdicts: Vec<Check>,
    pub wall_time_ms: u64,
}

impl DimReport {
    /// `Some(false)` when both an exact value and a defined formula value exist and differ.
    pub fn agreement(&self) -> Option<bool> {
        Some(self.dim? as u64 == self.dim_formula?)
    }

    pub fn all_verdicts_pass(&self) -> bool {
        self.verdicts.iter().all(|c| c.pass)
    }
}

pub fn dim_report(spec: &GroupSpec, method: Method, max_order: u64) -> Result<DimReport> {
    let start = Instant::now();
    let exact = method != Method::Formula;
    let analysis = Analysis::new(spec, max_order, exact)?;
    let verdicts = if exact {
        run_checks(&analysis, &CheckOptions::default())
    } else {
        Vec::new()
    };
    let d = &analysis.difference;
    let witness = analysis.witness.as_ref();
    let formula = (method != Method::Exact).then_some(analysis.formula).flatten();
    Ok(DimReport {
        spec: spec.canonical_name(),
        order: analysis.group.order(),
        vertex_count: d.n(),
        removed_count: d.removed_vertices().len(),
        twin_classes: analysis.partition.classes.len(),
        dim: analysis.dim(),
        witness_labels: witness.map(|w| analysis.labels(&w.set)).unwrap_or_default(),
        forced_by_twins: witness
            .map(|w| analysis.labels(&w.forced_by_twins))
            .unwrap_or_default(),
        search_nodes_expanded: witness.map_or(0, |w| w.search_nodes_expanded),
        dim_formula: formula.and_then(|f| f.value),
        branch: formula.map(|f| f.branch),
        alpha: analysis.alpha,
        nilpotent: analysis.sylow.is_some(),
        connected: d.is_connected(),
        degenerate: d.n() <= 1,
        verdicts,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(s: &str, method: Method) -> DimReport {
        dim_report(&s.parse().unwrap(), method, 10_000).unwrap()
    }

    #[test]
    fn z12_both() {
        let r = report("Z12", Method::Both);
        assert_eq!((r.dim, r.dim_formula, r.alpha), (Some(4), Some(4), Some(4)));
        assert_eq!(r.branch, Some(Branch::Special));
        assert_eq!(r.agreement(), Some(true));
        assert!(r.all_verdicts_pass(), "{:#?}", r.verdicts);
    }

    #[test]
    fn z30_both() {
        let r = report("Z30", Method::Both);
        assert_eq!((r.dim, r.dim_formula, r.alpha), (Some(15), Some(15), Some(16)));
        assert_eq!(r.branch, Some(Branch::General));
    }

    #[test]
    fn z9_is_degenerate() {
        let r = report("Z9", Method::Both);
        assert_eq!(r.dim_formula, None);
        assert_eq!(r.branch, Some(Branch::UndefinedPrimePower));
        assert_eq!(r.vertex_count, 0);
        assert!(r.degenerate);
        assert_eq!(r.agreement(), None);
    }

    #[test]
    fn formula_only_skips_search() {
        let r = report("D24", Method::Formula);
        assert_eq!(r.dim, None);
        assert_eq!(r.dim_formula, Some(4));
        assert!(r.verdicts.is_empty());
    }
}
