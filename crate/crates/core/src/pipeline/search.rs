//! Smallest rigid or asymmetric regular graphs by exhaustive search.

use super::generate::{generate_regular, GenSpec};
use crate::codec::emit_g6;
use crate::graph::Graph;
use crate::homsearch::{asymmetry, rigidity, SearchConfig, Verdict};
use rayon::prelude::*;
use std::fmt;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("degree must be at least 3, got {0}")]
    Degree(usize),
    #[error("largest order {n_max} is below the smallest possible order {min}")]
    Range { n_max: usize, min: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    Asymmetric,
    Rigid,
}

impl Predicate {
    pub fn check(&self, g: &Graph, config: &SearchConfig) -> Verdict {
        match self {
            Predicate::Asymmetric => asymmetry(g, config),
            Predicate::Rigid => rigidity(g, config),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Predicate::Asymmetric => "asymmetric",
            Predicate::Rigid => "rigid",
        })
    }
}

/// Search over connected d-regular graphs on `d+1 ..= n_max` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub d: usize,
    pub n_max: usize,
    pub min_girth: Option<usize>,
    pub predicate: Predicate,
    /// Stop after the first order with a connected witness.
    pub stop_at_first: bool,
}

impl SearchSpec {
    pub fn new(d: usize, n_max: usize, predicate: Predicate) -> Self {
        SearchSpec {
            d,
            n_max,
            min_girth: None,
            predicate,
            stop_at_first: false,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.d < 3 {
            return Err(SearchError::Degree(self.d));
        }
        if self.n_max <= self.d {
            return Err(SearchError::Range {
                n_max: self.n_max,
                min: self.d + 1,
            });
        }
        Ok(())
    }
}

/// What the composition rule says about disconnected witnesses of one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Disconnected {
    /// No split into smaller orders that all have connected witnesses.
    Impossible,
    /// Distinct asymmetric components exist for this split, so a witness exists.
    Exists { parts: Vec<usize> },
    /// A split exists but mutual rigidity of its components was not checked.
    Unresolved { parts: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderVerdict {
    pub n: usize,
    /// Connected graphs examined.
    pub examined: usize,
    pub witnesses: usize,
    /// First connected witness in generation order, as graph6.
    pub witness: Option<String>,
    /// False if generation or a predicate check ran out of budget.
    pub complete: bool,
    pub disconnected: Disconnected,
}

impl OrderVerdict {
    /// `Some(true)` if a witness of this order exists, `Some(false)` if provably none.
    pub fn exists(&self) -> Option<bool> {
        if self.witnesses > 0 || matches!(self.disconnected, Disconnected::Exists { .. }) {
            return Some(true);
        }
        if self.complete && self.disconnected == Disconnected::Impossible {
            return Some(false);
        }
        None
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub spec: SearchSpec,
    pub rows: Vec<OrderVerdict>,
}

impl SearchReport {
    /// Smallest order with a witness, provided every smaller order is settled negatively.
    pub fn smallest(&self) -> Option<usize> {
        for r in &self.rows {
            match r.exists() {
                Some(true) => return Some(r.n),
                Some(false) => continue,
                None => return None,
            }
        }
        None
    }

    pub fn row(&self, n: usize) -> Option<&OrderVerdict> {
        self.rows.iter().find(|r| r.n == n)
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.spec;
        let girth = s
            .min_girth
            .map(|g| format!(", girth >= {g}"))
            .unwrap_or_default();
        writeln!(f, "{} {}-regular graphs{girth}", s.predicate, s.d)?;
        for r in &self.rows {
            let verdict = match r.exists() {
                Some(true) => "yes",
                Some(false) => "no",
                None => "unknown",
            };
            write!(
                f,
                "  n={:>2} connected={:>6} witnesses={:>5} exists={verdict}",
                r.n, r.examined, r.witnesses
            )?;
            if let Some(w) = &r.witness {
                write!(f, " witness={w}")?;
            }
            match &r.disconnected {
                Disconnected::Impossible => {}
                Disconnected::Exists { parts } => write!(f, " disconnected={parts:?}")?,
                Disconnected::Unresolved { parts } => write!(f, " disconnected?={parts:?}")?,
            }
            writeln!(f)?;
        }
        match self.smallest() {
            Some(n) => write!(f, "  smallest order: {n}"),
            None => write!(f, "  smallest order: not determined"),
        }
    }
}

/// Predicate verdicts for a batch of graphs, checked in parallel.
pub fn check_graphs(graphs: &[Graph], predicate: Predicate, config: &SearchConfig) -> Vec<Verdict> {
    let inner = SearchConfig {
        jobs: 1,
        ..config.clone()
    };
    graphs
        .par_iter()
        .map(|g| predicate.check(g, &inner))
        .collect()
}

/// First split of `n` into at least two parts, each an order with enough connected witnesses.
fn split(n: usize, counts: &[(usize, usize)]) -> Option<Vec<usize>> {
    fn go(rest: usize, max_part: usize, counts: &[(usize, usize)], parts: &mut Vec<usize>) -> bool {
        if rest == 0 {
            return parts.len() >= 2;
        }
        for &(m, c) in counts.iter().rev() {
            if m > rest || m > max_part || c == 0 {
                continue;
            }
            let used = parts.iter().filter(|&&p| p == m).count();
            if used >= c {
                continue;
            }
            parts.push(m);
            if go(rest - m, m, counts, parts) {
                return true;
            }
            parts.pop();
        }
        false
    }
    let mut parts = Vec::new();
    go(n, n - 1, counts, &mut parts).then_some(parts)
}

/// Per-order verdicts with the composition rule for disconnected graphs applied.
pub fn search(spec: SearchSpec, config: &SearchConfig) -> Result<SearchReport, SearchError> {
    spec.validate()?;
    let mut rows = Vec::new();
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for n in spec.d + 1..=spec.n_max {
        if config.deadline.is_some_and(|t| Instant::now() >= t) {
            rows.push(OrderVerdict {
                n,
                examined: 0,
                witnesses: 0,
                witness: None,
                complete: false,
                disconnected: Disconnected::Impossible,
            });
            continue;
        }
        let gen = generate_regular(
            GenSpec {
                n,
                d: spec.d,
                min_girth: spec.min_girth,
            },
            config.deadline,
        );
        let verdicts = check_graphs(&gen.graphs, spec.predicate, config);
        let witnesses: Vec<usize> = (0..verdicts.len())
            .filter(|&i| verdicts[i].holds())
            .collect();
        let complete = gen.complete && verdicts.iter().all(|v| !matches!(v, Verdict::Unknown));
        let disconnected = match split(n, &counts) {
            None => Disconnected::Impossible,
            Some(parts) if spec.predicate == Predicate::Asymmetric => {
                Disconnected::Exists { parts }
            }
            Some(parts) => Disconnected::Unresolved { parts },
        };
        let row = OrderVerdict {
            n,
            examined: gen.graphs.len(),
            witnesses: witnesses.len(),
            witness: witnesses.first().map(|&i| emit_g6(&gen.graphs[i])),
            complete,
            disconnected,
        };
        counts.push((n, row.witnesses));
        let found = row.witnesses > 0;
        rows.push(row);
        if found && spec.stop_at_first {
            break;
        }
    }
    Ok(SearchReport { spec, rows })
}

/// Smallest order of a rigid d-regular graph, searched up to `n_max`.
pub fn search_nu(
    d: usize,
    n_max: usize,
    config: &SearchConfig,
) -> Result<SearchReport, SearchError> {
    search(SearchSpec::new(d, n_max, Predicate::Rigid), config)
}

/// Smallest order of an asymmetric d-regular graph, searched up to `n_max`.
pub fn search_mu(
    d: usize,
    n_max: usize,
    config: &SearchConfig,
) -> Result<SearchReport, SearchError> {
    search(SearchSpec::new(d, n_max, Predicate::Asymmetric), config)
}

/// One desk-scale cell of the cage/asymmetric/rigid table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub d: usize,
    pub girth: usize,
    pub expected_asym: usize,
    pub expected_rigid: usize,
    pub asym: CellOutcome,
    pub rigid: CellOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellOutcome {
    Found {
        n: usize,
        witness: Option<String>,
    },
    /// Budget ran out; never counted as a failure.
    Skipped,
    NotFound,
}

impl CellOutcome {
    pub fn order(&self) -> Option<usize> {
        match self {
            CellOutcome::Found { n, .. } => Some(*n),
            _ => None,
        }
    }
}

impl TableCell {
    pub fn matches(&self) -> bool {
        self.asym.order() == Some(self.expected_asym)
            && self.rigid.order() == Some(self.expected_rigid)
    }

    pub fn skipped(&self) -> bool {
        self.asym == CellOutcome::Skipped || self.rigid == CellOutcome::Skipped
    }
}

/// (d, girth, smallest asymmetric, smallest rigid) for the recomputed cells.
pub const TABLE_CELLS: [(usize, usize, usize, usize); 4] = [
    (3, 4, 14, 14),
    (3, 5, 16, 16),
    (4, 4, 13, 13),
    (4, 5, 22, 22),
];

fn smallest_with_girth(
    d: usize,
    girth: usize,
    n_max: usize,
    predicate: Predicate,
    budget: Option<std::time::Duration>,
) -> CellOutcome {
    let config = SearchConfig::with_budget(budget);
    let spec = SearchSpec {
        d,
        n_max,
        min_girth: Some(girth),
        predicate,
        stop_at_first: true,
    };
    let Ok(report) = search(spec, &config) else {
        return CellOutcome::NotFound;
    };
    match report.smallest() {
        Some(n) => CellOutcome::Found {
            n,
            witness: report.row(n).and_then(|r| r.witness.clone()),
        },
        None if report.rows.iter().any(|r| !r.complete) => CellOutcome::Skipped,
        None => CellOutcome::NotFound,
    }
}

/// Recomputes the cells in `cells` (girth read as "at least"), each half with its own budget.
pub fn order_table_rows(
    cells: &[(usize, usize, usize, usize)],
    budget: Option<std::time::Duration>,
) -> Vec<TableCell> {
    cells
        .iter()
        .map(|&(d, girth, ea, er)| TableCell {
            d,
            girth,
            expected_asym: ea,
            expected_rigid: er,
            asym: smallest_with_girth(d, girth, ea.max(er), Predicate::Asymmetric, budget),
            rigid: smallest_with_girth(d, girth, ea.max(er), Predicate::Rigid, budget),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_splits() {
        assert_eq!(split(10, &[(4, 1), (6, 1)]), Some(vec![6, 4]));
        assert_eq!(split(8, &[(4, 1)]), None);
        assert_eq!(split(8, &[(4, 2)]), Some(vec![4, 4]));
        assert_eq!(split(7, &[(4, 3)]), None);
    }

    #[test]
    fn small_orders_have_no_rigid_cubic() {
        let r = search_nu(3, 10, &SearchConfig::default()).unwrap();
        assert!(r.rows.iter().all(|row| row.exists() == Some(false)));
        assert_eq!(r.smallest(), None);
        assert_eq!(r.row(10).unwrap().examined, 19);
        assert!(search_nu(2, 10, &SearchConfig::default()).is_err());
    }

    #[test]
    fn quartic_rigid_at_ten() {
        let r = search_nu(4, 10, &SearchConfig::default()).unwrap();
        assert_eq!(r.smallest(), Some(10));
        let mu = search_mu(4, 10, &SearchConfig::default()).unwrap();
        assert_eq!(mu.smallest(), Some(10));
    }
}
