//! Plot-ready tables derived from simulation results.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use super::{fmt_f64, FormatError, ResultRow};
use crate::graphs::{properties, CanonicalCode};
use crate::simulation::Measure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Mean of every measure over all graphs with the same edge count.
    AveragesByEdges,
    /// Best and worst graph per edge count and measure.
    BestByEdges,
    /// All spanning-tree structures, star flagged.
    SpanningTrees,
    /// One graph across several perturbation levels.
    PerturbSweep,
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "averages-by-edges" => Ok(Figure::AveragesByEdges),
            "best-by-edges" => Ok(Figure::BestByEdges),
            "spanning-trees" => Ok(Figure::SpanningTrees),
            "perturb-sweep" => Ok(Figure::PerturbSweep),
            other => Err(format!("unknown figure `{other}`")),
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Figure::AveragesByEdges => "averages-by-edges",
            Figure::BestByEdges => "best-by-edges",
            Figure::SpanningTrees => "spanning-trees",
            Figure::PerturbSweep => "perturb-sweep",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportTable {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl ReportTable {
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), FormatError> {
        let mut csv = csv::Writer::from_writer(writer);
        csv.write_record(&self.header)?;
        for row in &self.rows {
            csv.write_record(row)?;
        }
        csv.flush()?;
        Ok(())
    }

    /// Values of column `name`, in row order.
    pub fn column(&self, name: &str) -> Vec<&str> {
        let k = self
            .header
            .iter()
            .position(|h| *h == name)
            .unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[k].as_str()).collect()
    }
}

/// Builds the table for `figure` from one results set per perturbation
/// level. `graph` selects the structure of a perturbation sweep and
/// defaults to the star.
pub fn report(
    runs: &[Vec<ResultRow>],
    figure: Figure,
    graph: Option<usize>,
) -> Result<ReportTable, FormatError> {
    if runs.iter().all(Vec::is_empty) {
        return Err(FormatError::MissingSlice("any result rows".into()));
    }
    match figure {
        Figure::AveragesByEdges => Ok(averages_by_edges(runs)),
        Figure::BestByEdges => Ok(best_by_edges(runs)),
        Figure::SpanningTrees => spanning_trees(runs),
        Figure::PerturbSweep => perturb_sweep(runs, graph),
    }
}

fn run_key(row: &ResultRow) -> [String; 3] {
    [
        row.n.to_string(),
        fmt_f64(row.perturb),
        row.model.to_string(),
    ]
}

/// Rows of one run grouped by edge count, then graph id.
fn by_edges(run: &[ResultRow]) -> BTreeMap<usize, BTreeMap<usize, Vec<&ResultRow>>> {
    let mut out: BTreeMap<usize, BTreeMap<usize, Vec<&ResultRow>>> = BTreeMap::new();
    for row in run {
        out.entry(row.edges)
            .or_default()
            .entry(row.graph_id)
            .or_default()
            .push(row);
    }
    out
}

fn value(rows: &[&ResultRow], measure: Measure) -> Option<f64> {
    rows.iter().find(|r| r.measure == measure).map(|r| r.mean)
}

fn averages_by_edges(runs: &[Vec<ResultRow>]) -> ReportTable {
    let mut rows = Vec::new();
    for run in runs.iter().filter(|r| !r.is_empty()) {
        let key = run_key(&run[0]);
        for (edges, graphs) in by_edges(run) {
            for measure in Measure::ALL {
                let values: Vec<f64> = graphs.values().filter_map(|g| value(g, measure)).collect();
                if values.is_empty() {
                    continue;
                }
                let mean = values.iter().sum::<f64>() / values.len() as f64;
                let mut row = key.to_vec();
                row.extend([
                    edges.to_string(),
                    measure.to_string(),
                    fmt_f64(mean),
                    values.len().to_string(),
                ]);
                rows.push(row);
            }
        }
    }
    ReportTable {
        header: vec![
            "n", "perturb", "model", "edges", "measure", "mean", "graphs",
        ],
        rows,
    }
}

/// `(best, worst)` graph ids and values for one measure at one edge count.
fn extremes(
    graphs: &BTreeMap<usize, Vec<&ResultRow>>,
    measure: Measure,
) -> Option<((usize, f64), (usize, f64))> {
    let mut best: Option<(usize, f64)> = None;
    let mut worst: Option<(usize, f64)> = None;
    for (&id, rows) in graphs {
        let Some(v) = value(rows, measure) else {
            continue;
        };
        if best.is_none_or(|(_, b)| measure.better(v, b)) {
            best = Some((id, v));
        }
        if worst.is_none_or(|(_, w)| measure.better(w, v)) {
            worst = Some((id, v));
        }
    }
    best.zip(worst)
}

fn best_by_edges(runs: &[Vec<ResultRow>]) -> ReportTable {
    let mut rows = Vec::new();
    for run in runs.iter().filter(|r| !r.is_empty()) {
        let key = run_key(&run[0]);
        let grouped = by_edges(run);
        let edge_counts: Vec<usize> = grouped.keys().copied().collect();
        for (k, edges) in edge_counts.iter().enumerate() {
            for measure in Measure::ALL {
                let Some(((best_id, best), (worst_id, worst))) = extremes(&grouped[edges], measure)
                else {
                    continue;
                };
                let beats_next_worst = edge_counts
                    .get(k + 1)
                    .and_then(|next| extremes(&grouped[next], measure))
                    .map_or(String::new(), |(_, (_, next_worst))| {
                        measure.better(best, next_worst).to_string()
                    });
                let mut row = key.to_vec();
                row.extend([
                    edges.to_string(),
                    measure.to_string(),
                    format!("g{best_id}"),
                    fmt_f64(best),
                    format!("g{worst_id}"),
                    fmt_f64(worst),
                    beats_next_worst,
                ]);
                rows.push(row);
            }
        }
    }
    ReportTable {
        header: vec![
            "n",
            "perturb",
            "model",
            "edges",
            "measure",
            "best_graph",
            "best_value",
            "worst_graph",
            "worst_value",
            "best_beats_next_worst",
        ],
        rows,
    }
}

fn is_star(row: &ResultRow) -> Result<bool, FormatError> {
    let code = CanonicalCode::from_hex(row.n, &row.canonical_code)?;
    let g = code.graph();
    if !g.is_connected() {
        return Ok(false);
    }
    Ok(properties(&g)?.is_star)
}

fn spanning_trees(runs: &[Vec<ResultRow>]) -> Result<ReportTable, FormatError> {
    let mut rows = Vec::new();
    for run in runs.iter().filter(|r| !r.is_empty()) {
        let key = run_key(&run[0]);
        let n = run[0].n;
        let grouped = by_edges(run);
        let Some(trees) = grouped.get(&(n - 1)) else {
            return Err(FormatError::MissingSlice(format!(
                "spanning trees ({} edges)",
                n - 1
            )));
        };
        for measure in Measure::ALL {
            let Some(((best_id, _), _)) = extremes(trees, measure) else {
                continue;
            };
            for (&id, graph_rows) in trees {
                let Some(row) = graph_rows.iter().find(|r| r.measure == measure) else {
                    continue;
                };
                let mut out = key.to_vec();
                out.extend([
                    format!("g{id}"),
                    row.canonical_code.clone(),
                    is_star(row)?.to_string(),
                    measure.to_string(),
                    fmt_f64(row.mean),
                    fmt_f64(row.stddev),
                    (id == best_id).to_string(),
                ]);
                rows.push(out);
            }
        }
    }
    Ok(ReportTable {
        header: vec![
            "n",
            "perturb",
            "model",
            "graph_id",
            "canonical_code",
            "is_star",
            "measure",
            "mean",
            "stddev",
            "is_best",
        ],
        rows,
    })
}

fn perturb_sweep(
    runs: &[Vec<ResultRow>],
    graph: Option<usize>,
) -> Result<ReportTable, FormatError> {
    let mut points: Vec<(f64, Vec<String>)> = Vec::new();
    for run in runs.iter().filter(|r| !r.is_empty()) {
        let first = &run[0];
        let id = match graph {
            Some(id) => id,
            None => {
                let mut star = None;
                for row in run.iter().filter(|r| r.edges + 1 == r.n) {
                    if is_star(row)? {
                        star = Some(row.graph_id);
                        break;
                    }
                }
                star.ok_or_else(|| FormatError::MissingSlice("the star graph".into()))?
            }
        };
        let selected: Vec<&ResultRow> = run.iter().filter(|r| r.graph_id == id).collect();
        if selected.is_empty() {
            return Err(FormatError::MissingSlice(format!(
                "graph g{id} at perturbation {}",
                first.perturb
            )));
        }
        for row in selected {
            points.push((
                row.perturb,
                vec![
                    row.n.to_string(),
                    row.model.to_string(),
                    fmt_f64(row.perturb),
                    format!("g{id}"),
                    row.measure.to_string(),
                    fmt_f64(row.mean),
                    fmt_f64(row.stddev),
                ],
            ));
        }
    }
    // stable: measures keep their order within a perturbation level
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(ReportTable {
        header: vec![
            "n", "model", "perturb", "graph_id", "measure", "mean", "stddev",
        ],
        rows: points.into_iter().map(|(_, r)| r).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ComparisonGraph;
    use crate::graphs::canonical_code;
    use crate::model::ModelKind;

    fn code(edges: &[(usize, usize)]) -> String {
        canonical_code(&ComparisonGraph::from_edges(4, edges.iter().copied()).unwrap())
            .unwrap()
            .to_hex()
    }

    fn row(graph_id: usize, edges: usize, code: &str, measure: Measure, mean: f64) -> ResultRow {
        let code = code.to_string();
        ResultRow {
            n: 4,
            perturb: 0.15,
            model: ModelKind::Logistic,
            graph_id,
            edges,
            canonical_code: code,
            measure,
            mean,
            stddev: 0.1,
            num_sims: 10,
            excluded: 0,
        }
    }

    /// Star and path with 3 edges, 4-cycle with 4 edges.
    fn toy() -> Vec<ResultRow> {
        let star = code(&[(0, 1), (0, 2), (0, 3)]);
        let path = code(&[(0, 1), (1, 2), (2, 3)]);
        let cycle = code(&[(0, 1), (1, 2), (2, 3), (0, 3)]);
        vec![
            row(1, 3, &star, Measure::EuW, 0.12),
            row(1, 3, &star, Measure::Tau, 0.75),
            row(2, 3, &path, Measure::EuW, 0.13),
            row(2, 3, &path, Measure::Tau, 0.73),
            row(3, 4, &cycle, Measure::EuW, 0.07),
            row(3, 4, &cycle, Measure::Tau, 0.84),
        ]
    }

    #[test]
    fn averages() {
        let t = report(&[toy()], Figure::AveragesByEdges, None).unwrap();
        assert_eq!(t.column("edges"), ["3", "3", "4", "4"]);
        let means: Vec<f64> = t
            .column("mean")
            .iter()
            .map(|v| v.parse().unwrap())
            .collect();
        assert!((means[0] - 0.125).abs() < 1e-15);
        assert!((means[1] - 0.74).abs() < 1e-15);
    }

    #[test]
    fn best_and_worst() {
        let t = report(&[toy()], Figure::BestByEdges, None).unwrap();
        assert_eq!(t.column("best_graph"), ["g1", "g1", "g3", "g3"]);
        assert_eq!(t.column("worst_graph"), ["g2", "g2", "g3", "g3"]);
        assert_eq!(
            t.column("best_beats_next_worst"),
            ["false", "false", "", ""]
        );
    }

    #[test]
    fn spanning_tree_table_flags_star() {
        let t = report(&[toy()], Figure::SpanningTrees, None).unwrap();
        assert_eq!(t.column("graph_id"), ["g1", "g2", "g1", "g2"]);
        assert_eq!(t.column("is_star"), ["true", "false", "true", "false"]);
        assert_eq!(t.column("is_best"), ["true", "false", "true", "false"]);
    }

    #[test]
    fn sweep_defaults_to_star_and_sorts() {
        let mut high = toy();
        high.iter_mut().for_each(|r| r.perturb = 0.2);
        let t = report(&[high, toy()], Figure::PerturbSweep, None).unwrap();
        assert_eq!(t.column("perturb"), ["0.15", "0.15", "0.2", "0.2"]);
        assert!(t.column("graph_id").iter().all(|g| *g == "g1"));
        let missing = report(&[toy()], Figure::PerturbSweep, Some(9));
        assert!(matches!(missing, Err(FormatError::MissingSlice(_))));
    }

    #[test]
    fn missing_slices() {
        let only_cycle: Vec<ResultRow> = toy().into_iter().filter(|r| r.edges == 4).collect();
        assert!(matches!(
            report(&[only_cycle], Figure::SpanningTrees, None),
            Err(FormatError::MissingSlice(_))
        ));
        assert!(matches!(
            report(&[vec![]], Figure::BestByEdges, None),
            Err(FormatError::MissingSlice(_))
        ));
    }

    #[test]
    fn figure_names() {
        for f in [
            Figure::AveragesByEdges,
            Figure::BestByEdges,
            Figure::SpanningTrees,
            Figure::PerturbSweep,
        ] {
            assert_eq!(f.to_string().parse::<Figure>().unwrap(), f);
        }
    }
}
