//! JSON and CSV formats.
//!
//! Function graph documents look like
//!
//! ```json
//! {"n": 3, "edges": [[0,1],[1,2]], "values": [[0],[4],[3]],
//!  "metric": [[0,1,2],[1,0,1],[2,1,0]], "positions": [[0,0],[1,0],[2,0]]}
//! ```
//!
//! `metric` is optional; besides an explicit `n x n` array it may be the
//! string `"euclidean"`, meaning Euclidean distance between `positions`.
//! Values may also be given as bare numbers for scalar functions.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::cloud::PointCloud;
use crate::model::drg::DecoratedReebGraph;
use crate::model::graph::{FunctionGraph, NodeMetric};
use crate::model::metric::DistanceMatrix;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ValueDoc {
    Scalar(f64),
    Vector(Vec<f64>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MetricDoc {
    Matrix(Vec<Vec<f64>>),
    Named(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    n: usize,
    edges: Vec<(usize, usize)>,
    values: Vec<ValueDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metric: Option<MetricDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    positions: Option<Vec<Vec<f64>>>,
}

pub fn load_function_graph(bytes: &[u8]) -> Result<FunctionGraph> {
    let doc: GraphDoc = serde_json::from_slice(bytes)?;
    let values = doc
        .values
        .into_iter()
        .map(|v| match v {
            ValueDoc::Scalar(x) => vec![x],
            ValueDoc::Vector(v) => v,
        })
        .collect();
    let mut graph = FunctionGraph::new(doc.n, doc.edges, values)?;
    if let Some(positions) = &doc.positions {
        graph = graph.with_positions(positions.clone())?;
    }
    match doc.metric {
        None => {}
        Some(MetricDoc::Matrix(rows)) => {
            graph = graph.with_metric(NodeMetric::Explicit(DistanceMatrix::from_rows(&rows)?))?;
        }
        Some(MetricDoc::Named(name)) if name == "euclidean" => {
            let positions = doc
                .positions
                .ok_or_else(|| Error::Schema("euclidean metric requires positions".into()))?;
            let cloud = PointCloud::new(positions).map_err(|e| Error::Schema(e.to_string()))?;
            graph = graph.with_metric(NodeMetric::Euclidean(cloud))?;
        }
        Some(MetricDoc::Named(name)) => {
            return Err(Error::Schema(format!("unknown metric {name:?}")));
        }
    }
    Ok(graph)
}

/// Serializes a graph. A Euclidean node metric is written by name, an
/// explicit one as a full matrix.
pub fn save_function_graph(graph: &FunctionGraph) -> Result<Vec<u8>> {
    let scalar = graph.value_dim() == 1;
    let values = graph
        .values()
        .into_iter()
        .map(|v| {
            if scalar {
                ValueDoc::Scalar(v[0])
            } else {
                ValueDoc::Vector(v)
            }
        })
        .collect();
    let mut positions = graph.positions().map(|p| p.to_vec());
    let metric = match graph.metric() {
        None => None,
        Some(NodeMetric::Explicit(m)) => Some(MetricDoc::Matrix(m.rows())),
        Some(NodeMetric::Euclidean(cloud)) => {
            let rows = cloud.to_rows();
            if positions.as_ref() != Some(&rows) {
                if positions.is_some() {
                    // positions differ from the metric points; keep the metric exact
                    let m = DistanceMatrix::from_metric(cloud);
                    return finish(GraphDoc {
                        n: graph.node_count(),
                        edges: graph.edges().to_vec(),
                        values,
                        metric: Some(MetricDoc::Matrix(m.rows())),
                        positions,
                    });
                }
                positions = Some(rows);
            }
            Some(MetricDoc::Named("euclidean".into()))
        }
    };
    finish(GraphDoc {
        n: graph.node_count(),
        edges: graph.edges().to_vec(),
        values,
        metric,
        positions,
    })
}

fn finish(doc: GraphDoc) -> Result<Vec<u8>> {
    Ok(serde_json::to_vec(&doc)?)
}

pub fn load_drg(bytes: &[u8]) -> Result<DecoratedReebGraph> {
    let drg: DecoratedReebGraph = serde_json::from_slice(bytes)?;
    drg.validate()?;
    Ok(drg)
}

pub fn save_drg(drg: &DecoratedReebGraph) -> Result<Vec<u8>> {
    Ok(serde_json::to_vec(drg)?)
}

/// Reads one point per row. A first row that does not parse as numbers is
/// treated as a header.
pub fn read_point_cloud_csv<R: Read>(reader: R) -> Result<PointCloud> {
    let rows = read_csv_rows(reader)?;
    PointCloud::new(rows).map_err(|e| Error::Schema(e.to_string()))
}

pub fn read_point_cloud_file(path: &Path) -> Result<PointCloud> {
    read_point_cloud_csv(std::fs::File::open(path)?)
}

/// Reads a numeric CSV table, skipping a non-numeric header row.
pub fn read_csv_rows<R: Read>(reader: R) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let mut rows = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> =
            record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(row) => rows.push(row),
            Err(_) if i == 0 => continue,
            Err(e) => return Err(Error::Schema(format!("row {}: {e}", i + 1))),
        }
    }
    Ok(rows)
}

pub fn write_csv_rows(rows: &[Vec<f64>]) -> Vec<u8> {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::barcode::{Barcode, Interval};
    use crate::model::drg::{Decoration, DrgParams};
    use crate::model::metric::CondensedMatrix;

    #[test]
    fn loads_three_node_path() {
        let doc = br#"{"n":3,"edges":[[0,1],[1,2]],"values":[[0],[4],[3]]}"#;
        let g = load_function_graph(doc).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edges().len(), 2);
        assert_eq!(g.scalar_values(), vec![0.0, 4.0, 3.0]);
    }

    #[test]
    fn duplicate_edge_is_non_simple() {
        let doc = br#"{"n":3,"edges":[[0,1],[1,2],[2,1]],"values":[0,4,3]}"#;
        assert!(matches!(load_function_graph(doc), Err(Error::NonSimple(_))));
    }

    #[test]
    fn two_components_are_rejected() {
        let doc = br#"{"n":4,"edges":[[0,1],[2,3]],"values":[0,0,0,0]}"#;
        assert!(matches!(
            load_function_graph(doc),
            Err(Error::Disconnected { components: 2 })
        ));
    }

    #[test]
    fn malformed_document_is_schema_error() {
        assert!(matches!(
            load_function_graph(b"{\"n\":2}"),
            Err(Error::Schema(_))
        ));
        assert!(matches!(
            load_function_graph(b"not json"),
            Err(Error::Schema(_))
        ));
        let bad_metric = br#"{"n":2,"edges":[[0,1]],"values":[0,1],"metric":[[0,1],[2,0]]}"#;
        assert!(matches!(
            load_function_graph(bad_metric),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn euclidean_metric_by_name() {
        let doc = br#"{"n":2,"edges":[[0,1]],"values":[0,1],"metric":"euclidean","positions":[[0,0],[3,4]]}"#;
        let g = load_function_graph(doc).unwrap();
        use crate::model::metric::PointMetric;
        assert_eq!(g.metric().unwrap().dist(0, 1), 5.0);
        let again = load_function_graph(&save_function_graph(&g).unwrap()).unwrap();
        assert_eq!(again, g);
    }

    fn sample_drg() -> DecoratedReebGraph {
        DecoratedReebGraph {
            class_count: 2,
            representative: vec![0, 1],
            class_of: vec![0, 1, 1],
            edges: vec![(0, 1)],
            metric: CondensedMatrix::from_vec(vec![0.1 + 0.2]),
            decorations: vec![
                None,
                Some(Decoration::Barcode(
                    Barcode::new(vec![
                        Interval::open(0, 0.0, 2.5),
                        Interval::finite(1, 1.0, 2.0f64.sqrt()),
                    ])
                    .unwrap(),
                )),
            ],
            params: DrgParams {
                epsilon: 0.5,
                r_max: Some(2.5),
                ..Default::default()
            },
        }
    }

    #[test]
    fn drg_round_trip_is_exact() {
        let drg = sample_drg();
        let bytes = save_drg(&drg).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.contains(r#""decorations":[null,"#));
        assert!(text.contains(r#"{"open_at":2.5}"#));
        let back = load_drg(&bytes).unwrap();
        assert_eq!(back, drg);
        assert_eq!(
            back.metric.as_slice()[0].to_bits(),
            (0.1f64 + 0.2).to_bits()
        );
    }

    #[test]
    fn csv_with_header() {
        let data = "x,y,z\n0,0,1\n0,0,5\n";
        let cloud = read_point_cloud_csv(data.as_bytes()).unwrap();
        assert_eq!(cloud.len(), 2);
        assert_eq!(cloud.point(1), &[0.0, 0.0, 5.0]);
    }
}
