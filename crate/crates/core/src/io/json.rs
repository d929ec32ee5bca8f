use serde::Serialize;

use crate::clustering::Clustering;
use crate::graph::Graph;

/// What a computation produced.
#[derive(Debug, Clone, Copy)]
pub enum ResultPayload<'a> {
    Graph(&'a Graph),
    Clustering(&'a Clustering),
}

#[derive(Serialize)]
struct GraphJson<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    svg: Option<&'a str>,
}

#[derive(Serialize)]
struct ClusteringJson<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    labels: Vec<i64>,
    noise: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    centers: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    svg: Option<&'a str>,
}

/// Compact result JSON with a fixed field order. `svg`, when given, is
/// appended as a final string field.
pub fn write_result_json(payload: ResultPayload<'_>, svg: Option<&str>) -> Vec<u8> {
    let out = match payload {
        ResultPayload::Graph(g) => serde_json::to_vec(&GraphJson {
            kind: "graph",
            n: g.n(),
            edges: g.symmetrized().edges().map(|(a, b)| [a, b]).collect(),
            svg,
        }),
        ResultPayload::Clustering(c) => serde_json::to_vec(&ClusteringJson {
            kind: "clustering",
            labels: c.signed_labels(),
            noise: -1,
            centers: c.centers().map(|cs| cs.iter().map(|p| [p.x, p.y]).collect()),
            svg,
        }),
    };
    out.expect("result JSON holds only finite numbers and strings")
}

pub fn write_graph_json(g: &Graph) -> Vec<u8> {
    write_result_json(ResultPayload::Graph(g), None)
}

pub fn write_clustering_json(c: &Clustering) -> Vec<u8> {
    write_result_json(ResultPayload::Clustering(c), None)
}
