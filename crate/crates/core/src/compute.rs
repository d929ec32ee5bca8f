//! Algorithm catalog and request dispatch shared by every front end.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::clustering::{
    agglomerate, dbscan, hdbscan, kmeans, kmedoids, mean_shift, Clustering, DbscanParams,
    HdbscanParams, Init, Linkage, MeanShiftParams, RngSeed, DEFAULT_MAX_ITER,
    DEFAULT_MEAN_SHIFT_MAX_ITER, DEFAULT_MIN_PTS,
};
use crate::delaunay::delaunay;
use crate::error::{Error, Result};
use crate::geometry::{Point2, PointSet};
use crate::graph::Graph;
use crate::io::{write_ipe, write_result_json, write_svg, Document, OutputFormat, Palette, ResultPayload};
use crate::neighbor_graphs::{neighbor_graph, NeighborKind, NeighborVariant, DEFAULT_K};
use crate::proximity::{
    epsilon_graph, gabriel_graph, influence_radii, rng_graph, soi_graph, urquhart_graph,
    yao_graph_rotated, DEFAULT_EPSILON, DEFAULT_SECTORS,
};

/// Largest point set a single request may carry.
pub const MAX_POINTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Integer,
    Number,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    #[serde(rename = "type")]
    pub kind: ParamKind,
    pub required: bool,
    /// Value used when the parameter is omitted. `None` with `required ==
    /// false` means the default is derived (see `description`).
    pub default: Option<f64>,
    /// Suggested value for input prompts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub placeholder: Option<f64>,
    pub description: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ResultKind {
    Graph,
    Clustering,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgorithmSpec {
    pub id: &'static str,
    pub result: ResultKind,
    pub params: Vec<ParamSpec>,
}

fn int(name: &'static str, default: usize, description: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Integer,
        required: false,
        default: Some(default as f64),
        placeholder: None,
        description,
    }
}

fn required(name: &'static str, kind: ParamKind, description: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind,
        required: true,
        default: None,
        placeholder: None,
        description,
    }
}

fn k_param() -> ParamSpec {
    int("k", DEFAULT_K, "number of neighbors")
}

fn centroid_params() -> Vec<ParamSpec> {
    vec![
        int("k", DEFAULT_K, "number of clusters"),
        int("seed", 0, "random seed"),
        int("max_iter", DEFAULT_MAX_ITER, "iteration cap"),
    ]
}

/// Every algorithm with its parameters, in menu order.
pub fn catalog() -> Vec<AlgorithmSpec> {
    use ResultKind::*;
    let mut out = Vec::new();
    for kind in NeighborKind::ALL {
        out.push(AlgorithmSpec {
            id: kind.id(),
            result: Graph,
            params: if kind.takes_k() { vec![k_param()] } else { Vec::new() },
        });
    }
    for id in ["gabriel", "rng", "soi"] {
        out.push(AlgorithmSpec { id, result: Graph, params: Vec::new() });
    }
    out.push(AlgorithmSpec {
        id: "epsilon",
        result: Graph,
        params: vec![ParamSpec {
            placeholder: Some(DEFAULT_EPSILON),
            ..required("epsilon", ParamKind::Number, "connection radius")
        }],
    });
    out.push(AlgorithmSpec { id: "urquhart", result: Graph, params: Vec::new() });
    out.push(AlgorithmSpec {
        id: "yao",
        result: Graph,
        params: vec![
            ParamSpec {
                placeholder: Some(DEFAULT_SECTORS as f64),
                ..int("sectors", DEFAULT_SECTORS, "number of cones around each point")
            },
            ParamSpec {
                kind: ParamKind::Number,
                ..int("sector_offset", 0, "rotation of the cone boundaries, in degrees")
            },
        ],
    });
    out.push(AlgorithmSpec { id: "delaunay", result: Graph, params: Vec::new() });
    for id in ["kmeans", "kmeans++", "kmedoids"] {
        out.push(AlgorithmSpec { id, result: Clustering, params: centroid_params() });
    }
    for id in ["single-linkage", "complete-linkage"] {
        out.push(AlgorithmSpec {
            id,
            result: Clustering,
            params: vec![required("target", ParamKind::Integer, "number of clusters to stop at")],
        });
    }
    out.push(AlgorithmSpec {
        id: "dbscan",
        result: Clustering,
        params: vec![
            required("epsilon", ParamKind::Number, "neighborhood radius"),
            int("min_pts", DEFAULT_MIN_PTS, "neighborhood size of a core point, itself included"),
        ],
    });
    out.push(AlgorithmSpec {
        id: "hdbscan",
        result: Clustering,
        params: vec![
            int("min_pts", DEFAULT_MIN_PTS, "neighborhood size for core distances, itself included"),
            ParamSpec {
                default: None,
                ..int("min_cluster_size", 0, "smallest cluster; defaults to min_pts (at least 2)")
            },
        ],
    });
    out.push(AlgorithmSpec {
        id: "meanshift",
        result: Clustering,
        params: vec![
            required("bandwidth", ParamKind::Number, "window radius"),
            ParamSpec {
                default: None,
                kind: ParamKind::Number,
                ..int("merge_tol", 0, "modes closer than this merge; defaults to bandwidth/20")
            },
            int("max_iter", DEFAULT_MEAN_SHIFT_MAX_ITER, "iteration cap per point"),
        ],
    });
    out
}

pub fn find_algorithm(id: &str) -> Option<AlgorithmSpec> {
    catalog().into_iter().find(|a| a.id == id)
}

/// Parameters by name. JSON numbers are kept as given so that integer
/// parameters such as `seed` keep their full range.
pub type Params = BTreeMap<String, serde_json::Number>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComputeRequest {
    pub points: Vec<[f64; 2]>,
    pub algorithm: String,
    #[serde(default)]
    pub params: Params,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ComputeError {
    #[error("UnknownAlgorithm: `{0}` is not a known algorithm")]
    UnknownAlgorithm(String),
    #[error("TooManyPoints: {got} points exceed the limit of {max}")]
    TooManyPoints { got: usize, max: usize },
    #[error(transparent)]
    Core(#[from] Error),
}

impl ComputeError {
    pub fn name(&self) -> &'static str {
        match self {
            ComputeError::UnknownAlgorithm(_) => "UnknownAlgorithm",
            ComputeError::TooManyPoints { .. } => "TooManyPoints",
            ComputeError::Core(e) => e.name(),
        }
    }
}

/// A computed graph or clustering, with anything else worth drawing.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Graph {
        graph: Graph,
        /// Sphere-of-influence radii, for the SOI graph.
        radii: Option<Vec<f64>>,
    },
    Clustering(Clustering),
}

impl Outcome {
    pub fn payload(&self) -> ResultPayload<'_> {
        match self {
            Outcome::Graph { graph, .. } => ResultPayload::Graph(graph),
            Outcome::Clustering(c) => ResultPayload::Clustering(c),
        }
    }

    pub fn document(&self, ps: &PointSet) -> Document {
        match self {
            Outcome::Graph { graph, radii } => {
                let doc = Document::new(ps.clone()).with_graph(graph);
                match radii {
                    Some(r) => doc.with_circles(r, Palette::GRAY),
                    None => doc,
                }
            }
            Outcome::Clustering(c) => Document::new(ps.clone()).with_clustering(c),
        }
    }

    /// Result JSON, optionally carrying an SVG rendering.
    pub fn to_json(&self, ps: &PointSet, with_svg: bool) -> Vec<u8> {
        let svg = with_svg.then(|| {
            String::from_utf8(write_svg(&self.document(ps))).expect("SVG output is UTF-8")
        });
        write_result_json(self.payload(), svg.as_deref())
    }

    pub fn render(&self, ps: &PointSet, format: OutputFormat) -> Vec<u8> {
        match format {
            OutputFormat::Ipe => write_ipe(&self.document(ps)),
            OutputFormat::Svg => write_svg(&self.document(ps)),
            OutputFormat::Json => self.to_json(ps, false),
        }
    }
}

/// Typed access to request parameters with the catalog's defaults.
struct Args<'a> {
    params: &'a Params,
}

impl Args<'_> {
    fn number(&self, name: &str) -> Result<Option<f64>> {
        match self.params.get(name) {
            None => Ok(None),
            Some(v) => v
                .as_f64()
                .filter(|x| x.is_finite())
                .map(Some)
                .ok_or_else(|| Error::invalid(name, format!("`{v}` is not a finite number"))),
        }
    }

    fn required_number(&self, name: &str) -> Result<f64> {
        self.number(name)?.ok_or_else(|| Error::invalid(name, "is required"))
    }

    fn integer(&self, name: &str) -> Result<Option<u64>> {
        let Some(v) = self.params.get(name) else {
            return Ok(None);
        };
        if let Some(u) = v.as_u64() {
            return Ok(Some(u));
        }
        match v.as_f64() {
            Some(x) if x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(53) => Ok(Some(x as u64)),
            _ => Err(Error::invalid(name, format!("`{v}` is not a non-negative integer"))),
        }
    }

    fn size(&self, name: &str) -> Result<Option<usize>> {
        self.integer(name)?
            .map(|u| usize::try_from(u).map_err(|_| Error::invalid(name, "is too large")))
            .transpose()
    }

    fn size_or(&self, name: &str, default: usize) -> Result<usize> {
        Ok(self.size(name)?.unwrap_or(default))
    }

    fn required_size(&self, name: &str) -> Result<usize> {
        self.size(name)?.ok_or_else(|| Error::invalid(name, "is required"))
    }
}

/// Runs `algorithm` on `ps`. Parameters the algorithm does not take are ignored.
pub fn run(algorithm: &str, ps: &PointSet, params: &Params) -> std::result::Result<Outcome, ComputeError> {
    if find_algorithm(algorithm).is_none() {
        return Err(ComputeError::UnknownAlgorithm(algorithm.to_string()));
    }
    if ps.len() > MAX_POINTS {
        return Err(ComputeError::TooManyPoints { got: ps.len(), max: MAX_POINTS });
    }
    Ok(dispatch(algorithm, ps, &Args { params })?)
}

fn dispatch(algorithm: &str, ps: &PointSet, a: &Args<'_>) -> Result<Outcome> {
    let graph = |graph: Graph| Outcome::Graph { graph, radii: None };
    if let Ok(kind) = algorithm.parse::<NeighborKind>() {
        let k = if kind.takes_k() { Some(a.size_or("k", DEFAULT_K)?) } else { None };
        return Ok(graph(neighbor_graph(ps, NeighborVariant::new(kind, k)?)?));
    }
    let centroid = || -> Result<(usize, RngSeed, usize)> {
        Ok((
            a.size_or("k", DEFAULT_K)?,
            RngSeed(a.integer("seed")?.unwrap_or(0)),
            a.size_or("max_iter", DEFAULT_MAX_ITER)?,
        ))
    };
    Ok(match algorithm {
        "gabriel" => graph(gabriel_graph(ps)?),
        "rng" => graph(rng_graph(ps)?),
        "soi" => Outcome::Graph {
            graph: soi_graph(ps)?,
            radii: Some(influence_radii(ps)?),
        },
        "epsilon" => graph(epsilon_graph(ps, a.required_number("epsilon")?)?),
        "urquhart" => graph(urquhart_graph(ps)?),
        "yao" => {
            let sectors = a.size_or("sectors", DEFAULT_SECTORS)?;
            let offset = a.number("sector_offset")?.unwrap_or(0.0).to_radians();
            graph(yao_graph_rotated(ps, sectors, offset)?)
        }
        "delaunay" => graph(delaunay_graph(ps)?),
        "kmeans" | "kmeans++" => {
            let (k, seed, max_iter) = centroid()?;
            let init = if algorithm == "kmeans" { Init::Uniform } else { Init::PlusPlus };
            Outcome::Clustering(kmeans(ps, k, seed, init, max_iter)?)
        }
        "kmedoids" => {
            let (k, seed, max_iter) = centroid()?;
            Outcome::Clustering(kmedoids(ps, k, seed, max_iter)?)
        }
        "single-linkage" | "complete-linkage" => {
            let linkage: Linkage = algorithm.parse().expect("catalog id");
            Outcome::Clustering(agglomerate(ps, linkage, a.required_size("target")?)?)
        }
        "dbscan" => Outcome::Clustering(dbscan(
            ps,
            DbscanParams {
                epsilon: a.required_number("epsilon")?,
                min_pts: a.size_or("min_pts", DEFAULT_MIN_PTS)?,
            },
        )?),
        "hdbscan" => {
            let mut p = HdbscanParams::new(a.size_or("min_pts", DEFAULT_MIN_PTS)?);
            if let Some(m) = a.size("min_cluster_size")? {
                p.min_cluster_size = m;
            }
            Outcome::Clustering(hdbscan(ps, p)?)
        }
        "meanshift" => Outcome::Clustering(mean_shift(
            ps,
            MeanShiftParams {
                bandwidth: a.required_number("bandwidth")?,
                max_iter: a.size_or("max_iter", DEFAULT_MEAN_SHIFT_MAX_ITER)?,
                merge_tol: a.number("merge_tol")?,
            },
        )?),
        other => unreachable!("catalog entry `{other}` has no dispatch arm"),
    })
}

/// Delaunay edges; two points give their single edge.
fn delaunay_graph(ps: &PointSet) -> Result<Graph> {
    ps.ensure_at_least(2)?;
    if ps.len() == 2 {
        ps.ensure_distinct()?;
        return Ok(Graph::from_edges(2, [(0, 1)]));
    }
    Ok(delaunay(ps)?.edge_graph())
}

impl ComputeRequest {
    pub fn point_set(&self) -> Result<PointSet> {
        PointSet::new(self.points.iter().map(|&[x, y]| Point2::new(x, y)).collect())
    }

    /// Validates and runs the request.
    pub fn run(&self) -> std::result::Result<(PointSet, Outcome), ComputeError> {
        if find_algorithm(&self.algorithm).is_none() {
            return Err(ComputeError::UnknownAlgorithm(self.algorithm.clone()));
        }
        if self.points.len() > MAX_POINTS {
            return Err(ComputeError::TooManyPoints { got: self.points.len(), max: MAX_POINTS });
        }
        let ps = self.point_set()?;
        let out = run(&self.algorithm, &ps, &self.params)?;
        Ok((ps, out))
    }
}
