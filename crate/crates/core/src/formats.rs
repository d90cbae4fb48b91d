//! JSON shapes for polygons, heights, graphs, divisors and subdivisions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chipgraph::{Divisor, GraphError, MetricGraph, Model};
use crate::polygon::{LatticePolygon, Point, RationalPolygon};
use crate::subdivision::{HeightFunction, RegularSubdivision, SubdivisionError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<[i64; 2]>,
}

impl From<&LatticePolygon> for PolygonJson {
    fn from(p: &LatticePolygon) -> Self {
        PolygonJson { vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect() }
    }
}

impl PolygonJson {
    /// Convex hull of the listed points.
    pub fn to_polygon(&self) -> LatticePolygon {
        LatticePolygon::from_points(self.vertices.iter().map(|&[x, y]| (x, y)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPolygonJson {
    pub vertices: Vec<[String; 2]>,
}

impl From<&RationalPolygon> for RationalPolygonJson {
    fn from(p: &RationalPolygon) -> Self {
        RationalPolygonJson { vertices: p.vertices().iter().map(|v| [v.x.to_string(), v.y.to_string()]).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightsJson {
    pub base: PolygonJson,
    pub heights: Vec<[i64; 3]>,
}

impl HeightsJson {
    pub fn to_heights(&self) -> Result<HeightFunction, SubdivisionError> {
        HeightFunction::new(self.base.to_polygon(), self.heights.iter().map(|&[x, y, h]| (Point::new(x, y), h)))
    }
}

impl From<&HeightFunction> for HeightsJson {
    fn from(h: &HeightFunction) -> Self {
        HeightsJson { base: h.base().into(), heights: h.iter().map(|(p, z)| [p.x, p.y, z]).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, u64)>,
}

impl From<&MetricGraph> for GraphJson {
    fn from(g: &MetricGraph) -> Self {
        GraphJson {
            vertices: g.labels().to_vec(),
            edges: g.edges().iter().map(|e| (g.label(e.u).to_string(), g.label(e.v).to_string(), e.length)).collect(),
        }
    }
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<MetricGraph, GraphError> {
        MetricGraph::new(self.vertices.clone(), self.edges.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorJson {
    pub coeffs: BTreeMap<String, i64>,
}

impl DivisorJson {
    pub fn from_divisor(model: &Model, d: &Divisor) -> Self {
        DivisorJson { coeffs: d.to_labeled(model) }
    }

    pub fn to_divisor(&self, model: &Model) -> Result<Divisor, GraphError> {
        Divisor::from_labels(model, self.coeffs.iter().map(|(k, &v)| (k.as_str(), v)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub label: String,
    pub vertices: Vec<[i64; 2]>,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub normal: [i64; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyJson {
    pub cells: (String, String),
    pub edge: [[i64; 2]; 2],
    pub lattice_length: i64,
    pub chain_length: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionJson {
    pub base: PolygonJson,
    pub cells: Vec<CellJson>,
    pub adjacencies: Vec<AdjacencyJson>,
    pub above_hull: Vec<[i64; 2]>,
}

impl From<&RegularSubdivision> for SubdivisionJson {
    fn from(s: &RegularSubdivision) -> Self {
        let labels = s.vertex_labels();
        SubdivisionJson {
            base: (&s.base).into(),
            cells: s
                .cells
                .iter()
                .zip(&labels)
                .map(|(c, l)| CellJson {
                    label: l.clone(),
                    vertices: PolygonJson::from(&c.polygon).vertices,
                    alpha: c.affine.alpha,
                    beta: c.affine.beta,
                    gamma: c.affine.gamma,
                    normal: c.normal().0,
                })
                .collect(),
            adjacencies: s
                .adjacencies
                .iter()
                .map(|a| AdjacencyJson {
                    cells: (labels[a.cells.0].clone(), labels[a.cells.1].clone()),
                    edge: [[a.edge.0.x, a.edge.0.y], [a.edge.1.x, a.edge.1.y]],
                    lattice_length: a.lattice_length,
                    chain_length: a.chain_length,
                })
                .collect(),
            above_hull: s.above_hull.iter().map(|p| [p.x, p.y]).collect(),
        }
    }
}

pub fn parse_polygon(text: &str) -> Result<LatticePolygon, FormatError> {
    Ok(serde_json::from_str::<PolygonJson>(text)?.to_polygon())
}

pub fn parse_heights(text: &str) -> Result<HeightFunction, FormatError> {
    Ok(serde_json::from_str::<HeightsJson>(text)?.to_heights()?)
}

pub fn parse_graph(text: &str) -> Result<MetricGraph, FormatError> {
    Ok(serde_json::from_str::<GraphJson>(text)?.to_graph()?)
}

pub fn parse_divisor(model: &Model, text: &str) -> Result<Divisor, FormatError> {
    Ok(serde_json::from_str::<DivisorJson>(text)?.to_divisor(model)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chipgraph::{expand_model, layered_path_graph};
    use crate::polygon::{dilate, relaxed_hull, upsilon};

    #[test]
    fn polygon_round_trip() {
        let p = dilate(&upsilon(), 2);
        let text = serde_json::to_string(&PolygonJson::from(&p)).unwrap();
        assert_eq!(text, r#"{"vertices":[[-2,-2],[2,0],[0,2]]}"#);
        assert_eq!(parse_polygon(&text).unwrap(), p);
    }

    #[test]
    fn rational_vertices_are_strings() {
        let r = relaxed_hull(&LatticePolygon::from_points([(0, 0), (3, 0), (0, 1)])).unwrap();
        let json = serde_json::to_value(RationalPolygonJson::from(&r.polygon)).unwrap();
        assert!(json["vertices"].as_array().unwrap().iter().any(|v| v[1] == "5/3"));
    }

    #[test]
    fn graph_and_divisor_round_trip() {
        let g = layered_path_graph(3);
        let text = serde_json::to_string(&GraphJson::from(&g)).unwrap();
        assert_eq!(parse_graph(&text).unwrap(), g);
        let m = expand_model(&g, 1).unwrap();
        let d = parse_divisor(&m, r#"{"coeffs": {"v3": 3}}"#).unwrap();
        assert_eq!(d, Divisor(vec![0, 0, 3]));
        assert!(parse_divisor(&m, r#"{"coeffs": {"w": 1}}"#).is_err());
        assert!(parse_graph(r#"{"vertices": ["a"], "edges": [["a", "a", 1]]}"#).is_err());
    }

    #[test]
    fn heights_round_trip() {
        let text = r#"{"base": {"vertices": [[0,0],[1,0],[0,1],[1,1]]}, "heights": [[0,0,0],[1,0,0],[0,1,0],[1,1,1]]}"#;
        let h = parse_heights(text).unwrap();
        assert_eq!(h.get(Point::new(1, 1)), Some(1));
        assert!(parse_heights(r#"{"base": {"vertices": [[0,0],[1,0],[0,1]]}, "heights": [[0,0,0]]}"#).is_err());
    }
}
