//! JSON scenario files: the external input format of the tool.
//!
//! A scenario is a tagged JSON object with `"kind"` one of `"monodromy"`,
//! `"local_model"`, or `"complex"`. The schema mirrors the domain types but
//! uses plain lists and name references so files stay hand-editable:
//! matrices are row-major integer lists, relation words are lists of signed
//! generator names (`"g2"` / `"g2^-1"`), and complexes reference cells by id.
//!
//! Conversion methods ([`MonodromyScenario::to_rep`],
//! [`LocalModelScenario::to_spec`], [`ComplexScenario::to_complex`]) resolve
//! the references and run the structural validation of the target types, so
//! a scenario that converts is ready for the algorithms. Unknown JSON fields
//! are ignored; omitted optional fields get the documented defaults.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{
    Cell, ComplexError, MplFunction, PolyhedralComplex, SingularPoint, VertexChart,
};
use crate::linalg::{Gf2Vector, Int, IntMatrix, IntVector, LinalgError};
use crate::monodromy::{AffineRep, AffineTriple, MonodromyError, Presentation, Word};
use crate::monoid::{LocalModelSpec, MonoidError};

/// Errors from parsing or resolving a scenario.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("cannot parse scenario JSON: {0}")]
    Json(String),
    #[error("unknown {kind} {name:?}")]
    UnknownName { kind: &'static str, name: String },
    #[error("{what} has length {found}, expected {expected}")]
    WrongLength {
        what: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("scenario kind {kind:?} does not support this command")]
    WrongKind { kind: &'static str },
    #[error("complex scenario has no embedded monodromy data")]
    MissingMonodromy,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// A parsed scenario file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scenario {
    Monodromy(MonodromyScenario),
    LocalModel(LocalModelScenario),
    Complex(ComplexScenario),
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario, ScenarioError> {
        serde_json::from_str(text).map_err(|e| ScenarioError::Json(e.to_string()))
    }

    /// Pretty-printed JSON with a trailing newline (stable field order).
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("scenarios always serialize");
        out.push('\n');
        out
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Monodromy(_) => "monodromy",
            Scenario::LocalModel(_) => "local_model",
            Scenario::Complex(_) => "complex",
        }
    }
}

/// One generator of a monodromy scenario: matrix row-major, translation and
/// sign covectors as flat lists (omitted lists mean zero).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub t: Vec<Vec<Int>>,
    #[serde(default)]
    pub lambda: Vec<Int>,
    #[serde(default)]
    pub theta: Vec<u8>,
}

fn default_base_euler() -> i64 {
    2
}

/// An affine monodromy representation plus the branch bookkeeping needed to
/// classify its real cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyScenario {
    pub rank: usize,
    pub generators: Vec<GeneratorSpec>,
    /// Relation words as signed generator names.
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
    /// True when the relations are known to be incomplete.
    #[serde(default)]
    pub partial: bool,
    /// Branch points by the name of the generator encircling them
    /// (repetitions allowed; order is report order).
    #[serde(default)]
    pub branch_points: Vec<String>,
    /// Euler characteristic of the base (sphere by default).
    #[serde(default = "default_base_euler")]
    pub base_euler: i64,
}

impl MonodromyScenario {
    /// Resolve names and build the validated representation.
    pub fn to_rep(&self) -> Result<AffineRep, ScenarioError> {
        let names: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        let skeleton = Presentation::new(names.clone(), Vec::new(), self.partial)?;
        let relations: Vec<Word> = self
            .relations
            .iter()
            .map(|tokens| skeleton.word_from_names(tokens))
            .collect::<Result<_, _>>()?;
        let presentation = Presentation::new(names, relations, self.partial)?;
        let triples: Vec<AffineTriple> = self
            .generators
            .iter()
            .map(|g| -> Result<AffineTriple, ScenarioError> {
                let t = IntMatrix::new(g.t.clone())?;
                let lambda = if g.lambda.is_empty() {
                    IntVector::zeros(self.rank)
                } else if g.lambda.len() == self.rank {
                    IntVector(g.lambda.clone())
                } else {
                    return Err(ScenarioError::WrongLength {
                        what: "lambda",
                        found: g.lambda.len(),
                        expected: self.rank,
                    });
                };
                let theta = if g.theta.is_empty() {
                    Gf2Vector::zeros(self.rank)
                } else if g.theta.len() == self.rank {
                    Gf2Vector::new(g.theta.clone())?
                } else {
                    return Err(ScenarioError::WrongLength {
                        what: "theta",
                        found: g.theta.len(),
                        expected: self.rank,
                    });
                };
                Ok(AffineTriple { t, lambda, theta })
            })
            .collect::<Result<_, _>>()?;
        Ok(AffineRep::new(self.rank, presentation, triples)?)
    }
}

fn default_bound() -> Int {
    4
}

/// Tropical data of a local model, plus the enumeration bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalModelScenario {
    pub base_rank: usize,
    /// Maximal cones of the base fan, each a list of ray generators.
    pub fan: Vec<Vec<Vec<Int>>>,
    /// Vertex lists of the polytopes (base polytope first).
    pub polytopes: Vec<Vec<Vec<Int>>>,
    /// Half-width of the lattice box used for monoid enumeration.
    #[serde(default = "default_bound")]
    pub bound: Int,
}

impl LocalModelScenario {
    pub fn to_spec(&self) -> LocalModelSpec {
        let wrap = |lists: &Vec<Vec<Int>>| lists.iter().map(|v| IntVector(v.clone())).collect();
        LocalModelSpec {
            base_rank: self.base_rank,
            fan: self.fan.iter().map(wrap).collect(),
            polytopes: self.polytopes.iter().map(wrap).collect(),
        }
    }
}

/// An edge referencing its two endpoint vertices by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub ends: [String; 2],
}

/// A two-cell referencing its boundary edges by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSpec {
    pub id: String,
    pub edges: Vec<String>,
}

/// A marked singular point on an edge, with its shear frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPointSpec {
    pub edge: String,
    pub position: usize,
    pub direction: Vec<Int>,
    pub conormal: Vec<Int>,
    #[serde(default)]
    pub sign_change: bool,
}

/// A two-dimensional polyhedral complex with charts, kinks, marked singular
/// points, and optionally the monodromy data computed from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexScenario {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    pub faces: Vec<FaceSpec>,
    /// Chart rays: vertex id -> (incident edge id -> primitive ray).
    pub vertex_fans: BTreeMap<String, BTreeMap<String, Vec<Int>>>,
    /// Kink integers keyed by edge id.
    pub kinks: BTreeMap<String, Int>,
    #[serde(default)]
    pub singular_points: Vec<SingularPointSpec>,
    /// Monodromy representation attached to the complex (used by the
    /// classification and cohomology commands).
    #[serde(default)]
    pub monodromy: Option<MonodromyScenario>,
}

/// The resolved domain objects of a complex scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexData {
    pub complex: PolyhedralComplex,
    pub mpl: MplFunction,
    pub singular_points: Vec<SingularPoint>,
}

impl ComplexScenario {
    /// Resolve ids, build the validated complex, and check the marked points.
    pub fn to_complex(&self) -> Result<ComplexData, ScenarioError> {
        let vertex_index = |name: &str| {
            self.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| ScenarioError::UnknownName {
                    kind: "vertex",
                    name: name.to_string(),
                })
        };
        let edge_index = |name: &str| {
            self.edges
                .iter()
                .position(|e| e.id == name)
                .ok_or_else(|| ScenarioError::UnknownName {
                    kind: "edge",
                    name: name.to_string(),
                })
        };

        let vertex_cells: Vec<Cell> = self
            .vertices
            .iter()
            .map(|id| Cell {
                id: id.clone(),
                faces: Vec::new(),
            })
            .collect();
        let edge_cells: Vec<Cell> = self
            .edges
            .iter()
            .map(|e| -> Result<Cell, ScenarioError> {
                Ok(Cell {
                    id: e.id.clone(),
                    faces: vec![vertex_index(&e.ends[0])?, vertex_index(&e.ends[1])?],
                })
            })
            .collect::<Result<_, _>>()?;
        let face_cells: Vec<Cell> = self
            .faces
            .iter()
            .map(|f| -> Result<Cell, ScenarioError> {
                Ok(Cell {
                    id: f.id.clone(),
                    faces: f
                        .edges
                        .iter()
                        .map(|e| edge_index(e))
                        .collect::<Result<_, _>>()?,
                })
            })
            .collect::<Result<_, _>>()?;

        let mut charts: BTreeMap<usize, VertexChart> = BTreeMap::new();
        for (vertex, rays) in &self.vertex_fans {
            let v = vertex_index(vertex)?;
            let mut chart = VertexChart::new();
            for (edge, ray) in rays {
                chart.insert(edge_index(edge)?, IntVector(ray.clone()));
            }
            charts.insert(v, chart);
        }

        let complex =
            PolyhedralComplex::new(2, vec![vertex_cells, edge_cells, face_cells], charts)?;

        let mut kinks = BTreeMap::new();
        for (edge, &kink) in &self.kinks {
            kinks.insert(edge_index(edge)?, kink);
        }
        let mpl = MplFunction::new(kinks);

        let singular_points: Vec<SingularPoint> = self
            .singular_points
            .iter()
            .map(|p| -> Result<SingularPoint, ScenarioError> {
                Ok(SingularPoint {
                    edge: edge_index(&p.edge)?,
                    position: p.position,
                    direction: IntVector(p.direction.clone()),
                    conormal: IntVector(p.conormal.clone()),
                    sign_change: p.sign_change,
                })
            })
            .collect::<Result<_, _>>()?;
        complex.validate_singular_points(&singular_points)?;

        Ok(ComplexData {
            complex,
            mpl,
            singular_points,
        })
    }

    /// The embedded monodromy scenario, or an error if there is none.
    pub fn monodromy(&self) -> Result<&MonodromyScenario, ScenarioError> {
        self.monodromy
            .as_ref()
            .ok_or(ScenarioError::MissingMonodromy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monodromy_scenario_round_trips_and_resolves() {
        let text = r#"{
            "kind": "monodromy",
            "rank": 2,
            "generators": [
                {"name": "a", "t": [[1, 0], [1, 1]], "lambda": [1, 0], "theta": [0, 1]},
                {"name": "b", "t": [[1, -1], [0, 1]]}
            ],
            "relations": [["a", "b", "a^-1", "b^-1"]],
            "branch_points": ["a", "a", "b"]
        }"#;
        let scenario = Scenario::from_json(text).unwrap();
        assert_eq!(scenario.kind(), "monodromy");
        let reparsed = Scenario::from_json(&scenario.to_json()).unwrap();
        assert_eq!(reparsed, scenario);

        let Scenario::Monodromy(m) = &scenario else {
            panic!("expected monodromy scenario");
        };
        assert_eq!(m.base_euler, 2);
        let rep = m.to_rep().unwrap();
        assert_eq!(rep.rank, 2);
        assert_eq!(rep.presentation.relations.len(), 1);
        assert_eq!(rep.presentation.relations[0].len(), 4);
        assert!(rep.presentation.relations[0][2].inverse);
        // Omitted lambda/theta default to zero.
        assert!(rep.triples[1].lambda.is_zero());
        assert!(rep.triples[1].theta.is_zero());
    }

    #[test]
    fn monodromy_scenario_rejects_bad_data() {
        let m = MonodromyScenario {
            rank: 2,
            generators: vec![GeneratorSpec {
                name: "a".into(),
                t: vec![vec![1, 0], vec![0, 1]],
                lambda: vec![1],
                theta: vec![],
            }],
            relations: vec![],
            partial: false,
            branch_points: vec![],
            base_euler: 2,
        };
        assert!(matches!(
            m.to_rep(),
            Err(ScenarioError::WrongLength { what: "lambda", .. })
        ));

        let unknown = MonodromyScenario {
            relations: vec![vec!["zz".into()]],
            generators: vec![GeneratorSpec {
                name: "a".into(),
                t: vec![vec![1, 0], vec![0, 1]],
                lambda: vec![],
                theta: vec![],
            }],
            ..m
        };
        assert!(unknown.to_rep().is_err());
    }

    #[test]
    fn local_model_scenario_defaults_bound() {
        let text = r#"{
            "kind": "local_model",
            "base_rank": 1,
            "fan": [[[1]], [[-1]]],
            "polytopes": [[[0], [1]], [[0], [1]]]
        }"#;
        let Scenario::LocalModel(lm) = Scenario::from_json(text).unwrap() else {
            panic!("expected local model scenario");
        };
        assert_eq!(lm.bound, 4);
        let spec = lm.to_spec();
        assert_eq!(spec.total_rank(), 3);
        spec.validate().unwrap();
    }

    #[test]
    fn complex_scenario_resolves_names() {
        let text = r#"{
            "kind": "complex",
            "vertices": ["a", "b"],
            "edges": [{"id": "e", "ends": ["a", "b"]}],
            "faces": [],
            "vertex_fans": {},
            "kinks": {"e": 1},
            "singular_points": [
                {"edge": "e", "position": 0, "direction": [1, 0], "conormal": [0, 1]}
            ]
        }"#;
        let Scenario::Complex(c) = Scenario::from_json(text).unwrap() else {
            panic!("expected complex scenario");
        };
        let data = c.to_complex().unwrap();
        assert_eq!(data.complex.cells(1).len(), 1);
        assert_eq!(data.mpl.kinks[&0], 1);
        assert_eq!(data.singular_points[0].edge, 0);
        assert!(!data.singular_points[0].sign_change);
        assert!(matches!(
            c.monodromy(),
            Err(ScenarioError::MissingMonodromy)
        ));

        let mut broken = c.clone();
        broken.edges[0].ends[1] = "zz".into();
        assert!(matches!(
            broken.to_complex(),
            Err(ScenarioError::UnknownName { kind: "vertex", .. })
        ));
    }

    #[test]
    fn parse_errors_are_reported_as_json_errors() {
        assert!(matches!(
            Scenario::from_json("{"),
            Err(ScenarioError::Json(_))
        ));
        assert!(matches!(
            Scenario::from_json(r#"{"kind": "nope"}"#),
            Err(ScenarioError::Json(_))
        ));
    }
}
