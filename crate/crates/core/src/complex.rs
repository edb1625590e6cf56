//! Polyhedral intersection complexes with integral affine charts.
//!
//! A [`PolyhedralComplex`] stores cells layer by layer (vertices, edges, ...,
//! maximal cells) together with a fan chart at each vertex: one primitive
//! integer ray per incident edge, expressed in the integral affine structure
//! around that vertex. A multivalued piecewise linear function is recorded by
//! its integer kinks across codimension-1 cells ([`MplFunction`]); the
//! balancing validator checks that the kinks close up around every vertex.
//!
//! Marked singular points ([`SingularPoint`]) live on codimension-1 cells and
//! carry the primitive tangent direction and conormal of their local shear,
//! plus a flag recording whether the sign data changes across the slab.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{Int, IntVector, LinalgError};

/// Errors from complex construction and validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    /// The number of cell layers must be `dimension + 1`.
    #[error("expected {expected} cell layers for dimension {dimension}, found {found}")]
    WrongLayerCount {
        dimension: usize,
        expected: usize,
        found: usize,
    },
    /// Two cells in the same layer share an id.
    #[error("duplicate cell id {id:?} in dimension {dim}")]
    DuplicateId { dim: usize, id: String },
    /// A cell references a face index outside the previous layer.
    #[error("cell {cell:?} (dimension {dim}) references face index {face} out of range")]
    FaceOutOfRange {
        dim: usize,
        cell: String,
        face: usize,
    },
    /// A positive-dimensional cell must have at least one face, none repeated.
    #[error("cell {cell:?} (dimension {dim}) has an empty or repeating face list")]
    BadFaceList { dim: usize, cell: String },
    /// A codimension-1 cell may bound at most two maximal cells.
    #[error("codimension-1 cell {cell:?} has {count} maximal cofaces (at most 2 allowed)")]
    TooManyCofaces { cell: String, count: usize },
    /// Balancing is implemented for two-dimensional complexes only.
    #[error("balancing validation supports dimension 2 only (complex has dimension {dimension})")]
    UnsupportedDimension { dimension: usize },
    /// Every vertex needs a chart before balancing can be checked.
    #[error("vertex {vertex:?} has no affine chart")]
    MissingChart { vertex: String },
    /// Chart rays must be indexed by exactly the incident edges.
    #[error("chart at vertex {vertex:?} does not match its incident edges: {detail}")]
    ChartMismatch { vertex: String, detail: String },
    /// Chart rays must be primitive vectors of the ambient dimension.
    #[error(
        "chart ray for edge {edge:?} at vertex {vertex:?} must be primitive of length {expected}"
    )]
    BadRay {
        vertex: String,
        edge: String,
        expected: usize,
    },
    /// The kink function must assign an integer to every codimension-1 cell.
    #[error("kink function does not match the complex: {detail}")]
    KinkMismatch { detail: String },
    /// A marked singular point failed validation.
    #[error("singular point {index}: {reason}")]
    BadSingularPoint { index: usize, reason: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// One cell, identified by name, with its boundary in the layer below.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub id: String,
    /// Indices into the cell layer of one dimension lower (empty for vertices).
    pub faces: Vec<usize>,
}

/// Fan chart at a vertex: a primitive ray per incident edge.
pub type VertexChart = BTreeMap<usize, IntVector>;

/// A polyhedral complex with integral affine vertex charts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedralComplex {
    dimension: usize,
    /// `cells[d]` lists the d-dimensional cells.
    cells: Vec<Vec<Cell>>,
    /// Charts keyed by vertex index; values map incident edge index to ray.
    charts: BTreeMap<usize, VertexChart>,
}

impl PolyhedralComplex {
    /// Build and structurally validate a complex.
    ///
    /// Checks layer count, id uniqueness per layer, face indices, and the
    /// covering invariant that every codimension-1 cell bounds at most two
    /// maximal cells. Charts are checked later, by [`Self::validate_balancing`],
    /// because only balancing needs them complete.
    pub fn new(
        dimension: usize,
        cells: Vec<Vec<Cell>>,
        charts: BTreeMap<usize, VertexChart>,
    ) -> Result<Self, ComplexError> {
        if cells.len() != dimension + 1 {
            return Err(ComplexError::WrongLayerCount {
                dimension,
                expected: dimension + 1,
                found: cells.len(),
            });
        }
        for (dim, layer) in cells.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for cell in layer {
                if !seen.insert(&cell.id) {
                    return Err(ComplexError::DuplicateId {
                        dim,
                        id: cell.id.clone(),
                    });
                }
            }
            for cell in layer {
                if dim == 0 {
                    if !cell.faces.is_empty() {
                        return Err(ComplexError::BadFaceList {
                            dim,
                            cell: cell.id.clone(),
                        });
                    }
                    continue;
                }
                let below = cells[dim - 1].len();
                if cell.faces.is_empty() {
                    return Err(ComplexError::BadFaceList {
                        dim,
                        cell: cell.id.clone(),
                    });
                }
                let mut face_seen = BTreeSet::new();
                for &f in &cell.faces {
                    if f >= below {
                        return Err(ComplexError::FaceOutOfRange {
                            dim,
                            cell: cell.id.clone(),
                            face: f,
                        });
                    }
                    if !face_seen.insert(f) {
                        return Err(ComplexError::BadFaceList {
                            dim,
                            cell: cell.id.clone(),
                        });
                    }
                }
            }
        }
        if dimension >= 1 {
            let codim1 = &cells[dimension - 1];
            let mut coface_count = vec![0usize; codim1.len()];
            for top in &cells[dimension] {
                for &f in &top.faces {
                    coface_count[f] += 1;
                }
            }
            for (i, &count) in coface_count.iter().enumerate() {
                if count > 2 {
                    return Err(ComplexError::TooManyCofaces {
                        cell: codim1[i].id.clone(),
                        count,
                    });
                }
            }
        }
        for (&v, chart) in &charts {
            if v >= cells[0].len() {
                return Err(ComplexError::MissingChart {
                    vertex: format!("#{v}"),
                });
            }
            for &e in chart.keys() {
                if dimension == 0 || e >= cells[1].len() {
                    return Err(ComplexError::ChartMismatch {
                        vertex: cells[0][v].id.clone(),
                        detail: format!("edge index {e} out of range"),
                    });
                }
            }
        }
        Ok(PolyhedralComplex {
            dimension,
            cells,
            charts,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The d-dimensional cells.
    pub fn cells(&self, dim: usize) -> &[Cell] {
        &self.cells[dim]
    }

    pub fn charts(&self) -> &BTreeMap<usize, VertexChart> {
        &self.charts
    }

    /// Index of the cell with the given id in dimension `dim`.
    pub fn cell_index(&self, dim: usize, id: &str) -> Option<usize> {
        self.cells[dim].iter().position(|c| c.id == id)
    }

    /// Indices of the edges containing the given vertex.
    pub fn incident_edges(&self, vertex: usize) -> Vec<usize> {
        if self.dimension == 0 {
            return Vec::new();
        }
        self.cells[1]
            .iter()
            .enumerate()
            .filter(|(_, e)| e.faces.contains(&vertex))
            .map(|(i, _)| i)
            .collect()
    }

    /// Check that the kinks of `mpl` balance around every vertex.
    ///
    /// Requires dimension 2, a kink for every edge, and a complete primitive
    /// chart at every vertex. The defect at a vertex is
    /// `sum_e kink(e) * ray(v, e)` over incident edges; a balanced function
    /// has zero defect everywhere. All violations are collected, not just the
    /// first.
    pub fn validate_balancing(&self, mpl: &MplFunction) -> Result<BalanceReport, ComplexError> {
        if self.dimension != 2 {
            return Err(ComplexError::UnsupportedDimension {
                dimension: self.dimension,
            });
        }
        let edges = &self.cells[1];
        let edge_indices: BTreeSet<usize> = (0..edges.len()).collect();
        let kink_keys: BTreeSet<usize> = mpl.kinks.keys().copied().collect();
        if kink_keys != edge_indices {
            return Err(ComplexError::KinkMismatch {
                detail: format!(
                    "kinks assigned to {} cells, complex has {} codimension-1 cells",
                    kink_keys.len(),
                    edge_indices.len()
                ),
            });
        }
        let mut violations = Vec::new();
        for (v, vertex) in self.cells[0].iter().enumerate() {
            let chart = self.charts.get(&v).ok_or(ComplexError::MissingChart {
                vertex: vertex.id.clone(),
            })?;
            let incident: BTreeSet<usize> = self.incident_edges(v).into_iter().collect();
            let chart_edges: BTreeSet<usize> = chart.keys().copied().collect();
            if incident != chart_edges {
                return Err(ComplexError::ChartMismatch {
                    vertex: vertex.id.clone(),
                    detail: format!(
                        "chart covers {} edges, vertex has {} incident edges",
                        chart_edges.len(),
                        incident.len()
                    ),
                });
            }
            let mut defect = IntVector::zeros(self.dimension);
            for (&e, ray) in chart {
                if ray.len() != self.dimension || !ray.is_primitive() {
                    return Err(ComplexError::BadRay {
                        vertex: vertex.id.clone(),
                        edge: edges[e].id.clone(),
                        expected: self.dimension,
                    });
                }
                defect = defect.add(&ray.scale(mpl.kinks[&e])?)?;
            }
            if !defect.is_zero() {
                violations.push(BalanceViolation {
                    vertex: vertex.id.clone(),
                    defect,
                });
            }
        }
        Ok(BalanceReport { violations })
    }

    /// Validate marked singular points against this complex.
    ///
    /// Each point must sit on a codimension-1 cell, occupy a position not
    /// taken by another point on the same cell, and carry primitive tangent
    /// and conormal vectors of the ambient dimension pairing to zero.
    pub fn validate_singular_points(&self, points: &[SingularPoint]) -> Result<(), ComplexError> {
        let codim1 = if self.dimension >= 1 {
            self.cells[self.dimension - 1].len()
        } else {
            0
        };
        let mut taken = BTreeSet::new();
        for (index, p) in points.iter().enumerate() {
            let fail = |reason: String| ComplexError::BadSingularPoint { index, reason };
            if p.edge >= codim1 {
                return Err(fail(format!("edge index {} out of range", p.edge)));
            }
            if !taken.insert((p.edge, p.position)) {
                return Err(fail(format!(
                    "position {} on edge {} is already occupied",
                    p.position, p.edge
                )));
            }
            if p.direction.len() != self.dimension || p.conormal.len() != self.dimension {
                return Err(fail(format!(
                    "direction/conormal must have length {}",
                    self.dimension
                )));
            }
            if !p.direction.is_primitive() {
                return Err(fail("direction is not primitive".into()));
            }
            if !p.conormal.is_primitive() {
                return Err(fail("conormal is not primitive".into()));
            }
            if p.conormal.dot(&p.direction)? != 0 {
                return Err(fail("conormal does not annihilate the direction".into()));
            }
        }
        Ok(())
    }
}

/// Integer kinks of a multivalued piecewise linear function, one per
/// codimension-1 cell (keyed by cell index).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MplFunction {
    pub kinks: BTreeMap<usize, Int>,
}

impl MplFunction {
    pub fn new(kinks: BTreeMap<usize, Int>) -> Self {
        MplFunction { kinks }
    }

    /// The constant-kink function on all codimension-1 cells of `complex`.
    pub fn constant(complex: &PolyhedralComplex, kink: Int) -> Self {
        let codim1 = if complex.dimension() >= 1 {
            complex.cells(complex.dimension() - 1).len()
        } else {
            0
        };
        MplFunction {
            kinks: (0..codim1).map(|e| (e, kink)).collect(),
        }
    }

    /// Copy with one kink replaced (handy for perturbation tests).
    pub fn with_kink(&self, edge: usize, kink: Int) -> Self {
        let mut kinks = self.kinks.clone();
        kinks.insert(edge, kink);
        MplFunction { kinks }
    }
}

/// A marked singular point on a codimension-1 cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPoint {
    /// Index of the host codimension-1 cell.
    pub edge: usize,
    /// Ordinal slot along the cell (distinct per cell).
    pub position: usize,
    /// Primitive tangent direction of the cell in an ambient chart.
    pub direction: IntVector,
    /// Primitive conormal of the cell; pairs to zero with `direction`.
    pub conormal: IntVector,
    /// Whether the sign data changes across the slab through this point.
    pub sign_change: bool,
}

/// Balancing defect at one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceViolation {
    pub vertex: String,
    /// The nonzero sum `sum_e kink(e) * ray(v, e)`.
    pub defect: IntVector,
}

/// Outcome of balancing validation: all vertices with nonzero defect.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceReport {
    pub violations: Vec<BalanceViolation>,
}

impl BalanceReport {
    pub fn is_balanced(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;

    fn cell(id: &str, faces: &[usize]) -> Cell {
        Cell {
            id: id.to_string(),
            faces: faces.to_vec(),
        }
    }

    /// Two triangles glued along their three common edges (a sphere).
    /// Every vertex has two incident edges; charts use rays (1,0) and (0,1).
    fn pillow() -> PolyhedralComplex {
        let vertices = vec![cell("a", &[]), cell("b", &[]), cell("c", &[])];
        let edges = vec![
            cell("ab", &[0, 1]),
            cell("bc", &[1, 2]),
            cell("ca", &[2, 0]),
        ];
        let faces = vec![cell("upper", &[0, 1, 2]), cell("lower", &[0, 1, 2])];
        let mut charts = BTreeMap::new();
        charts.insert(0, chart(&[(0, [1, 0]), (2, [0, 1])]));
        charts.insert(1, chart(&[(0, [1, 0]), (1, [0, 1])]));
        charts.insert(2, chart(&[(1, [1, 0]), (2, [0, 1])]));
        PolyhedralComplex::new(2, vec![vertices, edges, faces], charts).unwrap()
    }

    fn chart(rays: &[(usize, [Int; 2])]) -> VertexChart {
        rays.iter()
            .map(|&(e, ray)| (e, IntVector::from(ray)))
            .collect()
    }

    #[test]
    fn structural_validation_accepts_pillow() {
        let c = pillow();
        assert_eq!(c.dimension(), 2);
        assert_eq!(c.cells(1).len(), 3);
        assert_eq!(c.incident_edges(0), vec![0, 2]);
        assert_eq!(c.cell_index(1, "bc"), Some(1));
    }

    #[test]
    fn structural_validation_catches_errors() {
        let vertices = vec![cell("a", &[]), cell("b", &[])];
        // Face index out of range.
        let bad_edges = vec![cell("ab", &[0, 5])];
        let err = PolyhedralComplex::new(1, vec![vertices.clone(), bad_edges], BTreeMap::new())
            .unwrap_err();
        assert!(matches!(err, ComplexError::FaceOutOfRange { face: 5, .. }));

        // Duplicate ids.
        let err = PolyhedralComplex::new(
            1,
            vec![
                vec![cell("a", &[]), cell("a", &[])],
                vec![cell("e", &[0, 1])],
            ],
            BTreeMap::new(),
        )
        .unwrap_err();
        assert!(matches!(err, ComplexError::DuplicateId { .. }));

        // Wrong layer count.
        let err = PolyhedralComplex::new(2, vec![vertices.clone()], BTreeMap::new()).unwrap_err();
        assert!(matches!(err, ComplexError::WrongLayerCount { .. }));

        // Three maximal cells sharing one codimension-1 cell.
        let err = PolyhedralComplex::new(
            2,
            vec![
                vec![cell("a", &[]), cell("b", &[]), cell("c", &[])],
                vec![
                    cell("ab", &[0, 1]),
                    cell("bc", &[1, 2]),
                    cell("ca", &[2, 0]),
                ],
                vec![
                    cell("f1", &[0, 1, 2]),
                    cell("f2", &[0, 1, 2]),
                    cell("f3", &[0, 1, 2]),
                ],
            ],
            BTreeMap::new(),
        )
        .unwrap_err();
        assert!(matches!(err, ComplexError::TooManyCofaces { count: 3, .. }));
    }

    #[test]
    fn balancing_zero_kinks_passes() {
        let c = pillow();
        let report = c.validate_balancing(&MplFunction::constant(&c, 0)).unwrap();
        assert!(report.is_balanced());
    }

    #[test]
    fn balancing_collects_all_violations() {
        let c = pillow();
        // Constant kink 1 cannot balance two independent rays at a vertex.
        let report = c.validate_balancing(&MplFunction::constant(&c, 1)).unwrap();
        assert_eq!(report.violations.len(), 3);
        for v in &report.violations {
            assert_eq!(v.defect, IntVector::from([1, 1]));
        }
    }

    #[test]
    fn balancing_wrong_dimension_is_rejected() {
        let c = PolyhedralComplex::new(
            1,
            vec![
                vec![cell("a", &[]), cell("b", &[])],
                vec![cell("ab", &[0, 1])],
            ],
            BTreeMap::new(),
        )
        .unwrap();
        let err = c
            .validate_balancing(&MplFunction::constant(&c, 1))
            .unwrap_err();
        assert!(matches!(
            err,
            ComplexError::UnsupportedDimension { dimension: 1 }
        ));
    }

    #[test]
    fn balancing_requires_matching_kinks_and_charts() {
        let c = pillow();
        let mut kinks = MplFunction::constant(&c, 0).kinks;
        kinks.remove(&1);
        let err = c.validate_balancing(&MplFunction::new(kinks)).unwrap_err();
        assert!(matches!(err, ComplexError::KinkMismatch { .. }));

        // Remove a chart.
        let mut charts = c.charts().clone();
        charts.remove(&2);
        let broken = PolyhedralComplex::new(
            2,
            vec![
                c.cells(0).to_vec(),
                c.cells(1).to_vec(),
                c.cells(2).to_vec(),
            ],
            charts,
        )
        .unwrap();
        let err = broken
            .validate_balancing(&MplFunction::constant(&broken, 0))
            .unwrap_err();
        assert!(matches!(err, ComplexError::MissingChart { .. }));
    }

    #[test]
    fn balancing_rejects_imprimitive_rays() {
        let c = pillow();
        let mut charts = c.charts().clone();
        charts.insert(0, chart(&[(0, [2, 0]), (2, [0, 1])]));
        let broken = PolyhedralComplex::new(
            2,
            vec![
                c.cells(0).to_vec(),
                c.cells(1).to_vec(),
                c.cells(2).to_vec(),
            ],
            charts,
        )
        .unwrap();
        let err = broken
            .validate_balancing(&MplFunction::constant(&broken, 0))
            .unwrap_err();
        assert!(matches!(err, ComplexError::BadRay { .. }));
    }

    #[test]
    fn balancing_defect_is_chart_equivariant() {
        // Changing the chart at a vertex by U in GL(2, Z) transports the
        // defect by U acting on columns; in particular zero stays zero.
        let c = pillow();
        let u = IntMatrix::new(vec![vec![1, 1], vec![0, 1]]).unwrap();
        let mut charts = c.charts().clone();
        let transformed: VertexChart = charts[&0]
            .iter()
            .map(|(&e, ray)| (e, u.mul_col(ray).unwrap()))
            .collect();
        charts.insert(0, transformed);
        let moved = PolyhedralComplex::new(
            2,
            vec![
                c.cells(0).to_vec(),
                c.cells(1).to_vec(),
                c.cells(2).to_vec(),
            ],
            charts,
        )
        .unwrap();

        let mpl_zero = MplFunction::constant(&c, 0);
        assert!(moved.validate_balancing(&mpl_zero).unwrap().is_balanced());

        let mpl_one = MplFunction::constant(&c, 1);
        let before = c.validate_balancing(&mpl_one).unwrap();
        let after = moved.validate_balancing(&mpl_one).unwrap();
        let defect_before = &before
            .violations
            .iter()
            .find(|v| v.vertex == "a")
            .unwrap()
            .defect;
        let defect_after = &after
            .violations
            .iter()
            .find(|v| v.vertex == "a")
            .unwrap()
            .defect;
        assert_eq!(*defect_after, u.mul_col(defect_before).unwrap());
    }

    #[test]
    fn perturbing_one_kink_breaks_both_endpoints() {
        // Start from a balanced configuration (all kinks zero), perturb one
        // edge: exactly its two endpoints acquire a defect.
        let c = pillow();
        let mpl = MplFunction::constant(&c, 0).with_kink(0, 1);
        let report = c.validate_balancing(&mpl).unwrap();
        let vertices: Vec<&str> = report
            .violations
            .iter()
            .map(|v| v.vertex.as_str())
            .collect();
        assert_eq!(vertices, vec!["a", "b"]);
    }

    #[test]
    fn singular_point_validation() {
        let c = pillow();
        let good = SingularPoint {
            edge: 0,
            position: 0,
            direction: IntVector::from([1, 0]),
            conormal: IntVector::from([0, -1]),
            sign_change: true,
        };
        c.validate_singular_points(std::slice::from_ref(&good))
            .unwrap();

        // Occupied slot.
        let err = c
            .validate_singular_points(&[good.clone(), good.clone()])
            .unwrap_err();
        assert!(matches!(
            err,
            ComplexError::BadSingularPoint { index: 1, .. }
        ));

        // Conormal must annihilate the direction.
        let skew = SingularPoint {
            conormal: IntVector::from([1, 1]),
            ..good.clone()
        };
        assert!(c.validate_singular_points(&[skew]).is_err());

        // Direction must be primitive.
        let fat = SingularPoint {
            direction: IntVector::from([2, 0]),
            ..good.clone()
        };
        assert!(c.validate_singular_points(&[fat]).is_err());

        // Edge index must exist.
        let off = SingularPoint { edge: 9, ..good };
        assert!(c.validate_singular_points(&[off]).is_err());
    }
}
