//! Rational cones, toric monoids, and local models of toric degenerations.
//!
//! Cones are stored by their primitive ray generators ([`RationalCone`]);
//! [`dual_cone`] produces the generators of `{ y : <y, g> >= 0 }` by exact
//! candidate enumeration (every extreme ray of a pointed cone is cut out by
//! `d - 1` independent active constraints), including the degenerate cases
//! with lineality. A [`ToricMonoid`] is the monoid of lattice points of a
//! strictly convex cone, enumerated inside the coordinate box
//! `[-bound, bound]^d`: [`monoid_generators`] extracts the irreducible
//! elements found there and verifies that they generate every enumerated
//! point (exactly, not only inside the box).
//!
//! A [`LocalModelSpec`] describes the tropical input near one singular cell:
//! a fan on the base, a polytope `Delta_0` whose support function is strictly
//! convex, and simplex polytopes `Delta_1..Delta_q` for the monodromy
//! directions. [`build_local_model`] assembles the monoid
//! `P = { (m, a) : a_i >= psi_i(m) }`, [`monodromy_cone`] the cone spanned by
//! the `Delta_i x e_i` for `i >= 1` together with a lattice-standardness
//! certificate, and [`ghost_rank`] the rank drop from a face, whose power of
//! two is the cardinality of the corresponding real moment-map fiber.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Int, IntMatrix, IntVector, LinalgError};

/// Largest ambient rank supported by the dual-cone enumeration.
pub const MAX_DUAL_AMBIENT: usize = 4;

/// Errors from cone, monoid, and local-model computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("ambient rank {rank} exceeds the dual-cone enumeration limit {max}")]
    AmbientTooLarge { rank: usize, max: usize },
    #[error("generator {index} has length {found}, ambient rank is {expected}")]
    WrongGeneratorLength {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("the zero vector cannot generate a ray")]
    ZeroGenerator,
    #[error("cone is not strictly convex (it contains a line)")]
    ConeNotStrictlyConvex,
    #[error("enumeration bound must be positive (got {bound})")]
    BadBound { bound: Int },
    #[error(
        "bound {bound} is too small: enumerated point {point} is not generated \
         by the irreducible elements found inside the box"
    )]
    BoundInsufficient { bound: Int, point: IntVector },
    #[error("polytope {index}: {detail}")]
    BadPolytope { index: usize, detail: String },
    #[error("fan cone {index}: {detail}")]
    BadFan { index: usize, detail: String },
    #[error(
        "support function of polytope {polytope} is not linear on fan cone {cone}: \
         no vertex is optimal on the whole cone"
    )]
    NotPiecewiseLinear { polytope: usize, cone: usize },
    #[error("base support function is not strictly convex: {detail}")]
    BaseNotStrictlyConvex { detail: String },
    #[error("face generator {vector} is not a generator of the monoid")]
    FaceGeneratorUnknown { vector: IntVector },
    #[error(
        "the given generators do not span a face: point {point} lies on the minimal \
         face containing them but is not one of their combinations"
    )]
    NotAFace { point: IntVector },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

// ---------------------------------------------------------------------------
// Rational cones
// ---------------------------------------------------------------------------

/// A rational polyhedral cone given by primitive ray generators.
///
/// Construction canonicalizes: generators are scaled primitive, deduplicated,
/// and sorted, so equal cones given by equal ray sets compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalCone {
    ambient_rank: usize,
    generators: Vec<IntVector>,
}

impl RationalCone {
    pub fn new(ambient_rank: usize, generators: Vec<IntVector>) -> Result<Self, MonoidError> {
        let mut canonical = BTreeSet::new();
        for (index, g) in generators.iter().enumerate() {
            if g.len() != ambient_rank {
                return Err(MonoidError::WrongGeneratorLength {
                    index,
                    found: g.len(),
                    expected: ambient_rank,
                });
            }
            if g.is_zero() {
                return Err(MonoidError::ZeroGenerator);
            }
            canonical.insert(g.primitive()?);
        }
        Ok(RationalCone {
            ambient_rank,
            generators: canonical.into_iter().collect(),
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    /// Dimension of the linear span of the cone.
    pub fn rank(&self) -> usize {
        if self.generators.is_empty() {
            0
        } else {
            IntMatrix::from_rows(self.generators.clone())
                .expect("generators share a length")
                .rank()
        }
    }
}

/// All subsets of `0..n` of the given size, in lexicographic order.
fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(
        start: usize,
        n: usize,
        size: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, size, current, out);
            current.pop();
        }
    }
    rec(0, n, size, &mut current, &mut out);
    out
}

/// Generators of the dual cone `{ y : <y, g> >= 0 for all generators g }`.
///
/// Handles non-pointed duals: the result then contains a plus/minus basis of
/// the lineality space next to the extreme rays of the pointed part. Output
/// generators are primitive, deduplicated, and sorted.
pub fn dual_cone(cone: &RationalCone) -> Result<RationalCone, MonoidError> {
    let d = cone.ambient_rank;
    if d > MAX_DUAL_AMBIENT {
        return Err(MonoidError::AmbientTooLarge {
            rank: d,
            max: MAX_DUAL_AMBIENT,
        });
    }
    if d == 0 {
        return RationalCone::new(0, Vec::new());
    }
    let gens = &cone.generators;
    // Lineality of the dual: everything orthogonal to all generators.
    let lineality: Vec<IntVector> = if gens.is_empty() {
        (0..d).map(|i| IntVector::basis(d, i)).collect()
    } else {
        IntMatrix::from_rows(gens.clone())?.kernel_vectors()
    };

    // Candidate rays of the pointed part lie on d-1 independent active
    // constraints, drawn from the generators and the lineality hyperplanes.
    let mut rows: Vec<IntVector> = gens.clone();
    for l in &lineality {
        rows.push(l.clone());
        rows.push(l.neg()?);
    }
    let mut rays: BTreeSet<IntVector> = BTreeSet::new();
    for subset in combinations(rows.len(), d - 1) {
        let kernel: Vec<IntVector> = if subset.is_empty() {
            (0..d).map(|i| IntVector::basis(d, i)).collect()
        } else {
            IntMatrix::from_rows(subset.iter().map(|&i| rows[i].clone()).collect())?
                .kernel_vectors()
        };
        if kernel.len() != 1 {
            continue;
        }
        for w in [kernel[0].clone(), kernel[0].neg()?] {
            let feasible = gens
                .iter()
                .map(|g| w.dot(g))
                .collect::<Result<Vec<_>, _>>()?
                .iter()
                .all(|&p| p >= 0);
            let orthogonal = lineality
                .iter()
                .map(|l| w.dot(l))
                .collect::<Result<Vec<_>, _>>()?
                .iter()
                .all(|&p| p == 0);
            if feasible && orthogonal {
                rays.insert(w.primitive()?);
            }
        }
    }
    let mut out: Vec<IntVector> = rays.into_iter().collect();
    for l in lineality {
        out.push(l.neg()?);
        out.push(l);
    }
    RationalCone::new(d, out)
}

// ---------------------------------------------------------------------------
// Toric monoids enumerated in a box
// ---------------------------------------------------------------------------

/// The monoid of lattice points of a strictly convex rational cone, with the
/// irreducible generators found inside `[-bound, bound]^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToricMonoid {
    ambient_rank: usize,
    /// Irreducible elements inside the box, sorted; these generate every
    /// lattice point of the cone that the box enumeration reaches.
    generators: Vec<IntVector>,
    /// The cone whose lattice points form the monoid (ray representation).
    cone: RationalCone,
    /// Dual generators; pairing every one of them nonnegatively is the exact
    /// membership test for the monoid.
    dual: RationalCone,
    bound: Int,
}

impl ToricMonoid {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn cone(&self) -> &RationalCone {
        &self.cone
    }

    pub fn dual(&self) -> &RationalCone {
        &self.dual
    }

    pub fn bound(&self) -> Int {
        self.bound
    }

    /// Exact membership test (not limited to the box).
    pub fn contains(&self, point: &IntVector) -> Result<bool, MonoidError> {
        in_cone(point, self.dual.generators())
    }

    /// All monoid elements inside the enumeration box, including zero,
    /// in lexicographic order.
    pub fn enumerate_box(&self) -> Result<Vec<IntVector>, MonoidError> {
        let mut out = Vec::new();
        for p in box_points(self.ambient_rank, self.bound) {
            if self.contains(&p)? {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Rank of the group generated by the monoid (= dimension of its cone).
    pub fn group_rank(&self) -> usize {
        if self.generators.is_empty() {
            0
        } else {
            IntMatrix::from_rows(self.generators.clone())
                .expect("generators share a length")
                .rank()
        }
    }
}

fn in_cone(point: &IntVector, dual_generators: &[IntVector]) -> Result<bool, MonoidError> {
    for h in dual_generators {
        if point.dot(h)? < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lattice points of `[-bound, bound]^rank` in lexicographic order.
fn box_points(rank: usize, bound: Int) -> Vec<IntVector> {
    let mut out = Vec::new();
    let mut current = vec![-bound; rank];
    loop {
        out.push(IntVector(current.clone()));
        let mut i = rank;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < bound {
                current[i] += 1;
                for slot in current.iter_mut().skip(i + 1) {
                    *slot = -bound;
                }
                break;
            }
        }
    }
}

/// Compute the irreducible generators of the lattice-point monoid of `cone`
/// inside the box `[-bound, bound]^d`.
///
/// The cone must be strictly convex. After extracting the irreducible
/// elements, every enumerated point is verified to be a sum of them (the
/// verification walks outside the box where necessary, using the exact cone
/// membership test); failure reports [`MonoidError::BoundInsufficient`].
pub fn monoid_generators(cone: &RationalCone, bound: Int) -> Result<ToricMonoid, MonoidError> {
    let dual = dual_cone(cone)?;
    hilbert_in_box(cone.clone(), dual, bound)
}

/// Shared monoid assembly: `cone` is the ray representation of the monoid's
/// cone and `dual` its inequality representation.
fn hilbert_in_box(
    cone: RationalCone,
    dual: RationalCone,
    bound: Int,
) -> Result<ToricMonoid, MonoidError> {
    if bound < 1 {
        return Err(MonoidError::BadBound { bound });
    }
    let d = cone.ambient_rank();
    // Strict convexity is equivalent to the dual spanning the ambient space.
    if dual.rank() != d {
        return Err(MonoidError::ConeNotStrictlyConvex);
    }

    let points: Vec<IntVector> = box_points(d, bound)
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| Ok((in_cone(&p, dual.generators())?, p)))
        .collect::<Result<Vec<_>, MonoidError>>()?
        .into_iter()
        .filter_map(|(inside, p)| inside.then_some(p))
        .collect();

    let mut generators = Vec::new();
    for p in &points {
        let mut reducible = false;
        for q in &points {
            if q == p {
                continue;
            }
            let r = p.sub(q)?;
            if !r.is_zero() && in_cone(&r, dual.generators())? {
                reducible = true;
                break;
            }
        }
        if !reducible {
            generators.push(p.clone());
        }
    }

    // Verify generation of every enumerated point; the recursion may leave
    // the box but always lowers a strictly positive functional, so it stops.
    let mut memo: BTreeMap<IntVector, bool> = BTreeMap::new();
    for p in &points {
        if !generated_by(p, &generators, dual.generators(), &mut memo)? {
            return Err(MonoidError::BoundInsufficient {
                bound,
                point: p.clone(),
            });
        }
    }

    Ok(ToricMonoid {
        ambient_rank: d,
        generators,
        cone,
        dual,
        bound,
    })
}

fn generated_by(
    point: &IntVector,
    generators: &[IntVector],
    dual_generators: &[IntVector],
    memo: &mut BTreeMap<IntVector, bool>,
) -> Result<bool, MonoidError> {
    if point.is_zero() {
        return Ok(true);
    }
    if let Some(&hit) = memo.get(point) {
        return Ok(hit);
    }
    let mut ok = false;
    for g in generators {
        let rest = point.sub(g)?;
        if in_cone(&rest, dual_generators)?
            && generated_by(&rest, generators, dual_generators, memo)?
        {
            ok = true;
            break;
        }
    }
    memo.insert(point.clone(), ok);
    Ok(ok)
}

// ---------------------------------------------------------------------------
// Local models
// ---------------------------------------------------------------------------

/// Tropical input data of a local model.
///
/// `fan` lists the maximal cones of a fan on the base (each cone by its ray
/// generators); `polytopes[0]` is the polytope of the strictly convex base
/// support function and `polytopes[1..]` are the monodromy simplices. All
/// polytopes are given by their vertex lists in the dual of the base lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalModelSpec {
    pub base_rank: usize,
    pub fan: Vec<Vec<IntVector>>,
    pub polytopes: Vec<Vec<IntVector>>,
}

impl LocalModelSpec {
    /// Number of monodromy polytopes (`polytopes.len() - 1`).
    pub fn q(&self) -> usize {
        self.polytopes.len().saturating_sub(1)
    }

    /// Rank of the total lattice `M = M' + Z^(q+1)`.
    pub fn total_rank(&self) -> usize {
        self.base_rank + self.q() + 1
    }

    /// Value of the i-th support function: `max over vertices v of <-v, m>`.
    pub fn psi(&self, i: usize, m: &IntVector) -> Result<Int, MonoidError> {
        let mut best: Option<Int> = None;
        for v in &self.polytopes[i] {
            let value = -v.dot(m)?;
            best = Some(best.map_or(value, |b: Int| b.max(value)));
        }
        Ok(best.expect("polytopes are validated nonempty"))
    }

    /// Structural validation of the tropical data.
    pub fn validate(&self) -> Result<(), MonoidError> {
        if self.polytopes.is_empty() {
            return Err(MonoidError::BadPolytope {
                index: 0,
                detail: "at least the base polytope is required".into(),
            });
        }
        for (index, polytope) in self.polytopes.iter().enumerate() {
            if polytope.is_empty() {
                return Err(MonoidError::BadPolytope {
                    index,
                    detail: "vertex list is empty".into(),
                });
            }
            let mut seen = BTreeSet::new();
            for v in polytope {
                if v.len() != self.base_rank {
                    return Err(MonoidError::BadPolytope {
                        index,
                        detail: format!(
                            "vertex {v} has length {}, base rank is {}",
                            v.len(),
                            self.base_rank
                        ),
                    });
                }
                if !seen.insert(v.clone()) {
                    return Err(MonoidError::BadPolytope {
                        index,
                        detail: format!("vertex {v} repeats"),
                    });
                }
            }
            if index >= 1 && polytope.len() > 1 {
                // Monodromy polytopes must be simplices: the edge vectors from
                // the first vertex are linearly independent.
                let edges: Vec<IntVector> = polytope[1..]
                    .iter()
                    .map(|v| v.sub(&polytope[0]))
                    .collect::<Result<_, _>>()?;
                let rank = IntMatrix::from_rows(edges.clone())?.rank();
                if rank != edges.len() {
                    return Err(MonoidError::BadPolytope {
                        index,
                        detail: "vertices are not affinely independent (not a simplex)".into(),
                    });
                }
            }
        }

        if self.fan.is_empty() {
            return Err(MonoidError::BadFan {
                index: 0,
                detail: "fan has no maximal cones".into(),
            });
        }
        for (index, cone) in self.fan.iter().enumerate() {
            if cone.is_empty() {
                return Err(MonoidError::BadFan {
                    index,
                    detail: "cone has no generators".into(),
                });
            }
            for g in cone {
                if g.len() != self.base_rank {
                    return Err(MonoidError::BadFan {
                        index,
                        detail: format!("generator {g} has the wrong length"),
                    });
                }
                if g.is_zero() {
                    return Err(MonoidError::BadFan {
                        index,
                        detail: "zero generator".into(),
                    });
                }
            }
            let rank = IntMatrix::from_rows(cone.clone())?.rank();
            if rank != self.base_rank {
                return Err(MonoidError::BadFan {
                    index,
                    detail: format!("cone spans rank {rank}, expected {}", self.base_rank),
                });
            }
        }

        // Every support function must be linear on every maximal cone: some
        // vertex has to be optimal at all cone generators simultaneously.
        // (Optimality at the generators extends to the cone by sublinearity.)
        let mut base_optimal_vertices = Vec::new();
        for (cone_index, cone) in self.fan.iter().enumerate() {
            for (poly_index, polytope) in self.polytopes.iter().enumerate() {
                let mut optimal = Vec::new();
                for (vi, v) in polytope.iter().enumerate() {
                    let mut attains_all = true;
                    for g in cone {
                        if -v.dot(g)? != self.psi(poly_index, g)? {
                            attains_all = false;
                            break;
                        }
                    }
                    if attains_all {
                        optimal.push(vi);
                    }
                }
                if optimal.is_empty() {
                    return Err(MonoidError::NotPiecewiseLinear {
                        polytope: poly_index,
                        cone: cone_index,
                    });
                }
                if poly_index == 0 {
                    // Strict convexity needs a unique optimal vertex per cone.
                    if optimal.len() > 1 {
                        return Err(MonoidError::BaseNotStrictlyConvex {
                            detail: format!(
                                "fan cone {cone_index} has {} optimal vertices",
                                optimal.len()
                            ),
                        });
                    }
                    base_optimal_vertices.push(optimal[0]);
                }
            }
        }
        // ... and distinct linear parts on distinct maximal cones.
        let distinct: BTreeSet<usize> = base_optimal_vertices.iter().copied().collect();
        if distinct.len() != base_optimal_vertices.len() {
            return Err(MonoidError::BaseNotStrictlyConvex {
                detail: "two fan cones share the same optimal vertex".into(),
            });
        }
        Ok(())
    }

    /// The cone spanned by all `Delta_i x e_i` (including `i = 0`), whose
    /// dual cuts out the local-model monoid.
    pub fn model_cone(&self) -> Result<RationalCone, MonoidError> {
        let mut gens = Vec::new();
        for (i, polytope) in self.polytopes.iter().enumerate() {
            for v in polytope {
                gens.push(embed(v, self.base_rank + i, self.total_rank())?);
            }
        }
        RationalCone::new(self.total_rank(), gens)
    }
}

/// Copy `head` into a longer vector with a single 1 at position `slot`.
fn embed(head: &IntVector, slot: usize, total: usize) -> Result<IntVector, MonoidError> {
    let mut out = vec![0; total];
    out[..head.len()].copy_from_slice(&head.0);
    out[slot] = 1;
    Ok(IntVector(out))
}

/// A constructed local model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalModel {
    /// The tropical data the model was built from.
    pub spec: LocalModelSpec,
    /// The monoid `P = { (m, a) : a_i >= psi_i(m) }` with its box generators.
    pub monoid: ToricMonoid,
    /// The cone spanned by the `Delta_i x e_i`; its dual is the cone of `P`.
    pub model_cone: RationalCone,
    /// Result of the round-trip consistency check: membership via the support
    /// functions agrees with membership via the twice-dualized cone on every
    /// box point.
    pub consistent: bool,
}

/// Build the local model from tropical data.
///
/// The monoid cone is computed as the dual of the model cone and its
/// irreducible generators are enumerated inside `[-bound, bound]^d`. The
/// `consistent` flag cross-checks the polyhedral route (double dualization)
/// against the direct support-function definition of `P` on the whole box.
pub fn build_local_model(spec: &LocalModelSpec, bound: Int) -> Result<LocalModel, MonoidError> {
    spec.validate()?;
    let model_cone = spec.model_cone()?;
    let p_cone = dual_cone(&model_cone)?;
    let p_dual = dual_cone(&p_cone)?;
    let monoid = hilbert_in_box(p_cone, p_dual, bound)?;

    let d = spec.total_rank();
    let mut consistent = true;
    for point in box_points(d, bound) {
        let by_cone = monoid.contains(&point)?;
        let m = IntVector(point.0[..spec.base_rank].to_vec());
        let mut by_psi = true;
        for i in 0..=spec.q() {
            if point.0[spec.base_rank + i] < spec.psi(i, &m)? {
                by_psi = false;
                break;
            }
        }
        if by_cone != by_psi {
            consistent = false;
            break;
        }
    }

    Ok(LocalModel {
        spec: spec.clone(),
        monoid,
        model_cone,
        consistent,
    })
}

impl LocalModel {
    /// The degeneration direction `e_0 = (0, ..., 0 | 1, 0, ..., 0)`: the
    /// unit vector of the `a_0` coordinate right after the base block.
    pub fn t_direction(&self) -> IntVector {
        IntVector::basis(self.spec.total_rank(), self.spec.base_rank)
    }

    /// Generators of the minimal face of the monoid containing the
    /// degeneration direction.
    pub fn t_direction_face(&self) -> Result<Vec<IntVector>, MonoidError> {
        minimal_face_containing(&self.monoid, &self.t_direction())
    }

    /// Ghost rank of the t-direction face: the real moment-map fiber over a
    /// generic point of the degeneration axis has `2^rank` points.
    pub fn t_direction_ghost_rank(&self) -> Result<GhostRank, MonoidError> {
        let face = self.t_direction_face()?;
        ghost_rank(&self.monoid, &face)
    }
}

/// Generators of the minimal face of `monoid` containing `point`: all monoid
/// generators annihilated by the sum of the dual generators vanishing on
/// `point`.
pub fn minimal_face_containing(
    monoid: &ToricMonoid,
    point: &IntVector,
) -> Result<Vec<IntVector>, MonoidError> {
    let mut support = IntVector::zeros(monoid.ambient_rank());
    for h in monoid.dual().generators() {
        if point.dot(h)? == 0 {
            support = support.add(h)?;
        }
    }
    let mut face = Vec::new();
    for g in monoid.generators() {
        if g.dot(&support)? == 0 {
            face.push(g.clone());
        }
    }
    Ok(face)
}

/// Rank data of a face of a toric monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GhostRank {
    /// Rank of the monoid's group minus rank of the face's group.
    pub rank: usize,
    /// `2^rank`: the number of points of the corresponding real fiber.
    pub fiber_size: u64,
}

/// Compute the ghost rank of the face generated by `face_generators`
/// (a subset of the monoid's generators; the empty set names the face `{0}`).
///
/// The face property is validated exactly on the enumeration box: the given
/// generators must exhaust the exposed face cut out by the dual generators
/// vanishing on all of them. The ghost rank is the rank of the monoid's
/// group minus the rank of the face's group.
pub fn ghost_rank(
    monoid: &ToricMonoid,
    face_generators: &[IntVector],
) -> Result<GhostRank, MonoidError> {
    for g in face_generators {
        if !monoid.generators().contains(g) {
            return Err(MonoidError::FaceGeneratorUnknown { vector: g.clone() });
        }
    }

    // Exposing functional: sum of the dual generators vanishing on the face.
    let mut support = IntVector::zeros(monoid.ambient_rank());
    for h in monoid.dual().generators() {
        let mut vanishes = true;
        for g in face_generators {
            if g.dot(h)? != 0 {
                vanishes = false;
                break;
            }
        }
        if vanishes {
            support = support.add(h)?;
        }
    }

    // Every box point of the exposed face must be a combination of the given
    // generators; otherwise they generate no face of the monoid.
    let mut memo: BTreeMap<IntVector, bool> = BTreeMap::new();
    for p in monoid.enumerate_box()? {
        if p.dot(&support)? != 0 {
            continue;
        }
        if !generated_by(&p, face_generators, monoid.dual().generators(), &mut memo)? {
            return Err(MonoidError::NotAFace { point: p });
        }
    }

    let total = monoid.group_rank();
    let face_rank = if face_generators.is_empty() {
        0
    } else {
        IntMatrix::from_rows(face_generators.to_vec())?.rank()
    };
    let rank = total - face_rank;
    Ok(GhostRank {
        rank,
        fiber_size: 1u64 << rank,
    })
}

/// The monodromy cone of a local model: the span of `Delta_i x e_i` for
/// `i >= 1` only, together with its standardness certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonodromyCone {
    pub cone: RationalCone,
    /// True when the generators extend to a basis of the ambient lattice
    /// (the local singularity is of standard type).
    pub is_standard: bool,
    /// Gcd of the maximal minors of the generator matrix (0 when the
    /// generators are linearly dependent; 1 for the empty cone).
    pub minor_gcd: Int,
}

/// Compute the monodromy cone of the tropical data: generated by the
/// monodromy polytopes placed at the heights `e_1..e_q` (the base polytope
/// does not contribute).
pub fn monodromy_cone(spec: &LocalModelSpec) -> Result<MonodromyCone, MonoidError> {
    spec.validate()?;
    let total = spec.total_rank();
    let mut gens = Vec::new();
    for (i, polytope) in spec.polytopes.iter().enumerate().skip(1) {
        for v in polytope {
            gens.push(embed(v, spec.base_rank + i, total)?);
        }
    }
    let cone = RationalCone::new(total, gens)?;

    let k = cone.generators().len();
    let (is_standard, minor_gcd) = if k == 0 {
        (true, 1)
    } else {
        let matrix = IntMatrix::from_rows(cone.generators().to_vec())?;
        if matrix.rank() != k {
            (false, 0)
        } else {
            let mut gcd_acc: Int = 0;
            for cols in combinations(total, k) {
                let minor = IntMatrix::new(
                    cone.generators()
                        .iter()
                        .map(|g| cols.iter().map(|&c| g.0[c]).collect())
                        .collect(),
                )?;
                gcd_acc = crate::linalg::gcd(gcd_acc, minor.det()?);
            }
            (gcd_acc == 1, gcd_acc)
        }
    };
    Ok(MonodromyCone {
        cone,
        is_standard,
        minor_gcd,
    })
}
