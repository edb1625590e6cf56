//! The permutation action of an affine monodromy representation on the
//! 2^n-point real fiber, and the branched-cover bookkeeping built on top.
//!
//! Over a chosen component `mu = +-1` of the real base torus, a loop with
//! triple `(T, lambda, theta)` acts on sign vectors `phi` in GF(2)^n by
//!
//! ```text
//! phi  ->  phi * (T mod 2) + [mu = -1] * (lambda mod 2) + theta
//! ```
//!
//! Fiber points are numbered by [`Gf2Vector::to_index`] (entry 0 is the low
//! bit). Orbits of the action are the connected components of the real locus
//! over that base component; [`classify`] adds Euler characteristics and
//! genus via Riemann–Hurwitz once branch points are specified.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{Gf2Vector, LinalgError};
use crate::monodromy::{AffineRep, MonodromyError};

/// Largest supported matrix rank for fiber enumeration (fiber size 2^rank).
pub const MAX_ACTION_RANK: usize = 16;

/// Errors from building or classifying fiber actions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("rank {rank} exceeds the fiber enumeration limit {max}")]
    RankTooLarge { rank: usize, max: usize },
    #[error("unknown generator {name:?} among branch points")]
    UnknownGenerator { name: String },
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which component of the real base torus the fiber sits over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+1" | "1" | "plus" => Ok(Sign::Plus),
            "-1" | "minus" => Ok(Sign::Minus),
            other => Err(format!("expected +1 or -1, got {other:?}")),
        }
    }
}

/// The permutation action of every generator on one real fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverAction {
    pub rank: usize,
    pub sign: Sign,
    pub generator_names: Vec<String>,
    /// `maps[g][i]` is the image of fiber point `i` under generator `g`.
    pub maps: Vec<Vec<usize>>,
}

impl CoverAction {
    /// Number of fiber points (2^rank).
    pub fn fiber_size(&self) -> usize {
        1 << self.rank
    }
}

/// Evaluate the fiber action of every generator of `rep` over the base
/// component `sign`.
pub fn build_action(rep: &AffineRep, sign: Sign) -> Result<CoverAction, CoverError> {
    if rep.rank > MAX_ACTION_RANK {
        return Err(CoverError::RankTooLarge {
            rank: rep.rank,
            max: MAX_ACTION_RANK,
        });
    }
    let size = 1usize << rep.rank;
    let mut maps = Vec::with_capacity(rep.triples.len());
    for triple in &rep.triples {
        let tbar = triple.t.mod2();
        let mut shift = triple.theta.clone();
        if sign == Sign::Minus {
            shift = shift.add(&triple.lambda.mod2())?;
        }
        let mut map = Vec::with_capacity(size);
        for index in 0..size {
            let phi = Gf2Vector::from_index(index, rep.rank);
            let image = phi.mul_mat(&tbar)?.add(&shift)?;
            map.push(image.to_index());
        }
        // A unimodular matrix is invertible mod 2, so the affine map is a
        // permutation; anything else is a construction bug.
        let mut seen = vec![false; size];
        for &i in &map {
            assert!(!seen[i], "fiber action is not a permutation");
            seen[i] = true;
        }
        maps.push(map);
    }
    Ok(CoverAction {
        rank: rep.rank,
        sign,
        generator_names: rep.presentation.generators.clone(),
        maps,
    })
}

/// Orbit partition of the fiber under all generators. Each orbit is sorted
/// ascending; orbits are ordered by their smallest point.
pub fn orbits(action: &CoverAction) -> Vec<Vec<usize>> {
    let size = action.fiber_size();
    let mut seen = vec![false; size];
    let mut out = Vec::new();
    for start in 0..size {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut frontier = vec![start];
        while let Some(p) = frontier.pop() {
            for map in &action.maps {
                let q = map[p];
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                    frontier.push(q);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Cycle structure of one branch point over one component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchCycles {
    /// Generator whose loop encircles the branch point.
    pub generator: String,
    /// Cycle lengths of that generator on the component, longest first.
    pub cycle_lengths: Vec<usize>,
    /// True for a simple branch point: one 2-cycle, everything else fixed.
    pub simple: bool,
}

/// One connected component of the real locus over the chosen base component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    /// Covering degree (number of fiber points in the orbit).
    pub degree: usize,
    /// The fiber points, sorted ascending.
    pub points: Vec<usize>,
    /// Cycle data of every branch point over this component.
    pub branch: Vec<BranchCycles>,
    /// Euler characteristic from Riemann–Hurwitz:
    /// `degree * base_euler - sum (cycle_length - 1)`.
    pub euler: i64,
    /// Genus `(2 - euler) / 2`, only when the base is a sphere and the Euler
    /// characteristic is even; `None` otherwise.
    pub genus: Option<i64>,
    /// Genus assumes the component is orientable; this flag records that the
    /// assumption was used rather than checked.
    pub orientable_assumed: bool,
}

/// Branched-cover classification of one fiber action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub sign: Sign,
    /// Total covering degree (the fiber size 2^rank).
    pub total_degree: usize,
    pub components: Vec<ComponentReport>,
    /// True when the whole fiber is a single orbit.
    pub connected: bool,
}

/// Classify the components of the cover: orbit decomposition plus cycle data
/// of the listed branch points (generator names, repeats allowed) and
/// Riemann–Hurwitz Euler characteristics over a base of Euler characteristic
/// `base_euler`.
pub fn classify(
    action: &CoverAction,
    branch_points: &[String],
    base_euler: i64,
) -> Result<CoverReport, CoverError> {
    let branch_gens: Vec<usize> = branch_points
        .iter()
        .map(|name| {
            action
                .generator_names
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| CoverError::UnknownGenerator { name: name.clone() })
        })
        .collect::<Result<_, _>>()?;

    let mut components = Vec::new();
    for orbit in orbits(action) {
        let degree = orbit.len();
        let mut branch = Vec::new();
        let mut ramification: i64 = 0;
        for &g in &branch_gens {
            let cycle_lengths = cycle_lengths_on(&action.maps[g], &orbit);
            ramification += cycle_lengths.iter().map(|&l| l as i64 - 1).sum::<i64>();
            let simple = cycle_lengths.iter().filter(|&&l| l == 2).count() == 1
                && cycle_lengths.iter().all(|&l| l <= 2);
            branch.push(BranchCycles {
                generator: action.generator_names[g].clone(),
                cycle_lengths,
                simple,
            });
        }
        let euler = degree as i64 * base_euler - ramification;
        let genus = if base_euler == 2 && euler % 2 == 0 {
            Some((2 - euler) / 2)
        } else {
            None
        };
        components.push(ComponentReport {
            degree,
            points: orbit,
            branch,
            euler,
            genus,
            orientable_assumed: genus.is_some(),
        });
    }
    Ok(CoverReport {
        sign: action.sign,
        total_degree: action.fiber_size(),
        connected: components.len() == 1,
        components,
    })
}

/// Cycle lengths of a permutation restricted to an invariant subset.
fn cycle_lengths_on(map: &[usize], orbit: &[usize]) -> Vec<usize> {
    let mut done: std::collections::BTreeSet<usize> = std::collections::BTreeSet::new();
    let mut lengths = Vec::new();
    for &start in orbit {
        if done.contains(&start) {
            continue;
        }
        let mut len = 0;
        let mut p = start;
        loop {
            done.insert(p);
            len += 1;
            p = map[p];
            if p == start {
                break;
            }
            debug_assert!(
                orbit.contains(&p),
                "orbit is not invariant under the generator"
            );
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

/// Shift the sign data of `rep` by the coboundary of `phi`:
/// `theta(g) -> theta(g) + phi * (T(g) mod 2) + phi`.
///
/// This is the gauge move induced by translating every fiber by `phi`; it
/// conjugates the fiber action and therefore changes no orbit sizes or
/// branch cycle types.
pub fn theta_shift(rep: &AffineRep, phi: &Gf2Vector) -> Result<AffineRep, CoverError> {
    let mut shifted = rep.clone();
    for triple in &mut shifted.triples {
        let moved = phi.mul_mat(&triple.t.mod2())?.add(phi)?;
        triple.theta = triple.theta.add(&moved)?;
    }
    Ok(shifted)
}
