//! Built-in example scenarios.
//!
//! Three ready-made inputs exercise the main pipelines end to end:
//!
//! * `quartic-k3` — the boundary of a tetrahedron as a two-sphere with four
//!   triangle charts, all kinks 1, and 24 marked singular points (four per
//!   edge). The embedded monodromy data is the chart at the first vertex:
//!   three shear generators with zero translation and sign parts, relations
//!   left open, and every singular point assigned to the generator whose
//!   permutation class matches its local shear.
//! * `simple-k3` — a 24-generator representation on the sphere alternating
//!   two transvections, subject to the single product relation; all 24 loops
//!   are branch points.
//! * `focus-focus` — the local model with a single monodromy segment over a
//!   one-dimensional base.

use std::collections::BTreeMap;

use crate::linalg::{Int, IntVector};
use crate::monodromy::focus_focus_shear;
use crate::scenario::{
    ComplexScenario, EdgeSpec, FaceSpec, GeneratorSpec, LocalModelScenario, MonodromyScenario,
    Scenario, SingularPointSpec,
};

/// Names accepted by [`by_name`] (and the CLI's `example:` prefix).
pub const NAMES: [&str; 3] = ["quartic-k3", "simple-k3", "focus-focus"];

/// Look up a builtin scenario by name.
pub fn by_name(name: &str) -> Option<Scenario> {
    match name {
        "quartic-k3" => Some(Scenario::Complex(quartic_k3())),
        "simple-k3" => Some(Scenario::Monodromy(simple_k3())),
        "focus-focus" => Some(Scenario::LocalModel(focus_focus())),
        _ => None,
    }
}

/// Row-major matrix of the shear with the given direction and conormal.
fn shear_rows(direction: [Int; 2], conormal: [Int; 2]) -> Vec<Vec<Int>> {
    let t = focus_focus_shear(&IntVector::from(direction), &IntVector::from(conormal))
        .expect("builtin shear frames are primitive and orthogonal");
    t.row_vectors().iter().map(|r| r.0.clone()).collect()
}

/// The tetrahedron-boundary complex with 24 marked points and its chart
/// monodromy.
pub fn quartic_k3() -> ComplexScenario {
    let pairs: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let vertices: Vec<String> = (0..4).map(|i| format!("v{i}")).collect();
    let edges: Vec<EdgeSpec> = pairs
        .iter()
        .map(|(i, j)| EdgeSpec {
            id: format!("e{i}{j}"),
            ends: [format!("v{i}"), format!("v{j}")],
        })
        .collect();
    let faces: Vec<FaceSpec> = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
        .iter()
        .map(|(i, j, k)| FaceSpec {
            id: format!("f{i}{j}{k}"),
            edges: vec![format!("e{i}{j}"), format!("e{i}{k}"), format!("e{j}{k}")],
        })
        .collect();

    // At each vertex the three incident edges (in lexicographic order) get
    // the rays of the standard triangle fan; any kink function that is
    // constant then balances, because the rays sum to zero.
    let rays: [[Int; 2]; 3] = [[1, 0], [0, 1], [-1, -1]];
    let mut vertex_fans = BTreeMap::new();
    for v in 0..4 {
        let incident = pairs.iter().filter(|(i, j)| *i == v || *j == v);
        let fan: BTreeMap<String, Vec<Int>> = incident
            .zip(rays.iter())
            .map(|((i, j), ray)| (format!("e{i}{j}"), ray.to_vec()))
            .collect();
        vertex_fans.insert(format!("v{v}"), fan);
    }
    let kinks: BTreeMap<String, Int> = edges.iter().map(|e| (e.id.clone(), 1)).collect();

    // Shear frames of the six edges in the chart around v0: the three edges
    // at v0 run along their fan rays; the three far edges close up the
    // triangles, e.g. e12 from (1,0) to (0,1).
    let frames: [([Int; 2], [Int; 2]); 6] = [
        ([1, 0], [0, -1]),   // e01
        ([0, 1], [1, 0]),    // e02
        ([1, 1], [1, -1]),   // e03
        ([-1, 1], [1, 1]),   // e12
        ([-2, -1], [1, -2]), // e13
        ([-1, -2], [2, -1]), // e23
    ];
    let mut singular_points = Vec::new();
    for ((i, j), (direction, conormal)) in pairs.iter().zip(frames.iter()) {
        for position in 0..4 {
            singular_points.push(SingularPointSpec {
                edge: format!("e{i}{j}"),
                position,
                direction: direction.to_vec(),
                conormal: conormal.to_vec(),
                sign_change: true,
            });
        }
    }

    // Monodromy of the chart at v0: one shear per edge through v0. The
    // relations of the full group are not listed (partial data).
    let gamma_frames: [([Int; 2], [Int; 2]); 3] =
        [([0, 1], [1, 0]), ([1, 1], [1, -1]), ([1, 0], [0, -1])];
    let generators: Vec<GeneratorSpec> = gamma_frames
        .iter()
        .enumerate()
        .map(|(k, &(d, n))| GeneratorSpec {
            name: format!("gamma{}", k + 1),
            t: shear_rows(d, n),
            lambda: vec![0, 0],
            theta: vec![0, 0],
        })
        .collect();

    // Each singular point branches the cover like the generator whose matrix
    // has the same permutation class (= the same reduction mod 2).
    let class_of = |d: [Int; 2], n: [Int; 2]| {
        focus_focus_shear(&IntVector::from(d), &IntVector::from(n))
            .expect("frames are valid")
            .mod2()
    };
    let branch_points: Vec<String> = singular_points
        .iter()
        .map(|p| {
            let edge_slot = pairs
                .iter()
                .position(|(i, j)| format!("e{i}{j}") == p.edge)
                .expect("singular points sit on listed edges");
            let class = class_of(frames[edge_slot].0, frames[edge_slot].1);
            let hit = gamma_frames
                .iter()
                .position(|&(d, n)| class_of(d, n) == class)
                .expect("every edge shear matches one chart generator mod 2");
            format!("gamma{}", hit + 1)
        })
        .collect();

    let monodromy = MonodromyScenario {
        rank: 2,
        generators,
        relations: Vec::new(),
        partial: true,
        branch_points,
        base_euler: 2,
    };

    ComplexScenario {
        vertices,
        edges,
        faces,
        vertex_fans,
        kinks,
        singular_points,
        monodromy: Some(monodromy),
    }
}

/// The 24-generator alternating representation on the sphere.
pub fn simple_k3() -> MonodromyScenario {
    let odd = shear_rows([1, 0], [0, -1]);
    let even = shear_rows([0, 1], [1, 0]);
    let generators: Vec<GeneratorSpec> = (1..=24)
        .map(|i| GeneratorSpec {
            name: format!("g{i}"),
            t: if i % 2 == 1 {
                odd.clone()
            } else {
                even.clone()
            },
            lambda: vec![0, 0],
            theta: vec![0, 0],
        })
        .collect();
    let all_names: Vec<String> = (1..=24).map(|i| format!("g{i}")).collect();
    MonodromyScenario {
        rank: 2,
        generators,
        relations: vec![all_names.clone()],
        partial: false,
        branch_points: all_names,
        base_euler: 2,
    }
}

/// The local model of a single focus-focus point over a one-dimensional base.
pub fn focus_focus() -> LocalModelScenario {
    LocalModelScenario {
        base_rank: 1,
        fan: vec![vec![vec![1]], vec![vec![-1]]],
        polytopes: vec![vec![vec![0], vec![1]], vec![vec![0], vec![1]]],
        bound: 4,
    }
}
