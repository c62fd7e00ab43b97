//! Independent reference computations and random instance generators shared
//! by the integration and acceptance tests.

#![allow(dead_code, clippy::needless_range_loop)]

use std::fmt::Write as _;
use std::sync::Arc;

use gaitlab_core::dataset::{LabeledDataset, Layout};
use gaitlab_core::mocap::{
    AngleUnit, Bone, Channel, MotionFrame, MotionSequence, Root, RotationOrder, Skeleton, Units,
};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sum of 12 uniforms minus 6: a cheap, dependency-free normal deviate.
pub fn normal(rng: &mut impl Rng) -> f64 {
    (0..12).map(|_| rng.random::<f64>()).sum::<f64>() - 6.0
}

/// A dataset with `classes` identities in `dim` dimensions. Class means are
/// spread by `spread`, samples scattered around them with unit deviation.
pub fn random_dataset(
    rng: &mut impl Rng,
    dim: usize,
    class_sizes: &[usize],
    spread: f64,
) -> LabeledDataset {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels = Vec::new();
    for (c, &n) in class_sizes.iter().enumerate() {
        let mean: Vec<f64> = (0..dim).map(|_| spread * normal(rng)).collect();
        for _ in 0..n {
            rows.push(mean.iter().map(|m| m + normal(rng)).collect());
            labels.push(format!("c{c}"));
        }
    }
    // interleave the classes so nothing depends on sample order
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.shuffle(rng);
    let rows: Vec<Vec<f64>> = order.iter().map(|&i| rows[i].clone()).collect();
    let labels = order.iter().map(|&i| labels[i].clone()).collect();
    LabeledDataset::from_rows(Layout::Raw, dim, &rows, labels).unwrap()
}

/// One member of the random family: `C ∈ 2..=6`, `D ∈ 3..=20`,
/// `N_c ∈ 3..=15` (all classes the same size when `balanced`).
pub fn family_member(rng: &mut impl Rng, balanced: bool) -> LabeledDataset {
    let classes = rng.random_range(2..=6);
    let dim = rng.random_range(3..=20);
    let common = rng.random_range(3..=15);
    let sizes: Vec<usize> = (0..classes)
        .map(|_| {
            if balanced {
                common
            } else {
                rng.random_range(3..=15)
            }
        })
        .collect();
    let spread = rng.random_range(0.2..3.0);
    random_dataset(rng, dim, &sizes, spread)
}

/// Plain-loop scatter matrices `(Σb, Σw, Σt)`, with `Σt` the covariance of all
/// samples about the overall mean.
pub fn naive_scatter(data: &LabeledDataset) -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
    let d = data.dim();
    let n = data.len();
    let mut mean = vec![0.0; d];
    for i in 0..n {
        for r in 0..d {
            mean[r] += data.samples()[(r, i)] / n as f64;
        }
    }
    let mut sb = DMatrix::zeros(d, d);
    let mut sw = DMatrix::zeros(d, d);
    for class in data.classes() {
        let nc = class.members.len() as f64;
        let mut mc = vec![0.0; d];
        for &i in &class.members {
            for r in 0..d {
                mc[r] += data.samples()[(r, i)] / nc;
            }
        }
        for a in 0..d {
            for b in 0..d {
                sb[(a, b)] += (mc[a] - mean[a]) * (mc[b] - mean[b]);
                for &i in &class.members {
                    let g = data.samples();
                    sw[(a, b)] += (g[(a, i)] - mc[a]) * (g[(b, i)] - mc[b]) / nc;
                }
            }
        }
    }
    let mut st = DMatrix::zeros(d, d);
    for i in 0..n {
        for a in 0..d {
            for b in 0..d {
                let g = data.samples();
                st[(a, b)] += (g[(a, i)] - mean[a]) * (g[(b, i)] - mean[b]) / n as f64;
            }
        }
    }
    (sb, sw, st)
}

/// Eigenvalues of a symmetric matrix, largest first.
pub fn sorted_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let sym = (m + m.transpose()) * 0.5;
    let mut v: Vec<f64> = SymmetricEigen::new(sym)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Generalized eigenvalues of `(sb, st)` restricted to the range of `st`,
/// largest first.
///
/// Restricts both matrices to an orthonormal basis `Q` of `range(st)`, factors
/// `QᵀΣtQ = LLᵀ` and returns the eigenvalues of `L⁻¹ QᵀΣbQ L⁻ᵀ`.
pub fn generalized_eigenvalues(sb: &DMatrix<f64>, st: &DMatrix<f64>) -> Vec<f64> {
    let eig = SymmetricEigen::new((st + st.transpose()) * 0.5);
    let max = eig.eigenvalues.amax();
    let keep: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&i| eig.eigenvalues[i] > 1e-10 * max)
        .collect();
    let q = eig.eigenvectors.select_columns(&keep);
    let st_r = q.transpose() * st * &q;
    let sb_r = q.transpose() * sb * &q;
    let l = st_r
        .cholesky()
        .expect("restricted total scatter is positive definite")
        .l();
    let linv = l
        .solve_lower_triangular(&DMatrix::identity(keep.len(), keep.len()))
        .unwrap();
    sorted_eigenvalues(&(&linv * sb_r * linv.transpose()))
}

/// A uniformly random `d × k` matrix with orthonormal columns.
pub fn random_orthonormal(rng: &mut impl Rng, d: usize, k: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(d, k, |_, _| normal(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..k {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// `tr(Φᵀ (Σb − Σw) Φ)` by explicit products.
pub fn criterion(phi: &DMatrix<f64>, sb: &DMatrix<f64>, sw: &DMatrix<f64>) -> f64 {
    (phi.transpose() * (sb - sw) * phi).trace()
}

pub fn random_vector(rng: &mut impl Rng, d: usize, scale: f64) -> DVector<f64> {
    DVector::from_fn(d, |_, _| scale * normal(rng))
}

/// A random symmetric positive-definite matrix with condition number below
/// about `1 + 10·d`.
pub fn random_spd(rng: &mut impl Rng, d: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(d, d, |_, _| normal(rng));
    &a * a.transpose() + DMatrix::identity(d, d) * 0.5
}

const ROTATIONS: [Channel; 3] = [Channel::Rx, Channel::Ry, Channel::Rz];
const ORDERS: [&str; 6] = ["XYZ", "XZY", "YXZ", "YZX", "ZXY", "ZYX"];

fn random_order(rng: &mut impl Rng) -> RotationOrder {
    RotationOrder::parse(ORDERS.choose(rng).unwrap()).unwrap()
}

fn random_direction(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v = [normal(rng), normal(rng), normal(rng)];
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// A random tree of `bones` bones with random rest directions, lengths,
/// local axes and rotation channels.
pub fn random_skeleton(rng: &mut impl Rng, bones: usize) -> Skeleton {
    let mut list = Vec::with_capacity(bones);
    let mut parents = Vec::with_capacity(bones);
    for i in 0..bones {
        let mut dof: Vec<Channel> = ROTATIONS
            .iter()
            .copied()
            .filter(|_| rng.random_bool(0.6))
            .collect();
        dof.shuffle(rng);
        list.push(Bone {
            name: format!("bone{i}"),
            direction: random_direction(rng),
            length: rng.random_range(0.5..8.0),
            axis: [
                rng.random_range(-180.0..180.0),
                rng.random_range(-90.0..90.0),
                rng.random_range(-180.0..180.0),
            ],
            axis_order: random_order(rng),
            dof,
        });
        parents.push(if i == 0 || rng.random_bool(0.2) {
            None
        } else {
            Some(rng.random_range(0..i))
        });
    }
    let mut order = vec![Channel::Tx, Channel::Ty, Channel::Tz];
    let mut rot = ROTATIONS.to_vec();
    rot.shuffle(rng);
    order.extend(rot);
    let root = Root {
        order,
        axis_order: random_order(rng),
        position: [normal(rng), normal(rng), normal(rng)],
        orientation: [
            rng.random_range(-30.0..30.0),
            rng.random_range(-30.0..30.0),
            rng.random_range(-30.0..30.0),
        ],
    };
    Skeleton::new(
        Some("random".into()),
        Units {
            mass: 1.0,
            length: 1.0,
            angle: AngleUnit::Degrees,
        },
        root,
        list,
        parents,
    )
    .unwrap()
}

pub fn random_frame(rng: &mut impl Rng, skel: &Skeleton) -> MotionFrame {
    MotionFrame {
        root_translation: [
            rng.random_range(-100.0..100.0),
            rng.random_range(-100.0..100.0),
            rng.random_range(-100.0..100.0),
        ],
        root_rotation: [
            rng.random_range(-180.0..180.0),
            rng.random_range(-180.0..180.0),
            rng.random_range(-180.0..180.0),
        ],
        bones: skel
            .bones
            .iter()
            .map(|b| {
                b.dof
                    .iter()
                    .map(|_| rng.random_range(-180.0..180.0))
                    .collect()
            })
            .collect(),
    }
}

pub fn random_motion(rng: &mut impl Rng, skel: Arc<Skeleton>, frames: usize) -> MotionSequence {
    let frames = (0..frames).map(|_| random_frame(rng, &skel)).collect();
    MotionSequence::new(skel, frames).unwrap()
}

/// ASF text for `skel`, in the layout the CMU files use.
pub fn asf_text(skel: &Skeleton) -> String {
    let mut out = String::from(":version 1.10\n");
    let _ = writeln!(out, ":name {}", skel.name.as_deref().unwrap_or("VICON"));
    let angle = match skel.units.angle {
        AngleUnit::Degrees => "deg",
        AngleUnit::Radians => "rad",
    };
    let _ = write!(
        out,
        ":units\n  mass {:?}\n  length {:?}\n  angle {angle}\n",
        skel.units.mass, skel.units.length
    );
    let order: Vec<String> = skel
        .root
        .order
        .iter()
        .map(|c| c.name().to_uppercase())
        .collect();
    let [px, py, pz] = skel.root.position;
    let [ox, oy, oz] = skel.root.orientation;
    let _ = write!(
        out,
        ":documentation\n  generated\n:root\n   order {}\n   axis {}\n   position {px:?} {py:?} {pz:?}\n   orientation {ox:?} {oy:?} {oz:?}\n:bonedata\n",
        order.join(" "),
        skel.root.axis_order
    );
    for (i, b) in skel.bones.iter().enumerate() {
        let [dx, dy, dz] = b.direction;
        let [ax, ay, az] = b.axis;
        let _ = write!(
            out,
            "  begin\n     id {}\n     name {}\n     direction {dx:?} {dy:?} {dz:?}\n     length {:?}\n     axis {ax:?} {ay:?} {az:?} {}\n",
            i + 1,
            b.name,
            b.length,
            b.axis_order
        );
        if !b.dof.is_empty() {
            let dof: Vec<String> = b.dof.iter().map(|c| c.name().to_lowercase()).collect();
            let _ = writeln!(out, "     dof {}", dof.join(" "));
            let limits: Vec<&str> = b.dof.iter().map(|_| "(-180.0 180.0)").collect();
            let _ = writeln!(out, "     limits {}", limits.join("\n            "));
        }
        out.push_str("  end\n");
    }
    out.push_str(":hierarchy\n  begin\n");
    let mut root_children = Vec::new();
    let mut children = vec![Vec::new(); skel.bones.len()];
    for (i, p) in skel.parents.iter().enumerate() {
        match p {
            None => root_children.push(skel.bones[i].name.as_str()),
            Some(p) => children[*p].push(skel.bones[i].name.as_str()),
        }
    }
    if !root_children.is_empty() {
        let _ = writeln!(out, "    root {}", root_children.join(" "));
    }
    for (i, kids) in children.iter().enumerate() {
        if !kids.is_empty() {
            let _ = writeln!(out, "    {} {}", skel.bones[i].name, kids.join(" "));
        }
    }
    out.push_str("  end\n");
    out
}
