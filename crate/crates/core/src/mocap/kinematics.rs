use nalgebra::{Matrix3, Rotation3, Vector3};

use crate::error::{Error, Result};

use super::amc::MotionFrame;
use super::skeleton::{AngleUnit, Axis, Channel, RotationOrder, Skeleton};

/// Joint positions of one frame, root first, then one joint per bone in
/// skeleton order. Units are the skeleton's native length units.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPose {
    pub positions: Vec<[f64; 3]>,
}

impl JointPose {
    pub fn joint_count(&self) -> usize {
        self.positions.len()
    }

    /// Keeps the joints at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> JointPose {
        JointPose {
            positions: indices.iter().map(|&i| self.positions[i]).collect(),
        }
    }
}

fn axis_rotation(axis: Axis, radians: f64) -> Matrix3<f64> {
    let unit = match axis {
        Axis::X => Vector3::x_axis(),
        Axis::Y => Vector3::y_axis(),
        Axis::Z => Vector3::z_axis(),
    };
    Rotation3::from_axis_angle(&unit, radians).into_inner()
}

/// Composite of three axis rotations applied in `order`, first to last
/// (column-vector convention, so the first rotation is the rightmost factor).
fn euler(order: RotationOrder, angles: [f64; 3], unit: AngleUnit) -> Matrix3<f64> {
    order.0.iter().fold(Matrix3::identity(), |acc, &axis| {
        axis_rotation(axis, unit.to_radians(angles[axis.index()])) * acc
    })
}

fn motion_rotation(dof: &[Channel], values: &[f64], unit: AngleUnit) -> Matrix3<f64> {
    dof.iter()
        .zip(values)
        .fold(Matrix3::identity(), |acc, (c, v)| {
            axis_rotation(c.axis(), unit.to_radians(*v)) * acc
        })
}

/// Reconstructs joint positions for one frame.
///
/// Each bone's global rotation is `R_parent · C · M · C⁻¹`, with `C` the
/// bone's axis frame and `M` its AMC channel rotation applied in `dof`
/// order. The bone's far joint sits at `parent + R · direction · length`.
/// The root joint sits at `root.position + translation` with rotation
/// `C_root · M_root · C_root⁻¹`.
pub fn forward_kinematics(skeleton: &Skeleton, frame: &MotionFrame) -> Result<JointPose> {
    if !frame.matches(skeleton) {
        return Err(Error::invalid("frame channels do not match the skeleton"));
    }
    let unit = skeleton.units.angle;
    let root = &skeleton.root;

    let c_root = euler(root.axis_order, root.orientation, unit);
    let root_dof: Vec<Channel> = root
        .order
        .iter()
        .copied()
        .filter(|c| c.is_rotation())
        .collect();
    let root_values: Vec<f64> = root_dof
        .iter()
        .map(|c| frame.root_rotation[c.axis().index()])
        .collect();
    let root_rot = c_root * motion_rotation(&root_dof, &root_values, unit) * c_root.transpose();
    let root_pos = Vector3::from(root.position) + Vector3::from(frame.root_translation);

    let n = skeleton.bones.len();
    let mut rotations = vec![Matrix3::identity(); n];
    let mut positions = vec![Vector3::zeros(); n];
    for &b in skeleton.topological_order() {
        let bone = &skeleton.bones[b];
        let (parent_rot, parent_pos) = match skeleton.parents[b] {
            Some(p) => (rotations[p], positions[p]),
            None => (root_rot, root_pos),
        };
        let c = euler(bone.axis_order, bone.axis, unit);
        let m = motion_rotation(&bone.dof, &frame.bones[b], unit);
        let rot = parent_rot * c * m * c.transpose();
        positions[b] = parent_pos + rot * (Vector3::from(bone.direction) * bone.length);
        rotations[b] = rot;
    }

    let mut out = Vec::with_capacity(n + 1);
    out.push([root_pos.x, root_pos.y, root_pos.z]);
    out.extend(positions.iter().map(|p| [p.x, p.y, p.z]));
    Ok(JointPose { positions: out })
}
