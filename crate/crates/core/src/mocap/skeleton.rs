use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleUnit {
    Degrees,
    Radians,
}

impl AngleUnit {
    pub fn to_radians(self, value: f64) -> f64 {
        match self {
            AngleUnit::Degrees => value.to_radians(),
            AngleUnit::Radians => value,
        }
    }
}

/// The `:units` section. Lengths are kept in native ASF units; `length` is
/// carried along but never applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Units {
    pub mass: f64,
    pub length: f64,
    pub angle: AngleUnit,
}

impl Default for Units {
    fn default() -> Self {
        Units {
            mass: 1.0,
            length: 1.0,
            angle: AngleUnit::Degrees,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// A degree of freedom as named in `dof` and root `order` lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Tx,
    Ty,
    Tz,
    Rx,
    Ry,
    Rz,
}

impl Channel {
    pub fn parse(token: &str) -> Option<Channel> {
        match token.to_ascii_lowercase().as_str() {
            "tx" => Some(Channel::Tx),
            "ty" => Some(Channel::Ty),
            "tz" => Some(Channel::Tz),
            "rx" => Some(Channel::Rx),
            "ry" => Some(Channel::Ry),
            "rz" => Some(Channel::Rz),
            _ => None,
        }
    }

    pub fn is_rotation(self) -> bool {
        matches!(self, Channel::Rx | Channel::Ry | Channel::Rz)
    }

    pub fn axis(self) -> Axis {
        match self {
            Channel::Tx | Channel::Rx => Axis::X,
            Channel::Ty | Channel::Ry => Axis::Y,
            Channel::Tz | Channel::Rz => Axis::Z,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Channel::Tx => "tx",
            Channel::Ty => "ty",
            Channel::Tz => "tz",
            Channel::Rx => "rx",
            Channel::Ry => "ry",
            Channel::Rz => "rz",
        }
    }
}

/// Order in which three axis rotations are applied, first to last.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RotationOrder(pub [Axis; 3]);

impl RotationOrder {
    pub const XYZ: RotationOrder = RotationOrder([Axis::X, Axis::Y, Axis::Z]);

    pub fn parse(token: &str) -> Option<RotationOrder> {
        let axes: Vec<Axis> = token
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'X' => Some(Axis::X),
                'Y' => Some(Axis::Y),
                'Z' => Some(Axis::Z),
                _ => None,
            })
            .collect::<Option<_>>()?;
        if axes.len() != 3 || axes[0] == axes[1] || axes[1] == axes[2] || axes[0] == axes[2] {
            return None;
        }
        Some(RotationOrder([axes[0], axes[1], axes[2]]))
    }
}

impl fmt::Display for RotationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for axis in self.0 {
            let c = match axis {
                Axis::X => 'X',
                Axis::Y => 'Y',
                Axis::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bone {
    pub name: String,
    /// Unit vector in the rest pose, global frame.
    pub direction: [f64; 3],
    pub length: f64,
    /// Axis angles (in the skeleton's angle unit) defining the bone's local frame.
    pub axis: [f64; 3],
    pub axis_order: RotationOrder,
    /// Rotation channels in the order AMC lines list their values.
    pub dof: Vec<Channel>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    /// Channel order of the AMC `root` line.
    pub order: Vec<Channel>,
    pub axis_order: RotationOrder,
    pub position: [f64; 3],
    pub orientation: [f64; 3],
}

impl Default for Root {
    fn default() -> Self {
        Root {
            order: vec![
                Channel::Tx,
                Channel::Ty,
                Channel::Tz,
                Channel::Rx,
                Channel::Ry,
                Channel::Rz,
            ],
            axis_order: RotationOrder::XYZ,
            position: [0.0; 3],
            orientation: [0.0; 3],
        }
    }
}

/// A parsed ASF skeleton.
///
/// Joints are enumerated root first, then one joint per bone (the bone's far
/// end) in document order.
#[derive(Debug, Clone, PartialEq)]
pub struct Skeleton {
    pub name: Option<String>,
    pub units: Units,
    pub root: Root,
    pub bones: Vec<Bone>,
    /// `parents[i]` is the parent bone of bone `i`, `None` for children of the root.
    pub parents: Vec<Option<usize>>,
    /// Bone indices ordered so that every parent precedes its children.
    topo_order: Vec<usize>,
}

impl Skeleton {
    /// Assembles a skeleton and checks that the hierarchy is a single tree.
    pub fn new(
        name: Option<String>,
        units: Units,
        root: Root,
        bones: Vec<Bone>,
        parents: Vec<Option<usize>>,
    ) -> Result<Skeleton> {
        if parents.len() != bones.len() {
            return Err(Error::invalid("every bone needs exactly one parent entry"));
        }
        for (i, bone) in bones.iter().enumerate() {
            if bones[..i].iter().any(|b| b.name == bone.name) {
                return Err(Error::invalid(format!(
                    "duplicate bone name '{}'",
                    bone.name
                )));
            }
            if bone.dof.iter().any(|c| !c.is_rotation()) {
                return Err(Error::invalid(format!(
                    "translation dof on non-root bone '{}'",
                    bone.name
                )));
            }
            let norm = bone.direction.iter().map(|v| v * v).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-6 {
                return Err(Error::invalid(format!(
                    "direction of bone '{}' is not a unit vector",
                    bone.name
                )));
            }
            if let Some(p) = parents[i] {
                if p >= bones.len() || p == i {
                    return Err(Error::invalid(format!(
                        "bad parent for bone '{}'",
                        bone.name
                    )));
                }
            }
        }
        let topo_order = topological_order(&parents)?;
        Ok(Skeleton {
            name,
            units,
            root,
            bones,
            parents,
            topo_order,
        })
    }

    pub fn bone_index(&self, name: &str) -> Option<usize> {
        self.bones.iter().position(|b| b.name == name)
    }

    /// Number of joints: the root plus one per bone.
    pub fn joint_count(&self) -> usize {
        self.bones.len() + 1
    }

    /// Joint names, root first.
    pub fn joint_names(&self) -> Vec<&str> {
        std::iter::once("root")
            .chain(self.bones.iter().map(|b| b.name.as_str()))
            .collect()
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo_order
    }

    /// Same bone names, hierarchy, channel layout and units.
    pub fn same_layout(&self, other: &Skeleton) -> bool {
        self.units.angle == other.units.angle
            && self.root.order == other.root.order
            && self.root.axis_order == other.root.axis_order
            && self.parents == other.parents
            && self.bones.len() == other.bones.len()
            && self
                .bones
                .iter()
                .zip(&other.bones)
                .all(|(a, b)| a.name == b.name && a.dof == b.dof && a.axis_order == b.axis_order)
    }
}

fn topological_order(parents: &[Option<usize>]) -> Result<Vec<usize>> {
    let n = parents.len();
    let mut children = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for (i, p) in parents.iter().enumerate() {
        match p {
            Some(p) => children[*p].push(i),
            None => roots.push(i),
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<usize> = roots.into_iter().rev().collect();
    while let Some(i) = stack.pop() {
        order.push(i);
        stack.extend(children[i].iter().rev());
    }
    if order.len() != n {
        return Err(Error::invalid("bone hierarchy contains a cycle"));
    }
    Ok(order)
}

/// Averages skeletons that share a layout into one prototype: mean lengths,
/// renormalized mean directions, component-wise mean axis angles. Root
/// position and orientation are averaged the same way.
pub fn prototypical_skeleton(skeletons: &[Skeleton]) -> Result<Skeleton> {
    let first = skeletons
        .first()
        .ok_or_else(|| Error::invalid("cannot average an empty list of skeletons"))?;
    for (i, s) in skeletons.iter().enumerate().skip(1) {
        if !first.same_layout(s) {
            return Err(Error::invalid(format!(
                "skeleton {i} does not match the layout of skeleton 0"
            )));
        }
    }
    if skeletons.len() == 1 {
        return Ok(first.clone());
    }
    let n = skeletons.len() as f64;
    let mean3 = |f: &dyn Fn(&Skeleton) -> [f64; 3]| -> [f64; 3] {
        let mut acc = [0.0; 3];
        for s in skeletons {
            let v = f(s);
            for k in 0..3 {
                acc[k] += v[k];
            }
        }
        acc.map(|x| x / n)
    };

    let mut proto = first.clone();
    proto.root.position = mean3(&|s| s.root.position);
    proto.root.orientation = mean3(&|s| s.root.orientation);
    for (i, bone) in proto.bones.iter_mut().enumerate() {
        bone.length = skeletons.iter().map(|s| s.bones[i].length).sum::<f64>() / n;
        bone.axis = mean3(&|s| s.bones[i].axis);
        let dir = mean3(&|s| s.bones[i].direction);
        let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::degenerate(format!(
                "mean direction of bone '{}' vanishes",
                bone.name
            )));
        }
        bone.direction = dir.map(|v| v / norm);
    }
    proto.units.length = skeletons.iter().map(|s| s.units.length).sum::<f64>() / n;
    proto.units.mass = skeletons.iter().map(|s| s.units.mass).sum::<f64>() / n;
    Ok(proto)
}
