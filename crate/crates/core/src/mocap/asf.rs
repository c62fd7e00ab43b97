use crate::error::{Error, Result};

use super::skeleton::{AngleUnit, Bone, Channel, Root, RotationOrder, Skeleton, Units};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Preamble,
    Version,
    Name,
    Units,
    Documentation,
    Root,
    BoneData,
    Hierarchy,
}

#[derive(Default)]
struct BoneBuilder {
    begin_line: usize,
    name: Option<(String, usize)>,
    direction: Option<[f64; 3]>,
    length: Option<f64>,
    axis: Option<([f64; 3], RotationOrder)>,
    dof: Vec<Channel>,
}

/// Parses an Acclaim skeleton file.
///
/// Errors carry the 1-based line number of the offending line.
pub fn parse_asf(text: &str) -> Result<Skeleton> {
    let mut section = Section::Preamble;
    let mut name = None;
    let mut units = Units::default();
    let mut root = Root::default();
    let mut bones: Vec<Bone> = Vec::new();
    let mut bone_lines: Vec<usize> = Vec::new();
    let mut current: Option<BoneBuilder> = None;
    let mut parent_names: Vec<Option<Option<usize>>> = Vec::new();
    let mut hierarchy_open = false;
    let mut hierarchy_seen = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();

        if let Some(header) = tokens[0].strip_prefix(':') {
            if let Some(b) = &current {
                return Err(Error::parse(
                    line_no,
                    format!("bone block opened at line {} is not closed", b.begin_line),
                ));
            }
            if hierarchy_open {
                return Err(Error::parse(line_no, "hierarchy block is not closed"));
            }
            let keyword = header.to_ascii_lowercase();
            if keyword.is_empty() {
                return Err(Error::parse(line_no, "malformed section header"));
            }
            section = match keyword.as_str() {
                "version" => Section::Version,
                "name" => Section::Name,
                "units" => Section::Units,
                "documentation" => Section::Documentation,
                "root" => Section::Root,
                "bonedata" => Section::BoneData,
                "hierarchy" => Section::Hierarchy,
                other => {
                    return Err(Error::parse(line_no, format!("unknown section ':{other}'")));
                }
            };
            match section {
                Section::Version | Section::Name => {
                    if tokens.len() < 2 {
                        return Err(Error::parse(line_no, "malformed section header"));
                    }
                    if section == Section::Name {
                        name = Some(tokens[1..].join(" "));
                    }
                }
                _ => {
                    if tokens.len() != 1 {
                        return Err(Error::parse(line_no, "malformed section header"));
                    }
                }
            }
            if section == Section::Hierarchy {
                hierarchy_seen = Some(line_no);
                parent_names = vec![None; bones.len()];
            }
            continue;
        }

        let key = tokens[0].to_ascii_lowercase();
        let args = &tokens[1..];
        match section {
            Section::Documentation => {}
            Section::Preamble | Section::Version | Section::Name => {
                return Err(Error::parse(
                    line_no,
                    format!("unexpected content '{content}'"),
                ));
            }
            Section::Units => match key.as_str() {
                "mass" => units.mass = one_number(args, line_no)?,
                "length" => units.length = one_number(args, line_no)?,
                "angle" => {
                    units.angle = match args {
                        [u] if u.eq_ignore_ascii_case("deg") => AngleUnit::Degrees,
                        [u] if u.eq_ignore_ascii_case("rad") => AngleUnit::Radians,
                        _ => return Err(Error::parse(line_no, "angle unit must be deg or rad")),
                    }
                }
                other => return Err(Error::parse(line_no, format!("unknown keyword '{other}'"))),
            },
            Section::Root => match key.as_str() {
                "order" => {
                    root.order = args
                        .iter()
                        .map(|t| {
                            Channel::parse(t).ok_or_else(|| {
                                Error::parse(line_no, format!("unknown keyword '{t}'"))
                            })
                        })
                        .collect::<Result<_>>()?;
                }
                "axis" => root.axis_order = rotation_order(args, line_no)?,
                "position" => root.position = three_numbers(args, line_no)?,
                "orientation" => root.orientation = three_numbers(args, line_no)?,
                other => return Err(Error::parse(line_no, format!("unknown keyword '{other}'"))),
            },
            Section::BoneData => {
                let Some(builder) = current.as_mut() else {
                    if key == "begin" && args.is_empty() {
                        current = Some(BoneBuilder {
                            begin_line: line_no,
                            ..Default::default()
                        });
                        continue;
                    }
                    return Err(Error::parse(
                        line_no,
                        format!("expected 'begin', found '{content}'"),
                    ));
                };
                match key.as_str() {
                    "end" => {
                        let b = current.take().expect("bone block is open");
                        let (bone_name, _) = b
                            .name
                            .ok_or_else(|| Error::parse(line_no, "bone without a name"))?;
                        let direction = b.direction.ok_or_else(|| {
                            Error::parse(line_no, format!("bone '{bone_name}' has no direction"))
                        })?;
                        let length = b.length.ok_or_else(|| {
                            Error::parse(line_no, format!("bone '{bone_name}' has no length"))
                        })?;
                        let (axis, axis_order) = b.axis.unwrap_or(([0.0; 3], RotationOrder::XYZ));
                        bones.push(Bone {
                            name: bone_name,
                            direction,
                            length,
                            axis,
                            axis_order,
                            dof: b.dof,
                        });
                        bone_lines.push(b.begin_line);
                    }
                    "id" | "bodymass" | "cofmass" => {
                        one_number(args, line_no)?;
                    }
                    "name" => {
                        let [n] = args else {
                            return Err(Error::parse(line_no, "bone name must be a single token"));
                        };
                        if bones.iter().any(|b| b.name == *n) {
                            return Err(Error::parse(
                                line_no,
                                format!("duplicate bone name '{n}'"),
                            ));
                        }
                        if n.eq_ignore_ascii_case("root") {
                            return Err(Error::parse(line_no, "a bone cannot be named 'root'"));
                        }
                        builder.name = Some((n.to_string(), line_no));
                    }
                    "direction" => {
                        let d = three_numbers(args, line_no)?;
                        let norm = d.iter().map(|v| v * v).sum::<f64>().sqrt();
                        if (norm - 1.0).abs() > 1e-3 {
                            return Err(Error::parse(
                                line_no,
                                format!("direction is not a unit vector (norm {norm})"),
                            ));
                        }
                        builder.direction = Some(d.map(|v| v / norm));
                    }
                    "length" => builder.length = Some(one_number(args, line_no)?),
                    "axis" => {
                        if args.len() != 4 {
                            return Err(Error::parse(
                                line_no,
                                "axis needs three angles and an order",
                            ));
                        }
                        let angles = three_numbers(&args[..3], line_no)?;
                        let order = rotation_order(&args[3..], line_no)?;
                        builder.axis = Some((angles, order));
                    }
                    "dof" => {
                        let mut dof = Vec::with_capacity(args.len());
                        for t in args {
                            let lower = t.to_ascii_lowercase();
                            match Channel::parse(&lower) {
                                Some(c) if c.is_rotation() => {
                                    if dof.contains(&c) {
                                        return Err(Error::parse(
                                            line_no,
                                            format!("repeated dof '{t}'"),
                                        ));
                                    }
                                    dof.push(c)
                                }
                                Some(_) => {
                                    return Err(Error::parse(
                                        line_no,
                                        "translation dof on non-root bone",
                                    ))
                                }
                                None if lower == "l" => {
                                    return Err(Error::parse(
                                        line_no,
                                        "translation dof on non-root bone",
                                    ))
                                }
                                None => {
                                    return Err(Error::parse(
                                        line_no,
                                        format!("unknown keyword '{t}'"),
                                    ))
                                }
                            }
                        }
                        builder.dof = dof;
                    }
                    // Joint limits are not used; continuation lines start with '('.
                    "limits" => {}
                    _ if key.starts_with('(') => {}
                    other => {
                        return Err(Error::parse(line_no, format!("unknown keyword '{other}'")))
                    }
                }
            }
            Section::Hierarchy => {
                if !hierarchy_open {
                    if key == "begin" && args.is_empty() {
                        hierarchy_open = true;
                        continue;
                    }
                    return Err(Error::parse(
                        line_no,
                        format!("expected 'begin', found '{content}'"),
                    ));
                }
                if key == "end" && args.is_empty() {
                    hierarchy_open = false;
                    continue;
                }
                let parent = if tokens[0].eq_ignore_ascii_case("root") {
                    None
                } else {
                    Some(lookup(&bones, tokens[0], line_no)?)
                };
                for child in args {
                    let c = lookup(&bones, child, line_no)?;
                    if parent_names[c].is_some() {
                        return Err(Error::parse(
                            line_no,
                            format!("bone '{child}' has two parents"),
                        ));
                    }
                    parent_names[c] = Some(parent);
                }
            }
        }
    }

    if let Some(b) = current {
        return Err(Error::parse(
            b.begin_line,
            "bone block is not closed before end of file",
        ));
    }
    if hierarchy_open {
        return Err(Error::parse(last_line, "hierarchy block is not closed"));
    }
    if bones.is_empty() {
        parent_names.clear();
    } else if hierarchy_seen.is_none() {
        return Err(Error::parse(last_line, "missing :hierarchy section"));
    }
    if parent_names.len() != bones.len() {
        return Err(Error::parse(
            hierarchy_seen.unwrap_or(last_line),
            "bones were declared after the hierarchy",
        ));
    }
    let mut parents = Vec::with_capacity(bones.len());
    for (i, p) in parent_names.into_iter().enumerate() {
        match p {
            Some(p) => parents.push(p),
            None => {
                return Err(Error::parse(
                    bone_lines[i],
                    format!("bone '{}' is missing from the hierarchy", bones[i].name),
                ))
            }
        }
    }
    Skeleton::new(name, units, root, bones, parents)
        .map_err(|e| Error::parse(hierarchy_seen.unwrap_or(last_line), e))
}

fn lookup(bones: &[Bone], name: &str, line_no: usize) -> Result<usize> {
    bones
        .iter()
        .position(|b| b.name == name)
        .ok_or_else(|| Error::parse(line_no, format!("unknown bone '{name}'")))
}

fn number(token: &str, line_no: usize) -> Result<f64> {
    token
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::parse(line_no, format!("expected a number, found '{token}'")))
}

fn one_number(args: &[&str], line_no: usize) -> Result<f64> {
    match args {
        [t] => number(t, line_no),
        _ => Err(Error::parse(line_no, "expected exactly one number")),
    }
}

fn three_numbers(args: &[&str], line_no: usize) -> Result<[f64; 3]> {
    match args {
        [a, b, c] => Ok([
            number(a, line_no)?,
            number(b, line_no)?,
            number(c, line_no)?,
        ]),
        _ => Err(Error::parse(line_no, "expected exactly three numbers")),
    }
}

fn rotation_order(args: &[&str], line_no: usize) -> Result<RotationOrder> {
    match args {
        [t] => RotationOrder::parse(t)
            .ok_or_else(|| Error::parse(line_no, format!("bad rotation order '{t}'"))),
        _ => Err(Error::parse(
            line_no,
            "expected a rotation order such as XYZ",
        )),
    }
}
