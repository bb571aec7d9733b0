//! Groups and triangulations shipped with the tool.

pub const GROUPS: &[(&str, &str)] = &[
    ("z1", include_str!("../groups/z1.toml")),
    ("z2", include_str!("../groups/z2.toml")),
    ("z3", include_str!("../groups/z3.toml")),
    ("cannon", include_str!("../groups/cannon.toml")),
    ("cannon_enlarged", include_str!("../groups/cannon_enlarged.toml")),
    ("psl2z", include_str!("../groups/psl2z.toml")),
];

pub const TRIANGULATIONS: &[(&str, &str)] = &[
    ("quadrants.tri", include_str!("../triangulations/quadrants.tri")),
    ("q_square.tri", include_str!("../triangulations/q_square.tri")),
];

pub fn group(name: &str) -> Option<&'static str> {
    GROUPS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn triangulation(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".tri").unwrap_or(name);
    TRIANGULATIONS.iter().find(|(n, _)| n.strip_suffix(".tri") == Some(name)).map(|(_, t)| *t)
}
