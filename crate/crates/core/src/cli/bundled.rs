//! Example projects compiled into the binary, loadable as `bundled:<name>`.

const BUNDLED: &[(&str, &str)] = &[
    ("k1", include_str!("../../examples_data/k1.toml")),
    ("dual", include_str!("../../examples_data/dual.toml")),
    ("a2", include_str!("../../examples_data/a2.toml")),
    ("interchange", include_str!("../../examples_data/interchange.toml")),
    ("loop", include_str!("../../examples_data/loop.toml")),
    ("square", include_str!("../../examples_data/square.toml")),
    ("square_broken", include_str!("../../examples_data/square_broken.toml")),
];

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

pub fn bundled_project(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
