//! Example inputs shipped with the tool. They can be passed as `bundled:NAME`
//! wherever an input path is expected.

pub const FIGURE8: &str = include_str!("../data/figure8.json");
pub const WHITEHEAD: &str = include_str!("../data/whitehead.json");
pub const TORUS: &str = include_str!("../data/torus.json");

pub const NAMES: [&str; 3] = ["figure8", "whitehead", "torus"];

pub fn get(name: &str) -> Option<&'static str> {
    match name {
        "figure8" => Some(FIGURE8),
        "whitehead" => Some(WHITEHEAD),
        "torus" => Some(TORUS),
        _ => None,
    }
}
