//! Bundled problem files used by the self-test and the examples.

use crate::error::{Error, Result};
use crate::field::{Field, DEFAULT_PRIME};
use crate::problem::{parse_problem, ProblemFile};

macro_rules! fixture {
    ($name:literal) => {
        ($name, include_str!(concat!("../fixtures/", $name, ".mm")))
    };
}

/// `(name, text)` for every bundled problem file.
pub const FIXTURES: &[(&str, &str)] = &[
    fixture!("bigraded_three_components"),
    fixture!("bigraded_nilpotent"),
    fixture!("segre"),
    fixture!("free_bigraded"),
    fixture!("bilinear_hypersurface"),
    fixture!("bigraded_ci"),
    fixture!("rigidity_counterexample"),
    fixture!("twisted_cubic"),
    fixture!("three_points"),
    fixture!("mixed_degree"),
    fixture!("reduction_plane"),
    fixture!("reduction_space"),
    fixture!("two_lines"),
    fixture!("two_conics"),
    fixture!("line_self"),
];

/// Bigraded fixtures, each declaring the defining ideal `I`.
pub const BIGRADED: &[&str] = &[
    "bigraded_three_components",
    "bigraded_nilpotent",
    "segre",
    "free_bigraded",
    "bilinear_hypersurface",
    "bigraded_ci",
];

pub fn text(name: &str) -> Result<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// Parses a bundled file; files without a `field` line are read over `F_32003`.
pub fn load(name: &str) -> Result<ProblemFile> {
    parse_problem(text(name)?, &Field::Prime(DEFAULT_PRIME))
}
