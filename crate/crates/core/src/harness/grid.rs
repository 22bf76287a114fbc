use serde::{Deserialize, Serialize};

use super::TheoremCase;
use crate::error::{Error, Result};

/// The shipped desk-scale grid.
pub const DESK_GRID: &str = include_str!("../../grids/desk.toml");

/// A TOML grid file: a list of `[[case]]` tables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    #[serde(default, rename = "case")]
    pub cases: Vec<TheoremCase>,
}

pub fn parse_grid(text: &str) -> Result<Grid> {
    toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn default_grid() -> Grid {
    parse_grid(DESK_GRID).expect("shipped grid parses")
}
