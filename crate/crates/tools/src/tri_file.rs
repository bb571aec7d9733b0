//! Triangulation files: TOML with `rank`, `rays` (integer tuples),
//! `simplices` (lists of ray indices) and `ordered`.
//!
//! For `polytope --goodify` the same file describes a polytope: the
//! convex hull of the ray directions.

use std::path::{Path, PathBuf};

use geodesic_core::polytope::{Polytope, Ray, Triangulation};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::bundled;
use crate::error::{Result, ToolError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriFile {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub simplices: Vec<Vec<usize>>,
    #[serde(default)]
    pub ordered: bool,
}

impl TriFile {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| ToolError::Parse { path: path.to_path_buf(), message: e.to_string() })
    }

    pub fn rays(&self) -> Result<Vec<Ray>> {
        self.rays.iter().map(|r| Ok(Ray::new(r.clone())?)).collect()
    }

    pub fn triangulation(&self) -> Result<Triangulation> {
        Ok(Triangulation::new(self.rank, self.rays()?, self.simplices.clone(), self.ordered)?)
    }

    pub fn hull(&self) -> Result<Polytope> {
        let points: Vec<Vec<BigRational>> =
            self.rays.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        Ok(Polytope::hull(&points)?)
    }
}

/// Loads `spec` as a path if it names an existing file, else as a bundled
/// triangulation.
pub fn load_tri(spec: &str) -> Result<TriFile> {
    let path = PathBuf::from(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(&path).map_err(|source| ToolError::Read { path: path.clone(), source })?;
        return TriFile::parse(&text, &path);
    }
    match bundled::triangulation(spec) {
        Some(text) => TriFile::parse(text, Path::new(spec)),
        None => Err(ToolError::Config(format!("triangulation file {} not found", path.display()))),
    }
}
