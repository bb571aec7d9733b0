//! Group definition files.
//!
//! A group file is TOML. Virtually abelian groups `Z^m . F` give
//!
//! ```toml
//! kind = "virtually_abelian"
//! rank = 2
//! f_action = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]   # one matrix per element of F
//! f_table = [[0, 1], [1, 0]]                        # multiplication table of F
//! inverse_closed = true
//!
//! [[generators]]
//! name = "t"
//! vector = [0, 0]
//! f = 1          # defaults to the identity of F
//! weight = 1     # defaults to 1
//! ```
//!
//! `f_action` and `f_table` default to the trivial quotient, and an
//! optional `cocycle[f][g]` lists correction vectors. Matrix groups use
//! `kind = "matrix"`, `dim`, `projective` and generators with a `matrix`
//! key. Optional keys: `name`, `delta` (a fellow traveller constant known
//! to work) and `known_infinite`.

use std::path::{Path, PathBuf};

use geodesic_core::group::{GeneratingSet, GroupElement, IntMatrix, Letter, Presentation, VaPresentation};
use serde::{Deserialize, Serialize};

use crate::bundled;
use crate::error::{Result, ToolError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_action: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_table: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projective: Option<bool>,
    pub inverse_closed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known_infinite: Option<bool>,
    pub generators: Vec<GeneratorSpec>,
}

/// A loaded group with its generating set.
#[derive(Debug, Clone)]
pub struct Group {
    pub name: String,
    pub pres: Presentation,
    pub gens: GeneratingSet,
    pub delta: Option<u32>,
    pub known_infinite: bool,
    /// The parsed file, used for cache keys and for writing the group out.
    pub file: GroupFile,
}

fn matrix(rows: &[Vec<i64>]) -> Result<IntMatrix> {
    Ok(IntMatrix::from_rows(rows)?)
}

impl GroupFile {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| ToolError::Parse { path: path.to_path_buf(), message: e.to_string() })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("group files serialize")
    }

    pub fn build(&self, fallback_name: &str) -> Result<Group> {
        let pres = match self.kind.as_str() {
            "virtually_abelian" => {
                let rank =
                    self.rank.ok_or_else(|| ToolError::Config("a virtually abelian group needs `rank`".into()))?;
                let action = match &self.f_action {
                    Some(ms) => ms.iter().map(|m| matrix(m)).collect::<Result<Vec<_>>>()?,
                    None => vec![IntMatrix::identity(rank)],
                };
                let table = self.f_table.clone().unwrap_or_else(|| vec![vec![0]]);
                Presentation::VirtuallyAbelian(VaPresentation::new(rank, action, table, self.cocycle.clone())?)
            }
            "matrix" => {
                let dim = self.dim.ok_or_else(|| ToolError::Config("a matrix group needs `dim`".into()))?;
                Presentation::matrix(dim, self.projective.unwrap_or(false))?
            }
            other => {
                return Err(ToolError::Config(format!(
                    "unknown kind `{other}`, expected `virtually_abelian` or `matrix`"
                )))
            }
        };
        let identity_coset = match &pres {
            Presentation::VirtuallyAbelian(va) => va.identity_coset(),
            Presentation::Matrix(_) => 0,
        };
        let mut letters = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let value = match (&pres, &g.vector, &g.matrix) {
                (Presentation::VirtuallyAbelian(_), Some(v), None) => {
                    GroupElement::va(v.clone(), g.f.unwrap_or(identity_coset))
                }
                (Presentation::Matrix(_), None, Some(m)) if g.f.is_none() => GroupElement::Mat(matrix(m)?),
                _ => {
                    return Err(ToolError::Config(format!(
                        "generator `{}` needs `vector` (and optionally `f`) for virtually abelian groups \
                         or `matrix` for matrix groups",
                        g.name
                    )))
                }
            };
            letters.push(Letter::new(g.name.clone(), value, g.weight.unwrap_or(1)));
        }
        let gens = GeneratingSet::new(&pres, letters, self.inverse_closed)?;
        Ok(Group {
            name: self.name.clone().unwrap_or_else(|| fallback_name.to_string()),
            pres,
            gens,
            delta: self.delta,
            known_infinite: self.known_infinite.unwrap_or(false),
            file: self.clone(),
        })
    }

    /// The file describing `gens` over a virtually abelian `pres`.
    pub fn from_parts(name: &str, pres: &Presentation, gens: &GeneratingSet, delta: Option<u32>) -> Result<Self> {
        let va = pres
            .as_virtually_abelian()
            .ok_or_else(|| ToolError::Config("only virtually abelian groups can be written out".into()))?;
        let trivial = va.quotient_order() == 1;
        let generators = gens
            .letters()
            .iter()
            .map(|l| GeneratorSpec {
                name: l.name.clone(),
                vector: l.value.vector().map(|v| v.to_vec()),
                f: l.value.coset().filter(|&f| f != va.identity_coset()),
                matrix: None,
                weight: (l.weight != 1).then_some(l.weight),
            })
            .collect();
        Ok(GroupFile {
            name: Some(name.to_string()),
            kind: "virtually_abelian".into(),
            rank: Some(va.rank()),
            f_action: (!trivial).then(|| va.action().iter().map(|m| m.rows()).collect()),
            f_table: (!trivial).then(|| va.table().iter().map(|r| r.to_vec()).collect()),
            cocycle: va.cocycle().map(|c| c.to_vec()),
            dim: None,
            projective: None,
            inverse_closed: gens.inverse_closed(),
            delta,
            known_infinite: None,
            generators,
        })
    }
}

/// Loads `spec` as a path if it names an existing file, else as the name
/// of a bundled group.
pub fn load_group(spec: &str) -> Result<Group> {
    let path = PathBuf::from(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(&path).map_err(|source| ToolError::Read { path: path.clone(), source })?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(spec).to_string();
        return GroupFile::parse(&text, &path)?.build(&stem);
    }
    match bundled::group(spec) {
        Some(text) => GroupFile::parse(text, Path::new(spec))?.build(spec),
        None => Err(ToolError::Config(format!(
            "group file {} not found and `{spec}` is not a bundled group ({})",
            path.display(),
            bundled::GROUPS.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
        ))),
    }
}
