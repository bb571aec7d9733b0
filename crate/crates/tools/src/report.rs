//! Machine-readable run reports.
//!
//! A report is one JSON document. Everything except the `timing` block is
//! a deterministic function of the command line and the input files.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub config: RunConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<BallSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fft: Option<FftSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automaton: Option<AutomatonSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polytope: Option<PolytopeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cannon: Option<CannonSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub timing: Timing,
}

/// Echo of the settings a command ran with.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangulation: Option<String>,
    pub ball_cap: usize,
    pub state_cap: usize,
    pub pair_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallSection {
    pub radius: u32,
    pub spheres: Vec<u64>,
    pub total: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FftRun {
    pub delta: u32,
    pub radius: u32,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub words_checked: u64,
    pub falsified: u64,
    pub profiles: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FftSection {
    pub runs: Vec<FftRun>,
    /// Least constant that held, when scanning a range.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_delta: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub word: String,
    pub accepted: bool,
    pub geodesic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationSection {
    pub radius: u32,
    pub agree: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_disagreement: Option<Disagreement>,
    pub disagreements: u64,
    pub pairs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonSection {
    pub delta: u32,
    pub k: u32,
    /// States before minimization; absent when loaded from the cache.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<u64>,
    pub minimized_states: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dot: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saved: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthSection {
    pub delta: u32,
    pub states: u64,
    /// Group growth series from the corrected matrix, as decimal strings.
    pub series: Vec<String>,
    /// Geodesic word counts from the uncorrected matrix.
    pub language_series: Vec<String>,
    pub sphere_sizes: Vec<u64>,
    pub validated: bool,
    pub rational_form: String,
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    /// Whether the determinant route gives the same function; absent when
    /// the matrix is too large for it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant_agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauSample {
    pub vector: Vec<i64>,
    pub tau: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hemisphere {
    pub rays: Vec<String>,
    pub in_closed_hemisphere: bool,
    pub symmetric_part_in_closed_hemisphere: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodSetSection {
    pub scale: u64,
    pub letters: u64,
    pub added: Vec<String>,
    pub polytope_matches: bool,
    /// The enlarged group file.
    pub group_file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fft: Option<FftSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSection {
    pub scale: u64,
    pub ray_words: Vec<(String, String)>,
    pub lattice_index: u64,
    pub coset_words: Vec<String>,
    pub checked_radius: u32,
    pub elements_checked: u64,
    pub surjective: bool,
    pub max_slack: u32,
    pub max_coset_length: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeSection {
    pub vertices: Vec<Vec<String>>,
    pub facets: Vec<Facet>,
    pub tau_samples: Vec<TauSample>,
    pub hemisphere: Hemisphere,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub good_set: Option<GoodSetSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub m: u32,
    pub n: u32,
    pub suffix: String,
    pub long_geodesic: bool,
    pub short_geodesic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CannonSection {
    pub n_max: u32,
    pub witnesses: Vec<Witness>,
    pub separated: u64,
    /// `(m, n, geodesic)` for `t c^n t c^m`.
    pub pattern: Vec<(u32, u32, bool)>,
    pub pattern_holds: bool,
    pub explanation: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: u64,
    pub stages: Vec<(String, u64)>,
}

impl Report {
    pub fn new(command: &str, config: RunConfig) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config,
            ball: None,
            fft: None,
            automaton: None,
            growth: None,
            polytope: None,
            cannon: None,
            warnings: Vec::new(),
            timing: Timing::default(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// The JSON text without the timing block, for golden comparisons.
    pub fn to_json_untimed(&self) -> String {
        let mut r = self.clone();
        r.timing = Timing::default();
        r.to_json()
    }
}
