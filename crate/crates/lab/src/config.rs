//! Experiment configuration: a JSON array of [`ExperimentSpec`].

use std::path::{Path, PathBuf};

use fsplit_core::constructions::{
    determinantal_presentation, generic_matrix, segre_2x2, thm51_ideal, MatrixOfVariables, PresentationFlags,
    RingPresentation, RingRecord,
};
use fsplit_core::rational::{parse_rational, Rational};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "thmA")]
    ThmA,
    #[serde(rename = "thmB")]
    ThmB,
    #[serde(rename = "lemma22")]
    Lemma22,
    #[serde(rename = "prop21")]
    Prop21,
    #[serde(rename = "eq2")]
    Eq2,
    #[serde(rename = "remark46")]
    Remark46,
    #[serde(rename = "fsplit-suite")]
    FsplitSuite,
    /// A bare containment between two sides, used for controls.
    #[serde(rename = "claim")]
    Claim,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::ThmA => "thmA",
            Kind::ThmB => "thmB",
            Kind::Lemma22 => "lemma22",
            Kind::Prop21 => "prop21",
            Kind::Eq2 => "eq2",
            Kind::Remark46 => "remark46",
            Kind::FsplitSuite => "fsplit-suite",
            Kind::Claim => "claim",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    #[default]
    Auto,
    Saturation,
    Dep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeterminantalSpec {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub m: usize,
    pub n: usize,
    pub p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thm51Spec {
    pub m: usize,
    pub n: usize,
    pub p: u64,
    #[serde(default)]
    pub rows: Vec<(usize, usize)>,
    #[serde(default)]
    pub cols: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegreSpec {
    pub p: u64,
}

/// Where a ring comes from. Builders mark their rings as members of the
/// determinantal family; inline and file rings carry only their own flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSource {
    File { file: PathBuf },
    Determinantal { determinantal: DeterminantalSpec },
    GenericMatrix { generic_matrix: MatrixSpec },
    Thm51 { thm51: Thm51Spec },
    Segre { segre: SegreSpec },
    Inline(RingRecord),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PrimeSource {
    /// The ideal of `t`-minors of the ring's generic matrix.
    Minors { minors: usize },
    Lift {
        lift: Vec<String>,
        #[serde(default)]
        witness: Option<String>,
        /// Argument that the witness lies in every embedded prime of every power.
        #[serde(default)]
        assert_exact: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagonalMode {
    Auto,
    Compute,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DiagonalSource {
    Mode(DiagonalMode),
    Certificate { certificate: PathBuf },
}

impl Default for DiagonalSource {
    fn default() -> Self {
        DiagonalSource::Mode(DiagonalMode::Auto)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SideSpec {
    Symbolic(u32),
    Power(u32),
    Ideal(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: Kind,
    pub ring: RingSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<PrimeSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<String>>,
    #[serde(default)]
    pub engine: Engine,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub big_n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_max: Option<u32>,
    /// A height to test in addition to the computed one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_claimed: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal: Option<DiagonalSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_fsplit: Option<bool>,
    /// Element `c` for the strong F-regularity probe.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diag_check: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<SideSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<SideSpec>,
}

impl ExperimentSpec {
    pub fn label(&self, index: usize) -> String {
        self.name.clone().unwrap_or_else(|| format!("{}#{index}", self.kind.as_str()))
    }

    pub fn rational(&self, field: &str) -> Result<Option<Rational>, String> {
        let text = match field {
            "s" => &self.s,
            "t" => &self.t,
            "eps" => &self.eps,
            _ => return Err(format!("unknown rational parameter {field}")),
        };
        text.as_deref()
            .map(|s| parse_rational(s).map_err(|e| format!("{field}: {e}")))
            .transpose()
    }

    pub fn required_rational(&self, field: &str) -> Result<Rational, String> {
        self.rational(field)?.ok_or_else(|| format!("missing parameter `{field}`"))
    }
}

/// A ring ready for computation, with its generic matrix when it has one.
#[derive(Clone, Debug)]
pub struct LoadedRing {
    pub presentation: RingPresentation,
    pub matrix: Option<MatrixOfVariables>,
    /// Built by one of the determinantal-family builders.
    pub builder_family: Option<String>,
}

pub fn load_ring(source: &RingSource, base: &Path) -> Result<LoadedRing, String> {
    let err = |e: fsplit_core::AlgebraError| e.to_string();
    match source {
        RingSource::File { file } => {
            let path = base.join(file);
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let record: RingRecord = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            inline(&record)
        }
        RingSource::Inline(record) => inline(record),
        RingSource::Determinantal { determinantal: d } => {
            let (presentation, x) = determinantal_presentation(d.m, d.n, d.t, d.p).map_err(err)?;
            Ok(LoadedRing {
                presentation,
                matrix: Some(x),
                builder_family: Some(format!("k[X_{}x{}]/I_{}", d.m, d.n, d.t)),
            })
        }
        RingSource::GenericMatrix { generic_matrix: g } => {
            let (ring, x) = generic_matrix(g.m, g.n, g.p).map_err(err)?;
            Ok(LoadedRing {
                presentation: RingPresentation::polynomial(&ring),
                matrix: Some(x),
                builder_family: Some(format!("k[X_{}x{}]", g.m, g.n)),
            })
        }
        RingSource::Thm51 { thm51: s } => {
            let (ring, x) = generic_matrix(s.m, s.n, s.p).map_err(err)?;
            let i = thm51_ideal(&ring, &x, &s.rows, &s.cols).map_err(err)?;
            let flags = PresentationFlags {
                asserted_domain: true,
                asserted_sfr: true,
            };
            let presentation = RingPresentation::new(i, flags).map_err(err)?;
            Ok(LoadedRing {
                presentation,
                matrix: Some(x),
                builder_family: Some(format!("row/column restricted minors in k[X_{}x{}]", s.m, s.n)),
            })
        }
        RingSource::Segre { segre } => Ok(LoadedRing {
            presentation: segre_2x2(segre.p).map_err(err)?,
            matrix: None,
            builder_family: Some("k[a,b,c,d]/(ad - bc)".into()),
        }),
    }
}

fn inline(record: &RingRecord) -> Result<LoadedRing, String> {
    Ok(LoadedRing {
        presentation: RingPresentation::from_record(record).map_err(|e| e.to_string())?,
        matrix: None,
        builder_family: None,
    })
}

pub fn parse_config(text: &str) -> Result<Vec<ExperimentSpec>, String> {
    serde_json::from_str(text).map_err(|e| format!("config: {e}"))
}

pub fn load_config(path: &Path) -> Result<Vec<ExperimentSpec>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_config(&text)
}
