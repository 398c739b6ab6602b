//! The JSON document holding a whole complex.
//!
//! Field names follow the core type names in snake case. [`save`] writes the
//! canonical form: pretty-printed, every field present, trailing newline.
//! Loading canonical text and saving it again reproduces it byte for byte.

mod export;
mod resolve;

pub use resolve::{parse_angle, Ensemble, Resolved, ResolvedSurface, ResolvedTetrahedron};

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub format_version: u32,
    #[serde(default)]
    pub branched_surfaces: Vec<BranchedSurfaceDoc>,
    #[serde(default)]
    pub fibered_domains: Vec<FiberedDomainDoc>,
    #[serde(default)]
    pub tetrahedra: Vec<TetrahedronDoc>,
    #[serde(default)]
    pub ensembles: Vec<EnsembleDoc>,
    #[serde(default)]
    pub prism_configurations: Vec<PrismConfigurationDoc>,
}

impl Default for ComplexDocument {
    fn default() -> Self {
        ComplexDocument {
            format_version: FORMAT_VERSION,
            branched_surfaces: Vec::new(),
            fibered_domains: Vec::new(),
            tetrahedra: Vec::new(),
            ensembles: Vec::new(),
            prism_configurations: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoleDoc {
    Merged,
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointDoc {
    Triple(usize),
    Boundary(usize),
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalDoc {
    Start,
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcEndDoc {
    pub arc: usize,
    pub terminal: TerminalDoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SideDoc {
    Branch {
        arc: usize,
        role: RoleDoc,
        #[serde(default)]
        reversed: bool,
        #[serde(default)]
        flipped: bool,
    },
    Free {
        from: EndpointDoc,
        to: EndpointDoc,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectorDoc {
    pub euler_char: i64,
    pub orientable: bool,
    #[serde(default)]
    pub boundary_cycles: Vec<Vec<SideDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchArcDoc {
    pub merged: usize,
    pub upper: usize,
    pub lower: usize,
    pub start: EndpointDoc,
    pub end: EndpointDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriplePointDoc {
    pub strands: [[ArcEndDoc; 2]; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchedSurfaceDoc {
    pub id: String,
    pub sectors: Vec<SectorDoc>,
    #[serde(default)]
    pub branch_arcs: Vec<BranchArcDoc>,
    #[serde(default)]
    pub triple_points: Vec<TriplePointDoc>,
    #[serde(default)]
    pub boundary_points: usize,
    /// Named weight vectors on the sectors.
    #[serde(default)]
    pub weights: BTreeMap<String, Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerticalAnnulusDoc {
    pub arcs: Vec<usize>,
    pub concave: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberedDomainDoc {
    pub id: String,
    pub surface: String,
    #[serde(default)]
    pub vertical_annuli: Vec<VerticalAnnulusDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceDoc {
    pub slots: [usize; 3],
    #[serde(default)]
    pub reversed: bool,
    /// Arcs as pairs of `[edge, index]` slots.
    #[serde(default)]
    pub dividing_set: Vec<[[usize; 2]; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftMatchingDoc {
    pub edge: usize,
    pub from_face: usize,
    pub to_face: usize,
    pub offset: i64,
    pub domain: [i64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDoc {
    pub face: usize,
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HolonomyDoc {
    pub matchings: Vec<ShiftMatchingDoc>,
    /// Circuits checked in addition to the four vertex circuits.
    #[serde(default)]
    pub circuits: Vec<Vec<StepDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TetrahedronDoc {
    pub id: usize,
    pub faces: Vec<FaceDoc>,
    #[serde(default)]
    pub holonomy: Option<HolonomyDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDoc {
    pub label: String,
    /// Angles in half-turns, as integers or fractions like `"3/2"`.
    pub angles: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleDoc {
    pub id: String,
    pub domain: String,
    pub base: StructureDoc,
    #[serde(default)]
    pub structures: Vec<StructureDoc>,
    #[serde(default)]
    pub cap: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrismDoc {
    Corner(usize),
    Diagonal(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlotBoundDoc {
    Slot(usize),
    Safety,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerticalFaceDoc {
    pub face: usize,
    pub vertex: usize,
    pub from: SlotBoundDoc,
    pub to: SlotBoundDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacedPrismDoc {
    pub prism: PrismDoc,
    pub faces: Vec<VerticalFaceDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrismConfigurationDoc {
    pub tetrahedron: usize,
    pub prisms: Vec<PlacedPrismDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("reference error: {kind} '{id}' {problem}")]
    Reference { kind: &'static str, id: String, problem: &'static str },
    #[error("{module}: {rule}: {detail}")]
    Invariant { module: &'static str, rule: String, detail: String },
}

impl DocError {
    /// Invariant violations are validation failures; everything else is bad input.
    pub fn is_validation_failure(&self) -> bool {
        matches!(self, DocError::Invariant { .. })
    }

    pub(crate) fn invariant(module: &'static str, rule: impl Into<String>, detail: impl fmt::Display) -> Self {
        DocError::Invariant { module, rule: rule.into(), detail: detail.to_string() }
    }
}

/// Parses without resolving. Blank text is the empty complex.
pub fn parse(text: &str) -> Result<ComplexDocument, DocError> {
    if text.trim().is_empty() {
        return Ok(ComplexDocument::default());
    }
    let doc: ComplexDocument =
        serde_json::from_str(text).map_err(|e| DocError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    if doc.format_version != FORMAT_VERSION {
        return Err(DocError::Version(doc.format_version));
    }
    Ok(doc)
}

/// Parses and checks every invariant, returning the document with its
/// resolved core objects.
pub fn load_str(text: &str) -> Result<(ComplexDocument, Resolved), DocError> {
    let doc = parse(text)?;
    let resolved = doc.resolve()?;
    Ok((doc, resolved))
}

pub fn load(path: impl AsRef<Path>) -> Result<(ComplexDocument, Resolved), DocError> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| DocError::Io { path: path.display().to_string(), message: e.to_string() })?;
    load_str(&text)
}

pub fn to_canonical(doc: &ComplexDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn save(doc: &ComplexDocument, path: impl AsRef<Path>) -> Result<(), DocError> {
    let path = path.as_ref();
    std::fs::write(path, to_canonical(doc)).map_err(|e| DocError::Io { path: path.display().to_string(), message: e.to_string() })
}
