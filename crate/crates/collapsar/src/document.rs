//! Versioned JSON documents for categories, complexes and Δ-maps.
//!
//! Every document carries `"version": 1` and a `"kind"` field. Loading
//! reads the header first, so a document of the wrong kind or version is
//! reported as such rather than as a confusing field error. Saving always
//! produces the canonical form: the order of the validated structure, two
//! space indentation and a trailing newline.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use collapsar_core::category::{CategoryError, RawCategory, RawComposite, RawMorphism};
use collapsar_core::delta::{ComplexError, DeltaMapError, RawComplex, RawFace, RawSimplex};
use collapsar_core::{AcyclicCategory, DeltaComplex, DeltaMap, SimplexId};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocumentKind {
    Category,
    Complex,
    Map,
}

impl DocumentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DocumentKind::Category => "category",
            DocumentKind::Complex => "complex",
            DocumentKind::Map => "map",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDocument {
    pub version: u32,
    pub kind: DocumentKind,
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismEntry>,
    #[serde(default)]
    pub compose: Vec<ComposeEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeEntry {
    pub g: String,
    pub f: String,
    pub result: String,
}

/// `simplices[n]` lists the `n`-simplices. Vertices may omit their vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub version: u32,
    pub kind: DocumentKind,
    pub simplices: Vec<Vec<SimplexEntry>>,
    #[serde(default)]
    pub faces: Vec<FaceEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceEntry {
    pub simplex: String,
    pub vertex: String,
    pub result: String,
}

/// A Δ-map given simplex by simplex. `source` and `target` name the
/// documents, as paths relative to the map document or as free text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub version: u32,
    pub kind: DocumentKind,
    pub source: String,
    pub target: String,
    pub assignments: Vec<Assignment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assignment {
    pub simplex: String,
    /// Dimension of `simplex`.
    pub k: usize,
    pub image: String,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("parse error at line {line}, column {column}{}: {message}", at_path(.path))]
    Parse { line: usize, column: usize, path: String, message: String },
    #[error("document version {found} is not supported (expected {expected})")]
    SchemaVersionMismatch { found: u32, expected: u32 },
    #[error("expected a {expected} document, found a {found} document")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("map assigns `{0}` more than once")]
    DuplicateAssignment(String),
    #[error("map does not assign `{0}`")]
    MissingAssignment(String),
    #[error("map refers to unknown simplex `{0}`")]
    UnknownSimplex(String),
    #[error("assignment for `{simplex}` gives dimension {found}, the simplex has dimension {expected}")]
    DimensionMismatch { simplex: String, found: usize, expected: usize },
    #[error(transparent)]
    Map(#[from] DeltaMapError),
}

fn at_path(path: &str) -> String {
    if path.is_empty() || path == "." {
        String::new()
    } else {
        format!(" (at `{path}`)")
    }
}

impl LoadError {
    pub fn tag(&self) -> &'static str {
        match self {
            LoadError::Parse { .. } => "ParseError",
            LoadError::SchemaVersionMismatch { .. } => "SchemaVersionMismatch",
            LoadError::WrongKind { .. } => "WrongKind",
            LoadError::Category(e) => e.tag(),
            LoadError::Complex(e) => e.tag(),
            LoadError::DuplicateAssignment(_) => "DuplicateAssignment",
            LoadError::MissingAssignment(_) => "MissingAssignment",
            LoadError::UnknownSimplex(_) => "UnknownSimplex",
            LoadError::DimensionMismatch { .. } => "DimensionMismatch",
            LoadError::Map(e) => e.tag(),
        }
    }
}

#[derive(Deserialize)]
struct Header {
    version: u32,
    kind: DocumentKind,
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, LoadError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        LoadError::Parse {
            line: inner.line(),
            column: inner.column(),
            path,
            message: strip_position(&inner.to_string()),
        }
    })?;
    Ok(value)
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

/// Reads the version and kind of a document. Unknown fields are ignored
/// here; the full parse checks them.
pub fn peek_kind(text: &str) -> Result<DocumentKind, LoadError> {
    let header: Header = parse(text)?;
    if header.version != FORMAT_VERSION {
        return Err(LoadError::SchemaVersionMismatch { found: header.version, expected: FORMAT_VERSION });
    }
    Ok(header.kind)
}

fn expect_kind(text: &str, expected: DocumentKind) -> Result<(), LoadError> {
    let found = peek_kind(text)?;
    if found != expected {
        return Err(LoadError::WrongKind { expected: expected.as_str(), found: found.as_str() });
    }
    Ok(())
}

/// A parsed and validated document of any kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Category(AcyclicCategory),
    Complex(DeltaComplex),
    Map(MapDocument),
}

pub fn load_any(text: &str) -> Result<Document, LoadError> {
    Ok(match peek_kind(text)? {
        DocumentKind::Category => Document::Category(load_category(text)?),
        DocumentKind::Complex => Document::Complex(load_complex(text)?),
        DocumentKind::Map => Document::Map(load_map_document(text)?),
    })
}

pub fn load_category(text: &str) -> Result<AcyclicCategory, LoadError> {
    expect_kind(text, DocumentKind::Category)?;
    let doc: CategoryDocument = parse(text)?;
    Ok(doc.to_raw().validate()?)
}

pub fn load_complex(text: &str) -> Result<DeltaComplex, LoadError> {
    expect_kind(text, DocumentKind::Complex)?;
    let doc: ComplexDocument = parse(text)?;
    Ok(doc.to_raw().validate()?)
}

/// Parses a map document without resolving it against its complexes.
pub fn load_map_document(text: &str) -> Result<MapDocument, LoadError> {
    expect_kind(text, DocumentKind::Map)?;
    parse(text)
}

impl CategoryDocument {
    pub fn from_category(cat: &AcyclicCategory) -> Self {
        let raw = cat.to_raw();
        CategoryDocument {
            version: FORMAT_VERSION,
            kind: DocumentKind::Category,
            objects: raw.objects,
            morphisms: raw
                .morphisms
                .into_iter()
                .map(|m| MorphismEntry { id: m.id, src: m.source, dst: m.target })
                .collect(),
            compose: raw.compose.into_iter().map(|c| ComposeEntry { g: c.g, f: c.f, result: c.result }).collect(),
        }
    }

    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| RawMorphism { id: m.id.clone(), source: m.src.clone(), target: m.dst.clone() })
                .collect(),
            compose: self
                .compose
                .iter()
                .map(|c| RawComposite { g: c.g.clone(), f: c.f.clone(), result: c.result.clone() })
                .collect(),
        }
    }
}

impl ComplexDocument {
    pub fn from_complex(x: &DeltaComplex) -> Self {
        let raw = x.to_raw();
        let mut simplices: Vec<Vec<SimplexEntry>> = vec![Vec::new(); x.dimension().map_or(0, |d| d + 1)];
        for s in raw.simplices {
            let vertices = if s.dimension == 0 { Vec::new() } else { s.vertices };
            simplices[s.dimension].push(SimplexEntry { id: s.id, vertices });
        }
        let faces = raw
            .faces
            .into_iter()
            .map(|f| FaceEntry { simplex: f.simplex, vertex: f.vertex, result: f.result })
            .collect();
        ComplexDocument { version: FORMAT_VERSION, kind: DocumentKind::Complex, simplices, faces }
    }

    pub fn to_raw(&self) -> RawComplex {
        let mut raw = RawComplex::new();
        for (dimension, list) in self.simplices.iter().enumerate() {
            for s in list {
                let vertices =
                    if dimension == 0 && s.vertices.is_empty() { vec![s.id.clone()] } else { s.vertices.clone() };
                raw.simplices.push(RawSimplex { id: s.id.clone(), dimension, vertices });
            }
        }
        raw.faces = self
            .faces
            .iter()
            .map(|f| RawFace { simplex: f.simplex.clone(), vertex: f.vertex.clone(), result: f.result.clone() })
            .collect();
        raw
    }
}

impl MapDocument {
    pub fn from_map(x: &DeltaComplex, y: &DeltaComplex, map: &DeltaMap, source: &str, target: &str) -> Self {
        let assignments = x
            .simplex_ids()
            .map(|s| Assignment { simplex: x.name(s).into(), k: x.dim(s), image: y.name(map.image(s)).into() })
            .collect();
        MapDocument {
            version: FORMAT_VERSION,
            kind: DocumentKind::Map,
            source: source.into(),
            target: target.into(),
            assignments,
        }
    }

    /// Resolves the assignments against `x` and `y` and checks the Δ-map conditions.
    pub fn resolve(&self, x: &DeltaComplex, y: &DeltaComplex) -> Result<DeltaMap, LoadError> {
        let mut images: Vec<Option<SimplexId>> = vec![None; x.simplex_count()];
        for a in &self.assignments {
            let s = x.by_name(&a.simplex).ok_or_else(|| LoadError::UnknownSimplex(a.simplex.clone()))?;
            if a.k != x.dim(s) {
                return Err(LoadError::DimensionMismatch {
                    simplex: a.simplex.clone(),
                    found: a.k,
                    expected: x.dim(s),
                });
            }
            let t = y.by_name(&a.image).ok_or_else(|| LoadError::UnknownSimplex(a.image.clone()))?;
            if images[s.0].replace(t).is_some() {
                return Err(LoadError::DuplicateAssignment(a.simplex.clone()));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| LoadError::MissingAssignment(x.name(SimplexId(i)).into())))
            .collect::<Result<Vec<_>, _>>()?;
        let map = DeltaMap { images };
        map.validate(x, y)?;
        Ok(map)
    }
}

fn to_text<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
    text.push('\n');
    text
}

pub fn save_category(cat: &AcyclicCategory) -> String {
    to_text(&CategoryDocument::from_category(cat))
}

pub fn save_complex(x: &DeltaComplex) -> String {
    to_text(&ComplexDocument::from_complex(x))
}

pub fn save_map(doc: &MapDocument) -> String {
    to_text(doc)
}

pub fn save_document(doc: &Document) -> String {
    match doc {
        Document::Category(a) => save_category(a),
        Document::Complex(x) => save_complex(x),
        Document::Map(m) => save_map(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use collapsar_core::fixtures;

    #[test]
    fn canonical_round_trip() {
        for a in [fixtures::chain3(), fixtures::circle_category(), fixtures::point_category()] {
            let text = save_category(&a);
            assert_eq!(load_category(&text).unwrap(), a);
            assert_eq!(save_category(&load_category(&text).unwrap()), text);
        }
        for x in [fixtures::disc_complex(), fixtures::sphere_complex(), fixtures::full_triangle()] {
            let text = save_complex(&x);
            assert_eq!(load_complex(&text).unwrap(), x);
            assert_eq!(save_complex(&load_complex(&text).unwrap()), text);
        }
    }

    #[test]
    fn reordered_input_saves_canonically() {
        let text = r#"{"kind": "complex", "version": 1,
            "simplices": [[{"id": "b"}, {"id": "a"}], [{"id": "e2", "vertices": ["b", "a"]}, {"id": "e1", "vertices": ["a", "b"]}]],
            "faces": [{"simplex": "e2", "vertex": "b", "result": "a"}, {"simplex": "e2", "vertex": "a", "result": "b"},
                      {"simplex": "e1", "vertex": "a", "result": "b"}, {"simplex": "e1", "vertex": "b", "result": "a"}]}"#;
        let x = load_complex(text).unwrap();
        assert!(x.isomorphism_to(&fixtures::circle_complex()).is_some());
        assert_eq!(save_complex(&x), save_complex(&fixtures::circle_complex()));
    }

    #[test]
    fn truncated_document_reports_position() {
        let text = save_category(&fixtures::chain3());
        let err = load_category(&text[..text.len() / 2]).unwrap_err();
        assert_eq!(err.tag(), "ParseError");
        let LoadError::Parse { line, .. } = err else { unreachable!() };
        assert!(line > 1);
    }

    #[test]
    fn field_errors_name_the_path() {
        let text = r#"{"version": 1, "kind": "category", "objects": ["x"], "morphisms": [{"id": "f", "src": "x"}]}"#;
        let err = load_category(text).unwrap_err();
        let LoadError::Parse { path, message, .. } = &err else { panic!("{err}") };
        assert_eq!(path, "morphisms[0]");
        assert!(message.contains("dst"), "{message}");
    }

    #[test]
    fn header_checks() {
        let text = r#"{"version": 2, "kind": "category", "objects": []}"#;
        assert_eq!(load_category(text).unwrap_err().tag(), "SchemaVersionMismatch");
        let text = save_complex(&fixtures::circle_complex());
        assert_eq!(load_category(&text).unwrap_err().tag(), "WrongKind");
        let text = r#"{"version": 1, "kind": "poset", "objects": []}"#;
        assert_eq!(load_any(text).unwrap_err().tag(), "ParseError");
    }

    #[test]
    fn domain_errors_keep_their_tags() {
        let text = r#"{"version": 1, "kind": "category", "objects": ["x", "y"],
            "morphisms": [{"id": "f", "src": "x", "dst": "y"}, {"id": "g", "src": "y", "dst": "x"}]}"#;
        assert_eq!(load_category(text).unwrap_err().tag(), "LoopDetected");
    }

    #[test]
    fn maps_resolve_and_validate() {
        let x = fixtures::circle_complex();
        let id = DeltaMap::identity(&x);
        let doc = MapDocument::from_map(&x, &x, &id, "s1.json", "s1.json");
        let text = save_map(&doc);
        let back = load_map_document(&text).unwrap();
        assert_eq!(back.resolve(&x, &x).unwrap(), id);

        let mut missing = back.clone();
        missing.assignments.pop();
        assert_eq!(missing.resolve(&x, &x).unwrap_err().tag(), "MissingAssignment");
        let mut twisted = back;
        let e1 = twisted.assignments.iter().position(|a| a.simplex == "e1").unwrap();
        twisted.assignments[e1].image = "a".into();
        assert_eq!(twisted.resolve(&x, &x).unwrap_err().tag(), "VertexSetMismatch");
    }
}
