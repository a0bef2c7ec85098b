//! The `cubeworks/1` interchange format and the on-disk workspace.
//!
//! Cells are referenced by string ids (`c0`, `c1`, …, the cell index) and
//! carry their label separately. Degeneracy words are ascending arrays,
//! 0-indexed on the wire: a cubical `π` forgetting coordinate `i` (1-based
//! in the library) is written `i − 1`; simplicial collapse positions are
//! 0-based in both places.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cubical::{CubicalSet, Ref};
use crate::enriched::{Attachment, EnrichedPresentation, WordRef};
use crate::error::{Error, Result};
use crate::homology::SimplicialSet;

pub const SCHEMA: &str = "cubeworks/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct WireRef {
    cell: String,
    degeneracies: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct WireCell {
    id: String,
    label: String,
    dim: usize,
    faces: Vec<WireRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct WireWordRef {
    word: Vec<String>,
    degeneracies: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct WireGenerator {
    name: String,
    source: String,
    target: String,
    dim: usize,
    weight: usize,
    faces: Vec<WireWordRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum WireAttachment {
    Edge { source: String, target: String, generators: Vec<String> },
    Cells { name: String, source: String, target: String, boundary_cells: usize, generators: Vec<String> },
    Inverse { of: String, inverse: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Body {
    CubicalSet { cells: Vec<WireCell> },
    SimplicialSet { cells: Vec<WireCell> },
    Presentation {
        objects: Vec<String>,
        generators: Vec<WireGenerator>,
        attachments: Vec<WireAttachment>,
        inversions: Vec<[String; 2]>,
    },
    Report { body: Value },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct Envelope {
    schema: String,
    #[serde(flatten)]
    body: Body,
}

/// Anything the workspace can hold.
#[derive(Clone, Debug, PartialEq)]
pub enum Artifact {
    Cubical(CubicalSet),
    Simplicial(SimplicialSet),
    Presentation(EnrichedPresentation),
    Report(Value),
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::Cubical(_) => "cubical_set",
            Artifact::Simplicial(_) => "simplicial_set",
            Artifact::Presentation(_) => "presentation",
            Artifact::Report(_) => "report",
        }
    }
}

fn cell_id(i: usize) -> String {
    format!("c{i}")
}

fn parse_id(id: &str, count: usize) -> Result<usize> {
    id.strip_prefix('c')
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|&n| n < count)
        .ok_or_else(|| Error::Parse(format!("unknown cell id {id:?}")))
}

fn wire_cells(n: usize, dim: impl Fn(usize) -> usize, label: impl Fn(usize) -> String, faces: impl Fn(usize) -> Vec<WireRef>) -> Vec<WireCell> {
    (0..n).map(|c| WireCell { id: cell_id(c), label: label(c), dim: dim(c), faces: faces(c) }).collect()
}

fn cubical_to_wire(x: &CubicalSet) -> Vec<WireCell> {
    wire_cells(
        x.num_cells(),
        |c| x.dim_of(c),
        |c| x.label(c).to_string(),
        |c| {
            x.faces(c)
                .iter()
                .map(|f| WireRef { cell: cell_id(f.base), degeneracies: f.degeneracies.iter().map(|i| i - 1).collect() })
                .collect()
        },
    )
}

fn simplicial_to_wire(x: &SimplicialSet) -> Vec<WireCell> {
    wire_cells(
        x.num_cells(),
        |c| x.dim_of(c),
        |c| x.label(c).to_string(),
        |c| x.faces(c).iter().map(|f| WireRef { cell: cell_id(f.base), degeneracies: f.degeneracies.clone() }).collect(),
    )
}

fn check_ids(cells: &[WireCell]) -> Result<()> {
    for (i, c) in cells.iter().enumerate() {
        if c.id != cell_id(i) {
            return Err(Error::Parse(format!("cell {i} has id {:?}, expected {:?}", c.id, cell_id(i))));
        }
    }
    Ok(())
}

fn cubical_from_wire(cells: &[WireCell]) -> Result<CubicalSet> {
    check_ids(cells)?;
    let mut x = CubicalSet::new();
    for (i, c) in cells.iter().enumerate() {
        let faces = c
            .faces
            .iter()
            .map(|f| Ok(Ref::new(parse_id(&f.cell, i)?, f.degeneracies.iter().map(|d| d + 1).collect())))
            .collect::<Result<Vec<_>>>()?;
        x.add_cell(c.dim, faces, c.label.clone())?;
    }
    x.validate()?;
    Ok(x)
}

fn simplicial_from_wire(cells: &[WireCell]) -> Result<SimplicialSet> {
    check_ids(cells)?;
    let mut x = SimplicialSet::new();
    for (i, c) in cells.iter().enumerate() {
        let faces = c
            .faces
            .iter()
            .map(|f| Ok(Ref::new(parse_id(&f.cell, i)?, f.degeneracies.clone())))
            .collect::<Result<Vec<_>>>()?;
        x.add_cell(c.dim, faces, c.label.clone())?;
    }
    x.validate()?;
    Ok(x)
}

fn presentation_to_wire(c: &EnrichedPresentation) -> Body {
    let obj = |i: usize| c.objects()[i].clone();
    let gen = |i: usize| c.generator(i).name.clone();
    let word_ref = |r: &WordRef| WireWordRef {
        word: c.word_names(&r.base),
        degeneracies: r.degeneracies.iter().map(|i| i - 1).collect(),
    };
    let generators = c
        .generators()
        .iter()
        .map(|g| WireGenerator {
            name: g.name.clone(),
            source: obj(g.source),
            target: obj(g.target),
            dim: g.dim,
            weight: g.weight,
            faces: g.faces.iter().map(word_ref).collect(),
        })
        .collect();
    let attachments = c
        .attachments()
        .iter()
        .map(|a| match a {
            Attachment::Edge { source, target, generators } => WireAttachment::Edge {
                source: obj(*source),
                target: obj(*target),
                generators: generators.iter().map(|&g| gen(g)).collect(),
            },
            Attachment::Cells { name, source, target, boundary_cells, generators } => WireAttachment::Cells {
                name: name.clone(),
                source: obj(*source),
                target: obj(*target),
                boundary_cells: *boundary_cells,
                generators: generators.iter().map(|&g| gen(g)).collect(),
            },
            Attachment::Inverse { of, inverse } => WireAttachment::Inverse { of: gen(*of), inverse: gen(*inverse) },
        })
        .collect();
    let inversions = c.inversions().iter().map(|&(f, g)| [gen(f), gen(g)]).collect();
    Body::Presentation { objects: c.objects().to_vec(), generators, attachments, inversions }
}

fn presentation_from_wire(
    objects: &[String],
    generators: &[WireGenerator],
    attachments: &[WireAttachment],
    inversions: &[[String; 2]],
) -> Result<EnrichedPresentation> {
    let mut c = EnrichedPresentation::default();
    for o in objects {
        c.add_object(o.clone())?;
    }
    for g in generators {
        let faces = g
            .faces
            .iter()
            .map(|f| {
                let word = f.word.iter().map(|n| c.generator_id(n)).collect::<Result<Vec<_>>>()?;
                Ok(Ref::new(word, f.degeneracies.iter().map(|d| d + 1).collect()))
            })
            .collect::<Result<Vec<_>>>()?;
        let id = c.add_generator(g.name.clone(), c.object(&g.source)?, c.object(&g.target)?, g.dim, faces)?;
        c.set_weight(id, g.weight);
    }
    for a in attachments {
        let gens = |names: &[String]| names.iter().map(|n| c.generator_id(n)).collect::<Result<Vec<_>>>();
        let record = match a {
            WireAttachment::Edge { source, target, generators } => {
                Attachment::Edge { source: c.object(source)?, target: c.object(target)?, generators: gens(generators)? }
            }
            WireAttachment::Cells { name, source, target, boundary_cells, generators } => Attachment::Cells {
                name: name.clone(),
                source: c.object(source)?,
                target: c.object(target)?,
                boundary_cells: *boundary_cells,
                generators: gens(generators)?,
            },
            WireAttachment::Inverse { of, inverse } => {
                Attachment::Inverse { of: c.generator_id(of)?, inverse: c.generator_id(inverse)? }
            }
        };
        c.push_attachment(record);
    }
    for [f, g] in inversions {
        let (f, g) = (c.generator_id(f)?, c.generator_id(g)?);
        c.push_inversion(f, g);
    }
    Ok(c)
}

pub fn to_value(a: &Artifact) -> Value {
    let body = match a {
        Artifact::Cubical(x) => Body::CubicalSet { cells: cubical_to_wire(x) },
        Artifact::Simplicial(x) => Body::SimplicialSet { cells: simplicial_to_wire(x) },
        Artifact::Presentation(c) => presentation_to_wire(c),
        Artifact::Report(v) => Body::Report { body: v.clone() },
    };
    serde_json::to_value(Envelope { schema: SCHEMA.to_string(), body }).expect("wire types serialize")
}

pub fn from_value(v: &Value) -> Result<Artifact> {
    let env: Envelope = serde_json::from_value(v.clone())?;
    if env.schema != SCHEMA {
        return Err(Error::Parse(format!("unsupported schema {:?}", env.schema)));
    }
    match &env.body {
        Body::CubicalSet { cells } => Ok(Artifact::Cubical(cubical_from_wire(cells)?)),
        Body::SimplicialSet { cells } => Ok(Artifact::Simplicial(simplicial_from_wire(cells)?)),
        Body::Presentation { objects, generators, attachments, inversions } => {
            Ok(Artifact::Presentation(presentation_from_wire(objects, generators, attachments, inversions)?))
        }
        Body::Report { body } => Ok(Artifact::Report(body.clone())),
    }
}

/// Canonical text: pretty-printed with a trailing newline.
pub fn emit(a: &Artifact) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(a)).expect("json values serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Artifact> {
    from_value(&serde_json::from_str(text)?)
}

/// Wraps any serializable report in the envelope.
pub fn report<T: Serialize>(r: &T) -> Artifact {
    Artifact::Report(serde_json::to_value(r).expect("reports serialize"))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
struct ManifestEntry {
    kind: String,
    file: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Manifest {
    schema: String,
    entries: BTreeMap<String, ManifestEntry>,
}

/// A directory of artifacts with a `manifest.json` index.
#[derive(Clone, Debug)]
pub struct Workspace {
    root: PathBuf,
    manifest: Manifest,
}

pub const WORKSPACE_ENV: &str = "CUBEWORKS_WORKSPACE";
pub const DEFAULT_WORKSPACE: &str = "cubeworks-workspace";

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "manifest"
        && name.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
        && !name.starts_with('.')
}

impl Workspace {
    /// Opens (creating if needed) the workspace at `root`.
    pub fn open(root: impl AsRef<Path>) -> Result<Self> {
        let root = root.as_ref().to_path_buf();
        fs::create_dir_all(&root)?;
        let path = root.join("manifest.json");
        let manifest = if path.exists() {
            let m: Manifest = serde_json::from_str(&fs::read_to_string(&path)?)?;
            if m.schema != SCHEMA {
                return Err(Error::Parse(format!("unsupported manifest schema {:?}", m.schema)));
            }
            m
        } else {
            Manifest { schema: SCHEMA.to_string(), entries: BTreeMap::new() }
        };
        Ok(Workspace { root, manifest })
    }

    /// The workspace named by `CUBEWORKS_WORKSPACE`, else `./cubeworks-workspace`.
    pub fn from_env() -> Result<Self> {
        let root = std::env::var_os(WORKSPACE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_WORKSPACE));
        Self::open(root)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn names(&self) -> Vec<String> {
        self.manifest.entries.keys().cloned().collect()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.manifest.entries.contains_key(name)
    }

    pub fn kind_of(&self, name: &str) -> Option<&str> {
        self.manifest.entries.get(name).map(|e| e.kind.as_str())
    }

    /// Writes `name.json` and records it, replacing any earlier artifact of
    /// that name.
    pub fn store(&mut self, name: &str, a: &Artifact) -> Result<PathBuf> {
        if !valid_name(name) {
            return Err(Error::invalid(format!("{name:?} is not a valid artifact name")));
        }
        let file = format!("{name}.json");
        let path = self.root.join(&file);
        fs::write(&path, emit(a))?;
        self.manifest.entries.insert(name.to_string(), ManifestEntry { kind: a.kind().to_string(), file });
        self.save_manifest()?;
        Ok(path)
    }

    pub fn load(&self, name: &str) -> Result<Artifact> {
        let entry = self.manifest.entries.get(name).ok_or_else(|| Error::NotFound(format!("artifact {name:?}")))?;
        parse(&fs::read_to_string(self.root.join(&entry.file))?)
    }

    fn save_manifest(&self) -> Result<()> {
        let mut s = serde_json::to_string_pretty(&self.manifest)?;
        s.push('\n');
        fs::write(self.root.join("manifest.json"), s)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{boundary, standard_cube};
    use crate::enriched::{build_e, localize};
    use crate::homology::circle;

    fn round_trip(a: Artifact) {
        let text = emit(&a);
        let back = parse(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(emit(&back), text);
    }

    #[test]
    fn cubical_sets_round_trip() {
        round_trip(Artifact::Cubical(standard_cube(2).unwrap()));
        round_trip(Artifact::Cubical(boundary(3).unwrap().source().as_ref().clone()));
    }

    #[test]
    fn wire_degeneracies_are_zero_based() {
        // a 2-cell whose faces are all the degenerate edge v·π₁
        let mut x = CubicalSet::new();
        let v = x.add_cell(0, vec![], "v").unwrap();
        x.add_cell(2, vec![Ref::new(v, vec![1]); 4], "s").unwrap();
        let w = to_value(&Artifact::Cubical(x.clone()));
        assert_eq!(w["schema"], "cubeworks/1");
        assert_eq!(w["kind"], "cubical_set");
        assert_eq!(w["cells"][1]["faces"][0]["degeneracies"], serde_json::json!([0]));
        round_trip(Artifact::Cubical(x));
    }

    #[test]
    fn presentations_round_trip() {
        round_trip(Artifact::Presentation(localize(&build_e().unwrap(), "f").unwrap()));
    }

    #[test]
    fn other_artifacts_round_trip() {
        round_trip(Artifact::Simplicial(circle()));
        round_trip(Artifact::Report(serde_json::json!({"passed": true})));
    }

    #[test]
    fn bad_ids_are_rejected() {
        let mut v = to_value(&Artifact::Cubical(standard_cube(1).unwrap()));
        v["cells"][2]["faces"][0]["cell"] = Value::from("c9");
        assert!(matches!(from_value(&v), Err(Error::Parse(_))));
        v["schema"] = Value::from("cubeworks/0");
        assert!(from_value(&v).is_err());
    }

    #[test]
    fn workspace_persists() {
        let dir = tempfile::tempdir().unwrap();
        let mut w = Workspace::open(dir.path()).unwrap();
        w.store("sq", &Artifact::Cubical(standard_cube(2).unwrap())).unwrap();
        let w2 = Workspace::open(dir.path()).unwrap();
        assert_eq!(w2.names(), vec!["sq"]);
        assert_eq!(w2.kind_of("sq"), Some("cubical_set"));
        assert_eq!(w2.load("sq").unwrap(), Artifact::Cubical(standard_cube(2).unwrap()));
        assert!(w2.load("nope").is_err());
        assert!(w.clone().store("../x", &Artifact::Report(Value::Null)).is_err());
    }
}
