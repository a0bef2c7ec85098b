//! Finite presentations of categories enriched in cubical sets.
//!
//! A presentation lists objects and generators. A `d`-dimensional generator
//! `a: x → y` is a non-degenerate `d`-cube of `Map(x, y)`; its faces are
//! elements of `Map(x, y)` written as words. A word is a composable sequence
//! of generators in path order (`[u, v]` is `v ∘ u`), and a `d`-cube of a
//! mapping space is a word whose letter dimensions add up to `d`, possibly
//! pulled back along a degeneracy. Faces of a word are taken letterwise,
//! as in the Day convolution.
//!
//! Attaching a cell `A ↪ B` along a boundary map adds one generator per cell
//! of `B` outside `A`. Localizing at a 0-dimensional generator `f` adds
//! `f′` and cancels adjacent `f f′` and `f′ f`.

use serde::{Deserialize, Serialize};

use crate::cube::CubeMap;
use crate::cubical::{standard_cube, CubicalMap, CubicalSet, FaceOracle, Ref};
use crate::error::{Error, Result};

/// Generator indices in path order.
pub type Word = Vec<usize>;
/// An element of a mapping space.
pub type WordRef = Ref<Word>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub dim: usize,
    /// Faces in the order `(1,0), (1,1), (2,0), …`.
    pub faces: Vec<WordRef>,
    /// Contribution to the word length used for truncation.
    pub weight: usize,
}

/// How a batch of generators entered the presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Attachment {
    /// A generating-edge cubical set between two objects.
    Edge { source: usize, target: usize, generators: Vec<usize> },
    /// Cells of `B` outside `A`, glued along a boundary map.
    Cells { name: String, source: usize, target: usize, boundary_cells: usize, generators: Vec<usize> },
    /// A formal inverse, from a localization.
    Inverse { of: usize, inverse: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnrichedPresentation {
    objects: Vec<String>,
    generators: Vec<Generator>,
    attachments: Vec<Attachment>,
    /// Pairs `(f, f′)` of mutually inverse 0-dimensional generators.
    inversions: Vec<(usize, usize)>,
}

impl EnrichedPresentation {
    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, id: usize) -> &Generator {
        &self.generators[id]
    }

    pub fn attachments(&self) -> &[Attachment] {
        &self.attachments
    }

    pub fn inversions(&self) -> &[(usize, usize)] {
        &self.inversions
    }

    pub fn add_object(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if self.objects.contains(&name) {
            return Err(Error::invalid(format!("duplicate object {name}")));
        }
        self.objects.push(name);
        Ok(self.objects.len() - 1)
    }

    pub fn object(&self, name: &str) -> Result<usize> {
        self.objects.iter().position(|o| o == name).ok_or_else(|| Error::NotFound(format!("object {name}")))
    }

    pub fn generator_id(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::NotFound(format!("generator {name}")))
    }

    /// Parses a space- or comma-separated list of generator names.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| self.generator_id(s))
            .collect()
    }

    pub fn word_names(&self, w: &[usize]) -> Vec<String> {
        w.iter().map(|&g| self.generators[g].name.clone()).collect()
    }

    pub fn word_text(&self, w: &[usize]) -> String {
        if w.is_empty() {
            "[]".into()
        } else {
            format!("[{}]", self.word_names(w).join(","))
        }
    }

    pub fn word_dim(&self, w: &[usize]) -> usize {
        w.iter().map(|&g| self.generators[g].dim).sum()
    }

    pub fn word_weight(&self, w: &[usize]) -> usize {
        w.iter().map(|&g| self.generators[g].weight).sum()
    }

    /// Whether `w` is a path from `x` to `y` (the empty word needs `x = y`).
    pub fn is_path(&self, w: &[usize], x: usize, y: usize) -> bool {
        let mut at = x;
        for &g in w {
            if self.generators[g].source != at {
                return false;
            }
            at = self.generators[g].target;
        }
        at == y
    }

    fn cancels(&self, a: usize, b: usize) -> bool {
        self.inversions.iter().any(|&(f, g)| (a == f && b == g) || (a == g && b == f))
    }

    /// Cancels adjacent inverse pairs.
    pub fn reduce(&self, w: &[usize]) -> Word {
        let mut out: Word = Vec::with_capacity(w.len());
        for &g in w {
            if out.last().is_some_and(|&last| self.cancels(last, g)) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        out
    }

    pub fn is_reduced(&self, w: &[usize]) -> bool {
        w.windows(2).all(|p| !self.cancels(p[0], p[1]))
    }

    /// Adds a generator after checking its faces, which must be paths
    /// between the same endpoints built from earlier generators.
    pub fn add_generator(
        &mut self,
        name: impl Into<String>,
        source: usize,
        target: usize,
        dim: usize,
        faces: Vec<WordRef>,
    ) -> Result<usize> {
        let name = name.into();
        if source >= self.objects.len() || target >= self.objects.len() {
            return Err(Error::invalid(format!("generator {name} has an unknown endpoint")));
        }
        if self.generators.iter().any(|g| g.name == name) {
            return Err(Error::invalid(format!("duplicate generator {name}")));
        }
        if faces.len() != 2 * dim {
            return Err(Error::invalid(format!("generator {name} needs {} faces", 2 * dim)));
        }
        for f in &faces {
            if f.base.iter().any(|&g| g >= self.generators.len()) {
                return Err(Error::invalid(format!("face of {name} uses a later generator")));
            }
            if !self.is_path(&f.base, source, target) {
                return Err(Error::invalid(format!("face {} of {name} is not a path", self.word_text(&f.base))));
            }
            if self.word_dim(&f.base) + f.degeneracies.len() + 1 != dim || !self.is_reduced(&f.base) {
                return Err(Error::invalid(format!("face {} of {name} is malformed", self.word_text(&f.base))));
            }
        }
        self.generators.push(Generator { name: name.clone(), source, target, dim, faces, weight: 1 });
        let id = self.generators.len() - 1;
        // cubical identities on the new generator
        let probe = Ref::cell(vec![id]);
        for k in 1..=dim {
            for eps in 0..2u8 {
                let outer = CubeMap::face(dim, k, eps)?;
                let first = self.act(&probe, &outer)?;
                for k2 in 1..dim {
                    for eps2 in 0..2u8 {
                        let inner = CubeMap::face(dim - 1, k2, eps2)?;
                        if self.act(&first, &inner)? != self.act(&probe, &outer.compose(&inner)?)? {
                            self.generators.pop();
                            return Err(Error::invalid(format!("faces of {name} violate the cubical identities")));
                        }
                    }
                }
            }
        }
        Ok(id)
    }

    /// Restores bookkeeping when reading a presentation back from JSON.
    pub(crate) fn push_attachment(&mut self, a: Attachment) {
        self.attachments.push(a);
    }

    pub(crate) fn push_inversion(&mut self, f: usize, inverse: usize) {
        self.inversions.push((f, inverse));
    }

    pub fn set_weight(&mut self, generator: usize, weight: usize) {
        self.generators[generator].weight = weight;
    }

    pub fn rename_generator(&mut self, generator: usize, name: impl Into<String>) -> Result<()> {
        let name = name.into();
        if self.generators.iter().enumerate().any(|(i, g)| i != generator && g.name == name) {
            return Err(Error::invalid(format!("duplicate generator {name}")));
        }
        self.generators[generator].name = name;
        Ok(())
    }

    pub fn rename_object(&mut self, object: usize, name: impl Into<String>) -> Result<()> {
        let name = name.into();
        if self.objects.iter().enumerate().any(|(i, o)| i != object && *o == name) {
            return Err(Error::invalid(format!("duplicate object {name}")));
        }
        self.objects[object] = name;
        Ok(())
    }

    /// Adds the cells of a cubical set as generators `x → y`, named
    /// `{prefix}{label}`. Returns the generator of every cell.
    pub fn add_edge_set(&mut self, x: usize, y: usize, a: &CubicalSet, prefix: &str) -> Result<Vec<usize>> {
        let mut ids: Vec<usize> = vec![usize::MAX; a.num_cells()];
        for c in a.cells_by_dim() {
            let faces = a.faces(c).iter().map(|f| Ref::new(vec![ids[f.base]], f.degeneracies.clone())).collect();
            let name = if a.num_cells() == 1 && prefix.is_empty() { a.label(c).to_string() } else { format!("{prefix}{}", a.label(c)) };
            ids[c] = self.add_generator(name, x, y, a.dim_of(c), faces)?;
        }
        self.attachments.push(Attachment::Edge { source: x, target: y, generators: ids.clone() });
        Ok(ids)
    }

    /// Glues `B` along `A ↪ B` into `Map(x, y)`, with `boundary[a]` the word
    /// assigned to each cell of `A`. New generators are named
    /// `{name}` when only one cell is added and `{name}.{label}` otherwise.
    pub fn attach(
        &mut self,
        name: &str,
        inclusion: &CubicalMap,
        x: usize,
        y: usize,
        boundary: &[WordRef],
    ) -> Result<Vec<usize>> {
        if !inclusion.is_mono() {
            return Err(Error::invalid("attachment along a map that is not a monomorphism"));
        }
        let a = inclusion.source();
        let b = inclusion.target();
        if boundary.len() != a.num_cells() {
            return Err(Error::invalid("boundary map must assign a word to every cell of A"));
        }
        // the boundary map must land in Map(x, y) and commute with faces
        for (cell, w) in boundary.iter().enumerate() {
            if !self.is_path(&w.base, x, y) || !self.is_reduced(&w.base) {
                return Err(Error::invalid(format!("boundary word {} is not a reduced path", self.word_text(&w.base))));
            }
            let d = a.dim_of(cell);
            if self.ref_dim(w) != d {
                return Err(Error::DimensionMismatch(format!("boundary word for a {d}-cell has the wrong dimension")));
            }
            for k in 1..=d {
                for eps in 0..2u8 {
                    let f = a.face(cell, k, eps);
                    let lhs = self.act_degenerate(&boundary[f.base], a.dim_of(f.base), &f.degeneracies)?;
                    if self.face_of(w, k, eps)? != lhs {
                        return Err(Error::invalid(format!("boundary map fails to commute with face ({k},{eps})")));
                    }
                }
            }
        }
        let mut image: Vec<Option<WordRef>> = vec![None; b.num_cells()];
        for (cell, w) in boundary.iter().enumerate() {
            image[inclusion.image_of(cell).base] = Some(w.clone());
        }
        let fresh: Vec<usize> = b.cells_by_dim().into_iter().filter(|&c| image[c].is_none()).collect();
        let mut added = Vec::new();
        for &c in &fresh {
            let mut faces = Vec::with_capacity(2 * b.dim_of(c));
            for f in b.faces(c) {
                let w = image[f.base].clone().expect("faces precede cells");
                faces.push(self.act_degenerate(&w, b.dim_of(f.base), &f.degeneracies)?);
            }
            let gen_name = if fresh.len() == 1 { name.to_string() } else { format!("{name}.{}", b.label(c)) };
            let id = self.add_generator(gen_name, x, y, b.dim_of(c), faces)?;
            image[c] = Some(Ref::cell(vec![id]));
            added.push(id);
        }
        self.attachments.push(Attachment::Cells {
            name: name.to_string(),
            source: x,
            target: y,
            boundary_cells: a.num_cells(),
            generators: added.clone(),
        });
        Ok(added)
    }

    /// `w · π_D` for an element `w` of dimension `base_dim`.
    fn act_degenerate(&self, w: &WordRef, base_dim: usize, degeneracies: &[usize]) -> Result<WordRef> {
        if degeneracies.is_empty() {
            return Ok(w.clone());
        }
        self.act(w, &CubeMap::degeneracy(base_dim + degeneracies.len(), degeneracies))
    }

    /// Concatenation of elements `r₁ ⊗ r₂ ⊗ …` followed by reduction.
    pub fn concat(&self, parts: &[WordRef]) -> WordRef {
        let mut word = Vec::new();
        let mut degeneracies = Vec::new();
        let mut offset = 0;
        for p in parts {
            word.extend_from_slice(&p.base);
            degeneracies.extend(p.degeneracies.iter().map(|&i| i + offset));
            offset += self.ref_dim(p);
        }
        Ref::new(self.reduce(&word), degeneracies)
    }

    /// The image of this presentation's generators under a renaming map
    /// into `other`: appends every generator not already identified.
    fn import(
        &mut self,
        other: &EnrichedPresentation,
        object_map: &[usize],
        generator_map: &mut [Option<usize>],
    ) -> Result<()> {
        for (g, gen) in other.generators.iter().enumerate() {
            if generator_map[g].is_some() {
                continue;
            }
            let faces = gen
                .faces
                .iter()
                .map(|f| {
                    let word: Word = f.base.iter().map(|&h| generator_map[h].expect("faces precede cells")).collect();
                    Ref::new(self.reduce(&word), f.degeneracies.clone())
                })
                .collect();
            let id = self.add_generator(
                gen.name.clone(),
                object_map[gen.source],
                object_map[gen.target],
                gen.dim,
                faces,
            )?;
            self.generators[id].weight = gen.weight;
            generator_map[g] = Some(id);
        }
        for &(f, g) in &other.inversions {
            let pair = (generator_map[f].unwrap(), generator_map[g].unwrap());
            if !self.inversions.contains(&pair) {
                self.inversions.push(pair);
            }
        }
        Ok(())
    }
}

impl FaceOracle for EnrichedPresentation {
    type Cell = Word;

    fn cell_dim(&self, cell: &Word) -> usize {
        self.word_dim(cell)
    }

    fn cell_face(&self, cell: &Word, k: usize, eps: u8) -> Result<WordRef> {
        let mut offset = 0;
        for (i, &g) in cell.iter().enumerate() {
            let d = self.generators[g].dim;
            if k <= offset + d {
                let f = &self.generators[g].faces[2 * (k - offset - 1) + eps as usize];
                let mut word = cell[..i].to_vec();
                word.extend_from_slice(&f.base);
                word.extend_from_slice(&cell[i + 1..]);
                let degeneracies = f.degeneracies.iter().map(|&j| j + offset).collect();
                return Ok(Ref::new(self.reduce(&word), degeneracies));
            }
            offset += d;
        }
        Err(Error::OutOfRange(format!("face ({k},{eps}) of a {offset}-dimensional word")))
    }
}

/// The empty presentation `∅`.
pub fn empty() -> EnrichedPresentation {
    EnrichedPresentation::default()
}

/// `[0]`: one object with `Map(0, 0) = □⁰`.
pub fn point() -> EnrichedPresentation {
    let mut c = EnrichedPresentation::default();
    c.add_object("0").unwrap();
    c
}

/// `[1]_A`: objects `0`, `1` and `Map(0, 1) = A`. A single-cell `A` gives a
/// generator named `f`.
pub fn interval(a: &CubicalSet) -> Result<EnrichedPresentation> {
    let mut c = EnrichedPresentation::default();
    c.add_object("0")?;
    c.add_object("1")?;
    if a.num_cells() == 1 {
        let mut single = a.clone();
        single.set_label(0, "f");
        c.add_edge_set(0, 1, &single, "")?;
    } else {
        c.add_edge_set(0, 1, a, "f.")?;
    }
    Ok(c)
}

/// `[1]~`: two objects and every mapping space a point, presented as
/// `[1]_□⁰` with its edge inverted.
pub fn interval_tilde() -> Result<EnrichedPresentation> {
    let c = interval(&standard_cube(0)?)?;
    localize(&c, "f")
}

/// Objects and 0-dimensional generators `(name, source, target)`.
pub fn free_on_graph(objects: &[&str], edges: &[(&str, &str, &str)]) -> Result<EnrichedPresentation> {
    let mut c = EnrichedPresentation::default();
    for o in objects {
        c.add_object(*o)?;
    }
    for (name, x, y) in edges {
        let (x, y) = (c.object(x)?, c.object(y)?);
        let mut pt = standard_cube(0)?;
        pt.set_label(0, *name);
        c.add_edge_set(x, y, &pt, "")?;
    }
    Ok(c)
}

/// `C⟨f⁻¹⟩`: adds `f′` inverse to the 0-dimensional generator `f`. Both
/// get weight 0 so that truncation counts only the other letters.
pub fn localize(c: &EnrichedPresentation, f: &str) -> Result<EnrichedPresentation> {
    let id = c.generator_id(f)?;
    let gen = c.generator(id).clone();
    if gen.dim != 0 {
        return Err(Error::invalid(format!("{f} is not a vertex-level generator")));
    }
    let mut out = c.clone();
    let inv = out.add_generator(format!("{f}'"), gen.target, gen.source, 0, Vec::new())?;
    out.inversions.push((id, inv));
    out.set_weight(id, 0);
    out.set_weight(inv, 0);
    out.attachments.push(Attachment::Inverse { of: id, inverse: inv });
    Ok(out)
}

/// The pushout of `a` and `b` identifying the listed objects and
/// 0-dimensional generators (each pair `(in a, in b)`). Objects and
/// generators of `b` not identified are appended with their names.
pub fn glue(
    a: &EnrichedPresentation,
    b: &EnrichedPresentation,
    objects: &[(&str, &str)],
    generators: &[(&str, &str)],
) -> Result<EnrichedPresentation> {
    let mut out = a.clone();
    let mut object_map = vec![usize::MAX; b.objects.len()];
    for (x, y) in objects {
        object_map[b.object(y)?] = a.object(x)?;
    }
    for (i, name) in b.objects.iter().enumerate() {
        if object_map[i] == usize::MAX {
            object_map[i] = out.add_object(name.clone())?;
        }
    }
    let mut generator_map = vec![None; b.generators.len()];
    for (g, h) in generators {
        let (ga, gb) = (a.generator_id(g)?, b.generator_id(h)?);
        let (ia, ib) = (a.generator(ga), b.generator(gb));
        if ia.dim != 0 || ib.dim != 0 {
            return Err(Error::invalid("only vertex-level generators can be identified"));
        }
        if object_map[ib.source] != ia.source || object_map[ib.target] != ia.target {
            return Err(Error::invalid(format!("identifying {g} with {h} needs matching endpoints")));
        }
        generator_map[gb] = Some(ga);
    }
    out.import(b, &object_map, &mut generator_map)?;
    Ok(out)
}

/// `P`: objects `c`, `c′` and generators `u: c → c′`, `v: c′ → c`.
pub fn build_p() -> Result<EnrichedPresentation> {
    free_on_graph(&["c", "c'"], &[("u", "c", "c'"), ("v", "c'", "c")])
}

/// `H`: `P` with a homotopy `H` from `v·u` to `id_c` glued in along
/// `∂□¹ → □¹`.
pub fn build_h() -> Result<EnrichedPresentation> {
    let mut p = build_p()?;
    let c = p.object("c")?;
    let (u, v) = (p.generator_id("u")?, p.generator_id("v")?);
    let i = crate::cubical::point_pair_inclusion()?;
    p.attach("H", &i, c, c, &[Ref::cell(vec![u, v]), Ref::cell(vec![])])?;
    Ok(p)
}

/// `E`: two copies of `H` glued along the edge `u` of the first and `v` of
/// the second. Renamed so the shared edge is `f: c → c′`, with a left
/// inverse `g` (homotopy `H1` from `g·f` to `id_c`) and a right inverse `g′`
/// (homotopy `H2` from `f·g′` to `id_{c′}`). The two inverses stay distinct.
pub fn build_e() -> Result<EnrichedPresentation> {
    let h = build_h()?;
    let mut h1 = h.clone();
    for (old, new) in [("u", "u1"), ("v", "v1"), ("H", "H1")] {
        h1.rename_generator(h1.generator_id(old)?, new)?;
    }
    for (old, new) in [("c", "c1"), ("c'", "c1'")] {
        h1.rename_object(h1.object(old)?, new)?;
    }
    let mut h2 = h;
    for (old, new) in [("u", "u2"), ("v", "v2"), ("H", "H2")] {
        h2.rename_generator(h2.generator_id(old)?, new)?;
    }
    for (old, new) in [("c", "c2"), ("c'", "c2'")] {
        h2.rename_object(h2.object(old)?, new)?;
    }
    let mut e = glue(&h1, &h2, &[("c1", "c2'"), ("c1'", "c2")], &[("u1", "v2")])?;
    for (old, new) in [("u1", "f"), ("v1", "g"), ("u2", "g'")] {
        e.rename_generator(e.generator_id(old)?, new)?;
    }
    for (old, new) in [("c1", "c"), ("c1'", "c'")] {
        e.rename_object(e.object(old)?, new)?;
    }
    Ok(e)
}

/// A functor between presentations: objects to objects and generators to
/// elements of the target's mapping spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationMorphism {
    pub objects: Vec<usize>,
    pub generators: Vec<WordRef>,
}

impl PresentationMorphism {
    pub fn identity(c: &EnrichedPresentation) -> Self {
        PresentationMorphism {
            objects: (0..c.objects.len()).collect(),
            generators: (0..c.generators.len()).map(|g| Ref::cell(vec![g])).collect(),
        }
    }

    /// Image of an element of a source mapping space.
    pub fn apply(&self, source: &EnrichedPresentation, target: &EnrichedPresentation, r: &WordRef) -> Result<WordRef> {
        let parts: Vec<WordRef> = r.base.iter().map(|&g| self.generators[g].clone()).collect();
        let image = target.concat(&parts);
        if r.degeneracies.is_empty() {
            return Ok(image);
        }
        let d = source.word_dim(&r.base) + r.degeneracies.len();
        target.act(&image, &CubeMap::degeneracy(d, &r.degeneracies))
    }

    /// Checks endpoints, dimensions, faces and that inverse pairs go to
    /// elements whose composites reduce to identities.
    pub fn validate(&self, source: &EnrichedPresentation, target: &EnrichedPresentation) -> Result<()> {
        if self.objects.len() != source.objects.len() || self.generators.len() != source.generators.len() {
            return Err(Error::invalid("morphism does not cover the source presentation"));
        }
        for (g, gen) in source.generators.iter().enumerate() {
            let img = &self.generators[g];
            if !target.is_path(&img.base, self.objects[gen.source], self.objects[gen.target]) {
                return Err(Error::invalid(format!("image of {} has the wrong endpoints", gen.name)));
            }
            if target.ref_dim(img) != gen.dim {
                return Err(Error::DimensionMismatch(format!("image of {} has the wrong dimension", gen.name)));
            }
            for k in 1..=gen.dim {
                for eps in 0..2u8 {
                    let lhs = target.face_of(img, k, eps)?;
                    let rhs = self.apply(source, target, &gen.faces[2 * (k - 1) + eps as usize])?;
                    if lhs != rhs {
                        return Err(Error::invalid(format!("image of {} fails face ({k},{eps})", gen.name)));
                    }
                }
            }
        }
        for &(f, g) in &source.inversions {
            let fg = target.concat(&[self.generators[f].clone(), self.generators[g].clone()]);
            let gf = target.concat(&[self.generators[g].clone(), self.generators[f].clone()]);
            if !fg.base.is_empty() || !gf.base.is_empty() {
                return Err(Error::invalid("inverse pair not sent to inverses"));
            }
        }
        Ok(())
    }
}

/// Looks up a vector of generator images by name.
pub fn morphism_by_names(
    source: &EnrichedPresentation,
    target: &EnrichedPresentation,
    objects: &[(&str, &str)],
    generators: &[(&str, WordRef)],
) -> Result<PresentationMorphism> {
    let mut obj = vec![usize::MAX; source.objects.len()];
    for (x, y) in objects {
        obj[source.object(x)?] = target.object(y)?;
    }
    let mut gens: Vec<Option<WordRef>> = vec![None; source.generators.len()];
    for (g, w) in generators {
        gens[source.generator_id(g)?] = Some(w.clone());
    }
    if obj.contains(&usize::MAX) || gens.iter().any(Option::is_none) {
        return Err(Error::invalid("morphism leaves objects or generators unassigned"));
    }
    let m = PresentationMorphism { objects: obj, generators: gens.into_iter().map(Option::unwrap).collect() };
    m.validate(source, target)?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_has_the_expected_generators() {
        let e = build_e().unwrap();
        assert_eq!(e.objects(), &["c".to_string(), "c'".to_string()]);
        let names: Vec<&str> = e.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, vec!["f", "g", "H1", "g'", "H2"]);
        let h2 = e.generator(e.generator_id("H2").unwrap());
        assert_eq!(e.word_text(&h2.faces[0].base), "[g',f]");
        assert!(h2.faces[1].base.is_empty());
        assert_eq!(h2.source, e.object("c'").unwrap());
    }

    #[test]
    fn faces_of_words() {
        let h = build_h().unwrap();
        let w = h.parse_word("H u v").unwrap();
        let f0 = h.face_of(&Ref::cell(w.clone()), 1, 0).unwrap();
        assert_eq!(h.word_text(&f0.base), "[u,v,u,v]");
        let f1 = h.face_of(&Ref::cell(w), 1, 1).unwrap();
        assert_eq!(h.word_text(&f1.base), "[u,v]");
    }

    #[test]
    fn localization_cancels() {
        let t = interval_tilde().unwrap();
        let w = t.parse_word("f f' f").unwrap();
        assert_eq!(t.word_text(&t.reduce(&w)), "[f]");
    }

    #[test]
    fn attach_checks_faces() {
        let mut p = build_p().unwrap();
        let c = p.object("c").unwrap();
        let i = crate::cubical::point_pair_inclusion().unwrap();
        let u = p.generator_id("u").unwrap();
        // [u] is not a loop at c
        assert!(p.attach("X", &i, c, c, &[Ref::cell(vec![u]), Ref::cell(vec![])]).is_err());
    }

    #[test]
    fn identity_morphism_validates() {
        let e = build_e().unwrap();
        PresentationMorphism::identity(&e).validate(&e, &e).unwrap();
    }
}
