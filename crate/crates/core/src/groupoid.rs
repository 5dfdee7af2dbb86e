//! Free groupoids on finite directed graphs.
//!
//! Morphisms are reduced edge paths; composition is concatenation followed by
//! free cancellation. Two reduced words between the same endpoints are equal
//! as morphisms iff they are identical letter sequences, so equality tests
//! never need anything beyond free reduction.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of an object within its [`FreeGroupoid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub usize);

/// Index of an edge within its [`FreeGroupoid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

/// Direction in which an edge is traversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Forward,
    Inverse,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Inverse,
            Orientation::Inverse => Orientation::Forward,
        }
    }
}

/// One oriented edge traversal inside a path word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub edge: EdgeId,
    pub orientation: Orientation,
}

impl Letter {
    pub fn forward(edge: EdgeId) -> Self {
        Letter {
            edge,
            orientation: Orientation::Forward,
        }
    }

    pub fn inverse(edge: EdgeId) -> Self {
        Letter {
            edge,
            orientation: Orientation::Inverse,
        }
    }

    pub fn flipped(self) -> Self {
        Letter {
            edge: self.edge,
            orientation: self.orientation.flipped(),
        }
    }

    /// True when the two letters cancel under free reduction.
    pub fn cancels(self, other: Letter) -> bool {
        self.edge == other.edge && self.orientation != other.orientation
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct EdgeData {
    label: String,
    source: ObjectId,
    target: ObjectId,
}

/// A free groupoid generated by a finite directed graph.
///
/// Objects and edges carry unique string labels; all downstream structures
/// refer to them by index.
#[derive(Debug, Clone)]
pub struct FreeGroupoid {
    objects: Vec<String>,
    edges: Vec<EdgeData>,
    object_ids: HashMap<String, ObjectId>,
    edge_ids: HashMap<String, EdgeId>,
}

impl PartialEq for FreeGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.edges == other.edges
    }
}

impl Eq for FreeGroupoid {}

impl FreeGroupoid {
    /// Builds a groupoid from object labels and `(label, source, target)`
    /// edge triples. Labels must be unique within their kind and edge
    /// endpoints must name known objects.
    pub fn new<S: Into<String>>(objects: Vec<S>, edges: Vec<(S, S, S)>) -> Result<Self> {
        let mut g = FreeGroupoid {
            objects: Vec::new(),
            edges: Vec::new(),
            object_ids: HashMap::new(),
            edge_ids: HashMap::new(),
        };
        for label in objects {
            let label = label.into();
            if g.object_ids.contains_key(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            g.object_ids
                .insert(label.clone(), ObjectId(g.objects.len()));
            g.objects.push(label);
        }
        for (label, source, target) in edges {
            let label = label.into();
            let source = source.into();
            let target = target.into();
            if g.edge_ids.contains_key(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            let source = g.object_id(&source).ok_or(Error::UnknownObject(source))?;
            let target = g.object_id(&target).ok_or(Error::UnknownObject(target))?;
            g.edge_ids.insert(label.clone(), EdgeId(g.edges.len()));
            g.edges.push(EdgeData {
                label,
                source,
                target,
            });
        }
        Ok(g)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn object_ids(&self) -> impl Iterator<Item = ObjectId> {
        (0..self.objects.len()).map(ObjectId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn object_id(&self, label: &str) -> Option<ObjectId> {
        self.object_ids.get(label).copied()
    }

    pub fn edge_id(&self, label: &str) -> Option<EdgeId> {
        self.edge_ids.get(label).copied()
    }

    pub fn object_label(&self, o: ObjectId) -> &str {
        &self.objects[o.0]
    }

    pub fn edge_label(&self, e: EdgeId) -> &str {
        &self.edges[e.0].label
    }

    pub fn edge_source(&self, e: EdgeId) -> ObjectId {
        self.edges[e.0].source
    }

    pub fn edge_target(&self, e: EdgeId) -> ObjectId {
        self.edges[e.0].target
    }

    /// Start object of an oriented traversal.
    pub fn letter_source(&self, l: Letter) -> ObjectId {
        match l.orientation {
            Orientation::Forward => self.edge_source(l.edge),
            Orientation::Inverse => self.edge_target(l.edge),
        }
    }

    /// End object of an oriented traversal.
    pub fn letter_target(&self, l: Letter) -> ObjectId {
        match l.orientation {
            Orientation::Forward => self.edge_target(l.edge),
            Orientation::Inverse => self.edge_source(l.edge),
        }
    }

    /// The empty word at `object`: the identity morphism.
    pub fn identity_path(&self, object: ObjectId) -> PathWord {
        PathWord {
            letters: Vec::new(),
            source: object,
            target: object,
        }
    }

    /// The one-letter word traversing `edge` forward.
    pub fn edge_path(&self, edge: EdgeId) -> PathWord {
        let l = Letter::forward(edge);
        PathWord {
            letters: vec![l],
            source: self.letter_source(l),
            target: self.letter_target(l),
        }
    }

    /// Freely reduces a raw letter sequence into a [`PathWord`].
    ///
    /// Adjacent letters must be composable before reduction; the endpoints of
    /// the raw sequence are preserved. An empty sequence is rejected because
    /// it carries no endpoint information; use [`Self::identity_path`].
    pub fn reduce_path(&self, letters: &[Letter]) -> Result<PathWord> {
        if letters.is_empty() {
            return Err(Error::EmptyLetterSequence);
        }
        for l in letters {
            if l.edge.0 >= self.edges.len() {
                return Err(Error::UnknownEdge(format!("edge index {}", l.edge.0)));
            }
        }
        for (pos, pair) in letters.windows(2).enumerate() {
            let end = self.letter_target(pair[0]);
            let start = self.letter_source(pair[1]);
            if end != start {
                return Err(Error::NotComposable {
                    position: pos,
                    detail: format!(
                        "{} ends at {} but {} starts at {}",
                        self.render_letter(pair[0]),
                        self.object_label(end),
                        self.render_letter(pair[1]),
                        self.object_label(start),
                    ),
                });
            }
        }
        let source = self.letter_source(letters[0]);
        let target = self.letter_target(letters[letters.len() - 1]);
        Ok(PathWord {
            letters: reduce_letters(letters.iter().copied()),
            source,
            target,
        })
    }

    /// Convenience constructor from `(edge label, orientation)` pairs.
    pub fn path_from_labels(&self, items: &[(&str, Orientation)]) -> Result<PathWord> {
        let letters = items
            .iter()
            .map(|(label, orientation)| {
                self.edge_id(label)
                    .map(|edge| Letter {
                        edge,
                        orientation: *orientation,
                    })
                    .ok_or_else(|| Error::UnknownEdge((*label).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.reduce_path(&letters)
    }

    pub fn render_letter(&self, l: Letter) -> String {
        match l.orientation {
            Orientation::Forward => self.edge_label(l.edge).to_string(),
            Orientation::Inverse => format!("{}^-1", self.edge_label(l.edge)),
        }
    }

    /// Cyclic rotation of a closed word: the first `steps` letters move to
    /// the back (negative steps rotate the other way). The result is based at
    /// the start of its new first letter.
    pub fn rotate_word(&self, w: &PathWord, steps: i64) -> Result<PathWord> {
        if w.source() != w.target() {
            return Err(Error::InvalidParameter(
                "only closed words can be rotated".to_string(),
            ));
        }
        if w.is_empty() {
            return Ok(w.clone());
        }
        let n = w.letters.len() as i64;
        let k = steps.rem_euclid(n) as usize;
        let mut letters = Vec::with_capacity(w.letters.len());
        letters.extend_from_slice(&w.letters[k..]);
        letters.extend_from_slice(&w.letters[..k]);
        let base = self.letter_source(letters[0]);
        // the wrapped-around seam may cancel when the word is not cyclically reduced
        let letters = reduce_letters(letters);
        Ok(PathWord {
            letters,
            source: base,
            target: base,
        })
    }

    /// Human-readable rendering, e.g. `e[0][1].e[1][2]^-1`; identities render
    /// as `1@<object>`.
    pub fn render_word(&self, w: &PathWord) -> String {
        if w.letters.is_empty() {
            return format!("1@{}", self.object_label(w.source));
        }
        w.letters
            .iter()
            .map(|&l| self.render_letter(l))
            .collect::<Vec<_>>()
            .join(".")
    }
}

fn reduce_letters(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::new();
    for l in letters {
        if stack.last().is_some_and(|&top| top.cancels(l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack
}

fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    if stack.last().is_some_and(|&top| top.cancels(l)) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

/// A reduced, composable sequence of oriented edges: a morphism of the free
/// groupoid. The empty word is the identity at its basepoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWord {
    letters: Vec<Letter>,
    source: ObjectId,
    target: ObjectId,
}

impl PathWord {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn source(&self) -> ObjectId {
        self.source
    }

    pub fn target(&self) -> ObjectId {
        self.target
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True for identity morphisms (the empty word).
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// True iff this is the one-letter forward word on `edge`.
    pub fn is_forward_edge(&self, edge: EdgeId) -> bool {
        self.letters.len() == 1 && self.letters[0] == Letter::forward(edge)
    }

    pub fn inverse(&self) -> PathWord {
        PathWord {
            letters: self.letters.iter().rev().map(|l| l.flipped()).collect(),
            source: self.target,
            target: self.source,
        }
    }

    /// Diagrammatic composition: `self` followed by `other`.
    pub fn then(&self, other: &PathWord) -> Result<PathWord> {
        if self.target != other.source {
            return Err(Error::NotComposable {
                position: self.letters.len().saturating_sub(1),
                detail: "word endpoints do not match".to_string(),
            });
        }
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(PathWord {
            letters,
            source: self.source,
            target: other.target,
        })
    }
}

/// Labels moved by a functor, split by kind.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Support {
    pub objects: BTreeSet<ObjectId>,
    pub edges: BTreeSet<EdgeId>,
}

impl Support {
    pub fn is_empty(&self) -> bool {
        self.objects.is_empty() && self.edges.is_empty()
    }

    pub fn labels(&self, groupoid: &FreeGroupoid) -> BTreeSet<String> {
        self.objects
            .iter()
            .map(|&o| groupoid.object_label(o).to_string())
            .chain(
                self.edges
                    .iter()
                    .map(|&e| groupoid.edge_label(e).to_string()),
            )
            .collect()
    }
}

/// Where two functors first disagree; used as a verification witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorDifference {
    Object {
        object: ObjectId,
        left: ObjectId,
        right: ObjectId,
    },
    Edge {
        edge: EdgeId,
        left: PathWord,
        right: PathWord,
    },
}

/// A self-functor of a free groupoid: a bijection on objects together with an
/// endpoint-compatible reduced word for each generating edge. Inverse letters
/// map to inverted image words.
#[derive(Debug, Clone)]
pub struct GroupoidFunctor {
    domain: Arc<FreeGroupoid>,
    object_map: Vec<ObjectId>,
    edge_map: Vec<PathWord>,
}

impl GroupoidFunctor {
    pub fn new(
        domain: Arc<FreeGroupoid>,
        object_map: Vec<ObjectId>,
        edge_map: Vec<PathWord>,
    ) -> Result<Self> {
        if object_map.len() != domain.object_count() || edge_map.len() != domain.edge_count() {
            return Err(Error::InvalidStructure(
                "object or edge map size does not match the groupoid".to_string(),
            ));
        }
        let mut seen = vec![false; object_map.len()];
        for &o in &object_map {
            if o.0 >= seen.len() || seen[o.0] {
                return Err(Error::InvalidStructure(
                    "object map is not a bijection".to_string(),
                ));
            }
            seen[o.0] = true;
        }
        for (idx, word) in edge_map.iter().enumerate() {
            let e = EdgeId(idx);
            if word.source() != object_map[domain.edge_source(e).0]
                || word.target() != object_map[domain.edge_target(e).0]
            {
                return Err(Error::InvalidStructure(format!(
                    "image of {} is not endpoint-compatible",
                    domain.edge_label(e)
                )));
            }
        }
        Ok(GroupoidFunctor {
            domain,
            object_map,
            edge_map,
        })
    }

    pub fn identity(domain: Arc<FreeGroupoid>) -> Self {
        let object_map = domain.object_ids().collect();
        let edge_map = domain.edge_ids().map(|e| domain.edge_path(e)).collect();
        GroupoidFunctor {
            domain,
            object_map,
            edge_map,
        }
    }

    pub fn domain(&self) -> &Arc<FreeGroupoid> {
        &self.domain
    }

    pub fn apply_object(&self, o: ObjectId) -> ObjectId {
        self.object_map[o.0]
    }

    pub fn edge_image(&self, e: EdgeId) -> &PathWord {
        &self.edge_map[e.0]
    }

    pub fn apply_letter(&self, l: Letter) -> PathWord {
        match l.orientation {
            Orientation::Forward => self.edge_map[l.edge.0].clone(),
            Orientation::Inverse => self.edge_map[l.edge.0].inverse(),
        }
    }

    /// Image of a word: letterwise application followed by free reduction.
    pub fn apply_word(&self, w: &PathWord) -> PathWord {
        let mut letters: Vec<Letter> = Vec::new();
        for &l in w.letters() {
            let image = &self.edge_map[l.edge.0];
            match l.orientation {
                Orientation::Forward => {
                    for &m in image.letters() {
                        push_reduced(&mut letters, m);
                    }
                }
                Orientation::Inverse => {
                    for &m in image.letters().iter().rev() {
                        push_reduced(&mut letters, m.flipped());
                    }
                }
            }
        }
        PathWord {
            letters,
            source: self.object_map[w.source().0],
            target: self.object_map[w.target().0],
        }
    }

    fn check_same_domain(&self, other: &GroupoidFunctor) -> Result<()> {
        if Arc::ptr_eq(&self.domain, &other.domain) || self.domain == other.domain {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    /// Function composition `self ∘ inner`: `inner` is applied first.
    pub fn after(&self, inner: &GroupoidFunctor) -> Result<GroupoidFunctor> {
        self.check_same_domain(inner)?;
        let object_map = inner
            .object_map
            .iter()
            .map(|&o| self.object_map[o.0])
            .collect();
        let edge_map = inner.edge_map.iter().map(|w| self.apply_word(w)).collect();
        Ok(GroupoidFunctor {
            domain: self.domain.clone(),
            object_map,
            edge_map,
        })
    }

    /// `self` composed with itself `exponent` times; the zeroth power is the
    /// identity.
    pub fn power(&self, exponent: usize) -> GroupoidFunctor {
        let mut acc = GroupoidFunctor::identity(self.domain.clone());
        for _ in 0..exponent {
            acc = self.after(&acc).expect("same domain");
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.object_map.iter().enumerate().all(|(i, &o)| o.0 == i)
            && self
                .edge_map
                .iter()
                .enumerate()
                .all(|(i, w)| w.is_forward_edge(EdgeId(i)))
    }

    /// Smallest positive `k <= max` with `self^k = id`, if any.
    pub fn order(&self, max: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=max {
            if acc.is_identity() {
                return Some(k);
            }
            acc = self.after(&acc).expect("same domain");
        }
        None
    }

    /// Syntactic equality on reduced generator images. In a free groupoid
    /// this coincides with equality of the induced functors.
    pub fn equals(&self, other: &GroupoidFunctor) -> Result<bool> {
        self.check_same_domain(other)?;
        Ok(self.object_map == other.object_map && self.edge_map == other.edge_map)
    }

    /// First generator on which the two functors disagree, if any.
    pub fn difference_witness(&self, other: &GroupoidFunctor) -> Result<Option<FunctorDifference>> {
        self.check_same_domain(other)?;
        for (i, (&l, &r)) in self.object_map.iter().zip(&other.object_map).enumerate() {
            if l != r {
                return Ok(Some(FunctorDifference::Object {
                    object: ObjectId(i),
                    left: l,
                    right: r,
                }));
            }
        }
        for (i, (l, r)) in self.edge_map.iter().zip(&other.edge_map).enumerate() {
            if l != r {
                return Ok(Some(FunctorDifference::Edge {
                    edge: EdgeId(i),
                    left: l.clone(),
                    right: r.clone(),
                }));
            }
        }
        Ok(None)
    }

    /// Moved objects and edges: the finite shadow of the support of the
    /// underlying mapping class.
    pub fn support(&self) -> Support {
        let objects = self
            .object_map
            .iter()
            .enumerate()
            .filter(|(i, &o)| o.0 != *i)
            .map(|(i, _)| ObjectId(i))
            .collect();
        let edges = self
            .edge_map
            .iter()
            .enumerate()
            .filter(|(i, w)| !w.is_forward_edge(EdgeId(*i)))
            .map(|(i, _)| EdgeId(i))
            .collect();
        Support { objects, edges }
    }
}

/// A functor sending each edge to a single signed edge, invertibly.
/// Relabelings transport supports: conjugating by one permutes the moved
/// labels without changing their structure.
#[derive(Debug, Clone)]
pub struct Relabeling {
    functor: GroupoidFunctor,
    images: Vec<Letter>,
}

impl Relabeling {
    pub fn try_new(functor: &GroupoidFunctor) -> Result<Self> {
        let mut images = Vec::with_capacity(functor.domain.edge_count());
        let mut hit = vec![false; functor.domain.edge_count()];
        for e in functor.domain.edge_ids() {
            let word = functor.edge_image(e);
            if word.len() != 1 {
                return Err(Error::NotARelabeling(format!(
                    "image of {} has length {}",
                    functor.domain.edge_label(e),
                    word.len()
                )));
            }
            let letter = word.letters()[0];
            if hit[letter.edge.0] {
                return Err(Error::NotARelabeling(format!(
                    "edge {} is hit twice",
                    functor.domain.edge_label(letter.edge)
                )));
            }
            hit[letter.edge.0] = true;
            images.push(letter);
        }
        Ok(Relabeling {
            functor: functor.clone(),
            images,
        })
    }

    pub fn functor(&self) -> &GroupoidFunctor {
        &self.functor
    }

    pub fn inverse(&self) -> Relabeling {
        let domain = self.functor.domain.clone();
        let mut object_map = vec![ObjectId(0); domain.object_count()];
        for (i, &o) in self.functor.object_map.iter().enumerate() {
            object_map[o.0] = ObjectId(i);
        }
        let mut inverse_images = vec![None; domain.edge_count()];
        for (i, &letter) in self.images.iter().enumerate() {
            // H(e_i) = f^s  ⟹  H⁻¹(f) = e_i^s
            inverse_images[letter.edge.0] = Some(Letter {
                edge: EdgeId(i),
                orientation: letter.orientation,
            });
        }
        let images: Vec<Letter> = inverse_images.into_iter().map(|l| l.unwrap()).collect();
        let edge_map = images
            .iter()
            .map(|&l| PathWord {
                letters: vec![l],
                source: domain.letter_source(l),
                target: domain.letter_target(l),
            })
            .collect();
        let functor = GroupoidFunctor::new(domain, object_map, edge_map)
            .expect("the inverse of a relabeling is endpoint-compatible");
        Relabeling { images, functor }
    }

    /// Preimage of a support under this relabeling, as label sets.
    pub fn preimage_support(&self, support: &Support) -> Support {
        let mut object_preimage = vec![ObjectId(0); self.functor.domain.object_count()];
        for (i, &o) in self.functor.object_map.iter().enumerate() {
            object_preimage[o.0] = ObjectId(i);
        }
        let mut edge_preimage = vec![EdgeId(0); self.functor.domain.edge_count()];
        for (i, &letter) in self.images.iter().enumerate() {
            edge_preimage[letter.edge.0] = EdgeId(i);
        }
        Support {
            objects: support
                .objects
                .iter()
                .map(|&o| object_preimage[o.0])
                .collect(),
            edges: support.edges.iter().map(|&e| edge_preimage[e.0]).collect(),
        }
    }
}

/// Checks the conjugation-transports-supports identity:
/// `supp(h⁻¹ ∘ f ∘ h) = h⁻¹(supp(f))` for a relabeling `h`.
///
/// Returns the verdict; errors only when `h` is not a relabeling or the
/// domains differ.
pub fn conjugate_support_check(f: &GroupoidFunctor, h: &GroupoidFunctor) -> Result<bool> {
    let relabeling = Relabeling::try_new(h)?;
    let h_inv = relabeling.inverse();
    let conjugated = h_inv.functor().after(&f.after(h)?)?;
    Ok(conjugated.support() == relabeling.preimage_support(&f.support()))
}

/// A functor between two (possibly different) free groupoids, used for
/// covering projections. No bijectivity is required.
#[derive(Debug, Clone)]
pub struct GroupoidMorphism {
    domain: Arc<FreeGroupoid>,
    codomain: Arc<FreeGroupoid>,
    object_map: Vec<ObjectId>,
    edge_map: Vec<PathWord>,
}

impl GroupoidMorphism {
    pub fn new(
        domain: Arc<FreeGroupoid>,
        codomain: Arc<FreeGroupoid>,
        object_map: Vec<ObjectId>,
        edge_map: Vec<PathWord>,
    ) -> Result<Self> {
        if object_map.len() != domain.object_count() || edge_map.len() != domain.edge_count() {
            return Err(Error::InvalidStructure(
                "object or edge map size does not match the domain".to_string(),
            ));
        }
        for &o in &object_map {
            if o.0 >= codomain.object_count() {
                return Err(Error::InvalidStructure(
                    "object image out of range".to_string(),
                ));
            }
        }
        for (idx, word) in edge_map.iter().enumerate() {
            let e = EdgeId(idx);
            if word.source() != object_map[domain.edge_source(e).0]
                || word.target() != object_map[domain.edge_target(e).0]
            {
                return Err(Error::InvalidStructure(format!(
                    "image of {} is not endpoint-compatible",
                    domain.edge_label(e)
                )));
            }
        }
        Ok(GroupoidMorphism {
            domain,
            codomain,
            object_map,
            edge_map,
        })
    }

    pub fn domain(&self) -> &Arc<FreeGroupoid> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FreeGroupoid> {
        &self.codomain
    }

    pub fn apply_object(&self, o: ObjectId) -> ObjectId {
        self.object_map[o.0]
    }

    pub fn edge_image(&self, e: EdgeId) -> &PathWord {
        &self.edge_map[e.0]
    }

    pub fn apply_word(&self, w: &PathWord) -> PathWord {
        let mut letters: Vec<Letter> = Vec::new();
        for &l in w.letters() {
            let image = &self.edge_map[l.edge.0];
            match l.orientation {
                Orientation::Forward => {
                    for &m in image.letters() {
                        push_reduced(&mut letters, m);
                    }
                }
                Orientation::Inverse => {
                    for &m in image.letters().iter().rev() {
                        push_reduced(&mut letters, m.flipped());
                    }
                }
            }
        }
        PathWord {
            letters,
            source: self.object_map[w.source().0],
            target: self.object_map[w.target().0],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw_path(letters: Vec<Letter>, source: ObjectId, target: ObjectId) -> PathWord {
        debug_assert_eq!(
            reduce_letters(letters.iter().copied()),
            letters,
            "raw path must be reduced"
        );
        PathWord {
            letters,
            source,
            target,
        }
    }

    fn polygonish(n: usize) -> Arc<FreeGroupoid> {
        // all edges run p1 -> p2
        let edges = (1..=n)
            .map(|i| (format!("e[{i}]"), "p[1]".to_string(), "p[2]".to_string()))
            .collect();
        Arc::new(FreeGroupoid::new(vec!["p[1]".to_string(), "p[2]".to_string()], edges).unwrap())
    }

    fn chain(n: usize) -> Arc<FreeGroupoid> {
        let objects = (0..=n + 1).map(|i| format!("p[{i}]")).collect();
        let edges = (0..=n)
            .map(|i| {
                (
                    format!("e[{i}]"),
                    format!("p[{i}]"),
                    format!("p[{}]", i + 1),
                )
            })
            .collect();
        Arc::new(FreeGroupoid::new(objects, edges).unwrap())
    }

    #[test]
    fn inverse_pair_reduces_to_identity() {
        let g = chain(2);
        let e1 = g.edge_id("e[1]").unwrap();
        let w = g
            .reduce_path(&[Letter::forward(e1), Letter::inverse(e1)])
            .unwrap();
        assert!(w.is_identity());
        assert_eq!(w.source(), g.object_id("p[1]").unwrap());
        assert_eq!(w.target(), g.object_id("p[1]").unwrap());
    }

    #[test]
    fn single_cancellation_in_polygon() {
        // all edges p1 -> p2, so e1.e2^-1.e2.e3^-1 is composable
        let g = polygonish(3);
        let w = g
            .path_from_labels(&[
                ("e[1]", Orientation::Forward),
                ("e[2]", Orientation::Inverse),
                ("e[2]", Orientation::Forward),
                ("e[3]", Orientation::Inverse),
            ])
            .unwrap();
        assert_eq!(g.render_word(&w), "e[1].e[3]^-1");
    }

    #[test]
    fn chain_reduction_keeps_prefix() {
        let g = chain(2);
        let w = g
            .path_from_labels(&[
                ("e[0]", Orientation::Forward),
                ("e[1]", Orientation::Forward),
                ("e[1]", Orientation::Inverse),
                ("e[1]", Orientation::Forward),
            ])
            .unwrap();
        assert_eq!(g.render_word(&w), "e[0].e[1]");
    }

    #[test]
    fn non_composable_letters_rejected() {
        let g = chain(2);
        let e0 = g.edge_id("e[0]").unwrap();
        let e2 = g.edge_id("e[2]").unwrap();
        let err = g.reduce_path(&[Letter::forward(e0), Letter::forward(e2)]);
        assert!(matches!(err, Err(Error::NotComposable { position: 0, .. })));
    }

    #[test]
    fn empty_sequence_rejected() {
        let g = chain(2);
        assert!(matches!(
            g.reduce_path(&[]),
            Err(Error::EmptyLetterSequence)
        ));
    }

    #[test]
    fn unknown_edge_label_rejected() {
        let g = chain(2);
        let err = g.path_from_labels(&[("e[9]", Orientation::Forward)]);
        assert!(matches!(err, Err(Error::UnknownEdge(_))));
        let foreign = Letter::forward(EdgeId(99));
        assert!(matches!(
            g.reduce_path(&[foreign]),
            Err(Error::UnknownEdge(_))
        ));
    }

    #[test]
    fn identity_functor_fixes_everything() {
        let g = polygonish(3);
        let id = GroupoidFunctor::identity(g.clone());
        assert!(id.is_identity());
        assert!(id.support().is_empty());
        let composed = id.after(&id).unwrap();
        assert!(composed.equals(&id).unwrap());
    }

    #[test]
    fn functor_identity_is_unit_for_composition() {
        let g = polygonish(3);
        // the cyclic shift e_i -> e_{i+1}^-1 with objects swapped
        let swap = vec![ObjectId(1), ObjectId(0)];
        let edge_map: Vec<PathWord> = (0..3)
            .map(|i| {
                let l = Letter::inverse(EdgeId((i + 1) % 3));
                raw_path(vec![l], ObjectId(1), ObjectId(0))
            })
            .collect();
        let shift = GroupoidFunctor::new(g.clone(), swap, edge_map).unwrap();
        let id = GroupoidFunctor::identity(g.clone());
        assert!(shift.after(&id).unwrap().equals(&shift).unwrap());
        assert!(id.after(&shift).unwrap().equals(&shift).unwrap());
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let g1 = polygonish(3);
        let g2 = polygonish(4);
        let id1 = GroupoidFunctor::identity(g1);
        let id2 = GroupoidFunctor::identity(g2);
        assert!(matches!(id1.after(&id2), Err(Error::DomainMismatch)));
        assert!(matches!(id1.equals(&id2), Err(Error::DomainMismatch)));
    }

    #[test]
    fn relabeling_inverse_round_trips() {
        let g = polygonish(4);
        // sign-flip relabeling: objects swapped, e_i -> e_{i+1}^-1 cyclically
        let swap = vec![ObjectId(1), ObjectId(0)];
        let edge_map: Vec<PathWord> = (0..4)
            .map(|i| {
                raw_path(
                    vec![Letter::inverse(EdgeId((i + 1) % 4))],
                    ObjectId(1),
                    ObjectId(0),
                )
            })
            .collect();
        let h = GroupoidFunctor::new(g.clone(), swap, edge_map).unwrap();
        let relabeling = Relabeling::try_new(&h).unwrap();
        let inv = relabeling.inverse();
        let round = inv.functor().after(&h).unwrap();
        assert!(round.is_identity());
        let round = h.after(inv.functor()).unwrap();
        assert!(round.is_identity());
    }

    #[test]
    fn conjugate_support_check_identity_case() {
        let g = polygonish(3);
        let id = GroupoidFunctor::identity(g.clone());
        let swap = vec![ObjectId(1), ObjectId(0)];
        let edge_map: Vec<PathWord> = (0..3)
            .map(|i| {
                raw_path(
                    vec![Letter::inverse(EdgeId((i + 1) % 3))],
                    ObjectId(1),
                    ObjectId(0),
                )
            })
            .collect();
        let h = GroupoidFunctor::new(g, swap, edge_map).unwrap();
        assert!(conjugate_support_check(&id, &h).unwrap());
    }

    #[test]
    fn non_relabeling_rejected() {
        let g = chain(2);
        let id = GroupoidFunctor::identity(g.clone());
        // build a functor with a length-2 image: e0 -> e0.e1, e1 -> e1^-1, e2 -> e1.e2
        let e = |i: usize| EdgeId(i);
        let object_map = vec![ObjectId(0), ObjectId(2), ObjectId(1), ObjectId(3)];
        let edge_map = vec![
            raw_path(
                vec![Letter::forward(e(0)), Letter::forward(e(1))],
                ObjectId(0),
                ObjectId(2),
            ),
            raw_path(vec![Letter::inverse(e(1))], ObjectId(2), ObjectId(1)),
            raw_path(
                vec![Letter::forward(e(1)), Letter::forward(e(2))],
                ObjectId(1),
                ObjectId(3),
            ),
        ];
        let half_twist = GroupoidFunctor::new(g, object_map, edge_map).unwrap();
        assert!(matches!(
            conjugate_support_check(&id, &half_twist),
            Err(Error::NotARelabeling(_))
        ));
    }

    #[test]
    fn word_inversion_respects_images() {
        let g = chain(3);
        let id = GroupoidFunctor::identity(g.clone());
        let w = g
            .path_from_labels(&[
                ("e[1]", Orientation::Forward),
                ("e[2]", Orientation::Forward),
            ])
            .unwrap();
        let inv = w.inverse();
        assert_eq!(g.render_word(&inv), "e[2]^-1.e[1]^-1");
        assert!(w.then(&inv).unwrap().is_identity());
        assert_eq!(id.apply_word(&inv), inv);
    }
}
