//! The two-vertex polygon model of the surface `S_{h,b}`: boundary words,
//! the cyclic shift twist, an exhaustive classification of the simple
//! twists, and the equivalence with the two-branch-point covering twist.
//!
//! The surface is presented as a groupoid with objects `p[1]`, `p[2]` and
//! `d = 2h + b` edges `e[1]..e[d]`, all directed `p[1] -> p[2]`, together
//! with one closed boundary word per boundary component. Each edge side is
//! used exactly once across the boundary words.
//!
//! "Fixing the boundary" for a twist that swaps the two vertices is modeled
//! combinatorially: the image of every boundary word must be its one-step
//! cyclic rotation, in a direction uniform across all boundary components.
//! Any larger rotation (e.g. the edge-reversal functor, which rotates by
//! `d`) is rejected.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;

use crate::covering::CoverGroupoid;
use crate::error::{Error, Result};
use crate::groupoid::{
    EdgeId, FreeGroupoid, GroupoidFunctor, Letter, ObjectId, Orientation, PathWord,
};
use crate::ribbon::{RibbonGraph, SurfaceInvariants};

/// Largest `2h + b` accepted by the exhaustive classification.
pub const CLASSIFY_EDGE_BOUND: usize = 9;

/// Direction of a one-step cyclic shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TwistDirection {
    Positive,
    Negative,
}

impl TwistDirection {
    pub fn step(self) -> i64 {
        match self {
            TwistDirection::Positive => 1,
            TwistDirection::Negative => -1,
        }
    }

    pub fn both() -> [TwistDirection; 2] {
        [TwistDirection::Positive, TwistDirection::Negative]
    }
}

/// The polygon presentation of `S_{h,b}` with its boundary words.
#[derive(Debug, Clone)]
pub struct PolygonSurface {
    h: usize,
    b: usize,
    groupoid: Arc<FreeGroupoid>,
    boundary_words: Vec<PathWord>,
}

impl PolygonSurface {
    /// Builds the polygon for genus `h` with `b` boundary components.
    ///
    /// For `b = 1` the single boundary word is
    /// `e1.e2^-1...e_{2h+1}.e1^-1.e2...e_{2h+1}^-1`; for `b >= 2` the words
    /// are the bigon-chain extension
    /// `d1 = e1.e2^-1...e_{2h+1}.e_{2h+2}^-1`,
    /// `dj = e_{2h+j}.e_{2h+j+1}^-1` for `2 <= j <= b-1`, and
    /// `db = e1^-1.e2...e_{2h+1}^-1.e_{2h+b}`.
    ///
    /// `(h, b) = (0, 1)` is degenerate (its boundary word would cancel to
    /// nothing) and is rejected.
    pub fn new(h: usize, b: usize) -> Result<Self> {
        if b < 1 {
            return Err(Error::InvalidParameter("polygon needs b >= 1".to_string()));
        }
        if (h, b) == (0, 1) {
            return Err(Error::InvalidParameter(
                "(h, b) = (0, 1) is degenerate: the 2-gon boundary word reduces to the identity"
                    .to_string(),
            ));
        }
        let d = 2 * h + b;
        let objects = vec!["p[1]".to_string(), "p[2]".to_string()];
        let edges = (1..=d)
            .map(|i| (format!("e[{i}]"), "p[1]".to_string(), "p[2]".to_string()))
            .collect();
        let groupoid = Arc::new(FreeGroupoid::new(objects, edges)?);

        // alternating run over e[1]..e[2h+1]; `flip` swaps the orientations
        let zigzag = |flip: bool| -> Vec<Letter> {
            (0..=2 * h)
                .map(|t| Letter {
                    edge: EdgeId(t),
                    orientation: if (t % 2 == 0) != flip {
                        Orientation::Forward
                    } else {
                        Orientation::Inverse
                    },
                })
                .collect()
        };

        let mut raw_words: Vec<Vec<Letter>> = Vec::with_capacity(b);
        if b == 1 {
            let mut word = zigzag(false);
            word.extend(zigzag(true));
            raw_words.push(word);
        } else {
            let mut first = zigzag(false);
            first.push(Letter::inverse(EdgeId(2 * h + 1)));
            raw_words.push(first);
            for j in 2..b {
                raw_words.push(vec![
                    Letter::forward(EdgeId(2 * h + j - 1)),
                    Letter::inverse(EdgeId(2 * h + j)),
                ]);
            }
            let mut last = zigzag(true);
            last.push(Letter::forward(EdgeId(2 * h + b - 1)));
            raw_words.push(last);
        }

        let mut boundary_words = Vec::with_capacity(b);
        for raw in &raw_words {
            let word = groupoid.reduce_path(raw)?;
            if word.len() != raw.len() || word.source() != word.target() {
                return Err(Error::InvalidStructure(
                    "boundary word is not reduced and closed".to_string(),
                ));
            }
            boundary_words.push(word);
        }

        // each edge side (edge, orientation) is used exactly once overall
        let mut sides = vec![[0usize; 2]; d];
        for word in &boundary_words {
            for l in word.letters() {
                sides[l.edge.0][(l.orientation == Orientation::Inverse) as usize] += 1;
            }
        }
        if sides.iter().any(|counts| counts[0] != 1 || counts[1] != 1) {
            return Err(Error::InvalidStructure(
                "boundary words do not use each edge side exactly once".to_string(),
            ));
        }

        Ok(PolygonSurface {
            h,
            b,
            groupoid,
            boundary_words,
        })
    }

    pub fn genus(&self) -> usize {
        self.h
    }

    pub fn boundary_count(&self) -> usize {
        self.b
    }

    /// Edge count `d = 2h + b`.
    pub fn edge_count(&self) -> usize {
        2 * self.h + self.b
    }

    pub fn groupoid(&self) -> &Arc<FreeGroupoid> {
        &self.groupoid
    }

    pub fn boundary_words(&self) -> &[PathWord] {
        &self.boundary_words
    }

    /// Edge `e[i]`, `1 <= i <= d`.
    pub fn edge(&self, i: usize) -> EdgeId {
        EdgeId(i - 1)
    }

    fn wrap(&self, index: i64) -> usize {
        index.rem_euclid(self.edge_count() as i64) as usize
    }

    /// The permutation underlying the directed shift, 0-based:
    /// `sigma[i] = i ± 1 (mod d)`.
    pub fn shift_permutation(&self, direction: TwistDirection) -> Vec<usize> {
        let d = self.edge_count();
        (0..d)
            .map(|i| self.wrap(i as i64 + direction.step()))
            .collect()
    }
}

/// The simple twist `e[i] -> e[i±1]^-1` (indices mod `d`) swapping the two
/// vertices; every edge is moved.
#[derive(Debug, Clone)]
pub struct ShiftTwist {
    direction: TwistDirection,
    functor: GroupoidFunctor,
}

impl ShiftTwist {
    pub fn direction(&self) -> TwistDirection {
        self.direction
    }

    pub fn functor(&self) -> &GroupoidFunctor {
        &self.functor
    }

    pub fn into_functor(self) -> GroupoidFunctor {
        self.functor
    }
}

pub fn shift_twist(polygon: &PolygonSurface, direction: TwistDirection) -> ShiftTwist {
    let functor = signed_edge_functor(polygon, &polygon.shift_permutation(direction))
        .expect("shift permutation is valid");
    ShiftTwist { direction, functor }
}

/// The functor `p1 <-> p2`, `e[i] -> e[sigma(i)]^-1` for a 0-based
/// permutation `sigma`; the inverse sign is forced by endpoint
/// compatibility.
pub fn signed_edge_functor(polygon: &PolygonSurface, sigma: &[usize]) -> Result<GroupoidFunctor> {
    let g = polygon.groupoid();
    if sigma.len() != polygon.edge_count() {
        return Err(Error::InvalidParameter(
            "permutation length must equal d".to_string(),
        ));
    }
    let object_map = vec![ObjectId(1), ObjectId(0)];
    let edge_map = sigma
        .iter()
        .map(|&image| g.reduce_path(&[Letter::inverse(EdgeId(image))]))
        .collect::<Result<Vec<_>>>()?;
    GroupoidFunctor::new(g.clone(), object_map, edge_map)
}

/// The relabeling `e[i] -> e[sigma(i)]` (0-based permutation) fixing both
/// vertices.
pub fn edge_relabeling(polygon: &PolygonSurface, sigma: &[usize]) -> Result<GroupoidFunctor> {
    let g = polygon.groupoid();
    if sigma.len() != polygon.edge_count() {
        return Err(Error::InvalidParameter(
            "permutation length must equal d".to_string(),
        ));
    }
    let edge_map = sigma
        .iter()
        .map(|&image| g.reduce_path(&[Letter::forward(EdgeId(image))]))
        .collect::<Result<Vec<_>>>()?;
    GroupoidFunctor::new(g.clone(), vec![ObjectId(0), ObjectId(1)], edge_map)
}

/// Per-boundary-word verdicts of the one-step-rotation criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryRotationCheck {
    /// For each boundary word: does its image equal the one-step rotation in
    /// the positive / negative direction?
    pub per_word: Vec<(bool, bool)>,
}

impl BoundaryRotationCheck {
    /// True when one uniform direction rotates every boundary word.
    pub fn passes(&self) -> bool {
        self.uniform_direction().is_some()
    }

    pub fn uniform_direction(&self) -> Option<TwistDirection> {
        if self.per_word.iter().all(|&(fwd, _)| fwd) {
            Some(TwistDirection::Positive)
        } else if self.per_word.iter().all(|&(_, bwd)| bwd) {
            Some(TwistDirection::Negative)
        } else {
            None
        }
    }
}

/// Checks whether `f` sends every boundary word to its one-step cyclic
/// rotation. `f` must swap the two vertices.
pub fn boundary_rotation_check(
    f: &GroupoidFunctor,
    polygon: &PolygonSurface,
) -> Result<BoundaryRotationCheck> {
    if f.apply_object(ObjectId(0)) != ObjectId(1) || f.apply_object(ObjectId(1)) != ObjectId(0) {
        return Err(Error::InvalidParameter(
            "boundary rotation check requires a functor swapping p[1] and p[2]".to_string(),
        ));
    }
    let g = polygon.groupoid();
    let mut per_word = Vec::with_capacity(polygon.boundary_count());
    for word in polygon.boundary_words() {
        let image = f.apply_word(word);
        let fwd = image == g.rotate_word(word, 1)?;
        let bwd = image == g.rotate_word(word, -1)?;
        per_word.push((fwd, bwd));
    }
    Ok(BoundaryRotationCheck { per_word })
}

/// Exhaustively classifies the simple-twist candidates on `S_{h,b}`: the
/// functors `p1 <-> p2`, `e[i] -> e[sigma(i)]^-1` whose action rotates every
/// boundary word by one step in a uniform direction. Returns the passing
/// permutations (0-based).
///
/// The search is bounded by `2h + b <= 9`.
pub fn classify_simple_twists(h: usize, b: usize) -> Result<BTreeSet<Vec<usize>>> {
    let polygon = PolygonSurface::new(h, b)?;
    let d = polygon.edge_count();
    if d > CLASSIFY_EDGE_BOUND {
        return Err(Error::SearchBoundExceeded(format!(
            "classification enumerates d! permutations; d = {d} exceeds {CLASSIFY_EDGE_BOUND}"
        )));
    }

    // flat form of the boundary words: (0-based edge, inverted?)
    let words: Vec<Vec<(usize, bool)>> = polygon
        .boundary_words()
        .iter()
        .map(|w| {
            w.letters()
                .iter()
                .map(|l| (l.edge.0, l.orientation == Orientation::Inverse))
                .collect()
        })
        .collect();
    let rotate = |word: &[(usize, bool)], step: i64| -> Vec<(usize, bool)> {
        let n = word.len() as i64;
        let k = step.rem_euclid(n) as usize;
        word[k..].iter().chain(&word[..k]).copied().collect()
    };
    let rotated_fwd: Vec<_> = words.iter().map(|w| rotate(w, 1)).collect();
    let rotated_bwd: Vec<_> = words.iter().map(|w| rotate(w, -1)).collect();

    let mut passing = BTreeSet::new();
    for sigma in (0..d).permutations(d) {
        let image = |word: &[(usize, bool)]| -> Vec<(usize, bool)> {
            word.iter().map(|&(e, inv)| (sigma[e], !inv)).collect()
        };
        let all_fwd = words.iter().zip(&rotated_fwd).all(|(w, r)| image(w) == *r);
        if all_fwd || words.iter().zip(&rotated_bwd).all(|(w, r)| image(w) == *r) {
            passing.insert(sigma);
        }
    }
    Ok(passing)
}

/// Reference route for the classification: builds the full groupoid functor
/// for every permutation and runs [`boundary_rotation_check`]. Slower than
/// [`classify_simple_twists`] but definitionally direct; the two must agree.
pub fn classify_simple_twists_by_functor_check(
    polygon: &PolygonSurface,
) -> Result<BTreeSet<Vec<usize>>> {
    let d = polygon.edge_count();
    if d > CLASSIFY_EDGE_BOUND {
        return Err(Error::SearchBoundExceeded(format!(
            "classification enumerates d! permutations; d = {d} exceeds {CLASSIFY_EDGE_BOUND}"
        )));
    }
    let mut passing = BTreeSet::new();
    for sigma in (0..d).permutations(d) {
        let functor = signed_edge_functor(polygon, &sigma)?;
        if boundary_rotation_check(&functor, polygon)?.passes() {
            passing.insert(sigma);
        }
    }
    Ok(passing)
}

/// The classification outcome the case analysis predicts: both directed
/// shifts for one or two boundary components, nothing otherwise.
pub fn expected_classification(polygon: &PolygonSurface) -> BTreeSet<Vec<usize>> {
    if polygon.boundary_count() <= 2 {
        TwistDirection::both()
            .into_iter()
            .map(|dir| polygon.shift_permutation(dir))
            .collect()
    } else {
        BTreeSet::new()
    }
}

/// Converts the polygon into its two-vertex ribbon graph, using the boundary
/// words as face cycles: a forward side of `e[i]` is the half-edge `e[i]-`
/// at `p[1]`, an inverse side the half-edge `e[i]+` at `p[2]`. The rotation
/// is recovered from the face permutation; if it does not close up into
/// exactly the two expected vertices the word scheme is inconsistent.
pub fn to_ribbon_graph(polygon: &PolygonSurface) -> Result<RibbonGraph> {
    let d = polygon.edge_count();
    let half = 2 * d;
    let minus = |e: usize| 2 * e;
    let plus = |e: usize| 2 * e + 1;

    let mut face_next = vec![usize::MAX; half];
    for word in polygon.boundary_words() {
        let cycle: Vec<usize> = word
            .letters()
            .iter()
            .map(|l| match l.orientation {
                Orientation::Forward => minus(l.edge.0),
                Orientation::Inverse => plus(l.edge.0),
            })
            .collect();
        for (pos, &h) in cycle.iter().enumerate() {
            face_next[h] = cycle[(pos + 1) % cycle.len()];
        }
    }

    // sigma = face_next ∘ pairing; its cycles must be the two vertex stars
    let pairing = |h: usize| h ^ 1;
    let rotation: Vec<usize> = (0..half).map(|h| face_next[pairing(h)]).collect();
    let extract_cycle = |start: usize| -> Vec<usize> {
        let mut cycle = vec![start];
        let mut h = rotation[start];
        while h != start {
            cycle.push(h);
            h = rotation[h];
        }
        cycle
    };
    let p1_cycle = extract_cycle(minus(0));
    let p2_cycle = extract_cycle(plus(0));
    if p1_cycle.len() != d
        || p2_cycle.len() != d
        || p1_cycle.iter().any(|&h| h % 2 != 0)
        || p2_cycle.iter().any(|&h| h % 2 != 1)
    {
        return Err(Error::InvalidStructure(
            "boundary words do not close up into a two-vertex surface".to_string(),
        ));
    }

    let label = |h: usize| {
        format!(
            "e[{}]{}",
            h / 2 + 1,
            if h.is_multiple_of(2) { "-" } else { "+" }
        )
    };
    let vertices = vec![
        (
            "p[1]".to_string(),
            p1_cycle.into_iter().map(label).collect(),
        ),
        (
            "p[2]".to_string(),
            p2_cycle.into_iter().map(label).collect(),
        ),
    ];
    let pairs = (0..d).map(|e| (label(minus(e)), label(plus(e)))).collect();
    RibbonGraph::from_rotations(vertices, pairs)
}

/// Ribbon-graph invariants of the polygon; must reproduce `(h, b)`.
pub fn polygon_surface_invariants(polygon: &PolygonSurface) -> Result<SurfaceInvariants> {
    to_ribbon_graph(polygon)?.surface_invariants()
}

/// Outcome of comparing the polygon shift twist with the two-marked-point
/// covering twist of the same sheet count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverEquivalence {
    pub sheet_count: usize,
    pub polygon_genus: usize,
    pub polygon_boundary: usize,
    pub matches: bool,
    pub mismatch: Option<String>,
}

/// Restricts the lifted twist of the cover over a disk with two marked
/// points to the edges over the middle arc, relabels `e[1][j] -> e[j]`, and
/// compares with the positive shift twist on the polygon with
/// `(h, b) = ((d-1)/2, 1)` for odd `d` and `(d/2 - 1, 2)` for even `d`.
pub fn cover_equivalence_check(d: usize) -> Result<CoverEquivalence> {
    if d < 2 {
        return Err(Error::InvalidParameter(
            "cover equivalence needs d >= 2".to_string(),
        ));
    }
    let (h, b) = if d % 2 == 1 {
        ((d - 1) / 2, 1)
    } else {
        (d / 2 - 1, 2)
    };
    let polygon = PolygonSurface::new(h, b)?;
    let g = polygon.groupoid();

    let cover = CoverGroupoid::new(2, d)?;
    let lifted = cover.lifted_twist(1)?;

    // translate the restriction to the middle edges into the polygon groupoid
    let mut edge_map = Vec::with_capacity(d);
    for j in 1..=d {
        let image = lifted.edge_image(cover.edge(1, j));
        let letters = image
            .letters()
            .iter()
            .map(|l| {
                let index = l.edge.0;
                if index / d != 1 {
                    return Err(Error::InvalidStructure(format!(
                        "restriction leaks off the middle level: {}",
                        cover.groupoid().edge_label(l.edge)
                    )));
                }
                Ok(Letter {
                    edge: EdgeId(index % d),
                    orientation: l.orientation,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        edge_map.push(g.reduce_path(&letters)?);
    }
    let restricted = GroupoidFunctor::new(g.clone(), vec![ObjectId(1), ObjectId(0)], edge_map)?;

    let shift = shift_twist(&polygon, TwistDirection::Positive);
    let matches = restricted.equals(shift.functor())?;
    let mismatch = restricted
        .difference_witness(shift.functor())?
        .map(|diff| match diff {
            crate::groupoid::FunctorDifference::Object {
                object,
                left,
                right,
            } => format!(
                "object {}: {} vs {}",
                g.object_label(object),
                g.object_label(left),
                g.object_label(right)
            ),
            crate::groupoid::FunctorDifference::Edge { edge, left, right } => format!(
                "edge {}: {} vs {}",
                g.edge_label(edge),
                g.render_word(&left),
                g.render_word(&right)
            ),
        });
    Ok(CoverEquivalence {
        sheet_count: d,
        polygon_genus: h,
        polygon_boundary: b,
        matches,
        mismatch,
    })
}
