//! Ribbon graphs: half-edge pairings with vertex rotations, face traversal,
//! and the surface invariants of the thickened surface.
//!
//! A ribbon graph realizes an oriented surface with boundary; its boundary
//! components are the orbits of the face permutation (rotation composed with
//! the edge pairing). The covering ribbon graph built here reproduces the
//! Riemann–Hurwitz genus and boundary count of the branched cover.

use crate::error::{Error, Result};

/// Genus, boundary count, and Euler characteristic of a compact oriented
/// surface with boundary; always satisfies `euler = 2 - 2*genus - boundary`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub genus: usize,
    pub boundary: usize,
    pub euler: i64,
}

impl SurfaceInvariants {
    pub fn new(genus: usize, boundary: usize) -> Self {
        SurfaceInvariants {
            genus,
            boundary,
            euler: 2 - 2 * genus as i64 - boundary as i64,
        }
    }
}

/// A ribbon graph: a fixed-point-free involution pairing half-edges into
/// edges, and a rotation permutation whose cycles are the vertices (the
/// counterclockwise cyclic order of half-edges at each vertex).
#[derive(Debug, Clone)]
pub struct RibbonGraph {
    labels: Vec<String>,
    pairing: Vec<usize>,
    rotation: Vec<usize>,
    vertex_of: Vec<usize>,
    vertex_labels: Vec<String>,
}

impl RibbonGraph {
    /// Builds a ribbon graph from per-vertex rotations (cyclically ordered
    /// half-edge labels) and the list of half-edge pairs forming edges.
    pub fn from_rotations(
        vertices: Vec<(String, Vec<String>)>,
        pairs: Vec<(String, String)>,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidStructure("ribbon graph needs a vertex".to_string()));
        }
        let mut labels = Vec::new();
        let mut index = std::collections::HashMap::new();
        for (_, cycle) in &vertices {
            for label in cycle {
                if index.contains_key(label) {
                    return Err(Error::DuplicateLabel(label.clone()));
                }
                index.insert(label.clone(), labels.len());
                labels.push(label.clone());
            }
        }
        let half = labels.len();
        let mut rotation = vec![usize::MAX; half];
        let mut vertex_of = vec![usize::MAX; half];
        let mut vertex_labels = Vec::with_capacity(vertices.len());
        for (v, (name, cycle)) in vertices.iter().enumerate() {
            if cycle.is_empty() {
                return Err(Error::InvalidStructure(format!(
                    "vertex {name} has no half-edges"
                )));
            }
            for (pos, label) in cycle.iter().enumerate() {
                let h = index[label];
                let next = index[&cycle[(pos + 1) % cycle.len()]];
                rotation[h] = next;
                vertex_of[h] = v;
            }
            vertex_labels.push(name.clone());
        }
        let mut pairing = vec![usize::MAX; half];
        for (a, b) in &pairs {
            let ha = *index.get(a).ok_or_else(|| Error::UnknownEdge(a.clone()))?;
            let hb = *index.get(b).ok_or_else(|| Error::UnknownEdge(b.clone()))?;
            if ha == hb {
                return Err(Error::InvalidStructure(format!(
                    "half-edge {a} paired with itself"
                )));
            }
            if pairing[ha] != usize::MAX || pairing[hb] != usize::MAX {
                return Err(Error::InvalidStructure(format!(
                    "half-edge {a} or {b} paired twice"
                )));
            }
            pairing[ha] = hb;
            pairing[hb] = ha;
        }
        if pairing.contains(&usize::MAX) {
            return Err(Error::InvalidStructure("unpaired half-edge".to_string()));
        }
        Ok(RibbonGraph {
            labels,
            pairing,
            rotation,
            vertex_of,
            vertex_labels,
        })
    }

    pub fn half_edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn half_edge_label(&self, h: usize) -> &str {
        &self.labels[h]
    }

    pub fn half_edge_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertex_labels[v]
    }

    pub fn pairing(&self, h: usize) -> usize {
        self.pairing[h]
    }

    pub fn rotation(&self, h: usize) -> usize {
        self.rotation[h]
    }

    /// The face permutation `h -> rotation(pairing(h))` whose orbits are the
    /// boundary components of the thickened surface.
    pub fn face_next(&self, h: usize) -> usize {
        self.rotation[self.pairing[h]]
    }

    /// Face cycles as half-edge indices; each half-edge lies in exactly one
    /// face and the lengths sum to the half-edge count. Cycles start at
    /// their smallest half-edge and are listed in that order.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.labels.len()];
        let mut faces = Vec::new();
        for start in 0..self.labels.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = start;
            loop {
                seen[h] = true;
                cycle.push(h);
                h = self.face_next(h);
                if h == start {
                    break;
                }
            }
            faces.push(cycle);
        }
        faces
    }

    /// Face cycles as label lists, for reports.
    pub fn face_labels(&self) -> Vec<Vec<String>> {
        self.faces()
            .into_iter()
            .map(|cycle| cycle.into_iter().map(|h| self.labels[h].clone()).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for h in 0..self.labels.len() {
                if self.vertex_of[h] == v {
                    let w = self.vertex_of[self.pairing[h]];
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Surface invariants of the thickened surface: `euler = V - E`,
    /// `boundary` = face count, genus from `euler = 2 - 2g - b`.
    /// Disconnected graphs are rejected; use [`Self::component_invariants`].
    pub fn surface_invariants(&self) -> Result<SurfaceInvariants> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(invariants_from_counts(
            self.vertex_count(),
            self.edge_count(),
            self.faces().len(),
        ))
    }

    /// Invariants of each connected component, ordered by smallest vertex.
    pub fn component_invariants(&self) -> Vec<SurfaceInvariants> {
        let mut component = vec![usize::MAX; self.vertex_count()];
        let mut count = 0;
        for v0 in 0..self.vertex_count() {
            if component[v0] != usize::MAX {
                continue;
            }
            let mut stack = vec![v0];
            component[v0] = count;
            while let Some(v) = stack.pop() {
                for h in 0..self.labels.len() {
                    if self.vertex_of[h] == v {
                        let w = self.vertex_of[self.pairing[h]];
                        if component[w] == usize::MAX {
                            component[w] = count;
                            stack.push(w);
                        }
                    }
                }
            }
            count += 1;
        }
        let mut vertices = vec![0usize; count];
        let mut edges = vec![0usize; count];
        let mut faces = vec![0usize; count];
        for &c in &component {
            vertices[c] += 1;
        }
        for h in 0..self.labels.len() {
            if h < self.pairing[h] {
                edges[component[self.vertex_of[h]]] += 1;
            }
        }
        for face in self.faces() {
            faces[component[self.vertex_of[face[0]]]] += 1;
        }
        (0..count)
            .map(|c| invariants_from_counts(vertices[c], edges[c], faces[c]))
            .collect()
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    /// The rotation cycles with their vertex names, suitable for feeding
    /// back into [`Self::from_rotations`].
    pub fn vertex_rotations(&self) -> Vec<(String, Vec<String>)> {
        let mut out = Vec::with_capacity(self.vertex_count());
        for v in 0..self.vertex_count() {
            let start = (0..self.labels.len())
                .find(|&h| self.vertex_of[h] == v)
                .unwrap();
            let mut cycle = Vec::new();
            let mut h = start;
            loop {
                cycle.push(self.labels[h].clone());
                h = self.rotation[h];
                if h == start {
                    break;
                }
            }
            out.push((self.vertex_labels[v].clone(), cycle));
        }
        out
    }

    /// The half-edge pairs forming the edges.
    pub fn edge_pairs(&self) -> Vec<(String, String)> {
        (0..self.labels.len())
            .filter(|&h| h < self.pairing[h])
            .map(|h| (self.labels[h].clone(), self.labels[self.pairing[h]].clone()))
            .collect()
    }

    /// True iff `perm` (a permutation of half-edge indices) preserves both
    /// the pairing and the rotation.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.labels.len() {
            return false;
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        (0..perm.len()).all(|h| {
            perm[self.pairing[h]] == self.pairing[perm[h]]
                && perm[self.rotation[h]] == self.rotation[perm[h]]
        })
    }
}

fn invariants_from_counts(vertices: usize, edges: usize, faces: usize) -> SurfaceInvariants {
    let euler = vertices as i64 - edges as i64;
    let closed_up = euler + faces as i64;
    assert!(
        closed_up <= 2 && closed_up % 2 == 0,
        "invalid ribbon data: chi + F = {closed_up}"
    );
    let genus = ((2 - faces as i64 - euler) / 2) as usize;
    SurfaceInvariants {
        genus,
        boundary: faces,
        euler,
    }
}

fn plus(i: usize, j: usize) -> String {
    format!("e[{i}][{j}]+")
}

fn minus(i: usize, j: usize) -> String {
    format!("e[{i}][{j}]-")
}

/// The ribbon graph of the `d`-fold cover branched over `n` points:
/// vertices `p[1]..p[n]`, edges `e[i][j]` (`1 <= i <= n-1`) between `p[i]`
/// and `p[i+1]`, where `e[i][j]-` is the half incident to `p[i]` and
/// `e[i][j]+` the half incident to `p[i+1]`.
///
/// Rotations: at `p[1]` the halves of `e[1][.]` in sheet order, at `p[n]`
/// the halves of `e[n-1][.]` in sheet order, and at interior `p[i]` the
/// interleaving `(e[i-1][1], e[i][1], e[i-1][2], e[i][2], ...)`, each entry
/// taken as the half actually incident to `p[i]`.
pub fn build_cover_ribbon(n: usize, d: usize) -> Result<RibbonGraph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "cover ribbon needs n >= 2, got {n}"
        )));
    }
    if d < 1 {
        return Err(Error::InvalidParameter(
            "cover ribbon needs d >= 1".to_string(),
        ));
    }
    let mut vertices = Vec::with_capacity(n);
    vertices.push((
        "p[1]".to_string(),
        (1..=d).map(|j| minus(1, j)).collect::<Vec<_>>(),
    ));
    for i in 2..n {
        let mut cycle = Vec::with_capacity(2 * d);
        for j in 1..=d {
            cycle.push(plus(i - 1, j));
            cycle.push(minus(i, j));
        }
        vertices.push((format!("p[{i}]"), cycle));
    }
    if n >= 2 {
        vertices.push((format!("p[{n}]"), (1..=d).map(|j| plus(n - 1, j)).collect()));
    }
    let mut pairs = Vec::with_capacity((n - 1) * d);
    for i in 1..n {
        for j in 1..=d {
            pairs.push((minus(i, j), plus(i, j)));
        }
    }
    RibbonGraph::from_rotations(vertices, pairs)
}

/// The sheet-shift relabeling `e[i][j] -> e[i][j+1]` as a permutation of the
/// half-edges of [`build_cover_ribbon`]; an automorphism of the ribbon
/// structure.
pub fn cover_sheet_shift(ribbon: &RibbonGraph, n: usize, d: usize) -> Vec<usize> {
    let mut perm = vec![0usize; ribbon.half_edge_count()];
    for i in 1..n {
        for j in 1..=d {
            let next = j % d + 1;
            let from_minus = ribbon.half_edge_index(&minus(i, j)).unwrap();
            let to_minus = ribbon.half_edge_index(&minus(i, next)).unwrap();
            perm[from_minus] = to_minus;
            let from_plus = ribbon.half_edge_index(&plus(i, j)).unwrap();
            let to_plus = ribbon.half_edge_index(&plus(i, next)).unwrap();
            perm[from_plus] = to_plus;
        }
    }
    perm
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cover_ribbon_counts() {
        let r = build_cover_ribbon(3, 2).unwrap();
        assert_eq!(r.vertex_count(), 3);
        assert_eq!(r.edge_count(), 4);
        assert_eq!(r.half_edge_count(), 8);

        let r = build_cover_ribbon(2, 5).unwrap();
        assert_eq!(r.vertex_count(), 2);
        assert_eq!(r.edge_count(), 5);

        assert!(build_cover_ribbon(1, 2).is_err());
        assert!(build_cover_ribbon(2, 0).is_err());
    }

    #[test]
    fn interior_rotation_length() {
        let r = build_cover_ribbon(4, 3).unwrap();
        // vertex p[2] is interior: 2d = 6 half-edges in its rotation cycle
        let start = r.half_edge_index("e[1][1]+").unwrap();
        let mut len = 1;
        let mut h = r.rotation(start);
        while h != start {
            len += 1;
            h = r.rotation(h);
        }
        assert_eq!(len, 6);
    }

    #[test]
    fn face_counts_match_gcd() {
        // bigon: two faces; (n=2, d=5): a single face of length 10; (3,2): one face
        assert_eq!(build_cover_ribbon(2, 2).unwrap().faces().len(), 2);
        let faces = build_cover_ribbon(2, 5).unwrap().faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 10);
        assert_eq!(build_cover_ribbon(3, 2).unwrap().faces().len(), 1);
    }

    #[test]
    fn faces_partition_half_edges() {
        for (n, d) in [(2, 2), (3, 4), (5, 3), (6, 6)] {
            let r = build_cover_ribbon(n, d).unwrap();
            let faces = r.faces();
            let total: usize = faces.iter().map(|f| f.len()).sum();
            assert_eq!(total, r.half_edge_count());
            let mut seen = vec![false; r.half_edge_count()];
            for f in &faces {
                for &h in f {
                    assert!(!seen[h]);
                    seen[h] = true;
                }
            }
        }
    }

    #[test]
    fn surface_invariants_spot_values() {
        let inv = build_cover_ribbon(3, 2)
            .unwrap()
            .surface_invariants()
            .unwrap();
        assert_eq!(
            inv,
            SurfaceInvariants {
                genus: 1,
                boundary: 1,
                euler: -1
            }
        );

        let inv = build_cover_ribbon(2, 2)
            .unwrap()
            .surface_invariants()
            .unwrap();
        assert_eq!(
            inv,
            SurfaceInvariants {
                genus: 0,
                boundary: 2,
                euler: 0
            }
        );

        let inv = build_cover_ribbon(3, 3)
            .unwrap()
            .surface_invariants()
            .unwrap();
        assert_eq!(
            inv,
            SurfaceInvariants {
                genus: 1,
                boundary: 3,
                euler: -3
            }
        );
    }

    #[test]
    fn sheet_shift_is_automorphism() {
        for (n, d) in [(2, 3), (3, 2), (4, 4), (5, 6)] {
            let r = build_cover_ribbon(n, d).unwrap();
            let perm = cover_sheet_shift(&r, n, d);
            assert!(
                r.is_automorphism(&perm),
                "sheet shift not an automorphism for ({n},{d})"
            );
        }
    }

    #[test]
    fn reversed_rotations_preserve_invariants() {
        for (n, d) in [(2, 4), (3, 3), (4, 2)] {
            let forward = build_cover_ribbon(n, d).unwrap();
            let vertices = forward
                .vertex_rotations()
                .into_iter()
                .map(|(name, mut cycle)| {
                    cycle.reverse();
                    (name, cycle)
                })
                .collect();
            let reversed = RibbonGraph::from_rotations(vertices, forward.edge_pairs()).unwrap();
            assert_eq!(
                reversed.surface_invariants().unwrap(),
                forward.surface_invariants().unwrap()
            );
        }
    }

    #[test]
    fn disconnected_graph_rejected() {
        let vertices = vec![
            ("u".to_string(), vec!["a-".to_string(), "b-".to_string()]),
            ("v".to_string(), vec!["a+".to_string(), "b+".to_string()]),
            ("w".to_string(), vec!["c-".to_string()]),
            ("x".to_string(), vec!["c+".to_string()]),
        ];
        let pairs = vec![
            ("a-".to_string(), "a+".to_string()),
            ("b-".to_string(), "b+".to_string()),
            ("c-".to_string(), "c+".to_string()),
        ];
        let r = RibbonGraph::from_rotations(vertices, pairs).unwrap();
        assert!(matches!(r.surface_invariants(), Err(Error::Disconnected)));
        let components = r.component_invariants();
        assert_eq!(components.len(), 2);
        assert_eq!(components[0], SurfaceInvariants::new(0, 2));
        assert_eq!(components[1], SurfaceInvariants::new(0, 1));
    }
}
