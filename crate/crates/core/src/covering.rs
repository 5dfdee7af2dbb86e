//! The disk chain groupoid, its cyclic branched covers, half twists and
//! their lifts, deck transformations, the covering projection, and the
//! relation-verification sweeps.
//!
//! The base groupoid is a path graph, hence a tree: all of its hom-sets are
//! singletons and functor equality there is vacuous. Relation checks are
//! therefore only meaningful on covers with `d >= 2`, where parallel edges
//! make reduced words separate functors.

use std::sync::Arc;

use serde_json::json;

use crate::braid::{braid_relators, evaluate_braid, BraidLetter, BraidWord, TwistAssignment};
use crate::error::{Error, Result};
use crate::groupoid::{
    EdgeId, FreeGroupoid, FunctorDifference, GroupoidFunctor, GroupoidMorphism, Letter, ObjectId,
    PathWord,
};
use crate::report::{ReportBuilder, VerificationReport};

/// The disk with `n` marked points, as a free groupoid on the path graph
/// `p[0] -e[0]-> p[1] -e[1]-> ... -e[n]-> p[n+1]`.
#[derive(Debug, Clone)]
pub struct DiskChainGroupoid {
    n: usize,
    groupoid: Arc<FreeGroupoid>,
}

impl DiskChainGroupoid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "disk chain needs n >= 2, got {n}"
            )));
        }
        let objects: Vec<String> = (0..=n + 1).map(|i| format!("p[{i}]")).collect();
        let edges: Vec<(String, String, String)> = (0..=n)
            .map(|i| {
                (
                    format!("e[{i}]"),
                    format!("p[{i}]"),
                    format!("p[{}]", i + 1),
                )
            })
            .collect();
        Ok(DiskChainGroupoid {
            n,
            groupoid: Arc::new(FreeGroupoid::new(objects, edges)?),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn groupoid(&self) -> &Arc<FreeGroupoid> {
        &self.groupoid
    }

    /// Object `p[i]`, `0 <= i <= n+1`.
    pub fn point(&self, i: usize) -> ObjectId {
        ObjectId(i)
    }

    /// Edge `e[i]: p[i] -> p[i+1]`, `0 <= i <= n`.
    pub fn edge(&self, i: usize) -> EdgeId {
        EdgeId(i)
    }

    /// The half twist interchanging `p[i]` and `p[i+1]`:
    /// `e[i-1] -> e[i-1].e[i]`, `e[i] -> e[i]^-1`, `e[i+1] -> e[i].e[i+1]`,
    /// everything else fixed.
    pub fn half_twist(&self, i: usize) -> Result<GroupoidFunctor> {
        if i < 1 || i > self.n - 1 {
            return Err(Error::InvalidParameter(format!(
                "half twist index {i} out of range 1..={}",
                self.n - 1
            )));
        }
        let g = &self.groupoid;
        let mut object_map: Vec<ObjectId> = g.object_ids().collect();
        object_map.swap(self.point(i).0, self.point(i + 1).0);
        let mut edge_map: Vec<PathWord> = g.edge_ids().map(|e| g.edge_path(e)).collect();
        edge_map[self.edge(i - 1).0] = g.reduce_path(&[
            Letter::forward(self.edge(i - 1)),
            Letter::forward(self.edge(i)),
        ])?;
        edge_map[self.edge(i).0] = g.reduce_path(&[Letter::inverse(self.edge(i))])?;
        edge_map[self.edge(i + 1).0] = g.reduce_path(&[
            Letter::forward(self.edge(i)),
            Letter::forward(self.edge(i + 1)),
        ])?;
        GroupoidFunctor::new(g.clone(), object_map, edge_map)
    }
}

/// The cyclic `d`-fold branched cover of the disk chain: branch points
/// `p[1]..p[n]`, fiber objects `q[0][j]` and `q[n+1][j]` over the boundary
/// points, and edges `e[i][j]` over `e[i]`, with sheet indices read
/// 1-based modulo `d`.
#[derive(Debug, Clone)]
pub struct CoverGroupoid {
    n: usize,
    d: usize,
    groupoid: Arc<FreeGroupoid>,
}

impl CoverGroupoid {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "cover needs n >= 2, got {n}"
            )));
        }
        if d < 1 {
            return Err(Error::InvalidParameter("cover needs d >= 1".to_string()));
        }
        let mut objects: Vec<String> = (1..=n).map(|i| format!("p[{i}]")).collect();
        objects.extend((1..=d).map(|j| format!("q[0][{j}]")));
        objects.extend((1..=d).map(|j| format!("q[{}][{j}]", n + 1)));
        let mut edges: Vec<(String, String, String)> = Vec::with_capacity((n + 1) * d);
        for i in 0..=n {
            for j in 1..=d {
                let label = format!("e[{i}][{j}]");
                let (source, target) = if i == 0 {
                    (format!("q[0][{j}]"), "p[1]".to_string())
                } else if i == n {
                    (format!("p[{n}]"), format!("q[{}][{j}]", n + 1))
                } else {
                    (format!("p[{i}]"), format!("p[{}]", i + 1))
                };
                edges.push((label, source, target));
            }
        }
        Ok(CoverGroupoid {
            n,
            d,
            groupoid: Arc::new(FreeGroupoid::new(objects, edges)?),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn groupoid(&self) -> &Arc<FreeGroupoid> {
        &self.groupoid
    }

    /// Branch point `p[i]`, `1 <= i <= n`.
    pub fn branch_point(&self, i: usize) -> ObjectId {
        ObjectId(i - 1)
    }

    /// Fiber object `q[0][j]` over `p[0]`.
    pub fn fiber_start(&self, j: usize) -> ObjectId {
        ObjectId(self.n + j - 1)
    }

    /// Fiber object `q[n+1][j]` over `p[n+1]`.
    pub fn fiber_end(&self, j: usize) -> ObjectId {
        ObjectId(self.n + self.d + j - 1)
    }

    /// Edge `e[i][j]`, `0 <= i <= n`, `1 <= j <= d`.
    pub fn edge(&self, i: usize, j: usize) -> EdgeId {
        debug_assert!(i <= self.n && (1..=self.d).contains(&j));
        EdgeId(i * self.d + (j - 1))
    }

    /// 1-based sheet arithmetic: `wrap_sheet(d + 1) == 1`.
    pub fn wrap_sheet(&self, j: i64) -> usize {
        ((j - 1).rem_euclid(self.d as i64) + 1) as usize
    }

    fn twist_index_check(&self, i: usize) -> Result<()> {
        if i < 1 || i > self.n - 1 {
            return Err(Error::InvalidParameter(format!(
                "twist index {i} out of range 1..={}",
                self.n - 1
            )));
        }
        Ok(())
    }

    /// The lift of the half twist interchanging `p[i]` and `p[i+1]`:
    /// `e[i-1][j] -> e[i-1][j].e[i][j+1]`, `e[i][j] -> e[i][j+1]^-1`,
    /// `e[i+1][j] -> e[i][j].e[i+1][j]`, all other objects and edges fixed.
    pub fn lifted_twist(&self, i: usize) -> Result<GroupoidFunctor> {
        self.twist_index_check(i)?;
        let g = &self.groupoid;
        let mut object_map: Vec<ObjectId> = g.object_ids().collect();
        object_map.swap(self.branch_point(i).0, self.branch_point(i + 1).0);
        let mut edge_map: Vec<PathWord> = g.edge_ids().map(|e| g.edge_path(e)).collect();
        for j in 1..=self.d {
            let succ = self.wrap_sheet(j as i64 + 1);
            edge_map[self.edge(i - 1, j).0] = g.reduce_path(&[
                Letter::forward(self.edge(i - 1, j)),
                Letter::forward(self.edge(i, succ)),
            ])?;
            edge_map[self.edge(i, j).0] = g.reduce_path(&[Letter::inverse(self.edge(i, succ))])?;
            edge_map[self.edge(i + 1, j).0] = g.reduce_path(&[
                Letter::forward(self.edge(i, j)),
                Letter::forward(self.edge(i + 1, j)),
            ])?;
        }
        GroupoidFunctor::new(g.clone(), object_map, edge_map)
    }

    /// The inverse lift: `e[i-1][j] -> e[i-1][j].e[i][j]`,
    /// `e[i][j] -> e[i][j-1]^-1`, `e[i+1][j] -> e[i][j-1].e[i+1][j]`.
    pub fn lifted_twist_inverse(&self, i: usize) -> Result<GroupoidFunctor> {
        self.twist_index_check(i)?;
        let g = &self.groupoid;
        let mut object_map: Vec<ObjectId> = g.object_ids().collect();
        object_map.swap(self.branch_point(i).0, self.branch_point(i + 1).0);
        let mut edge_map: Vec<PathWord> = g.edge_ids().map(|e| g.edge_path(e)).collect();
        for j in 1..=self.d {
            let pred = self.wrap_sheet(j as i64 - 1);
            edge_map[self.edge(i - 1, j).0] = g.reduce_path(&[
                Letter::forward(self.edge(i - 1, j)),
                Letter::forward(self.edge(i, j)),
            ])?;
            edge_map[self.edge(i, j).0] = g.reduce_path(&[Letter::inverse(self.edge(i, pred))])?;
            edge_map[self.edge(i + 1, j).0] = g.reduce_path(&[
                Letter::forward(self.edge(i, pred)),
                Letter::forward(self.edge(i + 1, j)),
            ])?;
        }
        GroupoidFunctor::new(g.clone(), object_map, edge_map)
    }

    /// Generator assignment `b_i -> lifted twist i` with validated inverses.
    pub fn twist_assignment(&self) -> Result<TwistAssignment> {
        let pairs = (1..self.n)
            .map(|i| Ok((self.lifted_twist(i)?, self.lifted_twist_inverse(i)?)))
            .collect::<Result<Vec<_>>>()?;
        TwistAssignment::new(pairs)
    }

    /// The deck transformation shifting all sheet indices by `s`:
    /// `e[i][j] -> e[i][j+s]`, `q[.][j] -> q[.][j+s]`, branch points fixed.
    pub fn deck(&self, s: usize) -> Result<GroupoidFunctor> {
        if s >= self.d {
            return Err(Error::InvalidParameter(format!(
                "deck shift {s} out of range 0..{}",
                self.d
            )));
        }
        let g = &self.groupoid;
        let mut object_map: Vec<ObjectId> = g.object_ids().collect();
        let mut edge_map: Vec<PathWord> = Vec::with_capacity(g.edge_count());
        for j in 1..=self.d {
            let shifted = self.wrap_sheet((j + s) as i64);
            object_map[self.fiber_start(j).0] = self.fiber_start(shifted);
            object_map[self.fiber_end(j).0] = self.fiber_end(shifted);
        }
        for i in 0..=self.n {
            for j in 1..=self.d {
                let shifted = self.wrap_sheet((j + s) as i64);
                edge_map.push(g.reduce_path(&[Letter::forward(self.edge(i, shifted))])?);
            }
        }
        GroupoidFunctor::new(g.clone(), object_map, edge_map)
    }

    /// A relabeling from the signed-edge-permutation family: independent
    /// sheet permutations per level (`perms[i][j-1]` is the 1-based image of
    /// sheet `j` at level `i`), optionally composed with the end-to-end
    /// chain flip `e[i][j] -> e[n-i][j']^-1`.
    pub fn sheet_relabeling(&self, perms: &[Vec<usize>], flip: bool) -> Result<GroupoidFunctor> {
        if perms.len() != self.n + 1 {
            return Err(Error::InvalidParameter(format!(
                "need one sheet permutation per level 0..={}, got {}",
                self.n,
                perms.len()
            )));
        }
        for perm in perms {
            let mut seen = vec![false; self.d];
            if perm.len() != self.d
                || perm.iter().any(|&j| {
                    if j < 1 || j > self.d || seen[j - 1] {
                        true
                    } else {
                        seen[j - 1] = true;
                        false
                    }
                })
            {
                return Err(Error::InvalidParameter(
                    "each level needs a permutation of 1..=d".to_string(),
                ));
            }
        }
        let g = &self.groupoid;
        let mut object_map: Vec<ObjectId> = g.object_ids().collect();
        for j in 1..=self.d {
            if flip {
                object_map[self.fiber_start(j).0] = self.fiber_end(perms[0][j - 1]);
                object_map[self.fiber_end(j).0] = self.fiber_start(perms[self.n][j - 1]);
            } else {
                object_map[self.fiber_start(j).0] = self.fiber_start(perms[0][j - 1]);
                object_map[self.fiber_end(j).0] = self.fiber_end(perms[self.n][j - 1]);
            }
        }
        if flip {
            for i in 1..=self.n {
                object_map[self.branch_point(i).0] = self.branch_point(self.n + 1 - i);
            }
        }
        let mut edge_map = Vec::with_capacity(g.edge_count());
        for (i, perm) in perms.iter().enumerate() {
            for &image in perm {
                let letter = if flip {
                    Letter::inverse(self.edge(self.n - i, image))
                } else {
                    Letter::forward(self.edge(i, image))
                };
                edge_map.push(g.reduce_path(&[letter])?);
            }
        }
        GroupoidFunctor::new(g.clone(), object_map, edge_map)
    }

    /// The covering projection onto the disk chain: `p[i] -> p[i]`,
    /// `q[0][j] -> p[0]`, `q[n+1][j] -> p[n+1]`, `e[i][j] -> e[i]`,
    /// extended to words letterwise.
    pub fn projection(&self, base: &DiskChainGroupoid) -> Result<GroupoidMorphism> {
        if base.n() != self.n {
            return Err(Error::InvalidParameter(format!(
                "projection target has {} branch points, cover has {}",
                base.n(),
                self.n
            )));
        }
        let g = &self.groupoid;
        let mut object_map = vec![ObjectId(0); g.object_count()];
        for i in 1..=self.n {
            object_map[self.branch_point(i).0] = base.point(i);
        }
        for j in 1..=self.d {
            object_map[self.fiber_start(j).0] = base.point(0);
            object_map[self.fiber_end(j).0] = base.point(self.n + 1);
        }
        let mut edge_map = vec![base.groupoid().identity_path(ObjectId(0)); g.edge_count()];
        for i in 0..=self.n {
            for j in 1..=self.d {
                edge_map[self.edge(i, j).0] = base.groupoid().edge_path(base.edge(i));
            }
        }
        GroupoidMorphism::new(g.clone(), base.groupoid().clone(), object_map, edge_map)
    }
}

fn describe_difference(g: &FreeGroupoid, diff: &FunctorDifference) -> serde_json::Value {
    match diff {
        FunctorDifference::Object {
            object,
            left,
            right,
        } => json!({
            "object": g.object_label(*object),
            "left": g.object_label(*left),
            "right": g.object_label(*right),
        }),
        FunctorDifference::Edge { edge, left, right } => json!({
            "edge": g.edge_label(*edge),
            "left": g.render_word(left),
            "right": g.render_word(right),
        }),
    }
}

fn identity_witness(g: &FreeGroupoid, f: &GroupoidFunctor) -> serde_json::Value {
    let identity = GroupoidFunctor::identity(f.domain().clone());
    match f.difference_witness(&identity).expect("same domain") {
        Some(diff) => describe_difference(g, &diff),
        None => json!("functor equals the identity"),
    }
}

/// Options for [`verify_relations`].
#[derive(Debug, Clone, Copy)]
pub struct RelationOptions {
    /// Largest power checked for nontriviality of each lifted twist.
    pub max_power: usize,
}

impl Default for RelationOptions {
    fn default() -> Self {
        RelationOptions { max_power: 12 }
    }
}

/// Verifies, on the cover with `n` branch points and `d` sheets:
/// every braid and commutation relator evaluates to the identity functor,
/// no lifted twist power up to `max_power` is the identity, deck
/// transformations commute with the lifts, and the projection intertwines
/// lifts with base half twists.
///
/// For `d = 1` the cover is a tree and the relator and nontriviality checks
/// are vacuous; they are reported as skipped.
pub fn verify_relations(
    n: usize,
    d: usize,
    options: RelationOptions,
) -> Result<VerificationReport> {
    let cover = CoverGroupoid::new(n, d)?;
    let g = cover.groupoid().clone();
    let mut report = ReportBuilder::new("relations");
    report
        .parameter("n", n as u64)
        .parameter("d", d as u64)
        .parameter("max_power", options.max_power as u64);

    let assignment = cover.twist_assignment()?;
    let relators = braid_relators(n)?;

    if d >= 2 {
        for relator in &relators {
            let evaluated = evaluate_braid(relator, &assignment)?;
            let name = format!("relator[{}]", relator.render());
            report.verdict(
                name,
                evaluated.is_identity(),
                identity_witness(&g, &evaluated),
            );
        }
        for i in 1..n {
            let twist = cover.lifted_twist(i)?;
            let mut power = twist.clone();
            for m in 1..=options.max_power {
                let name = format!("nontrivial[b{i},m={m}]");
                if power.is_identity() {
                    report.fail(name, json!(format!("b{i}^{m} is the identity functor")));
                } else {
                    report.pass_with(name, identity_witness(&g, &power));
                }
                power = twist.after(&power)?;
            }
        }
    } else {
        for relator in &relators {
            report.skip(format!("relator[{}]", relator.render()));
        }
        for i in 1..n {
            for m in 1..=options.max_power {
                report.skip(format!("nontrivial[b{i},m={m}]"));
            }
        }
    }

    for s in 0..d {
        let deck = cover.deck(s)?;
        for i in 1..n {
            let twist = cover.lifted_twist(i)?;
            let left = deck.after(&twist)?;
            let right = twist.after(&deck)?;
            let name = format!("deck_equivariance[s={s},b{i}]");
            let witness = match left.difference_witness(&right)? {
                Some(diff) => describe_difference(&g, &diff),
                None => json!(null),
            };
            report.verdict(name, left.equals(&right)?, witness);
        }
    }

    let base = DiskChainGroupoid::new(n)?;
    let projection = cover.projection(&base)?;
    for i in 1..n {
        let lifted = cover.lifted_twist(i)?;
        let half = base.half_twist(i)?;
        let mut mismatch = None;
        for o in g.object_ids() {
            let down_then_twist = half.apply_object(projection.apply_object(o));
            let twist_then_down = projection.apply_object(lifted.apply_object(o));
            if down_then_twist != twist_then_down {
                mismatch = Some(json!({
                    "object": g.object_label(o),
                    "projection_of_lift": base.groupoid().object_label(twist_then_down),
                    "twist_of_projection": base.groupoid().object_label(down_then_twist),
                }));
                break;
            }
        }
        if mismatch.is_none() {
            for e in g.edge_ids() {
                let down_then_twist = half.apply_word(projection.edge_image(e));
                let twist_then_down = projection.apply_word(lifted.edge_image(e));
                if down_then_twist != twist_then_down {
                    mismatch = Some(json!({
                        "edge": g.edge_label(e),
                        "projection_of_lift": base.groupoid().render_word(&twist_then_down),
                        "twist_of_projection": base.groupoid().render_word(&down_then_twist),
                    }));
                    break;
                }
            }
        }
        let name = format!("projection_equivariance[b{i}]");
        match mismatch {
            Some(witness) => {
                report.fail(name, witness);
            }
            None => {
                report.pass(name);
            }
        }
    }

    Ok(report.build())
}

/// Checks that cubes of the lifted twists violate the braid relation on the
/// three-branch-point cover while the first powers satisfy it:
/// `eval(b1^3.b2^3.b1^3) != eval(b2^3.b1^3.b2^3)` with a witness generator,
/// and `eval(b1.b2.b1) == eval(b2.b1.b2)` as the control.
pub fn verify_cube_failure(d: usize) -> Result<VerificationReport> {
    let n = 3;
    let cover = CoverGroupoid::new(n, d)?;
    let g = cover.groupoid().clone();
    let assignment = cover.twist_assignment()?;
    let mut report = ReportBuilder::new("cube");
    report.parameter("n", n as u64).parameter("d", d as u64);

    let b1 = BraidWord::generator(n, 1)?;
    let b2 = BraidWord::generator(n, 2)?;
    let cube_left = b1.power(3).concat(&b2.power(3))?.concat(&b1.power(3))?;
    let cube_right = b2.power(3).concat(&b1.power(3))?.concat(&b2.power(3))?;
    let left = evaluate_braid(&cube_left, &assignment)?;
    let right = evaluate_braid(&cube_right, &assignment)?;
    match left.difference_witness(&right)? {
        Some(diff) => {
            report.pass_with("cube_relation_fails", describe_difference(&g, &diff));
        }
        None => {
            report.fail(
                "cube_relation_fails",
                json!("eval(b1^3.b2^3.b1^3) and eval(b2^3.b1^3.b2^3) agree on every generator"),
            );
        }
    }

    let control_left = evaluate_braid(
        &BraidWord::new(
            n,
            vec![
                BraidLetter::positive(1),
                BraidLetter::positive(2),
                BraidLetter::positive(1),
            ],
        )?,
        &assignment,
    )?;
    let control_right = evaluate_braid(
        &BraidWord::new(
            n,
            vec![
                BraidLetter::positive(2),
                BraidLetter::positive(1),
                BraidLetter::positive(2),
            ],
        )?,
        &assignment,
    )?;
    let witness = match control_left.difference_witness(&control_right)? {
        Some(diff) => describe_difference(&g, &diff),
        None => json!(null),
    };
    report.verdict(
        "first_power_control",
        control_left.equals(&control_right)?,
        witness,
    );

    Ok(report.build())
}
