//! Posets from the rewrite relation, lattice tests, the Tamari lattice
//! and the tree-gluing construction.
//!
//! Poset elements are canonical codes, which keeps the engine generic
//! over prographs and binary trees. The order is the reachability
//! closure of the one-step relation; covers are its transitive
//! reduction. Meets and joins are decided by brute force over the
//! closure, which is fine at desk scale.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::prograph::{enumerate_prographs, OpKind, PEdge, Prograph};
use crate::rewriting::{successors_via, RotationRule};
use crate::stats::BinaryTree;
use crate::{Error, Result};

/// A finite poset over canonical codes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Poset {
    /// Canonical codes, sorted.
    pub elements: Vec<String>,
    /// Human-oriented display labels, aligned with `elements`.
    pub labels: Vec<String>,
    /// Transitively reduced cover pairs, `(upper, lower)` indices.
    pub covers: Vec<(usize, usize)>,
    /// `order[i]` holds the strict down-set of element i as a bitset.
    #[serde(skip)]
    below: Vec<Vec<u64>>,
}

fn bit_get(row: &[u64], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

fn bit_set(row: &mut [u64], j: usize) {
    row[j / 64] |= 1 << (j % 64);
}

impl Poset {
    /// Builds a poset from elements and a one-step "descends to"
    /// relation given as index pairs `(upper, lower)`. Fails when the
    /// relation is cyclic.
    pub fn from_one_step(
        elements: Vec<String>,
        labels: Vec<String>,
        steps: &[(usize, usize)],
    ) -> Result<Poset> {
        let m = elements.len();
        let words = m.div_ceil(64);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut indeg = vec![0usize; m];
        for &(u, v) in steps {
            adj[u].push(v);
            indeg[v] += 1;
        }
        // Topological order (Kahn), also the cycle check.
        let mut queue: Vec<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(m);
        let mut indeg2 = indeg.clone();
        while let Some(v) = queue.pop() {
            topo.push(v);
            for &w in &adj[v] {
                indeg2[w] -= 1;
                if indeg2[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if topo.len() != m {
            return Err(Error::NotAPoset("one-step relation is cyclic".into()));
        }
        // Strict down-sets, in reverse topological order.
        let mut below = vec![vec![0u64; words]; m];
        for &v in topo.iter().rev() {
            let mut row = vec![0u64; words];
            for &w in &adj[v] {
                bit_set(&mut row, w);
                for k in 0..words {
                    row[k] |= below[w][k];
                }
            }
            below[v] = row;
        }
        // Transitive reduction: (u,v) is a cover iff u > v and nothing
        // sits strictly between.
        let mut covers = Vec::new();
        for u in 0..m {
            for v in 0..m {
                if !bit_get(&below[u], v) {
                    continue;
                }
                let mut between = false;
                for k in 0..words {
                    let mid = below[u][k] & {
                        // strict up-set of v is not materialized; test
                        // via below[w] containing v for each candidate w
                        u64::MAX
                    };
                    let mut bits = mid;
                    while bits != 0 {
                        let b = bits.trailing_zeros() as usize;
                        let w = k * 64 + b;
                        bits &= bits - 1;
                        if w != v && bit_get(&below[w], v) {
                            between = true;
                            break;
                        }
                    }
                    if between {
                        break;
                    }
                }
                if !between {
                    covers.push((u, v));
                }
            }
        }
        covers.sort();
        Ok(Poset { elements, labels, covers, below })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Non-strict order: does element `a` dominate element `b`?
    pub fn geq(&self, a: usize, b: usize) -> bool {
        a == b || bit_get(&self.below[a], b)
    }

    /// Rebuilds the closure bitsets after deserialization.
    pub fn rebuild_closure(&mut self) -> Result<()> {
        let rebuilt = Poset::from_one_step(
            self.elements.clone(),
            self.labels.clone(),
            &self.covers,
        )?;
        self.below = rebuilt.below;
        self.covers = rebuilt.covers;
        Ok(())
    }

    fn upper_bounds(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&w| self.geq(w, a) && self.geq(w, b)).collect()
    }

    fn lower_bounds(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&w| self.geq(a, w) && self.geq(b, w)).collect()
    }

    /// Least upper bound, if it exists. A unique minimal upper bound is
    /// not enough; it must sit below every other upper bound.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ub = self.upper_bounds(a, b);
        let minimal: Vec<usize> = ub
            .iter()
            .copied()
            .filter(|&m| ub.iter().all(|&w| w == m || !bit_get(&self.below[m], w)))
            .collect();
        match minimal.as_slice() {
            [m] if ub.iter().all(|&w| self.geq(w, *m)) => Some(*m),
            _ => None,
        }
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lb = self.lower_bounds(a, b);
        let maximal: Vec<usize> = lb
            .iter()
            .copied()
            .filter(|&m| lb.iter().all(|&w| w == m || !bit_get(&self.below[w], m)))
            .collect();
        match maximal.as_slice() {
            [m] if lb.iter().all(|&w| self.geq(*m, w)) => Some(*m),
            _ => None,
        }
    }

    /// Decides lattice-ness; on failure reports a witness pair together
    /// with its minimal upper or maximal lower bounds.
    pub fn lattice_check(&self) -> LatticeCheck {
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.join(a, b).is_none() {
                    let ub = self.upper_bounds(a, b);
                    let minimal: Vec<usize> = ub
                        .iter()
                        .copied()
                        .filter(|&m| ub.iter().all(|&w| w == m || !bit_get(&self.below[m], w)))
                        .collect();
                    return LatticeCheck {
                        is_lattice: false,
                        witness: Some(LatticeWitness {
                            pair: (a, b),
                            missing: BoundKind::Join,
                            common_bounds: ub,
                            extremal_bounds: minimal,
                        }),
                    };
                }
                if self.meet(a, b).is_none() {
                    let lb = self.lower_bounds(a, b);
                    let maximal: Vec<usize> = lb
                        .iter()
                        .copied()
                        .filter(|&m| lb.iter().all(|&w| w == m || !bit_get(&self.below[w], m)))
                        .collect();
                    return LatticeCheck {
                        is_lattice: false,
                        witness: Some(LatticeWitness {
                            pair: (a, b),
                            missing: BoundKind::Meet,
                            common_bounds: lb,
                            extremal_bounds: maximal,
                        }),
                    };
                }
            }
        }
        LatticeCheck { is_lattice: true, witness: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    Join,
    Meet,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeWitness {
    pub pair: (usize, usize),
    pub missing: BoundKind,
    /// All common upper (resp. lower) bounds of the pair.
    pub common_bounds: Vec<usize>,
    /// The minimal upper (resp. maximal lower) bounds among them.
    pub extremal_bounds: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeCheck {
    pub is_lattice: bool,
    pub witness: Option<LatticeWitness>,
}

/// Which prographs participate in a rotation poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Restriction {
    All,
    AvoidsTypeVii,
    CoproductsFirst,
}

impl Restriction {
    fn admits(self, p: &Prograph) -> bool {
        match self {
            Restriction::All => true,
            Restriction::AvoidsTypeVii => p.avoids_type_vii(),
            Restriction::CoproductsFirst => p.coproducts_first().unwrap_or(false),
        }
    }
}

impl std::str::FromStr for Restriction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" | "all" => Ok(Restriction::All),
            "no-type-vii" => Ok(Restriction::AvoidsTypeVii),
            "coproducts-first" => Ok(Restriction::CoproductsFirst),
            other => Err(Error::NotAPoset(format!("unknown restriction {other:?}"))),
        }
    }
}

/// The poset of size-n prographs under the selected rules, restricted to
/// the given subfamily; `x > y` iff `y` is reachable from `x` without
/// leaving the subfamily. Labels are the compact tableau forms.
pub fn build_rotation_poset(
    n: usize,
    rules: &[RotationRule],
    restriction: Restriction,
) -> Result<Poset> {
    build_rotation_poset_opts(n, rules, restriction, false)
}

/// As [`build_rotation_poset`]; with `mirrored` the rules act in the
/// reflected orientation (conjugation by the left-right reflection).
pub fn build_rotation_poset_opts(
    n: usize,
    rules: &[RotationRule],
    restriction: Restriction,
    mirrored: bool,
) -> Result<Poset> {
    let kept: Vec<Prograph> = enumerate_prographs(n)
        .into_iter()
        .filter(|p| restriction.admits(p))
        .collect();
    let mut codes: Vec<String> = Vec::with_capacity(kept.len());
    let mut labels: Vec<String> = Vec::with_capacity(kept.len());
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for p in &kept {
        let code = p.canonical_code()?;
        index.insert(code.clone(), codes.len());
        codes.push(code);
        labels.push(crate::bijection::prograph_to_tableau(p)?.compact());
    }
    let mut steps = Vec::new();
    for (i, p) in kept.iter().enumerate() {
        let images: Vec<Prograph> = if mirrored {
            successors_via(&p.mirror(), rules).iter().map(Prograph::mirror).collect()
        } else {
            successors_via(p, rules)
        };
        for q in images {
            let code = q.canonical_code()?;
            if let Some(&j) = index.get(&code) {
                steps.push((i, j));
            }
            // Images outside the restricted set are dropped: the order
            // is reachability within the induced subgraph.
        }
    }
    Poset::from_one_step(codes, labels, &steps)
}

/// All right rotations `(a ^ b) ^ c -> a ^ (b ^ c)` applicable anywhere
/// in the tree.
pub fn tamari_successors(t: &BinaryTree) -> Vec<BinaryTree> {
    let mut out = Vec::new();
    if let BinaryTree::Node(l, r) = t {
        if let BinaryTree::Node(a, b) = l.as_ref() {
            out.push(BinaryTree::node(
                a.as_ref().clone(),
                BinaryTree::node(b.as_ref().clone(), r.as_ref().clone()),
            ));
        }
        for ls in tamari_successors(l) {
            out.push(BinaryTree::node(ls, r.as_ref().clone()));
        }
        for rs in tamari_successors(r) {
            out.push(BinaryTree::node(l.as_ref().clone(), rs));
        }
    }
    out
}

/// The Tamari lattice on n-node binary trees under oriented rotation,
/// with the right comb at the bottom.
pub fn tamari(n: usize) -> Poset {
    let trees = crate::stats::enumerate_trees(n);
    let codes: Vec<String> = trees.iter().map(|t| t.code()).collect();
    let index: BTreeMap<String, usize> =
        codes.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let mut steps = Vec::new();
    for (i, t) in trees.iter().enumerate() {
        for s in tamari_successors(t) {
            steps.push((i, index[&s.code()]));
        }
    }
    Poset::from_one_step(codes.clone(), codes, &steps).expect("tree rotation is acyclic")
}

/// Glues a coproduct tree (rooted at the global input, growing upward)
/// to a product tree (rooted at the global output, hanging downward),
/// connecting the k-th coproduct leaf to the k-th product leaf in planar
/// left-to-right order. The result avoids type VII edges.
pub fn glue_trees(product_tree: &BinaryTree, coproduct_tree: &BinaryTree) -> Result<Prograph> {
    let n = product_tree.size();
    if n != coproduct_tree.size() {
        return Err(Error::SizeMismatch(format!(
            "product tree has {n} nodes, coproduct tree has {}",
            coproduct_tree.size()
        )));
    }
    if n == 0 {
        return Ok(Prograph::empty());
    }
    let mut kinds = Vec::with_capacity(2 * n);
    let mut edges = Vec::with_capacity(3 * n - 1);

    // Lay down the coproduct tree; leaves become open output ports in
    // left-to-right order.
    let mut cop_leaves: Vec<(usize, u8)> = Vec::with_capacity(n + 1);
    fn build_cop(
        t: &BinaryTree,
        kinds: &mut Vec<OpKind>,
        edges: &mut Vec<PEdge>,
        leaves: &mut Vec<(usize, u8)>,
    ) -> usize {
        let id = kinds.len();
        kinds.push(OpKind::Coproduct);
        let BinaryTree::Node(l, r) = t else { unreachable!("nodes only") };
        for (slot, child) in [(0u8, l.as_ref()), (1u8, r.as_ref())] {
            match child {
                BinaryTree::Leaf => leaves.push((id, slot)),
                node => {
                    let cid = build_cop(node, kinds, edges, leaves);
                    edges.push(PEdge { from: (id, slot), to: (cid, 0) });
                }
            }
        }
        id
    }
    build_cop(coproduct_tree, &mut kinds, &mut edges, &mut cop_leaves);

    // Lay down the product tree; leaves become open input ports.
    let mut prod_leaves: Vec<(usize, u8)> = Vec::with_capacity(n + 1);
    fn build_prod(
        t: &BinaryTree,
        kinds: &mut Vec<OpKind>,
        edges: &mut Vec<PEdge>,
        leaves: &mut Vec<(usize, u8)>,
    ) -> usize {
        let id = kinds.len();
        kinds.push(OpKind::Product);
        let BinaryTree::Node(l, r) = t else { unreachable!("nodes only") };
        for (slot, child) in [(0u8, l.as_ref()), (1u8, r.as_ref())] {
            match child {
                BinaryTree::Leaf => leaves.push((id, slot)),
                node => {
                    let cid = build_prod(node, kinds, edges, leaves);
                    edges.push(PEdge { from: (cid, 0), to: (id, slot) });
                }
            }
        }
        id
    }
    build_prod(product_tree, &mut kinds, &mut edges, &mut prod_leaves);

    debug_assert_eq!(cop_leaves.len(), n + 1);
    debug_assert_eq!(prod_leaves.len(), n + 1);
    for (c, p) in cop_leaves.into_iter().zip(prod_leaves) {
        edges.push(PEdge { from: c, to: p });
    }
    let out = Prograph { n, kinds, edges };
    debug_assert!(out.is_valid());
    Ok(out)
}

/// Recovers the two trees of a glued (type-VII-avoiding) prograph:
/// `(product_tree, coproduct_tree)`.
pub fn split_glued(p: &Prograph) -> Result<(BinaryTree, BinaryTree)> {
    if !p.avoids_type_vii() {
        return Err(Error::InvalidPrograph(
            "prograph has a type VII edge, not a tree gluing".into(),
        ));
    }
    if p.n == 0 {
        return Ok((BinaryTree::Leaf, BinaryTree::Leaf));
    }
    let maps = p
        .port_maps()
        .ok_or_else(|| Error::InvalidPrograph("port structure".into()))?;
    let g_in = p
        .global_input()
        .ok_or_else(|| Error::InvalidPrograph("no global input".into()))?;
    let g_out = p
        .global_output()
        .ok_or_else(|| Error::InvalidPrograph("no global output".into()))?;

    fn cop_tree(p: &Prograph, maps: &crate::prograph::PortMaps, op: usize) -> BinaryTree {
        let child = |slot: usize| {
            let e = maps.out[op][slot].expect("cop output");
            let t = p.edges[e].to.0;
            if p.kinds[t] == OpKind::Coproduct {
                cop_tree(p, maps, t)
            } else {
                BinaryTree::Leaf
            }
        };
        BinaryTree::node(child(0), child(1))
    }
    fn prod_tree(p: &Prograph, maps: &crate::prograph::PortMaps, op: usize) -> BinaryTree {
        let child = |slot: usize| {
            let e = maps.inp[op][slot].expect("prod input");
            let s = p.edges[e].from.0;
            if p.kinds[s] == OpKind::Product {
                prod_tree(p, maps, s)
            } else {
                BinaryTree::Leaf
            }
        };
        BinaryTree::node(child(0), child(1))
    }
    Ok((prod_tree(p, &maps, g_out), cop_tree(p, &maps, g_in)))
}

/// Componentwise order on the Cartesian product. Element codes are
/// `a-code * b-code` joined with `*`.
pub fn product_poset(a: &Poset, b: &Poset) -> Poset {
    let mut elements = Vec::with_capacity(a.len() * b.len());
    let mut labels = Vec::with_capacity(a.len() * b.len());
    for i in 0..a.len() {
        for j in 0..b.len() {
            elements.push(format!("{}*{}", a.elements[i], b.elements[j]));
            labels.push(format!("{}*{}", a.labels[i], b.labels[j]));
        }
    }
    let idx = |i: usize, j: usize| i * b.len() + j;
    let mut steps = Vec::new();
    for &(u, v) in &a.covers {
        for j in 0..b.len() {
            steps.push((idx(u, j), idx(v, j)));
        }
    }
    for &(u, v) in &b.covers {
        for i in 0..a.len() {
            steps.push((idx(i, u), idx(i, v)));
        }
    }
    Poset::from_one_step(elements, labels, &steps).expect("product of posets")
}

/// Order-isomorphism test by backtracking over signature-compatible
/// assignments. Fine for the few hundred elements we meet.
pub fn poset_isomorphic(a: &Poset, b: &Poset) -> bool {
    if a.len() != b.len() || a.covers.len() != b.covers.len() {
        return false;
    }
    let m = a.len();
    let sig = |p: &Poset| -> Vec<(usize, usize, usize, usize)> {
        let mut up = vec![0usize; m];
        let mut down = vec![0usize; m];
        for i in 0..m {
            for j in 0..m {
                if i != j && p.geq(i, j) {
                    down[i] += 1;
                    up[j] += 1;
                }
            }
        }
        let mut cov_out = vec![0usize; m];
        let mut cov_in = vec![0usize; m];
        for &(u, v) in &p.covers {
            cov_out[u] += 1;
            cov_in[v] += 1;
        }
        (0..m).map(|i| (down[i], up[i], cov_out[i], cov_in[i])).collect()
    };
    let sa = sig(a);
    let sb = sig(b);
    {
        let mut ca = sa.clone();
        let mut cb = sb.clone();
        ca.sort();
        cb.sort();
        if ca != cb {
            return false;
        }
    }
    // Match elements in order of rarest signature first.
    let mut order: Vec<usize> = (0..m).collect();
    let mut freq: BTreeMap<(usize, usize, usize, usize), usize> = BTreeMap::new();
    for s in &sa {
        *freq.entry(*s).or_default() += 1;
    }
    order.sort_by_key(|&i| (freq[&sa[i]], i));

    let mut assign = vec![usize::MAX; m]; // a index -> b index
    let mut used = vec![false; m];
    fn compatible(a: &Poset, b: &Poset, assign: &[usize], i: usize, j: usize) -> bool {
        for x in 0..assign.len() {
            let y = assign[x];
            if y == usize::MAX {
                continue;
            }
            if a.geq(i, x) != b.geq(j, y) || a.geq(x, i) != b.geq(y, j) {
                return false;
            }
        }
        true
    }
    fn rec(
        a: &Poset,
        b: &Poset,
        sa: &[(usize, usize, usize, usize)],
        sb: &[(usize, usize, usize, usize)],
        order: &[usize],
        pos: usize,
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let i = order[pos];
        for j in 0..b.len() {
            if used[j] || sb[j] != sa[i] || !compatible(a, b, assign, i, j) {
                continue;
            }
            assign[i] = j;
            used[j] = true;
            if rec(a, b, sa, sb, order, pos + 1, assign, used) {
                return true;
            }
            assign[i] = usize::MAX;
            used[j] = false;
        }
        false
    }
    rec(a, b, &sa, &sb, &order, 0, &mut assign, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::tableau_to_prograph;
    use crate::stats::{catalan, enumerate_trees};
    use crate::tableaux::StandardTableau;
    use num_bigint::BigUint;

    fn t(rows: [&[u32]; 3]) -> StandardTableau {
        StandardTableau::from_rows([rows[0].to_vec(), rows[1].to_vec(), rows[2].to_vec()])
    }

    fn chain(k: usize) -> Poset {
        let elems: Vec<String> = (0..k).map(|i| format!("e{i}")).collect();
        let steps: Vec<(usize, usize)> = (1..k).map(|i| (i, i - 1)).collect();
        Poset::from_one_step(elems.clone(), elems, &steps).unwrap()
    }

    fn antichain(k: usize) -> Poset {
        let elems: Vec<String> = (0..k).map(|i| format!("e{i}")).collect();
        Poset::from_one_step(elems.clone(), elems, &[]).unwrap()
    }

    #[test]
    fn size2_full_poset_shape() {
        let p = build_rotation_poset(2, &RotationRule::ALL, Restriction::All).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.covers.len(), 6);
        assert!(p.lattice_check().is_lattice);
        // top and bottom as tableaux
        let top = p
            .labels
            .iter()
            .position(|l| l == &t([&[1, 3], &[2, 5], &[4, 6]]).compact())
            .unwrap();
        let bottom = p
            .labels
            .iter()
            .position(|l| l == &t([&[1, 2], &[3, 4], &[5, 6]]).compact())
            .unwrap();
        for i in 0..p.len() {
            assert!(p.geq(top, i));
            assert!(p.geq(i, bottom));
        }
    }

    #[test]
    fn size3_full_poset_is_not_a_lattice() {
        let p = build_rotation_poset(3, &RotationRule::ALL, Restriction::All).unwrap();
        assert_eq!(p.len(), 42);
        let check = p.lattice_check();
        assert!(!check.is_lattice);
        // The published witness pair: incomparable, exactly three common
        // upper bounds, two incomparable minimal ones among them.
        let a = p
            .labels
            .iter()
            .position(|l| l == &t([&[1, 3, 5], &[2, 4, 6], &[7, 8, 9]]).compact())
            .expect("first witness present");
        let b = p
            .labels
            .iter()
            .position(|l| l == &t([&[1, 3, 4], &[2, 6, 7], &[5, 8, 9]]).compact())
            .expect("second witness present");
        assert!(!p.geq(a, b) && !p.geq(b, a), "witness pair must be incomparable");
        let ub: Vec<usize> =
            (0..p.len()).filter(|&w| p.geq(w, a) && p.geq(w, b)).collect();
        assert_eq!(ub.len(), 3, "three common upper bounds");
        let minimal: Vec<usize> = ub
            .iter()
            .copied()
            .filter(|&m| ub.iter().all(|&w| w == m || !p.geq(m, w)))
            .collect();
        assert_eq!(minimal.len(), 2, "two incomparable minimal upper bounds");
        assert!(p.join(a, b).is_none());
    }

    #[test]
    fn size1_poset_trivial() {
        let p = build_rotation_poset(1, &RotationRule::ALL, Restriction::All).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.covers.is_empty());
        assert!(p.lattice_check().is_lattice);
    }

    #[test]
    fn full_cover_graph_is_connected() {
        for n in 1..=3 {
            let p = build_rotation_poset(n, &RotationRule::ALL, Restriction::All).unwrap();
            let mut adj = vec![Vec::new(); p.len()];
            for &(u, v) in &p.covers {
                adj[u].push(v);
                adj[v].push(u);
            }
            let mut seen = vec![false; p.len()];
            let mut stack = vec![0];
            seen[0] = true;
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            assert_eq!(count, p.len(), "n={n}");
        }
    }

    #[test]
    fn tamari_shapes() {
        assert_eq!(tamari(0).len(), 1);
        assert_eq!(tamari(1).len(), 1);
        let t3 = tamari(3);
        assert_eq!(t3.len(), 5);
        assert!(t3.lattice_check().is_lattice);
        let t4 = tamari(4);
        assert_eq!(t4.len(), 14);
        assert!(t4.lattice_check().is_lattice);
    }

    #[test]
    fn glue_trees_basics() {
        let one = BinaryTree::node(BinaryTree::Leaf, BinaryTree::Leaf);
        let p = glue_trees(&one, &one).unwrap();
        assert_eq!(p.n, 1);
        assert!(p.is_valid());
        // mismatched sizes error
        assert!(glue_trees(&one, &BinaryTree::Leaf).is_err());
    }

    #[test]
    fn glue_trees_is_a_bijection_onto_no_vii() {
        for n in 0..=4 {
            let trees = enumerate_trees(n);
            let mut image = std::collections::BTreeSet::new();
            for pt in &trees {
                for ct in &trees {
                    let p = glue_trees(pt, ct).unwrap();
                    assert!(p.avoids_type_vii());
                    image.insert(p.canonical_code().unwrap());
                    // round trip through the splitter
                    let (pt2, ct2) = split_glued(&p).unwrap();
                    assert_eq!(&pt2, pt);
                    assert_eq!(&ct2, ct);
                }
            }
            let direct: std::collections::BTreeSet<String> = enumerate_prographs(n)
                .iter()
                .filter(|p| p.avoids_type_vii())
                .map(|p| p.canonical_code().unwrap())
                .collect();
            assert_eq!(image, direct, "n={n}");
            let c = catalan(n);
            assert_eq!(BigUint::from(image.len()), c.clone() * c, "n={n}");
        }
    }

    #[test]
    fn ab_poset_on_no_vii_is_tamari_squared() {
        for n in 0..=3 {
            let p = build_rotation_poset(
                n,
                &[RotationRule::A, RotationRule::B],
                Restriction::AvoidsTypeVii,
            )
            .unwrap();
            assert!(p.lattice_check().is_lattice, "n={n}");
            let t = tamari(n);
            let prod = product_poset(&t, &t);
            assert_eq!(p.len(), prod.len());
            assert!(poset_isomorphic(&p, &prod), "n={n}");
        }
    }

    #[test]
    fn rule_a_acts_as_rotation_on_the_coproduct_tree() {
        use crate::rewriting::{applicable_rules, apply_rotation, RotationRule};
        for n in 1..=4 {
            for pt in enumerate_trees(n) {
                for ct in enumerate_trees(n) {
                    let p = glue_trees(&pt, &ct).unwrap();
                    // Images under rule A = same product tree, rotated
                    // coproduct tree (mirror conjugated); rule B = rotated
                    // product tree.
                    let mut a_images = std::collections::BTreeSet::new();
                    let mut b_images = std::collections::BTreeSet::new();
                    for (e, r) in applicable_rules(&p) {
                        let q = apply_rotation(&p, e, r).unwrap();
                        match r {
                            RotationRule::A => {
                                a_images.insert(q.canonical_code().unwrap());
                            }
                            RotationRule::B => {
                                b_images.insert(q.canonical_code().unwrap());
                            }
                            _ => {}
                        }
                    }
                    let a_want: std::collections::BTreeSet<String> =
                        tamari_successors(&ct.mirror())
                            .into_iter()
                            .map(|s| {
                                glue_trees(&pt, &s.mirror())
                                    .unwrap()
                                    .canonical_code()
                                    .unwrap()
                            })
                            .collect();
                    let b_want: std::collections::BTreeSet<String> = tamari_successors(&pt)
                        .into_iter()
                        .map(|s| {
                            glue_trees(&s, &ct).unwrap().canonical_code().unwrap()
                        })
                        .collect();
                    assert_eq!(a_images, a_want, "A at ({}, {})", pt.code(), ct.code());
                    assert_eq!(b_images, b_want, "B at ({}, {})", pt.code(), ct.code());
                }
            }
        }
    }

    #[test]
    fn product_poset_shapes() {
        let s = chain(1);
        assert_eq!(product_poset(&s, &s).len(), 1);
        let t2 = tamari(2);
        let d = product_poset(&t2, &t2);
        assert_eq!(d.len(), 4);
        assert!(d.lattice_check().is_lattice);
        assert_eq!(d.covers.len(), 4); // diamond
    }

    #[test]
    fn iso_detects_and_rejects() {
        let t3 = tamari(3);
        assert!(poset_isomorphic(&t3, &t3));
        assert!(!poset_isomorphic(&chain(2), &antichain(2)));
        assert!(poset_isomorphic(&chain(3), &chain(3)));
        assert!(!poset_isomorphic(&chain(3), &tamari(3)));
    }

    #[test]
    fn chains_are_lattices() {
        assert!(chain(5).lattice_check().is_lattice);
        let c = antichain(2).lattice_check();
        assert!(!c.is_lattice);
    }

    #[test]
    fn schuetzenberger_is_poset_automorphism() {
        // The involution permutes elements preserving the order.
        for n in 1..=3 {
            let p = build_rotation_poset(n, &RotationRule::ALL, Restriction::All).unwrap();
            let mapped: Vec<usize> = p
                .elements
                .iter()
                .map(|code| {
                    let i = p.elements.binary_search(code).unwrap();
                    let pr = tableau_to_prograph(
                        &crate::tableaux::enumerate_tableaux(n)
                            .into_iter()
                            .find(|t| t.compact() == p.labels[i])
                            .unwrap(),
                    )
                    .unwrap();
                    let im = pr.schuetzenberger().canonical_code().unwrap();
                    p.elements.binary_search(&im).unwrap()
                })
                .collect();
            for a in 0..p.len() {
                for b in 0..p.len() {
                    assert_eq!(
                        p.geq(a, b),
                        p.geq(mapped[a], mapped[b]),
                        "n={n}: involution must preserve the order"
                    );
                }
            }
        }
    }
}
