//! PC prographs: planar assemblies of binary products and coproducts.
//!
//! A prograph of size `n` has `n` coproducts (one input, two ordered
//! outputs) and `n` products (two ordered inputs, one output), wired so
//! that every port carries exactly one edge except one coproduct input
//! (the global input) and one product output (the global output). The
//! port order is part of the object: the induced embedding must be
//! planar, which we check through Euler's relation on the face traversal
//! of the rotation system, with a virtual edge closing the global output
//! onto the global input around the sphere.
//!
//! Port conventions. Coproduct: input slot 0, outputs left = 0,
//! right = 1. Product: inputs left = 0, right = 1, output slot 0.
//! Edges are drawn flowing upward: sources are output ports, targets
//! input ports.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OpKind {
    #[serde(rename = "cop")]
    Coproduct,
    #[serde(rename = "prod")]
    Product,
}

impl OpKind {
    pub fn flipped(self) -> OpKind {
        match self {
            OpKind::Coproduct => OpKind::Product,
            OpKind::Product => OpKind::Coproduct,
        }
    }

    fn letter(self) -> char {
        match self {
            OpKind::Coproduct => 'c',
            OpKind::Product => 'p',
        }
    }
}

/// An internal edge from an output port to an input port.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PEdge {
    /// (operator id, output slot)
    pub from: (usize, u8),
    /// (operator id, input slot)
    pub to: (usize, u8),
}

/// A PC prograph. Operator ids are indices into `kinds`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prograph {
    pub n: usize,
    pub kinds: Vec<OpKind>,
    pub edges: Vec<PEdge>,
}

/// Per-invariant validation outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationReport {
    /// n coproducts and n products, and every edge endpoint names a
    /// legal port slot for its operator kind.
    pub arity_ok: bool,
    /// Every port used exactly once, except exactly one coproduct input
    /// and exactly one product output left free.
    pub ports_ok: bool,
    pub acyclic: bool,
    pub connected: bool,
    /// Internal edge count equals 3n - 1.
    pub edge_count_ok: bool,
    /// The embedding given by the port orders has genus 0.
    pub planar: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.arity_ok
            && self.ports_ok
            && self.acyclic
            && self.connected
            && self.edge_count_ok
            && self.planar
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        if !self.arity_ok {
            Some("arity")
        } else if !self.ports_ok {
            Some("ports")
        } else if !self.edge_count_ok {
            Some("edge count")
        } else if !self.acyclic {
            Some("acyclicity")
        } else if !self.connected {
            Some("connectivity")
        } else if !self.planar {
            Some("planarity")
        } else {
            None
        }
    }
}

/// The nine-way classification of an internal edge by the kind and slot
/// of its two endpoints. Types I, V and IX are the reduced ones; II and
/// VI admit no flip; the remaining four are reducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeType {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
}

impl std::fmt::Display for EdgeType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EdgeType::I => "I",
            EdgeType::II => "II",
            EdgeType::III => "III",
            EdgeType::IV => "IV",
            EdgeType::V => "V",
            EdgeType::VI => "VI",
            EdgeType::VII => "VII",
            EdgeType::VIII => "VIII",
            EdgeType::IX => "IX",
        };
        f.write_str(s)
    }
}

/// Port occupancy maps, the workhorse for all traversals.
pub(crate) struct PortMaps {
    /// out[op][slot] = edge index having that source port.
    pub out: Vec<[Option<usize>; 2]>,
    /// inp[op][slot] = edge index having that target port.
    pub inp: Vec<[Option<usize>; 2]>,
}

impl Prograph {
    /// The unique size-0 prograph: a bare wire.
    pub fn empty() -> Prograph {
        Prograph { n: 0, kinds: Vec::new(), edges: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub(crate) fn port_maps(&self) -> Option<PortMaps> {
        let m = self.kinds.len();
        let mut out = vec![[None, None]; m];
        let mut inp = vec![[None, None]; m];
        for (i, e) in self.edges.iter().enumerate() {
            let (a, po) = e.from;
            let (b, pi) = e.to;
            if a >= m || b >= m {
                return None;
            }
            let po_ok = match self.kinds[a] {
                OpKind::Coproduct => po <= 1,
                OpKind::Product => po == 0,
            };
            let pi_ok = match self.kinds[b] {
                OpKind::Coproduct => pi == 0,
                OpKind::Product => pi <= 1,
            };
            if !po_ok || !pi_ok {
                return None;
            }
            if out[a][po as usize].replace(i).is_some() {
                return None;
            }
            if inp[b][pi as usize].replace(i).is_some() {
                return None;
            }
        }
        Some(PortMaps { out, inp })
    }

    /// The coproduct whose input is unattached.
    pub fn global_input(&self) -> Option<usize> {
        let maps = self.port_maps()?;
        let mut found = None;
        for (i, k) in self.kinds.iter().enumerate() {
            if *k == OpKind::Coproduct && maps.inp[i][0].is_none() {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// The product whose output is unattached.
    pub fn global_output(&self) -> Option<usize> {
        let maps = self.port_maps()?;
        let mut found = None;
        for (i, k) in self.kinds.iter().enumerate() {
            if *k == OpKind::Product && maps.out[i][0].is_none() {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Checks every invariant and reports them separately.
    pub fn validate(&self) -> ValidationReport {
        let n = self.n;
        let m = self.kinds.len();
        let cops = self.kinds.iter().filter(|k| **k == OpKind::Coproduct).count();
        let arity_ok = m == 2 * n && cops == n;
        let edge_count_ok = if n == 0 { self.edges.is_empty() } else { self.edges.len() == 3 * n - 1 };

        let maps = self.port_maps();
        let ports_ok = arity_ok
            && match &maps {
                None => false,
                Some(maps) => {
                    let mut free_in = 0usize;
                    let mut free_out = 0usize;
                    let mut ok = true;
                    for (i, k) in self.kinds.iter().enumerate() {
                        match k {
                            OpKind::Coproduct => {
                                if maps.inp[i][0].is_none() {
                                    free_in += 1;
                                }
                                ok &= maps.out[i][0].is_some() && maps.out[i][1].is_some();
                            }
                            OpKind::Product => {
                                if maps.out[i][0].is_none() {
                                    free_out += 1;
                                }
                                ok &= maps.inp[i][0].is_some() && maps.inp[i][1].is_some();
                            }
                        }
                    }
                    ok && (n == 0 || (free_in == 1 && free_out == 1))
                }
            };

        let acyclic = self.is_acyclic();
        let connected = self.is_connected();
        let planar = if n == 0 {
            true
        } else {
            ports_ok
                && edge_count_ok
                && connected
                && matches!(trace_primal(self), Some(map) if map.face_count == n + 2)
        };

        ValidationReport { arity_ok, ports_ok, acyclic, connected, edge_count_ok, planar }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    fn is_acyclic(&self) -> bool {
        let m = self.kinds.len();
        let mut indeg = vec![0usize; m];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
        for e in &self.edges {
            if e.from.0 >= m || e.to.0 >= m {
                return false;
            }
            adj[e.from.0].push(e.to.0);
            indeg[e.to.0] += 1;
        }
        let mut queue: Vec<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &w in &adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        seen == m
    }

    fn is_connected(&self) -> bool {
        let m = self.kinds.len();
        if m == 0 {
            return true;
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
        for e in &self.edges {
            if e.from.0 >= m || e.to.0 >= m {
                return false;
            }
            adj[e.from.0].push(e.to.0);
            adj[e.to.0].push(e.from.0);
        }
        let mut seen = vec![false; m];
        let mut stack = vec![0usize];
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
        count == m
    }

    /// Classifies an internal edge into the nine-type grid.
    pub fn classify_edge(&self, edge: usize) -> Result<EdgeType> {
        let e = self
            .edges
            .get(edge)
            .ok_or_else(|| Error::UnknownEdge(format!("edge index {edge}")))?;
        let src = (self.kinds[e.from.0], e.from.1);
        let dst = (self.kinds[e.to.0], e.to.1);
        Ok(match (src, dst) {
            ((OpKind::Coproduct, 0), (OpKind::Coproduct, _)) => EdgeType::I,
            ((OpKind::Coproduct, 0), (OpKind::Product, 0)) => EdgeType::II,
            ((OpKind::Coproduct, 0), (OpKind::Product, _)) => EdgeType::III,
            ((OpKind::Coproduct, _), (OpKind::Coproduct, _)) => EdgeType::IV,
            ((OpKind::Coproduct, _), (OpKind::Product, 0)) => EdgeType::V,
            ((OpKind::Coproduct, _), (OpKind::Product, _)) => EdgeType::VI,
            ((OpKind::Product, _), (OpKind::Coproduct, _)) => EdgeType::VII,
            ((OpKind::Product, _), (OpKind::Product, 0)) => EdgeType::VIII,
            ((OpKind::Product, _), (OpKind::Product, _)) => EdgeType::IX,
        })
    }

    /// True iff no internal edge connects a product output to a
    /// coproduct input.
    pub fn avoids_type_vii(&self) -> bool {
        (0..self.edges.len()).all(|i| self.classify_edge(i) != Ok(EdgeType::VII))
    }

    /// Labels operators 1..=2n bottom-to-top, left-to-right: an operator
    /// becomes ready once all of its input wires hang from labelled
    /// operators, and among the ready ones the one whose pending wire is
    /// leftmost on the planar frontier is labelled next.
    ///
    /// Returns the label of each operator, indexed by operator id.
    pub fn boriefication(&self) -> Result<Vec<u32>> {
        let m = self.kinds.len();
        if m == 0 {
            return Ok(Vec::new());
        }
        let maps = self
            .port_maps()
            .ok_or_else(|| Error::InvalidPrograph("port structure".into()))?;
        let g_in = self
            .global_input()
            .ok_or_else(|| Error::InvalidPrograph("no global input".into()))?;

        // A frontier wire is the output port it hangs from; the initial
        // global-input wire is None.
        let mut frontier: Vec<Option<(usize, u8)>> = vec![None];
        let mut labels = vec![0u32; m];
        let mut next = 1u32;

        let wire_target = |w: &Option<(usize, u8)>| -> Option<(usize, u8)> {
            match w {
                None => Some((g_in, 0)),
                Some((op, slot)) => {
                    let e = maps.out[*op][*slot as usize]?;
                    Some((self.edges[e].to.0, self.edges[e].to.1))
                }
            }
        };

        for _ in 0..m {
            let mut chosen = None;
            'scan: for (pos, w) in frontier.iter().enumerate() {
                let (t, _) = wire_target(w).ok_or_else(|| {
                    Error::InvalidPrograph("dangling non-global wire".into())
                })?;
                if labels[t] != 0 {
                    // Both wires of a labelled product were consumed at
                    // labelling time; seeing it again means corruption.
                    return Err(Error::InvalidPrograph("wire into labelled operator".into()));
                }
                match self.kinds[t] {
                    OpKind::Coproduct => {
                        chosen = Some((pos, t));
                        break 'scan;
                    }
                    OpKind::Product => {
                        // Ready iff both input wires are on the frontier;
                        // planarity then forces them adjacent, with the
                        // left wire feeding the left input.
                        if pos + 1 < frontier.len() {
                            if let Some((t2, s2)) = wire_target(&frontier[pos + 1]) {
                                let (_, s1) = wire_target(w).unwrap();
                                if t2 == t {
                                    if s1 == 0 && s2 == 1 {
                                        chosen = Some((pos, t));
                                        break 'scan;
                                    }
                                    return Err(Error::InvalidPrograph(
                                        "product inputs out of planar order".into(),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            let (pos, t) = chosen.ok_or_else(|| {
                Error::InvalidPrograph("labelling starved: no ready operator".into())
            })?;
            labels[t] = next;
            next += 1;
            match self.kinds[t] {
                OpKind::Coproduct => {
                    frontier.splice(pos..=pos, [Some((t, 0)), Some((t, 1))]);
                }
                OpKind::Product => {
                    frontier.splice(pos..=pos + 1, [Some((t, 0))]);
                }
            }
        }
        // What remains is the global output wire.
        if frontier.len() != 1 {
            return Err(Error::InvalidPrograph("frontier did not close".into()));
        }
        Ok(labels)
    }

    /// True iff the labelling assigns 1..=n exactly to the coproducts.
    pub fn coproducts_first(&self) -> Result<bool> {
        let labels = self.boriefication()?;
        let n = self.n as u32;
        Ok(self
            .kinds
            .iter()
            .zip(&labels)
            .all(|(k, l)| (*k == OpKind::Coproduct) == (*l <= n)))
    }

    /// Deterministic code depending only on the isomorphism class of the
    /// planar-embedded prograph: operators are renumbered by their
    /// labelling order, then the edge list is serialized sorted.
    pub fn canonical_code(&self) -> Result<String> {
        let labels = self.boriefication()?;
        let mut kinds_by_label = vec![' '; self.kinds.len()];
        for (op, l) in labels.iter().enumerate() {
            kinds_by_label[(*l as usize) - 1] = self.kinds[op].letter();
        }
        let mut edges: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                format!(
                    "{}.{}>{}.{}",
                    labels[e.from.0], e.from.1, labels[e.to.0], e.to.1
                )
            })
            .collect();
        edges.sort();
        Ok(format!(
            "P{};{};{}",
            self.n,
            kinds_by_label.into_iter().collect::<String>(),
            edges.join(",")
        ))
    }

    /// Half-turn of the planar diagram: products and coproducts swap,
    /// every edge reverses with left and right ports exchanged, and the
    /// global input and output trade roles. An involution.
    pub fn schuetzenberger(&self) -> Prograph {
        let kinds: Vec<OpKind> = self.kinds.iter().map(|k| k.flipped()).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let (a, po) = e.from;
                let (b, pi) = e.to;
                let new_out = match self.kinds[b] {
                    OpKind::Coproduct => 0,
                    OpKind::Product => 1 - pi,
                };
                let new_in = match self.kinds[a] {
                    OpKind::Coproduct => 1 - po,
                    OpKind::Product => 0,
                };
                PEdge { from: (b, new_out), to: (a, new_in) }
            })
            .collect();
        Prograph { n: self.n, kinds, edges }
    }

    /// Left-right reflection: swaps the two outputs of every coproduct
    /// and the two inputs of every product.
    pub fn mirror(&self) -> Prograph {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut e = *e;
                if self.kinds[e.from.0] == OpKind::Coproduct {
                    e.from.1 = 1 - e.from.1;
                }
                if self.kinds[e.to.0] == OpKind::Product {
                    e.to.1 = 1 - e.to.1;
                }
                e
            })
            .collect();
        Prograph { n: self.n, kinds: self.kinds.clone(), edges }
    }
}

// ---------------------------------------------------------------------------
// Rotation-system face tracing (primal map with the virtual edge).

/// Faces of the prograph embedded on the sphere with the virtual edge
/// from the global output back to the global input. Edge indices 0..E-1
/// are the internal edges; index E-1+1 ... actually `virtual_edge` is
/// one past the internal edges.
pub(crate) struct PrimalMap {
    pub face_count: usize,
    /// face id of each arc; arc id = 2*edge + (0 forward | 1 backward).
    pub face_of_arc: Vec<usize>,
    /// index of the virtual edge (== number of internal edges).
    pub virtual_edge: usize,
}

impl PrimalMap {
    /// Face to the right of the edge's flow.
    pub fn right_face(&self, edge: usize) -> usize {
        self.face_of_arc[2 * edge]
    }
    /// Face to the left of the edge's flow.
    pub fn left_face(&self, edge: usize) -> usize {
        self.face_of_arc[2 * edge + 1]
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PortKey {
    In(u8),
    Out(u8),
}

/// Traces the faces of the embedding. Requires complete port structure;
/// returns None when ports are missing or doubled. Size must be >= 1.
pub(crate) fn trace_primal(p: &Prograph) -> Option<PrimalMap> {
    let maps = p.port_maps()?;
    let g_in = p.global_input()?;
    let g_out = p.global_output()?;
    let n_internal = p.edges.len();
    let virtual_edge = n_internal;
    let n_edges = n_internal + 1;

    // Endpoints of an edge, virtual included.
    let ends = |e: usize| -> ((usize, PortKey), (usize, PortKey)) {
        if e == virtual_edge {
            ((g_out, PortKey::Out(0)), (g_in, PortKey::In(0)))
        } else {
            let ed = &p.edges[e];
            (
                (ed.from.0, PortKey::Out(ed.from.1)),
                (ed.to.0, PortKey::In(ed.to.1)),
            )
        }
    };

    // CCW rotation at an operator.
    let rotation = |op: usize| -> [PortKey; 3] {
        match p.kinds[op] {
            OpKind::Coproduct => [PortKey::In(0), PortKey::Out(1), PortKey::Out(0)],
            OpKind::Product => [PortKey::Out(0), PortKey::In(0), PortKey::In(1)],
        }
    };

    let edge_at = |op: usize, pk: PortKey| -> Option<(usize, bool)> {
        // Returns (edge, departs_forward).
        match pk {
            PortKey::Out(s) => match maps.out[op][s as usize] {
                Some(e) => Some((e, true)),
                None => {
                    if op == g_out && s == 0 {
                        Some((virtual_edge, true))
                    } else {
                        None
                    }
                }
            },
            PortKey::In(s) => match maps.inp[op][s as usize] {
                Some(e) => Some((e, false)),
                None => {
                    if op == g_in && s == 0 {
                        Some((virtual_edge, false))
                    } else {
                        None
                    }
                }
            },
        }
    };

    let mut face_of_arc = vec![usize::MAX; 2 * n_edges];
    let mut face_count = 0;
    for start in 0..2 * n_edges {
        if face_of_arc[start] != usize::MAX {
            continue;
        }
        let face = face_count;
        face_count += 1;
        let mut arc = start;
        loop {
            face_of_arc[arc] = face;
            let (e, fwd) = (arc / 2, arc % 2 == 0);
            let (tail, head) = ends(e);
            let (v, arrived) = if fwd { head } else { tail };
            let rot = rotation(v);
            let pos = rot.iter().position(|pk| *pk == arrived)?;
            let next_pk = rot[(pos + 1) % 3];
            let (ne, nfwd) = edge_at(v, next_pk)?;
            arc = 2 * ne + if nfwd { 0 } else { 1 };
            if arc == start {
                break;
            }
            if face_of_arc[arc] != usize::MAX {
                // Should close exactly on the start; corrupt structure.
                return None;
            }
        }
    }
    Some(PrimalMap { face_count, face_of_arc, virtual_edge })
}

// ---------------------------------------------------------------------------
// Direct enumeration.

/// Every valid PC prograph of size `n`, built directly by extending an
/// ordered frontier of open wires (attach a coproduct on any single wire
/// or a product on any adjacent pair), deduplicated structurally. This
/// generation is independent of the tableau bijection and serves as its
/// oracle. Emitted in canonical-code order.
pub fn enumerate_prographs(n: usize) -> Vec<Prograph> {
    if n == 0 {
        return vec![Prograph::empty()];
    }
    #[derive(Clone)]
    struct State {
        kinds: Vec<OpKind>,
        edges: Vec<PEdge>,
        frontier: Vec<Option<(usize, u8)>>,
    }

    fn state_key(s: &State) -> String {
        // Preorder DFS from the root (the operator fed by the global
        // input) over out-edges; renumber by first visit.
        if s.kinds.is_empty() {
            return "empty".into();
        }
        let m = s.kinds.len();
        let mut out: Vec<[Option<&PEdge>; 2]> = vec![[None, None]; m];
        for e in &s.edges {
            out[e.from.0][e.from.1 as usize] = Some(e);
        }
        let mut newid = vec![usize::MAX; m];
        let mut order = Vec::with_capacity(m);
        let mut stack = vec![0usize]; // op 0 always consumes the global input
        newid[0] = 0;
        order.push(0);
        while let Some(v) = stack.pop() {
            for slot in (0..2).rev() {
                if let Some(e) = out[v][slot] {
                    let t = e.to.0;
                    if newid[t] == usize::MAX {
                        newid[t] = order.len();
                        order.push(t);
                        stack.push(t);
                    }
                }
            }
        }
        let mut key = String::new();
        for &op in &order {
            key.push(s.kinds[op].letter());
            for slot in 0..2 {
                match out[op][slot] {
                    Some(e) => {
                        key.push_str(&format!("{}#{};", newid[e.to.0], e.to.1));
                    }
                    None => key.push('.'),
                }
            }
        }
        key.push('|');
        for w in &s.frontier {
            match w {
                None => key.push('G'),
                Some((op, slot)) => key.push_str(&format!("{}~{};", newid[*op], slot)),
            }
        }
        key
    }

    let mut level: HashMap<String, State> = HashMap::new();
    let init = State {
        kinds: Vec::new(),
        edges: Vec::new(),
        frontier: vec![None],
    };
    level.insert(state_key(&init), init);

    for _step in 0..2 * n {
        let mut next: HashMap<String, State> = HashMap::new();
        for st in level.values() {
            let cops = st.kinds.iter().filter(|k| **k == OpKind::Coproduct).count();
            let prods = st.kinds.len() - cops;
            // A product consumes two wires; keep enough wires around to
            // finish with exactly one.
            if cops < n {
                for pos in 0..st.frontier.len() {
                    let mut s2 = st.clone();
                    let id = s2.kinds.len();
                    s2.kinds.push(OpKind::Coproduct);
                    if let Some((op, slot)) = s2.frontier[pos] {
                        s2.edges.push(PEdge { from: (op, slot), to: (id, 0) });
                    }
                    s2.frontier.splice(pos..=pos, [Some((id, 0)), Some((id, 1))]);
                    next.entry(state_key(&s2)).or_insert(s2);
                }
            }
            if prods < n && st.frontier.len() >= 2 {
                for pos in 0..st.frontier.len() - 1 {
                    let (Some(w1), Some(w2)) = (st.frontier[pos], st.frontier[pos + 1]) else {
                        continue;
                    };
                    let mut s2 = st.clone();
                    let id = s2.kinds.len();
                    s2.kinds.push(OpKind::Product);
                    s2.edges.push(PEdge { from: w1, to: (id, 0) });
                    s2.edges.push(PEdge { from: w2, to: (id, 1) });
                    s2.frontier.splice(pos..=pos + 1, [Some((id, 0))]);
                    next.entry(state_key(&s2)).or_insert(s2);
                }
            }
        }
        level = next;
    }

    let mut by_code: Vec<(String, Prograph)> = Vec::new();
    let mut seen = BTreeSet::new();
    for st in level.values() {
        if st.frontier.len() != 1 {
            continue;
        }
        let Some((last_op, 0)) = st.frontier[0] else { continue };
        if st.kinds[last_op] != OpKind::Product {
            continue;
        }
        let p = Prograph { n, kinds: st.kinds.clone(), edges: st.edges.clone() };
        debug_assert!(p.is_valid(), "enumeration produced invalid prograph");
        let code = p.canonical_code().expect("valid prograph has a code");
        if seen.insert(code.clone()) {
            by_code.push((code, p));
        }
    }
    by_code.sort_by(|a, b| a.0.cmp(&b.0));
    by_code.into_iter().map(|(_, p)| p).collect()
}

// ---------------------------------------------------------------------------
// JSON encoding per the external interface.

#[derive(Serialize, Deserialize)]
struct OpJson {
    id: usize,
    kind: OpKind,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    from: (usize, u8),
    to: (usize, u8),
}

#[derive(Serialize, Deserialize)]
struct PrographJson {
    n: usize,
    operators: Vec<OpJson>,
    edges: Vec<EdgeJson>,
}

impl Serialize for Prograph {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let doc = PrographJson {
            n: self.n,
            operators: self
                .kinds
                .iter()
                .enumerate()
                .map(|(id, kind)| OpJson { id, kind: *kind })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson { from: e.from, to: e.to })
                .collect(),
        };
        doc.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Prograph {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let doc = PrographJson::deserialize(de)?;
        let mut kinds = vec![OpKind::Coproduct; doc.operators.len()];
        for op in &doc.operators {
            if op.id >= kinds.len() {
                return Err(serde::de::Error::custom(format!(
                    "operator id {} out of range",
                    op.id
                )));
            }
            kinds[op.id] = op.kind;
        }
        Ok(Prograph {
            n: doc.n,
            kinds,
            edges: doc.edges.iter().map(|e| PEdge { from: e.from, to: e.to }).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::count_3d_catalan;
    use num_bigint::BigUint;

    /// The unique size-1 prograph.
    pub(crate) fn size1() -> Prograph {
        Prograph {
            n: 1,
            kinds: vec![OpKind::Coproduct, OpKind::Product],
            edges: vec![
                PEdge { from: (0, 0), to: (1, 0) },
                PEdge { from: (0, 1), to: (1, 1) },
            ],
        }
    }

    /// Left prograph of the labelling example: coproducts 0..=3 are
    /// drawn with labels 1,2,4,6 and products 4..=7 with 3,5,7,8.
    pub(crate) fn labelled_example_left() -> Prograph {
        Prograph {
            n: 4,
            kinds: vec![
                OpKind::Coproduct,
                OpKind::Coproduct,
                OpKind::Coproduct,
                OpKind::Coproduct,
                OpKind::Product,
                OpKind::Product,
                OpKind::Product,
                OpKind::Product,
            ],
            edges: vec![
                PEdge { from: (0, 0), to: (1, 0) },
                PEdge { from: (0, 1), to: (4, 1) },
                PEdge { from: (1, 0), to: (5, 0) },
                PEdge { from: (1, 1), to: (4, 0) },
                PEdge { from: (4, 0), to: (2, 0) },
                PEdge { from: (2, 0), to: (5, 1) },
                PEdge { from: (2, 1), to: (3, 0) },
                PEdge { from: (5, 0), to: (6, 0) },
                PEdge { from: (3, 0), to: (6, 1) },
                PEdge { from: (3, 1), to: (7, 1) },
                PEdge { from: (6, 0), to: (7, 0) },
            ],
        }
    }

    /// Its image under the half-turn, as drawn.
    pub(crate) fn labelled_example_right() -> Prograph {
        Prograph {
            n: 4,
            kinds: vec![
                OpKind::Coproduct,
                OpKind::Coproduct,
                OpKind::Coproduct,
                OpKind::Coproduct,
                OpKind::Product,
                OpKind::Product,
                OpKind::Product,
                OpKind::Product,
            ],
            edges: vec![
                PEdge { from: (0, 0), to: (4, 0) },
                PEdge { from: (0, 1), to: (1, 0) },
                PEdge { from: (1, 0), to: (4, 1) },
                PEdge { from: (1, 1), to: (2, 0) },
                PEdge { from: (4, 0), to: (5, 0) },
                PEdge { from: (2, 0), to: (5, 1) },
                PEdge { from: (2, 1), to: (6, 1) },
                PEdge { from: (5, 0), to: (3, 0) },
                PEdge { from: (3, 0), to: (7, 0) },
                PEdge { from: (3, 1), to: (6, 0) },
                PEdge { from: (6, 0), to: (7, 1) },
            ],
        }
    }

    #[test]
    fn size1_is_valid() {
        let p = size1();
        let r = p.validate();
        assert!(r.is_valid(), "{r:?}");
        assert_eq!(p.global_input(), Some(0));
        assert_eq!(p.global_output(), Some(1));
    }

    #[test]
    fn size1_crossed_fails_planarity_only() {
        let p = Prograph {
            n: 1,
            kinds: vec![OpKind::Coproduct, OpKind::Product],
            edges: vec![
                PEdge { from: (0, 0), to: (1, 1) },
                PEdge { from: (0, 1), to: (1, 0) },
            ],
        };
        let r = p.validate();
        assert!(r.arity_ok && r.ports_ok && r.acyclic && r.connected && r.edge_count_ok);
        assert!(!r.planar);
    }

    #[test]
    fn two_operator_cycle_fails_global_ports() {
        // Product output feeds the coproduct input, both coproduct
        // outputs feed back into the product: no free port remains and
        // the directed graph is cyclic.
        let p = Prograph {
            n: 1,
            kinds: vec![OpKind::Coproduct, OpKind::Product],
            edges: vec![
                PEdge { from: (1, 0), to: (0, 0) },
                PEdge { from: (0, 0), to: (1, 0) },
                PEdge { from: (0, 1), to: (1, 1) },
            ],
        };
        let r = p.validate();
        assert!(!r.ports_ok);
        assert!(!r.acyclic);
        assert!(!r.is_valid());
    }

    #[test]
    fn boriefication_of_size1() {
        assert_eq!(size1().boriefication().unwrap(), vec![1, 2]);
    }

    #[test]
    fn boriefication_matches_drawn_labels() {
        let left = labelled_example_left();
        assert!(left.is_valid());
        assert_eq!(left.boriefication().unwrap(), vec![1, 2, 4, 6, 3, 5, 7, 8]);
        let right = labelled_example_right();
        assert!(right.is_valid());
        assert_eq!(right.boriefication().unwrap(), vec![1, 2, 4, 6, 3, 5, 7, 8]);
    }

    #[test]
    fn schuetzenberger_sends_left_example_to_right() {
        let left = labelled_example_left();
        let right = labelled_example_right();
        let image = left.schuetzenberger();
        assert!(image.is_valid());
        assert_eq!(image.canonical_code().unwrap(), right.canonical_code().unwrap());
        // and back
        let back = image.schuetzenberger();
        assert_eq!(back.canonical_code().unwrap(), left.canonical_code().unwrap());
    }

    #[test]
    fn classify_size1_edges() {
        let p = size1();
        assert_eq!(p.classify_edge(0).unwrap(), EdgeType::II);
        assert_eq!(p.classify_edge(1).unwrap(), EdgeType::VI);
        assert!(p.classify_edge(7).is_err());
        assert!(p.avoids_type_vii());
    }

    #[test]
    fn canonical_code_ignores_operator_numbering() {
        // Rebuild size-1 with the ids swapped.
        let p = Prograph {
            n: 1,
            kinds: vec![OpKind::Product, OpKind::Coproduct],
            edges: vec![
                PEdge { from: (1, 0), to: (0, 0) },
                PEdge { from: (1, 1), to: (0, 1) },
            ],
        };
        assert_eq!(
            p.canonical_code().unwrap(),
            size1().canonical_code().unwrap()
        );
    }

    #[test]
    fn enumeration_counts() {
        for n in 0..=4 {
            let all = enumerate_prographs(n);
            assert_eq!(
                BigUint::from(all.len()),
                count_3d_catalan(n),
                "size {n}"
            );
            // all valid, all distinct codes, sorted
            let codes: Vec<String> =
                all.iter().map(|p| p.canonical_code().unwrap()).collect();
            for w in codes.windows(2) {
                assert!(w[0] < w[1]);
            }
            assert!(all.iter().all(Prograph::is_valid));
        }
    }

    #[test]
    fn schuetzenberger_is_involution_up_to_size_3() {
        for n in 0..=3 {
            for p in enumerate_prographs(n) {
                let s = p.schuetzenberger();
                assert!(s.is_valid());
                assert_eq!(
                    s.schuetzenberger().canonical_code().unwrap(),
                    p.canonical_code().unwrap()
                );
            }
        }
    }

    #[test]
    fn boriefication_is_linear_extension() {
        for n in 0..=3 {
            for p in enumerate_prographs(n) {
                let labels = p.boriefication().unwrap();
                for e in &p.edges {
                    assert!(labels[e.from.0] < labels[e.to.0]);
                }
            }
        }
    }

    #[test]
    fn every_edge_classifies() {
        for n in 0..=3 {
            for p in enumerate_prographs(n) {
                for i in 0..p.edges.len() {
                    p.classify_edge(i).unwrap();
                }
            }
        }
    }

    #[test]
    fn mirror_is_involution_and_valid() {
        for p in enumerate_prographs(3) {
            let m = p.mirror();
            assert!(m.is_valid());
            assert_eq!(
                m.mirror().canonical_code().unwrap(),
                p.canonical_code().unwrap()
            );
        }
    }

    #[test]
    fn json_roundtrip() {
        let p = labelled_example_left();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"operators\""));
        let back: Prograph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
