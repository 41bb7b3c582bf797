//! Duality between PC prographs on the sphere and rooted bipolar
//! triangulations, with edge flips and the antipodal involution.
//!
//! The dual of a prograph (with the virtual edge closing the global
//! output onto the global input) has one vertex per face of the primal
//! embedding, one edge crossing each primal edge, and one triangle per
//! operator. A dual edge is oriented from the face on the left of its
//! primal edge to the face on the right, which makes the dual a bipolar
//! DAG between the two outer-face vertices.
//!
//! On top of that dual we place one apex vertex joined to the three
//! corners of the global product's triangle, which splits it into the
//! operator triangle proper plus dedicated north- and south-pole
//! triangles. The result has V = n+3, E = 3n+3, F = 2n+2; at n = 1 it
//! is the tetrahedron. The root edge is the side shared by the two pole
//! triangles, never flipped, and its endpoints are the unique source and
//! sink of the orientation.
//!
//! Edge ids are stable: the dual of the primal edge `i` is the
//! triangulation edge `i`, the dual of the virtual edge comes next, then
//! the three apex edges. Flips keep ids in place, so the rotation/flip
//! correspondence can be checked edge by edge.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::prograph::{trace_primal, EdgeType, OpKind, PEdge, Prograph};
use crate::rewriting::RotationRule;
use crate::tableaux::StandardTableau;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriEdge {
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FaceTag {
    /// Triangle around a primal operator; the id is informational.
    #[serde(rename = "op")]
    Op(usize),
    #[serde(rename = "north_pole")]
    North,
    #[serde(rename = "south_pole")]
    South,
}

/// A face, as the cyclic sequence of its sides. Each side records the
/// edge and whether the boundary walk crosses it tail-to-head.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriFace {
    pub sides: Vec<(usize, bool)>,
    pub tag: FaceTag,
}

impl TriFace {
    /// Corner reached after crossing side `i`.
    fn exit(&self, i: usize, edges: &[TriEdge]) -> usize {
        let (e, fwd) = self.sides[i];
        if fwd {
            edges[e].head
        } else {
            edges[e].tail
        }
    }
    /// Corner the walk stands on before crossing side `i`.
    fn entry(&self, i: usize, edges: &[TriEdge]) -> usize {
        let (e, fwd) = self.sides[i];
        if fwd {
            edges[e].tail
        } else {
            edges[e].head
        }
    }
}

/// A rooted, bipolar-oriented triangulation of the sphere.
///
/// The JSON form carries, besides the directed edges, triangles and
/// root edge index, a `vertices` array with the rotation order of the
/// incident edge-ends around each vertex; the rotation is derived from
/// the faces, so deserialization only cross-checks it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub n: usize,
    pub num_vertices: usize,
    pub edges: Vec<TriEdge>,
    pub faces: Vec<TriFace>,
    /// The edge shared by the two pole triangles; never flipped.
    pub root_edge: usize,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: usize,
    /// (edge, arrives_at_head) pairs in cyclic order.
    rotation: Vec<(usize, bool)>,
}

#[derive(Serialize, Deserialize)]
struct TriangulationJson {
    n: usize,
    vertices: Vec<VertexJson>,
    edges: Vec<TriEdge>,
    triangles: Vec<TriFace>,
    root_edge: usize,
}

impl Serialize for Triangulation {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let rotations = self
            .rotations()
            .map_err(|e| serde::ser::Error::custom(e.to_string()))?;
        TriangulationJson {
            n: self.n,
            vertices: rotations
                .into_iter()
                .enumerate()
                .map(|(id, rotation)| VertexJson { id, rotation })
                .collect(),
            edges: self.edges.clone(),
            triangles: self.faces.clone(),
            root_edge: self.root_edge,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Triangulation {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let doc = TriangulationJson::deserialize(de)?;
        let tr = Triangulation {
            n: doc.n,
            num_vertices: doc.vertices.len(),
            edges: doc.edges,
            faces: doc.triangles,
            root_edge: doc.root_edge,
        };
        // The declared rotations must agree with the faces up to cyclic
        // rotation at each vertex.
        let derived = tr
            .rotations()
            .map_err(|e| serde::de::Error::custom(e.to_string()))?;
        for v in &doc.vertices {
            if v.id >= derived.len() {
                return Err(serde::de::Error::custom(format!(
                    "vertex id {} out of range",
                    v.id
                )));
            }
            let want = &derived[v.id];
            let got = &v.rotation;
            let matches = want.len() == got.len()
                && (0..want.len()).any(|s| {
                    (0..want.len()).all(|i| got[(s + i) % want.len()] == want[i])
                });
            if !matches {
                return Err(serde::de::Error::custom(format!(
                    "rotation at vertex {} disagrees with the faces",
                    v.id
                )));
            }
        }
        Ok(tr)
    }
}

/// Validation outcome, one flag per invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriValidation {
    /// Every edge borders exactly two faces, crossed once each way, and
    /// the corners around every vertex stitch into a single cycle.
    pub map_ok: bool,
    /// All faces are triangles.
    pub triangles_ok: bool,
    /// V - E + F = 2.
    pub euler_ok: bool,
    /// The orientation is acyclic.
    pub acyclic: bool,
    /// Unique source and unique sink, and they are the root endpoints.
    pub bipolar_ok: bool,
    /// Exactly one north and one south triangle, both on the root edge.
    pub poles_ok: bool,
}

impl TriValidation {
    pub fn is_valid(&self) -> bool {
        self.map_ok
            && self.triangles_ok
            && self.euler_ok
            && self.acyclic
            && self.bipolar_ok
            && self.poles_ok
    }
}

impl Triangulation {
    pub fn validate(&self) -> TriValidation {
        let ne = self.edges.len();
        let nv = self.num_vertices;

        // Edge usage: one forward and one backward crossing each.
        let mut fwd_seen = vec![0usize; ne];
        let mut bwd_seen = vec![0usize; ne];
        let mut corners_ok = true;
        for f in &self.faces {
            let k = f.sides.len();
            for i in 0..k {
                let (e, fw) = f.sides[i];
                if e >= ne {
                    return TriValidation {
                        map_ok: false,
                        triangles_ok: false,
                        euler_ok: false,
                        acyclic: false,
                        bipolar_ok: false,
                        poles_ok: false,
                    };
                }
                if fw {
                    fwd_seen[e] += 1;
                } else {
                    bwd_seen[e] += 1;
                }
                // consecutive sides must share the corner
                if f.exit(i, &self.edges) != f.entry((i + 1) % k, &self.edges) {
                    corners_ok = false;
                }
            }
        }
        let usage_ok = fwd_seen.iter().all(|&c| c == 1) && bwd_seen.iter().all(|&c| c == 1);

        // Corner stitching: the successor map around each vertex must be
        // one cycle covering all incident edge-ends.
        let mut stitch_ok = usage_ok && corners_ok;
        if stitch_ok {
            // dart = (edge, end): end 0 = tail, 1 = head
            let dart = |e: usize, at_head: bool| 2 * e + usize::from(at_head);
            let mut succ: Vec<Option<usize>> = vec![None; 2 * ne];
            for f in &self.faces {
                let k = f.sides.len();
                for i in 0..k {
                    let (e1, f1) = f.sides[i];
                    let (e2, f2) = f.sides[(i + 1) % k];
                    // arrive on e1's far end, depart from e2's near end
                    let from = dart(e1, f1);
                    let to = dart(e2, !f2);
                    if succ[from].replace(to).is_some() {
                        stitch_ok = false;
                    }
                }
            }
            if stitch_ok && succ.iter().any(|s| s.is_none()) {
                stitch_ok = false;
            }
            if stitch_ok {
                // each orbit must stay at one vertex and cover its degree
                let vert_of = |d: usize| {
                    let (e, at_head) = (d / 2, d % 2 == 1);
                    if at_head {
                        self.edges[e].head
                    } else {
                        self.edges[e].tail
                    }
                };
                let mut degree = vec![0usize; nv];
                for e in &self.edges {
                    if e.tail >= nv || e.head >= nv {
                        stitch_ok = false;
                        break;
                    }
                    degree[e.tail] += 1;
                    degree[e.head] += 1;
                }
                if stitch_ok {
                    let mut seen = vec![false; 2 * ne];
                    for start in 0..2 * ne {
                        if seen[start] {
                            continue;
                        }
                        let v = vert_of(start);
                        let mut len = 0;
                        let mut d = start;
                        loop {
                            if seen[d] || vert_of(d) != v {
                                stitch_ok = false;
                                break;
                            }
                            seen[d] = true;
                            len += 1;
                            d = succ[d].unwrap();
                            if d == start {
                                break;
                            }
                        }
                        if !stitch_ok || len != degree[v] {
                            stitch_ok = false;
                            break;
                        }
                    }
                }
            }
        }
        let map_ok = stitch_ok;

        let triangles_ok = self.faces.iter().all(|f| f.sides.len() == 3);
        let euler_ok =
            nv as i64 - ne as i64 + self.faces.len() as i64 == 2;

        // Orientation.
        let mut indeg = vec![0usize; nv];
        let mut outdeg = vec![0usize; nv];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
        let mut in_range = true;
        for e in &self.edges {
            if e.tail >= nv || e.head >= nv {
                in_range = false;
                break;
            }
            adj[e.tail].push(e.head);
            outdeg[e.tail] += 1;
            indeg[e.head] += 1;
        }
        let acyclic = in_range && {
            let mut indeg2 = indeg.clone();
            let mut queue: Vec<usize> = (0..nv).filter(|&v| indeg2[v] == 0).collect();
            let mut seen = 0;
            while let Some(v) = queue.pop() {
                seen += 1;
                for &w in &adj[v] {
                    indeg2[w] -= 1;
                    if indeg2[w] == 0 {
                        queue.push(w);
                    }
                }
            }
            seen == nv
        };
        let bipolar_ok = in_range && self.root_edge < ne && {
            let sources: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
            let sinks: Vec<usize> = (0..nv).filter(|&v| outdeg[v] == 0).collect();
            let root = self.edges[self.root_edge];
            sources == vec![root.tail] && sinks == vec![root.head]
        };

        let poles_ok = self.root_edge < ne && {
            let norths = self.faces.iter().filter(|f| f.tag == FaceTag::North).count();
            let souths = self.faces.iter().filter(|f| f.tag == FaceTag::South).count();
            let root_faces: Vec<&TriFace> = self
                .faces
                .iter()
                .filter(|f| f.sides.iter().any(|(e, _)| *e == self.root_edge))
                .collect();
            norths == 1
                && souths == 1
                && root_faces.len() == 2
                && root_faces.iter().any(|f| f.tag == FaceTag::North)
                && root_faces.iter().any(|f| f.tag == FaceTag::South)
        };

        TriValidation { map_ok, triangles_ok, euler_ok, acyclic, bipolar_ok, poles_ok }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Rotation system: at each vertex, the cyclic order of incident
    /// edge-ends `(edge, arriving_at_head)` induced by the faces.
    pub fn rotations(&self) -> Result<Vec<Vec<(usize, bool)>>> {
        let ne = self.edges.len();
        let nv = self.num_vertices;
        let dart = |e: usize, at_head: bool| 2 * e + usize::from(at_head);
        let mut succ: Vec<Option<usize>> = vec![None; 2 * ne];
        for f in &self.faces {
            let k = f.sides.len();
            for i in 0..k {
                let (e1, f1) = f.sides[i];
                let (e2, f2) = f.sides[(i + 1) % k];
                let from = dart(e1, f1);
                let to = dart(e2, !f2);
                if succ[from].replace(to).is_some() {
                    return Err(Error::Duality("edge bordered twice on one side".into()));
                }
            }
        }
        let vert_of = |d: usize| {
            let (e, at_head) = (d / 2, d % 2 == 1);
            if at_head {
                self.edges[e].head
            } else {
                self.edges[e].tail
            }
        };
        let mut rot: Vec<Vec<(usize, bool)>> = vec![Vec::new(); nv];
        let mut seen = vec![false; 2 * ne];
        for start in 0..2 * ne {
            if seen[start] {
                continue;
            }
            let v = vert_of(start);
            if !rot[v].is_empty() {
                return Err(Error::Duality("disconnected corner cycle".into()));
            }
            let mut d = start;
            loop {
                seen[d] = true;
                rot[v].push((d / 2, d % 2 == 1));
                d = succ[d].ok_or_else(|| Error::Duality("open corner".into()))?;
                if d == start {
                    break;
                }
            }
        }
        Ok(rot)
    }

    /// Canonical form of the rooted oriented map with pole markers: a
    /// breadth-first relabelling starting at the root edge's tail.
    /// Operator face ids are ignored; only the North/South markers count.
    pub fn canonical_code(&self) -> Result<String> {
        let rot = self.rotations()?;
        let nv = self.num_vertices;
        let root = self.edges[self.root_edge];
        let mut names = vec![usize::MAX; nv];
        names[root.tail] = 0;
        let mut order = vec![root.tail];
        // entry dart at each vertex: (edge, arrives at head?)
        let mut entry: Vec<(usize, bool)> = vec![(usize::MAX, false); nv];
        entry[root.tail] = (self.root_edge, false);
        let mut qi = 0;
        let mut code = String::new();
        while qi < order.len() {
            let v = order[qi];
            qi += 1;
            let r = &rot[v];
            let start = r
                .iter()
                .position(|&(e, ah)| {
                    (e, if ah { self.edges[e].head } else { self.edges[e].tail })
                        == (entry[v].0, v)
                        && ah == (self.edges[e].head == v && entry[v].1 || false)
                })
                .or_else(|| {
                    r.iter().position(|&(e, ah)| {
                        e == entry[v].0
                            && (if ah { self.edges[e].head } else { self.edges[e].tail }) == v
                    })
                })
                .ok_or_else(|| Error::Duality("entry dart missing from rotation".into()))?;
            code.push('(');
            for k in 0..r.len() {
                let (e, at_head) = r[(start + k) % r.len()];
                let (w, outgoing) = if at_head {
                    // dart sits at head => the other endpoint is tail;
                    // but this dart belongs to v, so v is the head and
                    // the edge comes in.
                    (self.edges[e].tail, false)
                } else {
                    (self.edges[e].head, true)
                };
                if names[w] == usize::MAX {
                    names[w] = order.len();
                    entry[w] = (e, !at_head);
                    order.push(w);
                }
                code.push_str(&format!("{}{}", if outgoing { '>' } else { '<' }, names[w]));
            }
            code.push(')');
        }
        if order.len() != nv {
            return Err(Error::Duality("map is disconnected".into()));
        }
        // Faces with markers, canonicalized and sorted.
        let mut faces: Vec<String> = self
            .faces
            .iter()
            .map(|f| {
                let mut verts: Vec<usize> = (0..f.sides.len())
                    .map(|i| names[f.entry(i, &self.edges)])
                    .collect();
                // rotate cyclic list to lexicographic least
                let least = (0..verts.len())
                    .map(|s| {
                        let mut v = verts.clone();
                        v.rotate_left(s);
                        v
                    })
                    .min()
                    .unwrap();
                verts = least;
                let tag = match f.tag {
                    FaceTag::North => "N",
                    FaceTag::South => "S",
                    FaceTag::Op(_) => "o",
                };
                format!(
                    "{tag}{}",
                    verts.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
                )
            })
            .collect();
        faces.sort();
        Ok(format!("T{};{};{}", self.n, code, faces.join("|")))
    }
}

// ---------------------------------------------------------------------------
// The underlying dual map (before the apex augmentation).

/// Dual of the prograph-with-virtual-edge: one triangle per operator.
/// Edge i is dual to primal edge i; `virt` is dual to the virtual edge.
struct DualMap {
    num_vertices: usize,
    edges: Vec<TriEdge>,
    faces: Vec<TriFace>,
    virt: usize,
}

fn build_dual(p: &Prograph) -> Result<DualMap> {
    let maps = p
        .port_maps()
        .ok_or_else(|| Error::InvalidPrograph("port structure".into()))?;
    let trace = trace_primal(p).ok_or_else(|| Error::InvalidPrograph("untraceable".into()))?;
    let g_in = p.global_input().ok_or_else(|| Error::InvalidPrograph("no input".into()))?;
    let g_out = p.global_output().ok_or_else(|| Error::InvalidPrograph("no output".into()))?;
    let virt = trace.virtual_edge;

    let edges: Vec<TriEdge> = (0..=virt)
        .map(|e| TriEdge { tail: trace.left_face(e), head: trace.right_face(e) })
        .collect();

    // One triangular face per operator: its sides are the duals of the
    // operator's three incident primal edges in rotation order; the
    // flags record the traversal direction (forward across inputs).
    let mut faces = Vec::with_capacity(p.kinds.len());
    for (op, kind) in p.kinds.iter().enumerate() {
        // (edge, is_input) triples in CCW rotation order
        let around: [(usize, bool); 3] = match kind {
            OpKind::Coproduct => [
                (maps.inp[op][0].unwrap_or(if op == g_in { virt } else { usize::MAX }), true),
                (maps.out[op][1].expect("cop right out"), false),
                (maps.out[op][0].expect("cop left out"), false),
            ],
            OpKind::Product => [
                (maps.out[op][0].unwrap_or(if op == g_out { virt } else { usize::MAX }), false),
                (maps.inp[op][0].expect("prod left in"), true),
                (maps.inp[op][1].expect("prod right in"), true),
            ],
        };
        if around.iter().any(|(e, _)| *e == usize::MAX) {
            return Err(Error::InvalidPrograph("dangling port".into()));
        }
        let sides: Vec<(usize, bool)> = around.iter().map(|&(e, is_in)| (e, is_in)).collect();
        faces.push(TriFace { sides, tag: FaceTag::Op(op) });
    }
    Ok(DualMap { num_vertices: trace.face_count, edges, faces, virt })
}

/// Inserts the apex vertex into the global product's triangle and
/// retags, producing the full triangulation.
fn augment(d: DualMap, n: usize) -> Result<Triangulation> {
    let DualMap { num_vertices, mut edges, mut faces, virt } = d;
    // The host face crosses the virtual dual backwards (it is the
    // tail-operator's triangle, i.e. the global product's).
    let host = faces
        .iter()
        .position(|f| f.sides.contains(&(virt, false)))
        .ok_or_else(|| Error::Duality("no face crosses the virtual dual backward".into()))?;
    let host_face = faces.remove(host);
    let host_tag = host_face.tag;
    // Rotate sides so the virtual dual comes first; the walk then runs
    // E -> W across it, W -> x across the second side, x -> E across the
    // third.
    let vpos = host_face
        .sides
        .iter()
        .position(|&(e, _)| e == virt)
        .expect("host face has the virtual side");
    let mut sides = host_face.sides.clone();
    sides.rotate_left(vpos);
    let (s_virt, s_a, s_b) = (sides[0], sides[1], sides[2]);
    let w_vertex = host_face_exit(&s_virt, &edges);
    let x_vertex = host_face_exit(&s_a, &edges);
    let e_vertex = host_face_exit(&s_b, &edges);

    let apex = num_vertices;
    let root = edges.len();
    edges.push(TriEdge { tail: w_vertex, head: apex });
    let e_em = edges.len();
    edges.push(TriEdge { tail: e_vertex, head: apex });
    let e_xm = edges.len();
    edges.push(TriEdge { tail: x_vertex, head: apex });

    // North triangle over the virtual side, south over the next side,
    // the operator keeps the last one.
    faces.push(TriFace {
        sides: vec![s_virt, (root, true), (e_em, false)],
        tag: FaceTag::North,
    });
    faces.push(TriFace {
        sides: vec![s_a, (e_xm, true), (root, false)],
        tag: FaceTag::South,
    });
    faces.push(TriFace {
        sides: vec![s_b, (e_em, true), (e_xm, false)],
        tag: host_tag,
    });

    Ok(Triangulation {
        n,
        num_vertices: num_vertices + 1,
        edges,
        faces,
        root_edge: root,
    })
}

fn host_face_exit(side: &(usize, bool), edges: &[TriEdge]) -> usize {
    let (e, fwd) = *side;
    if fwd {
        edges[e].head
    } else {
        edges[e].tail
    }
}

/// Removes the apex again: returns the dual map and the id of the
/// virtual-dual edge. Edge ids below `virt` are unchanged.
fn un_augment(tr: &Triangulation) -> Result<DualMap> {
    let v = tr.validate();
    if !v.is_valid() {
        return Err(Error::Duality("not a valid triangulation".into()));
    }
    if tr.n == 0 {
        return Err(Error::Duality("size-0 triangulation has no dual map".into()));
    }
    let apex = tr.edges[tr.root_edge].head;
    // The three faces and edges at the apex.
    let apex_edges: Vec<usize> = (0..tr.edges.len())
        .filter(|&e| tr.edges[e].tail == apex || tr.edges[e].head == apex)
        .collect();
    if apex_edges.len() != 3 {
        return Err(Error::Duality("root head is not a degree-3 apex".into()));
    }
    let mut outer_sides = Vec::new();
    let mut host_tag = None;
    let mut faces = Vec::new();
    for f in &tr.faces {
        let touches = f
            .sides
            .iter()
            .any(|(e, _)| apex_edges.contains(e));
        if !touches {
            faces.push(f.clone());
            continue;
        }
        // exactly one side avoids the apex
        let outer: Vec<(usize, bool)> = f
            .sides
            .iter()
            .copied()
            .filter(|(e, _)| !apex_edges.contains(e))
            .collect();
        if outer.len() != 1 {
            return Err(Error::Duality("apex face with unexpected shape".into()));
        }
        outer_sides.push(outer[0]);
        if let FaceTag::Op(_) = f.tag {
            host_tag = Some(f.tag);
        }
    }
    if outer_sides.len() != 3 {
        return Err(Error::Duality("apex not surrounded by three faces".into()));
    }
    let host_tag = host_tag.ok_or_else(|| Error::Duality("no operator face at apex".into()))?;
    // Chain the three sides into a consistent walk.
    let mut ordered = vec![outer_sides[0]];
    outer_sides.remove(0);
    while !outer_sides.is_empty() {
        let last = *ordered.last().unwrap();
        let exit = host_face_exit(&last, &tr.edges);
        let next = outer_sides
            .iter()
            .position(|s| {
                let (e, fwd) = *s;
                let entry = if fwd { tr.edges[e].tail } else { tr.edges[e].head };
                entry == exit
            })
            .ok_or_else(|| Error::Duality("apex faces do not chain".into()))?;
        ordered.push(outer_sides.remove(next));
    }
    faces.push(TriFace { sides: ordered, tag: host_tag });

    // Drop the apex edges, compacting ids (they are the largest three by
    // construction; handle the general case with a remap).
    let mut remap = vec![usize::MAX; tr.edges.len()];
    let mut edges = Vec::new();
    for (i, e) in tr.edges.iter().enumerate() {
        if apex_edges.contains(&i) {
            continue;
        }
        remap[i] = edges.len();
        edges.push(*e);
    }
    for f in &mut faces {
        for s in &mut f.sides {
            s.0 = remap[s.0];
            debug_assert!(s.0 != usize::MAX);
        }
    }
    // Vertices: apex must be the largest id to keep others stable.
    let num_vertices = tr.num_vertices - 1;
    if tr.edges.iter().enumerate().any(|(i, e)| {
        !apex_edges.contains(&i) && (e.tail >= num_vertices || e.head >= num_vertices)
    }) {
        return Err(Error::Duality("apex is not the last vertex".into()));
    }
    // The virtual dual: the unique edge bordered forward by a face that
    // also borders... simpler: it is the outer side of the north face.
    let north_outer = tr
        .faces
        .iter()
        .find(|f| f.tag == FaceTag::North)
        .and_then(|f| {
            f.sides
                .iter()
                .copied()
                .find(|(e, _)| !apex_edges.contains(e))
        })
        .ok_or_else(|| Error::Duality("no north triangle".into()))?;
    Ok(DualMap { num_vertices, edges, faces, virt: remap[north_outer.0] })
}

// ---------------------------------------------------------------------------
// Public operations.

/// The rooted bipolar triangulation dual to `p`.
pub fn prograph_to_triangulation(p: &Prograph) -> Result<Triangulation> {
    let report = p.validate();
    if !report.is_valid() {
        return Err(Error::InvalidPrograph(
            report.first_failure().unwrap_or("unknown").into(),
        ));
    }
    if p.n == 0 {
        // Two triangles glued along their boundary: W -> E across the
        // lone dual edge, apex below.
        let edges = vec![
            TriEdge { tail: 0, head: 1 }, // virtual dual, W -> E
            TriEdge { tail: 0, head: 2 }, // root
            TriEdge { tail: 1, head: 2 },
        ];
        let faces = vec![
            TriFace { sides: vec![(0, false), (1, true), (2, false)], tag: FaceTag::North },
            TriFace { sides: vec![(0, true), (2, true), (1, false)], tag: FaceTag::South },
        ];
        return Ok(Triangulation { n: 0, num_vertices: 3, edges, faces, root_edge: 1 });
    }
    let d = build_dual(p)?;
    let tr = augment(d, p.n)?;
    debug_assert!(tr.is_valid(), "dual failed validation");
    Ok(tr)
}

/// Inverse of [`prograph_to_triangulation`] up to isomorphism: one
/// operator per non-pole triangle, kinds from the side orientations,
/// ports from the rotation order.
pub fn triangulation_to_prograph(tr: &Triangulation) -> Result<Prograph> {
    let v = tr.validate();
    if !v.is_valid() {
        return Err(Error::Duality("not a valid bipolar triangulation".into()));
    }
    if tr.n == 0 || tr.faces.len() == 2 {
        return Ok(Prograph::empty());
    }
    let d = un_augment(tr)?;
    dual_to_prograph(&d)
}

/// Decodes a dual map back into a prograph.
fn dual_to_prograph(d: &DualMap) -> Result<Prograph> {
    let m = d.faces.len();
    if m % 2 != 0 {
        return Err(Error::Duality("odd number of operator triangles".into()));
    }
    let n = m / 2;
    // For every face: kind and the role of each side.
    // cop: cyclic [in, right-out, left-out]; prod: [out, left-in, right-in].
    let mut kinds = Vec::with_capacity(m);
    let mut roles: Vec<BTreeMap<usize, (bool, u8)>> = Vec::with_capacity(m);
    for f in &d.faces {
        if f.sides.len() != 3 {
            return Err(Error::Duality("non-triangular operator face".into()));
        }
        let fwd_count = f.sides.iter().filter(|(_, fw)| *fw).count();
        let mut role = BTreeMap::new();
        match fwd_count {
            1 => {
                kinds.push(OpKind::Coproduct);
                let a = f.sides.iter().position(|(_, fw)| *fw).unwrap();
                role.insert(f.sides[a].0, (true, 0)); // input
                role.insert(f.sides[(a + 1) % 3].0, (false, 1)); // right out
                role.insert(f.sides[(a + 2) % 3].0, (false, 0)); // left out
            }
            2 => {
                kinds.push(OpKind::Product);
                let a = f.sides.iter().position(|(_, fw)| !*fw).unwrap();
                role.insert(f.sides[a].0, (false, 0)); // output
                role.insert(f.sides[(a + 1) % 3].0, (true, 0)); // left in
                role.insert(f.sides[(a + 2) % 3].0, (true, 1)); // right in
            }
            _ => {
                return Err(Error::Duality(
                    "face orientation matches no operator kind".into(),
                ));
            }
        }
        roles.push(role);
    }
    // Each dual edge joins the face crossing it backward (source
    // operator) to the face crossing it forward (target operator).
    let mut edges = vec![
        PEdge { from: (usize::MAX, 0), to: (usize::MAX, 0) };
        d.edges.len()
    ];
    for (op, f) in d.faces.iter().enumerate() {
        for &(e, fw) in &f.sides {
            if e == d.virt {
                continue;
            }
            let (is_in, slot) = roles[op][&e];
            if fw != is_in {
                return Err(Error::Duality("side direction disagrees with role".into()));
            }
            if is_in {
                edges[e].to = (op, slot);
            } else {
                edges[e].from = (op, slot);
            }
        }
    }
    let edges: Vec<PEdge> = edges
        .into_iter()
        .enumerate()
        .filter(|(i, _)| *i != d.virt)
        .map(|(_, e)| e)
        .collect();
    if edges.iter().any(|e| e.from.0 == usize::MAX || e.to.0 == usize::MAX) {
        return Err(Error::Duality("dual edge with a missing endpoint".into()));
    }
    let p = Prograph { n, kinds, edges };
    let report = p.validate();
    if !report.is_valid() {
        return Err(Error::Duality(format!(
            "decoded prograph fails {}",
            report.first_failure().unwrap_or("validation")
        )));
    }
    Ok(p)
}

/// The primal edge type of a triangulation edge, read off the two
/// incident operator triangles. Errors on the root, apex and
/// virtual-dual edges (they cross no classified primal edge).
pub fn classify_dual_edge(tr: &Triangulation, edge: usize) -> Result<EdgeType> {
    if edge >= tr.edges.len() {
        return Err(Error::UnknownEdge(format!("edge index {edge}")));
    }
    let d = un_augment(tr)?;
    if edge >= d.edges.len() {
        return Err(Error::Duality("edge belongs to the apex, not the dual".into()));
    }
    if edge == d.virt {
        return Err(Error::Duality("virtual dual edge has no type".into()));
    }
    classify_in_dual(&d, edge)
}

fn classify_in_dual(d: &DualMap, edge: usize) -> Result<EdgeType> {
    let p = dual_to_prograph(d)?;
    // Edge ids in the decoded prograph: dual edge e maps to primal edge
    // e, except everything after the virtual dual shifts down by one.
    let primal = if edge > d.virt { edge - 1 } else { edge };
    p.classify_edge(primal)
}

/// Why an edge cannot be flipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlipObstruction {
    RootEdge,
    PoleAdjacent,
    SharedTwoEdges,
    Orientation(EdgeType),
}

impl std::fmt::Display for FlipObstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FlipObstruction::RootEdge => write!(f, "the root edge is never flipped"),
            FlipObstruction::PoleAdjacent => {
                write!(f, "edge borders a pole triangle")
            }
            FlipObstruction::SharedTwoEdges => {
                write!(f, "incident triangles share two edges, no quadrilateral")
            }
            FlipObstruction::Orientation(t) => {
                write!(f, "type {t} edges do not flip forward")
            }
        }
    }
}

/// Checks whether `edge` admits a forward flip. The apex edges and the
/// dual of the virtual connection never do (they bound pole triangles);
/// everything else is decided on the underlying dual map, where each
/// edge separates two operator triangles.
pub fn flip_obstruction(tr: &Triangulation, edge: usize) -> Result<Option<FlipObstruction>> {
    if edge >= tr.edges.len() {
        return Err(Error::UnknownEdge(format!("edge index {edge}")));
    }
    if edge == tr.root_edge {
        return Ok(Some(FlipObstruction::RootEdge));
    }
    if tr.n == 0 {
        return Ok(Some(FlipObstruction::PoleAdjacent));
    }
    let apex = tr.edges[tr.root_edge].head;
    if tr.edges[edge].tail == apex || tr.edges[edge].head == apex {
        return Ok(Some(FlipObstruction::PoleAdjacent));
    }
    let d = un_augment(tr)?;
    if edge == d.virt {
        return Ok(Some(FlipObstruction::PoleAdjacent));
    }
    // Shared-edge count between the two incident operator triangles.
    let incident: Vec<&TriFace> = d
        .faces
        .iter()
        .filter(|f| f.sides.iter().any(|(e, _)| *e == edge))
        .collect();
    let shared = {
        let a: Vec<usize> = incident[0].sides.iter().map(|(e, _)| *e).collect();
        incident[1].sides.iter().filter(|(e, _)| a.contains(e)).count()
    };
    if shared > 1 {
        return Ok(Some(FlipObstruction::SharedTwoEdges));
    }
    let ty = classify_in_dual(&d, edge)?;
    if RotationRule::for_type(ty).is_none() {
        return Ok(Some(FlipObstruction::Orientation(ty)));
    }
    Ok(None)
}

/// True iff the edge can be flipped forward.
pub fn flippable(tr: &Triangulation, edge: usize) -> Result<bool> {
    Ok(flip_obstruction(tr, edge)?.is_none())
}

/// Flips `edge`: the diagonal of the quadrilateral formed by its two
/// triangles is replaced by the other diagonal, oriented by the rotation
/// rule of the dual prograph edge. Edge ids are preserved.
pub fn flip_edge(tr: &Triangulation, edge: usize) -> Result<Triangulation> {
    if let Some(obstruction) = flip_obstruction(tr, edge)? {
        return Err(Error::Duality(format!("edge {edge} not flippable: {obstruction}")));
    }
    let mut d = un_augment(tr)?;
    let ty = classify_in_dual(&d, edge)?;

    let a_pos = d
        .faces
        .iter()
        .position(|f| f.sides.contains(&(edge, false)))
        .ok_or_else(|| Error::Duality("no backward face".into()))?;
    let b_pos = d
        .faces
        .iter()
        .position(|f| f.sides.contains(&(edge, true)))
        .ok_or_else(|| Error::Duality("no forward face".into()))?;

    let rotate_from = |f: &TriFace, e: usize| -> Vec<(usize, bool)> {
        let k = f.sides.iter().position(|(x, _)| *x == e).unwrap();
        let mut s = f.sides.clone();
        s.rotate_left(k);
        s
    };
    // Walks minus the flipped side. T_a runs tail -> x -> head, T_b runs
    // head -> y -> tail.
    let sa = rotate_from(&d.faces[a_pos], edge); // [e(bwd), t->x, x->h]
    let sb = rotate_from(&d.faces[b_pos], edge); // [e(fwd), h->y, y->t]
    let (s_tx, s_xh) = (sa[1], sa[2]);
    let (s_hy, s_yt) = (sb[1], sb[2]);
    let x = host_face_exit(&s_tx, &d.edges);
    let y = host_face_exit(&s_hy, &d.edges);

    // Same-kind pairs (IV and VIII) point the new diagonal from the
    // tail triangle's far corner to the head triangle's; the mixed
    // pairs (III, VII) the other way round.
    let same_kind = matches!(ty, EdgeType::IV | EdgeType::VIII);
    let new_edge = if same_kind {
        TriEdge { tail: x, head: y }
    } else {
        TriEdge { tail: y, head: x }
    };
    let tag_a = d.faces[a_pos].tag;
    let tag_b = d.faces[b_pos].tag;
    // Rule A keeps the tail operator on the tail-corner face; the other
    // three rules swap the two operators across the quad.
    let (tag_t_face, tag_h_face) = if ty == EdgeType::IV {
        (tag_a, tag_b)
    } else {
        (tag_b, tag_a)
    };

    d.edges[edge] = new_edge;
    let face_h = TriFace {
        sides: vec![s_xh, s_hy, (edge, !same_kind)],
        tag: tag_h_face,
    };
    let face_t = TriFace {
        sides: vec![s_yt, s_tx, (edge, same_kind)],
        tag: tag_t_face,
    };
    let (hi, lo) = if a_pos > b_pos { (a_pos, b_pos) } else { (b_pos, a_pos) };
    d.faces.remove(hi);
    d.faces.remove(lo);
    d.faces.push(face_h);
    d.faces.push(face_t);

    let out = augment(d, tr.n)?;
    debug_assert!(out.is_valid(), "flip broke the triangulation");
    Ok(out)
}

/// The antipodal map with renamed poles: reverses every edge and
/// exchanges the pole markers. The boundary walks are untouched; since
/// every arrow flips, each crossing flag flips with it, which realizes
/// the left-right exchange relative to the flow. Equals conjugating the
/// half-turn involution through duality.
pub fn antipodal_involution(tr: &Triangulation) -> Result<Triangulation> {
    if tr.n == 0 {
        return Ok(tr.clone());
    }
    let d = un_augment(tr)?;
    let edges: Vec<TriEdge> = d
        .edges
        .iter()
        .map(|e| TriEdge { tail: e.head, head: e.tail })
        .collect();
    let faces: Vec<TriFace> = d
        .faces
        .iter()
        .map(|f| TriFace {
            sides: f.sides.iter().map(|&(e, fw)| (e, !fw)).collect(),
            tag: f.tag,
        })
        .collect();
    let rd = DualMap { num_vertices: d.num_vertices, edges, faces, virt: d.virt };
    augment(rd, tr.n)
}

/// Two triangulations are equivalent iff their prographs carry the same
/// standard tableau.
pub fn triangulations_equivalent(a: &Triangulation, b: &Triangulation) -> Result<bool> {
    Ok(dual_tableau(a)? == dual_tableau(b)?)
}

/// The tableau of the prograph dual to `tr`.
pub fn dual_tableau(tr: &Triangulation) -> Result<StandardTableau> {
    crate::bijection::prograph_to_tableau(&triangulation_to_prograph(tr)?)
}
