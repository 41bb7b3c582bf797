//! DOT and TikZ renderers for prographs, triangulations and posets.
//!
//! Drawing conventions: products are squares, coproducts circles, edges
//! flow bottom to top; dual vertices are red diamonds and the root edge
//! is dashed. Poset diagrams point covers downward.

use prographs::duality::{FaceTag, Triangulation};
use prographs::order::Poset;
use prographs::prograph::{OpKind, Prograph};

pub fn dot_prograph(p: &Prograph) -> String {
    let mut out = String::from("digraph prograph {\n  rankdir=BT;\n  edge [arrowsize=0.6];\n");
    out.push_str("  gin [shape=point,label=\"\"];\n  gout [shape=point,label=\"\"];\n");
    for (i, k) in p.kinds.iter().enumerate() {
        let shape = match k {
            OpKind::Product => "square",
            OpKind::Coproduct => "circle",
        };
        out.push_str(&format!("  op{i} [shape={shape},label=\"{i}\"];\n"));
    }
    if let Some(g) = p.global_input() {
        out.push_str(&format!("  gin -> op{g};\n"));
    }
    for e in &p.edges {
        let slot = |s: u8| if s == 0 { "l" } else { "r" };
        out.push_str(&format!(
            "  op{} -> op{} [taillabel=\"{}\",headlabel=\"{}\",fontsize=8];\n",
            e.from.0,
            e.to.0,
            slot(e.from.1),
            slot(e.to.1)
        ));
    }
    if let Some(g) = p.global_output() {
        out.push_str(&format!("  op{g} -> gout;\n"));
    }
    out.push_str("}\n");
    out
}

pub fn dot_triangulation(tr: &Triangulation) -> String {
    let mut out = String::from("digraph triangulation {\n  edge [arrowsize=0.6];\n");
    let root = tr.edges[tr.root_edge];
    for v in 0..tr.num_vertices {
        let pole = v == root.tail || v == root.head;
        let style = if pole {
            ",style=filled,fillcolor=salmon,peripheries=2"
        } else {
            ""
        };
        out.push_str(&format!("  v{v} [shape=diamond,color=red{style}];\n"));
    }
    for (i, e) in tr.edges.iter().enumerate() {
        let style = if i == tr.root_edge { " [style=dashed,penwidth=2]" } else { "" };
        out.push_str(&format!("  v{} -> v{}{style};\n", e.tail, e.head));
    }
    for f in &tr.faces {
        let tag = match f.tag {
            FaceTag::North => "north_pole".to_string(),
            FaceTag::South => "south_pole".to_string(),
            FaceTag::Op(k) => format!("op {k}"),
        };
        let sides: Vec<String> = f.sides.iter().map(|(e, _)| e.to_string()).collect();
        out.push_str(&format!("  // face [{}] = {}\n", sides.join(","), tag));
    }
    out.push_str("}\n");
    out
}

pub fn dot_poset(p: &Poset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=TB;\n  node [shape=box,fontsize=9];\n");
    for (i, label) in p.labels.iter().enumerate() {
        out.push_str(&format!("  e{i} [label=\"{}\"];\n", label.replace('"', "'")));
    }
    for (u, v) in &p.covers {
        out.push_str(&format!("  e{u} -> e{v};\n"));
    }
    out.push_str("}\n");
    out
}

/// Layered coordinates: y from the longest path below, x by order
/// within the layer.
fn layers(count: usize, depth: &[usize]) -> Vec<(f32, f32)> {
    let mut by_layer: Vec<Vec<usize>> = Vec::new();
    for i in 0..count {
        let d = depth[i];
        if by_layer.len() <= d {
            by_layer.resize(d + 1, Vec::new());
        }
        by_layer[d].push(i);
    }
    let mut pos = vec![(0f32, 0f32); count];
    for (y, layer) in by_layer.iter().enumerate() {
        let w = layer.len() as f32;
        for (k, &i) in layer.iter().enumerate() {
            pos[i] = (k as f32 - (w - 1.0) / 2.0, y as f32);
        }
    }
    pos
}

pub fn tikz_prograph(p: &Prograph) -> String {
    // Longest-path depth over operators.
    let m = p.kinds.len();
    let mut depth = vec![0usize; m];
    let order = match p.boriefication() {
        Ok(labels) => {
            let mut idx: Vec<usize> = (0..m).collect();
            idx.sort_by_key(|&i| labels[i]);
            idx
        }
        Err(_) => (0..m).collect(),
    };
    for &op in &order {
        for e in &p.edges {
            if e.to.0 == op {
                depth[op] = depth[op].max(depth[e.from.0] + 1);
            }
        }
    }
    let pos = layers(m, &depth);
    let mut out = String::new();
    out.push_str("% styles: prod = filled square, cop = filled circle\n");
    out.push_str("\\begin{tikzpicture}[scale=0.8,\n");
    out.push_str("  prod/.style={fill,draw,rectangle,minimum size=5pt,inner sep=1pt},\n");
    out.push_str("  cop/.style={fill,draw,circle,minimum size=6pt,inner sep=1pt}]\n");
    for (i, k) in p.kinds.iter().enumerate() {
        let style = match k {
            OpKind::Product => "prod",
            OpKind::Coproduct => "cop",
        };
        out.push_str(&format!(
            "  \\node[{style}] (op{i}) at ({:.2},{:.2}) {{}};\n",
            pos[i].0 * 1.4,
            pos[i].1 * 1.2
        ));
    }
    for e in &p.edges {
        out.push_str(&format!("  \\draw (op{}) -- (op{});\n", e.from.0, e.to.0));
    }
    if let Some(g) = p.global_input() {
        out.push_str(&format!(
            "  \\draw (op{g}) -- ++(0,-0.6);\n"
        ));
    }
    if let Some(g) = p.global_output() {
        out.push_str(&format!("  \\draw (op{g}) -- ++(0,0.6);\n"));
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

pub fn tikz_triangulation(tr: &Triangulation) -> String {
    // Circular layout; purely combinatorial data, so geometry is only
    // indicative.
    let nv = tr.num_vertices;
    let mut out = String::new();
    out.push_str("\\begin{tikzpicture}[scale=1.2,\n");
    out.push_str("  vor/.style={red,fill=red,draw,diamond,minimum size=6pt,inner sep=1pt}]\n");
    for v in 0..nv {
        let ang = 360.0 * v as f32 / nv as f32;
        out.push_str(&format!(
            "  \\node[vor] (v{v}) at ({ang:.1}:2) {{}};\n"
        ));
    }
    for (i, e) in tr.edges.iter().enumerate() {
        let style = if i == tr.root_edge { "[->,red,dashed,thick]" } else { "[->,red]" };
        out.push_str(&format!("  \\draw{style} (v{}) -- (v{});\n", e.tail, e.head));
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

pub fn tikz_poset(p: &Poset) -> String {
    // Height = longest chain below.
    let m = p.len();
    let mut height = vec![0usize; m];
    let mut changed = true;
    while changed {
        changed = false;
        for &(u, v) in &p.covers {
            if height[u] < height[v] + 1 {
                height[u] = height[v] + 1;
                changed = true;
            }
        }
    }
    let pos = layers(m, &height);
    let mut out = String::new();
    out.push_str("\\begin{tikzpicture}[scale=1.0]\n");
    for (i, label) in p.labels.iter().enumerate() {
        out.push_str(&format!(
            "  \\node[font=\\tiny] (e{i}) at ({:.2},{:.2}) {{{}}};\n",
            pos[i].0 * 2.2,
            pos[i].1 * 1.4,
            label.replace('|', "/")
        ));
    }
    for (u, v) in &p.covers {
        out.push_str(&format!("  \\draw[->] (e{u}) -- (e{v});\n"));
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}
