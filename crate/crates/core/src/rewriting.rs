//! The four oriented rotation rules on PC prographs.
//!
//! Each rule is a local two-operator rewrite keyed to the type of an
//! internal edge; the four boundary wires keep their attachment points
//! and left-to-right order.
//!
//! * A: IV -> I, rotation of two stacked coproducts (coassociativity);
//! * B: VIII -> IX, rotation of two stacked products (associativity);
//! * C: III -> VII, a coproduct left output feeding a product right
//!   input rewires to the product feeding the coproduct;
//! * D: VII -> V, a product feeding a coproduct rewires to the
//!   coproduct's right output feeding the product's left input.
//!
//! Types I, V and IX are the reduced targets; II and VI admit no rule
//! (rewiring them would close a cycle).

use std::collections::BTreeMap;

use crate::prograph::{EdgeType, Prograph};
use crate::{Error, Result};

/// The four rotation rules, named by their source and target edge type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RotationRule {
    /// IV -> I
    A,
    /// VIII -> IX
    B,
    /// III -> VII
    C,
    /// VII -> V
    D,
}

impl RotationRule {
    pub const ALL: [RotationRule; 4] =
        [RotationRule::A, RotationRule::B, RotationRule::C, RotationRule::D];

    /// Edge type the rule consumes.
    pub fn source_type(self) -> EdgeType {
        match self {
            RotationRule::A => EdgeType::IV,
            RotationRule::B => EdgeType::VIII,
            RotationRule::C => EdgeType::III,
            RotationRule::D => EdgeType::VII,
        }
    }

    /// Edge type the rewritten edge acquires.
    pub fn target_type(self) -> EdgeType {
        match self {
            RotationRule::A => EdgeType::I,
            RotationRule::B => EdgeType::IX,
            RotationRule::C => EdgeType::VII,
            RotationRule::D => EdgeType::V,
        }
    }

    /// The rule applying to an edge of the given type, if any.
    pub fn for_type(t: EdgeType) -> Option<RotationRule> {
        match t {
            EdgeType::IV => Some(RotationRule::A),
            EdgeType::VIII => Some(RotationRule::B),
            EdgeType::III => Some(RotationRule::C),
            EdgeType::VII => Some(RotationRule::D),
            _ => None,
        }
    }
}

impl std::fmt::Display for RotationRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RotationRule::A => "A",
            RotationRule::B => "B",
            RotationRule::C => "C",
            RotationRule::D => "D",
        })
    }
}

impl std::str::FromStr for RotationRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(RotationRule::A),
            "B" | "b" => Ok(RotationRule::B),
            "C" | "c" => Ok(RotationRule::C),
            "D" | "d" => Ok(RotationRule::D),
            other => Err(Error::Rewrite(format!("no rule named {other:?}"))),
        }
    }
}

/// All (edge, rule) pairs applicable in `p`: every internal edge of type
/// IV, VIII, III or VII paired with its unique rule.
pub fn applicable_rules(p: &Prograph) -> Vec<(usize, RotationRule)> {
    (0..p.edges.len())
        .filter_map(|i| {
            let t = p.classify_edge(i).ok()?;
            RotationRule::for_type(t).map(|r| (i, r))
        })
        .collect()
}

/// Applies one rotation. The rewritten edge keeps its index in the edge
/// list and afterwards classifies as the rule's target type.
pub fn apply_rotation(p: &Prograph, edge: usize, rule: RotationRule) -> Result<Prograph> {
    let ty = p.classify_edge(edge)?;
    if ty != rule.source_type() {
        return Err(Error::Rewrite(format!(
            "rule {rule} expects a type {} edge, edge {edge} has type {ty}",
            rule.source_type()
        )));
    }
    let maps = p
        .port_maps()
        .ok_or_else(|| Error::InvalidPrograph("port structure".into()))?;
    let mut q = p.clone();
    let e = p.edges[edge];
    let (a, _) = e.from;
    let (b, _) = e.to;

    // Helper lookups on the original prograph.
    let out_edge = |op: usize, slot: u8| maps.out[op][slot as usize];
    let in_edge = |op: usize, slot: u8| maps.inp[op][slot as usize];

    match rule {
        RotationRule::A => {
            // a = lower coproduct, b = upper coproduct on a's right output.
            // After: b takes a's input, sends a from its left output, and
            // the three output wires keep their targets left to right.
            let ei = in_edge(a, 0);
            let ew = out_edge(a, 0).expect("cop left output");
            let ex = out_edge(b, 0).expect("cop left output");
            let ey = out_edge(b, 1).expect("cop right output");
            if let Some(ei) = ei {
                q.edges[ei].to = (b, 0);
            }
            q.edges[edge] = crate::prograph::PEdge { from: (b, 0), to: (a, 0) };
            q.edges[ew].from = (a, 0);
            q.edges[ex].from = (a, 1);
            q.edges[ey].from = (b, 1);
        }
        RotationRule::B => {
            // a = lower product feeding b's left input.
            // After: b.left takes a's old left source, a feeds b.right,
            // and a's inputs shift to (old right source, b's old right).
            let eu = in_edge(a, 0).expect("product left input");
            let ev = in_edge(a, 1).expect("product right input");
            let ew = in_edge(b, 1).expect("product right input");
            q.edges[eu].to = (b, 0);
            q.edges[edge] = crate::prograph::PEdge { from: (a, 0), to: (b, 1) };
            q.edges[ev].to = (a, 0);
            q.edges[ew].to = (a, 1);
        }
        RotationRule::C => {
            // a = coproduct whose left output feeds product b's right
            // input. After: b absorbs a's input as its right input and
            // feeds a, whose left output takes b's old target.
            let ei = in_edge(a, 0).ok_or_else(|| {
                Error::Rewrite("type III edge out of the global input coproduct".into())
            })?;
            let eo = out_edge(b, 0);
            q.edges[ei].to = (b, 1);
            q.edges[edge] = crate::prograph::PEdge { from: (b, 0), to: (a, 0) };
            if let Some(eo) = eo {
                q.edges[eo].from = (a, 0);
            } else {
                // b was the global output; a coproduct cannot take that
                // role, and planarity rules this case out entirely.
                return Err(Error::Rewrite(
                    "type III edge into the global output product".into(),
                ));
            }
            // a's right output keeps its target.
        }
        RotationRule::D => {
            // a = product feeding coproduct b. After: b sits on a's old
            // left source, b's right output feeds a's left input, and a
            // takes over b's old right target.
            let ea = in_edge(a, 0).expect("product left input");
            let eo2 = out_edge(b, 1).expect("cop right output");
            q.edges[ea].to = (b, 0);
            q.edges[edge] = crate::prograph::PEdge { from: (b, 1), to: (a, 0) };
            q.edges[eo2].from = (a, 0);
            // b's left output and a's right input keep their wiring.
        }
    }

    debug_assert!(q.is_valid(), "rotation produced an invalid prograph");
    Ok(q)
}

/// All one-step successors of `p` under the selected rules, deduplicated
/// by canonical code and sorted by it.
pub fn successors_via(p: &Prograph, rules: &[RotationRule]) -> Vec<Prograph> {
    let mut seen: BTreeMap<String, Prograph> = BTreeMap::new();
    for (edge, rule) in applicable_rules(p) {
        if !rules.contains(&rule) {
            continue;
        }
        let q = apply_rotation(p, edge, rule).expect("applicable pair");
        let code = q.canonical_code().expect("valid rewrite image");
        seen.entry(code).or_insert(q);
    }
    seen.into_values().collect()
}

/// Successors under all four rules.
pub fn successors(p: &Prograph) -> Vec<Prograph> {
    successors_via(p, &RotationRule::ALL)
}

/// Exhaustive closure of `p` under the four rules, collecting
/// rewrite-reachable prographs with no applicable rule. `limit` bounds
/// the number of rewrite applications; exceeding it yields
/// [`Error::BudgetExhausted`] carrying the normal forms found so far.
pub fn reduce_to_normal_forms(p: &Prograph, limit: usize) -> Result<Vec<Prograph>> {
    let mut visited: BTreeMap<String, Prograph> = BTreeMap::new();
    let mut queue = vec![p.clone()];
    visited.insert(p.canonical_code()?, p.clone());
    let mut normals: BTreeMap<String, Prograph> = BTreeMap::new();
    let mut steps = 0usize;
    while let Some(cur) = queue.pop() {
        let pairs = applicable_rules(&cur);
        if pairs.is_empty() {
            normals.insert(cur.canonical_code()?, cur);
            continue;
        }
        for (edge, rule) in pairs {
            steps += 1;
            if steps > limit {
                return Err(Error::BudgetExhausted {
                    partial: normals.keys().cloned().collect(),
                });
            }
            let q = apply_rotation(&cur, edge, rule)?;
            let code = q.canonical_code()?;
            if !visited.contains_key(&code) {
                visited.insert(code, q.clone());
                queue.push(q);
            }
        }
    }
    Ok(normals.into_values().collect())
}
