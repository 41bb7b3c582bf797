//! The central bijection between 3×n standard tableaux and size-n PC
//! prographs.
//!
//! Forward direction: process the entries 1..=3n in increasing order
//! over an ordered frontier of open wires, starting from the lone global
//! input wire.
//!
//! * a bottom-row entry applies a new coproduct to the leftmost
//!   unmarked wire, replacing it in place by the coproduct's two output
//!   wires;
//! * a middle-row entry marks the leftmost unmarked wire as the left
//!   input of a new product;
//! * a top-row entry closes the most recently opened product, consuming
//!   its marked wire together with the wire immediately to its right and
//!   pushing the product's output wire in place.
//!
//! Marked wires always form a prefix of the frontier, so the state is a
//! pair of stacks: open products on one side, unmarked wires on the
//! other. The inverse replays a prograph's construction events in
//! temporal order and records each event's index into the row determined
//! by its kind, which makes the round trip exact by construction.

use crate::prograph::{OpKind, PEdge, Prograph};
use crate::tableaux::StandardTableau;
use crate::{Error, Result};

/// Builds the prograph of a standard tableau.
pub fn tableau_to_prograph(t: &StandardTableau) -> Result<Prograph> {
    if !t.validate() {
        return Err(Error::InvalidTableau(t.compact()));
    }
    let n = t.n;
    if n == 0 {
        return Ok(Prograph::empty());
    }
    let mut row_of = vec![usize::MAX; 3 * n + 1];
    for (r, row) in t.rows.iter().enumerate() {
        for &v in row {
            row_of[v as usize] = r;
        }
    }

    let mut kinds: Vec<OpKind> = Vec::with_capacity(2 * n);
    let mut edges: Vec<PEdge> = Vec::with_capacity(3 * n - 1);
    // Unmarked open wires, leftmost last (stack top = leftmost).
    let mut wires: Vec<Option<(usize, u8)>> = vec![None];
    // Open products, most recent last; each already holds its left input.
    let mut open: Vec<usize> = Vec::new();

    for v in 1..=(3 * n) as u32 {
        match row_of[v as usize] {
            0 => {
                let w = wires
                    .pop()
                    .ok_or_else(|| Error::Bijection(format!("entry {v}: no open wire")))?;
                let id = kinds.len();
                kinds.push(OpKind::Coproduct);
                if let Some(from) = w {
                    edges.push(PEdge { from, to: (id, 0) });
                }
                // A `None` wire is the global input: the coproduct keeps
                // a free input port.
                wires.push(Some((id, 1)));
                wires.push(Some((id, 0)));
            }
            1 => {
                let w = wires
                    .pop()
                    .ok_or_else(|| Error::Bijection(format!("entry {v}: no open wire")))?
                    .ok_or_else(|| {
                        Error::Bijection(format!("entry {v}: global input cannot feed a product"))
                    })?;
                let id = kinds.len();
                kinds.push(OpKind::Product);
                edges.push(PEdge { from: w, to: (id, 0) });
                open.push(id);
            }
            2 => {
                let id = open
                    .pop()
                    .ok_or_else(|| Error::Bijection(format!("entry {v}: no open product")))?;
                let w = wires
                    .pop()
                    .ok_or_else(|| Error::Bijection(format!("entry {v}: no right input wire")))?
                    .ok_or_else(|| {
                        Error::Bijection(format!("entry {v}: global input cannot feed a product"))
                    })?;
                edges.push(PEdge { from: w, to: (id, 1) });
                wires.push(Some((id, 0)));
            }
            _ => unreachable!("validated tableau covers 1..=3n"),
        }
    }

    if wires.len() != 1 || !open.is_empty() {
        return Err(Error::Bijection("construction did not close".into()));
    }
    Ok(Prograph { n, kinds, edges })
}

/// Recovers the tableau of a prograph by replaying its construction.
pub fn prograph_to_tableau(p: &Prograph) -> Result<StandardTableau> {
    let report = p.validate();
    if !report.is_valid() {
        return Err(Error::InvalidPrograph(
            report.first_failure().unwrap_or("unknown").into(),
        ));
    }
    let n = p.n;
    if n == 0 {
        return Ok(StandardTableau::from_rows([vec![], vec![], vec![]]));
    }
    let maps = p.port_maps().expect("valid prograph");
    let g_in = p.global_input().expect("valid prograph");

    let mut rows: [Vec<u32>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut wires: Vec<Option<(usize, u8)>> = vec![None];
    let mut open: Vec<usize> = Vec::new();

    for v in 1..=(3 * n) as u32 {
        let w = *wires
            .last()
            .ok_or_else(|| Error::Bijection(format!("event {v}: no open wire")))?;
        // Where does this wire go in p?
        let (target, slot) = match w {
            None => (g_in, 0),
            Some((op, s)) => {
                let e = maps.out[op][s as usize].ok_or_else(|| {
                    Error::Bijection(format!("event {v}: wire has no continuation"))
                })?;
                (p.edges[e].to.0, p.edges[e].to.1)
            }
        };
        match (p.kinds[target], slot) {
            (OpKind::Coproduct, _) => {
                rows[0].push(v);
                wires.pop();
                wires.push(Some((target, 1)));
                wires.push(Some((target, 0)));
            }
            (OpKind::Product, 0) => {
                rows[1].push(v);
                wires.pop();
                open.push(target);
            }
            (OpKind::Product, _) => {
                let id = open.pop().ok_or_else(|| {
                    Error::Bijection(format!("event {v}: right input with no open product"))
                })?;
                if id != target {
                    return Err(Error::Bijection(format!(
                        "event {v}: wire feeds a product that is not the innermost open one"
                    )));
                }
                rows[2].push(v);
                wires.pop();
                wires.push(Some((target, 0)));
            }
        }
    }

    let t = StandardTableau::from_rows(rows);
    if !t.validate() {
        return Err(Error::Bijection("replay produced a non-standard filling".into()));
    }
    Ok(t)
}
