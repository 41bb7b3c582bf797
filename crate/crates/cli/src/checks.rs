//! The check-all battery: the crate's structural invariants as a
//! deterministic pass/fail table. No timings, no randomness, so two
//! identical invocations print identical bytes.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use prographs::bijection::{prograph_to_tableau, tableau_to_prograph};
use prographs::duality::{
    antipodal_involution, flip_edge, flippable, prograph_to_triangulation,
    triangulation_to_prograph,
};
use prographs::order::{
    build_rotation_poset, glue_trees, poset_isomorphic, product_poset, tamari, Restriction,
};
use prographs::prograph::{enumerate_prographs, EdgeType};
use prographs::rewriting::{applicable_rules, apply_rotation, RotationRule};
use prographs::stats::{a274969, cat_poly, catalan, enumerate_trees, truncated_square_sum};
use prographs::tableaux::{count_3d_catalan, enumerate_tableaux};

pub struct CheckReport {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

fn fail(msg: String) -> Result<(), String> {
    Err(msg)
}

fn check_counting(max_n: usize) -> Result<(), String> {
    for n in 0..=max_n {
        let formula = count_3d_catalan(n);
        let tabs = enumerate_tableaux(n).len();
        let pros = enumerate_prographs(n).len();
        if BigUint::from(tabs) != formula || BigUint::from(pros) != formula {
            return fail(format!("n={n}: tableaux {tabs}, prographs {pros}, formula {formula}"));
        }
    }
    Ok(())
}

fn check_bijection(max_n: usize) -> Result<(), String> {
    for n in 0..=max_n {
        let tabs = enumerate_tableaux(n);
        let mut image = BTreeSet::new();
        for t in &tabs {
            let p = tableau_to_prograph(t).map_err(|e| e.to_string())?;
            if prograph_to_tableau(&p).map_err(|e| e.to_string())? != *t {
                return fail(format!("n={n}: roundtrip broke at {}", t.compact()));
            }
            image.insert(p.canonical_code().map_err(|e| e.to_string())?);
        }
        if image.len() != tabs.len() {
            return fail(format!("n={n}: bijection not injective"));
        }
        let direct: BTreeSet<String> = enumerate_prographs(n)
            .iter()
            .map(|p| p.canonical_code().unwrap())
            .collect();
        if image != direct {
            return fail(format!("n={n}: image differs from direct enumeration"));
        }
    }
    Ok(())
}

fn check_equivariance(max_n: usize) -> Result<(), String> {
    for n in 0..=max_n {
        for t in enumerate_tableaux(n) {
            let lhs = tableau_to_prograph(&t.schuetzenberger())
                .and_then(|p| p.canonical_code())
                .map_err(|e| e.to_string())?;
            let rhs = tableau_to_prograph(&t)
                .map(|p| p.schuetzenberger())
                .and_then(|p| p.canonical_code())
                .map_err(|e| e.to_string())?;
            if lhs != rhs {
                return fail(format!("n={n}: involutions disagree at {}", t.compact()));
            }
        }
    }
    Ok(())
}

fn check_duality(max_n: usize) -> Result<(), String> {
    for n in 0..=max_n {
        for p in enumerate_prographs(n) {
            let tr = prograph_to_triangulation(&p).map_err(|e| e.to_string())?;
            if tr.num_vertices != n + 3 || tr.edges.len() != 3 * n + 3 || tr.faces.len() != 2 * n + 2
            {
                return fail(format!("n={n}: triangulation counts off"));
            }
            if !tr.is_valid() {
                return fail(format!("n={n}: invalid dual"));
            }
            let q = triangulation_to_prograph(&tr).map_err(|e| e.to_string())?;
            if q.canonical_code() != p.canonical_code() {
                return fail(format!("n={n}: duality roundtrip broke"));
            }
        }
    }
    Ok(())
}

fn check_antipodal(max_n: usize) -> Result<(), String> {
    for n in 0..=max_n.min(3) {
        for p in enumerate_prographs(n) {
            let tr = prograph_to_triangulation(&p).map_err(|e| e.to_string())?;
            let anti = antipodal_involution(&tr).map_err(|e| e.to_string())?;
            let again = antipodal_involution(&anti).map_err(|e| e.to_string())?;
            if again.canonical_code() != tr.canonical_code() {
                return fail(format!("n={n}: antipodal map is not an involution"));
            }
            let via = prograph_to_triangulation(&p.schuetzenberger()).map_err(|e| e.to_string())?;
            if anti.canonical_code() != via.canonical_code() {
                return fail(format!("n={n}: antipodal map does not commute with duality"));
            }
        }
    }
    Ok(())
}

fn check_flip_rotation(max_n: usize) -> Result<(), String> {
    for n in 0..=max_n.min(3) {
        for p in enumerate_prographs(n) {
            let tr = prograph_to_triangulation(&p).map_err(|e| e.to_string())?;
            for (edge, rule) in applicable_rules(&p) {
                if !flippable(&tr, edge).map_err(|e| e.to_string())? {
                    return fail(format!("n={n}: dual of rotatable edge {edge} not flippable"));
                }
                let flipped = flip_edge(&tr, edge).map_err(|e| e.to_string())?;
                let rotated = apply_rotation(&p, edge, rule)
                    .and_then(|q| prograph_to_triangulation(&q))
                    .map_err(|e| e.to_string())?;
                if flipped.canonical_code() != rotated.canonical_code() {
                    return fail(format!("n={n}: flip and rotation disagree at edge {edge}"));
                }
            }
        }
    }
    Ok(())
}

fn check_rewriting(max_n: usize) -> Result<(), String> {
    for n in 0..=max_n.min(3) {
        for p in enumerate_prographs(n) {
            for i in 0..p.edges.len() {
                let ty = p.classify_edge(i).map_err(|e| e.to_string())?;
                let has_rule = RotationRule::for_type(ty).is_some();
                if matches!(ty, EdgeType::II | EdgeType::VI) && has_rule {
                    return fail(format!("n={n}: type {ty} claims a rule"));
                }
            }
            for (edge, rule) in applicable_rules(&p) {
                let q = apply_rotation(&p, edge, rule).map_err(|e| e.to_string())?;
                if q.classify_edge(edge).map_err(|e| e.to_string())? != rule.target_type() {
                    return fail(format!("n={n}: rule {rule} missed its target type"));
                }
            }
        }
    }
    // Acyclicity up to max_n: poset construction fails on a cycle.
    for n in 0..=max_n {
        build_rotation_poset(n, &RotationRule::ALL, Restriction::All)
            .map_err(|e| format!("n={n}: {e}"))?;
    }
    Ok(())
}

fn check_posets(max_n: usize) -> Result<(), String> {
    if max_n >= 2 {
        let p2 = build_rotation_poset(2, &RotationRule::ALL, Restriction::All)
            .map_err(|e| e.to_string())?;
        if p2.len() != 5 || p2.covers.len() != 6 || !p2.lattice_check().is_lattice {
            return fail("size-2 poset shape is off".into());
        }
    }
    if max_n >= 3 {
        let p3 = build_rotation_poset(3, &RotationRule::ALL, Restriction::All)
            .map_err(|e| e.to_string())?;
        if p3.len() != 42 || p3.lattice_check().is_lattice {
            return fail("size-3 poset must have 42 elements and no lattice structure".into());
        }
    }
    Ok(())
}

fn check_tamari_product(max_n: usize) -> Result<(), String> {
    for n in 0..=max_n {
        let sub = build_rotation_poset(
            n,
            &[RotationRule::A, RotationRule::B],
            Restriction::AvoidsTypeVii,
        )
        .map_err(|e| e.to_string())?;
        if !sub.lattice_check().is_lattice {
            return fail(format!("n={n}: restricted poset is not a lattice"));
        }
        let t = tamari(n);
        if !poset_isomorphic(&sub, &product_poset(&t, &t)) {
            return fail(format!("n={n}: not the square of the rotation lattice on trees"));
        }
    }
    Ok(())
}

fn check_glue(max_n: usize) -> Result<(), String> {
    for n in 0..=max_n {
        let trees = enumerate_trees(n);
        let mut image = BTreeSet::new();
        for pt in &trees {
            for ct in &trees {
                let g = glue_trees(pt, ct).map_err(|e| e.to_string())?;
                if !g.avoids_type_vii() {
                    return fail(format!("n={n}: glued prograph has a forbidden edge"));
                }
                image.insert(g.canonical_code().map_err(|e| e.to_string())?);
            }
        }
        let c = catalan(n);
        if BigUint::from(image.len()) != c.clone() * &c {
            return fail(format!("n={n}: gluing is not injective"));
        }
        let subset: BTreeSet<String> = enumerate_prographs(n)
            .iter()
            .filter(|p| p.avoids_type_vii())
            .map(|p| p.canonical_code().unwrap())
            .collect();
        if image != subset {
            return fail(format!("n={n}: gluing misses part of the subfamily"));
        }
    }
    Ok(())
}

fn check_statistics(max_n: usize) -> Result<(), String> {
    let table = [
        "1",
        "1",
        "1 + q",
        "1 + 2q + 2q^2",
        "1 + 3q + 5q^2 + 5q^3",
        "1 + 4q + 9q^2 + 14q^3 + 14q^4",
        "1 + 5q + 14q^2 + 28q^3 + 42q^4 + 42q^5",
    ];
    for (n, want) in table.iter().enumerate() {
        if cat_poly(n).to_text() != *want {
            return fail(format!("polynomial table breaks at n={n}"));
        }
    }
    for n in 0..=8 {
        if truncated_square_sum(n) != a274969(n) {
            return fail(format!("truncated square sum differs at n={n}"));
        }
    }
    for n in 0..=max_n {
        let by_tableau = enumerate_tableaux(n).iter().filter(|t| t.coproducts_first()).count();
        let by_labels = enumerate_prographs(n)
            .iter()
            .filter(|p| p.coproducts_first().unwrap_or(false))
            .count();
        if BigUint::from(by_tableau) != a274969(n) || by_labels != by_tableau {
            return fail(format!("coproducts-first counts differ at n={n}"));
        }
    }
    Ok(())
}

/// Runs the whole battery up to `max_n` and reports per-check outcomes
/// in a fixed order.
pub fn run_all(max_n: usize) -> Vec<CheckReport> {
    let checks: Vec<(&'static str, fn(usize) -> Result<(), String>)> = vec![
        ("counting", check_counting),
        ("bijection", check_bijection),
        ("equivariance", check_equivariance),
        ("duality-roundtrip", check_duality),
        ("antipodal-involution", check_antipodal),
        ("flip-rotation", check_flip_rotation),
        ("rewriting-types-and-acyclicity", check_rewriting),
        ("poset-shapes", check_posets),
        ("tamari-product-lattice", check_tamari_product),
        ("tree-gluing", check_glue),
        ("statistics", check_statistics),
    ];
    checks
        .into_iter()
        .map(|(name, f)| CheckReport { name, outcome: f(max_n) })
        .collect()
}
