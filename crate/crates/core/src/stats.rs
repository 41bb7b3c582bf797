//! Binary trees, the dg statistic and the refined Catalan counting.
//!
//! `Cat_n(q)` sums `q^dg(T)` over the binary trees with `n` nodes, where
//! `dg(T)` counts the leaves visited before the last internal node in a
//! depth-left-first traversal. Its coefficients form a Catalan triangle
//! with closed form `C(n,k) = binom(n+k,k) - binom(n+k,k-1)`, and the
//! truncated square of `Cat_n(q)` evaluates to the three-binomial
//! combination `binom(3n,n) - 2 binom(3n,n-1) + binom(3n,n-2)`, the
//! sequence 1, 1, 4, 21, 121, 728, 4488, ...

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A binary tree; `Leaf` is the empty tree of size 0.
///
/// JSON form: a leaf is `null`, a node is `{"left": .., "right": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    left: BinaryTree,
    right: BinaryTree,
}

impl Serialize for BinaryTree {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BinaryTree::Leaf => ser.serialize_none(),
            BinaryTree::Node(l, r) => NodeJson {
                left: l.as_ref().clone(),
                right: r.as_ref().clone(),
            }
            .serialize(ser),
        }
    }
}

impl<'de> Deserialize<'de> for BinaryTree {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let opt = Option::<NodeJson>::deserialize(de)?;
        Ok(match opt {
            None => BinaryTree::Leaf,
            Some(n) => BinaryTree::node(n.left, n.right),
        })
    }
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> BinaryTree {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    pub fn size(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Preorder bitstring, `1` for a node, `0` for a leaf: `"10100"` etc.
    pub fn code(&self) -> String {
        let mut s = String::new();
        fn rec(t: &BinaryTree, s: &mut String) {
            match t {
                BinaryTree::Leaf => s.push('0'),
                BinaryTree::Node(l, r) => {
                    s.push('1');
                    rec(l, s);
                    rec(r, s);
                }
            }
        }
        rec(self, &mut s);
        s
    }

    /// Left-right reflection.
    pub fn mirror(&self) -> BinaryTree {
        match self {
            BinaryTree::Leaf => BinaryTree::Leaf,
            BinaryTree::Node(l, r) => BinaryTree::node(r.mirror(), l.mirror()),
        }
    }
}

/// All binary trees with `n` nodes, sorted by preorder code.
pub fn enumerate_trees(n: usize) -> Vec<BinaryTree> {
    let mut out = trees_rec(n);
    out.sort_by_key(|t| t.code());
    out
}

fn trees_rec(n: usize) -> Vec<BinaryTree> {
    if n == 0 {
        return vec![BinaryTree::Leaf];
    }
    let mut out = Vec::new();
    for ls in 0..n {
        for l in trees_rec(ls) {
            for r in trees_rec(n - 1 - ls) {
                out.push(BinaryTree::node(l.clone(), r));
            }
        }
    }
    out
}

/// The number of disabled grafting sites: leaves visited strictly before
/// the traversal's last internal node, in the depth-left-first traversal
/// that visits a node, then its left subtree, then its right subtree,
/// counting absent children as leaves.
pub fn dg(t: &BinaryTree) -> Result<usize> {
    if matches!(t, BinaryTree::Leaf) {
        return Err(Error::EmptyTree);
    }
    // Record the traversal as node/leaf events, then count leaves before
    // the final node event.
    let mut events = Vec::new();
    fn walk(t: &BinaryTree, events: &mut Vec<bool>) {
        match t {
            BinaryTree::Leaf => events.push(false),
            BinaryTree::Node(l, r) => {
                events.push(true);
                walk(l, events);
                walk(r, events);
            }
        }
    }
    walk(t, &mut events);
    let last_node = events.iter().rposition(|&e| e).expect("non-empty tree");
    Ok(events[..last_node].iter().filter(|&&e| !e).count())
}

/// Dense polynomial in `q` with non-negative integer coefficients,
/// `coeffs[k]` being the coefficient of `q^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolynomial {
    pub coeffs: Vec<BigUint>,
}

/// JSON form `{"coeffs": [c0, c1, ...]}`; coefficients wider than u64
/// travel as decimal strings.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Small(u64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct QPolyJson {
    coeffs: Vec<CoeffJson>,
}

impl Serialize for QPolynomial {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                u64::try_from(c).map_or_else(|_| CoeffJson::Big(c.to_string()), CoeffJson::Small)
            })
            .collect();
        QPolyJson { coeffs }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let doc = QPolyJson::deserialize(de)?;
        let mut coeffs = Vec::with_capacity(doc.coeffs.len());
        for c in doc.coeffs {
            coeffs.push(match c {
                CoeffJson::Small(v) => BigUint::from(v),
                CoeffJson::Big(s) => s
                    .parse::<BigUint>()
                    .map_err(|e| serde::de::Error::custom(format!("coefficient: {e}")))?,
            });
        }
        let mut p = QPolynomial { coeffs };
        p.normalize();
        Ok(p)
    }
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn from_u32(coeffs: &[u32]) -> Self {
        let mut p = QPolynomial { coeffs: coeffs.iter().map(|&c| BigUint::from(c)).collect() };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c == &BigUint::ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or(BigUint::ZERO)
    }

    pub fn mul(&self, other: &QPolynomial) -> QPolynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigUint::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut p = QPolynomial { coeffs };
        p.normalize();
        p
    }

    /// Keeps exponents `<= max_exp` (reduction mod q^(max_exp+1)).
    pub fn truncate(&self, max_exp: usize) -> QPolynomial {
        let mut p = QPolynomial {
            coeffs: self.coeffs.iter().take(max_exp + 1).cloned().collect(),
        };
        p.normalize();
        p
    }

    pub fn eval_at_one(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Renders like `1 + 3q + 5q^2 + 5q^3`; the zero polynomial is `0`.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let one = BigUint::from(1u32);
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c == &BigUint::ZERO {
                continue;
            }
            let t = match k {
                0 => c.to_string(),
                1 if c == &one => "q".to_string(),
                1 => format!("{c}q"),
                _ if c == &one => format!("q^{k}"),
                _ => format!("{c}q^{k}"),
            };
            terms.push(t);
        }
        terms.join(" + ")
    }
}

/// Sizes up to which [`cat_poly`] enumerates trees instead of using the
/// closed form. Catalan(12) is ~200k trees, still instant.
pub const CAT_POLY_ENUM_BOUND: usize = 12;

/// `Cat_n(q)`, the generating polynomial of dg over binary trees with
/// `n` nodes. Enumerative for small `n`, by the Catalan-triangle closed
/// form beyond [`CAT_POLY_ENUM_BOUND`]; the two agree wherever both run
/// (checked in tests).
pub fn cat_poly(n: usize) -> QPolynomial {
    if n <= CAT_POLY_ENUM_BOUND {
        cat_poly_enumerated(n)
    } else {
        cat_poly_closed(n)
    }
}

/// `Cat_n(q)` by exhaustive tree enumeration.
pub fn cat_poly_enumerated(n: usize) -> QPolynomial {
    if n == 0 {
        return QPolynomial::from_u32(&[1]);
    }
    let mut coeffs = vec![BigUint::ZERO; n];
    for t in enumerate_trees(n) {
        let d = dg(&t).expect("non-empty tree");
        coeffs[d] += BigUint::from(1u32);
    }
    let mut p = QPolynomial { coeffs };
    p.normalize();
    p
}

/// `Cat_n(q)` via the closed form: the coefficient of `q^k` equals the
/// Catalan-triangle entry `C(n-1, k)`. The index shift is deliberate:
/// the enumerated dg distribution for size n matches row n-1 of the
/// triangle as printed by the closed form.
pub fn cat_poly_closed(n: usize) -> QPolynomial {
    if n == 0 {
        return QPolynomial::from_u32(&[1]);
    }
    let mut p = QPolynomial {
        coeffs: (0..n).map(|k| catalan_triangle(n - 1, k)).collect(),
    };
    p.normalize();
    p
}

/// Exact binomial coefficient, 0 when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut b = BigUint::from(1u32);
    for i in 1..=k {
        b = b * BigUint::from(n - k + i) / BigUint::from(i);
    }
    b
}

/// The classical Catalan number `binom(2n,n)/(n+1)`.
pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) / BigUint::from(n + 1)
}

/// Catalan-triangle entry `binom(n+k,k) - binom(n+k,k-1)`, clamped to 0
/// outside the triangle (k > n).
pub fn catalan_triangle(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    if k == 0 {
        return BigUint::from(1u32);
    }
    binomial(n + k, k) - binomial(n + k, k - 1)
}

/// `binom(3n,n) - 2 binom(3n,n-1) + binom(3n,n-2)`, OEIS A274969.
pub fn a274969(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::from(1u32);
    }
    let mut v = binomial(3 * n, n) + if n >= 2 { binomial(3 * n, n - 2) } else { BigUint::ZERO };
    v -= BigUint::from(2u32) * binomial(3 * n, n - 1);
    v
}

/// Sum of the coefficients of `q^0..q^n` in `Cat_n(q)^2`; equals
/// [`a274969`]`(n)`.
pub fn truncated_square_sum(n: usize) -> BigUint {
    let p = cat_poly(n);
    p.mul(&p).truncate(n).eval_at_one()
}
