//! 3-row rectangular standard Young tableaux.
//!
//! A [`StandardTableau`] of size `n` is a filling of a 3×n rectangle with
//! the values `1..=3n`, strictly increasing along rows and up columns.
//! Rows are stored bottom first: `rows[0]` is the row containing `1`.
//! These tableaux are the reference encoding for every object family in
//! this crate; their count is the three-dimensional Catalan number.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A 3×n rectangular filling, bottom row first.
///
/// The struct itself does not enforce standardness; [`StandardTableau::validate`]
/// is the total predicate deciding it. All constructors in this crate only
/// produce validated tableaux.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StandardTableau {
    pub n: usize,
    /// `rows[0]` = bottom row, `rows[2]` = top row.
    pub rows: [Vec<u32>; 3],
}

impl StandardTableau {
    /// Wraps three rows (bottom first) without checking standardness.
    pub fn from_rows(rows: [Vec<u32>; 3]) -> Self {
        let n = rows[0].len();
        StandardTableau { n, rows }
    }

    /// Convenience constructor that validates.
    pub fn new(rows: [Vec<u32>; 3]) -> Result<Self> {
        let t = Self::from_rows(rows);
        if t.validate() {
            Ok(t)
        } else {
            Err(Error::InvalidTableau(format!("{:?}", t.rows)))
        }
    }

    /// True iff the filling is a standard tableau of shape 3×n:
    /// entries are exactly `{1..3n}`, rows increase left to right and
    /// columns increase bottom to top.
    pub fn validate(&self) -> bool {
        let n = self.n;
        if self.rows.iter().any(|r| r.len() != n) {
            return false;
        }
        let mut seen = vec![false; 3 * n + 1];
        for row in &self.rows {
            for &v in row {
                if v == 0 || v as usize > 3 * n || seen[v as usize] {
                    return false;
                }
                seen[v as usize] = true;
            }
        }
        for row in &self.rows {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
        }
        for j in 0..n {
            if self.rows[0][j] >= self.rows[1][j] || self.rows[1][j] >= self.rows[2][j] {
                return false;
            }
        }
        true
    }

    /// The row (0, 1 or 2, bottom first) containing entry `v`.
    pub fn row_of(&self, v: u32) -> Option<usize> {
        self.rows.iter().position(|r| r.contains(&v))
    }

    /// Bottom row, then middle, then top, concatenated.
    pub fn reading_word(&self) -> Vec<u32> {
        let mut w = Vec::with_capacity(3 * self.n);
        for row in &self.rows {
            w.extend_from_slice(row);
        }
        w
    }

    /// The Schützenberger involution: rotate the rectangle a half turn
    /// and complement every value, `v -> 3n + 1 - v`.
    pub fn schuetzenberger(&self) -> StandardTableau {
        let m = 3 * self.n as u32 + 1;
        let flip = |row: &Vec<u32>| -> Vec<u32> { row.iter().rev().map(|&v| m - v).collect() };
        StandardTableau {
            n: self.n,
            rows: [flip(&self.rows[2]), flip(&self.rows[1]), flip(&self.rows[0])],
        }
    }

    /// True iff the last entry of the bottom row is smaller than the first
    /// entry of the top row, i.e. every coproduct event precedes the first
    /// product completion. Vacuously true for n = 0.
    pub fn coproducts_first(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.rows[0][self.n - 1] < self.rows[2][0]
    }

    /// Compact one-line rendering, `[1,3|2,5|4,6]` (bottom|middle|top).
    pub fn compact(&self) -> String {
        let part = |r: &Vec<u32>| {
            r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        };
        format!("[{}|{}|{}]", part(&self.rows[0]), part(&self.rows[1]), part(&self.rows[2]))
    }
}

/// Exact value of `2 (3n)! / (n! (n+1)! (n+2)!)`.
pub fn count_3d_catalan(n: usize) -> BigUint {
    let mut num = BigUint::from(2u32);
    for k in 1..=3 * n {
        num *= BigUint::from(k);
    }
    let mut den = BigUint::from(1u32);
    for k in 1..=n {
        den *= BigUint::from(k);
    }
    for k in 1..=n + 1 {
        den *= BigUint::from(k);
    }
    for k in 1..=n + 2 {
        den *= BigUint::from(k);
    }
    num / den
}

/// Every standard 3×n tableau exactly once, sorted lexicographically by
/// reading word (bottom row, then middle, then top).
///
/// Generation goes through lattice words: place `1..=3n` one value at a
/// time onto the row whose length allows it.
pub fn enumerate_tableaux(n: usize) -> Vec<StandardTableau> {
    let mut out = Vec::new();
    let mut rows: [Vec<u32>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    fn rec(n: usize, v: u32, rows: &mut [Vec<u32>; 3], out: &mut Vec<StandardTableau>) {
        if v as usize > 3 * n {
            out.push(StandardTableau { n, rows: rows.clone() });
            return;
        }
        for r in 0..3 {
            let fits = rows[r].len() < n && (r == 0 || rows[r].len() < rows[r - 1].len());
            if fits {
                rows[r].push(v);
                rec(n, v + 1, rows, out);
                rows[r].pop();
            }
        }
    }
    rec(n, 1, &mut rows, &mut out);
    out.sort_by(|a, b| a.reading_word().cmp(&b.reading_word()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: [&[u32]; 3]) -> StandardTableau {
        StandardTableau::from_rows([rows[0].to_vec(), rows[1].to_vec(), rows[2].to_vec()])
    }

    #[test]
    fn validate_examples() {
        assert!(t([&[1, 2], &[3, 4], &[5, 6]]).validate());
        assert!(t([&[1, 3], &[2, 5], &[4, 6]]).validate());
        assert!(!t([&[2, 1], &[3, 4], &[5, 6]]).validate());
        // column violation
        assert!(!t([&[1, 4], &[2, 3], &[5, 6]]).validate());
        // duplicated entry
        assert!(!t([&[1, 2], &[3, 3], &[5, 6]]).validate());
        // empty tableau is standard
        assert!(t([&[], &[], &[]]).validate());
    }

    #[test]
    fn count_formula_values() {
        let want = [1u32, 1, 5, 42, 462, 6006, 87516];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(count_3d_catalan(n), BigUint::from(*w), "n={n}");
        }
    }

    #[test]
    fn enumerate_matches_count_and_is_sorted() {
        for n in 0..=5 {
            let all = enumerate_tableaux(n);
            assert_eq!(BigUint::from(all.len()), count_3d_catalan(n), "n={n}");
            assert!(all.iter().all(StandardTableau::validate));
            for w in all.windows(2) {
                assert!(w[0].reading_word() < w[1].reading_word());
            }
        }
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_tableaux(1), vec![t([&[1], &[2], &[3]])]);
        assert_eq!(enumerate_tableaux(2).len(), 5);
    }

    #[test]
    fn schuetzenberger_fixed_points() {
        let big = t([&[1, 2, 5, 6], &[3, 4, 9, 10], &[7, 8, 11, 12]]);
        assert!(big.validate());
        assert_eq!(big.schuetzenberger(), big);
        let small = t([&[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!(small.schuetzenberger(), small);
    }

    #[test]
    fn schuetzenberger_involution_exhaustive() {
        for n in 0..=5 {
            for tab in enumerate_tableaux(n) {
                let s = tab.schuetzenberger();
                assert!(s.validate());
                assert_eq!(s.schuetzenberger(), tab);
            }
        }
    }

    #[test]
    fn schuetzenberger_swaps_mirror_pair() {
        let m1 = t([&[1, 3], &[2, 4], &[5, 6]]);
        let m3 = t([&[1, 2], &[3, 5], &[4, 6]]);
        assert_eq!(m1.schuetzenberger(), m3);
        assert_eq!(m3.schuetzenberger(), m1);
    }

    #[test]
    fn coproducts_first_examples() {
        assert!(t([&[1, 2], &[3, 4], &[5, 6]]).coproducts_first());
        assert!(!t([&[1, 4], &[2, 5], &[3, 6]]).coproducts_first());
        assert!(t([&[1], &[2], &[3]]).coproducts_first());
        // counts match A274969 = 1, 1, 4, 21, 121, 728
        let a = [1usize, 1, 4, 21, 121, 728];
        for n in 0..=5 {
            let c = enumerate_tableaux(n).iter().filter(|t| t.coproducts_first()).count();
            assert_eq!(c, a[n], "n={n}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let tab = t([&[1, 3], &[2, 5], &[4, 6]]);
        let s = serde_json::to_string(&tab).unwrap();
        assert!(s.contains("\"rows\""));
        let back: StandardTableau = serde_json::from_str(&s).unwrap();
        assert_eq!(back, tab);
    }
}
