//! Published reference values, stored as data.
//!
//! These numbers are never recomputed into: they are what the closed forms
//! and the oracle are compared against.

use crate::exactcore::{ExactInt, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Published<T> {
    pub value: T,
    pub citation: &'static str,
}

const ETA_PRIME_II_CITATION: &str = "remark after the type II count theorem: eta'_II(m) for 2 <= m <= 8";
const ETA_II_CITATION: &str = "remark after the type II closed form: eta_II(m, j) table for 3 <= m <= 8";
const IV_COEFFICIENT_CITATION: &str = "remark after the type IV count theorem: leading coefficients for n <= 7";

const ETA_PRIME_II: [(u64, i64); 7] = [(2, 1), (3, 2), (4, 6), (5, 20), (6, 47), (7, 130), (8, 295)];

/// Rows m = 3..8, entries j = 1..m−1.
const ETA_II_ROWS: [&[i64]; 6] = [
    &[1, 1],
    &[2, 2, 2],
    &[5, 5, 5, 5],
    &[10, 10, 11, 10, 10],
    &[21, 21, 23, 23, 21, 21],
    &[42, 42, 47, 45, 47, 42, 42],
];

const IV_COEFFICIENTS: [(i64, i64); 7] =
    [(1, 2), (1, 3), (23, 21), (78, 35), (6103, 1085), (202371, 19530), (29316701, 1240155)];

/// η′_II(m) as tabulated, for 2 ≤ m ≤ 8.
pub fn eta_prime_ii(m: u64) -> Option<Published<ExactInt>> {
    ETA_PRIME_II
        .iter()
        .find(|(k, _)| *k == m)
        .map(|&(_, v)| Published { value: v.into(), citation: ETA_PRIME_II_CITATION })
}

/// η_II(m, j) as tabulated, for 3 ≤ m ≤ 8 and 1 ≤ j < m.
pub fn eta_ii_mj(m: u64, j: u64) -> Option<Published<ExactInt>> {
    let row = ETA_II_ROWS.get(m.checked_sub(3)? as usize)?;
    let v = row.get(j.checked_sub(1)? as usize)?;
    Some(Published { value: (*v).into(), citation: ETA_II_CITATION })
}

/// Leading coefficient of η_IV(n, m) in 2^m as tabulated, for 1 ≤ n ≤ 7.
pub fn iv_coefficient(n: u64) -> Option<Published<ExactRational>> {
    let &(p, q) = IV_COEFFICIENTS.get(n.checked_sub(1)? as usize)?;
    Some(Published { value: ExactRational::new(p.into(), q.into()), citation: IV_COEFFICIENT_CITATION })
}

/// Every tabulated (m, j).
pub fn eta_ii_cells() -> impl Iterator<Item = (u64, u64)> {
    (3..=8u64).flat_map(|m| (1..m).map(move |j| (m, j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_symmetric() {
        for (m, j) in eta_ii_cells() {
            assert_eq!(eta_ii_mj(m, j).unwrap().value, eta_ii_mj(m, m - j).unwrap().value);
        }
        assert_eq!(eta_ii_cells().count(), 2 + 3 + 4 + 5 + 6 + 7);
    }

    #[test]
    fn lookups_outside_the_table() {
        assert!(eta_ii_mj(9, 1).is_none());
        assert!(eta_ii_mj(5, 5).is_none());
        assert!(eta_ii_mj(2, 1).is_none());
        assert!(eta_prime_ii(1).is_none());
        assert_eq!(eta_prime_ii(8).unwrap().value, 295.into());
        assert!(iv_coefficient(0).is_none());
        assert_eq!(iv_coefficient(3).unwrap().value, ExactRational::new(23.into(), 21.into()));
    }
}
