//! Bottleneck assignment: minimize the largest cost used by a perfect matching.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::Scalar;

/// Kuhn's augmenting-path matching on the threshold graph `cost <= limit`.
fn perfect_matching(cost: &[Vec<Scalar>], limit: &Scalar) -> Option<Vec<usize>> {
    let n = cost.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];

    fn augment(
        row: usize,
        cost: &[Vec<Scalar>],
        limit: &Scalar,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for col in 0..cost.len() {
            if seen[col] || cost[row][col] > *limit {
                continue;
            }
            seen[col] = true;
            let free = match owner[col] {
                None => true,
                Some(other) => augment(other, cost, limit, seen, owner),
            };
            if free {
                owner[col] = Some(row);
                return true;
            }
        }
        false
    }

    for row in 0..n {
        let mut seen = vec![false; n];
        if !augment(row, cost, limit, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut assignment = vec![0; n];
    for (col, row) in owner.into_iter().enumerate() {
        assignment[row?] = col;
    }
    Some(assignment)
}

/// Returns the optimal bottleneck value and a row-to-column assignment
/// attaining it. Binary search over the sorted distinct costs.
pub fn bottleneck_assignment(cost: &[Vec<Scalar>]) -> (Scalar, Vec<usize>) {
    let n = cost.len();
    assert!(cost.iter().all(|row| row.len() == n), "cost matrix must be square");
    if n == 0 {
        return (Scalar::from_integer(0.into()), Vec::new());
    }
    let mut values: Vec<Scalar> = cost.iter().flatten().cloned().collect();
    values.sort();
    values.dedup();
    let (mut lo, mut hi) = (0, values.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching(cost, &values[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let assignment = perfect_matching(cost, &values[lo]).expect("largest cost always admits a matching");
    (values[lo].clone(), assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn picks_minimal_bottleneck() {
        let cost = m(&[&[1, 9, 9], &[9, 9, 2], &[9, 3, 9]]);
        let (v, a) = bottleneck_assignment(&cost);
        assert_eq!(v, int(3));
        assert_eq!(a, vec![0, 2, 1]);
    }

    #[test]
    fn ties_and_singletons() {
        assert_eq!(bottleneck_assignment(&m(&[&[5]])).0, int(5));
        assert_eq!(bottleneck_assignment(&m(&[&[4, 4], &[4, 4]])).0, int(4));
    }
}
