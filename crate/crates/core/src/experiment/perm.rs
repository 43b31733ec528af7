//! Permutation classes behind the improved total bound for cubic graphs of
//! girth at least 5.
//!
//! Around a vertex `u` of such a graph the closed second neighborhood is a
//! tree on ten distinct vertices: `u`, its neighbors `v1, v2, v3`, and two
//! further neighbors `v_{i,1}, v_{i,2}` of each `v_i`. A uniformly random
//! ordering of the graph restricts to a uniformly random ordering of these
//! ten vertices. Three classes of restricted orderings guarantee that the
//! greedy value of `u` falls short of its allowance `s1 + s2`:
//!
//! * `S1`: exactly one neighbor `v` precedes `u`, and both other neighbors
//!   of `v` precede `v`;
//! * `S2`: exactly one neighbor `v` precedes `u`, one other neighbor of `v`
//!   precedes `v` and the remaining one lies between `v` and `u`;
//! * `S3`: all of `v1, v2, v3` precede `u` and all six outer vertices come
//!   after `u`.

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

const TREE_ORDER: usize = 10;
const CENTER: usize = 0;

fn neighbor(i: usize) -> usize {
    1 + i
}

fn outer(i: usize) -> [usize; 2] {
    [4 + 2 * i, 5 + 2 * i]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermClass {
    S1,
    S2,
    S3,
}

/// Class of an ordering of the ten tree vertices given as positions
/// (`pos[x]` is the rank of vertex `x`).
pub fn classify(pos: &[usize; TREE_ORDER]) -> Option<PermClass> {
    let pu = pos[CENTER];
    let before: Vec<usize> = (0..3).filter(|&i| pos[neighbor(i)] < pu).collect();
    match before.as_slice() {
        &[i] => {
            let pv = pos[neighbor(i)];
            let [a, b] = outer(i);
            match (pos[a] < pv, pos[b] < pv) {
                (true, true) => Some(PermClass::S1),
                (true, false) if pos[b] < pu => Some(PermClass::S2),
                (false, true) if pos[a] < pu => Some(PermClass::S2),
                _ => None,
            }
        }
        [_, _, _] => (0..3)
            .flat_map(outer)
            .all(|x| pos[x] > pu)
            .then_some(PermClass::S3),
        _ => None,
    }
}

/// Greedy allowance `s1 + s2` of the center under an ordering of the tree.
pub fn center_allowance(pos: &[usize; TREE_ORDER]) -> u32 {
    let pu = pos[CENTER];
    (0..3)
        .filter(|&i| pos[neighbor(i)] < pu)
        .map(|i| 1 + outer(i).iter().filter(|&&x| pos[x] < pu).count() as u32)
        .sum()
}

/// Exhaustive class counts over all `10!` orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermClassCounts {
    pub s1: u64,
    pub s2: u64,
    pub s3: u64,
    /// Number of orderings scanned (`10!`).
    pub total: u64,
    /// Sum of the center's allowance over all orderings.
    pub allowance_sum: u64,
    /// Orderings in a class whose center allowance is not 3.
    pub class_allowance_mismatches: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PermFractions<T> {
    pub s1: T,
    pub s2: T,
    pub s3: T,
    /// `(3/4)(|S1| + |S2|)/10! + 2 |S3|/10!`, a lower bound on the expected
    /// shortfall credited to a vertex.
    pub bound: T,
    /// Mean allowance of the center over all orderings.
    pub mean_allowance: T,
}

impl PermClassCounts {
    pub fn fractions<T: Scalar>(&self) -> PermFractions<T> {
        let f = |c: u64| T::ratio(c, self.total);
        PermFractions {
            s1: f(self.s1),
            s2: f(self.s2),
            s3: f(self.s3),
            bound: T::ratio(3, 4) * f(self.s1 + self.s2) + T::from_count(2) * f(self.s3),
            mean_allowance: f(self.allowance_sum),
        }
    }
}

/// Scans every ordering of the ten tree vertices, split by first element.
pub fn perm_oracle() -> PermClassCounts {
    let parts: Vec<PermClassCounts> = (0..TREE_ORDER)
        .into_par_iter()
        .map(|first| {
            let rest: Vec<usize> = (0..TREE_ORDER).filter(|&x| x != first).collect();
            let mut c = PermClassCounts {
                s1: 0,
                s2: 0,
                s3: 0,
                total: 0,
                allowance_sum: 0,
                class_allowance_mismatches: 0,
            };
            let mut pos = [0usize; TREE_ORDER];
            pos[first] = 0;
            for tail in rest.into_iter().permutations(TREE_ORDER - 1) {
                for (rank, &x) in tail.iter().enumerate() {
                    pos[x] = rank + 1;
                }
                c.total += 1;
                let allowance = center_allowance(&pos);
                c.allowance_sum += u64::from(allowance);
                let class = classify(&pos);
                match class {
                    Some(PermClass::S1) => c.s1 += 1,
                    Some(PermClass::S2) => c.s2 += 1,
                    Some(PermClass::S3) => c.s3 += 1,
                    None => {}
                }
                if class.is_some() && allowance != 3 {
                    c.class_allowance_mismatches += 1;
                }
            }
            c
        })
        .collect();
    parts.into_iter().fold(
        PermClassCounts {
            s1: 0,
            s2: 0,
            s3: 0,
            total: 0,
            allowance_sum: 0,
            class_allowance_mismatches: 0,
        },
        |a, b| PermClassCounts {
            s1: a.s1 + b.s1,
            s2: a.s2 + b.s2,
            s3: a.s3 + b.s3,
            total: a.total + b.total,
            allowance_sum: a.allowance_sum + b.allowance_sum,
            class_allowance_mismatches: a.class_allowance_mismatches + b.class_allowance_mismatches,
        },
    )
}

/// `(7/2 - 23/840) n` for a cubic graph of girth at least 5 (or the empty
/// graph).
pub fn girth5_bound<T: Scalar>(g: &Graph) -> Result<T> {
    if g.n() > 0 {
        if !g.is_cubic() {
            return Err(Error::Precondition("graph is not cubic".into()));
        }
        if g.girth().is_some_and(|girth| girth < 5) {
            return Err(Error::Precondition("girth is below 5".into()));
        }
    }
    let per_vertex = T::ratio(7, 2) - T::ratio(23, 840);
    Ok(per_vertex * T::from_count(g.n() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{families, Rational};

    fn pos_of(order: &[usize]) -> [usize; TREE_ORDER] {
        let mut pos = [0; TREE_ORDER];
        for (r, &x) in order.iter().enumerate() {
            pos[x] = r;
        }
        pos
    }

    #[test]
    fn classify_hand_orderings() {
        // v1's outer vertices, then v1, then u, then the rest
        assert_eq!(
            classify(&pos_of(&[4, 5, 1, 0, 2, 3, 6, 7, 8, 9])),
            Some(PermClass::S1)
        );
        assert_eq!(
            classify(&pos_of(&[4, 1, 5, 0, 2, 3, 6, 7, 8, 9])),
            Some(PermClass::S2)
        );
        assert_eq!(classify(&pos_of(&[4, 1, 0, 5, 2, 3, 6, 7, 8, 9])), None);
        assert_eq!(
            classify(&pos_of(&[1, 2, 3, 0, 4, 5, 6, 7, 8, 9])),
            Some(PermClass::S3)
        );
        assert_eq!(classify(&pos_of(&[1, 2, 3, 4, 0, 5, 6, 7, 8, 9])), None);
        assert_eq!(
            center_allowance(&pos_of(&[1, 2, 3, 4, 0, 5, 6, 7, 8, 9])),
            4
        );
    }

    #[test]
    fn girth5_bounds() {
        assert_eq!(
            girth5_bound::<Rational>(&families::petersen()).unwrap(),
            Rational::from_integer(35) - Rational::new(23, 84)
        );
        assert_eq!(
            girth5_bound::<Rational>(&Graph::empty(0)).unwrap(),
            Rational::from_integer(0)
        );
        assert_eq!(
            girth5_bound::<Rational>(&families::desargues()).unwrap(),
            Rational::from_integer(70) - Rational::new(23, 42)
        );
        assert!(girth5_bound::<Rational>(&families::complete_bipartite(3, 3)).is_err());
        assert!(girth5_bound::<Rational>(&families::cycle(5)).is_err());
    }
}
