//! All-pairs hop distances on the undirected schema projection.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::TypeRef;

/// Hop distance between two entity types, or [`Distance::Unreachable`]
/// when they lie in different connected components. An unreachable pair
/// fails every tight constraint and satisfies every diverse constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Hops(u32),
    Unreachable,
}

/// Breadth-first hop counts between every pair of schema types.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DistanceIndex {
    n: usize,
    /// Row-major n x n; `u32::MAX` marks unreachable.
    dist: Vec<u32>,
}

const UNREACHABLE: u32 = u32::MAX;

impl DistanceIndex {
    pub(super) fn from_adjacency(adjacency: &[Vec<u32>]) -> Self {
        let n = adjacency.len();
        let mut dist = vec![UNREACHABLE; n * n];
        let mut queue = VecDeque::new();
        for source in 0..n {
            let row = &mut dist[source * n..(source + 1) * n];
            row[source] = 0;
            queue.clear();
            queue.push_back(source as u32);
            while let Some(u) = queue.pop_front() {
                let next = row[u as usize] + 1;
                for &v in &adjacency[u as usize] {
                    if row[v as usize] == UNREACHABLE {
                        row[v as usize] = next;
                        queue.push_back(v);
                    }
                }
            }
        }
        Self { n, dist }
    }

    pub fn type_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: TypeRef, b: TypeRef) -> Distance {
        match self.dist[a.index() * self.n + b.index()] {
            UNREACHABLE => Distance::Unreachable,
            hops => Distance::Hops(hops),
        }
    }

    /// Tight check: distance at most `d`. False for unreachable pairs.
    pub fn within(&self, a: TypeRef, b: TypeRef, d: u32) -> bool {
        self.dist[a.index() * self.n + b.index()] <= d
    }

    /// Diverse check: distance at least `d`. True for unreachable pairs.
    pub fn at_least(&self, a: TypeRef, b: TypeRef, d: u32) -> bool {
        self.dist[a.index() * self.n + b.index()] >= d
    }

    /// Largest finite pairwise distance, or `None` for an empty index.
    pub fn diameter(&self) -> Option<u32> {
        self.dist.iter().filter(|&&d| d != UNREACHABLE).max().copied()
    }
}
