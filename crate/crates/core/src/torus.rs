//! The even discrete torus `T_{L,d}`.
//!
//! Vertices are `{0..L-1}^d`, stored as row-major indices
//! `index(v) = Σ v_i L^i` (coordinate 0 varies fastest). Two vertices are
//! adjacent when they differ by ±1 mod L in exactly one coordinate.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Neighbors, Parity};

/// Default cap on `L^d`.
pub const DEFAULT_VERTEX_BUDGET: usize = 1 << 26;

/// A signed lattice direction `s ∈ {±1, …, ±d}`.
///
/// The canonical order used for "smallest direction" tie-breaks is
/// `+1, -1, +2, -2, …, +d, -d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Direction(i32);

impl Direction {
    pub fn new(s: i32, dim: usize) -> Result<Self> {
        if s == 0 || s.unsigned_abs() as usize > dim {
            return Err(Error::InvalidDirection { direction: s, dim });
        }
        Ok(Direction(s))
    }

    pub fn value(self) -> i32 {
        self.0
    }

    /// Zero-based coordinate axis.
    pub fn axis(self) -> usize {
        self.0.unsigned_abs() as usize - 1
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn reverse(self) -> Direction {
        Direction(-self.0)
    }

    /// Position in the canonical order.
    pub fn rank(self) -> usize {
        2 * self.axis() + usize::from(self.0 < 0)
    }

    /// All `2d` directions in canonical order.
    pub fn all(dim: usize) -> impl Iterator<Item = Direction> {
        (1..=dim as i32).flat_map(|s| [Direction(s), Direction(-s)])
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusGraph {
    side: usize,
    dim: usize,
    count: usize,
    strides: Vec<usize>,
}

impl TorusGraph {
    /// `T_{L,d}` with the default vertex budget.
    pub fn new(side: usize, dim: usize) -> Result<Self> {
        Self::with_budget(side, dim, DEFAULT_VERTEX_BUDGET)
    }

    pub fn with_budget(side: usize, dim: usize, budget: usize) -> Result<Self> {
        if side < 2 || !side.is_multiple_of(2) {
            return Err(Error::InvalidSide(side));
        }
        if dim == 0 {
            return Err(Error::InvalidDimension(dim));
        }
        let mut strides = Vec::with_capacity(dim);
        let mut count: usize = 1;
        for _ in 0..dim {
            strides.push(count);
            count = count
                .checked_mul(side)
                .filter(|&c| c <= budget)
                .ok_or(Error::TooLarge { side, dim, budget })?;
        }
        Ok(TorusGraph {
            side,
            dim,
            count,
            strides,
        })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.count {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                count: self.count,
            })
        }
    }

    #[inline]
    pub fn coord(&self, v: usize, axis: usize) -> usize {
        (v / self.strides[axis]) % self.side
    }

    pub fn coords(&self, v: usize) -> Vec<usize> {
        (0..self.dim).map(|i| self.coord(v, i)).collect()
    }

    /// Index of a coordinate tuple; coordinates are reduced mod L.
    pub fn index(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.dim {
            return Err(Error::SizeMismatch {
                expected: self.dim,
                found: coords.len(),
            });
        }
        Ok(coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| (c % self.side) * s)
            .sum())
    }

    #[inline]
    pub fn parity_of(&self, v: usize) -> Parity {
        let sum: usize = (0..self.dim).map(|i| self.coord(v, i)).sum();
        if sum.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `σ_s(v) = v + e_s mod L`.
    #[inline]
    pub fn shift(&self, v: usize, s: Direction) -> usize {
        let axis = s.axis();
        let stride = self.strides[axis];
        let c = self.coord(v, axis);
        if s.is_positive() {
            if c + 1 == self.side {
                v - c * stride
            } else {
                v + stride
            }
        } else if c == 0 {
            v + (self.side - 1) * stride
        } else {
            v - stride
        }
    }

    /// Checked variant of [`shift`](Self::shift) taking a raw signed direction.
    pub fn shift_vertex(&self, v: usize, s: i32) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.shift(v, Direction::new(s, self.dim)?))
    }

    pub fn shift_set(&self, set: &FixedBitSet, s: Direction) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.count);
        out.extend(set.ones().map(|v| self.shift(v, s)));
        out
    }

    /// Neighbors in canonical direction order, duplicates removed (L = 2).
    pub fn neighbor_list(&self, v: usize) -> Neighbors {
        let mut out = Neighbors::new();
        for s in Direction::all(self.dim) {
            let u = self.shift(v, s);
            if !out.contains(&u) {
                out.push(u);
            }
        }
        out
    }

    /// Sum over coordinates of the cyclic distance.
    pub fn distance(&self, u: usize, v: usize) -> usize {
        (0..self.dim)
            .map(|i| {
                let a = self.coord(u, i);
                let b = self.coord(v, i);
                let diff = a.abs_diff(b);
                diff.min(self.side - diff)
            })
            .sum()
    }

    pub fn graph_distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.distance(u, v))
    }

    /// Axis along which adjacent `u`, `v` differ.
    pub fn edge_axis(&self, u: usize, v: usize) -> Option<usize> {
        let mut axis = None;
        for i in 0..self.dim {
            if self.coord(u, i) != self.coord(v, i) {
                if axis.is_some() {
                    return None;
                }
                axis = Some(i);
            }
        }
        axis
    }

    /// Partition of `set` into maximal k-clustered subsets: members linked
    /// by chains of hops of graph distance at most `k`.
    pub fn k_components(&self, set: &[usize], k: usize) -> Result<Vec<Vec<usize>>> {
        if k < 1 {
            return Err(Error::InvalidClusterRadius);
        }
        for &v in set {
            self.check_vertex(v)?;
        }
        let mut members: Vec<usize> = set.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut assigned = vec![false; members.len()];
        let mut parts = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..members.len() {
            if assigned[start] {
                continue;
            }
            assigned[start] = true;
            queue.push_back(start);
            let mut part = Vec::new();
            while let Some(i) = queue.pop_front() {
                part.push(members[i]);
                for j in 0..members.len() {
                    if !assigned[j] && self.distance(members[i], members[j]) <= k {
                        assigned[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        Ok(parts)
    }

    /// Vertex permutations generated by translations, reflections and axis
    /// permutations. Each preserves adjacency; translations by an odd
    /// vector swap the parity classes.
    pub fn symmetries(&self) -> Vec<Vec<usize>> {
        let mut perms = Vec::new();
        let axis_orders = permutations(self.dim);
        let coords: Vec<Vec<usize>> = (0..self.count).map(|v| self.coords(v)).collect();
        for offset in 0..self.count {
            let shift = &coords[offset];
            for order in &axis_orders {
                for flips in 0..(1usize << self.dim) {
                    let perm = coords
                        .iter()
                        .map(|c| {
                            let mut image = 0;
                            for (i, &src) in order.iter().enumerate() {
                                let mut x = c[src];
                                if flips >> i & 1 == 1 {
                                    x = (self.side - x) % self.side;
                                }
                                image += ((x + shift[i]) % self.side) * self.strides[i];
                            }
                            image
                        })
                        .collect();
                    perms.push(perm);
                }
            }
        }
        perms
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

impl BipartiteGraph for TorusGraph {
    fn vertex_count(&self) -> usize {
        self.count
    }

    fn parity(&self, v: usize) -> Parity {
        self.parity_of(v)
    }

    fn neighbors(&self, v: usize) -> Neighbors {
        self.neighbor_list(v)
    }

    fn degree(&self, _v: usize) -> usize {
        if self.side == 2 {
            self.dim
        } else {
            2 * self.dim
        }
    }

    fn regular_degree(&self) -> Option<usize> {
        Some(self.degree(0))
    }

    fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.distance(u, v) == 1
    }
}
