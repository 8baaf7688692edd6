//! Finite base spaces: an equivalence relation given by blocks and a graph
//! whose components are exactly those blocks.
//!
//! JSON form: `{"size": 3, "blocks": [[0, 1, 2]], "edges": [[0, 1], [1, 2]]}`.
//! The order on points is numeric order on ids.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphings::Graphing;
use crate::seq::EPSeq;
use crate::tri::{Fuel, Tri};

/// `None` stands for infinite distance.
pub type Dist = Option<u64>;

pub fn fmt_dist(d: Dist) -> String {
    d.map_or_else(|| "inf".to_string(), |v| v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpaceFile", into = "SpaceFile")]
pub struct FinSpace {
    block_of: Vec<usize>,
    blocks: Vec<Vec<u64>>,
    edges: BTreeSet<(u64, u64)>,
    adj: Vec<Vec<u64>>,
    dist: Vec<Vec<Dist>>,
    diameter: u64,
}

#[derive(Serialize, Deserialize)]
struct SpaceFile {
    size: usize,
    blocks: Vec<Vec<u64>>,
    edges: Vec<(u64, u64)>,
}

impl TryFrom<SpaceFile> for FinSpace {
    type Error = Error;
    fn try_from(f: SpaceFile) -> Result<Self> {
        FinSpace::new(f.size, f.blocks, f.edges)
    }
}

impl From<FinSpace> for SpaceFile {
    fn from(s: FinSpace) -> Self {
        SpaceFile {
            size: s.size(),
            blocks: s.blocks,
            edges: s.edges.into_iter().collect(),
        }
    }
}

fn bfs(adj: &[Vec<u64>], from: usize) -> Vec<Dist> {
    let mut d = vec![None; adj.len()];
    d[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        let du = d[u].unwrap();
        for &v in &adj[u] {
            let v = v as usize;
            if d[v].is_none() {
                d[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    d
}

impl FinSpace {
    /// Checks that the blocks partition `0..size` and that the connected
    /// components of the edges are exactly the blocks.
    pub fn new(size: usize, blocks: Vec<Vec<u64>>, edges: Vec<(u64, u64)>) -> Result<Self> {
        if size == 0 {
            return Err(Error::config("size", "a space needs at least one point"));
        }
        let mut block_of = vec![usize::MAX; size];
        let mut blocks = blocks;
        for (b, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return Err(Error::config(format!("blocks[{b}]"), "empty block"));
            }
            block.sort_unstable();
            for &p in block.iter() {
                let slot = block_of.get_mut(p as usize).ok_or_else(|| {
                    Error::config(format!("blocks[{b}]"), format!("id {p} out of range"))
                })?;
                if *slot != usize::MAX {
                    return Err(Error::config(
                        format!("blocks[{b}]"),
                        format!("id {p} listed twice"),
                    ));
                }
                *slot = b;
            }
        }
        if let Some(p) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::config("blocks", format!("id {p} is in no block")));
        }
        let mut set = BTreeSet::new();
        let mut adj = vec![vec![]; size];
        for (a, b) in edges {
            let loc = format!("edges[{a},{b}]");
            if a as usize >= size || b as usize >= size {
                return Err(Error::config(loc, "id out of range"));
            }
            if a == b {
                return Err(Error::config(loc, "loops are not allowed"));
            }
            if block_of[a as usize] != block_of[b as usize] {
                return Err(Error::config(loc, "edge joins two different blocks"));
            }
            if set.insert((a.min(b), a.max(b))) {
                adj[a as usize].push(b);
                adj[b as usize].push(a);
            }
        }
        for n in &mut adj {
            n.sort_unstable();
        }
        let dist: Vec<Vec<Dist>> = (0..size).map(|p| bfs(&adj, p)).collect();
        let mut diameter = 0;
        for (p, row) in dist.iter().enumerate() {
            for (q, d) in row.iter().enumerate() {
                match d {
                    Some(d) => diameter = diameter.max(*d),
                    None if block_of[p] == block_of[q] => {
                        return Err(Error::config(
                            "edges",
                            format!("{p} and {q} share a block but are not connected"),
                        ))
                    }
                    None => {}
                }
            }
        }
        Ok(FinSpace {
            block_of,
            blocks,
            edges: set,
            adj,
            dist,
            diameter,
        })
    }

    /// The space whose blocks are the connected components of `edges`.
    pub fn from_edges(size: usize, edges: Vec<(u64, u64)>) -> Result<Self> {
        let mut adj = vec![vec![]; size];
        for &(a, b) in &edges {
            if a as usize >= size || b as usize >= size {
                return Err(Error::config(format!("edges[{a},{b}]"), "id out of range"));
            }
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        let mut seen = vec![false; size];
        let mut blocks = vec![];
        for p in 0..size {
            if seen[p] {
                continue;
            }
            let block: Vec<u64> = bfs(&adj, p)
                .iter()
                .enumerate()
                .filter(|(_, d)| d.is_some())
                .map(|(q, _)| q as u64)
                .collect();
            for &q in &block {
                seen[q as usize] = true;
            }
            blocks.push(block);
        }
        FinSpace::new(size, blocks, edges)
    }

    /// Equality on `size` points, graphed by no edges.
    pub fn discrete(size: usize) -> Result<Self> {
        FinSpace::from_edges(size, vec![])
    }

    /// One block `0 − 1 − … − (size−1)`.
    pub fn path(size: usize) -> Result<Self> {
        FinSpace::from_edges(size, (1..size as u64).map(|i| (i - 1, i)).collect())
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }

    pub fn edges(&self) -> &BTreeSet<(u64, u64)> {
        &self.edges
    }

    pub fn diameter(&self) -> u64 {
        self.diameter
    }

    pub fn block_of(&self, x: u64) -> usize {
        self.block_of[x as usize]
    }

    /// Neighbours in increasing order.
    pub fn neighbors(&self, x: u64) -> &[u64] {
        &self.adj[x as usize]
    }

    pub fn is_edge(&self, x: u64, y: u64) -> bool {
        self.edges.contains(&(x.min(y), x.max(y)))
    }

    pub fn check_id(&self, x: u64) -> Result<()> {
        if (x as usize) < self.size() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "id {x} out of range for a space of size {}",
                self.size()
            )))
        }
    }

    pub fn check_seq(&self, xs: &EPSeq) -> Result<()> {
        self.check_id(xs.max_value())
    }

    /// Graph distance; ids must be in range.
    pub fn dist(&self, x: u64, y: u64) -> Dist {
        self.dist[x as usize][y as usize]
    }

    /// `min_i d(x, y_i)`.
    pub fn dist_pt_seq(&self, x: u64, ys: &EPSeq) -> Dist {
        self.dist_pt_set(x, &ys.values())
    }

    pub fn dist_pt_set(&self, x: u64, ys: &BTreeSet<u64>) -> Dist {
        ys.iter().filter_map(|&y| self.dist(x, y)).min()
    }

    /// Largest of all `d(x_j, (y_i))` and `d(y_j, (x_i))`.
    pub fn dist_seq_seq(&self, xs: &EPSeq, ys: &EPSeq) -> Dist {
        let (xv, yv) = (xs.values(), ys.values());
        let mut worst = Some(0);
        for (from, to) in [(&xv, &yv), (&yv, &xv)] {
            for &x in from {
                match self.dist_pt_set(x, to) {
                    None => return None,
                    d => worst = worst.max(d),
                }
            }
        }
        worst
    }

    /// Blocks met by a sequence.
    pub fn blocks_met(&self, xs: &EPSeq) -> BTreeSet<usize> {
        xs.values().into_iter().map(|x| self.block_of(x)).collect()
    }
}

impl Graphing for FinSpace {
    type Point = u64;
    fn name(&self) -> &str {
        "finspace"
    }
    fn adjacent(&self, x: &u64, y: &u64, _fuel: Fuel) -> Tri {
        Tri::from_bool(self.is_edge(*x, *y))
    }
    fn claimed_diameter(&self) -> Option<u64> {
        Some(self.diameter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> EPSeq {
        t.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!(FinSpace::new(2, vec![vec![0, 1]], vec![]).is_err());
        assert!(FinSpace::new(2, vec![vec![0], vec![1]], vec![(0, 1)]).is_err());
        assert!(FinSpace::new(2, vec![vec![0]], vec![]).is_err());
        assert!(FinSpace::new(2, vec![vec![0, 1], vec![1]], vec![(0, 1)]).is_err());
        assert!(FinSpace::new(1, vec![vec![0]], vec![(0, 0)]).is_err());
        let ok = FinSpace::new(3, vec![vec![0, 1], vec![2]], vec![(0, 1)]).unwrap();
        assert_eq!(ok.diameter(), 1);
    }

    #[test]
    fn distances() {
        let p = FinSpace::path(3).unwrap();
        assert_eq!(p.dist(1, 1), Some(0));
        assert_eq!(p.dist(0, 2), Some(2));
        assert_eq!(p.diameter(), 2);
        let d = FinSpace::discrete(2).unwrap();
        assert_eq!(d.dist(0, 1), None);
        assert_eq!(p.dist_pt_seq(0, &s(";1,2")), Some(1));
        assert_eq!(p.dist_seq_seq(&s(";0"), &s(";2")), Some(2));
        assert_eq!(p.dist_seq_seq(&s(";0"), &s("2;0")), Some(2));
        assert_eq!(d.dist_seq_seq(&s(";0"), &s(";0,1")), None);
    }

    #[test]
    fn json_round_trip() {
        let p = FinSpace::path(4).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(
            text,
            r#"{"size":4,"blocks":[[0,1,2,3]],"edges":[[0,1],[1,2],[2,3]]}"#
        );
        assert_eq!(serde_json::from_str::<FinSpace>(&text).unwrap(), p);
        assert!(
            serde_json::from_str::<FinSpace>(r#"{"size":2,"blocks":[[0,1]],"edges":[]}"#).is_err()
        );
    }
}
