use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hsystem::{Family, MemberId};
use crate::properties::MonotoneProperty;

use super::enumerate::{check_r, for_each_intersecting};

/// An `r`-uniform hypergraph on member ids; edges hold sorted vertex positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    pub vertices: Vec<MemberId>,
    pub r: usize,
    pub edges: Vec<Vec<usize>>,
    #[serde(skip)]
    lookup: HashSet<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(vertices: Vec<MemberId>, r: usize, mut edges: Vec<Vec<usize>>) -> Self {
        for e in &mut edges {
            e.sort_unstable();
        }
        edges.sort();
        edges.dedup();
        let lookup = edges.iter().cloned().collect();
        Hypergraph {
            vertices,
            r,
            edges,
            lookup,
        }
    }

    pub fn has_edge(&self, vertices: &[usize]) -> bool {
        let mut e = vertices.to_vec();
        e.sort_unstable();
        self.lookup.contains(&e)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn edge_ids(&self) -> Vec<Vec<MemberId>> {
        self.edges
            .iter()
            .map(|e| e.iter().map(|&v| self.vertices[v].clone()).collect())
            .collect()
    }
}

/// The hypergraph whose edges are the `P`-intersecting `r`-subsets of the family.
pub fn build_hypergraph(family: &Family, r: usize, p: &MonotoneProperty) -> Result<Hypergraph> {
    check_r(family, r)?;
    let prop = p.prepare(family.system())?;
    let mut edges = Vec::new();
    let _ = for_each_intersecting(family, r, &prop, |e| {
        edges.push(e.to_vec());
        ControlFlow::Continue(())
    });
    Ok(Hypergraph::new(family.ids().to_vec(), r, edges))
}

/// Searches for `r` disjoint classes of `t` vertices whose every transversal is an edge.
///
/// Only vertices with `allowed[v]` are used. Classes are filled round-robin;
/// candidates are tried by decreasing degree, and the search gives up after
/// `budget` candidate checks.
pub fn find_multipartite(
    graph: &Hypergraph,
    t: usize,
    allowed: Option<&[bool]>,
    budget: u64,
) -> Option<Vec<Vec<usize>>> {
    let r = graph.r;
    let n = graph.vertices.len();
    if r == 0 || t == 0 {
        return Some(vec![Vec::new(); r]);
    }
    let deg = graph.degrees();
    let mut candidates: Vec<usize> = (0..n)
        .filter(|&v| allowed.map_or(true, |a| a[v]))
        .filter(|&v| deg[v] > 0)
        .collect();
    if candidates.len() < r.checked_mul(t)? {
        return None;
    }
    candidates.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
    let rank: Vec<usize> = {
        let mut rank = vec![usize::MAX; n];
        for (i, &v) in candidates.iter().enumerate() {
            rank[v] = i;
        }
        rank
    };
    let mut search = Search {
        graph,
        candidates: &candidates,
        rank: &rank,
        t,
        classes: vec![Vec::with_capacity(t); r],
        used: vec![false; n],
        steps: 0,
        budget,
    };
    if search.fill(0) {
        Some(search.classes)
    } else {
        None
    }
}

struct Search<'a> {
    graph: &'a Hypergraph,
    candidates: &'a [usize],
    rank: &'a [usize],
    t: usize,
    classes: Vec<Vec<usize>>,
    used: Vec<bool>,
    steps: u64,
    budget: u64,
}

impl Search<'_> {
    fn fill(&mut self, slot: usize) -> bool {
        let r = self.classes.len();
        if slot == r * self.t {
            return true;
        }
        let class = slot % r;
        // within a class, vertices are added in candidate order to avoid permuted repeats
        let start = self.classes[class].last().map_or(0, |&v| self.rank[v] + 1);
        for idx in start..self.candidates.len() {
            let v = self.candidates[idx];
            if self.used[v] {
                continue;
            }
            self.steps += 1;
            if self.steps > self.budget {
                return false;
            }
            if !self.compatible(class, v) {
                continue;
            }
            self.used[v] = true;
            self.classes[class].push(v);
            if self.fill(slot + 1) {
                return true;
            }
            self.classes[class].pop();
            self.used[v] = false;
            if self.steps > self.budget {
                return false;
            }
        }
        false
    }

    /// Every transversal through `v` over the other classes' current members is an edge.
    fn compatible(&self, class: usize, v: usize) -> bool {
        let others: Vec<&Vec<usize>> = self
            .classes
            .iter()
            .enumerate()
            .filter(|&(c, _)| c != class)
            .map(|(_, m)| m)
            .collect();
        if others.iter().any(|m| m.is_empty()) {
            return true;
        }
        let mut idx = vec![0usize; others.len()];
        let mut edge = Vec::with_capacity(others.len() + 1);
        loop {
            edge.clear();
            edge.push(v);
            edge.extend(others.iter().zip(&idx).map(|(m, &i)| m[i]));
            if !self.graph.has_edge(&edge) {
                return false;
            }
            let mut j = 0;
            loop {
                if j == idx.len() {
                    return true;
                }
                idx[j] += 1;
                if idx[j] < others[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    }
}

/// Whether every transversal of `classes` is an edge of `graph`.
pub fn is_complete_multipartite(graph: &Hypergraph, classes: &[Vec<usize>]) -> bool {
    if classes.len() != graph.r || classes.iter().any(|c| c.is_empty()) {
        return false;
    }
    let mut seen = HashSet::new();
    if !classes.iter().flatten().all(|v| seen.insert(*v)) {
        return false;
    }
    let mut idx = vec![0usize; classes.len()];
    let mut edge = Vec::with_capacity(classes.len());
    loop {
        edge.clear();
        edge.extend(classes.iter().zip(&idx).map(|(c, &i)| c[i]));
        if !graph.has_edge(&edge) {
            return false;
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return true;
            }
            idx[j] += 1;
            if idx[j] < classes[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}
