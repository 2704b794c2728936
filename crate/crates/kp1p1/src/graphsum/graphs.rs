//! Stable graphs with labeled legs, up to isomorphism.

use crate::exactseries::scalar::{int, Scalar};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableGraph {
    pub genus: Vec<u32>,
    /// Symmetric edge multiplicities; the diagonal counts loops.
    pub mult: Vec<Vec<u32>>,
    /// Vertex carrying each marking.
    pub legs: Vec<usize>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

impl StableGraph {
    pub fn num_vertices(&self) -> usize {
        self.genus.len()
    }

    /// Edges `(u, v)` with `u <= v`, repeated by multiplicity.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.num_vertices() {
            for v in u..self.num_vertices() {
                for _ in 0..self.mult[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.edges().len()
    }

    /// Valence including legs.
    pub fn valence(&self, v: usize) -> u32 {
        let edges: u32 = (0..self.num_vertices()).map(|u| if u == v { 2 * self.mult[v][v] } else { self.mult[v][u] }).sum();
        edges + self.legs.iter().filter(|&&l| l == v).count() as u32
    }

    pub fn betti(&self) -> u32 {
        (self.num_edges() + 1 - self.num_vertices()) as u32
    }

    pub fn total_genus(&self) -> u32 {
        self.genus.iter().sum::<u32>() + self.betti()
    }

    pub fn is_stable(&self) -> bool {
        (0..self.num_vertices()).all(|v| 2 * self.genus[v] + self.valence(v) > 2)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if !seen[v] && self.mult[u][v] > 0 {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn relabeled(&self, p: &[usize]) -> StableGraph {
        // Old vertex v becomes p[v].
        let n = self.num_vertices();
        let mut genus = vec![0; n];
        let mut mult = vec![vec![0; n]; n];
        for u in 0..n {
            genus[p[u]] = self.genus[u];
            for v in 0..n {
                mult[p[u]][p[v]] = self.mult[u][v];
            }
        }
        StableGraph { genus, mult, legs: self.legs.iter().map(|&l| p[l]).collect() }
    }

    fn key(&self) -> Vec<u32> {
        let n = self.num_vertices();
        let mut k = vec![n as u32];
        k.extend(&self.genus);
        k.extend(self.legs.iter().map(|&l| l as u32));
        for u in 0..n {
            for v in u..n {
                k.push(self.mult[u][v]);
            }
        }
        k
    }

    /// Lexicographically smallest relabeling.
    pub fn canonical(&self) -> StableGraph {
        permutations(self.num_vertices())
            .iter()
            .map(|p| self.relabeled(p))
            .min_by_key(|g| g.key())
            .unwrap()
    }

    /// Vertex permutations fixing the graph (legs are fixed pointwise).
    pub fn vertex_automorphisms(&self) -> u64 {
        let k = self.key();
        permutations(self.num_vertices()).iter().filter(|p| self.relabeled(p).key() == k).count() as u64
    }

    /// Permutations of parallel edges and flips/permutations of loops.
    pub fn edge_symmetry(&self) -> u64 {
        let n = self.num_vertices();
        let mut acc = 1;
        for u in 0..n {
            let l = self.mult[u][u];
            acc *= (1u64 << l) * factorial(l);
            for v in (u + 1)..n {
                acc *= factorial(self.mult[u][v]);
            }
        }
        acc
    }

    pub fn automorphisms(&self) -> u64 {
        self.vertex_automorphisms() * self.edge_symmetry()
    }
}

/// Half-edges at a vertex when splitting it: legs, loop ends, and ends of edges to others.
#[derive(Clone, Copy)]
enum Half {
    Leg(usize),
    Loop(usize),
    To(usize),
}

fn degenerations(gr: &StableGraph) -> Vec<StableGraph> {
    let n = gr.num_vertices();
    let mut out = Vec::new();
    for v in 0..n {
        if gr.genus[v] > 0 {
            let mut h = gr.clone();
            h.genus[v] -= 1;
            h.mult[v][v] += 1;
            out.push(h);
        }
        let mut halves = Vec::new();
        for (i, &l) in gr.legs.iter().enumerate() {
            if l == v {
                halves.push(Half::Leg(i));
            }
        }
        for i in 0..gr.mult[v][v] {
            halves.push(Half::Loop(i as usize));
            halves.push(Half::Loop(i as usize));
        }
        for u in 0..n {
            if u != v {
                for _ in 0..gr.mult[v][u] {
                    halves.push(Half::To(u));
                }
            }
        }
        let loops = gr.mult[v][v] as usize;
        for mask in 0u64..(1 << halves.len()) {
            for g1 in 0..=gr.genus[v] {
                // Vertex v keeps the halves outside the mask; a new vertex n takes the rest.
                let mut h = StableGraph {
                    genus: gr.genus.iter().cloned().chain([g1]).collect(),
                    mult: vec![vec![0; n + 1]; n + 1],
                    legs: gr.legs.clone(),
                };
                h.genus[v] = gr.genus[v] - g1;
                for a in 0..n {
                    for b in 0..n {
                        if a != v && b != v {
                            h.mult[a][b] = gr.mult[a][b];
                        }
                    }
                }
                h.mult[v][n] = 1;
                h.mult[n][v] = 1;
                let mut loop_side = vec![Vec::new(); loops];
                for (idx, half) in halves.iter().enumerate() {
                    let side = if mask & (1 << idx) != 0 { n } else { v };
                    match *half {
                        Half::Leg(i) => h.legs[i] = side,
                        Half::Loop(i) => loop_side[i].push(side),
                        Half::To(u) => {
                            h.mult[side][u] += 1;
                            h.mult[u][side] += 1;
                        }
                    }
                }
                for ends in loop_side {
                    let (a, b) = (ends[0], ends[1]);
                    if a == b {
                        h.mult[a][a] += 1;
                    } else {
                        h.mult[a][b] += 1;
                        h.mult[b][a] += 1;
                    }
                }
                if h.is_stable() {
                    out.push(h);
                }
            }
        }
    }
    out
}

/// All stable graphs of genus `g` with `n` legs, by closing the one-vertex graph under
/// degenerations. Sorted by canonical key.
pub fn stable_graphs(g: u32, n: usize) -> Vec<StableGraph> {
    assert!(2 * g as i64 - 2 + n as i64 > 0, "unstable (g, n)");
    let start = StableGraph { genus: vec![g], mult: vec![vec![0]], legs: vec![0; n] };
    let mut found: BTreeMap<Vec<u32>, StableGraph> = BTreeMap::new();
    let mut queue = vec![start.canonical()];
    while let Some(gr) = queue.pop() {
        if found.contains_key(&gr.key()) {
            continue;
        }
        for h in degenerations(&gr) {
            let c = h.canonical();
            if !found.contains_key(&c.key()) {
                queue.push(c);
            }
        }
        found.insert(gr.key(), gr);
    }
    found.into_values().collect()
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Independent enumeration over vertex-labeled graphs. Returns the isomorphism classes
/// and `sum 1/|Aut|` computed by orbit counting, without any automorphism search.
pub fn labeled_enumeration(g: u32, n: usize) -> (Vec<StableGraph>, Scalar) {
    let mut classes: BTreeMap<Vec<u32>, StableGraph> = BTreeMap::new();
    let mut mass = Scalar::zero();
    let vmax = (2 * g as usize + n).saturating_sub(2).max(1);
    for nv in 1..=vmax {
        let slots: Vec<(usize, usize)> = (0..nv).flat_map(|u| (u..nv).map(move |v| (u, v))).collect();
        for gsum in 0..=g {
            for genus in compositions(gsum, nv) {
                let edges = g as i64 - gsum as i64 + nv as i64 - 1;
                if edges < 0 {
                    continue;
                }
                for dist in compositions(edges as u32, slots.len()) {
                    let mut mult = vec![vec![0; nv]; nv];
                    for (&(u, v), &m) in slots.iter().zip(&dist) {
                        mult[u][v] = m;
                        mult[v][u] = m;
                    }
                    for code in 0..nv.pow(n as u32) {
                        let legs: Vec<usize> = (0..n).map(|i| (code / nv.pow(i as u32)) % nv).collect();
                        let gr = StableGraph { genus: genus.clone(), mult: mult.clone(), legs };
                        if !gr.is_connected() || !gr.is_stable() {
                            continue;
                        }
                        let w = int(factorial(nv as u32) as i64) * int(gr.edge_symmetry() as i64);
                        mass += w.recip();
                        let c = gr.canonical();
                        classes.entry(c.key()).or_insert(c);
                    }
                }
            }
        }
    }
    (classes.into_values().collect(), mass)
}

pub fn automorphism_mass(graphs: &[StableGraph]) -> Scalar {
    graphs.iter().map(|gr| int(gr.automorphisms() as i64).recip()).fold(Scalar::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    
    #[test]
    fn class_counts() {
        for (g, n, count) in [(2, 0, 7), (1, 1, 2), (0, 3, 1), (1, 2, 5), (0, 4, 4), (3, 0, 42)] {
            let a = stable_graphs(g, n);
            let (b, mass) = labeled_enumeration(g, n);
            assert_eq!(a.len(), count, "({g},{n})");
            assert_eq!(a, b, "({g},{n})");
            assert_eq!(automorphism_mass(&a), mass, "({g},{n})");
            assert!(a.iter().all(|gr| gr.total_genus() == g && gr.is_connected()));
        }
    }

    #[test]
    fn enumerators_agree_with_more_legs() {
        for (g, n) in [(2, 1), (1, 3)] {
            let a = stable_graphs(g, n);
            let (b, mass) = labeled_enumeration(g, n);
            assert_eq!(a, b, "({g},{n})");
            assert_eq!(automorphism_mass(&a), mass);
        }
    }
}
