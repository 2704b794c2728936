//! Graph sum in the normalized canonical frame.
//!
//! With the frame normalized by `Delta^{1/2}`, every half-edge, leg and tail carries
//! `Delta^{-1/2}` and the vertex carries `Delta^{(2g_v - 2 + n_v)/2}`; the half powers
//! cancel vertex by vertex, leaving `Delta^{g_v - 1}`. Edge ends and legs are markings of
//! their vertex carrying `psi` to the power of their `z` exponent; kappa tails are summed
//! as extra markings with weight `1/m!`.

use super::graphs::{stable_graphs, StableGraph};
use super::psi::PsiCache;
use crate::canonical::CanonicalData;
use crate::error::{Error, Result};
use crate::exactseries::scalar::{int, Scalar};
use crate::exactseries::{BiSeries, XPoly};
use crate::frobenius::{Coh4, Sector};
use crate::rmatrix::{EdgeBivector, RMatrix};
use num_traits::Zero;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Mutex;

/// Ingredients of the graph sum at one `(lambda, mu, D, K)`.
pub struct GraphSum<'a> {
    pub data: &'a CanonicalData,
    pub r: &'a RMatrix,
    pub edge: &'a EdgeBivector,
    pub psi: &'a PsiCache,
    /// `Delta_s^(g - 1)` for `g = 0..`, indexed `[sector][g]`.
    delta_pow: Vec<Vec<BiSeries>>,
    vertex_memo: Mutex<HashMap<(u32, usize, Vec<u32>), BiSeries>>,
}

#[derive(Clone, Debug)]
pub struct GraphContribution {
    pub graph: StableGraph,
    pub automorphisms: u64,
    /// Sum of all `Delta` half exponents before cancellation; always even.
    pub half_exponent: i64,
    pub value: XPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub graph: StableGraph,
    pub automorphisms: u64,
    pub half_exponent: i64,
    pub x_degree: Option<usize>,
}

impl GraphContribution {
    pub fn report(&self) -> GraphReport {
        GraphReport {
            graph: self.graph.clone(),
            automorphisms: self.automorphisms,
            half_exponent: self.half_exponent,
            x_degree: self.value.degree(),
        }
    }
}

fn sign(k: usize) -> Scalar {
    if k % 2 == 0 { int(1) } else { int(-1) }
}

/// Ordered compositions of `total` into positive parts.
fn positive_compositions(total: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in positive_compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl<'a> GraphSum<'a> {
    pub fn new(data: &'a CanonicalData, r: &'a RMatrix, edge: &'a EdgeBivector, psi: &'a PsiCache, gmax: u32) -> Result<Self> {
        let mut delta_pow = Vec::new();
        for f in &data.frames {
            let inv = f.delta.invert()?;
            let mut v = vec![inv, BiSeries::one(data.trunc())];
            for g in 2..=gmax {
                let next = &v[(g - 1) as usize] * &f.delta;
                v.push(next);
            }
            delta_pow.push(v);
        }
        Ok(GraphSum { data, r, edge, psi, delta_pow, vertex_memo: Mutex::new(HashMap::new()) })
    }

    fn trunc(&self) -> u32 {
        self.data.trunc()
    }

    /// Tail coefficient: `z (1 - R_1(-z)) = sum_k t_k z^(k+1)`.
    fn tail(&self, s: usize, k: usize) -> Result<BiSeries> {
        let r1 = &self.r.sectors[s].r1;
        if k >= r1.len() {
            return Err(Error::Dimension(format!("tail of order {k} needs K >= {k}")));
        }
        Ok(r1[k].scale(&-sign(k)))
    }

    /// `Delta^(g-1)` times the kappa-tail-summed psi integral with fixed exponents `a`.
    fn vertex(&self, g: u32, s: usize, a: &[u32]) -> Result<BiSeries> {
        let n = a.len() as i64;
        let dim = 3 * g as i64 - 3 + n;
        let used: i64 = a.iter().map(|&x| x as i64).sum();
        let t = self.trunc();
        if used > dim {
            return Ok(BiSeries::zero(t));
        }
        let mut key_a = a.to_vec();
        key_a.sort_unstable();
        let key = (g, s, key_a);
        if let Some(v) = self.vertex_memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let rest = (dim - used) as u32;
        let mut acc = BiSeries::zero(t);
        for parts in positive_compositions(rest) {
            let m = parts.len() as u32;
            let mut exps = a.to_vec();
            exps.extend(parts.iter().map(|k| k + 1));
            let integral = self.psi.get(g, &exps);
            if integral.is_zero() {
                continue;
            }
            let mut term = BiSeries::constant(t, integral / Scalar::from_integer(crate::exactseries::scalar::factorial(m)));
            for &k in &parts {
                term = &term * &self.tail(s, k as usize)?;
            }
            acc += &term;
        }
        let v = &acc * &self.delta_pow[s][g as usize];
        self.vertex_memo.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn leg(&self, s: usize, gamma: &Coh4, k: usize) -> Result<XPoly> {
        if k > self.r.kmax {
            return Err(Error::Dimension(format!("leg of order {k} needs K >= {k}")));
        }
        let row = self.r.sectors[s].row_x(k);
        let mut acc = XPoly::zero(self.trunc());
        for b in 0..4 {
            acc = &acc + &row[b].scale(&gamma[b]);
        }
        Ok(acc.scale(&sign(k)))
    }

    fn edge_factor(&self, s: usize, t: usize, i: u32, j: u32) -> Result<XPoly> {
        if (i + j) as usize > self.edge.max_degree {
            return Err(Error::Dimension(format!("edge term z^{i} w^{j} needs K >= {}", i + j + 1)));
        }
        Ok(self.edge.get(Sector::ALL[s], Sector::ALL[t], i as usize, j as usize).clone())
    }

    /// Contribution of one graph with legs carrying the classes `insertions`.
    pub fn contribution(&self, gr: &StableGraph, insertions: &[Coh4]) -> Result<GraphContribution> {
        let nv = gr.num_vertices();
        let edges = gr.edges();
        // Slots: two per edge, then one per leg. Each slot sits at a vertex.
        let mut slot_vertex = Vec::new();
        for &(u, v) in &edges {
            slot_vertex.push(u);
            slot_vertex.push(v);
        }
        slot_vertex.extend(gr.legs.iter().cloned());
        let dims: Vec<i64> = (0..nv).map(|v| 3 * gr.genus[v] as i64 - 3 + gr.valence(v) as i64).collect();
        let mut total = XPoly::zero(self.trunc());
        let mut exps = vec![0u32; slot_vertex.len()];
        let mut assignments = Vec::new();
        collect_exponents(&slot_vertex, &dims, 0, &mut vec![0; nv], &mut exps, &mut assignments);
        for code in 0..4usize.pow(nv as u32) {
            let sectors: Vec<usize> = (0..nv).map(|v| (code >> (2 * v)) & 3).collect();
            for e in &assignments {
                let mut term = XPoly::constant(BiSeries::one(self.trunc()));
                let mut zero = false;
                for v in 0..nv {
                    let a: Vec<u32> = slot_vertex.iter().zip(e).filter(|(&sv, _)| sv == v).map(|(_, &x)| x).collect();
                    let w = self.vertex(gr.genus[v], sectors[v], &a)?;
                    if w.is_zero() {
                        zero = true;
                        break;
                    }
                    term = term.mul_series(&w);
                }
                if zero {
                    continue;
                }
                for (idx, &(u, v)) in edges.iter().enumerate() {
                    let f = self.edge_factor(sectors[u], sectors[v], e[2 * idx], e[2 * idx + 1])?;
                    term = &term * &f;
                }
                for (i, &v) in gr.legs.iter().enumerate() {
                    let f = self.leg(sectors[v], &insertions[i], e[2 * edges.len() + i] as usize)?;
                    term = &term * &f;
                }
                total = &total + &term;
            }
        }
        let aut = gr.automorphisms();
        let half_exponent: i64 = (0..nv)
            .map(|v| 2 * gr.genus[v] as i64 - 2 + gr.valence(v) as i64)
            .sum::<i64>()
            - slot_vertex.len() as i64;
        if half_exponent % 2 != 0 {
            return Err(Error::Other("odd total Delta half exponent".into()));
        }
        let value = total.scale(&int(aut as i64).recip());
        Ok(GraphContribution { graph: gr.clone(), automorphisms: aut, half_exponent, value })
    }

    /// All graph contributions to `<<insertions>>_g`; with no insertions this is `F_g`.
    pub fn contributions(&self, g: u32, insertions: &[Coh4]) -> Result<Vec<GraphContribution>> {
        stable_graphs(g, insertions.len()).iter().map(|gr| self.contribution(gr, insertions)).collect()
    }

    pub fn correlator(&self, g: u32, insertions: &[Coh4]) -> Result<XPoly> {
        let mut acc = XPoly::zero(self.trunc());
        for c in self.contributions(g, insertions)? {
            acc = &acc + &c.value;
        }
        Ok(acc)
    }
}

/// Every assignment of psi exponents to slots with per-vertex sums within the dimension.
fn collect_exponents(slots: &[usize], dims: &[i64], i: usize, used: &mut Vec<i64>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i == slots.len() {
        out.push(cur.clone());
        return;
    }
    let v = slots[i];
    let mut e = 0;
    while used[v] + e <= dims[v] {
        cur[i] = e as u32;
        used[v] += e;
        collect_exponents(slots, dims, i + 1, used, cur, out);
        used[v] -= e;
        e += 1;
    }
}

/// The class `H1 + H2` as a constant coefficient vector.
pub fn h1_plus_h2() -> Coh4 {
    [int(0), int(1), int(1), int(0)]
}
