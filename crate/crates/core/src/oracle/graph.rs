//! The pair graph on a box: vertices `(x, y)` with `|x|, |y| <= B`, an edge
//! wherever `u v + n` is a square. 4-cliques are exactly the D(n)-quadruples
//! inside the box.

use rayon::prelude::*;

use super::verify_quadruple;
use crate::builder::QuadrupleCertificate;
use crate::ring::{RingContext, RingElement};

/// Residue modulus for the pre-filter. A square in `Z[sqrt d]` stays a
/// square mod 72, and about 3 to 8 percent of residue pairs survive.
const M: i64 = 72;

#[derive(Clone, Debug)]
pub struct PairGraph {
    d: i64,
    n: (i64, i64),
    vertices: Vec<(i64, i64)>,
    /// Neighbours with a larger index, ascending, with the edge's root.
    forward: Vec<Vec<(u32, (i64, i64))>>,
}

/// `(|y|, |x|, x < 0, y < 0)`: vertex order.
fn order_key(&(x, y): &(i64, i64)) -> (i64, i64, bool, bool) {
    (y.abs(), x.abs(), x < 0, y < 0)
}

fn class_of(x: i64, y: i64) -> usize {
    (x.rem_euclid(M) * M + y.rem_euclid(M)) as usize
}

fn isqrt_exact(v: i64) -> Option<i64> {
    if v < 0 {
        return None;
    }
    let mut s = (v as f64).sqrt() as i64;
    while s * s > v {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= v {
        s += 1;
    }
    (s * s == v).then_some(s)
}

/// Square root of `(zx, zy)` in machine integers, canonical sign.
fn small_root(d: i64, zx: i64, zy: i64) -> Option<(i64, i64)> {
    if zy & 1 != 0 || zx < 0 {
        return None;
    }
    let norm = (zx as i128) * (zx as i128) - (d as i128) * (zy as i128) * (zy as i128);
    if norm < 0 || norm > i64::MAX as i128 {
        return None;
    }
    let t = isqrt_exact(norm as i64)?;
    let half_y = zy / 2;
    for (p2, dq2) in [(zx + t, zx - t), (zx - t, zx + t)] {
        if p2 & 1 != 0 {
            continue;
        }
        let (p2, dq2) = (p2 / 2, dq2 / 2);
        if dq2 % d != 0 {
            continue;
        }
        let (Some(p), Some(q)) = (isqrt_exact(p2), isqrt_exact(dq2 / d)) else {
            continue;
        };
        let q = if p == 0 {
            if half_y != 0 {
                continue;
            }
            q
        } else if p * q == half_y {
            q
        } else if p * q == -half_y {
            -q
        } else {
            continue;
        };
        return Some((p, q));
    }
    None
}

impl PairGraph {
    /// Builds the graph for the box `|x|, |y| <= bound`.
    pub fn new(ctx: &RingContext, n: &RingElement, bound: u32) -> Self {
        let d = ctx.d() as i64;
        let n_small = n
            .to_i64_pair()
            .filter(|&(x, y)| x.abs() < 1 << 40 && y.abs() < 1 << 40)
            .expect("n must be small enough for the box search");
        let b = i64::from(bound);
        let mut vertices: Vec<(i64, i64)> = (-b..=b)
            .flat_map(|x| (-b..=b).map(move |y| (x, y)))
            .filter(|&v| v != (0, 0))
            .collect();
        vertices.sort_by_key(order_key);

        // Which residue pairs (class u, class v) can give a square u v + n.
        let classes = (M * M) as usize;
        let mut square = vec![false; classes];
        for p in 0..M {
            for q in 0..M {
                square[class_of(p * p + d * q * q, 2 * p * q)] = true;
            }
        }
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); classes];
        for (i, &(x, y)) in vertices.iter().enumerate() {
            buckets[class_of(x, y)].push(i as u32);
        }
        let occupied: Vec<usize> = (0..classes).filter(|&c| !buckets[c].is_empty()).collect();
        let allowed: Vec<Vec<usize>> = (0..classes)
            .into_par_iter()
            .map(|cu| {
                if buckets[cu].is_empty() {
                    return Vec::new();
                }
                let (ux, uy) = (cu as i64 / M, cu as i64 % M);
                occupied
                    .iter()
                    .copied()
                    .filter(|&cv| {
                        let (vx, vy) = (cv as i64 / M, cv as i64 % M);
                        square[class_of(ux * vx + d * uy * vy + n_small.0, ux * vy + uy * vx + n_small.1)]
                    })
                    .collect()
            })
            .collect();

        let (nx, ny) = n_small;
        let forward: Vec<Vec<(u32, (i64, i64))>> = (0..vertices.len())
            .into_par_iter()
            .map(|i| {
                let (ux, uy) = vertices[i];
                let mut out = Vec::new();
                for &cv in &allowed[class_of(ux, uy)] {
                    let bucket = &buckets[cv];
                    let start = bucket.partition_point(|&j| j as usize <= i);
                    for &j in &bucket[start..] {
                        let (vx, vy) = vertices[j as usize];
                        let zx = ux * vx + d * uy * vy + nx;
                        let zy = ux * vy + uy * vx + ny;
                        if let Some(root) = small_root(d, zx, zy) {
                            out.push((j, root));
                        }
                    }
                }
                out.sort_unstable_by_key(|&(j, _)| j);
                // Confirm every surviving edge with the exact ring routine.
                out.retain(|&(j, root)| {
                    let u = RingElement::new(ux, uy);
                    let (vx, vy) = vertices[j as usize];
                    let z = &ctx.mul(&u, &RingElement::new(vx, vy)) + n;
                    ctx.is_square(&z) == Some(RingElement::new(root.0, root.1))
                });
                out
            })
            .collect();
        Self {
            d,
            n: n_small,
            vertices,
            forward,
        }
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> RingElement {
        let (x, y) = self.vertices[i];
        RingElement::new(x, y)
    }

    pub fn edge_count(&self) -> usize {
        self.forward.iter().map(Vec::len).sum()
    }

    /// The root labelling edge `{i, j}`, if present.
    pub fn edge(&self, i: usize, j: usize) -> Option<(i64, i64)> {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let list = &self.forward[lo];
        list.binary_search_by_key(&(hi as u32), |&(k, _)| k)
            .ok()
            .map(|pos| list[pos].1)
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> bool {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let list = &mut self.forward[lo];
        match list.binary_search_by_key(&(hi as u32), |&(k, _)| k) {
            Ok(pos) => {
                list.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// All `(i, j)` edges with `i < j`, in order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.forward
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().map(move |&(j, _)| (i, j as usize)))
    }

    /// 4-cliques `i < j < k < l` in lexicographic order, at most `limit`.
    pub fn cliques(&self, limit: usize) -> Vec<[usize; 4]> {
        let per_vertex: Vec<Vec<[usize; 4]>> = (0..self.vertices.len())
            .into_par_iter()
            .map(|a| {
                let mut out = Vec::new();
                let na: Vec<u32> = self.forward[a].iter().map(|&(j, _)| j).collect();
                for (pos, &b) in na.iter().enumerate() {
                    let nab = intersect(&na[pos + 1..], &self.forward[b as usize]);
                    for (pos_c, &c) in nab.iter().enumerate() {
                        let nabc = intersect(&nab[pos_c + 1..], &self.forward[c as usize]);
                        for &d in &nabc {
                            out.push([a, b as usize, c as usize, d as usize]);
                            if out.len() >= limit {
                                return out;
                            }
                        }
                    }
                }
                out
            })
            .collect();
        per_vertex.into_iter().flatten().take(limit).collect()
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn n(&self) -> (i64, i64) {
        self.n
    }
}

/// Sorted `left` (vertex ids) intersected with sorted `right` (adjacency).
fn intersect(left: &[u32], right: &[(u32, (i64, i64))]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        match left[i].cmp(&right[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(left[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Every D(n)-quadruple in the box `|x|, |y| <= bound`, up to `limit`, each
/// independently re-verified. Elements appear in vertex order.
pub fn brute_force_search(
    n: &RingElement,
    ctx: &RingContext,
    bound: u32,
    limit: usize,
) -> Vec<QuadrupleCertificate> {
    let graph = PairGraph::new(ctx, n, bound);
    graph
        .cliques(limit)
        .into_iter()
        .map(|q| {
            let elements = q.map(|i| graph.vertex(i));
            let mut cert = verify_quadruple(&elements, n, ctx)
                .expect("a 4-clique of the pair graph is a quadruple");
            cert.provenance = crate::builder::Provenance::new("brute_force").with("bound", bound);
            cert
        })
        .collect()
}
