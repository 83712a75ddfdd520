//! Instance generators: random hypergraphs, small illustrative families and
//! adversarial pairs that cut-value queries cannot tell apart.
//!
//! Every generator is deterministic in its arguments and returns JSON
//! metadata locating the distinguished sets of the instance.

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, VertexSubset};

/// Largest exponential family we will materialize.
pub const MAX_GENERATED_EDGES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub graph: Hypergraph,
    pub metadata: Value,
}

/// Two hypergraphs on the same vertex set with identical cut functions.
#[derive(Debug, Clone, PartialEq)]
pub struct InstancePair {
    pub h1: Hypergraph,
    pub h2: Hypergraph,
    pub metadata: Value,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// `m` edges with sizes uniform in `[r_min, r_max]` and uniformly chosen
/// vertex sets; weights uniform in `[1, 10]` when `weighted`, else 1.
pub fn gen_random(n: usize, r_min: usize, r_max: usize, m: usize, weighted: bool, seed: u64) -> Result<Hypergraph> {
    if !(2 <= r_min && r_min <= r_max && r_max <= n) {
        return Err(invalid(format!(
            "need 2 <= r_min <= r_max <= n, got {r_min}, {r_max}, {n}"
        )));
    }
    if m == 0 {
        return Err(invalid("m must be at least 1"));
    }
    let mut rng = crate::streams::rng(seed, crate::streams::INSTANCES);
    let edges: Vec<(Vec<usize>, f64)> = (0..m)
        .map(|_| {
            let k = rng.random_range(r_min..=r_max);
            let vs = rand::seq::index::sample(&mut rng, n, k).into_vec();
            let w = if weighted { rng.random_range(1.0..=10.0) } else { 1.0 };
            (vs, w)
        })
        .collect();
    Hypergraph::new(n, edges)
}

/// Masks over `bits` positions with at least `min_ones` set bits, ascending.
fn masks_with_at_least(bits: usize, min_ones: u32) -> impl Iterator<Item = u64> {
    (0..(1u64 << bits)).filter(move |m| m.count_ones() >= min_ones)
}

fn mask_vertices(mask: u64, offset: usize) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1).map(move |i| i + offset)
}

/// Blocks `A, B, C` of sizes `a, b, c`, with every vertex set meeting all
/// three as a unit edge.
pub fn gen_tripartite(a: usize, b: usize, c: usize) -> Result<Instance> {
    if a == 0 || b == 0 || c == 0 {
        return Err(invalid("block sizes must be positive"));
    }
    let n = a + b + c;
    if n > 20 {
        return Err(Error::SizeGuard {
            what: "three-block example",
            limit: 20,
            got: n,
        });
    }
    let count = ((1usize << a) - 1) * ((1usize << b) - 1) * ((1usize << c) - 1);
    if count > MAX_GENERATED_EDGES {
        return Err(Error::SizeGuard {
            what: "three-block example edges",
            limit: MAX_GENERATED_EDGES,
            got: count,
        });
    }
    let block = |lo: usize, len: usize| ((1u64 << len) - 1) << lo;
    let (ma, mb, mc) = (block(0, a), block(a, b), block(a + b, c));
    let edges: Vec<Vec<usize>> = (1u64..(1 << n))
        .filter(|s| s & ma != 0 && s & mb != 0 && s & mc != 0)
        .map(|s| mask_vertices(s, 0).collect())
        .collect();
    Ok(Instance {
        graph: Hypergraph::unweighted(n, edges)?,
        metadata: json!({
            "family": "tripartite",
            "params": {"a": a, "b": b, "c": c},
            "blocks": {
                "A": (0..a).collect::<Vec<_>>(),
                "B": (a..a + b).collect::<Vec<_>>(),
                "C": (a + b..n).collect::<Vec<_>>(),
            },
        }),
    })
}

/// `copies` disjoint 4-cliques against `copies` disjoint copies of all four
/// 3-subsets of 4 vertices. Copy `i` uses vertices `4i..4i+4`; the pair
/// `{4i, 4i+1}` is recorded as distinguished.
pub fn gen_clique_triples_pair(copies: usize) -> Result<InstancePair> {
    if copies == 0 {
        return Err(invalid("copies must be at least 1"));
    }
    let n = 4 * copies;
    let mut pairs = Vec::new();
    let mut triples = Vec::new();
    for i in 0..copies {
        let o = 4 * i;
        for a in 0..4 {
            for b in (a + 1)..4 {
                pairs.push(vec![o + a, o + b]);
                for c in (b + 1)..4 {
                    triples.push(vec![o + a, o + b, o + c]);
                }
            }
        }
    }
    let distinguished: Vec<[usize; 2]> = (0..copies).map(|i| [4 * i, 4 * i + 1]).collect();
    Ok(InstancePair {
        h1: Hypergraph::unweighted(n, pairs)?,
        h2: Hypergraph::unweighted(n, triples)?,
        metadata: json!({
            "family": "clique-triples",
            "params": {"copies": copies},
            "distinguished": distinguished,
        }),
    })
}

/// Two complete hypergraphs on sides `V = 0..k` and `V' = k..2k` plus a
/// gadget on `{u, v, u', v'} = {0, 1, k, k+1}`: all six pairs in `h1`, all
/// four triples in `h2`. Gadget edges come last.
pub fn gen_lb_nbr1_pair(n_side: usize) -> Result<InstancePair> {
    if n_side > 12 {
        return Err(Error::SizeGuard {
            what: "neighbor lower-bound side",
            limit: 12,
            got: n_side,
        });
    }
    if n_side < 2 {
        return Err(invalid("each side needs at least 2 vertices"));
    }
    let n = 2 * n_side;
    let mut base: Vec<Vec<usize>> = Vec::new();
    for offset in [0, n_side] {
        base.extend(masks_with_at_least(n_side, 2).map(|m| mask_vertices(m, offset).collect()));
    }
    let gadget = [0, 1, n_side, n_side + 1];
    let mut h1 = base.clone();
    let mut h2 = base;
    for a in 0..4 {
        for b in (a + 1)..4 {
            h1.push(vec![gadget[a], gadget[b]]);
            for c in (b + 1)..4 {
                h2.push(vec![gadget[a], gadget[b], gadget[c]]);
            }
        }
    }
    let side_edges = 2 * ((1usize << n_side) - n_side - 1);
    Ok(InstancePair {
        h1: Hypergraph::unweighted(n, h1)?,
        h2: Hypergraph::unweighted(n, h2)?,
        metadata: json!({
            "family": "lb-nbr1",
            "params": {"n_side": n_side},
            "side": (0..n_side).collect::<Vec<_>>(),
            "gadget": gadget,
            "first_gadget_edge": side_edges,
        }),
    })
}

/// Subset count `2^(n/2)` (regime 1) or `2^(n/4)` (regime 2).
pub fn lb_edge_count(n: usize, regime: u8) -> Result<usize> {
    match regime {
        1 if n.is_multiple_of(2) => Ok(1 << (n / 2)),
        2 if n.is_multiple_of(4) => Ok(1 << (n / 4)),
        1 | 2 => Err(invalid(format!("regime {regime} needs n divisible by {}", 2 * regime))),
        _ => Err(invalid(format!("unknown regime {regime}"))),
    }
}

/// The cut-edge lower-bound family on `v_0, ..., v_n` (vertex `i` is `v_i`).
///
/// Every subset `S` of `{v_1..v_n}` with `|S| >= 2` yields one edge: `S` plus
/// `v_0` if `S` is among `2^(n/2)` or `2^(n/4)` subsets drawn without
/// replacement, `S` itself otherwise.
pub fn gen_lb_edge(n: usize, regime: u8, seed: u64) -> Result<Instance> {
    let r = lb_edge_count(n, regime)?;
    let mut inst = gen_lb_edge_with_count(n, r, seed)?;
    inst.metadata["params"]["regime"] = json!(regime);
    Ok(inst)
}

/// As [`gen_lb_edge`] with the number of subsets joined to `v_0` given directly.
pub fn gen_lb_edge_with_count(n: usize, r: usize, seed: u64) -> Result<Instance> {
    if n > 16 {
        return Err(Error::SizeGuard {
            what: "edge lower-bound family",
            limit: 16,
            got: n,
        });
    }
    if n < 2 {
        return Err(invalid("need n >= 2"));
    }
    let subsets: Vec<u64> = masks_with_at_least(n, 2).collect();
    if r > subsets.len() {
        return Err(invalid(format!("cannot choose {r} of {} subsets", subsets.len())));
    }
    let mut rng = crate::streams::rng(seed, crate::streams::INSTANCES);
    let mut chosen = vec![false; subsets.len()];
    for i in rand::seq::index::sample(&mut rng, subsets.len(), r) {
        chosen[i] = true;
    }
    let mut with_v0 = Vec::with_capacity(r);
    let edges: Vec<Vec<usize>> = subsets
        .iter()
        .zip(&chosen)
        .map(|(&s, &c)| {
            let mut vs: Vec<usize> = mask_vertices(s, 1).collect();
            if c {
                with_v0.push(vs.clone());
                vs.insert(0, 0);
            }
            vs
        })
        .collect();
    Ok(Instance {
        graph: Hypergraph::unweighted(n + 1, edges)?,
        metadata: json!({
            "family": "lb-edge",
            "params": {"n": n, "count": r, "seed": seed},
            "distinguished_cut": [0],
            "joined_subsets": with_v0,
        }),
    })
}

/// Sum of edge weights inside `x`.
pub fn induced_weight(h: &Hypergraph, x: &VertexSubset) -> f64 {
    h.induced(x).graph.total_weight()
}
