use super::SetFunction;
use crate::error::{Error, Result};
use crate::hypercore::VertexSubset;

/// Exact minimizer of a symmetric submodular function over nonempty proper
/// subsets of `ground`.
///
/// Each phase builds a maximum-adjacency style ordering of the current
/// groups (always starting from the lowest-index group, ties to the lowest
/// index), records the last group as a candidate, and merges it into the
/// second-to-last. After `k - 1` phases the best candidate is optimal.
pub fn queyranne_min<F: SetFunction + ?Sized>(f: &mut F, ground: &VertexSubset) -> Result<(VertexSubset, f64)> {
    let k = ground.len();
    if k < 2 {
        return Err(Error::GroundTooSmall(k));
    }
    let universe = ground.universe();
    let mut groups: Vec<VertexSubset> = ground.iter().map(|v| VertexSubset::singleton(universe, v)).collect();
    let mut best: Option<(VertexSubset, f64)> = None;

    while groups.len() >= 2 {
        let g = groups.len();
        let singles = groups.iter().map(|s| f.evaluate(s)).collect::<Result<Vec<f64>>>()?;
        let mut placed = vec![false; g];
        let mut order = Vec::with_capacity(g);
        let mut acc = groups[0].clone();
        placed[0] = true;
        order.push(0);
        while order.len() < g {
            let remaining: Vec<usize> = (0..g).filter(|&j| !placed[j]).collect();
            let next = if remaining.len() == 1 {
                remaining[0]
            } else {
                let mut pick = (f64::INFINITY, usize::MAX);
                for &j in &remaining {
                    let key = f.evaluate(&acc.union(&groups[j]))? - singles[j];
                    if key < pick.0 {
                        pick = (key, j);
                    }
                }
                pick.1
            };
            placed[next] = true;
            acc.union_with(&groups[next]);
            order.push(next);
        }
        let t = order[g - 1];
        let s = order[g - 2];
        let candidate = singles[t];
        if best.as_ref().is_none_or(|(_, v)| candidate < *v) {
            best = Some((groups[t].clone(), candidate));
        }
        let merged = groups[t].clone();
        groups[s].union_with(&merged);
        groups.remove(t);
    }
    Ok(best.expect("at least one phase ran"))
}
