use rayon::prelude::*;

use crate::model::Network;

use super::CutError;

/// Largest number of non-terminal super-nodes for exhaustive enumeration.
pub const MAX_FREE_NODES: usize = 20;

/// A bipartition of the super-nodes: `source_side` holds U as a bitmask over
/// node declaration indices. `crossing` lists the edges from U into its
/// complement, in edge order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    source_side: u64,
    crossing: Vec<usize>,
}

impl Cut {
    /// Cut with source side `mask`.
    pub fn from_mask(net: &Network, mask: u64) -> Self {
        let crossing = net
            .all_endpoints()
            .iter()
            .enumerate()
            .filter(|(_, e)| mask >> e.tail & 1 == 1 && mask >> e.head & 1 == 0)
            .map(|(i, _)| i)
            .collect();
        Self {
            source_side: mask,
            crossing,
        }
    }

    pub fn source_side(&self) -> u64 {
        self.source_side
    }

    pub fn contains(&self, node: usize) -> bool {
        self.source_side >> node & 1 == 1
    }

    pub fn crossing_edges(&self) -> &[usize] {
        &self.crossing
    }

    /// Number of antenna-level edges crossing from U to its complement.
    pub fn value(&self) -> usize {
        self.crossing.len()
    }

    /// Source-side node ids, e.g. `{S,R1}`.
    pub fn describe(&self, net: &Network) -> String {
        let ids: Vec<&str> = (0..net.node_count())
            .filter(|&v| self.contains(v))
            .map(|v| net.node_id(v))
            .collect();
        format!("{{{}}}", ids.join(","))
    }
}

/// `M_omega`, the number of crossing edges.
pub fn cut_value(cut: &Cut) -> usize {
    cut.value()
}

/// All cuts separating `s` from `t`, in binary-counting order over the
/// remaining nodes (lowest declaration index is the least significant bit).
#[derive(Debug, Clone)]
pub struct CutEnumerator<'a> {
    net: &'a Network,
    free: Vec<usize>,
    base: u64,
    next: u64,
    total: u64,
}

impl<'a> CutEnumerator<'a> {
    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Source-side mask of the `index`-th cut.
    pub fn mask_at(&self, index: u64) -> u64 {
        let mut mask = self.base;
        for (bit, &v) in self.free.iter().enumerate() {
            if index >> bit & 1 == 1 {
                mask |= 1 << v;
            }
        }
        mask
    }

    pub fn cut_at(&self, index: u64) -> Cut {
        Cut::from_mask(self.net, self.mask_at(index))
    }
}

impl Iterator for CutEnumerator<'_> {
    type Item = Cut;

    fn next(&mut self) -> Option<Cut> {
        if self.next >= self.total {
            return None;
        }
        let cut = self.cut_at(self.next);
        self.next += 1;
        Some(cut)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

/// Resolve a (source, sink) pair to node indices.
pub fn terminals(net: &Network, s: &str, t: &str) -> Result<(usize, usize), CutError> {
    let si = net
        .node_index(s)
        .ok_or_else(|| CutError::UnknownNode(s.to_string()))?;
    let ti = net
        .node_index(t)
        .ok_or_else(|| CutError::UnknownNode(t.to_string()))?;
    if si == ti {
        return Err(CutError::SameTerminal(s.to_string()));
    }
    Ok((si, ti))
}

/// Enumerate every cut between `s` and `t`.
pub fn enumerate_cuts<'a>(net: &'a Network, s: &str, t: &str) -> Result<CutEnumerator<'a>, CutError> {
    let (si, ti) = terminals(net, s, t)?;
    let free: Vec<usize> = (0..net.node_count()).filter(|&v| v != si && v != ti).collect();
    if free.len() > MAX_FREE_NODES {
        return Err(CutError::CeilingExceeded {
            free: free.len(),
            max: MAX_FREE_NODES,
        });
    }
    Ok(CutEnumerator {
        net,
        total: 1u64 << free.len(),
        free,
        base: 1 << si,
        next: 0,
    })
}

/// Minimum of `f` over all cuts, with the lowest-index cut attaining it.
///
/// Cuts are evaluated in parallel chunks; the reduction runs in index order,
/// so the result (and the first error, if any) does not depend on the
/// number of worker threads.
pub fn min_over_cuts<E, F>(cuts: &CutEnumerator<'_>, f: F) -> Result<(usize, Cut), E>
where
    F: Fn(&Cut) -> Result<usize, E> + Sync,
    E: Send,
{
    const CHUNK: u64 = 256;
    let total = cuts.len();
    let partial: Vec<Result<Option<(usize, u64)>, E>> = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut best: Option<(usize, u64)> = None;
            for i in chunk * CHUNK..((chunk + 1) * CHUNK).min(total) {
                let v = f(&cuts.cut_at(i))?;
                if best.is_none_or(|(b, _)| v < b) {
                    best = Some((v, i));
                }
            }
            Ok(best)
        })
        .collect();
    let mut best: Option<(usize, u64)> = None;
    for p in partial {
        if let Some((v, i)) = p? {
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, i));
            }
        }
    }
    let (v, i) = best.expect("at least one cut");
    Ok((v, cuts.cut_at(i)))
}

/// Evaluate `f` on every cut, in enumeration order.
pub fn map_cuts<T, F>(cuts: &CutEnumerator<'_>, f: F) -> Vec<T>
where
    F: Fn(Cut) -> T + Sync,
    T: Send,
{
    (0..cuts.len()).into_par_iter().map(|i| f(cuts.cut_at(i))).collect()
}
