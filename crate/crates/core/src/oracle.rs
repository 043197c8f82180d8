//! Brute-force ground truth for tiny Hamming graphs.
//!
//! Nothing here uses the construction module: the graph is materialized by pairwise
//! distance checks, the independence number comes from a branch-and-bound search, and
//! `f(G)` from an exhaustive scan over `(alpha+1)`-subsets.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::hamming::{self, GraphParams, Vertex, VertexRank};

pub const DEFAULT_CAP: u64 = 4096;
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;

/// Explicit adjacency matrix of `H(n,k)`, rows as bitsets indexed by vertex rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseGraph {
    params: GraphParams,
    vertex_count: usize,
    words: usize,
    rows: Vec<u64>,
}

/// Materializes `H(n,k)` by testing every pair of vertices for Hamming distance one.
pub fn build_dense(params: &GraphParams, cap: u64) -> Result<DenseGraph> {
    let too_large = || Error::TooLarge {
        vertices: num_traits::pow(BigUint::from(params.k()), params.n()),
        cap,
    };
    let count = params.vertex_count().map_err(|_| too_large())?;
    if count > cap {
        return Err(too_large());
    }
    let count = count as usize;
    let vertices: Vec<Vertex> = (0..count as u64)
        .map(|r| hamming::unrank(VertexRank(r), params))
        .collect::<Result<_>>()?;
    let words = count.div_ceil(64);
    let mut rows = vec![0u64; count * words];
    for a in 0..count {
        for b in (a + 1)..count {
            if hamming::are_adjacent(&vertices[a], &vertices[b])? {
                rows[a * words + b / 64] |= 1 << (b % 64);
                rows[b * words + a / 64] |= 1 << (a % 64);
            }
        }
    }
    Ok(DenseGraph {
        params: *params,
        vertex_count: count,
        words,
        rows,
    })
}

impl DenseGraph {
    pub fn params(&self) -> &GraphParams {
        &self.params
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.rows[a * self.words..(a + 1) * self.words]
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.row(a)[b / 64] & (1 << (b % 64)) != 0
    }

    pub fn degree(&self, a: usize) -> usize {
        self.row(a).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count).map(|a| self.degree(a)).sum::<usize>() / 2
    }

    /// Maximum degree of the subgraph induced by `subset` (vertex ranks).
    pub fn induced_max_degree(&self, subset: &[usize]) -> usize {
        subset
            .iter()
            .map(|&a| subset.iter().filter(|&&b| self.is_adjacent(a, b)).count())
            .max()
            .unwrap_or(0)
    }

    pub fn is_independent(&self, subset: &[usize]) -> bool {
        self.induced_max_degree(subset) == 0
    }
}

type Bits = Vec<u64>;

fn first_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .position(|&w| w != 0)
        .map(|i| i * 64 + bits[i].trailing_zeros() as usize)
}

fn clear(bits: &mut [u64], i: usize) {
    bits[i / 64] &= !(1 << (i % 64));
}

/// Exact maximum independent set with its size, plus the number of search nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisOutcome {
    pub size: usize,
    pub witness: Vec<usize>,
    pub nodes: u64,
}

struct MisSearch<'a> {
    g: &'a DenseGraph,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
}

impl MisSearch<'_> {
    /// Greedy clique partition of `candidates` in `G` (a colouring of the complement).
    /// Returns vertices in partition order with the running number of cliques; an
    /// independent set uses at most one vertex per clique.
    fn partition(&self, candidates: &Bits) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut uncovered = candidates.clone();
        let mut cliques = 0;
        while uncovered.iter().any(|&w| w != 0) {
            cliques += 1;
            let mut open = uncovered.clone();
            while let Some(v) = first_bit(&open) {
                clear(&mut uncovered, v);
                out.push((v, cliques));
                for (o, r) in open.iter_mut().zip(self.g.row(v)) {
                    *o &= r;
                }
            }
        }
        out
    }

    fn expand(&mut self, mut candidates: Bits) {
        self.nodes += 1;
        let order = self.partition(&candidates);
        for &(v, bound) in order.iter().rev() {
            if self.current.len() + bound <= self.best.len() {
                return;
            }
            self.current.push(v);
            let mut next = candidates.clone();
            clear(&mut next, v);
            for (n, r) in next.iter_mut().zip(self.g.row(v)) {
                *n &= !r;
            }
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            clear(&mut candidates, v);
        }
    }
}

/// Greedy maximal independent set in rank order; a starting lower bound.
fn greedy_independent(g: &DenseGraph) -> Vec<usize> {
    let mut blocked = vec![0u64; g.words];
    let mut out = Vec::new();
    for v in 0..g.vertex_count {
        if blocked[v / 64] & (1 << (v % 64)) == 0 {
            out.push(v);
            for (b, r) in blocked.iter_mut().zip(g.row(v)) {
                *b |= r;
            }
        }
    }
    out
}

/// Branch and bound with clique-partition upper bounds.
pub fn maximum_independent_set(g: &DenseGraph) -> Result<MisOutcome> {
    if g.vertex_count as u64 > DEFAULT_CAP {
        return Err(Error::TooLarge {
            vertices: BigUint::from(g.vertex_count),
            cap: DEFAULT_CAP,
        });
    }
    let mut all = vec![0u64; g.words];
    for v in 0..g.vertex_count {
        all[v / 64] |= 1 << (v % 64);
    }
    let mut search = MisSearch {
        g,
        best: greedy_independent(g),
        current: Vec::new(),
        nodes: 0,
    };
    if g.vertex_count > 0 {
        search.expand(all);
    }
    let mut witness = search.best;
    witness.sort_unstable();
    Ok(MisOutcome {
        size: witness.len(),
        witness,
        nodes: search.nodes,
    })
}

/// Independence number of `g`.
pub fn exact_mis(g: &DenseGraph) -> Result<usize> {
    maximum_independent_set(g).map(|o| o.size)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FOutcome {
    /// Minimum over `(alpha+1)`-subsets of the maximum induced degree.
    pub value: usize,
    /// A subset achieving `value`, ascending ranks.
    pub witness: Vec<usize>,
    /// Complete subsets whose maximum degree was evaluated.
    pub subsets_examined: u64,
    /// Search nodes, partial subsets included.
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FOptions {
    pub budget: u64,
    /// A known `(alpha+1)`-subset; its induced maximum degree (measured here) becomes the
    /// initial upper bound, and the scan only looks for strictly smaller values.
    pub seed: Option<Vec<usize>>,
}

impl Default for FOptions {
    fn default() -> Self {
        FOptions {
            budget: DEFAULT_SUBSET_BUDGET,
            seed: None,
        }
    }
}

pub fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::from(0u32);
    }
    let r = r.min(n - r);
    let mut acc = BigUint::from(1u32);
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

struct FSearch<'a> {
    g: &'a DenseGraph,
    target: usize,
    chosen: Vec<usize>,
    degree: Vec<usize>,
    best: usize,
    witness: Vec<usize>,
    subsets: u64,
    nodes: u64,
}

impl FSearch<'_> {
    fn extend(&mut self, next: usize, current_max: usize) {
        self.nodes += 1;
        if self.chosen.len() == self.target {
            self.subsets += 1;
            if current_max < self.best {
                self.best = current_max;
                self.witness = self.chosen.clone();
            }
            return;
        }
        let need = self.target - self.chosen.len();
        for v in next..=(self.g.vertex_count - need) {
            let mut new_max = current_max;
            let mut d = 0;
            for &u in &self.chosen {
                if self.g.is_adjacent(u, v) {
                    d += 1;
                    self.degree[u] += 1;
                    new_max = new_max.max(self.degree[u]);
                }
            }
            self.degree[v] = d;
            new_max = new_max.max(d);
            if new_max < self.best {
                self.chosen.push(v);
                self.extend(v + 1, new_max);
                self.chosen.pop();
            }
            for &u in &self.chosen {
                if self.g.is_adjacent(u, v) {
                    self.degree[u] -= 1;
                }
            }
            self.degree[v] = 0;
            if self.best == 0 {
                return;
            }
        }
    }
}

/// `f(G)`: the minimum, over all vertex subsets of size `alpha + 1`, of the maximum
/// degree of the induced subgraph. Subsets are scanned in lexicographic order and a
/// partial subset is abandoned once its maximum degree reaches the best value found.
pub fn exact_f(g: &DenseGraph, alpha: usize, options: &FOptions) -> Result<FOutcome> {
    let target = alpha + 1;
    if target > g.vertex_count {
        return Err(Error::PreconditionViolation(format!(
            "alpha + 1 = {target} exceeds the {} vertices of the graph",
            g.vertex_count
        )));
    }
    let subsets = binomial(g.vertex_count, target);
    if subsets > BigUint::from(options.budget) {
        return Err(Error::BudgetExceeded {
            required: subsets,
            budget: options.budget,
            unit: "subsets",
        });
    }
    let (best, witness) = match &options.seed {
        Some(seed) => {
            let mut seed = seed.clone();
            seed.sort_unstable();
            seed.dedup();
            if seed.len() != target || seed.iter().any(|&v| v >= g.vertex_count) {
                return Err(Error::PreconditionViolation(format!(
                    "seed must be {target} distinct vertex ranks below {}",
                    g.vertex_count
                )));
            }
            (g.induced_max_degree(&seed), seed)
        }
        None => (usize::MAX, Vec::new()),
    };
    let mut search = FSearch {
        g,
        target,
        chosen: Vec::with_capacity(target),
        degree: vec![0; g.vertex_count],
        best,
        witness,
        subsets: 0,
        nodes: 0,
    };
    search.extend(0, 0);
    Ok(FOutcome {
        value: search.best,
        witness: search.witness,
        subsets_examined: search.subsets,
        nodes: search.nodes,
    })
}

/// `ceil(sqrt(n))`.
pub fn ceil_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

/// The value of `f(H(n,k))`: `ceil(sqrt(n))` for `k = 2`, `1` for `k >= 3`.
pub fn predicted_f(params: &GraphParams) -> u64 {
    if params.k() == 2 {
        ceil_sqrt(params.n() as u64)
    } else {
        1
    }
}
