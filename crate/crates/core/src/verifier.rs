//! Adjacency audits of the constructed sets.
//!
//! [`verify_w`] streams `W`, measures the induced degree of every member and assembles a
//! [`MatchingCertificate`] pairing each vertex of `Y(1,1)` with its unique neighbour in
//! `Y(2,2)`. The remaining checks exercise the supporting facts one at a time: the
//! independence of `X(s)` and of unions `∪_{t∈T} Y(s,t)`, the classification of adjacent
//! pairs by last nonzero index, the non-adjacency criterion, and the unique-partner rule.
//!
//! Every check stops at the first violation and returns it as a [`Counterexample`].
//! Exhaustive checks take an explicit probe budget and refuse to start past it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::construction::{self, enumerate_set, partner, w_predicate, Membership, SetSpec};
use crate::error::{Counterexample, Error, Result};
use crate::hamming::{
    self, are_adjacent, format_vertex, last_nonzero_pos, parse_vertex, rank_of, sum_mod, GraphParams, Vertex,
};
use crate::parallel;
use crate::report::{format_histogram, Document};

/// Default cap on vertex-neighbour probes for exhaustive checks.
pub const DEFAULT_PROBE_BUDGET: u64 = 1_000_000;

/// Largest `k^n` for which [`DegreeStrategy::Table`] builds a membership table.
pub const TABLE_LIMIT: u64 = 1 << 27;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedSubgraphReport {
    pub params: GraphParams,
    pub spec: SetSpec,
    pub vertex_count: u64,
    pub edge_count: u64,
    pub max_degree: usize,
    pub degree_histogram: BTreeMap<usize, u64>,
}

impl InducedSubgraphReport {
    fn empty(params: GraphParams, spec: SetSpec) -> Self {
        InducedSubgraphReport {
            params,
            spec,
            vertex_count: 0,
            edge_count: 0,
            max_degree: 0,
            degree_histogram: BTreeMap::new(),
        }
    }

    fn record(&mut self, degree: usize) {
        self.vertex_count += 1;
        self.max_degree = self.max_degree.max(degree);
        *self.degree_histogram.entry(degree).or_default() += 1;
    }

    fn finish(&mut self) {
        let degree_sum: u64 = self.degree_histogram.iter().map(|(d, c)| *d as u64 * c).sum();
        self.edge_count = degree_sum / 2;
    }

    /// `sum(degree * count) = 2 * edges` and `sum(count) = vertices`.
    pub fn is_consistent(&self) -> bool {
        let degree_sum: u64 = self.degree_histogram.iter().map(|(d, c)| *d as u64 * c).sum();
        let count: u64 = self.degree_histogram.values().sum();
        degree_sum == 2 * self.edge_count && count == self.vertex_count
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::new();
        doc.push("n", self.params.n())
            .push("k", self.params.k())
            .push("spec", self.spec)
            .push("vertex_count", self.vertex_count)
            .push("edge_count", self.edge_count)
            .push("max_degree", self.max_degree)
            .push("histogram", format_histogram(&self.degree_histogram));
        doc
    }
}

/// How induced degrees are measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegreeStrategy {
    /// Evaluate the O(n) membership predicate on every neighbour.
    #[default]
    Streaming,
    /// Look neighbours up in a rank-indexed membership table (needs `k^n <= TABLE_LIMIT`).
    Table,
}

enum Prober {
    Predicate(Membership),
    Table { member: Vec<bool>, powers: Vec<u64> },
}

impl Prober {
    fn new(membership: Membership, strategy: DegreeStrategy) -> Result<Prober> {
        match strategy {
            DegreeStrategy::Streaming => Ok(Prober::Predicate(membership)),
            DegreeStrategy::Table => {
                let params = *membership.params();
                let total = params.vertex_count()?;
                if total > TABLE_LIMIT {
                    return Err(Error::TooLarge {
                        vertices: total.into(),
                        cap: TABLE_LIMIT,
                    });
                }
                let mut member = vec![false; total as usize];
                for v in enumerate_set(membership.spec(), &params)? {
                    member[rank_of(v.coords(), params.k()) as usize] = true;
                }
                let powers = (0..params.n())
                    .scan(1u64, |acc, _| {
                        let cur = *acc;
                        *acc *= u64::from(params.k());
                        Some(cur)
                    })
                    .collect();
                Ok(Prober::Table { member, powers })
            }
        }
    }

    /// Induced degree of `coords` and its lowest-position neighbour in the set.
    fn probe(&self, coords: &[u32], k: u32) -> (usize, Option<Vec<u32>>) {
        let mut degree = 0;
        let mut first = None;
        match self {
            Prober::Predicate(membership) => {
                let mut buf = coords.to_vec();
                for i in 0..buf.len() {
                    let orig = buf[i];
                    for value in 0..k {
                        if value == orig {
                            continue;
                        }
                        buf[i] = value;
                        if membership.contains(&buf) {
                            degree += 1;
                            if first.is_none() {
                                first = Some(buf.clone());
                            }
                        }
                    }
                    buf[i] = orig;
                }
            }
            Prober::Table { member, powers } => {
                let r = rank_of(coords, k);
                for (i, &orig) in coords.iter().enumerate() {
                    let base = r - u64::from(orig) * powers[i];
                    for value in 0..k {
                        if value == orig {
                            continue;
                        }
                        if member[(base + u64::from(value) * powers[i]) as usize] {
                            degree += 1;
                            if first.is_none() {
                                let mut w = coords.to_vec();
                                w[i] = value;
                                first = Some(w);
                            }
                        }
                    }
                }
            }
        }
        (degree, first)
    }
}

/// Number of neighbours of `v` accepted by `membership`.
pub fn induced_degree(v: &Vertex, membership: impl Fn(&[u32]) -> bool, params: &GraphParams) -> Result<usize> {
    if !membership(v.coords()) {
        return Err(Error::NotAMember(format_vertex(v, params)));
    }
    Ok(hamming::neighbors(v, params).filter(|w| membership(w.coords())).count())
}

/// Degree audit of the subgraph induced by any constructed set.
pub fn audit_set(
    spec: SetSpec,
    params: &GraphParams,
    workers: usize,
    strategy: DegreeStrategy,
) -> Result<InducedSubgraphReport> {
    let membership = spec.membership(params)?;
    let total = params.vertex_count()?;
    let prober = Prober::new(membership, strategy)?;
    let k = params.k();
    let mut report = InducedSubgraphReport::empty(*params, spec);
    parallel::ordered_chunks(
        total,
        workers,
        parallel::DEFAULT_CHUNK,
        |lo, hi| {
            construction::members_in_range(&membership, lo, hi)
                .into_iter()
                .map(|v| prober.probe(v.coords(), k).0)
                .collect::<Vec<_>>()
        },
        |degrees| {
            degrees.into_iter().for_each(|d| report.record(d));
            Ok(())
        },
    )?;
    report.finish();
    Ok(report)
}

/// Pairs `(v, partner(v,1,2))` for `v ∈ Y(1,1)` in ascending rank of `v`, and the
/// members of `Y(2,3) ∪ ... ∪ Y(2,k-1)` in ascending rank.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchingCertificate {
    pub pairs: Vec<(Vertex, Vertex)>,
    pub isolated: Vec<Vertex>,
}

impl MatchingCertificate {
    /// Re-checks the certificate from scratch: every pair is an adjacent
    /// `Y(1,1)`/`Y(2,2)` pair whose endpoints have induced degree one, every isolated
    /// vertex lies in some `Y(2,i)` with `i >= 3` and has induced degree zero, and the
    /// listed vertices are distinct and exactly `|W|` in number.
    pub fn check(&self, params: &GraphParams) -> Result<()> {
        params.require_construction()?;
        let k = params.k();
        let fail = |c: Counterexample| Err(Error::VerificationFailed(Box::new(c)));
        let expected_pairs = construction::size_y(1, 1, params)?;
        if BigUint::from(self.pairs.len()) != expected_pairs {
            return fail(Counterexample::new(format!(
                "certificate has {} pairs, expected |Y(1,1)| = {expected_pairs}",
                self.pairs.len()
            )));
        }
        let in_w = |c: &[u32]| w_predicate(c, k);
        let mut seen = HashSet::with_capacity(2 * self.pairs.len() + self.isolated.len());
        let mut claim = |v: &Vertex| -> Result<()> {
            if v.dim() != params.n() || v.coords().iter().any(|&c| c >= k) {
                return fail(Counterexample::new("certificate vertex is not a vertex of the graph").at(v));
            }
            if !seen.insert(rank_of(v.coords(), k)) {
                return fail(Counterexample::new("vertex listed twice in the certificate").at(v));
            }
            Ok(())
        };
        for (a, b) in &self.pairs {
            claim(a)?;
            claim(b)?;
            if !construction::in_y(a, 1, 1, params)? {
                return fail(Counterexample::new("pair head is not in Y(1,1)").at(a).with_other(b));
            }
            if !construction::in_y(b, 2, 2, params)? {
                return fail(Counterexample::new("pair tail is not in Y(2,2)").at(b).with_other(a));
            }
            if !are_adjacent(a, b)? {
                return fail(Counterexample::new("pair is not adjacent").at(a).with_other(b));
            }
            for v in [a, b] {
                let d = induced_degree(v, in_w, params)?;
                if d != 1 {
                    return fail(Counterexample::new("paired vertex does not have induced degree 1").at(v).with_degree(d));
                }
            }
        }
        for v in &self.isolated {
            claim(v)?;
            let last = last_nonzero_pos(v.coords()).map(|i| v.coords()[i]);
            if !(sum_mod(v.coords(), k) == 2 && matches!(last, Some(t) if t >= 3)) {
                return fail(Counterexample::new("isolated vertex is not in Y(2,i) for any i >= 3").at(v));
            }
            let d = induced_degree(v, in_w, params)?;
            if d != 0 {
                return fail(Counterexample::new("isolated vertex has a neighbour in W").at(v).with_degree(d));
            }
        }
        let expected = construction::size_w(params)?;
        if BigUint::from(seen.len()) != expected {
            return fail(Counterexample::new(format!(
                "certificate covers {} vertices, |W| = {expected}",
                seen.len()
            )));
        }
        Ok(())
    }

    /// `pair <a> <b>` and `isolated <v>` lines in vertex text form.
    pub fn to_text(&self, params: &GraphParams) -> String {
        let mut out = String::new();
        for (a, b) in &self.pairs {
            out.push_str(&format!("pair {} {}\n", format_vertex(a, params), format_vertex(b, params)));
        }
        for v in &self.isolated {
            out.push_str(&format!("isolated {}\n", format_vertex(v, params)));
        }
        out
    }

    pub fn parse_text(text: &str, params: &GraphParams) -> Result<MatchingCertificate> {
        let mut cert = MatchingCertificate::default();
        for (lineno, line) in text.lines().enumerate() {
            let fields: Vec<&str> = line.split(' ').collect();
            let at = |e: Error| Error::Parse(format!("line {}: {e}", lineno + 1));
            match fields.as_slice() {
                ["pair", a, b] => cert.pairs.push((
                    parse_vertex(a, params).map_err(at)?,
                    parse_vertex(b, params).map_err(at)?,
                )),
                ["isolated", v] => cert.isolated.push(parse_vertex(v, params).map_err(at)?),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected `pair <u> <v>` or `isolated <v>`",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(cert)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    pub workers: usize,
    pub strategy: DegreeStrategy,
}

impl VerifyOptions {
    pub fn new(workers: usize) -> Self {
        VerifyOptions {
            workers,
            strategy: DegreeStrategy::Streaming,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessAudit {
    pub report: InducedSubgraphReport,
    pub certificate: MatchingCertificate,
}

fn violated<T>(c: Counterexample) -> Result<T> {
    Err(Error::VerificationFailed(Box::new(c)))
}

/// Audits `W`: `k^(n-1) + 1` members, induced maximum degree exactly 1, each vertex of
/// `Y(1,1)` matched to its partner in `Y(2,2)`, every other member isolated.
pub fn verify_w(params: &GraphParams, options: VerifyOptions) -> Result<WitnessAudit> {
    params.require_construction()?;
    let total = params.vertex_count()?;
    let membership = SetSpec::W.membership(params)?;
    let prober = Prober::new(membership, options.strategy)?;
    let k = params.k();
    let mut report = InducedSubgraphReport::empty(*params, SetSpec::W);
    let mut certificate = MatchingCertificate::default();

    parallel::ordered_chunks(
        total,
        options.workers,
        parallel::DEFAULT_CHUNK,
        |lo, hi| {
            construction::members_in_range(&membership, lo, hi)
                .into_iter()
                .map(|v| {
                    let (degree, first) = prober.probe(v.coords(), k);
                    (v, degree, first.map(Vertex::from_coords_unchecked))
                })
                .collect::<Vec<_>>()
        },
        |chunk| {
            for (v, degree, neighbor) in chunk {
                report.record(degree);
                if degree > 1 {
                    return violated(Counterexample::new("induced degree exceeds 1").at(&v).with_degree(degree));
                }
                let t = v.last_nonzero_value()?;
                match t {
                    1 | 2 => {
                        let expected = partner(&v, t, 3 - t, params)?;
                        if neighbor.as_ref() != Some(&expected) {
                            let mut c = Counterexample::new(format!(
                                "vertex of Y({t},{t}) is not matched to its partner {}",
                                format_vertex(&expected, params)
                            ))
                            .at(&v)
                            .with_degree(degree);
                            if let Some(w) = &neighbor {
                                c = c.with_other(w);
                            }
                            return violated(c);
                        }
                        if t == 1 {
                            certificate.pairs.push((v, expected));
                        }
                    }
                    _ => {
                        if degree != 0 {
                            return violated(
                                Counterexample::new(format!("vertex of Y(2,{t}) is not isolated"))
                                    .at(&v)
                                    .with_degree(degree),
                            );
                        }
                        certificate.isolated.push(v);
                    }
                }
            }
            Ok(())
        },
    )?;
    report.finish();

    let expected = construction::size_w(params)?;
    if BigUint::from(report.vertex_count) != expected {
        return violated(Counterexample::new(format!(
            "W has {} members, expected k^(n-1) + 1 = {expected}",
            report.vertex_count
        )));
    }
    if report.max_degree != 1 {
        return violated(Counterexample::new(format!(
            "maximum induced degree is {}, expected exactly 1",
            report.max_degree
        )));
    }
    let expected_edges = construction::predicted_w_edges(params)?;
    if BigUint::from(report.edge_count) != expected_edges {
        return violated(Counterexample::new(format!(
            "induced subgraph has {} edges, expected |Y(1,1)| = {expected_edges}",
            report.edge_count
        )));
    }
    certificate.check(params)?;
    Ok(WitnessAudit { report, certificate })
}

/// Outcome of a lemma check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Refuted(Box<Counterexample>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

fn probe_budget(sizes: BigUint, params: &GraphParams, budget: u64) -> Result<()> {
    let required = sizes * params.degree();
    if required > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            required,
            budget,
            unit: "vertex-neighbour probes",
        });
    }
    Ok(())
}

/// True iff no two members of `specs[0] ∪ specs[1] ∪ ...` are adjacent.
pub fn check_independence(specs: &[SetSpec], params: &GraphParams, budget: u64) -> Result<Verdict> {
    let members = specs
        .iter()
        .map(|s| s.membership(params))
        .collect::<Result<Vec<_>>>()?;
    params.vertex_count()?;
    let sizes = specs
        .iter()
        .map(|s| construction::size_of(*s, params))
        .sum::<Result<BigUint>>()?;
    probe_budget(sizes, params, budget)?;
    let in_union = |c: &[u32]| members.iter().any(|m| m.contains(c));
    for v in hamming::all_vertices(params)? {
        if !in_union(v.coords()) {
            continue;
        }
        if let Some(w) = hamming::neighbors(&v, params).find(|w| in_union(w.coords())) {
            let names: Vec<String> = specs.iter().map(|s| s.to_string()).collect();
            return Ok(Verdict::Refuted(Box::new(
                Counterexample::new(format!("adjacent members of {}", names.join(" ∪ ")))
                    .at(&v)
                    .with_other(&w),
            )));
        }
    }
    Ok(Verdict::Holds)
}

/// Relative position of the last nonzero coordinates of an adjacent pair `(v, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AdjacencyCase {
    /// `l(v) > l(w)`: expect `s1 - s2 ≡ t1`.
    Greater,
    /// `l(v) < l(w)`: expect `s2 - s1 ≡ t2`.
    Less,
    /// `l(v) = l(w)`: expect `s1 - s2 ≡ t1 - t2`.
    Equal,
}

impl fmt::Display for AdjacencyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdjacencyCase::Greater => "gt",
            AdjacencyCase::Less => "lt",
            AdjacencyCase::Equal => "eq",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub case: AdjacencyCase,
    pub congruence_holds: bool,
    pub s1: u32,
    pub t1: u32,
    pub s2: u32,
    pub t2: u32,
}

/// Which of `(i) s1 - s2 ≡ t1`, `(ii) s2 - s1 ≡ t2`, `(iii) s1 - s2 ≡ t1 - t2` hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Congruences {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
}

impl Congruences {
    pub fn evaluate(s1: u32, t1: u32, s2: u32, t2: u32, k: u32) -> Self {
        let d = (s1 + k - s2) % k;
        Congruences {
            i: d == t1 % k,
            ii: (s2 + k - s1) % k == t2 % k,
            iii: d == (t1 + k - t2) % k,
        }
    }

    pub fn none(&self) -> bool {
        !(self.i || self.ii || self.iii)
    }

    /// `none`, or the holding congruences joined by `+`, e.g. `i+iii`.
    pub fn label(&self) -> String {
        let held: Vec<&str> = [(self.i, "i"), (self.ii, "ii"), (self.iii, "iii")]
            .into_iter()
            .filter_map(|(h, name)| h.then_some(name))
            .collect();
        if held.is_empty() {
            "none".into()
        } else {
            held.join("+")
        }
    }
}

/// Classifies an adjacent pair of nonzero vertices and evaluates the congruence its case
/// predicts. The prediction is only claimed when `t1 != t2`; pairs with equal last
/// values are classified all the same.
pub fn classify_adjacency(v: &Vertex, w: &Vertex, params: &GraphParams) -> Result<Classification> {
    if !are_adjacent(v, w)? {
        return Err(Error::NotAdjacent(format_vertex(v, params), format_vertex(w, params)));
    }
    let lv = v.last_nonzero()?;
    let lw = w.last_nonzero()?;
    let k = params.k();
    let (s1, t1) = (sum_mod(v.coords(), k), v.last_nonzero_value()?);
    let (s2, t2) = (sum_mod(w.coords(), k), w.last_nonzero_value()?);
    let c = Congruences::evaluate(s1, t1, s2, t2, k);
    let (case, congruence_holds) = match lv.cmp(&lw) {
        Ordering::Greater => (AdjacencyCase::Greater, c.i),
        Ordering::Less => (AdjacencyCase::Less, c.ii),
        Ordering::Equal => (AdjacencyCase::Equal, c.iii),
    };
    Ok(Classification {
        case,
        congruence_holds,
        s1,
        t1,
        s2,
        t2,
    })
}

fn lemma_inputs(s1: u32, t1: u32, s2: u32, t2: u32, params: &GraphParams) -> Result<Congruences> {
    params.residue(s1)?;
    params.residue(s2)?;
    params.nonzero_residue(t1)?;
    params.nonzero_residue(t2)?;
    if t1 == t2 {
        return Err(Error::PreconditionViolation(format!("t1 = t2 = {t1}; the lemma needs t1 != t2")));
    }
    params.vertex_count()?;
    Ok(Congruences::evaluate(s1, t1, s2, t2, params.k()))
}

/// Neighbours of `v` (in neighbour order) accepted by `membership`.
fn neighbors_in(v: &Vertex, membership: &Membership, params: &GraphParams) -> Vec<Vertex> {
    hamming::neighbors(v, params)
        .filter(|w| membership.contains(w.coords()))
        .collect()
}

/// With `t1 != t2` and none of the three congruences holding, no vertex of `Y(s1,t1)`
/// is adjacent to a vertex of `Y(s2,t2)`.
pub fn check_no_cross_edges(s1: u32, t1: u32, s2: u32, t2: u32, params: &GraphParams, budget: u64) -> Result<Verdict> {
    let c = lemma_inputs(s1, t1, s2, t2, params)?;
    if !c.none() {
        return Err(Error::PreconditionViolation(format!(
            "congruence ({}) holds for (s1,t1,s2,t2) = ({s1},{t1},{s2},{t2}) mod {}",
            c.label(),
            params.k()
        )));
    }
    probe_budget(construction::size_y(s1, t1, params)?, params, budget)?;
    let target = SetSpec::Y { s: s2, t: t2 }.membership(params)?;
    for v in enumerate_set(SetSpec::Y { s: s1, t: t1 }, params)? {
        if let Some(w) = neighbors_in(&v, &target, params).into_iter().next() {
            return Ok(Verdict::Refuted(Box::new(
                Counterexample::new(format!("edge between Y({s1},{t1}) and Y({s2},{t2})"))
                    .at(&v)
                    .with_other(&w),
            )));
        }
    }
    Ok(Verdict::Holds)
}

/// With `t1 != t2` and `s1 - s2 ≡ t1 - t2`, every vertex of `Y(s1,t1)` has exactly one
/// neighbour in `Y(s2,t2)`, namely `partner(v, t1, t2)`.
pub fn check_unique_partner(s1: u32, t1: u32, s2: u32, t2: u32, params: &GraphParams, budget: u64) -> Result<Verdict> {
    let c = lemma_inputs(s1, t1, s2, t2, params)?;
    if !c.iii {
        return Err(Error::PreconditionViolation(format!(
            "s1 - s2 ≢ t1 - t2 for (s1,t1,s2,t2) = ({s1},{t1},{s2},{t2}) mod {}",
            params.k()
        )));
    }
    probe_budget(construction::size_y(s1, t1, params)?, params, budget)?;
    let target = SetSpec::Y { s: s2, t: t2 }.membership(params)?;
    for v in enumerate_set(SetSpec::Y { s: s1, t: t1 }, params)? {
        let found = neighbors_in(&v, &target, params);
        let expected = partner(&v, t1, t2, params)?;
        if found.len() != 1 || found[0] != expected {
            let mut c = Counterexample::new(format!(
                "vertex of Y({s1},{t1}) does not have exactly its partner {} as neighbour in Y({s2},{t2})",
                format_vertex(&expected, params)
            ))
            .at(&v)
            .with_degree(found.len());
            if let Some(w) = found.first() {
                c = c.with_other(w);
            }
            return Ok(Verdict::Refuted(Box::new(c)));
        }
    }
    Ok(Verdict::Holds)
}

/// Which lemma a quadruple sweep exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossLemma {
    NoCrossEdges,
    UniquePartner,
}

/// `(s1, t1, s2, t2)`.
pub type Quadruple = (u32, u32, u32, u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrupleSweep {
    pub params: GraphParams,
    pub lemma: CrossLemma,
    /// All `(s1,t1,s2,t2)` with `t1, t2` nonzero.
    pub quadruples: u64,
    /// Quadruples meeting the lemma's hypothesis and checked.
    pub applicable: u64,
    /// Count per precondition class: `t1=t2`, or the label of the holding congruences.
    pub by_class: BTreeMap<String, u64>,
    pub counterexample: Option<(Quadruple, Box<Counterexample>)>,
}

impl QuadrupleSweep {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Runs one of the two cross-set lemmas over every quadruple meeting its hypothesis.
/// `budget` bounds each individual check.
pub fn sweep_quadruples(lemma: CrossLemma, params: &GraphParams, budget: u64) -> Result<QuadrupleSweep> {
    let k = params.k();
    let mut sweep = QuadrupleSweep {
        params: *params,
        lemma,
        quadruples: 0,
        applicable: 0,
        by_class: BTreeMap::new(),
        counterexample: None,
    };
    for s1 in 0..k {
        for t1 in 1..k {
            for s2 in 0..k {
                for t2 in 1..k {
                    sweep.quadruples += 1;
                    if t1 == t2 {
                        *sweep.by_class.entry("t1=t2".into()).or_default() += 1;
                        continue;
                    }
                    let c = Congruences::evaluate(s1, t1, s2, t2, k);
                    *sweep.by_class.entry(c.label()).or_default() += 1;
                    let verdict = match lemma {
                        CrossLemma::NoCrossEdges if c.none() => check_no_cross_edges(s1, t1, s2, t2, params, budget)?,
                        CrossLemma::UniquePartner if c.iii => check_unique_partner(s1, t1, s2, t2, params, budget)?,
                        _ => continue,
                    };
                    sweep.applicable += 1;
                    if let Verdict::Refuted(ce) = verdict {
                        sweep.counterexample = Some(((s1, t1, s2, t2), ce));
                        return Ok(sweep);
                    }
                }
            }
        }
    }
    Ok(sweep)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifySweep {
    pub params: GraphParams,
    /// Ordered adjacent pairs of nonzero vertices with distinct last nonzero values.
    pub pairs_checked: u64,
    pub by_case: BTreeMap<AdjacencyCase, u64>,
    /// Ordered adjacent nonzero pairs with equal last nonzero values, outside the claim.
    pub equal_last_value: u64,
    /// Ordered adjacent pairs involving the zero vector, which lies in no `Y` set.
    pub zero_vector_pairs: u64,
    pub counterexample: Option<Box<Counterexample>>,
}

impl ClassifySweep {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Classifies every ordered adjacent pair `(v, w)` of nonzero vertices with
/// `v(l(v)) != w(l(w))` and checks the predicted congruence.
pub fn sweep_classify(params: &GraphParams, budget: u64) -> Result<ClassifySweep> {
    probe_budget(BigUint::from(params.vertex_count()?), params, budget)?;
    let mut sweep = ClassifySweep {
        params: *params,
        pairs_checked: 0,
        by_case: BTreeMap::new(),
        equal_last_value: 0,
        zero_vector_pairs: 0,
        counterexample: None,
    };
    for v in hamming::all_vertices(params)? {
        for w in hamming::neighbors(&v, params) {
            if v.is_zero() || w.is_zero() {
                sweep.zero_vector_pairs += 1;
                continue;
            }
            let c = classify_adjacency(&v, &w, params)?;
            if c.t1 == c.t2 {
                sweep.equal_last_value += 1;
                continue;
            }
            sweep.pairs_checked += 1;
            *sweep.by_case.entry(c.case).or_default() += 1;
            if !c.congruence_holds {
                sweep.counterexample = Some(Box::new(
                    Counterexample::new(format!(
                        "case {} congruence fails: (s1,t1,s2,t2) = ({},{},{},{})",
                        c.case, c.s1, c.t1, c.s2, c.t2
                    ))
                    .at(&v)
                    .with_other(&w),
                ));
                return Ok(sweep);
            }
        }
    }
    Ok(sweep)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceSweep {
    pub params: GraphParams,
    /// `X(s)` for every `s`, then `∪_{t∈T} Y(s,t)` for every `s` and nonempty `T`.
    pub sets_checked: u64,
    pub counterexample: Option<Box<Counterexample>>,
}

impl IndependenceSweep {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Largest `k` for which every subset `T ⊆ {1..k-1}` is enumerated.
pub const MAX_SUBSET_K: u32 = 17;

pub fn sweep_independence(params: &GraphParams, budget: u64) -> Result<IndependenceSweep> {
    let k = params.k();
    if k > MAX_SUBSET_K {
        return Err(Error::BudgetExceeded {
            required: BigUint::from(2u32).pow(k - 1),
            budget: 1 << (MAX_SUBSET_K - 1),
            unit: "subsets T",
        });
    }
    let mut sweep = IndependenceSweep {
        params: *params,
        sets_checked: 0,
        counterexample: None,
    };
    let run = |specs: &[SetSpec], sweep: &mut IndependenceSweep| -> Result<bool> {
        sweep.sets_checked += 1;
        if let Verdict::Refuted(c) = check_independence(specs, params, budget)? {
            sweep.counterexample = Some(c);
            return Ok(false);
        }
        Ok(true)
    };
    for s in 0..k {
        if !run(&[SetSpec::X { s }], &mut sweep)? {
            return Ok(sweep);
        }
    }
    for s in 0..k {
        for mask in 1u32..(1 << (k - 1)) {
            let specs: Vec<SetSpec> = (1..k)
                .filter(|t| mask & (1 << (t - 1)) != 0)
                .map(|t| SetSpec::Y { s, t })
                .collect();
            if !run(&specs, &mut sweep)? {
                return Ok(sweep);
            }
        }
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::in_w;

    fn p(n: usize, k: u32) -> GraphParams {
        GraphParams::new(n, k).unwrap()
    }

    fn v(coords: &[u32], params: &GraphParams) -> Vertex {
        Vertex::new(coords.to_vec(), params).unwrap()
    }

    #[test]
    fn induced_degree_examples() {
        let q = p(2, 3);
        let member = |c: &[u32]| w_predicate(c, 3);
        assert_eq!(induced_degree(&v(&[0, 1], &q), member, &q), Ok(1));
        let q4 = p(2, 4);
        assert_eq!(induced_degree(&v(&[3, 3], &q4), |c| w_predicate(c, 4), &q4), Ok(0));
        let only = v(&[1, 2], &q);
        assert_eq!(induced_degree(&only, |c| c == only.coords(), &q), Ok(0));
        assert!(matches!(
            induced_degree(&v(&[0, 0], &q), member, &q),
            Err(Error::NotAMember(_))
        ));
    }

    #[test]
    fn verify_w_h23() {
        let q = p(2, 3);
        let audit = verify_w(&q, VerifyOptions::new(1)).unwrap();
        assert_eq!(audit.report.vertex_count, 4);
        assert_eq!(audit.report.edge_count, 2);
        assert_eq!(audit.report.max_degree, 1);
        assert_eq!(
            audit.certificate.pairs,
            vec![
                (v(&[1, 0], &q), v(&[2, 0], &q)),
                (v(&[0, 1], &q), v(&[0, 2], &q)),
            ]
        );
        assert!(audit.certificate.isolated.is_empty());
    }

    #[test]
    fn verify_w_h24_and_h13() {
        let q = p(2, 4);
        let audit = verify_w(&q, VerifyOptions::new(1)).unwrap();
        assert_eq!(
            (audit.report.vertex_count, audit.report.edge_count, audit.report.max_degree),
            (5, 2, 1)
        );
        assert_eq!(audit.certificate.isolated, vec![v(&[3, 3], &q)]);

        let q = p(1, 3);
        let audit = verify_w(&q, VerifyOptions::new(1)).unwrap();
        assert_eq!(
            (audit.report.vertex_count, audit.report.edge_count, audit.report.max_degree),
            (2, 1, 1)
        );
        assert_eq!(audit.certificate.pairs, vec![(v(&[1], &q), v(&[2], &q))]);
    }

    #[test]
    fn verify_rejects_k2() {
        assert_eq!(verify_w(&p(3, 2), VerifyOptions::new(1)), Err(Error::KTooSmall { k: 2 }));
    }

    #[test]
    fn table_strategy_agrees() {
        for (n, k) in [(3, 3), (4, 4), (3, 6), (6, 3)] {
            let q = p(n, k);
            let a = verify_w(&q, VerifyOptions::new(1)).unwrap();
            let b = verify_w(
                &q,
                VerifyOptions {
                    workers: 2,
                    strategy: DegreeStrategy::Table,
                },
            )
            .unwrap();
            assert_eq!(a, b);
            for spec in [SetSpec::X { s: 1 }, SetSpec::Y { s: 0, t: 2 }, SetSpec::W] {
                assert_eq!(
                    audit_set(spec, &q, 1, DegreeStrategy::Streaming).unwrap(),
                    audit_set(spec, &q, 3, DegreeStrategy::Table).unwrap()
                );
            }
        }
    }

    #[test]
    fn certificate_check_catches_tampering() {
        let q = p(3, 4);
        let cert = verify_w(&q, VerifyOptions::new(1)).unwrap().certificate;
        assert!(cert.check(&q).is_ok());

        let mut dropped = cert.clone();
        dropped.isolated.pop();
        assert!(matches!(dropped.check(&q), Err(Error::VerificationFailed(_))));

        let mut swapped = cert.clone();
        let (a, b) = swapped.pairs[0].clone();
        swapped.pairs[0] = (b, a);
        assert!(swapped.check(&q).is_err());

        let mut doubled = cert.clone();
        doubled.isolated[0] = doubled.isolated[1].clone();
        assert!(doubled.check(&q).is_err());

        let mut crossed = cert.clone();
        let tail = crossed.pairs[1].1.clone();
        crossed.pairs[0].1 = tail;
        crossed.pairs[1].1 = cert.pairs[0].1.clone();
        assert!(crossed.check(&q).is_err());
    }

    #[test]
    fn certificate_text_round_trip() {
        let q = p(2, 4);
        let cert = verify_w(&q, VerifyOptions::new(1)).unwrap().certificate;
        let text = cert.to_text(&q);
        assert_eq!(text, "pair 10 20\npair 01 02\nisolated 33\n");
        assert_eq!(MatchingCertificate::parse_text(&text, &q).unwrap(), cert);
        assert!(MatchingCertificate::parse_text("pair 10\n", &q).is_err());
        assert!(MatchingCertificate::parse_text("pair 10 2\n", &q).is_err());
    }

    #[test]
    fn independence_examples() {
        let q = p(2, 3);
        for s in 0..3 {
            assert_eq!(check_independence(&[SetSpec::X { s }], &q, DEFAULT_PROBE_BUDGET), Ok(Verdict::Holds));
        }
        let q4 = p(2, 4);
        assert_eq!(
            check_independence(
                &[SetSpec::Y { s: 1, t: 1 }, SetSpec::Y { s: 1, t: 2 }],
                &q4,
                DEFAULT_PROBE_BUDGET
            ),
            Ok(Verdict::Holds)
        );
        let verdict = check_independence(&[SetSpec::W], &q, DEFAULT_PROBE_BUDGET).unwrap();
        match verdict {
            Verdict::Refuted(c) => {
                assert_eq!(c.vertex, Some(v(&[1, 0], &q)));
                assert_eq!(c.other, Some(v(&[2, 0], &q)));
            }
            Verdict::Holds => panic!("W is not independent"),
        }
        assert!(matches!(
            check_independence(&[SetSpec::W], &p(12, 3), DEFAULT_PROBE_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let q = p(2, 3);
        let c = classify_adjacency(&v(&[1, 0], &q), &v(&[1, 1], &q), &q).unwrap();
        assert_eq!((c.case, c.congruence_holds), (AdjacencyCase::Less, true));
        let c = classify_adjacency(&v(&[0, 1], &q), &v(&[0, 2], &q), &q).unwrap();
        assert_eq!((c.case, c.congruence_holds), (AdjacencyCase::Equal, true));
        let c = classify_adjacency(&v(&[1, 1], &q), &v(&[1, 0], &q), &q).unwrap();
        assert_eq!((c.case, c.congruence_holds), (AdjacencyCase::Greater, true));

        assert!(matches!(
            classify_adjacency(&v(&[0, 1], &q), &v(&[1, 0], &q), &q),
            Err(Error::NotAdjacent(..))
        ));
        assert_eq!(
            classify_adjacency(&v(&[0, 0], &q), &v(&[1, 0], &q), &q),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn no_cross_examples() {
        assert_eq!(check_no_cross_edges(2, 3, 1, 1, &p(2, 4), DEFAULT_PROBE_BUDGET), Ok(Verdict::Holds));
        assert_eq!(check_no_cross_edges(1, 1, 2, 4, &p(2, 5), DEFAULT_PROBE_BUDGET), Ok(Verdict::Holds));
        match check_no_cross_edges(1, 1, 2, 2, &p(2, 3), DEFAULT_PROBE_BUDGET) {
            Err(Error::PreconditionViolation(m)) => assert!(m.contains("(iii)"), "{m}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            check_no_cross_edges(1, 2, 0, 2, &p(2, 5), DEFAULT_PROBE_BUDGET),
            Err(Error::PreconditionViolation(m)) if m.contains("t1 = t2")
        ));
        assert!(matches!(
            check_no_cross_edges(1, 2, 0, 3, &p(8, 5), 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn unique_partner_examples() {
        assert_eq!(check_unique_partner(1, 1, 2, 2, &p(2, 3), DEFAULT_PROBE_BUDGET), Ok(Verdict::Holds));
        assert_eq!(check_unique_partner(1, 1, 2, 2, &p(2, 4), DEFAULT_PROBE_BUDGET), Ok(Verdict::Holds));
        assert_eq!(check_unique_partner(1, 1, 2, 2, &p(1, 3), DEFAULT_PROBE_BUDGET), Ok(Verdict::Holds));
        assert!(matches!(
            check_unique_partner(1, 1, 2, 3, &p(2, 5), DEFAULT_PROBE_BUDGET),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn congruence_labels() {
        // k = 3, (1,1) vs (2,2): s1-s2 = 2, t1 = 1, s2-s1 = 1, t2 = 2, t1-t2 = 2
        let c = Congruences::evaluate(1, 1, 2, 2, 3);
        assert_eq!(c, Congruences { i: false, ii: false, iii: true });
        assert_eq!(c.label(), "iii");
        assert_eq!(Congruences::evaluate(2, 3, 1, 1, 4).label(), "none");
    }

    #[test]
    fn w_membership_in_certificate_matches_predicate() {
        let q = p(3, 5);
        let cert = verify_w(&q, VerifyOptions::new(1)).unwrap().certificate;
        for (a, b) in &cert.pairs {
            assert!(in_w(a, &q).unwrap() && in_w(b, &q).unwrap());
        }
    }
}
