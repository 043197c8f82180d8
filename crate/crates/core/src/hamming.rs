//! Vertices of the Hamming graph `H(n,k)` and the operations every other module
//! builds on.
//!
//! Coordinates are stored 0-based. Anything reported to a caller as a coordinate
//! *index* (for example [`Vertex::last_nonzero`]) uses 1-based indexing, so
//! coordinate 1 is `coords()[0]`.
//!
//! The canonical order of every stream in the crate is the mixed-radix rank
//! `sum v(i) * k^(i-1)`, which makes coordinate 1 the least significant digit.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

const RANK_LIMIT: u64 = 1 << 63;

/// The pair `(n, k)` defining `H(n,k)`: `n >= 1` coordinates over `Z_k`, `k >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GraphParams {
    n: usize,
    k: u32,
}

impl GraphParams {
    pub fn new(n: usize, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        if k < 2 {
            return Err(Error::InvalidParams(format!("k must be at least 2, got {k}")));
        }
        Ok(GraphParams { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `k^n`, or [`Error::Overflow`] past `2^63`.
    pub fn vertex_count(&self) -> Result<u64> {
        let mut count: u64 = 1;
        for _ in 0..self.n {
            count = count
                .checked_mul(u64::from(self.k))
                .filter(|&c| c <= RANK_LIMIT)
                .ok_or(Error::Overflow { n: self.n, k: self.k })?;
        }
        Ok(count)
    }

    /// Degree of every vertex of `H(n,k)`.
    pub fn degree(&self) -> u64 {
        self.n as u64 * u64::from(self.k - 1)
    }

    /// The witness construction needs residues 1 and 2 to be distinct and nonzero.
    pub fn require_construction(&self) -> Result<()> {
        if self.k < 3 {
            Err(Error::KTooSmall { k: self.k })
        } else {
            Ok(())
        }
    }

    pub fn residue(&self, value: u32) -> Result<u32> {
        if value < self.k {
            Ok(value)
        } else {
            Err(Error::InvalidResidue { value, k: self.k })
        }
    }

    pub fn nonzero_residue(&self, t: u32) -> Result<u32> {
        if t == 0 || t >= self.k {
            Err(Error::InvalidT { t, k: self.k })
        } else {
            Ok(t)
        }
    }

    /// Checks a 1-based coordinate index.
    pub fn coordinate(&self, index: usize) -> Result<usize> {
        if (1..=self.n).contains(&index) {
            Ok(index)
        } else {
            Err(Error::IndexOutOfRange { index, n: self.n })
        }
    }

    pub(crate) fn digits_form(&self) -> bool {
        self.k <= 10
    }
}

impl fmt::Display for GraphParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{})", self.n, self.k)
    }
}

/// A vertex of `H(n,k)`: `n` residues mod `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(Vec<u32>);

impl Vertex {
    pub fn new(coords: Vec<u32>, params: &GraphParams) -> Result<Self> {
        if coords.len() != params.n {
            return Err(Error::DimensionMismatch {
                left: coords.len(),
                right: params.n,
            });
        }
        if let Some(pos) = coords.iter().position(|&c| c >= params.k) {
            return Err(Error::InvalidVertex(format!(
                "coordinate {} is {}, not a residue mod {}",
                pos + 1,
                coords[pos],
                params.k
            )));
        }
        Ok(Vertex(coords))
    }

    pub(crate) fn from_coords_unchecked(coords: Vec<u32>) -> Self {
        Vertex(coords)
    }

    pub fn zero(params: &GraphParams) -> Self {
        Vertex(vec![0; params.n])
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Coordinate `index`, 1-based.
    pub fn get(&self, index: usize) -> Option<u32> {
        index.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    /// The largest 1-based index `i` with `v(i) != 0`.
    pub fn last_nonzero(&self) -> Result<usize> {
        last_nonzero_pos(&self.0)
            .map(|i| i + 1)
            .ok_or(Error::ZeroVector)
    }

    /// `v(last_nonzero(v))`, the value of the last nonzero coordinate.
    pub fn last_nonzero_value(&self) -> Result<u32> {
        last_nonzero_pos(&self.0)
            .map(|i| self.0[i])
            .ok_or(Error::ZeroVector)
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Position (0-based) of the last nonzero entry.
pub(crate) fn last_nonzero_pos(coords: &[u32]) -> Option<usize> {
    coords.iter().rposition(|&c| c != 0)
}

pub(crate) fn sum_mod(coords: &[u32], k: u32) -> u32 {
    let k = u64::from(k);
    (coords.iter().fold(0u64, |acc, &c| (acc + u64::from(c)) % k)) as u32
}

/// `(sum_i v(i)) mod k`.
pub fn coord_sum(v: &Vertex, params: &GraphParams) -> u32 {
    sum_mod(&v.0, params.k)
}

pub fn hamming_distance(v: &Vertex, w: &Vertex) -> Result<usize> {
    if v.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            left: v.dim(),
            right: w.dim(),
        });
    }
    Ok(v.0.iter().zip(&w.0).filter(|(a, b)| a != b).count())
}

/// True iff `v` and `w` differ in exactly one coordinate.
pub fn are_adjacent(v: &Vertex, w: &Vertex) -> Result<bool> {
    hamming_distance(v, w).map(|d| d == 1)
}

/// The `n(k-1)` neighbours of `v`, coordinate ascending, then replacement value ascending.
pub fn neighbors(v: &Vertex, params: &GraphParams) -> Neighbors {
    Neighbors {
        base: v.clone(),
        k: params.k,
        pos: 0,
        value: 0,
    }
}

#[derive(Debug, Clone)]
pub struct Neighbors {
    base: Vertex,
    k: u32,
    pos: usize,
    value: u32,
}

impl Iterator for Neighbors {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        while self.pos < self.base.dim() {
            if self.value >= self.k {
                self.pos += 1;
                self.value = 0;
                continue;
            }
            let value = self.value;
            self.value += 1;
            if value != self.base.0[self.pos] {
                let mut w = self.base.clone();
                w.0[self.pos] = value;
                return Some(w);
            }
        }
        None
    }
}

/// Index of a vertex in the canonical order, `sum v(i) * k^(i-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexRank(pub u64);

impl fmt::Display for VertexRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn rank(v: &Vertex, params: &GraphParams) -> Result<VertexRank> {
    params.vertex_count()?;
    if v.dim() != params.n {
        return Err(Error::DimensionMismatch {
            left: v.dim(),
            right: params.n,
        });
    }
    Ok(VertexRank(rank_of(&v.0, params.k)))
}

/// Rank without bounds checks; callers guarantee `k^n <= 2^63`.
pub(crate) fn rank_of(coords: &[u32], k: u32) -> u64 {
    coords
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc * u64::from(k) + u64::from(c))
}

pub fn unrank(r: VertexRank, params: &GraphParams) -> Result<Vertex> {
    let count = params.vertex_count()?;
    if r.0 >= count {
        return Err(Error::RankOutOfRange { rank: r.0, count });
    }
    let mut coords = vec![0; params.n];
    unrank_into(r.0, params.k, &mut coords);
    Ok(Vertex(coords))
}

pub(crate) fn unrank_into(mut r: u64, k: u32, coords: &mut [u32]) {
    let k = u64::from(k);
    for c in coords.iter_mut() {
        *c = (r % k) as u32;
        r /= k;
    }
}

/// Steps `coords` to the next rank. Returns false after wrapping past the last vertex.
pub(crate) fn advance(coords: &mut [u32], k: u32) -> bool {
    for c in coords.iter_mut() {
        *c += 1;
        if *c < k {
            return true;
        }
        *c = 0;
    }
    false
}

/// Every vertex of `H(n,k)` in rank order.
pub fn all_vertices(params: &GraphParams) -> Result<AllVertices> {
    params.vertex_count()?;
    Ok(AllVertices {
        cursor: Some(vec![0; params.n]),
        k: params.k,
    })
}

#[derive(Debug, Clone)]
pub struct AllVertices {
    cursor: Option<Vec<u32>>,
    k: u32,
}

impl Iterator for AllVertices {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        let cursor = self.cursor.as_mut()?;
        let out = Vertex(cursor.clone());
        if !advance(cursor, self.k) {
            self.cursor = None;
        }
        Some(out)
    }
}

/// Text form of a vertex: a digit string with coordinate 1 leftmost when `k <= 10`,
/// comma-separated decimals otherwise.
pub fn format_vertex(v: &Vertex, params: &GraphParams) -> String {
    let mut out = String::with_capacity(v.dim() * 2);
    write_vertex(&mut out, v.coords(), params).expect("writing to a String");
    out
}

pub(crate) fn write_vertex(out: &mut impl fmt::Write, coords: &[u32], params: &GraphParams) -> fmt::Result {
    if params.digits_form() {
        for &c in coords {
            out.write_char(char::from_digit(c, 10).expect("residue below 10"))?;
        }
    } else {
        for (i, c) in coords.iter().enumerate() {
            if i > 0 {
                out.write_char(',')?;
            }
            write!(out, "{c}")?;
        }
    }
    Ok(())
}

/// Inverse of [`format_vertex`]. Rejects whitespace, signs and leading `+`.
pub fn parse_vertex(text: &str, params: &GraphParams) -> Result<Vertex> {
    let coords: Vec<u32> = if params.digits_form() {
        text.chars()
            .map(|ch| {
                ch.to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("unexpected character {ch:?} in vertex {text:?}")))
            })
            .collect::<Result<_>>()?
    } else {
        text.split(',')
            .map(|field| {
                if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Parse(format!("bad coordinate {field:?} in vertex {text:?}")));
                }
                field
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad coordinate {field:?}: {e}")))
            })
            .collect::<Result<_>>()?
    };
    if coords.len() != params.n {
        return Err(Error::Parse(format!(
            "vertex {text:?} has {} coordinates, expected {}",
            coords.len(),
            params.n
        )));
    }
    Vertex::new(coords, params)
}
