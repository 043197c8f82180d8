//! The vertex sets behind the witness: `X(s)`, `Y(s,t)`, `Z(s,t,c)` and `W`.
//!
//! - `X(s)`: vertices with coordinate sum `≡ s (mod k)`.
//! - `Y(s,t)`: nonzero vertices of `X(s)` whose last nonzero coordinate equals `t`.
//! - `Z(s,t,c)`: vertices of `Y(s,t)` whose last nonzero coordinate is at index `c` (1-based).
//! - `W = Y(1,1) ∪ Y(2,2) ∪ ... ∪ Y(2,k-1)`, defined for `k >= 3`.
//!
//! Membership is an O(n) predicate. [`enumerate_set`] walks the rank space and filters,
//! which is the reference enumerator; the `*_constructive` enumerators solve for
//! coordinate 1 directly and are checked against it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamming::{self, last_nonzero_pos, sum_mod, GraphParams, Vertex};
use crate::parallel;

/// Symbolic descriptor of one of the constructed sets. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SetSpec {
    X { s: u32 },
    Y { s: u32, t: u32 },
    Z { s: u32, t: u32, c: usize },
    W,
}

impl SetSpec {
    pub fn validate(&self, params: &GraphParams) -> Result<()> {
        match *self {
            SetSpec::X { s } => params.residue(s).map(drop),
            SetSpec::Y { s, t } => {
                params.residue(s)?;
                params.nonzero_residue(t).map(drop)
            }
            SetSpec::Z { s, t, c } => {
                params.residue(s)?;
                params.nonzero_residue(t)?;
                params.coordinate(c).map(drop)
            }
            SetSpec::W => params.require_construction(),
        }
    }

    /// Validated predicate for this set.
    pub fn membership(self, params: &GraphParams) -> Result<Membership> {
        self.validate(params)?;
        Ok(Membership { spec: self, params: *params })
    }
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetSpec::X { s } => write!(f, "X:{s}"),
            SetSpec::Y { s, t } => write!(f, "Y:{s},{t}"),
            SetSpec::Z { s, t, c } => write!(f, "Z:{s},{t},{c}"),
            SetSpec::W => f.write_str("W"),
        }
    }
}

fn parse_decimal<T: FromStr>(field: &str, whole: &str) -> Result<T> {
    if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad number {field:?} in set spec {whole:?}")));
    }
    field
        .parse()
        .map_err(|_| Error::Parse(format!("number {field:?} out of range in set spec {whole:?}")))
}

/// Parses `X:s`, `Y:s,t`, `Z:s,t,c` or `W`. Values are not reduced mod k; use
/// [`SetSpec::validate`] against the graph parameters.
impl FromStr for SetSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        if text == "W" {
            return Ok(SetSpec::W);
        }
        let (tag, args) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("set spec {text:?} is not X:s, Y:s,t, Z:s,t,c or W")))?;
        let fields: Vec<&str> = args.split(',').collect();
        match (tag, fields.as_slice()) {
            ("X", [s]) => Ok(SetSpec::X { s: parse_decimal(s, text)? }),
            ("Y", [s, t]) => Ok(SetSpec::Y {
                s: parse_decimal(s, text)?,
                t: parse_decimal(t, text)?,
            }),
            ("Z", [s, t, c]) => Ok(SetSpec::Z {
                s: parse_decimal(s, text)?,
                t: parse_decimal(t, text)?,
                c: parse_decimal(c, text)?,
            }),
            _ => Err(Error::Parse(format!(
                "set spec {text:?} is not X:s, Y:s,t, Z:s,t,c or W"
            ))),
        }
    }
}

/// A set predicate whose spec has already been validated against its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    spec: SetSpec,
    params: GraphParams,
}

impl Membership {
    pub fn spec(&self) -> SetSpec {
        self.spec
    }

    pub fn params(&self) -> &GraphParams {
        &self.params
    }

    pub fn contains(&self, coords: &[u32]) -> bool {
        let k = self.params.k();
        match self.spec {
            SetSpec::X { s } => sum_mod(coords, k) == s,
            SetSpec::Y { s, t } => y_predicate(coords, k, s, t),
            SetSpec::Z { s, t, c } => {
                last_nonzero_pos(coords) == Some(c - 1) && coords[c - 1] == t && sum_mod(coords, k) == s
            }
            SetSpec::W => w_predicate(coords, k),
        }
    }
}

fn y_predicate(coords: &[u32], k: u32, s: u32, t: u32) -> bool {
    match last_nonzero_pos(coords) {
        Some(i) => coords[i] == t && sum_mod(coords, k) == s,
        None => false,
    }
}

pub(crate) fn w_predicate(coords: &[u32], k: u32) -> bool {
    match last_nonzero_pos(coords) {
        Some(i) => {
            let t = coords[i];
            let s = sum_mod(coords, k);
            (s == 1 && t == 1) || (s == 2 && t >= 2)
        }
        None => false,
    }
}

pub fn in_x(v: &Vertex, s: u32, params: &GraphParams) -> bool {
    hamming::coord_sum(v, params) == s
}

pub fn in_y(v: &Vertex, s: u32, t: u32, params: &GraphParams) -> Result<bool> {
    if t == 0 {
        return Err(Error::InvalidT { t, k: params.k() });
    }
    Ok(y_predicate(v.coords(), params.k(), s, t))
}

pub fn in_z(v: &Vertex, s: u32, t: u32, c: usize, params: &GraphParams) -> Result<bool> {
    Ok(SetSpec::Z { s, t, c }.membership(params)?.contains(v.coords()))
}

pub fn in_w(v: &Vertex, params: &GraphParams) -> Result<bool> {
    params.require_construction()?;
    Ok(w_predicate(v.coords(), params.k()))
}

/// Streams the members of `spec` in ascending rank order by filtering the rank space.
pub fn enumerate_set(spec: SetSpec, params: &GraphParams) -> Result<SetMembers> {
    let membership = spec.membership(params)?;
    params.vertex_count()?;
    Ok(SetMembers {
        membership,
        cursor: Some(vec![0; params.n()]),
    })
}

#[derive(Debug, Clone)]
pub struct SetMembers {
    membership: Membership,
    cursor: Option<Vec<u32>>,
}

impl Iterator for SetMembers {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        let k = self.membership.params.k();
        loop {
            let cursor = self.cursor.as_mut()?;
            let hit = self.membership.contains(cursor).then(|| Vertex::from_coords_unchecked(cursor.clone()));
            if !hamming::advance(cursor, k) {
                self.cursor = None;
            }
            if hit.is_some() {
                return hit;
            }
        }
    }
}

/// Members with rank in `[lo, hi)`, ascending.
pub(crate) fn members_in_range(membership: &Membership, lo: u64, hi: u64) -> Vec<Vertex> {
    let params = membership.params;
    let mut out = Vec::new();
    if lo >= hi {
        return out;
    }
    let mut cursor = vec![0; params.n()];
    hamming::unrank_into(lo, params.k(), &mut cursor);
    for _ in lo..hi {
        if membership.contains(&cursor) {
            out.push(Vertex::from_coords_unchecked(cursor.clone()));
        }
        hamming::advance(&mut cursor, params.k());
    }
    out
}

/// Same output as [`enumerate_set`], filtered by `workers` threads and delivered to
/// `sink` in ascending rank order.
pub fn for_each_member(
    spec: SetSpec,
    params: &GraphParams,
    workers: usize,
    mut sink: impl FnMut(&Vertex) -> Result<()>,
) -> Result<()> {
    let membership = spec.membership(params)?;
    let total = params.vertex_count()?;
    parallel::ordered_chunks(
        total,
        workers,
        parallel::DEFAULT_CHUNK,
        |lo, hi| members_in_range(&membership, lo, hi),
        |chunk| chunk.iter().try_for_each(&mut sink),
    )
}

/// Walks coordinates `2..free_end` (1-based, exclusive) as an odometer and solves
/// coordinate 1 from the target sum. Ranks come out ascending because coordinate 1 is
/// the least significant digit and has exactly one solution per odometer state.
#[derive(Debug, Clone)]
pub struct SolvedFirstCoordinate {
    coords: Vec<u32>,
    free_end: usize,
    target: u32,
    k: u32,
    done: bool,
}

impl SolvedFirstCoordinate {
    fn empty(params: &GraphParams) -> Self {
        SolvedFirstCoordinate {
            coords: vec![0; params.n()],
            free_end: 1,
            target: 0,
            k: params.k(),
            done: true,
        }
    }
}

impl Iterator for SolvedFirstCoordinate {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.done {
            return None;
        }
        let rest = sum_mod(&self.coords[1..], self.k);
        self.coords[0] = (self.target + self.k - rest) % self.k;
        let out = Vertex::from_coords_unchecked(self.coords.clone());
        if !hamming::advance(&mut self.coords[1..self.free_end], self.k) {
            self.done = true;
        }
        Some(out)
    }
}

/// `X(s)` built directly: `v(2..n)` free, `v(1) = s - sum v(2..n)`.
pub fn enumerate_x_constructive(s: u32, params: &GraphParams) -> Result<SolvedFirstCoordinate> {
    SetSpec::X { s }.validate(params)?;
    Ok(SolvedFirstCoordinate {
        coords: vec![0; params.n()],
        free_end: params.n(),
        target: s,
        k: params.k(),
        done: false,
    })
}

/// `Z(s,t,c)` built directly: `v(c) = t`, `v(c+1..n) = 0`, `v(2..c-1)` free, `v(1)` solved.
/// For `c = 1` the only candidate is `(t,0,...,0)`, present iff `s = t`.
pub fn enumerate_z_constructive(s: u32, t: u32, c: usize, params: &GraphParams) -> Result<SolvedFirstCoordinate> {
    SetSpec::Z { s, t, c }.validate(params)?;
    if c == 1 {
        if s != t {
            return Ok(SolvedFirstCoordinate::empty(params));
        }
        let mut coords = vec![0; params.n()];
        coords[0] = t;
        return Ok(SolvedFirstCoordinate {
            coords,
            free_end: 1,
            target: s,
            k: params.k(),
            done: false,
        });
    }
    let mut coords = vec![0; params.n()];
    coords[c - 1] = t;
    Ok(SolvedFirstCoordinate {
        coords,
        free_end: c - 1,
        target: s,
        k: params.k(),
        done: false,
    })
}

/// `Y(s,t)` as the concatenation of `Z(s,t,1), ..., Z(s,t,n)`; every rank in
/// `Z(s,t,c)` is below every rank in `Z(s,t,c+1)`.
pub fn enumerate_y_constructive(s: u32, t: u32, params: &GraphParams) -> Result<impl Iterator<Item = Vertex>> {
    SetSpec::Y { s, t }.validate(params)?;
    let parts = (1..=params.n())
        .map(|c| enumerate_z_constructive(s, t, c, params))
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().flatten())
}

/// `v` with its last nonzero coordinate changed from `t1` to `t2`.
pub fn partner(v: &Vertex, t1: u32, t2: u32, params: &GraphParams) -> Result<Vertex> {
    let mut failed = Vec::new();
    if v.dim() != params.n() {
        failed.push(format!("v has {} coordinates, expected {}", v.dim(), params.n()));
    }
    let pos = last_nonzero_pos(v.coords());
    match pos {
        None => failed.push("v is the zero vector".to_string()),
        Some(i) if v.coords()[i] != t1 => failed.push(format!(
            "v({}) = {} but t1 = {t1}",
            i + 1,
            v.coords()[i]
        )),
        Some(_) => {}
    }
    if t1 == 0 || t1 >= params.k() {
        failed.push(format!("t1 = {t1} is not a nonzero residue mod {}", params.k()));
    }
    if t2 == 0 || t2 >= params.k() {
        failed.push(format!("t2 = {t2} is not a nonzero residue mod {}", params.k()));
    }
    if t1 == t2 {
        failed.push(format!("t1 = t2 = {t1}"));
    }
    if !failed.is_empty() {
        return Err(Error::PreconditionViolation(format!("partner: {}", failed.join("; "))));
    }
    let i = pos.expect("checked above");
    let mut coords = v.clone().into_coords();
    coords[i] = t2;
    Ok(Vertex::from_coords_unchecked(coords))
}

fn k_big(params: &GraphParams) -> BigUint {
    BigUint::from(params.k())
}

fn k_pow(params: &GraphParams, exp: usize) -> BigUint {
    num_traits::pow(k_big(params), exp)
}

/// `(k^(n-1) - 1) / (k - 1) = 1 + k + ... + k^(n-2)`; zero when `n = 1`.
fn geometric(params: &GraphParams) -> BigUint {
    let num = k_pow(params, params.n() - 1) - 1u32;
    let den = BigUint::from(params.k() - 1);
    debug_assert!((&num % &den) == BigUint::from(0u32));
    num / den
}

/// Independence number of `H(n,k)`: `k^(n-1)`.
pub fn size_alpha(params: &GraphParams) -> BigUint {
    k_pow(params, params.n() - 1)
}

pub fn size_x(s: u32, params: &GraphParams) -> Result<BigUint> {
    params.residue(s)?;
    Ok(size_alpha(params))
}

/// `|Y(s,t)| = (k^(n-1) - 1)/(k - 1) + [s = t]`.
pub fn size_y(s: u32, t: u32, params: &GraphParams) -> Result<BigUint> {
    params.residue(s)?;
    params.nonzero_residue(t)?;
    let base = geometric(params);
    Ok(if s == t { base + 1u32 } else { base })
}

/// `|Z(s,t,1)| = [s = t]`, `|Z(s,t,c)| = k^(c-2)` for `c >= 2`.
pub fn size_z(s: u32, t: u32, c: usize, params: &GraphParams) -> Result<BigUint> {
    SetSpec::Z { s, t, c }.validate(params)?;
    Ok(if c == 1 {
        BigUint::from(u32::from(s == t))
    } else {
        k_pow(params, c - 2)
    })
}

/// `|W| = k^(n-1) + 1`.
pub fn size_w(params: &GraphParams) -> Result<BigUint> {
    params.require_construction()?;
    let direct = size_alpha(params) + 1u32;
    debug_assert_eq!(Some(&direct), size_w_by_parts(params).ok().as_ref());
    Ok(direct)
}

/// `|Y(1,1)| + |Y(2,2)| + sum_{i>=3} |Y(2,i)| = 2((k^(n-1)-1)/(k-1) + 1) + (k-3)(k^(n-1)-1)/(k-1)`.
pub fn size_w_by_parts(params: &GraphParams) -> Result<BigUint> {
    params.require_construction()?;
    let g = geometric(params);
    Ok((&g + 1u32) * 2u32 + g * (params.k() - 3))
}

/// Edges of the subgraph induced by `W`: one per vertex of `Y(1,1)`.
pub fn predicted_w_edges(params: &GraphParams) -> Result<BigUint> {
    params.require_construction()?;
    size_y(1, 1, params)
}

pub fn size_of(spec: SetSpec, params: &GraphParams) -> Result<BigUint> {
    match spec {
        SetSpec::X { s } => size_x(s, params),
        SetSpec::Y { s, t } => size_y(s, t, params),
        SetSpec::Z { s, t, c } => size_z(s, t, c, params),
        SetSpec::W => size_w(params),
    }
}
