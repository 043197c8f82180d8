//! Naive reference implementations shared by the integration tests. Nothing here
//! calls into the library's set logic.

#![allow(dead_code)]

use std::io::Cursor;

use hamming_witness::cli;
use hamming_witness::report::Document;

/// Every vertex of H(n,k) as a coordinate vector, coordinate 1 varying fastest.
pub fn all_coords(n: usize, k: u32) -> Vec<Vec<u32>> {
    let total = (k as u64).pow(n as u32);
    (0..total)
        .map(|mut r| {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push((r % k as u64) as u32);
                r /= k as u64;
            }
            v
        })
        .collect()
}

pub fn rank(v: &[u32], k: u32) -> u64 {
    v.iter().rev().fold(0u64, |acc, &c| acc * k as u64 + c as u64)
}

pub fn adjacent(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).filter(|(x, y)| x != y).count() == 1
}

pub fn last_nonzero(v: &[u32]) -> Option<(usize, u32)> {
    v.iter().enumerate().rev().find(|(_, &c)| c != 0).map(|(i, &c)| (i + 1, c))
}

pub fn sum_mod(v: &[u32], k: u32) -> u32 {
    (v.iter().map(|&c| c as u64).sum::<u64>() % k as u64) as u32
}

pub fn in_y(v: &[u32], s: u32, t: u32, k: u32) -> bool {
    sum_mod(v, k) == s && matches!(last_nonzero(v), Some((_, x)) if x == t)
}

pub fn in_w(v: &[u32], k: u32) -> bool {
    in_y(v, 1, 1, k) || (2..k).any(|i| in_y(v, 2, i, k))
}

pub fn pow(k: u32, e: usize) -> u64 {
    (k as u64).pow(e as u32)
}

/// `(k^(n-1) - 1)/(k - 1) + [s = t]`
pub fn y_size(s: u32, t: u32, n: usize, k: u32) -> u64 {
    (pow(k, n - 1) - 1) / (k as u64 - 1) + u64::from(s == t)
}

/// Maximum induced degree of `set` by pairwise comparison.
pub fn induced_max_degree(set: &[Vec<u32>]) -> usize {
    set.iter()
        .map(|a| set.iter().filter(|b| adjacent(a, b)).count())
        .max()
        .unwrap_or(0)
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn doc(&self) -> Document {
        Document::parse(&self.stdout).expect("report output parses")
    }
}

/// Runs the CLI in-process.
pub fn run(args: &[&str]) -> Run {
    let mut out = Cursor::new(Vec::new());
    let mut err = Cursor::new(Vec::new());
    let mut argv = vec!["hamming-witness"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out.into_inner()).unwrap(),
        stderr: String::from_utf8(err.into_inner()).unwrap(),
    }
}

/// Runs the compiled binary.
pub fn run_bin(args: &[&str]) -> Run {
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_hamming-witness"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: output.status.code().expect("exit code"),
        stdout: String::from_utf8(output.stdout).unwrap(),
        stderr: String::from_utf8(output.stderr).unwrap(),
    }
}
