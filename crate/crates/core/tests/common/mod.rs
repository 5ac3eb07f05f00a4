//! Shared fixtures and helpers for the integration suites.

#![allow(dead_code)]

pub mod oracle;

use kpath_core::graph::Graph;

pub fn assert_close(actual: f64, expected: f64, tol: f64, context: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{context}: expected {expected}, got {actual} (tol {tol})"
    );
}

/// Collects `context` lines for values outside tolerance instead of
/// panicking, so a criterion can report every violation at once. NaN counts
/// as a violation.
pub fn check_close(
    failures: &mut Vec<String>,
    actual: f64,
    expected: f64,
    tol: f64,
    context: &str,
) {
    let within = (actual - expected).abs() <= tol;
    if !within {
        failures.push(format!("{context}: expected {expected}, got {actual}"));
    }
}

pub fn check(failures: &mut Vec<String>, ok: bool, context: &str) {
    if !ok {
        failures.push(context.to_string());
    }
}

/// Prints the per-criterion verdict line and fails the test on any recorded
/// violation.
pub fn conclude(name: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("{name}: PASS");
    } else {
        println!("{name}: FAIL ({} violations)", failures.len());
        panic!("{name} failed:\n{}", failures.join("\n"));
    }
}

/// Small deterministic PRNG (xorshift64*), so random-graph tests are
/// reproducible without extra dependencies.
pub struct XorShift(u64);

impl XorShift {
    pub fn new(seed: u64) -> Self {
        XorShift(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform value in `0..bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    pub fn chance(&mut self, numerator: u64, denominator: u64) -> bool {
        self.below(denominator) < numerator
    }
}

/// Random simple graph on `n` vertices with edge probability ~ density/64.
pub fn random_graph(rng: &mut XorShift, n: usize, density: u64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.chance(density, 64) {
                g.add_edge(u, v);
            }
        }
    }
    g
}
