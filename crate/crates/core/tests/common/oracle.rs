//! Independent eigenvalue oracle: exact characteristic polynomial by
//! cofactor expansion over integer matrices, square-free factorization, Sturm
//! isolation, and bisection with exact rational sign evaluation. Never calls
//! the Jacobi kernel.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Signed, Zero};

use kpath_core::graph::Graph;
use kpath_core::spectra::MatrixKind;

type Rat = Ratio<BigInt>;

/// Polynomial with rational coefficients, ascending degree, no trailing
/// zeros.
#[derive(Clone, Debug, PartialEq)]
struct Poly(Vec<Rat>);

impl Poly {
    fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    fn zero() -> Self {
        Poly(Vec::new())
    }

    fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn leading(&self) -> &Rat {
        self.0.last().expect("nonzero polynomial")
    }

    fn add(&self, other: &Poly) -> Poly {
        let mut coeffs = vec![Rat::zero(); self.0.len().max(other.0.len())];
        for (i, c) in self.0.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            coeffs[i] += c;
        }
        Poly::from_coeffs(coeffs)
    }

    fn sub(&self, other: &Poly) -> Poly {
        let mut coeffs = vec![Rat::zero(); self.0.len().max(other.0.len())];
        for (i, c) in self.0.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            coeffs[i] -= c;
        }
        Poly::from_coeffs(coeffs)
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    fn derivative(&self) -> Poly {
        let coeffs = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn sign_at(&self, x: &Rat) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Remainder of polynomial division.
    fn rem(&self, divisor: &Poly) -> Poly {
        assert!(!divisor.is_zero());
        let mut rest = self.clone();
        while !rest.is_zero() && rest.degree() >= divisor.degree() {
            let shift = rest.degree() - divisor.degree();
            let factor = rest.leading() / divisor.leading();
            let mut coeffs = rest.0.clone();
            for (i, c) in divisor.0.iter().enumerate() {
                coeffs[i + shift] -= &factor * c;
            }
            // The leading term cancels exactly.
            coeffs.truncate(rest.degree());
            rest = Poly::from_coeffs(coeffs);
        }
        rest
    }

    /// Exact quotient; panics when the division leaves a remainder.
    fn div_exact(&self, divisor: &Poly) -> Poly {
        assert!(!divisor.is_zero());
        let mut rest = self.clone();
        let mut quotient = vec![Rat::zero(); self.0.len().saturating_sub(divisor.degree())];
        while !rest.is_zero() && rest.degree() >= divisor.degree() {
            let shift = rest.degree() - divisor.degree();
            let factor = rest.leading() / divisor.leading();
            quotient[shift] = factor.clone();
            let mut coeffs = rest.0.clone();
            for (i, c) in divisor.0.iter().enumerate() {
                coeffs[i + shift] -= &factor * c;
            }
            coeffs.truncate(rest.degree());
            rest = Poly::from_coeffs(coeffs);
        }
        assert!(rest.is_zero(), "division was not exact");
        Poly::from_coeffs(quotient)
    }

    /// Monic greatest common divisor.
    fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        assert!(!a.is_zero(), "gcd of two zero polynomials");
        let lead = a.leading().clone();
        Poly::from_coeffs(a.0.into_iter().map(|c| c / &lead).collect())
    }
}

/// Integer matrix `scale * M(g, kind)`; for the alpha matrices the scale
/// clears the denominator, so alpha must be a multiple of 1/10.
fn integer_matrix(g: &Graph, kind: MatrixKind) -> (Vec<Vec<i64>>, i64) {
    let n = g.n();
    let (diag, off, scale) = match kind {
        MatrixKind::Laplacian => (1, -1, 1),
        MatrixKind::SignlessLaplacian => (1, 1, 1),
        MatrixKind::Adjacency => (0, 1, 1),
        MatrixKind::AAlpha(alpha) => {
            let tenths = (alpha * 10.0).round();
            assert!(
                (alpha * 10.0 - tenths).abs() < 1e-12,
                "oracle supports alpha in tenths, got {alpha}"
            );
            (tenths as i64, 10 - tenths as i64, 10)
        }
    };
    let mut m = vec![vec![0i64; n]; n];
    for (v, row) in m.iter_mut().enumerate() {
        row[v] = diag * g.degree(v) as i64;
    }
    for (u, v) in g.edges() {
        m[u][v] = off;
        m[v][u] = off;
    }
    (m, scale)
}

/// det(x I - M) by recursive cofactor expansion along the first row.
fn char_poly(m: &[Vec<i64>]) -> Poly {
    let n = m.len();
    let x_minus = |diag: bool, value: i64| {
        let c0 = Rat::from_integer(BigInt::from(-value));
        if diag {
            Poly::from_coeffs(vec![c0, Rat::one()])
        } else {
            Poly::constant(c0)
        }
    };
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| x_minus(i == j, m[i][j])).collect())
        .collect();
    determinant(&entries)
}

fn determinant(m: &[Vec<Poly>]) -> Poly {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = entry.mul(&determinant(&minor));
        acc = if j.is_multiple_of(2) {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// Yun's square-free factorization: returns pairwise-coprime square-free
/// factors with their multiplicities.
fn square_free_factors(p: &Poly) -> Vec<(Poly, usize)> {
    assert!(p.degree() >= 1);
    let dp = p.derivative();
    let g = p.gcd(&dp);
    if g.degree() == 0 {
        return vec![(p.clone(), 1)];
    }
    let mut c = p.div_exact(&g);
    let mut d = dp.div_exact(&g).sub(&c.derivative());
    let mut factors = Vec::new();
    let mut multiplicity = 1;
    loop {
        let a = c.gcd(&d);
        if a.degree() > 0 {
            factors.push((a.clone(), multiplicity));
        }
        let c_next = c.div_exact(&a);
        if c_next.degree() == 0 {
            break;
        }
        d = d.div_exact(&a).sub(&c_next.derivative());
        c = c_next;
        multiplicity += 1;
    }
    factors
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let last = &chain[chain.len() - 1];
        if last.is_zero() || last.degree() == 0 {
            break;
        }
        let r = chain[chain.len() - 2].rem(last);
        if r.is_zero() {
            break;
        }
        let negated = Poly::zero().sub(&r);
        chain.push(negated);
    }
    chain
}

fn sign_variations(chain: &[Poly], x: &Rat) -> usize {
    let mut variations = 0;
    let mut previous = 0i8;
    for p in chain {
        if p.is_zero() {
            continue;
        }
        let s = p.sign_at(x);
        if s != 0 {
            if previous != 0 && s != previous {
                variations += 1;
            }
            previous = s;
        }
    }
    variations
}

fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float")
}

/// Number of roots of the (square-free) chain head in the half-open interval
/// (lo, hi].
fn count_roots(chain: &[Poly], lo: f64, hi: f64) -> usize {
    sign_variations(chain, &rat_from_f64(lo)) - sign_variations(chain, &rat_from_f64(hi))
}

/// Steps `x` away from a root until the polynomial is nonzero there.
fn nudge(p: &Poly, mut x: f64, up: bool) -> f64 {
    for _ in 0..64 {
        x = if up { x.next_up() } else { x.next_down() };
        if p.sign_at(&rat_from_f64(x)) != 0 {
            return x;
        }
    }
    panic!("could not step off a root cluster at {x}");
}

/// All distinct real roots of a square-free polynomial inside (lo, hi].
fn isolate_roots(p: &Poly, chain: &[Poly], lo: f64, hi: f64, expected: usize, out: &mut Vec<f64>) {
    if expected == 0 {
        return;
    }
    if expected == 1 {
        out.push(refine_root(p, lo, hi));
        return;
    }
    let mid = 0.5 * (lo + hi);
    assert!(
        mid > lo && mid < hi,
        "cannot split interval [{lo}, {hi}] further"
    );
    if p.sign_at(&rat_from_f64(mid)) == 0 {
        out.push(mid);
        let below = nudge(p, mid, false);
        let above = nudge(p, mid, true);
        let left = count_roots(chain, lo, below);
        let right = count_roots(chain, above, hi);
        assert_eq!(left + right + 1, expected, "root accounting at split {mid}");
        isolate_roots(p, chain, lo, below, left, out);
        isolate_roots(p, chain, above, hi, right, out);
    } else {
        let left = count_roots(chain, lo, mid);
        isolate_roots(p, chain, lo, mid, left, out);
        isolate_roots(p, chain, mid, hi, expected - left, out);
    }
}

/// Bisection with exact sign evaluation; the interval holds exactly one
/// simple root.
fn refine_root(p: &Poly, mut lo: f64, mut hi: f64) -> f64 {
    let mut sign_lo = p.sign_at(&rat_from_f64(lo));
    let sign_hi = p.sign_at(&rat_from_f64(hi));
    if sign_hi == 0 {
        return hi;
    }
    assert_ne!(sign_lo, 0, "interval endpoint sits on a root");
    assert_ne!(
        sign_lo, sign_hi,
        "no sign change across single-root interval"
    );
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let sign_mid = p.sign_at(&rat_from_f64(mid));
        if sign_mid == 0 {
            return mid;
        }
        if sign_mid == sign_lo {
            lo = mid;
            sign_lo = sign_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * lo.abs().max(hi.abs()).max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Ascending eigenvalues of the chosen matrix of `g`, each correct to about
/// 1e-12, computed without any floating-point linear algebra.
pub fn exact_eigenvalues(g: &Graph, kind: MatrixKind) -> Vec<f64> {
    let (m, scale) = integer_matrix(g, kind);
    let n = m.len();
    // Gershgorin bound on the integer matrix.
    let bound = m
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<i64>())
        .max()
        .unwrap_or(0) as f64
        + 1.0;
    let p = char_poly(&m);
    assert_eq!(p.degree(), n);
    let mut roots = Vec::with_capacity(n);
    for (factor, multiplicity) in square_free_factors(&p) {
        let chain = sturm_chain(&factor);
        let count = count_roots(&chain, -bound, bound);
        assert_eq!(count, factor.degree(), "all roots must be real");
        let mut distinct = Vec::new();
        isolate_roots(&factor, &chain, -bound, bound, count, &mut distinct);
        for root in distinct {
            for _ in 0..multiplicity {
                roots.push(root / scale as f64);
            }
        }
    }
    assert_eq!(roots.len(), n, "multiplicity accounting");
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}
