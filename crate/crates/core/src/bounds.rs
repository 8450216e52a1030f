//! Lower bounds on the number of check nodes `m` of a `(w_c, w_r)`-regular
//! bipartite graph with `n` variable nodes and girth 8 to 16.
//!
//! Each girth has a tree-counting inequality `m >= f(w_r)` with `f` a
//! polynomial in `w_r`. Substituting the edge count identity
//! `w_r = w_c n / m` and multiplying through by `m^deg(f)` gives a monic
//! polynomial `P(m) >= 0`. Coefficients are produced by exact rational
//! arithmetic; only root finding uses floating point, and the root is then
//! certified by exact sign evaluation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const SUPPORTED_GIRTHS: [usize; 5] = [8, 10, 12, 14, 16];

/// Relative width at which bisection stops.
pub const ROOT_REL_TOL: f64 = 1e-9;
/// Relative offset used to certify the sign change around a root.
pub const CERTIFY_REL_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundQuery {
    pub girth: usize,
    pub wc: u64,
    pub n: u64,
}

impl BoundQuery {
    pub fn new(girth: usize, wc: u64, n: u64) -> Result<Self> {
        check_girth(girth)?;
        if wc < 2 {
            return Err(Error::ParamsOutOfRange(format!(
                "w_c = {wc}, need w_c >= 2"
            )));
        }
        if n < 1 {
            return Err(Error::ParamsOutOfRange("n must be positive".into()));
        }
        Ok(BoundQuery { girth, wc, n })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub query: BoundQuery,
    /// The real-valued lower bound on `m`.
    pub m_lower: f64,
    /// Largest real root of `P`, for girth 10 and above.
    pub root: Option<f64>,
    /// `|P(m_lower)|`, evaluated exactly.
    pub residual: f64,
}

impl BoundReport {
    /// Smallest integer `m` allowed by the bound.
    pub fn m_integer(&self) -> u64 {
        // guard against 16.000000000000004-style noise on exact cases
        let r = self.m_lower.round();
        if (self.m_lower - r).abs() <= 1e-9 * r.max(1.0) {
            r as u64
        } else {
            self.m_lower.ceil() as u64
        }
    }
}

fn check_girth(girth: usize) -> Result<()> {
    if SUPPORTED_GIRTHS.contains(&girth) {
        Ok(())
    } else {
        Err(Error::UnsupportedGirth(girth))
    }
}

/// Closed-form girth-8 bound: the positive root of
/// `m^2 + w_c (w_c - 2) m - w_c^2 (w_c - 1) n`.
pub fn bound_girth8(wc: u64, n: u64) -> f64 {
    let wc = wc as f64;
    let n = n as f64;
    (-wc * (wc - 2.0) + wc * ((wc - 2.0).powi(2) + 4.0 * (wc - 1.0) * n).sqrt()) / 2.0
}

/// `(coefficient, power of w_r, power of w_r - 1)` terms of the tree
/// inequality; the coefficient is a power of `w_c - 1` given as its exponent.
fn tree_terms(girth: usize) -> Result<&'static [(u32, u32, u32)]> {
    const G8: &[(u32, u32, u32)] = &[(0, 0, 0), (1, 1, 0), (2, 0, 1)];
    const G10: &[(u32, u32, u32)] = &[(0, 0, 0), (1, 1, 0), (2, 1, 1)];
    const G12: &[(u32, u32, u32)] = &[(0, 0, 0), (1, 1, 0), (2, 1, 1), (3, 0, 2)];
    const G14: &[(u32, u32, u32)] = &[(0, 0, 0), (1, 1, 0), (2, 1, 1), (3, 1, 2)];
    const G16: &[(u32, u32, u32)] = &[(0, 0, 0), (1, 1, 0), (2, 1, 1), (3, 1, 2), (4, 0, 3)];
    Ok(match girth {
        8 => G8,
        10 => G10,
        12 => G12,
        14 => G14,
        16 => G16,
        g => return Err(Error::UnsupportedGirth(g)),
    })
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Right-hand side of the tree inequality as a polynomial in `w_r`,
/// ascending coefficients.
pub fn tree_polynomial(girth: usize, wc: u64) -> Result<Vec<BigInt>> {
    let terms = tree_terms(girth)?;
    let base = BigInt::from(wc) - BigInt::one();
    let deg = terms.iter().map(|&(_, a, b)| a + b).max().unwrap_or(0) as usize;
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for &(e, a, b) in terms {
        let scale = num_traits::pow(base.clone(), e as usize);
        // w_r^a (w_r - 1)^b = sum_k C(b,k) (-1)^(b-k) w_r^(a+k)
        for k in 0..=b {
            let mut c = &scale * binomial(b, k);
            if (b - k) % 2 == 1 {
                c = -c;
            }
            coeffs[(a + k) as usize] += c;
        }
    }
    while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Exact value of the tree inequality's right-hand side.
pub fn tree_inequality_rhs(girth: usize, wc: u64, wr: u64) -> Result<BigInt> {
    if wc < 2 || wr < 2 {
        return Err(Error::ParamsOutOfRange(format!(
            "w_c = {wc}, w_r = {wr}; need both >= 2"
        )));
    }
    let poly = tree_polynomial(girth, wc)?;
    let x = BigInt::from(wr);
    Ok(poly
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * &x + c))
}

/// `P(m)` with exact rational coefficients, ascending in `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GirthPolynomial {
    pub girth: usize,
    pub coefficients: Vec<BigRational>,
}

impl GirthPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, m: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * m + c)
    }

    pub fn eval_f64(&self, m: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * m + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn is_monic(&self) -> bool {
        self.coefficients.last().is_some_and(One::is_one)
    }
}

/// Substitutes `w_r = w_c n / m` into the tree inequality for `girth` and
/// clears denominators by the smallest power of `m`.
pub fn assemble_polynomial(girth: usize, wc: u64, n: u64) -> Result<GirthPolynomial> {
    assemble_polynomial_rational(girth, wc, &BigRational::from_integer(n.into()))
}

/// As [`assemble_polynomial`] with a rational `n`.
pub fn assemble_polynomial_rational(
    girth: usize,
    wc: u64,
    n: &BigRational,
) -> Result<GirthPolynomial> {
    if wc < 2 {
        return Err(Error::ParamsOutOfRange(format!(
            "w_c = {wc}, need w_c >= 2"
        )));
    }
    let f = tree_polynomial(girth, wc)?;
    let d = f.len() - 1;
    // m^d (m - f(w_c n / m)) = m^(d+1) - sum_k f_k (w_c n)^k m^(d-k)
    let wcn = BigRational::from_integer(wc.into()) * n;
    let mut coefficients = vec![BigRational::zero(); d + 2];
    coefficients[d + 1] = BigRational::one();
    let mut pow = BigRational::one();
    for (k, fk) in f.iter().enumerate() {
        coefficients[d - k] -= BigRational::from_integer(fk.clone()) * &pow;
        pow *= &wcn;
    }
    Ok(GirthPolynomial {
        girth,
        coefficients,
    })
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn bisect(p: &GirthPolynomial, mut lo: f64, mut hi: f64) -> f64 {
    // invariant: P(lo) <= 0 < P(hi)
    while hi - lo > ROOT_REL_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if p.eval_f64(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Largest real root of `P_girth` for the given `w_c` and `n`.
pub fn min_m_root(girth: usize, wc: u64, n: u64) -> Result<BoundReport> {
    let query = BoundQuery::new(girth, wc, n)?;
    let p = assemble_polynomial(girth, wc, n)?;
    let mut lo = 0.0;
    let mut hi = (wc * n).max(1) as f64;
    let mut guard = 0;
    while p.eval_f64(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::Bracketing);
        }
    }
    let root = loop {
        let r = bisect(&p, lo, hi);
        // P must stay positive above the largest root
        let above = (1..=60)
            .map(|k| r * (1.0 + CERTIFY_REL_EPS) * 1.5f64.powi(k - 1))
            .take_while(|&x| x < hi)
            .filter(|&x| p.eval(&exact(x)) <= BigRational::zero())
            .last();
        match above {
            Some(x) => lo = x,
            None => break r,
        }
        guard += 1;
        if guard > 400 {
            return Err(Error::Bracketing);
        }
    };
    let eps = CERTIFY_REL_EPS * root;
    let zero = BigRational::zero();
    if !(p.eval(&exact(root - eps)) < zero && p.eval(&exact(root + eps)) > zero) {
        return Err(Error::Bracketing);
    }
    let residual = p.eval(&exact(root)).abs().to_f64().unwrap_or(f64::INFINITY);
    Ok(BoundReport {
        query,
        m_lower: root,
        root: Some(root),
        residual,
    })
}

/// Girth-8 closed form for girth 8, certified polynomial root otherwise.
pub fn bound(query: BoundQuery) -> Result<BoundReport> {
    if query.girth == 8 {
        let m_lower = bound_girth8(query.wc, query.n);
        let p = assemble_polynomial(8, query.wc, query.n)?;
        let residual = p
            .eval(&exact(m_lower))
            .abs()
            .to_f64()
            .unwrap_or(f64::INFINITY);
        return Ok(BoundReport {
            query,
            m_lower,
            root: None,
            residual,
        });
    }
    min_m_root(query.girth, query.wc, query.n)
}

/// Least-squares slope of `ln(bound)` against `ln(n)` over `n_grid`.
pub fn scaling_exponent(girth: usize, wc: u64, n_grid: &[u64]) -> Result<f64> {
    const MIN_POINTS: usize = 4;
    if n_grid.len() < MIN_POINTS || n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::GridTooSmall { need: MIN_POINTS });
    }
    let points = n_grid
        .iter()
        .map(|&n| {
            Ok((
                (n as f64).ln(),
                bound(BoundQuery::new(girth, wc, n)?)?.m_lower.ln(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(least_squares_slope(&points))
}

pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
