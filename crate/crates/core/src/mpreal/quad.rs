//! Tanh-sinh (double exponential) quadrature on a finite rational interval.
//!
//! Nodes are `x = tanh(π/2 · sinh u)` on a uniform grid in `u` with step
//! `2^-level`. Both distances to the endpoints are computed directly from
//! `E = exp(-π sinh u)`, so integrands with algebraic endpoint singularities
//! are evaluated without cancellation even when a node lies astronomically
//! close to an endpoint.

use rayon::prelude::*;

use super::bound::Bound;
use super::elementary::{exp, pi};
use super::{BigReal, Precision};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Where an integrand is sampled: the abscissa and its distances to both ends.
pub struct QuadPoint<'a> {
    pub t: &'a BigReal,
    pub from_a: &'a BigReal,
    pub to_b: &'a BigReal,
}

#[derive(Clone, Debug)]
pub struct QuadOptions {
    pub max_level: u32,
    pub min_level: u32,
    /// Multiplier applied to the last level difference in the error estimate.
    pub safety: u64,
    /// Hard cap on the grid half-width in `u`.
    pub u_cap: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { max_level: 12, min_level: 3, safety: 4, u_cap: 12.0 }
    }
}

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: BigReal,
    pub levels: u32,
    pub evaluations: usize,
    pub last_diff: Bound,
}

struct Node {
    weight: BigReal,
    /// 1 - x
    near: BigReal,
    /// 1 + x
    far: BigReal,
}

fn node(u: &Rational, bits: u32, pi_half: &BigReal) -> Result<Node> {
    let eu = exp(&BigReal::from_rational(u, bits))?;
    let inv = BigReal::one(bits).div(&eu)?;
    let sinh = (&eu - &inv).mul_pow2(-1);
    let cosh = (&eu + &inv).mul_pow2(-1);
    // E = exp(-2 s) with s = π/2 sinh u
    let e = exp(&-&(&sinh * pi_half).mul_pow2(1))?;
    let one = BigReal::one(bits);
    let denom = &one + &e;
    let near = e.mul_pow2(1).div(&denom)?;
    let far = BigReal::from_int(2, bits).div(&denom)?;
    // dx/du = π/2 cosh u sech^2 s,  sech^2 s = 4E/(1+E)^2
    let sech2 = e.mul_pow2(2).div(&(&denom * &denom))?;
    let weight = &(&cosh * pi_half) * &sech2;
    Ok(Node { weight, near, far })
}

/// Sum of f over the node pair at `u` (or the single centre node at u = 0),
/// already multiplied by the node weight and the interval half-width.
fn contribution<F>(
    f: &F,
    u: &Rational,
    a: &BigReal,
    b: &BigReal,
    half: &BigReal,
    bits: u32,
    pi_half: &BigReal,
) -> Result<BigReal>
where
    F: Fn(&QuadPoint) -> Result<BigReal>,
{
    if u.is_zero() {
        let t = a + half;
        let v = f(&QuadPoint { t: &t, from_a: half, to_b: half })?;
        return Ok(&(&v * pi_half) * half);
    }
    let nd = node(u, bits, pi_half)?;
    let dn = half * &nd.near;
    let df = half * &nd.far;
    let tl = a + &dn;
    let tr = b - &dn;
    let fl = f(&QuadPoint { t: &tl, from_a: &dn, to_b: &df })?;
    let fr = f(&QuadPoint { t: &tr, from_a: &df, to_b: &dn })?;
    Ok(&(&(&fl + &fr) * &nd.weight) * half)
}

/// Integrate `f` over `[a, b]`.
///
/// The returned bound combines `safety × |S_k − S_{k−1}|` for the final level,
/// an estimate of the truncated grid tail, and the rigorously propagated
/// arithmetic error of the sum.
pub fn tanh_sinh<F>(f: F, a: &Rational, b: &Rational, prec: Precision, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(&QuadPoint) -> Result<BigReal> + Sync,
{
    if a >= b {
        return Err(Error::Domain("tanh-sinh needs a < b".into()));
    }
    let bits = prec.work_bits();
    let tol_bits = prec.target_bits() as i64 + 16;
    // nodes need extra bits: E has relative error ~ |s| 2^-bits
    let node_bits = bits + 32;
    let pi_half = pi(node_bits).mul_pow2(-1);
    let ab = BigReal::from_rational(a, node_bits);
    let bb = BigReal::from_rational(b, node_bits);
    let half = BigReal::from_rational(&((b - a) * Rational::frac(1, 2)), node_bits);
    let eval = |u: &Rational| -> Result<BigReal> {
        Ok(contribution(&f, u, &ab, &bb, &half, node_bits, &pi_half)?.with_prec(bits))
    };

    // level 0: unit step, walk outward until contributions are negligible
    let mut sum = eval(&Rational::zero())?;
    let mut l1 = sum.mag_up();
    let mut evaluations = 1usize;
    let mut j: i64 = 1;
    let tail = loop {
        let c = eval(&Rational::int(j))?;
        evaluations += 2;
        let cm = c.mag_up();
        sum = &sum + &c;
        l1 = l1.add(cm);
        let tiny = cm.log2_ceil().is_none_or(|l| l < l1.log2_floor().unwrap_or(0) - tol_bits - 8);
        if tiny || j as f64 >= opts.u_cap {
            break cm;
        }
        j += 1;
    };
    let u_max = j;

    let mut prev = sum.clone();
    let mut prev_diff: Option<Bound> = None;
    for level in 1..=opts.max_level {
        let steps = 1i64 << level;
        let h = Rational::new(1, steps).expect("nonzero");
        let us: Vec<Rational> = (0..u_max * steps / 2).map(|k| Rational::int(2 * k + 1) * &h).collect();
        let parts: Vec<Result<BigReal>> = us.par_iter().map(&eval).collect();
        let mut add = BigReal::zero(bits);
        for p in parts {
            let p = p?;
            l1 = l1.add(p.mag_up().mul_pow2(-(level as i64)));
            add = &add + &p;
        }
        evaluations += 2 * us.len();
        // S_level = S_{level-1}/2 + h * (new nodes)
        let cur = &prev.mul_pow2(-1) + &add.mul_pow2(-(level as i64));
        let diff = cur.sub_exact_mid(&prev).mag_up();
        let scale = cur.mid_mag_up().max(l1.mul_pow2(-20));
        let thresh = scale.mul_pow2(-tol_bits);
        let converged = level >= opts.min_level && diff <= thresh;
        let stalled = prev_diff.is_some_and(|pd| diff <= thresh.mul_pow2(12) && diff >= pd);
        if converged || stalled && diff <= thresh.mul_pow2(12) && level >= opts.min_level {
            let err = diff.mul_u64(opts.safety).add(tail.mul_u64(4));
            return Ok(QuadResult { value: cur.add_err(err), levels: level, evaluations, last_diff: diff });
        }
        prev_diff = Some(diff);
        prev = cur;
        if level == opts.max_level {
            return Err(Error::QuadratureNonConvergence { level, diff: format!("{diff}") });
        }
    }
    unreachable!("loop returns at max_level")
}
