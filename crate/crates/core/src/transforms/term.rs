use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Poly, RatFunc, Rational};
use crate::gammaexpr::{ge_eval, GammaExpr};
use crate::hyper::{f21_eval, HypParams};
use crate::mpreal::{BigReal, Precision};

/// `prefactor(z) · ₂F₁(a, b; c; argument(z))`.
///
/// Prefactor bases are kept factored: every non-constant base is squarefree
/// with lowest-order coefficient 1, constant bases are positive rationals
/// greater than one and not perfect powers, and equal bases are merged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypTerm {
    pub prefactor: Vec<(Poly, Rational)>,
    pub params: HypParams,
    pub argument: RatFunc,
}

impl HypTerm {
    /// ₂F₁(a, b; c; z) with no prefactor.
    pub fn plain(params: HypParams) -> Self {
        HypTerm { prefactor: Vec::new(), params, argument: RatFunc::identity() }
    }

    /// Multiply in `base^exp`, splitting the base into canonical factors.
    pub fn push_factor(&mut self, base: &Poly, exp: &Rational) -> Result<()> {
        if exp.is_zero() {
            return Ok(());
        }
        let (k, parts) = base.squarefree()?;
        if !k.is_positive() {
            return Err(Error::Domain(format!("prefactor base {base} is negative near z = 0")));
        }
        for (f, m) in parts {
            merge(&mut self.prefactor, f, exp * &Rational::int(m));
        }
        let (root, j) = perfect_power(&k);
        if !root.is_one() {
            let (root, sign) = if root < Rational::one() { (root.recip()?, -1) } else { (root, 1) };
            merge(&mut self.prefactor, Poly::constant(root), exp * &Rational::int(sign * j as i64));
        }
        Ok(())
    }

    /// The prefactor at `z` as a product of rational powers. Every base must
    /// be strictly positive there.
    pub fn prefactor_at(&self, z: &Rational) -> Result<GammaExpr> {
        let mut out = GammaExpr::one();
        for (p, e) in &self.prefactor {
            let v = p.eval(z);
            if !v.is_positive() {
                return Err(Error::Domain(format!("prefactor base {p} equals {v} at z = {z}")));
            }
            out = out.mul(&GammaExpr::rat_pow(&v, e)?);
        }
        Ok(out)
    }

    /// Numerical value at a rational point.
    pub fn eval_at(&self, z: &Rational, prec: Precision) -> Result<BigReal> {
        let inner = prec.plus_bits(8);
        let pre = ge_eval(&self.prefactor_at(z)?, inner)?;
        let w = self.argument.eval(z)?;
        let f = f21_eval(&self.params, &w, inner)?;
        Ok((&pre * &f).with_prec(prec.work_bits()))
    }
}

fn merge(list: &mut Vec<(Poly, Rational)>, base: Poly, exp: Rational) {
    match list.iter().position(|(b, _)| b == &base) {
        Some(i) => {
            list[i].1 = &list[i].1 + &exp;
            if list[i].1.is_zero() {
                list.remove(i);
            }
        }
        None => list.push((base, exp)),
    }
}

/// Largest `j` with `q = r^j` for rational `r`; returns `(r, j)`.
pub(crate) fn perfect_power(q: &Rational) -> (Rational, u32) {
    let (n, d) = (q.numer().clone(), q.denom().clone());
    let max = n.bits().max(d.bits()) as u32;
    for j in (2..=max.max(2)).rev() {
        if let (Some(rn), Some(rd)) = (exact_root(&n, j), exact_root(&d, j)) {
            return (Rational::new(rn, rd).expect("nonzero"), j);
        }
    }
    (q.clone(), 1)
}

fn exact_root(x: &BigInt, j: u32) -> Option<BigInt> {
    if x.sign() == num_bigint::Sign::Minus {
        return None;
    }
    let r = x.nth_root(j);
    (r.pow(j) == *x).then_some(r)
}

impl fmt::Display for HypTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, e) in &self.prefactor {
            if p.is_constant() {
                write!(f, "{p}^({e}) · ")?;
            } else {
                write!(f, "({p})^({e}) · ")?;
            }
        }
        write!(f, "2F1{} at {}", self.params, self.argument)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(perfect_power(&q("4")), (q("2"), 2));
        assert_eq!(perfect_power(&q("8/27")), (q("2/3"), 3));
        assert_eq!(perfect_power(&q("12")), (q("12"), 1));
        assert_eq!(perfect_power(&Rational::one()).0, Rational::one());
    }

    #[test]
    fn constants_cancel_across_bases() {
        let mut t = HypTerm::plain(HypParams::from_strs("1/2", "1/2", "1").unwrap());
        // (2 - z)^(7/4) (4 - 4z - z^2)^(-7/8): the constants 2^(7/4) and 4^(-7/8) cancel
        t.push_factor(&Poly::from_ints(&[2, -1]), &q("7/4")).unwrap();
        t.push_factor(&Poly::from_ints(&[4, -4, -1]), &q("-7/8")).unwrap();
        assert_eq!(t.prefactor.len(), 2);
        assert!(t.prefactor.iter().all(|(p, _)| !p.is_constant()));
        assert_eq!(t.prefactor[0].0, Poly::new(vec![q("1"), q("-1/2")]));
    }

    #[test]
    fn nonpositive_base_rejected() {
        let mut t = HypTerm::plain(HypParams::from_strs("1/2", "1/2", "1").unwrap());
        t.push_factor(&Poly::from_ints(&[1, -4]), &q("1/2")).unwrap();
        assert!(t.prefactor_at(&q("1/8")).is_ok());
        assert!(matches!(t.prefactor_at(&q("1/4")), Err(Error::Domain(_))));
        assert!(t.push_factor(&Poly::from_ints(&[-1, 1]), &q("1/3")).is_err());
    }
}
