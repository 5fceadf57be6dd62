//! The polynomial families attached to the zeros of `J'_nu`.
//!
//! * `q_n`, `q*_n`: three-term recurrence `x q_n = q_{n+1} + beta_n q_{n-1}`
//!   with `beta_n = 1 / (4 (nu+n-1)(nu+n))`, started from `q_0 = 1, q_1 = x/2`
//!   and `q*_0 = 0, q*_1 = 1`. They are orthogonal for the discrete measure
//!   carried by the points `+-1/j'_{nu,k}`.
//! * `R_{n,nu}`: Lommel polynomials, stored in the variable `t = 1/x`.
//! * `p_n`: monic orthogonal polynomials for the moments `sigma'(n+2)`.
//! * `h_n(nu) = 2^n (nu)_n q_n(1/nu)` and the integer polynomials
//!   `H_n(nu) = nu^(n-1) h_n(nu)`.

use std::cmp::Ordering;

use rug::{Float, Rational};

use crate::bessel_eval::{eval_j_rational, eval_jprime_rational, is_nonpositive_integer};
use crate::error::{Error, Result};
use crate::moments::rayleigh_sum;
use crate::scalar_poly::{isolate_real_roots, RationalPoly};

fn check_admissible(nu: &Rational) -> Result<()> {
    if is_nonpositive_integer(nu) {
        return Err(Error::NonadmissibleNu(nu.to_string()));
    }
    Ok(())
}

/// `beta_n = 1 / (4 (nu+n-1)(nu+n))` for `n >= 1`.
pub fn beta(nu: &Rational, n: usize) -> Result<Rational> {
    check_admissible(nu)?;
    let a = Rational::from(nu + (n as u64 - 1));
    let b = Rational::from(nu + n as u64);
    Ok((a * b * 4u32).recip())
}

/// `lambda_k = 1 / (4^k (nu)_k (nu+1)_k)`.
pub fn lambda_norm(nu: &Rational, k: usize) -> Result<Rational> {
    check_admissible(nu)?;
    let mut d = Rational::from(1);
    for j in 0..k as u64 {
        d *= Rational::from(nu + j) * Rational::from(nu + (j + 1)) * 4u32;
    }
    Ok(d.recip())
}

/// `epsilon_0 = 1/2`, `epsilon_j = 1` otherwise.
pub fn epsilon(j: usize) -> Rational {
    if j == 0 {
        Rational::from((1, 2))
    } else {
        Rational::from(1)
    }
}

/// `(a)_n`, the rising factorial.
pub fn pochhammer(a: &Rational, n: usize) -> Rational {
    let mut p = Rational::from(1);
    for j in 0..n as u64 {
        p *= Rational::from(a + j);
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFamily {
    pub nu: Rational,
    pub q: Vec<RationalPoly>,
    pub q_star: Vec<RationalPoly>,
}

impl QFamily {
    pub fn n_max(&self) -> usize {
        self.q.len() - 1
    }
}

/// `q_0 ..= q_{n_max}` and `q*_0 ..= q*_{n_max}`.
pub fn build_q(nu: &Rational, n_max: usize) -> Result<QFamily> {
    check_admissible(nu)?;
    let mut q = vec![RationalPoly::one()];
    let mut q_star = vec![RationalPoly::zero()];
    if n_max >= 1 {
        q.push(RationalPoly::monomial(Rational::from((1, 2)), 1));
        q_star.push(RationalPoly::one());
    }
    for n in 1..n_max {
        let b = beta(nu, n)?;
        let next = q[n].shift(1) - q[n - 1].scale(&b);
        let next_star = q_star[n].shift(1) - q_star[n - 1].scale(&b);
        q.push(next);
        q_star.push(next_star);
    }
    Ok(QFamily { nu: nu.clone(), q, q_star })
}

/// `R_{n,nu}` as a polynomial in `t = 1/x`.
pub fn lommel_r(nu: &Rational, n: usize) -> Result<RationalPoly> {
    check_admissible(nu)?;
    let mut prev = RationalPoly::one();
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = RationalPoly::monomial(Rational::from(nu * 2u32), 1);
    for k in 1..n as u64 {
        let next = cur.shift(1).scale(&(Rational::from(nu + k) * 2u32)) - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFamily {
    pub nu: Rational,
    pub p: Vec<RationalPoly>,
    /// `gamma[i]` is `gamma_{i+1}`.
    pub gamma: Vec<Rational>,
}

impl PFamily {
    /// `gamma_n` for `n >= 1`.
    pub fn gamma(&self, n: usize) -> Option<&Rational> {
        n.checked_sub(1).and_then(|i| self.gamma.get(i))
    }
}

fn check_positive(nu: &Rational) -> Result<()> {
    if *nu <= 0 {
        return Err(Error::NonpositiveNu(nu.to_string()));
    }
    Ok(())
}

/// `p_n` from pairs of `q` polynomials:
/// `p_n = (2 / q_n(a)) [q_n(a) q_{n+2}(x) - q_n(x) q_{n+2}(a)] / (x^2 - a^2)`
/// with `a = 1/nu`. The recurrence coefficients are read back off the result.
pub fn build_p_quotient(nu: &Rational, n_max: usize) -> Result<PFamily> {
    check_positive(nu)?;
    let fam = build_q(nu, n_max + 2)?;
    let a = Rational::from(nu.recip_ref());
    let denom = RationalPoly::from_coeffs(vec![-Rational::from(a.square_ref()), Rational::new(), Rational::from(1)]);
    let mut p = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let qa = fam.q[n].eval(&a);
        if qa == 0 {
            return Err(Error::QAtOneOverNuZero { nu: nu.to_string(), n });
        }
        let q2a = fam.q[n + 2].eval(&a);
        let num = fam.q[n + 2].scale(&qa) - fam.q[n].scale(&q2a);
        let quotient = num.exact_div(&denom)?;
        p.push(quotient.scale(&(2 / qa)));
    }
    let mut gamma = Vec::with_capacity(n_max);
    if n_max >= 1 {
        gamma.push(rayleigh_sum(nu, 2)?);
    }
    for n in 2..=n_max {
        // x p_{n-1} - p_n = gamma_n p_{n-2}, and p_{n-2} is monic.
        gamma.push((p[n - 1].shift(1) - p[n].clone()).coeff(n - 2));
    }
    Ok(PFamily { nu: nu.clone(), p, gamma })
}

/// `gamma_n` from h-values:
/// `gamma_1 = (nu+2) / (2 nu (nu+1))`,
/// `gamma_n = h_{n+1} h_{n-2} / (h_n h_{n-1}) / (4 (nu+n-1)(nu+n))`.
pub fn gamma_coefficients(nu: &Rational, n_max: usize) -> Result<Vec<Rational>> {
    check_positive(nu)?;
    let h = build_h(nu, n_max + 1)?.h_values;
    let mut gamma = Vec::with_capacity(n_max);
    if n_max >= 1 {
        gamma.push(Rational::from(nu + 2u32) / (Rational::from(nu * 2u32) * Rational::from(nu + 1u32)));
    }
    for n in 2..=n_max {
        for i in [n, n - 1] {
            if h[i] == 0 {
                return Err(Error::QAtOneOverNuZero { nu: nu.to_string(), n: i });
            }
        }
        let ratio = Rational::from(&h[n + 1] * &h[n - 2]) / Rational::from(&h[n] * &h[n - 1]);
        gamma.push(ratio * beta(nu, n)?);
    }
    Ok(gamma)
}

/// `gamma_n` for `n >= 2` straight from `q` values at `1/nu`:
/// `q_{n+1} q_{n-2} / (q_n q_{n-1}) / (4 (nu+n-1)(nu+n-2))`.
pub fn gamma_direct(nu: &Rational, n: usize) -> Result<Rational> {
    check_positive(nu)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("gamma_direct needs n >= 2, got {n}")));
    }
    let fam = build_q(nu, n + 1)?;
    let a = Rational::from(nu.recip_ref());
    let v = |i: usize| fam.q[i].eval(&a);
    let den = v(n) * v(n - 1) * Rational::from(nu + (n as u64 - 1)) * Rational::from(nu + (n as u64 - 2)) * 4u32;
    if den == 0 {
        return Err(Error::QAtOneOverNuZero { nu: nu.to_string(), n });
    }
    Ok(v(n + 1) * v(n - 2) / den)
}

/// `p_n = x p_{n-1} - gamma_n p_{n-2}` with `p_0 = 1`, `p_1 = x`.
pub fn build_p_recurrence(nu: &Rational, n_max: usize) -> Result<PFamily> {
    let gamma = gamma_coefficients(nu, n_max)?;
    let mut p = vec![RationalPoly::one()];
    if n_max >= 1 {
        p.push(RationalPoly::x());
    }
    for n in 2..=n_max {
        let next = p[n - 1].shift(1) - p[n - 2].scale(&gamma[n - 1]);
        p.push(next);
    }
    Ok(PFamily { nu: nu.clone(), p, gamma })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSequence {
    pub nu: Rational,
    /// `h_values[n] = h_n(nu)` for `0 <= n <= n_max`.
    pub h_values: Vec<Rational>,
    /// `h_polys[n - 1] = H_n` for `1 <= n <= n_max`.
    pub h_polys: Vec<RationalPoly>,
}

impl HSequence {
    /// `H_n` for `n >= 1`.
    #[allow(non_snake_case)]
    pub fn H(&self, n: usize) -> Option<&RationalPoly> {
        n.checked_sub(1).and_then(|i| self.h_polys.get(i))
    }
}

/// `H_1 ..= H_{n_max}` from `H_1 = 1`, `H_2 = nu + 2`,
/// `H_{n+2} = 2 (nu+n+1) H_{n+1} - nu^2 H_n`.
pub fn h_polynomials(n_max: usize) -> Vec<RationalPoly> {
    let mut hs = Vec::with_capacity(n_max);
    if n_max >= 1 {
        hs.push(RationalPoly::one());
    }
    if n_max >= 2 {
        hs.push(RationalPoly::from_i64s(&[2, 1]));
    }
    let nu2 = RationalPoly::monomial(Rational::from(1), 2);
    for n in 1..n_max.saturating_sub(1) {
        // hs[n] = H_{n+1}, hs[n-1] = H_n
        let factor = RationalPoly::from_coeffs(vec![Rational::from(2 * (n as i64 + 1)), Rational::from(2)]);
        let next = &factor * &hs[n] - &nu2 * &hs[n - 1];
        hs.push(next);
    }
    hs
}

/// `h_0 ..= h_{n_max}` at `nu` with `h_0 = h_1 = 1`,
/// `h_{n+1} = 2 (nu+n) / nu * h_n - h_{n-1}`, and `H_1 ..= H_{n_max}`.
pub fn build_h(nu: &Rational, n_max: usize) -> Result<HSequence> {
    Ok(HSequence { nu: nu.clone(), h_values: h_values(nu, n_max)?, h_polys: h_polynomials(n_max) })
}

/// Only the values `h_0 ..= h_{n_max}` at `nu`.
pub fn h_values(nu: &Rational, n_max: usize) -> Result<Vec<Rational>> {
    if *nu == 0 {
        return Err(Error::ZeroNu);
    }
    let mut h = vec![Rational::from(1); (n_max + 1).max(2)];
    for n in 1..n_max {
        let f = Rational::from(nu + n as u64) * 2u32 / nu;
        h[n + 1] = f * &h[n] - &h[n - 1];
    }
    h.truncate(n_max + 1);
    Ok(h)
}

/// Roots of `q_n` with their Gauss weights
/// `rho = lambda_{n-1} / (q_n'(x) q_{n-1}(x))`, for `nu > 0`.
///
/// Roots are isolated exactly, bisected in rational arithmetic to `tol`, then
/// polished with three Newton steps at the precision of `tol` (at least 64
/// bits).
pub fn rho_weights(nu: &Rational, n: usize, tol: &Float) -> Result<Vec<(Float, Float)>> {
    check_positive(nu)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let tol_r = tol
        .to_rational()
        .filter(|t| *t > 0)
        .ok_or_else(|| Error::InvalidArgument("tol must be positive and finite".into()))?;
    let prec = tol.prec().max(64);
    let fam = build_q(nu, n)?;
    let qn = &fam.q[n];
    let dqn = qn.derivative();
    let qm = &fam.q[n - 1];
    let lam = Float::with_val(prec, &lambda_norm(nu, n - 1)?);

    let intervals = isolate_real_roots(qn, &Rational::from((1, 1024)))?;
    if intervals.len() != n {
        return Err(Error::RootIsolationFailure(format!(
            "q_{n} at nu = {nu}: isolated {} roots, expected {n}",
            intervals.len()
        )));
    }
    let mut out = Vec::with_capacity(n);
    for iv in intervals {
        let (mut lo, mut hi) = (iv.lo, iv.hi);
        let s_lo = qn.sign_at(&lo);
        let mut exact = None;
        while Rational::from(&hi - &lo) > tol_r {
            let mid = Rational::from(&lo + &hi) / 2u32;
            match qn.sign_at(&mid) {
                Ordering::Equal => {
                    exact = Some(mid);
                    break;
                }
                s if s == s_lo => lo = mid,
                _ => hi = mid,
            }
        }
        let x = match exact {
            Some(r) => Float::with_val(prec, &r),
            None => {
                let mut x = Float::with_val(prec, &((lo + hi) / 2u32));
                for _ in 0..3 {
                    let d = dqn.eval_float(&x);
                    if d.is_zero() {
                        break;
                    }
                    let step = qn.eval_float(&x) / d;
                    x -= step;
                }
                x
            }
        };
        let w = Float::with_val(prec, &lam / (dqn.eval_float(&x) * qm.eval_float(&x)));
        out.push((x, w));
    }
    Ok(out)
}

/// Left side minus right side of the Christoffel–Darboux identity
/// `sum_{k<=n} eps_k q_k(x) q_k(y) / lambda_k
///   = [q_{n+1}(x) q_n(y) - q_{n+1}(y) q_n(x)] / (lambda_n (x - y))`.
pub fn cd_residual(nu: &Rational, n: usize, x: &Rational, y: &Rational) -> Result<Rational> {
    if x == y {
        return Err(Error::InvalidArgument("cd_residual needs x != y; use cd_confluent_residual".into()));
    }
    let fam = build_q(nu, n + 1)?;
    let mut lhs = Rational::new();
    for k in 0..=n {
        lhs += epsilon(k) * fam.q[k].eval(x) * fam.q[k].eval(y) / lambda_norm(nu, k)?;
    }
    let num = fam.q[n + 1].eval(x) * fam.q[n].eval(y) - fam.q[n + 1].eval(y) * fam.q[n].eval(x);
    let rhs = num / (lambda_norm(nu, n)? * Rational::from(x - y));
    Ok(lhs - rhs)
}

/// The `y -> x` limit of [`cd_residual`]:
/// `sum eps_k q_k(x)^2 / lambda_k - [q_{n+1}'(x) q_n(x) - q_{n+1}(x) q_n'(x)] / lambda_n`.
pub fn cd_confluent_residual(nu: &Rational, n: usize, x: &Rational) -> Result<Rational> {
    let fam = build_q(nu, n + 1)?;
    let mut lhs = Rational::new();
    for k in 0..=n {
        lhs += epsilon(k) * fam.q[k].eval(x).square() / lambda_norm(nu, k)?;
    }
    let (a, b) = (&fam.q[n + 1], &fam.q[n]);
    let num = a.derivative().eval(x) * b.eval(x) - a.eval(x) * b.derivative().eval(x);
    Ok(lhs - num / lambda_norm(nu, n)?)
}

/// `q*_n(x) / q_n(x)` in floating point.
pub fn markov_ratio(fam: &QFamily, n: usize, x: &Float) -> Float {
    let num = fam.q_star[n].eval_float(x);
    num / fam.q[n].eval_float(x)
}

/// `2 nu J_nu(1/x) / J'_nu(1/x)`, the limit of [`markov_ratio`] away from
/// the support of the measure.
pub fn markov_limit(nu: &Rational, x: &Float, prec: u32) -> Result<Float> {
    let t = Float::with_val(prec, x.recip_ref());
    let j = eval_j_rational(nu, &t, prec)?;
    let jp = eval_jprime_rational(nu, &t, prec)?;
    Ok(j * Float::with_val(prec, nu) * 2u32 / jp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::moment_table;
    use crate::scalar_poly::{squarefree_decomposition, sturm_count, Interval};
    use proptest::prelude::*;
    use rug::Integer;

    fn r(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    fn poly(c: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::from_coeffs(c.iter().map(|&(a, b)| r(a, b)).collect())
    }

    /// Monic orthogonal polynomials for the moment functional by Gram–Schmidt.
    fn gram_schmidt(nu: &Rational, n_max: usize) -> Vec<RationalPoly> {
        let t = moment_table(nu, 2 * n_max).unwrap();
        let l = |p: &RationalPoly| -> Rational {
            p.coeffs().iter().enumerate().map(|(i, c)| Rational::from(c * &t.moments[i])).sum()
        };
        let mut ps: Vec<RationalPoly> = Vec::new();
        for n in 0..=n_max {
            let mut p = RationalPoly::monomial(r(1, 1), n);
            for pk in &ps {
                let c = l(&(&RationalPoly::monomial(r(1, 1), n) * pk)) / l(&(pk * pk));
                p = p - pk.scale(&c);
            }
            ps.push(p);
        }
        ps
    }

    #[test]
    fn q_low_degree_closed_forms() {
        let f = build_q(&r(1, 1), 3).unwrap();
        assert_eq!(f.q[2], poly(&[(-1, 8), (0, 1), (1, 2)]));
        assert_eq!(f.q[3], poly(&[(0, 1), (-7, 48), (0, 1), (1, 2)]));
        assert_eq!(f.q_star[2], RationalPoly::x());
        assert_eq!(f.q_star[0], RationalPoly::zero());
        for nu in [r(1, 3), r(5, 2), r(-7, 4), r(11, 1)] {
            let f = build_q(&nu, 3).unwrap();
            let c2 = -(Rational::from(&nu * 4u32) * Rational::from(&nu + 1u32)).recip();
            assert_eq!(f.q[2], RationalPoly::from_coeffs(vec![c2, r(0, 1), r(1, 2)]));
            let c3 = -(Rational::from(&nu * 3u32) + 4u32)
                / (Rational::from(&nu * 8u32) * Rational::from(&nu + 1u32) * Rational::from(&nu + 2u32));
            assert_eq!(f.q[3], RationalPoly::from_coeffs(vec![r(0, 1), c3, r(0, 1), r(1, 2)]));
        }
    }

    #[test]
    fn q_structure() {
        let f = build_q(&r(3, 7), 12).unwrap();
        for n in 0..=12 {
            assert_eq!(f.q[n].degree(), Some(n));
            if n >= 1 {
                assert_eq!(f.q[n].leading(), Some(&r(1, 2)));
            }
            let parity = if n % 2 == 0 { f.q[n].clone() } else { -f.q[n].clone() };
            assert_eq!(f.q[n].reflect(), parity);
        }
        for n in 1..12 {
            let b = beta(&f.nu, n).unwrap();
            assert_eq!(f.q[n].shift(1), f.q[n + 1].clone() + f.q[n - 1].scale(&b));
            assert_eq!(f.q_star[n].shift(1), f.q_star[n + 1].clone() + f.q_star[n - 1].scale(&b));
        }
        assert!(matches!(build_q(&r(-3, 1), 2), Err(Error::NonadmissibleNu(_))));
        assert!(matches!(build_q(&r(0, 1), 0), Err(Error::NonadmissibleNu(_))));
    }

    #[test]
    fn lommel() {
        let nu = r(3, 2);
        assert_eq!(lommel_r(&nu, 0).unwrap(), RationalPoly::one());
        assert_eq!(lommel_r(&nu, 1).unwrap(), poly(&[(0, 1), (3, 1)]));
        // q_n(x) = [R_{n,nu}(x) - R_{n-2,nu+2}(x)] / (2^(n+1) (nu)_n), t -> x
        let f = build_q(&nu, 8).unwrap();
        for n in 2..=8 {
            let diff = lommel_r(&nu, n).unwrap() - lommel_r(&(nu.clone() + 2u32), n - 2).unwrap();
            let scale = (pochhammer(&nu, n) * Integer::from(Integer::u_pow_u(2, n as u32 + 1))).recip();
            assert_eq!(diff.scale(&scale), f.q[n], "n={n}");
        }
    }

    #[test]
    fn p_low_degree_closed_forms() {
        let nu = r(1, 1);
        for fam in [build_p_quotient(&nu, 3).unwrap(), build_p_recurrence(&nu, 3).unwrap()] {
            assert_eq!(fam.p[0], RationalPoly::one());
            assert_eq!(fam.p[1], RationalPoly::x());
            assert_eq!(fam.p[2], poly(&[(-17, 72), (0, 1), (1, 1)]));
            assert_eq!(fam.p[3], poly(&[(0, 1), (-79, 272), (0, 1), (1, 1)]));
            assert_eq!(fam.gamma(1), Some(&r(3, 4)));
            assert_eq!(fam.gamma(2), Some(&r(17, 72)));
        }
        assert_eq!(gamma_direct(&nu, 2).unwrap(), r(17, 72));
    }

    #[test]
    fn p_routes_agree() {
        for nu in [r(1, 2), r(1, 1), r(5, 2)] {
            let a = build_p_quotient(&nu, 12).unwrap();
            let b = build_p_recurrence(&nu, 12).unwrap();
            assert_eq!(a, b, "nu={nu}");
            for n in 2..=12 {
                assert_eq!(gamma_direct(&nu, n).unwrap(), a.gamma[n - 1]);
            }
            for (n, p) in a.p.iter().enumerate() {
                assert!(p.is_monic());
                assert_eq!(p.degree(), Some(n));
            }
            assert!(a.gamma.iter().all(|g| *g > 0));
        }
    }

    #[test]
    fn p_matches_gram_schmidt() {
        for nu in [r(1, 1), r(2, 3), r(7, 2)] {
            let gs = gram_schmidt(&nu, 8);
            let fam = build_p_recurrence(&nu, 8).unwrap();
            assert_eq!(gs, fam.p, "nu={nu}");
        }
    }

    #[test]
    fn p_rejects_nonpositive() {
        assert!(matches!(build_p_quotient(&r(-1, 2), 2), Err(Error::NonpositiveNu(_))));
        assert!(matches!(build_p_recurrence(&r(0, 1), 2), Err(Error::NonpositiveNu(_))));
    }

    #[test]
    fn h_values_and_polys() {
        let h = build_h(&r(1, 1), 5).unwrap();
        assert_eq!(h.h_values[..4], [r(1, 1), r(1, 1), r(3, 1), r(17, 1)]);
        assert_eq!(h.H(1), Some(&RationalPoly::one()));
        assert_eq!(h.H(2), Some(&RationalPoly::from_i64s(&[2, 1])));
        assert_eq!(h.H(3), Some(&RationalPoly::from_i64s(&[8, 8, 1])));
        assert_eq!(h.H(4), Some(&RationalPoly::from_i64s(&[48, 64, 20, 1])));
        assert_eq!(h.H(0), None);
        assert!(matches!(build_h(&r(0, 1), 3), Err(Error::ZeroNu)));

        let nu = r(-7, 5);
        let h = build_h(&nu, 5).unwrap();
        assert_eq!(h.h_values[2], Rational::from(&nu + 2u32) / &nu);
        for n in 1..=20 {
            let hs = build_h(&nu, n).unwrap();
            let lhs = hs.h_values[n].clone() * nu.clone().pow(n as i32 - 1);
            assert_eq!(lhs, hs.H(n).unwrap().eval(&nu));
            let p = hs.H(n).unwrap();
            assert!(p.is_monic() && p.has_integer_coeffs());
            assert_eq!(p.degree(), Some(n - 1));
        }
    }

    #[test]
    fn h_is_scaled_q_at_reciprocal() {
        for nu in [r(1, 1), r(5, 3), r(-9, 4)] {
            let f = build_q(&nu, 10).unwrap();
            let h = h_values(&nu, 10).unwrap();
            let a = Rational::from(nu.recip_ref());
            for n in 0..=10 {
                let scaled = f.q[n].eval(&a) * pochhammer(&nu, n) * Integer::from(Integer::u_pow_u(2, n as u32));
                assert_eq!(scaled, h[n]);
            }
        }
    }

    #[test]
    fn h_zero_structure() {
        let hs = h_polynomials(12);
        assert_eq!(squarefree_decomposition(&hs[2]).unwrap().len(), 1);
        let iv = Interval::new(r(-3, 1), r(0, 1)).unwrap();
        assert_eq!(sturm_count(&hs[1], &iv).unwrap(), 1);
        let roots = isolate_real_roots(&hs[2], &r(1, 1000)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].hi < r(-6827, 1000) && roots[0].lo > r(-6829, 1000));
        assert!(roots[1].hi < r(-1171, 1000) && roots[1].lo > r(-1173, 1000));
    }

    #[test]
    fn h_asymptotics() {
        // h_{n+1}(nu) nu^n / (2^n n!) -> 1 as nu -> 0-; h_n(nu) -> 1 as nu -> -inf
        let small = r(-1, 1_000_000);
        let large = r(-1_000_000, 1);
        let hs = h_values(&small, 7).unwrap();
        let hl = h_values(&large, 7).unwrap();
        let mut fact = Integer::from(1);
        for n in 0..=6u32 {
            if n > 0 {
                fact *= n;
            }
            let norm = Integer::from(Integer::u_pow_u(2, n)) * &fact;
            let v = (&hs[n as usize + 1] * small.clone().pow(n as i32)) / norm;
            assert!((v.to_f64() - 1.0).abs() < 0.01, "n={n} {v}");
            assert!((hl[n as usize].to_f64() - 1.0).abs() < 0.01);
        }
    }

    #[test]
    fn rho_examples() {
        let tol = Float::with_val(256, 1e-60);
        let w = rho_weights(&r(1, 1), 1, &tol).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].0, 0);
        assert_eq!(w[0].1, 2);
        assert!(rho_weights(&r(1, 1), 0, &tol).unwrap().is_empty());
        assert!(matches!(rho_weights(&r(-1, 2), 2, &tol), Err(Error::NonpositiveNu(_))));

        let w = rho_weights(&r(2, 1), 4, &tol).unwrap();
        for i in 0..4 {
            let (x, a) = (&w[i].0, &w[i].1);
            let (y, b) = (&w[3 - i].0, &w[3 - i].1);
            assert!(Float::with_val(256, x + y).abs() < 1e-55);
            assert!(Float::with_val(256, a - b).abs() < 1e-55);
            assert!(*a > 0);
        }

        let w = rho_weights(&r(3, 2), 6, &tol).unwrap();
        let total: Float = w.iter().fold(Float::with_val(256, 0), |acc, (_, b)| acc + b);
        assert!((total - 2u32).abs() < 1e-55);
    }

    #[test]
    fn q_roots_interlace() {
        let nu = r(1, 1);
        let tol = Float::with_val(256, 1e-50);
        let f = build_q(&nu, 13).unwrap();
        for n in 1..=12 {
            let roots = rho_weights(&nu, n + 1, &tol).unwrap();
            let signs: Vec<_> = roots.iter().map(|(x, _)| f.q[n].eval_float(x)).collect();
            for s in &signs {
                assert!(s.clone().abs() > 1e-40, "common root at n={n}");
            }
            for pair in signs.windows(2) {
                assert_ne!(pair[0].cmp0(), pair[1].cmp0(), "n={n}");
            }
        }
    }

    #[test]
    fn christoffel_darboux() {
        assert_eq!(cd_residual(&r(1, 1), 0, &r(1, 1), &r(2, 1)).unwrap(), 0);
        assert_eq!(cd_residual(&r(3, 2), 5, &r(1, 3), &r(-2, 7)).unwrap(), 0);
        assert_eq!(cd_confluent_residual(&r(2, 1), 4, &r(1, 5)).unwrap(), 0);
        assert!(cd_residual(&r(1, 1), 2, &r(1, 3), &r(1, 3)).is_err());
    }

    #[test]
    fn markov_ratio_converges() {
        let nu = r(1, 1);
        let prec = 512;
        let x = Float::with_val(prec, 1.2);
        let fam = build_q(&nu, 30).unwrap();
        let limit = markov_limit(&nu, &x, prec).unwrap();
        let e10 = Float::with_val(prec, markov_ratio(&fam, 10, &x) - &limit).abs();
        let e30 = Float::with_val(prec, markov_ratio(&fam, 30, &x) - &limit).abs();
        assert!(e30 < e10);
        assert!(e30 < 1e-20);
    }

    proptest! {
        #[test]
        fn cd_residual_vanishes(p in 1i64..60, q in 1i64..12, n in 0usize..7,
                                a in -50i64..50, b in -50i64..50, d in 1i64..30) {
            prop_assume!(a != b);
            let nu = r(p, q);
            prop_assert_eq!(cd_residual(&nu, n, &r(a, d), &r(b, d)).unwrap(), 0);
        }

        #[test]
        fn h_recurrences_agree(p in -300i64..300, q in 1i64..30) {
            prop_assume!(p != 0);
            let nu = r(p, q);
            let hs = build_h(&nu, 10).unwrap();
            for n in 1..=10 {
                let v = hs.H(n).unwrap().eval(&nu) / nu.clone().pow(n as i32 - 1);
                prop_assert_eq!(&v, &hs.h_values[n]);
            }
        }
    }

    use rug::ops::Pow;
}
