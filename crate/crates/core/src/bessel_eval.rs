//! Bessel functions of the first kind and their derivative, evaluated from the
//! power series in multiple precision, plus the real zeros of `J'_nu`.
//!
//! Everything routes through two normalized even series,
//!
//! ```text
//! F_nu(x) = 2^nu Gamma(nu) x^(1-nu) J'_nu(x) = sum_k c_2k x^2k
//! G_nu(x) = Gamma(nu+1) (x/2)^(-nu) J_nu(x)  = sum_k (-x^2/4)^k / (k! (nu+1)_k)
//! ```
//!
//! so that only even powers of `x` are ever summed and the `x^nu` prefactors
//! are applied analytically. The order `nu` is handled as an exact rational
//! (a `Float` order is converted to the dyadic rational it represents), so the
//! ratio of consecutive terms is formed from small integers.
//!
//! Every series evaluation carries an a-posteriori bound on its absolute
//! error, expressed as a power of two. Callers that only need a sign raise the
//! working precision until the sign is certain.

use std::cmp::Ordering;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Smallest precision accepted for any `Float` result.
pub const MIN_PRECISION: u32 = 64;

/// Extra working bits tried, at most, when a sign cannot be resolved.
const MAX_EXTRA_BITS: u32 = 8192;

pub(crate) fn is_nonpositive_integer(nu: &Rational) -> bool {
    *nu.denom() == 1 && *nu <= 0
}

/// Coefficients `c_0, c_2, c_4, ...` of the normalized derivative series at a
/// fixed rational order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCoeffs {
    pub nu: Rational,
    /// `coeffs[k]` is `c_2k`.
    pub coeffs: Vec<Rational>,
}

impl SeriesCoeffs {
    pub fn new(nu: &Rational, k_max: usize) -> Result<Self> {
        if is_nonpositive_integer(nu) {
            return Err(Error::NonpositiveIntegerNu(nu.to_string()));
        }
        let half = Rational::from(nu / 2u32);
        let mut coeffs = Vec::with_capacity(k_max + 1);
        let mut c = Rational::from(1);
        coeffs.push(c.clone());
        for k in 0..k_max {
            // c_{2k+2} / c_{2k} = -(nu/2 + 1 + k) / (4 (k+1) (nu/2 + k) (nu + 1 + k))
            let num = Rational::from(&half + (k as u64 + 1));
            let den = Rational::from(&half + k as u64) * Rational::from(nu + (k as u64 + 1)) * (4 * (k as u64 + 1));
            if den == 0 {
                return Err(Error::PoleAtNu(nu.to_string()));
            }
            c = -(c * num / den);
            coeffs.push(c.clone());
        }
        Ok(SeriesCoeffs { nu: nu.clone(), coeffs })
    }

    /// Coefficient of `x^n`; odd `n` gives exactly zero.
    pub fn at(&self, n: usize) -> Option<Rational> {
        if n % 2 == 1 {
            Some(Rational::new())
        } else {
            self.coeffs.get(n / 2).cloned()
        }
    }
}

/// `c_2k` of the normalized Bessel-derivative series.
pub fn series_coeff(nu: &Rational, k: usize) -> Result<Rational> {
    Ok(SeriesCoeffs::new(nu, k)?.coeffs.pop().expect("k_max + 1 entries"))
}

/// `c_n` for any index; odd indices are zero.
pub fn series_coeff_at(nu: &Rational, n: usize) -> Result<Rational> {
    if n % 2 == 1 {
        if is_nonpositive_integer(nu) {
            return Err(Error::NonpositiveIntegerNu(nu.to_string()));
        }
        return Ok(Rational::new());
    }
    series_coeff(nu, n / 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Series {
    /// `F_nu`, the normalized derivative.
    Derivative,
    /// `G_nu`, the normalized function.
    Function,
}

/// Series value with `|error| <= 2^err_exp`.
#[derive(Debug)]
pub(crate) struct Bounded {
    pub value: Float,
    pub err_exp: i64,
}

impl Bounded {
    /// Sign of the value when the error bound excludes zero.
    pub fn certain_sign(&self) -> Option<Ordering> {
        if self.value.is_zero() {
            return None;
        }
        let exp = self.value.get_exp().expect("finite nonzero") as i64;
        // |value| >= 2^(exp-1)
        (exp - 1 > self.err_exp).then(|| self.value.cmp0().expect("finite"))
    }

    /// `log2(err / |value|)`, or `None` when the value is zero.
    fn relative_err_log2(&self) -> Option<i64> {
        let exp = self.value.get_exp()? as i64;
        Some(self.err_exp - (exp - 1))
    }
}

fn term_ratio_f64(kind: Series, nu: f64, x2: f64, k: usize) -> f64 {
    let k = k as f64;
    match kind {
        Series::Derivative => {
            x2 * (nu + 2.0 * k + 2.0).abs() / (4.0 * (k + 1.0) * (nu + 2.0 * k).abs() * (nu + k + 1.0).abs())
        }
        Series::Function => x2 / (4.0 * (k + 1.0) * (nu + k + 1.0).abs()),
    }
}

/// Estimate of `log2 max_k |t_k|` used to size the working precision.
fn log2_max_term(kind: Series, nu: f64, x2: f64) -> f64 {
    let mut log_t = 0.0f64;
    let mut best = 0.0f64;
    let mut k = 0usize;
    loop {
        let r = term_ratio_f64(kind, nu, x2, k);
        if r < 1.0 && (k as f64) > nu.abs() + 2.0 {
            return best;
        }
        if r > 0.0 {
            log_t += r.log2();
        }
        best = best.max(log_t);
        k += 1;
    }
}

/// Sums `kind` at `x2 = x^2` (exact input) with `prec` bits of working
/// precision, stopping once the first omitted term is below
/// `2^-(target+8)` relative to the partial sum or below rounding noise.
fn sum_series(kind: Series, nu: &Rational, x2: &Float, prec: u32, target: u32) -> Bounded {
    let p = nu.numer();
    let q = nu.denom();
    let nu_f = nu.to_f64();
    let x2_f = x2.to_f64();
    let x2w = Float::with_val(prec, x2);

    let mut term = Float::with_val(prec, 1);
    let mut sum = Float::with_val(prec, 1);
    let mut max_exp: i64 = 1;
    let mut k = 0usize;
    loop {
        let kk = k as u64;
        // next = term * (-x^2) * num / den
        let (num, den) = match kind {
            Series::Derivative => {
                let a = p + Integer::from(q * (2 * kk + 2));
                let b = p + Integer::from(q * (2 * kk));
                let c = p + Integer::from(q * (kk + 1));
                (a * q, b * c * (4 * (kk + 1)))
            }
            Series::Function => {
                let c = p + Integer::from(q * (kk + 1));
                (q.clone(), c * (4 * (kk + 1)))
            }
        };
        term *= &x2w;
        term *= &num;
        term /= &den;
        term = -term;
        k += 1;

        let t_exp = term.get_exp().map_or(i64::MIN / 4, |e| e as i64);
        let s_exp = sum.get_exp().map_or(i64::MIN / 4, |e| e as i64);
        let noise_exp = max_exp - prec as i64;
        let past_peak = (k as f64) > nu_f.abs() + 2.0 && term_ratio_f64(kind, nu_f, x2_f, k) < 0.5;
        if past_peak && (t_exp + target as i64 + 8 < s_exp || t_exp < noise_exp) {
            // Roundings: each term carries at most ~4k relative roundings and
            // each addition one more; bound both by 8K ulps of the largest term.
            let kf = (k + 1) as f64;
            let rounding = max_exp + (8.0 * kf * kf).log2().ceil() as i64 - prec as i64;
            // Geometric tail with ratio below 1/2.
            let tail = t_exp + 1;
            let err_exp = rounding.max(tail) + 1;
            return Bounded { value: sum, err_exp };
        }
        max_exp = max_exp.max(t_exp);
        sum += &term;
    }
}

/// Normalized derivative series `F_nu(x)` with an error bound. The working
/// precision is `target` bits plus the estimated cancellation.
pub(crate) fn normalized_jprime(nu: &Rational, x: &Float, target: u32, extra: u32) -> Bounded {
    let x2 = Float::with_val(2 * x.prec() + 2, x.square_ref());
    let guard = log2_max_term(Series::Derivative, nu.to_f64(), x2.to_f64()).ceil().max(0.0) as u32;
    let k_est = (x.to_f64().abs() * 1.5 + nu.to_f64().abs() + 16.0).log2().ceil() as u32 * 2 + 8;
    sum_series(Series::Derivative, nu, &x2, target + guard + k_est + extra, target)
}

fn normalized_j(nu: &Rational, x: &Float, target: u32, extra: u32) -> Bounded {
    let x2 = Float::with_val(2 * x.prec() + 2, x.square_ref());
    let guard = log2_max_term(Series::Function, nu.to_f64(), x2.to_f64()).ceil().max(0.0) as u32;
    let k_est = (x.to_f64().abs() * 1.5 + nu.to_f64().abs() + 16.0).log2().ceil() as u32 * 2 + 8;
    sum_series(Series::Function, nu, &x2, target + guard + k_est + extra, target)
}

/// Sign of `F_nu(x)`, or `None` if it stays unresolved at the maximum
/// working precision.
pub(crate) fn normalized_jprime_sign(nu: &Rational, x: &Float) -> Option<Ordering> {
    let mut extra = 0;
    loop {
        let b = normalized_jprime(nu, x, 64, extra);
        if let Some(s) = b.certain_sign() {
            return Some(s);
        }
        if extra >= MAX_EXTRA_BITS {
            return None;
        }
        extra = (extra * 2).max(64);
    }
}

/// Evaluates a normalized series until its relative error is below
/// `2^-(prec/2 + 4)`.
fn relative_accurate(
    f: impl Fn(u32) -> Bounded,
    prec: u32,
) -> Result<(Float, u32)> {
    let want = (prec / 2 + 4) as i64;
    let mut extra = 0u32;
    loop {
        let b = f(extra);
        let working = b.value.prec();
        match b.relative_err_log2() {
            Some(r) if r <= -want => return Ok((b.value, working)),
            Some(r) if extra < MAX_EXTRA_BITS => extra += (r + want) as u32 + 32,
            None if extra < MAX_EXTRA_BITS => extra = (extra * 2).max(64),
            _ => {
                return Err(Error::PrecisionExhausted(format!(
                    "series error bound not below 2^-{want} relative after {extra} extra bits"
                )))
            }
        }
    }
}

fn check_prec(prec: u32) -> Result<()> {
    if prec < MIN_PRECISION {
        return Err(Error::InvalidArgument(format!("precision {prec} below {MIN_PRECISION} bits")));
    }
    Ok(())
}

fn finite_rational(v: &Float, what: &str) -> Result<Rational> {
    v.to_rational()
        .ok_or_else(|| Error::InvalidArgument(format!("{what} must be finite")))
}

/// `J'_nu(x)` for `x > 0` with relative error at most `2^(-prec/2)`.
pub fn eval_jprime(nu: &Float, x: &Float, prec: u32) -> Result<Float> {
    eval_jprime_rational(&finite_rational(nu, "nu")?, x, prec)
}

/// [`eval_jprime`] for an order given exactly.
pub fn eval_jprime_rational(nu: &Rational, x: &Float, prec: u32) -> Result<Float> {
    check_prec(prec)?;
    if *x <= 0 || !x.is_finite() {
        return Err(Error::InvalidArgument("J'_nu(x) needs finite x > 0".into()));
    }
    if is_nonpositive_integer(nu) {
        // J'_0 = -J_1, J'_{-n} = (-1)^n J'_n
        let n = Integer::from(-nu.numer());
        if n == 0 {
            return Ok(-eval_j_rational(&Rational::from(1), x, prec)?);
        }
        let v = eval_jprime_rational(&Rational::from(&n), x, prec)?;
        return Ok(if n.is_odd() { -v } else { v });
    }
    let (series, working) = relative_accurate(|extra| normalized_jprime(nu, x, prec, extra), prec)?;
    let nu_f = Float::with_val(working, nu);
    let gamma = Float::with_val(working, nu_f.gamma_ref());
    let two_pow = Float::with_val(working, 2).pow(&nu_f);
    let x_pow = Float::with_val(working, x).pow(Float::with_val(working, &nu_f - 1u32));
    let v = series * x_pow / (two_pow * gamma);
    Ok(Float::with_val(prec, v))
}

/// `J_nu(x)` for `x >= 0` with relative error at most `2^(-prec/2)`.
pub fn eval_j(nu: &Float, x: &Float, prec: u32) -> Result<Float> {
    eval_j_rational(&finite_rational(nu, "nu")?, x, prec)
}

/// [`eval_j`] for an order given exactly.
pub fn eval_j_rational(nu: &Rational, x: &Float, prec: u32) -> Result<Float> {
    check_prec(prec)?;
    if *x < 0 || !x.is_finite() {
        return Err(Error::InvalidArgument("J_nu(x) needs finite x >= 0".into()));
    }
    if is_nonpositive_integer(nu) && *nu != 0 {
        let n = Integer::from(-nu.numer());
        let v = eval_j_rational(&Rational::from(&n), x, prec)?;
        return Ok(if n.is_odd() { -v } else { v });
    }
    if x.is_zero() {
        return match nu.cmp0() {
            Ordering::Equal => Ok(Float::with_val(prec, 1)),
            Ordering::Greater => Ok(Float::with_val(prec, 0)),
            Ordering::Less => Err(Error::InvalidArgument("J_nu(0) is unbounded for negative nu".into())),
        };
    }
    let (series, working) = relative_accurate(|extra| normalized_j(nu, x, prec, extra), prec)?;
    let nu_f = Float::with_val(working, nu);
    let gamma = Float::with_val(working, &nu_f + 1u32).gamma();
    let half_x = Float::with_val(working, x / 2u32);
    let v = series * half_x.pow(&nu_f) / gamma;
    Ok(Float::with_val(prec, v))
}

/// The first `count` positive zeros of `J'_nu` for `nu > 0`, each located to
/// within `tol`, in increasing order.
///
/// Brackets come from sign changes of the normalized derivative on a grid of
/// step `pi/4` starting at `max(nu, tol)`; each bracket is then bisected.
pub fn find_real_zeros(nu: &Float, count: usize, tol: &Float) -> Result<Vec<Float>> {
    let nu_r = finite_rational(nu, "nu")?;
    if nu_r <= 0 {
        return Err(Error::NonpositiveNu(nu_r.to_string()));
    }
    if *tol <= 0 || !tol.is_finite() {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    // Enough bits to represent points of the grid near the largest zero to tol.
    let reach = nu.to_f64() + (count as f64 + 2.0) * std::f64::consts::PI + 16.0;
    let tol_bits = (reach / tol.to_f64()).log2().ceil().max(0.0) as u32 + 16;
    let prec = nu.prec().max(tol.prec()).max(MIN_PRECISION).max(tol_bits);

    let step = Float::with_val(prec, Constant::Pi) / 4u32;
    let start = if *nu > *tol { Float::with_val(prec, nu) } else { Float::with_val(prec, tol) };
    let limit = Float::with_val(prec, reach * 2.0 + 64.0);

    let sign_at = |x: &Float| normalized_jprime_sign(&nu_r, x).unwrap_or(Ordering::Equal);

    let nudge = Float::with_val(prec, &step / 16u32);
    let mut zeros = Vec::with_capacity(count);
    let mut a = start;
    let mut sa = sign_at(&a);
    while sa == Ordering::Equal {
        a += &nudge;
        sa = sign_at(&a);
    }
    while zeros.len() < count {
        if a > limit {
            return Err(Error::BracketFailure(format!(
                "found {} of {count} zeros of J'_{nu_r} before x = {}",
                zeros.len(),
                limit.to_f64()
            )));
        }
        let b = Float::with_val(prec, &a + &step);
        let sb = sign_at(&b);
        if sb == Ordering::Equal {
            zeros.push(b.clone());
            a = Float::with_val(prec, &b + &nudge);
            sa = sign_at(&a);
            continue;
        }
        if sb != sa {
            zeros.push(bisect(&a, &b, sa, tol, &sign_at));
        }
        a = b;
        sa = sb;
    }
    Ok(zeros)
}

/// Bisection on a sign oracle; `sign_lo` is the sign at `lo`.
pub(crate) fn bisect(
    lo: &Float,
    hi: &Float,
    sign_lo: Ordering,
    tol: &Float,
    sign_at: &impl Fn(&Float) -> Ordering,
) -> Float {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    loop {
        let mid = Float::with_val(lo.prec(), &lo + &hi) / 2u32;
        let width = Float::with_val(lo.prec(), &hi - &lo);
        if width <= *tol || mid == lo || mid == hi {
            return mid;
        }
        match sign_at(&mid) {
            Ordering::Equal => return mid,
            s if s == sign_lo => lo = mid,
            _ => hi = mid,
        }
    }
}
