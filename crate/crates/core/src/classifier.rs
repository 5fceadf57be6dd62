//! Hankel determinants of the moment sequence, the sign sequence
//! `Lambda_n = Delta_{n-1} Delta_n`, and the count of complex zeros of
//! `J'_nu` for every real order.
//!
//! The number of complex zeros is twice the number of negative `Lambda_n`.
//! In closed form it depends only on where `nu` sits relative to the
//! double-zero orders `nu_k in (-k-1/2, -k)`, the unique points of that
//! interval where `J'_nu(|nu|) = 0`.

use std::cmp::Ordering;
use std::fmt;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::bessel_eval::{bisect, eval_jprime_rational, is_nonpositive_integer, normalized_jprime_sign, MIN_PRECISION};
use crate::error::{Error, Result};
use crate::moments::moment_table;
use crate::opoly::h_values;
use crate::scalar_poly::{determinant, Interval};

/// Hard cap on the index scanned by [`count_negatives`].
pub const SCAN_CAP: usize = 500;

/// Default run of positive signs required by [`classify`]'s cross-check.
pub const DEFAULT_WINDOW: usize = 10;

fn check_order(nu: &Rational) -> Result<()> {
    if is_nonpositive_integer(nu) {
        return Err(Error::NonpositiveIntegerNu(nu.to_string()));
    }
    Ok(())
}

/// `Delta_n / Delta_{n-1} = h_{n+2} / (h_n 2^(2n+1) (nu+1)^2 ... (nu+n)^2 (nu+n+1))`
/// for `n >= 1`; `prod_sq` is `prod_{j<=n} (nu+j)^2`.
fn delta_ratio(nu: &Rational, n: usize, h: &[Rational], prod_sq: &Rational) -> Rational {
    let pow2 = Integer::from(Integer::u_pow_u(2, 2 * n as u32 + 1));
    Rational::from(&h[n + 2] / &h[n]) / (Rational::from(prod_sq * pow2) * Rational::from(nu + (n as u64 + 1)))
}

/// `Delta_n` from the closed form
/// `h_{n+1} h_{n+2} / (2^((n+1)^2) prod_{j=1}^{n+1} (nu+j)^(2n+3-2j))`.
pub fn hankel_delta(nu: &Rational, n: usize) -> Result<Rational> {
    check_order(nu)?;
    let h = h_values(nu, n + 2)?;
    let mut den = Rational::from(Integer::from(Integer::u_pow_u(2, ((n + 1) * (n + 1)) as u32)));
    for j in 1..=n + 1 {
        den *= Rational::from(nu + j as u64).pow((2 * n + 3 - 2 * j) as u32);
    }
    Ok(Rational::from(&h[n + 1] * &h[n + 2]) / den)
}

/// `Delta_n = det (mu_{i+j})_{0 <= i, j <= n}` by elimination.
pub fn hankel_delta_direct(nu: &Rational, n: usize) -> Result<Rational> {
    check_order(nu)?;
    let t = moment_table(nu, 2 * n)?;
    let m = (0..=n).map(|i| (0..=n).map(|j| t.moments[i + j].clone()).collect()).collect();
    Ok(determinant(m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelRow {
    pub n: usize,
    pub delta_closed: Rational,
    pub delta_direct: Option<Rational>,
    pub lambda: Rational,
    pub lambda_sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelReport {
    pub nu: Rational,
    pub rows: Vec<HankelRow>,
}

impl HankelReport {
    /// Rows whose direct determinant disagrees with the closed form.
    pub fn mismatches(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.delta_direct.as_ref().is_some_and(|d| *d != r.delta_closed))
            .map(|r| r.n)
            .collect()
    }

    pub fn negatives(&self) -> usize {
        self.rows.iter().filter(|r| r.lambda_sign < 0).count()
    }
}

fn sign_i8(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

fn first_h_zero(nu: &Rational, h: &[Rational]) -> Result<()> {
    match h.iter().position(|v| *v == 0) {
        Some(n) => Err(Error::NuInM { nu: nu.to_string(), n }),
        None => Ok(()),
    }
}

/// `Delta_n` and `Lambda_n` for `0 <= n <= n_max`. With `direct`, every row
/// also carries the determinant of the moment matrix.
pub fn lambda_sequence(nu: &Rational, n_max: usize, direct: bool) -> Result<HankelReport> {
    check_order(nu)?;
    let h = h_values(nu, n_max + 2)?;
    first_h_zero(nu, &h)?;

    let mut rows = Vec::with_capacity(n_max + 1);
    let mut prev = Rational::from(1);
    let mut delta = hankel_delta(nu, 0)?;
    let mut prod_sq = Rational::from(1);
    for n in 0..=n_max {
        if n > 0 {
            prod_sq *= Rational::from(nu + n as u64).square();
            delta *= delta_ratio(nu, n, &h, &prod_sq);
        }
        let lambda = Rational::from(&prev * &delta);
        let lambda_sign = sign_i8(lambda.cmp0());
        let predicted = sign_i8(Rational::from(nu + (n as u64 + 1)).cmp0())
            * sign_i8(h[n].cmp0())
            * sign_i8(h[n + 2].cmp0());
        assert_eq!(lambda_sign, predicted, "sign rule for Lambda_{n} at nu = {nu}");
        let delta_direct = if direct { Some(hankel_delta_direct(nu, n)?) } else { None };
        rows.push(HankelRow { n, delta_closed: delta.clone(), delta_direct, lambda, lambda_sign });
        prev = delta.clone();
    }
    Ok(HankelReport { nu: nu.clone(), rows })
}

/// Number of negative `Lambda_n`, scanning until the first
/// `n >= ceil|nu| + 2` at which the last `window` signs are all positive.
pub fn count_negatives(nu: &Rational, window: usize) -> Result<usize> {
    check_order(nu)?;
    if window == 0 {
        return Err(Error::InvalidArgument("window must be positive".into()));
    }
    let h = h_values(nu, SCAN_CAP + 2)?;
    let floor = Rational::from(nu.abs_ref()).ceil().numer().to_usize().unwrap_or(usize::MAX).saturating_add(2);
    let mut negatives = 0;
    let mut run = 0;
    for n in 0..=SCAN_CAP {
        for i in [n, n + 2] {
            if h[i] == 0 {
                return Err(Error::NuInM { nu: nu.to_string(), n: i });
            }
        }
        let sign = Rational::from(nu + (n as u64 + 1)).cmp0() as i32 * h[n].cmp0() as i32 * h[n + 2].cmp0() as i32;
        if sign < 0 {
            negatives += 1;
            run = 0;
        } else {
            run += 1;
        }
        if n >= floor && run >= window {
            return Ok(negatives);
        }
    }
    Err(Error::NonStabilized { window, cap: SCAN_CAP })
}

/// A double-zero order `nu_k`.
#[derive(Clone, Debug)]
pub struct NuKEntry {
    pub k: usize,
    /// Always `(-k-1/2, -k)`.
    pub bracket: Interval,
    pub value: Float,
    /// `|J'_nu(|nu|)|` at `nu = value`.
    pub residual: Float,
}

/// Sign of `F_nu(|nu|)`, where `F` is the normalized derivative series. For
/// `nu` in `(-k-1, -k)`, `J'_nu(|nu|)` has sign `(-1)^(k+1) sgn F`.
fn side_sign(nu: &Rational, x_prec: u32) -> Option<Ordering> {
    let x = Float::with_val(x_prec, nu).abs();
    normalized_jprime_sign(nu, &x)
}

/// `nu_k`, located by bisection on the sign of `J'_nu(|nu|)` in
/// `(-k-1/2, -k)` to within `tol`.
pub fn find_nu_k(k: usize, tol: &Float) -> Result<NuKEntry> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if *tol <= 0 || !tol.is_finite() {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    let k_r = Rational::from(k as u64);
    let bracket = Interval::new(-(k_r.clone() + Rational::from((1, 2))), -k_r.clone())?;
    let prec = ((k as f64 + 1.0).log2() - tol.to_f64().log2()).ceil().max(0.0) as u32 + 16;
    let prec = prec.max(MIN_PRECISION).max(tol.prec());

    // The left end is evaluable; the right end is a pole of the series, so
    // step in by 1/64, well to the right of any nu_k.
    let lo = Float::with_val(prec, &bracket.lo);
    let hi = Float::with_val(prec, &(Rational::from(&bracket.hi) - Rational::from((1, 64))));
    let sign_at = |nu: &Float| -> Ordering {
        let r = nu.to_rational().expect("finite");
        side_sign(&r, prec + 64).unwrap_or(Ordering::Equal)
    };
    let s_lo = sign_at(&lo);
    let s_hi = sign_at(&hi);
    if s_lo == s_hi || s_lo == Ordering::Equal || s_hi == Ordering::Equal {
        return Err(Error::BracketSignFailure { lo: bracket.lo.to_string(), hi: bracket.hi.to_string() });
    }
    let value = bisect(&lo, &hi, s_lo, tol, &sign_at);
    let v_r = value.to_rational().expect("finite");
    let x = Float::with_val(prec, &v_r).abs();
    let residual = eval_jprime_rational(&v_r, &x, prec.max(128))?.abs();
    Ok(NuKEntry { k, bracket, value, residual })
}

/// An order given exactly or as a binary float.
#[derive(Clone, Debug, PartialEq)]
pub enum Order {
    Exact(Rational),
    Approx(Float),
}

impl Order {
    fn rational(&self) -> Result<Rational> {
        match self {
            Order::Exact(r) => Ok(r.clone()),
            Order::Approx(f) => f.to_rational().ok_or_else(|| Error::InvalidArgument("nu must be finite".into())),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Exact(r) => write!(f, "{r}"),
            Order::Approx(x) => write!(f, "{}", x.to_string_radix(10, None)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// `nu >= 0` or a negative integer: only real zeros.
    PositiveOrInteger,
    /// `-1 < nu < 0`.
    Minus1To0,
    /// `nu_k <= nu < -k`.
    KBandRight,
    /// `-k-1 < nu < nu_k`.
    KBandLeft,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::PositiveOrInteger => "positive_or_integer",
            Case::Minus1To0 => "minus1_to_0",
            Case::KBandRight => "k_band_right",
            Case::KBandLeft => "k_band_left",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroClassification {
    pub nu: Order,
    pub case: Case,
    /// `k` with `-k-1 < nu < -k`, for negative non-integral `nu`.
    pub k: Option<usize>,
    pub complex_count: usize,
    pub imaginary_pair: bool,
    /// `N(nu)` from the `Lambda_n` scan, when it was run and is defined.
    pub counted_negatives: Option<usize>,
}

fn band(nu: Order, k: usize, case: Case) -> ZeroClassification {
    let complex_count = match case {
        Case::KBandRight => 2 * k - 2,
        Case::KBandLeft => 2 * k + 2,
        _ => unreachable!("band cases only"),
    };
    ZeroClassification { nu, case, k: Some(k), complex_count, imaginary_pair: k.is_multiple_of(2), counted_negatives: None }
}

/// Number of complex zeros of `J'_nu` and whether two of them are purely
/// imaginary, cross-checked against the `Lambda_n` scan for exact input.
pub fn classify(nu: &Order) -> Result<ZeroClassification> {
    classify_with_window(nu, DEFAULT_WINDOW)
}

pub fn classify_with_window(nu: &Order, window: usize) -> Result<ZeroClassification> {
    let mut c = classify_closed(nu)?;
    if let Order::Exact(r) = nu {
        if !is_nonpositive_integer(r) {
            match count_negatives(r, window) {
                Ok(m) => {
                    if 2 * m != c.complex_count {
                        return Err(Error::CountMismatch { closed: c.complex_count, counted: 2 * m });
                    }
                    c.counted_negatives = Some(m);
                }
                Err(Error::NuInM { .. } | Error::NonStabilized { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(c)
}

/// The closed-form verdict alone, decided by the sign of `J'_nu(|nu|)`.
pub fn classify_closed(nu: &Order) -> Result<ZeroClassification> {
    let r = nu.rational()?;
    let base = |case, k, complex_count, imaginary_pair| ZeroClassification {
        nu: nu.clone(),
        case,
        k,
        complex_count,
        imaginary_pair,
        counted_negatives: None,
    };
    if r >= 0 || is_nonpositive_integer(&r) {
        return Ok(base(Case::PositiveOrInteger, None, 0, false));
    }
    if r > -1 {
        return Ok(base(Case::Minus1To0, Some(0), 2, true));
    }
    let k = Rational::from(-&r).floor().numer().to_usize().ok_or_else(|| {
        Error::InvalidArgument(format!("nu = {r} is too large in magnitude"))
    })?;
    let x_prec = match nu {
        Order::Approx(f) => f.prec().max(MIN_PRECISION),
        Order::Exact(_) => 1024,
    };
    match side_sign(&r, x_prec) {
        // J'_nu(|nu|) has sign (-1)^k on (nu_k, -k), i.e. F < 0 there.
        Some(Ordering::Less) => Ok(band(nu.clone(), k, Case::KBandRight)),
        Some(_) => Ok(band(nu.clone(), k, Case::KBandLeft)),
        None => Err(Error::UndecidableSide { fallback: Box::new(band(nu.clone(), k, Case::KBandRight)) }),
    }
}
