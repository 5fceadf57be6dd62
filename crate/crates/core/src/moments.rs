//! Rayleigh-type sums over the zeros of `J'_nu`, the auxiliary sums `S'_2n`
//! and the moment sequence `mu_n = sigma'(n+2)`.
//!
//! The sums come from the coefficients of the normalized derivative series
//! through Newton's identity
//!
//! ```text
//! sigma'(n) = -n c_n - sum_{i=1}^{n-1} c_i sigma'(n-i)
//! ```
//!
//! with the equivalent almost-triangular determinant kept as an oracle.

use rug::Rational;

use crate::bessel_eval::{is_nonpositive_integer, SeriesCoeffs};
use crate::error::{Error, Result};
use crate::scalar_poly::determinant;

fn check_order(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("Rayleigh sum order {m} must be at least 2")));
    }
    Ok(())
}

/// `sums[n] = sigma'(n)` for `1 <= n <= m`; `sums[0]` is unused and zero.
fn newton_sums(c: &SeriesCoeffs, m: usize) -> Vec<Rational> {
    let mut sums = vec![Rational::new(); m + 1];
    // Odd coefficients vanish, so only even i and even n contribute.
    for n in (2..=m).step_by(2) {
        let mut s = -Rational::from(&c.coeffs[n / 2] * n as u64);
        for i in (2..n).step_by(2) {
            s -= Rational::from(&c.coeffs[i / 2] * &sums[n - i]);
        }
        sums[n] = s;
    }
    sums
}

/// `sigma'_nu(m)`, the sum of `j^-m` over all nonzero zeros `j` of `J'_nu`,
/// continued analytically to every non-integral negative order.
pub fn rayleigh_sum(nu: &Rational, m: usize) -> Result<Rational> {
    check_order(m)?;
    let c = SeriesCoeffs::new(nu, m / 2)?;
    Ok(newton_sums(&c, m).swap_remove(m))
}

/// `sigma'_nu(m)` as `(-1)^m` times an `m x m` determinant in the series
/// coefficients. Slow; used to audit [`rayleigh_sum`].
pub fn rayleigh_via_determinant(nu: &Rational, m: usize) -> Result<Rational> {
    check_order(m)?;
    let c = SeriesCoeffs::new(nu, m / 2)?;
    let coeff = |n: usize| c.at(n).expect("table covers m");
    let matrix = (1..=m)
        .map(|i| {
            (1..=m)
                .map(|j| {
                    if j == 1 {
                        coeff(i) * i as u64
                    } else if i + 1 >= j {
                        coeff(i + 1 - j)
                    } else {
                        Rational::new()
                    }
                })
                .collect()
        })
        .collect();
    let d = determinant(matrix);
    Ok(if m.is_multiple_of(2) { d } else { -d })
}

/// `S'_2n`, the sum over positive zeros `j` of `J'_nu` of
/// `1 / (j^2n (j^2 - nu^2))`, for `nu > 0`.
pub fn s_prime(nu: &Rational, n: usize) -> Result<Rational> {
    if *nu <= 0 {
        return Err(Error::NonpositiveNu(nu.to_string()));
    }
    let c = SeriesCoeffs::new(nu, n)?;
    let sums = newton_sums(&c, 2 * n);
    let two_nu2 = Rational::from(nu.square_ref()) * 2u32;
    let mut s = Rational::from(nu.recip_ref()) / 2u32;
    for k in 1..=n {
        s = (s * 2u32 - &sums[2 * k]) / &two_nu2;
    }
    Ok(s)
}

/// Moments `mu_0 ..= mu_max` of the functional whose moments are the
/// Rayleigh sums, at a fixed rational order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTable {
    pub nu: Rational,
    /// `moments[n] = sigma'(n + 2)`; odd entries are zero.
    pub moments: Vec<Rational>,
}

impl MomentTable {
    pub fn mu(&self, n: usize) -> Option<&Rational> {
        self.moments.get(n)
    }

    pub fn max_order(&self) -> usize {
        self.moments.len() - 1
    }
}

pub fn moment_table(nu: &Rational, max_order: usize) -> Result<MomentTable> {
    let m = max_order + 2;
    let c = SeriesCoeffs::new(nu, m / 2)?;
    let sums = newton_sums(&c, m);
    Ok(MomentTable { nu: nu.clone(), moments: sums[2..].to_vec() })
}

/// True when the Pochhammer factors of the series are all nonzero at `nu`.
pub fn admissible(nu: &Rational) -> bool {
    !is_nonpositive_integer(nu)
}
