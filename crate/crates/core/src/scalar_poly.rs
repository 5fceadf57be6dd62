//! Exact rational polynomials and real-root counting.
//!
//! Scalars are [`rug::Rational`], which is always kept in canonical form
//! (positive denominator, coprime numerator and denominator). Polynomials are
//! dense: `coeffs[i]` is the coefficient of `x^i` and the last stored entry is
//! never zero.
//!
//! Root counting uses Sturm sequences built from exact remainders. Each
//! remainder is replaced by its primitive integer part (a positive rescaling),
//! which leaves every sign evaluation unchanged and keeps coefficients small.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Dense univariate polynomial with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::from(1), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^degree`.
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::new(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == 1)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| *c.denom() == 1)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Horner evaluation in floating point at the precision of `x`.
    pub fn eval_float(&self, x: &Float) -> Float {
        let mut acc = Float::new(x.prec());
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        self.eval(x).cmp0()
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rational::from(c * Integer::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if *c == 0 {
            return Self::zero();
        }
        RationalPoly {
            coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::new(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RationalPoly { coeffs }
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        RationalPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { Rational::from(-c) } else { c.clone() })
                .collect(),
        }
    }

    /// Reciprocal polynomial `x^deg p(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_coeffs(coeffs)
    }

    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(&Rational::from(lead.recip_ref())))
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut lcm = Integer::from(1);
        let mut gcd = Integer::new();
        for c in &self.coeffs {
            lcm.lcm_mut(c.denom());
            gcd.gcd_mut(c.numer());
        }
        let factor = Rational::from((lcm, gcd));
        self.scale(&factor)
    }

    /// Long division over the rationals.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d_deg = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let d_lead = divisor.leading().expect("nonzero divisor");
        let Some(n_deg) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n_deg < d_deg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::new(); n_deg - d_deg + 1];
        for k in (0..=n_deg - d_deg).rev() {
            let t = Rational::from(&rem[k + d_deg] / d_lead);
            if t != 0 {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= Rational::from(&t * dc);
                }
            }
            quot[k] = t;
        }
        rem.truncate(d_deg);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient of a division that must leave no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::NonexactDivision);
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        a.monic().unwrap_or_default()
    }

    /// Formats with the given variable name, highest degree first.
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, var }
    }
}

struct PolyDisplay<'a> {
    poly: &'a RationalPoly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let negative = c.cmp0() == Ordering::Less;
            let mag = Rational::from(c.abs_ref());
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = mag == 1;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str(self.var)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("x").fmt(f)
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => Rational::from(a + b),
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        self + &(-rhs)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly {
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        RationalPoly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalPoly {
            type Output = RationalPoly;
            fn $m(self, rhs: RationalPoly) -> RationalPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        -&self
    }
}

/// Open interval `(lo, hi)` with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidArgument(format!(
                "interval needs lo < hi, got ({lo}, {hi})"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn width(&self) -> Rational {
        Rational::from(&self.hi - &self.lo)
    }

    pub fn midpoint(&self) -> Rational {
        Rational::from(&self.lo + &self.hi) / 2u32
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo < *x && *x < self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Sturm chain `p, p', -rem(p, p'), ...` with every member content-stripped.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<RationalPoly>,
}

impl SturmSequence {
    pub fn new(p: &RationalPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut chain = vec![p.primitive_part()];
        let mut next = p.derivative().primitive_part();
        while !next.is_zero() {
            let (_, r) = chain.last().unwrap().div_rem(&next)?;
            chain.push(next);
            next = (-&r).primitive_part();
        }
        Ok(SturmSequence { chain })
    }

    pub fn polys(&self) -> &[RationalPoly] {
        &self.chain
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let lead = p.leading().expect("chain members are nonzero").cmp0();
            if positive || p.degree().unwrap() % 2 == 0 {
                lead
            } else {
                lead.reverse()
            }
        }))
    }

    /// Distinct real roots in `(lo, hi)`; neither endpoint may be a root.
    pub fn count_in(&self, iv: &Interval) -> Result<usize> {
        for end in [&iv.lo, &iv.hi] {
            if self.chain[0].sign_at(end) == Ordering::Equal {
                return Err(Error::EndpointIsRoot(end.to_string()));
            }
        }
        Ok(self.variations_at(&iv.lo) - self.variations_at(&iv.hi))
    }

    /// Distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// Number of distinct real roots of `p` in the open interval `iv`.
pub fn sturm_count(p: &RationalPoly, iv: &Interval) -> Result<usize> {
    SturmSequence::new(p)?.count_in(iv)
}

/// Strict bound on the magnitude of every root (Cauchy).
pub fn root_bound(p: &RationalPoly) -> Result<Rational> {
    let lead = p.leading().ok_or(Error::ZeroPolynomial)?;
    let mut max = Rational::new();
    for c in &p.coeffs[..p.coeffs.len() - 1] {
        let r = Rational::from(c / lead).abs();
        if r > max {
            max = r;
        }
    }
    Ok(max + 1u32)
}

/// Picks a split point inside `(lo, hi)` that is not a root of `p`.
fn split_point(p: &RationalPoly, lo: &Rational, hi: &Rational) -> Rational {
    const FRACTIONS: [(u32, u32); 8] = [(1, 2), (3, 7), (4, 7), (2, 5), (3, 5), (5, 11), (6, 11), (1, 3)];
    let width = Rational::from(hi - lo);
    let mut denom = 13u32;
    let mut i = 0usize;
    loop {
        let (a, b) = if i < FRACTIONS.len() {
            FRACTIONS[i]
        } else {
            denom += 2;
            (denom / 2, denom)
        };
        i += 1;
        let t = Rational::from((a, b));
        let m = lo + Rational::from(&width * &t);
        if p.sign_at(&m) != Ordering::Equal {
            return m;
        }
    }
}

/// Disjoint intervals of width at most `width`, each holding exactly one
/// distinct real root of `p`, in increasing order.
pub fn isolate_real_roots(p: &RationalPoly, width: &Rational) -> Result<Vec<Interval>> {
    if *width <= 0 {
        return Err(Error::InvalidArgument("isolation width must be positive".into()));
    }
    let sturm = SturmSequence::new(p)?;
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let bound = root_bound(p)?;
    let root = Interval::new(Rational::from(-&bound), bound)?;
    let total = sturm.count_in(&root)?;
    let mut out = Vec::with_capacity(total);
    let mut stack = vec![(root, total)];
    while let Some((iv, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 && iv.width() <= *width {
            out.push(iv);
            continue;
        }
        let m = split_point(&sturm.chain[0], &iv.lo, &iv.hi);
        let vm = sturm.variations_at(&m);
        let left_count = sturm.variations_at(&iv.lo) - vm;
        let right = Interval { lo: m.clone(), hi: iv.hi };
        let left = Interval { lo: iv.lo, hi: m };
        stack.push((right, count - left_count));
        stack.push((left, left_count));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Shrinks an interval holding a single sign-changing root of `p` (as
/// returned by [`isolate_real_roots`] for a squarefree `p`) to width at most
/// `width` by bisection.
pub fn refine_root(p: &RationalPoly, iv: &Interval, width: &Rational) -> Result<Interval> {
    if *width <= 0 {
        return Err(Error::InvalidArgument("refinement width must be positive".into()));
    }
    let s_lo = p.sign_at(&iv.lo);
    if s_lo == Ordering::Equal || s_lo == p.sign_at(&iv.hi) {
        return Err(Error::RootIsolationFailure(format!("no sign change of p on {iv}")));
    }
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    while Rational::from(&hi - &lo) > *width {
        let mid = Rational::from(&lo + &hi) / 2u32;
        match p.sign_at(&mid) {
            Ordering::Equal => {
                let quarter = Rational::from(&hi - &lo) / 4u32;
                return Interval::new(Rational::from(&mid - &quarter).max(lo), (mid + quarter).min(hi));
            }
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Interval::new(lo, hi)
}

/// Yun's square-free decomposition: pairs `(f_i, i)` with
/// `p = c * prod f_i^i`, each `f_i` monic, squarefree and pairwise coprime.
pub fn squarefree_decomposition(p: &RationalPoly) -> Result<Vec<(RationalPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.degree() == Some(0) {
        return Ok(out);
    }
    let dp = p.derivative();
    let c = p.gcd(&dp);
    let mut w = p.exact_div(&c)?;
    let mut y = dp.exact_div(&c)?;
    let mut z = &y - &w.derivative();
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let g = w.gcd(&z);
        w = w.exact_div(&g)?;
        y = z.exact_div(&g)?;
        z = &y - &w.derivative();
        if g.degree().unwrap_or(0) > 0 {
            out.push((g, i));
        }
        i += 1;
    }
    Ok(out)
}

/// Number of nonreal roots of `p`, counted with multiplicity.
pub fn count_nonreal_roots(p: &RationalPoly) -> Result<usize> {
    let degree = p.degree().ok_or(Error::ZeroPolynomial)?;
    let mut real = 0;
    for (factor, multiplicity) in squarefree_decomposition(p)? {
        real += multiplicity * SturmSequence::new(&factor)?.count_all();
    }
    Ok(degree - real)
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "determinant needs a square matrix");
    if n == 0 {
        return Rational::from(1);
    }
    let mut sign_flip = false;
    let mut prev = Rational::from(1);
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return Rational::new(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = Rational::from(&m[i][j] * &m[k][k]) - Rational::from(&m[i][k] * &m[k][j]);
                m[i][j] = t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    fn iv(a: i64, b: i64) -> Interval {
        Interval::new(Rational::from(a), Rational::from(b)).unwrap()
    }

    fn h3() -> RationalPoly {
        RationalPoly::from_i64s(&[8, 8, 1])
    }

    #[test]
    fn sturm_count_examples() {
        let h2 = RationalPoly::from_i64s(&[2, 1]);
        assert_eq!(sturm_count(&h2, &iv(-3, 0)).unwrap(), 1);
        let p = RationalPoly::from_i64s(&[-1, 0, 1]);
        assert_eq!(sturm_count(&p, &iv(-2, 2)).unwrap(), 2);
        assert_eq!(sturm_count(&h3(), &iv(-10, 0)).unwrap(), 2);
    }

    #[test]
    fn sturm_count_errors() {
        assert!(matches!(
            sturm_count(&RationalPoly::zero(), &iv(-1, 1)),
            Err(Error::ZeroPolynomial)
        ));
        let p = RationalPoly::from_i64s(&[-1, 0, 1]);
        assert!(matches!(sturm_count(&p, &iv(-1, 2)), Err(Error::EndpointIsRoot(_))));
        assert!(Interval::new(q(1, 1), q(1, 1)).is_err());
    }

    #[test]
    fn sturm_counts_distinct_roots_of_repeated_factors() {
        // (x-1)^3 (x+2)
        let p = &(&(&RationalPoly::from_i64s(&[-1, 1]) * &RationalPoly::from_i64s(&[-1, 1]))
            * &RationalPoly::from_i64s(&[-1, 1]))
            * &RationalPoly::from_i64s(&[2, 1]);
        assert_eq!(sturm_count(&p, &iv(-5, 5)).unwrap(), 2);
    }

    #[test]
    fn isolation_examples() {
        let h2 = RationalPoly::from_i64s(&[2, 1]);
        let w = q(1, 100);
        let ivs = isolate_real_roots(&h2, &w).unwrap();
        assert_eq!(ivs.len(), 1);
        assert!(ivs[0].width() <= w);
        // The split point may land on the root itself only through the
        // perturbation rule, which never picks a root.
        assert!(ivs[0].lo < -2 && -2 < ivs[0].hi);

        let w = q(1, 1000);
        let ivs = isolate_real_roots(&h3(), &w).unwrap();
        assert_eq!(ivs.len(), 2);
        // -4 - 2 sqrt 2 = -6.828..., -4 + 2 sqrt 2 = -1.171...
        let r1 = -4.0 - 2.0 * 2f64.sqrt();
        let r2 = -4.0 + 2.0 * 2f64.sqrt();
        assert!(ivs[0].lo.to_f64() < r1 && r1 < ivs[0].hi.to_f64());
        assert!(ivs[1].lo.to_f64() < r2 && r2 < ivs[1].hi.to_f64());
        assert!(ivs.iter().all(|i| i.width() <= w));

        let p = RationalPoly::from_i64s(&[1, 0, 1]);
        assert!(isolate_real_roots(&p, &q(1, 2)).unwrap().is_empty());
    }

    #[test]
    fn isolation_handles_rational_roots_on_split_points() {
        // roots at 0, +-1, 1/2: midpoints of symmetric brackets are roots
        let p = &(&RationalPoly::from_i64s(&[0, -1, 0, 1]) * &RationalPoly::from_i64s(&[-1, 2]))
            * &RationalPoly::one();
        let ivs = isolate_real_roots(&p, &q(1, 64)).unwrap();
        assert_eq!(ivs.len(), 4);
        for (iv, r) in ivs.iter().zip([q(-1, 1), q(0, 1), q(1, 2), q(1, 1)]) {
            assert!(iv.contains(&r), "{iv} should contain {r}");
        }
    }

    #[test]
    fn refinement() {
        let p = RationalPoly::from_i64s(&[-2, 0, 1]);
        let ivs = isolate_real_roots(&p, &q(1, 2)).unwrap();
        let w = Rational::from((1, Integer::from(Integer::u_pow_u(2, 200))));
        let fine = refine_root(&p, &ivs[1], &w).unwrap();
        assert!(fine.width() <= w);
        assert!(Rational::from(fine.lo.square_ref()) < 2 && Rational::from(fine.hi.square_ref()) > 2);
        // exact rational root hit by a midpoint
        let p = RationalPoly::from_i64s(&[-1, 2]);
        let fine = refine_root(&p, &iv(0, 1), &q(1, 1000)).unwrap();
        assert!(fine.contains(&q(1, 2)));
        assert!(refine_root(&p, &iv(1, 2), &q(1, 10)).is_err());
    }

    #[test]
    fn nonreal_root_counts() {
        assert_eq!(count_nonreal_roots(&RationalPoly::from_i64s(&[1, 0, 1])).unwrap(), 2);
        assert_eq!(count_nonreal_roots(&RationalPoly::from_i64s(&[0, -1, 0, 1])).unwrap(), 0);
        assert_eq!(count_nonreal_roots(&h3()).unwrap(), 0);
        // (x^2+1)^2 (x-3)^3
        let a = RationalPoly::from_i64s(&[1, 0, 1]);
        let b = RationalPoly::from_i64s(&[-3, 1]);
        let p = &(&(&a * &a) * &(&b * &b)) * &b;
        assert_eq!(count_nonreal_roots(&p).unwrap(), 4);
        assert!(matches!(count_nonreal_roots(&RationalPoly::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn squarefree_parts() {
        let a = RationalPoly::from_i64s(&[1, 1]);
        let b = RationalPoly::from_i64s(&[-2, 1]);
        let p = &(&(&a * &a) * &b).scale(&q(3, 1)) * &RationalPoly::one();
        let parts = squarefree_decomposition(&p).unwrap();
        assert_eq!(parts, vec![(b, 1), (a, 2)]);
    }

    #[test]
    fn division_and_gcd() {
        let a = RationalPoly::from_i64s(&[-1, 0, 1]);
        let b = RationalPoly::from_i64s(&[1, 1]);
        assert_eq!(a.exact_div(&b).unwrap(), RationalPoly::from_i64s(&[-1, 1]));
        assert!(matches!(a.exact_div(&RationalPoly::from_i64s(&[2, 1])), Err(Error::NonexactDivision)));
        assert_eq!(a.gcd(&RationalPoly::from_i64s(&[2, 2])), b);
    }

    #[test]
    fn display() {
        let p = RationalPoly::from_coeffs(vec![q(-1, 8), q(0, 1), q(1, 2)]);
        assert_eq!(p.to_string(), "1/2*x^2 - 1/8");
        assert_eq!(RationalPoly::from_i64s(&[8, 8, 1]).display_with("nu").to_string(), "nu^2 + 8*nu + 8");
    }

    #[test]
    fn determinant_small() {
        let m = vec![
            vec![q(0, 1), q(2, 1), q(1, 1)],
            vec![q(1, 2), q(1, 1), q(0, 1)],
            vec![q(3, 1), q(0, 1), q(1, 1)],
        ];
        // cofactor expansion: 0*(1) - 2*(1/2 - 0) + 1*(0 - 3) = -4
        assert_eq!(determinant(m), q(-4, 1));
        assert_eq!(determinant(vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]]), 0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rational() -> impl Strategy<Value = Rational> {
            (-30i64..30, 1i64..12).prop_map(|(a, b)| Rational::from((a, b)))
        }

        fn poly() -> impl Strategy<Value = RationalPoly> {
            prop::collection::vec(small_rational(), 0..7).prop_map(RationalPoly::from_coeffs)
        }

        fn canonical(p: &RationalPoly) -> bool {
            p.coeffs().last().is_none_or(|c| *c != 0)
                && p.coeffs().iter().all(|c| *c.denom() > 0 && c.numer().clone().gcd(c.denom()) == 1)
        }

        proptest! {
            #[test]
            fn arithmetic_stays_canonical(a in poly(), b in poly()) {
                prop_assert!(canonical(&(&a + &b)));
                prop_assert!(canonical(&(&a - &b)));
                prop_assert!(canonical(&(&a * &b)));
                prop_assert!(canonical(&a.derivative()));
                if !b.is_zero() {
                    let (qq, r) = a.div_rem(&b).unwrap();
                    prop_assert!(canonical(&qq) && canonical(&r));
                    prop_assert_eq!(&(&qq * &b) + &r, a.clone());
                }
                prop_assert!((&a - &a).is_zero());
            }

            #[test]
            fn sturm_count_is_additive(p in poly(), cut in -20i64..20) {
                prop_assume!(p.degree().unwrap_or(0) > 0);
                let bound = root_bound(&p).unwrap();
                let cut = Rational::from((cut, 7));
                prop_assume!(p.sign_at(&cut) != Ordering::Equal);
                prop_assume!(-bound.clone() < cut && cut < bound);
                let s = SturmSequence::new(&p).unwrap();
                let whole = s.count_in(&Interval::new(-bound.clone(), bound.clone()).unwrap()).unwrap();
                let left = s.count_in(&Interval::new(-bound.clone(), cut.clone()).unwrap()).unwrap();
                let right = s.count_in(&Interval::new(cut, bound).unwrap()).unwrap();
                prop_assert_eq!(whole, left + right);
                prop_assert_eq!(whole, s.count_all());
            }

            #[test]
            fn nonreal_count_is_even(p in poly()) {
                prop_assume!(!p.is_zero());
                prop_assert_eq!(count_nonreal_roots(&p).unwrap() % 2, 0);
            }
        }
    }
}
