//! Closed-form bounds on cancellative family sizes.
//!
//! Combinatorial bounds (binomial ratios, partite products, packing
//! ceilings) are computed in exact integer arithmetic so dominance tests
//! carry no floating error; the analytic envelopes use f64 with at least
//! 50 significant bits.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundsError {
    BadShape(String),
    /// n is too small for the bound's proof regime.
    OutOfRegime { n: u64, min_exclusive: u64 },
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::BadShape(s) => write!(f, "{s}"),
            BoundsError::OutOfRegime { n, min_exclusive } => {
                write!(f, "n = {n} is outside the regime n > {min_exclusive}")
            }
        }
    }
}

impl std::error::Error for BoundsError {}

/// Non-negative rational in lowest terms. Comparisons cross-multiply in
/// u128, which is exact for every bound in the supported range (binomials
/// up to C(64,32)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    num: u128,
    den: u128,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub fn new(num: u128, den: u128) -> Rational {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Rational { num: num / g, den: den / g }
    }

    pub fn integer(v: u128) -> Rational {
        Rational { num: v, den: 1 }
    }

    pub fn num(&self) -> u128 {
        self.num
    }

    pub fn den(&self) -> u128 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let left = self.num.checked_mul(other.den).expect("rational comparison overflow");
        let right = other.num.checked_mul(self.den).expect("rational comparison overflow");
        left.cmp(&right)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .expect("binomial overflow beyond supported range")
            / (i as u128 + 1);
    }
    acc
}

/// 9 sqrt(n) (5/4)^n: the general upper envelope for 2-cancellative codes.
pub fn bound_c_n2_upper(n: u64) -> f64 {
    9.0 * (n as f64).sqrt() * 1.25f64.powi(n as i32)
}

/// Upper bound for 2k-uniform 2-cancellative families: C(n,k) / (C(2k,k)/2).
pub fn bound_uniform_even(n: u64, k: u64) -> Rational {
    assert!(k >= 1);
    Rational::new(2 * binomial(n, k), binomial(2 * k, k))
}

/// Odd-uniformity analogue via the (n+1)-vertex extension:
/// C(n+1,k+1) / (C(2k+2,k+1)/2) bounds (2k+1)-uniform families.
pub fn bound_uniform_odd(n: u64, k: u64) -> Rational {
    assert!(k >= 1);
    Rational::new(2 * binomial(n + 1, k + 1), binomial(2 * k + 2, k + 1))
}

/// Per-level coefficient for the recursive t-cancellative envelope,
/// alpha_2 = 9 and each later level multiplies in the bracket evaluated at
/// the edge of its validity region n = 2(t+2)^2 + 1.
fn alpha(t: u64) -> f64 {
    let mut a = 9.0f64;
    for s in 3..=t {
        let edge = (2 * (s + 2) * (s + 2) + 1) as f64;
        a *= 3.0 / ((s + 2) as f64).sqrt() + (s + 2) as f64 / edge.sqrt();
    }
    a
}

/// Recursive envelope for t-cancellative codes:
/// alpha_{t-1} (3/sqrt(t+2) + (t+2)/sqrt(n)) n^{(t-1)/2} ((t+3)/(t+2))^n,
/// valid for n > 2(t+2)^2; t = 2 delegates to the square-root envelope.
pub fn bound_tcanc_recursive(n: u64, t: u64) -> Result<f64, BoundsError> {
    if t < 2 {
        return Err(BoundsError::BadShape(format!("recursive bound needs t >= 2, got {t}")));
    }
    if t == 2 {
        return Ok(bound_c_n2_upper(n));
    }
    let min_exclusive = 2 * (t + 2) * (t + 2);
    if n <= min_exclusive {
        return Err(BoundsError::OutOfRegime { n, min_exclusive });
    }
    let tf = t as f64;
    let nf = n as f64;
    let bracket = 3.0 / (tf + 2.0).sqrt() + (tf + 2.0) / nf.sqrt();
    let growth = ((tf + 3.0) / (tf + 2.0)).powf(nf);
    Ok(alpha(t - 1) * bracket * nf.powf((tf - 1.0) / 2.0) * growth)
}

/// The base of the exponential envelope, (t+3)/(t+2).
pub fn tcanc_growth_base(t: u64) -> f64 {
    (t as f64 + 3.0) / (t as f64 + 2.0)
}

/// 1 + floor(t/2) + C-value: turns an upper bound on the cover-free
/// quantity at strength floor(t/2) into one on t-cancellative codes.
pub fn bound_eq_tstar(t: u64, c_value: u64) -> u64 {
    1 + t / 2 + c_value
}

/// Product of floors: size of the balanced complete r-partite family.
pub fn p_r(n: u64, r: u64) -> Result<u128, BoundsError> {
    if r < 2 || n < r {
        return Err(BoundsError::BadShape(format!("p_r needs n >= r >= 2, got n={n} r={r}")));
    }
    Ok((0..r).map(|i| ((n + i) / r) as u128).product())
}

/// Truncated product for the nonsingular-density constant with a tail
/// error certificate.
#[derive(Debug, Clone, Copy)]
pub struct C0 {
    pub value: f64,
    pub error_bound: f64,
    pub factors: u32,
}

/// prod_{k>=1} (1 - 2^-k), truncated once the certified tail error drops
/// below `tolerance`. The remaining product lies in [1 - 2^{-K}, 1], so
/// the truncation overestimates by at most value * 2^{-K+1}.
pub fn tolhuizen_c0(tolerance: f64) -> C0 {
    assert!(tolerance > 0.0);
    let mut value = 1.0f64;
    let mut k = 0u32;
    loop {
        k += 1;
        value *= 1.0 - 0.5f64.powi(k as i32);
        let error_bound = value * 0.5f64.powi(k as i32 - 1);
        if error_bound < tolerance || k >= 200 {
            return C0 { value, error_bound, factors: k };
        }
    }
}

/// floor(C(n,2) / C(r,2)): the pair-counting ceiling for (n,r,2)-packings.
pub fn packing_ceiling(n: u64, r: u64) -> Result<u128, BoundsError> {
    if r < 2 || n < r {
        return Err(BoundsError::BadShape(format!(
            "packing ceiling needs n >= r >= 2, got n={n} r={r}"
        )));
    }
    Ok(binomial(n, 2) / binomial(r, 2))
}

/// One evaluated bound with its parameters, printable as text or JSON.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BoundReport {
    pub quantity: String,
    pub value: String,
    pub value_f64: f64,
    pub params: BTreeMap<String, String>,
    pub source: String,
}

impl BoundReport {
    pub fn new(
        quantity: impl Into<String>,
        value: String,
        value_f64: f64,
        source: impl Into<String>,
        params: &[(&str, String)],
    ) -> BoundReport {
        BoundReport {
            quantity: quantity.into(),
            value,
            value_f64,
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            source: source.into(),
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> =
            self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(
            f,
            "{:<28} {:>18}   [{}] ({})",
            self.quantity,
            self.value,
            params.join(", "),
            self.source
        )
    }
}
