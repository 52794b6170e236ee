//! Survey tools built on top of the search: an independent brute-force
//! oracle, explicit approximations of real numbers by quotients, bit-length
//! censuses, and counts of the provably unrepresentable windows.

use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::automaton::{Shape, Target};
use crate::error::{Error, Result};
use crate::numerals::{self, Base, DigitString, Natural};
use crate::search::{self, Budget, Representation};

/// Every shape-valid `B` with at most `max_digits_b` digits for which
/// `p*B/q` is a shape-valid integer, sorted by `B`. Uses nothing but digit
/// strings and exact arithmetic, so it can check the automaton.
pub fn brute_force_solutions(target: &Target, max_digits_b: usize) -> Vec<Representation> {
    let (base, shape) = (target.base(), target.shape());
    let (p, q) = target.as_requested();
    let (p, q) = (BigUint::from(p), BigUint::from(q));
    let mut out = Vec::new();
    for len in 1..=max_digits_b {
        for b in shaped_numbers(shape, base, len) {
            let (a, rem) = (&b * &p).div_rem(&q);
            if rem.is_zero() && shape.accepts_value(&a, base) {
                out.push(Representation {
                    numerator: a,
                    denominator: b,
                    base,
                    shape,
                });
            }
        }
    }
    out
}

/// All numbers of the shape with exactly `len` digits, in increasing order.
pub fn shaped_numbers(shape: Shape, base: Base, len: usize) -> Vec<Natural> {
    let k = base.get() as u8;
    let half = len / 2;
    let middles: Vec<Option<u8>> = if len % 2 == 1 {
        shape.middle_digits(base).into_iter().map(Some).collect()
    } else {
        vec![None]
    };
    let mut out = Vec::new();
    // Odometer over the high half, most significant digit first.
    let mut high = vec![0u8; half];
    if let Some(first) = high.first_mut() {
        *first = 1;
    }
    loop {
        for &mid in &middles {
            if half == 0 && mid.is_none_or(|d| d == 0) {
                continue;
            }
            let mut digits = high.clone();
            digits.extend(mid);
            digits.extend(high.iter().rev().map(|&d| shape.mirror(d, base)));
            let w = DigitString::new(digits, base).expect("digits below base");
            out.push(numerals::from_digits(&w).expect("non-empty"));
        }
        // Advance the odometer; stop after the last half.
        let mut i = half;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if high[i] + 1 < k {
                high[i] += 1;
                break;
            }
            high[i] = 0;
        }
        if half == 0 {
            return out;
        }
    }
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.3927"` into
/// an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidTarget(format!("{s:?} is not a rational or decimal number"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
    if !frac.chars().all(|c| c.is_ascii_digit()) || (whole.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
    let denom = BigInt::from(10u32).pow(frac.len() as u32);
    Ok(BigRational::new(numer, denom))
}

/// An explicit pair `(A, B)` of the shape approximating `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximant {
    pub alpha: BigRational,
    pub n: u32,
    /// The shift with `1/2 < 2^k * alpha' <= 1`, where `alpha'` is `alpha`
    /// or its reciprocal, whichever is at most 1.
    pub k: u32,
    /// The construction ran on `1/alpha` and the pair was flipped back.
    pub reciprocal: bool,
    /// `A / B` approximates `alpha`.
    pub numerator: Natural,
    pub denominator: Natural,
    /// `|A/B - alpha|`.
    pub error: BigRational,
    /// The error of the construction on `alpha'` itself.
    pub reduced_error: BigRational,
    /// Proven bound on `reduced_error`, when the construction has one.
    pub error_bound: Option<BigRational>,
}

impl Approximant {
    /// `floor(-log2(error))` rounded down to whole bits, or `None` for an
    /// exact hit.
    pub fn error_bits(&self) -> Option<u64> {
        if self.error.is_zero() {
            return None;
        }
        let (num, den) = (self.error.numer().bits(), self.error.denom().bits());
        Some(den.saturating_sub(num))
    }
}

fn pow2(e: i64) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    if e >= 0 {
        num_traits::pow(two, e as usize)
    } else {
        num_traits::pow(two, (-e) as usize).recip()
    }
}

fn floor_natural(x: &BigRational) -> Natural {
    x.floor().to_integer().to_biguint().expect("non-negative")
}

/// Reduces `alpha` to `alpha' <= 1` and finds `k` and `beta = 2^k alpha'`.
fn bracket(alpha: &BigRational) -> Result<(BigRational, bool, u32, BigRational)> {
    if !alpha.is_positive() {
        return Err(Error::Precondition(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    let reciprocal = *alpha > BigRational::one();
    let reduced = if reciprocal {
        alpha.recip()
    } else {
        alpha.clone()
    };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut beta = reduced.clone();
    let mut k = 0;
    while beta <= half {
        beta *= BigInt::from(2);
        k += 1;
    }
    Ok((reduced, reciprocal, k, beta))
}

fn bits_of(n: &Natural) -> DigitString {
    numerals::to_digits(n, Base::BINARY).expect("positive")
}

fn value(w: &DigitString) -> Natural {
    numerals::from_digits(w).expect("non-empty")
}

#[allow(clippy::too_many_arguments)]
fn finish(
    alpha: &BigRational,
    n: u32,
    k: u32,
    reciprocal: bool,
    reduced: &BigRational,
    a: Natural,
    b: Natural,
    error_bound: Option<BigRational>,
) -> Approximant {
    let reduced_error = (BigRational::new(a.clone().into(), b.clone().into()) - reduced).abs();
    let (numerator, denominator) = if reciprocal { (b, a) } else { (a, b) };
    let error =
        (BigRational::new(numerator.clone().into(), denominator.clone().into()) - alpha).abs();
    Approximant {
        alpha: alpha.clone(),
        n,
        k,
        reciprocal,
        numerator,
        denominator,
        error,
        reduced_error,
        error_bound,
    }
}

/// `gamma = floor(2^n beta)` as an `n`-bit number. When `beta = 1` the floor
/// would need `n + 1` bits, so it is clamped to `2^n - 1`.
fn leading_bits(beta: &BigRational, n: u32) -> Natural {
    let gamma = floor_natural(&(beta * pow2(n as i64)));
    let cap = (Natural::one() << n) - 1u32;
    gamma.min(cap)
}

/// Binary palindromes `A = [(gamma) (gamma)^R]`, `B = 2^(2n+k) + 1` with
/// `|A/B - alpha'| < 2^(-n-k) + 2^(-2n-2k)`.
pub fn approx_palindrome_quotient(alpha: &BigRational, n: u32) -> Result<Approximant> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let (reduced, reciprocal, k, beta) = bracket(alpha)?;
    let gamma = bits_of(&leading_bits(&beta, n));
    let a = value(&gamma.concat(&gamma.reversed()));
    let b = (Natural::one() << (2 * n + k)) + 1u32;
    let bound = pow2(-(n as i64) - k as i64) + pow2(-2 * n as i64 - 2 * k as i64);
    Ok(finish(alpha, n, k, reciprocal, &reduced, a, b, Some(bound)))
}

/// Binary antipalindromes approximating `alpha`. For odd `k`:
/// `A = [(gamma) comp((gamma)^R)]` with `gamma = floor(2^n beta)` and
/// `B = [1 0^c 1^c 0]`, `c = n + (k-1)/2`. For even `k` the roles swap:
/// `gamma = floor(2^n / beta)`, `B = [(gamma) comp((gamma)^R)]` and
/// `A = [1 0^c 1^c 0]` with `c = n - k/2`, which needs `n >= k/2`.
/// There is no closed error bound; the measured error is reported.
pub fn approx_antipalindrome_quotient(alpha: &BigRational, n: u32) -> Result<Approximant> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let (reduced, reciprocal, k, beta) = bracket(alpha)?;
    let framed = |c: u32| {
        let c = c as usize;
        let s = format!("1{}{}0", "0".repeat(c), "1".repeat(c));
        value(&DigitString::parse(&s, Base::BINARY).expect("binary"))
    };
    let mirrored = |gamma: &Natural| {
        let g = bits_of(gamma);
        value(&g.concat(&numerals::reverse_complement(&g)))
    };
    let (a, b) = if k % 2 == 1 {
        (mirrored(&leading_bits(&beta, n)), framed(n + (k - 1) / 2))
    } else {
        if n < k / 2 {
            return Err(Error::Precondition(format!(
                "n = {n} is too small for k = {k}; need n >= {}",
                k / 2
            )));
        }
        let gamma = floor_natural(&(pow2(n as i64) / &beta));
        (framed(n - k / 2), mirrored(&gamma))
    };
    Ok(finish(alpha, n, k, reciprocal, &reduced, a, b, None))
}

/// Number of representable `N` of each bit length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub bits: u32,
    pub count: u64,
    /// `N` whose search ran out of budget; never counted.
    pub undecided: Vec<u64>,
}

/// Representability of one `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Representable,
    NotRepresentable,
    Undecided,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Representable => "representable",
            Verdict::NotRepresentable => "unrepresentable",
            Verdict::Undecided => "undecided",
        }
    }
}

/// Decides every integer in `range`, turning budget exhaustion into
/// [`Verdict::Undecided`].
pub fn sweep(
    shape: Shape,
    base: Base,
    range: RangeInclusive<u64>,
    budget: Budget,
) -> Result<Vec<(u64, Verdict)>> {
    let mut out = Vec::new();
    for n in range {
        let target = Target::integer(n, base, shape)?;
        let verdict = match search::decide(&target, budget) {
            Ok(d) if d.representable => Verdict::Representable,
            Ok(_) => Verdict::NotRepresentable,
            Err(Error::BudgetExhausted { .. }) => Verdict::Undecided,
            Err(e) => return Err(e),
        };
        out.push((n, verdict));
    }
    Ok(out)
}

/// For each `i <= max_bits`, how many `N` in `[2^(i-1), 2^i)` are binary
/// quotients of the shape.
pub fn census(shape: Shape, max_bits: u32, budget: Budget) -> Result<Vec<CensusRow>> {
    if max_bits == 0 || max_bits > 31 {
        return Err(Error::Precondition(format!(
            "census needs 1 <= max_bits <= 31, got {max_bits}"
        )));
    }
    let mut rows = Vec::new();
    for bits in 1..=max_bits {
        let range = (1u64 << (bits - 1))..=((1u64 << bits) - 1);
        let mut row = CensusRow {
            bits,
            count: 0,
            undecided: Vec::new(),
        };
        for (n, verdict) in sweep(shape, Base::BINARY, range, budget)? {
            match verdict {
                Verdict::Representable => row.count += 1,
                Verdict::NotRepresentable => {}
                Verdict::Undecided => row.undecided.push(n),
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// `[x]` bounds for which the quotient in [`apal_divisibility_witness`] is
/// guaranteed to have `2j` bits: `2^(j-1) <= [x] <= (2^(j+1) - 5)/3`.
pub fn divisibility_bracket(j: u32) -> (u64, u64) {
    (1 << (j - 1), ((1u64 << (j + 1)) - 5) / 3)
}

/// For a `j`-bit `x` starting with 1 and `y = x^R`, the antipalindrome
/// `A = [x y comp(x) comp(y)]` is a multiple of `B = [(10)^j]`. Rejects `x`
/// whose quotient `A/B` does not have exactly `2j` bits.
pub fn apal_divisibility_witness(x: &DigitString) -> Result<Representation> {
    let j = x.len();
    if x.base() != Base::BINARY || j < 2 || !x.is_canonical() {
        return Err(Error::Precondition(format!(
            "x must be a binary string of at least 2 bits starting with 1, got {x}"
        )));
    }
    let y = x.reversed();
    let a = value(
        &x.concat(&y)
            .concat(&x.complemented())
            .concat(&y.complemented()),
    );
    let b = value(&DigitString::parse(&"10".repeat(j), Base::BINARY).expect("binary"));
    let (quotient, rem) = a.div_rem(&b);
    if !rem.is_zero() || quotient.bits() != 2 * j as u64 {
        return Err(Error::Precondition(format!(
            "x = {x} gives quotient {quotient}, which does not have {} bits",
            2 * j
        )));
    }
    Ok(Representation {
        numerator: a,
        denominator: b,
        base: Base::BINARY,
        shape: Shape::Antipalindrome,
    })
}

/// Number of members below `x` of the windows proven unrepresentable:
/// `N = 1 (mod 8)` with `5*2^j < N < 6*2^j`, `j >= 3`, for palindromes, and
/// `N = 1 (mod 4)` with `40*4^n < N < 48*4^n`, `n >= 0`, for
/// antipalindromes.
pub fn window_count(shape: Shape, x: u64) -> u64 {
    let (modulus, windows): (u64, Vec<(u64, u64)>) = match shape {
        Shape::Palindrome => (8, (3..60).map(|j| (5u64 << j, 6u64 << j)).collect()),
        Shape::Antipalindrome => (
            4,
            (0..29)
                .map(|n| (40u64 << (2 * n), 48u64 << (2 * n)))
                .collect(),
        ),
    };
    // Both window ends are multiples of the modulus.
    windows
        .into_iter()
        .take_while(|&(lo, _)| lo < x)
        .map(|(lo, hi)| {
            let end = hi.min(x);
            // N = lo + 1 + modulus * t < end
            if end <= lo + 1 {
                0
            } else {
                (end - lo - 2) / modulus + 1
            }
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityRow {
    pub x: u64,
    pub count: u64,
    pub ratio: f64,
}

/// `window_count` at the window starts `5*2^j` (palindromes) or `40*4^n`
/// (antipalindromes) up to `x_max`; the ratios tend to 1/40 and 1/60.
pub fn lower_density_tabulation(shape: Shape, x_max: u64) -> Vec<DensityRow> {
    let checkpoints: Vec<u64> = match shape {
        Shape::Palindrome => (3..60).map(|j| 5u64 << j).collect(),
        Shape::Antipalindrome => (0..29).map(|n| 40u64 << (2 * n)).collect(),
    };
    checkpoints
        .into_iter()
        .take_while(|&x| x <= x_max)
        .map(|x| {
            let count = window_count(shape, x);
            DensityRow {
                x,
                count,
                ratio: count as f64 / x as f64,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pal(n: u64) -> Target {
        Target::integer(n, Base::BINARY, Shape::Palindrome).unwrap()
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn shaped_numbers_match_predicates() {
        for shape in [Shape::Palindrome, Shape::Antipalindrome] {
            for base in [Base::BINARY, Base::new(3).unwrap()] {
                let listed: Vec<Natural> = (1..=7)
                    .flat_map(|len| shaped_numbers(shape, base, len))
                    .collect();
                let direct: Vec<Natural> = (1u32..base.get().pow(7))
                    .map(Natural::from)
                    .filter(|n| shape.accepts_value(n, base))
                    .collect();
                assert_eq!(listed, direct, "{shape} base {base}");
            }
        }
    }

    #[test]
    fn brute_force_examples() {
        let hits = brute_force_solutions(&pal(11), 8);
        assert!(hits.iter().any(|r| r.numerator == Natural::from(33u32)));
        assert!(brute_force_solutions(&pal(35), 20).is_empty());
        let five = Target::integer(5, Base::BINARY, Shape::Antipalindrome).unwrap();
        let hits = brute_force_solutions(&five, 12);
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].numerator, Natural::from(10u32));
        assert_eq!(hits[0].denominator, Natural::from(2u32));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("5").unwrap(), rat(5, 1));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn palindrome_approximation_examples() {
        let third = approx_palindrome_quotient(&rat(1, 3), 20).unwrap();
        assert_eq!(third.k, 1);
        assert!(third.reduced_error < *third.error_bound.as_ref().unwrap());
        assert!(Shape::Palindrome.accepts_value(&third.numerator, Base::BINARY));
        assert!(Shape::Palindrome.accepts_value(&third.denominator, Base::BINARY));
        for n in 1..8 {
            let one = approx_palindrome_quotient(&rat(1, 1), n).unwrap();
            assert!(one.reduced_error < one.error_bound.unwrap(), "n = {n}");
        }
        let big = approx_palindrome_quotient(&rat(7, 2), 12).unwrap();
        assert!(big.reciprocal);
        assert!(big.numerator > big.denominator);
        assert!(approx_palindrome_quotient(&rat(0, 1), 5).is_err());
    }

    #[test]
    fn antipalindrome_approximation_examples() {
        for (alpha, n) in [
            (rat(1, 3), 20),
            (rat(5, 1), 20),
            (rat(1, 1), 20),
            (rat(3, 16), 20),
        ] {
            let r = approx_antipalindrome_quotient(&alpha, n).unwrap();
            assert!(Shape::Antipalindrome.accepts_value(&r.numerator, Base::BINARY));
            assert!(Shape::Antipalindrome.accepts_value(&r.denominator, Base::BINARY));
            assert!(r.reduced_error < pow2(-15), "alpha = {alpha}");
        }
        assert!(approx_antipalindrome_quotient(&rat(1, 64), 2).is_err());
    }

    #[test]
    fn census_small_rows() {
        let rows = census(Shape::Palindrome, 6, Budget::default()).unwrap();
        let counts: Vec<u64> = rows.iter().map(|r| r.count).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 5, 10]);
        let rows = census(Shape::Antipalindrome, 2, Budget::default()).unwrap();
        assert_eq!(rows[1].count, 0);
        assert!(census(Shape::Palindrome, 0, Budget::default()).is_err());
    }

    #[test]
    fn divisibility_witness_examples() {
        let r = apal_divisibility_witness(&"10".parse().unwrap()).unwrap();
        assert_eq!(r.numerator, Natural::from(150u32));
        assert_eq!(r.denominator, Natural::from(10u32));
        let r = apal_divisibility_witness(&"100".parse().unwrap()).unwrap();
        assert_eq!(r.numerator_digits().to_string(), "100001011110");
        assert_eq!(r.denominator, Natural::from(42u32));
        assert!(apal_divisibility_witness(&"11".parse().unwrap()).is_err());
        assert!(apal_divisibility_witness(&"01".parse().unwrap()).is_err());
        assert_eq!(divisibility_bracket(2), (2, 1));
        assert_eq!(divisibility_bracket(4), (8, 9));
    }

    #[test]
    fn window_counts() {
        assert_eq!(window_count(Shape::Palindrome, 5 << 10), 127);
        assert_eq!(window_count(Shape::Antipalindrome, 40 * 4u64.pow(4)), 170);
        assert_eq!(window_count(Shape::Palindrome, 40), 0);
        assert_eq!(window_count(Shape::Antipalindrome, 30), 0);
        let rows = lower_density_tabulation(Shape::Palindrome, 5 << 20);
        let last = rows.last().unwrap();
        assert!((last.ratio - 1.0 / 40.0).abs() < 1e-4);
        let rows = lower_density_tabulation(Shape::Antipalindrome, 40 << 20);
        assert!((rows.last().unwrap().ratio - 1.0 / 60.0).abs() < 1e-4);
    }
}
