//! Base-k digit strings and the shape predicates everything else is checked against.
//!
//! Digits are stored most-significant first. [`from_digits`] tolerates leading
//! zeros so that concatenations with `0^i` blocks evaluate correctly, while
//! [`to_digits`] always produces the canonical form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Arbitrary-precision natural number.
pub type Natural = BigUint;

/// A radix `k` with `2 <= k <= 256`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Base(u32);

impl Base {
    pub const BINARY: Base = Base(2);
    pub const DECIMAL: Base = Base(10);

    pub fn new(k: u32) -> Result<Self> {
        if (2..=256).contains(&k) {
            Ok(Base(k))
        } else {
            Err(Error::InvalidBase(k))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// The complementary digit `k - 1 - d`.
    #[inline]
    pub fn complement(self, d: u8) -> u8 {
        (self.0 - 1 - d as u32) as u8
    }

    /// The digit equal to its own complement, which exists only for odd bases.
    pub fn self_complementary_digit(self) -> Option<u8> {
        (self.0 % 2 == 1).then(|| ((self.0 - 1) / 2) as u8)
    }
}

impl Default for Base {
    fn default() -> Self {
        Base::BINARY
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A sequence of base-k digits, most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitString {
    digits: Vec<u8>,
    base: Base,
}

impl DigitString {
    /// Builds a digit string, checking every digit against the base.
    /// Leading zeros and the empty string are allowed here.
    pub fn new(digits: Vec<u8>, base: Base) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d as u32 >= base.get()) {
            return Err(Error::DigitOutOfRange {
                digit: d as u32,
                base: base.get(),
            });
        }
        Ok(DigitString { digits, base })
    }

    pub(crate) fn from_trusted(digits: Vec<u8>, base: Base) -> Self {
        debug_assert!(digits.iter().all(|&d| (d as u32) < base.get()));
        DigitString { digits, base }
    }

    /// Parses digits written as `0-9a-z` characters.
    pub fn parse(s: &str, base: Base) -> Result<Self> {
        let digits = s
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .ok_or_else(|| Error::InvalidTarget(format!("{c:?} is not a digit character")))
            })
            .map(|d| d.map(|d| d as u8))
            .collect::<Result<Vec<_>>>()?;
        DigitString::new(digits, base)
    }

    pub fn empty(base: Base) -> Self {
        DigitString {
            digits: Vec::new(),
            base,
        }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<u8> {
        self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Canonical means nonempty with a nonzero leading digit.
    pub fn is_canonical(&self) -> bool {
        self.digits.first().is_some_and(|&d| d != 0)
    }

    pub fn reversed(&self) -> DigitString {
        let mut digits = self.digits.clone();
        digits.reverse();
        DigitString::from_trusted(digits, self.base)
    }

    /// Digitwise complement `d -> k - 1 - d`, without reversal.
    pub fn complemented(&self) -> DigitString {
        let digits = self
            .digits
            .iter()
            .map(|&d| self.base.complement(d))
            .collect();
        DigitString::from_trusted(digits, self.base)
    }

    pub fn concat(&self, other: &DigitString) -> DigitString {
        assert_eq!(self.base, other.base, "cannot concatenate across bases");
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        DigitString::from_trusted(digits, self.base)
    }

    /// The string repeated `n` times.
    pub fn repeat(&self, n: usize) -> DigitString {
        DigitString::from_trusted(self.digits.repeat(n), self.base)
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return f.write_str("ε");
        }
        let wide = self.base.get() > 36;
        for (i, &d) in self.digits.iter().enumerate() {
            if wide {
                if i > 0 {
                    f.write_str(".")?;
                }
                write!(f, "{d}")?;
            } else {
                let c = char::from_digit(d as u32, 36).expect("digit below 36");
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for DigitString {
    type Err = Error;

    /// Parses a binary string.
    fn from_str(s: &str) -> Result<Self> {
        DigitString::parse(s, Base::BINARY)
    }
}

/// The canonical base-k representation `(n)_k`.
pub fn to_digits(n: &Natural, base: Base) -> Result<DigitString> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let digits = n.to_radix_be(base.get());
    Ok(DigitString::from_trusted(digits, base))
}

/// Convenience wrapper of [`to_digits`] for machine integers.
pub fn to_digits_u64(n: u64, base: Base) -> Result<DigitString> {
    to_digits(&Natural::from(n), base)
}

/// The positional value `[w]_k`; leading zeros are ignored.
pub fn from_digits(w: &DigitString) -> Result<Natural> {
    if w.is_empty() {
        return Err(Error::EmptyDigits);
    }
    Ok(Natural::from_radix_be(&w.digits, w.base.get()).expect("digits validated on construction"))
}

pub fn is_palindrome(w: &DigitString) -> bool {
    if w.is_empty() {
        return false;
    }
    let d = &w.digits;
    d.iter().eq(d.iter().rev())
}

/// Reversal of `w` with each digit `a` replaced by `k - 1 - a`.
pub fn reverse_complement(w: &DigitString) -> DigitString {
    let digits = w
        .digits
        .iter()
        .rev()
        .map(|&d| w.base.complement(d))
        .collect();
    DigitString::from_trusted(digits, w.base)
}

/// True iff the canonical string `w` equals its reverse complement. In odd
/// bases an odd-length string qualifies when its middle digit is `(k-1)/2`;
/// in even bases only even lengths can qualify.
pub fn is_antipalindrome(w: &DigitString) -> bool {
    if !w.is_canonical() {
        return false;
    }
    let d = &w.digits;
    d.iter()
        .zip(d.iter().rev())
        .all(|(&x, &y)| w.base.complement(x) == y)
}

/// Hamming distance between `w` and its reversal.
pub fn pal_distance(w: &DigitString) -> usize {
    let d = &w.digits;
    d.iter().zip(d.iter().rev()).filter(|(x, y)| x != y).count()
}

/// Number of base-k digits of `n` (zero has length zero).
pub fn digit_len(n: &Natural, base: Base) -> usize {
    if n.is_zero() {
        return 0;
    }
    if base.get() == 2 {
        return n.bits() as usize;
    }
    n.to_radix_be(base.get()).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(s: &str) -> DigitString {
        s.parse().unwrap()
    }

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn to_digits_examples() {
        assert_eq!(to_digits(&n(43), Base::BINARY).unwrap(), bin("101011"));
        assert_eq!(to_digits(&n(1), Base::BINARY).unwrap(), bin("1"));
        assert_eq!(to_digits(&n(52), Base::BINARY).unwrap(), bin("110100"));
        assert_eq!(to_digits(&n(0), Base::BINARY), Err(Error::Zero));
    }

    #[test]
    fn from_digits_examples() {
        assert_eq!(from_digits(&bin("101011")).unwrap(), n(43));
        assert_eq!(from_digits(&bin("0001")).unwrap(), n(1));
        assert_eq!(from_digits(&bin("110100")).unwrap(), n(52));
        assert_eq!(
            from_digits(&DigitString::empty(Base::BINARY)),
            Err(Error::EmptyDigits)
        );
    }

    #[test]
    fn base_bounds() {
        assert!(Base::new(1).is_err());
        assert!(Base::new(257).is_err());
        assert_eq!(Base::new(3).unwrap().self_complementary_digit(), Some(1));
        assert_eq!(Base::BINARY.self_complementary_digit(), None);
    }

    #[test]
    fn digits_are_range_checked() {
        assert!(DigitString::new(vec![1, 2], Base::BINARY).is_err());
        assert!(DigitString::parse("102", Base::new(3).unwrap()).is_ok());
    }

    #[test]
    fn palindrome_examples() {
        assert!(!is_palindrome(&bin("101011")));
        assert!(is_palindrome(&bin("1000000001")));
        assert_eq!(from_digits(&bin("1000000001")).unwrap(), n(513));
        assert!(is_palindrome(&bin("1")));
        assert!(!is_palindrome(&DigitString::empty(Base::BINARY)));
    }

    #[test]
    fn reverse_complement_examples() {
        assert_eq!(reverse_complement(&bin("110")), bin("100"));
        assert_eq!(reverse_complement(&bin("110100")), bin("110100"));
        let ternary = Base::new(3).unwrap();
        assert_eq!(
            reverse_complement(&DigitString::parse("21", ternary).unwrap()),
            DigitString::parse("10", ternary).unwrap()
        );
    }

    #[test]
    fn antipalindrome_examples() {
        assert!(is_antipalindrome(&bin("110100")));
        assert!(is_antipalindrome(&bin("10")));
        assert!(!is_antipalindrome(&bin("101")));
        assert!(!is_antipalindrome(&DigitString::empty(Base::BINARY)));
        let ternary = Base::new(3).unwrap();
        // odd length with the self-complementary middle digit
        assert!(is_antipalindrome(
            &DigitString::parse("210", ternary).unwrap()
        ));
        assert!(!is_antipalindrome(
            &DigitString::parse("200", ternary).unwrap()
        ));
    }

    #[test]
    fn pal_distance_examples() {
        assert_eq!(pal_distance(&bin("11")), 0);
        assert_eq!(pal_distance(&bin("0010110001011")), 12);
        assert_eq!(pal_distance(&bin("10")), 2);
    }

    #[test]
    fn round_trip_exhaustive() {
        for k in [2u32, 3, 10] {
            let base = Base::new(k).unwrap();
            for v in 1..=1_000_000u64 {
                let w = to_digits_u64(v, base).unwrap();
                assert!(w.is_canonical());
                assert_eq!(from_digits(&w).unwrap(), n(v));
            }
        }
    }

    fn first_matching(pred: fn(&DigitString) -> bool, limit: u64) -> Vec<u64> {
        (1..=limit)
            .filter(|&v| pred(&to_digits_u64(v, Base::BINARY).unwrap()))
            .collect()
    }

    #[test]
    fn binary_palindromes_below_50() {
        assert_eq!(
            first_matching(is_palindrome, 50),
            vec![1, 3, 5, 7, 9, 15, 17, 21, 27, 31, 33, 45]
        );
    }

    #[test]
    fn binary_antipalindromes_prefix() {
        assert_eq!(
            first_matching(is_antipalindrome, 56),
            vec![2, 10, 12, 38, 42, 52, 56]
        );
    }

    #[test]
    fn digit_len_matches_strings() {
        let ten = Base::DECIMAL;
        assert_eq!(digit_len(&n(999), ten), 3);
        assert_eq!(digit_len(&n(1000), ten), 4);
        assert_eq!(digit_len(&n(8), Base::BINARY), 4);
        assert_eq!(digit_len(&n(0), Base::BINARY), 0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn digit_string() -> impl Strategy<Value = DigitString> {
            (2u32..=12).prop_flat_map(|k| {
                proptest::collection::vec(0..k as u8, 0..40)
                    .prop_map(move |d| DigitString::new(d, Base::new(k).unwrap()).unwrap())
            })
        }

        proptest! {
            #[test]
            fn reverse_complement_is_an_involution(w in digit_string()) {
                prop_assert_eq!(reverse_complement(&reverse_complement(&w)), w);
            }

            #[test]
            fn pal_distance_is_even_and_zero_only_for_palindromes(w in digit_string()) {
                prop_assume!(!w.is_empty());
                let d = pal_distance(&w);
                prop_assert_eq!(d % 2, 0);
                prop_assert_eq!(d == 0, is_palindrome(&w));
            }

            #[test]
            fn binary_antipalindromes_have_even_length(v in 1u64..1_000_000) {
                let w = to_digits_u64(v, Base::BINARY).unwrap();
                if is_antipalindrome(&w) {
                    prop_assert_eq!(w.len() % 2, 0);
                }
            }
        }
    }
}
