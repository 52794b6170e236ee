//! Prefix refutation for binary palindromic quotients `N = A/B`, plus the
//! known families of `N` on which it never terminates.
//!
//! A candidate `T` for the first `k` bits of `B` pins down two independent
//! views of the first `k` bits of `A = N*B`: multiplying the interval of
//! numbers starting with `T` bounds them from above, while palindromy turns
//! `T` into the last `k` bits of `B`, hence (mod `2^k`) the last `k` bits of
//! `A`, hence its first `k` bits. When the views disagree `T` is dead.
//! Breadth-first search over prefixes either finds a solution, kills every
//! prefix of some length, or runs out of depth.

use num_bigint::BigUint;

use crate::automaton::Shape;
use crate::error::{Error, Result};
use crate::numerals::{self, Base, DigitString, Natural};
use crate::search::Representation;

/// Prefixes are held in `u128` alongside `N * (T + 1)`, so `T` stays below
/// `2^64` for any `N < 2^64`.
pub const MAX_DEPTH: u32 = 64;

pub const DEFAULT_MAX_DEPTH: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeuristicOutcome {
    Found(Representation),
    /// Every prefix of this length was eliminated.
    RefutedAtDepth(u32),
    /// Prefixes of every length up to the limit survived.
    Inconclusive(u32),
}

fn bit_len(x: u128) -> u32 {
    128 - x.leading_zeros()
}

fn reverse_bits(x: u128, len: u32) -> u128 {
    if len == 0 {
        return 0;
    }
    x.reverse_bits() >> (128 - len)
}

/// Whether `T` (of `k` bits) survives both views of the first `k` bits of `A`.
fn consistent(n: u128, prefix: u128, k: u32) -> bool {
    let mask = (1u128 << k) - 1;
    let low_b = reverse_bits(prefix, k);
    let high_a = reverse_bits(n.wrapping_mul(low_b) & mask, k);
    // A / 2^(|B|-k) lies in [lo, hi]; its first k bits are those of A.
    let (lo, hi) = (n * prefix, n * (prefix + 1) - 1);
    let top = |x: u128| x >> (bit_len(x) - k);
    if bit_len(lo) == bit_len(hi) {
        (top(lo)..=top(hi)).contains(&high_a)
    } else {
        high_a >= top(lo) || high_a <= top(hi)
    }
}

/// The two palindromes of length `2k - 1` and `2k` that start with `T`.
fn completions(prefix: u128, k: u32) -> [Natural; 2] {
    let p = BigUint::from(prefix);
    let odd = (&p << (k - 1)) | BigUint::from(reverse_bits(prefix >> 1, k - 1));
    let even = (&p << k) | BigUint::from(reverse_bits(prefix, k));
    [odd, even]
}

/// Runs the prefix search for `N` up to `max_depth` (at most [`MAX_DEPTH`]).
pub fn heuristic_decide(n: u64, max_depth: u32) -> Result<HeuristicOutcome> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "the prefix heuristic needs an odd N >= 3, got {n}"
        )));
    }
    let max_depth = max_depth.min(MAX_DEPTH);
    let big_n = Natural::from(n);
    let n = n as u128;
    let mut survivors: Vec<u128> = vec![1];
    for k in 1..=max_depth {
        if k > 1 {
            survivors = survivors
                .iter()
                .flat_map(|&t| [t << 1, (t << 1) | 1])
                .filter(|&t| consistent(n, t, k))
                .collect();
        } else {
            survivors.retain(|&t| consistent(n, t, 1));
        }
        if survivors.is_empty() {
            return Ok(HeuristicOutcome::RefutedAtDepth(k));
        }
        for parity in 0..2 {
            for &t in &survivors {
                let b = completions(t, k)[parity].clone();
                let a = &b * &big_n;
                if Shape::Palindrome.accepts_value(&a, Base::BINARY) {
                    return Ok(HeuristicOutcome::Found(Representation {
                        numerator: a,
                        denominator: b,
                        base: Base::BINARY,
                        shape: Shape::Palindrome,
                    }));
                }
            }
        }
    }
    Ok(HeuristicOutcome::Inconclusive(max_depth))
}

/// A family of `N` for which every prefix length admits a surviving prefix:
/// `N * [r s^n (s^R)^n r^R] = [t u^(n-i) v w v^R (u^R)^(n-i) t^R]` in binary
/// for `n >= 2`, where `w` is `d` bit flips away from a palindrome, so the
/// right side is never palindromic itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRow {
    pub n: u64,
    pub r: &'static str,
    pub s: &'static str,
    pub t: &'static str,
    pub u: &'static str,
    pub v: &'static str,
    pub w: &'static str,
    pub i: u32,
    pub d: usize,
}

pub const FAILURE_FAMILIES: [FamilyRow; 6] = [
    FamilyRow {
        n: 2551,
        r: "",
        s: "10100010000",
        t: "1100100",
        u: "11110001011",
        v: "111",
        w: "0010110001011",
        i: 1,
        d: 12,
    },
    FamilyRow {
        n: 14765,
        r: "",
        s: "111011110110",
        t: "1101011111000",
        u: "110000010111",
        v: "1100000101101",
        w: "1011010110",
        i: 2,
        d: 8,
    },
    FamilyRow {
        n: 15247,
        r: "",
        s: "11001101110011001000",
        t: "10111111100",
        u: "00100011001101110011",
        v: "0010001",
        w: "011100000011000101",
        i: 1,
        d: 10,
    },
    FamilyRow {
        n: 17093,
        r: "",
        s: "110111001000",
        t: "11100110000",
        u: "110010001101",
        v: "",
        w: "0110000000010101",
        i: 1,
        d: 6,
    },
    FamilyRow {
        n: 19277,
        r: "11",
        s: "0000100011100111110111000110",
        t: "1110010010000101",
        u: "1001101101001101100100101100",
        v: "10011011010011",
        w: "11001111100100",
        i: 1,
        d: 8,
    },
    FamilyRow {
        n: 19831,
        r: "",
        s: "11101010111100",
        t: "1000111000110",
        u: "00100000011111",
        v: "0010000001111",
        w: "0111010111111010101",
        i: 2,
        d: 12,
    },
];

fn bits(s: &str) -> DigitString {
    DigitString::parse(s, Base::BINARY).expect("binary literal")
}

impl FamilyRow {
    /// `r s^n (s^R)^n r^R`, a palindrome.
    pub fn denominator(&self, n: usize) -> DigitString {
        let (r, s) = (bits(self.r), bits(self.s));
        r.concat(&s.repeat(n))
            .concat(&s.reversed().repeat(n))
            .concat(&r.reversed())
    }

    /// `t u^(n-i) v w v^R (u^R)^(n-i) t^R`.
    pub fn product(&self, n: usize) -> DigitString {
        let (t, u, v, w) = (bits(self.t), bits(self.u), bits(self.v), bits(self.w));
        let reps = n - self.i as usize;
        t.concat(&u.repeat(reps))
            .concat(&v)
            .concat(&w)
            .concat(&v.reversed())
            .concat(&u.reversed().repeat(reps))
            .concat(&t.reversed())
    }
}

/// Checks the family identity for one `n` with exact arithmetic.
pub fn verify_failure_family(row: &FamilyRow, n: usize) -> Result<bool> {
    if n < 2 || n < row.i as usize {
        return Err(Error::Precondition(format!(
            "family for N = {} needs n >= max(2, {}), got {n}",
            row.n, row.i
        )));
    }
    let b = numerals::from_digits(&row.denominator(n))?;
    let a = numerals::from_digits(&row.product(n))?;
    Ok(a == b * row.n && numerals::pal_distance(&bits(row.w)) == row.d)
}
