//! The lazily evaluated carry automaton whose accepting runs encode pairs
//! `(A, B)` of shape-valid numbers with `q * A = p * B`.
//!
//! An input run reads the low half of `(A)_k` and `(B)_k` in parallel, least
//! significant digit first. Each symbol drives two digitwise checks of the
//! product at once: one climbing from the least significant position (the
//! right carries) and one descending from the most significant position (the
//! left carry), which can see the high digits because the shape mirrors them.
//! The two checks meet in the middle of `(A)_k` and the run accepts when
//! their carries agree.
//!
//! `(A)_k` is longer than `(B)_k` by a guessed gap `m`, so the descending
//! check lags `m` symbols behind on `B`. The automaton keeps those digits in
//! a queue of saved symbols. Once `b` ends the remaining middle of `B` is
//! exactly the queue (padded at the front with zeros, and with the middle
//! digit of `B` appended at the back): the descending check pops from the
//! front and the ascending check pops from the back.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::numerals::{self, Base, DigitString, Natural};

/// Which family `(A)_k` and `(B)_k` must belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Palindrome,
    Antipalindrome,
}

impl Shape {
    /// The digit at the mirrored position, given the digit at this one.
    #[inline]
    pub fn mirror(self, digit: u8, base: Base) -> u8 {
        match self {
            Shape::Palindrome => digit,
            Shape::Antipalindrome => base.complement(digit),
        }
    }

    /// Digits that may sit alone in the middle of an odd-length string.
    pub fn middle_digits(self, base: Base) -> Vec<u8> {
        match self {
            Shape::Palindrome => (0..base.get()).map(|d| d as u8).collect(),
            Shape::Antipalindrome => base.self_complementary_digit().into_iter().collect(),
        }
    }

    /// The shape predicate on a canonical digit string.
    pub fn accepts(self, w: &DigitString) -> bool {
        w.is_canonical()
            && match self {
                Shape::Palindrome => numerals::is_palindrome(w),
                Shape::Antipalindrome => numerals::is_antipalindrome(w),
            }
    }

    pub fn accepts_value(self, n: &Natural, base: Base) -> bool {
        numerals::to_digits(n, base).is_ok_and(|w| self.accepts(&w))
    }

    pub fn name(self) -> &'static str {
        match self {
            Shape::Palindrome => "palindrome",
            Shape::Antipalindrome => "antipalindrome",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pal" | "palindrome" | "palindromic" => Ok(Shape::Palindrome),
            "apal" | "antipal" | "antipalindrome" | "antipalindromic" => Ok(Shape::Antipalindrome),
            other => Err(Error::InvalidTarget(format!("unknown shape {other:?}"))),
        }
    }
}

/// Carries are kept in machine integers; this keeps every intermediate
/// `k * p` product far from overflow.
const MAX_TARGET_PART: u64 = 1 << 31;

/// A quotient `p/q` to be represented as `A/B` in a given base and shape.
///
/// Stored reduced and oriented so that `p >= q`; `swapped` records that the
/// caller asked for `q/p`, in which case representations are flipped back on
/// the way out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Target {
    p: u64,
    q: u64,
    swapped: bool,
    base: Base,
    shape: Shape,
}

impl Target {
    pub fn integer(n: u64, base: Base, shape: Shape) -> Result<Self> {
        Target::rational(n, 1, base, shape)
    }

    pub fn rational(p: u64, q: u64, base: Base, shape: Shape) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidTarget(format!(
                "{p}/{q}: numerator and denominator must be positive"
            )));
        }
        let g = p.gcd(&q);
        let (p, q) = (p / g, q / g);
        if p >= MAX_TARGET_PART || q >= MAX_TARGET_PART {
            return Err(Error::TargetTooLarge(format!("{p}/{q}")));
        }
        let swapped = p < q;
        let (p, q) = if swapped { (q, p) } else { (p, q) };
        Ok(Target {
            p,
            q,
            swapped,
            base,
            shape,
        })
    }

    /// Parses `"N"` or `"p/q"`.
    pub fn parse(s: &str, base: Base, shape: Shape) -> Result<Self> {
        let bad = || Error::InvalidTarget(format!("{s:?} is not of the form N or p/q"));
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: u64 = p.parse().map_err(|_| bad())?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        Target::rational(p, q, base, shape)
    }

    /// Numerator of the searched orientation (`p >= q`).
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Denominator of the searched orientation (`p >= q`).
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// The quotient as the caller stated it, in lowest terms.
    pub fn as_requested(&self) -> (u64, u64) {
        if self.swapped {
            (self.q, self.p)
        } else {
            (self.p, self.q)
        }
    }

    pub fn is_integer(&self) -> bool {
        !self.swapped && self.q == 1
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn with_shape(mut self, shape: Shape) -> Self {
        self.shape = shape;
        self
    }

    /// `(floor, ceil)` of `log_k(p/q)`, computed exactly.
    pub fn log_bounds(&self) -> (u32, u32) {
        let k = self.base.get() as u128;
        let (p, q) = (self.p as u128, self.q as u128);
        let mut floor = 0u32;
        let mut scaled = q;
        while scaled * k <= p {
            scaled *= k;
            floor += 1;
        }
        let ceil = if scaled == p { floor } else { floor + 1 };
        (floor, ceil)
    }

    /// Candidate differences `|(A)_k| - |(B)_k|`.
    pub fn gaps(&self) -> Vec<u8> {
        let (lo, hi) = self.log_bounds();
        let mut gaps = vec![lo as u8];
        if hi != lo {
            gaps.push(hi as u8);
        }
        gaps
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.as_requested();
        if q == 1 {
            write!(f, "{p}")
        } else {
            write!(f, "{p}/{q}")
        }
    }
}

/// Stage of the run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    /// Nothing read yet; the next symbol carries the leading digits.
    Start,
    /// Fewer than `m` digits of `b` saved.
    Loading,
    /// Exactly `m` digits saved, cycling through the queue.
    Shifting,
    /// `b` has ended; the queue is drained from both ends.
    Unloading,
}

/// Digits saved for the descending check, packed positionally in base `k`
/// with the front of the queue most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SavedDigits {
    packed: u64,
    len: u8,
}

impl SavedDigits {
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn push_back(&mut self, digit: u8, k: u64) {
        self.packed = self.packed * k + digit as u64;
        self.len += 1;
    }

    fn pop_back(&mut self, k: u64) -> u8 {
        debug_assert!(self.len > 0);
        let d = (self.packed % k) as u8;
        self.packed /= k;
        self.len -= 1;
        d
    }

    fn pop_front(&mut self, k: u64) -> u8 {
        debug_assert!(self.len > 0);
        let weight = k.pow(self.len as u32 - 1);
        let d = (self.packed / weight) as u8;
        self.packed %= weight;
        self.len -= 1;
        d
    }

    /// Zeros added at the front leave the packed value unchanged.
    fn pad_front(&mut self, len: u8) {
        self.len = self.len.max(len);
    }

    /// The saved digits, front first.
    pub fn digits(&self, base: Base) -> Vec<u8> {
        let k = base.get() as u64;
        let mut out = vec![0u8; self.len as usize];
        let mut v = self.packed;
        for slot in out.iter_mut().rev() {
            *slot = (v % k) as u8;
            v /= k;
        }
        out
    }
}

/// One node of the implicit state graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchState {
    pub phase: Phase,
    /// Guessed length difference between `(A)_k` and `(B)_k`.
    pub gap: u8,
    /// At least one input symbol has been consumed (leading digits fixed).
    pub opened: bool,
    pub queue: SavedDigits,
    /// Ascending carry of `q * A`, always below `q`.
    pub right_carry_a: u32,
    /// Ascending carry of `p * B`, always below `p`.
    pub right_carry_b: u32,
    /// Descending carry difference, kept in `(-q, p)`.
    pub left_carry: i32,
}

impl SearchState {
    pub fn is_reading_b(&self) -> bool {
        self.phase != Phase::Unloading
    }

    fn right_difference(&self) -> i64 {
        self.right_carry_b as i64 - self.right_carry_a as i64
    }
}

/// The `b` component of an input symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BSymbol {
    Digit(u8),
    /// End-of-`b` padding.
    Pad,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TransitionLabel {
    pub a: u8,
    pub b: BSymbol,
}

impl TransitionLabel {
    pub fn digits(a: u8, b: u8) -> Self {
        TransitionLabel {
            a,
            b: BSymbol::Digit(b),
        }
    }

    pub fn padded(a: u8) -> Self {
        TransitionLabel { a, b: BSymbol::Pad }
    }
}

/// Outcome of the acceptance test on an unloading state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AcceptResult {
    Reject,
    /// `(A)_k` has even length and the carries meet.
    Accept,
    /// `(A)_k` has odd length with the given middle digit.
    AcceptWithMiddle(u8),
}

impl AcceptResult {
    pub fn is_accept(self) -> bool {
        !matches!(self, AcceptResult::Reject)
    }

    pub fn middle(self) -> Option<u8> {
        match self {
            AcceptResult::AcceptWithMiddle(d) => Some(d),
            _ => None,
        }
    }
}

/// Ascending-check step: given the carries below position `l` and the digits
/// `A_l`, `B_l`, returns the carries out of position `l`, or `None` when
/// `q*A_l + c_A` and `p*B_l + c_B` disagree modulo `k`.
pub fn step_right(
    carry_a: u32,
    carry_b: u32,
    a_digit: u8,
    b_digit: u8,
    target: &Target,
) -> Option<(u32, u32)> {
    let k = target.base.get() as u64;
    let lhs = target.q * a_digit as u64 + carry_a as u64;
    let rhs = target.p * b_digit as u64 + carry_b as u64;
    let residue = rhs % k;
    if lhs % k != residue {
        return None;
    }
    Some((((lhs - residue) / k) as u32, ((rhs - residue) / k) as u32))
}

/// Descending-check step: the carry difference required just below position
/// `l` so that position `l` balances, given the one required above it.
pub fn step_left(left_carry: i64, a_digit: u8, b_digit: u8, target: &Target) -> i64 {
    let k = target.base.get() as i64;
    k * left_carry - target.p as i64 * b_digit as i64 + target.q as i64 * a_digit as i64
}

/// Upper bound on the number of automaton states for the target.
pub fn state_count_bound(target: &Target) -> Natural {
    let (_, ceil) = target.log_bounds();
    let (p, q) = (BigUint::from(target.p), BigUint::from(target.q));
    let k = BigUint::from(target.base.get());
    BigUint::from(6u32) * (&p + &q - 1u32) * &p * &q * k.pow(ceil)
}

/// The automaton for one target. Immutable; successor evaluation is pure.
#[derive(Clone, Debug)]
pub struct QuotientAutomaton {
    target: Target,
    k: u64,
    middles: Vec<u8>,
}

impl QuotientAutomaton {
    pub fn new(target: Target) -> Self {
        QuotientAutomaton {
            target,
            k: target.base.get() as u64,
            middles: target.shape.middle_digits(target.base),
        }
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn base(&self) -> Base {
        self.target.base
    }

    pub fn digit_count(&self) -> u8 {
        self.k as u8
    }

    /// Middle digits allowed for odd-length strings of this shape.
    pub fn middle_digits(&self) -> &[u8] {
        &self.middles
    }

    #[inline]
    pub fn mirror(&self, digit: u8) -> u8 {
        self.target.shape.mirror(digit, self.target.base)
    }

    pub fn start_states(&self) -> Vec<SearchState> {
        // In an even base antipalindromes have even length, so the gap is even.
        let even_only = self.middles.is_empty();
        self.target
            .gaps()
            .into_iter()
            .filter(|gap| !even_only || gap % 2 == 0)
            .map(|gap| SearchState {
                phase: Phase::Start,
                gap,
                opened: false,
                queue: SavedDigits::default(),
                right_carry_a: 0,
                right_carry_b: 0,
                left_carry: 0,
            })
            .collect()
    }

    #[inline]
    fn left_in_range(&self, c: i64) -> bool {
        -(self.target.q as i64) < c && c < self.target.p as i64
    }

    /// Reads one `(a, b)` symbol while `b` is still running.
    pub fn read(&self, state: &SearchState, a: u8, b: u8) -> Option<SearchState> {
        if !state.is_reading_b() {
            return None;
        }
        let (high_a, high_b) = (self.mirror(a), self.mirror(b));
        if state.phase == Phase::Start && (high_a == 0 || high_b == 0) {
            return None;
        }
        let (carry_a, carry_b) =
            step_right(state.right_carry_a, state.right_carry_b, a, b, &self.target)?;
        let mut queue = state.queue;
        queue.push_back(high_b, self.k);
        let left_b = if queue.len() > state.gap as usize {
            queue.pop_front(self.k)
        } else {
            0
        };
        let left = step_left(state.left_carry as i64, high_a, left_b, &self.target);
        if !self.left_in_range(left) {
            return None;
        }
        let phase = if queue.len() == state.gap as usize {
            Phase::Shifting
        } else {
            Phase::Loading
        };
        Some(SearchState {
            phase,
            gap: state.gap,
            opened: true,
            queue,
            right_carry_a: carry_a,
            right_carry_b: carry_b,
            left_carry: left as i32,
        })
    }

    /// Ends `b`, choosing the middle digit of `(B)_k` (`None` for even length).
    pub fn close(&self, state: &SearchState, middle_b: Option<u8>) -> Option<SearchState> {
        if !state.is_reading_b() {
            return None;
        }
        if let Some(d) = middle_b {
            if !self.middles.contains(&d) {
                return None;
            }
        }
        if state.phase == Phase::Start && !matches!(middle_b, Some(d) if d != 0) {
            return None;
        }
        let mut queue = state.queue;
        queue.pad_front(state.gap);
        if let Some(d) = middle_b {
            queue.push_back(d, self.k);
        }
        Some(SearchState {
            phase: Phase::Unloading,
            queue,
            ..*state
        })
    }

    /// The choices available to [`close`](Self::close) from a `b`-reading state.
    pub fn close_options(&self, state: &SearchState) -> impl Iterator<Item = Option<u8>> + '_ {
        let even = (state.phase != Phase::Start).then_some(None);
        even.into_iter()
            .chain(self.middles.iter().map(|&d| Some(d)))
    }

    /// Reads one `(a, X)` symbol, consuming the queue at both ends.
    pub fn unload(&self, state: &SearchState, a: u8) -> Option<SearchState> {
        if state.phase != Phase::Unloading || state.queue.len() < 2 {
            return None;
        }
        let high_a = self.mirror(a);
        if !state.opened && high_a == 0 {
            return None;
        }
        let mut queue = state.queue;
        let right_b = queue.pop_back(self.k);
        let left_b = queue.pop_front(self.k);
        let (carry_a, carry_b) = step_right(
            state.right_carry_a,
            state.right_carry_b,
            a,
            right_b,
            &self.target,
        )?;
        let left = step_left(state.left_carry as i64, high_a, left_b, &self.target);
        if !self.left_in_range(left) {
            return None;
        }
        Some(SearchState {
            phase: Phase::Unloading,
            gap: state.gap,
            opened: true,
            queue,
            right_carry_a: carry_a,
            right_carry_b: carry_b,
            left_carry: left as i32,
        })
    }

    /// Acceptance on an unloading state with at most one saved digit left.
    pub fn is_accepting(&self, state: &SearchState) -> AcceptResult {
        if state.phase != Phase::Unloading {
            return AcceptResult::Reject;
        }
        let diff = state.right_difference();
        let left = state.left_carry as i64;
        match state.queue.len() {
            0 if state.opened && left == diff => AcceptResult::Accept,
            1 => {
                let middle_b = state.queue.digits(self.target.base)[0] as i64;
                let k = self.k as i64;
                let numer = self.target.p as i64 * middle_b + diff - k * left;
                let q = self.target.q as i64;
                if numer < 0 || numer % q != 0 {
                    return AcceptResult::Reject;
                }
                let sigma = numer / q;
                if sigma >= k {
                    return AcceptResult::Reject;
                }
                let sigma = sigma as u8;
                if !self.middles.contains(&sigma) || (!state.opened && sigma == 0) {
                    return AcceptResult::Reject;
                }
                AcceptResult::AcceptWithMiddle(sigma)
            }
            _ => AcceptResult::Reject,
        }
    }

    /// Successors under one input symbol. A pad symbol read while `b` is
    /// still running first ends `b`, branching over the middle digit of
    /// `(B)_k`. The end of input itself is the ε-move [`close`](Self::close).
    pub fn successors(&self, state: &SearchState, label: TransitionLabel) -> Vec<SearchState> {
        match (state.phase, label.b) {
            (Phase::Unloading, BSymbol::Digit(_)) => Vec::new(),
            (_, BSymbol::Digit(b)) => self.read(state, label.a, b).into_iter().collect(),
            (Phase::Unloading, BSymbol::Pad) => self.unload(state, label.a).into_iter().collect(),
            (_, BSymbol::Pad) => self
                .close_options(state)
                .filter_map(|mid| self.close(state, mid))
                .filter_map(|closed| self.unload(&closed, label.a))
                .collect(),
        }
    }

    /// Every accepting way to finish from a `b`-reading state: choose the
    /// middle of `B`, drain the queue, and settle the middle of `A`.
    pub fn completions(&self, state: &SearchState) -> Vec<Completion> {
        let mut out = Vec::new();
        for middle_b in self.close_options(state) {
            if let Some(closed) = self.close(state, middle_b) {
                let mut unload = Vec::new();
                self.drain(&closed, middle_b, &mut unload, &mut out, usize::MAX);
            }
        }
        out
    }

    /// Whether some completion exists with the given parity of `|(B)_k|`.
    pub fn has_completion(&self, state: &SearchState, odd_b: Option<bool>) -> bool {
        self.close_options(state)
            .filter(|mid| odd_b.is_none_or(|odd| odd == mid.is_some()))
            .any(|mid| self.completes_with(state, mid))
    }

    /// Whether ending `b` with the given middle digit leads to acceptance.
    pub fn completes_with(&self, state: &SearchState, middle_b: Option<u8>) -> bool {
        let Some(closed) = self.close(state, middle_b) else {
            return false;
        };
        let mut out = Vec::new();
        self.drain(&closed, middle_b, &mut Vec::new(), &mut out, 1);
        !out.is_empty()
    }

    fn drain(
        &self,
        state: &SearchState,
        middle_b: Option<u8>,
        unload: &mut Vec<u8>,
        out: &mut Vec<Completion>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if state.queue.len() < 2 {
            let result = self.is_accepting(state);
            if result.is_accept() {
                out.push(Completion {
                    middle_b,
                    unload: unload.clone(),
                    middle_a: result.middle(),
                });
            }
            return;
        }
        for a in 0..self.k as u8 {
            if let Some(next) = self.unload(state, a) {
                unload.push(a);
                self.drain(&next, middle_b, unload, out, limit);
                unload.pop();
            }
        }
    }
}

/// The tail of an accepting run after the last `(a, b)` symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Completion {
    pub middle_b: Option<u8>,
    /// `a` digits read alongside pad symbols.
    pub unload: Vec<u8>,
    pub middle_a: Option<u8>,
}

/// A full accepting run: the gap guess, the `(a, b)` symbols, and the tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AcceptingRun {
    pub gap: u8,
    pub reads: Vec<(u8, u8)>,
    pub completion: Completion,
}

impl AcceptingRun {
    /// Rebuilds `(A)_k` and `(B)_k` from the run: each is its low half,
    /// optional middle digit, and the mirrored low half.
    pub fn digit_strings(&self, base: Base, shape: Shape) -> (DigitString, DigitString) {
        let low_a: Vec<u8> = self
            .reads
            .iter()
            .map(|&(a, _)| a)
            .chain(self.completion.unload.iter().copied())
            .collect();
        let low_b: Vec<u8> = self.reads.iter().map(|&(_, b)| b).collect();
        (
            assemble(&low_a, self.completion.middle_a, base, shape),
            assemble(&low_b, self.completion.middle_b, base, shape),
        )
    }
}

/// `low` lists the least significant digits in increasing position.
fn assemble(low: &[u8], middle: Option<u8>, base: Base, shape: Shape) -> DigitString {
    let mut digits: Vec<u8> = low.iter().map(|&d| shape.mirror(d, base)).collect();
    digits.extend(middle);
    digits.extend(low.iter().rev());
    DigitString::from_trusted(digits, base)
}
