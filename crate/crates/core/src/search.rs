//! Searches over the state graph of [`QuotientAutomaton`]: deciding
//! representability, finding the smallest representation, and counting or
//! listing all of them.
//!
//! Only states that are still reading `b` are materialized. Ending `b` and
//! draining the queue is a short forced computation per state
//! ([`QuotientAutomaton::completes_with`]), so a state "finishes" when some
//! way of ending `b` there is accepted.
//!
//! A representation is determined by `B` alone (as `A = p*B/q`), and `B` is
//! determined by its low half `b` and its middle digit. Walking the graph
//! layer by layer in increasing order of the high digits of `B` therefore
//! visits representations in increasing order.

use std::collections::hash_map::Entry;
use std::collections::VecDeque;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rustc_hash::{FxHashMap, FxHashSet};

use crate::automaton::{QuotientAutomaton, SearchState, Shape, Target};
use crate::error::{Error, Result};
use crate::numerals::{self, Base, DigitString, Natural};

/// Default cap on the number of states a single search may create.
pub const DEFAULT_MAX_STATES: u64 = 100_000_000;

/// Resource limits for a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_states: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states: Some(DEFAULT_MAX_STATES),
            max_time: None,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_states: None,
            max_time: None,
        }
    }

    pub fn states(max_states: u64) -> Self {
        Budget {
            max_states: Some(max_states),
            max_time: None,
        }
    }

    pub fn with_time(mut self, max_time: Duration) -> Self {
        self.max_time = Some(max_time);
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub states_visited: u64,
    pub elapsed: Duration,
}

struct Meter {
    budget: Budget,
    started: Instant,
    visited: u64,
}

impl Meter {
    fn new(budget: Budget) -> Self {
        Meter {
            budget,
            started: Instant::now(),
            visited: 0,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.visited += 1;
        let over_states = self.budget.max_states.is_some_and(|m| self.visited > m);
        let over_time = self.visited.is_multiple_of(1024)
            && self
                .budget
                .max_time
                .is_some_and(|t| self.started.elapsed() > t);
        if over_states || over_time {
            return Err(Error::BudgetExhausted {
                states_visited: self.visited,
                elapsed: self.started.elapsed(),
            });
        }
        Ok(())
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            states_visited: self.visited,
            elapsed: self.started.elapsed(),
        }
    }
}

/// A pair `(A, B)` of shape-valid numbers whose quotient `A/B` is the
/// requested target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    pub numerator: Natural,
    pub denominator: Natural,
    pub base: Base,
    pub shape: Shape,
}

impl Representation {
    pub fn numerator_digits(&self) -> DigitString {
        numerals::to_digits(&self.numerator, self.base).expect("numerator is positive")
    }

    pub fn denominator_digits(&self) -> DigitString {
        numerals::to_digits(&self.denominator, self.base).expect("denominator is positive")
    }

    /// Checks the shapes and the quotient against the target from scratch.
    pub fn verify(&self, target: &Target) -> bool {
        let (p, q) = target.as_requested();
        self.base == target.base()
            && self.shape == target.shape()
            && self.shape.accepts(&self.numerator_digits())
            && self.shape.accepts(&self.denominator_digits())
            && &self.numerator * q == &self.denominator * p
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Result of [`decide`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub representable: bool,
    /// Some representation when one exists (not necessarily the smallest).
    pub witness: Option<Representation>,
    pub stats: SearchStats,
}

/// How many representations a target has.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionClass {
    None,
    Finite {
        count: Natural,
        /// The smallest representations, as many as were asked for.
        witnesses: Vec<Representation>,
    },
    Infinite {
        /// The smallest representation.
        witness: Representation,
        /// A cycle of co-accessible states; each lap pumps a new
        /// representation.
        cycle: Vec<SearchState>,
    },
}

impl SolutionClass {
    pub fn is_infinite(&self) -> bool {
        matches!(self, SolutionClass::Infinite { .. })
    }

    pub fn count(&self) -> Option<Natural> {
        match self {
            SolutionClass::None => Some(Natural::zero()),
            SolutionClass::Finite { count, .. } => Some(count.clone()),
            SolutionClass::Infinite { .. } => None,
        }
    }
}

/// Witnesses kept by [`classify`].
pub const WITNESS_LIMIT: usize = 16;

/// Search driver for one target; reports statistics after each call.
pub struct Search {
    automaton: QuotientAutomaton,
    meter: Meter,
}

impl Search {
    pub fn new(target: Target, budget: Budget) -> Self {
        Search {
            automaton: QuotientAutomaton::new(target),
            meter: Meter::new(budget),
        }
    }

    pub fn target(&self) -> &Target {
        self.automaton.target()
    }

    pub fn stats(&self) -> SearchStats {
        self.meter.stats()
    }

    /// A palindrome never ends in 0, so an integer multiple of the base has
    /// no palindromic representation.
    fn trivially_impossible(&self) -> bool {
        let t = self.target();
        t.shape() == Shape::Palindrome
            && t.is_integer()
            && t.p().is_multiple_of(t.base().get() as u64)
    }

    fn finishes(&self, state: &SearchState) -> bool {
        self.automaton.has_completion(state, None)
    }

    pub fn decide(&mut self) -> Result<Decision> {
        if self.trivially_impossible() {
            return Ok(Decision {
                representable: false,
                witness: None,
                stats: self.stats(),
            });
        }
        let m = &self.automaton;
        let k = m.digit_count();
        let mut seen: FxHashSet<SearchState> = FxHashSet::default();
        // Parent index and last b digit, for rebuilding a witness.
        let mut parents: Vec<(u32, u8)> = Vec::new();
        let mut queue = VecDeque::new();
        for s in m.start_states() {
            self.meter.tick()?;
            seen.insert(s);
            queue.push_back((s, parents.len() as u32));
            parents.push((u32::MAX, 0));
        }
        while let Some((state, i)) = queue.pop_front() {
            if self.finishes(&state) {
                let mut low_b = Vec::new();
                let mut j = i;
                while parents[j as usize].0 != u32::MAX {
                    low_b.push(parents[j as usize].1);
                    j = parents[j as usize].0;
                }
                low_b.reverse();
                let middle = m
                    .close_options(&state)
                    .find(|&mid| m.completes_with(&state, mid))
                    .expect("state finishes");
                let witness = self.representation_from_b(&low_b, middle);
                return Ok(Decision {
                    representable: true,
                    witness: Some(witness),
                    stats: self.stats(),
                });
            }
            for a in 0..k {
                for b in 0..k {
                    if let Some(next) = m.read(&state, a, b) {
                        if seen.insert(next) {
                            self.meter.tick()?;
                            queue.push_back((next, parents.len() as u32));
                            parents.push((i, b));
                        }
                    }
                }
            }
        }
        Ok(Decision {
            representable: false,
            witness: None,
            stats: self.stats(),
        })
    }

    /// Builds the representation whose denominator (in searched orientation)
    /// has the given low half and middle digit.
    fn representation_from_b(&self, low_b: &[u8], middle: Option<u8>) -> Representation {
        let t = self.target();
        let (base, shape) = (t.base(), t.shape());
        let mut digits: Vec<u8> = low_b.iter().map(|&d| shape.mirror(d, base)).collect();
        digits.extend(middle);
        digits.extend(low_b.iter().rev());
        let b = numerals::from_digits(&DigitString::new(digits, base).expect("valid digits"))
            .expect("non-empty");
        let (a, rem) = (&b * t.p()).div_rem(&BigUint::from(t.q()));
        debug_assert!(rem.is_zero());
        let (numerator, denominator) = if t.swapped() { (b, a) } else { (a, b) };
        let rep = Representation {
            numerator,
            denominator,
            base,
            shape,
        };
        debug_assert!(rep.verify(t), "automaton produced an invalid pair {rep}");
        rep
    }

    /// The representation with the smallest numerator and denominator, or
    /// `None` when there is none.
    pub fn smallest(&mut self) -> Result<Option<Representation>> {
        if !self.decide()?.representable {
            return Ok(None);
        }
        let mut layers = Layers::new(&self.automaton, &mut self.meter)?;
        for len in 1usize.. {
            let (half, odd) = (len / 2, len % 2 == 1);
            layers.extend_to(half, &self.automaton, &mut self.meter)?;
            let mut found = Vec::new();
            layers.solutions_of_length(&self.automaton, half, odd, 1, &mut found);
            if let Some((low_b, middle)) = found.pop() {
                return Ok(Some(self.representation_from_b(&low_b, middle)));
            }
        }
        unreachable!()
    }

    /// Builds the full accessible graph and classifies the solution set.
    /// Finite classes carry up to `witness_limit` of the smallest solutions.
    pub fn classify(&mut self, witness_limit: usize) -> Result<SolutionClass> {
        if self.trivially_impossible() {
            return Ok(SolutionClass::None);
        }
        let graph = StateGraph::build(&self.automaton, &mut self.meter)?;
        let trimmed = graph.co_accessible();
        if !trimmed.iter().any(|&x| x) {
            return Ok(SolutionClass::None);
        }
        match graph.find_cycle(&trimmed) {
            Some(cycle) => {
                let witness = self
                    .smallest()?
                    .expect("co-accessible graph has a solution");
                Ok(SolutionClass::Infinite { witness, cycle })
            }
            None => {
                let count = graph.count_paths(&trimmed);
                let longest = graph.longest_half(&trimmed);
                let witnesses = self.enumerate_up_to(witness_limit, Some(longest))?;
                Ok(SolutionClass::Finite { count, witnesses })
            }
        }
    }

    /// The number of representations, or `None` when there are infinitely many.
    pub fn count(&mut self) -> Result<Option<Natural>> {
        Ok(self.classify(0)?.count())
    }

    /// Up to `limit` representations in increasing order.
    pub fn enumerate(&mut self, limit: usize) -> Result<Vec<Representation>> {
        if limit == 0 {
            return Ok(Vec::new());
        }
        if self.trivially_impossible() {
            return Ok(Vec::new());
        }
        let graph = StateGraph::build(&self.automaton, &mut self.meter)?;
        let trimmed = graph.co_accessible();
        if !trimmed.iter().any(|&x| x) {
            return Ok(Vec::new());
        }
        let bound = match graph.find_cycle(&trimmed) {
            Some(_) => None,
            None => Some(graph.longest_half(&trimmed)),
        };
        self.enumerate_up_to(limit, bound)
    }

    fn enumerate_up_to(
        &mut self,
        limit: usize,
        max_half: Option<usize>,
    ) -> Result<Vec<Representation>> {
        let mut found = Vec::new();
        if limit == 0 {
            return Ok(Vec::new());
        }
        let mut layers = Layers::new(&self.automaton, &mut self.meter)?;
        for len in 1usize.. {
            let (half, odd) = (len / 2, len % 2 == 1);
            if max_half.is_some_and(|h| half > h) || found.len() >= limit {
                break;
            }
            layers.extend_to(half, &self.automaton, &mut self.meter)?;
            if layers.is_exhausted(half) {
                break;
            }
            layers.solutions_of_length(&self.automaton, half, odd, limit, &mut found);
        }
        Ok(found
            .into_iter()
            .map(|(low_b, middle)| self.representation_from_b(&low_b, middle))
            .collect())
    }
}

/// Forward layers `F_j`: the states reachable after exactly `j` reads.
struct Layers {
    layers: Vec<Vec<SearchState>>,
    index: Vec<FxHashMap<SearchState, u32>>,
}

impl Layers {
    fn new(m: &QuotientAutomaton, meter: &mut Meter) -> Result<Self> {
        let mut layers = Layers {
            layers: Vec::new(),
            index: Vec::new(),
        };
        let start = m.start_states();
        for _ in &start {
            meter.tick()?;
        }
        layers.push(start);
        Ok(layers)
    }

    fn push(&mut self, layer: Vec<SearchState>) {
        let index = layer
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, i as u32))
            .collect();
        self.layers.push(layer);
        self.index.push(index);
    }

    fn is_exhausted(&self, half: usize) -> bool {
        self.layers[half].is_empty()
    }

    fn extend_to(&mut self, half: usize, m: &QuotientAutomaton, meter: &mut Meter) -> Result<()> {
        let k = m.digit_count();
        while self.layers.len() <= half {
            let mut seen: FxHashMap<SearchState, u32> = FxHashMap::default();
            let mut next = Vec::new();
            for state in self.layers.last().expect("start layer") {
                for a in 0..k {
                    for b in 0..k {
                        if let Some(s) = m.read(state, a, b) {
                            if let Entry::Vacant(slot) = seen.entry(s) {
                                meter.tick()?;
                                slot.insert(next.len() as u32);
                                next.push(s);
                            }
                        }
                    }
                }
            }
            self.layers.push(next);
            self.index.push(seen);
        }
        Ok(())
    }

    /// Appends, in increasing order of `B`, pairs
    /// `(low half of b, middle digit)` whose `B` has length `2*half + odd`,
    /// stopping once `out` holds `limit` entries.
    fn solutions_of_length(
        &self,
        m: &QuotientAutomaton,
        half: usize,
        odd: bool,
        limit: usize,
        out: &mut Vec<(Vec<u8>, Option<u8>)>,
    ) {
        let middles: Vec<Option<u8>> = if odd {
            m.middle_digits().iter().map(|&d| Some(d)).collect()
        } else {
            vec![None]
        };
        // good[j][i]: state i of layer j reaches a finishing state of layer `half`.
        let mut good: Vec<Vec<bool>> = vec![Vec::new(); half + 1];
        good[half] = self.layers[half]
            .iter()
            .map(|s| middles.iter().any(|&mid| m.completes_with(s, mid)))
            .collect();
        if !good[half].iter().any(|&g| g) {
            return;
        }
        let k = m.digit_count();
        for j in (0..half).rev() {
            let (above, index) = (&good[j + 1], &self.index[j + 1]);
            good[j] = self.layers[j]
                .iter()
                .map(|s| {
                    (0..k).any(|a| {
                        (0..k).any(|b| {
                            m.read(s, a, b)
                                .and_then(|n| index.get(&n))
                                .is_some_and(|&i| above[i as usize])
                        })
                    })
                })
                .collect();
        }
        let current: Vec<u32> = (0..self.layers[0].len() as u32)
            .filter(|&i| good[0][i as usize])
            .collect();
        // Digits of b ordered by the high digit of B they produce.
        let mut order: Vec<u8> = (0..k).collect();
        order.sort_by_key(|&d| m.mirror(d));
        let mut prefix = Vec::with_capacity(half);
        self.descend(
            m,
            &good,
            &order,
            &middles,
            &current,
            &mut prefix,
            limit,
            out,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        m: &QuotientAutomaton,
        good: &[Vec<bool>],
        order: &[u8],
        middles: &[Option<u8>],
        current: &[u32],
        prefix: &mut Vec<u8>,
        limit: usize,
        out: &mut Vec<(Vec<u8>, Option<u8>)>,
    ) {
        let j = prefix.len();
        let half = good.len() - 1;
        if j == half {
            for &mid in middles {
                if out.len() >= limit {
                    return;
                }
                let layer = &self.layers[j];
                if current
                    .iter()
                    .any(|&i| m.completes_with(&layer[i as usize], mid))
                {
                    out.push((prefix.clone(), mid));
                }
            }
            return;
        }
        let k = m.digit_count();
        for &b in order {
            if out.len() >= limit {
                return;
            }
            let mut next: Vec<u32> = Vec::new();
            for &i in current {
                let s = &self.layers[j][i as usize];
                for a in 0..k {
                    if let Some(&n) = m.read(s, a, b).and_then(|n| self.index[j + 1].get(&n)) {
                        if good[j + 1][n as usize] && !next.contains(&n) {
                            next.push(n);
                        }
                    }
                }
            }
            if !next.is_empty() {
                prefix.push(b);
                self.descend(m, good, order, middles, &next, prefix, limit, out);
                prefix.pop();
            }
        }
    }
}

/// The explicit accessible graph of `b`-reading states.
struct StateGraph {
    states: Vec<SearchState>,
    /// Successor lists, one entry per labelled edge.
    edges: Vec<Vec<u32>>,
    /// Number of accepting completions at each state.
    weights: Vec<u64>,
    starts: Vec<u32>,
}

impl StateGraph {
    fn build(m: &QuotientAutomaton, meter: &mut Meter) -> Result<Self> {
        let k = m.digit_count();
        let mut index: FxHashMap<SearchState, u32> = FxHashMap::default();
        let mut states = Vec::new();
        let mut starts = Vec::new();
        for s in m.start_states() {
            meter.tick()?;
            starts.push(states.len() as u32);
            index.insert(s, states.len() as u32);
            states.push(s);
        }
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let state = states[i];
            let mut out = Vec::new();
            for a in 0..k {
                for b in 0..k {
                    if let Some(next) = m.read(&state, a, b) {
                        let id = match index.get(&next) {
                            Some(&id) => id,
                            None => {
                                meter.tick()?;
                                let id = states.len() as u32;
                                index.insert(next, id);
                                states.push(next);
                                id
                            }
                        };
                        out.push(id);
                    }
                }
            }
            edges.push(out);
            weights.push(m.completions(&state).len() as u64);
            i += 1;
        }
        Ok(StateGraph {
            states,
            edges,
            weights,
            starts,
        })
    }

    fn reverse_edges(&self) -> Vec<Vec<u32>> {
        let mut rev = vec![Vec::new(); self.states.len()];
        for (from, out) in self.edges.iter().enumerate() {
            for &to in out {
                rev[to as usize].push(from as u32);
            }
        }
        rev
    }

    /// States from which some accepting completion is reachable.
    fn co_accessible(&self) -> Vec<bool> {
        let rev = self.reverse_edges();
        let mut mark = vec![false; self.states.len()];
        let mut stack: Vec<u32> = Vec::new();
        for (i, &w) in self.weights.iter().enumerate() {
            if w > 0 {
                mark[i] = true;
                stack.push(i as u32);
            }
        }
        while let Some(x) = stack.pop() {
            for &y in &rev[x as usize] {
                if !mark[y as usize] {
                    mark[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        mark
    }

    /// Topological order of the kept states, or the leftover states that
    /// lie on or behind a cycle.
    fn topological(&self, keep: &[bool]) -> std::result::Result<Vec<u32>, Vec<bool>> {
        let n = self.states.len();
        let mut indegree = vec![0usize; n];
        for (from, out) in self.edges.iter().enumerate() {
            if keep[from] {
                for &to in out {
                    if keep[to as usize] {
                        indegree[to as usize] += 1;
                    }
                }
            }
        }
        let mut ready: Vec<u32> = (0..n as u32)
            .filter(|&i| keep[i as usize] && indegree[i as usize] == 0)
            .collect();
        let mut order = Vec::new();
        while let Some(x) = ready.pop() {
            order.push(x);
            for &to in &self.edges[x as usize] {
                if keep[to as usize] {
                    indegree[to as usize] -= 1;
                    if indegree[to as usize] == 0 {
                        ready.push(to);
                    }
                }
            }
        }
        let kept = keep.iter().filter(|&&x| x).count();
        if order.len() == kept {
            Ok(order)
        } else {
            Err((0..n).map(|i| keep[i] && indegree[i] > 0).collect())
        }
    }

    fn find_cycle(&self, keep: &[bool]) -> Option<Vec<SearchState>> {
        let leftover = self.topological(keep).err()?;
        // Every leftover state has a leftover predecessor; walking
        // predecessors must revisit a state.
        let rev = self.reverse_edges();
        let mut x = leftover.iter().position(|&l| l).expect("non-empty") as u32;
        let mut seen: FxHashMap<u32, usize> = FxHashMap::default();
        let mut walk = Vec::new();
        loop {
            if let Some(&at) = seen.get(&x) {
                let mut cycle: Vec<SearchState> = walk[at..]
                    .iter()
                    .map(|&i: &u32| self.states[i as usize])
                    .collect();
                cycle.reverse();
                return Some(cycle);
            }
            seen.insert(x, walk.len());
            walk.push(x);
            x = *rev[x as usize]
                .iter()
                .find(|&&y| leftover[y as usize])
                .expect("leftover state has a leftover predecessor");
        }
    }

    fn count_paths(&self, keep: &[bool]) -> Natural {
        let order = self.topological(keep).expect("acyclic");
        let mut paths = vec![Natural::zero(); self.states.len()];
        for &s in &self.starts {
            if keep[s as usize] {
                paths[s as usize] = Natural::one();
            }
        }
        let mut total = Natural::zero();
        for &x in &order {
            let here = std::mem::take(&mut paths[x as usize]);
            if here.is_zero() {
                continue;
            }
            total += &here * self.weights[x as usize];
            for &to in &self.edges[x as usize] {
                if keep[to as usize] {
                    paths[to as usize] += &here;
                }
            }
        }
        total
    }

    /// The largest number of reads on any accepting run.
    fn longest_half(&self, keep: &[bool]) -> usize {
        let order = self.topological(keep).expect("acyclic");
        let mut depth: Vec<Option<usize>> = vec![None; self.states.len()];
        for &s in &self.starts {
            if keep[s as usize] {
                depth[s as usize] = Some(0);
            }
        }
        let mut longest = 0;
        for &x in &order {
            let Some(d) = depth[x as usize] else { continue };
            if self.weights[x as usize] > 0 {
                longest = longest.max(d);
            }
            for &to in &self.edges[x as usize] {
                if keep[to as usize] {
                    let slot = &mut depth[to as usize];
                    *slot = Some(slot.map_or(d + 1, |e| e.max(d + 1)));
                }
            }
        }
        longest
    }
}

pub fn decide(target: &Target, budget: Budget) -> Result<Decision> {
    Search::new(*target, budget).decide()
}

pub fn smallest(target: &Target, budget: Budget) -> Result<Option<Representation>> {
    Search::new(*target, budget).smallest()
}

pub fn classify(target: &Target, budget: Budget) -> Result<SolutionClass> {
    Search::new(*target, budget).classify(WITNESS_LIMIT)
}

pub fn count(target: &Target, budget: Budget) -> Result<Option<Natural>> {
    Search::new(*target, budget).count()
}

pub fn enumerate(target: &Target, budget: Budget, limit: usize) -> Result<Vec<Representation>> {
    Search::new(*target, budget).enumerate(limit)
}

/// Upper bound on `|(A)_k|` for the smallest representation of an integer
/// `N`: `2 * (c + k^c * N^2 + ceil(c/2)) + 1` with `c = ceil(log_k N)`.
pub fn size_bound_smallest_a(target: &Target) -> Result<Natural> {
    if !target.is_integer() {
        return Err(Error::Precondition(format!(
            "size bound needs an integer target, got {target}"
        )));
    }
    let (_, c) = target.log_bounds();
    let k = BigUint::from(target.base().get());
    let n = BigUint::from(target.p());
    let inner = BigUint::from(c) + k.pow(c) * &n * &n + BigUint::from(c.div_ceil(2));
    Ok(inner * 2u32 + 1u32)
}

/// `A_i = [(A) 0^i (A)]` and `B_i = [(B) 0^(i+d) (B)]` with
/// `d = |(A)| - |(B)|`; both scale by the same factor, so the quotient is
/// unchanged.
pub fn pump_solution(rep: &Representation, i: usize) -> Result<Representation> {
    if rep.shape != Shape::Palindrome || rep.base != Base::BINARY {
        return Err(Error::Precondition(
            "pumping is defined for binary palindromes".into(),
        ));
    }
    let (a, b) = (rep.numerator_digits(), rep.denominator_digits());
    let zeros = |len: usize| DigitString::from_trusted(vec![0; len], Base::BINARY);
    let (long, short) = if a.len() >= b.len() {
        (&a, &b)
    } else {
        (&b, &a)
    };
    let d = long.len() - short.len();
    let long_i = long.concat(&zeros(i)).concat(long);
    let short_i = short.concat(&zeros(i + d)).concat(short);
    let (a_i, b_i) = if a.len() >= b.len() {
        (long_i, short_i)
    } else {
        (short_i, long_i)
    };
    Ok(Representation {
        numerator: numerals::from_digits(&a_i)?,
        denominator: numerals::from_digits(&b_i)?,
        base: rep.base,
        shape: rep.shape,
    })
}

/// The antipalindromic pairs for `N = 2^(2n+1) - 2^n`:
/// `B_i = [1 (0^(n+2) 1^(n+2))^i 0]` and
/// `A_i = N * B_i = [1^(n+1) (0 1^n 0 1 0^n 1)^i 0^(n+1)]`.
pub fn apal_infinite_family(n: usize, i: usize) -> Result<Representation> {
    if n == 0 {
        return Err(Error::Precondition("family needs n >= 1".into()));
    }
    let bits = |s: String| DigitString::parse(&s, Base::BINARY).expect("binary literal");
    let b = bits(format!(
        "1{}0",
        format!("{}{}", "0".repeat(n + 2), "1".repeat(n + 2)).repeat(i)
    ));
    let a = bits(format!(
        "{}{}{}",
        "1".repeat(n + 1),
        format!("0{}01{}1", "1".repeat(n), "0".repeat(n)).repeat(i),
        "0".repeat(n + 1)
    ));
    let big_n = (Natural::one() << (2 * n + 1)) - (Natural::one() << n);
    let (a, b) = (numerals::from_digits(&a)?, numerals::from_digits(&b)?);
    if a != &b * &big_n {
        return Err(Error::Precondition(format!(
            "closed form disagrees with N * B for n = {n}, i = {i}"
        )));
    }
    Ok(Representation {
        numerator: a,
        denominator: b,
        base: Base::BINARY,
        shape: Shape::Antipalindrome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pal(n: u64) -> Target {
        Target::integer(n, Base::BINARY, Shape::Palindrome).unwrap()
    }

    fn apal(n: u64) -> Target {
        Target::integer(n, Base::BINARY, Shape::Antipalindrome).unwrap()
    }

    fn pair(r: &Representation) -> (u64, u64) {
        (
            u64::try_from(&r.numerator).unwrap(),
            u64::try_from(&r.denominator).unwrap(),
        )
    }

    #[test]
    fn smallest_small_cases() {
        for (n, want) in [
            (1, (1, 1)),
            (3, (3, 1)),
            (11, (33, 3)),
            (19, (513, 27)),
            (79, (888987, 11253)),
        ] {
            let r = smallest(&pal(n), Budget::default()).unwrap().unwrap();
            assert_eq!(pair(&r), want, "N = {n}");
        }
        for (n, want) in [(5, (10, 2)), (15, (150, 10))] {
            let r = smallest(&apal(n), Budget::default()).unwrap().unwrap();
            assert_eq!(pair(&r), want, "N = {n}");
        }
    }

    #[test]
    fn unrepresentable_small_cases() {
        for n in [23, 25, 35, 2, 4] {
            assert!(
                !decide(&pal(n), Budget::default()).unwrap().representable,
                "N = {n}"
            );
        }
        assert!(!decide(&apal(2), Budget::default()).unwrap().representable);
    }

    #[test]
    fn counts_are_finite_or_infinite() {
        assert_eq!(
            count(&apal(5), Budget::default()).unwrap(),
            Some(Natural::from(1u32))
        );
        assert_eq!(
            count(&apal(17), Budget::default()).unwrap(),
            Some(Natural::from(2u32))
        );
        assert_eq!(
            count(&pal(23), Budget::default()).unwrap(),
            Some(Natural::zero())
        );
        assert!(classify(&pal(3), Budget::default()).unwrap().is_infinite());
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        let t = pal(3);
        let reps = enumerate(&t, Budget::default(), 10).unwrap();
        assert_eq!(reps.len(), 10);
        for w in reps.windows(2) {
            assert!(w[0].denominator < w[1].denominator);
        }
        assert!(reps.iter().all(|r| r.verify(&t)));
    }

    #[test]
    fn rationals_round_trip_orientation() {
        let t = Target::rational(979, 765, Base::BINARY, Shape::Palindrome).unwrap();
        let r = smallest(&t, Budget::default()).unwrap().unwrap();
        assert!(r.verify(&t));
        let t = Target::rational(765, 979, Base::BINARY, Shape::Palindrome).unwrap();
        let s = smallest(&t, Budget::default()).unwrap().unwrap();
        assert!(s.verify(&t));
        assert_eq!((s.numerator, s.denominator), (r.denominator, r.numerator));
    }

    #[test]
    fn size_bound_examples() {
        assert_eq!(
            size_bound_smallest_a(&pal(3)).unwrap(),
            Natural::from(79u32)
        );
        assert_eq!(
            size_bound_smallest_a(&pal(35)).unwrap(),
            Natural::from(2u64 * (6 + 64 * 1225 + 3) + 1)
        );
        let r = Target::rational(3, 2, Base::BINARY, Shape::Palindrome).unwrap();
        assert!(size_bound_smallest_a(&r).is_err());
    }

    #[test]
    fn pumping_examples() {
        let one = Representation {
            numerator: Natural::one(),
            denominator: Natural::one(),
            base: Base::BINARY,
            shape: Shape::Palindrome,
        };
        let p = pump_solution(&one, 1).unwrap();
        assert_eq!(pair(&p), (5, 5));
        let three = Representation {
            numerator: Natural::from(3u32),
            ..one.clone()
        };
        assert_eq!(pair(&pump_solution(&three, 2).unwrap()), (51, 17));
        let eleven = Representation {
            numerator: Natural::from(33u32),
            denominator: Natural::from(3u32),
            ..one.clone()
        };
        let p = pump_solution(&eleven, 0).unwrap();
        assert!(p.verify(&pal(11)));
        let apal_rep = Representation {
            shape: Shape::Antipalindrome,
            ..one
        };
        assert!(pump_solution(&apal_rep, 1).is_err());
    }

    #[test]
    fn antipalindrome_family_examples() {
        assert_eq!(pair(&apal_infinite_family(1, 0).unwrap()), (12, 2));
        let r = apal_infinite_family(1, 1).unwrap();
        assert_eq!(r.denominator_digits().to_string(), "10001110");
        assert!(r.verify(&apal(6)));
        assert!(apal_infinite_family(2, 2).unwrap().verify(&apal(28)));
        assert!(apal_infinite_family(0, 1).is_err());
    }

    #[test]
    fn classification_witnesses() {
        match classify(&apal(17), Budget::default()).unwrap() {
            SolutionClass::Finite { count, witnesses } => {
                assert_eq!(count, Natural::from(2u32));
                assert_eq!(witnesses.len(), 2);
                assert!(witnesses.iter().all(|w| w.verify(&apal(17))));
            }
            other => panic!("unexpected {other:?}"),
        }
        match classify(&apal(6), Budget::default()).unwrap() {
            SolutionClass::Infinite { witness, cycle } => {
                assert!(witness.verify(&apal(6)));
                assert!(!cycle.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            classify(&pal(35), Budget::default()).unwrap(),
            SolutionClass::None
        );
    }

    #[test]
    fn budget_is_enforced() {
        match decide(&pal(2551), Budget::states(1000)) {
            Err(Error::BudgetExhausted { states_visited, .. }) => assert!(states_visited > 1000),
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }
}
