//! Exact values at desk scale: maximum codes under weight filters, covering
//! radii, code assets and expurgation.

pub mod assets;
pub mod clique;
pub mod expurgation;

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{BinaryWord, Code};
use clique::{max_clique_with_orbits, Graph};

pub const MAX_SEARCH_LENGTH: u32 = 22;
pub const MAX_VERTICES: usize = 1 << 20;
/// Largest candidate set for the clique search (its adjacency is quadratic).
pub const MAX_GRAPH_VERTICES: usize = 1 << 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightFilter {
    Any,
    AtLeast(u32),
    AtMost(u32),
    Exactly(u32),
}

impl WeightFilter {
    pub fn accepts(&self, weight: u32) -> bool {
        match *self {
            WeightFilter::Any => true,
            WeightFilter::AtLeast(w) => weight >= w,
            WeightFilter::AtMost(w) => weight <= w,
            WeightFilter::Exactly(w) => weight == w,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub n: u32,
    pub d: u32,
    pub filter: WeightFilter,
    pub budget: Duration,
    pub incumbent: Option<Code>,
    /// A proven upper bound; the search stops as soon as it is attained.
    pub upper_cap: Option<usize>,
}

impl SearchSpec {
    pub fn new(n: u32, d: u32, filter: WeightFilter) -> Self {
        Self { n, d, filter, budget: Duration::from_secs(60), incumbent: None, upper_cap: None }
    }

    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    pub value: usize,
    pub witness: Code,
    pub proved_optimal: bool,
}

fn filtered_words(n: u32, filter: WeightFilter) -> Result<Vec<u64>> {
    let count: u128 = (0..=n)
        .filter(|&i| filter.accepts(i))
        .map(|i| crate::combinatorics::binom(n, i))
        .sum();
    if count as usize > MAX_VERTICES {
        return Err(Error::InvalidParameters(format!("{count} candidate words exceeds the search cap")));
    }
    Ok((0..1u64 << n).filter(|x| filter.accepts(x.count_ones())).collect())
}

fn to_code(n: u32, bits: impl IntoIterator<Item = u64>) -> Result<Code> {
    Code::from_bits(n as usize, bits)
}

fn check_spec(spec: &SearchSpec) -> Result<()> {
    if spec.n == 0 || spec.n > MAX_SEARCH_LENGTH {
        return Err(Error::InvalidParameters(format!("search length {} outside 1..={MAX_SEARCH_LENGTH}", spec.n)));
    }
    if spec.d == 0 {
        return Err(Error::InvalidParameters("minimum distance must be at least 1".into()));
    }
    if spec.budget.is_zero() {
        return Err(Error::InvalidParameters("search budget must be positive".into()));
    }
    Ok(())
}

/// Orbital branching is applied while fewer than this many words are chosen.
const ORBIT_DEPTH: usize = 4;

/// `None` if the deadline passes first.
fn compatibility_graph(words: &[u64], d: u32, deadline: Instant) -> Option<Graph> {
    let mut g = Graph::new(words.len());
    for (i, &a) in words.iter().enumerate() {
        if i % 256 == 0 && Instant::now() >= deadline {
            return None;
        }
        for (j, &b) in words.iter().enumerate().skip(i + 1) {
            if (a ^ b).count_ones() >= d {
                g.add_edge(i, j);
            }
        }
    }
    Some(g)
}

/// First-fit code over `words` in order.
fn greedy_code(words: &[u64], d: u32) -> Vec<u64> {
    let mut code: Vec<u64> = Vec::new();
    for &x in words {
        if code.iter().all(|&c| (c ^ x).count_ones() >= d) {
            code.push(x);
        }
    }
    code
}

/// Orbit of `words[v]` under the permutations of coordinates fixing every
/// word of `fixed` and every `words[r_i]`: coordinates are split into cells
/// by their column pattern and two words are equivalent iff they have the
/// same number of ones in every cell.
fn young_orbit(n: u32, words: &[u64], fixed: &[u64], r: &[usize], v: usize) -> Vec<usize> {
    let mut cells = vec![if n == 64 { u64::MAX } else { (1u64 << n) - 1 }];
    for w in fixed.iter().copied().chain(r.iter().map(|&i| words[i])) {
        cells = cells.iter().flat_map(|&c| [c & w, c & !w]).filter(|&c| c != 0).collect();
    }
    let sig = |x: u64| cells.iter().map(|&c| (x & c).count_ones()).collect::<Vec<_>>();
    let target = sig(words[v]);
    (0..words.len()).filter(|&u| sig(words[u]) == target).collect()
}

/// Largest code of length `n`, minimum distance `d`, all weights passing the filter.
pub fn max_code(spec: &SearchSpec) -> Result<ExactResult> {
    check_spec(spec)?;
    let n = spec.n;
    let words = filtered_words(n, spec.filter)?;
    if words.is_empty() {
        return Ok(ExactResult { value: 0, witness: Code::new(n as usize, [])?, proved_optimal: true });
    }
    if spec.d == 1 {
        let value = words.len();
        return Ok(ExactResult { value, witness: to_code(n, words)?, proved_optimal: true });
    }
    if spec.d == 2 {
        let set = max_independent_distance_one(n, &words);
        return Ok(ExactResult { value: set.len(), witness: to_code(n, set)?, proved_optimal: true });
    }
    if spec.d > n {
        return Ok(ExactResult { value: 1, witness: to_code(n, [words[0]])?, proved_optimal: true });
    }
    let deadline = Instant::now() + spec.budget;

    // For a weight-exact filter every nonempty code can be permuted to contain
    // the word with its ones in the low positions.
    let (fixed, candidates): (Option<u64>, Vec<u64>) = match spec.filter {
        WeightFilter::Exactly(w) => {
            let rep = (1u64 << w) - 1;
            let rest = words.iter().copied().filter(|&x| x != rep && (x ^ rep).count_ones() >= spec.d).collect();
            (Some(rep), rest)
        }
        _ => (None, words),
    };
    let offset = usize::from(fixed.is_some());
    if candidates.len() > MAX_GRAPH_VERTICES {
        return Err(Error::InvalidParameters(format!("{} candidate words exceeds the clique search cap", candidates.len())));
    }
    let Some(g) = compatibility_graph(&candidates, spec.d, deadline) else {
        let mut bits = greedy_code(&candidates, spec.d);
        bits.extend(fixed);
        let mut witness = to_code(n, bits)?;
        if let Some(c) = spec.incumbent.as_ref().filter(|c| c.size() > witness.size()) {
            witness = c.clone();
        }
        return Ok(ExactResult { value: witness.size(), witness, proved_optimal: false });
    };
    let fixed_words: Vec<u64> = fixed.into_iter().collect();
    let orbit = |r: &[usize], v: usize| young_orbit(n, &candidates, &fixed_words, r, v);
    let index_of = |x: u64| candidates.binary_search(&x).ok();
    let initial: Vec<usize> = match (&spec.incumbent, fixed) {
        (Some(c), None) => {
            let idx: Option<Vec<usize>> = c.words().iter().map(|w| index_of(w.bits())).collect();
            idx.unwrap_or_default()
        }
        _ => Vec::new(),
    };
    let cap = spec.upper_cap.map(|c| c.saturating_sub(offset));
    let r = max_clique_with_orbits(&g, &initial, cap, Some(deadline), Some((&orbit, ORBIT_DEPTH)));
    let mut bits: Vec<u64> = r.clique.iter().map(|&i| candidates[i]).collect();
    bits.extend(fixed);
    let witness = to_code(n, bits)?;
    let mut result = ExactResult { value: witness.size(), witness, proved_optimal: r.complete };
    if let Some(c) = &spec.incumbent {
        if c.size() > result.value && c.min_distance() >= spec.d && c.words().iter().all(|w| spec.filter.accepts(w.weight())) {
            result = ExactResult { value: c.size(), witness: c.clone(), proved_optimal: r.complete };
        }
    }
    Ok(result)
}

/// Maximum independent set of the distance-1 graph on `words` (a bipartite
/// graph split by weight parity), via Hopcroft-Karp and König's theorem.
fn max_independent_distance_one(n: u32, words: &[u64]) -> Vec<u64> {
    let index = |x: u64| words.binary_search(&x).ok();
    let left: Vec<usize> = (0..words.len()).filter(|&i| words[i].count_ones().is_multiple_of(2)).collect();
    let nbrs = |i: usize| (0..n).filter_map(move |b| index(words[i] ^ (1 << b)));
    const NONE: usize = usize::MAX;
    let mut mate = vec![NONE; words.len()];

    // Hopcroft-Karp
    loop {
        let mut dist = vec![NONE; words.len()];
        let mut queue = VecDeque::new();
        for &l in &left {
            if mate[l] == NONE {
                dist[l] = 0;
                queue.push_back(l);
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for r in nbrs(l) {
                match mate[r] {
                    NONE => found = true,
                    l2 if dist[l2] == NONE => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        fn augment(
            l: usize,
            dist: &mut [usize],
            mate: &mut [usize],
            nbrs: &dyn Fn(usize) -> Vec<usize>,
        ) -> bool {
            for r in nbrs(l) {
                let ok = match mate[r] {
                    NONE => true,
                    l2 => dist[l2] == dist[l] + 1 && augment(l2, dist, mate, nbrs),
                };
                if ok {
                    mate[l] = r;
                    mate[r] = l;
                    return true;
                }
            }
            dist[l] = NONE;
            false
        }
        let nb = |i: usize| nbrs(i).collect::<Vec<_>>();
        for &l in &left {
            if mate[l] == NONE {
                augment(l, &mut dist, &mut mate, &nb);
            }
        }
    }

    // König: Z = vertices reachable from free left vertices by alternating paths
    let mut in_z = vec![false; words.len()];
    let mut queue: VecDeque<usize> = left.iter().copied().filter(|&l| mate[l] == NONE).collect();
    for &l in &queue {
        in_z[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for r in nbrs(l) {
            if !in_z[r] {
                in_z[r] = true;
                let l2 = mate[r];
                if l2 != NONE && !in_z[l2] {
                    in_z[l2] = true;
                    queue.push_back(l2);
                }
            }
        }
    }
    (0..words.len())
        .filter(|&i| {
            let is_left = words[i].count_ones().is_multiple_of(2);
            if is_left {
                in_z[i]
            } else {
                !in_z[i]
            }
        })
        .map(|i| words[i])
        .collect()
}

/// Distance from every word of `{0,1}^n` to the nearest codeword.
pub fn distance_map(code: &Code) -> Result<Vec<u8>> {
    let n = code.length();
    if n > 24 {
        return Err(Error::InvalidParameters(format!("distance sweep over 2^{n} words is too large")));
    }
    let mut dist = vec![u8::MAX; 1 << n];
    let mut queue = VecDeque::new();
    for w in code.words() {
        dist[w.bits() as usize] = 0;
        queue.push_back(w.bits() as usize);
    }
    while let Some(x) = queue.pop_front() {
        for b in 0..n {
            let y = x ^ (1 << b);
            if dist[y] == u8::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    Ok(dist)
}

/// `max_x min_{c ∈ C} d(x, c)`.
pub fn covering_radius(code: &Code) -> Result<u32> {
    if code.size() == 0 {
        return Err(Error::InvalidParameters("covering radius of the empty code".into()));
    }
    Ok(distance_map(code)?.into_iter().max().unwrap_or(0) as u32)
}

/// Which quantity an exact computation targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    /// `A(n,d)`.
    A,
    /// `A(n,d,w)`.
    Aw,
    /// `B(n,d,w)`: all weights at least `w`.
    B,
    /// `L(n,d,w)`: all weights at most `w`.
    L,
}

/// `A(n,d)`. Uses the facts that an optimal code may be translated to
/// contain 0, that for even `d` it may be taken even-weight (puncture, then
/// add a parity bit), and `A(n, 2e-1) = A(n+1, 2e)`.
pub fn exact_a(n: u32, d: u32, budget: Duration) -> Result<ExactResult> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidParameters(format!("need n, d >= 1; got ({n},{d})")));
    }
    if d <= 2 || d > n {
        return max_code(&SearchSpec::new(n, d, WeightFilter::Any).with_budget(budget));
    }
    if d % 2 == 1 {
        let r = exact_a(n + 1, d + 1, budget)?;
        let punctured = to_code(n, r.witness.words().iter().map(|w| w.bits() >> 1))?;
        return Ok(ExactResult { value: punctured.size(), witness: punctured, proved_optimal: r.proved_optimal });
    }
    check_spec(&SearchSpec::new(n, d, WeightFilter::Any).with_budget(budget))?;
    let candidates: Vec<u64> = (1..1u64 << n).filter(|x| x.count_ones() % 2 == 0 && x.count_ones() >= d).collect();
    if candidates.len() > MAX_GRAPH_VERTICES {
        return Err(Error::InvalidParameters(format!("{} candidate words exceeds the clique search cap", candidates.len())));
    }
    let deadline = Instant::now() + budget;
    let Some(g) = compatibility_graph(&candidates, d, deadline) else {
        let mut bits = greedy_code(&candidates, d);
        bits.push(0);
        let witness = to_code(n, bits)?;
        return Ok(ExactResult { value: witness.size(), witness, proved_optimal: false });
    };
    let orbit = |r: &[usize], v: usize| young_orbit(n, &candidates, &[0], r, v);
    let res = max_clique_with_orbits(&g, &[], None, Some(deadline), Some((&orbit, ORBIT_DEPTH)));
    let mut bits: Vec<u64> = res.clique.iter().map(|&i| candidates[i]).collect();
    bits.push(0);
    let witness = to_code(n, bits)?;
    Ok(ExactResult { value: witness.size(), witness, proved_optimal: res.complete })
}

/// The best translate of `code` keeping only words of weight at least `w`.
fn best_heavy_translate(code: &Code, w: u32) -> Result<Code> {
    let n = code.length();
    let bits: Vec<u64> = code.words().iter().map(BinaryWord::bits).collect();
    let mut best = (0usize, 0u64);
    if n <= 16 {
        for x in 0u64..1 << n {
            let c = bits.iter().filter(|&&b| (b ^ x).count_ones() >= w).count();
            if c > best.0 {
                best = (c, x);
                if c == bits.len() {
                    break;
                }
            }
        }
    }
    let x = best.1;
    to_code(n as u32, bits.iter().filter(|&&b| (b ^ x).count_ones() >= w).map(|&b| b ^ x))
}

/// Exact value of `target` at `(n, d, w)` within the time budget.
pub fn exact_value(target: Target, n: u32, d: u32, w: u32, budget: Duration) -> Result<ExactResult> {
    if w > n {
        return Err(Error::InvalidParameters(format!("weight {w} exceeds length {n}")));
    }
    match target {
        Target::A => exact_a(n, d, budget),
        Target::Aw => max_code(&SearchSpec::new(n, d, WeightFilter::Exactly(w)).with_budget(budget)),
        Target::L => {
            let r = exact_value(Target::B, n, d, n - w, budget)?;
            Ok(ExactResult { value: r.value, witness: r.witness.complement(), proved_optimal: r.proved_optimal })
        }
        Target::B => {
            if w == 0 && d > 2 {
                return exact_a(n, d, budget);
            }
            if d <= 2 || d > n {
                let r = max_code(&SearchSpec::new(n, d, WeightFilter::AtLeast(w)).with_budget(budget))?;
                return Ok(r);
            }
            let start = Instant::now();
            let a = exact_a(n, d, budget)?;
            let incumbent = best_heavy_translate(&a.witness, w)?;
            if a.proved_optimal && incumbent.size() == a.value {
                return Ok(ExactResult { value: a.value, witness: incumbent, proved_optimal: true });
            }
            let mut spec = SearchSpec::new(n, d, WeightFilter::AtLeast(w))
                .with_budget(budget.saturating_sub(start.elapsed()).max(Duration::from_millis(1)));
            spec.incumbent = Some(incumbent);
            spec.upper_cap = a.proved_optimal.then_some(a.value);
            max_code(&spec)
        }
    }
}
