//! Fixpoint combination of all rules over a grid of `B(n',d',w')` cells.
//!
//! Every cell starts from the direct rules; the Johnson recursion and the
//! monotonicity relations of `B` (non-increasing in `w` and `d`,
//! non-decreasing in `n`) then propagate bounds until nothing tightens.
//! All queries with `n <= DEFAULT_GRID_N` share the same grid, so answers
//! do not depend on which cell was asked for.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::BoundInterval;
use crate::tables::KnownTable;
use crate::zonal::bounds::{degree2_bound, elias_degree1, floor_rational};

use super::rules::*;
use super::{ProblemSpec, RuleResult, Side};

/// Smallest grid built by [`best_bounds`].
pub const DEFAULT_GRID_N: u32 = 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleSet {
    /// Only the inequalities of this module.
    Elementary,
    /// Also the closed-form polynomial bounds on `L`.
    #[default]
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsOptions {
    pub rules: RuleSet,
    /// Enables the self-dual lower bound, which is only proved for large `n`.
    pub asymptotic_rules: bool,
    /// Smallest `n` at which the self-dual bound is applied.
    pub selfdual_min_n: u32,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        Self { rules: RuleSet::All, asymptotic_rules: false, selfdual_min_n: 0 }
    }
}

/// A bound obtained outside this module (SDP, exact search, concatenation).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extra {
    pub spec: ProblemSpec,
    pub result: RuleResult,
}

impl Extra {
    pub fn lower(spec: ProblemSpec, value: u128, rule: impl Into<String>) -> Self {
        Self { spec, result: RuleResult::lower(value, rule, Vec::new()) }
    }

    pub fn upper(spec: ProblemSpec, value: u128, rule: impl Into<String>) -> Self {
        Self { spec, result: RuleResult::upper(value, rule, Vec::new()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsOutcome {
    pub spec: ProblemSpec,
    pub interval: BoundInterval,
    /// Every rule evaluated directly at the cell, then the binding sides.
    pub trace: Vec<RuleResult>,
}

#[derive(Clone, Debug)]
struct Cell {
    lo: u128,
    lo_why: String,
    hi: u128,
    hi_why: String,
}

pub struct BoundsEngine<'a> {
    table: &'a KnownTable,
    opts: BoundsOptions,
    max_n: u32,
    extras: Vec<Extra>,
    // cells[n][d][w], d in 1..=n, w in 0..=n
    cells: Vec<Vec<Vec<Cell>>>,
}

fn name(n: u32, d: u32, w: u32) -> String {
    format!("B({n},{d},{w})")
}

impl<'a> BoundsEngine<'a> {
    /// Builds and closes the grid of all cells with `n <= max_n`. Extras
    /// outside the grid are ignored.
    pub fn new(table: &'a KnownTable, opts: BoundsOptions, max_n: u32, extras: &[Extra]) -> Result<Self> {
        if max_n == 0 || max_n > 64 {
            return Err(Error::InvalidParameters(format!("grid size {max_n} outside 1..=64")));
        }
        let mut e = Self { table, opts, max_n, extras: extras.to_vec(), cells: Vec::new() };
        e.cells = (0..=max_n)
            .map(|n| {
                (0..=n)
                    .map(|d| {
                        (0..=n)
                            .map(|w| {
                                if d == 0 {
                                    return Cell { lo: 1, lo_why: String::new(), hi: 1, hi_why: String::new() };
                                }
                                let rules = e.direct_rules_at(n, d, w, false);
                                let mut c = Cell { lo: 1, lo_why: "single word".into(), hi: u128::MAX, hi_why: "none".into() };
                                for r in rules {
                                    match r.side {
                                        Side::Lower if r.value > c.lo => (c.lo, c.lo_why) = (r.value, r.rule),
                                        Side::Upper if r.value < c.hi => (c.hi, c.hi_why) = (r.value, r.rule),
                                        _ => {}
                                    }
                                }
                                c
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        e.check()?;
        e.close()?;
        Ok(e)
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    fn extras_at(&self, n: u32, d: u32, w: u32) -> impl Iterator<Item = &Extra> {
        self.extras.iter().filter(move |x| {
            let b = x.spec.to_b();
            (b.n, b.d, b.w) == (n, d, w)
        })
    }

    /// Direct rules at `B(n,d,w)`, in priority order per side.
    fn direct_rules_at(&self, n: u32, d: u32, w: u32, deps: bool) -> Vec<RuleResult> {
        let t = self.table;
        let dep = |v: Vec<String>| if deps { v } else { Vec::new() };
        let a = || format!("A({n},{d})");
        let classes = |step: usize| -> Vec<String> { (w..=n).step_by(step).map(|j| format!("A({n},{d},{j})")).collect() };
        let mut out = Vec::new();

        // lower side
        if w == 0 {
            out.push(RuleResult::lower(t.a_bounds(n, d).0, "weight-unconstrained", dep(vec![a()])));
        }
        if let Some(v) = translation_equal(n, d, w, t) {
            let (r, why) = covering_radius_lower(n, d, t);
            out.push(RuleResult::lower(v, "translation", dep(vec![a(), format!("R({n},{d}) >= {r} ({why})")])));
        }
        if let Some(v) = expurgation_lower(n, d, w, t) {
            out.push(RuleResult::lower(v, "expurgation", dep(vec![a()])));
        }
        out.push(RuleResult::lower(lower_single_class(n, d, w, t), "single-class", dep(classes(1))));
        out.push(RuleResult::lower(lower_stacked(n, d, w, t), "stacked", dep(classes(d as usize))));
        out.push(RuleResult::lower(gilbert_lower(n, d, w), "gilbert", Vec::new()));
        if self.opts.asymptotic_rules {
            if let Some(v) = selfdual_lower(n, d, w, self.opts.selfdual_min_n) {
                out.push(RuleResult::lower(v, "self-dual", Vec::new()));
            }
        }

        // upper side
        if let Some(v) = trivial_one(n, d, w) {
            out.push(RuleResult::upper(v, "trivial-one", Vec::new()));
        }
        if let Some(v) = translation_equal(n, d, w, t) {
            out.push(RuleResult::upper(v, "translation", dep(vec![a()])));
        }
        out.push(RuleResult::upper(upper_a(n, d, t), "unconstrained", dep(vec![a()])));
        out.push(RuleResult::upper(upper_class_sum(n, d, w, t), "class-sum", dep(classes(1))));
        if self.opts.rules == RuleSet::All {
            let wl = n - w;
            if let Some(r) = elias_degree1(n, d, wl) {
                out.push(RuleResult::upper(floor_rational(&r), "elias-degree1", dep(vec![format!("L({n},{d},{wl}) <= {r}")])));
            }
            if let Some(r) = degree2_bound(n, d, wl) {
                out.push(RuleResult::upper(floor_rational(&r), "degree2", dep(vec![format!("L({n},{d},{wl}) <= {r}")])));
            }
        }
        for x in self.extras_at(n, d, w) {
            out.push(x.result.clone());
        }
        out
    }

    fn check(&self) -> Result<()> {
        for n in 1..=self.max_n {
            for d in 1..=n {
                for w in 0..=n {
                    let c = &self.cells[n as usize][d as usize][w as usize];
                    if c.lo > c.hi {
                        return Err(Error::Inconsistent {
                            lower: c.lo,
                            upper: c.hi,
                            lower_rule: format!("{} at {}", c.lo_why, name(n, d, w)),
                            upper_rule: format!("{} at {}", c.hi_why, name(n, d, w)),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn close(&mut self) -> Result<()> {
        let nmax = self.max_n;
        loop {
            let mut changed = false;
            for n in 1..=nmax {
                for d in 1..=n {
                    for w in 0..=n {
                        changed |= self.relax(n, d, w);
                    }
                }
            }
            self.check()?;
            if !changed {
                return Ok(());
            }
        }
    }

    fn relax(&mut self, n: u32, d: u32, w: u32) -> bool {
        let (ni, di, wi) = (n as usize, d as usize, w as usize);
        let mut ups: Vec<(u128, String)> = Vec::new();
        let mut lows: Vec<(u128, String)> = Vec::new();
        {
            let g = &self.cells;
            if w >= 1 {
                let sub = if d > n - 1 { 1 } else { g[ni - 1][di][wi - 1].hi };
                if let Some(v) = johnson_upper(n, w, sub) {
                    ups.push((v, format!("johnson via {}", name(n - 1, d, w - 1))));
                }
                ups.push((g[ni][di][wi - 1].hi, format!("monotone in w via {}", name(n, d, w - 1))));
            }
            if d >= 2 {
                ups.push((g[ni][di - 1][wi].hi, format!("monotone in d via {}", name(n, d - 1, w))));
            }
            if n < self.max_n {
                ups.push((g[ni + 1][di][wi].hi, format!("monotone in n via {}", name(n + 1, d, w))));
                ups.push((g[ni + 1][di][wi + 1].hi, format!("monotone in n via {}", name(n + 1, d, w + 1))));
            }
            if w < n {
                lows.push((g[ni][di][wi + 1].lo, format!("monotone in w via {}", name(n, d, w + 1))));
            }
            if d < n {
                lows.push((g[ni][di + 1][wi].lo, format!("monotone in d via {}", name(n, d + 1, w))));
            }
            if d < n {
                if w < n {
                    lows.push((g[ni - 1][di][wi].lo, format!("extension by a zero of {}", name(n - 1, d, w))));
                }
                if w >= 1 {
                    lows.push((g[ni - 1][di][wi - 1].lo, format!("extension by a one of {}", name(n - 1, d, w - 1))));
                }
            }
        }
        let c = &mut self.cells[ni][di][wi];
        let mut changed = false;
        for (v, why) in ups {
            if v < c.hi {
                (c.hi, c.hi_why) = (v, why);
                changed = true;
            }
        }
        for (v, why) in lows {
            if v > c.lo {
                (c.lo, c.lo_why) = (v, why);
                changed = true;
            }
        }
        changed
    }

    fn cell(&self, spec: &ProblemSpec) -> Result<&Cell> {
        let b = spec.to_b();
        if b.n > self.max_n {
            return Err(Error::InvalidParameters(format!("{spec} is outside a grid of length {}", self.max_n)));
        }
        Ok(&self.cells[b.n as usize][b.d as usize][b.w as usize])
    }

    pub fn interval(&self, spec: &ProblemSpec) -> Result<BoundInterval> {
        let c = self.cell(spec)?;
        BoundInterval::new(c.lo, c.hi, c.lo_why.clone(), c.hi_why.clone())
    }

    /// Rules evaluated directly at the cell of `spec`, with dependencies.
    pub fn direct_rules(&self, spec: &ProblemSpec) -> Vec<RuleResult> {
        let b = spec.to_b();
        self.direct_rules_at(b.n, b.d, b.w, true)
    }

    pub fn outcome(&self, spec: &ProblemSpec) -> Result<BoundsOutcome> {
        let interval = self.interval(spec)?;
        let mut trace = self.direct_rules(spec);
        trace.push(RuleResult::lower(interval.lower, format!("binding: {}", interval.lower_provenance), Vec::new()));
        trace.push(RuleResult::upper(interval.upper, format!("binding: {}", interval.upper_provenance), Vec::new()));
        Ok(BoundsOutcome { spec: *spec, interval, trace })
    }
}

/// Best certified interval for `spec` from all rules, the table and the
/// extra bounds. Fails if two sources contradict each other.
pub fn best_bounds(spec: &ProblemSpec, table: &KnownTable, opts: &BoundsOptions, extras: &[Extra]) -> Result<BoundsOutcome> {
    let max_n = extras.iter().map(|x| x.spec.n).chain([spec.n, DEFAULT_GRID_N]).max().unwrap_or(DEFAULT_GRID_N);
    let engine = BoundsEngine::new(table, *opts, max_n.min(64), extras)?;
    engine.outcome(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::CodeQuantity;

    fn table() -> KnownTable {
        KnownTable::load_default().unwrap()
    }

    fn bb(n: u32, d: u32, w: u32) -> BoundInterval {
        best_bounds(&ProblemSpec::b(n, d, w).unwrap(), &table(), &BoundsOptions::default(), &[]).unwrap().interval
    }

    #[test]
    fn table_entries() {
        let i = bb(6, 4, 2);
        assert_eq!((i.lower, i.upper), (4, 4));
        let i = bb(8, 4, 5);
        assert_eq!(i.lower, 8);
        assert!(i.upper <= 16);
        let i = bb(14, 8, 13);
        assert_eq!((i.lower, i.upper), (1, 1));
    }

    #[test]
    fn complementation_is_exact() {
        let t = table();
        let e = BoundsEngine::new(&t, BoundsOptions::default(), 12, &[]).unwrap();
        for n in 1..=12 {
            for d in 1..=n {
                for w in 0..=n {
                    let l = e.interval(&ProblemSpec::new(CodeQuantity::L, n, d, w).unwrap()).unwrap();
                    let b = e.interval(&ProblemSpec::b(n, d, n - w).unwrap()).unwrap();
                    assert_eq!(l, b);
                }
            }
        }
    }

    #[test]
    fn inconsistent_extras_are_reported() {
        let spec = ProblemSpec::b(6, 4, 2).unwrap();
        let bad = Extra::upper(spec, 3, "bogus");
        match best_bounds(&spec, &table(), &BoundsOptions::default(), &[bad]) {
            Err(Error::Inconsistent { lower_rule, upper_rule, .. }) => {
                assert!(upper_rule.contains("bogus"), "{upper_rule}");
                assert!(!lower_rule.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn extras_propagate() {
        let spec = ProblemSpec::b(9, 4, 6).unwrap();
        let plain = bb(9, 4, 6);
        assert!(plain.upper > 12);
        let out = best_bounds(&spec, &table(), &BoundsOptions::default(), &[Extra::upper(spec, 12, "exact")]).unwrap();
        assert_eq!(out.interval.upper, 12);
        // B(10,4,7) <= 10 B(9,4,6) / 7
        let out = best_bounds(&ProblemSpec::b(10, 4, 7).unwrap(), &table(), &BoundsOptions::default(), &[Extra::upper(spec, 12, "x")]).unwrap();
        assert!(out.interval.upper <= 17);
    }

    #[test]
    fn trace_names_rules() {
        let out = best_bounds(&ProblemSpec::b(10, 4, 8).unwrap(), &table(), &BoundsOptions::default(), &[]).unwrap();
        // class sum gives 7, the degree one bound on L(10,4,2) gives 5
        assert_eq!(out.interval.upper, 5);
        assert!(out.trace.iter().any(|r| r.rule == "class-sum" && r.value == 7));
        assert!(out.trace.iter().any(|r| r.rule == "gilbert"));
    }

    #[test]
    fn grid_is_monotone_and_above_gilbert() {
        let t = table();
        let e = BoundsEngine::new(&t, BoundsOptions::default(), 14, &[]).unwrap();
        let iv = |n, d, w| e.interval(&ProblemSpec::b(n, d, w).unwrap()).unwrap();
        for n in 1..=14 {
            for d in 1..=n {
                for w in 0..=n {
                    let c = iv(n, d, w);
                    assert!(c.lower >= gilbert_lower(n, d, w));
                    if w < n {
                        let nxt = iv(n, d, w + 1);
                        assert!(nxt.lower <= c.lower && nxt.upper <= c.upper);
                    }
                    if d < n {
                        let nxt = iv(n, d + 1, w);
                        assert!(nxt.lower <= c.lower && nxt.upper <= c.upper);
                    }
                    if n < 14 {
                        let nxt = iv(n + 1, d, w);
                        assert!(nxt.lower >= c.lower && nxt.upper >= c.upper);
                    }
                }
            }
        }
    }

    #[test]
    fn elementary_rules_are_weaker() {
        let t = table();
        let opts = BoundsOptions { rules: RuleSet::Elementary, ..Default::default() };
        let el = BoundsEngine::new(&t, opts, 12, &[]).unwrap();
        let all = BoundsEngine::new(&t, BoundsOptions::default(), 12, &[]).unwrap();
        for n in 1..=12 {
            for d in 1..=n {
                for w in 0..=n {
                    let s = ProblemSpec::b(n, d, w).unwrap();
                    let (a, b) = (el.interval(&s).unwrap(), all.interval(&s).unwrap());
                    assert!(a.upper >= b.upper && a.lower <= b.lower);
                }
            }
        }
        let i = el.interval(&ProblemSpec::b(8, 4, 6).unwrap()).unwrap();
        assert!(i.lower == 4 && i.upper <= 6);
    }
}
