//! Known values and bounds for `A(n,d)`, `A(n,d,w)`, `A_q(N,D)` and covering
//! radii, with completion of missing `A(n,d)` entries by monotonicity.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::combinatorics::binom;
use crate::error::{Error, Result};
use crate::interval::BoundInterval;

/// Largest length covered by the `A(n,d)` completion grid.
pub const GRID_MAX_N: u32 = 64;

pub const DEFAULT_TABLE_FILE: &str = "knowns-2010.json";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Quantity {
    A,
    Aw,
    Aq,
    #[serde(rename = "R", alias = "CoveringRadius")]
    CoveringRadius,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownValueRecord {
    pub quantity: Quantity,
    pub n: u32,
    pub d: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    pub lower: u128,
    pub upper: u128,
    pub source: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RecordKey {
    pub quantity: Quantity,
    pub n: u32,
    pub d: u32,
    pub w: Option<u32>,
    pub q: Option<u32>,
}

impl fmt::Display for RecordKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.quantity {
            Quantity::A => write!(f, "A({},{})", self.n, self.d),
            Quantity::Aw => write!(f, "A({},{},{})", self.n, self.d, self.w.unwrap_or(0)),
            Quantity::Aq => write!(f, "A_{}({},{})", self.q.unwrap_or(0), self.n, self.d),
            Quantity::CoveringRadius => write!(f, "R({},{})", self.n, self.d),
        }
    }
}

impl KnownValueRecord {
    pub fn key(&self) -> RecordKey {
        RecordKey { quantity: self.quantity, n: self.n, d: self.d, w: self.w, q: self.q }
    }

    fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidRecord { key: self.key().to_string(), reason });
        if self.n == 0 || self.d == 0 || self.d > self.n {
            return bad(format!("need 1 <= d <= n, got n={} d={}", self.n, self.d));
        }
        if self.lower > self.upper {
            return bad(format!("lower {} > upper {}", self.lower, self.upper));
        }
        if self.quantity != Quantity::Aw && self.w.is_some() {
            return bad("only Aw records carry a weight".into());
        }
        if self.quantity != Quantity::Aq && self.q.is_some() {
            return bad("only Aq records carry an alphabet size".into());
        }
        let size_cap = match self.quantity {
            Quantity::A | Quantity::Aw | Quantity::CoveringRadius if self.n > GRID_MAX_N => {
                return bad(format!("length above {GRID_MAX_N}"));
            }
            Quantity::A => 1u128 << self.n,
            Quantity::Aw => match self.w {
                Some(w) if w <= self.n => binom(self.n, w),
                Some(w) => return bad(format!("weight {w} exceeds length")),
                None => return bad("Aw record without weight".into()),
            },
            Quantity::Aq => match self.q {
                Some(q) if q >= 2 => (q as u128).checked_pow(self.n).unwrap_or(u128::MAX),
                _ => return bad("Aq record needs q >= 2".into()),
            },
            Quantity::CoveringRadius => self.n as u128,
        };
        if self.quantity != Quantity::CoveringRadius && self.lower == 0 {
            return bad("lower bound must be at least 1".into());
        }
        if self.lower > size_cap {
            return bad(format!("lower {} exceeds the trivial maximum {size_cap}", self.lower));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TableFile {
    version: String,
    records: Vec<KnownValueRecord>,
}

#[derive(Clone, Debug)]
struct Side {
    value: u128,
    why: String,
}

#[derive(Clone, Debug)]
struct Cell {
    lo: Side,
    hi: Side,
}

/// Validated table plus the completed `A(n,d)` grid.
#[derive(Clone, Debug)]
pub struct KnownTable {
    pub version: String,
    records: BTreeMap<RecordKey, KnownValueRecord>,
    grid: Vec<Vec<Cell>>,
}

fn grid_index(n: u32, d: u32) -> (usize, usize) {
    (n as usize, d as usize)
}

impl KnownTable {
    pub fn empty() -> Self {
        Self::from_records("empty", Vec::new()).expect("the empty table is valid")
    }

    pub fn from_records(version: impl Into<String>, records: Vec<KnownValueRecord>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for r in records {
            r.validate()?;
            let key = r.key();
            if map.insert(key, r).is_some() {
                return Err(Error::InvalidRecord { key: key.to_string(), reason: "duplicate record".into() });
            }
        }
        let grid = complete_grid(&map)?;
        let table = Self { version: version.into(), records: map, grid };
        table.check_constant_weight()?;
        Ok(table)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text)?;
        Self::from_records(file.version, file.records)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// The shipped table from the asset directory.
    pub fn load_default() -> Result<Self> {
        Self::load(crate::exact::assets::asset_dir().join(DEFAULT_TABLE_FILE))
    }

    pub fn to_json(&self) -> Result<String> {
        let file = TableFile { version: self.version.clone(), records: self.records.values().cloned().collect() };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> impl Iterator<Item = &KnownValueRecord> {
        self.records.values()
    }

    pub fn get(&self, key: &RecordKey) -> Option<&KnownValueRecord> {
        self.records.get(key)
    }

    fn stored(&self, quantity: Quantity, n: u32, d: u32, w: Option<u32>, q: Option<u32>) -> Option<&KnownValueRecord> {
        self.records.get(&RecordKey { quantity, n, d, w, q })
    }

    /// Bounds on `A(n,d)`. `d > n` gives 1 (a single word), `d = 0` is read as 1.
    pub fn query_a(&self, n: u32, d: u32) -> BoundInterval {
        let d = d.max(1);
        if n == 0 || d > n {
            return interval(1, 1, "at most one word", "at most one word");
        }
        if n > GRID_MAX_N {
            let top = 1u128.checked_shl(n).unwrap_or(u128::MAX);
            return interval(1, top, "single word", "whole space");
        }
        let (i, j) = grid_index(n, d);
        let c = &self.grid[i][j];
        interval(c.lo.value, c.hi.value, &c.lo.why, &c.hi.why)
    }

    /// `(lower, upper)` of [`Self::query_aw`] without provenance.
    pub fn aw_bounds(&self, n: u32, d: u32, w: u32) -> (u128, u128) {
        if w > n || w == 0 || w == n || d > 2 * w.min(n - w) {
            return (1, 1);
        }
        let full = binom(n, w);
        if d <= 2 {
            return (full, full);
        }
        let (mut lo, mut hi) = (1, full);
        for ww in [w, n - w] {
            if let Some(r) = self.stored(Quantity::Aw, n, d, Some(ww), None) {
                if r.lower.max(1) <= hi && r.upper >= lo {
                    lo = lo.max(r.lower);
                    hi = hi.min(r.upper);
                }
            }
        }
        (lo, hi)
    }

    /// `(lower, upper)` of [`Self::query_a`] without provenance.
    pub fn a_bounds(&self, n: u32, d: u32) -> (u128, u128) {
        let d = d.max(1);
        if n == 0 || d > n {
            return (1, 1);
        }
        if n > GRID_MAX_N {
            return (1, 1u128.checked_shl(n).unwrap_or(u128::MAX));
        }
        let c = &self.grid[n as usize][d as usize];
        (c.lo.value, c.hi.value)
    }

    /// Bounds on `A(n,d,w)`: stored values for `w` or `n-w`, exact trivial
    /// cases, otherwise `[1, C(n,w)]`.
    pub fn query_aw(&self, n: u32, d: u32, w: u32) -> BoundInterval {
        if w > n {
            return interval(1, 1, "empty weight class", "empty weight class");
        }
        let m = w.min(n - w);
        if m == 0 {
            return interval(1, 1, "weight class of size one", "weight class of size one");
        }
        if d > 2 * m {
            return interval(1, 1, "distance exceeds 2 min(w, n-w)", "distance exceeds 2 min(w, n-w)");
        }
        let full = binom(n, w);
        if d <= 2 {
            return interval(full, full, "whole weight class", "whole weight class");
        }
        let mut out = interval(1, full, "single word", "whole weight class");
        for ww in [w, n - w] {
            if let Some(r) = self.stored(Quantity::Aw, n, d, Some(ww), None) {
                let src = format!("table: {}", r.source);
                let stored = interval(r.lower.max(1), r.upper, &src, &src);
                if let Ok(t) = out.intersect(&stored) {
                    out = t;
                }
            }
        }
        out
    }

    /// Bounds on `A_q(N,D)` when stored.
    pub fn query_aq(&self, q: u32, n: u32, d: u32) -> Option<BoundInterval> {
        self.stored(Quantity::Aq, n, d, None, Some(q)).map(|r| {
            let src = format!("table: {}", r.source);
            interval(r.lower, r.upper, &src, &src)
        })
    }

    /// Stored lower bound on `R(n,d)`, the largest covering radius of a code
    /// of size `A(n,d)`.
    pub fn covering_radius_lower(&self, n: u32, d: u32) -> Option<(u32, &str)> {
        self.stored(Quantity::CoveringRadius, n, d, None, None).map(|r| (r.lower as u32, r.source.as_str()))
    }

    fn check_constant_weight(&self) -> Result<()> {
        for r in self.records.values().filter(|r| r.quantity == Quantity::Aw) {
            let (n, d, w) = (r.n, r.d, r.w.unwrap_or(0));
            let q = self.query_aw(n, d, w);
            let other = self.stored(Quantity::Aw, n, d, Some(n - w), None);
            let clash = r.lower > q.upper
                || r.upper < q.lower
                || other.is_some_and(|o| o.lower > r.upper || r.lower > o.upper);
            if clash {
                return Err(Error::InvalidRecord {
                    key: r.key().to_string(),
                    reason: format!("[{}, {}] contradicts the derived interval {q} ({} / {})", r.lower, r.upper, q.lower_provenance, q.upper_provenance),
                });
            }
        }
        Ok(())
    }
}

fn interval(lower: u128, upper: u128, lp: &str, up: &str) -> BoundInterval {
    BoundInterval { lower, upper, lower_provenance: lp.to_string(), upper_provenance: up.to_string() }
}

/// Fixpoint of the stored `A(n,d)` records under: `A(n,1) = 2^n`,
/// `A(n,n) = 2`, `A` non-increasing in `d`, `A(n,d) <= 2 A(n-1,d)` and
/// `A(n-1,d) <= A(n,d)`.
fn complete_grid(records: &BTreeMap<RecordKey, KnownValueRecord>) -> Result<Vec<Vec<Cell>>> {
    let nmax = GRID_MAX_N;
    let side = |value: u128, why: &str| Side { value, why: why.to_string() };
    let mut g: Vec<Vec<Cell>> = (0..=nmax)
        .map(|n| {
            (0..=n)
                .map(|d| {
                    let top = if n == 0 { 1 } else { 1u128 << n };
                    let mut c = Cell { lo: side(1, "single word"), hi: side(top, "whole space") };
                    if d == 1 {
                        c.lo = side(top, "whole space");
                    }
                    if d == n && n >= 1 {
                        c.lo = side(2, "a word and its complement");
                        c.hi = side(2, "words at distance n are complements");
                    }
                    c
                })
                .collect()
        })
        .collect();
    let conflict = |n: u32, d: u32, c: &Cell| Error::InvalidRecord {
        key: format!("A({n},{d})"),
        reason: format!("completion gives lower {} ({}) > upper {} ({})", c.lo.value, c.lo.why, c.hi.value, c.hi.why),
    };
    for r in records.values().filter(|r| r.quantity == Quantity::A) {
        let c = &mut g[r.n as usize][r.d as usize];
        let src = format!("table: {}", r.source);
        if r.lower > c.lo.value {
            c.lo = side(r.lower, &src);
        }
        if r.upper < c.hi.value {
            c.hi = side(r.upper, &src);
        }
        if c.lo.value > c.hi.value {
            return Err(conflict(r.n, r.d, c));
        }
    }
    loop {
        let mut changed = false;
        for n in 1..=nmax {
            for d in 1..=n {
                let (ni, di) = (n as usize, d as usize);
                if d < n {
                    let next = g[ni][di + 1].clone();
                    if next.lo.value > g[ni][di].lo.value {
                        g[ni][di].lo = side(next.lo.value, &format!("monotone in d from A({n},{})", d + 1));
                        changed = true;
                    }
                    if g[ni][di].hi.value < next.hi.value {
                        g[ni][di + 1].hi = side(g[ni][di].hi.value, &format!("monotone in d from A({n},{d})"));
                        changed = true;
                    }
                }
                if d < n {
                    let prev = g[ni - 1][di].clone();
                    let cur = g[ni][di].clone();
                    if prev.hi.value.saturating_mul(2) < cur.hi.value {
                        g[ni][di].hi = side(prev.hi.value * 2, &format!("2 A({},{d})", n - 1));
                        changed = true;
                    }
                    if prev.lo.value > cur.lo.value {
                        g[ni][di].lo = side(prev.lo.value, &format!("extension of A({},{d}) by a zero", n - 1));
                        changed = true;
                    }
                    let half = cur.lo.value.div_ceil(2);
                    if half > g[ni - 1][di].lo.value {
                        g[ni - 1][di].lo = side(half, &format!("shortening A({n},{d})"));
                        changed = true;
                    }
                    if cur.hi.value < g[ni - 1][di].hi.value {
                        g[ni - 1][di].hi = side(cur.hi.value, &format!("A({n},{d}) bounds its shortened lengths"));
                        changed = true;
                    }
                }
            }
        }
        for n in 1..=nmax {
            for d in 1..=n {
                let c = &g[n as usize][d as usize];
                if c.lo.value > c.hi.value {
                    return Err(conflict(n, d, c));
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(g)
}
