//! Exhaustive classification of MSTD sets of a given size and bounded
//! diameter, and density estimates for MSTD subsets of `{0, ..., n}`.
//!
//! The enumeration walks normalized sets (`0 ∈ A`, element gcd 1) in
//! lexicographic order of their element lists, split across workers by the
//! first nonzero element. Sets with diameter below 64 use single-word masks:
//! `A + A` is the OR of `A << a` in a `u128`, and the non-negative half of
//! `A - A` is the OR of `A >> a`.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MstdError, Result};
use crate::sets::{canonical_form, profile, representation_counts, IntSet};
use crate::stats::Proportion;

/// Default cap on visited sets.
pub const DEFAULT_VISIT_CAP: u64 = 1_000_000_000;

/// Largest `n` for exhaustive density computation.
pub const MAX_EXHAUSTIVE_N: u64 = 24;

/// Number of ordered pairs `(a, b) ∈ A × A` with `a + b = x`.
pub fn rep_count(a: &IntSet, x: u64) -> u64 {
    a.iter().filter(|&p| p <= x && a.contains(x - p)).count() as u64
}

fn max_rep_count(elems: &[u64]) -> u32 {
    let set = IntSet::new(elems.to_vec()).expect("enumerated sets are valid");
    representation_counts(&set).into_iter().max().unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub set_size: usize,
    pub max_diameter: u64,
    /// Keep only sets with some sum having at least this many ordered representations.
    pub rep_threshold: Option<u32>,
    /// Worker threads; 0 means the rayon default.
    pub workers: usize,
    pub visit_cap: u64,
}

impl SearchConfig {
    pub fn new(set_size: usize, max_diameter: u64) -> Self {
        SearchConfig {
            set_size,
            max_diameter,
            rep_threshold: None,
            workers: 0,
            visit_cap: DEFAULT_VISIT_CAP,
        }
    }

    pub fn rep_threshold(mut self, r: u32) -> Self {
        self.rep_threshold = Some(r);
        self
    }

    pub fn workers(mut self, w: usize) -> Self {
        self.workers = w;
        self
    }

    pub fn visit_cap(mut self, cap: u64) -> Self {
        self.visit_cap = cap;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.set_size < 2 {
            return Err(MstdError::Domain("set size must be at least 2".into()));
        }
        if self.max_diameter + 1 < self.set_size as u64 {
            return Err(MstdError::Domain(format!(
                "max diameter {} cannot hold {} elements",
                self.max_diameter, self.set_size
            )));
        }
        if self.max_diameter > crate::sets::MAX_DIAMETER {
            return Err(MstdError::DiameterTooLarge(self.max_diameter));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub config: SearchConfig,
    /// Canonical forms, deduplicated, in lexicographic order.
    pub canonical_reps: Vec<IntSet>,
    /// Normalized sets visited.
    pub enumerated_count: u64,
    #[serde(with = "duration_secs")]
    pub elapsed: Duration,
}

mod duration_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        d.as_secs_f64().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?))
    }
}

fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool")
        .install(f)
}

/// `(|A+A|, |A-A|)` for a set given as a bit mask with elements below 64.
#[inline]
fn mask_sizes(mask: u64) -> (u32, u32) {
    let mut sums: u128 = 0;
    let mut diffs: u64 = 0;
    let mut rest = mask;
    while rest != 0 {
        let a = rest.trailing_zeros();
        sums |= (mask as u128) << a;
        diffs |= mask >> a;
        rest &= rest - 1;
    }
    (sums.count_ones(), 2 * diffs.count_ones() - 1)
}

#[inline]
fn mask_is_mstd(mask: u64) -> bool {
    let (s, d) = mask_sizes(mask);
    s > d
}

struct Walker<'a> {
    config: &'a SearchConfig,
    visited: &'a AtomicU64,
    aborted: &'a AtomicBool,
    local_visits: u64,
    found: Vec<IntSet>,
    elems: Vec<u64>,
}

impl Walker<'_> {
    const FLUSH: u64 = 1 << 14;

    fn flush(&mut self) {
        if self.local_visits > 0 {
            let total =
                self.visited.fetch_add(self.local_visits, Ordering::Relaxed) + self.local_visits;
            self.local_visits = 0;
            if total > self.config.visit_cap {
                self.aborted.store(true, Ordering::Relaxed);
            }
        }
    }

    fn walk(&mut self, mask: u64, gcd: u64, remaining: usize) {
        if self.aborted.load(Ordering::Relaxed) {
            return;
        }
        let last = *self.elems.last().expect("0 is always present");
        if remaining == 0 {
            if gcd == 1 {
                self.leaf(mask);
            }
            return;
        }
        let hi = self.config.max_diameter - (remaining as u64 - 1);
        for next in last + 1..=hi {
            self.elems.push(next);
            let mask = if next < 64 { mask | 1 << next } else { 0 };
            self.walk(mask, gcd.gcd(&next), remaining - 1);
            self.elems.pop();
        }
    }

    fn leaf(&mut self, mask: u64) {
        self.local_visits += 1;
        if self.local_visits >= Self::FLUSH {
            self.flush();
        }
        let mstd = if self.config.max_diameter < 64 {
            mask_is_mstd(mask)
        } else {
            let set = IntSet::new(self.elems.clone()).expect("valid");
            profile(&set).is_mstd
        };
        if !mstd {
            return;
        }
        if let Some(r) = self.config.rep_threshold {
            if max_rep_count(&self.elems) < r {
                return;
            }
        }
        let set = IntSet::new(self.elems.clone()).expect("valid");
        self.found.push(canonical_form(&set));
    }
}

/// Every MSTD set of the configured size with `max ≤ max_diameter`, up to
/// affine equivalence.
pub fn enumerate_mstd(config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    let start = Instant::now();
    let visited = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let s = config.set_size;
    let first_max = config.max_diameter - (s as u64 - 2);

    let found: Vec<IntSet> = with_workers(config.workers, || {
        (1..=first_max)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut w = Walker {
                    config,
                    visited: &visited,
                    aborted: &aborted,
                    local_visits: 0,
                    found: Vec::new(),
                    elems: vec![0, first],
                };
                let mask = if first < 64 { 1 | 1 << first } else { 0 };
                w.walk(mask, first, s - 2);
                w.flush();
                w.found
            })
            .collect()
    });

    if aborted.load(Ordering::Relaxed) {
        return Err(MstdError::ResourceCap(config.visit_cap));
    }
    let mut reps = found;
    reps.sort_by(|a, b| a.elements().cmp(b.elements()));
    reps.dedup();
    Ok(SearchOutcome {
        config: *config,
        canonical_reps: reps,
        enumerated_count: visited.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    })
}

/// Size-9 MSTD sets with a sum having at least four ordered representations.
pub fn classify_size9_4rep(max_diameter: u64, workers: usize) -> Result<SearchOutcome> {
    enumerate_mstd(
        &SearchConfig::new(9, max_diameter)
            .rep_threshold(4)
            .workers(workers),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityMode {
    Exhaustive,
    Samples(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub n: u64,
    pub mode: DensityMode,
    pub seed: Option<u64>,
    pub mstd: Proportion,
}

fn bits_is_mstd(elems: &[u64]) -> bool {
    match IntSet::new(elems.to_vec()) {
        Ok(set) => profile(&set).is_mstd,
        Err(_) => false,
    }
}

/// Draws the subset of `{0..n}` for sample `index` and reports whether it is MSTD.
fn sample_is_mstd(n: u64, seed: u64, index: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    if n < 64 {
        let width = n + 1;
        let mask = rng.next_u64()
            & if width == 64 {
                u64::MAX
            } else {
                (1 << width) - 1
            };
        return mask != 0 && mask_is_mstd(mask);
    }
    let mut elems = Vec::new();
    let mut base = 0;
    while base <= n {
        let word = rng.next_u64();
        let take = (n - base + 1).min(64);
        elems.extend((0..take).filter(|b| word >> b & 1 == 1).map(|b| base + b));
        base += take;
    }
    !elems.is_empty() && bits_is_mstd(&elems)
}

/// Fraction of subsets of `{0, ..., n}` that are MSTD; the empty set counts as
/// not MSTD. Sample `i` is drawn from stream `i` of a ChaCha8 generator
/// seeded with `seed`.
pub fn mstd_density(
    n: u64,
    mode: DensityMode,
    seed: u64,
    workers: usize,
) -> Result<DensityEstimate> {
    let proportion = match mode {
        DensityMode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_N {
                return Err(MstdError::Domain(format!(
                    "exhaustive density needs n <= {MAX_EXHAUSTIVE_N}, got {n}"
                )));
            }
            let total = 1u64 << (n + 1);
            let hits = with_workers(workers, || {
                (1..total)
                    .into_par_iter()
                    .filter(|&m| mask_is_mstd(m))
                    .count() as u64
            });
            Proportion::new(hits, total)
        }
        DensityMode::Samples(samples) => {
            if samples == 0 {
                return Err(MstdError::Domain("need at least one sample".into()));
            }
            let hits = with_workers(workers, || {
                (0..samples)
                    .into_par_iter()
                    .filter(|&i| sample_is_mstd(n, seed, i))
                    .count() as u64
            });
            Proportion::new(hits, samples)
        }
    };
    Ok(DensityEstimate {
        n,
        mode,
        seed: matches!(mode, DensityMode::Samples(_)).then_some(seed),
        mstd: proportion,
    })
}
