//! Explicit MSTD sets: the named catalog, the parametric families built as a
//! symmetric core plus one or two extra elements, base expansion and the
//! two-factor product embedding.
//!
//! Every parametric generator returns a [`ConstructionResult`] carrying the
//! pieces it was built from and a list of [`Fact`]s: the exact set identities
//! that make the construction work, each evaluated on the generated sets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{MstdError, Result};
use crate::sets::{diffset, profile, sumset, symmetry_report, IntSet};

/// Names accepted by [`catalog`].
pub const CATALOG_NAMES: [&str; 16] = [
    "A_1", "A_2", "A_3", "A_4", "A_5", "A_6", "A_7", "A_8", "A_9", "A_10", "A_11", "A_12", "A_13",
    "A_14", "A_15", "S4_X",
];

fn listed(v: &[u64]) -> IntSet {
    IntSet::new(v.to_vec()).expect("catalog literal is valid")
}

/// Canonical spelling of a catalog name (`a1`, `A_1`, `A1` all map to `A_1`).
pub fn catalog_key(name: &str) -> Option<&'static str> {
    let squashed: String = name
        .chars()
        .filter(|c| *c != '_' && *c != '-')
        .collect::<String>()
        .to_ascii_uppercase();
    CATALOG_NAMES
        .iter()
        .copied()
        .find(|k| k.replace('_', "") == squashed)
}

/// The named sets `A_1 .. A_15` and the 14-element set `S4_X`.
pub fn catalog(name: &str) -> Result<IntSet> {
    let key = catalog_key(name).ok_or_else(|| MstdError::UnknownCatalog(name.to_string()))?;
    let set = match key {
        "A_1" => listed(&[0, 2, 3, 4, 7, 11, 12, 14]),
        "A_2" => listed(&[0, 1, 2, 4, 7, 8, 12, 14, 15]),
        "A_3" => listed(&[0, 1, 2, 4, 5, 9, 12, 13, 14, 16, 17, 21, 24, 25, 26, 28, 29]),
        "A_4" => listed(&[0, 1, 2, 4, 5, 9, 12, 13, 14]),
        "A_5" => listed(&[0, 2, 3, 4, 7, 9, 13, 14, 16]),
        "A_6" => listed(&[0, 2, 3, 4, 7, 11, 12, 14, 16]),
        "A_7" => listed(&[0, 2, 3, 4, 7, 11, 15, 16, 18]),
        "A_8" => listed(&[0, 2, 4, 8, 9, 10, 15, 17, 19]),
        "A_9" => listed(&[0, 4, 6, 7, 8, 14, 15, 17, 21]),
        "A_10" => listed(&[0, 5, 6, 9, 10, 13, 16, 17, 22]),
        "A_11" => listed(&[0, 4, 6, 8, 11, 14, 19, 21, 25]),
        "A_12" => listed(&[0, 1, 2, 4, 5, 9, 12, 13, 14, 16, 17]),
        "A_13" => listed(&[0, 1, 2, 4, 7, 8, 12, 14, 15, 18, 19, 20]),
        "A_14" => listed(&[
            0, 2, 4, 5, 9, 12, 13, 14, 16, 21, 23, 25, 26, 30, 33, 34, 35, 37, 42, 44, 46, 47, 51,
            54, 55, 56, 58,
        ]),
        "A_15" => listed(&[
            0, 1, 2, 4, 5, 9, 12, 13, 17, 20, 21, 22, 24, 25, 29, 32, 33, 37, 40, 41, 42, 44, 45,
        ]),
        "S4_X" => listed(&[0, 1, 2, 4, 5, 9, 12, 13, 17, 20, 21, 22, 24, 25]),
        _ => unreachable!("catalog_key only returns listed names"),
    };
    Ok(set)
}

/// Construction family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    T2,
    T3,
    T4,
    T5,
    T6,
    BaseExpand,
    ProductEmbed,
    Catalog,
}

impl FromStr for Family {
    type Err = MstdError;

    fn from_str(s: &str) -> Result<Self> {
        let f = match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "t2" | "theorem2" => Family::T2,
            "t3" | "theorem3" => Family::T3,
            "t4" | "theorem4" => Family::T4,
            "t5" | "theorem5" => Family::T5,
            "t6" | "theorem6" => Family::T6,
            "baseexpand" | "base" => Family::BaseExpand,
            "productembed" | "product" => Family::ProductEmbed,
            "catalog" => Family::Catalog,
            _ => {
                return Err(MstdError::Domain(format!(
                    "unknown construction family `{s}`"
                )))
            }
        };
        Ok(f)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One named set identity, evaluated on concrete sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub name: String,
    pub holds: bool,
}

impl Fact {
    fn new(name: impl Into<String>, holds: bool) -> Self {
        Fact {
            name: name.into(),
            holds,
        }
    }
}

/// Output of a parametric construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub family: Family,
    /// `A`.
    pub primary_set: IntSet,
    /// `A*` for T5, the extended set for T6.
    pub companion_set: Option<IntSet>,
    /// `B`, the symmetric core.
    pub symmetric_core: Option<IntSet>,
    /// `m` with `B = m - B`.
    pub core_center: Option<u64>,
    pub claimed_delta: Option<i64>,
    pub claimed_companion_delta: Option<i64>,
    pub verified: bool,
    pub facts: Vec<Fact>,
}

impl ConstructionResult {
    fn from_parts(
        family: Family,
        primary: IntSet,
        companion: Option<IntSet>,
        core: Option<(IntSet, u64)>,
        claimed: Option<i64>,
        claimed_companion: Option<i64>,
        facts: Vec<Fact>,
    ) -> Self {
        let delta_ok = claimed.is_none_or(|d| profile(&primary).delta == d);
        let companion_ok = match (&companion, claimed_companion) {
            (Some(c), Some(d)) => profile(c).delta == d,
            _ => true,
        };
        let core_ok = core
            .as_ref()
            .is_none_or(|(b, _)| symmetry_report(b).is_symmetric);
        let (symmetric_core, core_center) = match core {
            Some((b, m)) => (Some(b), Some(m)),
            None => (None, None),
        };
        ConstructionResult {
            family,
            primary_set: primary,
            companion_set: companion,
            symmetric_core,
            core_center,
            claimed_delta: claimed,
            claimed_companion_delta: claimed_companion,
            verified: delta_ok && companion_ok && core_ok,
            facts,
        }
    }

    pub fn all_facts_hold(&self) -> bool {
        self.facts.iter().all(|f| f.holds)
    }
}

fn domain(msg: impl Into<String>) -> MstdError {
    MstdError::Domain(msg.into())
}

fn pow2(e: u64) -> Result<u64> {
    if e >= 62 {
        return Err(MstdError::Overflow(format!("computing 2^{e}")));
    }
    Ok(1u64 << e)
}

fn set_of(v: Vec<u64>) -> Result<IntSet> {
    IntSet::collect(v)
}

fn disjoint_union(parts: &[&IntSet]) -> (IntSet, bool) {
    let total: usize = parts.iter().map(|p| p.len()).sum();
    let u = IntSet::collect(parts.iter().flat_map(|p| p.iter())).expect("non-empty parts");
    let disjoint = u.len() == total;
    (u, disjoint)
}

fn with_element(b: &IntSet, a: u64) -> IntSet {
    IntSet::collect(b.iter().chain([a])).expect("non-empty")
}

/// Facts (i)-(iii) shared by every core-plus-one-element family, plus
/// normalization of `A` and disjointness of the pieces.
fn core_facts(b: &IntSet, m: u64, a_elem: u64, a: &IntSet, pieces_disjoint: bool) -> Vec<Fact> {
    let bb = sumset(b);
    let aa = sumset(a);
    let sum_fact = !bb.contains(2 * a_elem) && aa == with_element(&bb, 2 * a_elem);
    vec![
        Fact::new(
            "pieces are pairwise disjoint",
            pieces_disjoint && !b.contains(a_elem),
        ),
        Fact::new("A is normalized", a.is_normalized()),
        Fact::new("(i) B = m - B", b.reflect_about(m).as_ref() == Ok(b)),
        Fact::new("(ii) A-A = B-B", diffset(a) == diffset(b)),
        Fact::new("(iii) A+A = (B+B) + {2a} disjointly", sum_fact),
    ]
}

/// Family built on `X = {2^n - 2^j : k <= j <= n}` with an arithmetic
/// progression of step `d` in the middle.
pub fn theorem2(n: u64, k: u64, d: u64) -> Result<ConstructionResult> {
    if n < 3 || k + 2 > n || d <= 1 {
        return Err(domain(format!(
            "T2 needs n >= 3, 0 <= k <= n-2, d > 1 (got n={n}, k={k}, d={d})"
        )));
    }
    let p = pow2(n)?;
    let q = pow2(n - k)? - 1;
    if q % d != 0 {
        return Err(domain(format!(
            "T2 needs d | 2^(n-k) - 1, but {d} does not divide {q}"
        )));
    }
    let pk = pow2(k)?;
    let x = set_of((k..=n).map(|j| p - (1 << j)).collect())?;
    let m = 2 * p + d + (p - pk);
    let y = x.reflect_about(m)?;
    let z = set_of((1..=(p - pk) / d).map(|j| p + j * d).collect())?;
    let (b, disjoint) = disjoint_union(&[&x, &y, &z]);
    let a = with_element(&b, p);
    let facts = core_facts(&b, m, p, &a, disjoint);
    Ok(ConstructionResult::from_parts(
        Family::T2,
        a,
        None,
        Some((b, m)),
        Some(1),
        None,
        facts,
    ))
}

/// Same geometric core as [`theorem2`] without the middle progression.
pub fn theorem3(n: u64, l: u64) -> Result<ConstructionResult> {
    if n < 3 || l < 1 || l + 2 > n {
        return Err(domain(format!(
            "T3 needs n >= 3, 1 <= l <= n-2 (got n={n}, l={l})"
        )));
    }
    let p = pow2(n)?;
    let x = set_of((0..=n).map(|j| p - (1 << j)).collect())?;
    let m = (2 * p - 1) + (p - pow2(l)?);
    let y = x.reflect_about(m)?;
    let (b, disjoint) = disjoint_union(&[&x, &y]);
    let a = with_element(&b, p);
    let facts = core_facts(&b, m, p, &a, disjoint);
    Ok(ConstructionResult::from_parts(
        Family::T3,
        a,
        None,
        Some((b, m)),
        Some(1),
        None,
        facts,
    ))
}

/// Progression `{jd : 0 <= j <= n}`, its reflection, and the block `(2nd, (2n+1)d]`.
pub fn theorem4(n: u64, d: u64) -> Result<ConstructionResult> {
    if n <= 1 || d <= 1 {
        return Err(domain(format!("T4 needs n > 1, d > 1 (got n={n}, d={d})")));
    }
    let x = set_of((0..=n).map(|j| j * d).collect())?;
    let m = (4 * n + 1) * d + 1;
    let y = x.reflect_about(m)?;
    let z = IntSet::interval(2 * n * d + 1, (2 * n + 1) * d)?;
    let (b, disjoint) = disjoint_union(&[&x, &y, &z]);
    let a_elem = 2 * n * d;
    let a = with_element(&b, a_elem);
    let facts = core_facts(&b, m, a_elem, &a, disjoint);
    Ok(ConstructionResult::from_parts(
        Family::T4,
        a,
        None,
        Some((b, m)),
        Some(1),
        None,
        facts,
    ))
}

/// Two-element extension of a symmetric core: `A* = B + {2n}` and
/// `A = A* + {m + 2}`. `primary_set` is `A`, `companion_set` is `A*`.
pub fn theorem5(n: u64, k: u64) -> Result<ConstructionResult> {
    if n < 2 || k < 3 {
        return Err(domain(format!(
            "T5 needs n >= 2, k >= 3 (got n={n}, k={k})"
        )));
    }
    let x = set_of((0..n).map(|j| 2 * j).collect())?;
    let m = 2 * (k + 1) * n - 2;
    let y = x.reflect_about(m)?;
    let z = set_of((1..=k).map(|j| 2 * j * n - 1).collect())?;
    let (b, disjoint) = disjoint_union(&[&x, &y, &z]);
    let a_star_elem = 2 * n;
    let a_star = with_element(&b, a_star_elem);
    let a_elem = m + 2;
    let a = with_element(&a_star, a_elem);

    let mut facts = core_facts(&b, m, a_star_elem, &a_star, disjoint);
    for f in &mut facts {
        f.name = f
            .name
            .replace("A+A", "A*+A*")
            .replace("A-A", "A*-A*")
            .replace("A is", "A* is");
    }
    facts.push(Fact::new(
        "A is normalized",
        a.is_normalized() && !a_star.contains(a_elem),
    ));

    let extra_diffs = [a_elem, a_elem - (a_star_elem - 1)];
    let d_star = diffset(&a_star);
    let d_full = diffset(&a);
    let iv = extra_diffs.iter().all(|&e| !d_star.nonneg().contains(e))
        && extra_diffs[0] != extra_diffs[1]
        && *d_full.nonneg() == IntSet::collect(d_star.nonneg().iter().chain(extra_diffs))?;
    facts.push(Fact::new(
        "(iv) A-A = (A*-A*) + {±a, ±(a-(a*-1))} disjointly",
        iv,
    ));

    let extra_sums = [
        2 * a_elem,
        2 * a_elem - 2,
        a_elem + (2 * k * n - 1),
        a_elem + a_star_elem,
    ];
    let s_star = sumset(&a_star);
    let distinct = IntSet::collect(extra_sums)?.len() == extra_sums.len();
    let v = distinct
        && extra_sums.iter().all(|&e| !s_star.contains(e))
        && sumset(&a) == IntSet::collect(s_star.iter().chain(extra_sums))?;
    facts.push(Fact::new(
        "(v) A+A = (A*+A*) + {2a, 2a-2, a+(2kn-1), a+a*} disjointly",
        v,
    ));

    Ok(ConstructionResult::from_parts(
        Family::T5,
        a,
        Some(a_star),
        Some((b, m)),
        Some(1),
        Some(1),
        facts,
    ))
}

/// Interval ends plus `k` interior blocks, with `A = B + {2n}` and the
/// extension `A + [(2k+4)n, (2k+5)n)` as `companion_set`.
pub fn theorem6(n: u64, k: u64) -> Result<ConstructionResult> {
    if n <= 1 || k <= 1 {
        return Err(domain(format!("T6 needs n > 1, k > 1 (got n={n}, k={k})")));
    }
    let x = IntSet::interval(0, n)?;
    let m = (2 * k + 3) * n;
    let y = x.reflect_about(m)?;
    let z = set_of(
        (1..=k)
            .flat_map(|j| (2 * j * n + 1)..=((2 * j + 1) * n - 1))
            .collect(),
    )?;
    let (b, disjoint) = disjoint_union(&[&x, &y, &z]);
    let a_elem = 2 * n;
    let a = with_element(&b, a_elem);
    let w = IntSet::interval((2 * k + 4) * n, (2 * k + 5) * n - 1)?;
    let (ext, ext_disjoint) = disjoint_union(&[&a, &w]);

    let mut facts = core_facts(&b, m, a_elem, &a, disjoint && ext_disjoint);

    let d_a = diffset(&a);
    let band = IntSet::interval((2 * k + 3) * n + 1, (2 * k + 5) * n - 1)?;
    let d_ext = diffset(&ext);
    let iv = d_a.nonneg().is_disjoint(&band) && *d_ext.nonneg() == d_a.nonneg().union(&band)?;
    facts.push(Fact::new(
        "(iv) ext-ext = (A-A) + ±[(2k+3)n+1, (2k+5)n-1] disjointly",
        iv,
    ));
    facts.push(Fact::new(
        "(iv) |ext-ext| = |A-A| + 4n - 2",
        d_ext.size() == d_a.size() + (4 * n - 2) as usize,
    ));

    // The band alone has 4n - 2 elements; the sum a + min(W) = (2k+6)n is the
    // remaining new element.
    let s_a = sumset(&a);
    let sum_band = IntSet::interval((4 * k + 6) * n + 1, (4 * k + 10) * n - 2)?;
    let sum_new = with_element(&sum_band, (2 * k + 6) * n);
    let s_ext = sumset(&ext);
    let v = s_a.is_disjoint(&sum_new) && s_ext == s_a.union(&sum_new)?;
    facts.push(Fact::new(
        "(v) ext+ext = (A+A) + {(2k+6)n} + [(4k+6)n+1, (4k+10)n-2] disjointly",
        v,
    ));
    facts.push(Fact::new(
        "(v) |ext+ext| = |A+A| + 4n - 1",
        s_ext.len() == s_a.len() + (4 * n - 1) as usize,
    ));

    Ok(ConstructionResult::from_parts(
        Family::T6,
        a,
        Some(ext),
        Some((b, m)),
        Some(1),
        Some(2),
        facts,
    ))
}

/// The two candidate symmetric subsets of a [`theorem6`] extension: the core
/// `B`, and the complement of `C = {n, (2k+3)n} + (Z \ [2n+1, 3n-1])`.
pub fn theorem6_symmetric_candidates(n: u64, k: u64) -> Result<(IntSet, IntSet)> {
    let res = theorem6(n, k)?;
    let ext = res.companion_set.expect("T6 has an extension");
    let core = res.symmetric_core.expect("T6 has a core");
    let c: Vec<u64> = [n, (2 * k + 3) * n]
        .into_iter()
        .chain((2..=k).flat_map(|j| (2 * j * n + 1)..=((2 * j + 1) * n - 1)))
        .collect();
    let c = IntSet::collect(c)?;
    Ok((core, ext.without(&c)?))
}

const MAX_EXPANDED_SIZE: u64 = 1 << 26;

/// `{sum_i a_i m^(i-1) : a_i in A}` for `t` digits in base `m`
/// (default and minimum `m = 2 max(A) + 1`).
pub fn base_expand(a: &IntSet, t: u32, m: Option<u64>) -> Result<IntSet> {
    a.require_normalized()?;
    if t == 0 {
        return Err(domain("base expansion needs t >= 1"));
    }
    let min_base = 2 * a.max() + 1;
    let m = m.unwrap_or(min_base);
    if m < min_base {
        return Err(domain(format!("base {m} is below the minimum {min_base}")));
    }
    let size = (a.len() as u64)
        .checked_pow(t)
        .filter(|&s| s <= MAX_EXPANDED_SIZE)
        .ok_or_else(|| MstdError::Overflow(format!("expanding to {} ^ {t} elements", a.len())))?;
    let mut acc: Vec<u64> = Vec::with_capacity(size as usize);
    acc.extend(a.iter());
    let mut place: u64 = 1;
    for _ in 1..t {
        place = place
            .checked_mul(m)
            .ok_or_else(|| MstdError::Overflow("computing base powers".into()))?;
        let mut next = Vec::with_capacity(acc.len() * a.len());
        for &digit in a.elements() {
            let shift = digit
                .checked_mul(place)
                .ok_or_else(|| MstdError::Overflow("expanding digits".into()))?;
            for &s in &acc {
                next.push(
                    s.checked_add(shift)
                        .ok_or_else(|| MstdError::Overflow("expanding digits".into()))?,
                );
            }
        }
        acc = next;
    }
    IntSet::new(acc)
}

/// `{lambda a + mu b}` with defaults `lambda = 1`, `mu = 2 max(A) + 1`.
/// Fails when two pairs collide.
pub fn product_embed(
    a: &IntSet,
    b: &IntSet,
    lambda: Option<u64>,
    mu: Option<u64>,
) -> Result<IntSet> {
    a.require_normalized()?;
    b.require_normalized()?;
    let lambda = lambda.unwrap_or(1);
    let mu = mu.unwrap_or(2 * a.max() + 1);
    if lambda == 0 {
        return Err(domain("lambda must be positive"));
    }
    let overflow = || MstdError::Overflow("embedding product".into());
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a.iter() {
        let lx = x.checked_mul(lambda).ok_or_else(overflow)?;
        for y in b.iter() {
            out.push(
                y.checked_mul(mu)
                    .and_then(|v| v.checked_add(lx))
                    .ok_or_else(overflow)?,
            );
        }
    }
    IntSet::new(out).map_err(|e| match e {
        MstdError::Duplicate(v) => {
            MstdError::Collision(format!("lambda={lambda}, mu={mu} map two pairs to {v}"))
        }
        other => other,
    })
}

/// Tagged parameter record naming one construction.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub family: Option<Family>,
    pub params: BTreeMap<String, i64>,
    pub catalog_name: Option<String>,
    /// Input sets for `BaseExpand` (one) and `ProductEmbed` (two).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operands: Vec<IntSet>,
}

impl ConstructionSpec {
    pub fn new(family: Family) -> Self {
        ConstructionSpec {
            family: Some(family),
            ..Default::default()
        }
    }

    pub fn param(mut self, key: &str, value: i64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn catalog_name(mut self, name: &str) -> Self {
        self.catalog_name = Some(name.to_string());
        self
    }

    pub fn operand(mut self, set: IntSet) -> Self {
        self.operands.push(set);
        self
    }

    fn get(&self, key: &str) -> Result<u64> {
        let v = *self
            .params
            .get(key)
            .ok_or_else(|| domain(format!("missing parameter `{key}`")))?;
        u64::try_from(v).map_err(|_| domain(format!("parameter `{key}` must be non-negative")))
    }

    fn get_opt(&self, key: &str) -> Result<Option<u64>> {
        if self.params.contains_key(key) {
            self.get(key).map(Some)
        } else {
            Ok(None)
        }
    }

    /// Operand list with the catalog set (if named) prepended.
    fn inputs(&self) -> Result<Vec<IntSet>> {
        let mut v = Vec::new();
        if let Some(name) = &self.catalog_name {
            v.push(catalog(name)?);
        }
        v.extend(self.operands.iter().cloned());
        Ok(v)
    }

    pub fn build(&self) -> Result<ConstructionResult> {
        let family = self
            .family
            .ok_or_else(|| domain("missing construction family"))?;
        match family {
            Family::T2 => theorem2(self.get("n")?, self.get("k")?, self.get("d")?),
            Family::T3 => theorem3(self.get("n")?, self.get("l")?),
            Family::T4 => theorem4(self.get("n")?, self.get("d")?),
            Family::T5 => theorem5(self.get("n")?, self.get("k")?),
            Family::T6 => theorem6(self.get("n")?, self.get("k")?),
            Family::Catalog => {
                let name = self
                    .catalog_name
                    .as_deref()
                    .ok_or_else(|| domain("catalog construction needs a name"))?;
                Ok(plain(Family::Catalog, catalog(name)?))
            }
            Family::BaseExpand => {
                let inputs = self.inputs()?;
                let [a] = inputs.as_slice() else {
                    return Err(domain("base expansion takes exactly one input set"));
                };
                let t = u32::try_from(self.get("t")?).map_err(|_| domain("t too large"))?;
                Ok(plain(family, base_expand(a, t, self.get_opt("m")?)?))
            }
            Family::ProductEmbed => {
                let inputs = self.inputs()?;
                let [a, b] = inputs.as_slice() else {
                    return Err(domain("product embedding takes exactly two input sets"));
                };
                let set = product_embed(a, b, self.get_opt("lambda")?, self.get_opt("mu")?)?;
                Ok(plain(family, set))
            }
        }
    }
}

fn plain(family: Family, set: IntSet) -> ConstructionResult {
    ConstructionResult::from_parts(family, set, None, None, None, None, Vec::new())
}
