//! Restriction rules on the elementary discrete invariant, run as a
//! monotone inference system.
//!
//! An [`EdiTable`] holds, for every grassmannian level `i` in `0..=d`, a set
//! of candidate values `m` in `n-i-d ..= n-i`. Each rule reads one
//! membership and either adds memberships or reports a contradiction, so
//! closure under the rules is a least fixed point and the closed,
//! contradiction-free tables are exactly the closed sets of an implication
//! graph. Rules are necessary conditions: an admissible table need not be
//! realized by any quadratic form.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::steenrod::binom_parity;

/// Default bound on `n` for enumeration.
pub const DEFAULT_MAX_N: u32 = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdiError {
    #[error("quadric dimension must be positive")]
    InvalidDimension,
    #[error("level {level} out of range 0..={d}")]
    BadLevel { level: u32, d: u32 },
    #[error("{m} is outside the legal range {lo}..={hi} of level {level}")]
    IllegalMembership { level: u32, m: i64, lo: u32, hi: u32 },
    #[error("first Witt index {i1} needs an anisotropic quadric and 1 <= i1 <= {max}")]
    InvalidWitt { i1: u32, max: u32 },
    #[error("n = {n} exceeds the enumeration bound {max}")]
    BoundExceeded { n: u32, max: u32 },
}

/// One candidate membership `m in EDI(X, level)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Membership {
    pub level: u32,
    pub m: u32,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.level, self.m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdiTable {
    n: u32,
    sets: Vec<BTreeSet<u32>>,
}

impl EdiTable {
    pub fn new(n: u32) -> Result<Self, EdiError> {
        if n == 0 {
            return Err(EdiError::InvalidDimension);
        }
        Ok(EdiTable { n, sets: vec![BTreeSet::new(); n as usize / 2 + 1] })
    }

    pub fn with_members(n: u32, members: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, EdiError> {
        let mut t = EdiTable::new(n)?;
        for (level, m) in members {
            t.insert(level, m as i64)?;
        }
        Ok(t)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.n / 2
    }

    pub fn legal_range(&self, level: u32) -> RangeInclusive<u32> {
        legal_range(self.n, level)
    }

    pub fn is_legal(&self, level: u32, m: i64) -> bool {
        level <= self.d() && {
            let r = self.legal_range(level);
            m >= *r.start() as i64 && m <= *r.end() as i64
        }
    }

    /// Insert a membership; returns whether it was new.
    pub fn insert(&mut self, level: u32, m: i64) -> Result<bool, EdiError> {
        if level > self.d() {
            return Err(EdiError::BadLevel { level, d: self.d() });
        }
        if !self.is_legal(level, m) {
            let r = self.legal_range(level);
            return Err(EdiError::IllegalMembership { level, m, lo: *r.start(), hi: *r.end() });
        }
        Ok(self.sets[level as usize].insert(m as u32))
    }

    pub fn contains(&self, level: u32, m: u32) -> bool {
        self.sets.get(level as usize).is_some_and(|s| s.contains(&m))
    }

    pub fn members(&self, level: u32) -> &BTreeSet<u32> {
        &self.sets[level as usize]
    }

    pub fn memberships(&self) -> impl Iterator<Item = Membership> + '_ {
        self.sets
            .iter()
            .enumerate()
            .flat_map(|(level, s)| s.iter().map(move |&m| Membership { level: level as u32, m }))
    }

    pub fn is_empty(&self) -> bool {
        self.sets.iter().all(BTreeSet::is_empty)
    }

    pub fn len(&self) -> usize {
        self.sets.iter().map(BTreeSet::len).sum()
    }

    pub fn is_subset(&self, other: &EdiTable) -> bool {
        self.n == other.n && self.sets.iter().zip(&other.sets).all(|(a, b)| a.is_subset(b))
    }
}

impl fmt::Display for EdiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (level, s) in self.sets.iter().enumerate() {
            let members: Vec<String> = s.iter().map(u32::to_string).collect();
            writeln!(f, "EDI({level}) = {{{}}}", members.join(", "))?;
        }
        Ok(())
    }
}

fn legal_range(n: u32, level: u32) -> RangeInclusive<u32> {
    let d = n / 2;
    (n - level - d)..=(n - level)
}

/// Anisotropy and first Witt index hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct WittContext {
    anisotropic: bool,
    i1: Option<u32>,
}

impl WittContext {
    pub fn generic() -> Self {
        WittContext::default()
    }

    pub fn anisotropic() -> Self {
        WittContext { anisotropic: true, i1: None }
    }

    /// Anisotropic with known first Witt index; `1 <= i1 <= d + 1`.
    pub fn with_first_witt_index(n: u32, i1: u32) -> Result<Self, EdiError> {
        let max = n / 2 + 1;
        if i1 == 0 || i1 > max {
            return Err(EdiError::InvalidWitt { i1, max });
        }
        Ok(WittContext { anisotropic: true, i1: Some(i1) })
    }

    pub fn is_anisotropic(&self) -> bool {
        self.anisotropic
    }

    pub fn i1(&self) -> Option<u32> {
        self.i1
    }
}

/// The rule catalog, in propagation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `m in EDI(i)` forces `m, m-1 in EDI(i+1)`.
    Classical,
    /// Level 2: odd `m` in `n-2-d ..= n-4` forces `m+1`.
    SquareShift,
    /// Lower Steenrod operations with the parity conditions on `(i, l, m, a)`.
    LowerSteenrod,
    /// Higher Steenrod operations: `m` forces all of `m+l ..= n-i`.
    HigherSteenrod,
    /// Level 1 under anisotropy: an odd `C(m+2, l)` forces a positive Witt index.
    IsotropyBound,
    /// Descent through the 1-primordial cycle when `i1 > i`.
    PrimordialDescent,
    /// Iterated descent: the `n - m >= i1` bound and the jumps by `l < i`.
    PrimordialChain,
}

impl Rule {
    pub const CATALOG: [Rule; 7] = [
        Rule::Classical,
        Rule::SquareShift,
        Rule::LowerSteenrod,
        Rule::HigherSteenrod,
        Rule::IsotropyBound,
        Rule::PrimordialDescent,
        Rule::PrimordialChain,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::Classical => "classical",
            Rule::SquareShift => "square-shift",
            Rule::LowerSteenrod => "lower-steenrod",
            Rule::HigherSteenrod => "higher-steenrod",
            Rule::IsotropyBound => "isotropy-bound",
            Rule::PrimordialDescent => "primordial-descent",
            Rule::PrimordialChain => "primordial-chain",
        }
    }

    pub fn apply(self, t: &EdiTable, w: &WittContext) -> Vec<RuleFiring> {
        match self {
            Rule::Classical => rule_classical(t),
            Rule::SquareShift => rule_square_shift(t),
            Rule::LowerSteenrod => rule_lower_steenrod(t),
            Rule::HigherSteenrod => rule_higher_steenrod(t),
            Rule::IsotropyBound => rule_isotropy_bound(t, w),
            Rule::PrimordialDescent => rule_primordial_descent(t, w),
            Rule::PrimordialChain => rule_primordial_chain(t, w),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// One application of a rule: the premise `m in EDI(level)`, the auxiliary
/// parameters it used, and what it concluded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleFiring {
    pub rule: Rule,
    pub level: u32,
    pub m: u32,
    pub l: Option<u32>,
    pub a: Option<u32>,
    pub added: Vec<Membership>,
    /// Conclusions outside the legal range of their level, dropped.
    pub clipped: Vec<(u32, i64)>,
    pub contradiction: bool,
}

impl RuleFiring {
    fn new(rule: Rule, level: u32, m: u32) -> Self {
        RuleFiring { rule, level, m, l: None, a: None, added: Vec::new(), clipped: Vec::new(), contradiction: false }
    }

    fn with_l(mut self, l: u32) -> Self {
        self.l = Some(l);
        self
    }

    fn with_a(mut self, a: u32) -> Self {
        self.a = Some(a);
        self
    }

    fn conclude(mut self, n: u32, level: u32, m: i64) -> Self {
        let r = legal_range(n, level);
        if level <= n / 2 && m >= *r.start() as i64 && m <= *r.end() as i64 {
            self.added.push(Membership { level, m: m as u32 });
        } else {
            self.clipped.push((level, m));
        }
        self
    }

    fn contradict(mut self) -> Self {
        self.contradiction = true;
        self
    }

    fn key(&self) -> (Rule, u32, u32, Option<u32>, Option<u32>, bool) {
        (self.rule, self.level, self.m, self.l, self.a, self.contradiction)
    }

    /// Re-derive this firing from its hypothesis tuple alone.
    pub fn recheck(&self, n: u32, w: &WittContext) -> bool {
        let d = n / 2;
        let (i, m) = (self.level, self.m);
        if i > d || !legal_range(n, i).contains(&m) {
            return false;
        }
        let mut expected = RuleFiring::new(self.rule, i, m);
        match self.rule {
            Rule::Classical => {
                if i >= d {
                    return false;
                }
                expected = expected.conclude(n, i + 1, m as i64).conclude(n, i + 1, m as i64 - 1);
            }
            Rule::SquareShift => {
                let lo = n as i64 - 2 - d as i64;
                if i != 2 || d < 2 || m % 2 == 0 || (m as i64) < lo || m as i64 > n as i64 - 4 {
                    return false;
                }
                expected = expected.conclude(n, 2, m as i64 + 1);
            }
            Rule::LowerSteenrod => {
                let (Some(l), Some(a)) = (self.l, self.a) else { return false };
                if !lower_steenrod_applies(n, i, l, m, a) {
                    return false;
                }
                expected = expected.with_l(l).with_a(a).conclude(n, i, (m + l + a) as i64);
            }
            Rule::HigherSteenrod => {
                let Some(l) = self.l else { return false };
                if i < 2 || l < i || l > d || m + i + l > n || !binom_parity((m + i + 1) as u64, l as u64) {
                    return false;
                }
                expected = expected.with_l(l);
                for m2 in m + l..=n - i {
                    expected = expected.conclude(n, i, m2 as i64);
                }
            }
            Rule::IsotropyBound => {
                let Some(l) = self.l else { return false };
                if !w.is_anisotropic() || i != 1 || l == 0 || l > d || m + 1 + l > n {
                    return false;
                }
                if !binom_parity((m + 2) as u64, l as u64) {
                    return false;
                }
                expected = expected.with_l(l).contradict();
            }
            Rule::PrimordialDescent => {
                let Some(i1) = w.i1() else { return false };
                if i == 0 || i1 <= i || primordial_excluded(n, i1, m) {
                    return false;
                }
                expected = expected.conclude(n, i - 1, m as i64 + 1);
            }
            Rule::PrimordialChain => {
                let Some(i1) = w.i1() else { return false };
                if i == 0 || i1 <= i {
                    return false;
                }
                let gap = n - m;
                match self.l {
                    None => {
                        if gap >= i1 {
                            return false;
                        }
                        expected = expected.contradict();
                    }
                    Some(l) => {
                        if l == 0 || l >= i || (gap != i1 + l && gap != d + 1 + l) {
                            return false;
                        }
                        expected = expected.with_l(l).conclude(n, i - l, (m + l) as i64);
                    }
                }
            }
        }
        expected == *self
    }
}

impl fmt::Display for RuleFiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}:{}", self.rule, self.level, self.m)?;
        if let Some(l) = self.l {
            write!(f, " l={l}")?;
        }
        if let Some(a) = self.a {
            write!(f, " a={a}")?;
        }
        if self.contradiction {
            f.write_str(" => contradiction")?;
        } else {
            let added: Vec<String> = self.added.iter().map(Membership::to_string).collect();
            write!(f, " => {{{}}}", added.join(", "))?;
        }
        if !self.clipped.is_empty() {
            let clipped: Vec<String> = self.clipped.iter().map(|(lv, m)| format!("{lv}:{m}")).collect();
            write!(f, " (clipped {})", clipped.join(", "))?;
        }
        Ok(())
    }
}

/// `m in EDI(i)` gives `m, m-1 in EDI(i+1)`.
pub fn rule_classical(t: &EdiTable) -> Vec<RuleFiring> {
    let n = t.n();
    let mut out = Vec::new();
    for i in 0..t.d() {
        for &m in t.members(i) {
            out.push(RuleFiring::new(Rule::Classical, i, m).conclude(n, i + 1, m as i64).conclude(
                n,
                i + 1,
                m as i64 - 1,
            ));
        }
    }
    out
}

/// For odd `n-2-d <= m <= n-4`, `m in EDI(2)` gives `m+1 in EDI(2)`.
pub fn rule_square_shift(t: &EdiTable) -> Vec<RuleFiring> {
    let (n, d) = (t.n() as i64, t.d() as i64);
    if d < 2 {
        return Vec::new();
    }
    t.members(2)
        .iter()
        .filter(|&&m| m % 2 == 1 && m as i64 >= n - 2 - d && m as i64 <= n - 4)
        .map(|&m| RuleFiring::new(Rule::SquareShift, 2, m).conclude(t.n(), 2, m as i64 + 1))
        .collect()
}

fn lower_steenrod_applies(n: u32, i: u32, l: u32, m: u32, a: u32) -> bool {
    let d = n / 2;
    if i < 2 || i > d || l == 0 || l >= i || m + i + l > n || m + i + l + a > n {
        return false;
    }
    if !binom_parity((m + i + 1) as u64, l as u64) {
        return false;
    }
    (l..i).filter(|k| (i..=d).contains(&(k + l + a))).all(|k| !binom_parity(k as u64, l as u64))
}

/// Lower Steenrod restriction: for `2 <= i <= d`, `1 <= l < i`,
/// `m <= n-i-l` with `C(m+i+1, l)` odd, and `0 <= a <= n-i-m-l` such that
/// `C(k, l)` is even whenever `l <= k < i` and `i <= k+l+a <= d`,
/// `m in EDI(i)` gives `m+l+a in EDI(i)`.
pub fn rule_lower_steenrod(t: &EdiTable) -> Vec<RuleFiring> {
    let n = t.n();
    let mut out = Vec::new();
    for i in 2..=t.d() {
        for &m in t.members(i) {
            for l in 1..i {
                if m + i + l > n {
                    continue;
                }
                for a in 0..=n - i - m - l {
                    if lower_steenrod_applies(n, i, l, m, a) {
                        out.push(RuleFiring::new(Rule::LowerSteenrod, i, m).with_l(l).with_a(a).conclude(
                            n,
                            i,
                            (m + l + a) as i64,
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Higher Steenrod restriction: for `2 <= i <= l <= d` and `m <= n-i-l`
/// with `C(m+i+1, l)` odd, `m in EDI(i)` gives all of `m+l ..= n-i`.
pub fn rule_higher_steenrod(t: &EdiTable) -> Vec<RuleFiring> {
    let n = t.n();
    let mut out = Vec::new();
    for i in 2..=t.d() {
        for &m in t.members(i) {
            for l in i..=t.d() {
                if m + i + l > n || !binom_parity((m + i + 1) as u64, l as u64) {
                    continue;
                }
                let mut f = RuleFiring::new(Rule::HigherSteenrod, i, m).with_l(l);
                for m2 in m + l..=n - i {
                    f = f.conclude(n, i, m2 as i64);
                }
                out.push(f);
            }
        }
    }
    out
}

/// Under anisotropy, `m in EDI(1)` with `m <= n-1-l` and `C(m+2, l)` odd
/// would force a positive Witt index.
pub fn rule_isotropy_bound(t: &EdiTable, w: &WittContext) -> Vec<RuleFiring> {
    if !w.is_anisotropic() || t.d() < 1 {
        return Vec::new();
    }
    let n = t.n();
    let mut out = Vec::new();
    for &m in t.members(1) {
        for l in 1..=t.d() {
            if m + 1 + l <= n && binom_parity((m + 2) as u64, l as u64) {
                out.push(RuleFiring::new(Rule::IsotropyBound, 1, m).with_l(l).contradict());
            }
        }
    }
    out
}

fn primordial_excluded(n: u32, i1: u32, m: u32) -> bool {
    let gap = n - m;
    gap == i1 || (2 * i1..=n / 2 + 1).contains(&gap)
}

/// With `i1 > i`, `m in EDI(i)` and `n-m` outside `{i1} ∪ {2 i1, ..., d+1}`
/// gives `m+1 in EDI(i-1)`.
pub fn rule_primordial_descent(t: &EdiTable, w: &WittContext) -> Vec<RuleFiring> {
    let Some(i1) = w.i1() else { return Vec::new() };
    let n = t.n();
    let mut out = Vec::new();
    for i in (1..=t.d()).filter(|&i| i1 > i) {
        for &m in t.members(i) {
            if !primordial_excluded(n, i1, m) {
                out.push(RuleFiring::new(Rule::PrimordialDescent, i, m).conclude(n, i - 1, m as i64 + 1));
            }
        }
    }
    out
}

/// With `i1 > i` and `m in EDI(i)`: `n-m < i1` is a contradiction, and
/// `n-m = i1+l` or `d+1+l` with `1 <= l < i` gives `m+l in EDI(i-l)`.
pub fn rule_primordial_chain(t: &EdiTable, w: &WittContext) -> Vec<RuleFiring> {
    let Some(i1) = w.i1() else { return Vec::new() };
    let (n, d) = (t.n(), t.d());
    let mut out = Vec::new();
    for i in (1..=d).filter(|&i| i1 > i) {
        for &m in t.members(i) {
            let gap = n - m;
            if gap < i1 {
                out.push(RuleFiring::new(Rule::PrimordialChain, i, m).contradict());
            }
            for l in 1..i {
                if gap == i1 + l || gap == d + 1 + l {
                    out.push(RuleFiring::new(Rule::PrimordialChain, i, m).with_l(l).conclude(n, i - l, (m + l) as i64));
                }
            }
        }
    }
    out
}

/// A closed table together with the firings that built it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub table: EdiTable,
    pub trail: Vec<RuleFiring>,
    pub rounds: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("contradiction: {firing}")]
pub struct Contradiction {
    pub firing: RuleFiring,
    pub table: EdiTable,
    pub trail: Vec<RuleFiring>,
}

/// Least fixed point of the additive rules, in catalog order.
pub fn propagate(t: &EdiTable, w: &WittContext) -> Result<Closure, Box<Contradiction>> {
    propagate_with_order(t, w, &Rule::CATALOG)
}

/// Least fixed point applying rules in the given order each round.
/// Contradiction rules are checked after every round.
pub fn propagate_with_order(t: &EdiTable, w: &WittContext, order: &[Rule]) -> Result<Closure, Box<Contradiction>> {
    let mut table = t.clone();
    let mut trail = Vec::new();
    let mut seen = HashSet::new();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut changed = false;
        for &rule in order {
            for firing in rule.apply(&table, w) {
                if firing.contradiction {
                    continue;
                }
                let mut new = false;
                for mem in &firing.added {
                    new |= table.insert(mem.level, mem.m as i64).expect("conclusions are in range");
                }
                changed |= new;
                if (new || !firing.clipped.is_empty()) && seen.insert(firing.key()) {
                    trail.push(firing);
                }
            }
        }
        for &rule in &Rule::CATALOG {
            if let Some(firing) = rule.apply(&table, w).into_iter().find(|f| f.contradiction) {
                return Err(Box::new(Contradiction { firing, table, trail }));
            }
        }
        if !changed {
            return Ok(Closure { table, trail, rounds });
        }
    }
}

/// Single-premise structure of the rule set: for every legal membership,
/// its direct consequences and whether it alone is contradictory.
#[derive(Debug, Clone)]
pub struct ImplicationGraph {
    pub nodes: Vec<Membership>,
    pub successors: Vec<Vec<usize>>,
    pub forbidden: Vec<bool>,
}

impl ImplicationGraph {
    pub fn build(n: u32, w: &WittContext) -> Result<Self, EdiError> {
        let empty = EdiTable::new(n)?;
        let nodes: Vec<Membership> =
            (0..=empty.d()).flat_map(|level| empty.legal_range(level).map(move |m| Membership { level, m })).collect();
        let index = |mem: &Membership| nodes.binary_search(mem).expect("legal membership");
        let mut successors = Vec::with_capacity(nodes.len());
        let mut forbidden = Vec::with_capacity(nodes.len());
        for node in &nodes {
            let single = EdiTable::with_members(n, [(node.level, node.m)])?;
            let mut succ = BTreeSet::new();
            let mut bad = false;
            for rule in Rule::CATALOG {
                for f in rule.apply(&single, w) {
                    bad |= f.contradiction;
                    succ.extend(f.added.iter().map(index));
                }
            }
            successors.push(succ.into_iter().collect());
            forbidden.push(bad);
        }
        Ok(ImplicationGraph { nodes, successors, forbidden })
    }

    /// Reflexive-transitive closure of one node.
    pub fn closure(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &v in &self.successors[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        (0..self.nodes.len()).filter(|&v| seen[v]).collect()
    }
}

/// Enumerate every table that is closed under the rules and free of
/// contradictions, in lexicographic order of membership bit vectors
/// (levels ascending, then `m` ascending; absent before present).
///
/// With a level filter, only tables whose memberships all lie on the listed
/// levels are produced. Returns the number of tables visited.
pub fn enumerate_admissible(
    n: u32,
    w: &WittContext,
    level_filter: Option<&BTreeSet<u32>>,
    max_n: u32,
    mut visit: impl FnMut(&EdiTable),
) -> Result<u64, EdiError> {
    let graph = prepare(n, w, level_filter, max_n)?;
    Ok(search(&graph, |included| {
        let t = EdiTable::with_members(
            n,
            graph.graph.nodes.iter().zip(included).filter(|(_, &inc)| inc).map(|(mem, _)| (mem.level, mem.m)),
        )
        .expect("nodes are legal");
        visit(&t);
    }))
}

/// Number of admissible tables, without materializing them.
pub fn count_admissible(
    n: u32,
    w: &WittContext,
    level_filter: Option<&BTreeSet<u32>>,
    max_n: u32,
) -> Result<u64, EdiError> {
    let graph = prepare(n, w, level_filter, max_n)?;
    Ok(search(&graph, |_| {}))
}

struct Prepared {
    graph: ImplicationGraph,
    closures: Vec<Option<Vec<usize>>>,
}

fn prepare(n: u32, w: &WittContext, level_filter: Option<&BTreeSet<u32>>, max_n: u32) -> Result<Prepared, EdiError> {
    if n > max_n {
        return Err(EdiError::BoundExceeded { n, max: max_n });
    }
    if let Some(i1) = w.i1() {
        WittContext::with_first_witt_index(n, i1)?;
    }
    let graph = ImplicationGraph::build(n, w)?;
    let allowed_level = |level: u32| level_filter.is_none_or(|f| f.contains(&level));
    let closures = (0..graph.nodes.len())
        .map(|u| {
            let c = graph.closure(u);
            let ok = c.iter().all(|&v| !graph.forbidden[v] && allowed_level(graph.nodes[v].level));
            ok.then_some(c)
        })
        .collect();
    Ok(Prepared { graph, closures })
}

fn search(p: &Prepared, mut emit: impl FnMut(&[bool])) -> u64 {
    fn go(p: &Prepared, pos: usize, included: &mut Vec<bool>, emit: &mut dyn FnMut(&[bool]), count: &mut u64) {
        if pos == included.len() {
            *count += 1;
            emit(included);
            return;
        }
        if !included[pos] {
            go(p, pos + 1, included, emit, count);
            let Some(closure) = &p.closures[pos] else { return };
            // earlier positions not included were decided absent
            if closure.iter().any(|&v| v < pos && !included[v]) {
                return;
            }
            let newly: Vec<usize> = closure.iter().copied().filter(|&v| !included[v]).collect();
            for &v in &newly {
                included[v] = true;
            }
            go(p, pos + 1, included, emit, count);
            for &v in &newly {
                included[v] = false;
            }
        } else {
            // forced by an earlier choice
            go(p, pos + 1, included, emit, count);
        }
    }
    let mut included = vec![false; p.graph.nodes.len()];
    let mut count = 0;
    go(p, 0, &mut included, &mut emit, &mut count);
    count
}
