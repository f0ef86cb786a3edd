//! The summation contract shared by every monoid in the crate, plus the
//! order-unit machinery built on top of it.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cardinals::{card_add, card_mul, card_sum, ExtCard};

/// Three-valued answer used wherever a predicate is only semi-decidable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truth {
    Yes,
    No,
    Unknown,
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::Yes
        } else {
            Truth::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Truth::Yes
    }

    pub fn is_no(self) -> bool {
        self == Truth::No
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::No, _) | (_, Truth::No) => Truth::No,
            (Truth::Yes, Truth::Yes) => Truth::Yes,
            _ => Truth::Unknown,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::Yes, _) | (_, Truth::Yes) => Truth::Yes,
            (Truth::No, Truth::No) => Truth::No,
            _ => Truth::Unknown,
        }
    }

    pub fn negate(self) -> Truth {
        match self {
            Truth::Yes => Truth::No,
            Truth::No => Truth::Yes,
            Truth::Unknown => Truth::Unknown,
        }
    }

    pub fn all<I: IntoIterator<Item = Truth>>(items: I) -> Truth {
        items.into_iter().fold(Truth::Yes, Truth::and)
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::Yes => "YES",
            Truth::No => "NO",
            Truth::Unknown => "UNKNOWN",
        })
    }
}

/// A value that may be undetermined because a search bound ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision<T> {
    Decided(T),
    Unknown,
}

/// Which index cardinalities a monoid accepts in a single sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CardBoundMode {
    /// Sums over index sets of cardinality at most the given infinite cardinal.
    AtMost(ExtCard),
    /// Sums over index sets of cardinality strictly below the given infinite cardinal.
    Below(ExtCard),
}

impl CardBoundMode {
    /// Ordinary finite sums only.
    pub fn finite() -> Self {
        CardBoundMode::Below(ExtCard::aleph0())
    }

    pub fn at_most_level(level: u32) -> Self {
        CardBoundMode::AtMost(ExtCard::aleph_raw(level))
    }

    pub fn admits(&self, index: &ExtCard) -> bool {
        match self {
            CardBoundMode::AtMost(k) => index <= k,
            CardBoundMode::Below(l) => index < l,
        }
    }

    /// The largest cardinal admitted, if there is one.
    pub fn largest(&self) -> Option<ExtCard> {
        match self {
            CardBoundMode::AtMost(k) => Some(k.clone()),
            CardBoundMode::Below(l) => match l.aleph_level() {
                Some(level) if level >= 1 => Some(ExtCard::aleph_raw(level - 1)),
                _ => None,
            },
        }
    }

    /// Infinite cardinals admitted as multiplicities, ascending.
    pub fn infinite_cardinals(&self) -> Vec<ExtCard> {
        match self.largest().and_then(|c| c.aleph_level()) {
            Some(top) => (0..=top).map(ExtCard::aleph_raw).collect(),
            None => Vec::new(),
        }
    }

    pub fn is_finite_only(&self) -> bool {
        self.infinite_cardinals().is_empty()
    }
}

impl fmt::Display for CardBoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardBoundMode::AtMost(k) => write!(f, "<= {k}"),
            CardBoundMode::Below(l) => write!(f, "< {l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("index cardinality {index} violates the summation bound {bound}")]
    BoundExceeded { index: ExtCard, bound: CardBoundMode },
    #[error("{0} is not an element of the monoid")]
    NotMember(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("could not decide: {0}")]
    Undecided(String),
}

/// A family of elements with cardinal multiplicities.
///
/// Entries keep their insertion order so that order-sensitive (and therefore
/// broken) summation rules can be detected; equality ignores order.
#[derive(Clone, Debug)]
pub struct Family<E> {
    entries: Vec<(E, ExtCard)>,
}

impl<E> Default for Family<E> {
    fn default() -> Self {
        Family { entries: Vec::new() }
    }
}

impl<E: Clone + Ord> Family<E> {
    pub fn new() -> Self {
        Family::default()
    }

    pub fn singleton(elem: E, mult: ExtCard) -> Self {
        let mut fam = Family::new();
        fam.push(elem, mult);
        fam
    }

    pub fn push(&mut self, elem: E, mult: ExtCard) {
        if !mult.is_zero() {
            self.entries.push((elem, mult));
        }
    }

    pub fn with(mut self, elem: E, mult: impl Into<ExtCard>) -> Self {
        self.push(elem, mult.into());
        self
    }

    pub fn entries(&self) -> &[(E, ExtCard)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(E, ExtCard)> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Equal elements merged and sorted ascending.
    pub fn canonical(&self) -> Family<E> {
        let mut merged: BTreeMap<E, ExtCard> = BTreeMap::new();
        for (e, m) in &self.entries {
            let slot = merged.entry(e.clone()).or_insert_with(ExtCard::zero);
            *slot = card_add(slot, m);
        }
        Family {
            entries: merged.into_iter().collect(),
        }
    }

    pub fn multiplicity(&self, elem: &E) -> ExtCard {
        self.entries
            .iter()
            .filter(|(e, _)| e == elem)
            .map(|(_, m)| m.clone())
            .sum()
    }

    pub fn index_cardinality(&self) -> ExtCard {
        let one = ExtCard::one();
        card_sum(self.entries.iter().map(|(_, m)| (&one, m)))
    }

    pub fn union(&self, other: &Family<E>) -> Family<E> {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Family { entries }
    }

    pub fn extend(&mut self, other: &Family<E>) {
        self.entries.extend(other.entries.iter().cloned());
    }

    /// Every multiplicity multiplied by `alpha`.
    pub fn scaled(&self, alpha: &ExtCard) -> Family<E> {
        let mut out = Family::new();
        for (e, m) in &self.entries {
            out.push(e.clone(), card_mul(alpha, m));
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&E) -> bool) -> Family<E> {
        Family {
            entries: self.entries.iter().filter(|(e, _)| keep(e)).cloned().collect(),
        }
    }

    pub fn map<F: Clone + Ord>(&self, mut f: impl FnMut(&E) -> F) -> Family<F> {
        Family {
            entries: self.entries.iter().map(|(e, m)| (f(e), m.clone())).collect(),
        }
    }

    pub fn has_infinite_multiplicity(&self) -> bool {
        self.entries.iter().any(|(_, m)| m.is_infinite())
    }
}

impl<E: Clone + Ord> PartialEq for Family<E> {
    fn eq(&self, other: &Self) -> bool {
        self.canonical().entries == other.canonical().entries
    }
}

impl<E: Clone + Ord> Eq for Family<E> {}

impl<E: Clone + Ord> FromIterator<(E, ExtCard)> for Family<E> {
    fn from_iter<I: IntoIterator<Item = (E, ExtCard)>>(iter: I) -> Self {
        let mut fam = Family::new();
        for (e, m) in iter {
            fam.push(e, m);
        }
        fam
    }
}

impl<E: fmt::Display> fmt::Display for Family<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (e, m)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            if *m == ExtCard::one() {
                write!(f, "{e}")?;
            } else {
                write!(f, "{e}*{m}")?;
            }
        }
        f.write_str("}")
    }
}

/// A commutative monoid with summation over families of bounded index cardinality.
pub trait KappaMonoid {
    type Elem: Clone + Ord + fmt::Debug + fmt::Display;

    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;

    fn bound(&self) -> CardBoundMode;

    /// The raw summation rule. Callers normally go through [`KappaMonoid::ksum`].
    fn evaluate(&self, fam: &Family<Self::Elem>) -> Self::Elem;

    fn contains(&self, _x: &Self::Elem) -> Truth {
        Truth::Yes
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> Truth {
        Truth::from_bool(a == b)
    }

    /// Whether some `c` in the monoid has `a + c = b`.
    fn leq(&self, _a: &Self::Elem, _b: &Self::Elem) -> Truth {
        Truth::Unknown
    }

    /// Whether `x <= n u` for some finite `n`.
    fn below_finite_multiple(&self, _x: &Self::Elem, _u: &Self::Elem) -> Truth {
        Truth::Unknown
    }

    fn is_zero(&self, x: &Self::Elem) -> Truth {
        self.equal(x, &self.zero())
    }

    /// Number of indices carrying an element not known to be zero.
    fn support_cardinality(&self, fam: &Family<Self::Elem>) -> ExtCard {
        let one = ExtCard::one();
        card_sum(
            fam.entries()
                .iter()
                .filter(|(e, _)| !self.is_zero(e).is_yes())
                .map(|(_, m)| (&one, m)),
        )
    }

    fn ksum(&self, fam: &Family<Self::Elem>) -> Result<Self::Elem, MonoidError> {
        let index = self.support_cardinality(fam);
        let bound = self.bound();
        if !bound.admits(&index) {
            return Err(MonoidError::BoundExceeded { index, bound });
        }
        for (e, _) in fam.entries() {
            if self.contains(e).is_no() {
                return Err(MonoidError::NotMember(e.to_string()));
            }
        }
        Ok(self.evaluate(fam))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let fam = Family::new()
            .with(a.clone(), ExtCard::one())
            .with(b.clone(), ExtCard::one());
        self.evaluate(&fam)
    }

    fn scalar(&self, alpha: &ExtCard, x: &Self::Elem) -> Result<Self::Elem, MonoidError> {
        self.ksum(&Family::singleton(x.clone(), alpha.clone()))
    }
}

/// Default number of finite multiples tried by [`size_of`] and [`order_unit_check`].
pub const DEFAULT_SEARCH_BOUND: u64 = 64;

/// A counter of search steps with a hard limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 100_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    /// Spends `n` steps; `false` once the limit would be exceeded.
    pub fn spend(&mut self, n: u64) -> bool {
        if self.used.saturating_add(n) > self.limit {
            self.used = self.limit;
            return false;
        }
        self.used += n;
        true
    }

    pub fn tick(&mut self) -> bool {
        self.spend(1)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.used
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Budget::DEFAULT_LIMIT)
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "budget used {} of {}", self.used, self.limit)
    }
}

fn multiple<M: KappaMonoid + ?Sized>(m: &M, n: &ExtCard, u: &M::Elem) -> M::Elem {
    m.evaluate(&Family::singleton(u.clone(), n.clone()))
}

/// `a + b = 0` forces `a = b = 0`; returns whether that holds for this pair.
pub fn is_reduced_witness<M: KappaMonoid + ?Sized>(m: &M, a: &M::Elem, b: &M::Elem) -> Result<bool, MonoidError> {
    if !m.is_zero(&m.add(a, b)).is_yes() {
        return Err(MonoidError::Precondition(format!("{a} + {b} is not zero")));
    }
    Ok(m.is_zero(a).is_yes() && m.is_zero(b).is_yes())
}

/// Whether every probe lies below the largest admitted multiple of `u`.
pub fn order_unit_check<M: KappaMonoid + ?Sized>(m: &M, u: &M::Elem, probes: &[M::Elem], search: u64) -> Truth {
    let big = m.bound().largest().map(|k| multiple(m, &k, u));
    Truth::all(probes.iter().map(|x| match &big {
        Some(ku) => m.leq(x, ku),
        None => {
            let found = (0..=search).any(|n| m.leq(x, &multiple(m, &ExtCard::from(n), u)).is_yes());
            if found {
                Truth::Yes
            } else {
                m.below_finite_multiple(x, u)
            }
        }
    }))
}

/// `0` when `x <= n u` for a finite `n`, otherwise the least infinite `alpha`
/// with `x <= alpha u`.
pub fn size_of<M: KappaMonoid + ?Sized>(
    m: &M,
    u: &M::Elem,
    x: &M::Elem,
    search: u64,
) -> Result<Decision<ExtCard>, MonoidError> {
    let mut undecided = false;
    for n in 0..=search {
        match m.leq(x, &multiple(m, &ExtCard::from(n), u)) {
            Truth::Yes => return Ok(Decision::Decided(ExtCard::zero())),
            Truth::Unknown => undecided = true,
            Truth::No => {}
        }
    }
    match m.below_finite_multiple(x, u) {
        Truth::Yes => return Ok(Decision::Decided(ExtCard::zero())),
        Truth::Unknown => undecided = true,
        Truth::No => {}
    }
    for alpha in m.bound().infinite_cardinals() {
        match m.leq(x, &multiple(m, &alpha, u)) {
            Truth::Yes if undecided => return Ok(Decision::Unknown),
            Truth::Yes => return Ok(Decision::Decided(alpha)),
            Truth::Unknown => return Ok(Decision::Unknown),
            Truth::No => {}
        }
    }
    if undecided {
        return Ok(Decision::Unknown);
    }
    Err(MonoidError::Precondition(format!(
        "{x} is not below any admitted multiple of {u}"
    )))
}

/// Given `t = kappa u + l`, checks that `t = kappa u`.
pub fn absorb_big<M: KappaMonoid + ?Sized>(m: &M, u: &M::Elem, t: &M::Elem, l: &M::Elem) -> Result<bool, MonoidError> {
    let kappa = m
        .bound()
        .largest()
        .ok_or_else(|| MonoidError::Precondition("the monoid admits no infinite multiples".into()))?;
    let ku = multiple(m, &kappa, u);
    if !m.equal(t, &m.add(&ku, l)).is_yes() {
        return Err(MonoidError::Precondition(format!("{t} != {kappa}*{u} + {l}")));
    }
    match m.equal(t, &ku) {
        Truth::Yes => Ok(true),
        Truth::No => Ok(false),
        Truth::Unknown => Err(MonoidError::Undecided(format!("{t} = {ku}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truth_connectives() {
        assert_eq!(Truth::Yes.and(Truth::Unknown), Truth::Unknown);
        assert_eq!(Truth::No.and(Truth::Unknown), Truth::No);
        assert_eq!(Truth::Yes.or(Truth::Unknown), Truth::Yes);
        assert_eq!(Truth::all([]), Truth::Yes);
        assert_eq!(Truth::Unknown.negate(), Truth::Unknown);
    }

    #[test]
    fn bound_modes() {
        let finite = CardBoundMode::finite();
        assert!(finite.admits(&ExtCard::from(1_000_000u64)));
        assert!(!finite.admits(&ExtCard::aleph0()));
        assert_eq!(finite.largest(), None);
        let below2 = CardBoundMode::Below(ExtCard::aleph_raw(2));
        assert_eq!(below2.largest(), Some(ExtCard::aleph_raw(1)));
        let at1 = CardBoundMode::at_most_level(1);
        assert!(at1.admits(&ExtCard::aleph_raw(1)));
        assert!(!at1.admits(&ExtCard::aleph_raw(2)));
        assert_eq!(at1.infinite_cardinals().len(), 2);
        assert_eq!(at1.to_string(), "<= aleph1");
    }

    #[test]
    fn families_compare_canonically() {
        let a = Family::new().with(3u64, 2u64).with(1u64, 1u64).with(3u64, 1u64);
        let b = Family::new().with(1u64, 1u64).with(3u64, 3u64);
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        assert_eq!(a.canonical().len(), 2);
        assert_eq!(a.multiplicity(&3), ExtCard::from(3u64));
        let zero_mult: Family<u64> = Family::new().with(5u64, 0u64);
        assert!(zero_mult.is_empty());
    }

    #[test]
    fn family_display() {
        let fam = Family::new().with(2u64, 1u64).with(5u64, ExtCard::aleph0());
        assert_eq!(fam.to_string(), "{2, 5*aleph0}");
        assert_eq!(fam.index_cardinality(), ExtCard::aleph0());
        assert_eq!(fam.scaled(&ExtCard::zero()).len(), 0);
    }
}
