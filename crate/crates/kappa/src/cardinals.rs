//! Extended cardinals: the naturals followed by the aleph chain `aleph0 < aleph1 < ... < aleph(K)`.
//!
//! Values are immutable. The finite part is an arbitrary-precision integer; the
//! [`fixed`] submodule offers a `u64` path that reports overflow instead of growing.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Largest aleph level accepted by [`ExtCard::aleph`] and [`FromStr`].
pub const DEFAULT_MAX_LEVEL: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CardError {
    #[error("aleph level {level} exceeds the configured maximum {max}")]
    LevelTooLarge { level: u32, max: u32 },
    #[error("arithmetic overflow in fixed-width cardinal arithmetic")]
    Overflow,
    #[error("invalid cardinal literal `{0}`")]
    BadLiteral(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Finite(BigUint),
    Aleph(u32),
}

/// A cardinal that is either a natural number or one of the symbolic alephs.
///
/// The derived ordering is the cardinal ordering: every finite value is below
/// `aleph0`, and alephs are ordered by level.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtCard(Repr);

/// The configured top of the aleph chain, `kappa = aleph(max_level)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CardinalBound {
    max_level: u32,
}

impl Default for CardinalBound {
    fn default() -> Self {
        CardinalBound {
            max_level: DEFAULT_MAX_LEVEL,
        }
    }
}

impl CardinalBound {
    pub fn new(max_level: u32) -> Self {
        CardinalBound { max_level }
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn top(&self) -> ExtCard {
        ExtCard(Repr::Aleph(self.max_level))
    }

    pub fn aleph(&self, level: u32) -> Result<ExtCard, CardError> {
        if level > self.max_level {
            return Err(CardError::LevelTooLarge {
                level,
                max: self.max_level,
            });
        }
        Ok(ExtCard(Repr::Aleph(level)))
    }

    pub fn check(&self, c: &ExtCard) -> Result<(), CardError> {
        match c.aleph_level() {
            Some(level) if level > self.max_level => Err(CardError::LevelTooLarge {
                level,
                max: self.max_level,
            }),
            _ => Ok(()),
        }
    }

    /// Parses `17`, `aleph0`, `Aleph2`, `aleph(1)` or `w`, case-insensitively.
    pub fn parse(&self, text: &str) -> Result<ExtCard, CardError> {
        let trimmed = text.trim();
        let lower = trimmed.to_ascii_lowercase();
        if lower == "w" || lower == "omega" {
            return Ok(ExtCard::aleph0());
        }
        if let Some(rest) = lower.strip_prefix("aleph") {
            let digits = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .unwrap_or(rest)
                .trim();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(CardError::BadLiteral(trimmed.to_string()));
            }
            let level: u32 = digits.parse().map_err(|_| CardError::BadLiteral(trimmed.to_string()))?;
            return self.aleph(level);
        }
        if !lower.is_empty() && lower.bytes().all(|b| b.is_ascii_digit()) {
            let n =
                BigUint::parse_bytes(lower.as_bytes(), 10).ok_or_else(|| CardError::BadLiteral(trimmed.to_string()))?;
            return Ok(ExtCard::finite(n));
        }
        Err(CardError::BadLiteral(trimmed.to_string()))
    }
}

impl ExtCard {
    pub fn zero() -> Self {
        ExtCard(Repr::Finite(BigUint::zero()))
    }

    pub fn one() -> Self {
        ExtCard(Repr::Finite(BigUint::one()))
    }

    pub fn finite(n: impl Into<BigUint>) -> Self {
        ExtCard(Repr::Finite(n.into()))
    }

    pub fn aleph0() -> Self {
        ExtCard(Repr::Aleph(0))
    }

    /// `aleph(level)` under the default bound.
    pub fn aleph(level: u32) -> Result<Self, CardError> {
        CardinalBound::default().aleph(level)
    }

    /// `aleph(level)` without consulting any bound; callers keep their own limit.
    pub(crate) fn aleph_raw(level: u32) -> Self {
        ExtCard(Repr::Aleph(level))
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Finite(n) if n.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0, Repr::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn finite_value(&self) -> Option<&BigUint> {
        match &self.0 {
            Repr::Finite(n) => Some(n),
            Repr::Aleph(_) => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.finite_value().and_then(|n| n.to_u64())
    }

    pub fn aleph_level(&self) -> Option<u32> {
        match self.0 {
            Repr::Aleph(level) => Some(level),
            Repr::Finite(_) => None,
        }
    }

    /// `min(self, aleph0)`.
    pub fn truncate_aleph0(&self) -> ExtCard {
        if self.is_finite() {
            self.clone()
        } else {
            ExtCard::aleph0()
        }
    }
}

impl From<u64> for ExtCard {
    fn from(n: u64) -> Self {
        ExtCard::finite(n)
    }
}

impl From<u32> for ExtCard {
    fn from(n: u32) -> Self {
        ExtCard::finite(n)
    }
}

impl From<BigUint> for ExtCard {
    fn from(n: BigUint) -> Self {
        ExtCard::finite(n)
    }
}

impl fmt::Display for ExtCard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Finite(n) => write!(f, "{n}"),
            Repr::Aleph(level) => write!(f, "aleph{level}"),
        }
    }
}

impl fmt::Debug for ExtCard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtCard {
    type Err = CardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CardinalBound::default().parse(s)
    }
}

/// Sum of a multiset given as `(value, count)` pairs.
///
/// With only finite data this is the ordinary sum of `value * count`.
/// Otherwise it is `max(index cardinality, sup of values)`, where the index
/// cardinality only counts entries with a nonzero value.
pub fn card_sum<'a, I>(items: I) -> ExtCard
where
    I: IntoIterator<Item = (&'a ExtCard, &'a ExtCard)>,
{
    let mut finite_total = BigUint::zero();
    let mut top: Option<u32> = None;
    for (value, count) in items {
        if value.is_zero() || count.is_zero() {
            continue;
        }
        for c in [value, count] {
            if let Some(level) = c.aleph_level() {
                top = Some(top.map_or(level, |t| t.max(level)));
            }
        }
        if top.is_none() {
            let (v, n) = (value.finite_value().unwrap(), count.finite_value().unwrap());
            finite_total += v * n;
        }
    }
    match top {
        Some(level) => ExtCard::aleph_raw(level),
        None => ExtCard::finite(finite_total),
    }
}

pub fn card_add(a: &ExtCard, b: &ExtCard) -> ExtCard {
    let one = ExtCard::one();
    card_sum([(a, &one), (b, &one)])
}

pub fn card_mul(a: &ExtCard, b: &ExtCard) -> ExtCard {
    if a.is_zero() || b.is_zero() {
        return ExtCard::zero();
    }
    match (&a.0, &b.0) {
        (Repr::Finite(x), Repr::Finite(y)) => ExtCard::finite(x * y),
        _ => a.clone().max(b.clone()),
    }
}

pub fn card_leq(a: &ExtCard, b: &ExtCard) -> bool {
    a <= b
}

impl Add for ExtCard {
    type Output = ExtCard;
    fn add(self, rhs: ExtCard) -> ExtCard {
        card_add(&self, &rhs)
    }
}

impl<'a> Add<&'a ExtCard> for &'a ExtCard {
    type Output = ExtCard;
    fn add(self, rhs: &'a ExtCard) -> ExtCard {
        card_add(self, rhs)
    }
}

impl Mul for ExtCard {
    type Output = ExtCard;
    fn mul(self, rhs: ExtCard) -> ExtCard {
        card_mul(&self, &rhs)
    }
}

impl<'a> Mul<&'a ExtCard> for &'a ExtCard {
    type Output = ExtCard;
    fn mul(self, rhs: &'a ExtCard) -> ExtCard {
        card_mul(self, rhs)
    }
}

impl std::iter::Sum for ExtCard {
    fn sum<I: Iterator<Item = ExtCard>>(iter: I) -> ExtCard {
        iter.fold(ExtCard::zero(), |acc, c| card_add(&acc, &c))
    }
}

pub mod fixed {
    //! Cardinal arithmetic with a `u64` finite part.

    use super::{CardError, ExtCard};

    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
    pub enum FixedCard {
        Finite(u64),
        Aleph(u32),
    }

    impl FixedCard {
        pub fn is_zero(self) -> bool {
            self == FixedCard::Finite(0)
        }
    }

    impl TryFrom<&ExtCard> for FixedCard {
        type Error = CardError;

        fn try_from(c: &ExtCard) -> Result<Self, CardError> {
            match c.aleph_level() {
                Some(level) => Ok(FixedCard::Aleph(level)),
                None => c.to_u64().map(FixedCard::Finite).ok_or(CardError::Overflow),
            }
        }
    }

    impl From<FixedCard> for ExtCard {
        fn from(c: FixedCard) -> ExtCard {
            match c {
                FixedCard::Finite(n) => ExtCard::finite(n),
                FixedCard::Aleph(level) => ExtCard::aleph_raw(level),
            }
        }
    }

    pub fn checked_sum(items: &[(FixedCard, FixedCard)]) -> Result<FixedCard, CardError> {
        let mut total: u64 = 0;
        let mut top: Option<u32> = None;
        for &(value, count) in items {
            if value.is_zero() || count.is_zero() {
                continue;
            }
            match (value, count) {
                (FixedCard::Finite(v), FixedCard::Finite(n)) => {
                    let term = v.checked_mul(n).ok_or(CardError::Overflow)?;
                    total = total.checked_add(term).ok_or(CardError::Overflow)?;
                }
                (FixedCard::Aleph(l), FixedCard::Finite(_)) | (FixedCard::Finite(_), FixedCard::Aleph(l)) => {
                    top = Some(top.map_or(l, |t| t.max(l)));
                }
                (FixedCard::Aleph(l1), FixedCard::Aleph(l2)) => {
                    let l = l1.max(l2);
                    top = Some(top.map_or(l, |t| t.max(l)));
                }
            }
        }
        Ok(match top {
            Some(level) => FixedCard::Aleph(level),
            None => FixedCard::Finite(total),
        })
    }

    pub fn checked_mul(a: FixedCard, b: FixedCard) -> Result<FixedCard, CardError> {
        if a.is_zero() || b.is_zero() {
            return Ok(FixedCard::Finite(0));
        }
        match (a, b) {
            (FixedCard::Finite(x), FixedCard::Finite(y)) => {
                x.checked_mul(y).map(FixedCard::Finite).ok_or(CardError::Overflow)
            }
            _ => Ok(a.max(b)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixed::{checked_mul, checked_sum, FixedCard};
    use super::*;
    use proptest::prelude::*;

    fn c(s: &str) -> ExtCard {
        s.parse().unwrap()
    }

    fn sum(items: &[(&str, &str)]) -> ExtCard {
        let owned: Vec<(ExtCard, ExtCard)> = items.iter().map(|(v, n)| (c(v), c(n))).collect();
        card_sum(owned.iter().map(|(v, n)| (v, n)))
    }

    #[test]
    fn infinite_multiplicity_of_one() {
        assert_eq!(sum(&[("1", "aleph0")]), ExtCard::aleph0());
    }

    #[test]
    fn zeros_are_absorbed() {
        assert_eq!(sum(&[("5", "1"), ("0", "aleph0")]), c("5"));
    }

    #[test]
    fn index_cardinality_dominates() {
        assert_eq!(sum(&[("aleph0", "3"), ("2", "aleph1")]), c("aleph1"));
    }

    #[test]
    fn empty_sum_is_zero() {
        assert_eq!(sum(&[]), ExtCard::zero());
    }

    #[test]
    fn products() {
        assert_eq!(card_mul(&c("0"), &c("aleph1")), ExtCard::zero());
        assert_eq!(card_mul(&c("3"), &c("4")), c("12"));
        assert_eq!(card_mul(&c("aleph0"), &c("aleph0")), c("aleph0"));
        assert_eq!(card_mul(&c("aleph2"), &c("5")), c("aleph2"));
    }

    #[test]
    fn ordering() {
        assert!(card_leq(&c("7"), &c("aleph0")));
        assert!(!card_leq(&c("aleph1"), &c("aleph0")));
        assert!(card_leq(&c("aleph0"), &c("aleph0")));
        assert!(c("123456789012345678901234567890") < c("aleph0"));
    }

    #[test]
    fn literals() {
        assert_eq!(c("W"), ExtCard::aleph0());
        assert_eq!(c("ALEPH1"), ExtCard::aleph(1).unwrap());
        assert_eq!(c("aleph(2)"), ExtCard::aleph(2).unwrap());
        assert_eq!(c("17").to_u64(), Some(17));
        assert!("aleph4".parse::<ExtCard>().is_err());
        assert!("aleph".parse::<ExtCard>().is_err());
        assert!("-1".parse::<ExtCard>().is_err());
        assert!(CardinalBound::new(5).parse("aleph5").is_ok());
        assert_eq!(ExtCard::aleph(9), Err(CardError::LevelTooLarge { level: 9, max: 3 }));
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "17", "aleph0", "aleph3"] {
            assert_eq!(c(s).to_string(), s);
        }
    }

    #[test]
    fn fixed_width_overflow_is_reported() {
        let big = FixedCard::Finite(u64::MAX);
        assert_eq!(
            checked_sum(&[
                (big, FixedCard::Finite(1)),
                (FixedCard::Finite(1), FixedCard::Finite(1))
            ]),
            Err(CardError::Overflow)
        );
        assert_eq!(checked_mul(big, FixedCard::Finite(2)), Err(CardError::Overflow));
        assert_eq!(checked_sum(&[(big, FixedCard::Aleph(0))]), Ok(FixedCard::Aleph(0)));
    }

    fn arb_card() -> impl Strategy<Value = ExtCard> {
        prop_oneof![
            3 => (0u64..12).prop_map(ExtCard::from),
            1 => (0u32..=3).prop_map(ExtCard::aleph_raw),
        ]
    }

    fn arb_items() -> impl Strategy<Value = Vec<(ExtCard, ExtCard)>> {
        proptest::collection::vec((arb_card(), arb_card()), 0..6)
    }

    fn total(items: &[(ExtCard, ExtCard)]) -> ExtCard {
        card_sum(items.iter().map(|(v, n)| (v, n)))
    }

    proptest! {
        #[test]
        fn sum_is_order_independent(mut items in arb_items(), seed in any::<u64>()) {
            let before = total(&items);
            let k = items.len();
            if k > 1 {
                items.rotate_left((seed as usize) % k);
                items.swap(0, (seed as usize / 7) % k);
            }
            prop_assert_eq!(before, total(&items));
        }

        #[test]
        fn sum_flattens(a in arb_items(), b in arb_items()) {
            let left = card_add(&total(&a), &total(&b));
            let joined: Vec<_> = a.iter().chain(b.iter()).cloned().collect();
            prop_assert_eq!(left, total(&joined));
        }

        #[test]
        fn infinite_cardinals_absorb_smaller_ones(x in arb_card(), level in 0u32..=3) {
            let big = ExtCard::aleph_raw(level);
            prop_assume!(x <= big);
            prop_assert_eq!(card_add(&x, &big), big);
        }

        #[test]
        fn multiplication_distributes(alpha in arb_card(), items in arb_items()) {
            let scaled: Vec<_> = items.iter().map(|(v, n)| (card_mul(&alpha, v), n.clone())).collect();
            prop_assert_eq!(card_mul(&alpha, &total(&items)), total(&scaled));
            let lambdas: Vec<_> = items.iter().map(|(v, _)| (v.clone(), ExtCard::one())).collect();
            let spread: Vec<_> = items.iter().map(|(v, _)| (alpha.clone(), v.clone())).collect();
            prop_assert_eq!(card_mul(&total(&lambdas), &alpha), total(&spread));
        }

        #[test]
        fn fixed_path_agrees(items in proptest::collection::vec((0u64..1000, 0u64..1000), 0..6)) {
            let ext: Vec<_> = items.iter().map(|&(v, n)| (ExtCard::from(v), ExtCard::from(n))).collect();
            let fixed: Vec<_> = items.iter().map(|&(v, n)| (FixedCard::Finite(v), FixedCard::Finite(n))).collect();
            prop_assert_eq!(ExtCard::from(checked_sum(&fixed).unwrap()), total(&ext));
        }
    }
}
