//! Concrete monoids drawn from module theory.
//!
//! * [`TrivialExtension`] adjoins a single absorbing `infinity` to a monoid
//!   with finite sums, and sends every sum with infinite content there.
//! * [`RationalLine`] is `Q>=0` with a second copy of the positive values
//!   for sums that needed infinitely many terms or an already tilded input.
//! * [`DedekindMonoid`] records rank and class of projective modules over a
//!   Dedekind domain with a finite class group; infinite ranks forget the class.
//! * [`HnpVector`] is the membership predicate for the infinite part of the
//!   monoid of stable classes over a hereditary noetherian prime ring.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, RngCore};
use thiserror::Error;

use crate::cardinals::{card_leq, card_sum, ExtCard};
use crate::free_vectors::CardVec;
use crate::laws::{sample_cardinal, LawSubject};
use crate::monoid::{CardBoundMode, Family, KappaMonoid, Truth};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GalleryError {
    #[error("the base monoid must only admit finite sums, found bound {0}")]
    BaseNotFinite(String),
    #[error("summation bound {0} must be infinite")]
    FiniteKappa(ExtCard),
    #[error("invariant factor {0} must be at least 1")]
    BadFactor(u64),
    #[error("class {class:?} does not fit the invariant factors {factors:?}")]
    BadClass { class: Vec<u64>, factors: Vec<u64> },
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the distinguished coordinate must be infinite, found {0}")]
    FiniteDistinguished(ExtCard),
    #[error("weights must be non-negative, found {0}")]
    NegativeWeight(BigRational),
    #[error("cannot parse `{0}`")]
    Parse(String),
}

/// An element of a [`TrivialExtension`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Adjoined<E> {
    Base(E),
    Infinity,
}

impl<E: fmt::Display> fmt::Display for Adjoined<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Adjoined::Base(e) => e.fmt(f),
            Adjoined::Infinity => f.write_str("inf"),
        }
    }
}

/// `M` together with `infinity`, where a sum is the base sum when the family
/// has finite support and no infinite entry, and `infinity` otherwise.
#[derive(Debug, Clone)]
pub struct TrivialExtension<M> {
    base: M,
    kappa: ExtCard,
}

impl<M: KappaMonoid> TrivialExtension<M> {
    pub fn new(base: M, kappa: ExtCard) -> Result<Self, GalleryError> {
        if !base.bound().is_finite_only() {
            return Err(GalleryError::BaseNotFinite(base.bound().to_string()));
        }
        if kappa.is_finite() {
            return Err(GalleryError::FiniteKappa(kappa));
        }
        Ok(TrivialExtension { base, kappa })
    }

    pub fn base(&self) -> &M {
        &self.base
    }
}

impl<M: KappaMonoid> KappaMonoid for TrivialExtension<M> {
    type Elem = Adjoined<M::Elem>;

    fn name(&self) -> String {
        format!("trivial({})", self.base.name())
    }

    fn zero(&self) -> Self::Elem {
        Adjoined::Base(self.base.zero())
    }

    fn bound(&self) -> CardBoundMode {
        CardBoundMode::AtMost(self.kappa.clone())
    }

    fn evaluate(&self, fam: &Family<Self::Elem>) -> Self::Elem {
        let mut finite = Family::new();
        for (e, m) in fam.entries() {
            match e {
                Adjoined::Infinity => return Adjoined::Infinity,
                Adjoined::Base(x) if self.base.is_zero(x).is_yes() => {}
                Adjoined::Base(_) if m.is_infinite() => return Adjoined::Infinity,
                Adjoined::Base(x) => finite.push(x.clone(), m.clone()),
            }
        }
        Adjoined::Base(self.base.evaluate(&finite))
    }

    fn contains(&self, x: &Self::Elem) -> Truth {
        match x {
            Adjoined::Base(e) => self.base.contains(e),
            Adjoined::Infinity => Truth::Yes,
        }
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> Truth {
        match (a, b) {
            (Adjoined::Base(x), Adjoined::Base(y)) => self.base.equal(x, y),
            (Adjoined::Infinity, Adjoined::Infinity) => Truth::Yes,
            _ => Truth::No,
        }
    }

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> Truth {
        match (a, b) {
            (_, Adjoined::Infinity) => Truth::Yes,
            (Adjoined::Infinity, Adjoined::Base(_)) => Truth::No,
            (Adjoined::Base(x), Adjoined::Base(y)) => self.base.leq(x, y),
        }
    }

    fn below_finite_multiple(&self, x: &Self::Elem, u: &Self::Elem) -> Truth {
        match (x, u) {
            (_, Adjoined::Infinity) => Truth::Yes,
            (Adjoined::Infinity, Adjoined::Base(_)) => Truth::No,
            (Adjoined::Base(x), Adjoined::Base(u)) => self.base.below_finite_multiple(x, u),
        }
    }
}

impl<M: LawSubject> LawSubject for TrivialExtension<M> {
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        if rng.gen_ratio(1, 6) {
            Adjoined::Infinity
        } else {
            Adjoined::Base(self.base.sample(rng))
        }
    }

    fn order_unit(&self) -> Option<Self::Elem> {
        self.base.order_unit().map(Adjoined::Base)
    }
}

/// An element of the [`RationalLine`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineElem {
    /// A non-negative rational reached by a finite sum of plain values.
    Plain(BigRational),
    /// A positive value in the second copy.
    Tilde(BigRational),
    Infinity,
}

impl LineElem {
    pub fn plain(num: u64, den: u64) -> Self {
        LineElem::Plain(ratio(num, den))
    }

    pub fn tilde(num: u64, den: u64) -> Self {
        LineElem::Tilde(ratio(num, den))
    }

    /// The real value, or `None` for `infinity`.
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            LineElem::Plain(q) | LineElem::Tilde(q) => Some(q),
            LineElem::Infinity => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, LineElem::Plain(q) if q.is_zero())
    }
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl fmt::Display for LineElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineElem::Plain(q) => write!(f, "{q}"),
            LineElem::Tilde(q) => write!(f, "~{q}"),
            LineElem::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for LineElem {
    type Err = GalleryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(LineElem::Infinity);
        }
        let (tilde, body) = match s.strip_prefix('~') {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        let q: BigRational = body.parse().map_err(|_| GalleryError::Parse(s.to_string()))?;
        if q.is_negative() || (tilde && q.is_zero()) {
            return Err(GalleryError::Parse(s.to_string()));
        }
        Ok(if tilde { LineElem::Tilde(q) } else { LineElem::Plain(q) })
    }
}

/// The `aleph0`-monoid `Q>=0 + ~R>0 + {inf}` restricted to rational points.
///
/// A positive entry repeated infinitely often makes the series diverge, so
/// with families given by multiplicities a tilded sum only arises from a
/// tilded input.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalLine;

impl KappaMonoid for RationalLine {
    type Elem = LineElem;

    fn name(&self) -> String {
        "qline".into()
    }

    fn zero(&self) -> LineElem {
        LineElem::Plain(BigRational::zero())
    }

    fn bound(&self) -> CardBoundMode {
        CardBoundMode::at_most_level(0)
    }

    fn evaluate(&self, fam: &Family<LineElem>) -> LineElem {
        let mut total = BigRational::zero();
        let mut tilde = false;
        for (e, m) in fam.entries() {
            let q = match e {
                LineElem::Infinity => return LineElem::Infinity,
                _ if e.is_zero() => continue,
                LineElem::Plain(q) => q,
                LineElem::Tilde(q) => {
                    tilde = true;
                    q
                }
            };
            let Some(n) = m.finite_value() else {
                return LineElem::Infinity;
            };
            total += q * BigRational::from_integer(BigInt::from(n.clone()));
        }
        if tilde {
            LineElem::Tilde(total)
        } else {
            LineElem::Plain(total)
        }
    }

    fn contains(&self, x: &LineElem) -> Truth {
        Truth::from_bool(match x {
            LineElem::Plain(q) => !q.is_negative(),
            LineElem::Tilde(q) => q.is_positive(),
            LineElem::Infinity => true,
        })
    }

    fn leq(&self, a: &LineElem, b: &LineElem) -> Truth {
        Truth::from_bool(match (a, b) {
            (_, LineElem::Infinity) => true,
            (LineElem::Infinity, _) => false,
            (LineElem::Plain(p), LineElem::Plain(q)) => p <= q,
            (LineElem::Plain(p), LineElem::Tilde(q)) => p < q,
            (LineElem::Tilde(p), LineElem::Tilde(q)) => p <= q,
            (LineElem::Tilde(_), LineElem::Plain(_)) => false,
        })
    }

    fn below_finite_multiple(&self, x: &LineElem, u: &LineElem) -> Truth {
        Truth::from_bool(match (x, u) {
            _ if x.is_zero() => true,
            _ if u.is_zero() => false,
            (_, LineElem::Infinity) => true,
            (LineElem::Infinity, _) => false,
            (LineElem::Tilde(_), LineElem::Plain(_)) => false,
            _ => true,
        })
    }
}

impl LawSubject for RationalLine {
    fn sample(&self, rng: &mut dyn RngCore) -> LineElem {
        let num = rng.gen_range(0..7u64);
        let den = rng.gen_range(1..5u64);
        match rng.gen_range(0..8) {
            0 => LineElem::Infinity,
            1 | 2 => LineElem::tilde(num + 1, den),
            _ => LineElem::plain(num, den),
        }
    }

    fn order_unit(&self) -> Option<LineElem> {
        Some(LineElem::plain(1, 1))
    }
}

/// An element of a [`DedekindMonoid`]: a projective module up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum DedekindElem {
    Zero,
    /// A finitely generated module of positive rank with its Steinitz class.
    Finite {
        rank: u64,
        class: Vec<u64>,
    },
    /// A free module of infinite rank.
    Infinite(ExtCard),
}

impl DedekindElem {
    pub fn rank(&self) -> ExtCard {
        match self {
            DedekindElem::Zero => ExtCard::zero(),
            DedekindElem::Finite { rank, .. } => ExtCard::from(*rank),
            DedekindElem::Infinite(a) => a.clone(),
        }
    }
}

impl fmt::Display for DedekindElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DedekindElem::Zero => f.write_str("0"),
            DedekindElem::Finite { rank, class } if class.is_empty() => write!(f, "{rank}"),
            DedekindElem::Finite { rank, class } => {
                let parts: Vec<String> = class.iter().map(u64::to_string).collect();
                write!(f, "{rank}[{}]", parts.join(","))
            }
            DedekindElem::Infinite(a) => write!(f, "{a}"),
        }
    }
}

impl FromStr for DedekindElem {
    type Err = GalleryError;

    /// Parses `0`, `alephN`, `n` (trivial class) or `n[g1,..,gk]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || GalleryError::Parse(s.to_string());
        let (rank, class) = match s.split_once('[') {
            Some((r, rest)) => {
                let inner = rest.strip_suffix(']').ok_or_else(bad)?;
                let class = if inner.trim().is_empty() {
                    Vec::new()
                } else {
                    inner
                        .split(',')
                        .map(|g| g.trim().parse::<u64>().map_err(|_| bad()))
                        .collect::<Result<Vec<_>, _>>()?
                };
                (r.trim(), Some(class))
            }
            None => (s, None),
        };
        let card: ExtCard = rank.parse().map_err(|_| bad())?;
        if card.is_infinite() {
            return match class {
                None => Ok(DedekindElem::Infinite(card)),
                Some(_) => Err(bad()),
            };
        }
        match card.to_u64() {
            Some(0) if class.as_ref().is_none_or(|c| c.iter().all(|&g| g == 0)) => Ok(DedekindElem::Zero),
            Some(0) => Err(bad()),
            Some(rank) => Ok(DedekindElem::Finite {
                rank,
                class: class.unwrap_or_default(),
            }),
            None => Err(bad()),
        }
    }
}

/// `{(a, g) in F_kappa x G : 1 <= a < aleph0 or g = 0}` for a finite abelian
/// group `G = Z/d1 x .. x Z/dk`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DedekindMonoid {
    factors: Vec<u64>,
    kappa: ExtCard,
}

impl DedekindMonoid {
    pub fn new(factors: Vec<u64>, kappa: ExtCard) -> Result<Self, GalleryError> {
        if let Some(&d) = factors.iter().find(|&&d| d == 0) {
            return Err(GalleryError::BadFactor(d));
        }
        if kappa.is_finite() {
            return Err(GalleryError::FiniteKappa(kappa));
        }
        Ok(DedekindMonoid { factors, kappa })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Normalises a class and pads it to the number of factors; the empty
    /// class stands for the neutral element.
    pub fn class(&self, class: &[u64]) -> Result<Vec<u64>, GalleryError> {
        if class.is_empty() {
            return Ok(vec![0; self.factors.len()]);
        }
        if class.len() != self.factors.len() || class.iter().zip(&self.factors).any(|(g, d)| g >= d) {
            return Err(GalleryError::BadClass {
                class: class.to_vec(),
                factors: self.factors.clone(),
            });
        }
        Ok(class.to_vec())
    }

    /// Whether the pair `(alpha, g)` lies in the monoid.
    pub fn member_pair(&self, alpha: &ExtCard, class: &[u64]) -> bool {
        let Ok(class) = self.class(class) else {
            return false;
        };
        let trivial = class.iter().all(|&g| g == 0);
        card_leq(alpha, &self.kappa) && ((alpha.is_finite() && !alpha.is_zero()) || trivial)
    }

    /// The element with rank `alpha` and class `g`, if the pair is a member.
    pub fn element(&self, alpha: &ExtCard, class: &[u64]) -> Option<DedekindElem> {
        if !self.member_pair(alpha, class) {
            return None;
        }
        Some(match alpha.to_u64() {
            Some(0) => DedekindElem::Zero,
            Some(rank) => DedekindElem::Finite {
                rank,
                class: self.class(class).ok()?,
            },
            None => DedekindElem::Infinite(alpha.clone()),
        })
    }

    fn padded(&self, class: &[u64]) -> Vec<u64> {
        self.class(class).unwrap_or_else(|_| vec![0; self.factors.len()])
    }
}

impl KappaMonoid for DedekindMonoid {
    type Elem = DedekindElem;

    fn name(&self) -> String {
        let g: Vec<String> = self.factors.iter().map(u64::to_string).collect();
        format!("dedekind(G={})", g.join(","))
    }

    fn zero(&self) -> DedekindElem {
        DedekindElem::Zero
    }

    fn bound(&self) -> CardBoundMode {
        CardBoundMode::AtMost(self.kappa.clone())
    }

    fn evaluate(&self, fam: &Family<DedekindElem>) -> DedekindElem {
        let ranks: Vec<(ExtCard, ExtCard)> = fam.entries().iter().map(|(e, m)| (e.rank(), m.clone())).collect();
        let total = card_sum(ranks.iter().map(|(r, m)| (r, m)));
        let Some(rank) = total.to_u64() else {
            return DedekindElem::Infinite(total);
        };
        if rank == 0 {
            return DedekindElem::Zero;
        }
        let mut class = vec![0u64; self.factors.len()];
        for (e, m) in fam.entries() {
            if let (DedekindElem::Finite { class: g, .. }, Some(m)) = (e, m.to_u64()) {
                for ((c, gi), d) in class.iter_mut().zip(self.padded(g)).zip(&self.factors) {
                    *c = ((*c as u128 + gi as u128 * m as u128) % *d as u128) as u64;
                }
            }
        }
        DedekindElem::Finite { rank, class }
    }

    fn contains(&self, x: &DedekindElem) -> Truth {
        Truth::from_bool(match x {
            DedekindElem::Zero => true,
            DedekindElem::Finite { rank, class } => *rank >= 1 && self.class(class).is_ok(),
            DedekindElem::Infinite(a) => a.is_infinite() && card_leq(a, &self.kappa),
        })
    }

    fn equal(&self, a: &DedekindElem, b: &DedekindElem) -> Truth {
        let norm = |e: &DedekindElem| match e {
            DedekindElem::Finite { rank, class } => DedekindElem::Finite {
                rank: *rank,
                class: self.padded(class),
            },
            other => other.clone(),
        };
        Truth::from_bool(norm(a) == norm(b))
    }

    fn leq(&self, a: &DedekindElem, b: &DedekindElem) -> Truth {
        use DedekindElem::*;
        match (a, b) {
            (Zero, _) => Truth::Yes,
            (Finite { rank: n, class: g }, Finite { rank: m, class: h }) => {
                Truth::from_bool(n < m || (n == m && self.padded(g) == self.padded(h)))
            }
            (Finite { .. }, Infinite(_)) => Truth::Yes,
            (Infinite(a), Infinite(b)) => Truth::from_bool(card_leq(a, b)),
            _ => Truth::No,
        }
    }

    fn below_finite_multiple(&self, x: &DedekindElem, u: &DedekindElem) -> Truth {
        use DedekindElem::*;
        Truth::from_bool(match (x, u) {
            (Zero, _) => true,
            (_, Zero) => false,
            (Finite { .. }, _) => true,
            (Infinite(_), Finite { .. }) => false,
            (Infinite(a), Infinite(b)) => card_leq(a, b),
        })
    }
}

impl LawSubject for DedekindMonoid {
    fn sample(&self, rng: &mut dyn RngCore) -> DedekindElem {
        match rng.gen_range(0..6) {
            0 => DedekindElem::Zero,
            1 => DedekindElem::Infinite(sample_cardinal(&self.bound(), rng).max(ExtCard::aleph0())),
            _ => DedekindElem::Finite {
                rank: rng.gen_range(1..4),
                class: self.factors.iter().map(|&d| rng.gen_range(0..d)).collect(),
            },
        }
    }

    fn order_unit(&self) -> Option<DedekindElem> {
        Some(DedekindElem::Finite {
            rank: 1,
            class: vec![0; self.factors.len()],
        })
    }
}

/// The first condition an [`HnpVector`] fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HnpViolation {
    /// `x_i` exceeds the distinguished coordinate `x_0`.
    AboveDistinguished { index: usize },
    /// `x_i` is finite yet bounded by a finite multiple of `c_i`.
    FiniteBounded { index: usize },
    /// `x_i` exceeds the summation bound.
    AboveKappa { index: usize },
}

impl fmt::Display for HnpViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HnpViolation::AboveDistinguished { index } => write!(f, "x{index} exceeds x0"),
            HnpViolation::FiniteBounded { index } => {
                write!(f, "x{index} is finite and at most n*c{index} for some finite n")
            }
            HnpViolation::AboveKappa { index } => write!(f, "x{index} exceeds kappa"),
        }
    }
}

/// A candidate vector `x` in `F_kappa^Omega` over a finite index set with
/// weights `c`; coordinate `0` is distinguished.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnpVector {
    pub x: CardVec,
    pub c: Vec<BigRational>,
}

impl HnpVector {
    pub fn new(x: CardVec, c: Vec<BigRational>) -> Result<Self, GalleryError> {
        if x.dim() != c.len() {
            return Err(GalleryError::DimensionMismatch {
                expected: c.len(),
                found: x.dim(),
            });
        }
        if let Some(w) = c.iter().find(|w| w.is_negative()) {
            return Err(GalleryError::NegativeWeight(w.clone()));
        }
        Ok(HnpVector { x, c })
    }

    /// Why `x` is not in the infinite part, or `None` when it is.
    ///
    /// Over a finite index set only finitely many coordinates exist, so the
    /// bound on `x_i <= alpha` for infinite `alpha` holds automatically, and
    /// the weighted bound rules out every finite `x_i` reachable by `n c_i`.
    pub fn violation(&self, kappa: &ExtCard) -> Result<Option<HnpViolation>, GalleryError> {
        let coords = self.x.coords();
        let Some(x0) = coords.first() else {
            return Err(GalleryError::DimensionMismatch { expected: 1, found: 0 });
        };
        if x0.is_finite() {
            return Err(GalleryError::FiniteDistinguished(x0.clone()));
        }
        for (index, (xi, ci)) in coords.iter().zip(&self.c).enumerate() {
            if !card_leq(xi, kappa) {
                return Ok(Some(HnpViolation::AboveKappa { index }));
            }
            if !card_leq(xi, x0) {
                return Ok(Some(HnpViolation::AboveDistinguished { index }));
            }
            if xi.is_finite() && (ci.is_positive() || xi.is_zero()) {
                return Ok(Some(HnpViolation::FiniteBounded { index }));
            }
        }
        Ok(None)
    }

    pub fn member(&self, kappa: &ExtCard) -> Result<bool, GalleryError> {
        Ok(self.violation(kappa)?.is_none())
    }
}
