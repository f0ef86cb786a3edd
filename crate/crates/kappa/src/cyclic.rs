//! Cyclic monoids: the naturals and the finite monoids `C(m, n)` with
//! `k = l` whenever both are at least `m` and congruent mod `n`, optionally
//! extended by the infinite cardinals up to a bound.

use num_bigint::BigUint;
use rand::{Rng, RngCore};
use thiserror::Error;

use crate::cardinals::{card_sum, ExtCard};
use crate::laws::{sample_cardinal, LawSubject};
use crate::monoid::{CardBoundMode, Family, KappaMonoid, Truth};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CyclicKind {
    Naturals,
    /// Elements `0, 1, ..., m + n - 1`; `m` is the tail length and `n` the period.
    Cmn {
        tail: u64,
        period: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclicError {
    #[error("the period of a cyclic monoid must be at least 1")]
    ZeroPeriod,
    #[error("C(0, {0}) is a group and has no infinite extension")]
    NotReduced(u64),
    #[error("extension bound {0} is not infinite")]
    FiniteBound(ExtCard),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicMonoid {
    kind: CyclicKind,
    extension: Option<ExtCard>,
}

impl CyclicMonoid {
    pub fn naturals() -> Self {
        CyclicMonoid {
            kind: CyclicKind::Naturals,
            extension: None,
        }
    }

    pub fn cmn(tail: u64, period: u64) -> Result<Self, CyclicError> {
        if period == 0 {
            return Err(CyclicError::ZeroPeriod);
        }
        Ok(CyclicMonoid {
            kind: CyclicKind::Cmn { tail, period },
            extension: None,
        })
    }

    /// Adjoins the infinite cardinals up to `kappa`.
    pub fn extended(self, kappa: ExtCard) -> Result<Self, CyclicError> {
        if kappa.is_finite() {
            return Err(CyclicError::FiniteBound(kappa));
        }
        if let CyclicKind::Cmn { tail: 0, period } = self.kind {
            return Err(CyclicError::NotReduced(period));
        }
        Ok(CyclicMonoid {
            extension: Some(kappa),
            ..self
        })
    }

    pub fn kind(&self) -> CyclicKind {
        self.kind
    }

    /// Number of finite elements, `None` for the naturals.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            CyclicKind::Naturals => None,
            CyclicKind::Cmn { tail, period } => Some(tail + period),
        }
    }

    pub fn reduce(&self, k: &BigUint) -> BigUint {
        match self.kind {
            CyclicKind::Naturals => k.clone(),
            CyclicKind::Cmn { tail, period } => {
                let tail = BigUint::from(tail);
                if *k < tail {
                    k.clone()
                } else {
                    &tail + (k - &tail) % BigUint::from(period)
                }
            }
        }
    }

    fn reduce_card(&self, c: &ExtCard) -> ExtCard {
        match c.finite_value() {
            Some(k) => ExtCard::finite(self.reduce(k)),
            None => c.clone(),
        }
    }
}

impl KappaMonoid for CyclicMonoid {
    type Elem = ExtCard;

    fn name(&self) -> String {
        let base = match self.kind {
            CyclicKind::Naturals => "N0".to_string(),
            CyclicKind::Cmn { tail, period } => format!("cmn({tail},{period})"),
        };
        match &self.extension {
            Some(k) => format!("{base} + cardinals <= {k}"),
            None => base,
        }
    }

    fn zero(&self) -> ExtCard {
        ExtCard::zero()
    }

    fn bound(&self) -> CardBoundMode {
        match &self.extension {
            Some(k) => CardBoundMode::AtMost(k.clone()),
            None => CardBoundMode::finite(),
        }
    }

    fn evaluate(&self, fam: &Family<ExtCard>) -> ExtCard {
        let total = card_sum(fam.entries().iter().map(|(v, n)| (v, n)));
        self.reduce_card(&total)
    }

    fn contains(&self, x: &ExtCard) -> Truth {
        match x.finite_value() {
            Some(k) => Truth::from_bool(self.order().is_none_or(|o| *k < BigUint::from(o))),
            None => Truth::from_bool(self.extension.as_ref().is_some_and(|kappa| x <= kappa)),
        }
    }

    fn equal(&self, a: &ExtCard, b: &ExtCard) -> Truth {
        Truth::from_bool(self.reduce_card(a) == self.reduce_card(b))
    }

    fn leq(&self, a: &ExtCard, b: &ExtCard) -> Truth {
        let (a, b) = (self.reduce_card(a), self.reduce_card(b));
        match (a.finite_value(), b.finite_value()) {
            (_, None) => Truth::from_bool(a <= b),
            (None, Some(_)) => Truth::No,
            (Some(x), Some(y)) => match self.order() {
                None => Truth::from_bool(x <= y),
                Some(order) => Truth::from_bool((0..order).any(|c| self.reduce(&(x + BigUint::from(c))) == *y)),
            },
        }
    }

    fn below_finite_multiple(&self, x: &ExtCard, u: &ExtCard) -> Truth {
        let (x, u) = (self.reduce_card(x), self.reduce_card(u));
        if x.is_infinite() {
            return Truth::from_bool(u.is_infinite() && x <= u);
        }
        Truth::from_bool(!u.is_zero() || x.is_zero())
    }
}

impl LawSubject for CyclicMonoid {
    fn sample(&self, rng: &mut dyn RngCore) -> ExtCard {
        if self.extension.is_some() && rng.gen_ratio(1, 5) {
            return sample_cardinal(&self.bound(), rng).max(ExtCard::aleph0());
        }
        let top = self.order().unwrap_or(9);
        ExtCard::from(rng.gen_range(0..top))
    }

    fn order_unit(&self) -> Option<ExtCard> {
        Some(ExtCard::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::size_of;

    fn residue_walk(tail: u64, period: u64, k: u64) -> u64 {
        let mut state = 0u64;
        for _ in 0..k {
            state += 1;
            if state == tail + period {
                state = tail;
            }
        }
        state
    }

    #[test]
    fn reduction_matches_residue_walk() {
        for tail in 0..4 {
            for period in 1..4 {
                let c = CyclicMonoid::cmn(tail, period).unwrap();
                for k in 0..40u64 {
                    assert_eq!(
                        c.reduce(&BigUint::from(k)),
                        BigUint::from(residue_walk(tail, period, k))
                    );
                }
            }
        }
    }

    #[test]
    fn element_count_and_identification() {
        let c = CyclicMonoid::cmn(2, 3).unwrap();
        let distinct: std::collections::BTreeSet<_> = (0..50u64).map(|k| c.reduce(&BigUint::from(k))).collect();
        assert_eq!(distinct.len(), 5);
        for k in 0..20u64 {
            for l in 0..20u64 {
                let same = k == l || (k.abs_diff(l) % 3 == 0 && k.min(l) >= 2);
                assert_eq!(c.equal(&k.into(), &l.into()).is_yes(), same, "{k} {l}");
            }
        }
    }

    #[test]
    fn scalar_in_extended_cmn() {
        let c = CyclicMonoid::cmn(1, 2).unwrap().extended(ExtCard::aleph0()).unwrap();
        assert_eq!(c.scalar(&5u64.into(), &1u64.into()).unwrap(), ExtCard::one());
        assert_eq!(c.scalar(&ExtCard::aleph0(), &1u64.into()).unwrap(), ExtCard::aleph0());
        assert_eq!(c.scalar(&ExtCard::aleph0(), &0u64.into()).unwrap(), ExtCard::zero());
    }

    #[test]
    fn groups_cannot_be_extended() {
        let g = CyclicMonoid::cmn(0, 2).unwrap();
        assert_eq!(g.extended(ExtCard::aleph0()), Err(CyclicError::NotReduced(2)));
        assert_eq!(CyclicMonoid::cmn(1, 0), Err(CyclicError::ZeroPeriod));
    }

    #[test]
    fn order_in_cmn_is_not_antisymmetric() {
        let c = CyclicMonoid::cmn(0, 2).unwrap();
        assert!(c.leq(&0u64.into(), &1u64.into()).is_yes());
        assert!(c.leq(&1u64.into(), &0u64.into()).is_yes());
    }

    #[test]
    fn unit_size_in_extended_naturals() {
        let n = CyclicMonoid::naturals().extended(ExtCard::aleph_raw(1)).unwrap();
        let s = size_of(&n, &ExtCard::one(), &ExtCard::from(5u64), 64).unwrap();
        assert_eq!(s, crate::monoid::Decision::Decided(ExtCard::zero()));
        let s = size_of(&n, &ExtCard::one(), &ExtCard::aleph_raw(1), 64).unwrap();
        assert_eq!(s, crate::monoid::Decision::Decided(ExtCard::aleph_raw(1)));
        assert!(n.contains(&ExtCard::aleph_raw(2)).is_no());
        assert!(!n.contains(&ExtCard::zero()).is_no());
    }
}
