//! Free monoids on a finite basis: vectors of cardinals added coordinatewise.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::cardinals::{card_sum, CardError, ExtCard};
use crate::laws::LawSubject;
use crate::monoid::{CardBoundMode, Family, KappaMonoid, MonoidError, Truth};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VectorError {
    #[error("expected a vector of length {expected}, found length {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Card(#[from] CardError),
    #[error("malformed vector literal `{0}`")]
    Malformed(String),
}

/// A point of `F^n`: one cardinal per basis element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CardVec(pub Vec<ExtCard>);

impl CardVec {
    pub fn zeros(dim: usize) -> Self {
        CardVec(vec![ExtCard::zero(); dim])
    }

    pub fn from_u64s(coords: &[u64]) -> Self {
        CardVec(coords.iter().map(|&c| ExtCard::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[ExtCard] {
        &self.0
    }

    /// Every coordinate as a `u64`, if all are finite and fit.
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.0.iter().map(|c| c.to_u64()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    /// Coordinatewise `<=`.
    pub fn dominated_by(&self, other: &CardVec) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for CardVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for CardVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CardVec {
    type Err = VectorError;

    /// Accepts `(a, b, ...)` or a bare cardinal, read as a vector of length one.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = match t.strip_prefix('(') {
            Some(rest) => rest
                .strip_suffix(')')
                .ok_or_else(|| VectorError::Malformed(t.to_string()))?,
            None => return Ok(CardVec(vec![t.parse()?])),
        };
        if inner.trim().is_empty() {
            return Ok(CardVec(Vec::new()));
        }
        let coords = inner
            .split(',')
            .map(|c| c.parse::<ExtCard>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CardVec(coords))
    }
}

/// Coordinatewise sum of a family of vectors of length `dim`.
pub fn vec_ksum(dim: usize, fam: &Family<CardVec>) -> Result<CardVec, VectorError> {
    if let Some((bad, _)) = fam.entries().iter().find(|(v, _)| v.dim() != dim) {
        return Err(VectorError::LengthMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    Ok(sum_unchecked(dim, fam))
}

fn sum_unchecked(dim: usize, fam: &Family<CardVec>) -> CardVec {
    CardVec(
        (0..dim)
            .map(|i| card_sum(fam.entries().iter().map(|(v, m)| (&v.0[i], m))))
            .collect(),
    )
}

/// `F^n` for the given bound; with `Below(aleph0)` this is `N0^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorMonoid {
    dim: usize,
    bound: CardBoundMode,
}

impl VectorMonoid {
    pub fn new(dim: usize, bound: CardBoundMode) -> Self {
        VectorMonoid { dim, bound }
    }

    pub fn naturals(dim: usize) -> Self {
        VectorMonoid::new(dim, CardBoundMode::finite())
    }

    pub fn free(dim: usize, kappa: ExtCard) -> Self {
        VectorMonoid::new(dim, CardBoundMode::AtMost(kappa))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl KappaMonoid for VectorMonoid {
    type Elem = CardVec;

    fn name(&self) -> String {
        match &self.bound {
            b if b.is_finite_only() => format!("N0^{}", self.dim),
            b => format!("free({}) {b}", self.dim),
        }
    }

    fn zero(&self) -> CardVec {
        CardVec::zeros(self.dim)
    }

    fn bound(&self) -> CardBoundMode {
        self.bound.clone()
    }

    fn evaluate(&self, fam: &Family<CardVec>) -> CardVec {
        sum_unchecked(self.dim, fam)
    }

    fn contains(&self, x: &CardVec) -> Truth {
        Truth::from_bool(x.dim() == self.dim && x.0.iter().all(|c| self.bound.admits(c)))
    }

    fn leq(&self, a: &CardVec, b: &CardVec) -> Truth {
        Truth::from_bool(a.dominated_by(b))
    }

    fn below_finite_multiple(&self, x: &CardVec, u: &CardVec) -> Truth {
        Truth::from_bool(x.0.iter().zip(&u.0).all(|(xi, ui)| {
            if ui.is_zero() {
                xi.is_zero()
            } else if ui.is_finite() {
                xi.is_finite()
            } else {
                xi <= ui
            }
        }))
    }
}

impl LawSubject for VectorMonoid {
    fn sample(&self, rng: &mut dyn RngCore) -> CardVec {
        let infinite = self.bound.infinite_cardinals();
        CardVec(
            (0..self.dim)
                .map(|_| {
                    if !infinite.is_empty() && rng.gen_ratio(1, 5) {
                        infinite[rng.gen_range(0..infinite.len())].clone()
                    } else {
                        ExtCard::from(rng.gen_range(0u64..6))
                    }
                })
                .collect(),
        )
    }

    fn order_unit(&self) -> Option<CardVec> {
        Some(CardVec(vec![ExtCard::one(); self.dim]))
    }
}

/// The unique summation-preserving map `F^n -> m` sending basis vector `b` to `images[b]`.
pub fn free_extend_hom<M: KappaMonoid + ?Sized>(
    m: &M,
    images: &[M::Elem],
    x: &CardVec,
) -> Result<M::Elem, MonoidError> {
    if images.len() != x.dim() {
        return Err(MonoidError::Precondition(format!(
            "{} images for a vector of length {}",
            images.len(),
            x.dim()
        )));
    }
    let fam: Family<M::Elem> = images.iter().cloned().zip(x.0.iter().cloned()).collect();
    m.ksum(&fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::{check_axioms, sample_family};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(s: &str) -> CardVec {
        s.parse().unwrap()
    }

    fn a(level: u32) -> ExtCard {
        ExtCard::aleph_raw(level)
    }

    #[test]
    fn coordinatewise_sums() {
        let f = Family::new().with(v("(1,0)"), a(0));
        assert_eq!(vec_ksum(2, &f).unwrap(), v("(aleph0, 0)"));
        let f = Family::new().with(v("(1,2)"), 2u64).with(v("(0,1)"), 1u64);
        assert_eq!(vec_ksum(2, &f).unwrap(), v("(2, 5)"));
        let f = Family::new().with(v("(aleph0,1)"), 3u64).with(v("(1,aleph1)"), a(0));
        assert_eq!(vec_ksum(2, &f).unwrap(), v("(aleph0, aleph1)"));
    }

    #[test]
    fn length_mismatch_is_reported() {
        let f = Family::new().with(v("(1,0)"), 1u64).with(v("(1,2,3)"), 1u64);
        assert_eq!(
            vec_ksum(2, &f),
            Err(VectorError::LengthMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn literals() {
        assert_eq!(v("5"), CardVec::from_u64s(&[5]));
        assert_eq!(v("( aleph0 , 3 )").to_string(), "(aleph0, 3)");
        assert!("(1, 2".parse::<CardVec>().is_err());
        assert!("(1, x)".parse::<CardVec>().is_err());
    }

    #[test]
    fn scalar_multiples() {
        let m = VectorMonoid::free(2, a(0));
        assert_eq!(m.scalar(&a(0), &v("(1,2)")).unwrap(), v("(aleph0, aleph0)"));
        assert!(m.scalar(&a(1), &v("(1,2)")).is_err());
        let n = VectorMonoid::free(1, a(3));
        assert_eq!(
            n.ksum(&Family::new().with(v("2"), 1u64).with(v("3"), 1u64)).unwrap(),
            v("5")
        );
        assert_eq!(n.ksum(&Family::new()).unwrap(), v("0"));
    }

    #[test]
    fn hom_examples() {
        let line = VectorMonoid::free(1, a(2));
        assert_eq!(free_extend_hom(&line, &[v("7")], &v("5")).unwrap(), v("35"));
        let plane = VectorMonoid::free(2, a(0));
        assert_eq!(
            free_extend_hom(&plane, &[v("(1,1)")], &v("aleph0")).unwrap(),
            v("(aleph0, aleph0)")
        );
        assert_eq!(
            free_extend_hom(&plane, &[v("(1,1)"), v("(0,3)")], &v("(0,0)")).unwrap(),
            v("(0, 0)")
        );
    }

    #[test]
    fn free_monoids_pass_laws() {
        for m in [
            VectorMonoid::free(2, a(0)),
            VectorMonoid::free(3, a(2)),
            VectorMonoid::naturals(2),
            VectorMonoid::new(2, CardBoundMode::Below(a(2))),
        ] {
            let report = check_axioms(&m, 500, 42);
            assert!(report.all_passed(), "{}: {report}", m.name());
        }
    }

    proptest! {
        #[test]
        fn hom_sends_basis_to_images(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let target = VectorMonoid::free(2, a(1));
            let images: Vec<CardVec> = (0..3).map(|_| target.sample(&mut rng)).collect();
            for b in 0..3 {
                let mut basis = CardVec::zeros(3);
                basis.0[b] = ExtCard::one();
                prop_assert_eq!(free_extend_hom(&target, &images, &basis).unwrap(), images[b].clone());
            }
        }

        #[test]
        fn hom_commutes_with_sums(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let source = VectorMonoid::free(2, a(1));
            let target = VectorMonoid::free(3, a(1));
            let images: Vec<CardVec> = (0..2).map(|_| target.sample(&mut rng)).collect();
            let fam = sample_family(&source, &mut rng, 4);
            let lhs = free_extend_hom(&target, &images, &source.ksum(&fam).unwrap()).unwrap();
            let mapped: Family<CardVec> = fam
                .entries()
                .iter()
                .map(|(x, m)| (free_extend_hom(&target, &images, x).unwrap(), m.clone()))
                .collect();
            prop_assert_eq!(lhs, target.ksum(&mapped).unwrap());
        }
    }
}
