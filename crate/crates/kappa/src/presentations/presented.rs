use rand::{Rng, RngCore};

use super::form::{Coef, Form};
use super::realize::DEFAULT_STEPS;
use super::rewrite::{equal_with, in_add_with, Explorer, TwoGenPresentation};
use super::valuation::Valuation;
use crate::braiding::BraidHost;
use crate::laws::LawSubject;
use crate::monoid::{Budget, CardBoundMode, Family, KappaMonoid, Truth};

/// The `aleph0`-monoid presented by a [`TwoGenPresentation`], with forms as elements.
///
/// Each equality or order query runs on a fresh budget of `steps` expansions.
#[derive(Debug, Clone)]
pub struct PresentedMonoid {
    pres: TwoGenPresentation,
    seps: Vec<Valuation>,
    steps: u64,
}

impl PresentedMonoid {
    pub fn new(pres: TwoGenPresentation) -> Self {
        let seps = pres.separators();
        PresentedMonoid {
            pres,
            seps,
            steps: DEFAULT_STEPS,
        }
    }

    pub fn with_steps(mut self, steps: u64) -> Self {
        self.steps = steps;
        self
    }

    pub fn presentation(&self) -> &TwoGenPresentation {
        &self.pres
    }

    fn budget(&self) -> Budget {
        Budget::new(self.steps)
    }
}

impl KappaMonoid for PresentedMonoid {
    type Elem = Form;

    fn name(&self) -> String {
        self.pres.to_string()
    }

    fn zero(&self) -> Form {
        Form::ZERO
    }

    fn bound(&self) -> CardBoundMode {
        CardBoundMode::at_most_level(0)
    }

    fn evaluate(&self, fam: &Family<Form>) -> Form {
        fam.entries()
            .iter()
            .fold(Form::ZERO, |acc, (f, m)| acc + f.scale(Coef::saturating_from_card(m)))
    }

    fn equal(&self, a: &Form, b: &Form) -> Truth {
        equal_with(&self.pres, &self.seps, *a, *b, &mut self.budget()).truth()
    }

    fn leq(&self, a: &Form, b: &Form) -> Truth {
        if a.dominated_by(b) {
            return Truth::Yes;
        }
        let explorer = Explorer::for_forms(&self.pres, &[*a, *b]);
        let ex = explorer.explore(&[*b], |h| a.dominated_by(h), &mut self.budget());
        if ex.found.is_some() {
            Truth::Yes
        } else {
            Truth::Unknown
        }
    }

    fn below_finite_multiple(&self, x: &Form, u: &Form) -> Truth {
        in_add_with(&self.pres, &self.seps, *x, *u, &mut self.budget()).truth()
    }
}

impl BraidHost for PresentedMonoid {
    fn base_coords(&self, e: &Form) -> Option<Vec<u64>> {
        Some(vec![e.a.value()?, e.b.value()?])
    }

    fn lift_base_coords(&self, coords: &[u64]) -> Form {
        Form::finite(coords[0], coords[1])
    }
}

impl LawSubject for PresentedMonoid {
    fn sample(&self, rng: &mut dyn RngCore) -> Form {
        let mut coef = || {
            if rng.gen_ratio(1, 6) {
                Coef::Inf
            } else {
                Coef::Fin(rng.gen_range(0..4))
            }
        };
        Form::new(coef(), coef())
    }

    fn order_unit(&self) -> Option<Form> {
        Some(Form::finite(1, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::check_axioms;
    use crate::ExtCard;

    #[test]
    fn sums_scale_coefficients() {
        let m = PresentedMonoid::new(TwoGenPresentation::free());
        let fam = Family::new().with(Form::X1, 3u64).with(Form::X2, ExtCard::aleph0());
        assert_eq!(m.ksum(&fam).unwrap(), Form::new(Coef::Fin(3), Coef::Inf));
        assert!(m.ksum(&Family::singleton(Form::X1, ExtCard::aleph_raw(1))).is_err());
    }

    #[test]
    fn relations_drive_equality() {
        let m = PresentedMonoid::new(TwoGenPresentation::plane_with_infinity());
        assert_eq!(m.equal(&Form::new(Coef::Inf, Coef::ZERO), &Form::TOP), Truth::Yes);
        assert_eq!(m.equal(&Form::X1, &Form::X2), Truth::No);
        assert_eq!(m.leq(&Form::X2, &Form::new(Coef::Inf, Coef::ZERO)), Truth::Yes);
        assert_eq!(m.below_finite_multiple(&Form::X2, &Form::X1), Truth::No);
    }

    #[test]
    fn braidings_of_forms() {
        use crate::braiding::{braid_find, BraidVerdict};
        let m = PresentedMonoid::new(TwoGenPresentation::free().relation(Form::finite(2, 0), Form::X2));
        let x = Family::singleton(Form::X1, ExtCard::aleph0());
        let y = Family::singleton(Form::finite(2, 0), ExtCard::aleph0());
        let verdict = braid_find(&m, &x, &y, &ExtCard::aleph0(), &mut Budget::default()).unwrap();
        assert!(matches!(verdict, BraidVerdict::Braided(_)), "{verdict:?}");
        let w = Family::singleton(Form::X2, ExtCard::aleph0());
        let verdict = braid_find(&m, &x, &w, &ExtCard::aleph0(), &mut Budget::default()).unwrap();
        assert_ne!(verdict.truth(), Truth::No);
        let z = Family::singleton(Form::X2, 3u64.into());
        let verdict = braid_find(&m, &x, &z, &ExtCard::aleph0(), &mut Budget::default()).unwrap();
        assert_eq!(verdict.truth(), Truth::No);
    }

    #[test]
    fn laws_hold() {
        for p in [TwoGenPresentation::free(), TwoGenPresentation::plane_with_infinity()] {
            let m = PresentedMonoid::new(p).with_steps(500);
            let report = check_axioms(&m, 200, 7);
            assert!(report.all_passed(), "{report}");
        }
    }
}
