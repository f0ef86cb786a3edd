use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use super::form::{Coef, Form};
use super::valuation::{respecting, Valuation};
use crate::monoid::{Budget, Truth};

/// Finitely many relations between forms, presenting an `aleph0`-monoid on `X1`, `X2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwoGenPresentation {
    relations: Vec<(Form, Form)>,
}

impl TwoGenPresentation {
    pub fn new(relations: Vec<(Form, Form)>) -> Self {
        TwoGenPresentation { relations }
    }

    /// No relations: the free `aleph0`-monoid on two generators.
    pub fn free() -> Self {
        TwoGenPresentation::default()
    }

    /// `N0^2` with a single infinite element: every infinite form is identified.
    pub fn plane_with_infinity() -> Self {
        let x = Form::new(Coef::Inf, Coef::ZERO);
        TwoGenPresentation::new(vec![(x, Form::new(Coef::ZERO, Coef::Inf)), (x, Form::TOP)])
    }

    pub fn relation(mut self, lhs: Form, rhs: Form) -> Self {
        self.relations.push((lhs, rhs));
        self
    }

    pub fn relations(&self) -> &[(Form, Form)] {
        &self.relations
    }

    /// The same presentation with the roles of `X1` and `X2` exchanged.
    pub fn swapped(&self) -> Self {
        TwoGenPresentation::new(self.relations.iter().map(|(l, r)| (l.swapped(), r.swapped())).collect())
    }

    /// Largest finite coefficient occurring in a relation.
    pub fn size(&self) -> u64 {
        self.relations
            .iter()
            .flat_map(|(l, r)| [l.finite_size(), r.finite_size()])
            .max()
            .unwrap_or(0)
    }

    /// Valuations from the built-in candidate list that respect every relation.
    pub fn separators(&self) -> Vec<Valuation> {
        respecting(&self.relations)
    }
}

impl fmt::Display for TwoGenPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("twogen {")?;
        for (l, r) in &self.relations {
            write!(f, " rel: {} = {};", l.linear(), r.linear())?;
        }
        f.write_str(" }")
    }
}

/// One application of a relation inside a context:
/// `from = context + times * lhs` and `to = context + times * rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub from: Form,
    pub to: Form,
    pub relation: usize,
    pub reversed: bool,
    pub times: Coef,
    pub context: Form,
}

impl RewriteStep {
    pub fn is_valid(&self, p: &TwoGenPresentation) -> bool {
        let Some(&(l, r)) = p.relations.get(self.relation) else {
            return false;
        };
        let (l, r) = if self.reversed { (r, l) } else { (l, r) };
        !self.times.is_zero()
            && self.from == self.context + l.scale(self.times)
            && self.to == self.context + r.scale(self.times)
    }

    fn shifted(&self, by: Form) -> RewriteStep {
        RewriteStep {
            from: self.from + by,
            to: self.to + by,
            context: self.context + by,
            ..self.clone()
        }
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} by relation {}{} x{} in context {}",
            self.from,
            self.to,
            self.relation + 1,
            if self.reversed { " reversed" } else { "" },
            self.times,
            self.context
        )
    }
}

/// A sequence of rewrite steps; an empty chain proves `start = start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteChain {
    pub start: Form,
    pub steps: Vec<RewriteStep>,
}

impl RewriteChain {
    pub fn trivial(start: Form) -> Self {
        RewriteChain {
            start,
            steps: Vec::new(),
        }
    }

    pub fn end(&self) -> Form {
        self.steps.last().map_or(self.start, |s| s.to)
    }

    /// Checks that every step is an instance of a relation and that the steps connect.
    pub fn replay(&self, p: &TwoGenPresentation) -> bool {
        let mut at = self.start;
        for step in &self.steps {
            if step.from != at || !step.is_valid(p) {
                return false;
            }
            at = step.to;
        }
        true
    }

    /// The chain with `by` added to every form.
    pub fn shifted(&self, by: Form) -> RewriteChain {
        RewriteChain {
            start: self.start + by,
            steps: self.steps.iter().map(|s| s.shifted(by)).collect(),
        }
    }

    /// Concatenation, provided `next` starts where `self` ends.
    pub fn then(mut self, next: &RewriteChain) -> Option<RewriteChain> {
        if self.end() != next.start {
            return None;
        }
        self.steps.extend(next.steps.iter().cloned());
        Some(self)
    }

    /// A chain proving `f + f' = g + g'` from chains for `f = g` and `f' = g'`.
    pub fn sum(&self, other: &RewriteChain) -> RewriteChain {
        let first = self.shifted(other.start);
        let second = other.shifted(self.end());
        first
            .then(&second)
            .unwrap_or_else(|| unreachable!("shifted chains always connect"))
    }
}

impl fmt::Display for RewriteChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for s in &self.steps {
            write!(f, " -> {}", s.to)?;
        }
        Ok(())
    }
}

/// A three-valued answer carrying a replayable witness on either side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<Y, N> {
    Yes(Y),
    No(N),
    Unknown(String),
}

impl<Y, N> Verdict<Y, N> {
    pub fn truth(&self) -> Truth {
        match self {
            Verdict::Yes(_) => Truth::Yes,
            Verdict::No(_) => Truth::No,
            Verdict::Unknown(_) => Truth::Unknown,
        }
    }
}

/// A witness for `target + rest = multiple * base`, with a chain from
/// `multiple * base` to `target + rest`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddWitness {
    pub multiple: u64,
    pub rest: Form,
    pub chain: RewriteChain,
}

impl fmt::Display for AddWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n = {}, t = {}", self.multiple, self.rest)
    }
}

pub(crate) struct Exploration {
    parents: BTreeMap<Form, Option<RewriteStep>>,
    pub(crate) found: Option<Form>,
    pub(crate) complete: bool,
}

impl Exploration {
    pub(crate) fn len(&self) -> usize {
        self.parents.len()
    }

    /// The chain from a start of the search to `f`.
    pub(crate) fn chain_to(&self, f: Form) -> Option<RewriteChain> {
        let mut steps = Vec::new();
        let mut at = f;
        loop {
            match self.parents.get(&at)? {
                None => break,
                Some(step) => {
                    steps.push(step.clone());
                    at = step.from;
                }
            }
        }
        steps.reverse();
        Some(RewriteChain { start: at, steps })
    }
}

/// Breadth-first rewriting confined to forms whose finite coefficients stay below a bound.
pub(crate) struct Explorer<'p> {
    pres: &'p TwoGenPresentation,
    pub(crate) bound: u64,
}

impl<'p> Explorer<'p> {
    pub(crate) fn new(pres: &'p TwoGenPresentation, bound: u64) -> Self {
        Explorer { pres, bound }
    }

    /// A bound leaving room for twice the coefficients involved.
    pub(crate) fn for_forms(pres: &'p TwoGenPresentation, forms: &[Form]) -> Self {
        let size = forms.iter().map(Form::finite_size).max().unwrap_or(0).max(pres.size());
        Explorer::new(pres, 2 * (size + pres.size()) + 4)
    }

    fn fits(&self, f: &Form) -> bool {
        f.coords().iter().all(|c| c.value().is_none_or(|v| v <= self.bound))
    }

    fn contexts(&self, f: Coef, taken: Coef) -> Vec<Coef> {
        match (f, taken) {
            (Coef::Inf, Coef::Inf) => (0..=self.bound).map(Coef::Fin).chain([Coef::Inf]).collect(),
            _ => f.minus(taken).into_iter().collect(),
        }
    }

    pub(crate) fn moves(&self, f: Form) -> Vec<RewriteStep> {
        let mut out = Vec::new();
        for (k, &(l, r)) in self.pres.relations.iter().enumerate() {
            for reversed in [false, true] {
                let (lhs, rhs) = if reversed { (r, l) } else { (l, r) };
                for times in [Coef::ONE, Coef::Inf] {
                    let (take, give) = (lhs.scale(times), rhs.scale(times));
                    if !take.dominated_by(&f) {
                        continue;
                    }
                    for ca in self.contexts(f.a, take.a) {
                        for cb in self.contexts(f.b, take.b) {
                            let context = Form::new(ca, cb);
                            let to = context + give;
                            if to != f && self.fits(&to) {
                                out.push(RewriteStep {
                                    from: f,
                                    to,
                                    relation: k,
                                    reversed,
                                    times,
                                    context,
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Explores from `starts` until `goal` holds, the bounded space is exhausted,
    /// or the budget runs out. One unit of budget is spent per expanded form.
    pub(crate) fn explore(&self, starts: &[Form], goal: impl Fn(&Form) -> bool, budget: &mut Budget) -> Exploration {
        let mut parents = BTreeMap::new();
        let mut queue = VecDeque::new();
        for s in starts {
            if parents.insert(*s, None).is_none() {
                if goal(s) {
                    return Exploration {
                        parents,
                        found: Some(*s),
                        complete: false,
                    };
                }
                queue.push_back(*s);
            }
        }
        while let Some(f) = queue.pop_front() {
            if !budget.tick() {
                return Exploration {
                    parents,
                    found: None,
                    complete: false,
                };
            }
            for step in self.moves(f) {
                let to = step.to;
                if parents.contains_key(&to) {
                    continue;
                }
                parents.insert(to, Some(step));
                if goal(&to) {
                    return Exploration {
                        parents,
                        found: Some(to),
                        complete: false,
                    };
                }
                queue.push_back(to);
            }
        }
        Exploration {
            parents,
            found: None,
            complete: true,
        }
    }
}

fn unknown_report(ex: &Exploration, explorer: &Explorer, budget: &Budget) -> String {
    let why = if ex.complete {
        format!(
            "all {} forms with finite coefficients up to {} were explored",
            ex.len(),
            explorer.bound
        )
    } else {
        format!("{budget} before the search finished")
    };
    format!("no rewrite chain found and no separating valuation; {why}")
}

pub(crate) fn equal_with(
    p: &TwoGenPresentation,
    seps: &[Valuation],
    f: Form,
    g: Form,
    budget: &mut Budget,
) -> Verdict<RewriteChain, Valuation> {
    if f == g {
        return Verdict::Yes(RewriteChain::trivial(f));
    }
    if let Some(v) = seps.iter().find(|v| v.eval(&f) != v.eval(&g)) {
        return Verdict::No(v.clone());
    }
    let explorer = Explorer::for_forms(p, &[f, g]);
    let ex = explorer.explore(&[f], |h| *h == g, budget);
    match ex.found.and_then(|h| ex.chain_to(h)) {
        Some(chain) => Verdict::Yes(chain),
        None => Verdict::Unknown(unknown_report(&ex, &explorer, budget)),
    }
}

/// Decides whether two forms represent the same element.
///
/// A positive answer carries a rewrite chain; a negative one carries a
/// valuation respecting every relation that tells the forms apart.
pub fn forms_equal(p: &TwoGenPresentation, f: Form, g: Form, budget: &mut Budget) -> Verdict<RewriteChain, Valuation> {
    equal_with(p, &p.separators(), f, g, budget)
}

pub(crate) fn in_add_with(
    p: &TwoGenPresentation,
    seps: &[Valuation],
    target: Form,
    base: Form,
    budget: &mut Budget,
) -> Verdict<AddWitness, Valuation> {
    if let Some(v) = seps.iter().find(|v| v.never_below(&v.eval(&target), &v.eval(&base))) {
        return Verdict::No(v.clone());
    }
    let explorer = Explorer::for_forms(p, &[target, base.scale(Coef::Fin(p.size() + 4))]);
    let multiples = explorer.bound / base.finite_size().max(1);
    let mut last = None;
    for n in 0..=multiples {
        let start = base.scale(Coef::Fin(n));
        let ex = explorer.explore(&[start], |h| target.dominated_by(h), budget);
        if let Some(h) = ex.found {
            let chain = ex.chain_to(h).unwrap_or_else(|| RewriteChain::trivial(h));
            let rest = h.remainder(&target).unwrap_or(Form::ZERO);
            return Verdict::Yes(AddWitness {
                multiple: n,
                rest,
                chain,
            });
        }
        if budget.exhausted() {
            return Verdict::Unknown(unknown_report(&ex, &explorer, budget));
        }
        last = Some(ex);
    }
    match last {
        Some(ex) => Verdict::Unknown(unknown_report(&ex, &explorer, budget)),
        None => Verdict::Unknown("no multiples were searched".into()),
    }
}

/// Whether `target + t = n base` for some finite `n` and some form `t`.
pub fn in_add(p: &TwoGenPresentation, target: Form, base: Form, budget: &mut Budget) -> Verdict<AddWitness, Valuation> {
    in_add_with(p, &p.separators(), target, base, budget)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn inf() -> Coef {
        Coef::Inf
    }

    fn eq(p: &TwoGenPresentation, f: Form, g: Form) -> Verdict<RewriteChain, Valuation> {
        forms_equal(p, f, g, &mut Budget::default())
    }

    #[test]
    fn free_forms_are_separated() {
        let v = eq(&TwoGenPresentation::free(), Form::X1, Form::X2);
        assert!(matches!(v, Verdict::No(_)));
    }

    #[test]
    fn repeated_relation() {
        let p = TwoGenPresentation::free().relation(Form::X1, Form::X2);
        let Verdict::Yes(chain) = eq(&p, Form::finite(3, 0), Form::finite(0, 3)) else {
            panic!("expected a chain")
        };
        assert!(chain.replay(&p));
        assert_eq!(chain.end(), Form::finite(0, 3));
        assert_eq!(chain.steps.len(), 3);
    }

    #[test]
    fn absorbed_generator_is_told_apart_by_infinite_support() {
        let p = TwoGenPresentation::free().relation(Form::finite(1, 1), Form::X2);
        let v = eq(&p, Form::new(inf(), Coef::ONE), Form::X2);
        let Verdict::No(sep) = v else { panic!("{v:?}") };
        assert!(sep.respects(p.relations()));
        let w = eq(&p, Form::new(Coef::Fin(5), Coef::ONE), Form::X2);
        assert!(matches!(w, Verdict::Yes(ref c) if c.replay(&p)));
        let w = eq(&p, Form::new(inf(), inf()), Form::new(Coef::ZERO, inf()));
        assert!(matches!(w, Verdict::Yes(ref c) if c.replay(&p)), "{w:?}");
    }

    #[test]
    fn plane_with_infinity_collapses_infinite_forms() {
        let p = TwoGenPresentation::plane_with_infinity();
        let v = eq(&p, Form::new(Coef::Fin(3), inf()), Form::new(inf(), Coef::Fin(7)));
        assert!(matches!(v, Verdict::Yes(ref c) if c.replay(&p)), "{v:?}");
        assert!(matches!(eq(&p, Form::finite(1, 2), Form::finite(2, 1)), Verdict::No(_)));
    }

    #[test]
    fn add_membership() {
        let mut b = Budget::default();
        let free = TwoGenPresentation::free();
        let Verdict::Yes(w) = in_add(&free, Form::X1, Form::finite(1, 1), &mut b) else {
            panic!("expected membership")
        };
        assert_eq!((w.multiple, w.rest), (1, Form::X2));
        assert!(matches!(in_add(&free, Form::X2, Form::X1, &mut b), Verdict::No(_)));
        let p = TwoGenPresentation::free().relation(Form::finite(2, 0), Form::X2);
        let Verdict::Yes(w) = in_add(&p, Form::X2, Form::X1, &mut b) else {
            panic!("expected membership")
        };
        assert_eq!((w.multiple, w.rest), (2, Form::ZERO));
        assert!(w.chain.replay(&p));
    }

    #[test]
    fn chains_add_up() {
        let p = TwoGenPresentation::free().relation(Form::X1, Form::X2);
        let Verdict::Yes(c1) = eq(&p, Form::finite(2, 0), Form::finite(0, 2)) else {
            panic!()
        };
        let Verdict::Yes(c2) = eq(&p, Form::finite(0, 1), Form::finite(1, 0)) else {
            panic!()
        };
        let s = c1.sum(&c2);
        assert!(s.replay(&p));
        assert_eq!((s.start, s.end()), (Form::finite(2, 1), Form::finite(1, 2)));
    }

    #[test]
    fn display() {
        let p = TwoGenPresentation::free()
            .relation(Form::new(Coef::ONE, inf()), Form::new(Coef::ZERO, inf()))
            .relation(Form::finite(2, 0), Form::X2);
        assert_eq!(
            p.to_string(),
            "twogen { rel: 1*X1 + aleph0*X2 = aleph0*X2; rel: 2*X1 = 1*X2; }"
        );
        assert_eq!(TwoGenPresentation::free().to_string(), "twogen { }");
    }

    pub(crate) mod strategies {
        use super::*;
        use proptest::prelude::*;

        pub fn coef() -> impl Strategy<Value = Coef> {
            prop_oneof![4 => (0u64..4).prop_map(Coef::Fin), 1 => Just(Coef::Inf)]
        }

        pub fn form() -> impl Strategy<Value = Form> {
            (coef(), coef()).prop_map(|(a, b)| Form::new(a, b))
        }

        pub fn presentation() -> impl Strategy<Value = TwoGenPresentation> {
            proptest::collection::vec((form(), form()), 0..3).prop_map(TwoGenPresentation::new)
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn equality_answers_carry_checkable_witnesses(
            p in strategies::presentation(),
            f in strategies::form(),
            g in strategies::form(),
        ) {
            match forms_equal(&p, f, g, &mut Budget::new(2_000)) {
                Verdict::Yes(chain) => {
                    proptest::prop_assert_eq!(chain.start, f);
                    proptest::prop_assert_eq!(chain.end(), g);
                    proptest::prop_assert!(chain.replay(&p));
                }
                Verdict::No(v) => {
                    proptest::prop_assert!(v.respects(p.relations()));
                    proptest::prop_assert_ne!(v.eval(&f), v.eval(&g));
                }
                Verdict::Unknown(_) => {}
            }
        }

        #[test]
        fn add_witnesses_replay(p in strategies::presentation(), f in strategies::form()) {
            if let Verdict::Yes(w) = in_add(&p, f, Form::finite(1, 1), &mut Budget::new(2_000)) {
                proptest::prop_assert_eq!(w.chain.start, Form::finite(1, 1).scale(Coef::Fin(w.multiple)));
                proptest::prop_assert_eq!(w.chain.end(), f + w.rest);
                proptest::prop_assert!(w.chain.replay(&p));
            }
        }
    }
}
