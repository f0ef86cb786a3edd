use std::fmt;

use super::form::{Coef, Form};
use super::rewrite::{equal_with, in_add_with, AddWitness, Explorer, RewriteChain, TwoGenPresentation, Verdict};
use super::valuation::{NatCongruence, Valuation};
use crate::monoid::{Budget, Truth};

/// Default number of form expansions for the realizability deciders.
pub const DEFAULT_STEPS: u64 = 10_000;

/// The three conditions characterising realizable two-generated monoids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// No element has both a finite and an infinite form.
    FormTypes,
    /// If `x_i` is not in `add(x_j)`, `m x_i + aleph0 x_j = n x_i + aleph0 x_j`
    /// forces `m x_i + k x_j = n x_i + k' x_j` for some finite `k`, `k'`.
    FiniteShift,
    /// `n x_i + aleph0 x_j = aleph0 x_i + aleph0 x_j` forces
    /// `aleph0 x_j = aleph0 x_i + aleph0 x_j` and `x_i` in `add(x_j)`.
    InfiniteAbsorption,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::FormTypes => "form-types",
            Condition::FiniteShift => "finite-shift",
            Condition::InfiniteAbsorption => "infinite-absorption",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionWitness {
    MixedForms {
        finite: Form,
        infinite: Form,
    },
    Shift {
        m: u64,
        n: u64,
        chain: RewriteChain,
        separator: Valuation,
    },
    Absorption {
        n: u64,
        chain: RewriteChain,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCheck {
    pub condition: Condition,
    /// The generator indices `(i, j)` the condition was instantiated with.
    pub order: Option<(u8, u8)>,
    pub truth: Truth,
    pub detail: String,
    pub witness: Option<ConditionWitness>,
}

impl ConditionCheck {
    pub fn label(&self) -> String {
        match self.order {
            Some((i, j)) => format!("{} [i={i}, j={j}]", self.condition.name()),
            None => self.condition.name().to_string(),
        }
    }
}

impl fmt::Display for ConditionCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.label(), self.truth, self.detail)
    }
}

/// A named yes/no/unknown finding with an explanation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub truth: Truth,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.name, self.truth, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizabilityReport {
    pub non_cyclic: Check,
    pub checks: Vec<ConditionCheck>,
    pub verdict: Truth,
}

impl RealizabilityReport {
    /// The first violated condition, in the order the checks are listed.
    pub fn violated(&self) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| c.truth.is_no())
    }
}

impl fmt::Display for RealizabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.non_cyclic)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        match self.violated() {
            Some(c) => write!(f, "verdict: {} (violates {})", self.verdict, c.label()),
            None => write!(f, "verdict: {}", self.verdict),
        }
    }
}

enum Premise {
    Holds { n: u64, chain: RewriteChain },
    Never(Valuation),
    Unknown(String),
}

/// The presentation seen with `x_i` as first and `x_j` as second generator.
struct Side {
    pres: TwoGenPresentation,
    seps: Vec<Valuation>,
    i: u8,
    j: u8,
}

impl Side {
    fn new(p: &TwoGenPresentation, swap: bool) -> Self {
        let pres = if swap { p.swapped() } else { p.clone() };
        let seps = pres.separators();
        let (i, j) = if swap { (2, 1) } else { (1, 2) };
        Side { pres, seps, i, j }
    }

    fn range(&self) -> u64 {
        self.pres.size() + 4
    }

    fn explorer(&self) -> Explorer<'_> {
        Explorer::new(&self.pres, 2 * (self.range() + self.pres.size()) + 4)
    }

    fn term(c: Coef, x: u8) -> String {
        format!("{c} x{x}")
    }

    fn show(&self, f: Form) -> String {
        format!("{} + {}", Side::term(f.a, self.i), Side::term(f.b, self.j))
    }

    fn xi_in_add(&self, budget: &mut Budget) -> Verdict<AddWitness, Valuation> {
        in_add_with(&self.pres, &self.seps, Form::X1, Form::X2, budget)
    }

    fn premise(&self, budget: &mut Budget) -> Premise {
        let shifted = Form::new(Coef::ZERO, Coef::Inf);
        let ex = self.explorer().explore(&[Form::TOP], |_| false, budget);
        for n in 0..=self.range() {
            let f = Form::new(Coef::Fin(n), Coef::Inf);
            if let Some(chain) = ex.chain_to(f) {
                return Premise::Holds { n, chain };
            }
        }
        let refuted = self
            .seps
            .iter()
            .find(|v| v.avoids(&v.eval(&shifted), &v.eval(&Form::X1), &v.eval(&Form::TOP)));
        match refuted {
            Some(v) => Premise::Never(v.clone()),
            None => Premise::Unknown(format!(
                "no n <= {} found and no valuation separates every n ({budget})",
                self.range()
            )),
        }
    }

    fn check(&self, condition: Condition, truth: Truth, detail: String) -> ConditionCheck {
        ConditionCheck {
            condition,
            order: Some((self.i, self.j)),
            truth,
            detail,
            witness: None,
        }
    }

    fn infinite_absorption(
        &self,
        premise: &Premise,
        add: &Verdict<AddWitness, Valuation>,
        budget: &mut Budget,
    ) -> ConditionCheck {
        let cond = Condition::InfiniteAbsorption;
        let (n, chain) = match premise {
            Premise::Never(v) => {
                return self.check(
                    cond,
                    Truth::Yes,
                    format!(
                        "{} never equals {} for finite n; separated by {v}",
                        self.show(Form::new(Coef::Fin(0), Coef::Inf)).replacen("0 x", "n x", 1),
                        self.show(Form::TOP)
                    ),
                )
            }
            Premise::Unknown(why) => return self.check(cond, Truth::Unknown, why.clone()),
            Premise::Holds { n, chain } => (*n, chain),
        };
        let bare = Form::new(Coef::ZERO, Coef::Inf);
        let absorbed = equal_with(&self.pres, &self.seps, bare, Form::TOP, budget);
        let truth = absorbed.truth().and(add.truth());
        let mut parts = vec![format!(
            "{} = {}",
            self.show(Form::new(Coef::Fin(n), Coef::Inf)),
            self.show(Form::TOP)
        )];
        parts.push(match &absorbed {
            Verdict::Yes(_) => format!("aleph0 x{} absorbs aleph0 x{}", self.j, self.i),
            Verdict::No(v) => format!("aleph0 x{} differs from {} by {v}", self.j, self.show(Form::TOP)),
            Verdict::Unknown(_) => format!("aleph0 x{} = {} undecided", self.j, self.show(Form::TOP)),
        });
        parts.push(match add {
            Verdict::Yes(w) => format!("x{} in add(x{}) with {w}", self.i, self.j),
            Verdict::No(v) => format!("x{} not in add(x{}) by {v}", self.i, self.j),
            Verdict::Unknown(_) => format!("x{} in add(x{}) undecided", self.i, self.j),
        });
        let mut check = self.check(cond, truth, parts.join("; "));
        if truth.is_no() {
            check.witness = Some(ConditionWitness::Absorption {
                n,
                chain: chain.clone(),
            });
        }
        check
    }

    fn finite_shift(&self, add: &Verdict<AddWitness, Valuation>, budget: &mut Budget) -> ConditionCheck {
        let cond = Condition::FiniteShift;
        match add {
            Verdict::Yes(w) => {
                return self.check(
                    cond,
                    Truth::Yes,
                    format!("x{} in add(x{}) with {w}, so the condition is vacuous", self.i, self.j),
                )
            }
            Verdict::Unknown(why) => {
                return self.check(
                    cond,
                    Truth::Unknown,
                    format!("x{} in add(x{}) undecided: {why}", self.i, self.j),
                )
            }
            Verdict::No(_) => {}
        }
        let tail = Form::new(Coef::ZERO, Coef::Inf);
        let upper = self.seps.iter().fold(NatCongruence::FULL, |c, v| {
            c.meet(v.kernel(&v.eval(&tail), &v.eval(&Form::X1)))
        });
        if upper == NatCongruence::Identity {
            return self.check(
                cond,
                Truth::Yes,
                format!(
                    "m x{} + aleph0 x{} determines m, so the premise forces m = n",
                    self.i, self.j
                ),
            );
        }
        let range = self.range();
        let explorer = self.explorer();
        let mut lower = NatCongruence::Identity;
        let mut open = Vec::new();
        for m in 0..=range {
            let ex = explorer.explore(&[Form::new(Coef::Fin(m), Coef::Inf)], |_| false, budget);
            for n in m + 1..=range {
                let Some(chain) = ex.chain_to(Form::new(Coef::Fin(n), Coef::Inf)) else {
                    continue;
                };
                let (fm, fn_) = (Form::finite(m, 0), Form::finite(n, 0));
                if let Some(v) = self
                    .seps
                    .iter()
                    .find(|v| v.disjoint(&v.eval(&fm), &v.eval(&fn_), &v.eval(&Form::X2)))
                {
                    let mut check = self.check(
                        cond,
                        Truth::No,
                        format!(
                            "{} = {} but {} x{i} + k x{j} != {} x{i} + k' x{j} for all finite k, k'; separated by {v}",
                            self.show(Form::new(Coef::Fin(m), Coef::Inf)),
                            self.show(Form::new(Coef::Fin(n), Coef::Inf)),
                            m,
                            n,
                            i = self.i,
                            j = self.j,
                        ),
                    );
                    check.witness = Some(ConditionWitness::Shift {
                        m,
                        n,
                        chain,
                        separator: v.clone(),
                    });
                    return check;
                }
                let starts: Vec<Form> = (0..=range).map(|k| Form::finite(m, k)).collect();
                let target = Coef::Fin(n);
                let shift = explorer.explore(&starts, |h| h.a == target && !h.b.is_inf(), budget);
                if shift.found.is_none() {
                    open.push((m, n));
                }
                lower = lower.join(NatCongruence::generated(m, n));
            }
        }
        if let Some((m, n)) = open.first() {
            return self.check(
                cond,
                Truth::Unknown,
                format!("no finite shift found for m = {m}, n = {n} ({budget})"),
            );
        }
        if lower == upper {
            self.check(
                cond,
                Truth::Yes,
                format!("the premise relates exactly {upper}, and each generating pair has a finite shift"),
            )
        } else {
            self.check(
                cond,
                Truth::Unknown,
                format!("premise pairs up to {range} generate {lower}, valuations only bound them by {upper}"),
            )
        }
    }
}

fn form_types(p: &TwoGenPresentation) -> ConditionCheck {
    let v = Valuation::form_type();
    let mut check = ConditionCheck {
        condition: Condition::FormTypes,
        order: None,
        truth: Truth::Yes,
        detail: format!("{v} respects every relation"),
        witness: None,
    };
    for (k, (l, r)) in p.relations().iter().enumerate() {
        if v.eval(l) == v.eval(r) {
            continue;
        }
        let (finite, infinite) = match (l.is_infinite(), r.is_infinite()) {
            (false, true) => (*l, *r),
            (true, false) => (*r, *l),
            _ => {
                let nonzero = if l.is_zero() { *r } else { *l };
                (Form::ZERO, nonzero.scale(Coef::Inf))
            }
        };
        check.truth = Truth::No;
        check.detail = format!(
            "relation {} identifies the finite form {finite} with the infinite form {infinite}",
            k + 1
        );
        check.witness = Some(ConditionWitness::MixedForms { finite, infinite });
        return check;
    }
    check
}

fn non_cyclic(p: &TwoGenPresentation, seps: &[Valuation], budget: &mut Budget) -> Check {
    let name = "non-cyclic";
    let range = p.size() + 4;
    let mut open = Vec::new();
    for (x, y, xn, yn) in [(Form::X1, Form::X2, 1, 2), (Form::X2, Form::X1, 2, 1)] {
        for k in (0..=range).map(Coef::Fin).chain([Coef::Inf]) {
            if let Verdict::Yes(chain) = equal_with(p, seps, x, y.scale(k), budget) {
                return Check {
                    name,
                    truth: Truth::No,
                    detail: format!("x{xn} = {k} x{yn} via {chain}"),
                };
            }
        }
        let finite = seps
            .iter()
            .any(|v| v.avoids(&v.eval(&Form::ZERO), &v.eval(&y), &v.eval(&x)));
        let infinite = equal_with(p, seps, x, y.scale(Coef::Inf), budget).truth();
        if !finite || !infinite.is_no() {
            open.push(format!("x{xn} = k x{yn}"));
        }
    }
    if open.is_empty() {
        Check {
            name,
            truth: Truth::Yes,
            detail: "neither generator is a multiple of the other".into(),
        }
    } else {
        Check {
            name,
            truth: Truth::Unknown,
            detail: format!("could not exclude {}", open.join(", ")),
        }
    }
}

struct SideFacts {
    add: Verdict<AddWitness, Valuation>,
    premise: Premise,
    shift: ConditionCheck,
    absorb: ConditionCheck,
}

struct Facts {
    report: RealizabilityReport,
    sides: [SideFacts; 2],
    seps: Vec<Valuation>,
}

fn gather(p: &TwoGenPresentation, budget: &mut Budget) -> Facts {
    let seps = p.separators();
    let non_cyclic = non_cyclic(p, &seps, budget);
    let types = form_types(p);
    let side_facts = |swap: bool, budget: &mut Budget| {
        let side = Side::new(p, swap);
        let add = side.xi_in_add(budget);
        let premise = side.premise(budget);
        let shift = side.finite_shift(&add, budget);
        let absorb = side.infinite_absorption(&premise, &add, budget);
        SideFacts {
            add,
            premise,
            shift,
            absorb,
        }
    };
    let sides = [side_facts(false, budget), side_facts(true, budget)];
    let checks = vec![
        types,
        sides[0].shift.clone(),
        sides[1].shift.clone(),
        sides[0].absorb.clone(),
        sides[1].absorb.clone(),
    ];
    let verdict = Truth::all(checks.iter().map(|c| c.truth));
    Facts {
        report: RealizabilityReport {
            non_cyclic,
            checks,
            verdict,
        },
        sides,
        seps,
    }
}

/// Evaluates the realizability conditions for both orders of the generators.
///
/// Checks are listed as form-types, finite-shift, then infinite-absorption,
/// and the verdict is the conjunction of all of them.
pub fn realizable_two_gen(p: &TwoGenPresentation, budget: &mut Budget) -> RealizabilityReport {
    gather(p, budget).report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorollaryCase {
    /// Neither generator lies in `add` of the other.
    Incomparable,
    /// `add(x1) = add(x2)`.
    EqualAdd,
    /// `x_inner` lies in `add(x_outer)` but not conversely.
    OneSided {
        inner: u8,
        outer: u8,
    },
    Undetermined,
}

impl fmt::Display for CorollaryCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorollaryCase::Incomparable => f.write_str("incomparable"),
            CorollaryCase::EqualAdd => f.write_str("equal-add"),
            CorollaryCase::OneSided { inner, outer } => {
                write!(f, "one-sided (x{inner} in add(x{outer}))")
            }
            CorollaryCase::Undetermined => f.write_str("undetermined"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryReport {
    pub case: CorollaryCase,
    pub clauses: Vec<Check>,
    /// The case-specific condition equivalent to realizability.
    pub equivalent: Truth,
    pub realizability: RealizabilityReport,
    /// Whether the case condition and the general conditions agree.
    pub consistent: Truth,
}

impl fmt::Display for CorollaryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case: {}", self.case)?;
        for c in &self.clauses {
            writeln!(f, "{c}")?;
        }
        writeln!(f, "case condition: {}", self.equivalent)?;
        writeln!(f, "realizable: {}", self.realizability.verdict)?;
        write!(f, "consistent: {}", self.consistent)
    }
}

fn kept_finite(side: &SideFacts, i: u8, j: u8) -> (Truth, String) {
    match &side.premise {
        Premise::Never(v) => (
            Truth::Yes,
            format!("n x{i} + aleph0 x{j} never equals aleph0 x{i} + aleph0 x{j}; separated by {v}"),
        ),
        Premise::Holds { n, .. } => (Truth::No, format!("{n} x{i} + aleph0 x{j} = aleph0 x{i} + aleph0 x{j}")),
        Premise::Unknown(why) => (Truth::Unknown, why.clone()),
    }
}

/// Sorts the presentation into the cases of the add-comparison corollary and
/// evaluates the case-specific conditions next to the general ones.
pub fn corollary_checks(p: &TwoGenPresentation, budget: &mut Budget) -> CorollaryReport {
    let facts = gather(p, budget);
    let add12 = facts.sides[0].add.truth();
    let add21 = facts.sides[1].add.truth();
    let case = match (add12, add21) {
        (Truth::No, Truth::No) => CorollaryCase::Incomparable,
        (Truth::Yes, Truth::Yes) => CorollaryCase::EqualAdd,
        (Truth::Yes, Truth::No) => CorollaryCase::OneSided { inner: 1, outer: 2 },
        (Truth::No, Truth::Yes) => CorollaryCase::OneSided { inner: 2, outer: 1 },
        _ => CorollaryCase::Undetermined,
    };
    let types = &facts.report.checks[0];
    let types_clause = Check {
        name: "form-types",
        truth: types.truth,
        detail: types.detail.clone(),
    };
    let mut clauses = Vec::new();
    let equivalent = match case {
        CorollaryCase::Incomparable => {
            let (t1, d1) = kept_finite(&facts.sides[0], 1, 2);
            let (t2, d2) = kept_finite(&facts.sides[1], 2, 1);
            clauses.push(Check {
                name: "infinite-coefficients-kept",
                truth: t1.and(t2),
                detail: format!("{d1}; {d2}"),
            });
            let shift = facts.sides[0].shift.truth.and(facts.sides[1].shift.truth);
            clauses.push(Check {
                name: "finite-shift",
                truth: shift,
                detail: format!("{}; {}", facts.sides[0].shift.detail, facts.sides[1].shift.detail),
            });
            Truth::all(clauses.iter().map(|c| c.truth))
        }
        CorollaryCase::EqualAdd => {
            let mut single = Truth::Yes;
            for f in [Form::new(Coef::Inf, Coef::ZERO), Form::new(Coef::ZERO, Coef::Inf)] {
                single = single.and(equal_with(p, &facts.seps, f, Form::TOP, budget).truth());
            }
            clauses.push(Check {
                name: "single-infinite-element",
                truth: single,
                detail: "aleph0 x1 = aleph0 x2 = aleph0 (x1 + x2)".into(),
            });
            let equivalent = types_clause.truth;
            clauses.push(types_clause);
            equivalent
        }
        CorollaryCase::OneSided { inner, outer } => {
            let inner_form = if inner == 1 { Form::X1 } else { Form::X2 };
            let outer_form = if outer == 1 { Form::X1 } else { Form::X2 };
            let big = outer_form.scale(Coef::Inf);
            let absorbed = equal_with(p, &facts.seps, big, big + inner_form.scale(Coef::Inf), budget);
            clauses.push(Check {
                name: "absorbs-inner",
                truth: absorbed.truth(),
                detail: format!("aleph0 x{outer} = aleph0 x{outer} + aleph0 x{inner}"),
            });
            let side = &facts.sides[usize::from(outer == 2)];
            let (kept, detail) = kept_finite(side, outer, inner);
            clauses.push(Check {
                name: "infinite-coefficients-kept",
                truth: kept,
                detail,
            });
            clauses.push(Check {
                name: "finite-shift",
                truth: side.shift.truth,
                detail: side.shift.detail.clone(),
            });
            clauses.push(types_clause);
            Truth::all(clauses[1..].iter().map(|c| c.truth))
        }
        CorollaryCase::Undetermined => Truth::Unknown,
    };
    let realizable = facts.report.verdict;
    let consistent = match (equivalent, realizable) {
        (Truth::Unknown, _) | (_, Truth::Unknown) => Truth::Unknown,
        (a, b) => Truth::from_bool(a == b),
    };
    CorollaryReport {
        case,
        clauses,
        equivalent,
        realizability: facts.report,
        consistent,
    }
}
