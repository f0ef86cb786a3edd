//! Seeded randomized checking of the summation laws every monoid must obey.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cardinals::{card_sum, ExtCard};
use crate::monoid::{absorb_big, CardBoundMode, Family, KappaMonoid, MonoidError, Truth};

/// A monoid the law harness can draw random elements from.
pub trait LawSubject: KappaMonoid {
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn order_unit(&self) -> Option<Self::Elem> {
        None
    }
}

/// A random cardinal admitted by `bound`, biased towards small finite values.
pub fn sample_cardinal(bound: &CardBoundMode, rng: &mut dyn RngCore) -> ExtCard {
    let infinite = bound.infinite_cardinals();
    if !infinite.is_empty() && rng.gen_ratio(1, 4) {
        return infinite.choose(rng).cloned().unwrap_or_else(ExtCard::aleph0);
    }
    ExtCard::from(rng.gen_range(0u64..5))
}

/// A random nonzero multiplicity admitted by `bound`.
pub fn sample_multiplicity(bound: &CardBoundMode, rng: &mut dyn RngCore) -> ExtCard {
    let c = sample_cardinal(bound, rng);
    if c.is_zero() {
        ExtCard::one()
    } else {
        c
    }
}

pub fn sample_family<M: LawSubject + ?Sized>(m: &M, rng: &mut dyn RngCore, max_len: usize) -> Family<M::Elem> {
    let len = rng.gen_range(0..=max_len);
    let bound = m.bound();
    (0..len)
        .map(|_| (m.sample(rng), sample_multiplicity(&bound, rng)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawOutcome {
    Pass { checked: usize },
    Fail { witness: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawLine {
    pub law: &'static str,
    pub outcome: LawOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub monoid: String,
    pub lines: Vec<LawLine>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.lines.iter().all(|l| matches!(l.outcome, LawOutcome::Pass { .. }))
    }

    pub fn failures(&self) -> Vec<&LawLine> {
        self.lines
            .iter()
            .filter(|l| matches!(l.outcome, LawOutcome::Fail { .. }))
            .collect()
    }

    pub fn outcome(&self, law: &str) -> Option<&LawOutcome> {
        self.lines.iter().find(|l| l.law == law).map(|l| &l.outcome)
    }

    pub fn checks(&self) -> usize {
        self.lines
            .iter()
            .map(|l| match l.outcome {
                LawOutcome::Pass { checked } => checked,
                LawOutcome::Fail { .. } => 0,
            })
            .sum()
    }
}

impl fmt::Display for LawLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            LawOutcome::Pass { .. } => write!(f, "{}: PASS", self.law),
            LawOutcome::Fail { witness } => write!(f, "{}: FAIL {}", self.law, witness),
        }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

type Check<'a, M> = dyn Fn(&M, &mut ChaCha8Rng) -> Result<Option<String>, MonoidError> + 'a;

struct Law<'a, M: ?Sized> {
    name: &'static str,
    check: Box<Check<'a, M>>,
}

fn differs<M: KappaMonoid + ?Sized>(m: &M, a: &M::Elem, b: &M::Elem) -> bool {
    m.equal(a, b) == Truth::No
}

fn one() -> ExtCard {
    ExtCard::one()
}

/// Runs every applicable law `samples` times with a deterministic generator per law.
pub fn check_axioms<M: LawSubject + ?Sized>(m: &M, samples: usize, seed: u64) -> LawReport {
    let bound = m.bound();
    let infinite = !bound.is_finite_only();
    let mut laws: Vec<Law<M>> = vec![
        Law {
            name: "unit",
            check: Box::new(|m, rng| {
                let x = m.sample(rng);
                let single = m.ksum(&Family::singleton(x.clone(), one()))?;
                if differs(m, &single, &x) {
                    return Ok(Some(format!("{{{x}}} sums to {single}")));
                }
                let padding = sample_multiplicity(&m.bound(), rng);
                let padded = Family::new().with(x.clone(), one()).with(m.zero(), padding);
                let total = m.ksum(&padded)?;
                if differs(m, &total, &x) {
                    return Ok(Some(format!("{padded} sums to {total}")));
                }
                let empty = m.ksum(&Family::new())?;
                if differs(m, &empty, &m.zero()) {
                    return Ok(Some(format!("{{}} sums to {empty}")));
                }
                Ok(None)
            }),
        },
        Law {
            name: "flatten",
            check: Box::new(|m, rng| {
                let count = rng.gen_range(1..=3);
                let mut flat = Family::new();
                let mut outer = Family::new();
                let mut parts = Vec::new();
                for _ in 0..count {
                    let fam = sample_family(m, rng, 3);
                    let alpha = sample_multiplicity(&m.bound(), rng);
                    flat.extend(&fam.scaled(&alpha));
                    outer.push(m.ksum(&fam)?, alpha.clone());
                    parts.push(format!("{fam}*{alpha}"));
                }
                let lhs = m.ksum(&flat)?;
                let rhs = m.ksum(&outer)?;
                if differs(m, &lhs, &rhs) {
                    return Ok(Some(format!(
                        "[{}] flattens to {lhs} but nests to {rhs}",
                        parts.join(", ")
                    )));
                }
                Ok(None)
            }),
        },
        Law {
            name: "relabel",
            check: Box::new(|m, rng| {
                let fam = sample_family(m, rng, 4);
                let mut pieces = Vec::new();
                for (e, mult) in fam.entries() {
                    match mult.to_u64() {
                        Some(k) if k >= 2 => {
                            let cut = rng.gen_range(1..k);
                            pieces.push((e.clone(), ExtCard::from(cut)));
                            pieces.push((e.clone(), ExtCard::from(k - cut)));
                        }
                        None if rng.gen_bool(0.5) => {
                            pieces.push((e.clone(), mult.clone()));
                            pieces.push((e.clone(), ExtCard::from(rng.gen_range(1u64..4))));
                        }
                        _ => pieces.push((e.clone(), mult.clone())),
                    }
                }
                pieces.shuffle(rng);
                let relabelled: Family<M::Elem> = pieces.into_iter().collect();
                let lhs = m.ksum(&fam)?;
                let rhs = m.ksum(&relabelled)?;
                if differs(m, &lhs, &rhs) {
                    return Ok(Some(format!(
                        "{fam} sums to {lhs} but its relabelling {relabelled} sums to {rhs}"
                    )));
                }
                Ok(None)
            }),
        },
        Law {
            name: "split",
            check: Box::new(|m, rng| {
                let f = sample_family(m, rng, 3);
                let g = sample_family(m, rng, 3);
                let whole = m.ksum(&f.union(&g))?;
                let parts = m.add(&m.ksum(&f)?, &m.ksum(&g)?);
                if differs(m, &whole, &parts) {
                    return Ok(Some(format!(
                        "{f} and {g}: union sums to {whole}, parts add to {parts}"
                    )));
                }
                Ok(None)
            }),
        },
        Law {
            name: "scalar-zero",
            check: Box::new(|m, rng| {
                let x = m.sample(rng);
                let zx = m.scalar(&ExtCard::zero(), &x)?;
                if differs(m, &zx, &m.zero()) {
                    return Ok(Some(format!("0 * {x} = {zx}")));
                }
                let alpha = sample_multiplicity(&m.bound(), rng);
                let az = m.scalar(&alpha, &m.zero())?;
                if differs(m, &az, &m.zero()) {
                    return Ok(Some(format!("{alpha} * 0 = {az}")));
                }
                Ok(None)
            }),
        },
        Law {
            name: "scalar-one",
            check: Box::new(|m, rng| {
                let x = m.sample(rng);
                let ox = m.scalar(&one(), &x)?;
                if differs(m, &ox, &x) {
                    return Ok(Some(format!("1 * {x} = {ox}")));
                }
                Ok(None)
            }),
        },
        Law {
            name: "scalar-coefficients",
            check: Box::new(|m, rng| {
                let x = m.sample(rng);
                let count = rng.gen_range(1..=3);
                let lambdas: Vec<ExtCard> = (0..count).map(|_| sample_cardinal(&m.bound(), rng)).collect();
                let unit = ExtCard::one();
                let total = card_sum(lambdas.iter().map(|l| (l, &unit)));
                let lhs = m.scalar(&total, &x)?;
                let mut parts = Family::new();
                for l in &lambdas {
                    parts.push(m.scalar(l, &x)?, one());
                }
                let rhs = m.ksum(&parts)?;
                if differs(m, &lhs, &rhs) {
                    let shown: Vec<String> = lambdas.iter().map(|l| l.to_string()).collect();
                    return Ok(Some(format!(
                        "coefficients [{}] on {x}: {lhs} vs {rhs}",
                        shown.join(", ")
                    )));
                }
                Ok(None)
            }),
        },
        Law {
            name: "scalar-distributes",
            check: Box::new(|m, rng| {
                let fam = sample_family(m, rng, 3);
                let lambda = sample_cardinal(&m.bound(), rng);
                let lhs = m.scalar(&lambda, &m.ksum(&fam)?)?;
                let mut spread = Family::new();
                for (e, mult) in fam.entries() {
                    spread.push(m.scalar(&lambda, e)?, mult.clone());
                }
                let rhs = m.ksum(&spread)?;
                if differs(m, &lhs, &rhs) {
                    return Ok(Some(format!("{lambda} * {fam}: {lhs} vs {rhs}")));
                }
                Ok(None)
            }),
        },
    ];

    if infinite {
        laws.push(Law {
            name: "absorption",
            check: Box::new(|m, rng| {
                let x = m.sample(rng);
                let alphas = m.bound().infinite_cardinals();
                let alpha = alphas.choose(rng).cloned().unwrap_or_else(ExtCard::aleph0);
                let ax = m.scalar(&alpha, &x)?;
                let lhs = m.add(&x, &ax);
                if differs(m, &lhs, &ax) {
                    return Ok(Some(format!("{x} + {alpha}*{x} = {lhs} but {alpha}*{x} = {ax}")));
                }
                Ok(None)
            }),
        });
        laws.push(Law {
            name: "reduced",
            check: Box::new(|m, rng| {
                let a = m.sample(rng);
                let b = if rng.gen_bool(0.3) { m.zero() } else { m.sample(rng) };
                let s = m.add(&a, &b);
                if m.is_zero(&s).is_yes() && (m.is_zero(&a) == Truth::No || m.is_zero(&b) == Truth::No) {
                    return Ok(Some(format!("{a} + {b} = 0 with a nonzero summand")));
                }
                Ok(None)
            }),
        });
        laws.push(Law {
            name: "split-absorption",
            check: Box::new(|m, rng| {
                let kappa = match m.bound().largest() {
                    Some(k) => k,
                    None => return Ok(None),
                };
                let (t1, t2, t3) = if rng.gen_bool(0.5) {
                    let a = m.sample(rng);
                    let b = m.sample(rng);
                    (m.scalar(&kappa, &a)?, m.scalar(&kappa, &b)?, m.add(&a, &b))
                } else {
                    let pool = sample_family(m, rng, 3);
                    let t3 = m.sample(rng);
                    let t1 = m.ksum(&pool)?;
                    let t2 = m.scalar(&kappa, &m.add(&t3, &t1))?;
                    (t1, t2, t3)
                };
                let kt3 = m.scalar(&kappa, &t3)?;
                if !m.equal(&m.add(&t1, &t2), &kt3).is_yes() {
                    return Ok(None);
                }
                let lhs = m.add(&t1, &kt3);
                if differs(m, &lhs, &kt3) {
                    return Ok(Some(format!(
                        "{t1} + {t2} = {kappa}*{t3} but {t1} + {kappa}*{t3} = {lhs}"
                    )));
                }
                Ok(None)
            }),
        });
        if let Some(unit) = m.order_unit() {
            laws.push(Law {
                name: "big-summand",
                check: Box::new(move |m, rng| {
                    let kappa = match m.bound().largest() {
                        Some(k) => k,
                        None => return Ok(None),
                    };
                    let l = m.sample(rng);
                    let t = m.add(&m.scalar(&kappa, &unit)?, &l);
                    match absorb_big(m, &unit, &t, &l) {
                        Ok(true) | Err(MonoidError::Undecided(_)) => Ok(None),
                        Ok(false) => Ok(Some(format!("{kappa}*{unit} + {l} = {t} differs from {kappa}*{unit}"))),
                        Err(e) => Err(e),
                    }
                }),
            });
        }
    }

    let lines = laws
        .iter()
        .enumerate()
        .map(|(k, law)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add((k as u64) << 32));
            let mut outcome = LawOutcome::Pass { checked: samples };
            for _ in 0..samples {
                match (law.check)(m, &mut rng) {
                    Ok(None) => {}
                    Ok(Some(witness)) => {
                        outcome = LawOutcome::Fail { witness };
                        break;
                    }
                    Err(e) => {
                        outcome = LawOutcome::Fail {
                            witness: format!("error: {e}"),
                        };
                        break;
                    }
                }
            }
            LawLine { law: law.name, outcome }
        })
        .collect();
    LawReport {
        monoid: m.name(),
        lines,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::CyclicMonoid;

    /// Naturals whose sum weights each entry by its position: not a valid monoid.
    struct PositionWeighted;

    impl KappaMonoid for PositionWeighted {
        type Elem = u64;

        fn name(&self) -> String {
            "position-weighted".into()
        }

        fn zero(&self) -> u64 {
            0
        }

        fn bound(&self) -> CardBoundMode {
            CardBoundMode::finite()
        }

        fn evaluate(&self, fam: &Family<u64>) -> u64 {
            fam.entries()
                .iter()
                .enumerate()
                .map(|(pos, (e, m))| (pos as u64 + 1) * e * m.to_u64().unwrap_or(0))
                .sum()
        }
    }

    impl LawSubject for PositionWeighted {
        fn sample(&self, rng: &mut dyn RngCore) -> u64 {
            rng.gen_range(0..6)
        }
    }

    #[test]
    fn broken_double_fails_relabel_with_witness() {
        let report = check_axioms(&PositionWeighted, 500, 42);
        match report.outcome("relabel") {
            Some(LawOutcome::Fail { witness }) => assert!(witness.contains("relabelling")),
            other => panic!("expected relabel failure, got {other:?}"),
        }
        assert!(report.to_string().contains("relabel: FAIL"));
        assert!(report.outcome("unit") == Some(&LawOutcome::Pass { checked: 500 }));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = check_axioms(&PositionWeighted, 200, 9);
        let b = check_axioms(&PositionWeighted, 200, 9);
        assert_eq!(a, b);
    }

    #[test]
    fn extended_naturals_pass() {
        let m = CyclicMonoid::naturals().extended(ExtCard::aleph_raw(2)).unwrap();
        let report = check_axioms(&m, 500, 3);
        assert!(report.all_passed(), "{report}");
        assert!(report.outcome("big-summand").is_some());
    }

    #[test]
    fn finite_monoids_skip_infinite_laws() {
        let m = CyclicMonoid::cmn(0, 3).unwrap();
        let report = check_axioms(&m, 300, 5);
        assert!(report.all_passed(), "{report}");
        assert!(report.outcome("absorption").is_none());
        assert_eq!(report.lines.len(), 8);
    }

    #[test]
    fn extended_cmn_passes() {
        for (tail, period) in [(1, 1), (1, 2), (2, 3), (3, 1)] {
            let m = CyclicMonoid::cmn(tail, period)
                .unwrap()
                .extended(ExtCard::aleph_raw(1))
                .unwrap();
            let report = check_axioms(&m, 300, 11);
            assert!(report.all_passed(), "{}: {report}", m.name());
        }
    }
}
