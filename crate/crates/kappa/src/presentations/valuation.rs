//! Homomorphisms from the free monoid on two generators into small target
//! monoids. A valuation that respects every relation factors through the
//! presented monoid, so any difference it sees is a proof of inequality.

use std::fmt;

use num_integer::Integer;

use super::form::{Coef, Form};

/// A target monoid for valuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Cardinals up to `aleph0` under cardinal addition.
    Cardinals,
    /// `N0^dim` with one point at infinity absorbing every infinite sum.
    Trivial { dim: usize },
    /// The cyclic monoid with the given tail and period, plus a point at infinity.
    TrivialCyclic { tail: u64, period: u64 },
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Cardinals => f.write_str("cardinals"),
            Target::Trivial { dim: 1 } => f.write_str("T(N0)"),
            Target::Trivial { dim } => write!(f, "T(N0^{dim})"),
            Target::TrivialCyclic { tail, period } => write!(f, "T(C[{tail},{period}])"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Value {
    Card(Coef),
    Finite(Vec<u64>),
    Infinity,
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Card(c) => write!(f, "{c}"),
            Value::Finite(v) if v.len() == 1 => write!(f, "{}", v[0]),
            Value::Finite(v) => {
                let parts: Vec<String> = v.iter().map(u64::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
            Value::Infinity => f.write_str("inf"),
        }
    }
}

/// A congruence on `N0`: either equality, or equality together with
/// `m ~ n` for all `m, n >= start` with `m = n (mod period)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NatCongruence {
    Identity,
    Collapse { start: u64, period: u64 },
}

impl NatCongruence {
    pub const FULL: NatCongruence = NatCongruence::Collapse { start: 0, period: 1 };

    /// The least congruence identifying `m` and `n`.
    pub fn generated(m: u64, n: u64) -> Self {
        match m.cmp(&n) {
            std::cmp::Ordering::Equal => NatCongruence::Identity,
            _ => NatCongruence::Collapse {
                start: m.min(n),
                period: m.abs_diff(n),
            },
        }
    }

    pub fn contains(&self, m: u64, n: u64) -> bool {
        match *self {
            NatCongruence::Identity => m == n,
            NatCongruence::Collapse { start, period } => {
                m == n || (m >= start && n >= start && m.abs_diff(n).is_multiple_of(period))
            }
        }
    }

    pub fn meet(self, other: Self) -> Self {
        match (self, other) {
            (NatCongruence::Identity, _) | (_, NatCongruence::Identity) => NatCongruence::Identity,
            (NatCongruence::Collapse { start: s1, period: p1 }, NatCongruence::Collapse { start: s2, period: p2 }) => {
                NatCongruence::Collapse {
                    start: s1.max(s2),
                    period: p1.lcm(&p2),
                }
            }
        }
    }

    pub fn join(self, other: Self) -> Self {
        match (self, other) {
            (NatCongruence::Identity, c) | (c, NatCongruence::Identity) => c,
            (NatCongruence::Collapse { start: s1, period: p1 }, NatCongruence::Collapse { start: s2, period: p2 }) => {
                NatCongruence::Collapse {
                    start: s1.min(s2),
                    period: p1.gcd(&p2),
                }
            }
        }
    }
}

impl fmt::Display for NatCongruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NatCongruence::Identity => f.write_str("equality"),
            NatCongruence::Collapse { start, period } => {
                write!(f, "m ~ n for m, n >= {start} with m = n mod {period}")
            }
        }
    }
}

/// A homomorphism determined by the images of `X1` and `X2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    pub target: Target,
    pub images: [Value; 2],
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: X1 -> {}, X2 -> {}", self.target, self.images[0], self.images[1])
    }
}

impl Valuation {
    /// The valuation into `{0, 1, inf}` sending both generators to `1`.
    /// It respects a presentation exactly when no element has both a
    /// finite and an infinite form.
    pub fn form_type() -> Self {
        let one = Value::Finite(vec![1]);
        Valuation {
            target: Target::TrivialCyclic { tail: 1, period: 1 },
            images: [one.clone(), one],
        }
    }

    fn zero(&self) -> Value {
        match self.target {
            Target::Cardinals => Value::Card(Coef::ZERO),
            Target::Trivial { dim } => Value::Finite(vec![0; dim]),
            Target::TrivialCyclic { .. } => Value::Finite(vec![0]),
        }
    }

    fn is_zero(&self, v: &Value) -> bool {
        *v == self.zero()
    }

    fn reduce(&self, k: u64) -> u64 {
        match self.target {
            Target::TrivialCyclic { tail, period } if k >= tail => tail + (k - tail) % period,
            _ => k,
        }
    }

    pub fn add(&self, x: &Value, y: &Value) -> Value {
        match (x, y) {
            (Value::Card(a), Value::Card(b)) => Value::Card(*a + *b),
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(
                a.iter()
                    .zip(b)
                    .map(|(p, q)| self.reduce(p.saturating_add(*q)))
                    .collect(),
            ),
            _ => Value::Infinity,
        }
    }

    pub fn scale(&self, x: &Value, k: Coef) -> Value {
        match (x, k) {
            (Value::Card(c), k) => Value::Card(*c * k),
            (_, Coef::Fin(0)) => self.zero(),
            (x, Coef::Inf) if self.is_zero(x) => self.zero(),
            (Value::Infinity, _) | (_, Coef::Inf) => Value::Infinity,
            (Value::Finite(v), Coef::Fin(k)) => Value::Finite(
                v.iter()
                    .map(|&c| match self.target {
                        Target::TrivialCyclic { tail, period } => {
                            let raw = u128::from(c) * u128::from(k);
                            if raw < u128::from(tail) {
                                raw as u64
                            } else {
                                tail + ((raw - u128::from(tail)) % u128::from(period)) as u64
                            }
                        }
                        _ => c.saturating_mul(k),
                    })
                    .collect(),
            ),
        }
    }

    pub fn eval(&self, f: &Form) -> Value {
        let a = self.scale(&self.images[0], f.a);
        let b = self.scale(&self.images[1], f.b);
        self.add(&a, &b)
    }

    pub fn respects(&self, relations: &[(Form, Form)]) -> bool {
        relations.iter().all(|(l, r)| self.eval(l) == self.eval(r))
    }

    /// Size of the target when it is finite, counting the point at infinity.
    fn finite_order(&self) -> Option<u64> {
        match self.target {
            Target::TrivialCyclic { tail, period } => Some(tail + period + 1),
            _ => None,
        }
    }

    fn orbit(&self, start: &Value, step: &Value, len: u64) -> Vec<Value> {
        let mut out = Vec::new();
        let mut cur = start.clone();
        for _ in 0..len {
            out.push(cur.clone());
            cur = self.add(&cur, step);
        }
        out
    }

    /// Whether `x + t = n base` is impossible for every finite `n` and every `t`.
    pub fn never_below(&self, x: &Value, base: &Value) -> bool {
        match (x, base) {
            (Value::Card(x), Value::Card(b)) => match (*x, *b) {
                (Coef::Inf, Coef::Fin(_)) => true,
                (x, Coef::Fin(0)) => !x.is_zero(),
                _ => false,
            },
            (_, Value::Infinity) => false,
            (Value::Infinity, _) => true,
            (Value::Finite(xv), Value::Finite(bv)) => match self.target {
                Target::Trivial { .. } => xv.iter().zip(bv).any(|(x, b)| *b == 0 && *x > 0),
                _ => bv.iter().all(|b| *b == 0) && xv.iter().any(|x| *x > 0),
            },
            _ => false,
        }
    }

    /// Whether `start + k step` differs from `point` for every finite `k`.
    pub fn avoids(&self, start: &Value, step: &Value, point: &Value) -> bool {
        if let Some(n) = self.finite_order() {
            return !self.orbit(start, step, 2 * n + 2).contains(point);
        }
        match (start, step, point) {
            (Value::Card(v), Value::Card(s), Value::Card(w)) => match (*v, *s, *w) {
                (v, Coef::Fin(0), w) => v != w,
                (Coef::Inf, _, w) => w != Coef::Inf,
                (v, Coef::Inf, w) => v != w && w != Coef::Inf,
                (Coef::Fin(v), Coef::Fin(s), Coef::Fin(w)) => w < v || (w - v) % s != 0,
                (_, _, Coef::Inf) => true,
            },
            (Value::Infinity, _, w) => *w != Value::Infinity,
            (v, Value::Infinity, w) => v != w && *w != Value::Infinity,
            (_, _, Value::Infinity) => true,
            (Value::Finite(v), Value::Finite(s), Value::Finite(w)) => {
                let Some(k) = s.iter().zip(v.iter().zip(w)).find_map(|(s, (v, w))| {
                    (*s > 0).then(|| {
                        if w >= v && (w - v) % s == 0 {
                            Some((w - v) / s)
                        } else {
                            None
                        }
                    })
                }) else {
                    return v != w;
                };
                match k {
                    None => true,
                    Some(k) => v.iter().zip(s).zip(w).any(|((v, s), w)| v + k * s != *w),
                }
            }
            _ => true,
        }
    }

    /// Whether `x + k step` and `y + l step` differ for all finite `k`, `l`.
    pub fn disjoint(&self, x: &Value, y: &Value, step: &Value) -> bool {
        if let Some(n) = self.finite_order() {
            let left = self.orbit(x, step, 2 * n + 2);
            return self.orbit(y, step, 2 * n + 2).iter().all(|v| !left.contains(v));
        }
        match (x, y, step) {
            (Value::Card(x), Value::Card(y), Value::Card(s)) => match (*x, *y, *s) {
                (x, y, Coef::Fin(0)) => x != y,
                (_, _, Coef::Inf) => false,
                (Coef::Inf, Coef::Inf, _) => false,
                (Coef::Inf, _, _) | (_, Coef::Inf, _) => true,
                (Coef::Fin(x), Coef::Fin(y), Coef::Fin(s)) => x % s != y % s,
            },
            (_, _, Value::Infinity) => false,
            (Value::Infinity, Value::Infinity, _) => false,
            (Value::Infinity, _, _) | (_, Value::Infinity, _) => true,
            (Value::Finite(x), Value::Finite(y), Value::Finite(s)) => {
                let d: Vec<i128> = x.iter().zip(y).map(|(a, b)| i128::from(*a) - i128::from(*b)).collect();
                let Some(c) = s.iter().position(|s| *s > 0) else {
                    return x != y;
                };
                let sc = i128::from(s[c]);
                if d[c] % sc != 0 {
                    return true;
                }
                let t = d[c] / sc;
                d.iter().zip(s).any(|(d, s)| *d != t * i128::from(*s))
            }
            _ => true,
        }
    }

    /// The kernel of `m -> c + m step` on `N0`.
    pub fn kernel(&self, c: &Value, step: &Value) -> NatCongruence {
        if let Some(n) = self.finite_order() {
            let seq = self.orbit(c, step, n + 2);
            for (k, v) in seq.iter().enumerate() {
                if let Some(first) = seq[..k].iter().position(|w| w == v) {
                    return NatCongruence::Collapse {
                        start: first as u64,
                        period: (k - first) as u64,
                    };
                }
            }
            return NatCongruence::Identity;
        }
        let inf = |v: &Value| matches!(v, Value::Infinity | Value::Card(Coef::Inf));
        if inf(c) || self.is_zero(step) {
            NatCongruence::FULL
        } else if inf(step) {
            NatCongruence::Collapse { start: 1, period: 1 }
        } else {
            NatCongruence::Identity
        }
    }
}

const CARD_CAP: u64 = 8;
const VECTOR_CAP: u64 = 3;
const CYCLIC_TAILS: std::ops::RangeInclusive<u64> = 1..=3;
const CYCLIC_PERIODS: std::ops::RangeInclusive<u64> = 1..=4;

fn pairs(target: Target, values: &[Value]) -> impl Iterator<Item = Valuation> + '_ {
    values.iter().flat_map(move |p| {
        values.iter().map(move |q| Valuation {
            target,
            images: [p.clone(), q.clone()],
        })
    })
}

/// Every candidate valuation, in a fixed order.
pub fn candidates() -> Vec<Valuation> {
    let mut out = Vec::new();
    let cards: Vec<Value> = (0..=CARD_CAP)
        .map(|k| Value::Card(Coef::Fin(k)))
        .chain([Value::Card(Coef::Inf)])
        .collect();
    out.extend(pairs(Target::Cardinals, &cards));
    let line: Vec<Value> = (0..=CARD_CAP)
        .map(|k| Value::Finite(vec![k]))
        .chain([Value::Infinity])
        .collect();
    out.extend(pairs(Target::Trivial { dim: 1 }, &line));
    let plane: Vec<Value> = (0..=VECTOR_CAP)
        .flat_map(|a| (0..=VECTOR_CAP).map(move |b| Value::Finite(vec![a, b])))
        .chain([Value::Infinity])
        .collect();
    out.extend(pairs(Target::Trivial { dim: 2 }, &plane));
    for tail in CYCLIC_TAILS {
        for period in CYCLIC_PERIODS {
            let elems: Vec<Value> = (0..tail + period)
                .map(|k| Value::Finite(vec![k]))
                .chain([Value::Infinity])
                .collect();
            out.extend(pairs(Target::TrivialCyclic { tail, period }, &elems));
        }
    }
    out
}

/// Candidate valuations that respect every relation.
pub fn respecting(relations: &[(Form, Form)]) -> Vec<Valuation> {
    candidates().into_iter().filter(|v| v.respects(relations)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn card(v: u64) -> Value {
        Value::Card(Coef::Fin(v))
    }

    fn vec(v: &[u64]) -> Value {
        Value::Finite(v.to_vec())
    }

    fn brute_avoids(val: &Valuation, start: &Value, step: &Value, point: &Value) -> bool {
        val.orbit(start, step, 60).iter().all(|v| v != point)
    }

    fn brute_disjoint(val: &Valuation, x: &Value, y: &Value, step: &Value) -> bool {
        let left = val.orbit(x, step, 60);
        val.orbit(y, step, 60).iter().all(|v| !left.contains(v))
    }

    #[test]
    fn evaluation_follows_each_target() {
        let v = Valuation {
            target: Target::Cardinals,
            images: [card(2), card(0)],
        };
        assert_eq!(v.eval(&Form::new(Coef::Fin(3), Coef::Inf)), card(6));
        let t = Valuation {
            target: Target::Trivial { dim: 2 },
            images: [vec(&[1, 0]), vec(&[0, 1])],
        };
        assert_eq!(t.eval(&Form::finite(2, 3)), vec(&[2, 3]));
        assert_eq!(t.eval(&Form::new(Coef::Inf, Coef::ZERO)), Value::Infinity);
        let c = Valuation {
            target: Target::TrivialCyclic { tail: 1, period: 2 },
            images: [vec(&[1]), vec(&[0])],
        };
        assert_eq!(c.eval(&Form::finite(4, 7)), vec(&[2]));
        assert_eq!(c.eval(&Form::new(Coef::Fin(1), Coef::Inf)), vec(&[1]));
    }

    #[test]
    fn congruence_lattice() {
        let a = NatCongruence::generated(2, 6);
        let b = NatCongruence::generated(3, 9);
        assert_eq!(a.join(b), NatCongruence::Collapse { start: 2, period: 2 });
        assert_eq!(a.meet(b), NatCongruence::Collapse { start: 3, period: 12 });
        assert!(a.contains(4, 8) && !a.contains(1, 5));
        assert_eq!(NatCongruence::Identity.join(a), a);
    }

    #[test]
    fn orbit_predicates_match_enumeration() {
        let targets = [
            Target::Cardinals,
            Target::Trivial { dim: 2 },
            Target::TrivialCyclic { tail: 2, period: 3 },
        ];
        for target in targets {
            let vals: Vec<Value> = candidates()
                .into_iter()
                .filter(|v| v.target == target)
                .flat_map(|v| v.images.into_iter())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let probe = Valuation {
                target,
                images: [vals[0].clone(), vals[0].clone()],
            };
            for x in &vals {
                for s in &vals {
                    for y in &vals {
                        assert_eq!(
                            probe.avoids(x, s, y),
                            brute_avoids(&probe, x, s, y),
                            "{target} avoids {x} {s} {y}"
                        );
                        assert_eq!(
                            probe.disjoint(x, y, s),
                            brute_disjoint(&probe, x, y, s),
                            "{target} disjoint {x} {y} {s}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kernels_match_enumeration() {
        for target in [
            Target::Cardinals,
            Target::Trivial { dim: 1 },
            Target::TrivialCyclic { tail: 1, period: 3 },
        ] {
            let vals: Vec<Value> = candidates()
                .into_iter()
                .filter(|v| v.target == target)
                .map(|v| v.images[1].clone())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let probe = Valuation {
                target,
                images: [vals[0].clone(), vals[0].clone()],
            };
            for c in &vals {
                for s in &vals {
                    let k = probe.kernel(c, s);
                    let seq = probe.orbit(c, s, 12);
                    for m in 0..12 {
                        for n in 0..12 {
                            assert_eq!(k.contains(m as u64, n as u64), seq[m] == seq[n], "{target} {c} {s}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn form_type_detects_mixed_relations() {
        let v = Valuation::form_type();
        assert!(v.respects(&[(Form::finite(2, 0), Form::finite(0, 1))]));
        assert!(!v.respects(&[(Form::X1, Form::ZERO)]));
        assert!(!v.respects(&[(Form::X1, Form::new(Coef::Inf, Coef::ZERO))]));
    }
}
