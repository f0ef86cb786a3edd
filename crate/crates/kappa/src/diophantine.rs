//! Submonoids of `F^n` cut out by homogeneous linear equations, inequalities
//! and congruences.
//!
//! With infinite coordinates a linear form is evaluated in the cardinals, so
//! `a . x` becomes the largest `a_i x_i`. Over `N0^n` the same system reads as
//! an ordinary monoid `H`, and [`aleph0_extend_finite`] describes `H + aleph0 H`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use thiserror::Error;

use crate::cardinals::{card_sum, ExtCard};
use crate::free_vectors::CardVec;
use crate::laws::LawSubject;
use crate::monoid::{CardBoundMode, Family, KappaMonoid, Truth};

/// Default coordinate cap for lattice-point searches.
pub const DEFAULT_RADIUS: u64 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DioError {
    #[error("expected length {expected}, found length {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("congruence modulus must be at least 1")]
    ZeroModulus,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstraintSystem {
    dim: usize,
    equations: Vec<(Vec<u64>, Vec<u64>)>,
    inequalities: Vec<(Vec<u64>, Vec<u64>)>,
    congruences: Vec<(Vec<u64>, u64)>,
}

impl ConstraintSystem {
    /// The system with no constraints, whose solutions are all of `F^dim`.
    pub fn free(dim: usize) -> Self {
        ConstraintSystem {
            dim,
            ..Default::default()
        }
    }

    fn check_len(&self, a: &[u64]) -> Result<(), DioError> {
        if a.len() == self.dim {
            Ok(())
        } else {
            Err(DioError::DimensionMismatch {
                expected: self.dim,
                found: a.len(),
            })
        }
    }

    /// Adds `a . x = b . x`.
    pub fn equation(mut self, a: Vec<u64>, b: Vec<u64>) -> Result<Self, DioError> {
        self.check_len(&a)?;
        self.check_len(&b)?;
        self.equations.push((a, b));
        Ok(self)
    }

    /// Adds `a . x <= b . x`.
    pub fn inequality(mut self, a: Vec<u64>, b: Vec<u64>) -> Result<Self, DioError> {
        self.check_len(&a)?;
        self.check_len(&b)?;
        self.inequalities.push((a, b));
        Ok(self)
    }

    /// Adds `a . x in d F`.
    pub fn congruence(mut self, a: Vec<u64>, d: u64) -> Result<Self, DioError> {
        self.check_len(&a)?;
        if d == 0 {
            return Err(DioError::ZeroModulus);
        }
        self.congruences.push((a, d));
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equations(&self) -> &[(Vec<u64>, Vec<u64>)] {
        &self.equations
    }

    pub fn inequalities(&self) -> &[(Vec<u64>, Vec<u64>)] {
        &self.inequalities
    }

    pub fn congruences(&self) -> &[(Vec<u64>, u64)] {
        &self.congruences
    }

    pub fn has_inequalities(&self) -> bool {
        !self.inequalities.is_empty()
    }

    /// Value of the linear form `a` at `x`, computed in the cardinals.
    pub fn eval_form(a: &[u64], x: &CardVec) -> ExtCard {
        let coefs: Vec<ExtCard> = a.iter().map(|&c| ExtCard::from(c)).collect();
        card_sum(x.coords().iter().zip(&coefs))
    }

    pub fn satisfied_by(&self, x: &CardVec) -> Result<bool, DioError> {
        if x.dim() != self.dim {
            return Err(DioError::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        if let Some(finite) = x.to_u64s() {
            if let Some(answer) = self.satisfied_finite(&finite) {
                return Ok(answer);
            }
        }
        let form = |a: &[u64]| Self::eval_form(a, x);
        let eqs = self.equations.iter().all(|(a, b)| form(a) == form(b));
        let ineqs = self.inequalities.iter().all(|(a, b)| form(a) <= form(b));
        let congs = self.congruences.iter().all(|(a, d)| match form(a).finite_value() {
            Some(v) => (v % *d).is_zero(),
            None => true,
        });
        Ok(eqs && ineqs && congs)
    }

    /// Exact test for a finite vector of the right length; `None` on `u128` overflow.
    pub fn satisfied_finite(&self, x: &[u64]) -> Option<bool> {
        let form = |a: &[u64]| -> Option<u128> {
            a.iter().zip(x).try_fold(0u128, |acc, (&c, &v)| {
                acc.checked_add((c as u128).checked_mul(v as u128)?)
            })
        };
        for (a, b) in &self.equations {
            if form(a)? != form(b)? {
                return Some(false);
            }
        }
        for (a, b) in &self.inequalities {
            if form(a)? > form(b)? {
                return Some(false);
            }
        }
        for (a, d) in &self.congruences {
            if form(a)? % *d as u128 != 0 {
                return Some(false);
            }
        }
        Some(true)
    }

    pub(crate) fn satisfied_small(&self, x: &[u64]) -> bool {
        self.satisfied_finite(x)
            .unwrap_or_else(|| self.satisfied_by(&CardVec::from_u64s(x)).unwrap_or(false))
    }

    /// All solutions in `N0^dim` with every coordinate at most `radius`, in lexicographic order.
    pub fn finite_solutions(&self, radius: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for_each_point(self.dim, &|_| 0..=radius, &mut |x| {
            if self.satisfied_small(x) {
                out.push(x.to_vec());
            }
            true
        });
        out
    }
}

/// Visits every point of a box in lexicographic order until `visit` returns `false`.
fn for_each_point(
    dim: usize,
    range: &dyn Fn(usize) -> std::ops::RangeInclusive<u64>,
    visit: &mut dyn FnMut(&[u64]) -> bool,
) -> bool {
    let ranges: Vec<_> = (0..dim).map(range).collect();
    if ranges.iter().any(|r| r.is_empty()) {
        return true;
    }
    let mut x: Vec<u64> = ranges.iter().map(|r| *r.start()).collect();
    loop {
        if !visit(&x) {
            return false;
        }
        let mut k = dim;
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            if x[k] < *ranges[k].end() {
                x[k] += 1;
                break;
            }
            x[k] = *ranges[k].start();
        }
    }
}

fn write_form(f: &mut fmt::Formatter<'_>, a: &[u64]) -> fmt::Result {
    let mut first = true;
    for (i, &c) in a.iter().enumerate().filter(|(_, c)| **c != 0) {
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        if c == 1 {
            write!(f, "x{i}")?;
        } else {
            write!(f, "{c} x{i}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for ConstraintSystem {
    /// Renders the system in the constraint language read by [`crate::dsl`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dio n={} {{", self.dim)?;
        for (a, b) in &self.equations {
            f.write_str(" eq: ")?;
            write_form(f, a)?;
            f.write_str(" = ")?;
            write_form(f, b)?;
            f.write_str(";")?;
        }
        for (a, b) in &self.inequalities {
            f.write_str(" ineq: ")?;
            write_form(f, a)?;
            f.write_str(" <= ")?;
            write_form(f, b)?;
            f.write_str(";")?;
        }
        for (a, d) in &self.congruences {
            f.write_str(" cong: ")?;
            write_form(f, a)?;
            write!(f, " in {d}N;")?;
        }
        f.write_str(" }")
    }
}

/// The solutions of a constraint system inside `F^n` for a summation bound.
#[derive(Debug, Clone)]
pub struct DioMonoid {
    system: ConstraintSystem,
    bound: CardBoundMode,
    pool: Vec<CardVec>,
}

impl PartialEq for DioMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.system == other.system && self.bound == other.bound
    }
}

impl DioMonoid {
    pub fn new(system: ConstraintSystem, bound: CardBoundMode) -> Self {
        let mut pool: Vec<CardVec> = system
            .finite_solutions(3)
            .iter()
            .map(|x| CardVec::from_u64s(x))
            .collect();
        if !bound.is_finite_only() {
            for_each_point(system.dim, &|_| 0..=1, &mut |mask| {
                let v = CardVec(
                    mask.iter()
                        .map(|&b| if b == 1 { ExtCard::aleph0() } else { ExtCard::zero() })
                        .collect(),
                );
                if !v.is_finite() && system.satisfied_by(&v).unwrap_or(false) {
                    pool.push(v);
                }
                true
            });
        }
        DioMonoid { system, bound, pool }
    }

    pub fn system(&self) -> &ConstraintSystem {
        &self.system
    }

    pub fn dim(&self) -> usize {
        self.system.dim
    }

    /// Membership, including the bound on individual coordinates.
    pub fn member(&self, x: &CardVec) -> Result<bool, DioError> {
        let sat = self.system.satisfied_by(x)?;
        Ok(sat && x.coords().iter().all(|c| self.bound.admits(c)))
    }
}

/// Small values tried for a coordinate that is left undetermined by `a + c = b`.
fn free_choices(top: &ExtCard) -> Vec<ExtCard> {
    let mut out: Vec<ExtCard> = (0..4u64).map(ExtCard::from).collect();
    let level = top.aleph_level().unwrap_or(0);
    out.extend((0..=level).map(ExtCard::aleph_raw));
    out
}

impl KappaMonoid for DioMonoid {
    type Elem = CardVec;

    fn name(&self) -> String {
        format!("{} {}", self.system, self.bound)
    }

    fn zero(&self) -> CardVec {
        CardVec::zeros(self.dim())
    }

    fn bound(&self) -> CardBoundMode {
        self.bound.clone()
    }

    fn evaluate(&self, fam: &Family<CardVec>) -> CardVec {
        CardVec(
            (0..self.dim())
                .map(|i| card_sum(fam.entries().iter().map(|(v, m)| (&v.coords()[i], m))))
                .collect(),
        )
    }

    fn contains(&self, x: &CardVec) -> Truth {
        Truth::from_bool(self.member(x).unwrap_or(false))
    }

    /// Searches for a member `c` with `a + c = b`. Coordinates where `a` and
    /// `b` agree on an infinite value leave `c` free, and only small choices
    /// are tried there.
    fn leq(&self, a: &CardVec, b: &CardVec) -> Truth {
        if !a.dominated_by(b) {
            return Truth::No;
        }
        let mut options: Vec<Vec<ExtCard>> = Vec::with_capacity(self.dim());
        let mut open = false;
        for (ai, bi) in a.coords().iter().zip(b.coords()) {
            match (ai.finite_value(), bi.finite_value()) {
                (Some(x), Some(y)) => options.push(vec![ExtCard::finite(y - x)]),
                (_, None) if ai == bi => {
                    open = true;
                    options.push(free_choices(bi).into_iter().filter(|c| c <= bi).collect());
                }
                _ => options.push(vec![bi.clone()]),
            }
        }
        let mut found = false;
        for_each_point(self.dim(), &|i| 0..=(options[i].len() as u64 - 1), &mut |pick| {
            let c = CardVec(
                pick.iter()
                    .enumerate()
                    .map(|(i, &k)| options[i][k as usize].clone())
                    .collect(),
            );
            found = self.member(&c).unwrap_or(false);
            !found
        });
        match (found, open) {
            (true, _) => Truth::Yes,
            (false, false) => Truth::No,
            (false, true) => Truth::Unknown,
        }
    }

    fn below_finite_multiple(&self, x: &CardVec, u: &CardVec) -> Truth {
        let blocked = x
            .coords()
            .iter()
            .zip(u.coords())
            .any(|(xi, ui)| (ui.is_zero() && !xi.is_zero()) || (ui.is_finite() && xi.is_infinite()));
        if blocked {
            Truth::No
        } else {
            Truth::Unknown
        }
    }
}

impl LawSubject for DioMonoid {
    fn sample(&self, rng: &mut dyn RngCore) -> CardVec {
        let finite: Vec<&CardVec> = self.pool.iter().filter(|v| v.is_finite()).collect();
        let mut x = finite.choose(rng).map(|v| (*v).clone()).unwrap_or_else(|| self.zero());
        let infinite = self.bound.infinite_cardinals();
        if infinite.is_empty() {
            return x;
        }
        for _ in 0..2 {
            if rng.gen_bool(0.4) {
                if let (Some(h), Some(alpha)) = (self.pool.choose(rng), infinite.choose(rng)) {
                    let fam = Family::new().with(x.clone(), 1u64).with(h.clone(), alpha.clone());
                    let y = self.evaluate(&fam);
                    if self.member(&y).unwrap_or(false) {
                        x = y;
                    }
                }
            }
        }
        x
    }

    fn order_unit(&self) -> Option<CardVec> {
        if self.bound.is_finite_only() {
            return None;
        }
        let fam: Family<CardVec> = self.pool.iter().map(|v| (v.clone(), ExtCard::one())).collect();
        let u = self.evaluate(&fam);
        (u.support().len() == self.dim()).then_some(u)
    }
}

/// The same system read with the larger bound `AtMost(to)`.
pub fn universal_extend(m: &DioMonoid, to: &ExtCard) -> Result<DioMonoid, DioError> {
    if m.bound != CardBoundMode::AtMost(ExtCard::aleph0()) {
        return Err(DioError::Precondition(format!(
            "source bound must be <= aleph0, found {}",
            m.bound
        )));
    }
    if to.is_finite() {
        return Err(DioError::Precondition(format!("target {to} is not infinite")));
    }
    Ok(DioMonoid::new(m.system.clone(), CardBoundMode::AtMost(to.clone())))
}

/// `alpha = beta + sum over lambda of lambda * gamma(lambda)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub beta: CardVec,
    pub layers: Vec<(ExtCard, CardVec)>,
}

impl Decomposition {
    pub fn recombine(&self) -> CardVec {
        let mut fam = Family::new().with(self.beta.clone(), 1u64);
        for (lambda, gamma) in &self.layers {
            fam.push(gamma.clone(), lambda.clone());
        }
        let dim = self.beta.dim();
        CardVec(
            (0..dim)
                .map(|i| card_sum(fam.entries().iter().map(|(v, m)| (&v.coords()[i], m))))
                .collect(),
        )
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "beta = {}", self.beta)?;
        for (lambda, gamma) in &self.layers {
            write!(f, "\ngamma[{lambda}] = {gamma}")?;
        }
        Ok(())
    }
}

/// Splits a member into a vector with coordinates at most `aleph0` and one
/// `{0, aleph0}` pattern per infinite cardinal in the bound.
pub fn decompose(m: &DioMonoid, alpha: &CardVec) -> Result<Decomposition, DioError> {
    if !m.member(alpha)? {
        return Err(DioError::Precondition(format!("{alpha} is not a member")));
    }
    let aleph0 = ExtCard::aleph0();
    let beta = CardVec(alpha.coords().iter().map(|c| c.clone().min(aleph0.clone())).collect());
    let layers = m
        .bound
        .infinite_cardinals()
        .into_iter()
        .map(|lambda| {
            let gamma = CardVec(
                alpha
                    .coords()
                    .iter()
                    .map(|c| if *c >= lambda { aleph0.clone() } else { ExtCard::zero() })
                    .collect(),
            );
            (lambda, gamma)
        })
        .collect();
    Ok(Decomposition { beta, layers })
}

type Row = (Vec<BigRational>, BigRational);

fn rat(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn normalize(row: Row) -> Row {
    let (coefs, rhs) = row;
    match coefs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
        Some(scale) => (coefs.iter().map(|c| c / &scale).collect(), rhs / scale),
        None => (coefs, rhs),
    }
}

/// Whether `row . y <= rhs` for every row has a rational solution, by
/// Fourier-Motzkin elimination.
fn rational_feasible(mut rows: Vec<Row>, nvars: usize) -> bool {
    for var in 0..nvars {
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for row in rows {
            if row.0[var].is_positive() {
                pos.push(row);
            } else if row.0[var].is_negative() {
                neg.push(row);
            } else {
                keep.push(row);
            }
        }
        for (pc, pr) in &pos {
            for (nc, nr) in &neg {
                let (p, n) = (pc[var].clone(), -nc[var].clone());
                let coefs = pc.iter().zip(nc).map(|(a, b)| a * &n + b * &p).collect();
                keep.push(normalize((coefs, pr * &n + nr * &p)));
            }
        }
        keep.sort();
        keep.dedup();
        if keep.iter().any(|(c, r)| c.iter().all(Zero::is_zero) && r.is_negative()) {
            return false;
        }
        rows = keep;
    }
    rows.iter().all(|(_, r)| !r.is_negative())
}

/// The linear relaxation over the coordinates in `free`, with the remaining
/// coordinates fixed to `fixed` and every free coordinate at least `floor`.
fn relaxation(system: &ConstraintSystem, free: &[usize], fixed: &[u64], floor: i128) -> Vec<Row> {
    let n = free.len();
    let mut rows = Vec::new();
    let push_le = |a: &[u64], b: &[u64], rows: &mut Vec<Row>| {
        let mut coefs = vec![rat(0); n];
        let mut rhs = rat(0);
        for i in 0..system.dim {
            let d = a[i] as i128 - b[i] as i128;
            match free.iter().position(|&j| j == i) {
                Some(k) => coefs[k] = rat(d),
                None => rhs -= rat(d * fixed[i] as i128),
            }
        }
        rows.push((coefs, rhs));
    };
    for (a, b) in &system.equations {
        push_le(a, b, &mut rows);
        push_le(b, a, &mut rows);
    }
    for (a, b) in &system.inequalities {
        push_le(a, b, &mut rows);
    }
    for k in 0..n {
        let mut coefs = vec![rat(0); n];
        coefs[k] = rat(-1);
        rows.push((coefs, rat(-floor)));
    }
    rows
}

/// Whether the equations and congruences have a solution in `Z` over the
/// coordinates in `free`, with the others fixed to `fixed`.
///
/// Each congruence `a x in dN` becomes `a x - d k = 0` with a fresh integer
/// `k`. Unimodular column operations bring the matrix to lower echelon form,
/// after which the substituted variables are read off row by row.
fn integer_feasible(system: &ConstraintSystem, free: &[usize], fixed: &[u64]) -> bool {
    let cols = free.len() + system.congruences.len();
    let row = |a: &[u64], b: &[u64]| {
        let mut coefs = vec![0i128; cols];
        let mut rhs = 0i128;
        for i in 0..system.dim {
            let d = a[i] as i128 - b[i] as i128;
            match free.iter().position(|&j| j == i) {
                Some(k) => coefs[k] = d,
                None => rhs -= d * fixed[i] as i128,
            }
        }
        (coefs, rhs)
    };
    let zeros = vec![0; system.dim];
    let mut rows: Vec<(Vec<i128>, i128)> = system.equations.iter().map(|(a, b)| row(a, b)).collect();
    for (c, (a, d)) in system.congruences.iter().enumerate() {
        let (mut coefs, rhs) = row(a, &zeros);
        coefs[free.len() + c] = -(*d as i128);
        rows.push((coefs, rhs));
    }
    let mut solved: Vec<i128> = Vec::new();
    for r in 0..rows.len() {
        let p = solved.len();
        for j in p + 1..cols {
            while rows[r].0[j] != 0 {
                let q = rows[r].0[p] / rows[r].0[j];
                for row in rows.iter_mut() {
                    row.0[p] -= q * row.0[j];
                    row.0.swap(p, j);
                }
            }
        }
        let (coefs, rhs) = &rows[r];
        let rest = rhs - (0..p).map(|j| coefs[j] * solved[j]).sum::<i128>();
        match coefs.get(p).copied().filter(|&g| g != 0) {
            Some(g) if rest % g == 0 => solved.push(rest / g),
            Some(_) => return false,
            None if rest != 0 => return false,
            None => {}
        }
    }
    true
}

/// `H + aleph0 H` for a monoid `H` of finite solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aleph0Extension {
    system: ConstraintSystem,
    radius: u64,
}

/// Witness `x = h + aleph0 h'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionWitness {
    pub h: Vec<u64>,
    pub h_prime: Vec<u64>,
}

pub fn aleph0_extend_finite(m: &DioMonoid) -> Result<Aleph0Extension, DioError> {
    if !m.bound.is_finite_only() {
        return Err(DioError::Precondition(format!(
            "expected a monoid of finite solutions, found bound {}",
            m.bound
        )));
    }
    Ok(Aleph0Extension {
        system: m.system.clone(),
        radius: DEFAULT_RADIUS,
    })
}

impl Aleph0Extension {
    pub fn with_radius(self, radius: u64) -> Self {
        Aleph0Extension { radius, ..self }
    }

    pub fn radius(&self) -> u64 {
        self.radius
    }

    pub fn system(&self) -> &ConstraintSystem {
        &self.system
    }

    fn split(&self, x: &CardVec) -> Option<(Vec<usize>, Vec<u64>)> {
        if x.dim() != self.system.dim || x.coords().iter().any(|c| *c > ExtCard::aleph0()) {
            return None;
        }
        let infinite: Vec<usize> = (0..x.dim()).filter(|&i| x.coords()[i].is_infinite()).collect();
        let fixed = x.coords().iter().map(|c| c.to_u64().unwrap_or(0)).collect();
        Some((infinite, fixed))
    }

    fn search(&self, free: &[usize], fixed: &[u64], floor: u64) -> Option<Vec<u64>> {
        let mut found = None;
        for_each_point(
            self.system.dim,
            &|i| {
                if free.contains(&i) {
                    floor..=self.radius.max(floor)
                } else {
                    fixed[i]..=fixed[i]
                }
            },
            &mut |h| {
                if self.system.satisfied_small(h) {
                    found = Some(h.to_vec());
                }
                found.is_none()
            },
        );
        found
    }

    /// A decomposition `x = h + aleph0 h'` found within the search radius.
    pub fn witness(&self, x: &CardVec) -> Option<ExtensionWitness> {
        let (infinite, fixed) = self.split(x)?;
        let h = self.search(&infinite, &fixed, 0)?;
        let h_prime = if infinite.is_empty() {
            vec![0; x.dim()]
        } else {
            self.search(&infinite, &vec![0; x.dim()], 1)?
        };
        Some(ExtensionWitness { h, h_prime })
    }

    /// Membership of `x`. A `No` is always proved: either by a coordinate
    /// above `aleph0`, or by infeasibility of a linear relaxation. Without
    /// inequalities the answer is exact: the infinite coordinates carry a
    /// positive solution divisible by every modulus, and adding enough of it
    /// to any integer solution makes that solution nonnegative.
    pub fn contains(&self, x: &CardVec) -> Truth {
        let Some((infinite, fixed)) = self.split(x) else {
            return Truth::No;
        };
        if infinite.is_empty() {
            return Truth::from_bool(self.system.satisfied_small(&fixed));
        }
        let pattern = relaxation(&self.system, &infinite, &vec![0; x.dim()], 1);
        if !rational_feasible(pattern, infinite.len()) {
            return Truth::No;
        }
        if self.search(&infinite, &fixed, 0).is_some() {
            return Truth::Yes;
        }
        if self.system.inequalities.is_empty() {
            return Truth::from_bool(integer_feasible(&self.system, &infinite, &fixed));
        }
        let base = relaxation(&self.system, &infinite, &fixed, 0);
        if rational_feasible(base, infinite.len()) {
            Truth::Unknown
        } else {
            Truth::No
        }
    }
}

/// Outcome of a bounded saturation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Saturation {
    /// No counterexample with coordinates up to the radius.
    HoldsUpTo(u64),
    /// `s = t + h` with `s, t` in the monoid and `h` outside it.
    Fails { s: Vec<u64>, t: Vec<u64>, h: Vec<u64> },
}

impl Saturation {
    pub fn truth(&self) -> Truth {
        match self {
            Saturation::HoldsUpTo(_) => Truth::Yes,
            Saturation::Fails { .. } => Truth::No,
        }
    }
}

impl fmt::Display for Saturation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[u64]| CardVec::from_u64s(v).to_string();
        match self {
            Saturation::HoldsUpTo(r) => write!(f, "saturated up to radius {r}"),
            Saturation::Fails { s, t, h } => write!(
                f,
                "not saturated: {} = {} + {} with {} outside",
                show(s),
                show(t),
                show(h),
                show(h)
            ),
        }
    }
}

/// Checks `s = t + h, s and t in H => h in H` for `t, h` in the box of the given radius.
pub fn is_saturated(dim: usize, radius: u64, member: impl Fn(&[u64]) -> bool) -> Saturation {
    let mut members = Vec::new();
    let mut outsiders = Vec::new();
    for_each_point(dim, &|_| 0..=radius, &mut |x| {
        if member(x) {
            members.push(x.to_vec());
        } else {
            outsiders.push(x.to_vec());
        }
        true
    });
    for h in &outsiders {
        for t in &members {
            let s: Vec<u64> = t.iter().zip(h).map(|(a, b)| a + b).collect();
            if member(&s) {
                return Saturation::Fails {
                    s,
                    t: t.clone(),
                    h: h.clone(),
                };
            }
        }
    }
    Saturation::HoldsUpTo(radius)
}

impl DioMonoid {
    pub fn is_saturated(&self, radius: u64) -> Saturation {
        is_saturated(self.dim(), radius, |x| self.system.satisfied_small(x))
    }
}
