use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use super::cert::{
    BraidBlock, Certificate, CollapsedBlock, CollapsedCertificate, LayeredCertificate, OmegaCertificate,
};
use super::transform::{omega_layers, top_level};
use super::verify::{nonzero, verify, VerifyOutcome};
use crate::cardinals::ExtCard;
use crate::cyclic::{CyclicKind, CyclicMonoid};
use crate::diophantine::DioMonoid;
use crate::free_vectors::{CardVec, VectorMonoid};
use crate::monoid::{Budget, Family, KappaMonoid, MonoidError, Truth};

/// A monoid whose finite elements are coordinate vectors in `N0^n`, added coordinatewise.
pub trait BraidHost: KappaMonoid {
    /// Coordinates of an element of the base monoid, or `None` outside it.
    fn base_coords(&self, e: &Self::Elem) -> Option<Vec<u64>>;

    fn lift_base_coords(&self, coords: &[u64]) -> Self::Elem;

    fn base_contains(&self, _coords: &[u64]) -> bool {
        true
    }
}

impl BraidHost for VectorMonoid {
    fn base_coords(&self, e: &CardVec) -> Option<Vec<u64>> {
        e.to_u64s()
    }

    fn lift_base_coords(&self, coords: &[u64]) -> CardVec {
        CardVec::from_u64s(coords)
    }
}

impl BraidHost for DioMonoid {
    fn base_coords(&self, e: &CardVec) -> Option<Vec<u64>> {
        e.to_u64s()
    }

    fn lift_base_coords(&self, coords: &[u64]) -> CardVec {
        CardVec::from_u64s(coords)
    }

    fn base_contains(&self, coords: &[u64]) -> bool {
        self.system().satisfied_small(coords)
    }
}

impl BraidHost for CyclicMonoid {
    fn base_coords(&self, e: &ExtCard) -> Option<Vec<u64>> {
        match self.kind() {
            CyclicKind::Naturals => e.to_u64().map(|n| vec![n]),
            CyclicKind::Cmn { .. } => None,
        }
    }

    fn lift_base_coords(&self, coords: &[u64]) -> ExtCard {
        ExtCard::from(coords[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    SumsDiffer {
        x_sum: String,
        y_sum: String,
    },
    /// One family has finitely many nonzero entries and the other infinitely many.
    FiniteVsInfinite,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::SumsDiffer { x_sum, y_sum } => {
                write!(f, "sums differ: {x_sum} vs {y_sum}")
            }
            Obstruction::FiniteVsInfinite => {
                f.write_str("a family of finite support cannot be braided with one of infinite support")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BraidVerdict<E: Clone + Ord> {
    Braided(Certificate<E>),
    NotBraided(Obstruction),
    Unknown(String),
}

impl<E: Clone + Ord> BraidVerdict<E> {
    pub fn truth(&self) -> Truth {
        match self {
            BraidVerdict::Braided(_) => Truth::Yes,
            BraidVerdict::NotBraided(_) => Truth::No,
            BraidVerdict::Unknown(_) => Truth::Unknown,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate<E>> {
        match self {
            BraidVerdict::Braided(c) => Some(c),
            _ => None,
        }
    }
}

/// Searches for a braiding of `x` and `y` with blocks below `lambda`.
///
/// A returned certificate has been verified. A negative answer always comes
/// with an obstruction; anything else is reported as unknown.
pub fn braid_find<M: BraidHost + ?Sized>(
    m: &M,
    x: &Family<M::Elem>,
    y: &Family<M::Elem>,
    lambda: &ExtCard,
    budget: &mut Budget,
) -> Result<BraidVerdict<M::Elem>, MonoidError> {
    if lambda.is_finite() {
        return Err(MonoidError::Precondition(format!(
            "block bound {lambda} is not infinite"
        )));
    }
    let (x, y) = (nonzero(m, x), nonzero(m, y));
    let x_infinite = x.index_cardinality().is_infinite();
    let y_infinite = y.index_cardinality().is_infinite();
    if *lambda == ExtCard::aleph0() && x_infinite != y_infinite {
        return Ok(BraidVerdict::NotBraided(Obstruction::FiniteVsInfinite));
    }
    let (sx, sy) = (m.ksum(&x)?, m.ksum(&y)?);
    let sums = m.equal(&sx, &sy);
    if sums.is_no() {
        return Ok(BraidVerdict::NotBraided(Obstruction::SumsDiffer {
            x_sum: sx.to_string(),
            y_sum: sy.to_string(),
        }));
    }
    let built = if *lambda > ExtCard::aleph0() {
        collapsed(m, &x, &y, lambda)
    } else if !x_infinite {
        finite_pair(m, &x, &y)
    } else if top_level(&[&x, &y]) > 0 {
        layered(m, &x, &y, budget)
    } else {
        omega(m, &x, &y, budget).map(Certificate::Omega)
    };
    Ok(match built {
        Err(why) => BraidVerdict::Unknown(why),
        Ok(cert) => match verify(m, &x, &y, &cert, lambda) {
            VerifyOutcome::Valid => BraidVerdict::Braided(cert),
            VerifyOutcome::Invalid(r) | VerifyOutcome::Undetermined(r) => {
                BraidVerdict::Unknown(format!("candidate certificate not confirmed: {r}"))
            }
        },
    })
}

fn finite_pair<M: BraidHost + ?Sized>(
    m: &M,
    x: &Family<M::Elem>,
    y: &Family<M::Elem>,
) -> Result<Certificate<M::Elem>, String> {
    Ok(Certificate::Omega(OmegaCertificate {
        prefix: vec![BraidBlock {
            iblock: x.clone(),
            jblock: y.clone(),
            u: m.evaluate(x),
            v_next: m.zero(),
        }],
        cycle: Vec::new(),
    }))
}

fn truncated<E: Clone + Ord>(fam: &Family<E>, cap: &ExtCard) -> Family<E> {
    fam.entries()
        .iter()
        .map(|(e, k)| (e.clone(), k.clone().min(cap.clone())))
        .collect()
}

fn collapsed<M: BraidHost + ?Sized>(
    m: &M,
    x: &Family<M::Elem>,
    y: &Family<M::Elem>,
    lambda: &ExtCard,
) -> Result<Certificate<M::Elem>, String> {
    let below = lambda
        .aleph_level()
        .and_then(|l| l.checked_sub(1))
        .map(ExtCard::aleph_raw)
        .ok_or_else(|| format!("{lambda} has no predecessor"))?;
    let mut blocks = vec![CollapsedBlock {
        iblock: truncated(x, &below),
        jblock: truncated(y, &below),
        weight: ExtCard::one(),
    }];
    let from = below.aleph_level().unwrap_or(0) + 1;
    for level in from..=top_level(&[x, y]) {
        let lam = ExtCard::aleph_raw(level);
        let part = |fam: &Family<M::Elem>| -> Family<M::Elem> {
            fam.entries()
                .iter()
                .filter(|(_, k)| *k >= lam)
                .map(|(e, _)| (e.clone(), below.clone()))
                .collect()
        };
        let (i, j) = (part(x), part(y));
        match (i.is_empty(), j.is_empty()) {
            (true, true) => continue,
            (false, false) => {}
            _ => return Err(format!("only one family has multiplicities reaching {lam}")),
        }
        blocks.push(CollapsedBlock {
            iblock: i,
            jblock: j,
            weight: lam,
        });
    }
    for b in &blocks {
        let (si, sj) = (m.evaluate(&b.iblock), m.evaluate(&b.jblock));
        if !m.equal(&si, &sj).is_yes() {
            return Err(format!(
                "the weight {} block sums {si} and {sj} are not known to agree",
                b.weight
            ));
        }
    }
    Ok(Certificate::Collapsed(CollapsedCertificate { blocks }))
}

fn layered<M: BraidHost + ?Sized>(
    m: &M,
    x: &Family<M::Elem>,
    y: &Family<M::Elem>,
    budget: &mut Budget,
) -> Result<Certificate<M::Elem>, String> {
    let top = top_level(&[x, y]);
    let mut layers = Vec::new();
    for ((w, lx), (_, ly)) in omega_layers(x, top).into_iter().zip(omega_layers(y, top)) {
        match (lx.is_empty(), ly.is_empty()) {
            (true, true) => continue,
            (false, false) => {}
            _ => return Err(format!("only one family has multiplicities reaching {w}")),
        }
        let cert = omega(m, &lx, &ly, budget).map_err(|e| format!("layer of weight {w}: {e}"))?;
        layers.push((w, cert));
    }
    Ok(Certificate::Layered(LayeredCertificate { layers }))
}

/// Per-element data for the periodic construction.
struct Split<E> {
    finite: Vec<(E, u64)>,
    infinite: Vec<(E, Vec<u64>)>,
    finite_total: Vec<i128>,
}

fn split<M: BraidHost + ?Sized>(m: &M, fam: &Family<M::Elem>, dim: usize) -> Result<Split<M::Elem>, String> {
    let mut out = Split {
        finite: Vec::new(),
        infinite: Vec::new(),
        finite_total: vec![0; dim],
    };
    for (e, k) in fam.entries() {
        let coords = m
            .base_coords(e)
            .ok_or_else(|| format!("{e} has no coordinates in the base monoid"))?;
        if coords.len() != dim {
            return Err(format!("{e} has {} coordinates, expected {dim}", coords.len()));
        }
        match k.to_u64() {
            Some(k) => {
                for (t, c) in out.finite_total.iter_mut().zip(&coords) {
                    *t += k as i128 * *c as i128;
                }
                out.finite.push((e.clone(), k));
            }
            None if *k == ExtCard::aleph0() => out.infinite.push((e.clone(), coords)),
            None => return Err(format!("{e} has multiplicity {k} above aleph0")),
        }
    }
    Ok(out)
}

fn combination(vectors: &[Vec<u64>], weights: &[u64], dim: usize) -> Vec<u64> {
    let mut out = vec![0u64; dim];
    for (v, w) in vectors.iter().zip(weights) {
        for (o, c) in out.iter_mut().zip(v) {
            *o += w * c;
        }
    }
    out
}

/// Positive weights `k`, `l` with `sum k_e e = sum l_f f`.
fn multipliers(sx: &[Vec<u64>], sy: &[Vec<u64>], budget: &mut Budget) -> Option<(Vec<u64>, Vec<u64>)> {
    let dim = sx[0].len();
    if dim == 1 {
        let a: u64 = sx.iter().map(|v| v[0]).sum();
        let b: u64 = sy.iter().map(|v| v[0]).sum();
        let g = a.gcd(&b);
        return Some((vec![b / g; sx.len()], vec![a / g; sy.len()]));
    }
    const MAX_WEIGHT: u64 = 24;
    let arity = sx.len().max(sy.len()) as u32;
    let mut cap = 1u64;
    while cap < MAX_WEIGHT && (cap + 1).saturating_pow(arity).saturating_mul(2) <= budget.remaining() {
        cap += 1;
    }
    let mut table: BTreeMap<Vec<u64>, Vec<u64>> = BTreeMap::new();
    let mut k = vec![1u64; sx.len()];
    loop {
        if !budget.tick() {
            return None;
        }
        table.entry(combination(sx, &k, dim)).or_insert_with(|| k.clone());
        if !odometer(&mut k, cap) {
            break;
        }
    }
    let mut l = vec![1u64; sy.len()];
    loop {
        if !budget.tick() {
            return None;
        }
        if let Some(k) = table.get(&combination(sy, &l, dim)) {
            return Some((k.clone(), l));
        }
        if !odometer(&mut l, cap) {
            return None;
        }
    }
}

fn odometer(v: &mut [u64], cap: u64) -> bool {
    for slot in v.iter_mut().rev() {
        if *slot < cap {
            *slot += 1;
            return true;
        }
        *slot = 1;
    }
    false
}

fn to_coords(v: &[i128]) -> Option<Vec<u64>> {
    v.iter().map(|&c| u64::try_from(c).ok()).collect()
}

/// A one-block prefix and a one-block cycle: the prefix absorbs the finite
/// parts and `t` periods of `y`, and each cycle block exchanges one period
/// `sum k_e e = sum l_f f` on both sides, scaled by `big_m`.
fn omega<M: BraidHost + ?Sized>(
    m: &M,
    x: &Family<M::Elem>,
    y: &Family<M::Elem>,
    budget: &mut Budget,
) -> Result<OmegaCertificate<M::Elem>, String> {
    let dim = x
        .entries()
        .iter()
        .chain(y.entries())
        .find_map(|(e, _)| m.base_coords(e).map(|c| c.len()))
        .ok_or_else(|| "no element has base coordinates".to_string())?;
    let (px, py) = (split(m, x, dim)?, split(m, y, dim)?);
    if px.infinite.is_empty() || py.infinite.is_empty() {
        return Err("one side has no element of multiplicity aleph0".into());
    }
    let sx: Vec<Vec<u64>> = px.infinite.iter().map(|(_, c)| c.clone()).collect();
    let sy: Vec<Vec<u64>> = py.infinite.iter().map(|(_, c)| c.clone()).collect();
    let (k, l) = multipliers(&sx, &sy, budget).ok_or_else(|| {
        "no periodic exchange between the infinite parts was found (the braiding may be aperiodic)".to_string()
    })?;
    let delta: Vec<i128> = combination(&sx, &k, dim).into_iter().map(i128::from).collect();
    let d: Vec<i128> = (0..dim).map(|i| py.finite_total[i] - px.finite_total[i]).collect();
    if let Some(i) = (0..dim).find(|&i| delta[i] == 0 && d[i] != 0) {
        return Err(format!("coordinate {i}: finite parts differ and no infinite supply"));
    }
    let t0 = (0..dim)
        .filter(|&i| delta[i] > 0)
        .map(|i| Integer::div_ceil(&-d[i], &delta[i]).max(0))
        .max()
        .unwrap_or(0);
    let fx = to_coords(&px.finite_total).ok_or("negative finite total")?;
    for t in t0..t0 + 8 {
        let v: Vec<i128> = (0..dim).map(|i| d[i] + t * delta[i]).collect();
        let m0 = (0..dim)
            .filter(|&i| delta[i] > 0)
            .map(|i| Integer::div_ceil(&v[i], &delta[i]))
            .max()
            .unwrap_or(1)
            .max(1);
        for big_m in m0..m0 + 8 {
            if !budget.tick() {
                return Err("search budget exhausted".into());
            }
            let u: Vec<i128> = (0..dim).map(|i| big_m * delta[i] - v[i]).collect();
            let (Some(vc), Some(uc)) = (to_coords(&v), to_coords(&u)) else {
                continue;
            };
            if !(m.base_contains(&fx) && m.base_contains(&vc) && m.base_contains(&uc)) {
                continue;
            }
            let copies = |side: &[(M::Elem, Vec<u64>)], w: &[u64], factor: i128| -> Family<M::Elem> {
                side.iter()
                    .zip(w)
                    .map(|((e, _), &w)| (e.clone(), ExtCard::from(w * factor as u64)))
                    .collect()
            };
            let mut prefix_j: Family<M::Elem> = py.finite.iter().map(|(e, k)| (e.clone(), ExtCard::from(*k))).collect();
            prefix_j.extend(&copies(&py.infinite, &l, t));
            let prefix = BraidBlock {
                iblock: px.finite.iter().map(|(e, k)| (e.clone(), ExtCard::from(*k))).collect(),
                jblock: prefix_j.canonical(),
                u: m.lift_base_coords(&fx),
                v_next: m.lift_base_coords(&vc),
            };
            let cycle = BraidBlock {
                iblock: copies(&px.infinite, &k, big_m),
                jblock: copies(&py.infinite, &l, big_m),
                u: m.lift_base_coords(&uc),
                v_next: m.lift_base_coords(&vc),
            };
            return Ok(OmegaCertificate {
                prefix: vec![prefix],
                cycle: vec![cycle],
            });
        }
    }
    Err("no links inside the base monoid were found".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diophantine::ConstraintSystem;
    use crate::monoid::CardBoundMode;
    use proptest::prelude::*;

    fn a0() -> ExtCard {
        ExtCard::aleph0()
    }

    fn nat() -> VectorMonoid {
        VectorMonoid::free(1, a0())
    }

    fn c(k: u64) -> CardVec {
        CardVec::from_u64s(&[k])
    }

    fn find<M: BraidHost>(m: &M, x: &Family<M::Elem>, y: &Family<M::Elem>) -> BraidVerdict<M::Elem> {
        braid_find(m, x, y, &a0(), &mut Budget::default()).unwrap()
    }

    #[test]
    fn ones_against_twos() {
        let x = Family::singleton(c(1), a0());
        let y = Family::singleton(c(2), a0());
        assert!(find(&nat(), &x, &y).truth().is_yes());
    }

    #[test]
    fn finite_equal_sums() {
        let x = Family::singleton(c(1), ExtCard::from(3u64));
        let y = Family::singleton(c(3), ExtCard::one());
        let v = find(&nat(), &x, &y);
        let Some(Certificate::Omega(o)) = v.certificate() else {
            panic!("{v:?}")
        };
        assert!(o.cycle.is_empty());
    }

    #[test]
    fn obstructions() {
        let x = Family::singleton(c(1), a0());
        let y = Family::singleton(c(3), ExtCard::one());
        assert_eq!(
            find(&nat(), &x, &y),
            BraidVerdict::NotBraided(Obstruction::FiniteVsInfinite)
        );
        let plane = VectorMonoid::free(2, a0());
        let x = Family::singleton(CardVec::from_u64s(&[1, 0]), a0());
        let y = Family::singleton(CardVec::from_u64s(&[0, 1]), a0());
        assert!(matches!(
            find(&plane, &x, &y),
            BraidVerdict::NotBraided(Obstruction::SumsDiffer { .. })
        ));
        let x = Family::singleton(c(2), ExtCard::from(2u64));
        let y = Family::singleton(c(3), ExtCard::one());
        assert!(matches!(
            find(&nat(), &x, &y),
            BraidVerdict::NotBraided(Obstruction::SumsDiffer { .. })
        ));
    }

    #[test]
    fn mixed_finite_and_infinite_parts() {
        let x = Family::new().with(c(5), 3u64).with(c(3), a0()).with(c(2), a0());
        let y = Family::new().with(c(7), 1u64).with(c(4), a0());
        assert!(find(&nat(), &x, &y).truth().is_yes());
    }

    #[test]
    fn plane_with_common_period() {
        let plane = VectorMonoid::free(2, a0());
        let v = |a, b| CardVec::from_u64s(&[a, b]);
        let x = Family::new()
            .with(v(1, 0), a0())
            .with(v(0, 1), a0())
            .with(v(2, 0), 1u64);
        let y = Family::new().with(v(1, 1), a0()).with(v(0, 3), 2u64);
        assert!(find(&plane, &x, &y).truth().is_yes());
    }

    #[test]
    fn aperiodic_pair_is_unknown() {
        let plane = VectorMonoid::free(2, a0());
        let v = |a, b| CardVec::from_u64s(&[a, b]);
        let x = Family::new().with(v(1, 0), a0()).with(v(1, 1), a0());
        let y = Family::new().with(v(0, 1), a0()).with(v(2, 2), a0());
        assert!(matches!(find(&plane, &x, &y), BraidVerdict::Unknown(_)));
    }

    #[test]
    fn larger_multiplicities_use_layers() {
        let m = VectorMonoid::free(1, ExtCard::aleph_raw(2));
        let x = Family::new().with(c(1), ExtCard::aleph_raw(2)).with(c(3), 4u64);
        let y = Family::new().with(c(2), ExtCard::aleph_raw(2));
        let v = find(&m, &x, &y);
        assert!(matches!(v.certificate(), Some(Certificate::Layered(_))), "{v:?}");
    }

    #[test]
    fn collapsed_above_aleph0() {
        let m = VectorMonoid::free(1, ExtCard::aleph_raw(2));
        let x = Family::new().with(c(1), ExtCard::aleph_raw(2));
        let y = Family::new().with(c(2), ExtCard::aleph_raw(2)).with(c(5), 1u64);
        let v = braid_find(&m, &x, &y, &ExtCard::aleph_raw(1), &mut Budget::default()).unwrap();
        assert!(matches!(v.certificate(), Some(Certificate::Collapsed(_))), "{v:?}");
        let x = Family::new().with(ExtCard::aleph0().pipe_vec(), 1u64);
        let y = Family::singleton(c(1), a0());
        let v = braid_find(&m, &x, &y, &ExtCard::aleph_raw(1), &mut Budget::default()).unwrap();
        assert!(v.truth().is_yes());
        assert_eq!(
            find(&m, &x, &y),
            BraidVerdict::NotBraided(Obstruction::FiniteVsInfinite)
        );
    }

    trait PipeVec {
        fn pipe_vec(self) -> CardVec;
    }

    impl PipeVec for ExtCard {
        fn pipe_vec(self) -> CardVec {
            CardVec(vec![self])
        }
    }

    #[test]
    fn diophantine_links_stay_in_the_base() {
        let s = ConstraintSystem::free(2).equation(vec![1, 0], vec![0, 1]).unwrap();
        let m = DioMonoid::new(s, CardBoundMode::at_most_level(0));
        let v = |a| CardVec::from_u64s(&[a, a]);
        let x = Family::new().with(v(1), a0()).with(v(3), 1u64);
        let y = Family::new().with(v(2), a0());
        assert!(find(&m, &x, &y).truth().is_yes());
    }

    #[test]
    fn cyclic_naturals_host() {
        let m = CyclicMonoid::naturals().extended(a0()).unwrap();
        let x = Family::singleton(ExtCard::from(3u64), a0());
        let y = Family::new()
            .with(ExtCard::from(2u64), a0())
            .with(ExtCard::from(9u64), 2u64);
        assert!(find(&m, &x, &y).truth().is_yes());
    }

    fn naturals_family() -> impl Strategy<Value = Family<CardVec>> {
        let mult = prop_oneof![(1u64..4).prop_map(ExtCard::from), Just(ExtCard::aleph0())];
        prop::collection::vec((1u64..6, mult), 1..4).prop_map(|v| v.into_iter().map(|(e, k)| (c(e), k)).collect())
    }

    fn closed_form(x: &Family<CardVec>, y: &Family<CardVec>) -> Truth {
        let total = |f: &Family<CardVec>| -> Option<u64> {
            f.entries()
                .iter()
                .map(|(e, k)| k.to_u64().map(|k| k * e.to_u64s().unwrap()[0]))
                .sum()
        };
        match (total(x), total(y)) {
            (None, None) => Truth::Yes,
            (Some(a), Some(b)) if a == b => Truth::Yes,
            _ => Truth::No,
        }
    }

    proptest! {
        #[test]
        fn naturals_match_closed_form(x in naturals_family(), y in naturals_family()) {
            let verdict = find(&nat(), &x, &y);
            prop_assert_eq!(verdict.truth(), closed_form(&x, &y), "{:?}", verdict);
        }
    }
}
