use std::collections::BTreeMap;

use super::cert::{
    BraidBlock, Certificate, CollapsedBlock, CollapsedCertificate, LayeredCertificate, OmegaCertificate,
};
use super::search::{braid_find, BraidHost, BraidVerdict};
use super::verify::{nonzero, verify};
use crate::cardinals::ExtCard;
use crate::monoid::{Budget, Family, KappaMonoid, MonoidError};

fn sum_all<M: KappaMonoid + ?Sized>(m: &M, items: &[&M::Elem]) -> M::Elem {
    let fam: Family<M::Elem> = items.iter().map(|e| ((*e).clone(), ExtCard::one())).collect();
    m.evaluate(&fam)
}

fn flip_omega<M: KappaMonoid + ?Sized>(m: &M, cert: &OmegaCertificate<M::Elem>) -> OmegaCertificate<M::Elem> {
    let zero = m.zero();
    let blk = |mu: usize| cert.block_at(mu, &zero);
    let flipped = |mu: usize| {
        let (cur, next) = (blk(mu), blk(mu + 1));
        if mu == 0 {
            BraidBlock {
                iblock: cur.jblock,
                jblock: cur.iblock.union(&next.iblock),
                u: sum_all(m, &[&cur.u, &cur.v_next]),
                v_next: next.u,
            }
        } else {
            BraidBlock {
                iblock: cur.jblock,
                jblock: next.iblock,
                u: cur.v_next,
                v_next: next.u,
            }
        }
    };
    let start = cert.prefix.len().max(1);
    OmegaCertificate {
        prefix: (0..start).map(flipped).collect(),
        cycle: (start..start + cert.cycle.len()).map(flipped).collect(),
    }
}

/// A certificate for the reversed pair, obtained by shifting the block indices by one.
pub fn flip<M: KappaMonoid + ?Sized>(m: &M, cert: &Certificate<M::Elem>) -> Certificate<M::Elem> {
    match cert {
        Certificate::Omega(c) => Certificate::Omega(flip_omega(m, c)),
        Certificate::Layered(l) => Certificate::Layered(LayeredCertificate {
            layers: l.layers.iter().map(|(w, c)| (w.clone(), flip_omega(m, c))).collect(),
        }),
        Certificate::Collapsed(c) => Certificate::Collapsed(CollapsedCertificate {
            blocks: c
                .blocks
                .iter()
                .map(|b| CollapsedBlock {
                    iblock: b.jblock.clone(),
                    jblock: b.iblock.clone(),
                    weight: b.weight.clone(),
                })
                .collect(),
        }),
    }
}

fn reflexive_omega<M: KappaMonoid + ?Sized>(m: &M, fam: &Family<M::Elem>) -> OmegaCertificate<M::Elem> {
    let finite: Family<M::Elem> = fam.entries().iter().filter(|(_, k)| k.is_finite()).cloned().collect();
    let infinite: Family<M::Elem> = fam
        .entries()
        .iter()
        .filter(|(_, k)| k.is_infinite())
        .map(|(e, _)| (e.clone(), ExtCard::one()))
        .collect();
    let block = |part: Family<M::Elem>| BraidBlock {
        u: m.evaluate(&part),
        iblock: part.clone(),
        jblock: part,
        v_next: m.zero(),
    };
    OmegaCertificate {
        prefix: vec![block(finite)],
        cycle: if infinite.is_empty() {
            Vec::new()
        } else {
            vec![block(infinite)]
        },
    }
}

/// Splits a family into weighted omega-sized layers: the family cut off at
/// `aleph0`, then for each `aleph_k` above it the elements of multiplicity at
/// least `aleph_k`, each taken `aleph0` times.
pub(crate) fn omega_layers<E: Clone + Ord>(fam: &Family<E>, top: u32) -> Vec<(ExtCard, Family<E>)> {
    let aleph0 = ExtCard::aleph0();
    let mut out = vec![(
        ExtCard::one(),
        fam.entries()
            .iter()
            .map(|(e, k)| (e.clone(), k.clone().min(aleph0.clone())))
            .collect(),
    )];
    for level in 1..=top {
        let lam = ExtCard::aleph_raw(level);
        let layer: Family<E> = fam
            .entries()
            .iter()
            .filter(|(_, k)| *k >= lam)
            .map(|(e, _)| (e.clone(), aleph0.clone()))
            .collect();
        out.push((lam, layer));
    }
    out
}

pub(crate) fn top_level<E: Clone + Ord>(fams: &[&Family<E>]) -> u32 {
    fams.iter()
        .flat_map(|f| f.entries().iter().filter_map(|(_, k)| k.aleph_level()))
        .max()
        .unwrap_or(0)
}

/// The certificate braiding a family with itself.
pub fn reflexive<M: KappaMonoid + ?Sized>(m: &M, fam: &Family<M::Elem>) -> Certificate<M::Elem> {
    let fam = nonzero(m, fam);
    let top = top_level(&[&fam]);
    if top == 0 {
        return Certificate::Omega(reflexive_omega(m, &fam));
    }
    Certificate::Layered(LayeredCertificate {
        layers: omega_layers(&fam, top)
            .into_iter()
            .filter(|(_, layer)| !layer.is_empty())
            .map(|(w, layer)| (w, reflexive_omega(m, &layer)))
            .collect(),
    })
}

/// How [`compose`] obtained its certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionRoute {
    /// Aligned the two partitions of the middle family and regrouped blocks.
    Aligned,
    /// Searched for a certificate of the outer pair directly.
    Searched,
}

/// Consecutive blocks of one certificate merged into a single block.
struct Merged<E> {
    iblock: Family<E>,
    jblock: Family<E>,
    u: E,
    v_next: E,
}

struct Stream<'a, M: KappaMonoid + ?Sized> {
    m: &'a M,
    cert: &'a OmegaCertificate<M::Elem>,
    pos: usize,
}

impl<'a, M: KappaMonoid + ?Sized> Stream<'a, M> {
    fn take(&mut self) -> BraidBlock<M::Elem> {
        let b = self.cert.block_at(self.pos, &self.m.zero());
        self.pos += 1;
        BraidBlock {
            iblock: nonzero(self.m, &b.iblock),
            jblock: nonzero(self.m, &b.jblock),
            ..b
        }
    }

    fn phase(&self) -> usize {
        self.cert.phase(self.pos)
    }
}

fn merge<M: KappaMonoid + ?Sized>(m: &M, blocks: &[BraidBlock<M::Elem>]) -> Merged<M::Elem> {
    let mut iblock = Family::new();
    let mut jblock = Family::new();
    let mut links: Vec<&M::Elem> = Vec::new();
    for (k, b) in blocks.iter().enumerate() {
        iblock.extend(&b.iblock);
        jblock.extend(&b.jblock);
        if k > 0 {
            links.push(&blocks[k - 1].v_next);
        }
        links.push(&b.u);
    }
    Merged {
        iblock: iblock.canonical(),
        jblock: jblock.canonical(),
        u: sum_all(m, &links),
        v_next: blocks.last().map(|b| b.v_next.clone()).unwrap_or_else(|| m.zero()),
    }
}

fn apply<E: Clone + Ord>(diff: &mut BTreeMap<E, i64>, fam: &Family<E>, sign: i64) {
    for (e, k) in fam.entries() {
        let k = k.to_u64().unwrap_or(0) as i64;
        let entry = diff.entry(e.clone()).or_insert(0);
        *entry += sign * k;
        if *entry == 0 {
            diff.remove(e);
        }
    }
}

fn as_family<E: Clone + Ord>(diff: &BTreeMap<E, i64>, sign: i64) -> Family<E> {
    diff.iter()
        .filter(|(_, k)| **k * sign > 0)
        .map(|(e, k)| (e.clone(), ExtCard::from((k * sign) as u64)))
        .collect()
}

/// Partitions of the middle family made nested: after step `a`, the copies
/// used by the first certificate are contained in those used by the second,
/// which are contained in those used by the first one step later.
struct Alignment<E> {
    first: Vec<Merged<E>>,
    second: Vec<Merged<E>>,
    /// Copies used by the first certificate's step `a` but not yet by the second.
    ahead: Vec<Family<E>>,
    /// Copies used by the second certificate up to step `a` but not by the first.
    behind: Vec<Family<E>>,
    period_start: usize,
    period: usize,
}

/// Positions in both certificates together with the outstanding difference.
type AlignState<E> = (usize, usize, Vec<(E, i64)>);

fn align<M: KappaMonoid + ?Sized>(
    m: &M,
    c1: &OmegaCertificate<M::Elem>,
    c2: &OmegaCertificate<M::Elem>,
    budget: &mut Budget,
) -> Option<Alignment<M::Elem>> {
    let mut s1 = Stream { m, cert: c1, pos: 0 };
    let mut s2 = Stream { m, cert: c2, pos: 0 };
    let mut diff: BTreeMap<M::Elem, i64> = BTreeMap::new();
    let mut out = Alignment {
        first: Vec::new(),
        second: Vec::new(),
        ahead: Vec::new(),
        behind: Vec::new(),
        period_start: 0,
        period: 0,
    };
    let mut seen: BTreeMap<AlignState<M::Elem>, usize> = BTreeMap::new();
    let mut needed: Option<usize> = None;
    let mut alpha = 0usize;
    loop {
        if needed.is_some_and(|n| out.first.len() >= n) {
            return Some(out);
        }
        let mut blocks = Vec::new();
        loop {
            if !budget.tick() {
                return None;
            }
            let b = s1.take();
            apply(&mut diff, &b.jblock, 1);
            blocks.push(b);
            if diff.values().all(|k| *k >= 0) {
                break;
            }
        }
        out.ahead.push(as_family(&diff, 1));
        out.first.push(merge(m, &blocks));
        let mut blocks = Vec::new();
        loop {
            if !budget.tick() {
                return None;
            }
            let b = s2.take();
            apply(&mut diff, &b.iblock, -1);
            blocks.push(b);
            if diff.values().all(|k| *k <= 0) {
                break;
            }
        }
        out.behind.push(as_family(&diff, -1));
        out.second.push(merge(m, &blocks));
        if needed.is_none() {
            let key = (
                s1.phase(),
                s2.phase(),
                diff.iter().map(|(e, k)| (e.clone(), *k)).collect::<Vec<_>>(),
            );
            if let Some(&first_seen) = seen.get(&key) {
                out.period_start = first_seen + 1;
                out.period = alpha - first_seen;
                let q = out.period_start.saturating_sub(1).div_ceil(3);
                needed = Some(3 * (q + out.period) + 1);
            } else {
                seen.insert(key, alpha);
            }
        }
        alpha += 1;
    }
}

fn regroup<M: KappaMonoid + ?Sized>(m: &M, al: &Alignment<M::Elem>) -> OmegaCertificate<M::Elem> {
    let (a, b) = (&al.first, &al.second);
    let qsum = |k: usize| m.evaluate(&al.behind[k]);
    let psum = |k: usize| m.evaluate(&al.ahead[k]);
    let mut blocks = vec![BraidBlock {
        iblock: a[0].iblock.clone(),
        jblock: b[0].jblock.clone(),
        u: a[0].u.clone(),
        v_next: sum_all(m, &[&a[0].v_next, &qsum(0), &b[0].v_next]),
    }];
    let q = al.period_start.saturating_sub(1).div_ceil(3);
    for l in 0..q + al.period {
        let r = 3 * l + 1..=3 * l + 3;
        let mut iblock = Family::new();
        let mut jblock = Family::new();
        for k in r {
            iblock.extend(&a[k].iblock);
            jblock.extend(&b[k].jblock);
        }
        blocks.push(BraidBlock {
            iblock: iblock.canonical(),
            jblock: jblock.canonical(),
            u: sum_all(m, &[&b[3 * l + 1].u, &psum(3 * l + 2), &a[3 * l + 3].u]),
            v_next: sum_all(m, &[&a[3 * l + 3].v_next, &qsum(3 * l + 3), &b[3 * l + 3].v_next]),
        });
    }
    let cycle = blocks.split_off(q + 1);
    let idle = cycle.iter().all(|blk| {
        blk.iblock.is_empty() && blk.jblock.is_empty() && m.is_zero(&blk.u).is_yes() && m.is_zero(&blk.v_next).is_yes()
    });
    OmegaCertificate {
        prefix: blocks,
        cycle: if idle { Vec::new() } else { cycle },
    }
}

/// A certificate for `(x, z)` from certificates for `(x, y)` and `(y, z)`.
///
/// Omega certificates are composed by aligning the two partitions of `y`
/// and regrouping three blocks at a time. Other certificate kinds, and
/// alignments that do not become periodic within the budget, fall back to
/// [`braid_find`] on the outer pair.
#[allow(clippy::too_many_arguments)]
pub fn compose<M: BraidHost + ?Sized>(
    m: &M,
    x: &Family<M::Elem>,
    z: &Family<M::Elem>,
    cert_xy: &Certificate<M::Elem>,
    cert_yz: &Certificate<M::Elem>,
    lambda: &ExtCard,
    budget: &mut Budget,
) -> Result<(Certificate<M::Elem>, CompositionRoute), MonoidError> {
    if let (Certificate::Omega(c1), Certificate::Omega(c2)) = (cert_xy, cert_yz) {
        if let Some(al) = align(m, c1, c2, budget) {
            let cert = Certificate::Omega(regroup(m, &al));
            if verify(m, x, z, &cert, lambda).is_valid() {
                return Ok((cert, CompositionRoute::Aligned));
            }
        }
    }
    match braid_find(m, x, z, lambda, budget)? {
        BraidVerdict::Braided(cert) => Ok((cert, CompositionRoute::Searched)),
        BraidVerdict::NotBraided(why) => Err(MonoidError::Precondition(format!(
            "the outer families are not braided ({why}); the input certificates cannot both be valid"
        ))),
        BraidVerdict::Unknown(why) => Err(MonoidError::Undecided(why)),
    }
}
