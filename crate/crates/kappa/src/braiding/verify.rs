use std::fmt;

use super::cert::{BraidBlock, Certificate, CollapsedCertificate, LayeredCertificate, OmegaCertificate};
use crate::cardinals::ExtCard;
use crate::monoid::{Family, KappaMonoid, MonoidError, Truth};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    Valid,
    Invalid(String),
    /// Some equality could not be decided by the monoid.
    Undetermined(String),
}

impl VerifyOutcome {
    pub fn is_valid(&self) -> bool {
        matches!(self, VerifyOutcome::Valid)
    }

    pub fn truth(&self) -> Truth {
        match self {
            VerifyOutcome::Valid => Truth::Yes,
            VerifyOutcome::Invalid(_) => Truth::No,
            VerifyOutcome::Undetermined(_) => Truth::Unknown,
        }
    }
}

impl fmt::Display for VerifyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyOutcome::Valid => f.write_str("valid"),
            VerifyOutcome::Invalid(r) => write!(f, "invalid: {r}"),
            VerifyOutcome::Undetermined(r) => write!(f, "undetermined: {r}"),
        }
    }
}

/// Collects the first failure; an undecided check is remembered but does not stop the scan.
struct Checker {
    pending: Option<String>,
}

impl Checker {
    fn new() -> Self {
        Checker { pending: None }
    }

    fn expect(&mut self, t: Truth, what: impl FnOnce() -> String) -> Result<(), VerifyOutcome> {
        match t {
            Truth::Yes => Ok(()),
            Truth::No => Err(VerifyOutcome::Invalid(what())),
            Truth::Unknown => {
                if self.pending.is_none() {
                    self.pending = Some(what());
                }
                Ok(())
            }
        }
    }

    fn finish(self) -> VerifyOutcome {
        match self.pending {
            Some(r) => VerifyOutcome::Undetermined(r),
            None => VerifyOutcome::Valid,
        }
    }
}

fn sum_of<M: KappaMonoid + ?Sized>(m: &M, fam: &Family<M::Elem>, label: &str) -> Result<M::Elem, VerifyOutcome> {
    m.ksum(fam)
        .map_err(|e: MonoidError| VerifyOutcome::Invalid(format!("{label}: {e}")))
}

/// The nonzero part of a family in canonical form.
pub(crate) fn nonzero<M: KappaMonoid + ?Sized>(m: &M, fam: &Family<M::Elem>) -> Family<M::Elem> {
    fam.filter(|e| !m.is_zero(e).is_yes()).canonical()
}

fn check_omega_chain<M: KappaMonoid + ?Sized>(
    m: &M,
    cert: &OmegaCertificate<M::Elem>,
    ck: &mut Checker,
) -> Result<(), VerifyOutcome> {
    let mut v = m.zero();
    let labelled = cert
        .prefix
        .iter()
        .enumerate()
        .map(|(k, b)| (format!("prefix block {k}"), b))
        .chain(
            cert.cycle
                .iter()
                .enumerate()
                .map(|(k, b)| (format!("cycle block {k}"), b)),
        );
    for (label, b) in labelled {
        if b.iblock.has_infinite_multiplicity() || b.jblock.has_infinite_multiplicity() {
            return Err(VerifyOutcome::Invalid(format!("{label} is infinite")));
        }
        for (name, e) in [("u", &b.u), ("v'", &b.v_next)] {
            ck.expect(m.contains(e), || format!("{label}: {name}={e} is not an element"))?;
        }
        let si = sum_of(m, &b.iblock, &label)?;
        let sj = sum_of(m, &b.jblock, &label)?;
        let lhs = m.add(&v, &b.u);
        ck.expect(m.equal(&si, &lhs), || {
            format!("{label}: i-sum {si} differs from v + u = {lhs}")
        })?;
        let rhs = m.add(&b.v_next, &b.u);
        ck.expect(m.equal(&sj, &rhs), || {
            format!("{label}: j-sum {sj} differs from v' + u = {rhs}")
        })?;
        v = b.v_next.clone();
    }
    let entry = cert.prefix.last().map(|b| b.v_next.clone()).unwrap_or_else(|| m.zero());
    match cert.cycle.last() {
        Some(last) => ck.expect(m.equal(&last.v_next, &entry), || {
            format!("cycle seam: {} differs from {entry}", last.v_next)
        }),
        None => ck.expect(m.is_zero(&entry), || {
            format!("the last link {entry} is not zero before the empty tail")
        }),
    }
}

/// The families a certificate uses up on the `x` and `y` sides.
type Consumption<E> = (Family<E>, Family<E>);

/// What an omega certificate consumes on each side.
pub(crate) fn omega_consumption<M: KappaMonoid + ?Sized>(
    m: &M,
    cert: &OmegaCertificate<M::Elem>,
) -> Consumption<M::Elem> {
    let side = |blocks: Vec<(&Family<M::Elem>, bool)>| {
        let mut fam = Family::new();
        for (block, cycling) in blocks {
            if cycling {
                for (e, _) in block.entries() {
                    fam.push(e.clone(), ExtCard::aleph0());
                }
            } else {
                fam.extend(block);
            }
        }
        nonzero(m, &fam)
    };
    let tagged = |pick: fn(&BraidBlock<M::Elem>) -> &Family<M::Elem>| {
        let prefix = cert.prefix.iter().map(|b| (pick(b), false));
        prefix
            .chain(cert.cycle.iter().map(|b| (pick(b), true)))
            .collect::<Vec<_>>()
    };
    (side(tagged(|b| &b.iblock)), side(tagged(|b| &b.jblock)))
}

fn compare_consumption<M: KappaMonoid + ?Sized>(
    m: &M,
    x: &Family<M::Elem>,
    y: &Family<M::Elem>,
    used: Consumption<M::Elem>,
) -> Result<(), VerifyOutcome> {
    for (side, fam, got) in [("x", x, used.0), ("y", y, used.1)] {
        let want = nonzero(m, fam);
        if got != want {
            return Err(VerifyOutcome::Invalid(format!(
                "{side}-consumption {got} differs from the family {want}"
            )));
        }
    }
    Ok(())
}

fn verify_omega<M: KappaMonoid + ?Sized>(
    m: &M,
    cert: &OmegaCertificate<M::Elem>,
    ck: &mut Checker,
) -> Result<Consumption<M::Elem>, VerifyOutcome> {
    check_omega_chain(m, cert, ck)?;
    Ok(omega_consumption(m, cert))
}

fn verify_layered<M: KappaMonoid + ?Sized>(
    m: &M,
    cert: &LayeredCertificate<M::Elem>,
    ck: &mut Checker,
) -> Result<Consumption<M::Elem>, VerifyOutcome> {
    let (mut fx, mut fy) = (Family::new(), Family::new());
    for (k, (w, layer)) in cert.layers.iter().enumerate() {
        if w.is_zero() {
            return Err(VerifyOutcome::Invalid(format!("layer {k} has weight 0")));
        }
        let (cx, cy) = verify_omega(m, layer, ck).map_err(|e| prefix_reason(e, &format!("layer {k}")))?;
        fx.extend(&cx.scaled(w));
        fy.extend(&cy.scaled(w));
    }
    Ok((fx.canonical(), fy.canonical()))
}

fn verify_collapsed<M: KappaMonoid + ?Sized>(
    m: &M,
    cert: &CollapsedCertificate<M::Elem>,
    lambda: &ExtCard,
    ck: &mut Checker,
) -> Result<Consumption<M::Elem>, VerifyOutcome> {
    let (mut fx, mut fy) = (Family::new(), Family::new());
    for (k, b) in cert.blocks.iter().enumerate() {
        let label = format!("collapsed block {k}");
        if b.weight.is_zero() {
            return Err(VerifyOutcome::Invalid(format!("{label} has weight 0")));
        }
        for fam in [&b.iblock, &b.jblock] {
            let size = m.support_cardinality(fam);
            if size >= *lambda {
                return Err(VerifyOutcome::Invalid(format!(
                    "{label} has {size} indices, not below {lambda}"
                )));
            }
        }
        let si = sum_of(m, &b.iblock, &label)?;
        let sj = sum_of(m, &b.jblock, &label)?;
        ck.expect(m.equal(&si, &sj), || format!("{label}: sums {si} and {sj} differ"))?;
        fx.extend(&b.iblock.scaled(&b.weight));
        fy.extend(&b.jblock.scaled(&b.weight));
    }
    Ok((nonzero(m, &fx), nonzero(m, &fy)))
}

fn prefix_reason(outcome: VerifyOutcome, label: &str) -> VerifyOutcome {
    match outcome {
        VerifyOutcome::Invalid(r) => VerifyOutcome::Invalid(format!("{label}: {r}")),
        VerifyOutcome::Undetermined(r) => VerifyOutcome::Undetermined(format!("{label}: {r}")),
        VerifyOutcome::Valid => VerifyOutcome::Valid,
    }
}

/// Checks that `cert` braids `x` and `y` with blocks of size below `lambda`.
pub fn verify<M: KappaMonoid + ?Sized>(
    m: &M,
    x: &Family<M::Elem>,
    y: &Family<M::Elem>,
    cert: &Certificate<M::Elem>,
    lambda: &ExtCard,
) -> VerifyOutcome {
    if lambda.is_finite() {
        return VerifyOutcome::Invalid(format!("block bound {lambda} is not infinite"));
    }
    let mut ck = Checker::new();
    let used = match cert {
        Certificate::Omega(c) => verify_omega(m, c, &mut ck),
        Certificate::Layered(c) => verify_layered(m, c, &mut ck),
        Certificate::Collapsed(c) => verify_collapsed(m, c, lambda, &mut ck),
    };
    match used.and_then(|used| compare_consumption(m, x, y, used)) {
        Ok(()) => ck.finish(),
        Err(e) => e,
    }
}

/// The two sums a valid braiding forces to agree.
pub fn telescope<M: KappaMonoid + ?Sized>(
    m: &M,
    x: &Family<M::Elem>,
    y: &Family<M::Elem>,
) -> Result<(M::Elem, M::Elem), MonoidError> {
    Ok((m.ksum(x)?, m.ksum(y)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::cert::BraidBlock;
    use crate::free_vectors::{CardVec, VectorMonoid};

    fn n(k: u64) -> ExtCard {
        ExtCard::from(k)
    }

    fn nat() -> VectorMonoid {
        VectorMonoid::free(1, ExtCard::aleph0())
    }

    fn c(k: u64) -> CardVec {
        CardVec::from_u64s(&[k])
    }

    fn block(i: &[(u64, u64)], j: &[(u64, u64)], u: u64, v: u64) -> BraidBlock<CardVec> {
        BraidBlock {
            iblock: i.iter().map(|&(e, m)| (c(e), n(m))).collect(),
            jblock: j.iter().map(|&(e, m)| (c(e), n(m))).collect(),
            u: c(u),
            v_next: c(v),
        }
    }

    fn omega(prefix: Vec<BraidBlock<CardVec>>, cycle: Vec<BraidBlock<CardVec>>) -> Certificate<CardVec> {
        Certificate::Omega(OmegaCertificate { prefix, cycle })
    }

    #[test]
    fn ones_and_twos() {
        let x = Family::singleton(c(1), ExtCard::aleph0());
        let y = Family::singleton(c(2), ExtCard::aleph0());
        let cert = omega(vec![], vec![block(&[(1, 2)], &[(2, 1)], 2, 0)]);
        assert_eq!(verify(&nat(), &x, &y, &cert, &ExtCard::aleph0()), VerifyOutcome::Valid);
        let (a, b) = telescope(&nat(), &x, &y).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn finite_prefix_only() {
        let x = Family::singleton(c(1), n(2));
        let y = Family::singleton(c(2), n(1));
        let cert = omega(vec![block(&[(1, 2)], &[(2, 1)], 2, 0)], vec![]);
        assert!(verify(&nat(), &x, &y, &cert, &ExtCard::aleph0()).is_valid());
    }

    #[test]
    fn consumption_mismatch_is_invalid() {
        let x = Family::singleton(c(1), ExtCard::aleph0());
        let y = Family::singleton(c(3), n(1));
        let cert = omega(vec![], vec![block(&[(1, 3)], &[(3, 1)], 3, 0)]);
        let out = verify(&nat(), &x, &y, &cert, &ExtCard::aleph0());
        assert!(
            matches!(out, VerifyOutcome::Invalid(ref r) if r.contains("consumption")),
            "{out}"
        );
    }

    #[test]
    fn broken_links_are_invalid() {
        let x = Family::singleton(c(1), n(2));
        let y = Family::singleton(c(2), n(1));
        let cert = omega(vec![block(&[(1, 2)], &[(2, 1)], 1, 1)], vec![]);
        assert!(matches!(
            verify(&nat(), &x, &y, &cert, &ExtCard::aleph0()),
            VerifyOutcome::Invalid(_)
        ));
        let seamless = omega(vec![], vec![block(&[(1, 2)], &[(2, 1)], 1, 1)]);
        let x = Family::singleton(c(1), ExtCard::aleph0());
        let y = Family::singleton(c(2), ExtCard::aleph0());
        let out = verify(&nat(), &x, &y, &seamless, &ExtCard::aleph0());
        assert!(matches!(out, VerifyOutcome::Invalid(_)), "{out}");
    }

    #[test]
    fn zeros_are_padding() {
        let x = Family::new().with(c(1), n(2)).with(c(0), ExtCard::aleph0());
        let y = Family::singleton(c(2), n(1));
        let cert = omega(vec![block(&[(1, 2), (0, 5)], &[(2, 1)], 2, 0)], vec![]);
        assert!(verify(&nat(), &x, &y, &cert, &ExtCard::aleph0()).is_valid());
    }

    #[test]
    fn collapsed_blocks_respect_the_bound() {
        let m = VectorMonoid::free(1, ExtCard::aleph_raw(1));
        let x = Family::singleton(c(1), ExtCard::aleph_raw(1));
        let y = Family::singleton(c(2), ExtCard::aleph_raw(1));
        let good = Certificate::Collapsed(CollapsedCertificate {
            blocks: vec![super::super::cert::CollapsedBlock {
                iblock: Family::singleton(c(1), ExtCard::aleph0()),
                jblock: Family::singleton(c(2), ExtCard::aleph0()),
                weight: ExtCard::aleph_raw(1),
            }],
        });
        assert!(verify(&m, &x, &y, &good, &ExtCard::aleph_raw(1)).is_valid());
        let whole = Certificate::Collapsed(CollapsedCertificate {
            blocks: vec![super::super::cert::CollapsedBlock {
                iblock: x.clone(),
                jblock: y.clone(),
                weight: n(1),
            }],
        });
        assert!(!verify(&m, &x, &y, &whole, &ExtCard::aleph_raw(1)).is_valid());
        assert!(verify(&m, &x, &y, &whole, &ExtCard::aleph_raw(2)).is_valid());
    }
}
