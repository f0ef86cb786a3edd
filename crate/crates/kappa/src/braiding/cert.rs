use std::fmt;

use crate::cardinals::ExtCard;
use crate::monoid::Family;

/// One step of a braiding: `sum(iblock) = v + u` and `sum(jblock) = v_next + u`,
/// where `v` is the previous block's `v_next`.
#[derive(Debug, Clone)]
pub struct BraidBlock<E> {
    pub iblock: Family<E>,
    pub jblock: Family<E>,
    pub u: E,
    pub v_next: E,
}

impl<E: Clone + Ord> BraidBlock<E> {
    /// The block with empty index sets and both links equal to `zero`.
    pub fn empty(zero: E) -> Self {
        BraidBlock {
            iblock: Family::new(),
            jblock: Family::new(),
            u: zero.clone(),
            v_next: zero,
        }
    }
}

impl<E: Clone + Ord> PartialEq for BraidBlock<E> {
    fn eq(&self, other: &Self) -> bool {
        self.iblock == other.iblock && self.jblock == other.jblock && self.u == other.u && self.v_next == other.v_next
    }
}

/// A braiding indexed by `omega`: the prefix blocks followed by the cycle
/// repeated forever. With an empty cycle every later block is empty.
#[derive(Debug, Clone)]
pub struct OmegaCertificate<E> {
    pub prefix: Vec<BraidBlock<E>>,
    pub cycle: Vec<BraidBlock<E>>,
}

impl<E: Clone + Ord> OmegaCertificate<E> {
    /// Block number `mu` of the infinite sequence.
    pub fn block_at(&self, mu: usize, zero: &E) -> BraidBlock<E> {
        self.block_ref(mu)
            .cloned()
            .unwrap_or_else(|| BraidBlock::empty(zero.clone()))
    }

    pub(crate) fn block_ref(&self, mu: usize) -> Option<&BraidBlock<E>> {
        let p = self.prefix.len();
        if mu < p {
            Some(&self.prefix[mu])
        } else if self.cycle.is_empty() {
            None
        } else {
            Some(&self.cycle[(mu - p) % self.cycle.len()])
        }
    }

    /// A canonical representative of `mu` such that equal phases start equal tails.
    pub(crate) fn phase(&self, mu: usize) -> usize {
        let p = self.prefix.len();
        match self.cycle.len() {
            _ if mu < p => mu,
            0 => p,
            c => p + (mu - p) % c,
        }
    }
}

impl<E: Clone + Ord> PartialEq for OmegaCertificate<E> {
    fn eq(&self, other: &Self) -> bool {
        self.prefix == other.prefix && self.cycle == other.cycle
    }
}

/// Copies of omega-indexed braidings: layer `(w, c)` stands for `w` copies of `c`.
#[derive(Debug, Clone)]
pub struct LayeredCertificate<E> {
    pub layers: Vec<(ExtCard, OmegaCertificate<E>)>,
}

impl<E: Clone + Ord> PartialEq for LayeredCertificate<E> {
    fn eq(&self, other: &Self) -> bool {
        self.layers == other.layers
    }
}

/// `weight` copies of a pair of blocks with equal sums.
#[derive(Debug, Clone)]
pub struct CollapsedBlock<E> {
    pub iblock: Family<E>,
    pub jblock: Family<E>,
    pub weight: ExtCard,
}

impl<E: Clone + Ord> PartialEq for CollapsedBlock<E> {
    fn eq(&self, other: &Self) -> bool {
        self.iblock == other.iblock && self.jblock == other.jblock && self.weight == other.weight
    }
}

/// A braiding for an uncountable block bound, where blocks simply have equal sums.
#[derive(Debug, Clone)]
pub struct CollapsedCertificate<E> {
    pub blocks: Vec<CollapsedBlock<E>>,
}

impl<E: Clone + Ord> PartialEq for CollapsedCertificate<E> {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

#[derive(Debug, Clone)]
pub enum Certificate<E> {
    Omega(OmegaCertificate<E>),
    Layered(LayeredCertificate<E>),
    Collapsed(CollapsedCertificate<E>),
}

impl<E: Clone + Ord> PartialEq for Certificate<E> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Certificate::Omega(a), Certificate::Omega(b)) => a == b,
            (Certificate::Layered(a), Certificate::Layered(b)) => a == b,
            (Certificate::Collapsed(a), Certificate::Collapsed(b)) => a == b,
            _ => false,
        }
    }
}

impl<E> Certificate<E> {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Omega(_) => "omega",
            Certificate::Layered(_) => "layered",
            Certificate::Collapsed(_) => "collapsed",
        }
    }
}

impl<E: fmt::Display> fmt::Display for BraidBlock<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "B i={} j={} u={} v'={}",
            self.iblock, self.jblock, self.u, self.v_next
        )
    }
}

impl<E: fmt::Display> fmt::Display for OmegaCertificate<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PREFIX")?;
        for b in &self.prefix {
            writeln!(f, "{b}")?;
        }
        write!(f, "CYCLE")?;
        for b in &self.cycle {
            write!(f, "\n{b}")?;
        }
        Ok(())
    }
}

impl<E: fmt::Display> fmt::Display for Certificate<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Omega(c) => write!(f, "{c}"),
            Certificate::Layered(l) => {
                for (k, (w, c)) in l.layers.iter().enumerate() {
                    if k > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "LAYER w={w}\n{c}")?;
                }
                Ok(())
            }
            Certificate::Collapsed(c) => {
                write!(f, "COLLAPSED")?;
                for b in &c.blocks {
                    write!(f, "\nC i={} j={} w={}", b.iblock, b.jblock, b.weight)?;
                }
                Ok(())
            }
        }
    }
}
