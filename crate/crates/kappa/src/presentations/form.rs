use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::cardinals::ExtCard;

/// A coefficient of a form: a natural number or `aleph0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coef {
    Fin(u64),
    Inf,
}

impl Coef {
    pub const ZERO: Coef = Coef::Fin(0);
    pub const ONE: Coef = Coef::Fin(1);

    pub fn is_zero(self) -> bool {
        self == Coef::ZERO
    }

    pub fn is_inf(self) -> bool {
        self == Coef::Inf
    }

    pub fn value(self) -> Option<u64> {
        match self {
            Coef::Fin(v) => Some(v),
            Coef::Inf => None,
        }
    }

    pub fn to_card(self) -> ExtCard {
        match self {
            Coef::Fin(v) => ExtCard::from(v),
            Coef::Inf => ExtCard::aleph0(),
        }
    }

    /// The coefficient of a cardinal, with every infinite cardinal read as `aleph0`.
    pub fn saturating_from_card(c: &ExtCard) -> Coef {
        c.to_u64().map_or(Coef::Inf, Coef::Fin)
    }

    /// The smallest `t` with `other + t = self`, if there is one.
    pub(crate) fn minus(self, other: Coef) -> Option<Coef> {
        match (self, other) {
            (Coef::Fin(a), Coef::Fin(b)) => a.checked_sub(b).map(Coef::Fin),
            (Coef::Inf, Coef::Fin(_)) => Some(Coef::Inf),
            (Coef::Inf, Coef::Inf) => Some(Coef::ZERO),
            (Coef::Fin(_), Coef::Inf) => None,
        }
    }
}

impl From<u64> for Coef {
    fn from(v: u64) -> Self {
        Coef::Fin(v)
    }
}

impl Add for Coef {
    type Output = Coef;
    fn add(self, rhs: Coef) -> Coef {
        match (self, rhs) {
            (Coef::Fin(a), Coef::Fin(b)) => Coef::Fin(a.saturating_add(b)),
            _ => Coef::Inf,
        }
    }
}

impl Mul for Coef {
    type Output = Coef;
    fn mul(self, rhs: Coef) -> Coef {
        match (self, rhs) {
            (Coef::Fin(0), _) | (_, Coef::Fin(0)) => Coef::ZERO,
            (Coef::Fin(a), Coef::Fin(b)) => Coef::Fin(a.saturating_mul(b)),
            _ => Coef::Inf,
        }
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Fin(v) => write!(f, "{v}"),
            Coef::Inf => f.write_str("aleph0"),
        }
    }
}

impl fmt::Debug for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Coef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let c: ExtCard = s.trim().parse().map_err(|e| format!("{e}"))?;
        if c.is_infinite() && c != ExtCard::aleph0() {
            return Err(format!("coefficient {c} exceeds aleph0"));
        }
        if c.is_finite() && c.to_u64().is_none() {
            return Err(format!("coefficient {c} is too large"));
        }
        Ok(Coef::saturating_from_card(&c))
    }
}

/// A representation `a X1 + b X2` of an element of a two-generated monoid.
///
/// Forms add coordinatewise; the form is infinite when either coefficient is.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Form {
    pub a: Coef,
    pub b: Coef,
}

impl Form {
    pub const ZERO: Form = Form {
        a: Coef::ZERO,
        b: Coef::ZERO,
    };
    pub const X1: Form = Form {
        a: Coef::ONE,
        b: Coef::ZERO,
    };
    pub const X2: Form = Form {
        a: Coef::ZERO,
        b: Coef::ONE,
    };
    pub const TOP: Form = Form {
        a: Coef::Inf,
        b: Coef::Inf,
    };

    pub fn new(a: Coef, b: Coef) -> Self {
        Form { a, b }
    }

    pub fn finite(a: u64, b: u64) -> Self {
        Form::new(Coef::Fin(a), Coef::Fin(b))
    }

    pub fn is_infinite(&self) -> bool {
        self.a.is_inf() || self.b.is_inf()
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn is_zero(&self) -> bool {
        *self == Form::ZERO
    }

    pub fn coords(&self) -> [Coef; 2] {
        [self.a, self.b]
    }

    pub fn from_coords(c: [Coef; 2]) -> Self {
        Form::new(c[0], c[1])
    }

    pub fn swapped(&self) -> Form {
        Form::new(self.b, self.a)
    }

    pub fn scale(&self, k: Coef) -> Form {
        Form::new(self.a * k, self.b * k)
    }

    /// Coordinatewise comparison, the order of the free monoid on two generators.
    pub fn dominated_by(&self, other: &Form) -> bool {
        self.a <= other.a && self.b <= other.b
    }

    /// The form `t` with `self = other + t`, when `other <= self`.
    pub fn remainder(&self, other: &Form) -> Option<Form> {
        Some(Form::new(self.a.minus(other.a)?, self.b.minus(other.b)?))
    }

    /// Largest finite coefficient.
    pub fn finite_size(&self) -> u64 {
        self.coords().iter().filter_map(|c| c.value()).max().unwrap_or(0)
    }

    /// Renders the form as `a*X1 + b*X2`, omitting zero terms.
    pub fn linear(&self) -> String {
        let terms: Vec<String> = [(self.a, "X1"), (self.b, "X2")]
            .iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, x)| format!("{c}*{x}"))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

impl Add for Form {
    type Output = Form;
    fn add(self, rhs: Form) -> Form {
        Form::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Form {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("expected a form `(a, b)`, found `{}`", s.trim()))?;
        match inner.split(',').collect::<Vec<_>>().as_slice() {
            [a, b] => Ok(Form::new(a.parse()?, b.parse()?)),
            _ => Err(format!("a form has two coefficients, found `{}`", s.trim())),
        }
    }
}
