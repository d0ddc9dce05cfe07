use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::lattice::{rat, Rational};

/// A truncated series `Σ c_e q^e` with exponents in `(1/D)Z`.
///
/// Only exponents strictly below the order are kept; coefficients beyond the
/// order are unknown, not zero.
#[derive(Clone, Debug)]
pub struct QSeries {
    denom: i64,
    order: i64,
    coeffs: BTreeMap<i64, Rational>,
}

impl QSeries {
    /// The zero series with exponents in `(1/denom)Z`, known below `order`.
    pub fn zero(denom: i64, order: &Rational) -> Self {
        assert!(denom > 0, "denominator must be positive");
        QSeries { denom, order: to_num(order, denom), coeffs: BTreeMap::new() }
    }

    pub fn one(denom: i64, order: &Rational) -> Self {
        Self::monomial(denom, order, &Rational::zero(), Rational::one())
    }

    pub fn monomial(denom: i64, order: &Rational, exp: &Rational, coeff: Rational) -> Self {
        let mut s = Self::zero(denom, order);
        s.add_term(exp, coeff);
        s
    }

    /// Builds a series from dense coefficients: `coeffs[k]` multiplies
    /// `q^{k/denom}`.
    pub fn from_dense(denom: i64, order: &Rational, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut s = Self::zero(denom, order);
        for (k, c) in coeffs.into_iter().enumerate() {
            if (k as i64) < s.order && !c.is_zero() {
                s.coeffs.insert(k as i64, c);
            }
        }
        s
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn order(&self) -> Rational {
        rat(self.order, self.denom)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c q^e` in place; terms at or beyond the order are dropped.
    pub fn add_term(&mut self, exp: &Rational, c: Rational) {
        let k = to_num(exp, self.denom);
        if k >= self.order || c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, exp: &Rational) -> Rational {
        let scaled = exp * Rational::from_integer(self.denom.into());
        if !scaled.is_integer() {
            return Rational::zero();
        }
        let k = scaled.to_integer().to_i64().expect("exponent fits in i64");
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Rational)> + '_ {
        self.coeffs.iter().map(move |(k, c)| (rat(*k, self.denom), c))
    }

    /// Lowest nonzero term.
    pub fn leading_term(&self) -> Option<(Rational, Rational)> {
        self.coeffs.iter().next().map(|(k, c)| (rat(*k, self.denom), c.clone()))
    }

    /// Same series with exponents in `(1/denom)Z`; `denom` must be a multiple
    /// of the current one.
    pub fn rescale(&self, denom: i64) -> QSeries {
        assert!(denom % self.denom == 0, "new denominator must be a multiple");
        let f = denom / self.denom;
        QSeries {
            denom,
            order: self.order * f,
            coeffs: self.coeffs.iter().map(|(k, c)| (k * f, c.clone())).collect(),
        }
    }

    /// Drops every term with exponent `≥ order`.
    pub fn truncate(&self, order: &Rational) -> QSeries {
        let n = to_num(order, self.denom).min(self.order);
        QSeries {
            denom: self.denom,
            order: n,
            coeffs: self.coeffs.range(..n).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        if c.is_zero() {
            return QSeries { denom: self.denom, order: self.order, coeffs: BTreeMap::new() };
        }
        QSeries {
            denom: self.denom,
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `q^e`; the known range moves with it.
    pub fn shift(&self, exp: &Rational) -> QSeries {
        let e = to_num(exp, self.denom);
        QSeries {
            denom: self.denom,
            order: self.order + e,
            coeffs: self.coeffs.iter().map(|(k, v)| (k + e, v.clone())).collect(),
        }
    }

    fn aligned(a: &QSeries, b: &QSeries) -> (QSeries, QSeries) {
        let d = a.denom.lcm(&b.denom);
        (a.rescale(d), b.rescale(d))
    }
}

fn to_num(x: &Rational, denom: i64) -> i64 {
    let scaled = x * Rational::from_integer(denom.into());
    assert!(scaled.is_integer(), "exponent {} is not a multiple of 1/{}", x, denom);
    scaled.to_integer().to_i64().expect("exponent fits in i64")
}

impl PartialEq for QSeries {
    /// Equal when the known ranges agree and so do all known coefficients.
    fn eq(&self, other: &QSeries) -> bool {
        let (a, b) = QSeries::aligned(self, other);
        a.order == b.order && a.coeffs == b.coeffs
    }
}

impl Eq for QSeries {}

impl Add for &QSeries {
    type Output = QSeries;

    fn add(self, rhs: &QSeries) -> QSeries {
        let (a, b) = QSeries::aligned(self, rhs);
        let order = a.order.min(b.order);
        let mut out = a.truncate(&rat(order, a.denom));
        for (k, c) in b.coeffs.range(..order) {
            let e = out.coeffs.entry(*k).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.coeffs.remove(k);
            }
        }
        out
    }
}

impl Neg for &QSeries {
    type Output = QSeries;

    fn neg(self) -> QSeries {
        self.scale(&-Rational::one())
    }
}

impl Sub for &QSeries {
    type Output = QSeries;

    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &(-rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    /// Truncated at the smaller operand order, or earlier when a negative
    /// lowest exponent limits what is known.
    fn mul(self, rhs: &QSeries) -> QSeries {
        let (a, b) = QSeries::aligned(self, rhs);
        let lo_a = a.coeffs.keys().next().copied().unwrap_or(a.order);
        let lo_b = b.coeffs.keys().next().copied().unwrap_or(b.order);
        let order = a.order.min(b.order).min(lo_a + b.order).min(lo_b + a.order);
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (i, x) in &a.coeffs {
            for (j, y) in &b.coeffs {
                let k = i + j;
                if k >= order {
                    break;
                }
                let e = coeffs.entry(k).or_insert_with(Rational::zero);
                *e += x * y;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        QSeries { denom: a.denom, order, coeffs }
    }
}

impl fmt::Display for QSeries {
    /// One `exponent<TAB>coefficient` line per nonzero term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in self.terms() {
            writeln!(f, "{}\t{}", e, c)?;
        }
        Ok(())
    }
}

/// `Σ c_e q^e` to a compact human form such as `1 + 2q^(1/4)`.
pub fn pretty(s: &QSeries) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in s.terms().enumerate() {
        let neg = c.is_negative();
        if i > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        let a = c.abs();
        let mono = if e.is_zero() {
            String::new()
        } else if e.is_one() {
            "q".to_string()
        } else if e.is_integer() {
            format!("q^{}", e)
        } else {
            format!("q^({})", e)
        };
        if mono.is_empty() || !a.is_one() {
            out.push_str(&a.to_string());
        }
        out.push_str(&mono);
    }
    out
}
