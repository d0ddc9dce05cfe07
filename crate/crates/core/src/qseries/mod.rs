//! Truncated `q`-series: Euler-type products, coset theta series and the
//! graded dimensions of all irreducible `V_L^+`-modules.
//!
//! Weights are true `L(0)`-weights; there is no `q^{-c/24}` factor.

mod series;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{enumerate_coset_vectors, rat, DualVector, EvenLattice, Rational};
use crate::sectors::{ModuleLabel, SectorRegistry, Sign};

pub use series::{pretty, QSeries};

/// Which infinite product to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Product {
    /// `Π_{n≥1} (1 - q^n)^{-d}`
    Minus,
    /// `Π_{n≥1} (1 + q^n)^{-d}`
    Plus,
    /// `Π_{n≥1} (1 - q^{n-1/2})^{-d}`
    HalfMinus,
    /// `Π_{n≥1} (1 + q^{n-1/2})^{-d}`
    HalfPlus,
}

/// Expands one of the four products to order `n` (exponents `< n`).
pub fn euler_product_inv(d: u32, n: u32, kind: Product) -> QSeries {
    let half = matches!(kind, Product::HalfMinus | Product::HalfPlus);
    let denom: i64 = if half { 2 } else { 1 };
    let len = (n as usize) * denom as usize;
    let mut a = vec![BigInt::zero(); len.max(1)];
    a[0] = BigInt::from(1);
    // factor exponents in units of 1/denom
    let steps = (1..).map(|k| if half { 2 * k - 1 } else { k }).take_while(|&s| s < len);
    let plus = matches!(kind, Product::Plus | Product::HalfPlus);
    for s in steps {
        for _ in 0..d {
            // multiply by (1 ∓ t^s)^{-1} = Σ (±t^s)^j
            for m in s..len {
                let prev = a[m - s].clone();
                if plus {
                    a[m] -= prev;
                } else {
                    a[m] += prev;
                }
            }
        }
    }
    QSeries::from_dense(denom, &rat(n as i64, 1), a.into_iter().take(len).map(Rational::from_integer))
}

/// `lcm(16, 2 det G)`: every weight of every irreducible module is a
/// multiple of `1/D`.
pub fn series_denominator(lattice: &EvenLattice) -> i64 {
    let two_det = (lattice.det() * 2u32).to_i64().expect("determinant fits in i64");
    16i64.lcm(&two_det)
}

/// `θ_{λ+L} = Σ_{v ∈ λ+L} q^{(v,v)/2}`, exponents below `n`.
pub fn theta_coset(lattice: &EvenLattice, lambda: &DualVector, n: u32) -> Result<QSeries> {
    lattice.check_dual(lambda)?;
    let denom = series_denominator(lattice);
    let order = rat(n as i64, 1);
    let bound = rat(2 * n as i64, 1);
    let mut s = QSeries::zero(denom, &order);
    for v in enumerate_coset_vectors(lattice, lambda, &bound)? {
        let w = lattice.norm(&v) / rat(2, 1);
        if w < order {
            s.add_term(&w, Rational::from_integer(1.into()));
        }
    }
    Ok(s)
}

fn check_order(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::BadOrder)
    } else {
        Ok(())
    }
}

/// Graded dimension of an irreducible module, exponents below `n`.
pub fn character(reg: &SectorRegistry, label: &ModuleLabel, n: u32) -> Result<QSeries> {
    check_order(n)?;
    if !reg.contains(label) {
        return Err(Error::UnknownLabel(label.to_string()));
    }
    let lattice = reg.lattice();
    let d = lattice.rank() as u32;
    let denom = series_denominator(lattice);
    let order = rat(n as i64, 1);
    let half = rat(1, 2);
    let phi_inv = euler_product_inv(d, n, Product::Minus);
    let out = match label {
        ModuleLabel::VacPlus | ModuleLabel::VacMinus => {
            let theta = theta_coset(lattice, &DualVector::zero(d as usize), n)?;
            let one = QSeries::one(denom, &order);
            let lattice_part = (&(&theta - &one) * &phi_inv).scale(&half);
            let psi_inv = euler_product_inv(d, n, Product::Plus);
            let heis = if label == &ModuleLabel::VacPlus {
                &phi_inv + &psi_inv
            } else {
                &phi_inv - &psi_inv
            };
            &lattice_part + &heis.scale(&half)
        }
        ModuleLabel::Untw(v) => &theta_coset(lattice, v, n)? * &phi_inv,
        ModuleLabel::CosetPM(v, _) => (&theta_coset(lattice, v, n)? * &phi_inv).scale(&half),
        ModuleLabel::TwistedPM(_, sign) => twisted_character(d, reg.dim_t(), *sign, n),
    };
    Ok(out.rescale(denom.lcm(&out.denom())).truncate(&order))
}

/// `dim T · q^{d/16} · ½(Π(1-q^{n-1/2})^{-d} ± Π(1+q^{n-1/2})^{-d})`.
pub fn twisted_character(d: u32, dim_t: u64, sign: Sign, n: u32) -> QSeries {
    let order = rat(n as i64, 1);
    let minus = euler_product_inv(d, n, Product::HalfMinus);
    let plus = euler_product_inv(d, n, Product::HalfPlus);
    let combo = match sign {
        Sign::Plus => &minus + &plus,
        Sign::Minus => &minus - &plus,
    };
    combo
        .rescale(16)
        .scale(&(rat(dim_t as i64, 2)))
        .shift(&rat(d as i64, 16))
        .truncate(&order)
}
