//! Dense univariate polynomials over ℚ.
//!
//! Representation: `coeffs[i]` is the coefficient of x^i; the leading
//! coefficient is nonzero unless the polynomial is zero (empty vector).
//! Degrees in this artifact stay small (at most a few hundred), so dense
//! arithmetic with content extraction wins over sparse bookkeeping.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision rational scalar. `BigRational` keeps the exact
/// invariants we need: reduced and with positive denominator.
pub type Rat = BigRational;

/// Shorthand for small rational constants in tests and constructions.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// n/d as an exact rational.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn x() -> Poly {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// c·x^n.
    pub fn monomial(c: Rat, n: usize) -> Poly {
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with deg 0 = −1 by convention.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero-padded beyond the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    /// Monic normalization; returns the removed scalar (leading
    /// coefficient). The zero polynomial is returned unchanged with
    /// scalar 1.
    pub fn monic(&self) -> (Poly, Rat) {
        if self.is_zero() {
            return (Poly::zero(), Rat::one());
        }
        let lc = self.leading_coeff();
        (self.scale(&(Rat::one() / lc.clone())), lc)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat(i as i64 + 1))
                .collect(),
        )
    }

    /// n-th derivative.
    pub fn derivative_n(&self, n: usize) -> Poly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derivative();
        }
        p
    }

    /// The antiderivative q with q' = self and constant term c.
    pub fn antiderivative(&self, c: &Rat) -> Poly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(c.clone());
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs.push(a / rat(i as i64 + 1));
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Composition self(g).
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: self = q·d + r with deg r < deg d.
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.coeffs.clone();
        let dd = d.deg() as usize;
        if (self.deg() as i64) < d.deg() {
            return Ok((Poly::zero(), self.clone()));
        }
        let qlen = self.coeffs.len() - dd;
        let mut q = vec![Rat::zero(); qlen];
        let lc = d.leading_coeff();
        for k in (0..qlen).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    r[k + i] = &r[k + i] - &t;
                }
            }
            q[k] = c;
        }
        Ok((Poly::from_coeffs(q), Poly::from_coeffs(r)))
    }

    /// Division that must be exact; a nonzero remainder is an error.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divmod(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd. Works on content-free integer images to keep the
    /// Euclidean remainders small.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive_part_z();
        let mut b = other.primitive_part_z();
        if a.is_zero() {
            return Poly::from_zpoly(&b).monic().0;
        }
        while !b.is_zero() {
            let r = a.prem(&b).primitive();
            a = b;
            b = r;
        }
        Poly::from_zpoly(&a).monic().0
    }

    /// Extended gcd over ℚ: returns (g, u, v) with u·self + v·other = g,
    /// g monic (or zero).
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let (mut u0, mut u1) = (Poly::one(), Poly::zero());
        let (mut v0, mut v1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            r0 = r1;
            r1 = r;
            let nu = &u0 - &(&q * &u1);
            u0 = u1;
            u1 = nu;
            let nv = &v0 - &(&q * &v1);
            v0 = v1;
            v1 = nv;
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let (g, lc) = r0.monic();
        let inv = Rat::one() / lc;
        (g, u0.scale(&inv), v0.scale(&inv))
    }

    /// Squarefree part self/gcd(self, self'), monic.
    pub fn squarefree_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic().0
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_one()
    }

    /// Yun squarefree decomposition: self = lc·∏ qᵢ^i with the qᵢ monic,
    /// squarefree and pairwise coprime. Returns the (qᵢ, i) with qᵢ ≠ 1.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic().0;
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = fp.exact_div(&a).expect("gcd divides");
        let mut i = 1;
        loop {
            let d = &c - &b.derivative();
            if d.is_zero() {
                if !b.is_one() {
                    out.push((b, i));
                }
                break;
            }
            a = b.gcd(&d);
            if !a.is_one() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            i += 1;
        }
        out
    }

    /// Multiplicity of the squarefree factor q in self (largest e with
    /// q^e | self).
    pub fn multiplicity_of(&self, q: &Poly) -> usize {
        if q.is_constant() || self.is_zero() {
            return 0;
        }
        let mut e = 0;
        let mut rest = self.clone();
        loop {
            match rest.divmod(q) {
                Ok((quot, rem)) if rem.is_zero() => {
                    e += 1;
                    rest = quot;
                }
                _ => return e,
            }
        }
    }

    /// Content c and primitive integer image with self = c·image.
    pub fn primitive_part_z(&self) -> ZPoly {
        let (_, z) = self.to_zpoly();
        z.primitive()
    }

    /// Scale to integer coefficients: self = c·z with z ∈ ℤ[x].
    pub fn to_zpoly(&self) -> (Rat, ZPoly) {
        if self.is_zero() {
            return (Rat::one(), ZPoly::zero());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
        (
            Rat::new(BigInt::one(), den),
            ZPoly { coeffs: ints },
        )
    }

    pub fn from_zpoly(z: &ZPoly) -> Poly {
        Poly::from_coeffs(z.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text form: descending powers, exact rationals, `*` for
/// products, e.g. `x^3 - 2*x + 5/3`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_mag = mag.is_one();
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !unit_mag {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Integer polynomial used internally by the fraction-free determinant
/// and gcd routines. Not part of the public surface.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZPoly {
    pub(crate) coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub(crate) fn zero() -> ZPoly {
        ZPoly { coeffs: Vec::new() }
    }

    pub(crate) fn one() -> ZPoly {
        ZPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub(crate) fn from_coeffs(mut coeffs: Vec<BigInt>) -> ZPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub(crate) fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub(crate) fn mul(&self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(coeffs)
    }

    pub(crate) fn sub(&self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = rhs.coeffs.get(i).unwrap_or(&zero);
            coeffs.push(a - b);
        }
        ZPoly::from_coeffs(coeffs)
    }

    /// Exact division in ℤ[x]; panics if not exact (used only where the
    /// Sylvester identity guarantees exactness).
    pub(crate) fn exact_div(&self, d: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        assert!(!d.is_zero(), "division by zero");
        let dd = d.deg() as usize;
        let mut r = self.coeffs.clone();
        let qlen = self.coeffs.len() - dd;
        let mut q = vec![BigInt::zero(); qlen];
        let lc = d.leading();
        for k in (0..qlen).rev() {
            let (c, rem) = r[k + dd].div_rem(&lc);
            assert!(rem.is_zero(), "inexact integer polynomial division");
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    r[k + i] = &r[k + i] - &t;
                }
            }
            q[k] = c;
        }
        assert!(r.iter().all(|c| c.is_zero()), "inexact integer polynomial division");
        ZPoly::from_coeffs(q)
    }

    /// Pseudo-remainder of self by d (both nonzero), as used by the
    /// primitive Euclidean gcd.
    pub(crate) fn prem(&self, d: &ZPoly) -> ZPoly {
        let mut r = self.clone();
        let dd = d.deg();
        let lc = d.leading();
        while !r.is_zero() && r.deg() >= dd {
            let shift = (r.deg() - dd) as usize;
            let rl = r.leading();
            // r <- lc·r − rl·x^shift·d
            let mut scaled = vec![BigInt::zero(); shift];
            scaled.extend(d.coeffs.iter().map(|c| c * &rl));
            let lr = ZPoly::from_coeffs(r.coeffs.iter().map(|c| c * &lc).collect());
            r = lr.sub(&ZPoly::from_coeffs(scaled));
        }
        r
    }

    /// Divide out the integer content and normalize the sign of the
    /// leading coefficient.
    pub(crate) fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.leading().is_negative() {
            g = -g;
        }
        ZPoly::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_i64s(cs)
    }

    #[test]
    fn test_divmod_basic() {
        // (x^3 - 1) = (x - 1)(x^2 + x + 1)
        let a = p(&[-1, 0, 0, 1]);
        let d = p(&[-1, 1]);
        let (q, r) = a.divmod(&d).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn test_exact_div_rejects_remainder() {
        let a = p(&[1, 0, 1]);
        let d = p(&[0, 1]);
        assert_eq!(a.exact_div(&d), Err(Error::InexactDivision));
    }

    #[test]
    fn test_gcd_common_factor() {
        // gcd(x^2 - 1, x^2 - 2x + 1) = x - 1
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, -2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn test_xgcd_bezout() {
        let a = p(&[2, 0, 1, 3]);
        let b = p(&[-1, 1, 1]);
        let (g, u, v) = a.xgcd(&b);
        assert_eq!(&(&u * &a) + &(&v * &b), g);
    }

    #[test]
    fn test_antiderivative_examples() {
        // (1, 0) -> x
        assert_eq!(p(&[1]).antiderivative(&Rat::zero()), p(&[0, 1]));
        // (x^2, 0) -> x^3/3
        assert_eq!(
            p(&[0, 0, 1]).antiderivative(&Rat::zero()),
            Poly::from_coeffs(vec![Rat::zero(), Rat::zero(), Rat::zero(), ratio(1, 3)])
        );
        // (3x^2 - 2x, 5) -> x^3 - x^2 + 5, confirmed by differentiating
        let q = p(&[0, -2, 3]).antiderivative(&rat(5));
        assert_eq!(q, p(&[5, 0, -1, 1]));
        assert_eq!(q.derivative(), p(&[0, -2, 3]));
    }

    #[test]
    fn test_squarefree_decomposition() {
        // x^2(x-1)^2 -> [(x(x-1), 2)]
        let f = &p(&[0, 0, 1]) * &p(&[1, -2, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[0, -1, 1]), 2)]);
        // x^3 (x+2) -> [(x+2,1), (x,3)]
        let f = &p(&[0, 0, 0, 1]) * &p(&[2, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[2, 1]), 1), (p(&[0, 1]), 3)]);
    }

    #[test]
    fn test_compose() {
        // (x^2 + 1)(x - 1) = x^2 - 2x + 2
        let f = p(&[1, 0, 1]);
        let g = p(&[-1, 1]);
        assert_eq!(f.compose(&g), p(&[2, -2, 1]));
    }

    #[test]
    fn test_display_canonical() {
        let f = Poly::from_coeffs(vec![ratio(5, 3), rat(-2), Rat::zero(), Rat::zero(), ratio(3, 2)]);
        assert_eq!(f.to_string(), "3/2*x^4 - 2*x + 5/3");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p(&[0, 1]).to_string(), "x");
    }

    #[test]
    fn test_multiplicity() {
        let f = &p(&[0, 0, 1]) * &p(&[1, 1]); // x^2 (x+1)
        assert_eq!(f.multiplicity_of(&p(&[0, 1])), 2);
        assert_eq!(f.multiplicity_of(&p(&[1, 1])), 1);
        assert_eq!(f.multiplicity_of(&p(&[2, 1])), 0);
    }
}
