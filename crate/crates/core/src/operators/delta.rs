//! The Δ(s,λ) determinant criterion, computed two independent ways.
//!
//! Route 1 ([`delta_from_coeffs`]): the (2m+1)×(2m+1) lower-Hessenberg
//! determinant with first column a₋₁, a₀(λ), …, a_{2m−1}(λ) and
//! superdiagonal j·(2m+1−j), evaluated by the Hessenberg recurrence —
//! additions and multiplications only, so it never splits a class.
//!
//! Route 2 ([`delta_rec_from_coeffs`]): the elimination recursion
//! p_{l+1} = a_l(λ) − Σⱼ a_{j−1}(λ)p_{l−j}/((l−j+1)(2m−l+j)), whose
//! final value satisfies p_{2m} = (−1)^{2m}((2m)!)⁻²·Δ.
//!
//! Both are polynomials in λ over the pole class's quotient ring.

use super::local::LocalDatum;
use crate::error::{Error, Result};
use crate::exactalg::{laurent_expand, rat, ratio, Poly, QrElem, QrPoly, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::SchrodingerOp;

/// Δ(s,λ) as a polynomial in λ with coefficients in ℚ[t]/(class).
#[derive(Clone, Debug)]
pub struct DeltaPoly {
    pub class: Poly,
    pub coeffs: QrPoly,
}

impl DeltaPoly {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn lambda_degree(&self) -> i64 {
        self.coeffs.deg()
    }

    pub fn leading(&self) -> QrElem {
        let d = self.coeffs.deg();
        if d < 0 {
            QrElem::zero(&self.class)
        } else {
            self.coeffs.coeff(d as usize)
        }
    }
}

/// a_{j}(s,λ) for j = −1 … 2m−1 as λ-linear quotient-ring polynomials:
/// a_j(λ) = a_j(s,0) + λ·(j-th Taylor coefficient of P at s).
/// Index k of the returned vector holds a_{k−1}.
pub fn lambda_coefficients(op: &SchrodingerOp, datum: &LocalDatum) -> Result<Vec<QrPoly>> {
    let two_m = datum.two_m as i64;
    let slice = laurent_expand(op.u(), &datum.class, two_m - 1)?;
    let p_shift = QrPoly::shift_to_class(op.p(), &datum.class);
    let mut out = Vec::with_capacity(two_m as usize + 1);
    for j in -1..two_m {
        let constant = slice.a(j);
        let coeffs = if j >= 0 {
            vec![constant, p_shift.coeff(j as usize)]
        } else {
            vec![constant]
        };
        out.push(QrPoly::from_coeffs(coeffs, &datum.class));
    }
    Ok(out)
}

/// Hessenberg-recurrence determinant. `a_lambda[k]` holds a_{k−1}(λ);
/// the slice length must be 2m+1.
pub fn delta_from_coeffs(two_m: u64, a_lambda: &[QrPoly], class: &Poly) -> DeltaPoly {
    let n = two_m as usize + 1;
    assert_eq!(a_lambda.len(), n, "need a_-1 .. a_{{2m-1}}");
    // entry (r, c) for c ≤ r is a_{r−c−1}(λ); superdiagonal b_l = (l+1)(2m−l)
    let entry = |r: usize, c: usize| -> &QrPoly { &a_lambda[r - c] };
    let superdiag =
        |l: usize| -> Rat { rat((l as i64 + 1) * (two_m as i64 - l as i64)) };

    let mut dets: Vec<QrPoly> = Vec::with_capacity(n + 1);
    dets.push(QrPoly::from_coeffs(vec![QrElem::one(class)], class)); // D_0 = 1
    for k in 1..=n {
        // expand along row k−1
        let mut acc = entry(k - 1, k - 1).mul(&dets[k - 1]);
        let mut beta = Rat::one();
        for i in (0..k - 1).rev() {
            beta = beta * superdiag(i);
            let term = entry(k - 1, i).mul(&dets[i]).scale_rat(&beta);
            if (k - 1 - i) % 2 == 1 {
                acc = acc.sub(&term);
            } else {
                acc = acc.add(&term);
            }
        }
        dets.push(acc);
    }
    DeltaPoly {
        class: class.clone(),
        coeffs: dets[n].clone(),
    }
}

/// The elimination recursion: returns p_{2m}(s,λ), which equals
/// (−1)^{2m}((2m)!)⁻²·Δ(s,λ). Division only by the rational constants
/// (l−j+1)(2m−l+j), nonzero for every genuine half-integer m > 0.
pub fn delta_rec_from_coeffs(
    two_m: u64,
    a_lambda: &[QrPoly],
    class: &Poly,
) -> Result<DeltaPoly> {
    let n = two_m as i64;
    assert_eq!(a_lambda.len(), n as usize + 1);
    let a = |j: i64| -> &QrPoly { &a_lambda[(j + 1) as usize] };
    let mut p: Vec<QrPoly> = vec![a(-1).clone()];
    for l in 0..n {
        let mut acc = a(l).clone();
        for j in 0..=l {
            let denom = (l - j + 1) * (n - l + j);
            if denom == 0 {
                return Err(Error::DivisionByZeroInRecursion);
            }
            let term = a(j - 1).mul(&p[(l - j) as usize]).scale_rat(&ratio(1, denom));
            acc = acc.sub(&term);
        }
        p.push(acc);
    }
    Ok(DeltaPoly {
        class: class.clone(),
        coeffs: p[n as usize].clone(),
    })
}

/// (−1)^{2m}·((2m)!)², the exact scalar with Δ = delta_scalar·p_{2m}.
pub fn delta_scalar(two_m: u64) -> Rat {
    let f = factorial(two_m);
    let sq = Rat::from_integer(&f * &f);
    if two_m % 2 == 1 {
        -sq
    } else {
        sq
    }
}

/// Δ(s,λ) at a pole class by the Hessenberg determinant.
pub fn delta_poly(op: &SchrodingerOp, datum: &LocalDatum) -> Result<DeltaPoly> {
    let coeffs = lambda_coefficients(op, datum)?;
    let d = delta_from_coeffs(datum.two_m, &coeffs, &datum.class);
    debug_assert!(d.lambda_degree() <= lambda_degree_bound(datum.two_m));
    Ok(d)
}

/// Δ-rescaled elimination route p_{2m}, for cross-checking
/// [`delta_poly`].
pub fn delta_poly_rec(op: &SchrodingerOp, datum: &LocalDatum) -> Result<DeltaPoly> {
    let coeffs = lambda_coefficients(op, datum)?;
    delta_rec_from_coeffs(datum.two_m, &coeffs, &datum.class)
}

/// Upper bound on deg_λ Δ: m for integer m, m + ½ for half-integer m.
pub fn lambda_degree_bound(two_m: u64) -> i64 {
    ((two_m + 1) / 2) as i64
}

pub fn factorial(n: u64) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    f
}

/// n!! with (−1)!! = 1.
pub fn double_factorial(n: i64) -> BigInt {
    let mut f = BigInt::one();
    let mut k = n;
    while k > 1 {
        f *= BigInt::from(k);
        k -= 2;
    }
    f
}

/// Leading λ-coefficient of Δ as printed in the asymptotics formulas:
/// for m ∈ ℤ+½: (−1)^{3m+½}((2m)!)²·Ps^{m+½}/(2^{m−½}(m−½)!·(2m−1)!!);
/// for m ∈ ℤ:   (−1)^m Ps^m((2m)!)²/((2m−1)!!)²·(a₋₁ − P′s·m(m+1)/(2Ps)).
///
/// The observed sign of the computed determinant is (−1)^{2m} times this
/// value for half-integer m (the m-dependence and absolute value agree
/// exactly; see the tests).
pub fn delta_lead_formula(two_m: u64, a_minus1: &Rat, ps: &Rat, pprimes: &Rat) -> Rat {
    assert!(two_m > 0 && !ps.is_zero());
    let k = two_m as i64;
    let fact_sq = {
        let f = factorial(two_m);
        Rat::from_integer(&f * &f)
    };
    if two_m % 2 == 1 {
        // m = k/2 half-integer: exponent 3m + 1/2 = (3k+1)/2
        let sign_exp = (3 * k + 1) / 2;
        let sign = if sign_exp % 2 == 0 { rat(1) } else { rat(-1) };
        let ps_pow = pow_rat(ps, (k + 1) / 2);
        let denom = Rat::from_integer(
            BigInt::from(2).pow(((k - 1) / 2) as u32)
                * factorial(((k - 1) / 2) as u64)
                * double_factorial(k - 1),
        );
        sign * fact_sq * ps_pow / denom
    } else {
        let m = k / 2;
        let sign = if m % 2 == 0 { rat(1) } else { rat(-1) };
        let ps_pow = pow_rat(ps, m);
        let dfs = double_factorial(k - 1);
        let denom = Rat::from_integer(&dfs * &dfs);
        let bracket =
            a_minus1.clone() - pprimes * triangular(m) / (rat(2) * ps);
        sign * ps_pow * fact_sq / denom * bracket
    }
}

fn triangular(m: i64) -> Rat {
    rat(m * (m + 1))
}

fn pow_rat(x: &Rat, e: i64) -> Rat {
    assert!(e >= 0);
    let mut acc = Rat::one();
    for _ in 0..e {
        acc = acc * x;
    }
    acc
}
