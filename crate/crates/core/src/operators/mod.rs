//! Non-monic Schrödinger operators L = P⁻¹(∂² − U): construction from
//! pairs, Fuchsian checks, modified exponents, the Δ(s,λ) criterion and
//! λ-monodromy-freeness verdicts.
//!
//! All square roots are kept implicit: every operator-level formula goes
//! through logarithmic derivatives, which are rational, so the whole
//! layer computes in ℚ(x) and in quotient rings ℚ[t]/(q).

mod delta;
mod local;

pub use delta::{
    delta_from_coeffs, delta_lead_formula, delta_poly, delta_poly_rec, delta_rec_from_coeffs,
    delta_scalar, double_factorial, factorial, lambda_coefficients, lambda_degree_bound,
    DeltaPoly,
};
pub use local::{
    charpoly, poles_and_exponents_of_potential, triangular_two_m, triangular_value, LocalDatum,
};

use crate::error::{Error, Result};
use crate::exactalg::{
    certified_rational_roots, rat, ratio, Poly, QrElem, Rat, RationalFunction,
};
use crate::populations::{fertility, PolyPair, TPair};
use num_traits::Zero;
use std::fmt;

/// L = P⁻¹(∂² − U) with P monic and U stored reduced.
#[derive(Clone, Debug, PartialEq)]
pub struct SchrodingerOp {
    p: Poly,
    u: RationalFunction,
}

impl SchrodingerOp {
    pub fn new(p: Poly, u: RationalFunction) -> Result<SchrodingerOp> {
        if p.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(SchrodingerOp { p: p.monic().0, u })
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn u(&self) -> &RationalFunction {
        &self.u
    }
}

impl fmt::Display for SchrodingerOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1/({}))·(∂² − ({}))", self.p, self.u)
    }
}

/// ln′(φⱼ) for φⱼ = yⱼ/(√Tⱼ·yⱼ₊₁): rational despite the square root.
pub fn log_deriv_phi(pair: &PolyPair, t: &TPair, j: i64) -> RationalFunction {
    let ld = |p: &Poly| RationalFunction::log_deriv(p).expect("nonzero");
    let half = ratio(1, 2);
    &(&ld(pair.y(j)) - &ld(t.t(j)).scale(&half)) - &ld(pair.y(j + 1))
}

/// The operator Lⱼ(y, T) = P⁻¹(∂ + g)(∂ − g) with g = ln′(φⱼ):
/// P = T₀T₁ and U = g′ + g².
pub fn from_pair(pair: &PolyPair, t: &TPair, j: i64) -> SchrodingerOp {
    let g = log_deriv_phi(pair, t, j);
    let u = &g.derivative() + &(&g * &g);
    SchrodingerOp {
        p: t.p().clone(),
        u,
    }
}

/// Fuchsian: all poles of U of order ≤ 2 and x·U(x) → 0 at infinity.
pub fn fuchsian_check(op: &SchrodingerOp) -> bool {
    let u = &op.u;
    if u.is_zero() {
        return true;
    }
    if u.num().deg() > u.den().deg() - 2 {
        return false;
    }
    u.den()
        .squarefree_decomposition()
        .iter()
        .all(|&(_, e)| e <= 2)
}

/// Modified exponents of all pole classes of op's potential.
pub fn poles_and_exponents(op: &SchrodingerOp) -> Result<Vec<LocalDatum>> {
    if !fuchsian_check(op) {
        return Err(Error::PoleTooHigh {
            order: op
                .u
                .den()
                .squarefree_decomposition()
                .iter()
                .map(|&(_, e)| e as i64)
                .max()
                .unwrap_or(0),
        });
    }
    poles_and_exponents_of_potential(&op.u)
}

/// Kernel frame of Lⱼ(y, T): the two-dimensional space
/// { (c₁·ỹⱼ + c₂·yⱼ) / (√Tⱼ·yⱼ₊₁) }, where ỹⱼ is the canonical
/// reproduction solution in direction j.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub tilde: Poly,
    pub base: Poly,
    pub den_t: Poly,
    pub den_y: Poly,
}

impl KernelBasis {
    /// Numerator selected by the projective coefficients (c₁, c₂).
    pub fn numerator(&self, c1: &Rat, c2: &Rat) -> Poly {
        &self.tilde.scale(c1) + &self.base.scale(c2)
    }

    /// ln′ of the selected kernel element (rational).
    pub fn log_deriv(&self, c1: &Rat, c2: &Rat) -> RationalFunction {
        let n = self.numerator(c1, c2);
        let ld = |p: &Poly| RationalFunction::log_deriv(p).expect("nonzero");
        &(&ld(&n) - &ld(&self.den_t).scale(&ratio(1, 2))) - &ld(&self.den_y)
    }
}

/// Kernel basis of Lⱼ(y, T); requires fertility in direction j.
pub fn kernel_basis(pair: &PolyPair, t: &TPair, j: i64) -> Result<KernelBasis> {
    let fam = fertility(pair, t, j)?;
    Ok(KernelBasis {
        tilde: fam.particular,
        base: pair.y(j).clone(),
        den_t: t.t(j).clone(),
        den_y: pair.y(j + 1).clone(),
    })
}

/// Exact annihilation test for a quasi-rational function with
/// logarithmic derivative w: ψ ∈ Ker(P·L) ⟺ U = w′ + w².
pub fn annihilates(op: &SchrodingerOp, w: &RationalFunction) -> bool {
    let u = &w.derivative() + &(w * w);
    u == op.u
}

/// One residue-formula violation, with certified rational sample points
/// where available (presentation only; the verdict is class-wide).
#[derive(Clone, Debug)]
pub struct ResidueViolation {
    pub class: Poly,
    pub expected: QrElem,
    pub actual: QrElem,
    pub rational_points: Vec<(Rat, Rat)>,
}

#[derive(Clone, Debug)]
pub struct ResidueReport {
    pub ok: bool,
    pub violations: Vec<ResidueViolation>,
    /// Pole classes off the zeros of P whose modified exponent is not an
    /// integer (the residue proposition forces m ∈ ℤ there).
    pub non_integer_exponents: Vec<Poly>,
    /// Σ over all poles of Res U, which must vanish (residue at ∞ of a
    /// Fuchsian potential is zero).
    pub residue_sum: Rat,
}

/// Check a₋₁ = m(m+1)P′(s)/(2P(s)) and m ∈ ℤ at every pole class coprime
/// to P, plus the global residue-sum rule.
pub fn residue_check(op: &SchrodingerOp) -> Result<ResidueReport> {
    let data = poles_and_exponents(op)?;
    let mut violations = Vec::new();
    let mut non_integer = Vec::new();
    let mut residue_sum = Rat::zero();
    for datum in &data {
        residue_sum += datum.a_minus1.trace();
        if !datum.class.gcd(op.p()).is_one() {
            continue;
        }
        if !datum.m_is_integer() {
            non_integer.push(datum.class.clone());
        }
        let ps = QrElem::eval_poly(op.p(), &datum.class);
        let pps = QrElem::eval_poly(&op.p().derivative(), &datum.class);
        let expected = datum
            .a_minus2
            .mul(&pps)
            .mul(&ps.try_inv()?)
            .scale(&ratio(1, 2));
        if expected != datum.a_minus1 {
            let rational_points = certified_rational_roots(&datum.class)
                .into_iter()
                .map(|r| {
                    let v = datum.a_minus1.eval_at(&r);
                    (r, v)
                })
                .collect();
            violations.push(ResidueViolation {
                class: datum.class.clone(),
                expected,
                actual: datum.a_minus1.clone(),
                rational_points,
            });
        }
    }
    Ok(ResidueReport {
        ok: violations.is_empty() && non_integer.is_empty() && residue_sum.is_zero(),
        violations,
        non_integer_exponents: non_integer,
        residue_sum,
    })
}

/// Per-pole evidence backing a λ-monodromy-freeness verdict.
#[derive(Clone, Debug)]
pub struct PoleEvidence {
    pub class: Poly,
    pub two_m: u64,
    pub delta_vanishes: bool,
    pub delta: DeltaPoly,
}

#[derive(Clone, Debug)]
pub struct LambdaMfVerdict {
    pub verdict: bool,
    pub fuchsian: bool,
    /// Populated when the verdict is negative for a structural reason
    /// (non-Fuchsian, non-triangular a₋₂, simple pole).
    pub reason: Option<String>,
    pub evidence: Vec<PoleEvidence>,
}

/// Full verdict: Fuchsian, every a₋₂ triangular, and Δ(s,λ) ≡ 0 at every
/// pole class (certified per class over its quotient ring).
pub fn is_lambda_mf(op: &SchrodingerOp) -> Result<LambdaMfVerdict> {
    if !fuchsian_check(op) {
        return Ok(LambdaMfVerdict {
            verdict: false,
            fuchsian: false,
            reason: Some("potential is not Fuchsian".into()),
            evidence: Vec::new(),
        });
    }
    let data = match poles_and_exponents(op) {
        Ok(d) => d,
        Err(Error::NotTriangularNumber { class_modulus }) => {
            return Ok(LambdaMfVerdict {
                verdict: false,
                fuchsian: true,
                reason: Some(format!(
                    "a_-2 is not m(m+1) for half-integer m > 0 at class {class_modulus}"
                )),
                evidence: Vec::new(),
            });
        }
        Err(e) => return Err(e),
    };
    let mut evidence = Vec::new();
    let mut verdict = true;
    for datum in &data {
        let d = delta_poly(op, datum)?;
        let vanishes = d.is_zero();
        verdict &= vanishes;
        evidence.push(PoleEvidence {
            class: datum.class.clone(),
            two_m: datum.two_m,
            delta_vanishes: vanishes,
            delta: d,
        });
    }
    Ok(LambdaMfVerdict {
        verdict,
        fuchsian: true,
        reason: None,
        evidence,
    })
}
