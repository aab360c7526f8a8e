//! The explicit generator of the population of the trivial critical
//! point: the φ-recursion φ_{n+1} = ∫Tᵢ∫Tᵢ₊₁φₙ, the exponent sequence
//! aₙ, the Wronskian formula θₙ = Wr(φ₁,…,φₙ)/(Tᵢ^{aₙ}Tᵢ₋₁^{aₙ₋₁}),
//! and the Adler–Moser specialization T = (1,1).
//!
//! Each φ-step carries two integration constants. The one adding a
//! multiple of 1 never changes any θ (it adds a multiple of the first
//! Wronskian column); the one adding a multiple of χ = ∫Tᵢ is the
//! meaningful family parameter — at the last step it shifts
//! θₙ ↦ θₙ + c·θₙ₋₂.

use crate::error::Result;
use crate::exactalg::{wronskian2, wronskian_n, Poly, Rat};
use crate::populations::{PolyPair, TPair};
use num_traits::{One, Zero};

/// a_{2r} = r², a_{2r+1} = r(r+1).
pub fn a_seq(n: u64) -> u64 {
    let r = n / 2;
    if n % 2 == 0 {
        r * r
    } else {
        r * (r + 1)
    }
}

/// Integration constants of one φ-step.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantPair {
    /// Coefficient of 1. Leaves every θₙ unchanged.
    pub shift: Rat,
    /// Coefficient of χ = ∫Tᵢ — the meaningful parameter.
    pub mix: Rat,
}

impl ConstantPair {
    pub fn zero() -> ConstantPair {
        ConstantPair {
            shift: Rat::zero(),
            mix: Rat::zero(),
        }
    }

    pub fn mix(c: Rat) -> ConstantPair {
        ConstantPair {
            shift: Rat::zero(),
            mix: c,
        }
    }
}

/// φ₁ = 1, …, φₙ with the recorded constants.
#[derive(Clone, Debug)]
pub struct PhiSequence {
    pub tdata: TPair,
    pub direction: i64,
    pub phis: Vec<Poly>,
    pub constants: Vec<ConstantPair>,
}

/// Compute φ₁,…,φₙ exactly. `constants` supplies the n−1 step constants
/// (zero-padded when shorter).
pub fn phi_sequence(t: &TPair, direction: i64, n: usize, constants: &[ConstantPair]) -> PhiSequence {
    assert!(n >= 1);
    let chi = t.t(direction).antiderivative(&Rat::zero());
    let mut phis = vec![Poly::one()];
    let mut used = Vec::new();
    for step in 0..n - 1 {
        let c = constants.get(step).cloned().unwrap_or_else(ConstantPair::zero);
        let inner = (t.t(direction + 1) * phis.last().unwrap()).antiderivative(&Rat::zero());
        let outer = (t.t(direction) * &inner).antiderivative(&c.shift);
        let phi = &outer + &chi.scale(&c.mix);
        phis.push(phi);
        used.push(c);
    }
    PhiSequence {
        tdata: t.clone(),
        direction,
        phis,
        constants: used,
    }
}

/// θ₀,…,θₙ, monic, with the exact leading scalars tracked so the raw
/// Wronskian quotients can be reconstructed (θ_raw = scalar · θ_monic).
#[derive(Clone, Debug)]
pub struct ThetaSequence {
    pub tdata: TPair,
    pub direction: i64,
    pub thetas: Vec<Poly>,
    pub scalars: Vec<Rat>,
    pub constants: Vec<ConstantPair>,
}

impl ThetaSequence {
    pub fn raw(&self, n: usize) -> Poly {
        self.thetas[n].scale(&self.scalars[n])
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }
}

pub fn theta_sequence(
    t: &TPair,
    direction: i64,
    n: usize,
    constants: &[ConstantPair],
) -> Result<ThetaSequence> {
    let phi = phi_sequence(t, direction, n.max(1), constants);
    let mut thetas = vec![Poly::one()];
    let mut scalars = vec![Rat::one()];
    for k in 1..=n {
        let wr = wronskian_n(&phi.phis[..k]);
        let denom = &t.t(direction).pow(a_seq(k as u64)) * &t.t(direction + 1).pow(a_seq(k as u64 - 1));
        let quotient = wr.exact_div(&denom)?;
        let (monic, scalar) = quotient.monic();
        thetas.push(monic);
        scalars.push(scalar);
    }
    Ok(ThetaSequence {
        tdata: t.clone(),
        direction,
        thetas,
        scalars,
        constants: phi.constants,
    })
}

/// θₙ alone (monic).
pub fn theta_n(t: &TPair, direction: i64, n: usize, constants: &[ConstantPair]) -> Result<Poly> {
    Ok(theta_sequence(t, direction, n, constants)?.thetas[n].clone())
}

/// One line of the recursion report: Wr(θₙ₋₁, θₙ₊₁) = T_{n+i}·θₙ² checked
/// exactly on the raw (scalar-restored) sequence.
#[derive(Clone, Debug)]
pub struct RecursionCheck {
    pub n: usize,
    pub pass: bool,
    /// κₙ²/(κₙ₋₁κₙ₊₁): the scalar relating the monic form of the
    /// identity to the raw one.
    pub monic_scale: Rat,
}

#[derive(Clone, Debug)]
pub struct RecursionReport {
    pub checks: Vec<RecursionCheck>,
    pub all_pass: bool,
}

/// Exact verification of Wr(θₙ₋₁, θₙ₊₁) = T_{n+i}·θₙ² for every n with
/// n+1 inside the sequence.
pub fn verify_theta_recursion(seq: &ThetaSequence) -> RecursionReport {
    let mut checks = Vec::new();
    let mut all = true;
    for n in 1..seq.len().saturating_sub(1) {
        let lhs = wronskian2(&seq.raw(n - 1), &seq.raw(n + 1));
        let sq = seq.raw(n);
        let rhs = &(&sq * &sq) * seq.tdata.t(n as i64 + seq.direction);
        let pass = lhs == rhs;
        all &= pass;
        let monic_scale = seq.scalars[n].clone() * &seq.scalars[n]
            / (seq.scalars[n - 1].clone() * &seq.scalars[n + 1]);
        checks.push(RecursionCheck {
            n,
            pass,
            monic_scale,
        });
    }
    RecursionReport {
        checks,
        all_pass: all,
    }
}

/// Adler–Moser polynomials: the θ sequence for T = (1,1).
pub fn adler_moser(n: usize, constants: &[ConstantPair]) -> Result<Poly> {
    theta_n(&TPair::trivial(), 0, n, constants)
}

/// Change of variables x ↦ f(x): the pair maps to (y₀∘f, y₁∘f)
/// monic-normalized and T to (f′·T₀∘f, f′·T₁∘f).
pub fn compose_change_of_variables(
    pair: &PolyPair,
    t: &TPair,
    f: &Poly,
) -> Result<(PolyPair, TPair)> {
    assert!(f.deg() >= 1, "change of variables must be nonconstant");
    let fp = f.derivative();
    let t0 = &fp * &t.t(0).compose(f);
    let t1 = &fp * &t.t(1).compose(f);
    let pair2 = PolyPair::new(pair.y(0).compose(f), pair.y(1).compose(f))?;
    Ok((pair2, TPair::new(t0, t1)?))
}
