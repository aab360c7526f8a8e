//! Darboux transformations at potential level and pair level, the
//! reproduction↔Darboux dictionary, exponent prediction, exponent
//! reduction, operator→pair recovery and the P = xᵏ classification.
//!
//! Pair-level computation is the primary representation (exact over ℚ);
//! potential-level Darboux is kept as an independent certifier and is
//! verified on every pair-level call.

mod classify;
mod recover;
mod reduce;

pub use classify::{classify_xk, XkClassification};
pub use recover::{recover_line, RecoveredLine};
pub use reduce::{
    reduce_exponents, reduce_potential, solve_kernel_ansatz, PotentialReduction,
    PotentialReductionStep,
};

use crate::error::{Error, Result};
use crate::exactalg::{coprime_basis, rat, ratio, Poly, Rat, RationalFunction};
use crate::operators::{
    annihilates, from_pair, kernel_basis, poles_and_exponents, SchrodingerOp,
};
use crate::populations::{PolyPair, TPair};
use num_traits::Zero;

/// Projective selection of a kernel element of Lⱼ(y, T): the numerator
/// c₁·ỹⱼ + c₂·yⱼ over the frame √Tⱼ·yⱼ₊₁.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelChoice {
    pub c1: Rat,
    pub c2: Rat,
}

impl KernelChoice {
    pub fn new(c1: Rat, c2: Rat) -> KernelChoice {
        assert!(!(c1.is_zero() && c2.is_zero()), "kernel choice (0,0)");
        KernelChoice { c1, c2 }
    }

    pub fn of_i64(c1: i64, c2: i64) -> KernelChoice {
        KernelChoice::new(rat(c1), rat(c2))
    }

    /// The pure swap ψ = φⱼ.
    pub fn swap() -> KernelChoice {
        KernelChoice::of_i64(0, 1)
    }
}

/// One recorded Darboux transformation with the pair/T snapshot it acted
/// on; replaying the word reproduces the final operator exactly.
#[derive(Clone, Debug)]
pub struct DarbouxStep {
    pub j: i64,
    pub choice: KernelChoice,
    pub pair_before: PolyPair,
    pub t_before: TPair,
}

pub type DarbouxWord = Vec<DarbouxStep>;

/// Result of one pair-level Darboux transformation, kept in Lⱼ-form.
#[derive(Clone, Debug)]
pub struct DarbouxOutcome {
    pub pair: PolyPair,
    pub tdata: TPair,
    pub op: SchrodingerOp,
    /// The potential-level route agreed exactly (always asserted).
    pub certified: bool,
}

/// Darboux transformation of L = P⁻¹(∂²−U) with respect to ψ ∈ Ker(L),
/// supplied through h = ln′(√P·ψ). Verifies membership exactly
/// (U = g² + g′ with g = h − ln′√P) and returns P⁻¹(∂² − U^ψ) with
/// U^ψ = h² − h′.
pub fn darboux_potential(op: &SchrodingerOp, h: &RationalFunction) -> Result<SchrodingerOp> {
    let half_lp = RationalFunction::log_deriv(op.p())
        .expect("P nonzero")
        .scale(&ratio(1, 2));
    let g = h - &half_lp;
    if !annihilates(op, &g) {
        return Err(Error::NotInKernel);
    }
    let u_psi = &(h * h) - &h.derivative();
    SchrodingerOp::new(op.p().clone(), u_psi)
}

/// Pair-level Darboux transformation of Lⱼ(y, T) with respect to the
/// kernel element selected by `choice`. The result is again in Lⱼ-form:
/// the pair is swapped, with the old j-coordinate replaced by
/// monic(ỹⱼ + (c₂/c₁)·yⱼ) when c₁ ≠ 0, and T becomes (Tⱼ₊₁, Tⱼ).
/// Potential-level equality is certified on every call.
pub fn darboux_pair(
    pair: &PolyPair,
    t: &TPair,
    j: i64,
    choice: &KernelChoice,
) -> Result<DarbouxOutcome> {
    let op = from_pair(pair, t, j);
    let (new_coord, kb) = if choice.c1.is_zero() {
        (pair.y(j).clone(), kernel_basis(pair, t, j).ok())
    } else {
        let kb = kernel_basis(pair, t, j)?;
        let c = choice.c2.clone() / choice.c1.clone();
        let raw = &kb.tilde + &kb.base.scale(&c);
        (raw.monic().0, Some(kb))
    };
    let new_pair = pair.with_coordinate(j, new_coord).swap();
    let new_t = t.swap();
    let new_op = from_pair(&new_pair, &new_t, j);

    // Independent certification through the potential-level route.
    let kb = match kb {
        Some(kb) => kb,
        None => kernel_basis(pair, t, j)?,
    };
    let lnpsi = kb.log_deriv(&choice.c1, &choice.c2);
    let h = &lnpsi
        + &RationalFunction::log_deriv(t.p())
            .expect("P nonzero")
            .scale(&ratio(1, 2));
    let via_potential = darboux_potential(&op, &h)?;
    let certified = via_potential.u() == new_op.u();
    assert!(
        certified,
        "pair-level and potential-level Darboux disagree"
    );
    Ok(DarbouxOutcome {
        pair: new_pair,
        tdata: new_t,
        op: new_op,
        certified,
    })
}

/// Replay a Darboux word from a starting pair, certifying each step.
pub fn replay_word(
    pair: &PolyPair,
    t: &TPair,
    j: i64,
    word: &[KernelChoice],
) -> Result<DarbouxOutcome> {
    let mut cur_pair = pair.clone();
    let mut cur_t = t.clone();
    let mut out = DarbouxOutcome {
        pair: cur_pair.clone(),
        tdata: cur_t.clone(),
        op: from_pair(&cur_pair, &cur_t, j),
        certified: true,
    };
    for choice in word {
        out = darboux_pair(&cur_pair, &cur_t, j, choice)?;
        cur_pair = out.pair.clone();
        cur_t = out.tdata.clone();
    }
    Ok(out)
}

/// Valuation profile of a quasi-rational kernel element
/// ψ = c·∏(x−s)^{μ_s}, grouped by squarefree classes with constant μ.
pub type ExponentProfile = Vec<(Poly, Rat)>;

/// μ-profile of the kernel element (c₁ỹⱼ + c₂yⱼ)/(√Tⱼ·yⱼ₊₁).
pub fn kernel_mu_profile(
    pair: &PolyPair,
    t: &TPair,
    j: i64,
    choice: &KernelChoice,
) -> Result<ExponentProfile> {
    let kb = kernel_basis(pair, t, j)?;
    let num = kb.numerator(&choice.c1, &choice.c2);
    let basis = coprime_basis(&[num.clone(), kb.den_y.clone(), kb.den_t.clone()]);
    let mut out = Vec::new();
    for b in basis {
        let mu = rat(num.multiplicity_of(&b) as i64)
            - rat(kb.den_y.multiplicity_of(&b) as i64)
            - ratio(kb.den_t.multiplicity_of(&b) as i64, 2);
        if !mu.is_zero() {
            out.push((b, mu));
        }
    }
    Ok(out)
}

/// Predicted modified exponents of L^ψ from the μ-profile of ψ:
/// m̃ = max(k/2 + μ, −1 − k/2 − μ) at a zero of P of order k, and
/// m̃ = m∓1 elsewhere according to μ = −m or μ = m+1. Entries with
/// m̃ = 0 are omitted.
pub fn predicted_exponents(
    op: &SchrodingerOp,
    mu_profile: &ExponentProfile,
) -> Result<ExponentProfile> {
    let data = poles_and_exponents(op)?;
    let mut inputs: Vec<Poly> = op
        .p()
        .squarefree_decomposition()
        .into_iter()
        .map(|(q, _)| q)
        .collect();
    inputs.extend(data.iter().map(|d| d.class.clone()));
    inputs.extend(mu_profile.iter().map(|(q, _)| q.clone()));
    let basis = coprime_basis(&inputs);

    let mut out = Vec::new();
    for b in basis {
        let k = op.p().multiplicity_of(&b) as i64;
        let mu = mu_profile
            .iter()
            .find(|(q, _)| b.divides(q))
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rat::zero);
        let m = data
            .iter()
            .find(|d| b.divides(&d.class))
            .map(|d| d.m())
            .unwrap_or_else(Rat::zero);
        let m_tilde = if k > 0 {
            let a = ratio(k, 2) + &mu;
            let bb = rat(-1) - ratio(k, 2) - &mu;
            if a >= bb {
                a
            } else {
                bb
            }
        } else if mu == -m.clone() {
            m.clone() - rat(1)
        } else if mu == m.clone() + rat(1) {
            m.clone() + rat(1)
        } else {
            return Err(Error::ObstructionViolated {
                detail: format!("μ = {mu} at class {b} is neither −m nor m+1 (m = {m})"),
            });
        };
        // canonical representative of the exponent pair {−m, m+1}
        let canon = if m_tilde < rat(-1) - m_tilde.clone() {
            rat(-1) - m_tilde
        } else {
            m_tilde
        };
        if !canon.is_zero() {
            out.push((b, canon));
        }
    }
    out.sort_by(|a, b| crate::exactalg::cmp_polys(&a.0, &b.0));
    Ok(out)
}

/// Exponent profile actually observed on an operator, in the same shape
/// as [`predicted_exponents`] (classes refined against P).
pub fn observed_exponents(op: &SchrodingerOp) -> Result<ExponentProfile> {
    let data = poles_and_exponents(op)?;
    let mut inputs: Vec<Poly> = op
        .p()
        .squarefree_decomposition()
        .into_iter()
        .map(|(q, _)| q)
        .collect();
    inputs.extend(data.iter().map(|d| d.class.clone()));
    let basis = coprime_basis(&inputs);
    let mut out = Vec::new();
    for b in basis {
        let m = data
            .iter()
            .find(|d| b.divides(&d.class))
            .map(|d| d.m())
            .unwrap_or_else(Rat::zero);
        if !m.is_zero() {
            out.push((b, m));
        }
    }
    out.sort_by(|a, b| crate::exactalg::cmp_polys(&a.0, &b.0));
    Ok(out)
}

/// A quasi-rational test function f·E, where E is a fixed frame symbol
/// known only through ρ = ln′E (rational). Closed under ∂, multiplication
/// by rational functions, L and D_ψ.
#[derive(Clone, Debug, PartialEq)]
struct Framed {
    f: RationalFunction,
    rho: RationalFunction,
}

impl Framed {
    fn apply_l(&self, op: &SchrodingerOp) -> Framed {
        // L(fE) = P⁻¹(f″ + 2f′ρ + f(ρ′ + ρ² − U))·E
        let f1 = self.f.derivative();
        let f2 = f1.derivative();
        let rho2 = &(&self.rho.derivative() + &(&self.rho * &self.rho)) - op.u();
        let num = &(&f2 + &(&f1 * &self.rho).scale(&rat(2))) + &(&self.f * &rho2);
        let pinv = RationalFunction::new(Poly::one(), op.p().clone()).expect("P nonzero");
        Framed {
            f: &num * &pinv,
            rho: self.rho.clone(),
        }
    }

    fn apply_d(&self, ln_psi: &RationalFunction, p: &Poly) -> Framed {
        // D_ψ(fE) = P^{−1/2}(f′ + f(ρ − ln′ψ))·E: absorb P^{−1/2} into E.
        let f = &self.f.derivative() + &(&self.f * &(&self.rho - ln_psi));
        let rho = &self.rho
            - &RationalFunction::log_deriv(p)
                .expect("P nonzero")
                .scale(&ratio(1, 2));
        Framed { f, rho }
    }
}

#[derive(Clone, Debug)]
pub struct IntertwinerReport {
    pub checks: Vec<(String, bool)>,
    pub all_pass: bool,
}

/// Verify the intertwining identity L^ψ∘D_ψ = D_ψ∘L on the kernel frame
/// elements and on x·(frame element), exactly at the level of rational
/// coefficient functions.
pub fn intertwiner_check(
    pair: &PolyPair,
    t: &TPair,
    j: i64,
    choice: &KernelChoice,
) -> Result<IntertwinerReport> {
    let op = from_pair(pair, t, j);
    let outcome = darboux_pair(pair, t, j, choice)?;
    let kb = kernel_basis(pair, t, j)?;
    let ln_psi = kb.log_deriv(&choice.c1, &choice.c2);
    let rho_frame = {
        let ld = |p: &Poly| RationalFunction::log_deriv(p).expect("nonzero");
        &(-&ld(&kb.den_t).scale(&ratio(1, 2))) - &ld(&kb.den_y)
    };

    let mut tests: Vec<(String, Framed)> = Vec::new();
    for (name, numerator) in [
        ("tilde-frame", kb.tilde.clone()),
        ("base-frame", kb.base.clone()),
        ("x·tilde-frame", &Poly::x() * &kb.tilde),
        ("x·base-frame", &Poly::x() * &kb.base),
    ] {
        tests.push((
            name.to_string(),
            Framed {
                f: RationalFunction::from_poly(numerator),
                rho: rho_frame.clone(),
            },
        ));
    }

    let mut checks = Vec::new();
    let mut all = true;
    for (name, w) in tests {
        let lhs = w.apply_d(&ln_psi, t.p()).apply_l(&outcome.op);
        let rhs = w.apply_l(&op).apply_d(&ln_psi, t.p());
        let pass = lhs == rhs;
        all &= pass;
        checks.push((name, pass));
    }
    Ok(IntertwinerReport {
        checks,
        all_pass: all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::is_lambda_mf;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_i64s(cs)
    }

    fn tp(t0: &[i64], t1: &[i64]) -> TPair {
        TPair::new(p(t0), p(t1)).unwrap()
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn test_darboux_potential_classical() {
        // ∂², ψ = x: h = 1/x, U^ψ = 2/x²
        let op = SchrodingerOp::new(Poly::one(), RationalFunction::zero()).unwrap();
        let h = rf(&[1], &[0, 1]);
        let out = darboux_potential(&op, &h).unwrap();
        assert_eq!(out.u(), &rf(&[2], &[0, 0, 1]));

        // ∂² − 2/x², ψ = x² (the m+1 branch): h = 2/x, U^ψ = 6/x²
        let op = SchrodingerOp::new(Poly::one(), rf(&[2], &[0, 0, 1])).unwrap();
        let h = rf(&[2], &[0, 1]);
        let out = darboux_potential(&op, &h).unwrap();
        assert_eq!(out.u(), &rf(&[6], &[0, 0, 1]));

        // ψ = 1 on ∂²: identity
        let op = SchrodingerOp::new(Poly::one(), RationalFunction::zero()).unwrap();
        let out = darboux_potential(&op, &RationalFunction::zero()).unwrap();
        assert!(out.u().is_zero());

        // wrong h is rejected
        let bad = rf(&[3], &[0, 1]);
        assert!(matches!(
            darboux_potential(&op, &bad),
            Err(Error::NotInKernel)
        ));
    }

    #[test]
    fn test_darboux_pair_swap_and_ladder() {
        // ((1,1),(1,1)), j=1, swap choice: operator ∂² ↔ ∂²
        let out = darboux_pair(
            &PolyPair::trivial(),
            &TPair::trivial(),
            1,
            &KernelChoice::swap(),
        )
        .unwrap();
        assert_eq!(out.pair, PolyPair::trivial());
        assert!(out.op.u().is_zero());

        // ((1,1),(1,1)), j=1, choice (1,0): ψ = x, result ((x,1),(1,1)),
        // operator ∂² − 2/x²
        let out = darboux_pair(
            &PolyPair::trivial(),
            &TPair::trivial(),
            1,
            &KernelChoice::of_i64(1, 0),
        )
        .unwrap();
        assert_eq!(out.pair, PolyPair::new(p(&[0, 1]), Poly::one()).unwrap());
        assert_eq!(out.op.u(), &rf(&[2], &[0, 0, 1]));
        assert!(out.certified);
    }

    #[test]
    fn test_darboux_switch_equalities() {
        // L₁(y,T)^{φ₁} = L₀(y,T) = L₁((y₁,y₀),(T₁,T₀))
        let pair = PolyPair::new(p(&[0, 1]), Poly::one()).unwrap();
        let t = tp(&[0, 0, 1], &[1]);
        let out = darboux_pair(&pair, &t, 1, &KernelChoice::swap()).unwrap();
        let l0 = from_pair(&pair, &t, 0);
        assert_eq!(out.op.u(), l0.u());
        let l1_swapped = from_pair(&pair.swap(), &t.swap(), 1);
        assert_eq!(out.op.u(), l1_swapped.u());
    }

    #[test]
    fn test_double_swap_is_identity() {
        let pair = PolyPair::new(p(&[0, 1]), Poly::one()).unwrap();
        let t = tp(&[0, 0, 1], &[1]);
        let once = darboux_pair(&pair, &t, 1, &KernelChoice::swap()).unwrap();
        let twice = darboux_pair(&once.pair, &once.tdata, 1, &KernelChoice::swap()).unwrap();
        assert_eq!(twice.pair, pair);
        assert_eq!(twice.tdata, t);
    }

    #[test]
    fn test_lambda_mf_preserved() {
        let pair = PolyPair::trivial();
        let t = tp(&[0, 0, 1], &[1]);
        let mut cur = (pair, t);
        for choice in [
            KernelChoice::of_i64(1, 0),
            KernelChoice::of_i64(1, 2),
            KernelChoice::swap(),
        ] {
            let out = darboux_pair(&cur.0, &cur.1, 1, &choice).unwrap();
            assert!(is_lambda_mf(&out.op).unwrap().verdict);
            cur = (out.pair, out.tdata);
        }
    }

    #[test]
    fn test_predicted_exponents_examples() {
        // P = 1, ψ = x at a regular point: m̃ = 1 (∂² → ∂² − 2/x²)
        let op = SchrodingerOp::new(Poly::one(), RationalFunction::zero()).unwrap();
        let profile = vec![(Poly::x(), rat(1))];
        let pred = predicted_exponents(&op, &profile).unwrap();
        assert_eq!(pred, vec![(Poly::x(), rat(1))]);

        // P = x², μ₀ = 0: m̃ = max(1, −2) = 1
        let op = SchrodingerOp::new(p(&[0, 0, 1]), RationalFunction::zero()).unwrap();
        let pred = predicted_exponents(&op, &[]).unwrap();
        assert_eq!(pred, vec![(Poly::x(), rat(1))]);
    }

    #[test]
    fn test_exponent_prediction_matches_observation() {
        // ((1,1),(1,1)), j=1, ψ = x/(1·1): predicted vs observed on L^ψ
        let pair = PolyPair::trivial();
        let t = TPair::trivial();
        let choice = KernelChoice::of_i64(1, 0);
        let op = from_pair(&pair, &t, 1);
        let mu = kernel_mu_profile(&pair, &t, 1, &choice).unwrap();
        let predicted = predicted_exponents(&op, &mu).unwrap();
        let out = darboux_pair(&pair, &t, 1, &choice).unwrap();
        let observed = observed_exponents(&out.op).unwrap();
        assert_eq!(predicted, observed);
    }

    #[test]
    fn test_intertwiner_trivial_and_nontrivial() {
        // ψ = 1 (swap on the trivial pair): D_ψ = ∂
        let r = intertwiner_check(
            &PolyPair::trivial(),
            &TPair::trivial(),
            1,
            &KernelChoice::swap(),
        )
        .unwrap();
        assert!(r.all_pass);

        // ∂², ψ = x
        let r = intertwiner_check(
            &PolyPair::trivial(),
            &TPair::trivial(),
            1,
            &KernelChoice::of_i64(1, 0),
        )
        .unwrap();
        assert!(r.all_pass);

        // a T with genuine poles
        let r = intertwiner_check(
            &PolyPair::trivial(),
            &tp(&[0, 0, 1], &[1]),
            1,
            &KernelChoice::of_i64(1, 3),
        )
        .unwrap();
        assert!(r.all_pass);
    }
}
