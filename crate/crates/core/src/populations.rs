//! Pairs (y₀, y₁) and data (T₀, T₁): genericity, fertility, reproduction
//! by exact linear algebra, population enumeration, Weyl degree
//! bookkeeping, the numeric Bethe-equation oracle and super-fertile
//! normalization.
//!
//! A pair is fertile when both Wronskian equations
//! Wr(yᵢ, ỹᵢ) = Tᵢ·yᵢ₊₁² admit polynomial solutions; the full solution
//! set in each direction is a one-parameter family ỹ* + c·yᵢ and
//! replacing yᵢ by a member of the family is a reproduction. Everything
//! is exact over ℚ; the only numerics live in [`bethe_residuals`].

use crate::error::{Error, Result};
use crate::exactalg::{
    rat, roots_numeric, solve_rational, wronskian2, Poly, Rat, SolveOutcome,
};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

/// The data pair (T₀, T₁), monic, with P = T₀T₁ cached.
#[derive(Clone, PartialEq, Debug)]
pub struct TPair {
    t0: Poly,
    t1: Poly,
    p: Poly,
}

impl TPair {
    pub fn new(t0: Poly, t1: Poly) -> Result<TPair> {
        if t0.is_zero() || t1.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t0 = t0.monic().0;
        let t1 = t1.monic().0;
        let p = &t0 * &t1;
        Ok(TPair { t0, t1, p })
    }

    pub fn trivial() -> TPair {
        TPair::new(Poly::one(), Poly::one()).expect("nonzero")
    }

    /// Tᵢ with the index taken mod 2, matching the periodic extension
    /// Tᵢ = Tⱼ for i ≡ j (mod 2).
    pub fn t(&self, i: i64) -> &Poly {
        if i.rem_euclid(2) == 0 {
            &self.t0
        } else {
            &self.t1
        }
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn swap(&self) -> TPair {
        TPair::new(self.t1.clone(), self.t0.clone()).expect("nonzero")
    }

    /// One weight 2l·ω₀ + 2m·ω₁ per root of P, grouped by coprime
    /// classes (a class of degree d contributes d equal entries).
    pub fn weight_list(&self) -> Vec<WeightVector> {
        let basis = crate::exactalg::coprime_basis(&[self.t0.clone(), self.t1.clone()]);
        let mut out = Vec::new();
        for class in basis {
            let two_l = self.t0.multiplicity_of(&class) as i64;
            let two_m = self.t1.multiplicity_of(&class) as i64;
            let w = WeightVector::new(rat(two_l), rat(two_m), Rat::zero());
            for _ in 0..class.deg() {
                out.push(w.clone());
            }
        }
        out
    }
}

/// The pair (y₀, y₁), monic; pairs are considered up to a nonzero
/// constant, and monic is the canonical representative.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct PolyPair {
    y0: Poly,
    y1: Poly,
}

impl PolyPair {
    pub fn new(y0: Poly, y1: Poly) -> Result<PolyPair> {
        if y0.is_zero() || y1.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(PolyPair {
            y0: y0.monic().0,
            y1: y1.monic().0,
        })
    }

    pub fn trivial() -> PolyPair {
        PolyPair::new(Poly::one(), Poly::one()).expect("nonzero")
    }

    pub fn y(&self, i: i64) -> &Poly {
        if i.rem_euclid(2) == 0 {
            &self.y0
        } else {
            &self.y1
        }
    }

    pub fn swap(&self) -> PolyPair {
        PolyPair {
            y0: self.y1.clone(),
            y1: self.y0.clone(),
        }
    }

    pub fn with_coordinate(&self, i: i64, y: Poly) -> PolyPair {
        let mut new = self.clone();
        if i.rem_euclid(2) == 0 {
            new.y0 = y.monic().0;
        } else {
            new.y1 = y.monic().0;
        }
        new
    }

    pub fn degrees(&self) -> (i64, i64) {
        (self.y0.deg(), self.y1.deg())
    }
}

/// Coordinates of an affine ŝl₂ weight in the basis (ω₀, ω₁, δ);
/// entries are half-integers stored exactly.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightVector {
    pub c0: Rat,
    pub c1: Rat,
    pub cdelta: Rat,
}

impl WeightVector {
    pub fn new(c0: Rat, c1: Rat, cdelta: Rat) -> WeightVector {
        WeightVector { c0, c1, cdelta }
    }

    pub fn zero() -> WeightVector {
        WeightVector::new(Rat::zero(), Rat::zero(), Rat::zero())
    }

    /// ρ = ω₀ + ω₁ + δ.
    pub fn rho() -> WeightVector {
        WeightVector::new(rat(1), rat(1), rat(1))
    }

    /// α₁ = 2ω₁ − 2ω₀ and α₀ = δ − α₁.
    pub fn alpha(i: usize) -> WeightVector {
        match i {
            0 => WeightVector::new(rat(2), rat(-2), rat(1)),
            1 => WeightVector::new(rat(-2), rat(2), Rat::zero()),
            _ => panic!("index must be 0 or 1"),
        }
    }

    pub fn add(&self, rhs: &WeightVector) -> WeightVector {
        WeightVector::new(
            self.c0.clone() + &rhs.c0,
            self.c1.clone() + &rhs.c1,
            self.cdelta.clone() + &rhs.cdelta,
        )
    }

    pub fn sub(&self, rhs: &WeightVector) -> WeightVector {
        WeightVector::new(
            self.c0.clone() - &rhs.c0,
            self.c1.clone() - &rhs.c1,
            self.cdelta.clone() - &rhs.cdelta,
        )
    }

    pub fn scale(&self, c: &Rat) -> WeightVector {
        WeightVector::new(self.c0.clone() * c, self.c1.clone() * c, self.cdelta.clone() * c)
    }

    /// sᵢ(μ) = μ − ⟨μ, αᵢ∨⟩αᵢ with ⟨ωⱼ, αᵢ∨⟩ = δᵢⱼ, ⟨δ, αᵢ∨⟩ = 0.
    pub fn reflect(&self, i: usize) -> WeightVector {
        let pairing = match i {
            0 => self.c0.clone(),
            1 => self.c1.clone(),
            _ => panic!("index must be 0 or 1"),
        };
        self.sub(&WeightVector::alpha(i).scale(&pairing))
    }

    /// Shifted action w·μ = w(μ + ρ) − ρ.
    pub fn shifted_reflect(&self, i: usize) -> WeightVector {
        self.add(&WeightVector::rho()).reflect(i).sub(&WeightVector::rho())
    }
}

/// Outcome of the genericity test, naming the failing gcd when not
/// generic.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericityReport {
    pub generic: bool,
    pub certificate: Option<String>,
}

/// y₀, y₁ squarefree, coprime, and each coprime with its Tᵢ.
pub fn is_generic(pair: &PolyPair, t: &TPair) -> GenericityReport {
    let fail = |what: &str, g: &Poly| GenericityReport {
        generic: false,
        certificate: Some(format!("{what} = {g}")),
    };
    for i in 0..2i64 {
        let y = pair.y(i);
        let g = y.gcd(&y.derivative());
        if !g.is_one() {
            return fail(&format!("gcd(y{i}, y{i}')"), &g);
        }
    }
    let g = pair.y(0).gcd(pair.y(1));
    if !g.is_one() {
        return fail("gcd(y0, y1)", &g);
    }
    for i in 0..2i64 {
        let g = pair.y(i).gcd(t.t(i));
        if !g.is_one() {
            return fail(&format!("gcd(y{i}, T{i})"), &g);
        }
    }
    GenericityReport {
        generic: true,
        certificate: None,
    }
}

/// Solution family of Wr(y, ỹ) = W: a canonical particular solution plus
/// the direction y (the full set is {particular + c·y}).
#[derive(Clone, Debug)]
pub struct ReproductionFamily {
    /// Canonical particular solution: the unique member whose coefficient
    /// of x^(deg y) vanishes.
    pub particular: Poly,
    /// Null direction of the Wronskian map (the polynomial y itself).
    pub span: Poly,
}

impl ReproductionFamily {
    pub fn member(&self, c: &Rat) -> Poly {
        &self.particular + &self.span.scale(c)
    }

    /// Degree of a generic member.
    pub fn generic_degree(&self) -> i64 {
        self.particular.deg().max(self.span.deg())
    }
}

/// Solve Wr(y, ỹ) = W for ỹ over ℚ, with the degree bound
/// deg ỹ ≤ max(deg W + 1 − deg y, deg y).
pub fn solve_reproduction(y: &Poly, w: &Poly) -> Result<ReproductionFamily> {
    assert!(!y.is_zero() && !w.is_zero(), "y, W must be nonzero");
    let dy = y.deg();
    let dmax = (w.deg() + 1 - dy).max(dy) as usize;
    let nrows = (dmax as i64 + dy).max(w.deg() + 1) as usize;

    // Column k: coefficients of Wr(y, x^k) = y·k·x^{k-1} − y'·x^k.
    let mut cols: Vec<Poly> = Vec::with_capacity(dmax + 1);
    for k in 0..=dmax {
        let xk = Poly::monomial(Rat::from_integer(1.into()), k);
        cols.push(wronskian2(y, &xk));
    }
    let mut a = vec![vec![Rat::zero(); dmax + 1]; nrows];
    for (k, col) in cols.iter().enumerate() {
        for r in 0..nrows {
            a[r][k] = col.coeff(r);
        }
    }
    let b: Vec<Rat> = (0..nrows).map(|r| w.coeff(r)).collect();

    match solve_rational(&a, &b) {
        SolveOutcome::NoSolution => Err(Error::Infertile { direction: 0 }),
        SolveOutcome::Solution {
            particular,
            nullspace,
        } => {
            // The null space of g ↦ Wr(y, g) is exactly span{y}.
            debug_assert!(nullspace.len() == 1);
            let mut p = Poly::from_coeffs(particular);
            // canonical representative: kill the coefficient of x^(deg y)
            let c = p.coeff(dy as usize) / y.leading_coeff();
            p = &p - &y.scale(&c);
            debug_assert_eq!(wronskian2(y, &p), *w);
            Ok(ReproductionFamily {
                particular: p,
                span: y.clone(),
            })
        }
    }
}

/// W for reproduction in the given direction: T_dir · y_{dir+1}².
pub fn reproduction_target(pair: &PolyPair, t: &TPair, direction: i64) -> Poly {
    let other = pair.y(direction + 1);
    &(other * other) * t.t(direction)
}

/// The reproduction family in one direction, or Infertile.
pub fn fertility(pair: &PolyPair, t: &TPair, direction: i64) -> Result<ReproductionFamily> {
    let w = reproduction_target(pair, t, direction);
    solve_reproduction(pair.y(direction), &w).map_err(|e| match e {
        Error::Infertile { .. } => Error::Infertile {
            direction: direction.rem_euclid(2) as usize,
        },
        other => other,
    })
}

pub fn is_fertile(pair: &PolyPair, t: &TPair) -> bool {
    fertility(pair, t, 0).is_ok() && fertility(pair, t, 1).is_ok()
}

/// Critical = fertile and generic.
pub fn is_critical(pair: &PolyPair, t: &TPair) -> bool {
    is_fertile(pair, t) && is_generic(pair, t).generic
}

/// One reproduction: direction, the family parameter c in ỹ* + c·y, and
/// whether the chosen representative has lower degree than a generic
/// member of its family.
#[derive(Clone, Debug, PartialEq)]
pub struct ReproductionStep {
    pub direction: i64,
    pub constant: Rat,
    pub degree_dropped: bool,
}

/// Exact certificate for a reproduction after monic normalization:
/// scale · Wr(y_old, y_new) = T_dir · y_other².
#[derive(Clone, Debug, PartialEq)]
pub struct WronskianCertificate {
    pub direction: i64,
    pub scale: Rat,
}

/// A pair plus the word of reproductions that produced it from the root.
#[derive(Clone, Debug)]
pub struct PopulationNode {
    pub pair: PolyPair,
    pub tdata: TPair,
    pub word: Vec<ReproductionStep>,
    pub certificates: Vec<WronskianCertificate>,
}

impl PopulationNode {
    pub fn root(t: TPair) -> PopulationNode {
        PopulationNode {
            pair: PolyPair::trivial(),
            tdata: t,
            word: Vec::new(),
            certificates: Vec::new(),
        }
    }

    pub fn depth(&self) -> usize {
        self.word.len()
    }
}

/// Replace y_dir by the monic normalization of ỹ* + c·y_dir and append
/// the step.
pub fn reproduce(node: &PopulationNode, direction: i64, constant: &Rat) -> Result<PopulationNode> {
    let fam = fertility(&node.pair, &node.tdata, direction)?;
    let raw = fam.member(constant);
    let dropped = raw.deg() < fam.generic_degree();
    let (newy, lc) = raw.monic();
    let mut node2 = node.clone();
    node2.pair = node.pair.with_coordinate(direction, newy);
    node2.word.push(ReproductionStep {
        direction: direction.rem_euclid(2),
        constant: constant.clone(),
        degree_dropped: dropped,
    });
    node2.certificates.push(WronskianCertificate {
        direction: direction.rem_euclid(2),
        scale: lc,
    });
    Ok(node2)
}

/// All nodes reachable from (1,1) by alternating-direction words of
/// length ≤ depth, with family constants drawn from `constants`.
/// Consecutive same-direction steps are collapsed (they stay inside one
/// family), so alternating words are a complete set of witnesses.
pub fn enumerate_population(
    t: &TPair,
    depth: usize,
    constants: &[Rat],
) -> Result<Vec<PopulationNode>> {
    let mut out = vec![PopulationNode::root(t.clone())];
    let mut frontier = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &idx in &frontier {
            let dirs: Vec<i64> = match out[idx].word.last() {
                None => vec![0, 1],
                Some(step) => vec![1 - step.direction],
            };
            for dir in dirs {
                for c in constants {
                    let child = reproduce(&out[idx].clone(), dir, c)?;
                    out.push(child);
                    next.push(out.len() - 1);
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// Degrees forced by the shifted reflection sᵢ· when a reproduction in
/// direction i changes the degree; used to cross-check solver output.
pub fn weyl_degree_predict(
    weights: &[WeightVector],
    degs: (i64, i64),
    direction: usize,
) -> (i64, i64) {
    let lambda = weights
        .iter()
        .fold(WeightVector::zero(), |acc, w| acc.add(w));
    let v = lambda
        .sub(&WeightVector::alpha(0).scale(&rat(degs.0)))
        .sub(&WeightVector::alpha(1).scale(&rat(degs.1)));
    let v2 = v.shifted_reflect(direction);
    let diff = v2.sub(&lambda);
    // diff = −d0'·α0 − d1'·α1: δ-coordinate gives d0', ω0-coordinate d1'.
    let d0 = -diff.cdelta.clone();
    let d1 = d0.clone() + diff.c0.clone() / rat(2);
    let check = WeightVector::alpha(0)
        .scale(&-d0.clone())
        .add(&WeightVector::alpha(1).scale(&-d1.clone()));
    assert_eq!(check, diff, "degree change escaped span(α0, α1)");
    let to_int = |r: &Rat| -> i64 {
        assert!(r.is_integer(), "predicted degree is not an integer");
        r.to_integer().to_i64().expect("small degree")
    };
    (to_int(&d0), to_int(&d1))
}

fn eval_complex(p: &Poly, z: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * z + c.to_f64().unwrap_or(0.0);
    }
    acc
}

/// Numeric check of the Bethe ansatz equations: roots y₀, y₁, evaluates
/// both families of left-hand sides and returns the maximum absolute
/// value. The weight sums Σ l_r/(s−z_r) are evaluated as T₀'(s)/(2T₀(s)),
/// which avoids isolating the roots of T.
pub fn bethe_residuals(pair: &PolyPair, t: &TPair, tol: &Rat) -> Result<f64> {
    let report = is_generic(pair, t);
    if !report.generic {
        return Err(Error::NotGeneric {
            certificate: report.certificate.unwrap_or_default(),
        });
    }
    let s_roots = roots_numeric(pair.y(0), tol)?;
    let t_roots = roots_numeric(pair.y(1), tol)?;
    let one_side = |own: &[Complex64], other: &[Complex64], tpoly: &Poly| -> f64 {
        let mut worst = 0.0_f64;
        for (i, &si) in own.iter().enumerate() {
            let mut lhs = Complex64::zero();
            for (j, &sj) in own.iter().enumerate() {
                if i != j {
                    lhs += (si - sj).inv();
                }
            }
            for &tj in other {
                lhs -= (si - tj).inv();
            }
            let tv = eval_complex(tpoly, si);
            let td = eval_complex(&tpoly.derivative(), si);
            lhs -= td / (2.0 * tv);
            worst = worst.max(lhs.norm());
        }
        worst
    };
    let r0 = one_side(&s_roots, &t_roots, t.t(0));
    let r1 = one_side(&t_roots, &s_roots, t.t(1));
    Ok(r0.max(r1))
}

/// ((f₀y₀, f₁y₁), (T₀f₀²/f₁², T₁f₁²/f₀²)); errors when a T-candidate is
/// not a polynomial.
pub fn multiply_pair(
    pair: &PolyPair,
    t: &TPair,
    f0: &Poly,
    f1: &Poly,
) -> Result<(PolyPair, TPair)> {
    let f0sq = f0 * f0;
    let f1sq = f1 * f1;
    let t0 = (t.t(0) * &f0sq).exact_div(&f1sq).map_err(|_| Error::NotPolynomial {
        detail: format!("T0·f0²/f1² with f0 = {f0}, f1 = {f1}"),
    })?;
    let t1 = (t.t(1) * &f1sq).exact_div(&f0sq).map_err(|_| Error::NotPolynomial {
        detail: format!("T1·f1²/f0² with f0 = {f0}, f1 = {f1}"),
    })?;
    let pair2 = PolyPair::new(f0 * pair.y(0), f1 * pair.y(1))?;
    Ok((pair2, TPair::new(t0, t1)?))
}

/// Part of y whose roots are repeated (the product of (x−z)^ord over
/// z with ord ≥ 2).
fn repeated_part(y: &Poly) -> Poly {
    let mut out = Poly::one();
    for (q, e) in y.squarefree_decomposition() {
        if e >= 2 {
            out = &out * &q.pow(e as u64);
        }
    }
    out
}

/// Largest divisor of y supported on the zeros of s.
fn supported_part(y: &Poly, s: &Poly) -> Poly {
    let d = y.squarefree_part().gcd(&s.squarefree_part());
    if d.is_one() {
        return Poly::one();
    }
    y.gcd(&d.pow(y.deg().max(1) as u64))
}

/// Result of super-fertile normalization: pair° = (f₀·y₀, f₁·y₁) with
/// (pair, t) representing a point of a population of critical points.
#[derive(Clone, Debug)]
pub struct SuperfertileNormalization {
    pub f0: Poly,
    pub f1: Poly,
    pub pair: PolyPair,
    pub tdata: TPair,
}

/// Constructive inverse of [`multiply_pair`]: reduce by generic
/// reproductions until repeated-root orders stabilize, extract fᵢ as the
/// part of ŷᵢ supported on zeros of ŷᵢ₊₁Tᵢ°, and divide. Generic
/// constants are chosen by the deterministic scan c = 0, 1, 2, …
pub fn normalize_superfertile(
    pair0: &PolyPair,
    t0: &TPair,
) -> Result<SuperfertileNormalization> {
    let mut cur = pair0.clone();
    let excess: i64 = (0..2)
        .map(|i| cur.y(i).deg() - cur.y(i).squarefree_part().deg())
        .sum();
    let max_rounds = (excess + 2) as usize * 2 + 4;

    for _round in 0..max_rounds {
        let mut progressed = false;
        for i in 0..2i64 {
            let rep = repeated_part(cur.y(i));
            if rep.is_constant() {
                continue;
            }
            let fam = fertility(&cur, t0, i).map_err(|_| Error::NotSuperFertile {
                detail: format!("reproduction in direction {i} has no solution"),
            })?;
            if rep.divides(&fam.particular) {
                continue; // orders can no longer decrease in this direction
            }
            // generic member: minimal vanishing order everywhere
            let g = fam.particular.gcd(&fam.span);
            let support = (&fam.particular * &fam.span).squarefree_part();
            let mut chosen = None;
            for ci in 0..64i64 {
                let cand = fam.member(&rat(ci));
                let u = cand.exact_div(&g).expect("gcd divides family members");
                if u.gcd(&support).is_one() {
                    chosen = Some(cand);
                    break;
                }
            }
            let cand = chosen.ok_or_else(|| Error::InternalLimit {
                detail: "generic constant scan exhausted".into(),
            })?;
            cur = cur.with_coordinate(i, cand);
            progressed = true;
        }
        if !progressed {
            break;
        }
    }

    // Extract fᵢ from the stabilized pair.
    let mut f = [Poly::one(), Poly::one()];
    for i in 0..2i64 {
        let s = cur.y(i + 1) * t0.t(i);
        f[i as usize] = supported_part(cur.y(i), &s);
    }
    let [f0, f1] = f;

    let f0sq = &f0 * &f0;
    let f1sq = &f1 * &f1;
    let t_new0 = (t0.t(0) * &f1sq).exact_div(&f0sq).map_err(|_| Error::NotPolynomial {
        detail: format!("T0°·f1²/f0² with f0 = {f0}"),
    })?;
    let t_new1 = (t0.t(1) * &f0sq).exact_div(&f1sq).map_err(|_| Error::NotPolynomial {
        detail: format!("T1°·f0²/f1² with f1 = {f1}"),
    })?;
    let tdata = TPair::new(t_new0, t_new1)?;

    // fᵢ divides every i-th coordinate in the reproduced set, in
    // particular the input itself.
    let y0 = pair0.y(0).exact_div(&f0).map_err(|_| Error::NotSuperFertile {
        detail: "extracted f0 does not divide y0°".into(),
    })?;
    let y1 = pair0.y(1).exact_div(&f1).map_err(|_| Error::NotSuperFertile {
        detail: "extracted f1 does not divide y1°".into(),
    })?;
    let pair = PolyPair::new(y0, y1)?;

    // Certificate: the reduced stabilized pair is generic for the new T.
    let reduced = PolyPair::new(
        cur.y(0).exact_div(&f0).map_err(|_| Error::NotSuperFertile {
            detail: "extracted f0 does not divide the reduced pair".into(),
        })?,
        cur.y(1).exact_div(&f1).map_err(|_| Error::NotSuperFertile {
            detail: "extracted f1 does not divide the reduced pair".into(),
        })?,
    )?;
    let report = is_generic(&reduced, &tdata);
    if !report.generic {
        return Err(Error::NotSuperFertile {
            detail: format!(
                "reduced pair is not generic: {}",
                report.certificate.unwrap_or_default()
            ),
        });
    }
    if !is_fertile(&pair, &tdata) {
        return Err(Error::NotSuperFertile {
            detail: "divided pair is not fertile for the extracted T".into(),
        });
    }

    Ok(SuperfertileNormalization {
        f0,
        f1,
        pair,
        tdata,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_i64s(cs)
    }

    fn tp(t0: &[i64], t1: &[i64]) -> TPair {
        TPair::new(p(t0), p(t1)).unwrap()
    }

    fn pp(y0: &[i64], y1: &[i64]) -> PolyPair {
        PolyPair::new(p(y0), p(y1)).unwrap()
    }

    #[test]
    fn test_is_generic_examples() {
        assert!(is_generic(&pp(&[1], &[1]), &tp(&[1], &[1])).generic);
        let r = is_generic(&pp(&[0, 0, 0, 1], &[1]), &tp(&[0, 0, 1], &[1]));
        assert!(!r.generic);
        // x^3 is not squarefree, which is the first check to fire
        assert_eq!(r.certificate.as_deref(), Some("gcd(y0, y0') = x^2"));
        let r = is_generic(&pp(&[0, 1], &[0, 1]), &tp(&[1], &[1]));
        assert!(!r.generic);
        assert_eq!(r.certificate.as_deref(), Some("gcd(y0, y1) = x"));
    }

    #[test]
    fn test_solve_reproduction_examples() {
        // Wr(1, ỹ) = 1: family x + c
        let fam = solve_reproduction(&Poly::one(), &Poly::one()).unwrap();
        assert_eq!(fam.particular, Poly::x());
        assert_eq!(fam.span, Poly::one());
        // Wr(1, ỹ) = x^2: family x^3/3 + c
        let fam = solve_reproduction(&Poly::one(), &p(&[0, 0, 1])).unwrap();
        assert_eq!(
            fam.particular,
            Poly::from_coeffs(vec![rat(0), rat(0), rat(0), ratio(1, 3)])
        );
        // Wr(x, ỹ) = x^2: x·ỹ' − ỹ = x², family x² + c·x
        let fam = solve_reproduction(&Poly::x(), &p(&[0, 0, 1])).unwrap();
        assert_eq!(fam.particular, p(&[0, 0, 1]));
        assert_eq!(wronskian2(&Poly::x(), &fam.member(&rat(5))), p(&[0, 0, 1]));
    }

    #[test]
    fn test_reproduction_system_by_hand() {
        // ỹ = ax² + bx + c with x·ỹ' − ỹ = x² forces a = 1, c = 0, b free
        let fam = solve_reproduction(&Poly::x(), &p(&[0, 0, 1])).unwrap();
        assert_eq!(fam.particular.coeff(2), rat(1));
        assert_eq!(fam.particular.coeff(0), rat(0));
        assert_eq!(fam.span, Poly::x());
    }

    #[test]
    fn test_fertility_examples() {
        let t = tp(&[1], &[1]);
        let pair = PolyPair::trivial();
        assert!(is_fertile(&pair, &t));
        assert!(is_critical(&pair, &t));

        // ((x^3, 1), (x^2, 1)): both Wronskian systems happen to be
        // solvable (direction 0: Wr(x^3, -1/3) = x^2), so the pair is
        // fertile but not generic, hence not critical.
        let pair = pp(&[0, 0, 0, 1], &[1]);
        let t = tp(&[0, 0, 1], &[1]);
        let fam = fertility(&pair, &t, 0).unwrap();
        assert_eq!(fam.particular, Poly::constant(ratio(-1, 3)));
        assert!(is_fertile(&pair, &t));
        assert!(!is_critical(&pair, &t));

        // trivial pair is critical for every T
        assert!(is_critical(&PolyPair::trivial(), &tp(&[0, 0, 1], &[0, 0, 1])));
    }

    #[test]
    fn test_reproduce_examples() {
        let root = PopulationNode::root(tp(&[1], &[1]));
        let n1 = reproduce(&root, 0, &rat(0)).unwrap();
        assert_eq!(n1.pair, pp(&[0, 1], &[1]));

        // ((x,1),(1,1)) direction 1, c = 0: Wr(1, ỹ) = x² gives x³/3,
        // monic representative x³
        let node = PopulationNode {
            pair: pp(&[0, 1], &[1]),
            tdata: tp(&[1], &[1]),
            word: vec![],
            certificates: vec![],
        };
        let n2 = reproduce(&node, 1, &rat(0)).unwrap();
        assert_eq!(n2.pair, pp(&[0, 1], &[0, 0, 0, 1]));
        assert_eq!(n2.certificates[0].scale, ratio(1, 3));
    }

    #[test]
    fn test_double_reproduction_stays_in_family() {
        // reproducing twice in the same direction lands inside the
        // one-step family
        let root = PopulationNode::root(tp(&[1], &[1]));
        let n1 = reproduce(&root, 0, &rat(1)).unwrap();
        let n2 = reproduce(&n1, 0, &rat(2)).unwrap();
        let fam = fertility(&root.pair, &root.tdata, 0).unwrap();
        // n2.pair.y0 must be a monic member of fam: κ·y − c·span = ỹ*
        let y = n2.pair.y(0);
        let nrows = (y.deg().max(fam.generic_degree()) + 1) as usize;
        let mut a = vec![vec![Rat::zero(); 2]; nrows];
        let mut b = vec![Rat::zero(); nrows];
        for r in 0..nrows {
            a[r][0] = y.coeff(r);
            a[r][1] = -fam.span.coeff(r);
            b[r] = fam.particular.coeff(r);
        }
        assert!(
            solve_rational(&a, &b).is_solvable(),
            "double reproduction escaped the family"
        );
    }

    #[test]
    fn test_enumerate_population_depth1() {
        let nodes = enumerate_population(&tp(&[1], &[1]), 1, &[rat(0)]).unwrap();
        let pairs: Vec<&PolyPair> = nodes.iter().map(|n| &n.pair).collect();
        assert_eq!(pairs.len(), 3);
        assert!(pairs.contains(&&pp(&[1], &[1])));
        assert!(pairs.contains(&&pp(&[0, 1], &[1])));
        assert!(pairs.contains(&&pp(&[1], &[0, 1])));

        // T = (x^2, 1): direction 0 gives x^3, direction 1 gives x
        let nodes = enumerate_population(&tp(&[0, 0, 1], &[1]), 1, &[rat(0)]).unwrap();
        let pairs: Vec<&PolyPair> = nodes.iter().map(|n| &n.pair).collect();
        assert!(pairs.contains(&&pp(&[0, 0, 0, 1], &[1])));
        assert!(pairs.contains(&&pp(&[1], &[0, 1])));
    }

    #[test]
    fn test_weyl_degree_predict_examples() {
        // T = (1,1), degs (0,0), direction 0 -> (1,0)
        let t = tp(&[1], &[1]);
        assert_eq!(weyl_degree_predict(&t.weight_list(), (0, 0), 0), (1, 0));
        // T = (x^2, 1): μ = 2ω0 at 0, degs (0,0), direction 0 -> (3,0)
        let t = tp(&[0, 0, 1], &[1]);
        assert_eq!(weyl_degree_predict(&t.weight_list(), (0, 0), 0), (3, 0));
        // involution
        let t = tp(&[0, 0, 1], &[0, 0, 1]);
        let w = t.weight_list();
        let there = weyl_degree_predict(&w, (2, 5), 1);
        assert_eq!(weyl_degree_predict(&w, there, 1), (2, 5));
    }

    #[test]
    fn test_bethe_residuals_trivial() {
        let tol = ratio(1, 100_000_000);
        assert_eq!(
            bethe_residuals(&PolyPair::trivial(), &tp(&[1], &[1]), &tol).unwrap(),
            0.0
        );
        // single root, no terms
        assert!(
            bethe_residuals(&pp(&[0, 1], &[1]), &tp(&[1], &[1]), &tol).unwrap() < 1e-12
        );
        let err = bethe_residuals(&pp(&[0, 1], &[0, 1]), &tp(&[1], &[1]), &tol);
        assert!(matches!(err, Err(Error::NotGeneric { .. })));
    }

    #[test]
    fn test_multiply_pair_examples() {
        let pair = PolyPair::trivial();
        let t = tp(&[1], &[1]);
        let (p2, t2) = multiply_pair(&pair, &t, &Poly::one(), &Poly::one()).unwrap();
        assert_eq!(p2, pair);
        assert_eq!(t2, t);

        let (p2, t2) = multiply_pair(&pair, &t, &Poly::x(), &Poly::x()).unwrap();
        assert_eq!(p2, pp(&[0, 1], &[0, 1]));
        assert_eq!(t2, t);

        let t = tp(&[0, 0, 1], &[1]);
        let err = multiply_pair(&pair, &t, &Poly::x(), &Poly::one());
        assert!(matches!(err, Err(Error::NotPolynomial { .. })));
    }

    #[test]
    fn test_normalize_superfertile_trivial_and_common_factor() {
        // (1,1) with any T: f = (1,1), same pair
        let t = tp(&[0, 0, 1], &[1]);
        let n = normalize_superfertile(&PolyPair::trivial(), &t).unwrap();
        assert!(n.f0.is_one() && n.f1.is_one());
        assert_eq!(n.pair, PolyPair::trivial());
        assert_eq!(n.tdata, t);

        // (x, x) with T = (1,1): f = (x,x), pair (1,1), T unchanged
        let t = tp(&[1], &[1]);
        let n = normalize_superfertile(&pp(&[0, 1], &[0, 1]), &t).unwrap();
        assert_eq!(n.f0, Poly::x());
        assert_eq!(n.f1, Poly::x());
        assert_eq!(n.pair, PolyPair::trivial());
        assert_eq!(n.tdata, t);
    }

    #[test]
    fn test_normalize_superfertile_round_trip() {
        // multiply a depth-2 node by (f0, f1) = (x, 1) and recover it
        let t = tp(&[0, 0, 1], &[1]);
        let root = PopulationNode::root(t.clone());
        let n1 = reproduce(&root, 1, &rat(0)).unwrap();
        let n2 = reproduce(&n1, 0, &rat(1)).unwrap();
        // equal multipliers always keep T polynomial
        let f0 = p(&[1, 1]); // x + 1
        let f1 = p(&[1, 1]);
        let (pair0, t0) = multiply_pair(&n2.pair, &t, &f0, &f1).unwrap();
        assert_eq!(t0, t);
        let n = normalize_superfertile(&pair0, &t0).unwrap();
        assert_eq!(n.f0, f0);
        assert_eq!(n.f1, f1);
        assert_eq!(n.pair, n2.pair);
        assert_eq!(n.tdata, t);
    }
}
