//! Exact linear solving.
//!
//! Over ℚ the forward elimination is fraction-free (Bareiss) on an
//! integer-scaled matrix — intermediate swell is the dominant cost in
//! reproduction solving, and Bareiss keeps every intermediate entry a
//! minor of the input. Over a quotient ring the elimination is ordinary
//! Gauss with invertibility tests, so zero-divisor pivots surface as
//! [`Error::SplitRequired`].

use super::poly::{Poly, Rat};
use super::quotient::QrElem;
use crate::error::Result;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Outcome of solving A·x = b.
#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome<T> {
    NoSolution,
    Solution {
        particular: Vec<T>,
        nullspace: Vec<Vec<T>>,
    },
}

impl<T> SolveOutcome<T> {
    pub fn is_solvable(&self) -> bool {
        matches!(self, SolveOutcome::Solution { .. })
    }
}

/// Solve a rational system exactly. `a` is row-major, `b` the right-hand
/// side; returns a particular solution (free variables set to zero) and
/// a basis of the null space.
pub fn solve_rational(a: &[Vec<Rat>], b: &[Rat]) -> SolveOutcome<Rat> {
    let nrows = a.len();
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    assert_eq!(b.len(), nrows);

    // Integer-scale each augmented row.
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(nrows);
    for (row, rhs) in a.iter().zip(b) {
        debug_assert_eq!(row.len(), ncols);
        let mut den = BigInt::one();
        for c in row.iter().chain(std::iter::once(rhs)) {
            den = den.lcm(c.denom());
        }
        let f = Rat::from_integer(den);
        let mut zr: Vec<BigInt> = row.iter().map(|c| (c * &f).to_integer()).collect();
        zr.push((rhs * &f).to_integer());
        m.push(zr);
    }

    // Fraction-free elimination with pivot bookkeeping.
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prev = BigInt::one();
    let mut k = 0usize;
    for col in 0..ncols {
        let Some(r) = (k..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(k, r);
        for i in k + 1..nrows {
            for j in col + 1..=ncols {
                let t = &m[k][col] * &m[i][j] - &m[i][col] * &m[k][j];
                let (q, rem) = t.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division not exact");
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[k][col].clone();
        pivots.push((k, col));
        k += 1;
        if k == nrows {
            break;
        }
    }

    // Consistency: rows below the last pivot must have zero rhs.
    for row in m.iter().skip(k) {
        if !row[ncols].is_zero() {
            return SolveOutcome::NoSolution;
        }
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let is_pivot = |c: usize| pivot_cols.contains(&c);

    // Back-substitution in ℚ for a given assignment of free variables.
    let back_substitute = |free: &dyn Fn(usize) -> Rat, use_rhs: bool| -> Vec<Rat> {
        let mut x = vec![Rat::zero(); ncols];
        for c in 0..ncols {
            if !is_pivot(c) {
                x[c] = free(c);
            }
        }
        for &(r, c) in pivots.iter().rev() {
            let mut acc = if use_rhs {
                Rat::from_integer(m[r][ncols].clone())
            } else {
                Rat::zero()
            };
            for j in c + 1..ncols {
                if m[r][j].is_zero() || x[j].is_zero() {
                    continue;
                }
                acc -= Rat::from_integer(m[r][j].clone()) * &x[j];
            }
            x[c] = acc / Rat::from_integer(m[r][c].clone());
        }
        x
    };

    let particular = back_substitute(&|_| Rat::zero(), true);
    let mut nullspace = Vec::new();
    for fc in 0..ncols {
        if is_pivot(fc) {
            continue;
        }
        let v = back_substitute(
            &|c| if c == fc { Rat::one() } else { Rat::zero() },
            false,
        );
        nullspace.push(v);
    }

    SolveOutcome::Solution {
        particular,
        nullspace,
    }
}

/// Solve a system over a quotient ring. Pivot selection needs
/// invertibility, so a nonzero zero-divisor pivot raises
/// [`crate::error::Error::SplitRequired`] for the caller to split on.
pub fn solve_quotient(
    a: &[Vec<QrElem>],
    b: &[QrElem],
    modulus: &Poly,
) -> Result<SolveOutcome<QrElem>> {
    let nrows = a.len();
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    assert_eq!(b.len(), nrows);
    let mut m: Vec<Vec<QrElem>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut k = 0usize;
    for col in 0..ncols {
        let Some(r) = (k..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(k, r);
        let inv = m[k][col].try_inv()?;
        for j in col..=ncols {
            m[k][j] = m[k][j].mul(&inv);
        }
        for i in 0..nrows {
            if i == k || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in col..=ncols {
                let t = f.mul(&m[k][j]);
                m[i][j] = m[i][j].sub(&t);
            }
        }
        pivots.push((k, col));
        k += 1;
        if k == nrows {
            break;
        }
    }

    for row in m.iter().skip(k) {
        if !row[ncols].is_zero() {
            return Ok(SolveOutcome::NoSolution);
        }
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut particular = vec![QrElem::zero(modulus); ncols];
    for &(r, c) in &pivots {
        particular[c] = m[r][ncols].clone();
    }
    let mut nullspace = Vec::new();
    for fc in 0..ncols {
        if pivot_cols.contains(&fc) {
            continue;
        }
        let mut v = vec![QrElem::zero(modulus); ncols];
        v[fc] = QrElem::one(modulus);
        for &(r, c) in &pivots {
            v[c] = m[r][fc].neg();
        }
        nullspace.push(v);
    }
    Ok(SolveOutcome::Solution {
        particular,
        nullspace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::{rat, ratio};

    fn rl(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn test_identity_system() {
        let a = vec![rl(&[1, 0]), rl(&[0, 1])];
        let b = rl(&[3, 4]);
        match solve_rational(&a, &b) {
            SolveOutcome::Solution {
                particular,
                nullspace,
            } => {
                assert_eq!(particular, rl(&[3, 4]));
                assert!(nullspace.is_empty());
            }
            _ => panic!("unique solution expected"),
        }
    }

    #[test]
    fn test_rank_deficient_consistent() {
        // x + y = 2 twice: particular + 1-dim null space
        let a = vec![rl(&[1, 1]), rl(&[2, 2])];
        let b = rl(&[2, 4]);
        match solve_rational(&a, &b) {
            SolveOutcome::Solution {
                particular,
                nullspace,
            } => {
                assert_eq!(particular[0].clone() + particular[1].clone(), rat(2));
                assert_eq!(nullspace.len(), 1);
                assert_eq!(nullspace[0][0].clone() + nullspace[0][1].clone(), rat(0));
            }
            _ => panic!("solvable"),
        }
    }

    #[test]
    fn test_inconsistent() {
        let a = vec![rl(&[1, 1]), rl(&[1, 1])];
        let b = rl(&[1, 2]);
        assert_eq!(solve_rational(&a, &b), SolveOutcome::NoSolution);
    }

    #[test]
    fn test_fractions() {
        // x/2 = 1/3 -> x = 2/3
        let a = vec![vec![ratio(1, 2)]];
        let b = vec![ratio(1, 3)];
        match solve_rational(&a, &b) {
            SolveOutcome::Solution { particular, .. } => {
                assert_eq!(particular[0], ratio(2, 3));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn test_quotient_solver_splits_on_zero_divisor_pivot() {
        use crate::error::Error;
        let q = Poly::from_i64s(&[0, -1, 1]); // t(t-1)
        let t = QrElem::generator(&q);
        let one = QrElem::one(&q);
        let a = vec![vec![t.clone()]];
        let b = vec![one];
        match solve_quotient(&a, &b, &q) {
            Err(Error::SplitRequired { factor }) => assert_eq!(factor, Poly::x()),
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn test_quotient_solver_field_case() {
        let q = Poly::from_i64s(&[-2, 0, 1]); // t^2 - 2
        let t = QrElem::generator(&q);
        // t·x = 1 -> x = t/2
        let a = vec![vec![t.clone()]];
        let b = vec![QrElem::one(&q)];
        match solve_quotient(&a, &b, &q).unwrap() {
            SolveOutcome::Solution { particular, .. } => {
                assert_eq!(particular[0], t.scale(&ratio(1, 2)));
            }
            _ => panic!(),
        }
    }
}
