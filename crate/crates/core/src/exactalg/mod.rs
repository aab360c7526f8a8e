//! Exact arithmetic foundation: rationals, dense polynomials over ℚ,
//! rational functions, quotient-ring elements with D5 splitting, Laurent
//! expansion, Wronskians, exact linear solving and the numeric root
//! oracle.
//!
//! All values are immutable after construction and every operation is a
//! pure function, so everything here is safe to use from multiple
//! threads.

mod det;
mod laurent;
mod linalg;
mod poly;
mod quotient;
mod ratfunc;
mod roots;

pub use det::poly_mat_det;
pub use laurent::{laurent_expand, laurent_expand_at_rat, LaurentSlice};
pub use linalg::{solve_quotient, solve_rational, SolveOutcome};
pub use poly::{rat, ratio, Poly, Rat};
pub use quotient::{for_each_class, QrElem, QrPoly};
pub use ratfunc::RationalFunction;
pub use roots::{rational_from_f64, roots_numeric};

use num_traits::Zero;
use std::cmp::Ordering;

/// Wr(f, g) = f·g′ − f′·g.
pub fn wronskian2(f: &Poly, g: &Poly) -> Poly {
    &(f * &g.derivative()) - &(&f.derivative() * g)
}

/// Wronskian of n polynomials: determinant of the n×n matrix whose r-th
/// row holds the (r−1)-th derivatives.
pub fn wronskian_n(fs: &[Poly]) -> Poly {
    assert!(!fs.is_empty(), "Wronskian of an empty list");
    let n = fs.len();
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(n);
    let mut current: Vec<Poly> = fs.to_vec();
    for r in 0..n {
        if r > 0 {
            current = current.iter().map(|p| p.derivative()).collect();
        }
        rows.push(current.clone());
    }
    poly_mat_det(&rows)
}

/// Antiderivative with prescribed constant term (free-function form of
/// [`Poly::antiderivative`]).
pub fn antiderivative(p: &Poly, c: &Rat) -> Poly {
    p.antiderivative(c)
}

/// Total ordering on polynomials (degree, then coefficients) used to make
/// enumeration outputs deterministic.
pub fn cmp_polys(a: &Poly, b: &Poly) -> Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for i in (0..=a.deg().max(0) as usize).rev() {
            let o = a.coeff(i).cmp(&b.coeff(i));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

/// Pairwise-coprime squarefree basis of the squarefree parts of the
/// inputs: every input is, up to a constant, a product of powers of basis
/// elements.
pub fn coprime_basis(inputs: &[Poly]) -> Vec<Poly> {
    fn insert(basis: &mut Vec<Poly>, f: Poly) {
        if f.is_constant() {
            return;
        }
        for i in 0..basis.len() {
            let d = basis[i].gcd(&f);
            if !d.is_one() {
                let g = basis.swap_remove(i);
                let g_rest = g.exact_div(&d).expect("gcd divides");
                let f_rest = f.exact_div(&d).expect("gcd divides");
                insert(basis, g_rest);
                insert(basis, d);
                insert(basis, f_rest);
                return;
            }
        }
        basis.push(f);
    }

    let mut basis = Vec::new();
    for p in inputs {
        if p.is_zero() || p.is_constant() {
            continue;
        }
        insert(&mut basis, p.squarefree_part());
    }
    basis.sort_by(cmp_polys);
    basis
}

/// Rational roots of q that can be certified exactly. Candidates come
/// from the numeric oracle and continued-fraction rationalization; a
/// candidate is kept only when q vanishes on it exactly, so the numeric
/// step can only miss roots, never fabricate them.
pub fn certified_rational_roots(q: &Poly) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::new();
    if q.is_constant() {
        return out;
    }
    let tol = ratio(1, 1_000_000_000_000);
    let Ok(approx) = roots_numeric(q, &tol) else {
        return out;
    };
    for z in approx {
        if z.im.abs() > 1e-6 {
            continue;
        }
        let Some(c) = rational_from_f64(z.re, 1_000_000) else {
            continue;
        };
        if q.eval(&c).is_zero() && !out.contains(&c) {
            out.push(c);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_i64s(cs)
    }

    #[test]
    fn test_wronskian2_examples() {
        // Wr(1, x) = 1
        assert_eq!(wronskian2(&Poly::one(), &Poly::x()), Poly::one());
        // Wr(x, x) = 0
        assert!(wronskian2(&Poly::x(), &Poly::x()).is_zero());
        // Wr(x^2, x^3+1) = x^4 - 2x, by expanding f g' - f' g by hand:
        // x^2·3x^2 − 2x·(x^3+1) = x^4 − 2x
        assert_eq!(
            wronskian2(&p(&[0, 0, 1]), &p(&[1, 0, 0, 1])),
            p(&[0, -2, 0, 0, 1])
        );
    }

    #[test]
    fn test_wronskian_n_small() {
        assert_eq!(wronskian_n(&[Poly::one()]), Poly::one());
        // Wr(1, g) = g'
        let g = p(&[5, 1, 3]);
        assert_eq!(wronskian_n(&[Poly::one(), g.clone()]), g.derivative());
        // 2x2 agrees with wronskian2
        let f = p(&[1, 2, 1]);
        assert_eq!(wronskian_n(&[f.clone(), g.clone()]), wronskian2(&f, &g));
    }

    #[test]
    fn test_wronskian_skew_and_scaling() {
        let f = p(&[1, 2]);
        let g = p(&[0, 0, 3]);
        let h = p(&[1, 1]);
        assert_eq!(wronskian2(&f, &g), -&wronskian2(&g, &f));
        // Wr(h f, h g) = h^2 Wr(f, g)
        assert_eq!(
            wronskian2(&(&h * &f), &(&h * &g)),
            &(&h * &h) * &wronskian2(&f, &g)
        );
    }

    #[test]
    fn test_coprime_basis() {
        // x^2(x-1), x(x+1) -> {x, x-1, x+1}
        let a = &p(&[0, 0, 1]) * &p(&[-1, 1]);
        let b = &p(&[0, 1]) * &p(&[1, 1]);
        let basis = coprime_basis(&[a, b]);
        assert_eq!(basis.len(), 3);
        for (i, f) in basis.iter().enumerate() {
            for g in &basis[i + 1..] {
                assert!(f.gcd(g).is_one());
            }
        }
    }

    #[test]
    fn test_certified_rational_roots() {
        // (x)(x-1)(2x+3) roots 0, 1, -3/2
        let q = &(&p(&[0, 1]) * &p(&[-1, 1])) * &p(&[3, 2]);
        let roots = certified_rational_roots(&q);
        assert_eq!(roots, vec![ratio(-3, 2), rat(0), rat(1)]);
        // irrational roots are simply not reported
        assert!(certified_rational_roots(&p(&[-2, 0, 1])).is_empty());
    }
}
