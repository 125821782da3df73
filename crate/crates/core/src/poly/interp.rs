use num_bigint::BigInt;

use super::PolyError;
use crate::ring::IntDivRing;

/// Divided differences `f[x0], f[x0,x1], ...` of the given points.
pub fn newton_coefficients<R: IntDivRing>(points: &[(BigInt, R)]) -> Result<Vec<R>, PolyError> {
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(PolyError::DuplicateNode(x.clone()));
        }
    }
    let n = points.len();
    let mut d: Vec<R> = points.iter().map(|(_, v)| v.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let step = &points[i].0 - &points[i - j].0;
            let diff = d[i].sub(&d[i - 1]);
            d[i] = diff
                .div_integer(&step)
                .ok_or(PolyError::NonDivisibleRing(step))?;
        }
    }
    Ok(d)
}

/// Monomial coefficients `a_0..a_m` of the unique interpolant of degree at
/// most `m` through `m + 1` points, computed exactly.
pub fn vandermonde_solve<R: IntDivRing>(points: &[(BigInt, R)]) -> Result<Vec<R>, PolyError> {
    let d = newton_coefficients(points)?;
    let Some(last) = d.last() else {
        return Ok(Vec::new());
    };
    // Horner on the Newton form: c <- c * (y - x_k) + d_k
    let mut c: Vec<R> = vec![last.clone()];
    for k in (0..d.len() - 1).rev() {
        let xk = R::from_integer(&points[k].0);
        let mut next = vec![R::zero_elem(); c.len() + 1];
        for (j, cj) in c.iter().enumerate() {
            next[j + 1] = next[j + 1].add(cj);
            next[j] = next[j].sub(&cj.mul(&xk));
        }
        next[0] = next[0].add(&d[k]);
        c = next;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn pts(v: &[(i64, i64)]) -> Vec<(BigInt, BigRational)> {
        v.iter().map(|&(x, y)| (BigInt::from(x), q(y))).collect()
    }

    #[test]
    fn identity_line() {
        assert_eq!(vandermonde_solve(&pts(&[(2, 2), (3, 3)])).unwrap(), vec![q(0), q(1)]);
    }

    #[test]
    fn square() {
        assert_eq!(
            vandermonde_solve(&pts(&[(1, 1), (2, 4), (3, 9)])).unwrap(),
            vec![q(0), q(0), q(1)]
        );
    }

    #[test]
    fn duplicate_nodes_rejected() {
        assert_eq!(
            vandermonde_solve(&pts(&[(1, 1), (1, 2)])),
            Err(PolyError::DuplicateNode(1.into()))
        );
    }

    #[test]
    fn integer_ring_reports_non_divisibility() {
        let p: Vec<(BigInt, BigInt)> = vec![(0.into(), 0.into()), (2.into(), 1.into())];
        assert_eq!(vandermonde_solve(&p), Err(PolyError::NonDivisibleRing(2.into())));
    }
}
