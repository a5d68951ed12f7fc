//! Pfaffians of skew-symmetric matrices by first-row expansion.
//!
//! Expansion is memoized on the set of surviving indices, so an input of
//! size 2k costs at most `2^(2k)` subproblems.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::poly::Ring;

/// Pfaffian of the square skew array `a` (entries above the diagonal are read).
///
/// `a` must have even size at most 64; skewness is the caller's responsibility.
pub fn pfaffian_generic<T: Ring>(a: &[Vec<T>], zero: &T) -> T {
    let n = a.len();
    assert!(n % 2 == 0 && n <= 64, "pfaffian needs an even size at most 64");
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    expand(a, full, zero, &mut memo)
}

fn expand<T: Ring>(a: &[Vec<T>], set: u64, zero: &T, memo: &mut HashMap<u64, T>) -> T {
    if set == 0 {
        return zero.one_like();
    }
    if let Some(v) = memo.get(&set) {
        return v.clone();
    }
    let first = set.trailing_zeros() as usize;
    let rest = set & !(1u64 << first);
    let mut acc = zero.clone();
    let mut bits = rest;
    let mut position = 0;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let entry = &a[first][j];
        if !entry.is_zero_elem() {
            let minor = expand(a, rest & !(1u64 << j), zero, memo);
            let term = entry.mul_r(&minor);
            acc = if position % 2 == 0 { acc.add_r(&term) } else { acc.sub_r(&term) };
        }
        position += 1;
    }
    memo.insert(set, acc.clone());
    acc
}

/// Pfaffian of an even-size skew matrix, with `Pf([[0,1],[-1,0]]) = 1`.
pub fn pfaffian(m: &Matrix) -> Result<Scalar> {
    if m.rows() != m.cols() || m.rows() % 2 == 1 {
        return Err(Error::Convention(format!(
            "pfaffian needs an even square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_skew() {
        return Err(Error::Convention("pfaffian of a non-skew matrix".into()));
    }
    let rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    Ok(pfaffian_generic(&rows, &Scalar::zero(m.field())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use rand::SeedableRng;

    fn random_skew(field: FieldSpec, n: usize, rng: &mut impl rand::Rng) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = Scalar::random(field, rng);
                m.set(j, i, -&v);
                m.set(i, j, v);
            }
        }
        m
    }

    #[test]
    fn convention_anchor() {
        let q = FieldSpec::Rational;
        let m = Matrix::from_i64(q, &[vec![0, 1], vec![-1, 0]]);
        assert!(pfaffian(&m).unwrap().is_one());
        let b = Matrix::from_i64(
            q,
            &[vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]],
        );
        assert!(pfaffian(&b).unwrap().is_one());
        assert!(pfaffian(&Matrix::zeros(q, 3, 3)).is_err());
        assert!(pfaffian(&Matrix::identity(q, 2)).is_err());
    }

    #[test]
    fn square_is_determinant() {
        let f = FieldSpec::prime(101).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in [2, 4, 6, 8] {
            let m = random_skew(f, n, &mut rng);
            let pf = pfaffian(&m).unwrap();
            assert_eq!(&pf * &pf, m.determinant().unwrap());
        }
    }
}
