//! Exact matrices over the rationals and over prime fields.
//!
//! Ranks over Q run through fraction-free Bareiss elimination on an
//! integer-scaled copy of the matrix; ranks over F_p through plain
//! Gaussian elimination with modular inverses. Both are exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::primes::is_prime;

/// Rectangular matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                got: data.len(),
            });
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch {
                    rows: r,
                    cols: c,
                    got: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| BigRational::from_integer(x.into())));
        }
        RationalMatrix::new(r, c, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    /// Row-by-row scaling to integers; scaling rows never changes rank.
    fn to_integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let mut lcm = BigInt::one();
                for c in 0..self.cols {
                    lcm = lcm.lcm(self.get(r, c).denom());
                }
                (0..self.cols)
                    .map(|c| {
                        let e = self.get(r, c);
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect()
            })
            .collect()
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RationalMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let entries: Vec<Vec<String>> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| {
                        let e = self.get(r, c);
                        if e.denom().is_one() {
                            e.numer().to_string()
                        } else {
                            format!("{}/{}", e.numer(), e.denom())
                        }
                    })
                    .collect()
            })
            .collect();
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// Fraction-free (Bareiss) elimination over the integers. Divisions by
/// the previous pivot are exact; the debug assertion guards that.
pub(crate) fn rank_int_bareiss(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                debug_assert!((&num % &prev).is_zero());
                a[r][c] = num / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Exact rank over Q.
pub fn rank_rational(m: &RationalMatrix) -> usize {
    rank_int_bareiss(m.to_integer_rows())
}

/// i128 variant of the Bareiss elimination for small matrices with small
/// entries; callers must ensure intermediate minors stay in range (the
/// choice-matrix search guards |value| <= 1000 and n <= 7).
pub(crate) fn rank_i128(mut a: Vec<Vec<i128>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = a[rank][col] * a[r][c] - a[r][col] * a[rank][c];
                debug_assert_eq!(num % prev, 0);
                a[r][c] = num / prev;
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
    }
    rank
}

/// Matrix over F_p with entries reduced into `[0, p)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PrimeFieldMatrix {
    pub fn new(p: u64, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::CompositeModulus(p));
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                got: data.len(),
            });
        }
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(PrimeFieldMatrix { p, rows, cols, data })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    /// Reduces a rational matrix mod p. Fails if any denominator is
    /// divisible by p (no inverse).
    pub fn from_rational(m: &RationalMatrix, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::CompositeModulus(p));
        }
        let pb = BigInt::from(p);
        let mut data = Vec::with_capacity(m.rows() * m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let e = m.get(r, c);
                let den: BigInt = e.denom().mod_floor(&pb);
                let den = to_u64(&den);
                if den == 0 {
                    return Err(Error::HypothesisViolation(format!(
                        "denominator of entry ({r},{c}) is divisible by {p}"
                    )));
                }
                let num = to_u64(&e.numer().mod_floor(&pb));
                data.push(mulmod(num, inv_mod(den, p), p));
            }
        }
        PrimeFieldMatrix::new(p, m.rows(), m.cols(), data)
    }
}

fn to_u64(x: &BigInt) -> u64 {
    let (_, digits) = x.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

/// Modular inverse mod a prime, via Fermat.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Exact rank over F_p.
pub fn rank_mod_p(m: &PrimeFieldMatrix) -> usize {
    let p = m.p;
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| m.data[r * m.cols..(r + 1) * m.cols].to_vec())
        .collect();
    let rows = m.rows;
    let cols = m.cols;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = inv_mod(a[rank][col], p);
        for c in col..cols {
            a[rank][c] = mulmod(a[rank][c], inv, p);
        }
        for r in rank + 1..rows {
            let f = a[r][col];
            if f != 0 {
                for c in col..cols {
                    let sub = mulmod(f, a[rank][c], p);
                    a[r][c] = (a[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn rank_of_identity_and_ones() {
        let id = RationalMatrix::from_i64_rows(&[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
        ])
        .unwrap();
        assert_eq!(rank_rational(&id), 3);

        let ones = RationalMatrix::from_i64_rows(&[vec![1; 4]; 4]).unwrap();
        assert_eq!(rank_rational(&ones), 1);
    }

    #[test]
    fn rank_with_rational_entries() {
        // Second row is 3/2 times the first.
        let m = RationalMatrix::new(
            2,
            2,
            vec![
                BigRational::new(1.into(), 2.into()),
                BigRational::new(1.into(), 3.into()),
                BigRational::new(3.into(), 4.into()),
                BigRational::new(1.into(), 2.into()),
            ],
        )
        .unwrap();
        assert_eq!(rank_rational(&m), 1);
    }

    #[test]
    fn rank_of_zero_and_empty() {
        let z = RationalMatrix::zeros(3, 2);
        assert_eq!(rank_rational(&z), 0);
        let e = RationalMatrix::new(0, 0, vec![]).unwrap();
        assert_eq!(rank_rational(&e), 0);
    }

    #[test]
    fn prime_field_examples() {
        let id = PrimeFieldMatrix::new(2, 2, 2, vec![1, 0, 0, 1]).unwrap();
        assert_eq!(rank_mod_p(&id), 2);

        let ones = PrimeFieldMatrix::new(2, 2, 2, vec![1, 1, 1, 1]).unwrap();
        assert_eq!(rank_mod_p(&ones), 1);

        // [[1,2],[2,1]] mod 3: second row = 2 * first row.
        let m = PrimeFieldMatrix::new(3, 2, 2, vec![1, 2, 2, 1]).unwrap();
        assert_eq!(rank_mod_p(&m), 1);

        assert!(matches!(
            PrimeFieldMatrix::new(6, 1, 1, vec![1]),
            Err(Error::CompositeModulus(6))
        ));
    }

    #[test]
    fn reduction_mod_p_caps_rank() {
        let m = RationalMatrix::from_i64_rows(&[vec![1, 3], vec![3, 9]]).unwrap();
        // Rank 1 over Q, still 1 mod 5.
        assert_eq!(rank_rational(&m), 1);
        let mp = PrimeFieldMatrix::from_rational(&m, 5).unwrap();
        assert_eq!(rank_mod_p(&mp), 1);
    }

    #[test]
    fn negative_entries_reduce_correctly() {
        let m = RationalMatrix::from_i64_rows(&[vec![-1, 2], vec![4, -8]]).unwrap();
        let mp = PrimeFieldMatrix::from_rational(&m, 3).unwrap();
        assert_eq!(mp.get(0, 0), 2);
        assert_eq!(rank_mod_p(&mp), 1);
    }

    #[test]
    fn i128_rank_agrees() {
        let rows = vec![vec![0i128, 2, 3, 4], vec![2, 0, 3, 4], vec![3, 3, 0, 4], vec![4, 4, 4, 0]];
        let as_i64: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect();
        let m = RationalMatrix::from_i64_rows(&as_i64).unwrap();
        assert_eq!(rank_i128(rows), rank_rational(&m));
    }

    #[test]
    fn trace_and_symmetry() {
        let m = RationalMatrix::from_i64_rows(&[vec![1, 5], vec![5, 1]]).unwrap();
        assert!(m.is_symmetric());
        assert_eq!(m.trace(), rat(2));
    }
}
