//! Shared helpers for the integration suites: an independent rank oracle
//! (fraction-free elimination over big integers, no shared code with the
//! library's rational RREF) and seeded generators for random inputs.
#![allow(dead_code)] // each test binary uses its own subset

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use liederiv::{Matrix, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rank by Bareiss fraction-free elimination over `BigInt`, after
/// clearing each row's denominators. Divisions are exact by construction,
/// so the only arithmetic shared with the implementation under test is
/// big-integer multiplication.
pub fn bareiss_rank(m: &Matrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let mut lcm = BigInt::one();
            for c in 0..cols {
                let d = m[(r, c)].denom();
                lcm = &lcm / gcd(&lcm, d) * d;
            }
            (0..cols)
                .map(|c| {
                    let s = &m[(r, c)];
                    s.numer() * (&lcm / s.denom())
                })
                .collect()
        })
        .collect();
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..cols {
        let Some(pivot) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pivot);
        for r in row + 1..rows {
            for c in col + 1..cols {
                let t = &a[r][c] * &a[row][col] - &a[r][col] * &a[row][c];
                a[r][c] = t / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut x = a.abs();
    let mut y = b.abs();
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    if x.is_zero() {
        BigInt::one()
    } else {
        x
    }
}

/// Dense matrix with integer entries drawn from `-bound..=bound`.
pub fn random_int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| {
        Scalar::from_int(rng.gen_range(-bound..=bound))
    })
}

/// Dense matrix with small rational entries (denominators up to 4).
pub fn random_rational_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| {
        Scalar::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
    })
}

/// Matrix of known rank: `r` echelon seed rows with distinct pivot
/// columns, padded with random combinations of those rows. Rank is `r`
/// exactly, independent of the random choices.
pub fn random_known_rank(rng: &mut ChaCha8Rng, rows: usize, cols: usize, r: usize) -> Matrix {
    assert!(r <= rows && r <= cols);
    let mut seeds = Vec::with_capacity(r);
    for i in 0..r {
        let mut v = vec![Scalar::zero(); cols];
        v[i] = Scalar::one();
        for c in r..cols {
            v[c] = Scalar::from_int(rng.gen_range(-3..=3));
        }
        seeds.push(v);
    }
    let mut out = Vec::with_capacity(rows);
    for i in 0..rows {
        if i < r {
            out.push(seeds[i].clone());
        } else {
            let mut v = vec![Scalar::zero(); cols];
            for s in &seeds {
                let c = Scalar::from_int(rng.gen_range(-2..=2));
                for (dst, x) in v.iter_mut().zip(s) {
                    *dst += &(&c * x);
                }
            }
            out.push(v);
        }
    }
    // Shuffle rows so the echelon seeds are not conveniently on top.
    for i in (1..out.len()).rev() {
        let j = rng.gen_range(0..=i);
        out.swap(i, j);
    }
    Matrix::from_rows(out).expect("uniform widths")
}
