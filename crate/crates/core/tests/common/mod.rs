//! Shared generators for the integration suites.
#![allow(dead_code)]

use minmod_core::{Covector, Matrix, Operator, Rational, Scalar, Vector};
use rand::Rng;

pub fn q(p: i64, d: i64) -> Rational {
    Rational::ratio(p, d)
}

/// Rational in `[-max_abs, max_abs]` with denominator at most `max_den`.
pub fn rand_rational(rng: &mut impl Rng, max_abs: i64, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    q(rng.gen_range(-max_abs * d..=max_abs * d), d)
}

pub fn rand_vector(rng: &mut impl Rng, n: usize) -> Vector {
    Vector::new((0..n).map(|_| rand_rational(rng, 2, 6)).collect()).unwrap()
}

pub fn rand_covector(rng: &mut impl Rng, n: usize) -> Covector {
    Covector::new((0..n).map(|_| rand_rational(rng, 2, 6)).collect()).unwrap()
}

/// A structured operator tree of bounded depth.
pub fn rand_operator(rng: &mut impl Rng, n: usize, depth: u32) -> Operator {
    let leaf = depth == 0 || rng.gen_bool(0.4);
    let choice = if leaf { rng.gen_range(0..4) } else { rng.gen_range(4..6) };
    match choice {
        0 => Operator::dense(
            Matrix::from_rows(
                (0..n)
                    .map(|_| (0..n).map(|_| rand_rational(rng, 2, 4)).collect())
                    .collect(),
            )
            .unwrap(),
        ),
        1 => Operator::identity(n).unwrap(),
        2 => Operator::diagonal(rand_vector(rng, n)),
        3 => Operator::rank_one(rand_vector(rng, n), rand_covector(rng, n)).unwrap(),
        4 => {
            let parts = (0..rng.gen_range(2..=3))
                .map(|_| rand_operator(rng, n, depth - 1))
                .collect();
            Operator::sum(parts).unwrap()
        }
        _ => rand_operator(rng, n, depth - 1).scale(rand_rational(rng, 2, 5)),
    }
}

/// A point of the unit sphere: one coordinate at ±1, the rest in `[-1, 1]`.
pub fn rand_sphere_point(rng: &mut impl Rng, n: usize, max_den: i64) -> Vector {
    let k = rng.gen_range(0..n);
    let coords = (0..n)
        .map(|j| {
            if j == k {
                if rng.gen_bool(0.5) {
                    q(1, 1)
                } else {
                    q(-1, 1)
                }
            } else {
                rand_rational(rng, 1, max_den)
            }
        })
        .collect();
    Vector::new(coords).unwrap()
}
