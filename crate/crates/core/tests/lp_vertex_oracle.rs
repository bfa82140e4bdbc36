//! Simplex results against exhaustive vertex enumeration on small boxes.

mod common;

use common::{q, rand_rational};
use minmod_core::lpsolve::Relation;
use minmod_core::{Covector, LinearProgram, LpResult, Rational};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Solves the square system exactly; `None` when singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone() / a[col][col].clone();
                let pivot = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot) {
                    *x -= p.clone() * f.clone();
                }
                let v = b[col].clone() * f;
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| b[i].clone() / a[i][i].clone()).collect())
}

/// Minimum over all feasible vertices; `None` when no vertex is feasible.
fn vertex_minimum(lp: &LinearProgram) -> Option<Rational> {
    let n = lp.variables();
    let mut planes: Vec<(Vec<Rational>, Rational)> = lp
        .constraints
        .iter()
        .map(|c| (c.row.clone(), c.rhs.clone()))
        .collect();
    for (j, b) in lp.bounds.iter().enumerate() {
        let unit: Vec<Rational> = (0..n)
            .map(|k| if k == j { Rational::one() } else { Rational::zero() })
            .collect();
        for v in [&b.lower, &b.upper].into_iter().flatten() {
            planes.push((unit.clone(), v.clone()));
        }
    }
    let mut best: Option<Rational> = None;
    let m = planes.len();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let a = idx.iter().map(|&i| planes[i].0.clone()).collect();
        let b = idx.iter().map(|&i| planes[i].1.clone()).collect();
        if let Some(x) = solve_square(a, b) {
            if lp.is_feasible(&x) {
                let val: Rational = lp
                    .objective
                    .iter()
                    .zip(&x)
                    .map(|(c, v)| c.clone() * v.clone())
                    .sum();
                if best.as_ref().is_none_or(|b| &val < b) {
                    best = Some(val);
                }
            }
        }
        // next combination
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if idx[i] < m - n + i {
                idx[i] += 1;
                for k in i + 1..n {
                    idx[k] = idx[k - 1] + 1;
                }
                break;
            }
        }
    }
}

fn random_boxed_program(rng: &mut ChaCha8Rng) -> LinearProgram {
    let n = rng.gen_range(1..=3);
    let mut lp = LinearProgram::new(n).minimize(
        Covector::new((0..n).map(|_| rand_rational(rng, 3, 4)).collect()).unwrap(),
    );
    for _ in 0..rng.gen_range(0..=4) {
        let row = (0..n).map(|_| rand_rational(rng, 3, 3)).collect();
        let rel = match rng.gen_range(0..5) {
            0 => Relation::Eq,
            1 | 2 => Relation::Le,
            _ => Relation::Ge,
        };
        lp = lp.constraint(row, rel, rand_rational(rng, 2, 3));
    }
    for j in 0..n {
        let lo = rand_rational(rng, 3, 2);
        let hi = lo.clone() + rand_rational(rng, 2, 2).abs();
        lp = lp.bound(j, Some(lo), Some(hi));
    }
    lp
}

#[test]
fn simplex_matches_vertex_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut optimal = 0;
    let mut infeasible = 0;
    for case in 0..400 {
        let lp = random_boxed_program(&mut rng);
        let res = lp.solve().unwrap();
        match (vertex_minimum(&lp), &res) {
            (Some(v), LpResult::Optimal { value, point }) => {
                assert_eq!(&v, value, "case {case}\n{}", lp.dump());
                assert!(lp.is_feasible(point.as_slice()), "case {case}\n{}", lp.dump());
                let resub: Rational = lp
                    .objective
                    .iter()
                    .zip(point.iter())
                    .map(|(c, x)| c.clone() * x.clone())
                    .sum();
                assert_eq!(&resub, value);
                optimal += 1;
            }
            (None, LpResult::Infeasible) => infeasible += 1,
            (oracle, got) => panic!("case {case}: oracle {oracle:?}, simplex {got:?}\n{}", lp.dump()),
        }
    }
    assert!(optimal > 100 && infeasible > 10, "{optimal} optimal, {infeasible} infeasible");
}

#[test]
fn repeated_and_threaded_solves_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let programs: Vec<LinearProgram> = (0..40).map(|_| random_boxed_program(&mut rng)).collect();
    let serial: Vec<_> = programs.iter().map(|lp| lp.solve().unwrap()).collect();
    let threaded: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = programs
            .iter()
            .map(|lp| s.spawn(move || lp.solve().unwrap()))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert_eq!(serial, threaded);
}

#[test]
fn dump_reproduces_random_programs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let lp = random_boxed_program(&mut rng);
        let back = LinearProgram::from_dump(&lp.dump()).unwrap();
        assert_eq!(back, lp);
        assert_eq!(back.solve().unwrap(), lp.solve().unwrap());
    }
    assert_eq!(q(1, 2), q(2, 4));
}
