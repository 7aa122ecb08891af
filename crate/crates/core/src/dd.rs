//! Double description: extreme rays of a pointed cone `{y : A y >= 0}`.
//!
//! Constraints are inserted one at a time in input order. Adjacency of a
//! positive/negative ray pair is decided combinatorially from zero sets,
//! which is exact as long as every stored ray is extreme, and that holds
//! after each insertion.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    dot, integer_rank, primitive, primitive_from_rational, solve_rational, to_rational, IntVector, Rational,
};

struct Ray {
    v: IntVector,
    zeros: Vec<bool>,
}

/// Extreme rays, as primitive integer vectors, of `{y in Q^dim : a_i . y >= 0}`.
/// Fails with `DegenerateCone` unless the constraint rows have full rank
/// (the cone is pointed).
pub fn extreme_rays(constraints: &[IntVector], dim: usize) -> Result<Vec<IntVector>> {
    let m = constraints.len();
    let mut basis: Vec<usize> = Vec::with_capacity(dim);
    for (i, a) in constraints.iter().enumerate() {
        assert_eq!(a.len(), dim, "constraint of wrong dimension");
        if basis.len() == dim {
            break;
        }
        let mut trial: Vec<IntVector> = basis.iter().map(|&b| constraints[b].clone()).collect();
        trial.push(a.clone());
        if integer_rank(&trial) == trial.len() {
            basis.push(i);
        }
    }
    if basis.len() < dim {
        return Err(Error::DegenerateCone);
    }

    let b_rat: Vec<_> = basis.iter().map(|&i| to_rational(&constraints[i])).collect();
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    for j in 0..dim {
        let e: Vec<Rational> =
            (0..dim).map(|k| if k == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect();
        let sol = solve_rational(&b_rat, &e).expect("basis rows are independent");
        let v = primitive_from_rational(&sol);
        let mut zeros = vec![false; m];
        for (k, &bi) in basis.iter().enumerate() {
            zeros[bi] = k != j;
        }
        rays.push(Ray { v, zeros });
    }

    let mut processed: Vec<bool> = vec![false; m];
    for &b in &basis {
        processed[b] = true;
    }

    for i in 0..m {
        if processed[i] {
            continue;
        }
        let a = &constraints[i];
        let values: Vec<_> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();

        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                if !adjacent(&rays, p, n, &processed, dim) {
                    continue;
                }
                let v: IntVector =
                    rays[n].v.iter().zip(&rays[p].v).map(|(x, y)| &values[p] * x - &values[n] * y).collect();
                let mut zeros: Vec<bool> = rays[p].zeros.iter().zip(&rays[n].zeros).map(|(x, y)| *x && *y).collect();
                zeros[i] = true;
                next.push(Ray { v: primitive(&v), zeros });
            }
        }
        let old = std::mem::take(&mut rays);
        for (k, mut r) in old.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            r.zeros[i] = values[k].is_zero();
            rays.push(r);
        }
        rays.extend(next);
        processed[i] = true;
    }
    Ok(rays.into_iter().map(|r| r.v).collect())
}

fn adjacent(rays: &[Ray], p: usize, n: usize, processed: &[bool], dim: usize) -> bool {
    let common: Vec<bool> =
        rays[p].zeros.iter().zip(&rays[n].zeros).zip(processed).map(|((x, y), done)| *x && *y && *done).collect();
    let count = common.iter().filter(|&&c| c).count();
    if count + 2 < dim {
        return false;
    }
    !rays.iter().enumerate().any(|(k, r)| k != p && k != n && common.iter().zip(&r.zeros).all(|(c, z)| !*c || *z))
}
