//! Test-only construction of random normal semigroups, independent of the
//! library's cone and lattice code.

#![allow(dead_code)]

use fsig_core::exact::Integer;
use fsig_core::semigroup::SemigroupPresentation;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Is `x` a nonnegative combination of the columns `cols` (d of them,
/// independent)? Cramer's rule in exact integers.
fn in_simplicial_cone(x: &[i64], cols: &[&[i64]]) -> Option<bool> {
    let d = x.len();
    let mut m = [[0i64; 3]; 3];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..d {
            m[i][j] = c[i];
        }
    }
    if d == 2 {
        m[2][2] = 1;
    }
    let det = det3(&m);
    if det == 0 {
        return None;
    }
    for j in 0..d {
        let mut mj = m;
        for i in 0..d {
            mj[i][j] = x[i];
        }
        let dj = det3(&mj);
        if dj * det.signum() < 0 {
            return Some(false);
        }
    }
    Some(true)
}

/// Carathéodory: `x ∈ cone(rays)` iff it lies in the cone of some
/// linearly independent d-subset.
fn in_cone(x: &[i64], rays: &[Vec<i64>]) -> bool {
    let d = x.len();
    let k = rays.len();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let cols: Vec<&[i64]> = idx.iter().map(|&i| rays[i].as_slice()).collect();
        if let Some(true) = in_simplicial_cone(x, &cols) {
            return true;
        }
        // next d-subset
        let mut p = d;
        loop {
            if p == 0 {
                return false;
            }
            p -= 1;
            if idx[p] < k - d + p {
                break;
            }
            if p == 0 {
                return false;
            }
        }
        idx[p] += 1;
        for q in p + 1..d {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

fn rank(rows: &[Vec<i64>], d: usize) -> usize {
    let mut best = 0;
    let k = rows.len();
    if d == 2 {
        for a in 0..k {
            if rows[a].iter().any(|&x| x != 0) {
                best = best.max(1);
            }
            for b in a + 1..k {
                if rows[a][0] * rows[b][1] - rows[a][1] * rows[b][0] != 0 {
                    return 2;
                }
            }
        }
        return best;
    }
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                let m = [
                    [rows[a][0], rows[a][1], rows[a][2]],
                    [rows[b][0], rows[b][1], rows[b][2]],
                    [rows[c][0], rows[c][1], rows[c][2]],
                ];
                if det3(&m) != 0 {
                    return 3;
                }
            }
        }
    }
    best
}

/// `L ∩ cone(u_1..u_k)` for a random cone in `N^d` (d in {2, 3}) and a
/// random lattice `L = {x : a.x ≡ 0 mod m}`. With every `u_i` scaled into
/// `L`, the points of `L ∩ cone` in the box `[0, Σ u_i]` generate it
/// (subtract integer parts of the cone coefficients), so the result is
/// normal by construction.
pub fn random_normal_presentation(rng: &mut StdRng) -> SemigroupPresentation {
    loop {
        let d = rng.gen_range(2..=3usize);
        let k = rng.gen_range(d..=d + 1);
        let rays: Vec<Vec<i64>> = (0..k).map(|_| (0..d).map(|_| rng.gen_range(0..=2)).collect()).collect();
        if rays.iter().any(|r| r.iter().all(|&x| x == 0)) || rank(&rays, d) < d {
            continue;
        }
        let m: i64 = rng.gen_range(1..=2);
        let a: Vec<i64> = (0..d).map(|_| rng.gen_range(0..m.max(1))).collect();
        let in_lattice = |x: &[i64]| x.iter().zip(&a).map(|(p, q)| p * q).sum::<i64>().rem_euclid(m) == 0;
        let scaled: Vec<Vec<i64>> = rays.iter().map(|r| r.iter().map(|x| x * m).collect()).collect();
        let top: Vec<i64> = (0..d).map(|i| scaled.iter().map(|r| r[i]).sum()).collect();
        let mut gens = Vec::new();
        let mut x = vec![0i64; d];
        loop {
            if x.iter().any(|&v| v != 0) && in_lattice(&x) && in_cone(&x, &rays) {
                gens.push(x.clone());
            }
            let Some(p) = (0..d).find(|&i| x[i] < top[i]) else { break };
            x[p] += 1;
            for v in x.iter_mut().take(p) {
                *v = 0;
            }
        }
        let gens = irreducible(gens);
        let gens: Vec<Vec<Integer>> = gens.iter().map(|g| g.iter().map(|&v| Integer::from(v)).collect()).collect();
        return SemigroupPresentation::new(d, gens).unwrap().with_name("random");
    }
}

/// Drop generators that are sums of two others (keeps the list small).
fn irreducible(gens: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let set: std::collections::HashSet<Vec<i64>> = gens.iter().cloned().collect();
    gens.iter()
        .filter(|g| {
            !gens.iter().any(|h| {
                h != *g && {
                    let rest: Vec<i64> = g.iter().zip(h).map(|(a, b)| a - b).collect();
                    rest.iter().all(|&v| v >= 0) && rest.iter().any(|&v| v != 0) && set.contains(&rest)
                }
            })
        })
        .cloned()
        .collect()
}

pub fn random_presentations(seed: u64, count: usize) -> Vec<SemigroupPresentation> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random_normal_presentation(&mut rng)).collect()
}
