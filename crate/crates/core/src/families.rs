//! Segre products and Veronese subrings with their closed-form answers,
//! and Eulerian numbers.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{IntVector, Integer, Rational};
use crate::semigroup::SemigroupPresentation;

/// Generators `x_i y_j` of the Segre product of `K[x_1..x_r]` and
/// `K[y_1..y_s]`, ordered `i`-major.
pub fn segre_generators(r: usize, s: usize) -> Result<SemigroupPresentation> {
    if r < 2 || s < 2 {
        return Err(Error::InvalidParams(format!("Segre product needs r, s >= 2, got ({r}, {s})")));
    }
    let mut gens = Vec::with_capacity(r * s);
    for i in 0..r {
        for j in 0..s {
            let mut g = vec![Integer::zero(); r + s];
            g[i] = Integer::one();
            g[r + j] = Integer::one();
            gens.push(g);
        }
    }
    Ok(SemigroupPresentation::new(r + s, gens)?.with_name(format!("segre({r},{s})")))
}

/// Dimension `r + s - 1` of the Segre product.
pub fn segre_dimension(r: usize, s: usize) -> usize {
    r + s - 1
}

/// All monomials of degree `n` in `d` variables, in descending
/// lexicographic order.
pub fn veronese_generators(d: usize, n: usize) -> Result<SemigroupPresentation> {
    if d < 1 || n < 1 {
        return Err(Error::InvalidParams(format!("Veronese needs d, n >= 1, got ({d}, {n})")));
    }
    fn fill(d: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<IntVector>) {
        if prefix.len() + 1 == d {
            prefix.push(left);
            out.push(prefix.iter().map(|&x| Integer::from(x)).collect());
            prefix.pop();
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(k);
            fill(d, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut gens = Vec::new();
    fill(d, n, &mut Vec::with_capacity(d), &mut gens);
    Ok(SemigroupPresentation::new(d, gens)?.with_name(format!("veronese({d},{n})")))
}

/// `C(m, k)`, zero unless `0 <= k <= m`.
pub fn binomial(m: &Integer, k: &Integer) -> Integer {
    if k < &Integer::zero() || k > m {
        return Integer::zero();
    }
    let k = if &(m - k) < k { m - k } else { k.clone() };
    let mut acc = Integer::one();
    let mut i = Integer::zero();
    while i < k {
        acc = acc * (m - &i) / (&i + 1);
        i += 1;
    }
    acc
}

/// Eulerian number `A(d, s)` by `A(d,s) = s A(d-1,s) + (d-s+1) A(d-1,s-1)`,
/// `A(1,1) = 1`; zero outside `1 <= s <= d`.
pub fn eulerian(d: usize, s: usize) -> Integer {
    EulerianTable::new(d).get(s)
}

/// Row `d` of the Eulerian triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianTable {
    pub d: usize,
    values: Vec<Integer>,
}

impl EulerianTable {
    pub fn new(d: usize) -> Self {
        let mut memo: HashMap<(usize, usize), Integer> = HashMap::new();
        let values = (1..=d).map(|s| eulerian_memo(d, s, &mut memo)).collect();
        EulerianTable { d, values }
    }

    pub fn get(&self, s: usize) -> Integer {
        if s == 0 || s > self.d {
            return Integer::zero();
        }
        self.values[s - 1].clone()
    }

    /// `A(d, 1), ..., A(d, d)`.
    pub fn values(&self) -> &[Integer] {
        &self.values
    }
}

fn eulerian_memo(d: usize, s: usize, memo: &mut HashMap<(usize, usize), Integer>) -> Integer {
    if s == 0 || s > d {
        return Integer::zero();
    }
    if d == 1 {
        return Integer::one();
    }
    if let Some(v) = memo.get(&(d, s)) {
        return v.clone();
    }
    let v =
        Integer::from(s) * eulerian_memo(d - 1, s, memo) + Integer::from(d - s + 1) * eulerian_memo(d - 1, s - 1, memo);
    memo.insert((d, s), v.clone());
    v
}

/// `A(d, s) = sum_{i=0}^{s} (-1)^i C(d+1, i) (s-i)^d`.
pub fn eulerian_alternating(d: usize, s: usize) -> Integer {
    if s == 0 || s > d {
        return Integer::zero();
    }
    let mut acc = Integer::zero();
    for i in 0..=s {
        let term = binomial(&Integer::from(d + 1), &Integer::from(i)) * num_traits::pow(Integer::from(s - i), d);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Closed form `a_q = sum_{i=0}^{s} (-1)^i C(d+1, i) C(q(s-i) + d - s, d)`
/// for the Segre product, `d = r + s - 1`.
pub fn segre_aq_closed_form(r: usize, s: usize, q: u64) -> Integer {
    assert!(r >= 2 && s >= 2 && q >= 1, "segre_aq_closed_form: need r, s >= 2 and q >= 1");
    let d = segre_dimension(r, s);
    let dd = Integer::from(d);
    let q = Integer::from(q);
    let mut acc = Integer::zero();
    for i in 0..=s {
        let top = &q * Integer::from(s - i) + &dd - Integer::from(s);
        let term = binomial(&Integer::from(d + 1), &Integer::from(i)) * binomial(&top, &dd);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn factorial(n: usize) -> Integer {
    (1..=n).fold(Integer::one(), |acc, k| acc * k)
}

/// `A(d, s) / d!` with `d = r + s - 1`.
pub fn segre_signature(r: usize, s: usize) -> Rational {
    let d = segre_dimension(r, s);
    Rational::new(eulerian(d, s), factorial(d))
}

/// `1 / n` for `d >= 2`. With one variable `K[x^n]` is itself a polynomial
/// ring, so the value is 1.
pub fn veronese_signature(d: usize, n: usize) -> Rational {
    if d == 1 {
        return Rational::one();
    }
    Rational::new(Integer::one(), Integer::from(n))
}
