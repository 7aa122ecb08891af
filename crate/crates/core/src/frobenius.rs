//! Free ranks `a_q` and Hilbert–Kunz colengths of monomial ideals, all
//! computed on the full image semigroup `T(M) ⊆ N^n`.
//!
//! In that picture a monomial is a lattice point `u` with `u >= 0`, and `g`
//! divides `u` in `R` exactly when `u - g >= 0`. So
//!
//! * `a_q = #{u in T(M) : u_i < q for all i}`,
//! * `u ∈ b^[q]` iff `u - q g >= 0` for some generator `g` of `b`,
//! * `ℓ(R / b^[q])` counts the semigroup elements outside `b^[q]`.
//!
//! Any positive integer `q` is accepted here; nothing below uses that `q`
//! is a power of a prime.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::{One, Signed, Zero};

use crate::cone::{fraction_field_witness, FullEmbedding};
use crate::error::{Error, Result};
use crate::exact::{floor_div, for_each_lattice_point_in_box, IntVector, Integer, Rational};
use crate::semigroup::{combinations_in_box, SemigroupPresentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusCount {
    pub q: u64,
    pub a_q: Integer,
    /// `a_q / q^d`
    pub ratio: Rational,
}

fn q_power(q: u64, d: usize) -> Integer {
    num_traits::pow(Integer::from(q), d)
}

fn add(a: &[Integer], b: &[Integer]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(k: &Integer, a: &[Integer]) -> IntVector {
    a.iter().map(|x| k * x).collect()
}

fn dominates(a: &[Integer], b: &[Integer]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// `a_q` by enumerating `gp(T(M)) ∩ [0, q-1]^n` along the Hermite basis of
/// the image lattice. Fullness of `T(M)` makes the two sets equal.
pub fn count_aq(emb: &FullEmbedding, q: u64) -> FrobeniusCount {
    assert!(q >= 1, "q must be positive");
    let n = emb.facet_count();
    let lo = vec![Integer::zero(); n];
    let hi = vec![Integer::from(q - 1); n];
    let mut count = 0u64;
    for_each_lattice_point_in_box(emb.image_lattice(), &lo, &hi, |_, _| count += 1);
    let a_q = Integer::from(count);
    let ratio = Rational::new(a_q.clone(), q_power(q, emb.rank()));
    FrobeniusCount { q, a_q, ratio }
}

/// Cap on the number of points a brute-force closure may visit.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 2_000_000;

/// `a_q` by closure: start at zero, keep adding image generators while all
/// coordinates stay below `q`, count distinct points. Shares only the
/// embedding with [`count_aq`], not the lattice enumeration.
pub fn brute_force_aq(p: &SemigroupPresentation, q: u64) -> Result<Integer> {
    brute_force_aq_with_cap(p, q, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_aq_with_cap(p: &SemigroupPresentation, q: u64, cap: usize) -> Result<Integer> {
    assert!(q >= 1, "q must be positive");
    let emb = crate::cone::embed(p)?;
    let images: Vec<IntVector> =
        p.generators().iter().map(|g| emb.image_of(g).expect("generator lies in its lattice")).collect();
    let limit = Integer::from(q);
    let zero = vec![Integer::zero(); emb.facet_count()];
    let mut seen: HashSet<IntVector> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(u) = queue.pop_front() {
        for g in &images {
            let w = add(&u, g);
            if w.iter().all(|x| *x < limit) && !seen.contains(&w) {
                if seen.len() >= cap {
                    return Err(Error::BudgetExceeded { cap });
                }
                seen.insert(w.clone());
                queue.push_back(w);
            }
        }
    }
    Ok(Integer::from(seen.len()))
}

pub fn aq_table(emb: &FullEmbedding, q_list: &[u64]) -> Vec<FrobeniusCount> {
    q_list.iter().map(|&q| count_aq(emb, q)).collect()
}

/// Certificate for one factor `mu_i` of the witness monomial:
/// `a_i - e_i = mu_i - eta_i` with `a_i` free of `x_i`, `mu_i, eta_i ∈ T(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPart {
    pub coordinate: usize,
    pub a: IntVector,
    pub eta: IntVector,
    pub mu: IntVector,
}

/// `mu = mu_0 + mu_1 + ... + mu_n` (additively), every coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleWitness {
    pub mu: IntVector,
    pub mu0: IntVector,
    pub parts: Vec<WitnessPart>,
}

/// `mu_0` is the sum of all image generators. For each coordinate `i`, the
/// fraction-field witness `v = a_i - e_i` is split as `mu_i - eta_i` with
/// `eta_i` the image generator of least positive `i`-th coordinate (ties
/// broken lexicographically); `mu_i = v + eta_i` is then nonnegative and in
/// the lattice, hence in `T(M)`.
pub fn socle_witness(emb: &FullEmbedding) -> Result<SocleWitness> {
    let n = emb.facet_count();
    let mut mu0 = vec![Integer::zero(); n];
    for g in emb.image_generators() {
        mu0 = add(&mu0, g);
    }
    if let Some(i) = mu0.iter().position(|x| x.is_zero()) {
        return Err(Error::WitnessNotFound { coordinate: i });
    }
    let mut mu = mu0.clone();
    let mut parts = Vec::with_capacity(n);
    for i in 0..n {
        let w = fraction_field_witness(emb, i)?;
        let eta = emb
            .image_generators()
            .iter()
            .filter(|g| g[i].is_positive())
            .min_by(|a, b| a[i].cmp(&b[i]).then_with(|| a.cmp(b)))
            .ok_or(Error::WitnessNotFound { coordinate: i })?
            .clone();
        let mu_i = add(&w.v, &eta);
        if !emb.in_image_semigroup(&mu_i) {
            return Err(Error::WitnessNotFound { coordinate: i });
        }
        mu = add(&mu, &mu_i);
        parts.push(WitnessPart { coordinate: i, a: w.a, eta, mu: mu_i });
    }
    Ok(SocleWitness { mu, mu0, parts })
}

/// A monomial ideal of `R`, described on the image semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealDescription {
    /// `a_t`: generated by the monomials that do not divide `mu^t`.
    NotDividing { mu: IntVector, t: u64 },
    /// Generated by the listed semigroup elements.
    ExplicitGenerators(Vec<IntVector>),
    /// Sum of ideals.
    Sum(Vec<IdealDescription>),
}

impl IdealDescription {
    /// `a_t + mu^t R`.
    pub fn with_socle_power(mu: &[Integer], t: u64) -> Self {
        IdealDescription::Sum(vec![
            IdealDescription::NotDividing { mu: mu.to_vec(), t },
            IdealDescription::ExplicitGenerators(vec![scale(&Integer::from(t), mu)]),
        ])
    }
}

/// The Frobenius power `b^[q]` of an ideal, with a finite generating set
/// for `b` extracted once.
#[derive(Debug, Clone)]
pub struct MonomialIdealInSemigroup {
    pub description: IdealDescription,
    pub frobenius_power: u64,
    generators: Vec<IntVector>,
}

impl MonomialIdealInSemigroup {
    pub fn new(emb: &FullEmbedding, description: IdealDescription, frobenius_power: u64) -> Self {
        assert!(frobenius_power >= 1, "q must be positive");
        let generators = minimal_elements(ideal_generators(emb, &description));
        MonomialIdealInSemigroup { description, frobenius_power, generators }
    }

    /// Minimal generators of the underlying ideal `b` (before Frobenius).
    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    /// Membership of a semigroup element in `b^[q]`: `u - q g >= 0` for a
    /// generator `g`, i.e. `g <= floor(u / q)` componentwise.
    pub fn contains(&self, u: &[Integer]) -> bool {
        let q = Integer::from(self.frobenius_power);
        let f: IntVector = u.iter().map(|x| floor_div(x, &q)).collect();
        self.contains_floor(&f)
    }

    fn contains_floor(&self, f: &[Integer]) -> bool {
        self.generators.iter().any(|g| dominates(f, g))
    }
}

/// A finite generating set. For `a_t`: every minimal non-divisor of `t mu`
/// is `s + g` with `s` a divisor and `g` an image generator, since
/// removing any generator from a minimal non-divisor leaves a divisor.
fn ideal_generators(emb: &FullEmbedding, description: &IdealDescription) -> Vec<IntVector> {
    match description {
        IdealDescription::ExplicitGenerators(gens) => gens.clone(),
        IdealDescription::Sum(parts) => parts.iter().flat_map(|p| ideal_generators(emb, p)).collect(),
        IdealDescription::NotDividing { mu, t } => {
            let top = scale(&Integer::from(*t), mu);
            let divisors = combinations_in_box(emb.image_generators(), &top);
            let mut out = HashSet::new();
            for s in &divisors {
                for g in emb.image_generators() {
                    let w = add(s, g);
                    if !dominates(&top, &w) {
                        out.insert(w);
                    }
                }
            }
            out.into_iter().collect()
        }
    }
}

fn minimal_elements(mut gens: Vec<IntVector>) -> Vec<IntVector> {
    gens.sort();
    gens.dedup();
    let mut keep: Vec<IntVector> = Vec::new();
    for g in &gens {
        if !gens.iter().any(|h| h != g && dominates(g, h)) {
            keep.push(g.clone());
        }
    }
    keep
}

/// `ℓ(R / b^[q])`: the number of semigroup elements outside `b^[q]`.
///
/// The complement of an ideal is closed under taking divisors, so every
/// element of it is reached from zero by adding generators without leaving
/// it; a breadth-first closure enumerates it exactly. Finiteness is checked
/// up front: `b` is primary to the maximal ideal iff some power of every
/// image generator lies in `b`. Given multiples `N_k g_k ∈ b`, an element
/// outside `b^[q]` uses each `g_k` fewer than `q N_k` times, which bounds
/// the search box.
pub fn hk_colength(emb: &FullEmbedding, ideal: &IdealDescription, q: u64) -> Result<Integer> {
    let b = MonomialIdealInSemigroup::new(emb, ideal.clone(), q);
    colength_of(emb, &b)
}

fn colength_of(emb: &FullEmbedding, b: &MonomialIdealInSemigroup) -> Result<Integer> {
    let n = emb.facet_count();
    let q = Integer::from(b.frobenius_power);
    let mut bound = vec![Integer::zero(); n];
    for g in emb.image_generators() {
        let multiple = b.generators().iter().filter_map(|e| power_reaching(g, e)).min().ok_or(Error::NotPrimary)?;
        let uses = &q * multiple - 1;
        for (bj, gj) in bound.iter_mut().zip(g) {
            *bj += &uses * gj;
        }
    }

    let zero = vec![Integer::zero(); n];
    let mut memo: HashMap<IntVector, bool> = HashMap::new();
    let mut inside = |u: &IntVector| -> bool {
        let f: IntVector = u.iter().map(|x| floor_div(x, &q)).collect();
        *memo.entry(f).or_insert_with_key(|f| b.contains_floor(f))
    };
    if inside(&zero) {
        // b is the unit ideal
        return Ok(Integer::zero());
    }
    let mut seen: HashSet<IntVector> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(u) = queue.pop_front() {
        for g in emb.image_generators() {
            let w = add(&u, g);
            if seen.contains(&w) || inside(&w) {
                continue;
            }
            if !dominates(&bound, &w) {
                return Err(Error::NotPrimary);
            }
            seen.insert(w.clone());
            queue.push_back(w);
        }
    }
    Ok(Integer::from(seen.len()))
}

/// Least `N >= 1` with `N g >= e`, if any.
fn power_reaching(g: &[Integer], e: &[Integer]) -> Option<Integer> {
    let mut need = Integer::one();
    for (gj, ej) in g.iter().zip(e) {
        if ej.is_positive() {
            if gj.is_zero() {
                return None;
            }
            let k = crate::exact::ceil_div(ej, gj);
            if k > need {
                need = k;
            }
        }
    }
    Some(need)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HkIdentity {
    pub t: u64,
    pub q: u64,
    /// `ℓ(R / a_t^[q])`
    pub colength_a: Integer,
    /// `ℓ(R / (a_t^[q] + mu^{tq} R))`
    pub colength_a_mu: Integer,
    pub lhs: Integer,
    pub rhs: Integer,
    pub equal: bool,
}

/// Compare `ℓ(R/a_t^[q]) - ℓ(R/(a_t^[q] + mu^{tq}R))` against `a_q`.
pub fn hk_difference_identity(emb: &FullEmbedding, witness: &SocleWitness, t: u64, q: u64) -> Result<HkIdentity> {
    assert!(t >= 1 && q >= 1, "t and q must be positive");
    let colength_a = hk_colength(emb, &IdealDescription::NotDividing { mu: witness.mu.clone(), t }, q)?;
    let colength_a_mu = hk_colength(emb, &IdealDescription::with_socle_power(&witness.mu, t), q)?;
    let lhs = &colength_a - &colength_a_mu;
    let rhs = count_aq(emb, q).a_q;
    let equal = lhs == rhs;
    Ok(HkIdentity { t, q, colength_a, colength_a_mu, lhs, rhs, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::embed;
    use crate::exact::{int, int_vec, rat};

    fn pres(r: usize, gens: &[&[i64]]) -> SemigroupPresentation {
        SemigroupPresentation::from_i64(r, gens).unwrap()
    }

    fn free2() -> SemigroupPresentation {
        pres(2, &[&[1, 0], &[0, 1]])
    }

    fn veronese22() -> SemigroupPresentation {
        pres(2, &[&[2, 0], &[1, 1], &[0, 2]])
    }

    fn segre22() -> SemigroupPresentation {
        pres(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]])
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_aq(&embed(&free2()).unwrap(), 3).a_q, int(9));
        assert_eq!(count_aq(&embed(&veronese22()).unwrap(), 3).a_q, int(5));
        assert_eq!(count_aq(&embed(&segre22()).unwrap(), 3).a_q, int(19));
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_aq(&free2(), 2).unwrap(), int(4));
        assert_eq!(brute_force_aq(&segre22(), 2).unwrap(), int(6));
        assert_eq!(brute_force_aq(&veronese22(), 3).unwrap(), int(5));
    }

    #[test]
    fn brute_force_budget() {
        assert_eq!(brute_force_aq_with_cap(&segre22(), 6, 10), Err(Error::BudgetExceeded { cap: 10 }));
    }

    #[test]
    fn a1_is_one() {
        for p in [free2(), veronese22(), segre22(), pres(1, &[&[4]])] {
            let c = count_aq(&embed(&p).unwrap(), 1);
            assert_eq!(c.a_q, int(1));
            assert_eq!(c.ratio, rat(1, 1));
        }
    }

    #[test]
    fn table_examples() {
        let t = aq_table(&embed(&segre22()).unwrap(), &[2, 3]);
        assert_eq!(t[0], FrobeniusCount { q: 2, a_q: int(6), ratio: rat(3, 4) });
        assert_eq!(t[1], FrobeniusCount { q: 3, a_q: int(19), ratio: rat(19, 27) });

        let t = aq_table(&embed(&pres(1, &[&[1]])).unwrap(), &[1, 2, 3]);
        assert!(t.iter().all(|c| c.ratio == rat(1, 1)));

        let t = aq_table(&embed(&veronese22()).unwrap(), &[2, 4]);
        assert_eq!(t[0], FrobeniusCount { q: 2, a_q: int(2), ratio: rat(1, 2) });
        assert_eq!(t[1], FrobeniusCount { q: 4, a_q: int(8), ratio: rat(1, 2) });
    }

    #[test]
    fn socle_witness_free() {
        let emb = embed(&free2()).unwrap();
        let w = socle_witness(&emb).unwrap();
        assert_eq!(w.mu0, int_vec(&[1, 1]));
        assert_eq!(w.mu, int_vec(&[2, 2]));
    }

    #[test]
    fn socle_witness_veronese() {
        let emb = embed(&veronese22()).unwrap();
        let w = socle_witness(&emb).unwrap();
        assert_eq!(w.mu0, int_vec(&[3, 3]));
        assert_eq!(w.mu, int_vec(&[5, 5]));
        let mut parts: Vec<IntVector> = w.parts.iter().map(|p| p.mu.clone()).collect();
        parts.sort();
        assert_eq!(parts, vec![int_vec(&[0, 2]), int_vec(&[2, 0])]);
    }

    #[test]
    fn socle_witness_certificates_hold() {
        for p in [free2(), veronese22(), segre22()] {
            let emb = embed(&p).unwrap();
            let w = socle_witness(&emb).unwrap();
            assert!(w.mu.iter().all(|x| x.is_positive()));
            assert!(emb.in_image_semigroup(&w.mu));
            for part in &w.parts {
                let i = part.coordinate;
                assert!(part.a[i].is_zero());
                let mut lhs = part.a.clone();
                lhs[i] -= 1;
                let rhs: IntVector = part.mu.iter().zip(&part.eta).map(|(a, b)| a - b).collect();
                assert_eq!(lhs, rhs);
                assert!(emb.in_image_semigroup(&part.mu));
                assert!(emb.in_image_semigroup(&part.eta));
            }
        }
        // Segre: balanced bidegree
        let emb = embed(&segre22()).unwrap();
        let mu = socle_witness(&emb).unwrap().mu;
        assert!(emb.in_image_lattice(&mu));
    }

    #[test]
    fn colengths_in_one_variable() {
        let emb = embed(&pres(1, &[&[1]])).unwrap();
        let w = socle_witness(&emb).unwrap();
        assert_eq!(w.mu, int_vec(&[1]));
        for q in 1..6u64 {
            let a = hk_colength(&emb, &IdealDescription::NotDividing { mu: w.mu.clone(), t: 1 }, q).unwrap();
            assert_eq!(a, int(2 * q as i64));
            let am = hk_colength(&emb, &IdealDescription::with_socle_power(&w.mu, 1), q).unwrap();
            assert_eq!(am, int(q as i64));
        }
    }

    #[test]
    fn not_dividing_generators_in_one_variable() {
        let emb = embed(&pres(1, &[&[1]])).unwrap();
        let b = MonomialIdealInSemigroup::new(&emb, IdealDescription::NotDividing { mu: int_vec(&[1]), t: 1 }, 1);
        assert_eq!(b.generators(), &[int_vec(&[2])]);
        assert!(b.contains(&int_vec(&[2])));
        assert!(!b.contains(&int_vec(&[1])));
    }

    #[test]
    fn difference_identity_examples() {
        let emb = embed(&free2()).unwrap();
        let w = socle_witness(&emb).unwrap();
        let r = hk_difference_identity(&emb, &w, 1, 2).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (int(4), int(4)));

        let emb = embed(&veronese22()).unwrap();
        let w = socle_witness(&emb).unwrap();
        let r = hk_difference_identity(&emb, &w, 1, 3).unwrap();
        assert!(r.equal && r.rhs == int(5));
        let r = hk_difference_identity(&emb, &w, 2, 3).unwrap();
        assert!(r.equal && r.lhs == int(5));

        let emb = embed(&segre22()).unwrap();
        let w = socle_witness(&emb).unwrap();
        let r = hk_difference_identity(&emb, &w, 1, 2).unwrap();
        assert!(r.equal && r.lhs == int(6));
        let r = hk_difference_identity(&emb, &w, 1, 3).unwrap();
        assert!(r.equal && r.lhs == int(19));
    }

    #[test]
    fn non_primary_ideal_is_rejected() {
        let emb = embed(&free2()).unwrap();
        // (x) is not primary to (x, y)
        let x = emb.image_of(&int_vec(&[1, 0])).unwrap();
        let err = hk_colength(&emb, &IdealDescription::ExplicitGenerators(vec![x]), 2);
        assert_eq!(err, Err(Error::NotPrimary));
    }

    #[test]
    fn explicit_maximal_ideal_colength() {
        // ℓ(R / m^[q]) for R = K[x, y] is q^2
        let emb = embed(&free2()).unwrap();
        let m = IdealDescription::ExplicitGenerators(emb.image_generators().to_vec());
        for q in 1..5u64 {
            assert_eq!(hk_colength(&emb, &m, q).unwrap(), int((q * q) as i64));
        }
    }

    #[test]
    fn superadditivity_on_test_instances() {
        for p in [free2(), veronese22(), segre22()] {
            let emb = embed(&p).unwrap();
            for (q1, q2) in [(2u64, 2u64), (2, 3), (3, 2)] {
                let prod = count_aq(&emb, q1 * q2).a_q;
                assert!(prod >= count_aq(&emb, q1).a_q * count_aq(&emb, q2).a_q);
            }
        }
    }
}
