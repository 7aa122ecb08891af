//! Affine semigroups given by generators, lattice coordinates for their
//! group, membership for normal semigroups and a bounded normality check.

use std::collections::{HashSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::cone::FacetFunctional;
use crate::error::{Error, Result};
use crate::exact::{express_in_basis, for_each_lattice_point_in_box, hermite_basis, IntVector, Integer, IntegerMatrix};

/// Generators of an affine semigroup `M` inside `N^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupPresentation {
    ambient_rank: usize,
    generators: Vec<IntVector>,
    name: Option<String>,
}

impl SemigroupPresentation {
    pub fn new(ambient_rank: usize, generators: Vec<IntVector>) -> Result<Self> {
        if ambient_rank == 0 {
            return Err(Error::InvalidPresentation("ambient rank must be positive".into()));
        }
        if generators.is_empty() {
            return Err(Error::EmptyPresentation);
        }
        let mut seen = HashSet::new();
        for (i, g) in generators.iter().enumerate() {
            if g.len() != ambient_rank {
                return Err(Error::InvalidPresentation(format!(
                    "generator {i} has length {}, expected {ambient_rank}",
                    g.len()
                )));
            }
            if g.iter().any(|x| x.is_negative()) {
                return Err(Error::InvalidPresentation(format!("generator {i} has a negative entry")));
            }
            if g.iter().all(|x| x.is_zero()) {
                return Err(Error::InvalidPresentation(format!("generator {i} is zero")));
            }
            if !seen.insert(g.clone()) {
                return Err(Error::InvalidPresentation(format!("generator {i} is a duplicate")));
            }
        }
        Ok(SemigroupPresentation { ambient_rank, generators, name: None })
    }

    pub fn from_i64(ambient_rank: usize, generators: &[&[i64]]) -> Result<Self> {
        Self::new(ambient_rank, generators.iter().map(|g| g.iter().map(|&x| Integer::from(x)).collect()).collect())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn generator_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(self.ambient_rank, &self.generators)
    }
}

/// A presentation together with a Hermite basis of `gp(M)`.
#[derive(Debug, Clone)]
pub struct SemigroupContext {
    presentation: SemigroupPresentation,
    lattice: IntegerMatrix,
    lattice_generators: Vec<IntVector>,
}

impl SemigroupContext {
    pub fn presentation(&self) -> &SemigroupPresentation {
        &self.presentation
    }

    /// Hermite basis of `gp(M)`; its rows fix lattice coordinates `Z^d`.
    pub fn lattice(&self) -> &IntegerMatrix {
        &self.lattice
    }

    /// `d = dim R`.
    pub fn rank(&self) -> usize {
        self.lattice.rows()
    }

    /// Generators in lattice coordinates.
    pub fn lattice_generators(&self) -> &[IntVector] {
        &self.lattice_generators
    }

    pub fn in_group(&self, v: &[Integer]) -> bool {
        express_in_basis(v, &self.lattice).is_ok()
    }
}

pub fn build_context(p: &SemigroupPresentation) -> Result<SemigroupContext> {
    if p.generators().is_empty() {
        return Err(Error::EmptyPresentation);
    }
    let lattice = hermite_basis(&p.generator_matrix());
    let lattice_generators = p
        .generators()
        .iter()
        .map(|g| express_in_basis(g, &lattice).expect("generator outside its own lattice"))
        .collect();
    Ok(SemigroupContext { presentation: p.clone(), lattice, lattice_generators })
}

/// Membership in a normal semigroup: `v` lies in `gp(M)` and every facet
/// functional is nonnegative on it.
pub fn member(ctx: &SemigroupContext, facets: &[FacetFunctional], v: &[Integer]) -> bool {
    ctx.in_group(v) && facets.iter().all(|f| !f.evaluate(v).is_negative())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalityVerdict {
    /// No counterexample with coordinates up to the bound. Not a certificate
    /// beyond that bound.
    Normal { bound: Integer },
    /// Lies in `gp(M)` and in the cone but is not a sum of generators.
    CounterexampleFound(IntVector),
}

/// Look for points of `gp(M) ∩ cone(M)` in the box `[0, bound]^r` that are
/// not sums of generators. The lexicographically first failure is returned.
pub fn check_normal(ctx: &SemigroupContext, facets: &[FacetFunctional], bound: &Integer) -> NormalityVerdict {
    let r = ctx.presentation.ambient_rank();
    let bounds = vec![bound.clone(); r];
    let reachable = combinations_in_box(ctx.presentation.generators(), &bounds);
    let lo = vec![Integer::zero(); r];
    let mut failures = Vec::new();
    for_each_lattice_point_in_box(&ctx.lattice, &lo, &bounds, |_, v| {
        if facets.iter().all(|f| !f.evaluate(v).is_negative()) && !reachable.contains(v) {
            failures.push(v.to_vec());
        }
    });
    match failures.into_iter().min() {
        Some(v) => NormalityVerdict::CounterexampleFound(v),
        None => NormalityVerdict::Normal { bound: bound.clone() },
    }
}

/// All sums of generators lying componentwise below `bounds`. Generators
/// are nonnegative, so every partial sum of such a combination stays in the
/// box and a breadth-first closure from zero finds all of them.
pub fn combinations_in_box(generators: &[IntVector], bounds: &[Integer]) -> HashSet<IntVector> {
    let zero = vec![Integer::zero(); bounds.len()];
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(u) = queue.pop_front() {
        for g in generators {
            let w: IntVector = u.iter().zip(g).map(|(a, b)| a + b).collect();
            if w.iter().zip(bounds).all(|(x, b)| x <= b) && !seen.contains(&w) {
                seen.insert(w.clone());
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Is `v` a sum of generators (all nonnegative and nonzero)? Depth-first
/// search over generator multiplicities, pruned by componentwise dominance.
pub fn is_nonneg_combination(v: &[Integer], generators: &[IntVector]) -> bool {
    fn go(rest: &mut IntVector, generators: &[IntVector], k: usize, failed: &mut HashSet<(usize, IntVector)>) -> bool {
        if rest.iter().all(|x| x.is_zero()) {
            return true;
        }
        if k == generators.len() || failed.contains(&(k, rest.clone())) {
            return false;
        }
        let g = &generators[k];
        let mut taken = 0usize;
        let found = loop {
            if go(rest, generators, k + 1, failed) {
                break true;
            }
            if !rest.iter().zip(g).all(|(x, y)| x >= y) {
                break false;
            }
            for (x, y) in rest.iter_mut().zip(g) {
                *x -= y;
            }
            taken += 1;
        };
        for _ in 0..taken {
            for (x, y) in rest.iter_mut().zip(g) {
                *x += y;
            }
        }
        if !found {
            failed.insert((k, rest.clone()));
        }
        found
    }
    if v.iter().any(|x| x.is_negative()) {
        return false;
    }
    let mut rest = v.to_vec();
    go(&mut rest, generators, 0, &mut HashSet::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::facet_functionals;
    use crate::exact::{int, int_vec};
    use proptest::prelude::*;

    fn veronese22() -> SemigroupPresentation {
        SemigroupPresentation::from_i64(2, &[&[2, 0], &[1, 1], &[0, 2]]).unwrap()
    }

    fn segre22() -> SemigroupPresentation {
        SemigroupPresentation::from_i64(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]).unwrap()
    }

    #[test]
    fn presentation_validation() {
        assert_eq!(SemigroupPresentation::new(2, vec![]), Err(Error::EmptyPresentation));
        assert!(matches!(SemigroupPresentation::from_i64(2, &[&[0, 0]]), Err(Error::InvalidPresentation(_))));
        assert!(matches!(SemigroupPresentation::from_i64(2, &[&[1, -1]]), Err(Error::InvalidPresentation(_))));
        assert!(matches!(SemigroupPresentation::from_i64(2, &[&[1, 0], &[1, 0]]), Err(Error::InvalidPresentation(_))));
        assert!(matches!(SemigroupPresentation::from_i64(2, &[&[1, 0, 0]]), Err(Error::InvalidPresentation(_))));
    }

    #[test]
    fn context_examples() {
        let free = SemigroupPresentation::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        let ctx = build_context(&free).unwrap();
        assert_eq!(ctx.rank(), 2);
        assert_eq!(ctx.lattice(), &IntegerMatrix::identity(2));

        let ctx = build_context(&veronese22()).unwrap();
        assert_eq!(ctx.rank(), 2);
        assert_eq!(ctx.lattice(), &IntegerMatrix::from_i64(&[&[1, 1], &[0, 2]]));

        let ctx = build_context(&segre22()).unwrap();
        assert_eq!(ctx.rank(), 3);
    }

    #[test]
    fn membership_examples() {
        let ctx = build_context(&veronese22()).unwrap();
        let facets = facet_functionals(&ctx).unwrap();
        assert!(member(&ctx, &facets, &int_vec(&[3, 1])));
        assert!(!member(&ctx, &facets, &int_vec(&[1, 0])));
        assert!(member(&ctx, &facets, &int_vec(&[0, 0])));
        assert!(!member(&ctx, &facets, &int_vec(&[-1, 3])));
    }

    #[test]
    fn generators_are_members() {
        for p in [veronese22(), segre22()] {
            let ctx = build_context(&p).unwrap();
            let facets = facet_functionals(&ctx).unwrap();
            for g in p.generators() {
                assert!(member(&ctx, &facets, g));
            }
        }
    }

    #[test]
    fn normality_examples() {
        let ctx = build_context(&veronese22()).unwrap();
        let facets = facet_functionals(&ctx).unwrap();
        assert_eq!(check_normal(&ctx, &facets, &int(6)), NormalityVerdict::Normal { bound: int(6) });

        let p = SemigroupPresentation::from_i64(2, &[&[2, 0], &[0, 1], &[1, 1]]).unwrap();
        let ctx = build_context(&p).unwrap();
        let facets = facet_functionals(&ctx).unwrap();
        assert_eq!(check_normal(&ctx, &facets, &int(4)), NormalityVerdict::CounterexampleFound(int_vec(&[1, 0])));

        let p = SemigroupPresentation::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        let ctx = build_context(&p).unwrap();
        let facets = facet_functionals(&ctx).unwrap();
        for b in [1, 3, 7] {
            assert!(matches!(check_normal(&ctx, &facets, &int(b)), NormalityVerdict::Normal { .. }));
        }
    }

    #[test]
    fn twisted_cubic_is_normal_but_punctured_one_is_not() {
        // (3,0),(2,1),(1,2),(0,3) is normal; dropping (2,1) loses (2,1) itself.
        let p = SemigroupPresentation::from_i64(2, &[&[3, 0], &[2, 1], &[1, 2], &[0, 3]]).unwrap();
        let ctx = build_context(&p).unwrap();
        let facets = facet_functionals(&ctx).unwrap();
        assert!(matches!(check_normal(&ctx, &facets, &int(6)), NormalityVerdict::Normal { .. }));
        let p = SemigroupPresentation::from_i64(2, &[&[3, 0], &[1, 2], &[0, 3]]).unwrap();
        let ctx = build_context(&p).unwrap();
        let facets = facet_functionals(&ctx).unwrap();
        assert_eq!(check_normal(&ctx, &facets, &int(6)), NormalityVerdict::CounterexampleFound(int_vec(&[2, 1])));
    }

    #[test]
    fn dfs_combination_search() {
        let gens = veronese22().generators().to_vec();
        assert!(is_nonneg_combination(&int_vec(&[3, 1]), &gens));
        assert!(is_nonneg_combination(&int_vec(&[0, 0]), &gens));
        assert!(!is_nonneg_combination(&int_vec(&[1, 0]), &gens));
        assert!(!is_nonneg_combination(&int_vec(&[-1, 1]), &gens));
    }

    #[test]
    fn member_agrees_with_combination_search_in_box() {
        for p in [veronese22(), segre22()] {
            let ctx = build_context(&p).unwrap();
            let facets = facet_functionals(&ctx).unwrap();
            let r = p.ambient_rank();
            let bounds = vec![int(6); r];
            let reachable = combinations_in_box(p.generators(), &bounds);
            let mut v = vec![0i64; r];
            loop {
                let iv = int_vec(&v);
                assert_eq!(member(&ctx, &facets, &iv), reachable.contains(&iv), "disagree at {v:?}");
                assert_eq!(reachable.contains(&iv), is_nonneg_combination(&iv, p.generators()));
                let Some(k) = v.iter().position(|&x| x < 6) else { break };
                v[k] += 1;
                v[..k].iter_mut().for_each(|x| *x = 0);
            }
        }
    }

    proptest! {
        #[test]
        fn membership_is_closed_under_addition(
            a in proptest::collection::vec(0i64..5, 4),
            b in proptest::collection::vec(0i64..5, 4),
        ) {
            let p = segre22();
            let ctx = build_context(&p).unwrap();
            let facets = facet_functionals(&ctx).unwrap();
            let (a, b) = (int_vec(&a), int_vec(&b));
            if member(&ctx, &facets, &a) && member(&ctx, &facets, &b) {
                let s: IntVector = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                prop_assert!(member(&ctx, &facets, &s));
            }
        }
    }
}
