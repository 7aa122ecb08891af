//! Facet functionals of `cone(M)` and the full embedding
//! `T = (w_1, ..., w_n) : gp(M) -> Z^n`.
//!
//! The dual cone is computed in lattice coordinates, where `cone(M)` is
//! full-dimensional and pointed. Functionals are reported in ambient
//! coordinates as the representative lying in the rational span of `M`, so
//! they vanish on its orthogonal complement.

use num_traits::{One, Signed, Zero};

use crate::dd::extreme_rays;
use crate::error::{Error, Result};
use crate::exact::{
    bezout_vector, ceil_div, content, dot_mixed, express_in_basis, hermite_basis, integer_rank,
    primitive_from_rational, solve_rational, to_rational, IntVector, Integer, IntegerMatrix, RatVector, Rational,
};
use crate::semigroup::{build_context, combinations_in_box, SemigroupContext, SemigroupPresentation};

/// A facet functional, scaled so that its values on the generators are
/// nonnegative integers with gcd 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetFunctional {
    coefficients: RatVector,
    values_on_generators: Vec<Integer>,
    lattice_row: IntVector,
}

impl FacetFunctional {
    /// Coefficients in ambient coordinates `Q^r`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn values_on_generators(&self) -> &[Integer] {
        &self.values_on_generators
    }

    /// Values on the rows of the Hermite basis of `gp(M)`, i.e. the
    /// functional in lattice coordinates. Always integral.
    pub fn lattice_row(&self) -> &[Integer] {
        &self.lattice_row
    }

    pub fn evaluate(&self, v: &[Integer]) -> Rational {
        dot_mixed(&self.coefficients, v)
    }
}

/// Orthogonal projection of `f` onto the row space of the lattice basis.
fn project_to_span(ctx: &SemigroupContext, f: &[Rational]) -> RatVector {
    let l = ctx.lattice();
    let lattice_values: RatVector = (0..l.rows()).map(|k| dot_mixed(f, l.row(k))).collect();
    ambient_from_lattice(ctx, &lattice_values)
}

/// The functional on the span with prescribed values on the lattice basis.
fn ambient_from_lattice(ctx: &SemigroupContext, values: &[Rational]) -> RatVector {
    let l = ctx.lattice();
    let rows: Vec<RatVector> = (0..l.rows()).map(|i| to_rational(l.row(i))).collect();
    let gram: Vec<RatVector> =
        rows.iter().map(|a| rows.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect()).collect();
    let y = solve_rational(&gram, values).expect("lattice basis is independent");
    let mut f = vec![Rational::zero(); l.cols()];
    for (yk, row) in y.iter().zip(&rows) {
        for (fj, x) in f.iter_mut().zip(row) {
            *fj += yk * x;
        }
    }
    f
}

/// Extreme rays of the dual cone `U = {w : w(m) >= 0 for m in M}` on the
/// span of `M`, one per facet of `cone(M)`, as primitive integer vectors in
/// ambient coordinates, sorted lexicographically.
pub fn dual_cone_rays(ctx: &SemigroupContext) -> Result<Vec<RatVector>> {
    let rays = extreme_rays(ctx.lattice_generators(), ctx.rank())?;
    let mut ambient: Vec<IntVector> =
        rays.iter().map(|w| primitive_from_rational(&ambient_from_lattice(ctx, &to_rational(w)))).collect();
    ambient.sort();
    Ok(ambient.iter().map(|v| to_rational(v)).collect())
}

/// Rescale a ray so its values on the generators are integers with gcd 1.
pub fn primitivize(ray: &[Rational], ctx: &SemigroupContext) -> Result<FacetFunctional> {
    let projected = project_to_span(ctx, ray);
    let gens = ctx.presentation().generators();
    let values: RatVector = gens.iter().map(|g| dot_mixed(&projected, g)).collect();
    if values.iter().all(|v| v.is_zero()) {
        return Err(Error::ZeroFunctional);
    }
    if values.iter().any(|v| v.is_negative()) {
        return Err(Error::InvalidParams("functional is negative on a generator".into()));
    }
    let int_values = primitive_from_rational(&values);
    // int_values = scale * values for a single positive rational scale
    let (k, _) = values.iter().enumerate().find(|(_, v)| !v.is_zero()).unwrap();
    let scale = Rational::from_integer(int_values[k].clone()) / &values[k];
    let coefficients: RatVector = projected.iter().map(|c| c * &scale).collect();
    let lattice_row = (0..ctx.lattice().rows())
        .map(|i| {
            let v = dot_mixed(&coefficients, ctx.lattice().row(i));
            assert!(v.is_integer(), "primitive functional not integral on the lattice");
            v.to_integer()
        })
        .collect();
    Ok(FacetFunctional { coefficients, values_on_generators: int_values, lattice_row })
}

/// All facet functionals in canonical order.
pub fn facet_functionals(ctx: &SemigroupContext) -> Result<Vec<FacetFunctional>> {
    dual_cone_rays(ctx)?.iter().map(|r| primitivize(r, ctx)).collect()
}

/// The map `T` from `gp(M)` to `Z^n` stacking all facet functionals.
#[derive(Debug, Clone)]
pub struct FullEmbedding {
    context: SemigroupContext,
    functionals: Vec<FacetFunctional>,
    matrix_t: IntegerMatrix,
    image_generators: Vec<IntVector>,
    image_lattice: IntegerMatrix,
}

impl FullEmbedding {
    pub fn context(&self) -> &SemigroupContext {
        &self.context
    }

    pub fn functionals(&self) -> &[FacetFunctional] {
        &self.functionals
    }

    /// `n x d` matrix of `T` in lattice coordinates.
    pub fn matrix_t(&self) -> &IntegerMatrix {
        &self.matrix_t
    }

    pub fn image_generators(&self) -> &[IntVector] {
        &self.image_generators
    }

    /// Hermite basis of `gp(T(M))` inside `Z^n`.
    pub fn image_lattice(&self) -> &IntegerMatrix {
        &self.image_lattice
    }

    /// Number of facets `n`.
    pub fn facet_count(&self) -> usize {
        self.functionals.len()
    }

    /// `d = dim R`.
    pub fn rank(&self) -> usize {
        self.context.rank()
    }

    /// `T(v)` for `v` in `gp(M)` (ambient coordinates).
    pub fn image_of(&self, v: &[Integer]) -> Option<IntVector> {
        let c = express_in_basis(v, self.context.lattice()).ok()?;
        Some(self.matrix_t.apply(&c))
    }

    /// Is an image-space vector in `gp(T(M))`?
    pub fn in_image_lattice(&self, u: &[Integer]) -> bool {
        express_in_basis(u, &self.image_lattice).is_ok()
    }

    /// Membership in `T(M)`, which is full: lattice point with nonnegative
    /// coordinates.
    pub fn in_image_semigroup(&self, u: &[Integer]) -> bool {
        u.iter().all(|x| !x.is_negative()) && self.in_image_lattice(u)
    }

    /// The image semigroup as a presentation in `N^n`.
    pub fn image_presentation(&self) -> SemigroupPresentation {
        let p = SemigroupPresentation::new(self.facet_count(), self.image_generators.clone())
            .expect("image generators are distinct and nonzero");
        match self.context.presentation().name() {
            Some(n) => p.with_name(format!("T({n})")),
            None => p,
        }
    }

    /// First (lexicographic) point of `gp(T(M))` in `[0, bound]^n` that is
    /// not a sum of image generators, if any.
    pub fn fullness_counterexample(&self, bound: &Integer) -> Option<IntVector> {
        let n = self.facet_count();
        let hi = vec![bound.clone(); n];
        let lo = vec![Integer::zero(); n];
        let reachable = combinations_in_box(&self.image_generators, &hi);
        let mut bad = Vec::new();
        crate::exact::for_each_lattice_point_in_box(&self.image_lattice, &lo, &hi, |_, u| {
            if !reachable.contains(u) {
                bad.push(u.to_vec());
            }
        });
        bad.into_iter().min()
    }
}

pub fn full_embedding(ctx: &SemigroupContext) -> Result<FullEmbedding> {
    let functionals = facet_functionals(ctx)?;
    let d = ctx.rank();
    let rows: Vec<IntVector> = functionals.iter().map(|f| f.lattice_row.clone()).collect();
    let matrix_t = IntegerMatrix::from_rows(d, &rows);
    if integer_rank(&rows) != d {
        return Err(Error::DegenerateCone);
    }
    let image_generators: Vec<IntVector> = (0..ctx.presentation().generators().len())
        .map(|j| functionals.iter().map(|f| f.values_on_generators[j].clone()).collect())
        .collect();
    debug_assert!(image_generators.iter().zip(ctx.lattice_generators()).all(|(img, c)| *img == matrix_t.apply(c)));
    if image_generators.iter().flatten().any(|x| x.is_negative()) {
        return Err(Error::DegenerateCone);
    }
    let image_lattice = hermite_basis(&matrix_t.transpose());
    Ok(FullEmbedding { context: ctx.clone(), functionals, matrix_t, image_generators, image_lattice })
}

/// Convenience: presentation straight to its embedding.
pub fn embed(p: &SemigroupPresentation) -> Result<FullEmbedding> {
    full_embedding(&build_context(p)?)
}

/// A lattice vector `v` of `gp(T(M))` with `v_i = -1` and `v_j >= 0` for
/// `j != i`. In monomial terms `x^v = a_i / x_i` with `a_i = v + e_i` free
/// of `x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionFieldWitness {
    pub coordinate: usize,
    pub a: IntVector,
    pub v: IntVector,
}

/// Build `v = h + k alpha` where `h` has `h_i = -1` (it exists because the
/// i-th functional is primitive), `alpha` is the sum of the image
/// generators on facet `i`, and `k >= 1` is the least multiple making all
/// other coordinates nonnegative.
pub fn fraction_field_witness(emb: &FullEmbedding, i: usize) -> Result<FractionFieldWitness> {
    let not_found = Error::WitnessNotFound { coordinate: i };
    let n = emb.facet_count();
    if i >= n {
        return Err(not_found);
    }
    let (g, c) = bezout_vector(emb.matrix_t.row(i));
    if !g.is_one() {
        return Err(not_found);
    }
    let h: IntVector = emb.matrix_t.apply(&c).into_iter().map(|x| -x).collect();
    debug_assert_eq!(h[i], -Integer::one());
    let mut alpha = vec![Integer::zero(); n];
    for img in emb.image_generators.iter().filter(|u| u[i].is_zero()) {
        for (a, x) in alpha.iter_mut().zip(img) {
            *a += x;
        }
    }
    let mut k = Integer::one();
    for j in (0..n).filter(|&j| j != i) {
        if alpha[j].is_zero() {
            if h[j].is_negative() {
                return Err(not_found);
            }
            continue;
        }
        let need = ceil_div(&-h[j].clone(), &alpha[j]);
        if need > k {
            k = need;
        }
    }
    let v: IntVector = h.iter().zip(&alpha).map(|(x, a)| x + &k * a).collect();
    let mut a = v.clone();
    a[i] += 1;
    Ok(FractionFieldWitness { coordinate: i, a, v })
}

/// Sanity helper used by tests and diagnostics: each functional is
/// nonnegative on generators, vanishes on at least one, and has gcd 1.
pub fn check_functional(f: &FacetFunctional) -> bool {
    let vals = &f.values_on_generators;
    vals.iter().all(|v| !v.is_negative()) && vals.iter().any(|v| v.is_zero()) && content(vals).is_one()
}
