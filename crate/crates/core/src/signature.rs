//! The F-signature as the volume of `P = {x in R^d : 0 <= T x <= 1}`.
//!
//! `a_q` counts the lattice points of `(q - 1) P`, so `a_q / q^d` tends to the
//! Euclidean volume of `P` in lattice coordinates. Vertices come from double
//! description on the homogenized inequalities; the volume is an exact sum
//! over a recursive fan triangulation.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::cone::{embed, FullEmbedding};
use crate::dd::extreme_rays;
use crate::error::{Error, Result};
use crate::exact::{dot_rat, rational_determinant, rational_rank, to_rational, IntVector, RatVector, Rational};
use crate::semigroup::SemigroupPresentation;

/// One inequality `normal . x <= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: RatVector,
    pub bound: Rational,
}

impl HalfSpace {
    fn slack(&self, x: &[Rational]) -> Rational {
        &self.bound - dot_rat(&self.normal, x)
    }
}

#[derive(Debug, Clone)]
pub struct SignaturePolytope {
    dim: usize,
    half_spaces: Vec<HalfSpace>,
    vertices: Vec<RatVector>,
    /// `tight[v]` = indices of half-spaces active at vertex `v`.
    tight: Vec<BTreeSet<usize>>,
}

pub fn signature_polytope(emb: &FullEmbedding) -> Result<SignaturePolytope> {
    let d = emb.rank();
    let t = emb.matrix_t();
    let mut half_spaces = Vec::with_capacity(2 * t.rows());
    // homogenized: y = (x, lambda), constraints A y >= 0
    let mut homog: Vec<IntVector> = Vec::with_capacity(2 * t.rows() + 1);
    for i in 0..t.rows() {
        let row = t.row(i);
        half_spaces
            .push(HalfSpace { normal: to_rational(row).into_iter().map(|x| -x).collect(), bound: Rational::zero() });
        half_spaces.push(HalfSpace { normal: to_rational(row), bound: Rational::one() });
        let mut lower = row.to_vec();
        lower.push(0.into());
        homog.push(lower);
        let mut upper: IntVector = row.iter().map(|x| -x).collect();
        upper.push(1.into());
        homog.push(upper);
    }
    let mut lambda = vec![0.into(); d];
    lambda.push(1.into());
    homog.push(lambda);

    let rays = extreme_rays(&homog, d + 1).map_err(|_| Error::Unbounded)?;
    let mut vertices = Vec::with_capacity(rays.len());
    for r in rays {
        let l = &r[d];
        if !l.is_positive() {
            return Err(Error::Unbounded);
        }
        let lr = Rational::from_integer(l.clone());
        vertices.push(r[..d].iter().map(|x| Rational::from_integer(x.clone()) / &lr).collect::<RatVector>());
    }
    vertices.sort();
    Ok(SignaturePolytope::new(d, half_spaces, vertices))
}

impl SignaturePolytope {
    fn new(dim: usize, half_spaces: Vec<HalfSpace>, vertices: Vec<RatVector>) -> Self {
        let tight = vertices
            .iter()
            .map(|v| half_spaces.iter().enumerate().filter(|(_, h)| h.slack(v).is_zero()).map(|(i, _)| i).collect())
            .collect();
        SignaturePolytope { dim, half_spaces, vertices, tight }
    }

    /// A polytope from explicit inequalities and vertices. Used for testing
    /// the volume routine on shapes that are not signature polytopes.
    pub fn from_parts(dim: usize, half_spaces: Vec<HalfSpace>, mut vertices: Vec<RatVector>) -> Self {
        vertices.sort();
        Self::new(dim, half_spaces, vertices)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_spaces(&self) -> &[HalfSpace] {
        &self.half_spaces
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    fn affine_dim(&self, face: &[usize]) -> usize {
        let Some((&first, rest)) = face.split_first() else {
            return 0;
        };
        let diffs: Vec<RatVector> = rest
            .iter()
            .map(|&v| self.vertices[v].iter().zip(&self.vertices[first]).map(|(a, b)| a - b).collect())
            .collect();
        rational_rank(&diffs)
    }

    /// Faces of dimension `dim - 1` of the face with vertex set `face`.
    fn subfaces(&self, face: &[usize], dim: usize) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for h in 0..self.half_spaces.len() {
            let sub: Vec<usize> = face.iter().copied().filter(|&v| self.tight[v].contains(&h)).collect();
            if sub.len() == face.len() || sub.is_empty() {
                continue;
            }
            if self.affine_dim(&sub) + 1 == dim {
                out.insert(sub);
            }
        }
        out.into_iter().collect()
    }

    /// Fan triangulation of a face from `apex`: recurse into every subface
    /// not containing the apex, coning each from its own smallest vertex.
    fn fan(&self, face: &[usize], dim: usize, apex: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        stack.push(apex);
        if dim == 1 {
            for &v in face {
                if v != apex {
                    let mut s = stack.clone();
                    s.push(v);
                    out.push(s);
                }
            }
        } else {
            for sub in self.subfaces(face, dim) {
                if sub.contains(&apex) {
                    continue;
                }
                // vertices are sorted, so the first index is the lexicographic minimum
                self.fan(&sub, dim - 1, sub[0], stack, out);
            }
        }
        stack.pop();
    }

    fn origin_index(&self) -> Option<usize> {
        self.vertices.iter().position(|v| v.iter().all(|x| x.is_zero()))
    }

    /// Full-dimensional simplices (as vertex index lists) of the
    /// triangulation coned from the origin.
    pub fn triangulation(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let apex = self.origin_index().unwrap_or(0);
        let mut out = Vec::new();
        self.fan(&all, self.dim, apex, &mut Vec::new(), &mut out);
        out
    }

    fn simplex_volume(&self, points: &[&RatVector]) -> Rational {
        let base = points[0];
        let rows: Vec<RatVector> =
            points[1..].iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        rational_determinant(&rows).abs() / factorial(self.dim)
    }

    /// Exact d-volume from the fan triangulation.
    pub fn volume(&self) -> Rational {
        self.triangulation()
            .iter()
            .map(|s| self.simplex_volume(&s.iter().map(|&i| &self.vertices[i]).collect::<Vec<_>>()))
            .sum()
    }

    /// Volume computed a second way: cone every facet from an arbitrary
    /// point `apex`, signing each cone by which side of the facet the apex
    /// lies on. Independent of the triangulation used by [`Self::volume`].
    pub fn boundary_volume(&self, apex: &[Rational]) -> Rational {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut total = Rational::zero();
        for h in 0..self.half_spaces.len() {
            let facet: Vec<usize> = all.iter().copied().filter(|&v| self.tight[v].contains(&h)).collect();
            if facet.is_empty() || self.affine_dim(&facet) + 1 != self.dim {
                continue;
            }
            let height = self.half_spaces[h].slack(apex);
            if height.is_zero() {
                continue;
            }
            let mut pieces = Vec::new();
            if self.dim == 1 {
                pieces.push(vec![facet[0]]);
            } else {
                self.fan(&facet, self.dim - 1, facet[0], &mut Vec::new(), &mut pieces);
            }
            let apex_vec = apex.to_vec();
            for piece in pieces {
                let mut pts: Vec<&RatVector> = vec![&apex_vec];
                pts.extend(piece.iter().map(|&i| &self.vertices[i]));
                let v = self.simplex_volume(&pts);
                if height.is_positive() {
                    total += v;
                } else {
                    total -= v;
                }
            }
        }
        total
    }

    /// Vertex centroid, an interior point.
    pub fn centroid(&self) -> RatVector {
        let n = Rational::from_integer(self.vertices.len().into());
        let mut c = vec![Rational::zero(); self.dim];
        for v in &self.vertices {
            for (ci, x) in c.iter_mut().zip(v) {
                *ci += x;
            }
        }
        c.into_iter().map(|x| x / &n).collect()
    }
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(num_bigint::BigInt::one(), |acc, k| acc * k))
}

pub fn polytope_volume(p: &SignaturePolytope) -> Rational {
    p.volume()
}

#[derive(Debug, Clone)]
pub struct SignatureResult {
    pub value: Rational,
    pub polytope: SignaturePolytope,
    pub embedding: FullEmbedding,
}

/// F-signature of the normal semigroup ring with the given generators.
pub fn f_signature(p: &SemigroupPresentation) -> Result<SignatureResult> {
    let embedding = embed(p)?;
    signature_of_embedding(embedding)
}

pub fn signature_of_embedding(embedding: FullEmbedding) -> Result<SignatureResult> {
    let polytope = signature_polytope(&embedding)?;
    let value = polytope_volume(&polytope);
    debug_assert!(value.is_positive() && value <= Rational::one());
    Ok(SignatureResult { value, polytope, embedding })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn pres(r: usize, gens: &[&[i64]]) -> SemigroupPresentation {
        SemigroupPresentation::from_i64(r, gens).unwrap()
    }

    fn rv(v: &[(i64, i64)]) -> RatVector {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn unit_square() {
        let emb = embed(&pres(2, &[&[1, 0], &[0, 1]])).unwrap();
        let p = signature_polytope(&emb).unwrap();
        assert_eq!(
            p.vertices(),
            &[rv(&[(0, 1), (0, 1)]), rv(&[(0, 1), (1, 1)]), rv(&[(1, 1), (0, 1)]), rv(&[(1, 1), (1, 1)])]
        );
        assert_eq!(p.volume(), rat(1, 1));
    }

    #[test]
    fn veronese_strip() {
        let emb = embed(&pres(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        let p = signature_polytope(&emb).unwrap();
        assert_eq!(
            p.vertices(),
            &[rv(&[(0, 1), (0, 1)]), rv(&[(0, 1), (1, 2)]), rv(&[(1, 1), (-1, 2)]), rv(&[(1, 1), (0, 1)])]
        );
        assert_eq!(p.volume(), rat(1, 2));
    }

    #[test]
    fn segre_volume() {
        let emb = embed(&pres(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]])).unwrap();
        let p = signature_polytope(&emb).unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.volume(), rat(2, 3));
    }

    #[test]
    fn triangle_volume() {
        let hs = vec![
            HalfSpace { normal: rv(&[(-1, 1), (0, 1)]), bound: rat(0, 1) },
            HalfSpace { normal: rv(&[(0, 1), (-1, 1)]), bound: rat(0, 1) },
            HalfSpace { normal: rv(&[(1, 1), (1, 1)]), bound: rat(1, 1) },
        ];
        let verts = vec![rv(&[(0, 1), (0, 1)]), rv(&[(1, 1), (0, 1)]), rv(&[(0, 1), (1, 1)])];
        let p = SignaturePolytope::from_parts(2, hs, verts);
        assert_eq!(p.volume(), rat(1, 2));
        assert_eq!(p.boundary_volume(&p.centroid()), rat(1, 2));
    }

    #[test]
    fn one_dimensional_segment() {
        // K[x^5] is a polynomial ring: T rescales (5) to (1) and P = [0, 1].
        let res = f_signature(&pres(1, &[&[5]])).unwrap();
        assert_eq!(res.polytope.vertices(), &[rv(&[(0, 1)]), rv(&[(1, 1)])]);
        assert_eq!(res.value, rat(1, 1));
        let res = f_signature(&pres(1, &[&[2], &[3]])).unwrap();
        assert_eq!(res.value, rat(1, 1));
    }

    #[test]
    fn boundary_formula_agrees_for_any_apex() {
        for p in [
            pres(2, &[&[2, 0], &[1, 1], &[0, 2]]),
            pres(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]),
            pres(3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1], &[0, 0, 2]]),
        ] {
            let res = f_signature(&p).unwrap();
            let poly = &res.polytope;
            assert_eq!(poly.boundary_volume(&poly.centroid()), res.value);
            let outside: RatVector = vec![rat(7, 3); poly.dim()];
            assert_eq!(poly.boundary_volume(&outside), res.value);
        }
    }

    #[test]
    fn triangulation_simplices_are_nondegenerate() {
        let p = pres(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]);
        let res = f_signature(&p).unwrap();
        let poly = &res.polytope;
        for s in poly.triangulation() {
            assert_eq!(s.len(), poly.dim() + 1);
            let pts: Vec<&RatVector> = s.iter().map(|&i| &poly.vertices()[i]).collect();
            assert!(poly.simplex_volume(&pts).is_positive());
        }
    }

    #[test]
    fn origin_is_a_vertex() {
        let p = pres(2, &[&[1, 0], &[1, 2]]);
        let res = f_signature(&p).unwrap();
        assert!(res.polytope.origin_index().is_some());
        assert!(res.value.is_positive() && res.value <= rat(1, 1));
    }
}
