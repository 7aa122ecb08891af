//! A built-in corpus of small worked examples with known answers.

use fsig_core::cone::{dual_cone_rays, embed, fraction_field_witness};
use fsig_core::exact::{determinant, express_in_basis, format_rational, hermite_basis, int_vec, rat, IntegerMatrix};
use fsig_core::families::{
    eulerian, segre_aq_closed_form, segre_generators, segre_signature, veronese_generators, veronese_signature,
};
use fsig_core::frobenius::{
    brute_force_aq, count_aq, hk_colength, hk_difference_identity, socle_witness, IdealDescription,
};
use fsig_core::semigroup::{build_context, check_normal, member, NormalityVerdict, SemigroupPresentation};
use fsig_core::signature::f_signature;
use fsig_core::Result;

use crate::report::{Report, Table};

fn pres(r: usize, gens: &[&[i64]]) -> Result<SemigroupPresentation> {
    SemigroupPresentation::from_i64(r, gens)
}

fn free2() -> Result<SemigroupPresentation> {
    pres(2, &[&[1, 0], &[0, 1]])
}

fn aq_of(p: &SemigroupPresentation, q: u64) -> Result<i64> {
    Ok(i64::try_from(count_aq(&embed(p)?, q).a_q).unwrap_or(-1))
}

fn signature_is(p: Result<SemigroupPresentation>, n: i64, d: i64) -> Result<bool> {
    Ok(f_signature(&p?)?.value == rat(n, d))
}

type Check = (&'static str, fn() -> Result<bool>);

const CHECKS: &[Check] = &[
    ("hermite basis of [[2,0],[1,1],[0,2]] is [[1,1],[0,2]]", || {
        Ok(hermite_basis(&IntegerMatrix::from_i64(&[&[2, 0], &[1, 1], &[0, 2]]))
            == IntegerMatrix::from_i64(&[&[1, 1], &[0, 2]]))
    }),
    ("hermite basis of [[2,4]] is itself", || {
        Ok(hermite_basis(&IntegerMatrix::from_i64(&[&[2, 4]])) == IntegerMatrix::from_i64(&[&[2, 4]]))
    }),
    ("det [[1,2],[3,4]] = -2", || Ok(determinant(&IntegerMatrix::from_i64(&[&[1, 2], &[3, 4]])) == (-2).into())),
    ("(2,0) = 2(1,1) - (0,2)", || {
        Ok(express_in_basis(&int_vec(&[2, 0]), &IntegerMatrix::from_i64(&[&[1, 1], &[0, 2]])) == Ok(int_vec(&[2, -1])))
    }),
    ("(1,0) is not in the even-sum lattice", || {
        Ok(express_in_basis(&int_vec(&[1, 0]), &IntegerMatrix::from_i64(&[&[1, 1], &[0, 2]])).is_err())
    }),
    ("Veronese(2,2) has rank 2 and lattice [[1,1],[0,2]]", || {
        let ctx = build_context(&veronese_generators(2, 2)?)?;
        Ok(ctx.rank() == 2 && ctx.lattice() == &IntegerMatrix::from_i64(&[&[1, 1], &[0, 2]]))
    }),
    ("Segre(2,2) has rank 3", || Ok(build_context(&segre_generators(2, 2)?)?.rank() == 3)),
    ("membership in Veronese(2,2): (3,1) yes, (1,0) no, 0 yes", || {
        let emb = embed(&veronese_generators(2, 2)?)?;
        let (ctx, f) = (emb.context(), emb.functionals());
        Ok(member(ctx, f, &int_vec(&[3, 1])) && !member(ctx, f, &int_vec(&[1, 0])) && member(ctx, f, &int_vec(&[0, 0])))
    }),
    ("Veronese(2,2) is normal up to 6", || {
        let emb = embed(&veronese_generators(2, 2)?)?;
        Ok(matches!(check_normal(emb.context(), emb.functionals(), &6.into()), NormalityVerdict::Normal { .. }))
    }),
    ("{(2,0),(0,1),(1,1)} is not normal: (1,0)", || {
        let emb = embed(&pres(2, &[&[2, 0], &[0, 1], &[1, 1]])?)?;
        Ok(check_normal(emb.context(), emb.functionals(), &4.into())
            == NormalityVerdict::CounterexampleFound(int_vec(&[1, 0])))
    }),
    ("dual cone of {(1,0),(1,2)} has rays (0,1), (2,-1)", || {
        let rays = dual_cone_rays(&build_context(&pres(2, &[&[1, 0], &[1, 2]])?)?)?;
        Ok(rays == vec![vec![rat(0, 1), rat(1, 1)], vec![rat(2, 1), rat(-1, 1)]])
    }),
    ("Segre(2,2) has 4 facets", || Ok(embed(&segre_generators(2, 2)?)?.facet_count() == 4)),
    ("{(2,0),(0,2)} embeds onto N^2", || {
        let emb = embed(&pres(2, &[&[2, 0], &[0, 2]])?)?;
        let mut img = emb.image_generators().to_vec();
        img.sort();
        Ok(img == vec![int_vec(&[0, 1]), int_vec(&[1, 0])])
    }),
    ("fraction-field witness of N^2 has v = (-1,1)", || {
        let w = fraction_field_witness(&embed(&free2()?)?, 0)?;
        Ok(w.v == int_vec(&[-1, 1]) && w.a == int_vec(&[0, 1]))
    }),
    ("socle witness: mu = (2,2) for N^2, (5,5) for Veronese(2,2)", || {
        Ok(socle_witness(&embed(&free2()?)?)?.mu == int_vec(&[2, 2])
            && socle_witness(&embed(&veronese_generators(2, 2)?)?)?.mu == int_vec(&[5, 5]))
    }),
    ("signature of N^2 is 1", || signature_is(free2(), 1, 1)),
    ("signature of Segre(2,2) is 2/3", || signature_is(segre_generators(2, 2), 2, 3)),
    ("signature of Veronese(2,3) is 1/3", || signature_is(veronese_generators(2, 3), 1, 3)),
    ("signature of Veronese(3,2) is 1/2", || signature_is(veronese_generators(3, 2), 1, 2)),
    ("a_3: N^2 -> 9, Veronese(2,2) -> 5, Segre(2,2) -> 19", || {
        Ok(aq_of(&free2()?, 3)? == 9
            && aq_of(&veronese_generators(2, 2)?, 3)? == 5
            && aq_of(&segre_generators(2, 2)?, 3)? == 19)
    }),
    ("brute force: N^2 q=2 -> 4, Segre(2,2) q=2 -> 6, Veronese(2,2) q=3 -> 5", || {
        Ok(brute_force_aq(&free2()?, 2)? == 4.into()
            && brute_force_aq(&segre_generators(2, 2)?, 2)? == 6.into()
            && brute_force_aq(&veronese_generators(2, 2)?, 3)? == 5.into())
    }),
    ("Veronese(2,2): a_2 = 2, a_4 = 8", || {
        let p = veronese_generators(2, 2)?;
        Ok(aq_of(&p, 2)? == 2 && aq_of(&p, 4)? == 8)
    }),
    ("K[x]: l(R/a_1^[q]) = 2q and l(R/(a_1^[q] + x^q)) = q", || {
        let emb = embed(&pres(1, &[&[1]])?)?;
        let mu = int_vec(&[1]);
        for q in 1..=5u64 {
            let a = hk_colength(&emb, &IdealDescription::NotDividing { mu: mu.clone(), t: 1 }, q)?;
            let b = hk_colength(&emb, &IdealDescription::with_socle_power(&mu, 1), q)?;
            if a != (2 * q).into() || b != q.into() {
                return Ok(false);
            }
        }
        Ok(true)
    }),
    ("colength difference equals a_q", || {
        for (p, t, q, want) in [
            (free2()?, 1, 2, 4),
            (veronese_generators(2, 2)?, 1, 3, 5),
            (veronese_generators(2, 2)?, 2, 3, 5),
            (segre_generators(2, 2)?, 1, 2, 6),
            (segre_generators(2, 2)?, 1, 3, 19),
        ] {
            let emb = embed(&p)?;
            let id = hk_difference_identity(&emb, &socle_witness(&emb)?, t, q)?;
            if !(id.equal && id.lhs == want.into()) {
                return Ok(false);
            }
        }
        Ok(true)
    }),
    ("Eulerian numbers A(1,1)=1, A(3,2)=4, A(4,3)=11", || {
        Ok(eulerian(1, 1) == 1.into() && eulerian(3, 2) == 4.into() && eulerian(4, 3) == 11.into())
    }),
    ("Segre closed form a_q = 1, 6, 19 for q = 1, 2, 3", || {
        Ok([1, 6, 19].iter().zip(1..).all(|(&want, q)| segre_aq_closed_form(2, 2, q) == want.into()))
    }),
    ("closed-form signatures 2/3, 11/24, 11/20, 1/3, 1", || {
        Ok(segre_signature(2, 2) == rat(2, 3)
            && segre_signature(2, 3) == rat(11, 24)
            && segre_signature(3, 3) == rat(11, 20)
            && veronese_signature(2, 3) == rat(1, 3)
            && veronese_signature(4, 1) == rat(1, 1))
    }),
    ("signature renders as 1/1 for N^2", || Ok(format_rational(&f_signature(&free2()?)?.value) == "1/1")),
];

/// Runs every check; the flag says whether all of them passed.
pub fn run() -> (Report, bool) {
    let mut report = Report::new("selftest");
    let mut table = Table::new("", &["#", "check", "result"]);
    let mut results = Vec::new();
    let mut passed = 0;
    for (i, (name, check)) in CHECKS.iter().enumerate() {
        let (ok, note) = match check() {
            Ok(true) => (true, "PASS".to_string()),
            Ok(false) => (false, "FAIL".to_string()),
            Err(e) => (false, format!("FAIL ({e})")),
        };
        passed += usize::from(ok);
        table.push(vec![(i + 1).to_string(), name.to_string(), note]);
        results.push(serde_json::json!({"check": name, "pass": ok}));
    }
    let all = passed == CHECKS.len();
    report.table(table);
    report.line("passed", format!("{passed} of {}", CHECKS.len()));
    report.json("checks", serde_json::Value::Array(results));
    report.json("passed", passed.into());
    report.json("total", CHECKS.len().into());
    (report, all)
}

#[cfg(test)]
mod tests {
    #[test]
    fn every_check_passes() {
        let (report, all) = super::run();
        assert!(all, "{}", report.to_text());
    }
}
