//! Acceptance suite: one PASS/FAIL line per criterion. Every criterion is an
//! exact integer or boolean comparison (tolerance: exact).

mod common;

use std::time::Instant;

use common::{fermat, plane, random_m_primary};
use hk_core::filtration::{binom2, fit_hilbert_polynomial, fit_powers_adaptive, hilbert_samuel_table, DEFAULT_WINDOW};
use hk_core::groebner::buchberger;
use hk_core::hk::paper::{fermat_frobenius_reduction, fermat_membership};
use hk_core::hk::rr::{ratliff_rush_of_power, rr_filtration_with_reduction, DEFAULT_RR_CAP};
use hk_core::hk::{
    estimates_inequality_check, find_minimal_reduction, ratliff_rush_closure, theorem41_check, verify_reduction,
    Analysis, HKReport,
};
use hk_core::{Ideal, Monomial};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn run(id: u32, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("[PASS] criterion {id:>2} (tolerance: exact) {title} | {detail} | {secs:.2}s");
            true
        }
        Err(detail) => {
            println!("[FAIL] criterion {id:>2} (tolerance: exact) {title} | {detail} | {secs:.2}s");
            false
        }
    }
}

fn fermat2_analysis() -> Result<Analysis, String> {
    let r = fermat(2);
    let m = r.maximal_ideal();
    let j = r.ideal(&["y", "z"]).map_err(err)?;
    let d = verify_reduction(&m, &j, 6).map_err(err)?;
    Analysis::new(d, 1).map_err(err)
}

fn criterion_1() -> Outcome {
    let r = fermat(2);
    let (in_colon, in_square) = fermat_membership(&r).map_err(err)?;
    ensure(in_colon, || "x^2y^4z^13 not found in (m^[8])^4 : (m^[8])^2".into())?;
    ensure(!in_square, || "x^2y^4z^13 unexpectedly in (m^[8])^2".into())?;
    Ok("member of the colon, not of (m^[8])^2".into())
}

fn criterion_2() -> Outcome {
    let r = fermat(2);
    let m = r.maximal_ideal();
    let j = r.ideal(&["y", "z"]).map_err(err)?;
    let d = verify_reduction(&m, &j, 6).map_err(err)?;
    ensure(d.r == 2, || format!("r_J(m) = {}", d.r))?;
    for q in [2, 4, 8] {
        let eq = fermat_frobenius_reduction(&r, q).map_err(err)?;
        ensure(eq, || format!("(m^[{q}])^3 != J^[{q}](m^[{q}])^2"))?;
    }
    Ok("r_J(m) = 2; (m^[q])^3 = J^[q](m^[q])^2 for q = 2, 4, 8".into())
}

/// Monomials `x^a y^b` outside `(x^4, x^3y, xy^3, y^4)`, by enumeration.
fn remark_grid_oracle() -> u64 {
    let gens = [(4, 0), (3, 1), (1, 3), (0, 4)];
    let mut count = 0;
    for a in 0..8u32 {
        for b in 0..8u32 {
            if !gens.iter().any(|&(ga, gb)| a >= ga && b >= gb) {
                count += 1;
            }
        }
    }
    count
}

fn criterion_3() -> Outcome {
    let r = plane(2);
    let i = r.ideal(&["x^4", "x^3*y", "x*y^3", "y^4"]).map_err(err)?;
    let w = r.parse("x^2*y^2").map_err(err)?;
    let rr = ratliff_rush_closure(&i, 1).map_err(err)?;
    ensure(rr.closure.contains(&w).map_err(err)?, || "x^2y^2 not in the closure".into())?;
    ensure(!i.contains(&w).map_err(err)?, || "x^2y^2 already in I".into())?;
    let len = i.colength().map_err(err)?;
    let oracle = remark_grid_oracle();
    ensure(len == 11 && oracle == 11, || format!("l(R/I) = {len}, grid oracle {oracle}"))?;
    let j = r.ideal(&["x^4", "y^4"]).map_err(err)?;
    let red = verify_reduction(&i, &j, 4).map_err(err)?;
    let mut lengths = Vec::new();
    for q in [2u64, 4, 8] {
        let iq = i.frobenius_power(q).map_err(err)?;
        let jq = j.frobenius_power(q).map_err(err)?;
        let (f, _) = rr_filtration_with_reduction(&iq, &jq, red.r, 1, red.r + 8, 1, DEFAULT_RR_CAP).map_err(err)?;
        ensure(f.certified(), || format!("no Ratliff-Rush certificate at q = {q}"))?;
        let l = f.ideals[1].colength().map_err(err)?;
        ensure(l < q * q * len, || format!("q = {q}: {l} >= {}", q * q * len))?;
        lengths.push(format!("{l} < {}", q * q * len));
    }
    Ok(format!("x^2y^2 in RR(I) \\ I; l(R/I) = 11; {}", lengths.join(", ")))
}

fn criterion_4() -> Outcome {
    let r = plane(7);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut seen = Vec::new();
    for _ in 0..5 {
        let i = random_m_primary(&r, &mut rng, 4, 2);
        let len = i.colength().map_err(err)?;
        for q in [7u64, 49] {
            let lq = i.frobenius_power(q).map_err(err)?.colength().map_err(err)?;
            ensure(lq == q * q * len, || {
                format!("I = ({}), q = {q}: {lq} != {}", i.format_generators().join(", "), q * q * len)
            })?;
        }
        seen.push(len.to_string());
    }
    Ok(format!("5 ideals with l(R/I) = {}", seen.join(", ")))
}

fn check_parameter_ideal(j: &Ideal, qs: &[u64]) -> Result<(), String> {
    for &q in qs {
        let jq = j.frobenius_power(q).map_err(err)?;
        let table = hilbert_samuel_table(&jq, 4).map_err(err)?;
        let base = table.values[1] as i64;
        for n in 0..=4i64 {
            ensure(table.at(n) == binom2(n + 1) * base, || {
                format!("q = {q}, n = {n}: {} != C(n+1,2) * {base}", table.at(n))
            })?;
        }
        let c = fit_hilbert_polynomial(&table, DEFAULT_WINDOW).map_err(err)?;
        ensure((c.e0, c.e1, c.e2) == (base, 0, 0), || {
            format!("q = {q}: fitted ({}, {}, {})", c.e0, c.e1, c.e2)
        })?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let f2 = fermat(2);
    check_parameter_ideal(&f2.ideal(&["y", "z"]).map_err(err)?, &[2, 4])?;
    let f7 = fermat(7);
    check_parameter_ideal(&f7.ideal(&["y", "z"]).map_err(err)?, &[7, 49])?;
    let p7 = plane(7);
    check_parameter_ideal(&p7.ideal(&["x+y^2", "y^3"]).map_err(err)?, &[7, 49])?;
    Ok("(y,z) in both Fermat cubics and (x+y^2, y^3) in F_7[x,y]; coefficients (e0, 0, 0)".into())
}

fn fermat2_report() -> Result<HKReport, String> {
    fermat2_analysis()?.tables(3, 4).map_err(err)
}

fn criterion_6(report: &HKReport) -> Outcome {
    let check = theorem41_check(report).map_err(err)?;
    ensure(report.rows.len() == 3, || format!("{} rows", report.rows.len()))?;
    for row in &check.rows {
        ensure(row.ok(), || format!("{row:?}"))?;
        ensure(row.residual_polynomial.first().map(|r| r.0) == Some(report.reduction_number as i64 - 1), || {
            "polynomial residuals do not start at n = r - 1".into()
        })?;
    }
    let es: Vec<String> = report
        .rows
        .iter()
        .map(|r| format!("q={}: ({},{},{})", r.q, r.e0, r.e1, r.e2))
        .collect();
    Ok(format!("r = {}; residuals (a), (b), (c) all 0; {}", report.reduction_number, es.join(" ")))
}

fn criterion_7(report: &HKReport) -> Outcome {
    for row in &report.rows {
        ensure(row.hm_residuals.iter().all(|r| r.1 == 0), || {
            format!("q = {}: {:?}", row.q, row.hm_residuals)
        })?;
    }
    // parameter-ideal filtrations
    let f2 = fermat(2);
    let j = f2.ideal(&["y", "z"]).map_err(err)?;
    let a = Analysis::new(verify_reduction(&j, &j, 2).map_err(err)?, 1).map_err(err)?;
    let p7 = plane(7);
    let jp = p7.ideal(&["x+y^2", "y^3"]).map_err(err)?;
    let b = Analysis::new(verify_reduction(&jp, &jp, 2).map_err(err)?, 1).map_err(err)?;
    for rep in [a.tables(3, 4).map_err(err)?, b.tables(1, 4).map_err(err)?] {
        for row in &rep.rows {
            ensure(row.hm_residuals.iter().all(|r| r.1 == 0), || {
                format!("parameter ideal, q = {}: {:?}", row.q, row.hm_residuals)
            })?;
        }
    }
    Ok("Fermat m at q = 2, 4, 8 and parameter ideals: all residuals 0".into())
}

fn criterion_8(report: &HKReport) -> Outcome {
    // difference-table oracle for m itself
    let r = fermat(2);
    let m = r.maximal_ideal();
    let (_, c) = fit_powers_adaptive(&m, 6, 20, DEFAULT_WINDOW).map_err(err)?;
    ensure((c.e0, c.e1, c.e2) == (3, 3, 1), || format!("fit of m gives ({}, {}, {})", c.e0, c.e1, c.e2))?;
    let mut parts = Vec::new();
    for row in &report.rows {
        let lq = m.frobenius_power(row.q).map_err(err)?.colength().map_err(err)? as i64;
        ensure(0 <= row.e2 && row.e2 <= c.e2 * lq, || format!("q = {}: e2 = {}, bound {}", row.q, row.e2, c.e2 * lq))?;
        parts.push(format!("q={}: 0 <= {} <= {}", row.q, row.e2, c.e2 * lq));
    }
    Ok(parts.join(", "))
}

fn criterion_9() -> Outcome {
    let a = fermat2_analysis()?;
    let mut parts = Vec::new();
    for n in [2, 3] {
        let rep = estimates_inequality_check(&a, 2, n, 3).map_err(err)?;
        ensure(rep.ok(), || format!("n = {n}: {:?}", rep.slacks))?;
        parts.push(format!("n={n}: {:?}", rep.slacks.iter().map(|s| s.1).collect::<Vec<_>>()));
    }
    Ok(format!("slacks for t = 1..3: {}", parts.join(", ")))
}

fn compare_routes(a: &Analysis, q: u64) -> Result<String, String> {
    let c = a.coefficients(q).map_err(err)?;
    let iq = a.ideal.frobenius_power(q).map_err(err)?;
    let start = a.r() + DEFAULT_WINDOW + 2;
    let (_, fit) = fit_powers_adaptive(&iq, start, start + 20, DEFAULT_WINDOW).map_err(err)?;
    ensure((c.e0, c.e1, c.e2) == (fit.e0, fit.e1, fit.e2), || {
        format!(
            "q = {q}: v-route ({}, {}, {}) vs fit ({}, {}, {})",
            c.e0, c.e1, c.e2, fit.e0, fit.e1, fit.e2
        )
    })?;
    Ok(format!("({},{},{})", c.e0, c.e1, c.e2))
}

fn criterion_10() -> Outcome {
    let a = fermat2_analysis()?;
    let mut parts = Vec::new();
    for q in [2, 4] {
        parts.push(format!("Fermat q={q}: {}", compare_routes(&a, q)?));
    }
    let r = plane(7);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for k in 0..3 {
        let i = random_m_primary(&r, &mut rng, 3, 1);
        let d = find_minimal_reduction(&i, k, 20, 10).map_err(err)?;
        let a = Analysis::new(d, 1).map_err(err)?;
        parts.push(format!(
            "({}) q=7: {}",
            i.format_generators().join(", "),
            compare_routes(&a, 7)?
        ));
    }
    Ok(parts.join("; "))
}

const INSTANCES: usize = 50;

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rings = [plane(2), plane(3), plane(7)];

    // chain ascent (I^{n+1}:I^n) ⊆ (I^{n+2}:I^{n+1})
    for k in 0..INSTANCES {
        let r = &rings[k % rings.len()];
        let i = random_m_primary(r, &mut rng, 3, 2);
        let mut powers = vec![r.unit_ideal(), i.clone()];
        for n in 2..=4 {
            powers.push(powers[n - 1].product(&i).map_err(err)?);
        }
        let chain: Vec<Ideal> = (1..=3)
            .map(|n| powers[n + 1].colon(&powers[n]))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        for w in chain.windows(2) {
            ensure(w[0].is_subset_of(&w[1]).map_err(err)?, || {
                format!("chain descends for ({})", i.format_generators().join(", "))
            })?;
        }
    }

    // gap non-negativity l(R/RR((I^[q])^n)) <= l(R/(I^[q])^n)
    for k in 0..INSTANCES {
        let r = &rings[k % rings.len()];
        let q = r.characteristic() as u64;
        let i = random_m_primary(r, &mut rng, 2, 1);
        let iq = i.frobenius_power(q).map_err(err)?;
        for n in 1..=2 {
            let rr = ratliff_rush_of_power(&iq, n, 1, DEFAULT_RR_CAP).map_err(err)?;
            let (a, b) = (
                rr.closure.colength().map_err(err)?,
                iq.power(n as i64).map_err(err)?.colength().map_err(err)?,
            );
            ensure(a <= b, || format!("gap negative: {a} > {b}"))?;
        }
    }

    // (I^n)^[q] = (I^[q])^n
    let f2 = fermat(2);
    for k in 0..INSTANCES {
        let (i, q) = if k % 2 == 0 {
            let r = &rings[k % rings.len()];
            (random_m_primary(r, &mut rng, 3, 2), r.characteristic() as u64)
        } else {
            let gens = (0..2).map(|_| common::random_poly(&f2, &mut rng, 2, 2)).collect();
            (Ideal::new(&f2, gens), 2)
        };
        let n = 2 + (k % 2) as i64;
        let lhs = i.power(n).map_err(err)?.frobenius_power(q).map_err(err)?;
        let rhs = i.frobenius_power(q).map_err(err)?.power(n).map_err(err)?;
        ensure(lhs.equals(&rhs).map_err(err)?, || {
            format!("Frobenius and powers disagree for ({})", i.format_generators().join(", "))
        })?;
    }

    // reduced bases are canonical under generator shuffles
    for k in 0..INSTANCES {
        let r = &rings[k % rings.len()];
        let pr = r.poly_ring();
        let mut gens: Vec<_> = (0..3).map(|_| common::random_poly(r, &mut rng, 3, 3)).collect();
        gens.push(pr.monomial(Monomial::from_exponents(&[0, 4]).unwrap()));
        let a = buchberger(pr, &gens).map_err(err)?;
        gens.shuffle(&mut rng);
        let b = buchberger(pr, &gens).map_err(err)?;
        ensure(a.generators() == b.generators(), || "reduced bases differ after a shuffle".into())?;
    }
    Ok(format!("{INSTANCES} instances each: chain ascent, gap >= 0, (I^n)^[q] = (I^[q])^n, GB canonicity"))
}

fn main() {
    let mut results = Vec::new();
    results.push(run(1, "x^2y^4z^13 in (m^[8])^4:(m^[8])^2 but not in (m^[8])^2", criterion_1));
    results.push(run(2, "r_J(m) = 2 and (m^[q])^3 = J^[q](m^[q])^2", criterion_2));
    results.push(run(3, "Ratliff-Rush example in F_2[x,y]", criterion_3));
    results.push(run(4, "regular ring: l(R/I^[q]) = q^2 l(R/I)", criterion_4));
    results.push(run(5, "parameter ideals: l(R/(J^[q])^n) = C(n+1,2) l(R/J^[q])", criterion_5));
    let report = fermat2_report();
    let with_report = |f: fn(&HKReport) -> Outcome| -> Outcome {
        match &report {
            Ok(r) => f(r),
            Err(e) => Err(format!("table construction failed: {e}")),
        }
    };
    results.push(run(6, "finite-q closed forms for e1, e2 and the RR polynomial", || {
        with_report(criterion_6)
    }));
    results.push(run(7, "HM identities for RR and parameter filtrations", || with_report(criterion_7)));
    results.push(run(8, "0 <= e2(m^[q]) <= e2(m) l(R/m^[q])", || with_report(criterion_8)));
    results.push(run(9, "estimate inequality slacks >= 0", criterion_9));
    results.push(run(10, "v-route coefficients equal the difference-table fit", criterion_10));
    results.push(run(11, "property suites", criterion_11));
    let passed = results.iter().filter(|&&b| b).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
