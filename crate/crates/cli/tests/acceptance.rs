//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria whose stated values disagree with the exact computation are run as
//! stated and reported as FAIL; the process only exits non-zero when a
//! criterion outside that documented set fails.

use std::sync::Arc;

use cr_algebra::linalg::Matrix;
use cr_algebra::{GaussianRational as GR, Monomial, Poly, RationalFn, TruncSeries, Var, VariableSpace};
use cr_cli::{bundled_maps, run_file, Stages};
use cr_core::ahlfors::{ahlfors_at_origin_normalized, ahlfors_explicit_hyperquadric, ahlfors_via_logq, AhlforsTensor};
use cr_core::automorphism::{equivalence_move, random_spec, winkelmann_catalog};
use cr_core::kahler::{isometry_check, metric_matrix, ricci_at, ricci_matrix};
use cr_core::mobius::{check_cr_function, verify_mobius_solution, CandidateU, ModelCRStructure};
use cr_core::sampling::{positive_side_points, rng, small_scalar, surface_points};
use cr_core::{catalog, CrError, HoloMap, Hypersurface, Side};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::Rng;

/// Criteria whose stated values the exact computation contradicts.
const KNOWN_UNATTAINABLE: [usize; 3] = [2, 7, 8];

type Outcome = Result<(bool, String), CrError>;

fn logq(map: &HoloMap) -> Result<AhlforsTensor, CrError> {
    ahlfors_via_logq(map, &map.check_maps_into()?)
}

fn rf_var(s: &Hypersurface, k: usize) -> RationalFn {
    RationalFn::var(s.space(), s.space().holo(k))
}

fn constant(s: &Hypersurface, c: GR) -> RationalFn {
    RationalFn::from_poly(Poly::constant(s.space(), c))
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for eps in [-1i64, 1] {
        for n in 1..=3 {
            for ell in 0..=1 {
                if 2 * ell > n {
                    continue;
                }
                let r = catalog::r_map(n, ell, eps)?;
                let s = r.source();
                let e = constant(s, GR::from_int(eps));
                let zn = rf_var(s, n - 1);
                let expected = (e.clone() + zn.clone()) * (e + zn.conj());
                let q = r.check_maps_into()?;
                checked += 1;
                if q.q.as_rational() != Some(&expected) {
                    bad.push(format!("R(n={n}, ℓ={ell}, ε={eps}): Q = {}", q.q));
                }
            }
        }
    }
    for n in 1..=3 {
        for ell in 1..=n {
            let phi = catalog::phi_map(n, ell)?;
            let q = phi.check_maps_into()?;
            checked += 1;
            if q.q.as_rational().and_then(RationalFn::as_constant) != Some(GR::one()) {
                bad.push(format!("Φ(n'={n}, ℓ'={ell}): Q = {}", q.q));
            }
        }
    }
    Ok((bad.is_empty(), format!("{checked} maps checked; (n, ℓ) = (1, 1) is not a valid hyperquadric; mismatches: {bad:?}")))
}

fn criterion_2() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (p, q) in [(0, 1), (1, 2), (1, 1), (-1, 1), (2, 1)] {
        let eps = GR::ratio(p, q);
        let map = catalog::r_eps(&eps)?;
        let a = logq(&map)?;
        let entry = a.rational_entries().expect("rational map")[0][0].clone();
        let s = map.source();
        let z = rf_var(s, 0);
        let qfn = constant(s, GR::one()) + z.clone() * z.conj() + (z.clone() + z.conj()).scale(&eps);
        let stated = constant(s, &GR::one() - &(&eps * &eps)).try_div(&qfn)?;
        let diff = entry.clone() - stated;
        let rank0 = a.vanishes();
        let unit = p.abs() == q;
        if !diff.is_zero() || rank0 != unit {
            ok = false;
        }
        details.push(format!("ε={eps}: A − stated = {diff}, rank 0: {rank0}"));
    }
    Ok((ok, details.join("; ")))
}

/// A random `φ(z, w)` with small coefficients, sometimes with a denominator.
fn random_phi(s: &Hypersurface, r: &mut impl Rng) -> Result<RationalFn, CrError> {
    let space = s.space();
    let mut p = Poly::zero(space);
    for _ in 0..3 {
        let mut e = vec![0u16; space.len()];
        e[0] = r.gen_range(0..=2);
        e[1] = r.gen_range(0..=1);
        p = &p + &Poly::monomial(space, Monomial::from_exponents(e), small_scalar(r));
    }
    let num = RationalFn::from_poly(p);
    if r.gen_bool(0.5) {
        let w = rf_var(s, 1);
        let den = constant(s, GR::one()) + w.scale(&small_scalar(r));
        Ok(num.try_div(&den)?)
    } else {
        Ok(num)
    }
}

fn criterion_3() -> Outcome {
    let mut maps: Vec<(String, HoloMap)> = Vec::new();
    let phi = catalog::phi_map(1, 1)?;
    for eps in [1, -1] {
        maps.push((format!("Φ∘R(ε={eps})"), phi.compose(&catalog::r_map(1, 0, eps)?)?));
    }
    for mu in [GR::zero(), GR::ratio(1, 3)] {
        let h = catalog::r_eps_mu(&GR::ratio(1, 2), &mu)?;
        maps.push((format!("Φ∘R_(1/2,{mu})"), phi.compose(&h)?));
    }
    let mut r = rng(2024);
    let s = Hypersurface::hyperquadric(1, 0)?;
    for k in 0..5 {
        maps.push((format!("(z, φ, φ, w) #{}", k + 1), catalog::balanced_map(1, vec![random_phi(&s, &mut r)?])?));
    }
    let mut bad = Vec::new();
    for (name, m) in &maps {
        if logq(m)? != ahlfors_explicit_hyperquadric(m)? {
            bad.push(name.clone());
        }
    }
    Ok((bad.is_empty(), format!("{} maps; disagreeing: {:?}", maps.len(), bad)))
}

fn criterion_4() -> Outcome {
    let gr = |a: i64, b: i64, c: i64, d: i64| GR::complex(a, b, c, d);
    let bs: Vec<Matrix> = vec![
        vec![vec![gr(1, 2, 0, 1)]],
        vec![vec![gr(1, 1, 1, 2), GR::from_int(2)], vec![GR::ratio(-1, 3), GR::zero()]],
        vec![
            vec![GR::one(), gr(0, 1, 1, 1)],
            vec![gr(2, 3, -1, 1), GR::zero()],
            vec![GR::zero(), gr(-1, 2, 1, 4)],
        ],
    ];
    let mut bad = Vec::new();
    for (k, b) in bs.iter().enumerate() {
        let got = ahlfors_at_origin_normalized(&catalog::normal_form_map(b)?)?;
        if got != catalog::gram(b) {
            bad.push(k + 1);
        }
    }
    Ok((bad.is_empty(), format!("n ∈ {{1, 2, 3}}; mismatching maps: {bad:?}")))
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let hs = vec![
        ("R(n=1)", catalog::r_map(1, 0, 1)?),
        ("R(n=2)", catalog::r_map(2, 1, -1)?),
        ("R_(1/2,0)", catalog::r_eps_mu(&GR::ratio(1, 2), &GR::zero())?),
        ("R_(1/2,1/3)", catalog::r_eps_mu(&GR::ratio(1, 2), &GR::ratio(1, 3))?),
    ];
    for (name, h) in &hs {
        let t = h.target();
        let phi = catalog::phi_map(t.n(), t.signature())?;
        if logq(&phi.compose(h)?)? != logq(h)? {
            bad.push(*name);
        }
    }
    Ok((bad.is_empty(), format!("{} maps; mismatching: {bad:?}", hs.len())))
}

fn criterion_6() -> Outcome {
    let mut homotheties = 0;
    for (n, ell) in [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)] {
        for spec in winkelmann_catalog(Arc::new(Hypersurface::winkelmann(n, ell)?))? {
            spec.homothety_check()?;
            homotheties += 1;
        }
    }
    let base = catalog::r_eps(&GR::ratio(1, 2))?;
    let source = base.source().clone();
    let start = surface_points(&source, 1, 77).remove(0);
    let h = base.with_base(start.holomorphic(source.ambient_dim()))?;
    let a = logq(&h)?;
    let mut r = rng(99);
    let mut compared = 0;
    let mut bad = Vec::new();
    for mv in 0..10 {
        let phi = random_spec(h.target(), &mut r)?;
        let gamma = random_spec(&source, &mut r)?;
        let moved = equivalence_move(&h, &phi, &gamma)?;
        let a2 = logq(&moved)?;
        let g = gamma.materialize()?;
        let mut seed = 1000 * (mv + 1);
        let mut done = 0;
        while done < 5 {
            let p = surface_points(&source, 1, seed).remove(0);
            seed += 1;
            // points where γ or either tensor is singular are skipped
            let Ok(gp) = g.image_of(&p) else { continue };
            let (Ok(k1), Ok(k2)) = (a.rank_at(&p), a2.rank_at(&gp)) else { continue };
            done += 1;
            compared += 1;
            if k1 != k2 {
                bad.push(format!("{} / {}: {k1} vs {k2}", phi.name(), gamma.name()));
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("{homotheties} catalog homotheties; {compared} rank comparisons; mismatches: {bad:?}"),
    ))
}

fn criterion_7() -> Outcome {
    let mut r = rng(4242);
    let mut failing = 0;
    let mut total = 0;
    let mut planted_rejected = true;
    for (n, ell) in [(1, 1), (2, 1)] {
        let m = ModelCRStructure::new(n, ell)?;
        let pts = m.sample_points(5, 17);
        for _ in 0..25 {
            let c = CandidateU::random(n, &mut r);
            total += 1;
            if !verify_mobius_solution(&m, &c, &pts)? {
                failing += 1;
            }
        }
        let s = m.space().clone();
        let z = Poly::var(&s, s.holo(n - 1));
        let planted = RationalFn::from_poly(&Poly::one(&s) + &(&z * &z));
        if check_cr_function(&m, &planted, &pts)?.passes() {
            planted_rejected = false;
        }
    }
    Ok((
        failing == 0 && planted_rejected,
        format!("{failing}/{total} random tuples rejected (w-coefficient ≠ 0 gives w_(,zz) = −4i z̄²); planted non-solution rejected: {planted_rejected}"),
    ))
}

fn criterion_8() -> Outcome {
    let s1 = Arc::new(Hypersurface::winkelmann(1, 1)?);
    let g1 = metric_matrix(s1)?;
    let ric1 = ricci_matrix(&g1)?;
    let three = GR::from_int(3);
    let exact = (0..g1.dim()).all(|j| (0..g1.dim()).all(|k| ric1[j][k] == g1.entries()[j][k].scale(&three)));
    let s2 = Arc::new(Hypersurface::winkelmann(2, 1)?);
    let g2 = metric_matrix(s2.clone())?;
    let ric2 = ricci_matrix(&g2)?;
    let mut agree = 0;
    let mut ratio = None;
    for p in positive_side_points(&s2, 10, 5) {
        let (r, g) = (ricci_at(&ric2, &p)?, g2.at(&p)?);
        if r.iter().flatten().zip(g.iter().flatten()).all(|(x, y)| *x == y * &three) {
            agree += 1;
        }
        ratio = r[0][0].checked_div(&g[0][0]).ok();
    }
    Ok((
        exact && agree == 10,
        format!(
            "n'=1 exact: {exact}; n'=2: {agree}/10 points; computed Ric/g = {}",
            ratio.map_or("?".into(), |c| c.to_string())
        ),
    ))
}

fn criterion_9() -> Outcome {
    let iso = |m: &HoloMap| -> Result<bool, CrError> { isometry_check(m, &m.check_maps_into()?) };
    let named = [
        (catalog::r_map(1, 0, 1)?, true),
        (catalog::r_map(1, 0, -1)?, true),
        (catalog::phi_map(1, 1)?, true),
        (catalog::phi_map(2, 1)?, true),
        (catalog::r_eps(&GR::ratio(1, 2))?, false),
    ];
    let mut ok = true;
    for (m, want) in &named {
        ok &= iso(m)? == *want;
    }
    let mut files = 0;
    let mut disagree = Vec::new();
    for path in bundled_maps() {
        let report = run_file(&path, None, None, Stages::default()).map_err(|e| CrError::Precondition(e.to_string()))?;
        if report.mode != "rational" {
            continue;
        }
        let (Some(i), Some(a)) = (report.isometry, report.ahlfors.as_ref()) else { continue };
        files += 1;
        if i != a.vanishes {
            disagree.push(path.file_stem().unwrap().to_string_lossy().into_owned());
        }
    }
    Ok((ok && disagree.is_empty(), format!("named maps ok: {ok}; {files} bundled files, disagreeing: {disagree:?}")))
}

fn criterion_10() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (n, ell) in [(1, 0), (2, 1)] {
        let m = catalog::i_map(n, ell, 10)?;
        let q = m.check_maps_into()?;
        let one = q.q.as_series().is_some_and(|s: &TruncSeries| *s.poly() == Poly::one(s.space()));
        let a = ahlfors_via_logq(&m, &q)?;
        ok &= q.maps_into && one && a.vanishes();
        details.push(format!("n={n}: Q = {}, A vanishes through order {:?}", q.q, a.order()));
    }
    Ok((ok, details.join("; ")))
}

fn criterion_11() -> Outcome {
    let mut ok = true;
    let phis = catalog::degenerate_phis()?;
    for phi in &phis {
        let m = catalog::degenerate_map(phi.clone())?;
        let q = m.check_maps_into()?;
        let nowhere = surface_points(m.source(), 5, 3).iter().all(|p| m.transversal_at(&q, p) == Ok(false));
        let rejected = matches!(ahlfors_via_logq(&m, &q), Err(CrError::NonTransversal));
        ok &= q.q.is_zero() && q.side == Side::Degenerate && nowhere && rejected;
    }
    Ok((ok, format!("{} choices of φ", phis.len())))
}

fn prop_space() -> Arc<VariableSpace> {
    VariableSpace::new(&[("z1", 1), ("w", 2)], &[("t", 2)])
}

fn prop_poly(max_terms: usize) -> impl Strategy<Value = Poly> {
    let s = prop_space();
    let n = s.len();
    let scalar = (-5i64..=5, 1i64..=4, -5i64..=5, 1i64..=4).prop_map(|(a, b, c, d)| GR::complex(a, b, c, d));
    prop::collection::vec((prop::collection::vec(0u16..=2, n), scalar), 0..=max_terms).prop_map(move |terms| {
        Poly::from_terms(&s, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c)))
    })
}

fn criterion_12() -> Outcome {
    let runner = || TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    let mut failures = Vec::new();
    let mut record = |name: &str, r: Result<(), proptest::test_runner::TestError<_>>| {
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };
    record(
        "ring axioms",
        runner().run(&(prop_poly(4), prop_poly(4), prop_poly(4)), |(a, b, c)| {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            Ok(())
        }),
    );
    let mut record2 = |name: &str, r: Result<(), proptest::test_runner::TestError<(Poly, Poly)>>| {
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };
    record2(
        "conjugation",
        runner().run(&(prop_poly(5), prop_poly(5)), |(a, b)| {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            Ok(())
        }),
    );
    let mut single = |name: &str, r: Result<(), String>| {
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };
    single(
        "derivatives commute",
        runner()
            .run(&(prop_poly(6), 0usize..5, 0usize..5), |(a, u, v)| {
                let (u, v) = (Var(u), Var(v));
                prop_assert_eq!(a.derivative(u).derivative(v), a.derivative(v).derivative(u));
                Ok(())
            })
            .map_err(|e| e.to_string()),
    );
    single(
        "divide_linear",
        runner()
            .run(&prop_poly(6), |p| {
                let s = p.space().clone();
                let (w, wb) = (s.var("w").unwrap(), s.var("wb").unwrap());
                let (z, zb) = (s.var("z1").unwrap(), s.var("z1b").unwrap());
                let d = &(&Poly::var(&s, w) - &Poly::var(&s, wb)).scale(&GR::complex(0, 1, -1, 2))
                    - &(&Poly::var(&s, z) * &Poly::var(&s, zb));
                let (q, r) = p.divide_linear(&d, wb).unwrap();
                prop_assert!(!r.uses_var(wb));
                prop_assert_eq!(&(&q * &d) + &r, p);
                Ok(())
            })
            .map_err(|e| e.to_string()),
    );
    single(
        "series sqrt",
        runner()
            .run(&(prop_poly(4), 1u32..=6), |(a, order)| {
                let s = a.space().clone();
                let u = Poly::from_terms(&s, a.terms().filter(|(m, _)| !m.is_one()).map(|(m, c)| (m.clone(), c.clone())));
                let x = TruncSeries::from_poly(&(&Poly::one(&s) + &u), order);
                let root = x.sqrt().unwrap();
                prop_assert_eq!(&root * &root, x);
                Ok(())
            })
            .map_err(|e| e.to_string()),
    );
    Ok((failures.is_empty(), format!("5 properties × 1000 cases; failures: {failures:?}")))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 12] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
    ];
    let mut unexpected = Vec::new();
    for (k, run) in criteria {
        let start = std::time::Instant::now();
        let (pass, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let secs = start.elapsed().as_secs_f64();
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("criterion {k}: {verdict} ({secs:.1}s) {detail}");
        if !pass && !KNOWN_UNATTAINABLE.contains(&k) {
            unexpected.push(k);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
