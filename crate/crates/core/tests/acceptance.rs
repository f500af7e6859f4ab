//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use freealg::certify::{certify_elements, CertifyOptions, FreenessReport, ModelId, Status, WordKind};
use freealg::filtration::{gr_mul, omega, quotient_to_gr, quotient_to_ring, rees_mul, ReesElem};
use freealg::group::{
    build_group_element, canonical_valuation, group_bindings, ha_matrix_oracle, ha_mul, theta_leading, GroupAlgElem,
    NSeriesSpec,
};
use freealg::involutions::spec::verify_transform;
use freealg::involutions::{canonical_transform, check_involution, sample_family_i, verify_symmetric, InvolutionSpec};
use freealg::lie::{audit_pair, find_invariant_heisenberg, free_nilpotent, LieSC};
use freealg::pbw::{build_element, pbw_leading, pbw_mul, pbw_naive_mul, pbw_valuation, phi_weyl, weyl_bindings};
use freealg::scalars::{int, rat, Poly, RatFunc};
use freealg::series::{eval_frac_expr, iter_embed, iter_invert, iter_mul, IterPrec, SkewSeries, Window};
use freealg::subfield::{group_fraction_leading, pbw_fraction_leading, standard_bindings};
use freealg::{GradingSpec, PBWElem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PHI_LIMIT: Duration = Duration::from_secs(1);
const DESK_LIMIT: Duration = Duration::from_secs(120);
const EXACT_LIMIT: Duration = Duration::from_secs(10);
const RANDOM_PAIRS: usize = 100;
const ORACLE_PAIRS: usize = 200;
const SAMPLED_INVOLUTIONS: usize = 50;
const SEED: u64 = 20240611;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

fn random_pbw(r: &mut ChaCha8Rng, max_deg: u32) -> PBWElem {
    loop {
        let n = r.gen_range(1..=4);
        let f = PBWElem::from_terms((0..n).map(|_| {
            let l = r.gen_range(0..=max_deg);
            let m = r.gen_range(0..=max_deg - l);
            let k = r.gen_range(0..=max_deg - l - m);
            ((l, m, k), rat(r.gen_range(-5..=5), r.gen_range(1..=3)))
        }));
        if !f.is_zero() {
            return f;
        }
    }
}

fn random_group(r: &mut ChaCha8Rng, max_len: usize) -> GroupAlgElem {
    loop {
        let n = r.gen_range(1..=max_len);
        let f = GroupAlgElem::from_terms((0..n).map(|_| {
            let k = (r.gen_range(-3..=3), r.gen_range(-3..=3), r.gen_range(-4..=4));
            (k, rat(r.gen_range(-5..=5), r.gen_range(1..=3)))
        }));
        if !f.is_zero() {
            return f;
        }
    }
}

fn random_rees(r: &mut ChaCha8Rng, g: GradingSpec) -> ReesElem {
    loop {
        let n = r.gen_range(1..=2);
        let pairs: Vec<(PBWElem, i64)> = (0..n)
            .map(|_| {
                let f = random_pbw(r, 3);
                let v = pbw_valuation(&f, &g).unwrap();
                (f, v - r.gen_range(0..3))
            })
            .collect();
        let x = ReesElem::new(g, pairs).unwrap();
        if !x.is_zero() {
            return x;
        }
    }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn certify(els: &[&str], model: ModelId, kind: WordKind, l: usize) -> Result<FreenessReport, String> {
    certify_elements(els, model, kind, l, &CertifyOptions::default()).map_err(|e| e.to_string())
}

fn expect_certified(r: &FreenessReport, rank: usize) -> Outcome {
    ensure(
        r.status == Status::Certified && r.rank == rank && r.word_count == rank,
        format!("expected CERTIFIED with rank {rank}, got {r}"),
    )
}

fn symmetric(name: &str, inv: &InvolutionSpec) -> Outcome {
    let ok = verify_symmetric(&build_element(name).unwrap(), inv).map_err(|e| e.to_string())?;
    ensure(ok, format!("{name} is not symmetric under {inv}"))
}

fn c1_phi() -> Outcome {
    let start = Instant::now();
    let c = int(-1);
    let w = Window::default();
    let konst = |r| SkewSeries::constant(c.clone(), w, RatFunc::from_poly(Poly::linear_root(r)));
    let one_pm = |k: i64, s: i64| {
        let mut cs = vec![RatFunc::zero(); k as usize + 1];
        cs[0] = RatFunc::one();
        cs[k as usize] = RatFunc::constant(int(s));
        SkewSeries::polynomial(c.clone(), w, 0, cs)
    };
    let (v, y, z) = (PBWElem::v(), PBWElem::y(), PBWElem::z());
    let third = z.scale(&rat(1, 3));
    let cases = [
        ("V", v.clone(), konst(rat(1, 2))),
        ("V - z/3", v.sub(&third), konst(rat(5, 6))),
        ("V + z/3", v.add(&third), konst(rat(1, 6))),
        ("z + y^2", z.add(&y.pow(2)), one_pm(2, 1)),
        ("z - y^2", z.sub(&y.pow(2)), one_pm(2, -1)),
        ("z^2 + y^3", z.pow(2).add(&y.pow(3)), one_pm(3, 1)),
        ("z^2 - y^3", z.pow(2).sub(&y.pow(3)), one_pm(3, -1)),
    ];
    for (name, f, want) in cases {
        let got = phi_weyl(&f).map_err(|e| e.to_string())?;
        ensure(got.is_exact() && got.agrees_with(&want), format!("Φ({name}) = {got}, want {want}"))?;
    }
    ensure(start.elapsed() < PHI_LIMIT, format!("took {:?}", start.elapsed()))
}

fn c2_c3_prop42_and_s_t() -> (Outcome, Outcome) {
    let start = Instant::now();
    let r2 = certify(&["cauchon_s", "cauchon_conj"], ModelId::Weyl, WordKind::FreeGroup, 3);
    let elapsed = start.elapsed();
    let o2 = r2.clone().and_then(|r| {
        expect_certified(&r, 53)?;
        ensure(elapsed < DESK_LIMIT, format!("took {elapsed:?}"))
    });
    let o3 = (|| {
        let b = weyl_bindings(Window::default());
        for (e, s) in [("S", "cauchon_s"), ("T", "cauchon_conj")] {
            let lhs = eval_frac_expr(&build_element(e).unwrap(), &b).map_err(|x| x.to_string())?;
            let rhs = eval_frac_expr(&build_element(s).unwrap(), &b).map_err(|x| x.to_string())?;
            ensure(lhs.agrees_with(&rhs), format!("Φ({e}) differs from {s}"))?;
        }
        let r3 = certify(&["S", "T"], ModelId::Weyl, WordKind::FreeGroup, 3)?;
        expect_certified(&r3, 53)?;
        let r2 = r2.map_err(|e| format!("criterion 2 run failed: {e}"))?;
        ensure(r3.same_outcome(&r2), "report differs from the {s, usu⁻¹} report beyond names")
    })();
    (o2, o3)
}

fn c4() -> Outcome {
    for inv in [InvolutionSpec::eta2(), InvolutionSpec::eta3()] {
        symmetric("S1", &inv)?;
        symmetric("T1", &inv)?;
    }
    expect_certified(&certify(&["S1", "T1"], ModelId::Weyl, WordKind::FreeMonoid, 3)?, 15)?;
    expect_certified(&certify(&["1+S1^2", "1+T1^2"], ModelId::Weyl, WordKind::FreeGroup, 2)?, 17)
}

fn c5() -> Outcome {
    symmetric("S1", &InvolutionSpec::eta1())?;
    symmetric("T2", &InvolutionSpec::eta1())?;
    expect_certified(&certify(&["S1", "T2"], ModelId::Weyl, WordKind::FreeMonoid, 3)?, 15)
}

fn c6() -> Outcome {
    for inv in [InvolutionSpec::eta2(), InvolutionSpec::eta3()] {
        symmetric("S2", &inv)?;
        symmetric("T3", &inv)?;
    }
    symmetric("S2", &InvolutionSpec::eta1())?;
    symmetric("T4", &InvolutionSpec::eta1())?;
    expect_certified(&certify(&["S2^2", "T3^2"], ModelId::Weyl, WordKind::FreeMonoid, 2)?, 7)?;
    expect_certified(&certify(&["S2^2", "T4^2"], ModelId::Weyl, WordKind::FreeMonoid, 2)?, 7)
}

fn c7() -> Outcome {
    let b = standard_bindings();
    for (name, g, want) in
        [("S1", GradingSpec::A, 4), ("T1", GradingSpec::A, 4), ("S1", GradingSpec::B, 6), ("T2", GradingSpec::B, 6)]
    {
        let v = pbw_fraction_leading(&build_element(name).unwrap(), &b, g).map_err(|e| e.to_string())?;
        let d = v.degree().map_err(|e| e.to_string())?;
        ensure(d == want && v.homogeneous, format!("{name} under ({g}): degree {d}, homogeneous {}", v.homogeneous))?;
    }
    Ok(())
}

fn c8() -> Outcome {
    expect_certified(&certify(&["s2dim", "conj2dim"], ModelId::Solvable, WordKind::FreeGroup, 2)?, 17)
}

fn c9() -> Outcome {
    let start = Instant::now();
    let r = certify(&["g+g^-1", "h+h^-1"], ModelId::Fga, WordKind::FreeMonoid, 4)?;
    expect_certified(&r, 31)?;
    ensure(r.window_low.is_none() && r.window_high.is_none() && r.method == "exact", "model is not exact")?;
    ensure(start.elapsed() < EXACT_LIMIT, format!("took {:?}", start.elapsed()))
}

fn c10() -> Outcome {
    let mut r = rng(10);
    for i in 0..ORACLE_PAIRS {
        let (f, g) = (random_pbw(&mut r, 6), random_pbw(&mut r, 6));
        ensure(pbw_mul(&f, &g) == pbw_naive_mul(&f, &g), format!("PBW mismatch on pair {i}: {f} · {g}"))?;
    }
    for i in 0..ORACLE_PAIRS {
        let (f, g) = (random_group(&mut r, 10), random_group(&mut r, 10));
        let lhs = ha_matrix_oracle(&ha_mul(&f, &g));
        let rhs = ha_matrix_oracle(&f).mul(&ha_matrix_oracle(&g));
        ensure(lhs == rhs, format!("group algebra mismatch on pair {i}: {f} · {g}"))?;
    }
    Ok(())
}

fn c11() -> Outcome {
    let mut r = rng(11);
    for g in GradingSpec::all() {
        for _ in 0..RANDOM_PAIRS {
            let (f, h) = (random_pbw(&mut r, 4), random_pbw(&mut r, 4));
            let fh = pbw_mul(&f, &h);
            let (vf, vh, vfh) =
                (pbw_valuation(&f, &g).unwrap(), pbw_valuation(&h, &g).unwrap(), pbw_valuation(&fh, &g).unwrap());
            ensure(vfh == vf + vh, format!("υ not additive under ({g}) for {f}, {h}"))?;
            let lead = pbw_mul(&pbw_leading(&f, &g).unwrap(), &pbw_leading(&h, &g).unwrap());
            ensure(pbw_leading(&fh, &g).unwrap() == lead, format!("leading forms not multiplicative for {f}, {h}"))?;
        }
    }
    for i in 0..RANDOM_PAIRS {
        let g = GradingSpec::all()[i % 4];
        let (x, y) = (random_rees(&mut r, g), random_rees(&mut r, g));
        let p = rees_mul(&x, &y).map_err(|e| e.to_string())?;
        let (wx, wy, wp) = (omega(&x).unwrap(), omega(&y).unwrap(), omega(&p).unwrap());
        ensure(wp == wx + wy && wx <= 0, format!("ω({x}) + ω({y}) ≠ ω of product"))?;
        ensure(quotient_to_ring(&p) == pbw_mul(&quotient_to_ring(&x), &quotient_to_ring(&y)), "R quotient")?;
        ensure(quotient_to_gr(&p) == gr_mul(&quotient_to_gr(&x), &quotient_to_gr(&y)), "gr quotient")?;
    }
    Ok(())
}

fn c12() -> Outcome {
    let gm1 = |i, j, k| GroupAlgElem::group(i, j, k).sub(&GroupAlgElem::one());
    for (n, want) in [(NSeriesSpec::Series1, [1, 1, 2]), (NSeriesSpec::Series2, [1, 2, 3])] {
        let got: Vec<i64> =
            [gm1(1, 0, 0), gm1(0, 1, 0), gm1(0, 0, 1)].iter().map(|f| canonical_valuation(f, n).unwrap()).collect();
        ensure(got == want, format!("{n}: ν(a-1), ν(b-1), ν(c-1) = {got:?}"))?;
    }
    let gb = group_bindings();
    let v = group_fraction_leading(&build_group_element("V_grp").unwrap(), &gb, NSeriesSpec::Series1)
        .map_err(|e| e.to_string())?;
    let v_pbw = pbw_fraction_leading(&freealg::series::FracExpr::atom("V"), &standard_bindings(), GradingSpec::C)
        .map_err(|e| e.to_string())?;
    ensure(v.form.equals(&v_pbw.form), format!("Θ leading form of V_grp is {}", v.form))?;
    let s2g = group_fraction_leading(&build_group_element("S2_grp").unwrap(), &gb, NSeriesSpec::Series1)
        .map_err(|e| e.to_string())?;
    let s2 = pbw_fraction_leading(&build_element("S2").unwrap(), &standard_bindings(), GradingSpec::C)
        .map_err(|e| e.to_string())?;
    ensure(s2g.form.equals(&s2.form), format!("leading form of S2_grp is {}, S2 gives {}", s2g.form, s2.form))?;
    let mut r = rng(12);
    for _ in 0..RANDOM_PAIRS {
        let aug = |f: GroupAlgElem| f.sub(&GroupAlgElem::constant(f.augmentation()));
        let (f, g) = (aug(random_group(&mut r, 4)), aug(random_group(&mut r, 4)));
        if f.is_zero() || g.is_zero() {
            continue;
        }
        for n in [NSeriesSpec::Series1, NSeriesSpec::Series2] {
            let lhs = theta_leading(&ha_mul(&f, &g), n).unwrap();
            let rhs = pbw_mul(&theta_leading(&f, n).unwrap(), &theta_leading(&g, n).unwrap());
            ensure(lhs == rhs, format!("Θ not multiplicative on {f}, {g}"))?;
        }
    }
    Ok(())
}

fn c13() -> Outcome {
    let mut r = rng(13);
    for _ in 0..SAMPLED_INVOLUTIONS {
        let s = sample_family_i(&mut r);
        let check = check_involution(&s);
        ensure(check.ok, format!("{s}: {:?}", check.failures))?;
        let t = canonical_transform(&s).map_err(|e| e.to_string())?;
        ensure(t.canonical.matrix == InvolutionSpec::eta1().matrix, format!("{s} maps to {}", t.canonical))?;
        verify_transform(&s, &t).map_err(|e| format!("{s}: {e}"))?;
    }
    let h = LieSC::heisenberg(InvolutionSpec::eta1().matrix);
    let algebras = [
        ("H-eta1.json", h),
        ("free-nil-c2-g3.json", free_nilpotent(3, 2).unwrap()),
        ("free-nil-c3-g2.json", free_nilpotent(2, 3).unwrap()),
    ];
    for (file, generated) in algebras {
        let text = std::fs::read_to_string(fixture(file)).map_err(|e| format!("{file}: {e}"))?;
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let l = LieSC::from_json(&v).map_err(|e| format!("{file}: {e}"))?;
        ensure(l.to_json() == generated.to_json(), format!("{file} differs from the generator"))?;
        let p = find_invariant_heisenberg(&l).map_err(|e| format!("{file}: {e}"))?;
        audit_pair(&l, &p.xv, &p.yv, &p.case).map_err(|e| format!("{file}: {e}"))?;
    }
    Ok(())
}

fn c14() -> Outcome {
    let caps = IterPrec { x: 3, y: 6, z: 6 };
    let mut r = rng(14);
    for _ in 0..RANDOM_PAIRS {
        let (f, g) = (random_pbw(&mut r, 3), random_pbw(&mut r, 3));
        let lhs = iter_embed(&pbw_mul(&f, &g), caps);
        let rhs = iter_mul(&iter_embed(&f, caps), &iter_embed(&g, caps)).map_err(|e| e.to_string())?;
        ensure(lhs.agrees_with(&rhs), format!("embedding not multiplicative on {f}, {g}"))?;
    }
    let (v, y, z) = (PBWElem::v(), PBWElem::y(), PBWElem::z());
    let third = z.scale(&rat(1, 3));
    for f in [
        z.add(&y.pow(2)),
        z.sub(&y.pow(2)),
        z.pow(2).add(&y.pow(3)),
        z.pow(2).sub(&y.pow(3)),
        v.add(&third),
        v.sub(&third),
    ] {
        let e = iter_embed(&f, caps);
        let inv = iter_invert(&e).map_err(|x| format!("{f}: {x}"))?;
        let ok = iter_mul(&e, &inv).map_err(|x| x.to_string())?.is_one()
            && iter_mul(&inv, &e).map_err(|x| x.to_string())?.is_one();
        ensure(ok, format!("{f} fails the unit check"))?;
    }
    Ok(())
}

fn guarded<T>(f: impl FnOnce() -> Result<T, String>) -> Result<T, String> {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    })
}

fn main() {
    let (o2, o3) = guarded(|| Ok(c2_c3_prop42_and_s_t())).unwrap_or_else(|e| (Err(e.clone()), Err(e)));
    let mut results: HashMap<usize, (&str, Outcome)> = HashMap::new();
    results.insert(1, ("Φ identities", guarded(c1_phi)));
    results.insert(2, ("{s, usu⁻¹} free group words L=3", o2));
    results.insert(3, ("{Φ(S), Φ(T)} free group words L=3", o3));
    results.insert(4, ("S1, T1 symmetric and free", guarded(c4)));
    results.insert(5, ("S1, T2 symmetric and free", guarded(c5)));
    results.insert(6, ("S2, T3, T4 symmetric, squares free", guarded(c6)));
    results.insert(7, ("homogeneity degrees", guarded(c7)));
    results.insert(8, ("two-dimensional solvable pair", guarded(c8)));
    results.insert(9, ("{g+g⁻¹, h+h⁻¹} exact model", guarded(c9)));
    results.insert(10, ("multiplication oracles", guarded(c10)));
    results.insert(11, ("valuation laws", guarded(c11)));
    results.insert(12, ("N-series pipeline", guarded(c12)));
    results.insert(13, ("involutions and Heisenberg subalgebras", guarded(c13)));
    results.insert(14, ("iterated series embedding", guarded(c14)));
    let mut failed = 0;
    for k in 1..=14 {
        let (name, o) = &results[&k];
        match o {
            Ok(()) => println!("criterion {k:>2} PASS  {name}"),
            Err(e) => {
                failed += 1;
                println!("criterion {k:>2} FAIL  {name}: {e}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 14 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
