//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::f64::consts::PI;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;

use freebessel::classical::{
    bessel_law, bessel_log_fourier, bessel_s2_weight, poisson_limit, total_variation, CyclotomicInt,
};
use freebessel::freelaws::{
    critical_right_edge_exact, existence_probe, moment, moments_via_partitions_bounded, moments_via_series,
    support, BranchTracker, SeriesRoute, DEFAULT_PROBE_ORDER,
};
use freebessel::matrixlab::{
    bessel_word_moment, dw_model_mc_traces, geodesic_count, glm_exact, hns_character_mc,
    product_model_mc_multi, weingarten_finite_n, DSpec,
};
use freebessel::partitions::{enumerate_nc_s, fuss_catalan, star_moment, ColoredWord};
use freebessel::scalar::{integer, ratio, Rational};
use freebessel::series::{
    classical_cumulants, free_cumulants, moments_from_free_cumulants, s_transform, CumulantKind,
    CumulantSequence, MomentSequence, Series,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn partition_tables() -> Outcome {
    let tables: [(usize, [usize; 5]); 3] =
        [(1, [1, 1, 2, 5, 14]), (2, [1, 1, 3, 12, 55]), (3, [1, 1, 4, 22, 140])];
    for (s, row) in tables {
        for (k, &want) in row.iter().enumerate() {
            let got = enumerate_nc_s(s, k).map_err(|e| e.to_string())?.len();
            ensure(got == want, || format!("NC_{s}({k}) has {got} elements, table says {want}"))?;
        }
    }
    Ok("NC_1, NC_2, NC_3 tables for k <= 4".into())
}

fn moment_triple_agreement() -> Outcome {
    for s in 1..=3usize {
        let sr = integer(s as i64);
        for t in [ratio(1, 4), ratio(1, 2), integer(1)] {
            let parts = moments_via_partitions_bounded(s, &t, 6, 18).map_err(|e| e.to_string())?;
            for route in [SeriesRoute::FreeProduct, SeriesRoute::Compression] {
                let series = moments_via_series(&sr, &t, 6, route).map_err(|e| e.to_string())?;
                for k in 1..=6 {
                    let closed = moment(&sr, &t, k);
                    ensure(closed == series.get(k) && closed == parts.get(k), || {
                        format!("s={s} t={t} k={k} {route:?}: {closed} / {} / {}", series.get(k), parts.get(k))
                    })?;
                }
            }
        }
    }
    Ok("closed form = both series routes = partition sums, 54 exact comparisons".into())
}

fn transform_identity() -> Outcome {
    let order = 8;
    for s in [2i64, 3] {
        for t in [ratio(1, 4), ratio(1, 2), ratio(3, 4)] {
            let sr = integer(s);
            let a = moments_via_series(&sr, &t, order, SeriesRoute::FreeProduct).map_err(|e| e.to_string())?;
            let b = moments_via_series(&sr, &t, order, SeriesRoute::Compression).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("routes differ at s={s} t={t}"))?;
            // S(z) = (1+z)^{1-s} / (t+z), expanded directly
            let one_plus_z = Series::new(vec![integer(1), integer(1)]).truncate(order - 1);
            let t_plus_z = Series::new(vec![t.clone(), integer(1)]).truncate(order - 1);
            let mut want = t_plus_z.recip().map_err(|e| e.to_string())?;
            for _ in 0..(s - 1) {
                want = want.div(&one_plus_z).map_err(|e| e.to_string())?;
            }
            let got = s_transform(&a).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("S transform mismatch at s={s} t={t}: {got} vs {want}"))?;
        }
    }
    Ok("both constructions agree to order 8 and share S = (1+z)^{1-s}/(t+z)".into())
}

fn cumulant_laws() -> Outcome {
    for s in [1usize, 2] {
        for t in [ratio(1, 4), ratio(1, 2), integer(1), integer(2)] {
            // moments of the law with Stieltjes transform f(z^s)
            let m: Vec<Rational> = (1..=8)
                .map(|n| if n % s == 0 { moment(&integer(s as i64), &t, n / s) } else { integer(0) })
                .collect();
            let m = MomentSequence::new(m).map_err(|e| e.to_string())?;
            let want: Vec<Rational> = (1..=8).map(|n| if n % s == 0 { t.clone() } else { integer(0) }).collect();
            let kappa = free_cumulants(&m);
            ensure(kappa.values() == want.as_slice(), || format!("free cumulants s={s} t={t}: {:?}", kappa.values()))?;
            let back = moments_from_free_cumulants(&CumulantSequence::new(CumulantKind::Free, want.clone()));
            ensure(back == m, || format!("free cumulant round trip s={s} t={t}"))?;
        }
    }
    let mut worst: f64 = 0.0;
    for s in [1u32, 2] {
        for t in [0.5, 1.0, 2.0] {
            let law = bessel_law(s, t, 60).map_err(|e| e.to_string())?;
            let m: Vec<f64> = (1..=8).map(|k| law.moment(k).re).collect();
            let c = classical_cumulants(&MomentSequence::new(m).map_err(|e| e.to_string())?);
            for n in 1..=8 {
                let want = if n % s as usize == 0 { t } else { 0.0 };
                worst = worst.max((c.get(n) - want).abs());
            }
        }
    }
    ensure(worst <= 1e-8, || format!("classical cumulant error {worst:e}"))?;
    Ok(format!("free cumulants exact; classical cumulants within {worst:.1e}"))
}

fn support_formulas() -> Outcome {
    for t in [0.25f64, 4.0] {
        let sp = support(1.0, t).map_err(|e| e.to_string())?;
        let (lo, hi) = ((1.0 - t.sqrt()).powi(2), (1.0 + t.sqrt()).powi(2));
        ensure((sp.k_minus - lo).abs() <= 1e-10 && (sp.k_plus - hi).abs() <= 1e-10, || {
            format!("support(1,{t}) = [{}, {}], want [{lo}, {hi}]", sp.k_minus, sp.k_plus)
        })?;
    }
    for s in 1..=3u32 {
        let want = Rational::new(BigInt::from(s + 1).pow(s + 1), BigInt::from(s).pow(s));
        let got = critical_right_edge_exact(s);
        ensure(got == want, || format!("edge for s={s}: {got} vs {want}"))?;
        let float = support(s as f64, 1.0).map_err(|e| e.to_string())?.k_plus;
        ensure((float - freebessel::Scalar::to_f64(&want)).abs() < 1e-12, || format!("float edge for s={s}: {float}"))?;
    }
    Ok("free Poisson edges within 1e-10; t = 1 right edges exact".into())
}

fn density_checks() -> Outcome {
    let mut worst: f64 = 0.0;
    for s in 1..=3u32 {
        for t in [0.5, 1.0, 2.0] {
            let tr = BranchTracker::new(s, t).map_err(|e| e.to_string())?;
            let mass = tr.continuous_moment(0).map_err(|e| e.to_string())?;
            let err = (mass - t.min(1.0)).abs();
            ensure(err <= 1e-5, || format!("mass s={s} t={t}: {mass}"))?;
            worst = worst.max(err);
            for k in 1..=6 {
                let q = tr.continuous_moment(k).map_err(|e| e.to_string())?;
                let m = moment(&(s as f64), &t, k as usize);
                ensure((q - m).abs() <= 1e-5, || format!("moment s={s} t={t} k={k}: {q} vs {m}"))?;
                worst = worst.max((q - m).abs());
            }
        }
        let tr = BranchTracker::new(s, 1.0).map_err(|e| e.to_string())?;
        let x = 1e-6;
        let sf = s as f64;
        let edge = PI * tr.density(x).map_err(|e| e.to_string())? * x.powf(sf / (sf + 1.0));
        let want = (PI * sf / (sf + 1.0)).sin();
        ensure((edge / want - 1.0).abs() <= 0.05, || format!("edge law s={s}: {edge} vs {want}"))?;
    }
    Ok(format!("mass and moments within {worst:.1e}; edge law within 5%"))
}

fn random_matrices() -> Outcome {
    let (n, trials) = (256, 100);
    let mut worst_z: f64 = 0.0;
    for s in 1..=3usize {
        let ks = [1, 2, 3];
        let product = product_model_mc_multi(s, n, &ks, trials, 2026 + s as u64).map_err(|e| e.to_string())?;
        let exps: Vec<usize> = ks.iter().map(|k| s * k).collect();
        let dw = dw_model_mc_traces(s, n, &exps, trials, 4052 + s as u64).map_err(|e| e.to_string())?;
        for (j, &k) in ks.iter().enumerate() {
            let want = freebessel::Scalar::to_f64(&fuss_catalan(&integer(s as i64), k));
            for r in [&product[j], &dw[j]] {
                worst_z = worst_z.max((r.estimate - want).abs() / r.std_error);
                ensure(r.within(want, 3.0), || format!("{}: {} ± {} vs {want}", r.statistic, r.estimate, r.std_error))?;
            }
        }
    }
    for s in 1..=8usize {
        for k in 1..=8 / s {
            let p = glm_exact(s * k, DSpec::RootsOfUnity(s)).map_err(|e| e.to_string())?;
            let count = enumerate_nc_s(s, k).map_err(|e| e.to_string())?.len();
            ensure(p.coefficient(0) == integer(count as i64), || format!("glm constant term s={s} k={k}"))?;
            ensure(p.max_exponent().is_some_and(|e| e <= 0), || format!("positive exponent s={s} k={k}"))?;
        }
    }
    let n_small = 16;
    for s in 1..=3usize {
        for k in 1..=6 / s {
            let p = glm_exact(s * k, DSpec::RootsOfUnity(s)).map_err(|e| e.to_string())?;
            let exact = p.evaluate((s * n_small) as f64);
            let r = dw_model_mc_traces(s, n_small, &[s * k], 400, 77 + (10 * s + k) as u64)
                .map_err(|e| e.to_string())?
                .remove(0);
            ensure(r.within(exact, 3.0), || format!("N=16 s={s} k={k}: {} ± {} vs exact {exact}", r.estimate, r.std_error))?;
        }
    }
    Ok(format!("Monte Carlo within 3 SE (max |z| = {worst_z:.2}); glm constant terms exact; N = 16 exact means matched"))
}

fn geodesics() -> Outcome {
    for s in 1..=8usize {
        for k in 1..=8 / s {
            let got = geodesic_count(s, k).map_err(|e| e.to_string())?;
            let want = fuss_catalan(&integer(s as i64), k);
            ensure(integer(got as i64) == want, || format!("geodesics s={s} k={k}: {got} vs {want}"))?;
        }
    }
    Ok("geodesic counts equal Fuss-Catalan numbers for sk <= 8".into())
}

fn classical_laws() -> Outcome {
    let law = bessel_law(2, 1.0, 30).map_err(|e| e.to_string())?;
    for r in -5i64..=5 {
        let got = law.weight(&CyclotomicInt::from_integer(2, r));
        let want = bessel_s2_weight(1.0, r);
        ensure((got - want).abs() <= 1e-10, || format!("weight at {r}: {got} vs {want}"))?;
    }
    let points = [
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.5, -0.5),
        Complex64::new(-1.2, 0.9),
        Complex64::new(1.5, 1.0),
        Complex64::new(0.0, -2.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(-0.3, 1.7),
        Complex64::new(1.1, -1.3),
    ];
    let mut worst: f64 = 0.0;
    for s in 1..=4u32 {
        let law = bessel_law(s, 1.0, 60).map_err(|e| e.to_string())?;
        for z in points {
            let d = law.fourier(z).ln() - bessel_log_fourier(s, 1.0, z);
            let d = Complex64::new(d.re, d.im - 2.0 * PI * (d.im / (2.0 * PI)).round());
            worst = worst.max(d.norm());
        }
    }
    ensure(worst <= 1e-9, || format!("Fourier identity error {worst:e}"))?;
    for s in 1..=4u32 {
        let target = bessel_law(s, 1.0, 40).map_err(|e| e.to_string())?;
        let tv: Vec<f64> = [4u32, 16, 64, 256]
            .iter()
            .map(|&n| poisson_limit(s, n).map(|m| total_variation(&m, &target)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(tv.windows(2).all(|w| w[1] < w[0]), || format!("TV not decreasing for s={s}: {tv:?}"))?;
    }
    Ok(format!("s = 2 weights within 1e-10; Fourier identity within {worst:.1e}; TV decreasing"))
}

fn characters_and_weingarten() -> Outcome {
    let cases: [(usize, f64, &str); 8] = [
        (1, 1.0, "U"),
        (1, 0.5, "UŪ"),
        (2, 1.0, "UŪ"),
        (2, 0.5, "UUŪŪ"),
        (2, 1.0, "UU"),
        (3, 0.5, "UŪ"),
        (3, 1.0, "UUU"),
        (3, 0.5, "UŪUŪ"),
    ];
    for (i, (s, t, word)) in cases.iter().enumerate() {
        let w: ColoredWord = word.parse().map_err(|e: freebessel::Error| e.to_string())?;
        let r = hns_character_mc(*s, 200, *t, 10_000, 900 + i as u64, &w).map_err(|e| e.to_string())?;
        let want = bessel_word_moment(*s, *t, &w, 40).map_err(|e| e.to_string())?.re;
        ensure(r.within(want, 3.0), || format!("H_n^s s={s} t={t} {word}: {} ± {} vs {want}", r.estimate, r.std_error))?;
    }
    let mut words = vec![ColoredWord::default()];
    for len in 1..=4 {
        for mask in 0..(1u32 << len) {
            let text: String = (0..len).map(|i| if mask >> i & 1 == 1 { 'Ū' } else { 'U' }).collect();
            words.push(text.parse().map_err(|e: freebessel::Error| e.to_string())?);
        }
    }
    let ns = [8u64, 16, 32, 64];
    let mut checked = 0;
    for s in 1..=3usize {
        for w in &words {
            for t in [0.5, 1.0] {
                let limit = star_moment(s, &t, w).map_err(|e| e.to_string())?;
                let errs: Vec<f64> = ns
                    .iter()
                    .map(|&n| weingarten_finite_n(s, w, n, t).map(|r| (r.value - limit).abs()))
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                let c = 8.0 * errs[0];
                let ok = ns.iter().zip(&errs).all(|(&n, &e)| e <= (c / n as f64) * (1.0 + 1e-9) + 1e-9);
                ensure(ok, || format!("Weingarten s={s} t={t} word {w}: errors {errs:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("character moments within 3 SE; {checked} Weingarten sequences with error <= C/n"))
}

fn probe_checks() -> Outcome {
    let s_values = [ratio(1, 5), ratio(1, 2), integer(1), ratio(3, 2), integer(2), ratio(5, 2), integer(3)];
    let t_values = [ratio(1, 10), ratio(1, 4), ratio(1, 2), ratio(3, 4), integer(1)];
    for s in &s_values {
        for t in &t_values {
            let r = existence_probe(s, t, DEFAULT_PROBE_ORDER);
            ensure(r.pass, || format!("probe failed in the defined region at s={s} t={t}: {r:?}"))?;
        }
    }
    let mut failures = 0;
    let mut cells = 0;
    for i in 1..=9 {
        for t in [ratio(3, 2), integer(2), integer(4), integer(8)] {
            cells += 1;
            if !existence_probe(&ratio(i, 10), &t, DEFAULT_PROBE_ORDER).pass {
                failures += 1;
            }
        }
    }
    ensure(failures > 0, || "no Hankel failure inside the critical rectangle".into())?;
    Ok(format!("{} defined-region cells pass; {failures}/{cells} critical cells fail", s_values.len() * t_values.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("partition tables", partition_tables),
        ("moment triple agreement", moment_triple_agreement),
        ("free product identity", transform_identity),
        ("cumulant laws", cumulant_laws),
        ("support formulas", support_formulas),
        ("density", density_checks),
        ("random matrices", random_matrices),
        ("geodesic correspondence", geodesics),
        ("classical laws", classical_laws),
        ("characters and Weingarten", characters_and_weingarten),
        ("critical-rectangle probe", probe_checks),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
