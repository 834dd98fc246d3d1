//! End-to-end acceptance run. Each criterion prints one PASS or FAIL line;
//! a failing criterion is reported, not asserted, so the run always finishes.
#![allow(clippy::excessive_precision)]

mod common;

use cheb_forge::catalog::{self, catalog};
use cheb_forge::fit::{self, FitConfig, FitResult};
use cheb_forge::partial_fractions::{a_ns_table, decompose, expand_inverse, expand_pole_series};
use cheb_forge::recurrence::{divide_tn_oracle, example_denominator, extend, DivisionStates};
use cheb_forge::special::{digamma_identities, digamma_k, elliptic_g};
use cheb_forge::truncated::{divide, reciprocal};
use cheb_forge::{Basis, ChebSeries, MonomialPoly};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, SQRT_2};
use std::io::Write;
use std::time::Instant;

type Outcome = Result<(bool, String), String>;

const EXAMPLE_POLY: [f64; 4] = [80.0, -24.0, -3.0, 1.0];
const EXAMPLE_A: [f64; 5] = [0.02671606, 0.00412578, 0.00087916, 0.00013030, 0.00002159];

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn max_dev(got: &[f64], want: &[f64]) -> f64 {
    got.iter().zip(want).map(|(g, w)| (g - w).abs()).fold(0.0, f64::max)
}

fn fit_four_steps(name: &str, k: usize, n: usize) -> Result<(ChebSeries, FitResult), String> {
    let f = catalog(name, n).map_err(err)?;
    let cfg = FitConfig::new(k).with_n(n).with_newton_iters(4).with_tolerance(1e-300);
    let r = fit::newton_fit(&f, &cfg).map_err(err)?;
    Ok((f, r))
}

/// Compares `b` in the plain convention (and optionally `d`) against a table
/// under the graded tolerance; returns the failures.
fn graded_table(r: &FitResult, b_table: &[(usize, f64)], d_table: &[(usize, f64)]) -> Vec<String> {
    let d = r.b.to_monomial();
    let mut bad = Vec::new();
    for &(n, want) in b_table {
        let got = r.b.plain(n);
        if !common::graded_ok(got, want) {
            bad.push(format!("b_{n} {got:e} vs {want:e}"));
        }
    }
    for &(n, want) in d_table {
        let got = d.coeffs()[n];
        if !common::graded_ok(got, want) {
            bad.push(format!("d_{n} {got:e} vs {want:e}"));
        }
    }
    bad
}

fn sci(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>().join(" ")
}

fn verdict(bad: Vec<String>, ok_note: String) -> Outcome {
    if bad.is_empty() {
        Ok((true, ok_note))
    } else {
        Ok((false, bad.join("; ")))
    }
}

fn c1_worked_example() -> Outcome {
    let b = example_denominator(Basis::Standard);
    let pf = expand_inverse(&decompose(&MonomialPoly::new(EXAMPLE_POLY)).map_err(err)?, 4).map_err(err)?;
    let trunc = reciprocal(&b, 40).map_err(err)?;
    let from_pf = extend(&pf.coeffs()[..3], &b, 4).map_err(err)?;
    let from_trunc = extend(&trunc.coeffs()[..3], &b, 4).map_err(err)?;
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    for (label, s) in [
        ("pf", &pf),
        ("truncate", &trunc),
        ("recurrence/pf", &from_pf),
        ("recurrence/truncate", &from_trunc),
    ] {
        let dev = max_dev(&s.coeffs()[..5], &EXAMPLE_A);
        worst = worst.max(dev);
        notes.push(format!("{label} {dev:.1e}"));
    }
    Ok((
        worst <= 5e-9,
        format!("max |a_n - printed| per backend: {}", notes.join(", ")),
    ))
}

fn c2_truncation_convergence() -> Outcome {
    let b = example_denominator(Basis::Standard);
    let printed: [(usize, &[f64]); 3] = [
        (3, &[0.02671602, 0.00412567, 0.00087845, 0.00012696]),
        (4, &[0.02671606, 0.00412578, 0.00087914, 0.00013019, 0.00002111]),
        (5, &[0.02671606, 0.00412578, 0.00087916, 0.00013029, 0.00002158]),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (n, want) in printed {
        let got = reciprocal(&b, n).map_err(err)?;
        let dev = max_dev(got.coeffs(), want);
        ok &= dev <= 5e-9 && got.len() >= want.len();
        notes.push(format!("N={n} {dev:.1e}"));
    }
    Ok((ok, notes.join(", ")))
}

fn c3_recurrence_coefficients() -> Outcome {
    let b = example_denominator(Basis::Standard);
    let want3 = (4.0, [-628.0, 93.0, 6.0]);
    let want4 = (24.0, [-3582.0, -64.0, 128.0]);
    let oracle3 = divide_tn_oracle(3, &b).map_err(err)?;
    let oracle4 = divide_tn_oracle(4, &b).map_err(err)?;
    let mut states = DivisionStates::new(&b).map_err(err)?;
    let step3 = states.next().ok_or("no state")?.map_err(err)?;
    let step4 = states.next().ok_or("no state")?.map_err(err)?;
    let exact = |s: &cheb_forge::recurrence::DivisionState, want: (f64, [f64; 3])| s.d[0] == want.0 && s.c == want.1;
    let ok = exact(&oracle3, want3) && exact(&step3, want3) && exact(&oracle4, want4) && exact(&step4, want4);
    Ok((
        ok,
        format!(
            "n=3: d_0={} c_0/2={} c_1={} c_2={}; n=4: d_0={} c_0/2={} c_1={} c_2={} (oracle and stepping)",
            step3.d[0],
            step3.c[0] / 2.0,
            step3.c[1],
            step3.c[2],
            step4.d[0],
            step4.c[0] / 2.0,
            step4.c[1],
            step4.c[2]
        ),
    ))
}

fn c4_tanh() -> Outcome {
    let m_max = 1_000_000;
    let sum = expand_pole_series(catalog::tanh_pi2_over_x_poles, m_max, 2).map_err(err)?;
    let a0 = sum.series.get(0);
    Ok((
        (a0 - 2.38).abs() <= 5e-3,
        format!("a_0 = {a0:.10} (m <= {m_max}, tail {:.1e})", sum.tail[0]),
    ))
}

fn c5_sin_fits() -> Outcome {
    let f = catalog("sinc_pi2", 8).map_err(err)?;
    let one = fit::newton_fit(
        &f,
        &FitConfig::new(4).with_n(8).with_newton_iters(1).with_tolerance(1e-300),
    )
    .map_err(err)?;
    let dev = one.deviation.coeffs();
    // coefficients of sum' a_n T_n - 1 at T_0, T_2, ..., T_8
    let got = [dev[0] / 2.0, dev[2], dev[4], dev[6], dev[8]];
    let printed = [5.2e-12, 4.7e-11, 6.3e-12, -1.08e-4, -1.11e-5];
    let two_digits = |v: f64| format!("{v:.1e}");
    let mut bad = Vec::new();
    for (i, (g, w)) in got.iter().zip(printed).enumerate() {
        if two_digits(*g) != two_digits(w) {
            bad.push(format!("T_{} {g:.2e} vs {w:.2e}", 2 * i));
        }
    }

    let (_, r8) = fit_four_steps("sinc_pi2", 8, 16)?;
    let table = [
        (0, 1.276278962402265880207637),
        (2, -0.2852615691810328617761446),
        (4, 0.9118016006289075331306166e-2),
        (6, -0.1365874893444115901818408e-3),
        (8, 0.1184206224108742454613850e-5),
    ];
    bad.extend(graded_table(&r8, &table, &[]));
    let rel = r8.relerr_estimate;
    if (rel - 5.9e-9).abs() > 0.1 * 5.9e-9 {
        bad.push(format!("relerr {rel:.3e}"));
    }
    verdict(
        bad,
        format!("k=4 residual [{}]; k=8 table matches, relerr {rel:.3e}", sci(&got)),
    )
}

fn c6_exp_tables() -> Outcome {
    let exp14: [(usize, f64, f64); 15] = [
        (0, 1.2660658777520083355982446, 1.00000000000000002107745526254),
        (1, 1.1303182079849700544153921, 1.00000000000000063548946139343),
        (2, 0.2714953395340765623657051, 0.499999999999997953936666685291),
        (3, 0.4433684984866380495257150e-1, 0.1666666666666422610320391),
        (4, 0.5474240442093732650276168e-2, 0.4166666666669875817272051e-1),
        (5, 0.5429263119139437503621352e-3, 0.8333333333602639662588442e-2),
        (6, 0.4497732295429514665443872e-4, 0.1388888888702869286166025e-2),
        (7, 0.3198436462401990501334121e-5, 0.1984126971086418099245159e-3),
        (8, 0.1992124806672795001043316e-6, 0.2480158780231612103680909e-4),
        (9, 0.1103677172551632915777862e-7, 0.2755735152373104259316644e-5),
        (10, 0.5505896079551881657982078e-9, 0.2755725369287090362239172e-6),
        (11, 0.2497956604792065959497342e-10, 0.2504783672757589754944252e-7),
        (12, 0.1039151254481832513826561e-11, 0.2088034159586738951818317e-8),
        (13, 0.3990676874210170341122722e-13, 0.1634581247676485771723867e-9),
        (14, 0.1400237499722866786358850e-14, 0.1147074559772972471385170e-10),
    ];
    let exps3 = [
        (0, 1.753387654377090395721946),
        (1, 0.8503902561425088936327743),
        (2, 0.1051918520893768747555014),
        (3, 0.008587089960927766771654559),
    ];
    let exps12: [(usize, f64, f64); 13] = [
        (0, 1.7533876543770903957219464, 1.0000000000000000060373678),
        (1, 0.8503916537808109665352350, 0.9999999999999978889799411),
        (2, 0.1052086936309369253029528, 0.5000000000001216148194572),
        (3, 0.8722104733315564111612874e-2, 0.1666666666639271874501180),
        (4, 0.5434368311501559635982758e-3, 0.4166666669859109153386033e-1),
        (5, 0.2711543491306869404045765e-4, 0.8333333112815145481691497e-2),
        (6, 0.1128132888782082788967416e-5, 0.1388889862738933258163839e-2),
        (7, 0.4024558229870710027066467e-7, 0.1984098287973665146421103e-3),
        (8, 0.1256584418283842256517024e-8, 0.2480734627092463176804164e-4),
        (9, 0.3488091362080888722258141e-10, 0.2747848541489261879291146e-5),
        (10, 0.8715278679388174731063544e-12, 0.2827881515524984459349078e-6),
        (11, 0.1979783472020383084286900e-13, 0.2086709669366350082217004e-7),
        (12, 0.4103178180353125619414324e-15, 0.3441995330913567239602395e-8),
    ];
    let split = |t: &[(usize, f64, f64)]| -> (Vec<(usize, f64)>, Vec<(usize, f64)>) {
        (
            t.iter().map(|r| (r.0, r.1)).collect(),
            t.iter().map(|r| (r.0, r.2)).collect(),
        )
    };
    let mut bad = Vec::new();
    let (_, r14) = fit_four_steps("exp_std", 14, 42)?;
    let (b, d) = split(&exp14);
    bad.extend(graded_table(&r14, &b, &d).into_iter().map(|s| format!("exp k=14 {s}")));
    let (_, r3) = fit_four_steps("exp_shifted", 3, 9)?;
    bad.extend(
        graded_table(&r3, &exps3, &[])
            .into_iter()
            .map(|s| format!("shifted k=3 {s}")),
    );
    let (_, r12) = fit_four_steps("exp_shifted", 12, 36)?;
    let (b, d) = split(&exps12);
    bad.extend(
        graded_table(&r12, &b, &d)
            .into_iter()
            .map(|s| format!("shifted k=12 {s}")),
    );
    verdict(
        bad,
        format!(
            "b and d tables match; relerr {:.2e} / {:.2e} / {:.2e}",
            r14.relerr_estimate, r3.relerr_estimate, r12.relerr_estimate
        ),
    )
}

fn c7_j0() -> Outcome {
    // b_14 is printed as -0.157e-11; the value consistent with the d table
    // and with the decay of the series is -0.157e-12
    let table: [(usize, f64); 9] = [
        (0, 0.7252769164405135618043045),
        (2, -0.2638108118461404734713153),
        (4, 0.1072184541022420669256084e-1),
        (6, -0.1885687642135952967199171e-3),
        (8, 0.1845983728936489887451460e-5),
        (10, -0.1150537142155094251800350e-7),
        (12, 0.4965029850154789447530764e-10),
        (14, -0.1571252252452718608949964e-12),
        (16, 0.3800986508122698831881511e-15),
    ];
    let (_, r) = fit_four_steps("j0_pi2", 16, 48)?;
    let mut bad = Vec::new();
    for &(n, want) in &table {
        let got = r.b.plain(n);
        let ok = if want.abs() < 1e-15 {
            common::magnitude_ok(got, want)
        } else {
            common::graded_ok(got, want)
        };
        if !ok {
            bad.push(format!("b_{n} {got:e} vs {want:e}"));
        }
    }
    verdict(
        bad,
        format!(
            "b table matches (b_16 = {:.4e} by magnitude), relerr {:.2e}",
            r.b.plain(16),
            r.relerr_estimate
        ),
    )
}

fn c8_log1p() -> Outcome {
    let closed = catalog("log1p_shifted", 20).map_err(err)?;
    let built = catalog::log1p_shifted_by_integration(20).map_err(err)?;
    let f0 = 2.0 * ((3.0 + 2.0 * SQRT_2) / 4.0).ln();
    let mut worst = common::rel_diff(closed.get(0), f0);
    for n in 0..=20 {
        worst = worst.max(common::rel_diff(closed.get(n), built.get(n)));
    }
    Ok((worst <= 1e-12, format!("worst relative difference {worst:.1e}")))
}

fn c9_atan() -> Outcome {
    let atan = catalog("atan", 61).map_err(err)?;
    let from_catalog = atan.coeffs().iter().sum::<f64>() / 2.0;
    let direct: f64 = (1..=61)
        .step_by(2)
        .map(|j| {
            let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
            sign / (j as f64 * (1.0 + SQRT_2).powi(j as i32))
        })
        .sum();
    let id = (from_catalog - PI / 8.0).abs().max((direct - PI / 8.0).abs());
    let g = catalog("atan_over_x", 60).map_err(err)?;
    let g0 = (g.get(0) - 2.0 * (1.0 + SQRT_2).ln()).abs();
    let mut curve = 0.0f64;
    for i in 0..21 {
        let x = -1.0 + i as f64 / 10.0;
        let want = if x == 0.0 { 1.0 } else { x.atan() / x };
        curve = curve.max((g.eval(x) - want).abs());
    }
    Ok((
        id <= 1e-12 && g0 <= 1e-12 && curve <= 1e-12,
        format!("pi/8 identity {id:.1e}, g_0 {g0:.1e}, arctan(x)/x at 21 points {curve:.1e}"),
    ))
}

fn c10_arcsin() -> Outcome {
    let closed = |n: usize| if n % 2 == 1 { 4.0 / (PI * (n * n) as f64) } else { 0.0 };
    let g = catalog("asin", 41).map_err(err)?;
    let mut worst = 0.0f64;
    for n in (2..=40).step_by(2) {
        let nf = n as f64;
        let rhs = 8.0 / PI * nf / (nf * nf - 1.0);
        worst = worst.max(((nf + 1.0) * closed(n + 1) + (nf - 1.0) * closed(n - 1) - rhs).abs());
        worst = worst.max(((nf + 1.0) * g.get(n + 1) + (nf - 1.0) * g.get(n - 1) - rhs).abs());
    }
    let catalan = 0.915965594177219015054603515;
    let h0 = catalog("asin_over_x", 0).map_err(err)?.get(0);
    let h0_err = (h0 - 8.0 * catalan / PI).abs();
    Ok((
        worst <= 1e-13 && h0_err <= 1e-14,
        format!("recurrence residual {worst:.1e}, h_0 {h0_err:.1e}"),
    ))
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn c11_arcsin_sqrt2() -> Outcome {
    let g = elliptic_g(10);
    let g0 = common::rel_diff(g[0], 2.6220575542921198104648395899);
    let g2 = common::rel_diff(g[2], 0.22577708482093539558499460534);
    let relations = [
        3.0 * g[4] - 12.0 * g[2] + g[0],
        5.0 * g[6] - 27.0 * g[4] + 15.0 * g[2] - g[0],
        7.0 * g[8] - 41.0 * g[6] + 29.0 * g[4] - 3.0 * g[2],
        9.0 * g[10] - 55.0 * g[8] + 43.0 * g[6] - 5.0 * g[4],
    ];
    let rel_worst = relations.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let f = catalog("asin_sqrt2_over_x", 38).map_err(err)?;
    let f0 = common::rel_diff(f.get(0), 1.4866664932871034689603297);
    let table = [
        (2, 0.3885303371652290716432228e-1),
        (4, 0.2885441422084471126676825e-2),
        (6, 0.2884218334475536563483289e-3),
        (8, 0.3322367192785279209254231e-4),
        (10, 0.4158477878052832866177270e-5),
        (12, 0.5496504525974164467345493e-6),
        (14, 0.7550078449371525934251585e-7),
        (16, 0.1067193805629843129424091e-7),
        (18, 0.1542180379281470021561106e-8),
        (20, 0.2268114598545151963877153e-9),
        (22, 0.3383885639342775871004709e-10),
        (24, 0.5108937524377197224216916e-11),
        (26, 0.7791139213632464421446539e-12),
        (28, 0.1198378589352895337866326e-12),
        (30, 0.1856972621821342234640637e-13),
        (32, 0.2896189154386304361020997e-14),
        (34, 0.4542792886328823081478511e-15),
        (36, 0.7161678029265506176831289e-16),
        (38, 0.1134144256904559996509711e-16),
    ];
    let table_worst = table
        .iter()
        .fold(0.0f64, |m, &(n, w)| m.max(common::rel_diff(f.get(n), w)));

    let rows = catalog::asin_sqrt2_alpha(4);
    let exact = rows.len() == 2
        && rows[0].alpha == [rational(-2, 1), rational(4, 1), rational(-4, 1), rational(8, 1)]
        && rows[1].alpha == [rational(-26, 9), rational(4, 1), rational(-16, 9), rational(0, 1)];
    let k = catalog::asin_sqrt2_k(4);
    let mut value_worst = 0.0f64;
    for row in &rows {
        value_worst = value_worst.max((row.k_prev() - k[row.n - 1]).abs());
        value_worst = value_worst.max((row.f(f.get(0)) - f.get(row.n)).abs());
    }

    let ok = g0 <= 1e-14
        && g2 <= 1e-14
        && rel_worst <= 1e-11
        && f0 <= 1e-13
        && table_worst <= 1e-10
        && exact
        && value_worst <= 1e-12;
    Ok((
        ok,
        format!(
            "G_0 {g0:.1e}, G_2 {g2:.1e}, relations {rel_worst:.1e}, f_0 {f0:.1e}, f_2..f_38 {table_worst:.1e}, alpha rows exact: {exact}, values {value_worst:.1e}"
        ),
    ))
}

fn c12_digamma() -> Outcome {
    let table = [
        0.6942240199692270653811973,
        0.1181923495113155830503315,
        0.2615575442260127035429158e-1,
        0.6357242927298094244957032e-2,
        0.1613702909326556648518537e-2,
        0.4189942166841513997803225e-3,
        0.1101726048982138724638504e-3,
        0.2918277395837793537278094e-4,
        0.7763995103341854698876680e-5,
        0.2071120322602199079344235e-5,
        0.5534045978754736410165904e-6,
        0.1480224417758054637706871e-6,
        0.3961806941781982189370558e-7,
        0.1060807013890109056491206e-7,
        0.2841134565373781348071928e-8,
        0.7610594780500236739360477e-9,
        0.2038876075855356359426642e-9,
        0.5462507275750785409310247e-10,
        0.1463563991421891531670298e-10,
        0.3921418684181661587649434e-11,
        0.1050708536652289553110610e-11,
        0.2815309431326615497301838e-12,
        0.7543503527420115661214215e-13,
        0.2021259323594124792356794e-13,
        0.5415919982188370035264436e-14,
        0.1451186573479985220441655e-14,
        0.3888434449455691142432431e-15,
        0.1041901454404881356692972e-15,
        0.2791764103483896329393674e-16,
    ];
    let k = digamma_k(28);
    let k_worst = table
        .iter()
        .enumerate()
        .fold(0.0f64, |m, (n, &w)| m.max(common::rel_diff(k[n], w)));
    let ids = digamma_identities();
    let id_worst = ids
        .iter()
        .zip([0.5, 1.0, 0.125, 0.375])
        .fold(0.0f64, |m, (g, w)| m.max((g - w).abs()));
    let psi = catalog("digamma_plus2", 60).map_err(err)?;
    let mut psi_worst = 0.0f64;
    for i in 0..11 {
        let x = -1.0 + i as f64 / 5.0;
        psi_worst = psi_worst.max((psi.eval(x) - common::digamma(x + 2.0)).abs());
    }
    Ok((
        k_worst <= 1e-12 && id_worst <= 1e-10 && psi_worst <= 1e-10,
        format!("K_0..K_28 {k_worst:.1e}, identities {id_worst:.1e}, psi(x+2) at 11 points {psi_worst:.1e}"),
    ))
}

fn poly_from_roots(roots: &[Complex64]) -> Vec<f64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, v) in c.iter().enumerate() {
            next[i + 1] += v;
            next[i] -= v * r;
        }
        c = next;
    }
    c.iter().map(|v| v.re).collect()
}

fn c13_property_summary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut notes = Vec::new();
    let mut ok = true;

    // parity of a_{n,s} under z -> -z
    let mut parity = 0.0f64;
    for _ in 0..5 {
        let z = Complex64::new(rng.gen_range(1.2..3.0), rng.gen_range(-1.0..1.0));
        let plus = a_ns_table(z, 8, 3).map_err(err)?;
        let minus = a_ns_table(-z, 8, 3).map_err(err)?;
        for s in 1..=3 {
            for n in 0..=8 {
                let sign = if (n + s) % 2 == 0 { 1.0 } else { -1.0 };
                let want = plus.get(n, s) * sign;
                parity = parity.max((minus.get(n, s) - want).norm() / want.norm().max(1e-300));
            }
        }
    }
    ok &= parity <= 1e-13;
    notes.push(format!("parity {parity:.1e}"));

    // expansion of random inverse polynomials against quadrature
    let mut quad = 0.0f64;
    for _ in 0..5 {
        let mut roots = Vec::new();
        for _ in 0..rng.gen_range(1..=2) {
            let r = rng.gen_range(1.2..4.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            roots.push(Complex64::new(r, 0.0));
            let z = Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(0.3..2.0));
            roots.push(z);
            roots.push(z.conj());
        }
        let p = MonomialPoly::new(poly_from_roots(&roots));
        let got = expand_inverse(&decompose(&p).map_err(err)?, 12).map_err(err)?;
        let want = common::gauss_chebyshev(|x| 1.0 / p.eval(x), 12, 1024);
        let scale = common::max_abs(&want);
        for n in 0..=12 {
            quad = quad.max((got.get(n) - want[n]).abs() / scale);
        }
    }
    ok &= quad <= 1e-9;
    notes.push(format!("quadrature {quad:.1e}"));

    // Jacobian against central differences, sin fit at k = 8
    let f = catalog("sinc_pi2", 16).map_err(err)?;
    let b = f.resized(8);
    let a_hat = |b: &ChebSeries| divide(&f, b, 16).map(|q| q.series.into_coeffs());
    let a = ChebSeries::standard(a_hat(&b).map_err(err)?);
    let jac = fit::jacobian(&b, &a, 16, 8).map_err(err)?;
    let mut jac_worst = 0.0f64;
    for j in 1..=8 {
        let eps = 1e-7;
        let mut plus = b.clone().into_coeffs();
        let mut minus = plus.clone();
        plus[j] += eps;
        minus[j] -= eps;
        let ap = a_hat(&ChebSeries::standard(plus)).map_err(err)?;
        let am = a_hat(&ChebSeries::standard(minus)).map_err(err)?;
        let fd: Vec<f64> = ap.iter().zip(&am).map(|(p, m)| (p - m) / (2.0 * eps)).collect();
        let scale = common::max_abs(&fd);
        for r in 0..=16 {
            jac_worst = jac_worst.max((jac[(r, j - 1)] - fd[r]).abs() / scale);
        }
    }
    ok &= jac_worst <= 1e-5;
    notes.push(format!("jacobian {jac_worst:.1e}"));

    // b_0 is never touched by fitting
    let cfg = FitConfig::new(8)
        .with_n(16)
        .with_newton_iters(4)
        .with_equilibrate_iters(2);
    let fitted = fit::newton_fit(&f, &cfg).map_err(err)?;
    let levelled = fit::equilibrate(&f, &fitted, &cfg).map_err(err)?;
    let bits = fitted.b.coeffs()[0].to_bits() == f.coeffs()[0].to_bits()
        && levelled.b.coeffs()[0].to_bits() == f.coeffs()[0].to_bits();
    ok &= bits;
    notes.push(format!("b_0 bits kept: {bits}"));

    // T_n = D(x) B(x) + C(x) at every step up to n = 25
    let b = example_denominator(Basis::Standard);
    let bsum: f64 = b.coeffs().iter().map(|v| v.abs()).sum();
    let mut recon = 0.0f64;
    for state in DivisionStates::new(&b).map_err(err)?.take(23) {
        let state = state.map_err(err)?;
        let scale =
            1.0 + state.d.iter().map(|v| v.abs()).sum::<f64>() * bsum + state.c.iter().map(|v| v.abs()).sum::<f64>();
        for _ in 0..8 {
            let x: f64 = rng.gen_range(-1.0..=1.0);
            let t = (state.n as f64 * x.acos()).cos();
            recon = recon.max((state.reconstruct(&b, x) - t).abs() / scale);
        }
    }
    ok &= recon <= 1e-11;
    notes.push(format!("reconstruction {recon:.1e}"));

    // monomial <-> Chebyshev round trips in both bases
    let mut trip = 0.0f64;
    for basis in [Basis::Standard, Basis::Shifted] {
        for _ in 0..5 {
            let c: Vec<f64> = (0..11).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let back = ChebSeries::from_monomial(&MonomialPoly::new(c.clone()), basis).to_monomial();
            trip = trip.max(max_dev(back.coeffs(), &c) / common::max_abs(&c));
        }
    }
    ok &= trip <= 1e-12;
    notes.push(format!("round trips {trip:.1e}"));

    Ok((ok, notes.join(", ")))
}

fn peak(f: &ChebSeries, b: &ChebSeries, n: usize) -> Result<f64, String> {
    let extrema = fit::locate_extrema(f, b, n, 4001).map_err(err)?;
    Ok(extrema.iter().fold(0.0, |m, e| m.max(e.value.abs())))
}

fn c14_below_precision() -> Outcome {
    let mut bad = Vec::new();
    let mut notes = Vec::new();

    let (f, r16) = fit_four_steps("sinc_pi2", 16, 32)?;
    let p16 = peak(&f, &r16.b, 32)?;
    if !common::magnitude_ok(p16, 2.9e-19) {
        bad.push(format!("sin k=16 peak {p16:.2e}"));
    }
    let cfg = FitConfig::new(16).with_n(32).with_equilibrate_iters(4);
    let eq16 = fit::equilibrate(&f, &r16, &cfg).map_err(err)?;
    let p16_eq = peak(&f, &eq16.b, 32)?;
    let moved = eq16.b.plain(16) - r16.b.plain(16);
    // the levelled table lowers b_16 from 1.7919e-16 to 1.7916e-16
    if !(p16_eq <= p16 && moved < 0.0 && common::magnitude_ok(p16_eq, 2.6e-19)) {
        bad.push(format!("sin k=16 levelled peak {p16_eq:.2e}, b_16 change {moved:.1e}"));
    }
    notes.push(format!("sin k=16 peak {p16:.2e} -> {p16_eq:.2e}"));

    let (f, r12) = fit_four_steps("exp_shifted", 12, 36)?;
    if !common::magnitude_ok(r12.relerr_estimate, 6.1e-18) {
        bad.push(format!("shifted exp k=12 relerr {:.2e}", r12.relerr_estimate));
    }
    let cfg = FitConfig::new(12).with_n(36).with_equilibrate_iters(4);
    let eq12 = fit::equilibrate(&f, &r12, &cfg).map_err(err)?;
    let history = &eq12.peak_history;
    let monotone = history.windows(2).all(|w| w[1] <= w[0]);
    let last = *history.last().ok_or("empty peak history")?;
    let moved = eq12.b.plain(12) - r12.b.plain(12);
    if !(monotone && common::magnitude_ok(last, 5.0e-18) && moved < 0.0) {
        bad.push(format!(
            "shifted exp k=12 peaks [{}], b_12 change {moved:.1e}",
            sci(history)
        ));
    }
    notes.push(format!("shifted exp k=12 peak {:.2e} -> {last:.2e}", history[0]));

    verdict(bad, notes.join(", "))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("worked example, three backends", c1_worked_example),
        ("truncation convergence N = 3, 4, 5", c2_truncation_convergence),
        ("exact recurrence coefficients", c3_recurrence_coefficients),
        ("tanh(pi x/2)/x pole sum", c4_tanh),
        ("sin fits k = 4, 8", c5_sin_fits),
        ("exp tables", c6_exp_tables),
        ("J0 table", c7_j0),
        ("log(1+x) coefficients", c8_log1p),
        ("arctan identities", c9_atan),
        ("arcsin recurrence and h_0", c10_arcsin),
        ("arcsin(x/sqrt2)/x and elliptic integrals", c11_arcsin_sqrt2),
        ("digamma series", c12_digamma),
        ("property summary", c13_property_summary),
        ("below double precision", c14_below_precision),
    ];
    // written to the raw handle so the report shows up without --nocapture
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out);
    let mut passed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match std::panic::catch_unwind(check) {
            Ok(Ok(r)) => r,
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(_) => (false, "panicked".to_string()),
        };
        passed += ok as usize;
        let _ = writeln!(
            out,
            "{} criterion {:2} {name}: {detail} [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    let _ = writeln!(out, "{passed}/{} criteria pass", criteria.len());
}
