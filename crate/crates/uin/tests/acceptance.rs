//! Acceptance suite: every release gate runs here, one test per criterion,
//! each printing a single pass/fail line (visible with `--nocapture`).
//!
//! Known red: the non-contractivity clause of criterion 2. The checked
//! property asserts that the Hilbert–Schmidt MIN comparator increases
//! somewhere along an amplitude-damping sweep on subsystem B of the
//! reference state, but for a 2⊗2 state with a nondegenerate marginal the
//! measurement basis is pinned to r̂ and the closed form factors as
//! MIN(γ) = (1−γ)(m_x + m_y) + (1−γ)²·m_z with constant nonnegative m_i,
//! which is non-increasing in γ. The brute-force measurement oracle agrees
//! with the closed form to 1e-16 along the whole sweep, so the assertion is
//! kept faithful and documents the irreproducible claim.

use std::time::Instant;

use nalgebra::Vector3;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use uin::channel::{apply_channel_b, sweep, uniform_grid, ChannelFamily, MeasureKind};
use uin::linalg::{hellinger_sq, hermiticity_deviation, kron};
use uin::measure::{lqu, min_hs, muin, skew_information, uin, uin_pure, w_matrix, Branch, Observable};
use uin::oracle::{oracle_lqu, oracle_muin, oracle_uin};
use uin::state::{
    bell_state, example_state, product_mixed_state, product_state,
    random_density, random_pure, random_unitary, twirl_a, BipartiteState, DensityMatrix,
};
use uin::verify::run_suites;

const COARSE: usize = 2000;
const REFINE: usize = 40;

fn report(criterion: u32, label: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("criterion {criterion} ({label}): {status} {detail}");
}

fn random_state(db: usize, seed: u64) -> BipartiteState {
    let dim = 2 * db;
    BipartiteState::new(random_density(dim, dim, seed).unwrap(), 2, db).unwrap()
}

fn random_direction(seed: u64) -> Vector3<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let v = Vector3::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        );
        if v.norm() > 1e-6 {
            return v / v.norm();
        }
    }
}

#[test]
fn criterion_1_closed_form_oracle_agreement() {
    let start = Instant::now();
    let mut max_uin_forced: f64 = 0.0;
    let mut max_uin_degenerate: f64 = 0.0;
    let mut max_muin: f64 = 0.0;
    let mut max_lqu: f64 = 0.0;

    for k in 0..50u64 {
        for (db, base) in [(2usize, 1000u64), (3, 2000)] {
            let s = random_state(db, base + k);

            let u = uin(&s).unwrap();
            let dev = (u.value - oracle_uin(&s, COARSE, REFINE).unwrap()).abs();
            match u.branch {
                Branch::RNonzero => max_uin_forced = max_uin_forced.max(dev),
                _ => max_uin_degenerate = max_uin_degenerate.max(dev),
            }

            max_muin = max_muin
                .max((muin(&s).unwrap().value - oracle_muin(&s, COARSE, REFINE).unwrap()).abs());
            max_lqu = max_lqu
                .max((lqu(&s).unwrap().value - oracle_lqu(&s, COARSE, REFINE).unwrap()).abs());

            // constructed degenerate-marginal states: full sphere search
            if k % 10 == 0 {
                let tw = twirl_a(&s).unwrap();
                let u = uin(&tw).unwrap();
                assert_eq!(u.branch, Branch::RZero);
                let dev = (u.value - oracle_uin(&tw, COARSE, REFINE).unwrap()).abs();
                max_uin_degenerate = max_uin_degenerate.max(dev);
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();

    let pass = max_uin_forced <= 1e-9
        && max_uin_degenerate <= 2e-4
        && max_muin <= 2e-4
        && max_lqu <= 2e-4
        && elapsed < 30.0;
    report(
        1,
        "closed-form vs oracle",
        pass,
        &format!(
            "uin_forced={max_uin_forced:.2e} uin_r0={max_uin_degenerate:.2e} \
             muin={max_muin:.2e} lqu={max_lqu:.2e} elapsed={elapsed:.1}s"
        ),
    );
    assert!(max_uin_forced <= 1e-9, "uin forced-direction deviation {max_uin_forced:.3e}");
    assert!(max_uin_degenerate <= 2e-4, "uin r=0 deviation {max_uin_degenerate:.3e}");
    assert!(max_muin <= 2e-4, "muin deviation {max_muin:.3e}");
    assert!(max_lqu <= 2e-4, "lqu deviation {max_lqu:.3e}");
    assert!(elapsed < 30.0, "runtime {elapsed:.1}s exceeds 30s");
}

#[test]
fn criterion_2_damping_sweep_qualitative() {
    let start = Instant::now();
    let series = sweep(
        &example_state(),
        ChannelFamily::AmplitudeDamping,
        &uniform_grid(101),
        &[MeasureKind::Uin, MeasureKind::MinHs],
    )
    .unwrap();
    let uin_series = series.series(MeasureKind::Uin).unwrap();
    let min_series = series.series(MeasureKind::MinHs).unwrap();

    let uin_max_step = uin_series
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    let min_max_step = min_series
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    let elapsed = start.elapsed().as_secs_f64();

    let uin_contractive = uin_max_step <= 1e-9;
    let min_bump = min_max_step > 1e-6;
    report(
        2,
        "damping sweep qualitative",
        uin_contractive && min_bump && elapsed < 5.0,
        &format!(
            "uin_max_step={uin_max_step:.2e} (non-increasing: {uin_contractive}) \
             min_hs_max_step={min_max_step:.2e} (has bump > 1e-6: {min_bump}) elapsed={elapsed:.2}s"
        ),
    );
    assert!(elapsed < 5.0, "runtime {elapsed:.1}s exceeds 5s");
    assert!(
        uin_contractive,
        "uin series must be non-increasing; max step {uin_max_step:.3e}"
    );
    assert!(
        min_bump,
        "expected a consecutive min_hs increase > 1e-6, but the largest step is \
         {min_max_step:.3e}: for a 2x2 state with a nondegenerate A-marginal the \
         measurement basis is pinned to r and MIN(gamma) = (1-g)(m_x+m_y) + (1-g)^2 m_z \
         is non-increasing under amplitude damping on B, so no bump can exist"
    );
}

#[test]
fn criterion_3_product_states_and_product_mixed() {
    let mut max_uin: f64 = 0.0;
    for k in 0..25u64 {
        let db = 2 + (k % 2) as usize;
        let rho_a = random_density(2, 2, 3000 + k).unwrap();
        let rho_b = random_density(db, db, 3100 + k).unwrap();
        let s = product_state(&rho_a, &rho_b);
        max_uin = max_uin.max(uin(&s).unwrap().value);
    }
    let pm = muin(&product_mixed_state()).unwrap().value;

    let pass = max_uin <= 1e-10 && (pm - 1.0).abs() <= 1e-9;
    report(
        3,
        "product states",
        pass,
        &format!("max_uin={max_uin:.2e} product_mixed_muin={pm:.12}"),
    );
    assert!(max_uin <= 1e-10, "uin on product state reached {max_uin:.3e}");
    assert!((pm - 1.0).abs() <= 1e-9, "product-mixed muin {pm}");
}

#[test]
fn criterion_4_pure_state_reduction() {
    let mut max_dev: f64 = 0.0;
    for k in 0..50u64 {
        for (db, base) in [(2usize, 4000u64), (3, 4100)] {
            let s = random_pure(2, db, base + k);
            let marginal_purity = s.reduced_a().norm_squared();
            let monotone = 2.0 * (1.0 - marginal_purity);
            let full = uin(&s).unwrap().value;
            let shortcut = uin_pure(&s).unwrap().value;
            max_dev = max_dev.max((full - monotone).abs()).max((shortcut - monotone).abs());
        }
    }
    let bell = uin(&bell_state()).unwrap().value;

    let pass = max_dev <= 1e-8 && (bell - 1.0).abs() <= 1e-9;
    report(
        4,
        "pure-state reduction",
        pass,
        &format!("max_dev={max_dev:.2e} bell_uin={bell:.12}"),
    );
    assert!(max_dev <= 1e-8, "pure-state deviation {max_dev:.3e}");
    assert!((bell - 1.0).abs() <= 1e-9, "Bell uin {bell}");
}

#[test]
fn criterion_5_local_unitary_invariance() {
    let mut max_dev: f64 = 0.0;
    for k in 0..25u64 {
        let db = 2 + (k % 2) as usize;
        let s = random_state(db, 5000 + k);
        let lifted = kron(
            &random_unitary(2, 5500 + k),
            &random_unitary(db, 5600 + k),
        );
        let conjugated = BipartiteState::new(
            DensityMatrix::validate(&lifted * s.matrix() * lifted.adjoint()).unwrap(),
            2,
            db,
        )
        .unwrap();
        for kind in [MeasureKind::Uin, MeasureKind::Muin, MeasureKind::Lqu] {
            let before = kind.evaluate(&s).unwrap().value;
            let after = kind.evaluate(&conjugated).unwrap().value;
            max_dev = max_dev.max((before - after).abs());
        }
    }

    let pass = max_dev < 1e-9;
    report(5, "local-unitary invariance", pass, &format!("max_dev={max_dev:.2e}"));
    assert!(pass, "local-unitary deviation {max_dev:.3e}");
}

#[test]
fn criterion_6_contractivity_under_channels() {
    let mut max_excess: f64 = 0.0;
    for k in 0..25u64 {
        let s = random_state(2, 6000 + k);
        let before: Vec<f64> = [MeasureKind::Uin, MeasureKind::Muin, MeasureKind::Lqu]
            .iter()
            .map(|kind| kind.evaluate(&s).unwrap().value)
            .collect();
        for family in ChannelFamily::ALL {
            for step in 1..=9 {
                let gamma = step as f64 / 10.0;
                let damped = apply_channel_b(&s, &family.channel(gamma).unwrap()).unwrap();
                for (kind, &b) in [MeasureKind::Uin, MeasureKind::Muin, MeasureKind::Lqu]
                    .iter()
                    .zip(&before)
                {
                    let after = kind.evaluate(&damped).unwrap().value;
                    max_excess = max_excess.max(after - b);
                }
            }
        }
    }

    let pass = max_excess <= 1e-9;
    report(
        6,
        "contractivity under channels on B",
        pass,
        &format!("max_increase={max_excess:.2e}"),
    );
    assert!(pass, "contractivity violated by {max_excess:.3e}");
}

#[test]
fn criterion_7_hellinger_identity() {
    let mut max_dev: f64 = 0.0;
    for k in 0..100u64 {
        let db = 2 + (k % 2) as usize;
        let s = random_state(db, 7000 + k);
        let n = random_direction(7500 + k);
        let obs = Observable::from_direction(n, db).unwrap();
        let skew = skew_information(&s, &obs).unwrap();
        let conjugated = obs.matrix() * s.matrix() * obs.matrix();
        let hell = hellinger_sq(s.matrix(), &conjugated).unwrap();
        max_dev = max_dev.max((skew - hell).abs());
    }

    let pass = max_dev <= 1e-10;
    report(7, "Hellinger identity", pass, &format!("max_dev={max_dev:.2e}"));
    assert!(pass, "identity deviation {max_dev:.3e}");
}

#[test]
fn criterion_8_w_matrix_structure() {
    let mut max_asym: f64 = 0.0;
    let mut eig_low: f64 = f64::INFINITY;
    let mut eig_high: f64 = f64::NEG_INFINITY;
    let mut max_form_dev: f64 = 0.0;

    let mut states: Vec<BipartiteState> = vec![
        example_state(),
        bell_state(),
        product_mixed_state(),
    ];
    for k in 0..40u64 {
        let db = 2 + (k % 2) as usize;
        states.push(random_state(db, 8000 + k));
    }

    let mut direction_seed = 8500u64;
    for s in &states {
        let w = w_matrix(s).unwrap();
        let m = w.as_matrix();
        let asym = (m - m.transpose()).abs().max();
        max_asym = max_asym.max(asym);
        for l in w.eigenvalues() {
            eig_low = eig_low.min(l);
            eig_high = eig_high.max(l);
        }
        // 200 directions spread over the tested states
        for _ in 0..5 {
            let n = random_direction(direction_seed);
            direction_seed += 1;
            let obs = Observable::from_direction(n, s.db()).unwrap();
            let skew = skew_information(s, &obs).unwrap();
            max_form_dev = max_form_dev.max((skew - (1.0 - w.quadratic_form(&n))).abs());
        }
    }
    let directions_checked = 5 * states.len();
    assert!(directions_checked >= 200, "only {directions_checked} directions");

    let pass = max_asym <= 1e-10
        && eig_low >= -1e-9
        && eig_high <= 1.0 + 1e-9
        && max_form_dev <= 1e-10;
    report(
        8,
        "W-matrix structure",
        pass,
        &format!(
            "max_asymmetry={max_asym:.2e} eig_range=[{eig_low:.2e}, {eig_high:.12}] \
             quadratic_form_dev={max_form_dev:.2e} directions={directions_checked}"
        ),
    );
    assert!(max_asym <= 1e-10);
    assert!(eig_low >= -1e-9 && eig_high <= 1.0 + 1e-9);
    assert!(max_form_dev <= 1e-10);
}

#[test]
fn criterion_9_verify_cli_deterministic() {
    // The library-level suites must pass with the documented seed...
    let outcomes = run_suites(42, 50).unwrap();
    assert!(outcomes.iter().all(|o| o.passed()), "{outcomes:?}");

    // ...and the CLI must report them byte-identically across runs.
    let run_once = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_uin"))
            .args(["verify", "--seed", "42", "--trials", "50"])
            .output()
            .expect("binary runs")
    };
    let first = run_once();
    let second = run_once();

    let pass = first.status.success()
        && second.status.success()
        && !first.stdout.is_empty()
        && first.stdout == second.stdout;
    report(
        9,
        "verify CLI determinism",
        pass,
        &format!(
            "exit0={} bytes={} identical={}",
            first.status.success(),
            first.stdout.len(),
            first.stdout == second.stdout
        ),
    );
    assert!(first.status.success(), "first run exited {:?}", first.status);
    assert!(second.status.success(), "second run exited {:?}", second.status);
    assert_eq!(first.stdout, second.stdout, "reports differ between runs");
}

// The severity ordering among the three skew-information measures and the
// nonnegativity of the underlying quantity, across the same ensembles the
// criteria use.
#[test]
fn measure_ordering_holds_on_ensembles() {
    for k in 0..20u64 {
        let db = 2 + (k % 2) as usize;
        let s = random_state(db, 9000 + k);
        let l = lqu(&s).unwrap().value;
        let u = uin(&s).unwrap().value;
        let m = muin(&s).unwrap().value;
        let n = random_direction(9500 + k);
        let skew = skew_information(&s, &Observable::from_direction(n, db).unwrap()).unwrap();
        assert!(skew >= -1e-10);
        assert!(l <= skew + 1e-10, "lqu {l} above sampled skew {skew}");
        assert!(skew <= m + 1e-10, "sampled skew {skew} above muin {m}");
        assert!(u <= m + 1e-10, "uin {u} above muin {m}");
        assert!(min_hs(&s).unwrap().value >= -1e-10);
        assert!(hermiticity_deviation(s.matrix()) <= 1e-10);
    }
}
