use spectral_ldp::constructions::{build_centered_clique, clique_plan};
use spectral_ldp::entropy::ip_graph;
use spectral_ldp::graphon::{apriori_quantities, embed, Embedding};
use spectral_ldp::montecarlo::{estimate_tail, rate_curve, PRule};
use spectral_ldp::oracle::{enumerate_exact_tail, TailEvent};
use spectral_ldp::rates::{rate_centered, rate_lambda1};
use spectral_ldp::varsolve::{solve_phi2, SolveOptions};
use spectral_ldp::Statistic;

#[test]
fn monte_carlo_tracks_enumeration_for_small_graphs() {
    let trials = 20_000;
    for n in 2..=5 {
        for p in [0.2, 0.5, 0.7] {
            for stat in [
                Statistic::Lambda1,
                Statistic::Lambda2,
                Statistic::CenteredOpnorm,
            ] {
                for t in [0.5, 1.0, 1.5, 2.5] {
                    let exact = enumerate_exact_tail(n, p, TailEvent::new(stat, t)).unwrap();
                    let est = estimate_tail(n, p, stat, t, trials, 42).unwrap();
                    let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
                    assert!(
                        (est.estimate - exact).abs() <= 4.0 * sigma + 1e-12,
                        "n={n} p={p} {stat} t={t}: {} vs {exact}",
                        est.estimate
                    );
                }
            }
        }
    }
}

#[test]
fn rate_curve_small_rows_match_exact() {
    let rows = rate_curve(&[3, 4, 5, 6], PRule::Fixed(0.5), 0.1, 10_000, 7).unwrap();
    for row in rows {
        let exact = row.exact.unwrap();
        let sigma = (exact * (1.0 - exact) / 10_000.0).sqrt();
        assert!(
            (row.tail.estimate - exact).abs() <= 4.0 * sigma + 1e-12,
            "n={}",
            row.n
        );
        assert_eq!(row.theory, rate_lambda1(0.1).unwrap().value);
    }
}

#[test]
fn phi2_at_desk_scale() {
    // δnp = 10 is below √n here, so the asymptotic value ½δ² is not
    // approached; only the lower end of the band [½, 1.1]·½δ² is met.
    let (n, p, delta) = (200, 0.1, 0.5);
    let opts = SolveOptions {
        max_iter: 600,
        ..SolveOptions::default()
    };
    let cert = solve_phi2(n, p, delta, &opts).unwrap();
    assert!(cert.slack >= -1e-6);
    assert_eq!(
        ip_graph(&cert.graph, p).unwrap().value.to_bits(),
        cert.entropy.value.to_bits()
    );
    let target = rate_centered(delta).unwrap();
    let start = build_centered_clique(n, p, delta).unwrap();
    assert!(cert.entropy.normalized <= start.entropy.normalized);
    assert!(
        cert.entropy.normalized >= 0.5 * target,
        "{}",
        cert.entropy.normalized
    );

    // The solver output feeds the a priori diagnostics.
    let u = embed(&cert.graph, p, Embedding::Padded)
        .unwrap()
        .shifted(p)
        .unwrap()
        .abs();
    let report = apriori_quantities(&u, p, delta, 0.2).unwrap();
    assert!(report.mean_square_ratio.is_finite() && report.mean_square_ratio > 0.0);
    assert!((0.0..=1.0).contains(&report.b_mass));
}

#[test]
fn clique_plan_normalized_entropy_tends_to_rate() {
    // (1+δ)²/2 is the clique rate; the finite-n plan converges from above.
    let delta = 2.0;
    let target = 0.5 * (1.0 + delta) * (1.0 + delta);
    let mut prev = f64::INFINITY;
    for (n, p) in [(10_000, 1e-2), (1_000_000, 1e-3), (100_000_000, 1e-4)] {
        let gap = (clique_plan(n, p, delta).unwrap().entropy.normalized - target).abs();
        assert!(gap < prev);
        prev = gap;
    }
    assert!(prev < 0.01 * target);
}
