use proptest::prelude::*;

use super::*;

fn grid() -> impl Strategy<Value = Vec<f64>> {
    (0.0f64..100.0, prop::collection::vec(1e-3f64..1.0, 1..50)).prop_map(|(t0, gaps)| {
        let mut t = vec![t0];
        for g in gaps {
            t.push(t.last().unwrap() + g);
        }
        t
    })
}

fn trace() -> impl Strategy<Value = PowerTrace> {
    grid().prop_flat_map(|t| {
        let n = t.len();
        prop::collection::vec(0.0f64..5000.0, n)
            .prop_map(move |p| PowerTrace::new(t.clone(), vec![(Channel::VddGpu, p)]).unwrap())
    })
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-12)
}

const G: Channel = Channel::VddGpu;

proptest! {
    #[test]
    fn additive_at_interior_samples(tr in trace(), pick in 0.0f64..1.0) {
        let t = tr.times();
        prop_assume!(t.len() >= 3);
        let k = 1 + ((t.len() - 2) as f64 * pick) as usize;
        let (a, b, c) = (t[0], t[k], t[t.len() - 1]);
        let sum = integrate(&tr, G, a, b).unwrap() + integrate(&tr, G, b, c).unwrap();
        prop_assert!(close(sum, integrate(&tr, G, a, c).unwrap(), 1e-12));
    }

    #[test]
    fn scaling_power_scales_energy(tr in trace(), lambda in 0.0f64..50.0, f0 in 0.0f64..0.5, f1 in 0.5f64..1.0) {
        let (s, e) = (tr.start(), tr.end());
        let (a, b) = (s + f0 * (e - s), s + f1 * (e - s));
        prop_assume!(b > a);
        let scaled: Vec<f64> = tr.power(G).unwrap().iter().map(|p| lambda * p).collect();
        let tr2 = PowerTrace::new(tr.times().to_vec(), vec![(G, scaled)]).unwrap();
        let (e1, e2) = (integrate(&tr, G, a, b).unwrap(), integrate(&tr2, G, a, b).unwrap());
        prop_assert!(close(e2, lambda * e1, 1e-12), "{} vs {}", e2, lambda * e1);
    }

    #[test]
    fn shifting_time_keeps_energies(tr in trace(), shift in 0.0f64..1000.0, f0 in 0.0f64..0.5, f1 in 0.5f64..1.0) {
        let (s, e) = (tr.start(), tr.end());
        let (a, b) = (s + f0 * (e - s), s + f1 * (e - s));
        prop_assume!(b - a > 1e-6);
        let moved: Vec<f64> = tr.times().iter().map(|t| t + shift).collect();
        let tr2 = PowerTrace::new(moved, vec![(G, tr.power(G).unwrap().to_vec())]).unwrap();
        let m1 = MarkerSet::new(vec![Marker::new("w", a, b)]).unwrap();
        let m2 = MarkerSet::new(vec![Marker::new("w", a + shift, b + shift)]).unwrap();
        let r1 = interval_energy(&tr, &m1, G, None).unwrap();
        let r2 = interval_energy(&tr2, &m2, G, None).unwrap();
        // shifting perturbs the window ends by rounding only
        let slack = 1e-9 * (1.0 + shift) * 5000.0;
        prop_assert!((r1.rows[0].energy_mj - r2.rows[0].energy_mj).abs() <= slack);
    }

    #[test]
    fn constant_power_is_exact_on_any_window(t in grid(), p in 0.0f64..5000.0, f0 in 0.0f64..1.0, f1 in 0.0f64..1.0) {
        let n = t.len();
        let tr = PowerTrace::new(t, vec![(G, vec![p; n])]).unwrap();
        let (s, e) = (tr.start(), tr.end());
        let (a, b) = (s + f0.min(f1) * (e - s), s + f0.max(f1) * (e - s));
        prop_assume!(b > a);
        prop_assert!(close(integrate(&tr, G, a, b).unwrap(), p * (b - a), 1e-12));
    }

    #[test]
    fn pearson_ignores_positive_affine_maps(
        pts in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 3..30),
        a in 0.1f64..10.0,
        b in -50.0f64..50.0,
    ) {
        let (xs, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
        let Ok(r) = pearson(&xs, &ys) else { return Err(TestCaseError::reject("degenerate")) };
        prop_assert!((-1.0..=1.0).contains(&r));
        let xs2: Vec<f64> = xs.iter().map(|x| a * x + b).collect();
        prop_assert!((pearson(&xs2, &ys).unwrap() - r).abs() < 1e-9);
        let ys2: Vec<f64> = ys.iter().map(|y| a * y - b).collect();
        prop_assert!((pearson(&xs, &ys2).unwrap() - r).abs() < 1e-9);
    }

    #[test]
    fn selected_run_within_spread(runs in prop::collection::vec((0.01f64..10.0, 0.0f64..1e4), 1..20)) {
        let runs: Vec<Run> = runs.into_iter().map(|(d, e)| Run::new(d, e)).collect();
        let s = select_run(&runs).unwrap();
        let e = s.selected_run().energy_mj;
        prop_assert!(s.energy_min <= e && e <= s.energy_max);
        prop_assert!(runs.iter().all(|r| r.duration >= s.selected_run().duration));
    }

    #[test]
    fn report_csv_round_trips(tr in trace(), cuts in prop::collection::vec(0.0f64..1.0, 1..6)) {
        let (s, e) = (tr.start(), tr.end());
        let mut c: Vec<f64> = cuts.iter().map(|f| s + f * (e - s)).collect();
        c.push(s);
        c.push(e);
        c.sort_by(f64::total_cmp);
        c.dedup();
        prop_assume!(c.len() >= 2);
        let markers = MarkerSet::new(
            c.windows(2).enumerate().filter(|(_, w)| w[1] > w[0]).map(|(i, w)| Marker::new(&format!("m{i}"), w[0], w[1])).collect(),
        ).unwrap();
        let report = interval_energy(&tr, &markers, G, None).unwrap();
        prop_assert_eq!(EnergyReport::from_csv(&report.to_csv()).unwrap(), report);
    }
}
