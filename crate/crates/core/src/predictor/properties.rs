use proptest::prelude::*;

use super::*;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn pairs() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.1f64..1e4, -1e4f64..1e4), 1..30)
}

fn rows() -> impl Strategy<Value = Vec<(f64, f64, f64)>> {
    prop::collection::vec((1.0f64..1e4, 1.0f64..1e4, 0.0f64..1e4), 3..30)
}

fn record() -> impl Strategy<Value = CounterRecord> {
    (
        "[a-zA-Z][a-zA-Z0-9_-]{0,12}",
        prop::option::of(any::<u64>()),
        prop::option::of(any::<u64>()),
        prop::option::of(any::<u64>()),
        prop::option::of(1e-6f64..1e6),
        prop::option::of(1e-6f64..1e3),
    )
        .prop_map(
            |(net, mac, simd, bus_access, energy_mj, time_s)| CounterRecord {
                net,
                mac,
                simd,
                bus_access,
                energy_mj,
                time_s,
            },
        )
}

proptest! {
    #[test]
    fn slope_scales_with_x_and_y(p in pairs(), lambda in 0.01f64..100.0) {
        let c = fit_origin_1d(&p).unwrap().slope;
        // Rounding in sum(x*y) scales with sum(|x*y|), not with the slope itself.
        let scale = p.iter().map(|(x, y)| (x * y).abs()).sum::<f64>() / p.iter().map(|(x, _)| x * x).sum::<f64>();
        let sx: Vec<_> = p.iter().map(|&(x, y)| (lambda * x, y)).collect();
        let sy: Vec<_> = p.iter().map(|&(x, y)| (x, lambda * y)).collect();
        prop_assert!((fit_origin_1d(&sx).unwrap().slope * lambda - c).abs() <= 1e-12 * scale);
        prop_assert!((fit_origin_1d(&sy).unwrap().slope / lambda - c).abs() <= 1e-12 * scale);
    }

    #[test]
    fn plane_scales_with_regressors_and_response(r in rows(), lambda in 0.01f64..100.0) {
        let Ok(m) = fit_origin_2d(&r) else { return Err(TestCaseError::reject("ill-conditioned")) };
        let sx: Vec<_> = r.iter().map(|&(a, b, y)| (lambda * a, lambda * b, y)).collect();
        let sy: Vec<_> = r.iter().map(|&(a, b, y)| (a, b, lambda * y)).collect();
        let (mx, my) = (fit_origin_2d(&sx).unwrap(), fit_origin_2d(&sy).unwrap());
        let scale = m.bus_coef.abs().max(m.simd_coef.abs());
        for (got, want) in [
            (mx.bus_coef * lambda, m.bus_coef),
            (mx.simd_coef * lambda, m.simd_coef),
            (my.bus_coef / lambda, m.bus_coef),
            (my.simd_coef / lambda, m.simd_coef),
        ] {
            prop_assert!((got - want).abs() <= 1e-9 * scale, "{} vs {}", got, want);
        }
    }

    #[test]
    fn chain_is_linear_and_monotone(
        c1 in 0.0f64..1.0, c2 in 0.0f64..1.0, x1 in 0.0f64..1e-3, x2 in 0.0f64..1e-3,
        m in 0u64..1_000_000_000, dm in 0u64..1_000_000_000,
    ) {
        let (s, b, e) = (OriginModel::new(c1), OriginModel::new(c2), EnergyModel::new(x1, x2));
        let lo = chain_predict(m, &s, &b, &e);
        let hi = chain_predict(m + dm, &s, &b, &e);
        prop_assert!(hi.energy_mj >= lo.energy_mj && hi.simd >= lo.simd && hi.bus >= lo.bus);
        let unit = chain_predict(1, &s, &b, &e).energy_mj;
        prop_assert!(close(lo.energy_mj, unit * m as f64, 1e-12) || lo.energy_mj == 0.0);
    }

    #[test]
    fn loocv_on_a_plane_has_no_error(
        counts in prop::collection::vec((1u64..1_000_000, 1u64..1_000_000), 4..10),
        x1 in 1e-6f64..1e-3, x2 in 1e-6f64..1e-3,
    ) {
        let pool: Vec<CounterRecord> = counts.iter().enumerate().map(|(i, &(bus, simd))| CounterRecord {
            net: format!("n{i}"),
            bus_access: Some(bus),
            simd: Some(simd),
            energy_mj: Some(x1 * bus as f64 + x2 * simd as f64),
            ..CounterRecord::default()
        }).collect();
        let Ok(r) = loocv(&pool) else { return Err(TestCaseError::reject("ill-conditioned fold")) };
        for f in &r.folds {
            prop_assert!(f.test_error < 1e-6, "test {}", f.test_error);
            prop_assert!(f.train_errors.iter().all(|(_, e)| *e < 1e-6));
        }
    }

    #[test]
    fn counters_csv_round_trips(recs in prop::collection::vec(record(), 0..10)) {
        prop_assert_eq!(parse_counters(&write_counters(&recs)).unwrap(), recs);
    }

    #[test]
    fn model_documents_round_trip(a in any::<f64>(), b in any::<f64>()) {
        prop_assume!(a.is_finite() && b.is_finite());
        for doc in [ModelDocument::Origin(OriginModel::new(a)), ModelDocument::Energy(EnergyModel::new(a, b))] {
            prop_assert_eq!(load_model(&save_model(&doc)).unwrap(), doc);
        }
    }
}
