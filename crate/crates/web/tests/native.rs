use pushrank_web::{residual_trace_value, work_comparison_value, xi_sweep_value};

#[test]
fn sweep_error_falls_with_threshold() {
    let v = xi_sweep_value(2000, 16000, 0.2, 3).unwrap();
    assert_eq!(v["xi"].as_array().unwrap().len(), 11);
    for variant in ["ifp1", "ifp2"] {
        let errs: Vec<f64> = v["err"][variant]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| e.as_f64().unwrap())
            .collect();
        assert!(errs.first().unwrap() > errs.last().unwrap());
        assert!(*errs.last().unwrap() < 1e-9, "{variant}: {errs:?}");
    }
}

#[test]
fn trace_starts_with_one_unit_per_vertex() {
    let v = residual_trace_value(500, 3000, 0.3, 1, 1e-8).unwrap();
    let h: Vec<f64> = v["h_l1"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(h[0], 500.0);
    assert!(h.windows(2).all(|w| w[1] <= w[0]));
    assert_eq!(v["t"].as_array().unwrap().len(), h.len());
}

#[test]
fn two_phase_touches_dangling_edges_once() {
    let v = work_comparison_value(1000, 8000, 0.25, 9, 1e-9).unwrap();
    let m_d = v["m_d"].as_u64().unwrap();
    assert_eq!(v["runs"]["ifp2"]["push_ops_to_dangling"].as_u64().unwrap(), m_d);
    assert!(v["runs"]["ifp1"]["push_ops_to_dangling"].as_u64().unwrap() > 2 * m_d);
}

#[test]
fn oversized_requests_are_rejected() {
    assert!(xi_sweep_value(1_000_000, 2_000_000, 0.2, 1).is_err());
    assert!(residual_trace_value(10, 5, 0.0, 1, 1e-8).is_err());
}
