use std::f64::consts::PI;

use ornithoplan::dynamics::{
    aero::{flap_coeffs, span_factor},
    drag_coeffs, integrate, tail_coeffs, theodorsen, wing_coeffs_glide, CharacteristicScales,
    FlightModel, FlightState, IntegratorConfig, Maneuver, ThrustClosure, VehicleParams,
};
use proptest::prelude::*;

mod common;
use common::{observed_order, theodorsen_oracle};

#[test]
fn theodorsen_matches_integral_oracle() {
    for k in [0.01, 0.1, 0.5, 1.0, 2.0] {
        let (f, g) = theodorsen(k).unwrap();
        let (fo, go) = theodorsen_oracle(k);
        assert!(
            (f - fo).abs() < 1e-6 && (g - go).abs() < 1e-6,
            "k={k}: ({f}, {g}) vs ({fo}, {go})"
        );
    }
}

#[test]
#[allow(clippy::excessive_precision)]
fn theodorsen_matches_high_precision_values() {
    // 30-digit evaluation of H1(2)/(H1(2) + i H0(2))
    let table: [(f64, f64, f64); 7] = [
        (0.01, 0.982421502833096, -0.04565209274931733),
        (0.1, 0.83192410496527614, -0.17230222873419501),
        (0.5, 0.597936064250132, -0.15070950316263528),
        (1.0, 0.53943487107779394, -0.10027290286410779),
        (2.0, 0.51295481242913159, -0.057691283421679905),
        (5.0, 0.50239731139211391, -0.024598525942631297),
        (10.0, 0.50061788538889101, -0.012446621553911876),
    ];
    for (k, f, g) in table {
        let (fc, gc) = theodorsen(k).unwrap();
        assert!((fc - f).abs() < 1e-10 && (gc - g).abs() < 1e-10, "k={k}");
    }
}

#[test]
fn theodorsen_real_part_decreases_toward_half() {
    assert_eq!(theodorsen(0.0f64).unwrap(), (1.0, 0.0));
    let mut prev = 1.0;
    for i in 1..=4000 {
        let k = i as f64 * 0.01;
        let (f, _) = theodorsen(k).unwrap();
        assert!(f < prev && f > 0.5, "k={k}");
        prev = f;
    }
    let (f, g) = theodorsen(100.0f64).unwrap();
    assert!((f - 0.5).abs() < 0.01 && g.abs() < 0.01);
}

fn params() -> VehicleParams<f64> {
    VehicleParams::default()
}

#[test]
fn glide_lift_hand_value() {
    let s = FlightState::new(
        0.0,
        0.0,
        (5f64).to_radians().cos(),
        (5f64).to_radians().sin(),
        0.0,
        0.0,
    );
    let cl = wing_coeffs_glide(&s, 0.0, &params()).unwrap();
    let hand = 2.0 * PI * (5.0 * PI / 180.0) * (4.44 / 6.44);
    assert!((cl - hand).abs() < 1e-12);
}

#[test]
fn tail_lift_hand_value() {
    let s = FlightState::forward(0.0, 0.0, 1.0);
    let clt = tail_coeffs(&s, (-3f64).to_radians(), 0.0, &params()).unwrap();
    let hand = (PI * 2.35 / 2.0) * (-3.0 * PI / 180.0);
    assert!((clt - hand).abs() < 1e-12);
}

#[test]
fn drag_hand_values() {
    let p = params();
    assert_eq!(drag_coeffs(0.0, 0.0, &p), (0.018, 0.021));
    let (cd, _) = drag_coeffs(1.0, 0.0, &p);
    assert!((cd - (0.018 + 1.0 / (PI * 4.44))).abs() < 1e-15);
}

#[test]
fn flap_quarter_period_hand_value() {
    let p = params();
    let (alpha, k) = (0.05, 0.7);
    let (f, g, f1, g1) = (0.58, -0.16, 0.6, -0.55);
    let (cl, ct) = flap_coeffs(alpha, k, PI / 2.0, (f, g), (f1, g1), &p);
    // sin = 1, cos = 0
    let kh = k * p.flap_amplitude;
    let ar = p.aspect_ratio;
    let cl_hand = 2.0 * PI * (kh * f + alpha) * ar / (ar + 2.0);
    let ct_hand = 4.0 * kh * kh * (-g1) * ar / (ar + 2.0) - alpha * cl_hand;
    assert!((cl - cl_hand).abs() < 1e-9);
    assert!((ct - ct_hand).abs() < 1e-9);
}

#[test]
fn mean_flapping_thrust_is_positive() {
    let model = FlightModel::<f64>::default();
    for hz in [4.0, 5.0, 6.0] {
        let f_nd = model.scales.frequency_to_nd(hz);
        let k = 2.0 * PI * f_nd;
        let theo = theodorsen(k).unwrap();
        let c1 = ThrustClosure::GarrickMean.eval(k, theo);
        let n = 1000;
        let mean = (0..n)
            .map(|i| {
                flap_coeffs(
                    0.0,
                    k,
                    2.0 * PI * i as f64 / n as f64,
                    theo,
                    c1,
                    &model.params,
                )
                .1
            })
            .sum::<f64>()
            / n as f64;
        let garrick = PI
            * k
            * k
            * model.params.flap_amplitude.powi(2)
            * (theo.0.powi(2) + theo.1.powi(2))
            * span_factor(model.params.aspect_ratio);
        assert!(mean > 0.0, "{hz} Hz");
        assert!(
            (mean - garrick).abs() < 1e-9 * garrick,
            "{hz} Hz: {mean} vs {garrick}"
        );
    }
}

/// Right-hand side written directly from the longitudinal Newton-Euler
/// equations for a gliding maneuver.
fn glide_rhs_oracle(
    s: &FlightState<f64>,
    delta: f64,
    alpha_dot: f64,
    p: &VehicleParams<f64>,
) -> [f64; 6] {
    let ub = (s.u * s.u + s.w * s.w).sqrt();
    let a = (s.w / s.u).atan();
    let stall = p.stall_wing * PI / 180.0;
    let stall_t = p.stall_tail * PI / 180.0;
    let ia = a + (1.5 * alpha_dot - p.lw_ratio * s.q) / ub;
    let cl = 2.0 * PI * ia.clamp(-stall, stall) * p.aspect_ratio / (p.aspect_ratio + 2.0);
    let it = (1.0 - p.downwash) * a + delta + (1.5 * alpha_dot - p.lt_ratio * s.q) / ub;
    let clt = PI * p.tail_aspect_ratio / 2.0 * it.clamp(-stall_t, stall_t);
    let cd = p.wing_friction_drag + cl * cl / (PI * p.aspect_ratio);
    let cdt = p.tail_friction_drag + clt * clt / (PI * p.tail_aspect_ratio);
    let ct = 0.0;
    let m2 = 2.0 * p.mass;
    let lam = p.tail_ratio;
    let du =
        (ub * ub * ((cl + lam * clt) * a.sin() + (ct - cd - p.lighthill - lam * cdt) * a.cos())
            - s.theta.sin()
            - m2 * s.q * s.w)
            / m2;
    let dw =
        (ub * ub * (-(cl + lam * clt) * a.cos() + (ct - cd - p.lighthill - lam * cdt) * a.sin())
            + s.theta.cos()
            + m2 * s.q * s.u)
            / m2;
    let dq = p.inertia
        * ub
        * ub
        * (cl * a.cos() - (ct - cd) * a.sin()
            + p.tail_lever * lam * (clt * a.cos() + cdt * a.sin())
            - p.wing_lever * (cl * a.sin() + (ct - cd) * a.cos()));
    let dx = s.u * s.theta.cos() + s.w * s.theta.sin();
    let dz = -s.u * s.theta.sin() + s.w * s.theta.cos();
    [dx, dz, du, dw, s.q, dq]
}

#[test]
fn gliding_rhs_matches_oracle() {
    let model = FlightModel::<f64>::default();
    let cases = [
        (
            FlightState::new(3.0, -1.0, 1.1, 0.08, 0.05, 0.01),
            -2.0,
            0.013,
        ),
        (
            FlightState::new(0.0, 0.0, 0.9, -0.03, -0.1, -0.02),
            -6.0,
            -0.02,
        ),
        (FlightState::new(10.0, 4.0, 1.4, 0.2, 0.2, 0.003), 0.0, 0.0),
    ];
    for (s, d, ad) in cases {
        let m = Maneuver::from_degrees(d, 0.0);
        let got = model.state_derivative(&s, &m, 0.0, ad).unwrap().to_array();
        let want = glide_rhs_oracle(&s, m.delta, ad, &model.params);
        for i in 0..6 {
            assert!(
                (got[i] - want[i]).abs() < 1e-12,
                "component {i}: {} vs {}",
                got[i],
                want[i]
            );
        }
    }
}

#[test]
fn zero_coefficient_mode_free_fall() {
    let model = FlightModel::<f64>::default().without_aerodynamics();
    let s = FlightState::forward(0.0, 0.0, 1.0);
    let d = model
        .state_derivative(&s, &Maneuver::glide(0.0), 0.0, 0.0)
        .unwrap();
    assert_eq!(d.u, 0.0);
    assert!((d.w - 1.0 / (2.0 * model.params.mass)).abs() < 1e-15);
    assert_eq!(d.q, 0.0);
    let end = integrate(
        &model,
        &s,
        &Maneuver::glide(0.0),
        2.0,
        &IntegratorConfig::default(),
    )
    .unwrap();
    let t_nd = model.scales.time_to_nd(2.0);
    assert!((end.w - t_nd / (2.0 * model.params.mass)).abs() < 1e-10);
}

#[test]
fn rk4_observed_order() {
    let order = observed_order();
    assert!(order >= 3.5, "observed order {order}");
}

#[test]
fn short_segment_approaches_identity() {
    let model = FlightModel::<f64>::default();
    let s = FlightState::new(0.0, 0.0, 1.0, 0.05, 0.02, 0.0);
    let m = Maneuver::from_degrees(0.0, 5.0);
    let e = integrate(&model, &s, &m, 1e-6, &IntegratorConfig::default()).unwrap();
    assert!(e.distance(&s) < 1e-3);
}

proptest! {
    #[test]
    fn theodorsen_bounds(k in 0.0f64..200.0) {
        let (f, g) = theodorsen(k).unwrap();
        prop_assert!((0.5..=1.0).contains(&f));
        prop_assert!(g <= 0.0);
    }

    #[test]
    fn lift_saturates(u in 0.3f64..2.0, w in -2.0f64..2.0, q in -0.5f64..0.5, ad in -0.5f64..0.5, d in -6.0f64..0.0) {
        let p = params();
        let s = FlightState::new(0.0, 0.0, u, w, 0.0, q);
        let cl = wing_coeffs_glide(&s, ad, &p).unwrap();
        let clt = tail_coeffs(&s, d.to_radians(), ad, &p).unwrap();
        let cl_max = 2.0 * PI * p.stall_wing_rad() * span_factor(p.aspect_ratio);
        let clt_max = PI * p.tail_aspect_ratio / 2.0 * p.stall_tail_rad();
        prop_assert!(cl.abs() <= cl_max * (1.0 + 1e-12));
        prop_assert!(clt.abs() <= clt_max * (1.0 + 1e-12));
    }

    #[test]
    fn drag_not_below_friction(cl in -10.0f64..10.0, clt in -10.0f64..10.0) {
        let p = params();
        let (cd, cdt) = drag_coeffs(cl, clt, &p);
        prop_assert!(cd >= p.wing_friction_drag);
        prop_assert!(cdt >= p.tail_friction_drag);
    }

    #[test]
    fn pitch_derivative_is_pitch_rate(
        u in 0.3f64..2.0, w in -0.5f64..0.5, th in -0.6f64..0.6, q in -0.3f64..0.3,
        d in -6.0f64..0.0, fi in 0usize..4, t in 0.0f64..50.0, ad in -0.1f64..0.1,
    ) {
        let model = FlightModel::<f64>::default();
        let f = [0.0, 4.0, 5.0, 6.0][fi];
        let s = FlightState::new(1.0, 2.0, u, w, th, q);
        let dd = model.state_derivative(&s, &Maneuver::from_degrees(d, f), t, ad).unwrap();
        prop_assert_eq!(dd.theta, q);
        if f == 0.0 {
            let c = model.coefficients(&s, &Maneuver::from_degrees(d, f), t, ad).unwrap();
            prop_assert_eq!(c.thrust, 0.0);
        }
    }

    #[test]
    fn nondimensional_round_trip(v in -1e4f64..1e4) {
        let sc = CharacteristicScales::<f64>::default();
        prop_assert!((sc.length_from_nd(sc.length_to_nd(v)) - v).abs() <= 1e-12 * (1.0 + v.abs()));
        prop_assert!((sc.speed_from_nd(sc.speed_to_nd(v)) - v).abs() <= 1e-12 * (1.0 + v.abs()));
        prop_assert!((sc.time_from_nd(sc.time_to_nd(v)) - v).abs() <= 1e-12 * (1.0 + v.abs()));
    }
}
