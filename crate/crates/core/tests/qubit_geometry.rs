use std::f64::consts::PI;

use biham_core::gqm::{
    bloch_coordinates, bloch_geometry, bloch_state, from_bloch_coordinates, superpose, transition_probability,
};
use biham_core::Complex64;

fn unit(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

#[test]
fn transition_probability_is_half_one_plus_cosine() {
    let pts = [(0.3, 0.1), (1.2, 2.5), (2.9, -1.0), (PI / 2.0, 0.0)];
    for &(t1, f1) in &pts {
        for &(t2, f2) in &pts {
            let (a, b) = (bloch_state(t1, f1), bloch_state(t2, f2));
            let (u, v) = (unit(t1, f1), unit(t2, f2));
            let cos: f64 = u.iter().zip(&v).map(|(x, y)| x * y).sum();
            assert!((transition_probability(&a, &b) - 0.5 * (1.0 + cos)).abs() < 1e-14);
        }
    }
}

#[test]
fn coordinates_round_trip_and_lie_on_the_sphere() {
    for &(t, f) in &[(0.4, 0.9), (2.0, -2.2), (1.0, 3.0)] {
        let s = bloch_state(t, f);
        let (y0, y) = bloch_coordinates(s.matrix()).unwrap();
        assert!((y0 - 0.5).abs() < 1e-14);
        let r2: f64 = y.iter().map(|x| x * x).sum();
        assert!((r2 - 0.25).abs() < 1e-14);
        assert!((from_bloch_coordinates(y0, y) - s.matrix()).norm() < 1e-14);
        let geo = bloch_geometry(y).unwrap();
        let (ambient, tangent) = geo.complex_structure_defects();
        assert!(ambient < 1e-14 && tangent < 1e-14);
    }
}

#[test]
fn equal_weight_superposition_of_poles_lands_on_the_equator() {
    let north = bloch_state(0.0, 0.0);
    let south = bloch_state(PI, 0.0);
    let fiducial = bloch_state(PI / 2.0, 0.0);
    let w = 0.5f64.sqrt();
    let s = superpose(&north, &south, &fiducial, Complex64::new(w, 0.0), Complex64::new(w, 0.0)).unwrap();
    let (_, y) = bloch_coordinates(s.matrix()).unwrap();
    assert!(y[2].abs() < 1e-12);
    assert!((y[0] * y[0] + y[1] * y[1] - 0.25).abs() < 1e-12);
}

#[test]
fn fiducial_orthogonal_to_an_input_is_rejected() {
    let north = bloch_state(0.0, 0.0);
    let south = bloch_state(PI, 0.0);
    let w = 0.5f64.sqrt();
    let r = superpose(&north, &south, &south, Complex64::new(w, 0.0), Complex64::new(w, 0.0));
    assert!(r.is_err());
}
