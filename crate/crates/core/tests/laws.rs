mod common;

#[test]
fn schouten_graded_antisymmetry() {
    common::schouten_graded_antisymmetry().unwrap();
}

#[test]
fn schouten_graded_jacobi() {
    common::schouten_graded_jacobi().unwrap();
}

#[test]
fn schouten_leibniz() {
    common::schouten_leibniz().unwrap();
}

#[test]
fn exterior_derivative_squares_to_zero() {
    common::exterior_derivative_squares_to_zero().unwrap();
}

#[test]
fn pullback_is_functorial_and_commutes_with_d() {
    common::pullback_is_functorial_and_commutes_with_d().unwrap();
}
