//! Brackets of basis elements and a spot check of the Jacobi identity.

use hv_verma::{bracket, bracket_gen, Generator, LieElement, Z2};

fn main() {
    use Generator::*;
    let pairs = [
        (T(Z2::new(1, 0)), E(Z2::new(-1, 0))),
        (T(Z2::new(1, 0)), T(Z2::new(2, 3))),
        (E(Z2::new(1, 2)), E(Z2::new(3, 4))),
        (E(Z2::new(2, -3)), E(Z2::new(-2, 3))),
        (E(Z2::new(0, 1)), T(Z2::new(1, 1))),
    ];
    for (a, b) in pairs {
        println!("[{a}, {b}] = {}", bracket_gen(a, b));
    }

    let (x, y, z): (LieElement, LieElement, LieElement) =
        (E(Z2::new(1, 2)).into(), T(Z2::new(-1, 0)).into(), E(Z2::new(0, -2)).into());
    let jacobi = bracket(&x, &bracket(&y, &z)).add(&bracket(&y, &bracket(&z, &x))).add(&bracket(&z, &bracket(&x, &y)));
    println!("Jacobi sum for ({x}, {y}, {z}): {jacobi}");
}
