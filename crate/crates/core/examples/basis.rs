//! Truncated bases of graded pieces. The counts keep growing with the window.

use hv_verma::verma::enumerate_basis;
use hv_verma::{Order, Vector, Z2};

fn main() -> hv_verma::Result<()> {
    let lex = Order::lex();
    for m in enumerate_basis(&lex, Z2::new(-1, 0), 1, 2)? {
        println!("{}", Vector::from_monomial(m));
    }

    let dense = Order::sqrt2();
    let degree = Z2::new(-1, -1);
    for window in 1..=4 {
        let n = enumerate_basis(&dense, degree, window, 3)?.len();
        println!("degree {degree}, window {window}, at most 3 factors: {n} monomials");
    }
    Ok(())
}
