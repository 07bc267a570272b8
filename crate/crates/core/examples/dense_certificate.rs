//! Step-by-step reduction under a dense order, then the one-call driver.

use hv_verma::reduction::{
    dense_finish, dense_reduce_r, dense_reduce_to_t, reduce_to_highest, stats, verify_certificate,
};
use hv_verma::{Charge, Order, Verma, Z2};

fn main() -> hv_verma::Result<()> {
    let m = Verma::new(Order::sqrt2(), Charge::from_ints([1, 1, 0, 0]));
    let v = m
        .monomial(&[Z2::new(1, 0)], &[Z2::new(0, 1), Z2::new(1, 1)])?
        .add(&m.monomial(&[Z2::new(0, 1)], &[Z2::new(1, 0), Z2::new(1, 0)])?);
    println!("start: {v}");

    let mut cur = v.clone();
    while stats(&m, &cur)?.r > 1 {
        let (g, next) = dense_reduce_r(&m, &cur)?;
        println!("{g} → r = {}", stats(&m, &next)?.r);
        cur = next;
    }
    let (g, next) = dense_reduce_to_t(&m, &cur)?;
    println!("{g} → {next}");
    let (word, end) = dense_finish(&m, &next)?;
    println!("finish with {} letters → {end}", word.len());

    let cert = reduce_to_highest(&m, &v)?;
    println!("certificate: {} letters, scalar {}", cert.word.len(), cert.scalar);
    println!("verified: {}", verify_certificate(&m, &v, &cert)?);
    Ok(())
}
