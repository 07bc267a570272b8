//! Reduction under the lexicographic order, where ε = (1,0).

use hv_verma::reduction::{discrete_reduce_l, reduce_to_highest, split_form, stats, verify_certificate};
use hv_verma::{Charge, Order, Verma, Z2};

fn main() -> hv_verma::Result<()> {
    let m = Verma::new(Order::lex(), Charge::from_ints([1, 0, 0, 0]));
    let v = m.monomial(&[Z2::new(0, 1)], &[Z2::new(1, 0), Z2::new(0, 1), Z2::new(-1, 2)])?;
    println!("start: {v}");
    let s = stats(&m, &v)?;
    println!("l = {:?}, l′ = {:?}", s.l, s.l_prime);
    println!("off-line factors first: {} terms", split_form(&m, &v)?.len());

    let (g, next) = discrete_reduce_l(&m, &v)?;
    println!("{g} → l = {:?}", stats(&m, &next)?.l);

    let cert = reduce_to_highest(&m, &v)?;
    let word: Vec<String> = cert.word.iter().map(|g| g.to_string()).collect();
    println!("certificate: {} ⇒ {}·v", word.join(" "), cert.scalar);
    println!("verified: {}", verify_certificate(&m, &v, &cert)?);

    let reducible = Verma::new(Order::lex(), Charge::from_ints([0, 1, 0, 0]));
    println!("reducible module: {}", reduce_to_highest(&reducible, &v).unwrap_err());
    Ok(())
}
