//! Acting on the vacuum and normal-ordering words, cross-checked by the
//! randomized rewriting normalizer.

use hv_verma::rewrite::normalize_random;
use hv_verma::{Charge, Generator, Order, Vector, Verma, Z2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hv_verma::Result<()> {
    use Generator::*;
    let m = Verma::new(Order::sqrt2(), Charge::from_ints([1, 2, 0, 1]));

    let v = m.monomial(&[Z2::new(1, 0)], &[Z2::new(0, 1)])?;
    println!("v = {v}");
    println!("E(1,0)·v = {}", m.act(E(Z2::new(1, 0)), &v));
    println!("K2·v = {}", m.act(K(2), &v));
    println!("E(1,1)·vacuum = {}", m.act(E(Z2::new(1, 1)), &Vector::vacuum()));

    // the rightmost letter acts first
    let word = [E(Z2::new(1, 0)), E(Z2::new(0, -1)), T(Z2::new(-1, 0)), E(Z2::new(-1, -1))];
    let engine = m.normal_order(&word);
    println!("word·vacuum = {engine}");
    for seed in 0..3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let other = normalize_random(m.order(), m.charge(), &word, &mut rng);
        println!("schedule {seed} agrees: {}", other == engine);
    }
    Ok(())
}
