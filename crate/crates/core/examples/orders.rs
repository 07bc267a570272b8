//! The two families of compatible orders on Z².

use hv_verma::{Order, Unimodular, Z2};

fn main() -> hv_verma::Result<()> {
    let dense = Order::sqrt2();
    let lex = Order::lex();
    let skew = Order::Discrete(Unimodular::new([[1, 1], [0, 1]])?);

    let a = Z2::new(-1, 1);
    println!("(-1,1) positive? dense: {}, lex: {}", dense.is_positive(a), lex.is_positive(a));
    println!("dense window 1: {}", show(&dense.positive_window(1)));
    println!("lex window 1:   {}", show(&lex.positive_window(1)));

    for o in [&lex, &skew] {
        println!("ε = {}, ε′ = {}", o.epsilon()?, o.epsilon_prime()?);
    }

    println!("μ(4,6) = {}", dense.mu(Z2::new(4, 6))?);
    let (lo, hi) = (Z2::new(1, 0), Z2::new(1, 1));
    let g = dense.choose_between(lo, hi)?;
    println!("between {lo} and {hi}: {g}");
    println!("least n with n·(1,0) ≻ (0,3): {}", dense.archimedean_n(Z2::new(1, 0), Z2::new(0, 3))?);
    Ok(())
}

fn show(xs: &[Z2]) -> String {
    xs.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ≺ ")
}
