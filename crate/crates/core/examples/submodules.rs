//! The reducible cases: which maximal submodule applies, generation from
//! E(-γ)v, and windowed membership for discrete orders.

use hv_verma::rational::q;
use hv_verma::submodules::{
    criterion_secondary, prop37_generate, prop37_member, prop38_member, Target, Variant, WhittakerParams,
};
use hv_verma::{Charge, Order, Vector, Verma, Z2};

fn main() -> hv_verma::Result<()> {
    for (o, c) in [
        (Order::sqrt2(), [0, 0, 0, 0]),
        (Order::sqrt2(), [0, 0, 1, 0]),
        (Order::lex(), [0, 1, 0, 1]),
        (Order::lex(), [0, 1, 1, 0]),
    ] {
        println!("{c:?} → {}", criterion_secondary(&o, &Charge::from_ints(c))?);
    }

    let m = Verma::new(Order::sqrt2(), Charge::from_ints([0; 4]));
    let gamma = Z2::new(1, 1);
    let start = m.monomial(&[], &[gamma])?;
    for target in [Target::E(Z2::new(3, 2)), Target::T(Z2::new(1, 1))] {
        let p = prop37_generate(&m, gamma, target, 64)?;
        let out = p.apply(&m, &start);
        println!("{} words reach {out}", p.words.len());
        println!("  in the maximal submodule: {}", prop37_member(&m, &out, Variant::Prop37_1)?);
    }

    let lex = Verma::new(Order::lex(), Charge::from_ints([0; 4]));
    let mut params = WhittakerParams::new(Variant::Prop38Ab);
    params.a.insert(1, q(2));
    let eps = Z2::new(1, 0);
    let generator = lex.monomial(&[eps], &[])?.sub(&Vector::vacuum().scale(&q(2)));
    let square = lex.monomial(&[eps, eps], &[])?;
    println!("(t_1 - 2)v member: {}", prop38_member(&lex, &generator, &params, 0, 3)?);
    println!("t_1² v member: {}", prop38_member(&lex, &square, &params, 0, 3)?);
    let up = lex.monomial(&[Z2::new(0, 1)], &[])?;
    println!(
        "t^(0,-1) v member within window 2: {}",
        prop38_member(&lex, &up, &WhittakerParams::new(Variant::Prop38Ab), 1, 2)?
    );
    Ok(())
}
