//! Canonical JSON for vectors and certificates, and the input digest.

use hv_verma::io::{digest, from_json, to_canonical_json, CertificateWire, VectorFile};
use hv_verma::rational::q_frac;
use hv_verma::reduction::reduce_to_highest;
use hv_verma::{Charge, Order, Verma, Z2};

fn main() -> hv_verma::Result<()> {
    let m = Verma::new(Order::sqrt2(), Charge::from_ints([2, -1, 0, 3]));
    let v = m.monomial(&[Z2::new(1, 1)], &[Z2::new(0, 1)])?.scale(&q_frac(6, 4));
    let text = to_canonical_json(&VectorFile::new(&m, &v));
    println!("{text}");

    let (m2, v2) = from_json::<VectorFile>(&text)?.decode()?;
    println!("round trip identical: {}", to_canonical_json(&VectorFile::new(&m2, &v2)) == text);
    println!("digest: {}", digest(&m, &v));

    let cert = reduce_to_highest(&m, &v)?;
    println!("{}", to_canonical_json(&CertificateWire::from_certificate(&cert)));
    Ok(())
}
