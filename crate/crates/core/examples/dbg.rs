use lmf_core::theta::*;
use lmf_core::populations::TPair;
use lmf_core::exactalg::{ratio, Poly};
use std::time::Instant;
fn main() {
    let t = TPair::new(Poly::from_i64s(&[0,0,1]), Poly::from_i64s(&[0,0,1])).unwrap();
    let consts: Vec<ConstantPair> = (0..8).map(|k| ConstantPair::mix(ratio(k+1, 3))).collect();
    let start = Instant::now();
    let seq = theta_sequence(&t, 0, 9, &consts).unwrap();
    println!("theta_9 deg {} in {:?}", seq.thetas[9].deg(), start.elapsed());
    let start = Instant::now();
    let rep = verify_theta_recursion(&seq);
    println!("recursion all_pass={} in {:?}", rep.all_pass, start.elapsed());
}
