//! Sums of g-matrices over all contractions and deletions of a pair.

use levels::config::gen_random;
use levels::gmatrix::{check_contraction_deletion, g_of_pair, GMatrix, MinorMode};

fn main() {
    let v = gen_random(6, 3, 21, false).unwrap();
    let w = gen_random(6, 3, 22, false).unwrap();
    println!("g(V -> W) = {:?}", g_of_pair(&v, &w).unwrap().rows());

    let mut sum = GMatrix::zeros(2, 5);
    for i in 0..v.n() {
        let g = g_of_pair(&v.contract(i).unwrap(), &w.contract(i).unwrap()).unwrap();
        sum = sum.add(&g).unwrap();
    }
    println!("sum over contractions = {:?}", sum.rows());
    for mode in [MinorMode::Contract, MinorMode::Delete] {
        println!("{:?}", check_contraction_deletion(&v, &w, mode).unwrap());
    }
}
