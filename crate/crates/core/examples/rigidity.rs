//! Neighborly and coneighborly configurations have a fixed f-matrix.

use levels::config::{cyclic, gen_cocyclic, gen_random};
use levels::exactnum::rat;
use levels::faces::f_matrix;

fn main() {
    let reference = f_matrix(&cyclic(6, 3));
    let mut convex = 0;
    let mut others = std::collections::BTreeSet::new();
    for seed in 0..60 {
        let v = gen_random(6, 3, seed, true).unwrap();
        if v.is_neighborly() {
            convex += 1;
            assert_eq!(f_matrix(&v), reference);
        } else {
            others.insert(f_matrix(&v).rows().to_vec());
        }
    }
    println!("{convex} convex hexagons share f = {:?}", reference.rows());
    println!(
        "{} distinct f-matrices among the non-convex ones",
        others.len()
    );

    let params: Vec<_> = [-3, -1, 0, 2, 5, 11].iter().map(|&t| rat(t, 2)).collect();
    let v = gen_cocyclic(6, 3, &params).unwrap();
    println!(
        "cocyclic with custom parameters coneighborly: {}, f = {:?}",
        v.is_coneighborly(),
        f_matrix(&v).rows()
    );
}
