//! Gale duality: dependency patterns of V are the dissection patterns of
//! its dual, and the f*-matrix is determined by the f-matrix.

use levels::config::gen_random;
use levels::faces::{dependency_patterns, f_matrix, farkas_complement_oracle, fstar_matrix};
use levels::relations::{check_duality, f_fstar_transform, Direction};

fn main() {
    let v = gen_random(6, 3, 11, true).expect("random configuration");
    let dual = v.gale_dual().expect("dual exists");
    println!("V  = {v:?}");
    println!("V* = {dual:?}");
    println!(
        "V pointed: {}, V* pointed: {}",
        v.is_pointed(),
        dual.is_pointed()
    );

    let deps = dependency_patterns(&v);
    let farkas = farkas_complement_oracle(&v).expect("n is small");
    println!(
        "{} dependency patterns; Farkas oracle agrees: {}",
        deps.len(),
        deps == farkas
    );

    let f = f_matrix(&v);
    let predicted = f_fstar_transform(&f.polynomial(), v.n(), v.r(), Direction::FToFStar).unwrap();
    println!("f*(x,y) from f: {predicted}");
    println!("f*(x,y) counted: {}", fstar_matrix(&v).polynomial());
    println!("{:?}", check_duality(&v));
}
