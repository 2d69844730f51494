//! Mutations along a straight-line motion, with exact root intervals,
//! types and the g-matrix they add up to.

use levels::config::{cocyclic, cyclic};
use levels::gmatrix::g_of_pair;
use levels::motion::{detect_mutations, detect_with_perturbation, g_of_path};

fn main() {
    let (v, w) = (cocyclic(5, 3), cyclic(5, 3));
    match detect_mutations(&v, &w) {
        Ok(_) => println!("straight line is generic"),
        Err(e) => println!("straight line rejected: {e}"),
    }
    let (target, path) = detect_with_perturbation(&v, &w, 0).expect("a perturbation works");
    println!(
        "perturbed target keeps f(W): {}",
        levels::faces::f_matrix(&target) == levels::faces::f_matrix(&w)
    );
    for e in &path.events {
        let subset: Vec<usize> = e.subset.iter().map(|i| i + 1).collect();
        println!(
            "R={subset:?} t in ({}, {}) type {:?} flip {}",
            e.interval.lo,
            e.interval.hi,
            e.mtype,
            e.flip.as_str()
        );
    }
    let g = g_of_path(3, 5, &path.events);
    println!("g from motion: {:?}", g.small().g);
    println!(
        "g from f-matrices: {:?}",
        g_of_pair(&v, &w).unwrap().small().g
    );
}
