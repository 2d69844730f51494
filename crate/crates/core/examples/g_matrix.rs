//! g-matrix of a pair from the two f-matrices, checked against the closed
//! form for coneighborly to neighborly pairs.

use levels::config::{cocyclic, cyclic, gen_random};
use levels::gmatrix::{apply_t, g_closed_form_neighborly, g_of_pair};

fn main() {
    for (n, r) in [(5, 3), (6, 3), (7, 3), (7, 4), (9, 4)] {
        let g = g_of_pair(&cocyclic(n, r), &cyclic(n, r)).expect("same shape");
        let closed = g_closed_form_neighborly(n, r).expect("n > r");
        println!(
            "(n,r)=({n},{r}) cocyclic -> cyclic: small g {:?}, closed form agrees: {}",
            g.small().g,
            g.small() == closed
        );
    }

    let v = gen_random(6, 3, 1, false).unwrap();
    let w = gen_random(6, 3, 2, false).unwrap();
    let g = g_of_pair(&v, &w).unwrap();
    println!("random pair, full g: {:?}", g.rows());
    println!("T(g) = f(W) - f(V): {:?}", apply_t(&g));
    let back = g_of_pair(&w, &v).unwrap();
    println!("g(W -> V) = -g(V -> W): {}", back == g.negated());
}
