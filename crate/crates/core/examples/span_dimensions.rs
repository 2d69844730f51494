//! Exact dimensions of the spaces spanned by g- and f-matrices.

use levels::span::{f_affine_span_rank, fstar_span_rank, g_span_rank, Mode};

fn main() {
    for (n, r) in [(6, 3), (7, 3), (7, 4), (8, 5)] {
        for mode in [Mode::General, Mode::Pointed] {
            let g = g_span_rank(n, r, mode, 12, 0).unwrap();
            let f = f_affine_span_rank(n, r, mode, 12, 0).unwrap();
            println!(
                "(n,r)=({n},{r}) {mode:?}: g rank {}, f rank {}, dimension {}",
                g.achieved_rank, f.achieved_rank, g.theoretical_dim
            );
        }
    }
    println!(
        "{}",
        fstar_span_rank(7, 3, Mode::Pointed, 8, 0)
            .unwrap()
            .to_json()
    );
}
