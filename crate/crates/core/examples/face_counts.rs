//! f-matrix of the cyclic configuration of 6 vectors in rank 3, with a
//! few of its dissection patterns.

use levels::config::cyclic;
use levels::faces::{dissection_patterns, f_matrix_of};

fn main() {
    let v = cyclic(6, 3);
    let patterns = dissection_patterns(&v);
    let f = f_matrix_of(&patterns, v.d(), v.n());
    println!("{v:?}");
    println!("{} dissection patterns, e.g.", patterns.len());
    for p in patterns.iter().take(5) {
        println!("  {p}");
    }
    println!("f-matrix (row s = number of zeros, column t = number of minuses):");
    print!("{}", f.to_csv());
    println!("row sums: {:?}", f.row_sums());
    println!("f(x, y) = {}", f.polynomial());
}
