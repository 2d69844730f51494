//! Antipodal symmetry, totals and the Dehn-Sommerville relations on random
//! configurations, plus what happens after corrupting one entry.

use levels::config::gen_random;
use levels::faces::f_matrix;
use levels::relations::{
    check_all, check_antipodal, check_dehn_sommerville, check_totals, ds_coefficient_residual,
};
use levels::FMatrix;

fn main() {
    for (n, r, seed) in [(5, 2, 1), (6, 3, 2), (8, 4, 3)] {
        let v = gen_random(n, r, seed, false).expect("random configuration");
        let reports = check_all(&v);
        let line: Vec<String> = reports
            .iter()
            .map(|r| format!("{}={}", r.relation, r.holds))
            .collect();
        println!("(n,r)=({n},{r}) seed {seed}: {}", line.join(" "));
    }

    let f = f_matrix(&gen_random(6, 3, 2, false).unwrap());
    let mut rows = f.rows().to_vec();
    rows[1][2] += 1;
    let bad = FMatrix::new(f.d(), f.n(), rows).unwrap();
    println!("after adding 1 at (s,t)=(1,2):");
    for rep in [
        check_antipodal(&bad),
        check_totals(&bad),
        check_dehn_sommerville(&bad),
    ] {
        println!(
            "  {}: holds={} {}",
            rep.relation,
            rep.holds,
            rep.witness.unwrap_or_default()
        );
    }
    println!("coefficient residual: {:?}", ds_coefficient_residual(&bad));
}
