//! Reeb radius on a small graph: the smallest `r` such that some path from
//! `x` to `y` stays within `r` of `g(x)`.

use reebdeco::reeb_radius::{
    oracle_reeb_distance, oracle_reeb_radius, reeb_radius_from, reeb_radius_matrix,
};
use reebdeco::FunctionGraph;

fn main() -> reebdeco::Result<()> {
    // A square with a tail; node 2 sits on a high ridge.
    let g = FunctionGraph::scalar(
        5,
        vec![(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)],
        &[0.0, 1.0, 3.0, 0.5, 2.0],
    )?;

    let field = reeb_radius_from(&g, 0);
    println!("rho from node 0: {:?}", field.rho);

    let m = reeb_radius_matrix(&g);
    println!("\nradius matrix (not symmetric):");
    for x in 0..m.size() {
        println!("  {:?}", m.row(x));
    }

    println!("\nfast vs exhaustive search, and the symmetric Reeb distance:");
    for y in 1..5 {
        println!(
            "  0 -> {y}: rho {:.2}  oracle {:.2}  distance {:.2}",
            m.get(0, y),
            oracle_reeb_radius(&g, 0, y)?,
            oracle_reeb_distance(&g, 0, y)?
        );
    }
    Ok(())
}
