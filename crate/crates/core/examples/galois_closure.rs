//! Galois closure of a degree-4 cover with monodromy S4, its deck group,
//! and the classification of every subgroup of the deck group.
//!
//!     cargo run --example galois_closure -- 4 "(1 2 3 4);(1 2)"

use semistab::galois::{classify_point, galois_closure, parse_generators, FiniteCover, Limits, SubgroupLattice};

fn main() -> semistab::Result<()> {
    let mut args = std::env::args().skip(1);
    let degree: usize = args.next().and_then(|d| d.parse().ok()).unwrap_or(4);
    let gens = args.next().unwrap_or_else(|| "(1 2 3 4);(1 2)".into());

    let cover = FiniteCover::new(degree, parse_generators(degree, &gens)?)?;
    let limits = Limits::default();
    let closure = galois_closure(&cover, &limits)?;
    closure.verify(&limits)?;
    println!("cover of degree {degree} with generators {gens}");
    println!("closure has {} points over the base point", closure.orbit_size());
    println!("evaluation at the base tuple: {:?}", closure.evaluation_map());

    let lattice = SubgroupLattice::new(closure.deck_group().clone(), 1000)?;
    let reps = lattice.class_representatives();
    println!("{} subgroups in {} isomorphism classes", lattice.subgroups().len(), reps.len());
    let mut cells = vec![0; reps.len()];
    for i in lattice.subgroups() {
        cells[classify_point(&lattice, i, &reps)?] += 1;
    }
    for (k, rep) in reps.iter().enumerate() {
        println!("  class {k}: order {:>3}, {:>2} image subgroups land here", rep.order(), cells[k]);
    }
    Ok(())
}
