//! Constructing finite groups: built-in families, permutation closures,
//! explicit multiplication tables, and direct products, with full axiom
//! validation along the way.
//!
//! ```bash
//! cargo run --example build_groups
//! ```

use groupwords::{builtin, Family, Group};

fn describe(group: &Group) {
    println!(
        "  {:10} order={:<4} abelian={:<5} center_size={}",
        group.name(),
        group.order(),
        group.is_abelian(),
        group.center().len()
    );
}

fn main() -> anyhow::Result<()> {
    println!("Built-in families:");
    for family in [
        Family::Cyclic(12),
        Family::Dihedral(4),
        Family::Symmetric(4),
        Family::Alternating(5),
        Family::Quaternion8,
        Family::Heisenberg(3),
        Family::ElementaryAbelian(2, 3),
    ] {
        describe(&builtin(&family)?);
    }

    println!("\nClosure of permutation generators (images on 3 points):");
    let s3 = Group::from_permutation_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]], "S3")?;
    describe(&s3);
    println!("  identity at index {}; table entry (1, 2) = {}", s3.identity(), s3.multiply(1, 2));

    println!("\nAn explicit table (integers mod 4 under addition):");
    let z4 = Group::from_cayley_table(
        (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect(),
        "Z4",
    )?;
    describe(&z4);

    println!("\nDirect products:");
    let product = builtin(&Family::Quaternion8)?.direct_product(&builtin(&Family::Cyclic(2))?)?;
    describe(&product);

    println!("\nValidation rejects broken tables:");
    match Group::from_cayley_table(vec![vec![0, 1], vec![1, 1]], "bad") {
        Err(e) => println!("  [[0,1],[1,1]] -> {e}"),
        Ok(_) => unreachable!(),
    }
    match Group::from_permutation_generators(2, &[vec![0, 0]], "bad") {
        Err(e) => println!("  generator [0,0] -> {e}"),
        Ok(_) => unreachable!(),
    }

    println!("\nEvery constructed group re-validates:");
    for g in [&s3, &z4, &product] {
        g.validate()?;
        println!("  {} passes the full axiom check", g.name());
    }
    Ok(())
}
