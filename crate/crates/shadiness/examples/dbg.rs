fn main() {
    let p = shadiness::polytope::make_icosahedron_i();
    match shadiness::shady::covering_refutation(&p) {
        Some(n) => {
            println!("witness: {:?}", n.iter().map(|x| x.to_string()).collect::<Vec<_>>());
            println!("crossed pairs: {}", shadiness::shady::crossed_pair_count(&p, &n));
        }
        None => println!("covers all planes"),
    }
}
