use crg::group::load_builtin;
use crg::invariant::corpus_get;
use crg::singular::certify;
use std::time::Instant;

fn main() {
    let g = corpus_get("g").unwrap();
    let w1 = load_builtin("W1").unwrap();
    let t0 = Instant::now();
    match certify(&g, &w1, 11) {
        Ok(r) => {
            println!("irr={} dim={} count={} real={:?}", r.irreducible, r.proj_dim, r.point_count, r.real_point_count);
            for o in &r.orbits {
                println!("  orbit size {} deg {} type m={} mu={} tau={} corank={} label={}",
                    o.size, o.field_degree, o.local_type.m, o.local_type.mu, o.local_type.tau,
                    o.local_type.corank, o.local_type.label);
            }
            println!("fields {:?}", r.fields_of_definition)
        }
        Err(e) => println!("ERR {e}"),
    }
    println!("elapsed {:?}", t0.elapsed());
}
