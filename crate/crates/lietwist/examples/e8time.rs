use lietwist::RootSystem;
fn main() {
    let t0 = std::time::Instant::now();
    let rs = RootSystem::new("E8".parse().unwrap());
    println!("E8 built: {} roots in {:?}", rs.num_roots(), t0.elapsed());
    let t1 = std::time::Instant::now();
    let base = rs.catalog_base();
    println!("base: highest = {} in {:?}", base.highest_root(), t1.elapsed());
}
