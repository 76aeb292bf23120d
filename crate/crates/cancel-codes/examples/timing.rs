use cancel_codes::construct::construct_algebraic;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let code = construct_algebraic(11, 3, None, 1, 2000).unwrap();
    println!("construct q=11 k=3: {} members in {:?}", code.family.len(), t0.elapsed());
    for threads in [1usize, 4] {
        let t1 = Instant::now();
        let v = code.family.is_t_cancellative_threads(2, threads).unwrap();
        println!("verify canc:2 threads={threads}: holds={} in {:?}", v.holds(), t1.elapsed());
    }
}
