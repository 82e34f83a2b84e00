//! Sample from a discrete lognormal distribution and compare the empirical
//! histogram against the exact probability mass function.
//!
//!     cargo run --release --example sample_distribution

use citesim::rng::RngStream;
use citesim::DiscreteLogNormal;

fn main() -> citesim::Result<()> {
    let dist = DiscreteLogNormal::new(0.5, 1.0)?;
    let mut rng = RngStream::new(42, 0);

    let n = 200_000;
    let mut counts = vec![0u64; 16];
    let mut tail = 0u64;
    let mut sum = 0.0;
    for _ in 0..n {
        let k = dist.sample(&mut rng);
        sum += k as f64;
        match counts.get_mut(k as usize) {
            Some(c) => *c += 1,
            None => tail += 1,
        }
    }

    println!("discrete lognormal, log mean 0.5, log standard deviation 1.0");
    println!("{n} draws, sample mean {:.4}\n", sum / n as f64);
    println!("{:>4} {:>10} {:>10}", "k", "observed", "expected");
    for (k, &c) in counts.iter().enumerate() {
        println!(
            "{k:>4} {:>10.5} {:>10.5}",
            c as f64 / n as f64,
            dist.pmf(k as u64)
        );
    }
    let tail_expected: f64 = 1.0 - (0..16).map(|k| dist.pmf(k)).sum::<f64>();
    println!("{:>4} {:>10.5} {:>10.5}", "16+", tail as f64 / n as f64, tail_expected);
    println!("\nexact mean by mass summation: {:.4}", (1..100_000).map(|k| k as f64 * dist.pmf(k)).sum::<f64>());
    Ok(())
}
