// Maximal function of an atomic measure and a Vitali covering of its exceptional set.
use hpot::exceptional::{maximal_function, vitali_covering, MaximalQuery};
use hpot::{AtomicMeasure, Point};

fn main() -> hpot::Result<()> {
    let mu = AtomicMeasure::from_pairs(
        3,
        &[(&[3.0, 0.0, 1.0], 1.0), (&[-5.0, 2.0, 4.0], 0.5), (&[0.0, 9.0, 2.0], 0.25)],
    )?;
    let beta = 1.0;
    let x = Point::new(vec![3.0, 0.5, 1.0])?;
    println!("M(x) = {}", maximal_function(&mu, beta, &x)?.to_f64());

    let lambda = 2.0 * MaximalQuery::min_lambda(beta, &mu);
    let q = MaximalQuery::new(beta, lambda)?;
    let cov = vitali_covering(&mu, &q, 1..=3, 0.1)?;
    println!(
        "{} balls, weighted sum {:.6} <= bound {:.6}",
        cov.balls.len(),
        cov.weighted_sum,
        cov.bound
    );
    for b in cov.balls.iter().take(5) {
        println!("  center {:?}, radius {:.4}", b.center.coords(), b.radius);
    }
    Ok(())
}
