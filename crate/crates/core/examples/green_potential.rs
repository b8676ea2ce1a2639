// Green potential of an atomic measure and its superposition with a Poisson integral.
use hpot::{AtomicMeasure, BoundaryData, KernelConfig, Point, PotentialField};

fn main() -> hpot::Result<()> {
    let cfg = KernelConfig::new(3, 1)?;
    let mu = AtomicMeasure::from_pairs(3, &[(&[0.0, 0.0, 1.0], 1.0), (&[3.0, 1.0, 2.0], 0.5)])?;
    let f = BoundaryData::from_pairs(3, &[(&[0.0, 0.0], 2.0), (&[-4.0, 1.0], -1.0)])?;

    let h = PotentialField::green(cfg, mu.clone())?;
    let u = PotentialField::superposition(cfg, f, mu)?;
    let points: Vec<Point> = [[0.0, 0.0, 0.5], [1.0, 1.0, 1.0], [10.0, 0.0, 3.0], [0.0, 0.0, 1e-7]]
        .iter()
        .map(|c| Point::new(c.to_vec()))
        .collect::<hpot::Result<_>>()?;
    for (p, e) in points.iter().zip(u.eval_batch(&points)?) {
        println!(
            "x = {:?}: h = {:+.10e}, u = {:+.10e}{}",
            p.coords(),
            h.eval(p)?,
            e.value,
            if e.near_boundary { " (near boundary)" } else { "" }
        );
    }
    Ok(())
}
