// Classical and modified kernels at a few points of the upper half-space.
use hpot::kernels::{
    fundamental, green, green_bound_report, kelvin_ratio_bound, modified_green, modified_poisson,
    poisson,
};
use hpot::{BoundaryPoint, KernelConfig, Point};

fn main() -> hpot::Result<()> {
    let x = Point::new(vec![0.5, -0.25, 1.0])?;
    let y = Point::new(vec![2.0, 1.0, 0.5])?;
    let yp = BoundaryPoint::new(vec![3.0, 0.0])?;

    let cfg = KernelConfig::new(3, 0)?;
    println!("E(x)        = {:.15e}", fundamental(&cfg, &x)?);
    println!("G(x, y)     = {:.15e}", green(&cfg, &x, &y)?);
    println!("P(x, y')    = {:.15e}", poisson(&cfg, &x, &yp)?);

    for m in 1..=3 {
        let cfg = KernelConfig::new(3, m)?;
        println!(
            "m = {m}: G_m = {:+.15e}  P_m = {:+.15e}",
            modified_green(&cfg, &x, &y)?,
            modified_poisson(&cfg, &x, &yp)?
        );
    }

    let b = green_bound_report(&cfg, &x, &y)?;
    println!(
        "|G| = {:.6e} <= {:.6e}, {:.6e}; kelvin ratio {:.6} <= {:.6}",
        b.green_abs,
        b.near_bound,
        b.far_bound,
        b.kelvin_ratio,
        kelvin_ratio_bound(&cfg)
    );
    Ok(())
}
