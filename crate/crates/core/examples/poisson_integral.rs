// Modified Poisson integrals of closed-form boundary data.
use hpot::measures::{check_boundary_condition, Family};
use hpot::potentials::boundary_limit_probe;
use hpot::{BoundaryData, BoundaryPoint, KernelConfig, Point, PotentialField};

fn main() -> hpot::Result<()> {
    // Indicator of the unit disk: on the axis v(0, 0, t) = 1 - t / sqrt(1 + t^2).
    let cfg = KernelConfig::new(3, 0)?;
    let disk = BoundaryData::family(3, Family::IndicatorBall { radius: 1.0 })?;
    let field = PotentialField::dirichlet(cfg, disk)?;
    for t in [0.1, 1.0, 10.0] {
        let v = field.eval(&Point::new(vec![0.0, 0.0, t])?)?;
        println!("t = {t:5}: v = {v:.12}, exact {:.12}", 1.0 - t / (1.0 + t * t).sqrt());
    }

    // Linear growth needs m >= 1 before the integral converges.
    let growth = BoundaryData::family(3, Family::PowerGrowth { s: 1.0 })?;
    for m in 0..=1 {
        let report = check_boundary_condition(&growth, &KernelConfig::new(3, m)?)?;
        println!("m = {m}: satisfied = {}, value = {:?}", report.satisfied, report.value);
    }
    let field = PotentialField::dirichlet(KernelConfig::new(3, 1)?, growth)?;
    let probe = boundary_limit_probe(&field, &BoundaryPoint::new(vec![0.5, 0.0])?, &[1.0, 0.1, 0.01, 0.001])?;
    for (t, v) in probe {
        println!("v(0.5, 0, {t}) = {v:.10}   f = {:.10}", (1.25f64).sqrt());
    }
    Ok(())
}
