// A small discretized capacity problem and its linear program.
use hpot::capacity::{CapacityKind, CapacityProblem, FNode};
use hpot::{KernelConfig, Point};

fn main() -> hpot::Result<()> {
    let e = vec![Point::new(vec![0.0, 0.0, 1.0])?, Point::new(vec![1.0, 0.0, 0.5])?];
    let f = (0..8)
        .map(|i| {
            let a = i as f64 * std::f64::consts::FRAC_PI_4;
            FNode { point: vec![1.5 * a.cos(), 1.5 * a.sin()], weight: 0.5 }
        })
        .collect();
    let problem = CapacityProblem::new(CapacityKind::Boundary, KernelConfig::new(3, 0)?, e, f)?;
    let sol = problem.solve()?;
    println!("capacity {:.12}, dual bound {:.12}", sol.value, sol.dual_value());
    println!("g = {:?}", sol.g);
    println!("{}", problem.to_json());
    Ok(())
}
