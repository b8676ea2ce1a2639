// Dyadic capacity series for a cone, a bounded set and the whole half-space.
use hpot::capacity::{thinness_series, CapacityKind, SetSpec, ThinnessOptions};

fn main() -> hpot::Result<()> {
    let opts = ThinnessOptions::default();
    let sets = [
        ("cone", SetSpec::Cone { axis: vec![0.0, 0.0, 1.0], half_angle: 0.5 }),
        ("ball", SetSpec::Ball { center: vec![0.0, 0.0, 6.0], radius: 3.0 }),
        ("all", SetSpec::All),
    ];
    for (name, set) in &sets {
        for kind in [CapacityKind::Boundary, CapacityKind::Halfspace] {
            let r = thinness_series(set, kind, 3, 5, &opts)?;
            let products: Vec<String> = r.terms.iter().map(|t| format!("{:.4}", t.product)).collect();
            println!("{name:>4} {kind:?}: partial sum {:.4} [{}]", r.partial_sum, products.join(", "));
        }
    }
    Ok(())
}
