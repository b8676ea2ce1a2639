// Growth ratios of a Poisson integral along random rays, with a covering marking G.
use hpot::cli::{geometric_radii, random_rays};
use hpot::exceptional::{growth_scan, vitali_covering, GrowthParams, MaximalQuery};
use hpot::{AtomicMeasure, BoundaryData, KernelConfig, PotentialField};

fn main() -> hpot::Result<()> {
    let n = 3;
    let cfg = KernelConfig::new(n, 1)?;
    let f = BoundaryData::from_pairs(n, &[(&[0.5, 0.0], 1.0), (&[2.0, -1.0], -0.5)])?;
    let mu = AtomicMeasure::from_pairs(n, &[(&[4.0, 0.0, 1.0], 1.0)])?;
    let u = PotentialField::superposition(cfg, f, mu.clone())?;

    let q = MaximalQuery::new(1.0, 2.0 * MaximalQuery::min_lambda(1.0, &mu))?;
    let cov = vitali_covering(&mu, &q, 1..=4, 0.25)?;

    let rays = random_rays(n, 4, 7);
    let radii = geometric_radii(8.0, 8000.0, 7)?;
    let g = GrowthParams::subharmonic(1.0, 1)?;
    let rows = growth_scan(|x| u.eval(x), &rays, &radii, &g, Some(&cov))?;
    for r in rows {
        println!("ray {} |x| = {:9.2} ratio {:.6e}{}", r.ray_index, r.radius, r.ratio, if r.in_g { " in G" } else { "" });
    }
    Ok(())
}
