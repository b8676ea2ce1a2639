// Parsing input documents and the errors reported for malformed ones.
use hpot::capacity::SetSpec;
use hpot::{AtomicMeasure, BoundaryData, Error};

fn main() -> hpot::Result<()> {
    let mu = AtomicMeasure::from_json(r#"{"dimension": 3, "atoms": [{"point": [1, 2, 0.5], "mass": 2}]}"#)?;
    println!("measure mass {}", mu.total_mass());

    let f = BoundaryData::from_json(
        r#"{"dimension": 4, "kind": "family", "family": {"id": "gaussian_bump", "params": {"c": 1, "sigma": 0.5}}}"#,
    )?;
    println!("{}", f.to_json());

    let set = SetSpec::from_json(r#"{"type": "cone", "axis": [0, 0, 1], "half_angle": 0.4}"#)?;
    println!("cone contains (0, 0, 5): {}", set.contains(&[0.0, 0.0, 5.0]));

    let bad = r#"{"dimension": 3, "atoms": [{"point": [1, 2], "mass": 1}]}"#;
    match AtomicMeasure::from_json(bad) {
        Err(Error::Schema { path, message }) => println!("schema error at {path}: {message}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
