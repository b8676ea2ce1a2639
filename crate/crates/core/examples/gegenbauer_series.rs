// Gegenbauer polynomials by recurrence, checked against their generating function.
use hpot::gegenbauer::{
    gegenbauer_at_one, gegenbauer_eval, generating_function, generating_partial_sum, GegenbauerParams,
};

fn main() -> hpot::Result<()> {
    let lambda = 1.5;
    let t = 0.3;
    for k in [0, 1, 2, 5, 10] {
        let p = GegenbauerParams::new(lambda, k)?;
        println!(
            "C_{k}^{lambda}({t}) = {:+.12}   C_{k}^{lambda}(1) = {}",
            gegenbauer_eval(p, t)?,
            gegenbauer_at_one(p)
        );
    }
    for r in [0.2, 0.6, 0.9] {
        let partial = generating_partial_sum(lambda, t, r, 200)?;
        let exact = generating_function(lambda, t, r);
        println!("r = {r}: partial sum {partial:.15}, closed form {exact:.15}");
    }
    Ok(())
}
