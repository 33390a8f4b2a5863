//! Exhaustive plane sweep of `X1^2 + X2^2 + X3` over `F_3` and the plane-count inequalities.

use weilbench::bertini::{exhaustive_sweep, plane_accounting_with, sampled_sweep};
use weilbench::gf::FieldCtx;
use weilbench::mpoly::MPoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f3 = FieldCtx::prime(3)?;
    let f = MPoly::parse(&f3, 3, "X1^2 + X2^2 + X3")?;
    let sweep = exhaustive_sweep(&f)?;
    let h = &sweep.histogram;
    println!(
        "tuples {}  degenerate {}  classified {}",
        sweep.tuples, h.degenerate, h.total
    );
    println!(
        "classes {:?}  vanishing {}  nu {:?}",
        h.counts, h.vanishing, h.nu
    );
    if let Some(c) = &sweep.not_abs_irreducible_check {
        println!(
            "not absolutely irreducible: {} <= {}",
            c.observed, c.ceiling
        );
    }
    for s in &sweep.small_factors {
        println!(
            "closure factor of degree <= {}: {} <= {}",
            s.d, s.count, s.check.ceiling
        );
    }
    let acc = plane_accounting_with(h, Some(sweep.not_abs_irreducible_planes))?;
    for c in &acc.checks {
        println!("{:<24} {:>10} <= {}", c.name, c.observed, c.ceiling);
    }
    let s = sampled_sweep(&f, 500, 1)?;
    println!(
        "sampled B/A {:.4} in [{:.4}, {:.4}], C/A {:.4}",
        s.b_over_a.estimate, s.b_over_a.ci_low, s.b_over_a.ci_high, s.c_over_a.estimate
    );
    Ok(())
}
