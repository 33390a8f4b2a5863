//! Factor search, closure factors and absolute irreducibility of plane curves.

use weilbench::factor::{
    closure_factors, count_abs_irr_fq_factors, factor_search, fq_factors,
    is_absolutely_irreducible, SolutionField,
};
use weilbench::gf::FieldCtx;
use weilbench::mpoly::MPoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f5 = FieldCtx::prime(5)?;
    let f3 = FieldCtx::prime(3)?;

    let lines = MPoly::parse(&f5, 2, "X^2 + X - Y^2 - Y")?;
    let rep = factor_search(&lines, 1, SolutionField::BaseK)?;
    println!(
        "{lines}: {:?}, factors {:?}",
        rep.status,
        rep.factors
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
    );

    for (k, text) in [
        (&f3, "X^2 + Y^2"),
        (&f5, "X^2 + Y^2"),
        (&f5, "X^2 - Y^3"),
        (&f5, "X*Y"),
    ] {
        let f = MPoly::parse(k, 2, text)?;
        let over = fq_factors(&f)?
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>();
        let closure = closure_factors(&f)?
            .iter()
            .map(|g| format!("{g} over {}", g.ctx()))
            .collect::<Vec<_>>();
        println!(
            "{text} over F_{}: abs irreducible {}, nu {}, F_q factors {over:?}, closure {closure:?}",
            k.order(),
            is_absolutely_irreducible(&f)?,
            count_abs_irr_fq_factors(&f)?
        );
    }
    Ok(())
}
