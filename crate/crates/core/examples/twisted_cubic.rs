//! Generic projection of the twisted cubic over `F_37` to a plane curve, the birationality
//! check and the inverse section.

use weilbench::counting::PolySystem;
use weilbench::gf::FieldCtx;
use weilbench::project::{birational_check, draw_projection, inverse_section, InverseSection};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = FieldCtx::prime(37)?;
    let sys = PolySystem::parse(&k, 3, &["X2 - X1^2", "X3 - X1^3"])?;
    let draw = draw_projection(&sys, 1, 3, 1)?;
    let proj = &draw.projection;
    println!(
        "accepted after {} draws; image h = {}",
        draw.attempts, proj.h
    );
    let rep = birational_check(&sys, proj)?;
    println!(
        "off the discriminant: #V = {}, #W = {}; on it: {} and {} (ceiling {})",
        rep.v_off, rep.w_off, rep.v_on, rep.w_on, rep.ceiling
    );
    let sec = InverseSection::fit(&sys, proj)?;
    let x = vec![5, 25, k.pow(5, 3)];
    let y = proj.apply(&x);
    println!(
        "pi({x:?}) = {y:?}, inverse section gives {:?}",
        inverse_section(&sec, &y)?
    );
    Ok(())
}
