//! Point counts of a surface over `F_7`, the gcd-accelerated path, and a curve over `F_(5^2)`.

use weilbench::counting::{
    count_hypersurface_fast, count_over_extension, count_points, PolySystem,
};
use weilbench::gf::FieldCtx;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f7 = FieldCtx::prime(7)?;
    let surface = PolySystem::parse(&f7, 3, &["X1^3 + X2^3 + X3^3 - 1"])?;
    let full = count_points(&surface)?;
    let fast = count_hypersurface_fast(&surface.polys()[0])?;
    println!(
        "Fermat cubic over F_7: {} points ({:?}), fast path {}",
        full.count, full.method, fast.count
    );

    let f5 = FieldCtx::prime(5)?;
    let curve = PolySystem::parse(&f5, 3, &["X2 - X1^2", "X3 - X1^3"])?;
    for t in 1..=2 {
        println!(
            "twisted cubic over F_(5^{t}): {} points",
            count_over_extension(&curve, t)?.count
        );
    }
    Ok(())
}
