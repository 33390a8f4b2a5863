//! Directed-rounding evaluation of the bound formulas for surfaces in `A^3`.

use weilbench::bounds::{self, Evaluator};

fn main() {
    let eval = Evaluator::default();
    println!("{:>5} {:>3}  {:<24} value", "q", "d", "formula");
    for q in [7u64, 49, 1009] {
        for d in [2u32, 3] {
            let (reg, applies) = eval.cm_hypersurface_regular(q, 3, d);
            let rows = [
                eval.weil_curve(q, d),
                eval.cm_hypersurface(q, 3, d),
                eval.ghorpade_lachaud_hyper(q, 3, d),
                eval.huang_wong(q, 3, d),
            ];
            for b in rows.iter().chain(applies.then_some(&reg)) {
                println!(
                    "{q:>5} {d:>3}  {:<24} {}{}",
                    b.formula,
                    b.format(),
                    if b.trivial { " (trivial)" } else { "" }
                );
            }
        }
    }
    let t = bounds::existence_thresholds(3, Some(1));
    println!(
        "points guaranteed on a cubic curve once q > {}",
        t.hypersurface_zero.format()
    );
    for d in [3u32, 5, 10] {
        println!(
            "d = {d}: coefficient comparisons {:?}",
            bounds::improvement_holds(d, 3)
        );
    }
    let s = bounds::plane_statistics(5, 3).expect("valid");
    println!(
        "planes in A^3 over F_5: M_T = {}, A = {}, E = {}",
        s.m_t, s.a, s.e
    );
}
