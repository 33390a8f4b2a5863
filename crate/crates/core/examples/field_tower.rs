//! Arithmetic in `F_9` and in the tower `F_9 -> F_81`, with Frobenius and subfield coordinates.

use weilbench::gf::FieldCtx;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f9 = FieldCtx::from_spec("3^2")?;
    let f81 = f9.extension(2, 1)?;
    let g = f9.generator();
    println!("F_9 modulus {:?}, generator {}", f9.modulus(), f9.format(g));
    for e in [1u64, 2, 4, 8] {
        println!("g^{e} = {}", f9.format(f9.pow(g, e)));
    }
    let a = f81.generator();
    let b = f81.frobenius(a, 2);
    println!(
        "F_81 over F_9: a = {}, a^9 = {}",
        f81.format(a),
        f81.format(b)
    );
    println!("coordinates of a^9 over F_9: {:?}", f81.coords_over(b, &f9));
    let x = f9.elem(g).embed(&f81)?;
    println!("g embedded keeps its code: {}", x.code() == g);
    println!(
        "a * a^9 = {} lies in F_9: {}",
        f81.format(f81.mul(a, b)),
        f81.lies_in(f81.mul(a, b), &f9)
    );
    Ok(())
}
