//! The map-expression language: parse, print, evaluate, invert.

use kerek::maps::parse_map;
use kerek::SurfacePoint;

fn main() -> kerek::Result<()> {
    let f = parse_map("(conj (stereo (radial 1.4)) (rotS (0 0 1) 0.5))")?;
    println!("parsed:   {f}");
    println!("space:    {}", f.space()?);
    println!("degree sign: {}", f.orientation());
    let p = SurfacePoint::sphere(0.6, 0.0, 0.8);
    let q = f.evaluate(&p)?;
    let back = f.inverse().evaluate(&q)?;
    println!("f({p:?}) = {q:?}\nf⁻¹(f(p)) = {back:?}");
    let g = f.power(3);
    println!("f³ = {g}");
    match parse_map("(rotS (0 0 1))") {
        Ok(_) => unreachable!(),
        Err(e) => println!("bad input -> {e}"),
    }
    Ok(())
}
