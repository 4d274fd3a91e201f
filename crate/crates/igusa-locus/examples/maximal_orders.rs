//! Saturate the standard order of a quaternion algebra up to a maximal
//! order and print the basis in catalog JSON shape.

use igusa_locus::arith::rat_int;
use igusa_locus::quaternion::saturate_to_maximal;

fn main() -> igusa_locus::Result<()> {
    for (a, b) in [(-1i64, 3i64), (-10, 2), (-3, 11)] {
        let order = saturate_to_maximal(&rat_int(a), &rat_int(b))?;
        println!("algebra ({a}, {b}): disc = {}", order.disc());
        for e in order.basis() {
            let coords: Vec<String> = e
                .c
                .iter()
                .map(|r| format!("[{}, {}]", r.numer(), r.denom()))
                .collect();
            println!("  [{}]   ({})", coords.join(", "), e);
        }
    }
    Ok(())
}
