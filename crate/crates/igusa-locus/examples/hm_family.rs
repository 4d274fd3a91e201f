//! Emit members of the two genus-2 families and search small rational
//! points on their base curves.

use igusa_locus::arith::QuadExtVal;
use igusa_locus::hm::{curve, rational_points, Family};

fn main() -> igusa_locus::Result<()> {
    let c = curve(Family::Ten, &QuadExtVal::parse("2")?, &QuadExtVal::parse("0")?)?;
    println!("{}", serde_json::to_string_pretty(&c.to_json()).unwrap());

    let c = curve(
        Family::Six,
        &QuadExtVal::parse("0")?,
        &QuadExtVal::parse("sqrt(2)")?,
    )?;
    println!("{}", serde_json::to_string_pretty(&c.to_json()).unwrap());

    println!("family 10 base-curve points of height <= 5:");
    for (t, s, degenerate) in rational_points(Family::Ten, 5)? {
        println!("  (t, s) = ({t}, {s}), degenerate = {degenerate}");
    }
    Ok(())
}
