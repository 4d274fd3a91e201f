//! Enumerate reduced binary quadratic forms and class numbers, and verify
//! them against the independent reduction-based oracle.

use igusa_locus::arith::int;
use igusa_locus::quadforms::{
    class_number, class_number_oracle, h_tilde, reduced_forms, FormDisc,
};

fn main() -> igusa_locus::Result<()> {
    for delta in [-23i64, -24, -40, -60, -156] {
        let disc = FormDisc::from_i64(delta)?;
        let forms = reduced_forms(&disc)?;
        println!("delta = {delta}: h = {}", forms.len());
        for f in &forms {
            println!("  {}x^2 + {}xy + {}y^2", f.a, f.b, f.c);
        }
        assert_eq!(class_number(&disc)?, class_number_oracle(&disc, 40)?);
    }
    for d in [6i64, 10, 15, 39] {
        println!("h_tilde(-{d}) = {}", h_tilde(&int(d))?);
    }
    Ok(())
}
