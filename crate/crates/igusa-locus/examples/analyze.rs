//! Analyze the quaternionic locus at a few discriminants and print the
//! resulting reports.

use igusa_locus::locus::analyze;

fn main() -> igusa_locus::Result<()> {
    for d in [6, 10, 15, 22, 33, 39] {
        let r = analyze(d)?;
        println!(
            "D = {:>3}: h_tilde = {:>2}, pi0 = {:>2}, twisting = {:5} {:?}, rho = {:?}, irreducible = {}",
            r.d, r.h_tilde, r.pi0, r.twisting, r.twist_divisors, r.rho_feasible, r.irreducible
        );
    }
    // inadmissible discriminants are rejected with an explanation
    match analyze(12) {
        Err(e) => println!("D = 12 rejected: {e}"),
        Ok(_) => unreachable!("12 is not squarefree"),
    }
    Ok(())
}
