//! Search twists: pure quaternions chi that anticommute with the
//! polarization mu, with the squarefree part m of their norm dividing D.

use igusa_locus::arith::int;
use igusa_locus::catalog::OrderCatalog;
use igusa_locus::locus::{twisting_data, DiscD};
use igusa_locus::quaternion::{find_mu, find_twists};

fn main() -> igusa_locus::Result<()> {
    let catalog = OrderCatalog::builtin();
    for d in catalog.discriminants().collect::<Vec<_>>() {
        let order = catalog.get(d).unwrap();
        let mu = find_mu(order, &int(d), 8 * d)?.unwrap();
        let (twisting, divisors) = twisting_data(&DiscD::new(d)?)?;
        println!("D = {d}: twisting = {twisting}, algebra-level divisors {divisors:?}");
        for (chi, m) in find_twists(order, &mu, 4)? {
            let alg = order.algebra();
            // conj(chi) mu chi = |nrd(chi)| mu; m is the squarefree part of |nrd(chi)|
            let n = -chi.nrd(alg);
            let lhs = chi.conj().mul(&mu, alg).mul(&chi, alg);
            assert_eq!(lhs, mu.scale(&n));
            println!("  chi = {chi}, nrd = {}, squarefree part m = {m}", chi.nrd(alg));
        }
    }
    Ok(())
}
