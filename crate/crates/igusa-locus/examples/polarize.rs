//! Compute the principal polarization data of the catalog maximal orders:
//! the quaternion mu, its integral Riemann form, the Pfaffian, and the
//! Rosati positivity certificate.

use igusa_locus::arith::int;
use igusa_locus::catalog::OrderCatalog;
use igusa_locus::polarization::{
    is_principal, pfaffian, polarization_degree, riemann_form, rosati_positive,
};
use igusa_locus::quaternion::find_mu;

fn main() -> igusa_locus::Result<()> {
    let catalog = OrderCatalog::builtin();
    for d in catalog.discriminants().collect::<Vec<_>>() {
        let order = catalog.get(d).unwrap();
        let mu = find_mu(order, &int(d), 8 * d)?.expect("catalog orders admit a principal mu");
        println!("D = {d}: mu = {mu}");
        let form = riemann_form(order, &mu)?;
        for row in &form.matrix {
            println!("  {:?}", row.iter().map(|v| v.to_string()).collect::<Vec<_>>());
        }
        println!(
            "  pfaffian = {}, degree = {}, principal = {}, rosati positive = {}",
            pfaffian(&form.matrix),
            polarization_degree(order, &form)?,
            is_principal(order, &mu),
            rosati_positive(order, &mu)?
        );
    }
    Ok(())
}
