//! Tabulate locus reports for every admissible discriminant up to 100 and
//! print them as CSV.

use igusa_locus::locus::{tabulate, LocusReport};

fn main() -> igusa_locus::Result<()> {
    let reports = tabulate(2, 100, 2)?;
    println!("{}", LocusReport::CSV_HEADER);
    for r in &reports {
        println!("{}", r.csv_row());
    }
    eprintln!("{} admissible discriminants", reports.len());
    Ok(())
}
