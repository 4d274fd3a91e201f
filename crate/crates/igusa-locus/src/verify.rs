//! Self-verification suites: re-runs the cross-module consistency invariants
//! at two depths (quick and full) and reports per-suite check counts.

use crate::arith::{int, rat_int, Int, Rat};
use crate::catalog::OrderCatalog;
use crate::error::{Error, Result};
use crate::hm;
use crate::locus;
use crate::polarization;
use crate::quadforms::{class_number, class_number_oracle, FormDisc};
use crate::quaternion::{find_mu, find_twists, hilbert_symbol, ramified_set, Place};
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Verification depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Admissible D up to 300, form discriminants down to -2000.
    Quick,
    /// Admissible D up to 3000, form discriminants down to -10000.
    Full,
}

impl Level {
    pub fn parse(s: &str) -> Result<Level> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(Error::domain(format!(
                "unknown verification level {other:?}; use quick or full"
            ))),
        }
    }

    fn d_limit(self) -> i64 {
        match self {
            Level::Quick => 300,
            Level::Full => 3000,
        }
    }

    fn delta_limit(self) -> i64 {
        match self {
            Level::Quick => -2000,
            Level::Full => -10000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: String,
    pub checks: usize,
    pub failure: Option<String>,
}

#[derive(Debug, Clone)]
pub struct VerifySummary {
    pub suites: Vec<SuiteResult>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.failure.is_none())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            match &s.failure {
                None => out.push_str(&format!("PASS {} ({} checks)\n", s.name, s.checks)),
                Some(msg) => {
                    out.push_str(&format!("FAIL {} ({} checks): {msg}\n", s.name, s.checks))
                }
            }
        }
        let verdict = if self.all_passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("verify: {verdict}\n"));
        out
    }
}

/// Run all suites at the given depth; jobs parallelizes the locus sweep.
pub fn run(level: Level, jobs: usize) -> VerifySummary {
    let suites = vec![
        run_suite("class-number-oracle", || class_number_suite(level)),
        run_suite("hilbert-product-formula", hilbert_suite),
        run_suite("locus-invariants", || locus_suite(level, jobs)),
        run_suite("polarization-degree-law", polarization_suite),
        run_suite("twist-witnesses", twist_suite),
        run_suite("hm-families", hm_suite),
    ];
    VerifySummary { suites }
}

fn run_suite(name: &str, f: impl FnOnce() -> Result<usize>) -> SuiteResult {
    match f() {
        Ok(checks) => SuiteResult {
            name: name.to_string(),
            checks,
            failure: None,
        },
        Err(e) => SuiteResult {
            name: name.to_string(),
            checks: 0,
            failure: Some(e.to_string()),
        },
    }
}

/// class_number against the independent reduction oracle on every valid
/// discriminant in range, plus pinned spot values.
fn class_number_suite(level: Level) -> Result<usize> {
    let mut checks = 0;
    for (delta, h) in [(-23i64, 3i64), (-24, 2), (-40, 2), (-60, 2)] {
        let disc = FormDisc::from_i64(delta)?;
        if class_number(&disc)? != int(h) {
            return Err(Error::internal(format!("h({delta}) != {h}")));
        }
        checks += 1;
    }
    for delta in (level.delta_limit()..0).filter(|d| d % 4 == 0 || d.rem_euclid(4) == 1) {
        let disc = FormDisc::from_i64(delta)?;
        let direct = class_number(&disc)?;
        let oracle = class_number_oracle(&disc, 40)?;
        if direct != oracle {
            return Err(Error::internal(format!(
                "class number mismatch at {delta}: {direct} vs {oracle}"
            )));
        }
        checks += 1;
    }
    Ok(checks)
}

/// Product of local Hilbert symbols over all relevant places is +1, and the
/// ramified set has even cardinality, on a deterministic random sample.
fn hilbert_suite() -> Result<usize> {
    let mut rng = StdRng::seed_from_u64(0x51ac_e5);
    let mut checks = 0;
    for _ in 0..1000 {
        let a = loop {
            let v = rng.gen_range(-10_000i64..=10_000);
            if v != 0 {
                break v;
            }
        };
        let b = loop {
            let v = rng.gen_range(-10_000i64..=10_000);
            if v != 0 {
                break v;
            }
        };
        let ar = Rat::from_integer(Int::from(a));
        let br = Rat::from_integer(Int::from(b));
        let ram = ramified_set(&ar, &br)?; // even cardinality enforced inside
        let mut product = 1i32;
        for place in &ram {
            product *= hilbert_symbol(&ar, &br, place)?;
        }
        // symbols at unramified probe places are +1 by definition of the set,
        // so the full product over all places equals the product over ram
        if product != 1 {
            return Err(Error::internal(format!(
                "Hilbert product formula fails for ({a}, {b})"
            )));
        }
        if ram.contains(&Place::Infinity) != (a < 0 && b < 0) {
            return Err(Error::internal(format!(
                "archimedean symbol wrong for ({a}, {b})"
            )));
        }
        checks += 1;
    }
    Ok(checks)
}

/// Full per-discriminant locus analysis; analyze() re-asserts the two-path
/// pi0 agreement, genus divisibility, bounds and the verdict cross-check.
fn locus_suite(level: Level, jobs: usize) -> Result<usize> {
    let reports = locus::tabulate(2, level.d_limit(), jobs)?;
    if reports.is_empty() {
        return Err(Error::internal("locus sweep produced no reports"));
    }
    for r in &reports {
        let two_r = r.primes.len() as u32;
        if r.h_tilde % (1i64 << (two_r - 1)) != 0 {
            return Err(Error::internal(format!("genus divisibility fails at D={}", r.d)));
        }
        if 2 * r.pi0 != r.h_tilde {
            return Err(Error::internal(format!("pi0 parity fails at D={}", r.d)));
        }
    }
    Ok(reports.len())
}

/// Degree law |Pf(E)| = |nrd(mu)| / D on 500 random elements of the pure
/// reduced different per catalog discriminant.
fn polarization_suite() -> Result<usize> {
    let catalog = OrderCatalog::builtin();
    let mut rng = StdRng::seed_from_u64(0xde6_ee);
    let mut checks = 0;
    for d in catalog.discriminants().collect::<Vec<_>>() {
        let order = catalog.get(d).unwrap();
        let d_int = int(d);
        let mu0 = find_mu(order, &d_int, (8 * d).min(64))?
            .ok_or_else(|| Error::internal(format!("no mu found for catalog D={d}")))?;
        let mut samples = 0;
        while samples < 500 {
            // omega mu0 conj(omega) stays in the pure reduced different for
            // omega in O, and sums of such elements stay in it as well
            let alg = order.algebra();
            let random_conjugate = |rng: &mut StdRng| {
                let c: [Int; 4] = std::array::from_fn(|_| Int::from(rng.gen_range(-5i64..=5)));
                let omega = order.from_coords(&c);
                omega.mul(&mu0, alg).mul(&omega.conj(), alg)
            };
            let x = random_conjugate(&mut rng).add(&random_conjugate(&mut rng));
            if x.is_zero() {
                continue;
            }
            if !polarization::in_reduced_different(order, &x) {
                return Err(Error::internal(format!(
                    "sampled element left the reduced different at D={d}"
                )));
            }
            let form = polarization::riemann_form(order, &x)?;
            let pf = polarization::pfaffian(&form.matrix).abs();
            let expected = x.nrd(alg) / Rat::from_integer(d_int.clone());
            if !expected.denom().is_one() || expected.numer().abs() != pf {
                return Err(Error::internal(format!(
                    "degree law fails at D={d} for {x}"
                )));
            }
            samples += 1;
            checks += 1;
        }
        // the canonical mu is principal with positive Rosati form
        if !polarization::is_principal(order, &mu0)
            || !polarization::rosati_positive(order, &mu0)?
        {
            return Err(Error::internal(format!("canonical mu not principal at D={d}")));
        }
        checks += 1;
    }
    Ok(checks)
}

/// The discriminant-6 twist chi = i + j with squarefree norm part 2, and the
/// induced isogeny witness.
fn twist_suite() -> Result<usize> {
    let catalog = OrderCatalog::builtin();
    let order = catalog
        .get(6)
        .ok_or_else(|| Error::internal("catalog lacks D=6"))?;
    let mu = find_mu(order, &int(6), 48)?
        .ok_or_else(|| Error::internal("no mu for D=6"))?;
    let twists = find_twists(order, &mu, 4)?;
    let (chi, m) = twists
        .iter()
        .find(|(_, m)| m == &int(2))
        .ok_or_else(|| Error::internal("no twist with m=2 at D=6"))?;
    let alg = order.algebra();
    let lhs = chi.conj().mul(&mu, alg).mul(chi, alg);
    if lhs != mu.scale(&Rat::from_integer(m.clone())) {
        return Err(Error::internal("twist conjugation law fails at D=6"));
    }
    let witness = polarization::al_isogeny_witness(order, &mu, &mu, 2)?
        .ok_or_else(|| Error::internal("no self-witness at D=6"))?;
    let w_lhs = witness.omega.conj().mul(&mu, alg).mul(&witness.omega, alg);
    if w_lhs != mu.scale(&Rat::from_integer(witness.m.clone())) {
        return Err(Error::internal("witness certificate fails at D=6"));
    }
    // chi itself certifies (chi, 2)
    let chi_ratio = chi.conj().mul(&mu, alg).mul(chi, alg);
    if chi_ratio != mu.scale(&rat_int(2)) {
        return Err(Error::internal("chi does not certify m=2 at D=6"));
    }
    Ok(3)
}

/// Worked family points and degeneracy flags.
fn hm_suite() -> Result<usize> {
    use crate::arith::QuadExtVal;
    let q = |s: &str| QuadExtVal::parse(s);
    let c10 = hm::curve(hm::Family::Ten, &q("2")?, &q("0")?)?;
    if c10.degenerate.is_some() {
        return Err(Error::internal("family 10 at (2,0) flagged degenerate"));
    }
    if c10.f_coeffs[3] != q("20")? {
        return Err(Error::internal("family 10 at (2,0) has wrong coefficients"));
    }
    for (t, s) in [("0", "0"), ("-1/2", "0")] {
        if hm::curve(hm::Family::Ten, &q(t)?, &q(s)?)?.degenerate.is_none() {
            return Err(Error::internal(format!(
                "family 10 at ({t},{s}) should be degenerate"
            )));
        }
    }
    let c6 = hm::curve(hm::Family::Six, &q("0")?, &q("sqrt(2)")?)?;
    if c6.degenerate.is_some() || c6.f_coeffs[1] != q("2*sqrt(2)")? || c6.f_coeffs[2] != q("11/3")?
    {
        return Err(Error::internal("family 6 at (0, sqrt(2)) wrong"));
    }
    let pts = hm::rational_points(hm::Family::Ten, 3)?;
    if !pts
        .iter()
        .any(|(t, s, deg)| t == &rat_int(2) && s.is_zero() && !deg)
    {
        return Err(Error::internal("rational point (2,0) missing"));
    }
    Ok(5)
}
