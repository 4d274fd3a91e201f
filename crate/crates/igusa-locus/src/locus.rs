//! Per-discriminant analysis of the quaternionic locus: the Atkin-Lehner
//! group, the twisting classification, the number of principal polarization
//! classes, the feasible component counts with the irreducibility verdict,
//! and batch tabulation.

use crate::arith::{factor, Int, Rat};
use crate::error::{Error, Result};
use crate::quadforms::{class_number_oracle, cm_orders_above, h_tilde};
use crate::quaternion::{ramified_set, Place};
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// An admissible discriminant: squarefree with an even number (at least two)
/// of prime factors, so a totally indefinite division quaternion algebra of
/// that reduced discriminant exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscD {
    d: i64,
    primes: Vec<i64>,
}

impl DiscD {
    pub fn new(d: i64) -> Result<Self> {
        if d <= 1 {
            return Err(Error::domain(format!(
                "D = {d} rejected: D must be an integer greater than 1"
            )));
        }
        let factorization = factor(&Int::from(d))?;
        if factorization.iter().any(|(_, e)| *e > 1) {
            return Err(Error::domain(format!(
                "D = {d} rejected: not squarefree, so it is not the reduced \
                 discriminant of a quaternion algebra over Q"
            )));
        }
        if factorization.len() % 2 != 0 {
            return Err(Error::domain(format!(
                "D = {d} rejected: {} prime factor(s); a totally indefinite \
                 division algebra needs an even number of ramified finite primes",
                factorization.len()
            )));
        }
        let primes: Vec<i64> = factorization
            .iter()
            .map(|(p, _)| {
                p.to_i64()
                    .ok_or_else(|| Error::domain("prime factor out of range"))
            })
            .collect::<Result<_>>()?;
        Ok(DiscD { d, primes })
    }

    pub fn is_admissible(d: i64) -> bool {
        Self::new(d).is_ok()
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn primes(&self) -> &[i64] {
        &self.primes
    }

    /// 2r, the number of ramified finite primes.
    pub fn two_r(&self) -> u32 {
        self.primes.len() as u32
    }
}

/// The Atkin-Lehner group of a maximal order: positive divisors of D under
/// m * m' / gcd(m, m')^2, an elementary abelian 2-group of order 2^{2r}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ALGroup {
    d: i64,
    elements: Vec<i64>,
}

impl ALGroup {
    pub fn new(disc: &DiscD) -> Self {
        let mut elements = vec![1i64];
        for &p in disc.primes() {
            let mut next = elements.clone();
            for e in &elements {
                next.push(e * p);
            }
            elements = next;
        }
        elements.sort_unstable();
        ALGroup {
            d: disc.d(),
            elements,
        }
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn op(m: i64, m2: i64) -> i64 {
        let g = m.gcd(&m2);
        m * m2 / (g * g)
    }

    /// Order of the subgroup generated by the given divisors.
    pub fn subgroup_order(&self, generators: &[i64]) -> usize {
        let mut sub: BTreeSet<i64> = BTreeSet::from([1]);
        for &g in generators {
            let new: Vec<i64> = sub.iter().map(|&x| Self::op(x, g)).collect();
            sub.extend(new);
        }
        sub.len()
    }
}

/// Kind of an irreducible component, named by the shape of its stabilizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    Twisting,
    NonTwisting,
}

/// The stable subgroup W0 attached to a component: always contains omega_D,
/// and in the twisting case at least one twist divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableSubgroup {
    pub generators: Vec<i64>,
    pub kind: ComponentKind,
    pub order: usize,
}

impl StableSubgroup {
    pub fn new(disc: &DiscD, group: &ALGroup, extra: &[i64], kind: ComponentKind) -> Result<Self> {
        let mut generators = vec![disc.d()];
        for &m in extra {
            if disc.d() % m != 0 || m <= 1 {
                return Err(Error::domain(format!(
                    "generator {m} is not a nontrivial divisor of D = {}",
                    disc.d()
                )));
            }
            if !generators.contains(&m) {
                generators.push(m);
            }
        }
        if kind == ComponentKind::NonTwisting && generators.len() > 1 {
            return Err(Error::domain(
                "a non-twisting stable subgroup is exactly <omega_D>",
            ));
        }
        if kind == ComponentKind::Twisting && extra.is_empty() {
            return Err(Error::domain(
                "a twisting stable subgroup needs at least one twist divisor",
            ));
        }
        let order = group.subgroup_order(&generators);
        generators.sort_unstable();
        Ok(StableSubgroup {
            generators,
            kind,
            order,
        })
    }
}

/// All m | D, m > 1, with (-D, m / Q) ramified exactly at the primes of D,
/// i.e. isomorphic to the algebra of discriminant D. The first component is
/// true when the list is nonempty (the algebra is twisting).
pub fn twisting_data(disc: &DiscD) -> Result<(bool, Vec<i64>)> {
    let target: BTreeSet<Place> = disc
        .primes()
        .iter()
        .map(|&p| Place::prime(p))
        .collect();
    let minus_d = Rat::from_integer(Int::from(-disc.d()));
    let mut divisors_of_d = vec![1i64];
    for &p in disc.primes() {
        let more: Vec<i64> = divisors_of_d.iter().map(|&m| m * p).collect();
        divisors_of_d.extend(more);
    }
    divisors_of_d.sort_unstable();
    let mut out = Vec::new();
    for m in divisors_of_d {
        if m <= 1 {
            continue;
        }
        let mr = Rat::from_integer(Int::from(m));
        if ramified_set(&minus_d, &mr)? == target {
            out.push(m);
        }
    }
    Ok((!out.is_empty(), out))
}

/// h-tilde of -D, with the genus-theory divisibility checks enforced as hard
/// errors: 2^{2r-1} | h-tilde always, and 2^{2r} | h-tilde when non-twisting.
pub fn h_tilde_checked(disc: &DiscD, twisting: bool) -> Result<i64> {
    let h = h_tilde(&Int::from(disc.d()))?
        .to_i64()
        .ok_or_else(|| Error::domain("class number out of range"))?;
    let half = 1i64 << (disc.two_r() - 1);
    if h % half != 0 {
        return Err(Error::internal(format!(
            "genus-theory divisibility violated: 2^(2r-1) = {half} does not divide \
             h-tilde = {h} at D = {}",
            disc.d()
        )));
    }
    if !twisting && h % (2 * half) != 0 {
        return Err(Error::internal(format!(
            "genus-theory divisibility violated: non-twisting D = {} but 2^(2r) = {} \
             does not divide h-tilde = {h}",
            disc.d(),
            2 * half
        )));
    }
    Ok(h)
}

/// Number of principal polarization classes: h-tilde / 2, cross-checked by an
/// independent reduction-based class number oracle over the CM orders.
pub fn pi0(disc: &DiscD) -> Result<i64> {
    let h = h_tilde(&Int::from(disc.d()))?
        .to_i64()
        .ok_or_else(|| Error::domain("class number out of range"))?;
    let mut h_oracle = 0i64;
    for delta in cm_orders_above(&Int::from(disc.d()))? {
        h_oracle += class_number_oracle(&delta, 40)?
            .to_i64()
            .ok_or_else(|| Error::domain("class number out of range"))?;
    }
    if h != h_oracle {
        return Err(Error::internal(format!(
            "class number paths disagree at D = {}: {h} vs {h_oracle}",
            disc.d()
        )));
    }
    if h % 2 != 0 {
        return Err(Error::internal(format!(
            "h-tilde = {h} is odd at D = {}; the class count cannot be halved",
            disc.d()
        )));
    }
    Ok(h / 2)
}

/// One component type inside a split: its kind, the order of its stable
/// subgroup, the orbit size |W| / |W0| it contributes to pi0, and how many
/// components of this type the split uses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplitComponent {
    pub kind: ComponentKind,
    pub subgroup_order: i64,
    pub orbit: i64,
    pub count: i64,
}

/// Outcome of the component-count computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoData {
    pub rho_exact: Option<i64>,
    pub rho_feasible: BTreeSet<i64>,
    /// Component counts lie in (low_exclusive, high_inclusive].
    pub rho_bounds: (Rat, Rat),
    pub splits: Vec<Vec<SplitComponent>>,
}

/// Component count of the locus. Non-twisting: exactly h-tilde / 2^{2r}.
/// Twisting: every multiset of stable-subgroup choices whose orbit sizes sum
/// to pi0, with at least one twisting component; the feasible set of total
/// counts is returned, exact only when it is a singleton.
pub fn rho(disc: &DiscD) -> Result<RhoData> {
    let (twisting, twist_divisors) = twisting_data(disc)?;
    let h = h_tilde_checked(disc, twisting)?;
    let p0 = pi0(disc)?;
    let two_r = disc.two_r();
    let full = 1i64 << two_r; // |W| = 2^{2r}
    let low = Rat::new(Int::from(h), Int::from(full));
    let high = Rat::new(Int::from(h), Int::from(full / 2));
    if !twisting {
        if h % full != 0 {
            return Err(Error::internal(format!(
                "non-twisting D = {} but 2^(2r) does not divide h-tilde = {h}",
                disc.d()
            )));
        }
        let exact = h / full;
        // equidistribution: pi0 = 2^{2r-1} * rho exactly
        if p0 != (full / 2) * exact {
            return Err(Error::internal(format!(
                "orbit equation violated at D = {}: pi0 = {p0}, rho = {exact}",
                disc.d()
            )));
        }
        let split = vec![SplitComponent {
            kind: ComponentKind::NonTwisting,
            subgroup_order: 2,
            orbit: full / 2,
            count: exact,
        }];
        return Ok(RhoData {
            rho_exact: Some(exact),
            rho_feasible: BTreeSet::from([exact]),
            rho_bounds: (low, high),
            splits: vec![split],
        });
    }
    // Twisting case: distinct component types are (kind, subgroup order).
    let group = ALGroup::new(disc);
    let mut types: BTreeSet<(ComponentKind, i64)> = BTreeSet::new();
    types.insert((ComponentKind::NonTwisting, 2));
    for subset in nonempty_subsets(&twist_divisors) {
        let sub = StableSubgroup::new(disc, &group, &subset, ComponentKind::Twisting)?;
        types.insert((ComponentKind::Twisting, sub.order as i64));
    }
    let types: Vec<(ComponentKind, i64)> = types.into_iter().collect();
    let orbits: Vec<i64> = types.iter().map(|&(_, ord)| full / ord).collect();
    let mut splits = Vec::new();
    let mut counts = vec![0i64; types.len()];
    enumerate_splits(p0, 0, &types, &orbits, &mut counts, &mut splits);
    // The bounds are theorems, so a split whose total component count escapes
    // them cannot be realized; keep only the ones inside the interval.
    splits.retain(|s| {
        let total: i64 = s.iter().map(|c| c.count).sum();
        let rr = Rat::from_integer(Int::from(total));
        rr > low && rr <= high
    });
    if splits.is_empty() {
        return Err(Error::internal(format!(
            "no feasible component split at twisting D = {}: pi0 = {p0} cannot be \
             written as a sum of orbit sizes with a twisting part inside the bounds",
            disc.d()
        )));
    }
    let rho_feasible: BTreeSet<i64> = splits
        .iter()
        .map(|s| s.iter().map(|c| c.count).sum())
        .collect();
    let rho_exact = if rho_feasible.len() == 1 {
        rho_feasible.iter().next().copied()
    } else {
        None
    };
    Ok(RhoData {
        rho_exact,
        rho_feasible,
        rho_bounds: (low, high),
        splits,
    })
}

fn nonempty_subsets(values: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << values.len()) {
        out.push(
            values
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect(),
        );
    }
    out
}

fn enumerate_splits(
    remaining: i64,
    idx: usize,
    types: &[(ComponentKind, i64)],
    orbits: &[i64],
    counts: &mut Vec<i64>,
    splits: &mut Vec<Vec<SplitComponent>>,
) {
    if idx == types.len() {
        if remaining != 0 {
            return;
        }
        let has_twisting = types
            .iter()
            .zip(counts.iter())
            .any(|(&(kind, _), &c)| kind == ComponentKind::Twisting && c > 0);
        if !has_twisting {
            return;
        }
        let split: Vec<SplitComponent> = types
            .iter()
            .zip(counts.iter())
            .enumerate()
            .filter(|(_, (_, &c))| c > 0)
            .map(|(i, (&(kind, ord), &c))| SplitComponent {
                kind,
                subgroup_order: ord,
                orbit: orbits[i],
                count: c,
            })
            .collect();
        splits.push(split);
        return;
    }
    let orbit = orbits[idx];
    let max_count = remaining / orbit;
    for c in 0..=max_count {
        counts[idx] = c;
        enumerate_splits(remaining - c * orbit, idx + 1, types, orbits, counts, splits);
    }
    counts[idx] = 0;
}

/// Theorem criterion: twisting discriminants are irreducible iff
/// h-tilde = 2^{2r-1}; non-twisting iff h-tilde = 2^{2r}.
pub fn is_irreducible(disc: &DiscD) -> Result<bool> {
    let (twisting, _) = twisting_data(disc)?;
    let h = h_tilde_checked(disc, twisting)?;
    let two_r = disc.two_r();
    Ok(if twisting {
        h == 1i64 << (two_r - 1)
    } else {
        h == 1i64 << two_r
    })
}

/// Advisory note: over Q the CM fields involved contain no odd-order roots of
/// unity beyond 1, so the equidistribution hypothesis holds automatically.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootsOfUnityNote {
    #[serde(rename = "D")]
    pub d: i64,
    pub hypothesis_holds: bool,
    pub note: String,
}

pub fn roots_of_unity_note(disc: &DiscD) -> RootsOfUnityNote {
    RootsOfUnityNote {
        d: disc.d(),
        hypothesis_holds: true,
        note: format!(
            "Q(sqrt(-{})) with {} squarefree and composite contains only the \
             roots of unity +1 and -1, so every primitive odd-order root of \
             unity (namely 1) lies in each order",
            disc.d(),
            disc.d()
        ),
    }
}

/// Exclusive lower / inclusive upper bound pair, serialized exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoBounds {
    pub low_exclusive: String,
    pub high_inclusive: String,
}

/// Full per-discriminant record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusReport {
    #[serde(rename = "D")]
    pub d: i64,
    pub primes: Vec<i64>,
    pub h_tilde: i64,
    pub pi0: i64,
    pub twisting: bool,
    pub twist_divisors: Vec<i64>,
    pub rho_exact: Option<i64>,
    pub rho_feasible: Vec<i64>,
    pub rho_bounds: RhoBounds,
    pub irreducible: bool,
    pub splits: Vec<Vec<SplitComponent>>,
}

impl LocusReport {
    pub const CSV_HEADER: &'static str =
        "D,h_tilde,pi0,twisting,twist_divisors,rho_min,rho_max,rho_exact,irreducible";

    pub fn csv_row(&self) -> String {
        let divisors = self
            .twist_divisors
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(";");
        let rho_min = self.rho_feasible.first().copied().unwrap_or(0);
        let rho_max = self.rho_feasible.last().copied().unwrap_or(0);
        let exact = self
            .rho_exact
            .map(|r| r.to_string())
            .unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.d,
            self.h_tilde,
            self.pi0,
            self.twisting,
            divisors,
            rho_min,
            rho_max,
            exact,
            self.irreducible
        )
    }
}

/// Analyze one discriminant; inadmissible D is rejected with an explanation.
pub fn analyze(d: i64) -> Result<LocusReport> {
    let disc = DiscD::new(d)?;
    let (twisting, twist_divisors) = twisting_data(&disc)?;
    let h = h_tilde_checked(&disc, twisting)?;
    let p0 = pi0(&disc)?;
    let rho_data = rho(&disc)?;
    let irreducible = is_irreducible(&disc)?;
    // verdict must match the component count
    let rho_says_one = rho_data.rho_exact == Some(1)
        || (rho_data.rho_feasible.len() == 1 && rho_data.rho_feasible.contains(&1));
    if irreducible != rho_says_one {
        return Err(Error::internal(format!(
            "irreducibility criterion and component count disagree at D = {d}"
        )));
    }
    Ok(LocusReport {
        d,
        primes: disc.primes().to_vec(),
        h_tilde: h,
        pi0: p0,
        twisting,
        twist_divisors,
        rho_exact: rho_data.rho_exact,
        rho_feasible: rho_data.rho_feasible.iter().copied().collect(),
        rho_bounds: RhoBounds {
            low_exclusive: rho_data.rho_bounds.0.to_string(),
            high_inclusive: rho_data.rho_bounds.1.to_string(),
        },
        irreducible,
        splits: rho_data.splits,
    })
}

/// Reports for every admissible D in [d_min, d_max], ascending. The per-D
/// work fans out over `jobs` threads; the result order is deterministic.
pub fn tabulate(d_min: i64, d_max: i64, jobs: usize) -> Result<Vec<LocusReport>> {
    if d_min < 1 || d_min > d_max {
        return Err(Error::domain(format!(
            "invalid range [{d_min}, {d_max}]"
        )));
    }
    let ds: Vec<i64> = (d_min.max(2)..=d_max)
        .filter(|&d| DiscD::is_admissible(d))
        .collect();
    let jobs = jobs.max(1).min(ds.len().max(1));
    let mut results: Vec<Result<LocusReport>> = Vec::new();
    std::thread::scope(|scope| {
        let chunks: Vec<&[i64]> = ds.chunks(ds.len().div_ceil(jobs).max(1)).collect();
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| scope.spawn(move || chunk.iter().map(|&d| analyze(d)).collect::<Vec<_>>()))
            .collect();
        for h in handles {
            results.extend(h.join().expect("tabulate worker panicked"));
        }
    });
    let mut out: Vec<LocusReport> = results.into_iter().collect::<Result<_>>()?;
    out.sort_by_key(|r| r.d);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        for d in [6, 10, 14, 15, 21, 22, 26, 33, 34, 35, 38, 39, 210] {
            assert!(DiscD::is_admissible(d), "D = {d}");
        }
        for d in [1, 2, 3, 5, 7, 12, 18, 30, 60, 105] {
            assert!(!DiscD::is_admissible(d), "D = {d}");
        }
        assert_eq!(DiscD::new(6).unwrap().primes(), &[2, 3]);
        assert_eq!(DiscD::new(210).unwrap().two_r(), 4);
    }

    #[test]
    fn al_group_structure() {
        let disc = DiscD::new(6).unwrap();
        let g = ALGroup::new(&disc);
        assert_eq!(g.elements(), &[1, 2, 3, 6]);
        assert_eq!(ALGroup::op(2, 3), 6);
        assert_eq!(ALGroup::op(6, 2), 3);
        for &m in g.elements() {
            assert_eq!(ALGroup::op(m, m), 1);
            assert_eq!(ALGroup::op(m, 1), m);
        }
        assert_eq!(ALGroup::new(&DiscD::new(210).unwrap()).order(), 16);
    }

    #[test]
    fn al_group_laws_exhaustive() {
        for d in (2..=210).filter(|&d| DiscD::is_admissible(d)) {
            let g = ALGroup::new(&DiscD::new(d).unwrap());
            assert_eq!(g.order(), 1 << DiscD::new(d).unwrap().two_r());
            for &a in g.elements() {
                for &b in g.elements() {
                    let ab = ALGroup::op(a, b);
                    assert!(g.elements().contains(&ab), "closure at D={d}");
                    assert_eq!(ab, ALGroup::op(b, a), "commutativity at D={d}");
                    for &c in g.elements() {
                        assert_eq!(
                            ALGroup::op(ab, c),
                            ALGroup::op(a, ALGroup::op(b, c)),
                            "associativity at D={d}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_orders_d6() {
        let disc = DiscD::new(6).unwrap();
        let g = ALGroup::new(&disc);
        assert_eq!(g.subgroup_order(&[6]), 2);
        assert_eq!(g.subgroup_order(&[6, 2]), 4);
        assert_eq!(g.subgroup_order(&[2, 3]), 4);
        assert_eq!(g.subgroup_order(&[]), 1);
    }

    #[test]
    fn twisting_examples() {
        let td = |d: i64| twisting_data(&DiscD::new(d).unwrap()).unwrap();
        let (t6, m6) = td(6);
        assert!(t6 && m6.contains(&2), "{m6:?}");
        assert_eq!(td(33), (false, vec![]));
        assert_eq!(td(15), (true, vec![3, 5]));
        let (t22, m22) = td(22);
        assert!(t22 && m22.contains(&2));
        let (t39, _) = td(39);
        assert!(!t39);
    }

    #[test]
    fn pi0_examples() {
        let p = |d: i64| pi0(&DiscD::new(d).unwrap()).unwrap();
        assert_eq!(p(6), 1);
        assert_eq!(p(10), 1);
        assert_eq!(p(39), 4);
        assert_eq!(p(15), 2);
    }

    #[test]
    fn rho_examples() {
        let r6 = rho(&DiscD::new(6).unwrap()).unwrap();
        assert_eq!(r6.rho_exact, Some(1));
        assert_eq!(r6.splits.len(), 1);
        assert_eq!(r6.splits[0].len(), 1);
        assert_eq!(r6.splits[0][0].kind, ComponentKind::Twisting);
        assert_eq!(r6.splits[0][0].subgroup_order, 4); // W0 = W

        let r39 = rho(&DiscD::new(39).unwrap()).unwrap();
        assert_eq!(r39.rho_exact, Some(2));

        let r15 = rho(&DiscD::new(15).unwrap()).unwrap();
        assert_eq!(r15.rho_exact, Some(2));
        assert_eq!(r15.rho_feasible, BTreeSet::from([2]));
        // the unique split is two twisting components
        assert_eq!(r15.splits.len(), 1);
        let total: i64 = r15.splits[0]
            .iter()
            .map(|c| c.count)
            .sum();
        assert_eq!(total, 2);
        assert!(r15.splits[0]
            .iter()
            .all(|c| c.kind == ComponentKind::Twisting));
    }

    #[test]
    fn irreducibility_examples() {
        let irr = |d: i64| is_irreducible(&DiscD::new(d).unwrap()).unwrap();
        assert!(irr(6));
        assert!(irr(10));
        assert!(irr(33));
        assert!(!irr(39));
        assert!(!irr(15));
    }

    #[test]
    fn analyze_reports() {
        let r = analyze(6).unwrap();
        assert_eq!(
            (r.h_tilde, r.pi0, r.twisting, r.rho_exact, r.irreducible),
            (2, 1, true, Some(1), true)
        );
        let r = analyze(22).unwrap();
        assert_eq!((r.h_tilde, r.pi0, r.rho_exact, r.irreducible), (2, 1, Some(1), true));
        assert!(r.twisting && r.twist_divisors.contains(&2));
        let r = analyze(39).unwrap();
        assert_eq!((r.twisting, r.h_tilde, r.rho_exact), (false, 8, Some(2)));
        assert!(analyze(12).is_err());
        assert!(analyze(7).is_err());
        assert!(analyze(1).is_err());
    }

    #[test]
    fn report_roundtrip_and_csv() {
        let r = analyze(15).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"D\":15"));
        assert!(json.contains("\"rho_feasible\":[2]"));
        let back: LocusReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let row = r.csv_row();
        assert_eq!(row, "15,4,2,true,3;5,2,2,2,false");
    }

    #[test]
    fn tabulate_ranges() {
        let reports = tabulate(6, 15, 2).unwrap();
        let ds: Vec<i64> = reports.iter().map(|r| r.d).collect();
        assert_eq!(ds, vec![6, 10, 14, 15]);
        assert!(tabulate(2, 5, 1).unwrap().is_empty());
        assert!(tabulate(5, 2, 1).is_err());
        // determinism across worker counts
        let seq = tabulate(6, 100, 1).unwrap();
        let par = tabulate(6, 100, 4).unwrap();
        assert_eq!(seq, par);
        assert!(seq.iter().any(|r| r.d == 39 && r.rho_exact == Some(2)));
    }

    #[test]
    fn roots_of_unity_note_holds() {
        let n = roots_of_unity_note(&DiscD::new(6).unwrap());
        assert!(n.hypothesis_holds);
        assert_eq!(n.d, 6);
    }
}
