//! Bounded searches inside an order: polarization quaternions mu with
//! mu^2 + D = 0, anticommuting twists chi, and small presentations (a, b)
//! of an algebra with prescribed discriminant.
//!
//! All searches enumerate integer coordinates in the order basis in the
//! deterministic sequence 0, 1, -1, 2, -2, ... so the first hit is the
//! canonical one; a failed bounded search is reported as absence of a
//! witness within the bound, never as nonexistence.

use crate::arith::{squarefree_factor, Int, Rat};
use crate::error::{Error, Result};
use crate::quaternion::{disc_of, is_totally_indefinite_division, QOrder, Quat};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// 0, 1, -1, 2, -2, ..., bound, -bound.
fn signed_sequence(bound: i64) -> Vec<i64> {
    let mut out = Vec::with_capacity((2 * bound + 1) as usize);
    out.push(0);
    for v in 1..=bound {
        out.push(v);
        out.push(-v);
    }
    out
}

/// Integer data of the reduced norm and trace in an order basis:
/// trd(sum c_i e_i) = sum c_i t_i and
/// nrd(sum c_i e_i) = sum c_i^2 n_i + sum_{i<j} c_i c_j m_ij.
struct NormTraceData {
    t: [i128; 4],
    n: [i128; 4],
    m: [[i128; 4]; 4],
}

impl NormTraceData {
    fn new(order: &QOrder) -> Result<Self> {
        let alg = order.algebra();
        let as_i128 = |r: &Rat| -> Result<i128> {
            if !r.denom().is_one() {
                return Err(Error::internal("non-integral norm/trace data in order basis"));
            }
            r.numer()
                .to_i128()
                .ok_or_else(|| Error::domain("order basis entries too large for bounded search"))
        };
        let mut t = [0i128; 4];
        let mut n = [0i128; 4];
        let mut m = [[0i128; 4]; 4];
        for i in 0..4 {
            t[i] = as_i128(&order.basis()[i].trd())?;
            n[i] = as_i128(&order.basis()[i].nrd(alg))?;
            for j in 0..4 {
                if i < j {
                    let bil = order.basis()[i]
                        .mul(&order.basis()[j].conj(), alg)
                        .trd();
                    m[i][j] = as_i128(&bil)?;
                }
            }
        }
        Ok(NormTraceData { t, n, m })
    }

    fn nrd(&self, c: &[i64; 4]) -> i128 {
        let mut acc = 0i128;
        for i in 0..4 {
            let ci = c[i] as i128;
            acc += ci * ci * self.n[i];
            for j in i + 1..4 {
                acc += ci * c[j] as i128 * self.m[i][j];
            }
        }
        acc
    }
}

/// Searches a pure mu in the maximal order with nrd(mu) = D, i.e.
/// mu^2 + D = 0, scanning integer basis coordinates up to the bound.
/// Returns the first solution in the canonical scan order, or None.
pub fn find_mu(order: &QOrder, d: &Int, bound: i64) -> Result<Option<Quat>> {
    if !order.is_maximal() {
        return Err(Error::domain("find_mu requires a maximal order"));
    }
    if order.algebra().disc() != d {
        return Err(Error::domain(format!(
            "D = {d} is not the discriminant of the algebra ({})",
            order.algebra().disc()
        )));
    }
    if bound < 0 {
        return Err(Error::domain("negative search bound"));
    }
    let data = NormTraceData::new(order)?;
    let target = d
        .to_i128()
        .ok_or_else(|| Error::domain("D too large for bounded search"))?;
    let seq = signed_sequence(bound);
    let mut c = [0i64; 4];
    for &c0 in &seq {
        c[0] = c0;
        for &c1 in &seq {
            c[1] = c1;
            for &c2 in &seq {
                c[2] = c2;
                // trace constraint picks c3 (or leaves it free when t3 = 0)
                let partial: i128 = (0..3).map(|i| c[i] as i128 * data.t[i]).sum();
                if data.t[3] != 0 {
                    if partial % data.t[3] != 0 {
                        continue;
                    }
                    let c3 = -partial / data.t[3];
                    if c3.abs() > bound as i128 {
                        continue;
                    }
                    c[3] = c3 as i64;
                    if data.nrd(&c) == target {
                        return Ok(Some(order.from_coords(&c.map(Int::from))));
                    }
                } else {
                    if partial != 0 {
                        continue;
                    }
                    for &c3 in &seq {
                        c[3] = c3;
                        if data.nrd(&c) == target {
                            return Ok(Some(order.from_coords(&c.map(Int::from))));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Integer-scaled linear constraints expressing that sum c_i e_i is pure and
/// anticommutes with mu: rows are the four ambient coordinates of
/// e_i mu + mu e_i plus the trace row.
fn twist_constraints(order: &QOrder, mu: &Quat) -> Result<Vec<[i128; 4]>> {
    let alg = order.algebra();
    let anti: Vec<Quat> = order
        .basis()
        .iter()
        .map(|e| e.mul(mu, alg).add(&mu.mul(e, alg)))
        .collect();
    let mut rows = Vec::new();
    for r in 0..4 {
        let mut denom = Int::from(1);
        for q in &anti {
            denom = denom.lcm(q.c[r].denom());
        }
        let mut row = [0i128; 4];
        for (i, q) in anti.iter().enumerate() {
            let v = &q.c[r] * Rat::from_integer(denom.clone());
            row[i] = v
                .numer()
                .to_i128()
                .ok_or_else(|| Error::domain("constraint coefficients too large"))?;
        }
        rows.push(row);
    }
    let mut trace_row = [0i128; 4];
    for i in 0..4 {
        let t = order.basis()[i].trd();
        trace_row[i] = t
            .numer()
            .to_i128()
            .ok_or_else(|| Error::domain("trace coefficients too large"))?;
    }
    rows.push(trace_row);
    Ok(rows)
}

/// All pure chi in the order within the coordinate bound that anticommute
/// with mu and normalize the order, each with the squarefree part m of
/// |nrd(chi)|. Every hit satisfies m | D (checked; violation is an internal
/// error since it would contradict the twisting classification).
pub fn find_twists(order: &QOrder, mu: &Quat, bound: i64) -> Result<Vec<(Quat, Int)>> {
    if bound < 0 {
        return Err(Error::domain("negative search bound"));
    }
    let rows = twist_constraints(order, mu)?;
    // prefer a row that determines c3 from (c0, c1, c2)
    let solve_row = rows.iter().position(|r| r[3] != 0);
    let seq = signed_sequence(bound);
    let mut out = Vec::new();
    let mut c = [0i64; 4];
    let d = order.algebra().disc().clone();
    let check_and_push = |c: &[i64; 4], out: &mut Vec<(Quat, Int)>| -> Result<()> {
        if c.iter().all(|&x| x == 0) {
            return Ok(());
        }
        if !rows
            .iter()
            .all(|r| (0..4).map(|i| c[i] as i128 * r[i]).sum::<i128>() == 0)
        {
            return Ok(());
        }
        let chi = order.from_coords(&c.map(Int::from));
        if !order.normalizes(&chi)? {
            return Ok(());
        }
        let nrd = chi.nrd(order.algebra());
        let (s, _) = squarefree_factor(nrd.numer())?;
        let m = s.abs();
        if !(&d % &m).is_zero() {
            return Err(Error::internal(format!(
                "twist {chi} has squarefree norm part {m} not dividing D = {d}"
            )));
        }
        out.push((chi, m));
        Ok(())
    };
    for &c0 in &seq {
        c[0] = c0;
        for &c1 in &seq {
            c[1] = c1;
            for &c2 in &seq {
                c[2] = c2;
                match solve_row {
                    Some(r) => {
                        let row = &rows[r];
                        let partial: i128 = (0..3).map(|i| c[i] as i128 * row[i]).sum();
                        if partial % row[3] != 0 {
                            continue;
                        }
                        let c3 = -partial / row[3];
                        if c3.abs() > bound as i128 {
                            continue;
                        }
                        c[3] = c3 as i64;
                        check_and_push(&c, &mut out)?;
                    }
                    None => {
                        for &c3 in &seq {
                            c[3] = c3;
                            check_and_push(&c, &mut out)?;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// First small presentation (a, b) whose quaternion algebra has reduced
/// discriminant d, searched deterministically.
pub fn algebra_for_disc(d: &Int) -> Result<(Rat, Rat)> {
    if !d.is_positive() {
        return Err(Error::domain("discriminant must be positive"));
    }
    let dd = d
        .to_i64()
        .ok_or_else(|| Error::domain("discriminant too large for presentation search"))?;
    let limit = 4 * dd.max(2);
    for a in 1..=limit {
        let av = Rat::from_integer(Int::from(-a));
        for b_abs in 1..=limit {
            for b in [b_abs, -b_abs] {
                let bv = Rat::from_integer(Int::from(b));
                if disc_of(&av, &bv)? == *d && is_totally_indefinite_division(&av, &bv)? {
                    return Ok((av, bv));
                }
            }
        }
    }
    Err(Error::SearchExhausted(format!(
        "no presentation (a, b) with |a|, |b| <= {limit} has discriminant {d}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, rat_int};
    use crate::quaternion::{saturate_to_maximal, QAlgebra};

    fn d6_order() -> QOrder {
        QOrder::new(
            QAlgebra::from_ints(-1, 3).unwrap(),
            [
                Quat::from_ints([1, 0, 0, 0]),
                Quat::from_ints([0, 1, 0, 0]),
                Quat::from_ints([0, 0, 1, 0]),
                Quat::new([rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn find_mu_d6() {
        let o = d6_order();
        let mu = find_mu(&o, &int(6), 8).unwrap().unwrap();
        assert_eq!(mu, Quat::from_ints([0, 3, 1, 0]));
        let sq = mu.mul(&mu, o.algebra());
        assert_eq!(sq, Quat::scalar(rat_int(-6)));
    }

    #[test]
    fn find_mu_empty_box() {
        let o = d6_order();
        assert!(find_mu(&o, &int(6), 0).unwrap().is_none());
    }

    #[test]
    fn find_mu_d10() {
        let o = saturate_to_maximal(&rat_int(-10), &rat_int(2)).unwrap();
        let mu = find_mu(&o, &int(10), 8).unwrap().unwrap();
        assert_eq!(mu.mul(&mu, o.algebra()), Quat::scalar(rat_int(-10)));
    }

    #[test]
    fn find_mu_validates_inputs() {
        let o = d6_order();
        assert!(find_mu(&o, &int(10), 4).is_err());
    }

    #[test]
    fn twists_at_d6() {
        let o = d6_order();
        let mu = Quat::from_ints([0, 3, 1, 0]);
        let twists = find_twists(&o, &mu, 4).unwrap();
        let chi = Quat::from_ints([0, 1, 1, 0]);
        assert!(
            twists.iter().any(|(t, m)| (t == &chi || t == &chi.neg()) && m == &int(2)),
            "expected chi = i + j with m = 2 among {twists:?}"
        );
        // every reported twist anticommutes exactly and has m | 6
        let alg = o.algebra();
        for (t, m) in &twists {
            assert!(t.is_pure());
            assert_eq!(t.mul(&mu, alg), mu.mul(t, alg).neg());
            assert!((int(6) % m).is_zero());
        }
        assert!(find_twists(&o, &mu, 0).unwrap().is_empty());
    }

    #[test]
    fn non_twisting_algebra_has_no_twists() {
        // D = 33 is a non twisting discriminant; no bounded search may find one
        let o = saturate_to_maximal(&rat_int(-3), &rat_int(11)).unwrap();
        let mu = find_mu(&o, &int(33), 16).unwrap().unwrap();
        assert!(find_twists(&o, &mu, 6).unwrap().is_empty());
    }

    #[test]
    fn presentation_search() {
        let (a, b) = algebra_for_disc(&int(6)).unwrap();
        assert_eq!(disc_of(&a, &b).unwrap(), int(6));
        let (a, b) = algebra_for_disc(&int(39)).unwrap();
        assert_eq!(disc_of(&a, &b).unwrap(), int(39));
        assert!(is_totally_indefinite_division(&a, &b).unwrap());
    }
}
