//! Polarization data of a maximal order: the reduced different, integral
//! Riemann form matrices, polarization degrees via the Pfaffian, the Rosati
//! involution with its positivity test, and Atkin-Lehner isogeny witnesses.

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::quaternion::{QOrder, Quat};
use num_traits::{One, Signed, Zero};

/// The alternating integral matrix of a line bundle class mu on the order
/// basis: matrix[a][b] = -trd(mu e_a conj(e_b)) / D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiemannForm {
    pub mu: Quat,
    pub matrix: [[Int; 4]; 4],
}

/// Gram matrix of the Rosati trace form q(x) = trd(x mu^-1 conj(x) mu).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RosatiGram {
    pub mu: Quat,
    pub gram: [[Rat; 4]; 4],
}

/// Membership in the reduced different: x in O with D | nrd(x).
pub fn in_reduced_different(order: &QOrder, x: &Quat) -> bool {
    if !order.contains(x) {
        return false;
    }
    let nrd = x.nrd(order.algebra());
    nrd.denom().is_one() && (nrd.numer() % order.algebra().disc()).is_zero()
}

/// Riemann form of a pure quaternion of the reduced different.
pub fn riemann_form(order: &QOrder, mu: &Quat) -> Result<RiemannForm> {
    if !mu.is_pure() {
        return Err(Error::domain("riemann_form requires a pure quaternion"));
    }
    if !in_reduced_different(order, mu) {
        return Err(Error::domain(
            "mu is not in the reduced different of the order",
        ));
    }
    let alg = order.algebra();
    let d = Rat::from_integer(alg.disc().clone());
    let mut matrix: [[Int; 4]; 4] = Default::default();
    for a in 0..4 {
        for b in 0..4 {
            let val = -mu
                .mul(&order.basis()[a], alg)
                .mul(&order.basis()[b].conj(), alg)
                .trd()
                / &d;
            if !val.denom().is_one() {
                return Err(Error::internal(format!(
                    "non-integral Riemann form entry {val} at ({a}, {b})"
                )));
            }
            matrix[a][b] = val.numer().clone();
        }
    }
    for a in 0..4 {
        for b in 0..4 {
            if matrix[a][b] != -matrix[b][a].clone() {
                return Err(Error::internal("Riemann form is not antisymmetric"));
            }
        }
    }
    Ok(RiemannForm {
        mu: mu.clone(),
        matrix,
    })
}

/// Pfaffian of a 4x4 antisymmetric matrix.
pub fn pfaffian(m: &[[Int; 4]; 4]) -> Int {
    &m[0][1] * &m[2][3] - &m[0][2] * &m[1][3] + &m[0][3] * &m[1][2]
}

/// Degree of the polarization: |Pf(E)|, cross-checked against |nrd(mu)| / D.
pub fn polarization_degree(order: &QOrder, form: &RiemannForm) -> Result<Int> {
    let pf = pfaffian(&form.matrix).abs();
    let nrd = form.mu.nrd(order.algebra());
    let expected = nrd / Rat::from_integer(order.algebra().disc().clone());
    if !expected.denom().is_one() || expected.numer().abs() != pf {
        return Err(Error::internal(format!(
            "degree law violated: |Pf| = {pf} but |nrd(mu)|/D = {expected}"
        )));
    }
    Ok(pf)
}

/// True iff mu defines a principal polarization class: nrd(mu) = D.
pub fn is_principal(order: &QOrder, mu: &Quat) -> bool {
    mu.nrd(order.algebra()) == Rat::from_integer(order.algebra().disc().clone())
}

/// Rosati involution beta -> mu^-1 conj(beta) mu.
pub fn rosati(order: &QOrder, mu: &Quat, beta: &Quat) -> Result<Quat> {
    let alg = order.algebra();
    let mu_inv = mu.inv(alg)?;
    Ok(mu_inv.mul(&beta.conj(), alg).mul(mu, alg))
}

pub fn rosati_gram(order: &QOrder, mu: &Quat) -> Result<RosatiGram> {
    let alg = order.algebra();
    let mu_inv = mu.inv(alg)?;
    let gram: [[Rat; 4]; 4] = std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let rosati_b = mu_inv
                .mul(&order.basis()[b].conj(), alg)
                .mul(mu, alg);
            order.basis()[a].mul(&rosati_b, alg).trd()
        })
    });
    Ok(RosatiGram {
        mu: mu.clone(),
        gram,
    })
}

/// Weil positivity: the Rosati trace form is positive definite, decided by
/// exact leading principal minors.
pub fn rosati_positive(order: &QOrder, mu: &Quat) -> Result<bool> {
    if !mu.is_pure() {
        return Err(Error::domain("rosati_positive requires a pure quaternion"));
    }
    if !mu.nrd(order.algebra()).is_positive() {
        return Err(Error::domain("rosati_positive requires nrd(mu) > 0"));
    }
    let g = rosati_gram(order, mu)?.gram;
    for k in 1..=4 {
        if !leading_minor(&g, k).is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn leading_minor(g: &[[Rat; 4]; 4], k: usize) -> Rat {
    // Laplace-free: Gaussian elimination on the k x k corner
    let mut a: Vec<Vec<Rat>> = (0..k).map(|i| g[i][..k].to_vec()).collect();
    let mut det = Rat::one();
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..k {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pv;
            for c in col..k {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// A verified Atkin-Lehner isogeny certificate: conj(omega) mu omega = m mu2
/// with m a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub omega: Quat,
    pub m: Int,
}

/// Bounded search for an Atkin-Lehner isogeny witness between two principal
/// classes. `None` means the search box was exhausted, never that the
/// classes are inequivalent.
pub fn al_isogeny_witness(
    order: &QOrder,
    mu: &Quat,
    mu2: &Quat,
    bound: i64,
) -> Result<Option<Witness>> {
    if !is_principal(order, mu) || !is_principal(order, mu2) {
        return Err(Error::domain("al_isogeny_witness requires principal classes"));
    }
    if bound < 0 {
        return Err(Error::domain("negative search bound"));
    }
    let alg = order.algebra();
    let seq: Vec<i64> = {
        let mut s = vec![0i64];
        for v in 1..=bound {
            s.push(v);
            s.push(-v);
        }
        s
    };
    for &c0 in &seq {
        for &c1 in &seq {
            for &c2 in &seq {
                for &c3 in &seq {
                    if c0 == 0 && c1 == 0 && c2 == 0 && c3 == 0 {
                        continue;
                    }
                    let omega = order.from_coords(&[
                        Int::from(c0),
                        Int::from(c1),
                        Int::from(c2),
                        Int::from(c3),
                    ]);
                    let conjugated = omega.conj().mul(mu, alg).mul(&omega, alg);
                    // proportionality with a positive integral ratio m
                    let Some(m) = proportionality(&conjugated, mu2) else {
                        continue;
                    };
                    if !m.is_positive() || !m.denom().is_one() {
                        continue;
                    }
                    if !order.normalizes(&omega)? {
                        continue;
                    }
                    return Ok(Some(Witness {
                        omega,
                        m: m.numer().clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Ratio r with x = r * y, when x and y are parallel and y != 0.
fn proportionality(x: &Quat, y: &Quat) -> Option<Rat> {
    let mut ratio: Option<Rat> = None;
    for k in 0..4 {
        match (x.c[k].is_zero(), y.c[k].is_zero()) {
            (true, true) => continue,
            (false, true) | (true, false) => return None,
            (false, false) => {
                let r = &x.c[k] / &y.c[k];
                match &ratio {
                    None => ratio = Some(r),
                    Some(prev) => {
                        if prev != &r {
                            return None;
                        }
                    }
                }
            }
        }
    }
    ratio
}
