//! Shape classification of bounded lattices: chains, quasi-antichains, and
//! everything else, with the (p, a, b) data the width theorem predicts for
//! quasi-antichains of width at least 3.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{CdError, Result};
use crate::group::FiniteGroup;
use crate::lattice::CdLattice;

/// Backend-agnostic picture of a lattice of subgroups: orders, containment,
/// covers, abelian flags, and the centralizer duality (None when the partner
/// lies outside the view, as happens for sub-intervals).
#[derive(Debug, Clone)]
pub struct LatticeView {
    pub orders: Vec<BigUint>,
    pub abelian: Vec<bool>,
    pub leq: Vec<Vec<bool>>,
    pub covers: Vec<(usize, usize)>,
    pub duality: Vec<Option<usize>>,
    pub top: usize,
    pub bottom: usize,
}

impl LatticeView {
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// Members covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        self.covers.iter().filter(|&&(l, _)| l == self.bottom).map(|&(_, u)| u).collect()
    }

    /// Members covered by the top.
    pub fn coatoms(&self) -> Vec<usize> {
        self.covers.iter().filter(|&&(_, u)| u == self.top).map(|&(l, _)| l).collect()
    }

    /// Restriction to a subset of members (indices into this view, in the
    /// order given). Duality partners falling outside become None.
    pub fn sub_view(&self, keep: &[usize]) -> LatticeView {
        let pos: std::collections::HashMap<usize, usize> =
            keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let n = keep.len();
        let leq: Vec<Vec<bool>> = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.leq[i][j]).collect())
            .collect();
        let mut covers = Vec::new();
        for a in 0..n {
            'upper: for b in 0..n {
                if a == b || !leq[a][b] {
                    continue;
                }
                for c in 0..n {
                    if c != a && c != b && leq[a][c] && leq[c][b] {
                        continue 'upper;
                    }
                }
                covers.push((a, b));
            }
        }
        let top = (0..n).find(|&j| (0..n).all(|i| leq[i][j])).expect("sub-view has a top");
        let bottom = (0..n).find(|&i| (0..n).all(|j| leq[i][j])).expect("sub-view has a bottom");
        LatticeView {
            orders: keep.iter().map(|&i| self.orders[i].clone()).collect(),
            abelian: keep.iter().map(|&i| self.abelian[i]).collect(),
            leq,
            covers,
            duality: keep
                .iter()
                .map(|&i| self.duality[i].and_then(|d| pos.get(&d).copied()))
                .collect(),
            top,
            bottom,
        }
    }
}

impl CdLattice {
    pub fn view(&self, g: &FiniteGroup) -> LatticeView {
        let n = self.members.len();
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| self.members[i].is_subset_of(&self.members[j])).collect())
            .collect();
        LatticeView {
            orders: self.members.iter().map(|m| BigUint::from(m.order() as u64)).collect(),
            abelian: self.members.iter().map(|m| g.is_abelian(m)).collect(),
            leq,
            covers: self.covers.clone(),
            duality: self.duality.iter().map(|&d| Some(d)).collect(),
            top: self.top,
            bottom: self.bottom,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeKind {
    Chain(usize),
    QuasiAntichain { width: usize, abelian_atoms: usize, nonabelian_pairs: usize },
    Other,
}

/// (p, a, b) with |top/bottom| = p^(2a) and width = p^b + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePowerData {
    pub p: u64,
    pub a: u32,
    pub b: u32,
}

#[derive(Debug, Clone)]
pub struct AtomInfo {
    pub member: usize,
    pub order: BigUint,
    pub abelian: bool,
    pub dual_partner: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ShapeReport {
    pub kind: ShapeKind,
    pub prime_data: Option<PrimePowerData>,
    pub atoms: Vec<AtomInfo>,
    /// Structural facts that should hold by the classification theorems but
    /// do not; a non-empty list means the implementation or the input is
    /// wrong, never the theorem.
    pub violations: Vec<String>,
}

impl ShapeReport {
    pub fn is_chain(&self) -> bool {
        matches!(self.kind, ShapeKind::Chain(_))
    }

    pub fn width(&self) -> Option<usize> {
        match self.kind {
            ShapeKind::QuasiAntichain { width, .. } => Some(width),
            _ => None,
        }
    }
}

/// Decompose n as p^k for prime p; None when n is 1 or not a prime power.
pub fn prime_power(n: &BigUint) -> Option<(u64, u32)> {
    if n <= &BigUint::one() {
        return None;
    }
    let mut p = 2u64;
    loop {
        if (n % BigUint::from(p)) == BigUint::default() {
            break;
        }
        p += 1;
        if p > 1_000_000 {
            return None;
        }
    }
    let big_p = BigUint::from(p);
    let mut rest = n.clone();
    let mut k = 0u32;
    while (&rest % &big_p) == BigUint::default() {
        rest /= &big_p;
        k += 1;
    }
    if rest.is_one() {
        Some((p, k))
    } else {
        None
    }
}

pub fn classify_shape(view: &LatticeView) -> ShapeReport {
    let n = view.len();
    let totally_ordered =
        (0..n).all(|i| (0..n).all(|j| view.leq[i][j] || view.leq[j][i]));
    if totally_ordered {
        return ShapeReport {
            kind: ShapeKind::Chain(n - 1),
            prime_data: None,
            atoms: Vec::new(),
            violations: Vec::new(),
        };
    }
    let atoms = view.atoms();
    let is_qa = atoms.len() + 2 == n
        && atoms.iter().all(|&a| {
            view.covers.contains(&(a, view.top)) && view.covers.contains(&(view.bottom, a))
        });
    if !is_qa {
        return ShapeReport {
            kind: ShapeKind::Other,
            prime_data: None,
            atoms: Vec::new(),
            violations: Vec::new(),
        };
    }

    let mut violations = Vec::new();
    let atom_infos: Vec<AtomInfo> = atoms
        .iter()
        .map(|&a| AtomInfo {
            member: a,
            order: view.orders[a].clone(),
            abelian: view.abelian[a],
            dual_partner: view.duality[a],
        })
        .collect();
    let width = atoms.len();
    let abelian_atoms = atom_infos.iter().filter(|a| a.abelian).count();
    let nonabelian = width - abelian_atoms;
    // The nonabelian atoms pair up under duality only when the duality maps
    // the interval into itself; a sub-interval's partners may live outside.
    let duality_internal = atom_infos.iter().all(|a| a.dual_partner.is_some());
    if duality_internal {
        if nonabelian % 2 != 0 {
            violations.push(format!(
                "odd number of nonabelian atoms ({nonabelian}) cannot split into dual pairs"
            ));
        }
        for a in &atom_infos {
            if let Some(d) = a.dual_partner {
                if (d == a.member) != a.abelian {
                    violations.push(format!(
                        "atom {} abelian flag disagrees with self-duality",
                        a.member
                    ));
                }
            }
        }
    }

    let mut prime_data = None;
    if width >= 3 {
        let quotient = &view.orders[view.top] / &view.orders[view.bottom];
        match prime_power(&quotient) {
            Some((p, exp)) if exp % 2 == 0 => {
                let a = exp / 2;
                match prime_power(&BigUint::from(width as u64 - 1)) {
                    Some((wp, b)) if wp == p && b <= a => {
                        prime_data = Some(PrimePowerData { p, a, b });
                    }
                    Some((wp, b)) if wp == p => {
                        violations.push(format!("width - 1 = {p}^{b} but b > a = {a}"));
                    }
                    _ => violations.push(format!(
                        "width - 1 = {} is not a power of the quotient prime {p}",
                        width - 1
                    )),
                }
            }
            Some((p, exp)) => {
                violations.push(format!("|top/bottom| = {p}^{exp} has odd exponent"));
            }
            None => violations.push("|top/bottom| is not a prime power".into()),
        }
    }

    ShapeReport {
        kind: ShapeKind::QuasiAntichain {
            width,
            abelian_atoms,
            nonabelian_pairs: nonabelian / 2,
        },
        prime_data,
        atoms: atom_infos,
        violations,
    }
}

/// An interval [bottom, top] in a CD lattice, with its shape and the order
/// and exponent of the quotient top/bottom.
#[derive(Debug)]
pub struct IntervalReport {
    /// Parent-lattice indices of the interval members, sorted as in the parent.
    pub member_indices: Vec<usize>,
    /// Parent-lattice indices of the endpoints.
    pub bottom: usize,
    pub top: usize,
    pub view: LatticeView,
    pub shape: ShapeReport,
    pub quotient_order: BigUint,
    pub quotient_exponent: u64,
}

pub fn interval(
    g: &FiniteGroup,
    lat: &CdLattice,
    bottom: usize,
    top: usize,
) -> Result<IntervalReport> {
    if bottom >= lat.len() || top >= lat.len() {
        return Err(CdError::NotAMember);
    }
    if !lat.leq(bottom, top) {
        return Err(CdError::NotComparable);
    }
    let member_indices: Vec<usize> =
        (0..lat.len()).filter(|&i| lat.leq(bottom, i) && lat.leq(i, top)).collect();
    let full = lat.view(g);
    let view = full.sub_view(&member_indices);
    let shape = classify_shape(&view);
    let h = &lat.members[top];
    let l = &lat.members[bottom];
    let quotient_order = BigUint::from((h.order() / l.order()) as u64);
    let mut exponent = 1u64;
    for x in h.iter_elements() {
        let mut acc = x;
        let mut k = 1u64;
        while !l.contains(acc) {
            acc = g.multiply(acc, x);
            k += 1;
        }
        exponent = lcm(exponent, k);
    }
    Ok(IntervalReport {
        member_indices,
        bottom,
        top,
        view,
        shape,
        quotient_order,
        quotient_exponent: exponent,
    })
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }
    a / gcd(a, b) * b
}

/// Exponent of an order as a power of p (0 for the trivial group), used by
/// report writers on the fast path.
pub fn order_exponent(order: &BigUint, p: u64) -> Option<u32> {
    if order.is_one() {
        return Some(0);
    }
    prime_power(order).and_then(|(q, k)| (q == p).then_some(k))
}
