//! Parameterized builders for the example groups and a small-group catalog
//! for the oracle suites.

use std::fmt;

use crate::class2::Class2Data;
use crate::error::{CdError, Result};
use crate::gf;
use crate::gfext::ExtField;
use crate::group::FiniteGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// exponent p for odd p; dihedral for p = 2
    Plus,
    /// exponent p^2 for odd p; quaternion for p = 2
    Minus,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Plus => write!(f, "plus"),
            Variant::Minus => write!(f, "minus"),
        }
    }
}

// ---------------------------------------------------------------------------
// Class-2 presentations
// ---------------------------------------------------------------------------

fn unit(e: usize, k: usize, scale: u8) -> Vec<u8> {
    let mut v = vec![0u8; e];
    v[k] = scale;
    v
}

/// Extraspecial p^3 of exponent p (dihedral for p = 2): two generators with
/// central commutator and trivial power map.
pub fn extraspecial_plus_data(p: u32) -> Result<Class2Data> {
    Class2Data::new(p, 2, 1, &[((0, 1), vec![1])], None)
}

/// Quaternion group as class-2 data: both generators square to the center.
pub fn quaternion8_data() -> Result<Class2Data> {
    Class2Data::new(2, 2, 1, &[((0, 1), vec![1])], Some(vec![vec![1], vec![1]]))
}

/// Unitriangular 3x3 group over GF(p^n) as class-2 data: d = 2n, e = n,
/// [X_i, Y_j] = theta^(i+j) expanded over the GF(p) basis.
pub fn heisenberg_data(p: u32, n: usize) -> Result<Class2Data> {
    gf::check_prime(p)?;
    if n == 0 {
        return Err(CdError::InconsistentInput("n must be positive".into()));
    }
    let field = ExtField::new(p, n)?;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            entries.push(((i, n + j), field.basis_power(i + j)));
        }
    }
    Class2Data::new(p, 2 * n, n, &entries, None)
}

/// Width-2 example: generators m_1, m_2, n_1, n_2 with [m_i, n_j] = z_ij and
/// an elementary abelian center of rank 4.
pub fn width2_abelian_data(p: u32) -> Result<Class2Data> {
    let mut entries = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            entries.push(((i, 2 + j), unit(4, 2 * i + j, 1)));
        }
    }
    Class2Data::new(p, 4, 4, &entries, None)
}

/// Order p^9: two commuting triples x_i, y_i with [x_i, x_j] = [y_i, y_j] =
/// z_ij over a rank-3 center.
pub fn bigex_data(p: u32) -> Result<Class2Data> {
    bigex_like_data(p, 1)
}

/// Same but [y_i, y_j] = z_ij^-1.
pub fn bigex2_data(p: u32) -> Result<Class2Data> {
    gf::check_prime(p)?;
    bigex_like_data(p, (p - 1) as u8)
}

fn bigex_like_data(p: u32, y_scale: u8) -> Result<Class2Data> {
    let pos = |i: usize, j: usize| match (i, j) {
        (0, 1) => 0,
        (0, 2) => 1,
        (1, 2) => 2,
        _ => unreachable!(),
    };
    let mut entries = Vec::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            entries.push(((i, j), unit(3, pos(i, j), 1)));
            entries.push(((3 + i, 3 + j), unit(3, pos(i, j), y_scale)));
        }
    }
    Class2Data::new(p, 6, 3, &entries, None)
}

/// One generating triple with wedge commutators: the order-p^6 central
/// factor of the p^9 examples. Its CD lattice is the two-member chain
/// {G, Z(G)}, which is what the width-2-no-abelian-atoms product example
/// needs as input.
pub fn bigex_factor_data(p: u32) -> Result<Class2Data> {
    let pos = |i: usize, j: usize| match (i, j) {
        (0, 1) => 0,
        (0, 2) => 1,
        (1, 2) => 2,
        _ => unreachable!(),
    };
    let mut entries = Vec::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            entries.push(((i, j), unit(3, pos(i, j), 1)));
        }
    }
    Class2Data::new(p, 3, 3, &entries, None)
}

// ---------------------------------------------------------------------------
// Group builders
// ---------------------------------------------------------------------------

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(CdError::InconsistentInput("cyclic group needs n >= 1".into()));
    }
    if n == 1 {
        return FiniteGroup::from_permutations(&[]);
    }
    let cycle: Vec<usize> = (1..n).chain([0]).collect();
    FiniteGroup::from_permutations(&[cycle])
}

pub fn elementary_abelian(p: u32, k: u32) -> Result<FiniteGroup> {
    gf::check_prime(p)?;
    let p = p as usize;
    let k = k as usize;
    let degree = p * k;
    let gens: Vec<Vec<usize>> = (0..k)
        .map(|block| {
            (0..degree)
                .map(|i| {
                    if i / p == block {
                        block * p + (i % p + 1) % p
                    } else {
                        i
                    }
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_permutations(&gens)
}

/// Symmetries of the n-gon, order 2n.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(CdError::InconsistentInput("dihedral needs n >= 3".into()));
    }
    let r: Vec<usize> = (1..n).chain([0]).collect();
    let s: Vec<usize> = (0..n).rev().collect();
    FiniteGroup::from_permutations(&[r, s])
}

/// Generalized quaternion group of the given 2-power order, as its right
/// regular representation.
pub fn quaternion(order: usize) -> Result<FiniteGroup> {
    if order < 8 || !order.is_power_of_two() {
        return Err(CdError::InconsistentInput(format!(
            "quaternion order must be a 2-power >= 8, got {order}"
        )));
    }
    let m = order / 2; // order of the cyclic part
    let idx = |j: usize, eps: usize| j + eps * m;
    let mut mul_a = vec![0usize; order];
    let mut mul_b = vec![0usize; order];
    for j in 0..m {
        mul_a[idx(j, 0)] = idx((j + 1) % m, 0);
        mul_a[idx(j, 1)] = idx((j + m - 1) % m, 1);
        mul_b[idx(j, 0)] = idx(j, 1);
        mul_b[idx(j, 1)] = idx((j + m / 2) % m, 0);
    }
    let g = FiniteGroup::from_permutations(&[mul_a, mul_b])?;
    debug_assert_eq!(g.order(), order);
    Ok(g)
}

/// Semidihedral group of 2-power order >= 16, acting on Z/2^(k-1).
pub fn semidihedral(order: usize) -> Result<FiniteGroup> {
    two_group_by_multiplier(order, |half| half / 2 - 1)
}

/// Modular (quasi-dihedral relative) 2-group of order >= 16.
pub fn modular2(order: usize) -> Result<FiniteGroup> {
    two_group_by_multiplier(order, |half| half / 2 + 1)
}

fn two_group_by_multiplier(order: usize, mult: impl Fn(usize) -> usize) -> Result<FiniteGroup> {
    if order < 16 || !order.is_power_of_two() {
        return Err(CdError::InconsistentInput(format!(
            "order must be a 2-power >= 16, got {order}"
        )));
    }
    let half = order / 2;
    let m = mult(half);
    let r: Vec<usize> = (0..half).map(|i| (i + 1) % half).collect();
    let s: Vec<usize> = (0..half).map(|i| i * m % half).collect();
    let g = FiniteGroup::from_permutations(&[r, s])?;
    debug_assert_eq!(g.order(), order);
    Ok(g)
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    match n {
        0 | 1 => cyclic(1),
        2 => cyclic(2),
        _ => {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (1..n).chain([0]).collect();
            FiniteGroup::from_permutations(&[swap, cycle])
        }
    }
}

/// Extraspecial group of order p^3. Plus is exponent p (dihedral at p = 2)
/// via class-2 data; minus for odd p is the exponent-p^2 group realized by
/// permutations of Z/p^2 (translation and multiplication by 1 + p).
pub fn extraspecial(p: u32, variant: Variant) -> Result<FiniteGroup> {
    gf::check_prime(p)?;
    match (p, variant) {
        (2, Variant::Plus) => FiniteGroup::from_class2_data(extraspecial_plus_data(2)?),
        (2, Variant::Minus) => FiniteGroup::from_class2_data(quaternion8_data()?),
        (_, Variant::Plus) => FiniteGroup::from_class2_data(extraspecial_plus_data(p)?),
        (_, Variant::Minus) => {
            let n = (p * p) as usize;
            let x: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let y: Vec<usize> = (0..n).map(|i| i * (1 + p as usize) % n).collect();
            let g = FiniteGroup::from_permutations(&[x, y])?;
            debug_assert_eq!(g.order(), (p * p * p) as usize);
            Ok(g)
        }
    }
}

pub fn heisenberg(p: u32, n: usize) -> Result<FiniteGroup> {
    FiniteGroup::from_class2_data(heisenberg_data(p, n)?)
}

/// Matrix-backend cross-check of the class-2 translation: 3x3 unitriangular
/// over GF(p^n) embedded as 3n x 3n matrices over GF(p) via the regular
/// representation of the field.
pub fn heisenberg_matrix(p: u32, n: usize) -> Result<FiniteGroup> {
    let field = ExtField::new(p, n)?;
    let dim = 3 * n;
    // multiplication-by-c matrix in the theta basis
    let mul_matrix = |c: &[u8]| -> Vec<Vec<u8>> {
        (0..n)
            .map(|col| {
                let mut basis = vec![0u8; n];
                basis[col] = 1;
                field.mul(c, &basis)
            })
            .collect()
    };
    let place = |mat: &mut Vec<u8>, block_r: usize, block_c: usize, m: &[Vec<u8>]| {
        for (col, colv) in m.iter().enumerate() {
            for (row, &v) in colv.iter().enumerate() {
                mat[(block_r * n + row) * dim + (block_c * n + col)] = v;
            }
        }
    };
    let identity = |dimension: usize| -> Vec<u8> {
        let mut m = vec![0u8; dimension * dimension];
        for i in 0..dimension {
            m[i * dimension + i] = 1;
        }
        m
    };
    let mut gens = Vec::new();
    for i in 0..n {
        let c = field.basis_power(i);
        let mc = mul_matrix(&c);
        let mut a = identity(dim);
        place(&mut a, 1, 0, &mc);
        gens.push(a);
        let mut b = identity(dim);
        place(&mut b, 2, 1, &mc);
        gens.push(b);
    }
    FiniteGroup::from_matrices_gfp(p, dim, &gens)
}

pub fn width2_abelian(p: u32) -> Result<FiniteGroup> {
    FiniteGroup::from_class2_data(width2_abelian_data(p)?)
}

pub fn bigex(p: u32) -> Result<FiniteGroup> {
    FiniteGroup::from_class2_data(bigex_data(p)?)
}

pub fn bigex2(p: u32) -> Result<FiniteGroup> {
    FiniteGroup::from_class2_data(bigex2_data(p)?)
}

pub fn bigex_factor(p: u32) -> Result<FiniteGroup> {
    FiniteGroup::from_class2_data(bigex_factor_data(p)?)
}

// ---------------------------------------------------------------------------
// Construction specs and the catalog
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionSpec {
    Cyclic { n: usize },
    ElementaryAbelian { p: u32, k: u32 },
    Dihedral { n: usize },
    Quaternion { order: usize },
    Semidihedral { order: usize },
    Modular2 { order: usize },
    Symmetric { n: usize },
    Extraspecial { p: u32, variant: Variant },
    Heisenberg { p: u32, n: usize },
    Width2Abelian { p: u32 },
    Bigex { p: u32 },
    Bigex2 { p: u32 },
    BigexFactor { p: u32 },
    DirectProduct { left: Box<ConstructionSpec>, right: Box<ConstructionSpec> },
    CentralProduct {
        left: Box<ConstructionSpec>,
        right: Box<ConstructionSpec>,
        left_center_gens: Vec<usize>,
        right_center_gens: Vec<usize>,
    },
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ConstructionSpec::*;
        match self {
            Cyclic { n } => write!(f, "cyclic({n})"),
            ElementaryAbelian { p, k } => write!(f, "elementary_abelian({p}^{k})"),
            Dihedral { n } => write!(f, "dihedral({n})"),
            Quaternion { order } => write!(f, "quaternion({order})"),
            Semidihedral { order } => write!(f, "semidihedral({order})"),
            Modular2 { order } => write!(f, "modular({order})"),
            Symmetric { n } => write!(f, "symmetric({n})"),
            Extraspecial { p, variant } => write!(f, "extraspecial({p}, {variant})"),
            Heisenberg { p, n } => write!(f, "heisenberg({p}, {n})"),
            Width2Abelian { p } => write!(f, "width2_abelian({p})"),
            Bigex { p } => write!(f, "bigex({p})"),
            Bigex2 { p } => write!(f, "bigex2({p})"),
            BigexFactor { p } => write!(f, "bigex_factor({p})"),
            DirectProduct { left, right } => write!(f, "{left} x {right}"),
            CentralProduct { left, right, .. } => write!(f, "central_product({left}, {right})"),
        }
    }
}

impl ConstructionSpec {
    /// Expanded order, when cheap to predict (central products need building).
    pub fn order_hint(&self) -> Option<u128> {
        use ConstructionSpec::*;
        Some(match self {
            Cyclic { n } => *n as u128,
            ElementaryAbelian { p, k } => (*p as u128).pow(*k),
            Dihedral { n } => 2 * *n as u128,
            Quaternion { order } | Semidihedral { order } | Modular2 { order } => *order as u128,
            Symmetric { n } => (1..=*n as u128).product(),
            Extraspecial { p, .. } => (*p as u128).pow(3),
            Heisenberg { p, n } => (*p as u128).pow(3 * *n as u32),
            Width2Abelian { p } => (*p as u128).pow(8),
            Bigex { p } | Bigex2 { p } => (*p as u128).pow(9),
            BigexFactor { p } => (*p as u128).pow(6),
            DirectProduct { left, right } => left.order_hint()? * right.order_hint()?,
            CentralProduct { .. } => return None,
        })
    }

    /// Class-2 presentation, for the constructions that have one.
    pub fn class2_data(&self) -> Option<Result<Class2Data>> {
        use ConstructionSpec::*;
        match self {
            Extraspecial { p: 2, variant: Variant::Plus } => Some(extraspecial_plus_data(2)),
            Extraspecial { p: 2, variant: Variant::Minus } => Some(quaternion8_data()),
            Extraspecial { p, variant: Variant::Plus } => Some(extraspecial_plus_data(*p)),
            Heisenberg { p, n } => Some(heisenberg_data(*p, *n)),
            Width2Abelian { p } => Some(width2_abelian_data(*p)),
            Bigex { p } => Some(bigex_data(*p)),
            Bigex2 { p } => Some(bigex2_data(*p)),
            BigexFactor { p } => Some(bigex_factor_data(*p)),
            _ => None,
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        use ConstructionSpec::*;
        match self {
            Cyclic { n } => cyclic(*n),
            ElementaryAbelian { p, k } => elementary_abelian(*p, *k),
            Dihedral { n } => dihedral(*n),
            Quaternion { order } => quaternion(*order),
            Semidihedral { order } => semidihedral(*order),
            Modular2 { order } => modular2(*order),
            Symmetric { n } => symmetric(*n),
            Extraspecial { p, variant } => extraspecial(*p, *variant),
            Heisenberg { p, n } => heisenberg(*p, *n),
            Width2Abelian { p } => width2_abelian(*p),
            Bigex { p } => bigex(*p),
            Bigex2 { p } => bigex2(*p),
            BigexFactor { p } => bigex_factor(*p),
            DirectProduct { left, right } => {
                FiniteGroup::direct_product(left.build()?, right.build()?)
            }
            CentralProduct { left, right, left_center_gens, right_center_gens } => {
                FiniteGroup::central_product(
                    left.build()?,
                    right.build()?,
                    left_center_gens,
                    right_center_gens,
                )
            }
        }
    }
}

/// The named example constructions at the sizes the verification suites
/// exercise. Entries too large for an element table are analyzed through
/// the subspace fast path.
pub fn standard_corpus() -> Vec<ConstructionSpec> {
    use ConstructionSpec::*;
    let mut out = Vec::new();
    for p in [2u32, 3, 5] {
        out.push(Extraspecial { p, variant: Variant::Plus });
        out.push(Extraspecial { p, variant: Variant::Minus });
    }
    for (p, n) in [(2u32, 1usize), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
        out.push(Heisenberg { p, n });
    }
    for p in [2u32, 3] {
        out.push(Width2Abelian { p });
        out.push(BigexFactor { p });
    }
    for p in [2u32, 3, 5] {
        out.push(Bigex { p });
        out.push(Bigex2 { p });
    }
    out
}

/// Deterministic list of catalog groups with order at most `max_order`:
/// the classical families, the example constructions that fit, and direct
/// products of a nonabelian entry with any entry.
pub fn catalog(max_order: usize) -> Vec<ConstructionSpec> {
    use ConstructionSpec::*;
    let max = max_order as u128;
    let mut base: Vec<ConstructionSpec> = Vec::new();
    for n in 1..=max_order {
        base.push(Cyclic { n });
    }
    for p in [2u32, 3, 5, 7, 11] {
        for k in 2..=20 {
            if (p as u128).pow(k) <= max {
                base.push(ElementaryAbelian { p, k });
            }
        }
    }
    for n in 3..=max_order / 2 {
        base.push(Dihedral { n });
    }
    for k in 3..=20 {
        let order = 1usize << k;
        if order as u128 > max {
            break;
        }
        base.push(Quaternion { order });
        if k >= 4 {
            base.push(Semidihedral { order });
            base.push(Modular2 { order });
        }
    }
    for n in 3..=5 {
        if (1..=n as u128).product::<u128>() <= max {
            base.push(Symmetric { n });
        }
    }
    for p in [2u32, 3, 5] {
        if (p as u128).pow(3) <= max {
            base.push(Extraspecial { p, variant: Variant::Plus });
            base.push(Extraspecial { p, variant: Variant::Minus });
        }
        for n in 1..=4 {
            if (p as u128).pow(3 * n) <= max && ExtField::new(p, n as usize).is_ok() {
                base.push(Heisenberg { p, n: n as usize });
            }
        }
        if (p as u128).pow(8) <= max {
            base.push(Width2Abelian { p });
        }
        if (p as u128).pow(9) <= max {
            base.push(Bigex { p });
            base.push(Bigex2 { p });
        }
        if (p as u128).pow(6) <= max {
            base.push(BigexFactor { p });
        }
    }

    let nonabelian = |spec: &ConstructionSpec| -> bool {
        match spec {
            Cyclic { .. } | ElementaryAbelian { .. } => false,
            Symmetric { n } => *n >= 3,
            _ => true,
        }
    };
    let mut out = base.clone();
    for (i, a) in base.iter().enumerate() {
        if !nonabelian(a) {
            continue;
        }
        let oa = a.order_hint().unwrap();
        for (j, b) in base.iter().enumerate() {
            if nonabelian(b) && j < i {
                continue; // unordered pairs once
            }
            let ob = b.order_hint().unwrap();
            if ob >= 2 && oa * ob <= max {
                out.push(DirectProduct { left: Box::new(a.clone()), right: Box::new(b.clone()) });
            }
        }
    }
    out
}
