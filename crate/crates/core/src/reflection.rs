//! The complex reflection groups G(m, p, n) (p dividing m): monomial n x n
//! matrices whose nonzero entries are m-th roots of unity multiplying to a
//! (m/p)-th root of unity. An element is stored as a permutation together
//! with the exponent vector of the diagonal part, with the product law
//!
//! `(sigma, a) * (tau, b) = (sigma tau, (a_{tau(i)} + b_i)_i)`,
//!
//! which makes `act_on_poly` (substitution `x_i -> zeta^{a_i} x_{sigma(i)}`)
//! a left action. Rows of a variable table carry independent copies of such
//! groups; [`ProductGroupElement`] acts row by row.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::{
    elementary_symmetric, LaurentPoly, MonomialMap, RatFunc, VarIndex, VarTable,
};
use crate::scalar::Scalar;

/// One element of G(m, p, n). `perm` is the permutation in image form
/// (0-based: i maps to perm[i]); `exps` are the diagonal exponents, reduced
/// modulo m, with sum divisible by p.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElement {
    m: u32,
    p: u32,
    perm: Vec<usize>,
    exps: Vec<u32>,
}

impl GroupElement {
    /// Validating constructor. `exps` entries are taken modulo m; the
    /// divisibility p | m and the determinant condition
    /// `sum(exps) = 0 mod p` are enforced.
    pub fn make(m: u32, p: u32, perm: Vec<usize>, exps: Vec<i64>) -> Result<Self> {
        if m == 0 || p == 0 || m % p != 0 {
            return Err(Error::InvalidGroupElement(format!(
                "parameters m={m}, p={p}: need p >= 1 dividing m"
            )));
        }
        let n = perm.len();
        if exps.len() != n || n == 0 {
            return Err(Error::InvalidGroupElement(format!(
                "permutation has {} entries but exponents {}",
                n,
                exps.len()
            )));
        }
        let mut seen = vec![false; n];
        for &img in &perm {
            if img >= n || seen[img] {
                return Err(Error::InvalidGroupElement(format!(
                    "not a permutation of 0..{n}: {perm:?}"
                )));
            }
            seen[img] = true;
        }
        let exps: Vec<u32> = exps
            .iter()
            .map(|&e| e.rem_euclid(m as i64) as u32)
            .collect();
        let total: u64 = exps.iter().map(|&e| e as u64).sum();
        if total % p as u64 != 0 {
            return Err(Error::InvalidGroupElement(format!(
                "exponent sum {total} not divisible by p={p}"
            )));
        }
        Ok(GroupElement { m, p, perm, exps })
    }

    pub fn identity(m: u32, p: u32, n: usize) -> Self {
        GroupElement {
            m,
            p,
            perm: (0..n).collect(),
            exps: vec![0; n],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn index_p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
            && self.exps.iter().all(|&e| e == 0)
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            (self.m, self.p, self.perm.len()),
            (other.m, other.p, other.perm.len()),
            "mixed reflection groups"
        );
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let n = self.perm.len();
        let perm = (0..n).map(|i| self.perm[other.perm[i]]).collect();
        let exps = (0..n)
            .map(|i| (self.exps[other.perm[i]] + other.exps[i]) % self.m)
            .collect();
        GroupElement { m: self.m, p: self.p, perm, exps }
    }

    pub fn inverse(&self) -> Self {
        let n = self.perm.len();
        let mut inv_perm = vec![0usize; n];
        for (i, &j) in self.perm.iter().enumerate() {
            inv_perm[j] = i;
        }
        let exps = (0..n)
            .map(|i| (self.m - self.exps[inv_perm[i]]) % self.m)
            .collect();
        GroupElement { m: self.m, p: self.p, perm: inv_perm, exps }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.m, self.p, self.perm.len());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The substitution `x[row, i] -> zeta^{a_i} x[row, sigma(i)]` on one
    /// row of the table (other rows untouched). Requires the row size to
    /// match the degree and the table modulus to match m.
    pub fn monomial_map(&self, table: &Arc<VarTable>, row: u32) -> MonomialMap {
        assert_eq!(
            table.row_size(row) as usize,
            self.perm.len(),
            "row size does not match group degree"
        );
        assert_eq!(table.modulus(), self.m, "table modulus does not match group");
        let mut entries = Vec::with_capacity(table.total_vars());
        for idx in 0..table.total_vars() {
            let v = table.unflat(idx);
            if v.row == row {
                let i = (v.col - 1) as usize;
                entries.push((
                    Scalar::zeta_pow(self.m, self.exps[i] as i64),
                    VarIndex::new(row, (self.perm[i] + 1) as u32),
                ));
            } else {
                entries.push((Scalar::one(self.m), v));
            }
        }
        MonomialMap::new(table, entries).expect("roots of unity are nonzero")
    }

    pub fn act_on_poly(&self, table: &Arc<VarTable>, row: u32, f: &LaurentPoly) -> LaurentPoly {
        f.substitute(&self.monomial_map(table, row))
            .expect("bijective monomial action")
    }

    pub fn act_on_ratfunc(&self, table: &Arc<VarTable>, row: u32, f: &RatFunc) -> RatFunc {
        f.substitute(&self.monomial_map(table, row))
            .expect("bijective monomial action")
    }

    pub fn fixes_poly(&self, table: &Arc<VarTable>, row: u32, f: &LaurentPoly) -> bool {
        self.act_on_poly(table, row, f) == *f
    }
}

impl fmt::Display for GroupElement {
    /// 1-based rendering: `perm=[2,1] exps=[1,3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm: Vec<usize> = self.perm.iter().map(|&i| i + 1).collect();
        write!(f, "perm={:?} exps={:?}", perm, self.exps)
    }
}

/// |G(m, p, n)| = m^n n! / p.
pub fn group_order(m: u32, p: u32, n: usize) -> u128 {
    let mut order: u128 = 1;
    for _ in 0..n {
        order *= m as u128;
    }
    for k in 2..=n as u128 {
        order *= k;
    }
    order / p as u128
}

/// A standard generating set: adjacent transpositions; the diagonal
/// reflection diag(zeta^p, 1, ..., 1) when p < m; and, when p > 1 and the
/// group permits, the twisted transposition ((1 2), diag(zeta, zeta^-1)).
/// The trivial groups G(1,1,n>=2) come out as pure symmetric groups and
/// G(m,m,1) as the empty set.
pub fn generating_set(m: u32, p: u32, n: usize) -> Vec<GroupElement> {
    assert!(p >= 1 && m % p == 0 && n >= 1, "invalid G(m,p,n) parameters");
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        gens.push(GroupElement { m, p, perm, exps: vec![0; n] });
    }
    if p < m {
        let mut exps = vec![0u32; n];
        exps[0] = p;
        gens.push(GroupElement { m, p, perm: (0..n).collect(), exps });
    }
    if p > 1 && n >= 2 {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, 1);
        let mut exps = vec![0u32; n];
        exps[0] = 1;
        exps[1] = m - 1;
        gens.push(GroupElement { m, p, perm, exps });
    }
    gens
}

/// Breadth-first closure of the generating set. `max` guards the size
/// ([`Error::SizeGuard`] past it). The result is sorted, deterministic.
pub fn enumerate_group(m: u32, p: u32, n: usize, max: usize) -> Result<Vec<GroupElement>> {
    let expected = group_order(m, p, n);
    if expected > max as u128 {
        return Err(Error::SizeGuard(format!(
            "|G({m},{p},{n})| = {expected} exceeds cap {max}"
        )));
    }
    let gens = generating_set(m, p, n);
    let mut seen = std::collections::BTreeSet::new();
    let mut frontier = vec![GroupElement::identity(m, p, n)];
    seen.insert(frontier[0].clone());
    while let Some(g) = frontier.pop() {
        for h in &gens {
            let next = g.mul(h);
            if seen.insert(next.clone()) {
                if seen.len() > max {
                    return Err(Error::SizeGuard(format!(
                        "group closure exceeded cap {max}"
                    )));
                }
                frontier.push(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The coset data for G(m,1,n) over G(m,p,n): the representative
/// alpha = diag(zeta, 1, ..., 1) whose powers alpha^j, j = 0..p-1, exhaust
/// the quotient, and the character value epsilon = zeta^(m/p), a primitive
/// p-th root of unity.
pub fn coset_rep_and_epsilon(m: u32, p: u32, n: usize) -> (GroupElement, Scalar) {
    assert!(p >= 1 && m % p == 0 && n >= 1);
    let mut exps = vec![0u32; n];
    exps[0] = 1 % m;
    let alpha = GroupElement { m, p: 1, perm: (0..n).collect(), exps };
    (alpha, Scalar::zeta_pow(m, (m / p) as i64))
}

/// The invariant-ring generators attached to row k: the elementary
/// symmetric polynomials of the m-th powers in degrees 1..r_k-1, and the
/// (m/p)-th power of the full product in degree r_k. Returns (label, poly)
/// pairs, exactly r_k of them.
pub fn gamma_generators(
    table: &Arc<VarTable>,
    p: u32,
    k: u32,
) -> Result<Vec<(String, LaurentPoly)>> {
    let m = table.modulus();
    if p == 0 || m % p != 0 {
        return Err(Error::InvalidSpec(format!(
            "gamma generators need p dividing m, got m={m}, p={p}"
        )));
    }
    let r = table.row_size(k);
    let powers: Vec<LaurentPoly> = table
        .row_vars(k)
        .map(|v| LaurentPoly::var_pow(table, v, m as i32))
        .collect();
    let mut out = Vec::with_capacity(r as usize);
    for d in 1..r {
        out.push((
            format!("gamma[{k},{d}]"),
            elementary_symmetric(&powers, d as usize)?,
        ));
    }
    let product = table
        .row_vars(k)
        .fold(LaurentPoly::one(table), |acc, v| {
            acc.mul(&LaurentPoly::var(table, v))
        });
    out.push((format!("gamma[{k},{r}]"), product.pow(m / p)));
    Ok(out)
}

/// One group element per row of a table, acting on all rows at once.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProductGroupElement {
    factors: Vec<GroupElement>,
}

impl ProductGroupElement {
    pub fn new(table: &Arc<VarTable>, factors: Vec<GroupElement>) -> Result<Self> {
        if factors.len() != table.num_rows() {
            return Err(Error::InvalidGroupElement(format!(
                "need one factor per row ({}), got {}",
                table.num_rows(),
                factors.len()
            )));
        }
        for (k, g) in factors.iter().enumerate() {
            if g.degree() != table.row_size(k as u32 + 1) as usize
                || g.modulus() != table.modulus()
            {
                return Err(Error::InvalidGroupElement(format!(
                    "factor for row {} has degree {} over modulus {}",
                    k + 1,
                    g.degree(),
                    g.modulus()
                )));
            }
        }
        Ok(ProductGroupElement { factors })
    }

    pub fn identity(table: &Arc<VarTable>, p: u32) -> Self {
        let factors = (1..=table.num_rows() as u32)
            .map(|k| {
                GroupElement::identity(table.modulus(), p, table.row_size(k) as usize)
            })
            .collect();
        ProductGroupElement { factors }
    }

    pub fn factors(&self) -> &[GroupElement] {
        &self.factors
    }

    pub fn factor(&self, k: u32) -> &GroupElement {
        &self.factors[(k - 1) as usize]
    }

    pub fn mul(&self, other: &Self) -> Self {
        ProductGroupElement {
            factors: self
                .factors
                .iter()
                .zip(&other.factors)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        ProductGroupElement {
            factors: self.factors.iter().map(|g| g.inverse()).collect(),
        }
    }

    pub fn monomial_map(&self, table: &Arc<VarTable>) -> MonomialMap {
        let mut entries = Vec::with_capacity(table.total_vars());
        for idx in 0..table.total_vars() {
            let v = table.unflat(idx);
            let g = &self.factors[(v.row - 1) as usize];
            let i = (v.col - 1) as usize;
            entries.push((
                Scalar::zeta_pow(table.modulus(), g.exps()[i] as i64),
                VarIndex::new(v.row, (g.perm()[i] + 1) as u32),
            ));
        }
        MonomialMap::new(table, entries).expect("roots of unity are nonzero")
    }

    pub fn act_on_poly(&self, table: &Arc<VarTable>, f: &LaurentPoly) -> LaurentPoly {
        f.substitute(&self.monomial_map(table))
            .expect("bijective monomial action")
    }

    pub fn act_on_ratfunc(&self, table: &Arc<VarTable>, f: &RatFunc) -> RatFunc {
        f.substitute(&self.monomial_map(table))
            .expect("bijective monomial action")
    }
}

impl fmt::Display for ProductGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .enumerate()
            .map(|(k, g)| format!("row {}: {}", k + 1, g))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Generators of the product group: each row's generators, identity in the
/// other slots. Each is tagged with the row (1-based) it moves.
pub fn product_generating_set(
    table: &Arc<VarTable>,
    p: u32,
) -> Vec<(u32, ProductGroupElement)> {
    let m = table.modulus();
    let mut out = Vec::new();
    for k in 1..=table.num_rows() as u32 {
        for g in generating_set(m, p, table.row_size(k) as usize) {
            let factors = (1..=table.num_rows() as u32)
                .map(|l| {
                    if l == k {
                        g.clone()
                    } else {
                        GroupElement::identity(m, p, table.row_size(l) as usize)
                    }
                })
                .collect();
            out.push((k, ProductGroupElement { factors }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::test_support::{sample_poly, tbl, x};

    fn enumerate(m: u32, p: u32, n: usize) -> Vec<GroupElement> {
        enumerate_group(m, p, n, 100_000).unwrap()
    }

    #[test]
    fn orders_match_closed_form() {
        // |G(m,p,n)| = m^n n!/p over a grid of parameters.
        for &(m, p, n, want) in &[
            (1u32, 1u32, 1usize, 1u128),
            (1, 1, 3, 6),
            (2, 1, 2, 8),
            (2, 2, 2, 4),
            (3, 1, 2, 18),
            (3, 3, 2, 6),
            (4, 2, 2, 16),
            (2, 2, 3, 24),
            (6, 3, 2, 24),
            (4, 4, 1, 1),
            (4, 2, 1, 2),
        ] {
            assert_eq!(group_order(m, p, n), want, "order formula {m},{p},{n}");
            let g = enumerate(m, p, n);
            assert_eq!(g.len() as u128, want, "enumeration size {m},{p},{n}");
        }
    }

    #[test]
    fn enumeration_is_closed_and_has_inverses() {
        for &(m, p, n) in &[(2u32, 2u32, 2usize), (3, 3, 2), (4, 2, 2), (2, 1, 3)] {
            let g = enumerate(m, p, n);
            let set: std::collections::BTreeSet<_> = g.iter().cloned().collect();
            for a in &g {
                assert!(set.contains(&a.inverse()), "inverse escapes {m},{p},{n}");
                for b in &g {
                    assert!(set.contains(&a.mul(b)), "product escapes {m},{p},{n}");
                }
            }
        }
    }

    #[test]
    fn constructor_validates() {
        assert!(GroupElement::make(4, 2, vec![0, 1], vec![1, 1]).is_ok());
        // Bad permutation.
        assert!(matches!(
            GroupElement::make(4, 2, vec![0, 0], vec![0, 0]),
            Err(Error::InvalidGroupElement(_))
        ));
        // Determinant condition: sum must be divisible by p.
        assert!(matches!(
            GroupElement::make(4, 2, vec![0, 1], vec![1, 0]),
            Err(Error::InvalidGroupElement(_))
        ));
        // p must divide m.
        assert!(matches!(
            GroupElement::make(4, 3, vec![0], vec![0]),
            Err(Error::InvalidGroupElement(_))
        ));
        // Negative exponents are reduced.
        let g = GroupElement::make(4, 2, vec![1, 0], vec![-1, 1]).unwrap();
        assert_eq!(g.exps(), &[3, 1]);
    }

    #[test]
    fn group_axioms_randomized() {
        let els = enumerate(4, 2, 2);
        let id = GroupElement::identity(4, 2, 2);
        for (i, a) in els.iter().enumerate() {
            assert_eq!(a.mul(&a.inverse()), id);
            assert_eq!(a.inverse().mul(a), id);
            for b in els.iter().skip(i % 3).step_by(5) {
                for c in els.iter().step_by(7) {
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                }
            }
        }
    }

    #[test]
    fn action_is_left_action_and_ring_map() {
        let t = tbl(&[3], 6);
        let els = enumerate(6, 3, 3);
        let f = sample_poly(&t, 7, 4);
        let g2 = sample_poly(&t, 8, 3);
        for a in els.iter().step_by(29) {
            for b in els.iter().step_by(37) {
                let lhs = a.act_on_poly(&t, 1, &b.act_on_poly(&t, 1, &f));
                let rhs = a.mul(b).act_on_poly(&t, 1, &f);
                assert_eq!(lhs, rhs, "left action law for {a}, {b}");
            }
            assert_eq!(
                a.act_on_poly(&t, 1, &f.mul(&g2)),
                a.act_on_poly(&t, 1, &f).mul(&a.act_on_poly(&t, 1, &g2))
            );
        }
    }

    #[test]
    fn action_pins() {
        // diag(zeta,1) sends x11 -> zeta x11; the transposition swaps.
        let t = tbl(&[2], 4);
        let d = GroupElement::make(4, 1, vec![0, 1], vec![1, 0]).unwrap();
        let got = d.act_on_poly(&t, 1, &x(&t, 1, 1));
        assert_eq!(got, x(&t, 1, 1).scale(&Scalar::zeta_pow(4, 1)));
        let s = GroupElement::make(4, 1, vec![1, 0], vec![0, 0]).unwrap();
        assert_eq!(s.act_on_poly(&t, 1, &x(&t, 1, 1)), x(&t, 1, 2));
        // A second row is untouched.
        let t2 = tbl(&[2, 1], 4);
        let s2 = GroupElement::make(4, 1, vec![1, 0], vec![0, 0]).unwrap();
        assert_eq!(s2.act_on_poly(&t2, 1, &x(&t2, 2, 1)), x(&t2, 2, 1));
    }

    #[test]
    fn gamma_generators_are_invariant() {
        // Every gamma generator of a row is fixed by every group generator
        // acting on that row; this is the defining property of the list.
        for &(m, p, r) in &[
            (2u32, 1u32, 2u32),
            (2, 2, 2),
            (3, 3, 2),
            (4, 2, 3),
            (6, 3, 2),
            (1, 1, 3),
        ] {
            let t = tbl(&[r], m.max(1));
            let gammas = gamma_generators(&t, p, 1).unwrap();
            assert_eq!(gammas.len() as u32, r, "count for m={m},p={p},r={r}");
            for g in generating_set(m, p, r as usize) {
                for (label, gamma) in &gammas {
                    assert!(
                        g.fixes_poly(&t, 1, gamma),
                        "{label} moved by {g} in G({m},{p},{r})"
                    );
                }
            }
        }
    }

    #[test]
    fn gamma_top_generator_shape() {
        // gamma[1,r] is the (m/p)-th power of the product of the row.
        let t = tbl(&[2], 4);
        let gammas = gamma_generators(&t, 2, 1).unwrap();
        let product = x(&t, 1, 1).mul(&x(&t, 1, 2));
        assert_eq!(gammas[1].1, product.pow(2));
        assert_eq!(gammas[1].0, "gamma[1,2]");
        // And gamma[1,1] = x11^4 + x12^4.
        let want = x(&t, 1, 1).pow(4).add(&x(&t, 1, 2).pow(4));
        assert_eq!(gammas[0].1, want);
    }

    #[test]
    fn coset_representatives_exhaust_quotient() {
        for &(m, p, n) in &[(2u32, 2u32, 2usize), (4, 2, 2), (6, 3, 2), (3, 1, 2)] {
            let (alpha, eps) = coset_rep_and_epsilon(m, p, n);
            // epsilon is a primitive p-th root of unity.
            assert!(eps.pow(p as i64).unwrap().is_one());
            for j in 1..p {
                assert!(!eps.pow(j as i64).unwrap().is_one(), "eps order < {p}");
            }
            // alpha^j lies in G(m,p,n) exactly when p | j.
            for j in 0..=p {
                let aj = alpha.pow(j);
                let in_subgroup = GroupElement::make(
                    m,
                    p,
                    aj.perm().to_vec(),
                    aj.exps().iter().map(|&e| e as i64).collect(),
                )
                .is_ok();
                assert_eq!(in_subgroup, j % p == 0, "coset membership at j={j}");
            }
        }
    }

    #[test]
    fn size_guard_trips() {
        assert!(matches!(
            enumerate_group(6, 1, 6, 100_000),
            Err(Error::SizeGuard(_))
        ));
    }

    #[test]
    fn product_group_acts_rowwise() {
        let t = tbl(&[2, 1], 4);
        let swap = GroupElement::make(4, 2, vec![1, 0], vec![0, 0]).unwrap();
        let twist = GroupElement::make(4, 2, vec![0], vec![2]).unwrap();
        let g = ProductGroupElement::new(&t, vec![swap, twist]).unwrap();
        let f = x(&t, 1, 1).mul(&x(&t, 2, 1));
        let got = g.act_on_poly(&t, &f);
        let want = x(&t, 1, 2).mul(&x(&t, 2, 1)).scale(&Scalar::zeta_pow(4, 2));
        assert_eq!(got, want);
        // Inverse undoes the action.
        assert_eq!(g.inverse().act_on_poly(&t, &got), f);
        // Generator list touches each row.
        let gens = product_generating_set(&t, 2);
        assert!(gens.iter().any(|(k, _)| *k == 1));
        assert!(gens.iter().any(|(k, _)| *k == 2));
        // Ratfunc action distributes over the quotient.
        let h = RatFunc::new(f.clone(), x(&t, 1, 2).add(&x(&t, 2, 1))).unwrap();
        let gh = g.act_on_ratfunc(&t, &h);
        let back = g.inverse().act_on_ratfunc(&t, &gh);
        assert_eq!(back, h);
    }

    #[test]
    fn rendering_is_one_based() {
        let g = GroupElement::make(3, 1, vec![2, 0, 1], vec![1, 0, 2]).unwrap();
        assert_eq!(g.to_string(), "perm=[3, 1, 2] exps=[1, 0, 2]");
    }
}
