//! The skew group algebra of the variable torus by its q-shift lattice.
//!
//! For every variable `x[k,i]` there is an invertible shift `d[k,i]` with
//! the commutation law
//!
//! `d[k,i] x[l,j] = q^{-W [k=l][i=j]} x[l,j] d[k,i]`,
//!
//! `W` being the algebra's q-weight (1 for the OGZ construction, m for the
//! power-map source torus). Elements are stored in left-canonical form
//! `sum_phi c_phi * d^phi` with rational-function coefficients on the left;
//! multiplying pushes shifts past coefficients via
//! `d^phi * c = shift_phi(c) * d^phi`, where `shift_phi` scales each
//! variable `x_v` by `q^{-W phi_v}`.
//!
//! [`ShiftRule::BrokenAbsolute`] replaces `phi_v` by `|phi_v|` in the shift.
//! That variant is *wrong on purpose*: it agrees with the standard rule on
//! non-negative shift vectors but destroys associativity as soon as an
//! inverse shift meets a variable. The mutation-sensitivity suite uses it to
//! prove the verification machinery can actually fail.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::laurent::{Expo, MonomialMap, RatFunc, VarIndex, VarTable};
use crate::reflection::ProductGroupElement;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ShiftRule {
    Standard,
    BrokenAbsolute,
}

/// Multiplication context: the variable table, the q-weight of the shift
/// action, and the shift rule (standard unless a suite asks for the broken
/// variant).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewAlgebra {
    table: Arc<VarTable>,
    q_weight: u32,
    rule: ShiftRule,
}

impl SkewAlgebra {
    pub fn new(table: &Arc<VarTable>, q_weight: u32) -> Self {
        assert!(q_weight >= 1, "q-weight must be positive");
        SkewAlgebra {
            table: Arc::clone(table),
            q_weight,
            rule: ShiftRule::Standard,
        }
    }

    pub fn with_broken_shift(table: &Arc<VarTable>, q_weight: u32) -> Self {
        SkewAlgebra {
            rule: ShiftRule::BrokenAbsolute,
            ..Self::new(table, q_weight)
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn q_weight(&self) -> u32 {
        self.q_weight
    }

    pub fn rule(&self) -> ShiftRule {
        self.rule
    }

    /// The coefficient substitution implementing `d^phi * c = shift(c) * d^phi`.
    fn shift_map(&self, phi: &Expo) -> MonomialMap {
        let m = self.table.modulus();
        let w = self.q_weight as i64;
        let entries = (0..self.table.total_vars())
            .map(|idx| {
                let mut e = phi.get(idx) as i64;
                if self.rule == ShiftRule::BrokenAbsolute {
                    e = e.abs();
                }
                (Scalar::q_pow(m, -w * e), self.table.unflat(idx))
            })
            .collect();
        MonomialMap::new(&self.table, entries).expect("q powers are nonzero")
    }

    fn shift(&self, phi: &Expo, c: &RatFunc) -> RatFunc {
        if phi.is_zero() {
            return c.clone();
        }
        c.substitute(&self.shift_map(phi)).expect("scalar twist is bijective")
    }
}

/// An element of the skew group algebra in left-canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewElement {
    alg: SkewAlgebra,
    terms: BTreeMap<Expo, RatFunc>,
}

impl SkewElement {
    pub fn zero(alg: &SkewAlgebra) -> Self {
        SkewElement { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &SkewAlgebra) -> Self {
        Self::from_coeff(alg, RatFunc::one(alg.table()))
    }

    /// A pure coefficient, shift part trivial.
    pub fn from_coeff(alg: &SkewAlgebra, c: RatFunc) -> Self {
        Self::monomial(alg, c, Expo::zero(alg.table().total_vars()))
    }

    /// `c * d^phi`.
    pub fn monomial(alg: &SkewAlgebra, c: RatFunc, phi: Expo) -> Self {
        assert_eq!(phi.len(), alg.table().total_vars(), "shift vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(phi, c);
        }
        SkewElement { alg: alg.clone(), terms }
    }

    pub fn delta_pow(alg: &SkewAlgebra, v: VarIndex, e: i32) -> Self {
        let idx = alg.table().flat(v);
        Self::monomial(
            alg,
            RatFunc::one(alg.table()),
            Expo::unit(alg.table().total_vars(), idx, e),
        )
    }

    pub fn delta(alg: &SkewAlgebra, v: VarIndex) -> Self {
        Self::delta_pow(alg, v, 1)
    }

    /// Builds `sum_i d^{phi_i} * c_i` (coefficients on the *right*),
    /// converting to left-canonical form through the shift law.
    pub fn from_right_terms(alg: &SkewAlgebra, terms: Vec<(Expo, RatFunc)>) -> Self {
        let mut out = Self::zero(alg);
        for (phi, c) in terms {
            out.insert_add(phi.clone(), alg.shift(&phi, &c));
        }
        out
    }

    pub fn algebra(&self) -> &SkewAlgebra {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Left coefficient of `d^phi` (zero when absent).
    pub fn coeff(&self, phi: &Expo) -> RatFunc {
        self.terms
            .get(phi)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(self.alg.table()))
    }

    /// The left-canonical terms `(phi, c_phi)` in increasing shift order.
    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &RatFunc)> {
        self.terms.iter()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.alg, other.alg, "mixed skew algebras");
    }

    fn insert_add(&mut self, phi: Expo, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(phi) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (phi, c) in &other.terms {
            out.insert_add(phi.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SkewElement {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(phi, c)| (phi.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(&self.alg);
        for (phi, c) in &self.terms {
            for (psi, d) in &other.terms {
                out.insert_add(phi.add(psi), c.mul(&self.alg.shift(phi, d)));
            }
        }
        out
    }

    /// Left multiplication by a coefficient.
    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero(&self.alg);
        for (phi, d) in &self.terms {
            out.insert_add(phi.clone(), c.mul(d));
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.alg);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The group action extended from coefficients to shifts: coefficients
    /// transform as rational functions, and `d[k,i]` goes to `d[k,sigma_k(i)]`
    /// with no scalar factor, which preserves the commutation law.
    pub fn group_act(&self, g: &ProductGroupElement) -> Self {
        let table = self.alg.table();
        let mut out = Self::zero(&self.alg);
        for (phi, c) in &self.terms {
            let mut moved = Expo::zero(table.total_vars());
            for idx in 0..table.total_vars() {
                let e = phi.get(idx);
                if e != 0 {
                    let v = table.unflat(idx);
                    let sigma = g.factor(v.row).perm();
                    let target = VarIndex::new(v.row, sigma[(v.col - 1) as usize] as u32 + 1);
                    moved.set(table.flat(target), e);
                }
            }
            out.insert_add(moved, g.act_on_ratfunc(table, c));
        }
        out
    }
}

impl fmt::Display for SkewElement {
    /// Terms in decreasing shift order: `(c) * d[1,1]^2 d[1,2]^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let table = self.alg.table();
        let rendered: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(phi, c)| {
                let mut deltas = Vec::new();
                for idx in 0..table.total_vars() {
                    let e = phi.get(idx);
                    if e != 0 {
                        let v = table.unflat(idx);
                        if e == 1 {
                            deltas.push(format!("d[{},{}]", v.row, v.col));
                        } else {
                            deltas.push(format!("d[{},{}]^{}", v.row, v.col, e));
                        }
                    }
                }
                if deltas.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}) * {}", deltas.join(" "))
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}
