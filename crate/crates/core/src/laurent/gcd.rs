//! Exact division and gcd for multivariate polynomials over the scalar
//! field.
//!
//! The gcd runs a primitive polynomial remainder sequence. Crucially it does
//! *not* work with coefficients in the rational-function field Q(zeta)(q):
//! there every q-polynomial is a unit, so content removal cannot see the
//! q-degree of coefficients and pseudo-remainders double it at every step.
//! Instead inputs are lifted to the ring Q(zeta)[q][x...] (clearing
//! q-denominators), and contents — including the q-content, the gcd of the
//! coefficient q-polynomials — are stripped after every pseudo-remainder.
//! Results are normalized to monomial-content-free polynomials with leading
//! coefficient 1, canonical up to the unit group of the Laurent ring.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Expo, LaurentPoly, VarTable};
use crate::scalar::{QPoly, Scalar};

/// Exact quotient `a / b`, or None when `b` does not divide `a`. Accepts
/// Laurent inputs; the quotient is Laurent in general.
pub fn div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    if a.is_zero() {
        return Some(LaurentPoly::zero(a.table()));
    }
    let (sa, pa) = a.monomial_split();
    let (sb, pb) = b.monomial_split();
    let q = poly_div_exact(&pa, &pb)?;
    let shift = sa.sub(&sb);
    Some(q.mul_monomial(&shift, &Scalar::one(a.modulus())))
}

/// Exact quotient for honest polynomials: repeatedly cancel the leading
/// term. Sound because grlex leading terms are multiplicative, so a leading
/// term that fails to divide proves indivisibility.
fn poly_div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    debug_assert!(a.is_polynomial() && b.is_polynomial());
    let table = a.table();
    let mut rem = a.clone();
    let mut quot = LaurentPoly::zero(table);
    let (eb, cb) = {
        let (e, c) = b.leading().expect("nonzero divisor");
        (e.clone(), c.clone())
    };
    let cb_inv = cb.inv().expect("nonzero leading coefficient");
    while !rem.is_zero() {
        let (er, cr) = {
            let (e, c) = rem.leading().unwrap();
            (e.clone(), c.clone())
        };
        let t = er.sub(&eb);
        if !t.is_nonnegative() {
            return None;
        }
        let tc = cr.mul(&cb_inv);
        let term = LaurentPoly::monomial(table, t, tc);
        quot = quot.add(&term);
        rem = rem.sub(&term.mul(b));
    }
    Some(quot)
}

/// Greatest common divisor of two Laurent polynomials, canonicalized to a
/// monomial-content-free polynomial with leading coefficient 1. The gcd of
/// anything with zero is the other argument (canonicalized); coprime inputs
/// and units give 1.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return canonical_unit_form(b);
    }
    if b.is_zero() {
        return canonical_unit_form(a);
    }
    // Cheap exits before lifting: unit arguments, equal arguments.
    if a.as_monomial().is_some() || b.as_monomial().is_some() {
        return LaurentPoly::one(a.table());
    }
    let (_, pa) = a.monomial_split();
    let (_, pb) = b.monomial_split();
    if pa == pb {
        return canonical_unit_form(&pa);
    }
    // Disjoint variable sets force a scalar gcd, which is a unit.
    let nv = a.table().total_vars();
    if !(0..nv).any(|v| pa.involves(v) && pb.involves(v)) {
        return LaurentPoly::one(a.table());
    }
    // Exact-division shortcuts: common when one denominator was built as a
    // multiple of the other, as fraction addition chains do.
    if let Some(_) = poly_div_exact(&pa, &pb) {
        return canonical_unit_form(&pb);
    }
    if let Some(_) = poly_div_exact(&pb, &pa) {
        return canonical_unit_form(&pa);
    }
    let g = gcd_ml(&Ml::lift(&pa), &Ml::lift(&pb));
    canonical_unit_form(&g.lower())
}

/// Strip monomial content and make the leading coefficient 1. Maps zero to
/// zero and any unit (scalar times monomial) to 1.
pub fn canonical_unit_form(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    let (_, mut q) = p.monomial_split();
    let lc = q.leading().unwrap().1.clone();
    if !lc.is_one() {
        q = q.scale(&lc.inv().expect("nonzero leading coefficient"));
    }
    q
}

/// Multivariate polynomial with Q(zeta)[q] coefficients: the denominator-
/// free lift the remainder sequences run on. Exponents are nonnegative
/// throughout.
#[derive(Clone, PartialEq)]
struct Ml {
    table: Arc<VarTable>,
    terms: BTreeMap<Expo, QPoly>,
}

impl Ml {
    fn zero(table: &Arc<VarTable>) -> Self {
        Ml { table: Arc::clone(table), terms: BTreeMap::new() }
    }

    fn one(table: &Arc<VarTable>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Expo::zero(table.total_vars()), QPoly::one(table.modulus()));
        Ml { table: Arc::clone(table), terms }
    }

    /// Lift a polynomial by clearing coefficient q-denominators (a unit
    /// multiple, so gcds are unaffected).
    fn lift(p: &LaurentPoly) -> Self {
        debug_assert!(p.is_polynomial());
        let m = p.modulus();
        let mut common_den = QPoly::one(m);
        for (_, c) in p.iter() {
            let den = c.den();
            let g = common_den.gcd(den);
            common_den = common_den.mul(&den.div_exact(&g));
        }
        let mut terms = BTreeMap::new();
        for (e, c) in p.iter() {
            let qp = c.num().mul(&common_den.div_exact(c.den()));
            if !qp.is_zero() {
                terms.insert(e.clone(), qp);
            }
        }
        Ml { table: Arc::clone(p.table()), terms }.rational_normalize()
    }

    /// Reinterpret over the scalar field.
    fn lower(&self) -> LaurentPoly {
        let m = self.table.modulus();
        let mut out = LaurentPoly::zero(&self.table);
        for (e, qp) in &self.terms {
            let c = Scalar::new(qp.clone(), QPoly::one(m)).expect("unit denominator");
            out = out.add(&LaurentPoly::monomial(&self.table, e.clone(), c));
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, e: Expo, c: QPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let s = slot.get().add(&c);
                if s.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = s;
                }
            }
        }
    }

    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.neg());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.table);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert_add(e1.add(e2), c1.mul(c2));
            }
        }
        out
    }

    fn mul_qp(&self, c: &QPoly) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        Ml {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k.mul(c))).collect(),
        }
    }

    fn div_qp_exact(&self, c: &QPoly) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Ml {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.div_exact(c)))
                .collect(),
        }
    }

    fn involves(&self, idx: usize) -> bool {
        self.terms.keys().any(|e| e.get(idx) != 0)
    }

    fn max_degree_in(&self, idx: usize) -> Option<i32> {
        self.terms.keys().map(|e| e.get(idx)).max()
    }

    fn as_single_term(&self) -> Option<(&Expo, &QPoly)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn min_exponents(&self) -> Option<Expo> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.min_with(e)))
    }

    /// Divide out the monomial x-content, returning the stripped poly.
    fn strip_monomial(&self) -> Self {
        let Some(min) = self.min_exponents() else {
            return self.clone();
        };
        if min.is_zero() {
            return self.clone();
        }
        Ml {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.sub(&min), c.clone()))
                .collect(),
        }
    }

    /// Monic gcd of all q-coefficients; 1 when they are coprime.
    fn q_content(&self) -> QPoly {
        let m = self.table.modulus();
        let mut acc = QPoly::zero(m);
        for c in self.terms.values() {
            acc = acc.gcd(c);
            if acc.degree() == Some(0) {
                return QPoly::one(m);
            }
        }
        acc.make_monic()
    }

    /// Clear rational content: scale by (lcm of denominators)/(gcd of
    /// numerators) across every rational coordinate, so coefficients are
    /// integral with no common integer factor. A unit scaling, but it is
    /// what keeps pseudo-remainder coefficient growth polynomial.
    fn rational_normalize(&self) -> Self {
        use num::{BigInt, BigRational, Integer, One, Signed, Zero};
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for qp in self.terms.values() {
            for cy in qp.coeffs() {
                for r in cy.coeffs() {
                    if r.is_zero() {
                        continue;
                    }
                    den_lcm = den_lcm.lcm(r.denom());
                    num_gcd = num_gcd.gcd(&r.numer().abs());
                }
            }
        }
        if num_gcd.is_zero() {
            return self.clone();
        }
        let factor = BigRational::new(den_lcm, num_gcd);
        if factor.is_one() {
            return self.clone();
        }
        let c = crate::scalar::CyclotomicRational::from_rational(
            self.table.modulus(),
            factor,
        );
        Ml {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.scale(&c)))
                .collect(),
        }
    }

    fn univariate_in(&self, idx: usize) -> BTreeMap<i32, Ml> {
        let mut out: BTreeMap<i32, Ml> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e.get(idx);
            let mut rest = e.clone();
            rest.set(idx, 0);
            out.entry(d)
                .or_insert_with(|| Self::zero(&self.table))
                .insert_add(rest, c.clone());
        }
        out
    }

}

/// Exact quotient in the lifted ring, or None.
fn div_exact_ml(a: &Ml, b: &Ml) -> Option<Ml> {
    debug_assert!(!b.is_zero());
    let table = Arc::clone(&a.table);
    let mut rem = a.clone();
    let mut quot = Ml::zero(&table);
    let (eb, cb) = {
        let (e, c) = b.terms.iter().next_back().expect("nonzero divisor");
        (e.clone(), c.clone())
    };
    while !rem.is_zero() {
        let (er, cr) = {
            let (e, c) = rem.terms.iter().next_back().unwrap();
            (e.clone(), c.clone())
        };
        let t = er.sub(&eb);
        if !t.is_nonnegative() {
            return None;
        }
        let (tq, tr) = cr.div_rem(&cb);
        if !tr.is_zero() {
            return None;
        }
        let mut term = Ml::zero(&table);
        term.insert_add(t, tq);
        quot = {
            let mut q2 = quot;
            for (e, c) in &term.terms {
                q2.insert_add(e.clone(), c.clone());
            }
            q2
        };
        rem = rem.sub(&term.mul(b));
    }
    Some(quot)
}

/// Full gcd in the lifted ring: monomial content, q-content and the
/// variable-by-variable primitive remainder sequence.
fn gcd_ml(a: &Ml, b: &Ml) -> Ml {
    debug_assert!(!a.is_zero() && !b.is_zero());
    // Shared monomial content.
    let sa = a.min_exponents().unwrap();
    let sb = b.min_exponents().unwrap();
    let shared_mono = sa.min_with(&sb);
    let a = a.strip_monomial();
    let b = b.strip_monomial();
    // Shared q-content.
    let qa = a.q_content();
    let qb = b.q_content();
    let qg = qa.gcd(&qb).make_monic();
    let a = a.div_qp_exact(&qa);
    let b = b.div_qp_exact(&qb);
    let core = gcd_primitive_parts(a.rational_normalize(), b.rational_normalize());
    let mut out = core.mul_qp(&qg).rational_normalize();
    if !shared_mono.is_zero() {
        out = Ml {
            table: Arc::clone(&out.table),
            terms: out
                .terms
                .iter()
                .map(|(e, c)| (e.add(&shared_mono), c.clone()))
                .collect(),
        };
    }
    out
}

/// gcd of monomial-free, q-primitive polynomials.
fn gcd_primitive_parts(mut a: Ml, mut b: Ml) -> Ml {
    // Shed variables appearing in only one argument: the gcd cannot involve
    // them, so that argument may be replaced by its coefficient content.
    loop {
        if a.as_single_term().is_some() || b.as_single_term().is_some() {
            // A single term is x^e * c(q); both mono- and q-content with the
            // other argument were already stripped.
            return Ml::one(&a.table);
        }
        let n = a.table.total_vars();
        if let Some(v) = (0..n).find(|&v| a.involves(v) && !b.involves(v)) {
            a = content_in(&a, v);
            continue;
        }
        if let Some(v) = (0..n).find(|&v| b.involves(v) && !a.involves(v)) {
            b = content_in(&b, v);
            continue;
        }
        break;
    }
    let shared: Vec<usize> = (0..a.table.total_vars())
        .filter(|&v| a.involves(v) && b.involves(v))
        .collect();
    let Some(&v) = shared.iter().min_by_key(|&&v| {
        a.max_degree_in(v).unwrap_or(0).min(b.max_degree_in(v).unwrap_or(0))
    }) else {
        // No variables left: two q-primitive constants.
        return Ml::one(&a.table);
    };
    let ca = content_in(&a, v);
    let cb = content_in(&b, v);
    let pa = div_exact_ml(&a, &ca).expect("content divides");
    let pb = div_exact_ml(&b, &cb).expect("content divides");
    let cg = gcd_ml(&ca, &cb);
    let pg = primitive_prs(pa, pb, v);
    cg.mul(&pg)
}

/// Content of `p` with respect to variable `v`: full gcd of the univariate
/// coefficients (monomial, q and polynomial parts included).
fn content_in(p: &Ml, v: usize) -> Ml {
    let parts = p.univariate_in(v);
    let mut it = parts.values();
    let mut acc = it.next().expect("nonzero polynomial").clone();
    for c in it {
        if acc.as_single_term().map_or(false, |(e, q)| e.is_zero() && q.is_one()) {
            return acc;
        }
        acc = gcd_ml(&acc, c);
    }
    acc
}

/// Make `p` primitive in `v`, returning (content, primitive part).
fn make_primitive(p: &Ml, v: usize) -> (Ml, Ml) {
    let c = content_in(p, v);
    let pp = div_exact_ml(p, &c).expect("content divides");
    (c, pp.rational_normalize())
}

/// Gcd of two v-primitive polynomials by pseudo-remainders, re-primitivized
/// after every step so neither polynomial content nor q-content can pile up.
fn primitive_prs(mut a: Ml, mut b: Ml, v: usize) -> Ml {
    if a.max_degree_in(v).unwrap_or(0) < b.max_degree_in(v).unwrap_or(0) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, v).rational_normalize();
        if r.is_zero() {
            return b;
        }
        if !r.involves(v) {
            // A v-free remainder divides the gcd only through content, and
            // both inputs are v-primitive: the gcd is a unit.
            return Ml::one(&a.table);
        }
        let (_, r) = make_primitive(&r, v);
        a = b;
        b = r;
    }
}

/// Pseudo-remainder of `a` by `b` in `v`: repeatedly kill the leading
/// v-coefficient after scaling by lc(b). The result is `a` times a power of
/// lc(b) modulo `b`, which is all the primitive sequence needs.
fn pseudo_rem(a: &Ml, b: &Ml, v: usize) -> Ml {
    let table = Arc::clone(&a.table);
    let bu = b.univariate_in(v);
    let (&db, lb) = bu.iter().next_back().expect("nonzero divisor");
    let mut r = a.clone();
    loop {
        let ru = r.univariate_in(v);
        let Some((&dr, lr)) = ru.iter().next_back() else {
            return r;
        };
        if dr < db {
            return r;
        }
        // r <- lb * r - lr * v^(dr-db) * b, with rational content stripped
        // per step to keep coefficient bits from compounding.
        let mut shifted = Ml::zero(&table);
        for (e, c) in &b.mul(lr).terms {
            let mut e2 = e.clone();
            e2.set(v, e2.get(v) + (dr - db));
            shifted.insert_add(e2, c.clone());
        }
        r = r.mul(lb).sub(&shifted).rational_normalize();
        debug_assert!(r.max_degree_in(v).unwrap_or(i32::MIN) < dr);
    }
}
