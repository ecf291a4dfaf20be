//! Sparse multivariate Laurent polynomials over the scalar field, in the
//! two-level variable indexing the OGZ construction lives on: variables are
//! `x[k,i]` with a row `k` (level) and a column `i` inside the row.
//!
//! Exponent vectors are ordered graded-lexicographically: higher total degree
//! first, ties broken by the first differing exponent (variables ordered by
//! row then column, both ascending). The *leading term* of a polynomial is
//! its maximum in this order; it is what canonical forms are pinned to.

mod gcd;
mod ratfunc;

pub use gcd::{div_exact, poly_gcd};
pub use ratfunc::RatFunc;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The variable environment: row sizes `r = (r_1, ..., r_n)` and the
/// cyclotomic modulus of the coefficient field. All polynomials, rational
/// functions and skew elements over the same environment share one `Arc`.
#[derive(Debug, PartialEq, Eq)]
pub struct VarTable {
    rows: Vec<u32>,
    m: u32,
    offsets: Vec<usize>,
    total: usize,
}

impl VarTable {
    pub fn new(rows: Vec<u32>, m: u32) -> Arc<VarTable> {
        assert!(!rows.is_empty() && rows.iter().all(|&r| r >= 1), "empty rows");
        assert!(m >= 1, "cyclotomic modulus must be positive");
        let mut offsets = Vec::with_capacity(rows.len());
        let mut total = 0usize;
        for &r in &rows {
            offsets.push(total);
            total += r as usize;
        }
        Arc::new(VarTable { rows, m, offsets, total })
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Size of row `k` (1-based).
    pub fn row_size(&self, k: u32) -> u32 {
        self.rows[(k - 1) as usize]
    }

    pub fn total_vars(&self) -> usize {
        self.total
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn flat(&self, v: VarIndex) -> usize {
        assert!(
            v.row >= 1 && (v.row as usize) <= self.rows.len(),
            "row {} out of range",
            v.row
        );
        assert!(
            v.col >= 1 && v.col <= self.rows[(v.row - 1) as usize],
            "col {} out of range in row {}",
            v.col,
            v.row
        );
        self.offsets[(v.row - 1) as usize] + (v.col - 1) as usize
    }

    pub fn unflat(&self, idx: usize) -> VarIndex {
        assert!(idx < self.total);
        let row = self
            .offsets
            .iter()
            .rposition(|&o| o <= idx)
            .expect("offset table nonempty");
        VarIndex { row: (row + 1) as u32, col: (idx - self.offsets[row] + 1) as u32 }
    }

    /// All variable indices of row `k`, in column order.
    pub fn row_vars(&self, k: u32) -> impl Iterator<Item = VarIndex> + '_ {
        (1..=self.row_size(k)).map(move |col| VarIndex { row: k, col })
    }
}

pub fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A variable `x[row, col]`, both indices 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarIndex {
    pub row: u32,
    pub col: u32,
}

impl VarIndex {
    pub fn new(row: u32, col: u32) -> Self {
        VarIndex { row, col }
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.row, self.col)
    }
}

/// An integer exponent vector over a fixed variable table, compared in
/// graded-lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expo(Vec<i32>);

impl Expo {
    pub fn zero(n: usize) -> Self {
        Expo(vec![0; n])
    }

    pub fn unit(n: usize, idx: usize, e: i32) -> Self {
        let mut v = vec![0; n];
        v[idx] = e;
        Expo(v)
    }

    pub fn from_vec(v: Vec<i32>) -> Self {
        Expo(v)
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, idx: usize) -> i32 {
        self.0[idx]
    }

    pub fn set(&mut self, idx: usize, e: i32) {
        self.0[idx] = e;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.0.len(), other.0.len());
        Expo(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.0.len(), other.0.len());
        Expo(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Expo(self.0.iter().map(|a| -a).collect())
    }

    pub fn min_with(&self, other: &Self) -> Self {
        Expo(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Expo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A sparse Laurent polynomial: a map from exponent vectors to nonzero
/// scalars. The zero polynomial has an empty term map.
#[derive(Clone)]
pub struct LaurentPoly {
    table: Arc<VarTable>,
    terms: BTreeMap<Expo, Scalar>,
}

impl LaurentPoly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        LaurentPoly { table: Arc::clone(table), terms: BTreeMap::new() }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, Scalar::one(table.modulus()))
    }

    pub fn constant(table: &Arc<VarTable>, c: Scalar) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(Expo::zero(table.total_vars()), c);
        }
        p
    }

    pub fn monomial(table: &Arc<VarTable>, expo: Expo, c: Scalar) -> Self {
        assert_eq!(expo.len(), table.total_vars(), "exponent length mismatch");
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(expo, c);
        }
        p
    }

    /// `x[v]^e`.
    pub fn var_pow(table: &Arc<VarTable>, v: VarIndex, e: i32) -> Self {
        let idx = table.flat(v);
        Self::monomial(
            table,
            Expo::unit(table.total_vars(), idx, e),
            Scalar::one(table.modulus()),
        )
    }

    pub fn var(table: &Arc<VarTable>, v: VarIndex) -> Self {
        Self::var_pow(table, v, 1)
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn modulus(&self) -> u32 {
        self.table.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map_or(false, |(e, c)| e.is_zero() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Expo, &Scalar)> {
        self.terms.iter()
    }

    /// Leading (grlex-maximal) term.
    pub fn leading(&self) -> Option<(&Expo, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, e: &Expo) -> Scalar {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.modulus()))
    }

    /// Some((expo, coeff)) when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(&Expo, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// True when every exponent is nonnegative (an honest polynomial).
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.is_nonnegative())
    }

    fn check(&self, other: &Self) {
        assert!(same_table(&self.table, &other.table), "mixed variable tables");
    }

    fn insert_add(&mut self, e: Expo, c: Scalar) {
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

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(&self.table);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert_add(e1.add(e2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        LaurentPoly {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k.mul(c))).collect(),
        }
    }

    /// Multiply by the Laurent monomial `c * x^shift`.
    pub fn mul_monomial(&self, shift: &Expo, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        LaurentPoly {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.add(shift), k.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.table);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Componentwise minimum exponent over all terms (None for zero).
    pub fn min_exponents(&self) -> Option<Expo> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.min_with(e)))
    }

    /// Split into `x^shift * poly` with `poly` an honest polynomial whose
    /// per-variable minimum exponent is zero (monomial-content-free).
    pub fn monomial_split(&self) -> (Expo, LaurentPoly) {
        match self.min_exponents() {
            None => (Expo::zero(self.table.total_vars()), self.clone()),
            Some(min) => {
                let poly = LaurentPoly {
                    table: Arc::clone(&self.table),
                    terms: self
                        .terms
                        .iter()
                        .map(|(e, c)| (e.sub(&min), c.clone()))
                        .collect(),
                };
                (min, poly)
            }
        }
    }

    /// Maximum degree in one (flat) variable; None for the zero polynomial.
    pub fn max_degree_in(&self, idx: usize) -> Option<i32> {
        self.terms.keys().map(|e| e.get(idx)).max()
    }

    pub fn involves(&self, idx: usize) -> bool {
        self.terms.keys().any(|e| e.get(idx) != 0)
    }

    /// View as a univariate polynomial in variable `idx`: degree -> the
    /// coefficient polynomial (which does not involve `idx`).
    pub fn univariate_in(&self, idx: usize) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e.get(idx);
            let mut rest = e.clone();
            rest.0[idx] = 0;
            out.entry(d)
                .or_insert_with(|| Self::zero(&self.table))
                .insert_add(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Reassemble from a univariate view (inverse of `univariate_in`).
    pub fn from_univariate(
        table: &Arc<VarTable>,
        idx: usize,
        parts: &BTreeMap<i32, LaurentPoly>,
    ) -> Self {
        let mut out = Self::zero(table);
        for (d, p) in parts {
            for (e, c) in &p.terms {
                let mut e2 = e.clone();
                e2.0[idx] += d;
                out.insert_add(e2, c.clone());
            }
        }
        out
    }

    /// Apply a per-variable monomial map `x[v] -> coeff_v * x[target_v]`
    /// (see [`MonomialMap`]); exact on Laurent monomials, multiplicative.
    pub fn substitute(&self, map: &MonomialMap) -> Result<Self> {
        assert!(same_table(&self.table, &map.table), "mixed variable tables");
        let n = self.table.total_vars();
        let mut out = Self::zero(&self.table);
        for (e, c) in &self.terms {
            let mut new_e = vec![0i32; n];
            let mut new_c = c.clone();
            for idx in 0..n {
                let exp = e.get(idx);
                if exp == 0 {
                    continue;
                }
                let (ref coeff, target) = map.entries[idx];
                new_e[target] += exp;
                new_c = new_c.mul(&coeff.pow(exp as i64)?);
            }
            out.insert_add(Expo::from_vec(new_e), new_c);
        }
        Ok(out)
    }

    /// Sum of `coeff` over all terms — the image under `x[v] -> 1` for all
    /// `v`. Used by tests as a cheap ring-map oracle.
    pub fn eval_all_ones(&self) -> Scalar {
        self.terms
            .values()
            .fold(Scalar::zero(self.modulus()), |acc, c| acc.add(c))
    }
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

/// A substitution sending each variable to `scalar * variable`, with all
/// scalars nonzero (so the map is invertible on monomials). Targets must
/// stay inside the table; group actions use within-row permutations, q-shift
/// transport uses the identity permutation.
pub struct MonomialMap {
    table: Arc<VarTable>,
    /// Indexed by flat source variable: (coefficient, flat target variable).
    entries: Vec<(Scalar, usize)>,
}

impl MonomialMap {
    pub fn new(table: &Arc<VarTable>, entries: Vec<(Scalar, VarIndex)>) -> Result<Self> {
        if entries.len() != table.total_vars() {
            return Err(Error::OutOfRange(format!(
                "substitution must cover all {} variables, got {}",
                table.total_vars(),
                entries.len()
            )));
        }
        let mut flat = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            if c.is_zero() {
                return Err(Error::OutOfRange(
                    "zero coefficient in monomial substitution".into(),
                ));
            }
            flat.push((c, table.flat(v)));
        }
        Ok(MonomialMap { table: Arc::clone(table), entries: flat })
    }

    /// Identity on variables, scalar twist per variable.
    pub fn scalar_twist(table: &Arc<VarTable>, coeffs: Vec<Scalar>) -> Result<Self> {
        let entries = coeffs
            .into_iter()
            .enumerate()
            .map(|(idx, c)| (c, table.unflat(idx)))
            .collect();
        Self::new(table, entries)
    }

    /// True when the variable map is a bijection (coefficients are already
    /// known nonzero), so the substitution permutes monomials.
    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.entries.len()];
        for &(_, t) in &self.entries {
            if seen[t] {
                return false;
            }
            seen[t] = true;
        }
        true
    }
}

/// Elementary symmetric polynomial `e_d(items)`; `d = 0` gives 1.
pub fn elementary_symmetric(items: &[LaurentPoly], d: usize) -> Result<LaurentPoly> {
    let first = items.first().ok_or_else(|| {
        Error::OutOfRange("elementary symmetric of an empty list".into())
    })?;
    if d > items.len() {
        return Err(Error::OutOfRange(format!(
            "symmetric degree {} exceeds {} items",
            d,
            items.len()
        )));
    }
    let table = first.table();
    // e[j] after processing t items is e_j(items[..t]).
    let mut e: Vec<LaurentPoly> = Vec::with_capacity(d + 1);
    e.push(LaurentPoly::one(table));
    for _ in 0..d {
        e.push(LaurentPoly::zero(table));
    }
    for item in items {
        for j in (1..=d).rev() {
            let bump = e[j - 1].mul(item);
            e[j] = e[j].add(&bump);
        }
    }
    Ok(e.pop().unwrap())
}

fn fmt_mono(table: &VarTable, e: &Expo) -> String {
    let mut parts = Vec::new();
    for idx in 0..table.total_vars() {
        let exp = e.get(idx);
        if exp == 0 {
            continue;
        }
        let v = table.unflat(idx);
        if exp == 1 {
            parts.push(v.to_string());
        } else {
            parts.push(format!("{}^{}", v, exp));
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPoly {
    /// Deterministic rendering: terms in descending graded-lex order,
    /// coefficients parenthesized unless they are 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = fmt_mono(&self.table, e);
            if mono.is_empty() {
                if self.terms.len() == 1 {
                    write!(f, "{}", c)?;
                } else {
                    write!(f, "({})", c)?;
                }
            } else if c.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "({})*{}", c, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    pub fn tbl(rows: &[u32], m: u32) -> Arc<VarTable> {
        VarTable::new(rows.to_vec(), m)
    }

    pub fn x(table: &Arc<VarTable>, row: u32, col: u32) -> LaurentPoly {
        LaurentPoly::var(table, VarIndex::new(row, col))
    }

    pub fn xp(table: &Arc<VarTable>, row: u32, col: u32, e: i32) -> LaurentPoly {
        LaurentPoly::var_pow(table, VarIndex::new(row, col), e)
    }

    /// Deterministic pseudo-random Laurent polynomial: `nterms` terms with
    /// exponents in [-2, 2] and small integer-times-q-power coefficients.
    pub fn sample_poly(table: &Arc<VarTable>, seed: u64, nterms: usize) -> LaurentPoly {
        sample_poly_spread(table, seed, nterms, 2)
    }

    /// Deterministic pseudo-random polynomial supported on a single
    /// variable, exponents in [0, spread].
    pub fn sample_poly_in_var(
        table: &Arc<VarTable>,
        var: usize,
        seed: u64,
        nterms: usize,
        spread: i32,
    ) -> LaurentPoly {
        let mut state = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) as i64
        };
        let m = table.modulus();
        let mut p = LaurentPoly::zero(table);
        for _ in 0..nterms {
            let e = Expo::unit(
                table.total_vars(),
                var,
                next().rem_euclid(spread as i64 + 1) as i32,
            );
            let c0 = next().rem_euclid(7) - 3;
            if c0 == 0 {
                continue;
            }
            let c = Scalar::from_integer(m, c0).mul(&Scalar::q_pow(m, next().rem_euclid(5) - 2));
            p = p.add(&LaurentPoly::monomial(table, e, c));
        }
        p
    }

    /// Like `sample_poly` with exponents in [-spread, spread].
    pub fn sample_poly_spread(
        table: &Arc<VarTable>,
        seed: u64,
        nterms: usize,
        spread: i32,
    ) -> LaurentPoly {
        let mut state = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) as i64
        };
        let m = table.modulus();
        let width = 2 * spread as i64 + 1;
        let mut p = LaurentPoly::zero(table);
        for _ in 0..nterms {
            let e: Vec<i32> = (0..table.total_vars())
                .map(|_| (next().rem_euclid(width) - spread as i64) as i32)
                .collect();
            let c0 = next().rem_euclid(7) - 3;
            if c0 == 0 {
                continue;
            }
            let c = Scalar::from_integer(m, c0).mul(&Scalar::q_pow(m, next().rem_euclid(5) - 2));
            p = p.add(&LaurentPoly::monomial(table, Expo::from_vec(e), c));
        }
        p
    }
}
