//! q-difference Noether machinery: the quantum Laurent torus with its
//! reflection-group action, the index-m power embedding, the eigenspace
//! decomposition of invariants over the index-p coset, per-row Laurent
//! isomorphism checks for the OGZ algebras, and the invariant-field
//! parameter bookkeeping.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::laurent::{Expo, LaurentPoly, RatFunc, VarIndex, VarTable};
use crate::ogz::{clip, AlgebraSpec};
use crate::reflection::{
    coset_rep_and_epsilon, enumerate_group, generating_set, GroupElement, ProductGroupElement,
};
use crate::report::CheckRecord;
use crate::scalar::Scalar;
use crate::skew::{SkewAlgebra, SkewElement};

/// The quantum Laurent torus on `n` pairs `(x_i, y_i)`, realized inside the
/// skew algebra of a single-row table: `y_i` is the shift generator with
/// negated exponent, so that
///
/// ```text
/// y_i x_j = q^{w [i=j]} x_j y_i
/// ```
///
/// holds with the configured weight `w` (`w = 1` is the torus with
/// parameter `q` itself; `w = m` the one with parameter `q^m`). The
/// modulus `m` fixes which root of unity is available in coefficients and
/// which groups `G(m,p,n)` act.
#[derive(Clone)]
pub struct QuantumTorus {
    alg: SkewAlgebra,
    n: u32,
    m: u32,
    weight: u32,
}

impl QuantumTorus {
    pub fn new(n: u32, m: u32, weight: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("torus needs at least one pair".into()));
        }
        if m == 0 || weight == 0 {
            return Err(Error::InvalidSpec("torus modulus and weight must be positive".into()));
        }
        let table = VarTable::new(vec![n], m);
        let alg = SkewAlgebra::new(&table, weight);
        Ok(QuantumTorus { alg, n, m, weight })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn algebra(&self) -> &SkewAlgebra {
        &self.alg
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.alg.table()
    }

    /// The generator `x_i` (1-based).
    pub fn x(&self, i: u32) -> SkewElement {
        let e = Expo::unit(self.n as usize, (i - 1) as usize, 1);
        SkewElement::from_coeff(
            &self.alg,
            RatFunc::from_poly(LaurentPoly::monomial(self.table(), e, Scalar::one(self.m))),
        )
    }

    /// The generator `y_i` (1-based), i.e. the inverse shift.
    pub fn y(&self, i: u32) -> SkewElement {
        SkewElement::delta_pow(&self.alg, VarIndex::new(1, i), -1)
    }

    /// The left-canonical monomial `c * x^xe * y^ye`.
    pub fn monomial(&self, c: Scalar, xe: &[i32], ye: &[i32]) -> SkewElement {
        assert_eq!(xe.len(), self.n as usize, "x exponent length");
        assert_eq!(ye.len(), self.n as usize, "y exponent length");
        let coeff = RatFunc::from_poly(LaurentPoly::monomial(
            self.table(),
            Expo::from_vec(xe.to_vec()),
            c,
        ));
        let shift = Expo::from_vec(ye.iter().map(|&e| -e).collect());
        SkewElement::monomial(&self.alg, coeff, shift)
    }

    /// `(x_1 ... x_n)^e`.
    pub fn pi_pow(&self, e: i32) -> SkewElement {
        let expo = Expo::from_vec(vec![e; self.n as usize]);
        SkewElement::from_coeff(
            &self.alg,
            RatFunc::from_poly(LaurentPoly::monomial(self.table(), expo, Scalar::one(self.m))),
        )
    }
}

/// The action of `g` on a torus element: `x_i` is twisted and permuted,
/// `g(x_i) = zeta^{a_i} x_{sigma(i)}`, while `y_i` is only permuted,
/// `g(y_i) = y_{sigma(i)}`. An algebra automorphism for any shift weight.
pub fn qtorus_act(g: &GroupElement, a: &SkewElement) -> Result<SkewElement> {
    let t = a.algebra().table();
    if t.rows().len() != 1 {
        return Err(Error::Precondition("qtorus_act expects a single-row torus".into()));
    }
    let pg = ProductGroupElement::new(t, vec![g.clone()])?;
    Ok(a.group_act(&pg))
}

fn is_invariant_under(gens: &[GroupElement], a: &SkewElement) -> Result<bool> {
    for g in gens {
        if &qtorus_act(g, a)? != a {
            return Ok(false);
        }
    }
    Ok(true)
}

fn stretch_poly(dst: &Arc<VarTable>, f: &LaurentPoly, m: i32) -> LaurentPoly {
    let mut out = LaurentPoly::zero(dst);
    for (e, c) in f.iter() {
        let scaled = Expo::from_vec(e.entries().iter().map(|&x| x * m).collect());
        out = out.add(&LaurentPoly::monomial(dst, scaled, c.clone()));
    }
    out
}

/// The power embedding `x_i -> x_i^m`, `y_i -> y_i` from the torus with
/// weight `m * w` into the torus with weight `w`. On left-canonical terms
/// it stretches every `x`-exponent by `m` and keeps the shift part; this is
/// an algebra homomorphism because the stretched commutation factors agree:
/// `d^phi x^{m e} = q^{-w<phi, m e>} x^{m e} d^phi` in the target matches
/// `d^phi x^e = q^{-m w <phi, e>} x^e d^phi` in the source. It is injective
/// (distinct monomials keep distinct exponents) and lands in the subalgebra
/// fixed by every diagonal root-of-unity twist.
pub fn power_map(source: &QuantumTorus, target: &QuantumTorus, a: &SkewElement) -> Result<SkewElement> {
    if source.n != target.n || source.m != target.m {
        return Err(Error::InvalidSpec("power map endpoints must share rank and modulus".into()));
    }
    if source.weight != target.weight * source.m {
        return Err(Error::InvalidSpec(format!(
            "power map needs source weight {} = modulus {} * target weight {}",
            source.weight, source.m, target.weight
        )));
    }
    let m = source.m as i32;
    let mut out = SkewElement::zero(&target.alg);
    for (phi, c) in a.terms() {
        let num = stretch_poly(target.table(), c.num(), m);
        let den = stretch_poly(target.table(), c.den(), m);
        let stretched = RatFunc::new(num, den)?;
        out = out.add(&SkewElement::monomial(&target.alg, stretched, phi.clone()));
    }
    Ok(out)
}

/// Decomposes a `G(m,p,n)`-invariant torus element over the invariants of
/// the full-twist group `G(m,1,n)`: returns `(f_0, ..., f_{p-1})` with
///
/// ```text
/// f = sum_k f_k * (x_1...x_n)^{k m/p},
/// ```
///
/// each component invariant under `G(m,1,n)`. Computed by character
/// projection against the coset representative `alpha` (a single diagonal
/// twist) and its eigenvalue `epsilon = zeta^{m/p}`:
/// `f_k = (1/p) sum_j epsilon^{-kj} alpha^j(f)`, then right-division by the
/// invertible monomial `(x_1...x_n)^{k m/p}`.
pub fn eigenspace_decompose(torus: &QuantumTorus, p: u32, f: &SkewElement) -> Result<Vec<SkewElement>> {
    let (m, n) = (torus.m, torus.n);
    if p == 0 || m % p != 0 {
        return Err(Error::InvalidSpec(format!("index {p} must divide the modulus {m}")));
    }
    if !is_invariant_under(&generating_set(m, p, n as usize), f)? {
        return Err(Error::Precondition(format!(
            "eigenspace decomposition needs a G({m},{p},{n})-invariant input"
        )));
    }
    let (alpha, eps) = coset_rep_and_epsilon(m, p, n as usize);
    let inv_p = RatFunc::constant(
        torus.table(),
        Scalar::from_integer(m, p as i64).inv().expect("p is nonzero"),
    );
    let mp = (m / p) as i32;
    let mut components = Vec::with_capacity(p as usize);
    for k in 0..p {
        let mut proj = SkewElement::zero(&torus.alg);
        for j in 0..p {
            let chi = eps
                .pow(-((k as i64) * (j as i64)))
                .expect("epsilon is a unit");
            let term = qtorus_act(&alpha.pow(j), f)?.scale(&RatFunc::constant(torus.table(), chi));
            proj = proj.add(&term);
        }
        let tilde = proj.scale(&inv_p);
        components.push(tilde.mul(&torus.pi_pow(-(k as i32) * mp)));
    }
    debug_assert_eq!(
        {
            let mut sum = SkewElement::zero(&torus.alg);
            for (k, fk) in components.iter().enumerate() {
                sum = sum.add(&fk.mul(&torus.pi_pow(k as i32 * mp)));
            }
            sum
        },
        *f,
        "character projections must reassemble the input"
    );
    Ok(components)
}

/// Projects onto the `G(m,p,n)`-invariants by averaging over the full
/// (enumerated) group. The result is exactly invariant; it may be zero.
pub fn reynolds_average(
    torus: &QuantumTorus,
    p: u32,
    a: &SkewElement,
    max_group: usize,
) -> Result<SkewElement> {
    let group = enumerate_group(torus.m, p, torus.n as usize, max_group)?;
    let mut sum = SkewElement::zero(&torus.alg);
    for g in &group {
        sum = sum.add(&qtorus_act(g, a)?);
    }
    let inv = Scalar::from_integer(torus.m, group.len() as i64)
        .inv()
        .expect("group order is nonzero");
    Ok(sum.scale(&RatFunc::constant(torus.table(), inv)))
}

/// A random torus element with small exponents and unit-times-integer
/// coefficients; raw material for Reynolds averaging in the suites.
pub fn random_torus_element(torus: &QuantumTorus, rng: &mut impl Rng) -> SkewElement {
    let n = torus.n as usize;
    let mut out = SkewElement::zero(&torus.alg);
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let xe: Vec<i32> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let ye: Vec<i32> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
        let a = rng.gen_range(0..torus.m as i64);
        let b = rng.gen_range(-2..=2i64);
        let c = rng.gen_range(1..=3i64);
        let s = Scalar::zeta_pow(torus.m, a)
            .mul(&Scalar::q_pow(torus.m, b))
            .mul(&Scalar::from_integer(torus.m, c));
        out = out.add(&torus.monomial(s, &xe, &ye));
    }
    out
}

fn embed_poly(dst: &Arc<VarTable>, offset: usize, f: &LaurentPoly) -> LaurentPoly {
    let total = dst.total_vars();
    let mut out = LaurentPoly::zero(dst);
    for (e, c) in f.iter() {
        let mut expo = Expo::zero(total);
        for (i, &x) in e.entries().iter().enumerate() {
            expo.set(offset + i, x);
        }
        out = out.add(&LaurentPoly::monomial(dst, expo, c.clone()));
    }
    out
}

/// The row-`k` embedding of the rank-`r_k` quantum torus (weight 1) into
/// the ambient skew algebra: `x_i -> x_{ki}`, `y_i -> (d^{ki})^{-1}`. On
/// left-canonical terms both exponent blocks transplant verbatim into the
/// row-`k` block; the shift laws agree coordinatewise, so this is an
/// injective algebra homomorphism.
pub fn psi_embed(spec: &AlgebraSpec, k: u32, a: &SkewElement) -> Result<SkewElement> {
    let n = spec.n() as u32;
    if k == 0 || k >= n {
        return Err(Error::OutOfRange(format!("row {k} not in [1, {}]", n.saturating_sub(1))));
    }
    let rk = spec.row_size(k);
    let src = a.algebra().table();
    if src.rows() != [rk] || src.modulus() != spec.m() {
        return Err(Error::InvalidSpec(format!(
            "psi source must be a single-row torus of rank {rk} and modulus {}",
            spec.m()
        )));
    }
    let dst = spec.table();
    let offset = dst.flat(VarIndex::new(k, 1));
    let total = dst.total_vars();
    let mut out = SkewElement::zero(spec.algebra());
    for (phi, c) in a.terms() {
        let num = embed_poly(dst, offset, c.num());
        let den = embed_poly(dst, offset, c.den());
        let coeff = RatFunc::new(num, den)?;
        let mut shift = Expo::zero(total);
        for (i, &x) in phi.entries().iter().enumerate() {
            shift.set(offset + i, x);
        }
        out = out.add(&SkewElement::monomial(spec.algebra(), coeff, shift));
    }
    Ok(out)
}

/// Verifies, on generators, that the row-`k` embedding is an isomorphism
/// onto its image compatible with everything in sight: the defining torus
/// relations hold for the images, and the embedding intertwines the rank-
/// `r_k` group action with the ambient row-`k` action. All records are
/// asserted.
pub fn psi_iso_check(spec: &AlgebraSpec, k: u32) -> Result<Vec<CheckRecord>> {
    const SUITE: &str = "psi-equivariance";
    let n = spec.n() as u32;
    if k == 0 || k >= n {
        return Err(Error::OutOfRange(format!("row {k} not in [1, {}]", n.saturating_sub(1))));
    }
    let label = spec.label();
    let (m, p) = (spec.m(), spec.p());
    let rk = spec.row_size(k);
    let torus = QuantumTorus::new(rk, m, 1)?;
    let q1 = RatFunc::constant(spec.table(), Scalar::q_pow(m, 1));
    let mut records = Vec::new();

    let xs: Vec<SkewElement> = (1..=rk).map(|i| torus.x(i)).collect();
    let ys: Vec<SkewElement> = (1..=rk).map(|i| torus.y(i)).collect();
    let xi: Vec<SkewElement> =
        xs.iter().map(|a| psi_embed(spec, k, a)).collect::<Result<_>>()?;
    let yi: Vec<SkewElement> =
        ys.iter().map(|a| psi_embed(spec, k, a)).collect::<Result<_>>()?;

    for i in 0..rk as usize {
        for j in 0..rk as usize {
            if i < j {
                records.push(CheckRecord::assert(
                    SUITE,
                    &label,
                    format!("row {k}: images of x{} and x{} commute", i + 1, j + 1),
                    xi[i].mul(&xi[j]) == xi[j].mul(&xi[i]),
                    || "commutator of x images is nonzero".into(),
                ));
                records.push(CheckRecord::assert(
                    SUITE,
                    &label,
                    format!("row {k}: images of y{} and y{} commute", i + 1, j + 1),
                    yi[i].mul(&yi[j]) == yi[j].mul(&yi[i]),
                    || "commutator of y images is nonzero".into(),
                ));
            }
            let lhs = yi[i].mul(&xi[j]);
            let rhs = if i == j { xi[j].mul(&yi[i]).scale(&q1) } else { xi[j].mul(&yi[i]) };
            records.push(CheckRecord::assert(
                SUITE,
                &label,
                format!("row {k}: image relation y{} x{} = q^[{}={}] x{} y{}", i + 1, j + 1, i + 1, j + 1, j + 1, i + 1),
                lhs == rhs,
                || "q-commutation fails on images".into(),
            ));
        }
    }

    // Equivariance: psi(g a) = g psi(a) for the row-k generating set, with
    // g acting on the ambient algebra through the slot-k product element.
    for (gi, g) in generating_set(m, p, rk as usize).iter().enumerate() {
        let mut factors = Vec::with_capacity(n as usize);
        for row in 1..=n {
            if row == k {
                factors.push(g.clone());
            } else {
                factors.push(GroupElement::identity(m, p, spec.row_size(row) as usize));
            }
        }
        let ambient = ProductGroupElement::new(spec.table(), factors)?;
        for (name, src, img) in (0..rk as usize)
            .flat_map(|i| {
                [
                    (format!("x{}", i + 1), &xs[i], &xi[i]),
                    (format!("y{}", i + 1), &ys[i], &yi[i]),
                ]
            })
        {
            let lhs = psi_embed(spec, k, &qtorus_act(g, src)?)?;
            let rhs = img.group_act(&ambient);
            records.push(CheckRecord::assert(
                SUITE,
                &label,
                format!("row {k}: equivariance of generator {gi} on {name}"),
                lhs == rhs,
                || clip(format!("psi(g a) = {lhs} but g psi(a) = {rhs}")),
            ));
        }
    }
    Ok(records)
}

/// Runs [`psi_iso_check`] for every row `k` in `[1, n-1]`.
pub fn verify_psi(spec: &AlgebraSpec) -> Result<Vec<CheckRecord>> {
    let mut records = Vec::new();
    for k in 1..spec.n() as u32 {
        records.extend(psi_iso_check(spec, k)?);
    }
    Ok(records)
}

/// Parameters of a quantum Weyl field: the multiset of `q`-power exponents
/// (one per `(x, y)` pair, sorted ascending) and the transcendence degree
/// of the central base extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylFieldParams {
    pub qbar: Vec<u32>,
    pub base_transcendence_degree: u32,
}

impl WeylFieldParams {
    pub fn pairs(&self) -> usize {
        self.qbar.len()
    }
}

/// Invariant-field parameters for the `G(m,p,n)` action on the rank-`n`
/// quantum torus with parameter `q`: one pair with exponent `m/p` and
/// `n - 1` pairs with exponent `m`, over the base field itself.
pub fn weyl_parameters_torus(m: u32, p: u32, n: u32) -> Result<WeylFieldParams> {
    if n == 0 || m == 0 || p == 0 || m % p != 0 {
        return Err(Error::InvalidSpec(format!("invalid torus parameters m={m} p={p} n={n}")));
    }
    let mut qbar = vec![m / p];
    qbar.extend(std::iter::repeat(m).take(n as usize - 1));
    qbar.sort_unstable();
    Ok(WeylFieldParams { qbar, base_transcendence_degree: 0 })
}

/// Invariant-field parameters attached to a signature `r`: `n - 1` pairs
/// with exponent `m/p` and `r_1 + ... + r_{n-1} - (n-1)` pairs with
/// exponent `m`, over a purely transcendental extension of degree `r_n`.
pub fn weyl_parameters_signature(spec: &AlgebraSpec) -> WeylFieldParams {
    let n = spec.n();
    let (m, p) = (spec.m(), spec.p());
    let lower: u32 = spec.r()[..n - 1].iter().sum();
    let mut qbar = vec![m / p; n - 1];
    qbar.extend(std::iter::repeat(m).take((lower - (n as u32 - 1)) as usize));
    qbar.sort_unstable();
    WeylFieldParams { qbar, base_transcendence_degree: spec.r()[n - 1] }
}

/// The parameter-bookkeeping suite: computes both parameter tuples for a
/// spec and asserts their structural invariants (pair counts against the
/// independently known ranks, base degrees), reporting the tuples
/// themselves as witnesses.
pub fn verify_parameters(spec: &AlgebraSpec) -> Result<Vec<CheckRecord>> {
    const SUITE: &str = "parameters";
    let label = spec.label();
    let n = spec.n() as u32;
    let (m, p) = (spec.m(), spec.p());
    let mut records = Vec::new();

    let torus = weyl_parameters_torus(m, p, n)?;
    records.push(CheckRecord::assert(
        SUITE,
        &label,
        "full-torus pair count equals the torus rank",
        torus.pairs() == n as usize,
        || format!("got {} pairs for rank {n}", torus.pairs()),
    ));
    records.push(CheckRecord::assert(
        SUITE,
        &label,
        "full-torus base degree is zero",
        torus.base_transcendence_degree == 0,
        || format!("got base degree {}", torus.base_transcendence_degree),
    ));
    records.push(CheckRecord::report(
        SUITE,
        &label,
        "full-torus parameters",
        format!("qbar = {:?}, base degree = {}", torus.qbar, torus.base_transcendence_degree),
    ));

    let sig = weyl_parameters_signature(spec);
    let shift_rank: u32 = spec.r()[..n as usize - 1].iter().sum();
    records.push(CheckRecord::assert(
        SUITE,
        &label,
        "signature pair count equals the shift lattice rank",
        sig.pairs() == shift_rank as usize,
        || format!("got {} pairs for shift rank {shift_rank}", sig.pairs()),
    ));
    records.push(CheckRecord::assert(
        SUITE,
        &label,
        "signature base degree equals the top row size",
        sig.base_transcendence_degree == spec.r()[n as usize - 1],
        || format!("got base degree {}", sig.base_transcendence_degree),
    ));
    records.push(CheckRecord::report(
        SUITE,
        &label,
        "signature parameters",
        format!("qbar = {:?}, base degree = {}", sig.qbar, sig.base_transcendence_degree),
    ));
    Ok(records)
}

/// The decomposition suite: manufactures `samples` invariants of the
/// rank-`n` torus by Reynolds averaging (seeded), decomposes each over the
/// index-`p` coset, and asserts exact reconstruction plus full-twist
/// invariance of every component.
pub fn verify_noether_decomposition(
    m: u32,
    p: u32,
    n: u32,
    samples: u32,
    rng: &mut impl Rng,
    max_group: usize,
) -> Result<Vec<CheckRecord>> {
    const SUITE: &str = "noether-decomposition";
    let label = format!("m={m} p={p} n={n}");
    let torus = QuantumTorus::new(n, m, 1)?;
    let full_twist_gens = generating_set(m, 1, n as usize);
    let mp = (m / p) as i32;
    let mut records = Vec::new();
    for s in 0..samples {
        let mut inv = SkewElement::zero(torus.algebra());
        for _ in 0..4 {
            let cand = random_torus_element(&torus, rng);
            inv = reynolds_average(&torus, p, &cand, max_group)?;
            if !inv.is_zero() {
                break;
            }
        }
        let comps = eigenspace_decompose(&torus, p, &inv)?;
        let mut recon = SkewElement::zero(torus.algebra());
        for (k, fk) in comps.iter().enumerate() {
            recon = recon.add(&fk.mul(&torus.pi_pow(k as i32 * mp)));
        }
        records.push(CheckRecord::assert(
            SUITE,
            &label,
            format!("sample {s:02} reconstructs exactly"),
            recon == inv,
            || clip(format!("residue {}", recon.sub(&inv))),
        ));
        let mut witness = String::new();
        let mut all_invariant = true;
        'outer: for (k, fk) in comps.iter().enumerate() {
            for g in &full_twist_gens {
                if &qtorus_act(g, fk)? != fk {
                    all_invariant = false;
                    witness = format!("component {k} moves under {g}");
                    break 'outer;
                }
            }
        }
        records.push(CheckRecord::assert(
            SUITE,
            &label,
            format!("sample {s:02} components are full-twist invariant"),
            all_invariant,
            || witness,
        ));
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{has_failure, Status};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec(r: &[u32], m: u32, p: u32) -> AlgebraSpec {
        AlgebraSpec::new(r.to_vec(), m, p).unwrap()
    }

    #[test]
    fn torus_defining_relations() {
        for (m, w) in [(2u32, 1u32), (3, 3), (4, 2)] {
            let t = QuantumTorus::new(3, m, w).unwrap();
            let qw = RatFunc::constant(t.table(), Scalar::q_pow(m, w as i64));
            for i in 1..=3 {
                for j in 1..=3 {
                    assert_eq!(t.x(i).mul(&t.x(j)), t.x(j).mul(&t.x(i)));
                    assert_eq!(t.y(i).mul(&t.y(j)), t.y(j).mul(&t.y(i)));
                    let lhs = t.y(i).mul(&t.x(j));
                    let rhs = if i == j {
                        t.x(j).mul(&t.y(i)).scale(&qw)
                    } else {
                        t.x(j).mul(&t.y(i))
                    };
                    assert_eq!(lhs, rhs, "y{i} x{j} with weight {w}");
                }
            }
        }
    }

    #[test]
    fn torus_action_examples() {
        let t = QuantumTorus::new(2, 3, 1).unwrap();
        // A plain transposition permutes the y's.
        let swap = GroupElement::make(3, 1, vec![1, 0], vec![0, 0]).unwrap();
        assert_eq!(qtorus_act(&swap, &t.y(1)).unwrap(), t.y(2));
        assert_eq!(qtorus_act(&swap, &t.x(2)).unwrap(), t.x(1));
        // A diagonal twist scales x1 and fixes y1.
        let twist = GroupElement::make(3, 1, vec![0, 1], vec![1, 0]).unwrap();
        let zeta = RatFunc::constant(t.table(), Scalar::zeta_pow(3, 1));
        assert_eq!(qtorus_act(&twist, &t.x(1)).unwrap(), t.x(1).scale(&zeta));
        assert_eq!(qtorus_act(&twist, &t.y(1)).unwrap(), t.y(1));
        // The action is multiplicative on a nontrivial product.
        let a = t.monomial(Scalar::q_pow(3, 1), &[1, -2], &[0, 1]);
        let b = t.monomial(Scalar::zeta_pow(3, 2), &[0, 1], &[-1, 1]);
        for g in [&swap, &twist] {
            assert_eq!(
                qtorus_act(g, &a.mul(&b)).unwrap(),
                qtorus_act(g, &a).unwrap().mul(&qtorus_act(g, &b).unwrap())
            );
        }
        // Degree mismatch is rejected.
        let bad = GroupElement::identity(3, 1, 3);
        assert!(qtorus_act(&bad, &t.x(1)).is_err());
    }

    #[test]
    fn power_map_pins_and_homomorphism() {
        for (m, w) in [(2u32, 1u32), (3, 1), (4, 2)] {
            let source = QuantumTorus::new(2, m, m * w).unwrap();
            let target = QuantumTorus::new(2, m, w).unwrap();
            // x1 -> x1^m, y1 -> y1.
            assert_eq!(
                power_map(&source, &target, &source.x(1)).unwrap(),
                target.monomial(Scalar::one(m), &[m as i32, 0], &[0, 0])
            );
            assert_eq!(power_map(&source, &target, &source.y(1)).unwrap(), target.y(1));
            // Relation transport: y1 x1^m = q^{m w} x1^m y1 in the target.
            let xm = power_map(&source, &target, &source.x(1)).unwrap();
            let y1 = target.y(1);
            let qmw = RatFunc::constant(target.table(), Scalar::q_pow(m, (m * w) as i64));
            assert_eq!(y1.mul(&xm), xm.mul(&y1).scale(&qmw));
            // Images are fixed by every diagonal twist.
            let twist = GroupElement::make(m, 1, vec![0, 1], vec![1, 0]).unwrap();
            assert_eq!(qtorus_act(&twist, &xm).unwrap(), xm);
            // Homomorphism on seeded random pairs.
            let mut rng = ChaCha8Rng::seed_from_u64(7 + m as u64);
            for _ in 0..10 {
                let a = random_torus_element(&source, &mut rng);
                let b = random_torus_element(&source, &mut rng);
                let lhs = power_map(&source, &target, &a.mul(&b)).unwrap();
                let rhs = power_map(&source, &target, &a)
                    .unwrap()
                    .mul(&power_map(&source, &target, &b).unwrap());
                assert_eq!(lhs, rhs, "power map broke multiplicativity at m={m} w={w}");
            }
        }
        // Weight mismatch is rejected.
        let s = QuantumTorus::new(2, 4, 4).unwrap();
        let t = QuantumTorus::new(2, 4, 2).unwrap();
        assert!(power_map(&s, &t, &s.x(1)).is_err());
    }

    #[test]
    fn power_map_injective_on_monomials() {
        let source = QuantumTorus::new(2, 3, 3).unwrap();
        let target = QuantumTorus::new(2, 3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut images = Vec::new();
        for _ in 0..20 {
            let xe: Vec<i32> = (0..2).map(|_| rng.gen_range(-3..=3)).collect();
            let ye: Vec<i32> = (0..2).map(|_| rng.gen_range(-2..=2)).collect();
            let mono = source.monomial(Scalar::one(3), &xe, &ye);
            let img = power_map(&source, &target, &mono).unwrap();
            for (prev, prev_img) in &images {
                if prev != &mono {
                    assert_ne!(prev_img, &img, "distinct monomials collided");
                }
            }
            images.push((mono, img));
        }
    }

    #[test]
    fn eigenspace_examples() {
        // m = p = 2, n = 2: x1 x2 is pure in the k = 1 eigenspace.
        let t = QuantumTorus::new(2, 2, 1).unwrap();
        let f = t.monomial(Scalar::one(2), &[1, 1], &[0, 0]);
        let comps = eigenspace_decompose(&t, 2, &f).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps[0].is_zero());
        assert_eq!(comps[1], SkewElement::one(t.algebra()));
        // x1^2 + x2^2 is pure in the k = 0 eigenspace.
        let g = t
            .monomial(Scalar::one(2), &[2, 0], &[0, 0])
            .add(&t.monomial(Scalar::one(2), &[0, 2], &[0, 0]));
        let comps = eigenspace_decompose(&t, 2, &g).unwrap();
        assert_eq!(comps[0], g);
        assert!(comps[1].is_zero());
        // The identity decomposes as (1, 0, ..., 0) for any p.
        let t3 = QuantumTorus::new(2, 3, 1).unwrap();
        let comps = eigenspace_decompose(&t3, 3, &SkewElement::one(t3.algebra())).unwrap();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0], SkewElement::one(t3.algebra()));
        assert!(comps[1].is_zero() && comps[2].is_zero());
        // Non-invariant input is rejected.
        assert!(matches!(
            eigenspace_decompose(&t, 2, &t.x(1)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reynolds_and_decomposition_roundtrip() {
        for (m, p, n) in [(2u32, 2u32, 2u32), (3, 3, 2), (4, 2, 2)] {
            let mut rng = ChaCha8Rng::seed_from_u64(100 * m as u64 + p as u64);
            let records = verify_noether_decomposition(m, p, n, 5, &mut rng, 10_000).unwrap();
            assert_eq!(records.len(), 10);
            assert!(!has_failure(&records), "roundtrip failed for ({m},{p},{n}): {records:?}");
            assert!(records.iter().all(|c| c.status == Status::Pass));
        }
    }

    #[test]
    fn psi_rows_all_pass() {
        for (r, m, p) in [(&[1u32, 2][..], 2u32, 2u32), (&[2, 3], 3, 3), (&[1, 2, 3], 2, 1)] {
            let s = spec(r, m, p);
            let records = verify_psi(&s).unwrap();
            assert!(!records.is_empty());
            assert!(!has_failure(&records), "psi failed for {}: {records:?}", s.label());
            assert!(records.iter().all(|c| c.status == Status::Pass));
        }
        let s = spec(&[1, 2], 2, 2);
        assert!(matches!(psi_iso_check(&s, 0), Err(Error::OutOfRange(_))));
        assert!(matches!(psi_iso_check(&s, 2), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn psi_embed_maps_generators_to_row() {
        let s = spec(&[1, 2, 2], 3, 1);
        let torus = QuantumTorus::new(2, 3, 1).unwrap();
        let img = psi_embed(&s, 2, &torus.x(1)).unwrap();
        // x1 of the rank-2 torus lands on x_{21} of the ambient table.
        let flat = s.table().flat(VarIndex::new(2, 1));
        let expected = SkewElement::from_coeff(
            s.algebra(),
            RatFunc::from_poly(LaurentPoly::monomial(
                s.table(),
                Expo::unit(s.table().total_vars(), flat, 1),
                Scalar::one(3),
            )),
        );
        assert_eq!(img, expected);
        let img_y = psi_embed(&s, 2, &torus.y(2)).unwrap();
        assert_eq!(img_y, SkewElement::delta_pow(s.algebra(), VarIndex::new(2, 2), -1));
    }

    #[test]
    fn weyl_parameter_pins() {
        let t = weyl_parameters_torus(4, 2, 3).unwrap();
        assert_eq!(t.qbar, vec![2, 4, 4]);
        assert_eq!(t.base_transcendence_degree, 0);
        let t = weyl_parameters_torus(2, 1, 1).unwrap();
        assert_eq!(t.qbar, vec![2]);

        let s = weyl_parameters_signature(&spec(&[1, 2, 3], 2, 2));
        assert_eq!(s.qbar, vec![1, 1, 2]);
        assert_eq!(s.base_transcendence_degree, 3);
        let s = weyl_parameters_signature(&spec(&[1, 1], 5, 1));
        assert_eq!(s.qbar, vec![5]);
        assert_eq!(s.base_transcendence_degree, 1);
        // The staircase family: n-1 low exponents, n(n-1)/2 - (n-1) high.
        let s = weyl_parameters_signature(&spec(&[1, 2, 3, 4], 2, 2));
        assert_eq!(s.qbar, vec![1, 1, 1, 2, 2, 2]);
        assert_eq!(s.base_transcendence_degree, 4);

        let records = verify_parameters(&spec(&[1, 2, 3], 2, 2)).unwrap();
        assert!(!has_failure(&records));
        assert_eq!(records.iter().filter(|c| c.status == Status::Report).count(), 2);
    }
}
