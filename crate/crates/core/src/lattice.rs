//! Small exact integer-lattice utilities: row Hermite normal form,
//! membership and full-rank tests, and a three-valued certificate for
//! whether a finite monoid of exponent vectors generates given targets
//! under addition alone (no subtraction).
//!
//! Everything here works on tiny dense matrices of exponents (dimensions in
//! the tens, entries in the hundreds), so plain fraction-free integer
//! elimination over `i128` is exact and instant.

use std::collections::BTreeSet;

/// Outcome of a monoid-generation question. `Unknown` means the bounded
/// search neither produced the targets nor separated them.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenerationStatus {
    Yes,
    No,
    Unknown,
}

/// Row Hermite normal form of the lattice spanned by `rows`: echelon basis
/// with positive pivots, entries above each pivot reduced to `0..pivot`,
/// zero rows dropped. Rows may have any length but must agree.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let dim = rows[0].len();
    assert!(rows.iter().all(|r| r.len() == dim), "ragged matrix");
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&e| e as i128).collect())
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..dim {
        // Repeatedly reduce the column below pivot_row by the smallest
        // nonzero entry until at most one nonzero entry remains.
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in m.iter().enumerate().skip(pivot_row) {
                if row[col] != 0
                    && best.is_none_or(|b| row[col].abs() < m[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            let mut others = false;
            let pivot = m[b][col];
            for i in pivot_row..m.len() {
                if i != b && m[i][col] != 0 {
                    let q = div_floor(m[i][col], pivot);
                    for c in 0..dim {
                        m[i][c] -= q * m[b][c];
                    }
                    others |= m[i][col] != 0;
                }
            }
            if !others {
                m.swap(pivot_row, b);
                break;
            }
        }
        if m[pivot_row..].iter().all(|r| r[col] == 0) {
            continue;
        }
        if m[pivot_row][col] < 0 {
            for c in 0..dim {
                m[pivot_row][c] = -m[pivot_row][c];
            }
        }
        let pivot = m[pivot_row][col];
        for i in 0..pivot_row {
            let q = div_floor(m[i][col], pivot);
            if q != 0 {
                for c in 0..dim {
                    let step = q * m[pivot_row][c];
                    m[i][c] -= step;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    m.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|e| i64::try_from(e).expect("HNF entry overflow"))
                .collect()
        })
        .collect()
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Whether `v` lies in the lattice with the given row-HNF basis.
pub fn lattice_contains(hnf: &[Vec<i64>], v: &[i64]) -> bool {
    let mut v: Vec<i128> = v.iter().map(|&e| e as i128).collect();
    for row in hnf {
        let col = match row.iter().position(|&e| e != 0) {
            Some(c) => c,
            None => continue,
        };
        if v[col] == 0 {
            continue;
        }
        let pivot = row[col] as i128;
        if v[col] % pivot != 0 {
            return false;
        }
        let q = v[col] / pivot;
        for (c, &e) in row.iter().enumerate() {
            v[c] -= q * e as i128;
        }
    }
    v.iter().all(|&e| e == 0)
}

/// Whether the vectors span all of `Z^dim` as a lattice.
pub fn lattice_spans_full(vectors: &[Vec<i64>], dim: usize) -> bool {
    let hnf = hermite_normal_form(vectors);
    if hnf.len() != dim {
        return false;
    }
    (0..dim).all(|i| {
        hnf[i].iter().enumerate().all(|(j, &e)| e == i64::from(i == j))
    })
}

/// Does the additive monoid generated by `gens` (non-negative integer
/// combinations) contain every target?
///
/// Decision ladder:
/// 1. a target outside the *lattice* span is a definite `No`;
/// 2. a generator set closed under negation makes monoid = lattice, so the
///    lattice answer is exact;
/// 3. a linear functional that is non-negative on every generator but
///    negative on some target separates: definite `No`;
/// 4. breadth-first search over sums of at most `radius` generators
///    (deduplicated, capped at `cap` distinct vectors) can certify `Yes`;
/// 5. otherwise `Unknown`.
pub fn monoid_generates(
    gens: &[Vec<i64>],
    targets: &[Vec<i64>],
    radius: u32,
    cap: usize,
) -> GenerationStatus {
    if targets.is_empty() {
        return GenerationStatus::Yes;
    }
    let dim = targets[0].len();
    assert!(
        gens.iter().chain(targets).all(|v| v.len() == dim),
        "mixed dimensions"
    );
    let hnf = hermite_normal_form(gens);
    if targets.iter().any(|t| !lattice_contains(&hnf, t)) {
        return GenerationStatus::No;
    }
    let gen_set: BTreeSet<&Vec<i64>> = gens.iter().collect();
    let negation_closed = gens
        .iter()
        .all(|g| gen_set.contains(&g.iter().map(|&e| -e).collect::<Vec<_>>()));
    if negation_closed {
        return GenerationStatus::Yes;
    }
    // Separating functionals: +-coordinates and the +-total sum.
    let mut functionals: Vec<Vec<i64>> = Vec::new();
    for i in 0..dim {
        let mut f = vec![0i64; i + 1];
        f[i] = 1;
        f.resize(dim, 0);
        functionals.push(f.clone());
        functionals.push(f.into_iter().map(|e| -e).collect());
    }
    functionals.push(vec![1; dim]);
    functionals.push(vec![-1; dim]);
    let dot = |f: &[i64], v: &[i64]| -> i128 {
        f.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum()
    };
    for f in &functionals {
        if gens.iter().all(|g| dot(f, g) >= 0)
            && targets.iter().any(|t| dot(f, t) < 0)
        {
            return GenerationStatus::No;
        }
    }
    // Bounded forward search.
    let mut missing: BTreeSet<&Vec<i64>> = targets.iter().collect();
    missing.retain(|t| !t.iter().all(|&e| e == 0));
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = vec![vec![0; dim]];
    seen.insert(frontier[0].clone());
    for _ in 0..radius {
        if missing.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for v in &frontier {
            for g in gens {
                let s: Vec<i64> = v.iter().zip(g).map(|(&a, &b)| a + b).collect();
                if seen.insert(s.clone()) {
                    if seen.len() > cap {
                        return GenerationStatus::Unknown;
                    }
                    missing.remove(&s);
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    if missing.is_empty() {
        GenerationStatus::Yes
    } else {
        GenerationStatus::Unknown
    }
}
