//! Integer lattices in `Z^d` given by generating sets.
//!
//! Used to describe subgroups of a free abelian group: kernels of the
//! action homomorphism and point stabilizers.

/// Row-style Hermite normal form of the lattice spanned by `gens`.
///
/// The result is upper triangular with positive pivots and entries above each
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_basis(dim: usize, gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i128>> = gens
        .iter()
        .filter(|g| g.iter().any(|&x| x != 0))
        .map(|g| {
            assert_eq!(g.len(), dim, "generator has wrong dimension");
            g.iter().map(|&x| i128::from(x)).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..dim {
        loop {
            // Smallest non-zero entry in this column at or below `top`.
            let best = (top..rows.len())
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].abs());
            let Some(best) = best else { break };
            rows.swap(top, best);
            let pivot = rows[top][col];
            let mut done = true;
            for r in top + 1..rows.len() {
                let q = rows[r][col].div_euclid(pivot);
                if q != 0 {
                    let pivot_row = rows[top].clone();
                    for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                        *x -= q * p;
                    }
                }
                if rows[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < rows.len() && rows[top][col] != 0 {
            if rows[top][col] < 0 {
                for x in rows[top].iter_mut() {
                    *x = -*x;
                }
            }
            pivots.push((top, col));
            top += 1;
        }
    }
    rows.truncate(top);
    for &(p, col) in &pivots {
        let pivot = rows[p][col];
        for r in 0..p {
            let q = rows[r][col].div_euclid(pivot);
            if q != 0 {
                let pivot_row = rows[p].clone();
                for (x, v) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= q * v;
                }
            }
        }
    }
    rows.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).expect("lattice entry overflow"))
                .collect()
        })
        .collect()
}

/// Index of a full-rank lattice given in Hermite form, or `None` when the
/// lattice has lower rank.
pub fn index_of(dim: usize, basis: &[Vec<i64>]) -> Option<u64> {
    if basis.len() != dim {
        return None;
    }
    let mut idx: u64 = 1;
    for (i, row) in basis.iter().enumerate() {
        let d = row[i];
        if d == 0 {
            return None;
        }
        idx = idx.checked_mul(d.unsigned_abs())?;
    }
    Some(idx)
}

/// Membership test against a Hermite basis.
pub fn contains(dim: usize, basis: &[Vec<i64>], v: &[i64]) -> bool {
    let mut rest: Vec<i128> = v.iter().map(|&x| i128::from(x)).collect();
    for row in basis {
        let Some(col) = row.iter().position(|&x| x != 0) else {
            continue;
        };
        let p = i128::from(row[col]);
        if rest[col] % p != 0 {
            return false;
        }
        let q = rest[col] / p;
        for (x, r) in rest.iter_mut().zip(row) {
            *x -= q * i128::from(*r);
        }
    }
    debug_assert_eq!(rest.len(), dim);
    rest.iter().all(|&x| x == 0)
}
