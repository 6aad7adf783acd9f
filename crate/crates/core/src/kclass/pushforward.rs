use num_traits::One;

use crate::algebra::{Factored, FactoredSum, Monomial, Permutation, Rational, VarGroup, VariableTable};
use crate::error::{Error, Result};
use crate::parallel;

use super::space::SpaceDescriptor;

/// `∏_k (1 - dual(χ_k))`, the K-theoretic Euler class of the dual of a sum
/// of lines.
pub fn lambda_minus1_dual_factored(table: &VariableTable, chars: &[Monomial]) -> Factored {
    let mut out = Factored::one(table);
    for c in chars {
        let f = Factored::one_minus(table, Rational::one(), c.inv(), 1)
            .expect("1 - monomial is never the zero polynomial");
        out = out.mul(&f);
    }
    out
}

pub fn lambda_minus1_dual(table: &VariableTable, chars: &[Monomial]) -> crate::algebra::RationalExpression {
    lambda_minus1_dual_factored(table, chars).to_rx()
}

/// Block sizes `m_i - m_{i-1}` from increasing dimensions ending at `r`.
pub fn block_sizes(dims: &[usize]) -> Result<Vec<usize>> {
    if dims.is_empty() || dims[0] == 0 || !dims.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::DimensionMismatch(format!("dimensions {dims:?} must be positive and increasing")));
    }
    let mut prev = 0;
    Ok(dims
        .iter()
        .map(|&m| {
            let b = m - prev;
            prev = m;
            b
        })
        .collect())
}

/// `1 - L_a^∨ L_b`, written over the given table.
pub fn pair_factor(table: &VariableTable, a: usize, b: usize, qexp: i32) -> Factored {
    let mut m = Monomial::var(table.len(), 0, qexp);
    m.set_exp(a, m.exp(a) - 1);
    m.set_exp(b, m.exp(b) + 1);
    Factored::one_minus(table, Rational::one(), m, 1).expect("nonzero factor")
}

/// `∏_{i>j} ∏_{s∈B_i, t∈B_j} (1 - L_s^∨ L_t)` for consecutive blocks of `vars`.
pub fn block_lambda(table: &VariableTable, vars: &[usize], blocks: &[usize]) -> Factored {
    let mut starts = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for &b in blocks {
        starts.push(acc);
        acc += b;
    }
    let mut out = Factored::one(table);
    for i in 0..blocks.len() {
        for j in 0..i {
            for s in starts[i]..starts[i] + blocks[i] {
                for t in starts[j]..starts[j] + blocks[j] {
                    out = out.mul(&pair_factor(table, vars[s], vars[t], 0));
                }
            }
        }
    }
    out
}

fn grassmannian_of(target: &SpaceDescriptor) -> Result<(usize, usize)> {
    target
        .as_grassmannian()
        .ok_or_else(|| Error::InvalidSpace(format!("pushforward target {target} is not a Grassmannian")))
}

/// λ₋₁ of the dual relative tangent bundle of `Fl(dims; r) → Gr(r, n)`,
/// with the dual on the higher block index.
pub fn relative_tangent_euler(dims: &[usize], target: &SpaceDescriptor) -> Result<crate::algebra::RationalExpression> {
    Ok(relative_tangent_euler_factored(dims, target)?.to_rx())
}

pub fn relative_tangent_euler_factored(dims: &[usize], target: &SpaceDescriptor) -> Result<Factored> {
    let (r, _) = grassmannian_of(target)?;
    let blocks = block_sizes(dims)?;
    if *dims.last().unwrap() != r {
        return Err(Error::DimensionMismatch(format!("flag top dimension {} differs from r={r}", dims.last().unwrap())));
    }
    Ok(block_lambda(target.table(), &target.levels()[0].vars, &blocks))
}

/// Generators of the product of symmetric groups on consecutive blocks.
pub fn block_transpositions(blocks: &[usize]) -> Vec<Permutation> {
    let n: usize = blocks.iter().sum();
    let mut out = Vec::new();
    let mut start = 0;
    for &b in blocks {
        for k in start..start + b.saturating_sub(1) {
            out.push(Permutation::transposition(n, k, k + 1).expect("in range"));
        }
        start += b;
    }
    out
}

/// Checks `w f = f` for adjacent transpositions inside each block.
pub fn check_block_invariant(f: &FactoredSum, group: &VarGroup, blocks: &[usize]) -> Result<()> {
    for w in block_transpositions(blocks) {
        let moved = f.permute(&w, group)?;
        if !moved.equals(f)? {
            let (a, b) = first_moved(&w);
            return Err(Error::NotInvariant(format!("transposition of positions {} and {}", a + 1, b + 1)));
        }
    }
    Ok(())
}

fn first_moved(w: &Permutation) -> (usize, usize) {
    let moved: Vec<usize> = (0..w.len()).filter(|&i| w.image(i) != i).collect();
    (moved[0], moved[moved.len() - 1])
}

/// Pushes `f` from the flag with blocks `fine` to the coarser flag obtained
/// by merging consecutive fine blocks into the blocks `coarse`.
///
/// Each coarse block contributes `Σ_w w(f / λ)` over minimal coset
/// representatives of the fine blocks it contains.
pub fn weyl_pushforward_blocks(
    f: &FactoredSum,
    group: &VarGroup,
    fine: &[usize],
    coarse: &[usize],
) -> Result<FactoredSum> {
    let table = f.table().clone();
    let n: usize = fine.iter().sum();
    if coarse.iter().sum::<usize>() != n || group.len() != n {
        return Err(Error::DimensionMismatch("block sizes do not match the variable group".into()));
    }
    // Group fine blocks under coarse ones.
    let mut grouping: Vec<Vec<usize>> = Vec::new();
    let mut fi = 0;
    for &c in coarse {
        let mut acc = 0;
        let mut members = Vec::new();
        while acc < c {
            let b = *fine.get(fi).ok_or_else(|| Error::DimensionMismatch("fine blocks do not refine coarse blocks".into()))?;
            acc += b;
            members.push(b);
            fi += 1;
        }
        if acc != c {
            return Err(Error::DimensionMismatch("fine blocks do not refine coarse blocks".into()));
        }
        grouping.push(members);
    }
    let mut lambda = Factored::one(&table);
    let mut perms: Vec<Permutation> = vec![Permutation::identity(n)];
    let mut offset = 0;
    for members in &grouping {
        let size: usize = members.iter().sum();
        let vars = &group.vars()[offset..offset + size];
        lambda = lambda.mul(&block_lambda(&table, vars, members));
        let local = Permutation::shuffles(members);
        let mut next = Vec::with_capacity(perms.len() * local.len());
        for p in &perms {
            for l in &local {
                let mut images = p.images().to_vec();
                for k in 0..size {
                    images[offset + k] = offset + l.image(k);
                }
                next.push(Permutation::from_images(images)?);
            }
        }
        perms = next;
        offset += size;
    }
    let quotient = f.mul_term(&lambda.recip()?);
    let parts = parallel::try_ordered_map(&perms, |w| quotient.permute(w, group))?;
    let mut out = FactoredSum::zero(&table);
    for p in parts {
        out = out.add(&p);
    }
    Ok(out)
}

/// Pushforward along `Fl(dims; r) → Gr(r, n)`. The result is checked for
/// full `S_r` invariance.
pub fn weyl_pushforward(f: &FactoredSum, dims: &[usize], target: &SpaceDescriptor) -> Result<FactoredSum> {
    let (r, _) = grassmannian_of(target)?;
    let blocks = block_sizes(dims)?;
    if *dims.last().unwrap() != r {
        return Err(Error::DimensionMismatch(format!("flag top dimension {} differs from r={r}", dims.last().unwrap())));
    }
    let group = target.level_group(1);
    let out = weyl_pushforward_blocks(f, &group, &blocks, &[r])?;
    check_block_invariant(&out, &group, &[r])?;
    Ok(out)
}

/// Alternate reading: `Σ_w w(f) / ((-1)^{ℓ(w)} λ)` with `λ` held fixed.
/// Kept for comparison; it does not pass the pushforward oracles.
pub fn weyl_pushforward_signed(f: &FactoredSum, dims: &[usize], target: &SpaceDescriptor) -> Result<FactoredSum> {
    let (r, _) = grassmannian_of(target)?;
    let blocks = block_sizes(dims)?;
    if *dims.last().unwrap() != r {
        return Err(Error::DimensionMismatch(format!("flag top dimension {} differs from r={r}", dims.last().unwrap())));
    }
    let table = target.table();
    let group = target.level_group(1);
    let lambda_inv = block_lambda(table, group.vars(), &blocks).recip()?;
    let mut out = FactoredSum::zero(table);
    for w in Permutation::shuffles(&blocks) {
        let sign = if w.inversions() % 2 == 0 { Rational::one() } else { -Rational::one() };
        out = out.add(&f.permute(&w, &group)?.mul_term(&lambda_inv).scale(&sign));
    }
    Ok(out)
}
