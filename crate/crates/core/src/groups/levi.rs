use super::matrix::SignedMatrix;
use super::spec::GroupSpec;
use crate::algebra::PrimeField;
use crate::error::{Error, Result};

/// Every invertible `k × k` matrix over `F_p`, in lexicographic order of entries.
pub fn general_linear(f: &PrimeField, k: usize, limit: u128) -> Result<Vec<SignedMatrix>> {
    let total = (f.p() as u128).pow((k * k) as u32);
    if total > limit {
        return Err(Error::Guard {
            what: "matrix enumeration",
            needed: total,
            limit,
        });
    }
    let mut out = Vec::new();
    let mut digits = vec![0u32; k * k];
    for _ in 0..total {
        let m = SignedMatrix::from_rows(&digits.chunks(k).map(<[u32]>::to_vec).collect::<Vec<_>>());
        if m.inverse(f).is_some() {
            out.push(m);
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < f.p() {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

fn embed(spec: &GroupSpec, target: &mut SignedMatrix, start: usize, block: &SignedMatrix) {
    for a in 0..block.dim() {
        for b in 0..block.dim() {
            target.set(start + a, start + b, block.get(a, b));
        }
    }
    debug_assert!(start + block.dim() <= spec.dim());
}

/// The Levi factor `L`: block-diagonal elements of the group.
///
/// Each outer block `A_k` ranges over `GL(n_k)`, `A_{-k}` is forced by
/// `g† = g⁻¹`, and the middle block is found by filtering all matrices.
pub fn enumerate_levi(spec: &GroupSpec, limit: u128) -> Result<Vec<SignedMatrix>> {
    let f = spec.field();
    let dim = spec.dim();
    let segs = spec.segments();
    let nb = segs.len();
    let ell = nb / 2;

    // For each outer block: list of (A_k, A_{-k}) pairs.
    let mut factors: Vec<Vec<SignedMatrix>> = Vec::new();
    let mut predicted: u128 = 1;
    for t in 0..ell {
        let gl = general_linear(f, segs[t].size, limit.max(1 << 20))?;
        predicted = predicted.saturating_mul(gl.len() as u128);
        let mut parts = Vec::with_capacity(gl.len());
        for a in gl {
            let mut g = SignedMatrix::identity(dim);
            embed(spec, &mut g, segs[t].start, &a);
            let mirror = &segs[nb - 1 - t];
            let d = spec.dagger(&g);
            let db = SignedMatrix::from_rows(&d.block(mirror.positions(), mirror.positions()));
            let inv = db.inverse(f).ok_or_else(|| Error::internal("dagger of invertible block is singular"))?;
            embed(spec, &mut g, mirror.start, &inv);
            parts.push(g);
        }
        factors.push(parts);
    }
    if spec.has_middle() {
        let mid = &segs[ell];
        let all = general_linear(f, mid.size, 1 << 24)?;
        let mut parts = Vec::new();
        for a in all {
            let mut g = SignedMatrix::identity(dim);
            embed(spec, &mut g, mid.start, &a);
            if spec.dagger(&g).mul(f, &g).is_identity() {
                parts.push(g);
            }
        }
        predicted = predicted.saturating_mul(parts.len() as u128);
        factors.push(parts);
    }
    if predicted > limit {
        return Err(Error::Guard {
            what: "Levi factor",
            needed: predicted,
            limit,
        });
    }
    // Blocks occupy disjoint positions, so the product is a direct sum.
    let mut out = vec![SignedMatrix::identity(dim)];
    for parts in &factors {
        let mut next = Vec::with_capacity(out.len() * parts.len());
        for g in &out {
            for h in parts {
                next.push(g.mul(f, h));
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Family;

    #[test]
    fn gl_orders() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(general_linear(&f, 2, 1 << 20).unwrap().len(), 48);
        assert_eq!(general_linear(&f, 1, 1 << 20).unwrap().len(), 2);
    }

    #[test]
    fn levi_orders() {
        let cases = [
            (GroupSpec::borel(Family::B, 2, 3).unwrap(), 8),
            (GroupSpec::borel(Family::C, 2, 3).unwrap(), 4),
            (GroupSpec::borel(Family::D, 2, 3).unwrap(), 4),
            (GroupSpec::new(Family::C, 2, 3, &[2, 2]).unwrap(), 48),
            (GroupSpec::new(Family::B, 2, 3, &[1, 3, 1]).unwrap(), 96),
            (GroupSpec::borel(Family::C, 2, 5).unwrap(), 16),
        ];
        for (spec, order) in cases {
            let l = enumerate_levi(&spec, 1_000_000).unwrap();
            assert_eq!(l.len(), order, "{}", spec.describe());
            let f = spec.field();
            for g in &l {
                assert!(spec.is_in_group(g));
                assert!(spec.dagger(g).mul(f, g).is_identity());
            }
        }
    }

    #[test]
    fn guard_trips() {
        let spec = GroupSpec::new(Family::C, 2, 3, &[2, 2]).unwrap();
        assert!(matches!(enumerate_levi(&spec, 10), Err(Error::Guard { .. })));
    }
}
