use super::matrix::SignedMatrix;
use super::spec::GroupSpec;
use crate::error::{Error, Result};

/// `(2 + z)⁻¹` for nilpotent `z` via the terminating geometric series.
fn inverse_two_plus(spec: &GroupSpec, z: &SignedMatrix) -> SignedMatrix {
    let f = spec.field();
    let half = f.half();
    let step = z.scale(f, f.neg(half)); // -z/2
    let mut term = SignedMatrix::identity(spec.dim());
    let mut acc = term.clone();
    loop {
        term = term.mul(f, &step);
        if term.is_zero() {
            break;
        }
        acc = acc.add(f, &term);
    }
    acc.scale(f, half)
}

fn check_upper(spec: &GroupSpec, x: &SignedMatrix) -> Result<()> {
    let dim = spec.dim();
    for a in 0..dim {
        for b in 0..dim {
            if x.get(a, b) != 0 && !spec.is_upper(a, b) {
                return Err(Error::usage("matrix is not block strictly upper triangular"));
            }
        }
    }
    Ok(())
}

/// The Cayley map `f(1 + x) = 2x (x + 2)⁻¹` on the block unitriangular group.
pub fn springer_map(spec: &GroupSpec, g: &SignedMatrix) -> Result<SignedMatrix> {
    let f = spec.field();
    let x = g.sub(f, &SignedMatrix::identity(spec.dim()));
    check_upper(spec, &x)?;
    Ok(x.scale(f, 2).mul(f, &inverse_two_plus(spec, &x)))
}

/// Inverse of [`springer_map`]: `y ↦ (2 + y)(2 - y)⁻¹`.
pub fn springer_inv(spec: &GroupSpec, y: &SignedMatrix) -> Result<SignedMatrix> {
    check_upper(spec, y)?;
    let f = spec.field();
    let two_plus = SignedMatrix::scalar(spec.dim(), 2).add(f, y);
    Ok(two_plus.mul(f, &inverse_two_plus(spec, &y.neg(f))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Family;

    #[test]
    fn identity_and_square_zero() {
        let spec = GroupSpec::borel(Family::B, 2, 3).unwrap();
        let f = spec.field();
        let one = SignedMatrix::identity(5);
        assert!(springer_map(&spec, &one).unwrap().is_zero());
        let x = SignedMatrix::unit(5, 0, 3);
        let g = one.add(f, &x);
        assert_eq!(springer_map(&spec, &g).unwrap(), x);
        assert!(springer_map(&spec, &SignedMatrix::scalar(5, 2)).is_err());
    }

    #[test]
    fn roundtrip_on_upper_matrices() {
        let spec = GroupSpec::borel(Family::C, 2, 5).unwrap();
        let f = spec.field();
        let mut y = SignedMatrix::zero(4);
        let mut v = 1;
        for a in 0..4 {
            for b in a + 1..4 {
                y.set(a, b, v % 5);
                v += 2;
            }
        }
        let g = springer_inv(&spec, &y).unwrap();
        assert_eq!(springer_map(&spec, &g).unwrap(), y);
        let back = springer_inv(&spec, &springer_map(&spec, &g).unwrap()).unwrap();
        assert_eq!(back, g);
        let _ = f;
    }
}
