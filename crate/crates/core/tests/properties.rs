use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use supertheory::algebra::{CycField, Cyclotomic};
use supertheory::groups::{springer_inv, springer_map, SignedMatrix};
use supertheory::{Family, GroupSpec, Guards, Parabolic};

fn field(m: u64) -> Arc<CycField> {
    CycField::new(m)
}

/// `Σ c_k ζ_m^k / d`
fn cyc(f: &Arc<CycField>, coeffs: &[i64], d: i64) -> Cyclotomic {
    let m = f.conductor();
    let mut acc = Cyclotomic::zero(f);
    for (k, &c) in coeffs.iter().enumerate() {
        let term = Cyclotomic::from_integer(f, c).checked_mul(&Cyclotomic::root_of_unity(f, k as i64, m)).unwrap();
        acc = acc.checked_add(&term).unwrap();
    }
    acc.checked_mul(&Cyclotomic::from_integer(f, d).inv().unwrap()).unwrap()
}

fn coeffs() -> impl Strategy<Value = (Vec<i64>, i64)> {
    (prop::collection::vec(-4i64..=4, 1..16), prop_oneof![Just(1i64), 1i64..7])
}

const CONDUCTORS: [u64; 4] = [3, 5, 12, 15];

proptest! {
    #[test]
    fn cyclotomic_ring_laws(mi in 0usize..4, a in coeffs(), b in coeffs(), c in coeffs()) {
        let f = field(CONDUCTORS[mi]);
        let (a, b, c) = (cyc(&f, &a.0, a.1), cyc(&f, &b.0, b.1), cyc(&f, &c.0, c.1));
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.checked_mul(&a).unwrap());
        prop_assert_eq!(
            ab.checked_mul(&c).unwrap(),
            a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b.checked_add(&c).unwrap()).unwrap(),
            ab.checked_add(&a.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.checked_sub(&a).unwrap(), Cyclotomic::zero(&f));
        if !a.is_zero() {
            prop_assert_eq!(a.checked_mul(&a.inv().unwrap()).unwrap(), Cyclotomic::one(&f));
        }
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(mi in 0usize..4, a in coeffs(), b in coeffs()) {
        let f = field(CONDUCTORS[mi]);
        let (a, b) = (cyc(&f, &a.0, a.1), cyc(&f, &b.0, b.1));
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(
            a.checked_mul(&b).unwrap().conjugate(),
            a.conjugate().checked_mul(&b.conjugate()).unwrap()
        );
        let norm = a.checked_mul(&a.conjugate()).unwrap();
        prop_assert_eq!(norm.conjugate(), norm);
    }

    #[test]
    fn coefficient_strings_round_trip(mi in 0usize..4, a in coeffs()) {
        let f = field(CONDUCTORS[mi]);
        let a = cyc(&f, &a.0, a.1);
        let s = a.to_strings();
        prop_assert_eq!(s.len(), f.degree());
        prop_assert_eq!(Cyclotomic::from_strings(&f, &s).unwrap(), a);
    }
}

fn parabolics() -> &'static [Parabolic] {
    static P: OnceLock<Vec<Parabolic>> = OnceLock::new();
    P.get_or_init(|| {
        [(Family::B, &[1usize, 1, 1][..]), (Family::C, &[1, 1]), (Family::D, &[1, 1]), (Family::C, &[2]), (Family::B, &[1, 3])]
            .iter()
            .map(|&(fam, half)| {
                let spec = GroupSpec::from_half_blocks(fam, 2, 3, half).unwrap();
                Parabolic::new(spec, &Guards::default()).unwrap()
            })
            .collect()
    })
}

fn matrix(dim: usize, entries: &[u32]) -> SignedMatrix {
    let rows: Vec<Vec<u32>> = entries.chunks(dim).take(dim).map(<[u32]>::to_vec).collect();
    SignedMatrix::from_rows(&rows)
}

proptest! {
    #[test]
    fn dagger_reverses_products(pi in 0usize..5, a in prop::collection::vec(0u32..3, 25), b in prop::collection::vec(0u32..3, 25)) {
        let par = &parabolics()[pi];
        let spec = par.spec();
        let f = spec.field();
        let (x, y) = (matrix(spec.dim(), &a), matrix(spec.dim(), &b));
        prop_assert_eq!(spec.dagger(&spec.dagger(&x)), x.clone());
        prop_assert_eq!(spec.dagger(&x.mul(f, &y)), spec.dagger(&y).mul(f, &spec.dagger(&x)));
        prop_assert_eq!(spec.dagger(&x.add(f, &y)), spec.dagger(&x).add(f, &spec.dagger(&y)));
    }

    #[test]
    fn cayley_map_is_a_bijection_onto_the_group(pi in 0usize..5, seed in any::<u32>()) {
        let par = &parabolics()[pi];
        let spec = par.spec();
        let x = seed % par.u_size() as u32;
        let y = par.u_matrix(&par.decode_u(x));
        prop_assert_eq!(spec.dagger(&y), y.neg(spec.field()));
        let g = springer_inv(spec, &y).unwrap();
        prop_assert!(spec.is_in_group(&g));
        prop_assert_eq!(&g, par.unipotent(x));
        prop_assert_eq!(springer_map(spec, &g).unwrap(), y);
    }

    #[test]
    fn encoded_multiplication_matches_matrices(pi in 0usize..5, s in any::<(u32, u32, u32)>()) {
        let par = &parabolics()[pi];
        let f = par.field();
        let n = par.g_order() as u32;
        let (a, b, c) = (s.0 % n, s.1 % n, s.2 % n);
        let ab = par.g_mul(a, b);
        prop_assert_eq!(par.g_matrix(ab), par.g_matrix(a).mul(f, &par.g_matrix(b)));
        prop_assert_eq!(par.g_mul(ab, c), par.g_mul(a, par.g_mul(b, c)));
        prop_assert_eq!(par.g_mul(a, par.g_inv(a)), par.g_identity());
        prop_assert!(par.spec().is_in_group(&par.g_matrix(a)));
    }

    #[test]
    fn levi_conjugation_preserves_u(pi in 0usize..5, s in any::<(u32, u32)>()) {
        let par = &parabolics()[pi];
        let f = par.field();
        let r = s.0 % par.levi().len() as u32;
        let x = s.1 % par.u_size() as u32;
        let h = &par.levi()[r as usize];
        let hi = h.inverse(f).unwrap();
        let conj = h.mul(f, par.unipotent(x)).mul(f, &hi);
        prop_assert_eq!(&conj, par.unipotent(par.ad(r, x)));
    }
}
