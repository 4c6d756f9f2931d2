use std::collections::BTreeSet;

use supertheory::gtheory::{enumerate_basic_pairs, pair_signature, BasicPair};
use supertheory::{Family, GroupSpec, Guards, Parabolic, Session};

fn session(fam: Family, q: u64, half: &[usize]) -> Session {
    let spec = GroupSpec::from_half_blocks(fam, 2, q, half).unwrap();
    Session::new(spec, Guards::default(), None).unwrap()
}

/// Subsets of roots checked one at a time: distinct rows and columns in
/// `D ∪ D'`, then every coefficient choice allowed on each subset.
fn brute_force(par: &Parabolic, delta: u32) -> BTreeSet<(Vec<usize>, Vec<u32>)> {
    let roots = par.u_roots();
    let c = par.spec().family() == Family::C;
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << roots.len() {
        let chosen: Vec<usize> = (0..roots.len()).filter(|k| mask >> k & 1 == 1).collect();
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        for &k in &chosen {
            let r = &roots[k];
            rows.push(r.row);
            cols.push(r.col);
            if !r.is_self_mirror() {
                rows.push(r.mirror_row);
                cols.push(r.mirror_col);
            }
        }
        let distinct = |v: &Vec<usize>| v.iter().collect::<BTreeSet<_>>().len() == v.len();
        if !distinct(&rows) || !distinct(&cols) {
            continue;
        }
        let special: Vec<usize> = (0..chosen.len()).filter(|&t| c && roots[chosen[t]].is_self_mirror()).collect();
        for sub in 0u32..1 << special.len() {
            let mut phi = vec![1; chosen.len()];
            let mut blocks = Vec::new();
            for (s, &t) in special.iter().enumerate() {
                if sub >> s & 1 == 1 {
                    phi[t] = delta;
                    blocks.push(roots[chosen[t]].block_row);
                }
            }
            if blocks.iter().collect::<BTreeSet<_>>().len() == blocks.len() {
                out.insert((chosen.clone(), phi));
            }
        }
    }
    out
}

fn as_set(pairs: &[BasicPair]) -> BTreeSet<(Vec<usize>, Vec<u32>)> {
    pairs.iter().map(|p| (p.roots.clone(), p.phi.clone())).collect()
}

#[test]
fn enumeration_matches_brute_force() {
    for (fam, q, half) in [
        (Family::B, 3, &[1, 1, 1][..]),
        (Family::C, 3, &[1, 1]),
        (Family::D, 3, &[1, 1]),
        (Family::C, 3, &[2]),
        (Family::B, 3, &[1, 3]),
        (Family::C, 5, &[1, 1]),
    ] {
        let s = session(fam, q, half);
        let pairs = enumerate_basic_pairs(&s.parabolic, s.delta);
        assert!(pairs[0].roots.is_empty(), "empty pair comes first");
        assert_eq!(as_set(&pairs).len(), pairs.len(), "no repeats");
        assert_eq!(as_set(&pairs), brute_force(&s.parabolic, s.delta), "{}", s.spec().describe());
    }
}

#[test]
fn d2_has_no_two_root_pairs() {
    let s = session(Family::D, 3, &[1, 1]);
    let pairs = enumerate_basic_pairs(&s.parabolic, s.delta);
    let labels: Vec<_> = pairs.iter().map(|p| p.label(&s.parabolic).to_string()).collect();
    let got: BTreeSet<&str> = labels.iter().map(String::as_str).collect();
    assert_eq!(got, BTreeSet::from(["[]", "[[2,-1,1]]", "[[2,1,1]]"]));
    assert_eq!(labels.len(), 3);
    assert!(pairs.iter().all(|p| p.roots.len() <= 1));
    assert!(pairs.iter().all(|p| p.phi.iter().all(|&c| c == 1)));
}

#[test]
fn non_square_only_on_symplectic_long_roots() {
    let s = session(Family::C, 3, &[1, 1]);
    let par = &s.parabolic;
    assert_eq!(s.delta, 2);
    let pairs = enumerate_basic_pairs(par, s.delta);
    let mut with_delta = 0;
    for p in &pairs {
        for (&k, &c) in p.roots.iter().zip(&p.phi) {
            if c == s.delta {
                with_delta += 1;
                assert!(par.u_roots()[k].is_self_mirror());
            }
        }
    }
    assert!(with_delta > 0);
    // (2,-2) and (1,-1) each carry 1 or δ; both may be chosen together
    let long: Vec<_> = pairs
        .iter()
        .filter(|p| p.roots.len() == 2 && p.roots.iter().all(|&k| par.u_roots()[k].is_self_mirror()))
        .collect();
    assert_eq!(long.len(), 4);
}

#[test]
fn non_square_marks_a_negative_sign() {
    let s = session(Family::C, 3, &[1, 1]);
    let par = &s.parabolic;
    let k = par.u_roots().iter().position(|r| (r.i, r.j) == (1, -1)).unwrap();
    let plain = pair_signature(par, &BasicPair { roots: vec![k], phi: vec![1] }, s.delta);
    let marked = pair_signature(par, &BasicPair { roots: vec![k], phi: vec![s.delta] }, s.delta);
    assert_eq!(plain.ranks, marked.ranks);
    assert_ne!(plain.d, marked.d);
    assert!(marked.d.iter().any(|&(_, d)| d == -1));
    assert!(plain.d.iter().all(|&(_, d)| d == 1));
}
