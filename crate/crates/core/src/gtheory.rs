//! The supercharacter theory of `G` coming from `Gb`-orbits: basic pairs
//! `(D, φ)`, their rank signatures, the merged decompositions `I^D` and
//! `I_h`, and the characters and classes built from them.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::linalg::rank;
use crate::algebra::IntCyc;
use crate::chartab::{conjugacy_classes, irr_characters};
use crate::error::Result;
use crate::groups::{Family, GroupSpec, Parabolic, Root, SignedMatrix, SubgroupTag};
use crate::orbits::{dot_action_on_dual, dot_action_on_u, partition_orbits, Action, OrbitPartition};
use crate::session::Session;
use crate::theory::{dedup_characters, form_sum_values, ClassCollector, Domain, SuperCharacter, SuperTheory};
use crate::utheory::{span_points, FormContext};
use crate::verify::Check;

/// A rook placement `D` of roots of `u` with coefficients `φ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasicPair {
    /// Indices into the roots of `u`.
    pub roots: Vec<usize>,
    /// `φ(γ)` for each root, `1` or the fixed non-square.
    pub phi: Vec<u32>,
}

impl BasicPair {
    /// Coordinates of `x_{D,φ} = Σ φ(γ) E_γ`; the same vector gives `λ_{D,φ}`.
    pub fn coords(&self, dim_u: usize) -> Vec<u32> {
        let mut v = vec![0; dim_u];
        for (&r, &c) in self.roots.iter().zip(&self.phi) {
            v[r] = c;
        }
        v
    }

    pub fn label(&self, par: &Parabolic) -> Value {
        let u = par.u_roots();
        Value::Array(
            self.roots
                .iter()
                .zip(&self.phi)
                .map(|(&r, &c)| json!([u[r].i, u[r].j, c]))
                .collect(),
        )
    }
}

/// Block ranks `r_km` for block pairs above the diagonal and the signs `d_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PairSignature {
    pub ranks: Vec<((i32, i32), usize)>,
    pub d: Vec<(i32, i8)>,
}

/// All basic pairs, the empty one first.
pub fn enumerate_basic_pairs(par: &Parabolic, delta: u32) -> Vec<BasicPair> {
    let spec = par.spec();
    let roots = par.u_roots();
    let dim = spec.dim();
    let mut out = Vec::new();
    let mut rows = vec![false; dim];
    let mut cols = vec![false; dim];
    let mut delta_used = vec![false; spec.segments().len()];
    let mut current = BasicPair {
        roots: Vec::new(),
        phi: Vec::new(),
    };

    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        spec: &GroupSpec,
        roots: &[Root],
        delta: u32,
        rows: &mut [bool],
        cols: &mut [bool],
        delta_used: &mut [bool],
        current: &mut BasicPair,
        out: &mut Vec<BasicPair>,
    ) {
        if k == roots.len() {
            out.push(current.clone());
            return;
        }
        rec(k + 1, spec, roots, delta, rows, cols, delta_used, current, out);
        let r = &roots[k];
        let mut cells = vec![(r.row, r.col)];
        if !r.is_self_mirror() {
            cells.push((r.mirror_row, r.mirror_col));
        }
        if cells.iter().any(|&(a, b)| rows[a] || cols[b]) {
            return;
        }
        for &(a, b) in &cells {
            rows[a] = true;
            cols[b] = true;
        }
        current.roots.push(k);
        current.phi.push(1);
        rec(k + 1, spec, roots, delta, rows, cols, delta_used, current, out);
        let seg = spec.segment_of_pos(r.row);
        if spec.family() == Family::C && r.is_self_mirror() && !delta_used[seg] {
            delta_used[seg] = true;
            *current.phi.last_mut().unwrap() = delta;
            rec(k + 1, spec, roots, delta, rows, cols, delta_used, current, out);
            delta_used[seg] = false;
        }
        current.roots.pop();
        current.phi.pop();
        for &(a, b) in &cells {
            rows[a] = false;
            cols[b] = false;
        }
    }

    rec(0, spec, roots, delta, &mut rows, &mut cols, &mut delta_used, &mut current, &mut out);
    out
}

/// Ranks of the blocks `(I_k, I_m)` of a matrix, `k` above `m`.
pub fn block_ranks(spec: &GroupSpec, m: &SignedMatrix) -> Vec<((i32, i32), usize)> {
    let f = spec.field();
    let segs = spec.segments();
    let mut out = Vec::new();
    for (t, st) in segs.iter().enumerate() {
        for ss in &segs[t + 1..] {
            let block = m.block(st.positions(), ss.positions());
            out.push(((st.label, ss.label), rank(f, &block)));
        }
    }
    out
}

/// Ranks of the corners with rows in blocks `I_k` and below and columns in
/// blocks `I_m` and above, `k` above `m`. Unlike single block ranks these
/// are unchanged by `x ↦ g x g†` for block upper triangular `g`; on a basic
/// pair they determine the block ranks and conversely.
pub fn corner_ranks(spec: &GroupSpec, m: &SignedMatrix) -> Vec<((i32, i32), usize)> {
    let f = spec.field();
    let segs = spec.segments();
    let dim = spec.dim();
    let mut out = Vec::new();
    for (t, st) in segs.iter().enumerate() {
        for ss in &segs[t + 1..] {
            let block = m.block(st.start..dim, 0..ss.start + ss.size);
            out.push(((st.label, ss.label), rank(f, &block)));
        }
    }
    out
}

pub fn pair_signature(par: &Parabolic, pair: &BasicPair, delta: u32) -> PairSignature {
    let spec = par.spec();
    let x = par.u_matrix(&pair.coords(par.dim_u()));
    let roots = par.u_roots();
    let d = spec
        .segments()
        .iter()
        .filter(|s| s.label > 0)
        .map(|s| {
            let marked = pair.roots.iter().zip(&pair.phi).any(|(&r, &c)| {
                let r = &roots[r];
                c == delta && delta != 1 && r.is_self_mirror() && r.block_row == s.label
            });
            (s.label, if marked { -1 } else { 1 })
        })
        .collect();
    PairSignature {
        ranks: block_ranks(spec, &x),
        d,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Space {
    U,
    Dual,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::U => "u",
            Space::Dual => "u*",
        }
    }
}

pub fn gb_action(par: &Parabolic, space: Space) -> Action {
    let mut gens = par.generators(SubgroupTag::Ub);
    gens.extend(par.generators(SubgroupTag::Lb));
    match space {
        Space::U => dot_action_on_u(par, "Gb on u", &gens),
        Space::Dual => dot_action_on_dual(par, "Gb on u*", &gens),
    }
}

/// `Gb`-orbits of one space together with the basic pairs they contain.
pub struct Classification {
    pub space: Space,
    pub orbits: OrbitPartition,
    /// Orbit of each basic pair.
    pub pair_orbit: Vec<u32>,
    /// First basic pair found in each orbit.
    pub orbit_pair: Vec<Option<usize>>,
    pub checks: Vec<Check>,
}

/// Compares the brute-force orbit partition with the signatures of basic pairs.
pub fn classify(
    par: &Parabolic,
    pairs: &[BasicPair],
    sigs: &[PairSignature],
    space: Space,
    limit: u128,
) -> Result<Classification> {
    let action = gb_action(par, space);
    let orbits = partition_orbits(&action, limit)?;
    let pair_orbit: Vec<u32> = pairs
        .iter()
        .map(|pr| orbits.orbit_of[par.encode_u(&pr.coords(par.dim_u())) as usize])
        .collect();
    let mut orbit_pair = vec![None; orbits.orbits.len()];
    for (i, &o) in pair_orbit.iter().enumerate() {
        orbit_pair[o as usize].get_or_insert(i);
    }
    let mut checks = Vec::new();
    let prefix = format!("classification on {}", space.name());

    let empty: Vec<Value> = orbits
        .orbits
        .iter()
        .zip(&orbit_pair)
        .filter(|(_, p)| p.is_none())
        .map(|(o, _)| json!({ "orbit_representative": par.decode_u(o.representative), "size": o.len() }))
        .collect();
    checks.push(Check::from_counterexample(
        format!("{prefix}: every orbit contains a basic pair"),
        json!({ "orbits": orbits.orbits.len(), "pairs": pairs.len() }),
        empty.into_iter().next(),
    ));

    // same orbit ⟺ same signature
    let mut by_sig: BTreeMap<&PairSignature, (usize, u32)> = BTreeMap::new();
    let mut by_orbit: BTreeMap<u32, (usize, &PairSignature)> = BTreeMap::new();
    let mut mismatch = None;
    for (i, (sig, &o)) in sigs.iter().zip(&pair_orbit).enumerate() {
        if let Some(&(j, oj)) = by_sig.get(sig) {
            if oj != o && mismatch.is_none() {
                mismatch = Some(pair_mismatch(par, pairs, sigs, &pair_orbit, j, i, "equal signatures, different orbits"));
            }
        } else {
            by_sig.insert(sig, (i, o));
        }
        if let Some(&(j, sj)) = by_orbit.get(&o) {
            if sj != sig && mismatch.is_none() {
                mismatch = Some(pair_mismatch(par, pairs, sigs, &pair_orbit, j, i, "same orbit, different signatures"));
            }
        } else {
            by_orbit.insert(o, (i, sig));
        }
    }
    checks.push(Check::from_counterexample(
        format!("{prefix}: same orbit iff same signature"),
        json!({ "signatures": by_sig.len() }),
        mismatch,
    ));
    let counts_ok = orbits.orbits.len() == by_sig.len();
    checks.push(Check::from_counterexample(
        format!("{prefix}: orbit count equals signature count"),
        json!({ "orbits": orbits.orbits.len(), "signatures": by_sig.len() }),
        (!counts_ok).then(|| json!({ "orbits": orbits.orbits.len(), "signatures": by_sig.len() })),
    ));

    if space == Space::U {
        let spec = par.spec();
        let bad = orbits.orbits.par_iter().find_map_first(|o| {
            let first = corner_ranks(spec, &par.u_matrix(&par.decode_u(o.representative)));
            o.points.iter().find_map(|&x| {
                let r = corner_ranks(spec, &par.u_matrix(&par.decode_u(x)));
                (r != first).then(|| {
                    json!({
                        "points": [par.decode_u(o.representative), par.decode_u(x)],
                        "ranks": [rank_json(&first), rank_json(&r)],
                    })
                })
            })
        });
        checks.push(Check::from_counterexample(
            format!("{prefix}: corner ranks constant on orbits"),
            json!({}),
            bad,
        ));
    }
    Ok(Classification {
        space,
        orbits,
        pair_orbit,
        orbit_pair,
        checks,
    })
}

fn rank_json(r: &[((i32, i32), usize)]) -> Value {
    Value::Array(r.iter().map(|((k, m), v)| json!([k, m, v])).collect())
}

fn pair_mismatch(
    par: &Parabolic,
    pairs: &[BasicPair],
    sigs: &[PairSignature],
    orbit: &[u32],
    a: usize,
    b: usize,
    what: &str,
) -> Value {
    let one = |i: usize| {
        json!({
            "pair": pairs[i].label(par),
            "ranks": rank_json(&sigs[i].ranks),
            "d": sigs[i].d.iter().map(|(k, s)| json!([k, s])).collect::<Vec<_>>(),
            "orbit": orbit[i],
        })
    };
    json!({ "reason": what, "pairs": [one(a), one(b)] })
}

/// A coarsening of the block decomposition into runs of consecutive segments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergedDecomposition {
    /// Inclusive ranges of segment indices.
    pub runs: Vec<(usize, usize)>,
}

impl MergedDecomposition {
    pub fn run_of(&self, seg: usize) -> usize {
        self.runs.iter().position(|&(a, b)| a <= seg && seg <= b).unwrap()
    }

    /// The signed indices of each run.
    pub fn index_sets(&self, spec: &GroupSpec) -> Vec<Vec<i32>> {
        self.runs
            .iter()
            .map(|&(a, b)| {
                spec.segments()[a..=b]
                    .iter()
                    .flat_map(|s| s.positions().map(|p| spec.index_at(p)))
                    .collect()
            })
            .collect()
    }

    /// Roots of `u` joining two different runs.
    pub fn crossing_roots(&self, par: &Parabolic) -> Vec<usize> {
        let spec = par.spec();
        par.u_roots()
            .iter()
            .enumerate()
            .filter(|(_, r)| self.run_of(spec.segment_of_pos(r.row)) != self.run_of(spec.segment_of_pos(r.col)))
            .map(|(k, _)| k)
            .collect()
    }

    /// Runs made of more than one block.
    pub fn merged_runs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.runs.iter().copied().filter(|(a, b)| a < b)
    }
}

/// The finest symmetric decomposition into consecutive runs in which the
/// row and column blocks of every root of `D` lie in one run.
pub fn merged_by_pair(par: &Parabolic, pair: &BasicPair) -> MergedDecomposition {
    let spec = par.spec();
    let nb = spec.segments().len();
    // reach[t] = last segment in the run starting at or containing t
    let mut joined: Vec<(usize, usize)> = Vec::new();
    for &k in &pair.roots {
        let r = &par.u_roots()[k];
        let (a, b) = (spec.segment_of_pos(r.row), spec.segment_of_pos(r.col));
        joined.push((a.min(b), a.max(b)));
    }
    let mut link = vec![false; nb.saturating_sub(1)];
    loop {
        let mut changed = false;
        for &(a, b) in &joined {
            for l in &mut link[a..b] {
                if !*l {
                    *l = true;
                    changed = true;
                }
            }
        }
        // mirror: link between t and t+1 mirrors to nb-2-t
        for t in 0..link.len() {
            if link[t] && !link[nb - 2 - t] {
                link[nb - 2 - t] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    runs_from_links(nb, &link)
}

fn runs_from_links(nb: usize, link: &[bool]) -> MergedDecomposition {
    let mut runs = Vec::new();
    let mut start = 0;
    for t in 0..nb {
        if t + 1 == nb || !link[t] {
            runs.push((start, t));
            start = t + 1;
        }
    }
    MergedDecomposition { runs }
}

/// The scalar on a block of `h`, if the block is scalar.
fn block_scalar(spec: &GroupSpec, h: &SignedMatrix, seg: usize) -> Option<u32> {
    let s = &spec.segments()[seg];
    let c = h.get(s.start, s.start);
    for a in s.positions() {
        for b in s.positions() {
            if h.get(a, b) != if a == b { c } else { 0 } {
                return None;
            }
        }
    }
    Some(c)
}

/// Maximal runs of consecutive blocks on which `h` is one scalar matrix.
pub fn merged_by_element(spec: &GroupSpec, h: &SignedMatrix) -> MergedDecomposition {
    let nb = spec.segments().len();
    let scalars: Vec<Option<u32>> = (0..nb).map(|t| block_scalar(spec, h, t)).collect();
    let link: Vec<bool> = (0..nb.saturating_sub(1))
        .map(|t| scalars[t].is_some() && scalars[t] == scalars[t + 1])
        .collect();
    runs_from_links(nb, &link)
}

/// Elements of `L` that are one scalar on each merged run of `dec`.
pub fn l_d_subgroup(par: &Parabolic, dec: &MergedDecomposition) -> Vec<u32> {
    let spec = par.spec();
    par.levi()
        .iter()
        .enumerate()
        .filter(|(_, h)| {
            dec.merged_runs().all(|(a, b)| {
                let c = block_scalar(spec, h, a);
                c.is_some() && (a..=b).all(|t| block_scalar(spec, h, t) == c)
            })
        })
        .map(|(i, _)| i as u32)
        .collect()
}

/// Points of the coordinate subspace spanned by the given roots of `u`.
pub fn coordinate_points(par: &Parabolic, roots: &[usize]) -> Vec<u32> {
    let f = par.field();
    let d = par.dim_u();
    let vecs: Vec<Vec<u32>> = roots
        .iter()
        .map(|&k| {
            let mut e = vec![0; d];
            e[k] = 1;
            e
        })
        .collect();
    span_points(f, &crate::algebra::linalg::Subspace::span(f, d, &vecs), d)
}

/// How one supercharacter of the theory was produced.
#[derive(Clone, Debug)]
pub struct GCharacterRecord {
    pub pair: usize,
    /// `L_D` as sorted elements of `L`.
    pub l_d: Vec<u32>,
    /// `θ` on `l_d`.
    pub theta: Vec<IntCyc>,
    /// Points of `Gb·λ_{D,φ}`.
    pub orbit: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct GClassRecord {
    pub pair: usize,
    pub h: u32,
    pub l_d: Vec<u32>,
}

pub struct GTheory {
    pub theory: SuperTheory,
    pub pairs: Vec<BasicPair>,
    pub signatures: Vec<PairSignature>,
    pub on_u: Classification,
    pub on_dual: Classification,
    pub char_records: Vec<GCharacterRecord>,
    pub class_records: Vec<GClassRecord>,
    /// Structural checks made while assembling.
    pub checks: Vec<Check>,
}

pub fn build_g_theory(session: &Session) -> Result<GTheory> {
    let par = &session.parabolic;
    let field = &session.field;
    let lt = par.levi_table();
    let f = *par.field();
    let pairs = enumerate_basic_pairs(par, session.delta);
    let signatures: Vec<PairSignature> = pairs.iter().map(|p| pair_signature(par, p, session.delta)).collect();
    let on_u = classify(par, &pairs, &signatures, Space::U, session.guards.space)?;
    let on_dual = classify(par, &pairs, &signatures, Space::Dual, session.guards.space)?;
    let ctx = FormContext::new(par, session.guards.space)?;
    let nl = lt.order() as u32;
    let lq = lt.order() as i64;

    let mut checks = Vec::new();
    let mut cex = CheckAccumulator::default();

    // characters, one family per Gb-orbit on u*
    let mut chars = Vec::new();
    let mut char_records = Vec::new();
    for (o, pair_idx) in on_dual.orbit_pair.iter().enumerate() {
        let Some(pi) = *pair_idx else { continue };
        let pair = &pairs[pi];
        let orbit = &on_dual.orbits.orbits[o];
        let dec = merged_by_pair(par, pair);
        let l_d = l_d_subgroup(par, &dec);
        let sub = lt.subgroup(&l_d)?;
        let label = pair.label(par);

        cex.note("L_D is normal in L", || {
            (!lt.normalizes(&(0..nl).collect::<Vec<_>>(), &sub)).then(|| json!({ "pair": label }))
        });
        let coad = &ctx.coad_u;
        let pointwise = crate::orbits::stabilizer_in_l(
            &f,
            par.dim_u(),
            orbit,
            coad,
            crate::orbits::StabilizerMode::Pointwise,
        );
        cex.note("L_D is the pointwise stabilizer of the orbit of its form", || {
            (pointwise != l_d).then(|| json!({ "pair": label, "l_d": l_d.len(), "stabilizer": pointwise.len() }))
        });
        let fd = ctx.form_data(orbit.representative);
        cex.note("L_D lies in the stabilizer of the two-sided orbit", || {
            (!l_d.iter().all(|h| fd.l0.binary_search(h).is_ok()))
                .then(|| json!({ "pair": label, "l_d": l_d.len(), "stabilizer": fd.l0.len() }))
        });
        let crossing = dec.crossing_roots(par);
        cex.note("x_D lies in the inner part of its decomposition", || {
            pair.roots
                .iter()
                .any(|r| crossing.contains(r))
                .then(|| json!({ "pair": label }))
        });
        cex.note("forms of the orbit vanish on the crossing part", || {
            orbit.points.iter().find_map(|&mu| {
                let v = par.decode_u(mu);
                crossing
                    .iter()
                    .any(|&k| v[k] != 0)
                    .then(|| json!({ "pair": label, "form": v }))
            })
        });
        let zsum = form_sum_values(field, par.p(), par.dim_u(), &orbit.points);
        let u_d = coordinate_points(par, &crossing);
        cex.note("orbit sum constant on cosets of the crossing subgroup", || {
            (0..par.u_size() as u32).find_map(|x| {
                u_d.iter()
                    .find(|&&y| zsum[par.umul(x, y) as usize] != zsum[x as usize])
                    .map(|&y| json!({ "pair": label, "x": par.decode_u(x), "y": par.decode_u(y) }))
            })
        });

        let table = irr_characters(&sub.table, field, session.guards.group)?;
        let scale = lq / l_d.len() as i64;
        for chi in 0..table.len() {
            let theta = table.class_function(chi);
            cex.note("θ is invariant under conjugation by L", || {
                (0..nl).find_map(|rho| {
                    l_d.iter().enumerate().find_map(|(i, &r)| {
                        let c = sub.local(lt.conj(rho, r)).unwrap_or(u32::MAX);
                        (c == u32::MAX || theta.values[c as usize] != theta.values[i])
                            .then(|| json!({ "pair": label, "theta": chi, "conjugator": rho, "element": r }))
                    })
                })
            });
            let mut values = Vec::with_capacity(par.g_order());
            for r in 0..nl {
                match sub.local(r) {
                    Some(i) => {
                        let t = field.int_scale(&theta.values[i as usize], scale);
                        values.extend(zsum.iter().map(|z| crate::theory::scaled(field, &t, z)));
                    }
                    None => values.extend(std::iter::repeat(field.int_zero()).take(par.u_size())),
                }
            }
            chars.push(SuperCharacter {
                label: json!({
                    "pair": label,
                    "signature": signature_json(&signatures[pi]),
                    "theta": chi,
                    "l_d": l_d.len(),
                    "orbit": orbit.len(),
                }),
                values,
            });
            char_records.push(GCharacterRecord {
                pair: pi,
                l_d: l_d.clone(),
                theta: theta.values,
                orbit: orbit.points.clone(),
            });
        }
    }
    let (chars, keep) = dedup_characters(chars);
    let char_records: Vec<GCharacterRecord> = keep.iter().map(|&i| char_records[i].clone()).collect();

    // classes, one family per Gb-orbit on u
    let mut collector = ClassCollector::new(par.g_order());
    let mut class_records = Vec::new();
    for (o, pair_idx) in on_u.orbit_pair.iter().enumerate() {
        let Some(pi) = *pair_idx else { continue };
        let pair = &pairs[pi];
        let orbit = &on_u.orbits.orbits[o];
        let dec = merged_by_pair(par, pair);
        let l_d = l_d_subgroup(par, &dec);
        let sub = lt.subgroup(&l_d)?;
        let classes = conjugacy_classes(&sub.table);
        for c in 0..classes.len() {
            let members: Vec<u32> = classes.classes[c].iter().map(|&i| sub.members[i as usize]).collect();
            let h = sub.members[classes.representative(c) as usize];
            let i_h = merged_by_element(par.spec(), &par.levi()[h as usize]);
            let u_h = coordinate_points(par, &i_h.crossing_roots(par));
            let mut prod: BTreeSet<u32> = BTreeSet::new();
            for &k in &orbit.points {
                for &y in &u_h {
                    prod.insert(par.umul(k, y));
                }
            }
            let mut set = Vec::with_capacity(members.len() * prod.len());
            for &m in &members {
                set.extend(prod.iter().map(|&z| par.g_encode(m, z)));
            }
            collector.offer(
                json!({
                    "pair": pair.label(par),
                    "signature": signature_json(&signatures[pi]),
                    "h": h,
                    "class_size": members.len(),
                }),
                set,
            );
            class_records.push(GClassRecord {
                pair: pi,
                h,
                l_d: l_d.clone(),
            });
        }
    }

    checks.extend(cex.finish());
    let mut theory = SuperTheory {
        name: "Gb-theory of G".into(),
        domain: Domain::G,
        order: par.g_order(),
        identity: par.g_identity(),
        field: field.clone(),
        characters: chars,
        classes: collector.classes,
    };
    theory.canonicalize();
    Ok(GTheory {
        theory,
        pairs,
        signatures,
        on_u,
        on_dual,
        char_records,
        class_records,
        checks,
    })
}

pub fn signature_json(s: &PairSignature) -> Value {
    json!({
        "ranks": rank_json(&s.ranks),
        "d": s.d.iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
    })
}

/// Keeps the first counterexample seen for each named check.
#[derive(Default)]
struct CheckAccumulator {
    order: Vec<String>,
    found: BTreeMap<String, (usize, Option<Value>)>,
}

impl CheckAccumulator {
    fn note(&mut self, name: &str, test: impl FnOnce() -> Option<Value>) {
        if !self.found.contains_key(name) {
            self.order.push(name.to_string());
            self.found.insert(name.to_string(), (0, None));
        }
        let entry = self.found.get_mut(name).unwrap();
        entry.0 += 1;
        if entry.1.is_none() {
            entry.1 = test();
        }
    }

    fn finish(mut self) -> Vec<Check> {
        self.order
            .iter()
            .map(|n| {
                let (count, c) = self.found.remove(n).unwrap();
                Check::from_counterexample(n.clone(), json!({ "instances": count }), c)
            })
            .collect()
    }
}
