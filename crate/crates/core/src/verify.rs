//! Exact checks: the supercharacter axioms, the structural lemmas behind
//! the constructions, comparison with directly induced characters, and the
//! refinement relation between the two theories.

use std::borrow::Cow;
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::linalg::dot;
use crate::algebra::{Cyclotomic, IntCyc};
use crate::chartab::{induce_by_classes, orbit_partition, ConjugacyClasses};
use crate::error::{Error, Result};
use crate::groups::{springer_map, GElem, Parabolic, SignedMatrix, SubgroupTag};
use crate::orbits::{orbit_closure, smallest_bimodule, stabilizer_in_l, StabilizerMode};
use crate::session::Session;
use crate::theory::{Domain, SuperTheory};
use crate::utheory::{span_points, FormContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl Check {
    pub fn from_counterexample(name: impl Into<String>, detail: Value, counterexample: Option<Value>) -> Self {
        Self {
            name: name.into(),
            status: if counterexample.is_some() { Status::Fail } else { Status::Pass },
            detail,
            counterexample,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: &str) -> Self {
        Self {
            name: name.into(),
            status: Status::Skipped,
            detail: json!({ "reason": reason }),
            counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Lemmas,
    UTheory,
    GTheory,
    Oracles,
    Refinement,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lemmas" => Suite::Lemmas,
            "utheory" => Suite::UTheory,
            "gtheory" => Suite::GTheory,
            "oracles" => Suite::Oracles,
            "refinement" => Suite::Refinement,
            "all" => Suite::All,
            _ => return Err(Error::usage(format!("unknown suite `{s}`"))),
        })
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::UTheory => "utheory",
            Suite::GTheory => "gtheory",
            Suite::Oracles => "oracles",
            Suite::Refinement => "refinement",
            Suite::All => "all",
        }
    }
}

/// Deliberate corruption of the theories before the axiom checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Change one value of one supercharacter.
    Character,
    /// Move one element into another superclass.
    Class,
}

impl std::str::FromStr for Fault {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "character" => Ok(Fault::Character),
            "class" => Ok(Fault::Class),
            _ => Err(Error::usage(format!("unknown fault `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: Value,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault: Option<Value>,
    pub checks: Vec<Check>,
    /// Wall-clock time per section in milliseconds; left out unless requested.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<(String, u128)>,
}

pub fn config_json(session: &Session) -> Value {
    let spec = session.spec();
    json!({
        "family": spec.family().letter().to_string(),
        "n": spec.rank(),
        "q": spec.p(),
        "blocks": spec.blocks(),
        "delta": session.delta,
        "conductor": session.field.conductor(),
    })
}

/// Runs a suite. `timings` adds per-section wall-clock times to the report.
pub fn run_suite(session: &Session, suite: Suite, fault: Option<Fault>, timings: bool) -> Result<Report> {
    if fault.is_some() && matches!(suite, Suite::Lemmas | Suite::Oracles | Suite::Refinement) {
        return Err(Error::usage("fault injection needs a suite with axiom checks (utheory, gtheory or all)"));
    }
    let par = &session.parabolic;
    let mut checks = Vec::new();
    let mut times = Vec::new();
    let mut fault_info = None;
    let mut section = |name: &str, f: &mut dyn FnMut() -> Result<Vec<Check>>, checks: &mut Vec<Check>| -> Result<()> {
        let t = Instant::now();
        checks.extend(f()?);
        times.push((name.to_string(), t.elapsed().as_millis()));
        Ok(())
    };
    let all = suite == Suite::All;
    if all || suite == Suite::Lemmas {
        section("lemmas", &mut || check_lemmas(session), &mut checks)?;
    }
    if all || suite == Suite::UTheory {
        section(
            "utheory",
            &mut || {
                let mut out = Vec::new();
                for t in [&session.u_theory_of_u()?.theory, &session.u_theory_of_g()?.theory] {
                    let t = faulty(t, fault, &mut fault_info);
                    out.extend(check_supertheory(par, &t));
                }
                Ok(out)
            },
            &mut checks,
        )?;
    }
    if all || suite == Suite::GTheory {
        section(
            "gtheory",
            &mut || {
                let g = session.g_theory()?;
                let mut out = Vec::new();
                out.extend(g.on_u.checks.iter().cloned());
                out.extend(g.on_dual.checks.iter().cloned());
                out.extend(check_pair_partitions(g));
                out.extend(g.checks.iter().cloned());
                let t = faulty(&g.theory, fault, &mut fault_info);
                out.extend(check_supertheory(par, &t));
                out.push(check_evaluation_identity(session)?);
                Ok(out)
            },
            &mut checks,
        )?;
    }
    if all || suite == Suite::Oracles {
        section("oracles", &mut || check_oracles(session), &mut checks)?;
    }
    if all || suite == Suite::Refinement {
        section("refinement", &mut || check_refinement(session), &mut checks)?;
    }
    Ok(Report {
        suite: suite.name().into(),
        config: config_json(session),
        passed: checks.iter().all(Check::passed),
        fault: fault_info,
        checks,
        timings: if timings { times } else { Vec::new() },
    })
}

fn faulty<'a>(t: &'a SuperTheory, fault: Option<Fault>, info: &mut Option<Value>) -> Cow<'a, SuperTheory> {
    match fault {
        None => Cow::Borrowed(t),
        Some(f) => {
            let mut t = t.clone();
            let desc = inject(&mut t, f);
            info.get_or_insert_with(|| json!([])).as_array_mut().unwrap().push(desc);
            Cow::Owned(t)
        }
    }
}

/// Applies a fault and describes what was changed.
pub fn inject(t: &mut SuperTheory, fault: Fault) -> Value {
    let Some(k) = t.classes.iter().position(|c| c.elements.len() > 1) else {
        return json!({ "theory": t.name, "applied": false });
    };
    match fault {
        Fault::Character => {
            let chi = t.characters.len() - 1;
            let e = t.classes[k].elements[1];
            let one = t.field.int_from(1);
            t.field.int_add_assign(&mut t.characters[chi].values[e as usize], &one);
            json!({ "theory": t.name, "kind": "character", "character": chi, "element": e, "added": 1 })
        }
        Fault::Class => {
            let e = t.classes[k].elements.pop().unwrap();
            let target = (0..t.classes.len())
                .find(|&j| j != k && !t.classes[j].elements.contains(&t.identity))
                .unwrap_or((k + 1) % t.classes.len());
            t.classes[target].elements.push(e);
            t.classes[target].elements.sort_unstable();
            json!({ "theory": t.name, "kind": "class", "element": e, "from": k, "to": target })
        }
    }
}

fn element_json(par: &Parabolic, domain: Domain, e: u32) -> Value {
    let m = match domain {
        Domain::U => par.unipotent(e).clone(),
        Domain::G => par.g_matrix(e as GElem),
    };
    json!({ "index": e, "matrix": m.rows() })
}

fn cyc_json(t: &SuperTheory, v: &IntCyc) -> Value {
    json!(Cyclotomic::from_int(&t.field, v).to_strings())
}

/// The axioms of a supercharacter theory, checked exactly.
pub fn check_supertheory(par: &Parabolic, t: &SuperTheory) -> Vec<Check> {
    let name = |s: &str| format!("{}: {s}", t.name);
    let k = &t.field;
    let mut out = Vec::new();

    let mut owner = vec![u32::MAX; t.order];
    let mut bad = None;
    for (c, cl) in t.classes.iter().enumerate() {
        for &e in &cl.elements {
            if owner[e as usize] != u32::MAX && bad.is_none() {
                bad = Some(json!({ "element": element_json(par, t.domain, e), "classes": [owner[e as usize], c] }));
            }
            owner[e as usize] = c as u32;
        }
    }
    if bad.is_none() {
        if let Some(e) = owner.iter().position(|&o| o == u32::MAX) {
            bad = Some(json!({ "uncovered": element_json(par, t.domain, e as u32) }));
        }
    }
    let partition_ok = bad.is_none();
    out.push(Check::from_counterexample(
        name("classes partition the group"),
        json!({ "order": t.order, "sum_of_sizes": t.classes.iter().map(|c| c.elements.len()).sum::<usize>() }),
        bad,
    ));

    let has_one = t.classes.iter().any(|c| c.elements == [t.identity]);
    out.push(Check::from_counterexample(
        name("identity forms a class"),
        json!({}),
        (!has_one).then(|| json!({ "class_of_identity": owner[t.identity as usize] })),
    ));

    let counts = json!({ "characters": t.characters.len(), "classes": t.classes.len() });
    out.push(Check::from_counterexample(
        name("as many characters as classes"),
        counts.clone(),
        (t.characters.len() != t.classes.len()).then_some(counts),
    ));

    let constancy = t.characters.par_iter().enumerate().find_map_first(|(ci, ch)| {
        t.classes.iter().enumerate().find_map(|(kj, cl)| {
            let a = cl.elements[0];
            cl.elements.iter().find(|&&b| ch.values[b as usize] != ch.values[a as usize]).map(|&b| {
                json!({
                    "character": ci,
                    "class": kj,
                    "elements": [element_json(par, t.domain, a), element_json(par, t.domain, b)],
                    "values": [cyc_json(t, &ch.values[a as usize]), cyc_json(t, &ch.values[b as usize])],
                })
            })
        })
    });
    let constant = constancy.is_none();
    out.push(Check::from_counterexample(name("characters are constant on classes"), json!({}), constancy));

    let bad_degree = t.characters.iter().enumerate().find_map(|(ci, _)| match t.degree(ci) {
        Some(d) if d > 0 => None,
        _ => Some(json!({ "character": ci, "value_at_identity": cyc_json(t, &t.characters[ci].values[t.identity as usize]) })),
    });
    out.push(Check::from_counterexample(name("degrees are positive integers"), json!({}), bad_degree));

    if !(constant && partition_ok) {
        out.push(Check::skipped(name("characters are orthogonal"), "needs constancy on a partition"));
        out.push(Check::skipped(name("norms are positive integers"), "needs constancy on a partition"));
        return out;
    }
    let table: Vec<Vec<IntCyc>> = t
        .characters
        .iter()
        .map(|ch| t.classes.iter().map(|c| ch.values[c.elements[0] as usize].clone()).collect())
        .collect();
    let sizes: Vec<i64> = t.classes.iter().map(|c| c.elements.len() as i64).collect();
    let conj: Vec<Vec<IntCyc>> = table.iter().map(|r| r.iter().map(|v| k.int_conj(v)).collect()).collect();
    let pairs: Vec<(usize, usize, IntCyc)> = (0..table.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let (table, conj, sizes) = (&table, &conj, &sizes);
            (a..table.len()).map(move |b| {
                let mut s = k.int_zero();
                for c in 0..sizes.len() {
                    let term = k.int_mul(&table[a][c], &conj[b][c]);
                    k.int_add_assign(&mut s, &k.int_scale(&term, sizes[c]));
                }
                (a, b, s)
            })
        })
        .collect();
    let n = t.order as i64;
    let off = pairs.iter().find(|(a, b, s)| a != b && s.0.iter().any(|&c| c != 0)).map(|(a, b, s)| {
        json!({ "characters": [a, b], "order_times_inner_product": cyc_json(t, s) })
    });
    out.push(Check::from_counterexample(name("characters are orthogonal"), json!({}), off));
    let norms = pairs.iter().filter(|(a, b, _)| a == b).find_map(|(a, _, s)| match k.int_as_integer(s) {
        Some(v) if v > 0 && v % n == 0 => None,
        _ => Some(json!({ "character": a, "order_times_norm": cyc_json(t, s) })),
    });
    out.push(Check::from_counterexample(name("norms are positive integers"), json!({}), norms));
    out
}

fn p_power(p: u32, mut n: usize) -> bool {
    while n > 1 {
        if n % p as usize != 0 {
            return false;
        }
        n /= p as usize;
    }
    n == 1
}

/// The lemmas used by the construction of the theory of `U` and its lift to
/// `G`, over every `Ub`-orbit representative of `u*`.
pub fn check_lemmas(session: &Session) -> Result<Vec<Check>> {
    let par = &session.parabolic;
    let spec = par.spec();
    let f = *par.field();
    let dim = spec.dim();
    let ctx = FormContext::new(par, session.guards.space)?;
    let mut out = Vec::new();

    // the involution
    let units: Vec<SignedMatrix> = (0..dim * dim).map(|i| SignedMatrix::unit(dim, i / dim, i % dim)).collect();
    let anti = units.iter().find_map(|a| {
        if spec.dagger(&spec.dagger(a)) != *a {
            return Some(json!({ "matrix": a.rows(), "reason": "not an involution" }));
        }
        units.iter().find_map(|b| {
            let lhs = spec.dagger(&a.mul(&f, b));
            let rhs = spec.dagger(b).mul(&f, &spec.dagger(a));
            (lhs != rhs).then(|| json!({ "matrices": [a.rows(), b.rows()], "reason": "not anti-multiplicative" }))
        })
    });
    out.push(Check::from_counterexample("involution reverses products", json!({}), anti));

    // Gb preserves Uc, and the Cayley map commutes with conjugation by Gb
    let mut gb = par.generators(SubgroupTag::Ub);
    gb.extend(par.generators(SubgroupTag::Lb));
    let stable = gb.iter().find_map(|g| {
        let gi = g.inverse(&f).unwrap();
        par.uc_positions().iter().find_map(|&(a, b)| {
            let m = g.mul(&f, &SignedMatrix::unit(dim, a, b)).mul(&f, &gi);
            let back = par.uc_matrix(&par.uc_coords(&m));
            (back != m).then(|| json!({ "generator": g.rows(), "position": [a, b] }))
        })
    });
    out.push(Check::from_counterexample("conjugation by Gb preserves Uc", json!({}), stable));
    let mut conj = gb.clone();
    conj.extend(par.levi().iter().cloned());
    let equivariant = conj.par_iter().find_map_first(|g| {
        let gi = g.inverse(&f).unwrap();
        (0..par.u_size() as u32).find_map(|x| {
            let lhs = springer_map(spec, &g.mul(&f, par.unipotent(x)).mul(&f, &gi)).ok()?;
            let rhs = g.mul(&f, &par.u_matrix(&par.decode_u(x))).mul(&f, &gi);
            (lhs != rhs).then(|| json!({ "conjugator": g.rows(), "x": par.decode_u(x) }))
        })
    });
    out.push(Check::from_counterexample(
        "Cayley map commutes with conjugation",
        json!({ "conjugators": conj.len() }),
        equivariant,
    ));

    // Ad_h is trivial on u / u_h
    let trivial = (0..par.levi().len() as u32).into_par_iter().find_map_first(|h| {
        let (_, u_h) = smallest_bimodule(par, h);
        let m = par.ad_map(h);
        (0..par.u_size() as u32).find_map(|x| {
            let v = par.decode_u(x);
            let mut d: Vec<u32> = m.apply(&f, &v).iter().zip(&v).map(|(a, b)| f.sub(*a, *b)).collect();
            u_h.reduce(&f, &mut d);
            d.iter().any(|&c| c != 0).then(|| json!({ "h": par.levi()[h as usize].rows(), "x": v }))
        })
    });
    out.push(Check::from_counterexample(
        "Levi elements act trivially modulo their bimodule",
        json!({}),
        trivial,
    ));

    let reps: Vec<u32> = ctx.dual_orbits.orbits.iter().map(|o| o.representative).collect();
    let results: Vec<Vec<(usize, Option<Value>)>> = reps.par_iter().map(|&l| form_lemmas(par, &ctx, l)).collect();
    let names = FORM_LEMMAS;
    for (i, n) in names.iter().enumerate() {
        let cex = results.iter().find_map(|r| r[i].1.clone());
        let tested: usize = results.iter().map(|r| r[i].0).sum();
        out.push(Check::from_counterexample(
            *n,
            json!({ "forms": reps.len(), "instances": tested }),
            cex,
        ));
    }
    Ok(out)
}

const FORM_LEMMAS: [&str; 10] = [
    "extension restricts to the form and is anti-self-dual",
    "extension vanishes on products inside its subalgebra",
    "left and right annihilators meet u in the same subspace",
    "restriction of the left Hb-orbit of the extension is the Hb-orbit",
    "fiber of restriction to u_λ is the Hb-orbit",
    "stabilizers of the one-sided and two-sided orbits agree",
    "pointwise stabilizer is normal in the setwise stabilizer",
    "additive character of the form is multiplicative on U_λ",
    "orbit sizes are powers of p",
    "pointwise stabilizer preserves U_λ and the form on it",
];

fn form_lemmas(par: &Parabolic, ctx: &FormContext, lambda: u32) -> Vec<(usize, Option<Value>)> {
    let f = *par.field();
    let spec = par.spec();
    let fd = ctx.form_data(lambda);
    let tag = |v: Value| json!({ "lambda": fd.coords, "detail": v });
    let mut out = Vec::new();

    // restriction and anti-self-duality
    let restricted = ctx.restrict.apply(&f, &fd.big);
    let anti = par.uc_positions().iter().find_map(|&(a, b)| {
        let e = SignedMatrix::unit(spec.dim(), a, b);
        let l = ctx.eval_uc(&fd.big, &e);
        let r = ctx.eval_uc(&fd.big, &spec.dagger(&e));
        (f.add(l, r) != 0).then(|| json!({ "position": [a, b] }))
    });
    let cex = if restricted != fd.coords {
        Some(tag(json!({ "restriction": restricted })))
    } else {
        anti.map(tag)
    };
    out.push((1, cex));

    // Λ(xy) = 0 on the basis of Uc_Λ
    let basis: Vec<SignedMatrix> = fd.both.basis().iter().map(|v| par.uc_matrix(v)).collect();
    let cex = basis.iter().enumerate().find_map(|(i, x)| {
        basis.iter().enumerate().find_map(|(j, y)| {
            (ctx.eval_uc(&fd.big, &x.mul(&f, y)) != 0).then(|| tag(json!({ "basis_pair": [i, j] })))
        })
    });
    out.push((basis.len() * basis.len(), cex));

    out.push((
        1,
        (fd.u_lambda != fd.u_lambda_left).then(|| {
            tag(json!({ "right": fd.u_lambda.basis(), "left": fd.u_lambda_left.basis() }))
        }),
    ));

    // Π(HbΛ) = Hb·λ
    let big_idx = ctx.hb_left.encode(&fd.big);
    let left_orbit = orbit_closure(&ctx.hb_left, big_idx);
    let mut restricted: Vec<u32> = left_orbit
        .points
        .iter()
        .map(|&m| par.encode_u(&ctx.restrict.apply(&f, &ctx.hb_left.decode(m))))
        .collect();
    restricted.sort_unstable();
    restricted.dedup();
    out.push((
        1,
        (restricted != fd.hb_orbit.points)
            .then(|| tag(json!({ "restricted": restricted.len(), "hb_orbit": fd.hb_orbit.len() }))),
    ));

    // π⁻¹(λ) = Hb·λ with π the restriction to u_λ
    let ann = fd.u_lambda.annihilator(&f);
    let mut fiber: Vec<u32> = span_points(&f, &ann, par.dim_u())
        .into_iter()
        .map(|m| {
            let v: Vec<u32> = par.decode_u(m).iter().zip(&fd.coords).map(|(a, b)| f.add(*a, *b)).collect();
            par.encode_u(&v)
        })
        .collect();
    fiber.sort_unstable();
    out.push((
        1,
        (fiber != fd.hb_orbit.points).then(|| tag(json!({ "fiber": fiber.len(), "hb_orbit": fd.hb_orbit.len() }))),
    ));

    let s2 = stabilizer_in_l(&f, par.uc_dim(), &fd.two_sided_orbit, &ctx.coad_uc, StabilizerMode::Setwise);
    out.push((1, (s2 != fd.s).then(|| tag(json!({ "one_sided": fd.s.len(), "two_sided": s2.len() })))));

    let lt = par.levi_table();
    let normal = fd.l0.iter().all(|h| fd.s.binary_search(h).is_ok())
        && fd
            .s
            .iter()
            .all(|&g| fd.l0.iter().all(|&x| fd.l0.binary_search(&lt.conj(g, x)).is_ok()));
    out.push((1, (!normal).then(|| tag(json!({ "l0": fd.l0.len(), "s": fd.s.len() })))));

    // ε(λ(f(uv))) = ε(λ(f(u))) ε(λ(f(v))) on U_λ
    let pts = &fd.u_lambda_points;
    let lam = |x: u32| dot(&f, &fd.coords, &par.decode_u(x));
    let lv: Vec<u32> = pts.iter().map(|&x| lam(x)).collect();
    let cex = pts.iter().zip(&lv).find_map(|(&x, &lx)| {
        pts.iter().zip(&lv).find_map(|(&y, &ly)| {
            let z = par.umul(x, y);
            (pts.binary_search(&z).is_err() || lam(z) != f.add(lx, ly))
                .then(|| tag(json!({ "u": par.decode_u(x), "v": par.decode_u(y) })))
        })
    });
    out.push((pts.len() * pts.len(), cex));

    let p = par.p();
    out.push((
        2,
        (!(p_power(p, fd.ub_orbit.len()) && p_power(p, fd.hb_orbit.len())))
            .then(|| tag(json!({ "ub_orbit": fd.ub_orbit.len(), "hb_orbit": fd.hb_orbit.len() }))),
    ));

    let cex = fd.l0.iter().find_map(|&r| {
        pts.iter().find_map(|&y| {
            let z = par.ad(r, y);
            (pts.binary_search(&z).is_err() || lam(z) != lam(y))
                .then(|| tag(json!({ "r": par.levi()[r as usize].rows(), "y": par.decode_u(y) })))
        })
    });
    out.push((fd.l0.len() * pts.len(), cex));
    out
}

/// Conjugacy classes of `U` on indices of `u`.
pub fn u_conjugacy_classes(par: &Parabolic) -> ConjugacyClasses {
    let n = par.u_size();
    let (classes, class_of) = orbit_partition(n, n, |g, x| par.umul(par.umul(g as u32, x), par.uneg(g as u32)));
    ConjugacyClasses {
        classes,
        class_of,
        identity: 0,
    }
}

/// Conjugacy classes of `G`, using a generating set found greedily.
pub fn g_conjugacy_classes(par: &Parabolic) -> ConjugacyClasses {
    let order = par.g_order();
    let mut gens: Vec<GElem> = (0..par.levi().len() as u32).map(|r| par.g_encode(r, 0)).collect();
    let generated = |gens: &[GElem]| {
        let mut seen = vec![false; order];
        let id = par.g_identity();
        seen[id as usize] = true;
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = par.g_mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push(y);
                }
            }
        }
        seen
    };
    let mut seen = generated(&gens);
    let one = par.levi_table().identity();
    while let Some(x) = (0..par.u_size() as u32).find(|&x| !seen[par.g_encode(one, x) as usize]) {
        gens.push(par.g_encode(one, x));
        seen = generated(&gens);
    }
    let (classes, class_of) = orbit_partition(order, gens.len(), |i, x| {
        let g = gens[i];
        par.g_mul(par.g_mul(g, x), par.g_inv(g))
    });
    ConjugacyClasses {
        classes,
        class_of,
        identity: par.g_identity(),
    }
}

fn additive(session: &Session, lambda: &[u32], y: u32) -> IntCyc {
    let par = &session.parabolic;
    let t = dot(par.field(), lambda, &par.decode_u(y));
    session.field.root(t as i64, par.p() as u64).clone()
}

fn compare_induced(t: &SuperTheory, chi: usize, classes: &ConjugacyClasses, induced: &[IntCyc]) -> Option<Value> {
    t.characters[chi].values.iter().enumerate().find_map(|(g, v)| {
        let w = &induced[classes.class_of[g] as usize];
        (v != w).then(|| {
            json!({ "character": chi, "element": g, "formula": cyc_json(t, v), "induced": cyc_json(t, w) })
        })
    })
}

/// Every closed-form supercharacter against the character it is induced from.
pub fn check_oracles(session: &Session) -> Result<Vec<Check>> {
    let par = &session.parabolic;
    let field = &session.field;
    let mut out = Vec::new();

    let ut = session.u_theory_of_u()?;
    let ucl = u_conjugacy_classes(par);
    let mismatch = ut
        .records
        .par_iter()
        .enumerate()
        .map(|(i, rec)| {
            let lambda = par.decode_u(rec.lambda);
            let vals: Vec<IntCyc> = rec.u_lambda.iter().map(|&y| additive(session, &lambda, y)).collect();
            let ind = induce_by_classes(field, &ucl, par.u_size(), rec.u_lambda.iter().copied().zip(&vals))?;
            Ok(compare_induced(&ut.theory, i, &ucl, &ind))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    out.push(Check::from_counterexample(
        "supercharacters of U are induced from U_λ",
        json!({ "characters": ut.records.len(), "classes_of_U": ucl.len() }),
        mismatch,
    ));

    let gcl = g_conjugacy_classes(par);
    let nu = par.u_size();
    let gt = session.u_theory_of_g()?;
    let mismatch = gt
        .records
        .par_iter()
        .enumerate()
        .map(|(i, rec)| {
            let lambda = par.decode_u(rec.lambda);
            let eps: Vec<IntCyc> = rec.u_lambda.iter().map(|&y| additive(session, &lambda, y)).collect();
            let mut sub = Vec::with_capacity(rec.l0.len() * rec.u_lambda.len());
            for (r, th) in rec.l0.iter().zip(&rec.theta) {
                for (&y, e) in rec.u_lambda.iter().zip(&eps) {
                    sub.push((par.g_encode(*r, y), field.int_mul(th, e)));
                }
            }
            let ind = induce_by_classes(field, &gcl, par.g_order(), sub.iter().map(|(g, v)| (*g, v)))?;
            Ok(compare_induced(&gt.theory, i, &gcl, &ind))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    out.push(Check::from_counterexample(
        "Ub-supercharacters of G are induced from L₀U_λ",
        json!({ "characters": gt.records.len(), "classes_of_G": gcl.len() }),
        mismatch,
    ));

    let g = session.g_theory()?;
    let mismatch = g
        .char_records
        .par_iter()
        .enumerate()
        .map(|(i, rec)| {
            let z = crate::theory::form_sum_values(field, par.p(), par.dim_u(), &rec.orbit);
            let mut sub = Vec::with_capacity(rec.l_d.len() * nu);
            for (r, th) in rec.l_d.iter().zip(&rec.theta) {
                for (y, zy) in z.iter().enumerate() {
                    sub.push((par.g_encode(*r, y as u32), field.int_mul(th, zy)));
                }
            }
            let ind = induce_by_classes(field, &gcl, par.g_order(), sub.iter().map(|(g, v)| (*g, v)))?;
            Ok(compare_induced(&g.theory, i, &gcl, &ind))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    out.push(Check::from_counterexample(
        "Gb-supercharacters of G are induced from L_D U",
        json!({ "characters": g.char_records.len(), "classes_of_G": gcl.len() }),
        mismatch,
    ));
    Ok(out)
}

/// Basic pairs fall into the same blocks on `u` and on `u*`, so character
/// and class labels match up.
pub fn check_pair_partitions(g: &crate::gtheory::GTheory) -> Vec<Check> {
    let n = g.pairs.len();
    let cex = (0..n).find_map(|a| {
        (0..a).find_map(|b| {
            let su = g.on_u.pair_orbit[a] == g.on_u.pair_orbit[b];
            let sd = g.on_dual.pair_orbit[a] == g.on_dual.pair_orbit[b];
            (su != sd).then(|| json!({ "pairs": [a, b], "same_orbit_on_u": su, "same_orbit_on_dual": sd }))
        })
    });
    vec![Check::from_counterexample(
        "basic pairs are grouped alike on u and u*",
        json!({ "pairs": n }),
        cex,
    )]
}

/// `χ(K) = |L:L_D| θ̇(h) ζ(x_{D'})` at each class representative.
pub fn check_evaluation_identity(session: &Session) -> Result<Check> {
    let par = &session.parabolic;
    let field = &session.field;
    let g = session.g_theory()?;
    let t = &g.theory;
    let lq = par.levi().len() as i64;
    let owner = t.class_of();
    let mut rep_of_record = Vec::new();
    for rec in &g.class_records {
        let x = par.encode_u(&g.pairs[rec.pair].coords(par.dim_u()));
        rep_of_record.push((rec.h, x));
    }
    let cex = g.char_records.par_iter().enumerate().find_map_first(|(ci, rec)| {
        let z = crate::theory::form_sum_values(field, par.p(), par.dim_u(), &rec.orbit);
        rep_of_record.iter().find_map(|&(h, x)| {
            let theta = match rec.l_d.binary_search(&h) {
                Ok(i) => rec.theta[i].clone(),
                Err(_) => field.int_zero(),
            };
            let expect = field.int_mul(&field.int_scale(&theta, lq / rec.l_d.len() as i64), &z[x as usize]);
            let k = owner[par.g_encode(h, x) as usize];
            if k == u32::MAX {
                return Some(json!({ "uncovered": [h, x] }));
            }
            let rep = t.classes[k as usize].elements[0];
            let got = &t.characters[ci].values[rep as usize];
            (got != &expect).then(|| {
                json!({ "character": ci, "class": k, "formula": cyc_json(t, &expect), "value": cyc_json(t, got) })
            })
        })
    });
    Ok(Check::from_counterexample(
        "Gb-supercharacter values follow the evaluation formula",
        json!({ "characters": g.char_records.len(), "classes": g.class_records.len() }),
        cex,
    ))
}

/// The theory of `Gb`-orbits is coarser than the theory of `Ub`-orbits.
pub fn check_refinement(session: &Session) -> Result<Vec<Check>> {
    let k = &session.field;
    let fine = &session.u_theory_of_g()?.theory;
    let coarse = &session.g_theory()?.theory;
    let mut out = Vec::new();

    let fine_of = fine.class_of();
    let cex = coarse.classes.iter().enumerate().find_map(|(ci, c)| {
        let mut ids: Vec<u32> = c.elements.iter().map(|&e| fine_of[e as usize]).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.contains(&u32::MAX) {
            return Some(json!({ "class": ci, "reason": "element outside every finer class" }));
        }
        let total: usize = ids.iter().map(|&j| fine.classes[j as usize].elements.len()).sum();
        (total != c.elements.len()).then(|| {
            let j = ids
                .iter()
                .find(|&&j| fine.classes[j as usize].elements.iter().any(|e| c.elements.binary_search(e).is_err()))
                .copied();
            json!({ "class": ci, "finer_class": j })
        })
    });
    out.push(Check::from_counterexample(
        "Gb-classes are unions of Ub-classes",
        json!({ "coarse": coarse.classes.len(), "fine": fine.classes.len() }),
        cex,
    ));
    out.push(Check::from_counterexample(
        "fewer Gb-classes than Ub-classes",
        json!({ "coarse": coarse.classes.len(), "fine": fine.classes.len() }),
        (coarse.classes.len() > fine.classes.len()).then(|| json!({})),
    ));

    // constancy of every character on the finer classes, then projection
    let fine_const = fine.characters.iter().chain(&coarse.characters).enumerate().find_map(|(ci, ch)| {
        fine.classes.iter().enumerate().find_map(|(kj, c)| {
            let a = &ch.values[c.elements[0] as usize];
            c.elements
                .iter()
                .any(|&e| &ch.values[e as usize] != a)
                .then(|| json!({ "character": ci, "finer_class": kj }))
        })
    });
    if let Some(c) = fine_const {
        out.push(Check::from_counterexample(
            "Gb-supercharacters lie in the span of Ub-supercharacters",
            json!({}),
            Some(json!({ "reason": "not constant on the finer classes", "at": c })),
        ));
        return Ok(out);
    }
    let reps: Vec<usize> = fine.classes.iter().map(|c| c.elements[0] as usize).collect();
    let sizes: Vec<i64> = fine.classes.iter().map(|c| c.elements.len() as i64).collect();
    let row = |ch: &crate::theory::SuperCharacter| -> Vec<IntCyc> { reps.iter().map(|&r| ch.values[r].clone()).collect() };
    let fine_rows: Vec<Vec<IntCyc>> = fine.characters.iter().map(row).collect();
    let fine_conj: Vec<Vec<IntCyc>> = fine_rows.iter().map(|r| r.iter().map(|v| k.int_conj(v)).collect()).collect();
    let pairing = |a: &[IntCyc], bconj: &[IntCyc]| -> Option<i64> {
        let mut s = k.int_zero();
        for ((x, y), &n) in a.iter().zip(bconj).zip(&sizes) {
            k.int_add_assign(&mut s, &k.int_scale(&k.int_mul(x, y), n));
        }
        k.int_as_integer(&s)
    };
    let norms: Vec<Option<i64>> = fine_rows.iter().zip(&fine_conj).map(|(r, c)| pairing(r, c)).collect();
    let cex = coarse.characters.par_iter().enumerate().find_map_first(|(ci, ch)| {
        let target = row(ch);
        // coefficients num/den with a common denominator
        let mut coeffs: Vec<(i64, i64)> = Vec::new();
        for (j, c) in fine_conj.iter().enumerate() {
            let Some(num) = pairing(&target, c) else {
                return Some(json!({ "character": ci, "reason": "non-rational inner product", "with": j }));
            };
            let Some(den) = norms[j].filter(|&d| d != 0) else {
                return Some(json!({ "character": ci, "reason": "finer character has no integer norm", "with": j }));
            };
            let g = num.gcd(&den);
            coeffs.push((num / g, den / g));
        }
        let common = coeffs.iter().fold(1i64, |l, &(_, d)| l.lcm(&d));
        let mut residual: Vec<IntCyc> = target.iter().map(|v| k.int_scale(v, common)).collect();
        for (j, &(num, den)) in coeffs.iter().enumerate() {
            let s = num * (common / den);
            if s == 0 {
                continue;
            }
            for (r, v) in residual.iter_mut().zip(&fine_rows[j]) {
                *r = k.int_sub(r, &k.int_scale(v, s));
            }
        }
        residual
            .iter()
            .position(|r| r.0.iter().any(|&c| c != 0))
            .map(|kj| json!({ "character": ci, "reason": "residual after projection", "finer_class": kj }))
    });
    out.push(Check::from_counterexample(
        "Gb-supercharacters lie in the span of Ub-supercharacters",
        json!({ "coarse": coarse.characters.len(), "fine": fine.characters.len() }),
        cex,
    ));
    Ok(out)
}
