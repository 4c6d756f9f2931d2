//! Supercharacter theories built from the two-sided `Ub`-orbits of linear
//! forms: the theory of `U` with characters `ζ_λ`, and the theory of `G`
//! with characters `χ_{θ,λ}` and classes `K(h, ω)`.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::algebra::linalg::{dot, kernel, FpMatrix, Subspace};
use crate::algebra::{CycField, IntCyc, PrimeField};
use crate::chartab::{conjugacy_classes, irr_characters, s_orbit_sums};
use crate::error::{Error, Result};
use crate::groups::{Parabolic, SignedMatrix, SubgroupTag};
use crate::orbits::{
    coadjoint_on_u_dual, coadjoint_on_uc_dual, dot_action_on_dual, dot_action_on_u, left_action_on_uc_dual,
    orbit_closure, partition_orbits, quotient_orbits, right_action_on_uc_dual, smallest_bimodule, stabilizer_in_l,
    Action, Orbit, OrbitPartition, StabilizerMode,
};
use crate::session::Session;
use crate::theory::{dedup_characters, form_sum_values, scaled, ClassCollector, Domain, SuperCharacter, SuperTheory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    U,
    G,
}

/// Actions and tables shared by every form of one configuration.
pub struct FormContext<'a> {
    pub par: &'a Parabolic,
    pub ub_dual: Action,
    pub hb_dual: Action,
    pub ub_on_u: Action,
    pub dual_orbits: OrbitPartition,
    /// Left and right `Ub` actions on `Uc*`, as one generator list.
    pub two_sided: Action,
    pub hb_left: Action,
    pub coad_uc: Vec<FpMatrix>,
    pub coad_u: Vec<FpMatrix>,
    /// Restriction `Uc* → u*`.
    pub restrict: FpMatrix,
    /// Basis of `u` written in `Uc` coordinates.
    pub u_in_uc: Vec<Vec<u32>>,
}

impl<'a> FormContext<'a> {
    pub fn new(par: &'a Parabolic, space_limit: u128) -> Result<Self> {
        let ub = par.generators(SubgroupTag::Ub);
        let hb = par.generators(SubgroupTag::Hb);
        let ub_dual = dot_action_on_dual(par, "Ub on u*", &ub);
        let hb_dual = dot_action_on_dual(par, "Hb on u*", &hb);
        let ub_on_u = dot_action_on_u(par, "Ub on u", &ub);
        let dual_orbits = partition_orbits(&ub_dual, space_limit)?;
        let f = *par.field();
        let mut gens = left_action_on_uc_dual(par, &ub);
        gens.extend(right_action_on_uc_dual(par, &ub));
        let two_sided = Action::new("Ub × Ub on Uc*", f, par.uc_dim(), gens);
        if two_sided.space_size() > space_limit {
            return Err(Error::Guard {
                what: "dual of Uc",
                needed: two_sided.space_size(),
                limit: space_limit,
            });
        }
        let hb_left = Action::new("Hb on Uc*", f, par.uc_dim(), left_action_on_uc_dual(par, &hb));
        let u_in_uc: Vec<Vec<u32>> = (0..par.dim_u())
            .map(|k| {
                let mut e = vec![0; par.dim_u()];
                e[k] = 1;
                par.uc_coords(&par.u_matrix(&e))
            })
            .collect();
        // (restrict Λ)_γ = Λ(E_γ)
        let mut restrict = FpMatrix::zeros(par.dim_u(), par.uc_dim());
        for (k, col) in u_in_uc.iter().enumerate() {
            for (j, &c) in col.iter().enumerate() {
                restrict.set(k, j, c);
            }
        }
        Ok(Self {
            par,
            ub_dual,
            hb_dual,
            ub_on_u,
            dual_orbits,
            two_sided,
            hb_left,
            coad_uc: coadjoint_on_uc_dual(par),
            coad_u: coadjoint_on_u_dual(par),
            restrict,
            u_in_uc,
        })
    }

    pub fn field(&self) -> &PrimeField {
        self.par.field()
    }

    /// The unique `Λ ∈ Uc*` with `Λ† = -Λ` restricting to `λ`:
    /// `Λ(E_ab) = ½ λ(E_ab - E_ab†)`.
    pub fn extend(&self, lambda: &[u32]) -> Vec<u32> {
        let par = self.par;
        let f = par.field();
        let dim = par.spec().dim();
        par.uc_positions()
            .iter()
            .map(|&(a, b)| {
                let e = SignedMatrix::unit(dim, a, b);
                let d = e.sub(f, &par.spec().dagger(&e));
                f.mul(f.half(), dot(f, lambda, &par.u_coords(&d)))
            })
            .collect()
    }

    /// `Λ(X)` for `X ∈ Uc` given as a matrix.
    pub fn eval_uc(&self, big: &[u32], x: &SignedMatrix) -> u32 {
        dot(self.field(), big, &self.par.uc_coords(x))
    }

    /// `{x ∈ Uc : Λ(x y) = 0 ∀ y ∈ Hc}` when `right`, else `{x : Λ(y† x) = 0}`.
    fn annihilated(&self, big: &[u32], right: bool) -> Subspace {
        let par = self.par;
        let f = *par.field();
        let dim = par.spec().dim();
        let units: Vec<SignedMatrix> = par
            .uc_positions()
            .iter()
            .map(|&(a, b)| SignedMatrix::unit(dim, a, b))
            .collect();
        let rows: Vec<Vec<u32>> = units
            .iter()
            .zip(par.hc_mask())
            .filter(|(_, h)| *h)
            .map(|(y, _)| {
                let yd = par.spec().dagger(y);
                units
                    .iter()
                    .map(|x| {
                        let prod = if right { x.mul(&f, y) } else { yd.mul(&f, x) };
                        self.eval_uc(big, &prod)
                    })
                    .collect()
            })
            .collect();
        Subspace::span(&f, par.uc_dim(), &kernel(&f, &rows, par.uc_dim()))
    }

    /// `u ∩ W` in `u` coordinates.
    pub fn meet_u(&self, w: &Subspace) -> Subspace {
        let f = *self.field();
        let ann = w.annihilator(&f);
        let rows: Vec<Vec<u32>> = ann
            .basis()
            .iter()
            .map(|r| self.u_in_uc.iter().map(|col| dot(&f, r, col)).collect())
            .collect();
        Subspace::span(&f, self.par.dim_u(), &kernel(&f, &rows, self.par.dim_u()))
    }

    pub fn form_data(&self, lambda: u32) -> FormData {
        let par = self.par;
        let f = *par.field();
        let coords = par.decode_u(lambda);
        let big = self.extend(&coords);
        let right = self.annihilated(&big, true);
        let left = self.annihilated(&big, false);
        let both = right.intersect(&f, &left);
        let u_lambda = self.meet_u(&right);
        let u_lambda_left = self.meet_u(&left);
        let points = span_points(&f, &u_lambda, par.dim_u());
        let ub_orbit = self.dual_orbits.orbits[self.dual_orbits.orbit_of[lambda as usize] as usize].clone();
        let hb_orbit = orbit_closure(&self.hb_dual, lambda);
        let big_idx = self.two_sided.encode(&big);
        let two_sided_orbit = orbit_closure(&self.two_sided, big_idx);
        let l0 = stabilizer_in_l(&f, par.uc_dim(), &two_sided_orbit, &self.coad_uc, StabilizerMode::Pointwise);
        let s = stabilizer_in_l(&f, par.dim_u(), &ub_orbit, &self.coad_u, StabilizerMode::Setwise);
        FormData {
            lambda,
            coords,
            big,
            right,
            left,
            both,
            u_lambda,
            u_lambda_left,
            u_lambda_points: points,
            ub_orbit,
            hb_orbit,
            two_sided_orbit,
            l0,
            s,
        }
    }
}

/// Everything attached to one form `λ ∈ u*`.
#[derive(Clone, Debug)]
pub struct FormData {
    pub lambda: u32,
    pub coords: Vec<u32>,
    /// The anti-self-dual extension to `Uc`, in `Uc*` coordinates.
    pub big: Vec<u32>,
    pub right: Subspace,
    pub left: Subspace,
    pub both: Subspace,
    /// `u ∩ R_Λ`
    pub u_lambda: Subspace,
    /// `u ∩ L_Λ`
    pub u_lambda_left: Subspace,
    /// Indices of the points of `u_λ`, i.e. of `U_λ`.
    pub u_lambda_points: Vec<u32>,
    pub ub_orbit: Orbit,
    pub hb_orbit: Orbit,
    pub two_sided_orbit: Orbit,
    /// Pointwise stabilizer of the two-sided orbit in `L`.
    pub l0: Vec<u32>,
    /// Setwise stabilizer of `Ub·λ` in `L`.
    pub s: Vec<u32>,
}

/// All points of a subspace, as sorted indices into the ambient space.
pub fn span_points(f: &PrimeField, s: &Subspace, dim: usize) -> Vec<u32> {
    let p = f.p();
    let k = s.dim();
    let mut out = Vec::with_capacity(p.pow(k as u32) as usize);
    let mut coeffs = vec![0u32; k];
    loop {
        let mut v = vec![0u32; dim];
        for (c, b) in coeffs.iter().zip(s.basis()) {
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(*c, y));
            }
        }
        out.push(crate::algebra::linalg::encode_vector(p, &v));
        let mut i = 0;
        loop {
            if i == k {
                out.sort_unstable();
                return out;
            }
            coeffs[i] += 1;
            if coeffs[i] == p {
                coeffs[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// How one supercharacter was produced; consumed by the induction oracles.
#[derive(Clone, Debug)]
pub struct CharacterRecord {
    pub lambda: u32,
    /// Elements of `L` carrying `θ` (empty for the theory of `U`).
    pub l0: Vec<u32>,
    /// `θ` on `l0`, in the same order.
    pub theta: Vec<IntCyc>,
    /// Points of `U_λ`.
    pub u_lambda: Vec<u32>,
}

pub struct UTheory {
    pub theory: SuperTheory,
    pub records: Vec<CharacterRecord>,
    /// Number of labels generated before removing repeats.
    pub generated_characters: usize,
    pub generated_classes: usize,
}

pub fn build_u_theory(session: &Session, target: Target) -> Result<UTheory> {
    let par = &session.parabolic;
    let ctx = FormContext::new(par, session.guards.space)?;
    match target {
        Target::U => build_for_u(session, &ctx),
        Target::G => build_for_g(session, &ctx),
    }
}

fn build_for_u(session: &Session, ctx: &FormContext) -> Result<UTheory> {
    let par = ctx.par;
    let field = &session.field;
    let p = par.p();
    let forms: Vec<FormData> = ctx
        .dual_orbits
        .orbits
        .par_iter()
        .map(|o| ctx.form_data(o.representative))
        .collect();
    let mut chars = Vec::with_capacity(forms.len());
    let mut records = Vec::with_capacity(forms.len());
    for fd in &forms {
        let values = zeta_values(field, p, par.dim_u(), fd)?;
        chars.push(SuperCharacter {
            label: json!({
                "lambda": fd.coords,
                "ub_orbit": fd.ub_orbit.len(),
                "hb_orbit": fd.hb_orbit.len(),
            }),
            values,
        });
        records.push(CharacterRecord {
            lambda: fd.lambda,
            l0: Vec::new(),
            theta: Vec::new(),
            u_lambda: fd.u_lambda_points.clone(),
        });
    }
    let generated_characters = chars.len();
    let (chars, keep) = dedup_characters(chars);
    let records = keep.iter().map(|&i| records[i].clone()).collect();

    let classes = partition_orbits(&ctx.ub_on_u, session.guards.space)?;
    let mut collector = ClassCollector::new(par.u_size());
    for o in &classes.orbits {
        collector.offer(json!({ "x": par.decode_u(o.representative) }), o.points.clone());
    }
    let generated_classes = classes.orbits.len();
    let mut theory = SuperTheory {
        name: "Ub-theory of U".into(),
        domain: Domain::U,
        order: par.u_size(),
        identity: 0,
        field: field.clone(),
        characters: chars,
        classes: collector.classes,
    };
    theory.canonicalize();
    Ok(UTheory {
        theory,
        records,
        generated_characters,
        generated_classes,
    })
}

/// `ζ_λ(f⁻¹(x)) = |Hb·λ| / |Ub·λ| · Σ_{μ ∈ Ub·λ} ε(μ(x))`
pub fn zeta_values(field: &Arc<CycField>, p: u32, dim_u: usize, fd: &FormData) -> Result<Vec<IntCyc>> {
    let sums = form_sum_values(field, p, dim_u, &fd.ub_orbit.points);
    let (h, o) = (fd.hb_orbit.len() as i64, fd.ub_orbit.len() as i64);
    sums.iter()
        .map(|v| {
            field
                .int_div_exact(&field.int_scale(v, h), o)
                .ok_or_else(|| Error::internal("supercharacter value of U is not integral"))
        })
        .collect()
}

/// Representatives of the `L`-orbits on `Ub`-orbits of `u*`.
fn l_orbit_representatives(ctx: &FormContext) -> Vec<u32> {
    let par = ctx.par;
    let f = *par.field();
    let parts = &ctx.dual_orbits;
    let mut done = vec![false; parts.orbits.len()];
    let mut reps = Vec::new();
    for (k, o) in parts.orbits.iter().enumerate() {
        if done[k] {
            continue;
        }
        reps.push(o.representative);
        let v = par.decode_u(o.representative);
        for m in &ctx.coad_u {
            let img = par.encode_u(&m.apply(&f, &v));
            done[parts.orbit_of[img as usize] as usize] = true;
        }
    }
    reps
}

fn build_for_g(session: &Session, ctx: &FormContext) -> Result<UTheory> {
    let par = ctx.par;
    let field = &session.field;
    let reps = l_orbit_representatives(ctx);
    let per_form: Vec<Vec<(SuperCharacter, CharacterRecord)>> = reps
        .par_iter()
        .map(|&lambda| characters_for_form(session, ctx, lambda))
        .collect::<Result<_>>()?;
    let (chars, records): (Vec<_>, Vec<_>) = per_form.into_iter().flatten().unzip();
    let generated_characters = chars.len();
    let (chars, keep) = dedup_characters(chars);
    let records: Vec<CharacterRecord> = keep.iter().map(|&i| records[i].clone()).collect();

    let (classes, generated_classes) = superclasses_for_g(session, ctx)?;
    let mut theory = SuperTheory {
        name: "Ub-theory of G".into(),
        domain: Domain::G,
        order: par.g_order(),
        identity: par.g_identity(),
        field: field.clone(),
        characters: chars,
        classes,
    };
    theory.canonicalize();
    Ok(UTheory {
        theory,
        records,
        generated_characters,
        generated_classes,
    })
}

/// Every `χ_{θ,λ}` for one form, `θ` running over the `S`-orbit sums of `Irr(L₀)`:
///
/// `χ(r f⁻¹(x)) = |Hb·λ| / (|Ub·λ| |L₀|) Σ_{ρ ∈ L} θ̇(ρ r ρ⁻¹) Z(Ad_ρ x)`
/// with `Z(y) = Σ_{μ ∈ Ub·λ} ε(μ(y))`.
fn characters_for_form(
    session: &Session,
    ctx: &FormContext,
    lambda: u32,
) -> Result<Vec<(SuperCharacter, CharacterRecord)>> {
    let par = ctx.par;
    let field = &session.field;
    let lt = par.levi_table();
    let fd = ctx.form_data(lambda);
    let l0 = lt.subgroup(&fd.l0)?;
    let table = irr_characters(&l0.table, field, session.guards.group)?;
    let thetas = s_orbit_sums(lt, &l0, &fd.s, &table)?;
    let z = form_sum_values(field, par.p(), par.dim_u(), &fd.ub_orbit.points);
    let nu = par.u_size();
    let nl = lt.order() as u32;

    // per r: Σ over ρ grouped by r' = ρ r ρ⁻¹ ∈ L₀
    let rows: Vec<Vec<Vec<IntCyc>>> = (0..nl)
        .into_par_iter()
        .map(|r| {
            let mut grouped: HashMap<u32, Vec<IntCyc>> = HashMap::new();
            for rho in 0..nl {
                let Some(local) = l0.local(lt.conj(rho, r)) else { continue };
                let acc = grouped.entry(local).or_insert_with(|| vec![field.int_zero(); nu]);
                for (x, a) in acc.iter_mut().enumerate() {
                    field.int_add_assign(a, &z[par.ad(rho, x as u32) as usize]);
                }
            }
            let mut keys: Vec<u32> = grouped.keys().copied().collect();
            keys.sort_unstable();
            thetas
                .iter()
                .map(|th| {
                    let mut out = vec![field.int_zero(); nu];
                    for k in &keys {
                        let t = &th.function.values[*k as usize];
                        if t.0.iter().all(|&c| c == 0) {
                            continue;
                        }
                        for (o, w) in out.iter_mut().zip(&grouped[k]) {
                            field.int_add_assign(o, &scaled(field, t, w));
                        }
                    }
                    out
                })
                .collect()
        })
        .collect();

    let num = fd.hb_orbit.len() as i64;
    let den = (fd.ub_orbit.len() * l0.order()) as i64;
    let mut out = Vec::with_capacity(thetas.len());
    for (ti, th) in thetas.iter().enumerate() {
        let mut values = Vec::with_capacity(par.g_order());
        for row in &rows {
            for v in &row[ti] {
                values.push(
                    field
                        .int_div_exact(&field.int_scale(v, num), den)
                        .ok_or_else(|| Error::internal("supercharacter value of G is not integral"))?,
                );
            }
        }
        out.push((
            SuperCharacter {
                label: json!({
                    "lambda": fd.coords,
                    "theta": th.members,
                    "stabilizer": l0.order(),
                    "ub_orbit": fd.ub_orbit.len(),
                    "hb_orbit": fd.hb_orbit.len(),
                }),
                values,
            },
            CharacterRecord {
                lambda,
                l0: l0.members.clone(),
                theta: th.function.values.clone(),
                u_lambda: fd.u_lambda_points.clone(),
            },
        ));
    }
    Ok(out)
}

/// `K(h, ω) = ⋃_{r ∈ L} r h f⁻¹(ω + u_h) r⁻¹` over class representatives `h`
/// of `L` and `Ub`-orbits `ω` on `u / u_h`.
fn superclasses_for_g(session: &Session, ctx: &FormContext) -> Result<(Vec<crate::theory::SuperClass>, usize)> {
    let par = ctx.par;
    let f = *par.field();
    let lt = par.levi_table();
    let lclasses = conjugacy_classes(lt);
    let reps: Vec<u32> = (0..lclasses.len()).map(|c| lclasses.representative(c)).collect();
    let per_h: Vec<Vec<(serde_json::Value, Vec<u32>)>> = reps
        .par_iter()
        .map(|&h| {
            let (_, u_h) = smallest_bimodule(par, h);
            let parts = quotient_orbits(&ctx.ub_on_u, &u_h, session.guards.space)?;
            let free = u_h.free_coords();
            let coset = span_points(&f, &u_h, par.dim_u());
            let coset_vecs: Vec<Vec<u32>> = coset.iter().map(|&s| par.decode_u(s)).collect();
            let mut out = Vec::with_capacity(parts.orbits.len());
            for o in &parts.orbits {
                let mut set = Vec::with_capacity(o.len() * coset.len() * lt.order());
                for &q in &o.points {
                    let qv = crate::algebra::linalg::decode_vector(f.p(), free.len(), q);
                    let mut base = vec![0u32; par.dim_u()];
                    for (&i, &c) in free.iter().zip(&qv) {
                        base[i] = c;
                    }
                    for s in &coset_vecs {
                        let y: Vec<u32> = base.iter().zip(s).map(|(&a, &b)| f.add(a, b)).collect();
                        let y = par.encode_u(&y);
                        for r in 0..lt.order() as u32 {
                            set.push(par.g_encode(lt.conj(r, h), par.ad(r, y)));
                        }
                    }
                }
                let omega = crate::algebra::linalg::decode_vector(f.p(), free.len(), o.representative);
                out.push((json!({ "h": h, "omega": omega, "u_h": u_h.dim() }), set));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut collector = ClassCollector::new(par.g_order());
    let mut generated = 0;
    for (label, set) in per_h.into_iter().flatten() {
        generated += 1;
        collector.offer(label, set);
    }
    Ok((collector.classes, generated))
}
