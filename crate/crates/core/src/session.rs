//! Resource limits and the lazily built per-configuration state.

use std::sync::{Arc, OnceLock};

use crate::algebra::CycField;
use crate::error::Result;
use crate::groups::{GroupSpec, Parabolic};

/// Upper bounds on enumerations, overridable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Largest Levi factor that may be enumerated.
    pub levi: u128,
    /// Largest coordinate space that may be partitioned into orbits.
    pub space: u128,
    /// Largest group whose character table may be computed.
    pub group: usize,
    /// Largest number of pairs in the multiplication table of `U`.
    pub table: u128,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            levi: 1_000_000,
            space: 10_000_000,
            group: 2000,
            table: 16_000_000,
        }
    }
}

/// Everything derived from one configuration, built on first use.
pub struct Session {
    pub guards: Guards,
    pub parabolic: Parabolic,
    pub field: Arc<CycField>,
    pub delta: u32,
    u_theory_u: OnceLock<crate::utheory::UTheory>,
    u_theory_g: OnceLock<crate::utheory::UTheory>,
    g_theory: OnceLock<crate::gtheory::GTheory>,
}

impl Session {
    pub fn new(spec: GroupSpec, guards: Guards, delta: Option<u32>) -> Result<Self> {
        let delta = match delta {
            Some(d) => {
                let f = spec.field();
                let d = d % f.p();
                if f.is_square(d) {
                    return Err(crate::Error::usage(format!("{d} is a square modulo {}", f.p())));
                }
                d
            }
            None => spec.field().smallest_nonsquare(),
        };
        let parabolic = Parabolic::new(spec, &guards)?;
        let field = CycField::for_exponent(parabolic.spec().p() as u64, parabolic.levi_table().exponent());
        Ok(Self {
            guards,
            parabolic,
            field,
            delta,
            u_theory_u: OnceLock::new(),
            u_theory_g: OnceLock::new(),
            g_theory: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        self.parabolic.spec()
    }

    pub fn u_theory_of_u(&self) -> Result<&crate::utheory::UTheory> {
        get_or_try(&self.u_theory_u, || crate::utheory::build_u_theory(self, crate::utheory::Target::U))
    }

    pub fn u_theory_of_g(&self) -> Result<&crate::utheory::UTheory> {
        get_or_try(&self.u_theory_g, || crate::utheory::build_u_theory(self, crate::utheory::Target::G))
    }

    pub fn g_theory(&self) -> Result<&crate::gtheory::GTheory> {
        get_or_try(&self.g_theory, || crate::gtheory::build_g_theory(self))
    }
}

fn get_or_try<T>(cell: &OnceLock<T>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = init()?;
    Ok(cell.get_or_init(|| v))
}
