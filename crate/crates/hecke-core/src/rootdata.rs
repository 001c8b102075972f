//! From a cuspidal datum on a Levi to the root datum of the attached
//! extended affine Hecke algebra: per-symbol decision tables for the root
//! system, the parameter functions λ/λ*, the scaling factors m_α, and the
//! diagram-automorphism group Γ.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::repdata::{Family, GroupFlavor};

/// Joint self-duality class of a symbol and its distinguished partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassPair {
    PlusPlus,
    MinusMinus,
    /// mixed signs; which side is which is read off the parities of (a, a')
    PlusMinus,
    Zero,
}

/// Reduced root-system label. `Empty` covers rank 0 and the degenerate
/// D_1 / A_0 cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootSystem {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    BC(u32),
    Empty,
}

impl RootSystem {
    /// Collapses degenerate labels (A_0, D_1, rank 0) to `Empty`.
    pub fn reduced(self) -> RootSystem {
        match self {
            RootSystem::A(0) | RootSystem::D(1) => RootSystem::Empty,
            RootSystem::B(0) | RootSystem::C(0) | RootSystem::D(0) | RootSystem::BC(0) => {
                RootSystem::Empty
            }
            other => other,
        }
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSystem::A(n) => write!(f, "A{n}"),
            RootSystem::B(n) => write!(f, "B{n}"),
            RootSystem::C(n) => write!(f, "C{n}"),
            RootSystem::D(n) => write!(f, "D{n}"),
            RootSystem::BC(n) => write!(f, "BC{n}"),
            RootSystem::Empty => write!(f, "0"),
        }
    }
}

/// Per-symbol Bernstein-component datum, normalized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauComponent {
    pub tau: String,
    /// number of general-linear factors carrying this symbol
    pub e: u32,
    /// number of core blocks for the symbol / its partner
    pub ell: u32,
    pub ell_prime: u32,
    /// top core block sizes, with sentinels −1 (empty, orthogonal-like) and
    /// 0 (empty, symplectic-like)
    pub a: i32,
    pub a_prime: i32,
    /// torsion number
    pub t: u32,
    pub cls: ClassPair,
    /// dimension of the symbol (drives the determinant constraint on Γ)
    pub dim: u32,
}

/// Raw (pre-normalization) component: the symbol and its partner may still
/// carry separate multiplicities and be listed in either order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComponent {
    pub tau: String,
    pub e: u32,
    /// multiplicity attached to the partner before merging
    pub e_partner: u32,
    pub ell: u32,
    pub ell_prime: u32,
    pub a: i32,
    pub a_prime: i32,
    pub t: u32,
    pub cls: ClassPair,
    pub dim: u32,
    /// leftover unramified-twist offset of a self-dual-up-to-twist factor;
    /// recentering clears it
    #[serde(default)]
    pub twist_offset: Rational64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BernsteinData {
    pub components: Vec<TauComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootDataError {
    InconsistentPartnerData(String),
    OddHalving(String),
    UnmatchedRow(String),
    NotApplicable,
    NotCuspidalBase(String),
    RankTooLarge(u32),
}

impl fmt::Display for RootDataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootDataError::InconsistentPartnerData(t) => {
                write!(f, "inconsistent partner data on `{t}`")
            }
            RootDataError::OddHalving(t) => write!(f, "odd torsion cannot be halved on `{t}`"),
            RootDataError::UnmatchedRow(t) => write!(f, "no table row matches `{t}`"),
            RootDataError::NotApplicable => write!(f, "rescaling not applicable"),
            RootDataError::NotCuspidalBase(t) => write!(f, "datum on `{t}` is not cuspidal"),
            RootDataError::RankTooLarge(n) => write!(f, "rank {n} above the exhaustive cap"),
        }
    }
}

fn parity_class_ok(c: &TauComponent) -> bool {
    // sentinels fold into the parity conditions: −1 odd, 0 even
    let odd = |x: i32| x.rem_euclid(2) == 1;
    match c.cls {
        ClassPair::PlusPlus => odd(c.a) && odd(c.a_prime),
        ClassPair::MinusMinus => !odd(c.a) && !odd(c.a_prime),
        ClassPair::PlusMinus => odd(c.a) != odd(c.a_prime),
        ClassPair::Zero => true,
    }
}

impl TauComponent {
    fn check(&self) -> Result<(), RootDataError> {
        let ordered = if self.ell != self.ell_prime {
            self.ell > self.ell_prime
        } else if self.ell == 0 {
            self.a >= self.a_prime
        } else {
            true
        };
        if !(ordered && self.a >= -1 && self.a_prime >= -1 && parity_class_ok(self)) {
            return Err(RootDataError::InconsistentPartnerData(self.tau.clone()));
        }
        // the sentinels are forced when the core side is empty
        if self.ell == 0 && self.a > 0 || self.ell_prime == 0 && self.a_prime > 0 {
            return Err(RootDataError::InconsistentPartnerData(self.tau.clone()));
        }
        Ok(())
    }

    /// Self-duality side of the primary symbol, read off the parity of `a`
    /// (odd = orthogonal-like Plus, even = symplectic-like Minus).
    pub fn primary_is_plus(&self) -> bool {
        self.a.rem_euclid(2) == 1
    }
}

/// Top core block size from a ladder, with the class sentinels.
pub fn a_tau(core_sizes: &[u32], class_is_plus: bool) -> i32 {
    match core_sizes.iter().max() {
        Some(&m) => m as i32,
        None => {
            if class_is_plus {
                -1
            } else {
                0
            }
        }
    }
}

/// Applies the normalization to raw components: clear twist offsets, merge
/// partner multiplicities, order each pair so that ell >= ell' with the
/// tie-break a >= a' when both ell vanish.
pub fn normalize_component(raw: &[RawComponent]) -> Result<BernsteinData, RootDataError> {
    let mut components = Vec::new();
    for r in raw {
        let mut c = r.clone();
        // recenter: a self-dual-up-to-twist factor is replaced by its
        // square-root-shifted self-dual representative
        c.twist_offset = Rational64::new(0, 1);
        // merge equal-up-to-twist general-linear factors
        if c.e > 0 && c.e_partner > 0 {
            c.e += c.e_partner;
            c.e_partner = 0;
        } else if c.e == 0 && c.e_partner > 0 {
            c.e = c.e_partner;
            c.e_partner = 0;
        }
        // order the pair
        let swap = c.ell < c.ell_prime || (c.ell == c.ell_prime && c.ell == 0 && c.a < c.a_prime);
        if swap {
            core::mem::swap(&mut c.ell, &mut c.ell_prime);
            core::mem::swap(&mut c.a, &mut c.a_prime);
        }
        let out = TauComponent {
            tau: c.tau,
            e: c.e,
            ell: c.ell,
            ell_prime: c.ell_prime,
            a: c.a,
            a_prime: c.a_prime,
            t: c.t,
            cls: c.cls,
            dim: c.dim,
        };
        out.check()?;
        components.push(out);
    }
    components.sort_by(|x, y| x.tau.cmp(&y.tau));
    Ok(BernsteinData { components })
}

/// One row of the graded table: root system plus the two parameter values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedRow {
    pub system: RootSystem,
    pub c_alpha: u32,
    pub c_beta: Option<u32>,
    pub c_2beta: Option<u32>,
}

/// Graded-algebra row for one component.
pub fn graded_row(c: &TauComponent) -> Result<GradedRow, RootDataError> {
    c.check()?;
    let e = c.e;
    let row = match c.cls {
        ClassPair::Zero => GradedRow {
            system: RootSystem::A(e.saturating_sub(1)).reduced(),
            c_alpha: 2,
            c_beta: None,
            c_2beta: None,
        },
        _ => {
            let plus = c.primary_is_plus();
            match (plus, c.ell) {
                (true, 0) => GradedRow {
                    system: RootSystem::D(e).reduced(),
                    c_alpha: 2,
                    c_beta: Some(0), // = 1 + a with a = −1
                    c_2beta: None,
                },
                (true, _) => GradedRow {
                    system: RootSystem::B(e).reduced(),
                    c_alpha: 2,
                    c_beta: Some((1 + c.a) as u32),
                    c_2beta: None,
                },
                (false, 0) => GradedRow {
                    system: RootSystem::C(e).reduced(),
                    c_alpha: 2,
                    c_beta: Some(1), // = 1 + a with a = 0
                    c_2beta: Some(2),
                },
                (false, _) => GradedRow {
                    system: RootSystem::BC(e).reduced(),
                    c_alpha: 2,
                    c_beta: Some((1 + c.a) as u32),
                    c_2beta: Some(2),
                },
            }
        }
    };
    Ok(row)
}

/// Position of a root inside its component, as far as the scaling rule cares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootPos {
    Generic,
    /// long root of a type-C component
    LongInC,
}

/// Scaling factor m_α for a reduced root of the component.
pub fn m_alpha(c: &TauComponent, pos: RootPos, flavor: &GroupFlavor) -> Result<u32, RootDataError> {
    if flavor.family == Family::UUnramified {
        // doubled throughout, except long C-roots of a fully cuspidal-free pair
        let halved = c.ell + c.ell_prime == 0 && pos == RootPos::LongInC;
        return Ok(if halved { c.t } else { 2 * c.t });
    }
    let mixed = c.cls == ClassPair::PlusMinus;
    if mixed && c.ell == 0 && pos == RootPos::LongInC {
        if !c.t.is_multiple_of(2) {
            return Err(RootDataError::OddHalving(c.tau.clone()));
        }
        Ok(c.t / 2)
    } else {
        Ok(c.t)
    }
}

/// One affine-table row: root system with λ on the length-√2 roots and the
/// (λ, λ*) pair on the short roots where applicable. For a type-C row the
/// stored pair encodes the single parameter of the long root as their mean.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineRow {
    pub tau: String,
    pub rank: u32,
    pub system: RootSystem,
    pub lambda_alpha: Rational64,
    pub lambda_beta: Option<Rational64>,
    pub lambda_star_beta: Option<Rational64>,
    /// row carries the full outer-automorphism group of a D-component
    pub gamma_plus_out: bool,
}

/// Affine-table row for one component under the given flavor.
pub fn affine_row(c: &TauComponent, flavor: &GroupFlavor) -> Result<AffineRow, RootDataError> {
    c.check()?;
    let t = Rational64::from_integer(i64::from(c.t));
    let a = i64::from(c.a);
    let ap = i64::from(c.a_prime);
    if flavor.family == Family::UUnramified {
        // doubled lattice scale; every self-dual pair lands in type B
        let row = match c.cls {
            ClassPair::Zero => AffineRow {
                tau: c.tau.clone(),
                rank: c.e,
                system: RootSystem::A(c.e.saturating_sub(1)).reduced(),
                lambda_alpha: t * 2,
                lambda_beta: None,
                lambda_star_beta: None,
                gamma_plus_out: false,
            },
            _ => AffineRow {
                tau: c.tau.clone(),
                rank: c.e,
                system: RootSystem::B(c.e).reduced(),
                lambda_alpha: t * 2,
                lambda_beta: Some(t * (a + ap + 2)),
                lambda_star_beta: Some(t * (a - ap)),
                gamma_plus_out: false,
            },
        };
        return Ok(row);
    }
    let row = match c.cls {
        ClassPair::Zero => AffineRow {
            tau: c.tau.clone(),
            rank: c.e,
            system: RootSystem::A(c.e.saturating_sub(1)).reduced(),
            lambda_alpha: t,
            lambda_beta: None,
            lambda_star_beta: None,
            gamma_plus_out: false,
        },
        _ => match (c.a, c.a_prime) {
            (-1, -1) => AffineRow {
                tau: c.tau.clone(),
                rank: c.e,
                system: RootSystem::D(c.e).reduced(),
                lambda_alpha: t,
                lambda_beta: None,
                lambda_star_beta: None,
                gamma_plus_out: true,
            },
            (0, 0) => AffineRow {
                tau: c.tau.clone(),
                rank: c.e,
                system: RootSystem::C(c.e).reduced(),
                lambda_alpha: t,
                // pair encoding the long-root parameter t = (λ+λ*)/2
                lambda_beta: Some(t),
                lambda_star_beta: Some(t),
                gamma_plus_out: false,
            },
            _ => AffineRow {
                tau: c.tau.clone(),
                rank: c.e,
                system: RootSystem::B(c.e).reduced(),
                lambda_alpha: t,
                lambda_beta: Some(t * (a + ap + 2) / 2),
                lambda_star_beta: Some(t * (a - ap) / 2),
                gamma_plus_out: false,
            },
        },
    };
    Ok(row)
}

/// Replaces a type-B row whose short root carries λ = λ* by the type-C row
/// on the doubled root, with the long-root parameter λ(β/2) = λ(β) + λ*(β).
pub fn rescale_bc(row: &AffineRow) -> Result<AffineRow, RootDataError> {
    match (row.system, row.lambda_beta, row.lambda_star_beta) {
        (RootSystem::B(e), Some(l), Some(ls)) if l == ls => Ok(AffineRow {
            tau: row.tau.clone(),
            rank: row.rank,
            system: RootSystem::C(e).reduced(),
            lambda_alpha: row.lambda_alpha,
            lambda_beta: Some(l * 2),
            lambda_star_beta: Some(l * 2),
            gamma_plus_out: row.gamma_plus_out,
        }),
        _ => Err(RootDataError::NotApplicable),
    }
}

/// The diagram-automorphism group: one flip generator per D-type component,
/// with the even-product constraint on the odd-dimension generators in the
/// even-family, pure-general-linear-Levi case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaGroup {
    /// (component id, dim of the symbol)
    pub generators: Vec<(String, u32)>,
    pub det_constrained: bool,
}

impl GammaGroup {
    pub fn order(&self) -> u128 {
        let full = 1u128 << self.generators.len();
        if self.det_constrained && self.generators.iter().any(|(_, d)| d % 2 == 1) {
            full / 2
        } else {
            full
        }
    }
}

/// Γ for a built set of rows. `levi_pure_gl` marks a Levi consisting of
/// general-linear factors only.
pub fn gamma_group(
    rows: &[AffineRow],
    data: &BernsteinData,
    flavor: &GroupFlavor,
    levi_pure_gl: bool,
) -> GammaGroup {
    if flavor.family.is_unitary() {
        return GammaGroup {
            generators: Vec::new(),
            det_constrained: false,
        };
    }
    let mut generators = Vec::new();
    for row in rows {
        if row.gamma_plus_out && row.rank >= 1 {
            let dim = data
                .components
                .iter()
                .find(|c| c.tau == row.tau)
                .map(|c| c.dim)
                .unwrap_or(1);
            generators.push((row.tau.clone(), dim));
        }
    }
    let even_family = matches!(
        flavor.family,
        Family::SOEven | Family::SOEvenQS | Family::OEven | Family::GSpinEven | Family::GPinEven
    );
    GammaGroup {
        generators,
        det_constrained: even_family && levi_pure_gl,
    }
}

/// Full Hecke-algebra descriptor for a Bernstein datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    /// rank of the central torus coordinate (1 for similitude families)
    pub center_rank: u32,
    /// marker for the index-2 sublattice of the full character lattice
    pub center_index_two: bool,
    #[serde(rename = "components")]
    pub rows: Vec<AffineRow>,
    pub gamma: GammaGroup,
}

impl Presentation {
    pub fn lattice_rank(&self) -> u32 {
        self.center_rank + self.rows.iter().map(|r| r.rank).sum::<u32>()
    }
}

/// Builds the descriptor: one affine row per component, the central
/// coordinate when the family carries a similitude center, and Γ.
pub fn build_presentation(
    data: &BernsteinData,
    flavor: &GroupFlavor,
    levi_pure_gl: bool,
) -> Result<Presentation, RootDataError> {
    let mut rows = Vec::new();
    for c in &data.components {
        c.check()
            .map_err(|_| RootDataError::NotCuspidalBase(c.tau.clone()))?;
        rows.push(affine_row(c, flavor)?);
    }
    let gamma = gamma_group(&rows, data, flavor, levi_pure_gl);
    Ok(Presentation {
        center_rank: u32::from(flavor.has_similitude_center),
        center_index_two: flavor.has_similitude_center,
        rows,
        gamma,
    })
}

/// Root type computed along the other side of the correspondence (the
/// four-case analysis on the p-adic side), including the rescaling step that
/// turns the short-root λ = λ* pattern into a type-C system.
pub fn rep_side_root_type(c: &TauComponent) -> Result<RootSystem, RootDataError> {
    c.check()?;
    Ok(match c.cls {
        ClassPair::Zero => RootSystem::A(c.e.saturating_sub(1)).reduced(),
        _ => {
            let plus = c.primary_is_plus();
            match (plus, c.ell) {
                // no core blocks, orthogonal-like: type D
                (true, 0) => RootSystem::D(c.e).reduced(),
                // core present on either sign: type B
                (true, _) | (false, 1..) => RootSystem::B(c.e).reduced(),
                // no core blocks, symplectic-like: type B with equal short
                // parameters, rescaled to type C
                (false, 0) => RootSystem::C(c.e).reduced(),
            }
        }
    })
}

/// Root type read off the graded table (with the non-reduced BC label
/// collapsed to its reduced form B).
pub fn galois_side_root_type(c: &TauComponent) -> Result<RootSystem, RootDataError> {
    let row = graded_row(c)?;
    Ok(match row.system {
        RootSystem::BC(e) => RootSystem::B(e).reduced(),
        other => other,
    })
}
