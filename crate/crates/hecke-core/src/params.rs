//! Enhanced parameters as Jordan-block multisets with a sign character, and
//! their classification predicates: discrete, bounded, relevant, cuspidal,
//! plus component groups and the behaviour under restriction to the
//! index-2 subgroup.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::repdata::{GroupFlavor, Registry, RegistryError};

/// One Jordan block: a registered symbol tensored with the `a`-dimensional
/// irreducible SL2-factor, twisted by a rational unramified exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JordanBlock {
    pub rep: String,
    pub a: u32,
    #[serde(default, skip_serializing_if = "Rational64::is_zero")]
    pub twist: Rational64,
}

impl JordanBlock {
    pub fn new(rep: &str, a: u32) -> JordanBlock {
        JordanBlock {
            rep: String::from(rep),
            a,
            twist: Rational64::zero(),
        }
    }
}

/// Key of a sign-character generator: (symbol id, SL2 size).
pub type GenKey = (String, u32);

/// An enhanced parameter: flavor + Jordan-block multiset + sign character,
/// the latter stored by its values on the generators z_(rep,a).
///
/// Serializes as `{"flavor": "family:size", "blocks": [{"rep", "a", "twist"?,
/// "eps"?}]}` with the sign value attached to each block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnhancedParam {
    pub flavor: GroupFlavor,
    pub jord: Vec<JordanBlock>,
    pub epsilon: BTreeMap<GenKey, i8>,
}

#[derive(Serialize, Deserialize)]
struct BlockRepr {
    rep: String,
    a: u32,
    #[serde(default, skip_serializing_if = "Rational64::is_zero")]
    twist: Rational64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eps: Option<i8>,
}

#[derive(Serialize, Deserialize)]
struct ParamRepr {
    flavor: String,
    blocks: Vec<BlockRepr>,
}

impl Serialize for EnhancedParam {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use alloc::string::ToString;
        let repr = ParamRepr {
            flavor: self.flavor.to_string(),
            blocks: self
                .jord
                .iter()
                .map(|b| BlockRepr {
                    rep: b.rep.clone(),
                    a: b.a,
                    twist: b.twist,
                    eps: self.epsilon.get(&(b.rep.clone(), b.a)).copied(),
                })
                .collect(),
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for EnhancedParam {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = ParamRepr::deserialize(de)?;
        let flavor = GroupFlavor::parse(&repr.flavor)
            .ok_or_else(|| serde::de::Error::custom("unknown flavor string"))?;
        let mut out = EnhancedParam::new(flavor);
        for b in repr.blocks {
            if let Some(e) = b.eps {
                out.epsilon.insert((b.rep.clone(), b.a), e);
            }
            out.jord.push(JordanBlock {
                rep: b.rep,
                a: b.a,
                twist: b.twist,
            });
        }
        out.normalize();
        Ok(out)
    }
}

impl EnhancedParam {
    pub fn new(flavor: GroupFlavor) -> EnhancedParam {
        EnhancedParam {
            flavor,
            jord: Vec::new(),
            epsilon: BTreeMap::new(),
        }
    }

    /// Restores the canonical block order (rep id, then a, then twist).
    pub fn normalize(&mut self) {
        self.jord.sort();
    }

    pub fn with_blocks(flavor: GroupFlavor, blocks: Vec<JordanBlock>) -> EnhancedParam {
        let mut p = EnhancedParam {
            flavor,
            jord: blocks,
            epsilon: BTreeMap::new(),
        };
        p.normalize();
        p
    }

    pub fn set_eps(&mut self, rep: &str, a: u32, v: i8) {
        self.epsilon.insert((String::from(rep), a), v);
    }

    pub fn eps(&self, rep: &str, a: u32) -> Option<i8> {
        self.epsilon.get(&(String::from(rep), a)).copied()
    }

    /// Ascending list of distinct SL2 sizes of blocks for one symbol.
    pub fn sizes_for(&self, rep: &str) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .jord
            .iter()
            .filter(|b| b.rep == rep)
            .map(|b| b.a)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn rep_ids(&self) -> Vec<String> {
        let mut v: Vec<String> = self.jord.iter().map(|b| b.rep.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn contains(&self, rep: &str, a: u32) -> bool {
        self.jord.iter().any(|b| b.rep == rep && b.a == a)
    }

    /// Total size carried by the blocks (sum of dim · a).
    pub fn size(&self, reg: &Registry) -> Result<u64, RegistryError> {
        let mut n = 0u64;
        for b in &self.jord {
            n += u64::from(reg.require(&b.rep)?.dim) * u64::from(b.a);
        }
        Ok(n)
    }
}

/// F2-vector space on the block generators, with the optional
/// determinant-condition element singled out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentGroup {
    pub basis: Vec<GenKey>,
    /// generators whose product is the order-<=2 determinant element;
    /// present exactly on the non-plus variant
    pub det_element: Option<BTreeSet<GenKey>>,
    pub plus_variant: bool,
}

impl ComponentGroup {
    pub fn order(&self) -> u128 {
        let full = 1u128 << self.basis.len();
        match &self.det_element {
            Some(d) if !d.is_empty() => full / 2,
            _ => full,
        }
    }

    /// Index in the plus variant (1 or 2).
    pub fn index_in_plus(&self) -> u32 {
        match &self.det_element {
            Some(d) if !d.is_empty() => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamError {
    Registry(RegistryError),
    EpsilonIncomplete(GenKey),
    FlavorMismatch,
}

impl From<RegistryError> for ParamError {
    fn from(e: RegistryError) -> ParamError {
        ParamError::Registry(e)
    }
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::Registry(e) => write!(f, "{e}"),
            ParamError::EpsilonIncomplete((r, a)) => {
                write!(f, "sign character undefined on z_({r},{a})")
            }
            ParamError::FlavorMismatch => write!(f, "flavor has no index-2 extension"),
        }
    }
}

/// Violations reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// sum of dim·a differs from the declared standard-representation size
    SizeMismatch { expected: u64, got: u64 },
    /// block whose self-duality class / SL2 parity does not match the dual sign
    SignMismatch { rep: String, a: u32 },
    /// block whose symbol is not registered
    UnknownRep { rep: String },
}

/// Sign of the block (rep ⊗ SL2-factor): class sign times SL2 parity sign
/// (+1 for odd a, −1 for even a). `None` for non-self-dual symbols.
pub fn block_sign(reg: &Registry, rep: &str, a: u32) -> Option<i8> {
    let class_sign = reg.get(rep)?.selfdual.sign()?;
    let sl2_sign: i8 = if a % 2 == 1 { 1 } else { -1 };
    Some(class_sign * sl2_sign)
}

/// True when the block may appear in a parameter of this flavor.
pub fn block_admissible(reg: &Registry, flavor: &GroupFlavor, rep: &str, a: u32) -> bool {
    block_sign(reg, rep, a) == Some(flavor.dual_sign)
}

/// Diagnostic validation: size bookkeeping and per-block sign conditions.
pub fn validate(reg: &Registry, phi: &EnhancedParam) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut total = 0u64;
    for b in &phi.jord {
        match reg.get(&b.rep) {
            None => out.push(Violation::UnknownRep { rep: b.rep.clone() }),
            Some(s) => {
                total += u64::from(s.dim) * u64::from(b.a);
                if !block_admissible(reg, &phi.flavor, &b.rep, b.a) {
                    out.push(Violation::SignMismatch {
                        rep: b.rep.clone(),
                        a: b.a,
                    });
                }
            }
        }
    }
    let expected = u64::from(phi.flavor.std_size);
    if total != expected {
        out.push(Violation::SizeMismatch {
            expected,
            got: total,
        });
    }
    out
}

/// True iff every block is admissible (right sign, self-dual) and occurs with
/// multiplicity one.
pub fn is_discrete(reg: &Registry, phi: &EnhancedParam) -> bool {
    let mut seen: BTreeSet<(&str, u32, Rational64)> = BTreeSet::new();
    for b in &phi.jord {
        if !block_admissible(reg, &phi.flavor, &b.rep, b.a) {
            return false;
        }
        if !seen.insert((b.rep.as_str(), b.a, b.twist)) {
            return false;
        }
    }
    true
}

/// True iff every block has twist zero.
pub fn is_bounded(phi: &EnhancedParam) -> bool {
    phi.jord.iter().all(|b| b.twist.is_zero())
}

/// Basis of the component group of a discrete parameter: one generator per
/// self-dual matching-sign block (multiplicity one assumed).
fn generator_basis(reg: &Registry, phi: &EnhancedParam) -> Vec<GenKey> {
    let mut basis: Vec<GenKey> = Vec::new();
    for b in &phi.jord {
        if block_admissible(reg, &phi.flavor, &b.rep, b.a) {
            let k = (b.rep.clone(), b.a);
            if !basis.contains(&k) {
                basis.push(k);
            }
        }
    }
    basis.sort();
    basis
}

/// Component group of `phi`, for the extended group (`plus = true`) or for
/// the group itself (`plus = false`, where the even-product condition on
/// odd-parity generators applies).
pub fn component_group(reg: &Registry, phi: &EnhancedParam, plus: bool) -> ComponentGroup {
    let basis = generator_basis(reg, phi);
    let det_element = if plus {
        None
    } else {
        let odd: BTreeSet<GenKey> = basis
            .iter()
            .filter(|(r, a)| {
                reg.get(r)
                    .map(|s| (u64::from(s.dim) * u64::from(*a)) % 2 == 1)
                    .unwrap_or(false)
            })
            .cloned()
            .collect();
        Some(odd)
    };
    ComponentGroup {
        basis,
        det_element,
        plus_variant: plus,
    }
}

fn eps_on(phi: &EnhancedParam, key: &GenKey) -> Result<i8, ParamError> {
    phi.epsilon
        .get(key)
        .copied()
        .ok_or_else(|| ParamError::EpsilonIncomplete(key.clone()))
}

/// Evaluates the sign character on the determinant element and compares with
/// the value required by the form: −1 on a prime form, +1 otherwise. An
/// identity determinant element is vacuously fine.
pub fn is_relevant(reg: &Registry, phi: &EnhancedParam) -> Result<bool, ParamError> {
    let cg = component_group(reg, phi, false);
    let det = cg.det_element.as_ref().expect("non-plus group");
    if det.is_empty() {
        return Ok(true);
    }
    let mut v: i8 = 1;
    for k in det {
        v *= eps_on(phi, k)?;
    }
    let required: i8 = if phi.flavor.prime_form { -1 } else { 1 };
    Ok(v == required)
}

/// Cuspidality: discrete, no holes in any block ladder, and alternated signs
/// with value −1 on every size-2 block.
pub fn is_cuspidal(reg: &Registry, phi: &EnhancedParam) -> Result<bool, ParamError> {
    if !is_discrete(reg, phi) {
        return Ok(false);
    }
    for rep in phi.rep_ids() {
        let sizes = phi.sizes_for(&rep);
        for (i, &a) in sizes.iter().enumerate() {
            if a > 2 && !phi.contains(&rep, a - 2) {
                return Ok(false); // hole
            }
            if a == 2 && eps_on(phi, &(rep.clone(), 2))? != -1 {
                return Ok(false);
            }
            if i + 1 < sizes.len() && sizes[i + 1] == a + 2 {
                let e1 = eps_on(phi, &(rep.clone(), a))?;
                let e2 = eps_on(phi, &(rep.clone(), a + 2))?;
                if e1 * e2 != -1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether the restriction to the index-2 subgroup is reducible:
/// true iff dim·a is even for every block. Only meaningful for flavors with
/// a disconnected partner.
pub fn restriction_reducible(reg: &Registry, phi: &EnhancedParam) -> Result<bool, ParamError> {
    if !phi.flavor.det_condition {
        return Err(ParamError::FlavorMismatch);
    }
    for b in &phi.jord {
        let dim = u64::from(reg.require(&b.rep)?.dim);
        if (dim * u64::from(b.a)) % 2 == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All characters of the plus component group restricting to the character
/// `phi.epsilon` carries on the non-plus group: either the character itself
/// (index 1) or the two twists by the determinant character (index 2).
pub fn epsilon_extensions(
    reg: &Registry,
    phi: &EnhancedParam,
) -> Result<Vec<BTreeMap<GenKey, i8>>, ParamError> {
    let cg = component_group(reg, phi, false);
    for k in &cg.basis {
        eps_on(phi, k)?;
    }
    let base: BTreeMap<GenKey, i8> = cg
        .basis
        .iter()
        .map(|k| (k.clone(), phi.epsilon[k]))
        .collect();
    let det = cg.det_element.as_ref().expect("non-plus group");
    if det.is_empty() {
        return Ok(alloc::vec![base]);
    }
    let mut twisted = base.clone();
    for k in det {
        twisted.insert(k.clone(), -base[k]);
    }
    Ok(alloc::vec![base, twisted])
}
