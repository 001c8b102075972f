//! Registry of symbolic cuspidal building blocks and of group flavors.
//!
//! A [`RepSymbol`] is an opaque atom carrying exactly the attributes the rest
//! of the library consumes: dimension, torsion number, self-duality class and
//! an optional distinguished twist partner. A [`GroupFlavor`] fixes the dual
//! group side: the size of its standard representation, the sign of its
//! derived part, and the determinant/similitude markers.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

/// Self-duality class of a symbol (orthogonal-like, symplectic-like, or none),
/// taken relative to the fixed similitude twist of the ambient flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelfDualClass {
    Plus,
    Minus,
    Zero,
}

impl SelfDualClass {
    /// +1 for `Plus`, −1 for `Minus`, `None` for `Zero`.
    pub fn sign(self) -> Option<i8> {
        match self {
            SelfDualClass::Plus => Some(1),
            SelfDualClass::Minus => Some(-1),
            SelfDualClass::Zero => None,
        }
    }

    pub fn flipped(self) -> SelfDualClass {
        match self {
            SelfDualClass::Plus => SelfDualClass::Minus,
            SelfDualClass::Minus => SelfDualClass::Plus,
            SelfDualClass::Zero => SelfDualClass::Zero,
        }
    }
}

/// Whether a symbol and its distinguished twist partner share the
/// self-duality class or have opposite classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartnerSignRule {
    SameSign,
    OppositeSign,
}

/// A symbolic irreducible building block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepSymbol {
    pub id: String,
    /// dimension d
    pub dim: u32,
    /// torsion number t (count of unramified characters fixing the symbol)
    pub torsion: u32,
    pub selfdual: SelfDualClass,
    /// id of the distinguished unramified twist partner, if any
    pub partner: Option<String>,
    pub partner_sign_rule: PartnerSignRule,
}

/// Group families covered by the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// odd general spin (dual a similitude-symplectic group)
    GSpinOdd,
    /// even general spin, split or non-split (dual similitude-special-orthogonal)
    GSpinEven,
    /// even general spin, quasi-split disconnected partner (dual similitude-orthogonal)
    GPinEven,
    Sp,
    SOOdd,
    SOEven,
    SOEvenQS,
    OEven,
    URamified,
    UUnramified,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::GSpinOdd => "gspin-odd",
            Family::GSpinEven => "gspin-even",
            Family::GPinEven => "gpin-even",
            Family::Sp => "sp",
            Family::SOOdd => "so-odd",
            Family::SOEven => "so-even",
            Family::SOEvenQS => "so-even-qs",
            Family::OEven => "o-even",
            Family::URamified => "u-ramified",
            Family::UUnramified => "u-unramified",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Some(match s {
            "gspin-odd" => Family::GSpinOdd,
            "gspin-even" => Family::GSpinEven,
            "gpin-even" => Family::GPinEven,
            "sp" => Family::Sp,
            "so-odd" => Family::SOOdd,
            "so-even" => Family::SOEven,
            "so-even-qs" => Family::SOEvenQS,
            "o-even" => Family::OEven,
            "u-ramified" => Family::URamified,
            "u-unramified" => Family::UUnramified,
            _ => return None,
        })
    }

    pub fn is_unitary(self) -> bool {
        matches!(self, Family::URamified | Family::UUnramified)
    }

    fn derived_dual_sign(self, std_size: u32) -> i8 {
        match self {
            // dual derived group symplectic-like
            Family::SOOdd | Family::GSpinOdd => -1,
            // dual derived group orthogonal-like
            Family::Sp
            | Family::SOEven
            | Family::SOEvenQS
            | Family::OEven
            | Family::GSpinEven
            | Family::GPinEven => 1,
            // conjugate self-duality sign alternates with the size
            Family::URamified | Family::UUnramified => {
                if std_size % 2 == 1 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    fn derived_det_condition(self) -> bool {
        matches!(
            self,
            Family::SOEven | Family::SOEvenQS | Family::GSpinEven | Family::GPinEven
        )
    }

    fn derived_similitude(self) -> bool {
        matches!(
            self,
            Family::GSpinOdd | Family::GSpinEven | Family::GPinEven
        )
    }
}

/// A classical (or unitary) group flavor together with the attributes of its
/// dual group that drive block admissibility and component-group shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFlavor {
    pub family: Family,
    /// size N of the standard representation of the dual group
    pub std_size: u32,
    /// sign of the derived part of the dual group (+1 orthogonal-like, −1 symplectic-like)
    pub dual_sign: i8,
    pub has_similitude_center: bool,
    /// whether the group sits index-2 inside a disconnected partner
    pub det_condition: bool,
    /// pure-inner-twist ("prime form") marker
    pub prime_form: bool,
}

impl GroupFlavor {
    pub fn new(family: Family, std_size: u32, prime_form: bool) -> GroupFlavor {
        GroupFlavor {
            family,
            std_size,
            dual_sign: family.derived_dual_sign(std_size),
            has_similitude_center: family.derived_similitude(),
            det_condition: family.derived_det_condition(),
            prime_form,
        }
    }
}

impl fmt::Display for GroupFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family.as_str(), self.std_size)?;
        if self.prime_form {
            write!(f, ":prime")?;
        }
        Ok(())
    }
}

impl GroupFlavor {
    /// Inverse of the `Display` form, e.g. `"sp:4"` or `"so-even:8:prime"`.
    pub fn parse(s: &str) -> Option<GroupFlavor> {
        let mut it = s.split(':');
        let family = Family::parse(it.next()?)?;
        let std_size: u32 = it.next()?.parse().ok()?;
        let prime = match it.next() {
            None => false,
            Some("prime") => true,
            Some(_) => return None,
        };
        if it.next().is_some() {
            return None;
        }
        Some(GroupFlavor::new(family, std_size, prime))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegistryError {
    DuplicateId(String),
    BrokenPartnerLink(String),
    NoPartner(String),
    UnknownId(String),
}

impl fmt::Display for RegistryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegistryError::DuplicateId(id) => write!(f, "duplicate symbol id `{id}`"),
            RegistryError::BrokenPartnerLink(id) => {
                write!(f, "inconsistent partner link on symbol `{id}`")
            }
            RegistryError::NoPartner(id) => write!(f, "symbol `{id}` has no partner"),
            RegistryError::UnknownId(id) => write!(f, "unknown symbol id `{id}`"),
        }
    }
}

/// Immutable-after-build registry of [`RepSymbol`]s.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registry {
    syms: BTreeMap<String, RepSymbol>,
}

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    pub fn from_symbols(symbols: Vec<RepSymbol>) -> Result<Registry, RegistryError> {
        let mut reg = Registry::new();
        for s in symbols {
            reg.register_rep(s)?;
        }
        reg.check_links()?;
        Ok(reg)
    }

    /// Registers a symbol; returns its id as the registry handle.
    ///
    /// Partner links are checked against already-registered symbols; a link to
    /// a not-yet-registered id is allowed until [`Registry::check_links`].
    pub fn register_rep(&mut self, spec: RepSymbol) -> Result<String, RegistryError> {
        if self.syms.contains_key(&spec.id) {
            return Err(RegistryError::DuplicateId(spec.id));
        }
        if spec.dim == 0 || spec.torsion == 0 {
            return Err(RegistryError::BrokenPartnerLink(spec.id));
        }
        if let Some(p) = &spec.partner {
            // partner links must be irreflexive and only self-dual symbols carry one
            if *p == spec.id || spec.selfdual == SelfDualClass::Zero {
                return Err(RegistryError::BrokenPartnerLink(spec.id));
            }
            if let Some(other) = self.syms.get(p) {
                let ok = other.partner.as_deref() == Some(spec.id.as_str())
                    && other.dim == spec.dim
                    && other.torsion == spec.torsion;
                if !ok {
                    return Err(RegistryError::BrokenPartnerLink(spec.id));
                }
            }
        }
        let id = spec.id.clone();
        self.syms.insert(id.clone(), spec);
        Ok(id)
    }

    /// Verifies that every partner link is symmetric and resolvable.
    pub fn check_links(&self) -> Result<(), RegistryError> {
        for (id, s) in &self.syms {
            if let Some(p) = &s.partner {
                let other = self
                    .syms
                    .get(p)
                    .ok_or_else(|| RegistryError::BrokenPartnerLink(id.clone()))?;
                if other.partner.as_deref() != Some(id.as_str())
                    || other.dim != s.dim
                    || other.torsion != s.torsion
                    || p == id
                {
                    return Err(RegistryError::BrokenPartnerLink(id.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&RepSymbol> {
        self.syms.get(id)
    }

    pub fn require(&self, id: &str) -> Result<&RepSymbol, RegistryError> {
        self.get(id)
            .ok_or_else(|| RegistryError::UnknownId(String::from(id)))
    }

    pub fn iter(&self) -> impl Iterator<Item = &RepSymbol> {
        self.syms.values()
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    /// Self-duality class of the distinguished partner of `id`.
    ///
    /// Same class under `SameSign`, flipped under `OppositeSign`; for the
    /// unramified unitary flavor the rule is forced to `OppositeSign`.
    pub fn partner_sign(
        &self,
        id: &str,
        flavor: &GroupFlavor,
    ) -> Result<SelfDualClass, RegistryError> {
        let s = self.require(id)?;
        if s.partner.is_none() || s.selfdual == SelfDualClass::Zero {
            return Err(RegistryError::NoPartner(String::from(id)));
        }
        let rule = if flavor.family == Family::UUnramified {
            PartnerSignRule::OppositeSign
        } else {
            s.partner_sign_rule
        };
        Ok(match rule {
            PartnerSignRule::SameSign => s.selfdual,
            PartnerSignRule::OppositeSign => s.selfdual.flipped(),
        })
    }
}
