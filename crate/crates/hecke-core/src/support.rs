//! Cuspidal support of enhanced parameters: closed defect formulas, the
//! adjacent-pair reduction, the full support recursion, and the
//! parabolic-induction case analysis.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::params::{self, block_admissible, EnhancedParam, JordanBlock, ParamError};
use crate::repdata::Registry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// even block sizes, support shape {2, 4, ..., 2d}
    Symplectic,
    /// odd block sizes, support shape {1, 3, ..., 2d−1}
    Orthogonal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportError {
    NonEvenSize(u32),
    NonOddSize(u32),
    RepeatedSize(u32),
    NotAdjacent,
    EpsilonMismatch,
    NotRelevant,
    Param(ParamError),
}

impl From<crate::repdata::RegistryError> for SupportError {
    fn from(e: crate::repdata::RegistryError) -> SupportError {
        SupportError::Param(ParamError::Registry(e))
    }
}

impl From<ParamError> for SupportError {
    fn from(e: ParamError) -> SupportError {
        SupportError::Param(e)
    }
}

impl fmt::Display for SupportError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportError::NonEvenSize(a) => write!(f, "size {a} is not even"),
            SupportError::NonOddSize(a) => write!(f, "size {a} is not odd"),
            SupportError::RepeatedSize(a) => write!(f, "size {a} repeated"),
            SupportError::NotAdjacent => write!(f, "blocks are not adjacent"),
            SupportError::EpsilonMismatch => write!(f, "signs differ on the pair"),
            SupportError::NotRelevant => write!(f, "sign character is not relevant"),
            SupportError::Param(e) => write!(f, "{e}"),
        }
    }
}

fn check_sizes(sizes: &[u32], eps: &[i8], even: bool) -> Result<(), SupportError> {
    assert_eq!(sizes.len(), eps.len(), "one sign per size");
    for w in sizes.windows(2) {
        if w[0] == w[1] {
            return Err(SupportError::RepeatedSize(w[0]));
        }
        assert!(w[0] < w[1], "sizes must be ascending");
    }
    for &a in sizes {
        if even && a % 2 == 1 {
            return Err(SupportError::NonEvenSize(a));
        }
        if !even && a % 2 == 0 {
            return Err(SupportError::NonOddSize(a));
        }
    }
    Ok(())
}

/// Closed-form defect for even block sizes.
///
/// After padding with a virtual size-0 block of sign +1 whenever the count is
/// even, the signed count d' is the alternating sum (starting with +) over
/// the ascending sizes; the defect is d'−1 for positive d' and −d' otherwise.
pub fn defect_symplectic(sizes: &[u32], eps: &[i8]) -> Result<u32, SupportError> {
    check_sizes(sizes, eps, true)?;
    let mut signs: Vec<i8> = Vec::with_capacity(sizes.len() + 1);
    if sizes.len().is_multiple_of(2) {
        signs.push(1); // virtual block of size 0
    }
    signs.extend_from_slice(eps);
    let d_prime: i64 = signs
        .iter()
        .enumerate()
        .map(|(j, &e)| {
            if j % 2 == 0 {
                i64::from(e)
            } else {
                -i64::from(e)
            }
        })
        .sum();
    debug_assert!(d_prime % 2 != 0, "signed count is always odd");
    Ok(if d_prime > 0 {
        (d_prime - 1) as u32
    } else {
        (-d_prime) as u32
    })
}

/// Closed-form defect and sign for odd block sizes.
///
/// d is the absolute alternating sum (starting with −, i.e. index j = 1 at
/// the smallest size); the sign is the one the recursion carries to the
/// size-1 support block: the sign of the smallest block surviving the
/// adjacent-equal-pair reduction (+1 when nothing survives).
pub fn defect_orthogonal(sizes: &[u32], eps: &[i8]) -> Result<(u32, i8), SupportError> {
    check_sizes(sizes, eps, false)?;
    let total: i64 = eps
        .iter()
        .enumerate()
        .map(|(j0, &e)| {
            if j0 % 2 == 0 {
                -i64::from(e)
            } else {
                i64::from(e)
            }
        })
        .sum();
    let (alt_sizes, alt_eps) = strip_adjacent_equal_pairs(sizes, eps);
    let sign = if alt_sizes.is_empty() { 1 } else { alt_eps[0] };
    debug_assert_eq!(alt_sizes.len() as i64, total.abs());
    Ok((total.unsigned_abs() as u32, sign))
}

/// Removes adjacent equal-sign pairs until the sign sequence alternates.
/// Works on one ladder; returns the surviving sizes and signs.
fn strip_adjacent_equal_pairs(sizes: &[u32], eps: &[i8]) -> (Vec<u32>, Vec<i8>) {
    let mut s: Vec<u32> = sizes.into();
    let mut e: Vec<i8> = eps.into();
    loop {
        let mut removed = false;
        let mut i = 0;
        while i + 1 < s.len() {
            if e[i] == e[i + 1] {
                s.drain(i..=i + 1);
                e.drain(i..=i + 1);
                removed = true;
            } else {
                i += 1;
            }
        }
        if !removed {
            return (s, e);
        }
    }
}

/// One line of general-linear factors peeled off by the reduction: a segment
/// of `half_length` copies of the symbol centered at the rational `exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlEntry {
    pub rep: String,
    pub half_length: u32,
    pub exponent: Rational64,
}

impl GlEntry {
    /// Entry for a removed adjacent pair (a, a'); a' = 0 encodes the virtual
    /// zero block.
    fn removed_pair(rep: &str, a: u32, a_prime: u32) -> GlEntry {
        GlEntry {
            rep: String::from(rep),
            half_length: (a + a_prime) / 2,
            exponent: Rational64::new(i64::from(a) - i64::from(a_prime), 4),
        }
    }

    /// Entry for moving a surviving block from size `a` to target size `t`.
    fn moved_block(rep: &str, a: u32, t: u32) -> GlEntry {
        GlEntry {
            rep: String::from(rep),
            half_length: (a - t) / 2,
            exponent: Rational64::new(i64::from(a) + i64::from(t), 4),
        }
    }
}

/// Per-symbol summary of a cuspidal support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalTriple {
    pub rep: String,
    pub defect: u32,
    pub side: Side,
    /// only meaningful on the orthogonal side
    pub sign: i8,
}

/// Full result of the support reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalSupport {
    pub core: EnhancedParam,
    pub gl_line: Vec<GlEntry>,
    pub triples: Vec<CuspidalTriple>,
}

/// Removes the adjacent equal-sign pair (a, a') from one ladder of `phi`.
/// `a_prime = 0` stands for the virtual zero block (allowed when `a` is the
/// minimal, even, element with sign +1).
pub fn remove_adjacent_pair(
    phi: &EnhancedParam,
    rep: &str,
    a: u32,
    a_prime: u32,
) -> Result<(EnhancedParam, GlEntry), SupportError> {
    if a <= a_prime {
        return Err(SupportError::NotAdjacent);
    }
    let sizes = phi.sizes_for(rep);
    if !sizes.contains(&a) {
        return Err(SupportError::NotAdjacent);
    }
    let eps_a = phi
        .eps(rep, a)
        .ok_or(ParamError::EpsilonIncomplete((String::from(rep), a)))?;
    if a_prime == 0 {
        // virtual pair: a must be the minimal element, even, of sign +1
        if sizes[0] != a || !a.is_multiple_of(2) {
            return Err(SupportError::NotAdjacent);
        }
        if eps_a != 1 {
            return Err(SupportError::EpsilonMismatch);
        }
    } else {
        if !sizes.contains(&a_prime) || sizes.iter().any(|&b| a_prime < b && b < a) {
            return Err(SupportError::NotAdjacent);
        }
        let eps_ap = phi
            .eps(rep, a_prime)
            .ok_or(ParamError::EpsilonIncomplete((String::from(rep), a_prime)))?;
        if eps_a != eps_ap {
            return Err(SupportError::EpsilonMismatch);
        }
    }
    let mut out = phi.clone();
    out.jord
        .retain(|b| !(b.rep == rep && (b.a == a || (a_prime > 0 && b.a == a_prime))));
    out.epsilon.remove(&(String::from(rep), a));
    if a_prime > 0 {
        out.epsilon.remove(&(String::from(rep), a_prime));
    }
    // std_size is left untouched here; cuspidal_support recomputes the core
    // size from the registry once the reduction is finished
    Ok((out, GlEntry::removed_pair(rep, a, a_prime)))
}

/// Applies [`remove_adjacent_pair`] in the deterministic order (smallest rep
/// id, then smallest upper size) until every ladder alternates. The result is
/// independent of the removal order.
pub fn reduce_to_alternated(
    phi: &EnhancedParam,
) -> Result<(EnhancedParam, Vec<GlEntry>), SupportError> {
    let mut cur = phi.clone();
    let mut line = Vec::new();
    loop {
        let mut removed = false;
        for rep in cur.rep_ids() {
            let sizes = cur.sizes_for(&rep);
            // find the lowest adjacent equal-sign pair in this ladder
            let mut pick: Option<(u32, u32)> = None;
            for w in sizes.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                let (e_lo, e_hi) = (
                    cur.eps(&rep, lo)
                        .ok_or(ParamError::EpsilonIncomplete((rep.clone(), lo)))?,
                    cur.eps(&rep, hi)
                        .ok_or(ParamError::EpsilonIncomplete((rep.clone(), hi)))?,
                );
                if e_lo == e_hi {
                    pick = Some((hi, lo));
                    break;
                }
            }
            if let Some((a, ap)) = pick {
                let (next, entry) = remove_adjacent_pair(&cur, &rep, a, ap)?;
                cur = next;
                line.push(entry);
                removed = true;
                break;
            }
        }
        if !removed {
            return Ok((cur, line));
        }
    }
}

/// The full support recursion: reduce to alternated signs, then send each
/// surviving ladder to its cuspidal shape, logging every peeled segment.
pub fn cuspidal_support(
    reg: &Registry,
    phi: &EnhancedParam,
) -> Result<CuspidalSupport, SupportError> {
    if !params::is_relevant(reg, phi)? {
        return Err(SupportError::NotRelevant);
    }
    let (alt, mut gl_line) = reduce_to_alternated(phi)?;
    let mut core = EnhancedParam::new(phi.flavor);
    let mut triples = Vec::new();

    for rep in alt.rep_ids() {
        let sizes = alt.sizes_for(&rep);
        let eps: Vec<i8> = sizes
            .iter()
            .map(|&a| alt.eps(&rep, a).expect("alternated ladder is signed"))
            .collect();
        let k = sizes.len() as u32;
        let even_side = sizes[0] % 2 == 0;
        if even_side {
            // minimal sign −1 keeps all blocks; +1 drops one through the
            // virtual zero block
            let d = if eps[0] == -1 { k } else { k - 1 };
            let targets: Vec<u32> = if eps[0] == -1 {
                (1..=d).map(|j| 2 * j).collect()
            } else {
                core::iter::once(0).chain((1..=d).map(|j| 2 * j)).collect()
            };
            for (&a, &t) in sizes.iter().zip(targets.iter()) {
                if a != t {
                    gl_line.push(GlEntry::moved_block(&rep, a, t));
                }
                if t > 0 {
                    core.jord.push(JordanBlock::new(&rep, t));
                    // target ladder alternates starting with −1 at size 2
                    let v: i8 = if (t / 2) % 2 == 1 { -1 } else { 1 };
                    core.set_eps(&rep, t, v);
                }
            }
            triples.push(CuspidalTriple {
                rep: rep.clone(),
                defect: d,
                side: Side::Symplectic,
                sign: 1,
            });
        } else {
            let d = k;
            let sign = eps[0];
            for (j, &a) in sizes.iter().enumerate() {
                let t = 2 * (j as u32) + 1;
                if a != t {
                    gl_line.push(GlEntry::moved_block(&rep, a, t));
                }
                core.jord.push(JordanBlock::new(&rep, t));
                let v: i8 = if j % 2 == 0 { sign } else { -sign };
                core.set_eps(&rep, t, v);
            }
            triples.push(CuspidalTriple {
                rep: rep.clone(),
                defect: d,
                side: Side::Orthogonal,
                sign,
            });
        }
    }
    core.normalize();
    let mut core_size = 0u64;
    for b in &core.jord {
        core_size += u64::from(reg.require(&b.rep)?.dim) * u64::from(b.a);
    }
    core.flavor.std_size = core_size as u32;
    gl_line.sort_by(|x, y| {
        (&x.rep, x.half_length, x.exponent).cmp(&(&y.rep, y.half_length, y.exponent))
    });
    Ok(CuspidalSupport {
        core,
        gl_line,
        triples,
    })
}

/// Outcome classes of inducing one extra block on top of `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InductionCase {
    /// sign mismatch: component group unchanged, always reducible
    SignMismatch,
    /// sign match, block present: component group unchanged, reducible
    BlockPresent,
    /// sign match, block absent: component group grows, two inequivalent summands
    BlockAbsent,
}

/// Case analysis for inducing the block (rep, a): returns the case and the
/// number of inequivalent irreducible summands (1 or 2).
pub fn classify_parabolic_induction(
    reg: &Registry,
    phi: &EnhancedParam,
    rep: &str,
    a: u32,
) -> (InductionCase, u8) {
    if !block_admissible(reg, &phi.flavor, rep, a) {
        (InductionCase::SignMismatch, 1)
    } else if phi.contains(rep, a) {
        (InductionCase::BlockPresent, 1)
    } else {
        (InductionCase::BlockAbsent, 2)
    }
}

/// Membership of (rep, a) in the Jordan-block set recovered from the
/// induction behaviour: exactly plain membership.
pub fn jordan_membership(reg: &Registry, phi: &EnhancedParam, rep: &str, a: u32) -> bool {
    matches!(
        classify_parabolic_induction(reg, phi, rep, a),
        (InductionCase::BlockPresent, _)
    )
}

/// Size bookkeeping helper: total size carried by a general-linear line
/// (each segment pairs up, so counts twice).
pub fn gl_line_size(reg: &Registry, line: &[GlEntry]) -> Result<u64, ParamError> {
    let mut n = 0u64;
    for e in line {
        n += 2 * u64::from(reg.require(&e.rep)?.dim) * u64::from(e.half_length);
    }
    Ok(n)
}

/// All sign assignments on the given generators, in a fixed order. Helper for
/// enumeration and sweeps.
pub fn sign_vectors(len: usize) -> impl Iterator<Item = Vec<i8>> {
    (0..(1u32 << len)).map(move |m| {
        (0..len)
            .map(|i| if m & (1 << i) != 0 { -1 } else { 1 })
            .collect()
    })
}

/// Builds a one-ladder parameter for tests and sweeps.
pub fn ladder_param(
    flavor: crate::repdata::GroupFlavor,
    rep: &str,
    sizes: &[u32],
    eps: &[i8],
) -> EnhancedParam {
    let mut phi = EnhancedParam::with_blocks(
        flavor,
        sizes.iter().map(|&a| JordanBlock::new(rep, a)).collect(),
    );
    let mut em: BTreeMap<(String, u32), i8> = BTreeMap::new();
    for (&a, &e) in sizes.iter().zip(eps.iter()) {
        em.insert((String::from(rep), a), e);
    }
    phi.epsilon = em;
    phi
}
