//! Order formulas and exponent data for the named group families.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, ToPrimitive, Zero};
use serde::Serialize;

use super::exponent::PExponent;
use crate::error::{Error, Result};
use crate::valuation::{is_prime, lte_nu2, padic_valuation, padic_valuation_u64, require_prime};

/// Finite groups of Lie type whose orders have closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LieType {
    GL,
    SL,
    PSL,
    Sz,
}

impl std::str::FromStr for LieType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(LieType::GL),
            "SL" => Ok(LieType::SL),
            "PSL" => Ok(LieType::PSL),
            "SZ" => Ok(LieType::Sz),
            _ => Err(Error::Input(format!("unknown group type {s:?}"))),
        }
    }
}

/// `q = ℓ^e` for a prime `ℓ` and `e ≥ 1`, if `q` has that shape.
fn prime_power_decompose(q: &BigInt) -> Option<(u64, u32)> {
    if q < &BigInt::from(2) {
        return None;
    }
    let small_factor = (2u64..)
        .take_while(|d| BigInt::from(*d) * BigInt::from(*d) <= *q && *d < 1_000_000)
        .find(|d| (q % BigInt::from(*d)).is_zero());
    let ell = match small_factor {
        Some(d) => d,
        None => {
            let v = q.to_u64()?;
            return is_prime(v).then_some((v, 1));
        }
    };
    let e = padic_valuation(q, ell).ok()?;
    (Pow::pow(BigInt::from(ell), e) == *q).then_some((ell, e))
}

/// Order of `GL_n(F_q)`, `SL_n(F_q)`, `PSL_n(F_q)` or `Sz(q)`.
///
/// `n` is ignored for `Sz`. Suzuki groups need `q = 2^k` with `k` odd.
pub fn family_order(kind: LieType, n: u32, q: &BigInt) -> Result<BigInt> {
    let (ell, e) = prime_power_decompose(q)
        .ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
    if kind == LieType::Sz {
        if ell != 2 || e % 2 == 0 {
            return Err(Error::Domain(format!("Sz(q) needs q = 2^k with k odd, got {q}")));
        }
        let q2 = q * q;
        return Ok((&q2 + 1u32) * &q2 * (q - 1u32));
    }
    if n == 0 {
        return Err(Error::Domain("matrix degree must be positive".into()));
    }
    let qn = Pow::pow(q, n);
    let gl: BigInt = (0..n).map(|i| &qn - Pow::pow(q, i)).product();
    Ok(match kind {
        LieType::GL => gl,
        LieType::SL => gl / (q - 1u32),
        LieType::PSL => {
            let sl = gl / (q - 1u32);
            let center = BigInt::from(n).gcd(&(q - 1u32));
            sl / center
        }
        LieType::Sz => unreachable!(),
    })
}

/// Order of the automorphism group of the radius-`n` ball in the `d`-regular tree.
pub fn tree_ball_order(d: u64, n: u32) -> Result<BigInt> {
    if d < 3 || n == 0 {
        return Err(Error::Domain(format!("tree ball needs d >= 3 and n >= 1, got d={d}, n={n}")));
    }
    let fact = |m: u64| -> BigInt { (1..=m).map(BigInt::from).product() };
    let mut order = fact(d);
    let branch = fact(d - 1);
    for level in 1..n {
        let sphere = d * (d - 1).pow(level - 1);
        order *= Pow::pow(&branch, sphere);
    }
    Ok(order)
}

/// Legendre's formula for `ν_p(m!)`.
pub fn factorial_valuation(m: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut pk = p;
    while pk <= m {
        total += m / pk;
        match pk.checked_mul(p) {
            Some(next) => pk = next,
            None => break,
        }
    }
    total
}

/// A named family of locally finite or profinite groups, each described by a
/// chain of finite groups indexed by `k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Family {
    /// Directed union of `GL_n(F_q)`, `q = ℓ^{a^k}`.
    GlChain { n: u32, ell: u64, a: u64 },
    /// Directed union of `PSL_n(F_q)`, `q = ℓ^{a^k}`.
    PslChain { n: u32, ell: u64, a: u64 },
    /// Directed union of `Sz(q)`, `q = 2^{a^k}`, `a` odd.
    SzChain { a: u64 },
    /// Vertex stabiliser in `Aut(T_d)`, the inverse limit of ball automorphism groups.
    TreeFix { d: u64 },
    /// Prüfer group `Z(p^∞)` with the discrete topology.
    Prufer { p: u64 },
    /// The `ℓ`-adic integers.
    ZEll { ell: u64 },
    /// The `ℓ`-adic numbers.
    QEll { ell: u64 },
}

/// Topological shape of a family, used to fill in descriptor flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyFlags {
    pub compact: bool,
    pub locally_elliptic: bool,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.tag(), self.params_string())
    }
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::GlChain { .. } => "gl_chain",
            Family::PslChain { .. } => "psl_chain",
            Family::SzChain { .. } => "sz_chain",
            Family::TreeFix { .. } => "tree_fix",
            Family::Prufer { .. } => "prufer",
            Family::ZEll { .. } => "z_ell",
            Family::QEll { .. } => "q_ell",
        }
    }

    /// Parameters as `key=value` pairs joined by commas.
    pub fn params_string(&self) -> String {
        match self {
            Family::GlChain { n, ell, a } | Family::PslChain { n, ell, a } => format!("n={n},ell={ell},a={a}"),
            Family::SzChain { a } => format!("a={a}"),
            Family::TreeFix { d } => format!("d={d}"),
            Family::Prufer { p } => format!("p={p}"),
            Family::ZEll { ell } | Family::QEll { ell } => format!("ell={ell}"),
        }
    }

    /// Builds a family from its tag and a parameter map whose values are
    /// integers or the words `odd`/`even` (resolved to 3 and 2 for `a`).
    ///
    /// `q0` may be given for chains and must equal `ℓ` (the chain `ℓ^{a^k}` at `k = 0`).
    pub fn from_parts(name: &str, params: &BTreeMap<String, String>) -> Result<Self> {
        let allowed: &[&str] = match name {
            "gl_chain" | "psl_chain" => &["n", "ell", "a", "q0"],
            "sz_chain" => &["a", "q0"],
            "tree_fix" => &["d"],
            "prufer" => &["p"],
            "z_ell" | "q_ell" => &["ell", "p"],
            _ => return Err(Error::Descriptor(format!("unknown family {name:?}"))),
        };
        if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::Descriptor(format!("unknown parameter {k:?} for {name}")));
        }
        let int = |key: &str| -> Result<Option<u64>> {
            params
                .get(key)
                .map(|v| match (key, v.as_str()) {
                    ("a", "odd") => Ok(3),
                    ("a", "even") => Ok(2),
                    _ => v
                        .parse::<u64>()
                        .map_err(|_| Error::Descriptor(format!("{name}: parameter {key}={v:?} is not an integer"))),
                })
                .transpose()
        };
        let need = |key: &str| -> Result<u64> {
            int(key)?.ok_or_else(|| Error::Descriptor(format!("{name}: missing parameter {key}")))
        };
        let prime = |key: &str, v: u64| -> Result<u64> {
            if is_prime(v) {
                Ok(v)
            } else {
                Err(Error::Descriptor(format!("{name}: {key}={v} is not prime")))
            }
        };
        let family = match name {
            "gl_chain" | "psl_chain" => {
                let n = int("n")?.unwrap_or(2);
                let ell = prime("ell", need("ell")?)?;
                let a = need("a")?;
                if let Some(q0) = int("q0")? {
                    if q0 != ell {
                        return Err(Error::Descriptor(format!("{name}: q0={q0} must equal ell={ell}")));
                    }
                }
                if a < 2 {
                    return Err(Error::Descriptor(format!("{name}: a must be > 1")));
                }
                if n == 0 || n > 64 {
                    return Err(Error::Descriptor(format!("{name}: n must lie in 1..=64")));
                }
                let n = n as u32;
                if name == "gl_chain" { Family::GlChain { n, ell, a } } else { Family::PslChain { n, ell, a } }
            }
            "sz_chain" => {
                let a = need("a")?;
                if let Some(q0) = int("q0")? {
                    if q0 != 2 {
                        return Err(Error::Descriptor(format!("sz_chain: q0 must be 2, got {q0}")));
                    }
                }
                if a < 3 || a % 2 == 0 {
                    return Err(Error::Descriptor(format!("sz_chain: a must be odd and > 1, got {a}")));
                }
                Family::SzChain { a }
            }
            "tree_fix" => {
                let d = need("d")?;
                if d < 3 {
                    return Err(Error::Descriptor(format!("tree_fix: d must be >= 3, got {d}")));
                }
                Family::TreeFix { d }
            }
            "prufer" => Family::Prufer { p: prime("p", need("p")?)? },
            _ => {
                let ell = match (int("ell")?, int("p")?) {
                    (Some(v), None) | (None, Some(v)) => prime("ell", v)?,
                    _ => return Err(Error::Descriptor(format!("{name}: give exactly one of ell, p"))),
                };
                if name == "z_ell" { Family::ZEll { ell } } else { Family::QEll { ell } }
            }
        };
        Ok(family)
    }

    /// Parses the short form `tag:key=value,key=value` or `tag:value` for
    /// one-parameter families (e.g. `prufer:2`, `tree_fix:3`).
    pub fn parse_short(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = BTreeMap::new();
        for item in rest.split(',').filter(|x| !x.is_empty()) {
            let (k, v) = match item.split_once('=') {
                Some((k, v)) => (k.trim().to_string(), v.trim().to_string()),
                None => {
                    let key = match name {
                        "prufer" => "p",
                        "z_ell" | "q_ell" => "ell",
                        "tree_fix" => "d",
                        "sz_chain" => "a",
                        _ => return Err(Error::Descriptor(format!("{name}: expected key=value, got {item:?}"))),
                    };
                    (key.to_string(), item.trim().to_string())
                }
            };
            if params.insert(k.clone(), v).is_some() {
                return Err(Error::Descriptor(format!("{name}: parameter {k} given twice")));
            }
        }
        Self::from_parts(name, &params)
    }

    pub fn flags(&self) -> FamilyFlags {
        match self {
            Family::GlChain { .. } | Family::PslChain { .. } | Family::SzChain { .. } | Family::Prufer { .. } => {
                FamilyFlags { compact: false, locally_elliptic: true }
            }
            Family::TreeFix { .. } | Family::ZEll { .. } => FamilyFlags { compact: true, locally_elliptic: true },
            Family::QEll { .. } => FamilyFlags { compact: false, locally_elliptic: true },
        }
    }

    /// `q_k = ℓ^{a^k}` for the field chains.
    pub fn chain_field_size(&self, k: u32) -> Option<BigInt> {
        let (ell, a) = match self {
            Family::GlChain { ell, a, .. } | Family::PslChain { ell, a, .. } => (*ell, *a),
            Family::SzChain { a } => (2, *a),
            _ => return None,
        };
        let e = a.checked_pow(k)?;
        Some(Pow::pow(BigInt::from(ell), BigInt::from(e).to_biguint()?))
    }

    /// Order of the `k`-th finite group in the defining chain (`k ≥ 1`):
    /// the chain member for the field chains, the ball quotient for `tree_fix`,
    /// and `p^k` (resp. `ℓ^k`) for the Prüfer and `ℓ`-adic families.
    pub fn member_order(&self, k: u32) -> Result<BigInt> {
        if k == 0 {
            return Err(Error::Domain("chain indices start at 1".into()));
        }
        let too_big = || Error::Budget(format!("{self}: chain index {k} too large to evaluate"));
        match self {
            Family::GlChain { n, .. } => family_order(LieType::GL, *n, &self.chain_field_size(k).ok_or_else(too_big)?),
            Family::PslChain { n, .. } => family_order(LieType::PSL, *n, &self.chain_field_size(k).ok_or_else(too_big)?),
            Family::SzChain { .. } => family_order(LieType::Sz, 0, &self.chain_field_size(k).ok_or_else(too_big)?),
            Family::TreeFix { d } => tree_ball_order(*d, k),
            Family::Prufer { p: ell } | Family::ZEll { ell } | Family::QEll { ell } => {
                Ok(Pow::pow(BigInt::from(*ell), k))
            }
        }
    }

    /// Exact exponent data for the family at prime `p`.
    ///
    /// Analytic cases are certified: the defining prime, the 2-adic chain
    /// formulas (lifting the exponent), residue orbits mod `p` that never hit
    /// zero, and the ball recursion. Otherwise the result is the maximum of the
    /// first `depth` members, flagged as a lower bound.
    pub fn exponent(&self, p: u64, depth: u32) -> Result<PExponent> {
        require_prime(p)?;
        match self {
            Family::Prufer { p: ell } | Family::ZEll { ell } | Family::QEll { ell } => {
                Ok(if *ell == p { PExponent::diverges() } else { PExponent::certified(0) })
            }
            Family::TreeFix { d } => {
                let branch_val = factorial_valuation(d - 1, p);
                Ok(if branch_val > 0 {
                    PExponent::diverges()
                } else {
                    PExponent::certified(factorial_valuation(*d, p))
                })
            }
            Family::GlChain { n, ell, a } | Family::PslChain { n, ell, a } => {
                let kind = if matches!(self, Family::GlChain { .. }) { LieType::GL } else { LieType::PSL };
                self.lie_chain_exponent(kind, *n, *ell, *a, p, depth)
            }
            Family::SzChain { a } => self.lie_chain_exponent(LieType::Sz, 0, 2, *a, p, depth),
        }
    }

    fn lie_chain_exponent(&self, kind: LieType, n: u32, ell: u64, a: u64, p: u64, depth: u32) -> Result<PExponent> {
        // The unipotent radical contributes q^{n(n-1)/2} (or q^2 for Sz).
        let has_q_factor = kind == LieType::Sz || n >= 2;
        if p == ell {
            return Ok(if has_q_factor { PExponent::diverges() } else { PExponent::certified(0) });
        }
        if p == 2 {
            return two_adic_chain_exponent(kind, n, ell, a);
        }
        if residue_orbit_avoids_zero(kind, n, ell, a, p) {
            return Ok(PExponent::certified(0));
        }
        self.sampled_exponent(p, depth)
    }

    /// Maximum of `ν_p` over the first `depth` members; not certified.
    pub fn sampled_exponent(&self, p: u64, depth: u32) -> Result<PExponent> {
        let mut best = 0u64;
        for k in 1..=depth.max(1) {
            let order = self.member_order(k)?;
            best = best.max(padic_valuation(&order, p)? as u64);
        }
        Ok(PExponent::lower_bound(best))
    }
}

/// `ν_2` of the chain orders for odd `ℓ`. With `a` odd every `q_k` agrees with
/// `ℓ` in `ν_2(q - 1)` and `ν_2(q + 1)`, so the exponent is the one of `q = ℓ`.
/// With `a` even `ν_2(q_k^2 - 1)` grows with `k`.
fn two_adic_chain_exponent(kind: LieType, n: u32, ell: u64, a: u64) -> Result<PExponent> {
    if a % 2 == 0 {
        // GL and PSL (n >= 2) contain the factor q^2 - 1; Sz never has odd ℓ.
        return Ok(if kind == LieType::GL || n >= 2 { PExponent::diverges() } else { PExponent::certified(0) });
    }
    let q = BigInt::from(ell);
    let nu = |e: u64| -> Result<u64> { Ok(lte_nu2(&q, e)? as u64) };
    let gl: u64 = (1..=n as u64).map(nu).sum::<Result<u64>>()?;
    let value = match kind {
        LieType::GL => gl,
        LieType::SL => gl - nu(1)?,
        LieType::PSL => {
            let center = padic_valuation_u64(n as u64, 2).unwrap_or(0).min(nu(1)? as u32) as u64;
            gl - nu(1)? - center
        }
        LieType::Sz => unreachable!("Suzuki chains have ℓ = 2"),
    };
    Ok(PExponent::certified(value))
}

/// True when no chain member has order divisible by the odd prime `p ≠ ℓ`:
/// the residues `q_k mod p = ℓ^{a^k mod (p-1)} mod p` run through an
/// eventually periodic orbit, and the order is a polynomial in `q`.
fn residue_orbit_avoids_zero(kind: LieType, n: u32, ell: u64, a: u64, p: u64) -> bool {
    let m = p - 1;
    let pow_mod = |b: u64, mut e: u64, md: u64| -> u64 {
        let mut r = 1 % md;
        let mut b = b % md;
        while e > 0 {
            if e & 1 == 1 {
                r = (r as u128 * b as u128 % md as u128) as u64;
            }
            b = (b as u128 * b as u128 % md as u128) as u64;
            e >>= 1;
        }
        r
    };
    // a^k mod (p-1) for k >= 1 is eventually periodic; collect its values.
    let mut seen = std::collections::HashSet::new();
    let mut e = a % m;
    while seen.insert(e) {
        e = (e as u128 * a as u128 % m as u128) as u64;
    }
    seen.into_iter().all(|exp| {
        // ℓ^{a^k} mod p; the exponent class mod (p-1) suffices since p ∤ ℓ.
        let exp = if exp == 0 { m } else { exp };
        let q = pow_mod(ell, exp, p);
        let order_mod_p: u64 = match kind {
            LieType::Sz => {
                let q2 = q * q % p;
                (q2 + 1) % p * q2 % p * ((q + p - 1) % p) % p
            }
            // |SL_n| up to powers of q: ∏_{i=2}^{n} (q^i - 1); GL adds (q - 1).
            // PSL divides SL, so SL avoiding p suffices.
            LieType::GL | LieType::SL | LieType::PSL => {
                let start = if kind == LieType::GL { 1 } else { 2 };
                (start..=n as u64).fold(1u64, |acc, i| acc * ((pow_mod(q, i, p) + p - 1) % p) % p)
            }
        };
        order_mod_p != 0
    })
}

/// Convenience: the chain orders and their `p`-adic valuations for `k = 1..=depth`.
pub fn chain_valuations(family: &Family, p: u64, depth: u32) -> Result<Vec<(BigInt, u32)>> {
    (1..=depth)
        .map(|k| {
            let order = family.member_order(k)?;
            let v = padic_valuation(&order, p)?;
            Ok((order, v))
        })
        .collect()
}
