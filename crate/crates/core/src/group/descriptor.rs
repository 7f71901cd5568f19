//! Symbolic descriptors for totally disconnected groups.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::exponent::PExponent;
use super::family::{factorial_valuation, tree_ball_order, Family, FamilyFlags, LieType};
use super::finite::{FiniteGroup, TableDocument};
use crate::error::{Error, Result};
use crate::valuation::{padic_valuation, padic_valuation_u64, require_prime};

/// Orders of the finite quotients of a profinite group, `k = 1, 2, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OrderStream {
    /// The complete list of quotient orders.
    Explicit(Vec<u64>),
    Formula {
        formula: StreamFormula,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        stabilization: Vec<Stabilization>,
    },
}

/// Closed forms for quotient orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum StreamFormula {
    /// `base^k`.
    Power { base: u64 },
    /// `|Aut(B_k)|` in the `d`-regular tree.
    TreeBall { d: u64 },
    /// `|G(F_q)|` with `q = ℓ^{a^k}`.
    Lie { group: LieTypeName, #[serde(default = "two")] n: u32, ell: u64, a: u64 },
    /// Orders listed for the first few indices only; needs a stabilization declaration.
    Sampled { orders: Vec<u64> },
}

fn two() -> u32 {
    2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum LieTypeName {
    Gl,
    Sl,
    Psl,
    Sz,
}

impl From<LieTypeName> for LieType {
    fn from(t: LieTypeName) -> Self {
        match t {
            LieTypeName::Gl => LieType::GL,
            LieTypeName::Sl => LieType::SL,
            LieTypeName::Psl => LieType::PSL,
            LieTypeName::Sz => LieType::Sz,
        }
    }
}

/// A declared bound on `sup_k ν_p(order_k)` at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stabilization {
    pub prime: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub diverges: bool,
}

impl OrderStream {
    /// Order of the `k`-th quotient, `k ≥ 1`. `None` past the end of a finite list.
    pub fn order(&self, k: u32) -> Result<Option<BigInt>> {
        if k == 0 {
            return Err(Error::Domain("stream indices start at 1".into()));
        }
        let idx = (k - 1) as usize;
        Ok(match self {
            OrderStream::Explicit(list) => list.get(idx).map(|&x| BigInt::from(x)),
            OrderStream::Formula { formula, .. } => match formula {
                StreamFormula::Power { base } => Some(num_traits::Pow::pow(BigInt::from(*base), k)),
                StreamFormula::TreeBall { d } => Some(tree_ball_order(*d, k)?),
                StreamFormula::Lie { group, n, ell, a } => Some(lie_family(*group, *n, *ell, *a)?.member_order(k)?),
                StreamFormula::Sampled { orders } => orders.get(idx).map(|&x| BigInt::from(x)),
            },
        })
    }

    /// Whether each listed order divides the next, as for a tower of quotients.
    pub fn is_tower(&self) -> bool {
        match self {
            OrderStream::Explicit(list) => list.windows(2).all(|w| w[1] % w[0] == 0),
            OrderStream::Formula { formula: StreamFormula::Sampled { orders }, .. } => {
                orders.windows(2).all(|w| w[1] % w[0] == 0)
            }
            OrderStream::Formula { .. } => true,
        }
    }

    fn validate(&self) -> Result<()> {
        let check_list = |list: &[u64]| {
            if list.is_empty() || list.contains(&0) {
                Err(Error::Descriptor("order lists must be nonempty and positive".into()))
            } else {
                Ok(())
            }
        };
        match self {
            OrderStream::Explicit(list) => check_list(list),
            OrderStream::Formula { formula, stabilization } => {
                for s in stabilization {
                    require_prime(s.prime).map_err(|e| Error::Descriptor(e.to_string()))?;
                    if s.diverges == s.exponent_bound.is_some() {
                        return Err(Error::Descriptor(format!(
                            "stabilization at {} must give exactly one of exponent_bound, diverges",
                            s.prime
                        )));
                    }
                }
                match formula {
                    StreamFormula::Power { base } if *base < 1 => {
                        Err(Error::Descriptor("power stream needs base >= 1".into()))
                    }
                    StreamFormula::TreeBall { d } if *d < 3 => Err(Error::Descriptor("tree ball needs d >= 3".into())),
                    StreamFormula::Lie { group, n, ell, a } => lie_family(*group, *n, *ell, *a).map(|_| ()),
                    StreamFormula::Sampled { orders } => check_list(orders),
                    _ => Ok(()),
                }
            }
        }
    }

    fn exponent(&self, p: u64, depth: u32) -> Result<PExponent> {
        match self {
            OrderStream::Explicit(list) => {
                let parts = list
                    .iter()
                    .map(|&x| Ok(PExponent::certified(padic_valuation_u64(x, p)? as u64)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(PExponent::sup(parts, true))
            }
            OrderStream::Formula { formula, stabilization } => {
                let analytic = match formula {
                    StreamFormula::Power { base } => Some(if *base % p == 0 {
                        PExponent::diverges()
                    } else {
                        PExponent::certified(0)
                    }),
                    StreamFormula::TreeBall { d } => Some(Family::TreeFix { d: *d }.exponent(p, depth)?),
                    StreamFormula::Lie { group, n, ell, a } => {
                        Some(lie_family(*group, *n, *ell, *a)?.exponent(p, depth)?)
                    }
                    StreamFormula::Sampled { .. } => None,
                };
                if let Some(e) = analytic.filter(|e| e.certified) {
                    return Ok(e);
                }
                let mut sampled = 0u64;
                for k in 1..=depth.max(1) {
                    match self.order(k)? {
                        Some(order) => sampled = sampled.max(padic_valuation(&order, p)? as u64),
                        None => break,
                    }
                }
                match stabilization.iter().find(|s| s.prime == p) {
                    Some(s) if s.diverges => Ok(PExponent::diverges()),
                    Some(s) => {
                        let bound = s.exponent_bound.expect("validated");
                        if sampled > bound {
                            Err(Error::Precondition(format!(
                                "declared exponent bound {bound} at {p} is exceeded by the stream (exponent {sampled})"
                            )))
                        } else {
                            Ok(PExponent::certified(bound))
                        }
                    }
                    None => Ok(PExponent::lower_bound(sampled)),
                }
            }
        }
    }
}

fn lie_family(group: LieTypeName, n: u32, ell: u64, a: u64) -> Result<Family> {
    let mut params = BTreeMap::new();
    params.insert("a".to_string(), a.to_string());
    let name = match group {
        LieTypeName::Gl => "gl_chain",
        LieTypeName::Psl => "psl_chain",
        LieTypeName::Sz => {
            if ell != 2 {
                return Err(Error::Descriptor("Suzuki streams need ell = 2".into()));
            }
            "sz_chain"
        }
        LieTypeName::Sl => return Err(Error::Descriptor("SL streams are not supported; use GL or PSL".into())),
    };
    if name != "sz_chain" {
        params.insert("n".to_string(), n.to_string());
        params.insert("ell".to_string(), ell.to_string());
    }
    Family::from_parts(name, &params)
}

/// The node types of the descriptor algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupKind {
    /// A finite group given by its order, a standard name, or a table.
    Finite { order: u64, source: FiniteSource },
    Cyclic { n: u64 },
    Symmetric { n: u64 },
    Profinite { quotients: OrderStream },
    DirectedUnion { members: Vec<GroupDescriptor>, open_members: bool },
    Extension { kernel: Box<GroupDescriptor>, quotient: Box<GroupDescriptor> },
    Product { factors: Vec<GroupDescriptor> },
    Family(Family),
}

/// How a finite node was specified (kept for round-tripping).
#[derive(Clone, Debug, PartialEq)]
pub enum FiniteSource {
    Order,
    Name(String),
    Table(TableDocument),
}

impl PartialEq for TableDocument {
    fn eq(&self, other: &Self) -> bool {
        serde_json::to_value(self).ok() == serde_json::to_value(other).ok()
    }
}

/// A group descriptor: a node plus optional topological flags. Unset flags
/// are derived from the node where the structure determines them.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupDescriptor {
    pub kind: GroupKind,
    pub compact: Option<bool>,
    pub locally_elliptic: Option<bool>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawKind {
    Finite {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<TableDocument>,
    },
    Cyclic { n: u64 },
    Symmetric { n: u64 },
    Profinite { quotients: OrderStream },
    DirectedUnion { members: Vec<GroupDescriptor>, #[serde(default)] open_members: bool },
    Extension { kernel: Box<GroupDescriptor>, quotient: Box<GroupDescriptor> },
    Product { factors: Vec<GroupDescriptor> },
    Family {
        name: String,
        #[serde(default)]
        params: BTreeMap<String, ParamValue>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ParamValue {
    Int(u64),
    Text(String),
}

impl RawKind {
    fn resolve(self) -> Result<GroupKind> {
        Ok(match self {
            RawKind::Finite { order, name, table } => match (order, name, table) {
                (Some(order), None, None) => {
                    if order == 0 {
                        return Err(Error::Descriptor("finite order must be positive".into()));
                    }
                    GroupKind::Finite { order, source: FiniteSource::Order }
                }
                (None, Some(name), None) => {
                    let g = FiniteGroup::from_name(&name).map_err(|e| Error::Descriptor(e.to_string()))?;
                    GroupKind::Finite { order: g.order() as u64, source: FiniteSource::Name(name) }
                }
                (None, None, Some(table)) => {
                    let g = FiniteGroup::from_document(&table).map_err(|e| Error::Descriptor(e.to_string()))?;
                    GroupKind::Finite { order: g.order() as u64, source: FiniteSource::Table(table) }
                }
                _ => {
                    return Err(Error::Descriptor(
                        "a finite group needs exactly one of order, name, table".into(),
                    ))
                }
            },
            RawKind::Cyclic { n } => GroupKind::Cyclic { n },
            RawKind::Symmetric { n } => GroupKind::Symmetric { n },
            RawKind::Profinite { quotients } => GroupKind::Profinite { quotients },
            RawKind::DirectedUnion { members, open_members } => GroupKind::DirectedUnion { members, open_members },
            RawKind::Extension { kernel, quotient } => GroupKind::Extension { kernel, quotient },
            RawKind::Product { factors } => GroupKind::Product { factors },
            RawKind::Family { name, params } => {
                let params = params
                    .into_iter()
                    .map(|(k, v)| {
                        let v = match v {
                            ParamValue::Int(i) => i.to_string(),
                            ParamValue::Text(s) => s,
                        };
                        (k, v)
                    })
                    .collect();
                GroupKind::Family(Family::from_parts(&name, &params)?)
            }
        })
    }

    fn from_kind(kind: &GroupKind) -> RawKind {
        match kind.clone() {
            GroupKind::Finite { order, source } => match source {
                FiniteSource::Order => RawKind::Finite { order: Some(order), name: None, table: None },
                FiniteSource::Name(name) => RawKind::Finite { order: None, name: Some(name), table: None },
                FiniteSource::Table(table) => RawKind::Finite { order: None, name: None, table: Some(table) },
            },
            GroupKind::Cyclic { n } => RawKind::Cyclic { n },
            GroupKind::Symmetric { n } => RawKind::Symmetric { n },
            GroupKind::Profinite { quotients } => RawKind::Profinite { quotients },
            GroupKind::DirectedUnion { members, open_members } => RawKind::DirectedUnion { members, open_members },
            GroupKind::Extension { kernel, quotient } => RawKind::Extension { kernel, quotient },
            GroupKind::Product { factors } => RawKind::Product { factors },
            GroupKind::Family(f) => {
                let params = f
                    .params_string()
                    .split(',')
                    .filter_map(|kv| kv.split_once('='))
                    .map(|(k, v)| {
                        let v = v.parse::<u64>().map(ParamValue::Int).unwrap_or_else(|_| ParamValue::Text(v.into()));
                        (k.to_string(), v)
                    })
                    .collect();
                RawKind::Family { name: f.tag().to_string(), params }
            }
        }
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut value = serde_json::to_value(RawKind::from_kind(&self.kind)).map_err(serde::ser::Error::custom)?;
        if let Value::Object(map) = &mut value {
            if let Some(c) = self.compact {
                map.insert("compact".into(), Value::Bool(c));
            }
            if let Some(l) = self.locally_elliptic {
                map.insert("locally_elliptic".into(), Value::Bool(l));
            }
        }
        value.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let mut value = Value::deserialize(d)?;
        let map = value
            .as_object_mut()
            .ok_or_else(|| D::Error::custom("a group descriptor must be an object"))?;
        let flag = |map: &mut serde_json::Map<String, Value>, key: &str| -> std::result::Result<Option<bool>, D::Error> {
            match map.remove(key) {
                None | Some(Value::Null) => Ok(None),
                Some(Value::Bool(b)) => Ok(Some(b)),
                Some(other) => Err(D::Error::custom(format!("{key} must be a boolean, got {other}"))),
            }
        };
        let compact = flag(map, "compact")?;
        let locally_elliptic = flag(map, "locally_elliptic")?;
        let raw: RawKind = serde_json::from_value(value).map_err(D::Error::custom)?;
        let kind = raw.resolve().map_err(D::Error::custom)?;
        let desc = GroupDescriptor { kind, compact, locally_elliptic };
        desc.validate().map_err(D::Error::custom)?;
        Ok(desc)
    }
}

fn and3(values: impl IntoIterator<Item = Option<bool>>) -> Option<bool> {
    let mut all_true = true;
    for v in values {
        match v {
            Some(false) => return Some(false),
            None => all_true = false,
            Some(true) => {}
        }
    }
    all_true.then_some(true)
}

impl GroupDescriptor {
    pub fn new(kind: GroupKind) -> Self {
        GroupDescriptor { kind, compact: None, locally_elliptic: None }
    }

    pub fn finite_order(order: u64) -> Self {
        Self::new(GroupKind::Finite { order, source: FiniteSource::Order })
    }

    pub fn finite_group(name: &str) -> Result<Self> {
        let g = FiniteGroup::from_name(name)?;
        Ok(Self::new(GroupKind::Finite { order: g.order() as u64, source: FiniteSource::Name(name.into()) }))
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(GroupKind::Cyclic { n })
    }

    pub fn symmetric(n: u64) -> Self {
        Self::new(GroupKind::Symmetric { n })
    }

    pub fn profinite(quotients: OrderStream) -> Self {
        Self::new(GroupKind::Profinite { quotients })
    }

    pub fn directed_union(members: Vec<GroupDescriptor>, open_members: bool) -> Self {
        Self::new(GroupKind::DirectedUnion { members, open_members })
    }

    pub fn extension(kernel: GroupDescriptor, quotient: GroupDescriptor) -> Self {
        Self::new(GroupKind::Extension { kernel: Box::new(kernel), quotient: Box::new(quotient) })
    }

    pub fn product(factors: Vec<GroupDescriptor>) -> Self {
        Self::new(GroupKind::Product { factors })
    }

    pub fn family(f: Family) -> Self {
        Self::new(GroupKind::Family(f))
    }

    pub fn with_flags(mut self, compact: Option<bool>, locally_elliptic: Option<bool>) -> Self {
        self.compact = compact;
        self.locally_elliptic = locally_elliptic;
        self
    }

    /// Parses a JSON document, a family short form (`prufer:2`,
    /// `psl_chain:ell=3,a=odd`), or a finite group name (`S3`, `Z/12`).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            return serde_json::from_str(t).map_err(|e| Error::Descriptor(e.to_string()));
        }
        let head = t.split(':').next().unwrap_or("");
        if ["gl_chain", "psl_chain", "sz_chain", "tree_fix", "prufer", "z_ell", "q_ell"].contains(&head) {
            return Ok(Self::family(Family::parse_short(t)?));
        }
        Self::finite_group(t).map_err(|e| Error::Descriptor(e.to_string()))
    }

    /// Checks the descriptor invariants recursively.
    pub fn validate(&self) -> Result<()> {
        let structural = self.structural_flags();
        for (name, declared, derived) in [
            ("compact", self.compact, structural.compact),
            ("locally_elliptic", self.locally_elliptic, structural.locally_elliptic),
        ] {
            if let (Some(d), Some(s)) = (declared, derived) {
                if d != s {
                    return Err(Error::Descriptor(format!("{name}={d} contradicts the structure of the group")));
                }
            }
        }
        match &self.kind {
            GroupKind::Finite { order: 0, .. } | GroupKind::Cyclic { n: 0 } | GroupKind::Symmetric { n: 0 } => {
                Err(Error::Descriptor("group orders must be positive".into()))
            }
            GroupKind::Profinite { quotients } => quotients.validate(),
            GroupKind::DirectedUnion { members, .. } => {
                if members.is_empty() {
                    return Err(Error::Descriptor("a directed union needs at least one member".into()));
                }
                members.iter().try_for_each(GroupDescriptor::validate)
            }
            GroupKind::Extension { kernel, quotient } => {
                kernel.validate()?;
                quotient.validate()
            }
            GroupKind::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::Descriptor("a product needs at least one factor".into()));
                }
                factors.iter().try_for_each(GroupDescriptor::validate)
            }
            _ => Ok(()),
        }
    }

    /// Flags forced by the node type alone (declared flags ignored at this level).
    fn structural_flags(&self) -> Flags {
        match &self.kind {
            GroupKind::Finite { .. } | GroupKind::Cyclic { .. } | GroupKind::Symmetric { .. } => {
                Flags { compact: Some(true), locally_elliptic: Some(true) }
            }
            GroupKind::Profinite { .. } => Flags { compact: Some(true), locally_elliptic: Some(true) },
            GroupKind::Family(f) => {
                let FamilyFlags { compact, locally_elliptic } = f.flags();
                Flags { compact: Some(compact), locally_elliptic: Some(locally_elliptic) }
            }
            // The finite member list may stand for an infinite union, so
            // compactness is left to the caller.
            GroupKind::DirectedUnion { members, .. } => Flags {
                compact: None,
                locally_elliptic: and3(members.iter().map(GroupDescriptor::locally_elliptic_flag)),
            },
            GroupKind::Extension { kernel, quotient } => Flags {
                compact: and3([kernel.compact_flag(), quotient.compact_flag()]),
                locally_elliptic: and3([kernel.locally_elliptic_flag(), quotient.locally_elliptic_flag()]),
            },
            GroupKind::Product { factors } => Flags {
                compact: and3(factors.iter().map(GroupDescriptor::compact_flag)),
                locally_elliptic: and3(factors.iter().map(GroupDescriptor::locally_elliptic_flag)),
            },
        }
    }

    /// Resolved compactness: declared, else derived, else unknown.
    pub fn compact_flag(&self) -> Option<bool> {
        self.compact.or(self.structural_flags().compact)
    }

    /// Resolved local ellipticity: declared, else derived, else unknown.
    pub fn locally_elliptic_flag(&self) -> Option<bool> {
        self.locally_elliptic.or(self.structural_flags().locally_elliptic)
    }

    /// `sup ν_p` over the descriptor's finite order data.
    ///
    /// Finite nodes give `ν_p(|G|)`; profinite streams and directed unions the
    /// sup over their quotients or members; extensions and products the sum of
    /// their parts; families their analytic exponent. Values that rest on
    /// sampling the first `depth` terms come back uncertified.
    pub fn p_exponent(&self, p: u64, depth: u32) -> Result<PExponent> {
        require_prime(p)?;
        match &self.kind {
            GroupKind::Finite { order, .. } | GroupKind::Cyclic { n: order } => {
                Ok(PExponent::certified(padic_valuation_u64(*order, p)? as u64))
            }
            GroupKind::Symmetric { n } => Ok(PExponent::certified(factorial_valuation(*n, p))),
            GroupKind::Profinite { quotients } => quotients.exponent(p, depth),
            GroupKind::DirectedUnion { members, open_members } => {
                let parts = members.iter().map(|m| m.p_exponent(p, depth)).collect::<Result<Vec<_>>>()?;
                Ok(PExponent::sup(parts, *open_members))
            }
            GroupKind::Extension { kernel, quotient } => {
                Ok(kernel.p_exponent(p, depth)?.sum(quotient.p_exponent(p, depth)?))
            }
            GroupKind::Product { factors } => factors
                .iter()
                .try_fold(PExponent::certified(0), |acc, f| Ok(acc.sum(f.p_exponent(p, depth)?))),
            GroupKind::Family(f) => f.exponent(p, depth),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptors serialise")
    }
}

#[derive(Clone, Copy)]
struct Flags {
    compact: Option<bool>,
    locally_elliptic: Option<bool>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::exponent::ExponentValue;

    #[test]
    fn spec_examples() {
        let c12 = GroupDescriptor::cyclic(12);
        assert_eq!(c12.p_exponent(2, 5).unwrap(), PExponent::certified(2));
        let z3 = GroupDescriptor::profinite(OrderStream::Formula {
            formula: StreamFormula::Power { base: 3 },
            stabilization: vec![],
        });
        assert_eq!(z3.p_exponent(2, 5).unwrap(), PExponent::certified(0));
        assert!(z3.p_exponent(3, 5).unwrap().is_certified_divergent());
        let tree = GroupDescriptor::family(Family::TreeFix { d: 3 });
        assert_eq!(tree.p_exponent(2, 5).unwrap().value, ExponentValue::Diverges);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"kind":"extension",
            "kernel":{"kind":"profinite","quotients":{"formula":{"formula":{"type":"power","base":3}}}},
            "quotient":{"kind":"finite","order":48}}"#;
        let d: GroupDescriptor = serde_json::from_str(text).unwrap();
        assert_eq!(d.p_exponent(2, 4).unwrap(), PExponent::certified(4));
        assert_eq!(d.compact_flag(), Some(true));
        let again: GroupDescriptor = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(again, d);
        let fam = GroupDescriptor::parse(r#"{"kind":"family","name":"psl_chain","params":{"ell":3,"a":"odd"}}"#).unwrap();
        assert_eq!(fam.p_exponent(2, 3).unwrap(), PExponent::certified(2));
        let back: GroupDescriptor = serde_json::from_str(&fam.to_json()).unwrap();
        assert_eq!(back, fam);
    }

    #[test]
    fn rejects_bad_documents() {
        for bad in [
            r#"{"kind":"finite"}"#,
            r#"{"kind":"finite","order":6,"extra":1}"#,
            r#"{"kind":"finite","order":6,"compact":false}"#,
            r#"{"kind":"profinite","quotients":{"explicit":[]}}"#,
            r#"{"kind":"directed_union","members":[]}"#,
            r#"{"kind":"family","name":"prufer","params":{"p":4}}"#,
            r#"{"kind":"wat"}"#,
        ] {
            assert!(GroupDescriptor::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn directed_union_certification_follows_openness() {
        let members = vec![GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(4), GroupDescriptor::cyclic(8)];
        let open = GroupDescriptor::directed_union(members.clone(), true);
        let closed = GroupDescriptor::directed_union(members, false);
        assert_eq!(open.p_exponent(2, 1).unwrap(), PExponent::certified(3));
        assert_eq!(closed.p_exponent(2, 1).unwrap(), PExponent::lower_bound(3));
    }

    #[test]
    fn stabilization_declarations() {
        let stream = |stab: Vec<Stabilization>| {
            GroupDescriptor::profinite(OrderStream::Formula {
                formula: StreamFormula::Sampled { orders: vec![2, 4, 8] },
                stabilization: stab,
            })
        };
        assert_eq!(stream(vec![]).p_exponent(2, 10).unwrap(), PExponent::lower_bound(3));
        let ok = stream(vec![Stabilization { prime: 2, exponent_bound: Some(3), diverges: false }]);
        assert_eq!(ok.p_exponent(2, 10).unwrap(), PExponent::certified(3));
        let bad = stream(vec![Stabilization { prime: 2, exponent_bound: Some(2), diverges: false }]);
        assert!(matches!(bad.p_exponent(2, 10), Err(Error::Precondition(_))));
        assert!(OrderStream::Explicit(vec![2, 4, 8]).is_tower());
        assert!(!OrderStream::Explicit(vec![2, 3]).is_tower());
    }

    #[test]
    fn flags_derive_through_extensions() {
        let prufer = GroupDescriptor::family(Family::Prufer { p: 2 });
        let ext = GroupDescriptor::extension(GroupDescriptor::cyclic(3), prufer);
        assert_eq!(ext.compact_flag(), Some(false));
        assert_eq!(ext.locally_elliptic_flag(), Some(true));
        let union = GroupDescriptor::directed_union(vec![GroupDescriptor::cyclic(2)], true);
        assert_eq!(union.compact_flag(), None);
        assert_eq!(union.locally_elliptic_flag(), Some(true));
        assert_eq!(union.with_flags(Some(false), None).compact_flag(), Some(false));
    }
}
