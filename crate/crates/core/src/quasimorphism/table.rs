//! Quasimorphisms on finite groups given by value tables.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::prufer::{project_to_prufer, standard_section, truncation_element, PruferElement};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rational::Rational;
use crate::valuation::{require_prime, AbsValue};

/// Largest `p^N` for which `ι` on `Z/p^N` is materialised as a table.
pub const TABLE_LIMIT: u64 = 1 << 16;

/// A map `f : G → Q` read `p`-adically.
#[derive(Clone, Debug, PartialEq)]
pub struct QmTable {
    group: Arc<FiniteGroup>,
    p: u64,
    values: Vec<Rational>,
}

/// `D(f) = max |f(xy) - f(x) - f(y)|_p` and a pair attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Defect {
    pub norm: AbsValue,
    pub witness: Option<(usize, usize)>,
}

/// On-disk form: a group name or table plus values listed in element order
/// or keyed by element name.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QmDocument {
    pub group: GroupSpec,
    pub p: u64,
    pub values: Values,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Table(crate::group::finite::TableDocument),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Values {
    List(Vec<Rational>),
    ByName(BTreeMap<String, Rational>),
}

impl QmTable {
    pub fn new(group: Arc<FiniteGroup>, p: u64, values: Vec<Rational>) -> Result<Self> {
        require_prime(p)?;
        if values.len() != group.order() {
            return Err(Error::Input(format!(
                "a table on a group of order {} needs {} values, got {}",
                group.order(),
                group.order(),
                values.len()
            )));
        }
        Ok(QmTable { group, p, values })
    }

    pub fn from_fn(group: Arc<FiniteGroup>, p: u64, f: impl FnMut(usize) -> Rational) -> Result<Self> {
        let values = group.elements().map(f).collect();
        Self::new(group, p, values)
    }

    /// `ι` restricted to `Z/p^N`, element `k` mapped to `k / p^N`.
    pub fn standard_section(p: u64, depth: u32) -> Result<Self> {
        require_prime(p)?;
        let m = p
            .checked_pow(depth)
            .filter(|&m| m <= TABLE_LIMIT)
            .ok_or_else(|| Error::Budget(format!("Z/{p}^{depth} is too large to tabulate")))?;
        let group = Arc::new(FiniteGroup::cyclic(m as usize));
        Self::from_fn(group, p, |k| standard_section(&truncation_element(p, depth, k as u64).expect("prime checked")))
    }

    pub fn from_document(doc: &QmDocument) -> Result<Self> {
        let group = match &doc.group {
            GroupSpec::Name(name) => FiniteGroup::from_name(name)?,
            GroupSpec::Table(t) => FiniteGroup::from_document(t)?,
        };
        let values = match &doc.values {
            Values::List(v) => v.clone(),
            Values::ByName(map) => {
                if let Some(extra) = map.keys().find(|k| !group.names().contains(k)) {
                    return Err(Error::Input(format!("no element named {extra:?}")));
                }
                group
                    .names()
                    .iter()
                    .map(|n| map.get(n).cloned().ok_or_else(|| Error::Input(format!("missing value for {n:?}"))))
                    .collect::<Result<_>>()?
            }
        };
        Self::new(Arc::new(group), doc.p, values)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, g: usize) -> &Rational {
        &self.values[g]
    }

    pub fn is_normalized(&self) -> bool {
        self.values[self.group.identity()].is_zero()
    }

    pub fn sup_norm(&self) -> AbsValue {
        self.values.iter().map(|v| self.abs(v)).max().unwrap_or(AbsValue::Zero)
    }

    fn abs(&self, v: &Rational) -> AbsValue {
        AbsValue::of(v, self.p).expect("prime checked on construction")
    }

    /// Exhaustive over all ordered pairs.
    pub fn defect(&self) -> Defect {
        let g = &self.group;
        let mut best = Defect { norm: AbsValue::Zero, witness: None };
        for x in g.elements() {
            for y in g.elements() {
                let d = &(&self.values[g.mul(x, y)] - &self.values[x]) - &self.values[y];
                let norm = self.abs(&d);
                if norm > best.norm {
                    best = Defect { norm, witness: Some((x, y)) };
                }
            }
        }
        best
    }

    /// `‖f - h‖_∞`.
    pub fn distance(&self, other: &QmTable) -> Result<AbsValue> {
        if self.group != other.group || self.p != other.p {
            return Err(Error::Input("tables live on different groups or primes".into()));
        }
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| self.abs(&(a - b))).max().unwrap_or(AbsValue::Zero))
    }
}

/// Result of projecting a defect-`≤ 1` quasimorphism to the defect group.
#[derive(Clone, Debug, PartialEq)]
pub struct HomCheck {
    pub projected: Vec<PruferElement>,
    /// A pair where `πf(xy) ≠ πf(x) + πf(y)`, if any.
    pub failure: Option<(usize, usize)>,
    /// `‖ι π f - f‖_∞`.
    pub section_distance: AbsValue,
}

impl HomCheck {
    pub fn is_homomorphism(&self) -> bool {
        self.failure.is_none()
    }

    pub fn passes(&self) -> bool {
        self.is_homomorphism() && self.section_distance <= AbsValue::ONE
    }
}

/// Projects `f` to `π∘f : G → Z(p^∞)` and checks it is a homomorphism with
/// `‖ιπf - f‖_∞ ≤ 1`.
pub fn qm_to_hom_check(f: &QmTable) -> Result<HomCheck> {
    let defect = f.defect();
    if defect.norm > AbsValue::ONE {
        return Err(Error::Precondition(format!(
            "defect {} exceeds 1",
            defect.norm.render(f.p)
        )));
    }
    let projected = f.values.iter().map(|v| project_to_prufer(v, f.p)).collect::<Result<Vec<_>>>()?;
    let g = &f.group;
    let mut failure = None;
    'outer: for x in g.elements() {
        for y in g.elements() {
            if projected[g.mul(x, y)] != projected[x].add(&projected[y])? {
                failure = Some((x, y));
                break 'outer;
            }
        }
    }
    let section_distance = projected
        .iter()
        .zip(&f.values)
        .map(|(pi, v)| f.abs(&(&standard_section(pi) - v)))
        .max()
        .unwrap_or(AbsValue::Zero);
    Ok(HomCheck { projected, failure, section_distance })
}

/// `max(D(f), max_i |f(s_i)|)`, which bounds `|f|` on the subgroup the `s_i` generate.
pub fn fg_quasimorphism_bound(defect: AbsValue, generator_values: &[AbsValue]) -> Result<AbsValue> {
    let gens = generator_values
        .iter()
        .copied()
        .max()
        .ok_or_else(|| Error::Input("at least one generator value is required".into()))?;
    Ok(defect.max(gens))
}

/// Checks `|f(w)| ≤ fg_quasimorphism_bound` for every element `w` of the
/// subgroup generated by `generators`. Returns the bound and the verdict.
pub fn check_generator_bound(f: &QmTable, generators: &[usize]) -> Result<(AbsValue, bool)> {
    if generators.iter().any(|&s| s >= f.group.order()) {
        return Err(Error::Input("generator index out of range".into()));
    }
    let gen_values: Vec<AbsValue> = generators.iter().map(|&s| f.abs(&f.values[s])).collect();
    let bound = fg_quasimorphism_bound(f.defect().norm, &gen_values)?;
    let ok = f.group.generated_subgroup(generators).into_iter().all(|w| f.abs(&f.values[w]) <= bound);
    Ok((bound, ok))
}

/// `(g_1, ..., g_k) ↦ Σ f_i(g_i)` on `G_1 × ... × G_k`, elements indexed in
/// mixed radix with `g_1` most significant.
pub fn product_combine(tables: &[QmTable]) -> Result<QmTable> {
    let first = tables.first().ok_or_else(|| Error::Input("no tables to combine".into()))?;
    let p = first.p;
    for (i, t) in tables.iter().enumerate() {
        if t.p != p {
            return Err(Error::Input(format!("table {i} uses p = {}, expected {p}", t.p)));
        }
        if !t.is_normalized() {
            return Err(Error::Input(format!("table {i} does not vanish at the identity")));
        }
    }
    let mut group = (*first.group).clone();
    let mut values = first.values.clone();
    for t in &tables[1..] {
        group = FiniteGroup::direct_product(&group, &t.group);
        values = values.iter().flat_map(|a| t.values.iter().map(move |b| a + b)).collect();
    }
    QmTable::new(Arc::new(group), p, values)
}
