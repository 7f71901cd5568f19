//! Amenability norms: the finite-group formula, the unique invariant mean,
//! the descriptor dispatcher, and the simplicity obstruction.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ExtendedNorm, FieldDescriptor, Trichotomy};
use crate::group::{ExponentValue, FiniteGroup, GroupDescriptor};
use crate::linalg::{rref, Field, Rationals};
use crate::rational::Rational;
use crate::valuation::{padic_valuation, require_prime, AbsValue};

/// `‖G‖_K` for a finite group of order `n`: `|n|_K^{-1}`, read off the trichotomy.
pub fn finite_group_norm(n: &BigInt, fd: &FieldDescriptor) -> Result<ExtendedNorm> {
    if n < &BigInt::from(1) {
        return Err(Error::Domain(format!("group order must be positive, got {n}")));
    }
    Ok(match fd.classify()? {
        Trichotomy::CharP(p) => {
            if padic_valuation(n, p)? == 0 {
                ExtendedNorm::One
            } else {
                ExtendedNorm::Infinity
            }
        }
        Trichotomy::EqualCharZero => ExtendedNorm::One,
        Trichotomy::Mixed(p) => ExtendedNorm::finite(padic_valuation(n, p)?, p),
    })
}

/// The averaging functional `f ↦ (1/n) Σ f(g)` on a finite group, viewed over `Q_p`.
#[derive(Clone, Debug, Serialize)]
pub struct MeanTable {
    pub order: usize,
    pub p: u64,
    /// Coefficient of the evaluation at each element, indexed like the group.
    pub coefficients: Vec<Rational>,
    /// `max_g |m(δ_g)|_p`, which is the operator norm since `‖δ_g‖ = 1`.
    pub operator_norm: ExtendedNorm,
}

/// Builds the uniform mean and checks left invariance on the Dirac basis
/// (`m(g·δ_h) = m(δ_{gh}) = m(δ_h)`) and the normalisation `m(1) = 1`.
pub fn uniform_mean(group: &FiniteGroup, p: u64) -> Result<MeanTable> {
    require_prime(p)?;
    let n = group.order();
    let coefficients = vec![Rational::frac(1, n as i64); n];
    for g in group.elements() {
        for h in group.elements() {
            if coefficients[group.mul(g, h)] != coefficients[h] {
                return Err(Error::Precondition("mean is not left invariant".into()));
            }
        }
    }
    if coefficients.iter().sum::<Rational>() != Rational::one() {
        return Err(Error::Precondition("mean is not normalised".into()));
    }
    let worst = coefficients
        .iter()
        .map(|c| AbsValue::of(c, p))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .expect("groups are nonempty");
    let operator_norm = match worst {
        AbsValue::Pow(k) if k >= 0 => ExtendedNorm::finite(k as u32, p),
        _ => return Err(Error::Precondition("coefficient norm below 1".into())),
    };
    Ok(MeanTable { order: n, p, coefficients, operator_norm })
}

/// Result of solving `{m(δ_{gh}) = m(δ_h)} ∪ {Σ m(δ_g) = 1}` over `Q`.
#[derive(Clone, Debug, Serialize)]
pub struct MeanSystem {
    pub consistent: bool,
    /// Dimension of the solution set of the affine system (meaningful when consistent).
    pub solution_dimension: usize,
    /// The solution when it is unique.
    pub solution: Option<Vec<Rational>>,
}

/// Solves the invariance and normalisation equations for a mean on `group`
/// by exact elimination, independent of any formula for the answer.
pub fn solve_invariant_mean(group: &FiniteGroup) -> MeanSystem {
    let field = Rationals;
    let n = group.order();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            if gh != h {
                let mut row = vec![field.zero(); n + 1];
                row[gh] = field.one();
                row[h] = field.neg(&field.one());
                rows.push(row);
            }
        }
    }
    let mut norm_row = vec![field.one(); n + 1];
    norm_row[n] = field.one();
    rows.push(norm_row);
    let (reduced, pivots) = rref(&field, rows, n + 1);
    let consistent = !pivots.contains(&n);
    let solution_dimension = n - pivots.len().min(n);
    let solution = (consistent && pivots.len() == n).then(|| {
        let mut x = vec![field.zero(); n];
        for (row, &c) in reduced.iter().zip(&pivots) {
            x[c] = row[n].clone();
        }
        x
    });
    MeanSystem { consistent, solution_dimension, solution }
}

/// Why the dispatcher returned what it did.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// The group is not locally elliptic (spherically complete fields).
    NotLocallyElliptic,
    /// The group is not compact (non-spherically-complete fields).
    NotCompact,
    /// Positive characteristic `p` and some finite order data divisible by `p`.
    PTorsionInCharP,
    /// Positive characteristic `p` and no finite order data divisible by `p`.
    PFreeInCharP,
    /// Residue characteristic zero: every locally elliptic (compact) group has norm 1.
    EqualCharZero,
    /// Mixed characteristic with bounded `p`-exponent.
    PNFree,
    /// Mixed characteristic with unbounded `p`-exponent.
    NotPNFree,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("serialisable");
        write!(f, "{}", s.as_str().expect("unit variant"))
    }
}

/// `‖G‖_K` together with its justification. When `certified` is false the
/// norm is a lower bound only.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmenabilityVerdict {
    pub norm: ExtendedNorm,
    pub certified: bool,
    pub reason: Reason,
}

impl AmenabilityVerdict {
    fn exact(norm: ExtendedNorm, reason: Reason) -> Self {
        AmenabilityVerdict { norm, certified: true, reason }
    }

    /// The norm rendered with a `>=` prefix when it is only a lower bound.
    pub fn render(&self) -> String {
        if self.certified {
            self.norm.to_string()
        } else {
            format!(">= {}", self.norm)
        }
    }
}

/// Evaluates `‖G‖_K` from descriptor-level facts.
///
/// Over spherically complete fields the structural hypothesis is local
/// ellipticity, otherwise compactness. Given it, the norm is `1` in residue
/// characteristic zero, `1` or `∞` in characteristic `p` according to whether
/// `p` divides some finite order, and `p^k` in mixed characteristic where `k`
/// is the `p`-exponent (`∞` when it diverges).
pub fn amenability_norm(group: &GroupDescriptor, fd: &FieldDescriptor, depth: u32) -> Result<AmenabilityVerdict> {
    group.validate()?;
    let case = fd.classify()?;
    let (flag, name, failure) = if fd.spherically_complete {
        (group.locally_elliptic_flag(), "locally_elliptic", Reason::NotLocallyElliptic)
    } else {
        (group.compact_flag(), "compact", Reason::NotCompact)
    };
    let structural = flag.ok_or_else(|| {
        Error::Descriptor(format!("cannot resolve the {name} flag; declare it on the descriptor"))
    })?;
    if !structural {
        return Ok(AmenabilityVerdict::exact(ExtendedNorm::Infinity, failure));
    }
    Ok(match case {
        Trichotomy::EqualCharZero => AmenabilityVerdict::exact(ExtendedNorm::One, Reason::EqualCharZero),
        Trichotomy::CharP(p) => {
            let e = group.p_exponent(p, depth)?;
            match e.value {
                // A sampled positive exponent is already a witness of p-torsion.
                ExponentValue::Diverges => AmenabilityVerdict::exact(ExtendedNorm::Infinity, Reason::PTorsionInCharP),
                ExponentValue::Finite(k) if k > 0 => {
                    AmenabilityVerdict::exact(ExtendedNorm::Infinity, Reason::PTorsionInCharP)
                }
                ExponentValue::Finite(_) => AmenabilityVerdict {
                    norm: ExtendedNorm::One,
                    certified: e.certified,
                    reason: Reason::PFreeInCharP,
                },
            }
        }
        Trichotomy::Mixed(p) => {
            let e = group.p_exponent(p, depth)?;
            match e.value {
                ExponentValue::Diverges => AmenabilityVerdict::exact(ExtendedNorm::Infinity, Reason::NotPNFree),
                ExponentValue::Finite(k) => {
                    let k = u32::try_from(k).map_err(|_| Error::Budget(format!("exponent {k} too large")))?;
                    AmenabilityVerdict { norm: ExtendedNorm::finite(k, p), certified: e.certified, reason: Reason::PNFree }
                }
            }
        }
    })
}

/// One entry of a norm table: an exact norm, or only the knowledge that it exceeds 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormEntry {
    Exact(ExtendedNorm),
    GreaterThanOne,
}

impl NormEntry {
    fn exceeds_one(&self) -> bool {
        match self {
            NormEntry::Exact(n) => !n.is_one(),
            NormEntry::GreaterThanOne => true,
        }
    }
}

/// What is known about the primes missing from a norm table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    /// Every unlisted prime has norm 1.
    AllOne,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObstructionWitness {
    /// `‖G‖_2 ≤ 2`.
    TwoAdicNormAtMostTwo,
    /// Every odd prime except possibly the listed one has norm 1.
    AtMostOneOddPrime { prime: Option<u64> },
    /// Two odd primes with norm above 1 (no obstruction).
    TwoOddPrimes { primes: [u64; 2] },
    /// The table does not decide the condition.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionVerdict {
    /// True when a non-abelian group with these norms cannot be topologically simple.
    pub obstructed: bool,
    pub witness: ObstructionWitness,
}

/// Checks the condition "`‖G‖_2 ≤ 2`, or `‖G‖_p = 1` for all but at most one
/// odd prime", which rules out topological simplicity for non-abelian groups.
pub fn simplicity_obstruction(norms: &BTreeMap<u64, NormEntry>, tail: Tail) -> Result<ObstructionVerdict> {
    let two = norms.get(&2).ok_or_else(|| Error::Input("the norm table needs an entry for p = 2".into()))?;
    if let Some(p) = norms.keys().find(|p| !crate::valuation::is_prime(**p)) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    if let NormEntry::Exact(n) = two {
        if n.exponent().is_some_and(|k| k <= 1) {
            return Ok(ObstructionVerdict { obstructed: true, witness: ObstructionWitness::TwoAdicNormAtMostTwo });
        }
    }
    let big: Vec<u64> = norms.iter().filter(|(p, e)| **p != 2 && e.exceeds_one()).map(|(p, _)| *p).collect();
    Ok(match (big.as_slice(), tail) {
        ([a, b, ..], _) => ObstructionVerdict {
            obstructed: false,
            witness: ObstructionWitness::TwoOddPrimes { primes: [*a, *b] },
        },
        (rest, Tail::AllOne) => ObstructionVerdict {
            obstructed: true,
            witness: ObstructionWitness::AtMostOneOddPrime { prime: rest.first().copied() },
        },
        (_, Tail::Unknown) => ObstructionVerdict { obstructed: false, witness: ObstructionWitness::Inconclusive },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;

    fn q(p: u64) -> FieldDescriptor {
        FieldDescriptor::q_p(p).unwrap()
    }

    #[test]
    fn finite_norm_examples() {
        assert_eq!(finite_group_norm(&BigInt::from(6), &q(3)).unwrap(), ExtendedNorm::finite(1, 3));
        assert_eq!(finite_group_norm(&BigInt::from(5), &q(3)).unwrap(), ExtendedNorm::One);
        let f2 = FieldDescriptor::trivial_fp(2).unwrap();
        assert_eq!(finite_group_norm(&BigInt::from(2), &f2).unwrap(), ExtendedNorm::Infinity);
        assert_eq!(finite_group_norm(&BigInt::from(3), &f2).unwrap(), ExtendedNorm::One);
        assert_eq!(finite_group_norm(&BigInt::from(12), &FieldDescriptor::trivial_q()).unwrap(), ExtendedNorm::One);
    }

    #[test]
    fn uniform_mean_examples() {
        let z2 = uniform_mean(&FiniteGroup::cyclic(2), 2).unwrap();
        assert_eq!(z2.coefficients, vec![Rational::frac(1, 2); 2]);
        assert_eq!(z2.operator_norm, ExtendedNorm::finite(1, 2));
        assert!(uniform_mean(&FiniteGroup::cyclic(3), 2).unwrap().operator_norm.is_one());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(uniform_mean(&s3, 3).unwrap().operator_norm, ExtendedNorm::finite(1, 3));
        let sys = solve_invariant_mean(&s3);
        assert!(sys.consistent);
        assert_eq!(sys.solution_dimension, 0);
        assert_eq!(sys.solution.unwrap(), vec![Rational::frac(1, 6); 6]);
    }

    #[test]
    fn dispatcher_examples() {
        let prufer = GroupDescriptor::family(Family::Prufer { p: 2 });
        assert_eq!(amenability_norm(&prufer, &q(2), 5).unwrap().norm, ExtendedNorm::Infinity);
        assert_eq!(amenability_norm(&prufer, &q(3), 5).unwrap().norm, ExtendedNorm::One);
        let ext = GroupDescriptor::extension(
            GroupDescriptor::family(Family::ZEll { ell: 3 }),
            GroupDescriptor::finite_order(48),
        );
        let v = amenability_norm(&ext, &q(2), 5).unwrap();
        assert_eq!(v.norm, ExtendedNorm::finite(4, 2));
        assert!(v.certified);
        assert_eq!(v.norm.value().unwrap(), BigInt::from(16));
    }

    #[test]
    fn dispatcher_structural_cases() {
        let not_le = GroupDescriptor::cyclic(4).with_flags(None, None);
        assert_eq!(amenability_norm(&not_le, &q(2), 1).unwrap().norm, ExtendedNorm::finite(2, 2));
        let union = GroupDescriptor::directed_union(vec![GroupDescriptor::cyclic(3)], true);
        let mut non_sc = q(2);
        non_sc.spherically_complete = false;
        assert!(matches!(amenability_norm(&union, &non_sc, 1), Err(Error::Descriptor(_))));
        let declared = union.clone().with_flags(Some(false), None);
        let v = amenability_norm(&declared, &non_sc, 1).unwrap();
        assert_eq!((v.norm, v.reason), (ExtendedNorm::Infinity, Reason::NotCompact));
        assert_eq!(amenability_norm(&union, &q(2), 1).unwrap().norm, ExtendedNorm::One);
        let char3 = FieldDescriptor::fp_laurent(3).unwrap();
        let v = amenability_norm(&GroupDescriptor::symmetric(3), &char3, 1).unwrap();
        assert_eq!((v.norm, v.reason), (ExtendedNorm::Infinity, Reason::PTorsionInCharP));
        let v = amenability_norm(&GroupDescriptor::family(Family::QEll { ell: 5 }), &FieldDescriptor::trivial_q(), 1)
            .unwrap();
        assert_eq!(v.norm, ExtendedNorm::One);
    }

    #[test]
    fn obstruction_rows() {
        let table = |rows: &[(u64, NormEntry)]| rows.iter().cloned().collect::<BTreeMap<_, _>>();
        let four = NormEntry::Exact(ExtendedNorm::finite(2, 2));
        let gt = NormEntry::GreaterThanOne;
        let r1 = simplicity_obstruction(&table(&[(2, four), (3, gt), (5, gt)]), Tail::AllOne).unwrap();
        assert!(!r1.obstructed);
        let r2 = simplicity_obstruction(&table(&[(2, NormEntry::Exact(ExtendedNorm::finite(1, 2)))]), Tail::Unknown)
            .unwrap();
        assert!(r2.obstructed);
        let r3 = simplicity_obstruction(&table(&[(2, four), (3, gt)]), Tail::AllOne).unwrap();
        assert!(r3.obstructed);
        assert_eq!(r3.witness, ObstructionWitness::AtMostOneOddPrime { prime: Some(3) });
        assert!(simplicity_obstruction(&table(&[(3, gt)]), Tail::AllOne).is_err());
    }
}
