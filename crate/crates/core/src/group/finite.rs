//! Concrete finite groups given by multiplication tables.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::valuation::{padic_valuation_u64, require_prime};

/// Upper bound on the number of elements produced by permutation closure.
pub const CLOSURE_LIMIT: usize = 10_000;

/// Groups up to this order get their associativity checked on construction.
const ASSOCIATIVITY_CHECK_LIMIT: usize = 256;

/// Groups up to this order have their Sylow orders cross-checked by subgroup enumeration.
pub const SYLOW_ENUMERATION_LIMIT: usize = 48;

/// A finite group on the elements `0..n` with an explicit multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("identity", &self.names[self.identity])
            .finish()
    }
}

/// On-disk form of a group: element names and a table of names (or indices).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub elements: Vec<String>,
    pub table: Vec<Vec<TableEntry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableEntry {
    Index(usize),
    Name(String),
}

impl FiniteGroup {
    /// Builds a group from a full table, checking that it is a Latin square with
    /// an identity (hence inverses). Associativity is checked for small orders.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Input("a group has at least one element".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Input(format!("table must be {n}x{n}")));
        }
        if let Some(bad) = table.iter().flatten().find(|&&x| x >= n) {
            return Err(Error::Input(format!("table entry {bad} out of range")));
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                row_seen[table[i][j]] = true;
                col_seen[table[j][i]] = true;
            }
            if row_seen.contains(&false) || col_seen.contains(&false) {
                return Err(Error::Input(format!("table is not a Latin square (line {i})")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Input("table has no identity element".into()))?;
        let mut inverses = vec![0; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| table[x][y] == identity)
                .expect("Latin square row contains the identity");
            if table[y][x] != identity {
                return Err(Error::Input(format!("element {} has no two-sided inverse", names[x])));
            }
            inverses[x] = y;
        }
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a][b];
                    for c in 0..n {
                        if table[ab][c] != table[a][table[b][c]] {
                            return Err(Error::Input(format!(
                                "table is not associative at ({}, {}, {})",
                                names[a], names[b], names[c]
                            )));
                        }
                    }
                }
            }
        }
        let flat = table.into_iter().flatten().map(|x| x as u32).collect();
        Ok(FiniteGroup { names, table: flat, identity, inverses })
    }

    pub fn from_document(doc: &TableDocument) -> Result<Self> {
        let index: HashMap<&str, usize> = doc.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != doc.elements.len() {
            return Err(Error::Input("duplicate element names".into()));
        }
        let table = doc
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        TableEntry::Index(i) => Ok(*i),
                        TableEntry::Name(s) => index
                            .get(s.as_str())
                            .copied()
                            .ok_or_else(|| Error::Input(format!("unknown element {s:?} in table"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(doc.elements.clone(), table)
    }

    pub fn to_document(&self) -> TableDocument {
        TableDocument {
            elements: self.names.clone(),
            table: (0..self.order())
                .map(|a| (0..self.order()).map(|b| TableEntry::Name(self.names[self.mul(a, b)].clone())).collect())
                .collect(),
        }
    }

    /// The group generated by permutations of `0..degree`, composed right to left
    /// (`(στ)(x) = σ(τ(x))`). Closure stops with an error beyond [`CLOSURE_LIMIT`].
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Input(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let compose = |s: &[usize], t: &[usize]| -> Vec<usize> { t.iter().map(|&x| s[x]).collect() };
        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next = compose(&elements[i], g);
                if !index.contains_key(&next) {
                    if elements.len() >= CLOSURE_LIMIT {
                        return Err(Error::Budget(format!(
                            "permutation closure exceeds {CLOSURE_LIMIT} elements"
                        )));
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                table.push(index[&compose(a, b)] as u32);
            }
        }
        let mut inverses = vec![0; n];
        for (i, perm) in elements.iter().enumerate() {
            let mut inv = vec![0; degree];
            for (x, &y) in perm.iter().enumerate() {
                inv[y] = x;
            }
            inverses[i] = index[&inv];
        }
        let names = elements.iter().map(|p| cycle_notation(p)).collect();
        Ok(FiniteGroup { names, table, identity: 0, inverses })
    }

    /// `Z/n` with elements `0..n` and addition mod `n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let table = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
        FiniteGroup {
            names: (0..n).map(|k| k.to_string()).collect(),
            table,
            identity: 0,
            inverses: (0..n).map(|k| (n - k) % n).collect(),
        }
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n <= 1 {
            return Ok(Self::trivial());
        }
        let transposition: Vec<usize> = (0..n).map(|i| match i { 0 => 1, 1 => 0, _ => i }).collect();
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(n, &[transposition, rotation])
    }

    pub fn alternating(n: usize) -> Result<Self> {
        if n <= 2 {
            return Ok(Self::trivial());
        }
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| (0..n).map(|i| if i == 0 { 1 } else if i == 1 { k } else if i == k { 0 } else { i }).collect())
            .collect();
        Self::from_permutations(n, &gens)
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Input("dihedral groups need n >= 3".into()));
        }
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[rotation, reflection])
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `G × H` with element `(g, h)` at index `g * |H| + h`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                table.push((a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32);
            }
        }
        let names = (0..n)
            .map(|x| format!("({},{})", a.name(x / nb), b.name(x % nb)))
            .collect();
        let inverses = (0..n).map(|x| a.inv(x / nb) * nb + b.inv(x % nb)).collect();
        FiniteGroup { names, table, identity: a.identity() * nb + b.identity(), inverses }
    }

    /// Parses names such as `Z/6`, `C6`, `S3`, `A4`, `D4`, `V4`, `trivial`, and
    /// products joined by `x` (e.g. `Z/2xZ/2`).
    pub fn from_name(name: &str) -> Result<Self> {
        let parts: Vec<&str> = name.split('x').map(str::trim).collect();
        if parts.len() > 1 {
            let mut it = parts.iter().map(|p| Self::from_name(p));
            let first = it.next().expect("split yields at least one part")?;
            return it.try_fold(first, |acc, g| Ok(Self::direct_product(&acc, &g?)));
        }
        let bad = || Error::Input(format!("unknown group name {name:?}"));
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        let lower = name.to_ascii_lowercase();
        if lower == "trivial" || lower == "1" {
            return Ok(Self::trivial());
        }
        if lower == "v4" || lower == "klein" {
            return Ok(Self::direct_product(&Self::cyclic(2), &Self::cyclic(2)));
        }
        if let Some(rest) = name.strip_prefix("Z/") {
            let n = num(rest)?;
            return if n >= 1 { Ok(Self::cyclic(n)) } else { Err(bad()) };
        }
        let (head, tail) = name.split_at(1.min(name.len()));
        match head {
            "C" | "Z" => {
                let n = num(tail)?;
                if n >= 1 { Ok(Self::cyclic(n)) } else { Err(bad()) }
            }
            "S" => Self::symmetric(num(tail)?),
            "A" => Self::alternating(num(tail)?),
            "D" => Self::dihedral(num(tail)?),
            _ => Err(bad()),
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    /// Every subgroup, found by joining cyclic subgroups until closure.
    /// Intended for small groups only.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut known: HashSet<Vec<usize>> = HashSet::new();
        let cyclic: Vec<Vec<usize>> = self
            .elements()
            .map(|g| self.generated_subgroup(&[g]))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        let mut frontier: Vec<Vec<usize>> = cyclic.clone();
        known.extend(cyclic.iter().cloned());
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    let mut gens = h.clone();
                    gens.extend(c.iter().copied());
                    let joined = self.generated_subgroup(&gens);
                    if known.insert(joined.clone()) {
                        next.push(joined);
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<Vec<usize>> = known.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        all
    }

    /// Largest order of a subgroup whose order is a power of `p`, by enumeration.
    pub fn max_p_subgroup_order(&self, p: u64) -> usize {
        self.all_subgroups()
            .iter()
            .map(Vec::len)
            .filter(|&k| is_power_of(k as u64, p))
            .max()
            .unwrap_or(1)
    }

    /// Order of a Sylow `p`-subgroup, `p^{ν_p(|G|)}`. For groups of order at most
    /// [`SYLOW_ENUMERATION_LIMIT`] the value is cross-checked against the
    /// maximal `p`-subgroup found by enumeration.
    pub fn sylow_order(&self, p: u64) -> Result<u64> {
        require_prime(p)?;
        let k = padic_valuation_u64(self.order() as u64, p)?;
        let order = p.pow(k);
        if self.order() <= SYLOW_ENUMERATION_LIMIT {
            let found = self.max_p_subgroup_order(p) as u64;
            if found != order {
                return Err(Error::Precondition(format!(
                    "Sylow cross-check failed: formula {order}, enumeration {found}"
                )));
            }
        }
        Ok(order)
    }
}

fn is_power_of(mut k: u64, p: u64) -> bool {
    while k > 1 && k % p == 0 {
        k /= p;
    }
    k == 1
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = perm[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = perm[x];
        }
        out.push('(');
        out.push_str(&cycle.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}
