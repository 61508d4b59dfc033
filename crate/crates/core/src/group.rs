//! Finite groups by Cayley table, with the identity pinned at index 0.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::report::{all_hold, Check};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

fn check_shape(table: &[Vec<usize>]) -> Result<()> {
    let n = table.len();
    if n == 0 {
        return Err(Error::Malformed("empty table".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Malformed(format!("row {i} has length {}, expected {n}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(Error::Malformed(format!("row {i} contains index {bad} outside 0..{n}")));
        }
    }
    Ok(())
}

/// Identity at index 0, Latin-square rows and columns, inverses and
/// associativity on all triples.
pub fn validate_group(table: &[Vec<usize>]) -> Result<Vec<Check>> {
    check_shape(table)?;
    let n = table.len();
    let anchor = "group-axioms";
    let identity = (0..n).find(|&i| table[0][i] != i || table[i][0] != i);
    let mut checks = vec![Check::from_witness(
        "identity-at-zero",
        anchor,
        identity.map(|i| format!("0·{i} = {}, {i}·0 = {}", table[0][i], table[i][0])),
    )];
    let permutation = |entries: Vec<usize>| {
        let mut seen = vec![false; n];
        entries.into_iter().all(|x| !std::mem::replace(&mut seen[x], true))
    };
    let latin = (0..n)
        .find(|&i| !permutation(table[i].clone()))
        .map(|i| format!("row {i} is not a permutation"))
        .or_else(|| {
            (0..n)
                .find(|&j| !permutation((0..n).map(|i| table[i][j]).collect()))
                .map(|j| format!("column {j} is not a permutation"))
        });
    checks.push(Check::from_witness("latin-square", anchor, latin));
    let no_inverse = (0..n).find(|&a| !(0..n).any(|b| table[a][b] == 0 && table[b][a] == 0));
    checks.push(Check::from_witness(
        "inverses",
        anchor,
        no_inverse.map(|a| format!("{a} has no two-sided inverse")),
    ));
    let mut assoc = None;
    'outer: for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    assoc = Some(format!("({a}, {b}, {c})"));
                    break 'outer;
                }
            }
        }
    }
    checks.push(Check::from_witness("associativity", anchor, assoc));
    Ok(checks)
}

impl FiniteGroup {
    /// Loads a table, moving the identity to index 0 when it sits elsewhere.
    /// Returns the group and the relabeling `new index → old index`.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<(Self, Vec<usize>)> {
        check_shape(&table)?;
        let n = table.len();
        if labels.len() != n {
            return Err(Error::Malformed(format!("{} labels for {n} elements", labels.len())));
        }
        let e = (0..n)
            .find(|&i| (0..n).all(|j| table[i][j] == j && table[j][i] == j))
            .ok_or_else(|| Error::Invalid("table has no identity element".into()))?;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, e);
        // perm is its own inverse
        let relabeled: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).map(|j| perm[table[perm[i]][perm[j]]]).collect()).collect();
        let labels = perm.iter().map(|&o| labels[o].clone()).collect();
        let checks = validate_group(&relabeled)?;
        if let Some(bad) = checks.iter().find(|c| !c.holds) {
            return Err(Error::Invalid(format!(
                "{} fails: {}",
                bad.name,
                bad.witness.clone().unwrap_or_default()
            )));
        }
        Ok((Self::from_valid(labels, relabeled), perm))
    }

    /// Builds from a table already known to be a group with identity 0.
    pub(crate) fn from_valid(labels: Vec<String>, table: Vec<Vec<usize>>) -> Self {
        let inverses = (0..table.len())
            .map(|a| table[a].iter().position(|&x| x == 0).expect("group table"))
            .collect();
        Self { labels, table, inverses }
    }

    pub fn trivial() -> Self {
        Self::from_valid(vec!["e".into()], vec![vec![0]])
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Left-to-right product of a word.
    pub fn prod(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &x| self.table[acc][x])
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `Ad_a(b) = a·b·a⁻¹`
    pub fn ad(&self, a: usize, b: usize) -> usize {
        self.table[self.table[a][b]][self.inverses[a]]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order());
        self.labels = labels;
        self
    }
}

/// A subgroup with its own table; local index `k` is parent element
/// `members[k]`, and local 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupStruct {
    pub members: Vec<usize>,
    pub induced: FiniteGroup,
    local: Vec<Option<usize>>,
}

impl SubgroupStruct {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.local.get(a).is_some_and(Option::is_some)
    }

    pub fn local(&self, a: usize) -> Option<usize> {
        self.local.get(a).copied().flatten()
    }

    pub fn parent(&self, k: usize) -> usize {
        self.members[k]
    }
}

/// The subgroup on `set`, which must contain the identity and be closed.
pub fn subgroup(g: &FiniteGroup, set: &[usize]) -> Result<SubgroupStruct> {
    let members: Vec<usize> = set.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if members.first() != Some(&0) {
        return Err(Error::NotSubgroup("identity missing".into()));
    }
    let mut local = vec![None; g.order()];
    for (k, &m) in members.iter().enumerate() {
        if m >= g.order() {
            return Err(Error::Malformed(format!("element {m} outside the group")));
        }
        local[m] = Some(k);
    }
    let mut table = Vec::with_capacity(members.len());
    for &a in &members {
        let mut row = Vec::with_capacity(members.len());
        for &b in &members {
            let c = g.mul(a, b);
            row.push(local[c].ok_or_else(|| {
                Error::NotSubgroup(format!("{}·{} = {} leaves it", g.label(a), g.label(b), g.label(c)))
            })?);
        }
        table.push(row);
    }
    let labels = members.iter().map(|&m| g.label(m).to_string()).collect();
    Ok(SubgroupStruct { members, induced: FiniteGroup::from_valid(labels, table), local })
}

/// Closure of `seeds` under products and inverses.
pub fn generated_subgroup(g: &FiniteGroup, seeds: &[usize]) -> SubgroupStruct {
    let mut set: BTreeSet<usize> = seeds.iter().copied().collect();
    set.insert(0);
    let mut frontier: Vec<usize> = set.iter().copied().collect();
    while let Some(a) = frontier.pop() {
        let current: Vec<usize> = set.iter().copied().collect();
        for b in current {
            for c in [g.mul(a, b), g.mul(b, a), g.inv(a)] {
                if set.insert(c) {
                    frontier.push(c);
                }
            }
        }
    }
    subgroup(g, &set.into_iter().collect::<Vec<_>>()).expect("closure is a subgroup")
}

/// Coset group with cosets labeled by their least member.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub group: FiniteGroup,
    /// Element of the parent ↦ coset index.
    pub projection: Vec<usize>,
    /// Least member of each coset, in coset index order.
    pub representatives: Vec<usize>,
}

/// First conjugate `g·h·g⁻¹` that leaves `h`.
pub fn normality_witness(g: &FiniteGroup, h: &SubgroupStruct) -> Option<(usize, usize)> {
    (0..g.order()).find_map(|x| {
        h.members.iter().find(|&&m| !h.contains(g.ad(x, m))).map(|&m| (x, m))
    })
}

pub fn normality_and_quotient(g: &FiniteGroup, h: &SubgroupStruct) -> Result<QuotientGroup> {
    if let Some((x, m)) = normality_witness(g, h) {
        return Err(Error::NotNormal { conjugator: g.label(x).to_string(), member: g.label(m).to_string() });
    }
    let least: Vec<usize> =
        (0..g.order()).map(|x| h.members.iter().map(|&m| g.mul(x, m)).min().expect("nonempty")).collect();
    let representatives: Vec<usize> = least.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let index = |r: usize| representatives.binary_search(&r).expect("representative");
    let projection: Vec<usize> = least.iter().map(|&r| index(r)).collect();
    let table = representatives
        .iter()
        .map(|&a| representatives.iter().map(|&b| projection[g.mul(a, b)]).collect())
        .collect();
    let labels = representatives.iter().map(|&r| g.label(r).to_string()).collect();
    Ok(QuotientGroup { group: FiniteGroup::from_valid(labels, table), projection, representatives })
}

/// `f(ab) = f(a)f(b)` for all pairs and `f(e) = e′`.
pub fn check_group_homomorphism(src: &FiniteGroup, dst: &FiniteGroup, values: &[usize]) -> Result<Check> {
    check_map(src, dst, values)?;
    Ok(hom_check(src, dst, values, "group-homomorphism", "group-homomorphism"))
}

/// `values` must have one in-range entry per element of `src`.
pub fn check_map(src: &FiniteGroup, dst: &FiniteGroup, values: &[usize]) -> Result<()> {
    if values.len() != src.order() {
        return Err(Error::DimensionMismatch(format!("{} values for a group of order {}", values.len(), src.order())));
    }
    if let Some(&bad) = values.iter().find(|&&v| v >= dst.order()) {
        return Err(Error::Malformed(format!("value {bad} outside the target group")));
    }
    Ok(())
}

pub(crate) fn hom_check(src: &FiniteGroup, dst: &FiniteGroup, values: &[usize], name: &str, anchor: &str) -> Check {
    if values[0] != 0 {
        return Check::fail(name, anchor, format!("identity maps to {}", dst.label(values[0])));
    }
    for a in 0..src.order() {
        for b in 0..src.order() {
            if values[src.mul(a, b)] != dst.mul(values[a], values[b]) {
                return Check::fail(name, anchor, format!("({}, {})", src.label(a), src.label(b)));
            }
        }
    }
    Check::pass(name, anchor)
}

pub fn is_group_homomorphism(src: &FiniteGroup, dst: &FiniteGroup, values: &[usize]) -> bool {
    check_group_homomorphism(src, dst, values).is_ok_and(|c| c.holds)
}

/// All homomorphisms `g → g`, by brute force over value tables.
pub fn endomorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut out = Vec::new();
    let mut values = vec![0; n];
    loop {
        if hom_check(g, g, &values, "", "").holds {
            out.push(values.clone());
        }
        // odometer over indices 1..n
        let mut k = n;
        loop {
            if k == 1 {
                return out;
            }
            k -= 1;
            values[k] += 1;
            if values[k] < n {
                break;
            }
            values[k] = 0;
        }
    }
}

// ---- fixtures ----

pub fn cyclic(n: usize) -> FiniteGroup {
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FiniteGroup::from_valid((0..n).map(|i| i.to_string()).collect(), table)
}

/// `(a, b)` has index `a · |h| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (m, k) = (g.order(), h.order());
    let n = m * k;
    let table = (0..n)
        .map(|x| (0..n).map(|y| g.mul(x / k, y / k) * k + h.mul(x % k, y % k)).collect())
        .collect();
    let labels = (0..n).map(|x| format!("({},{})", g.label(x / k), h.label(x % k))).collect();
    FiniteGroup::from_valid(labels, table)
}

fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut parts = Vec::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cyc.push(i.to_string());
            i = p[i];
        }
        parts.push(format!("({})", cyc.join(" ")));
    }
    if parts.is_empty() {
        "e".into()
    } else {
        parts.concat()
    }
}

/// Closure of permutation generators in breadth-first order; `(a·b)(i) = a(b(i))`.
pub fn permutation_group(generators: &[Vec<usize>]) -> FiniteGroup {
    let degree = generators.first().map_or(0, Vec::len);
    let id: Vec<usize> = (0..degree).collect();
    let mut elements = vec![id];
    let mut frontier = elements.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for gen in generators {
                let y: Vec<usize> = (0..degree).map(|i| x[gen[i]]).collect();
                if !elements.contains(&y) {
                    elements.push(y.clone());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let index = |p: &Vec<usize>| elements.iter().position(|q| q == p).expect("closed");
    let table = elements
        .iter()
        .map(|a| elements.iter().map(|b| index(&(0..degree).map(|i| a[b[i]]).collect())).collect())
        .collect();
    FiniteGroup::from_valid(elements.iter().map(|p| cycle_label(p)).collect(), table)
}

pub fn symmetric3() -> FiniteGroup {
    permutation_group(&[vec![1, 0, 2], vec![1, 2, 0]])
}

/// Symmetries of a square on vertices 0..4.
pub fn dihedral4() -> FiniteGroup {
    permutation_group(&[vec![1, 2, 3, 0], vec![3, 2, 1, 0]])
}

pub fn quaternion8() -> FiniteGroup {
    // element (sign, unit) with unit 0..4 = 1, i, j, k
    let unit_mul = |x: usize, y: usize| -> (bool, usize) {
        match (x, y) {
            (0, y) => (false, y),
            (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let elements: Vec<(bool, usize)> = (0..4).flat_map(|u| [(false, u), (true, u)]).collect();
    let index = |e: (bool, usize)| elements.iter().position(|&x| x == e).expect("element");
    let table = elements
        .iter()
        .map(|&(sa, ua)| {
            elements
                .iter()
                .map(|&(sb, ub)| {
                    let (s, u) = unit_mul(ua, ub);
                    index((sa ^ sb ^ s, u))
                })
                .collect()
        })
        .collect();
    let names = ["1", "i", "j", "k"];
    let labels = elements.iter().map(|&(s, u)| format!("{}{}", if s { "-" } else { "" }, names[u])).collect();
    FiniteGroup::from_valid(labels, table)
}

/// The groups of order at most 8 used across the test corpus.
pub fn fixture_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z2xZ2", direct_product(&cyclic(2), &cyclic(2))),
        ("Z6", cyclic(6)),
        ("S3", symmetric3()),
        ("Z8", cyclic(8)),
        ("D4", dihedral4()),
        ("Q8", quaternion8()),
    ]
}

pub fn fixture_group(name: &str) -> Option<FiniteGroup> {
    fixture_groups().into_iter().find(|(n, _)| *n == name).map(|(_, g)| g)
}

/// Whether every check of [`validate_group`] holds.
pub fn is_group_table(table: &[Vec<usize>]) -> bool {
    validate_group(table).is_ok_and(|c| all_hold(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validator_examples() {
        assert!(is_group_table(&[vec![0, 1], vec![1, 0]]));
        assert!(is_group_table(&[vec![0]]));
        let bad = validate_group(&[vec![0, 1], vec![1, 1]]).unwrap();
        let latin = bad.iter().find(|c| c.name == "latin-square").unwrap();
        assert_eq!(latin.witness.as_deref(), Some("row 1 is not a permutation"));
        assert!(matches!(validate_group(&[vec![0, 1], vec![1]]), Err(Error::Malformed(_))));
    }

    #[test]
    fn fixtures_are_groups() {
        for (name, g) in fixture_groups() {
            assert!(is_group_table(g.table()), "{name}");
        }
        assert_eq!(symmetric3().order(), 6);
        assert_eq!(dihedral4().order(), 8);
        assert!(!quaternion8().is_abelian());
        assert_eq!(quaternion8().label(0), "1");
    }

    #[test]
    fn identity_relabeling() {
        // Z₂ with identity stored at index 1
        let (g, perm) = FiniteGroup::from_table(vec!["a".into(), "e".into()], vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(perm, vec![1, 0]);
        assert_eq!(g.label(0), "e");
        assert_eq!(g.table(), &[vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn generated_subgroups() {
        let s3 = symmetric3();
        assert_eq!(generated_subgroup(&s3, &[]).members, vec![0]);
        assert_eq!(generated_subgroup(&s3, &(0..6).collect::<Vec<_>>()).order(), 6);
        let three_cycle = (0..6).find(|&a| s3.mul(s3.mul(a, a), a) == 0 && a != 0).unwrap();
        assert_eq!(generated_subgroup(&s3, &[three_cycle]).order(), 3);
    }

    #[test]
    fn quotients() {
        let s3 = symmetric3();
        let trivial = generated_subgroup(&s3, &[]);
        assert_eq!(normality_and_quotient(&s3, &trivial).unwrap().group.order(), 6);
        let whole = generated_subgroup(&s3, &[1, 2]);
        assert_eq!(normality_and_quotient(&s3, &whole).unwrap().group.order(), 1);
        let three_cycle = (1..6).find(|&a| s3.mul(s3.mul(a, a), a) == 0).unwrap();
        let a3 = generated_subgroup(&s3, &[three_cycle]);
        let q = normality_and_quotient(&s3, &a3).unwrap();
        assert_eq!(q.group.order(), 2);
        assert!(check_group_homomorphism(&s3, &q.group, &q.projection).unwrap().holds);
        let transposition = (1..6).find(|&a| s3.mul(a, a) == 0).unwrap();
        let c2 = generated_subgroup(&s3, &[transposition]);
        assert!(matches!(normality_and_quotient(&s3, &c2), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn homomorphisms() {
        let z4 = cyclic(4);
        assert!(check_group_homomorphism(&z4, &z4, &[0, 1, 2, 3]).unwrap().holds);
        assert!(check_group_homomorphism(&z4, &z4, &[0, 0, 0, 0]).unwrap().holds);
        assert!(check_group_homomorphism(&z4, &z4, &[0, 2, 0, 2]).unwrap().holds);
        assert!(!check_group_homomorphism(&z4, &z4, &[0, 2, 1, 3]).unwrap().holds);
        assert_eq!(endomorphisms(&z4).len(), 4);
        assert_eq!(endomorphisms(&direct_product(&cyclic(2), &cyclic(2))).len(), 16);
    }
}
