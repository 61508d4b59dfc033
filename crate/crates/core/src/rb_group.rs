//! Weight −1 Rota-Baxter operators on finite groups:
//! `B(a)B(b) = B(Ad_{B(a)}(b)·a)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{
    check_map, generated_subgroup, hom_check, normality_and_quotient, normality_witness, subgroup,
    validate_group, FiniteGroup, QuotientGroup, SubgroupStruct,
};
use crate::report::{all_hold, Check};

/// Default largest group order accepted by the operator search.
pub const DEFAULT_MAX_ORDER: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotaBaxterGroup {
    pub group: FiniteGroup,
    pub values: Vec<usize>,
}

impl RotaBaxterGroup {
    pub fn new(group: FiniteGroup, values: Vec<usize>) -> Result<Self> {
        check_map(&group, &group, &values)?;
        Ok(Self { group, values })
    }

    pub fn apply(&self, a: usize) -> usize {
        self.values[a]
    }

    /// `B̃(a) = a·B(a⁻¹)`
    pub fn tilde_values(&self) -> Vec<usize> {
        let g = &self.group;
        (0..g.order()).map(|a| g.mul(a, self.values[g.inv(a)])).collect()
    }

    /// `a ·_B b = Ad_{B(a)}(b)·a` as a raw table.
    pub fn descendent_table(&self) -> Vec<Vec<usize>> {
        descendent_table(&self.group, &self.values)
    }
}

fn descendent_table(g: &FiniteGroup, values: &[usize]) -> Vec<Vec<usize>> {
    let n = g.order();
    (0..n).map(|a| (0..n).map(|b| g.mul(g.ad(values[a], b), a)).collect()).collect()
}

fn rb_witness(g: &FiniteGroup, values: &[usize]) -> Option<(usize, usize)> {
    let n = g.order();
    for a in 0..n {
        let ba = values[a];
        for b in 0..n {
            if g.mul(ba, values[b]) != values[g.mul(g.ad(ba, b), a)] {
                return Some((a, b));
            }
        }
    }
    None
}

pub(crate) fn rb_group_check(g: &FiniteGroup, values: &[usize], name: &str, anchor: &str) -> Check {
    Check::from_witness(
        name,
        anchor,
        rb_witness(g, values).map(|(a, b)| format!("({}, {})", g.label(a), g.label(b))),
    )
}

pub fn check_rb_group(g: &FiniteGroup, values: &[usize]) -> Result<Check> {
    check_map(g, g, values)?;
    Ok(rb_group_check(g, values, "rota-baxter-group", "rota-baxter-group"))
}

pub fn is_rb_group(g: &FiniteGroup, values: &[usize]) -> bool {
    check_map(g, g, values).is_ok() && rb_witness(g, values).is_none()
}

pub fn tilde_group(rbg: &RotaBaxterGroup) -> RotaBaxterGroup {
    RotaBaxterGroup { group: rbg.group.clone(), values: rbg.tilde_values() }
}

pub fn descendent_group(rbg: &RotaBaxterGroup) -> Result<FiniteGroup> {
    let table = rbg.descendent_table();
    let checks = validate_group(&table)?;
    if let Some(bad) = checks.iter().find(|c| !c.holds) {
        return Err(Error::Invalid(format!(
            "descendent table fails {}: {}",
            bad.name,
            bad.witness.clone().unwrap_or_default()
        )));
    }
    Ok(FiniteGroup::from_valid(rbg.group.labels().to_vec(), table))
}

#[derive(Clone, Debug)]
pub struct RBGroupSplit {
    pub b_tilde: Vec<usize>,
    pub g_plus: SubgroupStruct,
    pub g_minus: SubgroupStruct,
    pub h_plus: SubgroupStruct,
    pub h_minus: SubgroupStruct,
    pub checks: Vec<Check>,
}

fn preimage_of_identity(values: &[usize]) -> Vec<usize> {
    (0..values.len()).filter(|&a| values[a] == 0).collect()
}

fn image(values: &[usize]) -> Vec<usize> {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// `G₊ = im B`, `G₋ = im B̃`, `H₊ = ker B̃`, `H₋ = ker B`.
pub fn split_subgroups(rbg: &RotaBaxterGroup) -> Result<RBGroupSplit> {
    let g = &rbg.group;
    let bt = rbg.tilde_values();
    let g_plus = subgroup(g, &image(&rbg.values))?;
    let g_minus = subgroup(g, &image(&bt))?;
    let h_plus = subgroup(g, &preimage_of_identity(&bt))?;
    let h_minus = subgroup(g, &preimage_of_identity(&rbg.values))?;
    let anchor = "group-split";
    let mut checks = Vec::new();
    let inside = |small: &SubgroupStruct, big: &SubgroupStruct| {
        small.members.iter().find(|&&m| !big.contains(m)).map(|&m| g.label(m).to_string())
    };
    checks.push(Check::from_witness("kernel-plus-inside-image-plus", anchor, inside(&h_plus, &g_plus)));
    checks.push(Check::from_witness("kernel-minus-inside-image-minus", anchor, inside(&h_minus, &g_minus)));
    for (name, small, big) in [("kernel-plus-normal", &h_plus, &g_plus), ("kernel-minus-normal", &h_minus, &g_minus)] {
        let w = if inside(small, big).is_some() {
            Some("not contained".to_string())
        } else {
            let local: Vec<usize> = small.members.iter().map(|&m| big.local(m).expect("contained")).collect();
            let sub = subgroup(&big.induced, &local)?;
            normality_witness(&big.induced, &sub).map(|(x, m)| {
                format!("{} conjugated by {}", big.induced.label(m), big.induced.label(x))
            })
        };
        checks.push(Check::from_witness(name, anchor, w));
    }
    let round = (0..g.order()).find(|&a| rbg.values[a] != g.mul(a, bt[g.inv(a)]));
    checks.push(Check::from_witness(
        "operator-from-companion",
        anchor,
        round.map(|a| g.label(a).to_string()),
    ));
    Ok(RBGroupSplit { b_tilde: bt, g_plus, g_minus, h_plus, h_minus, checks })
}

/// `B̄` on `G_B / ⟨H₊ ∪ H₋⟩`.
#[derive(Clone, Debug)]
pub struct QuotientRBGroup {
    pub descendent: FiniteGroup,
    pub normal: SubgroupStruct,
    pub quotient: QuotientGroup,
    pub operator: RotaBaxterGroup,
    pub checks: Vec<Check>,
}

pub fn quotient_rb_group(rbg: &RotaBaxterGroup) -> Result<QuotientRBGroup> {
    let split = split_subgroups(rbg)?;
    let desc = descendent_group(rbg)?;
    let seeds: Vec<usize> = split.h_plus.members.iter().chain(&split.h_minus.members).copied().collect();
    let normal = generated_subgroup(&desc, &seeds);
    let quotient = normality_and_quotient(&desc, &normal)?;
    let anchor = "group-quotient";
    let mut checks = vec![Check::pass("kernel-product-normal", anchor)];
    checks.push(rb_group_check(&desc, &rbg.values, "operator-rota-baxter-on-descendent", anchor));

    let m = quotient.group.order();
    let mut bar = vec![None; m];
    let mut clash = None;
    for a in 0..rbg.group.order() {
        let (ca, cb) = (quotient.projection[a], quotient.projection[rbg.values[a]]);
        match bar[ca] {
            None => bar[ca] = Some(cb),
            Some(prev) if prev != cb && clash.is_none() => {
                clash = Some(format!("representatives of coset {} disagree", quotient.group.label(ca)));
            }
            _ => {}
        }
    }
    checks.push(Check::from_witness("induced-operator-well-defined", anchor, clash));
    let values: Vec<usize> = bar.into_iter().map(|v| v.expect("every coset has members")).collect();
    checks.push(rb_group_check(&quotient.group, &values, "induced-operator-rota-baxter", anchor));
    let operator = RotaBaxterGroup { group: quotient.group.clone(), values };
    Ok(QuotientRBGroup { descendent: desc, normal, quotient, operator, checks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchMode {
    Naive,
    Pruned,
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::Naive => "naive",
            SearchMode::Pruned => "pruned",
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(SearchMode::Naive),
            "pruned" => Ok(SearchMode::Pruned),
            other => Err(Error::Parse(format!("unknown search mode {other:?}"))),
        }
    }
}

/// Every operator, sorted by value table. `B(e) = e` is pinned: at `(e, e)`
/// the identity reads `B(e)² = B(e)`.
pub fn enumerate_rb_operators(g: &FiniteGroup, mode: SearchMode, jobs: usize) -> Result<Vec<Vec<usize>>> {
    enumerate_rb_operators_bounded(g, mode, jobs, DEFAULT_MAX_ORDER)
}

pub fn enumerate_rb_operators_bounded(
    g: &FiniteGroup,
    mode: SearchMode,
    jobs: usize,
    bound: usize,
) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    if n > bound {
        return Err(Error::OrderExceedsBound { order: n, bound });
    }
    if n == 1 {
        return Ok(vec![vec![0]]);
    }
    // the subtree split is at element 1
    let run = |v1: usize| -> Vec<Vec<usize>> {
        match mode {
            SearchMode::Naive => naive_subtree(g, v1),
            SearchMode::Pruned => pruned_subtree(g, v1),
        }
    };
    let mut out: Vec<Vec<usize>> = if jobs <= 1 {
        (0..n).flat_map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Invalid(format!("worker pool: {e}")))?;
        pool.install(|| (0..n).into_par_iter().flat_map_iter(run).collect())
    };
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn naive_subtree(g: &FiniteGroup, v1: usize) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut values = vec![0; n];
    values[1] = v1;
    let mut out = Vec::new();
    loop {
        if rb_witness(g, &values).is_none() {
            out.push(values.clone());
        }
        let mut k = n;
        loop {
            if k == 2 {
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

struct Propagator<'a> {
    g: &'a FiniteGroup,
    values: Vec<Option<usize>>,
    trail: Vec<usize>,
}

impl Propagator<'_> {
    /// Assigns `B(i) = v` and everything it forces; false on contradiction.
    fn assign(&mut self, i: usize, v: usize) -> bool {
        let g = self.g;
        let n = g.order();
        let mut queue = vec![(i, v)];
        while let Some((i, v)) = queue.pop() {
            match self.values[i] {
                Some(w) if w != v => return false,
                Some(_) => continue,
                None => {}
            }
            self.values[i] = Some(v);
            self.trail.push(i);
            for other in 0..n {
                let Some(bo) = self.values[other] else { continue };
                for (a, ba, b, bb) in [(i, v, other, bo), (other, bo, i, v)] {
                    let c = g.mul(g.ad(ba, b), a);
                    let forced = g.mul(ba, bb);
                    match self.values[c] {
                        Some(w) if w != forced => return false,
                        Some(_) => {}
                        None => queue.push((c, forced)),
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let i = self.trail.pop().expect("trail");
            self.values[i] = None;
        }
    }

    fn search(&mut self, out: &mut Vec<Vec<usize>>) {
        let Some(next) = self.values.iter().position(Option::is_none) else {
            let full: Vec<usize> = self.values.iter().map(|v| v.expect("assigned")).collect();
            if rb_witness(self.g, &full).is_none() {
                out.push(full);
            }
            return;
        };
        for v in 0..self.g.order() {
            let mark = self.trail.len();
            if self.assign(next, v) {
                self.search(out);
            }
            self.undo_to(mark);
        }
    }
}

fn pruned_subtree(g: &FiniteGroup, v1: usize) -> Vec<Vec<usize>> {
    let mut p = Propagator { g, values: vec![None; g.order()], trail: Vec::new() };
    let mut out = Vec::new();
    if p.assign(0, 0) && p.assign(1, v1) {
        p.search(&mut out);
    }
    out
}

/// Identities of an operator. `checks` are the forms relied on elsewhere;
/// `findings` are statements evaluated exactly as written whose outcome
/// varies by operator.
#[derive(Clone, Debug, Default)]
pub struct GroupLemmaSuite {
    pub checks: Vec<Check>,
    pub findings: Vec<Check>,
}

fn element_check(g: &FiniteGroup, name: &str, anchor: &str, ok: impl Fn(usize) -> bool) -> Check {
    Check::from_witness(name, anchor, (0..g.order()).find(|&a| !ok(a)).map(|a| g.label(a).to_string()))
}

fn pair_check(g: &FiniteGroup, name: &str, anchor: &str, ok: impl Fn(usize, usize) -> bool) -> Check {
    let n = g.order();
    let w = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| !ok(a, b));
    Check::from_witness(name, anchor, w.map(|(a, b)| format!("({}, {})", g.label(a), g.label(b))))
}

pub fn lemma_suite_group(rbg: &RotaBaxterGroup) -> GroupLemmaSuite {
    let g = &rbg.group;
    let b = &rbg.values;
    let bt = rbg.tilde_values();
    let inv = |a: usize| g.inv(a);
    let mut suite = GroupLemmaSuite::default();
    let c = &mut suite.checks;
    let f = &mut suite.findings;

    c.push(rb_group_check(g, b, "rota-baxter-group", "rota-baxter-group"));
    c.push(Check::from_bool("identity-fixed", "identity-fixed", b[0] == 0, || {
        format!("B(e) = {}", g.label(b[0]))
    }));
    c.push(rb_group_check(g, &bt, "companion-rota-baxter", "companion-operator"));
    c.push(element_check(g, "companion-involution", "companion-operator", |a| g.mul(a, bt[inv(a)]) == b[a]));

    // B(a†) = B(a)⁻¹ with a† = B(a)⁻¹ a⁻¹ B(a); the stated a† = Ad_{B(a)}(a⁻¹) is a finding
    c.push(element_check(g, "dagger-inverse", "dagger-lemma", |a| {
        b[g.prod(&[inv(b[a]), inv(a), b[a]])] == inv(b[a])
    }));
    f.push(element_check(g, "dagger-inverse-as-stated", "dagger-lemma", |a| b[g.ad(b[a], inv(a))] == inv(b[a])));
    c.push(element_check(g, "operator-companion-inverse", "inverse-lemma", |a| {
        g.mul(b[a], inv(bt[inv(a)])) == a
    }));
    c.push(element_check(g, "companion-of-operator", "image-swap-lemma", |a| {
        bt[b[a]] == b[inv(bt[inv(a)])]
    }));

    let desc = rbg.descendent_table();
    let desc_t = descendent_table(g, &bt);
    f.push(pair_check(g, "descendent-inverse-as-stated", "descendent-lemma", |x, y| {
        desc[x][y] == inv(desc[inv(x)][inv(y)])
    }));
    c.push(pair_check(g, "descendent-inverse", "descendent-lemma", |x, y| {
        desc_t[x][y] == inv(desc[inv(x)][inv(y)])
    }));

    let desc_checks = validate_group(&desc).expect("square table");
    let desc_ok = all_hold(&desc_checks);
    c.push(Check::from_bool("descendent-is-group", "descendent-group", desc_ok, || {
        desc_checks.iter().find(|c| !c.holds).map(|c| c.line()).unwrap_or_default()
    }));
    if desc_ok {
        let dg = FiniteGroup::from_valid(g.labels().to_vec(), desc.clone());
        c.push(rb_group_check(&dg, b, "operator-rota-baxter-on-descendent", "descendent-rota-baxter"));
        c.push(hom_check(&dg, g, b, "operator-hom-from-descendent", "descendent-group"));
        f.push(hom_check(g, &dg, b, "operator-hom-into-descendent", "descendent-group"));
        f.push(hom_check(g, &dg, &bt, "companion-hom-into-descendent", "descendent-group"));
        f.push(hom_check(&dg, g, &bt, "companion-hom-from-descendent", "descendent-group"));
    }
    if all_hold(&validate_group(&desc_t).expect("square table")) {
        let dgt = FiniteGroup::from_valid(g.labels().to_vec(), desc_t);
        c.push(hom_check(&dgt, g, &bt, "companion-hom-from-own-descendent", "descendent-group"));
    }
    suite
}
