//! Matched pairs of finite groups, bicrossed product groups, the matched pair
//! of a Rota-Baxter group, group projections and the group-side
//! decomposition.
//!
//! `ρ` is the action of `G₊` on `G₋` and `μ` the action of `G₋` on `G₊`;
//! `(a₁,b₁)·(a₂,b₂) = ((μ(b₂⁻¹)a₁⁻¹)⁻¹a₂, b₁·ρ(a₁)b₂)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{check_map, hom_check, subgroup, validate_group, FiniteGroup, SubgroupStruct};
use crate::rb_group::{
    lemma_suite_group, quotient_rb_group, rb_group_check, split_subgroups, RBGroupSplit,
    RotaBaxterGroup,
};
use crate::report::{all_hold, prefixed, Check};

pub const GROUP_CONVENTION: &str = "rho: G+ acts on G-, mu: G- acts on G+; \
(a1,b1)(a2,b2) = ((mu(b2^-1)a1^-1)^-1 a2, b1 rho(a1)b2); the complement of a projection C is x -> C(x)^-1 x";

/// `rho[x][y] = ρ(x)(y)` and `mu[y][x] = μ(y)(x)`, in local indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPairGroup {
    pub g_plus: FiniteGroup,
    pub g_minus: FiniteGroup,
    pub rho: Vec<Vec<usize>>,
    pub mu: Vec<Vec<usize>>,
}

impl MatchedPairGroup {
    pub fn trivial(g_plus: FiniteGroup, g_minus: FiniteGroup) -> Self {
        let (p, q) = (g_plus.order(), g_minus.order());
        Self {
            rho: vec![(0..q).collect(); p],
            mu: vec![(0..p).collect(); q],
            g_plus,
            g_minus,
        }
    }

    fn check_shape(&self) -> Result<()> {
        let (p, q) = (self.g_plus.order(), self.g_minus.order());
        let ok = self.rho.len() == p
            && self.rho.iter().all(|r| r.len() == q && r.iter().all(|&y| y < q))
            && self.mu.len() == q
            && self.mu.iter().all(|r| r.len() == p && r.iter().all(|&x| x < p));
        if ok {
            Ok(())
        } else {
            Err(Error::Malformed(format!("action tables do not match orders ({p}, {q})")))
        }
    }

    /// `(a₁,b₁)·(a₂,b₂)` on local pairs.
    pub fn product(&self, (a1, b1): (usize, usize), (a2, b2): (usize, usize)) -> (usize, usize) {
        let (gp, gm) = (&self.g_plus, &self.g_minus);
        let first = gp.mul(gp.inv(self.mu[gm.inv(b2)][gp.inv(a1)]), a2);
        let second = gm.mul(b1, self.rho[a1][b2]);
        (first, second)
    }

    /// `(a,b)⁻¹ = ((μ(b)a)⁻¹, ρ(a⁻¹)b⁻¹)`
    pub fn stated_inverse(&self, (a, b): (usize, usize)) -> (usize, usize) {
        let (gp, gm) = (&self.g_plus, &self.g_minus);
        (gp.inv(self.mu[b][a]), self.rho[gp.inv(a)][gm.inv(b)])
    }
}

fn triple_witness(
    outer: usize,
    mid: usize,
    inner: usize,
    ok: impl Fn(usize, usize, usize) -> bool,
    label: impl Fn(usize, usize, usize) -> String,
) -> Option<String> {
    for i in 0..outer {
        for j in 0..mid {
            for k in 0..inner {
                if !ok(i, j, k) {
                    return Some(label(i, j, k));
                }
            }
        }
    }
    None
}

/// Action axioms for `ρ`, `μ` and conditions (a)–(d).
pub fn verify_matched_pair_group(mp: &MatchedPairGroup) -> Result<Vec<Check>> {
    mp.check_shape()?;
    let (gp, gm) = (&mp.g_plus, &mp.g_minus);
    let (p, q) = (gp.order(), gm.order());
    let (rho, mu) = (&mp.rho, &mp.mu);
    let lp = |x: usize| gp.label(x).to_string();
    let lm = |y: usize| gm.label(y).to_string();
    let anchor = "group-matched-pair";
    let mut checks = Vec::new();

    let rho_unit = (0..q).find(|&y| rho[0][y] != y).map(|y| format!("ρ(e)({}) ≠ {}", lm(y), lm(y)));
    let rho_comp = triple_witness(
        p,
        p,
        q,
        |x1, x2, y| rho[gp.mul(x1, x2)][y] == rho[x1][rho[x2][y]],
        |x1, x2, y| format!("({}, {}, {})", lp(x1), lp(x2), lm(y)),
    );
    checks.push(Check::from_witness("rho-action", anchor, rho_unit.or(rho_comp)));
    let mu_unit = (0..p).find(|&x| mu[0][x] != x).map(|x| format!("μ(e)({}) ≠ {}", lp(x), lp(x)));
    let mu_comp = triple_witness(
        q,
        q,
        p,
        |y1, y2, x| mu[gm.mul(y1, y2)][x] == mu[y1][mu[y2][x]],
        |y1, y2, x| format!("({}, {}, {})", lm(y1), lm(y2), lp(x)),
    );
    checks.push(Check::from_witness("mu-action", anchor, mu_unit.or(mu_comp)));

    // (a) ρ(a⁻¹)(b₁b₂) = (ρ(a⁻¹)b₁)(ρ((μ(b₁⁻¹)a)⁻¹)b₂)
    checks.push(Check::from_witness(
        "condition-a",
        anchor,
        triple_witness(
            p,
            q,
            q,
            |a, b1, b2| {
                let ai = gp.inv(a);
                rho[ai][gm.mul(b1, b2)] == gm.mul(rho[ai][b1], rho[gp.inv(mu[gm.inv(b1)][a])][b2])
            },
            |a, b1, b2| format!("({}, {}, {})", lp(a), lm(b1), lm(b2)),
        ),
    ));
    // (b) μ(b⁻¹)(a₁a₂) = (μ(b⁻¹)a₁)(μ((ρ(a₁⁻¹)b)⁻¹)a₂)
    checks.push(Check::from_witness(
        "condition-b",
        anchor,
        triple_witness(
            q,
            p,
            p,
            |b, a1, a2| {
                let bi = gm.inv(b);
                mu[bi][gp.mul(a1, a2)] == gp.mul(mu[bi][a1], mu[gm.inv(rho[gp.inv(a1)][b])][a2])
            },
            |b, a1, a2| format!("({}, {}, {})", lm(b), lp(a1), lp(a2)),
        ),
    ));
    checks.push(Check::from_witness(
        "condition-c",
        anchor,
        (0..p).find(|&a| rho[a][0] != 0).map(lp),
    ));
    checks.push(Check::from_witness(
        "condition-d",
        anchor,
        (0..q).find(|&b| mu[b][0] != 0).map(lm),
    ));
    Ok(checks)
}

/// The product set `G₊ × G₋`; pair `(x, y)` has index `x·|G₋| + y`.
#[derive(Clone, Debug)]
pub struct BicrossedGroup {
    pub pair: MatchedPairGroup,
    pub total: FiniteGroup,
    pub checks: Vec<Check>,
}

impl BicrossedGroup {
    pub fn index(&self, x: usize, y: usize) -> usize {
        x * self.pair.g_minus.order() + y
    }

    pub fn parts(&self, i: usize) -> (usize, usize) {
        let q = self.pair.g_minus.order();
        (i / q, i % q)
    }

    pub fn order(&self) -> usize {
        self.total.order()
    }
}

pub fn bicrossed_group(mp: &MatchedPairGroup) -> Result<BicrossedGroup> {
    let verify = verify_matched_pair_group(mp)?;
    if let Some(bad) = verify.iter().find(|c| !c.holds) {
        return Err(Error::Invalid(format!(
            "matched pair fails {}: {}",
            bad.name,
            bad.witness.clone().unwrap_or_default()
        )));
    }
    let (p, q) = (mp.g_plus.order(), mp.g_minus.order());
    let n = p * q;
    let table: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (x, y) = mp.product((i / q, i % q), (j / q, j % q));
                    x * q + y
                })
                .collect()
        })
        .collect();
    let anchor = "bicrossed-group";
    let validity = validate_group(&table)?;
    let mut checks = prefixed("bicrossed", validity.clone());
    if !all_hold(&validity) {
        return Err(Error::Invalid("bicrossed table is not a group".into()));
    }
    let labels = (0..n)
        .map(|i| format!("({},{})", mp.g_plus.label(i / q), mp.g_minus.label(i % q)))
        .collect();
    let total = FiniteGroup::from_valid(labels, table);
    let bad_inverse = (0..n).find(|&i| {
        let (x, y) = mp.stated_inverse((i / q, i % q));
        total.inv(i) != x * q + y
    });
    checks.push(Check::from_witness(
        "inverse-formula",
        anchor,
        bad_inverse.map(|i| total.label(i).to_string()),
    ));
    Ok(BicrossedGroup { pair: mp.clone(), total, checks })
}

/// Matched pair of a Rota-Baxter group with its certificates.
#[derive(Clone, Debug)]
pub struct RbMatchedPairGroup {
    pub pair: MatchedPairGroup,
    pub split: RBGroupSplit,
    pub checks: Vec<Check>,
}

impl RbMatchedPairGroup {
    /// Local pair of parent elements `x ∈ G₊`, `y ∈ G₋`.
    pub fn local(&self, x: usize, y: usize) -> (usize, usize) {
        (
            self.split.g_plus.local(x).expect("element of G₊"),
            self.split.g_minus.local(y).expect("element of G₋"),
        )
    }

    pub fn parent(&self, (x, y): (usize, usize)) -> (usize, usize) {
        (self.split.g_plus.parent(x), self.split.g_minus.parent(y))
    }
}

/// `ρ(B(a))(B̃(b)) = B̃(Ad_{B(a)} b)` and `μ(B̃(a))(B(b)) = B(Ad_{B̃(a)} b)`,
/// checked over every preimage.
pub fn matched_pair_from_rb_group(rbg: &RotaBaxterGroup) -> Result<RbMatchedPairGroup> {
    let g = &rbg.group;
    let n = g.order();
    let split = split_subgroups(rbg)?;
    let b = &rbg.values;
    let bt = &split.b_tilde;
    let (p, q) = (split.g_plus.order(), split.g_minus.order());
    let mut rho = vec![vec![None; q]; p];
    let mut mu = vec![vec![None; p]; q];
    let disagree = |what: &str, x: usize, y: usize| {
        Error::RepresentativeDisagreement(format!("{what}({})({}) depends on the preimage", g.label(x), g.label(y)))
    };
    for a in 0..n {
        for c in 0..n {
            let (x, y) = (split.g_plus.local(b[a]).expect("image"), split.g_minus.local(bt[c]).expect("image"));
            let val = split.g_minus.local(bt[g.ad(b[a], c)]).expect("image");
            match rho[x][y] {
                None => rho[x][y] = Some(val),
                Some(v) if v != val => return Err(disagree("ρ", b[a], bt[c])),
                _ => {}
            }
            let (y2, x2) = (split.g_minus.local(bt[a]).expect("image"), split.g_plus.local(b[c]).expect("image"));
            let val = split.g_plus.local(b[g.ad(bt[a], c)]).expect("image");
            match mu[y2][x2] {
                None => mu[y2][x2] = Some(val),
                Some(v) if v != val => return Err(disagree("μ", bt[a], b[c])),
                _ => {}
            }
        }
    }
    let fill = |t: Vec<Vec<Option<usize>>>| -> Vec<Vec<usize>> {
        t.into_iter().map(|r| r.into_iter().map(|v| v.expect("every pair is reached")).collect()).collect()
    };
    let pair = MatchedPairGroup {
        g_plus: split.g_plus.induced.clone(),
        g_minus: split.g_minus.induced.clone(),
        rho: fill(rho),
        mu: fill(mu),
    };
    let mut checks = vec![Check::pass("representative-independence", "rota-baxter-group-matched-pair")];
    checks.extend(split.checks.iter().cloned());
    checks.extend(verify_matched_pair_group(&pair)?);
    Ok(RbMatchedPairGroup { pair, split, checks })
}

/// Idempotent endomorphism of the total group, and hence a Rota-Baxter
/// operator on it.
pub fn group_projection_check(bc: &BicrossedGroup, c: &[usize]) -> Result<Vec<Check>> {
    let t = &bc.total;
    check_map(t, t, c)?;
    let anchor = "group-projection";
    Ok(vec![
        Check::from_witness(
            "idempotent",
            anchor,
            (0..t.order()).find(|&x| c[c[x]] != c[x]).map(|x| t.label(x).to_string()),
        ),
        hom_check(t, t, c, "endomorphism", anchor),
        rb_group_check(t, c, "projection-rota-baxter", anchor),
    ])
}

#[derive(Clone, Debug)]
pub struct TmgProjections {
    pub matched: RbMatchedPairGroup,
    pub bicrossed: BicrossedGroup,
    pub c_hat: Vec<usize>,
    pub c_tilde: Vec<usize>,
    pub checks: Vec<Check>,
}

/// `Ĉ((B(a),B̃(b))) = (B(B(a)⁻¹B̃(b)⁻¹)⁻¹, B̃(B̃(b)B(a)))` and
/// `C̃((B(a),B̃(b))) = (B(B̃(b)B̃(a⁻¹))⁻¹, B̃(B(a)⁻¹B(b⁻¹)⁻¹))`.
pub fn projections_tmg(rbg: &RotaBaxterGroup) -> Result<TmgProjections> {
    let matched = matched_pair_from_rb_group(rbg)?;
    let bicrossed = bicrossed_group(&matched.pair)?;
    let g = &rbg.group;
    let n = g.order();
    let b = &rbg.values;
    let bt = &matched.split.b_tilde;
    let inv = |a| g.inv(a);
    let m = bicrossed.order();
    let mut c_hat = vec![None; m];
    let mut c_tilde = vec![None; m];
    let idx = |x: usize, y: usize| {
        let (lx, ly) = matched.local(x, y);
        bicrossed.index(lx, ly)
    };
    for a in 0..n {
        for c in 0..n {
            let key = idx(b[a], bt[c]);
            let hat = idx(inv(b[g.mul(inv(b[a]), inv(bt[c]))]), bt[g.mul(bt[c], b[a])]);
            let tilde = idx(inv(b[g.mul(bt[c], bt[inv(a)])]), bt[g.mul(inv(b[a]), inv(b[inv(c)]))]);
            for (table, val, name) in [(&mut c_hat, hat, "Ĉ"), (&mut c_tilde, tilde, "C̃")] {
                match table[key] {
                    None => table[key] = Some(val),
                    Some(v) if v != val => {
                        return Err(Error::RepresentativeDisagreement(format!(
                            "{name} at {} from preimages ({}, {})",
                            bicrossed.total.label(key),
                            g.label(a),
                            g.label(c)
                        )))
                    }
                    _ => {}
                }
            }
        }
    }
    let c_hat: Vec<usize> = c_hat.into_iter().map(|v| v.expect("covered")).collect();
    let c_tilde: Vec<usize> = c_tilde.into_iter().map(|v| v.expect("covered")).collect();

    let t = &bicrossed.total;
    let anchor = "group-projections";
    let mut checks = vec![Check::pass("projections-well-defined", anchor)];
    checks.extend(prefixed("c-hat", group_projection_check(&bicrossed, &c_hat)?));
    checks.extend(prefixed("c-tilde", group_projection_check(&bicrossed, &c_tilde)?));
    checks.push(Check::from_witness(
        "factorization",
        anchor,
        (0..m).find(|&x| t.mul(c_hat[x], c_tilde[x]) != x).map(|x| t.label(x).to_string()),
    ));
    let im_hat = image(&c_hat);
    let im_tilde = image(&c_tilde);
    let commute = im_hat
        .iter()
        .flat_map(|&x| im_tilde.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| t.mul(x, y) != t.mul(y, x));
    checks.push(Check::from_witness(
        "images-commute",
        anchor,
        commute.map(|(x, y)| format!("({}, {})", t.label(x), t.label(y))),
    ));
    // (B(a)⁻¹, B̃(a⁻¹)) commutes with (B(B̃(b))⁻¹, B̃(B(b⁻¹)⁻¹))
    let c3 = (0..n)
        .flat_map(|a| (0..n).map(move |c| (a, c)))
        .find(|&(a, c)| {
            let x = idx(inv(b[a]), bt[inv(a)]);
            let y = idx(inv(b[bt[c]]), bt[inv(b[inv(c)])]);
            t.mul(x, y) != t.mul(y, x)
        });
    checks.push(Check::from_witness(
        "family-commutation",
        "commuting-families",
        c3.map(|(a, c)| format!("({}, {})", g.label(a), g.label(c))),
    ));
    Ok(TmgProjections { matched, bicrossed, c_hat, c_tilde, checks })
}

fn image(values: &[usize]) -> Vec<usize> {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Operators on `ker C` (values in local kernel indices).
#[derive(Clone, Debug)]
pub struct GroupProjectionOperators {
    pub kernel: SubgroupStruct,
    pub b: RotaBaxterGroup,
    pub b_tilde: RotaBaxterGroup,
    pub checks: Vec<Check>,
}

/// `B((a,b)) = C̃((a,e))` and `B̃((a,b)) = C̃((e,b))` on `ker C`, with the
/// complement `C̃(x) = C(x)⁻¹x`.
pub fn rb_from_group_projection(bc: &BicrossedGroup, c: &[usize]) -> Result<GroupProjectionOperators> {
    let proj = group_projection_check(bc, c)?;
    if !proj[0].holds || !proj[1].holds {
        return Err(Error::Invalid("map is not a group projection".into()));
    }
    let t = &bc.total;
    let comp = |x: usize| t.mul(t.inv(c[x]), x);
    let kernel_members: Vec<usize> = (0..t.order()).filter(|&x| c[x] == 0).collect();
    let kernel = subgroup(t, &kernel_members)?;
    let build = |first: bool| -> Result<Vec<usize>> {
        kernel
            .members
            .iter()
            .map(|&w| {
                let (x, y) = bc.parts(w);
                let arg = if first { bc.index(x, 0) } else { bc.index(0, y) };
                let img = comp(arg);
                kernel.local(img).ok_or_else(|| Error::ImageEscapesKernel(t.label(img).to_string()))
            })
            .collect()
    };
    let bv = build(true)?;
    let btv = build(false)?;
    let k = &kernel.induced;
    let anchor = "projection-operators";
    let mut checks = proj;
    checks.push(rb_group_check(k, &bv, "operator-rota-baxter", anchor));
    checks.push(rb_group_check(k, &btv, "companion-rota-baxter", anchor));
    Ok(GroupProjectionOperators {
        b: RotaBaxterGroup { group: k.clone(), values: bv },
        b_tilde: RotaBaxterGroup { group: k.clone(), values: btv },
        kernel,
        checks,
    })
}

#[derive(Clone, Debug)]
pub struct GroupIsoCertificate {
    pub source_order: usize,
    pub target_order: usize,
    /// Source element ↦ local index in the target subgroup.
    pub map: Vec<usize>,
    /// Operator on the target subgroup, local indices.
    pub target_operator: Vec<usize>,
    pub checks: Vec<Check>,
}

/// Target subgroup `im P` with operator `x ↦ P(pick(x))`, `pick` zeroing one
/// coordinate.
fn image_operator(
    bc: &BicrossedGroup,
    proj: &[usize],
    keep_first: bool,
) -> Result<(SubgroupStruct, Vec<usize>, Option<String>)> {
    let sub = subgroup(&bc.total, &image(proj))?;
    let mut escape = None;
    let op = sub
        .members
        .iter()
        .map(|&w| {
            let (x, y) = bc.parts(w);
            let arg = if keep_first { bc.index(x, 0) } else { bc.index(0, y) };
            sub.local(proj[arg]).unwrap_or_else(|| {
                escape.get_or_insert_with(|| bc.total.label(w).to_string());
                0
            })
        })
        .collect();
    Ok((sub, op, escape))
}

/// `π(ā) = (B(B̃(a⁻¹))⁻¹, B̃(B(a)⁻¹))` from `(G_B/⟨H₊H₋⟩, B̄)` onto
/// `(im C̃, B₂)` with `B₂((a,b)) = C̃((e,b))`.
pub fn iso_g2_quotient_group(rbg: &RotaBaxterGroup) -> Result<GroupIsoCertificate> {
    let tmg = projections_tmg(rbg)?;
    iso_g2_from(rbg, &tmg)
}

fn iso_g2_from(rbg: &RotaBaxterGroup, tmg: &TmgProjections) -> Result<GroupIsoCertificate> {
    let g = &rbg.group;
    let b = &rbg.values;
    let bt = &tmg.matched.split.b_tilde;
    let bc = &tmg.bicrossed;
    let t = &bc.total;
    let quot = quotient_rb_group(rbg)?;
    let qg = &quot.quotient.group;
    let (g2, b2, escape) = image_operator(bc, &tmg.c_tilde, false)?;
    let anchor = "group-quotient-isomorphism";
    let mut checks = quot.checks.clone();
    checks.push(Check::from_witness("target-operator-lands", anchor, escape));
    checks.push(rb_group_check(&g2.induced, &b2, "target-rota-baxter", anchor));

    let pi = |a: usize| {
        let (x, y) = tmg.matched.local(g.inv(b[bt[g.inv(a)]]), bt[g.inv(b[a])]);
        bc.index(x, y)
    };
    let m = qg.order();
    let mut map_total = vec![None; m];
    let mut clash = None;
    for a in 0..g.order() {
        let c = quot.quotient.projection[a];
        match map_total[c] {
            None => map_total[c] = Some(pi(a)),
            Some(v) if v != pi(a) && clash.is_none() => clash = Some(qg.label(c).to_string()),
            _ => {}
        }
    }
    checks.push(Check::from_witness("map-well-defined", anchor, clash));
    let map_total: Vec<usize> = map_total.into_iter().map(|v| v.expect("nonempty coset")).collect();
    let outside = map_total.iter().find(|&&w| !g2.contains(w));
    checks.push(Check::from_witness("map-lands-in-image", anchor, outside.map(|&w| t.label(w).to_string())));
    let map: Vec<usize> = map_total.iter().map(|&w| g2.local(w).unwrap_or(0)).collect();
    let distinct = image(&map).len();
    checks.push(Check::from_bool("map-bijective", anchor, distinct == m && m == g2.order(), || {
        format!("{distinct} distinct images, quotient order {m}, target order {}", g2.order())
    }));
    checks.push(hom_check(qg, &g2.induced, &map, "map-homomorphism", anchor));
    let bar = &quot.operator.values;
    checks.push(Check::from_witness(
        "intertwines-operators",
        anchor,
        (0..m).find(|&c| map[bar[c]] != b2[map[c]]).map(|c| qg.label(c).to_string()),
    ));
    Ok(GroupIsoCertificate { source_order: m, target_order: g2.order(), map, target_operator: b2, checks })
}

/// `π(a) = (B(a⁻¹)⁻¹, B̃(a))` from `(G, B)` onto `(im Ĉ, B₁)` with
/// `B₁((a,b)) = Ĉ((a,e))`.
pub fn iso_g1_group(rbg: &RotaBaxterGroup) -> Result<GroupIsoCertificate> {
    let tmg = projections_tmg(rbg)?;
    iso_g1_from(rbg, &tmg)
}

fn iso_g1_from(rbg: &RotaBaxterGroup, tmg: &TmgProjections) -> Result<GroupIsoCertificate> {
    let g = &rbg.group;
    let n = g.order();
    let b = &rbg.values;
    let bt = &tmg.matched.split.b_tilde;
    let bc = &tmg.bicrossed;
    let t = &bc.total;
    let (g1, b1, escape) = image_operator(bc, &tmg.c_hat, true)?;
    let anchor = "group-image-isomorphism";
    let mut checks = vec![Check::from_witness("target-operator-lands", anchor, escape)];
    checks.push(rb_group_check(&g1.induced, &b1, "target-rota-baxter", anchor));
    let pi_total: Vec<usize> = (0..n)
        .map(|a| {
            let (x, y) = tmg.matched.local(g.inv(b[g.inv(a)]), bt[a]);
            bc.index(x, y)
        })
        .collect();
    let outside = pi_total.iter().find(|&&w| !g1.contains(w));
    checks.push(Check::from_witness("map-lands-in-image", anchor, outside.map(|&w| t.label(w).to_string())));
    let map: Vec<usize> = pi_total.iter().map(|&w| g1.local(w).unwrap_or(0)).collect();
    let distinct = image(&map).len();
    checks.push(Check::from_bool("map-bijective", anchor, distinct == n && n == g1.order(), || {
        format!("{distinct} distinct images, order {n}, target order {}", g1.order())
    }));
    checks.push(hom_check(g, &g1.induced, &map, "map-homomorphism", anchor));
    checks.push(Check::from_witness(
        "intertwines-operators",
        anchor,
        (0..n).find(|&a| map[b[a]] != b1[map[a]]).map(|a| g.label(a).to_string()),
    ));
    Ok(GroupIsoCertificate { source_order: n, target_order: g1.order(), map, target_operator: b1, checks })
}

/// Restrictions of a Rota-Baxter group homomorphism to the images form a
/// homomorphism of matched pairs.
pub fn induced_mpg_homomorphism(src: &RotaBaxterGroup, dst: &RotaBaxterGroup, f: &[usize]) -> Result<Vec<Check>> {
    let (g, h) = (&src.group, &dst.group);
    check_map(g, h, f)?;
    let anchor = "group-matched-pair-homomorphism";
    let mut checks = vec![hom_check(g, h, f, "group-homomorphism", anchor)];
    checks.push(Check::from_witness(
        "operator-compatibility",
        anchor,
        (0..g.order()).find(|&a| f[src.values[a]] != dst.values[f[a]]).map(|a| g.label(a).to_string()),
    ));
    if !all_hold(&checks) {
        return Err(Error::Invalid("map is not a Rota-Baxter group homomorphism".into()));
    }
    let a = matched_pair_from_rb_group(src)?;
    let b = matched_pair_from_rb_group(dst)?;
    let restrict = |from: &SubgroupStruct, to: &SubgroupStruct, side: &str| -> Result<Vec<usize>> {
        from.members
            .iter()
            .map(|&x| to.local(f[x]).ok_or_else(|| Error::RestrictionEscapes(format!("{side}: {}", g.label(x)))))
            .collect()
    };
    let fp = restrict(&a.split.g_plus, &b.split.g_plus, "G₊")?;
    let fm = restrict(&a.split.g_minus, &b.split.g_minus, "G₋")?;
    checks.push(hom_check(&a.pair.g_plus, &b.pair.g_plus, &fp, "plus-restriction-homomorphism", anchor));
    checks.push(hom_check(&a.pair.g_minus, &b.pair.g_minus, &fm, "minus-restriction-homomorphism", anchor));
    let (p, q) = (a.pair.g_plus.order(), a.pair.g_minus.order());
    let pairs = || (0..p).flat_map(move |x| (0..q).map(move |y| (x, y)));
    let lbl = |x: usize, y: usize| format!("({}, {})", a.pair.g_plus.label(x), a.pair.g_minus.label(y));
    checks.push(Check::from_witness(
        "mu-equivariance",
        anchor,
        pairs().find(|&(x, y)| fp[a.pair.mu[y][x]] != b.pair.mu[fm[y]][fp[x]]).map(|(x, y)| lbl(x, y)),
    ));
    checks.push(Check::from_witness(
        "rho-equivariance",
        anchor,
        pairs().find(|&(x, y)| fm[a.pair.rho[x][y]] != b.pair.rho[fp[x]][fm[y]]).map(|(x, y)| lbl(x, y)),
    ));
    Ok(checks)
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupDecompositionReport {
    pub group_order: usize,
    pub bicrossed_order: usize,
    pub g1_order: usize,
    pub g2_order: usize,
    pub intersection_order: usize,
    pub quotient_order: usize,
    pub convention: String,
    pub certificates: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<Check>,
}

impl GroupDecompositionReport {
    pub fn all_hold(&self) -> bool {
        all_hold(&self.certificates)
    }
}

/// The whole chain for one operator: lemma suite, matched pair, bicrossed
/// group, both projections, the operators recovered from `Ĉ` and the
/// quotient isomorphism. The image-side isomorphism and the operators
/// recovered from `C̃` are evaluated as findings.
pub fn group_decomposition(rbg: &RotaBaxterGroup) -> Result<GroupDecompositionReport> {
    let lemmas = lemma_suite_group(rbg);
    let tmg = projections_tmg(rbg)?;
    let mut certificates = lemmas.checks;
    certificates.extend(tmg.matched.checks.iter().cloned());
    certificates.extend(tmg.bicrossed.checks.iter().cloned());
    certificates.extend(tmg.checks.iter().cloned());
    let from_hat = rb_from_group_projection(&tmg.bicrossed, &tmg.c_hat)?;
    certificates.extend(prefixed("c-hat-kernel", from_hat.checks));
    let g2 = iso_g2_from(rbg, &tmg)?;
    certificates.extend(g2.checks);

    let mut findings = lemmas.findings;
    let g1 = iso_g1_from(rbg, &tmg)?;
    findings.extend(prefixed("image-isomorphism", g1.checks));
    match rb_from_group_projection(&tmg.bicrossed, &tmg.c_tilde) {
        Ok(ops) => findings.extend(prefixed("c-tilde-kernel", ops.checks)),
        Err(e) => findings.push(Check::fail("c-tilde-kernel", "projection-operators", e.to_string())),
    }
    let split = &tmg.matched.split;
    let intersection = split.g_plus.members.iter().filter(|&&x| split.g_minus.contains(x)).count();
    Ok(GroupDecompositionReport {
        group_order: rbg.group.order(),
        bicrossed_order: tmg.bicrossed.order(),
        g1_order: g1.target_order,
        g2_order: g2.target_order,
        intersection_order: intersection,
        quotient_order: g2.source_order,
        convention: GROUP_CONVENTION.to_string(),
        certificates,
        findings,
    })
}

/// [`group_decomposition`] for each operator of a census, in input order.
/// With `jobs > 1` operators are verified on a worker pool.
pub fn census_decompositions(
    g: &FiniteGroup,
    operators: &[Vec<usize>],
    jobs: usize,
) -> Result<Vec<GroupDecompositionReport>> {
    let one = |v: &Vec<usize>| group_decomposition(&RotaBaxterGroup::new(g.clone(), v.clone())?);
    if jobs <= 1 {
        return operators.iter().map(one).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Invalid(format!("worker pool: {e}")))?;
    pool.install(|| operators.par_iter().map(one).collect())
}
