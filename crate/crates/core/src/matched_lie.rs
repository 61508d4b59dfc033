//! Matched pairs of Lie algebras, bicrossed products, the matched pair of a
//! Rota-Baxter operator, Lie algebra projections and the decomposition of a
//! weight −1 bicrossed product into `im C ⊕ im C̃`.
//!
//! Convention: `x ▷ u` is the action of `g₊` on `g₋` and `u ▶ x` the action of
//! `g₋` on `g₊`. The bicrossed bracket on `g₊ ⊕ g₋` is
//! `[(x,u),(y,v)] = ([x,y] + u▶y − v▶x, [u,v] + x▷v − y▷u)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{hom_check, induced_subalgebra, EmbeddedSubalgebra, LieAlgebra, LieHom};
use crate::linalg::{
    concat, image_and_kernel, is_zero_vec, solve_linear, unit_vec, vec_add, vec_neg, vec_scale,
    vec_sub, zero_vec, Matrix, Rational, Subspace, Vector,
};
use crate::rb_lie::{
    check_rb_homomorphism, projection_along, quotient_rb, rb_identity_check, split_subalgebras,
    RBSplit, RotaBaxterLie,
};
use crate::report::{all_hold, Check};

/// Human-readable statement of the sign and action conventions in force.
pub const CONVENTION: &str = "[(x,u),(y,v)] = ([x,y] + u▶y - v▶x, [u,v] + x▷v - y▷u) with x▷u in g- and u▶x in g+; \
from a split g = a ⊕ b: x▷u = p-[x,u], u▶x = p+[u,x]";

/// Two Lie algebras acting on each other.
///
/// `rhd[i][a]` holds `x_i ▷ u_a` in `g₋` coordinates and `brhd[a][i]` holds
/// `u_a ▶ x_i` in `g₊` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPairLie {
    pub g_plus: LieAlgebra,
    pub g_minus: LieAlgebra,
    pub rhd: Vec<Vec<Vector>>,
    pub brhd: Vec<Vec<Vector>>,
}

impl MatchedPairLie {
    pub fn new(
        g_plus: LieAlgebra,
        g_minus: LieAlgebra,
        rhd: Vec<Vec<Vector>>,
        brhd: Vec<Vec<Vector>>,
    ) -> Result<Self> {
        let mp = Self { g_plus, g_minus, rhd, brhd };
        mp.check_shape()?;
        Ok(mp)
    }

    /// Both actions zero; the bicrossed product is the direct sum.
    pub fn trivial(g_plus: LieAlgebra, g_minus: LieAlgebra) -> Self {
        let (p, q) = (g_plus.dim(), g_minus.dim());
        Self {
            rhd: vec![vec![zero_vec(q); q]; p],
            brhd: vec![vec![zero_vec(p); p]; q],
            g_plus,
            g_minus,
        }
    }

    pub fn p(&self) -> usize {
        self.g_plus.dim()
    }

    pub fn q(&self) -> usize {
        self.g_minus.dim()
    }

    fn check_shape(&self) -> Result<()> {
        let (p, q) = (self.p(), self.q());
        let ok = self.rhd.len() == p
            && self.rhd.iter().all(|r| r.len() == q && r.iter().all(|v| v.len() == q))
            && self.brhd.len() == q
            && self.brhd.iter().all(|r| r.len() == p && r.iter().all(|v| v.len() == p));
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "action tensors do not match dimensions ({p}, {q})"
            )))
        }
    }

    /// `x ▷ u`
    pub fn act_plus(&self, x: &[Rational], u: &[Rational]) -> Vector {
        let mut out = zero_vec(self.q());
        for (i, xi) in x.iter().enumerate() {
            for (a, ua) in u.iter().enumerate() {
                if xi.is_zero() || ua.is_zero() {
                    continue;
                }
                out = vec_add(&out, &vec_scale(&self.rhd[i][a], &(xi * ua)));
            }
        }
        out
    }

    /// `u ▶ x`
    pub fn act_minus(&self, u: &[Rational], x: &[Rational]) -> Vector {
        let mut out = zero_vec(self.p());
        for (a, ua) in u.iter().enumerate() {
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() || ua.is_zero() {
                    continue;
                }
                out = vec_add(&out, &vec_scale(&self.brhd[a][i], &(xi * ua)));
            }
        }
        out
    }

    /// Bicrossed bracket on concatenated `(g₊, g₋)` coordinates.
    pub fn bracket(&self, left: &[Rational], right: &[Rational]) -> Vector {
        let p = self.p();
        let (x, u) = left.split_at(p);
        let (y, v) = right.split_at(p);
        let first = vec_sub(
            &vec_add(&self.g_plus.bracket(x, y), &self.act_minus(u, y)),
            &self.act_minus(v, x),
        );
        let second = vec_sub(
            &vec_add(&self.g_minus.bracket(u, v), &self.act_plus(x, v)),
            &self.act_plus(y, u),
        );
        concat(&first, &second)
    }

    fn plus_label(&self, i: usize) -> &str {
        self.g_plus.label(i)
    }

    fn minus_label(&self, a: usize) -> &str {
        self.g_minus.label(a)
    }
}

/// Representation axioms and the two compatibility conditions on all basis
/// triples.
pub fn verify_matched_pair(mp: &MatchedPairLie) -> Result<Vec<Check>> {
    mp.check_shape()?;
    let (p, q) = (mp.p(), mp.q());
    let ep = |i| unit_vec(p, i);
    let eq = |a| unit_vec(q, a);
    let mut checks = Vec::new();

    checks.push(mp.g_plus.check_jacobi().renamed("g-plus-jacobi", "matched-pair"));
    checks.push(mp.g_minus.check_jacobi().renamed("g-minus-jacobi", "matched-pair"));

    // [x, y] ▷ u = x ▷ (y ▷ u) − y ▷ (x ▷ u)
    let mut w = None;
    'rhd: for i in 0..p {
        for j in i + 1..p {
            for a in 0..q {
                let lhs = mp.act_plus(&mp.g_plus.basis_bracket(i, j), &eq(a));
                let rhs = vec_sub(
                    &mp.act_plus(&ep(i), &mp.act_plus(&ep(j), &eq(a))),
                    &mp.act_plus(&ep(j), &mp.act_plus(&ep(i), &eq(a))),
                );
                if lhs != rhs {
                    w = Some(format!("({}, {}, {})", mp.plus_label(i), mp.plus_label(j), mp.minus_label(a)));
                    break 'rhd;
                }
            }
        }
    }
    checks.push(Check::from_witness("plus-action-representation", "matched-pair", w));

    let mut w = None;
    'brhd: for a in 0..q {
        for b in a + 1..q {
            for i in 0..p {
                let lhs = mp.act_minus(&mp.g_minus.basis_bracket(a, b), &ep(i));
                let rhs = vec_sub(
                    &mp.act_minus(&eq(a), &mp.act_minus(&eq(b), &ep(i))),
                    &mp.act_minus(&eq(b), &mp.act_minus(&eq(a), &ep(i))),
                );
                if lhs != rhs {
                    w = Some(format!("({}, {}, {})", mp.minus_label(a), mp.minus_label(b), mp.plus_label(i)));
                    break 'brhd;
                }
            }
        }
    }
    checks.push(Check::from_witness("minus-action-representation", "matched-pair", w));

    // x ▷ [u,v] = [x▷u, v] + [u, x▷v] + (v▶x)▷u − (u▶x)▷v
    let mut w = None;
    'mp1: for i in 0..p {
        for a in 0..q {
            for b in a + 1..q {
                let (x, u, v) = (ep(i), eq(a), eq(b));
                let lhs = mp.act_plus(&x, &mp.g_minus.basis_bracket(a, b));
                let rhs = vec_sub(
                    &vec_add(
                        &vec_add(
                            &mp.g_minus.bracket(&mp.act_plus(&x, &u), &v),
                            &mp.g_minus.bracket(&u, &mp.act_plus(&x, &v)),
                        ),
                        &mp.act_plus(&mp.act_minus(&v, &x), &u),
                    ),
                    &mp.act_plus(&mp.act_minus(&u, &x), &v),
                );
                if lhs != rhs {
                    w = Some(format!("({}, {}, {})", mp.plus_label(i), mp.minus_label(a), mp.minus_label(b)));
                    break 'mp1;
                }
            }
        }
    }
    checks.push(Check::from_witness("mp1", "matched-pair-compatibility", w));

    // u ▶ [x,y] = [u▶x, y] + [x, u▶y] + (y▷u)▶x − (x▷u)▶y
    let mut w = None;
    'mp2: for a in 0..q {
        for i in 0..p {
            for j in i + 1..p {
                let (u, x, y) = (eq(a), ep(i), ep(j));
                let lhs = mp.act_minus(&u, &mp.g_plus.basis_bracket(i, j));
                let rhs = vec_sub(
                    &vec_add(
                        &vec_add(
                            &mp.g_plus.bracket(&mp.act_minus(&u, &x), &y),
                            &mp.g_plus.bracket(&x, &mp.act_minus(&u, &y)),
                        ),
                        &mp.act_minus(&mp.act_plus(&y, &u), &x),
                    ),
                    &mp.act_minus(&mp.act_plus(&x, &u), &y),
                );
                if lhs != rhs {
                    w = Some(format!("({}, {}, {})", mp.minus_label(a), mp.plus_label(i), mp.plus_label(j)));
                    break 'mp2;
                }
            }
        }
    }
    checks.push(Check::from_witness("mp2", "matched-pair-compatibility", w));
    Ok(checks)
}

/// The Lie algebra on `g₊ ⊕ g₋` built from a matched pair.
#[derive(Clone, Debug)]
pub struct BicrossedLie {
    pub pair: MatchedPairLie,
    pub total: LieAlgebra,
    pub checks: Vec<Check>,
}

impl BicrossedLie {
    pub fn dim(&self) -> usize {
        self.total.dim()
    }
}

pub fn bicrossed_product(mp: &MatchedPairLie) -> Result<BicrossedLie> {
    let verify = verify_matched_pair(mp)?;
    if let Some(bad) = verify.iter().find(|c| !c.holds) {
        return Err(Error::Invalid(format!(
            "matched pair fails {}: {}",
            bad.name,
            bad.witness.clone().unwrap_or_default()
        )));
    }
    let (p, q) = (mp.p(), mp.q());
    let n = p + q;
    let mut labels: Vec<String> = mp.g_plus.labels().iter().map(|l| format!("({l},0)")).collect();
    labels.extend(mp.g_minus.labels().iter().map(|l| format!("(0,{l})")));
    let total = LieAlgebra::from_bilinear(labels, |i, j| mp.bracket(&unit_vec(n, i), &unit_vec(n, j)));

    let mut checks = total.validate().into_iter().map(|c| {
        let name = format!("bicrossed-{}", c.name);
        c.renamed(name, "bicrossed-product")
    }).collect::<Vec<_>>();
    let embed_plus = Matrix::identity(n).select_rows(&(0..p).collect::<Vec<_>>()).transpose();
    let embed_minus = Matrix::identity(n).select_rows(&(p..n).collect::<Vec<_>>()).transpose();
    checks.push(hom_check(&mp.g_plus, &total, &embed_plus, "g-plus-embedding", "bicrossed-product"));
    checks.push(hom_check(&mp.g_minus, &total, &embed_minus, "g-minus-embedding", "bicrossed-product"));
    Ok(BicrossedLie { pair: mp.clone(), total, checks })
}

/// Matched pair of a Rota-Baxter operator with its certificates.
#[derive(Clone, Debug)]
pub struct RbMatchedPair {
    pub pair: MatchedPairLie,
    pub split: RBSplit,
    pub checks: Vec<Check>,
}

impl RbMatchedPair {
    /// Concatenated coordinates of `(x, u)` for ambient `x ∈ g₊`, `u ∈ g₋`.
    pub fn to_pair_coords(&self, x: &[Rational], u: &[Rational]) -> Option<Vector> {
        Some(concat(&self.split.g_plus.coords(x)?, &self.split.g_minus.coords(u)?))
    }

    /// Ambient vectors `(x, u)` of concatenated coordinates.
    pub fn to_ambient(&self, w: &[Rational]) -> (Vector, Vector) {
        let p = self.pair.p();
        (self.split.g_plus.embed(&w[..p]), self.split.g_minus.embed(&w[p..]))
    }
}

fn preimage(m: &Matrix, v: &[Rational]) -> Result<Vector> {
    solve_linear(m, v)?
        .ok_or_else(|| Error::Invalid("image vector has no preimage".into()))
}

/// `B(x) ▷ B̃(y) = B̃([B(x), y])` and `B̃(x) ▶ B(y) = B([B̃(x), y])`, in the
/// echelon bases of `g₊ = im B` and `g₋ = im B̃`.
pub fn matched_pair_from_rb(rb: &RotaBaxterLie) -> Result<RbMatchedPair> {
    if rb.weight.is_zero() {
        return Err(Error::WeightUnsupported(rb.weight.to_string()));
    }
    let g = &rb.algebra;
    let split = split_subalgebras(rb)?;
    let b = &rb.operator;
    let bt = &split.b_tilde;
    let plus = split.g_plus.space.basis_vectors();
    let minus = split.g_minus.space.basis_vectors();
    let minus_pre: Vec<Vector> = minus.iter().map(|u| preimage(bt, u)).collect::<Result<_>>()?;
    let plus_pre: Vec<Vector> = plus.iter().map(|x| preimage(b, x)).collect::<Result<_>>()?;
    let ker_b = split.h_minus.basis_vectors();
    let ker_t = split.h_plus.basis_vectors();

    let escape = |what: &str| Error::Invalid(format!("{what} leaves its subalgebra"));
    let mut rhd = Vec::with_capacity(plus.len());
    for x in &plus {
        let mut row = Vec::with_capacity(minus.len());
        for (u, z) in minus.iter().zip(&minus_pre) {
            let val = bt.apply(&g.bracket(x, z));
            for k in &ker_t {
                let alt = bt.apply(&g.bracket(x, &vec_add(z, k)));
                if alt != val {
                    return Err(Error::RepresentativeDisagreement(format!(
                        "{} ▷ {} changes with the preimage",
                        g.describe(x),
                        g.describe(u)
                    )));
                }
            }
            row.push(split.g_minus.coords(&val).ok_or_else(|| escape("▷"))?);
        }
        rhd.push(row);
    }
    let mut brhd = Vec::with_capacity(minus.len());
    for u in &minus {
        let mut row = Vec::with_capacity(plus.len());
        for (x, y) in plus.iter().zip(&plus_pre) {
            let val = b.apply(&g.bracket(u, y));
            for k in &ker_b {
                let alt = b.apply(&g.bracket(u, &vec_add(y, k)));
                if alt != val {
                    return Err(Error::RepresentativeDisagreement(format!(
                        "{} ▶ {} changes with the preimage",
                        g.describe(u),
                        g.describe(x)
                    )));
                }
            }
            row.push(split.g_plus.coords(&val).ok_or_else(|| escape("▶"))?);
        }
        brhd.push(row);
    }
    let pair = MatchedPairLie::new(
        split.g_plus.induced.clone(),
        split.g_minus.induced.clone(),
        rhd,
        brhd,
    )?;
    let mut checks = vec![Check::pass("representative-independence", "rota-baxter-matched-pair")];
    checks.extend(split.checks.iter().cloned());
    checks.extend(verify_matched_pair(&pair)?);
    Ok(RbMatchedPair { pair, split, checks })
}

/// Actions `x ▷ u = p₋[x,u]`, `u ▶ x = p₊[u,x]` of a split `g = a ⊕ b`.
pub fn matched_pair_from_decomposition(
    g: &LieAlgebra,
    a: &Subspace,
    b: &Subspace,
) -> Result<MatchedPairLie> {
    let not_sub = |e: Error| Error::NotSubalgebra(e.to_string());
    let sa = induced_subalgebra(g, a).map_err(not_sub)?;
    let sb = induced_subalgebra(g, b).map_err(not_sub)?;
    let p_plus = projection_along(a, b)?;
    let p_minus = projection_along(b, a)?;
    let (xa, ub) = (a.basis_vectors(), b.basis_vectors());
    let coords = |s: &EmbeddedSubalgebra, v: Vector| s.coords(&v).expect("projection lands in its image");
    let rhd = xa
        .iter()
        .map(|x| ub.iter().map(|u| coords(&sb, p_minus.apply(&g.bracket(x, u)))).collect())
        .collect();
    let brhd = ub
        .iter()
        .map(|u| xa.iter().map(|x| coords(&sa, p_plus.apply(&g.bracket(u, x)))).collect())
        .collect();
    MatchedPairLie::new(sa.induced, sb.induced, rhd, brhd)
}

/// `(x, u) ↦ x + u` from the bicrossed product of a split back to `g` is a
/// bijective Lie homomorphism.
pub fn split_isomorphism_check(g: &LieAlgebra, a: &Subspace, b: &Subspace) -> Result<Vec<Check>> {
    let mp = matched_pair_from_decomposition(g, a, b)?;
    let bc = bicrossed_product(&mp)?;
    let mut cols = a.basis_vectors();
    cols.extend(b.basis_vectors());
    let m = Matrix::from_cols(cols, g.dim())?;
    Ok(vec![
        Check::from_bool("sum-map-bijective", "split-round-trip", m.rank() == g.dim() && m.is_square(), || {
            format!("rank {} in dimension {}", m.rank(), g.dim())
        }),
        hom_check(&bc.total, g, &m, "sum-map-homomorphism", "split-round-trip"),
    ])
}

/// Matrix of `x ↦ (B(x), B̃(x))` into bicrossed coordinates.
fn diagonal_map(rb: &RotaBaxterLie, rmp: &RbMatchedPair) -> Matrix {
    let n = rb.dim();
    let cols: Vec<Vector> = (0..n)
        .map(|i| {
            let x = unit_vec(n, i);
            rmp.to_pair_coords(&rb.apply(&x), &rmp.split.b_tilde.apply(&x)).expect("images lie in g±")
        })
        .collect();
    Matrix::from_cols(cols, rmp.pair.p() + rmp.pair.q()).expect("uniform lengths")
}

/// The bracket of diagonal elements, and the general bracket formula on
/// elements `(B(x₁), B̃(x₂))`.
pub fn diagonal_embedding_check(rb: &RotaBaxterLie, rmp: &RbMatchedPair) -> Vec<Check> {
    let g = &rb.algebra;
    let n = g.dim();
    let bt = &rmp.split.b_tilde;
    let mp = &rmp.pair;
    let pair = |x1: &[Rational], x2: &[Rational]| {
        rmp.to_pair_coords(&rb.apply(x1), &bt.apply(x2)).expect("images lie in g±")
    };
    let mut w = None;
    'mpr: for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (unit_vec(n, i), unit_vec(n, j));
            let lhs = mp.bracket(&pair(&x, &x), &pair(&y, &y));
            let br = g.basis_bracket(i, j);
            let rhs = vec_scale(&pair(&br, &br), &-rb.weight.clone());
            if lhs != rhs {
                w = Some(format!("({}, {})", g.label(i), g.label(j)));
                break 'mpr;
            }
        }
    }
    let mpr = Check::from_witness("diagonal-bracket", "diagonal-embedding", w);

    // bilinearity reduces the general formula to x₁, x₂ each a basis vector or zero
    let z = zero_vec(n);
    let mut pieces = Vec::new();
    for i in 0..n {
        pieces.push((unit_vec(n, i), z.clone(), format!("({},0)", g.label(i))));
        pieces.push((z.clone(), unit_vec(n, i), format!("(0,{})", g.label(i))));
    }
    let mut w = None;
    'id1: for (x1, x2, lx) in &pieces {
        for (y1, y2, ly) in &pieces {
            let lhs = mp.bracket(&pair(x1, x2), &pair(y1, y2));
            let (bx1, by1) = (rb.apply(x1), rb.apply(y1));
            let (tx2, ty2) = (bt.apply(x2), bt.apply(y2));
            let first = vec_sub(
                &vec_add(&g.bracket(&bx1, &by1), &rb.apply(&g.bracket(&tx2, y1))),
                &rb.apply(&g.bracket(&ty2, x1)),
            );
            let second = vec_sub(
                &vec_add(&g.bracket(&tx2, &ty2), &bt.apply(&g.bracket(&bx1, y2))),
                &bt.apply(&g.bracket(&by1, x2)),
            );
            let rhs = rmp.to_pair_coords(&first, &second);
            if rhs.as_ref() != Some(&lhs) {
                w = Some(format!("{lx}, {ly}"));
                break 'id1;
            }
        }
    }
    vec![mpr, Check::from_witness("general-bracket", "diagonal-embedding", w)]
}

/// Idempotent and a Lie endomorphism of `total`.
pub fn is_lie_projection(total: &LieAlgebra, c: &Matrix) -> Result<Vec<Check>> {
    let n = total.dim();
    if c.rows() != n || c.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "projection is {}x{}, algebra has dimension {n}",
            c.rows(),
            c.cols()
        )));
    }
    let sq = c.mul(c);
    Ok(vec![
        Check::from_witness(
            "idempotent",
            "lie-projection",
            sq.first_difference(c).map(|(r, k)| format!("entry ({r},{k}) of C² differs from C")),
        ),
        hom_check(total, total, c, "endomorphism", "lie-projection"),
    ])
}

/// The pair of complementary projections on the bicrossed product of a
/// weight −1 operator.
#[derive(Clone, Debug)]
pub struct FlProjections {
    pub matched: RbMatchedPair,
    pub bicrossed: BicrossedLie,
    pub c: Matrix,
    pub c_tilde: Matrix,
    pub checks: Vec<Check>,
}

/// `C((u,v)) = (B(u+v), B̃(u+v))`, `C̃((u,v)) = (B̃u − Bv, Bv − B̃u)`.
pub fn projections_fl(rb: &RotaBaxterLie) -> Result<FlProjections> {
    if !rb.is_weight_minus_one() {
        return Err(Error::WeightUnsupported(rb.weight.to_string()));
    }
    let matched = matched_pair_from_rb(rb)?;
    let bicrossed = bicrossed_product(&matched.pair)?;
    let bt = matched.split.b_tilde.clone();
    let n = bicrossed.dim();
    let mut c_cols = Vec::with_capacity(n);
    let mut ct_cols = Vec::with_capacity(n);
    for k in 0..n {
        let (u, v) = matched.to_ambient(&unit_vec(n, k));
        let s = vec_add(&u, &v);
        c_cols.push(matched.to_pair_coords(&rb.apply(&s), &bt.apply(&s)));
        let d = vec_sub(&bt.apply(&u), &rb.apply(&v));
        ct_cols.push(matched.to_pair_coords(&d, &vec_neg(&d)));
    }
    let lost = || Error::Invalid("projection value leaves g₊ ⊕ g₋".into());
    let c = Matrix::from_cols(c_cols.into_iter().collect::<Option<Vec<_>>>().ok_or_else(lost)?, n)?;
    let c_tilde =
        Matrix::from_cols(ct_cols.into_iter().collect::<Option<Vec<_>>>().ok_or_else(lost)?, n)?;

    let mut checks = Vec::new();
    for (label, m) in [("c", &c), ("c-tilde", &c_tilde)] {
        for chk in is_lie_projection(&bicrossed.total, m)? {
            let name = format!("{label}-{}", chk.name);
            checks.push(chk.renamed(name, "complementary-projections"));
        }
    }
    let id = Matrix::identity(n);
    let zero = Matrix::zeros(n, n);
    checks.push(Check::from_bool("sum-is-identity", "complementary-projections", c.add(&c_tilde) == id, || {
        "C + C̃ differs from the identity".into()
    }));
    checks.push(Check::from_bool("c-then-c-tilde-zero", "complementary-projections", c.mul(&c_tilde) == zero, || {
        "C∘C̃ is not zero".into()
    }));
    checks.push(Check::from_bool("c-tilde-then-c-zero", "complementary-projections", c_tilde.mul(&c) == zero, || {
        "C̃∘C is not zero".into()
    }));
    Ok(FlProjections { matched, bicrossed, c, c_tilde, checks })
}

/// The projections evaluated through representatives: ambient `(C, C̃)`
/// images of `(B(x₁), B̃(x₂))`, each as a `(g₊ part, g₋ part)` pair.
pub fn fl_on_representatives(
    rb: &RotaBaxterLie,
    x1: &[Rational],
    x2: &[Rational],
) -> ((Vector, Vector), (Vector, Vector)) {
    let bt = rb.tilde_matrix();
    let s = vec_add(&rb.apply(x1), &bt.apply(x2));
    let d = vec_sub(x1, x2);
    let c = (rb.apply(&s), bt.apply(&s));
    let ct = (rb.apply(&bt.apply(&d)), vec_neg(&bt.apply(&rb.apply(&d))));
    (c, ct)
}

/// Weight −1 operators on `ker C` recovered from a projection `C`.
#[derive(Clone, Debug)]
pub struct ProjectionOperators {
    pub kernel: EmbeddedSubalgebra,
    pub b: RotaBaxterLie,
    pub b_tilde: RotaBaxterLie,
    pub checks: Vec<Check>,
}

/// `B((x,u)) = C̃((x,0))` and `B̃((x,u)) = C̃((0,u))` on `ker C`, with
/// `C̃ = id − C`.
pub fn rb_from_projection(bc: &BicrossedLie, c: &Matrix) -> Result<ProjectionOperators> {
    let proj = is_lie_projection(&bc.total, c)?;
    if !all_hold(&proj) {
        return Err(Error::Invalid("operator is not a Lie projection".into()));
    }
    let n = bc.dim();
    let p = bc.pair.p();
    let c_tilde = Matrix::identity(n).sub(c);
    let (_, ker) = image_and_kernel(c);
    let kernel = induced_subalgebra(&bc.total, &ker)?;
    let d = kernel.dim();
    let restrict = |keep_plus: bool| -> Result<Matrix> {
        let mut cols = Vec::with_capacity(d);
        for w in ker.basis_vectors() {
            let part: Vector = w
                .iter()
                .enumerate()
                .map(|(k, x)| if (k < p) == keep_plus { x.clone() } else { Rational::zero() })
                .collect();
            let img = c_tilde.apply(&part);
            cols.push(kernel.coords(&img).ok_or_else(|| {
                Error::ImageEscapesKernel(bc.total.describe(&img))
            })?);
        }
        Matrix::from_cols(cols, d)
    };
    let b = restrict(true)?;
    let bt = restrict(false)?;
    let weight = -Rational::one();
    let mut checks = proj;
    checks.push(Check::from_bool("operators-sum-to-identity", "projection-operators", b.add(&bt) == Matrix::identity(d), || {
        "B + B̃ differs from the identity on ker C".into()
    }));
    checks.push(rb_identity_check(&kernel.induced, &b, &weight, "operator-rota-baxter", "projection-operators"));
    checks.push(rb_identity_check(&kernel.induced, &bt, &weight, "companion-rota-baxter", "projection-operators"));
    let algebra = kernel.induced.clone();
    Ok(ProjectionOperators {
        b: RotaBaxterLie { algebra: algebra.clone(), operator: b, weight: weight.clone() },
        b_tilde: RotaBaxterLie { algebra, operator: bt, weight },
        kernel,
        checks,
    })
}

/// Dimensions and certificates of a decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub bicrossed_dim: usize,
    pub g1_dim: usize,
    pub g2_dim: usize,
    pub intersection_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_dim: Option<usize>,
    pub convention: String,
    pub certificates: Vec<Check>,
}

impl DecompositionReport {
    pub fn all_hold(&self) -> bool {
        all_hold(&self.certificates)
    }
}

fn subspace_coords_matrix(sub: &EmbeddedSubalgebra, vectors: &[Vector]) -> Option<Matrix> {
    let cols: Option<Vec<Vector>> = vectors.iter().map(|v| sub.coords(v)).collect();
    Matrix::from_cols(cols?, sub.dim()).ok()
}

/// `g₁ = im C`, `g₂ = im C̃`, the isomorphism onto `g₁ ⊕ g₂` and the shape
/// of `g₂`.
pub fn decompose_bicrossed(rb: &RotaBaxterLie) -> Result<DecompositionReport> {
    let fl = projections_fl(rb)?;
    let total = &fl.bicrossed.total;
    let n = total.dim();
    let mut checks = fl.checks.clone();
    checks.extend(fl.matched.checks.iter().cloned());
    checks.extend(fl.bicrossed.checks.iter().cloned());

    let (im_c, _) = image_and_kernel(&fl.c);
    let (im_ct, _) = image_and_kernel(&fl.c_tilde);
    let g1 = induced_subalgebra(total, &im_c);
    let g2 = induced_subalgebra(total, &im_ct);
    checks.push(Check::from_bool("g1-subalgebra", "projection-images", g1.is_ok(), || format!("{:?}", g1.as_ref().err())));
    checks.push(Check::from_bool("g2-subalgebra", "projection-images", g2.is_ok(), || format!("{:?}", g2.as_ref().err())));
    let (g1, g2) = (g1?, g2?);
    checks.push(Check::from_bool(
        "direct-sum",
        "projection-images",
        g1.dim() + g2.dim() == n && im_c.intersection(&im_ct).dim() == 0,
        || format!("dimensions {} + {} in {n}", g1.dim(), g2.dim()),
    ));
    let cross = im_c.basis_vectors().iter().find_map(|a| {
        im_ct.basis_vectors().iter().find_map(|b| {
            let br = total.bracket(a, b);
            (!is_zero_vec(&br)).then(|| format!("[{}, {}] = {}", total.describe(a), total.describe(b), total.describe(&br)))
        })
    });
    checks.push(Check::from_witness("cross-bracket-vanishes", "projection-images", cross));

    // π(w) = (C w, C̃ w) onto g₁ ⊕ g₂, in the echelon bases of each block
    let cw: Vec<Vector> = (0..n).map(|k| fl.c.col(k)).collect();
    let ctw: Vec<Vector> = (0..n).map(|k| fl.c_tilde.col(k)).collect();
    let pi1 = subspace_coords_matrix(&g1, &cw).expect("C lands in im C");
    let pi2 = subspace_coords_matrix(&g2, &ctw).expect("C̃ lands in im C̃");
    let rows: Vec<Vector> = pi1.row_vectors().into_iter().chain(pi2.row_vectors()).collect();
    let pi = Matrix::from_rows(rows, n)?;
    let sum_alg = g1.induced.direct_sum(&g2.induced);
    checks.push(Check::from_bool("direct-sum-map-bijective", "direct-sum-isomorphism", pi.rank() == n, || {
        format!("rank {} in dimension {n}", pi.rank())
    }));
    checks.push(hom_check(total, &sum_alg, &pi, "direct-sum-map-homomorphism", "direct-sum-isomorphism"));
    let ones = |from: usize, to: usize| -> Matrix {
        Matrix::diagonal(&(0..n).map(|k| if (from..to).contains(&k) { Rational::one() } else { Rational::zero() }).collect::<Vec<_>>())
    };
    let p1 = ones(0, g1.dim());
    let p2 = ones(g1.dim(), n);
    checks.push(Check::from_bool("intertwines-c-with-first-projection", "direct-sum-isomorphism", pi.mul(&fl.c) == p1.mul(&pi), || {
        "π∘C differs from p₁∘π".into()
    }));
    checks.push(Check::from_bool("intertwines-c-tilde-with-second-projection", "direct-sum-isomorphism", pi.mul(&fl.c_tilde) == p2.mul(&pi), || {
        "π∘C̃ differs from p₂∘π".into()
    }));
    let weight = -Rational::one();
    checks.push(rb_identity_check(total, &fl.c, &weight, "c-rota-baxter", "direct-sum-isomorphism"));
    checks.push(rb_identity_check(total, &fl.c_tilde, &weight, "c-tilde-rota-baxter", "direct-sum-isomorphism"));

    let inter = &fl.matched.split.intersection;
    checks.push(Check::from_bool("g2-dimension", "g2-description", g2.dim() == inter.dim(), || {
        format!("dim g₂ = {} but dim(g₊∩g₋) = {}", g2.dim(), inter.dim())
    }));
    let bad_shape = im_ct.basis_vectors().into_iter().find(|w| {
        let (x, u) = fl.matched.to_ambient(w);
        u != vec_neg(&x) || !inter.contains(&x)
    });
    checks.push(Check::from_witness(
        "g2-antidiagonal",
        "g2-description",
        bad_shape.map(|w| total.describe(&w)),
    ));

    Ok(DecompositionReport {
        bicrossed_dim: n,
        g1_dim: g1.dim(),
        g2_dim: g2.dim(),
        intersection_dim: inter.dim(),
        quotient_dim: None,
        convention: CONVENTION.to_string(),
        certificates: checks,
    })
}

/// Outcome of a Rota-Baxter isomorphism construction.
#[derive(Clone, Debug)]
pub struct IsoCertificate {
    pub source_dim: usize,
    pub target_dim: usize,
    /// The map in source and target coordinates.
    pub map: Matrix,
    /// The operator built on the target.
    pub target_operator: Matrix,
    pub checks: Vec<Check>,
}

/// `π(x) = (B(x), B̃(x))` from `(g, B)` onto `(im C, B₁)` with
/// `B₁((x,u)) = C((x,0))`.
pub fn iso_g1(rb: &RotaBaxterLie) -> Result<IsoCertificate> {
    let fl = projections_fl(rb)?;
    iso_g1_from(rb, &fl)
}

pub fn iso_g1_from(rb: &RotaBaxterLie, fl: &FlProjections) -> Result<IsoCertificate> {
    let total = &fl.bicrossed.total;
    let n = rb.dim();
    let p = fl.matched.pair.p();
    let (im_c, _) = image_and_kernel(&fl.c);
    let g1 = induced_subalgebra(total, &im_c)?;
    let diag = diagonal_map(rb, &fl.matched);
    let mut checks = Vec::new();
    let pi = subspace_coords_matrix(&g1, &diag.col_vectors());
    checks.push(Check::from_bool("map-lands-in-g1", "g1-isomorphism", pi.is_some(), || "π(x) leaves im C".into()));
    let pi = pi.ok_or_else(|| Error::Invalid("π leaves im C".into()))?;

    let b1_cols: Vec<Vector> = im_c
        .basis_vectors()
        .iter()
        .map(|w| {
            let mut x_only = w.clone();
            for v in x_only.iter_mut().skip(p) {
                *v = Rational::zero();
            }
            g1.coords(&fl.c.apply(&x_only)).expect("C lands in im C")
        })
        .collect();
    let b1 = Matrix::from_cols(b1_cols, g1.dim())?;

    checks.push(Check::from_bool(
        "map-bijective",
        "g1-isomorphism",
        g1.dim() == n && pi.rank() == n,
        || format!("rank {} with dim g = {n}, dim g₁ = {}", pi.rank(), g1.dim()),
    ));
    checks.push(hom_check(&rb.algebra, &g1.induced, &pi, "map-homomorphism", "g1-isomorphism"));
    checks.push(rb_identity_check(&g1.induced, &b1, &-Rational::one(), "target-rota-baxter", "g1-isomorphism"));
    checks.push(Check::from_bool(
        "intertwines-operators",
        "g1-isomorphism",
        b1.mul(&pi) == pi.mul(&rb.operator),
        || "B₁∘π differs from π∘B".into(),
    ));
    Ok(IsoCertificate { source_dim: n, target_dim: g1.dim(), map: pi, target_operator: b1, checks })
}

/// `π(x̄) = (B∘B̃(x), −B∘B̃(x))` from `(g_B/(h₊+h₋), B̄)` onto
/// `(im C̃, B₂)` with `B₂((x,u)) = C̃((0,u))`.
pub fn iso_g2_quotient(rb: &RotaBaxterLie) -> Result<IsoCertificate> {
    let fl = projections_fl(rb)?;
    iso_g2_quotient_from(rb, &fl)
}

pub fn iso_g2_quotient_from(rb: &RotaBaxterLie, fl: &FlProjections) -> Result<IsoCertificate> {
    let total = &fl.bicrossed.total;
    let p = fl.matched.pair.p();
    let quot = quotient_rb(rb)?;
    let (im_ct, _) = image_and_kernel(&fl.c_tilde);
    let g2 = induced_subalgebra(total, &im_ct)?;
    let bt = &fl.matched.split.b_tilde;
    let bbt = rb.operator.mul(bt);
    let mut checks = quot.checks.clone();

    let killed = quot.ideal.basis_vectors().into_iter().find(|v| !is_zero_vec(&bbt.apply(v)));
    checks.push(Check::from_witness(
        "map-well-defined",
        "quotient-isomorphism",
        killed.map(|v| format!("B∘B̃({}) ≠ 0", rb.algebra.describe(&v))),
    ));
    let (_, ker_bbt) = image_and_kernel(&bbt);
    checks.push(Check::from_bool("kernel-is-ideal", "quotient-isomorphism", ker_bbt == quot.ideal, || {
        format!("ker B∘B̃ has dimension {}, h₊+h₋ has dimension {}", ker_bbt.dim(), quot.ideal.dim())
    }));

    let n = rb.dim();
    let reps: Vec<Vector> = quot.ideal.non_pivots().iter().map(|&c| unit_vec(n, c)).collect();
    let images: Option<Vec<Vector>> = reps
        .iter()
        .map(|x| {
            let y = bbt.apply(x);
            fl.matched.to_pair_coords(&y, &vec_neg(&y))
        })
        .collect();
    let images = images.ok_or_else(|| Error::Invalid("π(x̄) leaves g₊ ⊕ g₋".into()))?;
    let pi = subspace_coords_matrix(&g2, &images);
    checks.push(Check::from_bool("map-lands-in-g2", "quotient-isomorphism", pi.is_some(), || "π(x̄) leaves im C̃".into()));
    let pi = pi.ok_or_else(|| Error::Invalid("π leaves im C̃".into()))?;

    let b2_cols: Vec<Vector> = im_ct
        .basis_vectors()
        .iter()
        .map(|w| {
            let mut u_only = w.clone();
            for v in u_only.iter_mut().take(p) {
                *v = Rational::zero();
            }
            g2.coords(&fl.c_tilde.apply(&u_only)).expect("C̃ lands in im C̃")
        })
        .collect();
    let b2 = Matrix::from_cols(b2_cols, g2.dim())?;
    let m = reps.len();
    checks.push(Check::from_bool(
        "map-bijective",
        "quotient-isomorphism",
        g2.dim() == m && pi.rank() == m,
        || format!("rank {} with quotient dimension {m}, dim g₂ = {}", pi.rank(), g2.dim()),
    ));
    checks.push(hom_check(&quot.quotient.algebra, &g2.induced, &pi, "map-homomorphism", "quotient-isomorphism"));
    checks.push(rb_identity_check(&g2.induced, &b2, &-Rational::one(), "target-rota-baxter", "quotient-isomorphism"));
    checks.push(Check::from_bool(
        "intertwines-operators",
        "quotient-isomorphism",
        pi.mul(&quot.quotient.operator) == b2.mul(&pi),
        || "π∘B̄ differs from B₂∘π".into(),
    ));
    Ok(IsoCertificate { source_dim: m, target_dim: g2.dim(), map: pi, target_operator: b2, checks })
}

/// The whole weight −1 chain: matched pair, bicrossed product, projections,
/// decomposition and both isomorphisms.
pub fn full_decomposition(rb: &RotaBaxterLie) -> Result<DecompositionReport> {
    let fl = projections_fl(rb)?;
    let mut report = decompose_bicrossed(rb)?;
    report.certificates.extend(diagonal_embedding_check(rb, &fl.matched));
    report.certificates.push(bbw_check(rb, &fl.matched));
    let g1 = iso_g1_from(rb, &fl)?;
    let g2 = iso_g2_quotient_from(rb, &fl)?;
    report.quotient_dim = Some(g2.source_dim);
    report.certificates.extend(g1.checks);
    report.certificates.extend(g2.checks);
    Ok(report)
}

/// `[(−B B̃ x, B̃ B x), (−B B̃ y, B̃ B y)] = λ(B[B̃x, B̃y], B̃[Bx, By])`.
pub fn bbw_check(rb: &RotaBaxterLie, rmp: &RbMatchedPair) -> Check {
    let g = &rb.algebra;
    let n = g.dim();
    let bt = &rmp.split.b_tilde;
    let elem = |x: &[Rational]| {
        rmp.to_pair_coords(&vec_neg(&rb.apply(&bt.apply(x))), &bt.apply(&rb.apply(x)))
            .expect("composites lie in g₊ ∩ g₋")
    };
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (unit_vec(n, i), unit_vec(n, j));
            let lhs = rmp.pair.bracket(&elem(&x), &elem(&y));
            let first = vec_scale(&rb.apply(&g.bracket(&bt.apply(&x), &bt.apply(&y))), &rb.weight);
            let second = vec_scale(&bt.apply(&g.bracket(&rb.apply(&x), &rb.apply(&y))), &rb.weight);
            if rmp.to_pair_coords(&first, &second).as_ref() != Some(&lhs) {
                return Check::fail("bicrossed-composite-identity", "composite-bracket", format!("({}, {})", g.label(i), g.label(j)));
            }
        }
    }
    Check::pass("bicrossed-composite-identity", "composite-bracket")
}

/// Callback form for [`crate::rb_lie::lemma_suite_lie`].
pub fn bbw_identity(rb: &RotaBaxterLie) -> Check {
    match matched_pair_from_rb(rb) {
        Ok(rmp) => bbw_check(rb, &rmp),
        Err(e) => Check::fail("bicrossed-composite-identity", "composite-bracket", e.to_string()),
    }
}

/// Restrictions of a weight −1 Rota-Baxter homomorphism to `g₊` and `g₋`
/// form a homomorphism of the matched pairs.
pub fn induced_mp_homomorphism(
    f: &LieHom,
    src: &RotaBaxterLie,
    dst: &RotaBaxterLie,
) -> Result<Vec<Check>> {
    let pre = check_rb_homomorphism(f, src, dst)?;
    if !all_hold(&pre) {
        return Err(Error::Invalid("map is not a Rota-Baxter homomorphism".into()));
    }
    let a = matched_pair_from_rb(src)?;
    let b = matched_pair_from_rb(dst)?;
    let restrict = |from: &EmbeddedSubalgebra, to: &EmbeddedSubalgebra, side: &str| -> Result<Matrix> {
        let cols: Option<Vec<Vector>> =
            from.space.basis_vectors().iter().map(|v| to.coords(&f.apply(v))).collect();
        let cols = cols.ok_or_else(|| Error::RestrictionEscapes(side.to_string()))?;
        Matrix::from_cols(cols, to.dim())
    };
    let fp = restrict(&a.split.g_plus, &b.split.g_plus, "g₊")?;
    let fm = restrict(&a.split.g_minus, &b.split.g_minus, "g₋")?;
    let mut checks = pre;
    checks.push(hom_check(&a.pair.g_plus, &b.pair.g_plus, &fp, "plus-restriction-homomorphism", "matched-pair-homomorphism"));
    checks.push(hom_check(&a.pair.g_minus, &b.pair.g_minus, &fm, "minus-restriction-homomorphism", "matched-pair-homomorphism"));
    let (p, q) = (a.pair.p(), a.pair.q());
    let mut w1 = None;
    let mut w2 = None;
    for i in 0..p {
        for u in 0..q {
            let (x, uv) = (unit_vec(p, i), unit_vec(q, u));
            if w1.is_none() {
                let lhs = fp.apply(&a.pair.act_minus(&uv, &x));
                let rhs = b.pair.act_minus(&fm.apply(&uv), &fp.apply(&x));
                if lhs != rhs {
                    w1 = Some(format!("({}, {})", a.pair.g_minus.label(u), a.pair.g_plus.label(i)));
                }
            }
            if w2.is_none() {
                let lhs = fm.apply(&a.pair.act_plus(&x, &uv));
                let rhs = b.pair.act_plus(&fp.apply(&x), &fm.apply(&uv));
                if lhs != rhs {
                    w2 = Some(format!("({}, {})", a.pair.g_plus.label(i), a.pair.g_minus.label(u)));
                }
            }
        }
    }
    checks.push(Check::from_witness("minus-action-equivariance", "matched-pair-homomorphism", w1));
    checks.push(Check::from_witness("plus-action-equivariance", "matched-pair-homomorphism", w2));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{aff1, sl2};
    use crate::linalg::{int, q};
    use crate::rb_lie::{abelian_half_fixture, scalar_half_fixture, sl2_projection_fixture};

    fn e(n: usize, i: usize) -> Vector {
        unit_vec(n, i)
    }

    #[test]
    fn trivial_pair_is_direct_sum() {
        let mp = MatchedPairLie::trivial(sl2(), aff1());
        assert!(all_hold(&verify_matched_pair(&mp).unwrap()));
        let bc = bicrossed_product(&mp).unwrap();
        assert_eq!(bc.total.tensor(), sl2().direct_sum(&aff1()).tensor());
        assert!(all_hold(&bc.checks));
    }

    #[test]
    fn sl2_actions() {
        let rmp = matched_pair_from_rb(&sl2_projection_fixture()).unwrap();
        let mp = &rmp.pair;
        // g₊ basis (h, f), g₋ basis (e)
        assert_eq!(mp.g_plus.labels(), &["h".to_string(), "f".to_string()]);
        assert_eq!(mp.rhd[0][0], vec![int(2)]);
        assert_eq!(mp.rhd[1][0], vec![int(0)]);
        assert_eq!(mp.brhd[0][0], vec![int(0), int(0)]);
        assert_eq!(mp.brhd[0][1], vec![int(1), int(0)]);
        assert!(all_hold(&rmp.checks), "{:?}", rmp.checks);
    }

    #[test]
    fn perturbed_pair_fails() {
        let mut mp = matched_pair_from_rb(&sl2_projection_fixture()).unwrap().pair;
        mp.rhd[0][0] = vec![int(-2)];
        let checks = verify_matched_pair(&mp).unwrap();
        // g₋ is one-dimensional, so the g₋-side condition holds vacuously and
        // the flip surfaces in the g₊-side condition
        let failed: Vec<&str> = checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["mp2"]);
        assert!(bicrossed_product(&mp).is_err());
    }

    #[test]
    fn identity_and_abelian_pairs() {
        let id = RotaBaxterLie::new(sl2(), Matrix::identity(3), int(-1)).unwrap();
        let rmp = matched_pair_from_rb(&id).unwrap();
        assert_eq!(rmp.pair.q(), 0);
        let rmp = matched_pair_from_rb(&abelian_half_fixture()).unwrap();
        assert!(rmp.pair.rhd.iter().flatten().flatten().all(Zero::is_zero));
        assert!(rmp.pair.brhd.iter().flatten().flatten().all(Zero::is_zero));
        let zero_weight = RotaBaxterLie::new(sl2(), Matrix::zeros(3, 3), int(0)).unwrap();
        assert!(matches!(matched_pair_from_rb(&zero_weight), Err(Error::WeightUnsupported(_))));
    }

    #[test]
    fn decomposition_pair_matches_rb_pair() {
        let g = sl2();
        let a = Subspace::span(3, &[e(3, 1), e(3, 2)]).unwrap();
        let b = Subspace::span(3, &[e(3, 0)]).unwrap();
        let from_split = matched_pair_from_decomposition(&g, &a, &b).unwrap();
        let from_rb = matched_pair_from_rb(&sl2_projection_fixture()).unwrap().pair;
        assert_eq!(from_split, from_rb);
        assert!(all_hold(&split_isomorphism_check(&g, &a, &b).unwrap()));

        let ef = Subspace::span(3, &[e(3, 0), e(3, 2)]).unwrap();
        assert!(matches!(
            matched_pair_from_decomposition(&g, &ef, &Subspace::span(3, &[e(3, 1)]).unwrap()),
            Err(Error::NotSubalgebra(_))
        ));
        assert!(matches!(
            matched_pair_from_decomposition(&g, &a, &Subspace::span(3, &[e(3, 1)]).unwrap()),
            Err(Error::NotComplementary(_))
        ));
    }

    #[test]
    fn bicrossed_of_sl2_fixture_is_sl2() {
        let rb = sl2_projection_fixture();
        let rmp = matched_pair_from_rb(&rb).unwrap();
        let bc = bicrossed_product(&rmp.pair).unwrap();
        assert!(all_hold(&bc.checks));
        assert!(all_hold(&diagonal_embedding_check(&rb, &rmp)));
        let iso = iso_g1(&rb).unwrap();
        assert_eq!(iso.map.rank(), 3);
        assert!(all_hold(&iso.checks), "{:?}", iso.checks);
    }

    #[test]
    fn scalar_fixture_bicrossed_is_abelian() {
        let rmp = matched_pair_from_rb(&scalar_half_fixture()).unwrap();
        let bc = bicrossed_product(&rmp.pair).unwrap();
        assert_eq!(bc.dim(), 2);
        assert!(bc.total.is_abelian());
    }

    #[test]
    fn fl_projection_examples() {
        let fl = projections_fl(&sl2_projection_fixture()).unwrap();
        assert_eq!(fl.c, Matrix::identity(3));
        assert!(fl.c_tilde.is_zero());
        assert!(all_hold(&fl.checks));

        let fl = projections_fl(&scalar_half_fixture()).unwrap();
        assert_eq!(fl.c.col(0), vec![q(1, 2), q(1, 2)]);
        assert_eq!(fl.c_tilde.col(0), vec![q(1, 2), q(-1, 2)]);
        assert!(all_hold(&fl.checks));

        let w2 = RotaBaxterLie::new(sl2(), Matrix::zeros(3, 3), int(2)).unwrap();
        assert!(matches!(projections_fl(&w2), Err(Error::WeightUnsupported(_))));
    }

    #[test]
    fn lie_projection_examples() {
        let bc = bicrossed_product(&matched_pair_from_rb(&sl2_projection_fixture()).unwrap().pair).unwrap();
        assert!(all_hold(&is_lie_projection(&bc.total, &Matrix::identity(3)).unwrap()));
        assert!(all_hold(&is_lie_projection(&bc.total, &Matrix::zeros(3, 3)).unwrap()));
        let half = is_lie_projection(&bc.total, &Matrix::scalar(3, &q(1, 2))).unwrap();
        assert!(!half[0].holds);
        assert!(is_lie_projection(&bc.total, &Matrix::identity(2)).is_err());
    }

    #[test]
    fn projection_operator_examples() {
        let rb = sl2_projection_fixture();
        let fl = projections_fl(&rb).unwrap();
        let ops = rb_from_projection(&fl.bicrossed, &Matrix::zeros(3, 3)).unwrap();
        assert_eq!(ops.kernel.dim(), 3);
        // g₊ block is the first two coordinates
        assert_eq!(ops.b.operator, Matrix::diagonal(&[int(1), int(1), int(0)]));
        assert!(all_hold(&ops.checks));

        let ops = rb_from_projection(&fl.bicrossed, &fl.c_tilde).unwrap();
        assert_eq!(ops.kernel.dim(), 3);
        assert!(all_hold(&ops.checks));

        let rb = scalar_half_fixture();
        let fl = projections_fl(&rb).unwrap();
        let ops = rb_from_projection(&fl.bicrossed, &fl.c).unwrap();
        assert_eq!(ops.kernel.space, Subspace::span(2, &[vec![int(1), int(-1)]]).unwrap());
        // B((1,-1)) = C̃((1,0)) = (1/2,-1/2), half the kernel basis vector
        assert_eq!(ops.b.operator, Matrix::diagonal(&[q(1, 2)]));
        assert!(all_hold(&ops.checks));
    }

    #[test]
    fn decompositions() {
        let r = decompose_bicrossed(&sl2_projection_fixture()).unwrap();
        assert_eq!((r.g1_dim, r.g2_dim), (3, 0));
        assert!(r.all_hold(), "{:?}", r.certificates);

        let r = decompose_bicrossed(&abelian_half_fixture()).unwrap();
        assert_eq!((r.bicrossed_dim, r.g1_dim, r.g2_dim, r.intersection_dim), (3, 2, 1, 1));
        assert!(r.all_hold(), "{:?}", r.certificates);

        let id = RotaBaxterLie::new(aff1(), Matrix::identity(2), int(-1)).unwrap();
        assert_eq!(decompose_bicrossed(&id).unwrap().g2_dim, 0);
    }

    #[test]
    fn g1_isomorphisms() {
        let id = RotaBaxterLie::new(aff1(), Matrix::identity(2), int(-1)).unwrap();
        let iso = iso_g1(&id).unwrap();
        assert_eq!(iso.target_operator, Matrix::identity(2));
        assert!(all_hold(&iso.checks));

        let iso = iso_g1(&scalar_half_fixture()).unwrap();
        assert_eq!(iso.target_operator, Matrix::diagonal(&[q(1, 2)]));
        assert!(all_hold(&iso.checks));
    }

    #[test]
    fn quotient_isomorphisms() {
        let iso = iso_g2_quotient(&sl2_projection_fixture()).unwrap();
        assert_eq!((iso.source_dim, iso.target_dim), (0, 0));
        assert!(all_hold(&iso.checks), "{:?}", iso.checks);

        let iso = iso_g2_quotient(&abelian_half_fixture()).unwrap();
        assert_eq!((iso.source_dim, iso.target_dim), (1, 1));
        assert!(!iso.map.is_zero());
        assert!(all_hold(&iso.checks), "{:?}", iso.checks);

        let zero = RotaBaxterLie::new(sl2(), Matrix::zeros(3, 3), int(-1)).unwrap();
        let iso = iso_g2_quotient(&zero).unwrap();
        assert_eq!((iso.source_dim, iso.target_dim), (0, 0));
        assert!(all_hold(&iso.checks));
    }

    #[test]
    fn mp_homomorphisms() {
        let rb = sl2_projection_fixture();
        let id = LieHom::identity(&rb.algebra);
        assert!(all_hold(&induced_mp_homomorphism(&id, &rb, &rb).unwrap()));

        let zero_rb = RotaBaxterLie::new(LieAlgebra::abelian(0), Matrix::zeros(0, 0), int(-1)).unwrap();
        let to_zero = LieHom { source: rb.algebra.clone(), target: zero_rb.algebra.clone(), matrix: Matrix::zeros(0, 3) };
        assert!(all_hold(&induced_mp_homomorphism(&to_zero, &rb, &zero_rb).unwrap()));
    }

    #[test]
    fn bbw_on_fixtures() {
        for rb in [sl2_projection_fixture(), abelian_half_fixture(), scalar_half_fixture()] {
            assert!(bbw_identity(&rb).holds);
            let suite = crate::rb_lie::lemma_suite_lie(&rb, Some(&bbw_identity));
            assert!(all_hold(&suite));
        }
    }

    #[test]
    fn full_chain_on_fixtures() {
        let r = full_decomposition(&abelian_half_fixture()).unwrap();
        assert_eq!(r.quotient_dim, Some(1));
        assert!(r.all_hold(), "{:?}", r.certificates.iter().filter(|c| !c.holds).collect::<Vec<_>>());
    }
}
