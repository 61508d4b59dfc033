//! Quadratic Lie algebras, quadratic Rota-Baxter operators, the induced form
//! on the bicrossed product and the resulting Manin triple.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{induced_subalgebra, EmbeddedSubalgebra, LieAlgebra};
use crate::linalg::{format_rational, image_and_kernel, unit_vec, vec_add, Matrix, Rational, Subspace, Vector};
use crate::matched_lie::{
    decompose_bicrossed, projections_fl, BicrossedLie, DecompositionReport, FlProjections,
    RbMatchedPair,
};
use crate::rb_lie::{lemma_suite_lie, RotaBaxterLie};
use crate::report::{all_hold, Check};

/// `xᵀ S y`
pub fn pair(s: &Matrix, x: &[Rational], y: &[Rational]) -> Rational {
    let sy = s.apply(y);
    x.iter().zip(&sy).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// Symmetry, nondegeneracy and invariance `S([x,y],z) = S(x,[y,z])`.
pub fn validate_quadratic(g: &LieAlgebra, s: &Matrix) -> Result<Vec<Check>> {
    let n = g.dim();
    if s.rows() != n || s.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "form is {}x{}, algebra has dimension {n}",
            s.rows(),
            s.cols()
        )));
    }
    let symmetric = Check::from_witness(
        "form-symmetric",
        "quadratic-lie-algebra",
        s.first_difference(&s.transpose()).map(|(i, j)| format!("({}, {})", g.label(i), g.label(j))),
    );
    let rank = s.rank();
    let nondegenerate = Check::from_bool("form-nondegenerate", "quadratic-lie-algebra", rank == n, || {
        format!("rank {rank} in dimension {n}")
    });
    let mut w = None;
    'inv: for i in 0..n {
        for j in 0..n {
            let ij = g.basis_bracket(i, j);
            for k in 0..n {
                let lhs = pair(s, &ij, &unit_vec(n, k));
                let rhs = pair(s, &unit_vec(n, i), &g.basis_bracket(j, k));
                if lhs != rhs {
                    w = Some(format!("({}, {}, {})", g.label(i), g.label(j), g.label(k)));
                    break 'inv;
                }
            }
        }
    }
    let invariant = Check::from_witness("form-invariant", "quadratic-lie-algebra", w);
    Ok(vec![symmetric, nondegenerate, invariant])
}

/// A Rota-Baxter operator together with an invariant form.
#[derive(Clone, Debug)]
pub struct QuadraticRB {
    pub rb: RotaBaxterLie,
    pub form: Matrix,
}

impl QuadraticRB {
    pub fn new(rb: RotaBaxterLie, form: Matrix) -> Result<Self> {
        let n = rb.dim();
        if form.rows() != n || form.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "form is {}x{}, algebra has dimension {n}",
                form.rows(),
                form.cols()
            )));
        }
        Ok(Self { rb, form })
    }

    pub fn dim(&self) -> usize {
        self.rb.dim()
    }
}

/// `S(Bx,y) + S(x,By) + λS(x,y) = 0` on basis pairs, and at weight −1 also
/// `S(Bx,y) = S(x,B̃y)`.
pub fn check_compatibility(q: &QuadraticRB) -> Vec<Check> {
    let rb = &q.rb;
    let g = &rb.algebra;
    let n = q.dim();
    let s = &q.form;
    let bt = rb.tilde_matrix();
    let mut sum_w = None;
    let mut adj_w = None;
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (unit_vec(n, i), unit_vec(n, j));
            let bx = rb.apply(&x);
            if sum_w.is_none() {
                let total = pair(s, &bx, &y) + pair(s, &x, &rb.apply(&y)) + &rb.weight * pair(s, &x, &y);
                if !total.is_zero() {
                    sum_w = Some(format!("({}, {}) gives {}", g.label(i), g.label(j), format_rational(&total)));
                }
            }
            if adj_w.is_none() && pair(s, &bx, &y) != pair(s, &x, &bt.apply(&y)) {
                adj_w = Some(format!("({}, {})", g.label(i), g.label(j)));
            }
        }
    }
    let mut checks = vec![Check::from_witness("form-compatibility", "quadratic-rota-baxter", sum_w)];
    if rb.is_weight_minus_one() {
        checks.push(Check::from_witness("companion-adjoint", "quadratic-rota-baxter", adj_w));
    }
    checks
}

/// `g ⋉ g*` with the coadjoint action, the canonical pairing and the
/// projection onto `g` along `g*` at weight −1.
pub fn cotangent_fixture(g: &LieAlgebra) -> QuadraticRB {
    let n = g.dim();
    let mut labels: Vec<String> = g.labels().to_vec();
    labels.extend(g.labels().iter().map(|l| format!("{l}*")));
    let m = 2 * n;
    let algebra = LieAlgebra::from_bilinear(labels, |i, j| {
        let mut out = vec![Rational::zero(); m];
        match (i < n, j < n) {
            (true, true) => {
                for k in 0..n {
                    out[k] = g.constant(i, j, k).clone();
                }
            }
            // (ad*_{b_i} b*_j)(b_k) = −b*_j([b_i, b_k])
            (true, false) => {
                for k in 0..n {
                    out[n + k] = -g.constant(i, k, j - n).clone();
                }
            }
            (false, true) => {
                for k in 0..n {
                    out[n + k] = g.constant(j, k, i - n).clone();
                }
            }
            (false, false) => {}
        }
        out
    });
    let mut form = Matrix::zeros(m, m);
    let mut op = Matrix::zeros(m, m);
    for i in 0..n {
        form.set(i, n + i, Rational::one());
        form.set(n + i, i, Rational::one());
        op.set(i, i, Rational::one());
    }
    QuadraticRB {
        rb: RotaBaxterLie { algebra, operator: op, weight: -Rational::one() },
        form,
    }
}

/// The trace form of sl₂ in the basis (e, h, f): `S(e,f) = 1`, `S(h,h) = 2`.
pub fn sl2_trace_form() -> Matrix {
    let mut s = Matrix::zeros(3, 3);
    s.set(0, 2, Rational::one());
    s.set(2, 0, Rational::one());
    s.set(1, 1, Rational::from_integer(2.into()));
    s
}

/// The induced form on the bicrossed product and its Manin triple blocks.
#[derive(Clone, Debug)]
pub struct ManinTripleStruct {
    pub projections: FlProjections,
    pub s_prime: Matrix,
    pub plus_block: Subspace,
    pub minus_block: Subspace,
    pub checks: Vec<Check>,
}

impl ManinTripleStruct {
    pub fn total(&self) -> &BicrossedLie {
        &self.projections.bicrossed
    }

    pub fn matched(&self) -> &RbMatchedPair {
        &self.projections.matched
    }

    pub fn isotropy(&self) -> (bool, bool) {
        let find = |name: &str| self.checks.iter().any(|c| c.name == name && c.holds);
        (find("plus-block-isotropic"), find("minus-block-isotropic"))
    }
}

fn block_zero(s: &Matrix, idx: &[usize]) -> Option<String> {
    for &i in idx {
        for &j in idx {
            if !s.get(i, j).is_zero() {
                return Some(format!("entry ({i}, {j}) = {}", format_rational(s.get(i, j))));
            }
        }
    }
    None
}

/// `S′((B x₁, B̃ x₂), (B y₁, B̃ y₂)) = S(B x₁, y₂) + S(B y₁, x₂)` in the
/// echelon bases of `g₊` and `g₋`.
pub fn build_sprime(q: &QuadraticRB) -> Result<ManinTripleStruct> {
    let rb = &q.rb;
    if !rb.is_weight_minus_one() {
        return Err(Error::WeightUnsupported(rb.weight.to_string()));
    }
    let compat = check_compatibility(q);
    if !all_hold(&compat) {
        return Err(Error::Invalid("form is not compatible with the operator".into()));
    }
    let fl = projections_fl(rb)?;
    let rmp = &fl.matched;
    let s = &q.form;
    let (p, qd) = (rmp.pair.p(), rmp.pair.q());
    let n = p + qd;
    let bt = &rmp.split.b_tilde;
    let plus = rmp.split.g_plus.space.basis_vectors();
    let minus = rmp.split.g_minus.space.basis_vectors();
    // x₂ representatives for the g₋ basis; x₁ never enters except through B x₁
    let minus_pre: Vec<Vector> = minus
        .iter()
        .map(|u| crate::linalg::solve_linear(bt, u)?.ok_or_else(|| Error::Invalid("no preimage".into())))
        .collect::<Result<_>>()?;

    let mut sp = Matrix::zeros(n, n);
    for i in 0..p {
        for b in 0..qd {
            let v = pair(s, &plus[i], &minus_pre[b]);
            sp.set(i, p + b, v.clone());
            sp.set(p + b, i, v);
        }
    }

    let mut checks = compat;
    let ker_t = rmp.split.h_plus.basis_vectors();
    let mut w = None;
    'rep: for (i, x) in plus.iter().enumerate() {
        for (b, z) in minus_pre.iter().enumerate() {
            for k in &ker_t {
                if pair(s, x, &vec_add(z, k)) != pair(s, x, z) {
                    w = Some(format!("g₊ basis {i}, g₋ basis {b}"));
                    break 'rep;
                }
            }
        }
    }
    checks.push(Check::from_witness("representative-independence", "induced-form", w));

    let total = &fl.bicrossed.total;
    for c in validate_quadratic(total, &sp)? {
        let name = format!("induced-{}", c.name);
        checks.push(c.renamed(name, "induced-form"));
    }
    let plus_idx: Vec<usize> = (0..p).collect();
    let minus_idx: Vec<usize> = (p..n).collect();
    checks.push(Check::from_witness("plus-block-isotropic", "manin-triple", block_zero(&sp, &plus_idx)));
    checks.push(Check::from_witness("minus-block-isotropic", "manin-triple", block_zero(&sp, &minus_idx)));
    let plus_block = Subspace::span(n, &plus_idx.iter().map(|&i| unit_vec(n, i)).collect::<Vec<_>>())?;
    let minus_block = Subspace::span(n, &minus_idx.iter().map(|&i| unit_vec(n, i)).collect::<Vec<_>>())?;
    checks.push(Check::from_bool(
        "blocks-complementary",
        "manin-triple",
        plus_block.intersection(&minus_block).dim() == 0 && p + qd == n,
        || "blocks overlap".into(),
    ));
    Ok(ManinTripleStruct { projections: fl, s_prime: sp, plus_block, minus_block, checks })
}

/// `S′(C(bᵢ), C̃(bⱼ)) = 0` on all basis pairs, with `C̃ = id − C`.
pub fn quadratic_projection_check(mt: &ManinTripleStruct, c: &Matrix) -> Result<Check> {
    let n = mt.s_prime.rows();
    if c.rows() != n || c.cols() != n {
        return Err(Error::DimensionMismatch(format!("projection is {}x{}, expected {n}x{n}", c.rows(), c.cols())));
    }
    let ct = Matrix::identity(n).sub(c);
    // S′(C bᵢ, C̃ bⱼ) is entry (i, j) of Cᵀ S′ C̃
    let m = c.transpose().mul(&mt.s_prime).mul(&ct);
    let labels = mt.total().total.labels();
    Ok(Check::from_witness(
        "projection-orthogonality",
        "quadratic-projection",
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !m.get(i, j).is_zero())
            .map(|(i, j)| format!("({}, {})", labels[i], labels[j])),
    ))
}

/// Block-diagonal sum of two quadratic Lie algebras.
pub fn direct_sum_quadratic(a: (&LieAlgebra, &Matrix), b: (&LieAlgebra, &Matrix)) -> (LieAlgebra, Matrix) {
    (a.0.direct_sum(b.0), a.1.block_diag(b.1))
}

fn gram(s: &Matrix, sub: &EmbeddedSubalgebra) -> Matrix {
    let basis = sub.inclusion();
    basis.transpose().mul(s).mul(&basis)
}

/// Decomposition of the induced quadratic bicrossed product into
/// `(im C, S′|) ⊕ (im C̃, S′|)` and the form-preserving isomorphism
/// `x ↦ (B x, B̃ x)` onto `im C`.
#[derive(Clone, Debug, Serialize)]
pub struct ManinReport {
    #[serde(flatten)]
    pub decomposition: DecompositionReport,
    pub isotropy: Isotropy,
    pub sprime: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Isotropy {
    pub plus: bool,
    pub minus: bool,
}

impl ManinReport {
    pub fn all_hold(&self) -> bool {
        self.decomposition.all_hold()
    }
}

pub fn quadratic_decompose(q: &QuadraticRB) -> Result<ManinReport> {
    if !q.rb.is_weight_minus_one() {
        return Err(Error::WeightUnsupported(q.rb.weight.to_string()));
    }
    let mt = build_sprime(q)?;
    let mut report = decompose_bicrossed(&q.rb)?;
    report.certificates.extend(mt.checks.iter().cloned());
    let fl = &mt.projections;
    let total = &fl.bicrossed.total;
    let sp = &mt.s_prime;

    report.certificates.push(quadratic_projection_check(&mt, &fl.c)?);
    let (im_c, _) = image_and_kernel(&fl.c);
    let (im_ct, _) = image_and_kernel(&fl.c_tilde);
    let g1 = induced_subalgebra(total, &im_c)?;
    let g2 = induced_subalgebra(total, &im_ct)?;
    let s1 = gram(sp, &g1);
    let s2 = gram(sp, &g2);
    for (label, sub, form) in [("g1", &g1, &s1), ("g2", &g2, &s2)] {
        for c in validate_quadratic(&sub.induced, form)? {
            let name = format!("{label}-{}", c.name);
            report.certificates.push(c.renamed(name, "quadratic-decomposition"));
        }
    }
    let cross = g1.inclusion().transpose().mul(sp).mul(&g2.inclusion());
    report.certificates.push(Check::from_bool("cross-block-orthogonal", "quadratic-decomposition", cross.is_zero(), || {
        "S′ pairs im C with im C̃".into()
    }));
    let (sum_alg, sum_form) = direct_sum_quadratic((&g1.induced, &s1), (&g2.induced, &s2));
    for c in validate_quadratic(&sum_alg, &sum_form)? {
        let name = format!("sum-{}", c.name);
        report.certificates.push(c.renamed(name, "quadratic-decomposition"));
    }

    // x ↦ (B x, B̃ x) preserves forms
    let rb = &q.rb;
    let n = rb.dim();
    let bt = &fl.matched.split.b_tilde;
    let images: Vec<Vector> = (0..n)
        .map(|i| {
            let x = unit_vec(n, i);
            fl.matched.to_pair_coords(&rb.apply(&x), &bt.apply(&x)).expect("images lie in g±")
        })
        .collect();
    let mut w = None;
    'pres: for i in 0..n {
        for j in 0..n {
            if pair(sp, &images[i], &images[j]) != pair(&q.form, &unit_vec(n, i), &unit_vec(n, j)) {
                w = Some(format!("({}, {})", rb.algebra.label(i), rb.algebra.label(j)));
                break 'pres;
            }
        }
    }
    report.certificates.push(Check::from_witness("diagonal-map-preserves-form", "quadratic-decomposition", w));
    report.certificates.extend(lemma_suite_lie(rb, None));

    let (plus, minus) = mt.isotropy();
    let sprime = (0..sp.rows())
        .map(|i| (0..sp.cols()).map(|j| format_rational(sp.get(i, j))).collect())
        .collect();
    Ok(ManinReport { decomposition: report, isotropy: Isotropy { plus, minus }, sprime })
}
