//! Rota-Baxter operators of weight λ on Lie algebras.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{
    hom_check, ideal_witness, induced_subalgebra, quotient_by_ideal, EmbeddedSubalgebra,
    LieAlgebra, LieHom,
};
use crate::linalg::{
    image_and_kernel, int, unit_vec, vec_add, vec_scale, Matrix, Rational, Subspace, Vector,
};
use crate::report::Check;

/// A Lie algebra with a linear operator and a weight. The Rota-Baxter
/// identity is not enforced on construction; see [`check_rota_baxter`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotaBaxterLie {
    pub algebra: LieAlgebra,
    pub operator: Matrix,
    pub weight: Rational,
}

impl RotaBaxterLie {
    pub fn new(algebra: LieAlgebra, operator: Matrix, weight: Rational) -> Result<Self> {
        let n = algebra.dim();
        if operator.rows() != n || operator.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "operator is {}x{}, algebra has dimension {n}",
                operator.rows(),
                operator.cols()
            )));
        }
        Ok(Self { algebra, operator, weight })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn apply(&self, x: &[Rational]) -> Vector {
        self.operator.apply(x)
    }

    /// `-λ·id - B`.
    pub fn tilde_matrix(&self) -> Matrix {
        Matrix::scalar(self.dim(), &-self.weight.clone()).sub(&self.operator)
    }

    pub fn apply_tilde(&self, x: &[Rational]) -> Vector {
        self.tilde_matrix().apply(x)
    }

    pub fn is_weight_minus_one(&self) -> bool {
        self.weight == -Rational::one()
    }
}

/// `[Bx, By] = B([Bx, y] + [x, By] + λ[x, y])` on every basis pair.
pub fn check_rota_baxter(g: &LieAlgebra, b: &Matrix, weight: &Rational) -> Result<Check> {
    let n = g.dim();
    if b.rows() != n || b.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, algebra has dimension {n}",
            b.rows(),
            b.cols()
        )));
    }
    Ok(rb_identity_check(g, b, weight, "rota-baxter", "rota-baxter-identity"))
}

pub(crate) fn rb_identity_check(
    g: &LieAlgebra,
    b: &Matrix,
    weight: &Rational,
    name: &str,
    anchor: &str,
) -> Check {
    let n = g.dim();
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (unit_vec(n, i), unit_vec(n, j));
            let (bx, by) = (b.col(i), b.col(j));
            let lhs = g.bracket(&bx, &by);
            let inner = vec_add(
                &vec_add(&g.bracket(&bx, &y), &g.bracket(&x, &by)),
                &vec_scale(&g.basis_bracket(i, j), weight),
            );
            let rhs = b.apply(&inner);
            if lhs != rhs {
                return Check::fail(
                    name,
                    anchor,
                    format!(
                        "({}, {}): [Bx, By] = {} but B(...) = {}",
                        g.label(i),
                        g.label(j),
                        g.describe(&lhs),
                        g.describe(&rhs)
                    ),
                );
            }
        }
    }
    Check::pass(name, anchor)
}

pub fn is_rota_baxter(rb: &RotaBaxterLie) -> bool {
    rb_identity_check(&rb.algebra, &rb.operator, &rb.weight, "", "").holds
}

/// The companion `(g, -λ·id - B, λ)`.
pub fn tilde_operator(rb: &RotaBaxterLie) -> RotaBaxterLie {
    RotaBaxterLie {
        algebra: rb.algebra.clone(),
        operator: rb.tilde_matrix(),
        weight: rb.weight.clone(),
    }
}

/// `[x, y]_B = [Bx, y] + [x, By] + λ[x, y]`.
pub fn descendent_algebra(rb: &RotaBaxterLie) -> LieAlgebra {
    let g = &rb.algebra;
    let n = g.dim();
    LieAlgebra::from_bilinear(g.labels().to_vec(), |i, j| {
        let (x, y) = (unit_vec(n, i), unit_vec(n, j));
        vec_add(
            &vec_add(&g.bracket(&rb.operator.col(i), &y), &g.bracket(&x, &rb.operator.col(j))),
            &vec_scale(&g.basis_bracket(i, j), &rb.weight),
        )
    })
}

/// Images, kernels and their certificates.
#[derive(Clone, Debug)]
pub struct RBSplit {
    pub b_tilde: Matrix,
    /// `im B`
    pub g_plus: EmbeddedSubalgebra,
    /// `im B̃`
    pub g_minus: EmbeddedSubalgebra,
    /// `ker B̃`
    pub h_plus: Subspace,
    /// `ker B`
    pub h_minus: Subspace,
    pub intersection: Subspace,
    pub checks: Vec<Check>,
}

/// `[a, y] ∈ target` for every basis vector `a` of `acting` and `y` of `inner`.
fn invariance_witness(
    g: &LieAlgebra,
    acting: &Subspace,
    inner: &Subspace,
    target: &Subspace,
) -> Option<String> {
    for a in acting.basis_vectors() {
        for y in inner.basis_vectors() {
            let br = g.bracket(&a, &y);
            if !target.contains(&br) {
                return Some(format!("[{}, {}] = {}", g.describe(&a), g.describe(&y), g.describe(&br)));
            }
        }
    }
    None
}

pub fn split_subalgebras(rb: &RotaBaxterLie) -> Result<RBSplit> {
    let g = &rb.algebra;
    let b_tilde = rb.tilde_matrix();
    let (im_b, ker_b) = image_and_kernel(&rb.operator);
    let (im_t, ker_t) = image_and_kernel(&b_tilde);
    let invalid = |e: Error| Error::Invalid(format!("operator image is not a subalgebra: {e}"));
    let g_plus = induced_subalgebra(g, &im_b).map_err(invalid)?;
    let g_minus = induced_subalgebra(g, &im_t).map_err(invalid)?;
    let intersection = im_b.intersection(&im_t);

    let mut checks = vec![
        Check::from_bool("h-plus-inside-g-plus", "distinguished-subspaces", ker_t.is_subspace_of(&im_b), || {
            "ker B̃ is not contained in im B".into()
        }),
        Check::from_bool("h-minus-inside-g-minus", "distinguished-subspaces", ker_b.is_subspace_of(&im_t), || {
            "ker B is not contained in im B̃".into()
        }),
    ];
    if !rb.weight.is_zero() {
        checks.push(Check::from_witness(
            "h-plus-ideal-of-g-plus",
            "adjoint-invariance",
            invariance_witness(g, &im_b, &ker_t, &ker_t),
        ));
        checks.push(Check::from_witness(
            "h-minus-ideal-of-g-minus",
            "adjoint-invariance",
            invariance_witness(g, &im_t, &ker_b, &ker_b),
        ));
    }
    Ok(RBSplit {
        b_tilde,
        g_plus,
        g_minus,
        h_plus: ker_t,
        h_minus: ker_b,
        intersection,
        checks,
    })
}

/// The Rota-Baxter algebra induced on `g_B / (h₊ + h₋)`.
#[derive(Clone, Debug)]
pub struct QuotientRB {
    pub descendent: LieAlgebra,
    pub ideal: Subspace,
    pub quotient: RotaBaxterLie,
    pub projection: LieHom,
    pub checks: Vec<Check>,
}

/// Weight −1 only.
pub fn quotient_rb(rb: &RotaBaxterLie) -> Result<QuotientRB> {
    if !rb.is_weight_minus_one() {
        return Err(Error::WeightUnsupported(rb.weight.to_string()));
    }
    let descendent = descendent_algebra(rb);
    let (_, ker_b) = image_and_kernel(&rb.operator);
    let (_, ker_t) = image_and_kernel(&rb.tilde_matrix());
    let ideal = ker_t.sum(&ker_b);
    let mut checks = vec![Check::from_witness(
        "kernel-sum-ideal",
        "quotient-ideal",
        ideal_witness(&descendent, &ideal),
    )];
    let (q, projection) = quotient_by_ideal(&descendent, &ideal)?;
    let keep = ideal.non_pivots();
    let m = keep.len();
    let n = rb.dim();
    let induce = |op: &Matrix| -> Matrix {
        let cols: Vec<Vector> =
            keep.iter().map(|&c| projection.apply(&op.apply(&unit_vec(n, c)))).collect();
        Matrix::from_cols(cols, m).expect("uniform lengths")
    };
    let b_bar = induce(&rb.operator);
    let t_bar = induce(&rb.tilde_matrix());

    checks.push(Check::from_witness("operator-preserves-ideal", "quotient-operator", {
        ideal
            .basis_vectors()
            .into_iter()
            .find(|v| !ideal.contains(&rb.apply(v)))
            .map(|v| format!("B({}) leaves the ideal", rb.algebra.describe(&v)))
    }));
    // the induced map must not depend on the representative
    checks.push(Check::from_bool(
        "operator-descends",
        "quotient-operator",
        projection.matrix.mul(&rb.operator) == b_bar.mul(&projection.matrix),
        || "p∘B differs from B̄∘p".into(),
    ));
    checks.push(Check::from_bool(
        "companions-sum-to-identity",
        "quotient-operator",
        b_bar.add(&t_bar) == Matrix::identity(m),
        || "B̄ + B̃̄ is not the identity".into(),
    ));
    let weight = rb.weight.clone();
    checks.push(rb_identity_check(&q, &b_bar, &weight, "quotient-rota-baxter", "quotient-operator"));
    checks.push(rb_identity_check(&q, &t_bar, &weight, "quotient-companion-rota-baxter", "quotient-operator"));
    Ok(QuotientRB {
        descendent,
        ideal,
        quotient: RotaBaxterLie { algebra: q, operator: b_bar, weight },
        projection,
        checks,
    })
}

/// Lie homomorphism check followed by `f·B = B'·f`.
pub fn check_rb_homomorphism(
    f: &LieHom,
    src: &RotaBaxterLie,
    dst: &RotaBaxterLie,
) -> Result<Vec<Check>> {
    if src.weight != dst.weight {
        return Err(Error::WeightMismatch(src.weight.to_string(), dst.weight.to_string()));
    }
    if f.matrix.rows() != dst.dim() || f.matrix.cols() != src.dim() {
        return Err(Error::DimensionMismatch(format!(
            "map is {}x{}, expected {}x{}",
            f.matrix.rows(),
            f.matrix.cols(),
            dst.dim(),
            src.dim()
        )));
    }
    let lie = hom_check(&src.algebra, &dst.algebra, &f.matrix, "lie-homomorphism", "lie-homomorphism");
    let lhs = f.matrix.mul(&src.operator);
    let rhs = dst.operator.mul(&f.matrix);
    let compat = Check::from_witness(
        "operator-compatibility",
        "rota-baxter-homomorphism",
        lhs.first_difference(&rhs).map(|(r, c)| {
            format!("entry ({r},{c}): f·B = {} but B'·f = {}", lhs.get(r, c), rhs.get(r, c))
        }),
    );
    Ok(vec![lie, compat])
}

/// Identities relating `B`, `B̃` and the descendent bracket. The bicrossed
/// identity needs the matched pair, so it is supplied by the caller.
pub fn lemma_suite_lie(
    rb: &RotaBaxterLie,
    bicrossed_identity: Option<&dyn Fn(&RotaBaxterLie) -> Check>,
) -> Vec<Check> {
    let n = rb.dim();
    let desc = descendent_algebra(rb);
    let tilde = tilde_operator(rb);
    let desc_t = descendent_algebra(&tilde);
    let mut checks = Vec::new();

    checks.push(Check::from_bool(
        "descendent-negates-companion",
        "companion-bracket",
        desc == desc_t.negated(),
        || {
            let (i, j) = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find(|&(i, j)| desc.basis_bracket(i, j) != crate::linalg::vec_neg(&desc_t.basis_bracket(i, j)))
                .unwrap_or((0, 0));
            format!("({}, {})", rb.algebra.label(i), rb.algebra.label(j))
        },
    ));

    let bt = rb.operator.mul(&tilde.operator);
    let tb = tilde.operator.mul(&rb.operator);
    checks.push(Check::from_witness(
        "operators-commute",
        "commuting-companions",
        bt.first_difference(&tb).map(|(r, c)| format!("entry ({r},{c})")),
    ));
    let poly = rb
        .operator
        .scale(&-rb.weight.clone())
        .sub(&rb.operator.mul(&rb.operator));
    checks.push(Check::from_witness(
        "composite-formula",
        "commuting-companions",
        bt.first_difference(&poly).map(|(r, c)| format!("entry ({r},{c})")),
    ));

    checks.extend(desc.validate().into_iter().map(|c| {
        let name = format!("descendent-{}", c.name);
        c.renamed(name, "descendent-bracket")
    }));
    checks.push(rb_identity_check(
        &desc,
        &rb.operator,
        &rb.weight,
        "rota-baxter-on-descendent",
        "descendent-operator",
    ));
    checks.push(hom_check(
        &desc,
        &rb.algebra,
        &rb.operator,
        "operator-homomorphism-from-descendent",
        "descendent-operator",
    ));
    if let Some(f) = bicrossed_identity {
        checks.push(f(rb));
    }
    checks
}

/// Projection onto `a` along `b` for a vector-space decomposition `a ⊕ b`.
pub fn projection_along(a: &Subspace, b: &Subspace) -> Result<Matrix> {
    let n = a.ambient_dim();
    if b.ambient_dim() != n || a.dim() + b.dim() != n || a.intersection(b).dim() != 0 {
        return Err(Error::NotComplementary(format!(
            "dimensions {} and {} in a space of dimension {n}",
            a.dim(),
            b.dim()
        )));
    }
    let mut cols = a.basis_vectors();
    cols.extend(b.basis_vectors());
    let basis = Matrix::from_cols(cols, n)?;
    let inv = basis.inverse().expect("complementary bases are independent");
    let mut keep = vec![Rational::zero(); n];
    for k in keep.iter_mut().take(a.dim()) {
        *k = Rational::one();
    }
    Ok(basis.mul(&Matrix::diagonal(&keep)).mul(&inv))
}

/// sl2 in `(e, h, f)` with the projection onto `span{h, f}` along `span{e}`.
pub fn sl2_projection_fixture() -> RotaBaxterLie {
    RotaBaxterLie {
        algebra: crate::lie::sl2(),
        operator: Matrix::diagonal(&[int(0), int(1), int(1)]),
        weight: int(-1),
    }
}

/// Two-dimensional abelian algebra with `B = diag(1/2, 1)`, weight −1.
pub fn abelian_half_fixture() -> RotaBaxterLie {
    RotaBaxterLie {
        algebra: LieAlgebra::abelian(2),
        operator: Matrix::diagonal(&[crate::linalg::q(1, 2), int(1)]),
        weight: int(-1),
    }
}

/// One-dimensional algebra with `B = 1/2`, weight −1.
pub fn scalar_half_fixture() -> RotaBaxterLie {
    RotaBaxterLie {
        algebra: LieAlgebra::abelian(1),
        operator: Matrix::diagonal(&[crate::linalg::q(1, 2)]),
        weight: int(-1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{aff1, heisenberg, sl2};
    use crate::linalg::q;

    fn e(n: usize, i: usize) -> Vector {
        unit_vec(n, i)
    }

    #[test]
    fn trivial_operators_are_rota_baxter() {
        for g in [sl2(), aff1(), heisenberg(), LieAlgebra::abelian(2)] {
            let n = g.dim();
            assert!(check_rota_baxter(&g, &Matrix::zeros(n, n), &int(-1)).unwrap().holds);
            assert!(check_rota_baxter(&g, &Matrix::identity(n), &int(-1)).unwrap().holds);
        }
        let rb = sl2_projection_fixture();
        assert!(check_rota_baxter(&rb.algebra, &rb.operator, &rb.weight).unwrap().holds);
        assert!(check_rota_baxter(&sl2(), &Matrix::identity(2), &int(-1)).is_err());
    }

    #[test]
    fn non_rota_baxter_detected() {
        let g = sl2();
        let b = Matrix::diagonal(&[int(1), int(0), int(0)]).scale(&int(2));
        let c = check_rota_baxter(&g, &b, &int(-1)).unwrap();
        assert!(!c.holds);
        assert!(c.witness.is_some());
    }

    #[test]
    fn tilde_examples() {
        let g = sl2();
        let zero = RotaBaxterLie::new(g.clone(), Matrix::zeros(3, 3), int(-1)).unwrap();
        assert_eq!(tilde_operator(&zero).operator, Matrix::identity(3));
        let id = RotaBaxterLie::new(g.clone(), Matrix::identity(3), int(-1)).unwrap();
        assert!(tilde_operator(&id).operator.is_zero());
        let rb = sl2_projection_fixture();
        let t = tilde_operator(&rb);
        assert_eq!(t.operator, Matrix::diagonal(&[int(1), int(0), int(0)]));
        assert!(is_rota_baxter(&t));
        assert_eq!(tilde_operator(&t), rb);
    }

    #[test]
    fn descendent_examples() {
        let g = sl2();
        let zero = RotaBaxterLie::new(g.clone(), Matrix::zeros(3, 3), int(-1)).unwrap();
        assert_eq!(descendent_algebra(&zero), g.negated());

        let ab = abelian_half_fixture();
        assert!(descendent_algebra(&ab).is_abelian());

        let d = descendent_algebra(&sl2_projection_fixture());
        assert_eq!(d.basis_bracket(0, 1), vec![int(0); 3]);
        assert_eq!(d.basis_bracket(0, 2), vec![int(0); 3]);
        assert_eq!(d.basis_bracket(1, 2), vec![int(0), int(0), int(-2)]);
        assert!(d.is_valid());
    }

    #[test]
    fn split_examples() {
        let g = sl2();
        let id = RotaBaxterLie::new(g.clone(), Matrix::identity(3), int(-1)).unwrap();
        let s = split_subalgebras(&id).unwrap();
        assert_eq!(s.g_plus.space, Subspace::full(3));
        assert_eq!(s.g_minus.space, Subspace::zero(3));
        assert_eq!(s.h_plus, Subspace::full(3));
        assert_eq!(s.h_minus, Subspace::zero(3));

        let s = split_subalgebras(&sl2_projection_fixture()).unwrap();
        assert_eq!(s.g_plus.space, Subspace::span(3, &[e(3, 1), e(3, 2)]).unwrap());
        assert_eq!(s.g_minus.space, Subspace::span(3, &[e(3, 0)]).unwrap());
        assert_eq!(s.intersection.dim(), 0);
        assert!(s.checks.iter().all(|c| c.holds));

        let s = split_subalgebras(&abelian_half_fixture()).unwrap();
        assert_eq!(s.g_plus.space, Subspace::full(2));
        assert_eq!(s.g_minus.space, Subspace::span(2, &[e(2, 0)]).unwrap());
        assert_eq!(s.intersection, Subspace::span(2, &[e(2, 0)]).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let id = RotaBaxterLie::new(sl2(), Matrix::identity(3), int(-1)).unwrap();
        assert_eq!(quotient_rb(&id).unwrap().quotient.dim(), 0);

        let q0 = quotient_rb(&sl2_projection_fixture()).unwrap();
        assert_eq!(q0.ideal, Subspace::full(3));
        assert_eq!(q0.quotient.dim(), 0);

        let qa = quotient_rb(&abelian_half_fixture()).unwrap();
        assert_eq!(qa.ideal, Subspace::span(2, &[e(2, 1)]).unwrap());
        assert_eq!(qa.quotient.operator, Matrix::diagonal(&[q(1, 2)]));
        assert!(qa.checks.iter().all(|c| c.holds), "{:?}", qa.checks);

        let w2 = RotaBaxterLie::new(sl2(), Matrix::zeros(3, 3), int(2)).unwrap();
        assert!(matches!(quotient_rb(&w2), Err(Error::WeightUnsupported(_))));
    }

    #[test]
    fn rb_homomorphisms() {
        let rb = sl2_projection_fixture();
        let id = LieHom::identity(&rb.algebra);
        assert!(check_rb_homomorphism(&id, &rb, &rb).unwrap().iter().all(|c| c.holds));

        let zero_alg = LieAlgebra::abelian(0);
        let zero_rb = RotaBaxterLie::new(zero_alg.clone(), Matrix::zeros(0, 0), int(-1)).unwrap();
        let to_zero = LieHom { source: rb.algebra.clone(), target: zero_alg, matrix: Matrix::zeros(0, 3) };
        assert!(check_rb_homomorphism(&to_zero, &rb, &zero_rb).unwrap().iter().all(|c| c.holds));

        let scale_e = LieHom {
            source: rb.algebra.clone(),
            target: rb.algebra.clone(),
            matrix: Matrix::diagonal(&[int(2), int(1), int(1)]),
        };
        let checks = check_rb_homomorphism(&scale_e, &rb, &rb).unwrap();
        assert!(!checks[0].holds);
        assert!(checks[0].witness.as_ref().unwrap().starts_with("(e, f)"));
        assert!(checks[1].holds);

        let other = RotaBaxterLie { weight: int(1), ..rb.clone() };
        assert!(matches!(
            check_rb_homomorphism(&id, &rb, &other),
            Err(Error::WeightMismatch(_, _))
        ));
    }

    #[test]
    fn lemma_suite_examples() {
        for rb in [
            RotaBaxterLie::new(sl2(), Matrix::zeros(3, 3), int(-1)).unwrap(),
            sl2_projection_fixture(),
            abelian_half_fixture(),
        ] {
            let checks = lemma_suite_lie(&rb, None);
            assert!(checks.iter().all(|c| c.holds), "{checks:?}");
        }
    }

    #[test]
    fn projection_along_complement() {
        let a = Subspace::span(2, &[e(2, 0)]).unwrap();
        let b = Subspace::span(2, &[vec![int(1), int(1)]]).unwrap();
        let p = projection_along(&a, &b).unwrap();
        assert_eq!(p.apply(&e(2, 0)), e(2, 0));
        assert_eq!(p.apply(&[int(1), int(1)]), vec![int(0), int(0)]);
        assert!(projection_along(&a, &a).is_err());
    }
}
