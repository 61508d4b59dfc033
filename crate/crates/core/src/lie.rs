//! Finite-dimensional Lie algebras given by structure constants.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{
    format_combination, int, is_zero_vec, unit_vec, vec_add, vec_neg, zero_vec, Matrix,
    Rational, Subspace, Vector,
};
use crate::report::Check;

/// Lie algebra with `[b_i, b_j] = sum_k c[i][j][k] b_k`.
///
/// Construction does not validate; call [`LieAlgebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    constants: Vec<Rational>,
}

impl LieAlgebra {
    /// Builds from a flat `dim^3` array indexed `(i*dim + j)*dim + k`.
    pub fn from_flat(labels: Vec<String>, constants: Vec<Rational>) -> Result<Self> {
        let dim = labels.len();
        if constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "structure constants for dimension {dim} need {} entries, got {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        Ok(Self { dim, labels, constants })
    }

    /// Builds from a nested `c[i][j][k]` tensor; ragged tensors are rejected.
    pub fn from_tensor(labels: Vec<String>, c: &[Vec<Vec<Rational>>]) -> Result<Self> {
        let dim = labels.len();
        check_tensor_shape(c, dim)?;
        let constants = c.iter().flatten().flatten().cloned().collect();
        Self::from_flat(labels, constants)
    }

    /// Builds from the brackets of pairs `i < j`; antisymmetry fills the rest.
    pub fn from_brackets(labels: Vec<String>, brackets: &[(usize, usize, Vector)]) -> Result<Self> {
        let dim = labels.len();
        let mut g = Self::abelian_with_labels(labels);
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "bracket entry ({i},{j}) does not fit dimension {dim}"
                )));
            }
            for (k, x) in v.iter().enumerate() {
                g.set(*i, *j, k, x.clone());
                g.set(*j, *i, k, -x.clone());
            }
        }
        Ok(g)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::abelian_with_labels((1..=dim).map(|i| format!("x{i}")).collect())
    }

    pub fn abelian_with_labels(labels: Vec<String>) -> Self {
        let dim = labels.len();
        Self { dim, labels, constants: vec![Rational::zero(); dim * dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[self.idx(i, j, k)]
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let idx = self.idx(i, j, k);
        self.constants[idx] = v;
    }

    /// `[b_i, b_j]` as a coordinate vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        let start = self.idx(i, j, 0);
        self.constants[start..start + self.dim].to_vec()
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        assert_eq!(x.len(), self.dim, "left operand has wrong length");
        assert_eq!(y.len(), self.dim, "right operand has wrong length");
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi * yj;
                let start = self.idx(i, j, 0);
                for (o, c) in out.iter_mut().zip(&self.constants[start..start + self.dim]) {
                    if !c.is_zero() {
                        *o += &s * c;
                    }
                }
            }
        }
        out
    }

    pub fn try_bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "bracket operands of length {} and {} in dimension {}",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        Ok(self.bracket(x, y))
    }

    /// Structure constants of the bilinear map `(b_i, b_j) -> f(i, j)`.
    pub fn from_bilinear(labels: Vec<String>, f: impl Fn(usize, usize) -> Vector) -> Self {
        let dim = labels.len();
        let mut g = Self::abelian_with_labels(labels);
        for i in 0..dim {
            for j in 0..dim {
                for (k, v) in f(i, j).into_iter().enumerate() {
                    g.set(i, j, k, v);
                }
            }
        }
        g
    }

    /// Same space with bracket `-[x, y]`.
    pub fn negated(&self) -> Self {
        Self { dim: self.dim, labels: self.labels.clone(), constants: vec_neg(&self.constants) }
    }

    pub fn is_abelian(&self) -> bool {
        is_zero_vec(&self.constants)
    }

    /// Antisymmetry and Jacobi on every basis triple.
    pub fn validate(&self) -> Vec<Check> {
        vec![self.check_antisymmetry(), self.check_jacobi()]
    }

    pub fn check_antisymmetry(&self) -> Check {
        let n = self.dim;
        let witness = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .find(|&(i, j, k)| *self.constant(i, j, k) != -self.constant(j, i, k).clone())
            .map(|(i, j, k)| format!("({i},{j},{k})"));
        Check::from_witness("antisymmetry", "lie-algebra-axioms", witness)
    }

    pub fn check_jacobi(&self) -> Check {
        let n = self.dim;
        let mut witness = None;
        'outer: for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let e = |a| unit_vec(n, a);
                    let t1 = self.bracket(&self.basis_bracket(i, j), &e(l));
                    let t2 = self.bracket(&self.basis_bracket(j, l), &e(i));
                    let t3 = self.bracket(&self.basis_bracket(l, i), &e(j));
                    let sum = vec_add(&vec_add(&t1, &t2), &t3);
                    if let Some(k) = sum.iter().position(|x| !x.is_zero()) {
                        witness = Some(format!("({i},{j},{l},{k})"));
                        break 'outer;
                    }
                }
            }
        }
        Check::from_witness("jacobi", "lie-algebra-axioms", witness)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().iter().all(|c| c.holds)
    }

    /// Readable form of a coordinate vector.
    pub fn describe(&self, v: &[Rational]) -> String {
        format_combination(&self.labels, v)
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (p, n) = (self.dim, self.dim + other.dim);
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut g = Self::abelian_with_labels(labels);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    g.set(i, j, k, self.constant(i, j, k).clone());
                }
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                for k in 0..other.dim {
                    g.set(p + i, p + j, p + k, other.constant(i, j, k).clone());
                }
            }
        }
        debug_assert_eq!(g.dim, n);
        g
    }

    /// Nested tensor `c[i][j][k]`.
    pub fn tensor(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_bracket(i, j)).collect())
            .collect()
    }
}

fn check_tensor_shape(c: &[Vec<Vec<Rational>>], dim: usize) -> Result<()> {
    if c.len() != dim {
        return Err(Error::DimensionMismatch(format!("tensor has {} slices, expected {dim}", c.len())));
    }
    for (i, slice) in c.iter().enumerate() {
        if slice.len() != dim {
            return Err(Error::DimensionMismatch(format!("slice {i} has {} rows", slice.len())));
        }
        for (j, row) in slice.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(format!("entry ({i},{j}) has {} terms", row.len())));
            }
        }
    }
    Ok(())
}

/// Validates a raw tensor: antisymmetry and Jacobi, after a shape check.
pub fn validate_lie_algebra(c: &[Vec<Vec<Rational>>]) -> Result<Vec<Check>> {
    let dim = c.len();
    let labels = (1..=dim).map(|i| format!("x{i}")).collect();
    Ok(LieAlgebra::from_tensor(labels, c)?.validate())
}

/// A subalgebra together with its induced structure constants, expressed in
/// the echelon basis of the subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedSubalgebra {
    pub space: Subspace,
    pub induced: LieAlgebra,
}

impl EmbeddedSubalgebra {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Ambient vector of the given subalgebra coordinates.
    pub fn embed(&self, coords: &[Rational]) -> Vector {
        self.space.combine(coords)
    }

    /// Subalgebra coordinates of an ambient vector, if it lies inside.
    pub fn coords(&self, v: &[Rational]) -> Option<Vector> {
        self.space.coordinates(v)
    }

    /// Inclusion map as an ambient-by-sub matrix.
    pub fn inclusion(&self) -> Matrix {
        self.space.basis().transpose()
    }
}

/// Induced bracket on `s`, or the first pair of basis rows whose bracket
/// leaves `s`.
pub fn induced_subalgebra(g: &LieAlgebra, s: &Subspace) -> Result<EmbeddedSubalgebra> {
    if s.ambient_dim() != g.dim() {
        return Err(Error::DimensionMismatch(format!(
            "subspace of dimension-{} space inside a dimension-{} algebra",
            s.ambient_dim(),
            g.dim()
        )));
    }
    let basis = s.basis_vectors();
    let labels: Vec<String> = basis.iter().map(|v| g.describe(v)).collect();
    let d = basis.len();
    let mut table = vec![vec![zero_vec(d); d]; d];
    for p in 0..d {
        for r in p + 1..d {
            let br = g.bracket(&basis[p], &basis[r]);
            let coords = s.coordinates(&br).ok_or_else(|| Error::NotClosed {
                left: labels[p].clone(),
                right: labels[r].clone(),
            })?;
            table[r][p] = vec_neg(&coords);
            table[p][r] = coords;
        }
    }
    let induced = LieAlgebra::from_tensor(labels, &table)?;
    Ok(EmbeddedSubalgebra { space: s.clone(), induced })
}

/// First basis element and ideal generator whose bracket leaves `i`.
pub fn ideal_witness(g: &LieAlgebra, i: &Subspace) -> Option<String> {
    for k in 0..g.dim() {
        for v in i.basis_vectors() {
            let br = g.bracket(&unit_vec(g.dim(), k), &v);
            if !i.contains(&br) {
                return Some(format!("[{}, {}] = {}", g.label(k), g.describe(&v), g.describe(&br)));
            }
        }
    }
    None
}

/// Quotient by an ideal, realised on the coordinates that are not pivots of
/// the ideal's echelon basis, together with the canonical projection.
pub fn quotient_by_ideal(g: &LieAlgebra, i: &Subspace) -> Result<(LieAlgebra, LieHom)> {
    if i.ambient_dim() != g.dim() {
        return Err(Error::DimensionMismatch(format!(
            "ideal lives in dimension {}, algebra has dimension {}",
            i.ambient_dim(),
            g.dim()
        )));
    }
    if let Some(w) = ideal_witness(g, i) {
        return Err(Error::NotAnIdeal(w));
    }
    let keep = i.non_pivots();
    let n = g.dim();
    let project = |v: &[Rational]| -> Vector {
        let r = i.reduce(v);
        keep.iter().map(|&c| r[c].clone()).collect()
    };
    let labels: Vec<String> = keep.iter().map(|&c| g.label(c).to_string()).collect();
    let q = LieAlgebra::from_bilinear(labels, |a, b| {
        project(&g.basis_bracket(keep[a], keep[b]))
    });
    let cols: Vec<Vector> = (0..n).map(|k| project(&unit_vec(n, k))).collect();
    let matrix = Matrix::from_cols(cols, keep.len())?;
    let hom = LieHom { source: g.clone(), target: q.clone(), matrix };
    Ok((q, hom))
}

/// Candidate Lie algebra homomorphism; `matrix` is target-dim by source-dim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieHom {
    pub source: LieAlgebra,
    pub target: LieAlgebra,
    pub matrix: Matrix,
}

impl LieHom {
    pub fn identity(g: &LieAlgebra) -> Self {
        Self { source: g.clone(), target: g.clone(), matrix: Matrix::identity(g.dim()) }
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        self.matrix.apply(v)
    }
}

/// `f([b_i, b_j]) = [f(b_i), f(b_j)]` for all `i < j`.
pub fn check_homomorphism(f: &LieHom) -> Result<Check> {
    let (n, m) = (f.source.dim(), f.target.dim());
    if f.matrix.rows() != m || f.matrix.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "map matrix is {}x{}, expected {m}x{n}",
            f.matrix.rows(),
            f.matrix.cols()
        )));
    }
    Ok(hom_check(&f.source, &f.target, &f.matrix, "homomorphism", "lie-homomorphism"))
}

/// Bracket compatibility of `m` between two algebras, without shape checks.
pub fn hom_check(src: &LieAlgebra, dst: &LieAlgebra, m: &Matrix, name: &str, anchor: &str) -> Check {
    let n = src.dim();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = m.apply(&src.basis_bracket(i, j));
            let rhs = dst.bracket(&m.col(i), &m.col(j));
            if lhs != rhs {
                return Check::fail(
                    name,
                    anchor,
                    format!(
                        "({}, {}): f([x,y]) = {} but [f(x), f(y)] = {}",
                        src.label(i),
                        src.label(j),
                        dst.describe(&lhs),
                        dst.describe(&rhs)
                    ),
                );
            }
        }
    }
    Check::pass(name, anchor)
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// sl2 in the basis `(e, h, f)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_brackets(
        labels(&["e", "h", "f"]),
        &[
            (0, 1, vec![int(-2), int(0), int(0)]),
            (0, 2, vec![int(0), int(1), int(0)]),
            (1, 2, vec![int(0), int(0), int(-2)]),
        ],
    )
    .expect("fixed shape")
}

/// The two-dimensional non-abelian algebra `[a, b] = b`.
pub fn aff1() -> LieAlgebra {
    LieAlgebra::from_brackets(labels(&["a", "b"]), &[(0, 1, vec![int(0), int(1)])])
        .expect("fixed shape")
}

/// The three-dimensional Heisenberg algebra `[x, y] = z`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::from_brackets(labels(&["x", "y", "z"]), &[(0, 1, vec![int(0), int(0), int(1)])])
        .expect("fixed shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn e(n: usize, i: usize) -> Vector {
        unit_vec(n, i)
    }

    #[test]
    fn fixtures_validate() {
        for g in [LieAlgebra::abelian(4), sl2(), aff1(), heisenberg()] {
            assert!(g.is_valid(), "{g:?}");
        }
    }

    #[test]
    fn antisymmetry_witness() {
        let mut c = vec![vec![zero_vec(2); 2]; 2];
        c[0][1][0] = int(1);
        c[1][0][0] = int(1);
        let checks = validate_lie_algebra(&c).unwrap();
        assert!(!checks[0].holds);
        assert_eq!(checks[0].witness.as_deref(), Some("(0,1,0)"));
    }

    #[test]
    fn ragged_tensor_rejected() {
        let c = vec![vec![zero_vec(2), zero_vec(1)], vec![zero_vec(2); 2]];
        assert!(matches!(validate_lie_algebra(&c), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn jacobi_violation_detected() {
        // [x1,x2] = x3, [x2,x3] = x1, [x1,x3] = x1 is antisymmetric but not Lie
        let g = LieAlgebra::from_brackets(
            labels(&["x1", "x2", "x3"]),
            &[
                (0, 1, vec![int(0), int(0), int(1)]),
                (1, 2, vec![int(1), int(0), int(0)]),
                (0, 2, vec![int(1), int(0), int(0)]),
            ],
        )
        .unwrap();
        let checks = g.validate();
        assert!(checks[0].holds);
        assert!(!checks[1].holds);
    }

    #[test]
    fn sl2_brackets() {
        let g = sl2();
        assert_eq!(g.bracket(&e(3, 0), &e(3, 2)), e(3, 1));
        let x = vec![q(1, 2), int(3), int(-1)];
        assert_eq!(g.bracket(&x, &x), zero_vec(3));
        assert_eq!(LieAlgebra::abelian(2).bracket(&e(2, 0), &e(2, 1)), zero_vec(2));
        assert!(g.try_bracket(&e(2, 0), &e(3, 0)).is_err());
    }

    #[test]
    fn induced_subalgebras() {
        let g = sl2();
        let whole = induced_subalgebra(&g, &Subspace::full(3)).unwrap();
        assert_eq!(whole.induced, g);

        let hf = Subspace::span(3, &[e(3, 1), e(3, 2)]).unwrap();
        let sub = induced_subalgebra(&g, &hf).unwrap();
        assert_eq!(sub.induced.basis_bracket(0, 1), vec![int(0), int(-2)]);
        assert_eq!(sub.induced.labels(), &["h".to_string(), "f".to_string()]);

        let ef = Subspace::span(3, &[e(3, 0), e(3, 2)]).unwrap();
        assert_eq!(
            induced_subalgebra(&g, &ef),
            Err(Error::NotClosed { left: "e".into(), right: "f".into() })
        );
    }

    #[test]
    fn quotients() {
        let g = sl2();
        let (q0, p0) = quotient_by_ideal(&g, &Subspace::zero(3)).unwrap();
        assert_eq!(q0, g);
        assert_eq!(p0.matrix, Matrix::identity(3));
        let (qf, _) = quotient_by_ideal(&g, &Subspace::full(3)).unwrap();
        assert_eq!(qf.dim(), 0);

        let a = aff1();
        let (qa, pa) = quotient_by_ideal(&a, &Subspace::span(2, &[e(2, 1)]).unwrap()).unwrap();
        assert_eq!(qa.dim(), 1);
        assert!(qa.is_abelian());
        assert!(check_homomorphism(&pa).unwrap().holds);

        let not_ideal = Subspace::span(2, &[e(2, 0)]).unwrap();
        assert!(matches!(quotient_by_ideal(&a, &not_ideal), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn homomorphism_checks() {
        let g = sl2();
        assert!(check_homomorphism(&LieHom::identity(&g)).unwrap().holds);
        let zero = LieHom { source: g.clone(), target: g.clone(), matrix: Matrix::zeros(3, 3) };
        assert!(check_homomorphism(&zero).unwrap().holds);

        let mut swap = Matrix::zeros(3, 3);
        swap.set(2, 0, int(1));
        swap.set(1, 1, int(1));
        swap.set(0, 2, int(1));
        let f = LieHom { source: g.clone(), target: g.clone(), matrix: swap.clone() };
        let c = check_homomorphism(&f).unwrap();
        assert!(!c.holds);
        // (e, f) is one of the failing pairs: f(h) = h but [f, e] = -h
        assert_eq!(swap.apply(&g.basis_bracket(0, 2)), e(3, 1));
        assert_eq!(g.bracket(&swap.col(0), &swap.col(2)), vec_neg(&e(3, 1)));

        swap.set(1, 1, int(-1));
        let honest = LieHom { source: g.clone(), target: g, matrix: swap };
        assert!(check_homomorphism(&honest).unwrap().holds);

        let bad_shape = LieHom { source: aff1(), target: sl2(), matrix: Matrix::zeros(2, 2) };
        assert!(check_homomorphism(&bad_shape).is_err());
    }
}
