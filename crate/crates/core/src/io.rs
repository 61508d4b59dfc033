//! JSON file formats. Rationals travel as strings `"p/q"` or `"p"`.
//!
//! Group files list the identity first; every index refers to that order.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{validate_group, FiniteGroup};
use crate::lie::LieAlgebra;
use crate::linalg::{format_rational, parse_rational, zero_vec, Matrix, Rational, Vector};
use crate::matched_group::MatchedPairGroup;
use crate::matched_lie::MatchedPairLie;
use crate::quadratic::QuadraticRB;
use crate::rb_group::SearchMode;
use crate::rb_lie::RotaBaxterLie;
use crate::report::Check;

fn expect_kind(found: &str, expected: &str) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::Parse(format!("expected kind {expected:?}, found {found:?}")))
    }
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn rationals(strings: &[String]) -> Result<Vector> {
    strings.iter().map(|s| parse_rational(s)).collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn matrix_from_rows(rows: &[Vec<String>], n: usize, what: &str) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Malformed(format!("{what} must be {n}x{n}")));
    }
    let rows = rows.iter().map(|r| rationals(r)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows, n)
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    m.row_vectors().iter().map(|r| strings(r)).collect()
}

/// Sparse vector `[[k, "p/q"], ...]`; repeated indices accumulate.
fn sparse_to_dense(terms: &[(usize, String)], n: usize, what: &str) -> Result<Vector> {
    let mut v = zero_vec(n);
    for (k, s) in terms {
        if *k >= n {
            return Err(Error::Malformed(format!("{what}: index {k} outside 0..{n}")));
        }
        v[*k] += parse_rational(s)?;
    }
    Ok(v)
}

fn dense_to_sparse(v: &[Rational]) -> Vec<(usize, String)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, format_rational(x))).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LieAlgebraFile {
    pub kind: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
}

impl LieAlgebraFile {
    pub fn from_algebra(g: &LieAlgebra) -> Self {
        let n = g.dim();
        let brackets = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let terms = dense_to_sparse(&g.basis_bracket(i, j));
                (!terms.is_empty()).then_some(BracketEntry { i, j, terms })
            })
            .collect();
        Self { kind: "lie_algebra".into(), dim: n, basis: g.labels().to_vec(), brackets }
    }

    /// Entries must have `i < j`; a pair listed twice is rejected.
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        expect_kind(&self.kind, "lie_algebra")?;
        let n = self.dim;
        if self.basis.len() != n {
            return Err(Error::Malformed(format!("{} basis names for dimension {n}", self.basis.len())));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut entries = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            if b.i >= b.j || b.j >= n {
                return Err(Error::Malformed(format!("bracket entry ({}, {}) needs i < j < {n}", b.i, b.j)));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(Error::Malformed(format!("bracket ({}, {}) listed twice", b.i, b.j)));
            }
            entries.push((b.i, b.j, sparse_to_dense(&b.terms, n, "bracket term")?));
        }
        LieAlgebra::from_brackets(self.basis.clone(), &entries)
    }
}

pub fn parse_lie(text: &str) -> Result<LieAlgebra> {
    parse_json::<LieAlgebraFile>(text)?.to_algebra()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorMatrix {
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RbLieFile {
    pub kind: String,
    pub weight: String,
    pub algebra: LieAlgebraFile,
    pub operator: OperatorMatrix,
}

impl RbLieFile {
    pub fn from_rb(rb: &RotaBaxterLie) -> Self {
        Self {
            kind: "rb_lie".into(),
            weight: format_rational(&rb.weight),
            algebra: LieAlgebraFile::from_algebra(&rb.algebra),
            operator: OperatorMatrix { matrix: matrix_rows(&rb.operator) },
        }
    }

    pub fn to_rb(&self) -> Result<RotaBaxterLie> {
        expect_kind(&self.kind, "rb_lie")?;
        let g = self.algebra.to_algebra()?;
        let b = matrix_from_rows(&self.operator.matrix, g.dim(), "operator matrix")?;
        RotaBaxterLie::new(g, b, parse_rational(&self.weight)?)
    }
}

pub fn parse_rb_lie(text: &str) -> Result<RotaBaxterLie> {
    parse_json::<RbLieFile>(text)?.to_rb()
}

/// `[i, a, terms]`: the action of basis element `i` on basis element `a`.
pub type ActionEntry = (usize, usize, Vec<(usize, String)>);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatchedPairLieFile {
    pub kind: String,
    pub g_plus: LieAlgebraFile,
    pub g_minus: LieAlgebraFile,
    pub rhd: Vec<ActionEntry>,
    pub brhd: Vec<ActionEntry>,
}

fn dense_table(entries: &[ActionEntry], actors: usize, targets: usize, what: &str) -> Result<Vec<Vec<Vector>>> {
    let mut table = vec![vec![zero_vec(targets); targets]; actors];
    for (i, a, terms) in entries {
        if *i >= actors || *a >= targets {
            return Err(Error::Malformed(format!("{what} entry ({i}, {a}) out of range")));
        }
        let v = sparse_to_dense(terms, targets, what)?;
        table[*i][*a] = crate::linalg::vec_add(&table[*i][*a], &v);
    }
    Ok(table)
}

fn sparse_table(table: &[Vec<Vector>]) -> Vec<ActionEntry> {
    table
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter().enumerate().filter_map(move |(a, v)| {
                let terms = dense_to_sparse(v);
                (!terms.is_empty()).then_some((i, a, terms))
            })
        })
        .collect()
}

impl MatchedPairLieFile {
    pub fn from_pair(mp: &MatchedPairLie) -> Self {
        Self {
            kind: "matched_pair_lie".into(),
            g_plus: LieAlgebraFile::from_algebra(&mp.g_plus),
            g_minus: LieAlgebraFile::from_algebra(&mp.g_minus),
            rhd: sparse_table(&mp.rhd),
            brhd: sparse_table(&mp.brhd),
        }
    }

    pub fn to_pair(&self) -> Result<MatchedPairLie> {
        expect_kind(&self.kind, "matched_pair_lie")?;
        let gp = self.g_plus.to_algebra()?;
        let gm = self.g_minus.to_algebra()?;
        let (p, q) = (gp.dim(), gm.dim());
        let rhd = dense_table(&self.rhd, p, q, "rhd")?;
        let brhd = dense_table(&self.brhd, q, p, "brhd")?;
        MatchedPairLie::new(gp, gm, rhd, brhd)
    }
}

pub fn parse_matched_pair_lie(text: &str) -> Result<MatchedPairLie> {
    parse_json::<MatchedPairLieFile>(text)?.to_pair()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadraticRbFile {
    pub kind: String,
    pub rb: RbLieFile,
    pub form: Vec<Vec<String>>,
}

impl QuadraticRbFile {
    pub fn from_quadratic(q: &QuadraticRB) -> Self {
        Self { kind: "quadratic_rb".into(), rb: RbLieFile::from_rb(&q.rb), form: matrix_rows(&q.form) }
    }

    pub fn to_quadratic(&self) -> Result<QuadraticRB> {
        expect_kind(&self.kind, "quadratic_rb")?;
        let rb = self.rb.to_rb()?;
        let form = matrix_from_rows(&self.form, rb.dim(), "form")?;
        QuadraticRB::new(rb, form)
    }
}

pub fn parse_quadratic(text: &str) -> Result<QuadraticRB> {
    parse_json::<QuadraticRbFile>(text)?.to_quadratic()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub kind: String,
    pub order: usize,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        Self {
            kind: "group".into(),
            order: g.order(),
            elements: g.labels().to_vec(),
            table: g.table().to_vec(),
        }
    }

    fn check_shape(&self) -> Result<()> {
        expect_kind(&self.kind, "group")?;
        let n = self.order;
        if self.elements.len() != n || self.table.len() != n {
            return Err(Error::Malformed(format!(
                "order {n} with {} names and {} rows",
                self.elements.len(),
                self.table.len()
            )));
        }
        for (i, row) in self.table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Malformed(format!("row {i} is not {n} indices in 0..{n}")));
            }
        }
        Ok(())
    }

    /// `new index -> old index`, moving a two-sided identity to index 0;
    /// the identity permutation when there is none to move.
    pub fn relabeling(&self) -> Vec<usize> {
        let n = self.table.len();
        let mut perm: Vec<usize> = (0..n).collect();
        if let Some(e) = (0..n).find(|&i| (0..n).all(|j| self.table[i][j] == j && self.table[j][i] == j)) {
            perm.swap(0, e);
        }
        perm
    }

    /// Shape problems are errors; axiom failures are checks. The axioms are
    /// checked after the identity has been moved to index 0.
    pub fn validate(&self) -> Result<(Vec<Check>, Vec<usize>)> {
        self.check_shape()?;
        let perm = self.relabeling();
        let n = self.order;
        let table: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).map(|j| perm[self.table[perm[i]][perm[j]]]).collect()).collect();
        Ok((validate_group(&table)?, perm))
    }

    /// The group and the relabeling `new index -> old index`.
    pub fn to_group(&self) -> Result<(FiniteGroup, Vec<usize>)> {
        self.check_shape()?;
        FiniteGroup::from_table(self.elements.clone(), self.table.clone())
            .map_err(|e| Error::Invalid(format!("not a group table: {e}")))
    }
}

pub fn parse_group_file(text: &str) -> Result<GroupFile> {
    parse_json(text)
}

/// The group with its identity at index 0, and the relabeling applied.
pub fn parse_group(text: &str) -> Result<(FiniteGroup, Vec<usize>)> {
    parse_group_file(text)?.to_group()
}

/// Translates a self-map given in file indices to relabeled indices.
pub fn relabel_map(values: &[usize], perm: &[usize]) -> Result<Vec<usize>> {
    let n = perm.len();
    if values.len() != n || values.iter().any(|&v| v >= n) {
        return Err(Error::Malformed(format!("group map needs {n} values in 0..{n}")));
    }
    // perm is an involution
    Ok((0..n).map(|new| perm[values[perm[new]]]).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupMapFile {
    pub kind: String,
    pub values: Vec<usize>,
}

impl GroupMapFile {
    pub fn new(values: Vec<usize>) -> Self {
        Self { kind: "group_map".into(), values }
    }
}

pub fn parse_group_map(text: &str) -> Result<Vec<usize>> {
    let f: GroupMapFile = parse_json(text)?;
    expect_kind(&f.kind, "group_map")?;
    Ok(f.values)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusOperator {
    pub values: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RbCensusFile {
    pub kind: String,
    pub group: GroupFile,
    pub operators: Vec<CensusOperator>,
    pub count: usize,
    pub mode: String,
}

impl RbCensusFile {
    pub fn new(g: &FiniteGroup, operators: &[Vec<usize>], mode: SearchMode) -> Self {
        Self {
            kind: "rb_census".into(),
            group: GroupFile::from_group(g),
            operators: operators.iter().map(|v| CensusOperator { values: v.clone() }).collect(),
            count: operators.len(),
            mode: mode.as_str().into(),
        }
    }
}

pub fn parse_census(text: &str) -> Result<RbCensusFile> {
    let f: RbCensusFile = parse_json(text)?;
    expect_kind(&f.kind, "rb_census")?;
    if f.count != f.operators.len() {
        return Err(Error::Malformed(format!("count {} but {} operators", f.count, f.operators.len())));
    }
    Ok(f)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatchedPairGroupFile {
    pub kind: String,
    pub g_plus: GroupFile,
    pub g_minus: GroupFile,
    pub rho: Vec<Vec<usize>>,
    pub mu: Vec<Vec<usize>>,
}

impl MatchedPairGroupFile {
    pub fn from_pair(mp: &MatchedPairGroup) -> Self {
        Self {
            kind: "matched_pair_group".into(),
            g_plus: GroupFile::from_group(&mp.g_plus),
            g_minus: GroupFile::from_group(&mp.g_minus),
            rho: mp.rho.clone(),
            mu: mp.mu.clone(),
        }
    }

    pub fn to_pair(&self) -> Result<MatchedPairGroup> {
        expect_kind(&self.kind, "matched_pair_group")?;
        let (g_plus, pp) = self.g_plus.to_group()?;
        let (g_minus, pm) = self.g_minus.to_group()?;
        let (p, q) = (pp.len(), pm.len());
        let table_ok = |t: &[Vec<usize>], rows: usize, cols: usize| {
            t.len() == rows && t.iter().all(|r| r.len() == cols && r.iter().all(|&v| v < cols))
        };
        if !table_ok(&self.rho, p, q) || !table_ok(&self.mu, q, p) {
            return Err(Error::Malformed(format!("action tables do not match orders ({p}, {q})")));
        }
        let rho = (0..p).map(|x| (0..q).map(|y| pm[self.rho[pp[x]][pm[y]]]).collect()).collect();
        let mu = (0..q).map(|y| (0..p).map(|x| pp[self.mu[pm[y]][pp[x]]]).collect()).collect();
        Ok(MatchedPairGroup { g_plus, g_minus, rho, mu })
    }
}

pub fn parse_matched_pair_group(text: &str) -> Result<MatchedPairGroup> {
    parse_json::<MatchedPairGroupFile>(text)?.to_pair()
}

/// The `kind` field of any file, for dispatch.
pub fn file_kind(text: &str) -> Result<String> {
    #[derive(Deserialize)]
    struct Kind {
        kind: String,
    }
    Ok(parse_json::<Kind>(text)?.kind)
}
