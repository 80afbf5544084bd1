//! Representations over GF(q): search, extension from a minor, equivalence
//! classes, fundamental matrices, stability, and the comparison of two
//! matroids that agree on a pair of single-element deletions.
//!
//! Every search works in standard form with respect to a basis `B ∪ C` of
//! `M`, where `B` is a basis of the minor `N = M / C \ D` whose representation
//! is held fixed. The support of each column is known in advance (it is the
//! fundamental circuit), so only the nonzero values are searched. Row and
//! column scaling are quotiented out by fixing the entries of a spanning
//! forest of the support graph to 1; with that gauge each equivalence class
//! of extensions has exactly one member in the search tree.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::connectivity::lambda;
use crate::field::{Elem, FieldError, FieldSpec};
use crate::matrix::{GfMatrix, MatrixError};
use crate::matroid::{make_pg, Matroid, MatroidError, MinorSpec, TABLE_CAP};
use crate::subset::Subset;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("not a basis")]
    NotABasis,
    #[error("row and column sets differ in size")]
    SizeMismatch,
    #[error("matrix does not represent the minor: {0}")]
    NotARepresentation(String),
    #[error("invalid minor: {0}")]
    InvalidMinor(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no representable partner: {0}")]
    NoPartner(String),
    #[error("{0} distinct representable partners")]
    PartnerNotUnique(usize),
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("the matroids are equal")]
    MatroidsEqual,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

pub type Result<T> = std::result::Result<T, RepError>;

/// Which representations count as the same.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    /// Row operations and column scaling.
    Projective,
    /// Projective equivalence up to a field automorphism.
    Geometric,
}

/// A matrix whose column matroid is the represented matroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    /// Columns in the matroid's ground order, labeled like the matroid.
    pub matrix: GfMatrix,
    pub basis: Subset,
    /// Ground element of each row when in standard form.
    pub rows: Vec<usize>,
    pub standard: bool,
}

impl Representation {
    pub fn matroid(&self) -> Matroid {
        Matroid::from_matrix(self.matrix.clone()).expect("representation matrix is valid")
    }

    /// Full rank-table comparison with `m`.
    pub fn represents(&self, m: &Matroid) -> bool {
        self.matroid().same_as(m)
    }

    /// `.gfm` text with a trailing `# basis` line.
    pub fn to_gfm(&self) -> String {
        let names: Vec<&str> = self.rows.iter().map(|&i| self.matrix.labels()[i].as_str()).collect();
        format!("{}# basis {}\n", self.matrix.to_gfm(), names.join(" "))
    }
}

// ---- fundamental circuits and matrices ---------------------------------

/// The unique circuit in `B ∪ {e}`.
pub fn fundamental_circuit(m: &Matroid, b: Subset, e: usize) -> Result<Subset> {
    if !m.is_basis(b) {
        return Err(RepError::NotABasis);
    }
    if b.contains(e) || e >= m.len() {
        return Err(RepError::PreconditionFailed(format!("{} is in the basis", m.label(e))));
    }
    Ok(b.iter().filter(|&x| m.is_basis(b.without(x).with(e))).fold(Subset::singleton(e), Subset::with))
}

/// 0/1 matrix with rows indexed by `B` and columns by `E \ B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalMatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `bits[i][j]`: row `rows[i]` lies in the fundamental circuit of `cols[j]`.
    pub bits: Vec<Vec<bool>>,
}

impl FundamentalMatrix {
    pub fn get(&self, b: usize, e: usize) -> Option<bool> {
        let i = self.rows.iter().position(|&x| x == b)?;
        let j = self.cols.iter().position(|&x| x == e)?;
        Some(self.bits[i][j])
    }

    /// The support pattern of the non-basis columns of a standard-form matrix.
    pub fn from_standard_form(rep: &Representation) -> FundamentalMatrix {
        let cols: Vec<usize> = (0..rep.matrix.cols()).filter(|&e| !rep.basis.contains(e)).collect();
        let bits = (0..rep.rows.len())
            .map(|i| cols.iter().map(|&e| !rep.matrix.get(i, e).is_zero()).collect())
            .collect();
        FundamentalMatrix { rows: rep.rows.clone(), cols, bits }
    }
}

pub fn fundamental_matrix(m: &Matroid, b: Subset) -> Result<FundamentalMatrix> {
    if !m.is_basis(b) {
        return Err(RepError::NotABasis);
    }
    let rows: Vec<usize> = b.iter().collect();
    let cols: Vec<usize> = (m.ground() - b).iter().collect();
    let circuits: Vec<Subset> = cols.iter().map(|&e| fundamental_circuit(m, b, e)).collect::<Result<_>>()?;
    let bits = rows.iter().map(|&r| circuits.iter().map(|c| c.contains(r)).collect()).collect();
    Ok(FundamentalMatrix { rows, cols, bits })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PatternCount {
    Zero,
    One,
    Many,
}

/// Number of permutation matrices below `A[X, Y]`, capped at two.
pub fn permutation_pattern_count(p: &FundamentalMatrix, x: Subset, y: Subset) -> Result<PatternCount> {
    if x.len() != y.len() {
        return Err(RepError::SizeMismatch);
    }
    let ri: Vec<usize> = x
        .iter()
        .map(|e| p.rows.iter().position(|&r| r == e))
        .collect::<Option<_>>()
        .ok_or_else(|| RepError::PreconditionFailed("X must lie in the basis".into()))?;
    let ci: Vec<usize> = y
        .iter()
        .map(|e| p.cols.iter().position(|&c| c == e))
        .collect::<Option<_>>()
        .ok_or_else(|| RepError::PreconditionFailed("Y must avoid the basis".into()))?;
    fn count(p: &FundamentalMatrix, ri: &[usize], ci: &[usize], used: &mut Vec<bool>, found: &mut usize) {
        let Some((&i, rest)) = ri.split_first() else {
            *found += 1;
            return;
        };
        for (k, &j) in ci.iter().enumerate() {
            if *found >= 2 {
                return;
            }
            if !used[k] && p.bits[i][j] {
                used[k] = true;
                count(p, rest, ci, used, found);
                used[k] = false;
            }
        }
    }
    let mut found = 0;
    count(p, &ri, &ci, &mut vec![false; ci.len()], &mut found);
    Ok(match found {
        0 => PatternCount::Zero,
        1 => PatternCount::One,
        _ => PatternCount::Many,
    })
}

/// The pattern count for `A[X, Y]` next to the actual basis test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExchangeCheck {
    pub pattern: PatternCount,
    pub is_basis: bool,
}

impl ExchangeCheck {
    /// A basis needs some permutation below the pattern.
    pub fn necessity_holds(&self) -> bool {
        !self.is_basis || self.pattern != PatternCount::Zero
    }

    /// A unique permutation forces a basis.
    pub fn sufficiency_holds(&self) -> bool {
        self.pattern != PatternCount::One || self.is_basis
    }
}

pub fn basis_exchange_checks(m: &Matroid, b: Subset, x: Subset, y: Subset) -> Result<ExchangeCheck> {
    let p = fundamental_matrix(m, b)?;
    let pattern = permutation_pattern_count(&p, x, y)?;
    Ok(ExchangeCheck { pattern, is_basis: m.is_basis((b - x) | y) })
}

// ---- small linear algebra ----------------------------------------------

/// Whether the square matrix with the given columns is nonsingular.
fn nonsingular(f: &FieldSpec, cols: &[&[Elem]], buf: &mut Vec<Elem>) -> bool {
    let r = cols.len();
    buf.clear();
    for c in cols {
        buf.extend_from_slice(c);
    }
    // row i of buf is column i of the matrix; the determinant is unchanged
    for pos in 0..r {
        let Some(p) = (pos..r).find(|&i| !buf[i * r + pos].is_zero()) else {
            return false;
        };
        if p != pos {
            for k in 0..r {
                buf.swap(p * r + k, pos * r + k);
            }
        }
        let inv = f.inv(buf[pos * r + pos]).unwrap();
        for i in pos + 1..r {
            let factor = f.mul(buf[i * r + pos], inv);
            if factor.is_zero() {
                continue;
            }
            for k in pos..r {
                let v = f.mul(factor, buf[pos * r + k]);
                buf[i * r + k] = f.sub(buf[i * r + k], v);
            }
        }
    }
    true
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut x = x;
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Joins the classes; false when already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a] = b;
        true
    }
}

/// Scales rows and non-basis columns of a standard-form matrix (given by
/// columns) so that the entries on a spanning forest of its support graph
/// become 1. The forest takes edges column by column in ground order, rows in
/// order. Two standard-form matrices for the same basis are projectively
/// equivalent exactly when their normalizations coincide.
fn normalize(f: &FieldSpec, r: usize, basis: Subset, cols: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let n = cols.len();
    let mut uf = UnionFind::new(r + n);
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); r + n];
    for e in (0..n).filter(|&e| !basis.contains(e)) {
        for i in 0..r {
            if !cols[e][i].is_zero() && uf.union(i, r + e) {
                adj[i].push((r + e, i));
                adj[r + e].push((i, i));
            }
        }
    }
    // potentials: row scale d[i], column scale s[e]
    let mut pot: Vec<Option<Elem>> = vec![None; r + n];
    for start in 0..r + n {
        if pot[start].is_some() {
            continue;
        }
        pot[start] = Some(Elem::ONE);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let pu = pot[u].unwrap();
            for &(v, row) in &adj[u] {
                if pot[v].is_some() {
                    continue;
                }
                let e = if u >= r { u - r } else { v - r };
                let a = cols[e][row];
                // d_row * a * s_e = 1
                pot[v] = Some(f.inv(f.mul(pu, a)).unwrap());
                stack.push(v);
            }
        }
    }
    (0..n)
        .map(|e| {
            if basis.contains(e) {
                return cols[e].clone();
            }
            let s = pot[r + e].unwrap();
            (0..r).map(|i| f.mul(f.mul(pot[i].unwrap(), cols[e][i]), s)).collect()
        })
        .collect()
}

fn flat_key(cols: &[Vec<Elem>]) -> Vec<u8> {
    cols.iter().flat_map(|c| c.iter().map(|e| e.0)).collect()
}

/// Class key of a standard-form matrix under the given equivalence.
fn class_key(f: &FieldSpec, r: usize, basis: Subset, cols: &[Vec<Elem>], eq: Equivalence) -> Vec<u8> {
    match eq {
        Equivalence::Projective => flat_key(&normalize(f, r, basis, cols)),
        Equivalence::Geometric => f
            .automorphisms()
            .iter()
            .map(|t| {
                let mapped: Vec<Vec<Elem>> =
                    cols.iter().map(|c| c.iter().map(|e| t[e.0 as usize]).collect()).collect();
                flat_key(&normalize(f, r, basis, &mapped))
            })
            .min()
            .unwrap(),
    }
}

// ---- the extension search ----------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cell {
    Zero,
    Fixed(Elem),
    /// Nonzero, fixed to 1 by the gauge.
    One,
    /// Nonzero, searched.
    Free,
}

struct Search<'a> {
    m: &'a Matroid,
    f: Arc<FieldSpec>,
    r: usize,
    rows: Vec<usize>,
    basis: Subset,
    cells: Vec<Vec<Cell>>,
    /// Non-basis elements in placement order.
    order: Vec<usize>,
    /// For each placement step, the independent `(r-1)`-sets among earlier
    /// columns and whether adding the new column gives a basis.
    checks: Vec<Vec<(Vec<usize>, bool)>>,
    cols: Vec<Vec<Elem>>,
    buf: Vec<Elem>,
}

/// Checks `spec` and returns the ground of `N`, a basis `B` of `N` and the
/// completed basis `B ∪ C` of `M` as a row list.
fn frame(m: &Matroid, spec: MinorSpec) -> Result<(Subset, Subset, Vec<usize>)> {
    let (c, d) = (spec.contract, spec.delete);
    if !c.is_disjoint(d) || !(c | d).is_subset_of(m.ground()) {
        return Err(RepError::InvalidMinor("contraction and deletion sets must be disjoint subsets".into()));
    }
    if !m.is_independent(c) {
        return Err(RepError::InvalidMinor("contraction set must be independent".into()));
    }
    if m.rank(m.ground() - d) != m.full_rank() {
        return Err(RepError::InvalidMinor("deletion set must be coindependent".into()));
    }
    let ng = m.ground() - c - d;
    let mut b = Subset::EMPTY;
    for e in ng.iter() {
        if m.rank(b | c | Subset::singleton(e)) > b.len() + c.len() {
            b = b.with(e);
        }
    }
    let rows: Vec<usize> = b.iter().chain(c.iter()).collect();
    debug_assert_eq!(rows.len(), m.full_rank());
    Ok((ng, b, rows))
}

/// The minor spec that expresses `M|X` with `C` extending a basis of `X`.
pub fn restriction_spec(m: &Matroid, x: Subset) -> MinorSpec {
    let mut c = Subset::EMPTY;
    let mut span = m.rank(x);
    for e in (m.ground() - x).iter() {
        if m.rank(x | c.with(e)) > span {
            c = c.with(e);
            span += 1;
        }
    }
    MinorSpec { contract: c, delete: m.ground() - x - c }
}

impl<'a> Search<'a> {
    fn new(m: &'a Matroid, spec: MinorSpec, a_n: &GfMatrix) -> Result<Search<'a>> {
        if m.len() > TABLE_CAP {
            return Err(MatroidError::TooLarge(m.len()).into());
        }
        let (ng, b_n, rows) = frame(m, spec)?;
        let f = a_n.field().clone();
        let r = rows.len();
        let n = m.len();
        let basis: Subset = rows.iter().copied().collect();

        // the fixed block A'[B, E(N)] from the standard form of A_N
        let mut fixed: HashMap<(usize, usize), Elem> = HashMap::new();
        if !ng.is_empty() {
            let mut a_labels: Vec<&str> = a_n.labels().iter().map(String::as_str).collect();
            a_labels.sort_unstable();
            let mut n_labels = m.names(ng);
            n_labels.sort_unstable();
            if a_labels != n_labels {
                return Err(RepError::NotARepresentation("column labels differ from the minor's ground set".into()));
            }
            let target = m.minor(spec)?;
            if !Matroid::from_matrix(a_n.clone())?.same_as(&target) {
                return Err(RepError::NotARepresentation("column matroid differs from the minor".into()));
            }
            let col_of = |e: usize| a_n.column_index(m.label(e)).unwrap();
            let bcols: Vec<usize> = b_n.iter().map(col_of).collect();
            let std = a_n.standard_form(&bcols)?;
            for e in ng.iter() {
                for (i, _) in b_n.iter().enumerate() {
                    fixed.insert((i, e), std.get(i, col_of(e)));
                }
            }
        } else if a_n.cols() != 0 {
            return Err(RepError::NotARepresentation("expected an empty matrix for an empty minor".into()));
        }

        let mut cells = vec![vec![Cell::Zero; r]; n];
        for (i, &b) in rows.iter().enumerate() {
            cells[b][i] = Cell::Fixed(Elem::ONE);
            for (k, _) in rows.iter().enumerate().filter(|&(k, _)| k != i) {
                cells[b][k] = Cell::Fixed(Elem::ZERO);
            }
        }
        let mut uf = UnionFind::new(r + n);
        let nonbasis: Vec<usize> = (m.ground() - basis).iter().collect();
        let mut support: Vec<Subset> = vec![Subset::EMPTY; n];
        for &e in &nonbasis {
            let circ = fundamental_circuit(m, basis, e)?;
            support[e] = circ.without(e);
            for (i, &b) in rows.iter().enumerate() {
                if let Some(&v) = fixed.get(&(i, e)) {
                    if v.is_zero() == circ.contains(b) {
                        return Err(RepError::NotARepresentation("support disagrees with a fundamental circuit".into()));
                    }
                    cells[e][i] = Cell::Fixed(v);
                    if !v.is_zero() {
                        uf.union(i, r + e);
                    }
                }
            }
        }
        let unknown = |cells: &Vec<Vec<Cell>>, e: usize| {
            rows.iter().enumerate().any(|(i, &b)| support[e].contains(b) && !matches!(cells[e][i], Cell::Fixed(_)))
        };
        let (mut order, rest): (Vec<usize>, Vec<usize>) = nonbasis.iter().partition(|&&e| !unknown(&cells, e));
        order.extend(rest);
        for &e in &order {
            for (i, &b) in rows.iter().enumerate() {
                if support[e].contains(b) && !matches!(cells[e][i], Cell::Fixed(_)) {
                    cells[e][i] = if uf.union(i, r + e) { Cell::One } else { Cell::Free };
                }
            }
        }

        let mut checks = Vec::with_capacity(order.len());
        let mut placed = basis;
        for &e in &order {
            let mut list = Vec::new();
            if r > 0 {
                for s in placed.subsets_of_size(r - 1) {
                    if m.is_independent(s) {
                        list.push((s.iter().collect(), m.is_basis(s.with(e))));
                    }
                }
            }
            checks.push(list);
            placed = placed.with(e);
        }
        let cols = (0..n)
            .map(|e| {
                cells[e]
                    .iter()
                    .map(|c| match c {
                        Cell::Fixed(v) => *v,
                        Cell::One => Elem::ONE,
                        _ => Elem::ZERO,
                    })
                    .collect()
            })
            .collect();
        Ok(Search { m, f, r, rows, basis, cells, order, checks, cols, buf: Vec::new() })
    }

    fn column_ok(&mut self, step: usize) -> bool {
        let e = self.order[step];
        let Search { f, cols, buf, checks, .. } = self;
        for (s, want) in &checks[step] {
            let mut v: Vec<&[Elem]> = s.iter().map(|&x| cols[x].as_slice()).collect();
            v.push(&cols[e]);
            if nonsingular(f, &v, buf) != *want {
                return false;
            }
        }
        true
    }

    /// Depth-first enumeration of valid completions; `visit` returns false
    /// to stop.
    fn run(&mut self, visit: &mut dyn FnMut(&Search) -> bool) -> bool {
        self.step(0, visit)
    }

    fn step(&mut self, k: usize, visit: &mut dyn FnMut(&Search) -> bool) -> bool {
        if k == self.order.len() {
            return visit(self);
        }
        let e = self.order[k];
        let free: Vec<usize> = (0..self.r).filter(|&i| self.cells[e][i] == Cell::Free).collect();
        let nonzero: Vec<Elem> = self.f.nonzero().collect();
        let mut idx = vec![0usize; free.len()];
        loop {
            for (slot, &i) in free.iter().enumerate() {
                self.cols[e][i] = nonzero[idx[slot]];
            }
            if self.column_ok(k) && !self.step(k + 1, visit) {
                return false;
            }
            // odometer, first free cell varies slowest
            let mut p = free.len();
            loop {
                if p == 0 {
                    return true;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < nonzero.len() {
                    break;
                }
                idx[p] = 0;
            }
        }
    }

    fn representation(&self) -> Representation {
        let labels = self.m.labels().to_vec();
        let matrix = GfMatrix::from_columns(self.f.clone(), self.r, &self.cols, labels).expect("shape is consistent");
        Representation { matrix, basis: self.basis, rows: self.rows.clone(), standard: true }
    }
}

/// Extends a representation of the minor `M / C \ D` (given by `spec`) to
/// one of `M`, in standard form with respect to `B ∪ C` where `B` is the
/// lexicographically first basis of the minor.
pub fn extend_minor_representation(m: &Matroid, spec: MinorSpec, a_n: &GfMatrix) -> Result<Option<Representation>> {
    let mut s = Search::new(m, spec, a_n)?;
    let mut found = None;
    s.run(&mut |s| {
        found = Some(s.representation());
        false
    });
    if let Some(rep) = &found {
        debug_assert!(rep.represents(m));
    }
    Ok(found)
}

/// All completions of the gauge-fixed search, one per projective class.
pub fn enumerate_minor_extensions(m: &Matroid, spec: MinorSpec, a_n: &GfMatrix) -> Result<Vec<Representation>> {
    let mut s = Search::new(m, spec, a_n)?;
    let mut out = Vec::new();
    s.run(&mut |s| {
        out.push(s.representation());
        true
    });
    Ok(out)
}

pub fn count_minor_extensions(m: &Matroid, spec: MinorSpec, a_n: &GfMatrix, eq: Equivalence) -> Result<usize> {
    let mut s = Search::new(m, spec, a_n)?;
    let mut keys = BTreeSet::new();
    let mut total = 0usize;
    s.run(&mut |s| {
        total += 1;
        keys.insert(class_key(&s.f, s.r, s.basis, &s.cols, eq));
        true
    });
    if eq == Equivalence::Projective {
        debug_assert_eq!(keys.len(), total, "gauge-fixed completions are pairwise inequivalent");
    }
    Ok(keys.len())
}

/// Extends a representation `A_N` of the restriction `M|N` to one of `M`.
pub fn extend_representation(m: &Matroid, n: Subset, a_n: &GfMatrix) -> Result<Option<Representation>> {
    extend_minor_representation(m, restriction_spec(m, n), a_n)
}

pub fn count_inequivalent_extensions(m: &Matroid, n: Subset, a_n: &GfMatrix, allow_automorphisms: bool) -> Result<usize> {
    let eq = if allow_automorphisms { Equivalence::Geometric } else { Equivalence::Projective };
    count_minor_extensions(m, restriction_spec(m, n), a_n, eq)
}

fn empty_matrix(q: u32) -> Result<GfMatrix> {
    Ok(GfMatrix::new(FieldSpec::shared(q)?, 0, 0, Vec::new(), Vec::new())?)
}

pub fn find_representation(m: &Matroid, q: u32) -> Result<Option<Representation>> {
    extend_representation(m, Subset::EMPTY, &empty_matrix(q)?)
}

pub fn is_representable(m: &Matroid, q: u32) -> Result<bool> {
    Ok(find_representation(m, q)?.is_some())
}

/// One representation per projective class.
pub fn enumerate_representations(m: &Matroid, q: u32) -> Result<Vec<Representation>> {
    enumerate_minor_extensions(m, restriction_spec(m, Subset::EMPTY), &empty_matrix(q)?)
}

pub fn count_representations(m: &Matroid, q: u32, eq: Equivalence) -> Result<usize> {
    count_minor_extensions(m, restriction_spec(m, Subset::EMPTY), &empty_matrix(q)?, eq)
}

/// Reorders the columns of `a` to the label order `labels`.
fn reorder(a: &GfMatrix, labels: &[String]) -> Option<GfMatrix> {
    let idx: Option<Vec<usize>> = labels.iter().map(|l| a.column_index(l)).collect();
    let idx = idx?;
    (idx.len() == a.cols()).then(|| a.select_columns(&idx))
}

/// Whether two matrices with the same column labels are equivalent
/// representations of the same matroid.
pub fn equivalent(a: &GfMatrix, b: &GfMatrix, eq: Equivalence) -> bool {
    if a.field().order() != b.field().order() {
        return false;
    }
    let Some(b) = reorder(b, a.labels()) else {
        return false;
    };
    let ma = Matroid::from_matrix(a.clone()).expect("valid matrix");
    let mb = Matroid::from_matrix(b.clone()).expect("valid matrix");
    if !ma.same_as(&mb) || ma.len() > TABLE_CAP {
        return false;
    }
    let spec = restriction_spec(&ma, Subset::EMPTY);
    let rows: Vec<usize> = spec.contract.iter().collect();
    let key = |x: &GfMatrix| {
        let s = x.standard_form(&rows).expect("basis of both");
        let cols: Vec<Vec<Elem>> = (0..s.cols()).map(|c| s.column(c)).collect();
        class_key(a.field(), rows.len(), spec.contract, &cols, eq)
    };
    key(a) == key(&b)
}

/// The representation `A'[B, E(N)]` of `N = M / C \ D` induced by a
/// representation of `M`.
pub fn induced_representation(m: &Matroid, rep: &GfMatrix, spec: MinorSpec) -> Result<GfMatrix> {
    let (ng, b, rows) = frame(m, spec)?;
    let full = reorder(rep, m.labels()).ok_or(RepError::GroundMismatch)?;
    let std = full.standard_form(&rows)?;
    let ncols: Vec<usize> = ng.iter().collect();
    let sel = std.select_columns(&ncols);
    let entries = (0..b.len()).flat_map(|i| (0..sel.cols()).map(move |j| (i, j))).map(|(i, j)| sel.get(i, j)).collect();
    Ok(GfMatrix::new(rep.field().clone(), b.len(), sel.cols(), entries, sel.labels().to_vec())?)
}

/// For each projective class of representations of `N = M / C \ D`, the
/// number of inequivalent representations of `M` extending it. `N`
/// stabilizes `M` when no entry exceeds 1.
pub fn extension_classes_per_minor_rep(m: &Matroid, spec: MinorSpec, q: u32) -> Result<Vec<usize>> {
    let n = m.minor(spec)?;
    enumerate_representations(&n, q)?
        .iter()
        .map(|rep| count_minor_extensions(m, spec, &rep.matrix, Equivalence::Projective))
        .collect()
}

// ---- stability ---------------------------------------------------------

/// The 2-sum part on `A ∪ {z}` of an exact 2-separation `(A, B)`.
pub fn two_sum_part(m: &Matroid, a: Subset) -> Result<Matroid> {
    let b = m.ground() - a;
    let idx: Vec<usize> = a.iter().collect();
    let k = idx.len();
    let mut labels: Vec<String> = idx.iter().map(|&i| m.label(i).to_string()).collect();
    let mut z = String::from("z");
    while labels.contains(&z) {
        z.push('\'');
    }
    labels.push(z);
    let rb = m.rank(b);
    Ok(Matroid::from_rank_fn(labels, |s| {
        let x: Subset = s.iter().filter(|&i| i < k).map(|i| idx[i]).collect();
        if s.contains(k) {
            m.rank(x | b) - rb + 1
        } else {
            m.rank(x)
        }
    })?)
}

/// Connected, and not a 2-sum of two non-binary matroids.
pub fn is_stable(m: &Matroid) -> Result<bool> {
    if !m.is_connected() {
        return Ok(false);
    }
    let n = m.len();
    if n < 4 {
        return Ok(true);
    }
    let rest = m.ground().without(0);
    for s in rest.subsets() {
        let a = s.with(0);
        if a.len() < 2 || a.len() > n - 2 || lambda(m, a) != 1 {
            continue;
        }
        let pa = two_sum_part(m, a)?;
        let pb = two_sum_part(m, m.ground() - a)?;
        if !is_representable(&pa, 2)? && !is_representable(&pb, 2)? {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---- partners agreeing on two deletions --------------------------------

fn pg_order(points: usize) -> Option<u32> {
    (2..=16u32).find(|&q| (q * q + q + 1) as usize == points)
}

/// The unique GF(q)-representable `M'` with `M' \ x = M \ x` and
/// `M' \ y = M \ y`, where `q` is the order of the plane `M|N0`.
///
/// Every projective class of representations of `M \ x,y` is tried; each
/// pair of extensions (one adding `y`, one adding `x`) is merged into a
/// single matrix. The partner is returned only if all merges give the same
/// matroid.
pub fn unique_partner(m: &Matroid, n0: Subset, x: usize, y: usize) -> Result<Matroid> {
    let q = pg_order(n0.len()).ok_or_else(|| RepError::PreconditionFailed("N0 has the wrong size for a projective plane".into()))?;
    let plane = m.restrict(n0);
    if crate::matroid::is_isomorphic_via(&plane, &make_pg(2, q)?).is_none() {
        return Err(RepError::PreconditionFailed(format!("M|N0 is not PG(2,{q})")));
    }
    unique_partner_over(m, n0, x, y, q)
}

/// As [`unique_partner`] with the field given and no check on `N0` beyond
/// disjointness.
pub fn unique_partner_over(m: &Matroid, n0: Subset, x: usize, y: usize, q: u32) -> Result<Matroid> {
    if x == y || x >= m.len() || y >= m.len() {
        return Err(RepError::PreconditionFailed("x and y must be distinct elements".into()));
    }
    let xy = Subset::from_indices([x, y]);
    if !n0.is_disjoint(xy) {
        return Err(RepError::PreconditionFailed("x and y must avoid N0".into()));
    }
    if m.rank(m.ground() - xy) != m.full_rank() {
        return Err(RepError::PreconditionFailed("{x, y} must be coindependent".into()));
    }
    let mx = m.delete(Subset::singleton(x));
    let my = m.delete(Subset::singleton(y));
    if !is_representable(&mx, q)? {
        return Err(RepError::PreconditionFailed(format!("M \\ {} is not GF({q})-representable", m.label(x))));
    }
    if !is_representable(&my, q)? {
        return Err(RepError::PreconditionFailed(format!("M \\ {} is not GF({q})-representable", m.label(y))));
    }
    let m0 = m.delete(xy);
    let mut partners: Vec<Matroid> = Vec::new();
    for a0 in enumerate_representations(&m0, q)? {
        let ground_x = mx.ground() - Subset::singleton(mx.index_of(m.label(y))?);
        let ground_y = my.ground() - Subset::singleton(my.index_of(m.label(x))?);
        let with_y = enumerate_minor_extensions(&mx, restriction_spec(&mx, ground_x), &a0.matrix)?;
        let with_x = enumerate_minor_extensions(&my, restriction_spec(&my, ground_y), &a0.matrix)?;
        for dy in &with_y {
            for dx in &with_x {
                let merged = merge_columns(m, &a0, dy, dx, x, y)?;
                if !partners.iter().any(|p| p.same_as(&merged)) {
                    partners.push(merged);
                }
            }
        }
    }
    match partners.len() {
        0 => Err(RepError::NoPartner("no representation of M \\ x,y extends to both deletions".into())),
        1 => {
            let p = partners.pop().unwrap();
            if !p.delete(Subset::singleton(x)).same_as(&mx) || !p.delete(Subset::singleton(y)).same_as(&my) {
                return Err(RepError::NoPartner("merged matrix does not reproduce both deletions".into()));
            }
            Ok(p)
        }
        k => Err(RepError::PartnerNotUnique(k)),
    }
}

/// Places the `y` column of `dy` and the `x` column of `dx` next to the
/// shared representation `a0`, all over one standard form of `M \ x,y`.
fn merge_columns(m: &Matroid, a0: &Representation, dy: &Representation, dx: &Representation, x: usize, y: usize) -> Result<Matroid> {
    let a0m = &a0.matrix;
    let basis_labels: Vec<&str> = a0.rows.iter().map(|&i| a0m.labels()[i].as_str()).collect();
    let pick = |rep: &Representation, label: &str| -> Result<Vec<Elem>> {
        let mat = &rep.matrix;
        let idx: Vec<usize> = basis_labels.iter().map(|l| mat.column_index(l).unwrap()).collect();
        let std = mat.standard_form(&idx)?;
        Ok(std.column(std.column_index(label).unwrap()))
    };
    let base_idx: Vec<usize> = basis_labels.iter().map(|l| a0m.column_index(l).unwrap()).collect();
    let base = a0m.standard_form(&base_idx)?;
    let col_y = pick(dy, m.label(y))?;
    let col_x = pick(dx, m.label(x))?;
    let mut columns = Vec::with_capacity(m.len());
    for e in 0..m.len() {
        let l = m.label(e);
        columns.push(if e == x {
            col_x.clone()
        } else if e == y {
            col_y.clone()
        } else {
            base.column(base.column_index(l).unwrap())
        });
    }
    let mat = GfMatrix::from_columns(a0m.field().clone(), base.rows(), &columns, m.labels().to_vec())?;
    Ok(Matroid::from_matrix(mat)?)
}

/// Reorders `other` to the label order of `m`.
fn aligned(m: &Matroid, other: &Matroid) -> Result<Matroid> {
    if m.len() != other.len() {
        return Err(RepError::GroundMismatch);
    }
    let order: Vec<usize> = m
        .labels()
        .iter()
        .map(|l| other.index_of(l))
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| RepError::GroundMismatch)?;
    Ok(other.restrict_ordered(&order))
}

/// Elements `e` with `M \ e ≠ M' \ e` and `M / e ≠ M' / e`.
pub fn sigma(m: &Matroid, other: &Matroid) -> Result<Subset> {
    let o = aligned(m, other)?;
    let full = m.ground();
    let mut del_diff = Subset::EMPTY;
    let mut con_diff = Subset::EMPTY;
    for s in full.subsets() {
        let (r1, r2) = (m.rank(s), o.rank(s));
        if r1 == r2 {
            continue;
        }
        // s differs: every e outside s separates the deletions
        del_diff |= full - s;
        for e in s.iter() {
            let (c1, c2) = (r1 - m.rank(Subset::singleton(e)), r2 - o.rank(Subset::singleton(e)));
            if c1 != c2 {
                con_diff = con_diff.with(e);
            }
        }
    }
    Ok(del_diff & con_diff)
}

/// `S ⊆ E \ N` with `⊓(S, N) = 1`; minimal ones only when asked.
pub fn strands(m: &Matroid, n: Subset, minimal_only: bool) -> Vec<Subset> {
    let rest = m.ground() - n;
    let is_strand = |s: Subset| crate::connectivity::local_conn(m, s, n) == 1;
    rest.subsets()
        .filter(|&s| is_strand(s))
        .filter(|&s| !minimal_only || s.iter().all(|e| !is_strand(s.without(e))))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandReport {
    pub strand: Subset,
    /// `cl_M(S) ∩ E(N)`.
    pub trace: Subset,
    /// `cl_M'(S) ∩ E(N)`.
    pub trace_other: Subset,
    pub strand_in_first: bool,
    pub strand_in_second: bool,
    /// A strand in both whose traces differ.
    pub distinguishing: bool,
}

/// Sets that distinguish `M` and `M'`, along with sets that are strands in
/// exactly one of them.
pub fn distinguishing_strands(m: &Matroid, other: &Matroid, n: Subset) -> Result<Vec<StrandReport>> {
    let o = aligned(m, other)?;
    let rest = m.ground() - n;
    let mut out = Vec::new();
    for s in rest.subsets() {
        let in1 = crate::connectivity::local_conn(m, s, n) == 1;
        let in2 = crate::connectivity::local_conn(&o, s, n) == 1;
        if !in1 && !in2 {
            continue;
        }
        let trace = m.closure(s) & n;
        let trace_other = o.closure(s) & n;
        let distinguishing = in1 && in2 && trace != trace_other;
        if distinguishing || in1 != in2 {
            out.push(StrandReport { strand: s, trace, trace_other, strand_in_first: in1, strand_in_second: in2, distinguishing });
        }
    }
    Ok(out)
}

/// A common basis `B` containing a basis of `N0` and a set `B'` that is a
/// basis of exactly one matroid, with `|B Δ B'|` minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub common: Subset,
    pub split: Subset,
    /// Whether `B'` is a basis of the first matroid.
    pub split_in_first: bool,
}

impl Discrepancy {
    pub fn symmetric_difference(&self) -> usize {
        (self.common ^ self.split).len()
    }

    /// `|(B \ B') \ E(N0)|`.
    pub fn outside_plane(&self, n0: Subset) -> usize {
        ((self.common - self.split) - n0).len()
    }
}

pub fn basis_discrepancy(m: &Matroid, other: &Matroid, n0: Subset, x: usize, y: usize) -> Result<Discrepancy> {
    let o = aligned(m, other)?;
    if m.same_as(&o) {
        return Err(RepError::MatroidsEqual);
    }
    let avoid = Subset::from_indices([x, y]);
    let rn = m.rank(n0);
    let common: Vec<Subset> = m
        .bases()
        .into_iter()
        .filter(|&b| b.is_disjoint(avoid) && o.is_basis(b) && m.rank(b & n0) == rn)
        .collect();
    let split: Vec<(Subset, bool)> = m
        .ground()
        .subsets_of_size(m.full_rank())
        .filter_map(|s| {
            let (a, b) = (m.is_basis(s), o.is_basis(s));
            (a != b).then_some((s, a))
        })
        .collect();
    let mut best: Option<Discrepancy> = None;
    for &b in &common {
        for &(s, first) in &split {
            let d = Discrepancy { common: b, split: s, split_in_first: first };
            if best.as_ref().is_none_or(|cur| d.symmetric_difference() < cur.symmetric_difference()) {
                best = Some(d);
            }
        }
    }
    best.ok_or_else(|| RepError::PreconditionFailed("no common basis of M \\ x,y contains a basis of N0".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matroid::{make_graphic, make_uniform};

    #[test]
    fn fundamental_circuits() {
        let u = make_uniform(2, 4).unwrap();
        let b = Subset::from_indices([0, 1]);
        for e in 2..4 {
            assert_eq!(fundamental_circuit(&u, b, e).unwrap(), b.with(e));
        }
        assert!(matches!(fundamental_circuit(&u, Subset::singleton(0), 2), Err(RepError::NotABasis)));
        let fano = make_pg(2, 2).unwrap();
        let b = Subset::from_indices([0, 1, 2]);
        // point 6 = (1,1,0) lies on the line through 1 and 2
        assert_eq!(fundamental_circuit(&fano, b, 5).unwrap(), Subset::from_indices([0, 1, 5]));
    }

    #[test]
    fn fundamental_matrix_is_support_of_standard_form() {
        let fano = make_pg(2, 2).unwrap();
        let rep = find_representation(&fano, 2).unwrap().unwrap();
        assert_eq!(fundamental_matrix(&fano, rep.basis).unwrap(), FundamentalMatrix::from_standard_form(&rep));
    }

    #[test]
    fn pattern_counts() {
        let u = make_uniform(2, 4).unwrap();
        let b = Subset::from_indices([0, 1]);
        let c = basis_exchange_checks(&u, b, b, Subset::from_indices([2, 3])).unwrap();
        assert_eq!(c.pattern, PatternCount::Many);
        assert!(c.is_basis);
        let p = fundamental_matrix(&u, b).unwrap();
        assert!(matches!(permutation_pattern_count(&p, b, Subset::singleton(2)), Err(RepError::SizeMismatch)));
        // a triangle in K4 gives a zero row
        let k4 = make_graphic(4, &fixtures::k4_edges()).unwrap();
        let star = k4.subset(&["0-1", "0-2", "0-3"]).unwrap();
        let p = fundamental_matrix(&k4, star).unwrap();
        let x = k4.subset(&["0-3"]).unwrap();
        let y = k4.subset(&["1-2"]).unwrap();
        assert_eq!(permutation_pattern_count(&p, x, y).unwrap(), PatternCount::Zero);
        assert!(!k4.is_basis((star - x) | y));
    }

    #[test]
    fn representability() {
        let fano = make_pg(2, 2).unwrap();
        assert!(is_representable(&fano, 2).unwrap());
        assert!(!is_representable(&fano, 3).unwrap());
        assert!(!is_representable(&make_uniform(2, 4).unwrap(), 2).unwrap());
        assert!(is_representable(&make_uniform(2, 4).unwrap(), 3).unwrap());
        assert!(!is_representable(&make_uniform(2, 5).unwrap(), 3).unwrap());
        let rep = find_representation(&make_pg(2, 3).unwrap(), 3).unwrap().unwrap();
        assert!(rep.represents(&make_pg(2, 3).unwrap()));
    }

    #[test]
    fn projective_planes_are_unique() {
        for q in [2, 3] {
            let pg = make_pg(2, q).unwrap();
            assert_eq!(count_representations(&pg, q, Equivalence::Projective).unwrap(), 1);
            assert_eq!(count_representations(&pg, q, Equivalence::Geometric).unwrap(), 1);
        }
        let pg4 = make_pg(2, 4).unwrap();
        assert_eq!(count_representations(&pg4, 4, Equivalence::Projective).unwrap(), 2);
        assert_eq!(count_representations(&pg4, 4, Equivalence::Geometric).unwrap(), 1);
    }

    #[test]
    fn uniform_line_classes_over_gf4() {
        // U_{2,4} over GF(4): the cross ratio takes 2 values, swapped by
        // the Frobenius map
        let u = make_uniform(2, 4).unwrap();
        assert_eq!(count_representations(&u, 4, Equivalence::Projective).unwrap(), 2);
        assert_eq!(count_representations(&u, 4, Equivalence::Geometric).unwrap(), 1);
        assert_eq!(count_representations(&u, 5, Equivalence::Projective).unwrap(), 3);
    }

    #[test]
    fn line_of_fano_extends() {
        let fano = make_pg(2, 2).unwrap();
        let line = Subset::from_indices([0, 1, 5]);
        let a = fano.matrix().unwrap().select_columns(&[0, 1, 5]);
        let rep = extend_representation(&fano, line, &a).unwrap().unwrap();
        assert!(rep.represents(&fano));
        assert_eq!(count_inequivalent_extensions(&fano, line, &a, false).unwrap(), 1);
        let wrong = fano.matrix().unwrap().select_columns(&[0, 1, 2]).with_labels(vec!["1".into(), "2".into(), "6".into()]).unwrap();
        assert!(matches!(extend_representation(&fano, line, &wrong), Err(RepError::NotARepresentation(_))));
    }

    #[test]
    fn glued_planes_do_not_extend_over_gf3() {
        let m = crate::modularity::glued_planes(3, 2).unwrap();
        let part: Subset = (0..m.len())
            .filter(|&i| m.label(i).starts_with('b') || ["a1", "a2", "a6"].contains(&m.label(i)))
            .collect();
        let plane = make_pg(2, 3).unwrap();
        let emb = crate::matroid::is_isomorphic_via(&m.restrict(part), &plane).unwrap();
        // emb sends plane element k to the emb[k]-th element of the part
        let idx: Vec<usize> = part.iter().collect();
        let cols: Vec<String> = emb.iter().map(|&img| m.label(idx[img]).to_string()).collect();
        let a = plane.matrix().unwrap().clone().with_labels(cols).unwrap();
        assert!(extend_representation(&m, part, &a).unwrap().is_none());
        assert!(!is_representable(&m, 3).unwrap());
    }

    #[test]
    fn stabilizer_counts_on_minors() {
        // PG(2,2) plus a point: the plane is a restriction and a minor
        let m = fixtures::fano_plus_point();
        let spec = restriction_spec(&m, Subset::full(7));
        assert_eq!(extension_classes_per_minor_rep(&m, spec, 2).unwrap(), vec![1]);
        // contraction minor: PG(3,2) / p contains a PG(2,2) restriction
        let pg3 = make_pg(3, 2).unwrap();
        let spec = MinorSpec { contract: Subset::singleton(14), delete: pg3_simplifying_deletion(&pg3, 14) };
        assert_eq!(pg3.minor(spec).unwrap().len(), 7);
        assert_eq!(extension_classes_per_minor_rep(&pg3, spec, 2).unwrap(), vec![1]);
    }

    fn pg3_simplifying_deletion(m: &Matroid, p: usize) -> Subset {
        // one point from each line through p stays, the others are deleted
        let mut del = Subset::EMPTY;
        let mut seen = Subset::singleton(p);
        for e in 0..m.len() {
            if seen.contains(e) {
                continue;
            }
            let line = m.closure(Subset::from_indices([p, e]));
            seen |= line;
            del |= line.without(p).without(e);
        }
        del
    }

    #[test]
    fn induced_representation_round_trip() {
        let fano = make_pg(2, 2).unwrap();
        let spec = MinorSpec { contract: Subset::singleton(6), delete: Subset::EMPTY };
        let a = induced_representation(&fano, fano.matrix().unwrap(), spec).unwrap();
        assert!(Matroid::from_matrix(a).unwrap().same_as(&fano.contract(Subset::singleton(6))));
    }

    #[test]
    fn equivalence_checks() {
        let pg4 = make_pg(2, 4).unwrap();
        let reps = enumerate_representations(&pg4, 4).unwrap();
        assert_eq!(reps.len(), 2);
        assert!(!equivalent(&reps[0].matrix, &reps[1].matrix, Equivalence::Projective));
        assert!(equivalent(&reps[0].matrix, &reps[1].matrix, Equivalence::Geometric));
        assert!(equivalent(pg4.matrix().unwrap(), &reps[0].matrix, Equivalence::Geometric));
    }

    #[test]
    fn stability() {
        assert!(is_stable(&make_pg(2, 2).unwrap()).unwrap());
        let two_lines = fixtures::two_sum_u24_u24();
        assert!(!is_stable(&two_lines).unwrap());
        assert!(is_stable(&fixtures::two_sum_u24_k4()).unwrap());
        assert!(!is_stable(&make_uniform(1, 2).unwrap().direct_sum(&make_uniform(1, 1).unwrap().with_prefix("x")).unwrap()).unwrap());
    }

    #[test]
    fn sigma_and_strands_basics() {
        let fano = make_pg(2, 2).unwrap();
        assert_eq!(sigma(&fano, &fano).unwrap(), Subset::EMPTY);
        assert!(distinguishing_strands(&fano, &fano, Subset::from_indices([0, 1, 5])).unwrap().is_empty());
        assert!(matches!(basis_discrepancy(&fano, &fano, Subset::EMPTY, 0, 1), Err(RepError::MatroidsEqual)));
        // the other points of the Fano plane off a line each meet it in one point
        let m = fixtures::fano_plus_point();
        let n = Subset::full(7);
        for s in strands(&m, n, false) {
            assert_eq!(m.rank(m.closure(s) & n), 1);
        }
    }

    #[test]
    fn partner_of_representable_matroid_is_itself() {
        let m = fixtures::pg23_plus_three();
        let p = unique_partner(&m, Subset::full(13), 14, 15).unwrap();
        assert!(p.same_as(&m));
    }
}
