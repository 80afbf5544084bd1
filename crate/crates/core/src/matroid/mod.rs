//! Matroids given by a rank oracle over a labeled ground set.
//!
//! Three backends are supported: a matrix over GF(q), an explicit rank table
//! indexed by subset bit pattern, and a list of bases. Every backend on at
//! most [`TABLE_CAP`] elements materializes its rank table lazily, and the
//! exhaustive algorithms in this crate work from that table.

mod build;
mod io;
mod search;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::field::{Elem, FieldError};
use crate::matrix::{GfMatrix, MatrixError, ParseError};
use crate::subset::Subset;

pub use build::{make_ag, make_graphic, make_pg, make_uniform, pg_points};
pub use io::{parse_mbl, parse_mrt, read_matroid_file, read_representation, to_mbl, to_mrt, write_matroid_file, FileError, FileKind};
pub use search::{find_restriction_isomorphic, has_u2n_minor, is_isomorphic_via, line_minor_size};

/// Ground sets above this size get no rank table.
pub const TABLE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("set is not contained in the ground set")]
    SetOutOfGround,
    #[error("ground set of {0} elements exceeds the table cap of {TABLE_CAP}")]
    TooLarge(usize),
    #[error("invalid rank function: {0}")]
    InvalidRank(String),
    #[error("invalid basis list: {0}")]
    InvalidBases(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = MatroidError> = std::result::Result<T, E>;

#[derive(Clone)]
pub enum Backend {
    Linear(GfMatrix),
    RankTable(Arc<[u8]>),
    BasisList(Arc<Vec<Subset>>),
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Linear(_) => "linear",
            Backend::RankTable(_) => "rank-table",
            Backend::BasisList(_) => "basis-list",
        }
    }
}

/// A contraction set and a deletion set, disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MinorSpec {
    pub contract: Subset,
    pub delete: Subset,
}

#[derive(Clone)]
pub struct Matroid {
    labels: Arc<Vec<String>>,
    backend: Backend,
    rank: usize,
    table: OnceLock<Arc<[u8]>>,
}

impl std::fmt::Debug for Matroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Matroid(n={}, rank={}, {}, {:?})",
            self.len(),
            self.rank,
            self.backend.name(),
            self.labels
        )
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashMap::new();
    for l in labels {
        if l.is_empty() || l.chars().any(char::is_whitespace) {
            return Err(MatroidError::InvalidParameters(format!("bad label `{l}`")));
        }
        if seen.insert(l.as_str(), ()).is_some() {
            return Err(MatroidError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// `"1".."n"`.
pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Maps subsets of one ground set to another through a partial element map,
/// one byte of the source bit pattern at a time.
#[derive(Clone)]
pub struct SubsetMap {
    chunks: Vec<[u32; 256]>,
}

impl SubsetMap {
    /// `targets[i]` is where source element `i` goes, or `None` to drop it.
    pub fn new(targets: &[Option<usize>]) -> SubsetMap {
        let nchunks = targets.len().div_ceil(8).max(1);
        let mut chunks = vec![[0u32; 256]; nchunks];
        for (c, chunk) in chunks.iter_mut().enumerate() {
            for byte in 1..256usize {
                let low = byte.trailing_zeros() as usize;
                let src = c * 8 + low;
                let bit = targets.get(src).copied().flatten().map_or(0, |t| 1u32 << t);
                chunk[byte] = chunk[byte & (byte - 1)] | bit;
            }
        }
        SubsetMap { chunks }
    }

    #[inline]
    pub fn apply(&self, s: Subset) -> Subset {
        let mut out = 0;
        let mut bits = s.0;
        let mut c = 0;
        while bits != 0 {
            out |= self.chunks[c][(bits & 0xff) as usize];
            bits >>= 8;
            c += 1;
        }
        Subset(out)
    }
}

/// Fills a table of size `2^n` from a rank function on subset codes.
pub(crate) fn table_from_fn(n: usize, mut f: impl FnMut(Subset) -> usize) -> Arc<[u8]> {
    (0..1u32 << n).map(|s| f(Subset(s)) as u8).collect::<Vec<u8>>().into()
}

/// Rank table of a column matroid, by depth-first extension of echelon bases.
fn linear_table(m: &GfMatrix) -> Arc<[u8]> {
    let n = m.cols();
    let f = m.field().clone();
    let cols: Vec<Vec<Elem>> = (0..n).map(|c| m.column(c)).collect();
    let mut table = vec![0u8; 1 << n];
    // stack of (pivot, normalized vector) per level
    fn reduce(f: &crate::field::FieldSpec, basis: &[(usize, Vec<Elem>)], v: &mut [Elem]) {
        for (p, b) in basis {
            let c = v[*p];
            if !c.is_zero() {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
    }
    fn dfs(
        f: &crate::field::FieldSpec,
        cols: &[Vec<Elem>],
        table: &mut [u8],
        set: u32,
        start: usize,
        basis: &mut Vec<(usize, Vec<Elem>)>,
    ) {
        table[set as usize] = basis.len() as u8;
        for j in start..cols.len() {
            let mut v = cols[j].clone();
            reduce(f, basis, &mut v);
            match v.iter().position(|x| !x.is_zero()) {
                Some(p) => {
                    let inv = f.inv(v[p]).unwrap();
                    for x in v.iter_mut() {
                        *x = f.mul(*x, inv);
                    }
                    basis.push((p, v));
                    dfs(f, cols, table, set | 1 << j, j + 1, basis);
                    basis.pop();
                }
                None => dfs(f, cols, table, set | 1 << j, j + 1, basis),
            }
        }
    }
    dfs(&f, &cols, &mut table, 0, 0, &mut Vec::new());
    table.into()
}

fn basis_table(n: usize, bases: &[Subset]) -> Arc<[u8]> {
    let size = 1usize << n;
    let mut indep = vec![false; size];
    for b in bases {
        indep[b.0 as usize] = true;
    }
    for s in (0..size).rev() {
        if !indep[s] {
            let missing = !(s as u32) & Subset::full(n).0;
            indep[s] = Subset(missing).iter().any(|e| indep[s | 1 << e]);
        }
    }
    let mut table = vec![0u8; size];
    for s in 1..size {
        table[s] = if indep[s] {
            (s as u32).count_ones() as u8
        } else {
            Subset(s as u32).iter().map(|e| table[s & !(1 << e)]).max().unwrap_or(0)
        };
    }
    table.into()
}

impl Matroid {
    // ---- construction -------------------------------------------------

    pub fn from_matrix(m: GfMatrix) -> Result<Matroid> {
        check_labels(m.labels())?;
        if m.cols() > 32 {
            return Err(MatroidError::TooLarge(m.cols()));
        }
        let rank = m.rank();
        Ok(Matroid {
            labels: Arc::new(m.labels().to_vec()),
            backend: Backend::Linear(m),
            rank,
            table: OnceLock::new(),
        })
    }

    /// Takes a rank table without checking the rank axioms; see [`Matroid::check_axioms`].
    pub fn from_table(labels: Vec<String>, table: Arc<[u8]>) -> Result<Matroid> {
        check_labels(&labels)?;
        let n = labels.len();
        if n > TABLE_CAP {
            return Err(MatroidError::TooLarge(n));
        }
        if table.len() != 1 << n {
            return Err(MatroidError::InvalidRank(format!(
                "table of length {} for {n} elements",
                table.len()
            )));
        }
        let rank = table[(1usize << n) - 1] as usize;
        Ok(Matroid {
            labels: Arc::new(labels),
            backend: Backend::RankTable(table),
            rank,
            table: OnceLock::new(),
        })
    }

    pub fn from_rank_fn(labels: Vec<String>, f: impl FnMut(Subset) -> usize) -> Result<Matroid> {
        let n = labels.len();
        if n > TABLE_CAP {
            return Err(MatroidError::TooLarge(n));
        }
        Matroid::from_table(labels, table_from_fn(n, f))
    }

    /// Basis-list backend; checks the basis exchange axiom.
    pub fn from_bases(labels: Vec<String>, bases: Vec<Subset>) -> Result<Matroid> {
        check_labels(&labels)?;
        let n = labels.len();
        if n > TABLE_CAP {
            return Err(MatroidError::TooLarge(n));
        }
        let mut bases = bases;
        bases.sort();
        bases.dedup();
        let Some(first) = bases.first() else {
            return Err(MatroidError::InvalidBases("no bases".into()));
        };
        let rank = first.len();
        let full = Subset::full(n);
        if bases.iter().any(|b| b.len() != rank || !b.is_subset_of(full)) {
            return Err(MatroidError::InvalidBases("bases of unequal size".into()));
        }
        let set: std::collections::HashSet<Subset> = bases.iter().copied().collect();
        for &a in &bases {
            for &b in &bases {
                for x in (a - b).iter() {
                    let ok = (b - a).iter().any(|y| set.contains(&a.without(x).with(y)));
                    if !ok {
                        return Err(MatroidError::InvalidBases(format!(
                            "exchange fails for {a:?}, {b:?} at {x}"
                        )));
                    }
                }
            }
        }
        Ok(Matroid {
            labels: Arc::new(labels),
            backend: Backend::BasisList(Arc::new(bases)),
            rank,
            table: OnceLock::new(),
        })
    }

    // ---- accessors ----------------------------------------------------

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn matrix(&self) -> Option<&GfMatrix> {
        match &self.backend {
            Backend::Linear(m) => Some(m),
            _ => None,
        }
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.len())
    }

    /// Rank of the whole matroid.
    pub fn full_rank(&self) -> usize {
        self.rank
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| MatroidError::UnknownLabel(label.to_string()))
    }

    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub fn names(&self, s: Subset) -> Vec<&str> {
        s.iter().map(|i| self.labels[i].as_str()).collect()
    }

    /// Rank table, built on first use; `None` above [`TABLE_CAP`].
    pub fn table(&self) -> Option<&[u8]> {
        if let Backend::RankTable(t) = &self.backend {
            return Some(t);
        }
        if self.len() > TABLE_CAP {
            return None;
        }
        Some(self.table.get_or_init(|| match &self.backend {
            Backend::Linear(m) => linear_table(m),
            Backend::BasisList(b) => basis_table(self.len(), b),
            Backend::RankTable(t) => t.clone(),
        }))
    }

    pub fn table_arc(&self) -> Option<Arc<[u8]>> {
        match &self.backend {
            Backend::RankTable(t) => Some(t.clone()),
            _ => {
                self.table()?;
                self.table.get().cloned()
            }
        }
    }

    /// Table or an error naming the size, for exhaustive operations.
    pub fn require_table(&self) -> Result<&[u8]> {
        self.table().ok_or(MatroidError::TooLarge(self.len()))
    }

    // ---- rank queries --------------------------------------------------

    #[inline]
    pub fn rank(&self, x: Subset) -> usize {
        if let Some(t) = self.table() {
            return t[x.0 as usize] as usize;
        }
        match &self.backend {
            Backend::Linear(m) => m.rank_of_columns(&x.iter().collect::<Vec<_>>()),
            Backend::BasisList(b) => b.iter().map(|b| (*b & x).len()).max().unwrap_or(0),
            Backend::RankTable(t) => t[x.0 as usize] as usize,
        }
    }

    /// `|X| - r(M) + r(E \ X)`.
    pub fn corank(&self, x: Subset) -> usize {
        x.len() + self.rank(self.ground() - x) - self.rank
    }

    pub fn is_independent(&self, x: Subset) -> bool {
        self.rank(x) == x.len()
    }

    pub fn is_basis(&self, x: Subset) -> bool {
        x.len() == self.rank && self.is_independent(x)
    }

    pub fn closure(&self, x: Subset) -> Subset {
        let r = self.rank(x);
        (self.ground() - x).iter().filter(|&e| self.rank(x.with(e)) == r).fold(x, Subset::with)
    }

    pub fn is_flat(&self, x: Subset) -> bool {
        let r = self.rank(x);
        (self.ground() - x).iter().all(|e| self.rank(x.with(e)) > r)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(Subset::singleton(e)) == 0
    }

    pub fn is_parallel(&self, a: usize, b: usize) -> bool {
        a != b && !self.is_loop(a) && !self.is_loop(b) && self.rank(Subset::from_indices([a, b])) == 1
    }

    pub fn is_circuit(&self, x: Subset) -> bool {
        !x.is_empty()
            && self.rank(x) + 1 == x.len()
            && x.iter().all(|e| self.is_independent(x.without(e)))
    }

    /// All flats, in increasing subset-code order.
    pub fn flats(&self) -> Vec<Subset> {
        self.ground().subsets().filter(|&s| self.is_flat(s)).collect()
    }

    pub fn flats_of_rank(&self, k: usize) -> Vec<Subset> {
        self.ground().subsets().filter(|&s| self.rank(s) == k && self.is_flat(s)).collect()
    }

    pub fn hyperplanes(&self) -> Vec<Subset> {
        if self.rank == 0 {
            return Vec::new();
        }
        self.flats_of_rank(self.rank - 1)
    }

    pub fn circuits(&self) -> Vec<Subset> {
        self.ground().subsets().filter(|&s| self.is_circuit(s)).collect()
    }

    pub fn circuits_of_size(&self, k: usize) -> Vec<Subset> {
        self.ground().subsets_of_size(k).filter(|&s| self.is_circuit(s)).collect()
    }

    pub fn bases(&self) -> Vec<Subset> {
        self.ground().subsets_of_size(self.rank).filter(|&s| self.is_independent(s)).collect()
    }

    /// Circuits of the dual: complements of hyperplanes.
    pub fn cocircuits(&self) -> Vec<Subset> {
        let mut c: Vec<Subset> =
            self.hyperplanes().into_iter().map(|h| self.ground() - h).collect();
        c.sort();
        c
    }

    pub fn is_cocircuit(&self, x: Subset) -> bool {
        let h = self.ground() - x;
        !x.is_empty() && self.rank > 0 && self.rank(h) + 1 == self.rank && self.is_flat(h)
    }

    /// Exhaustive check of the rank axioms.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        if self.rank(Subset::EMPTY) != 0 {
            return Err(MatroidError::InvalidRank("r(empty) != 0".into()));
        }
        for s in self.ground().subsets() {
            let r = self.rank(s);
            if r > s.len() {
                return Err(MatroidError::InvalidRank(format!("r({s:?}) > |X|")));
            }
            for e in s.complement(n).iter() {
                let re = self.rank(s.with(e));
                if re < r || re > r + 1 {
                    return Err(MatroidError::InvalidRank(format!("unit increase fails at {s:?}+{e}")));
                }
                // local submodularity: r(X+e+f) + r(X) <= r(X+e) + r(X+f)
                for f in s.complement(n).iter().filter(|&f| f > e) {
                    if self.rank(s.with(e).with(f)) + r > re + self.rank(s.with(f)) {
                        return Err(MatroidError::InvalidRank(format!(
                            "submodularity fails at {s:?}, {e}, {f}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    // ---- comparisons ---------------------------------------------------

    /// Same labels (in any order) and the same rank on every subset.
    pub fn same_as(&self, other: &Matroid) -> bool {
        if self.len() != other.len() || self.rank != other.rank {
            return false;
        }
        let mut targets = Vec::with_capacity(self.len());
        for l in self.labels.iter() {
            match other.index_of(l) {
                Ok(i) => targets.push(Some(i)),
                Err(_) => return false,
            }
        }
        let map = SubsetMap::new(&targets);
        self.ground().subsets().all(|s| self.rank(s) == other.rank(map.apply(s)))
    }

    // ---- relabeling and restriction ----------------------------------

    pub fn relabel(&self, labels: Vec<String>) -> Result<Matroid> {
        if labels.len() != self.len() {
            return Err(MatroidError::InvalidParameters("label count mismatch".into()));
        }
        check_labels(&labels)?;
        let backend = match &self.backend {
            Backend::Linear(m) => Backend::Linear(m.clone().with_labels(labels.clone())?),
            b => b.clone(),
        };
        let table = OnceLock::new();
        if let Some(t) = self.table.get() {
            let _ = table.set(t.clone());
        }
        Ok(Matroid { labels: Arc::new(labels), backend, rank: self.rank, table })
    }

    /// Prefixes every label.
    pub fn with_prefix(&self, prefix: &str) -> Matroid {
        let labels = self.labels.iter().map(|l| format!("{prefix}{l}")).collect();
        self.relabel(labels).expect("prefixing keeps labels valid")
    }

    /// The restriction to `keep`, ground order preserved.
    pub fn restrict(&self, keep: Subset) -> Matroid {
        let idx: Vec<usize> = keep.iter().collect();
        self.restrict_ordered(&idx)
    }

    /// Restriction whose `i`-th element is `order[i]` of `self`.
    pub fn restrict_ordered(&self, order: &[usize]) -> Matroid {
        let labels: Vec<String> = order.iter().map(|&i| self.labels[i].clone()).collect();
        if let Backend::Linear(m) = &self.backend {
            return Matroid::from_matrix(m.select_columns(order)).expect("sub-matrix is valid");
        }
        let targets: Vec<Option<usize>> = order.iter().map(|&i| Some(i)).collect();
        let map = SubsetMap::new(&targets);
        let table = self.table().expect("rank table available");
        Matroid::from_table(labels, table_from_fn(order.len(), |s| table[map.apply(s).0 as usize] as usize))
            .expect("restriction of a valid matroid")
    }

    pub fn delete(&self, d: Subset) -> Matroid {
        self.restrict(self.ground() - d)
    }

    pub fn contract(&self, c: Subset) -> Matroid {
        let keep = self.ground() - c;
        if let Backend::Linear(m) = &self.backend {
            if let Some(mc) = contract_linear(m, c) {
                return Matroid::from_matrix(mc).expect("contraction matrix is valid");
            }
        }
        let rc = self.rank(c);
        let idx: Vec<usize> = keep.iter().collect();
        let targets: Vec<Option<usize>> = idx.iter().map(|&i| Some(i)).collect();
        let map = SubsetMap::new(&targets);
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        Matroid::from_rank_fn(labels, |s| self.rank(map.apply(s) | c) - rc)
            .expect("contraction of a valid matroid")
    }

    pub fn minor(&self, spec: MinorSpec) -> Result<Matroid> {
        if !spec.contract.is_disjoint(spec.delete)
            || !(spec.contract | spec.delete).is_subset_of(self.ground())
        {
            return Err(MatroidError::SetOutOfGround);
        }
        // contract first, then delete by label
        let mc = self.contract(spec.contract);
        let names: Vec<&str> = self.names(spec.delete);
        let d = mc.subset(&names)?;
        Ok(mc.delete(d))
    }

    pub fn dual(&self) -> Matroid {
        if let Backend::Linear(m) = &self.backend {
            return Matroid::from_matrix(dual_matrix(m)).expect("dual matrix is valid");
        }
        if let Backend::BasisList(b) = &self.backend {
            let full = self.ground();
            let bases = b.iter().map(|&x| full - x).collect();
            return Matroid::from_bases(self.labels.to_vec(), bases).expect("dual bases are valid");
        }
        Matroid::from_rank_fn(self.labels.to_vec(), |s| self.corank(s)).expect("dual of a valid matroid")
    }

    /// Same matroid with the rank-table backend.
    pub fn to_rank_table(&self) -> Result<Matroid> {
        let t = self.table_arc().ok_or(MatroidError::TooLarge(self.len()))?;
        Matroid::from_table(self.labels.to_vec(), t)
    }

    /// Direct sum; labels must be disjoint.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let mut labels = self.labels.to_vec();
        labels.extend(other.labels.iter().cloned());
        let n1 = self.len();
        let low = Subset::full(n1);
        Matroid::from_rank_fn(labels, |s| {
            self.rank(s & low) + other.rank(Subset((s.0 >> n1) & other.ground().0))
        })
    }

    // ---- simplification -------------------------------------------------

    /// Removes loops and keeps the lowest-indexed element of each parallel
    /// class. `map[e]` is the index in the simplification of the element
    /// representing `e`, or `None` for loops.
    pub fn simplify(&self) -> (Matroid, Vec<Option<usize>>) {
        let n = self.len();
        let mut rep: Vec<Option<usize>> = vec![None; n];
        let mut kept = Vec::new();
        for (e, slot) in rep.iter_mut().enumerate() {
            if self.is_loop(e) {
                continue;
            }
            match kept.iter().position(|&k| self.is_parallel(k, e)) {
                Some(pos) => *slot = Some(pos),
                None => {
                    *slot = Some(kept.len());
                    kept.push(e);
                }
            }
        }
        (self.restrict_ordered(&kept), rep)
    }

    pub fn is_simple(&self) -> bool {
        (0..self.len()).all(|e| !self.is_loop(e))
            && (0..self.len()).all(|a| (a + 1..self.len()).all(|b| !self.is_parallel(a, b)))
    }

    /// Connected components, each as a subset, ordered by smallest element.
    pub fn components(&self) -> Vec<Subset> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        // two elements share a component iff some circuit contains both
        for c in self.circuits() {
            let mut it = c.iter();
            if let Some(first) = it.next() {
                for e in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, e));
                    if a != b {
                        parent[b] = a;
                    }
                }
            }
        }
        let mut groups: Vec<Subset> = Vec::new();
        let mut root_of: HashMap<usize, usize> = HashMap::new();
        for e in 0..n {
            let r = find(&mut parent, e);
            let g = *root_of.entry(r).or_insert_with(|| {
                groups.push(Subset::EMPTY);
                groups.len() - 1
            });
            groups[g] = groups[g].with(e);
        }
        groups
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Contracts the columns `c` of a matrix: pivot on a basis of `c`, then drop
/// those rows and all of `c`. Returns `None` when there is nothing to pivot on.
fn contract_linear(m: &GfMatrix, c: Subset) -> Option<GfMatrix> {
    let f = m.field().clone();
    let keep: Vec<usize> = (0..m.cols()).filter(|&i| !c.contains(i)).collect();
    let mut rows: Vec<Vec<Elem>> = (0..m.rows()).map(|r| (0..m.cols()).map(|j| m.get(r, j)).collect()).collect();
    let mut dropped = vec![false; rows.len()];
    for j in c.iter() {
        let Some(p) = (0..rows.len()).find(|&r| !dropped[r] && !rows[r][j].is_zero()) else {
            continue;
        };
        let inv = f.inv(rows[p][j]).unwrap();
        for v in rows[p].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot = rows[p].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != p && !row[j].is_zero() {
                let k = row[j];
                for (v, &pv) in row.iter_mut().zip(&pivot) {
                    *v = f.sub(*v, f.mul(k, pv));
                }
            }
        }
        dropped[p] = true;
    }
    let live: Vec<usize> = (0..rows.len()).filter(|&r| !dropped[r]).collect();
    let entries = live.iter().flat_map(|&r| keep.iter().map(|&j| rows[r][j]).collect::<Vec<_>>()).collect();
    let labels = keep.iter().map(|&j| m.labels()[j].clone()).collect();
    GfMatrix::new(f, live.len(), keep.len(), entries, labels).ok()
}

/// `(I A)` in standard form for the lexicographically first basis gives
/// `(A^T I)` for the dual, columns kept in the original order.
fn dual_matrix(m: &GfMatrix) -> GfMatrix {
    let f = m.field().clone();
    let n = m.cols();
    let mut basis = Vec::new();
    for j in 0..n {
        let mut cand = basis.clone();
        cand.push(j);
        if m.rank_of_columns(&cand) == cand.len() {
            basis = cand;
        }
    }
    let r = basis.len();
    let sf = m.standard_form(&basis).expect("greedy basis is a basis");
    let nonbasis: Vec<usize> = (0..n).filter(|j| !basis.contains(j)).collect();
    // rows of the dual are indexed by non-basis elements
    let mut entries = vec![Elem::ZERO; (n - r) * n];
    for (i, &e) in nonbasis.iter().enumerate() {
        entries[i * n + e] = Elem::ONE;
        for (k, &b) in basis.iter().enumerate() {
            // column b of the dual is -A[k, :]^T
            entries[i * n + b] = f.neg(sf.get(k, e));
        }
    }
    GfMatrix::new(f, n - r, n, entries, m.labels().to_vec()).expect("dual shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(r: usize, n: usize) -> Matroid {
        make_uniform(r, n).unwrap()
    }

    fn fano() -> Matroid {
        make_pg(2, 2).unwrap()
    }

    #[test]
    fn rank_axioms_hold_for_catalog() {
        for m in [u(2, 4), u(3, 6), fano(), make_pg(2, 3).unwrap(), make_ag(2, 3).unwrap()] {
            m.check_axioms().unwrap();
        }
    }

    #[test]
    fn corank_examples() {
        let m = u(2, 4);
        assert_eq!(m.corank(Subset::EMPTY), 0);
        assert_eq!(m.corank(Subset::from_indices([0, 1])), 2);
        let f = fano();
        assert_eq!(f.corank(Subset::singleton(3)), 1);
    }

    #[test]
    fn corank_matches_dual_rank_everywhere() {
        for m in [u(2, 4), fano(), make_graphic(4, &crate::fixtures::k4_edges()).unwrap()] {
            let d = m.dual();
            for s in m.ground().subsets() {
                assert_eq!(d.rank(s), m.corank(s));
            }
            assert!(d.dual().same_as(&m));
            let dt = m.to_rank_table().unwrap().dual();
            assert!(dt.same_as(&d));
        }
    }

    #[test]
    fn fano_flats_and_circuits() {
        let f = fano();
        assert_eq!(f.flats().len(), 16);
        let circuits = f.circuits();
        assert!(circuits.iter().all(|c| c.len() == 3 || c.len() == 4));
        assert_eq!(circuits.iter().filter(|c| c.len() == 3).count(), 7);
        assert_eq!(f.cocircuits().iter().filter(|c| c.len() == 3).count(), 0);
        assert_eq!(u(2, 4).circuits().len(), 4);
    }

    #[test]
    fn minors_of_fano() {
        let f = fano();
        let d = f.delete(Subset::singleton(0));
        assert_eq!((d.len(), d.full_rank()), (6, 3));
        let c = f.contract(Subset::singleton(0));
        assert_eq!((c.len(), c.full_rank()), (6, 2));
        let (s, map) = c.simplify();
        assert!(s.same_as(&u(2, 3).relabel(s.labels().to_vec()).unwrap()));
        // three parallel classes of size two
        let mut sizes = [0; 3];
        for r in map.iter().flatten() {
            sizes[*r] += 1;
        }
        assert_eq!(sizes, [2, 2, 2]);
        // linear and table backends agree on contraction
        let ct = f.to_rank_table().unwrap().contract(Subset::singleton(0));
        assert!(ct.same_as(&c));
    }

    #[test]
    fn simplify_removes_loops() {
        let m = Matroid::from_rank_fn(default_labels(3), |s| (s - Subset::singleton(1)).len().min(2)).unwrap();
        let (s, map) = m.simplify();
        assert_eq!(s.len(), 2);
        assert_eq!(map[1], None);
        let (same, ident) = fano().simplify();
        assert!(same.same_as(&fano()));
        assert_eq!(ident, (0..7).map(Some).collect::<Vec<_>>());
    }

    #[test]
    fn basis_list_backend() {
        let bases: Vec<Subset> = Subset::full(4).subsets_of_size(2).collect();
        let m = Matroid::from_bases(default_labels(4), bases).unwrap();
        assert!(m.same_as(&u(2, 4)));
        assert!(m.dual().same_as(&u(2, 4)));
        let bad = vec![Subset::from_indices([0, 1]), Subset::from_indices([2, 3])];
        assert!(Matroid::from_bases(default_labels(4), bad).is_err());
    }

    #[test]
    fn components_of_direct_sum() {
        let m = u(1, 2).direct_sum(&u(2, 3).with_prefix("b")).unwrap();
        assert_eq!(m.components(), vec![Subset::from_indices([0, 1]), Subset::from_indices([2, 3, 4])]);
        assert!(fano().is_connected());
    }

    #[test]
    fn subset_map_moves_bits() {
        let map = SubsetMap::new(&[Some(3), None, Some(0), Some(9)]);
        assert_eq!(map.apply(Subset::from_indices([0, 1, 2, 3])), Subset::from_indices([3, 0, 9]));
        assert_eq!(map.apply(Subset::EMPTY), Subset::EMPTY);
    }
}
