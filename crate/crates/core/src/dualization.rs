//! The coupling matroid `R` of two projective planes and the map
//! `M0 ↦ M1 = ((R ⊕_m M0) \ E(N0))*`, which trades a plane `N0` of `M0` for a
//! copy `N1` while keeping representability and connectivity.

use thiserror::Error;

use crate::connectivity::{is_3_connected, is_contraction_pair, is_deletion_pair, is_internally_3_connected, lambda};
use crate::field::Elem;
use crate::matrix::{GfMatrix, MatrixError};
use crate::matroid::{make_pg, Matroid, MatroidError};
use crate::modularity::{is_modular_restriction, modular_sum, ModError};
use crate::representation::{is_representable, RepError};
use crate::subset::Subset;

#[derive(Debug, Error)]
pub enum DualError {
    #[error("not a standard-form representation of PG(2,{0})")]
    NotAPGRepresentation(u32),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("coupling self-check failed: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Modular(#[from] ModError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

pub type Result<T> = std::result::Result<T, DualError>;

/// Copy of a label of `E(N0)` in `E(N1)`.
pub fn copy_label(l: &str) -> String {
    format!("{l}'")
}

/// The coupling matroid with its defining data.
#[derive(Debug, Clone)]
pub struct CouplingR {
    pub q: u32,
    /// Labels of `E(N0)`, basis `B0` first.
    pub n0: Vec<String>,
    /// Labels of `E(N1)`, `n1[i]` the image of `n0[i]`.
    pub n1: Vec<String>,
    pub b0: Vec<String>,
    /// `E(N1) \ φ(B0)`.
    pub b1_star: Vec<String>,
    pub plane: Matroid,
    pub c: GfMatrix,
    pub r: Matroid,
}

impl CouplingR {
    /// `N1 = φ(N0)` as a matroid.
    pub fn plane_copy(&self) -> Matroid {
        self.plane.relabel(self.n1.clone()).expect("fresh labels")
    }
}

/// Builds `C = (I A I 0 ; 0 0 Aᵀ I)` from a matrix `(I A)` representing
/// `PG(2,q)`, whose first three columns are the identity. Columns of `C` are
/// `B0`, `E(N0) \ B0`, `φ(B0)`, `B1*` in this order.
pub fn build_coupling(q: u32, ia: &GfMatrix) -> Result<CouplingR> {
    let f = ia.field().clone();
    let size = (q * q + q + 1) as usize;
    if f.order() != q || ia.rows() != 3 || ia.cols() != size {
        return Err(DualError::NotAPGRepresentation(q));
    }
    for i in 0..3 {
        for j in 0..3 {
            if ia.get(i, j) != if i == j { Elem::ONE } else { Elem::ZERO } {
                return Err(DualError::NotAPGRepresentation(q));
            }
        }
    }
    let plane = Matroid::from_matrix(ia.clone())?;
    if !plane.is_simple() || plane.full_rank() != 3 {
        return Err(DualError::NotAPGRepresentation(q));
    }
    let k = size - 3;
    let n0: Vec<String> = ia.labels().to_vec();
    let n1: Vec<String> = n0.iter().map(|l| copy_label(l)).collect();
    if n1.iter().any(|l| n0.contains(l)) {
        return Err(DualError::PreconditionFailed("copy labels collide with the plane's labels".into()));
    }
    let rows = 3 + k;
    let cols = 2 * size;
    let mut c = vec![Elem::ZERO; rows * cols];
    let mut set = |r: usize, col: usize, v: Elem| c[r * cols + col] = v;
    for i in 0..3 {
        set(i, i, Elem::ONE);
        for j in 0..k {
            set(i, 3 + j, ia.get(i, 3 + j));
            // Aᵀ block in rows 3.., columns of φ(B0)
            set(3 + j, size + i, ia.get(i, 3 + j));
        }
        set(i, size + i, Elem::ONE);
    }
    for j in 0..k {
        set(3 + j, size + 3 + j, Elem::ONE);
    }
    let mut labels = n0.clone();
    labels.extend(n1.iter().cloned());
    let c = GfMatrix::new(f, rows, cols, c, labels)?;
    let r = Matroid::from_matrix(c.clone())?;
    let coupling = CouplingR {
        q,
        b0: n0[..3].to_vec(),
        b1_star: n1[3..].to_vec(),
        n0,
        n1,
        plane,
        c,
        r,
    };
    verify_coupling(&coupling)?;
    Ok(coupling)
}

/// The coupling for `make_pg(2, q)` with its labels prefixed.
pub fn standard_coupling(q: u32, prefix: &str) -> Result<CouplingR> {
    let pg = make_pg(2, q)?.with_prefix(prefix);
    build_coupling(q, pg.matrix().expect("linear"))
}

fn part(m: &Matroid, names: &[String]) -> Result<Subset> {
    Ok(m.subset(names)?)
}

/// `R \ E(N1) = N0`, `R / E(N0) = N1*` and `N0` modular in `R`.
pub fn verify_coupling(c: &CouplingR) -> Result<()> {
    let e0 = part(&c.r, &c.n0)?;
    let e1 = part(&c.r, &c.n1)?;
    if !c.r.delete(e1).same_as(&c.plane) {
        return Err(DualError::SelfCheck("R \\ E(N1) differs from N0".into()));
    }
    if !c.r.contract(e0).same_as(&c.plane_copy().dual()) {
        return Err(DualError::SelfCheck("R / E(N0) differs from N1*".into()));
    }
    if !is_modular_restriction(&c.r, e0) {
        return Err(DualError::SelfCheck("N0 is not modular in R".into()));
    }
    Ok(())
}

/// Facts about `M1` established alongside its construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualReport {
    /// `M1 | E(N1) = N1`.
    pub n1_is_restriction: bool,
    pub n0_modular_in_m0: bool,
    pub n1_modular_in_m1: bool,
    /// `λ_{M1}(E(N1))`.
    pub lambda_n1: usize,
    pub internally_3_connected: bool,
    /// Every parallel pair of `M1` meets `E(N1)`.
    pub parallel_pairs_meet_n1: bool,
}

impl DualReport {
    /// All the asserted properties, given a 3-connected `M0`.
    pub fn holds(&self) -> bool {
        self.n1_is_restriction
            && self.n0_modular_in_m0 == self.n1_modular_in_m1
            && self.lambda_n1 == 3
            && self.internally_3_connected
            && self.parallel_pairs_meet_n1
    }
}

#[derive(Debug, Clone)]
pub struct Dualized {
    pub m1: Matroid,
    pub report: DualReport,
}

fn check_m0(m0: &Matroid, c: &CouplingR, require_3_connected: bool) -> Result<Subset> {
    let e0 = m0
        .subset(&c.n0)
        .map_err(|_| DualError::PreconditionFailed("M0 lacks the labels of N0".into()))?;
    if !m0.restrict_ordered(&e0.iter().collect::<Vec<_>>()).same_as(&c.plane) {
        return Err(DualError::PreconditionFailed("M0 | E(N0) differs from N0".into()));
    }
    // the copies must be fresh in M0
    if c.n1.iter().any(|l| m0.index_of(l).is_ok()) {
        return Err(DualError::PreconditionFailed("M0 already uses a label of N1".into()));
    }
    let l = lambda(m0, e0);
    if l != 3 {
        return Err(DualError::PreconditionFailed(format!("λ(E(N0)) = {l}, not 3")));
    }
    if require_3_connected && !is_3_connected(m0) {
        return Err(DualError::PreconditionFailed("M0 is not 3-connected".into()));
    }
    Ok(e0)
}

/// `((R ⊕_m M0) \ E(N0))*` without the hypothesis checks.
fn transform(r: &Matroid, m0: &Matroid, drop: &[String]) -> Result<Matroid> {
    let sum = modular_sum(r, m0)?;
    let d = sum.subset(drop)?;
    Ok(sum.delete(d).dual())
}

/// `M1 = ((R ⊕_m M0) \ E(N0))*` with its properties measured.
pub fn dualize(m0: &Matroid, c: &CouplingR) -> Result<Dualized> {
    let e0 = check_m0(m0, c, true)?;
    let m1 = transform(&c.r, m0, &c.n0)?;
    let e1 = part(&m1, &c.n1)?;
    let n1_is_restriction = m1.restrict_ordered(&e1.iter().collect::<Vec<_>>()).same_as(&c.plane_copy());
    let parallel_pairs_meet_n1 = parallel_pairs(&m1).iter().all(|&(a, b)| e1.contains(a) || e1.contains(b));
    let report = DualReport {
        n1_is_restriction,
        n0_modular_in_m0: is_modular_restriction(m0, e0),
        n1_modular_in_m1: is_modular_restriction(&m1, e1),
        lambda_n1: lambda(&m1, e1),
        internally_3_connected: is_internally_3_connected(&m1).is_ok(),
        parallel_pairs_meet_n1,
    };
    Ok(Dualized { m1, report })
}

/// `((R* ⊕_m M1) \ E(N1))*`, which recovers `M0`.
pub fn undualize(m1: &Matroid, c: &CouplingR) -> Result<Matroid> {
    transform(&c.r.dual(), m1, &c.n1)
}

fn parallel_pairs(m: &Matroid) -> Vec<(usize, usize)> {
    (0..m.len())
        .flat_map(|a| (a + 1..m.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| !m.is_loop(a) && m.is_parallel(a, b))
        .collect()
}

fn series_pairs(m: &Matroid) -> Vec<(usize, usize)> {
    (0..m.len())
        .flat_map(|a| (a + 1..m.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| m.is_cocircuit(Subset::from_indices([a, b])))
        .collect()
}

/// Whether `M0` and `M1` are both representable or both not.
pub fn representability_transfer(m0: &Matroid, m1: &Matroid, q: u32) -> Result<(bool, bool)> {
    Ok((is_representable(m0, q)?, is_representable(m1, q)?))
}

/// Contraction pair of `M0` against deletion pair of `M1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferReport {
    pub deletion_pair_in_m1: bool,
    /// Series pairs of `M1 \ x,y`, by label.
    pub series_pairs: Vec<(String, String)>,
    /// Parallel pairs of `M0 / x,y`, by label.
    pub parallel_pairs: Vec<(String, String)>,
    /// Every series pair of `M1 \ x,y` is a parallel pair of `M0 / x,y`.
    pub series_are_parallel: bool,
}

pub fn contraction_to_deletion_transfer(m0: &Matroid, c: &CouplingR, x: &str, y: &str) -> Result<TransferReport> {
    let e0 = check_m0(m0, c, true)?;
    let (xi, yi) = (m0.index_of(x)?, m0.index_of(y)?);
    if e0.contains(xi) || e0.contains(yi) {
        return Err(DualError::PreconditionFailed("x and y must avoid E(N0)".into()));
    }
    if !is_contraction_pair(m0, xi, yi) {
        return Err(DualError::PreconditionFailed(format!("{{{x}, {y}}} is not a contraction pair of M0")));
    }
    let m1 = transform(&c.r, m0, &c.n0)?;
    let (x1, y1) = (m1.index_of(x)?, m1.index_of(y)?);
    let named = |m: &Matroid, v: Vec<(usize, usize)>| -> Vec<(String, String)> {
        v.into_iter().map(|(a, b)| (m.label(a).to_string(), m.label(b).to_string())).collect()
    };
    let del = m1.delete(Subset::from_indices([x1, y1]));
    let con = m0.contract(Subset::from_indices([xi, yi]));
    let series = named(&del, series_pairs(&del));
    let parallel = named(&con, parallel_pairs(&con));
    let series_are_parallel =
        series.iter().all(|(a, b)| parallel.iter().any(|(p, r)| (p == a && r == b) || (p == b && r == a)));
    Ok(TransferReport {
        deletion_pair_in_m1: is_deletion_pair(&m1, x1, y1),
        series_pairs: series,
        parallel_pairs: parallel,
        series_are_parallel,
    })
}

/// Both sides of the rank identity used for the involution, and the
/// parallel-copy description of `(R* ⊕_m R'*)* / E(N1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionClaims {
    pub rank_lhs: usize,
    pub rank_rhs: usize,
    pub parallel_copies: bool,
}

impl InvolutionClaims {
    pub fn holds(&self) -> bool {
        self.rank_lhs == self.rank_rhs && self.parallel_copies
    }
}

/// `R'` and `M0'` relabel `E(N0)` to fresh copies `E(N0')`.
pub fn involution_claims(m0: &Matroid, c: &CouplingR) -> Result<InvolutionClaims> {
    check_m0(m0, c, false)?;
    let prime = |l: &str| format!("{l}\"");
    let rename = |m: &Matroid| -> Result<Matroid> {
        let labels = m.labels().iter().map(|l| if c.n0.contains(l) { prime(l) } else { l.clone() }).collect();
        Ok(m.relabel(labels)?)
    };
    let r_star = c.r.dual();
    let r_p = rename(&c.r)?;
    let m0_p = rename(m0)?;
    let inner = modular_sum(&r_p, &m0_p)?.dual();
    let lhs = modular_sum(&r_star, &inner)?.dual();
    let rr = modular_sum(&r_star, &r_p.dual())?.dual();
    let n0p_rank = 3;
    let rank_rhs = rr.full_rank() + m0_p.full_rank() - n0p_rank;

    // (R* ⊕_m R'*)* / E(N1): each element of E(N0) parallel to its copy
    let e1 = rr.subset(&c.n1)?;
    let quotient = rr.contract(e1);
    let mut parallel_copies = true;
    for l in &c.n0 {
        let (a, b) = (quotient.index_of(l)?, quotient.index_of(&prime(l))?);
        parallel_copies &= quotient.is_parallel(a, b) && !quotient.is_loop(a);
    }
    let copies: Vec<String> = c.n0.iter().map(|l| prime(l)).collect();
    let cs = quotient.subset(&copies)?;
    parallel_copies &= quotient.restrict_ordered(&cs.iter().collect::<Vec<_>>()).same_as(&c.plane.relabel(copies)?);
    parallel_copies &= quotient.full_rank() == 3;
    Ok(InvolutionClaims { rank_lhs: lhs.full_rank(), rank_rhs, parallel_copies })
}

/// `M1` for another admissible basis choice: the plane's matrix is put in
/// standard form with respect to `b0` (three labels) before building `R`.
/// The labels of `N1` are the copies of the plane labels either way.
pub fn coupling_for_basis(q: u32, plane: &GfMatrix, b0: &[&str]) -> Result<CouplingR> {
    let idx = plane.indices_of(b0)?;
    let std = plane.standard_form(&idx)?;
    let mut order = idx.clone();
    order.extend((0..plane.cols()).filter(|j| !idx.contains(j)));
    build_coupling(q, &std.select_columns(&order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn coupling_at_q2() {
        let c = standard_coupling(2, "").unwrap();
        assert_eq!(c.r.len(), 14);
        assert_eq!(c.r.full_rank(), 7);
        assert_eq!(c.b0, vec!["1", "2", "3"]);
        assert_eq!(c.b1_star.len(), 4);
    }

    #[test]
    fn coupling_rejects_non_plane() {
        let u = fixtures::binary(&["1001", "0101", "0011"], &["a", "b", "c", "d"]);
        assert!(matches!(build_coupling(2, u.matrix().unwrap()), Err(DualError::NotAPGRepresentation(2))));
    }

    #[test]
    fn dualize_binary_fixture() {
        let c = standard_coupling(2, "").unwrap();
        let m0 = fixtures::fano_rank4_binary();
        let d = dualize(&m0, &c).unwrap();
        assert!(d.report.holds(), "{:?}", d.report);
        assert!(undualize(&d.m1, &c).unwrap().same_as(&m0));
        assert_eq!(representability_transfer(&m0, &d.m1, 2).unwrap(), (true, true));
    }

    #[test]
    fn dualize_non_binary_fixture() {
        let c = standard_coupling(2, "").unwrap();
        let m0 = fixtures::fano_plane_gf4_three();
        let d = dualize(&m0, &c).unwrap();
        assert!(d.report.holds(), "{:?}", d.report);
        assert!(undualize(&d.m1, &c).unwrap().same_as(&m0));
        assert_eq!(representability_transfer(&m0, &d.m1, 2).unwrap(), (false, false));
        let claims = involution_claims(&m0, &c).unwrap();
        assert!(claims.holds(), "{claims:?}");
    }

    #[test]
    fn dualize_checks_lambda() {
        let c = standard_coupling(2, "").unwrap();
        let m0 = fixtures::fano_plus_point();
        assert!(matches!(dualize(&m0, &c), Err(DualError::PreconditionFailed(_))));
    }
}
