//! Connectivity: λ, local connectivity, κ and Tutte linking, separations,
//! triangles, triads and fans, deletion and contraction pairs, and the
//! ordering lemma for κ-critical elements.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::matroid::Matroid;
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnError {
    #[error("matroid is not 3-connected: {0}")]
    NotThreeConnected(String),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("hypothesis violated at element `{element}`: {reason}")]
    HypothesisViolated { element: String, reason: String },
    #[error("hypotheses hold but no ordering exists")]
    NoOrdering,
}

/// `r(X) + r(E \ X) - r(M)`.
pub fn lambda(m: &Matroid, x: Subset) -> usize {
    m.rank(x) + m.rank(m.ground() - x) - m.full_rank()
}

/// `r(A) + r(B) - r(A ∪ B)`.
pub fn local_conn(m: &Matroid, a: Subset, b: Subset) -> usize {
    m.rank(a) + m.rank(b) - m.rank(a | b)
}

/// κ(S, T): the least λ(A) over `S ⊆ A ⊆ E \ T`.
///
/// Depth-first over the free elements, bounding each partial assignment
/// `(inside, outside)` below by `r(inside) + r(outside) - r(M)`.
pub fn kappa(m: &Matroid, s: Subset, t: Subset) -> usize {
    kappa_with_side(m, s, t).0
}

/// κ(S, T) together with the first minimizing side `A`.
pub fn kappa_with_side(m: &Matroid, s: Subset, t: Subset) -> (usize, Subset) {
    assert!(s.is_disjoint(t), "kappa needs disjoint sets");
    let free: Vec<usize> = (m.ground() - s - t).iter().collect();
    let r = m.full_rank();
    let mut best = (lambda(m, s), s);
    fn go(m: &Matroid, free: &[usize], i: usize, inn: Subset, out: Subset, r: usize, best: &mut (usize, Subset)) {
        let bound = (m.rank(inn) + m.rank(out)).saturating_sub(r);
        if bound >= best.0 {
            return;
        }
        if i == free.len() {
            *best = (bound, inn);
            return;
        }
        let e = free[i];
        go(m, free, i + 1, inn.with(e), out, r, best);
        go(m, free, i + 1, inn, out.with(e), r, best);
    }
    if best.0 > 0 {
        go(m, &free, 0, s, t, r, &mut best);
    }
    best
}

/// A contraction set realizing Tutte's Linking Theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingWitness {
    pub z: Subset,
    pub achieved: usize,
}

/// `⊓_{M/Z}(S, T)` computed from `M`'s rank function.
pub fn local_conn_after_contract(m: &Matroid, s: Subset, t: Subset, z: Subset) -> usize {
    let rz = m.rank(z);
    (m.rank(s | z) + m.rank(t | z)) - (m.rank(s | t | z) + rz)
}

/// Whether `(M/Z)|S = M|S`, that is, whether `S` and `Z` are skew.
pub fn restriction_preserved(m: &Matroid, s: Subset, z: Subset) -> bool {
    m.rank(s | z) == m.rank(s) + m.rank(z)
}

/// The smallest, then lexicographically least, `Z ⊆ E \ (S ∪ T)` with
/// `⊓_{M/Z}(S, T) = κ(S, T)` and both restrictions kept.
pub fn linking_witness(m: &Matroid, s: Subset, t: Subset) -> Option<LinkingWitness> {
    let k = kappa(m, s, t);
    let free = m.ground() - s - t;
    for size in 0..=free.len() {
        for z in free.subsets_of_size(size) {
            if restriction_preserved(m, s, z)
                && restriction_preserved(m, t, z)
                && local_conn_after_contract(m, s, t, z) == k
            {
                return Some(LinkingWitness { z, achieved: k });
            }
        }
    }
    None
}

/// `max_Z ⊓_{M/Z}(S, T)` over all `Z ⊆ E \ (S ∪ T)`.
pub fn max_linking(m: &Matroid, s: Subset, t: Subset) -> usize {
    (m.ground() - s - t).subsets().map(|z| local_conn_after_contract(m, s, t, z)).max().unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparationKind {
    Plain,
    Internal,
    Vertical,
}

impl SeparationKind {
    pub fn name(self) -> &'static str {
        match self {
            SeparationKind::Plain => "plain",
            SeparationKind::Internal => "internal",
            SeparationKind::Vertical => "vertical",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub a: Subset,
    pub b: Subset,
    pub order: usize,
    /// The `ℓ` of the `ℓ`-separation this certifies.
    pub ell: usize,
    pub kind: SeparationKind,
}

impl SeparationCertificate {
    pub fn to_text(&self, m: &Matroid) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "SEP kind={} order={} A={} B={}",
            self.kind.name(),
            self.order,
            m.names(self.a).join(","),
            m.names(self.b).join(",")
        );
        s
    }

    /// Re-checks the partition, the order and the side conditions.
    pub fn verify(&self, m: &Matroid) -> bool {
        let (a, b) = (self.a, self.b);
        let sizes = match self.kind {
            SeparationKind::Internal => 3,
            _ => self.ell,
        };
        a.is_disjoint(b)
            && (a | b) == m.ground()
            && lambda(m, a) == self.order
            && self.order < self.ell
            && a.len() >= sizes
            && b.len() >= sizes
            && (self.kind != SeparationKind::Vertical
                || (m.rank(a) < m.full_rank() && m.rank(b) < m.full_rank()))
    }
}

/// The first `ℓ`-separation of the given kind, scanning sides that contain
/// element 0 in subset-code order. `Internal` ignores `ell` and looks for
/// 2-separations with both sides of size at least 3.
pub fn find_separation(m: &Matroid, ell: usize, kind: SeparationKind) -> Option<SeparationCertificate> {
    let n = m.len();
    if n < 2 {
        return None;
    }
    let (ell, min_side) = match kind {
        SeparationKind::Internal => (2, 3),
        _ => (ell, ell),
    };
    if 2 * min_side > n {
        return None;
    }
    let full = m.ground();
    let r = m.full_rank();
    let rest = full.without(0);
    for sub in rest.subsets() {
        let a = sub.with(0);
        let b = full - a;
        if a.len() < min_side || b.len() < min_side {
            continue;
        }
        let (ra, rb) = (m.rank(a), m.rank(b));
        let order = ra + rb - r;
        if order >= ell {
            continue;
        }
        if kind == SeparationKind::Vertical && (ra >= r || rb >= r) {
            continue;
        }
        return Some(SeparationCertificate { a, b, order, ell, kind });
    }
    None
}

/// `Ok` when `M` has no `ℓ`-separation for `ℓ < k`, else the first one found
/// (smallest `ℓ` first).
pub fn is_k_connected(m: &Matroid, k: usize) -> Result<(), SeparationCertificate> {
    for ell in 1..k {
        if let Some(c) = find_separation(m, ell, SeparationKind::Plain) {
            return Err(c);
        }
    }
    Ok(())
}

pub fn is_connected(m: &Matroid) -> bool {
    is_k_connected(m, 2).is_ok()
}

pub fn is_3_connected(m: &Matroid) -> bool {
    is_k_connected(m, 3).is_ok()
}

/// Connected with no 2-separation whose sides both have three elements.
pub fn is_internally_3_connected(m: &Matroid) -> Result<(), SeparationCertificate> {
    if let Some(c) = find_separation(m, 1, SeparationKind::Plain) {
        return Err(c);
    }
    match find_separation(m, 2, SeparationKind::Internal) {
        Some(c) => Err(c),
        None => Ok(()),
    }
}

/// No vertical `ℓ`-separation for `ℓ < k`.
pub fn is_vertically_k_connected(m: &Matroid, k: usize) -> Result<(), SeparationCertificate> {
    for ell in 1..k {
        if let Some(c) = find_separation(m, ell, SeparationKind::Vertical) {
            return Err(c);
        }
    }
    Ok(())
}

pub fn is_vertically_4_connected(m: &Matroid) -> Result<(), SeparationCertificate> {
    is_vertically_k_connected(m, 4)
}

/// A vertically 4-connected matroid has a 3-connected simplification; `true`
/// when this holds for `m` (vacuously when `m` is not vertically 4-connected).
pub fn simplification_remark_holds(m: &Matroid) -> bool {
    is_vertically_4_connected(m).is_err() || is_3_connected(&m.simplify().0)
}

// ---- triangles, triads and fans --------------------------------------------

pub fn is_triangle(m: &Matroid, t: Subset) -> bool {
    t.len() == 3 && m.rank(t) == 2 && t.iter().all(|e| m.rank(t.without(e)) == 2)
}

pub fn is_triad(m: &Matroid, t: Subset) -> bool {
    t.len() == 3 && m.corank(t) == 2 && t.iter().all(|e| m.corank(t.without(e)) == 2)
}

pub fn triangles(m: &Matroid) -> Vec<Subset> {
    m.ground().subsets_of_size(3).filter(|&t| is_triangle(m, t)).collect()
}

pub fn triads(m: &Matroid) -> Vec<Subset> {
    m.ground().subsets_of_size(3).filter(|&t| is_triad(m, t)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    pub elems: Vec<usize>,
    /// Whether the first three elements form a triangle (otherwise a triad).
    pub starts_with_triangle: bool,
}

impl Fan {
    pub fn set(&self) -> Subset {
        self.elems.iter().copied().collect()
    }

    pub fn ends(&self) -> Subset {
        Subset::from_indices([self.elems[0], *self.elems.last().unwrap()])
    }
}

/// Whether a sequence is a fan: consecutive triples are triangles or triads,
/// a triangle is followed by a triad and a triad by a triangle.
pub fn is_fan(m: &Matroid, seq: &[usize]) -> bool {
    let kinds: Vec<(bool, bool)> = seq
        .windows(3)
        .map(|w| {
            let t: Subset = w.iter().copied().collect();
            (is_triangle(m, t), is_triad(m, t))
        })
        .collect();
    let distinct = seq.iter().copied().collect::<Subset>().len() == seq.len();
    distinct
        && kinds.iter().all(|&(a, b)| a || b)
        && kinds.windows(2).all(|w| (!w[0].0 || w[1].1) && (!w[0].1 || w[1].0))
}

/// All sequences with at least three elements whose element set is a
/// maximal fan set, one per ordering up to reversal, sorted.
pub fn find_fans(m: &Matroid) -> Vec<Fan> {
    let tri: HashSet<Subset> = triangles(m).into_iter().collect();
    let tds: HashSet<Subset> = triads(m).into_iter().collect();
    let kind = |t: Subset| (tri.contains(&t), tds.contains(&t));
    let mut all: Vec<Vec<usize>> = Vec::new();
    fn extend(
        m: &Matroid,
        seq: &mut Vec<usize>,
        last: (bool, bool),
        kind: &dyn Fn(Subset) -> (bool, bool),
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(seq.clone());
        let used: Subset = seq.iter().copied().collect();
        let k = seq.len();
        for x in (m.ground() - used).iter() {
            let t = Subset::from_indices([seq[k - 2], seq[k - 1], x]);
            let next = kind(t);
            if !(next.0 || next.1) || (last.0 && !next.1) || (last.1 && !next.0) {
                continue;
            }
            seq.push(x);
            extend(m, seq, next, kind, out);
            seq.pop();
        }
    }
    let starts: Vec<Subset> = tri.iter().chain(tds.iter()).copied().collect::<HashSet<_>>().into_iter().collect();
    for t in starts {
        let e: Vec<usize> = t.iter().collect();
        for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let mut seq = vec![e[p[0]], e[p[1]], e[p[2]]];
            extend(m, &mut seq, kind(t), &kind, &mut all);
        }
    }
    let sets: HashSet<Subset> = all.iter().map(|s| s.iter().copied().collect()).collect();
    let maximal = |s: Subset| !sets.iter().any(|&o| o != s && s.is_subset_of(o));
    let mut seen = HashSet::new();
    let mut fans = Vec::new();
    for seq in all {
        let s: Subset = seq.iter().copied().collect();
        if !maximal(s) {
            continue;
        }
        let mut rev = seq.clone();
        rev.reverse();
        let key = if rev < seq { rev } else { seq };
        if seen.insert(key.clone()) {
            let t: Subset = key[..3].iter().copied().collect();
            fans.push(Fan { starts_with_triangle: tri.contains(&t), elems: key });
        }
    }
    fans.sort_by(|a, b| a.elems.cmp(&b.elems));
    fans
}

// ---- essential elements and pairs -----------------------------------------

fn require_3_connected(m: &Matroid) -> Result<(), ConnError> {
    is_k_connected(m, 3).map_err(|c| ConnError::NotThreeConnected(c.to_text(m)))
}

/// Elements `e` for which neither `M \ e` nor `M / e` is 3-connected.
pub fn essential_elements(m: &Matroid) -> Result<Subset, ConnError> {
    require_3_connected(m)?;
    Ok((0..m.len())
        .filter(|&e| {
            let s = Subset::singleton(e);
            !is_3_connected(&m.delete(s)) && !is_3_connected(&m.contract(s))
        })
        .collect())
}

/// Pairs `{x, y}` outside `forbidden` with `M \ x`, `M \ y` 3-connected and
/// `M \ x, y` internally 3-connected.
pub fn deletion_pairs(m: &Matroid, forbidden: Subset) -> Result<Vec<(usize, usize)>, ConnError> {
    require_3_connected(m)?;
    let allowed: Vec<usize> = (m.ground() - forbidden).iter().collect();
    let good: Vec<bool> = (0..m.len()).map(|e| is_3_connected(&m.delete(Subset::singleton(e)))).collect();
    let mut out = Vec::new();
    for (i, &x) in allowed.iter().enumerate() {
        if !good[x] {
            continue;
        }
        for &y in &allowed[i + 1..] {
            if good[y] && is_internally_3_connected(&m.delete(Subset::from_indices([x, y]))).is_ok() {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

pub fn is_deletion_pair(m: &Matroid, x: usize, y: usize) -> bool {
    x != y
        && is_3_connected(&m.delete(Subset::singleton(x)))
        && is_3_connected(&m.delete(Subset::singleton(y)))
        && is_internally_3_connected(&m.delete(Subset::from_indices([x, y]))).is_ok()
}

/// Deletion pairs of the dual.
pub fn contraction_pairs(m: &Matroid, forbidden: Subset) -> Result<Vec<(usize, usize)>, ConnError> {
    require_3_connected(m)?;
    deletion_pairs(&m.dual(), forbidden)
}

pub fn is_contraction_pair(m: &Matroid, x: usize, y: usize) -> bool {
    is_deletion_pair(&m.dual(), x, y)
}

// ---- the κ inequalities ------------------------------------------------------

/// `λ_{M\e}(D1) + λ_{M/e}(C1) - λ_M(D1 ∩ C1) - λ_M(D2 ∩ C2) + 1`, where the
/// second parts complement the first in `E \ e`. Non-negative by the
/// Bixby-Coullard inequality.
pub fn bixby_coullard_gap(m: &Matroid, e: usize, c1: Subset, d1: Subset) -> Result<i64, ConnError> {
    let rest = m.ground().without(e);
    if !c1.is_subset_of(rest) || !d1.is_subset_of(rest) {
        return Err(ConnError::BadPartition("parts must avoid e and lie in the ground set".into()));
    }
    let (c2, d2) = (rest - c1, rest - d1);
    let es = Subset::singleton(e);
    let r = |x: Subset| m.rank(x) as i64;
    let lam_del = r(d1) + r(d2) - r(rest);
    let lam_con = r(c1 | es) + r(c2 | es) - r(es) - r(m.ground());
    let lam = |x: Subset| lambda(m, x) as i64;
    Ok(lam_del + lam_con - lam(d1 & c1) - lam(d2 & c2) + 1)
}

/// κ of `(A, B)` in `M \ e` and `M / e`, computed on the minors.
fn kappa_minor(m: &Matroid, a: Subset, b: Subset, e: usize, contract: bool) -> usize {
    let s = Subset::singleton(e);
    let minor = if contract { m.contract(s) } else { m.delete(s) };
    let map = |x: Subset| -> Subset {
        x.iter().map(|i| if i > e { i - 1 } else { i }).collect()
    };
    kappa(&minor, map(a), map(b))
}

/// An ordering `v_1..v_k` of `C ∪ D` with `λ(A ∪ {v_1..v_i}) = κ(A, B)` for
/// every prefix, given that deleting any element of `D` and contracting any
/// element of `C` lowers κ(A, B).
pub fn greedy_ordering(
    m: &Matroid,
    a: Subset,
    b: Subset,
    c: Subset,
    d: Subset,
) -> Result<Vec<usize>, ConnError> {
    let parts = [a, b, c, d];
    let union = parts.iter().fold(Subset::EMPTY, |acc, &p| acc | p);
    let total: usize = parts.iter().map(|p| p.len()).sum();
    if union != m.ground() || total != m.len() {
        return Err(ConnError::BadPartition("(A, B, C, D) must partition the ground set".into()));
    }
    let k = kappa(m, a, b);
    for e in d.iter() {
        if kappa_minor(m, a, b, e, false) >= k {
            return Err(ConnError::HypothesisViolated {
                element: m.label(e).to_string(),
                reason: "deleting it does not lower kappa".into(),
            });
        }
    }
    for e in c.iter() {
        if kappa_minor(m, a, b, e, true) >= k {
            return Err(ConnError::HypothesisViolated {
                element: m.label(e).to_string(),
                reason: "contracting it does not lower kappa".into(),
            });
        }
    }
    if lambda(m, a) != k {
        return Err(ConnError::NoOrdering);
    }
    let v = c | d;
    let mut failed = HashSet::new();
    let mut order = Vec::new();
    fn go(m: &Matroid, k: usize, cur: Subset, rest: Subset, order: &mut Vec<usize>, failed: &mut HashSet<Subset>) -> bool {
        if rest.is_empty() {
            return true;
        }
        if failed.contains(&cur) {
            return false;
        }
        for e in rest.iter() {
            let next = cur.with(e);
            if lambda(m, next) == k {
                order.push(e);
                if go(m, k, next, rest.without(e), order, failed) {
                    return true;
                }
                order.pop();
            }
        }
        failed.insert(cur);
        false
    }
    if go(m, k, a, v, &mut order, &mut failed) {
        Ok(order)
    } else {
        Err(ConnError::NoOrdering)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matroid::{make_graphic, make_pg, make_uniform};

    #[test]
    fn lambda_examples() {
        let f = make_pg(2, 2).unwrap();
        assert_eq!(lambda(&f, Subset::EMPTY), 0);
        let line = f.flats_of_rank(2)[0];
        assert_eq!(lambda(&f, line), 2);
        let lines = f.flats_of_rank(2);
        assert_eq!(local_conn(&f, lines[0], lines[1]), 1);
        assert_eq!(local_conn(&f, lines[0], lines[0]), 2);
    }

    #[test]
    fn kappa_and_linking_small() {
        let u = make_uniform(2, 4).unwrap();
        assert_eq!(kappa(&u, Subset::singleton(0), Subset::singleton(1)), 1);
        let ds = make_uniform(1, 2).unwrap().direct_sum(&make_uniform(1, 2).unwrap().with_prefix("b")).unwrap();
        assert_eq!(kappa(&ds, Subset::singleton(0), Subset::singleton(2)), 0);
        let w = linking_witness(&u, Subset::singleton(0), Subset::singleton(1)).unwrap();
        assert_eq!((w.z, w.achieved), (Subset::singleton(2), 1));
        let w = linking_witness(&u, Subset::from_indices([0, 1]), Subset::from_indices([2, 3])).unwrap();
        assert_eq!(w.z, Subset::EMPTY);
    }

    #[test]
    fn kappa_matches_brute_force() {
        let m = make_graphic(4, &fixtures::k4_edges()).unwrap();
        let n = m.len();
        for s in m.ground().subsets() {
            for t in s.complement(n).subsets() {
                let brute = (m.ground() - s - t).subsets().map(|x| lambda(&m, s | x)).min().unwrap();
                assert_eq!(kappa(&m, s, t), brute);
            }
        }
    }

    #[test]
    fn connectivity_of_catalog() {
        assert!(is_3_connected(&make_pg(2, 2).unwrap()));
        assert!(is_3_connected(&make_pg(2, 3).unwrap()));
        assert!(is_3_connected(&make_uniform(1, 2).unwrap()));
        // a parallel pair inside a larger matroid breaks 3-connectivity
        let par = fixtures::u23_with_parallel();
        let cert = is_k_connected(&par, 3).unwrap_err();
        assert!(cert.verify(&par));
        assert_eq!(cert.order, 1);
        assert!(cert.to_text(&par).starts_with("SEP kind=plain order=1 A="));
    }

    #[test]
    fn triads_and_fans() {
        let f = make_pg(2, 2).unwrap();
        assert!(triads(&f).is_empty());
        let k4 = make_graphic(4, &fixtures::k4_edges()).unwrap();
        assert_eq!(triads(&k4).len(), 4);
        let fans = find_fans(&k4);
        assert!(!fans.is_empty());
        for fan in &fans {
            assert!(is_fan(&k4, &fan.elems));
            assert!(lambda(&k4, fan.set()) <= 2);
        }
        for e in 0..6 {
            assert!(fans.iter().any(|f| f.elems.len() >= 4 && f.set().contains(e)));
        }
    }

    #[test]
    fn essential_and_pairs() {
        assert_eq!(essential_elements(&make_pg(2, 2).unwrap()).unwrap(), Subset::EMPTY);
        assert_eq!(essential_elements(&make_uniform(2, 4).unwrap()).unwrap(), Subset::EMPTY);
        let k4 = make_graphic(4, &fixtures::k4_edges()).unwrap();
        assert_eq!(essential_elements(&k4).unwrap(), k4.ground());
        assert!(deletion_pairs(&k4, Subset::EMPTY).unwrap().is_empty());
        let pg3 = make_pg(2, 3).unwrap();
        assert_eq!(deletion_pairs(&pg3, Subset::EMPTY).unwrap().len(), 78);
        assert!(essential_elements(&fixtures::u23_with_parallel()).is_err());
    }

    #[test]
    fn bixby_coullard_partition_errors() {
        let u = make_uniform(2, 4).unwrap();
        assert!(bixby_coullard_gap(&u, 0, Subset::singleton(0), Subset::EMPTY).is_err());
        assert!(bixby_coullard_gap(&u, 0, Subset::singleton(1), Subset::singleton(2)).unwrap() >= 0);
    }

    #[test]
    fn greedy_ordering_trivial_cases() {
        let u = make_uniform(2, 4).unwrap();
        let a = Subset::from_indices([0, 1]);
        let b = Subset::from_indices([2, 3]);
        assert_eq!(greedy_ordering(&u, a, b, Subset::EMPTY, Subset::EMPTY).unwrap(), vec![]);
        let err = greedy_ordering(&u, Subset::singleton(0), Subset::singleton(1), Subset::EMPTY, Subset::from_indices([2, 3]))
            .unwrap_err();
        assert!(matches!(err, ConnError::HypothesisViolated { .. }));
    }
}
