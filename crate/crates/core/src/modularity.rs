//! Modular restrictions, modular sums (generalized parallel connection) and
//! their decomposition, subjugation, and the minor characterization of
//! modularity.

use std::collections::HashSet;

use thiserror::Error;

use crate::connectivity::{lambda, local_conn};
use crate::field::{Elem, FieldSpec};
use crate::matrix::GfMatrix;
use crate::matroid::{make_pg, Matroid, MatroidError, SubsetMap, TABLE_CAP};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModError {
    #[error("the summands disagree on their shared elements")]
    SharedRestrictionMismatch,
    #[error("the shared restriction is not modular in the first summand (flat {0})")]
    SharedFlatNotModular(String),
    #[error("the restriction is not modular (flat {0})")]
    NotModular(String),
    #[error("the matrix does not represent the matroid")]
    NotARepresentation,
    #[error("the sum has {0} elements, above the cap of {TABLE_CAP}")]
    TooLarge(usize),
    #[error("subjugation scan over {0} outside elements exceeds the cap of 16")]
    SubjugationTooLarge(usize),
    #[error("construction failed its own check: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

fn flat_names(m: &Matroid, f: Subset) -> String {
    format!("{{{}}}", m.names(f).join(","))
}

/// The first flat `F` with `r(F) + r(X) != r(F ∩ X) + r(F ∪ X)`, if any.
pub fn modular_violation(m: &Matroid, x: Subset) -> Option<Subset> {
    let rx = m.rank(x);
    m.ground()
        .subsets()
        .find(|&f| m.rank(f) + rx != m.rank(f & x) + m.rank(f | x) && m.is_flat(f))
}

pub fn is_modular_restriction(m: &Matroid, x: Subset) -> bool {
    modular_violation(m, x).is_none()
}

/// Two summands glued along the labels they share.
#[derive(Debug, Clone)]
pub struct ModularSumSpec {
    pub m1: Matroid,
    pub m2: Matroid,
}

impl ModularSumSpec {
    pub fn new(m1: Matroid, m2: Matroid) -> ModularSumSpec {
        ModularSumSpec { m1, m2 }
    }

    /// Shared labels, in the first summand's order.
    pub fn shared(&self) -> Vec<String> {
        self.m1.labels().iter().filter(|l| self.m2.index_of(l).is_ok()).cloned().collect()
    }

    pub fn build(&self) -> Result<Matroid, ModError> {
        modular_sum(&self.m1, &self.m2)
    }
}

/// Index bookkeeping between a sum's ground set and its two summands.
struct Gluing {
    labels: Vec<String>,
    to1: SubsetMap,
    to2: SubsetMap,
    from1: SubsetMap,
    from2: SubsetMap,
    /// The shared set, as a subset of the sum's ground set.
    t: Subset,
    e1: Subset,
    e2: Subset,
}

fn gluing(m1: &Matroid, m2: &Matroid) -> Gluing {
    let mut labels = m1.labels().to_vec();
    let n1 = m1.len();
    let mut pos2 = Vec::with_capacity(m2.len());
    for l in m2.labels() {
        match m1.index_of(l) {
            Ok(i) => pos2.push(i),
            Err(_) => {
                pos2.push(labels.len());
                labels.push(l.clone());
            }
        }
    }
    let n = labels.len();
    let mut t2 = vec![None; n];
    for (j, &p) in pos2.iter().enumerate() {
        t2[p] = Some(j);
    }
    let t1: Vec<Option<usize>> = (0..n).map(|i| (i < n1).then_some(i)).collect();
    let e1 = Subset::full(n1);
    let e2: Subset = pos2.iter().copied().collect();
    Gluing {
        to1: SubsetMap::new(&t1),
        to2: SubsetMap::new(&t2),
        from1: SubsetMap::new(&(0..n1).map(Some).collect::<Vec<_>>()),
        from2: SubsetMap::new(&pos2.iter().map(|&p| Some(p)).collect::<Vec<_>>()),
        t: e1 & e2,
        e1,
        e2,
        labels,
    }
}

/// The modular sum `M1 ⊕_m M2` along `T = E(M1) ∩ E(M2)`, which must be
/// modular in `M1` with `M1|T = M2|T`. The ground set lists `E(M1)` first,
/// then `E(M2) \ T`.
///
/// Closures are the fixpoint of `X ↦ cl_1(X ∩ E1) ∪ cl_2(X ∩ E2)` and ranks
/// come from `r(F) = r_1(F ∩ E1) + r_2(F ∩ E2) - r_1(F ∩ T)` on the closure.
/// The result is checked against both restrictions, the total rank and the
/// description of its flats as the sets with flat traces.
pub fn modular_sum(m1: &Matroid, m2: &Matroid) -> Result<Matroid, ModError> {
    let g = gluing(m1, m2);
    let n = g.labels.len();
    if n > TABLE_CAP {
        return Err(ModError::TooLarge(n));
    }
    for x in g.t.subsets() {
        if m1.rank(g.to1.apply(x)) != m2.rank(g.to2.apply(x)) {
            return Err(ModError::SharedRestrictionMismatch);
        }
    }
    let t1 = g.to1.apply(g.t);
    if let Some(f) = modular_violation(m1, t1) {
        return Err(ModError::SharedFlatNotModular(flat_names(m1, f)));
    }
    let rank_via_closure = |x: Subset| -> usize {
        let mut cur = x;
        loop {
            let c1 = g.from1.apply(m1.closure(g.to1.apply(cur)));
            let c2 = g.from2.apply(m2.closure(g.to2.apply(cur)));
            let next = cur | c1 | c2;
            if next == cur {
                break;
            }
            cur = next;
        }
        m1.rank(g.to1.apply(cur)) + m2.rank(g.to2.apply(cur)) - m1.rank(g.to1.apply(cur & g.t))
    };
    let sum = Matroid::from_rank_fn(g.labels.clone(), rank_via_closure)?;
    self_check_sum(&sum, m1, m2, &g)?;
    Ok(sum)
}

fn self_check_sum(sum: &Matroid, m1: &Matroid, m2: &Matroid, g: &Gluing) -> Result<(), ModError> {
    if !sum.restrict(g.e1).same_as(m1) {
        return Err(ModError::SelfCheck("restriction to the first summand".into()));
    }
    if !sum.restrict(g.e2).same_as(m2) {
        return Err(ModError::SelfCheck("restriction to the second summand".into()));
    }
    if sum.full_rank() + m1.rank(g.to1.apply(g.t)) != m1.full_rank() + m2.full_rank() {
        return Err(ModError::SelfCheck("total rank".into()));
    }
    for x in sum.ground().subsets() {
        let traces = m1.is_flat(g.to1.apply(x)) && m2.is_flat(g.to2.apply(x));
        if sum.is_flat(x) != traces {
            return Err(ModError::SelfCheck(format!("flat description at {}", flat_names(sum, x))));
        }
    }
    Ok(())
}

/// Splits `M` along a modular restriction `N` when `M / E(N)` is
/// disconnected. The first part collects the component of `M / E(N)` that
/// holds the lowest-indexed element, the second part the rest; each part
/// also contains `E(N)`. The sum of the parts is compared with `M`.
pub fn decompose_on_modular_restriction(m: &Matroid, n: Subset) -> Result<Option<(Matroid, Matroid)>, ModError> {
    if let Some(f) = modular_violation(m, n) {
        return Err(ModError::NotModular(flat_names(m, f)));
    }
    let outside: Vec<usize> = (m.ground() - n).iter().collect();
    let comps = m.contract(n).components();
    if comps.len() < 2 {
        return Ok(None);
    }
    let lift = |s: Subset| -> Subset { s.iter().map(|i| outside[i]).collect() };
    let p = lift(comps[0]);
    let q = m.ground() - n - p;
    let m1 = m.restrict(p | n);
    let m2 = m.restrict(q | n);
    let back = modular_sum(&m1, &m2)?;
    if !back.same_as(m) {
        return Err(ModError::SelfCheck("parts do not sum back to the input".into()));
    }
    Ok(Some((m1, m2)))
}

/// Whether `(E1 \ T, E2 \ T)` separates `(M1 ⊕_m M2) / T`.
pub fn contract_separates_check(spec: &ModularSumSpec) -> Result<bool, ModError> {
    let sum = spec.build()?;
    let g = gluing(&spec.m1, &spec.m2);
    let mt = sum.contract(g.t);
    let side1: Vec<&str> = sum.names(g.e1 - g.t);
    let a = mt.subset(&side1)?;
    Ok(lambda(&mt, a) == 0)
}

// ---- subjugation -------------------------------------------------------------

/// `⊓(X, S) = ⊓(E \ S, Y) = ⊓(X, Y)`.
pub fn subjugates(m: &Matroid, s: Subset, y: Subset, x: Subset) -> bool {
    let target = local_conn(m, x, s);
    local_conn(m, m.ground() - s, y) == target && local_conn(m, x, y) == target
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subjugation {
    /// For each `X ⊆ E \ S` in subset order, the least `Y` that subjugates it.
    Holds(Vec<(Subset, Subset)>),
    /// A set `X` that no `Y ⊆ S` subjugates.
    FailsAt(Subset),
}

/// Whether `S` subjugates `M`: every `X ⊆ E \ S` has some `Y ⊆ S`.
pub fn set_subjugates(m: &Matroid, s: Subset) -> Result<Subjugation, ModError> {
    let out = m.ground() - s;
    if out.len() > 16 {
        return Err(ModError::SubjugationTooLarge(out.len()));
    }
    let rs = m.rank(s);
    let rout = m.rank(out);
    // ⊓(E \ S, Y) depends only on Y; group the Y by that value
    let mut by_value: Vec<Vec<Subset>> = vec![Vec::new(); rs + 1];
    for y in s.subsets() {
        let v = rout + m.rank(y) - m.rank(out | y);
        by_value[v].push(y);
    }
    let mut witnesses = Vec::new();
    for x in out.subsets() {
        let target = m.rank(x) + rs - m.rank(x | s);
        let found = by_value[target].iter().copied().find(|&y| local_conn(m, x, y) == target);
        match found {
            Some(y) => witnesses.push((x, y)),
            None => return Ok(Subjugation::FailsAt(x)),
        }
    }
    Ok(Subjugation::Holds(witnesses))
}

// ---- minor characterization --------------------------------------------------

/// A contraction set `C` and element `e` showing `N` is not modular: in
/// `M / C`, the restriction to `E(N)` is unchanged, `e` is a non-loop in the
/// closure of `E(N)`, and `e` is parallel to no element of `E(N)`.
pub fn modularity_by_minor_search(m: &Matroid, n: Subset) -> Option<(Subset, usize)> {
    let rn = m.rank(n);
    let rest = m.ground() - n;
    // contracting a basis of C gives the same minor on the other elements
    for c in rest.subsets() {
        if !m.is_independent(c) || m.rank(c | n) != rn + c.len() {
            continue;
        }
        let rc = c.len();
        let rcn = rn + rc;
        for e in (rest - c).iter() {
            let ce = c.with(e);
            if m.rank(ce) == rc || m.rank(ce | n) != rcn {
                continue;
            }
            if n.iter().all(|x| m.rank(ce.with(x)) == rc + 2) {
                return Some((c, e));
            }
        }
    }
    None
}

// ---- embedding into a projective geometry ------------------------------------

/// Extends `A` (representing `N`) by every projective point of its column
/// space that no column of `A` already represents. Returns the column
/// matroid of the extended matrix and the matrix; the columns of `A` come
/// first, unchanged, and the new ones carry fresh labels.
pub fn embed_in_pg(n: &Matroid, a: &GfMatrix) -> Result<(Matroid, GfMatrix), ModError> {
    let col = Matroid::from_matrix(a.clone())?;
    if !col.same_as(n) {
        return Err(ModError::NotARepresentation);
    }
    let f = a.field().clone();
    let rows = a.rows();
    // a column basis of A
    let mut basis = Vec::new();
    for j in 0..a.cols() {
        let mut cand = basis.clone();
        cand.push(j);
        if a.rank_of_columns(&cand) == cand.len() {
            basis = cand;
        }
    }
    let normalize = |v: &mut Vec<Elem>, f: &FieldSpec| -> bool {
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[p]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        true
    };
    let mut have: HashSet<Vec<Elem>> = HashSet::new();
    for j in 0..a.cols() {
        let mut v = a.column(j);
        if normalize(&mut v, &f) {
            have.insert(v);
        }
    }
    let q = f.order() as usize;
    let r = basis.len();
    let mut extra: Vec<Vec<Elem>> = Vec::new();
    for code in 1..q.pow(r as u32) {
        let mut v = vec![Elem::ZERO; rows];
        let mut c = code;
        for &b in basis.iter().rev() {
            let coef = Elem((c % q) as u8);
            c /= q;
            for (i, x) in v.iter_mut().enumerate() {
                *x = f.add(*x, f.mul(coef, a.get(i, b)));
            }
        }
        if normalize(&mut v, &f) && have.insert(v.clone()) {
            extra.push(v);
        }
    }
    let mut prefix = String::from("x");
    while a.labels().iter().any(|l| l.starts_with(&prefix)) {
        prefix.push('x');
    }
    let mut cols: Vec<Vec<Elem>> = (0..a.cols()).map(|j| a.column(j)).collect();
    let mut labels = a.labels().to_vec();
    for (i, v) in extra.into_iter().enumerate() {
        cols.push(v);
        labels.push(format!("{prefix}{}", i + 1));
    }
    let total = cols.len();
    let mut entries = vec![Elem::ZERO; rows * total];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..rows {
            entries[i * total + j] = c[i];
        }
    }
    let ext = GfMatrix::new(f, rows, total, entries, labels).map_err(MatroidError::from)?;
    Ok((Matroid::from_matrix(ext.clone())?, ext))
}

// ---- the glued planes ----------------------------------------------------------

/// `PG(2, p)` and `PG(2, q)` glued along a line of the first, identified with
/// `p + 1` points of the line `x_2 = 0` of the second. Labels are `a1..` for
/// the small plane and `b1..` for the remaining points of the large one.
pub fn glued_planes(q: u32, p: u32) -> Result<Matroid, ModError> {
    if p > q {
        return Err(MatroidError::InvalidParameters(format!("line of PG(2,{p}) does not fit in PG(2,{q})")).into());
    }
    let small = make_pg(2, p)?.with_prefix("a");
    let large = make_pg(2, q)?.with_prefix("b");
    let line_of = |m: &Matroid| -> Vec<usize> {
        let a = m.matrix().expect("linear");
        (0..a.cols()).filter(|&j| a.get(2, j).is_zero()).collect()
    };
    let small_line = line_of(&small);
    let large_line = line_of(&large);
    let mut labels = large.labels().to_vec();
    for (k, &j) in large_line.iter().take(small_line.len()).enumerate() {
        labels[j] = small.label(small_line[k]).to_string();
    }
    let large = large.relabel(labels)?;
    let sum = modular_sum(&small, &large)?;
    let mut renamed = sum.labels().to_vec();
    for (i, l) in renamed.iter_mut().filter(|l| l.starts_with('b')).enumerate() {
        *l = format!("b{}", i + 1);
    }
    Ok(sum.relabel(renamed)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{is_3_connected, is_vertically_4_connected};
    use crate::fixtures;
    use crate::matroid::make_uniform;

    #[test]
    fn points_are_modular_and_u36_triangles_are_not() {
        let f = make_pg(2, 2).unwrap();
        assert!(is_modular_restriction(&f, Subset::singleton(0)));
        assert!(is_modular_restriction(&f, f.flats_of_rank(2)[0]));
        let u = make_uniform(3, 6).unwrap();
        let tri = Subset::from_indices([0, 1, 2]);
        assert!(modular_violation(&u, tri).is_some());
        assert!(modularity_by_minor_search(&u, tri).is_some());
    }

    #[test]
    fn direct_sum_when_nothing_is_shared() {
        let a = make_uniform(2, 3).unwrap().with_prefix("a");
        let b = make_uniform(1, 2).unwrap().with_prefix("b");
        let s = modular_sum(&a, &b).unwrap();
        assert!(s.same_as(&a.direct_sum(&b).unwrap()));
    }

    #[test]
    fn parallel_connection_of_triangles() {
        let (m1, m2) = fixtures::two_triangles_sharing_one();
        let s = modular_sum(&m1, &m2).unwrap();
        assert_eq!((s.len(), s.full_rank()), (5, 3));
        s.check_axioms().unwrap();
        // deleting the shared element gives the 2-sum of two triangles: U_{3,4}
        let e = s.index_of("p").unwrap();
        let two_sum = s.delete(Subset::singleton(e));
        assert_eq!(two_sum.circuits().len(), 1);
        assert_eq!(two_sum.circuits()[0].len(), 4);
    }

    #[test]
    fn glued_planes_shape() {
        let g = glued_planes(3, 2).unwrap();
        assert_eq!((g.len(), g.full_rank()), (17, 4));
        assert!(is_3_connected(&g));
        assert!(is_vertically_4_connected(&g).is_err());
        let big = g.subset(&g.labels().iter().filter(|l| l.starts_with('b')).collect::<Vec<_>>()).unwrap();
        let t: Subset = (0..g.len()).filter(|&i| ["a1", "a2", "a6"].contains(&g.label(i))).collect();
        let plane = big | t;
        assert_eq!(plane.len(), 13);
        assert!(is_modular_restriction(&g, plane));
        assert_eq!(lambda(&g, plane), 2);
    }

    #[test]
    fn decomposition_of_glued_planes() {
        let g = glued_planes(3, 2).unwrap();
        let t: Subset = (0..g.len()).filter(|&i| ["a1", "a2", "a6"].contains(&g.label(i))).collect();
        assert!(matches!(decompose_on_modular_restriction(&g, t), Err(ModError::NotModular(_))));
        let line = g.closure(t);
        assert_eq!(line.len(), 4);
        let (m1, m2) = decompose_on_modular_restriction(&g, line).unwrap().unwrap();
        assert_eq!((m1.len(), m2.len()), (8, 13));
        let plane = g.ground() - (g.ground() - line).iter().filter(|&i| g.label(i).starts_with('a')).collect::<Subset>();
        assert!(decompose_on_modular_restriction(&g, plane).unwrap().is_none());
    }

    #[test]
    fn subjugation_of_modular_sets() {
        let f = make_pg(2, 2).unwrap();
        let m = fixtures::fano_plus_point();
        let n = m.subset(f.labels()).unwrap();
        match set_subjugates(&m, n).unwrap() {
            Subjugation::Holds(w) => assert_eq!(w.len(), 1 << (m.len() - n.len())),
            Subjugation::FailsAt(x) => panic!("fails at {x:?}"),
        }
        for x in (m.ground() - n).subsets() {
            assert!(subjugates(&m, n, m.closure(x) & n, x));
        }
        assert!(matches!(set_subjugates(&m, m.ground()).unwrap(), Subjugation::Holds(_)));
    }

    #[test]
    fn embed_small_cases() {
        let u23 = make_pg(1, 2).unwrap();
        let (n2, a2) = embed_in_pg(&u23, u23.matrix().unwrap()).unwrap();
        assert_eq!(n2.len(), 3);
        assert_eq!(a2, u23.matrix().unwrap().clone());
        let four = make_pg(2, 2).unwrap().restrict(Subset::from_indices([0, 1, 2, 3]));
        let (n7, a7) = embed_in_pg(&four, four.matrix().unwrap()).unwrap();
        assert!(n7.is_simple());
        assert!(find_pg(&n7));
        assert_eq!(a7.select_columns(&[0, 1, 2, 3]), four.matrix().unwrap().clone());
    }

    fn find_pg(m: &Matroid) -> bool {
        crate::matroid::is_isomorphic_via(m, &make_pg(2, 2).unwrap()).is_some()
    }
}
