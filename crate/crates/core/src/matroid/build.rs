//! Named constructors: uniform matroids, projective and affine geometries,
//! and cycle matroids of graphs.

use crate::field::{Elem, FieldSpec};
use crate::matrix::GfMatrix;
use crate::subset::Subset;

use super::{default_labels, Matroid, MatroidError, Result};

/// `U_{r,n}` with labels `1..n`.
pub fn make_uniform(r: usize, n: usize) -> Result<Matroid> {
    if r > n {
        return Err(MatroidError::InvalidParameters(format!("rank {r} exceeds size {n}")));
    }
    if n > super::TABLE_CAP {
        return Err(MatroidError::TooLarge(n));
    }
    Matroid::from_rank_fn(default_labels(n), |s| s.len().min(r))
}

/// Projective points of `GF(q)^r`, one normalized representative each
/// (first nonzero coordinate 1). The unit vectors come first, the others
/// follow in lexicographic order of their coordinates.
pub fn pg_points(r: usize, f: &FieldSpec) -> Vec<Vec<Elem>> {
    let q = f.order() as usize;
    let mut pts: Vec<Vec<Elem>> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect())
        .collect();
    let total = q.pow(r as u32);
    for code in 1..total {
        // most significant digit is coordinate 0
        let mut v = vec![Elem::ZERO; r];
        let mut c = code;
        for i in (0..r).rev() {
            v[i] = Elem((c % q) as u8);
            c /= q;
        }
        let lead = v.iter().position(|x| !x.is_zero()).unwrap();
        if v[lead] != Elem::ONE || v.iter().filter(|x| !x.is_zero()).count() == 1 {
            continue;
        }
        pts.push(v);
    }
    pts
}

fn columns_matrix(f: std::sync::Arc<FieldSpec>, r: usize, cols: &[Vec<Elem>], labels: Vec<String>) -> Result<GfMatrix> {
    let n = cols.len();
    let mut entries = vec![Elem::ZERO; r * n];
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            entries[i * n + j] = x;
        }
    }
    Ok(GfMatrix::new(f, r, n, entries, labels)?)
}

/// `PG(dim, q)` as a linear matroid of rank `dim + 1`.
pub fn make_pg(dim: usize, q: u32) -> Result<Matroid> {
    if dim < 1 {
        return Err(MatroidError::InvalidParameters("dimension must be at least 1".into()));
    }
    let f = FieldSpec::shared(q)?;
    let r = dim + 1;
    let count = (q as usize).pow(r as u32).saturating_sub(1) / (q as usize - 1);
    if count > 32 {
        return Err(MatroidError::TooLarge(count));
    }
    let pts = pg_points(r, &f);
    let labels = default_labels(pts.len());
    Matroid::from_matrix(columns_matrix(f, r, &pts, labels)?)
}

/// `AG(dim, q)`: the points of `PG(dim, q)` off the hyperplane `x_0 = 0`.
pub fn make_ag(dim: usize, q: u32) -> Result<Matroid> {
    let pg = make_pg(dim, q)?;
    let m = pg.matrix().expect("projective geometries are linear");
    let keep: Subset = (0..m.cols()).filter(|&j| !m.get(0, j).is_zero()).collect();
    let ag = pg.restrict(keep);
    ag.relabel(default_labels(ag.len()))
}

/// Cycle matroid of a simple graph on vertices `0..vertices`, realized by the
/// vertex-edge incidence matrix over GF(2). Edge `(a, b)` is labeled `a-b`.
pub fn make_graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
    let mut seen = std::collections::HashSet::new();
    for &(a, b) in edges {
        if a >= vertices || b >= vertices {
            return Err(MatroidError::InvalidGraph(format!("edge {a}-{b} has an unknown vertex")));
        }
        if a == b {
            return Err(MatroidError::InvalidGraph(format!("loop at vertex {a}")));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(MatroidError::InvalidGraph(format!("repeated edge {a}-{b}")));
        }
    }
    let f = FieldSpec::shared(2)?;
    let cols: Vec<Vec<Elem>> = edges
        .iter()
        .map(|&(a, b)| (0..vertices).map(|v| Elem((v == a || v == b) as u8)).collect())
        .collect();
    let labels = edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    Matroid::from_matrix(columns_matrix(f, vertices, &cols, labels)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pg_sizes_and_lines() {
        for q in [2u32, 3, 4] {
            let m = make_pg(2, q).unwrap();
            let q = q as usize;
            assert_eq!(m.len(), q * q + q + 1);
            assert_eq!(m.full_rank(), 3);
            assert!(m.is_simple());
            let lines = m.flats_of_rank(2);
            assert_eq!(lines.len(), q * q + q + 1);
            assert!(lines.iter().all(|l| l.len() == q + 1));
        }
    }

    #[test]
    fn pg_points_are_normalized_and_start_with_a_frame() {
        let f = FieldSpec::new(3).unwrap();
        let pts = pg_points(3, &f);
        assert_eq!(pts.len(), 13);
        assert_eq!(pts[0], vec![Elem(1), Elem(0), Elem(0)]);
        assert_eq!(pts[2], vec![Elem(0), Elem(0), Elem(1)]);
        for p in &pts {
            assert_eq!(p.iter().find(|x| !x.is_zero()), Some(&Elem::ONE));
        }
    }

    #[test]
    fn ag23_has_twelve_lines() {
        let m = make_ag(2, 3).unwrap();
        assert_eq!((m.len(), m.full_rank()), (9, 3));
        let lines = m.flats_of_rank(2);
        assert_eq!(lines.len(), 12);
        assert!(lines.iter().all(|l| l.len() == 3));
    }

    #[test]
    fn k4_cycle_matroid() {
        let m = make_graphic(4, &crate::fixtures::k4_edges()).unwrap();
        assert_eq!((m.len(), m.full_rank()), (6, 3));
        assert_eq!(m.circuits_of_size(3).len(), 4);
        assert_eq!(m.label(0), "0-1");
        assert!(make_graphic(2, &[(0, 1), (1, 0)]).is_err());
        assert!(make_graphic(2, &[(1, 1)]).is_err());
    }

    #[test]
    fn uniform_rejects_bad_rank() {
        assert!(make_uniform(3, 2).is_err());
        assert_eq!(make_uniform(2, 5).unwrap().bases().len(), 10);
    }
}
