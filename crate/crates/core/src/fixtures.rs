//! Named small matroids and seeded random generators used by tests and campaigns.

use rand::Rng;

use crate::field::{Elem, FieldSpec};
use crate::matrix::{rank_of_vectors, GfMatrix};
use crate::matroid::{make_uniform, pg_points, Matroid};
use crate::subset::Subset;

/// Edges of `K_4`.
pub fn k4_edges() -> Vec<(usize, usize)> {
    vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
}

/// `U_{2,3}` with a fourth element parallel to the second.
pub fn u23_with_parallel() -> Matroid {
    let labels = vec!["a".into(), "b".into(), "c".into(), "b2".into()];
    Matroid::from_rank_fn(labels, |s| {
        let classes = s.iter().map(|e| if e == 3 { 1 } else { e }).collect::<Subset>();
        classes.len().min(2)
    })
    .expect("valid rank function")
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Two triangles `{p, a1, a2}` and `{p, b1, b2}` sharing `p`.
pub fn two_triangles_sharing_one() -> (Matroid, Matroid) {
    let t = |a: &str, b: &str| make_uniform(2, 3).unwrap().relabel(labels(&["p", a, b])).unwrap();
    (t("a1", "a2"), t("b1", "b2"))
}

/// Binary matrix from rows of 0/1 digits.
pub fn binary(rows: &[&str], names: &[&str]) -> Matroid {
    over_field(2, rows, names)
}

/// Matrix over GF(q) from rows of digit strings (codes below 10).
pub fn over_field(q: u32, rows: &[&str], names: &[&str]) -> Matroid {
    let f = FieldSpec::shared(q).unwrap();
    let cols = names.len();
    let entries: Vec<Elem> = rows
        .iter()
        .flat_map(|r| r.chars().filter(|c| !c.is_whitespace()).map(|c| Elem(c.to_digit(10).unwrap() as u8)))
        .collect();
    assert_eq!(entries.len(), rows.len() * cols, "ragged matrix");
    Matroid::from_matrix(GfMatrix::new(f, rows.len(), cols, entries, labels(names)).unwrap()).unwrap()
}

/// The Fano plane on `1..7` (as built by `make_pg(2, 2)`) with a point `8`
/// off its plane.
pub fn fano_plus_point() -> Matroid {
    binary(
        &["10000111", "01001011", "00101101", "00000001"],
        &["1", "2", "3", "4", "5", "6", "7", "8"],
    )
}

/// 2-sum of `m1` and `m2` along the basepoints `p1` and `p2`, which are
/// removed. Elements of `m1` come first; labels must be disjoint.
pub fn two_sum(m1: &Matroid, p1: usize, m2: &Matroid, p2: usize) -> Matroid {
    let keep1: Vec<usize> = (0..m1.len()).filter(|&i| i != p1).collect();
    let keep2: Vec<usize> = (0..m2.len()).filter(|&i| i != p2).collect();
    let mut names: Vec<String> = keep1.iter().map(|&i| m1.label(i).to_string()).collect();
    names.extend(keep2.iter().map(|&i| m2.label(i).to_string()));
    let k = keep1.len();
    Matroid::from_rank_fn(names, |s| {
        let x1: Subset = s.iter().filter(|&i| i < k).map(|i| keep1[i]).collect();
        let x2: Subset = s.iter().filter(|&i| i >= k).map(|i| keep2[i - k]).collect();
        let apart = m1.rank(x1) + m2.rank(x2);
        let joined = m1.rank(x1.with(p1)) + m2.rank(x2.with(p2)) - 1;
        apart.min(joined)
    })
    .expect("valid 2-sum")
}

/// 2-sum of two copies of `U_{2,4}`.
pub fn two_sum_u24_u24() -> Matroid {
    let u = make_uniform(2, 4).unwrap();
    two_sum(&u.with_prefix("a"), 3, &u.with_prefix("b"), 3)
}

/// 2-sum of `U_{2,4}` and `M(K_4)`.
pub fn two_sum_u24_k4() -> Matroid {
    let u = make_uniform(2, 4).unwrap().with_prefix("a");
    let k4 = crate::matroid::make_graphic(4, &k4_edges()).unwrap();
    two_sum(&u, 3, &k4, 5)
}

/// `PG(2,3)` on `1..13` in the plane `x3 = 0` of `GF(3)^4`, with `14 = e4`,
/// `15 = e1 + e4` and `16 = e2 + e4`.
pub fn pg23_plus_three() -> Matroid {
    let f = FieldSpec::shared(3).unwrap();
    let mut cols: Vec<Vec<Elem>> = crate::matroid::pg_points(3, &f)
        .into_iter()
        .map(|mut v| {
            v.push(Elem::ZERO);
            v
        })
        .collect();
    for v in [[0, 0, 0, 1], [1, 0, 0, 1], [0, 1, 0, 1]] {
        cols.push(v.iter().map(|&x| Elem(x)).collect());
    }
    let names = crate::matroid::default_labels(cols.len());
    Matroid::from_matrix(GfMatrix::from_columns(f, 4, &cols, names).unwrap()).unwrap()
}

/// The Fano plane on `1..7` in the hyperplane `x3 = 0` of `GF(2)^4`, with
/// `8 = e4`, `9 = e1 + e4`, `10 = e2 + e4`, `11 = e3 + e4`.
pub fn fano_rank4_binary() -> Matroid {
    binary(
        &["10001110100", "01010110010", "00111010001", "00000001111"],
        &["1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11"],
    )
}

/// The Fano plane inside `PG(2,4)` with three non-collinear points off
/// it, each on one line of the Fano plane. Not binary.
pub fn fano_plane_gf4_three() -> Matroid {
    over_field(
        4,
        &["1000111101", "0101011210", "0011101022"],
        &["1", "2", "3", "4", "5", "6", "7", "8", "9", "10"],
    )
}

// ---- seeded random generators -----------------------------------------------

/// Scales a nonzero vector so its first nonzero coordinate is 1.
fn normalized(f: &FieldSpec, v: &[Elem]) -> Option<Vec<Elem>> {
    let lead = *v.iter().find(|x| !x.is_zero())?;
    let inv = f.inv(lead).expect("nonzero");
    Some(v.iter().map(|&x| f.mul(x, inv)).collect())
}

fn random_point(rng: &mut impl Rng, f: &FieldSpec, rank: usize) -> Option<Vec<Elem>> {
    let q = f.order();
    let v: Vec<Elem> = (0..rank).map(|_| Elem(rng.gen_range(0..q) as u8)).collect();
    normalized(f, &v)
}

/// Up to `count` random projective points of `GF(q)^rank`, distinct from
/// each other and from `taken`. Gives up on a point after a few hundred
/// draws, so the result may be shorter when space runs out.
pub fn random_points(rng: &mut impl Rng, q: u32, rank: usize, count: usize, taken: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let f = FieldSpec::shared(q).expect("valid field order");
    let mut seen: Vec<Vec<Elem>> = taken.iter().filter_map(|v| normalized(&f, v)).collect();
    let mut out = Vec::new();
    for _ in 0..count {
        let found = (0..400).find_map(|_| random_point(rng, &f, rank).filter(|p| !seen.contains(p)));
        match found {
            Some(p) => {
                seen.push(p.clone());
                out.push(p);
            }
            None => break,
        }
    }
    out
}

fn linear(q: u32, rank: usize, cols: &[Vec<Elem>], names: Vec<String>) -> Matroid {
    let f = FieldSpec::shared(q).expect("valid field order");
    Matroid::from_matrix(GfMatrix::from_columns(f, rank, cols, names).expect("well-shaped")).expect("within the cap")
}

/// Number of points of `PG(rank - 1, q)`.
pub fn projective_points(q: u32, rank: usize) -> usize {
    ((q as usize).pow(rank as u32) - 1) / (q as usize - 1)
}

/// A simple GF(q)-linear matroid of the given rank with `n` random points,
/// labeled `1..n`; redrawn until it has full rank.
pub fn random_linear(rng: &mut impl Rng, q: u32, rank: usize, n: usize) -> Matroid {
    assert!(n >= rank && n <= projective_points(q, rank), "no simple rank-{rank} matroid on {n} points over GF({q})");
    let f = FieldSpec::shared(q).expect("valid field order");
    loop {
        let cols = random_points(rng, q, rank, n, &[]);
        if cols.len() == n && rank_of_vectors(&f, cols.clone()) == rank {
            return linear(q, rank, &cols, crate::matroid::default_labels(n));
        }
    }
}

/// `PG(2,q)` on the first three coordinates of `GF(q)^rank` (labels
/// `p1..`), followed by `extra` random points off it (labels `e1..`).
/// Redrawn until the points span.
pub fn random_plane_extension(rng: &mut impl Rng, q: u32, rank: usize, extra: usize) -> Matroid {
    assert!(rank >= 3 && extra + 3 >= rank, "the extra points cannot span rank {rank}");
    let room = projective_points(q, rank) - projective_points(q, 3);
    assert!(extra <= room, "only {room} points lie off the plane");
    let f = FieldSpec::shared(q).expect("valid field order");
    let plane: Vec<Vec<Elem>> = pg_points(3, &f)
        .into_iter()
        .map(|mut v| {
            v.resize(rank, Elem::ZERO);
            v
        })
        .collect();
    let mut names: Vec<String> = (1..=plane.len()).map(|i| format!("p{i}")).collect();
    names.extend((1..=extra).map(|i| format!("e{i}")));
    loop {
        let more = random_points(rng, q, rank, extra, &plane);
        let mut cols = plane.clone();
        cols.extend(more);
        if cols.len() == names.len() && rank_of_vectors(&f, cols.clone()) == rank {
            return linear(q, rank, &cols, names.clone());
        }
    }
}

/// `PG(2,2)` on `p1..p7` inside the plane of `PG(2,4)`, with `extra` random
/// points of that plane that are not binary (labels `e1..`). Redrawn until
/// the extra points span the plane.
pub fn random_gf4_plane_extension(rng: &mut impl Rng, extra: usize) -> Matroid {
    let f4 = FieldSpec::shared(4).expect("GF(4)");
    let fano = pg_points(3, &FieldSpec::shared(2).expect("GF(2)"));
    let mut names: Vec<String> = (1..=7).map(|i| format!("p{i}")).collect();
    names.extend((1..=extra).map(|i| format!("e{i}")));
    loop {
        let more = random_points(rng, 4, 3, extra, &fano);
        if more.len() == extra && rank_of_vectors(&f4, more.clone()) == 3 {
            let mut cols = fano.clone();
            cols.extend(more);
            return linear(4, 3, &cols, names.clone());
        }
    }
}

/// `M` with a new element `label` placed freely: `r(X + label) =
/// min(r(X) + 1, r(M))`.
pub fn free_extension(m: &Matroid, label: &str) -> Matroid {
    let n = m.len();
    let mut names = m.labels().to_vec();
    names.push(label.to_string());
    let r = m.full_rank();
    Matroid::from_rank_fn(names, |s| {
        let base = m.rank(s.without(n));
        if s.contains(n) {
            (base + 1).min(r)
        } else {
            base
        }
    })
    .expect("free extension stays within the cap")
}

/// Circuit-hyperplanes of `M`.
pub fn circuit_hyperplanes(m: &Matroid) -> Vec<Subset> {
    let r = m.full_rank();
    m.circuits_of_size(r).into_iter().filter(|&c| m.is_flat(c) && m.rank(c) + 1 == r).collect()
}

/// `M` with the circuit-hyperplane `c` made a basis.
pub fn relax(m: &Matroid, c: Subset) -> Matroid {
    let r = m.full_rank();
    Matroid::from_rank_fn(m.labels().to_vec(), |s| if s == c { r } else { m.rank(s) }).expect("same size")
}
