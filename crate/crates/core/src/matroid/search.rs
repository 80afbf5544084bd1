//! Restriction isomorphism search and line-minor detection.

use crate::subset::Subset;

use super::Matroid;

/// An injection `E(N) -> E(M)` under which `M` restricted to the image is
/// `N`, as the list of images in `N`'s ground order.
///
/// Backtracking assigns `N`'s elements in ground order. A partial map is
/// extended only when every subset of the assigned part containing the new
/// element and of size at most `r(N) + 1` keeps its rank; these sizes fix the
/// independent sets and hence the whole rank function.
pub fn find_restriction_isomorphic(m: &Matroid, n: &Matroid) -> Option<Vec<usize>> {
    if n.len() > m.len() || n.full_rank() > m.full_rank() {
        return None;
    }
    let mut img = Vec::with_capacity(n.len());
    let mut used = Subset::EMPTY;
    search(m, n, &mut img, &mut used).then_some(img)
}

/// An isomorphism `N -> M` when the ground sizes agree.
pub fn is_isomorphic_via(m: &Matroid, n: &Matroid) -> Option<Vec<usize>> {
    if m.len() != n.len() || m.full_rank() != n.full_rank() {
        return None;
    }
    find_restriction_isomorphic(m, n)
}

fn consistent(m: &Matroid, n: &Matroid, img: &[usize], cand: usize) -> bool {
    let i = img.len();
    let cap = n.full_rank() + 1;
    let earlier = Subset::full(i);
    for k in 0..cap.min(i + 1) {
        for x in earlier.subsets_of_size(k) {
            let image = x.iter().fold(Subset::singleton(cand), |acc, e| acc.with(img[e]));
            if m.rank(image) != n.rank(x.with(i)) {
                return false;
            }
        }
    }
    true
}

fn search(m: &Matroid, n: &Matroid, img: &mut Vec<usize>, used: &mut Subset) -> bool {
    if img.len() == n.len() {
        return true;
    }
    for cand in (m.ground() - *used).iter() {
        if consistent(m, n, img, cand) {
            img.push(cand);
            *used = used.with(cand);
            if search(m, n, img, used) {
                return true;
            }
            *used = used.without(cand);
            img.pop();
        }
    }
    false
}

/// The largest `k` with a `U_{2,k}`-minor, 0 when the rank is below 2.
///
/// A `U_{2,k}`-minor exists exactly when some flat of rank `r(M) - 2` lies in
/// at least `k` hyperplanes: contracting that flat leaves a rank-2 matroid
/// whose points are those hyperplanes.
pub fn line_minor_size(m: &Matroid) -> usize {
    let r = m.full_rank();
    if r < 2 {
        return 0;
    }
    let hyperplanes = m.hyperplanes();
    m.flats_of_rank(r - 2)
        .into_iter()
        .map(|f| hyperplanes.iter().filter(|h| f.is_subset_of(**h)).count())
        .max()
        .unwrap_or(0)
}

pub fn has_u2n_minor(m: &Matroid, n: usize) -> bool {
    n >= 2 && line_minor_size(m) >= n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{make_pg, make_uniform};

    #[test]
    fn fano_inside_pg24() {
        let big = make_pg(2, 4).unwrap();
        let fano = make_pg(2, 2).unwrap();
        let emb = find_restriction_isomorphic(&big, &fano).expect("subplane");
        let image: Subset = emb.iter().copied().collect();
        let sub = big.restrict_ordered(&emb).relabel(fano.labels().to_vec()).unwrap();
        assert!(sub.same_as(&fano));
        assert_eq!(image.len(), 7);
    }

    #[test]
    fn no_fano_in_pg23() {
        let pg3 = make_pg(2, 3).unwrap();
        assert!(find_restriction_isomorphic(&pg3, &make_pg(2, 2).unwrap()).is_none());
    }

    #[test]
    fn line_minors() {
        assert!(has_u2n_minor(&make_uniform(2, 5).unwrap(), 5));
        assert!(!has_u2n_minor(&make_pg(2, 2).unwrap(), 4));
        assert_eq!(line_minor_size(&make_pg(2, 3).unwrap()), 4);
        assert_eq!(line_minor_size(&make_uniform(3, 6).unwrap()), 5);
        assert_eq!(line_minor_size(&make_uniform(1, 3).unwrap()), 0);
    }
}
