//! Instance-level checks of the structural theorems on representability in
//! the presence of a modular projective plane, and of the connectivity facts
//! they rest on.
//!
//! Each check returns a [`Finding`]: a three-valued [`Verdict`] plus a
//! free-form detail string. `NOT-APPLICABLE` names the first hypothesis that
//! failed, so vacuous and verified outcomes stay apart.

use std::fmt;

use thiserror::Error;

use crate::connectivity::{
    essential_elements, find_fans, is_3_connected, is_connected, is_internally_3_connected,
    is_vertically_4_connected, kappa, lambda, linking_witness, max_linking, triads, triangles,
};
use crate::matrix::GfMatrix;
use crate::matroid::{find_restriction_isomorphic, has_u2n_minor, is_isomorphic_via, make_graphic, make_pg, Matroid, MinorSpec};
use crate::modularity::{is_modular_restriction, subjugates};
use crate::representation::{
    count_inequivalent_extensions, extend_representation, is_representable, RepError,
};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    /// The named hypothesis fails on this instance.
    NotApplicable(String),
    /// Every hypothesis holds and the conclusion fails.
    Counterexample(String),
}

impl Verdict {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, Verdict::Counterexample(_))
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::Consistent)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "CONSISTENT",
            Verdict::NotApplicable(_) => "NOT-APPLICABLE",
            Verdict::Counterexample(_) => "COUNTEREXAMPLE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub check: &'static str,
    pub verdict: Verdict,
    pub details: String,
}

impl Finding {
    fn new(check: &'static str, verdict: Verdict, details: impl Into<String>) -> Finding {
        Finding { check, verdict, details: details.into() }
    }

    fn consistent(check: &'static str, details: impl Into<String>) -> Finding {
        Finding::new(check, Verdict::Consistent, details)
    }

    fn not_applicable(check: &'static str, hypothesis: &str) -> Finding {
        Finding::new(check, Verdict::NotApplicable(hypothesis.into()), format!("hypothesis={hypothesis}"))
    }

    fn counterexample(check: &'static str, what: impl Into<String>) -> Finding {
        let what = what.into();
        Finding::new(check, Verdict::Counterexample(what.clone()), what)
    }

    /// `<instance-id> <check> <verdict> <details>`.
    pub fn line(&self, instance: &str) -> String {
        format!("{instance} {} {} {}", self.check, self.verdict, self.details)
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

fn names(m: &Matroid, s: Subset) -> String {
    format!("{{{}}}", m.names(s).join(","))
}

// ---- projective plane restrictions ---------------------------------------------

/// Every `PG(2,q)`-restriction found, at most one per rank-3 flat, as subsets
/// of `E(M)`. In a flat with parallel elements the lowest one of each class
/// is used.
pub fn plane_restrictions(m: &Matroid, q: u32) -> Vec<Subset> {
    let size = (q * q + q + 1) as usize;
    let Ok(pg) = make_pg(2, q) else { return Vec::new() };
    let (simple, rep) = m.simplify();
    let mut kept = vec![usize::MAX; simple.len()];
    for (e, r) in rep.iter().enumerate() {
        if let Some(i) = *r {
            kept[i] = kept[i].min(e);
        }
    }
    let mut out = Vec::new();
    for flat in simple.flats_of_rank(3) {
        if flat.len() < size {
            continue;
        }
        let order: Vec<usize> = flat.iter().collect();
        let sub = simple.restrict(flat);
        if let Some(map) = find_restriction_isomorphic(&sub, &pg) {
            out.push(map.iter().map(|&i| kept[order[i]]).collect());
        }
    }
    out
}

/// A `PG(2,q)`-restriction, preferring a modular one: `(N0, modular)`.
pub fn find_plane(m: &Matroid, q: u32) -> Option<(Subset, bool)> {
    let planes = plane_restrictions(m, q);
    if let Some(&p) = planes.iter().find(|&&p| is_modular_restriction(m, p)) {
        return Some((p, true));
    }
    planes.first().map(|&p| (p, false))
}

// ---- the main statements ----------------------------------------------------------

/// A vertically 4-connected matroid with a modular `PG(2,q)`-restriction is
/// GF(q)-representable.
pub fn check_theorem_1_1(m: &Matroid, q: u32) -> Finding {
    const C: &str = "thm1.1";
    let Some((plane, modular)) = find_plane(m, q) else {
        return Finding::not_applicable(C, &format!("has-PG(2,{q})-restriction"));
    };
    if !modular {
        return Finding::not_applicable(C, &format!("PG(2,{q})-restriction-modular"));
    }
    if let Err(cert) = is_vertically_4_connected(m) {
        return Finding::not_applicable(C, &format!("vertically-4-connected ({})", cert.to_text(m).replace('\n', " ")));
    }
    match is_representable(m, q) {
        Ok(true) => Finding::consistent(C, format!("plane={} representable=yes", names(m, plane))),
        Ok(false) => Finding::counterexample(C, format!("plane={} modular, vertically 4-connected, not GF({q})-representable", names(m, plane))),
        Err(e) => Finding::not_applicable(C, &format!("searchable ({e})")),
    }
}

/// A GF(q)-representation `a_n` of a modular restriction `M|N` of rank at
/// least 3 in a vertically 4-connected `M` extends to `M`, uniquely up to
/// row operations and column scaling.
pub fn check_theorem_1_2(m: &Matroid, n: Subset, q: u32, a_n: &GfMatrix) -> Result<Finding> {
    const C: &str = "thm1.2";
    if m.rank(n) < 3 {
        return Err(HarnessError::PreconditionFailed(format!("r(N) = {} < 3", m.rank(n))));
    }
    if !is_modular_restriction(m, n) {
        return Err(HarnessError::PreconditionFailed("N is not modular in M".into()));
    }
    if is_vertically_4_connected(m).is_err() {
        return Err(HarnessError::PreconditionFailed("M is not vertically 4-connected".into()));
    }
    if a_n.field().order() != q {
        return Err(HarnessError::PreconditionFailed(format!("A_N is not over GF({q})")));
    }
    if extend_representation(m, n, a_n)?.is_none() {
        return Ok(Finding::counterexample(C, "A_N does not extend"));
    }
    let classes = count_inequivalent_extensions(m, n, a_n, false)?;
    Ok(if classes == 1 {
        Finding::consistent(C, "extension-classes=1")
    } else {
        Finding::counterexample(C, format!("extension-classes={classes}"))
    })
}

/// A vertically 4-connected matroid with a `PG(2,q)`-restriction is
/// GF(q)-representable or has a `U_{2,q²+1}`-minor.
pub fn check_corollary_1_3(m: &Matroid, q: u32) -> Result<Finding> {
    const C: &str = "cor1.3";
    if plane_restrictions(m, q).is_empty() {
        return Err(HarnessError::PreconditionFailed(format!("M has no PG(2,{q})-restriction")));
    }
    if is_vertically_4_connected(m).is_err() {
        return Err(HarnessError::PreconditionFailed("M is not vertically 4-connected".into()));
    }
    if is_representable(m, q)? {
        return Ok(Finding::consistent(C, "branch=representable"));
    }
    let line = (q * q + 1) as usize;
    Ok(if has_u2n_minor(m, line) {
        Finding::consistent(C, format!("branch=U(2,{line})-minor"))
    } else {
        Finding::counterexample(C, format!("not GF({q})-representable and no U(2,{line})-minor"))
    })
}

/// Whether `M` is an excluded minor for GF(q)-representability: not
/// representable, with every single-element deletion and contraction
/// representable.
pub fn is_excluded_minor(m: &Matroid, q: u32) -> std::result::Result<bool, RepError> {
    if is_representable(m, q)? {
        return Ok(false);
    }
    for e in 0..m.len() {
        let s = Subset::singleton(e);
        if !is_representable(&m.delete(s), q)? || !is_representable(&m.contract(s), q)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No excluded minor for GF(q)-representability has a
/// `PG(2,q)`-restriction.
pub fn check_excluded_minor(m: &Matroid, q: u32) -> Finding {
    const C: &str = "excluded";
    match is_excluded_minor(m, q) {
        Err(e) => Finding::not_applicable(C, &format!("searchable ({e})")),
        Ok(false) => Finding::not_applicable(C, &format!("excluded-minor-for-GF({q})")),
        Ok(true) => match plane_restrictions(m, q).first() {
            None => Finding::consistent(C, format!("excluded-minor=yes PG(2,{q})-restriction=none")),
            Some(&p) => Finding::counterexample(C, format!("excluded minor with PG(2,{q})-restriction {}", names(m, p))),
        },
    }
}

/// A 3-connected matroid with a modular three-point line is binary.
pub fn seymour_check(m: &Matroid) -> Finding {
    const C: &str = "seymour";
    if !is_3_connected(m) {
        return Finding::not_applicable(C, "3-connected");
    }
    let Some(line) = triangles(m).into_iter().find(|&t| is_modular_restriction(m, t)) else {
        return Finding::not_applicable(C, "modular-3-point-line");
    };
    match is_representable(m, 2) {
        Ok(true) => Finding::consistent(C, format!("line={} binary=yes", names(m, line))),
        Ok(false) => Finding::counterexample(C, format!("modular line {} but not binary", names(m, line))),
        Err(e) => Finding::not_applicable(C, &format!("searchable ({e})")),
    }
}

// ---- minor scans retaining the plane ----------------------------------------------

/// A minor `M / C \ D` with `C`, `D` outside `N0` that keeps `M|N0` as a
/// restriction, together with the anchored position of `N0` in it.
struct PlaneMinor {
    c: Subset,
    d: Subset,
    minor: Matroid,
    plane: Subset,
}

/// All minors obtained by contracting and deleting elements outside `n0`
/// with `C` skew to `n0`, in order of increasing `|C ∪ D|`.
fn plane_minors(m: &Matroid, n0: Subset) -> Vec<PlaneMinor> {
    let rest: Vec<usize> = (m.ground() - n0).iter().collect();
    let k = rest.len();
    let rn = m.rank(n0);
    let mut codes: Vec<(usize, u64)> = (0..3u64.pow(k as u32)).map(|code| {
        let mut c = code;
        let mut used = 0;
        for _ in 0..k {
            if c % 3 != 0 {
                used += 1;
            }
            c /= 3;
        }
        (used, code)
    }).collect();
    codes.sort();
    let mut out = Vec::new();
    for (_, code) in codes {
        let (mut c, mut d) = (Subset::EMPTY, Subset::EMPTY);
        let mut x = code;
        for &e in &rest {
            match x % 3 {
                1 => c = c.with(e),
                2 => d = d.with(e),
                _ => {}
            }
            x /= 3;
        }
        if m.rank(c | n0) != m.rank(c) + rn {
            continue;
        }
        let Ok(minor) = m.minor(MinorSpec { contract: c, delete: d }) else { continue };
        let kept: Vec<usize> = (m.ground() - c - d).iter().collect();
        let plane: Subset = kept.iter().enumerate().filter(|(_, &e)| n0.contains(e)).map(|(i, _)| i).collect();
        out.push(PlaneMinor { c, d, minor, plane });
    }
    out
}

/// A 3-connected non-GF(q)-representable matroid with a modular
/// `PG(2,q)`-restriction `N0` has a 3-connected non-representable minor that
/// keeps `N0` as a restriction and has `λ(E(N0)) = 2`.
pub fn check_key_lemma(m: &Matroid, n0: Subset, q: u32) -> Finding {
    const C: &str = "key-lemma";
    if !is_3_connected(m) {
        return Finding::not_applicable(C, "3-connected");
    }
    if !is_modular_restriction(m, n0) {
        return Finding::not_applicable(C, "N0-modular");
    }
    match is_representable(m, q) {
        Ok(false) => {}
        Ok(true) => return Finding::not_applicable(C, &format!("non-GF({q})-representable")),
        Err(e) => return Finding::not_applicable(C, &format!("searchable ({e})")),
    }
    for pm in plane_minors(m, n0) {
        if lambda(&pm.minor, pm.plane) != 2 || !is_3_connected(&pm.minor) {
            continue;
        }
        if let Ok(false) = is_representable(&pm.minor, q) {
            return Finding::consistent(C, format!("contract={} delete={}", names(m, pm.c), names(m, pm.d)));
        }
    }
    Finding::counterexample(C, "no 3-connected non-representable minor keeps N0 with lambda 2")
}

/// In a simple, vertically 4-connected, non-GF(q)-representable matroid with
/// a modular `PG(2,q)`-restriction `N0`, some minor-minimal 3-connected
/// non-representable minor keeping `N0` as a restriction has
/// `λ(E(N0)) ≥ 3`. The hypotheses are expected never to hold.
pub fn check_minimal_minor_connectivity(m: &Matroid, n0: Subset, q: u32) -> Finding {
    const C: &str = "minimal-minor";
    if !m.is_simple() {
        return Finding::not_applicable(C, "simple");
    }
    if is_vertically_4_connected(m).is_err() {
        return Finding::not_applicable(C, "vertically-4-connected");
    }
    if !is_modular_restriction(m, n0) {
        return Finding::not_applicable(C, "N0-modular");
    }
    match is_representable(m, q) {
        Ok(false) => {}
        Ok(true) => return Finding::not_applicable(C, &format!("non-GF({q})-representable")),
        Err(e) => return Finding::not_applicable(C, &format!("searchable ({e})")),
    }
    let good: Vec<PlaneMinor> = plane_minors(m, n0)
        .into_iter()
        .filter(|pm| is_3_connected(&pm.minor) && matches!(is_representable(&pm.minor, q), Ok(false)))
        .collect();
    let removed = |pm: &PlaneMinor| pm.c | pm.d;
    let minimal = good.iter().filter(|pm| {
        !good.iter().any(|o| {
            removed(pm).is_subset_of(removed(o)) && removed(o) != removed(pm) && pm.c.is_subset_of(o.c) && pm.d.is_subset_of(o.d)
        })
    });
    for pm in minimal {
        if lambda(&pm.minor, pm.plane) >= 3 {
            return Finding::consistent(C, format!("contract={} delete={}", names(m, pm.c), names(m, pm.d)));
        }
    }
    Finding::counterexample(C, "every minimal minor has lambda(E(N0)) < 3")
}

// ---- connectivity facts ----------------------------------------------------------

fn require_3_connected(check: &'static str, m: &Matroid) -> Option<Finding> {
    (!is_3_connected(m)).then(|| Finding::not_applicable(check, "3-connected"))
}

/// In a 3-connected matroid, `M \ e` or `M / e` is internally 3-connected for
/// every `e`.
pub fn check_bixby(m: &Matroid) -> Finding {
    const C: &str = "bixby";
    if let Some(f) = require_3_connected(C, m) {
        return f;
    }
    for e in 0..m.len() {
        let s = Subset::singleton(e);
        if is_internally_3_connected(&m.delete(s)).is_err() && is_internally_3_connected(&m.contract(s)).is_err() {
            return Finding::counterexample(C, format!("element {}", m.label(e)));
        }
    }
    Finding::consistent(C, format!("elements={}", m.len()))
}

/// For a triangle `{a, b, c}` of a 3-connected matroid with at least four
/// elements, `M \ a` or `M \ b` is 3-connected, or some triad contains `a`
/// and exactly one of `b`, `c`. Checked for every ordering of every triangle.
pub fn check_triangle_lemma(m: &Matroid) -> Finding {
    const C: &str = "triangle-lemma";
    if let Some(f) = require_3_connected(C, m) {
        return f;
    }
    if m.len() < 4 {
        return Finding::not_applicable(C, "at-least-4-elements");
    }
    let deletable: Vec<bool> = (0..m.len()).map(|e| is_3_connected(&m.delete(Subset::singleton(e)))).collect();
    let tds = triads(m);
    let tris = triangles(m);
    for &t in &tris {
        let v: Vec<usize> = t.iter().collect();
        for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let (a, b, c) = (v[p[0]], v[p[1]], v[p[2]]);
            let triad_ok = tds.iter().any(|&d| d.contains(a) && (d.contains(b) != d.contains(c)));
            if !(deletable[a] || deletable[b] || triad_ok) {
                return Finding::counterexample(C, format!("triangle ({},{},{})", m.label(a), m.label(b), m.label(c)));
            }
        }
    }
    Finding::consistent(C, format!("triangles={}", tris.len()))
}

/// Every triangle of a 3-connected matroid with at least four elements has an
/// element whose deletion is internally 3-connected.
pub fn check_triangle_deletion(m: &Matroid) -> Finding {
    const C: &str = "triangle-deletion";
    if let Some(f) = require_3_connected(C, m) {
        return f;
    }
    if m.len() < 4 {
        return Finding::not_applicable(C, "at-least-4-elements");
    }
    let tris = triangles(m);
    for &t in &tris {
        if !t.iter().any(|e| is_internally_3_connected(&m.delete(Subset::singleton(e))).is_ok()) {
            return Finding::counterexample(C, format!("triangle {}", names(m, t)));
        }
    }
    Finding::consistent(C, format!("triangles={}", tris.len()))
}

/// `λ` of the element set of every maximal fan is at most 2.
pub fn check_fan_lambda(m: &Matroid) -> Finding {
    const C: &str = "fan-lambda";
    let fans = find_fans(m);
    for fan in &fans {
        let l = lambda(m, fan.set());
        if l > 2 {
            return Finding::counterexample(C, format!("fan {} has lambda {l}", names(m, fan.set())));
        }
    }
    Finding::consistent(C, format!("fans={}", fans.len()))
}

/// Whether some restriction is a projective plane over GF(2), GF(3) or GF(4).
fn has_projective_plane(m: &Matroid) -> bool {
    [2, 3, 4].iter().any(|&q| (q * q + q + 1) as usize <= m.len() && !plane_restrictions(m, q).is_empty())
}

/// In a 3-connected matroid with a projective plane restriction, the
/// non-essential elements of a maximal fan with at least four elements are
/// exactly its two ends.
pub fn check_fan_ends(m: &Matroid) -> Finding {
    const C: &str = "fan-ends";
    if let Some(f) = require_3_connected(C, m) {
        return f;
    }
    if !has_projective_plane(m) {
        return Finding::not_applicable(C, "projective-plane-restriction");
    }
    let essential = essential_elements(m).expect("3-connected");
    let long: Vec<_> = find_fans(m).into_iter().filter(|f| f.elems.len() >= 4).collect();
    for fan in &long {
        let non_essential = fan.set() - essential;
        if non_essential != fan.ends() {
            return Finding::counterexample(
                C,
                format!("fan {:?} has non-essential elements {}", m.names(fan.elems.iter().copied().collect()), names(m, non_essential)),
            );
        }
    }
    Finding::consistent(C, format!("long-fans={}", long.len()))
}

/// An essential element of a 3-connected matroid lying in a four-element fan
/// is in a unique maximal fan, or in exactly three maximal fans of five
/// elements whose six-element union `X` has `M|X` or `M / (E \ X)`
/// isomorphic to `M(K4)`.
pub fn check_essential_fans(m: &Matroid) -> Finding {
    const C: &str = "essential-fans";
    if let Some(f) = require_3_connected(C, m) {
        return f;
    }
    let essential = essential_elements(m).expect("3-connected");
    // maximal fans are compared by their element sets
    let mut sets: Vec<Subset> = find_fans(m).iter().map(|f| f.set()).collect();
    sets.sort();
    sets.dedup();
    let k4 = make_graphic(4, &crate::fixtures::k4_edges()).expect("K4");
    let mut checked = 0;
    for e in essential.iter() {
        let containing: Vec<Subset> = sets.iter().copied().filter(|s| s.contains(e)).collect();
        if !containing.iter().any(|s| s.len() >= 4) {
            continue;
        }
        checked += 1;
        if containing.len() == 1 {
            continue;
        }
        let union = containing.iter().fold(Subset::EMPTY, |a, &b| a | b);
        let shape = containing.len() == 3 && containing.iter().all(|s| s.len() == 5) && union.len() == 6;
        let is_k4 = shape
            && (is_isomorphic_via(&m.restrict(union), &k4).is_some()
                || is_isomorphic_via(&m.contract(m.ground() - union), &k4).is_some());
        if !is_k4 {
            return Finding::counterexample(C, format!("element {} is in {} maximal fans", m.label(e), containing.len()));
        }
    }
    Finding::consistent(C, format!("essential-in-fans={checked}"))
}

/// In a connected matroid, `M \ e` or `M / e` is connected for every `e`.
pub fn check_tutte_connectedness(m: &Matroid) -> Finding {
    const C: &str = "tutte-connected";
    if !is_connected(m) {
        return Finding::not_applicable(C, "connected");
    }
    for e in 0..m.len() {
        let s = Subset::singleton(e);
        if !is_connected(&m.delete(s)) && !is_connected(&m.contract(s)) {
            return Finding::counterexample(C, format!("element {}", m.label(e)));
        }
    }
    Finding::consistent(C, format!("elements={}", m.len()))
}

/// Both forms of the linking theorem for one pair of disjoint sets:
/// `κ(S, T)` equals the largest `⊓_{M/Z}(S, T)`, and some `Z` attains it
/// while keeping `M|S` and `M|T`.
pub fn check_linking(m: &Matroid, s: Subset, t: Subset) -> Finding {
    const C: &str = "linking";
    if !s.is_disjoint(t) {
        return Finding::not_applicable(C, "disjoint");
    }
    let k = kappa(m, s, t);
    let best = max_linking(m, s, t);
    if best != k {
        return Finding::counterexample(C, format!("S={} T={} kappa={k} max={best}", names(m, s), names(m, t)));
    }
    match linking_witness(m, s, t) {
        Some(w) => Finding::consistent(C, format!("kappa={k} Z={}", names(m, w.z))),
        None => Finding::counterexample(C, format!("S={} T={} no Z keeps both restrictions", names(m, s), names(m, t))),
    }
}

/// The linking theorem over every pair of disjoint sets of `M`.
pub fn check_linking_exhaustive(m: &Matroid) -> Finding {
    const C: &str = "linking";
    let mut pairs = 0usize;
    for s in m.ground().subsets() {
        for t in (m.ground() - s).subsets() {
            pairs += 1;
            let f = check_linking(m, s, t);
            if f.verdict.is_counterexample() {
                return f;
            }
        }
    }
    Finding::consistent(C, format!("pairs={pairs}"))
}

// ---- subjugation duality ------------------------------------------------------

/// For every `S`, `X ⊆ E \ S` and `Y ⊆ S`: if `Y` subjugates
/// `(E \ S) \ X` relative to `S` in `M`, then `S \ Y` subjugates `X`
/// relative to `S` in `M*`.
pub fn check_subjugation_duality(m: &Matroid) -> Finding {
    const C: &str = "subjugation-duality";
    let d = m.dual();
    let e = m.ground();
    let mut triples = 0usize;
    let mut premises = 0usize;
    for s in e.subsets() {
        let out = e - s;
        for x in out.subsets() {
            for y in s.subsets() {
                triples += 1;
                if subjugates(m, s, y, out - x) {
                    premises += 1;
                    if !subjugates(&d, s, s - y, x) {
                        return Finding::counterexample(C, format!("S={} X={} Y={}", names(m, s), names(m, x), names(m, y)));
                    }
                }
            }
        }
    }
    Finding::consistent(C, format!("triples={triples} premises={premises}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matroid::make_uniform;
    use crate::modularity::glued_planes;
    use crate::representation::find_representation;

    #[test]
    fn plane_alone_is_consistent() {
        let f = make_pg(2, 2).unwrap();
        assert_eq!(check_theorem_1_1(&f, 2).verdict, Verdict::Consistent);
        let g = make_pg(2, 3).unwrap();
        let rep = find_representation(&g, 3).unwrap().unwrap();
        assert!(check_theorem_1_2(&g, g.ground(), 3, &rep.matrix).unwrap().verdict.is_consistent());
    }

    #[test]
    fn glued_planes_is_not_vertically_4_connected() {
        let g = glued_planes(3, 2).unwrap();
        let f = check_theorem_1_1(&g, 3);
        assert!(matches!(&f.verdict, Verdict::NotApplicable(h) if h.starts_with("vertically-4-connected")));
        assert!(f.line("glued").starts_with("glued thm1.1 NOT-APPLICABLE"));
    }

    #[test]
    fn binary_extension_of_fano() {
        let m = fixtures::fano_rank4_binary();
        let fano: Subset = (0..7).collect();
        assert_eq!(find_plane(&m, 2), Some((fano, true)));
        let a = find_representation(&m.restrict(fano), 2).unwrap().unwrap().matrix;
        let v4 = is_vertically_4_connected(&m).is_ok();
        let r = check_theorem_1_2(&m, fano, 2, &a);
        if v4 {
            assert!(r.unwrap().verdict.is_consistent());
        } else {
            assert!(matches!(r, Err(HarnessError::PreconditionFailed(_))));
        }
    }

    #[test]
    fn theorem_1_2_rejects_low_rank() {
        let m = make_pg(2, 2).unwrap();
        let line = m.flats_of_rank(2)[0];
        let a = find_representation(&m.restrict(line), 2).unwrap().unwrap().matrix;
        assert!(matches!(check_theorem_1_2(&m, line, 2, &a), Err(HarnessError::PreconditionFailed(_))));
    }

    #[test]
    fn free_point_over_fano_has_a_long_line() {
        let m = fixtures::free_extension(&make_pg(2, 2).unwrap(), "f");
        assert!(check_theorem_1_1(&m, 2).verdict != Verdict::Consistent);
        let f = check_corollary_1_3(&m, 2).unwrap();
        assert_eq!(f.details, "branch=U(2,5)-minor");
        let u = make_uniform(3, 5).unwrap();
        assert!(matches!(check_corollary_1_3(&u, 2), Err(HarnessError::PreconditionFailed(_))));
    }

    #[test]
    fn excluded_minors() {
        let u24 = make_uniform(2, 4).unwrap();
        assert!(is_excluded_minor(&u24, 2).unwrap());
        assert!(check_excluded_minor(&u24, 2).verdict.is_consistent());
        let fano = make_pg(2, 2).unwrap();
        assert!(is_excluded_minor(&fano, 3).unwrap());
        assert!(check_excluded_minor(&fano, 3).verdict.is_consistent());
        assert!(!check_excluded_minor(&fano, 2).verdict.is_consistent());
    }

    #[test]
    fn seymour_cases() {
        let k4 = make_graphic(4, &fixtures::k4_edges()).unwrap();
        assert!(seymour_check(&k4).verdict.is_consistent());
        let u36 = make_uniform(3, 6).unwrap();
        assert!(matches!(seymour_check(&u36).verdict, Verdict::NotApplicable(_)));
        assert!(seymour_check(&make_pg(2, 2).unwrap()).verdict.is_consistent());
    }

    #[test]
    fn key_lemma_on_glued_planes() {
        let g = glued_planes(3, 2).unwrap();
        let (plane, modular) = find_plane(&g, 3).unwrap();
        assert!(modular);
        assert_eq!(lambda(&g, plane), 2);
        assert!(check_key_lemma(&g, plane, 3).verdict.is_consistent());
        assert!(matches!(check_minimal_minor_connectivity(&g, plane, 3).verdict, Verdict::NotApplicable(_)));
    }

    #[test]
    fn connectivity_facts_on_small_catalog() {
        let w4 = make_graphic(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        for m in [make_pg(2, 2).unwrap(), make_graphic(4, &fixtures::k4_edges()).unwrap(), w4, make_uniform(2, 5).unwrap()] {
            for f in [
                check_bixby(&m),
                check_triangle_lemma(&m),
                check_triangle_deletion(&m),
                check_fan_lambda(&m),
                check_essential_fans(&m),
                check_tutte_connectedness(&m),
            ] {
                assert!(f.verdict.is_consistent(), "{}", f.line("catalog"));
            }
        }
        let k4 = make_graphic(4, &fixtures::k4_edges()).unwrap();
        assert!(check_linking_exhaustive(&k4).verdict.is_consistent());
        assert!(check_subjugation_duality(&make_uniform(2, 4).unwrap()).verdict.is_consistent());
    }
}
