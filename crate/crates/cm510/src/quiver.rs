//! Rims, rank-1 modules, and relation checks on the circular quiver.
//!
//! The circular quiver on n vertices `0..n-1` has an arrow `x_i` from vertex
//! `i-1` to vertex `i` and an arrow `y_i` back, for every edge `i` in `1..=n`
//! (edge n closes the circle into vertex 0). The boundary algebra imposes
//! `x_i y_i = y_i x_i = t` and, at every vertex, equality of the length-k
//! x-path with the length-(n-k) y-path.
//!
//! Provided here:
//! * [`Rim`] — a k-element subset of `{1..n}`, the combinatorial datum of a
//!   rank-1 module,
//! * [`build_rank1`] — the module `L_I`: every vertex carries `Z`, edge `i`
//!   acts by `(x_i, y_i) = (1, t)` for `i` in `I` and `(t, 1)` otherwise,
//! * [`interlacing`] — the cyclic alternation count of two rims,
//! * [`EdgeMaps2`] and [`direct_sum`] — rank-2 edge maps, direct sums of two
//!   rank-1 modules,
//! * [`check_relations`] / [`check_relations_rank1`] — verifies all boundary
//!   algebra relations, reporting each failing edge or vertex,
//! * [`canonical_hom_exponents`] — the minimal exponents `p_v` such that
//!   multiplication by `t^{p_v}` is a module map `L_I -> L_J`.

use crate::error::{Error, Result};
use crate::matrix::SeriesMatrix;
use crate::series::PowerSeries;
use std::collections::BTreeSet;
use std::fmt;

/// A k-element subset of `{1, ..., n}`, drawn as the set of down-steps of a
/// lattice path ("rim"). Requires `1 <= k <= n-1` so both path relations of
/// the boundary algebra are nonempty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Rim {
    n: usize,
    elements: BTreeSet<usize>,
}

impl Rim {
    pub fn new(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRim(format!("n must be at least 2, got {n}")));
        }
        let mut set = BTreeSet::new();
        for e in elements {
            if !(1..=n).contains(&e) {
                return Err(Error::InvalidRim(format!(
                    "element {e} out of range 1..={n}"
                )));
            }
            if !set.insert(e) {
                return Err(Error::InvalidRim(format!("repeated element {e}")));
            }
        }
        if set.is_empty() || set.len() == n {
            return Err(Error::InvalidRim(format!(
                "need a proper nonempty subset of 1..={n}, got {} elements",
                set.len()
            )));
        }
        Ok(Rim { n, elements: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elements.contains(&i)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements.iter().copied().collect()
    }

    /// The complementary rim.
    pub fn complement(&self) -> Rim {
        let elements: BTreeSet<usize> = (1..=self.n)
            .filter(|i| !self.elements.contains(i))
            .collect();
        Rim {
            n: self.n,
            elements,
        }
    }
}

impl fmt::Display for Rim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}} in Z/{}", items.join(","), self.n)
    }
}

/// The rank-1 module `L_I`: every vertex carries one copy of the ground ring,
/// and edge `i` acts by `x_i = 1, y_i = t` when `i` is in the rim, `x_i = t,
/// y_i = 1` otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rank1Module {
    rim: Rim,
    prec: usize,
    x: Vec<PowerSeries>,
    y: Vec<PowerSeries>,
}

impl Rank1Module {
    pub fn rim(&self) -> &Rim {
        &self.rim
    }

    pub fn n(&self) -> usize {
        self.rim.n()
    }

    pub fn k(&self) -> usize {
        self.rim.k()
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// Action of `x_i`, `i` in `1..=n`.
    pub fn x(&self, i: usize) -> &PowerSeries {
        &self.x[i - 1]
    }

    /// Action of `y_i`, `i` in `1..=n`.
    pub fn y(&self, i: usize) -> &PowerSeries {
        &self.y[i - 1]
    }

    /// The edge maps as 1x1 matrices, for the generic solvers.
    pub fn edge_matrices(&self) -> (Vec<SeriesMatrix>, Vec<SeriesMatrix>) {
        let x = self
            .x
            .iter()
            .map(|s| SeriesMatrix::from_scalar_series(s.clone()))
            .collect();
        let y = self
            .y
            .iter()
            .map(|s| SeriesMatrix::from_scalar_series(s.clone()))
            .collect();
        (x, y)
    }
}

/// Builds `L_I` at the given precision (at least 2, so that `t` is visible).
pub fn build_rank1(rim: &Rim, prec: usize) -> Rank1Module {
    assert!(prec >= 2, "rank-1 modules need precision at least 2");
    let one = PowerSeries::one(prec);
    let t = PowerSeries::t(prec);
    let mut x = Vec::with_capacity(rim.n());
    let mut y = Vec::with_capacity(rim.n());
    for i in 1..=rim.n() {
        if rim.contains(i) {
            x.push(one.clone());
            y.push(t.clone());
        } else {
            x.push(t.clone());
            y.push(one.clone());
        }
    }
    Rank1Module {
        rim: rim.clone(),
        prec,
        x,
        y,
    }
}

/// The interlacing number of two rims: the largest r such that elements of
/// `I \ J` and `J \ I` alternate r times around the cycle, together with
/// whether the pair is tightly r-interlacing (`|I ∩ J| = k - r`; by
/// convention a pair with r = 0 is not tight).
pub fn interlacing(i: &Rim, j: &Rim) -> Result<(usize, bool)> {
    if i.n() != j.n() || i.k() != j.k() {
        return Err(Error::Incompatible(format!(
            "interlacing needs rims of the same (n, k): ({}, {}) vs ({}, {})",
            i.n(),
            i.k(),
            j.n(),
            j.k()
        )));
    }
    // Merge I\J and J\I in cyclic order; r is the number of maximal blocks of
    // either label, i.e. half the number of label changes around the cycle.
    let mut merged: Vec<(usize, bool)> = Vec::new();
    for e in 1..=i.n() {
        match (i.contains(e), j.contains(e)) {
            (true, false) => merged.push((e, true)),
            (false, true) => merged.push((e, false)),
            _ => {}
        }
    }
    let has_i = merged.iter().any(|&(_, l)| l);
    let has_j = merged.iter().any(|&(_, l)| !l);
    let r = if !(has_i && has_j) {
        0
    } else {
        let m = merged.len();
        let changes = (0..m)
            .filter(|&idx| merged[idx].1 != merged[(idx + 1) % m].1)
            .count();
        changes / 2
    };
    let intersection = i.elements().filter(|&e| j.contains(e)).count();
    let tight = r > 0 && intersection == i.k() - r;
    Ok((r, tight))
}

/// Edge maps of a module with two copies of the ground ring at every vertex:
/// 2x2 matrices `x_i, y_i` for each edge, plus the ambient `(n, k)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeMaps2 {
    n: usize,
    k: usize,
    x: Vec<SeriesMatrix>,
    y: Vec<SeriesMatrix>,
}

impl EdgeMaps2 {
    pub fn new(n: usize, k: usize, x: Vec<SeriesMatrix>, y: Vec<SeriesMatrix>) -> Self {
        assert!(x.len() == n && y.len() == n, "need one map pair per edge");
        let prec = x[0].prec();
        for m in x.iter().chain(&y) {
            assert_eq!((m.rows(), m.cols()), (2, 2), "edge maps must be 2x2");
            assert_eq!(m.prec(), prec, "edge maps must share a precision");
        }
        EdgeMaps2 { n, k, x, y }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn prec(&self) -> usize {
        self.x[0].prec()
    }

    /// Action of `x_i`, `i` in `1..=n`.
    pub fn x(&self, i: usize) -> &SeriesMatrix {
        &self.x[i - 1]
    }

    /// Action of `y_i`, `i` in `1..=n`.
    pub fn y(&self, i: usize) -> &SeriesMatrix {
        &self.y[i - 1]
    }

    pub fn x_maps(&self) -> &[SeriesMatrix] {
        &self.x
    }

    pub fn y_maps(&self) -> &[SeriesMatrix] {
        &self.y
    }

    pub fn truncate(&self, new_prec: usize) -> Self {
        EdgeMaps2 {
            n: self.n,
            k: self.k,
            x: self.x.iter().map(|m| m.truncate(new_prec)).collect(),
            y: self.y.iter().map(|m| m.truncate(new_prec)).collect(),
        }
    }
}

/// Direct sum of two rank-1 modules as block-diagonal 2x2 edge maps, `a` in
/// the top-left corner. Requires equal `(n, k)` and precision.
pub fn direct_sum(a: &Rank1Module, b: &Rank1Module) -> Result<EdgeMaps2> {
    if a.n() != b.n() || a.k() != b.k() || a.prec() != b.prec() {
        return Err(Error::Incompatible(format!(
            "direct sum needs equal (n, k, prec): ({}, {}, {}) vs ({}, {}, {})",
            a.n(),
            a.k(),
            a.prec(),
            b.n(),
            b.k(),
            b.prec()
        )));
    }
    let prec = a.prec();
    let zero = PowerSeries::zero(prec);
    let block = |p: &PowerSeries, q: &PowerSeries| {
        SeriesMatrix::from_rows(vec![
            vec![p.clone(), zero.clone()],
            vec![zero.clone(), q.clone()],
        ])
    };
    let x = (1..=a.n()).map(|i| block(a.x(i), b.x(i))).collect();
    let y = (1..=a.n()).map(|i| block(a.y(i), b.y(i))).collect();
    Ok(EdgeMaps2::new(a.n(), a.k(), x, y))
}

/// One failed boundary-algebra relation, located at an edge or vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RelationFailure {
    /// `x_i y_i != t` on vertex `i`.
    XyNotT { edge: usize },
    /// `y_i x_i != t` on vertex `i-1`.
    YxNotT { edge: usize },
    /// `y_{v+1} x_{v+1} != x_v y_v` at vertex `v`.
    Commutation { vertex: usize },
    /// the length-k x-path and length-(n-k) y-path from vertex `v` differ.
    PathsDiffer { vertex: usize },
}

impl fmt::Display for RelationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationFailure::XyNotT { edge } => write!(f, "x_{edge} y_{edge} != t"),
            RelationFailure::YxNotT { edge } => write!(f, "y_{edge} x_{edge} != t"),
            RelationFailure::Commutation { vertex } => {
                write!(f, "xy != yx at vertex {vertex}")
            }
            RelationFailure::PathsDiffer { vertex } => {
                write!(f, "x-path != y-path from vertex {vertex}")
            }
        }
    }
}

/// Result of checking all relations; empty failure list means the maps define
/// a module over the boundary algebra (to the working precision).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationReport {
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "all relations hold")
        } else {
            let items: Vec<String> = self.failures.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", items.join("; "))
        }
    }
}

fn check_relations_maps(n: usize, k: usize, x: &[SeriesMatrix], y: &[SeriesMatrix]) -> RelationReport {
    let dim = x[0].rows();
    let prec = x[0].prec();
    let t_id = SeriesMatrix::t_identity(dim, prec);
    let id = SeriesMatrix::identity(dim, prec);
    let mut failures = Vec::new();

    for e in 1..=n {
        if x[e - 1].mul(&y[e - 1]) != t_id {
            failures.push(RelationFailure::XyNotT { edge: e });
        }
        if y[e - 1].mul(&x[e - 1]) != t_id {
            failures.push(RelationFailure::YxNotT { edge: e });
        }
    }

    // xy = yx at vertex v compares the forward loop through edge v+1 with the
    // backward loop through edge v (edge 0 means edge n).
    for v in 0..n {
        let fwd = y[v % n].mul(&x[v % n]); // edge v+1, 0-based slot v
        let back_edge = if v == 0 { n } else { v };
        let back = x[back_edge - 1].mul(&y[back_edge - 1]);
        if fwd != back {
            failures.push(RelationFailure::Commutation { vertex: v });
        }
    }

    // x^k = y^(n-k) from every vertex; both composites end at vertex v+k.
    for v in 0..n {
        let mut xp = id.clone();
        for step in 0..k {
            xp = x[(v + step) % n].mul(&xp);
        }
        let mut yp = id.clone();
        for step in 0..(n - k) {
            // the y-step leaving vertex v-step uses edge v-step (1-based)
            let slot = (v + n - step + n - 1) % n;
            yp = y[slot].mul(&yp);
        }
        if xp != yp {
            failures.push(RelationFailure::PathsDiffer { vertex: v });
        }
    }

    RelationReport { failures }
}

/// Checks all boundary-algebra relations on 2x2 edge maps.
pub fn check_relations(m: &EdgeMaps2) -> RelationReport {
    check_relations_maps(m.n(), m.k(), &m.x, &m.y)
}

/// Checks all boundary-algebra relations on a rank-1 module.
pub fn check_relations_rank1(m: &Rank1Module) -> RelationReport {
    let (x, y) = m.edge_matrices();
    check_relations_maps(m.n(), m.k(), &x, &y)
}

/// The canonical homomorphism `L_I -> L_J` is multiplication by `t^{p_v}` at
/// vertex `v`; commuting with the edge maps forces
/// `p_{i mod n} = p_{i-1} + [i in I] - [i in J]`, which determines `p` up to a
/// constant. This returns the unique nonnegative solution with `min p = 0`,
/// indexed by vertex `0..n-1`.
pub fn canonical_hom_exponents(i: &Rim, j: &Rim) -> Result<Vec<usize>> {
    if i.n() != j.n() || i.k() != j.k() {
        return Err(Error::Incompatible(format!(
            "canonical hom needs rims of the same (n, k): ({}, {}) vs ({}, {})",
            i.n(),
            i.k(),
            j.n(),
            j.k()
        )));
    }
    let n = i.n();
    let mut s = vec![0i64; n];
    for e in 1..n {
        let delta = i64::from(i.contains(e)) - i64::from(j.contains(e));
        s[e] = s[e - 1] + delta;
    }
    let min = *s.iter().min().expect("nonempty");
    Ok(s.iter().map(|v| (v - min) as usize).collect())
}
