//! Isomorphism decisions and explicit witnesses for rank-2 modules.
//!
//! Two indecomposable rank-2 modules are compared in three stages:
//!
//! 1. **Invariant data.** The case label ([`crate::rank2::classify_profile`])
//!    collects which sums `B_i` are divisible by `t` and which sums of
//!    cyclically consecutive nondivisible positions are. That data is an
//!    isomorphism invariant; labels that differ settle the question.
//!    (Divisibility of other pairwise sums is *not* invariant — modules can
//!    be isomorphic while disagreeing there — which is why labels, not full
//!    divisibility tables, are compared.)
//! 2. **Balance criteria.** Within a matching label, rigid cases are done;
//!    the three module families are decided by polynomial identities on the
//!    constant terms of the sums (see [`IsoReason`]).
//! 3. **Witness.** When the criteria say "isomorphic", [`construct_witness`]
//!    produces the ten vertex maps of an explicit isomorphism, and
//!    [`verify_witness`] replays every commutation relation to check it.
//!
//! The witness construction works in a rotated frame. Writing
//! `phi_0 = [[1, 0], [t g, d]]` and pushing it around the cycle with
//! `phi_e = x^target phi_{e-1} adj(x^source) / t`, each odd/even edge pair
//! `i` updates the corners linearly (`alpha += C_i g`, `delta -= B_i g`) and
//! demands one divisibility: `t | C_i delta_{i-1} - B_i alpha_i`. Closure
//! around the cycle is automatic (the changes telescope against the exact
//! zero-sum of the `B_i`), so only those five conditions matter. Two of
//! them — at the frame pair, where the units line up — pin `(g, d)` by a
//! 2x2 rational solve; the remaining three vanish exactly when the case's
//! balance criterion holds.

use crate::error::{Error, Result};
use crate::matrix::SeriesMatrix;
use crate::rank2::{classify_profile, indecomposability_pair, odd_step, CaseLabel, Rank2Module};
use crate::series::{PowerSeries, Scalar};
use num_traits::Zero;
use std::fmt;

/// Why a pair of modules was declared isomorphic or not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoReason {
    /// The invariant divisibility data (case labels) differ.
    ProfileMismatch,
    /// Labels match in a rigid case (`Three`, `FourSplit`, `FiveDouble`).
    RigidCase,
    /// Four nondivisible sums: the alternating products
    /// `B_{i1} C_{i2} B_{i3} C_{i4}` and `C_{i1} B_{i2} C_{i3} B_{i4}`
    /// agree modulo `t`.
    ProductBalance { holds: bool },
    /// Five nondivisible sums with one divisible adjacent pair at `l`:
    /// `(B_{l-2}+B_l) C_l B_{l+4} C_{l+6}` agrees with the same expression
    /// with the roles of `B` and `C` swapped, modulo `t`.
    AnchoredBalance { holds: bool },
    /// Five nondivisible sums, no divisible adjacent pair: two alternating
    /// balances, `C_1 B_3 (C_5+C_7) B_9 = B_1 C_3 (B_5+B_7) C_9` and
    /// `C_1 B_3 C_5 (B_7+B_9) = B_1 C_3 B_5 (C_7+C_9)`, both modulo `t`.
    TwinBalance { first: bool, second: bool },
}

impl IsoReason {
    pub fn isomorphic(&self) -> bool {
        match self {
            IsoReason::ProfileMismatch => false,
            IsoReason::RigidCase => true,
            IsoReason::ProductBalance { holds } | IsoReason::AnchoredBalance { holds } => *holds,
            IsoReason::TwinBalance { first, second } => *first && *second,
        }
    }
}

impl fmt::Display for IsoReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn hf(b: bool) -> &'static str {
            if b {
                "holds"
            } else {
                "fails"
            }
        }
        match self {
            IsoReason::ProfileMismatch => write!(f, "profile-mismatch"),
            IsoReason::RigidCase => write!(f, "rigid case match"),
            IsoReason::ProductBalance { holds } => write!(f, "product balance {}", hf(*holds)),
            IsoReason::AnchoredBalance { holds } => write!(f, "anchored balance {}", hf(*holds)),
            IsoReason::TwinBalance { first, second } => {
                write!(f, "twin balance: first {}, second {}", hf(*first), hf(*second))
            }
        }
    }
}

/// Outcome of [`decide_isomorphic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoDecision {
    pub isomorphic: bool,
    /// The shared case label (both modules' label when they match, the first
    /// module's otherwise).
    pub case: CaseLabel,
    pub reason: IsoReason,
}

/// Decides whether two indecomposable rank-2 modules are isomorphic, from
/// their sum constants alone. Errors with [`Error::Decomposable`] if either
/// module fails the indecomposability criterion.
pub fn decide_isomorphic(a: &Rank2Module, b: &Rank2Module) -> Result<IsoDecision> {
    let ca = classify_profile(&a.profile());
    let cb = classify_profile(&b.profile());
    if ca.is_decomposable() || cb.is_decomposable() {
        return Err(Error::Decomposable);
    }
    if ca != cb {
        return Ok(IsoDecision {
            isomorphic: false,
            case: ca,
            reason: IsoReason::ProfileMismatch,
        });
    }

    let bs = a.b_sums().constants();
    let cs = b.b_sums().constants();
    let at = |v: &[Scalar; 5], i: usize| -> Scalar { v[(i - 1) / 2].clone() };
    let reason = match &ca {
        CaseLabel::Three { .. } | CaseLabel::FourSplit { .. } | CaseLabel::FiveDouble { .. } => {
            IsoReason::RigidCase
        }
        CaseLabel::FourGeneric { indices } => {
            let [i1, i2, i3, i4] = *indices;
            let lhs = at(&bs, i1) * at(&cs, i2) * at(&bs, i3) * at(&cs, i4);
            let rhs = at(&cs, i1) * at(&bs, i2) * at(&cs, i3) * at(&bs, i4);
            IsoReason::ProductBalance { holds: lhs == rhs }
        }
        CaseLabel::FiveSingle { l } => {
            let l = *l;
            let lm2 = odd_step(l, 4);
            let lp4 = odd_step(l, 2);
            let lp6 = odd_step(l, 3);
            let lhs = (at(&bs, lm2) + at(&bs, l)) * at(&cs, l) * at(&bs, lp4) * at(&cs, lp6);
            let rhs = (at(&cs, lm2) + at(&cs, l)) * at(&bs, l) * at(&cs, lp4) * at(&bs, lp6);
            IsoReason::AnchoredBalance { holds: lhs == rhs }
        }
        CaseLabel::FiveGeneric => {
            let first = at(&cs, 1) * at(&bs, 3) * (at(&cs, 5) + at(&cs, 7)) * at(&bs, 9)
                == at(&bs, 1) * at(&cs, 3) * (at(&bs, 5) + at(&bs, 7)) * at(&cs, 9);
            let second = at(&cs, 1) * at(&bs, 3) * at(&cs, 5) * (at(&bs, 7) + at(&bs, 9))
                == at(&bs, 1) * at(&cs, 3) * at(&bs, 5) * (at(&cs, 7) + at(&cs, 9));
            IsoReason::TwinBalance { first, second }
        }
        CaseLabel::TrivialSum | CaseLabel::DecomposableOther => {
            unreachable!("decomposable labels were rejected above")
        }
    };
    Ok(IsoDecision {
        isomorphic: reason.isomorphic(),
        case: ca,
        reason,
    })
}

/// Each edge propagation divides by `t` once, spending one top coefficient
/// of working precision; ten edges need ten guard orders.
const PROPAGATION_GUARD: usize = 10;

/// Constructs an explicit isomorphism from `a` to `b`: ten 2x2 vertex maps
/// `w[v]` (at the modules' precision) with `w[i mod 10] x_i^a = x_i^b w[i-1]`
/// for every edge and unit determinant. Errors if the pair is decomposable,
/// not isomorphic, or of mismatched precision.
///
/// The construction lifts both coefficient tuples by [`PROPAGATION_GUARD`]
/// orders (exact, the tuples are polynomial data), rotates the frame pair to
/// the front, solves a 2x2 rational system for the two free entries of the
/// seed map, propagates it around the cycle, and rotates back. The result is
/// re-verified with [`verify_witness`] before being returned.
pub fn construct_witness(a: &Rank2Module, b: &Rank2Module) -> Result<Vec<SeriesMatrix>> {
    if a.prec() != b.prec() {
        return Err(Error::Incompatible(format!(
            "witness construction needs equal precisions, got {} and {}",
            a.prec(),
            b.prec()
        )));
    }
    let decision = decide_isomorphic(a, b)?;
    if !decision.isomorphic {
        return Err(Error::NotIsomorphic(decision.reason.to_string()));
    }
    let prec = a.prec();
    let internal = prec + PROPAGATION_GUARD;

    // frame: a pair of nondivisible positions with nondivisible sum and only
    // divisible positions strictly between; it exists for every
    // indecomposable label and depends only on the label
    let (p, q) = indecomposability_pair(&a.profile()).ok_or_else(|| {
        Error::Internal("indecomposable module without a frame pair".to_string())
    })?;
    let shift = p - 1; // even, so rotation preserves edge parities
    let ra = a.lift(internal).rotate_even(shift);
    let rb = b.lift(internal).rotate_even(shift);
    let q_rot = (q + 10 - shift - 1) % 10 + 1;
    let j2 = q_rot.div_ceil(2);
    debug_assert!((2..=5).contains(&j2), "rotated frame lands at j2 in 2..=5");

    // constants of the rotated sums and their partial sums
    let bs = ra.b_sums().constants();
    let cs = rb.b_sums().constants();
    let mut xbar = vec![Scalar::zero()];
    let mut ybar = vec![Scalar::zero()];
    for i in 0..5 {
        xbar.push(xbar[i].clone() + bs[i].clone());
        ybar.push(ybar[i].clone() + cs[i].clone());
    }

    // pivot conditions i = 1 and i = j2, linear in (g, d):
    //   -(C_i Xbar_{i-1} + B_i Ybar_i) g + C_i d = B_i
    let row = |i: usize| {
        let b = bs[i - 1].clone();
        let c = cs[i - 1].clone();
        (
            -(c.clone() * xbar[i - 1].clone() + b.clone() * ybar[i].clone()),
            c,
            b,
        )
    };
    let (a1, b1, r1) = row(1);
    let (a2, b2, r2) = row(j2);
    let det = a1.clone() * b2.clone() - a2.clone() * b1.clone();
    if det.is_zero() {
        return Err(Error::Internal(
            "frame pivot system is singular; frame conditions violated".to_string(),
        ));
    }
    let g = (r1.clone() * b2 - r2.clone() * b1) / det.clone();
    let d = (a1 * r2 - a2 * r1) / det;

    // seed map and propagation around the cycle
    let one = PowerSeries::one(internal);
    let zero = PowerSeries::zero(internal);
    let tg = PowerSeries::constant(g, internal).mul_by_t();
    let dd = PowerSeries::constant(d, internal);
    let seed = SeriesMatrix::from_rows(vec![vec![one, zero], vec![tg, dd]]);
    let mut per_vertex = vec![seed.clone()];
    let mut phi = seed;
    for e in 1..=10 {
        let numer = rb.x(e).mul(&phi).mul(&ra.x(e).adjugate2());
        phi = numer.div_by_t().map_err(|_| {
            Error::Internal(format!(
                "propagation condition failed at edge {e}; balance reduction is broken"
            ))
        })?;
        if e < 10 {
            per_vertex.push(phi.clone());
        }
    }
    if phi.truncate(prec) != per_vertex[0].truncate(prec) {
        return Err(Error::Internal(
            "witness failed to close around the cycle".to_string(),
        ));
    }

    // undo the rotation: rotated vertex j is original vertex j + shift
    let mut witness = vec![SeriesMatrix::zero(2, 2, prec); 10];
    for (j, m) in per_vertex.into_iter().enumerate() {
        witness[(j + shift) % 10] = m.truncate(prec);
    }
    verify_witness(a, b, &witness)?;
    Ok(witness)
}

/// Checks a claimed isomorphism witness from `a` to `b`: for every edge `i`,
/// `w[i mod 10] x_i^a = x_i^b w[i-1]` and `w[i-1] y_i^a = y_i^b w[i mod 10]`
/// must hold exactly at the modules' precision, and the determinant of
/// `w[0]` must be a unit. On failure the error lists every violated
/// relation.
pub fn verify_witness(a: &Rank2Module, b: &Rank2Module, witness: &[SeriesMatrix]) -> Result<()> {
    if a.prec() != b.prec() {
        return Err(Error::Incompatible(format!(
            "witness verification needs equal precisions, got {} and {}",
            a.prec(),
            b.prec()
        )));
    }
    let prec = a.prec();
    if witness.len() != 10 {
        return Err(Error::WitnessInvalid(format!(
            "expected 10 vertex maps, got {}",
            witness.len()
        )));
    }
    for (v, m) in witness.iter().enumerate() {
        if m.rows() != 2 || m.cols() != 2 || m.prec() != prec {
            return Err(Error::WitnessInvalid(format!(
                "vertex {v}: map must be 2x2 at precision {prec}"
            )));
        }
    }
    let mut issues = Vec::new();
    for e in 1..=10 {
        let head = e % 10;
        let tail = e - 1;
        if witness[head].mul(a.x(e)) != b.x(e).mul(&witness[tail]) {
            issues.push(format!("edge {e}: x-commutation fails"));
        }
        if witness[tail].mul(a.y(e)) != b.y(e).mul(&witness[head]) {
            issues.push(format!("edge {e}: y-commutation fails"));
        }
    }
    if witness[0].det().constant_term().is_zero() {
        issues.push("vertex 0: determinant is not a unit".to_string());
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(Error::WitnessInvalid(issues.join("; ")))
    }
}
