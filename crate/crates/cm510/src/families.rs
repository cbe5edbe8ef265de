//! Canonical representatives and moduli positions for the indecomposable
//! cases.
//!
//! Each indecomposable case label carries either finitely many isomorphism
//! classes (the rigid cases `Three`, `FourSplit`, `FiveDouble` — one class
//! per label) or a family of classes indexed by a parameter. This module
//! builds a canonical representative for any requested point
//! ([`representative`]), reads off the moduli position of an arbitrary
//! module ([`invariant`]), and enumerates the full list of rigid classes
//! ([`enumerate_rigid_classes`]).
//!
//! Moduli parameters are only meaningful inside a fixed label:
//!
//! * `FourGeneric` — the square ratio `B_{i2} B_{i4} / (B_{i1} B_{i3})`
//!   (constant terms, indices sorted). For the canonical representative with
//!   parameter `beta` it equals `beta^2`; a general module can land on a
//!   negative value, which no rational `beta` hits — the number still
//!   classifies the module up to isomorphism.
//! * `FiveSingle` — `-(B_{l-2} + B_l) B_{l+4} / (B_l B_{l+6})`, which the
//!   canonical representative sends to `(1 + beta)^2`.
//! * `FiveGeneric` — a two-parameter family with no single classifying
//!   number here; pairs are compared with
//!   [`crate::iso::decide_isomorphic`] directly.

use crate::error::{Error, Result};
use crate::rank2::{
    build_m, classify_profile, odd_step, tuple_from_bsum_constants, CaseLabel, Rank2Module, ODD,
};
use crate::series::{scalar, Scalar};
use num_traits::Zero;

/// A point in the space of indecomposable isomorphism classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyPoint {
    /// Three nondivisible sums at the given odd indices (ascending).
    Three { indices: [usize; 3] },
    /// Four nondivisible sums at the given odd indices (ascending) with the
    /// two given divisible pair-sums (each pair ascending, pairs ascending).
    FourSplit {
        indices: [usize; 4],
        divisible_pairs: [(usize, usize); 2],
    },
    /// Four nondivisible sums at the given odd indices, no divisible
    /// adjacent pair; parameter `beta` outside `{-1, 0, 1}`.
    FourGeneric { indices: [usize; 4], beta: Scalar },
    /// Five nondivisible sums, divisible pair-sums at `(l, l+2)` and
    /// `(l+2, l+4)`.
    FiveDouble { l: usize },
    /// Five nondivisible sums, one divisible pair-sum at `(l, l+2)`;
    /// parameter `beta` outside `{0, -1, -2}`.
    FiveSingle { l: usize, beta: Scalar },
    /// Five nondivisible sums, no divisible adjacent pair; parameters
    /// `alpha, gamma` outside `{0, -1, -2}` with `alpha + gamma != -2`.
    FiveGeneric { alpha: Scalar, gamma: Scalar },
}

impl FamilyPoint {
    /// The case label this point is meant to land on.
    pub fn label(&self) -> CaseLabel {
        match self {
            FamilyPoint::Three { indices } => CaseLabel::Three { indices: *indices },
            FamilyPoint::FourSplit {
                indices,
                divisible_pairs,
            } => CaseLabel::FourSplit {
                indices: *indices,
                divisible_pairs: *divisible_pairs,
            },
            FamilyPoint::FourGeneric { indices, .. } => {
                CaseLabel::FourGeneric { indices: *indices }
            }
            FamilyPoint::FiveDouble { l } => CaseLabel::FiveDouble { l: *l },
            FamilyPoint::FiveSingle { l, .. } => CaseLabel::FiveSingle { l: *l },
            FamilyPoint::FiveGeneric { .. } => CaseLabel::FiveGeneric,
        }
    }
}

fn slot(i: usize) -> usize {
    assert!(i % 2 == 1 && i <= 9, "odd index expected, got {i}");
    (i - 1) / 2
}

/// Builds the canonical representative of a family point at the given
/// precision. Rejects excluded parameter values with
/// [`Error::ParameterExcluded`] and any index pattern that does not classify
/// to the intended label.
pub fn representative(point: &FamilyPoint, prec: usize) -> Result<Rank2Module> {
    let mut sums = [
        Scalar::zero(),
        Scalar::zero(),
        Scalar::zero(),
        Scalar::zero(),
        Scalar::zero(),
    ];
    match point {
        FamilyPoint::Three { indices } => {
            sums[slot(indices[0])] = scalar(1);
            sums[slot(indices[1])] = scalar(1);
            sums[slot(indices[2])] = scalar(-2);
        }
        FamilyPoint::FourSplit {
            divisible_pairs, ..
        } => {
            let (p1, q1) = divisible_pairs[0];
            let (p2, q2) = divisible_pairs[1];
            sums[slot(p1)] = scalar(1);
            sums[slot(q1)] = scalar(-1);
            sums[slot(p2)] = scalar(2);
            sums[slot(q2)] = scalar(-2);
        }
        FamilyPoint::FourGeneric { indices, beta } => {
            for excluded in [-1i64, 0, 1] {
                if *beta == scalar(excluded) {
                    return Err(Error::ParameterExcluded(format!(
                        "four-case parameter must avoid -1, 0, 1; got {beta}"
                    )));
                }
            }
            sums[slot(indices[0])] = scalar(1);
            sums[slot(indices[1])] = beta.clone();
            sums[slot(indices[2])] = scalar(-1);
            sums[slot(indices[3])] = -beta.clone();
        }
        FamilyPoint::FiveDouble { l } => {
            sums[slot(*l)] = scalar(1);
            sums[slot(odd_step(*l, 1))] = scalar(-1);
            sums[slot(odd_step(*l, 2))] = scalar(1);
            sums[slot(odd_step(*l, 3))] = scalar(1);
            sums[slot(odd_step(*l, 4))] = scalar(-2);
        }
        FamilyPoint::FiveSingle { l, beta } => {
            for excluded in [0i64, -1, -2] {
                if *beta == scalar(excluded) {
                    return Err(Error::ParameterExcluded(format!(
                        "anchored five-case parameter must avoid 0, -1, -2; got {beta}"
                    )));
                }
            }
            sums[slot(*l)] = scalar(1);
            sums[slot(odd_step(*l, 1))] = scalar(-1);
            sums[slot(odd_step(*l, 2))] = -beta.clone() - scalar(1);
            sums[slot(odd_step(*l, 3))] = scalar(1);
            sums[slot(odd_step(*l, 4))] = beta.clone();
        }
        FamilyPoint::FiveGeneric { alpha, gamma } => {
            for (name, v) in [("alpha", alpha), ("gamma", gamma)] {
                for excluded in [0i64, -1, -2] {
                    if *v == scalar(excluded) {
                        return Err(Error::ParameterExcluded(format!(
                            "generic five-case {name} must avoid 0, -1, -2; got {v}"
                        )));
                    }
                }
            }
            if alpha.clone() + gamma.clone() == scalar(-2) {
                return Err(Error::ParameterExcluded(format!(
                    "generic five-case needs alpha + gamma != -2; got {alpha} + {gamma}"
                )));
            }
            sums[0] = alpha.clone();
            sums[1] = -scalar(2) - alpha.clone() - gamma.clone();
            sums[2] = gamma.clone();
            sums[3] = scalar(1);
            sums[4] = scalar(1);
        }
    }
    let m = build_m(tuple_from_bsum_constants(&sums, prec)?)?;
    let got = classify_profile(&m.profile());
    let want = point.label();
    if got != want {
        return Err(Error::ParameterExcluded(format!(
            "point does not realize its case: wanted {want}, built {got}"
        )));
    }
    Ok(m)
}

/// Where a module sits in the classification: its case label, plus the
/// classifying number for the two one-parameter families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliPosition {
    pub case: CaseLabel,
    pub modulus: Option<Scalar>,
}

/// Reads off the moduli position of an indecomposable module. Two modules
/// are isomorphic iff their positions agree, except in the two-parameter
/// `FiveGeneric` case (modulus `None`), where pairs must be compared with
/// [`crate::iso::decide_isomorphic`].
pub fn invariant(m: &Rank2Module) -> Result<ModuliPosition> {
    let case = classify_profile(&m.profile());
    if case.is_decomposable() {
        return Err(Error::Decomposable);
    }
    let c = m.b_sums().constants();
    let at = |i: usize| c[slot(i)].clone();
    let modulus = match &case {
        CaseLabel::FourGeneric { indices } => {
            let [i1, i2, i3, i4] = *indices;
            Some(at(i2) * at(i4) / (at(i1) * at(i3)))
        }
        CaseLabel::FiveSingle { l } => {
            let l = *l;
            Some(-(at(odd_step(l, 4)) + at(l)) * at(odd_step(l, 2)) / (at(l) * at(odd_step(l, 3))))
        }
        _ => None,
    };
    Ok(ModuliPosition { case, modulus })
}

/// All 25 rigid isomorphism classes: 10 choices of three nondivisible
/// positions, 10 split four-cases (five choices of the divisible position,
/// two pairings each), and 5 anchors for the double-pair five-case.
pub fn enumerate_rigid_classes(prec: usize) -> Vec<(FamilyPoint, Rank2Module)> {
    let mut out = Vec::with_capacity(25);
    for (a, &ia) in ODD.iter().enumerate() {
        for (b, &ib) in ODD.iter().enumerate().skip(a + 1) {
            for &ic in ODD.iter().skip(b + 1) {
                let point = FamilyPoint::Three {
                    indices: [ia, ib, ic],
                };
                let m = representative(&point, prec).expect("valid rigid point");
                out.push((point, m));
            }
        }
    }
    for d in ODD {
        let arc = [
            odd_step(d, 1),
            odd_step(d, 2),
            odd_step(d, 3),
            odd_step(d, 4),
        ];
        let mut indices = arc;
        indices.sort_unstable();
        for pairing in [
            [(arc[0], arc[1]), (arc[2], arc[3])],
            [(arc[1], arc[2]), (arc[3], arc[0])],
        ] {
            let mut divisible_pairs =
                pairing.map(|(i, j)| (i.min(j), i.max(j)));
            divisible_pairs.sort_unstable();
            let point = FamilyPoint::FourSplit {
                indices,
                divisible_pairs,
            };
            let m = representative(&point, prec).expect("valid rigid point");
            out.push((point, m));
        }
    }
    for l in ODD {
        let point = FamilyPoint::FiveDouble { l };
        let m = representative(&point, prec).expect("valid rigid point");
        out.push((point, m));
    }
    out
}
