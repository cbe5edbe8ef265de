//! Seeded random generation of modules, labels, and rims.
//!
//! Everything here drives randomized cross-checks: tuples whose shape is
//! stratified over all case labels (decomposable ones included), pairs of
//! modules sharing a label (with isomorphic partners planted half the
//! time), and pairs with deliberately different labels. All draws go
//! through a caller-supplied [`rand::Rng`], so fixing the seed fixes the
//! data.
//!
//! Coefficient tuples are always exact: constants realize the requested
//! sum pattern, higher orders are random with the last coefficient chosen
//! to keep the total sum identically zero.

use crate::error::Result;
use crate::quiver::Rim;
use crate::rank2::{build_m, classify_profile, odd_step, CaseLabel, CoeffTuple, Rank2Module, ODD};
use crate::series::{PowerSeries, Scalar};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

/// The six indecomposable case shapes, without their label data.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CaseKind {
    Three,
    FourSplit,
    FourGeneric,
    FiveDouble,
    FiveSingle,
    FiveGeneric,
}

pub const INDECOMPOSABLE_KINDS: [CaseKind; 6] = [
    CaseKind::Three,
    CaseKind::FourSplit,
    CaseKind::FourGeneric,
    CaseKind::FiveDouble,
    CaseKind::FiveSingle,
    CaseKind::FiveGeneric,
];

impl CaseKind {
    pub fn matches(&self, label: &CaseLabel) -> bool {
        matches!(
            (self, label),
            (CaseKind::Three, CaseLabel::Three { .. })
                | (CaseKind::FourSplit, CaseLabel::FourSplit { .. })
                | (CaseKind::FourGeneric, CaseLabel::FourGeneric { .. })
                | (CaseKind::FiveDouble, CaseLabel::FiveDouble { .. })
                | (CaseKind::FiveSingle, CaseLabel::FiveSingle { .. })
                | (CaseKind::FiveGeneric, CaseLabel::FiveGeneric)
        )
    }
}

/// A small random rational with numerator in `-9..=9` and denominator in
/// `{1, 2, 3}`.
pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=3);
    Scalar::new(num.into(), den.into())
}

pub fn random_nonzero_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let s = random_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A coefficient tuple whose sums `B_i` have the given constant terms: the
/// odd coefficients get random constants, the even ones complete each sum,
/// and every higher order is random with an exact zero-sum correction on
/// the last coefficient.
pub fn tuple_with_sums(rng: &mut impl Rng, sums: &[Scalar; 5], prec: usize) -> CoeffTuple {
    let mut coeffs: Vec<Vec<Scalar>> = (0..10).map(|_| Vec::with_capacity(prec)).collect();
    for (pair, sum) in sums.iter().enumerate() {
        let r = random_scalar(rng);
        coeffs[2 * pair].push(r.clone());
        coeffs[2 * pair + 1].push(sum.clone() - r);
    }
    for _order in 1..prec {
        let mut total = Scalar::zero();
        for c in coeffs.iter_mut().take(9) {
            let r = random_scalar(rng);
            total += r.clone();
            c.push(r);
        }
        coeffs[9].push(-total);
    }
    let b = coeffs
        .into_iter()
        .map(PowerSeries::from_coeffs)
        .collect::<Vec<_>>();
    CoeffTuple::new(b).expect("constructed sums are exactly zero-sum")
}

fn place(sums: &mut [Scalar; 5], i: usize, v: Scalar) {
    sums[(i - 1) / 2] = v;
}

/// Random sum constants realizing the given label's pattern. The values are
/// random; the divisibility pattern is the label's. Callers re-classify and
/// redraw on accidental extra vanishings.
fn sums_for_label(rng: &mut impl Rng, label: &CaseLabel) -> [Scalar; 5] {
    let mut sums = [
        Scalar::zero(),
        Scalar::zero(),
        Scalar::zero(),
        Scalar::zero(),
        Scalar::zero(),
    ];
    match label {
        CaseLabel::Three { indices } => {
            let r1 = random_nonzero_scalar(rng);
            let r2 = random_nonzero_scalar(rng);
            place(&mut sums, indices[0], r1.clone());
            place(&mut sums, indices[1], r2.clone());
            place(&mut sums, indices[2], -r1 - r2);
        }
        CaseLabel::FourSplit {
            divisible_pairs, ..
        } => {
            let r1 = random_nonzero_scalar(rng);
            let r2 = random_nonzero_scalar(rng);
            place(&mut sums, divisible_pairs[0].0, r1.clone());
            place(&mut sums, divisible_pairs[0].1, -r1);
            place(&mut sums, divisible_pairs[1].0, r2.clone());
            place(&mut sums, divisible_pairs[1].1, -r2);
        }
        CaseLabel::FourGeneric { indices } => {
            let r1 = random_nonzero_scalar(rng);
            let r2 = random_nonzero_scalar(rng);
            let r3 = random_nonzero_scalar(rng);
            place(&mut sums, indices[0], r1.clone());
            place(&mut sums, indices[1], r2.clone());
            place(&mut sums, indices[2], r3.clone());
            place(&mut sums, indices[3], -r1 - r2 - r3);
        }
        CaseLabel::FiveDouble { l } => {
            let r = random_nonzero_scalar(rng);
            let s = random_scalar(rng);
            place(&mut sums, *l, r.clone());
            place(&mut sums, odd_step(*l, 1), -r.clone());
            place(&mut sums, odd_step(*l, 2), r.clone());
            place(&mut sums, odd_step(*l, 3), s.clone());
            place(&mut sums, odd_step(*l, 4), -r - s);
        }
        CaseLabel::FiveSingle { l } => {
            let r = random_nonzero_scalar(rng);
            let s = random_nonzero_scalar(rng);
            let u = random_nonzero_scalar(rng);
            place(&mut sums, *l, r.clone());
            place(&mut sums, odd_step(*l, 1), -r);
            place(&mut sums, odd_step(*l, 2), s.clone());
            place(&mut sums, odd_step(*l, 3), u.clone());
            place(&mut sums, odd_step(*l, 4), -s - u);
        }
        CaseLabel::FiveGeneric => {
            let mut total = Scalar::zero();
            for s in sums.iter_mut().take(4) {
                let r = random_nonzero_scalar(rng);
                total += r.clone();
                *s = r;
            }
            sums[4] = -total;
        }
        CaseLabel::TrivialSum | CaseLabel::DecomposableOther => {
            unreachable!("decomposable labels are generated directly")
        }
    }
    sums
}

/// A uniformly random label of the given kind.
pub fn random_label(rng: &mut impl Rng, kind: CaseKind) -> CaseLabel {
    match kind {
        CaseKind::Three => {
            let mut odd = ODD;
            odd.shuffle(rng);
            let mut indices = [odd[0], odd[1], odd[2]];
            indices.sort_unstable();
            CaseLabel::Three { indices }
        }
        CaseKind::FourSplit => {
            let d = ODD[rng.gen_range(0..5)];
            let arc = [
                odd_step(d, 1),
                odd_step(d, 2),
                odd_step(d, 3),
                odd_step(d, 4),
            ];
            let mut indices = arc;
            indices.sort_unstable();
            let pairing = if rng.gen_bool(0.5) {
                [(arc[0], arc[1]), (arc[2], arc[3])]
            } else {
                [(arc[1], arc[2]), (arc[3], arc[0])]
            };
            let mut divisible_pairs = pairing.map(|(i, j)| (i.min(j), i.max(j)));
            divisible_pairs.sort_unstable();
            CaseLabel::FourSplit {
                indices,
                divisible_pairs,
            }
        }
        CaseKind::FourGeneric => {
            let skip = rng.gen_range(0..5);
            let mut indices = [0usize; 4];
            let mut w = 0;
            for (i, &o) in ODD.iter().enumerate() {
                if i != skip {
                    indices[w] = o;
                    w += 1;
                }
            }
            CaseLabel::FourGeneric { indices }
        }
        CaseKind::FiveDouble => CaseLabel::FiveDouble {
            l: ODD[rng.gen_range(0..5)],
        },
        CaseKind::FiveSingle => CaseLabel::FiveSingle {
            l: ODD[rng.gen_range(0..5)],
        },
        CaseKind::FiveGeneric => CaseLabel::FiveGeneric,
    }
}

/// A random module carrying exactly the given label (values random,
/// divisibility pattern the label's; accidental extra vanishings are
/// redrawn).
pub fn random_module_with_label(
    rng: &mut impl Rng,
    label: &CaseLabel,
    prec: usize,
) -> Result<Rank2Module> {
    for _ in 0..200 {
        let sums = sums_for_label(rng, label);
        let m = build_m(tuple_with_sums(rng, &sums, prec))?;
        if classify_profile(&m.profile()) == *label {
            return Ok(m);
        }
    }
    unreachable!("label patterns succeed with probability near 1 per draw")
}

/// A random module of the given kind, with a uniformly random label.
pub fn random_module_of_kind(
    rng: &mut impl Rng,
    kind: CaseKind,
    prec: usize,
) -> Result<Rank2Module> {
    let label = random_label(rng, kind);
    random_module_with_label(rng, &label, prec)
}

/// A pair of modules sharing one random label of the given kind. Half the
/// time the partner is an isomorphic plant (the same sums scaled by a
/// random unit, re-split with fresh noise); otherwise it is an independent
/// draw with the same label.
pub fn same_label_pair(
    rng: &mut impl Rng,
    kind: CaseKind,
    prec: usize,
) -> Result<(Rank2Module, Rank2Module)> {
    let label = random_label(rng, kind);
    let a = random_module_with_label(rng, &label, prec)?;
    let b = if rng.gen_bool(0.5) {
        let u = random_nonzero_scalar(rng);
        let sums = a.b_sums().constants().map(|s| s * u.clone());
        let m = build_m(tuple_with_sums(rng, &sums, prec))?;
        debug_assert_eq!(classify_profile(&m.profile()), label);
        m
    } else {
        random_module_with_label(rng, &label, prec)?
    };
    Ok((a, b))
}

/// A pair of indecomposable modules with different labels.
pub fn different_label_pair(
    rng: &mut impl Rng,
    prec: usize,
) -> Result<(Rank2Module, Rank2Module)> {
    let ka = INDECOMPOSABLE_KINDS[rng.gen_range(0..6)];
    let la = random_label(rng, ka);
    let lb = loop {
        let kb = INDECOMPOSABLE_KINDS[rng.gen_range(0..6)];
        let lb = random_label(rng, kb);
        if lb != la {
            break lb;
        }
    };
    Ok((
        random_module_with_label(rng, &la, prec)?,
        random_module_with_label(rng, &lb, prec)?,
    ))
}

/// A random coefficient tuple stratified over all shapes: the two
/// decomposable ones (exact zero, divisible-but-nonzero, two crossing
/// positions, alternating four) and the six indecomposable kinds.
pub fn stratified_tuple(rng: &mut impl Rng, prec: usize) -> Result<CoeffTuple> {
    let zero = [
        Scalar::zero(),
        Scalar::zero(),
        Scalar::zero(),
        Scalar::zero(),
        Scalar::zero(),
    ];
    match rng.gen_range(0..10u32) {
        // literal zero tuple: the direct sum on the nose
        0 => Ok(CoeffTuple::new(vec![PowerSeries::zero(prec); 10])?),
        // divisible sums, nonzero data
        1 => Ok(tuple_with_sums(rng, &zero, prec)),
        // two crossing positions
        2 => {
            let mut sums = zero;
            let mut odd = ODD;
            odd.shuffle(rng);
            let r = random_nonzero_scalar(rng);
            place(&mut sums, odd[0], r.clone());
            place(&mut sums, odd[1], -r);
            Ok(tuple_with_sums(rng, &sums, prec))
        }
        // four nondivisible, both alternating pairings divisible
        3 => {
            let mut sums = zero;
            let d = ODD[rng.gen_range(0..5)];
            let r = random_nonzero_scalar(rng);
            for step in 1..=4 {
                let v = if step % 2 == 1 { r.clone() } else { -r.clone() };
                place(&mut sums, odd_step(d, step), v);
            }
            Ok(tuple_with_sums(rng, &sums, prec))
        }
        v => {
            let kind = INDECOMPOSABLE_KINDS[(v as usize - 4) % 6];
            Ok(random_module_of_kind(rng, kind, prec)?.tuple().clone())
        }
    }
}

/// A uniformly random 5-element rim in `Z/10`.
pub fn random_rim(rng: &mut impl Rng) -> Rim {
    let mut all: Vec<usize> = (1..=10).collect();
    all.shuffle(rng);
    Rim::new(10, all.into_iter().take(5)).expect("5-subsets are valid rims")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::check_relations;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    #[test]
    fn seeded_draws_are_deterministic() {
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            assert_eq!(
                stratified_tuple(&mut r1, 4).unwrap(),
                stratified_tuple(&mut r2, 4).unwrap()
            );
        }
    }

    #[test]
    fn stratified_tuples_build_valid_modules() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let tuple = stratified_tuple(&mut rng, 4).unwrap();
            let m = build_m(tuple).unwrap();
            let report = check_relations(m.edge_maps());
            assert!(report.ok(), "{report}");
        }
    }

    #[test]
    fn stratified_tuples_cover_all_labels() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut seen = BTreeSet::new();
        for _ in 0..400 {
            let m = build_m(stratified_tuple(&mut rng, 3).unwrap()).unwrap();
            seen.insert(classify_profile(&m.profile()).name());
        }
        let want: BTreeSet<&str> = [
            "TrivialSum",
            "DecomposableOther",
            "Three",
            "FourSplit",
            "FourGeneric",
            "FiveDouble",
            "FiveSingle",
            "FiveGeneric",
        ]
        .into();
        assert_eq!(seen, want);
    }

    #[test]
    fn same_label_pairs_share_their_label() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for kind in INDECOMPOSABLE_KINDS {
            for _ in 0..6 {
                let (a, b) = same_label_pair(&mut rng, kind, 4).unwrap();
                let la = classify_profile(&a.profile());
                let lb = classify_profile(&b.profile());
                assert_eq!(la, lb);
                assert!(kind.matches(&la), "{kind:?} vs {la}");
            }
        }
    }

    #[test]
    fn different_label_pairs_differ() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..20 {
            let (a, b) = different_label_pair(&mut rng, 4).unwrap();
            assert_ne!(
                classify_profile(&a.profile()),
                classify_profile(&b.profile())
            );
        }
    }

    #[test]
    fn random_rims_are_valid_and_varied() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut seen = BTreeSet::new();
        for _ in 0..30 {
            let rim = random_rim(&mut rng);
            assert_eq!(rim.k(), 5);
            seen.insert(format!("{rim}"));
        }
        assert!(seen.len() > 5, "draws vary: {}", seen.len());
    }
}
