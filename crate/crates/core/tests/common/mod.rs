//! Strategies and property bodies shared by the property tests and the
//! acceptance suite.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use bundlecert::chern::{chern_of_presentation, dual_chern, total_chern};
use bundlecert::cohomology::{
    euler_characteristic, exterior_power_complex, h0_vanishing_chase, line_cohomology,
    sheaf_cohomology, Ambient, ChaseResult,
};
use bundlecert::criteria::{gaeta_shape_match, hoppe_check, normalize, HoppeResult};
use bundlecert::pipeline::{
    analyze_all, emit_report, parse_entry, render_entry, AnalysisOptions, ReportFormat, TableEntry,
};
use bundlecert::{binomial, MonadPresentation, Orientation, TwistSum};

pub type PropResult = Result<(), TestCaseError>;

pub fn twist_sum(max_rank: usize, lo: i64, hi: i64) -> impl Strategy<Value = TwistSum> {
    prop::collection::vec(lo..=hi, 0..=max_rank).prop_map(|t| TwistSum::from_twists(t).unwrap())
}

/// Cokernel presentations `0 → A → B → E → 0` with small ranks.
pub fn cokernel_presentation() -> impl Strategy<Value = MonadPresentation> {
    (twist_sum(3, -5, 2), twist_sum(6, -4, 3), 1usize..=3)
        .prop_map(|(left, right, extra)| {
            let pad = TwistSum::single(-1, (left.rank() as usize + extra) as u64).unwrap();
            MonadPresentation::cokernel(left, right.direct_sum(&pad).unwrap()).unwrap()
        })
        .prop_filter("keep exterior powers small", |p| p.right().rank() <= 9)
}

/// Cokernel presentations rebalanced to `c₁ = 0`.
pub fn balanced_presentation() -> impl Strategy<Value = MonadPresentation> {
    (
        twist_sum(3, -6, -2),
        prop::collection::vec(-3i64..=-1, 2..=6),
    )
        .prop_map(|(left, right)| {
            let mut right = TwistSum::from_twists(right).unwrap();
            while right.rank() <= left.rank() + 1 {
                right = right.direct_sum(&TwistSum::single(-1, 1).unwrap()).unwrap();
            }
            let fix = left.degree().unwrap() - right.degree().unwrap();
            let right = right
                .direct_sum(&TwistSum::single(fix, 1).unwrap())
                .unwrap();
            MonadPresentation::cokernel(left, right).unwrap()
        })
}

prop_compose! {
    pub fn table_entry()(
        m in prop::collection::vec(-2i64..=6, 0..=4),
        rank in 1usize..=6,
        offsets in prop::collection::vec(0i64..=4, 10),
        name in "[A-Za-z][A-Za-z0-9_]{0,6}",
    ) -> TableEntry {
        let ceiling = m.iter().copied().min().unwrap_or(3);
        let n: Vec<i64> = offsets
            .iter()
            .take(m.len() + rank)
            .chain(std::iter::repeat(&0))
            .take(m.len() + rank)
            .map(|o| ceiling - o)
            .collect();
        TableEntry::new(
            name,
            rank as i64,
            TwistSum::from_twists(n).unwrap(),
            TwistSum::from_twists(m).unwrap(),
        )
        .unwrap()
    }
}

pub fn power_ranks(f: &TwistSum, p: u64) -> PropResult {
    let r = f.rank();
    let multisets = if r == 0 {
        u64::from(p == 0)
    } else {
        binomial(r + p - 1, p).unwrap()
    };
    prop_assert_eq!(f.sym_power(p).unwrap().rank(), multisets);
    prop_assert_eq!(f.ext_power(p).unwrap().rank(), binomial(r, p).unwrap());
    Ok(())
}

pub fn ext_degree(f: &TwistSum, p: u64) -> PropResult {
    let r = f.rank();
    let deg = f.ext_power(p).unwrap().degree().unwrap();
    let expected = if p == 0 {
        0
    } else {
        binomial(r.saturating_sub(1), p - 1).unwrap() as i64 * f.degree().unwrap()
    };
    prop_assert_eq!(deg, if p > r { 0 } else { expected });
    Ok(())
}

pub fn top_power(f: &TwistSum) -> PropResult {
    let top = f.ext_power(f.rank()).unwrap();
    prop_assert_eq!(top, TwistSum::single(f.degree().unwrap(), 1).unwrap());
    Ok(())
}

pub fn tensor_laws(f: &TwistSum, g: &TwistSum, h: &TwistSum) -> PropResult {
    prop_assert_eq!(f.tensor(g).unwrap(), g.tensor(f).unwrap());
    prop_assert_eq!(
        f.tensor(g).unwrap().tensor(h).unwrap(),
        f.tensor(&g.tensor(h).unwrap()).unwrap()
    );
    prop_assert_eq!(&TwistSum::trivial().tensor(f).unwrap(), f);
    prop_assert_eq!(&f.dual().dual(), f);
    let fg = f.tensor(g).unwrap();
    prop_assert_eq!(fg.rank(), f.rank() * g.rank());
    prop_assert_eq!(
        fg.degree().unwrap(),
        g.rank() as i64 * f.degree().unwrap() + f.rank() as i64 * g.degree().unwrap()
    );
    Ok(())
}

pub fn whitney(f: &TwistSum, g: &TwistSum, n: usize) -> PropResult {
    let sum = total_chern(&f.direct_sum(g).unwrap(), n).unwrap();
    let product = total_chern(f, n)
        .unwrap()
        .mul(&total_chern(g, n).unwrap())
        .unwrap();
    prop_assert_eq!(sum, product);
    Ok(())
}

pub fn presentation_chern(p: &MonadPresentation, n: usize) -> PropResult {
    for q in [p.clone(), p.dual()] {
        let c = chern_of_presentation(&q, n).unwrap();
        prop_assert_eq!(
            c.mul(&total_chern(q.left(), n).unwrap()).unwrap(),
            total_chern(q.right(), n).unwrap()
        );
        prop_assert_eq!(dual_chern(&dual_chern(&c).unwrap()).unwrap(), c.clone());
        prop_assert_eq!(c.c(1), q.c1().unwrap());
    }
    Ok(())
}

pub fn serre_projective(k: i64, n: usize) -> PropResult {
    let p = Ambient::projective(n).unwrap();
    let h0 = line_cohomology(k, p).unwrap().h(0);
    let hn = line_cohomology(-k - n as i64 - 1, p).unwrap().h(n);
    prop_assert_eq!(h0, hn);
    let table = line_cohomology(k, p).unwrap();
    for i in 1..n {
        prop_assert_eq!(table.h(i), 0);
    }
    Ok(())
}

pub fn serre_quintic(k: i64) -> PropResult {
    let m = Ambient::QUINTIC;
    prop_assert_eq!(
        line_cohomology(k, m).unwrap().h(0),
        line_cohomology(-k, m).unwrap().h(3)
    );
    Ok(())
}

pub fn quintic_middle_vanishes(k: i64) -> PropResult {
    let t = line_cohomology(k, Ambient::QUINTIC).unwrap();
    prop_assert_eq!(t.h(1), 0);
    prop_assert_eq!(t.h(2), 0);
    let chi = euler_characteristic(&TwistSum::single(k, 1).unwrap(), Ambient::QUINTIC).unwrap();
    let on_p4 =
        |t: i64| euler_characteristic(&TwistSum::single(t, 1).unwrap(), Ambient::P4).unwrap();
    prop_assert_eq!(chi, on_p4(k) - on_p4(k - 5));
    Ok(())
}

pub fn wedge_complex_sums(p: &MonadPresentation, q: u64) -> PropResult {
    let r = p.rank();
    let q = 1 + (q - 1) % r;
    let c = exterior_power_complex(p, q).unwrap();
    let mut rank: i128 = 0;
    let mut deg: i128 = 0;
    for (i, t) in c.terms().iter().enumerate() {
        let s = if i % 2 == 0 { 1 } else { -1 };
        rank += s * t.rank() as i128;
        deg += s * t.degree().unwrap() as i128;
    }
    prop_assert_eq!(rank, binomial(r, q).unwrap() as i128);
    prop_assert_eq!(
        deg,
        binomial(r - 1, q - 1).unwrap() as i128 * p.c1().unwrap() as i128
    );
    Ok(())
}

pub fn euler_additivity(p: &MonadPresentation, ambient: Ambient) -> PropResult {
    let c = exterior_power_complex(p, 1).unwrap();
    let alt: i64 = c
        .terms()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let chi = euler_characteristic(t, ambient).unwrap();
            if i % 2 == 0 {
                chi
            } else {
                -chi
            }
        })
        .sum();
    let virtual_diff = euler_characteristic(p.right(), ambient).unwrap()
        - euler_characteristic(p.left(), ambient).unwrap();
    prop_assert_eq!(alt, virtual_diff);
    Ok(())
}

pub fn chase_soundness(p: &MonadPresentation, q: u64, ambient: Ambient) -> PropResult {
    let q = 1 + (q - 1) % p.rank();
    let c = exterior_power_complex(p, q).unwrap();
    let last = c.length().min(ambient.dim());
    let all_vanish =
        (0..=last).all(|i| sheaf_cohomology(&c.terms()[i], ambient).unwrap().h(i) == 0);
    match h0_vanishing_chase(&c, ambient).unwrap() {
        ChaseResult::Vanishes(cert) => {
            prop_assert!(all_vanish);
            prop_assert!(cert.verify(&c).unwrap());
        }
        ChaseResult::Inconclusive { index, value, .. } => {
            prop_assert!(!all_vanish);
            prop_assert!(value > 0);
            prop_assert_eq!(
                sheaf_cohomology(&c.terms()[index], ambient)
                    .unwrap()
                    .h(index),
                value
            );
        }
    }
    Ok(())
}

pub fn hoppe_certificates_verify(p: &MonadPresentation, ambient: Ambient) -> PropResult {
    prop_assert_eq!(p.orientation(), Orientation::CokernelOfInjection);
    if let HoppeResult::Stable { steps } = hoppe_check(p, ambient).unwrap() {
        prop_assert_eq!(steps.len() as u64, p.rank() - 1);
        for s in steps {
            let rerun = exterior_power_complex(p, s.q)
                .unwrap()
                .twist_by(s.normalization.twist)
                .unwrap();
            prop_assert_eq!(&rerun, &s.complex);
            prop_assert!(s.certificate.verify(&rerun).unwrap());
        }
    }
    Ok(())
}

pub fn normalize_idempotent(rank: u64, c1: i64) -> PropResult {
    let n = normalize(rank, c1).unwrap();
    let r = rank as i64;
    prop_assert!(-r < n.normalized_c1 && n.normalized_c1 <= 0);
    prop_assert_eq!(n.normalized_c1, c1 + n.twist * r);
    prop_assert_eq!(normalize(rank, n.normalized_c1).unwrap().twist, 0);
    Ok(())
}

pub fn gaeta_reconstructs(p: &MonadPresentation) -> PropResult {
    if let Some(shape) = gaeta_shape_match(p).unwrap() {
        prop_assert_eq!(&shape.presentation().unwrap(), p);
    }
    Ok(())
}

pub fn parse_render_roundtrip(e: &TableEntry) -> PropResult {
    let text = render_entry(e);
    prop_assert_eq!(&parse_entry(&text).unwrap(), e);
    Ok(())
}

pub fn json_byte_stable(entries: &[TableEntry]) -> PropResult {
    let render = || {
        let reports = analyze_all(
            entries,
            AnalysisOptions {
                try_all_routes: true,
            },
        )
        .unwrap();
        emit_report(&reports, ReportFormat::Json, true).unwrap()
    };
    let first = render();
    prop_assert_eq!(first, render());
    Ok(())
}
