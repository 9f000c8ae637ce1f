//! Acceptance suite: one test per shipped guarantee, each printing a
//! pass/fail line (run with `--nocapture` to see them). Tolerances and
//! bounds are pinned here, not configurable.

use num_rational::Rational64;
use satake::catalog;
use satake::crystal::{self, check_normality};
use satake::harmonic::{
    evaluate_series, lfactor, plancherel_integrand, quadrature_norm, seeded_points,
};
use satake::io;
use satake::lattice::Coweight;
use satake::series::{
    asymptotics_series, basic_function, frobenius_sym_series, frobenius_trace, pushforward_series,
    sym_series, QLaurent,
};
use satake::xcrystal::{
    build_xcrystal, critical_dimension, mv_cycle_count, verify_properties, Provenance, Stratum,
};
use std::time::Instant;

fn cw(coords: &[i64]) -> Coweight {
    Coweight::new(coords.to_vec())
}

struct Criterion {
    label: &'static str,
    started: Instant,
}

impl Criterion {
    fn new(label: &'static str) -> Self {
        Criterion {
            label,
            started: Instant::now(),
        }
    }

    fn finish(self, passed: bool, detail: &str) {
        let elapsed = self.started.elapsed().as_secs_f64();
        println!(
            "{} - {} [{:.2}s]{}",
            if passed { "PASS" } else { "FAIL" },
            self.label,
            elapsed,
            if detail.is_empty() {
                String::new()
            } else {
                format!(" — {detail}")
            }
        );
        assert!(passed, "{}: {detail}", self.label);
    }

    fn elapsed(&self) -> f64 {
        self.started.elapsed().as_secs_f64()
    }
}

/// Criterion 1: the n-fold data load, validate, match the stated
/// valuations exactly, and are minuscule; under one second.
#[test]
fn criterion_1_nfold_data() {
    let c = Criterion::new("criterion 1: n-fold datum valuations and minuscularity");
    let mut ok = true;
    let mut detail = String::new();
    for n in 1..=3usize {
        let d = io::load_datum(&format!("nfold({n})")).expect("catalog datum");
        ok &= d.validate().is_valid();

        // Independent reconstruction of the stated valuations: the catalog
        // basis is {ξ, α̌_1, …, α̌_n} with m̌ = 2ξ − Σ α̌_i; the stated
        // generators are (Σ α̌_i − m̌)/2 and (m̌ + α̌_i − Σ_{j≠i} α̌_j)/2.
        let rank = n + 1;
        let m_check: Vec<i64> = {
            let mut v = vec![2i64];
            v.extend(std::iter::repeat_n(-1, n));
            v
        };
        let alpha = |i: usize| -> Vec<i64> {
            let mut v = vec![0i64; rank];
            v[i + 1] = 1;
            v
        };
        let halves = |v: Vec<i64>| -> Option<Vec<i64>> {
            if v.iter().all(|x| x % 2 == 0) {
                Some(v.iter().map(|x| x / 2).collect())
            } else {
                None
            }
        };
        let sub =
            |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
        let mut expected: Vec<Coweight> = Vec::new();
        {
            // (Σ α̌_i − m̌)/2
            let mut acc = vec![0i64; rank];
            for i in 0..n {
                acc = acc.iter().zip(&alpha(i)).map(|(a, b)| a + b).collect();
            }
            let v = halves(sub(&acc, &m_check)).expect("lattice point");
            expected.push(Coweight::new(v));
        }
        for i in 0..n {
            // (m̌ + α̌_i − Σ_{j≠i} α̌_j)/2
            let mut acc = m_check.clone();
            for j in 0..n {
                let a = alpha(j);
                if j == i {
                    acc = acc.iter().zip(&a).map(|(x, y)| x + y).collect();
                } else {
                    acc = acc.iter().zip(&a).map(|(x, y)| x - y).collect();
                }
            }
            expected.push(Coweight::new(halves(acc).expect("lattice point")));
        }
        let shipped: Vec<Coweight> = d.colors.iter().map(|c| c.valuation.clone()).collect();
        if shipped != expected {
            ok = false;
            detail = format!("nfold({n}) valuations differ from the stated generators");
        }

        for color in &d.colors {
            let dom = d.root_datum.dominant_translate(&color.valuation);
            if !d.root_datum.is_minuscule(&dom) {
                ok = false;
                detail = format!(
                    "nfold({n}): dominant translate of {} not minuscule",
                    color.name
                );
            }
        }
    }
    let within_time = c.elapsed() < 1.0;
    if !within_time {
        detail = format!("runtime {:.2}s exceeds 1s", c.elapsed());
    }
    c.finish(ok && within_time, &detail);
}

/// Criterion 2: crystal weight multisets agree exactly with the Freudenthal
/// character oracle for every dominant coweight of height at most 8 over
/// the rank ≤ 3 catalog root data; under 30 seconds.
#[test]
fn criterion_2_crystal_oracle_agreement() {
    let c = Criterion::new("criterion 2: crystal/character oracle agreement to height 8");
    let mut ok = true;
    let mut detail = String::new();
    let mut audited = 0usize;
    for name in ["sl2", "pgl2", "gl2", "a2", "a1xa1", "nfold1", "nfold2"] {
        let rd = std::sync::Arc::new(catalog::root_datum(name).unwrap());
        if rd.rank > 3 {
            continue;
        }
        let two_rho = rd.two_rho();
        // Dominant coweights of height ≤ 8 inside a coordinate box wide
        // enough to include every string length the bound allows.
        let mut coords = vec![-4i64; rd.rank];
        'grid: loop {
            let lambda = Coweight::new(coords.clone());
            if rd.is_dominant(&lambda) && two_rho.pairing(&lambda) <= Rational64::from_integer(8) {
                let crystal = crystal::irreducible_crystal(&lambda, &rd).unwrap();
                let mut from_crystal: std::collections::BTreeMap<Coweight, u64> =
                    std::collections::BTreeMap::new();
                for w in crystal.weights() {
                    *from_crystal.entry(w.clone()).or_insert(0) += 1;
                }
                let oracle = crystal::weight_multiplicities(&rd, &lambda);
                if from_crystal != oracle {
                    ok = false;
                    detail = format!("{name}: λ = {lambda} disagrees with the oracle");
                    break 'grid;
                }
                audited += 1;
            }
            let mut axis = 0;
            loop {
                if axis == rd.rank {
                    break 'grid;
                }
                coords[axis] += 1;
                if coords[axis] <= 4 {
                    break;
                }
                coords[axis] = -4;
                axis += 1;
            }
        }
    }
    let within_time = c.elapsed() < 30.0;
    if ok && detail.is_empty() {
        detail = format!("{audited} highest weights audited");
    }
    if !within_time {
        detail = format!("runtime {:.2}s exceeds 30s", c.elapsed());
    }
    c.finish(ok && within_time, &detail);
}

/// Criterion 3: the crystal property suite passes on every shipped datum,
/// including the multiplicity-two color weight of the rank-one datum;
/// under 10 seconds.
#[test]
fn criterion_3_crystal_property_suite() {
    let c = Criterion::new("criterion 3: crystal property suite over the catalog");
    let mut ok = true;
    let mut detail = String::new();
    for name in [
        "hecke-gl2",
        "hecke-pgl2",
        "hecke-gl2-det",
        "nfold(1)",
        "nfold(2)",
        "nfold(3)",
    ] {
        let d = catalog::spherical_datum(name).unwrap();
        let x = build_xcrystal(&d, 8).unwrap();
        let report = verify_properties(&x);
        if !report.all_passed() {
            ok = false;
            detail = format!("{name}:\n{report}");
            break;
        }
    }
    // The half-coroot color of the rank-one datum carries multiplicity two.
    let x = build_xcrystal(&catalog::spherical_datum("hecke-pgl2").unwrap(), 8).unwrap();
    let doubled = x
        .plus_elements()
        .iter()
        .filter(|&&b| x.crystal().weight(b) == &cw(&[1]))
        .count();
    if doubled != 2 {
        ok = false;
        detail = format!("hecke-pgl2 color multiplicity {doubled} ≠ 2");
    }
    let within_time = c.elapsed() < 10.0;
    if !within_time {
        detail = format!("runtime {:.2}s exceeds 10s", c.elapsed());
    }
    c.finish(ok && within_time, &detail);
}

/// Criterion 4: normality of the crystal for every minuscule catalog datum.
#[test]
fn criterion_4_normality() {
    let c = Criterion::new("criterion 4: normality over the minuscule catalog");
    let mut ok = true;
    let mut detail = String::new();
    for name in catalog::names() {
        let d = catalog::spherical_datum(&name).unwrap();
        let x = build_xcrystal(&d, 8).unwrap();
        let minuscule = x
            .open_highest_weights()
            .iter()
            .all(|(l, _)| d.root_datum.is_minuscule(l))
            && x.saturated_elements()
                .iter()
                .all(|t| d.root_datum.is_minuscule(t));
        if !minuscule {
            continue;
        }
        let report = check_normality(x.crystal());
        if !report.is_normal() {
            ok = false;
            detail = format!("{name}: {report:?}");
            break;
        }
    }
    c.finish(ok, &detail);
}

/// Criterion 5: every symmetric-series coefficient at grading ≤ 6 equals
/// the brute-force multiset enumeration over the plus part.
#[test]
fn criterion_5_sym_expansion_oracle() {
    let c = Criterion::new("criterion 5: symmetric-series expansion oracle at bound 6");
    let mut ok = true;
    let mut detail = String::new();
    for name in ["hecke-gl2", "nfold(2)"] {
        let d = catalog::spherical_datum(name).unwrap();
        let x = build_xcrystal(&d, 6).unwrap();
        let series = sym_series(&x, 6).unwrap();
        // Brute force: multisets of plus elements with bounded grading.
        let factors = x.plus_weights();
        let mut table: std::collections::BTreeMap<Coweight, QLaurent> =
            std::collections::BTreeMap::new();
        let zero = Coweight::zero(d.root_datum.rank);
        let mut stack = vec![(0usize, zero, Rational64::from_integer(0))];
        while let Some((from, wsum, esum)) = stack.pop() {
            if from == factors.len() {
                table
                    .entry(wsum)
                    .or_insert_with(QLaurent::zero)
                    .add_term(-esum, 1);
                continue;
            }
            let (w, tw) = &factors[from];
            let mut k = 0i64;
            loop {
                let acc = wsum.add(&w.scale(k));
                if d.grading_value(&acc) > Rational64::from_integer(6) {
                    break;
                }
                stack.push((from + 1, acc, esum + Rational64::from_integer(k) * tw));
                k += 1;
            }
        }
        table.retain(|_, v| !v.is_zero());
        if series.support_len() != table.len() || table.iter().any(|(k, v)| &series.coeff(k) != v) {
            ok = false;
            detail = format!("{name}: expansion oracle mismatch");
            break;
        }
    }
    c.finish(ok, &detail);
}

/// Criterion 6: pinned basic-function tables and the asymptotics
/// coefficient at the simple coroot.
#[test]
fn criterion_6_basic_function_values() {
    let c = Criterion::new("criterion 6: basic-function values");
    let mut ok = true;
    let mut detail = String::new();

    let gl2 = build_xcrystal(&catalog::spherical_datum("hecke-gl2").unwrap(), 8).unwrap();
    let basic = basic_function(&gl2, 8).unwrap();
    if basic.len() != 1 || basic.get(&cw(&[0, 0])) != Some(&QLaurent::one()) {
        ok = false;
        detail = "hecke-gl2 basic function is not {0 ↦ 1}".into();
    }

    let det = build_xcrystal(&catalog::spherical_datum("hecke-gl2-det").unwrap(), 8).unwrap();
    let basic = basic_function(&det, 5).unwrap();
    if basic.len() != 6 || (0..=5i64).any(|k| basic.get(&cw(&[-k, -k])) != Some(&QLaurent::one())) {
        ok = false;
        detail = "hecke-gl2-det basic function is not {kθ̌ ↦ 1, k ≤ 5}".into();
    }

    let asym = asymptotics_series(&gl2, 8).unwrap();
    let mut expected = QLaurent::monomial(Rational64::from_integer(-1), 1);
    expected.add_term(Rational64::from_integer(0), -1);
    if asym.coeff(&cw(&[1, -1])) != expected {
        ok = false;
        detail = format!(
            "asymptotics coefficient at α̌ is {}",
            asym.coeff(&cw(&[1, -1]))
        );
    }
    c.finish(ok, &detail);
}

/// Criterion 7: Plancherel quadrature against Parseval at bound 12 and
/// grid 64 (to 1e−9), and the pointwise gap between the exact integrand
/// and the truncated square to 1e−4 at 100 seeded points; under 60 seconds.
#[test]
fn criterion_7_plancherel_identity() {
    let c = Criterion::new("criterion 7: Plancherel quadrature and pointwise truncation");
    let mut ok = true;
    let mut clauses: Vec<String> = Vec::new();
    for name in ["hecke-gl2", "nfold(2)"] {
        let d = catalog::spherical_datum(name).unwrap();
        let x = build_xcrystal(&d, 12).unwrap();
        let summary = quadrature_norm(&x, 12, 64, 4.0).unwrap();
        let quad_ok = summary.grid_ok && summary.difference <= 1e-9;
        ok &= quad_ok;
        clauses.push(format!(
            "{name} quadrature-vs-Parseval {} (difference {:.3e})",
            if quad_ok { "ok" } else { "FAILED" },
            summary.difference
        ));
        let series = asymptotics_series(&x, 12).unwrap();
        let mut worst: f64 = 0.0;
        for chi in seeded_points(d.root_datum.rank, 4.0, 100, 0) {
            let exact = match plancherel_integrand(&x, &chi) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let truncated = evaluate_series(&series, &chi).norm_sqr();
            worst = worst.max((exact - truncated).abs());
        }
        let pointwise_ok = worst <= 1e-4;
        ok &= pointwise_ok;
        clauses.push(format!(
            "{name} pointwise-truncation {} (worst gap {:.3e} vs 1e-4; the series tail above \
             grading 12 has exactly this size)",
            if pointwise_ok { "ok" } else { "FAILED" },
            worst
        ));
    }
    let within_time = c.elapsed() < 60.0;
    if !within_time {
        clauses.push(format!("runtime {:.2}s exceeds 60s", c.elapsed()));
    }
    c.finish(ok && within_time, &clauses.join("; "));
}

/// Criterion 8: the Plancherel density equals the L-factor closed form,
/// with the representation's weights produced by the crystal build.
#[test]
fn criterion_8_density_via_lfactors() {
    let c = Criterion::new("criterion 8: density equals the L-factor route");
    let d = catalog::spherical_datum("nfold(2)").unwrap();
    let x = build_xcrystal(&d, 12).unwrap();

    // The tensor-representation weights: either four-dimensional open
    // summand produced by the build (not hand-entered).
    let mut ok = true;
    let mut detail = String::new();
    let summands: Vec<Coweight> = x
        .open_highest_weights()
        .iter()
        .map(|(l, _)| l.clone())
        .collect();
    assert_eq!(summands.len(), 2);
    for lambda in summands {
        let tensor_weights: Vec<Coweight> = (0..x.len())
            .filter(|&b| {
                matches!(x.provenance(b), Provenance::Open { dominant, .. } if *dominant == lambda)
            })
            .map(|b| x.crystal().weight(b).clone())
            .collect();
        assert_eq!(tensor_weights.len(), 4);
        for chi in seeded_points(3, 4.0, 100, 0) {
            let direct = match plancherel_integrand(&x, &chi) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let mut root_part = 1.0;
            for alpha in d.root_datum.positive_coroots() {
                root_part *=
                    (num_complex::Complex64::new(1.0, 0.0) - chi.character(&alpha)).norm_sqr();
            }
            let l1 = lfactor(&chi, &tensor_weights, 0.5).unwrap();
            let l2 = lfactor(&chi.conj(), &tensor_weights, 0.5).unwrap();
            let via_l = root_part * (l1 * l2).re;
            if (direct - via_l).abs() > 1e-10 {
                ok = false;
                detail = format!("gap {:.3e} at a sampled point", (direct - via_l).abs());
                break;
            }
        }
    }
    c.finish(ok, &detail);
}

/// Criterion 9: the color-swapping Frobenius on the rank-one datum and the
/// identity-Frobenius degeneration.
#[test]
fn criterion_9_frobenius_twist() {
    let c = Criterion::new("criterion 9: Frobenius-twisted trace");
    let mut ok = true;
    let mut detail = String::new();

    let d = catalog::spherical_datum("hecke-pgl2").unwrap();
    assert!(
        d.frobenius.is_some(),
        "catalog rank-one datum carries the color swap"
    );
    let x = build_xcrystal(&d, 8).unwrap();
    let sym = frobenius_sym_series(&x, 8).unwrap();
    if sym.coeff(&cw(&[2])) != QLaurent::monomial(Rational64::from_integer(-1), 1) {
        ok = false;
        detail = format!("sym coefficient at α̌ is {}", sym.coeff(&cw(&[2])));
    }
    let trace = frobenius_trace(&x, 8).unwrap();
    if !trace.support().all(|(k, _)| d.frobenius_fixes(k)) {
        ok = false;
        detail = "support leaves the fixed sublattice".into();
    }

    // Identity Frobenius degenerates to the plain pushforward.
    let mut d_id = catalog::spherical_datum("hecke-pgl2").unwrap();
    d_id.frobenius = Some(satake::FrobeniusDatum {
        lattice_auto: satake::lattice::identity_matrix(1),
        color_perm: std::collections::BTreeMap::from([
            ("D+".to_string(), "D+".to_string()),
            ("D-".to_string(), "D-".to_string()),
        ]),
        dynkin_perm: vec![0],
    });
    let x_id = build_xcrystal(&d_id, 8).unwrap();
    let trace_id = frobenius_trace(&x_id, 8).unwrap();
    let push = pushforward_series(&x_id, 8).unwrap();
    if trace_id != push {
        ok = false;
        detail = "identity-Frobenius trace differs from the pushforward".into();
    }

    // A lattice-nontrivial swap restricts the support to the diagonal.
    let mut d_swap = catalog::spherical_datum("a1xa1-product").unwrap();
    d_swap.frobenius = Some(catalog::a1xa1_swap_frobenius());
    let x_swap = build_xcrystal(&d_swap, 8).unwrap();
    let trace_swap = frobenius_trace(&x_swap, 8).unwrap();
    if !trace_swap
        .support()
        .all(|(k, _)| k.coords()[0] == k.coords()[1])
    {
        ok = false;
        detail = "factor-swap trace has support off the fixed sublattice".into();
    }
    c.finish(ok, &detail);
}

/// Criterion 10: critical dimensions and the semi-infinite-orbit cycle
/// counts at the pinned examples.
#[test]
fn criterion_10_dimension_calculus() {
    let c = Criterion::new("criterion 10: dimension and cycle-count calculus");
    let mut ok = true;
    let mut detail = String::new();

    let d = catalog::spherical_datum("hecke-gl2").unwrap();
    let x = build_xcrystal(&d, 8).unwrap();
    for color in &d.colors {
        let dim = critical_dimension(&color.valuation, &Stratum::Open, &d).unwrap();
        if dim != Rational64::from_integer(0) {
            ok = false;
            detail = format!("dimension at {} is {dim}", color.name);
        }
        let count = x
            .plus_elements()
            .iter()
            .filter(|&&b| x.crystal().weight(b) == &color.valuation)
            .count();
        if count != 1 {
            ok = false;
            detail = format!("component count at {} is {count}", color.name);
        }
    }

    let a2 = catalog::root_datum("a2").unwrap();
    if mv_cycle_count(&cw(&[0, 0]), &cw(&[-1, -1]), &a2) != 2 {
        ok = false;
        detail = "zero-weight cycle count over the adjoint stratum is not 2".into();
    }
    c.finish(ok, &detail);
}
