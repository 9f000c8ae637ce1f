//! The `check` verb: one named line per property, spanning every layer —
//! datum axioms, crystal axioms and normality, series oracles, and the
//! numeric identities at seeded random points.

use satake::harmonic;
use satake::series;
use satake::xcrystal;
use satake::SphericalDatum;

struct Tally {
    passed: usize,
    failed: usize,
}

impl Tally {
    fn report(&mut self, name: &str, ok: bool, detail: String) {
        if ok {
            self.passed += 1;
            println!("ok   - {name}");
        } else {
            self.failed += 1;
            println!(
                "FAIL - {name}{}",
                if detail.is_empty() {
                    String::new()
                } else {
                    format!(": {detail}")
                }
            );
        }
    }
}

pub fn run_all(
    d: &SphericalDatum,
    bound: i64,
    grid: usize,
    q: f64,
    seed: u64,
) -> Result<bool, String> {
    let mut tally = Tally {
        passed: 0,
        failed: 0,
    };

    let report = d.validate();
    tally.report("datum-axioms", report.is_valid(), report.to_string());
    if !report.is_valid() {
        println!("{} passed, {} failed", tally.passed, tally.failed);
        return Ok(false);
    }

    let x = xcrystal::build_xcrystal(d, bound).map_err(|e| e.to_string())?;
    tally.report(
        "crystal-axioms",
        x.crystal().validate_seminormal().is_ok(),
        String::new(),
    );

    let properties = xcrystal::verify_properties(&x);
    for check in &properties.checks {
        tally.report(check.name, check.passed, check.detail.clone());
    }
    for note in &properties.notes {
        println!("note - {note}");
    }

    let normality = satake::crystal::check_normality(x.crystal());
    tally.report("normality", normality.is_normal(), format!("{normality:?}"));

    // Series layer: sym coefficients against the multiset expansion oracle.
    let sym_ok = (|| -> Result<bool, String> {
        let s = series::sym_series(&x, bound.min(6)).map_err(|e| e.to_string())?;
        let oracle = sym_oracle(&x, bound.min(6));
        for (key, value) in &oracle {
            if &s.coeff(key) != value {
                return Ok(false);
            }
        }
        Ok(s.support_len() == oracle.len())
    })()?;
    tally.report("sym-expansion-oracle", sym_ok, String::new());

    // Basic function agrees with the asymptotics at antidominant keys.
    let basic_ok = (|| -> Result<bool, String> {
        let asym = series::asymptotics_series(&x, bound).map_err(|e| e.to_string())?;
        let basic = series::basic_function(&x, bound).map_err(|e| e.to_string())?;
        Ok(basic.iter().all(|(k, v)| &asym.coeff(k) == v))
    })()?;
    tally.report("basic-function-restriction", basic_ok, String::new());

    // Numeric layer.
    let summary = harmonic::quadrature_norm(&x, bound, grid, q).map_err(|e| e.to_string())?;
    tally.report(
        "quadrature-parseval",
        summary.grid_ok && summary.difference <= 1e-9,
        format!("difference {}", summary.difference),
    );

    let rank = d.root_datum.rank;
    let asym = series::asymptotics_series(&x, bound).map_err(|e| e.to_string())?;
    // Self-calibrated tail: measure the coefficient mass just above the
    // bound and extrapolate geometrically. When the mass does not decay
    // (a zero-twist boundary factor), the closed form has unit-circle
    // poles and the pointwise comparison is skipped.
    match tail_estimate(&x, d, bound, q).map_err(|e| e.to_string())? {
        None => println!("skip - integrand-truncation (non-decaying series tail)"),
        Some(tail) => {
            let mut pointwise_ok = true;
            let mut worst: f64 = 0.0;
            for chi in harmonic::seeded_points(rank, q, 20, seed) {
                match harmonic::plancherel_integrand(&x, &chi) {
                    Ok(exact) => {
                        let fn_abs = harmonic::evaluate_series(&asym, &chi).norm();
                        let gap = (exact - fn_abs * fn_abs).abs();
                        worst = worst.max(gap);
                        // |F|² − |F_N|² is bounded by tail·(2|F_N| + tail).
                        let allowance = tail * (2.0 * fn_abs + tail) * 1.5 + 1e-9;
                        if gap > allowance {
                            pointwise_ok = false;
                        }
                    }
                    Err(_) => continue, // a sampled pole; measure-zero event
                }
            }
            tally.report(
                "integrand-truncation",
                pointwise_ok,
                format!("worst gap {worst:.3e}, tail estimate {tail:.3e}"),
            );
        }
    }

    if d.frobenius.is_some() {
        let fr_ok = (|| -> Result<bool, String> {
            let trace = series::frobenius_trace(&x, bound).map_err(|e| e.to_string())?;
            let fixed = trace.support().all(|(k, _)| d.frobenius_fixes(k));
            Ok(fixed)
        })()?;
        tally.report("frobenius-trace-support", fr_ok, String::new());
    }

    println!("{} passed, {} failed", tally.passed, tally.failed);
    Ok(tally.failed == 0)
}

/// ℓ¹ coefficient mass of the series tail above `bound`, estimated from the
/// window `(bound, bound + 6]` with geometric extrapolation. `None` when the
/// per-level mass does not visibly decay.
fn tail_estimate(
    x: &xcrystal::XCrystal,
    d: &SphericalDatum,
    bound: i64,
    q: f64,
) -> Result<Option<f64>, satake::series::SeriesError> {
    use satake::Rational64;
    let window = 6i64;
    let extended = series::asymptotics_series(x, bound + window)?;
    // Mass per unit grading interval in the window.
    let mut levels = vec![0.0f64; window as usize];
    for (key, value) in extended.support() {
        let g = d.grading_value(key);
        if g <= Rational64::from_integer(bound) {
            continue;
        }
        let slot = ((g - Rational64::from_integer(bound)).to_integer()).clamp(0, window - 1);
        let mass: f64 = value
            .terms()
            .map(|(e, c)| {
                let exp = *e.numer() as f64 / *e.denom() as f64;
                (c as f64).abs() * q.powf(exp)
            })
            .sum();
        levels[slot as usize] += mass;
    }
    let head: f64 = levels.iter().sum();
    // Per-level masses fluctuate when generator lengths exceed one, so the
    // decay is read off three-level blocks.
    let first: f64 = levels[..3].iter().sum();
    let second: f64 = levels[3..].iter().sum();
    if second <= 0.0 {
        return Ok(Some(head));
    }
    let block_ratio = if first > 0.0 { second / first } else { 1.0 };
    if block_ratio >= 0.9 {
        return Ok(None);
    }
    Ok(Some(head + second * block_ratio / (1.0 - block_ratio)))
}

/// Brute-force sym coefficients by enumerating multisets of plus elements.
fn sym_oracle(
    x: &xcrystal::XCrystal,
    bound: i64,
) -> std::collections::BTreeMap<satake::Coweight, series::QLaurent> {
    use satake::Rational64;
    let d = x.datum();
    let factors = x.plus_weights();
    let mut table = std::collections::BTreeMap::new();
    let zero = satake::Coweight::zero(d.root_datum.rank);
    let mut stack: Vec<(usize, satake::Coweight, Rational64)> =
        vec![(0, zero, Rational64::from_integer(0))];
    while let Some((from, wsum, esum)) = stack.pop() {
        if from == factors.len() {
            table
                .entry(wsum)
                .or_insert_with(series::QLaurent::zero)
                .add_term(-esum, 1);
            continue;
        }
        let (w, c) = &factors[from];
        let mut k = 0i64;
        loop {
            let acc = wsum.add(&w.scale(k));
            if d.grading_value(&acc) > Rational64::from_integer(bound) {
                break;
            }
            stack.push((from + 1, acc, esum + Rational64::from_integer(k) * c));
            k += 1;
        }
    }
    table.retain(|_, v: &mut series::QLaurent| !v.is_zero());
    table
}
