//! The crystal attached to a spherical datum, assembled from its conjectural
//! closed form: one irreducible summand for every dominant Weyl translate of
//! a color valuation (with multiplicity two exactly when the weight is half
//! a coroot), plus a lowest-weight summand and its dual for every element of
//! the saturated antidominant set. The elements with weight inside the
//! monoid form the plus part; the duality involution carries it onto the
//! minus part.

use crate::crystal::{
    self, irreducible_crystal, lowest_weight_crystal, twisted_isomorphism, Crystal, CrystalError,
};
use crate::lattice::{apply_matrix, Coweight, RootDatum};
use crate::spherical::SphericalDatum;
use num_rational::Rational64;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum XCrystalError {
    #[error("datum failed validation: {0}")]
    InvalidDatum(String),
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error("{0} is not in the monoid of the datum")]
    NotInMonoid(Coweight),
    #[error("{weight} is not a weight of the boundary module of lowest weight {theta}")]
    NotABoundaryWeight { weight: Coweight, theta: Coweight },
    #[error("no Frobenius datum present")]
    MissingFrobenius,
    #[error("Frobenius action refused: {0}")]
    FrobeniusUnsupported(String),
}

/// Where an element of the crystal comes from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    /// Weight of a summand `V^λ` with `λ` a dominant Weyl translate of a
    /// color valuation; `copy` distinguishes multiplicity-two summands.
    Open { dominant: Coweight, copy: usize },
    /// Weight of the boundary summand attached to `θ̌` (or `−θ̌` for the
    /// dual side) of the saturated set.
    Boundary { theta: Coweight },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Plus,
    Minus,
    /// Weight neither in `𝔠_X ∖ 0` nor in `−(𝔠_X ∖ 0)`; only possible when
    /// the conjectural closed form fails for the datum.
    Unassigned,
}

/// The stratum against which a critical dimension is computed.
#[derive(Clone, Debug, PartialEq)]
pub enum Stratum {
    Open,
    Boundary(Coweight),
}

#[derive(Clone, Debug)]
pub struct XCrystal {
    datum: Arc<SphericalDatum>,
    crystal: Crystal,
    part: Vec<Part>,
    provenance: Vec<Provenance>,
    /// `q`-exponent `c` of each element in the graded series: `1/2` on the
    /// open part, `⟨𝔥+2ρ, θ̌⟩/2` on the boundary summand of `θ̌`.
    twist: Vec<Rational64>,
    /// The duality involution on element ids.
    duality: Vec<usize>,
    /// Dominant Weyl translates of color valuations, with multiplicities.
    open_highest: Vec<(Coweight, usize)>,
    saturated: Vec<Coweight>,
    truncation_warning: bool,
}

impl XCrystal {
    pub fn datum(&self) -> &SphericalDatum {
        &self.datum
    }

    pub fn crystal(&self) -> &Crystal {
        &self.crystal
    }

    pub fn len(&self) -> usize {
        self.crystal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crystal.is_empty()
    }

    pub fn part(&self, b: usize) -> Part {
        self.part[b]
    }

    pub fn provenance(&self, b: usize) -> &Provenance {
        &self.provenance[b]
    }

    pub fn twist(&self, b: usize) -> Rational64 {
        self.twist[b]
    }

    pub fn duality(&self, b: usize) -> usize {
        self.duality[b]
    }

    pub fn plus_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| self.part[b] == Part::Plus)
            .collect()
    }

    pub fn minus_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| self.part[b] == Part::Minus)
            .collect()
    }

    /// The plus-part weights with their twists, in id order; the data the
    /// graded series are built from.
    pub fn plus_weights(&self) -> Vec<(Coweight, Rational64)> {
        self.plus_elements()
            .into_iter()
            .map(|b| (self.crystal.weight(b).clone(), self.twist[b]))
            .collect()
    }

    pub fn open_highest_weights(&self) -> &[(Coweight, usize)] {
        &self.open_highest
    }

    pub fn saturated_elements(&self) -> &[Coweight] {
        &self.saturated
    }

    pub fn truncation_warning(&self) -> bool {
        self.truncation_warning
    }

    #[doc(hidden)]
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts_unchecked(
        datum: Arc<SphericalDatum>,
        crystal: Crystal,
        part: Vec<Part>,
        provenance: Vec<Provenance>,
        twist: Vec<Rational64>,
        duality: Vec<usize>,
        open_highest: Vec<(Coweight, usize)>,
        saturated: Vec<Coweight>,
    ) -> Self {
        XCrystal {
            datum,
            crystal,
            part,
            provenance,
            twist,
            duality,
            open_highest,
            saturated,
            truncation_warning: false,
        }
    }
}

/// Dominant Weyl translates of the color valuations, each with its summand
/// multiplicity (two exactly for half-coroot weights).
pub fn open_highest_weights(d: &SphericalDatum) -> Vec<(Coweight, usize)> {
    let rd = &d.root_datum;
    let set: BTreeSet<Coweight> = d
        .colors
        .iter()
        .map(|c| rd.dominant_translate(&c.valuation))
        .collect();
    set.into_iter()
        .map(|lambda| {
            let copies = if rd.is_half_coroot(&lambda) { 2 } else { 1 };
            (lambda, copies)
        })
        .collect()
}

pub fn build_xcrystal(d: &SphericalDatum, sat_bound: i64) -> Result<XCrystal, XCrystalError> {
    let report = d.validate();
    if !report.is_valid() {
        return Err(XCrystalError::InvalidDatum(report.to_string()));
    }
    let datum = Arc::new(d.clone());
    let rd = Arc::new(d.root_datum.clone());
    let indices: Vec<usize> = (0..rd.num_simple()).collect();

    let open_highest = open_highest_weights(d);
    let sat = d.saturated_set(sat_bound);

    // Summand list: (crystal, provenance factory, twist).
    let mut parts: Vec<Crystal> = Vec::new();
    let mut meta: Vec<(Provenance, Rational64)> = Vec::new();
    for (lambda, copies) in &open_highest {
        for copy in 0..*copies {
            parts.push(irreducible_crystal(lambda, &rd)?);
            meta.push((
                Provenance::Open {
                    dominant: lambda.clone(),
                    copy,
                },
                Rational64::new(1, 2),
            ));
        }
    }
    for theta in &sat.elements {
        let c = d.length(theta) / Rational64::from_integer(2);
        parts.push(lowest_weight_crystal(theta, &rd)?);
        meta.push((
            Provenance::Boundary {
                theta: theta.clone(),
            },
            c,
        ));
        parts.push(irreducible_crystal(&theta.neg(), &rd)?);
        meta.push((Provenance::Boundary { theta: theta.neg() }, c));
    }

    let (crystal, offsets) = Crystal::disjoint_union(rd.clone(), indices, &parts);
    let mut provenance = Vec::with_capacity(crystal.len());
    let mut twist = Vec::with_capacity(crystal.len());
    for (k, part) in parts.iter().enumerate() {
        for _ in 0..part.len() {
            provenance.push(meta[k].0.clone());
            twist.push(meta[k].1);
        }
    }

    // Parts by monoid membership of the weight.
    let part: Vec<Part> = crystal
        .weights()
        .iter()
        .map(|w| {
            if !w.is_zero() && d.in_monoid(w) {
                Part::Plus
            } else if !w.is_zero() && d.in_monoid(&w.neg()) {
                Part::Minus
            } else {
                Part::Unassigned
            }
        })
        .collect();

    let duality = build_duality(d, &parts, &offsets, &meta)?;

    Ok(XCrystal {
        datum,
        crystal,
        part,
        provenance,
        twist,
        duality,
        open_highest,
        saturated: sat.elements,
        truncation_warning: sat.truncated,
    })
}

/// Pair the summands under duality and glue the per-pair bijections into a
/// global involution.
fn build_duality(
    d: &SphericalDatum,
    parts: &[Crystal],
    offsets: &[usize],
    meta: &[(Provenance, Rational64)],
) -> Result<Vec<usize>, XCrystalError> {
    let rd = &d.root_datum;
    let total: usize = parts.iter().map(|p| p.len()).sum();
    let mut duality = vec![usize::MAX; total];
    let partner = |k: usize| -> Option<usize> {
        match &meta[k].0 {
            Provenance::Open { dominant, copy } => {
                let dual_weight = rd.dual_dominant(dominant);
                meta.iter().position(|(p, _)| {
                    matches!(p, Provenance::Open { dominant: d2, copy: c2 }
                        if *d2 == dual_weight && c2 == copy)
                })
            }
            Provenance::Boundary { theta } => {
                let neg = theta.neg();
                meta.iter().position(
                    |(p, _)| matches!(p, Provenance::Boundary { theta: t2 } if *t2 == neg),
                )
            }
        }
    };
    for k in 0..parts.len() {
        let Some(j) = partner(k) else {
            return Err(XCrystalError::Crystal(CrystalError::Malformed(format!(
                "summand {:?} has no dual partner",
                meta[k].0
            ))));
        };
        let map = crystal::crystal_isomorphism(&parts[k].dual(), &parts[j]).ok_or_else(|| {
            XCrystalError::Crystal(CrystalError::Malformed(format!(
                "no duality isomorphism between summands {k} and {j}"
            )))
        })?;
        for (b, &target) in map.iter().enumerate() {
            duality[offsets[k] + b] = offsets[j] + target;
        }
    }
    // Sanity: the pairing is an involution.
    for (b, &img) in duality.iter().enumerate() {
        if img == usize::MAX || duality[img] != b {
            return Err(XCrystalError::Crystal(CrystalError::Malformed(
                "duality pairing is not an involution".into(),
            )));
        }
    }
    Ok(duality)
}

/// Critical dimension of a stratum component: `(len(λ) − 1)/2` on the open
/// stratum, `⟨ρ, λ − θ̌⟩` against a boundary stratum.
pub fn critical_dimension(
    lambda: &Coweight,
    stratum: &Stratum,
    d: &SphericalDatum,
) -> Result<Rational64, XCrystalError> {
    match stratum {
        Stratum::Open => {
            if !d.in_monoid(lambda) {
                return Err(XCrystalError::NotInMonoid(lambda.clone()));
            }
            Ok((d.length(lambda) - Rational64::from_integer(1)) / Rational64::from_integer(2))
        }
        Stratum::Boundary(theta) => {
            if mv_cycle_count(lambda, theta, &d.root_datum) == 0 {
                return Err(XCrystalError::NotABoundaryWeight {
                    weight: lambda.clone(),
                    theta: theta.clone(),
                });
            }
            Ok(d.root_datum.rho().pairing(&lambda.sub(theta)))
        }
    }
}

/// Number of components of the `λ`-semi-infinite-orbit slice of the
/// `θ̌`-stratum: the multiplicity of `λ` in the module of lowest weight `θ̌`,
/// through the character oracle.
pub fn mv_cycle_count(lambda: &Coweight, theta: &Coweight, rd: &RootDatum) -> u64 {
    assert!(
        rd.is_antidominant(theta),
        "mv_cycle_count: {theta} is not antidominant"
    );
    // mult of λ in the lowest-weight-θ̌ module = mult of −λ in V^{−θ̌}.
    crystal::weight_multiplicity(rd, &theta.neg(), &lambda.neg())
}

#[derive(Clone, Debug)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
    pub notes: Vec<String>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl std::fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} - {}{}",
                if c.passed { "ok  " } else { "FAIL" },
                c.name,
                if c.detail.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", c.detail)
                }
            )?;
        }
        for n in &self.notes {
            writeln!(f, "note - {n}")?;
        }
        Ok(())
    }
}

/// Run the crystal-level checks: weight-set agreement with the predicted
/// module, Weyl invariance of multiplicities, color multiplicities,
/// lowering chains to colors, the per-index string decomposition with its
/// duality pairing, and self-duality of the whole structure.
pub fn verify_properties(x: &XCrystal) -> PropertyReport {
    let d = x.datum();
    let rd = &d.root_datum;
    let c = x.crystal();
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    if x.truncation_warning() {
        notes.push("saturated set may be truncated by the build bound".into());
    }

    // (a) Weight sets: open part against ⊕ V^λ, as sets without multiplicity.
    {
        let mut predicted: BTreeSet<Coweight> = BTreeSet::new();
        for (lambda, _) in x.open_highest_weights() {
            predicted.extend(crystal::weight_multiplicities(rd, lambda).into_keys());
        }
        let open_weights: BTreeSet<Coweight> = (0..c.len())
            .filter(|&b| matches!(x.provenance(b), Provenance::Open { .. }))
            .map(|b| c.weight(b).clone())
            .collect();
        let unassigned = (0..c.len())
            .filter(|&b| x.part(b) == Part::Unassigned)
            .count();
        let passed = predicted == open_weights && unassigned == 0;
        checks.push(PropertyCheck {
            name: "weight-set-equality",
            passed,
            detail: if passed {
                String::new()
            } else {
                format!(
                    "predicted {} weights, found {}, {} unassigned elements",
                    predicted.len(),
                    open_weights.len(),
                    unassigned
                )
            },
        });
    }

    // (b) W-invariance of the full weight multiset.
    {
        let mut mult: BTreeMap<Coweight, i64> = BTreeMap::new();
        for w in c.weights() {
            *mult.entry(w.clone()).or_insert(0) += 1;
        }
        let mut failed = None;
        'outer: for (w, &m) in &mult {
            for i in 0..rd.num_simple() {
                let img = rd.reflect(i, w);
                if mult.get(&img).copied().unwrap_or(0) != m {
                    failed = Some(format!(
                        "weight {w} has multiplicity {m} but s_{i} image differs"
                    ));
                    break 'outer;
                }
            }
        }
        checks.push(PropertyCheck {
            name: "weyl-invariant-multiplicities",
            passed: failed.is_none(),
            detail: failed.unwrap_or_default(),
        });
    }

    // (c) Color multiplicities on the open plus part.
    {
        let mut failed = None;
        for nu in d.color_valuations() {
            let count = (0..c.len())
                .filter(|&b| {
                    x.part(b) == Part::Plus
                        && matches!(x.provenance(b), Provenance::Open { .. })
                        && c.weight(b) == &nu
                })
                .count();
            let expected = if rd.is_half_coroot(&nu) { 2 } else { 1 };
            if count != expected {
                failed = Some(format!(
                    "color weight {nu}: multiplicity {count} ≠ {expected}"
                ));
                break;
            }
        }
        checks.push(PropertyCheck {
            name: "color-multiplicities",
            passed: failed.is_none(),
            detail: failed.unwrap_or_default(),
        });
    }

    // (d) Lowering chains from open plus elements to a color weight.
    {
        let colors: BTreeSet<Coweight> = d.color_valuations().into_iter().collect();
        let mut failed = None;
        for b in x.plus_elements() {
            if !matches!(x.provenance(b), Provenance::Open { .. }) {
                continue;
            }
            let mut seen = vec![false; c.len()];
            let mut stack = vec![b];
            seen[b] = true;
            let mut reached = false;
            while let Some(cur) = stack.pop() {
                if colors.contains(c.weight(cur)) {
                    reached = true;
                    break;
                }
                for i in 0..rd.num_simple() {
                    if let Some(next) = c.f_op(i, cur) {
                        if !seen[next] {
                            seen[next] = true;
                            stack.push(next);
                        }
                    }
                }
            }
            if !reached {
                failed = Some(format!(
                    "element {b} of weight {} reaches no color",
                    c.weight(b)
                ));
                break;
            }
        }
        checks.push(PropertyCheck {
            name: "lowering-chains-to-colors",
            passed: failed.is_none(),
            detail: failed.unwrap_or_default(),
        });
    }

    // (e) Per-index restriction: strings, pairing off under duality.
    {
        let mut failed = None;
        'levi: for i in 0..rd.num_simple() {
            let restricted = c.restrict_to_levi(&[i]);
            if let Err(e) = restricted.validate_seminormal() {
                failed = Some(format!("index {i}: {e}"));
                break;
            }
            let comps: Vec<BTreeSet<usize>> = restricted
                .components()
                .into_iter()
                .map(|v| v.into_iter().collect())
                .collect();
            for comp in &comps {
                // A string: exactly one source, one sink, linear order.
                let sources = comp
                    .iter()
                    .filter(|&&b| restricted.e_op(i, b).is_none())
                    .count();
                if sources != 1 {
                    failed = Some(format!("index {i}: component with {sources} sources"));
                    break 'levi;
                }
                let image: BTreeSet<usize> = comp.iter().map(|&b| x.duality(b)).collect();
                if !comps.contains(&image) {
                    failed = Some(format!(
                        "index {i}: duality image of a string is not a string"
                    ));
                    break 'levi;
                }
            }
        }
        checks.push(PropertyCheck {
            name: "levi-restriction-strings",
            passed: failed.is_none(),
            detail: failed.unwrap_or_default(),
        });
    }

    // (f) Self-duality of the crystal structure through the involution.
    {
        let mut failed = None;
        'dual: for b in 0..c.len() {
            let db = x.duality(b);
            if x.duality(db) != b {
                failed = Some("duality is not an involution".to_string());
                break;
            }
            if *c.weight(db) != c.weight(b).neg() {
                failed = Some(format!("wt(δ({b})) ≠ −wt({b})"));
                break;
            }
            match (x.part(b), x.part(db)) {
                (Part::Plus, Part::Minus) | (Part::Minus, Part::Plus) => {}
                (p, q) => {
                    failed = Some(format!("parts {p:?}/{q:?} not swapped at {b}"));
                    break;
                }
            }
            match (x.provenance(b), x.provenance(db)) {
                (Provenance::Open { dominant: l1, .. }, Provenance::Open { dominant: l2, .. }) => {
                    if *l2 != rd.dual_dominant(l1) {
                        failed = Some(format!("open provenance not dual-paired at {b}"));
                        break;
                    }
                }
                (Provenance::Boundary { theta: t1 }, Provenance::Boundary { theta: t2 }) => {
                    if *t2 != t1.neg() {
                        failed = Some(format!("boundary provenance not negated at {b}"));
                        break;
                    }
                }
                _ => {
                    failed = Some(format!("provenance kinds differ across duality at {b}"));
                    break;
                }
            }
            for i in 0..rd.num_simple() {
                let lhs = c.f_op(i, b).map(|t| x.duality(t));
                let rhs = c.e_op(i, db);
                if lhs != rhs {
                    failed = Some(format!("δ f̃_{i} ≠ ẽ_{i} δ at element {b}"));
                    break 'dual;
                }
            }
        }
        checks.push(PropertyCheck {
            name: "self-duality",
            passed: failed.is_none(),
            detail: failed.unwrap_or_default(),
        });
    }

    notes.push(
        "multiplicity agreement at weights outside the Weyl translates of colors is conjecture-level"
            .into(),
    );

    PropertyReport { checks, notes }
}

/// The induced Frobenius permutation of the crystal elements, when the
/// datum carries a Frobenius structure and the multiplicity pattern
/// supports the induced action (every weight multiplicity at most two,
/// multiplicity-two summands indexed by colors).
pub fn frobenius_action(x: &XCrystal) -> Result<Vec<usize>, XCrystalError> {
    let d = x.datum();
    let Some(fr) = &d.frobenius else {
        return Err(XCrystalError::MissingFrobenius);
    };
    let rd = &d.root_datum;
    let c = x.crystal();

    // Refuse multiplicity patterns beyond the color-indexed case.
    let mut mult: BTreeMap<Coweight, usize> = BTreeMap::new();
    for b in x.plus_elements() {
        *mult.entry(c.weight(b).clone()).or_insert(0) += 1;
    }
    if let Some((w, m)) = mult.iter().find(|(_, &m)| m > 2) {
        return Err(XCrystalError::FrobeniusUnsupported(format!(
            "weight {w} has plus-multiplicity {m} > 2"
        )));
    }

    // Copy bookkeeping: for each dominant λ with two copies, order the
    // colors mapping to it by name; Frobenius permutes copies through the
    // color permutation.
    let colors_for = |lambda: &Coweight| -> Vec<String> {
        let mut names: Vec<String> = d
            .colors
            .iter()
            .filter(|col| rd.dominant_translate(&col.valuation) == *lambda)
            .map(|col| col.name.clone())
            .collect();
        names.sort();
        names
    };

    // Identify the summand blocks by provenance.
    let mut blocks: BTreeMap<Provenance, Vec<usize>> = BTreeMap::new();
    for b in 0..c.len() {
        blocks.entry(x.provenance(b).clone()).or_default().push(b);
    }

    let sigma = &fr.lattice_auto;
    let mut perm = vec![usize::MAX; c.len()];
    for (prov, elems) in &blocks {
        let target_prov = match prov {
            Provenance::Open { dominant, copy } => {
                let image = apply_matrix(sigma, dominant);
                debug_assert!(rd.is_dominant(&image));
                let new_copy = if blocks.keys().any(
                    |p| matches!(p, Provenance::Open { dominant: d2, copy: 1 } if d2 == dominant),
                ) {
                    // Multiplicity two: route the copy through the colors.
                    let names = colors_for(dominant);
                    let target_names = colors_for(&image);
                    if names.len() != 2 || target_names.len() != 2 {
                        return Err(XCrystalError::FrobeniusUnsupported(format!(
                            "multiplicity-two weight {dominant} is not indexed by two colors"
                        )));
                    }
                    let source = &names[*copy];
                    let mapped = fr.color_perm.get(source).ok_or_else(|| {
                        XCrystalError::FrobeniusUnsupported(format!(
                            "color {source} missing from the permutation"
                        ))
                    })?;
                    target_names
                        .iter()
                        .position(|n| n == mapped)
                        .ok_or_else(|| {
                            XCrystalError::FrobeniusUnsupported(format!(
                                "color {mapped} does not index a copy of {image}"
                            ))
                        })?
                } else {
                    0
                };
                Provenance::Open {
                    dominant: image,
                    copy: new_copy,
                }
            }
            Provenance::Boundary { theta } => Provenance::Boundary {
                theta: apply_matrix(sigma, theta),
            },
        };
        let Some(target_elems) = blocks.get(&target_prov) else {
            return Err(XCrystalError::FrobeniusUnsupported(format!(
                "no summand with provenance {target_prov:?}"
            )));
        };
        let (source_piece, _) = c.sub_crystal(elems);
        let (target_piece, _) = c.sub_crystal(target_elems);
        let iso = twisted_isomorphism(
            &source_piece,
            &target_piece,
            |i| fr.dynkin_perm[i],
            |w| apply_matrix(sigma, w),
        )
        .ok_or_else(|| {
            XCrystalError::FrobeniusUnsupported(format!(
                "no σ-twisted isomorphism from {prov:?} to {target_prov:?}"
            ))
        })?;
        for (local, &target_local) in iso.iter().enumerate() {
            perm[elems[local]] = target_elems[target_local];
        }
    }
    // Permutation sanity.
    let mut seen = vec![false; c.len()];
    for &p in &perm {
        if p == usize::MAX || seen[p] {
            return Err(XCrystalError::FrobeniusUnsupported(
                "induced action is not a permutation".into(),
            ));
        }
        seen[p] = true;
    }
    Ok(perm)
}
