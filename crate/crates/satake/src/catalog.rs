//! Embedded catalog of spherical data and of bare root data used by the
//! test and check surfaces. No file or network access; `load_datum` in
//! [`crate::io`] consults this catalog by name.
//!
//! Shipped spherical data:
//!
//! * `hecke-gl2` — the rank-2 Hecke datum: two colors `ε̌1`, `−ε̌2`, free monoid.
//! * `hecke-pgl2` — rank 1, both colors at `α̌/2`; ships with the
//!   color-swapping Frobenius (trivial on the lattice).
//! * `hecke-gl2-det` — synthetic: `hecke-gl2` plus an antidominant boundary
//!   generator `(−1,−1)`; exercises the saturated-set machinery.
//! * `nfold(1)`, `nfold(2)`, `nfold(3)` — the n-fold data on the lattice
//!   spanned by `ξ = (m̌ + α̌_1 + … + α̌_n)/2` and the `α̌_i`, with the n+1
//!   color valuations `(α̌_1 + … + α̌_n − m̌)/2` and
//!   `(m̌ + α̌_i − Σ_{j≠i} α̌_j)/2`.
//! * `a1xa1-product` — two commuting copies of the rank-1 datum.

use crate::lattice::{identity_matrix, Coweight, RootDatum, WeightFunctional};
use crate::spherical::{Color, FrobeniusDatum, SphericalDatum};
use num_rational::Rational64;
use std::collections::BTreeMap;

/// Names of all shipped spherical data, in catalog order.
pub fn names() -> Vec<String> {
    vec![
        "hecke-gl2".into(),
        "hecke-pgl2".into(),
        "hecke-gl2-det".into(),
        "nfold(1)".into(),
        "nfold(2)".into(),
        "nfold(3)".into(),
        "a1xa1-product".into(),
    ]
}

/// Look up a shipped spherical datum by name.
pub fn spherical_datum(name: &str) -> Option<SphericalDatum> {
    match name {
        "hecke-gl2" => Some(hecke_gl2()),
        "hecke-pgl2" => Some(hecke_pgl2()),
        "hecke-gl2-det" => Some(hecke_gl2_det()),
        "a1xa1-product" => Some(a1xa1_product()),
        _ => {
            let inner = name.strip_prefix("nfold(")?.strip_suffix(')')?;
            let n: usize = inner.parse().ok()?;
            if (1..=6).contains(&n) {
                Some(nfold(n))
            } else {
                None
            }
        }
    }
}

/// Bare root data for tests and oracles: `sl2` (lattice `ℤα̌`), `pgl2`
/// (lattice `ℤ·α̌/2`), `gl2`, `a2`, `a1xa1` (two copies of the `pgl2`
/// lattice), and `nfold<k>` root parts.
pub fn root_datum(name: &str) -> Option<RootDatum> {
    let rd = match name {
        "sl2" => RootDatum::new(
            1,
            vec![Coweight::new(vec![1])],
            vec![WeightFunctional::from_integers(&[2])],
            vec!["a1".into()],
        ),
        "pgl2" => RootDatum::new(
            1,
            vec![Coweight::new(vec![2])],
            vec![WeightFunctional::from_integers(&[1])],
            vec!["a1".into()],
        ),
        "gl2" => RootDatum::new(
            2,
            vec![Coweight::new(vec![1, -1])],
            vec![WeightFunctional::from_integers(&[1, -1])],
            vec!["a1".into()],
        ),
        "a2" => RootDatum::new(
            2,
            vec![Coweight::new(vec![1, 0]), Coweight::new(vec![0, 1])],
            vec![
                WeightFunctional::from_integers(&[2, -1]),
                WeightFunctional::from_integers(&[-1, 2]),
            ],
            vec!["a1".into(), "a2".into()],
        ),
        "a1xa1" => RootDatum::new(
            2,
            vec![Coweight::new(vec![2, 0]), Coweight::new(vec![0, 2])],
            vec![
                WeightFunctional::from_integers(&[1, 0]),
                WeightFunctional::from_integers(&[0, 1]),
            ],
            vec!["a1".into(), "a1'".into()],
        ),
        _ => {
            let inner = name.strip_prefix("nfold")?;
            let n: usize = inner.parse().ok()?;
            return spherical_datum(&format!("nfold({n})")).map(|d| d.root_datum);
        }
    };
    Some(rd.expect("catalog root datum is valid"))
}

fn hecke_gl2() -> SphericalDatum {
    let rd = RootDatum::new(
        2,
        vec![Coweight::new(vec![1, -1])],
        vec![WeightFunctional::from_integers(&[1, -1])],
        vec!["a1".into()],
    )
    .unwrap();
    SphericalDatum {
        name: "hecke-gl2".into(),
        root_datum: rd,
        colors: vec![
            Color {
                name: "D+".into(),
                valuation: Coweight::new(vec![1, 0]),
            },
            Color {
                name: "D-".into(),
                valuation: Coweight::new(vec![0, -1]),
            },
        ],
        color_pairs: BTreeMap::from([(0, ("D+".into(), "D-".into()))]),
        extra_generators: vec![],
        h_char: WeightFunctional::from_integers(&[0, 0]),
        grading: WeightFunctional::from_integers(&[1, -1]),
        frobenius: None,
    }
}

fn hecke_pgl2() -> SphericalDatum {
    let rd = RootDatum::new(
        1,
        vec![Coweight::new(vec![2])],
        vec![WeightFunctional::from_integers(&[1])],
        vec!["a1".into()],
    )
    .unwrap();
    SphericalDatum {
        name: "hecke-pgl2".into(),
        root_datum: rd,
        colors: vec![
            Color {
                name: "D+".into(),
                valuation: Coweight::new(vec![1]),
            },
            Color {
                name: "D-".into(),
                valuation: Coweight::new(vec![1]),
            },
        ],
        color_pairs: BTreeMap::from([(0, ("D+".into(), "D-".into()))]),
        extra_generators: vec![],
        h_char: WeightFunctional::from_integers(&[0]),
        grading: WeightFunctional::from_integers(&[1]),
        // The nonsplit form: Frobenius swaps the two colors and is trivial
        // on the lattice.
        frobenius: Some(FrobeniusDatum {
            lattice_auto: identity_matrix(1),
            color_perm: BTreeMap::from([("D+".into(), "D-".into()), ("D-".into(), "D+".into())]),
            dynkin_perm: vec![0],
        }),
    }
}

fn hecke_gl2_det() -> SphericalDatum {
    let mut d = hecke_gl2();
    d.name = "hecke-gl2-det".into();
    d.extra_generators = vec![Coweight::new(vec![-1, -1])];
    // 2ρ vanishes on the boundary generator; this grading stays strictly
    // positive on all three generators.
    d.grading = WeightFunctional::from_integers(&[1, -2]);
    d
}

/// The n-fold datum in the basis `{ξ, α̌_1, …, α̌_n}` where
/// `ξ = (m̌ + α̌_1 + … + α̌_n)/2` and `m̌` is the central cocharacter.
fn nfold(n: usize) -> SphericalDatum {
    let rank = n + 1;
    let mut simple_coroots = Vec::new();
    let mut simple_roots = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        let mut c = vec![0i64; rank];
        c[i + 1] = 1;
        simple_coroots.push(Coweight::new(c));
        let mut f = vec![1i64; 1];
        f.extend(std::iter::repeat_n(0, n));
        f[i + 1] = 2;
        simple_roots.push(WeightFunctional::from_integers(&f));
        labels.push(format!("a{}", i + 1));
    }
    let rd = RootDatum::new(rank, simple_coroots, simple_roots, labels).unwrap();

    // ν̌_0 = (α̌_1 + … + α̌_n − m̌)/2 = −ξ + α̌_1 + … + α̌_n
    let mut v0 = vec![1i64; rank];
    v0[0] = -1;
    let mut colors = vec![Color {
        name: "D0".into(),
        valuation: Coweight::new(v0),
    }];
    let mut color_pairs = BTreeMap::new();
    for i in 0..n {
        // ν̌_i = ξ − Σ_{j≠i} α̌_j
        let mut v = vec![-1i64; rank];
        v[0] = 1;
        v[i + 1] = 0;
        colors.push(Color {
            name: format!("D{}", i + 1),
            valuation: Coweight::new(v),
        });
        color_pairs.insert(i, ("D0".to_string(), format!("D{}", i + 1)));
    }

    // 𝔥 = 2(n−1)·m* where ⟨m*, m̌⟩ = 1 and m* kills the coroots.
    let mut h = vec![0i64; rank];
    h[0] = n as i64 - 1;
    // grading = 𝔥 + 2ρ, the length functional; value 1 on every color.
    let mut grading = vec![2i64; rank];
    grading[0] = 2 * n as i64 - 1;

    SphericalDatum {
        name: format!("nfold({n})"),
        root_datum: rd,
        colors,
        color_pairs,
        extra_generators: vec![],
        h_char: WeightFunctional::from_integers(&h),
        grading: WeightFunctional::from_integers(&grading),
        frobenius: None,
    }
}

fn a1xa1_product() -> SphericalDatum {
    let rd = root_datum("a1xa1").unwrap();
    SphericalDatum {
        name: "a1xa1-product".into(),
        root_datum: rd,
        colors: vec![
            Color {
                name: "D1+".into(),
                valuation: Coweight::new(vec![1, 0]),
            },
            Color {
                name: "D1-".into(),
                valuation: Coweight::new(vec![1, 0]),
            },
            Color {
                name: "D2+".into(),
                valuation: Coweight::new(vec![0, 1]),
            },
            Color {
                name: "D2-".into(),
                valuation: Coweight::new(vec![0, 1]),
            },
        ],
        color_pairs: BTreeMap::from([
            (0, ("D1+".into(), "D1-".into())),
            (1, ("D2+".into(), "D2-".into())),
        ]),
        extra_generators: vec![],
        h_char: WeightFunctional::from_integers(&[0, 0]),
        grading: WeightFunctional::from_integers(&[1, 1]),
        frobenius: None,
    }
}

/// The factor-swapping Frobenius on `a1xa1-product`; not part of the shipped
/// datum, used by tests of the twisted trace.
pub fn a1xa1_swap_frobenius() -> FrobeniusDatum {
    FrobeniusDatum {
        lattice_auto: vec![vec![0, 1], vec![1, 0]],
        color_perm: BTreeMap::from([
            ("D1+".into(), "D2+".into()),
            ("D1-".into(), "D2-".into()),
            ("D2+".into(), "D1+".into()),
            ("D2-".into(), "D1-".into()),
        ]),
        dynkin_perm: vec![1, 0],
    }
}

/// Expected n-fold color valuations, written against `m̌` and the `α̌_i`
/// rather than the catalog basis; used to cross-check the shipped data.
pub fn nfold_expected_valuations(n: usize) -> Vec<Vec<Rational64>> {
    // Coordinates in the auxiliary basis (m̌, α̌_1, …, α̌_n) over ℚ.
    let mut out = Vec::new();
    let half = Rational64::new(1, 2);
    let mut v0 = vec![-half];
    v0.extend(std::iter::repeat_n(half, n));
    out.push(v0);
    for i in 0..n {
        let mut v = vec![half];
        for j in 0..n {
            v.push(if j == i { half } else { -half });
        }
        out.push(v);
    }
    out
}
