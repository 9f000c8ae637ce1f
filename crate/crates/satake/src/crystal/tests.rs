use super::*;
use crate::catalog;
use std::sync::Arc;

fn rd(name: &str) -> Arc<RootDatum> {
    Arc::new(catalog::root_datum(name).unwrap())
}

fn cw(coords: &[i64]) -> Coweight {
    Coweight::new(coords.to_vec())
}

fn weight_multiset(c: &Crystal) -> BTreeMap<Coweight, u64> {
    let mut out = BTreeMap::new();
    for w in c.weights() {
        *out.entry(w.clone()).or_insert(0) += 1;
    }
    out
}

#[test]
fn sl2_adjoint_string() {
    let rd = rd("sl2");
    let c = irreducible_crystal(&cw(&[1]), &rd).unwrap();
    assert_eq!(c.len(), 3);
    let wts: Vec<Coweight> = c.weights().to_vec();
    assert!(wts.contains(&cw(&[1])) && wts.contains(&cw(&[0])) && wts.contains(&cw(&[-1])));
    c.validate_seminormal().unwrap();
}

#[test]
fn gl2_standard_two_elements() {
    let rd = rd("gl2");
    let c = irreducible_crystal(&cw(&[1, 0]), &rd).unwrap();
    assert_eq!(c.len(), 2);
    assert_eq!(
        weight_multiset(&c),
        BTreeMap::from([(cw(&[1, 0]), 1), (cw(&[0, 1]), 1)])
    );
}

#[test]
fn a2_adjoint_matches_character_oracle() {
    let rd = rd("a2");
    let theta = cw(&[1, 1]);
    let c = irreducible_crystal(&theta, &rd).unwrap();
    assert_eq!(c.len(), 8);
    assert_eq!(weight_multiset(&c)[&cw(&[0, 0])], 2);
    let oracle = weight_multiplicities(&rd, &theta);
    assert_eq!(weight_multiset(&c), oracle);
}

#[test]
fn non_dominant_weight_rejected() {
    let rd = rd("sl2");
    assert!(matches!(
        irreducible_crystal(&cw(&[-1]), &rd),
        Err(CrystalError::NotDominant(_))
    ));
}

#[test]
fn crystal_matches_oracle_up_to_height_six() {
    for name in ["sl2", "pgl2", "gl2", "a2", "a1xa1"] {
        let rd = rd(name);
        let two_rho = rd.two_rho();
        // Dominant coweights in a small coordinate box.
        let mut lambdas = Vec::new();
        let r = rd.rank;
        let mut coords = vec![-3i64; r];
        'outer: loop {
            let c = Coweight::new(coords.clone());
            if rd.is_dominant(&c) {
                let h = two_rho.pairing(&c);
                if h <= num_rational::Rational64::from_integer(6) {
                    lambdas.push(c);
                }
            }
            for k in 0..r {
                coords[k] += 1;
                if coords[k] <= 3 {
                    continue 'outer;
                }
                coords[k] = -3;
            }
            break;
        }
        for lambda in lambdas {
            let c = irreducible_crystal(&lambda, &rd).unwrap();
            c.validate_seminormal().unwrap();
            let oracle = weight_multiplicities(&rd, &lambda);
            assert_eq!(weight_multiset(&c), oracle, "{name}: λ = {lambda}");
        }
    }
}

#[test]
fn deeper_a2_crystals_match_the_oracle() {
    // Multiplicity-rich highest weights in the coroot basis: multi-segment
    // paths and interior weight spaces of dimension up to four. Dimensions
    // frozen from the Weyl formula (p+1)(q+1)(p+q+2)/2 in the
    // fundamental-weight coordinates (p, q) = (2a−b, 2b−a).
    let a2 = rd("a2");
    let cases = [((2, 2), 27), ((3, 2), 35), ((4, 2), 28), ((3, 3), 64)];
    for ((a, b), dim) in cases {
        let lambda = cw(&[a, b]);
        let c = irreducible_crystal(&lambda, &a2).unwrap();
        c.validate_seminormal().unwrap();
        assert_eq!(c.len(), dim, "λ = {lambda}");
        assert_eq!(
            weight_multiset(&c),
            weight_multiplicities(&a2, &lambda),
            "λ = {lambda}"
        );
    }
}

#[test]
fn lowest_weight_examples() {
    let gl2 = rd("gl2");
    let det_inv = lowest_weight_crystal(&cw(&[-1, -1]), &gl2).unwrap();
    assert_eq!(det_inv.len(), 1);
    assert_eq!(det_inv.weight(0), &cw(&[-1, -1]));

    let sl2 = rd("sl2");
    let c = lowest_weight_crystal(&cw(&[-1]), &sl2).unwrap();
    assert_eq!(c.len(), 3);
    let lowest: Vec<usize> = (0..c.len())
        .filter(|&b| c.indices().iter().all(|&i| c.f_op(i, b).is_none()))
        .collect();
    assert_eq!(lowest.len(), 1);
    assert_eq!(c.weight(lowest[0]), &cw(&[-1]));

    let a1xa1 = rd("a1xa1");
    let box11 = lowest_weight_crystal(&cw(&[-1, -1]), &a1xa1).unwrap();
    assert_eq!(box11.len(), 4);

    assert!(matches!(
        lowest_weight_crystal(&cw(&[1]), &sl2),
        Err(CrystalError::NotAntidominant(_))
    ));
}

#[test]
fn tensor_of_strings_decomposes_by_clebsch_gordan() {
    let pgl2 = rd("pgl2");
    let std = irreducible_crystal(&cw(&[1]), &pgl2).unwrap();
    let sq = std.tensor(&std).unwrap();
    assert_eq!(sq.len(), 4);
    sq.validate_seminormal().unwrap();
    let comps = sq.components();
    assert_eq!(comps.len(), 2);
    let mut hw: Vec<Coweight> = comps
        .iter()
        .map(|comp| {
            let (piece, _) = sq.sub_crystal(comp);
            let sources = piece.sources();
            assert_eq!(sources.len(), 1);
            piece.weight(sources[0]).clone()
        })
        .collect();
    hw.sort();
    assert_eq!(hw, vec![cw(&[0]), cw(&[2])]);
}

#[test]
fn tensor_with_unit_is_identity() {
    let gl2 = rd("gl2");
    let std = irreducible_crystal(&cw(&[1, 0]), &gl2).unwrap();
    let unit = singleton_crystal(&gl2, cw(&[0, 0]));
    let prod = std.tensor(&unit).unwrap();
    assert!(crystal_isomorphism(&prod, &std).is_some());
}

#[test]
fn gl2_std_squared_components() {
    let gl2 = rd("gl2");
    let std = irreducible_crystal(&cw(&[1, 0]), &gl2).unwrap();
    let sq = std.tensor(&std).unwrap();
    let mut hw: Vec<Coweight> = sq
        .components()
        .iter()
        .map(|comp| {
            let (piece, _) = sq.sub_crystal(comp);
            piece.weight(piece.sources()[0]).clone()
        })
        .collect();
    hw.sort();
    assert_eq!(hw, vec![cw(&[1, 1]), cw(&[2, 0])]);
}

#[test]
fn tensor_character_is_product_of_characters() {
    let a2 = rd("a2");
    let a = irreducible_crystal(&cw(&[1, 1]), &a2).unwrap();
    let b = irreducible_crystal(&cw(&[1, 1]), &a2).unwrap();
    let prod = a.tensor(&b).unwrap();
    assert_eq!(prod.len(), a.len() * b.len());
    prod.validate_seminormal().unwrap();
    // Multiset convolution of the two characters.
    let mut expected: BTreeMap<Coweight, u64> = BTreeMap::new();
    for wa in a.weights() {
        for wb in b.weights() {
            *expected.entry(wa.add(wb)).or_insert(0) += 1;
        }
    }
    assert_eq!(weight_multiset(&prod), expected);
}

#[test]
fn restriction_examples() {
    let a1xa1 = rd("a1xa1");
    let boxc = irreducible_crystal(&cw(&[1, 1]), &a1xa1).unwrap();
    assert_eq!(boxc.len(), 4);

    let empty = boxc.restrict_to_levi(&[]);
    assert_eq!(empty.components().len(), 4);

    let first = boxc.restrict_to_levi(&[0]);
    let comps = first.components();
    assert_eq!(comps.len(), 2);
    assert!(comps.iter().all(|c| c.len() == 2));

    let full = boxc.restrict_to_levi(&[0, 1]);
    assert_eq!(full, boxc);
}

#[test]
fn normality_checks() {
    let a2 = rd("a2");
    let adj = irreducible_crystal(&cw(&[1, 1]), &a2).unwrap();
    let big = irreducible_crystal(&cw(&[2, 1]), &a2).unwrap();
    let (union, _) = Crystal::disjoint_union(a2.clone(), vec![0, 1], &[adj.clone(), big]);
    assert!(check_normality(&union).is_normal());

    // Cutting one f̃_2 edge breaks axiom (1) along the severed string.
    let mut f = vec![Vec::new(), Vec::new()];
    for b in 0..adj.len() {
        f[0].push(adj.f_op(0, b));
        f[1].push(adj.f_op(1, b));
    }
    let cut = f[1]
        .iter()
        .position(|t| t.is_some())
        .expect("adjoint crystal has an f̃_2 edge");
    f[1][cut] = None;
    let broken = Crystal::from_parts(a2.clone(), vec![0, 1], adj.weights().to_vec(), f).unwrap();
    assert!(matches!(
        check_normality(&broken),
        NormalityReport::NotSeminormal(_)
    ));

    // Tensor products of strings stay normal.
    let pgl2 = rd("pgl2");
    let s2 = irreducible_crystal(&cw(&[2]), &pgl2).unwrap();
    let s1 = irreducible_crystal(&cw(&[1]), &pgl2).unwrap();
    assert!(check_normality(&s2.tensor(&s1).unwrap()).is_normal());
}

#[test]
fn weight_multiplicity_examples() {
    let sl2 = rd("sl2");
    assert_eq!(weight_multiplicity(&sl2, &cw(&[1]), &cw(&[0])), 1);
    let a2 = rd("a2");
    assert_eq!(weight_multiplicity(&a2, &cw(&[1, 1]), &cw(&[0, 0])), 2);
    let gl2 = rd("gl2");
    assert_eq!(weight_multiplicity(&gl2, &cw(&[1, 0]), &cw(&[1, 0])), 1);
}

#[test]
fn dual_is_an_involution_and_flips_strings() {
    let a2 = rd("a2");
    let c = irreducible_crystal(&cw(&[2, 1]), &a2).unwrap();
    let dd = c.dual().dual();
    assert_eq!(c, dd);
    let d = c.dual();
    for b in 0..c.len() {
        assert_eq!(d.weight(b), &c.weight(b).neg());
        for i in 0..2 {
            assert_eq!(d.f_op(i, b), c.e_op(i, b));
        }
    }
    d.validate_seminormal().unwrap();
}

#[test]
fn weyl_generators_act_by_reflections_on_weights() {
    let a2 = rd("a2");
    let c = irreducible_crystal(&cw(&[2, 1]), &a2).unwrap();
    for i in 0..2 {
        for b in 0..c.len() {
            let sb = c.s_op(i, b);
            assert_eq!(c.weight(sb), &a2.reflect(i, c.weight(b)));
            assert_eq!(c.s_op(i, sb), b);
        }
    }
}

#[test]
fn tensor_is_associative_up_to_isomorphism() {
    let gl2 = rd("gl2");
    let a = irreducible_crystal(&cw(&[1, 0]), &gl2).unwrap();
    let b = irreducible_crystal(&cw(&[1, 1]), &gl2).unwrap();
    let c = irreducible_crystal(&cw(&[2, 0]), &gl2).unwrap();
    let left = a.tensor(&b).unwrap().tensor(&c).unwrap();
    let right = a.tensor(&b.tensor(&c).unwrap()).unwrap();
    assert!(crystal_isomorphism(&left, &right).is_some());
}

#[test]
fn isomorphism_rejects_different_shapes() {
    let pgl2 = rd("pgl2");
    let s1 = irreducible_crystal(&cw(&[1]), &pgl2).unwrap();
    let s2 = irreducible_crystal(&cw(&[2]), &pgl2).unwrap();
    assert!(crystal_isomorphism(&s1, &s2).is_none());
}
