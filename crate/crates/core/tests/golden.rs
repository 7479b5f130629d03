//! Frozen values for the worked examples, through the public API only.

use adelic_core::adelic::{adelic_amoeba, ray_meets};
use adelic_core::archimedean::{arch_membership, arch_ray, is_phase_free, non_dominated_intervals, ArchRay, ArchVerdict};
use adelic_core::dynamics::{cone_directions, nonexpansive_set, sigma_invariant, tropical_prevariety};
use adelic_core::lift::{extended_newton, newton_polygon_roots};
use adelic_core::poly::{newton_polytope, parse_laurent};
use adelic_core::rational::{frac, int, val};
use adelic_core::tropical::{complement_components, laurent_coefficients, tropical_hypersurface};
use adelic_core::{ExpVec, IdealPresentation, Place, Rational, Sign, Valuation};

fn r(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn p(n: u64) -> Place {
    Place::finite(n).unwrap()
}

#[test]
fn valuations() {
    assert_eq!(val(&frac(10, 3), p(3)).unwrap(), Valuation::Finite(int(-1)));
    assert_eq!(val(&frac(-24, 5), p(2)).unwrap(), Valuation::Finite(int(3)));
    assert_eq!(val(&int(0), p(7)).unwrap(), Valuation::Infinite);
    assert_eq!(val(&frac(7, 9), Place::Generic).unwrap(), Valuation::Finite(int(0)));
    assert!(val(&int(2), Place::Archimedean).is_err());
}

#[test]
fn three_adic_fan_and_its_generic_translate() {
    let f = parse_laurent("3 + x + y", &["x", "y"]).unwrap();
    let a3 = tropical_hypersurface(&f, p(3), Sign::Amoeba).unwrap();
    let mut rays = Vec::new();
    for c in a3.cells() {
        let v = c.polyhedron.vertices_and_rays().unwrap();
        assert_eq!(v.vertices, vec![r(&[-1, -1])]);
        rays.extend(v.rays);
    }
    rays.sort();
    assert_eq!(rays, vec![r(&[-1, 0]), r(&[0, -1]), r(&[1, 1])]);

    let generic = tropical_hypersurface(&f, Place::Generic, Sign::Amoeba).unwrap();
    assert_eq!(cone_directions(generic.cells()), vec![r(&[-1, 0]), r(&[0, -1]), r(&[1, 1])]);
    let t3 = tropical_hypersurface(&f, p(3), Sign::Tropical).unwrap();
    assert!(t3.contains(&r(&[1, 1])) && t3.contains(&r(&[-1, -1])) && !t3.contains(&r(&[-1, -2])));
}

#[test]
fn components_of_a_reflexive_polygon() {
    // x + y + 1/(xy) + 1/4: the interior point has valuation 2 at p = 2
    let f = parse_laurent("x + y + x^-1*y^-1 + 1/4", &["x", "y"]).unwrap();
    let comps = complement_components(&f, p(2)).unwrap();
    assert_eq!(comps.len(), 4);
    let bounded: Vec<&ExpVec> = comps.iter().filter(|c| c.bounded).map(|c| &c.label).collect();
    assert_eq!(bounded, vec![&ExpVec::new(vec![0, 0])]);
    assert_eq!(complement_components(&f, Place::Generic).unwrap().len(), 3);
    assert_eq!(newton_polytope(&f).unwrap().len(), 3);
    assert_eq!(extended_newton(&f, p(2)).unwrap().vertices().len(), 4);
}

#[test]
fn newton_polygon() {
    let f = parse_laurent("x^2 - 10/3*x + 1", &["x"]).unwrap();
    let roots = newton_polygon_roots(&f, p(3)).unwrap();
    assert_eq!(roots.to_multiset(), vec![int(-1), int(1)]);
    let g = parse_laurent("x^3 - 8", &["x"]).unwrap();
    assert_eq!(newton_polygon_roots(&g, p(2)).unwrap().to_multiset(), vec![int(1); 3]);
    let h = parse_laurent("x^2 - 2", &["x"]).unwrap();
    assert_eq!(newton_polygon_roots(&h, p(2)).unwrap().to_multiset(), vec![frac(1, 2); 2]);
}

#[test]
fn laurent_expansion_of_the_inverse() {
    let f = parse_laurent("3 + x + y", &["x", "y"]).unwrap();
    let c = laurent_coefficients(&f, &ExpVec::new(vec![0, 0]), 3).unwrap();
    assert_eq!(c[&ExpVec::new(vec![0, 0])], frac(1, 3));
    assert_eq!(c[&ExpVec::new(vec![1, 0])], frac(-1, 9));
    assert_eq!(c[&ExpVec::new(vec![1, 1])], frac(2, 27));
    assert_eq!(c[&ExpVec::new(vec![2, 1])], frac(-3, 81));
    assert_eq!(c.len(), 10);
}

#[test]
fn archimedean_examples() {
    let f = parse_laurent("3 + x + y", &["x", "y"]).unwrap();
    assert!(is_phase_free(&f));
    assert!(matches!(arch_membership(&f, &[0.0, 0.0], 1e-9).unwrap(), ArchVerdict::NotInAmoeba { .. }));
    let ln3 = 3f64.ln();
    assert_eq!(arch_membership(&f, &[ln3, ln3], 1e-9).unwrap(), ArchVerdict::InAmoeba { exact: true });

    // along (2,1) the terms 3, e^{2t}, e^t form a triangle for e^t in [(√13-1)/2, (√13+1)/2]
    let iv = non_dominated_intervals(&f, &r(&[2, 1])).unwrap();
    let s13 = 13f64.sqrt();
    assert_eq!(iv.len(), 1);
    assert!((iv[0].0 - ((s13 - 1.0) / 2.0).ln()).abs() < 1e-9);
    assert!((iv[0].1 - ((s13 + 1.0) / 2.0).ln()).abs() < 1e-9);
    assert!(matches!(arch_ray(&f, &r(&[-1, -1]), 1e-9).unwrap(), ArchRay::Miss { .. }));
}

#[test]
fn adelic_rays() {
    let f = parse_laurent("3 + x + y", &["x", "y"]).unwrap();
    let a = adelic_amoeba(&f).unwrap();
    assert_eq!(a.places(), vec![p(3), Place::Generic]);
    assert_eq!(ray_meets(&f, &r(&[1, 1])).unwrap().witness_places(), vec![p(3), Place::Generic, Place::Archimedean]);
    assert_eq!(ray_meets(&f, &r(&[2, 1])).unwrap().witness_places(), vec![Place::Archimedean]);
    assert_eq!(ray_meets(&f, &r(&[-1, 0])).unwrap().witness_places(), vec![Place::Generic]);
    assert_eq!(ray_meets(&f, &r(&[-1, -3])).unwrap().witness_places(), vec![p(3)]);
}

#[test]
fn space_helmet() {
    let vars = ["x", "y", "z"];
    // each generator constrains its own coordinates, so the prevariety is the variety
    let gens = IdealPresentation::new(vec![
        parse_laurent("1 + x + y", &vars).unwrap(),
        parse_laurent("z - 2", &vars).unwrap(),
    ])
    .unwrap();
    let two = tropical_prevariety(&gens, p(2)).unwrap();
    assert!(two.superset);
    assert!(two.complex.cells().iter().all(|c| c.polyhedron.contains(&c.polyhedron.witness().unwrap())));
    assert!(two.complex.contains(&r(&[0, 0, 1])) && two.complex.contains(&r(&[0, 4, 1])));

    let n = nonexpansive_set(&gens).unwrap();
    assert_eq!(
        cone_directions(n.part(Place::Generic).unwrap().cells()),
        vec![r(&[-1, 0, 0]), r(&[0, -1, 0]), r(&[1, 1, 0])]
    );
    for v in [[0, 0, 1], [1, 1, 1], [1, 1, -1], [0, 0, -1], [-1, 0, -1]] {
        assert!(n.contains(&r(&v)).unwrap(), "{v:?}");
    }
    for v in [[-1, -1, -1], [-1, -2, 0], [1, 2, 0]] {
        assert!(!n.contains(&r(&v)).unwrap(), "{v:?}");
    }

    let s = sigma_invariant(&gens).unwrap();
    for v in [[-1, -1, 1], [1, 0, 1], [0, 0, 1], [-1, -1, 0]] {
        assert!(s.contains(&r(&v)).unwrap(), "{v:?}");
    }
    for v in [[1, 1, 1], [1, 1, -1], [0, 0, -1], [1, 1, 0]] {
        assert!(!s.contains(&r(&v)).unwrap(), "{v:?}");
    }
}
