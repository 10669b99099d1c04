use knfaces_core::analysis::{find_3_face, find_4_face, find_5_face_generic};
use knfaces_core::arrangement::build_arrangement;
use knfaces_core::cyclotomic::{
    classify_solution, family_row_values, sine_product_equal, symmetry_images, ArcTuple, SolutionTag,
};
use knfaces_core::drawings::{crossing_point, orientation, random_convex_drawing, Chord, ConvexDrawing, CrossingPoint};
use num_integer::binomial;
use proptest::prelude::*;

/// Six positive arcs in circular order `u, x, v, y, w, z`, with `n ≤ 24`.
fn arcs() -> impl Strategy<Value = [u32; 6]> {
    prop::array::uniform6(1u32..=4)
}

fn tuple_of(arcs: [u32; 6]) -> ArcTuple {
    ArcTuple::new(arcs.iter().sum(), arcs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn identity_is_invariant_under_the_symmetries(arcs in arcs()) {
        let t = tuple_of(arcs);
        let expected = sine_product_equal(&t);
        let [u, v, w] = t.uvw();
        let [x, y, z] = t.xyz();
        for img in symmetry_images([u, v, w, x, y, z]) {
            let s = ArcTuple::from_triples(t.n(), [img[0], img[1], img[2]], [img[3], img[4], img[5]]).unwrap();
            prop_assert_eq!(sine_product_equal(&s), expected, "image {:?} of {:?}", img, arcs);
        }
    }

    #[test]
    fn matching_triples_are_always_solutions(triple in prop::array::uniform3(1u32..=4), perm in 0usize..6) {
        let n = 2 * triple.iter().sum::<u32>();
        let [a, b, c] = triple;
        let other = [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]][perm];
        let t = ArcTuple::from_triples(n, triple, other).unwrap();
        prop_assert!(sine_product_equal(&t));
        prop_assert_eq!(classify_solution(&t).tag(), SolutionTag::Trivial);
    }

    #[test]
    fn classification_agrees_with_the_predicate(arcs in arcs()) {
        let t = tuple_of(arcs);
        let class = classify_solution(&t);
        prop_assert_eq!(sine_product_equal(&t), class.tag() != SolutionTag::NotASolution);
        if let Some(values) = family_row_values(&class) {
            let n = t.n() as i64;
            let scaled: Vec<i64> = values.iter().map(|v| *v * n).map(|v| {
                assert!(v.is_integer() && *v.numer() > 0, "row value {v} is not a positive arc");
                v.to_integer()
            }).collect();
            let row = ArcTuple::from_triples(
                t.n(),
                [scaled[0] as u32, scaled[1] as u32, scaled[2] as u32],
                [scaled[3] as u32, scaled[4] as u32, scaled[5] as u32],
            ).unwrap();
            prop_assert!(sine_product_equal(&row), "family row {:?} fails", scaled);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_arrangements_satisfy_euler(n in 2u32..=10, seed in any::<u64>()) {
        let a = build_arrangement(&random_convex_drawing(n, seed)).unwrap();
        prop_assert_eq!(a.nodes().len() + a.face_count(), a.segment_count() + 2);
        if a.is_generic() {
            let n = n as usize;
            prop_assert_eq!(a.crossing_count(), binomial(n, 4));
            prop_assert_eq!(a.bounded_face_count() + n, binomial(n, 4) + binomial(n, 2) + 1);
        }
    }

    #[test]
    fn drawings_round_trip_through_json(n in 1u32..=12, seed in any::<u64>()) {
        let d = random_convex_drawing(n, seed);
        prop_assert_eq!(ConvexDrawing::from_json(&d.to_json()).unwrap(), d);
        let r = ConvexDrawing::regular(n).unwrap();
        prop_assert_eq!(ConvexDrawing::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn rational_crossings_lie_on_both_chords(n in 4u32..=12, seed in any::<u64>(), pick in prop::array::uniform4(any::<u32>())) {
        let d = random_convex_drawing(n, seed);
        let mut q: Vec<u32> = pick.iter().map(|p| p % n).collect();
        q.sort_unstable();
        q.dedup();
        prop_assume!(q.len() == 4);
        let (c1, c2) = (Chord::new(q[0], q[2]), Chord::new(q[1], q[3]));
        let pts = d.points().unwrap();
        match crossing_point(&d, c1, c2, 64).unwrap() {
            CrossingPoint::Exact(x) => {
                prop_assert_eq!(orientation(&pts[c1.i as usize], &pts[c1.j as usize], &x), 0);
                prop_assert_eq!(orientation(&pts[c2.i as usize], &pts[c2.j as usize], &x), 0);
            }
            CrossingPoint::Box(..) => prop_assert!(false, "rational drawings give exact crossings"),
        }
    }

    #[test]
    fn finder_certificates_validate(n in 3u32..=9, seed in any::<u64>()) {
        let d = random_convex_drawing(n, seed);
        let a = build_arrangement(&d).unwrap();
        let mut certs = vec![(3, find_3_face(&d).unwrap())];
        if n >= 6 {
            certs.push((4, find_4_face(&d).unwrap()));
        }
        if n >= 5 && a.is_generic() {
            certs.push((5, find_5_face_generic(&d).unwrap()));
        }
        for (k, cert) in certs {
            prop_assert_eq!(cert.k, k);
            let f = cert.validate_in(&a).unwrap();
            prop_assert_eq!(a.face_len(f), k);
        }
    }
}
