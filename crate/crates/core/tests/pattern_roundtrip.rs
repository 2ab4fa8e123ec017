use antlab_core::{Heading, Pattern, Pos, Provenance, RuleWord};
use proptest::prelude::*;

fn pattern_strategy() -> impl Strategy<Value = Pattern> {
    let word = prop_oneof![Just("LR"), Just("LLRRRL"), Just("LLRLRLL"), Just("RRLLLRLLLR")]
        .prop_map(|w| RuleWord::parse(w).unwrap());
    word.prop_flat_map(|w| {
        let n = w.states();
        (
            Just(w),
            prop::collection::vec(((-20i64..20, -20i64..20), 1..n), 0..60),
            (-5i64..5, -5i64..5),
            0u8..4,
            prop::option::of(prop_oneof![Just(Provenance::Searched), Just(Provenance::Constructed), Just(Provenance::Transcribed)]),
        )
    })
    .prop_map(|(w, cells, (ax, ay), h, prov)| {
        let mut p = Pattern::empty(w).with_name("p");
        p.provenance = prov;
        for ((x, y), s) in cells {
            p.set(Pos::new(x, y), s);
        }
        p.ant = Pos::new(ax, ay);
        p.heading = Heading::from_index(h);
        p
    })
}

proptest! {
    #[test]
    fn text_round_trip(p in pattern_strategy()) {
        let back = Pattern::parse(&p.to_text()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn four_rotations_are_identity(p in pattern_strategy()) {
        let r = p.rotated_ccw().rotated_ccw().rotated_ccw().rotated_ccw();
        prop_assert_eq!(r.cells, p.cells);
        prop_assert_eq!(r.ant, p.ant);
        prop_assert_eq!(r.heading, p.heading);
    }

    #[test]
    fn configuration_round_trip(p in pattern_strategy()) {
        let conf = p.to_configuration();
        let back = Pattern::from_configuration(&conf, p.word.clone());
        prop_assert_eq!(back.cells, p.cells);
        prop_assert_eq!(back.ant, p.ant);
    }
}
