use antlab_core::{AntConfiguration, Grid, Heading, Pos, RuleWord, RunLimits, StepEvent, Turn};
use proptest::prelude::*;

fn word_strategy() -> impl Strategy<Value = RuleWord> {
    prop::collection::vec(prop::bool::ANY, 1..=10)
        .prop_map(|bits| RuleWord::new(bits.into_iter().map(|b| if b { Turn::R } else { Turn::L }).collect()).unwrap())
}

/// Counts violations of the per-step rules over `steps` single steps.
fn violations(word: &RuleWord, mut conf: AntConfiguration, steps: u64) -> u64 {
    let n = word.states();
    let mut bad = 0;
    for _ in 0..steps {
        let before = conf.clone();
        let mut ev = None;
        conf.advance(word, 1, RunLimits::NONE, &mut |e: &StepEvent| ev = Some(*e)).unwrap();
        let e = ev.unwrap();
        let k = before.grid.get(before.position);
        let turn = match word.letters()[k as usize] {
            Turn::R => 1,
            Turn::L => 3,
        };
        let heading = Heading::from_index((before.heading.index() + turn) % 4);
        let moved = conf.position - before.position;
        bad += u64::from(e.read != k);
        bad += u64::from(conf.grid.get(before.position) != (k + 1) % n);
        bad += u64::from(conf.heading != heading);
        bad += u64::from(moved.x.abs() + moved.y.abs() != 1 || moved != heading.vector());
        // exactly one cell changed: support may move by at most one
        let (a, b) = (before.grid.support_len() as i64, conf.grid.support_len() as i64);
        bad += u64::from((a - b).abs() > 1);
    }
    bad
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn every_step_follows_the_rule(word in word_strategy(), cells in prop::collection::vec(((-6i64..6, -6i64..6), 0u8..10), 0..40), h in 0u8..4) {
        let n = word.states();
        let grid = Grid::from_cells(cells.into_iter().map(|((x, y), s)| (Pos::new(x, y), s % n)));
        let conf = AntConfiguration::new(grid, Pos::ORIGIN, Heading::from_index(h));
        prop_assert_eq!(violations(&word, conf, 1000), 0);
    }
}

#[test]
fn only_the_visited_cell_changes() {
    let word = RuleWord::parse("LLRR").unwrap();
    let mut conf = AntConfiguration::zero();
    for _ in 0..2000 {
        let before = conf.grid.cells();
        let at = conf.position;
        conf.step(&word);
        let after = conf.grid.cells();
        let diff: Vec<_> = before.iter().filter(|c| !after.contains(c)).chain(after.iter().filter(|c| !before.contains(c))).collect();
        assert!(diff.iter().all(|(p, _)| *p == at), "changes away from {at}: {diff:?}");
    }
}
