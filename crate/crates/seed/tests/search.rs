use antlab_core::RuleWord;
use antlab_detect::{BehaviorClass, ClassifyBudget, DetectBudget};
use antlab_seed::{load_pattern, save_pattern, search, shipped, BehaviorCatalog, Generator, SeedSearchSpec};

fn spec(word: &str, generator: Generator) -> SeedSearchSpec {
    let mut budget = ClassifyBudget::default();
    budget.highway = DetectBudget::new(20_000, 2_000);
    budget.recurrence.max_steps = 20_000;
    SeedSearchSpec { word: RuleWord::parse(word).unwrap(), generator, budget, dedupe: true }
}

#[test]
fn langton_one_cell_seeds_give_one_class() {
    let cat = search(&spec("LR", Generator::Exhaustive { width: 1, height: 1, max_nonzero: 1 })).unwrap();
    assert_eq!(cat.entries.len(), 8);
    assert_eq!(cat.count(BehaviorClass::Highway), 8);
    // one per drift direction, a single class up to rotation
    assert_eq!(cat.highway_classes.len(), 4);
    assert_eq!(cat.rotation_classes(), 1);
    assert!(cat.highway_classes.iter().all(|c| c.period == 104 && c.drift.map(i64::abs) == [2, 2]));
}

#[test]
fn empty_generator_gives_empty_catalog() {
    let cat = search(&spec("LLR", Generator::List { patterns: vec![] })).unwrap();
    assert!(cat.entries.is_empty() && cat.highway_classes.is_empty());
}

#[test]
fn search_is_deterministic() {
    let g = Generator::Random { density: 0.4, width: 3, height: 3, count: 40, seed: 9 };
    let a = search(&spec("LLRR", g.clone())).unwrap().to_json_string();
    let b = search(&spec("LLRR", g)).unwrap().to_json_string();
    assert_eq!(a, b);
}

#[test]
fn merge_is_idempotent() {
    let g = Generator::Exhaustive { width: 1, height: 1, max_nonzero: 1 };
    let cat = search(&spec("LR", g)).unwrap();
    let mut merged = cat.clone();
    merged.merge(&cat);
    assert_eq!(merged, cat);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lr.json");
    cat.append_to(&path).unwrap();
    let twice = cat.append_to(&path).unwrap();
    assert_eq!(twice, cat);
    assert_eq!(BehaviorCatalog::load(&path).unwrap(), cat);
}

#[test]
fn list_generator_separates_the_two_llrrrl_highways() {
    // the searched 800 seed and the constructed gamma member of period 800 + 2·96
    let texts = vec![shipped::pattern("llrrrl_h800").unwrap().to_text(), shipped::gamma().construct(2).unwrap().to_text()];
    let mut s = spec("LLRRRL", Generator::List { patterns: texts });
    s.budget.highway = DetectBudget::new(200_000, 2_000);
    let cat = search(&s).unwrap();
    assert_eq!(cat.highway_classes.len(), 2);
    let mut periods: Vec<u64> = cat.highway_classes.iter().map(|c| c.period).collect();
    periods.sort();
    assert_eq!(periods, [800, 992]);
    assert!(cat.highway_classes.iter().all(|c| c.drift[0].abs() == 4 && c.drift[1].abs() == 4));
}

#[test]
fn pattern_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (name, _) in shipped::FILES {
        let p = shipped::pattern(name).unwrap();
        let path = dir.path().join(format!("{name}.ant"));
        save_pattern(&p, &path).unwrap();
        assert_eq!(load_pattern(&path).unwrap(), p);
    }
}

#[test]
fn minimal_pattern_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("min.ant");
    std::fs::write(&path, "ant LR 0 0 U\norigin 0 0\n").unwrap();
    let p = load_pattern(&path).unwrap();
    assert!(p.cells.is_empty());
    std::fs::write(&path, "ant LR 0 0 U\norigin 0 0\n2\n").unwrap();
    assert!(load_pattern(&path).is_err(), "state 2 is outside LR");
}
