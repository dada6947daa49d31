use regmap_core::classical::GroupSpec;
use regmap_core::data;

#[test]
fn embedded_files_close_to_recorded_order() {
    for name in data::names() {
        let spec = GroupSpec::Data(name.to_string());
        let want = spec.expected_order().unwrap();
        let g = spec.build(2_000_000).unwrap();
        assert_eq!(g.order(), want, "{name}");
        assert_eq!(g.generators().len(), 2, "{name}");
        assert_eq!(g.classes().iter().map(|c| c.size).sum::<u64>(), g.order());
    }
}
