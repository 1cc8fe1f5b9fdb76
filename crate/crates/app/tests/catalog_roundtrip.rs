use fusion_app::scenario::{scenarios_to_toml, Scenario};
use fusion_app::{parse_scenarios, Catalog, GroupSpec};
use proptest::prelude::*;

fn permutation(degree: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((0..degree as u32).collect::<Vec<_>>()).prop_shuffle()
}

fn group_spec() -> impl Strategy<Value = GroupSpec> {
    (1usize..7).prop_flat_map(|degree| {
        (
            "[A-Za-z][A-Za-z0-9(),:]{0,8}",
            Just(degree),
            prop::collection::vec(permutation(degree), 0..4),
        )
            .prop_map(|(name, degree, generators)| GroupSpec {
                name,
                degree,
                generators,
            })
    })
}

fn catalog() -> impl Strategy<Value = Catalog> {
    prop::collection::vec(group_spec(), 0..5).prop_map(|mut groups| {
        for (i, g) in groups.iter_mut().enumerate() {
            g.name = format!("{}-{i}", g.name);
        }
        Catalog::new(groups).unwrap()
    })
}

fn scenario() -> impl Strategy<Value = Scenario> {
    (
        "[a-z][a-z0-9-]{0,10}",
        prop::sample::select(vec!["S3", "S4", "Q8"]),
        prop::sample::select(vec![2u32, 3, 5]),
        prop::option::of(prop::collection::vec(permutation(4), 1..3)),
        prop::option::of(prop::collection::vec(permutation(4), 1..3)),
        0usize..6,
        prop::collection::vec(
            prop::sample::select(vec!["saturation", "control", "mislin", "dims", "strata", "automizers"]),
            0..4,
        ),
    )
        .prop_map(|(id, group, p, sub, amb, max_degree, checks)| Scenario {
            id,
            group: group.to_string(),
            p,
            subgroup_gens: sub,
            ambient_sub_gens: amb,
            max_degree,
            checks: checks.into_iter().map(String::from).collect(),
        })
}

proptest! {
    #[test]
    fn catalog_round_trips(c in catalog()) {
        let text = c.to_toml();
        let back = Catalog::parse(&text, "generated").unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(back.to_toml(), text);
        prop_assert_eq!(back.sha256(), c.sha256());
    }

    #[test]
    fn scenarios_round_trip(list in prop::collection::vec(scenario(), 0..4)) {
        let text = scenarios_to_toml(&list);
        let back = parse_scenarios(&text, "generated").unwrap();
        prop_assert_eq!(&back, &list);
        prop_assert_eq!(scenarios_to_toml(&back), text);
    }
}

#[test]
fn hand_written_catalog_canonicalizes() {
    let text = "format = 1\n\n[[groups]]\nname   = \"V\"\ngenerators = [ [1,0,3,2], [2,3,0,1] ]\ndegree = 4\n";
    let c = Catalog::parse(text, "hand").unwrap();
    let canonical = c.to_toml();
    assert_eq!(Catalog::parse(&canonical, "canonical").unwrap().to_toml(), canonical);
    assert!(canonical.contains("generators = [[1, 0, 3, 2], [2, 3, 0, 1]]"), "{canonical}");
}
