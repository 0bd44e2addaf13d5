//! Property tests against brute-force oracles from the testkit.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::Rng;

use structmap_core::layout::{layout, order_layers, size_nodes, Slot};
use structmap_core::model::ExtensionRef;
use structmap_core::seed::SEED_CATALOG;
use structmap_core::testkit::{self, closure, edge_pairs, has_cycle, longest_path_levels, pairwise_crossings};
use structmap_core::transform::{compute_levels, transitive_reduce};
use structmap_core::{parse_catalog, print_catalog, resolve, ResolvedGraph, SemanticErrorKind};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn reduced_and_leveled(g: &ResolvedGraph) -> ResolvedGraph {
    let mut r = transitive_reduce(g).unwrap().graph;
    compute_levels(&mut r).unwrap();
    r
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let cat = testkit::random_catalog(&mut testkit::rng(seed));
        let printed = print_catalog(&cat);
        let back = parse_catalog(&printed).map_err(|e| TestCaseError::fail(format!("{e}\n{printed}")))?;
        prop_assert_eq!(&back, &cat);
        prop_assert_eq!(print_catalog(&back), printed);
    }

    #[test]
    fn error_lines_point_at_the_damage(line in 0usize..400, junk in prop::sample::select(vec!["@", ",", "{", "}", "\"", "label"])) {
        let lines: Vec<&str> = SEED_CATALOG.lines().collect();
        let line = line % lines.len();
        let mut broken: Vec<String> = lines.iter().map(|l| l.to_string()).collect();
        broken[line] = format!("{junk}{}", broken[line]);
        let src = broken.join("\n");
        match parse_catalog(&src) {
            Err(e) => {
                // Punctuation can legally continue the previous line's
                // construct, so only the line is pinned. A character outside
                // the alphabet fails on the spot.
                prop_assert_eq!(e.line as usize, line + 1, "{}", e);
                if junk == "@" {
                    prop_assert_eq!(e.column, 1, "{}", e);
                }
            }
            Ok(_) => prop_assert!(false, "damage on line {} went unnoticed", line + 1),
        }
    }

    #[test]
    fn resolve_agrees_with_closure_oracle(seed in any::<u64>()) {
        let cat = testkit::random_resolvable_catalog(&mut testkit::rng(seed), 12);
        let index = |name: &str| cat.structures.iter().position(|s| s.name == name).unwrap();
        let mut pairs = BTreeSet::new();
        for (i, s) in cat.structures.iter().enumerate() {
            for r in &s.types {
                pairs.insert((index(&r.target), i));
            }
        }
        let pairs: Vec<_> = pairs.into_iter().collect();
        let n = cat.structures.len();
        match resolve(&cat) {
            Ok(g) => {
                prop_assert!(!has_cycle(n, &pairs));
                let mut got = edge_pairs(&g);
                got.sort();
                prop_assert_eq!(got, pairs);
            }
            Err(errors) => {
                prop_assert!(has_cycle(n, &pairs));
                prop_assert!(errors.iter().all(|e| e.kind == SemanticErrorKind::Cycle));
                // One error per strongly connected component with a cycle.
                let c = closure(n, &pairs);
                let mut components = BTreeSet::new();
                for (i, row) in c.iter().enumerate() {
                    let members: Vec<usize> = (0..n).filter(|&j| row[j] && c[j][i]).collect();
                    if members.len() > 1 {
                        components.insert(members);
                    }
                }
                prop_assert_eq!(errors.len(), components.len());
                for e in &errors {
                    let path = &e.cycle_path;
                    prop_assert!(path.len() >= 3);
                    prop_assert_eq!(path.first(), path.last());
                    for w in path.windows(2) {
                        // Witness follows the "extends" direction.
                        let child = cat.lookup(&w[0]).unwrap();
                        prop_assert!(child.types.iter().any(|r| r.target == w[1]));
                    }
                }
            }
        }
    }

    #[test]
    fn k_violations_give_k_errors(seed in any::<u64>(), k in 0usize..6) {
        let mut rng = testkit::rng(seed);
        let mut cat = testkit::random_resolvable_catalog(&mut rng, 10);
        // Make it acyclic: only keep references to earlier structures.
        for (i, s) in cat.structures.iter_mut().enumerate() {
            s.types.retain(|r| r.target[1..].parse::<usize>().unwrap() < i);
        }
        prop_assume!(cat.structures.len() >= k);
        let mut victims: Vec<usize> = (0..cat.structures.len()).collect();
        rand::seq::SliceRandom::shuffle(&mut victims[..], &mut rng);
        let mut expected = Vec::new();
        for (j, &v) in victims[..k].iter().enumerate() {
            let s = &mut cat.structures[v];
            if rng.gen_bool(0.5) {
                s.types.push(ExtensionRef::new(format!("Missing{j}")));
                expected.push(SemanticErrorKind::UnresolvedTarget);
            } else {
                s.sections.push(format!("nowhere{j}"));
                expected.push(SemanticErrorKind::UnknownSection);
            }
        }
        let result = resolve(&cat);
        if k == 0 {
            prop_assert!(result.is_ok());
        } else {
            let mut kinds: Vec<_> = result.unwrap_err().into_iter().map(|e| e.kind).collect();
            kinds.sort_by_key(|k| format!("{k:?}"));
            expected.sort_by_key(|k| format!("{k:?}"));
            prop_assert_eq!(kinds, expected);
        }
    }
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn reduction_is_sound_minimal_and_idempotent(seed in any::<u64>()) {
        let g = testkit::random_dag(&mut testkit::rng(seed), 12);
        let n = g.nodes.len();
        let reduced = transitive_reduce(&g).unwrap().graph;
        let before = closure(n, &edge_pairs(&g));
        let after_pairs = edge_pairs(&reduced);
        prop_assert_eq!(closure(n, &after_pairs), before.clone());

        for (i, e) in reduced.edges.iter().enumerate() {
            if e.keep {
                continue;
            }
            let without: Vec<_> = after_pairs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &p)| p).collect();
            prop_assert!(!closure(n, &without)[e.from][e.to], "{}->{} is redundant", e.from, e.to);
        }
        for e in g.edges.iter().filter(|e| e.keep) {
            prop_assert!(after_pairs.contains(&(e.from, e.to)));
        }
        let again = transitive_reduce(&reduced).unwrap();
        prop_assert_eq!(edge_pairs(&again.graph), after_pairs);
        prop_assert!(again.removed.is_empty());
    }

    #[test]
    fn levels_match_longest_paths(seed in any::<u64>()) {
        let g = testkit::random_dag(&mut testkit::rng(seed), 10);
        let r = reduced_and_leveled(&g);
        let oracle = longest_path_levels(r.nodes.len(), &edge_pairs(&r));
        let levels: Vec<u32> = r.nodes.iter().map(|n| n.level).collect();
        prop_assert_eq!(levels, oracle);
        for e in &r.edges {
            prop_assert!(r.nodes[e.from].level < r.nodes[e.to].level);
        }
    }
}

/// Crossings of an ordering, recounted edge by edge through the dummy slots.
fn recount_crossings(g: &ResolvedGraph, layers: &[Vec<Slot>]) -> usize {
    let pos = |slot: Slot| layers.iter().find_map(|l| l.iter().position(|&s| s == slot)).unwrap();
    let mut per_gap = vec![Vec::new(); layers.len().saturating_sub(1)];
    for (ei, e) in g.edges.iter().enumerate() {
        let (lu, lv) = (g.nodes[e.from].level, g.nodes[e.to].level);
        let mut chain = vec![Slot::Node(e.from)];
        chain.extend((lu + 1..lv).map(|layer| Slot::Dummy { edge: ei, layer }));
        chain.push(Slot::Node(e.to));
        for (k, w) in chain.windows(2).enumerate() {
            per_gap[lu as usize + k].push((pos(w[0]), pos(w[1])));
        }
    }
    per_gap.iter().map(|segs| pairwise_crossings(segs)).sum()
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn layout_invariants(seed in any::<u64>()) {
        let mut g = reduced_and_leveled(&testkit::random_dag(&mut testkit::rng(seed), 12));
        size_nodes(&mut g);
        let plan = layout(&g);
        prop_assert_eq!(&layout(&g), &plan);

        for (i, a) in plan.nodes.iter().enumerate() {
            prop_assert!(a.left() >= 0.0 && a.top() >= 0.0);
            prop_assert!(a.right() <= plan.width + 1e-9 && a.bottom() <= plan.height + 1e-9);
            for b in &plan.nodes[i + 1..] {
                prop_assert!(!a.overlaps(b), "{} overlaps {}", a.name, b.name);
            }
        }
        for e in &plan.edges {
            prop_assert!(plan.nodes[e.from].on_boundary(e.source));
            prop_assert!(plan.nodes[e.to].on_boundary(e.target));
            prop_assert!(e.source.y < e.target.y);
            prop_assert!(plan.nodes[e.from].center.y < plan.nodes[e.to].center.y);
        }

        let ordering = order_layers(&g);
        prop_assert!(ordering.crossings <= ordering.seed_crossings);
        prop_assert_eq!(recount_crossings(&g, &ordering.layers), ordering.crossings);
    }
}
