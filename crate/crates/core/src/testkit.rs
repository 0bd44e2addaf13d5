//! Random generators and brute-force oracles for tests.
//!
//! Everything here is deliberately naive (Floyd–Warshall closure,
//! exhaustive path enumeration) so it can check the real passes without
//! sharing their code paths.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{Catalog, ExtensionRef, Rgb, SectionDecl, SourcePos, StructureDef};
use crate::resolve::{EdgeInfo, NodeInfo, ResolvedGraph};

pub use rand_chacha::ChaCha8Rng as TestRng;

pub fn rng(seed: u64) -> TestRng {
    use rand::SeedableRng;
    TestRng::seed_from_u64(seed)
}

fn plain_node(name: &str) -> NodeInfo {
    let def = StructureDef::new(name, &["s"]);
    NodeInfo::new(Arc::new(def), vec![Rgb::new(0x88, 0x88, 0x88)])
}

fn plain_section() -> SectionDecl {
    SectionDecl {
        id: "s".into(),
        color: Rgb::new(0x88, 0x88, 0x88),
        merge_with: None,
        source_pos: SourcePos::default(),
    }
}

/// Graph with the given node names and edges, all in one section.
pub fn graph(names: &[&str], edges: &[(usize, usize)]) -> ResolvedGraph {
    ResolvedGraph {
        nodes: names.iter().map(|n| plain_node(n)).collect(),
        edges: edges.iter().map(|&(a, b)| EdgeInfo::new(a, b)).collect(),
        sections: vec![plain_section()],
    }
}

/// Path graph `names[0] -> names[1] -> ...`.
pub fn chain(names: &[&str]) -> ResolvedGraph {
    let edges: Vec<_> = (1..names.len()).map(|i| (i - 1, i)).collect();
    graph(names, &edges)
}

/// Random DAG with 1..=max_nodes nodes. Edges only go from a lower to a
/// higher position in a random permutation, so the result is acyclic but
/// edge direction is not correlated with node index.
pub fn random_dag(rng: &mut impl Rng, max_nodes: usize) -> ResolvedGraph {
    let n = rng.gen_range(1..=max_nodes);
    let density: f64 = rng.gen_range(0.05..0.6);
    let keep_rate: f64 = rng.gen_range(0.0..0.3);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let names: Vec<String> = (0..n).map(|i| format!("n{i:02}")).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut g = graph(&name_refs, &[]);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                let mut e = EdgeInfo::new(perm[a], perm[b]);
                e.keep = rng.gen_bool(keep_rate);
                if rng.gen_bool(0.3) {
                    e.label = Some(format!("e{a}{b}"));
                }
                g.edges.push(e);
            }
        }
    }
    g.edges.shuffle(rng);
    g
}

/// Reflexive transitive closure by Floyd–Warshall over an adjacency matrix.
pub fn closure(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in edges {
        m[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if m[i][k] && m[k][j] {
                    m[i][j] = true;
                }
            }
        }
    }
    m
}

pub fn edge_pairs(g: &ResolvedGraph) -> Vec<(usize, usize)> {
    g.edges.iter().map(|e| (e.from, e.to)).collect()
}

/// True when the pair list contains a directed cycle (closure has a
/// non-trivial loop).
pub fn has_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut strict = vec![vec![false; n]; n];
    for &(a, b) in edges {
        strict[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if strict[i][k] && strict[k][j] {
                    strict[i][j] = true;
                }
            }
        }
    }
    (0..n).any(|i| strict[i][i])
}

/// Longest path ending at each node, by enumerating every path from every
/// node with a depth-first walk. Exponential; only for small graphs.
pub fn longest_path_levels(n: usize, edges: &[(usize, usize)]) -> Vec<u32> {
    fn walk(v: usize, depth: u32, edges: &[(usize, usize)], best: &mut [u32]) {
        best[v] = best[v].max(depth);
        for &(a, b) in edges {
            if a == v {
                walk(b, depth + 1, edges, best);
            }
        }
    }
    let mut best = vec![0; n];
    for v in 0..n {
        walk(v, 0, edges, &mut best);
    }
    best
}

/// Number of crossings between two adjacent layers, counted pairwise.
pub fn pairwise_crossings(edges: &[(usize, usize)]) -> usize {
    let mut count = 0;
    for (i, &(a1, b1)) in edges.iter().enumerate() {
        for &(a2, b2) in &edges[i + 1..] {
            if (a1 < a2 && b1 > b2) || (a1 > a2 && b1 < b2) {
                count += 1;
            }
        }
    }
    count
}

const ALPHABET: &[char] = &[
    'a', 'b', 'Z', ' ', '"', '\\', '#', ',', '{', '}', 'é', '∘', '\n', '7', '-', '_', ':', '$',
];

fn random_text(rng: &mut impl Rng, min_len: usize) -> String {
    let len = rng.gen_range(min_len..min_len + 8);
    (0..len).map(|_| *ALPHABET.choose(rng).unwrap()).collect()
}

fn random_ident(rng: &mut impl Rng) -> String {
    const KEYWORDS: &[&str] = &["in", "section", "color", "keep", "label", "structure"];
    if rng.gen_bool(0.1) {
        return KEYWORDS.choose(rng).unwrap().to_string();
    }
    let first = rng.gen_range(b'a'..=b'z') as char;
    let rest: String = (0..rng.gen_range(0..6))
        .map(|_| *b"abcxyz019_".choose(rng).unwrap() as char)
        .collect();
    format!("{first}{rest}")
}

fn random_list(rng: &mut impl Rng) -> Vec<String> {
    let len = if rng.gen_bool(0.4) { 0 } else { rng.gen_range(1..4) };
    (0..len).map(|_| random_text(rng, 0)).collect()
}

/// A random well-formed catalog. Names and references need not resolve;
/// only grammar-level well-formedness is guaranteed.
pub fn random_catalog(rng: &mut impl Rng) -> Catalog {
    let mut cat = Catalog::default();
    for _ in 0..rng.gen_range(0..5) {
        let id = random_ident(rng);
        let merge_with = rng.gen_bool(0.3).then(|| random_ident(rng));
        cat.sections.push(SectionDecl {
            id,
            color: Rgb(rng.gen()),
            merge_with,
            source_pos: SourcePos::default(),
        });
    }
    for _ in 0..rng.gen_range(0..6) {
        let mut def = StructureDef {
            name: random_text(rng, 1),
            sections: (0..rng.gen_range(1..4)).map(|_| random_ident(rng)).collect(),
            functions: random_list(rng),
            relations: random_list(rng),
            properties: random_list(rng),
            wikipedia: if rng.gen_bool(0.7) {
                random_text(rng, 0)
            } else {
                String::new()
            },
            representative: rng.gen_bool(0.3),
            ..StructureDef::default()
        };
        for _ in 0..rng.gen_range(0..4) {
            def.types.push(ExtensionRef {
                target: random_text(rng, 1),
                label: rng.gen_bool(0.5).then(|| random_text(rng, 0)),
                keep: rng.gen_bool(0.3),
            });
        }
        cat.structures.push(def);
    }
    cat
}

/// A random catalog that always parses and whose sections all resolve. The
/// extension references may form cycles.
pub fn random_resolvable_catalog(rng: &mut impl Rng, max_structures: usize) -> Catalog {
    let mut cat = Catalog::default();
    cat.sections.push(plain_section());
    let n = rng.gen_range(1..=max_structures);
    let density: f64 = rng.gen_range(0.02..0.3);
    let names: Vec<String> = (0..n).map(|i| format!("S{i}")).collect();
    for (i, name) in names.iter().enumerate() {
        let mut def = StructureDef::new(name.clone(), &["s"]);
        for (j, target) in names.iter().enumerate() {
            if i != j && rng.gen_bool(density) {
                def.types.push(ExtensionRef::new(target.clone()));
            }
        }
        cat.structures.push(def);
    }
    cat
}
