//! Output validity, link completeness and golden snapshots.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the files under `tests/golden/`.

use std::path::{Path, PathBuf};
use std::process::Command;

use structmap_core::emit::{emit, EmitOptions, Format};
use structmap_core::pipeline::{compile, plan_map};
use structmap_core::seed::SEED_CATALOG;
use structmap_core::transform::select_map;
use structmap_core::{MapSpec, RenderPlan};

const FIXTURE: &str = r##"
section alpha color "#E69500"
section beta color "#7D3C98"
section gamma color "#2E86C1" merge-with beta

structure "Base" in alpha {
  properties: "x & y < z"
  wikipedia: "https://example.org/wiki/Base"
  representative
}

structure "Mixed \"Both\"" in alpha, beta {
  types: "Base" label "adds 50% more_stuff"
  functions: "f: A -> {B}", "g ~ h ^ k"
  wikipedia: "https://example.org/wiki/Mixed_(both)#x"
}

structure "Tri" in alpha, beta, gamma {
  types: "Mixed \"Both\""
  relations: "a [b] c \\ d"
  wikipedia: "https://example.org/wiki/Tri%20color"
}
"##;

fn fixture_plan(outline: bool) -> RenderPlan {
    let g = compile(FIXTURE).unwrap().graph;
    plan_map(&g, outline)
}

fn seed_full_plan() -> (usize, RenderPlan) {
    let g = compile(SEED_CATALOG).unwrap().graph;
    let full = select_map(&g, &MapSpec::Full).unwrap().graph;
    (g.nodes.len(), plan_map(&full, false))
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn check_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e} (run with UPDATE_GOLDEN=1)", path.display()));
    assert!(expected == actual, "{name} differs from its golden file");
}

#[test]
fn golden_snapshots() {
    for outline in [false, true] {
        let plan = fixture_plan(outline);
        for format in Format::ALL {
            let mut opts = EmitOptions::new(format).titled("fixture");
            if outline {
                opts = opts.outline();
            }
            let suffix = if outline { "-outline" } else { "" };
            check_golden(&format!("fixture{suffix}.{}", format.extension()), &emit(&plan, &opts));
        }
    }
}

fn xml_links(doc: &roxmltree::Document) -> Vec<String> {
    doc.descendants()
        .filter(|n| n.has_tag_name("a"))
        .filter_map(|n| n.attribute("href"))
        .filter(|h| !h.starts_with('#'))
        .map(str::to_string)
        .collect()
}

#[test]
fn svg_is_well_formed_with_one_link_per_node() {
    for plan in [fixture_plan(false), seed_full_plan().1, RenderPlan::default()] {
        let svg = emit(&plan, &EmitOptions::new(Format::Svg));
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let links = xml_links(&doc);
        let urls: Vec<String> = plan.nodes.iter().map(|n| n.wikipedia.clone()).collect();
        assert_eq!(links, urls);
    }
}

#[test]
fn html_is_well_formed_and_offline() {
    let (count, plan) = seed_full_plan();
    for plan in [plan, RenderPlan::default()] {
        let html = emit(&plan, &EmitOptions::new(Format::Html));
        let opts = roxmltree::ParsingOptions {
            allow_dtd: true,
            ..Default::default()
        };
        let doc = roxmltree::Document::parse_with_options(&html, opts).unwrap();
        assert!(doc.descendants().any(|n| n.has_tag_name("h1")));
        for n in doc.descendants() {
            assert!(n.attribute("src").is_none());
            if n.has_tag_name("link") || n.has_tag_name("script") {
                panic!("external resource element <{}>", n.tag_name().name());
            }
        }
        let index: Vec<_> = doc
            .descendants()
            .filter(|n| n.has_tag_name("a"))
            .filter_map(|n| n.attribute("href"))
            .filter(|h| h.starts_with("#node-"))
            .collect();
        assert_eq!(index.len(), plan.nodes.len());
        for target in index {
            let id = &target[1..];
            assert!(doc.descendants().any(|n| n.attribute("id") == Some(id)), "{id}");
        }
        assert_eq!(xml_links(&doc).len(), plan.nodes.len());
    }
    assert!(count >= 40);
}

#[test]
fn dot_parses() {
    for plan in [fixture_plan(false), seed_full_plan().1, RenderPlan::default()] {
        let dot = emit(&plan, &EmitOptions::new(Format::Dot));
        graphviz_rust::parse(&dot).unwrap_or_else(|e| panic!("{e}\n{dot}"));
        assert_eq!(dot.matches(" URL=\"").count(), plan.nodes.len());
        assert_eq!(dot.matches("\" -> \"").count(), plan.edges.len());
    }
}

#[test]
fn tikz_has_one_href_per_node() {
    let plan = fixture_plan(false);
    let tex = emit(&plan, &EmitOptions::new(Format::Tikz));
    assert_eq!(tex.matches("\\href{").count(), plan.nodes.len());
    assert_eq!(tex.matches("\\begin{tikzpicture}").count(), 1);
    assert!(tex.contains("left color=fillE69500!45, right color=fill7D3C98!45"));
}

#[test]
fn gradient_stops_are_evenly_spaced() {
    let plan = fixture_plan(false);
    let svg = emit(&plan, &EmitOptions::new(Format::Svg));
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let stops = |id: &str| -> Vec<(String, String)> {
        let grad = doc
            .descendants()
            .find(|n| n.has_tag_name("linearGradient") && n.attribute("id") == Some(id))
            .unwrap_or_else(|| panic!("no gradient {id}"));
        grad.children()
            .filter(|n| n.has_tag_name("stop"))
            .map(|n| {
                (
                    n.attribute("offset").unwrap().into(),
                    n.attribute("stop-color").unwrap().into(),
                )
            })
            .collect()
    };
    let idx = |name: &str| plan.nodes.iter().position(|n| n.name == name).unwrap();
    let s = |a: &str, b: &str| (a.to_string(), b.to_string());
    assert_eq!(
        stops(&format!("fill-{}", idx("Mixed \"Both\""))),
        vec![s("0%", "#E69500"), s("100%", "#7D3C98")]
    );
    assert_eq!(
        stops(&format!("fill-{}", idx("Tri"))),
        vec![s("0%", "#E69500"), s("50%", "#7D3C98"), s("100%", "#2E86C1")]
    );
    // Single-section nodes have no gradient.
    let gradients = doc.descendants().filter(|n| n.has_tag_name("linearGradient")).count();
    assert_eq!(gradients, 2);
}

#[test]
fn emission_is_deterministic() {
    let a = seed_full_plan().1;
    let b = seed_full_plan().1;
    for format in Format::ALL {
        let opts = EmitOptions::new(format);
        assert_eq!(emit(&a, &opts), emit(&b, &opts));
    }
}

/// Compiles the fixture and the seed full map when a LaTeX toolchain is
/// installed; otherwise reports the skip and passes.
#[test]
fn tikz_compiles_when_toolchain_present() {
    let Ok(status) = Command::new("pdflatex").arg("--version").output() else {
        eprintln!("skipped: pdflatex not found");
        return;
    };
    if !status.status.success() {
        eprintln!("skipped: pdflatex not usable");
        return;
    }
    let dir = std::env::temp_dir().join(format!("structmap-tikz-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, plan) in [("fixture", fixture_plan(false)), ("seed", seed_full_plan().1)] {
        let file = dir.join(format!("{name}.tex"));
        std::fs::write(&file, emit(&plan, &EmitOptions::new(Format::Tikz))).unwrap();
        let out = Command::new("pdflatex")
            .args(["-interaction=nonstopmode", "-halt-on-error"])
            .arg(&file)
            .current_dir(&dir)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    }
}
