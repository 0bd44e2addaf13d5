//! Synthetic catalogs for benchmarking.

use std::fmt::Write;

/// Catalog text with `structures` structures spread over `sections`
/// sections. Structure `i` extends up to three earlier structures, picked by
/// fixed arithmetic so the output never changes between runs. About one in
/// eight structures sits in two sections.
pub fn synthetic_catalog(structures: usize, sections: usize) -> String {
    let sections = sections.max(1);
    let mut out = String::new();
    for s in 0..sections {
        let shade = 0x20 + (s * 37) % 0xC0;
        let _ = writeln!(
            out,
            "section s{s} color \"#{shade:02X}{:02X}{:02X}\"",
            0xFF - shade,
            (shade * 3) % 0x100
        );
    }
    for i in 0..structures {
        let home = i % sections;
        let mut ins = format!("s{home}");
        if i % 8 == 7 && sections > 1 {
            let _ = write!(ins, ", s{}", (home + 1) % sections);
        }
        let _ = writeln!(out, "\nstructure \"Structure {i}\" in {ins} {{");
        let mut parents: Vec<usize> = Vec::new();
        if i > 0 {
            parents.push(i - 1);
            parents.push(i / 2);
            parents.push((i * 7 + 3) % i);
        }
        parents.sort_unstable();
        parents.dedup();
        if !parents.is_empty() {
            let refs: Vec<String> = parents
                .iter()
                .map(|p| {
                    if p % 3 == 0 {
                        format!("\"Structure {p}\" label \"adds axiom {p}\"")
                    } else {
                        format!("\"Structure {p}\"")
                    }
                })
                .collect();
            let _ = writeln!(out, "  types: {}", refs.join(", "));
        }
        let _ = writeln!(out, "  functions: \"f{i}(x, y)\", \"g{i}(x)\"");
        let _ = writeln!(
            out,
            "  properties: \"f{i}(x, g{i}(y)) = g{i}(f{i}(x, y)) for every x and y in the carrier\""
        );
        let _ = writeln!(out, "  wikipedia: \"https://en.wikipedia.org/wiki/Structure_{i}\"");
        out.push_str("}\n");
    }
    out
}
