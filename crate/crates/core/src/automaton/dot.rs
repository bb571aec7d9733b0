use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::GeodesicAutomaton;

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Graphviz text for the automaton. Parallel edges are merged into one
/// edge whose label lists the letters in alphabet order.
pub fn export_dot(aut: &GeodesicAutomaton, show_fail: bool) -> String {
    let mut out = String::new();
    let n = aut.num_states();
    let letters = aut.num_letters();
    out.push_str("digraph geodesic {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=doublecircle];\n");
    out.push_str("  init [shape=point];\n");
    for s in 0..n {
        let _ = writeln!(out, "  s{s};");
    }
    if show_fail {
        let _ = writeln!(out, "  fail [shape=circle];");
    }
    let _ = writeln!(out, "  init -> s{};", aut.start());
    for s in 0..n {
        let mut targets: Vec<(u32, Vec<&str>)> = Vec::new();
        for a in 0..letters {
            let t = aut.transitions()[s * letters + a];
            if t == aut.fail() && !show_fail {
                continue;
            }
            match targets.iter_mut().find(|(u, _)| *u == t) {
                Some((_, labels)) => labels.push(&aut.letter_names()[a]),
                None => targets.push((t, alloc::vec![aut.letter_names()[a].as_str()])),
            }
        }
        targets.sort_by_key(|(t, _)| *t);
        for (t, labels) in targets {
            let target = if t == aut.fail() { String::from("fail") } else { alloc::format!("s{t}") };
            let _ = writeln!(out, "  s{s} -> {target} [label={}];", quote(&labels.join(",")));
        }
    }
    if show_fail {
        let all: Vec<&str> = aut.letter_names().iter().map(|s| s.as_str()).collect();
        let _ = writeln!(out, "  fail -> fail [label={}];", quote(&all.join(",")));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_state_loop() {
        let aut =
            GeodesicAutomaton::from_parts(0, 1, alloc::vec![String::from("a")], alloc::vec![1], alloc::vec![0], 0)
                .unwrap();
        let expected = "digraph geodesic {\n  rankdir=LR;\n  node [shape=doublecircle];\n  init [shape=point];\n  s0;\n  init -> s0;\n  s0 -> s0 [label=\"a\"];\n}\n";
        assert_eq!(export_dot(&aut, false), expected);
    }
}
