use std::fmt::Write;

use automaton_groups::MealyMachine;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Moore diagram in DOT. Edges between the same pair of states are merged
/// into one edge whose label lists `x|y` pairs separated by commas. Nodes
/// follow state order; edges follow source order, then the first letter
/// that reaches each target.
pub fn to_dot(m: &MealyMachine) -> String {
    let letters = m.alphabet().letters();
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(m.name())).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for s in m.states() {
        writeln!(out, "  {};", quote(s)).unwrap();
    }
    for q in 0..m.num_states() {
        let mut edges: Vec<(usize, Vec<String>)> = Vec::new();
        for x in 0..letters.len() {
            let label = format!("{}|{}", letters[x], letters[m.out(q, x)]);
            let p = m.next(q, x);
            match edges.iter_mut().find(|(t, _)| *t == p) {
                Some((_, labels)) => labels.push(label),
                None => edges.push((p, vec![label])),
            }
        }
        for (p, labels) in edges {
            writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(m.state_name(q)),
                quote(m.state_name(p)),
                quote(&labels.join(","))
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use automaton_groups::families::{aleshin, make_bellaterra};

    #[test]
    fn aleshin_diagram() {
        let dot = to_dot(&aleshin());
        let expected = "digraph \"A\" {\n  rankdir=LR;\n  node [shape=circle];\n  \"a\";\n  \"b\";\n  \"c\";\n  \
\"a\" -> \"c\" [label=\"0|1\"];\n  \"a\" -> \"b\" [label=\"1|0\"];\n  \
\"b\" -> \"b\" [label=\"0|1\"];\n  \"b\" -> \"c\" [label=\"1|0\"];\n  \
\"c\" -> \"a\" [label=\"0|0,1|1\"];\n}\n";
        assert_eq!(dot, expected);
        assert_eq!(dot, to_dot(&aleshin()));
    }

    #[test]
    fn loops_merge() {
        let dot = to_dot(&make_bellaterra(0).unwrap());
        assert!(dot.contains("\"c.0\" -> \"c.0\" [label=\"0|1,1|0\"];"));
        assert_eq!(dot.matches("->").count(), 1);
    }
}
