//! Graphviz output. Node and edge order follows the automaton's ordered
//! maps, so exporting twice gives identical text.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::automata::dfa::Dfa;
use crate::automata::dpda::{Acceptance, Dpda, StackSym};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn dfa_dot<I: Ord + Clone>(d: &Dfa<I>, name: &str, input: impl Fn(&I) -> String) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  start [shape=point];").unwrap();
    for s in 0..d.states {
        let shape = if d.accepting.contains(&s) { "doublecircle" } else { "circle" };
        writeln!(out, "  s{s} [shape={shape}, label=\"{s}\"];").unwrap();
    }
    writeln!(out, "  start -> s{};", d.initial).unwrap();
    // Merge parallel arcs into one comma-separated label.
    let mut arcs: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for ((f, a), t) in &d.transitions {
        arcs.entry((*f, *t)).or_default().push(input(a));
    }
    for ((f, t), labels) in arcs {
        writeln!(out, "  s{f} -> s{t} [label={}];", quote(&labels.join(", "))).unwrap();
    }
    out.push_str("}\n");
    out
}

pub struct DpdaRender<'a, I, S, G> {
    pub input: &'a dyn Fn(&I) -> String,
    pub state: &'a dyn Fn(&S) -> String,
    pub stack: &'a dyn Fn(&G) -> String,
}

fn stack_word<G>(w: &[StackSym<G>], stack: &dyn Fn(&G) -> String) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    w.iter()
        .map(|s| match s {
            StackSym::Bottom => "⊥".to_string(),
            StackSym::Sym(g) => stack(g),
        })
        .collect::<Vec<_>>()
        .join("")
}

/// Arcs are labelled `input, top / push`.
pub fn dpda_dot<I, S, G>(d: &Dpda<I, S, G>, name: &str, r: &DpdaRender<I, S, G>) -> String
where
    I: Ord + Clone,
    S: Ord + Clone,
    G: Ord + Clone,
{
    let states: Vec<S> = d.states().into_iter().collect();
    let index: BTreeMap<&S, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let accepting = |s: &S| match &d.acceptance {
        Acceptance::States(f) => f.contains(s),
        Acceptance::Configurations(f) => f.iter().any(|(q, _)| q == s),
    };
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  start [shape=point];").unwrap();
    for (i, s) in states.iter().enumerate() {
        let shape = if accepting(s) { "doublecircle" } else { "circle" };
        writeln!(out, "  s{i} [shape={shape}, label={}];", quote(&(r.state)(s))).unwrap();
    }
    writeln!(
        out,
        "  start -> s{} [label={}];",
        index[&d.initial_state],
        quote(&stack_word(&d.initial_stack, r.stack))
    )
    .unwrap();
    for ((a, s, top), (t, push)) in &d.transitions {
        let label = format!(
            "{}, {} / {}",
            (r.input)(a),
            stack_word(std::slice::from_ref(top), r.stack),
            stack_word(push, r.stack)
        );
        writeln!(out, "  s{} -> s{} [label={}];", index[s], index[t], quote(&label)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::automata::dpda::DpdaBuilder;

    #[test]
    fn one_state_dfa() {
        let mut d = Dfa::new(BTreeSet::from(['a', 'b']), 1, 0).unwrap();
        d.add_transition(0, 'a', 0).unwrap();
        d.add_transition(0, 'b', 0).unwrap();
        d.accepting.insert(0);
        let text = dfa_dot(&d, "one", |c| c.to_string());
        assert_eq!(text.matches("[shape=doublecircle").count(), 1);
        assert!(text.contains("s0 -> s0 [label=\"a, b\"];"));
        assert_eq!(text, dfa_dot(&d, "one", |c| c.to_string()));
    }

    #[test]
    fn dpda_labels() {
        let mut b = DpdaBuilder::new(BTreeSet::from(['a']));
        b.add('a', 0u8, StackSym::Bottom, 1, vec![StackSym::Sym('X'), StackSym::Bottom]).unwrap();
        let d = b.build(0, vec![StackSym::Bottom], Acceptance::States(BTreeSet::from([1]))).unwrap();
        let r = DpdaRender {
            input: &|c: &char| c.to_string(),
            state: &|s: &u8| format!("o{s}"),
            stack: &|g: &char| g.to_string(),
        };
        let text = dpda_dot(&d, "p", &r);
        assert!(text.contains("label=\"a, ⊥ / X⊥\""), "{text}");
        assert_eq!(text, dpda_dot(&d, "p", &r));
    }
}
