use proptest::prelude::*;
use zigzag_core::st::{st_membership, PhaseDecider};
use zigzag_core::tape::{mark, project, step_t, step_th, step_tt, unmark};
use zigzag_core::trace::{all_tapes, enumerate_lst, trace_h, trace_t, Budget, TraceSymbolT};
use zigzag_core::{fixture, Configuration, Head, State, Symbol, TuringMachine};

const FIXTURES: [&str; 5] = ["PING-PONG", "LEFT", "BOUNCE_SHIFT", "NLEVEL(1)", "NLEVEL(2)"];

fn configuration() -> impl Strategy<Value = (TuringMachine, Configuration)> {
    (0..FIXTURES.len(), 0i64..5, any::<u64>(), -6i64..=6, any::<u16>()).prop_map(|(f, r, seed, pos, q)| {
        let m = fixture(FIXTURES[f]).unwrap();
        let a = m.alphabet_size() as u64;
        let cells = (0..2 * r + 1).map(|i| Symbol(((seed >> (2 * i)) % a) as u16)).collect();
        let pad = Symbol((seed >> 60) as u16 % a as u16);
        let head = Head {
            state: State(q % m.state_count() as u16),
            pos,
        };
        let c = Configuration::with_window(-r, cells, pad, Some(head));
        (m, c)
    })
}

proptest! {
    #[test]
    fn marking_commutes((m, c) in configuration()) {
        let lhs = mark(&step_t(&m, &c).unwrap());
        let rhs = step_th(&m, &mark(&c));
        prop_assert!((-30..=30).all(|i| lhs.get(i) == rhs.get(i)));
        prop_assert!(unmark(&mark(&c)).agrees_on(&c, -30, 30));
    }

    #[test]
    fn projection_commutes((m, c) in configuration()) {
        let lhs = project(&step_t(&m, &c).unwrap()).unwrap();
        let rhs = step_tt(&m, &project(&c).unwrap());
        prop_assert_eq!(lhs.state, rhs.state);
        prop_assert!((-30..=30).all(|i| lhs.tape.get(i) == rhs.tape.get(i)));
    }

    #[test]
    fn shift_commutes((m, c) in configuration(), k in -7i64..=7) {
        let lhs = step_t(&m, &c.shifted(k)).unwrap();
        let rhs = step_t(&m, &c).unwrap().shifted(k);
        prop_assert!(lhs.agrees_on(&rhs, -30, 30));
    }

    /// The trace of the next configuration is the shifted trace.
    #[test]
    fn traces_are_shift_factors((m, c) in configuration(), n in 1usize..12) {
        let x = mark(&c);
        let h = trace_h(&m, &x, n + 1);
        prop_assert_eq!(&trace_h(&m, &step_th(&m, &x), n)[..], &h[1..]);
        let p = project(&c).unwrap();
        let t = trace_t(&m, &p, n + 1);
        prop_assert_eq!(&trace_t(&m, &step_tt(&m, &p), n)[..], &t[1..]);
    }

    /// A length-n trace only reads cells within distance n of the head.
    #[test]
    fn window_is_sufficient((m, c) in configuration(), n in 1usize..10, noise in any::<u64>()) {
        let head = c.head.unwrap();
        let a = m.alphabet_size() as u64;
        let reach = n as i64;
        let far: Vec<Symbol> = (0..8).map(|i| Symbol(((noise >> (3 * i)) % a) as u16)).collect();
        let mut d = c.clone();
        for (k, &s) in far.iter().enumerate() {
            d.tape.set(head.pos + reach + k as i64, s);
            d.tape.set(head.pos - reach - k as i64, s);
        }
        prop_assert_eq!(trace_t(&m, &project(&c).unwrap(), n), trace_t(&m, &project(&d).unwrap(), n));
    }

    /// Every length-n trace word of PING-PONG is accepted by the width-1 decider.
    #[test]
    fn traces_are_accepted(q in 0u16..2, n in 0usize..9) {
        let m = fixture("PING-PONG").unwrap();
        let c = Configuration::uniform(Symbol(0), State(q), 0);
        let word = trace_t(&m, &project(&c).unwrap(), n);
        prop_assert!(st_membership(&PhaseDecider::new(&m, 1), &word));
    }
}

#[test]
fn decider_rejects_non_traces() {
    let m = fixture("LEFT").unwrap();
    let decider = PhaseDecider::new(&m, 0);
    let words = enumerate_lst(&m, 4, Budget::default()).unwrap().words;
    for w in all_tapes(2, 4) {
        let word: Vec<_> = w.iter().map(|&s| TraceSymbolT::new(s, State(0))).collect();
        assert_eq!(st_membership(&decider, &word), words.contains(&word));
    }
}
