//! Small reference machines used by the tests, the examples and the CLI fixtures.

use crate::alphabet::{IoPartition, PartitionedAlphabet};
use crate::vpa::{Transition, Vpa};
use crate::vpts::{Iovpts, Vpts};

fn none() -> Vec<String> {
    Vec::new()
}

/// Accepts `aⁿbⁿ` for `n ≥ 0`.
pub fn anbn() -> Vpa {
    Vpa::new(
        PartitionedAlphabet::new(["a"], ["b"], none()),
        ["s0", "s1", "s2", "sf"],
        ["s0"],
        ["A", "B"],
        [
            Transition::push("s0", "a", "B", "s1"),
            Transition::push("s1", "a", "A", "s1"),
            Transition::pop("s1", "b", "A", "s2"),
            Transition::pop("s1", "b", "B", "sf"),
            Transition::pop("s2", "b", "A", "s2"),
            Transition::pop("s2", "b", "B", "sf"),
        ],
        ["s0", "sf"],
    )
}

/// A drink machine: `b` asks for a drink, `c` and `t` serve coffee or tea,
/// and a silent move may stop serving early.
pub fn drink_dispenser() -> Iovpts {
    let v = Vpts::new(
        PartitionedAlphabet::new(["b"], ["c", "t"], none()),
        ["s0", "s1"],
        ["s0"],
        ["Z"],
        [
            Transition::push("s0", "b", "Z", "s0"),
            Transition::pop("s0", "c", "Z", "s1"),
            Transition::pop("s0", "t", "Z", "s1"),
            Transition::pop("s1", "c", "Z", "s1"),
            Transition::pop("s1", "t", "Z", "s1"),
            Transition::silent("s1", "s0"),
        ],
    );
    Iovpts::new(v, IoPartition::new(["b"], ["c", "t"]))
}

fn abx() -> PartitionedAlphabet {
    PartitionedAlphabet::new(["a"], ["b", "x"], none())
}

fn abx_io() -> IoPartition {
    IoPartition::new(["a", "b"], ["x"])
}

fn spec_transitions(p: &str) -> Vec<Transition> {
    let s = |i: u8| format!("{p}{i}");
    vec![
        Transition::push(&s(0), "a", "A", &s(0)),
        Transition::pop(&s(0), "b", "A", &s(1)),
        Transition::pop(&s(0), "x", "A", &s(2)),
        Transition::push(&s(1), "a", "A", &s(1)),
        Transition::pop(&s(1), "b", "A", &s(2)),
        Transition::pop(&s(2), "b", "A", &s(1)),
        Transition::push(&s(2), "a", "A", &s(0)),
    ]
}

/// Deterministic IOVPTS specification over inputs `a`, `b` and output `x`.
pub fn pushdown_spec() -> Iovpts {
    let v = Vpts::new(
        abx(),
        ["s0", "s1", "s2"],
        ["s0"],
        ["A"],
        spec_transitions("s"),
    );
    Iovpts::new(v, abx_io())
}

/// A copy of [`pushdown_spec`] with states renamed `q0..q2`.
pub fn faithful_impl() -> Iovpts {
    let v = Vpts::new(
        abx(),
        ["q0", "q1", "q2"],
        ["q0"],
        ["A"],
        spec_transitions("q"),
    );
    Iovpts::new(v, abx_io())
}

/// [`faithful_impl`] plus an extra `x` on the empty stack from `q2`.
pub fn faulty_impl() -> Iovpts {
    let mut i = faithful_impl();
    i.vpts
        .transitions
        .insert(Transition::pop_bottom("q2", "x", "q1"));
    i
}

/// The complement of the observable traces of [`pushdown_spec`], drawn by hand
/// with an explicit error state.
pub fn spec_complement_drawn() -> Vpa {
    let mut t = spec_transitions("s");
    for (from, sym, z) in [
        ("s0", "b", None),
        ("s0", "x", None),
        ("s1", "x", Some("A")),
        ("s1", "x", None),
        ("s1", "b", None),
        ("s2", "x", Some("A")),
        ("s2", "x", None),
        ("s2", "b", None),
    ] {
        t.push(match z {
            Some(z) => Transition::pop(from, sym, z, "err"),
            None => Transition::pop_bottom(from, sym, "err"),
        });
    }
    t.extend([
        Transition::push("err", "a", "A", "err"),
        Transition::pop("err", "b", "A", "err"),
        Transition::pop("err", "x", "A", "err"),
        Transition::pop_bottom("err", "b", "err"),
        Transition::pop_bottom("err", "x", "err"),
    ]);
    Vpa::new(abx(), ["s0", "s1", "s2", "err"], ["s0"], ["A"], t, ["err"])
}

/// Accepts `aⁿbⁿx` for `n ≥ 1`.
pub fn desired_anbnx() -> Vpa {
    Vpa::new(
        abx(),
        ["d0", "d1", "d2"],
        ["d0"],
        ["A"],
        [
            Transition::push("d0", "a", "A", "d0"),
            Transition::pop("d0", "b", "A", "d1"),
            Transition::pop("d1", "b", "A", "d1"),
            Transition::pop_bottom("d1", "x", "d2"),
        ],
        ["d2"],
    )
}

/// Accepts `aⁿbⁿ⁺¹` for `n ≥ 0`.
pub fn forbidden_extra_b() -> Vpa {
    Vpa::new(
        abx(),
        ["f0", "f1", "f2"],
        ["f0"],
        ["A"],
        [
            Transition::push("f0", "a", "A", "f0"),
            Transition::pop_bottom("f0", "b", "f2"),
            Transition::pop("f0", "b", "A", "f1"),
            Transition::pop("f1", "b", "A", "f1"),
            Transition::pop_bottom("f1", "b", "f2"),
        ],
        ["f2"],
    )
}

/// Accepts `a⁺x`.
pub fn forbidden_a_plus_x() -> Vpa {
    Vpa::new(
        abx(),
        ["f0", "f1", "f2"],
        ["f0"],
        ["A"],
        [
            Transition::push("f0", "a", "A", "f1"),
            Transition::push("f1", "a", "A", "f1"),
            Transition::pop("f1", "x", "A", "f2"),
        ],
        ["f2"],
    )
}

/// One state, no finals: the empty language over `alphabet`.
pub fn nothing(alphabet: PartitionedAlphabet) -> Vpa {
    Vpa::new(alphabet, ["n0"], ["n0"], none(), [], none())
}

/// One state accepting every word over `alphabet`.
pub fn everything(alphabet: PartitionedAlphabet) -> Vpa {
    let mut t = Vec::new();
    for c in &alphabet.calls {
        t.push(Transition::push("u", c, "U", "u"));
    }
    for r in &alphabet.returns {
        t.push(Transition::pop("u", r, "U", "u"));
        t.push(Transition::pop_bottom("u", r, "u"));
    }
    for i in &alphabet.internals {
        t.push(Transition::simple("u", i, "u"));
    }
    Vpa::new(alphabet, ["u"], ["u"], ["U"], t, ["u"])
}
