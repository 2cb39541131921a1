//! Small algebras used throughout the examples and tests.

use crate::algebra::{Algebra, QuiverPresentation, Session};

fn build(session: Session, vertices: &[&str], arrows: &[(&str, &str, &str)], relations: &[&str], bound: usize) -> Algebra {
    let q = QuiverPresentation::new(session, vertices, arrows, relations, bound).expect("corpus presentation");
    Algebra::from_quiver(&q).expect("corpus algebra")
}

/// `k⟨1 ⇄ 2⟩` with arrows `a: 1→2`, `b: 2→1` and relations `aba`, `bab`.
/// Dimension 6, symmetric.
pub fn sn2(session: Session) -> Algebra {
    build(session, &["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &["a b a", "b a b"], 3)
}

/// Cyclic quiver on `n` vertices (arrows `a1: 1→2`, ..., `an: n→1`) with all
/// paths of length `loewy` set to zero. Symmetric when `loewy ≡ 1 (mod n)`.
pub fn symmetric_nakayama(session: Session, n: usize, loewy: usize) -> Algebra {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let labels: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    let vs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let arrows: Vec<(&str, &str, &str)> =
        (0..n).map(|i| (labels[i].as_str(), vs[i], vs[(i + 1) % n])).collect();
    build(session, &vs, &arrows, &[], loewy)
}

/// The 3-vertex symmetric Nakayama algebra with Loewy length 4 (dimension 12).
pub fn nakayama3(session: Session) -> Algebra {
    symmetric_nakayama(session, 3, 4)
}

/// `k[x]/(x²)`.
pub fn dual_numbers(session: Session) -> Algebra {
    build(session, &["1"], &[("x", "1", "1")], &[], 2)
}

/// `k⟨1 ⇄ 2⟩` modulo all paths of length 2. Not symmetric.
pub fn radical_square_zero_cycle(session: Session) -> Algebra {
    build(session, &["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &[], 2)
}

/// `k^n` as the path algebra of `n` isolated vertices.
pub fn semisimple(session: Session, n: usize) -> Algebra {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let vs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    build(session, &vs, &[], &[], 2)
}
