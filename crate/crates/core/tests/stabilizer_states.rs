mod common;

use common::{all_labelled, connected_strategy};
use lcorbit::stabilizer::{apply_lc_unitary, graph_to_tableau, stabilizer_groups_equal, verify_lc};
use lcorbit::Graph;
use num_complex::Complex64 as C;
use proptest::prelude::*;

/// Amplitudes of the graph state: `(-1)^{e(x)} / sqrt(2^n)` where `e(x)`
/// counts edges inside the support of `x`.
fn graph_state(g: &Graph) -> Vec<C> {
    let n = g.n();
    let norm = (1u64 << n) as f64;
    (0..1usize << n)
        .map(|x| {
            let inside = g.edges().iter().filter(|&&(u, v)| x >> u & 1 == 1 && x >> v & 1 == 1).count();
            C::new(if inside % 2 == 0 { 1.0 } else { -1.0 } / norm.sqrt(), 0.0)
        })
        .collect()
}

fn apply_one_qubit(state: &mut [C], q: usize, m: [[C; 2]; 2]) {
    for x in 0..state.len() {
        if x >> q & 1 == 0 {
            let y = x | 1 << q;
            let (a, b) = (state[x], state[y]);
            state[x] = m[0][0] * a + m[0][1] * b;
            state[y] = m[1][0] * a + m[1][1] * b;
        }
    }
}

/// `sqrt(-iX)` on `alpha` and `sqrt(iZ)` on each neighbour.
fn lc_unitary(state: &mut [C], alpha: usize, neighbours: &[usize]) {
    let s = 1.0 / 2f64.sqrt();
    let (re, im) = (C::new(s, 0.0), C::new(0.0, s));
    let zero = C::new(0.0, 0.0);
    apply_one_qubit(state, alpha, [[re, -im], [-im, re]]);
    for &b in neighbours {
        apply_one_qubit(state, b, [[re + im, zero], [zero, re - im]]);
    }
}

/// Equal up to a global phase.
fn same_ray(a: &[C], b: &[C]) -> bool {
    let overlap: C = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    (overlap.norm() - 1.0).abs() < 1e-9
}

fn check(g: &Graph, alpha: usize) -> bool {
    let neighbours: Vec<usize> = (0..g.n()).filter(|&v| g.has_edge(alpha, v)).collect();
    let mut state = graph_state(g);
    lc_unitary(&mut state, alpha, &neighbours);
    same_ray(&state, &graph_state(&g.local_complement(alpha).unwrap()))
}

#[test]
fn state_vectors_confirm_the_graph_rule() {
    for n in 1..=4 {
        for g in all_labelled(n) {
            for alpha in 0..n {
                assert!(check(&g, alpha), "{g:?} at {alpha}");
                assert!(verify_lc(&g, alpha).unwrap());
            }
        }
    }
}

#[test]
fn wrong_neighbourhood_is_detected() {
    let g = Graph::path(4).unwrap();
    // Correct neighbourhood of vertex 1 is {0, 2}; drop one.
    let t = apply_lc_unitary(&graph_to_tableau(&g), 1, 0b001).unwrap();
    assert!(!stabilizer_groups_equal(&t, &graph_to_tableau(&g.local_complement(1).unwrap())));
    let mut state = graph_state(&g);
    lc_unitary(&mut state, 1, &[0]);
    assert!(!same_ray(&state, &graph_state(&g.local_complement(1).unwrap())));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn state_vectors_and_tableaux_agree(g in connected_strategy(2, 8), a in 0usize..8) {
        let a = a % g.n();
        prop_assert!(check(&g, a));
        prop_assert!(verify_lc(&g, a).unwrap());
    }

    #[test]
    fn unitary_twice_restores_the_group(g in connected_strategy(2, 10), a in 0usize..10) {
        let a = a % g.n();
        let mask = |h: &Graph| (0..h.n()).filter(|&v| h.has_edge(a, v)).fold(0u64, |m, v| m | 1 << v);
        let t0 = graph_to_tableau(&g);
        let t1 = apply_lc_unitary(&t0, a, mask(&g)).unwrap();
        let h = g.local_complement(a).unwrap();
        let t2 = apply_lc_unitary(&t1, a, mask(&h)).unwrap();
        prop_assert!(t1.is_valid() && t2.is_valid());
        prop_assert!(stabilizer_groups_equal(&t2, &t0));
    }
}
