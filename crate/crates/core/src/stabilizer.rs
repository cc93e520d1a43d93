//! Stabilizer tableaux for graph states and the local Clifford unitary that
//! realises local complementation.
//!
//! Generators are Pauli strings `(-1)^sign * P_0 ⊗ ... ⊗ P_{n-1}` with each
//! factor one of I, X, Y, Z encoded by `(x, z)` bits, `(1, 1)` being Y. The
//! local complementation unitary at `alpha` is `sqrt(-iX)` on `alpha` and
//! `sqrt(iZ)` on each neighbour; conjugating a Pauli string by a tensor
//! product of single-qubit Cliffords maps each factor independently, so only
//! per-factor sign flips need tracking.

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// Single-qubit Pauli factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }
}

/// Conjugation action `P -> U P U^dagger` of a single-qubit Clifford, as
/// `(sign flipped, image)` for X, Y, Z in that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliffordTable {
    pub x: (bool, Pauli),
    pub y: (bool, Pauli),
    pub z: (bool, Pauli),
}

impl CliffordTable {
    pub fn apply(&self, p: Pauli) -> (bool, Pauli) {
        match p {
            Pauli::I => (false, Pauli::I),
            Pauli::X => self.x,
            Pauli::Y => self.y,
            Pauli::Z => self.z,
        }
    }
}

/// `sqrt(-iX) = (I - iX)/sqrt(2)`: X -> X, Y -> Z, Z -> -Y.
pub const SQRT_NEG_I_X: CliffordTable = CliffordTable {
    x: (false, Pauli::X),
    y: (false, Pauli::Z),
    z: (true, Pauli::Y),
};

/// `sqrt(iZ) = (I + iZ)/sqrt(2)`: X -> -Y, Y -> X, Z -> Z.
pub const SQRT_I_Z: CliffordTable = CliffordTable {
    x: (true, Pauli::Y),
    y: (false, Pauli::X),
    z: (false, Pauli::Z),
};

/// Largest qubit count a tableau supports.
pub const MAX_QUBITS: usize = 64;

/// `n` stabilizer generators on `n` qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    sign: Vec<bool>,
}

impl StabilizerTableau {
    /// Builds a tableau from explicit generators `(x mask, z mask, negative)`.
    pub fn from_generators(n: usize, generators: &[(u64, u64, bool)]) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::Capacity(format!("tableaux hold at most {MAX_QUBITS} qubits")));
        }
        if generators.len() != n {
            return Err(Error::Argument(format!(
                "{} generators supplied for {n} qubits",
                generators.len()
            )));
        }
        Ok(StabilizerTableau {
            n,
            x: generators.iter().map(|g| g.0).collect(),
            z: generators.iter().map(|g| g.1).collect(),
            sign: generators.iter().map(|g| g.2).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Generator `i` as `(x mask, z mask, negative)`.
    pub fn generator(&self, i: usize) -> (u64, u64, bool) {
        (self.x[i], self.z[i], self.sign[i])
    }

    /// Generator `i` written as e.g. `+XZZ`.
    pub fn generator_string(&self, i: usize) -> String {
        let mut s = String::from(if self.sign[i] { "-" } else { "+" });
        for q in 0..self.n {
            let p = Pauli::from_bits(self.x[i] >> q & 1 == 1, self.z[i] >> q & 1 == 1);
            s.push(match p {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            });
        }
        s
    }

    /// Pairwise commutation and GF(2) independence of the generators.
    pub fn is_valid(&self) -> bool {
        for i in 0..self.n {
            for j in i + 1..self.n {
                let overlap = (self.x[i] & self.z[j]).count_ones() + (self.z[i] & self.x[j]).count_ones();
                if overlap % 2 == 1 {
                    return false;
                }
            }
        }
        self.symplectic_rank() == self.n
    }

    fn symplectic_rank(&self) -> usize {
        let mut rows: Vec<u128> = (0..self.n)
            .map(|i| (self.x[i] as u128) << 64 | self.z[i] as u128)
            .collect();
        let mut rank = 0;
        for bit in (0..128).rev() {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && rows[r] >> bit & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
        rank
    }

    /// Conjugates qubit `q` of every generator by a single-qubit Clifford.
    pub fn apply_single_qubit(&mut self, q: usize, table: &CliffordTable) {
        let bit = 1u64 << q;
        for i in 0..self.n {
            let p = Pauli::from_bits(self.x[i] & bit != 0, self.z[i] & bit != 0);
            let (flip, image) = table.apply(p);
            let (x, z) = image.bits();
            self.x[i] = (self.x[i] & !bit) | if x { bit } else { 0 };
            self.z[i] = (self.z[i] & !bit) | if z { bit } else { 0 };
            self.sign[i] ^= flip;
        }
    }

    /// Whether the Pauli string `(-1)^negative X^x Z^z` (Y where both bits
    /// are set) belongs to the group generated by this tableau.
    pub fn contains(&self, x: u64, z: u64, negative: bool) -> bool {
        // Gaussian elimination tracking which generators combine into each row.
        let mut rows: Vec<(u128, u64)> = (0..self.n)
            .map(|i| ((self.x[i] as u128) << 64 | self.z[i] as u128, 1u64 << i))
            .collect();
        let mut target = (x as u128) << 64 | z as u128;
        let mut used = 0u64;
        let mut rank = 0;
        for bit in (0..128).rev() {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].0 >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for r in 0..rows.len() {
                if r != rank && rows[r].0 >> bit & 1 == 1 {
                    rows[r].0 ^= pivot.0;
                    rows[r].1 ^= pivot.1;
                }
            }
            if target >> bit & 1 == 1 {
                target ^= pivot.0;
                used ^= pivot.1;
            }
            rank += 1;
        }
        if target != 0 {
            return false;
        }
        // Multiply the selected generators in index order with exact phases.
        let mut acc = PauliString::identity();
        for i in bits64(used) {
            acc = acc.mul(&PauliString {
                x: self.x[i],
                z: self.z[i],
                phase: if self.sign[i] { 2 } else { 0 },
            });
        }
        debug_assert!(acc.x == x && acc.z == z);
        debug_assert!(acc.phase % 2 == 0, "commuting generators multiply to a Hermitian string");
        (acc.phase == 2) == negative
    }
}

/// Pauli string `i^phase * prod_q P_q` with Y for `(1, 1)`.
#[derive(Clone, Copy, Debug)]
struct PauliString {
    x: u64,
    z: u64,
    phase: u8,
}

impl PauliString {
    fn identity() -> Self {
        PauliString { x: 0, z: 0, phase: 0 }
    }

    fn mul(&self, other: &PauliString) -> PauliString {
        // Per-qubit phase exponent of P1 * P2 in the {I, X, Y, Z} basis.
        let mut e: i32 = 0;
        for q in bits64(self.x | self.z) {
            let (x1, z1) = ((self.x >> q & 1) as i32, (self.z >> q & 1) as i32);
            let (x2, z2) = ((other.x >> q & 1) as i32, (other.z >> q & 1) as i32);
            e += match (x1, z1) {
                (1, 1) => z2 - x2,
                (1, 0) => z2 * (2 * x2 - 1),
                (0, 1) => x2 * (1 - 2 * z2),
                _ => 0,
            };
        }
        let phase = (self.phase as i32 + other.phase as i32 + e).rem_euclid(4) as u8;
        PauliString {
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase,
        }
    }
}

fn bits64(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Stabilizer generators `X_v prod_{u in N(v)} Z_u`, all with sign +1.
pub fn graph_to_tableau(g: &Graph) -> StabilizerTableau {
    let n = g.n();
    StabilizerTableau {
        n,
        x: (0..n).map(|v| 1u64 << v).collect(),
        z: (0..n).map(|v| g.neighbours(v) as u64).collect(),
        sign: vec![false; n],
    }
}

/// Conjugates `t` by `sqrt(-iX)` on `alpha` and `sqrt(iZ)` on each vertex of
/// `neighbours`.
pub fn apply_lc_unitary(t: &StabilizerTableau, alpha: usize, neighbours: u64) -> Result<StabilizerTableau> {
    if alpha >= t.n {
        return Err(Error::VertexOutOfRange { vertex: alpha, n: t.n });
    }
    if neighbours >> alpha & 1 == 1 {
        return Err(Error::Argument(format!("vertex {alpha} listed among its own neighbours")));
    }
    if t.n < 64 && neighbours >> t.n != 0 {
        return Err(Error::Argument("neighbour set references missing qubits".into()));
    }
    let mut out = t.clone();
    out.apply_single_qubit(alpha, &SQRT_NEG_I_X);
    for q in bits64(neighbours) {
        out.apply_single_qubit(q, &SQRT_I_Z);
    }
    Ok(out)
}

/// Group equality including signs.
pub fn stabilizer_groups_equal(a: &StabilizerTableau, b: &StabilizerTableau) -> bool {
    a.n == b.n
        && (0..a.n).all(|i| b.contains(a.x[i], a.z[i], a.sign[i]))
        && (0..b.n).all(|i| a.contains(b.x[i], b.z[i], b.sign[i]))
}

/// Whether the local Clifford unitary at `alpha` maps the state of `g` to
/// the state of `g` locally complemented at `alpha`.
pub fn verify_lc(g: &Graph, alpha: usize) -> Result<bool> {
    let target = graph_to_tableau(&g.local_complement(alpha)?);
    let neighbours = bits(g.neighbours(alpha)).fold(0u64, |m, v| m | 1 << v);
    let mapped = apply_lc_unitary(&graph_to_tableau(g), alpha, neighbours)?;
    Ok(stabilizer_groups_equal(&mapped, &target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    type M = [[C; 2]; 2];

    fn mat(p: Pauli) -> M {
        let (o, z, i) = (C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 1.0));
        match p {
            Pauli::I => [[o, z], [z, o]],
            Pauli::X => [[z, o], [o, z]],
            Pauli::Y => [[z, -i], [i, z]],
            Pauli::Z => [[o, z], [z, -o]],
        }
    }

    fn mul(a: &M, b: &M) -> M {
        let mut out = [[C::new(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        out
    }

    fn dagger(a: &M) -> M {
        [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
    }

    fn close(a: &M, b: &M) -> bool {
        (0..2).all(|r| (0..2).all(|c| (a[r][c] - b[r][c]).norm() < 1e-12))
    }

    /// `(I + c P)/sqrt(2)` for a unit complex `c`.
    fn root(c: C, p: Pauli) -> M {
        let s = 1.0 / 2f64.sqrt();
        let id = mat(Pauli::I);
        let pm = mat(p);
        let mut out = id;
        for r in 0..2 {
            for k in 0..2 {
                out[r][k] = (id[r][k] + c * pm[r][k]) * s;
            }
        }
        out
    }

    fn check_table(u: &M, table: &CliffordTable) {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            let conj = mul(&mul(u, &mat(p)), &dagger(u));
            let (flip, image) = table.apply(p);
            let mut expected = mat(image);
            if flip {
                for row in &mut expected {
                    for e in row.iter_mut() {
                        *e = -*e;
                    }
                }
            }
            assert!(close(&conj, &expected), "{p:?}");
        }
    }

    #[test]
    fn conjugation_tables_match_matrices() {
        let sqrt_neg_i_x = root(C::new(0.0, -1.0), Pauli::X);
        // Squares to -iX.
        let sq = mul(&sqrt_neg_i_x, &sqrt_neg_i_x);
        let mut neg_i_x = mat(Pauli::X);
        for row in &mut neg_i_x {
            for e in row.iter_mut() {
                *e *= C::new(0.0, -1.0);
            }
        }
        assert!(close(&sq, &neg_i_x));
        check_table(&sqrt_neg_i_x, &SQRT_NEG_I_X);

        let sqrt_i_z = root(C::new(0.0, 1.0), Pauli::Z);
        check_table(&sqrt_i_z, &SQRT_I_Z);
    }

    #[test]
    fn graph_tableaux() {
        let t = graph_to_tableau(&Graph::empty(3).unwrap());
        assert_eq!(
            (0..3).map(|i| t.generator_string(i)).collect::<Vec<_>>(),
            vec!["+XII", "+IXI", "+IIX"]
        );
        let t = graph_to_tableau(&Graph::complete(2).unwrap());
        assert_eq!(t.generator_string(0), "+XZ");
        assert_eq!(t.generator_string(1), "+ZX");
        let t = graph_to_tableau(&Graph::complete(3).unwrap());
        assert_eq!(
            (0..3).map(|i| t.generator_string(i)).collect::<Vec<_>>(),
            vec!["+XZZ", "+ZXZ", "+ZZX"]
        );
        assert!(t.is_valid());
    }

    #[test]
    fn group_equality_sees_through_row_operations() {
        let a = graph_to_tableau(&Graph::path(4).unwrap());
        let mut b = a.clone();
        // Replace generator 1 by the product of generators 0 and 1.
        let p = PauliString { x: a.x[0], z: a.z[0], phase: 0 }.mul(&PauliString {
            x: a.x[1],
            z: a.z[1],
            phase: 0,
        });
        assert_eq!(p.phase % 2, 0);
        b.x[1] = p.x;
        b.z[1] = p.z;
        b.sign[1] = p.phase == 2;
        assert!(b.is_valid());
        assert!(stabilizer_groups_equal(&a, &a));
        assert!(stabilizer_groups_equal(&a, &b));
        let star = graph_to_tableau(&Graph::star(4).unwrap());
        let k4 = graph_to_tableau(&Graph::complete(4).unwrap());
        assert!(!stabilizer_groups_equal(&star, &k4));
        let mut flipped = a.clone();
        flipped.sign[2] = true;
        assert!(!stabilizer_groups_equal(&a, &flipped));
    }

    #[test]
    fn edgeless_state_is_fixed_by_x_rotation() {
        let t = graph_to_tableau(&Graph::empty(3).unwrap());
        let u = apply_lc_unitary(&t, 1, 0).unwrap();
        assert!(stabilizer_groups_equal(&t, &u));
    }

    #[test]
    fn star_centre_unitary_reaches_complete_graph() {
        let star = Graph::star(4).unwrap();
        let mapped = apply_lc_unitary(&graph_to_tableau(&star), 0, 0b1110).unwrap();
        assert!(mapped.is_valid());
        assert!(stabilizer_groups_equal(&mapped, &graph_to_tableau(&Graph::complete(4).unwrap())));
        assert!(verify_lc(&star, 0).unwrap());
        assert!(verify_lc(&star, 2).unwrap());
    }

    #[test]
    fn argument_errors() {
        let t = graph_to_tableau(&Graph::path(3).unwrap());
        assert!(apply_lc_unitary(&t, 1, 0b010).is_err());
        assert!(apply_lc_unitary(&t, 3, 0).is_err());
        assert!(StabilizerTableau::from_generators(2, &[(1, 0, false)]).is_err());
    }
}
