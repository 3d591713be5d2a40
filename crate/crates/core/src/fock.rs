//! Three-mode bosonic Fock spaces, ladder operators and the Hamiltonian
//! matrix.
//!
//! The coupling `a† b c + a b† c†` conserves both `n_a + n_b` and
//! `n_a + n_c`, so the Hamiltonian splits into finite [`Block`]s labelled by
//! those two charges. Truncated bases are provided for operator algebra
//! checks; on a [`BasisSpec::TruncatedCube`] amplitudes that would leave the
//! cutoff are dropped.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::spectra::ModelParams;
use crate::{ComplexMatrix, C64};

/// Photon numbers of the three modes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occupation {
    pub n_a: u32,
    pub n_b: u32,
    pub n_c: u32,
}

impl Occupation {
    pub const fn new(n_a: u32, n_b: u32, n_c: u32) -> Self {
        Self { n_a, n_b, n_c }
    }

    pub fn get(&self, mode: Mode) -> u32 {
        match mode {
            Mode::A => self.n_a,
            Mode::B => self.n_b,
            Mode::C => self.n_c,
        }
    }

    fn with(mut self, mode: Mode, n: u32) -> Self {
        match mode {
            Mode::A => self.n_a = n,
            Mode::B => self.n_b = n,
            Mode::C => self.n_c = n,
        }
        self
    }

    /// Eigenvalue of `n_a + n_b`.
    pub fn q_ab(&self) -> u32 {
        self.n_a + self.n_b
    }

    /// Eigenvalue of `n_a + n_c`.
    pub fn q_ac(&self) -> u32 {
        self.n_a + self.n_c
    }
}

impl fmt::Display for Occupation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n_a, self.n_b, self.n_c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderKind {
    Annihilate,
    Create,
    Number,
}

/// Joint eigenspace of `n_a + n_b` and `n_a + n_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub q_ab: u32,
    pub q_ac: u32,
    /// `(n_a, q_ab - n_a, q_ac - n_a)` for ascending `n_a`.
    pub basis: Vec<Occupation>,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Canonical basis of the block with charges `(q_ab, q_ac)`.
pub fn block_basis(q_ab: i64, q_ac: i64) -> Result<Block> {
    if q_ab < 0 || q_ac < 0 {
        return Err(invalid(format!(
            "block charges must be nonnegative, got ({q_ab}, {q_ac})"
        )));
    }
    let (q_ab, q_ac) = (q_ab as u32, q_ac as u32);
    let basis = (0..=q_ab.min(q_ac))
        .map(|n_a| Occupation::new(n_a, q_ab - n_a, q_ac - n_a))
        .collect();
    Ok(Block { q_ab, q_ac, basis })
}

/// Choice of basis on which operators are represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisSpec {
    /// All occupations with `n_x <= cut_x`, lexicographic in `(n_a, n_b, n_c)`.
    TruncatedCube { cut_a: u32, cut_b: u32, cut_c: u32 },
    /// One exact invariant block.
    SingleBlock { q_ab: u32, q_ac: u32 },
    /// Two of the three modes, the third frozen at zero occupation.
    /// Ordered lexicographically in `(n_first, n_second)`.
    TwoModeTruncated {
        modes: (Mode, Mode),
        cut_1: u32,
        cut_2: u32,
    },
}

impl BasisSpec {
    pub fn cube(cut: u32) -> Self {
        BasisSpec::TruncatedCube {
            cut_a: cut,
            cut_b: cut,
            cut_c: cut,
        }
    }

    /// Two-mode space over `(b, c)`, the su(1,1) carrier.
    pub fn two_mode_bc(cut_1: u32, cut_2: u32) -> Self {
        BasisSpec::TwoModeTruncated {
            modes: (Mode::B, Mode::C),
            cut_1,
            cut_2,
        }
    }

    /// Two-mode space over `(a, b)`, the su(2) carrier.
    pub fn two_mode_ab(cut_1: u32, cut_2: u32) -> Self {
        BasisSpec::TwoModeTruncated {
            modes: (Mode::A, Mode::B),
            cut_1,
            cut_2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let BasisSpec::TwoModeTruncated { modes, .. } = self {
            if modes.0 == modes.1 {
                return Err(invalid("two-mode basis needs two distinct modes"));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match *self {
            BasisSpec::TruncatedCube { cut_a, cut_b, cut_c } => {
                (cut_a as usize + 1) * (cut_b as usize + 1) * (cut_c as usize + 1)
            }
            BasisSpec::SingleBlock { q_ab, q_ac } => q_ab.min(q_ac) as usize + 1,
            BasisSpec::TwoModeTruncated { cut_1, cut_2, .. } => (cut_1 as usize + 1) * (cut_2 as usize + 1),
        }
    }

    /// Basis states in canonical order.
    pub fn states(&self) -> Vec<Occupation> {
        match *self {
            BasisSpec::TruncatedCube { cut_a, cut_b, cut_c } => {
                let mut out = Vec::with_capacity(self.dim());
                for a in 0..=cut_a {
                    for b in 0..=cut_b {
                        for c in 0..=cut_c {
                            out.push(Occupation::new(a, b, c));
                        }
                    }
                }
                out
            }
            BasisSpec::SingleBlock { q_ab, q_ac } => {
                block_basis(q_ab as i64, q_ac as i64)
                    .expect("nonnegative charges")
                    .basis
            }
            BasisSpec::TwoModeTruncated { modes, cut_1, cut_2 } => {
                let mut out = Vec::with_capacity(self.dim());
                for n1 in 0..=cut_1 {
                    for n2 in 0..=cut_2 {
                        out.push(Occupation::default().with(modes.0, n1).with(modes.1, n2));
                    }
                }
                out
            }
        }
    }

    /// Position of `occ` in [`Self::states`], if present.
    pub fn index_of(&self, occ: Occupation) -> Option<usize> {
        match *self {
            BasisSpec::TruncatedCube { cut_a, cut_b, cut_c } => {
                if occ.n_a > cut_a || occ.n_b > cut_b || occ.n_c > cut_c {
                    return None;
                }
                let (nb, nc) = (cut_b as usize + 1, cut_c as usize + 1);
                Some((occ.n_a as usize * nb + occ.n_b as usize) * nc + occ.n_c as usize)
            }
            BasisSpec::SingleBlock { q_ab, q_ac } => {
                (occ.q_ab() == q_ab && occ.q_ac() == q_ac).then_some(occ.n_a as usize)
            }
            BasisSpec::TwoModeTruncated { modes, cut_1, cut_2 } => {
                let frozen = [Mode::A, Mode::B, Mode::C]
                    .into_iter()
                    .find(|m| *m != modes.0 && *m != modes.1)?;
                let (n1, n2) = (occ.get(modes.0), occ.get(modes.1));
                if occ.get(frozen) != 0 || n1 > cut_1 || n2 > cut_2 {
                    return None;
                }
                Some(n1 as usize * (cut_2 as usize + 1) + n2 as usize)
            }
        }
    }

    fn contains_mode(&self, mode: Mode) -> bool {
        match self {
            BasisSpec::TwoModeTruncated { modes, .. } => modes.0 == mode || modes.1 == mode,
            _ => true,
        }
    }
}

/// Sparse complex matrix in sorted coordinate form.
///
/// Entries are unique and sorted by `(row, col)`; duplicate coordinates are
/// summed when the operator is assembled.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    entries: Vec<(usize, usize, C64)>,
    hermitian_hint: bool,
}

impl SparseOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: Vec::new(),
            hermitian_hint: true,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| (i, i, C64::new(*v, 0.0)))
            .collect();
        Self {
            dim: values.len(),
            entries,
            hermitian_hint: true,
        }
    }

    /// Assembles triplets, summing duplicates. With `hermitian_hint` the
    /// assembled matrix is checked for exact Hermiticity.
    pub fn from_triplets(
        dim: usize,
        triplets: impl IntoIterator<Item = (usize, usize, C64)>,
        hermitian_hint: bool,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), C64> = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= dim || c >= dim {
                return Err(invalid(format!("entry ({r}, {c}) out of range for dimension {dim}")));
            }
            *acc.entry((r, c)).or_default() += v;
        }
        let entries: Vec<_> = acc
            .into_iter()
            .filter(|(_, v)| *v != C64::new(0.0, 0.0))
            .map(|((r, c), v)| (r, c, v))
            .collect();
        let op = Self {
            dim,
            entries,
            hermitian_hint,
        };
        if hermitian_hint {
            let res = op.hermiticity_residual();
            if res != 0.0 {
                return Err(invalid(format!("operator flagged Hermitian has asymmetry {res:e}")));
            }
        }
        Ok(op)
    }

    fn from_map(dim: usize, acc: BTreeMap<(usize, usize), C64>, hermitian_hint: bool) -> Self {
        Self {
            dim,
            entries: acc
                .into_iter()
                .filter(|(_, v)| *v != C64::new(0.0, 0.0))
                .map(|((r, c), v)| (r, c, v))
                .collect(),
            hermitian_hint,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, C64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn hermitian_hint(&self) -> bool {
        self.hermitian_hint
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries
            .binary_search_by(|(r, c, _)| (*r, *c).cmp(&(row, col)))
            .map(|i| self.entries[i].2)
            .unwrap_or_default()
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] = v;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut acc = BTreeMap::new();
        for &(r, c, v) in &self.entries {
            acc.insert((c, r), v.conj());
        }
        Self::from_map(self.dim, acc, self.hermitian_hint)
    }

    /// `max |A - A†|` over all entries.
    pub fn hermiticity_residual(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(r, c, v)| (v - self.get(c, r).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.2.norm()).fold(0.0, f64::max)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(invalid(format!(
                "vector length {} does not match dimension {}",
                v.len(),
                self.dim
            )));
        }
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        for &(r, c, x) in &self.entries {
            out[r] += x * v[c];
        }
        Ok(out)
    }

    /// Real diagonal, assuming the operator is diagonal.
    pub fn diagonal_values(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.dim];
        for &(r, c, x) in &self.entries {
            if r == c {
                d[r] = x.re;
            }
        }
        d
    }

    pub fn scale(&self, s: C64) -> Self {
        let hint = self.hermitian_hint && s.im == 0.0;
        let mut acc = BTreeMap::new();
        for &(r, c, v) in &self.entries {
            acc.insert((r, c), v * s);
        }
        Self::from_map(self.dim, acc, hint)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(invalid(format!("dimension mismatch: {} vs {}", self.dim, other.dim)));
        }
        Ok(())
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: C64, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut acc: BTreeMap<(usize, usize), C64> = BTreeMap::new();
        for &(r, c, v) in &self.entries {
            *acc.entry((r, c)).or_default() += v;
        }
        for &(r, c, v) in &other.entries {
            *acc.entry((r, c)).or_default() += s * v;
        }
        let hint = self.hermitian_hint && other.hermitian_hint && s.im == 0.0;
        Ok(Self::from_map(self.dim, acc, hint))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(C64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(C64::new(-1.0, 0.0), other)
    }

    /// Row-compressed view: offsets into `entries` per row.
    fn row_offsets(&self) -> Vec<usize> {
        let mut offsets = vec![0usize; self.dim + 1];
        for &(r, _, _) in &self.entries {
            offsets[r + 1] += 1;
        }
        for i in 0..self.dim {
            offsets[i + 1] += offsets[i];
        }
        offsets
    }

    /// Sparse product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let rows = other.row_offsets();
        let mut acc: BTreeMap<(usize, usize), C64> = BTreeMap::new();
        for &(r, k, v) in &self.entries {
            for &(_, c, w) in &other.entries[rows[k]..rows[k + 1]] {
                *acc.entry((r, c)).or_default() += v * w;
            }
        }
        Ok(Self::from_map(self.dim, acc, false))
    }

    /// Principal submatrix on `indices` (in the given order).
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        let mut position = vec![usize::MAX; self.dim];
        for (new, &old) in indices.iter().enumerate() {
            if old >= self.dim {
                return Err(invalid(format!("index {old} out of range")));
            }
            position[old] = new;
        }
        let mut acc = BTreeMap::new();
        for &(r, c, v) in &self.entries {
            let (pr, pc) = (position[r], position[c]);
            if pr != usize::MAX && pc != usize::MAX {
                acc.insert((pr, pc), v);
            }
        }
        Ok(Self::from_map(indices.len(), acc, self.hermitian_hint))
    }
}

/// `A B - B A`.
pub fn commutator(a: &SparseOperator, b: &SparseOperator) -> Result<SparseOperator> {
    a.matmul(b)?.sub(&b.matmul(a)?)
}

/// Matrix of a single-mode ladder or number operator on `basis`.
pub fn ladder_matrix(basis: BasisSpec, mode: Mode, kind: LadderKind) -> Result<SparseOperator> {
    basis.validate()?;
    if !basis.contains_mode(mode) {
        return Err(invalid(format!("mode {mode:?} is not part of {basis:?}")));
    }
    let states = basis.states();
    if kind == LadderKind::Number {
        let diag: Vec<f64> = states.iter().map(|s| s.get(mode) as f64).collect();
        return Ok(SparseOperator::diagonal(&diag));
    }
    if let BasisSpec::SingleBlock { .. } = basis {
        return Err(Error::UnsupportedOperation(
            "single-mode ladder operators leave an invariant block".into(),
        ));
    }
    let mut triplets = Vec::new();
    for (col, s) in states.iter().enumerate() {
        let n = s.get(mode);
        let (target, amp) = match kind {
            LadderKind::Annihilate if n > 0 => (s.with(mode, n - 1), (n as f64).sqrt()),
            LadderKind::Create => (s.with(mode, n + 1), (n as f64 + 1.0).sqrt()),
            _ => continue,
        };
        if let Some(row) = basis.index_of(target) {
            triplets.push((row, col, C64::new(amp, 0.0)));
        }
    }
    SparseOperator::from_triplets(basis.dim(), triplets, false)
}

/// Hamiltonian matrix on a three-mode basis.
pub fn hamiltonian_matrix(params: &ModelParams, basis: BasisSpec) -> Result<SparseOperator> {
    if let BasisSpec::TwoModeTruncated { .. } = basis {
        return Err(invalid("the Hamiltonian needs a three-mode basis"));
    }
    let states = basis.states();
    let mut triplets = Vec::with_capacity(3 * states.len());
    for (col, s) in states.iter().enumerate() {
        let diag = params.omega1 * s.n_a as f64 + params.omega2 * s.n_b as f64 + params.omega3 * s.n_c as f64;
        triplets.push((col, col, C64::new(diag, 0.0)));
        // a† b c raises n_a; the conjugate entry is added alongside
        if params.g != 0.0 && s.n_b > 0 && s.n_c > 0 {
            let target = Occupation::new(s.n_a + 1, s.n_b - 1, s.n_c - 1);
            if let Some(row) = basis.index_of(target) {
                let amp = params.g * ((s.n_a as f64 + 1.0) * s.n_b as f64 * s.n_c as f64).sqrt();
                triplets.push((row, col, C64::new(amp, 0.0)));
                triplets.push((col, row, C64::new(amp, 0.0)));
            }
        }
    }
    SparseOperator::from_triplets(basis.dim(), triplets, true)
}
