//! Dense states and density operators on truncated tensor-product Fock spaces.
//!
//! Every composite space is an ordered list of [`ModeSpec`]s. Amplitudes are
//! stored row-major over the occupation tuple, first mode most significant,
//! so the flat index of `(n_1, ..., n_k)` is `sum_i n_i * stride_i`.

use std::collections::HashSet;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::eigen;
use crate::error::{Error, Result};

/// Numerical tolerances shared by the library.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Maximum elementwise deviation (Hermiticity, matrix comparisons).
    pub elementwise: f64,
    /// Allowed deviation of a normalized trace from 1.
    pub trace: f64,
    /// Eigenvalues down to `-psd_floor` are treated as rounding noise.
    pub psd_floor: f64,
    /// Allowed deviation of a normalized ket's squared norm from 1.
    pub ket_norm: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        elementwise: 1e-12,
        trace: 1e-10,
        psd_floor: 1e-10,
        ket_norm: 1e-12,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// One bosonic (or qubit-like) mode with occupations `0..cutoff`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModeSpec {
    label: String,
    cutoff: usize,
}

impl ModeSpec {
    pub fn new(label: impl Into<String>, cutoff: usize) -> Result<Self> {
        let label = label.into();
        if cutoff == 0 {
            return Err(Error::index(label, "cutoff must be at least 1"));
        }
        Ok(ModeSpec { label, cutoff })
    }

    /// A two-level mode.
    pub fn qubit(label: impl Into<String>) -> Self {
        ModeSpec {
            label: label.into(),
            cutoff: 2,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }
}

fn check_unique(modes: &[ModeSpec]) -> Result<()> {
    let mut seen = HashSet::new();
    for m in modes {
        if !seen.insert(m.label.as_str()) {
            return Err(Error::Composition(format!(
                "duplicate mode label `{}`",
                m.label
            )));
        }
    }
    Ok(())
}

fn strides(modes: &[ModeSpec]) -> Vec<usize> {
    let mut s = vec![1; modes.len()];
    for i in (0..modes.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * modes[i + 1].cutoff;
    }
    s
}

fn space_dim(modes: &[ModeSpec]) -> usize {
    modes.iter().map(|m| m.cutoff).product()
}

fn find_mode(modes: &[ModeSpec], label: &str) -> Result<usize> {
    modes
        .iter()
        .position(|m| m.label == label)
        .ok_or_else(|| Error::index(label, "no such mode in this space"))
}

fn flat_index(modes: &[ModeSpec], occupation: &[usize]) -> Result<usize> {
    if occupation.len() != modes.len() {
        return Err(Error::Composition(format!(
            "occupation tuple has {} entries, space has {} modes",
            occupation.len(),
            modes.len()
        )));
    }
    let mut idx = 0;
    for (m, &n) in modes.iter().zip(occupation) {
        if n >= m.cutoff {
            return Err(Error::index(
                m.label.as_str(),
                format!("occupation {} out of range 0..{}", n, m.cutoff),
            ));
        }
        idx = idx * m.cutoff + n;
    }
    Ok(idx)
}

/// Flat offsets of every configuration of the selected modes, embedded in the
/// full space (all other modes at occupation 0).
fn sub_offsets(modes: &[ModeSpec], selected: &[usize]) -> Vec<usize> {
    let full = strides(modes);
    let mut offsets = vec![0usize];
    for &i in selected {
        let mut next = Vec::with_capacity(offsets.len() * modes[i].cutoff);
        for &o in &offsets {
            for n in 0..modes[i].cutoff {
                next.push(o + n * full[i]);
            }
        }
        offsets = next;
    }
    offsets
}

/// Split the modes into (kept, traced) index lists, in original order.
fn split_modes(modes: &[ModeSpec], keep: &[&str]) -> Result<(Vec<usize>, Vec<usize>)> {
    if keep.is_empty() {
        return Err(Error::Composition("keep set must be nonempty".into()));
    }
    let mut wanted = HashSet::new();
    for label in keep {
        find_mode(modes, label)?;
        wanted.insert(*label);
    }
    let (kept, traced): (Vec<usize>, Vec<usize>) =
        (0..modes.len()).partition(|&i| wanted.contains(modes[i].label.as_str()));
    Ok((kept, traced))
}

/// Creation or annihilation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Create,
    Annihilate,
}

/// Result of a ladder operator on a truncated mode.
#[derive(Debug, Clone)]
pub struct LadderOutput {
    pub ket: FockKet,
    /// Norm of the input weight on the top occupation level that a creation
    /// operator could not raise (zero for annihilation).
    pub truncated_norm: f64,
}

/// A pure state stored densely over the product of mode cutoffs.
#[derive(Debug, Clone, PartialEq)]
pub struct FockKet {
    modes: Vec<ModeSpec>,
    amps: Vec<Complex64>,
}

impl FockKet {
    /// The zero vector on the given space.
    pub fn zeros(modes: Vec<ModeSpec>) -> Result<Self> {
        check_unique(&modes)?;
        let dim = space_dim(&modes);
        Ok(FockKet {
            modes,
            amps: vec![Complex64::new(0.0, 0.0); dim],
        })
    }

    /// Dense ket with the listed amplitudes and zeros elsewhere. Repeated
    /// tuples accumulate. No normalization is applied.
    pub fn from_entries<I, T>(modes: Vec<ModeSpec>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, Complex64)>,
        T: AsRef<[usize]>,
    {
        let mut ket = FockKet::zeros(modes)?;
        for (occ, amp) in entries {
            let idx = flat_index(&ket.modes, occ.as_ref())?;
            ket.amps[idx] += amp;
        }
        Ok(ket)
    }

    /// The basis ket `|occupation>`.
    pub fn basis(modes: Vec<ModeSpec>, occupation: &[usize]) -> Result<Self> {
        FockKet::from_entries(modes, [(occupation, Complex64::new(1.0, 0.0))])
    }

    /// Wraps a dense amplitude vector laid out in this crate's index order.
    pub fn from_dense(modes: Vec<ModeSpec>, amps: Vec<Complex64>) -> Result<Self> {
        check_unique(&modes)?;
        if amps.len() != space_dim(&modes) {
            return Err(Error::Composition(format!(
                "{} amplitudes supplied for a space of dimension {}",
                amps.len(),
                space_dim(&modes)
            )));
        }
        Ok(FockKet { modes, amps })
    }

    pub fn modes(&self) -> &[ModeSpec] {
        &self.modes
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn mode_index(&self, label: &str) -> Result<usize> {
        find_mode(&self.modes, label)
    }

    pub fn amplitude(&self, occupation: &[usize]) -> Result<Complex64> {
        Ok(self.amps[flat_index(&self.modes, occupation)?])
    }

    /// Occupation tuple of a flat index.
    pub fn occupation(&self, mut flat: usize) -> Vec<usize> {
        let mut occ = vec![0; self.modes.len()];
        for (i, m) in self.modes.iter().enumerate().rev() {
            occ[i] = flat % m.cutoff;
            flat /= m.cutoff;
        }
        occ
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: &Tolerances) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol.ket_norm
    }

    /// Unit-norm copy together with the factor `1/|k|` that was applied.
    pub fn normalized(&self) -> Result<(FockKet, f64)> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Contract(format!("cannot normalize a ket of norm {n}")));
        }
        let factor = 1.0 / n;
        Ok((self.scaled(Complex64::new(factor, 0.0)), factor))
    }

    pub fn scaled(&self, c: Complex64) -> FockKet {
        FockKet {
            modes: self.modes.clone(),
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    fn check_same_space(&self, other: &FockKet) -> Result<()> {
        if self.modes != other.modes {
            return Err(Error::Composition(
                "kets live on different mode spaces".into(),
            ));
        }
        Ok(())
    }

    /// `self + other` on the same space.
    pub fn add(&self, other: &FockKet) -> Result<FockKet> {
        self.check_same_space(other)?;
        Ok(FockKet {
            modes: self.modes.clone(),
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect(),
        })
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &FockKet) -> Result<Complex64> {
        self.check_same_space(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Tensor product; the result lists `self`'s modes first.
    pub fn tensor(&self, other: &FockKet) -> Result<FockKet> {
        let mut modes = self.modes.clone();
        modes.extend(other.modes.iter().cloned());
        check_unique(&modes)?;
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        Ok(FockKet { modes, amps })
    }

    /// Apply `b` or `b†` on one mode.
    pub fn apply_ladder(&self, label: &str, kind: Ladder) -> Result<LadderOutput> {
        let mode = self.mode_index(label)?;
        let cutoff = self.modes[mode].cutoff;
        let stride = strides(&self.modes)[mode];
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        let mut lost = 0.0;
        for (idx, amp) in self.amps.iter().enumerate() {
            let n = (idx / stride) % cutoff;
            match kind {
                Ladder::Create => {
                    if n + 1 < cutoff {
                        out[idx + stride] += amp * ((n + 1) as f64).sqrt();
                    } else {
                        lost += amp.norm_sqr();
                    }
                }
                Ladder::Annihilate => {
                    if n > 0 {
                        out[idx - stride] += amp * (n as f64).sqrt();
                    }
                }
            }
        }
        Ok(LadderOutput {
            ket: FockKet {
                modes: self.modes.clone(),
                amps: out,
            },
            truncated_norm: lost.sqrt(),
        })
    }

    /// Multiply every amplitude by `f(occupation)`.
    pub fn map_amplitudes<F>(&self, mut f: F) -> FockKet
    where
        F: FnMut(&[usize]) -> Complex64,
    {
        let mut occ = vec![0usize; self.modes.len()];
        let mut amps = Vec::with_capacity(self.amps.len());
        for a in &self.amps {
            amps.push(a * f(&occ));
            // odometer increment, last mode fastest
            for i in (0..occ.len()).rev() {
                occ[i] += 1;
                if occ[i] < self.modes[i].cutoff {
                    break;
                }
                occ[i] = 0;
            }
        }
        FockKet {
            modes: self.modes.clone(),
            amps,
        }
    }

    /// Apply a linear operator acting on the listed modes (in the listed
    /// order, first most significant). `op` must be square with side equal
    /// to the product of those modes' cutoffs.
    pub fn apply_operator(&self, labels: &[&str], op: &DMatrix<Complex64>) -> Result<FockKet> {
        let targets = labels
            .iter()
            .map(|l| self.mode_index(l))
            .collect::<Result<Vec<_>>>()?;
        let mut uniq = HashSet::new();
        if !targets.iter().all(|t| uniq.insert(*t)) {
            return Err(Error::Composition("operator targets repeat a mode".into()));
        }
        let local_dim: usize = targets.iter().map(|&t| self.modes[t].cutoff).product();
        if op.nrows() != local_dim || op.ncols() != local_dim {
            return Err(Error::Composition(format!(
                "operator is {}x{}, target modes span dimension {}",
                op.nrows(),
                op.ncols(),
                local_dim
            )));
        }
        let rest: Vec<usize> = (0..self.modes.len())
            .filter(|i| !targets.contains(i))
            .collect();
        let local = sub_offsets(&self.modes, &targets);
        let outer = sub_offsets(&self.modes, &rest);
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        let mut buf = vec![Complex64::new(0.0, 0.0); local_dim];
        for &base in &outer {
            for (j, &off) in local.iter().enumerate() {
                buf[j] = self.amps[base + off];
            }
            for (i, &off) in local.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, b) in buf.iter().enumerate() {
                    acc += op[(i, j)] * b;
                }
                out[base + off] = acc;
            }
        }
        Ok(FockKet {
            modes: self.modes.clone(),
            amps: out,
        })
    }

    /// Project one mode onto `|value>` and drop it from the space. The result
    /// is not renormalized; its squared norm is the outcome probability.
    pub fn project(&self, label: &str, value: usize) -> Result<FockKet> {
        let mode = self.mode_index(label)?;
        if value >= self.modes[mode].cutoff {
            return Err(Error::index(
                label,
                format!("projection onto {} outside 0..{}", value, self.modes[mode].cutoff),
            ));
        }
        let stride = strides(&self.modes)[mode];
        let rest: Vec<usize> = (0..self.modes.len()).filter(|&i| i != mode).collect();
        let amps = sub_offsets(&self.modes, &rest)
            .into_iter()
            .map(|o| self.amps[o + value * stride])
            .collect();
        let modes = rest.iter().map(|&i| self.modes[i].clone()).collect();
        Ok(FockKet { modes, amps })
    }

    /// Reduced density operator on `keep`, computed directly from the ket.
    /// Equivalent to `DensityOp::outer(self).partial_trace(keep)` but never
    /// forms the full projector. Not renormalized.
    pub fn reduced_density(&self, keep: &[&str]) -> Result<DensityOp> {
        let (kept, traced) = split_modes(&self.modes, keep)?;
        let k_off = sub_offsets(&self.modes, &kept);
        let t_off = sub_offsets(&self.modes, &traced);
        let m = DMatrix::from_fn(k_off.len(), t_off.len(), |i, j| self.amps[k_off[i] + t_off[j]]);
        let matrix = &m * m.adjoint();
        let modes = kept.iter().map(|&i| self.modes[i].clone()).collect();
        Ok(DensityOp { modes, matrix })
    }
}

/// A Hermitian operator on a truncated Fock space, used as a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOp {
    modes: Vec<ModeSpec>,
    matrix: DMatrix<Complex64>,
}

impl DensityOp {
    /// Wrap a matrix, checking shape and Hermiticity (elementwise tolerance).
    pub fn from_matrix(modes: Vec<ModeSpec>, matrix: DMatrix<Complex64>) -> Result<Self> {
        Self::from_matrix_with(modes, matrix, &Tolerances::DEFAULT)
    }

    pub fn from_matrix_with(
        modes: Vec<ModeSpec>,
        matrix: DMatrix<Complex64>,
        tol: &Tolerances,
    ) -> Result<Self> {
        check_unique(&modes)?;
        let dim = space_dim(&modes);
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::Composition(format!(
                "matrix is {}x{}, space dimension is {}",
                matrix.nrows(),
                matrix.ncols(),
                dim
            )));
        }
        let dev = eigen::hermitian_deviation(&matrix);
        if dev > tol.elementwise {
            return Err(Error::Contract(format!(
                "matrix is not Hermitian (max deviation {dev:e})"
            )));
        }
        Ok(DensityOp { modes, matrix })
    }

    /// Diagonal operator with the given real weights.
    pub fn from_diagonal(modes: Vec<ModeSpec>, weights: &[f64]) -> Result<Self> {
        check_unique(&modes)?;
        if weights.len() != space_dim(&modes) {
            return Err(Error::Composition(format!(
                "{} weights for a space of dimension {}",
                weights.len(),
                space_dim(&modes)
            )));
        }
        let n = weights.len();
        let mut matrix = DMatrix::zeros(n, n);
        for (i, w) in weights.iter().enumerate() {
            matrix[(i, i)] = Complex64::new(*w, 0.0);
        }
        Ok(DensityOp { modes, matrix })
    }

    /// `|k><k|` for a normalized ket.
    pub fn outer(k: &FockKet) -> Result<Self> {
        if !k.is_normalized(&Tolerances::DEFAULT) {
            return Err(Error::Contract(format!(
                "outer product needs a normalized ket (|k|^2 = {})",
                k.norm_sqr()
            )));
        }
        let v = nalgebra::DVector::from_column_slice(&k.amps);
        Ok(DensityOp {
            modes: k.modes.clone(),
            matrix: &v * v.adjoint(),
        })
    }

    pub fn modes(&self) -> &[ModeSpec] {
        &self.modes
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn is_normalized(&self, tol: &Tolerances) -> bool {
        (self.trace() - 1.0).abs() <= tol.trace
    }

    /// Copy scaled to unit trace, with the factor `1/Tr` that was applied.
    pub fn normalized(&self) -> Result<(DensityOp, f64)> {
        let tr = self.trace();
        if !(tr > 0.0 && tr.is_finite()) {
            return Err(Error::Contract(format!("cannot normalize trace {tr}")));
        }
        let f = 1.0 / tr;
        Ok((
            DensityOp {
                modes: self.modes.clone(),
                matrix: self.matrix.map(|z| z * f),
            },
            f,
        ))
    }

    /// Convex (or arbitrary real) combination of operators on one space.
    pub fn weighted_sum(terms: &[(f64, &DensityOp)]) -> Result<DensityOp> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| Error::Composition("empty sum of density operators".into()))?;
        let mut matrix = DMatrix::zeros(first.dim(), first.dim());
        for (w, rho) in terms {
            if rho.modes != first.modes {
                return Err(Error::Composition(
                    "density operators live on different spaces".into(),
                ));
            }
            matrix += rho.matrix.map(|z| z * *w);
        }
        Ok(DensityOp {
            modes: first.modes.clone(),
            matrix,
        })
    }

    pub fn partial_trace(&self, keep: &[&str]) -> Result<DensityOp> {
        let (kept, traced) = split_modes(&self.modes, keep)?;
        let k_off = sub_offsets(&self.modes, &kept);
        let t_off = sub_offsets(&self.modes, &traced);
        let matrix = DMatrix::from_fn(k_off.len(), k_off.len(), |i, j| {
            t_off
                .iter()
                .map(|&t| self.matrix[(k_off[i] + t, k_off[j] + t)])
                .sum()
        });
        let modes = kept.iter().map(|&i| self.modes[i].clone()).collect();
        Ok(DensityOp { modes, matrix })
    }

    /// `<target|rho|target>` for a normalized target on the same space.
    pub fn fidelity_pure(&self, target: &FockKet) -> Result<f64> {
        if target.modes != self.modes {
            return Err(Error::Composition(
                "target ket and density operator live on different spaces".into(),
            ));
        }
        if !target.is_normalized(&Tolerances::DEFAULT) {
            return Err(Error::Contract("fidelity target must be normalized".into()));
        }
        let v = nalgebra::DVector::from_column_slice(&target.amps);
        let f = (v.adjoint() * &self.matrix * &v)[(0, 0)];
        if f.im.abs() > Tolerances::DEFAULT.elementwise {
            return Err(Error::Contract(format!(
                "fidelity has imaginary part {:e}",
                f.im
            )));
        }
        Ok(f.re)
    }

    /// Real eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigen::eigenvalues_hermitian(&self.matrix, &Tolerances::DEFAULT)
    }

    /// Largest `|i - j|` over nonzero entries.
    pub fn bandwidth(&self) -> usize {
        eigen::bandwidth(&self.matrix)
    }

    /// Largest elementwise `|self - other|` on a common space.
    pub fn max_abs_diff(&self, other: &DensityOp) -> Result<f64> {
        if self.modes != other.modes {
            return Err(Error::Composition(
                "density operators live on different spaces".into(),
            ));
        }
        Ok(self
            .matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}
