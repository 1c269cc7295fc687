//! Truncated Fock-space matrices for the ladder pair `a_m`, `a_m†` and the
//! algebra they close on.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::family::{FChoice, FamilySpec};
use crate::states::{build_state, Coefficients, StateSpec};

/// States `|0⟩ … |D-1⟩` of the chain built on the `m`-th ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockSpace {
    pub family: FamilySpec,
    pub m: u64,
    pub dim: usize,
}

impl FockSpace {
    pub fn new(family: FamilySpec, m: u64, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Dimension(format!("Fock dimension must be at least 2, got {dim}")));
        }
        for n in 1..dim as u64 {
            let e = family.e_n(m, n);
            if !(e > 0.0) {
                return Err(Error::Construction(format!(
                    "e_{n} = {e} is not positive for m = {m}"
                )));
            }
        }
        Ok(FockSpace { family, m, dim })
    }

    fn sqrt_e(&self, n: u64) -> f64 {
        self.family.e_n(self.m, n).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ladder {
    pub a: DMatrix<f64>,
    pub a_dag: DMatrix<f64>,
    pub n_op: DMatrix<f64>,
    pub r_op: DMatrix<f64>,
}

impl Ladder {
    /// `H_m = a†a + λ_m`.
    pub fn hamiltonian(&self, space: &FockSpace) -> DMatrix<f64> {
        let d = space.dim;
        &self.a_dag * &self.a + DMatrix::identity(d, d) * space.family.lambda_l(space.m)
    }
}

/// `⟨n-1|a|n⟩ = √e_n`, `a† = aᵀ`, `N = diag(m+n)`, `R = diag(r_{m+n+1})`.
pub fn build_ladder(space: &FockSpace) -> Ladder {
    let d = space.dim;
    let mut a = DMatrix::zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = space.sqrt_e(n as u64);
    }
    let a_dag = a.transpose();
    let n_op = DMatrix::from_diagonal(&DVector::from_fn(d, |n, _| (space.m + n as u64) as f64));
    let r_op = DMatrix::from_diagonal(&DVector::from_fn(d, |n, _| {
        space.family.r_k(space.m + n as u64 + 1)
    }));
    Ladder { a, a_dag, n_op, r_op }
}

/// Max-norm deviations from the three commutation relations on the interior block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraReport {
    /// `[a, a†] - R`.
    pub commutator: f64,
    /// `[a†, R] - σ″ a†`.
    pub raising: f64,
    /// `[a, R] + σ″ a`.
    pub lowering: f64,
    /// `a†a |n⟩ - e_n |n⟩`.
    pub eigen: f64,
}

impl AlgebraReport {
    pub fn max_deviation(&self) -> f64 {
        self.commutator.max(self.raising).max(self.lowering).max(self.eigen)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.max_deviation() < tol
    }
}

fn interior_max(m: &DMatrix<f64>) -> f64 {
    let k = m.nrows() - 1;
    m.view((0, 0), (k, k)).iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// Checks the algebra on rows and columns `0..=D-2`; the top row is a truncation artifact.
pub fn check_algebra(space: &FockSpace) -> Result<AlgebraReport> {
    if space.dim < 3 {
        return Err(Error::Dimension(format!(
            "algebra check needs D >= 3, got {}",
            space.dim
        )));
    }
    let l = build_ladder(space);
    let spp = space.family.sigma_pp();
    let comm = |x: &DMatrix<f64>, y: &DMatrix<f64>| x * y - y * x;
    let n_count = &l.a_dag * &l.a;
    let e_diag = DMatrix::from_diagonal(&DVector::from_fn(space.dim, |n, _| {
        space.family.e_n(space.m, n as u64)
    }));
    Ok(AlgebraReport {
        commutator: interior_max(&(comm(&l.a, &l.a_dag) - &l.r_op)),
        raising: interior_max(&(comm(&l.a_dag, &l.r_op) - &l.a_dag * spp)),
        lowering: interior_max(&(comm(&l.a, &l.r_op) + &l.a * spp)),
        eigen: interior_max(&(n_count - e_diag)),
    })
}

/// `(a†)^p` applied to a truncated vector by repeated matrix multiplication.
pub fn photon_add(space: &FockSpace, vector: &Coefficients, p: u64) -> Result<Coefficients> {
    if p == 0 {
        return Ok(vector.clone());
    }
    let end = vector.end_label() + p;
    if end > space.dim as u64 {
        return Err(Error::Dimension(format!(
            "adding {p} quanta to labels below {} needs D >= {end}, have {}",
            vector.end_label(),
            space.dim
        )));
    }
    let a_dag = build_ladder(space).a_dag.map(|v| Complex64::new(v, 0.0));
    let mut v = DVector::from_fn(space.dim, |n, _| vector.at_label(n as u64));
    for _ in 0..p {
        v = &a_dag * v;
    }
    let offset = vector.offset + p;
    Ok(Coefficients {
        amplitudes: (offset..end).map(|l| v[l as usize]).collect(),
        offset,
        tail_bound: vector.tail_bound,
    })
}

/// Normalized `(a†)^p |z, m⟩` built from the `p = 0` state by matrix application.
///
/// The `p = 0` truncation is tightened until the last amplitude carries less
/// than `1e-24` of the norm.
pub fn photon_added_state(
    family: FamilySpec,
    f: FChoice,
    m: u64,
    z: Complex64,
    p: u64,
    tol: f64,
) -> Result<Coefficients> {
    let spec = StateSpec::new(z, m, 0, family, f)?;
    let mut tol = tol;
    for _ in 0..8 {
        let base = build_state(&spec, tol)?;
        let space = FockSpace::new(family, m, (base.end_label() + p) as usize + 1)?;
        let out = photon_add(&space, &base, p)?.normalized();
        let last = out.amplitudes.last().map_or(0.0, |c| c.norm_sqr());
        if last < 1e-24 {
            return Ok(out);
        }
        tol *= 1e-3;
    }
    Err(Error::convergence(
        "photon-added vector did not settle under truncation growth",
        None,
    ))
}
