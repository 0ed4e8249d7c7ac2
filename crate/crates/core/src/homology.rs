//! Coboundary matrices and cohomology per (degree, weight) slice.

use std::fmt;

use serde::Serialize;

use crate::cochain::{coboundary_terms, Cochain, CochainSpace, Coefficients, Flavor};
use crate::error::{Error, Result};
use crate::liealg::Algebra;
use crate::linalg::{add_entry, Echelon, SparseMatrix, SparseVec};

/// Which cochain complex: Lie (alternating, trivial), Leibniz (tensor, trivial)
/// or Lie with coadjoint coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Lie,
    Leibniz,
    Coadjoint,
}

impl Theory {
    pub fn flavor(self) -> Flavor {
        match self {
            Theory::Leibniz => Flavor::Tensor,
            _ => Flavor::Alternating,
        }
    }

    pub fn coefficients(self) -> Coefficients {
        match self {
            Theory::Coadjoint => Coefficients::Coadjoint,
            _ => Coefficients::Trivial,
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Lie => "lie",
            Theory::Leibniz => "leibniz",
            Theory::Coadjoint => "coadjoint",
        })
    }
}

/// Matrix of a linear map `source -> target` whose row for each target basis
/// index is given by `terms`.
pub(crate) fn matrix_from_terms<F>(source: &CochainSpace, target: &CochainSpace, mut terms: F) -> SparseMatrix
where
    F: FnMut(&crate::cochain::BasisIndex) -> Vec<crate::cochain::Term>,
{
    let mut rows = Vec::with_capacity(target.dim());
    for idx in target.basis() {
        let mut row = SparseVec::new();
        for t in terms(idx) {
            if let Some((j, odd)) = source.locate(&t.slots, t.dual) {
                let c = if odd { -t.coeff } else { t.coeff };
                add_entry(&mut row, j, &c);
            }
        }
        rows.push(row);
    }
    SparseMatrix::from_rows(source.dim(), rows).with_labels(target.basis().to_vec(), source.basis().to_vec())
}

/// The coboundary between two given spaces of consecutive degree.
pub fn coboundary_between(alg: &Algebra, source: &CochainSpace, target: &CochainSpace) -> SparseMatrix {
    debug_assert_eq!(source.degree + 1, target.degree);
    matrix_from_terms(source, target, |idx| coboundary_terms(alg, idx))
}

/// Matrix of `d` from the degree-`q` basis to the degree-`(q+1)` basis.
pub fn coboundary_matrix(
    alg: &Algebra,
    q: usize,
    flavor: Flavor,
    coefficients: Coefficients,
    weight: Option<i64>,
) -> Result<SparseMatrix> {
    let source = CochainSpace::new(alg, q, flavor, coefficients, weight)?;
    let target = CochainSpace::new(alg, q + 1, flavor, coefficients, weight)?;
    Ok(coboundary_between(alg, &source, &target))
}

/// Cocycles modulo coboundaries at one node of a complex, with a solver that
/// reads off class coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    pub dim_space: usize,
    pub dim_kernel: usize,
    pub dim_image_in: usize,
    pub representatives: Vec<SparseVec>,
    solver: Echelon,
}

impl CohomologyBasis {
    /// `d_in: X^{q-1} -> X^q` (absent in degree 0), `d_out: X^q -> X^{q+1}`.
    pub fn compute(dim: usize, d_in: Option<&SparseMatrix>, d_out: &SparseMatrix, degree: usize) -> Result<Self> {
        assert_eq!(d_out.cols(), dim);
        if let Some(d_in) = d_in {
            assert_eq!(d_in.rows(), dim);
            if !d_out.mul(d_in).is_zero() {
                return Err(Error::NotAComplex { degree });
            }
        }
        let kernel = d_out.kernel();
        let mut solver = Echelon::new();
        if let Some(d_in) = d_in {
            for col in d_in.columns() {
                solver.insert(&col, None);
            }
        }
        let dim_image_in = solver.rank();
        let mut representatives = Vec::new();
        for v in kernel.iter() {
            if solver.insert(v, Some(representatives.len())) {
                representatives.push(v.clone());
            }
        }
        Ok(Self {
            dim_space: dim,
            dim_kernel: kernel.len(),
            dim_image_in,
            representatives,
            solver,
        })
    }

    pub fn betti(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of a cocycle, or `None` if `z` is not a cocycle
    /// of this node (i.e. not in span of coboundaries and representatives).
    pub fn class_of(&self, z: &SparseVec) -> Option<SparseVec> {
        self.solver.coordinates(z)
    }

    /// Whether `z` is a coboundary.
    pub fn is_exact(&self, z: &SparseVec) -> bool {
        matches!(self.class_of(z), Some(c) if c.is_empty())
    }
}

/// One (degree, weight) slice of a cohomology computation.
#[derive(Clone, Debug, Serialize)]
pub struct CohomologySlice {
    pub theory: Theory,
    #[serde(rename = "q")]
    pub degree: usize,
    #[serde(rename = "w")]
    pub weight: Option<i64>,
    pub dim_cochains: usize,
    pub dim_kernel: usize,
    pub dim_image_in: usize,
    pub betti: usize,
    pub representatives: Vec<Cochain>,
}

/// Cohomology of one slice, with representatives re-verified as cocycles.
pub fn cohomology(alg: &Algebra, q: usize, theory: Theory, weight: Option<i64>) -> Result<CohomologySlice> {
    let (flavor, coeffs) = (theory.flavor(), theory.coefficients());
    let here = CochainSpace::new(alg, q, flavor, coeffs, weight)?;
    let next = CochainSpace::new(alg, q + 1, flavor, coeffs, weight)?;
    let d_out = coboundary_between(alg, &here, &next);
    let d_in = if q > 0 {
        let prev = CochainSpace::new(alg, q - 1, flavor, coeffs, weight)?;
        Some(coboundary_between(alg, &prev, &here))
    } else {
        None
    };
    let h = CohomologyBasis::compute(here.dim(), d_in.as_ref(), &d_out, q)?;
    let mut representatives = Vec::new();
    for r in &h.representatives {
        if !d_out.apply(r).is_empty() {
            return Err(Error::NotAComplex { degree: q });
        }
        representatives.push(here.cochain_of(r));
    }
    debug_assert_eq!(h.dim_kernel - h.dim_image_in, h.betti());
    Ok(CohomologySlice {
        theory,
        degree: q,
        weight,
        dim_cochains: here.dim(),
        dim_kernel: h.dim_kernel,
        dim_image_in: h.dim_image_in,
        betti: h.betti(),
        representatives,
    })
}

/// The weights to sweep: the window for infinite algebras, the whole space otherwise.
pub fn weight_sweep(alg: &Algebra, window: u32) -> Vec<Option<i64>> {
    if alg.is_finite() {
        vec![None]
    } else {
        let w = window as i64;
        (-w..=w).map(Some).collect()
    }
}

/// Whether `z` (a cocycle in slice `q`) is a coboundary plus a multiple of `rep`.
pub fn same_class_up_to_scalar(
    alg: &Algebra,
    theory: Theory,
    weight: Option<i64>,
    z: &Cochain,
    rep: &Cochain,
) -> Result<bool> {
    let q = z.degree;
    let (flavor, coeffs) = (theory.flavor(), theory.coefficients());
    let here = CochainSpace::new(alg, q, flavor, coeffs, weight)?;
    let mut span = Echelon::new();
    if q > 0 {
        let prev = CochainSpace::new(alg, q - 1, flavor, coeffs, weight)?;
        for col in coboundary_between(alg, &prev, &here).columns() {
            span.insert(&col, None);
        }
    }
    let base = span.rank();
    let zv = here.vector_of(z)?;
    let rv = here.vector_of(rep)?;
    let mut with_z = span.clone();
    with_z.insert(&zv, None);
    let mut with_r = span.clone();
    with_r.insert(&rv, None);
    let r_rank = with_r.rank();
    with_r.insert(&zv, None);
    Ok(with_z.rank() == base + 1 && r_rank == base + 1 && with_r.rank() == base + 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceSummary {
    pub q: usize,
    pub w: Option<i64>,
    pub dim_cochains: usize,
    pub betti: usize,
    pub representatives: Vec<Cochain>,
}

/// A cohomology table across degrees and weights.
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub flavor: Theory,
    pub max_degree: usize,
    /// `null` when the whole (finite-dimensional) space was computed.
    pub weight_window: Option<u32>,
    pub slices: Vec<SliceSummary>,
}

pub fn cohomology_report(
    alg: &Algebra,
    theory: Theory,
    max_degree: usize,
    weights: &[Option<i64>],
    window: Option<u32>,
) -> Result<CohomologyReport> {
    let mut slices = Vec::new();
    for &w in weights {
        for q in 0..=max_degree {
            let s = cohomology(alg, q, theory, w)?;
            slices.push(SliceSummary {
                q,
                w,
                dim_cochains: s.dim_cochains,
                betti: s.betti,
                representatives: s.representatives,
            });
        }
    }
    Ok(CohomologyReport {
        algebra: alg.name(),
        flavor: theory,
        max_degree,
        weight_window: window,
        slices,
    })
}

pub fn betti_total(report: &CohomologyReport, q: usize) -> usize {
    report.slices.iter().filter(|s| s.q == q).map(|s| s.betti).sum()
}

/// Convenience for tests and reports: `(dα)` as a cochain in a given slice.
pub fn coboundary_of(alg: &Algebra, alpha: &Cochain, weight: Option<i64>) -> Result<Cochain> {
    let here = CochainSpace::new(alg, alpha.degree, alpha.flavor, alpha.coefficients, weight)?;
    let next = CochainSpace::new(alg, alpha.degree + 1, alpha.flavor, alpha.coefficients, weight)?;
    let d = coboundary_between(alg, &here, &next);
    Ok(next.cochain_of(&d.apply(&here.vector_of(alpha)?)))
}

