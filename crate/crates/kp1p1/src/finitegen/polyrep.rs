//! Exact fits `F = sum_{j <= d} X^j sum_i c_ij B_i` over a basis `B_i` of `X`-free
//! series, with a rank certificate.

use crate::canonical::fit::Certificate;
use crate::error::{Error, Result};
use crate::exactseries::linalg::{solve, Solve};
use crate::exactseries::scalar::to_text;
use crate::exactseries::{BiSeries, Scalar, XPoly};
use num_traits::Zero;
use serde_json::json;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyRep {
    pub basis_names: Vec<String>,
    /// `coeffs[j][i]` multiplies `X^j B_i`.
    pub coeffs: Vec<Vec<Scalar>>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PolyFit {
    Fitted(PolyRep),
    Underdetermined(Certificate),
    Inconsistent(Certificate),
}

impl PolyFit {
    pub fn label(&self) -> &'static str {
        match self {
            PolyFit::Fitted(r) if r.certificate.overdetermined() => "fitted",
            PolyFit::Fitted(_) => "fitted (margin below 25%)",
            PolyFit::Underdetermined(_) => "underdetermined",
            PolyFit::Inconsistent(_) => "inconsistent",
        }
    }

    pub fn certificate(&self) -> Certificate {
        match self {
            PolyFit::Fitted(r) => r.certificate,
            PolyFit::Underdetermined(c) | PolyFit::Inconsistent(c) => *c,
        }
    }

    pub fn rep(&self) -> Option<&PolyRep> {
        match self {
            PolyFit::Fitted(r) => Some(r),
            _ => None,
        }
    }
}

/// Solve for `c_ij` using every coefficient of the target as an equation.
pub fn fit_polyrep(target: &BiSeries, x: &BiSeries, basis: &[(String, BiSeries)], x_degree: usize) -> PolyFit {
    let mut columns = Vec::new();
    let mut xp = BiSeries::one(target.trunc());
    for _ in 0..=x_degree {
        for (_, b) in basis {
            columns.push(&xp * b);
        }
        xp = &xp * x;
    }
    let coords = target.terms();
    let a: Vec<Vec<Scalar>> = coords.iter().map(|&(d1, d2, _)| columns.iter().map(|c| c.coeff(d1, d2)).collect()).collect();
    let b: Vec<Scalar> = coords.iter().map(|&(_, _, c)| c.clone()).collect();
    let (equations, unknowns) = (a.len(), columns.len());
    match solve(&a, &b) {
        Solve::Unique(v) => {
            let coeffs = v.chunks(basis.len()).map(|c| c.to_vec()).collect();
            PolyFit::Fitted(PolyRep {
                basis_names: basis.iter().map(|(n, _)| n.clone()).collect(),
                coeffs,
                certificate: Certificate { equations, unknowns, rank: unknowns },
            })
        }
        Solve::Underdetermined { rank, .. } => PolyFit::Underdetermined(Certificate { equations, unknowns, rank }),
        Solve::Inconsistent { rank } => PolyFit::Inconsistent(Certificate { equations, unknowns, rank }),
    }
}

impl PolyRep {
    /// Highest power of `X` with a nonzero coefficient.
    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|row| row.iter().any(|c| !c.is_zero()))
    }

    /// As a polynomial in `X` with series coefficients.
    pub fn to_xpoly(&self, basis: &[(String, BiSeries)]) -> Result<XPoly> {
        if basis.len() != self.basis_names.len() {
            return Err(Error::Other("basis size mismatch".into()));
        }
        let t = basis.first().map_or(0, |b| b.1.trunc());
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| row.iter().zip(basis).fold(BiSeries::zero(t), |acc, (c, (_, b))| &acc + &b.scale(c)))
            .collect();
        Ok(XPoly::from_coeffs(t, coeffs))
    }

    pub fn evaluate(&self, x: &BiSeries, basis: &[(String, BiSeries)]) -> Result<BiSeries> {
        Ok(self.to_xpoly(basis)?.eval(x))
    }

    /// Formal derivative in `X` with the basis held fixed.
    pub fn dd_x(&self) -> PolyRep {
        let mut coeffs: Vec<Vec<Scalar>> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, row)| row.iter().map(|c| c * Scalar::from_integer((j as i64).into())).collect())
            .collect();
        if coeffs.is_empty() {
            coeffs.push(vec![Scalar::zero(); self.basis_names.len()]);
        }
        PolyRep { basis_names: self.basis_names.clone(), coeffs, certificate: self.certificate }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = self.coeffs.iter().map(|r| r.iter().map(to_text).collect()).collect();
        json!({
            "basis": self.basis_names,
            "coefficients_by_x_power": rows,
            "x_degree": self.x_degree(),
            "certificate": self.certificate,
        })
    }
}
