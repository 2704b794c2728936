//! Finite generation of `F_2` over the generator ring and the genus-2 anomaly equation.

pub mod hae;
pub mod polyrep;

pub use hae::{hae_table, Convention, HaeConstant, HaeInputs, HaeRow};
pub use polyrep::{fit_polyrep, PolyFit, PolyRep};

use crate::canonical::CanonicalData;
use crate::error::Result;
use crate::exactseries::{BiSeries, XPoly};
use crate::frobenius::Params;
use crate::genus0::i_function;
use crate::graphsum::{GraphSum, PsiCache};
use crate::rmatrix::{edge_bivector, RMatrix};

/// R-matrix depth that suffices for every genus-2 and genus-1 graph used here.
pub const GENUS2_DEPTH: u32 = 3;

/// `X`-degree bound for `F_2`.
pub const F2_X_DEGREE: usize = 3;

pub fn coefficient_basis(f: &XPoly, x_degree: usize) -> Vec<(String, BiSeries)> {
    (0..=x_degree).map(|j| (format!("C{j}"), f.coeff(j))).collect()
}

/// A deterministic series with no relation to the model.
pub fn control_series(trunc: u32) -> BiSeries {
    BiSeries::from_fn(trunc, |a, b| crate::exactseries::scalar::frac(((7 * a + 3 * b + 1) % 13) as i64 - 6, (a + 2 * b + 1) as i64))
}

/// Results of the genus-2 pipeline at one truncation.
#[derive(Clone, Debug)]
pub struct Genus2 {
    pub params: Params,
    pub trunc: u32,
    pub inputs: HaeInputs,
    pub basis: Vec<(String, BiSeries)>,
    pub fit: PolyFit,
    /// Same fit with `X` withheld.
    pub fit_without_x: PolyFit,
    /// A random series against the full basis.
    pub fit_control: PolyFit,
}

impl Genus2 {
    pub fn compute(p: &Params, trunc: u32, psi: &PsiCache) -> Result<Self> {
        Self::compute_with_depth(p, trunc, GENUS2_DEPTH, psi)
    }

    /// `depth` is the R-matrix z-order; anything below 3 misses genus-2 tails.
    pub fn compute_with_depth(p: &Params, trunc: u32, depth: u32, psi: &PsiCache) -> Result<Self> {
        if depth < GENUS2_DEPTH {
            return Err(crate::Error::InvalidConfig(format!("R-matrix depth {depth} is below 3g-3 = 3")));
        }
        let data = CanonicalData::new(p, trunc)?;
        let r = RMatrix::compute(&data, depth)?;
        let edge = edge_bivector(&data, &r)?;
        let gs = GraphSum::new(&data, &r, &edge, psi, 2)?;
        let inputs = HaeInputs::compute(&gs, &i_function(p, trunc, 2))?;
        let basis = coefficient_basis(&inputs.f2, F2_X_DEGREE);
        let target = inputs.f2.eval(&inputs.x);
        let fit = fit_polyrep(&target, &inputs.x, &basis, F2_X_DEGREE);
        let fit_without_x = fit_polyrep(&target, &inputs.x, &basis, 0);
        let fit_control = fit_polyrep(&control_series(trunc), &inputs.x, &basis, F2_X_DEGREE);
        Ok(Genus2 { params: p.clone(), trunc, inputs, basis, fit, fit_without_x, fit_control })
    }

    /// `dF_2/dX` from the graph sum, differentiated before `X` is substituted.
    pub fn dd_x_f2(&self) -> BiSeries {
        self.inputs.f2.d_x().eval(&self.inputs.x)
    }

    /// `dF_2/dX` through the fitted representation, when the fit is unique.
    pub fn dd_x_fitted(&self) -> Option<BiSeries> {
        self.fit.rep()?.dd_x().evaluate(&self.inputs.x, &self.basis).ok()
    }

    pub fn hae_row(&self, c: HaeConstant, conv: Convention) -> HaeRow {
        self.hae().into_iter().find(|r| r.constant_label == c.label() && r.convention == conv).expect("every pair is tabulated")
    }

    pub fn hae(&self) -> Vec<HaeRow> {
        hae_table(&self.inputs, &self.dd_x_f2())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::scalar::{frac, int};

    #[test]
    fn anomaly_closes_only_with_stable_splits_and_unit_constant() {
        let psi = PsiCache::new();
        let g = Genus2::compute(&Params::from_ints(3, 5).unwrap(), 3, &psi).unwrap();
        assert_eq!(g.inputs.f2.eval(&g.inputs.x).constant_term(), &frac(1, 1440));
        assert_eq!(g.inputs.f2.degree(), Some(3));
        let closing: Vec<_> = g.hae().into_iter().filter(|r| r.closes).map(|r| (r.constant_label, r.convention)).collect();
        assert_eq!(closing, vec![("propagator", Convention::StableSplits)]);
        assert!(g.inputs.formal_residual(&int(1)).is_zero());
        assert!(!g.inputs.formal_residual(&frac(-1, 2)).is_zero());
        // Doubling the right-hand side must break the identity.
        let lhs = g.dd_x_f2();
        assert!(!g.inputs.residual(&lhs, &int(2), Convention::StableSplits).is_zero());
        assert!(matches!(g.fit_without_x, PolyFit::Inconsistent(_)));
    }
}
