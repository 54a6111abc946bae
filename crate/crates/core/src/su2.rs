//! Spin-`j` representation of su(2) on the canonical basis `|j;m⟩`.

use num_complex::Complex64;

use crate::eigen::operator_exponential;
use crate::error::Result;
use crate::lattice::{GridDim, LinearOperator};

#[derive(Debug, Clone, PartialEq)]
pub struct Su2Generators {
    pub dim: GridDim,
    pub jz: LinearOperator,
    pub jplus: LinearOperator,
    pub jminus: LinearOperator,
    pub jx: LinearOperator,
    pub jy: LinearOperator,
}

/// `J_z|m⟩ = m|m⟩`, `J_+|m⟩ = √((j-m)(j+m+1))|m+1⟩`, `J_- = J_+⁺`,
/// `J_x = (J_+ + J_-)/2`, `J_y = (J_+ - J_-)/(2i)`.
pub fn su2_generators(dim: GridDim) -> Su2Generators {
    let j = dim.j() as f64;
    let jz = LinearOperator::diagonal(dim, |m| Complex64::new(m as f64, 0.0));
    let jplus = LinearOperator::from_fn(dim, |r, c| {
        if r == c + 1 {
            let m = c as f64;
            Complex64::new(((j - m) * (j + m + 1.0)).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let jminus = jplus.adjoint();
    let jx = (&jplus + &jminus).scale_real(0.5);
    let jy = (&jplus - &jminus).scale(Complex64::new(0.0, -0.5));
    Su2Generators { dim, jz, jplus, jminus, jx, jy }
}

impl Su2Generators {
    /// `a₁J_x + a₂J_y + a₃J_z`.
    pub fn along(&self, a: [f64; 3]) -> LinearOperator {
        &(&self.jx.scale_real(a[0]) + &self.jy.scale_real(a[1])) + &self.jz.scale_real(a[2])
    }

    /// The rotation `e^{iω(a·J)}`.
    pub fn rotation(&self, omega: f64, a: [f64; 3]) -> Result<LinearOperator> {
        operator_exponential(&self.along(a), Complex64::new(0.0, omega))
    }

    /// `J_+J_- + J_-J_+ over 2 + J_z²`, which is `j(j+1)` times the identity.
    pub fn casimir(&self) -> LinearOperator {
        let pm = &self.jplus * &self.jminus;
        let mp = &self.jminus * &self.jplus;
        &(&pm + &mp).scale_real(0.5) + &(&self.jz * &self.jz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i() -> Complex64 {
        Complex64::i()
    }

    #[test]
    fn d3_matrices() {
        let g = su2_generators(GridDim::new(3).unwrap());
        let jz = LinearOperator::from_real_rows(g.dim, &[&[-1.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 1.0]]).unwrap();
        assert_eq!(g.jz, jz);
        let h = 0.5 * 2f64.sqrt();
        let jx = LinearOperator::from_real_rows(g.dim, &[&[0.0, h, 0.0], &[h, 0.0, h], &[0.0, h, 0.0]]).unwrap();
        assert!(g.jx.max_abs_diff(&jx) < 1e-15);
    }

    #[test]
    fn commutation_relations() {
        for d in [3usize, 7, 15] {
            let g = su2_generators(GridDim::new(d).unwrap());
            let c = |a: &LinearOperator, b: &LinearOperator| a.commutator(b).unwrap();
            assert!(c(&g.jz, &g.jplus).max_abs_diff(&g.jplus) < 1e-12);
            assert!(c(&g.jz, &g.jminus).max_abs_diff(&g.jminus.scale_real(-1.0)) < 1e-12);
            assert!(c(&g.jminus, &g.jplus).max_abs_diff(&g.jz.scale_real(-2.0)) < 1e-12);
            assert!(c(&g.jx, &g.jy).max_abs_diff(&g.jz.scale(i())) < 1e-12);
            assert!(c(&g.jy, &g.jz).max_abs_diff(&g.jx.scale(i())) < 1e-12);
            assert!(c(&g.jz, &g.jx).max_abs_diff(&g.jy.scale(i())) < 1e-12);
            let j = g.dim.j() as f64;
            let cas = LinearOperator::identity(g.dim).scale_real(j * (j + 1.0));
            assert!(g.casimir().max_abs_diff(&cas) < 1e-12);
        }
    }

    #[test]
    fn rotation_about_z() {
        let g = su2_generators(GridDim::new(3).unwrap());
        let r = g.rotation(std::f64::consts::PI, [0.0, 0.0, 1.0]).unwrap();
        let want = LinearOperator::from_real_rows(g.dim, &[&[-1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, -1.0]]).unwrap();
        assert!(r.max_abs_diff(&want) < 1e-12);
        let r = g.rotation(0.7, [0.3, -0.5, 0.8]).unwrap();
        assert!(r.unitarity_defect() < 1e-12);
    }
}
