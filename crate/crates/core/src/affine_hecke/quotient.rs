use crate::error::{Error, Result};
use crate::linalg::{column_reduce, identity, mat_vec, mat_vec_q, transpose, unimodular_inverse, IMat};
use crate::rootdata::{Coweight, RootDatum};

/// A datum on X_*(T)/X_*(A_G) together with the projection onto it.
#[derive(Debug, Clone)]
pub struct CentralQuotient {
    pub datum: RootDatum,
    /// (n − c) × n integer matrix X_*(T) → X_*(T)/X_*(A_G).
    pub projection: IMat,
    /// ℤ-basis of X_*(A_G) (saturated), as vectors in X_*(T).
    pub central_basis: Vec<Vec<i64>>,
}

impl CentralQuotient {
    pub fn project(&self, mu: &Coweight) -> Coweight {
        Coweight(mat_vec_q(&self.projection, &mu.0))
    }
}

/// Divide out the central cocharacters {x : ⟨α, x⟩ = 0 ∀α}. A unimodular
/// change of basis U with R·U = [H | 0] splits X_*(T) = span(first n−c
/// columns) ⊕ X_*(A_G); roots only see the first block.
pub fn quotient_by_central_torus(rd: &RootDatum) -> Result<CentralQuotient> {
    let n = rd.lattice_rank();
    if rd.is_semisimple() {
        return Ok(CentralQuotient {
            datum: rd.clone(),
            projection: identity(n),
            central_basis: vec![],
        });
    }
    if rd.rank() == 0 {
        return Err(Error::Unsupported(format!(
            "{} is a torus; its semisimple quotient has rank 0",
            rd.label()
        )));
    }
    let (u, r) = column_reduce(rd.simple_roots(), n);
    let uinv = unimodular_inverse(&u)
        .ok_or_else(|| Error::Consistency("column reduction produced a singular transform".into()))?;
    let projection: IMat = uinv[..r].to_vec();
    let ut = transpose(&u, n);
    let roots: IMat = rd
        .simple_roots()
        .iter()
        .map(|a| {
            let full = mat_vec(&ut, a);
            debug_assert!(full[r..].iter().all(|&x| x == 0));
            full[..r].to_vec()
        })
        .collect();
    let coroots: IMat = rd.simple_coroots().iter().map(|c| mat_vec(&projection, c)).collect();
    let central_basis = (r..n).map(|j| u.iter().map(|row| row[j]).collect()).collect();
    let name = rd.name().map(|s| format!("{s}/Z"));
    let datum = RootDatum::new(name, r, roots, coroots)?;
    if datum.cartan() != rd.cartan() {
        return Err(Error::Consistency("quotient changed the Cartan matrix".into()));
    }
    Ok(CentralQuotient { datum, projection, central_basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_datum;

    #[test]
    fn gl2_to_rank_one() {
        let gl2 = build_root_datum("GL2").unwrap();
        let qd = quotient_by_central_torus(&gl2).unwrap();
        assert_eq!(qd.datum.lattice_rank(), 1);
        assert!(qd.datum.is_semisimple());
        // PGL2: X_* is the coweight lattice, so α∨ = 2ω∨ and ⟨α, ω∨⟩ = 1
        assert_eq!(qd.datum.simple_roots()[0][0].abs(), 1);
        assert_eq!(qd.datum.simple_coroots()[0][0].abs(), 2);
        assert!(qd.project(&Coweight::from_ints(&[1, 1])).is_zero());
        assert_eq!(qd.central_basis.len(), 1);
    }

    #[test]
    fn semisimple_is_unchanged() {
        let sl2 = build_root_datum("A1").unwrap();
        let qd = quotient_by_central_torus(&sl2).unwrap();
        assert_eq!(qd.datum, sl2);
    }

    #[test]
    fn torus_is_unsupported() {
        let t = build_root_datum("T2").unwrap();
        assert!(matches!(quotient_by_central_torus(&t), Err(Error::Unsupported(_))));
    }
}
