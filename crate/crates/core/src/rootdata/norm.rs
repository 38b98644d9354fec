use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::linalg::{dot_iq, dot_q, Q};

use super::datum::RootDatum;
use super::weyl::weyl_group;
use super::{Coweight, Weight};

/// ρ = ½ Σ_{α>0} α.
pub fn rho(rd: &RootDatum) -> Weight {
    let mut s = vec![Q::zero(); rd.lattice_rank()];
    for a in rd.positive_roots() {
        for (x, y) in s.iter_mut().zip(a) {
            *x += Q::from_integer(*y);
        }
    }
    Weight(s.into_iter().map(|x| x / 2).collect())
}

/// ‖μ‖* = max_w ⟨wμ, ρ⟩, evaluated at the dominant representative of the
/// orbit (where ⟨·, ρ⟩ is maximal).
pub fn norm_star(rd: &RootDatum, mu: &Coweight) -> Q {
    let (dom, _) = rd.dominant(&mu.0);
    dot_q(&dom, &rho(rd).0)
}

/// ‖μ‖* as the literal maximum over the enumerated Weyl group.
pub fn norm_star_weyl_max(rd: &RootDatum, mu: &Coweight) -> Result<Q> {
    let w = weyl_group(rd)?;
    let r = rho(rd);
    Ok(w.elements
        .iter()
        .map(|e| dot_q(&e.act_q(&mu.0), &r.0))
        .max()
        .unwrap_or_else(Q::zero))
}

/// Half the sum of the positive ⟨α, μ⟩ over all roots α, i.e. the
/// half-sum of the positive weights of Ad∘μ.
pub fn norm_star_adjoint(rd: &RootDatum, mu: &Coweight) -> Q {
    let total = rd
        .roots()
        .iter()
        .map(|a| dot_iq(a, &mu.0))
        .filter(|x| x.is_positive())
        .fold(Q::zero(), |acc, x| acc + x);
    total / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::rootdata::build_root_datum;

    fn fundamental_coweight(rd: &RootDatum, i: usize) -> Coweight {
        let a: Vec<Vec<Q>> = rd.simple_roots().iter().map(|r| crate::linalg::to_q(r)).collect();
        let mut b = vec![Q::zero(); rd.rank()];
        b[i] = q(1);
        Coweight(crate::linalg::solve_q(&a, &b).unwrap())
    }

    #[test]
    fn rho_examples() {
        let a1 = build_root_datum("A1").unwrap();
        let r = rho(&a1);
        assert_eq!(dot_iq(&a1.simple_coroots()[0], &r.0), q(1));
        let a2 = build_root_datum("A2").unwrap();
        // α1 + α2 in fundamental-weight coordinates is (1, 1)
        assert_eq!(rho(&a2).0, vec![q(1), q(1)]);
        let a11 = build_root_datum("A1×A1").unwrap();
        assert_eq!(rho(&a11).0, vec![q(1), q(1)]);
    }

    #[test]
    fn norm_examples() {
        let a1 = build_root_datum("A1").unwrap();
        assert_eq!(norm_star(&a1, &Coweight::from_ints(&[1])), q(1));
        assert_eq!(norm_star_adjoint(&a1, &Coweight::from_ints(&[1])), q(1));
        assert_eq!(norm_star(&a1, &Coweight::zero(1)), q(0));
        let a2 = build_root_datum("A2").unwrap();
        let w1 = fundamental_coweight(&a2, 0);
        assert_eq!(w1.0, vec![Q::new(2, 3), Q::new(1, 3)]);
        assert_eq!(norm_star_weyl_max(&a2, &w1).unwrap(), q(1));
        assert_eq!(norm_star(&a2, &w1), q(1));
        assert_eq!(norm_star_adjoint(&a2, &w1), q(1));
        let a11 = build_root_datum("A1×A1").unwrap();
        assert_eq!(norm_star_adjoint(&a11, &Coweight::from_ints(&[1, 0])), q(1));
    }

    #[test]
    fn norm_routes_agree_on_gl_and_so() {
        for name in ["GL3", "SO5", "SO6", "G2", "C3"] {
            let rd = build_root_datum(name).unwrap();
            let n = rd.lattice_rank();
            for k in 0..(5i64.pow(n as u32)) {
                let v: Vec<i64> = (0..n).map(|i| (k / 5i64.pow(i as u32)) % 5 - 2).collect();
                let mu = Coweight::from_ints(&v);
                let a = norm_star(&rd, &mu);
                assert_eq!(a, norm_star_weyl_max(&rd, &mu).unwrap(), "{name} {v:?}");
                assert_eq!(a, norm_star_adjoint(&rd, &mu), "{name} {v:?}");
            }
        }
    }
}
