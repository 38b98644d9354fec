use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use num_traits::{Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::linalg::{dot, dot_iq, solve_q, to_q, IMat, Q};

use super::weyl::WeylGroup;

/// Beyond this many roots the Cartan matrix is certainly not of finite type.
const ROOT_CAP: usize = 20_000;

#[derive(Debug, Clone)]
pub struct RootDatum {
    name: Option<String>,
    lattice_rank: usize,
    simple_roots: IMat,
    simple_coroots: IMat,
    cartan: IMat,
    positive_roots: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    /// x₀ with ⟨αᵢ, x₀⟩ = 1 for every simple root; decides positivity.
    height: Vec<Q>,
    pub(super) weyl: OnceLock<Arc<WeylGroup>>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.lattice_rank == other.lattice_rank
            && self.simple_roots == other.simple_roots
            && self.simple_coroots == other.simple_coroots
    }
}

impl RootDatum {
    /// Build from explicit simple roots and coroots on ℤⁿ, validating the
    /// Cartan matrix and generating the full root system.
    pub fn new(
        name: Option<String>,
        lattice_rank: usize,
        simple_roots: IMat,
        simple_coroots: IMat,
    ) -> Result<Self> {
        if lattice_rank == 0 {
            return invalid("lattice rank must be positive");
        }
        if simple_roots.len() != simple_coroots.len() {
            return invalid(format!(
                "{} simple roots but {} simple coroots",
                simple_roots.len(),
                simple_coroots.len()
            ));
        }
        for (i, v) in simple_roots.iter().chain(&simple_coroots).enumerate() {
            if v.len() != lattice_rank {
                return invalid(format!(
                    "vector #{i} has length {} but the lattice rank is {lattice_rank}",
                    v.len()
                ));
            }
        }
        let r = simple_roots.len();
        let cartan: IMat = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| dot(&simple_roots[i], &simple_coroots[j]))
                    .collect()
            })
            .collect();
        for i in 0..r {
            for j in 0..r {
                let c = cartan[i][j];
                if i == j && c != 2 {
                    return invalid(format!("Cartan entry C[{i}][{i}] = {c}, expected 2"));
                }
                if i != j && c > 0 {
                    return invalid(format!("Cartan entry C[{i}][{j}] = {c} is positive"));
                }
                if i != j && (c == 0) != (cartan[j][i] == 0) {
                    return invalid(format!(
                        "Cartan entries C[{i}][{j}] = {c} and C[{j}][{i}] = {} are not both zero or both nonzero",
                        cartan[j][i]
                    ));
                }
            }
        }
        let height = if r == 0 {
            vec![Q::zero(); lattice_rank]
        } else {
            let a: Vec<Vec<Q>> = simple_roots.iter().map(|v| to_q(v)).collect();
            solve_q(&a, &vec![Q::from_integer(1); r]).ok_or_else(|| {
                Error::Validation("simple roots are linearly dependent".into())
            })?
        };
        let mut rd = RootDatum {
            name,
            lattice_rank,
            simple_roots,
            simple_coroots,
            cartan,
            positive_roots: Vec::new(),
            positive_coroots: Vec::new(),
            height,
            weyl: OnceLock::new(),
        };
        rd.generate_roots()?;
        Ok(rd)
    }

    /// Orbit of the simple (root, coroot) pairs under simple reflections.
    fn generate_roots(&mut self) -> Result<()> {
        let r = self.rank();
        let mut coroot_of: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut stack: Vec<(Vec<i64>, Vec<i64>)> = (0..r)
            .map(|i| (self.simple_roots[i].clone(), self.simple_coroots[i].clone()))
            .collect();
        while let Some((a, ac)) = stack.pop() {
            match coroot_of.get(&a) {
                Some(prev) if *prev != ac => {
                    return invalid(format!(
                        "root {a:?} is reached with two different coroots {prev:?} and {ac:?}"
                    ))
                }
                Some(_) => continue,
                None => {}
            }
            if coroot_of.len() >= ROOT_CAP {
                return invalid("Cartan matrix is not of finite type (root orbit is unbounded)");
            }
            coroot_of.insert(a.clone(), ac.clone());
            for i in 0..r {
                let ai = &self.simple_roots[i];
                let aci = &self.simple_coroots[i];
                // s_i on characters: χ − ⟨χ, α_i∨⟩α_i; on cocharacters: x − ⟨α_i, x⟩α_i∨
                let k = dot(&a, aci);
                let kc = dot(ai, &ac);
                let sa: Vec<i64> = a.iter().zip(ai).map(|(x, y)| x - k * y).collect();
                let sac: Vec<i64> = ac.iter().zip(aci).map(|(x, y)| x - kc * y).collect();
                if !coroot_of.contains_key(&sa) {
                    stack.push((sa, sac));
                }
            }
        }
        let mut pos: BTreeMap<(Q, Vec<i64>), Vec<i64>> = BTreeMap::new();
        for (a, ac) in &coroot_of {
            let h = dot_iq(a, &self.height);
            if h.is_zero() {
                return Err(Error::Consistency(format!("root {a:?} has height zero")));
            }
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            let negc: Vec<i64> = ac.iter().map(|x| -x).collect();
            if coroot_of.get(&neg) != Some(&negc) {
                return invalid(format!("root system not closed under negation at {a:?}"));
            }
            if h.is_positive() {
                pos.insert((h, a.clone()), ac.clone());
            }
        }
        self.positive_roots = pos.keys().map(|(_, a)| a.clone()).collect();
        self.positive_coroots = pos.into_values().collect();
        Ok(())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| "unnamed".to_string())
    }

    /// Semisimple rank: the number of simple roots.
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn is_semisimple(&self) -> bool {
        self.rank() == self.lattice_rank
    }

    pub fn simple_roots(&self) -> &IMat {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &IMat {
        &self.simple_coroots
    }

    pub fn cartan(&self) -> &IMat {
        &self.cartan
    }

    /// Positive roots sorted by height, then coordinates.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Coroots matching [`positive_roots`](Self::positive_roots) entry by entry.
    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// All roots, positive ones first then their negatives.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut out = self.positive_roots.clone();
        out.extend(
            self.positive_roots
                .iter()
                .map(|a| a.iter().map(|x| -x).collect::<Vec<_>>()),
        );
        out
    }

    /// Sign of a root (or any character) under the chamber functional.
    pub fn is_positive_root(&self, a: &[i64]) -> bool {
        dot_iq(a, &self.height).is_positive()
    }

    pub(crate) fn height_functional(&self) -> &[Q] {
        &self.height
    }

    /// Matrix of the simple reflection s_i on X_*(T).
    pub fn reflection_matrix(&self, i: usize) -> IMat {
        let n = self.lattice_rank;
        let a = &self.simple_roots[i];
        let ac = &self.simple_coroots[i];
        (0..n)
            .map(|row| {
                (0..n)
                    .map(|col| i64::from(row == col) - ac[row] * a[col])
                    .collect()
            })
            .collect()
    }

    /// Direct product: lattices are concatenated.
    pub fn product(factors: &[RootDatum]) -> Result<RootDatum> {
        let n: usize = factors.iter().map(|f| f.lattice_rank).sum();
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut offset = 0;
        for f in factors {
            for (a, ac) in f.simple_roots.iter().zip(&f.simple_coroots) {
                let mut ra = vec![0; n];
                let mut rc = vec![0; n];
                ra[offset..offset + f.lattice_rank].copy_from_slice(a);
                rc[offset..offset + f.lattice_rank].copy_from_slice(ac);
                roots.push(ra);
                coroots.push(rc);
            }
            offset += f.lattice_rank;
        }
        let name = factors
            .iter()
            .map(|f| f.label())
            .collect::<Vec<_>>()
            .join("×");
        RootDatum::new(Some(name), n, roots, coroots)
    }

    /// Torus of dimension n: no roots.
    pub fn torus(n: usize) -> Result<RootDatum> {
        RootDatum::new(Some(format!("T{n}")), n, vec![], vec![])
    }

    /// Sub-datum generated by a subset of the simple roots on the same lattice.
    pub fn levi(&self, simple: &[usize], name: impl Into<String>) -> Result<RootDatum> {
        RootDatum::new(
            Some(name.into()),
            self.lattice_rank,
            simple.iter().map(|&i| self.simple_roots[i].clone()).collect(),
            simple.iter().map(|&i| self.simple_coroots[i].clone()).collect(),
        )
    }

    /// ⟨α_i, μ⟩ for every simple root.
    pub fn simple_pairings(&self, mu: &[Q]) -> Vec<Q> {
        self.simple_roots.iter().map(|a| dot_iq(a, mu)).collect()
    }

    pub fn is_dominant(&self, mu: &[Q]) -> bool {
        self.simple_pairings(mu).iter().all(|x| !x.is_negative())
    }

    /// Dominant representative of the W-orbit of μ together with the
    /// simple reflections applied (in order).
    pub fn dominant(&self, mu: &[Q]) -> (Vec<Q>, Vec<usize>) {
        let mut x = mu.to_vec();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| dot_iq(&self.simple_roots[i], &x).is_negative()) {
            let k = dot_iq(&self.simple_roots[i], &x);
            for (xj, c) in x.iter_mut().zip(&self.simple_coroots[i]) {
                *xj -= k * Q::from_integer(*c);
            }
            word.push(i);
        }
        (x, word)
    }

    /// Coordinate height max|x_i| of an integral coweight.
    pub fn coordinate_height(v: &[i64]) -> i64 {
        crate::linalg::max_abs(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_datum;

    #[test]
    fn rejects_positive_off_diagonal() {
        let err = RootDatum::new(None, 2, vec![vec![2, 1], vec![1, 2]], vec![vec![1, 0], vec![0, 1]])
            .unwrap_err();
        assert!(err.to_string().contains("C[0][1]"), "{err}");
    }

    #[test]
    fn rejects_affine_cartan() {
        // affine A1: C = [[2,-2],[-2,2]] is not of finite type
        let err = RootDatum::new(None, 2, vec![vec![2, -2], vec![-2, 2]], vec![vec![1, 0], vec![0, 1]])
            .unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn rejects_asymmetric_zero_pattern() {
        let err = RootDatum::new(None, 2, vec![vec![2, -1], vec![0, 2]], vec![vec![1, 0], vec![0, 1]])
            .unwrap_err();
        assert!(err.to_string().contains("C[0][1]"), "{err}");
    }

    #[test]
    fn a1_basic() {
        let rd = build_root_datum("A1").unwrap();
        assert_eq!(rd.rank(), 1);
        assert_eq!(rd.num_positive_roots(), 1);
        assert_eq!(dot(&rd.positive_roots()[0], &rd.positive_coroots()[0]), 2);
    }

    #[test]
    fn a1xa1_orthogonal() {
        let rd = build_root_datum("A1×A1").unwrap();
        assert_eq!(rd.rank(), 2);
        assert_eq!(rd.cartan()[0][1], 0);
        assert_eq!(rd.num_positive_roots(), 2);
    }

    #[test]
    fn positive_root_counts() {
        for (name, n) in [("A2", 3), ("B2", 4), ("C3", 9), ("D4", 12), ("G2", 6), ("A4", 10), ("B3", 9)] {
            assert_eq!(build_root_datum(name).unwrap().num_positive_roots(), n, "{name}");
        }
    }

    #[test]
    fn coroot_of_negative_root() {
        let rd = build_root_datum("G2").unwrap();
        for (a, ac) in rd.positive_roots().iter().zip(rd.positive_coroots()) {
            assert_eq!(dot(a, ac), 2);
            assert!(rd.is_positive_root(a));
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            assert!(!rd.is_positive_root(&neg));
        }
    }

    #[test]
    fn dominant_representative() {
        let rd = build_root_datum("A2").unwrap();
        let (d, _) = rd.dominant(&to_q(&[-1, 0]));
        assert!(rd.is_dominant(&d));
        // −α1∨ is conjugate to the highest coroot α1∨ + α2∨
        assert_eq!(d, to_q(&[1, 1]));
    }
}
