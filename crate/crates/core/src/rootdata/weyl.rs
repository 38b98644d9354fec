use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot_iq, identity, mat_mul, mat_vec, mat_vec_q, transpose, IMat, Q};

use super::datum::RootDatum;

pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeylElement {
    /// Lexicographically smallest reduced word.
    pub word: Vec<usize>,
    /// Action on X_*(T).
    pub matrix: IMat,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn act(&self, x: &[i64]) -> Vec<i64> {
        mat_vec(&self.matrix, x)
    }

    pub fn act_q(&self, x: &[Q]) -> Vec<Q> {
        mat_vec_q(&self.matrix, x)
    }

    /// w⁻¹ acting on characters is the transpose of the cocharacter matrix.
    pub fn inverse_on_characters(&self, chi: &[i64]) -> Vec<i64> {
        let n = self.matrix.len();
        mat_vec(&transpose(&self.matrix, n), chi)
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    /// Ordered by length, then reduced word.
    pub elements: Vec<WeylElement>,
    index: HashMap<IMat, usize>,
    w0: usize,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn long_element(&self) -> &WeylElement {
        &self.elements[self.w0]
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn find(&self, matrix: &IMat) -> Option<&WeylElement> {
        self.index.get(matrix).map(|&i| &self.elements[i])
    }

    pub fn index_of(&self, matrix: &IMat) -> Option<usize> {
        self.index.get(matrix).copied()
    }

    /// Poincaré polynomial Σ_w q^{l(w)} as a coefficient list.
    pub fn poincare(&self) -> Vec<i64> {
        let top = self.long_element().length();
        let mut p = vec![0; top + 1];
        for w in &self.elements {
            p[w.length()] += 1;
        }
        p
    }

    pub fn compose(&self, a: &WeylElement, b: &WeylElement) -> &WeylElement {
        let m = mat_mul(&a.matrix, &b.matrix);
        self.find(&m).expect("Weyl group closed under composition")
    }
}

/// Enumerate W with the default cap.
pub fn weyl_group(rd: &RootDatum) -> Result<Arc<WeylGroup>> {
    weyl_group_capped(rd, DEFAULT_WEYL_CAP)
}

/// Enumerate W breadth-first by length. Each level is generated from the
/// previous one in word order with generators tried in ascending order, so
/// the first word reaching an element is its lexicographically least
/// reduced word.
pub fn weyl_group_capped(rd: &RootDatum, cap: usize) -> Result<Arc<WeylGroup>> {
    if let Some(w) = rd.weyl.get() {
        return Ok(Arc::clone(w));
    }
    let n = rd.lattice_rank();
    let gens: Vec<IMat> = (0..rd.rank()).map(|i| rd.reflection_matrix(i)).collect();
    let mut elements = vec![WeylElement { word: vec![], matrix: identity(n) }];
    let mut index: HashMap<IMat, usize> = HashMap::from([(identity(n), 0)]);
    let mut level = vec![0usize];
    while !level.is_empty() {
        let mut next = Vec::new();
        for &e in &level {
            for (i, s) in gens.iter().enumerate() {
                let m = mat_mul(&elements[e].matrix, s);
                if index.contains_key(&m) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::Resource(format!(
                        "Weyl group of {} exceeds the cap of {cap} elements",
                        rd.label()
                    )));
                }
                let mut word = elements[e].word.clone();
                word.push(i);
                index.insert(m.clone(), elements.len());
                next.push(elements.len());
                elements.push(WeylElement { word, matrix: m });
            }
        }
        level = next;
    }
    let w0 = elements.len() - 1;
    let group = Arc::new(WeylGroup { elements, index, w0 });
    let _ = rd.weyl.set(Arc::clone(&group));
    Ok(group)
}

/// Number of positive roots sent to negative roots by w (inversions of w⁻¹).
pub fn inversions(rd: &RootDatum, w: &WeylElement) -> usize {
    let x0 = rd.height_functional();
    let wx0 = w.act_q(x0);
    rd.positive_roots()
        .iter()
        .filter(|a| dot_iq(a, &wx0).is_negative())
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_datum;

    #[test]
    fn classical_orders() {
        for (name, order) in [
            ("A1", 2),
            ("A2", 6),
            ("B2", 8),
            ("G2", 12),
            ("A3", 24),
            ("B3", 48),
            ("C3", 48),
            ("D4", 192),
            ("A1×A1", 4),
            ("A4", 120),
            ("B4", 384),
            ("GL3", 6),
            ("SO6", 24),
        ] {
            let rd = build_root_datum(name).unwrap();
            assert_eq!(weyl_group(&rd).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let rd = build_root_datum("B3").unwrap();
        let err = weyl_group_capped(&rd, 10).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }

    #[test]
    fn long_element_properties() {
        for name in ["A2", "B2", "G2", "A3", "D4", "B3"] {
            let rd = build_root_datum(name).unwrap();
            let w = weyl_group(&rd).unwrap();
            let w0 = w.long_element();
            assert_eq!(w0.length(), rd.num_positive_roots(), "{name}");
            assert_eq!(inversions(&rd, w0), rd.num_positive_roots());
            // exactly one element of maximal length
            assert_eq!(w.elements.iter().filter(|e| e.length() == w0.length()).count(), 1);
        }
    }

    #[test]
    fn word_matches_matrix_and_length_is_inversions() {
        let rd = build_root_datum("B3").unwrap();
        let w = weyl_group(&rd).unwrap();
        for e in &w.elements {
            let mut m = identity(rd.lattice_rank());
            for &i in &e.word {
                m = mat_mul(&m, &rd.reflection_matrix(i));
            }
            assert_eq!(m, e.matrix);
            assert_eq!(inversions(&rd, e), e.length());
        }
        for i in 0..rd.rank() {
            let s = rd.reflection_matrix(i);
            assert_eq!(mat_mul(&s, &s), identity(rd.lattice_rank()));
        }
    }

    #[test]
    fn words_are_lex_minimal_in_a2() {
        let rd = build_root_datum("A2").unwrap();
        let w = weyl_group(&rd).unwrap();
        let words: Vec<_> = w.elements.iter().map(|e| e.word.clone()).collect();
        assert_eq!(words, vec![vec![], vec![0], vec![1], vec![0, 1], vec![1, 0], vec![0, 1, 0]]);
    }

    #[test]
    fn poincare_a2() {
        let rd = build_root_datum("A2").unwrap();
        assert_eq!(weyl_group(&rd).unwrap().poincare(), vec![1, 2, 2, 1]);
    }
}
