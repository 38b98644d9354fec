//! Symmetric pairs (G, H), the H-large criterion, and the (ST)/(T)/(NT)
//! trichotomy.

mod catalog;
mod classify;
mod largeness;
mod pair;

pub use catalog::{
    catalog, compact_control, find_pair, maclachlan_reid, sl_standard_weights, so_standard_weights,
    split_control,
};
pub use classify::{classify, rank_report, theta_split_rank, Classification, RankReport, Tag};
pub use largeness::{
    brute_force_witnesses, cone_search, is_h_large, largeness_analysis, LargenessAnalysis,
    LargenessConfig, LargenessWitness, DEFAULT_BRUTE_FORCE_HEIGHT,
};
pub use pair::{dual_torus_rank, norm_star_h, SymmetricPair};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn maclachlan_reid_witness() {
        let w = is_h_large(&maclachlan_reid().unwrap()).unwrap().unwrap();
        assert_eq!(w.mu, vec![1]);
        assert_eq!(w.margin, q(0));
    }

    #[test]
    fn controls() {
        assert!(is_h_large(&split_control().unwrap()).unwrap().is_none());
        let c = is_h_large(&compact_control().unwrap()).unwrap().unwrap();
        assert_eq!(c.margin, q(1));
        assert_eq!(classify(&split_control().unwrap()).unwrap().tag, Tag::ST);
        assert_eq!(classify(&compact_control().unwrap()).unwrap().tag, Tag::NT);
        assert_eq!(classify(&maclachlan_reid().unwrap()).unwrap().tag, Tag::T);
    }

    #[test]
    fn theta_split_ranks() {
        assert_eq!(theta_split_rank(&maclachlan_reid().unwrap()).unwrap(), 1);
        assert_eq!(theta_split_rank(&split_control().unwrap()).unwrap(), 1);
        assert_eq!(theta_split_rank(&compact_control().unwrap()).unwrap(), 0);
    }

    #[test]
    fn theta_absent_is_unsupported() {
        let mut p = maclachlan_reid().unwrap();
        p.theta = None;
        assert!(matches!(theta_split_rank(&p), Err(crate::Error::Unsupported(_))));
    }

    #[test]
    fn so_family_margins() {
        let m = |n: usize| is_h_large(&find_pair(&format!("so{n}1")).unwrap()).unwrap();
        assert!(m(2).is_none());
        assert_eq!(m(3).unwrap().margin, q(0));
        assert_eq!(m(4).unwrap().margin, q(1) / 2);
        assert_eq!(m(5).unwrap().margin, q(1));
    }

    #[test]
    fn expected_tags() {
        let expect = [
            ("su21", Tag::T),
            ("su31", Tag::NT),
            ("su41", Tag::NT),
            ("su51", Tag::NT),
            ("so21", Tag::ST),
            ("so31", Tag::T),
            ("so41", Tag::NT),
            ("so51", Tag::NT),
            ("sl2xsl2-diag", Tag::T),
            ("sl3xsl3-diag", Tag::T),
        ];
        for (name, tag) in expect {
            assert_eq!(classify(&find_pair(name).unwrap()).unwrap().tag, tag, "{name}");
        }
    }
}
