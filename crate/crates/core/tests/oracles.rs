//! Independent checks of the affine length formula and the double-coset
//! counts.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;

use supamp_core::affine_hecke::{affine_length, double_coset_count, lattice_oracle_count, OracleGroup};
use supamp_core::linalg::IMat;
use supamp_core::rootdata::{rho, weyl_group};
use supamp_core::{build_root_datum, Coweight, RootDatum};

type Affine = (IMat, Vec<i64>); // x ↦ Mx + t

fn compose(a: &Affine, b: &Affine) -> Affine {
    let n = a.1.len();
    let m: IMat = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a.0[i][k] * b.0[k][j]).sum()).collect()).collect();
    let t: Vec<i64> = (0..n).map(|i| (0..n).map(|k| a.0[i][k] * b.1[k]).sum::<i64>() + a.1[i]).collect();
    (m, t)
}

/// Highest root (largest height in the simple roots) and its coroot.
fn highest(rd: &RootDatum) -> (Vec<i64>, Vec<i64>) {
    let (j, a) = rd
        .positive_roots()
        .iter()
        .enumerate()
        .max_by_key(|(_, a)| solve_simple(rd, a).iter().sum::<i64>())
        .unwrap();
    (a.clone(), rd.positive_coroots()[j].clone())
}

/// Coordinates of a root in the simple roots, by enumeration.
fn solve_simple(rd: &RootDatum, a: &[i64]) -> Vec<i64> {
    let r = rd.rank();
    let mut c = vec![0i64; r];
    loop {
        let v: Vec<i64> = (0..a.len()).map(|k| (0..r).map(|i| c[i] * rd.simple_roots()[i][k]).sum()).collect();
        if v == a {
            return c;
        }
        let mut i = 0;
        loop {
            c[i] += 1;
            if c[i] <= 4 {
                break;
            }
            c[i] = 0;
            i += 1;
            assert!(i < r, "root {a:?} not found");
        }
    }
}

/// Affine Weyl group ball by BFS over s₀, …, s_r.
fn affine_ball(rd: &RootDatum, depth: usize) -> HashMap<Affine, usize> {
    let n = rd.lattice_rank();
    let mut gens: Vec<Affine> = (0..rd.rank()).map(|i| (rd.reflection_matrix(i), vec![0; n])).collect();
    // s₀ : x ↦ x − (⟨θ, x⟩ − 1)θ∨
    let (th, thc) = highest(rd);
    let m: IMat = (0..n).map(|r| (0..n).map(|c| i64::from(r == c) - thc[r] * th[c]).collect()).collect();
    gens.push((m, thc.clone()));
    let id: Affine = ((0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect(), vec![0; n]);
    let mut seen = HashMap::from([(id.clone(), 0usize)]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let d = seen[&x];
        if d == depth {
            continue;
        }
        for g in &gens {
            let y = compose(&x, g);
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    seen
}

#[test]
fn affine_length_matches_coxeter_bfs() {
    for (name, depth) in [("A1", 12), ("A2", 9), ("B2", 9), ("G2", 9), ("A3", 6)] {
        let rd = build_root_datum(name).unwrap();
        let w = weyl_group(&rd).unwrap();
        let ball = affine_ball(&rd, depth);
        for ((m, t), d) in &ball {
            let e = w.find(m).expect("finite part lies in W");
            let l = affine_length(&rd, &Coweight::from_ints(t), e).unwrap();
            assert_eq!(l as usize, *d, "{name}: t = {t:?}, w = {:?}", e.word);
        }
    }
}

/// |KλK/K| = q^{⟨2ρ,λ⟩} W(q⁻¹)/W_λ(q⁻¹), cleared of denominators.
#[test]
fn counts_match_macdonald() {
    let cases: &[(&str, &[&[i64]])] = &[
        ("A1", &[&[0], &[1], &[3]]),
        ("A2", &[&[1, 0], &[1, 1], &[2, 1], &[-1, 2]]),
        ("B2", &[&[1, 0], &[0, 1], &[2, 1]]),
        ("G2", &[&[1, 0], &[0, 1], &[1, 1]]),
        ("A3", &[&[1, 0, 0], &[1, 2, 1]]),
        ("GL3", &[&[1, 0, 0], &[2, 1, 0], &[3, -1, 0]]),
        ("SO5", &[&[1, 0], &[1, 1]]),
    ];
    for (name, lams) in cases {
        let rd = build_root_datum(name).unwrap();
        let w = weyl_group(&rd).unwrap();
        let np = rd.num_positive_roots() as u32;
        for lam in *lams {
            let mu = Coweight::from_ints(lam);
            let (dom, _) = rd.dominant(&mu.0);
            let dom_i: Vec<i64> = dom.iter().map(|x| x.to_integer()).collect();
            let two_rho_lambda: i64 = rho(&rd).0.iter().zip(&dom).map(|(r, x)| (r * x * 2).to_integer()).sum();
            let poly = double_coset_count(&rd, &mu).unwrap();
            for qv in [2u64, 3, 5, 7] {
                let qb = BigInt::from(qv);
                let pw = |e: u32| num_traits::pow(qb.clone(), e as usize);
                let stab: BigInt = w.elements.iter().filter(|e| e.act(&dom_i) == dom_i).map(|e| pw(np - e.length() as u32)).sum();
                let full: BigInt = w.elements.iter().map(|e| pw(np - e.length() as u32)).sum();
                let lhs = poly.eval(qv) * stab;
                let rhs = pw(two_rho_lambda as u32) * full;
                assert_eq!(lhs, rhs, "{name} λ={lam:?} q={qv}");
            }
        }
    }
}

#[test]
fn rank_one_counts_match_lattices() {
    for qv in [2u64, 3, 5, 7] {
        for n in 0..=4u32 {
            let gl = double_coset_count(&build_root_datum("GL2").unwrap(), &Coweight::from_ints(&[n as i64, 0])).unwrap();
            assert_eq!(gl.eval(qv), lattice_oracle_count(OracleGroup::GL2, n, qv).unwrap().into());
            let sl = double_coset_count(&build_root_datum("SL2").unwrap(), &Coweight::from_ints(&[n as i64])).unwrap();
            assert_eq!(sl.eval(qv), lattice_oracle_count(OracleGroup::SL2, n, qv).unwrap().into());
        }
    }
}
