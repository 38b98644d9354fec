//! Built-in symmetric pairs. Every entry states where θ lives relative to
//! the tori in its `note`.

use crate::error::Result;
use crate::linalg::{identity, IMat};
use crate::rootdata::{build_root_datum, RootDatum, Weight};

use super::pair::SymmetricPair;

fn pad(blocks: &[(usize, Vec<Weight>)], n: usize) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (len, ws) in blocks {
        for w in ws {
            let mut v = Weight::zero(n);
            v.0[offset..offset + len].copy_from_slice(&w.0);
            out.push(v);
        }
        offset += len;
    }
    out
}

/// Weights of the standard representation of SL_{n+1} in fundamental-weight
/// coordinates: ε₁ = ω₁, ε_i = ω_i − ω_{i−1}, ε_{n+1} = −ω_n.
pub fn sl_standard_weights(n: usize) -> Vec<Weight> {
    (0..=n)
        .map(|i| {
            let mut v = vec![0i64; n];
            if i < n {
                v[i] += 1;
            }
            if i > 0 {
                v[i - 1] -= 1;
            }
            Weight::from_ints(&v)
        })
        .collect()
}

/// ±e_i (and 0 for odd m) for SO(m) in standard coordinates.
pub fn so_standard_weights(m: usize) -> Vec<Weight> {
    let k = m / 2;
    let mut out = Vec::new();
    for i in 0..k {
        let mut v = vec![0i64; k];
        v[i] = 1;
        out.push(Weight::from_ints(&v));
        v[i] = -1;
        out.push(Weight::from_ints(&v));
    }
    if m % 2 == 1 {
        out.push(Weight::zero(k.max(1)));
    }
    out
}

fn swap(n: usize) -> IMat {
    let mut t = vec![vec![0; 2 * n]; 2 * n];
    for i in 0..n {
        t[i][n + i] = 1;
        t[n + i][i] = 1;
    }
    t
}

fn diagonal(n: usize) -> IMat {
    let mut e = vec![vec![0; n]; 2 * n];
    for i in 0..n {
        e[i][i] = 1;
        e[n + i][i] = 1;
    }
    e
}

fn sl_diag(n: usize, label: &str) -> Result<SymmetricPair> {
    let f = build_root_datum(&format!("SL{n}"))?;
    let g = RootDatum::product(&[f.clone(), f.clone()])?;
    let w = sl_standard_weights(n - 1);
    let reps = pad(&[(n - 1, w.clone()), (n - 1, w)], 2 * (n - 1));
    Ok(SymmetricPair::new(label, g, f, diagonal(n - 1), Some(swap(n - 1)))?
        .with_rep_weights(reps)
        .with_note("G = SL_n × SL_n, H diagonal; θ swaps the factors and fixes ι(T_H) pointwise"))
}

/// (SL_{n+1}, S(GL_n × GL_1)): real form SU(n,1).
fn su_n1(n: usize) -> Result<SymmetricPair> {
    let g = build_root_datum(&format!("A{n}"))?;
    let h = g.levi(&(0..n - 1).collect::<Vec<_>>(), format!("S(GL{n}×GL1)"))?;
    // θ = s_θ, the reflection in the highest root: x ↦ x − (x₁ + x_n)(1,…,1)
    let theta: IMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i64::from(i == j) - i64::from(j == 0) - i64::from(j == n - 1))
                .collect()
        })
        .collect();
    Ok(SymmetricPair::new(format!("su{n}1"), g, h, identity(n), Some(theta))?
        .with_rep_weights(sl_standard_weights(n))
        .with_note(
            "T_H = T (equal rank); θ is the highest-root reflection, written on T, whose \
             (−1)-eigenline is the θ-split torus — not a torus containing ι(T_H)",
        ))
}

/// (SO(n+1), SO(n)) in standard coordinates: real form SO(n,1).
fn so_n1(n: usize) -> Result<SymmetricPair> {
    let m = n + 1;
    let g = build_root_datum(&format!("SO{m}"))?;
    let h = build_root_datum(&format!("SO{n}"))?;
    let (kg, kh) = (g.lattice_rank(), h.lattice_rank());
    let embed: IMat = (0..kg).map(|i| (0..kh).map(|j| i64::from(i == j)).collect()).collect();
    // negate the last standard coordinate
    let mut theta = identity(kg);
    theta[kg - 1][kg - 1] = -1;
    let note = if kg > kh {
        "ι(T_H) is the span of the first coordinates, fixed by θ (negation of the last coordinate)"
    } else {
        "T_H = T (equal rank); θ negates the last coordinate, which lies in T_H — θ is written on \
         the maximally split torus rather than on T_H"
    };
    Ok(SymmetricPair::new(format!("so{n}1"), g, h, embed, Some(theta))?
        .with_rep_weights(so_standard_weights(m))
        .with_note(note))
}

pub fn maclachlan_reid() -> Result<SymmetricPair> {
    let mut p = sl_diag(2, "maclachlan-reid")?;
    p.note = "SL2(C) as (SL2 × SL2, diagonal SL2), the complexified Cartan involution swapping factors".into();
    Ok(p)
}

pub fn split_control() -> Result<SymmetricPair> {
    let g = build_root_datum("SL2")?;
    let h = build_root_datum("T1")?;
    Ok(SymmetricPair::new("split-control", g, h, vec![vec![1]], Some(vec![vec![-1]]))?
        .with_rep_weights(sl_standard_weights(1))
        .with_note("H = maximal torus with T_H = T; θ = −id is split, written on T"))
}

pub fn compact_control() -> Result<SymmetricPair> {
    let g = build_root_datum("SL2")?;
    Ok(SymmetricPair::new("compact-control", g.clone(), g, vec![vec![1]], Some(vec![vec![1]]))?
        .with_rep_weights(sl_standard_weights(1))
        .with_note("G = H, θ = id"))
}

/// All built-in pairs, in a fixed order.
pub fn catalog() -> Result<Vec<SymmetricPair>> {
    let mut out = vec![maclachlan_reid()?];
    for n in 2..=5 {
        out.push(su_n1(n)?);
    }
    for n in 2..=5 {
        out.push(so_n1(n)?);
    }
    out.push(sl_diag(2, "sl2xsl2-diag")?);
    out.push(sl_diag(3, "sl3xsl3-diag")?);
    out.push(split_control()?);
    out.push(compact_control()?);
    Ok(out)
}

/// Look up a pair by label; a few spelling aliases are accepted.
pub fn find_pair(name: &str) -> Result<SymmetricPair> {
    let key = name.to_ascii_lowercase().replace(['(', ')', ',', ' ', '_'], "");
    let key = match key.as_str() {
        "mr" | "maclachlanreid" => "maclachlan-reid".to_string(),
        "split" => "split-control".to_string(),
        "compact" => "compact-control".to_string(),
        other => other.to_string(),
    };
    catalog()?
        .into_iter()
        .find(|p| p.label == key)
        .ok_or_else(|| crate::Error::Validation(format!("unknown pair '{name}'")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dot_iq;

    #[test]
    fn thirteen_pairs_with_unique_labels() {
        let c = catalog().unwrap();
        assert_eq!(c.len(), 13);
        let mut labels: Vec<_> = c.iter().map(|p| p.label.clone()).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), 13);
    }

    #[test]
    fn standard_weights_are_a_representation_basis() {
        // weights of the standard SL3 representation sum to zero and pair
        // with α1∨ as (1, −1, 0)
        let w = sl_standard_weights(2);
        let pairings: Vec<_> = w.iter().map(|x| dot_iq(&[1, 0], &x.0)).collect();
        assert_eq!(pairings, vec![1.into(), (-1).into(), 0.into()]);
    }

    #[test]
    fn aliases() {
        assert_eq!(find_pair("MR").unwrap().label, "maclachlan-reid");
        assert_eq!(find_pair("su21").unwrap().g.rank(), 2);
        assert!(find_pair("nope").is_err());
    }
}
