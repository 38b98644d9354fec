use crate::error::{invalid, Result};
use crate::linalg::{identity, IMat};

use super::datum::RootDatum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
}

/// Cartan matrix with C_ij = ⟨α_i, α_j∨⟩ (Bourbaki numbering).
pub fn cartan_matrix(t: CartanType) -> Result<IMat> {
    let (n, kind) = match t {
        CartanType::A(n) => (n, 'A'),
        CartanType::B(n) => (n, 'B'),
        CartanType::C(n) => (n, 'C'),
        CartanType::D(n) => (n, 'D'),
        CartanType::G2 => return Ok(vec![vec![2, -1], vec![-3, 2]]),
    };
    let min = if kind == 'D' { 2 } else { 1 };
    if n < min {
        return invalid(format!("type {kind}{n} is not defined"));
    }
    let mut c = identity(n);
    for row in c.iter_mut() {
        for x in row.iter_mut() {
            *x *= 2;
        }
    }
    let chain = if kind == 'D' { n.saturating_sub(1) } else { n };
    for i in 1..chain {
        c[i - 1][i] = -1;
        c[i][i - 1] = -1;
    }
    match kind {
        // α_n short: ⟨α_{n-1}, α_n∨⟩ = −2
        'B' if n >= 2 => c[n - 2][n - 1] = -2,
        // α_n long: ⟨α_n, α_{n-1}∨⟩ = −2
        'C' if n >= 2 => c[n - 1][n - 2] = -2,
        'D' if n >= 3 => {
            c[n - 2][n - 1] = 0;
            c[n - 1][n - 2] = 0;
            c[n - 3][n - 1] = -1;
            c[n - 1][n - 3] = -1;
        }
        _ => {}
    }
    Ok(c)
}

/// Simply connected realization: coroots are the standard basis, roots are
/// the Cartan rows (coordinates in the fundamental-weight basis).
fn simply_connected(t: CartanType, name: String) -> Result<RootDatum> {
    let c = cartan_matrix(t)?;
    let n = c.len();
    RootDatum::new(Some(name), n, c, identity(n))
}

/// GL_n on ℤⁿ with simple roots e_i − e_{i+1}.
pub(crate) fn gl(n: usize) -> Result<RootDatum> {
    if n == 0 {
        return invalid("GL0 is not defined");
    }
    let roots: IMat = (0..n - 1)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            v
        })
        .collect();
    RootDatum::new(Some(format!("GL{n}")), n, roots.clone(), roots)
}

/// SO(m) in the standard coordinates ℤ^⌊m/2⌋.
pub(crate) fn so(m: usize) -> Result<RootDatum> {
    if m < 2 {
        return invalid(format!("SO{m} is not supported"));
    }
    let k = m / 2;
    let e = |i: usize| {
        let mut v = vec![0; k];
        v[i] = 1;
        v
    };
    let diff = |i: usize, j: usize, s: i64| {
        let mut v = e(i);
        v[j] += s;
        v
    };
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    if m == 2 {
        return RootDatum::new(Some("SO2".into()), 1, vec![], vec![]);
    }
    for i in 0..k.saturating_sub(1) {
        roots.push(diff(i, i + 1, -1));
        coroots.push(diff(i, i + 1, -1));
    }
    if m % 2 == 1 {
        // B_k: short root e_k with coroot 2e_k
        roots.push(e(k - 1));
        coroots.push(e(k - 1).iter().map(|x| 2 * x).collect());
    } else if k >= 2 {
        roots.push(diff(k - 2, k - 1, 1));
        coroots.push(diff(k - 2, k - 1, 1));
    }
    RootDatum::new(Some(format!("SO{m}")), k, roots, coroots)
}

fn parse_factor(s: &str) -> Result<RootDatum> {
    let s = s.trim();
    let num = |prefix: &str| -> Option<usize> { s.strip_prefix(prefix)?.parse().ok() };
    if s == "G2" {
        return simply_connected(CartanType::G2, "G2".into());
    }
    if let Some(n) = num("GL") {
        return gl(n);
    }
    if let Some(n) = num("SL") {
        if n < 2 {
            return invalid("SL_n needs n ≥ 2");
        }
        return simply_connected(CartanType::A(n - 1), format!("SL{n}"));
    }
    if let Some(n) = num("PGL") {
        let g = gl(n)?;
        let quotient = crate::affine_hecke::quotient_by_central_torus(&g)?;
        return Ok(quotient.datum.with_name(format!("PGL{n}")));
    }
    if let Some(m) = num("SO") {
        return so(m);
    }
    if let Some(n) = num("T") {
        return RootDatum::torus(n);
    }
    let kinds: [(&str, fn(usize) -> CartanType); 4] = [
        ("A", CartanType::A),
        ("B", CartanType::B),
        ("C", CartanType::C),
        ("D", CartanType::D),
    ];
    for (p, ctor) in kinds {
        if let Some(n) = num(p) {
            return simply_connected(ctor(n), s.to_string());
        }
    }
    invalid(format!("unsupported root datum type '{s}'"))
}

/// Parse a named type such as `A2`, `G2`, `GL3`, `SO5`, `A1×A1` (also `A1xA1`).
pub fn build_root_datum(name: &str) -> Result<RootDatum> {
    let parts: Vec<&str> = name
        .split(['×', 'x', '*'])
        .filter(|p| !p.trim().is_empty())
        .collect();
    match parts.as_slice() {
        [] => invalid("empty root datum specification"),
        [one] => parse_factor(one),
        many => {
            let factors = many.iter().map(|p| parse_factor(p)).collect::<Result<Vec<_>>>()?;
            Ok(RootDatum::product(&factors)?.with_name(name.replace(['x', '*'], "×")))
        }
    }
}
