use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// q ≡ a (mod m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    pub a: u64,
    pub m: u64,
}

impl Congruence {
    pub fn new(a: u64, m: u64) -> Result<Self> {
        if m == 0 {
            return invalid("congruence modulus must be positive");
        }
        Ok(Congruence { a: a % m, m })
    }

    pub fn holds(&self, q: u64) -> bool {
        q % self.m == self.a
    }
}

impl std::str::FromStr for Congruence {
    type Err = crate::Error;
    /// `a mod m` or `a/m`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(['/', ' ']).filter(|p| !p.is_empty() && *p != "mod").collect();
        match parts.as_slice() {
            [a, m] => {
                let a = a.parse().map_err(|_| crate::Error::Validation(format!("bad residue in '{s}'")))?;
                let m = m.parse().map_err(|_| crate::Error::Validation(format!("bad modulus in '{s}'")))?;
                Congruence::new(a, m)
            }
            _ => invalid(format!("congruence '{s}' should look like '1 mod 4'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Place {
    pub q: u64,
    pub congruence: Option<Congruence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaceSelection {
    pub places: Vec<Place>,
    /// Set when no prime survives; not an error.
    pub warning: Option<String>,
}

/// Primes below `limit` by the sieve of Eratosthenes.
pub fn sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    if n < 3 {
        return vec![];
    }
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// All primes q with P/2 ≤ q < P satisfying `cond`, ascending.
pub fn choose_places(p: u64, cond: Option<Congruence>) -> Result<PlaceSelection> {
    if p < 3 {
        return invalid(format!("P = {p} must be at least 3"));
    }
    let places: Vec<Place> = sieve(p)
        .into_iter()
        .filter(|&q| 2 * q >= p)
        .filter(|&q| cond.map_or(true, |c| c.holds(q)))
        .map(|q| Place { q, congruence: cond })
        .collect();
    let warning = places
        .is_empty()
        .then(|| format!("no admissible prime in [{}/2, {p})", p));
    Ok(PlaceSelection { places, warning })
}
