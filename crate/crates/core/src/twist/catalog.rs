//! Named square-zero elements for the standard algebras, in the variable
//! numbering of the algebra catalog.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::susy::SusyKey;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistPreset {
    pub dim: u32,
    pub key: SusyKey,
    pub name: &'static str,
    /// Sparse entries (index, coefficient) of q.
    pub entries: Vec<(usize, i64)>,
    /// Odd dimension of the source algebra.
    pub k: usize,
}

impl TwistPreset {
    pub fn vector(&self) -> Vec<Rational> {
        let mut q = vec![Rational::ZERO; self.k];
        for &(i, c) in &self.entries {
            q[i] = Rational::from(c);
        }
        q
    }
}

fn preset(dim: u32, key: SusyKey, name: &'static str, k: usize, entries: &[(usize, i64)]) -> TwistPreset {
    TwistPreset { dim, key, name, entries: entries.to_vec(), k }
}

pub fn catalog_twists() -> Vec<TwistPreset> {
    use SusyKey::{Pair, N};
    vec![
        // u ⊗ v with u and v isotropic
        preset(3, N(2), "holomorphic", 4, &[(0, 1)]),
        // λ_{0,0}
        preset(4, N(1), "holomorphic", 4, &[(0, 1)]),
        preset(4, N(2), "holomorphic", 8, &[(0, 1)]),
        // λ_{0,0} + μ_{0,1}
        preset(4, N(2), "kapustin", 8, &[(0, 1), (5, 1)]),
        preset(4, N(4), "holomorphic", 16, &[(0, 1)]),
        // λ_{0,0} + λ_{1,1} + μ_{0,2} + μ_{1,3}
        preset(4, N(4), "kapustin-witten", 16, &[(0, 1), (5, 1), (10, 1), (15, 1)]),
        preset(6, Pair(1, 0), "holomorphic", 8, &[(0, 1)]),
        preset(6, Pair(2, 0), "holomorphic", 16, &[(0, 1)]),
        // λ_{0,0} + λ_{1,1}
        preset(6, Pair(2, 0), "nonminimal", 16, &[(0, 1), (5, 1)]),
        // the Fock vacuum
        preset(10, Pair(1, 0), "holomorphic", 16, &[(0, 1)]),
        preset(10, Pair(2, 0), "holomorphic", 32, &[(0, 1)]),
        // |> + |0123> in the first copy, |01> + |23> in the second
        preset(10, Pair(2, 0), "maximal", 32, &[(0, 1), (7, 1), (17, 1), (22, 1)]),
        // |> and |> + |012>
        preset(11, N(1), "minimal", 32, &[(0, 1)]),
        preset(11, N(1), "nonminimal", 32, &[(0, 1), (7, 1)]),
    ]
}

/// The catalog q for an algebra and twist name.
pub fn named_twist(dim: u32, key: SusyKey, name: &str) -> Result<Vec<Rational>> {
    catalog_twists().into_iter().find(|p| p.dim == dim && p.key == key && p.name.eq_ignore_ascii_case(name)).map(|p| p.vector()).ok_or_else(
        || {
            let known: Vec<&str> = catalog_twists().into_iter().filter(|p| p.dim == dim && p.key == key).map(|p| p.name).collect();
            Error::Invalid(format!(
                "no twist named '{name}' for {dim}d {key}; known: {}",
                if known.is_empty() { "none".into() } else { known.join(", ") }
            ))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susy::build_standard;

    #[test]
    fn catalog_vectors_are_square_zero() {
        for p in catalog_twists() {
            let a = build_standard(p.dim, p.key).unwrap();
            assert_eq!(a.k, p.k, "{}d {} {}", p.dim, p.key, p.name);
            assert!(a.is_square_zero(&p.vector()).unwrap(), "{}d {} {}", p.dim, p.key, p.name);
        }
    }

    #[test]
    fn unknown_name_lists_alternatives() {
        let e = named_twist(4, SusyKey::N(2), "nope").unwrap_err().to_string();
        assert!(e.contains("kapustin"));
    }
}
