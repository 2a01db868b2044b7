//! Reference values printed by the demos and checked by the tests.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2, SQRT_2};

#[derive(Debug, Clone, Copy)]
pub struct Expected {
    pub key: &'static str,
    pub value: f64,
    pub tol: f64,
    /// Where the number comes from.
    pub note: &'static str,
}

pub const TABLE: &[Expected] = &[
    Expected {
        key: "chsh.value",
        value: 2.0 * SQRT_2,
        tol: 1e-12,
        note: "singlet CHSH combination at the optimal orientations, 2√2",
    },
    Expected {
        key: "chsh.classical_bound",
        value: 2.0,
        tol: 0.0,
        note: "local realistic bound on |⟨X⟩|",
    },
    Expected {
        key: "filter.p_half_pi",
        value: 0.25,
        tol: 1e-12,
        note: "P(π/2) = ½ sin²(π/4)",
    },
    Expected {
        key: "filter.two_p_quarter_pi",
        value: 0.5 - 0.5 * FRAC_1_SQRT_2,
        tol: 1e-12,
        note: "2P(π/4) = sin²(π/8) = (1 − 1/√2)/2",
    },
    Expected {
        key: "ghz.plus",
        value: 1.0,
        tol: 1e-12,
        note: "eigenvalue of S_xyy, S_yxy and S_yyx on the GHZ state",
    },
    Expected {
        key: "ghz.xxx",
        value: -1.0,
        tol: 1e-12,
        note: "eigenvalue of S_xxx on the GHZ state",
    },
    Expected {
        key: "nocloning.fidelity",
        value: 0.5,
        tol: 1e-12,
        note: "|⟨x+ x+|U|x+ 0⟩|² from the four output amplitudes",
    },
    Expected {
        key: "nocloning.basis_fidelity",
        value: 1.0,
        tol: 1e-12,
        note: "the cloner copies both z basis states exactly",
    },
    Expected {
        key: "nonunique.deviation",
        value: 0.0,
        tol: 1e-11,
        note: "two mixtures of one density agree entrywise",
    },
    Expected {
        key: "nonunique.weight_0",
        value: 0.75,
        tol: 1e-12,
        note: "first weight recovered by the Hadamard remix",
    },
    Expected {
        key: "nonunique.weight_1",
        value: 0.25,
        tol: 1e-12,
        note: "second weight recovered by the Hadamard remix",
    },
    Expected {
        key: "singlet.aligned_correlation",
        value: -1.0,
        tol: 1e-12,
        note: "perfect anticorrelation for a = b",
    },
    Expected {
        key: "singlet.entropy_of_half",
        value: LN_2,
        tol: 1e-12,
        note: "entropy of each reduced singlet density, log 2",
    },
    Expected {
        key: "singlet.law_deviation",
        value: 0.0,
        tol: 1e-12,
        note: "correlation −a·b and variance 1 − (a·b)²",
    },
    Expected {
        key: "spin1.deviation",
        value: 0.0,
        tol: 1e-12,
        note: "S² = I − P₀, commuting squares and ΣP₀ = I",
    },
    Expected {
        key: "nosignal.deviation",
        value: 0.0,
        tol: 1e-11,
        note: "reduced b density before and after any a-side measurement",
    },
];

pub fn lookup(key: &str) -> &'static Expected {
    TABLE
        .iter()
        .find(|e| e.key == key)
        .unwrap_or_else(|| panic!("no reference value named {key}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_unique() {
        for (i, a) in TABLE.iter().enumerate() {
            assert!(TABLE[i + 1..].iter().all(|b| b.key != a.key), "{}", a.key);
        }
    }

    #[test]
    fn filter_values_round_as_quoted() {
        assert_eq!(format!("{:.3}", lookup("filter.p_half_pi").value), "0.250");
        assert_eq!(format!("{:.3}", lookup("filter.two_p_quarter_pi").value), "0.146");
    }
}
