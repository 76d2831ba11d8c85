//! Reference labels attached to report records. Every record names one key
//! from this table; labels are the only place result numbering appears.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anchor {
    pub key: &'static str,
    pub label: &'static str,
    pub statement: &'static str,
}

pub const SOLUTION_FORMULA: &str = "solution-formula";
pub const EXPANSION_TERMS: &str = "expansion-terms";
pub const ADMISSIBILITY: &str = "admissibility";
pub const E1_RATE: &str = "e1-rate";
pub const E1_LITTLE_O: &str = "e1-little-o";
pub const E0_RATE: &str = "e0-rate";
pub const E0_LITTLE_O: &str = "e0-little-o";
pub const SANDWICH: &str = "sandwich";
pub const GAP_LOWER: &str = "gap-lower";
pub const GAP_UPPER: &str = "gap-upper";
pub const SIN_KERNEL_LOWER: &str = "sin-kernel-lower";
pub const COS_KERNEL_LOWER: &str = "cos-kernel-lower";
pub const KERNEL_UPPER: &str = "kernel-upper";
pub const DAMPED_WEIGHT: &str = "damped-weight";
pub const DECOMPOSITION: &str = "decomposition";
pub const GROWTH_1D: &str = "growth-1d";
pub const GROWTH_2D: &str = "growth-2d";
pub const GROWTH_3D: &str = "growth-3d";

/// Note attached to checks skipped because the admissibility condition fails.
pub const CONDITION_VIOLATED: &str = "condition (3.1) violated";

pub const ANCHORS: &[Anchor] = &[
    Anchor {
        key: SOLUTION_FORMULA,
        label: "Eq. (2.1)",
        statement: "u_hat = E0 u0_hat + E1 (|xi|^2/2 u0_hat + u1_hat)",
    },
    Anchor {
        key: EXPANSION_TERMS,
        label: "§5 (5.2) e-terms",
        statement: "closed forms of e_1^0, e_0^0, e_1^1",
    },
    Anchor {
        key: ADMISSIBILITY,
        label: "Thm 3.1 (3.1)",
        statement: "gamma > 1/2 (n = 1), gamma > 0 (n = 2), gamma >= 0 (n >= 3)",
    },
    Anchor {
        key: E1_RATE,
        label: "Thm 3.1 (3.2)",
        statement: "E1 remainder <= C ||u1||_{1,gamma} (1+t)^{-n/4-gamma/2+1/2}",
    },
    Anchor {
        key: E1_LITTLE_O,
        label: "Thm 3.1 (3.3)",
        statement: "E1 remainder = o(t^{-n/4-gamma/2+1/2})",
    },
    Anchor {
        key: E0_RATE,
        label: "Thm 3.2 (3.5)",
        statement: "E0 remainder <= C ||u0||_{1,gamma} (1+t)^{-n/4-gamma/2}",
    },
    Anchor {
        key: E0_LITTLE_O,
        label: "Thm 3.2 (3.6)",
        statement: "E0 remainder = o(t^{-n/4-gamma/2})",
    },
    Anchor {
        key: SANDWICH,
        label: "Thm 3.3",
        statement: "C1 |P1| g_n(t) <= ||u_hat(t)||_2 <= C2 g_n(t)",
    },
    Anchor {
        key: GAP_LOWER,
        label: "Thm 3.4 (3.7)",
        statement: "leading-term gap >= c t^{-n/4} for large t",
    },
    Anchor {
        key: GAP_UPPER,
        label: "Thm 3.4 (3.8)",
        statement: "leading-term gap <= C I(u1, u0) (1+t)^{-n/4}",
    },
    Anchor {
        key: SIN_KERNEL_LOWER,
        label: "Lemma 4.3 (4.6)",
        statement: "sine kernel ball integral >= (w_n/4) int_0^1 x^{2g+n-3} e^{-x^2} t^{-n/2-g+1}",
    },
    Anchor {
        key: COS_KERNEL_LOWER,
        label: "Lemma 4.3 (4.7)",
        statement: "cosine kernel ball integral >= (w_n/4) int_0^1 x^{2g+n-1} e^{-x^2} t^{-n/2-g}",
    },
    Anchor {
        key: KERNEL_UPPER,
        label: "Remark 4.2",
        statement: "kernel ball integrals <= C (1+t)^{-n/2-g+1}, C (1+t)^{-n/2-g}",
    },
    Anchor {
        key: DAMPED_WEIGHT,
        label: "Eq. (5.1)",
        statement: "|| |xi|^2/2 E1(t) ||^2_{ball} <= C (1+t)^{-n/2-1}",
    },
    Anchor {
        key: DECOMPOSITION,
        label: "Eq. (5.2)",
        statement:
            "profile square norm splits into moment, cross and mass parts; cross parts vanish",
    },
    Anchor {
        key: GROWTH_1D,
        label: "Lemma 6.1 (6.1)",
        statement: "C t <= int e^{-t|xi|^2} |sin(t|xi|)/|xi||^2 <= C' t (n = 1)",
    },
    Anchor {
        key: GROWTH_2D,
        label: "Lemma 6.2 (6.2)",
        statement: "C log t <= ... <= C' log t (n = 2)",
    },
    Anchor {
        key: GROWTH_3D,
        label: "Lemma 6.3 (6.3)",
        statement: "C t^{-n/2+1} <= ... <= C' t^{-n/2+1} (n >= 3)",
    },
];

pub fn lookup(key: &str) -> Result<&'static Anchor> {
    ANCHORS
        .iter()
        .find(|a| a.key == key)
        .ok_or_else(|| Error::Config(format!("unknown anchor key {key:?}")))
}

/// Checks keys and labels are unique and non-empty.
pub fn validate() -> Result<()> {
    for (i, a) in ANCHORS.iter().enumerate() {
        if a.key.is_empty() || a.label.is_empty() {
            return Err(Error::Config(format!(
                "anchor {i} has an empty key or label"
            )));
        }
        if ANCHORS[..i]
            .iter()
            .any(|b| b.key == a.key || b.label == a.label)
        {
            return Err(Error::Config(format!("anchor {:?} is duplicated", a.key)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_consistent() {
        validate().unwrap();
        assert_eq!(lookup(GROWTH_3D).unwrap().label, "Lemma 6.3 (6.3)");
        assert!(lookup("nope").is_err());
    }
}
