//! Frozen conventions, serialized as JSON so runs can pin them.

use serde::{Deserialize, Serialize};

use crate::combinat::{DetReading, Framing, Orientation, Polarization, TangentConvention};

/// Cell eigenvalue Π_□ (1 + sign·u·φ(□)^power), φ = t1^c t2^r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenReading {
    pub sign: i8,
    pub power: i32,
}

impl EigenReading {
    pub fn candidates() -> Vec<EigenReading> {
        let mut v = Vec::new();
        for sign in [1, -1] {
            for power in [-2, -1, 1, 2] {
                v.push(EigenReading { sign, power });
            }
        }
        v
    }

    pub fn label(&self) -> String {
        format!("prod(1 {} u*phi^{})", if self.sign > 0 { "+" } else { "-" }, self.power)
    }
}

/// How the structure-sheaf series is obtained from the kernel sum Σ H_λ/Λ•(T_λ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OsumTransport {
    /// The kernel sum itself.
    Identity,
    /// p_k ↦ (-1)^k p_k.
    PowerSumSign,
    /// p_k ↦ -p_k.
    Negate,
    /// Λ• of the dual of the tangent convention.
    DualEuler,
}

impl OsumTransport {
    pub const ALL: [OsumTransport; 4] =
        [OsumTransport::Identity, OsumTransport::PowerSumSign, OsumTransport::Negate, OsumTransport::DualEuler];
}

/// Argument shift z ↦ sign · z · ħ^hbar · q^q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Shift {
    pub sign: i8,
    pub hbar: i32,
    pub q: i32,
}

impl Shift {
    /// The shift z ↦ -zħq.
    pub const CLAIMED: Shift = Shift { sign: -1, hbar: 1, q: 1 };

    pub fn family() -> Vec<Shift> {
        let mut v = Vec::new();
        for sign in [1, -1] {
            for hbar in [-1, 0, 1] {
                for q in [-1, 0, 1] {
                    v.push(Shift { sign, hbar, q });
                }
            }
        }
        v
    }

    pub fn label(&self) -> String {
        format!("z -> {}z*hbar^{}*q^{}", if self.sign < 0 { "-" } else { "" }, self.hbar, self.q)
    }
}

/// Power of a in the rank-two limit statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum APower {
    /// a^n.
    N,
    /// a^{2n}.
    TwoN,
}

impl APower {
    pub fn exponent(self, n: u32) -> i32 {
        match self {
            APower::N => n as i32,
            APower::TwoN => 2 * n as i32,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitConvention {
    pub polarization: Polarization,
    pub framing: Framing,
    pub det_reading: DetReading,
    pub a_power: APower,
}

impl LimitConvention {
    pub fn candidates() -> Vec<LimitConvention> {
        let mut v = Vec::new();
        for polarization in Polarization::ALL {
            for framing in Framing::ALL {
                for det_reading in DetReading::ALL {
                    for a_power in [APower::N, APower::TwoN] {
                        v.push(LimitConvention { polarization, framing, det_reading, a_power });
                    }
                }
            }
        }
        v
    }

    pub fn label(&self) -> String {
        format!("{:?}/{:?}/{:?}/{:?}", self.polarization, self.framing, self.det_reading, self.a_power)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Conventions {
    pub tangent: TangentConvention,
    pub cell_eigen: EigenReading,
    pub osum: OsumTransport,
    /// `None` when no shift in the family matches.
    pub main_shift: Option<Shift>,
    pub limit: LimitConvention,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            tangent: TangentConvention { orientation: Orientation::Standard, weight_scale: 2, dual: false },
            cell_eigen: EigenReading { sign: -1, power: 2 },
            osum: OsumTransport::PowerSumSign,
            main_shift: None,
            limit: LimitConvention {
                polarization: Polarization::Proof,
                framing: Framing::FirstCarriesA,
                det_reading: DetReading::Repelling,
                a_power: APower::N,
            },
        }
    }
}

impl Conventions {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        let c: Conventions = serde_json::from_str(s)?;
        Ok(c)
    }

    /// Candidate tangent conventions searched by calibration.
    pub fn tangent_candidates() -> Vec<TangentConvention> {
        let mut v = Vec::new();
        for orientation in [Orientation::Standard, Orientation::Swapped] {
            for weight_scale in [1, 2] {
                for dual in [false, true] {
                    v.push(TangentConvention { orientation, weight_scale, dual });
                }
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let c = Conventions::default();
        assert_eq!(Conventions::from_json(&c.to_json()).unwrap(), c);
        assert_eq!(Shift::family().len(), 18);
        assert_eq!(EigenReading::candidates().len(), 8);
        assert!(Conventions::from_json("{\"tangent\":1}").is_err());
    }
}
