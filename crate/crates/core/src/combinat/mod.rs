//! Partitions, fixed points of Hilb^n(C²) and M(n,2), and the equivariant
//! character calculus over them.

pub mod character;
pub mod partition;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use character::Character;
pub use partition::{partitions, partitions_upto, Cell, Partition};

use crate::exactalg::poly::{Mono, Var};
use crate::exactalg::GroundScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatError {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("cannot parse partition {0:?}")]
    BadPartition(String),
    #[error("{partitions} partitions but {framing} framing weights")]
    FramingLength { partitions: usize, framing: usize },
    #[error("character contains the trivial weight")]
    TrivialWeight,
    #[error("Chern index {k} exceeds rank {rank}")]
    ChernIndex { k: usize, rank: usize },
    #[error("character has negative multiplicities")]
    VirtualCharacter,
    #[error("square root of a monomial with odd exponent is not representable")]
    OddSquareRoot,
}

/// Which of t1, t2 runs along the rows of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Cell (r, c) has weight t1^c t2^r; arms pair with t1.
    Standard,
    /// t1 and t2 exchanged.
    Swapped,
}

impl Orientation {
    fn vars(self) -> (Var, Var) {
        match self {
            Orientation::Standard => (Var::T1, Var::T2),
            Orientation::Swapped => (Var::T2, Var::T1),
        }
    }

    /// Weight of a cell without framing.
    pub fn cell_weight(self, cell: Cell) -> Mono {
        let (along, down) = self.vars();
        Mono::var(along, cell.col as i32).mul(&Mono::var(down, cell.row as i32))
    }
}

/// Tautological character Σ_k framing_k Σ_{□∈λ_k} φ(□).
pub fn taut_character(lambdas: &[Partition], framing: &[Mono], orientation: Orientation) -> Result<Character, CombinatError> {
    if lambdas.len() != framing.len() {
        return Err(CombinatError::FramingLength { partitions: lambdas.len(), framing: framing.len() });
    }
    let mut c = Character::zero();
    for (l, f) in lambdas.iter().zip(framing.iter()) {
        for cell in l.cells() {
            c.add_weight(f.mul(&orientation.cell_weight(cell)), 1);
        }
    }
    Ok(c)
}

/// Arm/leg tangent character of Hilb^n at λ:
/// Σ_□ t1^{-arm} t2^{leg+1} + t1^{arm+1} t2^{-leg} in the standard orientation.
pub fn tangent_hilb(lambda: &Partition, orientation: Orientation) -> Character {
    let (x, y) = orientation.vars();
    let mut c = Character::zero();
    for cell in lambda.cells() {
        let arm = lambda.arm(cell) as i32;
        let leg = lambda.leg(cell) as i32;
        c.add_weight(Mono::var(x, -arm).mul(&Mono::var(y, leg + 1)), 1);
        c.add_weight(Mono::var(x, arm + 1).mul(&Mono::var(y, -leg)), 1);
    }
    c
}

/// How the tangent character enters the localization denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TangentConvention {
    pub orientation: Orientation,
    /// Weights are raised to this power before Λ• (the Adams operation ψ^k).
    pub weight_scale: u32,
    /// Use the dual character.
    pub dual: bool,
}

impl TangentConvention {
    pub fn character(&self, lambda: &Partition) -> Character {
        let t = tangent_hilb(lambda, self.orientation).adams(self.weight_scale as i32);
        if self.dual {
            t.dual()
        } else {
            t
        }
    }

    /// Λ• of the (transformed) tangent character at λ.
    pub fn euler(&self, lambda: &Partition) -> GroundScalar {
        self.character(lambda).lambda_dot().expect("tangent weights are nontrivial")
    }
}

/// Polarization variants of M(n,2), written in the standard orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarization {
    /// W*⊗V + t2⁻¹V*⊗V − ħ⁻¹V*⊗V − V*⊗V.
    FourTerm,
    /// ħ W*⊗V.
    Proof,
    /// W⊗V* + t1 V⊗V* − V⊗V*.
    Standard,
}

impl Polarization {
    pub const ALL: [Polarization; 3] = [Polarization::FourTerm, Polarization::Proof, Polarization::Standard];
}

/// Which tautological summand carries the framing weight a.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Framing {
    /// Framing (1, a): the second partition carries a.
    SecondCarriesA,
    /// Framing (a, 1).
    FirstCarriesA,
}

impl Framing {
    pub const ALL: [Framing; 2] = [Framing::SecondCarriesA, Framing::FirstCarriesA];

    pub fn weights(self) -> [Mono; 2] {
        let a = Mono::var(Var::A, 1);
        match self {
            Framing::SecondCarriesA => [Mono::ONE, a],
            Framing::FirstCarriesA => [a, Mono::ONE],
        }
    }
}

/// Reading of the monomial prefactor of the stable-envelope diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetReading {
    /// (det N⁻ / det T^{1/2}_{≠0})^{1/2}.
    SqrtRatio,
    /// 1 / det T^{1/2}_{<0}.
    Repelling,
}

impl DetReading {
    pub const ALL: [DetReading; 2] = [DetReading::SqrtRatio, DetReading::Repelling];
}

/// A fixed point (λ1, λ2) of M(n,2) with its conventions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTwoPoint {
    pub first: Partition,
    pub second: Partition,
}

impl RankTwoPoint {
    pub fn new(first: Partition, second: Partition) -> Self {
        RankTwoPoint { first, second }
    }

    pub fn size(&self) -> u32 {
        self.first.size() + self.second.size()
    }

    /// All fixed points with |λ1| + |λ2| = n.
    pub fn all(n: u32) -> Vec<RankTwoPoint> {
        (0..=n)
            .rev()
            .flat_map(|n1| {
                partitions(n1).into_iter().flat_map(move |l1| {
                    partitions(n - n1).into_iter().map(move |l2| RankTwoPoint::new(l1.clone(), l2))
                })
            })
            .collect()
    }

    pub fn conjugate(&self) -> RankTwoPoint {
        RankTwoPoint::new(self.first.conjugate(), self.second.conjugate())
    }

    pub fn framing_character(framing: Framing) -> Character {
        Character::from_weights(framing.weights().into_iter().map(|m| (m, 1)))
    }

    pub fn tautological(&self, framing: Framing, orientation: Orientation) -> Character {
        taut_character(&[self.first.clone(), self.second.clone()], &framing.weights(), orientation)
            .expect("two partitions, two weights")
    }

    pub fn polarization(&self, variant: Polarization, framing: Framing, orientation: Orientation) -> Character {
        let v = self.tautological(framing, orientation);
        let w = RankTwoPoint::framing_character(framing);
        let hbar = Mono::var(Var::T1, 1).mul(&Mono::var(Var::T2, 1));
        let (along, down) = orientation.vars();
        match variant {
            Polarization::FourTerm => {
                let vv = v.dual().mul(&v);
                w.dual()
                    .mul(&v)
                    .add(&vv.scale(Mono::var(down, -1)))
                    .sub(&vv.scale(hbar.inv()))
                    .sub(&vv)
            }
            Polarization::Proof => w.dual().mul(&v).scale(hbar),
            Polarization::Standard => {
                let vv = v.mul(&v.dual());
                w.mul(&v.dual()).add(&vv.scale(Mono::var(along, 1))).sub(&vv)
            }
        }
    }

    /// T = T^{1/2} + ħ·(T^{1/2})^∨.
    pub fn tangent(&self, variant: Polarization, framing: Framing, orientation: Orientation) -> Character {
        let half = self.polarization(variant, framing, orientation);
        let hbar = Mono::var(Var::T1, 1).mul(&Mono::var(Var::T2, 1));
        half.add(&half.dual().scale(hbar))
    }

    /// Δ = ħ^{-n} · (monomial prefactor) · Λ•(N⁻), N⁻ the a-negative part of T.
    pub fn delta(
        &self,
        variant: Polarization,
        framing: Framing,
        reading: DetReading,
        orientation: Orientation,
    ) -> Result<GroundScalar, CombinatError> {
        let half = self.polarization(variant, framing, orientation);
        let tangent = self.tangent(variant, framing, orientation);
        let repelling = tangent.filter_a(|e| e < 0);
        let prefactor = match reading {
            DetReading::SqrtRatio => {
                let ratio = repelling.det().div(&half.filter_a(|e| e != 0).det());
                if ratio.0.iter().any(|d| d % 2 != 0) {
                    return Err(CombinatError::OddSquareRoot);
                }
                Mono(ratio.0.map(|d| d / 2))
            }
            DetReading::Repelling => half.filter_a(|e| e < 0).det().inv(),
        };
        let n = self.size() as i32;
        Ok(GroundScalar::hbar(-n).mul(&GroundScalar::mono(prefactor)).mul(&repelling.lambda_dot()?))
    }
}

/// Component selector for the line-bundle eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineComponent {
    Full,
    First,
    Second,
}

/// O(−1) at (λ1, λ2): a^{−|λ1|} Π_k Π_{(i,j)∈λ_k} t1^{1−j} t2^{1−i} with one-based (i, j),
/// i.e. the inverse cell weights; follows the orientation like the cell weights do.
pub fn o_line_eigen(point: &RankTwoPoint, which: LineComponent, orientation: Orientation) -> GroundScalar {
    let factor = |l: &Partition| l.cells().into_iter().fold(Mono::ONE, |acc, cell| acc.mul(&orientation.cell_weight(cell).inv()));
    let m = match which {
        LineComponent::Full => Mono::var(Var::A, -(point.first.size() as i32))
            .mul(&factor(&point.first))
            .mul(&factor(&point.second)),
        LineComponent::First => factor(&point.first),
        LineComponent::Second => factor(&point.second),
    };
    GroundScalar::mono(m)
}

/// k-th elementary symmetric function of the tautological weights (or their inverses).
pub fn chern_eigen(
    lambdas: &[Partition],
    framing: &[Mono],
    k: usize,
    dual: bool,
    orientation: Orientation,
) -> Result<GroundScalar, CombinatError> {
    let c = taut_character(lambdas, framing, orientation)?;
    let c = if dual { c.dual() } else { c };
    c.elementary(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::text::parse_scalar;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }
    fn m(s: &str) -> Mono {
        let x = parse_scalar(s).unwrap();
        x.as_monomial().unwrap().0
    }
    fn ch(ws: &[&str]) -> Character {
        Character::from_weights(ws.iter().map(|w| (m(w), 1)))
    }

    #[test]
    fn taut_examples() {
        let o = Orientation::Standard;
        assert_eq!(taut_character(&[p("1")], &[Mono::ONE], o).unwrap(), ch(&["1"]));
        assert_eq!(taut_character(&[p("2")], &[Mono::ONE], o).unwrap(), ch(&["1", "t1"]));
        let a = Mono::var(Var::A, 1);
        assert_eq!(taut_character(&[p("1"), p("1")], &[Mono::ONE, a], o).unwrap(), ch(&["1", "a"]));
        assert!(taut_character(&[p("1")], &[], o).is_err());
    }

    #[test]
    fn tangent_examples() {
        let o = Orientation::Standard;
        assert_eq!(tangent_hilb(&p("1"), o), ch(&["t1", "t2"]));
        assert_eq!(tangent_hilb(&p("2"), o), ch(&["t1^2", "t1^-1*t2", "t1", "t2"]));
        for l in partitions_upto(6) {
            assert_eq!(tangent_hilb(&l, o).rank(), 2 * l.size() as i64);
        }
    }

    #[test]
    fn lambda_dot_examples() {
        let x = ch(&["t1"]).lambda_dot().unwrap();
        assert_eq!(x, parse_scalar("1 - t1^-1").unwrap());
        let y = ch(&["t1", "t2"]).lambda_dot().unwrap();
        assert_eq!(y, parse_scalar("1 - t1^-1").unwrap().mul(&parse_scalar("1 - t2^-1").unwrap()));
        assert_eq!(ch(&["1"]).lambda_dot(), Err(CombinatError::TrivialWeight));
    }

    #[test]
    fn proof_polarization_example() {
        let pt = RankTwoPoint::new(Partition::empty(), p("1"));
        // a on the first summand reproduces {ħa⁻¹, ħ}
        let half = pt.polarization(Polarization::Proof, Framing::FirstCarriesA, Orientation::Standard);
        assert_eq!(half, ch(&["t1*t2*a^-1", "t1*t2"]));
        let empty = RankTwoPoint::new(Partition::empty(), Partition::empty());
        for v in Polarization::ALL {
            assert!(empty.polarization(v, Framing::SecondCarriesA, Orientation::Standard).is_empty());
        }
    }

    #[test]
    fn line_bundle_examples() {
        let a = RankTwoPoint::new(p("1"), Partition::empty());
        assert_eq!(o_line_eigen(&a, LineComponent::Full, Orientation::Standard), parse_scalar("a^-1").unwrap());
        let b = RankTwoPoint::new(Partition::empty(), p("2"));
        assert_eq!(o_line_eigen(&b, LineComponent::Full, Orientation::Standard), parse_scalar("t1^-1").unwrap());
        let e = RankTwoPoint::new(Partition::empty(), Partition::empty());
        assert_eq!(o_line_eigen(&e, LineComponent::Full, Orientation::Standard), GroundScalar::one());
    }

    #[test]
    fn chern_examples() {
        let o = Orientation::Standard;
        let a = Mono::var(Var::A, 1);
        assert_eq!(chern_eigen(&[p("1")], &[Mono::ONE], 0, false, o).unwrap(), GroundScalar::one());
        assert_eq!(chern_eigen(&[p("1")], &[Mono::ONE], 1, false, o).unwrap(), GroundScalar::one());
        assert_eq!(chern_eigen(&[p("1"), p("1")], &[Mono::ONE, a], 2, false, o).unwrap(), parse_scalar("a").unwrap());
        assert!(chern_eigen(&[p("1")], &[Mono::ONE], 2, false, o).is_err());
    }

    #[test]
    fn delta_trivial_point() {
        let e = RankTwoPoint::new(Partition::empty(), Partition::empty());
        for v in Polarization::ALL {
            for r in DetReading::ALL {
                assert_eq!(e.delta(v, Framing::SecondCarriesA, r, Orientation::Standard).unwrap(), GroundScalar::one());
            }
        }
    }

    #[test]
    fn rank_two_fixed_point_count() {
        assert_eq!(RankTwoPoint::all(3).len(), 10);
        assert_eq!(RankTwoPoint::all(1).len(), 2);
    }
}
