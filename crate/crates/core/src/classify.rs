//! Sorting spaces into the classes `G₁ .. G₄` by how many distinct
//! topologies their dual sequence visits.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dual::{dual_power, dual_sequence, DualSequence};
use crate::error::Result;
use crate::topology::FiniteTopology;

/// Membership in each class, read straight off the dual sequence.
///
/// `g3c` is `τ^ddd = τ^dd`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RawClassFlags {
    pub g1: bool,
    pub g2a: bool,
    pub g2b: bool,
    pub g3a: bool,
    pub g3b: bool,
    pub g3c: bool,
    pub g4: bool,
}

impl RawClassFlags {
    pub fn in_g1(&self) -> bool {
        self.g1
    }

    pub fn in_g2(&self) -> bool {
        self.g2a || self.g2b
    }

    pub fn in_g3(&self) -> bool {
        self.g3a || self.g3b || self.g3c
    }

    /// Names of the set flags, e.g. `G2a+G3b+G4`.
    pub fn pattern(&self) -> String {
        self.named()
            .iter()
            .filter(|(_, on)| *on)
            .map(|(name, _)| *name)
            .collect::<Vec<_>>()
            .join("+")
    }

    fn named(&self) -> [(&'static str, bool); 7] {
        [
            ("G1", self.g1),
            ("G2a", self.g2a),
            ("G2b", self.g2b),
            ("G3a", self.g3a),
            ("G3b", self.g3b),
            ("G3c", self.g3c),
            ("G4", self.g4),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification<S> {
    pub flags: RawClassFlags,
    pub n_generative: usize,
    pub sequence: DualSequence<S>,
}

impl<S> Classification<S> {
    /// The classes at the space's own level, e.g. `G2a` for a 2-generative
    /// space whose second dual returns it.
    pub fn level_classes(&self) -> Vec<&'static str> {
        let prefix = format!("G{}", self.n_generative);
        self.flags
            .named()
            .iter()
            .filter(|(name, on)| *on && name.starts_with(&prefix))
            .map(|(name, _)| *name)
            .collect()
    }

    /// `2-generative, G2a`
    pub fn summary(&self) -> String {
        format!("{}-generative, {}", self.n_generative, self.level_classes().join(", "))
    }

    pub fn record(&self) -> ClassificationRecord {
        ClassificationRecord {
            n_generative: self.n_generative,
            flags: self.flags,
            sequence_distinct: self.n_generative,
        }
    }
}

/// Wire form of a classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub n_generative: usize,
    pub flags: RawClassFlags,
    pub sequence_distinct: usize,
}

pub fn classify<S: PartialEq + Clone>(seq: &DualSequence<S>) -> Classification<S> {
    let [t0, t1, t2, t3, t4] = seq.stages();
    let flags = RawClassFlags {
        g1: t1 == t0,
        g2a: t2 == t0,
        g2b: t2 == t1,
        g3a: t3 == t0,
        g3b: t3 == t1,
        g3c: t3 == t2,
        g4: t4 == t2,
    };
    let n_generative = if flags.in_g1() {
        1
    } else if flags.in_g2() {
        2
    } else if flags.in_g3() {
        3
    } else {
        4
    };
    debug_assert_eq!(n_generative, seq.distinct_count());
    Classification {
        flags,
        n_generative,
        sequence: seq.clone(),
    }
}

pub fn classify_finite(t: &FiniteTopology) -> Result<Classification<FiniteTopology>> {
    Ok(classify(&dual_sequence(t)?))
}

/// The composition table of `e, d, dd, ddd`: row `i`, column `j` holds the
/// reduced exponent of `d^(i+j)`.
pub const MONOID_TABLE: [[usize; 4]; 4] = [
    [0, 1, 2, 3],
    [1, 2, 3, 2],
    [2, 3, 2, 3],
    [3, 2, 3, 2],
];

/// Checks every table cell against the actual powers `d^0 .. d^6`.
pub fn monoid_table_holds<S: PartialEq>(powers: &[S; 7]) -> bool {
    (0..4).all(|i| (0..4).all(|j| powers[i + j] == powers[MONOID_TABLE[i][j]]))
}

pub fn verify_monoid_table(t: &FiniteTopology) -> bool {
    let powers: [FiniteTopology; 7] =
        std::array::from_fn(|k| dual_power(t, k).expect("k ≤ 6"));
    monoid_table_holds(&powers)
}

/// `G₁ = G₃a = G₂a ∩ G₂b = G₂a ∩ G₃c`, `G₂b = G₃b ∩ G₃c`, and `G₃ = G₃b ∪ G₃c`,
/// checked pointwise.
pub fn class_identities_hold<S>(c: &Classification<S>) -> bool {
    let f = &c.flags;
    let at_most_three = c.n_generative <= 3;
    (f.g1 == f.g3a)
        && (f.g1 == (f.g2a && f.g2b))
        && (f.g1 == (f.g2a && f.g3c))
        && (f.g2b == (f.g3b && f.g3c))
        && ((f.g3b || f.g3c) == at_most_three)
}

/// `G₂b = G₃c`, pointwise.
pub fn g2b_iff_g3c<S>(c: &Classification<S>) -> bool {
    c.flags.g2b == c.flags.g3c
}

/// Inclusions of the class diagram, plus `G₃a ⊆ G₁`.
pub fn diagram_inclusions_hold<S>(c: &Classification<S>) -> bool {
    let f = &c.flags;
    (!f.g1 || (f.g2a && f.g2b)) && (!(f.g2a || f.g2b) || (f.g3b || f.g3c)) && (!f.g3a || f.g1) && f.g4
}

/// A space that is a dual lies in `G₃` and outside `G₂b ∖ G₁`.
pub fn dual_class_admissible<S>(c: &Classification<S>) -> bool {
    let f = &c.flags;
    c.n_generative <= 3 && !(f.g2b && !f.g1)
}

/// Classifies `dual(sigma)` and checks [`dual_class_admissible`].
pub fn verify_dual_lands_in_g3(sigma: &FiniteTopology) -> Result<bool> {
    let tau = crate::dual::dual(sigma);
    Ok(dual_class_admissible(&classify_finite(&tau)?))
}

impl fmt::Display for RawClassFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pattern())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::dual;

    #[test]
    fn indiscrete_is_one_generative() {
        let c = classify_finite(&FiniteTopology::indiscrete(2)).unwrap();
        assert_eq!(c.n_generative, 1);
        assert!(c.flags.g1 && c.flags.g2a && c.flags.g2b && c.flags.g3a && c.flags.g3b && c.flags.g3c && c.flags.g4);
        assert!(class_identities_hold(&c));
        assert_eq!(c.summary(), "1-generative, G1");
    }

    #[test]
    fn sierpinski_is_two_generative() {
        let c = classify_finite(&FiniteTopology::sierpinski()).unwrap();
        assert!(c.flags.g2a && !c.flags.g1 && !c.flags.g2b);
        assert_eq!(c.n_generative, 2);
        assert_eq!(c.summary(), "2-generative, G2a");
        assert!(class_identities_hold(&c) && g2b_iff_g3c(&c) && diagram_inclusions_hold(&c));
    }

    #[test]
    fn four_distinct_stages() {
        let seq = DualSequence::from_stages(["a", "b", "c", "d", "c"]).unwrap();
        let c = classify(&seq);
        assert_eq!(c.n_generative, 4);
        assert_eq!(c.flags.pattern(), "G4");
        assert!(class_identities_hold(&c) && g2b_iff_g3c(&c));
        assert!(!dual_class_admissible(&c));
    }

    #[test]
    fn monoid_table_examples() {
        assert!(verify_monoid_table(&FiniteTopology::indiscrete(1)));
        assert!(verify_monoid_table(&FiniteTopology::sierpinski()));
        // a sequence that never settles breaks the table
        assert!(!monoid_table_holds(&[0, 1, 2, 3, 4, 5, 6]));
    }

    #[test]
    fn duals_are_admissible() {
        assert!(verify_dual_lands_in_g3(&FiniteTopology::sierpinski()).unwrap());
        assert!(verify_dual_lands_in_g3(&FiniteTopology::indiscrete(3)).unwrap());
        let tau = dual(&FiniteTopology::sierpinski());
        assert_eq!(classify_finite(&tau).unwrap().summary(), "2-generative, G2a");
    }

    #[test]
    fn record_json_shape() {
        let c = classify_finite(&FiniteTopology::sierpinski()).unwrap();
        let v = serde_json::to_value(c.record()).unwrap();
        assert_eq!(v["n_generative"], 2);
        assert_eq!(v["sequence_distinct"], 2);
        assert_eq!(v["flags"]["g2a"], true);
    }
}
