//! Infinite spaces described by a family tag and a carrier cardinality,
//! with their duals given by a fixed rule table.
//!
//! Finite carriers only ever produce 1- and 2-generative spaces; the members
//! here are what reaches the 3- and 4-generative classes.

use std::fmt;
use std::str::FromStr;

use crate::classify::{classify, Classification};
use crate::dual::DualSequence;
use crate::error::{Error, Result};
use crate::point_set::MAX_CARRIER;
use crate::topology::FiniteTopology;

/// Carrier size: finite, countable, or the first uncountable cardinal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinal {
    Finite(u32),
    Aleph0,
    Aleph1,
}

impl Cardinal {
    pub fn is_infinite(self) -> bool {
        !matches!(self, Cardinal::Finite(_))
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Aleph0 => f.write_str("aleph0"),
            Cardinal::Aleph1 => f.write_str("aleph1"),
        }
    }
}

impl FromStr for Cardinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "aleph0" => Ok(Cardinal::Aleph0),
            "aleph1" => Ok(Cardinal::Aleph1),
            _ => s
                .parse::<u32>()
                .map(Cardinal::Finite)
                .map_err(|_| Error::Parse(format!("unknown cardinal `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Discrete,
    Indiscrete,
    /// `∅` plus complements of finite sets.
    Cofinite,
    /// `∅` plus complements of countable sets.
    Cocountable,
    /// On `ω₁`: every `[0, α) ∖ F` with `α ≤ ω₁` and `F` finite.
    InitialSegmentsMinusFinite,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Discrete,
        Family::Indiscrete,
        Family::Cofinite,
        Family::Cocountable,
        Family::InitialSegmentsMinusFinite,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Family::Discrete => "discrete",
            Family::Indiscrete => "indiscrete",
            Family::Cofinite => "cofinite",
            Family::Cocountable => "cocountable",
            Family::InitialSegmentsMinusFinite => "initial-segments-minus-finite",
        }
    }
}

/// Alias accepted by the parser for `initial-segments-minus-finite@aleph1`.
pub const EXAMPLE_ALIAS: &str = "example4.5";

/// A symbolic space, always held in normalized form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicTopology {
    family: Family,
    kappa: Cardinal,
}

impl SymbolicTopology {
    pub fn new(family: Family, kappa: Cardinal) -> Result<Self> {
        if family == Family::InitialSegmentsMinusFinite && kappa != Cardinal::Aleph1 {
            return Err(Error::Parse(format!(
                "{} needs carrier aleph1, got {kappa}",
                family.token()
            )));
        }
        Ok(normalize(SymbolicTopology { family, kappa }))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn kappa(&self) -> Cardinal {
        self.kappa
    }

    pub fn specialization(&self) -> SpecializationKind {
        match (self.family, self.kappa) {
            (Family::Indiscrete, Cardinal::Finite(n)) if n <= 1 => SpecializationKind::Equality,
            (Family::Indiscrete, _) => SpecializationKind::Full,
            _ => SpecializationKind::Equality,
        }
    }
}

/// Rewrites a space to its canonical representative.
pub fn normalize(s: SymbolicTopology) -> SymbolicTopology {
    use Cardinal::*;
    use Family::*;
    let family = match (s.family, s.kappa) {
        (Cofinite, Finite(_)) => Discrete,
        (Cocountable, k) if k <= Aleph0 => Discrete,
        (Indiscrete, Finite(n)) if n <= 1 => Discrete,
        (f, _) => f,
    };
    SymbolicTopology { family, kappa: s.kappa }
}

/// The specialization preorder of a catalog member, which is always either
/// equality (T₁ spaces) or the full relation (indiscrete spaces).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecializationKind {
    Equality,
    Full,
}

impl SpecializationKind {
    /// Both kinds are symmetric, so reversing the order fixes them.
    pub fn opposite(self) -> Self {
        self
    }
}

/// One line of the dual rule table.
#[derive(Clone, Copy, Debug)]
pub struct DualRule {
    pub from: Family,
    /// Which carriers the rule covers.
    pub carriers: CarrierClass,
    pub to: Family,
    pub derivation: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CarrierClass {
    Finite,
    Infinite,
    Any,
    Aleph1,
}

impl CarrierClass {
    fn admits(self, k: Cardinal) -> bool {
        match self {
            CarrierClass::Finite => !k.is_infinite(),
            CarrierClass::Infinite => k.is_infinite(),
            CarrierClass::Any => true,
            CarrierClass::Aleph1 => k == Cardinal::Aleph1,
        }
    }
}

impl fmt::Display for CarrierClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CarrierClass::Finite => "finite",
            CarrierClass::Infinite => "infinite",
            CarrierClass::Any => "any",
            CarrierClass::Aleph1 => "aleph1",
        })
    }
}

pub const DUAL_RULES: [DualRule; 6] = [
    DualRule {
        from: Family::Discrete,
        carriers: CarrierClass::Infinite,
        to: Family::Cofinite,
        derivation: "Every subset is open, so every subset is saturated, and a set is compact \
            iff it is finite (the singletons cover it). The closed base is the finite sets; \
            finite unions stay finite and intersections of finite sets are finite, so the \
            closed sets are the finite sets plus the whole carrier: the cofinite topology.",
    },
    DualRule {
        from: Family::Discrete,
        carriers: CarrierClass::Finite,
        to: Family::Discrete,
        derivation: "Every subset is finite, hence compact, and open, hence saturated. The \
            closed base is the powerset, which gives the discrete topology back.",
    },
    DualRule {
        from: Family::Indiscrete,
        carriers: CarrierClass::Any,
        to: Family::Indiscrete,
        derivation: "The only open sets are the empty set and the carrier, so the saturated \
            sets are exactly those two, both compact. A closed base of the empty set and the \
            carrier generates the indiscrete topology.",
    },
    DualRule {
        from: Family::Cofinite,
        carriers: CarrierClass::Any,
        to: Family::Discrete,
        derivation: "The space is T1, so every subset is saturated. Any open cover of a set \
            has a member missing only finitely many points, and finitely many more members \
            pick those up, so every subset is compact. The powerset as closed base gives \
            the discrete topology.",
    },
    DualRule {
        from: Family::Cocountable,
        carriers: CarrierClass::Aleph1,
        to: Family::Cofinite,
        derivation: "The space is T1, so every subset is saturated. An infinite set contains a \
            countable infinite subset {a_i}; the open sets X minus {a_j : j != i} cover it and \
            no finitely many do, so compact sets are exactly the finite ones. As in the \
            infinite discrete case the finite sets generate the cofinite topology.",
    },
    DualRule {
        from: Family::InitialSegmentsMinusFinite,
        carriers: CarrierClass::Aleph1,
        to: Family::Cocountable,
        derivation: "The space is T1 (the set [0, x+1) minus {y} separates x from y), so every \
            subset is saturated. A set with a largest element m is compact: a member containing \
            m is [0, b) minus a finite F with b > m, and finitely many more members pick up F. \
            A set without a largest element has a cover by proper initial segments with no \
            finite subcover; every uncountable subset of the carrier is of this kind. So the \
            closed base consists of countable sets with a maximum, and any countable set is \
            the intersection of two of them (add two different points above it). The closed \
            sets are the countable sets plus the carrier: the cocountable topology.",
    },
];

/// Finds the rule covering a normalized space.
pub fn dual_rule(s: SymbolicTopology) -> Result<&'static DualRule> {
    DUAL_RULES
        .iter()
        .find(|r| r.from == s.family && r.carriers.admits(s.kappa))
        .ok_or_else(|| Error::UnknownFamily(s.to_string()))
}

pub fn symbolic_dual(s: SymbolicTopology) -> Result<SymbolicTopology> {
    let s = normalize(s);
    let rule = dual_rule(s)?;
    Ok(normalize(SymbolicTopology { family: rule.to, kappa: s.kappa }))
}

/// `k`-fold symbolic dual.
pub fn symbolic_dual_power(s: SymbolicTopology, k: usize) -> Result<SymbolicTopology> {
    (0..k).try_fold(normalize(s), |cur, _| symbolic_dual(cur))
}

pub fn symbolic_dual_sequence(s: SymbolicTopology) -> Result<DualSequence<SymbolicTopology>> {
    let stages = DualSequence::iterate(normalize(s), |t| symbolic_dual(*t))?;
    DualSequence::from_stages(stages).ok_or_else(|| {
        Error::RuleInconsistency(format!(
            "{s}: second dual {} but fourth dual {}",
            stages[2], stages[4]
        ))
    })
}

pub fn classify_symbolic(s: SymbolicTopology) -> Result<Classification<SymbolicTopology>> {
    Ok(classify(&symbolic_dual_sequence(s)?))
}

/// The same family on an `n`-point carrier.
pub fn truncate(s: SymbolicTopology, n: usize) -> Result<FiniteTopology> {
    if n > MAX_CARRIER {
        return Err(Error::CapExceeded { n, cap: MAX_CARRIER });
    }
    match s.family {
        // cofinite on a finite carrier is discrete
        Family::Discrete | Family::Cofinite => Ok(FiniteTopology::discrete(n)),
        Family::Indiscrete => Ok(FiniteTopology::indiscrete(n)),
        Family::Cocountable | Family::InitialSegmentsMinusFinite => {
            Err(Error::NotTruncatable(s.to_string()))
        }
    }
}

/// Every space the catalog ships, in a fixed order.
pub fn catalog() -> Vec<SymbolicTopology> {
    use Cardinal::*;
    use Family::*;
    [
        (Discrete, Finite(2)),
        (Discrete, Aleph0),
        (Discrete, Aleph1),
        (Indiscrete, Finite(3)),
        (Indiscrete, Aleph0),
        (Indiscrete, Aleph1),
        (Cofinite, Aleph0),
        (Cofinite, Aleph1),
        (Cocountable, Aleph1),
        (InitialSegmentsMinusFinite, Aleph1),
    ]
    .into_iter()
    .map(|(f, k)| SymbolicTopology::new(f, k).expect("catalog entries are valid"))
    .collect()
}

impl fmt::Display for SymbolicTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.family.token(), self.kappa)
    }
}

impl FromStr for SymbolicTopology {
    type Err = Error;

    /// `discrete@aleph1`, `cofinite@aleph0`, `discrete@3`, or `example4.5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == EXAMPLE_ALIAS {
            return SymbolicTopology::new(Family::InitialSegmentsMinusFinite, Cardinal::Aleph1);
        }
        let (name, card) = s
            .split_once('@')
            .ok_or_else(|| Error::Parse(format!("expected `family@cardinal`, got `{s}`")))?;
        let family = Family::ALL
            .into_iter()
            .find(|f| f.token() == name)
            .ok_or_else(|| Error::Parse(format!("unknown family `{name}`")))?;
        SymbolicTopology::new(family, card.parse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::dual;
    use Cardinal::*;
    use Family::*;

    fn sym(f: Family, k: Cardinal) -> SymbolicTopology {
        SymbolicTopology::new(f, k).unwrap()
    }

    #[test]
    fn cardinal_order() {
        assert!(Finite(2) < Finite(3));
        assert!(Finite(1_000_000) < Aleph0);
        assert!(Aleph0 < Aleph1);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(sym(Cofinite, Finite(3)), sym(Discrete, Finite(3)));
        assert_eq!(sym(Cocountable, Aleph0).family(), Discrete);
        assert_eq!(sym(Cocountable, Aleph1).family(), Cocountable);
        assert_eq!(sym(Indiscrete, Finite(1)).family(), Discrete);
        let raw = SymbolicTopology { family: Cofinite, kappa: Finite(4) };
        assert_eq!(normalize(normalize(raw)), normalize(raw));
    }

    #[test]
    fn dual_rule_examples() {
        assert_eq!(symbolic_dual(sym(Cofinite, Aleph1)).unwrap(), sym(Discrete, Aleph1));
        assert_eq!(
            symbolic_dual(sym(InitialSegmentsMinusFinite, Aleph1)).unwrap(),
            sym(Cocountable, Aleph1)
        );
        assert_eq!(symbolic_dual(sym(Indiscrete, Aleph0)).unwrap(), sym(Indiscrete, Aleph0));
        assert_eq!(symbolic_dual(sym(Discrete, Aleph0)).unwrap(), sym(Cofinite, Aleph0));
    }

    #[test]
    fn unknown_family_guard() {
        let bad = SymbolicTopology { family: InitialSegmentsMinusFinite, kappa: Aleph0 };
        assert!(matches!(symbolic_dual(bad), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn cocountable_sequence() {
        let seq = symbolic_dual_sequence(sym(Cocountable, Aleph1)).unwrap();
        let expected = [
            sym(Cocountable, Aleph1),
            sym(Cofinite, Aleph1),
            sym(Discrete, Aleph1),
            sym(Cofinite, Aleph1),
            sym(Discrete, Aleph1),
        ];
        assert_eq!(seq.stages(), &expected);
        let c = classify(&seq);
        assert_eq!(c.n_generative, 3);
        assert!(c.flags.g3b && !c.flags.g3c && !c.flags.g2a && !c.flags.g2b);
        assert_eq!(c.summary(), "3-generative, G3b");
    }

    #[test]
    fn small_discrete_is_fixed() {
        let c = classify_symbolic(sym(Discrete, Finite(2))).unwrap();
        assert_eq!(c.n_generative, 1);
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(truncate(sym(Cofinite, Aleph0), 3).unwrap(), FiniteTopology::discrete(3));
        assert_eq!(truncate(sym(Indiscrete, Aleph1), 4).unwrap(), FiniteTopology::indiscrete(4));
        assert!(matches!(truncate(sym(Cocountable, Aleph1), 3), Err(Error::NotTruncatable(_))));
    }

    #[test]
    fn truncation_commutes_with_dual_on_finite_rules() {
        for n in 0..=5u32 {
            for f in [Discrete, Indiscrete] {
                let s = sym(f, Finite(n));
                let lhs = dual(&truncate(s, n as usize).unwrap());
                let rhs = truncate(symbolic_dual(s).unwrap(), n as usize).unwrap();
                assert_eq!(lhs, rhs, "{s}");
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let s: SymbolicTopology = "example4.5".parse().unwrap();
        assert_eq!(s.to_string(), "initial-segments-minus-finite@aleph1");
        assert_eq!("discrete@3".parse::<SymbolicTopology>().unwrap(), sym(Discrete, Finite(3)));
        assert_eq!("cofinite@aleph0".parse::<SymbolicTopology>().unwrap().to_string(), "cofinite@aleph0");
        assert!("cofinite".parse::<SymbolicTopology>().is_err());
        assert!("blob@aleph0".parse::<SymbolicTopology>().is_err());
        assert!("initial-segments-minus-finite@aleph0".parse::<SymbolicTopology>().is_err());
    }

    #[test]
    fn specialization_kinds_survive_duals() {
        for s in catalog() {
            let d = symbolic_dual(s).unwrap();
            assert_eq!(d.specialization(), s.specialization().opposite(), "{s}");
        }
    }
}
