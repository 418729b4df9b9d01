use std::fmt;

/// The identities an axiom or certification check can report as violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    Coassociativity,
    CounitLeft,
    CounitRight,
    MultAssociativity,
    UnitLeft,
    UnitRight,
    ComultMultiplicative,
    CounitMultiplicative,
    ComultUnit,
    CounitUnit,
    AntipodeLeft,
    AntipodeRight,
    MapComult,
    MapCounit,
    MapMult,
    MapUnit,
    MapAntipode,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::Coassociativity => "coassociativity",
            Identity::CounitLeft => "left counit law",
            Identity::CounitRight => "right counit law",
            Identity::MultAssociativity => "multiplication associativity",
            Identity::UnitLeft => "left unit law",
            Identity::UnitRight => "right unit law",
            Identity::ComultMultiplicative => "comultiplication is an algebra map",
            Identity::CounitMultiplicative => "counit is an algebra map",
            Identity::ComultUnit => "comultiplication preserves the unit",
            Identity::CounitUnit => "counit sends the unit to 1",
            Identity::AntipodeLeft => "left antipode convolution law",
            Identity::AntipodeRight => "right antipode convolution law",
            Identity::MapComult => "map commutes with comultiplication",
            Identity::MapCounit => "map preserves the counit",
            Identity::MapMult => "map commutes with multiplication",
            Identity::MapUnit => "map preserves the unit",
            Identity::MapAntipode => "map commutes with the antipode",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// First violated identity found by a check, with the basis column where the
/// two sides first differ. For identities about a distinguished element
/// (unit laws) the index is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub identity: Identity,
    pub basis_index: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at basis index {}", self.identity, self.basis_index)
    }
}

/// Outcome of an axiom suite or a morphism certification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckReport {
    pub pass: bool,
    pub violation: Option<Violation>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport { pass: true, violation: None }
    }

    pub fn fail(identity: Identity, basis_index: usize) -> Self {
        CheckReport {
            pass: false,
            violation: Some(Violation { identity, basis_index }),
        }
    }
}
