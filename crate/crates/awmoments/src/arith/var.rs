use serde::{Deserialize, Serialize};

use crate::error::{AwError, Result};

/// The fixed variable alphabet of the library.
///
/// Every polynomial and rational function lives in the Laurent ring over
/// these eight commuting indeterminates. The discriminant order defines the
/// canonical variable order used by monomial comparison and printing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
    Q = 4,
    Y = 5,
    T = 6,
    /// The auxiliary base written as capital `A` in output.
    CapA = 7,
}

pub const NUM_VARS: usize = 8;

pub const ALL_VARS: [Var; NUM_VARS] = [
    Var::A,
    Var::B,
    Var::C,
    Var::D,
    Var::Q,
    Var::Y,
    Var::T,
    Var::CapA,
];

impl Var {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Var> {
        ALL_VARS.get(i).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::D => "d",
            Var::Q => "q",
            Var::Y => "y",
            Var::T => "t",
            Var::CapA => "A",
        }
    }

    pub fn parse(s: &str) -> Result<Var> {
        match s {
            "a" => Ok(Var::A),
            "b" => Ok(Var::B),
            "c" => Ok(Var::C),
            "d" => Ok(Var::D),
            "q" => Ok(Var::Q),
            "y" => Ok(Var::Y),
            "t" => Ok(Var::T),
            "A" => Ok(Var::CapA),
            other => Err(AwError::UnknownName(format!("variable `{other}`"))),
        }
    }
}

impl std::fmt::Display for Var {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_a_b_c_d_q_y_t_capa() {
        let names: Vec<&str> = ALL_VARS.iter().map(|v| v.name()).collect();
        assert_eq!(names, ["a", "b", "c", "d", "q", "y", "t", "A"]);
        for w in ALL_VARS.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn parse_round_trips() {
        for v in ALL_VARS {
            assert_eq!(Var::parse(v.name()).unwrap(), v);
        }
        assert!(Var::parse("x").is_err());
    }
}
