use std::fmt;

use serde::{Deserialize, Serialize};

/// Sign of a crossing, a resolution, or a passage through the discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SignRepr", into = "i8")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Positive),
            '-' => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value() as i8
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SignRepr {
    Int(i64),
    Text(String),
}

impl TryFrom<SignRepr> for Sign {
    type Error = String;

    fn try_from(r: SignRepr) -> Result<Sign, String> {
        match r {
            SignRepr::Int(1) => Ok(Sign::Positive),
            SignRepr::Int(-1) => Ok(Sign::Negative),
            SignRepr::Text(t) if t == "+" => Ok(Sign::Positive),
            SignRepr::Text(t) if t == "-" => Ok(Sign::Negative),
            _ => Err("sign must be 1, -1, \"+\" or \"-\"".into()),
        }
    }
}
