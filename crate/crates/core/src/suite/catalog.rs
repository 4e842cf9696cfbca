//! The inequality catalog: one id per checked statement.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum InequalityId {
    Eq38Lower,
    Eq38Upper,
    Eq37,
    Eq36,
    Eq41,
    RefinedCs,
    Ineq30,
    ThmMainSq,
    ThmMain,
    Cor14Sq,
    Cor14,
    Cor12F,
    Cor12Pow,
    Drag2,
    Chain44,
    SingleFSq,
    SingleF,
    Eq21,
    Eq31,
    Prop33Alpha,
    Prop33Mean,
    Prop33AlphaPointwise,
    Prop33MeanPointwise,
    Chain35,
    KittanehChain,
    Lem22,
    Lem23,
    Lem16,
    Lem43,
    LemAujla,
    WnPropAlpha,
    WnPropMean,
}

/// Operand slots an id reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    /// Scalars `a, b ≥ 0`.
    Scalars,
    /// Vectors `a, b` and a unit vector `e`.
    Vectors,
    /// One operator `T`.
    Single,
    /// `T` and a unit vector `x`.
    SingleVector,
    /// A Hermitian `H` and a unit vector `x`.
    HermitianVector,
    /// Two operators `A, B`.
    Pair,
    /// `A, B` and a unit vector `x`.
    PairVector,
    /// Two positive semidefinite operators.
    PsdPair,
}

use InequalityId::*;

const TABLE: [(InequalityId, &str); 32] = [
    (Eq38Lower, "EQ38_LOWER"),
    (Eq38Upper, "EQ38_UPPER"),
    (Eq37, "EQ37"),
    (Eq36, "EQ36"),
    (Eq41, "EQ41"),
    (RefinedCs, "REFINED_CS"),
    (Ineq30, "INEQ30"),
    (ThmMainSq, "THM_MAIN_SQ"),
    (ThmMain, "THM_MAIN"),
    (Cor14Sq, "COR14_SQ"),
    (Cor14, "COR14"),
    (Cor12F, "COR12_F"),
    (Cor12Pow, "COR12_POW"),
    (Drag2, "DRAG2"),
    (Chain44, "CHAIN44"),
    (SingleFSq, "SINGLE_F_SQ"),
    (SingleF, "SINGLE_F"),
    (Eq21, "EQ21"),
    (Eq31, "EQ31"),
    (Prop33Alpha, "PROP33_20"),
    (Prop33Mean, "PROP33_34"),
    (Prop33AlphaPointwise, "PROP33_19_POINTWISE"),
    (Prop33MeanPointwise, "PROP33_46_POINTWISE"),
    (Chain35, "CHAIN35"),
    (KittanehChain, "KITTANEH_CHAIN"),
    (Lem22, "LEM22"),
    (Lem23, "LEM23"),
    (Lem16, "LEM16"),
    (Lem43, "LEM43"),
    (LemAujla, "LEM_AUJLA"),
    (WnPropAlpha, "WN_PROP_ALPHA"),
    (WnPropMean, "WN_PROP_MEAN"),
];

impl InequalityId {
    pub fn all() -> impl Iterator<Item = InequalityId> {
        TABLE.iter().map(|&(id, _)| id)
    }

    pub fn name(self) -> &'static str {
        TABLE.iter().find(|(id, _)| *id == self).map(|(_, name)| *name).expect("every id is tabulated")
    }

    pub fn arity(self) -> Arity {
        match self {
            Lem22 => Arity::Scalars,
            RefinedCs => Arity::Vectors,
            Eq38Lower | Eq38Upper | Eq37 | Eq36 | Eq41 | SingleFSq | SingleF | Eq21 | Eq31 | Prop33Alpha
            | Prop33Mean | Chain35 | KittanehChain | Lem43 | WnPropAlpha | WnPropMean => Arity::Single,
            Prop33AlphaPointwise | Prop33MeanPointwise | Lem16 => Arity::SingleVector,
            Lem23 => Arity::HermitianVector,
            Cor12F | Cor12Pow | Drag2 | Chain44 => Arity::Pair,
            Ineq30 | ThmMainSq | ThmMain | Cor14Sq | Cor14 => Arity::PairVector,
            LemAujla => Arity::PsdPair,
        }
    }

    /// Reads the power parameter `r`.
    pub fn uses_r(self) -> bool {
        matches!(
            self,
            Eq41 | Cor14Sq
                | Cor14
                | Cor12Pow
                | Drag2
                | Chain44
                | Eq21
                | Eq31
                | Prop33Alpha
                | Prop33Mean
                | Prop33AlphaPointwise
                | Prop33MeanPointwise
                | Chain35
                | Lem22
                | WnPropAlpha
                | WnPropMean
        )
    }

    /// Reads the interpolation weight `α`.
    pub fn uses_alpha(self) -> bool {
        self.alpha_must_be_interior() || self == Lem22
    }

    /// Contains an exponent `2/α` or `2/(1 − α)`, so `α` must lie in `(0, 1)`.
    pub fn alpha_must_be_interior(self) -> bool {
        matches!(
            self,
            ThmMainSq | Cor14Sq | SingleFSq | Eq21 | Prop33Alpha | Prop33AlphaPointwise | WnPropAlpha
        )
    }

    /// Reads a convex function `f` from the registry.
    pub fn uses_f(self) -> bool {
        matches!(self, ThmMainSq | ThmMain | Cor12F | SingleFSq | SingleF | Lem23 | LemAujla)
    }

    /// Reads a unitarily invariant norm `N`.
    pub fn uses_norm(self) -> bool {
        matches!(self, WnPropAlpha | WnPropMean)
    }

    /// Carries a monotone value list in its report.
    pub fn is_chain(self) -> bool {
        matches!(self, Chain44 | Chain35 | KittanehChain | Lem22 | RefinedCs)
    }

    /// The statement being checked, in plain notation.
    pub fn statement(self) -> &'static str {
        match self {
            Eq38Lower => "||T||/2 <= w(T)",
            Eq38Upper => "w(T) <= ||T||",
            Eq37 => "w(T) <= (||T|| + ||T^2||^(1/2))/2",
            Eq36 => "w^2(T) <= ||(|T|^2 + |T*|^2)||/2",
            Eq41 => "w^2r(T) <= ||(|T|^2r + |T*|^2r)||/2",
            RefinedCs => "|<a,e><e,b>| <= (|<a,b>| + |a||b|)/2 and |<a,b>| <= |<a,e><e,b>| + |<a,b> - <a,e><e,b>| <= |a||b|",
            Ineq30 => "|<Ax,x><Bx,x>| <= (|<BAx,x>| + ||Ax|| ||B*x||)/2",
            ThmMainSq => "f(|<Ax,x><Bx,x>|^2) <= [f(|<BAx,x>|^2) + <(a f(|A|^(2/a)) + (1-a) f(|B*|^(2/(1-a))))x,x>]/2",
            ThmMain => "f(|<Ax,x><Bx,x>|) <= f(|<BAx,x>|)/2 + <(f(|A|^2) + f(|B*|^2))x,x>/4",
            Cor14Sq => "|<Ax,x><Bx,x>|^2r <= [|<BAx,x>|^2r + <(a|A|^(2r/a) + (1-a)|B*|^(2r/(1-a)))x,x>]/2",
            Cor14 => "|<Ax,x><Bx,x>|^r <= |<BAx,x>|^r/2 + <(|A|^2r + |B*|^2r)x,x>/4",
            Cor12F => "f(w^2(B*A)) <= f(w(|B|^2|A|^2))/2 + ||f(|A|^4) + f(|B|^4)||/4",
            Cor12Pow => "w^2r(B*A) <= w^r(|B|^2|A|^2)/2 + |||A|^4r + |B|^4r||/4",
            Drag2 => "w^2r(B*A) <= |||A|^4r + |B|^4r||/2",
            Chain44 => "w^2r(B*A) <= w^r(|B|^2|A|^2)/2 + |||A|^4r + |B|^4r||/4 <= |||A|^4r + |B|^4r||/2",
            SingleFSq => "f(w^4(T)) <= [f(w^2(|T||T*|)) + ||(1-a) f(|T|^(2/(1-a))) + a f(|T*|^(2/a))||]/2",
            SingleF => "f(w^2(T)) <= f(w(|T||T*|))/2 + ||f(|T|^2) + f(|T*|^2)||/4",
            Eq21 => "w^4r(T) <= [w^2r(|T||T*|) + ||(1-a)|T|^(2r/(1-a)) + a|T*|^(2r/a)||]/2",
            Eq31 => "w^2r(T) <= w^r(|T||T*|)/2 + |||T|^2r + |T*|^2r||/4",
            Prop33Alpha => "w^2r(|T||T*|) <= ||(1-a)|T|^(2r/(1-a)) + a|T*|^(2r/a)||",
            Prop33Mean => "w^r(|T||T*|) <= |||T|^2r + |T*|^2r||/2",
            Prop33AlphaPointwise => "|<|T||T*|x,x>|^2r <= <((1-a)|T|^(2r/(1-a)) + a|T*|^(2r/a))x,x>",
            Prop33MeanPointwise => "|<|T||T*|x,x>|^r <= <(|T|^2r + |T*|^2r)x,x>/2",
            Chain35 => "w^2r(T) <= w^r(|T||T*|)/2 + |||T|^2r + |T*|^2r||/4 <= |||T|^2r + |T*|^2r||/2",
            KittanehChain => "w(T) <= sqrt(2w(|T||T*|) + |||T|^2 + |T*|^2||)/2 <= (||T^2||^(1/2) + ||T||)/2",
            Lem22 => "a^a b^(1-a) <= a a + (1-a) b <= (a a^r + (1-a) b^r)^(1/r)",
            Lem23 => "f(<Hx,x>) <= <f(H)x,x>",
            Lem16 => "|<Tx,x>|^2 <= <|T|x,x><|T*|x,x>",
            Lem43 => "|||T|^2 + |T*|^2|| <= ||T^2|| + ||T||^2",
            LemAujla => "||f((A+B)/2)|| <= ||(f(A) + f(B))/2||",
            WnPropAlpha => "w_N(|T||T*|) <= N({(1-a)|T|^(2r/(1-a)) + a|T*|^(2r/a)}^(1/2r))",
            WnPropMean => "w_N(|T||T*|) <= N({(|T|^2r + |T*|^2r)/2}^(1/r))",
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InequalityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_uppercase();
        TABLE
            .iter()
            .find(|(_, name)| *name == wanted)
            .map(|&(id, _)| id)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown inequality id {s:?}")))
    }
}

impl TryFrom<String> for InequalityId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<InequalityId> for String {
    fn from(id: InequalityId) -> String {
        id.name().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn names_are_unique_and_parse_back() {
        let names: HashSet<&str> = InequalityId::all().map(InequalityId::name).collect();
        assert_eq!(names.len(), TABLE.len());
        for id in InequalityId::all() {
            assert_eq!(id.name().parse::<InequalityId>().unwrap(), id);
        }
        assert!("EQ99".parse::<InequalityId>().is_err());
    }

    #[test]
    fn interior_alpha_ids_read_alpha() {
        for id in InequalityId::all() {
            if id.alpha_must_be_interior() {
                assert!(id.uses_alpha());
            }
        }
    }
}
