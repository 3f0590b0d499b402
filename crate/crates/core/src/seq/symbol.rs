use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

/// A letter of the alphabet {+1, −1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    Plus,
    Minus,
}

impl Symbol {
    pub const fn value(self) -> i64 {
        match self {
            Symbol::Plus => 1,
            Symbol::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Symbol> {
        match v {
            1 => Some(Symbol::Plus),
            -1 => Some(Symbol::Minus),
            _ => None,
        }
    }

    pub const fn from_bool(plus: bool) -> Symbol {
        if plus {
            Symbol::Plus
        } else {
            Symbol::Minus
        }
    }

    pub const fn is_plus(self) -> bool {
        matches!(self, Symbol::Plus)
    }

    /// Accepts `+`, ASCII `-` and the minus sign U+2212.
    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            '+' => Some(Symbol::Plus),
            '-' | '\u{2212}' => Some(Symbol::Minus),
            _ => None,
        }
    }

    pub const fn to_char(self) -> char {
        match self {
            Symbol::Plus => '+',
            Symbol::Minus => '\u{2212}',
        }
    }
}

impl Neg for Symbol {
    type Output = Symbol;
    fn neg(self) -> Symbol {
        match self {
            Symbol::Plus => Symbol::Minus,
            Symbol::Minus => Symbol::Plus,
        }
    }
}

impl Mul for Symbol {
    type Output = Symbol;
    fn mul(self, rhs: Symbol) -> Symbol {
        Symbol::from_bool(self == rhs)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Two-letter word `ab` classified the way steps and dominoes are.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pair {
    MinusPlus,
    PlusMinus,
    Matching,
}

impl Pair {
    pub fn of(first: Symbol, second: Symbol) -> Pair {
        match (first, second) {
            (Symbol::Minus, Symbol::Plus) => Pair::MinusPlus,
            (Symbol::Plus, Symbol::Minus) => Pair::PlusMinus,
            _ => Pair::Matching,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_table() {
        assert_eq!(Symbol::Plus * Symbol::Plus, Symbol::Plus);
        assert_eq!(Symbol::Minus * Symbol::Minus, Symbol::Plus);
        assert_eq!(Symbol::Plus * Symbol::Minus, Symbol::Minus);
        assert_eq!(-Symbol::Plus, Symbol::Minus);
    }

    #[test]
    fn chars() {
        assert_eq!(Symbol::from_char('-'), Some(Symbol::Minus));
        assert_eq!(Symbol::from_char('\u{2212}'), Some(Symbol::Minus));
        assert_eq!(Symbol::from_char('x'), None);
        assert_eq!(Symbol::Minus.to_string(), "\u{2212}");
        assert_eq!(Symbol::from_value(0), None);
    }
}
