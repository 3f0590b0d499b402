use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the four inward normals `(1,0), (−1,0), (0,1), (0,−1)`.
///
/// A curve entering a square with normal `v` crossed the edge on the side
/// opposite to `v`, so `Right` means it came in through the left edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Normal {
    Right,
    Left,
    Up,
    Down,
}

impl Normal {
    pub const ALL: [Normal; 4] = [Normal::Right, Normal::Left, Normal::Up, Normal::Down];

    pub fn from_xy(x: i64, y: i64) -> Option<Normal> {
        match (x, y) {
            (1, 0) => Some(Normal::Right),
            (-1, 0) => Some(Normal::Left),
            (0, 1) => Some(Normal::Up),
            (0, -1) => Some(Normal::Down),
            _ => None,
        }
    }

    pub const fn x(self) -> i64 {
        match self {
            Normal::Right => 1,
            Normal::Left => -1,
            _ => 0,
        }
    }

    pub const fn y(self) -> i64 {
        match self {
            Normal::Up => 1,
            Normal::Down => -1,
            _ => 0,
        }
    }

    pub const fn is_horizontal(self) -> bool {
        matches!(self, Normal::Right | Normal::Left)
    }

    /// `s·(b, a)` for `self = (a, b)` and a sign `s`.
    pub fn swapped(self, s: i64) -> Normal {
        Normal::from_xy(s * self.y(), s * self.x()).expect("unit normal")
    }

    pub fn reversed(self) -> Normal {
        Normal::from_xy(-self.x(), -self.y()).expect("unit normal")
    }
}

impl fmt::Display for Normal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x(), self.y())
    }
}

impl std::str::FromStr for Normal {
    type Err = String;

    /// Accepts `right|left|up|down` or a vector such as `(1,0)` / `0,-1`.
    fn from_str(text: &str) -> Result<Normal, String> {
        let t = text.trim().to_ascii_lowercase();
        match t.as_str() {
            "right" | "e" => return Ok(Normal::Right),
            "left" | "w" => return Ok(Normal::Left),
            "up" | "n" => return Ok(Normal::Up),
            "down" | "s" => return Ok(Normal::Down),
            _ => {}
        }
        let inner = t.trim_start_matches('(').trim_end_matches(')').replace('\u{2212}', "-");
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if let [x, y] = parts[..] {
            if let (Ok(x), Ok(y)) = (x.parse(), y.parse()) {
                if let Some(n) = Normal::from_xy(x, y) {
                    return Ok(n);
                }
            }
        }
        Err(format!("not a unit normal: {text:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectors_round_trip() {
        for v in Normal::ALL {
            assert_eq!(Normal::from_xy(v.x(), v.y()), Some(v));
            assert_eq!(v.to_string().parse::<Normal>(), Ok(v));
            assert_eq!(v.reversed().reversed(), v);
            assert_ne!(v.swapped(1).is_horizontal(), v.is_horizontal());
        }
        assert_eq!("0,-1".parse::<Normal>(), Ok(Normal::Down));
        assert!("1,1".parse::<Normal>().is_err());
    }
}
