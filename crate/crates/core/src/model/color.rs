use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Named colors and their canonical RGB values.
pub const NAMED_COLORS: &[(&str, u32)] = &[
    ("red", 0xff0000),
    ("green", 0x00ff00),
    ("blue", 0x0000ff),
    ("white", 0xffffff),
    ("black", 0x000000),
    ("yellow", 0xffff00),
    ("gray", 0x808080),
    ("grey", 0x808080),
    ("orange", 0xffa500),
    ("purple", 0x800080),
    ("cyan", 0x00ffff),
    ("magenta", 0xff00ff),
];

/// An RGB color. Equality is on the canonical value, so `red` and `#FF0000`
/// compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color(u32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is neither a known color name nor a #rrggbb value")]
pub struct ColorParseError(pub String);

impl Color {
    pub const WHITE: Color = Color(0xffffff);

    pub const fn from_rgb(rgb: u32) -> Self {
        Color(rgb & 0xff_ffff)
    }

    pub fn rgb(self) -> u32 {
        self.0
    }

    /// Lowercase `#rrggbb`.
    pub fn hex(self) -> String {
        format!("#{:06x}", self.0)
    }

    pub fn parse(text: &str) -> Result<Color, ColorParseError> {
        if let Some(digits) = text.strip_prefix('#') {
            if digits.len() == 6 && digits.bytes().all(|b| b.is_ascii_hexdigit()) {
                let rgb = u32::from_str_radix(digits, 16)
                    .map_err(|_| ColorParseError(text.to_string()))?;
                return Ok(Color(rgb));
            }
            return Err(ColorParseError(text.to_string()));
        }
        let lower = text.to_ascii_lowercase();
        NAMED_COLORS
            .iter()
            .find(|(name, _)| *name == lower)
            .map(|(_, rgb)| Color(*rgb))
            .ok_or_else(|| ColorParseError(text.to_string()))
    }
}

impl FromStr for Color {
    type Err = ColorParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Color::parse(s)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:06x}", self.0)
    }
}
