use std::borrow::Borrow;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub const MAX_ID_LEN: usize = 64;

/// Identifier in the package's single flat namespace: `[A-Za-z][A-Za-z0-9_-]*`, at
/// most 64 characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EntityId(String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a valid id (expected [A-Za-z][A-Za-z0-9_-]*, at most 64 chars)")]
pub struct InvalidId(pub String);

impl EntityId {
    pub fn new(text: impl Into<String>) -> Result<Self, InvalidId> {
        let text = text.into();
        if Self::is_valid(&text) {
            Ok(EntityId(text))
        } else {
            Err(InvalidId(text))
        }
    }

    pub fn is_valid(text: &str) -> bool {
        let mut bytes = text.bytes();
        match bytes.next() {
            Some(b) if b.is_ascii_alphabetic() => {}
            _ => return false,
        }
        text.len() <= MAX_ID_LEN
            && bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for EntityId {
    type Err = InvalidId;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EntityId::new(s)
    }
}

impl TryFrom<&str> for EntityId {
    type Error = InvalidId;

    fn try_from(value: &str) -> Result<Self, Self::Error> {
        EntityId::new(value)
    }
}

impl Borrow<str> for EntityId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for EntityId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl PartialEq<str> for EntityId {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

impl PartialEq<&str> for EntityId {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}
