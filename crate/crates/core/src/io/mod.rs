//! Package parsing, canonical serialization and asset resolution.

mod assets;
pub mod canonical;
mod parse;
pub(crate) mod reader;
mod serialize;

pub use assets::{content_type, resolve_assets, AssetEntry, AssetTable};
pub use canonical::to_canonical_string;
pub use parse::{parse_package, parse_package_value, Parsed};
pub use serialize::{literal_value, package_value, serialize_canonical, vec3_value};
