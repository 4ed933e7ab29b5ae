use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::diag::Diagnostic;
use crate::model::{AssetRef, EntityBody, MediaClass, ScenePackage};

pub const A_MISSING: &str = "A001";
pub const A_CLASS: &str = "A002";
pub const A_ILLEGAL: &str = "A003";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssetEntry {
    pub path: PathBuf,
    pub class: MediaClass,
    pub byte_size: u64,
}

/// Resolved assets keyed by their package-relative reference.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AssetTable {
    entries: BTreeMap<AssetRef, AssetEntry>,
}

impl AssetTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, asset: AssetRef, entry: AssetEntry) {
        self.entries.insert(asset, entry);
    }

    pub fn get(&self, asset: &AssetRef) -> Option<&AssetEntry> {
        self.entries.get(asset)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AssetRef, &AssetEntry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// MIME type for a file extension, `application/octet-stream` when unknown.
pub fn content_type(ext: &str) -> &'static str {
    match ext.to_ascii_lowercase().as_str() {
        "html" | "htm" => "text/html; charset=utf-8",
        "js" | "mjs" => "text/javascript; charset=utf-8",
        "json" => "application/json",
        "css" => "text/css; charset=utf-8",
        "png" => "image/png",
        "jpg" | "jpeg" => "image/jpeg",
        "mp4" => "video/mp4",
        "webm" => "video/webm",
        "pdf" => "application/pdf",
        "gltf" => "model/gltf+json",
        "glb" => "model/gltf-binary",
        _ => "application/octet-stream",
    }
}

fn expected_class(body: &EntityBody) -> Option<MediaClass> {
    match body {
        EntityBody::Model { .. } => Some(MediaClass::Model),
        EntityBody::Image { .. } => Some(MediaClass::Image),
        EntityBody::Video { .. } => Some(MediaClass::Video),
        EntityBody::Pdf { .. } => Some(MediaClass::Pdf),
        _ => None,
    }
}

/// Resolves every asset reference against `base_dir`. Checks run per reference
/// in the order illegal path (A003), class mismatch (A002), missing file (A001).
pub fn resolve_assets(pkg: &ScenePackage, base_dir: &Path) -> Result<AssetTable, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut table = AssetTable::new();
    let canonical_base = fs::canonicalize(base_dir).ok();

    for (i, entity) in pkg.entities.iter().enumerate() {
        for (field, asset) in entity.asset_refs() {
            let path = format!("entities/{i}/{field}");
            let wanted = if field == "texture" {
                Some(MediaClass::Image)
            } else {
                expected_class(&entity.body)
            };
            if !asset.is_traversal_free() {
                diags.push(Diagnostic::error(
                    A_ILLEGAL,
                    path,
                    format!("asset path `{asset}` must be relative and must not contain `..`"),
                ));
                continue;
            }
            let class = asset.media_class();
            if class.is_none() || class != wanted {
                let found = class.map_or("an unknown type".to_string(), |c| format!("{c}"));
                let want = wanted.map_or("?", MediaClass::as_str);
                diags.push(Diagnostic::error(
                    A_CLASS,
                    path,
                    format!("asset `{asset}` is {found}, expected {want}"),
                ));
                continue;
            }
            let class = class.expect("checked above");
            let full = base_dir.join(asset.as_str());
            let meta = match fs::metadata(&full) {
                Ok(m) if m.is_file() => m,
                _ => {
                    diags.push(Diagnostic::error(
                        A_MISSING,
                        path,
                        format!("asset `{asset}` not found under {}", base_dir.display()),
                    ));
                    continue;
                }
            };
            let resolved = fs::canonicalize(&full).unwrap_or(full);
            if let Some(base) = &canonical_base {
                if !resolved.starts_with(base) {
                    diags.push(Diagnostic::error(
                        A_ILLEGAL,
                        path,
                        format!("asset `{asset}` resolves outside the package directory"),
                    ));
                    continue;
                }
            }
            table.insert(
                asset.clone(),
                AssetEntry {
                    path: resolved,
                    class,
                    byte_size: meta.len(),
                },
            );
        }
    }
    if diags.is_empty() {
        Ok(table)
    } else {
        Err(diags)
    }
}
