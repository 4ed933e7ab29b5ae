#![allow(dead_code)]

pub mod gen;

use std::fs;
use std::path::{Path, PathBuf};

use vreud_core::io::parse_package;
use vreud_core::sim::{parse_script, ExternalEvent};
use vreud_core::ScenePackage;

/// Set to rewrite golden files from the current output instead of comparing.
pub const UPDATE_ENV: &str = "VREUD_UPDATE_GOLDENS";

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn goldens() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/goldens")
}

pub fn scene_dir(name: &str) -> PathBuf {
    fixtures().join("scenes").join(name)
}

pub fn scene(name: &str) -> ScenePackage {
    let file = scene_dir(name).join("scene.json");
    let text = fs::read_to_string(&file).unwrap_or_else(|e| panic!("{}: {e}", file.display()));
    match parse_package(&text) {
        Ok(parsed) => parsed.package,
        Err(diags) => panic!("{}: {diags:?}", file.display()),
    }
}

pub fn script(name: &str) -> Vec<ExternalEvent> {
    let file = fixtures().join("scripts").join(format!("{name}.json"));
    let text = fs::read_to_string(&file).unwrap_or_else(|e| panic!("{}: {e}", file.display()));
    parse_script(&text).unwrap_or_else(|d| panic!("{}: {d:?}", file.display()))
}

/// Compares `actual` with the golden at `rel`, or rewrites it when the update
/// variable is set.
pub fn check_golden(rel: &str, actual: &str) -> Result<(), String> {
    let file = goldens().join(rel);
    if std::env::var_os(UPDATE_ENV).is_some() {
        if let Some(dir) = file.parent() {
            fs::create_dir_all(dir).map_err(|e| e.to_string())?;
        }
        fs::write(&file, actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = fs::read_to_string(&file)
        .map_err(|e| format!("{}: {e} (set {UPDATE_ENV}=1 to create)", file.display()))?;
    if expected == actual {
        return Ok(());
    }
    let line = expected
        .lines()
        .zip(actual.lines())
        .position(|(a, b)| a != b)
        .unwrap_or_else(|| expected.lines().count().min(actual.lines().count()));
    Err(format!(
        "{rel} differs at line {}: expected {:?}, got {:?}",
        line + 1,
        expected.lines().nth(line).unwrap_or("<eof>"),
        actual.lines().nth(line).unwrap_or("<eof>")
    ))
}

pub fn assert_golden(rel: &str, actual: &str) {
    if let Err(msg) = check_golden(rel, actual) {
        panic!("{msg}");
    }
}
