use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use vreud_core::generate::{generate, GenOptions};
use vreud_core::io::{parse_package, resolve_assets, serialize_canonical, AssetTable};
use vreud_core::model::{default_entity, EntityId, EntityKind, ScenePackage};
use vreud_core::patterns::{apply_delta, expand as expand_pattern, PatternInstance};
use vreud_core::sim::{check_script, parse_script, Simulation, S_CASCADE, S_INVALID_PACKAGE};
use vreud_core::validate::validate;
use vreud_core::Diagnostic;

pub const PACKAGE_FILE: &str = "scene.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Semantic = 1,
    Input = 2,
    Internal = 3,
    Abort = 4,
}

#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl Failure {
    pub fn new(exit: Exit, message: impl Into<String>) -> Self {
        Failure {
            exit,
            message: message.into(),
        }
    }

    pub fn io(what: &Path, err: std::io::Error) -> Self {
        Failure::new(Exit::Input, format!("{}: {err}", what.display()))
    }
}

type Outcome = Result<(), Failure>;

fn report(diags: &[Diagnostic]) {
    for d in diags {
        eprintln!("{d}");
    }
}

fn package_file(path: &Path) -> PathBuf {
    if path.is_dir() {
        path.join(PACKAGE_FILE)
    } else {
        path.to_path_buf()
    }
}

fn base_dir(file: &Path) -> PathBuf {
    match file.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

/// Reads and parses a package, printing warnings. Parse errors exit 2.
fn load(path: &Path) -> Result<(ScenePackage, PathBuf), Failure> {
    let file = package_file(path);
    let text = fs::read_to_string(&file).map_err(|e| Failure::io(&file, e))?;
    match parse_package(&text) {
        Ok(parsed) => {
            report(&parsed.warnings);
            Ok((parsed.package, base_dir(&file)))
        }
        Err(diags) => {
            report(&diags);
            Err(Failure::new(
                Exit::Input,
                format!("{} could not be parsed", file.display()),
            ))
        }
    }
}

/// Validation plus asset resolution. Any error exits 1.
fn check(pkg: &ScenePackage, base: &Path) -> Result<AssetTable, Failure> {
    let mut diags = validate(pkg);
    let assets = match resolve_assets(pkg, base) {
        Ok(table) => Some(table),
        Err(asset_diags) => {
            diags.extend(asset_diags);
            None
        }
    };
    report(&diags);
    match assets {
        Some(table) if !diags.iter().any(Diagnostic::is_error) => Ok(table),
        _ => Err(Failure::new(Exit::Semantic, "")),
    }
}

pub fn validate_package(path: &Path) -> Outcome {
    let (pkg, base) = load(path)?;
    check(&pkg, &base).map(|_| ())
}

fn write_atomically(out: &Path, fill: impl FnOnce(&Path) -> Outcome) -> Outcome {
    let parent = match out.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&parent).map_err(|e| Failure::io(&parent, e))?;
    let staging = tempfile::Builder::new()
        .prefix(".vreud-build-")
        .tempdir_in(&parent)
        .map_err(|e| Failure::io(&parent, e))?;
    fill(staging.path())?;
    let staged = staging.keep();
    let internal =
        |e: std::io::Error| Failure::new(Exit::Internal, format!("{}: {e}", out.display()));
    if out.exists() {
        let backup = tempfile::Builder::new()
            .prefix(".vreud-old-")
            .tempdir_in(&parent)
            .map_err(|e| Failure::io(&parent, e))?
            .keep();
        fs::remove_dir(&backup).map_err(internal)?;
        fs::rename(out, &backup).map_err(internal)?;
        if let Err(e) = fs::rename(&staged, out) {
            let _ = fs::rename(&backup, out);
            let _ = fs::remove_dir_all(&staged);
            return Err(internal(e));
        }
        let _ = fs::remove_dir_all(&backup);
    } else if let Err(e) = fs::rename(&staged, out) {
        let _ = fs::remove_dir_all(&staged);
        return Err(internal(e));
    }
    Ok(())
}

pub fn build(
    path: &Path,
    out: &Path,
    runtime_url: Option<String>,
    embed_assets: bool,
    title: String,
) -> Outcome {
    let (pkg, base) = load(path)?;
    let assets = check(&pkg, &base)?;
    let mut opts = GenOptions::for_package(&pkg);
    if let Some(url) = runtime_url {
        opts.runtime_url = url;
    }
    opts.title = title;
    opts.embed_assets = embed_assets;
    let html = generate(&pkg, &assets, &opts).map_err(|diags| {
        report(&diags);
        let exit = if diags.iter().any(|d| d.code == "G002") {
            Exit::Input
        } else {
            Exit::Semantic
        };
        Failure::new(exit, "generation failed")
    })?;
    write_atomically(out, |dir| {
        let index = dir.join("index.html");
        fs::write(&index, html).map_err(|e| Failure::io(&index, e))?;
        if !embed_assets {
            for (asset, entry) in assets.iter() {
                let dest = dir.join(asset.as_str());
                if let Some(p) = dest.parent() {
                    fs::create_dir_all(p).map_err(|e| Failure::io(p, e))?;
                }
                fs::copy(&entry.path, &dest).map_err(|e| Failure::io(&entry.path, e))?;
            }
        }
        Ok(())
    })?;
    eprintln!("built {}", out.join("index.html").display());
    Ok(())
}

pub fn simulate(path: &Path, script: Option<&Path>, trace_out: Option<&Path>) -> Outcome {
    let (pkg, _) = load(path)?;
    let diags = validate(&pkg);
    report(&diags);
    if diags.iter().any(Diagnostic::is_error) {
        return Err(Failure::new(Exit::Semantic, ""));
    }
    let events = match script {
        None => Vec::new(),
        Some(file) => {
            let text = fs::read_to_string(file).map_err(|e| Failure::io(file, e))?;
            let events = parse_script(&text).map_err(|diags| {
                report(&diags);
                Failure::new(
                    Exit::Input,
                    format!("{} could not be parsed", file.display()),
                )
            })?;
            let refs = check_script(&events, &pkg);
            if !refs.is_empty() {
                for d in &refs {
                    eprintln!("{}: {d}", file.display());
                }
                return Err(Failure::new(
                    Exit::Input,
                    format!(
                        "{} names entities the package does not declare",
                        file.display()
                    ),
                ));
            }
            events
        }
    };
    let mut sim = Simulation::new(&pkg).map_err(|a| Failure::new(Exit::Semantic, a.message))?;
    let trace = sim.run(&events);
    if let Some(file) = trace_out {
        fs::write(file, trace.to_canonical_string()).map_err(|e| Failure::io(file, e))?;
    }
    print!("{}", sim.digest());
    let _ = std::io::stdout().flush();
    match &trace.abort {
        None => Ok(()),
        Some(a) => {
            let exit = match a.code {
                S_CASCADE => Exit::Abort,
                S_INVALID_PACKAGE => Exit::Semantic,
                _ => Exit::Input,
            };
            Err(Failure::new(exit, format!("{} {}", a.code, a.message)))
        }
    }
}

pub fn expand(path: &Path, pattern: &str, bindings: &[String], out: Option<&Path>) -> Outcome {
    let (pkg, _) = load(path)?;
    let mut instance = PatternInstance::new(pattern);
    for b in bindings {
        let Some((slot, id)) = b.split_once('=') else {
            return Err(Failure::new(
                Exit::Input,
                format!("binding `{b}` is not slot=id"),
            ));
        };
        let id = EntityId::new(id).map_err(|e| Failure::new(Exit::Input, e.to_string()))?;
        instance = instance.bind(slot, id);
    }
    let expanded = expand_pattern(&instance, &pkg)
        .and_then(|delta| apply_delta(&pkg, &delta))
        .map_err(|diags| {
            report(&diags);
            Failure::new(Exit::Semantic, "")
        })?;
    let diags = validate(&expanded);
    report(&diags);
    if diags.iter().any(Diagnostic::is_error) {
        return Err(Failure::new(Exit::Semantic, "expanded package is invalid"));
    }
    let text = serialize_canonical(&expanded);
    match out {
        Some(file) => fs::write(file, text).map_err(|e| Failure::io(file, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn starter_package() -> ScenePackage {
    let id = |s: &str| EntityId::new(s).expect("starter ids are valid");
    let mut cube = default_entity(EntityKind::Box, id("Box1"));
    cube.position = vreud_core::Vec3::new(0.0, 0.5, -3.0);
    cube.color = vreud_core::Color::parse("#4cc3d9").ok();
    let mut taskbar = default_entity(EntityKind::Taskbar, id("Taskbar"));
    taskbar.position = vreud_core::Vec3::new(0.0, 2.5, -3.0);
    ScenePackage {
        entities: vec![cube, taskbar],
        ..ScenePackage::default()
    }
}

pub fn init(path: &Path) -> Outcome {
    if path.exists() {
        let empty_dir = path.is_dir()
            && fs::read_dir(path)
                .map_err(|e| Failure::io(path, e))?
                .next()
                .is_none();
        if !empty_dir {
            return Err(Failure::new(
                Exit::Input,
                format!(
                    "{} already exists and is not an empty directory",
                    path.display()
                ),
            ));
        }
    }
    fs::create_dir_all(path.join("assets")).map_err(|e| Failure::io(path, e))?;
    let file = path.join(PACKAGE_FILE);
    fs::write(&file, serialize_canonical(&starter_package())).map_err(|e| Failure::io(&file, e))?;
    eprintln!("created {}", file.display());
    Ok(())
}
