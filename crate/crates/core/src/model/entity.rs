use std::fmt;

use super::{Color, EntityId, EntityKind, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MediaClass {
    Image,
    Video,
    Pdf,
    Model,
}

impl MediaClass {
    pub fn as_str(self) -> &'static str {
        match self {
            MediaClass::Image => "image",
            MediaClass::Video => "video",
            MediaClass::Pdf => "pdf",
            MediaClass::Model => "model",
        }
    }

    pub fn from_extension(ext: &str) -> Option<MediaClass> {
        match ext.to_ascii_lowercase().as_str() {
            "png" | "jpg" | "jpeg" => Some(MediaClass::Image),
            "mp4" | "webm" => Some(MediaClass::Video),
            "pdf" => Some(MediaClass::Pdf),
            "gltf" | "glb" => Some(MediaClass::Model),
            _ => None,
        }
    }
}

impl fmt::Display for MediaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Relative path of an asset, resolved against the package directory.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AssetRef(String);

impl AssetRef {
    pub fn new(path: impl Into<String>) -> Self {
        AssetRef(path.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn extension(&self) -> Option<&str> {
        let file = self.0.rsplit('/').next()?;
        let (stem, ext) = file.rsplit_once('.')?;
        (!stem.is_empty()).then_some(ext)
    }

    /// Class derived from the extension, if the extension is known.
    pub fn media_class(&self) -> Option<MediaClass> {
        self.extension().and_then(MediaClass::from_extension)
    }

    /// Absolute paths, backslashes and `..` segments are all rejected.
    pub fn is_traversal_free(&self) -> bool {
        let p = &self.0;
        !p.is_empty()
            && !p.starts_with('/')
            && !p.contains('\\')
            && !p.contains(':')
            && p.split('/').all(|seg| seg != ".." && !seg.is_empty())
    }
}

impl fmt::Display for AssetRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Physics {
    #[default]
    None,
    Static,
}

impl Physics {
    pub fn as_str(self) -> &'static str {
        match self {
            Physics::None => "none",
            Physics::Static => "static",
        }
    }
}

/// Walkable XZ rectangle of a navigation mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NavCell {
    pub min_x: f64,
    pub min_z: f64,
    pub max_x: f64,
    pub max_z: f64,
}

/// Kind-specific parameters. The variant determines the entity kind.
#[derive(Debug, Clone, PartialEq)]
pub enum EntityBody {
    Box {
        width: f64,
        height: f64,
        depth: f64,
    },
    Cylinder {
        radius: f64,
        height: f64,
    },
    Sphere {
        radius: f64,
    },
    Plane {
        width: f64,
        height: f64,
    },
    Model {
        src: AssetRef,
    },
    Image {
        src: AssetRef,
        width: f64,
        height: f64,
    },
    Video {
        src: AssetRef,
        width: f64,
        height: f64,
        duration_seconds: f64,
    },
    Pdf {
        src: AssetRef,
        page_count: u32,
        current_page: u32,
    },
    Button,
    Counter {
        target: u32,
        current: u32,
    },
    PressurePlate {
        width: f64,
        depth: f64,
        occupied: bool,
    },
    Taskbar,
    Navmesh {
        cells: Vec<NavCell>,
    },
    Area {
        size: Vec3,
        linked_activity: Option<EntityId>,
    },
}

impl EntityBody {
    pub fn kind(&self) -> EntityKind {
        match self {
            EntityBody::Box { .. } => EntityKind::Box,
            EntityBody::Cylinder { .. } => EntityKind::Cylinder,
            EntityBody::Sphere { .. } => EntityKind::Sphere,
            EntityBody::Plane { .. } => EntityKind::Plane,
            EntityBody::Model { .. } => EntityKind::Model,
            EntityBody::Image { .. } => EntityKind::Image,
            EntityBody::Video { .. } => EntityKind::Video,
            EntityBody::Pdf { .. } => EntityKind::Pdf,
            EntityBody::Button => EntityKind::Button,
            EntityBody::Counter { .. } => EntityKind::Counter,
            EntityBody::PressurePlate { .. } => EntityKind::PressurePlate,
            EntityBody::Taskbar => EntityKind::Taskbar,
            EntityBody::Navmesh { .. } => EntityKind::Navmesh,
            EntityBody::Area { .. } => EntityKind::Area,
        }
    }

    pub fn default_for(kind: EntityKind) -> EntityBody {
        let src = || AssetRef::new("");
        match kind {
            EntityKind::Box => EntityBody::Box {
                width: 1.0,
                height: 1.0,
                depth: 1.0,
            },
            EntityKind::Cylinder => EntityBody::Cylinder {
                radius: 0.5,
                height: 1.0,
            },
            EntityKind::Sphere => EntityBody::Sphere { radius: 0.5 },
            EntityKind::Plane => EntityBody::Plane {
                width: 1.0,
                height: 1.0,
            },
            EntityKind::Model => EntityBody::Model { src: src() },
            EntityKind::Image => EntityBody::Image {
                src: src(),
                width: 1.0,
                height: 1.0,
            },
            EntityKind::Video => EntityBody::Video {
                src: src(),
                width: 1.6,
                height: 0.9,
                duration_seconds: 1.0,
            },
            EntityKind::Pdf => EntityBody::Pdf {
                src: src(),
                page_count: 1,
                current_page: 1,
            },
            EntityKind::Button => EntityBody::Button,
            EntityKind::Counter => EntityBody::Counter {
                target: 1,
                current: 0,
            },
            EntityKind::PressurePlate => EntityBody::PressurePlate {
                width: 1.0,
                depth: 1.0,
                occupied: false,
            },
            EntityKind::Taskbar => EntityBody::Taskbar,
            EntityKind::Navmesh => EntityBody::Navmesh { cells: Vec::new() },
            EntityKind::Area => EntityBody::Area {
                size: Vec3::ONE,
                linked_activity: None,
            },
        }
    }

    /// The asset this body renders, if any.
    pub fn src(&self) -> Option<&AssetRef> {
        match self {
            EntityBody::Model { src }
            | EntityBody::Image { src, .. }
            | EntityBody::Video { src, .. }
            | EntityBody::Pdf { src, .. } => Some(src),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entity {
    pub id: EntityId,
    pub name: String,
    pub position: Vec3,
    pub rotation: Vec3,
    pub scale: Vec3,
    pub visible: bool,
    pub color: Option<Color>,
    pub texture: Option<AssetRef>,
    pub shadow: bool,
    pub physics: Physics,
    pub body: EntityBody,
}

impl Entity {
    pub fn kind(&self) -> EntityKind {
        self.body.kind()
    }

    /// Asset references in the order `src`, `texture`, with their field names.
    pub fn asset_refs(&self) -> Vec<(&'static str, &AssetRef)> {
        let mut refs = Vec::new();
        if let Some(src) = self.body.src() {
            refs.push(("src", src));
        }
        if let Some(tex) = &self.texture {
            refs.push(("texture", tex));
        }
        refs
    }

    /// Color the scene shows: authored color, white when unset.
    pub fn effective_color(&self) -> Option<Color> {
        self.kind()
            .is_color_bearing()
            .then(|| self.color.unwrap_or(Color::WHITE))
    }
}

/// A fresh entity at the origin with the kind's default parameters.
pub fn default_entity(kind: EntityKind, id: EntityId) -> Entity {
    Entity {
        name: id.as_str().to_string(),
        id,
        position: Vec3::ZERO,
        rotation: Vec3::ZERO,
        scale: Vec3::ONE,
        visible: true,
        color: None,
        texture: None,
        shadow: false,
        physics: Physics::None,
        body: EntityBody::default_for(kind),
    }
}
