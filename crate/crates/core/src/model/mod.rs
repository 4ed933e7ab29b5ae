//! Domain types of a scene package.
//!
//! Everything in here is plain value data. Parsing and serialization live in
//! [`crate::io`]; semantic checks live in [`crate::validate`].

mod catalog;
mod color;
mod entity;
mod id;
mod interaction;
mod task;
mod vec3;

pub use catalog::{effects_for, events_for, EffectKind, EntityKind, EventKind};
pub use color::{Color, ColorParseError};
pub use entity::{default_entity, AssetRef, Entity, EntityBody, MediaClass, NavCell, Physics};
pub use id::{EntityId, InvalidId};
pub use interaction::{
    Attribute, CompareOp, Condition, Effect, EffectParamError, Interaction, Literal, ParamType,
    ValueType,
};
pub use task::{Activity, ActivityType, Task};
pub use vec3::Vec3;

use std::collections::BTreeMap;

/// The only package format version this toolchain reads and writes.
pub const FORMAT_VERSION: u32 = 1;

/// Default script include emitted by the generator.
pub const DEFAULT_RUNTIME_URL: &str = "./vreud-runtime.js";

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub sky_color: Color,
    pub user_start: Vec3,
    pub runtime_url: String,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            sky_color: Color::from_rgb(0x87ceeb),
            user_start: Vec3::new(0.0, 1.6, 0.0),
            runtime_url: DEFAULT_RUNTIME_URL.to_string(),
        }
    }
}

/// Provenance entry recorded each time a pattern is applied.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternApplication {
    pub pattern: String,
    pub ordinal: u32,
    pub bindings: BTreeMap<String, EntityId>,
}

/// Root document: entities, interactions and tasks in document order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenePackage {
    pub format_version: u32,
    pub settings: Settings,
    pub entities: Vec<Entity>,
    pub interactions: Vec<Interaction>,
    pub tasks: Vec<Task>,
    pub patterns_applied: Vec<PatternApplication>,
}

impl Default for ScenePackage {
    fn default() -> Self {
        ScenePackage {
            format_version: FORMAT_VERSION,
            settings: Settings::default(),
            entities: Vec::new(),
            interactions: Vec::new(),
            tasks: Vec::new(),
            patterns_applied: Vec::new(),
        }
    }
}

/// Category of an element in the flat id namespace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdOwner {
    Entity,
    Interaction,
    Task,
    Activity,
}

impl ScenePackage {
    pub fn entity(&self, id: &str) -> Option<&Entity> {
        self.entities.iter().find(|e| e.id.as_str() == id)
    }

    pub fn entity_mut(&mut self, id: &str) -> Option<&mut Entity> {
        self.entities.iter_mut().find(|e| e.id.as_str() == id)
    }

    pub fn kind_of(&self, id: &str) -> Option<EntityKind> {
        self.entity(id).map(Entity::kind)
    }

    pub fn activities(&self) -> impl Iterator<Item = (&Task, &Activity)> {
        self.tasks
            .iter()
            .flat_map(|t| t.activities.iter().map(move |a| (t, a)))
    }

    pub fn activity(&self, id: &str) -> Option<&Activity> {
        self.activities()
            .map(|(_, a)| a)
            .find(|a| a.id.as_str() == id)
    }

    /// Every declared id with its owner and document path, in document order.
    pub fn declared_ids(&self) -> Vec<(&EntityId, IdOwner, String)> {
        let mut out = Vec::new();
        for (i, e) in self.entities.iter().enumerate() {
            out.push((&e.id, IdOwner::Entity, format!("entities/{i}/id")));
        }
        for (i, it) in self.interactions.iter().enumerate() {
            out.push((&it.id, IdOwner::Interaction, format!("interactions/{i}/id")));
        }
        for (ti, t) in self.tasks.iter().enumerate() {
            out.push((&t.id, IdOwner::Task, format!("tasks/{ti}/id")));
            for (ai, a) in t.activities.iter().enumerate() {
                out.push((
                    &a.id,
                    IdOwner::Activity,
                    format!("tasks/{ti}/activities/{ai}/id"),
                ));
            }
        }
        out
    }

    pub fn is_id_declared(&self, id: &str) -> bool {
        self.declared_ids().iter().any(|(d, _, _)| d.as_str() == id)
    }

    pub fn navmesh(&self) -> Option<&Entity> {
        self.entities
            .iter()
            .find(|e| e.kind() == EntityKind::Navmesh)
    }
}
