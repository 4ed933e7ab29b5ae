use serde_json::{Map, Value};

use super::geometry::PLATE_TRIGGER_HEIGHT;
use crate::io::canonical::num;
use crate::io::{to_canonical_string, vec3_value};
use crate::model::{Color, Entity, EntityBody, EntityId, EntityKind, ScenePackage, Vec3};

/// Kind-specific mutable state.
#[derive(Debug, Clone, PartialEq)]
pub enum Detail {
    Plain,
    Video {
        playing: bool,
        elapsed: f64,
        duration: f64,
    },
    Pdf {
        current_page: u32,
        page_count: u32,
    },
    Counter {
        current: u32,
        target: u32,
    },
    Plate {
        width: f64,
        depth: f64,
        occupied: bool,
        user_inside: bool,
    },
    Area {
        size: Vec3,
        user_inside: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntityState {
    pub id: EntityId,
    pub kind: EntityKind,
    pub position: Vec3,
    pub rotation: Vec3,
    pub scale: Vec3,
    pub visible: bool,
    /// `Some` exactly for color-bearing kinds.
    pub color: Option<Color>,
    pub detail: Detail,
}

impl EntityState {
    pub fn from_entity(e: &Entity) -> Self {
        let detail = match &e.body {
            EntityBody::Video {
                duration_seconds, ..
            } => Detail::Video {
                playing: false,
                elapsed: 0.0,
                duration: *duration_seconds,
            },
            EntityBody::Pdf {
                page_count,
                current_page,
                ..
            } => Detail::Pdf {
                current_page: *current_page,
                page_count: *page_count,
            },
            EntityBody::Counter { target, current } => Detail::Counter {
                current: *current,
                target: *target,
            },
            EntityBody::PressurePlate {
                width,
                depth,
                occupied,
            } => Detail::Plate {
                width: *width,
                depth: *depth,
                occupied: *occupied,
                user_inside: false,
            },
            EntityBody::Area { size, .. } => Detail::Area {
                size: *size,
                user_inside: false,
            },
            _ => Detail::Plain,
        };
        EntityState {
            id: e.id.clone(),
            kind: e.kind(),
            position: e.position,
            rotation: e.rotation,
            scale: e.scale,
            visible: e.visible,
            color: e.effective_color(),
            detail,
        }
    }

    /// Trigger volume of a plate or area as (center, size).
    pub fn zone(&self) -> Option<(Vec3, Vec3)> {
        match &self.detail {
            Detail::Plate { width, depth, .. } => Some((
                Vec3::new(
                    self.position.x,
                    self.position.y + PLATE_TRIGGER_HEIGHT / 2.0,
                    self.position.z,
                ),
                Vec3::new(
                    width * self.scale.x,
                    PLATE_TRIGGER_HEIGHT,
                    depth * self.scale.z,
                ),
            )),
            Detail::Area { size, .. } => Some((self.position, size.scale_by(self.scale))),
            _ => None,
        }
    }

    pub fn user_inside(&self) -> Option<bool> {
        match self.detail {
            Detail::Plate { user_inside, .. } | Detail::Area { user_inside, .. } => {
                Some(user_inside)
            }
            _ => None,
        }
    }

    pub fn current_page(&self) -> Option<u32> {
        match self.detail {
            Detail::Pdf { current_page, .. } => Some(current_page),
            _ => None,
        }
    }

    pub fn counter(&self) -> Option<u32> {
        match self.detail {
            Detail::Counter { current, .. } => Some(current),
            _ => None,
        }
    }

    pub fn occupied(&self) -> Option<bool> {
        match self.detail {
            Detail::Plate { occupied, .. } => Some(occupied),
            _ => None,
        }
    }

    /// Observable attributes as they appear in digests, keyed by name.
    pub fn attributes(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("position".into(), vec3_value(self.position));
        m.insert("rotation".into(), vec3_value(self.rotation));
        m.insert("scale".into(), vec3_value(self.scale));
        m.insert("visible".into(), Value::Bool(self.visible));
        if let Some(c) = self.color {
            m.insert("color".into(), Value::String(c.hex()));
        }
        match &self.detail {
            Detail::Plain | Detail::Area { .. } => {}
            Detail::Video {
                playing, elapsed, ..
            } => {
                m.insert("playing".into(), Value::Bool(*playing));
                m.insert("elapsedSeconds".into(), num(*elapsed));
            }
            Detail::Pdf { current_page, .. } => {
                m.insert("currentPage".into(), Value::from(*current_page));
            }
            Detail::Counter { current, .. } => {
                m.insert("current".into(), Value::from(*current));
            }
            Detail::Plate { occupied, .. } => {
                m.insert("occupied".into(), Value::Bool(*occupied));
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UserState {
    pub position: Vec3,
    pub gaze: Option<EntityId>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Flag {
    pub id: EntityId,
    pub completed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub entities: Vec<EntityState>,
    pub user: UserState,
    /// Activities in package order across all tasks.
    pub activities: Vec<Flag>,
    pub tasks: Vec<Flag>,
    pub step: u64,
}

impl SimState {
    /// Mirrors the authored parameters. Does not validate.
    pub fn from_package(pkg: &ScenePackage) -> Self {
        SimState {
            entities: pkg.entities.iter().map(EntityState::from_entity).collect(),
            user: UserState {
                position: pkg.settings.user_start,
                gaze: None,
            },
            activities: pkg
                .activities()
                .map(|(_, a)| Flag {
                    id: a.id.clone(),
                    completed: false,
                })
                .collect(),
            tasks: pkg
                .tasks
                .iter()
                .map(|t| Flag {
                    id: t.id.clone(),
                    completed: false,
                })
                .collect(),
            step: 0,
        }
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.entities.iter().position(|e| e.id.as_str() == id)
    }

    pub fn entity(&self, id: &str) -> Option<&EntityState> {
        self.entities.iter().find(|e| e.id.as_str() == id)
    }

    pub fn entity_mut(&mut self, id: &str) -> Option<&mut EntityState> {
        self.entities.iter_mut().find(|e| e.id.as_str() == id)
    }

    pub fn activity_completed(&self, id: &str) -> Option<bool> {
        self.activities
            .iter()
            .find(|f| f.id.as_str() == id)
            .map(|f| f.completed)
    }

    pub fn task_completed(&self, id: &str) -> Option<bool> {
        self.tasks
            .iter()
            .find(|f| f.id.as_str() == id)
            .map(|f| f.completed)
    }
}

fn flags_value(flags: &[Flag]) -> Value {
    Value::Object(
        flags
            .iter()
            .map(|f| (f.id.to_string(), Value::Bool(f.completed)))
            .collect(),
    )
}

pub fn digest_value(state: &SimState) -> Value {
    let entities: Map<String, Value> = state
        .entities
        .iter()
        .map(|e| (e.id.to_string(), Value::Object(e.attributes())))
        .collect();
    let mut user = Map::new();
    user.insert("position".into(), vec3_value(state.user.position));
    let mut root = Map::new();
    root.insert("activities".into(), flags_value(&state.activities));
    root.insert("entities".into(), Value::Object(entities));
    root.insert("tasks".into(), flags_value(&state.tasks));
    root.insert("user".into(), Value::Object(user));
    Value::Object(root)
}

/// Canonical text of every observable attribute, completion flag and the user
/// position. The step counter and gaze are not part of the digest.
pub fn final_state_digest(state: &SimState) -> String {
    to_canonical_string(&digest_value(state))
}
