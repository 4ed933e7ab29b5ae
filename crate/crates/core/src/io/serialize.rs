use serde_json::{json, Map, Value};

use super::canonical::{num, to_canonical_string};
use crate::model::*;

pub fn serialize_canonical(pkg: &ScenePackage) -> String {
    to_canonical_string(&package_value(pkg))
}

pub fn package_value(pkg: &ScenePackage) -> Value {
    json!({
        "formatVersion": pkg.format_version,
        "settings": {
            "skyColor": pkg.settings.sky_color.hex(),
            "userStart": vec3_value(pkg.settings.user_start),
            "runtimeUrl": pkg.settings.runtime_url,
        },
        "entities": pkg.entities.iter().map(entity_value).collect::<Vec<_>>(),
        "interactions": pkg.interactions.iter().map(interaction_value).collect::<Vec<_>>(),
        "tasks": pkg.tasks.iter().map(task_value).collect::<Vec<_>>(),
        "patternsApplied": pkg.patterns_applied.iter().map(|a| json!({
            "pattern": a.pattern,
            "ordinal": a.ordinal,
            "bindings": a.bindings.iter()
                .map(|(k, v)| (k.clone(), Value::from(v.as_str())))
                .collect::<Map<_, _>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn vec3_value(v: Vec3) -> Value {
    json!({"x": num(v.x), "y": num(v.y), "z": num(v.z)})
}

pub fn literal_value(lit: &Literal) -> Value {
    match lit {
        Literal::Bool(b) => Value::Bool(*b),
        Literal::Number(n) => num(*n),
        Literal::Text(t) => Value::String(t.clone()),
        Literal::Vec3(v) => vec3_value(*v),
    }
}

fn entity_value(e: &Entity) -> Value {
    let mut m = Map::new();
    m.insert("id".into(), e.id.as_str().into());
    m.insert("kind".into(), e.kind().as_str().into());
    m.insert("name".into(), e.name.clone().into());
    m.insert("position".into(), vec3_value(e.position));
    m.insert("rotation".into(), vec3_value(e.rotation));
    m.insert("scale".into(), vec3_value(e.scale));
    m.insert("visible".into(), e.visible.into());
    if let Some(c) = e.color {
        m.insert("color".into(), c.hex().into());
    }
    if let Some(t) = &e.texture {
        m.insert("texture".into(), t.as_str().into());
    }
    m.insert("shadow".into(), e.shadow.into());
    m.insert("physics".into(), e.physics.as_str().into());
    let mut put = |k: &str, v: Value| {
        m.insert(k.to_string(), v);
    };
    match &e.body {
        EntityBody::Box {
            width,
            height,
            depth,
        } => {
            put("width", num(*width));
            put("height", num(*height));
            put("depth", num(*depth));
        }
        EntityBody::Cylinder { radius, height } => {
            put("radius", num(*radius));
            put("height", num(*height));
        }
        EntityBody::Sphere { radius } => put("radius", num(*radius)),
        EntityBody::Plane { width, height } => {
            put("width", num(*width));
            put("height", num(*height));
        }
        EntityBody::Model { src } => put("src", src.as_str().into()),
        EntityBody::Image { src, width, height } => {
            put("src", src.as_str().into());
            put("width", num(*width));
            put("height", num(*height));
        }
        EntityBody::Video {
            src,
            width,
            height,
            duration_seconds,
        } => {
            put("src", src.as_str().into());
            put("width", num(*width));
            put("height", num(*height));
            put("durationSeconds", num(*duration_seconds));
        }
        EntityBody::Pdf {
            src,
            page_count,
            current_page,
        } => {
            put("src", src.as_str().into());
            put("pageCount", (*page_count).into());
            put("currentPage", (*current_page).into());
        }
        EntityBody::Button | EntityBody::Taskbar => {}
        EntityBody::Counter { target, current } => {
            put("target", (*target).into());
            put("current", (*current).into());
        }
        EntityBody::PressurePlate {
            width,
            depth,
            occupied,
        } => {
            put("width", num(*width));
            put("depth", num(*depth));
            put("occupied", (*occupied).into());
        }
        EntityBody::Navmesh { cells } => put(
            "cells",
            cells
                .iter()
                .map(|c| {
                    json!({"minX": num(c.min_x), "minZ": num(c.min_z),
                           "maxX": num(c.max_x), "maxZ": num(c.max_z)})
                })
                .collect(),
        ),
        EntityBody::Area {
            size,
            linked_activity,
        } => {
            put("size", vec3_value(*size));
            if let Some(a) = linked_activity {
                put("linkedActivity", a.as_str().into());
            }
        }
    }
    Value::Object(m)
}

fn interaction_value(i: &Interaction) -> Value {
    json!({
        "id": i.id.as_str(),
        "source": i.source.as_str(),
        "event": i.event.as_str(),
        "target": i.target.as_str(),
        "effect": i.effect.as_str(),
        "params": i.params.iter()
            .map(|(k, v)| (k.clone(), literal_value(v)))
            .collect::<Map<_, _>>(),
        "conditions": i.conditions.iter().map(condition_value).collect::<Vec<_>>(),
    })
}

fn condition_value(c: &Condition) -> Value {
    match c {
        Condition::Attribute {
            entity,
            attribute,
            op,
            value,
        } => json!({
            "type": "attribute",
            "entity": entity.as_str(),
            "attribute": attribute.as_str(),
            "op": op.as_str(),
            "value": literal_value(value),
        }),
        Condition::InArea { entity, area } => json!({
            "type": "in-area",
            "entity": entity.as_str(),
            "area": area.as_str(),
        }),
    }
}

fn task_value(t: &Task) -> Value {
    json!({
        "id": t.id.as_str(),
        "name": t.name,
        "description": t.description,
        "activities": t.activities.iter().map(activity_value).collect::<Vec<_>>(),
    })
}

fn activity_value(a: &Activity) -> Value {
    let mut m = Map::new();
    m.insert("id".into(), a.id.as_str().into());
    m.insert("name".into(), a.name.clone().into());
    m.insert("description".into(), a.description.clone().into());
    m.insert("type".into(), a.kind.as_str().into());
    if let Some(area) = a.kind.area() {
        m.insert("area".into(), area.as_str().into());
    }
    if let Some(entity) = a.kind.entity() {
        m.insert("entity".into(), entity.as_str().into());
    }
    Value::Object(m)
}
