use std::collections::BTreeMap;

use serde_json::Value;

use super::reader::*;
use crate::diag::{has_errors, Diagnostic};
use crate::model::*;

/// A successfully parsed package plus any warnings (unknown keys).
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub package: ScenePackage,
    pub warnings: Vec<Diagnostic>,
}

const TOP_KEYS: &[&str] = &[
    "formatVersion",
    "settings",
    "entities",
    "interactions",
    "tasks",
    "patternsApplied",
];
const SETTINGS_KEYS: &[&str] = &["skyColor", "userStart", "runtimeUrl"];
const ENTITY_COMMON_KEYS: &[&str] = &[
    "id", "kind", "name", "position", "rotation", "scale", "visible", "color", "texture", "shadow",
    "physics",
];
const INTERACTION_KEYS: &[&str] = &[
    "id",
    "source",
    "event",
    "target",
    "effect",
    "params",
    "conditions",
];
const TASK_KEYS: &[&str] = &["id", "name", "description", "activities"];
const CELL_KEYS: &[&str] = &["minX", "minZ", "maxX", "maxZ"];

fn kind_keys(kind: EntityKind) -> &'static [&'static str] {
    match kind {
        EntityKind::Box => &["width", "height", "depth"],
        EntityKind::Cylinder => &["radius", "height"],
        EntityKind::Sphere => &["radius"],
        EntityKind::Plane => &["width", "height"],
        EntityKind::Model => &["src"],
        EntityKind::Image => &["src", "width", "height"],
        EntityKind::Video => &["src", "width", "height", "durationSeconds"],
        EntityKind::Pdf => &["src", "pageCount", "currentPage"],
        EntityKind::Button | EntityKind::Taskbar => &[],
        EntityKind::Counter => &["target", "current"],
        EntityKind::PressurePlate => &["width", "depth", "occupied"],
        EntityKind::Navmesh => &["cells"],
        EntityKind::Area => &["size", "linkedActivity"],
    }
}

/// Parses a package document. On failure the list holds at least one error;
/// warnings found along the way are kept in document order.
pub fn parse_package(text: &str) -> Result<Parsed, Vec<Diagnostic>> {
    let root: Value = serde_json::from_str(text).map_err(|e| {
        vec![Diagnostic::error(
            P_SYNTAX,
            "",
            format!(
                "malformed JSON at line {} column {}: {e}",
                e.line(),
                e.column()
            ),
        )]
    })?;
    parse_package_value(&root)
}

pub fn parse_package_value(root: &Value) -> Result<Parsed, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let Some(top) = Obj::new(root, "", &mut diags) else {
        return Err(diags);
    };
    match top.uint("formatVersion", &mut diags) {
        Some(FORMAT_VERSION) => {}
        Some(other) => {
            return Err(vec![Diagnostic::error(
                P_VERSION,
                "formatVersion",
                format!("unsupported formatVersion {other} (expected {FORMAT_VERSION})"),
            )])
        }
        None => return Err(diags),
    }
    top.warn_unknown(TOP_KEYS, &mut diags);

    let settings = match top.get("settings") {
        None => Some(Settings::default()),
        Some(v) => parse_settings(v, "settings", &mut diags),
    };
    let entities = parse_list(&top, "entities", &mut diags, parse_entity);
    let interactions = parse_list(&top, "interactions", &mut diags, parse_interaction);
    let tasks = parse_list(&top, "tasks", &mut diags, parse_task);
    let patterns_applied = match top.array_or_empty("patternsApplied", &mut diags) {
        Some(items) => collect(items, "patternsApplied", &mut diags, parse_application),
        None => None,
    };

    if has_errors(&diags) {
        return Err(diags);
    }
    match (settings, entities, interactions, tasks, patterns_applied) {
        (
            Some(settings),
            Some(entities),
            Some(interactions),
            Some(tasks),
            Some(patterns_applied),
        ) => Ok(Parsed {
            package: ScenePackage {
                format_version: FORMAT_VERSION,
                settings,
                entities,
                interactions,
                tasks,
                patterns_applied,
            },
            warnings: diags,
        }),
        _ => unreachable!("a missing section always records an error"),
    }
}

type ItemParser<T> = fn(&Value, &str, &mut Vec<Diagnostic>) -> Option<T>;

fn parse_list<T>(
    top: &Obj<'_>,
    key: &str,
    diags: &mut Vec<Diagnostic>,
    item: ItemParser<T>,
) -> Option<Vec<T>> {
    let items = top.array(key, diags)?;
    collect(items, key, diags, item)
}

fn collect<T>(
    items: &[Value],
    path: &str,
    diags: &mut Vec<Diagnostic>,
    item: ItemParser<T>,
) -> Option<Vec<T>> {
    let mut out = Vec::with_capacity(items.len());
    let mut ok = true;
    for (i, v) in items.iter().enumerate() {
        match item(v, &join(path, i), diags) {
            Some(x) => out.push(x),
            None => ok = false,
        }
    }
    ok.then_some(out)
}

fn parse_settings(v: &Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<Settings> {
    let obj = Obj::new(v, path, diags)?;
    obj.warn_unknown(SETTINGS_KEYS, diags);
    let defaults = Settings::default();
    let sky_color = match obj.get("skyColor") {
        None => Some(defaults.sky_color),
        Some(c) => as_color(c, &obj.at("skyColor"), diags),
    };
    let user_start = obj.vec3_or("userStart", defaults.user_start, diags);
    let runtime_url = obj
        .string_or("runtimeUrl", &defaults.runtime_url, diags)
        .and_then(|url| {
            if url.is_empty() {
                diags.push(Diagnostic::error(
                    P_TYPE,
                    obj.at("runtimeUrl"),
                    "runtimeUrl must not be empty",
                ));
                None
            } else {
                Some(url)
            }
        });
    Some(Settings {
        sky_color: sky_color?,
        user_start: user_start?,
        runtime_url: runtime_url?,
    })
}

fn parse_entity(v: &Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<Entity> {
    let obj = Obj::new(v, path, diags)?;
    let kind: Option<EntityKind> = obj.enumeration("kind", "entity kind", diags);
    if let Some(kind) = kind {
        let allowed: Vec<&str> = ENTITY_COMMON_KEYS
            .iter()
            .chain(kind_keys(kind))
            .copied()
            .collect();
        obj.warn_unknown(&allowed, diags);
    }
    let id = obj.id("id", diags);
    let name = match &id {
        Some(id) => obj.string_or("name", id.as_str(), diags),
        None => obj.string_or("name", "", diags),
    };
    let position = obj.vec3_or("position", Vec3::ZERO, diags);
    let rotation = obj.vec3_or("rotation", Vec3::ZERO, diags);
    let scale = obj.vec3_or("scale", Vec3::ONE, diags);
    let visible = obj.bool_or("visible", true, diags);
    let color = obj.opt_color("color", diags);
    let texture = match obj.get("texture") {
        None | Some(Value::Null) => Some(None),
        Some(t) => as_string(t, &obj.at("texture"), diags).map(|s| Some(AssetRef::new(s))),
    };
    let shadow = obj.bool_or("shadow", false, diags);
    let physics = match obj.get("physics") {
        None => Some(Physics::None),
        Some(p) => as_string(p, &obj.at("physics"), diags).and_then(|s| match s.as_str() {
            "none" => Some(Physics::None),
            "static" => Some(Physics::Static),
            _ => {
                diags.push(Diagnostic::error(
                    P_ENUM,
                    obj.at("physics"),
                    format!("unknown physics mode `{s}`"),
                ));
                None
            }
        }),
    };
    let body = parse_body(&obj, kind?, diags);
    Some(Entity {
        id: id?,
        name: name?,
        position: position?,
        rotation: rotation?,
        scale: scale?,
        visible: visible?,
        color: color?,
        texture: texture?,
        shadow: shadow?,
        physics: physics?,
        body: body?,
    })
}

fn parse_body(obj: &Obj<'_>, kind: EntityKind, diags: &mut Vec<Diagnostic>) -> Option<EntityBody> {
    let src = |diags: &mut Vec<Diagnostic>| obj.string("src", diags).map(AssetRef::new);
    Some(match kind {
        EntityKind::Box => {
            let w = obj.number_or("width", 1.0, diags);
            let h = obj.number_or("height", 1.0, diags);
            let d = obj.number_or("depth", 1.0, diags);
            EntityBody::Box {
                width: w?,
                height: h?,
                depth: d?,
            }
        }
        EntityKind::Cylinder => {
            let r = obj.number_or("radius", 0.5, diags);
            let h = obj.number_or("height", 1.0, diags);
            EntityBody::Cylinder {
                radius: r?,
                height: h?,
            }
        }
        EntityKind::Sphere => EntityBody::Sphere {
            radius: obj.number_or("radius", 0.5, diags)?,
        },
        EntityKind::Plane => {
            let w = obj.number_or("width", 1.0, diags);
            let h = obj.number_or("height", 1.0, diags);
            EntityBody::Plane {
                width: w?,
                height: h?,
            }
        }
        EntityKind::Model => EntityBody::Model { src: src(diags)? },
        EntityKind::Image => {
            let s = src(diags);
            let w = obj.number_or("width", 1.0, diags);
            let h = obj.number_or("height", 1.0, diags);
            EntityBody::Image {
                src: s?,
                width: w?,
                height: h?,
            }
        }
        EntityKind::Video => {
            let s = src(diags);
            let w = obj.number_or("width", 1.6, diags);
            let h = obj.number_or("height", 0.9, diags);
            let dur = obj.number("durationSeconds", diags);
            EntityBody::Video {
                src: s?,
                width: w?,
                height: h?,
                duration_seconds: dur?,
            }
        }
        EntityKind::Pdf => {
            let s = src(diags);
            let pages = obj.uint("pageCount", diags);
            let current = obj.uint_or("currentPage", 1, diags);
            EntityBody::Pdf {
                src: s?,
                page_count: pages?,
                current_page: current?,
            }
        }
        EntityKind::Button => EntityBody::Button,
        EntityKind::Counter => {
            let target = obj.uint_or("target", 1, diags);
            let current = obj.uint_or("current", 0, diags);
            EntityBody::Counter {
                target: target?,
                current: current?,
            }
        }
        EntityKind::PressurePlate => {
            let w = obj.number_or("width", 1.0, diags);
            let d = obj.number_or("depth", 1.0, diags);
            let occ = obj.bool_or("occupied", false, diags);
            EntityBody::PressurePlate {
                width: w?,
                depth: d?,
                occupied: occ?,
            }
        }
        EntityKind::Taskbar => EntityBody::Taskbar,
        EntityKind::Navmesh => {
            let items = obj.array("cells", diags)?;
            EntityBody::Navmesh {
                cells: collect(items, &obj.at("cells"), diags, parse_cell)?,
            }
        }
        EntityKind::Area => {
            let size = obj.vec3_or("size", Vec3::ONE, diags);
            let linked = obj.opt_id("linkedActivity", diags);
            EntityBody::Area {
                size: size?,
                linked_activity: linked?,
            }
        }
    })
}

fn parse_cell(v: &Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<NavCell> {
    let obj = Obj::new(v, path, diags)?;
    obj.warn_unknown(CELL_KEYS, diags);
    let min_x = obj.number("minX", diags);
    let min_z = obj.number("minZ", diags);
    let max_x = obj.number("maxX", diags);
    let max_z = obj.number("maxZ", diags);
    Some(NavCell {
        min_x: min_x?,
        min_z: min_z?,
        max_x: max_x?,
        max_z: max_z?,
    })
}

fn parse_interaction(v: &Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<Interaction> {
    let obj = Obj::new(v, path, diags)?;
    obj.warn_unknown(INTERACTION_KEYS, diags);
    let id = obj.id("id", diags);
    let source = obj.id("source", diags);
    let event = obj.enumeration("event", "event", diags);
    let target = obj.id("target", diags);
    let effect = obj.enumeration("effect", "effect", diags);
    let params = match obj.get("params") {
        None => Some(BTreeMap::new()),
        Some(p) => parse_params(p, &obj.at("params"), diags),
    };
    let conditions = obj
        .array_or_empty("conditions", diags)
        .and_then(|items| collect(items, &obj.at("conditions"), diags, parse_condition));
    Some(Interaction {
        id: id?,
        source: source?,
        event: event?,
        target: target?,
        effect: effect?,
        params: params?,
        conditions: conditions?,
    })
}

fn parse_params(
    v: &Value,
    path: &str,
    diags: &mut Vec<Diagnostic>,
) -> Option<BTreeMap<String, Literal>> {
    let obj = Obj::new(v, path, diags)?;
    let mut out = BTreeMap::new();
    let mut ok = true;
    for (key, value) in obj.map {
        match as_literal(value, &obj.at(key), diags) {
            Some(lit) => {
                out.insert(key.clone(), lit);
            }
            None => ok = false,
        }
    }
    ok.then_some(out)
}

fn parse_condition(v: &Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<Condition> {
    let obj = Obj::new(v, path, diags)?;
    let ty = obj.string("type", diags)?;
    match ty.as_str() {
        "attribute" => {
            obj.warn_unknown(&["type", "entity", "attribute", "op", "value"], diags);
            let entity = obj.id("entity", diags);
            let attribute = obj.enumeration("attribute", "attribute", diags);
            let op = obj.enumeration("op", "operator", diags);
            let value = obj
                .required("value", diags)
                .and_then(|lit| as_literal(lit, &obj.at("value"), diags));
            Some(Condition::Attribute {
                entity: entity?,
                attribute: attribute?,
                op: op?,
                value: value?,
            })
        }
        "in-area" => {
            obj.warn_unknown(&["type", "entity", "area"], diags);
            let entity = obj.id("entity", diags);
            let area = obj.id("area", diags);
            Some(Condition::InArea {
                entity: entity?,
                area: area?,
            })
        }
        other => {
            diags.push(Diagnostic::error(
                P_ENUM,
                obj.at("type"),
                format!("unknown condition type `{other}`"),
            ));
            None
        }
    }
}

fn parse_task(v: &Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<Task> {
    let obj = Obj::new(v, path, diags)?;
    obj.warn_unknown(TASK_KEYS, diags);
    let id = obj.id("id", diags);
    let name = obj.string_or("name", id.as_ref().map_or("", EntityId::as_str), diags);
    let description = obj.string_or("description", "", diags);
    let activities = obj
        .array("activities", diags)
        .and_then(|items| collect(items, &obj.at("activities"), diags, parse_activity));
    Some(Task {
        id: id?,
        name: name?,
        description: description?,
        activities: activities?,
    })
}

fn parse_activity(v: &Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<Activity> {
    let obj = Obj::new(v, path, diags)?;
    let id = obj.id("id", diags);
    let name = obj.string_or("name", id.as_ref().map_or("", EntityId::as_str), diags);
    let description = obj.string_or("description", "", diags);
    let ty = obj.string("type", diags)?;
    let common = ["id", "name", "description", "type"];
    let kind = match ty.as_str() {
        "enter-area" => {
            obj.warn_unknown(&[&common[..], &["area"]].concat(), diags);
            obj.id("area", diags)
                .map(|area| ActivityType::EnterArea { area })
        }
        "place-in-area" => {
            obj.warn_unknown(&[&common[..], &["entity", "area"]].concat(), diags);
            let entity = obj.id("entity", diags);
            let area = obj.id("area", diags);
            entity
                .zip(area)
                .map(|(entity, area)| ActivityType::PlaceInArea { entity, area })
        }
        "look-at" => {
            obj.warn_unknown(&[&common[..], &["entity"]].concat(), diags);
            obj.id("entity", diags)
                .map(|entity| ActivityType::LookAt { entity })
        }
        "complete-media" => {
            obj.warn_unknown(&[&common[..], &["entity"]].concat(), diags);
            obj.id("entity", diags)
                .map(|entity| ActivityType::CompleteMedia { entity })
        }
        other => {
            diags.push(Diagnostic::error(
                P_ENUM,
                obj.at("type"),
                format!("unknown activity type `{other}`"),
            ));
            None
        }
    };
    Some(Activity {
        id: id?,
        name: name?,
        description: description?,
        kind: kind?,
    })
}

fn parse_application(
    v: &Value,
    path: &str,
    diags: &mut Vec<Diagnostic>,
) -> Option<PatternApplication> {
    let obj = Obj::new(v, path, diags)?;
    obj.warn_unknown(&["pattern", "ordinal", "bindings"], diags);
    let pattern = obj.string("pattern", diags);
    let ordinal = obj.uint("ordinal", diags);
    let bindings = obj.required("bindings", diags).and_then(|b| {
        let bobj = Obj::new(b, &obj.at("bindings"), diags)?;
        let mut out = BTreeMap::new();
        let mut ok = true;
        for (slot, target) in bobj.map {
            let p = bobj.at(slot);
            match as_string(target, &p, diags).and_then(|t| as_id(&t, &p, diags)) {
                Some(id) => {
                    out.insert(slot.clone(), id);
                }
                None => ok = false,
            }
        }
        ok.then_some(out)
    });
    Some(PatternApplication {
        pattern: pattern?,
        ordinal: ordinal?,
        bindings: bindings?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes(r: Result<Parsed, Vec<Diagnostic>>) -> Vec<(&'static str, String)> {
        r.unwrap_err()
            .into_iter()
            .filter(Diagnostic::is_error)
            .map(|d| (d.code, d.path))
            .collect()
    }

    #[test]
    fn minimal_document() {
        let p = parse_package(r#"{"formatVersion":1,"entities":[],"interactions":[],"tasks":[]}"#)
            .unwrap();
        assert_eq!(p.package, ScenePackage::default());
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn version_gate() {
        assert_eq!(
            codes(parse_package(
                r#"{"formatVersion":99,"entities":[],"interactions":[],"tasks":[]}"#
            )),
            vec![("P002", "formatVersion".to_string())]
        );
    }

    #[test]
    fn malformed_syntax() {
        assert_eq!(
            codes(parse_package("{\"formatVersion\":")),
            vec![("P001", String::new())]
        );
    }

    #[test]
    fn unknown_enum_and_type_errors() {
        let text = r#"{"formatVersion":1,"entities":[
            {"id":"B","kind":"geometry.cone"},
            {"id":"C","kind":"geometry.box","width":"wide"}
        ],"interactions":[
            {"id":"I","source":"B","event":"squeeze","target":"B","effect":"play"}
        ],"tasks":[]}"#;
        assert_eq!(
            codes(parse_package(text)),
            vec![
                ("P004", "entities/0/kind".to_string()),
                ("P003", "entities/1/width".to_string()),
                ("P004", "interactions/0/event".to_string()),
            ]
        );
    }

    #[test]
    fn unknown_keys_warn() {
        let text = r#"{"formatVersion":1,"editorCamera":{},"entities":[
            {"id":"B","kind":"geometry.box","radius":2}],"interactions":[],"tasks":[]}"#;
        let p = parse_package(text).unwrap();
        let warned: Vec<_> = p
            .warnings
            .iter()
            .map(|d| (d.code, d.path.as_str()))
            .collect();
        assert_eq!(
            warned,
            [("P005", "editorCamera"), ("P005", "entities/0/radius")]
        );
    }

    #[test]
    fn missing_required_and_bad_id() {
        let text = r#"{"formatVersion":1,"entities":[{"kind":"media.pdf","id":"9x","src":"a.pdf"}],
            "interactions":[],"tasks":[]}"#;
        assert_eq!(
            codes(parse_package(text)),
            vec![
                ("P003", "entities/0/id".to_string()),
                ("P003", "entities/0/pageCount".to_string()),
            ]
        );
        assert_eq!(
            codes(parse_package(
                r#"{"formatVersion":1,"interactions":[],"tasks":[]}"#
            )),
            vec![("P003", "entities".to_string())]
        );
    }

    #[test]
    fn literals_and_conditions() {
        let text = r#"{"formatVersion":1,"entities":[{"id":"Box1","kind":"geometry.box","color":"red"}],
          "interactions":[{"id":"I1","source":"Box1","event":"press","target":"Box1","effect":"set-color",
            "params":{"color":"blue"},
            "conditions":[{"type":"attribute","entity":"Box1","attribute":"color","op":"!=","value":"red"}]}],
          "tasks":[]}"#;
        let pkg = parse_package(text).unwrap().package;
        assert_eq!(pkg.entities.len(), 1);
        assert_eq!(pkg.entities[0].color, Some(Color::from_rgb(0xff0000)));
        assert_eq!(pkg.interactions[0].conditions.len(), 1);
        assert_eq!(
            pkg.interactions[0].conditions[0],
            Condition::Attribute {
                entity: EntityId::new("Box1").unwrap(),
                attribute: Attribute::Color,
                op: CompareOp::Ne,
                value: Literal::Text("red".into()),
            }
        );
    }
}
