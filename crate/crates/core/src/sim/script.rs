//! Event scripts: JSON arrays of tagged external events.

use serde_json::{json, Value};

use crate::diag::Diagnostic;
use crate::io::reader::{as_array, Obj, P_ENUM, P_SYNTAX, P_TYPE};
use crate::io::vec3_value;
use crate::model::{EntityId, ScenePackage, Vec3};

pub const S_SCRIPT_REF: &str = "S003";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TouchPhase {
    Begin,
    End,
}

/// Input arriving from outside the scene. Controller events arrive already
/// resolved to the entity they hit.
#[derive(Debug, Clone, PartialEq)]
pub enum ExternalEvent {
    UserMove(Vec3),
    UserLook(Option<EntityId>),
    ControllerPress(EntityId),
    ControllerTouch(EntityId, TouchPhase),
    PlaceEntity(EntityId, Vec3),
    AdvanceTime(f64),
}

impl ExternalEvent {
    pub fn entity(&self) -> Option<&EntityId> {
        match self {
            ExternalEvent::UserLook(e) => e.as_ref(),
            ExternalEvent::ControllerPress(e)
            | ExternalEvent::ControllerTouch(e, _)
            | ExternalEvent::PlaceEntity(e, _) => Some(e),
            ExternalEvent::UserMove(_) | ExternalEvent::AdvanceTime(_) => None,
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            ExternalEvent::UserMove(p) => json!({"type": "user-move", "position": vec3_value(*p)}),
            ExternalEvent::UserLook(e) => {
                json!({"type": "user-look", "entity": e.as_ref().map(EntityId::as_str)})
            }
            ExternalEvent::ControllerPress(e) => {
                json!({"type": "controller-press", "entity": e.as_str()})
            }
            ExternalEvent::ControllerTouch(e, phase) => json!({
                "type": "controller-touch",
                "entity": e.as_str(),
                "phase": match phase { TouchPhase::Begin => "begin", TouchPhase::End => "end" },
            }),
            ExternalEvent::PlaceEntity(e, p) => json!({
                "type": "place-entity",
                "entity": e.as_str(),
                "position": vec3_value(*p),
            }),
            ExternalEvent::AdvanceTime(s) => {
                json!({"type": "advance-time", "seconds": crate::io::canonical::num(*s)})
            }
        }
    }
}

pub fn script_to_string(script: &[ExternalEvent]) -> String {
    crate::io::to_canonical_string(&Value::Array(
        script.iter().map(ExternalEvent::to_value).collect(),
    ))
}

pub fn parse_script(text: &str) -> Result<Vec<ExternalEvent>, Vec<Diagnostic>> {
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
    let mut diags = Vec::new();
    let Some(items) = as_array(&root, "", &mut diags) else {
        return Err(diags);
    };
    let mut out = Vec::new();
    for (i, item) in items.iter().enumerate() {
        if let Some(ev) = parse_event(item, &i.to_string(), &mut diags) {
            out.push(ev);
        }
    }
    if diags.iter().any(Diagnostic::is_error) {
        Err(diags)
    } else {
        Ok(out)
    }
}

fn parse_event(v: &Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<ExternalEvent> {
    let obj = Obj::new(v, path, diags)?;
    let ty = obj.string("type", diags)?;
    Some(match ty.as_str() {
        "user-move" => {
            obj.warn_unknown(&["type", "position"], diags);
            ExternalEvent::UserMove(obj.vec3("position", diags)?)
        }
        "user-look" => {
            obj.warn_unknown(&["type", "entity"], diags);
            ExternalEvent::UserLook(obj.opt_id("entity", diags)?)
        }
        "controller-press" => {
            obj.warn_unknown(&["type", "entity"], diags);
            ExternalEvent::ControllerPress(obj.id("entity", diags)?)
        }
        "controller-touch" => {
            obj.warn_unknown(&["type", "entity", "phase"], diags);
            let entity = obj.id("entity", diags);
            let phase = obj.string("phase", diags).and_then(|p| match p.as_str() {
                "begin" => Some(TouchPhase::Begin),
                "end" => Some(TouchPhase::End),
                other => {
                    diags.push(Diagnostic::error(
                        P_ENUM,
                        obj.at("phase"),
                        format!("unknown touch phase `{other}`"),
                    ));
                    None
                }
            });
            ExternalEvent::ControllerTouch(entity?, phase?)
        }
        "place-entity" => {
            obj.warn_unknown(&["type", "entity", "position"], diags);
            let entity = obj.id("entity", diags);
            let position = obj.vec3("position", diags);
            ExternalEvent::PlaceEntity(entity?, position?)
        }
        "advance-time" => {
            obj.warn_unknown(&["type", "seconds"], diags);
            let seconds = obj.number("seconds", diags)?;
            if seconds <= 0.0 {
                diags.push(Diagnostic::error(
                    P_TYPE,
                    obj.at("seconds"),
                    "seconds must be > 0",
                ));
                return None;
            }
            ExternalEvent::AdvanceTime(seconds)
        }
        other => {
            diags.push(Diagnostic::error(
                P_ENUM,
                obj.at("type"),
                format!("unknown event type `{other}`"),
            ));
            return None;
        }
    })
}

/// Every entity a script names must exist in the package.
pub fn check_script(script: &[ExternalEvent], pkg: &ScenePackage) -> Vec<Diagnostic> {
    script
        .iter()
        .enumerate()
        .filter_map(|(i, ev)| {
            let id = ev.entity()?;
            pkg.entity(id.as_str()).is_none().then(|| {
                Diagnostic::error(
                    S_SCRIPT_REF,
                    format!("{i}/entity"),
                    format!("`{id}` is not an entity of the package"),
                )
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_event_types() {
        let text = r#"[
            {"type":"user-move","position":{"x":0,"y":1.6,"z":0}},
            {"type":"user-look","entity":null},
            {"type":"user-look","entity":"Fridge"},
            {"type":"controller-press","entity":"Box1"},
            {"type":"controller-touch","entity":"Box1","phase":"end"},
            {"type":"place-entity","entity":"Box1","position":{"x":1,"y":0,"z":1}},
            {"type":"advance-time","seconds":0.5}
        ]"#;
        let script = parse_script(text).unwrap();
        assert_eq!(script.len(), 7);
        assert_eq!(parse_script(&script_to_string(&script)).unwrap(), script);
    }

    #[test]
    fn rejects_bad_events() {
        let err =
            parse_script(r#"[{"type":"jump"},{"type":"advance-time","seconds":0}]"#).unwrap_err();
        let codes: Vec<_> = err.iter().map(|d| (d.code, d.path.as_str())).collect();
        assert_eq!(codes, [("P004", "0/type"), ("P003", "1/seconds")]);
        assert_eq!(parse_script("[").unwrap_err()[0].code, "P001");
    }

    #[test]
    fn unknown_entities() {
        let script = vec![ExternalEvent::ControllerPress(
            EntityId::new("Ghost").unwrap(),
        )];
        let diags = check_script(&script, &ScenePackage::default());
        assert_eq!(diags[0].code, "S003");
        assert_eq!(diags[0].path, "0/entity");
    }
}
