//! Reference decoder for the `vreud-*` component attributes the generator
//! emits. The browser runtime parses the same grammar; this side exists so
//! the grammar itself is executable and tested.

use std::collections::BTreeMap;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{
    Attribute, Color, CompareOp, Condition, Effect, EffectKind, EntityId, EventKind, Literal,
    NavCell, ParamType, ValueType, Vec3,
};

pub const EFFECT_PREFIX: &str = "vreud-effect__";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractError {
    #[error("`{0}` is not a vreud component")]
    UnknownComponent(String),
    #[error("malformed property `{0}`")]
    Malformed(String),
    #[error("unexpected key `{found}` (expected {expected})")]
    UnexpectedKey { found: String, expected: String },
    #[error("missing key `{0}`")]
    Missing(String),
    #[error("bad value `{value}` for `{key}`")]
    BadValue { key: String, value: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectSpec {
    /// The `n` in `vreud-effect__<n>`.
    pub index: usize,
    pub id: EntityId,
    pub event: EventKind,
    pub target: EntityId,
    pub effect: Effect,
    pub conditions: Vec<Condition>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ControlSpec {
    Video {
        duration: f64,
    },
    Pdf {
        src: String,
        pages: u32,
        page: u32,
    },
    Counter {
        target: u32,
        current: u32,
    },
    Plate {
        width: f64,
        depth: f64,
        occupied: bool,
    },
    Area {
        activity: Option<EntityId>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrackerSpec {
    EnterArea {
        task: EntityId,
        area: EntityId,
    },
    PlaceInArea {
        task: EntityId,
        entity: EntityId,
        area: EntityId,
    },
    LookAt {
        task: EntityId,
        entity: EntityId,
    },
    CompleteMedia {
        task: EntityId,
        entity: EntityId,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hand {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Component {
    Effect(EffectSpec),
    Control(ControlSpec),
    Tracker(TrackerSpec),
    Task { activities: Vec<EntityId> },
    Taskbar { tasks: Vec<EntityId> },
    NavmeshConstraint { cells: Vec<NavCell> },
    Controller { hand: Hand },
    Gaze,
}

/// Ordered `key: value` pairs separated by `; `.
struct Props<'a> {
    pairs: Vec<(&'a str, &'a str)>,
    next: usize,
}

impl<'a> Props<'a> {
    fn parse(text: &'a str) -> Result<Self, ContractError> {
        let mut pairs = Vec::new();
        if !text.is_empty() {
            for part in text.split("; ") {
                let (k, v) = part
                    .split_once(": ")
                    .or_else(|| part.strip_suffix(':').map(|k| (k, "")))
                    .ok_or_else(|| ContractError::Malformed(part.to_string()))?;
                if k.is_empty() || k.contains([' ', ':', ';']) {
                    return Err(ContractError::Malformed(part.to_string()));
                }
                pairs.push((k, v));
            }
        }
        Ok(Props { pairs, next: 0 })
    }

    fn peek_key(&self) -> Option<&'a str> {
        self.pairs.get(self.next).map(|(k, _)| *k)
    }

    /// The next pair, which must have key `key`.
    fn take(&mut self, key: &str) -> Result<&'a str, ContractError> {
        match self.pairs.get(self.next) {
            Some((k, v)) if *k == key => {
                self.next += 1;
                Ok(v)
            }
            Some((k, _)) => Err(ContractError::UnexpectedKey {
                found: k.to_string(),
                expected: format!("`{key}`"),
            }),
            None => Err(ContractError::Missing(key.to_string())),
        }
    }

    fn take_as<T: FromStr>(&mut self, key: &str) -> Result<T, ContractError> {
        let v = self.take(key)?;
        v.parse().map_err(|_| bad(key, v))
    }

    fn finish(self) -> Result<(), ContractError> {
        match self.pairs.get(self.next) {
            None => Ok(()),
            Some((k, _)) => Err(ContractError::UnexpectedKey {
                found: k.to_string(),
                expected: "end of attribute".into(),
            }),
        }
    }
}

fn bad(key: &str, value: &str) -> ContractError {
    ContractError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
    }
}

fn number(key: &str, text: &str) -> Result<f64, ContractError> {
    let ok = !text.is_empty()
        && text
            .bytes()
            .all(|b| b.is_ascii_digit() || b == b'-' || b == b'.');
    match text.parse::<f64>() {
        Ok(n) if ok && n.is_finite() => Ok(n),
        _ => Err(bad(key, text)),
    }
}

fn vec3(key: &str, text: &str) -> Result<Vec3, ContractError> {
    let parts: Vec<&str> = text.split(' ').collect();
    match parts[..] {
        [x, y, z] => Ok(Vec3::new(number(key, x)?, number(key, y)?, number(key, z)?)),
        _ => Err(bad(key, text)),
    }
}

fn bool_value(key: &str, text: &str) -> Result<bool, ContractError> {
    match text {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(bad(key, text)),
    }
}

fn hex_color(key: &str, text: &str) -> Result<Color, ContractError> {
    let canonical = text.len() == 7
        && text.starts_with('#')
        && text[1..]
            .bytes()
            .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b));
    if !canonical {
        return Err(bad(key, text));
    }
    Color::parse(text).map_err(|_| bad(key, text))
}

fn id(key: &str, text: &str) -> Result<EntityId, ContractError> {
    EntityId::new(text).map_err(|_| bad(key, text))
}

fn id_list(key: &str, text: &str) -> Result<Vec<EntityId>, ContractError> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(", ").map(|s| id(key, s)).collect()
}

fn literal(key: &str, ty: ValueType, text: &str) -> Result<Literal, ContractError> {
    Ok(match ty {
        ValueType::Color => Literal::Text(hex_color(key, text)?.hex()),
        ValueType::Bool => Literal::Bool(bool_value(key, text)?),
        ValueType::Number => Literal::Number(number(key, text)?),
    })
}

/// `E.attr op value` or `E in A`.
pub fn parse_condition(key: &str, text: &str) -> Result<Condition, ContractError> {
    let words: Vec<&str> = text.split(' ').collect();
    match words[..] {
        [entity, "in", area] => Ok(Condition::InArea {
            entity: id(key, entity)?,
            area: id(key, area)?,
        }),
        [subject, op, value] => {
            let (entity, attribute) = subject.split_once('.').ok_or_else(|| bad(key, text))?;
            let attribute = Attribute::from_str(attribute).map_err(|_| bad(key, text))?;
            let op = CompareOp::ALL
                .iter()
                .copied()
                .find(|o| o.mnemonic() == op)
                .ok_or_else(|| bad(key, text))?;
            if op.is_ordering() && attribute.value_type() != ValueType::Number {
                return Err(bad(key, text));
            }
            Ok(Condition::Attribute {
                entity: id(key, entity)?,
                attribute,
                op,
                value: literal(key, attribute.value_type(), value)?,
            })
        }
        _ => Err(bad(key, text)),
    }
}

fn parse_effect(index: usize, text: &str) -> Result<EffectSpec, ContractError> {
    let mut p = Props::parse(text)?;
    let iid = id("id", p.take("id")?)?;
    let event: EventKind = p.take_as("event")?;
    let target = id("target", p.take("target")?)?;
    let kind: EffectKind = p.take_as("effect")?;
    let mut params = BTreeMap::new();
    for (name, ty) in kind.param_schema() {
        let v = p.take(name)?;
        let lit = match ty {
            ParamType::Color => Literal::Text(hex_color(name, v)?.hex()),
            ParamType::Bool => Literal::Bool(bool_value(name, v)?),
            ParamType::Vec3 | ParamType::PositiveVec3 => Literal::Vec3(vec3(name, v)?),
        };
        params.insert(name.to_string(), lit);
    }
    let effect = Effect::resolve(kind, &params).map_err(|_| bad("effect", text))?;
    let mut conditions = Vec::new();
    while p.peek_key().is_some() {
        let key = format!("cond{}", conditions.len());
        let v = p.take(&key)?;
        conditions.push(parse_condition(&key, v)?);
    }
    p.finish()?;
    Ok(EffectSpec {
        index,
        id: iid,
        event,
        target,
        effect,
        conditions,
    })
}

fn parse_control(text: &str) -> Result<ControlSpec, ContractError> {
    let mut p = Props::parse(text)?;
    let spec = match p.take("type")? {
        "video" => ControlSpec::Video {
            duration: number("duration", p.take("duration")?)?,
        },
        "pdf" => ControlSpec::Pdf {
            src: p.take("src")?.to_string(),
            pages: p.take_as("pages")?,
            page: p.take_as("page")?,
        },
        "counter" => ControlSpec::Counter {
            target: p.take_as("target")?,
            current: p.take_as("current")?,
        },
        "plate" => ControlSpec::Plate {
            width: number("width", p.take("width")?)?,
            depth: number("depth", p.take("depth")?)?,
            occupied: bool_value("occupied", p.take("occupied")?)?,
        },
        "area" => ControlSpec::Area {
            activity: match p.peek_key() {
                Some(_) => Some(id("activity", p.take("activity")?)?),
                None => None,
            },
        },
        other => return Err(bad("type", other)),
    };
    p.finish()?;
    Ok(spec)
}

fn parse_tracker(text: &str) -> Result<TrackerSpec, ContractError> {
    let mut p = Props::parse(text)?;
    let task = id("task", p.take("task")?)?;
    let kind = p.take("type")?;
    let mut take_id = |key: &str| -> Result<EntityId, ContractError> { id(key, p.take(key)?) };
    let spec = match kind {
        "enter-area" => TrackerSpec::EnterArea {
            task,
            area: take_id("area")?,
        },
        "place-in-area" => TrackerSpec::PlaceInArea {
            task,
            entity: take_id("entity")?,
            area: take_id("area")?,
        },
        "look-at" => TrackerSpec::LookAt {
            task,
            entity: take_id("entity")?,
        },
        "complete-media" => TrackerSpec::CompleteMedia {
            task,
            entity: take_id("entity")?,
        },
        other => return Err(bad("type", other)),
    };
    p.finish()?;
    Ok(spec)
}

/// Decodes one component attribute by name.
pub fn parse_component(name: &str, value: &str) -> Result<Component, ContractError> {
    if let Some(n) = name.strip_prefix(EFFECT_PREFIX) {
        let index: usize = n
            .parse()
            .ok()
            .filter(|_| n == "0" || !n.starts_with('0'))
            .ok_or_else(|| ContractError::UnknownComponent(name.to_string()))?;
        return parse_effect(index, value).map(Component::Effect);
    }
    let one = |key: &str| -> Result<&str, ContractError> {
        let mut p = Props::parse(value)?;
        let v = p.take(key)?;
        p.finish()?;
        Ok(v)
    };
    match name {
        "vreud-control" => parse_control(value).map(Component::Control),
        "vreud-tracker" => parse_tracker(value).map(Component::Tracker),
        "vreud-task" => Ok(Component::Task {
            activities: id_list("activities", one("activities")?)?,
        }),
        "vreud-taskbar" => Ok(Component::Taskbar {
            tasks: id_list("tasks", one("tasks")?)?,
        }),
        "vreud-navmesh-constraint" => {
            let text = one("cells")?;
            let cells = text
                .split(", ")
                .map(|c| {
                    let n: Vec<&str> = c.split(' ').collect();
                    match n[..] {
                        [a, b, c, d] => Ok(NavCell {
                            min_x: number("cells", a)?,
                            min_z: number("cells", b)?,
                            max_x: number("cells", c)?,
                            max_z: number("cells", d)?,
                        }),
                        _ => Err(bad("cells", text)),
                    }
                })
                .collect::<Result<_, _>>()?;
            Ok(Component::NavmeshConstraint { cells })
        }
        "vreud-controller" => match one("hand")? {
            "left" => Ok(Component::Controller { hand: Hand::Left }),
            "right" => Ok(Component::Controller { hand: Hand::Right }),
            other => Err(bad("hand", other)),
        },
        "vreud-gaze" if value.is_empty() => Ok(Component::Gaze),
        "vreud-gaze" => Err(ContractError::Malformed(value.to_string())),
        _ => Err(ContractError::UnknownComponent(name.to_string())),
    }
}

/// Whether `name` is in the component namespace this module decodes.
pub fn is_component(name: &str) -> bool {
    name.starts_with("vreud-")
}
