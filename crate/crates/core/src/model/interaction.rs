use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{Color, EffectKind, EntityId, EntityKind, EventKind, Vec3};
use crate::number::format_number;

/// Untyped value as authored in a document; typing happens in the validator.
#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Bool(bool),
    Number(f64),
    Text(String),
    Vec3(Vec3),
}

impl Literal {
    pub fn type_name(&self) -> &'static str {
        match self {
            Literal::Bool(_) => "boolean",
            Literal::Number(_) => "number",
            Literal::Text(_) => "string",
            Literal::Vec3(_) => "vector",
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Bool(b) => write!(f, "{b}"),
            Literal::Number(n) => f.write_str(&format_number(*n)),
            Literal::Text(t) => f.write_str(t),
            Literal::Vec3(v) => write!(
                f,
                "{} {} {}",
                format_number(v.x),
                format_number(v.y),
                format_number(v.z)
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueType {
    Color,
    Bool,
    Number,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Attribute {
    Color,
    Visible,
    PositionX,
    PositionY,
    PositionZ,
    CurrentPage,
    Current,
    Occupied,
}

impl Attribute {
    pub const ALL: &'static [Attribute] = &[
        Attribute::Color,
        Attribute::Visible,
        Attribute::PositionX,
        Attribute::PositionY,
        Attribute::PositionZ,
        Attribute::CurrentPage,
        Attribute::Current,
        Attribute::Occupied,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Attribute::Color => "color",
            Attribute::Visible => "visible",
            Attribute::PositionX => "position.x",
            Attribute::PositionY => "position.y",
            Attribute::PositionZ => "position.z",
            Attribute::CurrentPage => "currentPage",
            Attribute::Current => "current",
            Attribute::Occupied => "occupied",
        }
    }

    pub fn value_type(self) -> ValueType {
        match self {
            Attribute::Color => ValueType::Color,
            Attribute::Visible | Attribute::Occupied => ValueType::Bool,
            _ => ValueType::Number,
        }
    }

    /// Integer-valued numeric attributes.
    pub fn is_integral(self) -> bool {
        matches!(self, Attribute::CurrentPage | Attribute::Current)
    }

    pub fn applies_to(self, kind: EntityKind) -> bool {
        match self {
            Attribute::Color => kind.is_color_bearing(),
            Attribute::Visible
            | Attribute::PositionX
            | Attribute::PositionY
            | Attribute::PositionZ => kind.is_spatial(),
            Attribute::CurrentPage => kind == EntityKind::Pdf,
            Attribute::Current => kind == EntityKind::Counter,
            Attribute::Occupied => kind == EntityKind::PressurePlate,
        }
    }
}

impl FromStr for Attribute {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Attribute::ALL
            .iter()
            .copied()
            .find(|a| a.as_str() == s)
            .ok_or(())
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompareOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CompareOp {
    pub const ALL: &'static [CompareOp] = &[
        CompareOp::Eq,
        CompareOp::Ne,
        CompareOp::Lt,
        CompareOp::Le,
        CompareOp::Gt,
        CompareOp::Ge,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CompareOp::Eq => "=",
            CompareOp::Ne => "!=",
            CompareOp::Lt => "<",
            CompareOp::Le => "<=",
            CompareOp::Gt => ">",
            CompareOp::Ge => ">=",
        }
    }

    /// Short mnemonic used in markup attribute values.
    pub fn mnemonic(self) -> &'static str {
        match self {
            CompareOp::Eq => "eq",
            CompareOp::Ne => "ne",
            CompareOp::Lt => "lt",
            CompareOp::Le => "le",
            CompareOp::Gt => "gt",
            CompareOp::Ge => "ge",
        }
    }

    pub fn is_ordering(self) -> bool {
        !matches!(self, CompareOp::Eq | CompareOp::Ne)
    }

    /// Whether `actual <op> expected` holds given `actual.cmp(expected)`.
    pub fn holds(self, ord: Ordering) -> bool {
        match self {
            CompareOp::Eq => ord == Ordering::Equal,
            CompareOp::Ne => ord != Ordering::Equal,
            CompareOp::Lt => ord == Ordering::Less,
            CompareOp::Le => ord != Ordering::Greater,
            CompareOp::Gt => ord == Ordering::Greater,
            CompareOp::Ge => ord != Ordering::Less,
        }
    }
}

impl FromStr for CompareOp {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CompareOp::ALL
            .iter()
            .copied()
            .find(|o| o.as_str() == s)
            .ok_or(())
    }
}

impl fmt::Display for CompareOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One gate of an interaction. A list of conditions is a conjunction.
#[derive(Debug, Clone, PartialEq)]
pub enum Condition {
    Attribute {
        entity: EntityId,
        attribute: Attribute,
        op: CompareOp,
        value: Literal,
    },
    InArea {
        entity: EntityId,
        area: EntityId,
    },
}

impl Condition {
    pub fn entity(&self) -> &EntityId {
        match self {
            Condition::Attribute { entity, .. } | Condition::InArea { entity, .. } => entity,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Interaction {
    pub id: EntityId,
    pub source: EntityId,
    pub event: EventKind,
    pub target: EntityId,
    pub effect: EffectKind,
    pub params: BTreeMap<String, Literal>,
    pub conditions: Vec<Condition>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamType {
    Color,
    Bool,
    Vec3,
    PositiveVec3,
}

impl EffectKind {
    /// Named parameters each effect takes, in emission order.
    pub fn param_schema(self) -> &'static [(&'static str, ParamType)] {
        match self {
            EffectKind::SetColor => &[("color", ParamType::Color)],
            EffectKind::SetVisible => &[("visible", ParamType::Bool)],
            EffectKind::SetPosition => &[("position", ParamType::Vec3)],
            EffectKind::SetRotation => &[("rotation", ParamType::Vec3)],
            EffectKind::SetScale => &[("scale", ParamType::PositiveVec3)],
            EffectKind::TranslateBy => &[("offset", ParamType::Vec3)],
            _ => &[],
        }
    }
}

/// An effect with its parameters resolved to concrete values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Effect {
    SetColor(Color),
    SetVisible(bool),
    SetPosition(Vec3),
    SetRotation(Vec3),
    SetScale(Vec3),
    TranslateBy(Vec3),
    Play,
    Pause,
    Restart,
    NextPage,
    PreviousPage,
    FirstPage,
    Increment,
    ResetCounter,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parameter `{param}`: {message}")]
pub struct EffectParamError {
    pub param: String,
    pub message: String,
}

impl Effect {
    pub fn resolve(
        kind: EffectKind,
        params: &BTreeMap<String, Literal>,
    ) -> Result<Effect, EffectParamError> {
        let schema = kind.param_schema();
        if let Some(extra) = params.keys().find(|k| !schema.iter().any(|(n, _)| n == k)) {
            return Err(EffectParamError {
                param: extra.clone(),
                message: format!("`{kind}` takes no such parameter"),
            });
        }
        let fail = |param: &str, message: String| EffectParamError {
            param: param.to_string(),
            message,
        };
        let get = |name: &str| {
            params
                .get(name)
                .ok_or_else(|| fail(name, "missing required parameter".into()))
        };
        let vec = |name: &str| match get(name)? {
            Literal::Vec3(v) if v.is_finite() => Ok(*v),
            other => Err(fail(
                name,
                format!("expected a vector, found {}", other.type_name()),
            )),
        };
        Ok(match kind {
            EffectKind::SetColor => match get("color")? {
                Literal::Text(t) => {
                    Effect::SetColor(Color::parse(t).map_err(|e| fail("color", e.to_string()))?)
                }
                other => {
                    return Err(fail(
                        "color",
                        format!("expected a color, found {}", other.type_name()),
                    ))
                }
            },
            EffectKind::SetVisible => match get("visible")? {
                Literal::Bool(b) => Effect::SetVisible(*b),
                other => {
                    return Err(fail(
                        "visible",
                        format!("expected a boolean, found {}", other.type_name()),
                    ))
                }
            },
            EffectKind::SetPosition => Effect::SetPosition(vec("position")?),
            EffectKind::SetRotation => Effect::SetRotation(vec("rotation")?),
            EffectKind::SetScale => {
                let v = vec("scale")?;
                if !v.all_positive() {
                    return Err(fail("scale", "scale components must be > 0".into()));
                }
                Effect::SetScale(v)
            }
            EffectKind::TranslateBy => Effect::TranslateBy(vec("offset")?),
            EffectKind::Play => Effect::Play,
            EffectKind::Pause => Effect::Pause,
            EffectKind::Restart => Effect::Restart,
            EffectKind::NextPage => Effect::NextPage,
            EffectKind::PreviousPage => Effect::PreviousPage,
            EffectKind::FirstPage => Effect::FirstPage,
            EffectKind::Increment => Effect::Increment,
            EffectKind::ResetCounter => Effect::ResetCounter,
        })
    }

    pub fn kind(&self) -> EffectKind {
        match self {
            Effect::SetColor(_) => EffectKind::SetColor,
            Effect::SetVisible(_) => EffectKind::SetVisible,
            Effect::SetPosition(_) => EffectKind::SetPosition,
            Effect::SetRotation(_) => EffectKind::SetRotation,
            Effect::SetScale(_) => EffectKind::SetScale,
            Effect::TranslateBy(_) => EffectKind::TranslateBy,
            Effect::Play => EffectKind::Play,
            Effect::Pause => EffectKind::Pause,
            Effect::Restart => EffectKind::Restart,
            Effect::NextPage => EffectKind::NextPage,
            Effect::PreviousPage => EffectKind::PreviousPage,
            Effect::FirstPage => EffectKind::FirstPage,
            Effect::Increment => EffectKind::Increment,
            Effect::ResetCounter => EffectKind::ResetCounter,
        }
    }

    /// Canonical parameter map, with colors as hex.
    pub fn params(&self) -> BTreeMap<String, Literal> {
        let value = match self {
            Effect::SetColor(c) => Some(Literal::Text(c.hex())),
            Effect::SetVisible(b) => Some(Literal::Bool(*b)),
            Effect::SetPosition(v)
            | Effect::SetRotation(v)
            | Effect::SetScale(v)
            | Effect::TranslateBy(v) => Some(Literal::Vec3(*v)),
            _ => None,
        };
        let mut map = BTreeMap::new();
        if let (Some(v), Some((name, _))) = (value, self.kind().param_schema().first()) {
            map.insert(name.to_string(), v);
        }
        map
    }
}
