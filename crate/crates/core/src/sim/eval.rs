use serde_json::Value;

use super::geometry::containment;
use super::state::{Detail, EntityState, SimState};
use super::trace::{InternalEvent, StateChange};
use crate::io::canonical::num;
use crate::io::vec3_value;
use crate::model::{Attribute, Color, Condition, Effect, EventKind, Literal, Vec3};

fn attribute_literal(e: &EntityState, attribute: Attribute) -> Option<Literal> {
    Some(match attribute {
        Attribute::Color => Literal::Text(e.color?.hex()),
        Attribute::Visible => Literal::Bool(e.visible),
        Attribute::PositionX => Literal::Number(e.position.x),
        Attribute::PositionY => Literal::Number(e.position.y),
        Attribute::PositionZ => Literal::Number(e.position.z),
        Attribute::CurrentPage => Literal::Number(e.current_page()?.into()),
        Attribute::Current => Literal::Number(e.counter()?.into()),
        Attribute::Occupied => Literal::Bool(e.occupied()?),
    })
}

fn compare(actual: &Literal, expected: &Literal) -> Option<std::cmp::Ordering> {
    match (actual, expected) {
        (Literal::Number(a), Literal::Number(b)) => a.partial_cmp(b),
        (Literal::Bool(a), Literal::Bool(b)) => Some(a.cmp(b)),
        (Literal::Text(a), Literal::Text(b)) => {
            let (a, b) = (Color::parse(a).ok()?, Color::parse(b).ok()?);
            Some(a.cmp(&b))
        }
        _ => None,
    }
}

/// Ill-typed or unresolvable conditions evaluate to false.
pub fn eval_condition(state: &SimState, c: &Condition) -> bool {
    match c {
        Condition::Attribute {
            entity,
            attribute,
            op,
            value,
        } => state
            .entity(entity.as_str())
            .and_then(|e| attribute_literal(e, *attribute))
            .and_then(|actual| compare(&actual, value))
            .is_some_and(|ord| op.holds(ord)),
        Condition::InArea { entity, area } => {
            let (Some(e), Some(a)) = (state.entity(entity.as_str()), state.entity(area.as_str()))
            else {
                return false;
            };
            match (&a.detail, a.zone()) {
                (Detail::Area { .. }, Some((center, size))) => {
                    containment(e.position, center, size)
                }
                _ => false,
            }
        }
    }
}

/// Consequences of one effect: recorded mutations plus events to enqueue.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct EffectOutcome {
    pub changes: Vec<StateChange>,
    pub events: Vec<InternalEvent>,
}

impl EffectOutcome {
    fn change(&mut self, e: &EntityState, attribute: &'static str, old: Value, new: Value) {
        if old != new {
            self.changes.push(StateChange {
                entity: e.id.to_string(),
                attribute,
                old,
                new,
            });
        }
    }

    fn emit(&mut self, e: &EntityState, kind: EventKind) {
        self.events.push(InternalEvent {
            entity: e.id.clone(),
            kind,
        });
    }
}

/// Re-evaluates whether the user stands inside a plate or area and emits
/// `enter`/`leave` on a transition.
pub(crate) fn update_zone(e: &mut EntityState, user: Vec3, out: &mut EffectOutcome) {
    let Some((center, size)) = e.zone() else {
        return;
    };
    let inside = containment(user, center, size);
    let (flag, occupied) = match &mut e.detail {
        Detail::Plate {
            user_inside,
            occupied,
            ..
        } => (user_inside, Some(occupied)),
        Detail::Area { user_inside, .. } => (user_inside, None),
        _ => return,
    };
    if *flag == inside {
        return;
    }
    *flag = inside;
    let mut old_occupied = None;
    if let Some(occ) = occupied {
        old_occupied = Some(*occ);
        *occ = inside;
    }
    if let Some(old) = old_occupied {
        out.change(e, "occupied", Value::Bool(old), Value::Bool(inside));
    }
    out.emit(
        e,
        if inside {
            EventKind::Enter
        } else {
            EventKind::Leave
        },
    );
}

fn move_to(e: &mut EntityState, p: Vec3, user: Vec3, out: &mut EffectOutcome) {
    let old = e.position;
    e.position = p;
    out.change(e, "position", vec3_value(old), vec3_value(p));
    update_zone(e, user, out);
}

/// Mutates the target entity. Effects that do not apply to the entity's
/// state leave it unchanged.
pub fn apply_effect(state: &mut SimState, target: usize, effect: &Effect) -> EffectOutcome {
    let user = state.user.position;
    let e = &mut state.entities[target];
    let mut out = EffectOutcome::default();
    match effect {
        Effect::SetColor(c) => {
            if let Some(old) = e.color {
                e.color = Some(*c);
                out.change(e, "color", Value::String(old.hex()), Value::String(c.hex()));
            }
        }
        Effect::SetVisible(v) => {
            let old = e.visible;
            e.visible = *v;
            out.change(e, "visible", Value::Bool(old), Value::Bool(*v));
        }
        Effect::SetPosition(p) => move_to(e, *p, user, &mut out),
        Effect::TranslateBy(d) => {
            let p = e.position + *d;
            move_to(e, p, user, &mut out);
        }
        Effect::SetRotation(r) => {
            let old = e.rotation;
            e.rotation = *r;
            out.change(e, "rotation", vec3_value(old), vec3_value(*r));
        }
        Effect::SetScale(s) => {
            let old = e.scale;
            e.scale = *s;
            out.change(e, "scale", vec3_value(old), vec3_value(*s));
        }
        Effect::Play | Effect::Pause | Effect::Restart => {
            let Detail::Video {
                playing, elapsed, ..
            } = &mut e.detail
            else {
                return out;
            };
            let (old_playing, old_elapsed) = (*playing, *elapsed);
            *playing = !matches!(effect, Effect::Pause);
            if matches!(effect, Effect::Restart) {
                *elapsed = 0.0;
            }
            let (new_playing, new_elapsed) = (*playing, *elapsed);
            out.change(
                e,
                "playing",
                Value::Bool(old_playing),
                Value::Bool(new_playing),
            );
            out.change(e, "elapsedSeconds", num(old_elapsed), num(new_elapsed));
        }
        Effect::NextPage | Effect::PreviousPage | Effect::FirstPage => {
            let Detail::Pdf {
                current_page,
                page_count,
            } = &mut e.detail
            else {
                return out;
            };
            let old = *current_page;
            *current_page = match effect {
                Effect::NextPage => (old + 1).min(*page_count),
                Effect::PreviousPage => old.saturating_sub(1).max(1),
                _ => 1,
            };
            let (new, reached) = (*current_page, *current_page == *page_count);
            out.change(e, "currentPage", Value::from(old), Value::from(new));
            if matches!(effect, Effect::NextPage) && new != old && reached {
                out.emit(e, EventKind::Completed);
            }
        }
        Effect::Increment | Effect::ResetCounter => {
            let Detail::Counter { current, target } = &mut e.detail else {
                return out;
            };
            let old = *current;
            let target = *target;
            *current = if matches!(effect, Effect::Increment) {
                old.saturating_add(1)
            } else {
                0
            };
            let new = *current;
            out.change(e, "current", Value::from(old), Value::from(new));
            if matches!(effect, Effect::Increment) {
                out.emit(e, EventKind::Changed);
                if old < target && new >= target {
                    out.emit(e, EventKind::Completed);
                }
            } else if new != old {
                out.emit(e, EventKind::Changed);
            }
        }
    }
    out
}

/// Moves playing videos forward, stopping at the duration. Reaching the end
/// emits `completed`.
pub(crate) fn advance_videos(state: &mut SimState, seconds: f64) -> EffectOutcome {
    let mut out = EffectOutcome::default();
    for e in &mut state.entities {
        let Detail::Video {
            playing,
            elapsed,
            duration,
        } = &mut e.detail
        else {
            continue;
        };
        if !*playing {
            continue;
        }
        let old = *elapsed;
        let new = (old + seconds).min(*duration);
        *elapsed = new;
        let finished = old < *duration && new >= *duration;
        if finished {
            *playing = false;
        }
        out.change(e, "elapsedSeconds", num(old), num(new));
        if finished {
            out.change(e, "playing", Value::Bool(true), Value::Bool(false));
            out.emit(e, EventKind::Completed);
        }
    }
    out
}
