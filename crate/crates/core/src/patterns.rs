//! Interactivity patterns: named macros that expand into entities,
//! interactions, tasks and parameter changes in one step.
//!
//! Expansion is pure. Generated ids follow `<pattern>-<n>-<role>` where `n` is
//! the instance ordinal, so the same input always yields the same delta.

use std::collections::{BTreeMap, HashSet};

use crate::diag::Diagnostic;
use crate::model::*;

pub const X_SLOT_KIND: &str = "X001";
pub const X_UNKNOWN_PATTERN: &str = "X002";
pub const X_DANGLING: &str = "X003";
pub const X_COLLISION: &str = "X004";
pub const X_SLOT_BINDING: &str = "X005";
pub const X_PARAM_CHANGE: &str = "X006";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotDescriptor {
    pub name: &'static str,
    pub accepted: Vec<EntityKind>,
    pub required: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternDescriptor {
    pub name: &'static str,
    pub summary: &'static str,
    pub slots: Vec<SlotDescriptor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternInstance {
    pub pattern: String,
    pub bindings: BTreeMap<String, EntityId>,
}

impl PatternInstance {
    pub fn new(pattern: impl Into<String>) -> Self {
        PatternInstance {
            pattern: pattern.into(),
            bindings: BTreeMap::new(),
        }
    }

    pub fn bind(mut self, slot: &str, id: EntityId) -> Self {
        self.bindings.insert(slot.to_string(), id);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParameterChange {
    pub entity: EntityId,
    pub field: String,
    pub value: Literal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PackageDelta {
    pub pattern: String,
    pub ordinal: u32,
    pub bindings: BTreeMap<String, EntityId>,
    pub added_entities: Vec<Entity>,
    pub added_interactions: Vec<Interaction>,
    pub added_tasks: Vec<Task>,
    pub parameter_changes: Vec<ParameterChange>,
}

impl PackageDelta {
    pub fn empty(pattern: impl Into<String>, ordinal: u32) -> Self {
        PackageDelta {
            pattern: pattern.into(),
            ordinal,
            bindings: BTreeMap::new(),
            added_entities: Vec::new(),
            added_interactions: Vec::new(),
            added_tasks: Vec::new(),
            parameter_changes: Vec::new(),
        }
    }

    fn added_ids(&self) -> Vec<&EntityId> {
        let mut ids: Vec<&EntityId> = self.added_entities.iter().map(|e| &e.id).collect();
        ids.extend(self.added_interactions.iter().map(|i| &i.id));
        for t in &self.added_tasks {
            ids.push(&t.id);
            ids.extend(t.activities.iter().map(|a| &a.id));
        }
        ids
    }
}

trait Pattern {
    fn descriptor(&self) -> PatternDescriptor;
    /// Role suffixes of the ids this pattern may generate.
    fn roles(&self) -> &'static [&'static str];
    fn build(&self, ordinal: u32, bindings: &BTreeMap<String, EntityId>) -> PackageDelta;
}

fn pressable_kinds() -> Vec<EntityKind> {
    EntityKind::ALL
        .iter()
        .copied()
        .filter(|k| k.accepts_event(EventKind::Press))
        .collect()
}

/// Play and optional pause controls around a video.
struct VideoInteractivity;

impl VideoInteractivity {
    const NAME: &'static str = "video-interactivity";
}

impl Pattern for VideoInteractivity {
    fn descriptor(&self) -> PatternDescriptor {
        PatternDescriptor {
            name: Self::NAME,
            summary: "press one entity to play a video and optionally another to pause it",
            slots: vec![
                SlotDescriptor {
                    name: "video",
                    accepted: vec![EntityKind::Video],
                    required: true,
                },
                SlotDescriptor {
                    name: "playTrigger",
                    accepted: pressable_kinds(),
                    required: true,
                },
                SlotDescriptor {
                    name: "pauseTrigger",
                    accepted: pressable_kinds(),
                    required: false,
                },
            ],
        }
    }

    fn roles(&self) -> &'static [&'static str] {
        &["play", "pause"]
    }

    fn build(&self, ordinal: u32, bindings: &BTreeMap<String, EntityId>) -> PackageDelta {
        let mut delta = PackageDelta::empty(Self::NAME, ordinal);
        delta.bindings = bindings.clone();
        let video = &bindings["video"];
        let control = |role: &str, trigger: &EntityId, effect: EffectKind| Interaction {
            id: generated_id(Self::NAME, ordinal, role),
            source: trigger.clone(),
            event: EventKind::Press,
            target: video.clone(),
            effect,
            params: BTreeMap::new(),
            conditions: Vec::new(),
        };
        delta
            .added_interactions
            .push(control("play", &bindings["playTrigger"], EffectKind::Play));
        if let Some(pause) = bindings.get("pauseTrigger") {
            delta
                .added_interactions
                .push(control("pause", pause, EffectKind::Pause));
        }
        delta
    }
}

fn registry() -> Vec<Box<dyn Pattern>> {
    vec![Box::new(VideoInteractivity)]
}

fn generated_id(pattern: &str, ordinal: u32, role: &str) -> EntityId {
    EntityId::new(format!("{pattern}-{ordinal}-{role}")).expect("pattern names form valid ids")
}

pub fn list_patterns() -> Vec<PatternDescriptor> {
    registry().iter().map(|p| p.descriptor()).collect()
}

/// Checks the bindings of `instance` against the pattern's slots and builds
/// the delta it adds to `pkg`.
pub fn expand(
    instance: &PatternInstance,
    pkg: &ScenePackage,
) -> Result<PackageDelta, Vec<Diagnostic>> {
    let patterns = registry();
    let Some(pattern) = patterns
        .iter()
        .find(|p| p.descriptor().name == instance.pattern)
    else {
        return Err(vec![Diagnostic::error(
            X_UNKNOWN_PATTERN,
            "pattern",
            format!("unknown pattern `{}`", instance.pattern),
        )]);
    };
    let desc = pattern.descriptor();
    let mut diags = Vec::new();
    for slot in instance.bindings.keys() {
        if !desc.slots.iter().any(|s| s.name == slot) {
            diags.push(Diagnostic::error(
                X_SLOT_BINDING,
                format!("bindings/{slot}"),
                format!("pattern `{}` has no slot `{slot}`", desc.name),
            ));
        }
    }
    for slot in &desc.slots {
        let path = format!("bindings/{}", slot.name);
        match instance.bindings.get(slot.name) {
            None if slot.required => diags.push(Diagnostic::error(
                X_SLOT_BINDING,
                path,
                format!("required slot `{}` is not bound", slot.name),
            )),
            None => {}
            Some(id) => match pkg.kind_of(id.as_str()) {
                None => diags.push(Diagnostic::error(
                    X_DANGLING,
                    path,
                    format!("`{id}` is not a declared entity"),
                )),
                Some(kind) if !slot.accepted.contains(&kind) => diags.push(Diagnostic::error(
                    X_SLOT_KIND,
                    path,
                    format!("slot `{}` does not accept `{kind}` entities", slot.name),
                )),
                Some(_) => {}
            },
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }

    let prior = pkg
        .patterns_applied
        .iter()
        .filter(|a| a.pattern == desc.name)
        .map(|a| a.ordinal)
        .max()
        .unwrap_or(0);
    let mut ordinal = prior + 1;
    while pattern
        .roles()
        .iter()
        .any(|role| pkg.is_id_declared(generated_id(desc.name, ordinal, role).as_str()))
    {
        ordinal += 1;
    }
    Ok(pattern.build(ordinal, &instance.bindings))
}

/// Appends the delta's items in order, applies its parameter changes and logs
/// the application.
pub fn apply_delta(
    pkg: &ScenePackage,
    delta: &PackageDelta,
) -> Result<ScenePackage, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut seen = HashSet::new();
    for id in delta.added_ids() {
        if pkg.is_id_declared(id.as_str()) || !seen.insert(id.as_str()) {
            diags.push(Diagnostic::error(
                X_COLLISION,
                format!("delta/{id}"),
                format!("id `{id}` is already declared"),
            ));
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }

    let mut out = pkg.clone();
    out.entities.extend(delta.added_entities.iter().cloned());
    out.interactions
        .extend(delta.added_interactions.iter().cloned());
    out.tasks.extend(delta.added_tasks.iter().cloned());
    for (i, change) in delta.parameter_changes.iter().enumerate() {
        let path = format!("parameterChanges/{i}");
        let Some(entity) = out.entity_mut(change.entity.as_str()) else {
            diags.push(Diagnostic::error(
                X_DANGLING,
                path,
                format!("`{}` is not a declared entity", change.entity),
            ));
            continue;
        };
        if let Err(msg) = set_field(entity, &change.field, &change.value) {
            diags.push(Diagnostic::error(X_PARAM_CHANGE, path, msg));
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    out.patterns_applied.push(PatternApplication {
        pattern: delta.pattern.clone(),
        ordinal: delta.ordinal,
        bindings: delta.bindings.clone(),
    });
    Ok(out)
}

fn set_field(entity: &mut Entity, field: &str, value: &Literal) -> Result<(), String> {
    match (field, value) {
        ("name", Literal::Text(t)) => entity.name = t.clone(),
        ("visible", Literal::Bool(b)) => entity.visible = *b,
        ("color", Literal::Text(t)) => {
            entity.color = Some(Color::parse(t).map_err(|e| e.to_string())?)
        }
        ("position", Literal::Vec3(v)) => entity.position = *v,
        ("rotation", Literal::Vec3(v)) => entity.rotation = *v,
        ("scale", Literal::Vec3(v)) => entity.scale = *v,
        _ => {
            return Err(format!(
                "cannot set `{field}` to a {} value",
                value.type_name()
            ))
        }
    }
    Ok(())
}
