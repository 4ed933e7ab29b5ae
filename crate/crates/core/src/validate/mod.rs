//! Static semantic checks over a parsed package.
//!
//! Diagnostics come out in document order (entities, interactions, tasks) and,
//! within one element, in check order. An empty list means the package is
//! valid; warnings alone do not make it invalid.

mod conflict;

use std::collections::HashSet;

use crate::diag::Diagnostic;
use crate::model::*;

pub const V_DANGLING: &str = "V001";
pub const V_DUPLICATE: &str = "V002";
pub const V_EVENT: &str = "V003";
pub const V_EFFECT: &str = "V004";
pub const V_PARAMS: &str = "V005";
pub const V_COND_TYPE: &str = "V006a";
pub const V_COND_CONFLICT: &str = "V006b";
pub const V_AREA_UNLINKED: &str = "V007";
pub const V_AREA_LINK: &str = "V008";
pub const V_NO_TASKBAR: &str = "V009";
pub const V_EMPTY_TASK: &str = "V010";
pub const V_RANGE: &str = "V011";
pub const V_NAVMESH: &str = "V012";
pub const V_ACTIVITY_KIND: &str = "V013";

pub fn validate(pkg: &ScenePackage) -> Vec<Diagnostic> {
    let mut out = check_ids(pkg);
    out.extend(check_entities(pkg));
    for (i, interaction) in pkg.interactions.iter().enumerate() {
        out.extend(check_interaction(interaction, i, pkg));
        out.extend(check_condition_set(
            &interaction.conditions,
            &format!("interactions/{i}/conditions"),
            pkg,
        ));
    }
    out.extend(check_tasks(pkg));
    out
}

pub fn is_valid(pkg: &ScenePackage) -> bool {
    !validate(pkg).iter().any(Diagnostic::is_error)
}

fn check_ids(pkg: &ScenePackage) -> Vec<Diagnostic> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (id, _, path) in pkg.declared_ids() {
        if !seen.insert(id.as_str()) {
            out.push(Diagnostic::error(
                V_DUPLICATE,
                path,
                format!("id `{id}` is already declared"),
            ));
        }
    }
    out
}

fn check_entities(pkg: &ScenePackage) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut navmeshes = 0;
    for (i, e) in pkg.entities.iter().enumerate() {
        let at = |field: &str| format!("entities/{i}/{field}");
        let positive = |field: &str, v: f64, out: &mut Vec<Diagnostic>| {
            if v <= 0.0 {
                out.push(Diagnostic::error(
                    V_RANGE,
                    at(field),
                    format!("`{field}` must be > 0"),
                ));
            }
        };
        if !e.scale.all_positive() {
            out.push(Diagnostic::error(
                V_RANGE,
                at("scale"),
                "scale components must be > 0",
            ));
        }
        match &e.body {
            EntityBody::Box {
                width,
                height,
                depth,
            } => {
                positive("width", *width, &mut out);
                positive("height", *height, &mut out);
                positive("depth", *depth, &mut out);
            }
            EntityBody::Cylinder { radius, height } => {
                positive("radius", *radius, &mut out);
                positive("height", *height, &mut out);
            }
            EntityBody::Sphere { radius } => positive("radius", *radius, &mut out),
            EntityBody::Plane { width, height } | EntityBody::Image { width, height, .. } => {
                positive("width", *width, &mut out);
                positive("height", *height, &mut out);
            }
            EntityBody::Video {
                width,
                height,
                duration_seconds,
                ..
            } => {
                positive("width", *width, &mut out);
                positive("height", *height, &mut out);
                positive("durationSeconds", *duration_seconds, &mut out);
            }
            EntityBody::Pdf {
                page_count,
                current_page,
                ..
            } => {
                if *page_count < 1 {
                    out.push(Diagnostic::error(
                        V_RANGE,
                        at("pageCount"),
                        "pageCount must be >= 1",
                    ));
                } else if *current_page < 1 || current_page > page_count {
                    out.push(Diagnostic::error(
                        V_RANGE,
                        at("currentPage"),
                        format!("currentPage must be within 1..={page_count}"),
                    ));
                }
            }
            EntityBody::Counter { target, .. } => {
                if *target < 1 {
                    out.push(Diagnostic::error(
                        V_RANGE,
                        at("target"),
                        "target must be >= 1",
                    ));
                }
            }
            EntityBody::PressurePlate { width, depth, .. } => {
                positive("width", *width, &mut out);
                positive("depth", *depth, &mut out);
            }
            EntityBody::Navmesh { cells } => {
                navmeshes += 1;
                if navmeshes > 1 {
                    out.push(Diagnostic::error(
                        V_NAVMESH,
                        format!("entities/{i}"),
                        "a package may contain at most one navmesh",
                    ));
                }
                if cells.is_empty() {
                    out.push(Diagnostic::error(
                        V_RANGE,
                        at("cells"),
                        "navmesh needs at least one cell",
                    ));
                }
                for (c, cell) in cells.iter().enumerate() {
                    if cell.min_x >= cell.max_x || cell.min_z >= cell.max_z {
                        out.push(Diagnostic::error(
                            V_RANGE,
                            format!("entities/{i}/cells/{c}"),
                            "cell needs minX < maxX and minZ < maxZ",
                        ));
                    }
                }
            }
            EntityBody::Area { size, .. } => {
                if !size.all_positive() {
                    out.push(Diagnostic::error(
                        V_RANGE,
                        at("size"),
                        "area size components must be > 0",
                    ));
                }
            }
            EntityBody::Model { .. } | EntityBody::Button | EntityBody::Taskbar => {}
        }
    }
    out
}

/// Reference, catalog and parameter checks for one interaction.
pub fn check_interaction(i: &Interaction, index: usize, pkg: &ScenePackage) -> Vec<Diagnostic> {
    let at = |field: &str| format!("interactions/{index}/{field}");
    let mut out = Vec::new();
    let source_kind = pkg.kind_of(i.source.as_str());
    let target_kind = pkg.kind_of(i.target.as_str());
    if source_kind.is_none() {
        out.push(Diagnostic::error(
            V_DANGLING,
            at("source"),
            format!("source `{}` is not a declared entity", i.source),
        ));
    }
    if target_kind.is_none() {
        out.push(Diagnostic::error(
            V_DANGLING,
            at("target"),
            format!("target `{}` is not a declared entity", i.target),
        ));
    }
    if let Some(kind) = source_kind {
        if !kind.accepts_event(i.event) {
            out.push(Diagnostic::error(
                V_EVENT,
                at("event"),
                format!("`{kind}` entities do not emit `{}`", i.event),
            ));
        }
    }
    if let Some(kind) = target_kind {
        if !kind.accepts_effect(i.effect) {
            out.push(Diagnostic::error(
                V_EFFECT,
                at("effect"),
                format!("`{kind}` entities do not support `{}`", i.effect),
            ));
        }
    }
    if let Err(e) = Effect::resolve(i.effect, &i.params) {
        out.push(Diagnostic::error(
            V_PARAMS,
            at(&format!("params/{}", e.param)),
            e.message,
        ));
    }
    out
}

/// Typing errors per condition, then pairwise conflicts between checks on the
/// same entity and attribute.
pub fn check_condition_set(cs: &[Condition], prefix: &str, pkg: &ScenePackage) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut typed = vec![false; cs.len()];
    for (j, c) in cs.iter().enumerate() {
        let before = out.len();
        check_condition(c, &format!("{prefix}/{j}"), pkg, &mut out);
        typed[j] = out.len() == before;
    }
    for b in 0..cs.len() {
        for a in 0..b {
            if !(typed[a] && typed[b]) {
                continue;
            }
            if let (
                Condition::Attribute {
                    entity: ea,
                    attribute: aa,
                    op: oa,
                    value: va,
                },
                Condition::Attribute {
                    entity: eb,
                    attribute: ab,
                    op: ob,
                    value: vb,
                },
            ) = (&cs[a], &cs[b])
            {
                if ea == eb && aa == ab && conflict::disjoint(*aa, (*oa, va), (*ob, vb)) {
                    out.push(Diagnostic::error(
                        V_COND_CONFLICT,
                        format!("{prefix}/{b}"),
                        format!(
                            "`{ea}.{aa} {ob} {vb}` can never hold together with condition {a} (`{aa} {oa} {va}`)"
                        ),
                    ));
                }
            }
        }
    }
    out
}

fn check_condition(c: &Condition, path: &str, pkg: &ScenePackage, out: &mut Vec<Diagnostic>) {
    let at = |field: &str| format!("{path}/{field}");
    match c {
        Condition::Attribute {
            entity,
            attribute,
            op,
            value,
        } => {
            let Some(kind) = pkg.kind_of(entity.as_str()) else {
                out.push(Diagnostic::error(
                    V_DANGLING,
                    at("entity"),
                    format!("`{entity}` is not a declared entity"),
                ));
                return;
            };
            if !attribute.applies_to(kind) {
                out.push(Diagnostic::error(
                    V_COND_TYPE,
                    at("attribute"),
                    format!("`{kind}` entities have no `{attribute}` attribute"),
                ));
                return;
            }
            let vt = attribute.value_type();
            if op.is_ordering() && vt != ValueType::Number {
                out.push(Diagnostic::error(
                    V_COND_TYPE,
                    at("op"),
                    format!("`{op}` needs a numeric attribute, `{attribute}` is not"),
                ));
            }
            let value_ok = match (vt, value) {
                (ValueType::Color, Literal::Text(t)) => Color::parse(t).is_ok(),
                (ValueType::Bool, Literal::Bool(_)) => true,
                (ValueType::Number, Literal::Number(n)) => {
                    !attribute.is_integral() || n.fract() == 0.0
                }
                _ => false,
            };
            if !value_ok {
                let want = match vt {
                    ValueType::Color => "a color",
                    ValueType::Bool => "a boolean",
                    ValueType::Number if attribute.is_integral() => "an integer",
                    ValueType::Number => "a number",
                };
                out.push(Diagnostic::error(
                    V_COND_TYPE,
                    at("value"),
                    format!("`{attribute}` compares against {want}, found `{value}`"),
                ));
            }
        }
        Condition::InArea { entity, area } => {
            match pkg.kind_of(entity.as_str()) {
                None => out.push(Diagnostic::error(
                    V_DANGLING,
                    at("entity"),
                    format!("`{entity}` is not a declared entity"),
                )),
                Some(kind) if !kind.is_spatial() => out.push(Diagnostic::error(
                    V_COND_TYPE,
                    at("entity"),
                    format!("`{kind}` entities have no position"),
                )),
                Some(_) => {}
            }
            match pkg.kind_of(area.as_str()) {
                None => out.push(Diagnostic::error(
                    V_DANGLING,
                    at("area"),
                    format!("`{area}` is not a declared entity"),
                )),
                Some(EntityKind::Area) => {}
                Some(kind) => out.push(Diagnostic::error(
                    V_COND_TYPE,
                    at("area"),
                    format!("`{area}` is a `{kind}`, expected an area"),
                )),
            }
        }
    }
}

/// Task structure, activity references and area links.
pub fn check_tasks(pkg: &ScenePackage) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (ti, task) in pkg.tasks.iter().enumerate() {
        if task.activities.is_empty() {
            out.push(Diagnostic::error(
                V_EMPTY_TASK,
                format!("tasks/{ti}/activities"),
                format!("task `{}` has no activities", task.id),
            ));
        }
        for (ai, act) in task.activities.iter().enumerate() {
            let at = |field: &str| format!("tasks/{ti}/activities/{ai}/{field}");
            if let Some(area) = act.kind.area() {
                match pkg.entity(area.as_str()).map(|e| &e.body) {
                    Some(EntityBody::Area {
                        linked_activity: Some(linked),
                        ..
                    }) if linked == &act.id => {}
                    Some(EntityBody::Area { .. }) => out.push(Diagnostic::error(
                        V_AREA_UNLINKED,
                        at("area"),
                        format!("area `{area}` is not linked to activity `{}`", act.id),
                    )),
                    _ => out.push(Diagnostic::error(
                        V_AREA_UNLINKED,
                        at("area"),
                        format!(
                            "`{}` needs an area; `{area}` is not an area entity",
                            act.kind.as_str()
                        ),
                    )),
                }
            }
            if let Some(entity) = act.kind.entity() {
                match pkg.kind_of(entity.as_str()) {
                    None => out.push(Diagnostic::error(
                        V_DANGLING,
                        at("entity"),
                        format!("`{entity}` is not a declared entity"),
                    )),
                    Some(kind) => {
                        let ok = match act.kind {
                            ActivityType::CompleteMedia { .. } => matches!(
                                kind,
                                EntityKind::Video | EntityKind::Pdf | EntityKind::Counter
                            ),
                            _ => kind.is_spatial() && kind != EntityKind::Area,
                        };
                        if !ok {
                            out.push(Diagnostic::error(
                                V_ACTIVITY_KIND,
                                at("entity"),
                                format!("`{}` cannot target a `{kind}`", act.kind.as_str()),
                            ));
                        }
                    }
                }
            }
        }
    }
    for (i, e) in pkg.entities.iter().enumerate() {
        if let EntityBody::Area {
            linked_activity: Some(linked),
            ..
        } = &e.body
        {
            let uses_area = pkg
                .activity(linked.as_str())
                .map(|a| a.kind.area().map(EntityId::as_str) == Some(e.id.as_str()));
            match uses_area {
                Some(true) => {}
                Some(false) => out.push(Diagnostic::error(
                    V_AREA_LINK,
                    format!("entities/{i}/linkedActivity"),
                    format!("activity `{linked}` does not use area `{}`", e.id),
                )),
                None => out.push(Diagnostic::error(
                    V_AREA_LINK,
                    format!("entities/{i}/linkedActivity"),
                    format!("linked activity `{linked}` does not exist"),
                )),
            }
        }
    }
    if !pkg.tasks.is_empty() && !pkg.entities.iter().any(|e| e.kind() == EntityKind::Taskbar) {
        out.push(Diagnostic::warning(
            V_NO_TASKBAR,
            "tasks",
            "tasks are defined but no taskbar entity shows them",
        ));
    }
    out
}
