//! A-Frame document generation.

pub mod contract;
mod markup;

use std::collections::BTreeMap;
use std::fs;

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;

pub use markup::{escape, MarkupNode};

use crate::diag::{has_errors, Diagnostic};
use crate::io::{content_type, AssetTable};
use crate::model::{
    ActivityType, AssetRef, Condition, Entity, EntityBody, EntityId, Literal, MediaClass,
    ScenePackage, Task, Vec3,
};
use crate::number::format_number;
use crate::validate::validate;

pub const G_INVALID: &str = "G001";
pub const G_ASSET: &str = "G002";
pub const G_OPTIONS: &str = "G003";

pub const AREA_COLOR: &str = "#3399ff";
pub const AREA_OPACITY: &str = "0.35";
pub const PLATE_THICKNESS: f64 = 0.05;
pub const BUTTON_RADIUS: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenOptions {
    pub runtime_url: String,
    pub title: String,
    /// Inline assets as data URIs instead of referencing them by path.
    pub embed_assets: bool,
}

impl GenOptions {
    pub fn for_package(pkg: &ScenePackage) -> Self {
        GenOptions {
            runtime_url: pkg.settings.runtime_url.clone(),
            title: "VR Scene".to_string(),
            embed_assets: false,
        }
    }
}

fn vec3_attr(v: Vec3) -> String {
    format!(
        "{} {} {}",
        format_number(v.x),
        format_number(v.y),
        format_number(v.z)
    )
}

/// Joins `key: value` pairs with `; `.
fn props<'a>(pairs: impl IntoIterator<Item = (&'a str, String)>) -> String {
    pairs
        .into_iter()
        .map(|(k, v)| format!("{k}: {v}"))
        .collect::<Vec<_>>()
        .join("; ")
}

fn ids(list: impl IntoIterator<Item = impl AsRef<str>>) -> String {
    list.into_iter()
        .map(|s| s.as_ref().to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Asset ids in order of first reference.
struct AssetIds {
    order: Vec<AssetRef>,
    ids: BTreeMap<AssetRef, String>,
}

impl AssetIds {
    fn collect(pkg: &ScenePackage) -> Self {
        let mut order = Vec::new();
        let mut ids = BTreeMap::new();
        for e in &pkg.entities {
            for (_, asset) in e.asset_refs() {
                if !ids.contains_key(asset) {
                    ids.insert(asset.clone(), format!("_asset{}", order.len()));
                    order.push(asset.clone());
                }
            }
        }
        AssetIds { order, ids }
    }

    fn selector(&self, asset: &AssetRef) -> String {
        format!("#{}", self.ids[asset])
    }
}

fn literal_attr(lit: &Literal) -> String {
    match lit {
        Literal::Text(t) => crate::model::Color::parse(t)
            .map(|c| c.hex())
            .unwrap_or_else(|_| t.clone()),
        other => other.to_string(),
    }
}

fn condition_attr(c: &Condition) -> String {
    match c {
        Condition::Attribute {
            entity,
            attribute,
            op,
            value,
        } => format!(
            "{entity}.{} {} {}",
            attribute.as_str(),
            op.mnemonic(),
            literal_attr(value)
        ),
        Condition::InArea { entity, area } => format!("{entity} in {area}"),
    }
}

/// Effect attributes per source entity, named `vreud-effect__<n>` with `n`
/// counting that source's interactions in package order.
pub fn emit_interaction_components(
    pkg: &ScenePackage,
) -> BTreeMap<EntityId, Vec<(String, String)>> {
    let mut out: BTreeMap<EntityId, Vec<(String, String)>> = BTreeMap::new();
    for i in &pkg.interactions {
        let list = out.entry(i.source.clone()).or_default();
        let mut pairs = vec![
            ("id", i.id.to_string()),
            ("event", i.event.as_str().to_string()),
            ("target", i.target.to_string()),
            ("effect", i.effect.as_str().to_string()),
        ];
        let params = match crate::model::Effect::resolve(i.effect, &i.params) {
            Ok(effect) => effect.params(),
            Err(_) => i.params.clone(),
        };
        let params: Vec<(String, String)> = params
            .iter()
            .map(|(k, v)| (k.clone(), literal_attr(v)))
            .collect();
        let conds: Vec<(String, String)> = i
            .conditions
            .iter()
            .enumerate()
            .map(|(k, c)| (format!("cond{k}"), condition_attr(c)))
            .collect();
        pairs.extend(params.iter().map(|(k, v)| (k.as_str(), v.clone())));
        pairs.extend(conds.iter().map(|(k, v)| (k.as_str(), v.clone())));
        list.push((format!("vreud-effect__{}", list.len()), props(pairs)));
    }
    out
}

fn color_attr(e: &Entity) -> Option<String> {
    e.effective_color().map(|c| c.hex())
}

/// One node for an entity, with assets referenced by path. Component
/// attributes from interactions are added by the caller.
pub fn emit_entity(e: &Entity, assets: &AssetTable) -> Result<MarkupNode, Diagnostic> {
    let ids = AssetIds {
        order: Vec::new(),
        ids: BTreeMap::new(),
    };
    entity_node(e, assets, &ids, None)
}

fn entity_node(
    e: &Entity,
    assets: &AssetTable,
    asset_ids: &AssetIds,
    index: Option<usize>,
) -> Result<MarkupNode, Diagnostic> {
    for (field, asset) in e.asset_refs() {
        if assets.get(asset).is_none() {
            let path = index.map_or_else(String::new, |i| format!("entities/{i}/{field}"));
            return Err(Diagnostic::error(
                G_ASSET,
                path,
                format!("asset `{asset}` of `{}` is not resolved", e.id),
            ));
        }
    }
    let src = |a: &AssetRef| {
        if asset_ids.order.is_empty() {
            a.to_string()
        } else {
            asset_ids.selector(a)
        }
    };
    let tag = match e.body {
        EntityBody::Box { .. } => "a-box",
        EntityBody::Cylinder { .. } => "a-cylinder",
        EntityBody::Sphere { .. } => "a-sphere",
        EntityBody::Plane { .. } => "a-plane",
        EntityBody::Area { .. } => "a-box",
        _ => "a-entity",
    };
    let mut n = MarkupNode::new(tag)
        .attr("id", e.id.as_str())
        .attr("data-vreud-kind", e.kind().as_str())
        .attr("position", vec3_attr(e.position))
        .attr("rotation", vec3_attr(e.rotation))
        .attr("scale", vec3_attr(e.scale))
        .attr("visible", e.visible.to_string());
    let num = |v: f64| format_number(v);
    match &e.body {
        EntityBody::Box {
            width,
            height,
            depth,
        } => {
            n = n
                .attr("width", num(*width))
                .attr("height", num(*height))
                .attr("depth", num(*depth));
        }
        EntityBody::Cylinder { radius, height } => {
            n = n.attr("radius", num(*radius)).attr("height", num(*height));
        }
        EntityBody::Sphere { radius } => n = n.attr("radius", num(*radius)),
        EntityBody::Plane { width, height } => {
            n = n.attr("width", num(*width)).attr("height", num(*height));
        }
        EntityBody::Model { src: a } => n = n.attr("gltf-model", src(a)),
        EntityBody::Image {
            src: a,
            width,
            height,
        } => {
            n = n
                .attr(
                    "geometry",
                    props([
                        ("primitive", "plane".into()),
                        ("width", num(*width)),
                        ("height", num(*height)),
                    ]),
                )
                .attr(
                    "material",
                    props([("src", src(a)), ("shader", "flat".into())]),
                );
        }
        EntityBody::Video {
            src: a,
            width,
            height,
            duration_seconds,
        } => {
            n = n
                .attr(
                    "geometry",
                    props([
                        ("primitive", "plane".into()),
                        ("width", num(*width)),
                        ("height", num(*height)),
                    ]),
                )
                .attr(
                    "material",
                    props([("src", src(a)), ("shader", "flat".into())]),
                )
                .attr(
                    "vreud-control",
                    props([
                        ("type", "video".into()),
                        ("duration", num(*duration_seconds)),
                    ]),
                );
        }
        EntityBody::Pdf {
            src: a,
            page_count,
            current_page,
        } => {
            n = n
                .attr(
                    "geometry",
                    props([
                        ("primitive", "plane".into()),
                        ("width", "1".into()),
                        ("height", "1.414".into()),
                    ]),
                )
                .attr(
                    "vreud-control",
                    props([
                        ("type", "pdf".into()),
                        ("src", src(a)),
                        ("pages", page_count.to_string()),
                        ("page", current_page.to_string()),
                    ]),
                );
        }
        EntityBody::Button => {
            n = n.attr(
                "geometry",
                props([
                    ("primitive", "cylinder".into()),
                    ("radius", num(BUTTON_RADIUS)),
                    ("height", num(PLATE_THICKNESS)),
                ]),
            );
        }
        EntityBody::Counter { target, current } => {
            n = n.attr(
                "vreud-control",
                props([
                    ("type", "counter".into()),
                    ("target", target.to_string()),
                    ("current", current.to_string()),
                ]),
            );
        }
        EntityBody::PressurePlate {
            width,
            depth,
            occupied,
        } => {
            n = n
                .attr(
                    "geometry",
                    props([
                        ("primitive", "box".into()),
                        ("width", num(*width)),
                        ("height", num(PLATE_THICKNESS)),
                        ("depth", num(*depth)),
                    ]),
                )
                .attr(
                    "vreud-control",
                    props([
                        ("type", "plate".into()),
                        ("width", num(*width)),
                        ("depth", num(*depth)),
                        ("occupied", occupied.to_string()),
                    ]),
                );
        }
        EntityBody::Taskbar | EntityBody::Navmesh { .. } => {}
        EntityBody::Area {
            size,
            linked_activity,
        } => {
            n = n
                .attr("width", num(size.x))
                .attr("height", num(size.y))
                .attr("depth", num(size.z))
                .attr(
                    "material",
                    props([
                        ("color", AREA_COLOR.into()),
                        ("opacity", AREA_OPACITY.into()),
                        ("transparent", "true".into()),
                    ]),
                );
            let mut control = vec![("type", "area".to_string())];
            if let Some(a) = linked_activity {
                control.push(("activity", a.to_string()));
            }
            n = n.attr("vreud-control", props(control));
        }
    }
    if let Some(c) = color_attr(e) {
        match e.body {
            EntityBody::Button | EntityBody::PressurePlate { .. } => {
                n = n.attr("material", props([("color", c)]));
            }
            _ => n = n.attr("color", c),
        }
    }
    if let Some(t) = &e.texture {
        n = n.attr("src", src(t));
    }
    if e.shadow {
        n = n.attr("shadow", "cast: true; receive: true");
    }
    if e.physics == crate::model::Physics::Static {
        n = n.attr("static-body", "");
    }
    Ok(n)
}

fn task_node(t: &Task) -> MarkupNode {
    MarkupNode::new("a-entity")
        .attr("id", t.id.as_str())
        .attr("visible", "false")
        .attr(
            "vreud-task",
            props([(
                "activities",
                ids(t.activities.iter().map(|a| a.id.as_str())),
            )]),
        )
        .attr("data-name", t.name.as_str())
        .attr("data-description", t.description.as_str())
}

/// One invisible node per task followed by one per activity of that task.
pub fn emit_task_entities(pkg: &ScenePackage) -> Vec<MarkupNode> {
    let mut out = Vec::new();
    for t in &pkg.tasks {
        out.push(task_node(t));
        for a in &t.activities {
            let mut tracker = vec![
                ("task", t.id.to_string()),
                ("type", a.kind.as_str().to_string()),
            ];
            match &a.kind {
                ActivityType::EnterArea { area } => tracker.push(("area", area.to_string())),
                ActivityType::PlaceInArea { entity, area } => {
                    tracker.push(("entity", entity.to_string()));
                    tracker.push(("area", area.to_string()));
                }
                ActivityType::LookAt { entity } | ActivityType::CompleteMedia { entity } => {
                    tracker.push(("entity", entity.to_string()))
                }
            }
            out.push(
                MarkupNode::new("a-entity")
                    .attr("id", a.id.as_str())
                    .attr("visible", "false")
                    .attr("vreud-tracker", props(tracker))
                    .attr("data-name", a.name.as_str())
                    .attr("data-description", a.description.as_str()),
            );
        }
    }
    out
}

pub fn emit_user_controls(pkg: &ScenePackage) -> MarkupNode {
    let mut rig = MarkupNode::new("a-entity")
        .attr("class", "vreud-rig")
        .attr("position", vec3_attr(pkg.settings.user_start));
    if let Some(EntityBody::Navmesh { cells }) = pkg.navmesh().map(|e| &e.body) {
        let cells = cells
            .iter()
            .map(|c| {
                format!(
                    "{} {} {} {}",
                    format_number(c.min_x),
                    format_number(c.min_z),
                    format_number(c.max_x),
                    format_number(c.max_z)
                )
            })
            .collect::<Vec<_>>()
            .join(", ");
        rig = rig.attr("vreud-navmesh-constraint", props([("cells", cells)]));
    }
    rig.child(
        MarkupNode::new("a-entity")
            .attr("camera", "")
            .attr("look-controls", "")
            .attr("wasd-controls", "")
            .attr("vreud-gaze", ""),
    )
    .child(
        MarkupNode::new("a-entity")
            .attr("laser-controls", "hand: left")
            .attr("vreud-controller", "hand: left"),
    )
    .child(
        MarkupNode::new("a-entity")
            .attr("laser-controls", "hand: right")
            .attr("vreud-controller", "hand: right"),
    )
}

fn asset_node(
    asset: &AssetRef,
    id: &str,
    assets: &AssetTable,
    embed: bool,
) -> Result<MarkupNode, Diagnostic> {
    let entry = assets.get(asset).ok_or_else(|| {
        Diagnostic::error(G_ASSET, "", format!("asset `{asset}` is not resolved"))
    })?;
    let src = if embed {
        let bytes = fs::read(&entry.path).map_err(|e| {
            Diagnostic::error(G_ASSET, "", format!("cannot read asset `{asset}`: {e}"))
        })?;
        let mime = content_type(asset.extension().unwrap_or(""));
        format!("data:{mime};base64,{}", BASE64.encode(bytes))
    } else {
        asset.to_string()
    };
    let tag = match entry.class {
        MediaClass::Image => "img",
        MediaClass::Video => "video",
        MediaClass::Pdf | MediaClass::Model => "a-asset-item",
    };
    let n = MarkupNode::new(tag).attr("id", id).attr("src", src);
    Ok(if entry.class == MediaClass::Video {
        n.attr("preload", "auto").attr("playsinline", "")
    } else {
        n
    })
}

/// Builds the complete HTML document. Fails with G001 on an invalid package
/// and G002 when a referenced asset is missing from `assets`.
pub fn generate(
    pkg: &ScenePackage,
    assets: &AssetTable,
    opts: &GenOptions,
) -> Result<String, Vec<Diagnostic>> {
    let diags = validate(pkg);
    if has_errors(&diags) {
        let mut out = vec![Diagnostic::error(
            G_INVALID,
            "",
            "the package has validation errors",
        )];
        out.extend(diags.into_iter().filter(Diagnostic::is_error));
        return Err(out);
    }
    if opts.runtime_url.is_empty() {
        return Err(vec![Diagnostic::error(
            G_OPTIONS,
            "",
            "runtime url must not be empty",
        )]);
    }

    let asset_ids = AssetIds::collect(pkg);
    let mut errors = Vec::new();
    let mut scene = MarkupNode::new("a-scene").attr(
        "background",
        props([("color", pkg.settings.sky_color.hex())]),
    );

    if !asset_ids.order.is_empty() {
        let mut decl = MarkupNode::new("a-assets");
        for a in &asset_ids.order {
            match asset_node(a, &asset_ids.ids[a], assets, opts.embed_assets) {
                Ok(n) => decl.children.push(n),
                Err(d) => errors.push(d),
            }
        }
        scene.children.push(decl);
    }

    let mut effects = emit_interaction_components(pkg);
    let mut taskbar_tasks = None;
    let mut areas: BTreeMap<&str, MarkupNode> = BTreeMap::new();
    let mut area_order = Vec::new();
    for (i, e) in pkg.entities.iter().enumerate() {
        let mut node = match entity_node(e, assets, &asset_ids, Some(i)) {
            Ok(n) => n,
            Err(d) => {
                errors.push(d);
                continue;
            }
        };
        if matches!(e.body, EntityBody::Taskbar) {
            let tasks = taskbar_tasks
                .get_or_insert_with(|| ids(pkg.tasks.iter().map(|t| t.id.as_str())))
                .clone();
            node.set_attr("vreud-taskbar", props([("tasks", tasks)]));
        }
        for (name, value) in effects.remove(&e.id).unwrap_or_default() {
            node.set_attr(name, value);
        }
        node.set_attr("data-name", e.name.as_str());
        if matches!(e.body, EntityBody::Area { .. }) {
            areas.insert(e.id.as_str(), node);
            area_order.push(e.id.as_str());
        } else {
            scene.children.push(node);
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }

    let followers = pkg
        .tasks
        .iter()
        .flat_map(|t| std::iter::once(None).chain(t.activities.iter().map(|a| a.kind.area())));
    for (node, area) in emit_task_entities(pkg).into_iter().zip(followers) {
        scene.children.push(node);
        if let Some(n) = area.and_then(|a| areas.remove(a.as_str())) {
            scene.children.push(n);
        }
    }
    for id in area_order {
        if let Some(n) = areas.remove(id) {
            scene.children.push(n);
        }
    }
    scene.children.push(emit_user_controls(pkg));

    let head = MarkupNode::new("head")
        .child(MarkupNode::new("meta").attr("charset", "utf-8"))
        .child(MarkupNode::new("title").text(opts.title.as_str()))
        .child(MarkupNode::new("script").attr("src", opts.runtime_url.as_str()));
    let html = MarkupNode::new("html")
        .child(head)
        .child(MarkupNode::new("body").child(scene));
    Ok(format!("<!DOCTYPE html>\n{}", html.render()))
}
