//! Seeded generators for valid packages, event scripts and states.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vreud_core::patterns::{apply_delta, expand, PatternInstance};
use vreud_core::sim::{ExternalEvent, TouchPhase};
use vreud_core::validate::{check_condition_set, validate};
use vreud_core::*;

const NAMES: &[&str] = &[
    "red", "green", "blue", "white", "black", "yellow", "gray", "orange", "Purple", "CYAN",
];

const TEXT_POOL: &[char] = &[
    'a', 'b', 'Z', 'q', ' ', '0', '7', '"', '\'', '<', '>', '&', '\\', '/', 'é', '日', '🙂', '\n',
    '\t', '-', ';', ':', '#',
];

/// Kinds drawn for ordinary entities; areas come from tasks or stand alone.
const KINDS: &[EntityKind] = &[
    EntityKind::Box,
    EntityKind::Box,
    EntityKind::Cylinder,
    EntityKind::Sphere,
    EntityKind::Plane,
    EntityKind::Model,
    EntityKind::Image,
    EntityKind::Video,
    EntityKind::Video,
    EntityKind::Pdf,
    EntityKind::Pdf,
    EntityKind::Button,
    EntityKind::Button,
    EntityKind::Counter,
    EntityKind::Counter,
    EntityKind::PressurePlate,
    EntityKind::PressurePlate,
    EntityKind::Taskbar,
    EntityKind::Navmesh,
    EntityKind::Area,
];

pub struct Gen {
    rng: ChaCha8Rng,
    next: u32,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            next: 0,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn fresh_id(&mut self, prefix: &str) -> EntityId {
        self.next += 1;
        EntityId::new(format!("{prefix}{}", self.next)).expect("generated ids are valid")
    }

    /// Quarter-grid values half the time so equalities and boundaries occur.
    pub fn coord(&mut self) -> f64 {
        if self.chance(0.5) {
            f64::from(self.rng.gen_range(-20i32..=20)) / 4.0
        } else {
            self.rng.gen_range(-10.0..10.0)
        }
    }

    pub fn positive(&mut self) -> f64 {
        if self.chance(0.5) {
            f64::from(self.rng.gen_range(1i32..=16)) / 4.0
        } else {
            self.rng.gen_range(0.01..5.0)
        }
    }

    pub fn vec3(&mut self) -> Vec3 {
        Vec3::new(self.coord(), self.coord(), self.coord())
    }

    pub fn positive_vec3(&mut self) -> Vec3 {
        Vec3::new(self.positive(), self.positive(), self.positive())
    }

    pub fn color(&mut self) -> Color {
        if self.chance(0.5) {
            Color::parse(NAMES.choose(&mut self.rng).unwrap()).unwrap()
        } else {
            Color::from_rgb(self.rng.gen_range(0..=0xffffff))
        }
    }

    /// A color as an author might write it: a name in any case or hex.
    pub fn color_text(&mut self) -> String {
        match self.rng.gen_range(0..3) {
            0 => NAMES.choose(&mut self.rng).unwrap().to_string(),
            1 => self.color().hex(),
            _ => self.color().hex().to_uppercase(),
        }
    }

    pub fn text(&mut self) -> String {
        let len = self.rng.gen_range(0..12);
        (0..len)
            .map(|_| *TEXT_POOL.choose(&mut self.rng).unwrap())
            .collect()
    }

    fn body(&mut self, kind: EntityKind, id: &EntityId) -> EntityBody {
        let asset = |ext: &str| AssetRef::new(format!("assets/{id}.{ext}"));
        match kind {
            EntityKind::Box => EntityBody::Box {
                width: self.positive(),
                height: self.positive(),
                depth: self.positive(),
            },
            EntityKind::Cylinder => EntityBody::Cylinder {
                radius: self.positive(),
                height: self.positive(),
            },
            EntityKind::Sphere => EntityBody::Sphere {
                radius: self.positive(),
            },
            EntityKind::Plane => EntityBody::Plane {
                width: self.positive(),
                height: self.positive(),
            },
            EntityKind::Model => EntityBody::Model {
                src: asset(if self.chance(0.5) { "glb" } else { "gltf" }),
            },
            EntityKind::Image => EntityBody::Image {
                src: asset(if self.chance(0.5) { "png" } else { "jpg" }),
                width: self.positive(),
                height: self.positive(),
            },
            EntityKind::Video => EntityBody::Video {
                src: asset(if self.chance(0.5) { "mp4" } else { "webm" }),
                width: self.positive(),
                height: self.positive(),
                duration_seconds: self.positive(),
            },
            EntityKind::Pdf => {
                let page_count = self.rng.gen_range(1..=6);
                EntityBody::Pdf {
                    src: asset("pdf"),
                    page_count,
                    current_page: self.rng.gen_range(1..=page_count),
                }
            }
            EntityKind::Button => EntityBody::Button,
            EntityKind::Counter => {
                let target = self.rng.gen_range(1..=5);
                EntityBody::Counter {
                    target,
                    current: self.rng.gen_range(0..=target),
                }
            }
            EntityKind::PressurePlate => EntityBody::PressurePlate {
                width: self.positive(),
                depth: self.positive(),
                occupied: self.chance(0.2),
            },
            EntityKind::Taskbar => EntityBody::Taskbar,
            EntityKind::Navmesh => {
                let cells = (0..self.rng.gen_range(1..=3))
                    .map(|_| {
                        let (x, z) = (self.coord(), self.coord());
                        NavCell {
                            min_x: x,
                            min_z: z,
                            max_x: x + self.positive(),
                            max_z: z + self.positive(),
                        }
                    })
                    .collect();
                EntityBody::Navmesh { cells }
            }
            EntityKind::Area => EntityBody::Area {
                size: self.positive_vec3(),
                linked_activity: None,
            },
        }
    }

    pub fn entity(&mut self, kind: EntityKind) -> Entity {
        let id = self.fresh_id(if kind == EntityKind::Area {
            "Area"
        } else {
            "E"
        });
        let body = self.body(kind, &id);
        let name = if self.chance(0.5) {
            self.text()
        } else {
            id.to_string()
        };
        Entity {
            name,
            position: self.vec3(),
            rotation: if self.chance(0.5) {
                Vec3::ZERO
            } else {
                Vec3::new(
                    self.rng.gen_range(-180.0..180.0),
                    f64::from(self.rng.gen_range(-4i32..4)) * 45.0,
                    0.0,
                )
            },
            scale: if self.chance(0.7) {
                Vec3::ONE
            } else {
                self.positive_vec3()
            },
            visible: self.chance(0.85),
            color: (kind.is_color_bearing() && self.chance(0.6)).then(|| self.color()),
            texture: (kind.is_geometry() && self.chance(0.2))
                .then(|| AssetRef::new(format!("assets/{id}-texture.png"))),
            shadow: self.chance(0.3),
            physics: if self.chance(0.3) {
                Physics::Static
            } else {
                Physics::None
            },
            id,
            body,
        }
    }

    fn literal_for(&mut self, attribute: Attribute, around: Option<f64>) -> Literal {
        match attribute.value_type() {
            ValueType::Color => Literal::Text(self.color_text()),
            ValueType::Bool => Literal::Bool(self.chance(0.5)),
            ValueType::Number if attribute.is_integral() => {
                Literal::Number(f64::from(self.rng.gen_range(0i32..=7)))
            }
            ValueType::Number => match around {
                Some(v) if self.chance(0.4) => Literal::Number(v),
                _ => Literal::Number(self.coord()),
            },
        }
    }

    /// A well-typed condition over `pkg`, possibly conflicting with others.
    pub fn condition(&mut self, pkg: &ScenePackage) -> Option<Condition> {
        let spatial: Vec<&Entity> = pkg
            .entities
            .iter()
            .filter(|e| e.kind().is_spatial())
            .collect();
        let areas: Vec<&Entity> = pkg
            .entities
            .iter()
            .filter(|e| e.kind() == EntityKind::Area)
            .collect();
        if !areas.is_empty() && self.chance(0.2) {
            let entity = spatial.choose(&mut self.rng)?.id.clone();
            let area = areas.choose(&mut self.rng)?.id.clone();
            return Some(Condition::InArea { entity, area });
        }
        let e = spatial.choose(&mut self.rng)?;
        let attrs: Vec<Attribute> = Attribute::ALL
            .iter()
            .copied()
            .filter(|a| a.applies_to(e.kind()))
            .collect();
        let attribute = *attrs.choose(&mut self.rng)?;
        let op = if attribute.value_type() == ValueType::Number {
            *CompareOp::ALL.choose(&mut self.rng).unwrap()
        } else if self.chance(0.5) {
            CompareOp::Eq
        } else {
            CompareOp::Ne
        };
        let around = match attribute {
            Attribute::PositionX => Some(e.position.x),
            Attribute::PositionY => Some(e.position.y),
            Attribute::PositionZ => Some(e.position.z),
            _ => None,
        };
        Some(Condition::Attribute {
            entity: e.id.clone(),
            attribute,
            op,
            value: self.literal_for(attribute, around),
        })
    }

    /// Up to `max` conditions, dropping any that would make the set invalid.
    pub fn condition_set(&mut self, pkg: &ScenePackage, max: usize) -> Vec<Condition> {
        let mut set = Vec::new();
        for _ in 0..self.rng.gen_range(0..=max) {
            let Some(c) = self.condition(pkg) else { break };
            set.push(c);
            if !check_condition_set(&set, "c", pkg).is_empty() {
                set.pop();
            }
        }
        set
    }

    pub fn params(&mut self, effect: EffectKind) -> BTreeMap<String, Literal> {
        effect
            .param_schema()
            .iter()
            .map(|(name, ty)| {
                let value = match ty {
                    ParamType::Color => Literal::Text(self.color_text()),
                    ParamType::Bool => Literal::Bool(self.chance(0.5)),
                    ParamType::Vec3 => Literal::Vec3(self.vec3()),
                    ParamType::PositiveVec3 => Literal::Vec3(self.positive_vec3()),
                };
                (name.to_string(), value)
            })
            .collect()
    }

    pub fn interaction(&mut self, pkg: &ScenePackage) -> Option<Interaction> {
        let sources: Vec<&Entity> = pkg
            .entities
            .iter()
            .filter(|e| !events_for(e.kind()).is_empty())
            .collect();
        let targets: Vec<&Entity> = pkg
            .entities
            .iter()
            .filter(|e| !effects_for(e.kind()).is_empty())
            .collect();
        let source = sources.choose(&mut self.rng)?;
        let target = targets.choose(&mut self.rng)?;
        let event = *events_for(source.kind()).choose(&mut self.rng)?;
        let special: Vec<EffectKind> = effects_for(target.kind())
            .iter()
            .copied()
            .filter(|f| f.param_schema().is_empty())
            .collect();
        let effect = match special.choose(&mut self.rng) {
            Some(f) if self.chance(0.6) => *f,
            _ => *effects_for(target.kind()).choose(&mut self.rng)?,
        };
        let (source, target) = (source.id.clone(), target.id.clone());
        let params = self.params(effect);
        let conditions = self.condition_set(pkg, 3);
        Some(Interaction {
            id: self.fresh_id("I"),
            source,
            event,
            target,
            effect,
            params,
            conditions,
        })
    }

    fn activity(&mut self, pkg: &mut ScenePackage) -> Activity {
        let id = self.fresh_id("A");
        let trackable: Vec<EntityId> = pkg
            .entities
            .iter()
            .filter(|e| e.kind().is_spatial() && e.kind() != EntityKind::Area)
            .map(|e| e.id.clone())
            .collect();
        let media: Vec<EntityId> = pkg
            .entities
            .iter()
            .filter(|e| {
                matches!(
                    e.kind(),
                    EntityKind::Video | EntityKind::Pdf | EntityKind::Counter
                )
            })
            .map(|e| e.id.clone())
            .collect();
        let linked_area = |g: &mut Gen, pkg: &mut ScenePackage| {
            let mut area = g.entity(EntityKind::Area);
            if let EntityBody::Area {
                linked_activity, ..
            } = &mut area.body
            {
                *linked_activity = Some(id.clone());
            }
            let at = g.rng.gen_range(0..=pkg.entities.len());
            let area_id = area.id.clone();
            pkg.entities.insert(at, area);
            area_id
        };
        let kind = match self.rng.gen_range(0..4) {
            0 if !media.is_empty() => ActivityType::CompleteMedia {
                entity: media.choose(&mut self.rng).unwrap().clone(),
            },
            1 if !trackable.is_empty() => ActivityType::LookAt {
                entity: trackable.choose(&mut self.rng).unwrap().clone(),
            },
            2 if !trackable.is_empty() => {
                let entity = trackable.choose(&mut self.rng).unwrap().clone();
                ActivityType::PlaceInArea {
                    entity,
                    area: linked_area(self, pkg),
                }
            }
            _ => ActivityType::EnterArea {
                area: linked_area(self, pkg),
            },
        };
        Activity {
            id,
            name: self.text(),
            description: self.text(),
            kind,
        }
    }

    /// A package that passes validation with zero errors.
    pub fn package(&mut self) -> ScenePackage {
        let mut pkg = ScenePackage::default();
        if self.chance(0.5) {
            pkg.settings.sky_color = self.color();
            pkg.settings.user_start = self.vec3();
        }
        if self.chance(0.2) {
            pkg.settings.runtime_url = format!("https://cdn.example.org/{}.js", self.next);
        }
        let mut has_navmesh = false;
        for _ in 0..self.rng.gen_range(0..=10) {
            let kind = *KINDS.choose(&mut self.rng).unwrap();
            if kind == EntityKind::Navmesh {
                if has_navmesh {
                    continue;
                }
                has_navmesh = true;
            }
            pkg.entities.push(self.entity(kind));
        }
        for _ in 0..self.rng.gen_range(0..=2) {
            let id = self.fresh_id("T");
            let activities = (0..self.rng.gen_range(1..=3))
                .map(|_| self.activity(&mut pkg))
                .collect();
            pkg.tasks.push(Task {
                id,
                name: self.text(),
                description: self.text(),
                activities,
            });
        }
        if !pkg.tasks.is_empty()
            && !pkg.entities.iter().any(|e| e.kind() == EntityKind::Taskbar)
            && self.chance(0.8)
        {
            let taskbar = self.entity(EntityKind::Taskbar);
            pkg.entities.push(taskbar);
        }
        for _ in 0..self.rng.gen_range(0..=8) {
            if let Some(i) = self.interaction(&pkg) {
                pkg.interactions.push(i);
            }
        }
        if self.chance(0.3) {
            if let Some(inst) = self.video_binding(&pkg) {
                if let Ok(next) = expand(&inst, &pkg).and_then(|d| apply_delta(&pkg, &d)) {
                    pkg = next;
                }
            }
        }
        let errors: Vec<_> = validate(&pkg)
            .into_iter()
            .filter(Diagnostic::is_error)
            .collect();
        assert!(errors.is_empty(), "generator produced {errors:?}");
        pkg
    }

    /// A well-typed binding of the video pattern, if the package allows one.
    pub fn video_binding(&mut self, pkg: &ScenePackage) -> Option<PatternInstance> {
        let videos: Vec<&Entity> = pkg
            .entities
            .iter()
            .filter(|e| e.kind() == EntityKind::Video)
            .collect();
        let pressable: Vec<&Entity> = pkg
            .entities
            .iter()
            .filter(|e| e.kind().accepts_event(EventKind::Press))
            .collect();
        let video = videos.choose(&mut self.rng)?.id.clone();
        let play = pressable.choose(&mut self.rng)?.id.clone();
        let mut inst = PatternInstance::new("video-interactivity")
            .bind("video", video)
            .bind("playTrigger", play);
        if self.chance(0.5) {
            inst = inst.bind("pauseTrigger", pressable.choose(&mut self.rng)?.id.clone());
        }
        Some(inst)
    }

    /// A point near a random zone of `pkg` half the time, anywhere otherwise.
    fn point(&mut self, pkg: &ScenePackage) -> Vec3 {
        let zones: Vec<(Vec3, Vec3)> = pkg
            .entities
            .iter()
            .filter_map(|e| match &e.body {
                EntityBody::Area { size, .. } => Some((e.position, size.scale_by(e.scale))),
                EntityBody::PressurePlate { width, depth, .. } => Some((
                    Vec3::new(e.position.x, e.position.y + 1.25, e.position.z),
                    Vec3::new(width * e.scale.x, 2.5, depth * e.scale.z),
                )),
                _ => None,
            })
            .collect();
        match zones.choose(&mut self.rng) {
            Some((c, s)) if self.chance(0.6) => {
                let mut off = |half: f64| {
                    if self.chance(0.2) {
                        half * if self.chance(0.5) { 1.0 } else { -1.0 }
                    } else {
                        self.rng.gen_range(-1.5..1.5) * half
                    }
                };
                Vec3::new(
                    c.x + off(s.x / 2.0),
                    c.y + off(s.y / 2.0),
                    c.z + off(s.z / 2.0),
                )
            }
            _ => self.vec3(),
        }
    }

    pub fn event(&mut self, pkg: &ScenePackage) -> ExternalEvent {
        let ids: Vec<EntityId> = pkg.entities.iter().map(|e| e.id.clone()).collect();
        let spatial: Vec<EntityId> = pkg
            .entities
            .iter()
            .filter(|e| e.kind().is_spatial())
            .map(|e| e.id.clone())
            .collect();
        let pick = |g: &mut Gen, from: &[EntityId]| from.choose(&mut g.rng).cloned();
        loop {
            let ev = match self.rng.gen_range(0..10) {
                0..=2 => Some(ExternalEvent::UserMove(self.point(pkg))),
                3 => Some(ExternalEvent::UserLook(pick(self, &ids))),
                4..=5 => pick(self, &ids).map(ExternalEvent::ControllerPress),
                6 => pick(self, &ids).map(|id| {
                    let phase = if self.chance(0.5) {
                        TouchPhase::Begin
                    } else {
                        TouchPhase::End
                    };
                    ExternalEvent::ControllerTouch(id, phase)
                }),
                7..=8 => pick(self, &spatial).map(|id| {
                    let p = self.point(pkg);
                    ExternalEvent::PlaceEntity(id, p)
                }),
                _ => Some(ExternalEvent::AdvanceTime(self.positive())),
            };
            if let Some(ev) = ev {
                return ev;
            }
        }
    }

    pub fn script(&mut self, pkg: &ScenePackage, max: usize) -> Vec<ExternalEvent> {
        (0..self.rng.gen_range(0..=max))
            .map(|_| self.event(pkg))
            .collect()
    }
}

pub fn valid_package(seed: u64) -> ScenePackage {
    Gen::new(seed).package()
}
