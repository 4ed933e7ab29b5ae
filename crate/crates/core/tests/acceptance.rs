//! Acceptance gate. Runs every criterion with its time limit and prints one
//! line per criterion; exits non-zero if any fails.

mod support;

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::Value;

use support::gen::{valid_package, Gen};
use support::{check_golden, fixtures, scene, scene_dir, script};
use vreud_core::generate::{generate, GenOptions};
use vreud_core::io::{parse_package, resolve_assets, serialize_canonical};
use vreud_core::patterns::{apply_delta, expand, PatternInstance};
use vreud_core::sim::{containment, Detail, ExternalEvent, Simulation, Trace};
use vreud_core::validate::validate;
use vreud_core::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn id(s: &str) -> EntityId {
    EntityId::new(s).unwrap()
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

/// Runs `script_name` against `scene_name`, checks both goldens and returns
/// the trace with the parsed digest.
fn scenario(scene_name: &str, script_name: &str, golden: &str) -> Result<(Trace, Value), String> {
    let pkg = scene(scene_name);
    let mut sim = Simulation::new(&pkg).map_err(|a| a.message)?;
    let trace = sim.run(&script(script_name));
    ensure(
        trace.abort.is_none(),
        format!("{golden}: {:?}", trace.abort),
    )?;
    check_golden(
        &format!("traces/{golden}.json"),
        &trace.to_canonical_string(),
    )?;
    let digest = sim.digest();
    check_golden(&format!("digests/{golden}.json"), &digest)?;
    Ok((
        trace,
        serde_json::from_str(&digest).map_err(|e| e.to_string())?,
    ))
}

fn fig3() -> Outcome {
    let (red, red_digest) = scenario("fig3-red", "press-box1", "fig3-red")?;
    ensure(red.records.len() == 1, "red: one record")?;
    ensure(
        red.records[0].fired_interactions.is_empty(),
        "red box must not fire",
    )?;
    ensure(
        red_digest["entities"]["Box1"]["color"] == "#ff0000",
        "red box stays red",
    )?;
    let (green, green_digest) = scenario("fig3-green", "press-box1", "fig3-green")?;
    ensure(
        green.records[0].fired_interactions == [id("ChangeColor")],
        "green box fires exactly once",
    )?;
    ensure(
        green_digest["entities"]["Box1"]["color"] == "#0000ff",
        "green box turns blue",
    )?;
    Ok("red: 0 fired; green: 1 fired, #0000ff".into())
}

fn combined() -> Outcome {
    let pkg = scene("combined");
    let pages = match pkg.entity("Presentation").map(|e| &e.body) {
        Some(EntityBody::Pdf { page_count, .. }) => *page_count as usize,
        _ => return Err("no presentation".into()),
    };
    let events = script("combined");
    let presses = events
        .iter()
        .filter(|e| matches!(e, ExternalEvent::ControllerPress(_)))
        .count();
    ensure(presses == pages - 1, "script presses pageCount-1 times")?;
    ensure(
        matches!(events.first(), Some(ExternalEvent::UserMove(_)))
            && matches!(events.last(), Some(ExternalEvent::UserMove(_))),
        "script enters first and leaves last",
    )?;
    let (trace, digest) = scenario("combined", "combined", "combined")?;
    let presentation = &digest["entities"]["Presentation"];
    ensure(presentation["visible"] == false, "presentation hidden")?;
    ensure(
        digest["entities"]["Plate1"]["color"] == "#00ff00",
        "plate green",
    )?;
    let completed = trace.records.iter().any(|r| {
        r.internal_events
            .iter()
            .any(|e| e.entity == "Presentation" && e.kind == EventKind::Completed)
    });
    ensure(completed, "completed internal event present")?;
    Ok(format!(
        "{} records, plate #00ff00, hidden",
        trace.records.len()
    ))
}

fn task() -> Outcome {
    let mut orders = Vec::new();
    for order in ["task-area-first", "task-media-first"] {
        let (trace, digest) = scenario("task", order, order)?;
        ensure(
            digest["tasks"]["Talk"] == true,
            format!("{order}: task done"),
        )?;
        let completes = |what: &str| {
            trace
                .records
                .iter()
                .position(|r| r.activity_completions.iter().any(|a| a == what))
        };
        let (area, media) = (completes("GoToStage"), completes("FinishSlides"));
        let (Some(area), Some(media)) = (area, media) else {
            return Err(format!("{order}: both activities must complete"));
        };
        let hidden = trace.records[area]
            .state_changes
            .iter()
            .any(|c| c.entity == "Stage" && c.attribute == "visible" && c.new == false);
        ensure(hidden, format!("{order}: Stage hidden on completion"))?;
        ensure(
            digest["entities"]["Stage"]["visible"] == false,
            format!("{order}: Stage stays hidden"),
        )?;
        let task_step = trace
            .records
            .iter()
            .position(|r| r.task_completions.iter().any(|t| t == "Talk"));
        ensure(
            task_step == Some(area.max(media)),
            format!("{order}: task completes with its last activity"),
        )?;
        orders.push(if area < media {
            "area,media"
        } else {
            "media,area"
        });
    }
    ensure(
        orders == ["area,media", "media,area"],
        "both orders covered",
    )?;
    Ok("both orders complete Talk; Stage hidden".into())
}

fn validator_corpus() -> Outcome {
    let dir = fixtures().join("invalid");
    let manifest: Value = serde_json::from_str(
        &fs::read_to_string(dir.join("expected.json")).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let cases = manifest.as_object().ok_or("manifest is an object")?;
    ensure(cases.len() >= 10, "at least ten fixtures")?;
    let mut families = Vec::new();
    for (name, want) in cases {
        let case = dir.join(name);
        let text = fs::read_to_string(case.join("scene.json")).map_err(|e| e.to_string())?;
        let diags = match parse_package(&text) {
            Err(diags) => diags,
            Ok(parsed) => {
                let mut d = validate(&parsed.package);
                if let Err(asset_diags) = resolve_assets(&parsed.package, &case) {
                    d.extend(asset_diags);
                }
                d
            }
        };
        let errors: Vec<(String, String)> = diags
            .iter()
            .filter(|d| d.is_error())
            .map(|d| (d.code.to_string(), d.path.clone()))
            .collect();
        let expected = vec![(
            want["code"].as_str().unwrap_or_default().to_string(),
            want["path"].as_str().unwrap_or_default().to_string(),
        )];
        ensure(
            errors == expected,
            format!("{name}: got {errors:?}, want {expected:?}"),
        )?;
        families.push(expected[0].0.clone());
    }
    for code in [
        "P002", "V001", "V003", "V004", "V005", "V006a", "V006b", "V007", "V010", "A002",
    ] {
        ensure(
            families.iter().any(|c| c == code),
            format!("{code} covered"),
        )?;
    }
    Ok(format!("{} fixtures, exact code and path", cases.len()))
}

const COLORS: &[&str] = &["red", "green", "blue", "white", "#123456"];

/// Independent conjunction over raw state fields. Region bounds are compared
/// as `lo <= p <= hi`; all generated geometry lies on a quarter grid, so this
/// is exact.
fn oracle(state: &vreud_core::sim::SimState, conditions: &[Condition]) -> bool {
    let find = |name: &EntityId| {
        state
            .entities
            .iter()
            .find(|e| &e.id == name)
            .expect("conditions reference state entities")
    };
    let mut all = true;
    for c in conditions {
        let holds = match c {
            Condition::InArea { entity, area } => {
                let p = find(entity).position;
                let a = find(area);
                let Detail::Area { size, .. } = a.detail else {
                    unreachable!()
                };
                let (c, s) = (a.position, size);
                let sx = s.x * a.scale.x;
                let sy = s.y * a.scale.y;
                let sz = s.z * a.scale.z;
                c.x - sx / 2.0 <= p.x
                    && p.x <= c.x + sx / 2.0
                    && c.y - sy / 2.0 <= p.y
                    && p.y <= c.y + sy / 2.0
                    && c.z - sz / 2.0 <= p.z
                    && p.z <= c.z + sz / 2.0
            }
            Condition::Attribute {
                entity,
                attribute,
                op,
                value,
            } => {
                let e = find(entity);
                match (attribute, value) {
                    (Attribute::Color, Literal::Text(t)) => {
                        let have = e.color.expect("color-bearing").hex();
                        let want = Color::parse(t).unwrap().hex();
                        match op {
                            CompareOp::Eq => have == want,
                            CompareOp::Ne => have != want,
                            _ => unreachable!(),
                        }
                    }
                    (Attribute::Visible | Attribute::Occupied, Literal::Bool(b)) => {
                        let have = if *attribute == Attribute::Visible {
                            e.visible
                        } else {
                            match e.detail {
                                Detail::Plate { occupied, .. } => occupied,
                                _ => unreachable!(),
                            }
                        };
                        match op {
                            CompareOp::Eq => have == *b,
                            CompareOp::Ne => have != *b,
                            _ => unreachable!(),
                        }
                    }
                    (_, Literal::Number(n)) => {
                        let have = match (attribute, &e.detail) {
                            (Attribute::PositionX, _) => e.position.x,
                            (Attribute::PositionY, _) => e.position.y,
                            (Attribute::PositionZ, _) => e.position.z,
                            (Attribute::CurrentPage, Detail::Pdf { current_page, .. }) => {
                                f64::from(*current_page)
                            }
                            (Attribute::Current, Detail::Counter { current, .. }) => {
                                f64::from(*current)
                            }
                            _ => unreachable!(),
                        };
                        match op {
                            CompareOp::Eq => have == *n,
                            CompareOp::Ne => have != *n,
                            CompareOp::Lt => have < *n,
                            CompareOp::Le => have <= *n,
                            CompareOp::Gt => have > *n,
                            CompareOp::Ge => have >= *n,
                        }
                    }
                    _ => unreachable!(),
                }
            }
        };
        all = all && holds;
    }
    all
}

fn grid(g: &mut Gen, lo: i32, hi: i32) -> f64 {
    f64::from(g.rng().gen_range(lo..=hi)) / 4.0
}

fn oracle_base() -> ScenePackage {
    let mut pkg = ScenePackage::default();
    for (name, kind) in [
        ("B1", EntityKind::Box),
        ("B2", EntityKind::Sphere),
        ("P1", EntityKind::Pdf),
        ("C1", EntityKind::Counter),
        ("L1", EntityKind::PressurePlate),
        ("A1", EntityKind::Area),
        ("A2", EntityKind::Area),
        ("Trig", EntityKind::Button),
        ("Sink", EntityKind::Box),
    ] {
        let mut e = default_entity(kind, id(name));
        match &mut e.body {
            EntityBody::Pdf {
                src, page_count, ..
            } => {
                *src = AssetRef::new("assets/p.pdf");
                *page_count = 6;
            }
            EntityBody::Counter { target, .. } => *target = 6,
            _ => {}
        }
        pkg.entities.push(e);
    }
    pkg
}

/// Randomizes every condition-relevant field of the simulation state.
fn randomize(g: &mut Gen, sim: &mut Simulation) {
    let state = sim.state_mut();
    let areas: Vec<(Vec3, Vec3)> = (0..2)
        .map(|_| {
            let c = Vec3::new(grid(g, -8, 8), grid(g, -8, 8), grid(g, -8, 8));
            let s = Vec3::new(grid(g, 1, 12), grid(g, 1, 12), grid(g, 1, 12));
            (c, s)
        })
        .collect();
    for e in state.entities.iter_mut() {
        if let Detail::Area { size, .. } = &mut e.detail {
            let (c, s) = areas[usize::from(e.id == "A2")];
            e.position = c;
            *size = s;
            continue;
        }
        e.position = match areas.choose(g.rng()) {
            Some((c, s)) if g.chance(0.4) => {
                let mut axis = |c: f64, s: f64| match g.rng().gen_range(0..4) {
                    0 => c - s / 2.0,
                    1 => c + s / 2.0,
                    _ => c + grid(g, -4, 4) * s / 2.0,
                };
                Vec3::new(axis(c.x, s.x), axis(c.y, s.y), axis(c.z, s.z))
            }
            _ => Vec3::new(grid(g, -8, 8), grid(g, -8, 8), grid(g, -8, 8)),
        };
        e.visible = e.id == "Trig" || g.chance(0.7);
        if e.color.is_some() {
            e.color = Some(Color::parse(COLORS.choose(g.rng()).unwrap()).unwrap());
        }
        match &mut e.detail {
            Detail::Pdf { current_page, .. } => *current_page = g.rng().gen_range(1..=6),
            Detail::Counter { current, .. } => *current = g.rng().gen_range(0..=6),
            Detail::Plate { occupied, .. } => *occupied = g.chance(0.5),
            _ => {}
        }
    }
}

/// A well-typed condition whose value often equals the current state.
fn oracle_condition(g: &mut Gen, state: &vreud_core::sim::SimState) -> Condition {
    let spatial: Vec<&vreud_core::sim::EntityState> = state.entities.iter().collect();
    let e = *spatial.choose(g.rng()).unwrap();
    if g.chance(0.2) {
        let area = if g.chance(0.5) { "A1" } else { "A2" };
        return Condition::InArea {
            entity: e.id.clone(),
            area: id(area),
        };
    }
    let attrs: Vec<Attribute> = Attribute::ALL
        .iter()
        .copied()
        .filter(|a| a.applies_to(e.kind))
        .collect();
    let attribute = *attrs.choose(g.rng()).unwrap();
    let current = match attribute {
        Attribute::PositionX => e.position.x,
        Attribute::PositionY => e.position.y,
        Attribute::PositionZ => e.position.z,
        Attribute::CurrentPage => f64::from(e.current_page().unwrap()),
        Attribute::Current => f64::from(e.counter().unwrap()),
        _ => 0.0,
    };
    let value = match attribute.value_type() {
        ValueType::Color => Literal::Text(COLORS.choose(g.rng()).unwrap().to_string()),
        ValueType::Bool => Literal::Bool(g.chance(0.5)),
        ValueType::Number if g.chance(0.4) => Literal::Number(current),
        ValueType::Number if attribute.is_integral() => {
            Literal::Number(f64::from(g.rng().gen_range(0..=7)))
        }
        ValueType::Number => Literal::Number(grid(g, -8, 8)),
    };
    let op = if attribute.value_type() == ValueType::Number {
        *CompareOp::ALL.choose(g.rng()).unwrap()
    } else if g.chance(0.5) {
        CompareOp::Eq
    } else {
        CompareOp::Ne
    };
    Condition::Attribute {
        entity: e.id.clone(),
        attribute,
        op,
        value,
    }
}

fn condition_oracle() -> Outcome {
    const CASES: usize = 10_000;
    let base = oracle_base();
    let mut g = Gen::new(0x5eed);
    let (mut checked, mut fired, mut rejected) = (0, 0, 0);
    while checked < CASES {
        let mut probe = Simulation::new(&base).map_err(|a| a.message)?;
        randomize(&mut g, &mut probe);
        let n = g.rng().gen_range(1..=4);
        let conditions: Vec<Condition> = (0..n)
            .map(|_| oracle_condition(&mut g, probe.state()))
            .collect();
        let mut pkg = base.clone();
        pkg.interactions.push(Interaction {
            id: id("Gate"),
            source: id("Trig"),
            event: EventKind::Press,
            target: id("Sink"),
            effect: EffectKind::SetRotation,
            params: Effect::SetRotation(Vec3::new(0.0, 45.0, 0.0)).params(),
            conditions: conditions.clone(),
        });
        let Ok(mut sim) = Simulation::new(&pkg) else {
            rejected += 1;
            continue;
        };
        *sim.state_mut() = probe.state().clone();
        let expected = oracle(sim.state(), &conditions);
        let (record, abort) = sim.dispatch(&ExternalEvent::ControllerPress(id("Trig")));
        ensure(abort.is_none(), "dispatch aborted")?;
        let got = record.fired_interactions.contains(&id("Gate"));
        ensure(
            got == expected,
            format!("case {checked}: simulator {got}, oracle {expected} for {conditions:?}"),
        )?;
        fired += usize::from(got);
        checked += 1;
    }
    ensure(
        fired > CASES / 20 && fired < CASES - CASES / 20,
        format!("degenerate sample: {fired} of {CASES} fired"),
    )?;
    Ok(format!(
        "{checked} agree ({fired} fire); {rejected} conflicting sets rejected by validation"
    ))
}

const CODEGEN_SCENES: &[&str] = &[
    "fig3-green",
    "combined",
    "task",
    "gallery",
    "kitchen",
    "video",
];

fn codegen_determinism() -> Outcome {
    let build = |name: &str| -> Result<String, String> {
        let pkg = scene(name);
        let assets = resolve_assets(&pkg, &scene_dir(name)).map_err(|d| format!("{d:?}"))?;
        generate(&pkg, &assets, &GenOptions::for_package(&pkg)).map_err(|d| format!("{d:?}"))
    };
    for name in CODEGEN_SCENES {
        let first = build(name)?;
        let second = build(name)?;
        ensure(first == second, format!("{name}: runs differ"))?;
        check_golden(&format!("html/{name}.html"), &first)?;
    }
    Ok(format!(
        "{} scenes byte-identical to goldens",
        CODEGEN_SCENES.len()
    ))
}

fn round_trip() -> Outcome {
    runner(1000)
        .run(&any::<u64>(), |seed| {
            let pkg = valid_package(seed);
            let text = serialize_canonical(&pkg);
            let back = parse_package(&text)
                .map_err(|d| TestCaseError::fail(format!("{d:?}")))?
                .package;
            prop_assert_eq!(back, pkg);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("1000 generated packages".into())
}

fn pattern_expansion() -> Outcome {
    let pkg = scene("video");
    let full = PatternInstance::new("video-interactivity")
        .bind("video", id("Video1"))
        .bind("playTrigger", id("Box1"))
        .bind("pauseTrigger", id("Box2"));
    let delta = expand(&full, &pkg).map_err(|d| format!("{d:?}"))?;
    let got: Vec<_> = delta
        .added_interactions
        .iter()
        .map(|i| {
            (
                i.source.as_str(),
                i.event,
                i.target.as_str(),
                i.effect,
                i.params.is_empty() && i.conditions.is_empty(),
            )
        })
        .collect();
    ensure(
        got == [
            ("Box1", EventKind::Press, "Video1", EffectKind::Play, true),
            ("Box2", EventKind::Press, "Video1", EffectKind::Pause, true),
        ],
        format!("unexpected interactions {got:?}"),
    )?;
    ensure(
        delta.added_entities.is_empty()
            && delta.added_tasks.is_empty()
            && delta.parameter_changes.is_empty(),
        "only interactions are added",
    )?;
    let expanded = apply_delta(&pkg, &delta).map_err(|d| format!("{d:?}"))?;
    let errors = validate(&expanded)
        .into_iter()
        .filter(|d| d.is_error())
        .count();
    ensure(errors == 0, format!("{errors} errors after expansion"))?;

    let play_only = PatternInstance::new("video-interactivity")
        .bind("video", id("Video1"))
        .bind("playTrigger", id("Box1"));
    let delta = expand(&play_only, &pkg).map_err(|d| format!("{d:?}"))?;
    ensure(
        delta.added_interactions.len() == 1
            && delta.added_interactions[0].effect == EffectKind::Play,
        "omitting pauseTrigger yields only play",
    )?;

    let applied = std::cell::Cell::new(0);
    runner(500)
        .run(&any::<u64>(), |seed| {
            let mut g = Gen::new(seed);
            let mut pkg = g.package();
            for _ in 0..3 {
                let Some(inst) = g.video_binding(&pkg) else {
                    break;
                };
                let delta =
                    expand(&inst, &pkg).map_err(|d| TestCaseError::fail(format!("{d:?}")))?;
                pkg =
                    apply_delta(&pkg, &delta).map_err(|d| TestCaseError::fail(format!("{d:?}")))?;
                let errors: Vec<_> = validate(&pkg)
                    .into_iter()
                    .filter(|d| d.is_error())
                    .collect();
                prop_assert!(errors.is_empty(), "{:?}", errors);
                applied.set(applied.get() + 1);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let applied = applied.get();
    ensure(applied >= 100, format!("only {applied} generated bindings"))?;
    Ok(format!(
        "scenario exact; {applied} generated bindings all valid"
    ))
}

fn containment_oracle() -> Outcome {
    let mut g = Gen::new(0xc0ffee);
    let (mut boundary, mut inside) = (0, 0);
    for n in 0..1000 {
        let c = Vec3::new(
            grid(&mut g, -20, 20),
            grid(&mut g, -20, 20),
            grid(&mut g, -20, 20),
        );
        let s = Vec3::new(
            grid(&mut g, 1, 16),
            grid(&mut g, 1, 16),
            grid(&mut g, 1, 16),
        );
        let mode = n % 3;
        let mut axis = |c: f64, s: f64| -> f64 {
            match mode {
                0 => match g.rng().gen_range(0..3) {
                    0 => c - s / 2.0,
                    1 => c + s / 2.0,
                    _ => c + grid(&mut g, -8, 8) * s / 8.0,
                },
                1 => c + g.rng().gen_range(-0.6..0.6) * s,
                _ => g.rng().gen_range(-30.0..30.0),
            }
        };
        let p = Vec3::new(axis(c.x, s.x), axis(c.y, s.y), axis(c.z, s.z));
        let naive = [(p.x, c.x, s.x), (p.y, c.y, s.y), (p.z, c.z, s.z)]
            .iter()
            .all(|&(p, c, s)| c - s / 2.0 <= p && p <= c + s / 2.0);
        let on_face = [(p.x, c.x, s.x), (p.y, c.y, s.y), (p.z, c.z, s.z)]
            .iter()
            .any(|&(p, c, s)| p == c - s / 2.0 || p == c + s / 2.0);
        boundary += usize::from(on_face);
        inside += usize::from(naive);
        ensure(
            containment(p, c, s) == naive,
            format!("disagree at p={p:?} c={c:?} s={s:?}"),
        )?;
    }
    ensure(boundary >= 100, format!("only {boundary} boundary points"))?;
    ensure(inside > 100 && inside < 900, format!("{inside} inside"))?;
    Ok(format!(
        "1000 points agree ({boundary} on a face, {inside} inside)"
    ))
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    check: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            name: "fig3-scenario",
            limit: secs(1),
            check: fig3,
        },
        Criterion {
            name: "combined-interactivity",
            limit: secs(1),
            check: combined,
        },
        Criterion {
            name: "task-both-orders",
            limit: secs(1),
            check: task,
        },
        Criterion {
            name: "validator-corpus",
            limit: Duration::MAX,
            check: validator_corpus,
        },
        Criterion {
            name: "condition-oracle",
            limit: secs(60),
            check: condition_oracle,
        },
        Criterion {
            name: "codegen-determinism",
            limit: secs(5),
            check: codegen_determinism,
        },
        Criterion {
            name: "round-trip",
            limit: secs(30),
            check: round_trip,
        },
        Criterion {
            name: "pattern-expansion",
            limit: secs(10),
            check: pattern_expansion,
        },
        Criterion {
            name: "containment-oracle",
            limit: secs(1),
            check: containment_oracle,
        },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(msg)
        });
        let elapsed = start.elapsed();
        let limit = if c.limit == Duration::MAX {
            "none".to_string()
        } else {
            format!("{} ms", c.limit.as_millis())
        };
        let timing = format!("{} ms, limit {limit}", elapsed.as_millis());
        match result {
            Ok(detail) if elapsed <= c.limit => {
                println!("PASS {:<24} {timing}  {detail}", c.name);
            }
            Ok(_) => {
                failed += 1;
                println!("FAIL {:<24} {timing}  over time limit", c.name);
            }
            Err(msg) => {
                failed += 1;
                println!("FAIL {:<24} {timing}  {msg}", c.name);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
