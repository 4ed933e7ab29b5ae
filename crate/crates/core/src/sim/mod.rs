//! Headless interpreter of interactions, conditions and task progress.

mod eval;
mod geometry;
mod script;
mod state;
mod trace;

use std::collections::{BTreeSet, VecDeque};

use serde_json::Value;

pub use eval::{apply_effect, eval_condition, EffectOutcome};
pub use geometry::{containment, PLATE_TRIGGER_HEIGHT};
pub use script::{check_script, parse_script, script_to_string, ExternalEvent, TouchPhase};
pub use state::{digest_value, final_state_digest, Detail, EntityState, Flag, SimState, UserState};
pub use trace::{Abort, InternalEvent, StateChange, Trace, TraceRecord, USER};

use crate::diag::has_errors;
use crate::io::vec3_value;
use crate::model::{ActivityType, Condition, Effect, EntityId, EventKind, ScenePackage};
use crate::validate::validate;

pub const S_INVALID_PACKAGE: &str = "S001";
pub const S_CASCADE: &str = "S002";
pub use script::S_SCRIPT_REF;
pub const S_BAD_EVENT: &str = "S004";

/// Queued events per dispatch before the cascade guard trips.
pub const CASCADE_LIMIT: usize = 1000;

#[derive(Debug, Clone)]
struct Rule {
    id: EntityId,
    source: usize,
    event: EventKind,
    target: usize,
    effect: Effect,
    conditions: Vec<Condition>,
}

#[derive(Debug, Clone)]
enum Tracker {
    EnterArea { area: usize },
    PlaceInArea { entity: usize, area: usize },
    LookAt { entity: EntityId },
    CompleteMedia { entity: usize },
}

/// A package compiled for execution together with its current state.
#[derive(Debug, Clone)]
pub struct Simulation {
    rules: Vec<Rule>,
    activities: Vec<Tracker>,
    task_activities: Vec<Vec<usize>>,
    state: SimState,
    aborted: bool,
}

fn internal_error(message: String) -> Abort {
    Abort {
        code: S_INVALID_PACKAGE,
        message,
    }
}

impl Simulation {
    /// Fails with S001 when the package has validation errors.
    pub fn new(pkg: &ScenePackage) -> Result<Simulation, Abort> {
        let diags = validate(pkg);
        if has_errors(&diags) {
            let first = diags.iter().find(|d| d.is_error()).map(ToString::to_string);
            return Err(Abort {
                code: S_INVALID_PACKAGE,
                message: format!("package is invalid: {}", first.unwrap_or_default()),
            });
        }
        let state = SimState::from_package(pkg);
        let index = |id: &EntityId| {
            state
                .index_of(id.as_str())
                .ok_or_else(|| internal_error(format!("unknown entity `{id}`")))
        };
        let mut rules = Vec::with_capacity(pkg.interactions.len());
        for i in &pkg.interactions {
            let effect = Effect::resolve(i.effect, &i.params)
                .map_err(|e| internal_error(format!("{}: {}", i.id, e.message)))?;
            rules.push(Rule {
                id: i.id.clone(),
                source: index(&i.source)?,
                event: i.event,
                target: index(&i.target)?,
                effect,
                conditions: i.conditions.clone(),
            });
        }
        let mut activities = Vec::new();
        let mut task_activities = vec![Vec::new(); pkg.tasks.len()];
        for (t, task) in pkg.tasks.iter().enumerate() {
            for a in &task.activities {
                let tracker = match &a.kind {
                    ActivityType::EnterArea { area } => Tracker::EnterArea { area: index(area)? },
                    ActivityType::PlaceInArea { entity, area } => Tracker::PlaceInArea {
                        entity: index(entity)?,
                        area: index(area)?,
                    },
                    ActivityType::LookAt { entity } => Tracker::LookAt {
                        entity: entity.clone(),
                    },
                    ActivityType::CompleteMedia { entity } => Tracker::CompleteMedia {
                        entity: index(entity)?,
                    },
                };
                task_activities[t].push(activities.len());
                activities.push(tracker);
            }
        }
        Ok(Simulation {
            rules,
            activities,
            task_activities,
            state,
            aborted: false,
        })
    }

    pub fn state(&self) -> &SimState {
        &self.state
    }

    /// Mutable access for tests that construct arbitrary states.
    pub fn state_mut(&mut self) -> &mut SimState {
        &mut self.state
    }

    pub fn is_aborted(&self) -> bool {
        self.aborted
    }

    pub fn digest(&self) -> String {
        final_state_digest(&self.state)
    }

    /// Processes one external event to quiescence. An abort is returned
    /// together with the partial record.
    pub fn dispatch(&mut self, ev: &ExternalEvent) -> (TraceRecord, Option<Abort>) {
        self.state.step += 1;
        let mut run = Run {
            record: TraceRecord::new(self.state.step, ev.clone()),
            queue: VecDeque::new(),
            queued: 0,
            processed: Vec::new(),
            moved: BTreeSet::new(),
            looked_at: None,
        };
        let result = self
            .primary(ev, &mut run)
            .and_then(|()| self.drain(&mut run));
        if let Err(abort) = result {
            self.aborted = true;
            return (run.record, Some(abort));
        }
        self.track(&mut run);
        (run.record, None)
    }

    fn primary(&mut self, ev: &ExternalEvent, run: &mut Run) -> Result<(), Abort> {
        let lookup = |state: &SimState, id: &EntityId| {
            state.index_of(id.as_str()).ok_or_else(|| Abort {
                code: S_SCRIPT_REF,
                message: format!("`{id}` is not an entity of the package"),
            })
        };
        match ev {
            ExternalEvent::UserMove(p) => {
                if !p.is_finite() {
                    return Err(bad_event("user position must be finite"));
                }
                let old = self.state.user.position;
                self.state.user.position = *p;
                if old != *p {
                    run.record.state_changes.push(StateChange {
                        entity: USER.into(),
                        attribute: "position",
                        old: vec3_value(old),
                        new: vec3_value(*p),
                    });
                }
                let mut out = EffectOutcome::default();
                for e in &mut self.state.entities {
                    eval::update_zone(e, *p, &mut out);
                }
                run.absorb(out, &self.state)?;
            }
            ExternalEvent::UserLook(target) => {
                if let Some(t) = target {
                    lookup(&self.state, t)?;
                }
                let old = std::mem::replace(&mut self.state.user.gaze, target.clone());
                if old != *target {
                    let text = |g: &Option<EntityId>| {
                        g.as_ref().map_or(Value::Null, |i| Value::from(i.as_str()))
                    };
                    run.record.state_changes.push(StateChange {
                        entity: USER.into(),
                        attribute: "gaze",
                        old: text(&old),
                        new: text(target),
                    });
                }
                run.looked_at = target.clone();
            }
            ExternalEvent::ControllerPress(id) => {
                let i = lookup(&self.state, id)?;
                run.enqueue(i, EventKind::Press)?;
            }
            ExternalEvent::ControllerTouch(id, phase) => {
                let i = lookup(&self.state, id)?;
                let kind = match phase {
                    TouchPhase::Begin => EventKind::TouchStart,
                    TouchPhase::End => EventKind::TouchEnd,
                };
                run.enqueue(i, kind)?;
            }
            ExternalEvent::PlaceEntity(id, p) => {
                let i = lookup(&self.state, id)?;
                if !p.is_finite() {
                    return Err(bad_event("entity position must be finite"));
                }
                let out = apply_effect(&mut self.state, i, &Effect::SetPosition(*p));
                run.moved.insert(i);
                run.absorb(out, &self.state)?;
            }
            ExternalEvent::AdvanceTime(seconds) => {
                if !(seconds.is_finite() && *seconds > 0.0) {
                    return Err(bad_event("advance-time needs a positive number of seconds"));
                }
                let out = eval::advance_videos(&mut self.state, *seconds);
                run.absorb(out, &self.state)?;
            }
        }
        Ok(())
    }

    fn drain(&mut self, run: &mut Run) -> Result<(), Abort> {
        let state = &mut self.state;
        while let Some((source, event)) = run.queue.pop_front() {
            run.processed.push((source, event));
            for rule in self
                .rules
                .iter()
                .filter(|r| r.source == source && r.event == event)
            {
                if !rule.conditions.iter().all(|c| eval_condition(state, c)) {
                    continue;
                }
                run.record.fired_interactions.push(rule.id.clone());
                let out = apply_effect(state, rule.target, &rule.effect);
                if matches!(rule.effect, Effect::SetPosition(_) | Effect::TranslateBy(_)) {
                    run.moved.insert(rule.target);
                }
                run.absorb(out, state)?;
            }
        }
        Ok(())
    }

    fn track(&mut self, run: &mut Run) {
        let state = &mut self.state;
        for (a, tracked) in self.activities.iter().enumerate() {
            if state.activities[a].completed {
                continue;
            }
            let done = match tracked {
                Tracker::EnterArea { area } => run.processed.contains(&(*area, EventKind::Enter)),
                Tracker::PlaceInArea { entity, area } => {
                    (run.moved.contains(entity) || run.moved.contains(area))
                        && state.entities[*area].zone().is_some_and(|(c, s)| {
                            containment(state.entities[*entity].position, c, s)
                        })
                }
                Tracker::LookAt { entity } => run.looked_at.as_ref() == Some(entity),
                Tracker::CompleteMedia { entity } => {
                    run.processed.contains(&(*entity, EventKind::Completed))
                }
            };
            if !done {
                continue;
            }
            state.activities[a].completed = true;
            run.record
                .activity_completions
                .push(state.activities[a].id.clone());
            let area = match *tracked {
                Tracker::EnterArea { area } | Tracker::PlaceInArea { area, .. } => Some(area),
                _ => None,
            };
            if let Some(area) = area {
                let out = apply_effect(state, area, &Effect::SetVisible(false));
                run.record.state_changes.extend(out.changes);
            }
        }
        for (t, members) in self.task_activities.iter().enumerate() {
            let flag = &mut state.tasks[t];
            if !flag.completed && members.iter().all(|&a| state.activities[a].completed) {
                flag.completed = true;
                run.record.task_completions.push(flag.id.clone());
            }
        }
    }

    /// Dispatches every event in order, stopping at the first abort.
    pub fn run(&mut self, script: &[ExternalEvent]) -> Trace {
        let mut trace = Trace::default();
        for ev in script {
            if self.aborted {
                break;
            }
            let (record, abort) = self.dispatch(ev);
            trace.records.push(record);
            if abort.is_some() {
                trace.abort = abort;
                break;
            }
        }
        trace
    }
}

fn bad_event(message: &str) -> Abort {
    Abort {
        code: S_BAD_EVENT,
        message: message.into(),
    }
}

struct Run {
    record: TraceRecord,
    queue: VecDeque<(usize, EventKind)>,
    queued: usize,
    processed: Vec<(usize, EventKind)>,
    moved: BTreeSet<usize>,
    looked_at: Option<EntityId>,
}

impl Run {
    fn enqueue(&mut self, entity: usize, kind: EventKind) -> Result<(), Abort> {
        self.queued += 1;
        if self.queued > CASCADE_LIMIT {
            return Err(Abort {
                code: S_CASCADE,
                message: format!(
                    "more than {CASCADE_LIMIT} events queued in step {}",
                    self.record.step
                ),
            });
        }
        self.queue.push_back((entity, kind));
        Ok(())
    }

    fn absorb(&mut self, out: EffectOutcome, state: &SimState) -> Result<(), Abort> {
        self.record.state_changes.extend(out.changes);
        for ev in out.events {
            let idx = state
                .index_of(ev.entity.as_str())
                .expect("outcome events name state entities");
            self.record.internal_events.push(ev.clone());
            self.enqueue(idx, ev.kind)?;
        }
        Ok(())
    }
}

/// Runs a whole script against a fresh simulation of `pkg`.
pub fn run_script(pkg: &ScenePackage, script: &[ExternalEvent]) -> Trace {
    match Simulation::new(pkg) {
        Ok(mut sim) => sim.run(script),
        Err(abort) => Trace {
            records: Vec::new(),
            abort: Some(abort),
        },
    }
}
