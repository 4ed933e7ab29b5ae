use serde_json::{json, Value};

use super::script::ExternalEvent;
use crate::io::to_canonical_string;
use crate::model::{EntityId, EventKind, FORMAT_VERSION};

/// Entity name used in state changes of the user.
pub const USER: &str = "@user";

#[derive(Debug, Clone, PartialEq)]
pub struct InternalEvent {
    pub entity: EntityId,
    pub kind: EventKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateChange {
    pub entity: String,
    pub attribute: &'static str,
    pub old: Value,
    pub new: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Abort {
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub step: u64,
    pub event: ExternalEvent,
    pub fired_interactions: Vec<EntityId>,
    pub state_changes: Vec<StateChange>,
    pub internal_events: Vec<InternalEvent>,
    pub activity_completions: Vec<EntityId>,
    pub task_completions: Vec<EntityId>,
}

impl TraceRecord {
    pub fn new(step: u64, event: ExternalEvent) -> Self {
        TraceRecord {
            step,
            event,
            fired_interactions: Vec::new(),
            state_changes: Vec::new(),
            internal_events: Vec::new(),
            activity_completions: Vec::new(),
            task_completions: Vec::new(),
        }
    }

    pub fn to_value(&self) -> Value {
        let ids = |v: &[EntityId]| {
            v.iter()
                .map(|i| Value::from(i.as_str()))
                .collect::<Vec<_>>()
        };
        json!({
            "step": self.step,
            "event": self.event.to_value(),
            "firedInteractions": ids(&self.fired_interactions),
            "stateChanges": self.state_changes.iter().map(|c| json!({
                "entity": c.entity,
                "attribute": c.attribute,
                "old": c.old,
                "new": c.new,
            })).collect::<Vec<_>>(),
            "internalEvents": self.internal_events.iter().map(|e| json!({
                "entity": e.entity.as_str(),
                "event": e.kind.as_str(),
            })).collect::<Vec<_>>(),
            "activityCompletions": ids(&self.activity_completions),
            "taskCompletions": ids(&self.task_completions),
        })
    }
}

/// Records of one script run. A run that stops early carries the reason;
/// the record of the aborted step, if any, is the last one.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trace {
    pub records: Vec<TraceRecord>,
    pub abort: Option<Abort>,
}

impl Trace {
    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "formatVersion": FORMAT_VERSION,
            "records": self.records.iter().map(TraceRecord::to_value).collect::<Vec<_>>(),
        });
        if let Some(a) = &self.abort {
            v["abort"] = json!({"code": a.code, "message": a.message});
        }
        v
    }

    pub fn to_canonical_string(&self) -> String {
        to_canonical_string(&self.to_value())
    }
}
