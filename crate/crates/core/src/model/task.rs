use super::EntityId;

#[derive(Debug, Clone, PartialEq)]
pub enum ActivityType {
    EnterArea { area: EntityId },
    PlaceInArea { entity: EntityId, area: EntityId },
    LookAt { entity: EntityId },
    CompleteMedia { entity: EntityId },
}

impl ActivityType {
    pub fn as_str(&self) -> &'static str {
        match self {
            ActivityType::EnterArea { .. } => "enter-area",
            ActivityType::PlaceInArea { .. } => "place-in-area",
            ActivityType::LookAt { .. } => "look-at",
            ActivityType::CompleteMedia { .. } => "complete-media",
        }
    }

    pub fn area(&self) -> Option<&EntityId> {
        match self {
            ActivityType::EnterArea { area } | ActivityType::PlaceInArea { area, .. } => Some(area),
            _ => None,
        }
    }

    pub fn is_location_dependent(&self) -> bool {
        self.area().is_some()
    }

    pub fn entity(&self) -> Option<&EntityId> {
        match self {
            ActivityType::PlaceInArea { entity, .. }
            | ActivityType::LookAt { entity }
            | ActivityType::CompleteMedia { entity } => Some(entity),
            ActivityType::EnterArea { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Activity {
    pub id: EntityId,
    pub name: String,
    pub description: String,
    pub kind: ActivityType,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Task {
    pub id: EntityId,
    pub name: String,
    pub description: String,
    pub activities: Vec<Activity>,
}
