//! Entity kinds and the static event/effect catalogs.
//!
//! The catalogs decide which events a source entity can emit and which effects a
//! target entity can receive. Both the validator and the simulator read them, so
//! an interaction that validates always has a dispatch path.

use std::fmt;
use std::str::FromStr;

macro_rules! string_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl FromStr for $name {
            type Err = ();

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => Err(()),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

string_enum!(
    EntityKind {
        Box => "geometry.box",
        Cylinder => "geometry.cylinder",
        Sphere => "geometry.sphere",
        Plane => "geometry.plane",
        Model => "model",
        Image => "media.image",
        Video => "media.video",
        Pdf => "media.pdf",
        Button => "interaction.button",
        Counter => "interaction.counter",
        PressurePlate => "interaction.pressure-plate",
        Taskbar => "taskbar",
        Navmesh => "navmesh",
        Area => "area",
    }
);

string_enum!(
    EventKind {
        Press => "press",
        TouchStart => "touch-start",
        TouchEnd => "touch-end",
        Enter => "enter",
        Leave => "leave",
        Completed => "completed",
        Changed => "changed",
    }
);

string_enum!(
    EffectKind {
        SetColor => "set-color",
        SetVisible => "set-visible",
        SetPosition => "set-position",
        SetRotation => "set-rotation",
        SetScale => "set-scale",
        TranslateBy => "translate-by",
        Play => "play",
        Pause => "pause",
        Restart => "restart",
        NextPage => "next-page",
        PreviousPage => "previous-page",
        FirstPage => "first-page",
        Increment => "increment",
        ResetCounter => "reset-counter",
    }
);

impl EntityKind {
    pub fn is_geometry(self) -> bool {
        matches!(
            self,
            EntityKind::Box | EntityKind::Cylinder | EntityKind::Sphere | EntityKind::Plane
        )
    }

    /// Kinds whose color can be read by conditions and written by `set-color`.
    pub fn is_color_bearing(self) -> bool {
        self.is_geometry() || matches!(self, EntityKind::Button | EntityKind::PressurePlate)
    }

    /// Kinds that carry a user-facing transform and visibility.
    pub fn is_spatial(self) -> bool {
        self != EntityKind::Navmesh
    }

    pub fn accepts_event(self, event: EventKind) -> bool {
        events_for(self).contains(&event)
    }

    pub fn accepts_effect(self, effect: EffectKind) -> bool {
        effects_for(self).contains(&effect)
    }
}

use EffectKind as Fx;
use EventKind as Ev;

const POINTER_EVENTS: &[EventKind] = &[Ev::Press, Ev::TouchStart, Ev::TouchEnd];
const MEDIA_EVENTS: &[EventKind] = &[Ev::Press, Ev::TouchStart, Ev::TouchEnd, Ev::Completed];
const BUTTON_EVENTS: &[EventKind] = &[Ev::Press];
const COUNTER_EVENTS: &[EventKind] = &[Ev::Completed, Ev::Changed];
const ZONE_EVENTS: &[EventKind] = &[Ev::Enter, Ev::Leave];

/// Events a source entity of `kind` can emit.
pub fn events_for(kind: EntityKind) -> &'static [EventKind] {
    use EntityKind::*;
    match kind {
        Box | Cylinder | Sphere | Plane | Model | Image => POINTER_EVENTS,
        Video | Pdf => MEDIA_EVENTS,
        Button => BUTTON_EVENTS,
        Counter => COUNTER_EVENTS,
        PressurePlate | Area => ZONE_EVENTS,
        Taskbar | Navmesh => &[],
    }
}

const TRANSFORM_EFFECTS: &[EffectKind] = &[
    Fx::SetVisible,
    Fx::SetPosition,
    Fx::SetRotation,
    Fx::SetScale,
    Fx::TranslateBy,
];
const COLORED_EFFECTS: &[EffectKind] = &[
    Fx::SetColor,
    Fx::SetVisible,
    Fx::SetPosition,
    Fx::SetRotation,
    Fx::SetScale,
    Fx::TranslateBy,
];
const VIDEO_EFFECTS: &[EffectKind] = &[
    Fx::SetVisible,
    Fx::SetPosition,
    Fx::SetRotation,
    Fx::SetScale,
    Fx::TranslateBy,
    Fx::Play,
    Fx::Pause,
    Fx::Restart,
];
const PDF_EFFECTS: &[EffectKind] = &[
    Fx::SetVisible,
    Fx::SetPosition,
    Fx::SetRotation,
    Fx::SetScale,
    Fx::TranslateBy,
    Fx::NextPage,
    Fx::PreviousPage,
    Fx::FirstPage,
];
const COUNTER_EFFECTS: &[EffectKind] = &[
    Fx::SetVisible,
    Fx::SetPosition,
    Fx::SetRotation,
    Fx::SetScale,
    Fx::TranslateBy,
    Fx::Increment,
    Fx::ResetCounter,
];

/// Effects a target entity of `kind` can receive.
pub fn effects_for(kind: EntityKind) -> &'static [EffectKind] {
    use EntityKind::*;
    match kind {
        Box | Cylinder | Sphere | Plane | Button | PressurePlate => COLORED_EFFECTS,
        Model | Image | Taskbar => TRANSFORM_EFFECTS,
        Video => VIDEO_EFFECTS,
        Pdf => PDF_EFFECTS,
        Counter => COUNTER_EFFECTS,
        Navmesh | Area => &[],
    }
}
