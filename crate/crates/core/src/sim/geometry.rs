use crate::model::Vec3;

/// Height of the trigger volume above a pressure plate.
pub const PLATE_TRIGGER_HEIGHT: f64 = 2.5;

/// Closed axis-aligned box test: `|p_i - center_i| <= size_i / 2` on every axis.
/// Rotation is not considered.
pub fn containment(p: Vec3, center: Vec3, size: Vec3) -> bool {
    (p.x - center.x).abs() <= size.x / 2.0
        && (p.y - center.y).abs() <= size.y / 2.0
        && (p.z - center.z).abs() <= size.z / 2.0
}
