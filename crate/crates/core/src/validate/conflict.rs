//! Pairwise conflict detection for attribute checks on the same entity and
//! attribute. Two checks conflict when no attribute value satisfies both.

use crate::model::{Attribute, Color, CompareOp, Literal, ValueType};

#[derive(Debug, Clone, Copy, PartialEq)]
struct Bound {
    value: f64,
    closed: bool,
}

/// Satisfaction set of a single numeric check.
#[derive(Debug, Clone, Copy, PartialEq)]
enum NumSet {
    /// `None` bounds are unbounded.
    Interval(Option<Bound>, Option<Bound>),
    /// Everything except one value.
    AllBut(f64),
}

fn num_set(op: CompareOp, v: f64, integral: bool) -> NumSet {
    let b = |value: f64, closed: bool| Some(Bound { value, closed });
    if integral {
        // Integer domain: closed bounds on whole numbers.
        return match op {
            CompareOp::Eq => NumSet::Interval(b(v, true), b(v, true)),
            CompareOp::Ne => NumSet::AllBut(v),
            CompareOp::Lt => NumSet::Interval(None, b(v.ceil() - 1.0, true)),
            CompareOp::Le => NumSet::Interval(None, b(v.floor(), true)),
            CompareOp::Gt => NumSet::Interval(b(v.floor() + 1.0, true), None),
            CompareOp::Ge => NumSet::Interval(b(v.ceil(), true), None),
        };
    }
    match op {
        CompareOp::Eq => NumSet::Interval(b(v, true), b(v, true)),
        CompareOp::Ne => NumSet::AllBut(v),
        CompareOp::Lt => NumSet::Interval(None, b(v, false)),
        CompareOp::Le => NumSet::Interval(None, b(v, true)),
        CompareOp::Gt => NumSet::Interval(b(v, false), None),
        CompareOp::Ge => NumSet::Interval(b(v, true), None),
    }
}

fn tighter_lower(a: Option<Bound>, b: Option<Bound>) -> Option<Bound> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if a.value > b.value {
            a
        } else if b.value > a.value {
            b
        } else {
            Bound {
                value: a.value,
                closed: a.closed && b.closed,
            }
        }),
    }
}

fn tighter_upper(a: Option<Bound>, b: Option<Bound>) -> Option<Bound> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if a.value < b.value {
            a
        } else if b.value < a.value {
            b
        } else {
            Bound {
                value: a.value,
                closed: a.closed && b.closed,
            }
        }),
    }
}

fn is_single_point(lo: Option<Bound>, hi: Option<Bound>, v: f64) -> bool {
    matches!((lo, hi), (Some(l), Some(h)) if l.closed && h.closed && l.value == v && h.value == v)
}

fn interval_empty(lo: Option<Bound>, hi: Option<Bound>) -> bool {
    match (lo, hi) {
        (Some(l), Some(h)) => l.value > h.value || (l.value == h.value && !(l.closed && h.closed)),
        _ => false,
    }
}

fn numeric_disjoint(a: NumSet, b: NumSet) -> bool {
    match (a, b) {
        (NumSet::AllBut(_), NumSet::AllBut(_)) => false,
        (NumSet::AllBut(v), NumSet::Interval(lo, hi))
        | (NumSet::Interval(lo, hi), NumSet::AllBut(v)) => is_single_point(lo, hi, v),
        (NumSet::Interval(alo, ahi), NumSet::Interval(blo, bhi)) => {
            interval_empty(tighter_lower(alo, blo), tighter_upper(ahi, bhi))
        }
    }
}

/// Whether two well-typed checks on `attribute` can never hold together.
/// Checks that fail to type are never reported as conflicting.
pub(crate) fn disjoint(
    attribute: Attribute,
    a: (CompareOp, &Literal),
    b: (CompareOp, &Literal),
) -> bool {
    match attribute.value_type() {
        ValueType::Color => {
            let (Literal::Text(x), Literal::Text(y)) = (a.1, b.1) else {
                return false;
            };
            let (Ok(x), Ok(y)) = (Color::parse(x), Color::parse(y)) else {
                return false;
            };
            match (a.0, b.0) {
                (CompareOp::Eq, CompareOp::Eq) => x != y,
                (CompareOp::Eq, CompareOp::Ne) | (CompareOp::Ne, CompareOp::Eq) => x == y,
                _ => false,
            }
        }
        ValueType::Bool => {
            let (Literal::Bool(x), Literal::Bool(y)) = (a.1, b.1) else {
                return false;
            };
            let norm = |op: CompareOp, v: bool| if op == CompareOp::Ne { !v } else { v };
            norm(a.0, *x) != norm(b.0, *y)
        }
        ValueType::Number => {
            let (Literal::Number(x), Literal::Number(y)) = (a.1, b.1) else {
                return false;
            };
            let integral = attribute.is_integral();
            numeric_disjoint(num_set(a.0, *x, integral), num_set(b.0, *y, integral))
        }
    }
}
