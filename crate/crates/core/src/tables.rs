//! Cross-references into the two classical degeneration tables.
//!
//! Friedman's study of Type II degenerations of degree-two K3 surfaces
//! lists four shapes of central fibre, cited below by his case numbers
//! (5.2.1) through (5.2.4). Shah's GIT analysis describes the semistable
//! plane sextics in cases (II.1) through (III.2) of his classification
//! theorem, and the unigonal degenerations in his case (IV), split into
//! subcases 1(ii), 2(i) and 2(ii). The [`annotate`] function inverts
//! those two tables: given a classified row together with the evidence
//! that selected it, it reports which case of each source the fibre
//! falls under.

use serde::Serialize;

use crate::classify::{Evidence, Row};
use crate::germ::SingularityClass;

/// Literature labels attached to a classified fibre. `None` means the
/// corresponding source does not cover the row (Friedman only treats
/// Type II fibres, and Shah's list starts where the branch data leaves
/// the stable range).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Annotation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub friedman: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shah: Option<&'static str>,
}

enum EllipticKind {
    E7,
    E8,
}

fn elliptic_kind(evidence: &Evidence) -> Option<EllipticKind> {
    let classes = match evidence {
        Evidence::Reduced { classes, .. } => classes,
        _ => return None,
    };
    for (class, _) in classes {
        match class {
            SingularityClass::TildeE7 => return Some(EllipticKind::E7),
            SingularityClass::TildeE8 => return Some(EllipticKind::E8),
            _ => {}
        }
    }
    None
}

/// Shah separates the sextics with one degenerate cusp by the width of
/// the cusp: T(2,3,r) falls under (III.1), T(2,q,r) with q >= 4 under
/// (III.2).
fn cusp_case(evidence: &Evidence) -> Option<&'static str> {
    let classes = match evidence {
        Evidence::Reduced { classes, .. } => classes,
        _ => return None,
    };
    for (class, _) in classes {
        if let SingularityClass::Cusp(q, _) = class {
            return Some(if *q == 3 { "(III.1)" } else { "(III.2)" });
        }
    }
    None
}

/// Look up the Friedman and Shah cases covering a classified row. The
/// evidence is consulted only where a row spans several cases: the
/// reduced rows carrying simple-elliptic points split by whether the
/// point is E7-tilde or E8-tilde, and the one-cusp rows split by the
/// width of the cusp.
pub fn annotate(row: Row, evidence: &Evidence) -> Annotation {
    let (friedman, shah) = match row {
        Row::IH | Row::IU | Row::Unclassified => (None, None),
        Row::II1 => (Some("(5.2.3)"), Some("(II.2)")),
        Row::II2 => (Some("(5.2.4)"), Some("(II.3)")),
        Row::II3 => (Some("(5.2.1)"), Some("(II.4)")),
        Row::II4 => (Some("(5.2.2)"), Some("(IV), case 2(i)")),
        Row::II0H => match elliptic_kind(evidence) {
            Some(EllipticKind::E8) => (Some("(5.2.2)"), Some("(II.1)")),
            Some(EllipticKind::E7) => (Some("(5.2.3)"), Some("(II.2)")),
            None => (None, None),
        },
        Row::II0U => {
            let friedman = match elliptic_kind(evidence) {
                Some(EllipticKind::E8) => Some("(5.2.2)"),
                Some(EllipticKind::E7) => Some("(5.2.3)"),
                None => None,
            };
            (friedman, Some("(IV), case 1(ii)"))
        }
        Row::III0H => (None, cusp_case(evidence)),
        Row::III2 => (None, Some("(III.1)")),
        Row::III1 | Row::III3 => (None, Some("(III.2)")),
        Row::III0U | Row::III4 => (None, Some("(IV), case 2(ii)")),
    };
    Annotation { friedman, shah }
}
