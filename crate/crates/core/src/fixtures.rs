//! Named reference diagrams.

use crate::diagram::CoxeterDiagram;
use crate::format::parse_diagram;

pub const FIX_CYCLE8: &str = include_str!("../fixtures/fix_cycle8.cox");
pub const FIX_STAR: &str = include_str!("../fixtures/fix_star.cox");
pub const FIX_E5: &str = include_str!("../fixtures/fix_e5.cox");

/// Two four-cliques-minus-an-edge `{a,b,x,y}`, `{u,v,c,d}` joined by the
/// edges `x–u`, `y–v`; all labels 3.
pub fn fix_cycle8() -> CoxeterDiagram {
    parse_diagram(FIX_CYCLE8).expect("fixture parses")
}

/// `{a,c}` joined to each of `b,d,e,f` by commuting edges.
pub fn fix_star() -> CoxeterDiagram {
    parse_diagram(FIX_STAR).expect("fixture parses")
}

/// A square on `{1,2,3,4}` and a label-3 edge `5–6`, both commuting with the
/// unrelated pair `{7,8}`.
pub fn fix_e5() -> CoxeterDiagram {
    parse_diagram(FIX_E5).expect("fixture parses")
}

pub fn all() -> Vec<(&'static str, CoxeterDiagram)> {
    vec![
        ("cycle8", fix_cycle8()),
        ("star", fix_star()),
        ("e5", fix_e5()),
    ]
}
