use super::{parse_presentation, PolygonalPresentation};

pub const T1_TEXT: &str = "\
# T1
k=3
q=15
(1,2,7)
(1,8,11)
(1,14,5)
(2,4,13)
(12,4,2)
(4,9,3)
(6,8,3)
(14,6,3)
(12,10,5)
(13,15,5)
(12,9,6)
(11,10,7)
(14,13,7)
(9,15,8)
(11,15,10)
";

pub const T2_TEXT: &str = "\
# T2
k=3
q=15
(1,10,1)
(1,15,2)
(2,11,9)
(2,14,3)
(3,7,4)
(3,15,13)
(4,8,6)
(12,11,4)
(5,8,5)
(5,10,12)
(6,14,6)
(7,12,7)
(13,9,8)
(14,15,9)
(13,11,10)
";

/// Resolves `T1` / `T2` (case-insensitive) to the embedded presentations.
pub fn builtin(name: &str) -> Option<PolygonalPresentation> {
    let text = match name.to_ascii_uppercase().as_str() {
        "T1" => T1_TEXT,
        "T2" => T2_TEXT,
        _ => return None,
    };
    Some(parse_presentation(text).expect("embedded presentation parses"))
}
