//! Built-in congruence scenes, stored in the same text format the CLI loads
//! from disk, so they double as parser fixtures.

use crate::scene::CongruenceScene;

/// Graph surface with a parabolic curve u2 = u1^2; xi is the unit normal
/// induced by the coordinate tangent basis, so the congruence is exact
/// normal and Lambda = id.
pub const PARABOLIC: &str = r#"
name = "parabolic"
domain = u1 in (-1, 1), u2 in (-1, 1)
x = (u1, u2, u1^2*u2 + u2^2)
omega = ((1, 0, 2*u1*u2), (0, 1, u1^2 + 2*u2))
xi = normal(omega)
"#;

/// Proper frontal with singular set u2 = 0 whose induced unit normal has the
/// same singular set; Lambda = [[1, 0], [0, 2 u2]].
pub const EXAMPLE43: &str = r#"
name = "example43"
domain = u1 in (-1, 1), u2 in (-1, 1)
x = (u1, 2/5*u2^5 + u2^2, u1*u2^2)
omega = ((1, 0, u2^2), (0, u2^3 + 1, u1))
xi = normal(omega)
"#;

/// Unit sphere patch with an orthonormal tangent basis; the induced normal
/// is the outward radius field, so xi = x and every point is umbilic.
pub const SPHERE: &str = r#"
name = "sphere"
domain = u1 in (-3, 3), u2 in (-1.3, 1.3)
x = (cos(u1)*cos(u2), sin(u1)*cos(u2), sin(u2))
omega = ((-sin(u1), cos(u1), 0), (-cos(u1)*sin(u2), -sin(u1)*sin(u2), cos(u2)))
xi = normal(omega)
"#;

/// Deliberately non-normal congruence over the flat plane.
pub const SKEW: &str = r#"
name = "skew"
domain = u1 in (-1, 1), u2 in (-1, 1)
x = (u1, u2, 0)
xi = normalize((-u2, u1, 1))
"#;

/// Axis directrix with a horizontally rotating direction field. The striction
/// line of every directrix curve is the axis itself; xi is singular as a map
/// (its image is a circle) yet the direction equations stay meaningful.
pub const HELICOID: &str = r#"
name = "helicoid"
domain = u1 in (-3, 3), u2 in (-1, 1)
x = (0, 0, u1)
omega = ((-sin(u1), cos(u1), 0), (0, 0, 1))
xi = (cos(u1), sin(u1), 0)
"#;

/// Frontal with an equiaffine transversal field; kept as a parser and
/// ingestion stress test only (the field is not the unit normal and no
/// geometric identities are asserted against it).
pub const EXAMPLE41: &str = r#"
name = "example41"
domain = u1 in (-1/10, 1/10), u2 in (-4, 4)
x = (u1, u2^2, 4/15*u1*u2^5 + 1/2*u1^3*u2^4 + u1*u2^2)
xi = (-3*sqrt(3)/8 * (216*u1^6*u2^4 - 189*u1^4*u2^5 + 66*u1^2*u2^6 + 16*u2^7 + 324*u1^4*u2^2 + 9*u1^2*u2^3 + 48*u2^4 + 108*u1^2 + 36*u2) / ((54*u1^4*u2^4 + 9*u1^2*u2^5 + 4*u2^6 + 54*u1^2*u2^2 + 12*u2^3 + 9) * sqrt((54*u1^4*u2^4 + 9*u1^2*u2^5 + 4*u2^6 + 54*u1^2*u2^2 + 12*u2^3 + 9) * sqrt(54*u1^4*u2^4 + 9*u1^2*u2^5 + 4*u2^6 + 54*u1^2*u2^2 + 12*u2^3 + 9))), 9*sqrt(3)/8 * ((216*u1^4*u2^4 + 87*u1^2*u2^5 - 16*u2^6 + 252*u1^2*u2^2 + 24*u2^3 + 72) * u2^2) / ((54*u1^4*u2^4 + 9*u1^2*u2^5 + 4*u2^6 + 54*u1^2*u2^2 + 12*u2^3 + 9) * sqrt((54*u1^4*u2^4 + 9*u1^2*u2^5 + 4*u2^6 + 54*u1^2*u2^2 + 12*u2^3 + 9) * sqrt(54*u1^4*u2^4 + 9*u1^2*u2^5 + 4*u2^6 + 54*u1^2*u2^2 + 12*u2^3 + 9))), sqrt(3)/240 * (145800*u1^8*u2^8 + 35721*u1^6*u2^9 + 25326*u1^4*u2^10 + 4896*u1^2*u2^11 + 6480 + 277020*u1^6*u2^6 + 896*u2^12 + 114129*u1^4*u2^7 + 39204*u1^2*u2^8 + 5088*u2^9 + 179820*u1^4*u2^4 + 88938*u1^2*u2^5 + 12096*u2^6 + 48600*u1^2*u2^2 + 14040*u2^3) / ((54*u1^4*u2^4 + 9*u1^2*u2^5 + 4*u2^6 + 54*u1^2*u2^2 + 12*u2^3 + 9) * sqrt((54*u1^4*u2^4 + 9*u1^2*u2^5 + 4*u2^6 + 54*u1^2*u2^2 + 12*u2^3 + 9) * sqrt(54*u1^4*u2^4 + 9*u1^2*u2^5 + 4*u2^6 + 54*u1^2*u2^2 + 12*u2^3 + 9))))
"#;

pub const NAMES: &[&str] = &[
    "parabolic",
    "example43",
    "sphere",
    "skew",
    "helicoid",
    "example41",
];

/// Load a built-in fixture by name.
pub fn builtin(name: &str) -> Option<CongruenceScene> {
    let text = match name {
        "parabolic" => PARABOLIC,
        "example43" => EXAMPLE43,
        "sphere" => SPHERE,
        "skew" => SKEW,
        "helicoid" => HELICOID,
        "example41" => EXAMPLE41,
        _ => return None,
    };
    Some(CongruenceScene::from_text(text).expect("built-in fixture must parse"))
}
