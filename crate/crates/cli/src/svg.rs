//! Number-line pictures: candidates as squares, proxies as circles, bisectors
//! as dashed verticals.

use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use proxyrep_core::geometry::midpoint;
use proxyrep_core::{Arrangement, Instance, Rational};

pub const WIDTH: u32 = 1200;
pub const HEIGHT: u32 = 200;
const AXIS_Y: u32 = 100;

/// Screen x of a point on the line; `[-1/2, 3/2]` fills the width.
pub fn screen_x(v: &Rational) -> Rational {
    (v + Rational::new(1.into(), 2.into())) * BigInt::from(WIDTH / 2)
}

/// Fixed three-decimal rendering, rounding half away from zero.
pub fn fixed3(x: &Rational) -> String {
    let thousandths = (x * BigInt::from(1000)).round().to_integer();
    let sign = if thousandths.is_negative() { "-" } else { "" };
    let (whole, frac) = thousandths.abs().div_rem(&BigInt::from(1000));
    format!("{sign}{whole}.{frac:03}")
}

fn x_of(v: &Rational) -> String {
    fixed3(&screen_x(v))
}

pub fn render_svg(inst: &Instance, arr: Option<&Arrangement>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        out,
        r#"  <line class="axis" x1="0.000" y1="{AXIS_Y}.000" x2="{WIDTH}.000" y2="{AXIS_Y}.000" stroke="black" stroke-width="1"/>"#
    );
    for b in inst.candidate_bisectors() {
        let x = x_of(&b);
        let _ = writeln!(
            out,
            r#"  <line class="candidate-bisector" x1="{x}" y1="70.000" x2="{x}" y2="130.000" stroke="gray" stroke-width="1" stroke-dasharray="4 3"/>"#
        );
    }
    if let Some(arr) = arr {
        for w in arr.proxies().windows(2) {
            let x = x_of(&midpoint(&w[0], &w[1]));
            let _ = writeln!(
                out,
                r#"  <line class="proxy-bisector" x1="{x}" y1="55.000" x2="{x}" y2="145.000" stroke="red" stroke-width="3" stroke-dasharray="8 4"/>"#
            );
        }
    }
    for c in inst.candidates() {
        let x = screen_x(c) - Rational::from_integer(6.into());
        let _ = writeln!(
            out,
            r#"  <rect class="candidate" x="{}" y="94.000" width="12.000" height="12.000" fill="white" stroke="black" stroke-width="1.5"><title>{c}</title></rect>"#,
            fixed3(&x)
        );
    }
    if let Some(arr) = arr {
        for p in arr.proxies() {
            let _ = writeln!(
                out,
                r#"  <circle class="proxy" cx="{}" cy="{AXIS_Y}.000" r="5.000" fill="red"><title>{p}</title></circle>"#,
                x_of(p)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proxyrep_core::rat;

    #[test]
    fn mapping() {
        assert_eq!(x_of(&rat(0, 1)), "300.000");
        assert_eq!(x_of(&rat(1, 1)), "900.000");
        assert_eq!(x_of(&rat(-1, 2)), "0.000");
        assert_eq!(x_of(&rat(11, 60)), "410.000");
        assert_eq!(x_of(&rat(1, 3)), "500.000");
        assert_eq!(x_of(&rat(1, 7)), "385.714");
        assert_eq!(fixed3(&rat(-1, 3)), "-0.333");
        assert_eq!(fixed3(&rat(1, 2000)), "0.001");
    }
}
