//! Angles written either as decimals or as fractions of π (`pi/4`,
//! `-3pi/4`, `2*pi/3`, `pi`).

use std::f64::consts::PI;

pub fn parse_angle(text: &str) -> Option<f64> {
    let t: String = text.trim().chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return None;
    }
    let Some(pos) = t.find("pi") else {
        return t.parse::<f64>().ok().filter(|x| x.is_finite());
    };
    let (head, tail) = (&t[..pos], &t[pos + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let coef = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().ok()?,
    };
    let denom = match tail {
        "" => 1.0,
        d => d.strip_prefix('/')?.parse::<f64>().ok()?,
    };
    let v = coef * PI / denom;
    v.is_finite().then_some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_angle("0.5"), Some(0.5));
        assert_eq!(parse_angle("pi"), Some(PI));
        assert_eq!(parse_angle("pi/4"), Some(PI / 4.0));
        assert_eq!(parse_angle("-pi/2"), Some(-PI / 2.0));
        assert_eq!(parse_angle("3pi/4"), Some(3.0 * PI / 4.0));
        assert_eq!(parse_angle("2*pi/3"), Some(2.0 * PI / 3.0));
        assert_eq!(parse_angle(" 1e-3 "), Some(1e-3));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "pie", "pi/", "pi/0", "x", "pi*2", "nan", "inf"] {
            assert_eq!(parse_angle(bad), None, "{bad}");
        }
    }
}
