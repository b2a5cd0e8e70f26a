//! Angle and class parsing: decimals and rational multiples of pi.
//!
//! Accepted angle tokens: `1.25`, `pi`, `3pi/2`, `2pi/3`, `0.4pi`, with
//! `π` as a synonym for `pi`. Pairs are comma separated, classes semicolon
//! separated: `"3pi/2,pi/2; 4pi/3,2pi/3"`.

use chlab::isometry::AnglePair;
use std::f64::consts::PI;

pub fn parse_angle(token: &str) -> Result<f64, String> {
    let t = token.trim().replace('π', "pi");
    if t.is_empty() {
        return Err("empty angle token".into());
    }
    if let Some(idx) = t.find("pi") {
        let (pre, post) = (&t[..idx], &t[idx + 2..]);
        let num: f64 = if pre.is_empty() || pre == "+" {
            1.0
        } else if pre == "-" {
            -1.0
        } else {
            pre.parse()
                .map_err(|_| format!("bad numerator in angle '{token}'"))?
        };
        let den: f64 = if post.is_empty() {
            1.0
        } else if let Some(d) = post.strip_prefix('/') {
            let v: f64 = d
                .parse()
                .map_err(|_| format!("bad denominator in angle '{token}'"))?;
            if v == 0.0 {
                return Err(format!("zero denominator in angle '{token}'"));
            }
            v
        } else {
            return Err(format!("unexpected suffix in angle '{token}'"));
        };
        Ok(num * PI / den)
    } else {
        t.parse()
            .map_err(|_| format!("cannot parse angle '{token}'"))
    }
}

pub fn parse_pair(s: &str) -> Result<AnglePair, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected 'a,b' for an angle pair, got '{s}'"));
    }
    Ok(AnglePair::new(parse_angle(parts[0])?, parse_angle(parts[1])?))
}

pub fn parse_classes(s: &str) -> Result<Vec<AnglePair>, String> {
    s.split(';').map(parse_pair).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens() {
        assert!((parse_angle("pi").unwrap() - PI).abs() < 1e-15);
        assert!((parse_angle("3pi/2").unwrap() - 1.5 * PI).abs() < 1e-15);
        assert!((parse_angle("2pi/3").unwrap() - 2.0 * PI / 3.0).abs() < 1e-15);
        assert!((parse_angle("0.75").unwrap() - 0.75).abs() < 1e-15);
        assert!((parse_angle("1.5pi").unwrap() - 1.5 * PI).abs() < 1e-15);
        assert!((parse_angle("3π/2").unwrap() - 1.5 * PI).abs() < 1e-15);
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("wat").is_err());
    }

    #[test]
    fn classes() {
        let v = parse_classes("3pi/2,pi/2; 4pi/3,2pi/3").unwrap();
        assert_eq!(v.len(), 2);
        assert!((v[0].alpha1 - 1.5 * PI).abs() < 1e-15);
    }
}
