//! Complex-number literals of the form "1.5", "2i", "-i", "0.7+0.25i".

use std::fmt;

use moebius_floquet_core::C64;
use serde::de::{self, Deserializer};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CNum(pub C64);

impl CNum {
    pub fn value(&self) -> C64 {
        self.0
    }
}

pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    // split into leading real part and trailing imaginary part at the last
    // sign that is not an exponent sign
    let bytes = t.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let c = bytes[k] as char;
        if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
            split = Some(k);
            break;
        }
    }
    let (re_str, im_str) = match split {
        Some(k) if t.ends_with('i') || t.ends_with('I') => (&t[..k], &t[k..]),
        _ => {
            if t.ends_with('i') || t.ends_with('I') {
                ("", t.as_str())
            } else {
                (t.as_str(), "")
            }
        }
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str.parse::<f64>().map_err(|_| format!("bad real part in '{}'", s))?
    };
    let im = if im_str.is_empty() {
        0.0
    } else {
        let body = &im_str[..im_str.len() - 1];
        match body {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => body.parse::<f64>().map_err(|_| format!("bad imaginary part in '{}'", s))?,
        }
    };
    Ok(C64::new(re, im))
}

pub fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

impl std::str::FromStr for CNum {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_complex(s).map(CNum)
    }
}

impl fmt::Display for CNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_complex(self.0))
    }
}

/// In config files a complex value is either a bare number or a string literal.
impl<'de> serde::Deserialize<'de> for CNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match <Raw as serde::Deserialize>::deserialize(d)? {
            Raw::Num(x) => Ok(CNum(C64::new(x, 0.0))),
            Raw::Str(s) => parse_complex(&s).map(CNum).map_err(de::Error::custom),
        }
    }
}
