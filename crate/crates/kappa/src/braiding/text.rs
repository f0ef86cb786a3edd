//! Reading certificates back from their line-per-block text form.

use std::fmt::Display;
use std::str::FromStr;

use thiserror::Error;

use super::cert::{
    BraidBlock, Certificate, CollapsedBlock, CollapsedCertificate, LayeredCertificate, OmegaCertificate,
};
use crate::cardinals::ExtCard;
use crate::monoid::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate line {line}: {message}")]
pub struct CertParseError {
    pub line: usize,
    pub message: String,
}

/// Splits `s` at occurrences of `sep` outside any brackets.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..k]);
                start = k + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parses the inside of a family literal: `e, e*m, ...`.
pub fn parse_family_body<E>(body: &str) -> Result<Family<E>, String>
where
    E: FromStr + Clone + Ord,
    E::Err: Display,
{
    let mut fam = Family::new();
    if body.trim().is_empty() {
        return Ok(fam);
    }
    for item in split_top_level(body, ',') {
        let parts = split_top_level(item, '*');
        let (elem, mult) = match parts.as_slice() {
            [e] => (e.trim(), ExtCard::one()),
            [e, m] => (
                e.trim(),
                m.trim()
                    .parse::<ExtCard>()
                    .map_err(|err| format!("bad multiplicity `{}`: {err}", m.trim()))?,
            ),
            _ => return Err(format!("bad family entry `{}`", item.trim())),
        };
        let e = elem
            .parse::<E>()
            .map_err(|err| format!("bad element `{elem}`: {err}"))?;
        fam.push(e, mult);
    }
    Ok(fam)
}

type Fields<'a> = (&'a str, Vec<(&'a str, &'a str)>);

/// Splits `B i={..} j={..} u=.. v'=..` into its tag and `key=value` fields.
fn fields(line: &str) -> Result<Fields<'_>, String> {
    let line = line.trim();
    let (tag, mut rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    let mut out = Vec::new();
    loop {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        let eq = rest
            .find('=')
            .ok_or_else(|| format!("expected key=value at `{rest}`"))?;
        let key = rest[..eq].trim();
        let value_start = &rest[eq + 1..];
        let mut depth = 0i32;
        let mut end = value_start.len();
        for (k, c) in value_start.char_indices() {
            match c {
                '(' | '[' | '{' => depth += 1,
                ')' | ']' | '}' => depth -= 1,
                c if c.is_whitespace() && depth == 0 => {
                    end = k;
                    break;
                }
                _ => {}
            }
        }
        out.push((key, value_start[..end].trim()));
        rest = &value_start[end..];
    }
    Ok((tag, out))
}

fn field<'a>(fs: &[(&str, &'a str)], key: &str) -> Result<&'a str, String> {
    fs.iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| format!("missing field `{key}`"))
}

fn braced<E>(value: &str) -> Result<Family<E>, String>
where
    E: FromStr + Clone + Ord,
    E::Err: Display,
{
    let body = value
        .strip_prefix('{')
        .and_then(|v| v.strip_suffix('}'))
        .ok_or_else(|| format!("expected a braced family, found `{value}`"))?;
    parse_family_body(body)
}

fn element<E>(value: &str) -> Result<E, String>
where
    E: FromStr,
    E::Err: Display,
{
    value
        .parse::<E>()
        .map_err(|err| format!("bad element `{value}`: {err}"))
}

enum Section {
    None,
    Prefix,
    Cycle,
}

/// Parses a certificate; lines may also be separated by `;`.
pub fn parse_certificate<E>(text: &str) -> Result<Certificate<E>, CertParseError>
where
    E: FromStr + Clone + Ord,
    E::Err: Display,
{
    let mut layers: Vec<(ExtCard, OmegaCertificate<E>)> = Vec::new();
    let mut current = OmegaCertificate {
        prefix: Vec::new(),
        cycle: Vec::new(),
    };
    let mut weight: Option<ExtCard> = None;
    let mut collapsed: Option<Vec<CollapsedBlock<E>>> = None;
    let mut section = Section::None;

    let lines = text
        .split(['\n', ';'])
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    for (k, line) in lines {
        let err = |message: String| CertParseError { line: k + 1, message };
        let (tag, fs) = fields(line).map_err(err)?;
        match tag {
            "PREFIX" => section = Section::Prefix,
            "CYCLE" => section = Section::Cycle,
            "LAYER" => {
                if let Some(w) = weight.take() {
                    layers.push((
                        w,
                        std::mem::replace(
                            &mut current,
                            OmegaCertificate {
                                prefix: Vec::new(),
                                cycle: Vec::new(),
                            },
                        ),
                    ));
                }
                let w =
                    field(&fs, "w").and_then(|w| w.parse::<ExtCard>().map_err(|e| format!("bad weight `{w}`: {e}")));
                weight = Some(w.map_err(err)?);
                section = Section::None;
            }
            "COLLAPSED" => collapsed = Some(Vec::new()),
            "B" => {
                let block = (|| -> Result<BraidBlock<E>, String> {
                    Ok(BraidBlock {
                        iblock: braced(field(&fs, "i")?)?,
                        jblock: braced(field(&fs, "j")?)?,
                        u: element(field(&fs, "u")?)?,
                        v_next: element(field(&fs, "v'")?)?,
                    })
                })()
                .map_err(err)?;
                match section {
                    Section::Prefix => current.prefix.push(block),
                    Section::Cycle => current.cycle.push(block),
                    Section::None => return Err(err("block outside a PREFIX or CYCLE section".into())),
                }
            }
            "C" => {
                let blocks = collapsed
                    .as_mut()
                    .ok_or_else(|| err("C line outside a COLLAPSED section".into()))?;
                let block = (|| -> Result<CollapsedBlock<E>, String> {
                    let w = field(&fs, "w")?;
                    Ok(CollapsedBlock {
                        iblock: braced(field(&fs, "i")?)?,
                        jblock: braced(field(&fs, "j")?)?,
                        weight: w.parse().map_err(|e| format!("bad weight `{w}`: {e}"))?,
                    })
                })()
                .map_err(err)?;
                blocks.push(block);
            }
            other => return Err(err(format!("unknown line tag `{other}`"))),
        }
    }
    if let Some(blocks) = collapsed {
        return Ok(Certificate::Collapsed(CollapsedCertificate { blocks }));
    }
    match weight {
        Some(w) => {
            layers.push((w, current));
            Ok(Certificate::Layered(LayeredCertificate { layers }))
        }
        None => Ok(Certificate::Omega(current)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_vectors::CardVec;

    #[test]
    fn omega_round_trip() {
        let text = "PREFIX\nB i={1, 1} j={2} u=2 v'=0\nCYCLE\nB i={1*2} j={2} u=2 v'=0";
        let cert: Certificate<ExtCard> = parse_certificate(text).unwrap();
        assert_eq!(cert.to_string(), text);
        let semi: Certificate<ExtCard> =
            parse_certificate("PREFIX; B i={1,1} j={2} u=2 v'=0; CYCLE; B i={1*2} j={2} u=2 v'=0").unwrap();
        assert_eq!(semi, cert);
    }

    #[test]
    fn vector_elements_and_layers() {
        let text = "LAYER w=1\nPREFIX\nB i={(1, 0)*3} j={(3, 0)} u=(3, 0) v'=(0, 0)\nCYCLE\nLAYER w=aleph1\nPREFIX\nCYCLE\nB i={(1, 1)} j={(1, 1)} u=(1, 1) v'=(0, 0)";
        let cert: Certificate<CardVec> = parse_certificate(text).unwrap();
        let Certificate::Layered(l) = &cert else {
            panic!("expected layers")
        };
        assert_eq!(l.layers.len(), 2);
        assert_eq!(l.layers[1].0, ExtCard::aleph_raw(1));
        assert_eq!(cert.to_string(), text);
    }

    #[test]
    fn collapsed_round_trip() {
        let text = "COLLAPSED\nC i={1*aleph0} j={2*aleph0} w=1\nC i={1*aleph0} j={2*aleph0} w=aleph1";
        let cert: Certificate<ExtCard> = parse_certificate(text).unwrap();
        assert_eq!(cert.to_string(), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_certificate::<ExtCard>("PREFIX\nB i={1} j={x} u=1 v'=0").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_certificate::<ExtCard>("B i={1} j={1} u=1 v'=0").unwrap_err();
        assert!(err.message.contains("outside"));
        let err = parse_certificate::<ExtCard>("PREFIX\nB i={1} j={1} u=1").unwrap_err();
        assert!(err.message.contains("v'"));
    }
}
