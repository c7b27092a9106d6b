//! Text notation for clutters and complexes.
//!
//! Compact notation writes each set as a run of single-digit labels, e.g.
//! `12, 13, 145`. Extended notation braces whitespace-separated labels, e.g.
//! `{1 2 13}, {4 5}`, and is used once labels exceed 9. `{}` is the empty set.

use serde::{Deserialize, Serialize};

use crate::clutter::Clutter;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{antichain_violation, BitFace, MAX_VERTICES};

/// External names for vertex indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledGround {
    labels: Vec<String>,
}

impl LabeledGround {
    /// Labels `1..=n`.
    pub fn numbered(n: usize) -> Self {
        LabeledGround {
            labels: (1..=n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut sorted = labels.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].clone()));
        }
        Ok(LabeledGround { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Labels after removing vertex `v` (matching deletion or contraction).
    pub fn without(&self, v: usize) -> Self {
        let mut labels = self.labels.clone();
        labels.remove(v);
        LabeledGround { labels }
    }

    /// Labels after applying `perm[old] = new`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let mut labels = self.labels.clone();
        for (old, &new) in perm.iter().enumerate() {
            labels[new] = self.labels[old].clone();
        }
        LabeledGround { labels }
    }

    fn compact_ok(&self) -> bool {
        self.labels.iter().all(|l| l.len() == 1 && l != "{" && l != "}" && l != ",")
    }

    pub fn format_set(&self, s: BitFace) -> String {
        if self.compact_ok() && !s.is_empty() {
            s.vertices().map(|v| self.labels[v].as_str()).collect()
        } else {
            let inner: Vec<&str> = s.vertices().map(|v| self.labels[v].as_str()).collect();
            format!("{{{}}}", inner.join(" "))
        }
    }

    pub fn format_sets(&self, sets: &[BitFace]) -> String {
        let mut items: Vec<(Vec<String>, String)> = sets
            .iter()
            .map(|&s| {
                let key = s.vertices().map(|v| self.labels[v].clone()).collect();
                (key, self.format_set(s))
            })
            .collect();
        items.sort_by(|a, b| cmp_labels(&a.0, &b.0));
        items.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(", ")
    }
}

/// Lexicographic on label lists, comparing numeric labels as numbers.
fn cmp_labels(a: &[String], b: &[String]) -> std::cmp::Ordering {
    let key = |l: &String| (l.parse::<u64>().unwrap_or(u64::MAX), l.clone());
    a.iter().map(key).cmp(b.iter().map(key))
}

/// Sets with 1-based positive integer labels, plus where each one started.
fn parse_sets(text: &str) -> Result<Vec<(usize, Vec<usize>)>> {
    let extended = text.contains('{');
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == bytes.len() {
        return Ok(out);
    }
    loop {
        skip_ws(&mut i);
        let start = i;
        let mut labels = Vec::new();
        if extended {
            if i >= bytes.len() || bytes[i] != b'{' {
                return Err(syntax(i, "expected '{'"));
            }
            i += 1;
            loop {
                skip_ws(&mut i);
                if i >= bytes.len() {
                    return Err(syntax(i, "unclosed '{'"));
                }
                if bytes[i] == b'}' {
                    i += 1;
                    break;
                }
                let num_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if num_start == i {
                    return Err(syntax(i, "expected a label"));
                }
                let label: usize = text[num_start..i]
                    .parse()
                    .map_err(|_| syntax(num_start, "label too large"))?;
                if label == 0 || label > MAX_VERTICES {
                    return Err(Error::LabelOutOfRange {
                        label: text[num_start..i].to_string(),
                        message: format!("labels must lie in 1..={MAX_VERTICES}"),
                    });
                }
                labels.push(label);
            }
        } else {
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b',' {
                let c = bytes[i];
                if !c.is_ascii_digit() {
                    return Err(syntax(i, &format!("unexpected character {:?}", c as char)));
                }
                if c == b'0' {
                    return Err(Error::LabelOutOfRange {
                        label: "0".into(),
                        message: "compact labels must lie in 1..=9".into(),
                    });
                }
                labels.push((c - b'0') as usize);
                i += 1;
            }
            if labels.is_empty() {
                return Err(syntax(i, "expected a set"));
            }
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].to_string()));
        }
        out.push((start, sorted));
        skip_ws(&mut i);
        if i == bytes.len() {
            return Ok(out);
        }
        if bytes[i] != b',' {
            return Err(syntax(i, "expected ','"));
        }
        i += 1;
    }
}

fn syntax(position: usize, message: &str) -> Error {
    Error::Syntax {
        position,
        message: message.to_string(),
    }
}

fn ground_for(sets: &[(usize, Vec<usize>)], n: Option<usize>) -> Result<usize> {
    let max = sets.iter().flat_map(|(_, s)| s.iter().copied()).max().unwrap_or(0);
    match n {
        Some(n) if n < max => Err(Error::LabelOutOfRange {
            label: max.to_string(),
            message: format!("ground set has only {n} vertices"),
        }),
        Some(n) if n > MAX_VERTICES => Err(Error::GroundTooLarge(n)),
        Some(n) => Ok(n),
        None => Ok(max),
    }
}

fn to_faces(sets: &[(usize, Vec<usize>)]) -> Vec<BitFace> {
    sets.iter()
        .map(|(_, s)| BitFace::from_vertices(s.iter().map(|l| l - 1)))
        .collect()
}

/// Parses a clutter on labels `1..=n`, where `n` defaults to the largest label.
pub fn parse_clutter(text: &str, n: Option<usize>) -> Result<(Clutter, LabeledGround)> {
    let sets = parse_sets(text)?;
    let n = ground_for(&sets, n)?;
    let mut faces = to_faces(&sets);
    faces.sort_unstable();
    faces.dedup();
    if let Some((smaller, larger)) = antichain_violation(&faces) {
        return Err(Error::NotAntichain { smaller, larger });
    }
    Ok((Clutter::new(n, faces)?, LabeledGround::numbered(n)))
}

/// Parses a complex from its facets; lists that are not antichains are
/// rejected like clutters.
pub fn parse_complex(text: &str, n: Option<usize>) -> Result<(SimplicialComplex, LabeledGround)> {
    let sets = parse_sets(text)?;
    let n = ground_for(&sets, n)?;
    let mut faces = to_faces(&sets);
    faces.sort_unstable();
    faces.dedup();
    if let Some((smaller, larger)) = antichain_violation(&faces) {
        return Err(Error::NotAntichain { smaller, larger });
    }
    Ok((SimplicialComplex::new(n, faces)?, LabeledGround::numbered(n)))
}

pub fn format_clutter(c: &Clutter, labels: &LabeledGround) -> String {
    labels.format_sets(c.circuits())
}

pub fn format_complex(d: &SimplicialComplex, labels: &LabeledGround) -> String {
    labels.format_sets(d.facets())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_round_trip() {
        let text = "12, 13, 24, 35, 46, 56";
        let (c, labels) = parse_clutter(text, None).unwrap();
        assert_eq!(c.n(), 6);
        assert_eq!(c.circuits().len(), 6);
        assert_eq!(format_clutter(&c, &labels), text);
        let (c, _) = parse_clutter("123", None).unwrap();
        assert_eq!(c.circuits(), &[BitFace::full(3)]);
    }

    #[test]
    fn extended_round_trip() {
        let text = "{4 5}, {1 2 13}";
        let (c, labels) = parse_clutter(text, None).unwrap();
        assert_eq!(c.n(), 13);
        assert_eq!(format_clutter(&c, &labels), "{1 2 13}, {4 5}");
        let (again, _) = parse_clutter(&format_clutter(&c, &labels), Some(13)).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn degenerate_inputs() {
        let (c, _) = parse_clutter("", Some(3)).unwrap();
        assert_eq!(c, Clutter::no_circuits(3));
        let (c, labels) = parse_clutter("{}", Some(2)).unwrap();
        assert_eq!(c, Clutter::empty_circuit(2));
        assert_eq!(format_clutter(&c, &labels), "{}");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_clutter("12, 123", None),
            Err(Error::NotAntichain { .. })
        ));
        assert_eq!(
            parse_clutter("12, 1a", None),
            Err(Error::Syntax { position: 5, message: "unexpected character 'a'".into() })
        );
        assert!(matches!(parse_clutter("10", None), Err(Error::LabelOutOfRange { .. })));
        assert!(matches!(parse_clutter("12, 34", Some(3)), Err(Error::LabelOutOfRange { .. })));
        assert!(matches!(parse_clutter("{1 2", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_clutter("{40}", None), Err(Error::LabelOutOfRange { .. })));
        assert_eq!(parse_clutter("112", None), Err(Error::DuplicateLabel("1".into())));
        assert!(matches!(parse_clutter("12,, 3", None), Err(Error::Syntax { .. })));
    }

    #[test]
    fn labels_follow_minors() {
        let (c, labels) = parse_clutter("12, 13, 24, 35, 46, 56", None).unwrap();
        let d = c.delete_vertex(0).unwrap();
        let l = labels.without(0);
        assert_eq!(format_clutter(&d, &l), "24, 35, 46, 56");
    }

    #[test]
    fn complexes() {
        let (d, labels) = parse_complex("145, 16, 236, 25, 34", None).unwrap();
        assert_eq!(d.facets().len(), 5);
        assert_eq!(format_complex(&d, &labels), "145, 16, 236, 25, 34");
    }
}
