//! Finite descriptions of infinite word sequences `(w_1, w_2, ...)` and the letter
//! substitution that moves a sequence from an arbitrary alphabet onto `{a, b}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("index {index} is out of range for an explicit list of {len} words")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("sequence indices start at 1")]
    ZeroIndex,
    #[error("letter {0:?} has no image")]
    MissingLetterImage(char),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
}

/// The affine exponent `c·n + d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exponent {
    pub c: u32,
    pub d: u32,
}

impl Exponent {
    pub fn eval(self, n: usize) -> usize {
        self.c as usize * n + self.d as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Segment {
    Literal(Word),
    Power { base: Word, exponent: Exponent },
}

/// A concatenation of segments; instantiating it at `n` expands each power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template(Vec<Segment>);

impl Template {
    pub fn new(segments: Vec<Segment>) -> Result<Template, SequenceError> {
        if segments.is_empty() {
            return Err(SequenceError::InvalidFamily("template has no segments".into()));
        }
        let mut yields_letters = false;
        for seg in &segments {
            match seg {
                Segment::Literal(word) => yields_letters |= !word.is_empty(),
                Segment::Power { base, exponent } => {
                    if exponent.c == 0 && exponent.d == 0 {
                        return Err(SequenceError::InvalidFamily(
                            "power exponent must satisfy c + d >= 1".into(),
                        ));
                    }
                    yields_letters |= !base.is_empty();
                }
            }
        }
        if !yields_letters {
            return Err(SequenceError::InvalidFamily(
                "template instantiates to the empty word".into(),
            ));
        }
        Ok(Template(segments))
    }

    pub fn segments(&self) -> &[Segment] {
        &self.0
    }

    pub fn is_parametric(&self) -> bool {
        self.0.iter().any(|s| matches!(s, Segment::Power { .. }))
    }

    pub fn instantiate(&self, n: usize) -> Word {
        let mut out = Word::empty();
        for seg in &self.0 {
            match seg {
                Segment::Literal(word) => out = out.concat(word),
                Segment::Power { base, exponent } => out = out.concat(&base.repeat(exponent.eval(n))),
            }
        }
        out
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for seg in &self.0 {
            match seg {
                Segment::Literal(word) => write!(f, "{word}")?,
                Segment::Power { base, exponent } => {
                    let exp = match (exponent.c, exponent.d) {
                        (0, d) => format!("{d}"),
                        (1, 0) => "n".to_string(),
                        (c, 0) => format!("{c}n"),
                        (1, d) => format!("n+{d}"),
                        (c, d) => format!("{c}n+{d}"),
                    };
                    write!(f, "({base})^{{{exp}}}")?
                }
            }
        }
        Ok(())
    }
}

/// A sequence of words over `{a, b}`.
///
/// A single template containing a power is a parametric family and serves every
/// index. Any other template list is an explicit finite sequence: template `i`
/// serves index `i` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceFamily {
    templates: Vec<Template>,
}

impl SequenceFamily {
    pub fn new(templates: Vec<Template>) -> Result<SequenceFamily, SequenceError> {
        if templates.is_empty() {
            return Err(SequenceError::InvalidFamily("family has no templates".into()));
        }
        Ok(SequenceFamily { templates })
    }

    pub fn parametric(template: Template) -> SequenceFamily {
        SequenceFamily { templates: vec![template] }
    }

    /// An explicit finite list of nonempty words.
    pub fn explicit(words: &[Word]) -> Result<SequenceFamily, SequenceError> {
        let templates = words
            .iter()
            .map(|word| Template::new(vec![Segment::Literal(word.clone())]))
            .collect::<Result<Vec<_>, _>>()?;
        SequenceFamily::new(templates)
    }

    pub fn templates(&self) -> &[Template] {
        &self.templates
    }

    /// Number of indices the family serves, or `None` when it is infinite.
    pub fn term_count(&self) -> Option<usize> {
        match self.templates.as_slice() {
            [only] if only.is_parametric() => None,
            all => Some(all.len()),
        }
    }

    pub fn instantiate(&self, n: usize) -> Result<Word, SequenceError> {
        if n == 0 {
            return Err(SequenceError::ZeroIndex);
        }
        match self.term_count() {
            None => Ok(self.templates[0].instantiate(n)),
            Some(len) if n <= len => Ok(self.templates[n - 1].instantiate(n)),
            Some(len) => Err(SequenceError::IndexOutOfRange { index: n, len }),
        }
    }

    /// `w_1, ..., w_bound`.
    pub fn prefix(&self, bound: usize) -> Result<Vec<Word>, SequenceError> {
        (1..=bound).map(|n| self.instantiate(n)).collect()
    }

    /// `aba^{n+1}b^2`.
    pub fn banach() -> SequenceFamily {
        SequenceFamily::parametric(
            Template::new(vec![
                Segment::Literal("ab".parse().unwrap()),
                Segment::Power { base: "a".parse().unwrap(), exponent: Exponent { c: 1, d: 1 } },
                Segment::Literal("bb".parse().unwrap()),
            ])
            .unwrap(),
        )
    }

    /// `a^2b^3(abab^3)^{n+1}ab^2ab^3`.
    pub fn sierpinski() -> SequenceFamily {
        SequenceFamily::parametric(
            Template::new(vec![
                Segment::Literal("aabbb".parse().unwrap()),
                Segment::Power { base: "ababbb".parse().unwrap(), exponent: Exponent { c: 1, d: 1 } },
                Segment::Literal("abbabbb".parse().unwrap()),
            ])
            .unwrap(),
        )
    }

    /// `aba(ab)^{n+1}bab`: meets the theorem's hypotheses with `S_w = <ab>`.
    pub fn aba_ab_bab() -> SequenceFamily {
        SequenceFamily::parametric(
            Template::new(vec![
                Segment::Literal("aba".parse().unwrap()),
                Segment::Power { base: "ab".parse().unwrap(), exponent: Exponent { c: 1, d: 1 } },
                Segment::Literal("bab".parse().unwrap()),
            ])
            .unwrap(),
        )
    }
}

impl fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.templates.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Replaces every letter of every input word by its image.
pub fn substitute(
    sequence: &[&str],
    assignment: &BTreeMap<char, Word>,
) -> Result<Vec<Word>, SequenceError> {
    sequence
        .iter()
        .map(|word| {
            word.chars().try_fold(Word::empty(), |acc, c| {
                assignment
                    .get(&c)
                    .map(|image| acc.concat(image))
                    .ok_or(SequenceError::MissingLetterImage(c))
            })
        })
        .collect()
}

/// On-disk family description:
/// `{"alphabet": "ab", "templates": [[{"lit": "aba"}, {"pow": {"base": "ab", "c": 1, "d": 1}}]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub alphabet: String,
    pub templates: Vec<Vec<SegmentSpec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentSpec {
    Lit(Word),
    Pow(PowerSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerSpec {
    pub base: Word,
    pub c: u32,
    pub d: u32,
}

impl FamilyFile {
    pub fn into_family(self) -> Result<SequenceFamily, SequenceError> {
        let templates = self
            .templates
            .into_iter()
            .map(|segs| {
                Template::new(
                    segs.into_iter()
                        .map(|s| match s {
                            SegmentSpec::Lit(word) => Segment::Literal(word),
                            SegmentSpec::Pow(p) => Segment::Power {
                                base: p.base,
                                exponent: Exponent { c: p.c, d: p.d },
                            },
                        })
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        SequenceFamily::new(templates)
    }

    pub fn from_family(family: &SequenceFamily) -> FamilyFile {
        FamilyFile {
            alphabet: "ab".into(),
            templates: family
                .templates()
                .iter()
                .map(|t| {
                    t.segments()
                        .iter()
                        .map(|s| match s {
                            Segment::Literal(word) => SegmentSpec::Lit(word.clone()),
                            Segment::Power { base, exponent } => SegmentSpec::Pow(PowerSpec {
                                base: base.clone(),
                                c: exponent.c,
                                d: exponent.d,
                            }),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;
    use proptest::prelude::*;

    #[test]
    fn instantiates_named_families() {
        assert_eq!(SequenceFamily::banach().instantiate(1).unwrap(), w("abaabb"));
        assert_eq!(SequenceFamily::aba_ab_bab().instantiate(1).unwrap(), w("abaababbab"));
        assert_eq!(
            SequenceFamily::sierpinski().instantiate(1).unwrap(),
            w("aabbbababbbababbbabbabbb")
        );
        assert_eq!(SequenceFamily::banach().term_count(), None);
    }

    #[test]
    fn explicit_lists_are_finite() {
        let fam = SequenceFamily::explicit(&[w("ab")]).unwrap();
        assert_eq!(fam.instantiate(1).unwrap(), w("ab"));
        assert_eq!(
            fam.instantiate(2),
            Err(SequenceError::IndexOutOfRange { index: 2, len: 1 })
        );
        assert_eq!(SequenceFamily::banach().instantiate(0), Err(SequenceError::ZeroIndex));
    }

    #[test]
    fn rejects_degenerate_templates() {
        assert!(Template::new(vec![]).is_err());
        assert!(Template::new(vec![Segment::Literal(Word::empty())]).is_err());
        assert!(Template::new(vec![Segment::Power {
            base: w("a"),
            exponent: Exponent { c: 0, d: 0 }
        }])
        .is_err());
        assert!(SequenceFamily::explicit(&[w("ab"), Word::empty()]).is_err());
    }

    #[test]
    fn substitution_examples() {
        let map: BTreeMap<char, Word> = [('c', w("ab")), ('d', w("ba"))].into_iter().collect();
        assert_eq!(substitute(&["cd"], &map).unwrap(), vec![w("abba")]);
        assert_eq!(substitute(&["c"], &map).unwrap(), vec![w("ab")]);
        let single: BTreeMap<char, Word> = [('c', w("a"))].into_iter().collect();
        assert_eq!(substitute(&["cc"], &single).unwrap(), vec![w("aa")]);
        assert_eq!(substitute(&["ce"], &map), Err(SequenceError::MissingLetterImage('e')));
    }

    #[test]
    fn family_file_round_trip() {
        let json = r#"{"alphabet":"ab","templates":[[{"lit":"aba"},{"pow":{"base":"ab","c":1,"d":1}},{"lit":"bab"}]]}"#;
        let file: FamilyFile = serde_json::from_str(json).unwrap();
        let fam = file.clone().into_family().unwrap();
        assert_eq!(fam, SequenceFamily::aba_ab_bab());
        assert_eq!(FamilyFile::from_family(&fam), file);
        assert_eq!(fam.to_string(), "aba(ab)^{n+1}bab");
    }

    proptest! {
        #[test]
        fn substitution_is_a_homomorphism(u in "[cde]{0,6}", v in "[cde]{0,6}",
                                          images in proptest::collection::vec("[ab]{0,3}", 3)) {
            let map: BTreeMap<char, Word> = ['c', 'd', 'e'].into_iter()
                .zip(images.iter().map(|s| w(s))).collect();
            let uv = format!("{u}{v}");
            let whole = substitute(&[&uv], &map).unwrap();
            let parts = substitute(&[&u, &v], &map).unwrap();
            prop_assert_eq!(&whole[0], &parts[0].concat(&parts[1]));
        }

        #[test]
        fn instantiation_grows_with_n(lit in "[ab]{0,4}", base in "[ab]{1,3}", c in 0u32..3, d in 1u32..3,
                                      n in 1usize..20) {
            let t = Template::new(vec![
                Segment::Literal(w(&lit)),
                Segment::Power { base: w(&base), exponent: Exponent { c, d } },
            ]).unwrap();
            let fam = SequenceFamily::parametric(t);
            let now = fam.instantiate(n).unwrap();
            let next = fam.instantiate(n + 1).unwrap();
            prop_assert!(!now.is_empty());
            prop_assert!(next.len() >= now.len());
        }
    }
}
