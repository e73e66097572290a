//! On-disk JSON formats. Rational numbers travel as strings ("3/4", "1")
//! so that reading a file back yields exactly the relation that was
//! written — no floating point is involved at any stage.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use mahavier_core::rat::format_rat;
use mahavier_core::{
    parse_rat, Interval, IntervalError, Piece, PieceError, Rat, RatParseError, Relation,
    RelationError,
};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational: {0}")]
    Rat(#[from] RatParseError),
    #[error("bad interval: {0}")]
    Interval(#[from] IntervalError),
    #[error("bad piece: {0}")]
    Piece(#[from] PieceError),
    #[error("bad relation: {0}")]
    Relation(#[from] RelationError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationDoc {
    pub name: String,
    pub pieces: Vec<PieceDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PieceDoc {
    Rect { x: [String; 2], y: [String; 2] },
    Segment { from: [String; 2], to: [String; 2] },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub groups: Vec<Vec<usize>>,
}

pub fn to_doc(r: &Relation) -> RelationDoc {
    let pieces = r
        .pieces()
        .iter()
        .map(|p| match p {
            Piece::Rect { x, y } => PieceDoc::Rect {
                x: [format_rat(x.lo()), format_rat(x.hi())],
                y: [format_rat(y.lo()), format_rat(y.hi())],
            },
            Piece::Segment { from, to } => PieceDoc::Segment {
                from: [format_rat(&from.0), format_rat(&from.1)],
                to: [format_rat(&to.0), format_rat(&to.1)],
            },
        })
        .collect();
    RelationDoc {
        name: r.name().to_string(),
        pieces,
    }
}

fn parse_pair(pair: &[String; 2]) -> Result<(Rat, Rat), FormatError> {
    Ok((parse_rat(&pair[0])?, parse_rat(&pair[1])?))
}

pub fn from_doc(doc: &RelationDoc) -> Result<Relation, FormatError> {
    let mut pieces = Vec::with_capacity(doc.pieces.len());
    for p in &doc.pieces {
        match p {
            PieceDoc::Rect { x, y } => {
                let (xlo, xhi) = parse_pair(x)?;
                let (ylo, yhi) = parse_pair(y)?;
                pieces.push(Piece::rect(
                    Interval::new(xlo, xhi)?,
                    Interval::new(ylo, yhi)?,
                ));
            }
            PieceDoc::Segment { from, to } => {
                pieces.push(Piece::segment(parse_pair(from)?, parse_pair(to)?)?);
            }
        }
    }
    Ok(Relation::new(doc.name.clone(), pieces)?)
}

pub fn read_relation(path: &Path) -> Result<Relation, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Read {
        path: path.display().to_string(),
        source,
    })?;
    let doc: RelationDoc = serde_json::from_str(&text)?;
    from_doc(&doc)
}

pub fn write_relation(path: &Path, r: &Relation) -> Result<(), FormatError> {
    let mut text = serde_json::to_string_pretty(&to_doc(r))?;
    text.push('\n');
    fs::write(path, text).map_err(|source| FormatError::Write {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_decomposition(path: &Path) -> Result<Vec<Vec<usize>>, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Read {
        path: path.display().to_string(),
        source,
    })?;
    let doc: DecompositionDoc = serde_json::from_str(&text)?;
    Ok(doc.groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mahavier_core::make_example;

    #[test]
    fn round_trip_is_exact_on_the_catalog() {
        for name in mahavier_core::catalog_names() {
            let r = make_example(name).unwrap();
            let doc = to_doc(&r);
            let text = serde_json::to_string(&doc).unwrap();
            let parsed: RelationDoc = serde_json::from_str(&text).unwrap();
            let back = from_doc(&parsed).unwrap();
            assert_eq!(r.name(), back.name(), "{name}");
            assert_eq!(r.pieces(), back.pieces(), "{name}");
        }
    }

    #[test]
    fn thirds_survive_the_string_encoding() {
        let r = mahavier_core::random_patched_diagonal(9, &mahavier_core::rat(1, 3), 4);
        let back = from_doc(&to_doc(&r)).unwrap();
        assert_eq!(r.pieces(), back.pieces());
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(serde_json::from_str::<RelationDoc>("{\"name\": 3}").is_err());
        let doc = RelationDoc {
            name: "bad".into(),
            pieces: vec![PieceDoc::Rect {
                x: ["1/0".into(), "1".into()],
                y: ["0".into(), "1".into()],
            }],
        };
        assert!(matches!(from_doc(&doc), Err(FormatError::Rat(_))));
        let gap = RelationDoc {
            name: "gappy".into(),
            pieces: vec![PieceDoc::Rect {
                x: ["0".into(), "1/4".into()],
                y: ["0".into(), "1".into()],
            }],
        };
        assert!(matches!(from_doc(&gap), Err(FormatError::Relation(_))));
    }
}
