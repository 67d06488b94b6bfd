//! Groupoid file format: a single JSON document with fields `objects`,
//! `elements`, `units`, `mul`, `inv`. Canonical form has keys sorted,
//! arrays sorted lexicographically, UTF-8 with LF line endings.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::finite::{validate, BuildError, ElementRecord, FiniteLocalGroupoid, ValidationReport};

// Field names in alphabetical order so serialization emits sorted keys.
#[derive(Debug, Serialize, Deserialize)]
struct GroupoidFile {
    elements: Vec<ElementEntry>,
    inv: Vec<[String; 2]>,
    mul: Vec<[String; 3]>,
    objects: Vec<String>,
    units: BTreeMap<String, String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ElementEntry {
    id: String,
    source: String,
    target: String,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("inconsistent table: {0}")]
    Table(#[from] BuildError),
    #[error("groupoid axioms fail:\n{0}")]
    Validation(ValidationReport),
}

/// Loads a groupoid file without checking the axioms.
pub fn load(path: &Path) -> Result<FiniteLocalGroupoid, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    from_json(&text)
}

/// Loads a groupoid file and rejects it unless every axiom holds.
pub fn load_strict(path: &Path) -> Result<FiniteLocalGroupoid, LoadError> {
    let g = load(path)?;
    let report = validate(&g);
    if report.is_clean() {
        Ok(g)
    } else {
        Err(LoadError::Validation(report))
    }
}

pub fn from_json(text: &str) -> Result<FiniteLocalGroupoid, LoadError> {
    let file: GroupoidFile = serde_json::from_str(text).map_err(|e| LoadError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let elements = file
        .elements
        .into_iter()
        .map(|e| ElementRecord {
            id: e.id,
            source: e.source,
            target: e.target,
        })
        .collect();
    let mul = file
        .mul
        .into_iter()
        .map(|[g, h, gh]| (g, h, gh))
        .collect();
    let inv = file.inv.into_iter().map(|[g, gi]| (g, gi)).collect();
    Ok(FiniteLocalGroupoid::new(
        file.objects,
        elements,
        file.units,
        mul,
        inv,
    )?)
}

/// Canonical JSON rendering: sorted keys, sorted arrays, LF endings,
/// trailing newline.
pub fn to_canonical_json(g: &FiniteLocalGroupoid) -> String {
    let mut elements: Vec<ElementEntry> = g
        .element_records()
        .iter()
        .map(|e| ElementEntry {
            id: e.id.clone(),
            source: e.source.clone(),
            target: e.target.clone(),
        })
        .collect();
    elements.sort_by(|a, b| a.id.cmp(&b.id));
    let mut mul: Vec<[String; 3]> = g
        .mul_table()
        .iter()
        .map(|(&(a, b), &ab)| {
            [
                g.element_id(a).to_string(),
                g.element_id(b).to_string(),
                g.element_id(ab).to_string(),
            ]
        })
        .collect();
    mul.sort();
    let mut inv: Vec<[String; 2]> = g
        .inv_table()
        .iter()
        .map(|(&a, &ai)| [g.element_id(a).to_string(), g.element_id(ai).to_string()])
        .collect();
    inv.sort();
    let mut objects = g.object_ids().to_vec();
    objects.sort();
    let units = objects
        .iter()
        .enumerate()
        .map(|(oi, o)| {
            (
                o.clone(),
                g.element_id(g.unit_of_object(oi)).to_string(),
            )
        })
        .collect();
    let file = GroupoidFile {
        elements,
        inv,
        mul,
        objects,
        units,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("groupoid file serializes");
    text.push('\n');
    text
}

/// Writes the canonical form of `g` to `path`.
pub fn save(g: &FiniteLocalGroupoid, path: &Path) -> Result<(), LoadError> {
    fs::write(path, to_canonical_json(g)).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_identical() {
        let g = FiniteLocalGroupoid::cyclic_group(5);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("z5.json");
        save(&g, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let loaded = load(&path).unwrap();
        assert_eq!(loaded, g);
        assert_eq!(to_canonical_json(&loaded), text);
    }

    #[test]
    fn dangling_mul_id_is_a_parse_failure() {
        let text = r#"{
  "elements": [{"id": "e", "source": "*", "target": "*"}],
  "inv": [],
  "mul": [["e", "ghost", "e"]],
  "objects": ["*"],
  "units": {"*": "e"}
}"#;
        let err = from_json(text).unwrap_err();
        assert!(matches!(err, LoadError::Table(BuildError::UnknownElement(id, _)) if id == "ghost"));
    }

    #[test]
    fn malformed_json_reports_location() {
        let err = from_json("{ not json").unwrap_err();
        match err {
            LoadError::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn strict_load_rejects_axiom_violations() {
        let g = FiniteLocalGroupoid::cyclic_group(3);
        let broken = g.without_product(
            g.element_by_id("1").unwrap(),
            g.element_by_id("0").unwrap(),
        );
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("broken.json");
        save(&broken, &path).unwrap();
        assert!(load(&path).is_ok());
        assert!(matches!(load_strict(&path), Err(LoadError::Validation(_))));
    }

    /// Rewrites the shipped fixture corpus in canonical form. Run with
    /// `cargo test -p groupoid-lab regenerate_fixtures -- --ignored`.
    #[test]
    #[ignore]
    fn regenerate_fixtures() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
        fs::create_dir_all(&dir).unwrap();
        save(&FiniteLocalGroupoid::cyclic_group(5), &dir.join("z5.json")).unwrap();
        save(
            &FiniteLocalGroupoid::integer_interval(4),
            &dir.join("interval4.json"),
        )
        .unwrap();
        save(
            &FiniteLocalGroupoid::nonassociative_witness_fixture(),
            &dir.join("nonassoc_witness.json"),
        )
        .unwrap();
        save(&FiniteLocalGroupoid::unit_only(), &dir.join("unit_only.json")).unwrap();
    }

    #[test]
    fn shipped_fixtures_match_their_constructors() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
        let z5 = load(&dir.join("z5.json")).unwrap();
        assert_eq!(z5, FiniteLocalGroupoid::cyclic_group(5));
        let interval = load(&dir.join("interval4.json")).unwrap();
        assert_eq!(interval, FiniteLocalGroupoid::integer_interval(4));
    }

    #[test]
    fn shipped_fixtures_load_clean() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
        let mut seen = 0;
        for name in ["z5.json", "interval4.json", "nonassoc_witness.json", "unit_only.json"] {
            let g = load_strict(&dir.join(name)).unwrap();
            assert!(validate(&g).is_clean());
            seen += 1;
        }
        assert!(seen >= 3);
    }
}
