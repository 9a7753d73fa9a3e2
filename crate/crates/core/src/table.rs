//! Named knot fixtures: an input (braid word or presentation) plus optional
//! cross-check annotations.

use crate::braid::{braid_to_presentation, BraidWord};
use crate::field::Field;
use crate::laurent::LaurentPoly;
use crate::presentation::Presentation;
use crate::{Error, Result};
use std::path::Path;

pub const TABLE_HEADER: &str = "# talex table v1";

#[derive(Clone, Debug)]
pub enum KnotInput {
    Braid(BraidWord),
    Presentation(Presentation),
}

impl KnotInput {
    pub fn presentation(&self) -> Result<Presentation> {
        match self {
            KnotInput::Braid(b) => braid_to_presentation(b),
            KnotInput::Presentation(p) => Ok(p.clone()),
        }
    }
}

/// Dispatch on the first content line: `braid …` or the presentation DSL.
pub fn parse_input(text: &str) -> Result<KnotInput> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::Input("empty input".into()))?;
    if first.starts_with("braid") {
        Ok(KnotInput::Braid(BraidWord::parse(text)?))
    } else {
        Ok(KnotInput::Presentation(Presentation::parse(text)?))
    }
}

#[derive(Clone, Debug)]
pub struct KnotTableEntry {
    pub name: String,
    pub input: KnotInput,
    pub known_genus: Option<i64>,
    pub known_fibered: Option<bool>,
    /// Integer coefficients over Q; compared up to units.
    pub classical_alexander: Option<LaurentPoly>,
}

impl KnotTableEntry {
    pub fn presentation(&self) -> Result<Presentation> {
        Ok(self.input.presentation()?.with_label(self.name.clone()))
    }
}

/// Rows are `name | input | key=value …`. The input column is either an
/// inline `braid <n>: …` word or `file <relpath>` resolved against the
/// table's directory. Annotation keys: `genus`, `fibered`, `alex`.
pub fn load_table(path: &Path) -> Result<Vec<KnotTableEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut lines = text.lines().enumerate();
    let header = lines
        .next()
        .map(|(_, l)| l.trim())
        .unwrap_or_default();
    if header != TABLE_HEADER {
        return Err(Error::Input(format!(
            "{}: expected header `{TABLE_HEADER}`",
            path.display()
        )));
    }

    let mut entries: Vec<KnotTableEntry> = Vec::new();
    for (idx, raw) in lines {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = idx + 1;
        let bad = |msg: String| Error::Parse { line: row, col: 1, msg };
        let cols: Vec<&str> = line.split('|').map(str::trim).collect();
        if cols.len() < 2 || cols.len() > 3 {
            return Err(bad(format!("expected 2 or 3 `|` columns, got {}", cols.len())));
        }
        let name = cols[0];
        if name.is_empty() {
            return Err(bad("empty knot name".into()));
        }
        if entries.iter().any(|e| e.name == name) {
            return Err(bad(format!("duplicate entry `{name}`")));
        }
        let input_spec = cols[1];
        let input = if let Some(rel) = input_spec.strip_prefix("file ") {
            let text = std::fs::read_to_string(dir.join(rel.trim()))
                .map_err(|e| bad(format!("cannot read `{}`: {e}", rel.trim())))?;
            parse_input(&text).map_err(|e| bad(format!("in `{}`: {e}", rel.trim())))?
        } else if input_spec.starts_with("braid") {
            KnotInput::Braid(BraidWord::parse(input_spec).map_err(|e| bad(e.to_string()))?)
        } else {
            return Err(bad(format!("input column must be `braid …` or `file …`, got `{input_spec}`")));
        };

        let mut entry = KnotTableEntry {
            name: name.to_string(),
            input,
            known_genus: None,
            known_fibered: None,
            classical_alexander: None,
        };
        if let Some(annots) = cols.get(2) {
            for tok in annots.split_whitespace() {
                let Some((key, value)) = tok.split_once('=') else {
                    return Err(bad(format!("annotation `{tok}` is not key=value")));
                };
                match key {
                    "genus" => {
                        entry.known_genus =
                            Some(value.parse().map_err(|_| bad(format!("bad genus `{value}`")))?);
                    }
                    "fibered" => {
                        entry.known_fibered = Some(match value {
                            "true" => true,
                            "false" => false,
                            _ => return Err(bad(format!("bad fibered flag `{value}`"))),
                        });
                    }
                    "alex" => {
                        entry.classical_alexander = Some(
                            LaurentPoly::parse(value, Field::Q)
                                .map_err(|e| bad(format!("bad alex annotation: {e}")))?,
                        );
                    }
                    _ => return Err(bad(format!("unknown annotation key `{key}`"))),
                }
            }
        }
        entries.push(entry);
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(name: &str, content: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("talex-table-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::write(&p, content).unwrap();
        p
    }

    #[test]
    fn inline_braid_rows_with_annotations() {
        let p = write_temp(
            "basic.table",
            "# talex table v1\n\
             trefoil | braid 2: 1 1 1 | genus=1 fibered=true alex=1-t+t^2\n\
             fig8 | braid 3: 1 -2 1 -2 | genus=1 fibered=true alex=1-3t+t^2\n",
        );
        let entries = load_table(&p).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].name, "trefoil");
        assert_eq!(entries[0].known_genus, Some(1));
        assert_eq!(entries[0].known_fibered, Some(true));
        let alex = entries[0].classical_alexander.as_ref().unwrap();
        assert_eq!(alex.degree(), Some(2));
        let pres = entries[1].presentation().unwrap();
        assert_eq!(pres.label(), "fig8");
        assert_eq!(pres.n_gens(), 3);
    }

    #[test]
    fn file_rows_resolve_relative_to_table() {
        let dir = std::env::temp_dir().join("talex-table-tests");
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(
            dir.join("unknot.pres"),
            "# talex pres v1\ngens: a\nphi: a=1\n",
        )
        .unwrap();
        let p = write_temp("withfile.table", "# talex table v1\nunknot | file unknot.pres |\n");
        let entries = load_table(&p).unwrap();
        assert_eq!(entries.len(), 1);
        assert!(matches!(entries[0].input, KnotInput::Presentation(_)));
        assert!(entries[0].known_genus.is_none());
    }

    #[test]
    fn empty_table_is_empty() {
        let p = write_temp("empty.table", "# talex table v1\n\n# nothing here\n");
        assert!(load_table(&p).unwrap().is_empty());
    }

    #[test]
    fn duplicate_names_rejected() {
        let p = write_temp(
            "dup.table",
            "# talex table v1\nk | braid 2: 1 1 1 |\nk | braid 2: 1 1 1 |\n",
        );
        let err = load_table(&p).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn malformed_rows_carry_row_index() {
        let p = write_temp("bad.table", "# talex table v1\nonlyname\n");
        assert!(matches!(load_table(&p).unwrap_err(), Error::Parse { line: 2, .. }));
        let p = write_temp(
            "badannot.table",
            "# talex table v1\nk | braid 2: 1 | genus=two\n",
        );
        assert!(matches!(load_table(&p).unwrap_err(), Error::Parse { line: 2, .. }));
        let p = write_temp("noheader.table", "k | braid 2: 1 |\n");
        assert!(load_table(&p).unwrap_err().to_string().contains("header"));
    }

    #[test]
    fn input_dispatch() {
        assert!(matches!(parse_input("braid 2: 1 1 1").unwrap(), KnotInput::Braid(_)));
        assert!(matches!(
            parse_input("gens: a b\nrel: a b a^-1 b^-1\n").unwrap(),
            KnotInput::Presentation(_)
        ));
        assert!(parse_input("# only comments\n").is_err());
    }
}
