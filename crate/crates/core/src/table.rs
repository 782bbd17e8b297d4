//! Serializable supercharacter tables.

use serde::Serialize;

use crate::arith::CyclotomicNumber;

/// Version of the JSON layout written by [`SupercharacterTable::to_json`].
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassColumn {
    pub label: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterRow {
    pub label: String,
    pub degree: CyclotomicNumber,
    pub norm: CyclotomicNumber,
    pub values: Vec<CyclotomicNumber>,
}

/// Rows are supercharacters, columns superclasses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupercharacterTable {
    pub schema_version: u32,
    pub group: String,
    pub n: usize,
    pub p: u32,
    pub order: usize,
    pub classes: Vec<ClassColumn>,
    pub characters: Vec<CharacterRow>,
}

impl SupercharacterTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }

    /// A header row, the class sizes, then one row per character; values are
    /// display strings.
    pub fn text_rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::with_capacity(self.characters.len() + 1);
        let mut header = vec!["character".to_string()];
        header.extend(self.classes.iter().map(|c| c.label.clone()));
        rows.push(header);
        let mut sizes = vec!["class size".to_string()];
        sizes.extend(self.classes.iter().map(|c| c.size.to_string()));
        rows.push(sizes);
        for ch in &self.characters {
            let mut row = vec![ch.label.clone()];
            row.extend(ch.values.iter().map(CyclotomicNumber::to_string));
            rows.push(row);
        }
        rows
    }
}
