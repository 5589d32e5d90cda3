//! Embedded data and the text formats for codes and partitions.
//!
//! Code format:
//!
//! ```text
//! # comment
//! q 3
//! n 3
//! 0 0 0
//! 1 1 1
//! ```
//!
//! One word per line, symbols in decimal separated by spaces; a repeated line
//! is a repeated codeword. A partition file has the same header and starts each
//! class with a line `class <label>`. Writers emit words in lexicographic order.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::space::{Ambient, Code, Partition, Space};

/// The H(4,4) partition into sixteen (4,16,3)₄ codes. Cell (r, c) is the
/// class of the word (⌊r/4⌋, r mod 4, ⌊c/4⌋, c mod 4).
pub const H44_TABLE: [[u8; 16]; 16] = [
    [0x0, 0x1, 0x2, 0x3, 0x4, 0x5, 0x6, 0x7, 0x8, 0x9, 0xA, 0xB, 0xC, 0xD, 0xE, 0xF],
    [0xF, 0xE, 0x7, 0x6, 0x1, 0x0, 0x3, 0xA, 0x2, 0x4, 0xD, 0xC, 0x9, 0xB, 0x8, 0x5],
    [0xA, 0x8, 0xB, 0x9, 0xE, 0xF, 0xC, 0xD, 0x5, 0x6, 0x0, 0x1, 0x3, 0x7, 0x4, 0x2],
    [0xD, 0xC, 0x5, 0x4, 0xB, 0x2, 0x9, 0x8, 0x7, 0x3, 0xF, 0xE, 0x6, 0xA, 0x1, 0x0],
    [0x6, 0x7, 0xF, 0xE, 0xA, 0x3, 0x0, 0x1, 0xD, 0xC, 0x4, 0x5, 0x2, 0x8, 0xB, 0x9],
    [0x3, 0x5, 0x1, 0x0, 0x7, 0x6, 0x2, 0x4, 0xB, 0xA, 0x9, 0x8, 0xE, 0xF, 0xC, 0xD],
    [0x4, 0x2, 0xD, 0xC, 0x8, 0x9, 0x5, 0xB, 0xF, 0xE, 0x3, 0x7, 0x0, 0x1, 0xA, 0x6],
    [0x9, 0xB, 0x8, 0xA, 0xC, 0xD, 0xE, 0xF, 0x1, 0x0, 0x6, 0x2, 0x5, 0x4, 0x7, 0x3],
    [0xB, 0xA, 0x9, 0x8, 0xF, 0xE, 0xD, 0xC, 0x3, 0x2, 0x7, 0x0, 0x1, 0x6, 0x5, 0x4],
    [0xC, 0xD, 0x4, 0x2, 0x5, 0x8, 0xB, 0x9, 0x6, 0x1, 0xE, 0xF, 0xA, 0x3, 0x0, 0x7],
    [0x7, 0x0, 0x6, 0x5, 0x2, 0x4, 0x1, 0x3, 0x9, 0xB, 0x8, 0xA, 0xD, 0xC, 0xF, 0xE],
    [0xE, 0xF, 0x3, 0x1, 0x0, 0x7, 0xA, 0x6, 0x4, 0x5, 0xC, 0xD, 0x8, 0x9, 0x2, 0xB],
    [0x5, 0x4, 0xC, 0xD, 0x9, 0xB, 0x8, 0x2, 0xE, 0xF, 0x1, 0x6, 0x7, 0x0, 0x3, 0xA],
    [0x8, 0x9, 0xA, 0xB, 0xD, 0xC, 0xF, 0xE, 0x0, 0x7, 0x5, 0x3, 0x4, 0x2, 0x6, 0x1],
    [0x1, 0x3, 0xE, 0xF, 0x6, 0xA, 0x7, 0x0, 0xC, 0xD, 0x2, 0x4, 0xB, 0x5, 0x9, 0x8],
    [0x2, 0x6, 0x0, 0x7, 0x3, 0x1, 0x4, 0x5, 0xA, 0x8, 0xB, 0x9, 0xF, 0xE, 0xD, 0xC],
];

pub const H44_NAME: &str = "h44-partition";

/// Names accepted by [`load_named`].
pub const EMBEDDED_NAMES: [&str; 1] = [H44_NAME];

fn decode_h44() -> Partition {
    let space = Space::new(4, 4).expect("H(4,4) fits");
    let mut classes: Vec<Vec<u64>> = (0..16).map(|_| Vec::with_capacity(16)).collect();
    for (r, row) in H44_TABLE.iter().enumerate() {
        let mut seen = [false; 16];
        for (c, &label) in row.iter().enumerate() {
            assert!(!seen[label as usize], "label {label:X} repeated in row {r}");
            seen[label as usize] = true;
            let w = [(r / 4) as u8, (r % 4) as u8, (c / 4) as u8, (c % 4) as u8];
            classes[label as usize].push(space.pack(&w).expect("valid word"));
        }
    }
    let classes: Vec<Code> = classes
        .into_iter()
        .map(|ws| Code::from_packed(space, ws))
        .collect();
    for (i, c) in classes.iter().enumerate() {
        assert_eq!(c.len(), 16, "class {i:X} has {} words", c.len());
        assert_eq!(c.min_distance().ok(), Some(3), "class {i:X} is not MDS");
    }
    let labels = (0..16).map(|i| format!("{i:X}")).collect();
    Partition::new(Ambient::FullSpace(space), classes, Some(labels))
        .expect("embedded table is a partition of H(4,4)")
}

/// The embedded H(4,4) partition, labels "0".."F". Decoding is self-checked.
pub fn load_embedded_partition() -> Partition {
    static CACHE: OnceLock<Partition> = OnceLock::new();
    CACHE.get_or_init(decode_h44).clone()
}

pub fn load_named(name: &str) -> Result<Partition> {
    match name {
        H44_NAME => Ok(load_embedded_partition()),
        _ => Err(Error::Parameter(format!(
            "unknown embedded object {name:?} (known: {})",
            EMBEDDED_NAMES.join(", ")
        ))),
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn header_value(line: Option<(usize, &str)>, key: &str) -> Result<u32> {
    let (no, text) = line.ok_or_else(|| parse_error(0, format!("missing `{key}` header")))?;
    let mut parts = text.split_whitespace();
    if parts.next() != Some(key) {
        return Err(parse_error(no, format!("expected `{key} <int>`, found {text:?}")));
    }
    let value = parts
        .next()
        .and_then(|v| v.parse::<u32>().ok())
        .ok_or_else(|| parse_error(no, format!("expected `{key} <int>`, found {text:?}")))?;
    if parts.next().is_some() {
        return Err(parse_error(no, format!("trailing text after `{key}` header")));
    }
    Ok(value)
}

fn parse_word(space: &Space, no: usize, text: &str) -> Result<u64> {
    let mut symbols = Vec::with_capacity(space.n() as usize);
    for tok in text.split_whitespace() {
        let s: u32 = tok
            .parse()
            .map_err(|_| parse_error(no, format!("symbol {tok:?} is not an integer")))?;
        if s >= space.q() {
            return Err(parse_error(no, format!("symbol {s} ≥ q = {}", space.q())));
        }
        symbols.push(s as u8);
    }
    if symbols.len() != space.n() as usize {
        return Err(parse_error(
            no,
            format!("word has {} symbols, expected n = {}", symbols.len(), space.n()),
        ));
    }
    Ok(space.pack(&symbols).expect("validated"))
}

fn parse_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<Space> {
    let q = header_value(lines.next(), "q")?;
    let n = header_value(lines.next(), "n")?;
    Space::new(q, n).map_err(|e| parse_error(0, e.to_string()))
}

pub fn parse_code(text: &str) -> Result<Code> {
    let mut lines = content_lines(text);
    let space = parse_header(&mut lines)?;
    let mut words = Vec::new();
    for (no, line) in lines {
        if line.starts_with("class") {
            return Err(parse_error(no, "`class` line in a code file"));
        }
        words.push(parse_word(&space, no, line)?);
    }
    Ok(Code::from_packed(space, words))
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    let mut lines = content_lines(text);
    let space = parse_header(&mut lines)?;
    let mut labels: Vec<String> = Vec::new();
    let mut classes: Vec<Vec<u64>> = Vec::new();
    let mut owner: HashMap<u64, usize> = HashMap::new();
    for (no, line) in lines {
        if let Some(rest) = line.strip_prefix("class") {
            let label = rest.trim();
            if label.is_empty() || !rest.starts_with(char::is_whitespace) {
                return Err(parse_error(no, "expected `class <label>`"));
            }
            if labels.iter().any(|l| l == label) {
                return Err(parse_error(no, format!("duplicate class label {label:?}")));
            }
            labels.push(label.to_string());
            classes.push(Vec::new());
            continue;
        }
        if classes.is_empty() {
            return Err(parse_error(no, "word before the first `class` line"));
        }
        let w = parse_word(&space, no, line)?;
        if let Some(&prev) = owner.get(&w) {
            return Err(Error::Overlap {
                line: no,
                word: space.word(w).to_string(),
                class: labels[prev].clone(),
            });
        }
        owner.insert(w, classes.len() - 1);
        classes.last_mut().expect("nonempty").push(w);
    }
    if classes.is_empty() {
        return Err(parse_error(0, "partition without classes"));
    }
    let classes: Vec<Code> = classes
        .into_iter()
        .map(|ws| Code::from_packed(space, ws))
        .collect();
    let ambient = if owner.len() as u128 == space.size() {
        Ambient::FullSpace(space)
    } else {
        Ambient::Code(Code::from_packed(space, owner.keys().copied().collect()))
    };
    Partition::new(ambient, classes, Some(labels))
}

fn write_header(out: &mut String, space: Space) {
    let _ = writeln!(out, "q {}", space.q());
    let _ = writeln!(out, "n {}", space.n());
}

fn write_words(out: &mut String, code: &Code) {
    let sp = code.space();
    for w in code.words_with_repeats() {
        let line: Vec<String> = (0..sp.n()).map(|j| w.symbol(j).to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
}

pub fn format_code(code: &Code) -> String {
    let mut out = String::new();
    write_header(&mut out, code.space());
    write_words(&mut out, code);
    out
}

pub fn format_partition(p: &Partition) -> String {
    let mut out = String::new();
    write_header(&mut out, p.space());
    for (label, class) in p.labels().iter().zip(p.classes()) {
        let _ = writeln!(out, "class {label}");
        write_words(&mut out, class);
    }
    out
}

pub fn read_code(path: impl AsRef<Path>) -> Result<Code> {
    parse_code(&std::fs::read_to_string(path)?)
}

pub fn write_code(code: &Code, path: impl AsRef<Path>) -> Result<()> {
    Ok(std::fs::write(path, format_code(code))?)
}

pub fn read_partition(path: impl AsRef<Path>) -> Result<Partition> {
    parse_partition(&std::fs::read_to_string(path)?)
}

pub fn write_partition(p: &Partition, path: impl AsRef<Path>) -> Result<()> {
    Ok(std::fs::write(path, format_partition(p))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Word;
    use crate::verify::is_mds;

    #[test]
    fn embedded_partition_anchors() {
        let p = load_embedded_partition();
        assert_eq!(p.len(), 16);
        let w = |s: &[u8]| Word::from_symbols(4, s).unwrap();
        assert_eq!(p.class_of(&w(&[0, 0, 0, 0])), Some(0));
        assert_eq!(p.class_of(&w(&[0, 1, 0, 0])), Some(15));
        assert_eq!(p.labels()[15], "F");
        assert!(p.classes().iter().all(|c| is_mds(c).unwrap()));
    }

    #[test]
    fn every_label_once_per_row_and_column() {
        for i in 0..16 {
            let mut row: Vec<u8> = H44_TABLE[i].to_vec();
            let mut col: Vec<u8> = H44_TABLE.iter().map(|r| r[i]).collect();
            row.sort_unstable();
            col.sort_unstable();
            assert_eq!(row, (0..16).collect::<Vec<u8>>());
            assert_eq!(col, (0..16).collect::<Vec<u8>>());
        }
    }

    #[test]
    fn round_trips() {
        let p = load_embedded_partition();
        assert_eq!(parse_partition(&format_partition(&p)).unwrap(), p);
        let c = Code::from_rows(3, 2, &[[2, 1], [0, 0], [0, 0]]).unwrap();
        let text = format_code(&c);
        assert_eq!(text, "q 3\nn 2\n0 0\n0 0\n2 1\n");
        assert_eq!(parse_code(&text).unwrap(), c);
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join(format!("perfectlike-catalog-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("h44.txt");
        let p = load_embedded_partition();
        write_partition(&p, &path).unwrap();
        assert_eq!(read_partition(&path).unwrap(), p);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn parse_errors_name_the_line() {
        let e = parse_code("q 4\nn 2\n0 1\n# fine\n1 4\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 5, .. }), "{e:?}");
        let e = parse_code("q 4\nn 2\n0 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_code("n 2\nq 4\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_code("q 4\nn x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn overlapping_classes_rejected() {
        let text = "q 2\nn 1\nclass a\n0\nclass b\n1\n0\n";
        let e = parse_partition(text).unwrap_err();
        assert_eq!(
            e,
            Error::Overlap {
                line: 7,
                word: "0".into(),
                class: "a".into()
            }
        );
    }

    #[test]
    fn partial_partitions_use_their_union_as_ambient() {
        let p = parse_partition("q 2\nn 2\nclass x\n0 0\nclass y\n1 1\n").unwrap();
        assert!(!p.covers_full_space());
        assert_eq!(p.len(), 2);
        assert!(load_named("nope").is_err());
    }
}
