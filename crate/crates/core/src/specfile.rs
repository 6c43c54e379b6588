//! The `.fps` project specification format: a line-oriented declarative
//! listing of a project's counted functions.
//!
//! ```text
//! # comments run to the end of the line
//! project "Inventory"
//! ilf "Items"        rets=3 dets=24
//! eif "Tax tables"   rets=1 dets=8
//! ei  "Add item"     ftrs=2 dets=9
//! eq  "Item lookup"  ftrs=1 dets=12
//! ```
//!
//! The `project` header comes first; attribute order is free on input
//! and canonical on output (`rets`/`ftrs` before `dets`). Names may
//! contain any character except the double quote; there is no escape
//! mechanism. All errors in a file are collected and reported together.

use crate::error::{ParseError, ValidationError};
use crate::model::{DataFunction, FunctionKind, Project, TransactionalFunction};

/// Parses `.fps` text into a [`Project`], collecting every error in the
/// file rather than stopping at the first.
pub fn parse_spec(source: &str) -> Result<Project, Vec<ParseError>> {
    let mut errors = Vec::new();
    let mut project_name: Option<String> = None;
    let mut header_missing_reported = false;
    let mut data_functions = Vec::new();
    let mut transactional_functions = Vec::new();
    let mut seen_names: Vec<String> = Vec::new();

    for (idx, raw_line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line: Vec<char> = strip_comment(raw_line.trim_end_matches('\r'));
        let Some(keyword_start) = line.iter().position(|c| !c.is_whitespace()) else {
            continue; // blank or comment-only line
        };

        let mut cursor = Cursor { line: &line, pos: keyword_start, line_no };
        let keyword = cursor.take_word();
        let keyword_col = keyword_start + 1;

        if keyword == "project" {
            match cursor.take_quoted_name() {
                Ok(name) => {
                    if project_name.is_some() {
                        errors.push(cursor.error_at(keyword_col, "duplicate project header"));
                    } else if !data_functions.is_empty() || !transactional_functions.is_empty() {
                        errors.push(cursor.error_at(
                            keyword_col,
                            "project header must be the first declaration",
                        ));
                    } else {
                        project_name = Some(name);
                    }
                }
                Err(e) => errors.push(e),
            }
            if let Err(e) = cursor.expect_end() {
                errors.push(e);
            }
            continue;
        }

        let kind = match keyword.as_str() {
            "ilf" => FunctionKind::Ilf,
            "eif" => FunctionKind::Eif,
            "ei" => FunctionKind::Ei,
            "eo" => FunctionKind::Eo,
            "eq" => FunctionKind::Eq,
            _ => {
                errors.push(cursor.error_at(
                    keyword_col,
                    format!("unknown keyword \"{keyword}\"; expected project, ilf, eif, ei, eo or eq"),
                ));
                continue;
            }
        };

        if project_name.is_none() && !header_missing_reported {
            errors.push(cursor.error_at(
                keyword_col,
                "missing project header; the first declaration must be project \"<name>\"",
            ));
            header_missing_reported = true;
        }

        let name = match cursor.take_quoted_name() {
            Ok(name) => name,
            Err(e) => {
                errors.push(e);
                continue;
            }
        };
        if name.is_empty() {
            errors.push(cursor.error_at(keyword_col, "function name must not be empty"));
            continue;
        }

        let attrs = match cursor.take_attributes() {
            Ok(attrs) => attrs,
            Err(mut errs) => {
                errors.append(&mut errs);
                continue;
            }
        };

        let first = if kind.is_data() { "rets" } else { "ftrs" };
        // (value, column) for `first` and for dets
        let mut values: [Option<(u32, usize)>; 2] = [None, None];
        let mut line_errors = Vec::new();
        for attr in &attrs {
            let slot = if attr.name == first {
                0
            } else if attr.name == "dets" {
                1
            } else {
                line_errors.push(ParseError::new(
                    line_no,
                    attr.name_col,
                    format!("unknown attribute \"{}\"; {kw} takes {first} and dets", attr.name, kw = keyword),
                    attr.name.clone(),
                ));
                continue;
            };
            if values[slot].is_some() {
                line_errors.push(ParseError::new(
                    line_no,
                    attr.name_col,
                    format!("duplicate attribute \"{}\"", attr.name),
                    attr.name.clone(),
                ));
            } else {
                values[slot] = Some((attr.value, attr.value_col));
            }
        }
        for (slot, attr_name) in [(0usize, first), (1usize, "dets")] {
            if values[slot].is_none()
                && !line_errors.iter().any(|e| e.offending_text == attr_name)
            {
                line_errors.push(ParseError::new(
                    line_no,
                    keyword_col,
                    format!("missing attribute \"{attr_name}\""),
                    attr_name,
                ));
            }
        }
        if !line_errors.is_empty() {
            errors.append(&mut line_errors);
            continue;
        }
        let (first_value, first_col) = values[0].unwrap();
        let (dets, dets_col) = values[1].unwrap();

        if seen_names.iter().any(|n| n == &name) {
            errors.push(cursor.error_at(
                keyword_col,
                format!("duplicate function name \"{name}\""),
            ));
            continue;
        }

        let built: Result<(), ValidationError> = if kind.is_data() {
            DataFunction::new(name.clone(), kind, first_value, dets).map(|f| data_functions.push(f))
        } else {
            TransactionalFunction::new(name.clone(), kind, first_value, dets)
                .map(|f| transactional_functions.push(f))
        };
        match built {
            Ok(()) => seen_names.push(name),
            Err(e) => {
                let col = match e.field.as_str() {
                    "dets" => dets_col,
                    "rets" | "ftrs" => first_col,
                    _ => keyword_col,
                };
                errors.push(ParseError::new(line_no, col, e.to_string(), raw_line));
            }
        }
    }

    let Some(project_name) = project_name else {
        if !header_missing_reported {
            errors.push(ParseError::new(
                1,
                1,
                "missing project header; expected project \"<name>\"",
                "",
            ));
        }
        return Err(errors);
    };
    if !errors.is_empty() {
        return Err(errors);
    }
    Project::new(project_name, data_functions, transactional_functions)
        .map_err(|e| vec![ParseError::new(1, 1, e.to_string(), "")])
}

/// Renders a project in canonical form: header line, data functions in
/// order, then transactional functions in order; `rets`/`ftrs` before
/// `dets`; LF line endings.
pub fn render_spec(project: &Project) -> String {
    let mut out = format!("project \"{}\"\n", project.name());
    for f in project.data_functions() {
        out.push_str(&format!(
            "{} \"{}\" rets={} dets={}\n",
            f.kind().keyword(),
            f.name(),
            f.rets(),
            f.dets()
        ));
    }
    for f in project.transactional_functions() {
        out.push_str(&format!(
            "{} \"{}\" ftrs={} dets={}\n",
            f.kind().keyword(),
            f.name(),
            f.ftrs(),
            f.dets()
        ));
    }
    out
}

/// Removes a trailing `#` comment, respecting quoted names.
fn strip_comment(line: &str) -> Vec<char> {
    let mut out = Vec::new();
    let mut in_quotes = false;
    for c in line.chars() {
        match c {
            '"' => in_quotes = !in_quotes,
            '#' if !in_quotes => break,
            _ => {}
        }
        out.push(c);
    }
    out
}

struct Attribute {
    name: String,
    name_col: usize,
    value: u32,
    value_col: usize,
}

struct Cursor<'a> {
    line: &'a [char],
    pos: usize,
    line_no: usize,
}

impl Cursor<'_> {
    fn col(&self) -> usize {
        self.pos + 1
    }

    fn rest(&self) -> String {
        self.line[self.pos.min(self.line.len())..].iter().collect()
    }

    fn error_at(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line_no, column, message, self.line.iter().collect::<String>())
    }

    fn skip_spaces(&mut self) {
        while self.pos < self.line.len() && self.line[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn take_word(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.line.len()
            && (self.line[self.pos].is_alphanumeric() || self.line[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.line[start..self.pos].iter().collect()
    }

    fn take_quoted_name(&mut self) -> Result<String, ParseError> {
        self.skip_spaces();
        if self.pos >= self.line.len() || self.line[self.pos] != '"' {
            return Err(self.error_at(self.col(), "expected a quoted name"));
        }
        let open = self.pos;
        self.pos += 1;
        let start = self.pos;
        while self.pos < self.line.len() && self.line[self.pos] != '"' {
            self.pos += 1;
        }
        if self.pos >= self.line.len() {
            return Err(self.error_at(open + 1, "unterminated quoted name"));
        }
        let name = self.line[start..self.pos].iter().collect();
        self.pos += 1; // closing quote
        Ok(name)
    }

    fn take_attributes(&mut self) -> Result<Vec<Attribute>, Vec<ParseError>> {
        let mut attrs = Vec::new();
        let mut errors = Vec::new();
        loop {
            self.skip_spaces();
            if self.pos >= self.line.len() {
                break;
            }
            let name_col = self.col();
            let name = self.take_word();
            if name.is_empty() {
                errors.push(self.error_at(
                    name_col,
                    format!("expected attribute assignments, found \"{}\"", self.rest()),
                ));
                break;
            }
            if self.pos >= self.line.len() || self.line[self.pos] != '=' {
                errors.push(self.error_at(self.col(), format!("expected '=' after \"{name}\"")));
                break;
            }
            self.pos += 1;
            let value_col = self.col();
            let digits = self.take_word();
            match digits.parse::<u32>() {
                Ok(value) => attrs.push(Attribute { name, name_col, value, value_col }),
                Err(_) => errors.push(ParseError::new(
                    self.line_no,
                    value_col,
                    format!("{name}: expected a non-negative integer"),
                    digits,
                )),
            }
        }
        if errors.is_empty() {
            Ok(attrs)
        } else {
            Err(errors)
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_spaces();
        if self.pos < self.line.len() {
            return Err(self.error_at(
                self.col(),
                format!("unexpected trailing text \"{}\"", self.rest()),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::derive_counters;

    #[test]
    fn parses_a_minimal_project() {
        let p = parse_spec("project \"A\"\nilf \"Customers\" rets=2 dets=25\n").unwrap();
        assert_eq!(p.name(), "A");
        assert_eq!(p.data_functions().len(), 1);
        let f = &p.data_functions()[0];
        assert_eq!(f.name(), "Customers");
        assert_eq!((f.rets(), f.dets()), (2, 25));
    }

    #[test]
    fn attribute_order_is_free_on_input() {
        let p = parse_spec("project \"A\"\nei \"Add\" dets=7 ftrs=1\n").unwrap();
        let f = &p.transactional_functions()[0];
        assert_eq!((f.ftrs(), f.dets()), (1, 7));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let src = "# top comment\n\nproject \"A\"  # trailing\n  # indented comment\neo \"Report #7\" ftrs=2 dets=9\n";
        let p = parse_spec(src).unwrap();
        assert_eq!(p.transactional_functions()[0].name(), "Report #7");
    }

    #[test]
    fn missing_attribute_is_named() {
        let errs = parse_spec("project \"A\"\nilf \"X\" rets=2\n").unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].line, 2);
        assert!(errs[0].message.contains("dets"));
    }

    #[test]
    fn missing_header_is_reported_on_line_one() {
        let errs = parse_spec("ilf \"X\" rets=1 dets=1\n").unwrap_err();
        assert_eq!(errs[0].line, 1);
        assert!(errs[0].message.contains("project header"));
    }

    #[test]
    fn header_must_come_first_and_only_once() {
        let errs = parse_spec("project \"A\"\nproject \"B\"\n").unwrap_err();
        assert_eq!(errs[0].line, 2);
        assert!(errs[0].message.contains("duplicate project header"));
    }

    #[test]
    fn every_malformed_line_produces_an_error() {
        let src = "project \"A\"\n\
                   frob \"X\" rets=1 dets=1\n\
                   ilf \"Y\" rets=zero dets=1\n\
                   ilf \"Z\" rets=1 rets=2 dets=1\n\
                   eo \"W\" ftrs=1 dets=0\n";
        let errs = parse_spec(src).unwrap_err();
        let lines: Vec<usize> = errs.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![2, 3, 4, 5]);
        assert!(errs[0].message.contains("unknown keyword"));
        assert!(errs[1].message.contains("integer"));
        assert!(errs[2].message.contains("duplicate attribute"));
        assert!(errs[3].message.contains("dets"));
    }

    #[test]
    fn error_columns_point_into_the_line() {
        //        123456789012345678
        let src = "project \"A\"\nilf \"Y\" rets=0 dets=3\n";
        let errs = parse_spec(src).unwrap_err();
        assert_eq!(errs[0].line, 2);
        assert_eq!(errs[0].column, 14); // the `0` of rets=0
        let src = "project \"A\"\nilf \"Y\" rets=1 dets=1 bogus=2\n";
        let errs = parse_spec(src).unwrap_err();
        assert_eq!(errs[0].column, 23); // start of `bogus`
    }

    #[test]
    fn duplicate_function_names_are_rejected() {
        let src = "project \"A\"\nilf \"X\" rets=1 dets=1\nei \"X\" ftrs=1 dets=1\n";
        let errs = parse_spec(src).unwrap_err();
        assert_eq!(errs[0].line, 3);
        assert!(errs[0].message.contains("duplicate function name"));
    }

    #[test]
    fn unterminated_name_is_an_error() {
        let errs = parse_spec("project \"A\nilf \"X\" rets=1 dets=1\n").unwrap_err();
        assert!(errs[0].message.contains("unterminated"));
        assert_eq!(errs[0].line, 1);
    }

    #[test]
    fn counters_from_a_mixed_file() {
        let src = "project \"A\"\n\
                   ilf \"D1\" rets=1 dets=1\n\
                   ilf \"D2\" rets=1 dets=1\n\
                   eif \"D3\" rets=1 dets=1\n\
                   ei \"T1\" ftrs=1 dets=1\n\
                   ei \"T2\" ftrs=1 dets=1\n\
                   ei \"T3\" ftrs=1 dets=1\n";
        let p = parse_spec(src).unwrap();
        assert_eq!(derive_counters(&p), (2, 3, 3));
    }

    #[test]
    fn renders_canonical_form() {
        let p = Project::empty("P");
        assert_eq!(render_spec(&p), "project \"P\"\n");

        let p = parse_spec("project \"A\"\nilf \"Customers\" dets=25 rets=2\n").unwrap();
        assert_eq!(
            render_spec(&p),
            "project \"A\"\nilf \"Customers\" rets=2 dets=25\n"
        );
    }

    #[test]
    fn round_trips_canonical_form() {
        let src = "project \"Shop\"\n\
                   ilf \"Items\" rets=3 dets=24\n\
                   eif \"Tax tables\" rets=1 dets=8\n\
                   ei \"Add item\" ftrs=2 dets=9\n\
                   eq \"Item lookup\" ftrs=1 dets=12\n";
        let p = parse_spec(src).unwrap();
        assert_eq!(render_spec(&p), src);
        assert_eq!(parse_spec(&render_spec(&p)).unwrap(), p);
    }

    #[test]
    fn accepts_crlf_line_endings() {
        let p = parse_spec("project \"A\"\r\nilf \"X\" rets=1 dets=1\r\n").unwrap();
        assert_eq!(p.data_functions().len(), 1);
    }
}
