//! Plain-text instance files.
//!
//! ```text
//! # comments run to the end of the line
//! monoid 4
//! names 0 a b ab
//! 0 a b ab
//! a a ab ab
//! b ab b ab
//! ab ab ab ab
//! group 2
//! 0 1
//! 1 0
//! action
//! 0 a b ab
//! 0 b a ab
//! ```
//!
//! Sections come in this order: `monoid n`, an optional `names` line, `n`
//! table rows, then optionally `group m` with `m` rows and `action` with `m`
//! rows. Instead of `group`/`action` a file may give `generator [order]`
//! followed by one row: the image of each element under a generator of a
//! cyclic group. Without either the group is trivial. Table and action
//! entries are element names or indices; group entries are indices.
//! Blank lines are ignored.
//!
//! The identity may sit at any position; it is moved to index 0 on load.

use crate::action::GammaStructure;
use crate::group::Group;
use crate::monoid::{Monoid, DEFAULT_MAX_SIZE};
use crate::{Elem, Error, Result};

/// Options applied when turning a file into a Γ-monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    pub allow_nonabelian: bool,
    pub max_size: usize,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            allow_nonabelian: false,
            max_size: DEFAULT_MAX_SIZE,
        }
    }
}

/// A parsed but not yet validated instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub names: Vec<String>,
    pub names_given: bool,
    pub table: Vec<Vec<Elem>>,
    pub group: Option<Vec<Vec<Elem>>>,
    pub action: Option<Vec<Vec<Elem>>>,
    /// Generator images and an optional group order.
    pub generator: Option<(Vec<Elem>, Option<usize>)>,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, c) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &content[s..pos],
                        line: i + 1,
                        column: content[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

struct Cursor<'a> {
    lines: Vec<Vec<Token<'a>>>,
    next: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn peek_keyword(&self) -> Option<&'a str> {
        self.lines.get(self.next).map(|l| l[0].text)
    }

    fn take(&mut self, what: &str) -> Result<Vec<Token<'a>>> {
        match self.lines.get(self.next) {
            Some(l) => {
                self.next += 1;
                Ok(l.clone())
            }
            None => Err(err(self.last_line + 1, 1, format!("unexpected end of file, expected {what}"))),
        }
    }
}

fn number(t: Token<'_>, what: &str) -> Result<usize> {
    t.text
        .parse()
        .map_err(|_| err(t.line, t.column, format!("expected {what}, found {:?}", t.text)))
}

fn row_of<'a>(tokens: &[Token<'a>], len: usize, what: &str) -> Result<()> {
    if tokens.len() != len {
        let t = tokens.get(len).copied().unwrap_or(tokens[tokens.len() - 1]);
        let column = if tokens.len() > len { t.column } else { t.column + t.text.len() };
        return Err(err(
            t.line,
            column,
            format!("{what} row needs {len} entries, found {}", tokens.len()),
        ));
    }
    Ok(())
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let lines = tokenize(text);
        let last_line = text.lines().count();
        let mut cur = Cursor {
            lines,
            next: 0,
            last_line,
        };
        let header = cur.take("`monoid <n>`")?;
        if header[0].text != "monoid" || header.len() != 2 {
            return Err(err(header[0].line, header[0].column, "expected `monoid <n>`"));
        }
        let n = number(header[1], "the monoid size")?;
        if n == 0 {
            return Err(err(header[1].line, header[1].column, "monoid size must be positive"));
        }

        let mut names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut names_given = false;
        if cur.peek_keyword() == Some("names") {
            let l = cur.take("names")?;
            row_of(&l[1..], n, "names").map_err(|e| match e {
                Error::Parse { message, .. } if l.len() == 1 => err(l[0].line, l[0].column + 5, message),
                e => e,
            })?;
            names = l[1..].iter().map(|t| t.text.to_string()).collect();
            names_given = true;
        }
        let resolve = |t: Token<'_>| -> Result<Elem> {
            if let Some(i) = names.iter().position(|s| s == t.text) {
                return Ok(i);
            }
            match t.text.parse::<usize>() {
                Ok(i) if i < n => Ok(i),
                _ => Err(err(t.line, t.column, format!("unknown element {:?}", t.text))),
            }
        };

        let mut table = Vec::with_capacity(n);
        for _ in 0..n {
            let l = cur.take("a table row")?;
            row_of(&l, n, "table")?;
            table.push(l.iter().map(|&t| resolve(t)).collect::<Result<Vec<_>>>()?);
        }

        let mut group = None;
        let mut action = None;
        let mut generator = None;
        if cur.peek_keyword() == Some("group") {
            let l = cur.take("group")?;
            if l.len() != 2 {
                return Err(err(l[0].line, l[0].column, "expected `group <m>`"));
            }
            let m = number(l[1], "the group order")?;
            if m == 0 {
                return Err(err(l[1].line, l[1].column, "group order must be positive"));
            }
            let mut rows = Vec::with_capacity(m);
            for _ in 0..m {
                let l = cur.take("a group row")?;
                row_of(&l, m, "group")?;
                let row = l
                    .iter()
                    .map(|&t| {
                        let v = number(t, "a group element index")?;
                        if v >= m {
                            return Err(err(t.line, t.column, format!("group index {v} out of range")));
                        }
                        Ok(v)
                    })
                    .collect::<Result<Vec<_>>>()?;
                rows.push(row);
            }
            let l = cur.take("`action`")?;
            if l[0].text != "action" || l.len() != 1 {
                return Err(err(l[0].line, l[0].column, "expected `action`"));
            }
            let mut act = Vec::with_capacity(m);
            for _ in 0..m {
                let l = cur.take("an action row")?;
                row_of(&l, n, "action")?;
                act.push(l.iter().map(|&t| resolve(t)).collect::<Result<Vec<_>>>()?);
            }
            group = Some(rows);
            action = Some(act);
        } else if cur.peek_keyword() == Some("generator") {
            let l = cur.take("generator")?;
            let order = match l.len() {
                1 => None,
                2 => Some(number(l[1], "the group order")?),
                _ => return Err(err(l[2].line, l[2].column, "expected `generator [order]`")),
            };
            let row = cur.take("the generator row")?;
            row_of(&row, n, "generator")?;
            let images = row.iter().map(|&t| resolve(t)).collect::<Result<Vec<_>>>()?;
            generator = Some((images, order));
        }
        if let Some(l) = cur.lines.get(cur.next) {
            return Err(err(l[0].line, l[0].column, format!("unexpected {:?}", l[0].text)));
        }
        Ok(InstanceFile {
            names,
            names_given,
            table,
            group,
            action,
            generator,
        })
    }

    fn identity(&self) -> Option<Elem> {
        let n = self.table.len();
        (0..n).find(|&e| (0..n).all(|a| self.table[e][a] == a && self.table[a][e] == a))
    }

    /// Validates the file as a Γ-monoid, moving the identity to index 0.
    pub fn to_structure(&self, opts: &LoadOptions) -> Result<GammaStructure> {
        let n = self.table.len();
        let e = match self.identity() {
            Some(e) => e,
            None => {
                Monoid::with_limit(self.names.clone(), self.table.clone(), opts.max_size)?;
                unreachable!("a table without identity fails validation");
            }
        };
        // old index of the element at each new position
        let mut order: Vec<Elem> = (0..n).collect();
        order.swap(0, e);
        let new_of = |a: Elem| order.iter().position(|&o| o == a).expect("permutation");
        let names = if self.names_given {
            order.iter().map(|&o| self.names[o].clone()).collect()
        } else {
            (0..n).map(|i| i.to_string()).collect()
        };
        let table = order
            .iter()
            .map(|&a| order.iter().map(|&b| new_of(self.table[a][b])).collect())
            .collect();
        let monoid = Monoid::with_limit(names, table, opts.max_size)?;
        let relabel = |row: &Vec<Elem>| -> Vec<Elem> { order.iter().map(|&a| new_of(row[a])).collect() };
        if let (Some(g), Some(act)) = (&self.group, &self.action) {
            let group = Group::with_options(g.clone(), opts.allow_nonabelian)?;
            let rows = act.iter().map(relabel).collect();
            return Ok(GammaStructure::new(monoid, group, rows)?);
        }
        if let Some((images, order)) = &self.generator {
            let generator = relabel(images);
            return Ok(match order {
                None => GammaStructure::from_generator(monoid, &generator)?,
                Some(k) => GammaStructure::from_generator_with_order(monoid, &generator, *k)?,
            });
        }
        Ok(GammaStructure::trivial(monoid))
    }
}

/// Parses and validates in one step.
pub fn load(text: &str, opts: &LoadOptions) -> Result<GammaStructure> {
    InstanceFile::parse(text)?.to_structure(opts)
}

/// The canonical text of a Γ-monoid. A trivial group is left out, and the
/// `names` line is left out when every name is its own index.
pub fn print(gs: &GammaStructure) -> String {
    let m = gs.monoid();
    let n = m.size();
    let mut out = format!("monoid {n}\n");
    let plain = (0..n).all(|i| m.name(i) == i.to_string());
    if !plain {
        out.push_str("names");
        for name in m.names() {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
    }
    let line = |row: &[Elem]| row.iter().map(|&a| m.name(a)).collect::<Vec<_>>().join(" ");
    for row in m.rows() {
        out.push_str(&line(&row));
        out.push('\n');
    }
    if !gs.group().is_trivial() {
        out.push_str(&format!("group {}\n", gs.group().order()));
        for row in gs.group().rows() {
            let r: Vec<String> = row.iter().map(|g| g.to_string()).collect();
            out.push_str(&r.join(" "));
            out.push('\n');
        }
        out.push_str("action\n");
        for row in gs.action_rows() {
            out.push_str(&line(&row));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::tests::b2_swap;
    use crate::monoid::tests::t7;

    const T7: &str = "\
# the seven-element example
monoid 7
names 0 1 x y z s b
0 1 x y z s b
1 1 1 s s s b
x 1 1 s s s b

y s s y y s b
z s s y y s b
s s s s s s b
b b b b b b s
";

    #[test]
    fn parses_t7() {
        let gs = load(T7, &LoadOptions::default()).unwrap();
        assert_eq!(gs.monoid(), &t7());
        assert!(gs.group().is_trivial());
        assert_eq!(load(&print(&gs), &LoadOptions::default()).unwrap(), gs);
    }

    #[test]
    fn round_trip_with_action() {
        let gs = b2_swap();
        let text = print(&gs);
        assert!(text.contains("group 2\n0 1\n1 0\naction\n"));
        let back = load(&text, &LoadOptions::default()).unwrap();
        assert_eq!(back, gs);
        assert_eq!(print(&back), text);
    }

    #[test]
    fn moves_identity() {
        let text = "monoid 2\nnames a e\na a\na e\n";
        let gs = load(text, &LoadOptions::default()).unwrap();
        assert_eq!(gs.monoid().names(), &["e", "a"]);
        assert_eq!(gs.monoid().rows(), vec![vec![0, 1], vec![1, 1]]);
        let text = "monoid 2\n1 0\n0 1\n";
        let gs = load(text, &LoadOptions::default()).unwrap();
        assert_eq!(gs.monoid().rows(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(gs.monoid().names(), &["0", "1"]);
    }

    #[test]
    fn generator_section() {
        let text = "monoid 4\n0 1 2 3\n1 1 3 3\n2 3 2 3\n3 3 3 3\ngenerator\n0 2 1 3\n";
        let gs = load(text, &LoadOptions::default()).unwrap();
        assert_eq!(gs.monoid().rows(), b2_swap().monoid().rows());
        assert_eq!(gs.action_rows(), b2_swap().action_rows());
        let text = text.replace("generator\n", "generator 4\n");
        assert_eq!(load(&text, &LoadOptions::default()).unwrap().group().order(), 4);
    }

    fn parse_error(text: &str) -> (usize, usize) {
        match InstanceFile::parse(text) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_error(""), (1, 1));
        assert_eq!(parse_error("monoid x\n"), (1, 8));
        assert_eq!(parse_error("monoid 2\n0 1\n1 q\n"), (3, 3));
        assert_eq!(parse_error("monoid 2\n0 1\n1\n"), (3, 2));
        assert_eq!(parse_error("monoid 1\n0\nextra\n"), (3, 1));
        assert_eq!(parse_error("monoid 1\n0\ngroup 2\n0 1\n1 0\naction\n0\n"), (8, 1));
        assert_eq!(parse_error("monoid 1\n0\ngroup 1\n0\naction\n0 0\n"), (6, 3));
    }

    #[test]
    fn invalid_tables() {
        let bad = T7.replace("b b b b b b s", "b b b b b b b");
        let gs = load(&bad, &LoadOptions::default());
        assert!(gs.is_ok(), "b+b=b still gives a monoid");
        let bad = T7.replace("y s s y y s b\n", "y s s y y b b\n");
        assert!(matches!(
            load(&bad, &LoadOptions::default()),
            Err(Error::Monoid(_))
        ));
        let s3 = "monoid 1\n0\ngroup 6\n0 1 2 3 4 5\n1 2 0 4 5 3\n2 0 1 5 3 4\n3 5 4 0 2 1\n4 3 5 1 0 2\n5 4 3 2 1 0\naction\n0\n0\n0\n0\n0\n0\n";
        assert!(matches!(load(s3, &LoadOptions::default()), Err(Error::Group(_))));
        let opts = LoadOptions {
            allow_nonabelian: true,
            ..LoadOptions::default()
        };
        assert!(load(s3, &opts).is_ok());
    }
}
