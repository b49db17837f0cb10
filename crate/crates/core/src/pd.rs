//! Planar-diagram codes: parsing, validation, crossing signs, mirrors and
//! Reidemeister-1 twists.
//!
//! A crossing `X[i,j,k,l]` lists the four edges meeting at it, starting with
//! the under-strand edge that enters the crossing and continuing
//! counterclockwise. Edges are labelled by consecutive integers along the
//! orientation of each component, each component using its own contiguous
//! range. The under strand therefore always runs `i -> k`; the over strand
//! runs `j -> l` (positive crossing) or `l -> j` (negative crossing).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub l: u32,
}

impl Crossing {
    pub const fn new(i: u32, j: u32, k: u32, l: u32) -> Self {
        Crossing { i, j, k, l }
    }

    pub fn labels(&self) -> [u32; 4] {
        [self.i, self.j, self.k, self.l]
    }

    fn map(&self, f: impl Fn(u32) -> u32) -> Crossing {
        Crossing::new(f(self.i), f(self.j), f(self.k), f(self.l))
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X[{},{},{},{}]", self.i, self.j, self.k, self.l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// One link component: the inclusive label range `first..=last`, traversed in
/// increasing order and wrapping from `last` back to `first`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Component {
    pub first: u32,
    pub last: u32,
}

impl Component {
    pub fn contains(&self, label: u32) -> bool {
        (self.first..=self.last).contains(&label)
    }

    pub fn len(&self) -> usize {
        (self.last - self.first + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn successor(&self, label: u32) -> u32 {
        if label == self.last {
            self.first
        } else {
            label + 1
        }
    }
}

/// A validated link diagram. Construction always goes through validation, so
/// every value of this type satisfies the PD invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    signs: Vec<Sign>,
    components: Vec<Component>,
    labels: Vec<u32>,
}

impl LinkDiagram {
    pub fn from_crossings(crossings: Vec<Crossing>) -> Result<Self> {
        let (signs, components, labels) = analyze(&crossings)?;
        Ok(LinkDiagram {
            crossings,
            signs,
            components,
            labels,
        })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    /// Sorted edge labels.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Position of `label` in [`labels`](Self::labels).
    pub fn label_index(&self, label: u32) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn n_plus(&self) -> usize {
        self.signs.iter().filter(|s| **s == Sign::Positive).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossing_count() - self.n_plus()
    }

    pub fn writhe(&self) -> i32 {
        self.signs.iter().map(|s| s.value()).sum()
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.crossings.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for LinkDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

/// Parses a PD code: `X[a,b,c,d]` terms separated by whitespace or commas.
/// Lines starting with `#` are comments. Crossing order is preserved.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let crossings = parse_crossings(text)?;
    LinkDiagram::from_crossings(crossings)
}

fn parse_crossings(text: &str) -> Result<Vec<Crossing>> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    let syntax = |offset: usize, message: &str| Error::Syntax {
        offset,
        message: message.to_string(),
    };

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    loop {
        // separators and comments between terms
        while pos < bytes.len() {
            match bytes[pos] {
                b',' => pos += 1,
                b if b.is_ascii_whitespace() => pos += 1,
                b'#' => {
                    while pos < bytes.len() && bytes[pos] != b'\n' {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] != b'X' {
            return Err(syntax(pos, "expected `X[`"));
        }
        pos += 1;
        skip_ws(&mut pos);
        if pos >= bytes.len() || bytes[pos] != b'[' {
            return Err(syntax(pos, "expected `[`"));
        }
        pos += 1;
        let mut labels = [0u32; 4];
        for (slot, label) in labels.iter_mut().enumerate() {
            skip_ws(&mut pos);
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(syntax(start, "expected a positive integer"));
            }
            let value: u32 = text[start..pos]
                .parse()
                .map_err(|_| syntax(start, "edge label out of range"))?;
            if value == 0 {
                return Err(syntax(start, "edge labels must be positive"));
            }
            *label = value;
            skip_ws(&mut pos);
            let expected = if slot == 3 { b']' } else { b',' };
            if pos >= bytes.len() || bytes[pos] != expected {
                let msg = if slot == 3 { "expected `]`" } else { "expected `,`" };
                return Err(syntax(pos, msg));
            }
            pos += 1;
        }
        out.push(Crossing::new(labels[0], labels[1], labels[2], labels[3]));
    }
    Ok(out)
}

/// Checks every PD invariant of `crossings` without building a diagram.
pub fn validate_diagram(crossings: &[Crossing]) -> Result<()> {
    analyze(crossings).map(|_| ())
}

/// Sign of the crossing at `index` in `d`.
pub fn crossing_sign(d: &LinkDiagram, index: usize) -> Sign {
    d.signs[index]
}

type Analysis = (Vec<Sign>, Vec<Component>, Vec<u32>);

fn analyze(crossings: &[Crossing]) -> Result<Analysis> {
    if crossings.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for c in crossings {
        for label in c.labels() {
            if label == 0 {
                return Err(Error::UnknownEdge(0));
            }
            *counts.entry(label).or_default() += 1;
        }
    }
    if let Some((&label, &count)) = counts.iter().find(|(_, &n)| n != 2) {
        return Err(Error::LabelCount { label, count });
    }
    let labels: Vec<u32> = counts.keys().copied().collect();
    let index = |label: u32| labels.binary_search(&label).unwrap();

    // Strands join the two edges they connect; the resulting classes are the
    // link components.
    let mut uf = crate::cube::UnionFind::new(labels.len());
    for c in crossings {
        uf.union(index(c.i), index(c.k));
        uf.union(index(c.j), index(c.l));
    }
    let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for &label in &labels {
        groups.entry(uf.find(index(label))).or_default().push(label);
    }
    let mut components = Vec::with_capacity(groups.len());
    for group in groups.into_values() {
        let first = group[0];
        let last = *group.last().unwrap();
        if (last - first + 1) as usize != group.len() {
            return Err(Error::NonContiguousComponent { labels: group });
        }
        components.push(Component { first, last });
    }
    components.sort_by_key(|c| c.first);
    let component_of = |label: u32| {
        *components
            .iter()
            .find(|c| c.contains(label))
            .expect("every label lies in a component")
    };

    // Over-strand direction per crossing: Some(true) for j -> l.
    let mut forward: Vec<Option<bool>> = vec![None; crossings.len()];
    for (n, c) in crossings.iter().enumerate() {
        let comp = component_of(c.i);
        if comp.len() < 2 || comp.successor(c.i) != c.k {
            return Err(Error::Orientation { crossing: n });
        }
        let comp = component_of(c.j);
        if comp.len() < 2 {
            return Err(Error::Orientation { crossing: n });
        }
        let fwd = comp.successor(c.j) == c.l;
        let bwd = comp.successor(c.l) == c.j;
        forward[n] = match (fwd, bwd) {
            (true, false) => Some(true),
            (false, true) => Some(false),
            (false, false) => return Err(Error::Orientation { crossing: n }),
            // Two-edge component: succession alone cannot orient this strand.
            (true, true) => None,
        };
    }
    resolve_two_edge_strands(crossings, &mut forward);

    let signs = forward
        .into_iter()
        .map(|f| if f.unwrap() { Sign::Positive } else { Sign::Negative })
        .collect();
    Ok((signs, components, labels))
}

/// Orients over strands of two-edge components. Such a component passes
/// through exactly two strands, and the two must run in opposite directions
/// (`a -> b` then `b -> a`). When both passes are over strands and neither is
/// determined, the first one in crossing order is taken as `j -> l`.
fn resolve_two_edge_strands(crossings: &[Crossing], forward: &mut [Option<bool>]) {
    while let Some(n) = forward.iter().position(Option::is_none) {
        let c = crossings[n];
        let pair = (c.j.min(c.l), c.j.max(c.l));
        // Direction (from, to) of the component's other strand, if known.
        let mut other: Option<Option<(u32, u32)>> = None;
        for (m, d) in crossings.iter().enumerate() {
            if (d.i.min(d.k), d.i.max(d.k)) == pair {
                other = Some(Some((d.i, d.k)));
                break;
            }
            if m != n && (d.j.min(d.l), d.j.max(d.l)) == pair {
                other = Some(forward[m].map(|f| if f { (d.j, d.l) } else { (d.l, d.j) }));
                break;
            }
        }
        forward[n] = Some(match other.flatten() {
            // the other strand runs from -> to, so this one runs to -> from
            Some((_, to)) => to == c.j,
            None => true,
        });
    }
}

/// Mirror image: every crossing changes from over to under. The rotated tuple
/// keeps the under-incoming edge first.
pub fn mirror_diagram(d: &LinkDiagram) -> LinkDiagram {
    let crossings = d
        .crossings
        .iter()
        .zip(&d.signs)
        .map(|(c, s)| match s {
            Sign::Positive => Crossing::new(c.j, c.k, c.l, c.i),
            Sign::Negative => Crossing::new(c.l, c.i, c.j, c.k),
        })
        .collect();
    LinkDiagram::from_crossings(crossings).expect("mirror of a valid diagram is valid")
}

/// Inserts a Reidemeister-1 kink on `edge`. The new crossing is appended, so
/// it becomes the last cube coordinate; labels after `edge` shift by two.
pub fn r1_twist(d: &LinkDiagram, edge: u32, handedness: Sign) -> Result<LinkDiagram> {
    if d.label_index(edge).is_none() {
        return Err(Error::UnknownEdge(edge));
    }
    let shift = |x: u32| if x > edge { x + 2 } else { x };
    let mut crossings: Vec<Crossing> = d.crossings.iter().map(|c| c.map(shift)).collect();

    // The end of `edge` entering a crossing now carries the label `edge + 2`.
    let mut moved = false;
    for (c, s) in crossings.iter_mut().zip(&d.signs) {
        if c.i == edge {
            c.i = edge + 2;
            moved = true;
            break;
        }
        match s {
            Sign::Positive if c.j == edge => {
                c.j = edge + 2;
                moved = true;
                break;
            }
            Sign::Negative if c.l == edge => {
                c.l = edge + 2;
                moved = true;
                break;
            }
            _ => {}
        }
    }
    debug_assert!(moved, "every edge enters exactly one crossing");

    let (a, loop_edge, b) = (edge, edge + 1, edge + 2);
    crossings.push(match handedness {
        Sign::Positive => Crossing::new(a, loop_edge, loop_edge, b),
        Sign::Negative => Crossing::new(a, b, loop_edge, loop_edge),
    });
    LinkDiagram::from_crossings(crossings)
}

/// One line of a knot-table file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub name: String,
    pub line: usize,
    pub code: String,
}

impl TableEntry {
    pub fn diagram(&self) -> Result<LinkDiagram> {
        parse_pd(&self.code)
    }
}

/// Parses a knot table: one `name: <pd-code>` per line, `#` comment lines and
/// blank lines ignored. Codes are not parsed here so that one bad entry does
/// not reject the whole table.
pub fn parse_table(text: &str) -> Result<Vec<TableEntry>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((name, code)) = line.split_once(':') else {
            return Err(Error::Table {
                line: n + 1,
                message: "expected `name: <pd-code>`".into(),
            });
        };
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::Table {
                line: n + 1,
                message: "empty knot name".into(),
            });
        }
        out.push(TableEntry {
            name: name.to_string(),
            line: n + 1,
            code: code.trim().to_string(),
        });
    }
    Ok(out)
}

pub fn format_table(entries: &[(String, LinkDiagram)]) -> String {
    entries
        .iter()
        .map(|(name, d)| format!("{name}: {d}\n"))
        .collect()
}
