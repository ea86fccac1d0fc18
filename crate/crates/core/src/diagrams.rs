//! Weight matrices, labelled bipartite diagrams and their orbit classes under
//! row/column permutations.
//!
//! A labelled diagram with `p` white and `q` black vertices corresponds to
//! the `p × q` matrix whose `(i, j)` entry is the weight of the edge between
//! white `i` and black `j` (0 when absent). No isolated vertex means the
//! matrix is packed: no all-zero row or column.

use std::fmt;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::permutations::all_permutations;
use crate::polya_enum::EdgeType;
use crate::symfunc::Partition;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeightMatrix {
    rows: usize,
    cols: usize,
    // row-major
    entries: Vec<u32>,
}

impl WeightMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::domain(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(WeightMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::domain(format!(
                "row {i} has {} entries, expected {cols}",
                r.len()
            )));
        }
        Ok(WeightMatrix {
            rows: rows.len(),
            cols,
            entries: rows.concat(),
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        WeightMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [u32] {
        &mut self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn max_entry(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    fn zero_row(&self) -> Option<usize> {
        (0..self.rows).find(|&i| self.row(i).iter().all(|&x| x == 0))
    }

    fn zero_col(&self) -> Option<usize> {
        (0..self.cols).find(|&j| (0..self.rows).all(|i| self.get(i, j) == 0))
    }

    /// Every row and every column has a nonzero entry.
    pub fn is_packed(&self) -> bool {
        self.zero_row().is_none() && self.zero_col().is_none()
    }

    /// Deletes all-zero rows and columns, keeping the order of the rest.
    pub fn pack(&self) -> WeightMatrix {
        let keep_rows: Vec<usize> = (0..self.rows)
            .filter(|&i| self.row(i).iter().any(|&x| x != 0))
            .collect();
        let keep_cols: Vec<usize> = (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| self.get(i, j) != 0))
            .collect();
        let mut entries = Vec::with_capacity(keep_rows.len() * keep_cols.len());
        for &i in &keep_rows {
            for &j in &keep_cols {
                entries.push(self.get(i, j));
            }
        }
        WeightMatrix {
            rows: keep_rows.len(),
            cols: keep_cols.len(),
            entries,
        }
    }

    /// Row `i` of the result is row `row_perm[i]` of `self`, and likewise for columns.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> WeightMatrix {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        let mut entries = Vec::with_capacity(self.entries.len());
        for &i in row_perm {
            for &j in col_perm {
                entries.push(self.get(i, j));
            }
        }
        WeightMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn transpose(&self) -> WeightMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        WeightMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Lexicographically smallest row-major flattening over all row and
    /// column permutations.
    ///
    /// For a fixed column order the best row order is the sorted one, so
    /// only the `cols!` column orders are scanned.
    pub fn canonical_form(&self) -> WeightMatrix {
        let mut best: Option<Vec<u32>> = None;
        let mut rows: Vec<Vec<u32>> = vec![Vec::with_capacity(self.cols); self.rows];
        for cp in all_permutations(self.cols) {
            for (i, r) in rows.iter_mut().enumerate() {
                r.clear();
                r.extend(cp.word().iter().map(|&j| self.get(i, j)));
            }
            rows.sort_unstable();
            let better = match &best {
                None => true,
                Some(b) => is_less(&rows, b),
            };
            if better {
                best = Some(rows.concat());
            }
        }
        WeightMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: best.unwrap_or_default(),
        }
    }

    /// Equivalent to `self.canonical_form() == *self`, with early exit.
    pub fn is_canonical(&self) -> bool {
        if (1..self.rows).any(|i| self.row(i - 1) > self.row(i)) {
            return false;
        }
        let mut rows: Vec<Vec<u32>> = vec![Vec::with_capacity(self.cols); self.rows];
        for cp in all_permutations(self.cols).skip(1) {
            for (i, r) in rows.iter_mut().enumerate() {
                r.clear();
                r.extend(cp.word().iter().map(|&j| self.get(i, j)));
            }
            rows.sort_unstable();
            if is_less(&rows, &self.entries) {
                return false;
            }
        }
        true
    }

    /// `(i_0, ..., i_P)` with `P` the largest entry: how many cells hold each value.
    pub fn type_of(&self) -> EdgeType {
        self.type_with_bound(self.max_entry())
    }

    /// Type padded to `max_weight + 1` slots; entries above the bound are ignored.
    pub fn type_with_bound(&self, max_weight: u32) -> EdgeType {
        let mut counts = vec![0u32; max_weight as usize + 1];
        for &x in &self.entries {
            if let Some(c) = counts.get_mut(x as usize) {
                *c += 1;
            }
        }
        EdgeType::new(counts)
    }

    pub fn shape_of(&self) -> Partition {
        self.type_of().shape()
    }

    /// Parses CSV rows of integers; blank lines and `#` comments are skipped.
    pub fn from_csv_reader<R: std::io::Read>(reader: R) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut rows = Vec::new();
        for (line, record) in csv.records().enumerate() {
            let record = record?;
            let row = record
                .iter()
                .map(|f| {
                    f.parse::<u32>()
                        .map_err(|_| Error::parse(line, format!("bad matrix entry {f:?}")))
                })
                .collect::<Result<Vec<u32>>>()?;
            rows.push(row);
        }
        WeightMatrix::from_rows(&rows)
    }

    /// Compact inline form `2,0,1;0,2,1`.
    pub fn parse_inline(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(WeightMatrix::zeros(0, 0));
        }
        let rows = s
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::parse(0, format!("bad matrix entry {x:?}")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        WeightMatrix::from_rows(&rows)
    }

    pub fn to_inline(&self) -> String {
        self.to_rows()
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn is_less(rows: &[Vec<u32>], flat: &[u32]) -> bool {
    let mut it = flat.iter();
    for r in rows {
        for x in r {
            let y = it.next().expect("same size");
            match x.cmp(y) {
                std::cmp::Ordering::Less => return true,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    false
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.max_entry().to_string().len();
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Edge {
    pub white: usize,
    pub black: usize,
    pub weight: u32,
}

/// Bipartite multigraph with weighted edges, at most one edge per vertex pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabelledDiagram {
    white: usize,
    black: usize,
    // sorted by (white, black)
    edges: Vec<Edge>,
}

impl LabelledDiagram {
    pub fn new(white: usize, black: usize, mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort();
        for e in &edges {
            if e.white >= white || e.black >= black {
                return Err(Error::domain(format!(
                    "edge ({}, {}) out of range for {white} white / {black} black vertices",
                    e.white, e.black
                )));
            }
            if e.weight == 0 {
                return Err(Error::domain("edge weights must be positive"));
            }
        }
        if edges
            .windows(2)
            .any(|w| (w[0].white, w[0].black) == (w[1].white, w[1].black))
        {
            return Err(Error::domain("at most one edge per vertex pair"));
        }
        Ok(LabelledDiagram {
            white,
            black,
            edges,
        })
    }

    pub fn white(&self) -> usize {
        self.white
    }

    pub fn black(&self) -> usize {
        self.black
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_isolated_vertex(&self) -> bool {
        let mut w = vec![false; self.white];
        let mut b = vec![false; self.black];
        for e in &self.edges {
            w[e.white] = true;
            b[e.black] = true;
        }
        w.contains(&false) || b.contains(&false)
    }
}

/// Edge `(i, j, w)` for every nonzero entry `M[i][j] = w`. The matrix must be packed.
pub fn matrix_to_diagram(m: &WeightMatrix) -> Result<LabelledDiagram> {
    if let Some(i) = m.zero_row() {
        return Err(Error::domain(format!(
            "matrix is not packed: row {i} is all zero"
        )));
    }
    if let Some(j) = m.zero_col() {
        return Err(Error::domain(format!(
            "matrix is not packed: column {j} is all zero"
        )));
    }
    let mut edges = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let weight = m.get(i, j);
            if weight > 0 {
                edges.push(Edge {
                    white: i,
                    black: j,
                    weight,
                });
            }
        }
    }
    LabelledDiagram::new(m.rows(), m.cols(), edges)
}

pub fn diagram_to_matrix(d: &LabelledDiagram) -> WeightMatrix {
    let mut m = WeightMatrix::zeros(d.white, d.black);
    for e in &d.edges {
        m.entries[e.white * d.black + e.black] = e.weight;
    }
    m
}

/// Orbit of packed matrices under row/column permutations, represented by
/// its canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DiagramClass {
    canonical: WeightMatrix,
}

impl DiagramClass {
    /// Packs `m`, then canonicalizes.
    pub fn of(m: &WeightMatrix) -> Self {
        DiagramClass {
            canonical: m.pack().canonical_form(),
        }
    }

    pub fn canonical(&self) -> &WeightMatrix {
        &self.canonical
    }
}

pub fn class_of(m: &WeightMatrix) -> DiagramClass {
    DiagramClass::of(m)
}

/// Graphviz rendering: white vertices `w1..wp` as open circles, black
/// vertices `b1..bq` filled, edge labels are weights. Labels are 1-indexed.
pub fn render_dot(d: &LabelledDiagram) -> String {
    render_dot_named(d, "diagram")
}

pub fn render_dot_named(d: &LabelledDiagram, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph {name} {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=circle, label=\"\", width=0.25];").unwrap();
    for i in 0..d.white {
        writeln!(out, "  w{} [style=solid, xlabel=\"{}\"];", i + 1, i + 1).unwrap();
    }
    for j in 0..d.black {
        writeln!(
            out,
            "  b{} [style=filled, fillcolor=black, xlabel=\"{}\"];",
            j + 1,
            j + 1
        )
        .unwrap();
    }
    for e in &d.edges {
        writeln!(
            out,
            "  w{} -- b{} [label=\"{}\"];",
            e.white + 1,
            e.black + 1,
            e.weight
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Plain-text grid: one line per white vertex, one column per black vertex,
/// `.` for no edge.
pub fn render_ascii(d: &LabelledDiagram) -> String {
    let m = diagram_to_matrix(d);
    let width = m
        .max_entry()
        .to_string()
        .len()
        .max(d.black.to_string().len());
    let label_width = d.white.to_string().len() + 1;
    let mut out = String::new();
    write!(out, "{:label_width$} ", "").unwrap();
    let header: Vec<String> = (1..=d.black)
        .map(|j| format!("{:>width$}", format!("●{j}"), width = width + 1))
        .collect();
    writeln!(out, "{}", header.join(" ")).unwrap();
    for i in 0..d.white {
        write!(
            out,
            "{:>label_width$} ",
            format!("○{}", i + 1),
            label_width = label_width + 1
        )
        .unwrap();
        let cells: Vec<String> = m
            .row(i)
            .iter()
            .map(|&x| {
                let s = if x == 0 {
                    ".".to_string()
                } else {
                    x.to_string()
                };
                format!("{s:>w$}", w = width + 1)
            })
            .collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

/// Census cache: `# n,m,P,packed` comment, a `n,m,P,packed` record, then one
/// row-major record per canonical matrix.
pub fn write_census_csv<W: Write>(
    writer: W,
    rows: usize,
    cols: usize,
    max_weight: u32,
    packed: bool,
    matrices: &[WeightMatrix],
) -> Result<()> {
    let mut w = writer;
    writeln!(w, "# n,m,P,packed")?;
    let mut csv = csv::WriterBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_writer(w);
    csv.write_record([
        rows.to_string(),
        cols.to_string(),
        max_weight.to_string(),
        u8::from(packed).to_string(),
    ])?;
    for m in matrices {
        csv.write_record(m.entries().iter().map(u32::to_string))?;
    }
    csv.flush()?;
    Ok(())
}

pub struct CensusFile {
    pub rows: usize,
    pub cols: usize,
    pub max_weight: u32,
    pub packed: bool,
    pub matrices: Vec<WeightMatrix>,
}

pub fn read_census_csv<R: BufRead>(reader: R) -> Result<CensusFile> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(reader);
    let mut records = csv.records();
    let header = records
        .next()
        .ok_or_else(|| Error::parse(0, "missing census header record"))??;
    let field = |i: usize| -> Result<u64> {
        header
            .get(i)
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::parse(i, "bad census header"))
    };
    let (rows, cols, max_weight, packed) = (
        field(0)? as usize,
        field(1)? as usize,
        field(2)? as u32,
        field(3)? != 0,
    );
    let mut matrices = Vec::new();
    for (k, record) in records.enumerate() {
        let record = record?;
        let entries = record
            .iter()
            .map(|f| {
                f.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(k + 1, format!("bad entry {f:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        matrices.push(WeightMatrix::new(rows, cols, entries)?);
    }
    Ok(CensusFile {
        rows,
        cols,
        max_weight,
        packed,
        matrices,
    })
}

pub fn read_census_file(path: &Path) -> Result<CensusFile> {
    read_census_csv(std::io::BufReader::new(std::fs::File::open(path)?))
}
