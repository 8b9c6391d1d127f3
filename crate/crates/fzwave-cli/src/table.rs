//! Tabular results and their CSV rendering.

use std::fmt::Write as _;

/// Outcome of one row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed(String),
}

impl Status {
    fn label(&self) -> &str {
        match self {
            Status::Ok => "ok",
            Status::Failed(tag) => tag,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub values: Vec<f64>,
    pub status: Status,
}

impl Row {
    pub fn ok(values: Vec<f64>) -> Self {
        Row { values, status: Status::Ok }
    }

    /// Keeps the leading coordinates, fills the rest with NaN.
    pub fn failed(coords: &[f64], width: usize, err: &fzwave::Error) -> Self {
        let mut values = coords.to_vec();
        values.resize(width, f64::NAN);
        Row { values, status: Status::Failed(error_tag(err).into()) }
    }

    pub fn from_result(coords: &[f64], width: usize, r: fzwave::Result<Vec<f64>>) -> Self {
        match r {
            Ok(mut rest) => {
                let mut values = coords.to_vec();
                values.append(&mut rest);
                Row::ok(values)
            }
            Err(e) => Row::failed(coords, width, &e),
        }
    }
}

/// Short machine-readable tag for the status column.
pub fn error_tag(err: &fzwave::Error) -> &'static str {
    use fzwave::Error::*;
    match err {
        InvalidParameter(_) => "invalid_parameter",
        Domain(_) => "domain",
        BranchCut(_) => "branch_cut",
        Region(_) => "region",
        SingularPoint => "singular_point",
        NonConvergence { .. } => "nonconvergence",
        Truncation(_) => "truncation",
        Root(_) => "root",
        InvalidRay => "invalid_ray",
        DegenerateData(_) => "degenerate_data",
    }
}

/// Columns plus rows; a table may hold several blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

impl Block {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Block { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r.values[k]).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// `alpha=… tau=… rel_tol=… abs_tol=…`.
    pub params: String,
    pub blocks: Vec<Block>,
    /// Trailing `# key=value` lines.
    pub notes: Vec<(String, String)>,
}

impl Table {
    pub fn new(params: String) -> Self {
        Table { params, blocks: Vec::new(), notes: Vec::new() }
    }

    pub fn note(&mut self, key: &str, value: impl std::fmt::Display) {
        self.notes.push((key.into(), value.to_string()));
    }

    pub fn failures(&self) -> usize {
        self.blocks.iter().flat_map(|b| &b.rows).filter(|r| r.status != Status::Ok).count()
    }

    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }

    pub fn note_value(&self, key: &str) -> Option<&str> {
        self.notes.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str("# fzwave-spec v1\n");
        let _ = writeln!(s, "# {}", self.params);
        let multi = self.blocks.len() > 1;
        for b in &self.blocks {
            if multi {
                let _ = writeln!(s, "# block={}", b.name);
            }
            s.push_str(&b.columns.join(","));
            s.push_str(",status\n");
            for r in &b.rows {
                for v in &r.values {
                    let _ = write!(s, "{},", fmt_float(*v));
                }
                s.push_str(r.status.label());
                s.push('\n');
            }
        }
        for (k, v) in &self.notes {
            let _ = writeln!(s, "# {k}={v}");
        }
        s
    }
}

/// Shortest round-trip representation.
pub fn fmt_float(v: f64) -> String {
    format!("{v:?}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new("alpha=0.5 tau=0.5 rel_tol=1e-8 abs_tol=1e-10".into());
        let mut b = Block::new("main", &["x", "y"]);
        b.rows.push(Row::ok(vec![0.1, 1e-20]));
        b.rows.push(Row::failed(&[0.2], 2, &fzwave::Error::SingularPoint));
        t.blocks.push(b);
        t.note("max", 3.0);
        assert_eq!(
            t.to_csv(),
            "# fzwave-spec v1\n# alpha=0.5 tau=0.5 rel_tol=1e-8 abs_tol=1e-10\nx,y,status\n\
             0.1,1e-20,ok\n0.2,NaN,singular_point\n# max=3\n"
        );
        assert_eq!(t.failures(), 1);
    }

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, 1e-300, 12345.678, -0.0] {
            assert_eq!(fmt_float(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }
}
