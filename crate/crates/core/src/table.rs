//! Transition-probability tables over a parameter grid and their CSV form.

use std::fmt::Write as _;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::C64;

/// Grid the table is indexed by.
#[derive(Debug, Clone, PartialEq)]
pub enum GridAxis {
    /// Evolution times of a Hamiltonian sweep.
    Time(Vec<f64>),
    /// `(alpha, theta)` pairs of a circuit sweep.
    Circuit(Vec<(f64, f64)>),
}

impl GridAxis {
    pub fn len(&self) -> usize {
        match self {
            GridAxis::Time(t) => t.len(),
            GridAxis::Circuit(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn header(&self) -> &'static str {
        match self {
            GridAxis::Time(_) => "axis,from,to,probability",
            GridAxis::Circuit(_) => "alpha,theta,from,to,probability",
        }
    }
}

/// `p[g][to][from] = |U_{to,from}|^2`, the probability of the transition
/// `from -> to` at grid point `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportTable {
    axis: GridAxis,
    n_nodes: usize,
    probs: Vec<f64>,
}

impl TransportTable {
    /// Builds a table from one unitary per grid point.
    pub fn from_unitaries<'a>(
        axis: GridAxis,
        unitaries: impl IntoIterator<Item = &'a DMatrix<C64>>,
    ) -> Result<Self> {
        let mut probs = Vec::new();
        let mut n_nodes = None;
        let mut count = 0;
        for u in unitaries {
            let n = *n_nodes.get_or_insert(u.nrows());
            if u.nrows() != n || u.ncols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: u.nrows(),
                });
            }
            for to in 0..n {
                for from in 0..n {
                    // Rounding can push |U_ij|^2 a few ulps past 1.
                    probs.push(u[(to, from)].norm_sqr().min(1.0));
                }
            }
            count += 1;
        }
        if count == 0 {
            return Err(Error::EmptyGrid);
        }
        if count != axis.len() {
            return Err(Error::DimensionMismatch {
                expected: axis.len(),
                found: count,
            });
        }
        Ok(Self {
            axis,
            n_nodes: n_nodes.unwrap_or(0),
            probs,
        })
    }

    pub fn axis(&self) -> &GridAxis {
        &self.axis
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_points(&self) -> usize {
        self.axis.len()
    }

    pub fn probability(&self, point: usize, from: usize, to: usize) -> f64 {
        let n = self.n_nodes;
        self.probs[point * n * n + to * n + from]
    }

    /// Largest `|sum_to p(from -> to) - 1|` over all points and sources.
    pub fn normalization_defect(&self) -> f64 {
        let n = self.n_nodes;
        let mut worst = 0.0f64;
        for g in 0..self.n_points() {
            for from in 0..n {
                let total: f64 = (0..n).map(|to| self.probability(g, from, to)).sum();
                worst = worst.max((total - 1.0).abs());
            }
        }
        worst
    }

    /// Largest `|p(from -> to) - p(to -> from)|` in the table.
    pub fn reciprocity_defect(&self) -> f64 {
        let n = self.n_nodes;
        let mut worst = 0.0f64;
        for g in 0..self.n_points() {
            for a in 0..n {
                for b in a + 1..n {
                    worst = worst.max((self.probability(g, a, b) - self.probability(g, b, a)).abs());
                }
            }
        }
        worst
    }

    /// Max probability of `from -> to` over the grid with its point index.
    pub fn max_transfer(&self, from: usize, to: usize) -> (usize, f64) {
        (0..self.n_points())
            .map(|g| (g, self.probability(g, from, to)))
            .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
    }

    /// Largest entrywise probability difference to a table of the same shape.
    pub fn max_diff(&self, other: &TransportTable) -> f64 {
        assert_eq!(self.probs.len(), other.probs.len(), "table shapes differ");
        self.probs
            .iter()
            .zip(&other.probs)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// CSV with 17 significant digits per real.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        self.write_csv_body(&mut out, true);
        out
    }

    /// Appends rows (and optionally the header) to `out`.
    pub fn write_csv_body(&self, out: &mut String, header: bool) {
        if header {
            out.push_str(self.axis.header());
            out.push('\n');
        }
        let n = self.n_nodes;
        for g in 0..self.n_points() {
            let prefix = match &self.axis {
                GridAxis::Time(t) => format!("{:.16e}", t[g]),
                GridAxis::Circuit(p) => format!("{:.16e},{:.16e}", p[g].0, p[g].1),
            };
            for from in 0..n {
                for to in 0..n {
                    let _ = writeln!(out, "{prefix},{from},{to},{:.16e}", self.probability(g, from, to));
                }
            }
        }
    }
}

/// Row and column counts of a validated CSV.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CsvShape {
    pub rows: usize,
    pub columns: usize,
}

/// Checks a transport CSV: known header, constant column count, finite reals,
/// integer node columns and probabilities in `[0, 1]`.
pub fn validate_transport_csv(text: &str) -> Result<CsvShape> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(Error::Csv {
        line: 1,
        message: "empty file".into(),
    })?;
    let columns = match header {
        "axis,from,to,probability" => 4,
        "alpha,theta,from,to,probability" => 5,
        other => {
            return Err(Error::Csv {
                line: 1,
                message: format!("unknown header `{other}`"),
            })
        }
    };
    let mut rows = 0;
    for (k, row) in lines.enumerate() {
        let line = k + 2;
        let bad = |message: String| Error::Csv { line, message };
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != columns {
            return Err(bad(format!("expected {columns} fields, found {}", fields.len())));
        }
        for f in &fields[..columns - 3] {
            let v: f64 = f.parse().map_err(|_| bad(format!("`{f}` is not a real")))?;
            if !v.is_finite() {
                return Err(bad(format!("`{f}` is not finite")));
            }
        }
        for f in &fields[columns - 3..columns - 1] {
            f.parse::<usize>()
                .map_err(|_| bad(format!("`{f}` is not a node index")))?;
        }
        let p: f64 = fields[columns - 1]
            .parse()
            .map_err(|_| bad(format!("`{}` is not a real", fields[columns - 1])))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(bad(format!("probability {p} outside [0, 1]")));
        }
        rows += 1;
    }
    Ok(CsvShape { rows, columns })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_table() {
        let id = DMatrix::<C64>::identity(3, 3);
        let t = TransportTable::from_unitaries(GridAxis::Time(vec![0.0]), [&id]).unwrap();
        assert_eq!(t.probability(0, 1, 1), 1.0);
        assert_eq!(t.probability(0, 1, 2), 0.0);
        assert_eq!(t.normalization_defect(), 0.0);
        let csv = t.to_csv();
        assert_eq!(validate_transport_csv(&csv).unwrap(), CsvShape { rows: 9, columns: 4 });
        assert!(csv.starts_with("axis,from,to,probability\n0.0000000000000000e0,0,0,1.0000000000000000e0\n"));
    }

    #[test]
    fn rejects_bad_csv() {
        assert!(validate_transport_csv("").is_err());
        assert!(validate_transport_csv("t,from,to,p\n").is_err());
        assert!(validate_transport_csv("axis,from,to,probability\n0,0,0\n").is_err());
        assert!(validate_transport_csv("axis,from,to,probability\n0,0,0,1.5\n").is_err());
        assert!(validate_transport_csv("axis,from,to,probability\ninf,0,0,1\n").is_err());
        assert!(validate_transport_csv("alpha,theta,from,to,probability\n0,0,x,0,1\n").is_err());
    }

    #[test]
    fn grid_length_must_match() {
        let id = DMatrix::<C64>::identity(2, 2);
        assert!(TransportTable::from_unitaries(GridAxis::Time(vec![0.0, 1.0]), [&id]).is_err());
        assert_eq!(
            TransportTable::from_unitaries(GridAxis::Time(vec![]), std::iter::empty()),
            Err(Error::EmptyGrid)
        );
    }
}
