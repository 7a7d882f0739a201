//! Tabulated reference thresholds, `gamma` unspecified, kept for side-by-side
//! comparison. Blank cells are inadmissible density ratios.

const REFERENCE_CSV: &str = include_str!("../fixtures/reference_thresholds.csv");

/// Reference grid: row axis `beta_i`, column axis `btilde`, cells `J`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    pub beta_i: Vec<f64>,
    pub btilde: Vec<f64>,
    pub cells: Vec<Vec<Option<f64>>>,
}

impl ReferenceTable {
    pub fn lookup(&self, beta_i: f64, btilde: f64) -> Option<f64> {
        let row = self
            .beta_i
            .iter()
            .position(|&b| (b - beta_i).abs() < 1e-9)?;
        let col = self
            .btilde
            .iter()
            .position(|&b| (b - btilde).abs() < 1e-9)?;
        self.cells[row][col]
    }

    pub fn is_blank(&self, row: usize, col: usize) -> bool {
        self.cells[row][col].is_none()
    }
}

fn parse(text: &str) -> ReferenceTable {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().expect("fixture header");
    let btilde = header
        .split(',')
        .skip(1)
        .map(|s| s.trim().parse().expect("fixture column"))
        .collect();
    let mut beta_i = Vec::new();
    let mut cells = Vec::new();
    for line in lines {
        let mut fields = line.split(',');
        beta_i.push(fields.next().unwrap().trim().parse().expect("fixture row"));
        cells.push(
            fields
                .map(|s| {
                    let s = s.trim();
                    (!s.is_empty()).then(|| s.parse().expect("fixture cell"))
                })
                .collect(),
        );
    }
    ReferenceTable {
        beta_i,
        btilde,
        cells,
    }
}

pub fn reference_thresholds() -> ReferenceTable {
    parse(REFERENCE_CSV)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_and_blanks() {
        let t = reference_thresholds();
        assert_eq!(t.beta_i.len(), 15);
        assert_eq!(t.btilde.len(), 9);
        assert!(t.cells.iter().all(|r| r.len() == 9));
        assert_eq!(t.lookup(1.2, 0.0), Some(0.2258));
        assert_eq!(t.lookup(3.2, 0.04), Some(1.4252));
        assert_eq!(t.lookup(1.8, 0.5), None);
        assert_eq!(t.lookup(2.4, 0.3), Some(15.2028));
        assert!(t.is_blank(14, 6));
    }
}
