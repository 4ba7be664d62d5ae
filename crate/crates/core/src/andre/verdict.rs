use super::{E2Page, VerdictJson};

/// Shape of the nonzero part of a page.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneration {
    /// All nonzero entries share one q (an empty page counts as a row).
    Row,
    Column,
    None,
}

impl Degeneration {
    pub fn as_str(self) -> &'static str {
        match self {
            Degeneration::Row => "row",
            Degeneration::Column => "column",
            Degeneration::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub inequalities: bool,
    pub degenerate: Degeneration,
    /// `None` when some category involved has a loop and the complexes are unbounded.
    pub euler: Option<bool>,
    pub violations: Vec<String>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> VerdictJson {
        let pf = |b: bool| if b { "PASS" } else { "FAIL" }.to_string();
        VerdictJson {
            inequalities: pf(self.inequalities),
            degenerate: self.degenerate.as_str().to_string(),
            euler: self.euler.map_or_else(|| "N/A".to_string(), pf),
            violations: self.violations.clone(),
        }
    }
}

fn shape(grid: &[Vec<usize>]) -> Degeneration {
    let nonzero: Vec<(usize, usize)> = grid
        .iter()
        .enumerate()
        .flat_map(|(p, col)| col.iter().enumerate().filter(|e| *e.1 > 0).map(move |(q, _)| (p, q)))
        .collect();
    if nonzero.windows(2).all(|w| w[0].1 == w[1].1) {
        Degeneration::Row
    } else if nonzero.windows(2).all(|w| w[0].0 == w[1].0) {
        Degeneration::Column
    } else {
        Degeneration::None
    }
}

/// Checks the page against its abutment in every total degree n ≤ N.
pub fn check_consistency(page: &E2Page) -> Verdict {
    let n_max = page.n_max;
    let grid: Vec<Vec<usize>> = page.grid.iter().map(|c| c.iter().map(|g| g.dim()).collect()).collect();
    let abut = page.abutment_dims();
    let diagonal = |n: usize| -> usize { (0..=n).map(|p| grid[p][n - p]).sum() };
    let mut violations = Vec::new();
    let mut inequalities = true;
    for n in 0..=n_max {
        if abut[n] > diagonal(n) {
            inequalities = false;
            violations.push(format!("n = {n}: dim H = {} exceeds total E2 dimension {}", abut[n], diagonal(n)));
        }
    }
    let degenerate = shape(&grid);
    if degenerate != Degeneration::None {
        for n in 0..=n_max {
            if abut[n] != diagonal(n) {
                violations.push(format!(
                    "n = {n}: {} page but dim H = {} differs from total E2 dimension {}",
                    degenerate.as_str(),
                    abut[n],
                    diagonal(n)
                ));
            }
        }
    }
    let euler = page.bounded.as_ref().map(|b| {
        let sign = |k: usize| if k % 2 == 0 { 1i64 } else { -1 };
        let lhs: i64 = b.abutment.iter().enumerate().map(|(n, &d)| sign(n) * d as i64).sum();
        let rhs: i64 = b
            .grid
            .iter()
            .enumerate()
            .flat_map(|(p, col)| col.iter().enumerate().map(move |(q, &d)| sign(p + q) * d as i64))
            .sum();
        if lhs != rhs {
            violations.push(format!("Euler characteristic of the abutment is {lhs}, of the page {rhs}"));
        }
        lhs == rhs
    });
    Verdict { inequalities, degenerate, euler, violations }
}
