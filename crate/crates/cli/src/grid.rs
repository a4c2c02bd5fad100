//! Rows of trailing digits for consecutive heights, with the first digit
//! that is not yet stable marked.

use serde::Serialize;
use serde_json::json;
use tetra_core::phase_shift::phase_shift_series;
use tetra_core::{tetration, SpeedProfile};

use crate::args::GridArgs;
use crate::output::{Output, Table};
use crate::CliError;

/// Largest `--max-height` accepted.
pub const MAX_GRID_HEIGHT: u64 = 2_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridRow {
    pub height: u64,
    /// Most-significant first, `width` digits.
    pub digits: String,
    /// `#S(a,b) + 1`, counted from the right.
    pub mark_position: u64,
    pub phase_shift: u8,
}

impl GridRow {
    /// Digits with the marked position in brackets, if it is within the row.
    pub fn marked(&self) -> String {
        let width = self.digits.len() as u64;
        if self.mark_position == 0 || self.mark_position > width {
            return self.digits.clone();
        }
        let idx = (width - self.mark_position) as usize;
        format!(
            "{}[{}]{}",
            &self.digits[..idx],
            &self.digits[idx..idx + 1],
            &self.digits[idx + 1..]
        )
    }
}

pub fn grid_rows(base: u64, max_height: u64, width: usize) -> Result<Vec<GridRow>, CliError> {
    if max_height == 0 {
        return Err(tetra_core::Error::InvalidHeight(0).into());
    }
    if max_height > MAX_GRID_HEIGHT {
        return Err(CliError::Resource(format!(
            "--max-height {max_height} exceeds the grid limit of {MAX_GRID_HEIGHT}"
        )));
    }
    let profile = SpeedProfile::compute(base, max_height)?;
    let shifts = phase_shift_series(base, max_height)?;
    (1..=max_height)
        .zip(shifts)
        .map(|(b, phase_shift)| {
            let stable = profile.stable_at(b).expect("profile covers max_height");
            Ok(GridRow {
                height: b,
                digits: tetration(base, b, width)?.to_string(),
                mark_position: stable + 1,
                phase_shift,
            })
        })
        .collect()
}

pub fn grid(a: &GridArgs) -> Result<Output, CliError> {
    let rows = grid_rows(a.base, a.max_height, a.width)?;
    let pad = a.max_height.to_string().len();
    let mut table = Table::new(["height", "digits", "mark_position", "phase_shift"]);
    let mut plain = Vec::with_capacity(rows.len());
    for r in &rows {
        table.push([
            r.height.to_string(),
            r.digits.clone(),
            r.mark_position.to_string(),
            r.phase_shift.to_string(),
        ]);
        plain.push(format!("{:>pad$} {}", r.height, r.marked()));
    }
    let payload = json!({"base": a.base, "width": a.width, "rows": rows});
    Ok(Output::new("grid", a, payload).plain(plain).table(table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_three_rows() {
        // ^3 3 = 3^27 = 7625597484987
        let rows = grid_rows(3, 4, 4).unwrap();
        let digits: Vec<&str> = rows.iter().map(|r| r.digits.as_str()).collect();
        assert_eq!(digits, ["0003", "0027", "4987", "9387"]);
        let marks: Vec<u64> = rows.iter().map(|r| r.mark_position).collect();
        assert_eq!(marks, [1, 2, 3, 4]);
        let marked: Vec<String> = rows.iter().map(GridRow::marked).collect();
        assert_eq!(marked, ["000[3]", "00[2]7", "4[9]87", "[9]387"]);
    }

    #[test]
    fn single_cell() {
        let rows = grid_rows(3, 1, 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].marked(), "[3]");
    }

    #[test]
    fn phase_column() {
        let rows = grid_rows(3, 5, 6).unwrap();
        let shifts: Vec<u8> = rows[1..].iter().map(|r| r.phase_shift).collect();
        assert_eq!(shifts, [4, 6, 4, 6]);
    }

    #[test]
    fn mark_beyond_width_is_left_plain() {
        let rows = grid_rows(3, 6, 3).unwrap();
        assert_eq!(rows[5].marked(), rows[5].digits);
    }

    #[test]
    fn limits() {
        assert!(grid_rows(30, 3, 3).is_err());
        assert_eq!(
            grid_rows(3, MAX_GRID_HEIGHT + 1, 3)
                .unwrap_err()
                .exit_code(),
            crate::EXIT_RESOURCE
        );
    }
}
