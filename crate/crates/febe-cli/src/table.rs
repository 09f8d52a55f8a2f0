//! Tabular scenario output with deterministic serialization.

/// A named column; the unit is carried for axis labels and documentation,
/// the CSV header uses the bare name (units are encoded in the names, e.g.
/// `l_p_mm`).
#[derive(Debug, Clone)]
pub struct Column {
    pub name: &'static str,
    pub unit: &'static str,
}

/// Result of one scenario run: the column layout, the data rows, and the
/// fully resolved configuration that produced them.
#[derive(Debug, Clone)]
pub struct ResultTable {
    pub scenario: &'static str,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
    /// Render the first column on a logarithmic axis.
    pub log_x: bool,
    /// `key = value` lines of the resolved configuration.
    pub resolved: Vec<(String, String)>,
}

impl ResultTable {
    /// CSV with a fixed 12-significant-digit float format so identical
    /// configurations produce byte-identical files.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|c| c.name).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.11e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Reproducibility record: scenario, library version, and every
    /// configuration key with its effective value.
    pub fn resolved_config_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario = {}\n", self.scenario));
        out.push_str(&format!("version = {}\n", env!("CARGO_PKG_VERSION")));
        for (key, value) in &self.resolved {
            out.push_str(&format!("{key} = {value}\n"));
        }
        out
    }
}
