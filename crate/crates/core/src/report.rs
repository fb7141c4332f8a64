//! A full comparison report for a pair of labelings.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::classic::{self, EncodingLengths};
use crate::corrected::{self, RmiResult};
use crate::error::Result;
use crate::omega::{self, LogCount, Margins, OmegaMethod, OmegaOptions};
use crate::partitions::{ContingencyTable, Labeling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    #[default]
    Bits,
    Nats,
}

impl Base {
    /// Multiplier taking nats to this base.
    pub fn factor(self) -> f64 {
        match self {
            Base::Bits => 1.0 / std::f64::consts::LN_2,
            Base::Nats => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Base::Bits => "bits",
            Base::Nats => "nats",
        }
    }
}

impl FromStr for Base {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "bits" => Ok(Base::Bits),
            "nats" => Ok(Base::Nats),
            other => Err(format!("unknown base '{other}' (expected bits or nats)")),
        }
    }
}

macro_rules! measures {
    ($($variant:ident => $name:literal, $info:literal;)*) => {
        /// Every measure the report can contain, in output order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum MeasureName {
            $($variant,)*
        }

        impl MeasureName {
            pub const ALL: &'static [MeasureName] = &[$(MeasureName::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(MeasureName::$variant => $name,)*
                }
            }

            /// Whether the value is an amount of information (and so
            /// changes with the log base).
            pub fn is_information(self) -> bool {
                match self {
                    $(MeasureName::$variant => $info,)*
                }
            }
        }

        impl FromStr for MeasureName {
            type Err = String;

            fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
                match s {
                    $($name => Ok(MeasureName::$variant),)*
                    other => Err(format!("unknown measure '{other}'")),
                }
            }
        }
    };
}

measures! {
    EntropyR => "entropy_r", true;
    EntropyS => "entropy_s", true;
    ConditionalEntropy => "conditional_entropy_s_given_r", true;
    MutualInformation => "mutual_information", true;
    Nmi => "nmi", false;
    Vi => "vi", true;
    H1 => "h1", true;
    H2 => "h2", true;
    H3 => "h3", true;
    H4 => "h4", true;
    RmiExact => "rmi_exact", true;
    RmiStirling => "rmi_stirling", true;
    RmiFirstTerm => "rmi_first_term", true;
    Nrmi => "nrmi", false;
    Emi => "emi", true;
    Ami => "ami", true;
}

impl fmt::Display for MeasureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parse a comma-separated measure list; `all` selects everything.
pub fn parse_measures(list: &str) -> std::result::Result<Vec<MeasureName>, String> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "all" {
            out.extend_from_slice(MeasureName::ALL);
        } else {
            out.push(item.parse()?);
        }
    }
    if out.is_empty() {
        return Err("no measures selected".into());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportOptions {
    pub base: Base,
    pub omega: OmegaOptions,
    pub measures: Vec<MeasureName>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            base: Base::Bits,
            omega: OmegaOptions::default(),
            measures: MeasureName::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmegaSummary {
    /// `ln Ω(a,b)` converted to the report's base.
    pub log_value: f64,
    pub method: OmegaMethod,
    /// Decimal digits of Ω when it was counted exactly.
    pub exact: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub n: u64,
    #[serde(rename = "R")]
    pub r: usize,
    #[serde(rename = "S")]
    pub s: usize,
    pub base: Base,
    pub measures: Measures,
    pub omega: Option<OmegaSummary>,
    pub warnings: Vec<String>,
}

/// Measure values in [`MeasureName`] order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Measures(pub Vec<(MeasureName, f64)>);

impl Measures {
    pub fn get(&self, name: MeasureName) -> Option<f64> {
        self.0.iter().find(|(m, _)| *m == name).map(|&(_, v)| v)
    }
}

impl Serialize for Measures {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, value) in &self.0 {
            map.serialize_entry(name.as_str(), value)?;
        }
        map.end()
    }
}

fn approximation_warning(what: &str, count: &LogCount) -> String {
    format!(
        "exact count of {what} exceeded the budget; ln Ω estimated with {}",
        count.method
    )
}

/// Compare two labelings of the same objects.
pub fn compare(first: &Labeling, second: &Labeling, options: &ReportOptions) -> Result<MeasureReport> {
    let table = ContingencyTable::from_labelings(first, second)?;
    compare_table(&table, options)
}

pub fn compare_table(table: &ContingencyTable, options: &ReportOptions) -> Result<MeasureReport> {
    use MeasureName::*;

    let wants = |m: MeasureName| options.measures.contains(&m);
    let needs_omega = [H4, RmiExact, RmiStirling, Nrmi].into_iter().any(wants);
    let mut warnings = Vec::new();
    let auto = options.omega.method == OmegaMethod::Auto;

    let log_omega = if needs_omega {
        let count = omega::count(&table.margins(), options.omega)?;
        if auto && count.method != OmegaMethod::Exact {
            warnings.push(approximation_warning("Ω(a,b)", &count));
        }
        Some(count)
    } else {
        None
    };

    let n = table.total();
    let rmi: Option<RmiResult> = log_omega
        .clone()
        .map(|count| corrected::reduced_mi_with(table, count));
    let encodings: Option<EncodingLengths> = log_omega
        .as_ref()
        .map(|count| classic::encoding_lengths_with(table, count.log_value));
    let adjusted = if wants(Emi) || wants(Ami) {
        Some(corrected::adjusted_mi(table, options.omega.budget))
    } else {
        None
    };

    let mut values = Vec::with_capacity(options.measures.len());
    for &name in MeasureName::ALL.iter().filter(|m| wants(**m)) {
        let nats = match name {
            EntropyR => classic::entropy(table.row_sums(), n),
            EntropyS => classic::entropy(table.col_sums(), n),
            ConditionalEntropy => classic::conditional_entropy(table),
            MutualInformation => classic::mutual_information(table),
            Nmi => classic::normalized_mi(table)?,
            Vi => classic::variation_of_information(table),
            H1 => encodings.expect("omega computed").h1,
            H2 => encodings.expect("omega computed").h2,
            H3 => encodings.expect("omega computed").h3,
            H4 => encodings.expect("omega computed").h4,
            RmiExact => rmi.as_ref().expect("omega computed").m_exact,
            RmiStirling => rmi.as_ref().expect("omega computed").m_stirling,
            RmiFirstTerm => corrected::ln_table_information(table) / n as f64,
            Nrmi => {
                let ab = log_omega.as_ref().expect("omega computed");
                let a = table.row_sums();
                let b = table.col_sums();
                let aa = omega::count(&Margins::from_parts(a.to_vec(), a.to_vec(), n), options.omega)?;
                let bb = omega::count(&Margins::from_parts(b.to_vec(), b.to_vec(), n), options.omega)?;
                if auto && (aa.method != OmegaMethod::Exact || bb.method != OmegaMethod::Exact) {
                    let approx = if aa.method != OmegaMethod::Exact { &aa } else { &bb };
                    warnings.push(approximation_warning("a self-comparison table", approx));
                }
                corrected::normalized_rmi_from_counts(table, ab.log_value, aa.log_value, bb.log_value)?
            }
            Emi => adjusted.expect("adjusted computed").emi,
            Ami => adjusted.expect("adjusted computed").ami,
        };
        let value = if name.is_information() {
            nats * options.base.factor()
        } else {
            nats
        };
        values.push((name, value));
    }

    Ok(MeasureReport {
        n,
        r: table.num_rows(),
        s: table.num_cols(),
        base: options.base,
        measures: Measures(values),
        omega: log_omega.map(|count| OmegaSummary {
            log_value: count.log_value * options.base.factor(),
            method: count.method,
            exact: count.exact_value.map(|v| v.to_string()),
        }),
        warnings,
    })
}

impl MeasureReport {
    /// Header row plus one data row, tab separated.
    pub fn to_tsv(&self) -> String {
        let mut header = vec!["n".to_string(), "R".into(), "S".into(), "base".into()];
        let mut row = vec![
            self.n.to_string(),
            self.r.to_string(),
            self.s.to_string(),
            self.base.as_str().to_string(),
        ];
        for (name, value) in &self.measures.0 {
            header.push(name.as_str().to_string());
            row.push(value.to_string());
        }
        if let Some(omega) = &self.omega {
            header.extend(["omega_log".into(), "omega_method".into(), "omega_exact".into()]);
            row.push(omega.log_value.to_string());
            row.push(omega.method.to_string());
            row.push(omega.exact.clone().unwrap_or_default());
        }
        format!("{}\n{}\n", header.join("\t"), row.join("\t"))
    }

    /// Aligned two-column listing for reading at a terminal.
    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        let unit = self.base.as_str();
        let _ = writeln!(out, "n = {}, R = {}, S = {}", self.n, self.r, self.s);
        let width = self
            .measures
            .0
            .iter()
            .map(|(m, _)| m.as_str().len())
            .max()
            .unwrap_or(0)
            .max("omega".len());
        for (name, value) in &self.measures.0 {
            let suffix = if name.is_information() {
                format!(" {unit}/object")
            } else {
                String::new()
            };
            let _ = writeln!(out, "{:<width$}  {:>12.6}{}", name.as_str(), value, suffix);
        }
        if let Some(omega) = &self.omega {
            let exact = omega
                .exact
                .as_ref()
                .map(|e| format!(" (Ω = {e})"))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{:<width$}  {:>12.6} {unit} via {}{}",
                "log Ω", omega.log_value, omega.method, exact
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}
