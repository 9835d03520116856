//! Zero databases on disk.
//!
//! CSV files start with `# key = value` metadata lines followed by a header
//! row and one row per zero, sorted by `γ`. Decimal strings carry every bit of
//! the working precision and are read back verbatim, so a write → read → write
//! cycle reproduces the file byte for byte. JSON holds the same data.

use std::fmt::Write as _;
use std::path::Path;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lerch::RationalParam;
use crate::symmetry::{Counterpart, ZeroClass, ZeroClassification};
use crate::zeros::ZeroRecord;

const CSV_HEADER: [&str; 10] = [
    "lambda_num",
    "lambda_den",
    "alpha_num",
    "alpha_den",
    "beta",
    "gamma",
    "residual",
    "class",
    "partner_gamma",
    "counterpart_abs",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// From a file extension, `csv` when unknown.
    pub fn for_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Self::Json,
            _ => Self::Csv,
        }
    }
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DbHeader {
    pub lambda: RationalParam,
    pub alpha: RationalParam,
    pub digits: u32,
    pub t_min: f64,
    pub t_max: f64,
    pub online_tol: f64,
    pub pair_tol: f64,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DbRow {
    pub beta: String,
    pub gamma: String,
    pub residual: f64,
    pub class: ZeroClass,
    pub partner_gamma: Option<String>,
    pub counterpart_abs: Option<f64>,
}

impl DbRow {
    pub fn beta_float(&self, prec: u32) -> Result<Float> {
        parse_float(&self.beta, prec)
    }

    pub fn gamma_float(&self, prec: u32) -> Result<Float> {
        parse_float(&self.gamma, prec)
    }

    pub fn gamma_f64(&self) -> f64 {
        self.gamma.parse().unwrap_or(f64::NAN)
    }
}

fn parse_float(text: &str, prec: u32) -> Result<Float> {
    let parsed = Float::parse(text).map_err(|e| Error::Parse(format!("{text:?}: {e}")))?;
    Ok(Float::with_val(prec, parsed))
}

/// Enough decimal digits to read back the same binary value.
fn decimal(x: &Float) -> String {
    x.to_string_radix(10, None)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroDatabase {
    pub header: DbHeader,
    pub rows: Vec<DbRow>,
}

impl ZeroDatabase {
    /// Rows from a classified zero list; `counterparts` is either empty or
    /// parallel to `zeros`.
    pub fn from_zeros(
        header: DbHeader,
        zeros: &[ZeroRecord],
        classification: &[ZeroClassification],
        counterparts: &[Counterpart],
    ) -> Result<Self> {
        if classification.len() != zeros.len()
            || !(counterparts.is_empty() || counterparts.len() == zeros.len())
        {
            return Err(Error::Domain(
                "zero, class and counterpart lists differ in length".into(),
            ));
        }
        let mut rows: Vec<(f64, DbRow)> = zeros
            .iter()
            .zip(classification)
            .enumerate()
            .map(|(i, (z, c))| {
                let row = DbRow {
                    beta: decimal(&z.beta),
                    gamma: decimal(&z.gamma),
                    residual: z.residual,
                    class: c.klass,
                    partner_gamma: c.partner_index.map(|j| decimal(&zeros[j].gamma)),
                    counterpart_abs: counterparts.get(i).map(|p| p.counterpart_abs),
                };
                (z.gamma_f64(), row)
            })
            .collect();
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self {
            header,
            rows: rows.into_iter().map(|(_, r)| r).collect(),
        })
    }

    pub fn to_csv(&self) -> Result<String> {
        let h = &self.header;
        let mut out = String::new();
        let meta = [
            ("lambda", h.lambda.to_string()),
            ("alpha", h.alpha.to_string()),
            ("digits", h.digits.to_string()),
            ("t_min", h.t_min.to_string()),
            ("t_max", h.t_max.to_string()),
            ("online_tol", format!("{:e}", h.online_tol)),
            ("pair_tol", format!("{:e}", h.pair_tol)),
            ("version", h.version.clone()),
        ];
        for (k, v) in meta {
            writeln!(out, "# {k} = {v}").expect("write to String");
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER)?;
        let (ln, ld) = (h.lambda.num().to_string(), h.lambda.den().to_string());
        let (an, ad) = (h.alpha.num().to_string(), h.alpha.den().to_string());
        for r in &self.rows {
            w.write_record([
                ln.as_str(),
                ld.as_str(),
                an.as_str(),
                ad.as_str(),
                r.beta.as_str(),
                r.gamma.as_str(),
                &format!("{:e}", r.residual),
                r.class.as_str(),
                r.partner_gamma.as_deref().unwrap_or(""),
                &r.counterpart_abs
                    .map(|v| format!("{v:e}"))
                    .unwrap_or_default(),
            ])?;
        }
        let body = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        out.push_str(&String::from_utf8(body).map_err(|e| Error::Parse(e.to_string()))?);
        Ok(out)
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut meta = std::collections::HashMap::new();
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            let (k, v) = line[1..]
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad metadata line {line:?}")))?;
            meta.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |k: &str| {
            meta.get(k)
                .ok_or_else(|| Error::Parse(format!("missing metadata {k:?}")))
        };
        let num = |k: &str| -> Result<f64> {
            get(k)?
                .parse()
                .map_err(|_| Error::Parse(format!("bad number for {k:?}")))
        };
        let header = DbHeader {
            lambda: get("lambda")?.parse()?,
            alpha: get("alpha")?.parse()?,
            digits: get("digits")?
                .parse()
                .map_err(|_| Error::Parse("bad digits".into()))?,
            t_min: num("t_min")?,
            t_max: num("t_max")?,
            online_tol: num("online_tol")?,
            pair_tol: num("pair_tol")?,
            version: get("version")?.clone(),
        };

        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        if rdr.headers()?.iter().ne(CSV_HEADER) {
            return Err(Error::Parse("unexpected CSV header".into()));
        }
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let field = |i: usize| rec.get(i).unwrap_or("");
            let ints: Vec<u64> = (0..4)
                .map(|i| {
                    field(i)
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad integer {:?}", field(i))))
                })
                .collect::<Result<_>>()?;
            if RationalParam::new(ints[0], ints[1])? != header.lambda
                || RationalParam::new(ints[2], ints[3])? != header.alpha
            {
                return Err(Error::Parse(
                    "row parameters differ from the metadata".into(),
                ));
            }
            let float = |i: usize| -> Result<f64> {
                field(i)
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad number {:?}", field(i))))
            };
            let optional = |i: usize| (!field(i).is_empty()).then(|| field(i).to_string());
            rows.push(DbRow {
                beta: field(4).to_string(),
                gamma: field(5).to_string(),
                residual: float(6)?,
                class: field(7).parse()?,
                partner_gamma: optional(8),
                counterpart_abs: optional(9).map(|_| float(9)).transpose()?,
            });
        }
        Ok(Self { header, rows })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn parse(text: &str, format: Format) -> Result<Self> {
        match format {
            Format::Csv => Self::from_csv(text),
            Format::Json => Self::from_json(text),
        }
    }

    pub fn write(&self, path: &Path, format: Format) -> Result<()> {
        std::fs::write(path, self.render(format)?)?;
        Ok(())
    }

    pub fn read(path: &Path, format: Format) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?, format)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::ZeroMethod;

    fn sample() -> ZeroDatabase {
        let z = |b: &str, g: &str| ZeroRecord {
            beta: parse_float(b, 200).unwrap(),
            gamma: parse_float(g, 200).unwrap(),
            residual: 3.5e-29,
            radius_bound: 0.05,
            method: ZeroMethod::Muller,
        };
        let zeros = vec![
            z("1.1042874360422718", "120.59798399049075"),
            z("0.50000000000007158", "9.6935704528938523"),
            z("-0.1042874360422718", "120.59798399049075"),
        ];
        let cls = vec![
            ZeroClassification {
                zero_index: 0,
                klass: ZeroClass::OffLine,
                partner_index: Some(2),
                pair_residual: Some(0.0),
            },
            ZeroClassification {
                zero_index: 1,
                klass: ZeroClass::OnLine,
                partner_index: None,
                pair_residual: None,
            },
            ZeroClassification {
                zero_index: 2,
                klass: ZeroClass::OffLine,
                partner_index: Some(0),
                pair_residual: Some(0.0),
            },
        ];
        let header = DbHeader {
            lambda: RationalParam::new(3, 4).unwrap(),
            alpha: RationalParam::new(3, 4).unwrap(),
            digits: 30,
            t_min: 0.0,
            t_max: 300.0,
            online_tol: 1e-9,
            pair_tol: 1e-4,
            version: "0.1.0".into(),
        };
        ZeroDatabase::from_zeros(header, &zeros, &cls, &[]).unwrap()
    }

    #[test]
    fn rows_sorted_by_height() {
        let db = sample();
        assert!(
            db.rows[0].gamma.starts_with("9.69357045289385"),
            "{}",
            db.rows[0].gamma
        );
        assert_eq!(db.rows[0].class, ZeroClass::OnLine);
        assert!(db.rows[1].partner_gamma.is_some());
    }

    #[test]
    fn csv_round_trip_is_byte_identical() {
        let text = sample().to_csv().unwrap();
        assert!(text.starts_with("# lambda = 3/4\n"));
        let back = ZeroDatabase::from_csv(&text).unwrap();
        assert_eq!(back, sample());
        assert_eq!(back.to_csv().unwrap(), text);
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let text = sample().to_json().unwrap();
        let back = ZeroDatabase::from_json(&text).unwrap();
        assert_eq!(back.to_json().unwrap(), text);
    }

    #[test]
    fn rejects_mismatched_rows() {
        let text = sample()
            .to_csv()
            .unwrap()
            .replace("\n3,4,3,4,", "\n1,4,3,4,");
        assert!(ZeroDatabase::from_csv(&text).is_err());
        assert!(ZeroDatabase::from_csv("lambda_num\n").is_err());
    }
}
