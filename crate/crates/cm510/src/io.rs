//! On-disk JSON formats: coefficient tuples and isomorphism witnesses.
//!
//! Rational scalars are serialized as strings (`"p"` or `"p/q"`) so no
//! precision is lost in transit; a series is its list of coefficients in
//! ascending powers of `t`, zero-padded on read when shorter than the
//! declared precision.

use crate::error::{Error, Result};
use crate::matrix::SeriesMatrix;
use crate::quiver::Rim;
use crate::rank2::CoeffTuple;
use crate::series::PowerSeries;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Textual series: rational coefficient strings, ascending powers.
pub type SeriesText = Vec<String>;

/// Tuple file: `{"prec": 8, "b": [[series], ... 10 entries]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TupleFile {
    pub prec: usize,
    pub b: Vec<SeriesText>,
}

impl TupleFile {
    pub fn from_tuple(tuple: &CoeffTuple) -> Self {
        TupleFile {
            prec: tuple.prec(),
            b: (1..=10).map(|i| tuple.b(i).to_strings()).collect(),
        }
    }

    /// Parses and validates: ten series, precision at least 2, exact zero sum.
    pub fn to_tuple(&self) -> Result<CoeffTuple> {
        if self.prec < 2 {
            return Err(Error::InvalidTuple(
                "precision must be at least 2".to_string(),
            ));
        }
        if self.b.len() != 10 {
            return Err(Error::InvalidTuple(format!(
                "need 10 coefficient series, got {}",
                self.b.len()
            )));
        }
        let mut series = Vec::with_capacity(10);
        for (idx, coeffs) in self.b.iter().enumerate() {
            let s = PowerSeries::parse(coeffs, self.prec)
                .map_err(|e| Error::Parse(format!("entry b[{}]: {e}", idx + 1)))?;
            series.push(s);
        }
        CoeffTuple::new(series)
    }
}

/// Witness file: ten 2x2 matrices indexed by vertex `0..9`,
/// `maps[v][row][col]` a textual series.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessFile {
    pub prec: usize,
    pub maps: Vec<Vec<Vec<SeriesText>>>,
}

impl WitnessFile {
    pub fn from_witness(maps: &[SeriesMatrix]) -> Result<Self> {
        if maps.len() != 10 {
            return Err(Error::Incompatible(format!(
                "a witness has 10 vertex maps, got {}",
                maps.len()
            )));
        }
        let prec = maps[0].prec();
        for (v, m) in maps.iter().enumerate() {
            if m.rows() != 2 || m.cols() != 2 || m.prec() != prec {
                return Err(Error::Incompatible(format!(
                    "vertex {v}: expected a 2x2 map at precision {prec}"
                )));
            }
        }
        let maps = maps
            .iter()
            .map(|m| {
                (0..2)
                    .map(|r| (0..2).map(|c| m[(r, c)].to_strings()).collect())
                    .collect()
            })
            .collect();
        Ok(WitnessFile { prec, maps })
    }

    pub fn to_witness(&self) -> Result<Vec<SeriesMatrix>> {
        if self.prec < 2 {
            return Err(Error::Parse("precision must be at least 2".to_string()));
        }
        if self.maps.len() != 10 {
            return Err(Error::Parse(format!(
                "a witness has 10 vertex maps, got {}",
                self.maps.len()
            )));
        }
        let mut out = Vec::with_capacity(10);
        for (v, rows) in self.maps.iter().enumerate() {
            if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
                return Err(Error::Parse(format!("map at vertex {v} is not 2x2")));
            }
            let parsed: Result<Vec<Vec<PowerSeries>>> = rows
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(c, text)| {
                            PowerSeries::parse(text, self.prec).map_err(|e| {
                                Error::Parse(format!("vertex {v} entry ({r},{c}): {e}"))
                            })
                        })
                        .collect()
                })
                .collect();
            out.push(SeriesMatrix::from_rows(parsed?));
        }
        Ok(out)
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_tuple_file(path: &Path) -> Result<CoeffTuple> {
    let file: TupleFile = serde_json::from_str(&read_text(path)?)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    file.to_tuple()
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_witness_file(path: &Path) -> Result<Vec<SeriesMatrix>> {
    let file: WitnessFile = serde_json::from_str(&read_text(path)?)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    file.to_witness()
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline, byte-identical for identical values.
pub fn to_json_string(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Accepts `[1,3,5,7,9]` or `1,3,5,7,9`; element order is immaterial.
pub fn parse_rim_arg(text: &str, n: usize) -> Result<Rim> {
    let trimmed = text
        .trim()
        .trim_start_matches('[')
        .trim_end_matches(']');
    let mut elems = Vec::new();
    for part in trimmed.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: usize = part
            .parse()
            .map_err(|_| Error::Parse(format!("bad rim element {part:?} in {text:?}")))?;
        elems.push(v);
    }
    Rim::new(n, elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank2::CoeffTuple;
    use crate::series::{scalar, scalar_ratio};

    fn sample_tuple() -> CoeffTuple {
        let consts = [
            scalar(1),
            scalar_ratio(-1, 2),
            scalar_ratio(-1, 2),
            scalar(2),
            scalar(-2),
            scalar(0),
            scalar(0),
            scalar(3),
            scalar(-3),
            scalar(0),
        ];
        CoeffTuple::from_constants(&consts, 4).unwrap()
    }

    #[test]
    fn tuple_files_round_trip() {
        let tuple = sample_tuple();
        let file = TupleFile::from_tuple(&tuple);
        assert_eq!(file.prec, 4);
        assert_eq!(file.b[0], vec!["1", "0", "0", "0"]);
        assert_eq!(file.b[1][0], "-1/2");
        let back = file.to_tuple().unwrap();
        assert_eq!(&back, &tuple);
        // JSON round trip too
        let json = to_json_string(&file);
        let reparsed: TupleFile = serde_json::from_str(&json).unwrap();
        assert_eq!(reparsed.to_tuple().unwrap(), tuple);
    }

    #[test]
    fn short_series_are_zero_padded() {
        let file = TupleFile {
            prec: 3,
            b: vec![
                vec!["1".into()],
                vec!["-1".into()],
                vec![],
                vec![],
                vec![],
                vec![],
                vec![],
                vec![],
                vec![],
                vec![],
            ],
        };
        let tuple = file.to_tuple().unwrap();
        assert_eq!(tuple.prec(), 3);
        assert_eq!(tuple.b(1).constant_term(), &scalar(1));
        assert!(tuple.b(3).is_zero());
    }

    #[test]
    fn bad_tuple_files_name_the_entry() {
        let mut file = TupleFile::from_tuple(&sample_tuple());
        file.b[2][0] = "one half".into();
        let err = file.to_tuple().unwrap_err().to_string();
        assert!(err.contains("b[3]"), "{err}");

        let mut wrong_count = TupleFile::from_tuple(&sample_tuple());
        wrong_count.b.pop();
        let err = wrong_count.to_tuple().unwrap_err().to_string();
        assert!(err.contains("10"), "{err}");

        let mut unbalanced = TupleFile::from_tuple(&sample_tuple());
        unbalanced.b[0][0] = "7".into();
        let err = unbalanced.to_tuple().unwrap_err().to_string();
        assert!(err.contains("sum to zero"), "{err}");

        let mut long = TupleFile::from_tuple(&sample_tuple());
        long.b[4].push("1".into());
        assert!(long.to_tuple().is_err());
    }

    #[test]
    fn witness_files_round_trip() {
        use crate::iso::construct_witness;
        use crate::rank2::build_m;

        let a = build_m(sample_tuple()).unwrap();
        let b = build_m(CoeffTuple::from_constants(
            &[
                scalar(2),
                scalar(-1),
                scalar(-1),
                scalar(4),
                scalar(-4),
                scalar(0),
                scalar(0),
                scalar(6),
                scalar(-6),
                scalar(0),
            ],
            4,
        )
        .unwrap())
        .unwrap();
        let witness = construct_witness(&a, &b).unwrap();
        let file = WitnessFile::from_witness(&witness).unwrap();
        let back = file.to_witness().unwrap();
        assert_eq!(back, witness);
        crate::iso::verify_witness(&a, &b, &back).unwrap();

        let json = to_json_string(&file);
        let reparsed: WitnessFile = serde_json::from_str(&json).unwrap();
        assert_eq!(reparsed.to_witness().unwrap(), witness);
    }

    #[test]
    fn malformed_witness_files_are_rejected() {
        let file = WitnessFile {
            prec: 3,
            maps: vec![vec![vec![vec!["1".into()]; 2]; 2]; 9],
        };
        assert!(file.to_witness().unwrap_err().to_string().contains("10"));

        let ragged = WitnessFile {
            prec: 3,
            maps: vec![vec![vec![vec!["1".into()]; 3]; 2]; 10],
        };
        let err = ragged.to_witness().unwrap_err().to_string();
        assert!(err.contains("2x2"), "{err}");
    }

    #[test]
    fn rim_arguments_parse_in_either_shape() {
        let a = parse_rim_arg("[1,3,5,7,9]", 10).unwrap();
        let b = parse_rim_arg(" 9, 7, 5, 3, 1 ", 10).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_vec(), vec![1, 3, 5, 7, 9]);
        assert!(parse_rim_arg("[1,2,x]", 10).is_err());
        assert!(parse_rim_arg("[1,1,2]", 10).is_err());
        assert!(parse_rim_arg("[11]", 10).is_err());
    }

    #[test]
    fn files_read_back_from_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tuple.json");
        let tuple = sample_tuple();
        std::fs::write(&path, to_json_string(&TupleFile::from_tuple(&tuple))).unwrap();
        assert_eq!(read_tuple_file(&path).unwrap(), tuple);

        let bad = dir.path().join("bad.json");
        std::fs::write(&bad, "{\"prec\": 4").unwrap();
        let err = read_tuple_file(&bad).unwrap_err().to_string();
        assert!(err.contains("bad.json"), "{err}");
    }
}
