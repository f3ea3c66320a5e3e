use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::{Dataset, Label};
use crate::error::{Error, Result};

/// Which CSV column holds the class label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelColumn {
    Name(String),
    Index(usize),
}

impl LabelColumn {
    /// Resolves a command-line value: a header name if one matches,
    /// otherwise a zero-based column index.
    pub fn parse(raw: &str) -> LabelColumn {
        match raw.parse::<usize>() {
            Ok(i) => LabelColumn::Index(i),
            Err(_) => LabelColumn::Name(raw.to_string()),
        }
    }

    fn resolve(&self, header: &[String]) -> Result<usize> {
        match self {
            LabelColumn::Name(name) => {
                let hits: Vec<usize> = header
                    .iter()
                    .enumerate()
                    .filter(|(_, h)| h.trim() == name)
                    .map(|(i, _)| i)
                    .collect();
                match hits.as_slice() {
                    [] => Err(Error::MissingLabelColumn(name.clone())),
                    [i] => Ok(*i),
                    _ => Err(Error::DuplicateLabelColumn(name.clone())),
                }
            }
            LabelColumn::Index(i) if *i < header.len() => {
                let name = header[*i].trim();
                if header.iter().filter(|h| h.trim() == name).count() > 1 {
                    return Err(Error::DuplicateLabelColumn(name.to_string()));
                }
                Ok(*i)
            }
            LabelColumn::Index(i) => Err(Error::MissingLabelColumn(format!("#{i}"))),
        }
    }
}

/// Loads a headed CSV file. Cells of the label column equal to
/// `positive_label` become positive, everything else negative.
pub fn load_csv(path: impl AsRef<Path>, label_column: &LabelColumn, positive_label: &str) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_csv(file, label_column, positive_label).map(|d| d.with_source_tag(path.display().to_string()))
}

pub fn read_csv<R: Read>(reader: R, label_column: &LabelColumn, positive_label: &str) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    let label_idx = label_column.resolve(&header)?;
    let dimension = header.len() - 1;
    if dimension == 0 {
        return Err(crate::error::invalid("CSV needs at least one feature column"));
    }
    let names: Vec<String> = header
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != label_idx)
        .map(|(_, h)| h.trim().to_string())
        .collect();

    let mut features = Vec::new();
    let mut labels = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let record = record?;
        let row = r + 1;
        if record.len() != header.len() {
            return Err(Error::RaggedRow {
                row,
                found: record.len(),
                expected: header.len(),
            });
        }
        let mut x = Vec::with_capacity(dimension);
        for (c, cell) in record.iter().enumerate() {
            if c == label_idx {
                continue;
            }
            let value = cell
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::ParseCell {
                    row,
                    column: header[c].trim().to_string(),
                    value: cell.to_string(),
                })?;
            x.push(value);
        }
        features.push(x);
        labels.push(if record[label_idx].trim() == positive_label {
            Label::Positive
        } else {
            Label::Negative
        });
    }
    if labels.len() < 2 {
        return Err(Error::TooFewRows(labels.len()));
    }
    let data = Dataset::new(dimension, features, labels)?.with_feature_names(names)?;
    data.require_both_classes()?;
    Ok(data)
}

/// Writes `data` as CSV with a trailing `label` column holding `pos`/`neg`.
/// Values use the shortest representation that parses back to the same
/// `f64`.
pub fn save_csv(data: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(data, file)
}

pub fn write_csv<W: Write>(data: &Dataset, writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    let mut header: Vec<String> = match &data.feature_names {
        Some(names) => names.clone(),
        None => (0..data.dimension()).map(|j| format!("f{j}")).collect(),
    };
    header.push("label".to_string());
    wtr.write_record(&header)?;
    for (x, y) in data.iter() {
        let mut row: Vec<String> = x.iter().map(|v| v.to_string()).collect();
        row.push(y.as_str().to_string());
        wtr.write_record(&row)?;
    }
    wtr.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(text: &str) -> Result<Dataset> {
        read_csv(text.as_bytes(), &LabelColumn::Name("label".into()), "yes")
    }

    #[test]
    fn loads_small_file() {
        let d = parse("a,b,label\n0,1,yes\n2,3,no\n4,5,no").unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.dimension(), 2);
        assert_eq!(d.count(Label::Positive), 1);
        assert_eq!(d.count(Label::Negative), 2);
        assert_eq!(d.x(1), &[2.0, 3.0]);
        assert_eq!(
            d.feature_names.as_deref(),
            Some(&["a".to_string(), "b".to_string()][..])
        );
    }

    #[test]
    fn label_column_by_index() {
        let d = read_csv("label,a\nyes,1\nno,2\n".as_bytes(), &LabelColumn::Index(0), "yes").unwrap();
        assert_eq!(d.x(0), &[1.0]);
        assert_eq!(d.y(0), Label::Positive);
    }

    #[test]
    fn parse_error_names_row_and_column() {
        let err = parse("a,b,label\n0,abc,yes\n1,2,no").unwrap_err();
        match err {
            Error::ParseCell { row, column, .. } => {
                assert_eq!(row, 1);
                assert_eq!(column, "b");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(matches!(parse("a,label\n0,yes\n"), Err(Error::TooFewRows(1))));
        assert!(matches!(parse("a,label\n0,no\n1,no\n"), Err(Error::SingleClass)));
        assert!(matches!(parse("a,b\n0,1\n1,2\n"), Err(Error::MissingLabelColumn(_))));
        assert!(matches!(
            parse("label,label\n0,1\n1,2\n"),
            Err(Error::DuplicateLabelColumn(_))
        ));
        assert!(matches!(
            parse("a,label\ninf,yes\n1,no\n"),
            Err(Error::ParseCell { .. })
        ));
    }

    #[test]
    fn missing_file() {
        let err = load_csv("/nonexistent/x.csv", &LabelColumn::Index(0), "1").unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    proptest! {
        #[test]
        fn csv_round_trip(rows in proptest::collection::vec(
            (proptest::collection::vec(-1e12f64..1e12, 3), any::<bool>()), 2..30)) {
            let mut rows = rows;
            rows[0].1 = true;
            rows[1].1 = false;
            let (features, labels): (Vec<_>, Vec<_>) = rows
                .into_iter()
                .map(|(x, p)| (x, if p { Label::Positive } else { Label::Negative }))
                .unzip();
            let d = Dataset::new(3, features, labels).unwrap();
            let mut buf = Vec::new();
            write_csv(&d, &mut buf).unwrap();
            let back = read_csv(&buf[..], &LabelColumn::Name("label".into()), "pos").unwrap();
            prop_assert_eq!(back.features(), d.features());
            prop_assert_eq!(back.labels(), d.labels());
        }
    }
}
