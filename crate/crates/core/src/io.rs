//! Text format for channels.
//!
//! ```text
//! # full matrix: output count, then the rows for X=0 and X=1
//! 3
//! 0.5 0.2 0.3
//! 0.3 0.2 0.5
//! ```
//!
//! or the BISO shorthand on a single line, in the flat ordering
//! `(p_{-l}, …, p_{-1}, p_1, …, p_l)`:
//!
//! ```text
//! biso 0.01 0.48 0.32 0.19
//! ```
//!
//! `#` starts a comment. Blank lines are ignored.

use crate::channel::{BisoChannel, Channel, FILE_TOL};
use crate::error::{Error, Result};

fn parse_numbers(line: usize, fields: &[&str]) -> Result<Vec<f64>> {
    fields
        .iter()
        .map(|f| {
            f.parse::<f64>().map_err(|_| Error::Parse {
                line,
                reason: format!("`{f}` is not a number"),
            })
        })
        .collect()
}

/// Parses a channel file. Syntax problems yield [`Error::Parse`]; rows that
/// are not probability vectors yield [`Error::InvalidChannel`].
pub fn parse_channel(text: &str) -> Result<Channel> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .map(|(i, l)| (i, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, f)| !f.is_empty())
        .collect();

    let Some((first_line, first)) = lines.first() else {
        return Err(Error::Parse {
            line: 0,
            reason: "empty channel file".into(),
        });
    };

    if first[0].eq_ignore_ascii_case("biso") {
        if lines.len() > 1 {
            return Err(Error::Parse {
                line: lines[1].0,
                reason: "unexpected content after biso line".into(),
            });
        }
        let flat = parse_numbers(*first_line, &first[1..])?;
        if flat.is_empty() || !flat.len().is_multiple_of(2) {
            return Err(Error::Parse {
                line: *first_line,
                reason: format!("biso line needs an even, positive count, found {}", flat.len()),
            });
        }
        let biso = BisoChannel::from_flat_with_tolerance(&flat, FILE_TOL).map_err(|e| Error::InvalidChannel {
            line: *first_line,
            reason: e.to_string(),
        })?;
        return Ok(biso.to_channel());
    }

    if first.len() != 1 {
        return Err(Error::Parse {
            line: *first_line,
            reason: "first line must hold the output count".into(),
        });
    }
    let n: usize = first[0].parse().map_err(|_| Error::Parse {
        line: *first_line,
        reason: format!("`{}` is not an output count", first[0]),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: *first_line,
            reason: "output count must be positive".into(),
        });
    }
    if lines.len() != 3 {
        return Err(Error::Parse {
            line: lines.last().map_or(*first_line, |l| l.0),
            reason: format!("expected 2 rows, found {}", lines.len() - 1),
        });
    }
    let mut rows = Vec::with_capacity(2);
    for (line, fields) in &lines[1..] {
        if fields.len() != n {
            return Err(Error::Parse {
                line: *line,
                reason: format!("expected {n} entries, found {}", fields.len()),
            });
        }
        rows.push(parse_numbers(*line, fields)?);
    }
    let row1 = rows.pop().unwrap_or_default();
    let row0 = rows.pop().unwrap_or_default();
    Channel::with_tolerance(row0, row1, FILE_TOL).map_err(|e| match e {
        Error::NotStochastic { row, reason } => Error::InvalidChannel {
            line: lines[1 + row].0,
            reason: format!("row for X={row} {reason}"),
        },
        other => other,
    })
}

/// Writes the full-matrix form. Floats use shortest round-trip formatting.
pub fn format_channel(channel: &Channel) -> String {
    let row = |x: usize| {
        channel
            .row(x)
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!("{}\n{}\n{}\n", channel.outputs(), row(0), row(1))
}

/// Writes the BISO shorthand.
pub fn format_biso(channel: &BisoChannel) -> String {
    let flat: Vec<String> = channel.flat().iter().map(|v| v.to_string()).collect();
    format!("biso {}\n", flat.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_matrix_with_comments() {
        let text = "# BEC\n3\n0.7 0.3 0   # x=0\n\n0 0.3 0.7\n";
        let ch = parse_channel(text).unwrap();
        assert_eq!(ch, Channel::bec(0.3).unwrap());
    }

    #[test]
    fn parses_biso_shorthand() {
        let ch = parse_channel("biso 0.01 0.48 0.32 0.19").unwrap();
        let biso = ch.canonicalize_biso().unwrap();
        assert_eq!(biso.pairs(), &[(0.32, 0.48), (0.19, 0.01)]);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        assert_eq!(
            parse_channel("2\n0.5 zero\n0.5 0.5\n"),
            Err(Error::Parse {
                line: 2,
                reason: "`zero` is not a number".into()
            })
        );
        assert!(matches!(parse_channel("2\n0.5 0.5\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_channel("biso 0.5"), Err(Error::Parse { .. })));
        assert!(matches!(parse_channel(""), Err(Error::Parse { line: 0, .. })));
    }

    #[test]
    fn bad_row_sum_is_invalid_channel() {
        let err = parse_channel("2\n0.5 0.5\n0.6 0.5\n").unwrap_err();
        assert!(matches!(err, Error::InvalidChannel { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn file_tolerance_accepts_rounded_rows() {
        assert!(parse_channel("2\n0.3333333333 0.6666666667\n0.5 0.5\n").is_ok());
    }

    #[test]
    fn round_trips_through_text() {
        let ch = Channel::new(vec![0.1, 0.2, 0.7], vec![0.7, 0.2, 0.1]).unwrap();
        assert_eq!(parse_channel(&format_channel(&ch)).unwrap(), ch);
        let biso = BisoChannel::new(vec![(0.0, 17.0 / 997.0), (0.7, 0.3 - 17.0 / 997.0)]).unwrap();
        let back = parse_channel(&format_biso(&biso)).unwrap();
        assert_eq!(back.canonicalize_biso().unwrap(), biso);
    }
}
