//! Text inputs: weight and parameter files (`i j value` per line) and point
//! files (`x y` per line). Blank lines and text after `#` are ignored.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::{parse_rat, QVector, Rat};
use crate::genperm::{MinkowskiWeights, RssParams};
use crate::secondary::PlanarConfig;

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| {
            (
                i + 1,
                l.split('#')
                    .next()
                    .unwrap_or("")
                    .split_whitespace()
                    .collect::<Vec<_>>(),
            )
        })
        .filter(|(_, toks)| !toks.is_empty())
}

fn parse_field<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} {tok:?}"),
    })
}

fn parse_value(line: usize, tok: &str) -> Result<Rat> {
    parse_rat(tok).ok_or_else(|| Error::Parse {
        line,
        msg: format!("bad rational {tok:?}"),
    })
}

/// Lines `i j value`; repeated keys are rejected.
pub fn parse_indexed(text: &str) -> Result<BTreeMap<(usize, usize), Rat>> {
    let mut out = BTreeMap::new();
    for (line, toks) in data_lines(text) {
        let [i, j, v] = toks.as_slice() else {
            return Err(Error::Parse {
                line,
                msg: "expected 'i j value'".into(),
            });
        };
        let key = (
            parse_field(line, i, "index")?,
            parse_field(line, j, "index")?,
        );
        if out.insert(key, parse_value(line, v)?).is_some() {
            return Err(Error::Parse {
                line,
                msg: format!("repeated entry {key:?}"),
            });
        }
    }
    Ok(out)
}

pub fn parse_weights(text: &str, n: usize) -> Result<MinkowskiWeights> {
    MinkowskiWeights::new(n, parse_indexed(text)?)
}

pub fn parse_rss_params(text: &str, n: usize) -> Result<RssParams> {
    RssParams::new(n, parse_indexed(text)?)
}

pub fn parse_points(text: &str) -> Result<PlanarConfig> {
    let points = data_lines(text)
        .map(|(line, toks)| match toks.as_slice() {
            [x, y] => Ok(QVector::new(vec![
                parse_value(line, x)?,
                parse_value(line, y)?,
            ])),
            _ => Err(Error::Parse {
                line,
                msg: "expected 'x y'".into(),
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    PlanarConfig::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, ratio};

    #[test]
    fn indexed_files() {
        let m = parse_indexed("# weights\n1 1 1\n1 2 3/2  # comment\n\n2 2 2\n").unwrap();
        assert_eq!(m[&(1, 2)], ratio(3, 2));
        assert_eq!(m.len(), 3);
        assert!(parse_indexed("1 1 1\n1 1 2\n").is_err());
        assert!(matches!(
            parse_indexed("1 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_indexed("1 1 1\n1 x 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn weights_and_rss() {
        let w = parse_weights("1 1 1\n1 2 1\n2 2 1\n", 1).unwrap();
        assert_eq!(w, MinkowskiWeights::ones(1));
        assert!(parse_weights("1 1 1\n1 2 -1\n2 2 1\n", 1).is_err());
        let g = parse_rss_params("0 1 0\n0 2 0\n1 2 -1\n", 1).unwrap();
        assert_eq!(g, RssParams::g0(1));
    }

    #[test]
    fn points() {
        let q = parse_points("0 0\n1 0\n1 1\n0 1\n").unwrap();
        assert_eq!(q.area(), rat(1));
        assert!(parse_points("0 0\n1 0\n1 1\n").is_err());
        assert!(parse_points("0 0\n1 0 2\n").is_err());
    }
}
