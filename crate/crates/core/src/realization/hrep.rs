//! Plain-text H-representation, version 1:
//!
//! ```text
//! HREP v1
//! dim <d>  polygon <m>
//! E <k>
//! n1 ... nd rhs
//! I <t>
//! a b n1 ... nd rhs
//! ```
//!
//! Rationals are written as integers or `p/q`. Text after `#` is ignored when
//! reading.

use std::fmt::Write;

use super::{Equality, Facet, HPolytope};
use crate::error::{Error, Result};
use crate::exactlin::{parse_rat, QVector, Rat};
use crate::polygon::Diagonal;

pub(super) fn write_hrep(h: &HPolytope) -> String {
    let mut s = String::new();
    let row = |s: &mut String, v: &QVector, rhs: &Rat| {
        for x in v.iter() {
            write!(s, " {x}").unwrap();
        }
        writeln!(s, " {rhs}").unwrap();
    };
    writeln!(s, "HREP v1").unwrap();
    writeln!(s, "dim {}  polygon {}", h.dim, h.m).unwrap();
    writeln!(s, "E {}", h.equalities.len()).unwrap();
    for e in &h.equalities {
        let mut line = String::new();
        row(&mut line, &e.normal, &e.rhs);
        s.push_str(&line[1..]);
    }
    writeln!(s, "I {}", h.facets.len()).unwrap();
    for f in &h.facets {
        write!(s, "{} {}", f.label.a(), f.label.b()).unwrap();
        row(&mut s, &f.normal, &f.rhs);
    }
    s
}

pub fn parse_hrep(text: &str) -> Result<HPolytope> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut next = |what: &str| {
        lines.next().ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("missing {what}"),
        })
    };
    let err = |line: usize, msg: &str| Error::Parse {
        line,
        msg: msg.to_string(),
    };

    let (ln, header) = next("header")?;
    if header != "HREP v1" {
        return Err(err(ln, "expected 'HREP v1'"));
    }
    let (ln, dims) = next("dimension line")?;
    let toks: Vec<&str> = dims.split_whitespace().collect();
    let (dim, m) = match toks.as_slice() {
        ["dim", d, "polygon", m] => (
            d.parse::<usize>().map_err(|_| err(ln, "bad dim"))?,
            m.parse::<usize>().map_err(|_| err(ln, "bad polygon"))?,
        ),
        _ => return Err(err(ln, "expected 'dim <d>  polygon <m>'")),
    };
    let count = |ln: usize, l: &str, tag: &str| -> Result<usize> {
        match l.split_whitespace().collect::<Vec<_>>().as_slice() {
            [t, k] if *t == tag => k.parse().map_err(|_| err(ln, "bad row count")),
            _ => Err(err(ln, &format!("expected '{tag} <count>'"))),
        }
    };
    let rats = |ln: usize, toks: &[&str]| -> Result<Vec<Rat>> {
        toks.iter()
            .map(|t| parse_rat(t).ok_or_else(|| err(ln, &format!("bad rational {t:?}"))))
            .collect()
    };

    let (ln, l) = next("E line")?;
    let k = count(ln, l, "E")?;
    let mut equalities = Vec::with_capacity(k);
    for _ in 0..k {
        let (ln, l) = next("equality row")?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != dim + 1 {
            return Err(err(ln, &format!("equality row needs {} entries", dim + 1)));
        }
        let mut v = rats(ln, &toks)?;
        let rhs = v.pop().expect("nonempty row");
        equalities.push(Equality {
            normal: QVector::new(v),
            rhs,
        });
    }
    let (ln, l) = next("I line")?;
    let t = count(ln, l, "I")?;
    let mut facets = Vec::with_capacity(t);
    for _ in 0..t {
        let (ln, l) = next("inequality row")?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != dim + 3 {
            return Err(err(
                ln,
                &format!("inequality row needs {} entries", dim + 3),
            ));
        }
        let a: usize = toks[0].parse().map_err(|_| err(ln, "bad label"))?;
        let b: usize = toks[1].parse().map_err(|_| err(ln, "bad label"))?;
        let label = Diagonal::new(a, b, m)?;
        let mut v = rats(ln, &toks[2..])?;
        let rhs = v.pop().expect("nonempty row");
        facets.push(Facet {
            label,
            normal: QVector::new(v),
            rhs,
        });
    }
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, "trailing content"));
    }
    HPolytope::new(dim, m, facets, equalities)
}
