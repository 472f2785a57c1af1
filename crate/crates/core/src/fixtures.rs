//! Published reference tables, embedded as CSV, and row-by-row comparison.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::eaqecc::{Table, CSV_HEADER};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Fixture {
    Table1,
    Table2,
    Table3,
}

impl Fixture {
    pub const ALL: [Fixture; 3] = [Fixture::Table1, Fixture::Table2, Fixture::Table3];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Table1 => "table1",
            Fixture::Table2 => "table2",
            Fixture::Table3 => "table3",
        }
    }

    pub fn csv(self) -> &'static str {
        match self {
            Fixture::Table1 => include_str!("../fixtures/table1.csv"),
            Fixture::Table2 => include_str!("../fixtures/table2.csv"),
            Fixture::Table3 => include_str!("../fixtures/table3.csv"),
        }
    }

    pub fn rows(self) -> Vec<FixtureRow> {
        parse_csv(self.csv()).expect("embedded fixture is well formed")
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::pre(format!("unknown fixture {s:?}")))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FixtureRow {
    pub k: usize,
    pub ell: usize,
    pub n: usize,
    pub kappa: usize,
    pub d: usize,
    pub c: usize,
    pub q: u64,
}

impl fmt::Display for FixtureRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} ell={} [[{},{},{};{}]]_{}", self.k, self.ell, self.n, self.kappa, self.d, self.c, self.q)
    }
}

impl FixtureRow {
    /// Identities of `[[n, n−k−ℓ, k+1; k−ℓ]]` MDS rows that this row breaks.
    pub fn inconsistencies(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.n.checked_sub(self.k + self.ell) != Some(self.kappa) {
            out.push("kappa = n-k-ell");
        }
        if self.k.checked_sub(self.ell) != Some(self.c) {
            out.push("c = k-ell");
        }
        if self.d != self.k + 1 {
            out.push("d = k+1");
        }
        if 2 * self.d <= self.n + 2 && (self.n + self.c).checked_sub(self.kappa) != Some(2 * (self.d - 1)) {
            out.push("n+c-kappa = 2(d-1)");
        }
        out
    }
}

pub fn parse_csv(text: &str) -> Result<Vec<FixtureRow>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    if lines.next().map(str::trim) != Some(CSV_HEADER) {
        return Err(Error::pre(format!("expected header {CSV_HEADER:?}")));
    }
    lines
        .map(|line| {
            let v: Vec<u64> = line
                .split(',')
                .map(|x| x.trim().parse::<u64>().map_err(|e| Error::pre(format!("bad field {x:?}: {e}"))))
                .collect::<Result<_>>()?;
            match v[..] {
                [k, ell, n, kappa, d, c, q] => Ok(FixtureRow {
                    k: k as usize,
                    ell: ell as usize,
                    n: n as usize,
                    kappa: kappa as usize,
                    d: d as usize,
                    c: c as usize,
                    q,
                }),
                _ => Err(Error::pre(format!("expected 7 fields in {line:?}"))),
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub printed: FixtureRow,
    pub computed: Option<FixtureRow>,
    /// Identities the printed row itself violates.
    pub printed_breaks: Vec<&'static str>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FixtureReport {
    pub total: usize,
    pub matched: usize,
    pub mismatched: Vec<Mismatch>,
}

impl FixtureReport {
    pub fn all_match(&self) -> bool {
        self.total > 0 && self.matched == self.total
    }

    /// Mismatched rows whose printed values are internally inconsistent.
    pub fn inconsistent_printed(&self) -> usize {
        self.mismatched.iter().filter(|m| !m.printed_breaks.is_empty()).count()
    }
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} rows match", self.matched, self.total)?;
        if !self.mismatched.is_empty() {
            write!(
                f,
                "; {} differ, {} of them printed with values that break their own parameter identities",
                self.mismatched.len(),
                self.inconsistent_printed()
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "printed {}", self.printed)?;
        match &self.computed {
            Some(c) => write!(f, ", computed [[{},{},{};{}]]_{}", c.n, c.kappa, c.d, c.c, c.q)?,
            None => write!(f, ", not generated")?,
        }
        if !self.printed_breaks.is_empty() {
            write!(f, " (printed row breaks {})", self.printed_breaks.join(", "))?;
        }
        Ok(())
    }
}

/// Fixture rows with this table's `q`.
pub fn fixture_rows_for(fixture: Fixture, q: u64) -> Vec<FixtureRow> {
    fixture.rows().into_iter().filter(|r| r.q == q).collect()
}

/// Compares every fixture row with the same `q` against the generated table,
/// keyed by `(k, ℓ)`.
pub fn compare(table: &Table, fixture: Fixture) -> FixtureReport {
    let expected = fixture_rows_for(fixture, table.q);
    let mut report = FixtureReport { total: expected.len(), ..Default::default() };
    for want in expected {
        let got = table.rows.iter().find(|r| r.k == want.k && r.ell == want.ell).map(|r| FixtureRow {
            k: r.k,
            ell: r.ell,
            n: r.params.n,
            kappa: r.params.kappa,
            d: r.params.d,
            c: r.params.c,
            q: r.params.q,
        });
        if got == Some(want) {
            report.matched += 1;
        } else {
            report.mismatched.push(Mismatch { printed: want, computed: got, printed_breaks: want.inconsistencies() });
        }
    }
    report
}
