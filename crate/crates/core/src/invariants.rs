//! Wall-crossing from nilpotent counts to DT invariants, stacky counts and volumes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::curve::CurveModel;
use crate::engine::nil_bundle_series;
use crate::scalar::{ParamSpace, ScalarExpr};
use crate::series::GradedSeries;
use crate::{Error, Result};

/// A divisor, as far as the formulas see it: its degree and whether it is canonical.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub deg: i64,
    pub canonical: bool,
}

impl Divisor {
    pub fn of_degree(deg: i64) -> Self {
        Divisor {
            deg,
            canonical: false,
        }
    }

    pub fn canonical(genus: usize) -> Self {
        Divisor {
            deg: 2 * genus as i64 - 2,
            canonical: true,
        }
    }

    /// Checks that the pipeline covers this divisor on a curve of the given genus.
    pub fn check(&self, genus: usize) -> Result<()> {
        let k = 2 * genus as i64 - 2;
        if self.canonical && self.deg != k {
            return Err(Error::Invalid(format!(
                "a canonical divisor has degree {k}, not {}",
                self.deg
            )));
        }
        if self.deg < k {
            return Err(Error::Unsupported(format!(
                "unsupported degree {} < 2g-2 = {k}",
                self.deg
            )));
        }
        if self.deg == k && !self.canonical {
            return Err(Error::Unsupported(
                "unsupported degree: pipeline has no route for non-canonical divisors of degree 2g-2".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    INil,
    IPlus,
    OmegaPlus,
    HPlus,
    Omega,
    H,
    APlus,
    Volume,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::INil,
        Kind::IPlus,
        Kind::OmegaPlus,
        Kind::HPlus,
        Kind::Omega,
        Kind::H,
        Kind::APlus,
        Kind::Volume,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Kind::INil => "i_nil",
            Kind::IPlus => "i_plus",
            Kind::OmegaPlus => "omega_plus",
            Kind::HPlus => "h_plus",
            Kind::Omega => "omega",
            Kind::H => "h",
            Kind::APlus => "a_plus",
            Kind::Volume => "volume",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    /// Accepts the snake-case names with or without underscores (`h_plus`, `hplus`).
    fn from_str(s: &str) -> Result<Kind> {
        let key = s.to_ascii_lowercase().replace(['_', '-'], "");
        Kind::ALL
            .into_iter()
            .find(|k| k.name().replace('_', "") == key)
            .ok_or_else(|| Error::Invalid(format!("unknown kind {s:?}")))
    }
}

/// Where an entry comes from: read off a truncated (`+`) series directly, inside the
/// region where truncated and true counts agree, or moved there by `d -> d + r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Direct,
    StableRegion,
    ExtendedByPeriodicity,
}

impl Provenance {
    pub fn name(&self) -> &'static str {
        match self {
            Provenance::Direct => "direct",
            Provenance::StableRegion => "stable-region",
            Provenance::ExtendedByPeriodicity => "extended-by-periodicity",
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Provenance> {
        [
            Provenance::Direct,
            Provenance::StableRegion,
            Provenance::ExtendedByPeriodicity,
        ]
        .into_iter()
        .find(|p| p.name() == s)
        .ok_or_else(|| Error::Invalid(format!("unknown provenance {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub value: ScalarExpr,
    pub provenance: Provenance,
}

/// Invariants of one kind for one divisor, keyed by `(r, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTable {
    pub deg: i64,
    pub genus: usize,
    pub kind: Kind,
    pub entries: BTreeMap<(u32, u32), Entry>,
}

#[derive(Serialize, Deserialize)]
struct JsonRow {
    l: i64,
    r: u32,
    d: u32,
    kind: Kind,
    value: String,
    provenance: String,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    genus: usize,
    l: i64,
    kind: Kind,
    entries: Vec<JsonRow>,
}

impl InvariantTable {
    /// All entries with `r >= 1` of a series, marked [`Provenance::Direct`].
    pub fn from_series(series: &GradedSeries, deg: i64, genus: usize, kind: Kind) -> Self {
        let mut entries = BTreeMap::new();
        for r in 1..=series.rmax() {
            for d in 0..=series.dmax() {
                entries.insert(
                    (r, d),
                    Entry {
                        value: series.get(r, d),
                        provenance: Provenance::Direct,
                    },
                );
            }
        }
        InvariantTable {
            deg,
            genus,
            kind,
            entries,
        }
    }

    pub fn get(&self, r: u32, d: u32) -> Option<&ScalarExpr> {
        self.entries.get(&(r, d)).map(|e| &e.value)
    }

    fn rows(&self) -> Vec<JsonRow> {
        self.entries
            .iter()
            .map(|(&(r, d), e)| JsonRow {
                l: self.deg,
                r,
                d,
                kind: self.kind,
                value: e.value.to_canonical_string(),
                provenance: e.provenance.name().to_string(),
            })
            .collect()
    }

    fn from_rows(genus: usize, deg: i64, kind: Kind, rows: Vec<JsonRow>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for row in rows {
            if row.l != deg || row.kind != kind {
                return Err(Error::Invalid("mixed tables in one file".into()));
            }
            entries.insert(
                (row.r, row.d),
                Entry {
                    value: row.value.parse()?,
                    provenance: row.provenance.parse()?,
                },
            );
        }
        Ok(InvariantTable {
            deg,
            genus,
            kind,
            entries,
        })
    }

    pub fn to_json(&self) -> String {
        let t = JsonTable {
            genus: self.genus,
            l: self.deg,
            kind: self.kind,
            entries: self.rows(),
        };
        serde_json::to_string_pretty(&t).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let t: JsonTable = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        Self::from_rows(t.genus, t.l, t.kind, t.entries)
    }

    /// CSV with header `l,r,d,kind,value,provenance`; values quoted.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .quote_style(csv::QuoteStyle::NonNumeric)
            .from_writer(Vec::new());
        w.write_record(["l", "r", "d", "kind", "value", "provenance"])
            .expect("in-memory write");
        for row in self.rows() {
            w.write_record([
                row.l.to_string(),
                row.r.to_string(),
                row.d.to_string(),
                row.kind.to_string(),
                row.value,
                row.provenance,
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    /// Reads a CSV export back (the genus is not part of the CSV format).
    pub fn from_csv(text: &str, genus: usize) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(|e| Error::Invalid(e.to_string()))?;
            let field = |i: usize| {
                rec.get(i)
                    .ok_or_else(|| Error::Invalid("short CSV row".into()))
            };
            let int = |i: usize| -> Result<i64> {
                field(i)?
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad integer in column {i}")))
            };
            rows.push(JsonRow {
                l: int(0)?,
                r: int(1)? as u32,
                d: int(2)? as u32,
                kind: field(3)?.parse()?,
                value: field(4)?.to_string(),
                provenance: field(5)?.to_string(),
            });
        }
        let first = rows
            .first()
            .ok_or_else(|| Error::Invalid("empty CSV table".into()))?;
        let (deg, kind) = (first.l, first.kind);
        Self::from_rows(genus, deg, kind, rows)
    }
}

fn q_minus_one() -> ScalarExpr {
    &ScalarExpr::q() - &ScalarExpr::one()
}

/// `Omega+ = (q - 1) Log(I)`.
pub fn omega_from_i(i: &GradedSeries, space: &ParamSpace) -> Result<GradedSeries> {
    Ok(i.pleth_log(space)?.scale(&q_minus_one()))
}

/// `H+` slope by slope: `Exp(slice(Omega+)/(q - 1))`.
pub fn h_plus_from_omega(omega: &GradedSeries, space: &ParamSpace) -> Result<GradedSeries> {
    omega.slope_exp_all(space)
}

/// `Omega+_D` for `deg D > 2g-2` (through `K - D`) or `D = K` (through the zero divisor).
pub fn omega_plus_for_divisor(
    div: Divisor,
    curve: &CurveModel,
    rmax: u32,
    dmax: u32,
) -> Result<GradedSeries> {
    div.check(curve.genus())?;
    let space = curve.space();
    if div.canonical {
        let i0 = nil_bundle_series(0, curve, rmax, dmax)?;
        return Ok(omega_from_i(&i0, &space)?.scale(&ScalarExpr::q()));
    }
    let dual = 2 * curve.genus() as i64 - 2 - div.deg;
    omega_from_i(&nil_bundle_series(dual, curve, rmax, dmax)?, &space)
}

/// `A+ = (q - 1) Log(I+_{0,nil})`: absolutely indecomposable positive bundles.
pub fn a_plus_from_nil(curve: &CurveModel, rmax: u32, dmax: u32) -> Result<InvariantTable> {
    let i0 = nil_bundle_series(0, curve, rmax, dmax)?;
    let a = omega_from_i(&i0, &curve.space())?;
    Ok(InvariantTable::from_series(
        &a,
        0,
        curve.genus(),
        Kind::APlus,
    ))
}

/// Lower bound `max(C(r,2) l, 0)`: degrees above it lie in the stable region.
fn stable_bound(r: u32, deg: i64) -> i64 {
    (r as i64 * (r as i64 - 1) / 2 * deg).max(0)
}

/// Smallest `d_max` for which [`stabilize_and_extend`] succeeds up to rank `rmax`.
pub fn needed_dmax(rmax: u32, deg: i64) -> u32 {
    (1..=rmax)
        .map(|r| (stable_bound(r, deg) + r as i64) as u32)
        .max()
        .unwrap_or(0)
}

/// True counts from truncated ones: `X(r, d) = X+(r, d')` with `d' = d mod r` in the
/// stable region `d' > max(C(r,2) l, 0)`, taking `d' = d` when `d` is already stable.
pub fn stabilize_and_extend(plus: &InvariantTable) -> Result<InvariantTable> {
    let kind = match plus.kind {
        Kind::HPlus => Kind::H,
        Kind::OmegaPlus => Kind::Omega,
        k => return Err(Error::Invalid(format!("cannot stabilize a {k} table"))),
    };
    let rmax = plus.entries.keys().map(|k| k.0).max().unwrap_or(0);
    for r in 1..=rmax {
        let dmax = plus
            .entries
            .keys()
            .filter(|k| k.0 == r)
            .map(|k| k.1)
            .max()
            .unwrap_or(0);
        let needed = needed_dmax(r, plus.deg);
        if dmax < needed {
            return Err(Error::WindowTooSmall {
                needed: needed_dmax(rmax, plus.deg) as i64,
            });
        }
    }
    let mut entries = BTreeMap::new();
    for r in 1..=rmax {
        let bound = stable_bound(r, plus.deg);
        let ds: Vec<u32> = plus
            .entries
            .keys()
            .filter(|k| k.0 == r)
            .map(|k| k.1)
            .collect();
        for d in ds {
            let (src, provenance) = if d as i64 > bound {
                (d, Provenance::StableRegion)
            } else {
                let k = (bound - d as i64) / r as i64 + 1;
                (d + k as u32 * r, Provenance::ExtendedByPeriodicity)
            };
            let value = plus
                .get(r, src)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("missing entry ({r}, {src})")))?;
            entries.insert((r, d), Entry { value, provenance });
        }
    }
    Ok(InvariantTable {
        deg: plus.deg,
        genus: plus.genus,
        kind,
        entries,
    })
}

/// `[M_D(r, d)] = (-v)^(l r^2) H_D(r, d)`.
pub fn moduli_volume(h: &InvariantTable) -> Result<InvariantTable> {
    if h.kind != Kind::H {
        return Err(Error::Invalid(format!(
            "volumes need an h table, got {}",
            h.kind
        )));
    }
    let mut entries = BTreeMap::new();
    for (&(r, d), e) in &h.entries {
        let pre = (-ScalarExpr::v()).pow(h.deg * (r as i64) * (r as i64));
        entries.insert(
            (r, d),
            Entry {
                value: &pre * &e.value,
                provenance: e.provenance,
            },
        );
    }
    Ok(InvariantTable {
        deg: h.deg,
        genus: h.genus,
        kind: Kind::Volume,
        entries,
    })
}

/// Any table kind for a divisor on the window `r <= rmax`, `d <= dmax`.
///
/// `i_nil` needs `deg D <= 0`; `a_plus` ignores the divisor; the other kinds need a
/// divisor covered by [`Divisor::check`]. Stabilized kinds enlarge the internal window
/// as far as the stable region requires.
pub fn invariant_table(
    kind: Kind,
    div: Divisor,
    curve: &CurveModel,
    rmax: u32,
    dmax: u32,
) -> Result<InvariantTable> {
    let g = curve.genus();
    let space = curve.space();
    let table = |s: &GradedSeries, k: Kind| InvariantTable::from_series(s, div.deg, g, k);
    match kind {
        Kind::INil => Ok(table(&nil_bundle_series(div.deg, curve, rmax, dmax)?, kind)),
        Kind::APlus => a_plus_from_nil(curve, rmax, dmax),
        Kind::OmegaPlus => Ok(table(
            &omega_plus_for_divisor(div, curve, rmax, dmax)?,
            kind,
        )),
        Kind::IPlus => {
            let omega = omega_plus_for_divisor(div, curve, rmax, dmax)?;
            let inv = q_minus_one().inv()?;
            Ok(table(&omega.scale(&inv).pleth_exp(&space)?, kind))
        }
        Kind::HPlus => {
            let omega = omega_plus_for_divisor(div, curve, rmax, dmax)?;
            Ok(table(&h_plus_from_omega(&omega, &space)?, kind))
        }
        Kind::Omega | Kind::H | Kind::Volume => {
            div.check(g)?;
            let inner = dmax.max(needed_dmax(rmax, div.deg));
            let omega = omega_plus_for_divisor(div, curve, rmax, inner)?;
            let plus = if kind == Kind::Omega {
                table(&omega, Kind::OmegaPlus)
            } else {
                table(&h_plus_from_omega(&omega, &space)?, Kind::HPlus)
            };
            let mut out = stabilize_and_extend(&plus)?;
            out.entries.retain(|k, _| k.1 <= dmax);
            if kind == Kind::Volume {
                out = moduli_volume(&out)?;
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ScalarExpr {
        x.parse().unwrap()
    }

    #[test]
    fn divisor_routes() {
        assert!(Divisor::canonical(0).check(0).is_ok());
        assert!(matches!(
            Divisor::of_degree(-2).check(0),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            Divisor::of_degree(-3).check(0),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            Divisor {
                deg: 1,
                canonical: true
            }
            .check(0),
            Err(Error::Invalid(_))
        ));
        assert!(Divisor::of_degree(-1).check(0).is_ok());
    }

    #[test]
    fn stabilization_window() {
        let mut plus = InvariantTable {
            deg: 2,
            genus: 0,
            kind: Kind::HPlus,
            entries: BTreeMap::new(),
        };
        for r in 1..=2 {
            for d in 0..=3 {
                plus.entries.insert(
                    (r, d),
                    Entry {
                        value: ScalarExpr::int(10 * r + d),
                        provenance: Provenance::Direct,
                    },
                );
            }
        }
        assert_eq!(
            stabilize_and_extend(&plus),
            Err(Error::WindowTooSmall { needed: 4 })
        );
        plus.entries.insert(
            (2, 4),
            Entry {
                value: ScalarExpr::int(24),
                provenance: Provenance::Direct,
            },
        );
        let h = stabilize_and_extend(&plus).unwrap();
        assert_eq!(h.get(2, 0), Some(&ScalarExpr::int(24)));
        assert_eq!(h.get(2, 1), Some(&ScalarExpr::int(23)));
        assert_eq!(h.entries[&(2, 3)].provenance, Provenance::StableRegion);
        assert_eq!(h.get(1, 0), Some(&ScalarExpr::int(11)));
    }

    #[test]
    fn genus_zero_rank_one_chain() {
        let c = CurveModel::symbolic(0).unwrap();
        let omega = omega_plus_for_divisor(Divisor::of_degree(2), &c, 1, 3).unwrap();
        assert_eq!(omega.get(1, 2), s("q^2"));
        let a = a_plus_from_nil(&c, 2, 3).unwrap();
        for d in 0..=3 {
            assert!(a.get(1, d).unwrap().is_one());
            assert!(a.get(2, d).unwrap().is_zero());
        }
        let vol = invariant_table(Kind::Volume, Divisor::canonical(0), &c, 1, 2).unwrap();
        assert_eq!(vol.get(1, 1), Some(&s("1/(q - 1)")));
    }

    #[test]
    fn table_roundtrips() {
        let c = CurveModel::symbolic(1).unwrap();
        let t = invariant_table(Kind::Omega, Divisor::of_degree(1), &c, 2, 3).unwrap();
        assert_eq!(InvariantTable::from_json(&t.to_json()).unwrap(), t);
        assert_eq!(InvariantTable::from_csv(&t.to_csv(), 1).unwrap(), t);
        assert!(t
            .to_csv()
            .starts_with("\"l\",\"r\",\"d\",\"kind\",\"value\",\"provenance\""));
    }
}
