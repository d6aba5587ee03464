//! Invariant records of codimension-two varieties, TSV ingestion, and the
//! filter selecting varieties with one apparent `(n-1)`-tuple point.
//!
//! TSV columns: `name n dim d pi chi_S chi_X K2 scroll tags`. Blank cells
//! mark inapplicable fields. For surfaces `χ(O)` goes in `chi_X`; `chi_S`
//! is reserved for the hyperplane section of a threefold. Tags are
//! comma-separated.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::path::Path;

use serde::Serialize;

use crate::exact::{format_rational, int, is_integral, JsonRational, Rational};
use crate::formulas::{
    apparent_double_points, apparent_triple_points, chi_x_for_quadruple_points, curve_foursecants_a2,
    dgb_bound_check, foursecant_scroll_degree_a1, quadruple_points, residual_4k, SectionInvariants,
    SurfaceInvariants, ThreefoldInvariants,
};

pub const HEADER: [&str; 10] = ["name", "n", "dim", "d", "pi", "chi_S", "chi_X", "K2", "scroll", "tags"];

const BUILTIN: &str = include_str!("../data/builtin.tsv");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("record `{name}`: {message}")]
    Schema { name: String, message: String },
    #[error("range {0} is empty")]
    EmptyRange(&'static str),
    #[error("degree must be positive")]
    NonPositiveDegree,
    #[error("io: {0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarietyRecord {
    pub name: String,
    pub n: u32,
    pub dim: u32,
    pub d: i64,
    pub pi: i64,
    pub chi_s: Option<i64>,
    pub chi_x: Option<i64>,
    pub k2: Option<i64>,
    pub scroll: bool,
    pub tags: Vec<String>,
}

impl VarietyRecord {
    fn schema(&self, message: impl Into<String>) -> CatalogError {
        CatalogError::Schema {
            name: self.name.clone(),
            message: message.into(),
        }
    }

    /// Checks `dim = n - 2` and the fields required for the dimension.
    pub fn validate(&self) -> Result<(), CatalogError> {
        if self.n < 3 || self.dim + 2 != self.n {
            return Err(self.schema(format!("dim {} must equal n - 2 = {}", self.dim, i64::from(self.n) - 2)));
        }
        if self.d < 1 {
            return Err(self.schema("degree must be positive"));
        }
        let missing = match self.dim {
            3 => [("chi_S", self.chi_s), ("chi_X", self.chi_x)]
                .iter()
                .find(|(_, v)| v.is_none())
                .map(|(k, _)| *k),
            2 => [("chi_X", self.chi_x), ("K2", self.k2)]
                .iter()
                .find(|(_, v)| v.is_none())
                .map(|(k, _)| *k),
            _ => None,
        };
        match missing {
            Some(field) => Err(self.schema(format!("missing {field}"))),
            None => Ok(()),
        }
    }

    pub fn threefold(&self) -> Option<ThreefoldInvariants> {
        if self.dim != 3 {
            return None;
        }
        Some(ThreefoldInvariants {
            d: self.d,
            pi: self.pi,
            chi_s: self.chi_s?,
            chi_x: self.chi_x?,
        })
    }

    pub fn surface(&self) -> Option<SurfaceInvariants> {
        if self.dim != 2 {
            return None;
        }
        Some(SurfaceInvariants {
            d: self.d,
            pi: self.pi,
            chi: self.chi_x?,
            k2: self.k2?,
            scroll: self.scroll,
        })
    }
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn to_tsv(records: &[VarietyRecord]) -> String {
    let mut out = HEADER.join("\t");
    out.push('\n');
    for r in records {
        let row = [
            r.name.clone(),
            r.n.to_string(),
            r.dim.to_string(),
            r.d.to_string(),
            r.pi.to_string(),
            cell(r.chi_s),
            cell(r.chi_x),
            cell(r.k2),
            if r.scroll { "1" } else { "0" }.to_string(),
            r.tags.join(","),
        ];
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

pub fn parse_catalog(text: &str) -> Result<Vec<VarietyRecord>, CatalogError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(CatalogError::Parse {
        line: 1,
        column: 1,
        message: "missing header".into(),
    })?;
    let cols: Vec<&str> = header.split('\t').map(str::trim).collect();
    if cols != HEADER {
        let column = cols.iter().zip(HEADER).position(|(a, b)| *a != b).unwrap_or(cols.len().min(HEADER.len()));
        return Err(CatalogError::Parse {
            line: 1,
            column: column + 1,
            message: format!("header must be `{}`", HEADER.join(" ")),
        });
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() != HEADER.len() {
            return Err(CatalogError::Parse {
                line: line_no,
                column: fields.len().min(HEADER.len()) + 1,
                message: format!("expected {} tab-separated fields, found {}", HEADER.len(), fields.len()),
            });
        }
        let err = |column: usize, message: String| CatalogError::Parse {
            line: line_no,
            column: column + 1,
            message,
        };
        let opt = |column: usize| -> Result<Option<i64>, CatalogError> {
            let f = fields[column];
            if f.is_empty() {
                Ok(None)
            } else {
                f.parse()
                    .map(Some)
                    .map_err(|_| err(column, format!("{} is not an integer: `{f}`", HEADER[column])))
            }
        };
        let req = |column: usize| -> Result<i64, CatalogError> {
            opt(column)?.ok_or_else(|| err(column, format!("{} is required", HEADER[column])))
        };
        let small = |column: usize| -> Result<u32, CatalogError> {
            u32::try_from(req(column)?).map_err(|_| err(column, format!("{} must be non-negative", HEADER[column])))
        };
        if fields[0].is_empty() {
            return Err(err(0, "name is required".into()));
        }
        let dim = small(2)?;
        let scroll = match fields[8] {
            "1" => true,
            "0" => false,
            "" if dim != 2 => false,
            "" => return Err(err(8, "scroll flag is required for surfaces".into())),
            other => return Err(err(8, format!("scroll must be 0 or 1, got `{other}`"))),
        };
        let record = VarietyRecord {
            name: fields[0].to_string(),
            n: small(1)?,
            dim,
            d: req(3)?,
            pi: req(4)?,
            chi_s: opt(5)?,
            chi_x: opt(6)?,
            k2: opt(7)?,
            scroll,
            tags: fields[9]
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(String::from)
                .collect(),
        };
        record.validate()?;
        out.push(record);
    }
    Ok(out)
}

pub fn load_catalog(path: &Path) -> Result<Vec<VarietyRecord>, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))?;
    parse_catalog(&text)
}

pub fn save_catalog(records: &[VarietyRecord], path: &Path) -> Result<(), CatalogError> {
    std::fs::write(path, to_tsv(records)).map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))
}

/// Three threefolds in `P⁵`, two surfaces in `P⁴` and one curve in `P³`
/// with one apparent `(n-1)`-tuple point, plus two complete intersections.
pub fn builtin_catalog() -> Vec<VarietyRecord> {
    parse_catalog(BUILTIN).expect("built-in catalog parses")
}

pub fn builtin_tsv() -> &'static str {
    BUILTIN
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

/// Quantities computed for one record; `None` where not applicable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Computed {
    pub q: Option<Rational>,
    pub a1: Option<Rational>,
    pub a2: Option<Rational>,
    pub residual: Option<Rational>,
    pub triple_points: Option<Rational>,
    pub double_points: Option<Rational>,
}

impl Computed {
    /// `(1, a₁, a₂)` when both are known.
    pub fn multidegree(&self) -> Option<[Rational; 3]> {
        Some([int(1), self.a1.clone()?, self.a2.clone()?])
    }
}

impl Serialize for Computed {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let fields = [
            ("q", &self.q),
            ("a1", &self.a1),
            ("a2", &self.a2),
            ("residual", &self.residual),
            ("triple_points", &self.triple_points),
            ("double_points", &self.double_points),
        ];
        let map: BTreeMap<&str, Option<JsonRational>> =
            fields.iter().map(|(k, v)| (*k, v.as_ref().map(JsonRational::from))).collect();
        map.serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecordReport {
    pub name: String,
    pub dim: u32,
    pub verdicts: BTreeMap<&'static str, Verdict>,
    pub computed: Computed,
    pub pass: bool,
}

impl RecordReport {
    fn new(r: &VarietyRecord, verdicts: BTreeMap<&'static str, Verdict>, computed: Computed) -> Self {
        let pass = verdicts.values().all(|v| v.pass);
        Self {
            name: r.name.clone(),
            dim: r.dim,
            verdicts,
            computed,
            pass,
        }
    }

    /// Names of the failed verdicts.
    pub fn reasons(&self) -> Vec<&'static str> {
        self.verdicts.iter().filter(|(_, v)| !v.pass).map(|(k, _)| *k).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ClassificationReport {
    pub records: Vec<RecordReport>,
}

impl ClassificationReport {
    pub fn passing(&self) -> Vec<&str> {
        self.records.iter().filter(|r| r.pass).map(|r| r.name.as_str()).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }
}

fn show(r: &Rational) -> String {
    format_rational(r)
}

fn bound_verdict(n: u32, d: i64, multiplicity: i64) -> Verdict {
    let n1 = i64::from(n) - 1;
    match dgb_bound_check(n, d, multiplicity) {
        Ok(ok) => verdict(ok, format!("{n1}/{multiplicity} < {d} < {}", n1 * n1)),
        Err(e) => verdict(false, e.to_string()),
    }
}

fn require_shape(r: &VarietyRecord, dim: u32) -> Result<(), CatalogError> {
    r.validate()?;
    if r.dim != dim {
        return Err(r.schema(format!("expected a variety of dimension {dim}")));
    }
    Ok(())
}

/// Passes iff `q = 1`, `residual_4k = 0`, the degree bound holds and every
/// computed count is an integer.
pub fn classify_threefolds(records: &[VarietyRecord], multiplicity: i64) -> Result<ClassificationReport, CatalogError> {
    let mut out = Vec::with_capacity(records.len());
    for r in records {
        require_shape(r, 3)?;
        let t = r.threefold().expect("validated");
        let s = t.section();
        let c = Computed {
            q: Some(quadruple_points(&t)),
            a1: Some(foursecant_scroll_degree_a1(&s)),
            a2: Some(curve_foursecants_a2(t.d, t.pi)),
            residual: Some(residual_4k(&s)),
            ..Computed::default()
        };
        let q = c.q.clone().expect("set");
        let residual = c.residual.clone().expect("set");
        let mut v = BTreeMap::new();
        v.insert("quadruple_points", verdict(q == int(1), format!("q = {}, need 1", show(&q))));
        v.insert(
            "residual",
            verdict(residual == int(0), format!("residual = {}, need 0", show(&residual))),
        );
        v.insert("bound", bound_verdict(r.n, r.d, multiplicity));
        let integral = [&c.q, &c.a1, &c.a2].iter().all(|x| x.as_ref().map_or(true, is_integral))
            && t.check_integrality().is_ok();
        v.insert("integrality", verdict(integral, if integral { "integers" } else { "non-integral invariant" }));
        out.push(RecordReport::new(r, v, c));
    }
    Ok(ClassificationReport { records: out })
}

/// Passes iff the surface has one apparent triple point, `4 ≤ d ≤ 8` and is
/// not a scroll.
pub fn classify_surfaces(records: &[VarietyRecord], multiplicity: i64) -> Result<ClassificationReport, CatalogError> {
    let mut out = Vec::with_capacity(records.len());
    for r in records {
        require_shape(r, 2)?;
        let s = r.surface().expect("validated");
        let mut v = BTreeMap::new();
        let mut c = Computed {
            residual: Some(residual_4k(&SectionInvariants {
                d: s.d,
                pi: s.pi,
                chi: s.chi,
            })),
            ..Computed::default()
        };
        v.insert("not_scroll", verdict(!s.scroll, if s.scroll { "scroll" } else { "not a scroll" }));
        match apparent_triple_points(&s) {
            Ok(tp) => {
                v.insert("triple_points", verdict(tp == int(1), format!("triple points = {}, need 1", show(&tp))));
                v.insert("integrality", verdict(is_integral(&tp), "triple point count"));
                c.triple_points = Some(tp);
            }
            Err(e) => {
                v.insert("triple_points", verdict(false, e.to_string()));
            }
        }
        v.insert(
            "degree_window",
            verdict((4..=8).contains(&s.d), format!("4 <= {} <= 8", s.d)),
        );
        v.insert("bound", bound_verdict(r.n, r.d, multiplicity));
        out.push(RecordReport::new(r, v, c));
    }
    Ok(ClassificationReport { records: out })
}

/// Passes iff the curve has one apparent double point and obeys the bound.
pub fn classify_curves(records: &[VarietyRecord], multiplicity: i64) -> Result<ClassificationReport, CatalogError> {
    let mut out = Vec::with_capacity(records.len());
    for r in records {
        require_shape(r, 1)?;
        let dp = apparent_double_points(r.d, r.pi);
        let mut v = BTreeMap::new();
        v.insert("double_points", verdict(dp == int(1), format!("double points = {}, need 1", show(&dp))));
        v.insert("bound", bound_verdict(r.n, r.d, multiplicity));
        let c = Computed {
            double_points: Some(dp),
            ..Computed::default()
        };
        out.push(RecordReport::new(r, v, c));
    }
    Ok(ClassificationReport { records: out })
}

/// Classifies every record by its dimension, keeping input order. With
/// `dim` set, only records of that dimension are considered.
pub fn classify(
    records: &[VarietyRecord],
    dim: Option<u32>,
    multiplicity: i64,
) -> Result<ClassificationReport, CatalogError> {
    let mut out = Vec::new();
    for r in records.iter().filter(|r| dim.map_or(true, |d| r.dim == d)) {
        let one = std::slice::from_ref(r);
        let rep = match r.dim {
            3 => classify_threefolds(one, multiplicity)?,
            2 => classify_surfaces(one, multiplicity)?,
            1 => classify_curves(one, multiplicity)?,
            other => return Err(r.schema(format!("no classification for dimension {other}"))),
        };
        out.extend(rep.records);
    }
    Ok(ClassificationReport { records: out })
}

/// `(π, χ_S, χ_X)` with `q = 1` and `residual_4k = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Survivor {
    pub pi: i64,
    pub chi_s: i64,
    pub chi_x: i64,
}

impl fmt::Display for Survivor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.pi, self.chi_s, self.chi_x)
    }
}

/// Enumerates `(π, χ_S)` in range, solves `q = 1` for `χ_X` (affine in
/// `χ_X`), and keeps integral `χ_X` within `chi_range` whose section
/// satisfies `residual_4k = 0`.
pub fn scan_exclusion(
    d: i64,
    pi_range: RangeInclusive<i64>,
    chi_range: RangeInclusive<i64>,
) -> Result<Vec<Survivor>, CatalogError> {
    if d < 1 {
        return Err(CatalogError::NonPositiveDegree);
    }
    if pi_range.is_empty() {
        return Err(CatalogError::EmptyRange("pi"));
    }
    if chi_range.is_empty() {
        return Err(CatalogError::EmptyRange("chi"));
    }
    let mut out = Vec::new();
    for pi in pi_range {
        for chi_s in chi_range.clone() {
            if residual_4k(&SectionInvariants { d, pi, chi: chi_s }) != int(0) {
                continue;
            }
            let cx = chi_x_for_quadruple_points(d, pi, chi_s, 1);
            if !is_integral(&cx) {
                continue;
            }
            let Ok(chi_x) = i64::try_from(cx.to_integer()) else {
                continue;
            };
            if !chi_range.contains(&chi_x) {
                continue;
            }
            let t = ThreefoldInvariants { d, pi, chi_s, chi_x };
            assert_eq!(quadruple_points(&t), int(1), "q = 1 re-check failed");
            out.push(Survivor { pi, chi_s, chi_x });
        }
    }
    Ok(out)
}

/// Formats a multidegree as `(1,a1,a2)`.
pub fn format_multidegree(m: &[Rational; 3]) -> String {
    format!("({})", m.iter().map(show).collect::<Vec<_>>().join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn by_name<'a>(r: &'a ClassificationReport, name: &str) -> &'a RecordReport {
        r.records.iter().find(|x| x.name == name).unwrap()
    }

    #[test]
    fn builtin_has_eight_records() {
        let recs = builtin_catalog();
        assert_eq!(recs.len(), 8);
        let count = |dim| recs.iter().filter(|r| r.dim == dim).count();
        assert_eq!((count(3), count(2), count(1)), (4, 3, 1));
        assert_eq!(recs.iter().filter(|r| r.tags.iter().any(|t| t == "non-example")).count(), 2);
    }

    #[test]
    fn builtin_counts_are_integral() {
        for r in builtin_catalog().iter().filter(|r| r.dim == 3) {
            let t = r.threefold().unwrap();
            assert!(t.check_integrality().is_ok(), "{}", r.name);
            for v in [
                quadruple_points(&t),
                foursecant_scroll_degree_a1(&t.section()),
                curve_foursecants_a2(t.d, t.pi),
            ] {
                assert!(is_integral(&v), "{}", r.name);
            }
        }
    }

    #[test]
    fn threefold_classification() {
        let recs: Vec<_> = builtin_catalog().into_iter().filter(|r| r.dim == 3).collect();
        let rep = classify_threefolds(&recs, 1).unwrap();
        assert_eq!(rep.passing(), vec!["palatini_scroll", "k3_scroll", "determinantal_threefold"]);
        let md = |name| format_multidegree(&by_name(&rep, name).computed.multidegree().unwrap());
        assert_eq!(md("palatini_scroll"), "(1,3,2)");
        assert_eq!(md("k3_scroll"), "(1,7,13)");
        assert_eq!(md("determinantal_threefold"), "(1,15,20)");
        let ci = by_name(&rep, "ci_2_3_threefold");
        assert_eq!(ci.computed.q, Some(int(0)));
        assert_eq!(ci.reasons(), vec!["quadruple_points", "residual"]);
    }

    #[test]
    fn surface_classification() {
        let recs: Vec<_> = builtin_catalog().into_iter().filter(|r| r.dim == 2).collect();
        let rep = classify_surfaces(&recs, 1).unwrap();
        assert_eq!(rep.passing(), vec!["veronese_surface", "bordiga_surface"]);
        let ci = by_name(&rep, "ci_2_2_surface");
        assert_eq!(ci.computed.triple_points, Some(int(0)));
        assert_eq!(ci.reasons(), vec!["triple_points"]);
    }

    #[test]
    fn scroll_surface_fails() {
        let mut r = builtin_catalog().into_iter().find(|r| r.name == "bordiga_surface").unwrap();
        r.scroll = true;
        let rep = classify_surfaces(&[r], 1).unwrap();
        assert_eq!(rep.records[0].reasons(), vec!["not_scroll", "triple_points"]);
    }

    #[test]
    fn classify_all_selects_first_order_entries() {
        let recs = builtin_catalog();
        let rep = classify(&recs, None, 1).unwrap();
        let expected: Vec<&str> = recs
            .iter()
            .filter(|r| r.tags.iter().any(|t| t == "first-order"))
            .map(|r| r.name.as_str())
            .collect();
        assert_eq!(rep.passing(), expected);
        assert_eq!(rep.records.len(), 8);
        assert_eq!(classify(&recs, Some(2), 1).unwrap().records.len(), 3);
    }

    #[test]
    fn multiplicity_affects_bound() {
        let mut r = builtin_catalog().into_iter().find(|r| r.name == "palatini_scroll").unwrap();
        r.d = 4;
        let rep = classify_threefolds(&[r.clone()], 1).unwrap();
        assert!(!rep.records[0].verdicts["bound"].pass);
        let rep = classify_threefolds(&[r], 2).unwrap();
        assert!(rep.records[0].verdicts["bound"].pass);
    }

    #[test]
    fn tsv_round_trip_and_errors() {
        let recs = builtin_catalog();
        assert_eq!(parse_catalog(&to_tsv(&recs)).unwrap(), recs);
        assert_eq!(to_tsv(&recs), builtin_tsv());
        assert!(parse_catalog(&(HEADER.join("\t") + "\n")).unwrap().is_empty());
        let bad_dim = format!("{}\nx\t5\t2\t7\t4\t1\t1\t\t0\t\n", HEADER.join("\t"));
        assert!(matches!(parse_catalog(&bad_dim), Err(CatalogError::Schema { .. })));
        let bad_int = format!("{}\nx\t5\t3\tseven\t4\t1\t1\t\t0\t\n", HEADER.join("\t"));
        assert_eq!(
            parse_catalog(&bad_int),
            Err(CatalogError::Parse {
                line: 2,
                column: 4,
                message: "d is not an integer: `seven`".into()
            })
        );
        let no_scroll = format!("{}\nx\t4\t2\t4\t0\t\t1\t9\t\t\n", HEADER.join("\t"));
        assert!(matches!(parse_catalog(&no_scroll), Err(CatalogError::Parse { column: 9, .. })));
        assert!(matches!(parse_catalog("name\tn\n"), Err(CatalogError::Parse { line: 1, .. })));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.tsv");
        save_catalog(&builtin_catalog(), &path).unwrap();
        assert_eq!(load_catalog(&path).unwrap(), builtin_catalog());
    }

    #[test]
    #[allow(clippy::reversed_empty_ranges)]
    fn scan_recovers_known_triples() {
        let s7 = scan_exclusion(7, 0..=10, -5..=5).unwrap();
        assert!(s7.contains(&Survivor { pi: 4, chi_s: 1, chi_x: 1 }));
        let s9 = scan_exclusion(9, 0..=20, -10..=10).unwrap();
        assert!(s9.contains(&Survivor { pi: 8, chi_s: 2, chi_x: 2 }));
        let s10 = scan_exclusion(10, 0..=20, -10..=10).unwrap();
        assert!(s10.contains(&Survivor { pi: 11, chi_s: 5, chi_x: 1 }));
        for (d, list) in [(7, &s7), (9, &s9), (10, &s10)] {
            for s in list.iter() {
                let t = ThreefoldInvariants { d, pi: s.pi, chi_s: s.chi_s, chi_x: s.chi_x };
                assert_eq!(quadruple_points(&t), int(1));
                assert_eq!(residual_4k(&t.section()), int(0));
            }
        }
        assert_eq!(scan_exclusion(7, 3..=2, 0..=1), Err(CatalogError::EmptyRange("pi")));
    }

    #[test]
    fn json_report_shape() {
        let rep = classify(&builtin_catalog(), Some(3), 1).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        let first = &v[0];
        assert_eq!(first["name"], "palatini_scroll");
        assert_eq!(first["pass"], true);
        assert_eq!(first["computed"]["q"]["num"], "1");
        assert_eq!(first["computed"]["q"]["den"], "1");
        assert_eq!(first["verdicts"]["quadruple_points"]["pass"], true);
    }
}
