//! Reports behind the command line tool. Each report renders as plain text
//! through `Display` and serializes to JSON with the same content.

use std::fmt;

use serde::Serialize;

use crate::action::GammaStructure;
use crate::corpus::builtin;
use crate::elemset::ElemSet;
use crate::format::print;
use crate::ideals::{all_order_ideals, ideal_sum, is_simple, Ideal};
use crate::iso::canonical_form;
use crate::monoid::{MinimalityMode, Monoid};
use crate::quotient::quotient;
use crate::series::{
    all_composition_series, chain_condition_report, classify_series, classify_simple, one_composition_series,
    schreier_refinement, series_equivalent, ChainConditionReport, Series,
};
use crate::{Elem, Error, Limits, Result};

fn set_str(m: &Monoid, s: ElemSet) -> String {
    let names: Vec<&str> = s.iter().map(|a| m.name(a)).collect();
    format!("{{{}}}", names.join(","))
}

fn set_names(m: &Monoid, s: ElemSet) -> Vec<String> {
    s.iter().map(|a| m.name(a).to_string()).collect()
}

fn tuple(m: &Monoid, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&a| m.name(a).to_string()).collect()
}

/// Splits on commas and whitespace outside brackets, so names such as
/// `(0,1)` or `[y]` survive.
fn split_names(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0usize, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            c if c.is_whitespace() && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.retain(|t| !t.is_empty());
    out
}

/// A set of elements written as names or indices separated by commas or
/// spaces.
pub fn parse_elements(m: &Monoid, s: &str) -> Result<ElemSet> {
    split_names(s)
        .into_iter()
        .map(|t| {
            m.index_of(t)
                .or_else(|| t.parse().ok().filter(|&i: &usize| i < m.size()))
                .ok_or_else(|| Error::BadParams(format!("unknown element {t:?}")))
        })
        .collect()
}

/// Terms separated by `;`, each a set as in [`parse_elements`].
pub fn parse_series(gs: &GammaStructure, s: &str) -> Result<Series> {
    let chain = s
        .split(';')
        .map(|t| parse_elements(gs.monoid(), t))
        .collect::<Result<Vec<_>>>()?;
    Series::new(gs, chain)
}

fn group_str(gs: &GammaStructure) -> String {
    if gs.group().is_trivial() {
        "Γ trivial".into()
    } else {
        format!("Γ of order {}", gs.group().order())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateReport {
    pub valid: bool,
    pub size: usize,
    pub group_order: usize,
    pub abelian: bool,
    #[serde(skip)]
    summary: String,
}

pub fn validate(gs: &GammaStructure) -> ValidateReport {
    ValidateReport {
        valid: true,
        size: gs.size(),
        group_order: gs.group().order(),
        abelian: gs.group().is_abelian(),
        summary: group_str(gs),
    }
}

impl fmt::Display for ValidateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "valid Γ-monoid, n={}, {}", self.size, self.summary)?;
        if !self.abelian {
            write!(f, " (not abelian)")?;
        }
        writeln!(f)
    }
}

/// A verdict with the elements witnessing a failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Vec<String>>,
}

impl Verdict {
    fn from_witness(m: &Monoid, w: Option<&[Elem]>) -> Self {
        Verdict {
            holds: w.is_none(),
            witness: w.map(|w| tuple(m, w)),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.holds)?;
        if let Some(w) = &self.witness {
            write!(f, " ({})", w.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropsReport {
    pub conical: Verdict,
    pub cancellative: Verdict,
    pub refinement: Verdict,
    pub minimal_literal: Vec<String>,
    pub minimal_nonzero: Vec<String>,
}

pub fn props(gs: &GammaStructure) -> PropsReport {
    let m = gs.monoid();
    PropsReport {
        conical: Verdict::from_witness(m, m.conical_violation().map(|(a, b)| [a, b]).as_ref().map(|w| &w[..])),
        cancellative: Verdict::from_witness(
            m,
            m.cancellative_violation().map(|(a, b, c)| [a, b, c]).as_ref().map(|w| &w[..]),
        ),
        refinement: Verdict::from_witness(m, m.refinement_violation().as_ref().map(|w| &w[..])),
        minimal_literal: set_names(m, m.minimal_elements(MinimalityMode::Literal)),
        minimal_nonzero: set_names(m, m.minimal_elements(MinimalityMode::Nonzero)),
    }
}

impl fmt::Display for PropsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "conical: {}", self.conical)?;
        writeln!(f, "cancellative: {}", self.cancellative)?;
        writeln!(f, "refinement: {}", self.refinement)?;
        writeln!(f, "minimal (literal): {}", self.minimal_literal.join(" "))?;
        writeln!(f, "minimal (nonzero): {}", self.minimal_nonzero.join(" "))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealsReport {
    pub ideals: Vec<Vec<String>>,
    pub covers: Vec<(usize, usize)>,
    pub atoms: Vec<usize>,
    pub height: usize,
    pub simple: bool,
}

pub fn ideals(gs: &GammaStructure) -> IdealsReport {
    let m = gs.monoid();
    let lattice = all_order_ideals(gs);
    IdealsReport {
        ideals: lattice.ideals().iter().map(|i| set_names(m, i.elements())).collect(),
        covers: lattice.covers().to_vec(),
        atoms: lattice.upper_covers(0).collect(),
        height: lattice.height(),
        simple: lattice.len() <= 2,
    }
}

impl fmt::Display for IdealsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ideals: {}", self.ideals.len())?;
        for (k, i) in self.ideals.iter().enumerate() {
            writeln!(f, "  I{k} {{{}}}", i.join(","))?;
        }
        let covers: Vec<String> = self.covers.iter().map(|(a, b)| format!("I{a}<I{b}")).collect();
        writeln!(f, "covers: {}", covers.join(" "))?;
        let atoms: Vec<String> = self.atoms.iter().map(|a| format!("I{a}")).collect();
        writeln!(f, "atoms: {}", atoms.join(" "))?;
        writeln!(f, "height: {}", self.height)?;
        writeln!(f, "simple: {}", self.simple)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientReport {
    pub ideal: Vec<String>,
    /// Each class by its name in the quotient and its members.
    pub classes: Vec<(String, Vec<String>)>,
    /// Class name of each element, in element order.
    pub projection: Vec<(String, String)>,
    /// The quotient as an instance file.
    pub instance: String,
}

pub fn quotient_report(gs: &GammaStructure, ideal: &str) -> Result<QuotientReport> {
    let m = gs.monoid();
    let i = Ideal::verify(gs, parse_elements(m, ideal)?)?;
    let q = quotient(gs, i)?;
    let qm = q.quotient.monoid();
    Ok(QuotientReport {
        ideal: set_names(m, i.elements()),
        classes: q
            .classes
            .blocks()
            .iter()
            .enumerate()
            .map(|(c, b)| (qm.name(c).to_string(), set_names(m, *b)))
            .collect(),
        projection: (0..gs.size())
            .map(|a| (m.name(a).to_string(), qm.name(q.classes.class_of(a)).to_string()))
            .collect(),
        instance: print(&q.quotient),
    })
}

impl fmt::Display for QuotientReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ideal: {{{}}}", self.ideal.join(","))?;
        writeln!(f, "classes: {}", self.classes.len())?;
        for (name, members) in &self.classes {
            writeln!(f, "  {name} = {{{}}}", members.join(","))?;
        }
        let proj: Vec<String> = self.projection.iter().map(|(a, c)| format!("{a}->{c}")).collect();
        writeln!(f, "projection: {}", proj.join(" "))?;
        writeln!(f, "quotient:")?;
        write!(f, "{}", self.instance)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorInfo {
    pub size: usize,
    /// Canonical key, absent when the factor is too large for one.
    pub key: Option<String>,
    pub tag: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesInfo {
    pub terms: Vec<Vec<String>>,
    pub factors: Vec<FactorInfo>,
    pub kind: String,
    /// Whether this series is equivalent to the first one.
    pub equivalent_to_first: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport {
    pub series: Vec<SeriesInfo>,
    pub all_equivalent: bool,
    pub chosen: usize,
    pub chain_conditions: ChainConditionReport,
}

fn factor_infos(gs: &GammaStructure, s: &Series, limits: &Limits) -> Result<Vec<FactorInfo>> {
    s.factors(gs)?
        .iter()
        .map(|f| {
            let key = match canonical_form(f, limits) {
                Ok(k) => Some(k.to_string()),
                Err(Error::SizeLimit { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(FactorInfo {
                size: f.size(),
                key,
                tag: classify_simple(f).to_string(),
            })
        })
        .collect()
}

pub fn series_report(gs: &GammaStructure, limits: &Limits) -> Result<SeriesReport> {
    let m = gs.monoid();
    let all = all_composition_series(gs)?;
    let chosen_series = one_composition_series(gs);
    let chosen = all.iter().position(|s| *s == chosen_series).expect("maximal chain");
    let mut series = Vec::new();
    for s in &all {
        series.push(SeriesInfo {
            terms: s.sets().iter().map(|t| set_names(m, *t)).collect(),
            factors: factor_infos(gs, s, limits)?,
            kind: classify_series(gs, s)?.to_string(),
            equivalent_to_first: series_equivalent(gs, &all[0], s, limits)?.equivalent,
        });
    }
    Ok(SeriesReport {
        all_equivalent: series.iter().all(|s| s.equivalent_to_first),
        series,
        chosen,
        chain_conditions: chain_condition_report(gs)?,
    })
}

fn factor_str(f: &FactorInfo) -> String {
    format!("{} ({}, {})", f.key.as_deref().unwrap_or("-"), f.size, f.tag)
}

impl fmt::Display for SeriesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "composition series: {}", self.series.len())?;
        for (k, s) in self.series.iter().enumerate() {
            let terms: Vec<String> = s.terms.iter().map(|t| format!("{{{}}}", t.join(","))).collect();
            writeln!(f, "  S{k}: {}", terms.join(" < "))?;
            for factor in &s.factors {
                writeln!(f, "    factor {}", factor_str(factor))?;
            }
            writeln!(f, "    type: {}", s.kind)?;
        }
        writeln!(f, "all equivalent: {}", self.all_equivalent)?;
        writeln!(f, "chosen series: S{}", self.chosen)?;
        let c = &self.chain_conditions;
        writeln!(f, "height: {}", c.height)?;
        writeln!(f, "noetherian: {}", c.noetherian)?;
        writeln!(f, "artinian: {}", c.artinian)?;
        writeln!(
            f,
            "composition lengths: {}..{}",
            c.shortest_composition, c.longest_composition
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairInfo {
    pub first: (Vec<String>, Vec<String>),
    pub second: (Vec<String>, Vec<String>),
    /// Image of each element of the first factor, by class name.
    pub isomorphism: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct JhReport {
    pub first: Vec<Vec<String>>,
    pub second: Vec<Vec<String>>,
    pub pairs: Vec<PairInfo>,
    pub collapsed: usize,
    pub equivalent: bool,
}

pub fn jh(gs: &GammaStructure, s1: &str, s2: &str, limits: &Limits) -> Result<JhReport> {
    let m = gs.monoid();
    let s1 = parse_series(gs, s1)?;
    let s2 = parse_series(gs, s2)?;
    let r = schreier_refinement(gs, &s1, &s2, limits).map_err(|e| match e {
        Error::NotRefinementMonoid(q) => Error::HypothesisViolated(format!(
            "not a refinement monoid, ({}) cannot be refined",
            q.iter().map(|&a| m.name(a)).collect::<Vec<_>>().join(",")
        )),
        e => e,
    })?;
    let mut pairs = Vec::new();
    for p in &r.pairs {
        let iso = match &p.isomorphism {
            None => None,
            Some(map) => {
                let lo = crate::ideals::Ideal::verify(gs, p.second.0)?;
                let hi = crate::ideals::Ideal::verify(gs, p.second.1)?;
                let target = crate::quotient::quotient_of_ideals(gs, hi, lo)?.quotient;
                Some(map.iter().map(|&x| target.monoid().name(x).to_string()).collect())
            }
        };
        pairs.push(PairInfo {
            first: (set_names(m, p.first.0), set_names(m, p.first.1)),
            second: (set_names(m, p.second.0), set_names(m, p.second.1)),
            isomorphism: iso,
        });
    }
    Ok(JhReport {
        first: r.first.collapsed().sets().iter().map(|t| set_names(m, *t)).collect(),
        second: r.second.collapsed().sets().iter().map(|t| set_names(m, *t)).collect(),
        pairs,
        collapsed: r.collapsed,
        equivalent: r.holds(),
    })
}

fn chain_str(chain: &[Vec<String>]) -> String {
    let terms: Vec<String> = chain.iter().map(|t| format!("{{{}}}", t.join(","))).collect();
    terms.join(" < ")
}

impl fmt::Display for JhReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "first refinement: {}", chain_str(&self.first))?;
        writeln!(f, "second refinement: {}", chain_str(&self.second))?;
        writeln!(f, "paired factors: {}", self.pairs.len())?;
        for p in &self.pairs {
            write!(
                f,
                "  {}/{} ~ {}/{}",
                set_str_v(&p.first.1),
                set_str_v(&p.first.0),
                set_str_v(&p.second.1),
                set_str_v(&p.second.0)
            )?;
            match &p.isomorphism {
                Some(map) => writeln!(f, " via [{}]", map.join(" "))?,
                None => writeln!(f, " NOT ISOMORPHIC")?,
            }
        }
        writeln!(f, "collapsed pairs: {}", self.collapsed)?;
        writeln!(f, "equivalent: {}", self.equivalent)
    }
}

fn set_str_v(v: &[String]) -> String {
    format!("{{{}}}", v.join(","))
}

/// Named replays of worked examples.
pub const DEMOS: &[&str] = &["paper-counterexample", "paper-shift"];

pub fn demo(name: &str, limits: &Limits) -> Result<String> {
    match name {
        "paper-counterexample" => Ok(demo_counterexample()),
        "paper-shift" => demo_shift(limits),
        _ => Err(Error::BadParams(format!(
            "unknown demo {name:?}; known: {}",
            DEMOS.join(", ")
        ))),
    }
}

fn demo_counterexample() -> String {
    let gs = builtin("paper-T7").expect("builtin");
    let m = gs.monoid();
    let lattice = all_order_ideals(&gs);
    let a = lattice.ideals()[1];
    let b = lattice.ideals()[2];
    let (sum, check) = ideal_sum(&gs, a, b);
    let mut out = String::new();
    out.push_str("T = paper-T7, n=7, Γ trivial\n");
    out.push_str(&format!("A = {}\n", set_str(m, a.elements())));
    out.push_str(&format!("B = {}\n", set_str(m, b.elements())));
    out.push_str(&format!("A+B = {}\n", set_str(m, sum)));
    out.push_str(&format!("A+B is a Γ-order-ideal: {}\n", check.is_ideal()));
    if let Some(v) = &check.structural {
        out.push_str(&format!("violation: {}\n", v.describe(m)));
    }
    if let Some(v) = &check.biconditional {
        out.push_str(&format!("biconditional violation: {}\n", v.describe(m)));
    }
    let w = m.refinement_violation();
    out.push_str(&format!(
        "refinement: {}\n",
        Verdict::from_witness(m, w.as_ref().map(|w| &w[..]))
    ));
    out
}

fn demo_shift(limits: &Limits) -> Result<String> {
    let mut out = String::new();
    for name in ["shifted-power(1,4)", "shifted-power(1,4,8)"] {
        let gs = builtin(name)?;
        let m = gs.monoid();
        let lattice = all_order_ideals(&gs);
        out.push_str(&format!("{name}: n={}, {}\n", gs.size(), group_str(&gs)));
        out.push_str(&format!("  ideals: {}, height {}\n", lattice.len(), lattice.height()));
        let s = one_composition_series(&gs);
        let terms: Vec<String> = s.sets().iter().map(|t| set_str(m, *t)).collect();
        out.push_str(&format!("  series: {}\n", terms.join(" < ")));
        for factor in factor_infos(&gs, &s, limits)? {
            out.push_str(&format!("    factor {}\n", factor_str(&factor)));
        }
        out.push_str(&format!("  type: {}\n", classify_series(&gs, &s)?));
        out.push_str(&format!("  simple: {}\n", is_simple(&gs)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t7_reports() {
        let gs = builtin("paper-T7").unwrap();
        let p = props(&gs).to_string();
        assert!(p.contains("refinement: false (1,1,x,x)\n"), "{p}");
        assert!(p.contains("conical: true\n"));
        let i = ideals(&gs).to_string();
        assert!(i.starts_with("ideals: 4\n  I0 {0}\n  I1 {0,1,x}\n  I2 {0,y,z}\n  I3 {0,1,x,y,z,s,b}\n"), "{i}");
        assert_eq!(validate(&gs).to_string(), "valid Γ-monoid, n=7, Γ trivial\n");
        let q = quotient_report(&gs, "0,1,x").unwrap();
        assert_eq!(q.classes.len(), 3);
        assert!(quotient_report(&gs, "0,1").is_err());
        let s = series_report(&gs, &Limits::default()).unwrap();
        assert_eq!(s.series.len(), 2);
        assert!(s.all_equivalent);
    }

    #[test]
    fn counterexample_demo() {
        let d = demo("paper-counterexample", &Limits::default()).unwrap();
        assert!(d.contains("A+B = {0,1,x,y,z,s}\n"), "{d}");
        assert!(d.contains("violation: b+b=s is inside but b is not\n"), "{d}");
        assert!(d.contains("refinement: false (1,1,x,x)\n"));
        assert!(demo("nope", &Limits::default()).is_err());
    }

    #[test]
    fn element_lists() {
        let gs = builtin("direct-sum(truncated-naturals(1), truncated-naturals(1))").unwrap();
        let m = gs.monoid();
        assert_eq!(parse_elements(m, "0,(0,1)").unwrap().to_vec(), vec![0, 1]);
        assert_eq!(parse_elements(m, "0 3").unwrap().to_vec(), vec![0, 3]);
        assert!(parse_elements(m, "0,q").is_err());
        let r = jh(&gs, "0; 0,(0,1); 0,1,2,3", "0; 0,(1,0); 0,1,2,3", &Limits::default()).unwrap();
        assert!(r.equivalent);
        assert_eq!(r.pairs.len(), 2);
    }
}
