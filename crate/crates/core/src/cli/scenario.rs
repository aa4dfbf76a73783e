//! Line-oriented scenario files: rings, morphisms, assertions and tasks.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::differentials::MorphismDecl;
use crate::error::{Error, Result};
use crate::groebner::{AffineRing, Budget, Ideal};
use crate::polyring::{parse_poly, Field, MonomialOrder, Poly, PolyRing};
use crate::verify::Assertions;

#[derive(Clone, Debug, PartialEq)]
pub struct RingSpec {
    pub name: String,
    pub ring: Arc<PolyRing>,
    pub gens: Vec<Poly>,
}

/// Extra named ideal, used by the `gb` task and subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealSpec {
    pub name: String,
    pub ring: String,
    pub gens: Vec<Poly>,
}

/// `map name : source -> target = { y_j = f_j }`, images listed in source-variable order.
#[derive(Clone, Debug, PartialEq)]
pub struct MapSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub images: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssertSpec {
    pub name: String,
    pub property: String,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BudgetSpec {
    pub degree: Option<u32>,
    pub seconds: Option<u64>,
}

impl BudgetSpec {
    /// A fresh budget; the time limit starts counting now.
    pub fn budget(&self) -> Budget {
        Budget::new(self.degree.unwrap_or(Budget::default().degree_cap), self.seconds)
    }

    /// Command-line values win over the scenario's own.
    pub fn overridden(&self, other: &BudgetSpec) -> BudgetSpec {
        BudgetSpec { degree: other.degree.or(self.degree), seconds: other.seconds.or(self.seconds) }
    }
}

/// Module arguments of `heights`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleRef {
    Omega(String),
    Tangent(String),
    RelativeOmega(String),
    Critical(String),
    TBar(String),
    Gamma(String),
}

impl fmt::Display for ModuleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleRef::Omega(n) | ModuleRef::RelativeOmega(n) => write!(f, "omega({n})"),
            ModuleRef::Tangent(n) => write!(f, "tangent({n})"),
            ModuleRef::Critical(n) => write!(f, "critical({n})"),
            ModuleRef::TBar(n) => write!(f, "tbar({n})"),
            ModuleRef::Gamma(n) => write!(f, "gamma({n})"),
        }
    }
}

/// Ring or morphism named by a task.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subject {
    Ring(String),
    Map(String),
}

impl Subject {
    pub fn name(&self) -> &str {
        match self {
            Subject::Ring(n) | Subject::Map(n) => n,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Task {
    Branch { map: String, i: usize },
    Critical { map: String, i: usize },
    Duality { map: String, imax: usize },
    Dci(Subject),
    Gamma(String),
    Heights(ModuleRef),
    PurityCritical(String),
    PurityBranch { map: String, imax: usize },
    Discriminant(String),
    Cutkosky(String),
    Defects(String),
    Composition(String),
    Smoothness(String),
    Torsion { ring: String, element: Poly },
    Gb(String),
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Task::Branch { map, i } => write!(f, "branch({map}, {i})"),
            Task::Critical { map, i } => write!(f, "critical({map}, {i})"),
            Task::Duality { map, imax } => write!(f, "duality({map}, {imax})"),
            Task::Dci(s) => write!(f, "dci({})", s.name()),
            Task::Gamma(m) => write!(f, "gamma({m})"),
            Task::Heights(r) => write!(f, "heights({r})"),
            Task::PurityCritical(m) => write!(f, "purity_critical({m})"),
            Task::PurityBranch { map, imax } => write!(f, "purity_branch({map}, {imax})"),
            Task::Discriminant(m) => write!(f, "discriminant({m})"),
            Task::Cutkosky(m) => write!(f, "cutkosky({m})"),
            Task::Defects(r) => write!(f, "defects({r})"),
            Task::Composition(m) => write!(f, "composition({m})"),
            Task::Smoothness(r) => write!(f, "smoothness({r})"),
            Task::Torsion { ring, element } => write!(f, "torsion({ring}, {element})"),
            Task::Gb(n) => write!(f, "gb({n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub field: Field,
    pub rings: Vec<RingSpec>,
    pub ideals: Vec<IdealSpec>,
    pub maps: Vec<MapSpec>,
    pub assertions: Vec<AssertSpec>,
    pub points: Vec<String>,
    pub budget: BudgetSpec,
    pub tasks: Vec<Task>,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            field: Field::Rational,
            rings: Vec::new(),
            ideals: Vec::new(),
            maps: Vec::new(),
            assertions: Vec::new(),
            points: Vec::new(),
            budget: BudgetSpec::default(),
            tasks: Vec::new(),
        }
    }
}

/// Rings and morphisms of a scenario, built and checked.
#[derive(Clone, Debug)]
pub struct Context {
    pub rings: HashMap<String, Arc<AffineRing>>,
    pub maps: HashMap<String, MorphismDecl>,
    pub ideals: HashMap<String, (Arc<AffineRing>, Ideal)>,
    pub assertions: Assertions,
}

impl Scenario {
    pub fn ring(&self, name: &str) -> Option<&RingSpec> {
        self.rings.iter().find(|r| r.name == name)
    }

    pub fn map(&self, name: &str) -> Option<&MapSpec> {
        self.maps.iter().find(|m| m.name == name)
    }

    /// Builds every ring and morphism; fails on ill-defined morphisms.
    pub fn context(&self, budget: &Budget) -> Result<Context> {
        let mut rings = HashMap::new();
        for r in &self.rings {
            rings.insert(r.name.clone(), AffineRing::new(&r.name, &r.ring, r.gens.clone()));
        }
        let mut maps = HashMap::new();
        for m in &self.maps {
            let decl = MorphismDecl::new(&m.name, &rings[&m.source], &rings[&m.target], m.images.clone(), budget)?;
            maps.insert(m.name.clone(), decl);
        }
        let mut ideals = HashMap::new();
        for i in &self.ideals {
            let base: &Arc<AffineRing> = &rings[&i.ring];
            ideals.insert(i.name.clone(), (base.clone(), base.ideal_with(&i.gens)));
        }
        let mut assertions = Assertions::default();
        for a in &self.assertions {
            assertions.insert(&a.name, &a.property, a.holds);
        }
        Ok(Context { rings, maps, ideals, assertions })
    }
}

fn format_order(order: MonomialOrder) -> Option<String> {
    match order {
        MonomialOrder::GrevLex => None,
        MonomialOrder::Lex => Some("lex".into()),
        MonomialOrder::Block(k) => Some(format!("block({k})")),
    }
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            Field::Rational => writeln!(f, "field Q")?,
            Field::Prime(p) => writeln!(f, "field Fp {p}")?,
        }
        for r in &self.rings {
            write!(f, "ring {} = [{}] / ({})", r.name, r.ring.vars.join(", "), join(&r.gens, "; "))?;
            match format_order(r.ring.order) {
                Some(o) => writeln!(f, " order {o}")?,
                None => writeln!(f)?,
            }
        }
        for i in &self.ideals {
            writeln!(f, "ideal {} in {} = ({})", i.name, i.ring, join(&i.gens, "; "))?;
        }
        for m in &self.maps {
            let vars = &self.ring(&m.source).expect("declared source").ring.vars;
            let body: Vec<String> = vars.iter().zip(&m.images).map(|(v, p)| format!("{v} = {p}")).collect();
            writeln!(f, "map {} : {} -> {} = {{ {} }}", m.name, m.source, m.target, body.join("; "))?;
        }
        for a in &self.assertions {
            let not = if a.holds { "" } else { "not " };
            writeln!(f, "assert {} {not}{}", a.name, a.property)?;
        }
        for p in &self.points {
            writeln!(f, "point {p} origin")?;
        }
        if self.budget != BudgetSpec::default() {
            write!(f, "budget")?;
            if let Some(d) = self.budget.degree {
                write!(f, " degree {d}")?;
            }
            if let Some(s) = self.budget.seconds {
                write!(f, " seconds {s}")?;
            }
            writeln!(f)?;
        }
        for t in &self.tasks {
            writeln!(f, "task {t}")?;
        }
        Ok(())
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Scenario { line, msg: msg.into() }
}

/// Splits on `sep` outside brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Contents of a bracketed group starting at `s[0]`, and the rest after it.
fn group(s: &str, open: char, close: char) -> Option<(&str, &str)> {
    let s = s.trim_start();
    if !s.starts_with(open) {
        return None;
    }
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        if c == open {
            depth += 1;
        } else if c == close {
            depth -= 1;
            if depth == 0 {
                return Some((&s[1..i], &s[i + 1..]));
            }
        }
    }
    None
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn ident(line: usize, s: &str, what: &str) -> Result<String> {
    let s = s.trim();
    if is_ident(s) {
        Ok(s.to_string())
    } else {
        Err(err(line, format!("expected {what} name, found `{s}`")))
    }
}

/// Generator list `g1; g2; ...`; empty allowed.
fn poly_list(line: usize, s: &str, ring: &Arc<PolyRing>) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for part in split_top(s, ';') {
        if part.trim().is_empty() {
            continue;
        }
        out.push(parse_poly(part.trim(), ring).map_err(|e| err(line, e.to_string()))?);
    }
    Ok(out)
}

fn parse_order(line: usize, s: &str) -> Result<MonomialOrder> {
    match s.trim() {
        "grevlex" => Ok(MonomialOrder::GrevLex),
        "lex" => Ok(MonomialOrder::Lex),
        o => {
            let k = o
                .strip_prefix("block(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|k| k.trim().parse().ok())
                .ok_or_else(|| err(line, format!("unknown monomial order `{o}`")))?;
            Ok(MonomialOrder::Block(k))
        }
    }
}

fn parse_number<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| err(line, format!("expected {what}, found `{}`", s.trim())))
}

/// Joins physical lines while brackets are open and drops comments.
fn logical_lines(src: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut buf = String::new();
    let mut start = 0;
    let mut depth = 0i32;
    for (k, raw) in src.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        if buf.is_empty() {
            start = k + 1;
        }
        for c in text.chars() {
            match c {
                '(' | '[' | '{' => depth += 1,
                ')' | ']' | '}' => depth -= 1,
                _ => {}
            }
        }
        buf.push(' ');
        buf.push_str(text);
        if depth <= 0 {
            if !buf.trim().is_empty() {
                out.push((start, buf.trim().to_string()));
            }
            buf.clear();
            depth = 0;
        }
    }
    if !buf.trim().is_empty() {
        out.push((start, buf.trim().to_string()));
    }
    out
}

struct Parser {
    s: Scenario,
    field_fixed: bool,
}

pub fn parse_scenario(src: &str) -> Result<Scenario> {
    let mut p = Parser { s: Scenario::default(), field_fixed: false };
    for (line, text) in logical_lines(src) {
        let (kw, rest) = text.split_once(char::is_whitespace).unwrap_or((text.as_str(), ""));
        let rest = rest.trim();
        match kw {
            "field" => p.field(line, rest)?,
            "ring" => p.ring(line, rest)?,
            "ideal" => p.ideal(line, rest)?,
            "map" => p.map(line, rest)?,
            "assert" => p.assertion(line, rest)?,
            "point" => p.point(line, rest)?,
            "budget" => p.budget(line, rest)?,
            "task" => p.task(line, rest)?,
            _ => return Err(err(line, format!("unknown statement `{kw}`"))),
        }
    }
    p.s.context(&p.s.budget.budget())?;
    Ok(p.s)
}

impl Parser {
    fn name_taken(&self, name: &str) -> bool {
        self.s.rings.iter().any(|r| r.name == name)
            || self.s.maps.iter().any(|m| m.name == name)
            || self.s.ideals.iter().any(|i| i.name == name)
    }

    fn fresh(&self, line: usize, name: &str) -> Result<()> {
        if self.name_taken(name) {
            Err(err(line, format!("`{name}` is already declared")))
        } else {
            Ok(())
        }
    }

    fn field(&mut self, line: usize, rest: &str) -> Result<()> {
        if self.field_fixed || !self.s.rings.is_empty() {
            return Err(err(line, "the field must be declared once, before any ring"));
        }
        let words: Vec<&str> = rest.split_whitespace().collect();
        self.s.field = match words.as_slice() {
            ["Q"] => Field::Rational,
            ["Fp", p] => Field::prime(parse_number(line, p, "a prime")?).map_err(|e| err(line, e.to_string()))?,
            _ => return Err(err(line, "expected `field Q` or `field Fp <prime>`")),
        };
        self.field_fixed = true;
        Ok(())
    }

    fn ring(&mut self, line: usize, rest: &str) -> Result<()> {
        let (name, body) = rest.split_once('=').ok_or_else(|| err(line, "expected `ring <Name> = [vars] / (gens)`"))?;
        let name = ident(line, name, "ring")?;
        self.fresh(line, &name)?;
        let (vars, after) = group(body, '[', ']').ok_or_else(|| err(line, "expected a bracketed variable list"))?;
        let vars: Vec<String> = split_top(vars, ',')
            .into_iter()
            .filter(|v| !v.trim().is_empty())
            .map(|v| ident(line, v, "variable"))
            .collect::<Result<_>>()?;
        let mut after = after.trim();
        let mut gens_src = "";
        if let Some(r) = after.strip_prefix('/') {
            let (g, a) = group(r, '(', ')').ok_or_else(|| err(line, "expected `/ (g1; ...; gk)`"))?;
            gens_src = g;
            after = a.trim();
        }
        let mut order = MonomialOrder::GrevLex;
        if let Some(o) = after.strip_prefix("order") {
            order = parse_order(line, o)?;
        } else if !after.is_empty() {
            return Err(err(line, format!("unexpected `{after}`")));
        }
        let ring = PolyRing::new(vars, self.s.field, order).map_err(|e| err(line, e.to_string()))?;
        let gens = poly_list(line, gens_src, &ring)?;
        self.s.rings.push(RingSpec { name, ring, gens });
        Ok(())
    }

    fn ideal(&mut self, line: usize, rest: &str) -> Result<()> {
        let (head, body) =
            rest.split_once('=').ok_or_else(|| err(line, "expected `ideal <Name> in <Ring> = (gens)`"))?;
        let words: Vec<&str> = head.split_whitespace().collect();
        let [name, "in", ring] = words.as_slice() else {
            return Err(err(line, "expected `ideal <Name> in <Ring> = (gens)`"));
        };
        let name = ident(line, name, "ideal")?;
        self.fresh(line, &name)?;
        let spec = self.s.ring(ring).ok_or_else(|| err(line, format!("unknown ring `{ring}`")))?;
        let (g, after) = group(body, '(', ')').ok_or_else(|| err(line, "expected `(g1; ...; gk)`"))?;
        if !after.trim().is_empty() {
            return Err(err(line, format!("unexpected `{}`", after.trim())));
        }
        let gens = poly_list(line, g, &spec.ring)?;
        self.s.ideals.push(IdealSpec { name, ring: ring.to_string(), gens });
        Ok(())
    }

    fn map(&mut self, line: usize, rest: &str) -> Result<()> {
        let usage = "expected `map <name> : <Source> -> <Target> = { y = f; ... }`";
        let parts = split_top(rest, '=');
        let (head, body) = match parts.as_slice() {
            [h, ..] if parts.len() >= 2 => (*h, &rest[h.len() + 1..]),
            _ => return Err(err(line, usage)),
        };
        let (name, arrow) = head.split_once(':').ok_or_else(|| err(line, usage))?;
        let (src, tgt) = arrow.split_once("->").ok_or_else(|| err(line, usage))?;
        let name = ident(line, name, "map")?;
        self.fresh(line, &name)?;
        let source = self.s.ring(src.trim()).ok_or_else(|| err(line, format!("unknown ring `{}`", src.trim())))?;
        let target = self.s.ring(tgt.trim()).ok_or_else(|| err(line, format!("unknown ring `{}`", tgt.trim())))?;
        let (entries, after) = group(body, '{', '}').ok_or_else(|| err(line, usage))?;
        if !after.trim().is_empty() {
            return Err(err(line, format!("unexpected `{}`", after.trim())));
        }
        let mut images: Vec<Option<Poly>> = vec![None; source.ring.nvars()];
        for e in split_top(entries, ';') {
            if e.trim().is_empty() {
                continue;
            }
            let (v, f) =
                e.split_once('=').ok_or_else(|| err(line, format!("expected `var = expr`, found `{}`", e.trim())))?;
            let v = v.trim();
            let k = source
                .ring
                .var_index(v)
                .ok_or_else(|| err(line, format!("`{v}` is not a variable of {}", source.name)))?;
            if images[k].is_some() {
                return Err(err(line, format!("image of `{v}` given twice")));
            }
            images[k] = Some(parse_poly(f.trim(), &target.ring).map_err(|e| err(line, e.to_string()))?);
        }
        let images = images
            .into_iter()
            .zip(&source.ring.vars)
            .map(|(p, v)| p.ok_or_else(|| err(line, format!("no image given for `{v}`"))))
            .collect::<Result<Vec<_>>>()?;
        let spec = MapSpec { name, source: source.name.clone(), target: target.name.clone(), images };
        let b = self.s.budget.budget();
        let rings: Vec<Arc<AffineRing>> =
            [source, target].iter().map(|r| AffineRing::new(&r.name, &r.ring, r.gens.clone())).collect();
        MorphismDecl::new(&spec.name, &rings[0], &rings[1], spec.images.clone(), &b)
            .map_err(|e| err(line, e.to_string()))?;
        self.s.maps.push(spec);
        Ok(())
    }

    fn assertion(&mut self, line: usize, rest: &str) -> Result<()> {
        let words: Vec<&str> = rest.split_whitespace().collect();
        let (name, holds, prop) = match words.as_slice() {
            [n, "not", p] => (*n, false, *p),
            [n, p] => (*n, true, *p),
            _ => return Err(err(line, "expected `assert <name> [not] domain|finite|normal|lci`")),
        };
        if !matches!(prop, "domain" | "finite" | "normal" | "lci") {
            return Err(err(line, format!("unknown property `{prop}`")));
        }
        if self.s.ring(name).is_none() && self.s.map(name).is_none() {
            return Err(err(line, format!("unknown ring or map `{name}`")));
        }
        self.s.assertions.push(AssertSpec { name: name.into(), property: prop.into(), holds });
        Ok(())
    }

    fn point(&mut self, line: usize, rest: &str) -> Result<()> {
        let words: Vec<&str> = rest.split_whitespace().collect();
        let [name, "origin"] = words.as_slice() else {
            return Err(err(line, "expected `point <Ring> origin`"));
        };
        let spec = self.s.ring(name).ok_or_else(|| err(line, format!("unknown ring `{name}`")))?;
        if !spec.gens.iter().all(|g| g.vanishes_at_origin()) {
            return Err(err(line, Error::PointNotOnVariety(name.to_string()).to_string()));
        }
        self.s.points.push(name.to_string());
        Ok(())
    }

    fn budget(&mut self, line: usize, rest: &str) -> Result<()> {
        let words: Vec<&str> = rest.split_whitespace().collect();
        if words.is_empty() || !words.len().is_multiple_of(2) {
            return Err(err(line, "expected `budget degree <n> seconds <n>`"));
        }
        for kv in words.chunks(2) {
            match kv[0] {
                "degree" => self.s.budget.degree = Some(parse_number(line, kv[1], "a degree")?),
                "seconds" => self.s.budget.seconds = Some(parse_number(line, kv[1], "a number of seconds")?),
                k => return Err(err(line, format!("unknown budget key `{k}`"))),
            }
        }
        Ok(())
    }

    fn lookup_map(&self, line: usize, name: Option<&str>) -> Result<String> {
        match name {
            Some(n) if self.s.map(n).is_some() => Ok(n.to_string()),
            Some(n) => Err(err(line, format!("unknown map `{n}`"))),
            None if self.s.maps.len() == 1 => Ok(self.s.maps[0].name.clone()),
            None => Err(err(line, "task needs a map name: the scenario does not declare exactly one map")),
        }
    }

    fn lookup_ring(&self, line: usize, name: &str) -> Result<String> {
        self.s.ring(name).map(|r| r.name.clone()).ok_or_else(|| err(line, format!("unknown ring `{name}`")))
    }

    /// Optional map name followed by an optional index.
    fn map_and_index(&self, line: usize, args: &[&str], default: usize) -> Result<(String, usize)> {
        let (name, nums) = match args.first() {
            Some(a) if is_ident(a) => (Some(*a), &args[1..]),
            _ => (None, args),
        };
        let map = self.lookup_map(line, name)?;
        let i = match nums {
            [] => default,
            [n] => parse_number(line, n, "an index")?,
            _ => return Err(err(line, "too many arguments")),
        };
        Ok((map, i))
    }

    fn single_map(&self, line: usize, args: &[&str]) -> Result<String> {
        match args {
            [] => self.lookup_map(line, None),
            [n] => self.lookup_map(line, Some(n)),
            _ => Err(err(line, "expected one map argument")),
        }
    }

    fn single_ring(&self, line: usize, args: &[&str]) -> Result<String> {
        match args {
            [n] => self.lookup_ring(line, n),
            _ => Err(err(line, "expected one ring argument")),
        }
    }

    fn module_ref(&self, line: usize, s: &str) -> Result<ModuleRef> {
        let (kind, inner) =
            s.split_once('(').ok_or_else(|| err(line, format!("expected a module such as omega(X), found `{s}`")))?;
        let arg = inner.strip_suffix(')').ok_or_else(|| err(line, "unbalanced parentheses"))?.trim();
        let is_map = self.s.map(arg).is_some();
        match (kind.trim(), is_map) {
            ("omega", true) => Ok(ModuleRef::RelativeOmega(arg.into())),
            ("omega", false) => Ok(ModuleRef::Omega(self.lookup_ring(line, arg)?)),
            ("tangent", _) => Ok(ModuleRef::Tangent(self.lookup_ring(line, arg)?)),
            ("critical", _) => Ok(ModuleRef::Critical(self.lookup_map(line, Some(arg))?)),
            ("tbar", _) => Ok(ModuleRef::TBar(self.lookup_map(line, Some(arg))?)),
            ("gamma", _) => Ok(ModuleRef::Gamma(self.lookup_map(line, Some(arg))?)),
            (k, _) => Err(err(line, format!("unknown module `{k}`"))),
        }
    }

    fn task(&mut self, line: usize, rest: &str) -> Result<()> {
        let (name, args_src) = match rest.split_once('(') {
            Some((n, a)) => {
                let a = a.trim_end().strip_suffix(')').ok_or_else(|| err(line, "unbalanced parentheses"))?;
                (n.trim(), a)
            }
            None => (rest.trim(), ""),
        };
        let args: Vec<&str> = split_top(args_src, ',').into_iter().map(str::trim).filter(|a| !a.is_empty()).collect();
        let task = match name {
            "branch" => {
                let (map, i) = self.map_and_index(line, &args, 0)?;
                Task::Branch { map, i }
            }
            "critical" => {
                let (map, i) = self.map_and_index(line, &args, 0)?;
                Task::Critical { map, i }
            }
            "duality" => {
                let (map, imax) = self.map_and_index(line, &args, 2)?;
                Task::Duality { map, imax }
            }
            "purity_branch" => {
                let (map, imax) = self.map_and_index(line, &args, 0)?;
                Task::PurityBranch { map, imax }
            }
            "dci" => match args.as_slice() {
                [n] if self.s.map(n).is_some() => Task::Dci(Subject::Map(n.to_string())),
                [n] => Task::Dci(Subject::Ring(self.lookup_ring(line, n)?)),
                _ => return Err(err(line, "expected `dci(<ring|map>)`")),
            },
            "gamma" => Task::Gamma(self.single_map(line, &args)?),
            "purity_critical" => Task::PurityCritical(self.single_map(line, &args)?),
            "discriminant" => Task::Discriminant(self.single_map(line, &args)?),
            "cutkosky" => Task::Cutkosky(self.single_map(line, &args)?),
            "composition" => Task::Composition(self.single_map(line, &args)?),
            "defects" => Task::Defects(self.single_ring(line, &args)?),
            "smoothness" => Task::Smoothness(self.single_ring(line, &args)?),
            "heights" => match args.as_slice() {
                [m] => Task::Heights(self.module_ref(line, m)?),
                _ => return Err(err(line, "expected `heights(<module>)`")),
            },
            "torsion" => match args.as_slice() {
                [r, f] => {
                    let ring = self.lookup_ring(line, r)?;
                    let spec = self.s.ring(&ring).expect("looked up");
                    let element = parse_poly(f, &spec.ring).map_err(|e| err(line, e.to_string()))?;
                    if element.is_zero() {
                        return Err(err(line, "torsion element must be nonzero"));
                    }
                    Task::Torsion { ring, element }
                }
                _ => return Err(err(line, "expected `torsion(<ring>, <element>)`")),
            },
            "gb" => match args.as_slice() {
                [n] if self.s.ideals.iter().any(|i| i.name == *n) => Task::Gb(n.to_string()),
                [n] => Task::Gb(self.lookup_ring(line, n)?),
                _ => return Err(err(line, "expected `gb(<ideal|ring>)`")),
            },
            t => return Err(err(line, format!("unknown task `{t}`"))),
        };
        self.s.tasks.push(task);
        Ok(())
    }
}
