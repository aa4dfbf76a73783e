use std::sync::Arc;

use super::checks::{
    check_dci, defects, domain_hypothesis, is_generically_smooth, is_smooth, lci_hypothesis, max_generators,
    normal_hypothesis, serre_s2_sufficient, DciMode, Tri,
};
use super::report::{Assertions, HypStatus, Hypothesis, Outcome, Quantity, VerificationReport};
use crate::differentials::{
    critical_module, image_tangent, imperfection, kaehler, relative_dimension, relative_kaehler, MorphismDecl,
};
use crate::error::Result;
use crate::groebner::{AffineRing, Budget, Ideal};
use crate::loci::{branch_scheme, critical_scheme, decompose, smoothness_locus, LocusReport};
use crate::polyring::Poly;
use crate::resolve::{betti_at_origin, fitting_ideal, generic_rank, BettiData, PresentedModule};

const MAX_FILTRATION_INDEX: usize = 3;

/// Runs `f`, turning budget exhaustion and undecidable steps into an indeterminate report.
fn guarded(theorem: &str, subject: &str, f: impl FnOnce() -> Result<VerificationReport>) -> Result<VerificationReport> {
    match f() {
        Err(e) if e.is_indeterminate() => Ok(VerificationReport::indeterminate(theorem, subject, &e)),
        r => r,
    }
}

fn hyp(name: &str, r: Result<bool>) -> Result<Hypothesis> {
    Hypothesis::from_check(name, r)
}

fn dci_hyp(name: &str, m: &PresentedModule, budget: &Budget) -> Result<Hypothesis> {
    let r = check_dci(m, DciMode::Global, budget)?;
    let status = match r.answer {
        Tri::Yes => HypStatus::CheckedTrue,
        Tri::No => HypStatus::CheckedFalse,
        Tri::Indeterminate => HypStatus::Indeterminate,
    };
    Ok(Hypothesis::new(name, status).with_detail(r.witness))
}

fn morphism_hyps(m: &MorphismDecl, asserted: &Assertions, budget: &Budget) -> Result<Vec<Hypothesis>> {
    Ok(vec![
        domain_hypothesis(&m.target, asserted, budget)?,
        domain_hypothesis(&m.source, asserted, budget)?,
        hyp(&format!("{} generically smooth", m.name), is_generically_smooth(m, budget))?,
    ])
}

/// `codim⁺` of a locus against an upper bound.
fn codim_against(rep: &LocusReport, bound: i64) -> (Quantity, Outcome) {
    if rep.empty {
        return (Quantity::Text("empty".into()), Outcome::Holds);
    }
    if let Some(c) = rep.codim_plus() {
        return (Quantity::Int(c), Outcome::from_bool(c <= bound));
    }
    let lo = rep.codim.codim_lower.unwrap_or(0);
    let hi = rep.codim.codim_upper.unwrap_or(lo);
    let outcome = if hi <= bound {
        Outcome::Holds
    } else if lo > bound {
        Outcome::Fails
    } else {
        Outcome::Unknown
    };
    (Quantity::Text(format!("[{lo}, {hi}] uncertified")), outcome)
}

fn ideal_q(i: &Ideal, budget: &Budget) -> Result<Quantity> {
    Ok(Quantity::Ideal(i.gb(budget)?.canonical_strings()))
}

/// Vanishing of the imperfection module under the d.c.i. or l.c.i. hypotheses.
pub fn check_gamma_zero(m: &MorphismDecl, asserted: &Assertions, budget: &Budget) -> Result<VerificationReport> {
    const T: &str = "gamma-vanishing";
    guarded(T, &m.name, || {
        let hyps = vec![hyp(&format!("{} generically smooth", m.name), is_generically_smooth(m, budget))?];
        let mut r = VerificationReport::new(T, &m.name, hyps);
        let lci = asserted.get(&m.name, "lci") == Some(true);
        let gate = if lci {
            Hypothesis::new(&format!("{} l.c.i.", m.name), HypStatus::Asserted)
        } else {
            let x_dci = dci_hyp("", &kaehler(&m.target, budget)?, budget)?.status;
            let y_smooth = hyp("", is_smooth(&m.source, budget))?.status;
            let status = if x_dci.is_false() || y_smooth.is_false() {
                HypStatus::CheckedFalse
            } else if x_dci == HypStatus::CheckedTrue && y_smooth == HypStatus::CheckedTrue {
                HypStatus::CheckedTrue
            } else {
                HypStatus::Indeterminate
            };
            Hypothesis::new(&format!("{}/k d.c.i. and {}/k smooth", m.target.name, m.source.name), status)
                .with_detail(format!("{}/k d.c.i.: {x_dci}; {}/k smooth: {y_smooth}", m.target.name, m.source.name))
        };
        let gamma = imperfection(m, budget)?;
        let zero = gamma.is_zero(budget)?;
        let lhs = match &gamma.embedding {
            Some(e) if !zero => Quantity::Text(e.to_string()),
            _ => Quantity::Int(0),
        };
        r.push("Gamma = 0", vec![gate], lhs, "=", Quantity::Int(0), "global", Outcome::from_bool(zero), None);
        Ok(r)
    })
}

/// `F_i(C) = F_{d+i}(Ω_{X/Y})` for smooth `X` and `Y`.
pub fn check_duality(
    m: &MorphismDecl,
    max_i: usize,
    asserted: &Assertions,
    budget: &Budget,
) -> Result<VerificationReport> {
    const T: &str = "critical-branch-duality";
    guarded(T, &m.name, || {
        let mut hyps = morphism_hyps(m, asserted, budget)?;
        hyps.push(hyp(&format!("{}/k smooth", m.target.name), is_smooth(&m.target, budget))?);
        hyps.push(hyp(&format!("{}/k smooth", m.source.name), is_smooth(&m.source, budget))?);
        let mut r = VerificationReport::new(T, &m.name, hyps);
        let omega = relative_kaehler(m, budget)?;
        let d = relative_dimension(m, budget)?;
        let c = critical_module(m, budget)?;
        for i in 0..=max_i {
            let fc = fitting_ideal(&c, i, budget)?;
            let fo = fitting_ideal(&omega, d + i, budget)?;
            let eq = fc.same_as(&fo, budget)?;
            r.push(
                &format!("F_{i}(C) = F_{}(Omega_X/Y)", d + i),
                vec![],
                ideal_q(&fc, budget)?,
                "=",
                ideal_q(&fo, budget)?,
                "global",
                Outcome::from_bool(eq),
                None,
            );
        }
        Ok(r)
    })
}

/// Local height of `f` at the origin: `(certified height, upper bound, lower bound)`.
fn local_height(base: &AffineRing, f: &Ideal, budget: &Budget) -> Result<(Option<i64>, Option<i64>, i64)> {
    let lower = base.codim(f, budget)?.unwrap_or(0);
    let dec = decompose(&base.ideal, f, budget)?;
    let through: Vec<_> =
        dec.components.iter().filter(|c| c.ideal.gens().iter().all(Poly::vanishes_at_origin)).collect();
    let best_prime = through.iter().filter(|c| c.prime).map(|c| c.codim).min();
    if dec.certified {
        return Ok((best_prime, best_prime, lower));
    }
    Ok((None, best_prime, lower))
}

fn regular_at_origin(base: &Arc<AffineRing>, budget: &Budget) -> Result<bool> {
    if base.is_polynomial() {
        return Ok(true);
    }
    let dim = base.dim(budget)?;
    let sing = smoothness_locus(base, dim.max(0) as usize, budget)?;
    Ok(!sing.ideal.gens().iter().all(Poly::vanishes_at_origin))
}

/// Eagon–Northcott type bounds on the heights of Fitting ideals at the origin.
pub fn check_height_bounds(mname: &str, m: &PresentedModule, budget: &Budget) -> Result<VerificationReport> {
    const T: &str = "fitting-height-bounds";
    guarded(T, mname, || {
        let base = &m.base;
        let on = base.contains_origin();
        let mut r =
            VerificationReport::new(T, mname, vec![Hypothesis::new("origin on the variety", HypStatus::checked(on))]);
        if !on {
            return Ok(r);
        }
        let betti = betti_at_origin(m, budget)?;
        let (b0, b1) = (betti.beta(0) as i64, betti.beta(1) as i64);
        let regular = hyp("ambient regular at the origin", regular_at_origin(base, budget))?;
        for i in 0..b0 {
            let f = fitting_ideal(m, i as usize, budget)?;
            if base.ideal.contains_ideal(&f, budget)? {
                continue;
            }
            let (exact, upper, lower) = local_height(base, &f, budget)?;
            let lhs = match exact {
                Some(h) => Quantity::Int(h),
                None => Quantity::Text(format!("ht in [{lower}, {}]", upper.map_or("?".into(), |u| u.to_string()))),
            };
            let against = |bound: i64| match (exact, upper) {
                (Some(h), _) => Outcome::from_bool(h <= bound),
                (None, Some(u)) if u <= bound => Outcome::Holds,
                _ if lower > bound => Outcome::Fails,
                _ => Outcome::Unknown,
            };
            let en = (i + 1) * (i + 1 + b1 - b0);
            let slack = exact.map(|h| format!("slack {}", en - h));
            r.push(
                &format!("ht F_{i} <= (i+1)(i+1+b1-b0)"),
                vec![],
                lhs.clone(),
                "<=",
                Quantity::Int(en),
                "at-origin",
                against(en),
                slack,
            );
            match betti.euler() {
                Some(chi) => {
                    let reg = (i + 1) * (i + 1 - chi) + b0 - i - 1;
                    let slack = exact.map(|h| format!("slack {}", reg - h));
                    r.push(
                        &format!("ht F_{i} <= (i+1)(i+1-chi)+b0-i-1"),
                        vec![regular.clone()],
                        lhs,
                        "<=",
                        Quantity::Int(reg),
                        "at-origin",
                        against(reg),
                        slack,
                    );
                }
                None => r.push(
                    &format!("ht F_{i} <= (i+1)(i+1-chi)+b0-i-1"),
                    vec![regular.clone()],
                    lhs,
                    "<=",
                    Quantity::Text("chi unknown".into()),
                    "at-origin",
                    Outcome::Unknown,
                    Some(format!("pd {}", betti.pd)),
                ),
            }
        }
        Ok(r)
    })
}

/// Purity of the critical locus and the d.c.i. bound on branch schemes.
pub fn check_purity_critical(m: &MorphismDecl, asserted: &Assertions, budget: &Budget) -> Result<VerificationReport> {
    const T: &str = "purity-of-critical";
    guarded(T, &m.name, || {
        let mut r = VerificationReport::new(T, &m.name, morphism_hyps(m, asserted, budget)?);
        let tbar = image_tangent(m, budget)?;
        let s2 = match serre_s2_sufficient(&tbar, budget)? {
            Tri::Yes => HypStatus::CheckedTrue,
            _ => HypStatus::Indeterminate,
        };
        let crit = critical_scheme(m, 0, budget)?;
        let (lhs, outcome) = codim_against(&crit, 1);
        r.push(
            "codim+ C <= 1",
            vec![Hypothesis::new("Tbar satisfies (S2)", s2)],
            lhs,
            "<=",
            Quantity::Int(1),
            "global",
            outcome,
            None,
        );
        let omega = relative_kaehler(m, budget)?;
        let d = relative_dimension(m, budget)? as i64;
        let dci = dci_hyp(&format!("{} d.c.i.", m.name), &omega, budget)?;
        let top = (max_generators(&omega, budget)? as i64 - d).clamp(1, MAX_FILTRATION_INDEX as i64 + 1);
        for i in 0..top {
            let b = branch_scheme(m, i as usize, budget)?;
            let bound = (d + i + 1) * (i + 1);
            let (lhs, outcome) = codim_against(&b, bound);
            r.push(
                &format!("codim+ B^({i}) <= (d+i+1)(i+1)"),
                vec![dci.clone()],
                lhs,
                "<=",
                Quantity::Int(bound),
                "global",
                outcome,
                None,
            );
        }
        Ok(r)
    })
}

/// A supremum known only up to an interval.
#[derive(Clone, Copy, Debug)]
struct Estimate {
    low: i64,
    high: Option<i64>,
}

impl Estimate {
    fn exact(v: i64) -> Self {
        Estimate { low: v, high: Some(v) }
    }

    fn show(&self) -> String {
        match self.high {
            Some(h) if h == self.low => h.to_string(),
            Some(h) => format!("[{}, {h}]", self.low),
            None => format!(">= {}", self.low),
        }
    }
}

/// Compares `lhs` with a bound that is monotone in an estimated quantity.
fn bounded(rep: &LocusReport, est: Estimate, f: impl Fn(i64) -> i64) -> (Quantity, Quantity, Outcome) {
    let lo_bound = f(est.low);
    let (lhs, at_low) = codim_against(rep, lo_bound);
    let rhs = match est.high {
        Some(h) if h == est.low => Quantity::Int(lo_bound),
        Some(h) => Quantity::Text(format!("[{lo_bound}, {}]", f(h))),
        None => Quantity::Text(format!(">= {lo_bound}")),
    };
    let outcome = match (at_low, est.high) {
        (Outcome::Holds, _) => Outcome::Holds,
        (Outcome::Fails, Some(h)) => codim_against(rep, f(h)).1,
        (Outcome::Fails, None) => Outcome::Unknown,
        (Outcome::Unknown, Some(h)) if codim_against(rep, f(h)).1 == Outcome::Fails => Outcome::Fails,
        _ => Outcome::Unknown,
    };
    (lhs, rhs, outcome)
}

fn betti_if_on(base: &AffineRing, m: &PresentedModule, budget: &Budget) -> Result<Option<BettiData>> {
    if !base.contains_origin() {
        return Ok(None);
    }
    match betti_at_origin(m, budget) {
        Ok(b) => Ok(Some(b)),
        Err(e) if e.is_indeterminate() => Ok(None),
        Err(e) => Err(e),
    }
}

/// Bounds on the codimension of branch schemes in terms of defects and Betti numbers.
pub fn check_purity_branch(
    m: &MorphismDecl,
    i_max: usize,
    asserted: &Assertions,
    budget: &Budget,
) -> Result<VerificationReport> {
    const T: &str = "purity-of-branch-locus";
    guarded(T, &m.name, || {
        let mut r = VerificationReport::new(T, &m.name, morphism_hyps(m, asserted, budget)?);
        let omega = relative_kaehler(m, budget)?;
        let omega_x = kaehler(&m.target, budget)?;
        let d = relative_dimension(m, budget)? as i64;
        let delta_y = defects(&m.source, budget)?.delta as i64;
        let x_dci = dci_hyp(&format!("{}/k d.c.i.", m.target.name), &omega_x, budget)?;
        let y_dci = dci_hyp(&format!("{}/k d.c.i.", m.source.name), &kaehler(&m.source, budget)?, budget)?;
        // chi_2 vanishes wherever pd <= 1; otherwise only the value at the origin is known
        let chi2 = if x_dci.status == HypStatus::CheckedTrue {
            Estimate::exact(0)
        } else {
            let low = betti_if_on(&m.target, &omega_x, budget)?.and_then(|b| b.partial_euler(2)).unwrap_or(0);
            Estimate { low, high: None }
        };
        let ed = max_generators(&omega, budget)? as i64;
        let beta1 = Estimate {
            low: betti_if_on(&m.target, &omega, budget)?.map_or(0, |b| b.beta(1) as i64),
            high: Some(omega.relations.ncols() as i64 - omega.rank as i64 + ed),
        };
        let x_smooth = hyp(&format!("{}/k smooth", m.target.name), is_smooth(&m.target, budget))?;
        for i in 0..=i_max as i64 {
            let b = branch_scheme(m, i as usize, budget)?;
            let (lhs, rhs, out) = bounded(&b, chi2, |c| (d + i + 1) * (i + 1 + delta_y + c));
            r.push(
                &format!("(1) codim+ B^({i}) <= (d+i+1)(i+1+delta_Y+chi2(Omega_X))"),
                vec![],
                lhs,
                "<=",
                rhs,
                "global",
                out,
                Some(format!("d = {d}, delta_Y = {delta_y}, chi2 = {}", chi2.show())),
            );
            let (lhs, rhs, out) = bounded(&b, beta1, |b1| (d + i + 1) * (i + 1 + b1));
            r.push(
                &format!("(2) codim+ B^({i}) <= (d+i+1)(i+1+beta1(Omega_X/Y))"),
                vec![x_dci.clone(), y_dci.clone()],
                lhs,
                "<=",
                rhs,
                "global",
                out,
                Some(format!("beta1 = {}", beta1.show())),
            );
            if i == 0 {
                let delta_xy = ed - d;
                let (lhs, out) = codim_against(&b, delta_xy + d);
                r.push(
                    "(3) codim+ B <= delta_X/Y + d",
                    vec![x_smooth.clone()],
                    lhs,
                    "<=",
                    Quantity::Int(delta_xy + d),
                    "global",
                    out,
                    Some(format!("delta_X/Y = {delta_xy}")),
                );
            }
        }
        Ok(r)
    })
}

/// For `X -> Y -> Spec k` with `Y/k` smooth: `X/k` is d.c.i. iff `X/Y` is.
pub fn check_composition_dci(m: &MorphismDecl, asserted: &Assertions, budget: &Budget) -> Result<VerificationReport> {
    const T: &str = "composition-dci";
    guarded(T, &m.name, || {
        let mut hyps = morphism_hyps(m, asserted, budget)?;
        hyps.push(hyp(&format!("{}/k smooth", m.source.name), is_smooth(&m.source, budget))?);
        let mut r = VerificationReport::new(T, &m.name, hyps);
        let a = check_dci(&kaehler(&m.target, budget)?, DciMode::Global, budget)?.answer;
        let b = check_dci(&relative_kaehler(m, budget)?, DciMode::Global, budget)?.answer;
        let outcome = if a == Tri::Indeterminate || b == Tri::Indeterminate {
            Outcome::Unknown
        } else {
            Outcome::from_bool(a == b)
        };
        r.push(
            &format!("{}/k d.c.i. iff {} d.c.i.", m.target.name, m.name),
            vec![],
            Quantity::Text(a.to_string()),
            "=",
            Quantity::Text(b.to_string()),
            "global",
            outcome,
            None,
        );
        Ok(r)
    })
}

/// `codim⁺ B <= 2` for finite maps of normal integral schemes onto an l.c.i.
pub fn cutkosky_bound_report(m: &MorphismDecl, asserted: &Assertions, budget: &Budget) -> Result<VerificationReport> {
    const T: &str = "cutkosky-bound";
    guarded(T, &m.name, || {
        let hyps = vec![
            Hypothesis::new(
                &format!("{} finite", m.name),
                asserted.status(&m.name, "finite", HypStatus::Indeterminate),
            ),
            domain_hypothesis(&m.target, asserted, budget)?,
            domain_hypothesis(&m.source, asserted, budget)?,
            normal_hypothesis(&m.target, asserted, budget)?,
            lci_hypothesis(&m.source, asserted, budget)?,
        ];
        let mut r = VerificationReport::new(T, &m.name, hyps);
        let b = branch_scheme(m, 0, budget)?;
        let (lhs, outcome) = codim_against(&b, 2);
        r.push("codim+ B <= 2", vec![], lhs, "<=", Quantity::Int(2), "global", outcome, None);
        Ok(r)
    })
}

/// A module with `pd <= 1` along `V`, locally free off `V`, and `codim V` large is locally free.
pub fn check_locfree_fitting(
    mname: &str,
    m: &PresentedModule,
    v: &Ideal,
    asserted: &Assertions,
    budget: &Budget,
) -> Result<VerificationReport> {
    const T: &str = "locally-free-by-fitting";
    guarded(T, mname, || {
        let base = &m.base;
        let rank = generic_rank(m, budget)? as i64;
        let fr = fitting_ideal(m, rank as usize, budget)?;
        let off_v = fr.radical_contains_ideal(v, budget)?;
        let codim_v = base.codim(v, budget)?.unwrap_or(i64::MAX);
        let pd_le_1 = match check_dci(m, DciMode::Global, budget)?.answer {
            Tri::Yes => HypStatus::CheckedTrue,
            _ => HypStatus::Indeterminate,
        };
        let cond2 = if codim_v <= rank + 1 { HypStatus::CheckedFalse } else { pd_le_1 };
        // sup over V of b1 - b0 is exact when V is the origin, bounded by the presentation otherwise
        let vars: Vec<Poly> = (0..base.nvars()).map(|k| Poly::var(&base.ring, k)).collect();
        let at_origin = base.contains_origin()
            && vars.iter().all(|x| base.ideal.sum(v).radical_contains(x, budget).unwrap_or(false));
        let cond1 = if at_origin {
            let b = betti_at_origin(m, budget)?;
            let s = b.beta(1) as i64 - b.beta(0) as i64;
            HypStatus::checked(codim_v > (s + rank + 1) * (rank + 1))
        } else {
            let s = m.relations.ncols() as i64 - m.rank as i64;
            if codim_v > (s + rank + 1) * (rank + 1) {
                HypStatus::CheckedTrue
            } else {
                HypStatus::Indeterminate
            }
        };
        let either = if cond1 == HypStatus::CheckedTrue || cond2 == HypStatus::CheckedTrue {
            HypStatus::CheckedTrue
        } else if cond1.is_false() && cond2.is_false() {
            HypStatus::CheckedFalse
        } else {
            HypStatus::Indeterminate
        };
        let hyps = vec![
            domain_hypothesis(base, asserted, budget)?,
            Hypothesis::new("locally free off V", HypStatus::checked(off_v)),
            Hypothesis::new("codim condition (1) or (2)", either)
                .with_detail(format!("codim V = {codim_v}, rank = {rank}; (1): {cond1}; (2): {cond2}")),
        ];
        let mut r = VerificationReport::new(T, mname, hyps);
        let unit = fr.is_unit(budget)?;
        r.push(
            &format!("F_{rank}(M) = (1)"),
            vec![],
            ideal_q(&fr, budget)?,
            "=",
            Quantity::Ideal(vec!["1".into()]),
            "global",
            Outcome::from_bool(unit),
            None,
        );
        Ok(r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, Field, MonomialOrder, PolyRing};
    use crate::verify::Verdict;

    fn affine(name: &str, vars: &[&str], gens: &[&str]) -> Arc<AffineRing> {
        let r = PolyRing::new(vars.iter().map(|s| s.to_string()).collect(), Field::Rational, MonomialOrder::GrevLex)
            .unwrap();
        let g = gens.iter().map(|s| parse_poly(s, &r).unwrap()).collect();
        AffineRing::new(name, &r, g)
    }

    fn morphism(source: &Arc<AffineRing>, target: &Arc<AffineRing>, images: &[&str]) -> MorphismDecl {
        let im = images.iter().map(|s| parse_poly(s, &target.ring).unwrap()).collect();
        MorphismDecl::new("pi", source, target, im, &Budget::default()).unwrap()
    }

    fn fold() -> MorphismDecl {
        morphism(
            &affine("Y", &["y1", "y2", "y3"], &[]),
            &affine("X", &["x1", "x2", "x3"], &[]),
            &["x2*x3 - x1", "x2", "x1*x3"],
        )
    }

    fn whitney() -> MorphismDecl {
        morphism(&affine("Y", &["a", "b", "c"], &["a*c - b^2"]), &affine("X", &["s", "t"], &[]), &["s^2", "s*t", "t^2"])
    }

    fn birational() -> MorphismDecl {
        let y = affine("Y", &["x1", "x2", "x3", "x4"], &["x1*x2 - x3*x4"]);
        morphism(&y, &affine("X", &["y1", "y2", "y3"], &[]), &["y1", "y2*y3", "y2", "y1*y3"])
    }

    fn cusp_chart() -> MorphismDecl {
        morphism(
            &affine("A", &["x", "y"], &["x^2 + y^3"]),
            &affine("B", &["xp", "yp"], &["xp^2 + yp"]),
            &["xp*yp", "yp"],
        )
    }

    fn none() -> Assertions {
        Assertions::default()
    }

    fn clause<'a>(r: &'a VerificationReport, prefix: &str) -> &'a crate::verify::Clause {
        r.clauses.iter().find(|c| c.name.starts_with(prefix)).unwrap_or_else(|| panic!("no clause {prefix}"))
    }

    #[test]
    fn gamma_vanishing() {
        let b = Budget::default();
        assert_eq!(check_gamma_zero(&fold(), &none(), &b).unwrap().verdict, Verdict::Verified);
        let x = affine("X", &["u"], &[]);
        assert_eq!(check_gamma_zero(&morphism(&x, &x, &["u"]), &none(), &b).unwrap().verdict, Verdict::Verified);
        let r = check_gamma_zero(&cusp_chart(), &none(), &b).unwrap();
        assert_eq!(r.verdict, Verdict::Inapplicable);
        assert_eq!(r.clauses[0].lhs, Quantity::Text("[[1], [-3/2*xp]]".into()));
    }

    #[test]
    fn duality() {
        let b = Budget::default();
        let r = check_duality(&fold(), 2, &none(), &b).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.clauses.len(), 3);
        assert_eq!(r.clauses[0].lhs, Quantity::Ideal(vec!["x2*x3 + x1".into()]));
        assert_eq!(check_duality(&whitney(), 1, &none(), &b).unwrap().verdict, Verdict::Inapplicable);
    }

    #[test]
    fn heights_of_whitney_differentials() {
        let b = Budget::default();
        let om = relative_kaehler(&whitney(), &b).unwrap();
        let r = check_height_bounds("Omega", &om, &b).unwrap();
        let c = clause(&r, "ht F_0 <= (i+1)(i+1+b1-b0)");
        assert_eq!((c.lhs.clone(), c.rhs.clone(), c.verdict), (Quantity::Int(2), Quantity::Int(2), Verdict::Verified));
        assert_eq!(c.note.as_deref(), Some("slack 0"));
        assert_eq!(r.verdict, Verdict::Verified);
        let plane = affine("R", &["x", "y"], &[]);
        let row = vec![parse_poly("x", &plane.ring).unwrap(), parse_poly("y", &plane.ring).unwrap()];
        let k = PresentedModule::new(&plane, crate::resolve::Matrix::from_rows(&plane.ring, vec![row]), &b).unwrap();
        let r = check_height_bounds("k", &k, &b).unwrap();
        let en = clause(&r, "ht F_0 <= (i+1)(i+1+b1-b0)");
        assert_eq!((en.rhs.clone(), en.verdict), (Quantity::Int(2), Verdict::Verified));
        // beta = (1, 2, 1), chi = 0: the regular bound gives 1 while ht (x, y) = 2
        let reg = clause(&r, "ht F_0 <= (i+1)(i+1-chi)");
        assert_eq!(
            (reg.lhs.clone(), reg.rhs.clone(), reg.verdict),
            (Quantity::Int(2), Quantity::Int(1), Verdict::Violated)
        );
    }

    #[test]
    fn purity_of_critical() {
        let b = Budget::default();
        let r = check_purity_critical(&fold(), &none(), &b).unwrap();
        assert_eq!(clause(&r, "codim+ C").hypotheses[0].status, HypStatus::CheckedTrue);
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(check_purity_critical(&whitney(), &none(), &b).unwrap().verdict, Verdict::Verified);
        let proj = morphism(&affine("Y", &["u"], &[]), &affine("X", &["u", "v"], &[]), &["u"]);
        assert_eq!(check_purity_critical(&proj, &none(), &b).unwrap().verdict, Verdict::Verified);
    }

    #[test]
    fn purity_of_branch_locus() {
        let b = Budget::default();
        for (m, bound) in [(fold(), 1), (whitney(), 2), (birational(), 2)] {
            let r = check_purity_branch(&m, 0, &none(), &b).unwrap();
            let c = clause(&r, "(1)");
            assert_eq!((c.lhs.clone(), c.rhs.clone()), (Quantity::Int(bound), Quantity::Int(bound)), "{}", m.name);
            assert_eq!(c.verdict, Verdict::Verified);
        }
        // Omega_X/Y = k[y]/(y1, y2) on a smooth X: delta_X/Y + d = 1 < codim B = 2
        let r = check_purity_branch(&birational(), 0, &none(), &b).unwrap();
        let c = clause(&r, "(3)");
        assert_eq!((c.lhs.clone(), c.rhs.clone(), c.verdict), (Quantity::Int(2), Quantity::Int(1), Verdict::Violated));
        for m in [fold(), whitney()] {
            assert_eq!(check_purity_branch(&m, 1, &none(), &b).unwrap().verdict, Verdict::Verified, "{}", m.name);
        }
    }

    #[test]
    fn composition_and_cutkosky() {
        let b = Budget::default();
        assert_eq!(check_composition_dci(&fold(), &none(), &b).unwrap().verdict, Verdict::Verified);
        assert_eq!(check_composition_dci(&whitney(), &none(), &b).unwrap().verdict, Verdict::Inapplicable);
        let cusp = morphism(&affine("Y", &["u"], &[]), &affine("X", &["x", "y"], &["x^2 + y^3"]), &["y"]);
        assert_eq!(check_composition_dci(&cusp, &none(), &b).unwrap().verdict, Verdict::Verified);
        let mut a = none();
        a.insert("pi", "finite", true);
        a.insert("X", "normal", true);
        let r = cutkosky_bound_report(&whitney(), &a, &b).unwrap();
        assert_eq!((r.clauses[0].lhs.clone(), r.verdict), (Quantity::Int(2), Verdict::Verified));
        let mut a = none();
        a.insert("pi", "finite", false);
        assert_eq!(cutkosky_bound_report(&fold(), &a, &b).unwrap().verdict, Verdict::Inapplicable);
    }

    #[test]
    fn cutkosky_alarm_on_a_non_lci_quotient() {
        let b = Budget::default();
        let y = affine(
            "Y",
            &["a", "b", "c", "d", "e", "f"],
            &["a*c - b^2", "a*e - b*d", "a*f - d^2", "b*e - c*d", "b*f - d*e", "c*f - e^2"],
        );
        let m = morphism(&y, &affine("X", &["s", "t", "u"], &[]), &["s^2", "s*t", "t^2", "s*u", "t*u", "u^2"]);
        let mut a = none();
        a.insert("pi", "finite", true);
        a.insert("Y", "domain", true);
        a.insert("Y", "lci", true);
        let r = cutkosky_bound_report(&m, &a, &b).unwrap();
        assert_eq!((r.clauses[0].lhs.clone(), r.verdict), (Quantity::Int(3), Verdict::Violated));
    }

    #[test]
    fn locally_free_by_fitting() {
        let b = Budget::default();
        let cone = affine("Y", &["a", "b", "c"], &["a*c - b^2"]);
        let om = kaehler(&cone, &b).unwrap();
        let v = Ideal::new(&cone.ring, ["a", "b", "c"].iter().map(|s| parse_poly(s, &cone.ring).unwrap()).collect());
        let r = check_locfree_fitting("Omega_Y", &om, &v, &none(), &b).unwrap();
        assert_eq!(r.verdict, Verdict::Inapplicable);
        let a3 = affine("A", &["x", "y", "z"], &[]);
        let col = ["1", "x"].iter().map(|s| parse_poly(s, &a3.ring).unwrap()).collect();
        let m = PresentedModule::new(&a3, crate::resolve::Matrix::from_cols(&a3.ring, 2, vec![col]), &b).unwrap();
        let v = Ideal::new(&a3.ring, ["x", "y", "z"].iter().map(|s| parse_poly(s, &a3.ring).unwrap()).collect());
        assert_eq!(check_locfree_fitting("M", &m, &v, &none(), &b).unwrap().verdict, Verdict::Verified);
    }
}
