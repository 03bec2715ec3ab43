//! One function per verb. Each returns the JSON artifact, a text summary and any failed check.

use qtrace::acceptance::{run_with, Profile, CRITERIA};
use qtrace::diffop::{psi_lx, reconstruct_operator, DiffOp, ExactOp, ExpRational, LxSeries, TieBreak};
use qtrace::intertwine::{check_annihilation, normalize, psi_series, singular_vector as find_singular_vector, PsiSeries};
use qtrace::macdonald::{
    appendix, c0_appendix, c0_polynomial, classical_limit, duality_evaluated, duality_symbolic, macdonald_oracle, phi_bipoly, phi_series,
    proportionality, psi_classical_limit, weyl_alternation, MacContext, SymmetricLaurent,
};
use qtrace::qfield::{fmt_wt, wt_from_ints, wt_scale};
use qtrace::uqg::{FiniteModule, Spec, Verma, DEFAULT_DIM_CAP};
use qtrace::{Error, LambdaPoly, Mat, QScalar, Result, RootSystem, Wt, Q};
use serde_json::{json, Value};

use crate::cache::PsiCache;
use crate::render;
use crate::{ClassicalOp, DualityMode, Gauge, MacArgs, ModuleArgs, OpForm, SystemArgs, Tie};

pub struct Report {
    pub json: Value,
    pub text: String,
    /// Failing invariant id and detail.
    pub violation: Option<(String, String)>,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report { json, text, violation: None }
    }

    fn require(mut self, ok: bool, id: &str, detail: impl FnOnce() -> String) -> Self {
        if !ok && self.violation.is_none() {
            self.violation = Some((id.to_string(), detail()));
        }
        self
    }
}

fn root_system(s: &SystemArgs) -> Result<RootSystem> {
    match (&s.system, &s.cartan) {
        (Some(label), _) => RootSystem::from_label(label),
        (None, Some(c)) => {
            let a: Vec<Vec<i64>> = serde_json::from_str(c).map_err(|e| Error::Invalid(format!("--cartan is not a JSON integer matrix: {e}")))?;
            RootSystem::from_cartan(a)
        }
        (None, None) => Err(Error::Invalid("one of --system or --cartan is required".into())),
    }
}

/// Dominant weight from Dynkin labels, in simple-root coordinates.
fn from_dynkin(rs: &RootSystem, labels: &[i64], what: &str) -> Result<Wt> {
    if labels.len() != rs.rank() {
        return Err(Error::Invalid(format!("{what} has {} labels but the rank is {}", labels.len(), rs.rank())));
    }
    if labels.iter().any(|&x| x < 0) {
        return Err(Error::Invalid(format!("{what} = {labels:?} is not dominant")));
    }
    Ok(rs.from_fundamental(&wt_from_ints(labels)))
}

fn strings(w: &[Q]) -> Vec<String> {
    w.iter().map(|x| x.to_string()).collect()
}

fn is_type_a(rs: &RootSystem) -> bool {
    RootSystem::from_label(&format!("A{}", rs.rank())).is_ok_and(|a| a.cartan == rs.cartan)
}

/// The Macdonald data when the module is S^{kN}V of sl_N.
fn mac_context(rs: &RootSystem, theta: &[i64]) -> Option<MacContext> {
    let n = rs.rank() + 1;
    if !is_type_a(rs) || theta.iter().skip(1).any(|&x| x != 0) || theta[0] % n as i64 != 0 {
        return None;
    }
    MacContext::new(n, theta[0] / n as i64).ok()
}

fn mac(m: &MacArgs) -> Result<MacContext> {
    MacContext::new(m.n, m.k)
}

/// Ψ for the module with highest weight `theta` (Dynkin labels), read from or written to the cache.
fn load_psi(rs: &RootSystem, theta: &[i64], depth: usize) -> Result<PsiSeries> {
    let cache = PsiCache::from_env();
    if let Some(p) = cache.as_ref().and_then(|c| c.load(rs, theta, depth)) {
        return Ok(p);
    }
    let weight = from_dynkin(rs, theta, "θ")?;
    let verma = Verma::new(rs);
    let module = FiniteModule::build(&verma, &weight, DEFAULT_DIM_CAP)?;
    let sv = normalize(&find_singular_vector(&verma, &module)?, &module)?;
    let psi = psi_series(&verma, &module, &sv, depth)?;
    if let Some(c) = &cache {
        if let Err(e) = c.store(theta, &psi) {
            eprintln!("qtrace: cannot write the Ψ cache in {}: {e}", c.dir().display());
        }
    }
    Ok(psi)
}

/// Normalized ψ_k for sl_N.
fn psi_k(ctx: &MacContext, depth: usize) -> Result<LxSeries> {
    let mut theta = vec![0; ctx.n - 1];
    theta[0] = ctx.k * ctx.n as i64;
    ctx.normalized_psi(&load_psi(&ctx.rs, &theta, depth)?)
}

fn eigen_factor(psi: &PsiSeries, name: &str) -> Result<LambdaPoly> {
    let rs = &psi.rs;
    let rank_one = rs.cartan == vec![vec![2]];
    match name {
        "1" => Ok(LambdaPoly::one(rs.rank())),
        "c0" if rank_one => Ok(c0_appendix()),
        "c0" | "c0-product" => Ok(c0_polynomial(rs, &psi.k)),
        "c0-appendix" if rank_one => Ok(c0_appendix()),
        "c0-appendix" => Err(Error::Invalid("c0-appendix is defined for A1 only".into())),
        _ => {
            let i: usize = name
                .strip_prefix('c')
                .and_then(|s| s.parse().ok())
                .filter(|i| (1..=rs.rank()).contains(i))
                .ok_or_else(|| Error::Invalid(format!("unknown eigenvalue {name:?} (expected 1, c0, c0-product, c0-appendix or c1..c{})", rs.rank())))?;
            let two = Q::from_integer(2);
            Ok(LambdaPoly::from_terms(rs.orbit(rs.fundamental_weight(i - 1)).into_iter().map(|m| (wt_scale(&m, two), QScalar::one()))))
        }
    }
}

/// A product of named eigenvalues, e.g. `c1*c0`.
fn eigen_poly(psi: &PsiSeries, spec: &str) -> Result<LambdaPoly> {
    let mut p = LambdaPoly::one(psi.rs.rank());
    for f in spec.split('*') {
        p = p.mul(&eigen_factor(psi, f.trim())?);
    }
    Ok(p)
}

fn build(psi: &PsiSeries, eigen: &str, tie: TieBreak) -> Result<(LambdaPoly, DiffOp)> {
    let c = eigen_poly(psi, eigen)?;
    let op = reconstruct_operator(psi, &Mat::identity(psi.dim0, c.clone()), tie)?;
    Ok((c, op))
}

fn module_json(rs: &RootSystem, m: &ModuleArgs) -> Value {
    json!({"cartan": rs.cartan, "theta": m.theta})
}

pub fn shapovalov(sys: &SystemArgs, mu: &[i64]) -> Result<Report> {
    let rs = root_system(sys)?;
    if mu.len() != rs.rank() || mu.iter().any(|&x| x < 0) {
        return Err(Error::Invalid(format!("μ = {mu:?} must be {} nonnegative integers", rs.rank())));
    }
    let verma = Verma::new(&rs);
    let gram = verma.gram(&Spec::Symbolic, mu)?;
    let det = gram.det_bareiss();
    let predicted = verma.predicted_determinant(mu);
    let matches = det.equal_up_to_unit_monomial(&predicted);
    let rows: Vec<Vec<String>> = (0..gram.rows).map(|i| gram.row(i).iter().map(|e| e.canonical_text()).collect()).collect();
    let json = json!({
        "cartan": rs.cartan,
        "mu": mu,
        "size": gram.rows,
        "matrix": rows,
        "det": det.to_json(),
        "predicted": predicted.to_json(),
        "matches_up_to_unit_monomial": matches,
    });
    let text = format!(
        "Shapovalov matrix at μ = {mu:?}: {n}×{n}\n  det       = {det}\n  predicted = {predicted}\n  {}",
        if matches { "equal up to a unit monomial" } else { "MISMATCH" },
        n = gram.rows
    );
    Ok(Report::new(json, text).require(matches, "shapovalov-determinant", || format!("μ = {mu:?}")))
}

pub fn singular_vector(m: &ModuleArgs, raw: bool) -> Result<Report> {
    let rs = root_system(&m.sys)?;
    let weight = from_dynkin(&rs, &m.theta, "θ")?;
    let verma = Verma::new(&rs);
    let module = FiniteModule::build(&verma, &weight, DEFAULT_DIM_CAP)?;
    let mut sv = find_singular_vector(&verma, &module)?;
    if !raw {
        sv = normalize(&sv, &module)?;
    }
    check_annihilation(&verma, &module, &sv)?;
    let mut text = format!("singular vectors for θ = {:?} ({} zero-weight vectors), E-annihilation checked", m.theta, sv.columns.len());
    let columns: Vec<Value> = sv
        .columns
        .iter()
        .enumerate()
        .map(|(a, col)| {
            let parts: Vec<Value> = col
                .iter()
                .map(|(nu, p)| {
                    text.push_str(&format!("\n  u{a}, ν = {nu:?}: {} / ({})", render::lambda_matrix(&p.num), p.den));
                    let rows: Vec<Vec<String>> = (0..p.num.rows).map(|i| p.num.row(i).iter().map(|e| e.canonical_text()).collect()).collect();
                    json!({"nu": nu, "num": rows, "den": p.den.canonical_text()})
                })
                .collect();
            json!({"u": a, "parts": parts})
        })
        .collect();
    let mut json = module_json(&rs, m);
    json["normalized"] = json!(sv.normalized);
    json["columns"] = json!(columns);
    Ok(Report::new(json, text))
}

pub fn psi(m: &ModuleArgs, depth: usize, normalized: bool) -> Result<Report> {
    let rs = root_system(&m.sys)?;
    let psi = load_psi(&rs, &m.theta, depth)?;
    if normalized {
        let ctx = mac_context(&rs, &m.theta).ok_or_else(|| Error::Invalid("--normalized needs sl_N with θ = kN·Λ₁".into()))?;
        let s = ctx.normalized_psi(&psi)?;
        let text = format!("ψ_{} for N = {}, depth {depth}\n{}", ctx.k, ctx.n, lx_summary(&s, 6));
        return Ok(Report::new(json!({"N": ctx.n, "k": ctx.k, "psi": lx_json(&s)}), text));
    }
    let mut text = format!(
        "Ψ for θ = {:?}: dim U[0] = {}, k = {:?}, Θ = {:?}, depth {depth}, {} terms\n  χ = {}",
        m.theta,
        psi.dim0,
        psi.k,
        psi.big_theta,
        psi.terms.len(),
        psi.chi
    );
    for (mu, b) in psi.terms.iter().take(6) {
        text.push_str(&format!("\n  B_{mu:?} = {}", render::lambda_matrix(b)));
    }
    if psi.terms.len() > 6 {
        text.push_str("\n  …");
    }
    Ok(Report::new(psi.to_json(), text))
}

fn lx_json(s: &LxSeries) -> Value {
    let terms: Vec<Value> = s
        .terms
        .iter()
        .map(|(mu, b)| {
            let rows: Vec<Vec<String>> = (0..b.rows).map(|i| b.row(i).iter().map(|e| e.canonical_text()).collect()).collect();
            json!({"mu": mu, "B": rows})
        })
        .collect();
    json!({"lead": strings(&s.lead), "depth": s.depth, "terms": terms})
}

fn lx_summary(s: &LxSeries, shown: usize) -> String {
    let mut lines: Vec<String> = s.terms.iter().take(shown).map(|(mu, m)| format!("  e^-<{mu:?},x>: {}", render::lambda_matrix(m))).collect();
    if s.terms.len() > shown {
        lines.push("  …".into());
    }
    format!("  lead e^<λ + {},x>\n{}", fmt_wt(&s.lead), lines.join("\n"))
}

pub fn build_op(m: &ModuleArgs, eigen: &str, depth: usize, gauge: Gauge, tie: Tie) -> Result<Report> {
    let rs = root_system(&m.sys)?;
    let psi = load_psi(&rs, &m.theta, depth)?;
    let tie = match tie {
        Tie::LexLargest => TieBreak::LexLargest,
        Tie::LexSmallest => TieBreak::LexSmallest,
    };
    let (c, op) = build(&psi, eigen, tie)?;
    let ctx = mac_context(&rs, &m.theta);
    let (op, gauge) = match (gauge, &ctx) {
        (Gauge::Raw, _) | (Gauge::Auto, None) => (op, "raw"),
        (_, Some(ctx)) => (op.conjugate(&ExpRational::poly(ctx.delta_plus(), rs.rank()), rs.form())?, "normalized"),
        (Gauge::Normalized, None) => return Err(Error::Invalid("the normalized gauge needs sl_N with θ = kN·Λ₁".into())),
    };
    let mut json = module_json(&rs, m);
    json["eigen"] = json!(eigen);
    json["eigenvalue"] = c.to_json();
    json["gauge"] = json!(gauge);
    json["operator"] = op.to_json();
    let text = format!("D_c for c(λ) = {c} ({gauge} gauge, depth {})\n{}", op.depth().unwrap_or(depth), render::diff_op(&op, 4));
    Ok(Report::new(json, text))
}

pub fn apply(m: &ModuleArgs, eigen: &str, depth: usize) -> Result<Report> {
    let rs = root_system(&m.sys)?;
    let psi = load_psi(&rs, &m.theta, depth)?;
    let (c, op) = build(&psi, eigen, TieBreak::default())?;
    let source = psi_lx(&psi);
    let lhs = op.apply(rs.form(), &source)?;
    let rhs = source.mul_right(&Mat::identity(psi.dim0, c.shift(rs.form(), rs.rho())));
    let checked = lhs.depth;
    let ok = lhs.sub(&rhs.truncate(checked))?.is_zero();
    let mut json = module_json(&rs, m);
    json["eigen"] = json!(eigen);
    json["checked_depth"] = json!(checked);
    json["holds"] = json!(ok);
    let text = format!("D_c Ψ = Ψ·c(λ+ρ) for c = {eigen}: {} to depth {checked}", if ok { "holds" } else { "FAILS" });
    Ok(Report::new(json, text).require(ok, "reconstruction-eigen", || format!("c = {eigen}")))
}

pub fn commute(m: &ModuleArgs, eigen: &[String], depth: usize) -> Result<Report> {
    let [a, b] = eigen else {
        return Err(Error::Invalid(format!("commute takes exactly two --eigen values, got {}", eigen.len())));
    };
    let rs = root_system(&m.sys)?;
    let psi = load_psi(&rs, &m.theta, depth)?;
    let (_, da) = build(&psi, a, TieBreak::default())?;
    let (_, db) = build(&psi, b, TieBreak::default())?;
    let comm = da.commutator(&db, rs.form())?;
    let checked = comm.depth().unwrap_or(depth);
    let ok = comm.is_zero_to(checked);
    let mut json = module_json(&rs, m);
    json["eigen"] = json!([a, b]);
    json["checked_depth"] = json!(checked);
    json["commute"] = json!(ok);
    let text = format!("[D_{a}, D_{b}] {} to depth {checked}", if ok { "= 0" } else { "≠ 0" });
    Ok(Report::new(json, text).require(ok, "commutativity", || format!("[D_{a}, D_{b}]")))
}

pub fn mac_op(m: &MacArgs, l: usize, form: OpForm, verify: Option<usize>) -> Result<Report> {
    let ctx = mac(m)?;
    if l == 0 || l >= ctx.n {
        return Err(Error::Invalid(format!("l = {l} must lie in 1..{}", ctx.n - 1)));
    }
    let op: ExactOp = match form {
        OpForm::Subset => ctx.macdonald_operator(l)?,
        OpForm::Orbit => ctx.orbit_operator(&ctx.rs.fundamental_weight(l - 1).clone())?,
    };
    let ev = ctx.eigenvalue_l(l);
    let mut json = json!({"context": ctx.to_json(), "l": l, "form": if form == OpForm::Subset { "subset" } else { "orbit" }, "operator": op.to_json(), "eigenvalue": ev.to_json()});
    let mut text = format!("M_{l} for N = {}, k = {} (x-coordinates in simple roots)\n{}\n  eigenvalue c_{l}(λ) = {ev}", ctx.n, ctx.k, render::exact_op(&op));
    let mut ok = true;
    if let Some(d) = verify {
        let psi = psi_k(&ctx, d)?;
        let lhs = op.to_series(d)?.apply(ctx.rs.form(), &psi)?;
        ok = lhs.sub(&psi.mul_right(&Mat::from_rows(vec![vec![ev.clone()]])))?.is_zero();
        json["verified_depth"] = json!(d);
        json["eigen_equation_holds"] = json!(ok);
        text.push_str(&format!("\n  M_{l} ψ_k = c_{l} ψ_k: {} to depth {d}", if ok { "holds" } else { "FAILS" }));
    }
    Ok(Report::new(json, text).require(ok, "eigen-equation", || format!("N = {}, k = {}, l = {l}", ctx.n, ctx.k)))
}

fn symmetric_text(label: &str, s: &SymmetricLaurent) -> String {
    let m: Vec<String> = s.m.iter().rev().map(|(mu, c)| format!("({c})·m_{}", fmt_wt(mu))).collect();
    format!("  {label}: {}", m.join(" + "))
}

pub fn mac_poly(m: &MacArgs, lambda: &[i64], oracle: bool, weyl: bool, depth: usize) -> Result<Report> {
    if !oracle && !weyl {
        return Err(Error::Invalid("choose --oracle, --weyl or both".into()));
    }
    let ctx = mac(m)?;
    let lam = from_dynkin(&ctx.rs, lambda, "λ")?;
    let mut json = json!({"context": ctx.to_json(), "lambda": lambda});
    let mut text = format!("P_λ for λ = {lambda:?} (Dynkin labels), N = {}, k = {}; m_μ are orbit sums", ctx.n, ctx.k);
    let o = if oracle { Some(macdonald_oracle(&ctx, &lam)?) } else { None };
    let w = if weyl { Some(SymmetricLaurent::new(&ctx.rs, weyl_alternation(&ctx, &psi_k(&ctx, depth)?, &lam)?)?) } else { None };
    if let Some(o) = &o {
        json["oracle"] = o.to_json();
        text.push_str(&format!("\n{}", symmetric_text("oracle", o)));
    }
    if let Some(w) = &w {
        json["weyl"] = w.to_json();
        text.push_str(&format!("\n{}", symmetric_text("weyl", w)));
    }
    let mut ok = true;
    if let (Some(o), Some(w)) = (&o, &w) {
        let ratio = proportionality(&w.poly, &o.poly).filter(|r| !r.is_zero());
        ok = ratio.is_some();
        json["ratio"] = json!(ratio.as_ref().map(|r| r.to_string()));
        text.push_str(&match &ratio {
            Some(r) => format!("\n  weyl = ({r})·oracle"),
            None => "\n  weyl is NOT a nonzero multiple of the oracle".to_string(),
        });
    }
    Ok(Report::new(json, text).require(ok, "weyl-formula", || format!("λ = {lambda:?}")))
}

pub fn shift_op(m: &MacArgs, depth: usize) -> Result<Report> {
    let c0 = mac(m)?;
    let c1 = MacContext::new(m.n, m.k + 1)?;
    let g = c0.shift_operator(&psi_k(&c0, depth)?, &psi_k(&c1, depth)?)?;
    let json = json!({"context": c0.to_json(), "operator": g.to_json()});
    let text = format!("G_{} with ψ_{} = G_{} ψ_{} (N = {}, depth {})\n{}", m.k, m.k + 1, m.k, m.k, m.n, g.depth().unwrap_or(depth), render::diff_op(&g, 4));
    Ok(Report::new(json, text))
}

fn parse_pair(rs: &RootSystem, s: &str) -> Result<(Wt, Wt)> {
    let bad = || Error::Invalid(format!("--pair {s:?}: expected Dynkin labels as a,b,..:c,d,.."));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let ints = |t: &str| t.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad())).collect::<Result<Vec<_>>>();
    Ok((from_dynkin(rs, &ints(a)?, "κ")?, from_dynkin(rs, &ints(b)?, "κ'")?))
}

pub fn duality(m: &MacArgs, mode: DualityMode, pairs: &[String], depth: usize) -> Result<Report> {
    let ctx = mac(m)?;
    let phi = phi_series(&ctx, &psi_k(&ctx, depth)?)?;
    let report = match mode {
        DualityMode::Symbolic => duality_symbolic(&ctx, &phi)?,
        DualityMode::Evaluated => {
            let r = ctx.rs.rank();
            let mut parsed = pairs.iter().map(|p| parse_pair(&ctx.rs, p)).collect::<Result<Vec<_>>>()?;
            if parsed.is_empty() {
                let lam = |i: usize| ctx.rs.fundamental_weight(i).clone();
                parsed = vec![(lam(0), lam(r - 1)), (ctx.rs.rho().clone(), wt_scale(&lam(0), Q::from_integer(2)))];
            }
            duality_evaluated(&ctx, &phi, &parsed)?
        }
    };
    let ok = report.passed;
    let text = format!(
        "{} duality for N = {}, k = {}: {} ({} checked)",
        report.mode,
        ctx.n,
        ctx.k,
        if ok { "holds".to_string() } else { format!("FAILS: {}", report.failure.clone().unwrap_or_default()) },
        report.checked
    );
    let json = serde_json::to_value(&report).map_err(|e| Error::Invalid(e.to_string()))?;
    let detail = report.failure.clone().unwrap_or_default();
    Ok(Report::new(json, text).require(ok, "duality", || detail))
}

pub fn classical(op: ClassicalOp, k: i64, order: usize, depth: usize) -> Result<Report> {
    let note = "coefficients are rational functions of X = e^x, written with q standing for X";
    let exact = match op {
        ClassicalOp::M1 => appendix::m1(k)?,
        ClassicalOp::M0 => appendix::m0()?,
        ClassicalOp::M0K0 => appendix::m0_k0()?,
        ClassicalOp::G0 => appendix::g0()?,
        ClassicalOp::Psi => {
            let ctx = MacContext::new(2, k)?;
            let phi = phi_series(&ctx, &psi_k(&ctx, depth)?)?;
            let series = psi_classical_limit(&phi_bipoly(&ctx, &phi)?, &ctx.delta_k(), order)?;
            let orders: Vec<Value> = series
                .iter()
                .enumerate()
                .map(|(i, p)| json!({"order": i, "lambda_powers": p.iter().map(|(e, c)| (e.to_string(), json!(c.to_string()))).collect::<serde_json::Map<_, _>>()}))
                .collect();
            let lines: Vec<String> = series
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let terms: Vec<String> = p.iter().rev().map(|(e, c)| format!("({c})·λ^{e}")).collect();
                    format!("  ε^{i}: {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") })
                })
                .collect();
            let text = format!("e^(−λx)·ψ_{k} at q = e^ε ({note})\n{}", lines.join("\n"));
            return Ok(Report::new(json!({"op": "psi", "k": k, "note": note, "orders": orders}), text));
        }
    };
    let name = match op {
        ClassicalOp::M1 => format!("m1 (k = {k})"),
        ClassicalOp::M0 => "m0".into(),
        ClassicalOp::M0K0 => "m0-k0".into(),
        _ => "g0".into(),
    };
    let orders = classical_limit(&exact, order)?;
    let text = format!("{name} at q = e^ε, T = exp(ε∂) ({note})\n{}", orders.iter().map(render::eps_order).collect::<Vec<_>>().join("\n"));
    Ok(Report::new(json!({"op": name, "note": note, "orders": orders.iter().map(|o| o.to_json()).collect::<Vec<_>>()}), text))
}

pub fn verify_all(profile: &str, only: &[u8], stream: bool) -> Result<Report> {
    let profile: Profile = profile.parse()?;
    if let Some(bad) = only.iter().find(|id| !CRITERIA.iter().any(|(c, _)| c == *id)) {
        return Err(Error::Invalid(format!("there is no criterion {bad} (1..{})", CRITERIA.len())));
    }
    let reports = run_with(profile, only, |r| {
        if stream {
            println!("{r}");
        }
    });
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| format!("{} {}", r.id, r.name)).collect();
    let passed = reports.len() - failed.len();
    let json = json!({"profile": profile, "criteria": reports, "passed": passed, "failed": failed.len()});
    let text = format!("acceptance: {passed} passed, {} failed", failed.len());
    Ok(Report::new(json, text).require(failed.is_empty(), "acceptance", || format!("failed criteria: {}", failed.join(", "))))
}
