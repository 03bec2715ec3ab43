//! Human-readable renderings of library values.

use qtrace::diffop::{DiffOp, ExactOp, ExpPoly, ExpRational, XSeries};
use qtrace::macdonald::EpsOrder;
use qtrace::qfield::fmt_wt;
use qtrace::{LambdaPoly, Mat, QScalar, Ring};

/// Σ c·e^{⟨κ,x⟩}.
pub fn exp_poly(p: &ExpPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = p
        .terms()
        .iter()
        .rev()
        .map(|(k, c)| if k.iter().all(|x| *x.numer() == 0) { format!("({c})") } else { format!("({c})·e^<{},x>", fmt_wt(k)) })
        .collect();
    parts.join(" + ")
}

pub fn exp_rational(a: &ExpRational) -> String {
    if a.den.is_constant() && a.den.constant_term().is_one() {
        exp_poly(&a.num)
    } else {
        format!("[{}] / [{}]", exp_poly(&a.num), exp_poly(&a.den))
    }
}

pub fn exact_op(op: &ExactOp) -> String {
    op.terms.iter().map(|(s, a)| format!("  T_{}: {}", fmt_wt(s), exp_rational(a))).collect::<Vec<_>>().join("\n")
}

fn matrix<T: Ring>(m: &Mat<T>, show: impl Fn(&T) -> String) -> String {
    if m.rows == 1 && m.cols == 1 {
        return show(&m[(0, 0)]);
    }
    let rows: Vec<String> = (0..m.rows).map(|i| format!("[{}]", m.row(i).iter().map(&show).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join("; "))
}

pub fn lambda_matrix(m: &Mat<LambdaPoly>) -> String {
    matrix(m, |e| e.to_string())
}

/// The first `shown` terms of an x-series, lowest height first.
pub fn x_series(s: &XSeries, shown: usize) -> String {
    let mut terms: Vec<(&Vec<i64>, &Mat<QScalar>)> = s.terms.iter().collect();
    terms.sort_by_key(|(mu, _)| (mu.iter().sum::<i64>(), (*mu).clone()));
    let mut parts: Vec<String> = terms.iter().take(shown).map(|(mu, m)| format!("{}·e^-<{mu:?},x>", matrix(m, |c| format!("({c})")))).collect();
    if terms.len() > shown {
        parts.push("…".into());
    }
    let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
    format!("e^<{},x>·({body})  [depth {}]", fmt_wt(&s.lead), s.depth)
}

pub fn diff_op(op: &DiffOp, shown: usize) -> String {
    op.terms.iter().map(|(s, a)| format!("  T_{}: {}", fmt_wt(s), x_series(a, shown))).collect::<Vec<_>>().join("\n")
}

pub fn eps_order(o: &EpsOrder) -> String {
    if o.terms.is_empty() {
        return format!("  ε^{}: 0", o.order);
    }
    let parts: Vec<String> = o
        .terms
        .iter()
        .rev()
        .map(|t| match t.deriv {
            0 => format!("({})", t.coeff),
            1 => format!("({})·∂", t.coeff),
            d => format!("({})·∂^{d}", t.coeff),
        })
        .collect();
    format!("  ε^{}: {}", o.order, parts.join(" + "))
}
