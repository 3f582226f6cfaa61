use std::fmt;

use super::Formula;

const PREC_IMPLIES: u8 = 0;
const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_TEMPORAL: u8 = 3;
const PREC_UNARY: u8 = 4;
const PREC_ATOM: u8 = 5;

fn precedence(f: &Formula) -> u8 {
    use Formula::*;
    match f {
        Prop(_) | True | False => PREC_ATOM,
        Not(_) | Next(_) | Eventually(_) | Globally(_) | Yesterday(_) | WeakYesterday(_)
        | Once(_) | Historically(_) => PREC_UNARY,
        Until(..) | Release(..) | Since(..) | Triggered(..) | BoundedUntil { .. }
        | BoundedSince { .. } => PREC_TEMPORAL,
        And(..) => PREC_AND,
        Or(..) => PREC_OR,
        Implies(..) => PREC_IMPLIES,
    }
}

fn child(f: &mut fmt::Formatter<'_>, sub: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({sub})")
    } else {
        write!(f, "{sub}")
    }
}

fn unary(f: &mut fmt::Formatter<'_>, op: &str, sub: &Formula) -> fmt::Result {
    write!(f, "{op} ")?;
    child(f, sub, precedence(sub) != PREC_ATOM)
}

fn infix(
    f: &mut fmt::Formatter<'_>,
    op: &str,
    prec: u8,
    right_assoc: bool,
    lhs: &Formula,
    rhs: &Formula,
) -> fmt::Result {
    let (lp, rp) = (precedence(lhs), precedence(rhs));
    let lhs_parens = if right_assoc { lp <= prec } else { lp < prec };
    let rhs_parens = if right_assoc { rp < prec } else { rp <= prec };
    child(f, lhs, lhs_parens)?;
    write!(f, " {op} ")?;
    child(f, rhs, rhs_parens)
}

/// Prints in the concrete ASCII grammar. Operands of unary operators are
/// parenthesized unless atomic; binary operands only where precedence
/// requires it.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        match self {
            Prop(p) => write!(f, "{p}"),
            True => f.write_str("true"),
            False => f.write_str("false"),
            Not(a) => unary(f, "!", a),
            Next(a) => unary(f, "X", a),
            Eventually(a) => unary(f, "F", a),
            Globally(a) => unary(f, "G", a),
            Yesterday(a) => unary(f, "Y", a),
            WeakYesterday(a) => unary(f, "Z", a),
            Once(a) => unary(f, "O", a),
            Historically(a) => unary(f, "H", a),
            And(a, b) => infix(f, "&", PREC_AND, false, a, b),
            Or(a, b) => infix(f, "|", PREC_OR, false, a, b),
            Implies(a, b) => infix(f, "->", PREC_IMPLIES, true, a, b),
            Until(a, b) => infix(f, "U", PREC_TEMPORAL, true, a, b),
            Release(a, b) => infix(f, "R", PREC_TEMPORAL, true, a, b),
            Since(a, b) => infix(f, "S", PREC_TEMPORAL, true, a, b),
            Triggered(a, b) => infix(f, "T", PREC_TEMPORAL, true, a, b),
            BoundedUntil { lo, hi, lhs, rhs } => {
                infix(f, &format!("U[{lo},{hi}]"), PREC_TEMPORAL, true, lhs, rhs)
            }
            BoundedSince { lo, hi, lhs, rhs } => {
                infix(f, &format!("S[{lo},{hi}]"), PREC_TEMPORAL, true, lhs, rhs)
            }
        }
    }
}
