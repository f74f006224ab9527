//! Pinned reference values: the Minkowski comparison table, the family
//! invariants, the reduction-table cases at 2 and 3, the curve
//! `y^2 = x^3 + 4`, and the listed 3-adic balls.

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::arith::{self, parse_rational};
use crate::curves;
use crate::minkowski;
use crate::monodromy::{self, MonodromyGroup};
use crate::padic_cover::{self, ValuationRange};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

fn check(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Check {
    Check { name: name.into(), expected: expected.to_string(), actual: actual.to_string() }
}

fn show<T: ToString, E: ToString>(r: Result<T, E>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {}", e.to_string()),
    }
}

fn rat(s: &str) -> BigRational {
    parse_rational(s).expect("literal rational")
}

/// Reference values for `M(2g)`, g = 1..4.
pub const MINKOWSKI_TABLE: [(u64, u64); 4] = [(1, 24), (2, 5760), (3, 2_903_040), (4, 1_393_459_200)];

/// `|GL_{2g}(Z/12Z)|` rounded to two significant digits, g = 2..4.
pub const GL12_TABLE: [(u32, &str); 3] = [(4, "3.2e16"), (6, "1.2e38"), (8, "1.9e68")];

pub const PHI3_CASES: [(&str, MonodromyGroup); 9] = [
    ("1", MonodromyGroup::C4),
    ("8", MonodromyGroup::C4),
    ("10", MonodromyGroup::C4),
    ("17", MonodromyGroup::C4),
    ("216", MonodromyGroup::C4),
    ("2", MonodromyGroup::Dic3),
    ("9", MonodromyGroup::Dic3),
    ("81", MonodromyGroup::Dic3),
    ("54", MonodromyGroup::Dic3),
];

pub const PHI2_CASES: [(&str, MonodromyGroup); 9] = [
    ("1", MonodromyGroup::C3),
    ("5", MonodromyGroup::C3),
    ("12", MonodromyGroup::C3),
    ("3", MonodromyGroup::C6),
    ("7", MonodromyGroup::C6),
    ("2", MonodromyGroup::C2),
    ("6", MonodromyGroup::C2),
    ("4", MonodromyGroup::SL2F3),
    ("20", MonodromyGroup::SL2F3),
];

/// The four 3-adic balls on which `Phi_3` is `C4`: `(center, exponent)`.
pub const LISTED_C4_BALLS: [(u64, u32); 4] = [(1, 2), (8, 2), (27, 5), (216, 5)];

pub fn all_checks() -> Vec<Check> {
    let mut out = Vec::new();

    for (g, want) in MINKOWSKI_TABLE {
        out.push(check(format!("M(2g) for g = {g}"), want, show(minkowski::minkowski_bound(g))));
    }
    out.push(check("|GL_2(Z/12Z)|", 4608, show(minkowski::gl_cardinality(2, 12))));
    for (n, want) in GL12_TABLE {
        let got = minkowski::gl_cardinality(n, 12).map(|c| arith::sci_two_digits(&c));
        out.push(check(format!("|GL_{n}(Z/12Z)| to 2 digits"), want, show(got)));
    }

    for s in ["1", "4", "-7/3"] {
        let x = rat(s);
        let inv = curves::family_curve(&x).map(|c| c.invariants());
        let want = -BigRational::from_integer(BigInt::from(432)) * &x * &x;
        out.push(check(
            format!("discriminant of y^2 = x^3 + {s}"),
            arith::format_rational(&want),
            show(inv.clone().map(|i| arith::format_rational(&i.delta))),
        ));
        out.push(check(format!("j-invariant of y^2 = x^3 + {s}"), "0", show(inv.clone().map(|i| i.j))));
        out.push(check(format!("c4 of y^2 = x^3 + {s}"), "0", show(inv.clone().map(|i| i.c4))));
        let c6_abs = inv.map(|i| arith::format_rational(&num::Signed::abs(&i.c6)));
        let want = BigRational::from_integer(BigInt::from(864)) * num::Signed::abs(&x);
        out.push(check(format!("|c6| of y^2 = x^3 + {s}"), arith::format_rational(&want), show(c6_abs)));
    }

    for (s, g) in PHI3_CASES {
        out.push(check(format!("Phi at 3 for s = {s}"), g, show(monodromy::phi_family_at_3(&rat(s)))));
    }
    for (s, g) in PHI2_CASES {
        out.push(check(format!("Phi at 2 for s = {s}"), g, show(monodromy::phi_family_at_2(&rat(s)))));
    }

    let e4 = monodromy::semistability_degree(&rat("4"));
    out.push(check("d(E) for y^2 = x^3 + 4", 24, show(e4.as_ref().map(|r| r.degree).map_err(|e| e.clone()))));
    out.push(check(
        "Phi at 2 and 3 for y^2 = x^3 + 4",
        "SL2(F3),Dic3",
        show(e4.map(|r| r.locals.iter().map(|l| l.group.to_string()).collect::<Vec<_>>().join(","))),
    ));

    let cover = padic_cover::enumerate_cover(3, ValuationRange { min: 0, max: 4 });
    for (c, k) in LISTED_C4_BALLS {
        let got = cover.as_ref().map_err(|e| e.clone()).and_then(|r| {
            r.find(c, k).map(|b| b.group.to_string()).ok_or_else(|| crate::Error::Internal("ball missing".into()))
        });
        out.push(check(format!("3-adic ball {c}+3^{k}Z_3"), MonodromyGroup::C4, show(got)));
    }

    out
}
