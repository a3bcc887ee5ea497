//! Published reference values for the 6-cycle systems and a few small examples,
//! shared by `coxcone selftest` and the acceptance harness.

use serde::Serialize;

use crate::error::Result;
use crate::exactla::{add, rat, PolyCone};
use crate::facial::enumerate_facial;
use crate::fixtures;
use crate::imagcone::ImagCone;
use crate::realization::{Characteristic, RootBase};
use crate::subcone::{tits_cross_section, PolySubcone};
use crate::subset::Subset;
use crate::titscone::TitsCone;

/// `(case, special facial sets, facial sets)`.
pub const COUNTS: [(char, usize, usize); 4] = [('a', 29, 64), ('b', 17, 50), ('c', 13, 40), ('d', 5, 22)];

const SPECIAL_A: &[&[usize]] = &[
    &[],
    &[1, 2],
    &[2, 3],
    &[3, 4],
    &[4, 5],
    &[5, 6],
    &[1, 6],
    &[1, 2, 3],
    &[2, 3, 4],
    &[3, 4, 5],
    &[4, 5, 6],
    &[1, 5, 6],
    &[1, 2, 6],
    &[1, 2, 3, 4],
    &[2, 3, 4, 5],
    &[3, 4, 5, 6],
    &[1, 4, 5, 6],
    &[1, 2, 5, 6],
    &[1, 2, 3, 6],
    &[1, 2, 4, 5],
    &[2, 3, 5, 6],
    &[1, 3, 4, 6],
    &[2, 3, 4, 5, 6],
    &[1, 3, 4, 5, 6],
    &[1, 2, 4, 5, 6],
    &[1, 2, 3, 5, 6],
    &[1, 2, 3, 4, 6],
    &[1, 2, 3, 4, 5],
    &[1, 2, 3, 4, 5, 6],
];

const SPECIAL_B: &[&[usize]] = &[
    &[],
    &[1, 2],
    &[2, 3],
    &[3, 4],
    &[4, 5],
    &[5, 6],
    &[1, 6],
    &[2, 3, 4],
    &[3, 4, 5],
    &[1, 5, 6],
    &[1, 2, 6],
    &[2, 3, 4, 5],
    &[1, 2, 5, 6],
    &[1, 2, 4, 5],
    &[2, 3, 5, 6],
    &[1, 3, 4, 6],
    &[1, 2, 3, 4, 5, 6],
];

const SPECIAL_C: &[&[usize]] = &[
    &[],
    &[1, 2],
    &[2, 3],
    &[4, 5],
    &[5, 6],
    &[1, 2, 3],
    &[4, 5, 6],
    &[1, 2, 4, 5],
    &[2, 3, 5, 6],
    &[1, 3, 4, 6],
    &[1, 3, 4, 5, 6],
    &[1, 2, 3, 4, 6],
    &[1, 2, 3, 4, 5, 6],
];

const SPECIAL_D: &[&[usize]] = &[&[], &[1, 2, 4, 5], &[2, 3, 5, 6], &[1, 3, 4, 6], &[1, 2, 3, 4, 5, 6]];

/// The special facial sets of a 6-cycle case, sorted like [`crate::facial::FacialFamily`].
pub fn special_sets(case: char) -> Vec<Subset> {
    let raw = match case {
        'a' => SPECIAL_A,
        'b' => SPECIAL_B,
        'c' => SPECIAL_C,
        'd' => SPECIAL_D,
        _ => panic!("unknown case {case}"),
    };
    let mut v: Vec<Subset> = raw.iter().map(|s| Subset::from_indices(s.iter().map(|i| i - 1))).collect();
    v.sort();
    v
}

/// `A₂` with one extra dimension, so that `cc(W·ρ)` is a pointed hexagonal cone.
pub fn a2_hexagonal() -> Result<PolySubcone> {
    let rb = RootBase::build(&fixtures::a2().gcm, &Characteristic::free(1))?;
    PolySubcone::new(&rb, &[vec![rat(1), rat(1), rat(1)]])
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> GoldenCheck {
    GoldenCheck { name: name.into(), pass, detail: detail.into() }
}

fn guarded(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> GoldenCheck {
    match f() {
        Ok((pass, detail)) => check(name, pass, detail),
        Err(e) => check(name, false, e.to_string()),
    }
}

/// Every reference value, each reported as a separate check.
pub fn run_all() -> Vec<GoldenCheck> {
    let mut out = Vec::new();
    for (case, special, all) in COUNTS {
        let rb = fixtures::six_cycle_case(case);
        match enumerate_facial(&rb) {
            Ok(fam) => {
                out.push(check(
                    format!("six-cycle ({case}) counts"),
                    fam.special.len() == special && fam.all.len() == all,
                    format!("{} special, {} facial", fam.special.len(), fam.all.len()),
                ));
                out.push(check(
                    format!("six-cycle ({case}) special list"),
                    fam.special == special_sets(case),
                    fam.special.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "),
                ));
            }
            Err(e) => out.push(check(format!("six-cycle ({case})"), false, e.to_string())),
        }
    }
    out.push(guarded("degenerate affine A1: Z = K = ray of h1+h2", || {
        let rb = fixtures::affine_a1_degenerate();
        let z = ImagCone::new(&rb)?;
        let delta = add(&rb.hvec(0), &rb.hvec(1));
        let want = PolyCone::from_generators(rb.dim, std::slice::from_ref(&delta), &[])?;
        let k = z.k_cone()?;
        let s1 = z.tits.group.simple(0);
        let s2 = z.tits.group.simple(1);
        let fixed = z.tits.group.act_h(&rb, &s1, &delta) == delta && z.tits.group.act_h(&rb, &s2, &delta) == delta;
        Ok((k == want && fixed, format!("K has {} generator(s), W fixes h1+h2: {fixed}", k.generators().len())))
    }));
    for (case, size) in [('b', 17), ('d', 5)] {
        out.push(guarded(&format!("six-cycle ({case}) Tits cross section"), || {
            let t = TitsCone::new(&fixtures::six_cycle_case(case))?;
            let cs = tits_cross_section(&t);
            let types_ok = cs.entries.iter().all(|e| e.types.lower.inter(e.types.upper).is_empty());
            Ok((cs.len() == size && types_ok, format!("{} entries", cs.len())))
        }));
    }
    out.push(guarded("Tits cone: R(∅) has type I", || {
        let t = TitsCone::new(&fixtures::six_cycle_case('c'))?;
        let cs = tits_cross_section(&t);
        let top = cs.entries.iter().find(|e| e.label == Subset::EMPTY.to_string());
        let n = t.rb.n();
        Ok((top.is_some_and(|e| e.types.full() == Subset::full(n)), format!("{top:?}")))
    }));
    out.push(guarded("A2 hexagonal cone: whole cone has lower type ∅ and upper type I", || {
        let y = a2_hexagonal()?;
        let top = y.lattice.top();
        let t = y.type_maps(top)?;
        Ok((t.lower.is_empty() && t.upper == Subset::full(2), format!("lower {} upper {}", t.lower, t.upper)))
    }));
    out.push(guarded("A2 hexagonal cone: (1, Y) is the unit of the Renner monoid", || {
        let y = a2_hexagonal()?;
        let r = y.renner();
        let one = r.make(&y.tits.group.identity(), y.lattice.top());
        let ok = one == r.one() && r.elements().iter().all(|&e| r.mul(one, e) == e && r.mul(e, one) == e);
        Ok((ok, format!("{} classes", r.elements().len())))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_match_counts() {
        for (case, special, _) in COUNTS {
            assert_eq!(special_sets(case).len(), special);
        }
    }

    #[test]
    fn all_pass() {
        for c in run_all() {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }
}
