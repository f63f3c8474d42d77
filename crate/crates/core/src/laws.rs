//! Identities a tridendriform carrier must satisfy, phrased over any
//! [`TriTarget`]. Each check returns the names of the violated laws.

use alloc::vec::Vec;

use crate::series::{PreLie, TriTarget};
use crate::Result;

fn check<T: TriTarget>(out: &mut Vec<&'static str>, name: &'static str, lhs: T::Elem, rhs: T::Elem) {
    if lhs != rhs {
        out.push(name);
    }
}

/// Axioms (A1)–(A7) and associativity of `*`.
///
/// (A3) reads `a ≻ (b ≻ c) = (a * b) ≻ c`.
pub fn tridendriform_axioms<T: TriTarget>(t: &T, a: &T::Elem, b: &T::Elem, c: &T::Elem) -> Result<Vec<&'static str>> {
    let mut bad = Vec::new();
    check::<T>(&mut bad, "A1", t.prec(&t.prec(a, b)?, c)?, t.prec(a, &t.star(b, c)?)?);
    check::<T>(&mut bad, "A2", t.prec(&t.succ(a, b)?, c)?, t.succ(a, &t.prec(b, c)?)?);
    check::<T>(&mut bad, "A3", t.succ(a, &t.succ(b, c)?)?, t.succ(&t.star(a, b)?, c)?);
    check::<T>(&mut bad, "A4", t.dot(&t.dot(a, b)?, c)?, t.dot(a, &t.dot(b, c)?)?);
    check::<T>(&mut bad, "A5", t.dot(&t.succ(a, b)?, c)?, t.succ(a, &t.dot(b, c)?)?);
    check::<T>(&mut bad, "A6", t.dot(&t.prec(a, b)?, c)?, t.dot(a, &t.succ(b, c)?)?);
    check::<T>(&mut bad, "A7", t.prec(&t.dot(a, b)?, c)?, t.dot(a, &t.prec(b, c)?)?);
    check::<T>(&mut bad, "star-assoc", t.star(&t.star(a, b)?, c)?, t.star(a, &t.star(b, c)?)?);
    Ok(bad)
}

/// Dendriform axioms for `A_L = (⪯, ≻)` and `A_R = (≺, ≽)`.
pub fn dendriform_halves<T: TriTarget>(t: &T, a: &T::Elem, b: &T::Elem, c: &T::Elem) -> Result<Vec<&'static str>> {
    let mut bad = Vec::new();
    let assoc = |x: &T::Elem, y: &T::Elem| t.star(x, y);
    // A_L
    check::<T>(&mut bad, "A_L-1", t.preceq(&t.preceq(a, b)?, c)?, t.preceq(a, &assoc(b, c)?)?);
    check::<T>(&mut bad, "A_L-2", t.preceq(&t.succ(a, b)?, c)?, t.succ(a, &t.preceq(b, c)?)?);
    check::<T>(&mut bad, "A_L-3", t.succ(a, &t.succ(b, c)?)?, t.succ(&assoc(a, b)?, c)?);
    // A_R
    check::<T>(&mut bad, "A_R-1", t.prec(&t.prec(a, b)?, c)?, t.prec(a, &assoc(b, c)?)?);
    check::<T>(&mut bad, "A_R-2", t.prec(&t.succeq(a, b)?, c)?, t.succeq(a, &t.prec(b, c)?)?);
    check::<T>(&mut bad, "A_R-3", t.succeq(a, &t.succeq(b, c)?)?, t.succeq(&assoc(a, b)?, c)?);
    Ok(bad)
}

/// Left pre-Lie for `▷`, `▷̲`; right pre-Lie for `◁`, `◁̲`.
pub fn prelie_identities<T: TriTarget>(t: &T, a: &T::Elem, b: &T::Elem, c: &T::Elem) -> Result<Vec<&'static str>> {
    let mut bad = Vec::new();
    for flavor in PreLie::ALL {
        let p = |x: &T::Elem, y: &T::Elem| t.prelie(x, y, flavor);
        let (lhs, rhs) = if flavor.is_left() {
            // (a▷b)▷c − a▷(b▷c) = (b▷a)▷c − b▷(a▷c)
            (t.sub(&p(&p(a, b)?, c)?, &p(a, &p(b, c)?)?), t.sub(&p(&p(b, a)?, c)?, &p(b, &p(a, c)?)?))
        } else {
            // (a◁b)◁c − a◁(b◁c) = (a◁c)◁b − a◁(c◁b)
            (t.sub(&p(&p(a, b)?, c)?, &p(a, &p(b, c)?)?), t.sub(&p(&p(a, c)?, b)?, &p(a, &p(c, b)?)?))
        };
        let name = match flavor {
            PreLie::Left => "pre-Lie ▷",
            PreLie::Right => "pre-Lie ◁",
            PreLie::LeftUnder => "pre-Lie ▷̲",
            PreLie::RightUnder => "pre-Lie ◁̲",
        };
        check::<T>(&mut bad, name, lhs, rhs);
    }
    Ok(bad)
}

/// Post-Lie axioms for `(⋄, [·,·]_·)`:
/// `a⋄[b,c] = [a⋄b, c] + [b, a⋄c]` and
/// `[a,b]⋄c = a⋄(b⋄c) − (a⋄b)⋄c − b⋄(a⋄c) + (b⋄a)⋄c`.
pub fn postlie_axioms<T: TriTarget>(t: &T, a: &T::Elem, b: &T::Elem, c: &T::Elem) -> Result<Vec<&'static str>> {
    let mut bad = Vec::new();
    let br = |x: &T::Elem, y: &T::Elem| t.dot_bracket(x, y);
    let dm = |x: &T::Elem, y: &T::Elem| t.diamond(x, y);
    let lhs = dm(a, &br(b, c)?)?;
    let rhs = t.add(&br(&dm(a, b)?, c)?, &br(b, &dm(a, c)?)?);
    check::<T>(&mut bad, "post-Lie derivation", lhs, rhs);
    let lhs = dm(&br(a, b)?, c)?;
    let rhs = t.add(
        &t.sub(&dm(a, &dm(b, c)?)?, &dm(&dm(a, b)?, c)?),
        &t.sub(&dm(&dm(b, a)?, c)?, &dm(b, &dm(a, c)?)?),
    );
    check::<T>(&mut bad, "post-Lie associator", lhs, rhs);
    // the bracket itself is Lie: Jacobi
    let jac = t.add(&t.add(&br(a, &br(b, c)?)?, &br(b, &br(c, a)?)?), &br(c, &br(a, b)?)?);
    check::<T>(&mut bad, "Jacobi [·,·]_·", jac, t.zero());
    Ok(bad)
}

/// The brackets of `*`, `▷` and `▷̲` coincide; `▷ = ⋄ + ·` and `▷̲ = ⋄ − ·ᵒᵖ`;
/// `L_{a≻} L_{b≻} = L_{(a*b)≻}`.
pub fn bracket_and_decompositions<T: TriTarget>(t: &T, a: &T::Elem, b: &T::Elem, c: &T::Elem) -> Result<Vec<&'static str>> {
    let mut bad = Vec::new();
    let star_br = t.sub(&t.star(a, b)?, &t.star(b, a)?);
    let left_br = t.sub(&t.prelie(a, b, PreLie::Left)?, &t.prelie(b, a, PreLie::Left)?);
    let under_br = t.sub(&t.prelie(a, b, PreLie::LeftUnder)?, &t.prelie(b, a, PreLie::LeftUnder)?);
    check::<T>(&mut bad, "bracket * = ▷", star_br.clone(), left_br);
    check::<T>(&mut bad, "bracket * = ▷̲", star_br, under_br);
    let dmd = t.diamond(a, b)?;
    check::<T>(&mut bad, "▷ = ⋄ + ·", t.prelie(a, b, PreLie::Left)?, t.add(&dmd, &t.dot(a, b)?));
    check::<T>(&mut bad, "▷̲ = ⋄ − ·ᵒᵖ", t.prelie(a, b, PreLie::LeftUnder)?, t.sub(&dmd, &t.dot(b, a)?));
    check::<T>(&mut bad, "L_a≻ L_b≻ = L_(a*b)≻", t.succ(a, &t.succ(b, c)?)?, t.succ(&t.star(a, b)?, c)?);
    Ok(bad)
}

/// Every law above, concatenated.
pub fn all_laws<T: TriTarget>(t: &T, a: &T::Elem, b: &T::Elem, c: &T::Elem) -> Result<Vec<&'static str>> {
    let mut bad = tridendriform_axioms(t, a, b, c)?;
    bad.extend(dendriform_halves(t, a, b, c)?);
    bad.extend(prelie_identities(t, a, b, c)?);
    bad.extend(postlie_axioms(t, a, b, c)?);
    bad.extend(bracket_and_decompositions(t, a, b, c)?);
    Ok(bad)
}
