//! The bigraded exterior algebra on `n` holomorphic generators and their
//! conjugates, with exact scalar coefficients.
//!
//! Monomials are pairs of bitmasks `(I, J)` standing for
//! `phi_I ∧ phibar_J` with indices ascending and all unbarred factors before
//! all barred ones. Signs of products come from permutation parity, so
//! matrices built from this module are reproducible byte-for-byte.

use crate::scalar::{from_int, Scalar};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Basis monomial `phi_I ∧ phibar_J` as `(mask I, mask J)`.
pub type Monomial = (u32, u32);

/// A single exterior generator: `barred` selects the conjugate copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Letter {
    pub barred: bool,
    pub index: u8,
}

impl Letter {
    pub fn phi(index: u8) -> Self {
        Letter {
            barred: false,
            index,
        }
    }

    pub fn phibar(index: u8) -> Self {
        Letter {
            barred: true,
            index,
        }
    }

    pub fn conj(self) -> Self {
        Letter {
            barred: !self.barred,
            index: self.index,
        }
    }
}

/// The letters of a monomial in canonical order.
pub fn letters(m: Monomial) -> Vec<Letter> {
    let mut out = Vec::new();
    for i in 0..32 {
        if m.0 & (1 << i) != 0 {
            out.push(Letter::phi(i));
        }
    }
    for i in 0..32 {
        if m.1 & (1 << i) != 0 {
            out.push(Letter::phibar(i));
        }
    }
    out
}

/// Bidegree `(p, q)` of a monomial.
pub fn bidegree(m: Monomial) -> (u32, u32) {
    (m.0.count_ones(), m.1.count_ones())
}

/// Sort a written letter sequence into the canonical monomial, tracking the
/// permutation parity. `None` when a letter repeats (the wedge is zero).
pub fn canonicalize(seq: &[Letter]) -> Option<(i32, Monomial)> {
    let mut inversions = 0usize;
    for (i, a) in seq.iter().enumerate() {
        for b in &seq[i + 1..] {
            if a == b {
                return None;
            }
            if b < a {
                inversions += 1;
            }
        }
    }
    let mut mono: Monomial = (0, 0);
    for l in seq {
        let mask = if l.barred { &mut mono.1 } else { &mut mono.0 };
        *mask |= 1 << l.index;
    }
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, mono))
}

/// Product of two basis monomials: `None` if zero, else the sign and the
/// canonical result.
pub fn wedge_monomials(a: Monomial, b: Monomial) -> Option<(i32, Monomial)> {
    if a.0 & b.0 != 0 || a.1 & b.1 != 0 {
        return None;
    }
    // Both halves are internally sorted; only cross pairs can invert.
    let la = letters(a);
    let lb = letters(b);
    let mut inversions = 0usize;
    for x in &la {
        for y in &lb {
            if y < x {
                inversions += 1;
            }
        }
    }
    let mono = (a.0 | b.0, a.1 | b.1);
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, mono))
}

/// Exact linear combination of monomials. Zero coefficients are pruned, so
/// structural equality is form equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Form {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    pub fn one() -> Self {
        Form::monomial((0, 0), from_int(1))
    }

    pub fn monomial(m: Monomial, coeff: Scalar) -> Self {
        let mut f = Form::default();
        f.add_term(m, coeff);
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Scalar::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (&m, c) in other.terms() {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (&m, c) in other.terms() {
            out.add_term(m, -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Form {
        let mut out = Form::default();
        for (&m, c) in self.terms() {
            out.add_term(m, c.clone() * s.clone());
        }
        out
    }

    /// Graded-commutative product.
    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::default();
        for (&ma, ca) in self.terms() {
            for (&mb, cb) in other.terms() {
                if let Some((sign, m)) = wedge_monomials(ma, mb) {
                    out.add_term(m, ca.clone() * cb.clone() * from_int(sign.into()));
                }
            }
        }
        out
    }

    /// Complex conjugation: antilinear, swaps each letter with its conjugate.
    pub fn conj(&self) -> Form {
        let mut out = Form::default();
        for (&(mi, mj), c) in self.terms() {
            let seq: Vec<Letter> = letters((mi, mj)).into_iter().map(Letter::conj).collect();
            let (sign, mono) = canonicalize(&seq).expect("conjugation never repeats letters");
            out.add_term(mono, c.conj() * from_int(sign.into()));
        }
        out
    }

    /// Total degree, if the form is homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut deg = None;
        for (&m, _) in self.terms() {
            let (p, q) = bidegree(m);
            match deg {
                None => deg = Some(p + q),
                Some(d) if d == p + q => {}
                _ => return None,
            }
        }
        deg
    }
}

/// Evaluate a 2-form on the pair of dual basis vectors named by two letters.
pub fn eval_two_form(form: &Form, x: Letter, y: Letter) -> Scalar {
    let mut acc = Scalar::zero();
    for (&m, c) in form.terms() {
        let ls = letters(m);
        if ls.len() != 2 {
            continue;
        }
        if ls[0] == x && ls[1] == y {
            acc += c.clone();
        }
        if ls[0] == y && ls[1] == x {
            acc -= c.clone();
        }
    }
    acc
}

/// The full bigraded monomial basis for a fixed number of generators, with
/// the index tables needed to move between forms and coordinate vectors.
pub struct WedgeAlgebra {
    n: usize,
    basis: BTreeMap<(i32, i32), Vec<Monomial>>,
    position: BTreeMap<Monomial, usize>,
}

impl WedgeAlgebra {
    pub fn new(n: usize) -> Self {
        assert!(n <= 16, "generator count out of range");
        let full = (1u32 << n) - 1;
        let mut basis: BTreeMap<(i32, i32), Vec<Monomial>> = BTreeMap::new();
        let mut position = BTreeMap::new();
        for mask_i in 0..=full {
            for mask_j in 0..=full {
                let m = (mask_i, mask_j);
                let (p, q) = bidegree(m);
                basis.entry((p as i32, q as i32)).or_default().push(m);
            }
        }
        for list in basis.values_mut() {
            list.sort_unstable();
            for (idx, &m) in list.iter().enumerate() {
                position.insert(m, idx);
            }
        }
        WedgeAlgebra { n, basis, position }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn basis(&self, p: i32, q: i32) -> &[Monomial] {
        self.basis.get(&(p, q)).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, p: i32, q: i32) -> usize {
        self.basis(p, q).len()
    }

    /// The unique top monomial `phi_{1..n} ∧ phibar_{1..n}`.
    pub fn top_monomial(&self) -> Monomial {
        let full = (1u32 << self.n) - 1;
        (full, full)
    }

    /// Coefficient of the top monomial; the model-level stand-in for
    /// integration over a compact quotient (meaningful on unimodular models).
    pub fn top_coefficient(&self, form: &Form) -> Scalar {
        form.coeff(self.top_monomial())
    }

    /// Coordinates of the `(p,q)`-homogeneous part of a form.
    pub fn coords(&self, p: i32, q: i32, form: &Form) -> Vec<Scalar> {
        let list = self.basis(p, q);
        let mut v = vec![Scalar::zero(); list.len()];
        for (&m, c) in form.terms() {
            let (mp, mq) = bidegree(m);
            if (mp as i32, mq as i32) == (p, q) {
                v[self.position[&m]] = c.clone();
            }
        }
        v
    }

    /// Form from coordinates in the `(p,q)` basis.
    pub fn form_from_coords(&self, p: i32, q: i32, coords: &[Scalar]) -> Form {
        let list = self.basis(p, q);
        assert_eq!(coords.len(), list.len(), "coordinate length mismatch");
        let mut f = Form::default();
        for (i, c) in coords.iter().enumerate() {
            f.add_term(list[i], c.clone());
        }
        f
    }
}

/// Extend `d` from the generators to any form by the graded Leibniz rule.
///
/// `d_phi[k]` and `d_phibar[k]` are the differentials of the letters.
pub fn d_form(form: &Form, d_phi: &[Form], d_phibar: &[Form]) -> Form {
    let mut out = Form::default();
    for (&mono, coeff) in form.terms() {
        let ls = letters(mono);
        for (i, l) in ls.iter().enumerate() {
            let dl = if l.barred {
                &d_phibar[l.index as usize]
            } else {
                &d_phi[l.index as usize]
            };
            if dl.is_zero() {
                continue;
            }
            let (_, prefix) = canonicalize(&ls[..i]).expect("prefix is already canonical");
            let (_, suffix) = canonicalize(&ls[i + 1..]).expect("suffix is already canonical");
            let pos_sign = if i % 2 == 0 { 1 } else { -1 };
            for (&dm, dc) in dl.terms() {
                let Some((s1, w1)) = wedge_monomials(prefix, dm) else {
                    continue;
                };
                let Some((s2, w2)) = wedge_monomials(w1, suffix) else {
                    continue;
                };
                out.add_term(
                    w2,
                    coeff.clone() * dc.clone() * from_int((pos_sign * s1 * s2).into()),
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::from_int;

    fn phi(i: u8) -> Form {
        Form::monomial((1 << i, 0), from_int(1))
    }

    fn phibar(i: u8) -> Form {
        Form::monomial((0, 1 << i), from_int(1))
    }

    #[test]
    fn wedge_unit_and_alternation() {
        let x = phi(0).wedge(&phibar(1)).scale(&from_int(3));
        assert_eq!(x.wedge(&Form::one()), x);
        assert!(phi(0).wedge(&phi(0)).is_zero());
    }

    #[test]
    fn graded_commutativity_on_monomials() {
        // Odd degrees anticommute, even degrees commute.
        let a = phi(0);
        let b = phibar(1);
        assert_eq!(a.wedge(&b), b.wedge(&a).scale(&from_int(-1)));
        let ab = a.wedge(&b);
        let cd = phi(1).wedge(&phibar(0));
        assert_eq!(ab.wedge(&cd), cd.wedge(&ab));
    }

    #[test]
    fn associativity_spot_check() {
        let (a, b, c) = (phi(0), phi(2), phibar(1));
        assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn conjugation_is_an_involution() {
        let f = phi(0)
            .wedge(&phibar(1))
            .scale(&crate::scalar::gaussian(1, 2, -1, 3));
        assert_eq!(f.conj().conj(), f);
        // conj(phi ∧ phibar) picks up the reordering sign.
        let g = phi(0).wedge(&phibar(0));
        assert_eq!(g.conj(), g.scale(&from_int(-1)));
    }

    #[test]
    fn leibniz_on_a_product() {
        // d(phi3) = -phi1 ∧ phi2 on three generators; everything else closed.
        let n = 3;
        let mut d_phi = vec![Form::zero(); n];
        d_phi[2] = phi(0).wedge(&phi(1)).scale(&from_int(-1));
        let d_phibar: Vec<Form> = d_phi.iter().map(Form::conj).collect();

        let algebra = WedgeAlgebra::new(n);
        // d is a graded derivation on every pair of basis monomials.
        for (p1, q1) in [(1, 0), (0, 1), (1, 1)] {
            for (p2, q2) in [(1, 0), (1, 1)] {
                for &m1 in algebra.basis(p1, q1) {
                    for &m2 in algebra.basis(p2, q2) {
                        let a = Form::monomial(m1, from_int(1));
                        let b = Form::monomial(m2, from_int(1));
                        let lhs = d_form(&a.wedge(&b), &d_phi, &d_phibar);
                        let sign = if (p1 + q1) % 2 == 0 { 1 } else { -1 };
                        let rhs = d_form(&a, &d_phi, &d_phibar).wedge(&b).add(
                            &a.wedge(&d_form(&b, &d_phi, &d_phibar))
                                .scale(&from_int(sign)),
                        );
                        assert_eq!(lhs, rhs, "Leibniz fails on {m1:?} ∧ {m2:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn algebra_dims_are_binomial_products() {
        let algebra = WedgeAlgebra::new(3);
        assert_eq!(algebra.dim(1, 0), 3);
        assert_eq!(algebra.dim(1, 1), 9);
        assert_eq!(algebra.dim(2, 3), 3);
        assert_eq!(algebra.dim(3, 3), 1);
        assert_eq!(algebra.dim(4, 0), 0);
    }

    #[test]
    fn coords_round_trip() {
        let algebra = WedgeAlgebra::new(2);
        let f = phi(0)
            .wedge(&phibar(1))
            .scale(&from_int(5))
            .add(&phi(1).wedge(&phibar(0)));
        let coords = algebra.coords(1, 1, &f);
        assert_eq!(algebra.form_from_coords(1, 1, &coords), f);
    }
}
