//! The Iwahori-Hecke algebra in the `T` basis over `Z[u]`, truncated to the
//! stored ball, and its module spanned by twisted involutions.
//!
//! The algebra relations are `T_w T_{w'} = T_{ww'}` when lengths add and
//! `(T_s + 1)(T_s - u^2) = 0`. On the module side a generator acts on a
//! basis vector `a_z` by one of four rules, split on whether `sz = zs*` and
//! on the length direction:
//!
//! - `sz = zs* > z`:  `T_s a_z = u a_z + (u+1) a_{sz}`
//! - `sz = zs* < z`:  `T_s a_z = (u^2-u-1) a_z + (u^2-u) a_{sz}`
//! - `sz != zs* > z`: `T_s a_z = a_{szs*}`
//! - `sz != zs* < z`: `T_s a_z = (u^2-1) a_z + u^2 a_{szs*}`
//!
//! All coefficients stay in `Z[u]`; support leaving the ball is an error,
//! not a silent truncation (with one explicitly lossy exception used by the
//! boundary-tolerant stability check).

use std::collections::BTreeMap;

use crate::error::Result;
use crate::invol::{is_twisted_involution, TwistedInvolutionSet};
use crate::poly::IntPolynomial;
use crate::report::CheckReport;
use crate::store::{ElementStore, GroupElement, Side};

macro_rules! sparse_combination {
    ($(#[$doc:meta])* $name:ident, $basis_tag:literal) => {
        $(#[$doc])*
        #[derive(Clone, PartialEq, Eq, Default)]
        pub struct $name {
            terms: BTreeMap<GroupElement, IntPolynomial>,
        }

        impl $name {
            pub fn zero() -> Self {
                Self::default()
            }

            /// The basis element indexed by `w`, with coefficient 1.
            pub fn basis(w: GroupElement) -> Self {
                let mut terms = BTreeMap::new();
                terms.insert(w, IntPolynomial::one());
                Self { terms }
            }

            pub fn coeff(&self, w: GroupElement) -> IntPolynomial {
                self.terms.get(&w).cloned().unwrap_or_else(IntPolynomial::zero)
            }

            pub fn support_len(&self) -> usize {
                self.terms.len()
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn iter(&self) -> impl Iterator<Item = (GroupElement, &IntPolynomial)> + '_ {
                self.terms.iter().map(|(&w, c)| (w, c))
            }

            /// Adds `c * basis(w)`, dropping the entry if it cancels.
            pub fn add_term(&mut self, w: GroupElement, c: &IntPolynomial) {
                if c.is_zero() {
                    return;
                }
                let entry = self.terms.entry(w).or_insert_with(IntPolynomial::zero);
                *entry = &*entry + c;
                if entry.is_zero() {
                    self.terms.remove(&w);
                }
            }

            pub fn add_scaled(&mut self, other: &Self, c: &IntPolynomial) {
                for (w, a) in other.iter() {
                    self.add_term(w, &(a * c));
                }
            }

            pub fn scaled(&self, c: &IntPolynomial) -> Self {
                let mut out = Self::zero();
                out.add_scaled(self, c);
                out
            }

            /// Serialized form: (canonical word, coefficient array) pairs,
            /// ready for JSON export.
            pub fn to_rows(&self, store: &ElementStore) -> Vec<(Vec<u8>, Vec<String>)> {
                self.terms
                    .iter()
                    .map(|(&w, c)| {
                        (
                            store.word(w).to_vec(),
                            c.coeffs().iter().map(|x| x.to_string()).collect(),
                        )
                    })
                    .collect()
            }
        }

        impl std::fmt::Debug for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                if self.terms.is_empty() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (w, c) in &self.terms {
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    write!(f, "({c})*{}{:?}", $basis_tag, w)?;
                }
                Ok(())
            }
        }
    };
}

sparse_combination!(
    /// A finite `Z[u]`-linear combination of algebra basis elements `T_w`.
    HeckeElement,
    "T"
);

sparse_combination!(
    /// A finite `Z[u]`-linear combination of module basis vectors `a_z`,
    /// supported on twisted involutions.
    ModuleVector,
    "a"
);

fn u_poly() -> IntPolynomial {
    IntPolynomial::monomial(1, 1)
}

fn u2_poly() -> IntPolynomial {
    IntPolynomial::monomial(1, 2)
}

/// Multiplies by `T_s` on the chosen side: ascents send `T_w` to `T_{ws}`,
/// descents expand through the quadratic relation into
/// `u^2 T_{ws} + (u^2-1) T_w`.
pub fn hecke_mul_gen(
    store: &ElementStore,
    h: &HeckeElement,
    s: usize,
    side: Side,
) -> Result<HeckeElement> {
    let u2 = u2_poly();
    let u2_minus_1 = &u2 - &IntPolynomial::one();
    let mut out = HeckeElement::zero();
    for (w, c) in h.iter() {
        if store.descends(w, s, side) {
            let ws = store.mul_gen(w, s, side).expect("descent stays in range");
            out.add_term(ws, &(c * &u2));
            out.add_term(w, &(c * &u2_minus_1));
        } else {
            let ws = store.mul_gen(w, s, side)?;
            out.add_term(ws, c);
        }
    }
    Ok(out)
}

/// Product of two algebra elements; the right factor is expanded along
/// reduced words, one generator at a time.
pub fn hecke_mul(store: &ElementStore, h1: &HeckeElement, h2: &HeckeElement) -> Result<HeckeElement> {
    let mut acc = HeckeElement::zero();
    for (w, c) in h2.iter() {
        let mut cur = h1.clone();
        for &s in store.word(w) {
            cur = hecke_mul_gen(store, &cur, s as usize, Side::Right)?;
        }
        acc.add_scaled(&cur, c);
    }
    Ok(acc)
}

/// Coefficient of `T_w` in an algebra element.
pub fn coeff_t(h: &HeckeElement, w: GroupElement) -> IntPolynomial {
    h.coeff(w)
}

fn module_case(
    store: &ElementStore,
    z: GroupElement,
    s: usize,
) -> Result<(bool, GroupElement)> {
    // Returns (sides agree, target): target is sz when sz = zs*, else szs*.
    let s_star = store.presentation().star_gen(s);
    let sz = store.mul_gen(z, s, Side::Left)?;
    let zs = store.mul_gen(z, s_star, Side::Right)?;
    if sz == zs {
        Ok((true, sz))
    } else {
        Ok((false, store.mul_gen(sz, s_star, Side::Right)?))
    }
}

/// Applies `T_s` to a module vector by the four-case rule.
pub fn module_apply_gen(
    store: &ElementStore,
    m: &ModuleVector,
    s: usize,
) -> Result<ModuleVector> {
    let mut out = ModuleVector::zero();
    for (z, c) in m.iter() {
        debug_assert!(is_twisted_involution(store, z));
        let descending = store.descends(z, s, Side::Left);
        let (agree, target) = module_case(store, z, s)?;
        match (agree, descending) {
            (true, false) => {
                // u a_z + (u+1) a_{sz}
                out.add_term(z, &(c * &u_poly()));
                out.add_term(target, &(c * &IntPolynomial::from_coeffs(&[1i64, 1])));
            }
            (true, true) => {
                // (u^2-u-1) a_z + (u^2-u) a_{sz}
                out.add_term(z, &(c * &IntPolynomial::from_coeffs(&[-1i64, -1, 1])));
                out.add_term(target, &(c * &IntPolynomial::from_coeffs(&[0i64, -1, 1])));
            }
            (false, false) => {
                // a_{szs*}
                out.add_term(target, c);
            }
            (false, true) => {
                // (u^2-1) a_z + u^2 a_{szs*}
                out.add_term(z, &(c * &IntPolynomial::from_coeffs(&[-1i64, 0, 1])));
                out.add_term(target, &(c * &u2_poly()));
            }
        }
    }
    Ok(out)
}

/// Same as [`module_apply_gen`] but silently drops basis targets that leave
/// the ball. Only meaningful for boundary-tolerant checks; coefficients on
/// elements of length at most `bound - 2` are still exact.
pub fn module_apply_gen_truncating(
    store: &ElementStore,
    m: &ModuleVector,
    s: usize,
) -> ModuleVector {
    let mut out = ModuleVector::zero();
    for (z, c) in m.iter() {
        let one_term = ModuleVector::basis(z).scaled(c);
        match module_apply_gen(store, &one_term, s) {
            Ok(part) => {
                for (w, a) in part.iter() {
                    out.add_term(w, a);
                }
            }
            Err(_) => {
                // The image involves an out-of-ball vector; keep the in-ball
                // diagonal part, which is exact for interior elements.
                if store.descends(z, s, Side::Left) {
                    unreachable!("descending action stays in the ball");
                }
            }
        }
    }
    out
}

/// Applies `T_y` to a module vector by folding the generator action along a
/// reduced word of `y`, rightmost letter first.
pub fn module_apply_word(
    store: &ElementStore,
    y: GroupElement,
    m: &ModuleVector,
) -> Result<ModuleVector> {
    let mut cur = m.clone();
    for &s in store.word(y).iter().rev() {
        cur = module_apply_gen(store, &cur, s as usize)?;
    }
    Ok(cur)
}

/// The coefficient of the identity basis vector `a_1`.
pub fn xi(store: &ElementStore, m: &ModuleVector) -> IntPolynomial {
    m.coeff(store.identity())
}

/// `(a_z : T_y a_1)`, the matrix entry of `T_y` against the identity vector.
pub fn module_coeff(
    store: &ElementStore,
    z: GroupElement,
    y: GroupElement,
) -> Result<IntPolynomial> {
    let image = module_apply_word(store, y, &ModuleVector::basis(store.identity()))?;
    Ok(image.coeff(z))
}

/// `T_s T_{z'} T_{s*}` computed through generator multiplication.
pub fn conjugation_product(
    store: &ElementStore,
    z_prime: GroupElement,
    s: usize,
) -> Result<HeckeElement> {
    debug_assert!(is_twisted_involution(store, z_prime));
    let s_star = store.presentation().star_gen(s);
    let h = hecke_mul_gen(store, &HeckeElement::basis(z_prime), s, Side::Left)?;
    hecke_mul_gen(store, &h, s_star, Side::Right)
}

/// Closed form of [`conjugation_product`], case-split on `sz' = z's*` and
/// the length direction. Used to cross-check the generic multiplication.
pub fn conjugation_closed_form(
    store: &ElementStore,
    z_prime: GroupElement,
    s: usize,
) -> Result<HeckeElement> {
    let s_star = store.presentation().star_gen(s);
    let sz = store.mul_gen(z_prime, s, Side::Left)?;
    let zs = store.mul_gen(z_prime, s_star, Side::Right)?;
    let mut out = HeckeElement::zero();
    let u2 = u2_poly();
    let u2m1 = &u2 - &IntPolynomial::one();
    if sz == zs {
        if !store.descends(z_prime, s, Side::Left) {
            // u^2 T_{z'} + (u^2 - 1) T_{sz'}
            out.add_term(z_prime, &u2);
            out.add_term(sz, &u2m1);
        } else {
            // (u^2 + (u^2-1)^2) T_{z'} + u^2 (u^2-1) T_{sz'}
            out.add_term(z_prime, &(&u2 + &(&u2m1 * &u2m1)));
            out.add_term(sz, &(&u2 * &u2m1));
        }
    } else if !store.descends(z_prime, s, Side::Left) {
        // T_{s z' s*}
        let target = store.mul_gen(sz, s_star, Side::Right)?;
        out.add_term(target, &IntPolynomial::one());
    } else {
        // u^4 T_{sz's*} + (u^2-1)^2 T_{z'} + u^2(u^2-1) T_{sz'} + u^2(u^2-1) T_{z's*}
        let target = store.mul_gen(sz, s_star, Side::Right)?;
        out.add_term(target, &IntPolynomial::monomial(1, 4));
        out.add_term(z_prime, &(&u2m1 * &u2m1));
        out.add_term(sz, &(&u2 * &u2m1));
        out.add_term(zs, &(&u2 * &u2m1));
    }
    Ok(out)
}

/// Pairs `(s, s*)` with `s != s*` generating a finite dihedral subgroup,
/// together with the order `m(s, s*)`; for each the longest element of the
/// subgroup is star-fixed.
pub fn star_dihedral_pairs(store: &ElementStore) -> Vec<(usize, usize, u32)> {
    let p = store.presentation();
    let mut out = Vec::new();
    for s in 0..p.rank() {
        let t = p.star_gen(s);
        if s < t {
            if let Some(m) = p.order(s, t) {
                out.push((s, t, m));
            }
        }
    }
    out
}

/// Longest element of the dihedral subgroup generated by `s` and `t`: the
/// alternating word of length `m(s,t)` starting with `s`.
pub fn dihedral_longest(store: &ElementStore, s: usize, t: usize) -> Result<GroupElement> {
    let m = store
        .presentation()
        .order(s, t)
        .expect("dihedral subgroup must be finite");
    let word: Vec<u8> = (0..m as usize)
        .map(|k| if k % 2 == 0 { s as u8 } else { t as u8 })
        .collect();
    store.element_from_word(&word)
}

fn in_range(store: &ElementStore, needed: u32) -> bool {
    store.is_complete_group() || needed <= store.bound()
}

/// Generator products match their case-split closed forms for every twisted
/// involution in range.
pub fn check_conjugation_closed_forms(
    store: &ElementStore,
    invols: &TwistedInvolutionSet,
) -> CheckReport {
    let mut checked = 0;
    for z in invols.iter() {
        if !in_range(store, store.length(z) + 2) {
            continue;
        }
        for s in 0..store.rank() {
            checked += 1;
            let generic = conjugation_product(store, z, s).expect("sized ball");
            let closed = conjugation_closed_form(store, z, s).expect("sized ball");
            if generic != closed {
                return CheckReport::failed(
                    "conjugation closed forms",
                    checked,
                    format!("mismatch at z' = {:?}, s = {s}", store.word(z)),
                );
            }
        }
    }
    CheckReport::passed("conjugation closed forms", checked)
}

/// Support containment for generators: a basis vector appearing in
/// `T_s a_{z'}` also appears in `T_s T_{z'} T_{s*}`.
pub fn check_generator_support_containment(
    store: &ElementStore,
    invols: &TwistedInvolutionSet,
) -> CheckReport {
    let mut checked = 0;
    for z_prime in invols.iter() {
        if !in_range(store, store.length(z_prime) + 2) {
            continue;
        }
        for s in 0..store.rank() {
            let module_image =
                module_apply_gen(store, &ModuleVector::basis(z_prime), s).expect("sized ball");
            let algebra_image = conjugation_product(store, z_prime, s).expect("sized ball");
            for (z, c) in module_image.iter() {
                checked += 1;
                if !c.is_zero() && algebra_image.coeff(z).is_zero() {
                    return CheckReport::failed(
                        "generator support containment",
                        checked,
                        format!(
                            "a_{:?} appears in T_{s} a_{:?} but T_{:?} is absent from the product",
                            store.word(z),
                            store.word(z_prime),
                            store.word(z)
                        ),
                    );
                }
            }
        }
    }
    CheckReport::passed("generator support containment", checked)
}

/// Support containment for the dihedral longest elements attached to
/// star-swapped generator pairs: a basis vector appearing in `T_sigma a_{z'}`
/// also appears in `T_sigma T_{z'} T_sigma` (the longest element is
/// star-fixed).
pub fn check_dihedral_support_containment(
    store: &ElementStore,
    invols: &TwistedInvolutionSet,
) -> CheckReport {
    let mut checked = 0;
    for (s, t, m) in star_dihedral_pairs(store) {
        let Ok(sigma) = dihedral_longest(store, s, t) else {
            continue;
        };
        debug_assert_eq!(store.star(sigma), sigma);
        debug_assert_eq!(store.length(sigma), m);
        for z_prime in invols.iter() {
            if !in_range(store, store.length(z_prime) + 2 * m) {
                continue;
            }
            let module_image =
                module_apply_word(store, sigma, &ModuleVector::basis(z_prime))
                    .expect("sized ball");
            let t_sigma = HeckeElement::basis(sigma);
            let mid = hecke_mul(store, &t_sigma, &HeckeElement::basis(z_prime))
                .expect("sized ball");
            let algebra_image = hecke_mul(store, &mid, &t_sigma).expect("sized ball");
            for (z, c) in module_image.iter() {
                checked += 1;
                if !c.is_zero() && algebra_image.coeff(z).is_zero() {
                    return CheckReport::failed(
                        "dihedral support containment",
                        checked,
                        format!(
                            "failure at sigma = {:?}, z' = {:?}, z = {:?}",
                            store.word(sigma),
                            store.word(z_prime),
                            store.word(z)
                        ),
                    );
                }
            }
        }
    }
    CheckReport::passed("dihedral support containment", checked)
}

/// `(a_1 : T_sigma a_1) = u^{l(sigma)}` for each star-dihedral longest
/// element in range.
pub fn check_dihedral_identity_coefficient(store: &ElementStore) -> CheckReport {
    let mut checked = 0;
    for (s, t, m) in star_dihedral_pairs(store) {
        if !in_range(store, 2 * m) {
            continue;
        }
        checked += 1;
        let sigma = dihedral_longest(store, s, t).expect("sized ball");
        let image = module_apply_word(store, sigma, &ModuleVector::basis(store.identity()))
            .expect("sized ball");
        let got = xi(store, &image);
        let expected = IntPolynomial::monomial(1, m as usize);
        if got != expected {
            return CheckReport::failed(
                "dihedral identity coefficient",
                checked,
                format!("sigma = {:?}: got {}, expected {}", store.word(sigma), got, expected),
            );
        }
    }
    CheckReport::passed("dihedral identity coefficient", checked)
}

/// `T_y T_{(y*)^{-1}}` computed for one `y`; the product support stays
/// within length `2 l(y)`.
pub fn paired_product(store: &ElementStore, y: GroupElement) -> Result<HeckeElement> {
    let partner = store.inverse(store.star(y));
    hecke_mul(
        store,
        &HeckeElement::basis(y),
        &HeckeElement::basis(partner),
    )
}

/// `[T_1 : T_y T_{(y*)^{-1}}] = u^{2 l(y)}` when `y` is star-fixed, zero
/// otherwise, for all `y` with `l(y) <= max_y_len`.
pub fn check_paired_product_identity_coefficient(
    store: &ElementStore,
    max_y_len: u32,
) -> CheckReport {
    let mut checked = 0;
    for y in store.elements() {
        let l = store.length(y);
        if l > max_y_len || !in_range(store, 2 * l) {
            continue;
        }
        checked += 1;
        let product = paired_product(store, y).expect("sized ball");
        let got = coeff_t(&product, store.identity());
        let expected = if store.star(y) == y {
            IntPolynomial::monomial(1, 2 * l as usize)
        } else {
            IntPolynomial::zero()
        };
        if got != expected {
            return CheckReport::failed(
                "paired product identity coefficient",
                checked,
                format!("y = {:?}: got {}, expected {}", store.word(y), got, expected),
            );
        }
    }
    CheckReport::passed("paired product identity coefficient", checked)
}

/// Support containment against paired products: whenever
/// `(a_z : T_y a_1) != 0`, the basis element `T_z` appears in
/// `T_y T_{(y*)^{-1}}`. Runs over all `y` with `l(y) <= max_y_len`.
pub fn check_module_support_containment(
    store: &ElementStore,
    max_y_len: u32,
) -> CheckReport {
    let mut checked = 0;
    for y in store.elements() {
        let l = store.length(y);
        if l > max_y_len || !in_range(store, 2 * l) {
            continue;
        }
        let image = module_apply_word(store, y, &ModuleVector::basis(store.identity()))
            .expect("sized ball");
        let product = paired_product(store, y).expect("sized ball");
        for (z, c) in image.iter() {
            checked += 1;
            if !c.is_zero() && coeff_t(&product, z).is_zero() {
                return CheckReport::failed(
                    "module support containment",
                    checked,
                    format!(
                        "coefficient of a_{:?} in T_y a_1 is {} for y = {:?}, \
                         yet T_z is absent from the paired product",
                        store.word(z),
                        c,
                        store.word(y)
                    ),
                );
            }
        }
    }
    CheckReport::passed("module support containment", checked)
}

/// Every structure constant of products `T_x T_y` with
/// `l(x) + l(y) <= len_budget` lies in `N[u-1]`.
pub fn check_structure_constant_positivity(
    store: &ElementStore,
    len_budget: u32,
) -> CheckReport {
    assert!(
        store.is_complete_group() || len_budget <= store.bound(),
        "length budget exceeds the stored ball"
    );
    let mut checked = 0;
    for x in store.elements() {
        let lx = store.length(x);
        if lx > len_budget {
            break;
        }
        // Products against every y, memoized along right descents:
        // T_x T_y = (T_x T_{ys}) T_s for the smallest right descent s of y.
        let mut memo: Vec<Option<HeckeElement>> = vec![None; store.len()];
        memo[0] = Some(HeckeElement::basis(x));
        for y in store.elements().skip(1) {
            let ly = store.length(y);
            if lx + ly > len_budget {
                break;
            }
            let s = store
                .descents(y, Side::Right)
                .next()
                .expect("nonidentity element");
            let ys = store.mul_gen(y, s, Side::Right).expect("descent");
            let shorter = memo[ys.index()]
                .as_ref()
                .expect("rows are filled in length order");
            let product =
                hecke_mul_gen(store, shorter, s, Side::Right).expect("budget within ball");
            for (_, c) in product.iter() {
                checked += 1;
                if !c.nonneg_in_u_minus_one() {
                    return CheckReport::failed(
                        "structure constant positivity",
                        checked,
                        format!(
                            "coefficient {} in T_x T_y for x = {:?}, y = {:?}",
                            c,
                            store.word(x),
                            store.word(y)
                        ),
                    );
                }
            }
            memo[y.index()] = Some(product);
        }
    }
    CheckReport::passed("structure constant positivity", checked)
}

/// Boundary-tolerant stability of the all-ones vector: the coefficient of
/// `a_z` in `T_s (sum_z a_z)` equals `u^2` for every interior `z`
/// (`l(z) <= bound - 2`), for every generator.
pub fn check_sum_stability(store: &ElementStore, invols: &TwistedInvolutionSet) -> CheckReport {
    let u2 = u2_poly();
    let mut total = ModuleVector::zero();
    for z in invols.iter() {
        total.add_term(z, &IntPolynomial::one());
    }
    let interior = |l: u32| store.is_complete_group() || l + 2 <= store.bound();
    let mut checked = 0;
    for s in 0..store.rank() {
        let image = module_apply_gen_truncating(store, &total, s);
        for z in invols.iter() {
            if !interior(store.length(z)) {
                continue;
            }
            checked += 1;
            let got = image.coeff(z);
            if got != u2 {
                return CheckReport::failed(
                    "sum stability",
                    checked,
                    format!(
                        "coefficient of a_{:?} under generator {s} is {}",
                        store.word(z),
                        got
                    ),
                );
            }
        }
    }
    CheckReport::passed("sum stability", checked)
}
