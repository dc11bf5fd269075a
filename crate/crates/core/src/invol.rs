//! Twisted involutions, the twisted conjugation action and the invariant
//! `phi`.
//!
//! An element `z` is a twisted involution when `z* = z^{-1}`. A generator
//! `s` acts on such `z` by `s . z = sz` when `sz = zs*` (length moves by 1)
//! and by `s . z = s z s*` otherwise (length moves by 2). The invariant
//! `phi` counts, along any descending path to the identity, the steps of the
//! first kind; it does not depend on the path taken, which the test suite
//! and [`PhiTable::check_descent_independence`] verify exhaustively.

use crate::error::Result;
use crate::store::{ElementStore, GroupElement, Side};

pub fn is_twisted_involution(store: &ElementStore, w: GroupElement) -> bool {
    store.star(w) == store.inverse(w)
}

/// All twisted involutions of the stored ball, sorted by length and then by
/// canonical word.
pub struct TwistedInvolutionSet {
    members: Vec<GroupElement>,
    is_member: Vec<bool>,
}

impl TwistedInvolutionSet {
    pub fn enumerate(store: &ElementStore) -> Self {
        let mut members: Vec<GroupElement> = store
            .elements()
            .filter(|&w| is_twisted_involution(store, w))
            .collect();
        members.sort_by(|&a, &b| {
            (store.length(a), store.word(a)).cmp(&(store.length(b), store.word(b)))
        });
        let mut is_member = vec![false; store.len()];
        for &z in &members {
            is_member[z.index()] = true;
        }
        TwistedInvolutionSet { members, is_member }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: GroupElement) -> bool {
        self.is_member[w.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.members.iter().copied()
    }
}

/// The twisted conjugation action of the generator `s` on `z`: `sz` when
/// `sz = zs*`, otherwise `s z s*`. Errors when the image leaves the ball.
pub fn twisted_action(store: &ElementStore, s: usize, z: GroupElement) -> Result<GroupElement> {
    debug_assert!(is_twisted_involution(store, z));
    let s_star = store.presentation().star_gen(s);
    // For a twisted involution, s is a left descent exactly when s* is a
    // right descent, so sz and zs* always move in the same direction.
    debug_assert_eq!(
        store.descends(z, s, Side::Left),
        store.descends(z, s_star, Side::Right)
    );
    let sz = store.mul_gen(z, s, Side::Left)?;
    let zs = store.mul_gen(z, s_star, Side::Right)?;
    let image = if sz == zs {
        sz
    } else {
        store.mul_gen(sz, s_star, Side::Right)?
    };
    debug_assert!(is_twisted_involution(store, image));
    Ok(image)
}

/// Memoized values of `phi` on the enumerated twisted involutions.
///
/// `phi(1) = 0`; for `z != 1` pick any left descent `s` of `z`: if
/// `sz = zs*` then `phi(z) = phi(sz) + 1`, otherwise `phi(z) = phi(szs*)`.
/// The table is built with the smallest descent for determinism.
pub struct PhiTable {
    values: Vec<Option<u32>>,
}

impl PhiTable {
    pub fn build(store: &ElementStore, invols: &TwistedInvolutionSet) -> Self {
        let mut values: Vec<Option<u32>> = vec![None; store.len()];
        for z in invols.iter() {
            if z == store.identity() {
                values[z.index()] = Some(0);
                continue;
            }
            let s = store
                .descents(z, Side::Left)
                .next()
                .expect("a nonidentity element has a left descent");
            let v = match phi_step(store, z, s) {
                PhiStep::Doubled(shorter) => values[shorter.index()]
                    .expect("twisted involutions are processed by increasing length"),
                PhiStep::Halved(shorter) => {
                    values[shorter.index()]
                        .expect("twisted involutions are processed by increasing length")
                        + 1
                }
            };
            values[z.index()] = Some(v);
        }
        PhiTable { values }
    }

    /// Value on a twisted involution; panics on other elements.
    pub fn phi(&self, z: GroupElement) -> u32 {
        self.values[z.index()].expect("phi is only defined on twisted involutions")
    }

    pub fn max_phi(&self) -> u32 {
        self.values.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Recomputes every value along every available descent and checks that
    /// all choices agree with the stored table.
    pub fn check_descent_independence(
        &self,
        store: &ElementStore,
        invols: &TwistedInvolutionSet,
    ) -> bool {
        for z in invols.iter() {
            if z == store.identity() {
                continue;
            }
            for s in store.descents(z, Side::Left) {
                let candidate = match phi_step(store, z, s) {
                    PhiStep::Doubled(shorter) => self.phi(shorter),
                    PhiStep::Halved(shorter) => self.phi(shorter) + 1,
                };
                if candidate != self.phi(z) {
                    return false;
                }
            }
        }
        true
    }
}

enum PhiStep {
    /// `sz = zs*`: the action halves to `sz`, one step of the counted kind.
    Halved(GroupElement),
    /// `sz != zs*`: conjugation to `szs*`, phi unchanged.
    Doubled(GroupElement),
}

/// One descending step of the twisted action; `s` must be a left descent of
/// `z`, so every product stays inside the ball.
fn phi_step(store: &ElementStore, z: GroupElement, s: usize) -> PhiStep {
    debug_assert!(store.descends(z, s, Side::Left));
    let s_star = store.presentation().star_gen(s);
    let sz = store.mul_gen(z, s, Side::Left).expect("descent stays in range");
    let zs = store
        .mul_gen(z, s_star, Side::Right)
        .expect("descent stays in range");
    if sz == zs {
        PhiStep::Halved(sz)
    } else {
        let szs = store
            .mul_gen(sz, s_star, Side::Right)
            .expect("length at most l(z) stays in range");
        PhiStep::Doubled(szs)
    }
}
