//! Bounded enumeration of a Coxeter group.
//!
//! The store holds every element of length at most a configured bound, found
//! by breadth-first closure under right multiplication by generators.
//! Element identity is decided in the reflection representation: each element
//! carries its matrix on simple-root coordinates with [`ExactScalar`]
//! entries, and two elements are equal exactly when their matrices are.
//! Whether a product `ws` goes up or down in length is read off the sign of
//! the root `w(alpha_s)`.
//!
//! After construction the store is immutable; every query is a table lookup
//! and the store can be shared freely across threads.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use crate::error::{Error, Result};
use crate::exact::{ExactScalar, ScalarRing};
use crate::presentation::CoxeterPresentation;

static NEXT_STORE_ID: AtomicU32 = AtomicU32::new(0);

const NO_LINK: u32 = u32::MAX;

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ELEMENT_LIMIT: usize = 2_000_000;

/// Handle to an element of an [`ElementStore`]. Handles are only meaningful
/// for the store that issued them; using one elsewhere panics.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    store: u32,
    index: u32,
}

impl GroupElement {
    /// Position in the store's length-sorted enumeration.
    pub fn index(self) -> usize {
        self.index as usize
    }
}

impl std::fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "g{}", self.index)
    }
}

/// Which side a generator acts on.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

struct ElemRecord {
    length: u32,
    /// Shortlex-least reduced word, 0-based generator indices.
    word: Vec<u8>,
    right: Vec<u32>,
    left: Vec<u32>,
    left_desc: u32,
    right_desc: u32,
    inverse: u32,
    star: u32,
    /// Row-major reflection matrix: entry `(i, j)` is the coefficient of
    /// `alpha_i` in `w(alpha_j)`.
    matrix: Vec<ExactScalar>,
}

pub struct ElementStore {
    id: u32,
    presentation: CoxeterPresentation,
    ring: ScalarRing,
    bound: u32,
    complete: bool,
    /// `cos2[s * rank + t] = 2cos(pi / m(s,t))` for `s != t` (2 at infinity).
    cos2: Vec<ExactScalar>,
    elems: Vec<ElemRecord>,
}

impl ElementStore {
    pub fn build(presentation: CoxeterPresentation, bound: u32) -> Result<Self> {
        Self::build_with_limit(presentation, bound, DEFAULT_ELEMENT_LIMIT)
    }

    pub fn build_with_limit(
        presentation: CoxeterPresentation,
        bound: u32,
        limit: usize,
    ) -> Result<Self> {
        let rank = presentation.rank();
        let ring = presentation.scalar_ring();
        let mut cos2 = vec![ring.zero(); rank * rank];
        for s in 0..rank {
            for t in 0..rank {
                if s != t {
                    cos2[s * rank + t] = ring.cos_constant(presentation.order(s, t));
                }
            }
        }

        let mut store = ElementStore {
            id: NEXT_STORE_ID.fetch_add(1, AtomicOrdering::Relaxed),
            presentation,
            ring,
            bound,
            complete: false,
            cos2,
            elems: Vec::new(),
        };
        store.enumerate(limit)?;
        store.link_left_side();
        store.fill_descents();
        store.fill_words();
        store.fill_inverses();
        store.fill_stars();
        store.complete = store
            .elems
            .iter()
            .all(|e| e.right.iter().all(|&l| l != NO_LINK));
        Ok(store)
    }

    fn identity_matrix(&self) -> Vec<ExactScalar> {
        let rank = self.presentation.rank();
        let mut m = vec![self.ring.zero(); rank * rank];
        for i in 0..rank {
            m[i * rank + i] = self.ring.one();
        }
        m
    }

    /// `w * s`: column `j != s` gains `cos2[s,j] *` column `s`; column `s`
    /// flips sign.
    fn mul_matrix_right(&self, m: &[ExactScalar], s: usize) -> Vec<ExactScalar> {
        let rank = self.presentation.rank();
        let mut out = m.to_vec();
        for i in 0..rank {
            let pivot = m[i * rank + s].clone();
            for j in 0..rank {
                if j == s {
                    out[i * rank + j] = self.ring.neg(&pivot);
                } else {
                    let c = &self.cos2[s * rank + j];
                    if !c.is_zero() && !pivot.is_zero() {
                        self.ring
                            .add_mul_assign(&mut out[i * rank + j], c, &pivot);
                    }
                }
            }
        }
        out
    }

    /// `s * w`: row `s` becomes `-row_s + sum_{k != s} cos2[s,k] * row_k`.
    fn mul_matrix_left(&self, m: &[ExactScalar], s: usize) -> Vec<ExactScalar> {
        let rank = self.presentation.rank();
        let mut out = m.to_vec();
        for j in 0..rank {
            let mut acc = self.ring.neg(&m[s * rank + j]);
            for k in 0..rank {
                if k != s {
                    let c = &self.cos2[s * rank + k];
                    if !c.is_zero() {
                        self.ring.add_mul_assign(&mut acc, c, &m[k * rank + j]);
                    }
                }
            }
            out[s * rank + j] = acc;
        }
        out
    }

    /// True when `w(alpha_s)` is a positive root, i.e. `l(ws) > l(w)`.
    fn root_is_positive(&self, m: &[ExactScalar], s: usize) -> bool {
        let rank = self.presentation.rank();
        let mut saw_positive = false;
        let mut saw_negative = false;
        for i in 0..rank {
            match self.ring.sign(&m[i * rank + s]) {
                std::cmp::Ordering::Greater => saw_positive = true,
                std::cmp::Ordering::Less => saw_negative = true,
                std::cmp::Ordering::Equal => {}
            }
        }
        assert!(
            saw_positive != saw_negative,
            "a root must have a definite sign"
        );
        saw_positive
    }

    fn enumerate(&mut self, limit: usize) -> Result<()> {
        let rank = self.presentation.rank();
        let mut seen: HashMap<Vec<ExactScalar>, u32> = HashMap::new();
        let ident = self.identity_matrix();
        seen.insert(ident.clone(), 0);
        self.elems.push(ElemRecord {
            length: 0,
            word: Vec::new(),
            right: vec![NO_LINK; rank],
            left: vec![NO_LINK; rank],
            left_desc: 0,
            right_desc: 0,
            inverse: 0,
            star: 0,
            matrix: ident,
        });

        let mut idx = 0usize;
        while idx < self.elems.len() {
            let len = self.elems[idx].length;
            for s in 0..rank {
                if self.elems[idx].right[s] != NO_LINK {
                    continue;
                }
                let product = self.mul_matrix_right(&self.elems[idx].matrix, s);
                let link = match seen.get(&product) {
                    Some(&h) => {
                        debug_assert_eq!(
                            self.root_is_positive(&self.elems[idx].matrix, s),
                            self.elems[h as usize].length > len,
                            "geometric length test disagrees with enumeration order"
                        );
                        h
                    }
                    None => {
                        // Unseen products are ascents: every shorter element
                        // was enumerated before this shell.
                        debug_assert!(self.root_is_positive(&self.elems[idx].matrix, s));
                        if len + 1 > self.bound {
                            NO_LINK
                        } else {
                            if self.elems.len() >= limit {
                                return Err(Error::ResourceLimit { limit });
                            }
                            let h = self.elems.len() as u32;
                            seen.insert(product.clone(), h);
                            self.elems.push(ElemRecord {
                                length: len + 1,
                                word: Vec::new(),
                                right: vec![NO_LINK; rank],
                                left: vec![NO_LINK; rank],
                                left_desc: 0,
                                right_desc: 0,
                                inverse: 0,
                                star: 0,
                                matrix: product,
                            });
                            h
                        }
                    }
                };
                self.elems[idx].right[s] = link;
                if link != NO_LINK {
                    // Generators are involutions: link back.
                    self.elems[link as usize].right[s] = idx as u32;
                }
            }
            idx += 1;
        }
        Ok(())
    }

    #[allow(clippy::needless_range_loop)] // s indexes generators, not a slice
    fn link_left_side(&mut self) {
        let rank = self.presentation.rank();
        let mut seen: HashMap<&[ExactScalar], u32> = HashMap::new();
        for (i, e) in self.elems.iter().enumerate() {
            seen.insert(&e.matrix, i as u32);
        }
        let mut links = vec![vec![NO_LINK; rank]; self.elems.len()];
        for (i, e) in self.elems.iter().enumerate() {
            for s in 0..rank {
                let product = self.mul_matrix_left(&e.matrix, s);
                match seen.get(product.as_slice()) {
                    Some(&h) => links[i][s] = h,
                    None => debug_assert_eq!(e.length, self.bound),
                }
            }
        }
        for (e, l) in self.elems.iter_mut().zip(links) {
            e.left = l;
        }
    }

    fn fill_descents(&mut self) {
        let rank = self.presentation.rank();
        for i in 0..self.elems.len() {
            let len = self.elems[i].length;
            let mut left = 0u32;
            let mut right = 0u32;
            for s in 0..rank {
                let l = self.elems[i].left[s];
                if l != NO_LINK && self.elems[l as usize].length < len {
                    left |= 1 << s;
                }
                let r = self.elems[i].right[s];
                if r != NO_LINK && self.elems[r as usize].length < len {
                    right |= 1 << s;
                }
            }
            self.elems[i].left_desc = left;
            self.elems[i].right_desc = right;
        }
    }

    /// Shortlex-least reduced word: repeatedly take the smallest left
    /// descent. Elements are length-sorted, so the tail is already known.
    fn fill_words(&mut self) {
        for i in 1..self.elems.len() {
            let s = self.elems[i].left_desc.trailing_zeros() as usize;
            let shorter = self.elems[i].left[s] as usize;
            debug_assert!(shorter < i);
            let mut word = Vec::with_capacity(self.elems[i].length as usize);
            word.push(s as u8);
            word.extend_from_slice(&self.elems[shorter].word);
            self.elems[i].word = word;
        }
    }

    fn walk_from_identity(&self, letters: impl Iterator<Item = u8>) -> u32 {
        let mut cur = 0u32;
        for s in letters {
            cur = self.elems[cur as usize].right[s as usize];
            debug_assert_ne!(cur, NO_LINK);
        }
        cur
    }

    fn fill_inverses(&mut self) {
        for i in 0..self.elems.len() {
            let word = self.elems[i].word.clone();
            let inv = self.walk_from_identity(word.iter().rev().copied());
            self.elems[i].inverse = inv;
            debug_assert_eq!(self.elems[inv as usize].length, self.elems[i].length);
        }
    }

    fn fill_stars(&mut self) {
        for i in 0..self.elems.len() {
            let word = self.elems[i].word.clone();
            let img = self.walk_from_identity(
                word.iter()
                    .map(|&s| self.presentation.star_gen(s as usize) as u8),
            );
            self.elems[i].star = img;
            debug_assert_eq!(self.elems[img as usize].length, self.elems[i].length);
        }
    }

    fn record(&self, w: GroupElement) -> &ElemRecord {
        assert_eq!(w.store, self.id, "handle from a different store");
        &self.elems[w.index as usize]
    }

    fn handle(&self, index: u32) -> GroupElement {
        GroupElement {
            store: self.id,
            index,
        }
    }

    pub fn presentation(&self) -> &CoxeterPresentation {
        &self.presentation
    }

    pub fn rank(&self) -> usize {
        self.presentation.rank()
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Number of stored elements.
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the identity is always present
    }

    /// True when the whole group was enumerated before the bound was hit.
    pub fn is_complete_group(&self) -> bool {
        self.complete
    }

    pub fn max_length(&self) -> u32 {
        self.elems.last().map(|e| e.length).unwrap_or(0)
    }

    pub fn identity(&self) -> GroupElement {
        self.handle(0)
    }

    pub fn element(&self, index: usize) -> GroupElement {
        assert!(index < self.elems.len(), "element index out of range");
        self.handle(index as u32)
    }

    /// All elements in length-sorted enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.elems.len() as u32).map(|i| self.handle(i))
    }

    /// Number of elements of each length, index = length.
    pub fn shell_sizes(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.max_length() as usize + 1];
        for e in &self.elems {
            out[e.length as usize] += 1;
        }
        out
    }

    pub fn length(&self, w: GroupElement) -> u32 {
        self.record(w).length
    }

    /// True when multiplying by `s` on the given side shortens `w`.
    pub fn descends(&self, w: GroupElement, s: usize, side: Side) -> bool {
        let mask = 1u32 << s;
        match side {
            Side::Left => self.record(w).left_desc & mask != 0,
            Side::Right => self.record(w).right_desc & mask != 0,
        }
    }

    /// Bitset of descent generators on the given side.
    pub fn descent_set(&self, w: GroupElement, side: Side) -> u32 {
        match side {
            Side::Left => self.record(w).left_desc,
            Side::Right => self.record(w).right_desc,
        }
    }

    pub fn descents(&self, w: GroupElement, side: Side) -> impl Iterator<Item = usize> + '_ {
        let set = self.descent_set(w, side);
        (0..self.rank()).filter(move |s| set & (1 << s) != 0)
    }

    /// `s*w` or `w*s`; errors when the product falls outside the stored ball.
    pub fn mul_gen(&self, w: GroupElement, s: usize, side: Side) -> Result<GroupElement> {
        assert!(s < self.rank(), "generator index out of range");
        let rec = self.record(w);
        let link = match side {
            Side::Left => rec.left[s],
            Side::Right => rec.right[s],
        };
        if link == NO_LINK {
            Err(Error::OutOfRange {
                required: rec.length + 1,
                bound: self.bound,
            })
        } else {
            Ok(self.handle(link))
        }
    }

    pub fn inverse(&self, w: GroupElement) -> GroupElement {
        self.handle(self.record(w).inverse)
    }

    /// Image of `w` under the diagram involution.
    pub fn star(&self, w: GroupElement) -> GroupElement {
        self.handle(self.record(w).star)
    }

    /// Shortlex-least reduced word for `w`, 0-based generator indices.
    pub fn word(&self, w: GroupElement) -> &[u8] {
        &self.record(w).word
    }

    /// Multiplies out a word left to right, starting from the identity.
    pub fn element_from_word(&self, word: &[u8]) -> Result<GroupElement> {
        let mut cur = self.identity();
        for &s in word {
            cur = self.mul_gen(cur, s as usize, Side::Right)?;
        }
        Ok(cur)
    }

    /// Descent test straight from the reflection representation, bypassing
    /// the link tables: a right descent means `w(alpha_s)` is a negative
    /// root, a left descent means `w^{-1}(alpha_s)` is.
    pub fn geometric_descends(&self, w: GroupElement, s: usize, side: Side) -> bool {
        assert!(s < self.rank());
        let rec = match side {
            Side::Right => self.record(w),
            Side::Left => self.record(self.inverse(w)),
        };
        !self.root_is_positive(&rec.matrix, s)
    }
}

impl std::fmt::Debug for ElementStore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ElementStore")
            .field("rank", &self.rank())
            .field("bound", &self.bound)
            .field("elements", &self.elems.len())
            .field("complete", &self.complete)
            .finish()
    }
}
