//! The group R of order 16 and the Möbius–Kantor graph `Cay(R, {a, b, c})`.
//!
//! R is generated by involutions a, b, c with central z = [a,b] = [b,c] = [a,c].
//! Elements are kept in the normal form `a^ea b^eb c^ec z^ez`.
//!
//! Edges join `g` and `s·g` for `s ∈ {a, b, c}`; with this convention the
//! vertex labels of the reference drawing (and its rim arcs) are edges of the
//! graph. Right translations `g ↦ g·h` and automorphisms of R that permute
//! `{a, b, c}` are graph automorphisms.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{Perm, PermGroup};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RElement {
    pub ea: u8,
    pub eb: u8,
    pub ec: u8,
    pub ez: u8,
}

impl RElement {
    pub const ID: RElement = RElement { ea: 0, eb: 0, ec: 0, ez: 0 };
    pub const A: RElement = RElement { ea: 1, eb: 0, ec: 0, ez: 0 };
    pub const B: RElement = RElement { ea: 0, eb: 1, ec: 0, ez: 0 };
    pub const C: RElement = RElement { ea: 0, eb: 0, ec: 1, ez: 0 };
    pub const Z: RElement = RElement { ea: 0, eb: 0, ec: 0, ez: 1 };

    pub const GENERATORS: [RElement; 3] = [Self::A, Self::B, Self::C];

    /// Vertex index in the Möbius–Kantor graph: lexicographic in `(ea, eb, ec, ez)`.
    pub fn index(self) -> usize {
        (8 * self.ea + 4 * self.eb + 2 * self.ec + self.ez) as usize
    }

    pub fn from_index(i: usize) -> Self {
        assert!(i < 16);
        let bit = |k: usize| ((i >> k) & 1) as u8;
        RElement { ea: bit(3), eb: bit(2), ec: bit(1), ez: bit(0) }
    }

    pub fn all() -> impl Iterator<Item = RElement> {
        (0..16).map(RElement::from_index)
    }

    /// Inverse by search; `ab` and friends have order 4, so this is not `self`.
    pub fn inverse(self) -> RElement {
        RElement::all().find(|y| self.mul(*y) == RElement::ID).expect("R is a group")
    }

    pub fn word(self) -> String {
        let mut w = String::new();
        for (e, ch) in [(self.ea, 'a'), (self.eb, 'b'), (self.ec, 'c'), (self.ez, 'z')] {
            if e == 1 {
                w.push(ch);
            }
        }
        if w.is_empty() {
            "id".into()
        } else {
            w
        }
    }

    /// Parses a normal-form word such as `"id"`, `"a"` or `"abcz"`.
    pub fn parse(word: &str) -> Result<RElement> {
        if word == "id" {
            return Ok(RElement::ID);
        }
        let mut e = RElement::ID;
        let mut last = None;
        for ch in word.chars() {
            let slot = match ch {
                'a' => 0,
                'b' => 1,
                'c' => 2,
                'z' => 3,
                _ => return Err(Error::UnknownLabel(word.into())),
            };
            if last.is_some_and(|l| l >= slot) {
                return Err(Error::UnknownLabel(word.into()));
            }
            last = Some(slot);
            match slot {
                0 => e.ea = 1,
                1 => e.eb = 1,
                2 => e.ec = 1,
                _ => e.ez = 1,
            }
        }
        if word.is_empty() {
            return Err(Error::UnknownLabel(word.into()));
        }
        Ok(e)
    }
}

impl Mul for RElement {
    type Output = RElement;

    fn mul(self, y: RElement) -> RElement {
        r_multiply(self, y)
    }
}

impl fmt::Debug for RElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl fmt::Display for RElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

/// Product in normal form. Moving `a^ea'` left past `c^ec` and `b^eb`, and
/// `b^eb'` past `c^ec`, collects one `z` per swap.
pub fn r_multiply(x: RElement, y: RElement) -> RElement {
    RElement {
        ea: x.ea ^ y.ea,
        eb: x.eb ^ y.eb,
        ec: x.ec ^ y.ec,
        ez: x.ez ^ y.ez ^ (y.ea & x.eb) ^ (y.ea & x.ec) ^ (y.eb & x.ec),
    }
}

pub fn mk_labels() -> Vec<String> {
    RElement::all().map(RElement::word).collect()
}

pub fn build_mk() -> Graph {
    Graph::from_neighbor_fn(mk_labels(), |i| {
        let g = RElement::from_index(i);
        RElement::GENERATORS.iter().map(|s| s.mul(g).index()).collect()
    })
    .expect("the Cayley graph of R is simple")
}

/// Vertex permutation `g ↦ g·h`.
pub fn right_translation(h: RElement) -> Perm {
    Perm::from_images(RElement::all().map(|g| g.mul(h).index()).collect()).expect("translation is a bijection")
}

/// The automorphism of R sending `a, b, c` to `images[0], images[1], images[2]`,
/// where `images` is a permutation of the three generators.
pub fn induced_automorphism(images: [RElement; 3]) -> Perm {
    let map = |g: RElement| {
        let mut out = RElement::ID;
        for (e, s) in [(g.ea, images[0]), (g.eb, images[1]), (g.ec, images[2])] {
            if e == 1 {
                out = out.mul(s);
            }
        }
        if g.ez == 1 {
            out = out.mul(RElement::Z);
        }
        out.index()
    };
    Perm::from_images(RElement::all().map(map).collect()).expect("induced map is a bijection")
}

/// The automorphism induced by the transposition `(a b)`.
pub fn swap_ab() -> Perm {
    induced_automorphism([RElement::B, RElement::A, RElement::C])
}

/// The automorphism induced by the 3-cycle `a → b → c → a`.
pub fn rotate_abc() -> Perm {
    induced_automorphism([RElement::B, RElement::C, RElement::A])
}

/// Conjugates an identity-fixing automorphism so that it fixes `v` instead:
/// `h ↦ φ(h·v⁻¹)·v`.
pub fn conjugate_to_vertex(phi: &Perm, v: RElement) -> Perm {
    let to_id = right_translation(v.inverse());
    to_id.then(phi).then(&right_translation(v))
}

pub fn aut_b_generators() -> PermGroup {
    let mut gens: Vec<Perm> = RElement::GENERATORS.iter().map(|&s| right_translation(s)).collect();
    gens.push(swap_ab());
    gens.push(rotate_abc());
    PermGroup::new(16, gens).unwrap()
}

pub fn aut_a_generators() -> PermGroup {
    let mut gens: Vec<Perm> = RElement::GENERATORS.iter().map(|&s| right_translation(s)).collect();
    gens.push(rotate_abc());
    PermGroup::new(16, gens).unwrap()
}

/// The 48 elements of A.
pub fn a_elements() -> Vec<Perm> {
    aut_a_generators().elements(48).expect("|A| = 48")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{s_arc_count_regularity, ArcAction};

    fn commutator(x: RElement, y: RElement) -> RElement {
        x.inverse().mul(y.inverse()).mul(x).mul(y)
    }

    #[test]
    fn multiplication_examples() {
        use RElement as R;
        assert_eq!(R::A.mul(R::A), R::ID);
        assert_eq!(R::A.mul(R::B).word(), "ab");
        assert_eq!(R::B.mul(R::A).word(), "abz");
    }

    #[test]
    fn presentation_holds_exhaustively() {
        use RElement as R;
        assert_eq!(RElement::all().collect::<std::collections::HashSet<_>>().len(), 16);
        for s in [R::A, R::B, R::C, R::Z] {
            assert_eq!(s.mul(s), R::ID);
        }
        for s in [R::A, R::B, R::C] {
            assert_eq!(commutator(s, R::Z), R::ID);
        }
        assert_eq!(commutator(R::A, R::B), R::Z);
        assert_eq!(commutator(R::B, R::C), R::Z);
        assert_eq!(commutator(R::A, R::C), R::Z);
        for x in RElement::all() {
            assert_eq!(x.mul(R::ID), x);
            assert_eq!(x.mul(x.inverse()), R::ID);
            for y in RElement::all() {
                for w in RElement::all() {
                    assert_eq!(x.mul(y).mul(w), x.mul(y.mul(w)));
                }
            }
        }
    }

    #[test]
    fn words_round_trip() {
        for x in RElement::all() {
            assert_eq!(RElement::parse(&x.word()).unwrap(), x);
        }
        assert!(RElement::parse("ba").is_err());
        assert!(RElement::parse("").is_err());
        assert!(RElement::parse("q").is_err());
    }

    #[test]
    fn mk_shape() {
        let mk = build_mk();
        assert_eq!(mk.vertex_count(), 16);
        assert_eq!(mk.edge_count(), 24);
        assert!(mk.is_regular(3));
        assert!(mk.is_connected());
        assert!(mk.is_bipartite());
        let id = mk.find_label("id").unwrap();
        let mut names: Vec<&str> = mk.neighbors(id).unwrap().iter().map(|&v| mk.label(v)).collect();
        names.sort();
        assert_eq!(names, ["a", "b", "c"]);
        let e = |x: &str, y: &str| mk.has_edge(mk.find_label(x).unwrap(), mk.find_label(y).unwrap());
        // Rim of the reference drawing.
        for (x, y) in
            [("id", "c"), ("c", "bc"), ("bc", "bz"), ("bz", "z"), ("z", "cz"), ("cz", "bcz"), ("bcz", "b"), ("b", "id")]
        {
            assert!(e(x, y), "{x} -- {y}");
        }
        // Spoke and inner edges of the drawing.
        for (x, y) in [("id", "a"), ("bcz", "abcz"), ("a", "acz"), ("az", "ab"), ("abc", "acz"), ("ac", "abcz")] {
            assert!(e(x, y), "{x} -- {y}");
        }
    }

    #[test]
    fn translations_and_induced_maps_are_automorphisms() {
        let mk = build_mk();
        for h in RElement::all() {
            assert!(mk.is_automorphism(right_translation(h).images()));
        }
        let rot = rotate_abc();
        assert!(mk.is_automorphism(rot.images()));
        assert!(mk.is_automorphism(swap_ab().images()));
        assert_eq!(rot.apply(0), 0);
        assert_eq!(rot.order(), 3);
        let nb = mk.neighbors(0).unwrap();
        assert!(nb.iter().all(|&u| rot.apply(u) != u && nb.contains(&rot.apply(u))));
        let translations = PermGroup::new(16, RElement::all().map(right_translation).collect()).unwrap();
        assert!(translations.is_transitive());
    }

    #[test]
    fn groups_a_and_b() {
        let mk = build_mk();
        let b = aut_b_generators();
        let a = aut_a_generators();
        assert_eq!(b.order().unwrap(), 96);
        assert_eq!(a.order().unwrap(), 48);
        assert_eq!(s_arc_count_regularity(&b, &mk, 2).unwrap(), ArcAction::Regular);
        assert_eq!(s_arc_count_regularity(&a, &mk, 1).unwrap(), ArcAction::Regular);
        let chain = b.stab_chain().unwrap();
        assert!(a_elements().iter().all(|g| chain.contains(g)));
    }

    #[test]
    fn conjugated_rotation_fixes_vertex() {
        let mk = build_mk();
        for v in RElement::all() {
            let r = conjugate_to_vertex(&rotate_abc(), v);
            assert_eq!(r.apply(v.index()), v.index());
            assert_eq!(r.order(), 3);
            assert!(mk.is_automorphism(r.images()));
        }
    }
}
