//! Game forms and the interning arena.
//!
//! Every form lives in a [`Games`] arena and is referred to by a [`GameId`].
//! Option sets are stored sorted and deduplicated, so two structurally equal
//! forms always share one id. The arena only grows; ids and forms handed out
//! are never invalidated, which makes it safe to share across threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use dashmap::DashMap;
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

/// Opaque handle of an interned form. Only meaningful for the arena that issued it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GameId(u32);

impl GameId {
    /// The empty form `{ | }`. Every arena interns it first.
    pub const ZERO: GameId = GameId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn raw(self) -> u32 {
        self.0
    }
}

impl fmt::Display for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Left and Right option sets of a form, each sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameForm {
    left: Box<[GameId]>,
    right: Box<[GameId]>,
}

impl GameForm {
    pub fn new(
        left: impl IntoIterator<Item = GameId>,
        right: impl IntoIterator<Item = GameId>,
    ) -> Self {
        fn canonical(ids: impl IntoIterator<Item = GameId>) -> Box<[GameId]> {
            let mut v: Vec<GameId> = ids.into_iter().collect();
            v.sort_unstable();
            v.dedup();
            v.into_boxed_slice()
        }
        GameForm {
            left: canonical(left),
            right: canonical(right),
        }
    }

    pub fn left(&self) -> &[GameId] {
        &self.left
    }

    pub fn right(&self) -> &[GameId] {
        &self.right
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }
}

/// Limits applied to the integer and dyadic constructors (and hence to the parser).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest absolute integer accepted by the integer constructor.
    pub max_integer: u64,
    /// Upper bound on the estimated number of distinct sum nodes a dyadic
    /// form may create (the fractional part is a sum of unit dyadics).
    pub max_dyadic_nodes: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_integer: 4096,
            max_dyadic_nodes: 200_000,
        }
    }
}

struct Node {
    form: GameForm,
    birthday: u32,
}

/// Append-only arena of interned game forms with memoized sum and conjugate.
pub struct Games {
    nodes: boxcar::Vec<Node>,
    index: Mutex<HashMap<GameForm, GameId>>,
    sums: DashMap<(GameId, GameId), GameId>,
    conjugates: DashMap<GameId, GameId>,
    bounds: Bounds,
    pub(crate) names: OnceLock<HashMap<GameId, String>>,
}

impl Default for Games {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Debug for Games {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Games")
            .field("len", &self.len())
            .field("bounds", &self.bounds)
            .finish()
    }
}

impl Games {
    pub fn new() -> Self {
        Self::with_bounds(Bounds::default())
    }

    pub fn with_bounds(bounds: Bounds) -> Self {
        let games = Games {
            nodes: boxcar::Vec::new(),
            index: Mutex::new(HashMap::new()),
            sums: DashMap::new(),
            conjugates: DashMap::new(),
            bounds,
            names: OnceLock::new(),
        };
        let zero = games.intern_form(GameForm::new([], []));
        debug_assert_eq!(zero, GameId::ZERO);
        games
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Number of interned forms.
    pub fn len(&self) -> usize {
        self.nodes.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Returns the id if `raw` names a form of this arena.
    pub fn id(&self, raw: u32) -> Option<GameId> {
        ((raw as usize) < self.len()).then_some(GameId(raw))
    }

    pub fn zero(&self) -> GameId {
        GameId::ZERO
    }

    /// Interns `{left | right}`.
    ///
    /// Panics if any option id was not issued by this arena.
    pub fn intern(
        &self,
        left: impl IntoIterator<Item = GameId>,
        right: impl IntoIterator<Item = GameId>,
    ) -> GameId {
        self.intern_form(GameForm::new(left, right))
    }

    pub fn intern_form(&self, form: GameForm) -> GameId {
        let mut index = self.index.lock();
        if let Some(&id) = index.get(&form) {
            return id;
        }
        let len = self.nodes.count();
        let birthday = form
            .left()
            .iter()
            .chain(form.right())
            .map(|o| {
                assert!(o.index() < len, "option {o} was not interned in this arena");
                self.nodes[o.index()].birthday + 1
            })
            .max()
            .unwrap_or(0);
        let slot = self.nodes.push(Node {
            form: form.clone(),
            birthday,
        });
        let id = GameId(u32::try_from(slot).expect("arena exceeds u32 ids"));
        index.insert(form, id);
        id
    }

    /// Looks a form up without interning it.
    pub fn find(&self, form: &GameForm) -> Option<GameId> {
        self.index.lock().get(form).copied()
    }

    fn node(&self, id: GameId) -> &Node {
        self.nodes
            .get(id.index())
            .unwrap_or_else(|| panic!("{id} was not interned in this arena"))
    }

    pub fn form(&self, id: GameId) -> &GameForm {
        &self.node(id).form
    }

    pub fn left(&self, id: GameId) -> &[GameId] {
        self.node(id).form.left()
    }

    pub fn right(&self, id: GameId) -> &[GameId] {
        self.node(id).form.right()
    }

    pub fn options(&self, id: GameId, player: crate::auction::Player) -> &[GameId] {
        match player {
            crate::auction::Player::Left => self.left(id),
            crate::auction::Player::Right => self.right(id),
        }
    }

    pub fn birthday(&self, id: GameId) -> u32 {
        self.node(id).birthday
    }

    /// Disjunctive sum `a + b`.
    pub fn sum(&self, a: GameId, b: GameId) -> GameId {
        if a == GameId::ZERO {
            return b;
        }
        if b == GameId::ZERO {
            return a;
        }
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(hit) = self.sums.get(&key) {
            return *hit;
        }
        let (fa, fb) = (self.form(a), self.form(b));
        let left: Vec<GameId> = fb
            .left()
            .iter()
            .map(|&bl| self.sum(a, bl))
            .chain(fa.left().iter().map(|&al| self.sum(al, b)))
            .collect();
        let right: Vec<GameId> = fb
            .right()
            .iter()
            .map(|&br| self.sum(a, br))
            .chain(fa.right().iter().map(|&ar| self.sum(ar, b)))
            .collect();
        let id = self.intern(left, right);
        self.sums.insert(key, id);
        id
    }

    /// Sum of all forms in `ids`; the empty sum is `0`.
    pub fn sum_all(&self, ids: impl IntoIterator<Item = GameId>) -> GameId {
        ids.into_iter()
            .fold(GameId::ZERO, |acc, g| self.sum(acc, g))
    }

    /// The conjugate form, with the players' roles swapped throughout.
    pub fn conjugate(&self, g: GameId) -> GameId {
        if g == GameId::ZERO {
            return g;
        }
        if let Some(hit) = self.conjugates.get(&g) {
            return *hit;
        }
        let form = self.form(g);
        let left: Vec<GameId> = form.right().iter().map(|&r| self.conjugate(r)).collect();
        let right: Vec<GameId> = form.left().iter().map(|&l| self.conjugate(l)).collect();
        let id = self.intern(left, right);
        self.conjugates.insert(g, id);
        self.conjugates.insert(id, g);
        id
    }

    /// `a + conj(b)`.
    pub fn difference(&self, a: GameId, b: GameId) -> GameId {
        let nb = self.conjugate(b);
        self.sum(a, nb)
    }

    /// `{0|0}`
    pub fn star(&self) -> GameId {
        self.intern([GameId::ZERO], [GameId::ZERO])
    }

    /// `{0|*}`
    pub fn up(&self) -> GameId {
        let star = self.star();
        self.intern([GameId::ZERO], [star])
    }

    /// `{*|0}`
    pub fn down(&self) -> GameId {
        let star = self.star();
        self.intern([star], [GameId::ZERO])
    }

    /// All forms reachable from `g` (including `g`), children before parents.
    pub fn followers(&self, g: GameId) -> Vec<GameId> {
        let mut seen = std::collections::HashSet::new();
        let mut order = Vec::new();
        let mut stack = vec![(g, false)];
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                order.push(id);
                continue;
            }
            if !seen.insert(id) {
                continue;
            }
            stack.push((id, true));
            let form = self.form(id);
            for &o in form.left().iter().chain(form.right()) {
                if !seen.contains(&o) {
                    stack.push((o, false));
                }
            }
        }
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_interned_first() {
        let g = Games::new();
        assert_eq!(g.intern([], []), GameId::ZERO);
        assert!(g.form(GameId::ZERO).is_zero());
        assert_eq!(g.birthday(GameId::ZERO), 0);
    }

    #[test]
    fn star_and_dedup() {
        let g = Games::new();
        let z = g.zero();
        let star = g.intern([z], [z]);
        assert_eq!(star, g.star());
        assert_eq!(g.intern([z, z], []), g.intern([z], []));
        assert_eq!(g.birthday(star), 1);
    }

    #[test]
    fn option_order_is_irrelevant() {
        let g = Games::new();
        let z = g.zero();
        let one = g.intern([z], []);
        let star = g.star();
        assert_eq!(g.intern([star, one], [z]), g.intern([one, star, one], [z]));
    }

    #[test]
    fn conjugate_examples() {
        let g = Games::new();
        let z = g.zero();
        let one = g.intern([z], []);
        let minus_one = g.intern([], [z]);
        assert_eq!(g.conjugate(z), z);
        assert_eq!(g.conjugate(one), minus_one);
        assert_eq!(g.conjugate(g.star()), g.star());
        assert_eq!(g.conjugate(g.up()), g.down());
    }

    #[test]
    fn sum_examples() {
        let g = Games::new();
        let z = g.zero();
        let one = g.intern([z], []);
        let minus_one = g.intern([], [z]);
        assert_eq!(g.sum(z, z), z);
        assert_eq!(g.sum(one, minus_one), g.intern([minus_one], [one]));
        let star = g.star();
        assert_eq!(g.sum(star, star), g.intern([star], [star]));
        assert_eq!(g.sum(one, z), one);
    }

    #[test]
    #[should_panic(expected = "not interned")]
    fn unknown_option_is_a_contract_violation() {
        let g = Games::new();
        g.intern([GameId(99)], []);
    }

    #[test]
    fn followers_are_children_first() {
        let g = Games::new();
        let up = g.up();
        let f = g.followers(up);
        assert_eq!(f.last(), Some(&up));
        assert_eq!(f.len(), 3);
        assert_eq!(f[0], GameId::ZERO);
    }
}
