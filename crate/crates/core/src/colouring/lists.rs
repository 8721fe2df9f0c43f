use std::collections::HashSet;
use std::fmt;

use serde::{Serialize, Serializer};

use super::ColouringError;
use crate::graph::Graph;
use crate::io::content_lines;

/// Colours are opaque positive integers.
pub type Colour = u32;

/// Largest representable colour.
pub const MAX_COLOUR: Colour = 64;

/// A set of colours from `1..=MAX_COLOUR`, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ColourSet(u64);

impl ColourSet {
    pub const EMPTY: ColourSet = ColourSet(0);

    /// `{1, ..., k}`.
    pub fn palette(k: Colour) -> Self {
        assert!(k <= MAX_COLOUR, "palette {k} exceeds {MAX_COLOUR}");
        if k == 64 {
            ColourSet(u64::MAX)
        } else {
            ColourSet((1u64 << k) - 1)
        }
    }

    pub fn singleton(c: Colour) -> Self {
        assert!((1..=MAX_COLOUR).contains(&c), "colour {c} out of range");
        ColourSet(1 << (c - 1))
    }

    pub fn try_from_colours<I: IntoIterator<Item = Colour>>(colours: I) -> Result<Self, ColouringError> {
        let mut set = ColourSet::EMPTY;
        for c in colours {
            if !(1..=MAX_COLOUR).contains(&c) {
                return Err(ColouringError::ColourOutOfRange(c));
            }
            set.0 |= 1 << (c - 1);
        }
        Ok(set)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, c: Colour) -> bool {
        (1..=MAX_COLOUR).contains(&c) && self.0 >> (c - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn insert(&mut self, c: Colour) {
        *self = self.union(ColourSet::singleton(c));
    }

    /// Returns `true` if `c` was present.
    pub fn remove(&mut self, c: Colour) -> bool {
        let had = self.contains(c);
        if had {
            self.0 &= !(1 << (c - 1));
        }
        had
    }

    pub fn without(self, c: Colour) -> Self {
        let mut s = self;
        s.remove(c);
        s
    }

    pub fn union(self, other: Self) -> Self {
        ColourSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ColourSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ColourSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest colour.
    pub fn first(self) -> Option<Colour> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    /// The colour of a singleton set.
    pub fn only(self) -> Option<Colour> {
        (self.len() == 1).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max(self) -> Option<Colour> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// Colours in increasing order.
    pub fn iter(self) -> impl Iterator<Item = Colour> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let c = bits.trailing_zeros();
                bits &= bits - 1;
                c + 1
            })
        })
    }
}

impl fmt::Debug for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ColourSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Admissible colours per vertex, optionally bounded by a declared palette.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ListAssignment {
    lists: Vec<ColourSet>,
    palette: Option<Colour>,
}

impl ListAssignment {
    pub fn new(lists: Vec<ColourSet>, palette: Option<Colour>) -> Result<Self, ColouringError> {
        if let Some(k) = palette {
            if k > MAX_COLOUR {
                return Err(ColouringError::ColourOutOfRange(k));
            }
            let allowed = ColourSet::palette(k);
            if let Some(v) = lists.iter().position(|l| !l.is_subset(allowed)) {
                return Err(ColouringError::OutsidePalette { vertex: v, palette: k });
            }
        }
        Ok(ListAssignment { lists, palette })
    }

    /// Every vertex gets `{1, ..., k}`.
    pub fn full(n: usize, k: Colour) -> Self {
        ListAssignment {
            lists: vec![ColourSet::palette(k); n],
            palette: Some(k),
        }
    }

    pub fn from_lists<I, L>(lists: I) -> Result<Self, ColouringError>
    where
        I: IntoIterator<Item = L>,
        L: IntoIterator<Item = Colour>,
    {
        let lists = lists
            .into_iter()
            .map(ColourSet::try_from_colours)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ListAssignment { lists, palette: None })
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn get(&self, v: usize) -> ColourSet {
        self.lists[v]
    }

    pub fn lists(&self) -> &[ColourSet] {
        &self.lists
    }

    pub fn palette(&self) -> Option<Colour> {
        self.palette
    }

    pub fn max_list_size(&self) -> usize {
        self.lists.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    /// Largest colour in any list.
    pub fn max_colour(&self) -> Colour {
        self.lists.iter().filter_map(|l| l.max()).max().unwrap_or(0)
    }

    /// `true` iff every list is a subset of `{1, ..., k}`.
    pub fn within_palette(&self, k: Colour) -> bool {
        k >= MAX_COLOUR || self.lists.iter().all(|l| l.is_subset(ColourSet::palette(k)))
    }

    pub fn check_len(&self, g: &Graph) -> Result<(), ColouringError> {
        if self.lists.len() == g.n() {
            Ok(())
        } else {
            Err(ColouringError::LengthMismatch { expected: g.n(), found: self.lists.len() })
        }
    }

    pub fn restrict(&self, vertices: &[usize]) -> ListAssignment {
        ListAssignment {
            lists: vertices.iter().map(|&v| self.lists[v]).collect(),
            palette: self.palette,
        }
    }
}

/// Parses the list file format: one `v: c1 c2 ...` line per vertex, `#`
/// comments allowed. Vertices without a line get `{1, ..., k}`.
pub fn parse_lists(text: &str, n: usize, k: Colour) -> Result<ListAssignment, ColouringError> {
    if k > MAX_COLOUR {
        return Err(ColouringError::ColourOutOfRange(k));
    }
    let err = |line: usize, msg: String| ColouringError::Parse { line, msg };
    let mut lists = vec![ColourSet::palette(k); n];
    let mut seen = HashSet::new();
    for (line, content) in content_lines(text) {
        let (head, tail) = content
            .split_once(':')
            .ok_or_else(|| err(line, "expected `v: c1 c2 ...`".into()))?;
        let v: usize = head
            .trim()
            .parse()
            .map_err(|_| err(line, format!("invalid vertex `{}`", head.trim())))?;
        if v >= n {
            return Err(err(line, format!("vertex {v} out of range 0..{n}")));
        }
        if !seen.insert(v) {
            return Err(err(line, format!("vertex {v} listed twice")));
        }
        let mut set = ColourSet::EMPTY;
        for tok in tail.split_whitespace() {
            let c: Colour = tok.parse().map_err(|_| err(line, format!("invalid colour `{tok}`")))?;
            if c == 0 || c > k {
                return Err(err(line, format!("colour {c} outside the palette 1..={k}")));
            }
            set.insert(c);
        }
        lists[v] = set;
    }
    ListAssignment::new(lists, Some(k))
}

/// Inverse of [`parse_lists`]; every vertex gets a line.
pub fn write_lists(lists: &ListAssignment) -> String {
    let mut out = String::new();
    for (v, set) in lists.lists().iter().enumerate() {
        let colours: Vec<String> = set.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("{v}: {}\n", colours.join(" ")));
    }
    out
}

/// A colour per vertex; `None` marks an uncoloured vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    colours: Vec<Option<Colour>>,
}

impl Colouring {
    pub fn uncoloured(n: usize) -> Self {
        Colouring { colours: vec![None; n] }
    }

    pub fn from_total(colours: Vec<Colour>) -> Self {
        Colouring { colours: colours.into_iter().map(Some).collect() }
    }

    pub fn get(&self, v: usize) -> Option<Colour> {
        self.colours[v]
    }

    pub fn set(&mut self, v: usize, c: Colour) {
        self.colours[v] = Some(c);
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.colours.iter().all(Option::is_some)
    }

    pub fn as_slice(&self) -> &[Option<Colour>] {
        &self.colours
    }

    /// Number of distinct colours used.
    pub fn colour_count(&self) -> usize {
        let mut used: Vec<Colour> = self.colours.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    }
}

impl Serialize for Colouring {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.colours.serialize(s)
    }
}

/// Why a colouring fails validation.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Defect {
    #[error("colouring covers {found} vertices, graph has {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("vertex {0} is uncoloured")]
    Uncoloured(usize),
    #[error("vertex {vertex} has colour {colour} outside its list")]
    OutsideList { vertex: usize, colour: Colour },
    #[error("adjacent vertices {u} and {v} share colour {colour}")]
    Conflict { u: usize, v: usize, colour: Colour },
}

/// Checks that `colouring` is total, proper and respects `lists`.
pub fn validate(g: &Graph, lists: &ListAssignment, colouring: &Colouring) -> Result<(), Defect> {
    if let Some(v) = (0..colouring.len()).find(|&v| colouring.get(v).is_none()) {
        return Err(Defect::Uncoloured(v));
    }
    validate_partial(g, lists, colouring)
}

/// Like [`validate`] but uncoloured vertices are allowed.
pub fn validate_partial(g: &Graph, lists: &ListAssignment, colouring: &Colouring) -> Result<(), Defect> {
    if colouring.len() != g.n() || lists.len() != g.n() {
        return Err(Defect::WrongLength { expected: g.n(), found: colouring.len().min(lists.len()) });
    }
    for v in g.vertices() {
        if let Some(c) = colouring.get(v) {
            if !lists.get(v).contains(c) {
                return Err(Defect::OutsideList { vertex: v, colour: c });
            }
        }
    }
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (colouring.get(u), colouring.get(v)) {
            if a == b {
                return Err(Defect::Conflict { u, v, colour: a });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn colour_set_ops() {
        let s = ColourSet::try_from_colours([3, 1, 64]).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 64]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.first(), Some(1));
        assert_eq!(s.max(), Some(64));
        assert_eq!(s.only(), None);
        assert_eq!(ColourSet::singleton(2).only(), Some(2));
        assert!(!s.contains(0) && !s.contains(65));
        assert_eq!(ColourSet::palette(3).without(2).iter().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(ColourSet::palette(64).len(), 64);
        assert_eq!(ColourSet::try_from_colours([0]), Err(ColouringError::ColourOutOfRange(0)));
        assert_eq!(format!("{:?}", ColourSet::palette(2)), "{1, 2}");
    }

    #[test]
    fn palette_is_enforced() {
        let lists = vec![ColourSet::palette(4)];
        assert_eq!(
            ListAssignment::new(lists.clone(), Some(3)),
            Err(ColouringError::OutsidePalette { vertex: 0, palette: 3 })
        );
        assert!(ListAssignment::new(lists, None).is_ok());
    }

    #[test]
    fn list_file() {
        let l = parse_lists("# lists\n0: 1 2\n2:\n", 3, 3).unwrap();
        assert_eq!(l.get(0), ColourSet::palette(2));
        assert_eq!(l.get(1), ColourSet::palette(3));
        assert!(l.get(2).is_empty());
        assert!(matches!(parse_lists("0: 4\n", 2, 3), Err(ColouringError::Parse { line: 1, .. })));
        assert!(matches!(parse_lists("0: 1\n\n0: 2\n", 2, 3), Err(ColouringError::Parse { line: 3, .. })));
        assert!(matches!(parse_lists("5: 1\n", 2, 3), Err(ColouringError::Parse { .. })));
        assert!(matches!(parse_lists("zero 1\n", 2, 3), Err(ColouringError::Parse { .. })));
    }

    #[test]
    fn validation() {
        let g = named::path(3);
        let lists = ListAssignment::full(3, 2);
        assert_eq!(validate(&g, &lists, &Colouring::from_total(vec![1, 2, 1])), Ok(()));
        assert_eq!(
            validate(&g, &lists, &Colouring::from_total(vec![1, 1, 2])),
            Err(Defect::Conflict { u: 0, v: 1, colour: 1 })
        );
        assert_eq!(
            validate(&g, &lists, &Colouring::from_total(vec![1, 3, 1])),
            Err(Defect::OutsideList { vertex: 1, colour: 3 })
        );
        let mut partial = Colouring::uncoloured(3);
        partial.set(0, 1);
        assert_eq!(validate(&g, &lists, &partial), Err(Defect::Uncoloured(1)));
        assert_eq!(validate_partial(&g, &lists, &partial), Ok(()));
    }
}
