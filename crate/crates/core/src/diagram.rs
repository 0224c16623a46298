//! Link diagrams as planar diagram (PD) codes.
//!
//! Each crossing lists its four incident arcs counterclockwise, starting
//! with the incoming under-strand. Slots 0 and 2 are the under-strand,
//! slots 1 and 3 the over-strand.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::unionfind::UnionFind;

pub type ArcId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}, column {column}: {message}")]
    MalformedLine {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("arc {arc} is used {count} times (expected exactly 2)")]
    ArcMultiplicity { arc: ArcId, count: usize },
    #[error("split component {component} fails the sphere check: V - E + F = {euler}")]
    NonPlanarMap { component: usize, euler: i64 },
    #[error("strand orientation is inconsistent at crossing {crossing}")]
    Orientation { crossing: usize },
    #[error("arc {0} not found")]
    ArcNotFound(ArcId),
    #[error("genus formula numerator {numerator} is odd or negative")]
    InternalParity { numerator: i64 },
    #[error("{crossings} crossings exceed the state-sum limit of {limit}")]
    TooLarge { crossings: usize, limit: usize },
    #[error("diagram has {components} split components; a connected diagram is required")]
    Disconnected { components: usize },
    #[error("diagram has no crossings")]
    NoCrossings,
}

/// One of the two smoothings of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Resolution {
    A,
    B,
}

/// Per-crossing resolution labels, indexed like [`PlanarDiagram::crossings`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionChoice(pub Vec<Resolution>);

impl ResolutionChoice {
    pub fn all(n: usize, r: Resolution) -> Self {
        Self(vec![r; n])
    }

    /// Bit `i` of `mask` set means crossing `i` gets the B-resolution.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self(
            (0..n)
                .map(|i| {
                    if i < 64 && mask >> i & 1 == 1 {
                        Resolution::B
                    } else {
                        Resolution::A
                    }
                })
                .collect(),
        )
    }
}

/// Which slot pairs each resolution joins.
///
/// `Standard` joins 0-1 and 2-3 for A, 0-3 and 1-2 for B. `Swapped`
/// exchanges the two.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SmoothingConvention {
    #[default]
    Standard,
    Swapped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArcKind {
    Alternating,
    /// `Plus` when both ends are over-strands, `Minus` when both are under.
    NonAlternating(Sign),
}

/// A (crossing, slot) position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endpoint {
    pub crossing: usize,
    pub slot: u8,
}

impl Endpoint {
    fn half_edge(self) -> usize {
        self.crossing * 4 + self.slot as usize
    }

    fn from_half_edge(h: usize) -> Self {
        Endpoint {
            crossing: h / 4,
            slot: (h % 4) as u8,
        }
    }

    pub fn is_over(self) -> bool {
        self.slot % 2 == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing(pub [ArcId; 4]);

#[derive(Clone, Debug)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    labels: Vec<ArcId>,
    index: BTreeMap<ArcId, usize>,
    /// Dense arc index at each half-edge `4 * crossing + slot`.
    slot_arc: Vec<usize>,
    /// Oriented ends of each arc: `[tail, head]`.
    ends: Vec<[Endpoint; 2]>,
    /// Crossing component id; free loops are not included.
    component_of: Vec<usize>,
    crossing_components: usize,
}

impl PartialEq for PlanarDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.free_loops == other.free_loops
    }
}

impl Eq for PlanarDiagram {}

impl PlanarDiagram {
    pub fn empty() -> Self {
        Self::from_crossings(Vec::new()).expect("empty diagram is valid")
    }

    /// `n` crossingless circles.
    pub fn unlink(n: usize) -> Self {
        let mut d = Self::empty();
        d.free_loops = n;
        d
    }

    pub fn from_pd<I>(tuples: I) -> Result<Self, DiagramError>
    where
        I: IntoIterator<Item = [ArcId; 4]>,
    {
        Self::from_crossings(tuples.into_iter().map(Crossing).collect())
    }

    pub fn from_crossings(crossings: Vec<Crossing>) -> Result<Self, DiagramError> {
        let n = crossings.len();
        let mut uses: BTreeMap<ArcId, Vec<usize>> = BTreeMap::new();
        for (c, x) in crossings.iter().enumerate() {
            for (s, &a) in x.0.iter().enumerate() {
                uses.entry(a).or_default().push(4 * c + s);
            }
        }
        for (&arc, hs) in &uses {
            if hs.len() != 2 {
                return Err(DiagramError::ArcMultiplicity { arc, count: hs.len() });
            }
        }
        let labels: Vec<ArcId> = uses.keys().copied().collect();
        let index: BTreeMap<ArcId, usize> = labels.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut slot_arc = vec![0; 4 * n];
        let mut raw_ends = Vec::with_capacity(labels.len());
        for (i, hs) in uses.values().enumerate() {
            slot_arc[hs[0]] = i;
            slot_arc[hs[1]] = i;
            raw_ends.push([hs[0], hs[1]]);
        }

        let ends = orient(&raw_ends, &slot_arc)?;

        let mut uf = UnionFind::new(n);
        for e in &raw_ends {
            uf.union(e[0] / 4, e[1] / 4);
        }
        let (component_of, crossing_components) = uf.labels();

        let d = PlanarDiagram {
            crossings,
            free_loops: 0,
            labels,
            index,
            slot_arc,
            ends,
            component_of,
            crossing_components,
        };
        d.check_sphere()?;
        Ok(d)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_labels(&self) -> &[ArcId] {
        &self.labels
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Number of split components, k(D). Crossingless circles count.
    pub fn split_components(&self) -> usize {
        self.crossing_components + self.free_loops
    }

    pub fn max_label(&self) -> ArcId {
        self.labels.last().copied().unwrap_or(0)
    }

    pub(crate) fn arc_index(&self, label: ArcId) -> Option<usize> {
        self.index.get(&label).copied()
    }

    pub(crate) fn arc_ends(&self, arc: usize) -> [Endpoint; 2] {
        self.ends[arc]
    }

    pub(crate) fn arc_at(&self, e: Endpoint) -> usize {
        self.slot_arc[e.half_edge()]
    }

    pub(crate) fn label(&self, arc: usize) -> ArcId {
        self.labels[arc]
    }

    pub(crate) fn crossing_component(&self, c: usize) -> usize {
        self.component_of[c]
    }

    pub(crate) fn crossing_component_count(&self) -> usize {
        self.crossing_components
    }

    /// The endpoint joined to `e` by its arc.
    pub(crate) fn opposite(&self, e: Endpoint) -> Endpoint {
        let [t, h] = self.ends[self.arc_at(e)];
        if t == e {
            h
        } else {
            t
        }
    }

    /// Orbits of the face permutation. Each face is the sequence of
    /// half-edges at which its boundary walk leaves a crossing; the
    /// face lies to the right of the walk.
    pub fn faces(&self) -> Vec<Vec<Endpoint>> {
        let total = 4 * self.crossings.len();
        let mut seen = vec![false; total];
        let mut faces = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                face.push(Endpoint::from_half_edge(h));
                h = self.face_next(h);
            }
            faces.push(face);
        }
        faces
    }

    fn face_next(&self, h: usize) -> usize {
        let o = self.opposite(Endpoint::from_half_edge(h));
        4 * o.crossing + (o.slot as usize + 1) % 4
    }

    fn check_sphere(&self) -> Result<(), DiagramError> {
        let k = self.crossing_components;
        let mut v = vec![0i64; k];
        let mut e = vec![0i64; k];
        let mut f = vec![0i64; k];
        for c in 0..self.crossings.len() {
            v[self.component_of[c]] += 1;
            e[self.component_of[c]] += 2;
        }
        for face in self.faces() {
            f[self.component_of[face[0].crossing]] += 1;
        }
        for comp in 0..k {
            let euler = v[comp] - e[comp] + f[comp];
            if euler != 2 {
                return Err(DiagramError::NonPlanarMap { component: comp, euler });
            }
        }
        Ok(())
    }

    /// Circle count of the state given by `mask` (bit set = B).
    pub(crate) fn circles_mask_with(&self, mask: u64, convention: SmoothingConvention, seen: &mut [bool]) -> usize {
        self.circles_by(|c| mask >> c & 1 == 1, convention, seen)
    }

    /// Circle count of the state where crossing `c` gets B iff `is_b(c)`.
    fn circles_by<F: Fn(usize) -> bool>(&self, is_b: F, convention: SmoothingConvention, seen: &mut [bool]) -> usize {
        let total = 4 * self.crossings.len();
        seen[..total].iter_mut().for_each(|s| *s = false);
        let mut circles = self.free_loops;
        for start in 0..total {
            if seen[start] {
                continue;
            }
            circles += 1;
            let mut h = start;
            loop {
                seen[h] = true;
                let o = self.opposite(Endpoint::from_half_edge(h)).half_edge();
                seen[o] = true;
                let c = o / 4;
                let s = o % 4;
                let a_like = match convention {
                    SmoothingConvention::Standard => !is_b(c),
                    SmoothingConvention::Swapped => is_b(c),
                };
                let partner = if a_like { s ^ 1 } else { 3 - s };
                h = 4 * c + partner;
                if seen[h] {
                    break;
                }
            }
        }
        circles
    }

    fn circles<F: Fn(usize) -> bool>(&self, is_b: F, convention: SmoothingConvention) -> usize {
        let mut seen = vec![false; 4 * self.crossings.len()];
        self.circles_by(is_b, convention, &mut seen)
    }

    /// Number of circles in the given state.
    pub fn resolve_state(&self, choice: &ResolutionChoice) -> usize {
        self.resolve_state_with(choice, SmoothingConvention::Standard)
    }

    pub fn resolve_state_with(&self, choice: &ResolutionChoice, convention: SmoothingConvention) -> usize {
        assert_eq!(choice.0.len(), self.crossings.len(), "choice must cover every crossing");
        self.circles(|c| choice.0[c] == Resolution::B, convention)
    }

    /// `(s_A, s_B)` under the given convention.
    pub fn extreme_states_with(&self, convention: SmoothingConvention) -> (usize, usize) {
        (self.circles(|_| false, convention), self.circles(|_| true, convention))
    }

    pub fn extreme_states(&self) -> (usize, usize) {
        self.extreme_states_with(SmoothingConvention::Standard)
    }

    /// Genus of the Turaev surface, (2k + c - s_A - s_B) / 2.
    pub fn turaev_genus(&self) -> Result<usize, DiagramError> {
        self.turaev_genus_with(SmoothingConvention::Standard)
    }

    pub fn turaev_genus_with(&self, convention: SmoothingConvention) -> Result<usize, DiagramError> {
        let (sa, sb) = self.extreme_states_with(convention);
        let numerator = 2 * self.split_components() as i64 + self.crossing_count() as i64 - sa as i64 - sb as i64;
        if numerator < 0 || numerator % 2 != 0 {
            return Err(DiagramError::InternalParity { numerator });
        }
        Ok((numerator / 2) as usize)
    }

    pub fn arc_kind(&self, label: ArcId) -> Option<ArcKind> {
        self.arc_index(label).map(|a| self.kind_of(a))
    }

    pub(crate) fn kind_of(&self, arc: usize) -> ArcKind {
        let [t, h] = self.ends[arc];
        match (t.is_over(), h.is_over()) {
            (true, true) => ArcKind::NonAlternating(Sign::Plus),
            (false, false) => ArcKind::NonAlternating(Sign::Minus),
            _ => ArcKind::Alternating,
        }
    }

    /// Label every arc as alternating or non-alternating.
    pub fn classify_arcs(&self) -> BTreeMap<ArcId, ArcKind> {
        (0..self.labels.len())
            .map(|a| (self.labels[a], self.kind_of(a)))
            .collect()
    }

    pub fn is_alternating(&self) -> bool {
        (0..self.labels.len()).all(|a| self.kind_of(a) == ArcKind::Alternating)
    }

    /// No crossing touches the same face twice.
    pub fn is_reduced(&self) -> bool {
        let mut face_of = vec![0usize; 4 * self.crossings.len()];
        for (i, face) in self.faces().iter().enumerate() {
            for e in face {
                face_of[e.half_edge()] = i;
            }
        }
        face_of
            .chunks(4)
            .all(|fs| (0..4).all(|i| (i + 1..4).all(|j| fs[i] != fs[j])))
    }

    /// Adequate iff every single flip away from the all-A (all-B) state
    /// strictly lowers the circle count.
    pub fn is_adequate(&self) -> Result<bool, DiagramError> {
        let n = self.crossings.len();
        if n == 0 {
            return Err(DiagramError::NoCrossings);
        }
        let (sa, sb) = self.extreme_states();
        let mut seen = vec![false; 4 * n];
        let std = SmoothingConvention::Standard;
        for x in 0..n {
            if self.circles_by(|c| c == x, std, &mut seen) >= sa {
                return Ok(false);
            }
            if self.circles_by(|c| c != x, std, &mut seen) >= sb {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Writhe under the strand orientation computed at construction.
    pub fn writhe(&self) -> i64 {
        (0..self.crossings.len())
            .map(|c| if self.over_enters_at_three(c) { 1 } else { -1 })
            .sum()
    }

    fn over_enters_at_three(&self, c: usize) -> bool {
        let arc = self.slot_arc[4 * c + 3];
        self.ends[arc][1] == Endpoint { crossing: c, slot: 3 }
    }

    /// Number of link components (closed strands), crossingless circles included.
    pub fn link_components(&self) -> usize {
        let mut seen = vec![false; self.labels.len()];
        let mut count = self.free_loops;
        for start in 0..self.labels.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                let head = self.ends[a][1];
                let out = Endpoint {
                    crossing: head.crossing,
                    slot: (head.slot + 2) % 4,
                };
                a = self.arc_at(out);
            }
        }
        count
    }

    /// Crossing change at every crossing.
    pub fn mirror(&self) -> PlanarDiagram {
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(c, x)| {
                let [a, b, cc, d] = x.0;
                if self.over_enters_at_three(c) {
                    Crossing([d, a, b, cc])
                } else {
                    Crossing([b, cc, d, a])
                }
            })
            .collect();
        self.rebuilt(crossings)
    }

    /// Reverse the cyclic order at every crossing (reflect the plane).
    pub fn reverse_rotations(&self) -> PlanarDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.0;
                Crossing([a, d, c, b])
            })
            .collect();
        self.rebuilt(crossings)
    }

    fn rebuilt(&self, crossings: Vec<Crossing>) -> PlanarDiagram {
        let mut d = PlanarDiagram::from_crossings(crossings).expect("relabelling a valid diagram stays valid");
        d.free_loops = self.free_loops;
        d
    }

    /// Copy of `self` with every arc label shifted by `offset`.
    fn shifted(&self, offset: ArcId) -> Vec<Crossing> {
        self.crossings
            .iter()
            .map(|x| Crossing(x.0.map(|a| a + offset)))
            .collect()
    }

    pub fn disjoint_union(&self, other: &PlanarDiagram) -> PlanarDiagram {
        let mut crossings = self.crossings.clone();
        crossings.extend(other.shifted(self.max_label()));
        let mut d = PlanarDiagram::from_crossings(crossings).expect("disjoint union of valid diagrams is valid");
        d.free_loops = self.free_loops + other.free_loops;
        d
    }

    /// Connected sum along arc `a1` of `self` and arc `a2` of `other`.
    ///
    /// Arcs of `other` are relabelled by `self.max_label()`. The result
    /// keeps `a1` for the arc leaving `a1`'s tail.
    pub fn connected_sum(&self, a1: ArcId, other: &PlanarDiagram, a2: ArcId) -> Result<PlanarDiagram, DiagramError> {
        let i1 = self.arc_index(a1).ok_or(DiagramError::ArcNotFound(a1))?;
        let i2 = other.arc_index(a2).ok_or(DiagramError::ArcNotFound(a2))?;
        let offset = self.max_label();
        let n1 = self.crossings.len();
        let mut crossings = self.crossings.clone();
        crossings.extend(other.shifted(offset));

        let h1 = self.ends[i1][1];
        let h2 = other.ends[i2][1];
        // tail1 -> head2 keeps a1, tail2 -> head1 keeps a2'.
        crossings[n1 + h2.crossing].0[h2.slot as usize] = a1;
        crossings[h1.crossing].0[h1.slot as usize] = a2 + offset;

        let mut d = PlanarDiagram::from_crossings(crossings)?;
        d.free_loops = self.free_loops + other.free_loops;
        Ok(d)
    }

    /// Replace arc `a` by a one-crossing kink.
    ///
    /// The new crossing is placed so that the arc from the old tail into
    /// the kink, and the kink loop itself, are alternating.
    pub fn insert_twist(&self, a: ArcId) -> Result<PlanarDiagram, DiagramError> {
        let i = self.arc_index(a).ok_or(DiagramError::ArcNotFound(a))?;
        let [tail, head] = self.ends[i];
        let looped = self.max_label() + 1;
        let q = self.max_label() + 2;
        let mut crossings = self.crossings.clone();
        crossings[head.crossing].0[head.slot as usize] = q;
        let kink = if tail.is_over() {
            // Enter under, come back over.
            [a, q, looped, looped]
        } else {
            // Enter over, come back under.
            [looped, a, q, looped]
        };
        crossings.push(Crossing(kink));
        let mut d = PlanarDiagram::from_crossings(crossings)?;
        d.free_loops = self.free_loops;
        Ok(d)
    }

    /// Closure of a braid word on `strands` strands. Generator `i > 0`
    /// is sigma_i, `-i` its inverse.
    pub fn braid_closure(strands: usize, word: &[i32]) -> Result<PlanarDiagram, DiagramError> {
        let mut next: ArcId = 1;
        let mut current: Vec<ArcId> = (0..strands)
            .map(|_| {
                next += 1;
                next - 1
            })
            .collect();
        let start = current.clone();
        let mut tuples = Vec::with_capacity(word.len());
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if i == 0 || i >= strands {
                return Err(DiagramError::MalformedLine {
                    line: 0,
                    column: 0,
                    message: format!("braid generator {g} out of range"),
                });
            }
            let (a, b) = (current[i - 1], current[i]);
            let (c, d) = (next, next + 1);
            next += 2;
            // a: lower-left, b: lower-right, c: upper-left, d: upper-right.
            if g > 0 {
                tuples.push([b, d, c, a]);
            } else {
                tuples.push([a, b, d, c]);
            }
            current[i - 1] = c;
            current[i] = d;
        }
        let mut rename: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        let mut loops = 0;
        for (s, e) in start.iter().zip(&current) {
            if s == e {
                loops += 1;
            } else {
                rename.insert(*e, *s);
            }
        }
        let mut relabel: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        let mut fresh = 0;
        let crossings: Vec<Crossing> = tuples
            .into_iter()
            .map(|t| {
                Crossing(t.map(|a| {
                    let a = *rename.get(&a).unwrap_or(&a);
                    *relabel.entry(a).or_insert_with(|| {
                        fresh += 1;
                        fresh
                    })
                }))
            })
            .collect();
        let mut d = PlanarDiagram::from_crossings(crossings)?;
        d.free_loops = loops;
        Ok(d)
    }

    /// PD text, one `X a b c d` line per crossing.
    pub fn to_pd_string(&self) -> String {
        self.crossings
            .iter()
            .map(|x| format!("X {} {} {} {}\n", x.0[0], x.0[1], x.0[2], x.0[3]))
            .collect()
    }
}

impl std::str::FromStr for PlanarDiagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pd(s)
    }
}

/// Parse PD text: `#` comments, one `X a b c d` crossing per line.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let mut crossings = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let mut tokens = tokenize(body);
        let malformed = |column: usize, message: String| DiagramError::MalformedLine {
            line: ln + 1,
            column,
            message,
        };
        let (col, head) = tokens.next().expect("non-empty line has a token");
        if head != "X" {
            return Err(malformed(col, format!("expected 'X', found '{head}'")));
        }
        let mut arcs = [0; 4];
        for slot in &mut arcs {
            let (col, tok) = tokens
                .next()
                .ok_or_else(|| malformed(line.len() + 1, "expected four arc ids".into()))?;
            *slot = tok
                .parse::<ArcId>()
                .ok()
                .filter(|&a| a > 0)
                .ok_or_else(|| malformed(col, format!("'{tok}' is not a positive arc id")))?;
        }
        if let Some((col, tok)) = tokens.next() {
            return Err(malformed(col, format!("unexpected token '{tok}'")));
        }
        crossings.push(Crossing(arcs));
    }
    PlanarDiagram::from_crossings(crossings)
}

fn tokenize(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out.into_iter()
}

/// Orient every arc. Under-strands run from slot 0 to slot 2; strands
/// that only pass over crossings take the order in which their arc
/// endpoints were first seen.
fn orient(raw: &[[usize; 2]], slot_arc: &[usize]) -> Result<Vec<[Endpoint; 2]>, DiagramError> {
    let mut ends: Vec<Option<[Endpoint; 2]>> = vec![None; raw.len()];
    let other = |arc: usize, h: usize| if raw[arc][0] == h { raw[arc][1] } else { raw[arc][0] };

    let walk = |start_arc: usize, tail: usize, ends: &mut Vec<Option<[Endpoint; 2]>>| {
        let mut arc = start_arc;
        let mut tail = tail;
        while ends[arc].is_none() {
            let head = other(arc, tail);
            let he = Endpoint::from_half_edge(head);
            if he.slot == 2 {
                return Err(DiagramError::Orientation { crossing: he.crossing });
            }
            ends[arc] = Some([Endpoint::from_half_edge(tail), he]);
            let out = 4 * he.crossing + (he.slot as usize + 2) % 4;
            arc = slot_arc[out];
            if raw[arc][0] != out && raw[arc][1] != out {
                unreachable!("slot table is consistent");
            }
            tail = out;
        }
        let [t, _] = ends[arc].expect("visited");
        if t.half_edge() != tail {
            return Err(DiagramError::Orientation { crossing: tail / 4 });
        }
        Ok(())
    };

    for arc in 0..raw.len() {
        if ends[arc].is_some() {
            continue;
        }
        if let Some(&t) = raw[arc].iter().find(|&&h| h % 4 == 2) {
            walk(arc, t, &mut ends)?;
        }
    }
    for arc in 0..raw.len() {
        if ends[arc].is_none() {
            walk(arc, raw[arc][0], &mut ends)?;
        }
    }
    Ok(ends.into_iter().map(|e| e.expect("all arcs oriented")).collect())
}
