//! Bumpless pipe dreams.
//!
//! A tile is stored as the set of its four edges that carry a pipe. The six
//! legal tiles are exactly the six legal edge sets, so a bumping tile (two
//! elbows sharing a cell) cannot be expressed: its edge set is that of a
//! crossing.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Cell, Diagram, Permutation};

const TOP: u8 = 1;
const BOTTOM: u8 = 2;
const LEFT: u8 = 4;
const RIGHT: u8 = 8;
const VERT: u8 = TOP | BOTTOM;
const HORIZ: u8 = LEFT | RIGHT;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tile {
    /// Pipe enters from below and leaves to the right.
    DownElbow,
    /// Pipe enters from the left and leaves upward.
    UpElbow,
    Crossing,
    Blank,
    Horizontal,
    Vertical,
}

impl Tile {
    pub const ALL: [Tile; 6] = [
        Tile::DownElbow,
        Tile::UpElbow,
        Tile::Crossing,
        Tile::Blank,
        Tile::Horizontal,
        Tile::Vertical,
    ];

    fn mask(self) -> u8 {
        match self {
            Tile::DownElbow => BOTTOM | RIGHT,
            Tile::UpElbow => TOP | LEFT,
            Tile::Crossing => VERT | HORIZ,
            Tile::Blank => 0,
            Tile::Horizontal => HORIZ,
            Tile::Vertical => VERT,
        }
    }

    fn from_mask(m: u8) -> Option<Tile> {
        Tile::ALL.into_iter().find(|t| t.mask() == m)
    }

    pub fn glyph(self) -> char {
        match self {
            Tile::DownElbow => 'r',
            Tile::UpElbow => 'j',
            Tile::Crossing => '+',
            Tile::Blank => '.',
            Tile::Horizontal => '-',
            Tile::Vertical => '|',
        }
    }

    pub fn from_glyph(c: char) -> Option<Tile> {
        Tile::ALL.into_iter().find(|t| t.glyph() == c)
    }

    pub fn is_elbow(self) -> bool {
        matches!(self, Tile::DownElbow | Tile::UpElbow)
    }
}

/// A validated bumpless pipe dream together with its permutation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Tile>>", into = "Vec<Vec<Tile>>")]
pub struct Bpd {
    n: usize,
    grid: Vec<u8>,
    perm: Permutation,
}

/// Droop of the pipe turning at `source` into the blank cell `target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DroopMove {
    pub source: Cell,
    pub target: Cell,
}

impl Bpd {
    /// Validates a grid of tiles and traces its pipes.
    pub fn new(tiles: Vec<Vec<Tile>>) -> Result<Self> {
        let n = tiles.len();
        if n == 0 || tiles.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidBpd("grid must be square and nonempty".into()));
        }
        let grid = tiles.into_iter().flatten().map(Tile::mask).collect();
        Self::from_masks(n, grid)
    }

    fn from_masks(n: usize, grid: Vec<u8>) -> Result<Self> {
        let at = |i: usize, j: usize| grid[(i - 1) * n + (j - 1)];
        for i in 1..=n {
            for j in 1..=n {
                let m = at(i, j);
                if Tile::from_mask(m).is_none() {
                    return Err(Error::InvalidBpd(format!("illegal tile at ({i},{j})")));
                }
                if j < n && (m & RIGHT != 0) != (at(i, j + 1) & LEFT != 0) {
                    return Err(Error::InvalidBpd(format!(
                        "horizontal mismatch between ({i},{j}) and ({i},{})",
                        j + 1
                    )));
                }
                if i < n && (m & BOTTOM != 0) != (at(i + 1, j) & TOP != 0) {
                    return Err(Error::InvalidBpd(format!(
                        "vertical mismatch between ({i},{j}) and ({},{j})",
                        i + 1
                    )));
                }
            }
        }
        for k in 1..=n {
            if at(1, k) & TOP != 0 {
                return Err(Error::InvalidBpd(format!("pipe leaves through the top at column {k}")));
            }
            if at(k, 1) & LEFT != 0 {
                return Err(Error::InvalidBpd(format!("pipe enters from the left at row {k}")));
            }
            if at(n, k) & BOTTOM == 0 {
                return Err(Error::InvalidBpd(format!("no pipe enters column {k}")));
            }
            if at(k, n) & RIGHT == 0 {
                return Err(Error::InvalidBpd(format!("no pipe exits row {k}")));
            }
        }
        // Trace pipe c upward from the bottom of column c.
        let mut word = vec![0usize; n];
        let mut crossed: HashSet<(usize, usize)> = HashSet::new();
        // vertical/horizontal pipe label occupying each crossing
        let mut vlabel = vec![0usize; n * n];
        let mut hlabel = vec![0usize; n * n];
        for c in 1..=n {
            let (mut i, mut j) = (n, c);
            let mut moving_up = true;
            loop {
                let m = at(i, j);
                let idx = (i - 1) * n + (j - 1);
                if m == VERT | HORIZ {
                    if moving_up {
                        vlabel[idx] = c;
                    } else {
                        hlabel[idx] = c;
                    }
                } else if m == BOTTOM | RIGHT {
                    moving_up = false;
                } else if m == TOP | LEFT {
                    moving_up = true;
                }
                if moving_up {
                    if i == 1 {
                        return Err(Error::InvalidBpd(format!("pipe {c} leaves through the top")));
                    }
                    i -= 1;
                } else if j == n {
                    break;
                } else {
                    j += 1;
                }
            }
            word[i - 1] = c;
        }
        for idx in 0..n * n {
            if grid[idx] == VERT | HORIZ {
                let (p, q) = (vlabel[idx].min(hlabel[idx]), vlabel[idx].max(hlabel[idx]));
                if !crossed.insert((p, q)) {
                    return Err(Error::InvalidBpd(format!("pipes {p} and {q} cross twice")));
                }
            }
        }
        let perm = Permutation::new(word)
            .map_err(|_| Error::InvalidBpd("pipes do not exit in distinct rows".into()))?;
        Ok(Bpd { n, grid, perm })
    }

    /// The Rothe BPD: elbows at `(i, w(i))`, blanks exactly on `D(w)`.
    pub fn rothe(w: &Permutation) -> Self {
        let n = w.n();
        let inv = w.inverse();
        let mut grid = vec![0u8; n * n];
        for k in 1..=n {
            for j in 1..=n {
                let idx = (k - 1) * n + (j - 1);
                grid[idx] = if w.get(k) == j {
                    BOTTOM | RIGHT
                } else {
                    let v = if k > inv.get(j) { VERT } else { 0 };
                    let h = if j > w.get(k) { HORIZ } else { 0 };
                    v | h
                };
            }
        }
        Bpd {
            n,
            grid,
            perm: w.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Tile at `(i, j)`, 1-based.
    pub fn tile(&self, i: usize, j: usize) -> Tile {
        Tile::from_mask(self.mask(i, j)).expect("validated grid")
    }

    fn mask(&self, i: usize, j: usize) -> u8 {
        self.grid[(i - 1) * self.n + (j - 1)]
    }

    pub fn tiles(&self) -> Vec<Vec<Tile>> {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.tile(i, j)).collect())
            .collect()
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    /// The blank cells.
    pub fn diagram(&self) -> Diagram {
        self.cells_where(|t| t == Tile::Blank)
    }

    fn cells_where(&self, pred: impl Fn(Tile) -> bool) -> Diagram {
        let mut d = Diagram::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                if pred(self.tile(i, j)) {
                    d.insert(Cell::new(i, j));
                }
            }
        }
        d
    }

    /// Why `m` is not a legal droop, if it is not.
    fn droop_violation(&self, m: DroopMove) -> Option<String> {
        let (s, t) = (m.source, m.target);
        let n = self.n;
        if s.row == 0 || s.col == 0 || t.row > n || t.col > n {
            return Some("cell outside the grid".into());
        }
        if self.tile(s.row, s.col) != Tile::DownElbow {
            return Some(format!("source {s} is not a down elbow"));
        }
        if t.row <= s.row || t.col <= s.col {
            return Some(format!("target {t} is not strictly southeast of {s}"));
        }
        if self.tile(t.row, t.col) != Tile::Blank {
            return Some(format!("target {t} is not blank"));
        }
        for i in s.row..=t.row {
            for j in s.col..=t.col {
                if (i, j) != (s.row, s.col) && self.tile(i, j).is_elbow() {
                    return Some(format!("rectangle contains another elbow at ({i},{j})"));
                }
            }
        }
        None
    }

    pub fn legal_droops(&self) -> BTreeSet<DroopMove> {
        let elbows = self.cells_where(|t| t == Tile::DownElbow);
        let blanks = self.diagram();
        let mut out = BTreeSet::new();
        for &source in &elbows {
            for &target in &blanks {
                let m = DroopMove { source, target };
                if target.row > source.row
                    && target.col > source.col
                    && self.droop_violation(m).is_none()
                {
                    out.insert(m);
                }
            }
        }
        out
    }

    pub fn apply_droop(&self, m: DroopMove) -> Result<Bpd> {
        if let Some(why) = self.droop_violation(m) {
            return Err(Error::IllegalDroop(why));
        }
        let (i, j, a, b) = (m.source.row, m.source.col, m.target.row, m.target.col);
        let mut e = Editor::new(self);
        e.set(i, j, BOTTOM | RIGHT, 0)?;
        e.set(a, b, 0, TOP | LEFT)?;
        e.set(a, j, VERT, BOTTOM | RIGHT)?;
        e.set(i, b, HORIZ, BOTTOM | RIGHT)?;
        for k in i + 1..a {
            e.remove(k, j, VERT)?;
            e.add(k, b, VERT)?;
        }
        for l in j + 1..b {
            e.remove(i, l, HORIZ)?;
            e.add(a, l, HORIZ)?;
        }
        let out = e.finish()?;
        if out.perm != self.perm {
            return Err(Error::Invariant("droop changed the permutation".into()));
        }
        Ok(out)
    }

    /// All BPDs of `w`: the droop closure of the Rothe BPD.
    pub fn enumerate(w: &Permutation) -> BTreeSet<Bpd> {
        let start = Bpd::rothe(w);
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        seen.insert(start.grid.clone());
        let mut out = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        while let Some(b) = queue.pop_front() {
            for m in b.legal_droops() {
                let next = b.apply_droop(m).expect("legal droop");
                if seen.insert(next.grid.clone()) {
                    queue.push_back(next);
                }
            }
            out.insert(b);
        }
        out
    }

    /// Depth-first variant of [`Bpd::enumerate`], visiting droops in reverse.
    pub fn enumerate_dfs(w: &Permutation) -> BTreeSet<Bpd> {
        let start = Bpd::rothe(w);
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        seen.insert(start.grid.clone());
        let mut out = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(b) = stack.pop() {
            for m in b.legal_droops().into_iter().rev() {
                let next = b.apply_droop(m).expect("legal droop");
                if seen.insert(next.grid.clone()) {
                    stack.push(next);
                }
            }
            out.insert(b);
        }
        out
    }

    pub fn count(w: &Permutation) -> usize {
        Self::enumerate(w).len()
    }

    /// The transition map at a lower outside corner `(a, b)` of `D(w)`.
    ///
    /// With `c = w^{-1}(b)` and `p = w(a)`, the rectangle `[a,c] x [b,p]` is
    /// rewritten into the Rothe pattern of `w t_{a,c}`; the corner becomes a
    /// down elbow if blank, or a crossing if it was an up elbow.
    pub fn transition_bijection(&self, corner: Cell) -> Result<Bpd> {
        let w = &self.perm;
        if !w.is_lower_outside_corner(corner) {
            return Err(Error::NotACorner(corner));
        }
        let (a, b) = (corner.row, corner.col);
        let c = w.inverse().get(b);
        let p = w.get(a);
        let mut e = Editor::new(self);
        match self.tile(a, b) {
            Tile::Blank => e.set(a, b, 0, BOTTOM | RIGHT)?,
            Tile::UpElbow => e.add(a, b, BOTTOM | RIGHT)?,
            t => {
                return Err(Error::Invariant(format!(
                    "corner {corner} holds {t:?}, expected a blank or an up elbow"
                )))
            }
        }
        e.set(c, b, BOTTOM | RIGHT, VERT)?;
        e.set(a, p, BOTTOM | RIGHT, HORIZ)?;
        e.set(c, p, VERT | HORIZ, BOTTOM | RIGHT)?;
        for k in a + 1..c {
            e.add(k, b, VERT)?;
            e.remove(k, p, VERT)?;
        }
        for l in b + 1..p {
            e.add(a, l, HORIZ)?;
            e.remove(c, l, HORIZ)?;
        }
        e.finish()
    }

    pub fn to_ascii(&self) -> String {
        let mut s = String::with_capacity(self.n * (self.n + 1));
        for i in 1..=self.n {
            for j in 1..=self.n {
                s.push(self.tile(i, j).glyph());
            }
            s.push('\n');
        }
        s
    }

    pub fn parse_ascii(text: &str) -> Result<Bpd> {
        let mut rows = Vec::new();
        for (li, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .chars()
                .enumerate()
                .map(|(ci, ch)| {
                    Tile::from_glyph(ch).ok_or_else(|| Error::Parse {
                        line: li + 1,
                        column: ci + 1,
                        message: format!("unknown tile glyph {ch:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Bpd::new(rows)
    }
}

/// Every BPD of `w` has a blank or an up elbow at the lower outside corner.
pub fn corner_tile_check(w: &Permutation, corner: Cell) -> Result<bool> {
    if !w.is_lower_outside_corner(corner) {
        return Err(Error::NotACorner(corner));
    }
    Ok(Bpd::enumerate(w)
        .iter()
        .all(|b| matches!(b.tile(corner.row, corner.col), Tile::Blank | Tile::UpElbow)))
}

/// Checked edge-set surgery on a copy of a grid.
struct Editor {
    n: usize,
    grid: Vec<u8>,
}

impl Editor {
    fn new(b: &Bpd) -> Self {
        Editor {
            n: b.n,
            grid: b.grid.clone(),
        }
    }

    fn slot(&mut self, i: usize, j: usize) -> &mut u8 {
        &mut self.grid[(i - 1) * self.n + (j - 1)]
    }

    fn set(&mut self, i: usize, j: usize, from: u8, to: u8) -> Result<()> {
        let s = self.slot(i, j);
        if *s != from {
            return Err(Error::Invariant(format!("unexpected tile at ({i},{j})")));
        }
        *s = to;
        Ok(())
    }

    fn add(&mut self, i: usize, j: usize, edges: u8) -> Result<()> {
        let s = self.slot(i, j);
        if *s & edges != 0 {
            return Err(Error::Invariant(format!("edges already present at ({i},{j})")));
        }
        *s |= edges;
        Ok(())
    }

    fn remove(&mut self, i: usize, j: usize, edges: u8) -> Result<()> {
        let s = self.slot(i, j);
        if *s & edges != edges {
            return Err(Error::Invariant(format!("edges missing at ({i},{j})")));
        }
        *s &= !edges;
        Ok(())
    }

    fn finish(self) -> Result<Bpd> {
        Bpd::from_masks(self.n, self.grid)
    }
}

impl TryFrom<Vec<Vec<Tile>>> for Bpd {
    type Error = Error;
    fn try_from(t: Vec<Vec<Tile>>) -> Result<Self> {
        Bpd::new(t)
    }
}

impl From<Bpd> for Vec<Vec<Tile>> {
    fn from(b: Bpd) -> Self {
        b.tiles()
    }
}

impl FromStr for Bpd {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Bpd::parse_ascii(s)
    }
}

impl fmt::Display for Bpd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

impl fmt::Debug for Bpd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bpd({}; {})", self.perm, self.to_ascii().trim_end().replace('\n', "/"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn cells(v: &[(usize, usize)]) -> Diagram {
        v.iter().map(|&(r, c)| Cell::new(r, c)).collect()
    }

    /// Oracle: every tiling of the n x n grid that passes validation.
    fn brute_force_bpds(n: usize) -> BTreeSet<Bpd> {
        let cells = n * n;
        let mut out = BTreeSet::new();
        let mut code = vec![0usize; cells];
        loop {
            let tiles: Vec<Vec<Tile>> = code.chunks(n).map(|r| r.iter().map(|&k| Tile::ALL[k]).collect()).collect();
            if let Ok(b) = Bpd::new(tiles) {
                out.insert(b);
            }
            let mut k = 0;
            loop {
                if k == cells {
                    return out;
                }
                code[k] += 1;
                if code[k] < 6 {
                    break;
                }
                code[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn rothe_examples() {
        let id = Bpd::rothe(&Permutation::identity(3));
        assert_eq!(id.to_ascii(), "r--\n|r-\n||r\n");
        assert!(id.diagram().is_empty());
        let w = p("4721653");
        let b = Bpd::rothe(&w);
        assert_eq!(b.diagram(), w.rothe_diagram());
        assert_eq!(
            b.to_ascii(),
            "...r---\n...|..r\n.r-+--+\nr+-+--+\n||.|.r+\n||.|r++\n||r++++\n"
        );
        for w in Permutation::all(5) {
            let b = Bpd::rothe(&w);
            let re = Bpd::new(b.tiles()).unwrap();
            assert_eq!(re.permutation(), &w);
            assert_eq!(re.diagram(), w.rothe_diagram());
        }
    }

    #[test]
    fn bpds_of_132() {
        let all: Vec<Bpd> = Bpd::enumerate(&p("132")).into_iter().collect();
        assert_eq!(all.len(), 2);
        let diagrams: BTreeSet<Diagram> = all.iter().map(Bpd::diagram).collect();
        assert_eq!(diagrams, [cells(&[(1, 1)]), cells(&[(2, 2)])].into_iter().collect());
        assert_eq!(Bpd::count(&p("213")), 1);
        assert_eq!(Bpd::count(&Permutation::identity(4)), 1);
        assert_eq!(Bpd::count(&p("321")), 1);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=3 {
            let brute = brute_force_bpds(n);
            let mut closure = BTreeSet::new();
            for w in Permutation::all(n) {
                closure.extend(Bpd::enumerate(&w));
            }
            assert_eq!(closure, brute, "n = {n}");
        }
    }

    #[test]
    fn traversal_order_independent() {
        for w in Permutation::all(5) {
            assert_eq!(Bpd::enumerate(&w), Bpd::enumerate_dfs(&w));
        }
    }

    #[test]
    fn droops_preserve_validity() {
        for w in Permutation::all(4) {
            for b in Bpd::enumerate(&w) {
                assert_eq!(b.permutation(), &w);
                for m in b.legal_droops() {
                    let next = b.apply_droop(m).unwrap();
                    // full revalidation from tiles
                    let again = Bpd::new(next.tiles()).unwrap();
                    assert_eq!(again.permutation(), &w);
                    assert_eq!(next.diagram().len(), b.diagram().len());
                }
            }
        }
    }

    #[test]
    fn three_droops_into_corner() {
        let b = Bpd::rothe(&p("4721653"));
        let into: Vec<_> = b
            .legal_droops()
            .into_iter()
            .filter(|m| m.target == Cell::new(5, 5))
            .collect();
        assert_eq!(into.len(), 3);
    }

    #[test]
    fn illegal_droops_rejected() {
        let rothe = Bpd::rothe(&p("4721653"));
        let b = rothe
            .apply_droop(DroopMove { source: Cell::new(3, 2), target: Cell::new(5, 5) })
            .unwrap();
        // the drooped pipe now turns at (5,2), inside [4,6] x [1,3]
        let m = DroopMove { source: Cell::new(4, 1), target: Cell::new(6, 3) };
        assert!(rothe.apply_droop(m).is_ok());
        match b.apply_droop(m) {
            Err(Error::IllegalDroop(msg)) => assert!(msg.contains("another elbow"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let m = DroopMove { source: Cell::new(1, 1), target: Cell::new(2, 2) };
        assert!(matches!(b.apply_droop(m), Err(Error::IllegalDroop(_))));
    }

    #[test]
    fn rejects_malformed_grids() {
        // a pipe crossing the top boundary
        assert!(Bpd::parse_ascii("|").is_err());
        // bad glyph
        assert!(matches!(Bpd::parse_ascii("r-\n|x"), Err(Error::Parse { line: 2, column: 2, .. })));
        // two pipes crossing twice: 2x2 cannot; build a 3x3 counterexample
        assert!(Bpd::parse_ascii("r-\n+r").is_err());
    }

    #[test]
    fn corner_tiles() {
        let w = p("4721653");
        assert!(corner_tile_check(&w, Cell::new(5, 5)).unwrap());
        assert!(corner_tile_check(&w, Cell::new(2, 3)).is_err());
        for n in 1..=5 {
            for w in Permutation::all(n) {
                for c in w.lower_outside_corners() {
                    assert!(corner_tile_check(&w, c).unwrap());
                }
            }
        }
    }

    #[test]
    fn transition_on_example() {
        let w = p("4721653");
        let corner = Cell::new(5, 5);
        let rothe = Bpd::rothe(&w);
        assert_eq!(rothe.transition_bijection(corner).unwrap(), Bpd::rothe(&p("4721563")));
        let mut images = BTreeSet::new();
        for m in rothe.legal_droops().into_iter().filter(|m| m.target == corner) {
            let img = rothe.apply_droop(m).unwrap().transition_bijection(corner).unwrap();
            images.insert(img);
        }
        let expected: BTreeSet<Bpd> = ["5721463", "4751263", "4725163"]
            .iter()
            .map(|s| Bpd::rothe(&p(s)))
            .collect();
        assert_eq!(images, expected);
    }

    #[test]
    fn ascii_and_json_round_trip() {
        for b in Bpd::enumerate(&p("2413")) {
            assert_eq!(Bpd::parse_ascii(&b.to_ascii()).unwrap(), b);
            let json = serde_json::to_string(&b).unwrap();
            assert_eq!(serde_json::from_str::<Bpd>(&json).unwrap(), b);
        }
        let json = serde_json::to_string(&Bpd::rothe(&p("21"))).unwrap();
        assert_eq!(json, r#"[["Blank","DownElbow"],["DownElbow","Crossing"]]"#);
    }
}
