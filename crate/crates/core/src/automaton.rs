//! Sparse-grid simulation of the growth rule: an OFF cell turns ON when
//! exactly one of its four edge neighbours is ON. Cells never turn OFF.
//!
//! [`AutomatonState::step`] only examines neighbours of the last-born
//! frontier. A cell next to an older ON cell either was born in the
//! generation after that neighbour or already had two or more ON neighbours,
//! and neighbour counts never decrease, so it can never be born later.
//! [`AutomatonState::naive_step`] drops the shortcut and is kept as an oracle.

use std::collections::HashSet;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellCoord {
    pub x: i64,
    pub y: i64,
}

impl CellCoord {
    pub const ORIGIN: CellCoord = CellCoord { x: 0, y: 0 };

    pub fn new(x: i64, y: i64) -> Self {
        CellCoord { x, y }
    }

    pub fn von_neumann(self) -> [CellCoord; 4] {
        let CellCoord { x, y } = self;
        [
            CellCoord::new(x + 1, y),
            CellCoord::new(x - 1, y),
            CellCoord::new(x, y + 1),
            CellCoord::new(x, y - 1),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundingBox {
    pub min_x: i64,
    pub min_y: i64,
    pub max_x: i64,
    pub max_y: i64,
}

impl BoundingBox {
    pub fn width(&self) -> usize {
        (self.max_x - self.min_x + 1) as usize
    }

    pub fn height(&self) -> usize {
        (self.max_y - self.min_y + 1) as usize
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AutomatonState {
    generation: u64,
    on_set: HashSet<CellCoord>,
    frontier: HashSet<CellCoord>,
    /// `born_history[g - 1]` is `u(g)`.
    born_history: Vec<u64>,
}

impl AutomatonState {
    /// Generation 0: nothing is ON yet.
    pub fn new() -> Self {
        AutomatonState::default()
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub fn on_set(&self) -> &HashSet<CellCoord> {
        &self.on_set
    }

    pub fn frontier(&self) -> &HashSet<CellCoord> {
        &self.frontier
    }

    pub fn born_history(&self) -> &[u64] {
        &self.born_history
    }

    pub fn on_count(&self) -> usize {
        self.on_set.len()
    }

    pub fn is_on(&self, cell: CellCoord) -> bool {
        self.on_set.contains(&cell)
    }

    /// Advance one generation, considering only neighbours of the frontier.
    pub fn step(self) -> Self {
        if self.generation == 0 {
            return self.seed();
        }
        let candidates: HashSet<CellCoord> = self
            .frontier
            .iter()
            .flat_map(|c| c.von_neumann())
            .filter(|c| !self.on_set.contains(c))
            .collect();
        self.advance(candidates)
    }

    /// Advance one generation, considering neighbours of every ON cell.
    pub fn naive_step(self) -> Self {
        if self.generation == 0 {
            return self.seed();
        }
        let candidates: HashSet<CellCoord> = self
            .on_set
            .iter()
            .flat_map(|c| c.von_neumann())
            .filter(|c| !self.on_set.contains(c))
            .collect();
        self.advance(candidates)
    }

    fn seed(mut self) -> Self {
        self.generation = 1;
        self.on_set.insert(CellCoord::ORIGIN);
        self.frontier = HashSet::from([CellCoord::ORIGIN]);
        self.born_history.push(1);
        self
    }

    fn advance(mut self, candidates: HashSet<CellCoord>) -> Self {
        let born: HashSet<CellCoord> = candidates
            .into_iter()
            .filter(|c| {
                c.von_neumann()
                    .iter()
                    .filter(|n| self.on_set.contains(n))
                    .count()
                    == 1
            })
            .collect();
        self.on_set.extend(born.iter().copied());
        self.born_history.push(born.len() as u64);
        self.frontier = born;
        self.generation += 1;
        self
    }

    pub fn bounding_box(&self) -> Result<BoundingBox> {
        let mut cells = self.on_set.iter();
        let first = cells.next().ok_or(Error::EmptyState)?;
        let init = BoundingBox {
            min_x: first.x,
            min_y: first.y,
            max_x: first.x,
            max_y: first.y,
        };
        Ok(cells.fold(init, |b, c| BoundingBox {
            min_x: b.min_x.min(c.x),
            min_y: b.min_y.min(c.y),
            max_x: b.max_x.max(c.x),
            max_y: b.max_y.max(c.y),
        }))
    }

    /// Rows from `max_y` down to `min_y`, `#` for ON and `.` for OFF.
    pub fn render_text(&self) -> Result<String> {
        let bbox = self.bounding_box()?;
        let mut out = String::with_capacity((bbox.width() + 1) * bbox.height());
        for y in (bbox.min_y..=bbox.max_y).rev() {
            for x in bbox.min_x..=bbox.max_x {
                out.push(if self.is_on(CellCoord::new(x, y)) {
                    '#'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        Ok(out)
    }

    /// Plain (`P1`) PBM: row 0 is `max_y`, column 0 is `min_x`, `1` is ON.
    pub fn render_pbm(&self) -> Result<Vec<u8>> {
        let bbox = self.bounding_box()?;
        let mut out = format!("P1\n{} {}\n", bbox.width(), bbox.height()).into_bytes();
        for y in (bbox.min_y..=bbox.max_y).rev() {
            for x in bbox.min_x..=bbox.max_x {
                if x != bbox.min_x {
                    out.push(b' ');
                }
                out.push(if self.is_on(CellCoord::new(x, y)) {
                    b'1'
                } else {
                    b'0'
                });
            }
            out.push(b'\n');
        }
        Ok(out)
    }
}

/// Which stepper drives [`run_to_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Stepper {
    #[default]
    Frontier,
    Naive,
}

pub fn new_automaton() -> AutomatonState {
    AutomatonState::new()
}

/// State at generation `n` using the frontier stepper.
pub fn run_to(n: u64, budget: u64) -> Result<AutomatonState> {
    run_to_with(n, budget, Stepper::Frontier)
}

pub fn run_to_with(n: u64, budget: u64, stepper: Stepper) -> Result<AutomatonState> {
    check_budget(n, budget)?;
    let mut state = AutomatonState::new();
    for _ in 0..n {
        state = match stepper {
            Stepper::Frontier => state.step(),
            Stepper::Naive => state.naive_step(),
        };
    }
    Ok(state)
}

pub(crate) fn check_budget(n: u64, budget: u64) -> Result<()> {
    if n > budget {
        return Err(Error::BudgetExceeded {
            what: "simulated generations",
            requested: n.to_string(),
            budget,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{cells_born, total_cells};
    use num_bigint::BigUint;

    const BUDGET: u64 = 1024;

    fn cells(list: &[(i64, i64)]) -> HashSet<CellCoord> {
        list.iter().map(|&(x, y)| CellCoord::new(x, y)).collect()
    }

    #[test]
    fn first_generations() {
        let s = new_automaton();
        assert_eq!(s.on_count(), 0);
        assert_eq!(s.generation(), 0);
        assert!(s.born_history().is_empty());
        let s = s.step();
        assert_eq!(s.on_set(), &cells(&[(0, 0)]));
        let s = s.step();
        assert_eq!(s.on_count(), 5);
        assert_eq!(s.frontier(), &cells(&[(1, 0), (-1, 0), (0, 1), (0, -1)]));
    }

    #[test]
    fn births_match_formula_examples() {
        let s = run_to(4, BUDGET).unwrap();
        assert_eq!(s.born_history()[3], 12);
        let s = run_to(8, BUDGET).unwrap();
        assert_eq!(s.born_history()[7], 36);
    }

    #[test]
    fn naive_step_reaches_figure_total() {
        let s = run_to_with(13, BUDGET, Stepper::Naive)
            .unwrap()
            .naive_step();
        assert_eq!(s.on_count(), 197);
    }

    #[test]
    fn run_to_examples_and_budget() {
        assert_eq!(run_to(0, BUDGET).unwrap(), AutomatonState::new());
        assert_eq!(run_to(14, BUDGET).unwrap().on_count(), 197);
        assert!(matches!(
            run_to(1025, BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn simulation_tracks_closed_forms() {
        let mut s = AutomatonState::new();
        for n in 1..=256u64 {
            let prev = s.on_set.clone();
            s = s.step();
            assert!(prev.is_subset(s.on_set()));
            assert!(s.frontier().is_subset(s.on_set()));
            assert_eq!(
                BigUint::from(s.on_count()),
                total_cells(&BigUint::from(n)).unwrap()
            );
            assert_eq!(
                BigUint::from(s.born_history()[n as usize - 1]),
                cells_born(&BigUint::from(n))
            );
            assert_eq!(s.born_history().iter().sum::<u64>(), s.on_count() as u64);
        }
        assert_eq!(s.on_count(), 87381);
    }

    #[test]
    fn frontier_and_naive_agree() {
        let mut fast = AutomatonState::new();
        let mut slow = AutomatonState::new();
        for _ in 0..=64 {
            fast = fast.step();
            slow = slow.naive_step();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn pattern_has_square_symmetry() {
        let mut s = AutomatonState::new();
        for _ in 1..=128 {
            s = s.step();
            for c in s.on_set() {
                for image in [(-c.x, c.y), (c.x, -c.y), (c.y, c.x)] {
                    assert!(
                        s.is_on(CellCoord::new(image.0, image.1)),
                        "gen {}",
                        s.generation()
                    );
                }
            }
        }
    }

    #[test]
    fn bounding_boxes() {
        assert!(matches!(
            AutomatonState::new().bounding_box(),
            Err(Error::EmptyState)
        ));
        let bb = run_to(1, BUDGET).unwrap().bounding_box().unwrap();
        assert_eq!((bb.min_x, bb.min_y, bb.max_x, bb.max_y), (0, 0, 0, 0));
        let bb = run_to(2, BUDGET).unwrap().bounding_box().unwrap();
        assert_eq!((bb.min_x, bb.min_y, bb.max_x, bb.max_y), (-1, -1, 1, 1));
        for n in 1..=64i64 {
            let bb = run_to(n as u64, BUDGET).unwrap().bounding_box().unwrap();
            assert_eq!(
                (bb.min_x, bb.min_y, bb.max_x, bb.max_y),
                (1 - n, 1 - n, n - 1, n - 1)
            );
        }
    }

    #[test]
    fn text_renders() {
        assert!(AutomatonState::new().render_text().is_err());
        assert_eq!(run_to(1, BUDGET).unwrap().render_text().unwrap(), "#\n");
        assert_eq!(
            run_to(2, BUDGET).unwrap().render_text().unwrap(),
            ".#.\n###\n.#.\n"
        );
        let text = run_to(14, BUDGET).unwrap().render_text().unwrap();
        assert_eq!(text.chars().filter(|&c| c == '#').count(), 197);
        assert_eq!(text.lines().count(), 27);
    }

    #[test]
    fn text_render_puts_max_y_first() {
        let mut s = AutomatonState::new();
        s.generation = 1;
        s.on_set = cells(&[(0, 1), (1, 0)]);
        assert_eq!(s.render_text().unwrap(), "#.\n.#\n");
        assert_eq!(s.render_pbm().unwrap(), b"P1\n2 2\n1 0\n0 1\n");
    }

    #[test]
    fn pbm_renders() {
        assert!(AutomatonState::new().render_pbm().is_err());
        assert_eq!(
            run_to(1, BUDGET).unwrap().render_pbm().unwrap(),
            b"P1\n1 1\n1\n"
        );
        assert_eq!(
            run_to(2, BUDGET).unwrap().render_pbm().unwrap(),
            b"P1\n3 3\n0 1 0\n1 1 1\n0 1 0\n"
        );
    }
}
