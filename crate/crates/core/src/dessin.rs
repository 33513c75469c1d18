//! The oriented bipartite map of an ordered difference set.
//!
//! Darts are half-edges identified by (color, vertex mod l, position in the
//! cyclic ordering), packed into dense ids so that the rotation, the edge
//! involution and the face successor are all O(1) index arithmetic:
//!
//! * white dart (w, i) is half of the edge (w, w + d_i),
//! * black dart (b, i) is half of the edge (b - d_i, b),
//! * around a cell, the successor of white (w, i) is black (w + d_i, i + 1)
//!   and the successor of black (b, i) is white (b - d_i, i - 1),
//!
//! which realizes "anticlockwise around white, clockwise around black" for
//! one global orientation. A cell entered along position i closes after
//! 2 * l / gcd(d_i - d_{i+1}, l) steps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordering::OrderedDifferenceSet;
use crate::util::lcm;

/// Default ceiling on the edge count q*l of a buildable dessin.
pub const DEFAULT_EDGE_LIMIT: u64 = 1_500_000;

const NO_POSITION: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Color {
    White,
    Black,
}

/// Dense dart id; whites occupy [0, ql), blacks [ql, 2ql).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u32);

/// One face of the embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    /// Minimal dart id on the boundary (always a white dart).
    pub start: Dart,
    /// Number of boundary darts, 2r.
    pub valency: u64,
    /// The ordering pair (d_i, d_{i+1}) at the white boundary position.
    pub entering: (u64, u64),
}

/// lcm of white valencies, black valencies, and half the face valencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureTriple(pub u64, pub u64, pub u64);

/// Outcome of the cell-boundary index check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WadaWitness {
    pub cell: usize,
    pub color: Color,
    pub index: u64,
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WadaStatus {
    pub wada: bool,
    pub witness: Option<WadaWitness>,
}

/// The built map: immutable after construction.
#[derive(Debug, Clone)]
pub struct Dessin {
    l: u64,
    q: u64,
    order: OrderedDifferenceSet,
    pos_of: Vec<u32>,
    cells: Vec<Cell>,
    cell_of: Vec<u32>,
}

/// Builds the dessin under the default size guard.
pub fn build_dessin(order: &OrderedDifferenceSet) -> Result<Dessin> {
    build_dessin_with_limit(order, DEFAULT_EDGE_LIMIT)
}

/// Builds the dessin, refusing more than `max_edges` edges.
pub fn build_dessin_with_limit(order: &OrderedDifferenceSet, max_edges: u64) -> Result<Dessin> {
    let l = order.modulus();
    let q = order.len();
    if q < 2 {
        return Err(Error::DegenerateOrdering);
    }
    let edges = l * q;
    if edges > max_edges {
        return Err(Error::SizeGuard {
            edges,
            max: max_edges,
        });
    }
    if 2 * edges > u32::MAX as u64 {
        return Err(Error::SizeGuard {
            edges,
            max: u32::MAX as u64 / 2,
        });
    }

    let mut pos_of = vec![NO_POSITION; l as usize];
    for (i, &d) in order.order().iter().enumerate() {
        pos_of[d as usize] = i as u32;
    }

    let mut dessin = Dessin {
        l,
        q,
        order: order.clone(),
        pos_of,
        cells: Vec::new(),
        cell_of: vec![u32::MAX; (2 * edges) as usize],
    };
    dessin.walk_cells()?;
    Ok(dessin)
}

impl Dessin {
    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn ordering(&self) -> &OrderedDifferenceSet {
        &self.order
    }

    pub fn vertex_count(&self) -> u64 {
        2 * self.l
    }

    pub fn edge_count(&self) -> u64 {
        self.q * self.l
    }

    pub fn dart_count(&self) -> u64 {
        2 * self.q * self.l
    }

    pub fn white_dart(&self, w: u64, i: u64) -> Dart {
        Dart((w * self.q + i) as u32)
    }

    pub fn black_dart(&self, b: u64, i: u64) -> Dart {
        Dart((self.l * self.q + b * self.q + i) as u32)
    }

    pub fn dart_color(&self, d: Dart) -> Color {
        if (d.0 as u64) < self.l * self.q {
            Color::White
        } else {
            Color::Black
        }
    }

    /// Vertex index mod l of the dart's endpoint.
    pub fn dart_vertex(&self, d: Dart) -> u64 {
        (d.0 as u64 % (self.l * self.q)) / self.q
    }

    /// Position of the dart in the cyclic ordering around its vertex.
    pub fn dart_position(&self, d: Dart) -> u64 {
        d.0 as u64 % self.q
    }

    /// Element of the ordering at position i.
    pub fn element_at(&self, i: u64) -> u64 {
        self.order.order()[(i % self.q) as usize]
    }

    /// Position of a residue in the ordering, if it belongs to the set.
    pub fn position_of(&self, residue: u64) -> Option<u64> {
        match self.pos_of[(residue % self.l) as usize] {
            NO_POSITION => None,
            i => Some(i as u64),
        }
    }

    /// Successor around the dart's vertex.
    pub fn rotation_next(&self, d: Dart) -> Dart {
        let base = d.0 as u64 / self.q * self.q;
        let i = d.0 as u64 % self.q;
        Dart((base + (i + 1) % self.q) as u32)
    }

    /// The other half of the dart's edge (same position, opposite color).
    pub fn edge_partner(&self, d: Dart) -> Dart {
        let i = self.dart_position(d);
        let v = self.dart_vertex(d);
        let e = self.element_at(i);
        match self.dart_color(d) {
            Color::White => self.black_dart((v + e) % self.l, i),
            Color::Black => self.white_dart((v + self.l - e) % self.l, i),
        }
    }

    /// Successor along the dart's cell boundary.
    pub fn face_next(&self, d: Dart) -> Dart {
        let i = self.dart_position(d);
        let v = self.dart_vertex(d);
        match self.dart_color(d) {
            Color::White => {
                let e = self.element_at(i);
                self.black_dart((v + e) % self.l, (i + 1) % self.q)
            }
            Color::Black => {
                let e = self.element_at(i);
                self.white_dart((v + self.l - e) % self.l, (i + self.q - 1) % self.q)
            }
        }
    }

    fn walk_cells(&mut self) -> Result<()> {
        let total = self.dart_count();
        for start in 0..self.edge_count() {
            if self.cell_of[start as usize] != u32::MAX {
                continue;
            }
            let cell_idx = self.cells.len() as u32;
            let start_dart = Dart(start as u32);
            let mut cur = start_dart;
            let mut valency = 0u64;
            loop {
                self.cell_of[cur.0 as usize] = cell_idx;
                valency += 1;
                cur = self.face_next(cur);
                if cur == start_dart {
                    break;
                }
                if valency > total {
                    return Err(Error::Internal("face walk escaped the dart set".into()));
                }
            }
            let i = self.dart_position(start_dart);
            let entering = (self.element_at(i), self.element_at((i + 1) % self.q));
            self.cells.push(Cell {
                start: start_dart,
                valency,
                entering,
            });
        }
        if self.cell_of.contains(&u32::MAX) {
            return Err(Error::Internal("cell walk missed a dart".into()));
        }
        let chi = self.euler_characteristic();
        if chi.rem_euclid(2) != 0 || chi > 2 {
            return Err(Error::Internal(format!(
                "impossible Euler characteristic {chi}"
            )));
        }
        Ok(())
    }

    /// Cells in discovery order, which is ascending minimal dart id.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell_of_dart(&self, d: Dart) -> usize {
        self.cell_of[d.0 as usize] as usize
    }

    /// Checks the defining property directly: on every cell boundary each
    /// white and each black index occurs exactly once.
    pub fn is_wada(&self) -> WadaStatus {
        let l = self.l as usize;
        // Epoch stamps instead of clearing the scratch space per cell.
        let mut seen_white = vec![0u32; l];
        let mut seen_black = vec![0u32; l];
        for (idx, cell) in self.cells.iter().enumerate() {
            let epoch = idx as u32 + 1;
            let mut cur = cell.start;
            loop {
                let v = self.dart_vertex(cur) as usize;
                let slot = match self.dart_color(cur) {
                    Color::White => &mut seen_white[v],
                    Color::Black => &mut seen_black[v],
                };
                if *slot == epoch {
                    return WadaStatus {
                        wada: false,
                        witness: Some(WadaWitness {
                            cell: idx,
                            color: self.dart_color(cur),
                            index: v as u64,
                            count: 2,
                        }),
                    };
                }
                *slot = epoch;
                cur = self.face_next(cur);
                if cur == cell.start {
                    break;
                }
            }
            // No repeats, so a short boundary must omit some index.
            if cell.valency != 2 * self.l {
                let missing_white = seen_white.iter().position(|&e| e != epoch);
                let (color, index) = match missing_white {
                    Some(v) => (Color::White, v as u64),
                    None => (
                        Color::Black,
                        seen_black.iter().position(|&e| e != epoch).unwrap_or(0) as u64,
                    ),
                };
                return WadaStatus {
                    wada: false,
                    witness: Some(WadaWitness {
                        cell: idx,
                        color,
                        index,
                        count: 0,
                    }),
                };
            }
        }
        WadaStatus {
            wada: true,
            witness: None,
        }
    }

    /// (white lcm, black lcm, half the face-valency lcm); white and black
    /// valencies are uniformly q by construction.
    pub fn signature(&self) -> SignatureTriple {
        let half_faces = self.cells.iter().map(|c| c.valency / 2).fold(1u64, lcm);
        SignatureTriple(self.q, self.q, half_faces)
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 * self.l as i64 - (self.q * self.l) as i64 + self.cells.len() as i64
    }

    /// Genus of the embedding surface, from chi = 2 - 2g.
    pub fn genus(&self) -> u64 {
        let chi = self.euler_characteristic();
        ((2 - chi) / 2) as u64
    }

    /// True iff all cells share one valency.
    pub fn is_uniform(&self) -> bool {
        self.cells.windows(2).all(|w| w[0].valency == w[1].valency)
    }

    /// True iff rotation and edge involution act transitively on darts.
    pub fn is_connected(&self) -> bool {
        let total = self.dart_count() as usize;
        let mut seen = vec![false; total];
        let mut stack = vec![Dart(0)];
        seen[0] = true;
        let mut found = 1usize;
        while let Some(d) = stack.pop() {
            for next in [self.rotation_next(d), self.edge_partner(d)] {
                if !seen[next.0 as usize] {
                    seen[next.0 as usize] = true;
                    found += 1;
                    stack.push(next);
                }
            }
        }
        found == total
    }

    pub fn report(&self) -> DessinReport {
        DessinReport {
            l: self.l,
            q: self.q,
            cells: self
                .cells
                .iter()
                .map(|c| CellReport {
                    valency: c.valency,
                    entering_pair: c.entering,
                })
                .collect(),
            signature: self.signature(),
            genus: self.genus(),
            wada: self.is_wada().wada,
            uniform: self.is_uniform(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub valency: u64,
    pub entering_pair: (u64, u64),
}

/// Summary of a built dessin; the JSON surface of this module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DessinReport {
    pub l: u64,
    pub q: u64,
    pub cells: Vec<CellReport>,
    pub signature: SignatureTriple,
    pub genus: u64,
    pub wada: bool,
    pub uniform: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ordering::is_wada_compatible;
    use crate::util::gcd;

    fn fano() -> Dessin {
        let o = OrderedDifferenceSet::from_order(vec![1, 2, 4], 7).unwrap();
        build_dessin(&o).unwrap()
    }

    fn d5_dessin() -> Dessin {
        let o = OrderedDifferenceSet::from_order(fixtures::d5_mod_31(), 31).unwrap();
        build_dessin(&o).unwrap()
    }

    #[test]
    fn fano_counts() {
        let d = fano();
        assert_eq!(d.vertex_count(), 14);
        assert_eq!(d.edge_count(), 21);
        assert_eq!(d.cells().len(), 3);
        assert!(d.cells().iter().all(|c| c.valency == 14));
    }

    #[test]
    fn fano_signature_and_genus() {
        let d = fano();
        assert_eq!(d.signature(), SignatureTriple(3, 3, 7));
        assert_eq!(d.euler_characteristic(), -4);
        assert_eq!(d.genus(), 3);
        assert!(d.is_uniform());
        assert!(d.is_wada().wada);
    }

    #[test]
    fn d5_counts_signature_genus() {
        let d = d5_dessin();
        assert_eq!(d.vertex_count(), 62);
        assert_eq!(d.edge_count(), 465);
        assert_eq!(d.cells().len(), 15);
        assert!(d.cells().iter().all(|c| c.valency == 62));
        assert_eq!(d.signature(), SignatureTriple(15, 15, 31));
        assert_eq!(d.euler_characteristic(), -388);
        assert_eq!(d.genus(), 195);
        assert!(d.is_wada().wada);
    }

    #[test]
    fn gcd_two_adjacency_gives_valency_40() {
        // Sorted order of the 40-element set puts 23 next to 25; that cell
        // closes after 2 * 40 / gcd(2, 40) = 40 steps.
        let mut order = fixtures::d4_mod_40();
        order.sort_unstable();
        let o = OrderedDifferenceSet::from_order(order, 40).unwrap();
        let d = build_dessin(&o).unwrap();
        let with_pair = d
            .cells()
            .iter()
            .find(|c| c.entering == (23, 25))
            .expect("a cell entered along (23, 25)");
        assert_eq!(with_pair.valency, 40);
        assert!(!d.is_wada().wada);
        let witness = d.is_wada().witness.unwrap();
        assert_ne!(witness.count, 1);
    }

    #[test]
    fn walked_valencies_match_the_closed_form() {
        for (order, l) in [
            (fixtures::d5_mod_31(), 31u64),
            (fixtures::d5_sorted_mod_31(), 31),
            (fixtures::d4_mod_40(), 40),
            (fixtures::d5_mod_121(), 121),
            (vec![1, 2, 4], 7),
        ] {
            let o = OrderedDifferenceSet::from_order(order, l).unwrap();
            let d = build_dessin(&o).unwrap();
            let mut expected_cells = 0u64;
            for i in 0..d.q() {
                let a = d.element_at(i);
                let b = d.element_at((i + 1) % d.q());
                expected_cells += gcd((a + l - b) % l, l);
            }
            assert_eq!(d.cells().len() as u64, expected_cells);
            for cell in d.cells() {
                let (a, b) = cell.entering;
                let g = gcd((a + l - b) % l, l);
                assert_eq!(cell.valency, 2 * l / g);
            }
            let dart_sum: u64 = d.cells().iter().map(|c| c.valency).sum();
            assert_eq!(dart_sum, d.dart_count());
        }
    }

    #[test]
    fn wada_iff_q_cells_of_valency_2l() {
        for (order, l) in [
            (fixtures::d5_mod_31(), 31u64),
            (fixtures::d4_mod_40(), 40),
            (fixtures::d5_mod_121(), 121),
        ] {
            let o = OrderedDifferenceSet::from_order(order, l).unwrap();
            let d = build_dessin(&o).unwrap();
            let fast =
                d.cells().len() as u64 == d.q() && d.cells().iter().all(|c| c.valency == 2 * l);
            assert_eq!(d.is_wada().wada, fast);
            assert_eq!(d.is_wada().wada, is_wada_compatible(&o).is_wada());
        }
    }

    #[test]
    fn maps_generate_a_transitive_action() {
        for (order, l) in [
            (vec![1u64, 2, 4], 7u64),
            (fixtures::d5_mod_31(), 31),
            (fixtures::d4_mod_40(), 40),
        ] {
            let o = OrderedDifferenceSet::from_order(order, l).unwrap();
            let d = build_dessin(&o).unwrap();
            assert!(d.is_connected());
        }
    }

    #[test]
    fn involution_and_rotation_shapes() {
        let d = fano();
        for id in 0..d.dart_count() {
            let dart = Dart(id as u32);
            assert_eq!(d.edge_partner(d.edge_partner(dart)), dart);
            assert_ne!(d.edge_partner(dart), dart);
            // rotation has order q at every vertex
            let mut cur = dart;
            for _ in 0..d.q() {
                cur = d.rotation_next(cur);
            }
            assert_eq!(cur, dart);
            // face successor composes involution and a rotation step
            let f = d.face_next(dart);
            assert_eq!(d.dart_vertex(f), d.dart_vertex(d.edge_partner(dart)));
        }
    }

    #[test]
    fn incidence_follows_the_difference_set() {
        let d = d5_dessin();
        for id in 0..d.edge_count() {
            let dart = Dart(id as u32);
            let partner = d.edge_partner(dart);
            let w = d.dart_vertex(dart);
            let b = d.dart_vertex(partner);
            let diff = (b + d.l() - w) % d.l();
            assert!(d.position_of(diff).is_some(), "b - w must lie in the set");
        }
    }

    #[test]
    fn size_guard_trips() {
        let o = OrderedDifferenceSet::from_order(fixtures::d5_mod_31(), 31).unwrap();
        assert!(matches!(
            build_dessin_with_limit(&o, 100),
            Err(Error::SizeGuard {
                edges: 465,
                max: 100
            })
        ));
    }

    #[test]
    fn report_round_trips_as_json() {
        let d = fano();
        let report = d.report();
        let text = serde_json::to_string(&report).unwrap();
        let back: DessinReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }
}
