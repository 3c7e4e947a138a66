//! Finite simplicial complexes on at most 64 vertices and their reduced
//! homology over F2 or the rationals.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::monomial::BitIter;

/// Coefficient field for homology and Betti numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub enum FieldTag {
    #[default]
    F2,
    Rationals,
}

/// A downward-closed family of vertex subsets, stored by its facets.
///
/// The void complex (no faces at all) and the irrelevant complex `{∅}` are
/// distinct: both have no nonempty facets, and only the latter has
/// `empty_face` set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertices: u64,
    facets: Vec<u64>,
    empty_face: bool,
}

impl SimplicialComplex {
    pub fn void(vertices: u64) -> Self {
        SimplicialComplex {
            vertices,
            facets: Vec::new(),
            empty_face: false,
        }
    }

    pub fn irrelevant(vertices: u64) -> Self {
        SimplicialComplex {
            vertices,
            facets: Vec::new(),
            empty_face: true,
        }
    }

    /// Downward closure of `generators` inside the ground set `vertices`.
    /// An empty generator contributes only the empty face.
    pub fn from_faces(vertices: u64, generators: impl IntoIterator<Item = u64>) -> Self {
        let mut gens: Vec<u64> = generators.into_iter().collect();
        debug_assert!(gens.iter().all(|f| f & !vertices == 0));
        let empty_face = !gens.is_empty();
        gens.retain(|&f| f != 0);
        gens.sort_unstable_by_key(|f| std::cmp::Reverse(f.count_ones()));
        gens.dedup();
        let mut facets: Vec<u64> = Vec::with_capacity(gens.len());
        for f in gens {
            if !facets.iter().any(|&g| f & !g == 0) {
                facets.push(f);
            }
        }
        facets.sort_unstable();
        SimplicialComplex {
            vertices,
            facets,
            empty_face,
        }
    }

    pub fn vertices(&self) -> u64 {
        self.vertices
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    pub fn has_empty_face(&self) -> bool {
        self.empty_face
    }

    pub fn is_void(&self) -> bool {
        !self.empty_face
    }

    pub fn is_irrelevant(&self) -> bool {
        self.empty_face && self.facets.is_empty()
    }

    pub fn contains(&self, face: u64) -> bool {
        if face == 0 {
            return self.empty_face;
        }
        self.facets.iter().any(|&f| face & !f == 0)
    }

    /// Faces grouped by dimension; index `d + 1` holds the `d`-faces, so
    /// index 0 is the empty face when present. Faces are sorted.
    pub fn faces_by_dim(&self) -> Vec<Vec<u64>> {
        if !self.empty_face {
            return Vec::new();
        }
        let top = self
            .facets
            .iter()
            .map(|f| f.count_ones())
            .max()
            .unwrap_or(0) as usize;
        let mut seen: std::collections::HashSet<u64> = std::collections::HashSet::new();
        let mut out = vec![Vec::new(); top + 1];
        out[0].push(0);
        for &facet in &self.facets {
            // Walk all nonempty submasks of the facet.
            let mut sub = facet;
            while sub != 0 {
                if seen.insert(sub) {
                    out[sub.count_ones() as usize].push(sub);
                }
                sub = (sub - 1) & facet;
            }
        }
        for layer in &mut out {
            layer.sort_unstable();
        }
        out
    }

    /// Relabels the vertices that lie in some facet onto `0..k`, preserving
    /// their order. Used as a memo key: homology only depends on this shape.
    fn compressed(&self) -> (Vec<u64>, bool) {
        let used = self.facets.iter().fold(0u64, |a, f| a | f);
        let mut facets: Vec<u64> = self.facets.iter().map(|&f| compress(f, used)).collect();
        facets.sort_unstable();
        (facets, self.empty_face)
    }
}

fn compress(mask: u64, used: u64) -> u64 {
    BitIter(used)
        .enumerate()
        .filter(|&(_, b)| mask >> b & 1 == 1)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Reduced homology dimensions `d -> rank`, listing only nonzero ranks.
/// Dimension `-1` is nonzero exactly for the irrelevant complex.
pub fn reduced_homology_ranks(k: &SimplicialComplex, field: FieldTag) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    if !k.empty_face {
        return out;
    }
    let faces = k.faces_by_dim();
    // boundary_rank[d + 1] = rank of the boundary map out of the d-faces;
    // the map out of the vertices is the augmentation onto the empty face.
    let mut boundary_rank = vec![0usize; faces.len() + 1];
    if faces.len() > 1 && !faces[1].is_empty() {
        boundary_rank[1] = 1;
    }
    for d in 1..faces.len().saturating_sub(1) {
        boundary_rank[d + 1] = boundary_matrix_rank(&faces[d + 1], &faces[d], field);
    }
    for (idx, layer) in faces.iter().enumerate() {
        let rank = layer.len() - boundary_rank[idx] - boundary_rank[idx + 1];
        if rank > 0 {
            out.insert(idx as i32 - 1, rank);
        }
    }
    out
}

/// Memoizing front end for repeated homology queries.
#[derive(Debug, Default)]
pub struct HomologyCache {
    field: FieldTag,
    memo: HashMap<(Vec<u64>, bool), BTreeMap<i32, usize>>,
    hits: usize,
}

impl HomologyCache {
    pub fn new(field: FieldTag) -> Self {
        HomologyCache {
            field,
            memo: HashMap::new(),
            hits: 0,
        }
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn hits(&self) -> usize {
        self.hits
    }

    pub fn ranks(&mut self, k: &SimplicialComplex) -> BTreeMap<i32, usize> {
        let key = k.compressed();
        if let Some(r) = self.memo.get(&key) {
            self.hits += 1;
            return r.clone();
        }
        let shape = SimplicialComplex {
            vertices: key.0.iter().fold(0, |a, f| a | f),
            facets: key.0.clone(),
            empty_face: key.1,
        };
        let r = reduced_homology_ranks(&shape, self.field);
        self.memo.insert(key, r.clone());
        r
    }
}

/// Rank of the simplicial boundary from `upper` (d-faces) to `lower`
/// ((d-1)-faces), both sorted.
fn boundary_matrix_rank(upper: &[u64], lower: &[u64], field: FieldTag) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    let column = |face: u64| {
        lower
            .binary_search(&face)
            .expect("faces are downward closed")
    };
    match field {
        FieldTag::F2 => {
            let words = lower.len().div_ceil(64);
            let rows: Vec<Vec<u64>> = upper
                .iter()
                .map(|&s| {
                    let mut row = vec![0u64; words];
                    for v in BitIter(s) {
                        let c = column(s & !(1 << v));
                        row[c / 64] |= 1 << (c % 64);
                    }
                    row
                })
                .collect();
            rank_f2(rows)
        }
        FieldTag::Rationals => {
            let rows: Vec<Vec<BigRational>> = upper
                .iter()
                .map(|&s| {
                    let mut row = vec![BigRational::zero(); lower.len()];
                    for (pos, v) in BitIter(s).enumerate() {
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        row[column(s & !(1 << v))] = BigRational::from_integer(BigInt::from(sign));
                    }
                    row
                })
                .collect();
            rank_rational(rows)
        }
    }
}

/// Rank of a bit-packed matrix over F2.
pub fn rank_f2(mut rows: Vec<Vec<u64>>) -> usize {
    let Some(words) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..words * 64 {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[w] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&pivot).skip(w) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank over the rationals by exact Gaussian elimination.
pub fn rank_rational(mut rows: Vec<Vec<BigRational>>) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        let pivot: Vec<BigRational> = rows[rank].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (a, b) in row.iter_mut().zip(&pivot).skip(col) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
        }
        debug_assert!(pivot[col].is_one() && !pivot[col].is_negative());
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn both(k: &SimplicialComplex) -> BTreeMap<i32, usize> {
        let a = reduced_homology_ranks(k, FieldTag::F2);
        assert_eq!(a, reduced_homology_ranks(k, FieldTag::Rationals));
        a
    }

    #[test]
    fn small_complexes() {
        assert_eq!(
            both(&SimplicialComplex::irrelevant(0b11)),
            BTreeMap::from([(-1, 1)])
        );
        assert!(both(&SimplicialComplex::void(0b11)).is_empty());
        let points = SimplicialComplex::from_faces(0b11, [0b01, 0b10]);
        assert_eq!(both(&points), BTreeMap::from([(0, 1)]));
        let hollow = SimplicialComplex::from_faces(0b111, [0b011, 0b110, 0b101]);
        assert_eq!(both(&hollow), BTreeMap::from([(1, 1)]));
        let filled = SimplicialComplex::from_faces(0b111, [0b111]);
        assert!(both(&filled).is_empty());
    }

    #[test]
    fn empty_generator_gives_irrelevant_complex() {
        let k = SimplicialComplex::from_faces(0b1, [0]);
        assert!(k.is_irrelevant());
        assert!(SimplicialComplex::from_faces(0b1, []).is_void());
        let k = SimplicialComplex::from_faces(0b11, [0, 0b01, 0b11]);
        assert_eq!(k.facets(), &[0b11]);
    }

    #[test]
    fn projective_plane_depends_on_field() {
        // Six-vertex triangulation of RP^2.
        let tri = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        let facets = tri.iter().map(|t| t.iter().fold(0u64, |a, &v| a | 1 << v));
        let k = SimplicialComplex::from_faces(0b111111, facets);
        assert_eq!(
            reduced_homology_ranks(&k, FieldTag::F2),
            BTreeMap::from([(1, 1), (2, 1)])
        );
        assert!(reduced_homology_ranks(&k, FieldTag::Rationals).is_empty());
    }

    #[test]
    fn cache_reuses_relabelled_shapes() {
        let mut cache = HomologyCache::new(FieldTag::F2);
        let a = SimplicialComplex::from_faces(0b0011, [0b0001, 0b0010]);
        let b = SimplicialComplex::from_faces(0b1100, [0b0100, 0b1000]);
        assert_eq!(cache.ranks(&a), cache.ranks(&b));
        assert_eq!(cache.hits(), 1);
    }

    fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
        prop::collection::vec(0u64..64, 0..6)
            .prop_map(|gens| SimplicialComplex::from_faces(0b111111, gens))
    }

    proptest! {
        #[test]
        fn euler_characteristic_matches(k in arb_complex()) {
            let faces = k.faces_by_dim();
            let chi: i64 = faces.iter().enumerate()
                .map(|(i, l)| if i % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
                .sum();
            for field in [FieldTag::F2, FieldTag::Rationals] {
                let h: i64 = reduced_homology_ranks(&k, field).iter()
                    .map(|(&d, &r)| if (d + 1) % 2 == 0 { r as i64 } else { -(r as i64) })
                    .sum();
                prop_assert_eq!(chi, h);
            }
        }

        #[test]
        fn cones_are_acyclic(k in arb_complex()) {
            // Coning with a fresh apex vertex kills all reduced homology.
            let apex = 1u64 << 6;
            let cone = SimplicialComplex::from_faces(
                k.vertices() | apex,
                k.facets().iter().map(|f| f | apex).chain(std::iter::once(apex)),
            );
            prop_assert!(reduced_homology_ranks(&cone, FieldTag::F2).is_empty());
        }
    }
}
