//! Worked complexes shared across the unit tests.

use crate::complex::ChainComplex;
use crate::ring::Integers;

pub(crate) fn zc(sizes: &[usize], columns: Vec<Vec<Vec<(usize, i64)>>>) -> ChainComplex<Integers> {
    ChainComplex::from_columns(Integers, sizes, columns).unwrap()
}

/// Order-2, one top cell glued along two mutually cancelling edges over two
/// vertices. A cone; totally regular; acyclic.
pub(crate) fn pinched_disk() -> ChainComplex<Integers> {
    zc(
        &[2, 2, 1],
        vec![vec![vec![(1, 1), (0, -1)], vec![(0, 1), (1, -1)]], vec![vec![(0, 1), (1, 1)]]],
    )
}

/// Order-2, three top cells in a strip over two vertices. A cone; totally
/// regular; does not come from a simplicial complex.
pub(crate) fn strip_three() -> ChainComplex<Integers> {
    zc(
        &[2, 4, 3],
        vec![
            vec![
                vec![(1, 1), (0, -1)],
                vec![(0, 1), (1, -1)],
                vec![(1, 1), (0, -1)],
                vec![(0, 1), (1, -1)],
            ],
            vec![vec![(0, 1), (1, 1)], vec![(1, 1), (2, 1)], vec![(2, 1), (3, 1)]],
        ],
    )
}

/// Order-2, one top cell whose boundary walks a four-cycle of edges. Acyclic
/// but not a cone.
pub(crate) fn four_cycle_disk() -> ChainComplex<Integers> {
    zc(
        &[4, 4, 1],
        vec![
            vec![
                vec![(1, 1), (0, -1)],
                vec![(2, 1), (1, -1)],
                vec![(3, 1), (2, -1)],
                vec![(0, 1), (3, -1)],
            ],
            vec![vec![(0, 1), (1, 1), (2, 1), (3, 1)]],
        ],
    )
}

/// Order-2 cone over three vertices with a single top cell.
pub(crate) fn three_fan() -> ChainComplex<Integers> {
    zc(
        &[3, 3, 1],
        vec![
            vec![
                vec![(2, 1), (1, -1)],
                vec![(2, 1), (0, -1)],
                vec![(1, 1), (0, -1)],
            ],
            vec![vec![(0, 1), (1, -1), (2, 1)]],
        ],
    )
}

/// Order-1, one edge hitting `k` vertices each with coefficient 1.
pub(crate) fn one_edge_fan(k: usize) -> ChainComplex<Integers> {
    zc(&[k, 1], vec![vec![(0..k).map(|i| (i, 1)).collect()]])
}

/// Order-1, two edges with identical boundaries over `k` vertices.
pub(crate) fn doubled_edge_fan(k: usize) -> ChainComplex<Integers> {
    let col: Vec<(usize, i64)> = (0..k).map(|i| (i, 1)).collect();
    zc(&[k, 2], vec![vec![col.clone(), col]])
}

/// Order-1, two edges whose boundaries differ in the sign of one vertex;
/// degree-0 homology has torsion.
pub(crate) fn twisted_edge_pair(k: usize) -> ChainComplex<Integers> {
    let col1: Vec<(usize, i64)> = (0..k).map(|i| (i, 1)).collect();
    let col2: Vec<(usize, i64)> = (0..k).map(|i| (i, if i == 0 { -1 } else { 1 })).collect();
    zc(&[k, 2], vec![vec![col1, col2]])
}

/// Order-1, two edges over two vertices with linearly independent boundaries
/// `2a+b` and `a+2b`; not regular, degree-0 torsion of order 3.
pub(crate) fn independent_edge_pair() -> ChainComplex<Integers> {
    zc(&[2, 2], vec![vec![vec![(0, 2), (1, 1)], vec![(0, 1), (1, 2)]]])
}

/// Order-2, two top cells with nested edge boundaries; regular only after
/// swapping the top cells, acyclic, a cone, not totally regular.
pub(crate) fn nested_top_pair() -> ChainComplex<Integers> {
    zc(
        &[2, 3, 2],
        vec![
            vec![vec![(0, 1), (1, -1)], vec![(1, 1), (0, -1)], vec![(1, 1), (0, -1)]],
            vec![vec![(0, 2), (1, 1), (2, 1)], vec![(0, 1), (1, 1)]],
        ],
    )
}

/// Order-1, two edges with equal boundary sets but independent boundaries
/// over three vertices; acyclic, shellable, not regular, not a cone.
pub(crate) fn overlapping_edges() -> ChainComplex<Integers> {
    zc(&[3, 2], vec![vec![vec![(0, 2), (1, 1)], vec![(0, 1), (1, 1)]]])
}

/// Order-2, one top cell over three parallel edges, one doubled; regular,
/// H_1 free of rank 1.
pub(crate) fn tripled_edge_disk() -> ChainComplex<Integers> {
    zc(
        &[2, 3, 1],
        vec![
            vec![vec![(0, 1), (1, -1)], vec![(0, 1), (1, -1)], vec![(0, -2), (1, 2)]],
            vec![vec![(0, 1), (1, 1), (2, 1)]],
        ],
    )
}

/// Order-1, a short and a long edge sharing one endpoint; acyclic, regular,
/// not a cone (an edge difference has single-vertex boundary support).
pub(crate) fn lollipop() -> ChainComplex<Integers> {
    zc(&[3, 2], vec![vec![vec![(0, 1)], vec![(0, 1), (1, 1), (2, 1)]]])
}

/// Order-2, two top cells with equal boundaries over the pinched disk;
/// totally regular but not acyclic.
pub(crate) fn doubled_pinched_disk() -> ChainComplex<Integers> {
    zc(
        &[2, 2, 2],
        vec![
            vec![vec![(1, 1), (0, -1)], vec![(0, 1), (1, -1)]],
            vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, 1)]],
        ],
    )
}
