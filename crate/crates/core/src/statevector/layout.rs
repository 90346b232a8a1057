use crate::lattice::{GridSpec, LatticeModel};

/// Qubit layout of the simulated register stack.
///
/// Grid qubits occupy the low positions, little-endian and
/// dimension-blocked (x bits, then y, then z), so the grid-register
/// value of a basis state equals the flattened site index. Direction
/// qubits sit above them; the one-hot state for direction `i` has
/// register value `1 << i`. Ancillas (not materialized by any operation
/// here) would sit above the direction register.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RegisterLayout {
    pub grid_qubits: usize,
    pub dir_qubits: usize,
    pub ancillas: usize,
}

impl RegisterLayout {
    pub fn new(grid_qubits: usize, dir_qubits: usize) -> Self {
        RegisterLayout {
            grid_qubits,
            dir_qubits,
            ancillas: 0,
        }
    }

    /// Layout for a model on a grid: `d*l` grid qubits, `Q` direction qubits.
    pub fn for_model(grid: GridSpec, model: &LatticeModel) -> Self {
        RegisterLayout::new(grid.qubits(), model.q)
    }

    pub fn total_qubits(&self) -> usize {
        self.grid_qubits + self.dir_qubits + self.ancillas
    }

    pub fn len(&self) -> usize {
        1 << self.total_qubits()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of grid basis states.
    pub fn grid_len(&self) -> usize {
        1 << self.grid_qubits
    }

    /// Number of direction-register basis states.
    pub fn dir_len(&self) -> usize {
        1 << self.dir_qubits
    }

    /// Direction-register value of the one-hot state for direction `i`.
    pub fn dir_index(&self, i: usize) -> usize {
        debug_assert!(i < self.dir_qubits);
        1 << i
    }

    /// Global amplitude index of `|grid> |dir_value>`.
    pub fn index(&self, grid: usize, dir_value: usize) -> usize {
        debug_assert!(grid < self.grid_len() && dir_value < self.dir_len());
        grid | (dir_value << self.grid_qubits)
    }

    pub fn grid_value(&self, index: usize) -> usize {
        index & (self.grid_len() - 1)
    }

    pub fn dir_value(&self, index: usize) -> usize {
        (index >> self.grid_qubits) & (self.dir_len() - 1)
    }

    /// Global qubit position of direction qubit `k`.
    pub fn dir_qubit(&self, k: usize) -> usize {
        self.grid_qubits + k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_hot_states_have_single_set_bit() {
        let layout = RegisterLayout::new(9, 7);
        for i in 0..7 {
            assert_eq!(layout.dir_index(i).count_ones(), 1);
            assert_eq!(layout.dir_index(i) >> i, 1);
        }
        assert_eq!(layout.total_qubits(), 16);
        let idx = layout.index(0b101, layout.dir_index(3));
        assert_eq!(layout.grid_value(idx), 0b101);
        assert_eq!(layout.dir_value(idx), 0b1000);
    }
}
