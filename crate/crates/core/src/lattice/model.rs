use super::LatticeError;

/// Which DmQn model a [`LatticeModel`] describes.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    D2Q5,
    D3Q7,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::D2Q5 => "D2Q5",
            ModelKind::D3Q7 => "D3Q7",
        }
    }
}

/// DmQn lattice geometry: direction vectors, weights and sound speed.
///
/// Directions are ordered rest-first with axis pairs: `c_0 = 0` and
/// `c_{2a+1} = +e_a`, `c_{2a+2} = -e_a` for axis `a`, so each axis owns
/// the index pair `(2a+1, 2a+2)`.
#[derive(Clone, Debug)]
pub struct LatticeModel {
    pub kind: ModelKind,
    /// Spatial dimension d (2 or 3).
    pub dims: usize,
    /// Direction count Q (5 or 7).
    pub q: usize,
    /// Integer direction vectors, z component zero in 2D.
    pub directions: Vec<[i64; 3]>,
    /// Lattice weights, `sum_i w[i] == 1`.
    pub weights: Vec<f64>,
    /// Sound speed, 1/sqrt(3).
    pub sound_speed: f64,
}

impl LatticeModel {
    /// Index of the opposite direction (`0` maps to itself).
    pub fn opposite(&self, i: usize) -> usize {
        match i {
            0 => 0,
            i if i % 2 == 1 => i + 1,
            i => i - 1,
        }
    }

    /// Axis owning direction `i >= 1` (0 = x, 1 = y, 2 = z).
    pub fn axis(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i < self.q);
        (i - 1) / 2
    }

    /// Direction index for `+e_axis`.
    pub fn plus_dir(&self, axis: usize) -> usize {
        2 * axis + 1
    }

    /// Direction index for `-e_axis`.
    pub fn minus_dir(&self, axis: usize) -> usize {
        2 * axis + 2
    }
}

/// Builds one of the two supported lattice models by name.
pub fn build_model(name: &str) -> Result<LatticeModel, LatticeError> {
    let kind = match name {
        "D2Q5" => ModelKind::D2Q5,
        "D3Q7" => ModelKind::D3Q7,
        other => return Err(LatticeError::UnknownModel(other.to_string())),
    };
    Ok(model(kind))
}

/// Builds a lattice model from its kind.
pub fn model(kind: ModelKind) -> LatticeModel {
    let (dims, q, w0, wi) = match kind {
        ModelKind::D2Q5 => (2, 5, 1.0 / 3.0, 1.0 / 6.0),
        ModelKind::D3Q7 => (3, 7, 1.0 / 4.0, 1.0 / 8.0),
    };
    let mut directions = vec![[0i64; 3]];
    for axis in 0..dims {
        let mut plus = [0i64; 3];
        plus[axis] = 1;
        let mut minus = [0i64; 3];
        minus[axis] = -1;
        directions.push(plus);
        directions.push(minus);
    }
    let mut weights = vec![w0];
    weights.extend(std::iter::repeat(wi).take(q - 1));
    LatticeModel {
        kind,
        dims,
        q,
        directions,
        weights,
        sound_speed: 1.0 / 3.0f64.sqrt(),
    }
}
