use std::collections::HashMap;

/// A simplex given by ascending vertex indices and its entry value.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    pub vertices: Vec<usize>,
    pub value: f64,
}

impl Simplex {
    pub fn new(vertices: Vec<usize>, value: f64) -> Self {
        Self { vertices, value }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Faces of codimension one, paired with the position of the removed vertex.
    pub fn facets(&self) -> impl Iterator<Item = (usize, Vec<usize>)> + '_ {
        let verts = &self.vertices;
        (0..verts.len()).filter(move |_| verts.len() > 1).map(move |i| {
            let mut f = verts.clone();
            f.remove(i);
            (i, f)
        })
    }
}

/// An explicit list of simplices with entry values.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    n_vertices: usize,
    max_dim: usize,
    simplices: Vec<Simplex>,
}

impl FilteredComplex {
    /// Wraps a simplex list as given. Use [`validate_filtration`] to check it.
    pub fn new(n_vertices: usize, max_dim: usize, simplices: Vec<Simplex>) -> Self {
        Self {
            n_vertices,
            max_dim,
            simplices,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Highest homology dimension this complex was built for.
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Simplices present at filtration level `r`.
    pub fn at_level(&self, r: f64) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.value <= r)
    }

    /// Distinct entry values, ascending.
    pub fn entry_values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.simplices.iter().map(|s| s.value).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    /// Simplex count per dimension.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let top = self.simplices.iter().map(Simplex::dim).max().map_or(0, |d| d + 1);
        let mut out = vec![0; top];
        for s in &self.simplices {
            out[s.dim()] += 1;
        }
        out
    }
}

/// True iff the complex is closed under faces, has no duplicates, and every
/// simplex enters no earlier than each of its faces.
pub fn validate_filtration(fc: &FilteredComplex) -> bool {
    let mut index: HashMap<&[usize], f64> = HashMap::with_capacity(fc.len());
    for s in fc.simplices() {
        let v = &s.vertices;
        if v.is_empty()
            || s.value.is_nan()
            || v.windows(2).any(|w| w[0] >= w[1])
            || v.iter().any(|&x| x >= fc.n_vertices())
        {
            return false;
        }
        if index.insert(v.as_slice(), s.value).is_some() {
            return false;
        }
    }
    fc.simplices().iter().all(|s| {
        s.facets().all(|(_, face)| {
            index
                .get(face.as_slice())
                .is_some_and(|&fv| fv <= s.value)
        })
    })
}
