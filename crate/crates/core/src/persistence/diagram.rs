use std::collections::BTreeMap;

/// One point of a persistence diagram. Essential classes have infinite death.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramPoint {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

impl DiagramPoint {
    pub fn new(dim: usize, birth: f64, death: f64) -> Self {
        Self { dim, birth, death }
    }

    pub fn is_infinite(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    /// Alive on `[birth, death)`.
    pub fn alive_at(&self, r: f64) -> bool {
        self.birth <= r && r < self.death
    }
}

/// Multiset of diagram points, kept sorted by (dim, birth, death).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PersistenceDiagram {
    pub field: u32,
    pub max_dim: usize,
    points: Vec<DiagramPoint>,
    /// Free-form run information carried into the JSON output.
    pub metadata: BTreeMap<String, serde_json::Value>,
}

impl PersistenceDiagram {
    pub fn new(field: u32, max_dim: usize, mut points: Vec<DiagramPoint>) -> Self {
        points.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.birth.total_cmp(&b.birth))
                .then(a.death.total_cmp(&b.death))
        });
        Self {
            field,
            max_dim,
            points,
            metadata: BTreeMap::new(),
        }
    }

    pub fn points(&self) -> &[DiagramPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn in_dim(&self, dim: usize) -> impl Iterator<Item = &DiagramPoint> {
        self.points.iter().filter(move |p| p.dim == dim)
    }

    /// Finite lifetimes in `dim`, longest first.
    pub fn finite_lifetimes(&self, dim: usize) -> Vec<f64> {
        let mut l: Vec<f64> = self
            .in_dim(dim)
            .filter(|p| !p.is_infinite())
            .map(DiagramPoint::persistence)
            .collect();
        l.sort_by(|a, b| b.total_cmp(a));
        l
    }

    /// Finite points in `dim` ordered by decreasing lifetime.
    pub fn most_persistent(&self, dim: usize) -> Vec<DiagramPoint> {
        let mut pts: Vec<DiagramPoint> = self.in_dim(dim).filter(|p| !p.is_infinite()).copied().collect();
        pts.sort_by(|a, b| b.persistence().total_cmp(&a.persistence()));
        pts
    }

    pub fn infinite_count(&self, dim: usize) -> usize {
        self.in_dim(dim).filter(|p| p.is_infinite()).count()
    }

    /// Number of classes in `dim` alive at level `r`.
    pub fn alive_count(&self, dim: usize, r: f64) -> usize {
        self.in_dim(dim).filter(|p| p.alive_at(r)).count()
    }
}
