use serde::Serialize;

/// What a vertex of a constructed graph was in the host it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    HubA,
    HubB,
    GroupElement,
    TreeInternal,
}

/// Origin record of one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexOrigin {
    pub role: Role,
    /// Hypercube vertex (bitmask) for hubs, element index for group vertices.
    #[serde(rename = "hub", skip_serializing_if = "Option::is_none")]
    pub host_vertex: Option<usize>,
    /// Index `m` of the host edge, which is also the gadget tree index.
    #[serde(rename = "m", skip_serializing_if = "Option::is_none")]
    pub tree_index: Option<usize>,
    /// Host arc `(tail, head, color)` of the gadget copy holding this vertex.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arc: Option<(usize, usize, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
}

impl VertexOrigin {
    pub fn hub(role: Role, host_vertex: usize) -> Self {
        VertexOrigin {
            role,
            host_vertex: Some(host_vertex),
            tree_index: None,
            arc: None,
            element: None,
        }
    }

    pub fn tree_internal(m: usize) -> Self {
        VertexOrigin {
            role: Role::TreeInternal,
            host_vertex: None,
            tree_index: Some(m),
            arc: None,
            element: None,
        }
    }

    pub fn group_element(index: usize, label: &str) -> Self {
        VertexOrigin {
            role: Role::GroupElement,
            host_vertex: Some(index),
            tree_index: None,
            arc: None,
            element: Some(label.to_string()),
        }
    }
}

/// Per-vertex origin records, indexed by vertex id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProvenanceMap {
    origins: Vec<VertexOrigin>,
}

impl ProvenanceMap {
    pub fn new(origins: Vec<VertexOrigin>) -> Self {
        ProvenanceMap { origins }
    }

    pub fn len(&self) -> usize {
        self.origins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origins.is_empty()
    }

    pub fn get(&self, v: usize) -> &VertexOrigin {
        &self.origins[v]
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexOrigin> {
        self.origins.iter()
    }

    pub fn vertices_with_role(&self, role: Role) -> Vec<usize> {
        (0..self.origins.len())
            .filter(|&v| self.origins[v].role == role)
            .collect()
    }
}
