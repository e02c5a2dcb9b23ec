use super::{Graph, VertexId};
use crate::{Error, Result};

/// Subgraph induced by a vertex subset of a parent graph.
///
/// Local vertex `i` corresponds to parent vertex `vertices()[i]`; the subset
/// is kept sorted so local and parent orders agree. The local graph inherits
/// the parent's genus bound and the restriction of its rotation system and
/// grid layout.
#[derive(Debug, Clone)]
pub struct SubgraphView<'a> {
    parent: &'a Graph,
    vertices: Vec<VertexId>,
    local: Graph,
}

impl<'a> SubgraphView<'a> {
    pub(crate) fn new(parent: &'a Graph, subset: &[VertexId]) -> Result<Self> {
        let mut vertices = subset.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        if let Some(&last) = vertices.last() {
            parent.check_vertex(last)?;
        }
        let index_of = |v: VertexId| vertices.binary_search(&v).ok();
        let adjacency: Vec<Vec<VertexId>> = vertices
            .iter()
            .map(|&v| parent.neighbors(v).iter().filter_map(|&w| index_of(w)).collect())
            .collect();
        let rotation = parent.rotation.as_ref().map(|rot| {
            vertices
                .iter()
                .map(|&v| rot[v].iter().filter_map(|&w| index_of(w)).collect())
                .collect()
        });
        let layout = parent.layout.as_ref().map(|l| l.restrict(&vertices));
        let local = Graph::from_parts(adjacency, parent.genus_bound, rotation, layout);
        Ok(SubgraphView {
            parent,
            vertices,
            local,
        })
    }

    pub fn parent(&self) -> &'a Graph {
        self.parent
    }

    /// Parent ids of the view's vertices, ascending.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// The induced graph in local ids.
    pub fn graph(&self) -> &Graph {
        &self.local
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn to_parent(&self, local: VertexId) -> VertexId {
        self.vertices[local]
    }

    pub fn to_local(&self, parent_id: VertexId) -> Option<VertexId> {
        self.vertices.binary_search(&parent_id).ok()
    }

    /// Neighbors of a parent vertex inside the view, as parent ids.
    pub fn neighbors_of(&self, parent_id: VertexId) -> Result<Vec<VertexId>> {
        let local = self.to_local(parent_id).ok_or_else(|| {
            Error::invalid(format!("vertex {parent_id} is not in the subgraph"))
        })?;
        Ok(self
            .local
            .neighbors(local)
            .iter()
            .map(|&w| self.vertices[w])
            .collect())
    }

    pub fn max_degree(&self) -> usize {
        self.local.max_degree()
    }

    /// Connected components in parent ids.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        self.local
            .connected_components()
            .into_iter()
            .map(|part| part.into_iter().map(|v| self.vertices[v]).collect())
            .collect()
    }
}
