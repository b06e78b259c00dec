"""Connected components of node/edge structures and group actions on them.

Components are computed with union-find and reported as a canonical
Partition: each node is labeled by the smallest node index in its component,
and component ids are assigned in ascending order of those representatives.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ActionNotCompatible
from .group import Subgroup, make_subgroup


@dataclass(frozen=True)
class Partition:
    """Canonical partition of range(node_count) into connected components."""

    node_count: int
    component_of: tuple    # node index -> component id
    components: tuple      # component id -> sorted tuple of node indices

    @property
    def count(self):
        return len(self.components)

    @property
    def component_sizes(self):
        return tuple(len(c) for c in self.components)

    @property
    def representatives(self):
        return tuple(c[0] for c in self.components)

    def same(self, a, b):
        return self.component_of[a] == self.component_of[b]


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller index as representative for canonical labels
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def components(node_count, edges):
    """Partition of range(node_count) under the given undirected edges."""
    uf = _UnionFind(node_count)
    for a, b in edges:
        uf.union(a, b)
    roots = sorted({uf.find(i) for i in range(node_count)})
    comp_id = {r: k for k, r in enumerate(roots)}
    component_of = tuple(comp_id[uf.find(i)] for i in range(node_count))
    comps = [[] for _ in roots]
    for i, c in enumerate(component_of):
        comps[c].append(i)
    return Partition(node_count, component_of,
                     tuple(tuple(c) for c in comps))


@dataclass(frozen=True)
class ComponentAction:
    """A group's permutation action on the components of a partition."""

    partition: Partition
    component_image: tuple   # component_image[g][c] = image of component c
    orbit: tuple             # orbit of the base component, sorted
    stabilizer: Subgroup     # stabilizer of the base component


def action_on_components(G, partition, node_image, base_node=0, edges=(),
                         check=True):
    """Induced action of G on components, with the orbit and stabilizer of
    the component containing base_node.

    node_image[g][v] must be the image of node v under group element g. When
    `check` is set, the action is validated: each map must permute the nodes,
    preserve every given edge, and be compatible with the multiplication
    table. The orbit-stabilizer identity |orbit| * |stab| = |G| is asserted.
    """
    n = partition.node_count
    if check:
        edge_set = {frozenset(e) for e in edges}
        for g in range(G.order):
            img = node_image[g]
            if sorted(img) != list(range(n)):
                raise ActionNotCompatible(
                    f"element {g} does not permute the nodes")
            for a, b in edges:
                if frozenset((img[a], img[b])) not in edge_set:
                    raise ActionNotCompatible(
                        f"element {g} does not preserve edges")
        # homomorphism spot-check: all g against a bounded slice of h keeps
        # validation near-linear in |G| while still catching orientation bugs
        for g in range(G.order):
            for h in range(min(G.order, 8)):
                gh = int(G.mul[g, h])
                if any(node_image[h][node_image[g][v]] != node_image[gh][v]
                       for v in range(n)):
                    raise ActionNotCompatible(
                        "node maps are not compatible with multiplication")

    comp_of = partition.component_of
    component_image = []
    for g in range(G.order):
        img = node_image[g]
        cimg = [None] * partition.count
        for v in range(n):
            cv, cw = comp_of[v], comp_of[img[v]]
            if cimg[cv] is None:
                cimg[cv] = cw
            elif cimg[cv] != cw:
                raise ActionNotCompatible(
                    f"element {g} splits a component across components")
        component_image.append(tuple(cimg))

    base = comp_of[base_node]
    orbit = sorted({cimg[base] for cimg in component_image})
    stab_members = [g for g in range(G.order)
                    if component_image[g][base] == base]
    stabilizer = make_subgroup(G, stab_members)
    if len(orbit) * stabilizer.order != G.order:
        raise ActionNotCompatible("orbit-stabilizer identity failed")
    return ComponentAction(partition, tuple(component_image),
                           tuple(orbit), stabilizer)
