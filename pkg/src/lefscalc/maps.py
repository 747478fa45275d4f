"""Simplicial maps and self-map specifications.

A simplicial self-map that genuinely moves points often cannot be written
on the original vertices, so a self-map is specified on the n-fold
barycentric subdivision: a vertex map sd^n(K) -> K whose induced affine map
realizes the intended geometric map.  All traces downstream are taken of
the chain endomorphism (map_* o sd^n_*).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .complexes import (
    SimplicialComplex,
    canonical_tuple,
    cell_sort_key,
    subdivide_times,
)
from .errors import DegenerateInputError, NonSimplicialMapError


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: dict

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialMap)
            and self.source == other.source
            and self.target == other.target
            and self.vertex_map == other.vertex_map
        )

    @staticmethod
    def build(source, target, vertex_map) -> "SimplicialMap":
        vm = dict(vertex_map)
        missing = [v for v in source.vertices if v not in vm]
        if missing:
            raise NonSimplicialMapError(f"vertices without images: {missing[:4]}")
        target_vertices = set(target.vertices)
        stray = sorted(
            (v for v in vm.values() if v not in target_vertices), key=repr
        )
        if stray:
            raise NonSimplicialMapError(f"images outside target: {stray[:4]}")
        m = SimplicialMap(source, target, vm)
        for s in sorted(source.simplices, key=cell_sort_key):
            image = m.image_simplex(s)
            if image not in target.simplices:
                raise NonSimplicialMapError(
                    f"simplex {canonical_tuple(s)} maps onto "
                    f"{canonical_tuple(image)}, not a simplex of the target"
                )
        return m

    def image_of(self, v):
        return self.vertex_map[v]

    def image_simplex(self, s) -> frozenset:
        return frozenset(self.vertex_map[v] for v in s)


def compose(outer: SimplicialMap, inner: SimplicialMap) -> SimplicialMap:
    if outer.source is not inner.target and outer.source != inner.target:
        raise DegenerateInputError("maps are not composable")
    return SimplicialMap.build(
        inner.source,
        outer.target,
        {v: outer.vertex_map[inner.vertex_map[v]] for v in inner.source.vertices},
    )


@lru_cache(maxsize=None)
def subdivided_complex(base: SimplicialComplex, level: int):
    """sd^level(base) together with the carrier map down to `base`."""
    return subdivide_times(base, level)


@dataclass(frozen=True, eq=False)
class SelfMapSpec:
    """A self-map of |base| written as a vertex map sd^level(base) -> base."""

    base: SimplicialComplex
    level: int
    vertex_map: dict

    def __eq__(self, other):
        return (
            isinstance(other, SelfMapSpec)
            and self.base == other.base
            and self.level == other.level
            and self.vertex_map == other.vertex_map
        )

    @staticmethod
    def build(base, level, vertex_map) -> "SelfMapSpec":
        if level < 0:
            raise DegenerateInputError("subdivision level must be >= 0")
        spec = SelfMapSpec(base, level, dict(vertex_map))
        spec.as_map()  # validates simpliciality eagerly
        return spec

    @staticmethod
    def identity(base) -> "SelfMapSpec":
        return SelfMapSpec.build(base, 0, {v: v for v in base.vertices})

    def source_complex(self) -> SimplicialComplex:
        return subdivided_complex(self.base, self.level)[0]

    def carrier(self) -> dict:
        return subdivided_complex(self.base, self.level)[1]

    def as_map(self) -> SimplicialMap:
        return SimplicialMap.build(
            self.source_complex(), self.base, self.vertex_map
        )

    def preserves_subcomplex(self, cells: frozenset) -> bool:
        """True when every subdivision simplex carried by `cells` maps into
        `cells`; this is the geometric invariance g(|L|) <= |L|."""
        m = self.as_map()
        carrier = self.carrier()
        for tau, sigma in carrier.items():
            if sigma in cells and m.image_simplex(tau) not in cells:
                return False
        return True


def refine(spec: SelfMapSpec) -> SelfMapSpec:
    """Re-express the same geometric map with sd(base) as the base complex.

    Exists exactly when the vertex map is injective on every subdivision
    simplex (then barycenters map to barycenters); otherwise the refined
    vertex map would need images that are not vertices.
    """
    source = spec.source_complex()
    refined_base = subdivided_complex(spec.base, 1)[0]
    new_map = {}
    for tau in source.simplices:
        images = {spec.vertex_map[v] for v in tau}
        if len(images) != len(tau):
            raise DegenerateInputError(
                "refinement needs a map that is injective on every "
                "subdivision simplex"
            )
        new_map[canonical_tuple(tau)] = canonical_tuple(images)
    return SelfMapSpec.build(refined_base, spec.level, new_map)
