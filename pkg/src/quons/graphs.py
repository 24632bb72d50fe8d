"""Combinatorial maps with ordered, oriented edges.

Edge ``e`` (0-based; it is edge number ``e + 1`` in user-facing output) owns
darts ``2e`` (tail end) and ``2e + 1`` (head end). A map is the rotation
permutation ``sigma``: ``sigma[d]`` is the next dart counterclockwise around
the vertex of ``d``. The pairing is ``d ^ 1``.

Because every dart is named by its edge number and end, two ordered oriented
maps are isomorphic exactly when their rotations coincide.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    pass


class NonLocalEmbeddingError(GraphError):
    pass


def _cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(tuple(cyc))
    return out


def _inverse(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


@dataclass(frozen=True)
class PlanarGraph:
    sigma: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        s = self.sigma
        if len(s) % 2:
            raise GraphError("dart count must be even")
        if sorted(s) != list(range(len(s))):
            raise GraphError("rotation is not a permutation of the darts")

    # -- basic structure -------------------------------------------------
    @property
    def n_edges(self) -> int:
        return len(self.sigma) // 2

    @property
    def n_darts(self) -> int:
        return len(self.sigma)

    def vertices(self) -> list[tuple[int, ...]]:
        """Rotation cycles, each starting at its smallest dart."""
        return [tuple(c) for c in _cycles(self.sigma)]

    def faces(self) -> list[tuple[int, ...]]:
        """Face boundaries traced by ``d -> sigma[d ^ 1]``; the face lies to the right."""
        phi = [self.sigma[d ^ 1] for d in range(self.n_darts)]
        return _cycles(phi)

    def vertex_of(self) -> list[int]:
        out = [0] * self.n_darts
        for i, cyc in enumerate(self.vertices()):
            for d in cyc:
                out[d] = i
        return out

    def face_of(self) -> list[int]:
        out = [0] * self.n_darts
        for i, cyc in enumerate(self.faces()):
            for d in cyc:
                out[d] = i
        return out

    def degrees(self) -> list[int]:
        return sorted(len(v) for v in self.vertices())

    def endpoints(self, e: int) -> tuple[int, int]:
        """(tail vertex, head vertex) of edge ``e``."""
        vo = self.vertex_of()
        return vo[2 * e], vo[2 * e + 1]

    def is_connected(self) -> bool:
        if self.n_darts == 0:
            return True
        vo = self.vertex_of()
        nv = max(vo) + 1
        parent = list(range(nv))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        for e in range(self.n_edges):
            a, b = find(vo[2 * e]), find(vo[2 * e + 1])
            parent[a] = b
        return len({find(v) for v in range(nv)}) == 1

    @property
    def genus(self) -> int:
        if not self.is_connected():
            raise GraphError("genus is defined here for connected maps only")
        if self.n_darts == 0:
            return 0
        chi = len(self.vertices()) - self.n_edges + len(self.faces())
        g2 = 2 - chi
        if g2 < 0 or g2 % 2:
            raise GraphError(f"Euler characteristic {chi} is not of an oriented closed surface")
        return g2 // 2

    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices()), self.n_edges, len(self.faces())

    # -- constructors ----------------------------------------------------
    @classmethod
    def from_rotation(cls, rotation: Iterable[Sequence[int]], name: str = "") -> "PlanarGraph":
        """Build from per-vertex counterclockwise lists of signed 1-based edge
        numbers: ``+e`` is the tail end of edge ``e``, ``-e`` its head end."""
        rotation = [list(r) for r in rotation]
        darts = []
        for vert in rotation:
            if not vert:
                raise GraphError("isolated vertices are not representable")
            for s in vert:
                if s == 0:
                    raise GraphError("edge numbers start at 1")
                darts.append(2 * (abs(s) - 1) + (s < 0))
        n = len(darts)
        if sorted(darts) != list(range(n)):
            raise GraphError("every edge needs exactly one tail (+e) and one head (-e)")
        sigma = [0] * n
        for vert in rotation:
            ds = [2 * (abs(s) - 1) + (s < 0) for s in vert]
            for i, d in enumerate(ds):
                sigma[d] = ds[(i + 1) % len(ds)]
        return cls(tuple(sigma), name)

    def rotation(self) -> list[list[int]]:
        """Inverse of :meth:`from_rotation`."""
        return [[(d // 2 + 1) * (-1 if d % 2 else 1) for d in v] for v in self.vertices()]

    # -- relabelling -----------------------------------------------------
    def relabel(self, new_index: Sequence[int], reverse: Iterable[int] = ()) -> "PlanarGraph":
        """Renumber edge ``e`` as ``new_index[e]``; edges in ``reverse`` (old
        numbering) are flipped first."""
        rev = set(reverse)
        if sorted(new_index) != list(range(self.n_edges)):
            raise GraphError("new_index must be a permutation of the edges")

        def m(d):
            e, end = divmod(d, 2)
            if e in rev:
                end ^= 1
            return 2 * new_index[e] + end
        sigma = [0] * self.n_darts
        for d in range(self.n_darts):
            sigma[m(d)] = m(self.sigma[d])
        return PlanarGraph(tuple(sigma), self.name)

    def reverse_edges(self, edges: Iterable[int]) -> "PlanarGraph":
        return self.relabel(list(range(self.n_edges)), edges)

    def mirror(self) -> "PlanarGraph":
        """Same graph on the oppositely oriented surface."""
        return PlanarGraph(tuple(_inverse(self.sigma)), self.name)

    def with_name(self, name: str) -> "PlanarGraph":
        return PlanarGraph(self.sigma, name)


def reverse_all_edges(G: PlanarGraph) -> PlanarGraph:
    return G.reverse_edges(range(G.n_edges))


def is_isomorphic(G: PlanarGraph, H: PlanarGraph) -> bool:
    """Isomorphism of ordered oriented maps (edge numbers and directions kept)."""
    return G.sigma == H.sigma


def _canonical_code(G: PlanarGraph) -> tuple[int, ...]:
    """Smallest BFS code over all starting darts, ignoring edge order and
    direction. Orientation-preserving only."""
    sigma, n = G.sigma, G.n_darts
    best = None
    for start in range(n):
        num = {start: 0}
        queue = [start]
        code = []
        i = 0
        while i < len(queue):
            d = queue[i]
            i += 1
            for nb in (sigma[d], d ^ 1):
                if nb not in num:
                    num[nb] = len(num)
                    queue.append(nb)
                code.append(num[nb])
        if len(num) < n:
            raise GraphError("canonical form needs a connected map")
        code = tuple(code)
        if best is None or code < best:
            best = code
    return best or ()


def is_isomorphic_unordered(G: PlanarGraph, H: PlanarGraph) -> bool:
    """Orientation-preserving map isomorphism, forgetting edge labels and directions."""
    return G.n_darts == H.n_darts and _canonical_code(G) == _canonical_code(H)


def _extend_map_iso(sig_a: Sequence[int], sig_b: Sequence[int], start: int, image: int) -> list[int] | None:
    """Dart bijection commuting with rotation and pairing, fixed by ``start -> image``."""
    n = len(sig_a)
    phi = [-1] * n
    phi[start] = image
    stack = [start]
    while stack:
        d = stack.pop()
        for nd, nb in ((sig_a[d], sig_b[phi[d]]), (d ^ 1, phi[d] ^ 1)):
            if phi[nd] == -1:
                phi[nd] = nb
                stack.append(nd)
            elif phi[nd] != nb:
                return None
    if -1 in phi or len(set(phi)) != n:
        return None
    return phi


def map_symmetries(G: PlanarGraph, reflections: bool = True) -> list[tuple[tuple[int, ...], tuple[bool, ...]]]:
    """Symmetries of the underlying unordered, unoriented map.

    Each entry ``(perm, flip)`` sends edge ``e`` to edge ``perm[e]``, with
    ``flip[e]`` set when the image edge points against the image of ``e``.
    Reflections are isomorphisms onto :meth:`PlanarGraph.mirror`.
    """
    if not G.is_connected() or G.n_darts == 0:
        raise GraphError("symmetries need a connected map with edges")
    targets = [G.sigma] + ([G.mirror().sigma] if reflections else [])
    out = []
    seen = set()
    for tgt in targets:
        for image in range(G.n_darts):
            phi = _extend_map_iso(G.sigma, tgt, 0, image)
            if phi is None:
                continue
            perm = tuple(phi[2 * e] // 2 for e in range(G.n_edges))
            flip = tuple(bool(phi[2 * e] % 2) for e in range(G.n_edges))
            if (perm, flip) not in seen:
                seen.add((perm, flip))
                out.append((perm, flip))
    return out


# ---------------------------------------------------------------------------
# duality

DUAL_TURNS = ("cw", "ccw")


def dual_graph(G: PlanarGraph, turn: str = "ccw") -> PlanarGraph:
    """Dual map on the same oriented sphere, edge numbers preserved.

    Dual edge ``e`` crosses primal edge ``e``. With ``turn="ccw"`` its direction
    is the primal direction turned a quarter counterclockwise, so its tail sits
    in the face to the right of the primal edge; ``"cw"`` turns the other way.
    The two choices differ by reversing every edge, and applying either one
    twice reverses every edge of the original map.
    """
    if turn not in DUAL_TURNS:
        raise GraphError(f"turn must be one of {DUAL_TURNS}")
    if G.genus != 0:
        raise NonLocalEmbeddingError(
            f"map has genus {G.genus}: a cellular embedding of positive genus has "
            "non-contractible edges, so the plain dual is not defined")
    n = G.n_darts
    inv = _inverse(G.sigma)
    if turn == "ccw":
        sigma = [inv[d] ^ 1 for d in range(n)]
    else:
        sigma = [inv[d ^ 1] for d in range(n)]
    name = f"dual({G.name})" if G.name else ""
    return PlanarGraph(tuple(sigma), name)


def tetrahedron_dual_relabeling(n: int) -> tuple[list[int], list[int]]:
    """Edge permutation and reversals taking the wheel ``W_n`` to the ordered
    oriented form of its dual: rim position ``k`` carries edge ``2n-1-k`` and
    spoke position ``n+k`` carries the reversed edge ``n-1-k`` (0-based)."""
    new_index = [0] * (2 * n)
    for k in range(n):
        new_index[2 * n - 1 - k] = k
        new_index[n - 1 - k] = n + k
    reverse = list(range(n))
    return new_index, reverse


# ---------------------------------------------------------------------------
# built-in families

def cycle_graph(n: int) -> PlanarGraph:
    """``n`` vertices on a circle, edge ``i`` from vertex ``i`` to ``i+1``."""
    if n < 1:
        raise GraphError("cycle_graph needs n >= 1")
    rot = [[-(((i - 1) % n) + 1), i + 1] for i in range(n)]
    if n == 1:
        rot = [[1, -1]]
    return PlanarGraph.from_rotation(rot, f"cycle({n})")


def dipole_graph(n: int) -> PlanarGraph:
    """Two vertices joined by ``n`` parallel edges, all pointing from the first
    vertex to the second; the rotation makes it equal to ``dual_graph(cycle_graph(n))``."""
    if n < 1:
        raise GraphError("dipole_graph needs n >= 1")
    rot = [[1] + [n - i for i in range(n - 1)], [-(e + 1) for e in range(n)]]
    return PlanarGraph.from_rotation(rot, f"dipole({n})")


def theta_graph() -> PlanarGraph:
    return dipole_graph(3).with_name("theta")


def wheel_graph(n: int) -> PlanarGraph:
    """Hub with ``n`` spokes and a rim cycle.

    Rim edge ``k`` (``1 <= k <= n``) runs counterclockwise from ``A_{k-1}`` to
    ``A_k``; spoke ``n + k`` runs outward from the hub to ``A_{k-1}``. Both groups
    are ordered by angle.
    """
    if n < 2:
        raise GraphError("wheel_graph needs n >= 2")
    hub = [n + k + 1 for k in range(n)]
    rim = [[k + 1, -(n + k + 1), -(((k - 1) % n) + 1)] for k in range(n)]
    return PlanarGraph.from_rotation([hub] + rim, f"wheel({n})")


def _rotation_from_positions(points: np.ndarray, edges: Sequence[tuple[int, int]],
                             normals: np.ndarray | None = None) -> list[list[int]]:
    """Counterclockwise rotation lists for a straight-line drawing.

    For 2D points the plane is viewed from above; for 3D points on a convex
    surface each vertex is viewed from outside along ``normals``.
    """
    nv = len(points)
    incident: list[list[tuple[float, int]]] = [[] for _ in range(nv)]
    for e, (t, h) in enumerate(edges):
        for v, w, signed in ((t, h, e + 1), (h, t, -(e + 1))):
            vec = np.asarray(points[w], float) - np.asarray(points[v], float)
            if normals is None:
                ang = math.atan2(vec[1], vec[0])
            else:
                nrm = normals[v] / np.linalg.norm(normals[v])
                ref = np.cross(nrm, [0.3, 0.5, 0.7])
                if np.linalg.norm(ref) < 1e-6:
                    ref = np.cross(nrm, [0.7, -0.2, 0.1])
                ref /= np.linalg.norm(ref)
                ref2 = np.cross(nrm, ref)
                ang = math.atan2(float(vec @ ref2), float(vec @ ref))
            incident[v].append((ang, signed))
    return [[s for _, s in sorted(inc)] for inc in incident]


def tetrahedron_graph() -> PlanarGraph:
    """Built from a plane drawing: hub at the origin, ``A_k`` at angle ``120k``
    degrees, outer edges ``A_k -> A_{k+1}`` first, then spokes ``O -> A_k``."""
    pts = [(0.0, 0.0)] + [(math.cos(2 * math.pi * k / 3), math.sin(2 * math.pi * k / 3)) for k in range(3)]
    edges = [(1 + k, 1 + (k + 1) % 3) for k in range(3)] + [(0, 1 + k) for k in range(3)]
    return PlanarGraph.from_rotation(_rotation_from_positions(np.array(pts), edges), "tetrahedron")


def _platonic_points(name: str) -> np.ndarray:
    phi = (1 + math.sqrt(5)) / 2
    if name == "tetrahedron":
        return np.array([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], float)
    if name == "cube":
        return np.array(list(itertools.product((-1, 1), repeat=3)), float)
    if name == "octahedron":
        return np.array([s * np.eye(3)[i] for i in range(3) for s in (1, -1)], float)
    if name == "icosahedron":
        pts = []
        for s1, s2 in itertools.product((-1, 1), repeat=2):
            pts += [(0, s1, s2 * phi), (s1, s2 * phi, 0), (s2 * phi, 0, s1)]
        return np.array(pts, float)
    if name == "dodecahedron":
        pts = [p for p in itertools.product((-1, 1), repeat=3)]
        for s1, s2 in itertools.product((-1, 1), repeat=2):
            pts += [(0, s1 / phi, s2 * phi), (s1 / phi, s2 * phi, 0), (s2 * phi, 0, s1 / phi)]
        return np.array(pts, float)
    raise GraphError(f"unknown platonic solid {name!r}")


PLATONIC = ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron")


def platonic(name: str) -> PlanarGraph:
    """Platonic solid from vertex coordinates.

    Edges join nearest neighbours, are numbered by sorted vertex pairs and
    point from the lower vertex index to the higher.
    """
    pts = _platonic_points(name)
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
    dmin = dist[dist > 1e-9].min()
    edges = [(i, j) for i in range(len(pts)) for j in range(i + 1, len(pts))
             if abs(dist[i, j] - dmin) < 1e-9]
    return PlanarGraph.from_rotation(_rotation_from_positions(pts, edges, normals=pts), name)


def cube_graph() -> PlanarGraph:
    return platonic("cube")


def octahedron_graph() -> PlanarGraph:
    return platonic("octahedron")


def parse_graph_spec(spec: str) -> PlanarGraph:
    """``tetrahedron``, ``wheel:N``, ``cycle:N``, ``dipole:N``, ``theta`` or a platonic name."""
    head, _, arg = spec.partition(":")
    head = head.strip().lower()
    try:
        if head == "tetrahedron" and not arg:
            return tetrahedron_graph()
        if head == "theta" and not arg:
            return theta_graph()
        if head in ("wheel", "cycle", "dipole"):
            n = int(arg)
            return {"wheel": wheel_graph, "cycle": cycle_graph, "dipole": dipole_graph}[head](n)
        if head in PLATONIC and not arg:
            return platonic(head)
    except ValueError as exc:
        raise GraphError(f"bad graph specification {spec!r}: {exc}") from exc
    raise GraphError(f"unknown graph specification {spec!r}")


# ---------------------------------------------------------------------------
# genus-g skeletons (surface tangles with handles attached at one corner)

def _with_handles(rotation: list[list[int]], n_edges: int, g: int, name: str) -> PlanarGraph:
    rot = [list(v) for v in rotation] or [[]]
    extra = []
    for h in range(g):
        a = n_edges + 2 * h + 1
        b = a + 1
        extra += [a, b, -a, -b]
    rot[0] = rot[0] + extra
    return PlanarGraph.from_rotation(rot, name)


def ghz_skeleton(n: int, g: int) -> PlanarGraph:
    """Cycle on ``n`` boundary edges with ``g`` handles, as a map of genus ``g``."""
    if n < 0 or g < 0 or n + g == 0:
        raise GraphError("ghz_skeleton needs n + g >= 1")
    base = cycle_graph(n).rotation() if n else []
    return _with_handles(base, n, g, f"ghz_skeleton({n},{g})")


def max_skeleton(n: int, g: int) -> PlanarGraph:
    """Dipole on ``n`` boundary edges with ``g`` handles, as a map of genus ``g``."""
    if n < 0 or g < 0 or n + g == 0:
        raise GraphError("max_skeleton needs n + g >= 1")
    base = dipole_graph(n).rotation() if n else []
    return _with_handles(base, n, g, f"max_skeleton({n},{g})")
