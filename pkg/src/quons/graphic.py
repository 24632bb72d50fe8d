"""Graphic quons: GHZ and Max states, generating functions and graph state sums.

Normalization of the state sum. Every trivalent vertex basis vector has unit
norm, so a theta network is 1. A ``k``-valent vertex contributes
``delta^{1 - k/2}`` and is split into a left comb of trivalent vertices; each
internal comb edge ``e`` rescales the comb to unit norm by ``d(e)^{1/2}``. The
coefficient of ``|X>`` is

    prod_v delta^{1 - k_v/2} * sum_{internal labels} |Z(G; X, internal)|^2

which reproduces ``d(X)^{2-n}`` on the n-cycle and ``delta^{2-n} dim hom(1, X)``
on the n-dipole.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import config
from .graphs import GraphError, PlanarGraph, dual_graph, map_symmetries, reverse_all_edges, wheel_graph
from .mtc import MtcData, UnsupportedParameterError, fusion_dim_hom_unit
from .quon import Quon, apply_slotwise, sft
from .recoupling import RecouplingData, normalized_tet_squared
from .report import VerificationReport


class GuardExceededError(ValueError):
    pass


class UnsupportedGraphError(GraphError):
    pass


# ---------------------------------------------------------------------------
# closed forms

def ghz(m: MtcData, n: int, g: int = 0) -> Quon:
    """``sum_X d(X)^{2-n-2g} |X ... X>``."""
    if n < 0 or g < 0:
        raise ValueError("n and g must be nonnegative")
    c = np.zeros((m.rank,) * n)
    w = m.d ** (2 - n - 2 * g)
    if n == 0:
        c = np.asarray(w.sum())
    else:
        for x in range(m.rank):
            c[(x,) * n] = w[x]
    return Quon(m, c)


def _guard(m: MtcData, g: int) -> None:
    if m.rank ** g > config.BRUTE_FORCE_CAP:
        raise GuardExceededError(f"|Irr|^g = {m.rank}^{g} exceeds {config.BRUTE_FORCE_CAP}")


def brute_force_dim(m: MtcData, X: Sequence[int | str], g: int) -> int:
    """``sum_{Y in Irr^g} dim hom(1, X ⊗ Y_1 ⊗ ... ⊗ Y_g ⊗ dual(Y_g) ⊗ ... ⊗ dual(Y_1))``."""
    if g < 0:
        raise ValueError("g must be nonnegative")
    _guard(m, g)
    X = list(m.indices(X))
    total = 0
    for Y in itertools.product(range(m.rank), repeat=g):
        word = X + list(Y) + [m.dual[y] for y in reversed(Y)]
        total += fusion_dim_hom_unit(m, word)
    return total


@dataclass(frozen=True, eq=False)
class GenusDimTable:
    """``values[X_1, ..., X_n, g] = dim(X, g)`` for ``0 <= g <= G``."""

    mtc: MtcData
    n: int
    G: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != (self.mtc.rank,) * self.n + (self.G + 1,):
            raise ValueError("table shape mismatch")
        if (v < 0).any():
            raise ValueError("dimensions are nonnegative")
        object.__setattr__(self, "values", v.astype(np.int64))

    def __getitem__(self, key) -> int:
        *X, g = key
        return int(self.values[tuple(self.mtc.indices(X)) + (g,)])


def genus_dim_table(m: MtcData, n: int, G: int) -> GenusDimTable:
    _guard(m, G)
    vals = np.zeros((m.rank,) * n + (G + 1,), dtype=np.int64)
    for X in itertools.product(range(m.rank), repeat=n):
        for g in range(G + 1):
            vals[X + (g,)] = brute_force_dim(m, X, g)
    return GenusDimTable(m, n, G, vals)


def max_state(m: MtcData, n: int, g: int = 0) -> Quon:
    """``delta^{2-n-2g} sum_X dim(X, g) |X>`` with dimensions from fusion."""
    if n < 0 or g < 0:
        raise ValueError("n and g must be nonnegative")
    _guard(m, g)
    c = np.zeros((m.rank,) * n)
    for X in itertools.product(range(m.rank), repeat=n):
        c[X] = brute_force_dim(m, X, g)
    return Quon(m, m.delta ** (2 - n - 2 * g) * c)


def verlinde_sum(m: MtcData, X: Sequence[int | str], g: int) -> complex:
    """``sum_W (prod_i S_{X_i}^W) (S_W^1)^{2-n-2g}``."""
    X = m.indices(X)
    S = m.S
    prod = np.ones(m.rank, dtype=np.complex128)
    for x in X:
        prod = prod * S[x, :]
    return complex(np.sum(prod * S[:, 0] ** (2 - len(X) - 2 * g)))


def verlinde_table(m: MtcData, n: int, g: int) -> np.ndarray:
    """All generalized Verlinde sums for ``n`` boundary labels at genus ``g``."""
    S = m.S
    w = S[:, 0] ** (2 - n - 2 * g)
    if n == 0:
        return np.asarray(w.sum())
    operands = []
    for i in range(n):
        operands += [S, [i, n]]
    return np.einsum(*operands, w, [n], list(range(n)), optimize=True)


def check_max_equals_s_ghz(m: MtcData, n: int, g: int, tol: float = 1e-6) -> VerificationReport:
    """Max at genus ``g`` equals the slotwise S transform of GHZ at genus ``g``."""
    rep = VerificationReport("max = S ghz", m.name, tol=tol, parameters={"n": n, "g": g})
    mx = max_state(m, n, g)
    rhs = sft(m, ghz(m, n, g))
    err = mx.distance(rhs)
    rep.add("max-vs-sft-ghz", err <= tol, err)
    dims = np.zeros((m.rank,) * n)
    for X in itertools.product(range(m.rank), repeat=n):
        dims[X] = brute_force_dim(m, X, g)
    ver = verlinde_table(m, n, g)
    diff = np.abs(ver - dims)
    bad = [X for X in itertools.product(range(m.rank), repeat=n) if diff[X] > tol]
    rep.add("verlinde-equals-brute-force", not bad, float(diff.max(initial=0.0)),
            f"{m.rank**n} label tuples" + (f", failing {bad[:5]}" if bad else ""))
    frac = np.abs(ver - np.round(ver.real))
    rep.add("verlinde-integral", float(frac.max(initial=0.0)) <= tol, float(frac.max(initial=0.0)))
    return rep


# ---------------------------------------------------------------------------
# generating functions

@dataclass(frozen=True)
class RationalFn:
    """``sum c / (p - z)`` over ``terms = ((p, c), ...)`` with distinct poles."""

    terms: tuple[tuple[float, complex], ...] = ()

    @classmethod
    def build(cls, terms: Iterable[tuple[float, complex]], tol: float = 1e-12) -> "RationalFn":
        merged: list[list] = []
        for p, c in terms:
            for t in merged:
                if abs(t[0] - p) <= tol * max(1.0, abs(p)):
                    t[1] += c
                    break
            else:
                merged.append([float(p), complex(c)])
        return cls(tuple((p, c) for p, c in merged if abs(c) > tol))

    def __call__(self, z: complex) -> complex:
        return sum(c / (p - z) for p, c in self.terms)

    def coefficient(self, g: int) -> complex:
        return sum(c * p ** (-(g + 1)) for p, c in self.terms)

    def series(self, G: int) -> np.ndarray:
        return np.array([self.coefficient(g) for g in range(G + 1)])

    def __add__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn.build(self.terms + other.terms)


def ghz_genfun(m: MtcData, n: int) -> np.ndarray:
    """Object array of :class:`RationalFn`; ``|X...X>`` carries ``d(X)^{4-n} / (d(X)^2 - z)``."""
    out = np.empty((m.rank,) * n, dtype=object)
    for idx in itertools.product(range(m.rank), repeat=n):
        out[idx] = RationalFn()
    d = m.d
    for x in range(m.rank):
        fn = RationalFn.build([(d[x] ** 2, d[x] ** (4 - n))])
        if n == 0:
            out[()] = out[()] + fn
        else:
            out[(x,) * n] = fn
    return out


def max_genfun(m: MtcData, n: int) -> np.ndarray:
    """Object array with ``sum_W (prod_i S_{X_i}^W) d(W)^{4-n} / (d(W)^2 - z)``."""
    out = np.empty((m.rank,) * n, dtype=object)
    d, S = m.d, m.S
    for X in itertools.product(range(m.rank), repeat=n):
        terms = []
        for w in range(m.rank):
            coef = np.prod([S[x, w] for x in X]) if X else 1.0
            terms.append((d[w] ** 2, coef * d[w] ** (4 - n)))
        out[X] = RationalFn.build(terms)
    return out


def check_genfun_series(m: MtcData, n: int, G: int = 4, tol: float = 1e-7) -> VerificationReport:
    """``z^g`` coefficients of the generating functions against GHZ and the
    brute-force dimension table scaled by ``delta^{2-n-2g}``."""
    rep = VerificationReport("generating functions", m.name, tol=tol, parameters={"n": n, "G": G})
    table = genus_dim_table(m, n, G)
    mg = max_genfun(m, n)
    gg = ghz_genfun(m, n)
    err_max = 0.0
    err_ghz = 0.0
    for g in range(G + 1):
        scale = m.delta ** (2 - n - 2 * g)
        ghz_g = ghz(m, n, g).coeffs
        for X in itertools.product(range(m.rank), repeat=n):
            err_max = max(err_max, abs(mg[X].coefficient(g) - scale * table.values[X + (g,)]))
            err_ghz = max(err_ghz, abs(gg[X].coefficient(g) - ghz_g[X]))
    rep.add("max-genfun-series", err_max <= tol, err_max, f"z^0..z^{G}")
    rep.add("ghz-genfun-series", err_ghz <= tol, err_ghz, f"z^0..z^{G}")
    return rep


# ---------------------------------------------------------------------------
# state-sum engine

@dataclass
class ReductionPlan:
    """Product of nonnegative factor tensors whose contraction over internal
    variables gives the coefficient table over the ``n_external`` edge labels."""

    rank: int
    n_external: int
    prefactor: float
    factors: list[tuple[tuple[int, ...], np.ndarray]] = field(default_factory=list)
    steps: list[str] = field(default_factory=list)

    def _operands(self, extra: Sequence = ()) -> list:
        ops: list = []
        for vars_, arr in self.factors:
            ops += [arr, list(vars_)]
        ops += list(extra)
        return ops

    def table(self) -> np.ndarray:
        used = {v for vs, _ in self.factors for v in vs}
        extra = []
        for v in range(self.n_external):
            if v not in used:
                extra += [np.ones(self.rank), [v]]
        ops = self._operands(extra) + [list(range(self.n_external))]
        return self.prefactor * np.einsum(*ops, optimize="greedy")

    def at(self, X: Sequence[int]) -> float:
        """Coefficient of a single label tuple without building the table."""
        extra = []
        for v, x in enumerate(X):
            e = np.zeros(self.rank)
            e[x] = 1.0
            extra += [e, [v]]
        return float(self.prefactor * np.einsum(*self._operands(extra), [], optimize="greedy"))

    def contract(self, vectors: Sequence[np.ndarray]) -> complex:
        """``sum_Y prod_k vectors[k][Y_k] * coefficient(Y)``."""
        extra = []
        for v, vec in enumerate(vectors):
            extra += [np.asarray(vec), [v]]
        return complex(self.prefactor * np.einsum(*self._operands(extra), [], optimize="greedy"))


class _Network:
    """Mutable labelled map used while reducing a closed network."""

    def __init__(self, G: PlanarGraph, r: RecouplingData):
        self.r = r
        m = r.mtc
        self.rank = m.rank
        self.dualp = np.asarray(m.dual_perm)
        self.ident = np.arange(m.rank)
        self.d = m.d
        self.sig = dict(enumerate(G.sigma))
        self.alpha = {d: d ^ 1 for d in range(G.n_darts)}
        self.var = {d: d // 2 for d in range(G.n_darts)}
        self.conj = {d: bool(d & 1) for d in range(G.n_darts)}
        self.next_dart = G.n_darts
        self.next_var = G.n_edges
        self.factors: list[tuple[tuple[int, ...], np.ndarray]] = []
        self.steps: list[str] = []
        N = m.N
        self.adm3 = N[:, :, m.dual_perm].astype(float)

    # -- helpers ---------------------------------------------------------
    def perm(self, dart: int, dual: bool = False) -> np.ndarray:
        p = self.dualp if self.conj[dart] else self.ident
        return self.dualp[p] if dual else p

    def add_factor(self, darts: Sequence[int], table: np.ndarray, duals: Sequence[bool] | None = None) -> None:
        """Record ``table`` indexed by the outward labels of ``darts`` (optionally dualized)."""
        duals = duals or [False] * len(darts)
        vars_ = tuple(self.var[d] for d in darts)
        if len(set(vars_)) != len(vars_):
            raise AssertionError("factor with repeated variable")
        arr = table[np.ix_(*[self.perm(d, f) for d, f in zip(darts, duals)])]
        self.factors.append((vars_, np.ascontiguousarray(arr, dtype=float)))

    def vertices(self) -> list[list[int]]:
        seen = set()
        out = []
        for start in sorted(self.sig):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            d = self.sig[start]
            while d != start:
                cyc.append(d)
                seen.add(d)
                d = self.sig[d]
            out.append(cyc)
        return out

    def faces(self) -> list[list[int]]:
        seen = set()
        out = []
        for start in sorted(self.sig):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            d = self.sig[self.alpha[start]]
            while d != start:
                cyc.append(d)
                seen.add(d)
                d = self.sig[self.alpha[d]]
            out.append(cyc)
        return out

    def drop_vertex(self, darts: Iterable[int]) -> None:
        for d in darts:
            del self.sig[d]

    def remove_dart(self, d: int) -> None:
        nxt = self.sig[d]
        if nxt != d:
            prev = d
            while self.sig[prev] != d:
                prev = self.sig[prev]
            self.sig[prev] = nxt
        del self.sig[d]

    def join(self, f1: int, f2: int) -> None:
        """Make ``f1`` and ``f2`` the two ends of one edge, keeping the variable of ``f1``."""
        self.alpha[f1], self.alpha[f2] = f2, f1
        self.var[f2] = self.var[f1]
        self.conj[f2] = not self.conj[f1]

    def euler_ok(self) -> bool:
        verts = self.vertices()
        if not verts:
            return True
        vo = {d: i for i, cyc in enumerate(verts) for d in cyc}
        parent = list(range(len(verts)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        for d in self.sig:
            a, b = find(vo[d]), find(vo[self.alpha[d]])
            parent[a] = b
        comps = len({find(i) for i in range(len(verts))})
        return len(verts) - len(self.sig) // 2 + len(self.faces()) == 2 * comps

    # -- spider decomposition -------------------------------------------
    def split(self, cyc: list[int], offset: int = 0) -> None:
        k = len(cyc)
        start = cyc.index(min(cyc, key=lambda d: (self.var[d], d)))
        order = cyc[start:] + cyc[:start]
        order = order[offset % k:] + order[:offset % k]
        nodes: list[list[int]] = []
        prev_head = None
        for j in range(k - 2):
            if j == 0:
                node = [order[0], order[1]]
            else:
                node = [prev_head, order[j + 1]]
            if j == k - 3:
                node.append(order[k - 1])
            else:
                t, h = self.next_dart, self.next_dart + 1
                self.next_dart += 2
                self.alpha[t], self.alpha[h] = h, t
                self.var[t] = self.var[h] = self.next_var
                self.conj[t], self.conj[h] = False, True
                self.next_var += 1
                node.append(t)
                prev_head = h
                self.add_factor([t], self.d)
            nodes.append(node)
        for node in nodes:
            for i, dd in enumerate(node):
                self.sig[dd] = node[(i + 1) % 3]

    # -- local rules -----------------------------------------------------
    def reduce_vertex(self, cyc: list[int]) -> bool:
        k = len(cyc)
        a = self.alpha
        if k == 1:
            d = cyc[0]
            unit = np.zeros(self.rank)
            unit[0] = 1.0
            self.add_factor([d], unit)
            far = a[d]
            self.drop_vertex(cyc)
            self.remove_dart(far)
            self.steps.append("univalent")
            return True
        if k == 2:
            d1, d2 = cyc
            if a[d1] == d2:
                self.add_factor([d1], self.d)
                self.drop_vertex(cyc)
                self.steps.append("loop")
                return True
            # bend[l1, l2] = [l2 == dual(l1)] / d(l1)
            bend = np.array([[float(l2 == self.dualp[l1]) / self.d[l1] for l2 in range(self.rank)]
                             for l1 in range(self.rank)])
            self.add_factor([d1, d2], bend)
            f1, f2 = a[d1], a[d2]
            self.drop_vertex(cyc)
            self.join(f1, f2)
            self.steps.append("bivalent")
            return True
        if k == 3:
            for i in range(3):
                p, q, leg = cyc[i], cyc[(i + 1) % 3], cyc[(i + 2) % 3]
                if a[p] == q:
                    unit_d = np.zeros((self.rank, self.rank))
                    unit_d[0, :] = self.d
                    self.add_factor([leg, p], unit_d)
                    far = a[leg]
                    self.drop_vertex(cyc)
                    self.remove_dart(far)
                    self.steps.append("tadpole")
                    return True
        return False

    def vertex_of(self) -> dict[int, int]:
        return {d: i for i, cyc in enumerate(self.vertices()) for d in cyc}

    def reduce_bubble(self, face: list[int], vo: dict[int, int], deg: dict[int, int]) -> bool:
        d1, d2 = face
        u, v = vo[d1], vo[d2]
        if u == v or deg[u] != 3 or deg[v] != 3:
            return False
        a, s = self.alpha, self.sig
        x, y = s[d1], s[d2]
        B = a[d2]
        u_darts = [x, B, d1]
        v_darts = [a[d1], d2, y]
        if a[x] == y:
            self.add_factor([x, B, d1], self.adm3)
            self.drop_vertex(u_darts)
            self.drop_vertex(v_darts)
            self.steps.append("theta")
            return True
        dx = self.d
        bubble = self.adm3[:, :, :, None] * (
            (np.arange(self.rank)[None, :] == self.dualp[:, None]) / dx[:, None] ** 2)[:, None, None, :]
        self.add_factor([x, B, d1, y], bubble)
        fx, fy = a[x], a[y]
        self.drop_vertex(u_darts)
        self.drop_vertex(v_darts)
        self.join(fx, fy)
        self.steps.append("bubble")
        return True

    def reduce_triangle(self, face: list[int], vo: dict[int, int], deg: dict[int, int]) -> bool:
        t1, t2, t3 = face
        u, v, w = vo[t1], vo[t2], vo[t3]
        if len({u, v, w}) < 3 or not (deg[u] == deg[v] == deg[w] == 3):
            return False
        a, s = self.alpha, self.sig
        x, y, z = s[t1], s[t2], s[t3]
        if a[x] in (y, z) or a[y] == z:
            return False
        tet = self.r.tet_table()
        # tetrahedron (a,b,c,d,e,f) with vertices u=(a,b,e), v=(c,e,d), w=(b,c,f), new=(a,f,d)
        self.add_factor([x, a[t3], t2, y, a[t1], z], tet, duals=[False, False, False, True, False, False])
        self.drop_vertex([x, a[t3], t1])
        self.drop_vertex([y, a[t1], t2])
        self.drop_vertex([z, a[t2], t3])
        self.sig[x], self.sig[z], self.sig[y] = z, y, x
        self.steps.append("triangle")
        return True

    def run(self, comb_offset: int = 0) -> None:
        for cyc in self.vertices():
            if len(cyc) >= 4:
                self.split(cyc, comb_offset)
                self.steps.append(f"spider{len(cyc)}")
        while self.sig:
            if not self.euler_ok():
                raise AssertionError("reduction left the sphere")
            verts = sorted(self.vertices(), key=len)
            if any(self.reduce_vertex(c) for c in verts if len(c) <= 3):
                continue
            vo = self.vertex_of()
            deg = {i: len(c) for i, c in enumerate(self.vertices())}
            faces = sorted(self.faces(), key=len)
            if any(self.reduce_bubble(f, vo, deg) for f in faces if len(f) == 2):
                continue
            if any(self.reduce_triangle(f, vo, deg) for f in faces if len(f) == 3):
                continue
            raise UnsupportedGraphError(
                "no bubble or triangle reduction applies; the network is outside the supported family")


def reduction_plan(r: RecouplingData, G: PlanarGraph, comb_offset: int = 0) -> ReductionPlan:
    """Reduce the closed network on ``G`` to a product of local factor tensors."""
    if not r.mtc.is_multiplicity_free():
        raise UnsupportedParameterError("graph state sums need a multiplicity-free category")
    if G.genus != 0:
        raise UnsupportedGraphError("graph state sums are evaluated on the sphere only")
    key = (G.sigma, comb_offset)
    cache = r.__dict__.setdefault("_plans", {})
    if key in cache:
        return cache[key]
    delta = r.mtc.delta
    pre = math.prod(delta ** (1 - len(c) / 2) for c in G.vertices())
    net = _Network(G, r)
    net.run(comb_offset)
    plan = ReductionPlan(r.mtc.rank, G.n_edges, pre, net.factors, net.steps)
    cache[key] = plan
    return plan


def graph_coefficient_table(r: RecouplingData, G: PlanarGraph, comb_offset: int = 0) -> np.ndarray:
    """Coefficients of the graphic quon of ``G`` for every label tuple."""
    if r.mtc.rank ** G.n_edges > config.SWEEP_CAP:
        raise GuardExceededError("coefficient table too large; evaluate single tuples instead")
    return reduction_plan(r, G, comb_offset).table()


def graph_coefficient(m: MtcData, r: RecouplingData, G: PlanarGraph, X: Sequence[int | str],
                      comb_offset: int = 0) -> float:
    if r.mtc is not m and r.mtc.name != m.name:
        raise ValueError("recoupling data belongs to a different category")
    X = m.indices(X)
    if len(X) != G.n_edges:
        raise ValueError(f"{G.n_edges} labels expected, got {len(X)}")
    return reduction_plan(r, G, comb_offset).at(X)


def graphic_quon(r: RecouplingData, G: PlanarGraph) -> Quon:
    return Quon(r.mtc, graph_coefficient_table(r, G))


def tetrahedron_coefficient(r: RecouplingData, X: Sequence[int | str]) -> float:
    """Tetrahedron coefficient from the F-symbol table: ``delta^{-2} |Tet|^2``."""
    return normalized_tet_squared(r, X) / r.mtc.mu


def tetrahedron_table(r: RecouplingData) -> np.ndarray:
    """All tetrahedron coefficients from the precomputed ``|F|^2 / (d d)`` table,
    indexed by the six edge labels of :func:`tetrahedron_graph`."""
    tet = r.tet_table()
    dual = np.asarray(r.mtc.dual_perm)
    # F-pattern (a, b, c, d, e, f) = (X6, X5, X1, X3, dual X4, X2)
    t = tet[:, :, :, :, dual, :]  # axis 4 now indexed by X4
    # reorder axes a=X6, b=X5, c=X1, d=X3, e=X4, f=X2 into X1..X6
    return np.transpose(t, (2, 5, 3, 4, 1, 0)) / r.mtc.mu


# ---------------------------------------------------------------------------
# identity checks

def _sweep_size(m: MtcData, n_edges: int) -> int:
    return m.rank ** (2 * n_edges)


def check_graph_duality(m: MtcData, r: RecouplingData, G: PlanarGraph, tol: float = 1e-8,
                        samples: int = 200, seed: int | None = None,
                        force_sampled: bool = False) -> VerificationReport:
    """``coefficient(dual G, X) == sum_Y prod_k S_{Y_k}^{X_k} coefficient(G, Y)``."""
    seed = config.DEFAULT_SEED if seed is None else seed
    H = dual_graph(G)
    rep = VerificationReport("graph duality", m.name, tol=tol, seed=seed,
                             parameters={"graph": G.name or "custom", "edges": G.n_edges})
    pg, ph = reduction_plan(r, G), reduction_plan(r, H)
    n = G.n_edges
    if not force_sampled and _sweep_size(m, n) <= config.SWEEP_CAP:
        TG, TH = pg.table(), ph.table()
        rhs = apply_slotwise(m.S, TG)
        err = float(np.max(np.abs(TH - rhs)))
        rep.add("dual-equals-sft", err <= tol, err, f"exhaustive over {m.rank**n} label tuples")
    else:
        rng = np.random.default_rng(seed)
        err = 0.0
        for _ in range(samples):
            X = tuple(int(x) for x in rng.integers(0, m.rank, size=n))
            lhs = ph.at(X)
            rhs = pg.contract([m.S[:, x] for x in X])
            err = max(err, abs(lhs - rhs))
        rep.add("dual-equals-sft", err <= tol, err, f"SAMPLED {samples} of {m.rank**n} label tuples")
        rep.sampled = True
    return rep


def check_wheel_self_duality(m: MtcData, r: RecouplingData, n: int, tol: float = 1e-8) -> VerificationReport:
    """Wheel self-duality in relabelled form: the coefficient at
    ``(X_{2n}, ..., X_{n+1}, dual X_n, ..., dual X_1)`` equals the S transform at ``X``."""
    W = wheel_graph(n)
    rep = VerificationReport("wheel self-duality", m.name, tol=tol, parameters={"n": n})
    T = graph_coefficient_table(r, W)
    rep.extend(_relabel_identity(m, T, n))
    return rep


def _relabel_identity(m: MtcData, T: np.ndarray, n: int) -> VerificationReport:
    rep = VerificationReport("relabel", m.name)
    dual = np.asarray(m.dual_perm)
    # lhs[X] = T[X_{2n}, ..., X_{n+1}, dual X_n, ..., dual X_1]
    lhs = np.transpose(T, tuple(reversed(range(2 * n))))
    for axis in range(n, 2 * n):
        lhs = np.take(lhs, dual, axis=axis)
    rhs = apply_slotwise(m.S, T)
    err = float(np.max(np.abs(lhs - rhs)))
    rep.add("relabelled-equals-sft", err <= 1e-8, err, f"exhaustive over {m.rank**(2*n)} label tuples")
    return rep


def check_6j_self_duality(m: MtcData, r: RecouplingData, tol: float = 1e-8) -> VerificationReport:
    """``|T(X6, X5, X4, dual X3, dual X2, dual X1)| == sum_Y prod S_{X_k}^{Y_k} T(Y)``
    on the tetrahedron, from the precomputed ``|6j|^2`` table."""
    rep = VerificationReport("6j self-duality", m.name, tol=tol)
    T = tetrahedron_table(r)
    dual = np.asarray(m.dual_perm)
    lhs = np.transpose(T, (5, 4, 3, 2, 1, 0))
    for axis in (3, 4, 5):
        lhs = np.take(lhs, dual, axis=axis)
    rhs = apply_slotwise(m.S.T, T)
    err = float(np.max(np.abs(lhs - rhs)))
    rep.add("6j-self-duality", err <= tol, err, f"exhaustive over {m.rank**6} label tuples")
    return rep


def check_graph_properties(m: MtcData, r: RecouplingData, G: PlanarGraph, tol: float = 1e-9,
                           symmetries: bool = False) -> VerificationReport:
    """Positivity, all-edge reversal, single-edge conjugation, double Fourier and
    (optionally) invariance under the map's symmetry group."""
    rep = VerificationReport("graph properties", m.name, tol=tol, parameters={"graph": G.name or "custom"})
    T = graph_coefficient_table(r, G)
    dual = np.asarray(m.dual_perm)
    neg = float(max(0.0, -T.min()))
    rep.add("positivity", neg <= tol, neg)
    err = float(np.max(np.abs(graph_coefficient_table(r, reverse_all_edges(G)) - T)))
    rep.add("all-edge-reversal", err <= tol, err)
    worst = 0.0
    for j in range(G.n_edges):
        Tj = graph_coefficient_table(r, G.reverse_edges([j]))
        worst = max(worst, float(np.max(np.abs(Tj - np.take(T, dual, axis=j)))))
    rep.add("single-edge-conjugation", worst <= tol, worst, f"{G.n_edges} edges")
    twice = apply_slotwise(m.S, apply_slotwise(m.S, T))
    conj = T
    for axis in range(T.ndim):
        conj = np.take(conj, dual, axis=axis)
    err = float(np.max(np.abs(twice - conj)))
    rep.add("double-fourier", err <= tol, err)
    if symmetries:
        rep.extend(check_symmetry_invariance(m, T, G, tol))
    return rep


def check_symmetry_invariance(m: MtcData, T: np.ndarray, G: PlanarGraph, tol: float = 1e-9) -> VerificationReport:
    rep = VerificationReport("symmetry", m.name, tol=tol)
    dual = np.asarray(m.dual_perm)
    syms = map_symmetries(G)
    worst = 0.0
    for perm, flip in syms:
        # (g.T)[Y] with Y_{perm[e]} = X_e or its dual
        moved = T
        for e in range(G.n_edges):
            if flip[e]:
                moved = np.take(moved, dual, axis=e)
        inv = np.argsort(perm)
        moved = np.transpose(moved, inv)
        worst = max(worst, float(np.max(np.abs(moved - T))))
    rep.add("map-symmetry-invariance", worst <= tol, worst, f"{len(syms)} symmetries")
    return rep


def check_normalization_oracle(m: MtcData, r: RecouplingData, n_max: int = 5,
                               tol: float = config.DEFAULT_TOL) -> VerificationReport:
    """Cycle and dipole coefficients against the genus-0 GHZ and Max closed forms."""
    from .graphs import cycle_graph, dipole_graph
    rep = VerificationReport("state-sum normalization", m.name, tol=tol, parameters={"n_max": n_max})
    for n in range(1, n_max + 1):
        err_c = float(np.max(np.abs(graph_coefficient_table(r, cycle_graph(n)) - ghz(m, n).coeffs.real)))
        rep.add(f"cycle{n}-vs-ghz", err_c <= tol, err_c)
        err_d = float(np.max(np.abs(graph_coefficient_table(r, dipole_graph(n)) - max_state(m, n).coeffs.real)))
        rep.add(f"dipole{n}-vs-max", err_d <= tol, err_d)
    return rep
