"""Recoupling data (F-symbols) for multiplicity-free categories.

``F[a, b, c, d][e, f]`` is the unitary change of basis from the tree
``((a b)_e c)_d`` to ``(a (b c)_f)_d`` inside ``hom(d, a ⊗ b ⊗ c)``. All
quantities consumed downstream are modulus squares, so only the gauge class of
the table matters.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from . import config
from .mtc import MtcData, UnsupportedParameterError
from .report import VerificationReport


class MultiplicityError(ValueError):
    pass


class PentagonError(ValueError):
    pass


Block = tuple[tuple[int, ...], tuple[int, ...], np.ndarray]

DENSE_MAX_RANK = 12


@dataclass(eq=False)
class RecouplingData:
    mtc: MtcData
    blocks: dict[tuple[int, int, int, int], Block]
    source: str = ""
    _dense: np.ndarray | None = field(default=None, repr=False)
    _tet: np.ndarray | None = field(default=None, repr=False)

    def admissible(self, a: int, b: int, c: int) -> bool:
        """``hom(1, a ⊗ b ⊗ c)`` is nonzero, i.e. ``N_{a,b}^{dual(c)} = 1``."""
        return bool(self.mtc.N[a, b, self.mtc.dual[c]])

    def theta(self, a: int, b: int, c: int) -> float:
        """Theta network with trace-normalized vertices, ``sqrt(d_a d_b d_c)``."""
        if not self.admissible(a, b, c):
            return 0.0
        d = self.mtc.d
        return math.sqrt(d[a] * d[b] * d[c])

    def block(self, a: int, b: int, c: int, d: int) -> Block:
        return self.blocks.get((a, b, c, d), ((), (), np.zeros((0, 0), dtype=np.complex128)))

    def value(self, a: int, b: int, c: int, d: int, e: int, f: int) -> complex:
        es, fs, mat = self.block(a, b, c, d)
        try:
            return complex(mat[es.index(e), fs.index(f)])
        except ValueError:
            return 0j

    def dense(self) -> np.ndarray:
        """The full table as an ``r^6`` complex array (zero when inadmissible)."""
        if self._dense is None:
            r = self.mtc.rank
            if r > DENSE_MAX_RANK:
                raise UnsupportedParameterError(f"dense F table limited to rank <= {DENSE_MAX_RANK}")
            F = np.zeros((r,) * 6, dtype=np.complex128)
            for (a, b, c, d), (es, fs, mat) in self.blocks.items():
                F[a, b, c, d][np.ix_(es, fs)] = mat
            self._dense = F
        return self._dense

    def tet_table(self) -> np.ndarray:
        """``|F[a,b,c,d][e,f]|^2 / (d_e d_f)`` for all six labels.

        This is the squared tetrahedral network with unit-norm trivalent vertices
        ``(a,b -> e)``, ``(e,c -> d)``, ``(b,c -> f)``, ``(a,f -> d)``.
        """
        if self._tet is None:
            d = self.mtc.d
            self._tet = np.abs(self.dense()) ** 2 / (d[None, None, None, None, :, None] * d[None, None, None, None, None, :])
        return self._tet


def _block_indices(m: MtcData, a: int, b: int, c: int, d: int) -> tuple[list[int], list[int]]:
    N = m.N
    es = [e for e in range(m.rank) if N[a, b, e] and N[e, c, d]]
    fs = [f for f in range(m.rank) if N[b, c, f] and N[a, f, d]]
    return es, fs


def _assemble(m: MtcData, entry) -> dict[tuple[int, int, int, int], Block]:
    blocks = {}
    for a, b, c, d in itertools.product(range(m.rank), repeat=4):
        es, fs = _block_indices(m, a, b, c, d)
        if not es:
            continue
        mat = np.array([[entry(a, b, c, d, e, f) for f in fs] for e in es], dtype=np.complex128)
        blocks[(a, b, c, d)] = (tuple(es), tuple(fs), mat)
    return blocks


# ---------------------------------------------------------------------------
# tabulated and closed-form F-symbols

def _fibonacci_F(m: MtcData):
    phi = (1 + math.sqrt(5)) / 2
    block = np.array([[1 / phi, phi**-0.5], [phi**-0.5, -1 / phi]])

    def entry(a, b, c, d, e, f):
        if (a, b, c, d) == (1, 1, 1, 1):
            return block[e, f]
        return 1.0
    return entry


def _ising_F(m: MtcData):
    s, p = 1, 2
    r2 = 1 / math.sqrt(2)

    def entry(a, b, c, d, e, f):
        if (a, b, c, d) == (s, s, s, s):
            return r2 * (-1 if (e, f) == (p, p) else 1)
        if (a, b, c, d) in ((s, p, s, p), (p, s, p, s)):
            return -1.0
        return 1.0
    return entry


def _pointed_F(m: MtcData):
    n = m.rank

    def entry(a, b, c, d, e, f):
        if n % 2:
            return 1.0
        carry = b + c - (b + c) % n
        return complex(np.exp(1j * np.pi * a * carry / n))
    return entry


@lru_cache(maxsize=None)
def _qfactorials(k: int) -> tuple[float, ...]:
    r = k + 2
    s = math.sin(math.pi / r)
    out = [1.0]
    for n in range(1, 2 * r + 2):
        out.append(out[-1] * math.sin(n * math.pi / r) / s)
    return tuple(out)


def qint(k: int, n: int) -> float:
    r = k + 2
    return math.sin(n * math.pi / r) / math.sin(math.pi / r)


def _delta(fact, a: int, b: int, c: int) -> float:
    return math.sqrt(fact[(a + b - c) // 2] * fact[(a - b + c) // 2] * fact[(-a + b + c) // 2]
                     / fact[(a + b + c) // 2 + 1])


def su2_racah_6j(k: int, a: int, b: int, e: int, c: int, d: int, f: int) -> float:
    """q-Racah ``{a/2 b/2 e/2; c/2 d/2 f/2}`` at ``q = exp(i pi / (k+2))``."""
    fact = _qfactorials(k)
    alphas = ((a + b + e) // 2, (e + c + d) // 2, (b + c + f) // 2, (a + f + d) // 2)
    betas = ((a + b + c + d) // 2, (a + c + e + f) // 2, (b + d + e + f) // 2)
    total = 0.0
    for z in range(max(alphas), min(betas) + 1):
        den = 1.0
        for x in alphas:
            den *= fact[z - x]
        for y in betas:
            den *= fact[y - z]
        total += (-1) ** z * fact[z + 1] / den
    pre = _delta(fact, a, b, e) * _delta(fact, e, c, d) * _delta(fact, b, c, f) * _delta(fact, a, f, d)
    return pre * total


def _su2_F(m: MtcData, k: int):
    def entry(a, b, c, d, e, f):
        sign = (-1) ** ((a + b + c + d) // 2)
        return sign * math.sqrt(qint(k, e + 1) * qint(k, f + 1)) * su2_racah_6j(k, a, b, e, c, d, f)
    return entry


def _su2_level_of(m: MtcData) -> int | None:
    if m.description.startswith("su2_level("):
        return int(m.description[len("su2_level("):-1])
    return None


def build_recoupling(m: MtcData, F: Mapping[tuple[int, ...], complex] | None = None,
                     tol: float = config.DEFAULT_TOL, seed: int | None = None,
                     validate: bool = True) -> RecouplingData:
    """F-symbols for ``m``: tabulated for the built-ins, or taken from ``F``.

    ``F`` maps 6-tuples ``(a, b, c, d, e, f)`` to values; admissible entries that
    are missing default to 1 in one-dimensional blocks and raise otherwise.
    Unless ``validate`` is false the result must pass :func:`verify_recoupling`.
    """
    if not m.is_multiplicity_free():
        raise MultiplicityError(f"{m.name} has fusion multiplicities > 1")
    if F is not None:
        def entry(a, b, c, d, e, f, _F=F):
            key = (a, b, c, d, e, f)
            if key in _F:
                return _F[key]
            es, fs = _block_indices(m, a, b, c, d)
            if len(es) == 1:
                return 1.0
            raise PentagonError(f"missing F-symbol {key} in a {len(es)}-dimensional block")
        source = "user"
    elif m.name == "fibonacci":
        entry, source = _fibonacci_F(m), "tabulated"
    elif m.name == "ising":
        entry, source = _ising_F(m), "tabulated"
    elif m.description.startswith("pointed_z(") or m.name == "semion":
        entry, source = _pointed_F(m), "cocycle"
    elif (k := _su2_level_of(m)) is not None:
        entry, source = _su2_F(m, k), "q-racah"
    else:
        raise UnsupportedParameterError(f"no F-symbols known for {m.name}; supply them explicitly")
    r = RecouplingData(m, _assemble(m, entry), source)
    if not validate:
        return r
    rep = verify_recoupling(r, tol=tol, seed=seed)
    if not rep.passed:
        bad = "; ".join(c.line() for c in rep.failures())
        raise PentagonError(f"recoupling data for {m.name} failed validation: {bad}")
    return r


# ---------------------------------------------------------------------------
# validation

def pentagon_residual(r: RecouplingData, a: int, b: int, c: int, d: int, e: int) -> float:
    """Max residual of the pentagon equation for external labels ``a b c d -> e``.

    ``F^{fcd}_e[g,l] F^{abl}_e[f,k] = sum_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l]``.
    """
    F = r.value
    R = range(r.mtc.rank)
    N = r.mtc.N
    worst = 0.0
    for f, g, k, l in itertools.product(R, repeat=4):
        if not (N[a, b, f] and N[f, c, g] and N[g, d, e] and N[c, d, l] and N[b, l, k] and N[a, k, e]):
            continue
        lhs = F(f, c, d, e, g, l) * F(a, b, l, e, f, k)
        rhs = sum(F(a, b, c, g, f, h) * F(a, h, d, e, g, k) * F(b, c, d, k, h, l) for h in R)
        worst = max(worst, abs(lhs - rhs))
    return worst


def _pentagon_dense(r: RecouplingData) -> float:
    F = r.dense()
    worst = 0.0
    for a in range(r.mtc.rank):
        lhs = np.einsum("fcdegl,blefk->bcdefgkl", F, F[a], optimize=True)
        rhs = np.einsum("bcgfh,hdegk,bcdkhl->bcdefgkl", F[a], F[a], F, optimize=True)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def verify_recoupling(r: RecouplingData, tol: float = config.DEFAULT_TOL, samples: int = 2000,
                      seed: int | None = None) -> VerificationReport:
    m = r.mtc
    rep = VerificationReport("recoupling", m.name, tol=tol, seed=seed)
    rep.add("multiplicity-free", m.is_multiplicity_free())
    worst_u = 0.0
    worst_unit = 0.0
    for (a, b, c, d), (es, fs, mat) in r.blocks.items():
        if len(es) != len(fs):
            worst_u = max(worst_u, 1.0)
            continue
        worst_u = max(worst_u, float(np.max(np.abs(mat @ mat.conj().T - np.eye(len(es))))))
        if 0 in (a, b, c):
            worst_unit = max(worst_unit, float(np.max(np.abs(mat - np.eye(len(es))))))
    rep.add("blocks-unitary", worst_u <= tol, worst_u)
    rep.add("unit-blocks-identity", worst_unit <= tol, worst_unit)
    if m.rank <= 6:
        err = _pentagon_dense(r)
        rep.add("pentagon", err <= tol, err, f"exhaustive over {m.rank**5} label 5-tuples")
    else:
        rng = np.random.default_rng(config.DEFAULT_SEED if seed is None else seed)
        tuples = rng.integers(0, m.rank, size=(samples, 5))
        err = max(pentagon_residual(r, *map(int, t)) for t in tuples)
        rep.add("pentagon", err <= tol, err, f"{samples} sampled label 5-tuples")
        rep.sampled = True
    return rep


# ---------------------------------------------------------------------------
# tetrahedra

def tet_labels_from_edges(m: MtcData, X: Sequence[int]) -> tuple[int, int, int, int, int, int]:
    """F-pattern labels ``(a, b, c, d, e, f)`` for the ordered oriented tetrahedron.

    The tetrahedron has an outer triangle ``1: A0->A1, 2: A1->A2, 3: A2->A0`` and
    spokes ``4: O->A0, 5: O->A1, 6: O->A2``.
    """
    x1, x2, x3, x4, x5, x6 = X
    return x6, x5, x1, x3, m.dual[x4], x2


def normalized_tet_squared(r: RecouplingData, labels: Sequence[int | str]) -> float:
    """Squared tetrahedral network with unit-norm vertices, edges labelled as in
    :func:`tet_labels_from_edges`. Inadmissible vertices give 0."""
    X = r.mtc.indices(labels)
    if len(X) != 6:
        raise ValueError("a tetrahedron has six edges")
    a, b, c, d, e, f = tet_labels_from_edges(r.mtc, X)
    dd = r.mtc.d
    return abs(r.value(a, b, c, d, e, f)) ** 2 / (dd[e] * dd[f])


# Kauffman-Lins closed forms (unsigned), used as an independent route

def kl_theta(k: int, a: int, b: int, c: int) -> float:
    if (a + b + c) % 2 or a > b + c or b > a + c or c > a + b or a + b + c > 2 * k:
        return 0.0
    fact = _qfactorials(k)
    i, j, l = (a + b - c) // 2, (b + c - a) // 2, (a + c - b) // 2
    return fact[i + j + l + 1] * fact[i] * fact[j] * fact[l] / (fact[i + j] * fact[j + l] * fact[i + l])


def kl_tet(k: int, A: int, B: int, E: int, C: int, D: int, F: int) -> float:
    """Kauffman-Lins ``Tet[A B E; C D F]`` with faces ADE, BCE, ABF, CDF (modulus)."""
    for t in ((A, D, E), (B, C, E), (A, B, F), (C, D, F)):
        if kl_theta(k, *t) == 0.0:
            return 0.0
    fact = _qfactorials(k)
    a = ((A + D + E) // 2, (B + C + E) // 2, (A + B + F) // 2, (C + D + F) // 2)
    b = ((B + D + E + F) // 2, (A + C + E + F) // 2, (A + B + C + D) // 2)
    inner = 1.0
    for bj in b:
        for ai in a:
            inner *= fact[bj - ai]
    ext = 1.0
    for x in (A, B, C, D, E, F):
        ext *= fact[x]
    total = 0.0
    for s in range(max(a), min(b) + 1):
        den = 1.0
        for ai in a:
            den *= fact[s - ai]
        for bj in b:
            den *= fact[bj - s]
        total += (-1) ** s * fact[s + 1] / den
    return abs(inner / ext * total)


def kl_normalized_tet_squared(k: int, X: Sequence[int]) -> float:
    """Same quantity as :func:`normalized_tet_squared` for SU(2)_k, computed as
    ``Tet^2 / |theta theta theta theta|`` from the Kauffman-Lins formulas."""
    x1, x2, x3, x4, x5, x6 = X
    A, B, C, D, E, F = x6, x3, x1, x5, x4, x2
    thetas = kl_theta(k, A, D, E) * kl_theta(k, B, C, E) * kl_theta(k, A, B, F) * kl_theta(k, C, D, F)
    if thetas == 0.0:
        return 0.0
    return kl_tet(k, A, B, E, C, D, F) ** 2 / thetas
