"""Modular tensor category data: fusion ring, dimensions and the S matrix.

Labels are dense integers ``0..rank-1`` with ``0`` the unit object. Fusion
multiplicities are stored as ``N[x, y, z] = N_{x,y}^z`` (an integer array) and
``S[x, y]`` is the entry :math:`S_x^y`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import config
from .report import VerificationReport


class ShapeMismatchError(ValueError):
    pass


class UnsupportedParameterError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MtcData:
    name: str
    labels: tuple[str, ...]
    N: np.ndarray
    dual: tuple[int, ...]
    S: np.ndarray
    description: str = ""

    def __post_init__(self) -> None:
        N = np.asarray(self.N, dtype=np.int64)
        S = np.asarray(self.S, dtype=np.complex128)
        N.setflags(write=False)
        S.setflags(write=False)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "dual", tuple(int(x) for x in self.dual))

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def d(self) -> np.ndarray:
        """Quantum dimensions ``d(X) = S_X^1 / S_1^1``."""
        return (self.S[:, 0] / self.S[0, 0]).real

    @property
    def mu(self) -> float:
        return float(np.sum(self.d**2))

    @property
    def delta(self) -> float:
        return math.sqrt(self.mu)

    @property
    def dual_perm(self) -> np.ndarray:
        return np.asarray(self.dual, dtype=np.int64)

    def index(self, label: int | str) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= int(label) < self.rank:
                raise IndexError(f"label index {label} out of range for {self.name}")
            return int(label)
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown label {label!r} in {self.name}") from None

    def indices(self, word: Iterable[int | str]) -> tuple[int, ...]:
        return tuple(self.index(x) for x in word)

    def fusion_matrix(self, x: int | str) -> np.ndarray:
        """``N_x`` with rows indexed by ``y`` and columns by ``z``."""
        return self.N[self.index(x)]

    def is_multiplicity_free(self) -> bool:
        return bool(np.all(self.N <= 1))

    def check_shapes(self) -> None:
        r = self.rank
        if self.N.shape != (r, r, r):
            raise ShapeMismatchError(f"N has shape {self.N.shape}, expected {(r, r, r)}")
        if self.S.shape != (r, r):
            raise ShapeMismatchError(f"S has shape {self.S.shape}, expected {(r, r)}")
        if len(self.dual) != r:
            raise ShapeMismatchError(f"dual map has {len(self.dual)} entries, expected {r}")
        if any(not 0 <= x < r for x in self.dual):
            raise ShapeMismatchError("dual map points outside the label set")

    def __repr__(self) -> str:
        return f"MtcData({self.name!r}, labels={self.labels})"


def fusion_dim_hom_unit(m: MtcData, word: Sequence[int | str]) -> int:
    """``dim hom(1, X_1 ⊗ ... ⊗ X_k)`` by iterated integer fusion."""
    v = [0] * m.rank
    v[0] = 1
    N = m.N.tolist()
    for x in m.indices(word):
        nv = [0] * m.rank
        for w, c in enumerate(v):
            if c:
                row = N[w][x]
                for z in range(m.rank):
                    if row[z]:
                        nv[z] += c * row[z]
        v = nv
    return v[0]


def verlinde_tensor(m: MtcData) -> np.ndarray:
    """``sum_W S_X^W S_Y^W conj(S_Z^W) / S_1^W`` for all ``(X, Y, Z)``."""
    S = m.S
    return np.einsum("xw,yw,zw->xyz", S, S, S.conj() / S[0][None, :], optimize=True)


def verify_modular_data(m: MtcData, tol: float = config.DEFAULT_TOL) -> VerificationReport:
    m.check_shapes()
    rep = VerificationReport("modular data", m.name, tol=tol)
    r = m.rank
    N, S = m.N, m.S
    eye = np.eye(r, dtype=np.int64)
    dual = m.dual_perm

    rep.add("unit-is-index-0", bool(np.array_equal(N[0], eye) and np.array_equal(N[:, 0, :], eye)))
    dual_ok = all(N[x, y, 0] == (1 if y == dual[x] else 0) for x in range(r) for y in range(r))
    rep.add("dual-axiom", dual_ok)
    rep.add("dual-involution", bool(np.array_equal(dual[dual], np.arange(r))))
    rep.add("nonnegative-integers", bool(np.all(N >= 0)))
    left = np.einsum("xyw,wzv->xyzv", N, N)
    right = np.einsum("yzw,xwv->xyzv", N, N)
    rep.add("associativity", bool(np.array_equal(left, right)),
            float(np.max(np.abs(left - right))) if left.size else 0.0)
    rep.add("commutativity", bool(np.array_equal(N, N.transpose(1, 0, 2))))

    err = float(np.max(np.abs(S @ S.conj().T - np.eye(r))))
    rep.add("S-unitary", err <= tol, err)
    err = float(np.max(np.abs(S - S.T)))
    rep.add("S-symmetric", err <= tol, err)
    C = np.zeros((r, r))
    C[np.arange(r), dual] = 1.0
    err = float(np.max(np.abs(S @ S - C)))
    rep.add("S^2-charge-conjugation", err <= tol, err)
    S4 = np.linalg.matrix_power(S, 4)
    err = float(np.max(np.abs(S4 - np.eye(r))))
    rep.add("S^4-identity", err <= tol, err)

    col0 = S[:, 0]
    pos = bool(np.all(np.abs(col0.imag) <= tol) and np.all(col0.real > tol))
    rep.add("S-unit-column-positive", pos, float(np.max(np.abs(col0.imag))))
    if not pos:
        return rep

    d = m.d
    delta = 1.0 / col0[0].real
    mu = float(np.sum(d**2))
    rep.add("mu-is-sum-of-squares", abs(delta**2 - mu) <= tol * max(1.0, mu), abs(delta**2 - mu))
    err = float(np.max(np.abs(d - delta * col0.real)))
    rep.add("d-equals-delta-S", err <= tol, err)
    rep.add("d-unit", abs(d[0] - 1.0) <= tol, abs(d[0] - 1.0))
    rep.add("d-at-least-one", bool(np.all(d >= 1.0 - tol)), float(max(0.0, np.max(1.0 - d))))
    pf = max((float(np.max(np.abs(N[x].astype(float) @ d - d[x] * d))) for x in range(r)), default=0.0)
    rep.add("d-perron-frobenius", pf <= tol * max(1.0, float(np.max(d))), pf)

    V = verlinde_tensor(m)
    err = float(np.max(np.abs(V - N)))
    rounded = np.rint(V.real).astype(np.int64)
    frac = float(np.max(np.abs(V - rounded)))
    rep.add("verlinde-recovery", err <= tol, err)
    rep.add("verlinde-integrality", frac <= tol and np.array_equal(rounded, N), frac)
    return rep


def verlinde_diagonalization(m: MtcData) -> float:
    """Max deviation of ``S N_X S^{-1}`` from ``diag(S_X^Y / S_Y^1)``.

    ``N_X`` acts on 1-quons as ``|W> -> sum_Z N_{X,W}^Z |Z>`` and ``S`` as
    ``|X> -> sum_Y S_X^Y |Y>``; both are taken as column-vector operators.
    """
    Sop = m.S.T
    Sinv = np.linalg.inv(Sop)
    err = 0.0
    for x in range(m.rank):
        M = m.N[x].T.astype(float)
        D = Sop @ M @ Sinv
        expected = np.diag(m.S[x, :] / m.S[:, 0])
        err = max(err, float(np.max(np.abs(D - expected))))
    return err


# ---------------------------------------------------------------------------
# built-in categories

def _from_S(name: str, labels: Sequence[str], N: np.ndarray, dual: Sequence[int], S: np.ndarray,
            description: str = "") -> MtcData:
    m = MtcData(name, tuple(labels), N, tuple(dual), S, description)
    m.check_shapes()
    return m


def fibonacci() -> MtcData:
    phi = (1 + math.sqrt(5)) / 2
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = 1
    N[1, 1, 0] = N[1, 1, 1] = 1
    S = np.array([[1, phi], [phi, -1]]) / math.sqrt(2 + phi)
    return _from_S("fibonacci", ("1", "tau"), N, (0, 1), S)


def ising() -> MtcData:
    N = np.zeros((3, 3, 3), dtype=np.int64)
    one, sig, psi = 0, 1, 2
    for x in range(3):
        N[one, x, x] = N[x, one, x] = 1
    N[sig, sig, one] = N[sig, sig, psi] = 1
    N[sig, psi, sig] = N[psi, sig, sig] = 1
    N[psi, psi, one] = 1
    r2 = math.sqrt(2)
    S = np.array([[1, r2, 1], [r2, 0, -r2], [1, -r2, 1]]) / 2
    return _from_S("ising", ("1", "sigma", "psi"), N, (0, 1, 2), S)


def pointed_z(n: int) -> MtcData:
    """Pointed modular category on the cyclic group Z_n.

    The quadratic form is ``q(j) = exp(pi i j^2 / n)`` for even ``n`` and
    ``q(j) = exp(2 pi i j^2 (n+1)/2 / n)`` for odd ``n``; both have associated
    bicharacter ``b(a, b) = exp(2 pi i a b / n)``, which is nondegenerate, and
    ``S_a^b = exp(-2 pi i a b / n) / sqrt(n)``.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise UnsupportedParameterError(f"pointed_z needs an integer n >= 2, got {n!r}")
    n = int(n)
    N = np.zeros((n, n, n), dtype=np.int64)
    for a, b in itertools.product(range(n), repeat=2):
        N[a, b, (a + b) % n] = 1
    j = np.arange(n)
    S = np.exp(-2j * np.pi * np.outer(j, j) / n) / math.sqrt(n)
    labels = [str(a) for a in range(n)]
    name = "semion" if n == 2 else f"z{n}"
    return _from_S(name, labels, N, [(-a) % n for a in range(n)], S, description=f"pointed_z({n})")


def twist_pointed(n: int, j: int) -> complex:
    """Value of the quadratic form used by :func:`pointed_z`."""
    if n % 2 == 0:
        return complex(np.exp(1j * np.pi * j * j / n))
    return complex(np.exp(2j * np.pi * j * j * ((n + 1) // 2) / n))


def su2_fusion(k: int, a: int, b: int) -> range:
    """Spin-doubled fusion channels of ``a ⊗ b`` in SU(2)_k."""
    return range(abs(a - b), min(a + b, 2 * k - a - b) + 1, 2)


def su2_level(k: int) -> MtcData:
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= 16:
        raise UnsupportedParameterError(f"su2_level supports integer 1 <= k <= 16, got {k!r}")
    k = int(k)
    r = k + 1
    N = np.zeros((r, r, r), dtype=np.int64)
    for a, b in itertools.product(range(r), repeat=2):
        for c in su2_fusion(k, a, b):
            N[a, b, c] = 1
    idx = np.arange(1, r + 1)
    S = math.sqrt(2 / (k + 2)) * np.sin(np.pi * np.outer(idx, idx) / (k + 2))
    return _from_S(f"su2_{k}", [str(a) for a in range(r)], N, list(range(r)), S,
                   description=f"su2_level({k})")


BUILTINS = {
    "fibonacci": fibonacci,
    "ising": ising,
    "semion": lambda: pointed_z(2),
}


def builtin(name: str) -> MtcData:
    """Resolve ``fibonacci``, ``ising``, ``semion``, ``zN`` / ``pointed_z:N`` and
    ``su2_K`` / ``su2:K`` to a category."""
    key = name.strip().lower()
    if key in BUILTINS:
        return BUILTINS[key]()
    for prefix, factory in (("pointed_z:", pointed_z), ("z", pointed_z), ("su2_", su2_level), ("su2:", su2_level)):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            return factory(int(key[len(prefix):]))
    raise KeyError(f"unknown built-in category {name!r}")
