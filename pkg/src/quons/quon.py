"""The 1-quon algebra L^2(Irr) in quantum coordinates.

A quon of order ``n`` stores the coefficients of ``|X_1 ... X_n>`` as an
``n``-dimensional complex array. On 1-quons there are two products: the
pointwise ``multiply`` (``|X>|Y> = delta_{X,Y} d(X)^{-1} |X>``) and the fusion
``convolve`` (``|X>*|Y> = delta^{-1} sum_W N_{X,Y}^W |W>``); the string Fourier
transform ``sft`` acts on each slot by the S matrix and exchanges the two.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import config
from .mtc import MtcData
from .report import VerificationReport


class CategoryMismatchError(ValueError):
    pass


class QuonOrderError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Quon:
    mtc: MtcData
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs, dtype=np.complex128)
        r = self.mtc.rank
        if any(s != r for s in c.shape):
            raise ValueError(f"coefficient shape {c.shape} does not match rank {r}")
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.ndim

    @classmethod
    def zero(cls, m: MtcData, n: int = 1) -> "Quon":
        return cls(m, np.zeros((m.rank,) * n, dtype=np.complex128))

    @classmethod
    def basis(cls, m: MtcData, *labels: int | str) -> "Quon":
        c = np.zeros((m.rank,) * len(labels), dtype=np.complex128)
        c[m.indices(labels)] = 1.0
        return cls(m, c)

    @classmethod
    def random(cls, m: MtcData, n: int = 1, rng: np.random.Generator | None = None) -> "Quon":
        rng = rng if rng is not None else np.random.default_rng(config.DEFAULT_SEED)
        shape = (m.rank,) * n
        return cls(m, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))

    def __getitem__(self, labels) -> complex:
        if not isinstance(labels, tuple):
            labels = (labels,)
        return complex(self.coeffs[self.mtc.indices(labels)])

    def _same(self, other: "Quon") -> None:
        if other.mtc is not self.mtc and other.mtc.name != self.mtc.name:
            raise CategoryMismatchError(f"{self.mtc.name} vs {other.mtc.name}")
        if other.order != self.order:
            raise QuonOrderError(f"order {self.order} vs {other.order}")

    def __add__(self, other: "Quon") -> "Quon":
        self._same(other)
        return Quon(self.mtc, self.coeffs + other.coeffs)

    def __sub__(self, other: "Quon") -> "Quon":
        self._same(other)
        return Quon(self.mtc, self.coeffs - other.coeffs)

    def __mul__(self, scalar: complex) -> "Quon":
        return Quon(self.mtc, self.coeffs * scalar)

    __rmul__ = __mul__

    def inner(self, other: "Quon") -> complex:
        self._same(other)
        return complex(np.vdot(self.coeffs, other.coeffs))

    def distance(self, other: "Quon") -> float:
        """Sup-norm distance of coefficient arrays."""
        self._same(other)
        diff = np.abs(self.coeffs - other.coeffs)
        return float(diff.max()) if diff.size else 0.0

    def support(self, tol: float = config.SUPPORT_TOL) -> list[tuple[int, ...]]:
        return [tuple(int(i) for i in ix) for ix in zip(*np.nonzero(np.abs(self.coeffs) > tol))]

    def __repr__(self) -> str:
        terms = []
        for ix in self.support(1e-12):
            c = self.coeffs[ix]
            name = "".join(self.mtc.labels[i] if len(self.mtc.labels[i]) == 1 else f"({self.mtc.labels[i]})" for i in ix)
            terms.append(f"{c:.6g}|{name}>")
        return f"Quon[{self.mtc.name}, n={self.order}](" + " + ".join(terms) + ")"


def _order_one(*qs: Quon) -> None:
    for q in qs:
        if q.order != 1:
            raise QuonOrderError(f"expected a 1-quon, got order {q.order}")
    for q in qs[1:]:
        qs[0]._same(q)


def multiply(m: MtcData, x: Quon, y: Quon) -> Quon:
    _order_one(x, y)
    _check_category(m, x)
    return Quon(m, x.coeffs * y.coeffs / m.d)


def convolve(m: MtcData, x: Quon, y: Quon) -> Quon:
    _order_one(x, y)
    _check_category(m, x)
    out = np.einsum("x,y,xyw->w", x.coeffs, y.coeffs, m.N.astype(float)) / m.delta
    return Quon(m, out)


def _check_category(m: MtcData, q: Quon) -> None:
    if q.mtc is not m and q.mtc.name != m.name:
        raise CategoryMismatchError(f"quon over {q.mtc.name} used with {m.name}")


def apply_slotwise(matrix: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Apply ``c'_{...Y...} = sum_X matrix[X, Y] c_{...X...}`` on every slot."""
    out = coeffs
    for axis in range(coeffs.ndim):
        out = np.moveaxis(np.tensordot(out, matrix, axes=([axis], [0])), -1, axis)
    return out


def sft(m: MtcData, x: Quon) -> Quon:
    """String Fourier transform: ``|X> -> sum_Y S_X^Y |Y>`` on every slot."""
    _check_category(m, x)
    return Quon(m, apply_slotwise(m.S, x.coeffs))


def sft_inverse(m: MtcData, x: Quon) -> Quon:
    _check_category(m, x)
    return Quon(m, apply_slotwise(m.S.conj().T, x.coeffs))


def check_fourier_duality(m: MtcData, trials: int = 100, tol: float = config.DEFAULT_TOL,
                          seed: int | None = None) -> VerificationReport:
    """``sft(x y) == sft(x) * sft(y)`` on all basis pairs and on seeded random pairs."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    seed = config.DEFAULT_SEED if seed is None else seed
    rep = VerificationReport("fourier duality", m.name, tol=tol, seed=seed, parameters={"trials": trials})

    def residual(x: Quon, y: Quon) -> float:
        return sft(m, multiply(m, x, y)).distance(convolve(m, sft(m, x), sft(m, y)))

    err = max(residual(Quon.basis(m, a), Quon.basis(m, b))
              for a, b in itertools.product(range(m.rank), repeat=2))
    rep.add("basis-sweep", err <= tol, err, f"{m.rank**2} pairs")
    rng = np.random.default_rng(seed)
    err = max(residual(Quon.random(m, 1, rng), Quon.random(m, 1, rng)) for _ in range(trials))
    rep.add("random-pairs", err <= tol, err, f"{trials} pairs")
    return rep


# ---------------------------------------------------------------------------
# supports, biprojections, Mueger centers

def projection(m: MtcData, K: Iterable[int | str]) -> Quon:
    """``P_K = sum_{X in K} 1_{X_D}``, i.e. coefficient ``d(X)`` on each ``X in K``."""
    c = np.zeros(m.rank, dtype=np.complex128)
    for x in m.indices(K):
        c[x] = m.d[x]
    return Quon(m, c)


def supp(m: MtcData, x: Quon, tol: float = config.SUPPORT_TOL) -> float:
    """Trace of the support projection: sum of ``d(X)^2`` over the support."""
    _order_one(x)
    mask = np.abs(x.coeffs) > tol
    return float(np.sum(m.d[mask] ** 2))


def is_fusion_closed(m: MtcData, K: Iterable[int]) -> bool:
    ks = set(K)
    return all(z in ks for x in ks for y in ks for z in np.nonzero(m.N[x, y])[0])


def enumerate_fusion_subsets(m: MtcData, max_rank: int = 20) -> list[frozenset[int]]:
    """All unit-containing subsets of Irr closed under fusion, smallest first."""
    if m.rank > max_rank:
        raise ValueError(f"exhaustive subset search limited to rank <= {max_rank}, got {m.rank}")
    rest = range(1, m.rank)
    found = []
    for size in range(m.rank):
        for extra in itertools.combinations(rest, size):
            K = frozenset((0,) + extra)
            if is_fusion_closed(m, K):
                if any(m.dual[x] not in K for x in K):
                    raise AssertionError(f"fusion-closed subset {sorted(K)} not closed under duals")
                found.append(K)
    return found


def mueger_center(m: MtcData, K: Iterable[int | str], tol: float = config.SUPPORT_TOL) -> frozenset[int]:
    """``{X : S_X^Y / S_X^1 == S_1^Y / S_1^1 for all Y in K}``."""
    ks = m.indices(K)
    S = m.S
    out = []
    for x in range(m.rank):
        if all(abs(S[x, y] / S[x, 0] - S[0, y] / S[0, 0]) <= tol for y in ks):
            out.append(x)
    return frozenset(out)


def _names(m: MtcData, K: Iterable[int]) -> str:
    return "{" + ",".join(m.labels[i] for i in sorted(K)) + "}"


def check_biprojection_duality(m: MtcData, tol: float = config.SUPPORT_TOL,
                               supp_tol: float = 1e-6, residual_tol: float = 1e-8) -> VerificationReport:
    rep = VerificationReport("biprojection duality", m.name, tol=tol)
    mu = m.mu
    for K in enumerate_fusion_subsets(m):
        tag = _names(m, K)
        Khat = mueger_center(m, K, tol)
        PK = projection(m, K)
        F = sft(m, PK)
        target = projection(m, Khat)
        scale = F.coeffs[0].real
        resid = F.distance(target * scale)
        ok = resid <= residual_tol and scale >= 0 and float(np.max(np.abs(F.coeffs.imag))) <= residual_tol
        rep.add(f"sft-proportional {tag}", ok, resid, f"sft(P_K) = {scale:.6g} P_{_names(m, Khat)}",
                K=sorted(K), Khat=sorted(Khat), scale=scale)
        neg = float(max(0.0, -np.min(F.coeffs.real)))
        rep.add(f"sft-positive {tag}", neg <= 1e-9, neg)
        prod = supp(m, PK, tol) * supp(m, target, tol)
        rep.add(f"support-product {tag}", abs(prod - mu) <= supp_tol, abs(prod - mu),
                f"{supp(m, PK, tol):.6g} * {supp(m, target, tol):.6g} vs delta^2 = {mu:.6g}")
        rep.add(f"double-center {tag}", mueger_center(m, Khat, tol) == K)
        rep.add(f"center-fusion-closed {tag}", is_fusion_closed(m, Khat))
        err = sft(m, F).distance(PK)
        rep.add(f"sft-squared {tag}", err <= residual_tol, err)
    return rep


def gannon_table(m: MtcData) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(|S_X^Y| / S_X^1, S_1^Y / S_1^1)`` as a matrix and a row vector."""
    S = m.S
    lhs = np.abs(S) / S[:, 0].real[:, None]
    rhs = (S[0, :] / S[0, 0]).real
    return lhs, rhs


def check_gannon_inequality(m: MtcData, tol: float = config.SUPPORT_TOL) -> VerificationReport:
    """Entrywise ``|S_X^Y / S_X^1| <= S_1^Y / S_1^1``.

    Alongside the inequality the report records two pair sets: ``equality`` where
    the moduli agree, and ``centralizing`` where the complex ratio itself equals
    the bound. The second set is the one that defines Mueger centers, and it is
    exactly the set where the real part saturates the bound.
    """
    rep = VerificationReport("gannon inequality", m.name, tol=tol)
    lhs, rhs = gannon_table(m)
    gap = lhs - rhs[None, :]
    worst = float(max(0.0, gap.max()))
    rep.add("inequality", worst <= tol, worst, f"{m.rank**2} pairs")
    equality = {(x, y) for x in range(m.rank) for y in range(m.rank) if abs(gap[x, y]) <= tol}
    ratio = m.S / m.S[:, 0][:, None]
    centralizing = {(x, y) for x in range(m.rank) for y in range(m.rank)
                    if abs(ratio[x, y] - rhs[y]) <= tol}
    saturating = {(x, y) for x in range(m.rank) for y in range(m.rank)
                  if ratio[x, y].real >= rhs[y] - tol}
    rep.add("unit-column-equality", all((x, 0) in equality for x in range(m.rank)))
    rep.add("centralizing-within-equality", centralizing <= equality)
    rep.add("centralizing-equals-real-saturation", centralizing == saturating)
    mismatch = 0
    for K in enumerate_fusion_subsets(m):
        from_pairs = frozenset(x for x in range(m.rank) if all((x, y) in centralizing for y in K))
        if from_pairs != mueger_center(m, K, tol):
            mismatch += 1
    rep.add("centralizing-matches-center", mismatch == 0, float(mismatch))
    rep.checks[0].data.update(equality=sorted(equality), centralizing=sorted(centralizing))
    return rep


def uncertainty_product(m: MtcData, x: Quon, tol: float = config.SUPPORT_TOL) -> float:
    """``Supp(x) * Supp(sft(x))``; logged for diagnostics only."""
    return supp(m, x, tol) * supp(m, sft(m, x), tol)
