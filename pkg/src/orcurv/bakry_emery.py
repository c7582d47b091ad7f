"""Discrete Bakry-Emery calculus and curvature-dimension inequalities.

All operators are local: ``Delta f(x)``, ``Gamma(f, f)(x)`` and
``Gamma_2(f, f)(x)`` only see f on the closed 2-ball around x, so functions
are represented by their values there (:class:`FunctionOnBall`).

A CD(m, K) inequality at x is the statement that the quadratic form
``Q_m(f) - K * G(f)`` is positive semidefinite, where
``Q_m(f) = Gamma_2(f, f)(x) - (Delta f(x))^2 / m`` and ``G(f) = Gamma(f, f)(x)``.
Both forms vanish on constants, so the x coordinate is pinned to 0; the
outer ring (distance exactly 2) only enters through a diagonal block of the
H-form and is removed by an exact Schur complement.  What remains is a pair
of forms on the neighbors of x with G diagonal and positive definite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np

from .curvature import min_triangles_for_positive, ricci
from .errors import DomainError, HypothesisError, IsolatedVertexError, NumericalError, WeightedGraphError
from .graph import Graph, ball, common_neighbors, max_neighbor_degree, max_weighted_neighbor_ratio, sphere
from .ldl import ldl_psd, quadratic_form

INF = math.inf
_ZERO = Fraction(0)
_HALF = Fraction(1, 2)


def parse_dimension(m) -> Fraction | float:
    """Dimension parameter in ``[1, inf]``; accepts numbers, ``p/q`` strings and ``"inf"``."""
    if isinstance(m, str) and m.strip().lower() in ("inf", "infinity", "∞"):
        return INF
    if isinstance(m, float) and math.isinf(m):
        if m < 0:
            raise ValueError("dimension must be >= 1")
        return INF
    q = Fraction(m)
    if q < 1:
        raise ValueError(f"dimension must be >= 1, got {m}")
    return q


def _inv_dim(m) -> Fraction:
    return _ZERO if m == INF else 1 / m


@dataclass(frozen=True)
class FunctionOnBall:
    center: int
    values: Mapping[int, Fraction]

    @classmethod
    def from_function(cls, g: Graph, x: int, fn: Callable[[int], object]) -> "FunctionOnBall":
        return cls(x, {v: Fraction(fn(v)) for v in sorted(ball(g, x, 2))})

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]


def _check(g: Graph, f: FunctionOnBall, x: int) -> None:
    if f.center != x:
        raise DomainError(f"function is centred at {f.center}, evaluated at {x}")
    if set(f.values) != ball(g, x, 2):
        raise DomainError(f"function domain is not the 2-ball of {g.labels[x]!r}")
    if not g.adjacency[x]:
        raise IsolatedVertexError(f"vertex {g.labels[x]!r} is isolated")


def _m(g: Graph, u: int):
    du = g.degree(u)
    return [(v, w / du) for v, w in g.adjacency[u]]


def laplacian(g: Graph, f: FunctionOnBall, x: int) -> Fraction:
    _check(g, f, x)
    return sum((p * f[y] for y, p in _m(g, x)), _ZERO) - f[x]


def gamma(g: Graph, f: FunctionOnBall, h: FunctionOnBall, x: int) -> Fraction:
    _check(g, f, x)
    _check(g, h, x)
    return _HALF * sum((p * (f[y] - f[x]) * (h[y] - h[x]) for y, p in _m(g, x)), _ZERO)


def h_form(g: Graph, f: FunctionOnBall, x: int) -> Fraction:
    """Quarter-weighted sum of squared second differences over two-step walks from x."""
    _check(g, f, x)
    total = _ZERO
    fx = f[x]
    for y, p in _m(g, x):
        inner = sum((q * (fx - 2 * f[y] + f[z]) ** 2 for z, q in _m(g, y)), _ZERO)
        total += p * inner
    return total / 4


def gamma2(g: Graph, f: FunctionOnBall, x: int) -> Fraction:
    return h_form(g, f, x) - gamma(g, f, f, x) + _HALF * laplacian(g, f, x) ** 2


def gamma2_iterated(g: Graph, f: FunctionOnBall, x: int) -> Fraction:
    """Gamma_2 from its iterated definition, using nothing but the Laplacian.

    ``Gamma(a, b) = (Delta(ab) - a Delta b - b Delta a) / 2`` and
    ``Gamma_2(f, f) = (Delta Gamma(f, f) - 2 Gamma(f, Delta f)) / 2``.
    Serves as an independent cross-check of :func:`gamma2`.
    """
    _check(g, f, x)
    vals = f.values

    def lap(fn: Callable[[int], Fraction], v: int) -> Fraction:
        return sum((p * fn(u) for u, p in _m(g, v)), _ZERO) - fn(v)

    def F(v):
        return vals[v]

    def lap_f(v):
        return lap(F, v)

    def carre(a, b, v):
        return _HALF * (lap(lambda u: a(u) * b(u), v) - a(v) * lap(b, v) - b(v) * lap(a, v))

    def gamma_ff(v):
        return carre(F, F, v)

    return _HALF * (lap(gamma_ff, x) - 2 * carre(F, lap_f, x))


@dataclass(frozen=True)
class CDQuadraticForms:
    """Exact matrices of ``Q_m`` and ``G`` over the 2-ball coordinates ``coords``.

    ``coords`` lists the center first, then its neighbors, then the outer ring.
    """

    center: int
    m: Fraction | float
    coords: tuple[int, ...]
    Q: list[list[Fraction]]
    G: list[list[Fraction]]
    H: list[list[Fraction]]
    lap: list[Fraction]
    n_neighbors: int

    def evaluate(self, f: FunctionOnBall) -> tuple[Fraction, Fraction]:
        v = [f[c] for c in self.coords]
        return quadratic_form(self.Q, v), quadratic_form(self.G, v)


def cd_forms(g: Graph, x: int, m) -> CDQuadraticForms:
    g.check_vertex(x)
    if not g.adjacency[x]:
        raise IsolatedVertexError(f"vertex {g.labels[x]!r} is isolated")
    m = parse_dimension(m)
    nbrs = g.neighbors(x)
    coords = (x, *nbrs, *sphere(g, x, 2))
    idx = {v: k for k, v in enumerate(coords)}
    n = len(coords)
    H = [[_ZERO] * n for _ in range(n)]
    G = [[_ZERO] * n for _ in range(n)]
    lapv = [_ZERO] * n
    lapv[0] = Fraction(-1)
    for y, p in _m(g, x):
        iy = idx[y]
        lapv[iy] = p
        w = p / 2
        G[0][0] += w
        G[iy][iy] += w
        G[0][iy] -= w
        G[iy][0] -= w
        # expand sum_z w_yz (f(x) - 2 f(y) + f(z))^2 with raw edge weights, then scale once by p / (4 d_y)
        acc: dict[tuple[int, int], Fraction | int] = {}
        for z, wyz in g.adjacency[y]:
            wyz = int(wyz) if wyz.denominator == 1 else wyz
            vec = {0: 1, iy: -2}
            iz = idx[z]
            vec[iz] = vec.get(iz, 0) + 1
            for a, va in vec.items():
                if va:
                    for b, vb in vec.items():
                        if vb:
                            acc[a, b] = acc.get((a, b), 0) + wyz * va * vb
        scale = p / (4 * g.degree(y))
        for (a, b), v in acc.items():
            H[a][b] += scale * v
    lam = _HALF - _inv_dim(m)
    Q = [row[:] for row in H]
    for a in range(len(nbrs) + 1):
        for b in range(len(nbrs) + 1):
            Q[a][b] += lam * lapv[a] * lapv[b] - G[a][b]
    return CDQuadraticForms(x, m, coords, Q, G, H, lapv, len(nbrs))


@dataclass(frozen=True)
class _Reduced:
    forms: CDQuadraticForms
    Qr: list[list[Fraction]]      # Q on neighbors after pinning f(x)=0 and minimising the ring out
    g_diag: list[Fraction]        # G on neighbors is diagonal
    ring_lift: list[list[Fraction]]  # ring values = ring_lift @ neighbor values


def _reduce(forms: CDQuadraticForms) -> _Reduced:
    k = forms.n_neighbors
    N = range(1, k + 1)
    R = range(k + 1, len(forms.coords))
    H, Q, G = forms.H, forms.Q, forms.G
    # H restricted to the ring is diagonal: each two-step term touches one ring vertex
    Qr = [[Q[a][b] for b in N] for a in N]
    ring_lift = []
    for r in R:
        h = H[r][r]
        col = [(a - 1, H[a][r]) for a in N if H[a][r]]
        for i, hi in col:
            row = Qr[i]
            for j, hj in col:
                row[j] -= hi * hj / h
        lift = [_ZERO] * k
        for i, hi in col:
            lift[i] = -hi / h
        ring_lift.append(lift)
    g_diag = [G[a][a] for a in N]
    return _Reduced(forms, Qr, g_diag, ring_lift)


def _lift(red: _Reduced, u: list[Fraction]) -> FunctionOnBall:
    coords = red.forms.coords
    k = red.forms.n_neighbors
    vals = {coords[0]: _ZERO}
    for a in range(k):
        vals[coords[1 + a]] = u[a]
    for r, row in enumerate(red.ring_lift):
        vals[coords[1 + k + r]] = sum((c * ua for c, ua in zip(row, u)), _ZERO)
    return FunctionOnBall(red.forms.center, vals)


@dataclass(frozen=True)
class CDResult:
    center: int
    m: Fraction | float
    mode: str
    K: Fraction | None = None
    verdict: bool | None = None
    k_opt: float | None = None
    k_error: float | None = None
    witness: FunctionOnBall | None = None


def _verify_reduced(red: _Reduced, K: Fraction) -> tuple[bool, FunctionOnBall | None]:
    M = [[q - (K * red.g_diag[a] if a == b else 0) for b, q in enumerate(row)]
         for a, row in enumerate(red.Qr)]
    ok, u = ldl_psd(M)
    return ok, (None if ok else _lift(red, u))


def _verify_with(forms: CDQuadraticForms, red: _Reduced, K) -> CDResult:
    K = Fraction(K)
    ok, witness = _verify_reduced(red, K)
    if witness is not None:
        q, gg = forms.evaluate(witness)
        if not q - K * gg < 0:
            raise NumericalError("lifted witness does not violate the inequality")
    return CDResult(forms.center, forms.m, "verify", K=K, verdict=ok, witness=witness)


def cd_verify(g: Graph, x: int, m, K) -> CDResult:
    """Exact verdict on whether CD(m, K) holds at x; a violating function is returned otherwise."""
    forms = cd_forms(g, x, m)
    return _verify_with(forms, _reduce(forms), K)


def cd_verify_many(g: Graph, x: int, m, Ks) -> list[CDResult]:
    """:func:`cd_verify` for several K at one vertex, assembling and reducing the forms once."""
    forms = cd_forms(g, x, m)
    red = _reduce(forms)
    return [_verify_with(forms, red, K) for K in Ks]


def cd_optimal_K(g: Graph, x: int, m, tol: float = 1e-9) -> CDResult:
    """Largest K with CD(m, K) at x, to within ``tol``.

    The reduced generalized eigenproblem ``Qr u = K G u`` is solved in
    floating point; the result is then confirmed exactly by verifying
    CD(m, K_opt - tol).
    """
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    forms = cd_forms(g, x, m)
    red = _reduce(forms)
    scale = np.array([1.0 / math.sqrt(float(gd)) for gd in red.g_diag])
    C = np.array([[float(q) for q in row] for row in red.Qr]) * scale[:, None] * scale[None, :]
    C = (C + C.T) / 2
    evals, evecs = np.linalg.eigh(C)
    lam = float(evals[0])
    u = evecs[:, 0]
    err = float(np.linalg.norm(C @ u - lam * u))
    if err > tol:
        raise NumericalError(f"eigenpair residual {err:.3e} exceeds tolerance {tol:.3e}")
    v = u * scale
    v = v / np.max(np.abs(v))
    witness = _lift(red, [Fraction(float(c)) for c in v])
    ok, _ = _verify_reduced(red, Fraction(lam) - Fraction(tol))
    if not ok:
        raise NumericalError(f"CD({forms.m}, {lam} - tol) failed exact verification")
    q, gg = forms.evaluate(witness)
    if abs(float(q / gg) - lam) > tol:
        raise NumericalError("witness quotient does not match the computed curvature")
    return CDResult(x, forms.m, "optimize", k_opt=lam, k_error=err, witness=witness)


def _require_unit_weights(g: Graph) -> None:
    if not g.has_unit_weights:
        raise WeightedGraphError("this bound is stated for unweighted graphs; use cd_bound_weighted_triangles")


def cd_bound_max_degree(g: Graph, x: int) -> Fraction:
    """``2 / D_w(x) - 1`` with ``D_w(x) = max_{y~x} d_y / w_xy``; CD(2, .) curvature."""
    return 2 / max_weighted_neighbor_ratio(g, x) - 1


def triangle_rate(g: Graph, x: int) -> Fraction:
    """``t(x) = min_{y~x} (4/d_y + #(x,y)/D(x))``."""
    _require_unit_weights(g)
    D = max_neighbor_degree(g, x)
    return min(4 / g.degree(y) + len(common_neighbors(g, x, y)) / D for y in g.neighbors(x))


def cd_bound_triangles(g: Graph, x: int) -> Fraction:
    return triangle_rate(g, x) / 2 - 1


def cd_bound_positive_kappa(g: Graph, x: int, k=None, kappas: Mapping[int, Fraction] | None = None) -> Fraction:
    """CD(2, .) curvature at x under positive Ollivier curvature on every edge at x.

    With ``k=None`` the hypothesis is ``kappa(x, y) > 0`` and the bound is
    ``5/(2 D(x)) - 1``; otherwise it is ``kappa(x, y) >= k > 0`` and the
    bound uses the forced triangle counts ``ceil(k * max(d_x, d_y))``.
    ``kappas`` maps neighbors to known curvatures; missing ones are computed.
    """
    _require_unit_weights(g)
    nbrs = g.neighbors(x)
    if not nbrs:
        raise IsolatedVertexError(f"vertex {g.labels[x]!r} is isolated")
    kappas = dict(kappas or {})
    for y in nbrs:
        if y not in kappas:
            kappas[y] = ricci(g, x, y)
    D = max_neighbor_degree(g, x)
    if k is None:
        bad = [y for y in nbrs if not kappas[y] > 0]
        if bad:
            raise HypothesisError(f"curvature is not positive on edge {g.labels[x]!r}-{g.labels[bad[0]]!r}")
        return Fraction(5) / (2 * D) - 1
    k = Fraction(k)
    if k <= 0:
        raise HypothesisError("k must be positive")
    bad = [y for y in nbrs if kappas[y] < k]
    if bad:
        raise HypothesisError(f"curvature {kappas[bad[0]]} < {k} on edge {g.labels[x]!r}-{g.labels[bad[0]]!r}")
    t = min(4 / g.degree(y) + min_triangles_for_positive(g, x, y, k) / D for y in nbrs)
    return t / 2 - 1


def rough_positive_kappa_bound(g: Graph, x: int, k) -> Fraction:
    """``2/D(x) + k d_x / (2 D(x)) - 1``, a weaker form of the k-curvature bound."""
    _require_unit_weights(g)
    D = max_neighbor_degree(g, x)
    return 2 / D + Fraction(k) * g.degree(x) / (2 * D) - 1


def weighted_triangle_rate(g: Graph, x: int) -> Fraction:
    """Weighted analogue of ``t(x)``; at least ``t(x)`` on unit-weight graphs."""
    if not g.adjacency[x]:
        raise IsolatedVertexError(f"vertex {g.labels[x]!r} is isolated")
    best = None
    for y, wxy in g.adjacency[x]:
        dy = g.degree(y)
        val = 4 * wxy / dy
        for z in common_neighbors(g, x, y):
            val += min(wxy / dy, g.weight(x, z) / g.degree(z)) * g.weight(z, y) / wxy
        best = val if best is None else min(best, val)
    return best


def cd_bound_weighted_triangles(g: Graph, x: int) -> Fraction:
    return weighted_triangle_rate(g, x) / 2 - 1


def complete_graph_cd_curvature(n: int, m) -> Fraction | float:
    """Optimal CD(m, .) curvature on the complete graph K_n: ``(4-n)/(2(n-1)) + (m-2)/m``."""
    m = parse_dimension(m)
    tail = Fraction(1) if m == INF else (m - 2) / m
    return Fraction(4 - n, 2 * (n - 1)) + tail
