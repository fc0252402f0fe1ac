"""Quantities read off ``Q``: basic invariants, independence data, connected
and separating set counts, the component-count distribution under random
vertex failure, and recovery of ``Q(G)`` from the polynomials of its
vertex-deleted subgraphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import BoundsError, InconsistencyError
from .graph import Graph, bits, component_counts_by_subset, delete_vertex, num_components
from .poly import BiPoly, UniPoly

MONTE_CARLO_MAX_N = 22


# --- invariants ------------------------------------------------------------------


@dataclass(frozen=True)
class BasicInvariants:
    n: int
    edges: int
    components: int


def basic_invariants(Q: BiPoly) -> BasicInvariants:
    """Vertex, edge and component counts of the graph behind ``Q``.

    ``n`` is read twice, as ``deg_x Q`` and as ``log2 Q(1, 1)``; a mismatch
    means ``Q`` is not a subgraph component polynomial.
    """
    n = 0 if Q.deg_x == float("-inf") else int(Q.deg_x)
    total = Q.eval(1, 1)
    if total.denominator != 1 or total != 1 << n:
        raise InconsistencyError(f"Q(1,1) = {total} is not 2^{n}")
    top = Q.coeff_of_x(n)
    k = 0 if top.degree == float("-inf") else int(top.degree)
    return BasicInvariants(n, Q.coeff(2, 1), k)


@dataclass(frozen=True)
class Independence:
    alpha: int
    polynomial: UniPoly


def independence(Q: BiPoly) -> Independence:
    """Independence number ``deg_y Q`` and polynomial with coefficients ``[x^j y^j] Q``."""
    alpha = 0 if Q.deg_y == float("-inf") else int(Q.deg_y)
    return Independence(alpha, UniPoly(Q.coeff(j, j) for j in range(alpha + 1)))


@dataclass(frozen=True)
class ConnectedCounts:
    """``S`` counts connected induced subgraphs by size.

    ``separating[m]`` counts vertex sets ``X`` of size ``m`` with ``G - X``
    not connected.  With ``include_full_set`` the whole vertex set counts,
    because ``G - V`` is the null graph and has no component; otherwise it
    is left out.  ``total`` is the sum of ``separating``.
    """

    S: UniPoly
    separating: tuple[int, ...]
    total: int
    include_full_set: bool


def connected_counts(Q: BiPoly, include_full_set: bool = True) -> ConnectedCounts:
    n = basic_invariants(Q).n
    S = Q.coeff_of_y(1)
    sep = [0] * (n + 1)
    for k in range(n + 1):
        sep[n - k] = comb(n, k) - S.coeff(k)
    if not include_full_set:
        sep[n] -= 1
    total = sum(sep)
    # the closed form for the inclusive reading
    if include_full_set and total != (1 << n) - S.eval(1):
        raise InconsistencyError("separating-set total disagrees with 2^n - S(1)")
    return ConnectedCounts(S, tuple(sep), total, include_full_set)


def separating_sets_by_size(G: Graph, include_full_set: bool = True) -> list[int]:
    """Direct count of sets ``X`` with ``G - X`` not connected, by ``|X|``."""
    k = component_counts_by_subset(G)
    full = G.full_mask
    out = [0] * (G.n + 1)
    for X in range(1 << G.n):
        rest = full & ~X
        if k[rest] >= 2 or (k[rest] == 0 and include_full_set):
            out[X.bit_count()] += 1
    return out


def independent_set_counts(G: Graph) -> list[int]:
    """Number of independent sets of each size, by subset enumeration."""
    out = [0] * (G.n + 1)
    for A in range(1 << G.n):
        if all(not (G.adj[v] & A) for v in bits(A)):
            out[A.bit_count()] += 1
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


# --- reliability -----------------------------------------------------------------


@dataclass(frozen=True)
class ReliabilityDistribution:
    """``probs[k]`` is the probability that the surviving vertices induce ``k`` components."""

    p: Fraction
    probs: tuple[Fraction, ...]

    @property
    def residual_connectedness(self) -> Fraction:
        """Probability that the survivors induce a connected graph (``P_1``)."""
        return self.probs[1] if len(self.probs) > 1 else Fraction(0)

    def expected_components(self) -> Fraction:
        return sum((k * pk for k, pk in enumerate(self.probs)), Fraction(0))


def _probability(p) -> Fraction:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"survival probability {p} outside [0, 1]")
    return p


def reliability(Q: BiPoly, p) -> ReliabilityDistribution:
    """Exact distribution of the number of components when each vertex survives with probability ``p``.

    ``P_k = sum_i q_ik p^i (1-p)^(n-i)``, which is ``(1-p)^n`` times the
    coefficient of ``y^k`` evaluated at ``p/(1-p)`` and stays valid at ``p = 1``.
    """
    p = _probability(p)
    n = basic_invariants(Q).n
    q = 1 - p
    probs = [Fraction(0)] * (n + 1)
    for (i, j), c in Q.items():
        probs[j] += c * p**i * q ** (n - i)
    if sum(probs) != 1:
        raise InconsistencyError("component-count probabilities do not sum to 1")
    return ReliabilityDistribution(p, tuple(probs))


@dataclass(frozen=True)
class MonteCarloEstimate:
    trials: int
    estimates: tuple[float, ...]
    std_errors: tuple[float, ...]


def monte_carlo_reliability(G: Graph, p: float, trials: int, seed: int | None = None) -> MonteCarloEstimate:
    """Sample vertex failures and tally component counts."""
    import numpy as np

    if G.n > MONTE_CARLO_MAX_N:
        raise BoundsError(f"Monte Carlo limited to n <= {MONTE_CARLO_MAX_N}")
    if not 0 <= p <= 1:
        raise ValueError(f"survival probability {p} outside [0, 1]")
    rng = np.random.default_rng(seed)
    table = np.array(component_counts_by_subset(G), dtype=np.int64)
    alive = rng.random((trials, G.n)) < p
    masks = alive.astype(np.int64) @ (np.int64(1) << np.arange(G.n, dtype=np.int64))
    counts = np.bincount(table[masks], minlength=G.n + 1)
    est = counts / trials
    se = np.sqrt(est * (1 - est) / trials)
    return MonteCarloEstimate(trials, tuple(float(v) for v in est), tuple(float(v) for v in se))


def frange_exact(start, stop, step) -> list[Fraction]:
    """``start, start+step, ...`` strictly below ``stop``, exactly."""
    start, stop, step = Fraction(start), Fraction(stop), Fraction(step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    out = []
    p = start
    while p < stop:
        out.append(p)
        p += step
    return out


DEFAULT_P_GRID = tuple(frange_exact(0, 1, Fraction(1, 100)))


def reliability_rows(Q: BiPoly, grid: Iterable = DEFAULT_P_GRID) -> list[tuple[Fraction, int, Fraction]]:
    """``(p, k, P_k)`` for every grid point and every ``k``."""
    rows = []
    for p in grid:
        dist = reliability(Q, p)
        rows.extend((dist.p, k, pk) for k, pk in enumerate(dist.probs))
    return rows


def reliability_csv(Q: BiPoly, grid: Iterable = DEFAULT_P_GRID, exact: bool = False) -> str:
    lines = ["p,k,P_k"]
    for p, k, pk in reliability_rows(Q, grid):
        if exact:
            lines.append(f"{p},{k},{pk}")
        else:
            lines.append(f"{float(p):.6g},{k},{float(pk):.17g}")
    return "\n".join(lines) + "\n"


# --- deck reconstruction -----------------------------------------------------------


@dataclass(frozen=True)
class Deck:
    """One polynomial per vertex-deleted subgraph."""

    entries: tuple[BiPoly, ...]

    @property
    def n(self) -> int:
        return len(self.entries)


def deck(G: Graph, compute=None) -> Deck:
    if compute is None:
        from .core import q_polynomial as compute
    return Deck(tuple(compute(delete_vertex(G, v)) for v in range(G.n)))


def _top_component_count(entry: BiPoly, degree: int) -> int:
    top = entry.coeff_of_x(degree)
    if len(top.coeffs) == 0 or sum(top.coeffs) != 1:
        raise InconsistencyError("deck entry does not have a single top term")
    return int(top.degree)


RECONSTRUCTION_RULES = ("corrected", "original")


def reconstruct(d: Deck | Sequence[BiPoly], rule: str = "corrected") -> BiPoly:
    """Recover ``Q(G)`` from the polynomials of the ``n`` vertex-deleted subgraphs.

    Every induced subgraph on ``i < n`` vertices appears in exactly ``n - i``
    deck entries, so all coefficients below ``x^n`` follow by exact
    division.  The remaining term is ``x^n y^k(G)``.

    ``rule="corrected"`` reads ``k(G)`` as the least top component count over
    entries of non-isolated vertices (degree = edges of G minus edges of the
    entry), or ``n`` when there are no edges.  ``rule="original"`` takes the
    least component count shared by two entries and promotes ``n - 1`` to
    ``n``; it goes wrong once an isolated vertex sits next to an edge, since
    deleting the isolated vertex lowers the count.
    """
    entries = tuple(d.entries if isinstance(d, Deck) else d)
    n = len(entries)
    if n < 3:
        raise InconsistencyError(f"reconstruction needs at least 3 deck entries, got {n}")
    if rule not in RECONSTRUCTION_RULES:
        raise ValueError(f"unknown rule {rule!r}; choose from {RECONSTRUCTION_RULES}")
    for e in entries:
        if e.deg_x != n - 1:
            raise InconsistencyError(f"deck entry has deg_x {e.deg_x}, expected {n - 1}")
    total = BiPoly()
    for e in entries:
        total = total + e
    terms: dict[tuple[int, int], int] = {}
    for (i, j), c in total.items():
        if i >= n:
            raise InconsistencyError("deck sum has a term of degree n")
        q, r = divmod(c, n - i)
        if r:
            raise InconsistencyError(f"coefficient of x^{i} y^{j} not divisible by {n - i}")
        terms[(i, j)] = q
    tops = [_top_component_count(e, n - 1) for e in entries]
    edges = terms.get((2, 1), 0)
    if rule == "corrected":
        if edges == 0:
            omega = n
        else:
            degrees = [edges - e.coeff(2, 1) for e in entries]
            if sum(degrees) != 2 * edges or min(degrees) < 0:
                raise InconsistencyError("deck degrees are inconsistent with the edge count")
            omega = min(t for t, deg in zip(tops, degrees) if deg > 0)
    else:
        seen: dict[int, int] = {}
        for t in tops:
            seen[t] = seen.get(t, 0) + 1
        repeated = [t for t, c in seen.items() if c >= 2]
        if not repeated:
            raise InconsistencyError("no component count is shared by two deck entries")
        omega = min(repeated)
        if omega == n - 1:
            omega = n
    terms[(n, omega)] = 1
    return BiPoly(terms)


# --- star recognition ----------------------------------------------------------------


def is_star_polynomial(Q: BiPoly) -> bool:
    """True when ``Q`` has the coefficient pattern of ``K_{1,m}`` with ``m = deg_x Q - 1``.

    The pattern is: connected (``[x^(m+1) y] = 1``), a single independent set
    of size ``m`` (``[x^m y^m] = 1``) and nothing of degree ``m + 2``.  It
    singles out stars for ``m >= 2``; ``K_2`` has two independent singletons
    and fails the middle test.
    """
    if not Q:
        return False
    m = int(Q.deg_x) - 1
    if m < 0:
        return False
    return Q.coeff(m + 1, 1) == 1 and Q.coeff(m, m) == 1 and not Q.coeff_of_x(m + 2)


def direct_invariants(G: Graph) -> tuple[BasicInvariants, Independence]:
    """The same invariants computed on the graph itself."""
    counts = independent_set_counts(G)
    return (
        BasicInvariants(G.n, G.num_edges, num_components(G)),
        Independence(len(counts) - 1, UniPoly(counts)),
    )


__all__ = [
    "BasicInvariants",
    "ConnectedCounts",
    "DEFAULT_P_GRID",
    "Deck",
    "Independence",
    "MonteCarloEstimate",
    "RECONSTRUCTION_RULES",
    "ReliabilityDistribution",
    "basic_invariants",
    "connected_counts",
    "deck",
    "direct_invariants",
    "frange_exact",
    "independence",
    "independent_set_counts",
    "is_star_polynomial",
    "monte_carlo_reliability",
    "reconstruct",
    "reliability",
    "reliability_csv",
    "reliability_rows",
    "separating_sets_by_size",
]
