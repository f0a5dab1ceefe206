"""Exact rational evaluation of the cut-boundary covering/packing programs.

Four programs: minimize sum x(v) subject to x(B) >= 1 over all boundaries
(covering), and its dual packing maximize sum y(B) subject to, per vertex,
sum of y over boundaries containing it <= 1; plus the "balls" variants that
only use the closed-neighborhood boundaries B({v}) = N[v].

Everything is solved by a dense simplex over exact rationals with Bland's
rule, so the reported optima are certified equalities, not approximations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .caps import get_cap
from .errors import CapExceededError, ConnectivityError
from .graph import Graph, VertexSet, components

try:  # gmpy2's mpq is a drop-in exact rational, much faster than Fraction
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

__all__ = [
    "LPSolution",
    "LowerBound",
    "enumerate_boundaries",
    "tau_bnd_star",
    "nu_bnd_star",
    "tau_balls_star",
    "nu_balls_star",
    "lower_bound_opt",
    "lp_solution_to_json",
]

COV_BND = "cov_bnd"
PACK_BND = "pack_bnd"
COV_BALLS = "cov_balls"
PACK_BALLS = "pack_balls"


@dataclass(frozen=True)
class LPSolution:
    """Exact optimum of one of the four programs.

    ``primal_values`` maps vertices (covering programs) or boundary sets
    (packing programs) to rationals.  ``certificate_dual`` carries the
    matching optimal solution of the dual program, keyed the other way
    around, so every solution doubles as an optimality certificate.
    """

    program: str
    objective: Fraction
    primal_values: dict
    certificate_dual: dict | None = None

    def validate(self, g: Graph, boundaries: list[frozenset] | None = None) -> None:
        """Re-check feasibility and strong duality with fresh Fractions."""
        if boundaries is None:
            boundaries = _boundary_family(g, self.program)
        if self.program in (COV_BND, COV_BALLS):
            x, y = self.primal_values, self.certificate_dual
        else:
            x, y = self.certificate_dual, self.primal_values
        if x is not None:
            assert all(val >= 0 for val in x.values())
            for b in boundaries:
                assert sum(x.get(v, Fraction(0)) for v in b) >= 1, "covering constraint violated"
            assert sum(x.values()) == self.objective
        if y is not None:
            assert all(val >= 0 for val in y.values())
            for v in range(g.n):
                load = sum(val for b, val in y.items() if v in b)
                assert load <= 1, "packing constraint violated"
            assert sum(y.values()) == self.objective


@dataclass(frozen=True)
class LowerBound:
    value: Fraction
    via_boundaries: bool  # False when the balls fallback was used


def enumerate_boundaries(g: Graph) -> list[VertexSet]:
    """Distinct inclusion-minimal boundaries B(S) over nonempty proper S.

    Constraints over supersets of another boundary are implied by it, so
    only the minimal ones are kept.
    """
    cap = get_cap("boundary_lp")
    if g.n > cap:
        raise CapExceededError(f"boundary enumeration needs n <= {cap}, got {g.n}")
    edges = g.edges
    seen = set()
    for s in range(1, (1 << g.n) - 1):
        b = 0
        for u, v in edges:
            if ((s >> u) & 1) != ((s >> v) & 1):
                b |= (1 << u) | (1 << v)
        seen.add(b)
    masks = sorted(seen, key=lambda m: (bin(m).count("1"), m))
    minimal: list[int] = []
    for m in masks:
        if not any(k & m == k for k in minimal):
            minimal.append(m)
    return [g.vertex_set(v for v in range(g.n) if (m >> v) & 1) for m in minimal]


def _ball_family(g: Graph) -> list[VertexSet]:
    out = set()
    for v in range(g.n):
        out.add(g.vertex_set(set(g.adj[v]) | {v}))
    return sorted(out, key=lambda b: sorted(b))


def _boundary_family(g: Graph, program: str) -> list[VertexSet]:
    if program in (COV_BND, PACK_BND):
        return enumerate_boundaries(g)
    return _ball_family(g)


def _simplex_max(num_vars: int, rows: list[list[int]], rhs: list[int], costs: list[int]):
    """Maximize costs*y subject to rows*y <= rhs, y >= 0 (rhs >= 0).

    Dense tableau simplex with Bland's rule; returns (objective, y, duals)
    as exact rationals.  The slack basis is feasible because rhs >= 0.
    """
    m = len(rows)
    total = num_vars + m
    tab = []
    for i in range(m):
        row = [_Q(c) for c in rows[i]] + [_Q(0)] * m + [_Q(rhs[i])]
        row[num_vars + i] = _Q(1)
        tab.append(row)
    z = [_Q(c) for c in costs] + [_Q(0)] * (m + 1)
    basis = list(range(num_vars, total))
    zero = _Q(0)
    while True:
        enter = -1
        for j in range(total):  # Bland: first improving column
            if z[j] > zero:
                enter = j
                break
        if enter == -1:
            break
        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > zero:
                ratio = tab[i][total] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave == -1:
            raise ArithmeticError("LP is unbounded; malformed program")
        piv = tab[leave][enter]
        prow = [val / piv for val in tab[leave]]
        tab[leave] = prow
        basis[leave] = enter
        for i in range(m):
            if i != leave and tab[i][enter] != zero:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], prow)]
        if z[enter] != zero:
            f = z[enter]
            z = [a - f * b for a, b in zip(z, prow)]
    def frac(q) -> Fraction:
        return Fraction(int(q.numerator), int(q.denominator))

    y = [Fraction(0)] * num_vars
    for i, b in enumerate(basis):
        if b < num_vars:
            y[b] = frac(tab[i][total])
    duals = [frac(-z[num_vars + i]) for i in range(m)]
    obj = frac(-z[total])  # the z row accumulates -(objective)
    return obj, y, duals


def _solve_pair(g: Graph, balls: bool):
    """Solve the packing LP; by duality the covering LP shares its optimum."""
    if len(components(g)) != 1:
        raise ConnectivityError("boundary programs are defined for connected graphs")
    family = _ball_family(g) if balls else enumerate_boundaries(g)
    n = g.n
    # packing variables y(B); constraint per vertex: sum over B containing v <= 1
    rows = [[1 if v in b else 0 for b in family] for v in range(n)]
    rhs = [1] * n
    costs = [1] * len(family)
    obj, y, duals = _simplex_max(len(family), rows, rhs, costs)
    y_map = {family[j]: y[j] for j in range(len(family))}
    x_map = {v: duals[v] for v in range(n)}
    return obj, x_map, y_map, family


def tau_bnd_star(g: Graph) -> LPSolution:
    obj, x, y, fam = _solve_pair(g, balls=False)
    sol = LPSolution(COV_BND, obj, x, y)
    sol.validate(g, fam)
    return sol


def nu_bnd_star(g: Graph) -> LPSolution:
    obj, x, y, fam = _solve_pair(g, balls=False)
    sol = LPSolution(PACK_BND, obj, y, x)
    sol.validate(g, fam)
    return sol


def tau_balls_star(g: Graph) -> LPSolution:
    obj, x, y, fam = _solve_pair(g, balls=True)
    sol = LPSolution(COV_BALLS, obj, x, y)
    sol.validate(g, fam)
    return sol


def nu_balls_star(g: Graph) -> LPSolution:
    obj, x, y, fam = _solve_pair(g, balls=True)
    sol = LPSolution(PACK_BALLS, obj, y, x)
    sol.validate(g, fam)
    return sol


def lower_bound_opt(g: Graph) -> LowerBound:
    """A certified lower bound on the per-bit complexity of equality on g.

    The full boundary program is used when n is within the cap; otherwise
    the balls relaxation (still a valid lower bound) is reported with a
    flag.
    """
    if g.n <= get_cap("boundary_lp"):
        return LowerBound(tau_bnd_star(g).objective, True)
    return LowerBound(tau_balls_star(g).objective, False)


def _rat_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def lp_solution_to_json(sol: LPSolution) -> dict:
    def key(k):
        if isinstance(k, int):
            return str(k)
        return ",".join(str(v) for v in sorted(k))

    out = {
        "program": sol.program,
        "objective": _rat_str(sol.objective),
        "primal": {key(k): _rat_str(v) for k, v in sol.primal_values.items()},
    }
    if sol.certificate_dual is not None:
        out["dual"] = {key(k): _rat_str(v) for k, v in sol.certificate_dual.items()}
    return out
