"""Exact rational linear programming for fractional matchings and covers.

Everything here runs on `fractions.Fraction`; there is no floating point in
this module.  The solver is a dense two-phase primal simplex with Bland's
anti-cycling rule, which keeps every result deterministic.

Beyond the plain optima this module provides the two constructive pieces the
stability machinery needs: the lexicographic load-maximizing fractional
matching (a chain of LPs, each freezing the previously maximized loads as
equality constraints), and the extension of such a matching to a perfect
fractional matching on a graph with a full-degree apex prefix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from emclab.hypergraph import Hypergraph, HypergraphError, is_stable

ZERO = Fraction(0)
ONE = Fraction(1)


class LPError(Exception):
    pass


class Infeasible(LPError):
    pass


class Unbounded(LPError):
    pass


# ---------------------------------------------------------------------------
# simplex core
# ---------------------------------------------------------------------------

def _simplex_min(c, rows, trace=None):
    """Minimize c.x subject to `rows` and x >= 0, exactly.

    rows: list of (coeffs, sense, rhs) with sense in {"<=", ">=", "=="}.
    Returns (value, x, row_duals) where row_duals[i] = y_i with the sign
    convention of the minimization dual (y free for "==", y <= 0 for "<=").
    """
    nvars = len(c)
    m = len(rows)
    # normalize to nonnegative rhs
    norm = []
    for coeffs, sense, rhs in rows:
        coeffs = [Fraction(x) for x in coeffs]
        rhs = Fraction(rhs)
        if rhs < 0:
            coeffs = [-x for x in coeffs]
            rhs = -rhs
            sense = {"<=": ">=", ">=": "<=", "==": "=="}[sense]
        norm.append((coeffs, sense, rhs))

    slack_col = {}
    art_col = {}
    ncols = nvars
    for i, (_, sense, _) in enumerate(norm):
        if sense in ("<=", ">="):
            slack_col[i] = ncols
            ncols += 1
    for i, (_, sense, _) in enumerate(norm):
        if sense in (">=", "=="):
            art_col[i] = ncols
            ncols += 1

    tab = [[ZERO] * (ncols + 1) for _ in range(m)]
    basis = [0] * m
    for i, (coeffs, sense, rhs) in enumerate(norm):
        row = tab[i]
        for j, v in enumerate(coeffs):
            row[j] = v
        if sense == "<=":
            row[slack_col[i]] = ONE
            basis[i] = slack_col[i]
        elif sense == ">=":
            row[slack_col[i]] = -ONE
            row[art_col[i]] = ONE
            basis[i] = art_col[i]
        else:
            row[art_col[i]] = ONE
            basis[i] = art_col[i]
        row[ncols] = rhs

    artificials = set(art_col.values())

    def reduced_costs(cost):
        r = list(cost) + [ZERO] * (ncols - len(cost))
        z = ZERO
        for i in range(m):
            cb = r_base[basis[i]]
            if cb:
                row = tab[i]
                for j in range(ncols):
                    if row[j]:
                        r[j] -= cb * row[j]
                z -= cb * row[ncols]
        return r, z

    def pivot(pi, pj, phase):
        if trace is not None:
            trace.append((phase, pj, basis[pi]))
        row = tab[pi]
        pv = row[pj]
        if pv != 1:
            tab[pi] = row = [x / pv for x in row]
        for i in range(m):
            if i == pi:
                continue
            f = tab[i][pj]
            if f:
                tab[i] = [a - f * b for a, b in zip(tab[i], row)]
        basis[pi] = pj

    def run(cost, allowed, phase):
        nonlocal r_base
        while True:
            r_base = list(cost) + [ZERO] * (ncols - len(cost))
            r, _ = reduced_costs(cost)
            enter = -1
            for j in range(ncols):
                if j in allowed and r[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return r
            leave = -1
            best = None
            for i in range(m):
                a = tab[i][enter]
                if a > 0:
                    ratio = tab[i][ncols] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best = ratio
                        leave = i
            if leave < 0:
                raise Unbounded("LP is unbounded")
            pivot(leave, enter, phase)

    r_base: list[Fraction] = []

    # phase 1
    if artificials:
        cost1 = [ZERO] * ncols
        for j in artificials:
            cost1[j] = ONE
        allowed = set(range(ncols))
        run(cost1, allowed, 1)
        val1 = sum(tab[i][ncols] for i in range(m) if basis[i] in artificials)
        if val1 != 0:
            raise Infeasible("LP is infeasible")
        # drive basic artificials out where possible
        for i in range(m):
            if basis[i] in artificials:
                for j in range(ncols):
                    if j not in artificials and tab[i][j] != 0:
                        pivot(i, j, 1)
                        break

    cost2 = [Fraction(x) for x in c]
    allowed = set(range(ncols)) - artificials
    r = run(cost2, allowed, 2)

    x = [ZERO] * nvars
    value = ZERO
    for i in range(m):
        if basis[i] < nvars:
            x[basis[i]] = tab[i][ncols]
    value = sum(ci * xi for ci, xi in zip(cost2, x))

    duals = []
    for i in range(m):
        col = slack_col.get(i)
        if col is not None:
            duals.append(-r[col])          # reduced cost of slack is -y_i
        else:
            duals.append(-r[art_col[i]])
    return value, x, duals


def solve_lp(c, rows, maximize=False, trace=None):
    """Exact LP over x >= 0.  rows: (coeffs, sense, rhs)."""
    if maximize:
        value, x, duals = _simplex_min([-Fraction(v) for v in c], rows, trace=trace)
        return -value, x, [-d for d in duals]
    return _simplex_min([Fraction(v) for v in c], rows, trace=trace)


# ---------------------------------------------------------------------------
# fractional matchings and covers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FractionalMatching:
    """Edge weights in [0,1] with per-vertex loads phi(v) <= 1."""

    weights: dict[tuple[int, ...], Fraction]
    loads: dict[int, Fraction]
    size: Fraction

    def boundary(self) -> list[int]:
        """Vertices with load strictly between 0 and 1."""
        return sorted(v for v, ld in self.loads.items() if 0 < ld < 1)


@dataclass(frozen=True)
class FractionalCover:
    weights: dict[int, Fraction]
    size: Fraction
    support: frozenset[int]


def make_fractional_matching(h: Hypergraph, weights: dict[tuple[int, ...], Fraction]) -> FractionalMatching:
    edge_set = h.edge_set()
    loads = {v: ZERO for v in h.vertices}
    size = ZERO
    clean = {}
    for e, w in weights.items():
        e = tuple(sorted(e))
        w = Fraction(w)
        if w == 0:
            continue
        if e not in edge_set:
            raise LPError(f"weight on non-edge {e}")
        if not (0 <= w <= 1):
            raise LPError(f"weight {w} on {e} outside [0,1]")
        clean[e] = w
        size += w
        for v in e:
            loads[v] += w
    for v, ld in loads.items():
        if ld > 1:
            raise LPError(f"vertex {v} overloaded: {ld}")
    return FractionalMatching(weights=clean, loads=loads, size=size)


def _matching_rows(h: Hypergraph):
    rows = []
    for v in h.vertices:
        coeffs = [ONE if v in e else ZERO for e in h.edges]
        rows.append((coeffs, "<=", ONE))
    return rows


def fractional_matching_number(h: Hypergraph, trace=None) -> tuple[Fraction, FractionalMatching]:
    """Exact LP optimum of the edge-packing relaxation, with a witness."""
    if not h.edges:
        return ZERO, FractionalMatching(weights={}, loads={v: ZERO for v in h.vertices}, size=ZERO)
    c = [ONE] * len(h.edges)
    value, x, _ = solve_lp(c, _matching_rows(h), maximize=True, trace=trace)
    weights = {e: w for e, w in zip(h.edges, x) if w}
    return value, make_fractional_matching(h, weights)


def fractional_cover_number(h: Hypergraph, trace=None) -> tuple[Fraction, FractionalCover]:
    """Exact dual optimum; equals the fractional matching number exactly."""
    if not h.edges:
        return ZERO, FractionalCover(weights={v: ZERO for v in h.vertices}, size=ZERO,
                                     support=frozenset())
    c = [ONE] * len(h.edges)
    value, _, duals = solve_lp(c, _matching_rows(h), maximize=True, trace=trace)
    weights = {v: d for v, d in zip(h.vertices, duals)}
    for v, w in weights.items():
        if not (0 <= w <= 1):
            raise LPError(f"dual weight {w} at vertex {v} outside [0,1]")
    for e in h.edges:
        if sum(weights[v] for v in e) < 1:
            raise LPError(f"dual not a cover at edge {e}")
    size = sum(weights.values(), ZERO)
    if size != value:
        raise LPError("strong duality violated (solver bug)")
    return value, FractionalCover(weights=weights, size=size,
                                  support=frozenset(v for v, w in weights.items() if w > 0))


@dataclass(frozen=True)
class SlacknessReport:
    support_size: int
    bound: Fraction            # k * nu_star
    saturated_ok: bool
    violations: tuple[str, ...]


def check_complementary_slackness(h: Hypergraph, fm: FractionalMatching,
                                  fc: FractionalCover) -> SlacknessReport:
    """Positive cover weight must sit on a saturated vertex; |support| <= k*nu*."""
    violations = []
    for v in fc.support:
        if fm.loads.get(v, ZERO) != 1:
            violations.append(f"omega({v})>0 but load {fm.loads.get(v, ZERO)} != 1")
    bound = Fraction(h.k) * fm.size
    if len(fc.support) > bound:
        violations.append(f"support {len(fc.support)} exceeds k*nu* = {bound}")
    return SlacknessReport(support_size=len(fc.support), bound=bound,
                           saturated_ok=not violations, violations=tuple(violations))


def has_perfect_fm(h: Hypergraph) -> bool:
    nu_star, _ = fractional_matching_number(h)
    return nu_star == Fraction(len(h.vertices), h.k)


# ---------------------------------------------------------------------------
# lexicographic maximization and the perfect extension
# ---------------------------------------------------------------------------

def lex_max_fractional_matching(h: Hypergraph, order: Sequence[int],
                                target_size: Fraction) -> FractionalMatching:
    """Fractional matching of exactly `target_size` whose load vector is
    lexicographically maximal along `order`.

    Sequential LPs: maximize the next load subject to equality constraints
    pinning every previously maximized load.
    """
    target = Fraction(target_size)
    nu_star, _ = fractional_matching_number(h)
    if target > nu_star:
        raise LPError(f"target size {target} exceeds nu* = {nu_star}")
    rows = _matching_rows(h)
    size_coeffs = [ONE] * len(h.edges)
    rows.append((size_coeffs, "==", target))
    x = None
    for v in order:
        load_coeffs = [ONE if v in e else ZERO for e in h.edges]
        value, x, _ = solve_lp(load_coeffs, rows, maximize=True)
        rows.append((load_coeffs, "==", value))
    if x is None:  # empty order: any matching of the right size
        _, x, _ = solve_lp([ZERO] * len(h.edges), rows, maximize=True)
    weights = {e: w for e, w in zip(h.edges, x) if w}
    fm = make_fractional_matching(h, weights)
    if fm.size != target:
        raise LPError("lexicographic chain lost the size constraint (solver bug)")
    return fm


class PerfectExtensionError(LPError):
    """A precondition of the perfect-extension construction failed."""

    def __init__(self, precondition: str, detail: str):
        self.precondition = precondition
        super().__init__(f"{precondition}: {detail}")


def full_degree_vertices(h: Hypergraph, upto: int) -> bool:
    """True iff every vertex in [upto] lies in every k-set through it."""
    others = [v for v in h.vertices]
    edge_set = h.edge_set()
    for i in range(1, upto + 1):
        rest = [v for v in others if v != i]
        for comb_e in combinations(rest, h.k - 1):
            if tuple(sorted((i,) + comb_e)) not in edge_set:
                return False
    return True


def extend_to_perfect_fm(h: Hypergraph, t: int, fm: FractionalMatching) -> FractionalMatching:
    """Extend a lex-maximal fractional matching of H minus its apex prefix
    [t] to a perfect fractional matching of H (k = 4).

    Requires: H stable, every vertex of [t] of full degree, fm of size
    N/4 - t on H restricted to [N] \\ [t] with nonincreasing loads whose
    fractional boundary is a contiguous block of at most 4 vertices.
    """
    if h.k != 4:
        raise PerfectExtensionError("uniformity", f"k must be 4, got {h.k}")
    n_total = len(h.vertices)
    if h.vertices != tuple(range(1, n_total + 1)):
        raise PerfectExtensionError("ground-set", "expects vertices 1..N")
    if n_total % 4 != 0:
        raise PerfectExtensionError("divisibility", f"|V| = {n_total} not divisible by 4")
    if not is_stable(h):
        raise PerfectExtensionError("stability", "H is not stable")
    if not full_degree_vertices(h, t):
        raise PerfectExtensionError("full-degree", f"some vertex in [{t}] misses a 4-set")
    s_star = Fraction(n_total, 4) - t
    if s_star.denominator != 1 or s_star < 0:
        raise PerfectExtensionError("size", f"N/4 - t = {s_star} is not a nonnegative integer")
    s_star = int(s_star)
    if fm.size != s_star:
        raise PerfectExtensionError("size", f"matching size {fm.size}, expected {s_star}")
    for e in fm.weights:
        if any(v <= t for v in e):
            raise PerfectExtensionError("support", f"edge {e} meets the apex prefix")

    rest = list(range(t + 1, n_total + 1))
    loads = [fm.loads.get(v, ZERO) for v in rest]
    for a, b in zip(loads, loads[1:]):
        if a < b:
            raise PerfectExtensionError("monotone-loads", "loads are not nonincreasing")
    frac = [v for v, ld in zip(rest, loads) if 0 < ld < 1]
    ell = len(frac)
    if ell > 4:
        raise PerfectExtensionError("boundary", f"|A| = {ell} > 4")
    if frac and frac != list(range(frac[0], frac[0] + ell)):
        raise PerfectExtensionError("boundary", "fractional block is not contiguous")
    q = frac[0] - 1 if frac else t + sum(1 for ld in loads if ld == 1)
    # vertices t+1..q carry load 1, q+1..q+ell are fractional, the rest 0
    for v, ld in zip(rest, loads):
        want = ONE if v <= q else (None if v <= q + ell else ZERO)
        if want is not None and ld != want:
            raise PerfectExtensionError("load-pattern", f"load {ld} at vertex {v}")

    top = t + 4 * s_star
    weights = dict(fm.weights)

    def add(edge, w):
        edge = tuple(sorted(edge))
        weights[edge] = weights.get(edge, ZERO) + w

    for i in range(2, t + 1):
        add((i, top + 3 * i - 2, top + 3 * i - 1, top + 3 * i), ONE)

    if ell == 0:
        if q != top:
            raise PerfectExtensionError("boundary", f"A empty but q = {q} != t+4s* = {top}")
        if t >= 1:
            add((1, top + 1, top + 2, top + 3), ONE)
        elif n_total != 4 * s_star:
            raise PerfectExtensionError("apex", "no apex vertex to absorb leftovers")
    else:
        if t < 1:
            raise PerfectExtensionError("apex", "fractional boundary needs an apex vertex")
        p = top - q
        if not (1 <= p < ell):
            raise PerfectExtensionError("boundary", f"p = t+4s*-q = {p} outside [1,{ell - 1}]")
        b_set = list(range(q + ell + 1, top + 4))  # |B| = p + 3 - ell
        a_vals = {v: fm.loads[v] for v in frac}
        e0 = [tuple(sorted((1, *sub, *b_set))) for sub in combinations(frac, ell - p)]
        # feasibility LP for the boundary equation system, weights in [0,1]
        rows = []
        for j, v in enumerate(frac):
            coeffs = [ONE if v in e else ZERO for e in e0]
            rows.append((coeffs, "==", ONE - a_vals[v]))
        for idx in range(len(e0)):
            coeffs = [ZERO] * len(e0)
            coeffs[idx] = ONE
            rows.append((coeffs, "<=", ONE))
        try:
            _, x, _ = solve_lp([ZERO] * len(e0), rows, maximize=True)
        except Infeasible as exc:
            raise PerfectExtensionError("boundary-system",
                                        "equation system infeasible") from exc
        if sum(x, ZERO) != 1:
            raise PerfectExtensionError("boundary-system",
                                        f"total boundary weight {sum(x, ZERO)} != 1")
        for e, w in zip(e0, x):
            if w:
                add(e, w)

    out = make_fractional_matching(h, weights)
    for v in h.vertices:
        if out.loads[v] != 1:
            raise PerfectExtensionError("perfection", f"load {out.loads[v]} at vertex {v}")
    return out


# ---------------------------------------------------------------------------
# cheap certified upper bound for stable families
# ---------------------------------------------------------------------------

def dominance_maximal_edges(h: Hypergraph) -> list[tuple[int, ...]]:
    edge_set = h.edge_set()
    out = []
    for e in h.edges:
        maximal = True
        for i, a in enumerate(e):
            b = a + 1
            if b > h.n or b in e:
                continue
            f = tuple(sorted(e[:i] + (b,) + e[i + 1:]))
            if f in edge_set:
                maximal = False
                break
        if maximal:
            out.append(e)
    return out


def monotone_cover_bound(h: Hypergraph) -> Fraction:
    """Size of the best nonincreasing fractional cover of a stable family.

    Only the dominance-maximal edges need explicit constraints: under a
    nonincreasing weight vector every dominated edge is covered whenever its
    dominating edge is.  Any feasible cover upper-bounds nu* by weak duality,
    so this is a sound (and for stable families usually tight) bound that
    avoids the full edge-indexed LP.
    """
    if not h.edges:
        return ZERO
    n = h.n
    rows = []
    for e in dominance_maximal_edges(h):
        coeffs = [ONE if v in e else ZERO for v in range(1, n + 1)]
        rows.append((coeffs, ">=", ONE))
    for i in range(n - 1):
        coeffs = [ZERO] * n
        coeffs[i] = ONE
        coeffs[i + 1] = -ONE
        rows.append((coeffs, ">=", ZERO))
    value, _, _ = solve_lp([ONE] * n, rows, maximize=False)
    return value
