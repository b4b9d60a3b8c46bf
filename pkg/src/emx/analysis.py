"""Scheme shrinking and existence search.

descend turns an (m+1)-to-m scheme on a domain into an m-to-(m-1) scheme
on a chosen sub-domain, by anchoring on a point the sub-domain's
reconstructions can never produce. search_schemes decides, for small
finite domains, whether any sound selection scheme with a bounded
reconstruction size exists at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Literal

from .schemes import MonotoneScheme, SchemeError, verify_soundness

ZMode = Literal["direct", "sigma", "superset"]

Z_MODES = ("direct", "sigma", "superset")


class DeskScaleError(RuntimeError):
    """The reconstruction image swallowed the whole finite domain, so no
    anchor point is available at this scale."""

    def __init__(self, z_size: int):
        super().__init__(
            f"reconstruction image covers the domain (|Z| = {z_size}); "
            "use a larger domain or a smaller sub-domain"
        )
        self.z_size = z_size


class DescentError(RuntimeError):
    """The reduction failed on a concrete subset of the sub-domain."""

    def __init__(self, subset: frozenset[int]):
        super().__init__(f"reduction unsound on subset {sorted(subset)}")
        self.subset = subset


def reconstruction_image(
    scheme: MonotoneScheme,
    sub_domain: Iterable[int],
    z_mode: ZMode = "superset",
) -> frozenset[int]:
    """Everything eta can produce from the sub-domain.

    direct: eta over all m-subsets of the sub-domain.
    sigma: eta over the compressor's images of all (m+1)-subsets.
    superset (default): the union of both readings. For selection schemes
    every sigma image of a sub-domain subset is itself an m-subset of the
    sub-domain, so sigma adds nothing beyond direct; only direct (and
    hence superset) guarantees the anchor is never compressed out.
    """
    if z_mode not in Z_MODES:
        raise ValueError(f"z_mode must be one of {Z_MODES}, got {z_mode!r}")
    pool = sorted(sub_domain)
    image: set[int] = set()
    if z_mode in ("direct", "superset"):
        for t in combinations(pool, scheme.m):
            image |= scheme.eta(t)
    if z_mode in ("sigma", "superset"):
        for beta in combinations(pool, scheme.m + 1):
            image |= scheme.eta(scheme.sigma(beta))
    return frozenset(image)


@dataclass(frozen=True)
class ReductionWitness:
    """Anchor point, size of the reconstruction image it lies outside of,
    and the reduced scheme (arity one less, sound on the sub-domain)."""

    x: int
    z_size: int
    reduced: MonotoneScheme


def descend(
    scheme: MonotoneScheme,
    domain_ids: Iterable[int],
    sub_domain: Iterable[int],
    z_mode: ZMode = "superset",
) -> ReductionWitness:
    """Build the reduced scheme on the sub-domain.

    Z is the reconstruction image of the sub-domain; the anchor x is the
    smallest domain id outside Z. The reduced compressor maps s to
    sigma(s | {x}) minus x, which works because x can never be the dropped
    point: if it were, sigma's output would be an m-subset of the
    sub-domain whose reconstruction already contains x, contradicting
    x outside Z. The reduced reconstructor maps t to eta(t | {x}).
    Soundness of the result is verified exhaustively over the sub-domain
    before returning.
    """
    if scheme.m < 1:
        raise ValueError("descending needs a scheme of arity m >= 1")
    universe = frozenset(domain_ids)
    y = frozenset(sub_domain)
    if not y <= universe:
        raise ValueError("sub-domain must lie inside the domain")
    if len(y) < scheme.m + 1:
        raise ValueError(f"sub-domain must hold at least {scheme.m + 1} points")

    z = reconstruction_image(scheme, y, z_mode)
    outside = universe - z
    if not outside:
        raise DeskScaleError(len(z))
    x = min(outside)
    if x in y:
        # cannot happen for a sound scheme (the sub-domain sits inside Z);
        # treat as the same desk-scale failure
        raise DeskScaleError(len(z))

    def compress(s: frozenset[int]) -> frozenset[int]:
        kept = scheme.sigma(frozenset(s) | {x})
        if x not in kept:
            raise DescentError(frozenset(s))
        return kept - {x}

    def reconstruct(t: frozenset[int]) -> frozenset[int]:
        return scheme.eta(frozenset(t) | {x})

    reduced = MonotoneScheme(scheme.m - 1, compress, reconstruct, budget=scheme.budget)
    report = verify_soundness(reduced, combinations(sorted(y), scheme.m))
    if report.violations:
        raise DescentError(report.violations[0])
    return ReductionWitness(x=x, z_size=len(z), reduced=reduced)


@dataclass(frozen=True)
class SearchProblem:
    """Existence question: is there a sound (m+1)-to-m selection scheme on
    n points whose reconstructions never exceed budget elements?"""

    n: int
    m: int
    budget: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("scheme arity must be >= 0")
        if self.n < max(self.m + 1, 2):
            raise ValueError("domain must hold an (m+1)-subset and at least 2 points")
        if self.budget < 1:
            raise ValueError("budget must be >= 1")


@dataclass(frozen=True)
class SearchResult:
    verdict: str  # "SAT" | "UNSAT" | "UNDECIDED"
    problem: SearchProblem
    nodes: int
    reason: str
    sigma_table: tuple[tuple[tuple[int, ...], int], ...] | None = None
    eta_table: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] | None = None
    witness: MonotoneScheme | None = None


def counting_refutes(problem: SearchProblem) -> bool:
    """Necessary covering bound. If sigma drops e from beta, the m-set
    beta - {e} must reconstruct its own m points plus e, so each m-set can
    vouch for at most budget - m dropped partners; all C(n, m+1) subsets
    need a slot among C(n, m) * (budget - m)."""
    capacity = max(0, problem.budget - problem.m)
    return comb(problem.n, problem.m + 1) > comb(problem.n, problem.m) * capacity


def search_schemes(
    problem: SearchProblem,
    node_limit: int = 2_000_000,
    use_precheck: bool = True,
) -> SearchResult:
    """Backtracking over which point each (m+1)-subset drops.

    Assigning drop e to beta loads the m-set beta - {e}; a load of more
    than budget - m distinct partners is infeasible, which prunes the
    branch. Domain points are interchangeable a priori, so the first
    subset's drop is fixed to its smallest element (isomorph pruning; the
    verdict is unaffected). UNSAT is only returned after exhausting the
    pruned space or from the counting bound; hitting the node limit yields
    UNDECIDED, never a silent UNSAT. A SAT witness is re-verified
    exhaustively before it is returned.
    """
    if use_precheck and counting_refutes(problem):
        return SearchResult("UNSAT", problem, 0, "counting bound")

    n, m, budget = problem.n, problem.m, problem.budget
    betas = list(combinations(range(n), m + 1))
    capacity = budget - m
    if capacity <= 0 and betas:
        return SearchResult("UNSAT", problem, 0, "budget below arity + 1")

    loads: dict[tuple[int, ...], set[int]] = {}
    assignment: list[int] = [-1] * len(betas)
    nodes = 0

    def backtrack(i: int) -> bool | None:
        nonlocal nodes
        if i == len(betas):
            return True
        beta = betas[i]
        choices = beta[:1] if i == 0 else beta
        for dropped in choices:
            nodes += 1
            if nodes > node_limit:
                return None
            t = tuple(v for v in beta if v != dropped)
            load = loads.setdefault(t, set())
            fresh = dropped not in load
            if fresh and len(load) >= capacity:
                continue
            if fresh:
                load.add(dropped)
            assignment[i] = dropped
            result = backtrack(i + 1)
            if result:
                return True
            if result is None:
                return None
            if fresh:
                load.remove(dropped)
            assignment[i] = -1
        return False

    outcome = backtrack(0)
    if outcome is None:
        return SearchResult("UNDECIDED", problem, nodes, f"node limit {node_limit} reached")
    if not outcome:
        return SearchResult("UNSAT", problem, nodes, "search space exhausted")

    sigma_map = {
        frozenset(beta): frozenset(beta) - {dropped}
        for beta, dropped in zip(betas, assignment)
    }
    eta_map = {
        frozenset(t): frozenset(t) | frozenset(loads.get(t, ()))
        for t in combinations(range(n), m)
    }

    def compress(beta: frozenset[int]) -> frozenset[int]:
        try:
            return sigma_map[beta]
        except KeyError:
            raise SchemeError(f"subset {sorted(beta)} outside the searched domain") from None

    def reconstruct(t: frozenset[int]) -> frozenset[int]:
        try:
            return eta_map[t]
        except KeyError:
            raise SchemeError(f"subset {sorted(t)} outside the searched domain") from None

    witness = MonotoneScheme(m, compress, reconstruct, budget=budget)
    report = verify_soundness(witness, map(frozenset, betas))
    if not report.ok:
        raise AssertionError("searcher produced an unsound witness")

    sigma_table = tuple((beta, dropped) for beta, dropped in zip(betas, assignment))
    eta_table = tuple(
        (t, tuple(sorted(eta_map[frozenset(t)])))
        for t in combinations(range(n), m)
    )
    return SearchResult("SAT", problem, nodes, "witness verified", sigma_table, eta_table, witness)


WITNESS_HEADER = "# emx-scheme-witness 1"


def witness_to_text(result: SearchResult) -> str:
    """Dump a SAT witness: sigma lines as `subset | dropped`, eta lines as
    `subset | reconstruction`, both in lexicographic subset order."""
    if result.verdict != "SAT" or result.sigma_table is None or result.eta_table is None:
        raise ValueError("only SAT results carry a witness")
    p = result.problem
    lines = [WITNESS_HEADER, f"n: {p.n}", f"m: {p.m}", f"budget: {p.budget}"]
    for beta, dropped in result.sigma_table:
        lines.append("sigma: " + " ".join(map(str, beta)) + " | " + str(dropped))
    for t, out in result.eta_table:
        lines.append("eta: " + " ".join(map(str, t)) + " | " + " ".join(map(str, out)))
    return "\n".join(lines) + "\n"
