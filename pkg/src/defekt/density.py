"""Exact density measures.

Three quantities drive everything else here: maximum average degree (the
densest-subgraph value, doubled), degeneracy, and the density of the densest
graph whose 1-subdivision-or-less sits inside the host.  All of them are
returned as exact rationals with witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .caps import current_caps
from .errors import AlgorithmError, CapExceededError, ValidationError
from .graphs import Graph, induced_subgraph
from .matching import max_bipartite_matching


# ---------------------------------------------------------------------------
# max-flow plumbing for the densest-subgraph test

class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, c: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        queue = [s]
        for u in queue:
            for e in self.head[u]:
                v = self.to[e]
                if self.cap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def _push(self, u: int, t: int, limit: int, level, it) -> int:
        if u == t:
            return limit
        while it[u] < len(self.head[u]):
            e = self.head[u][it[u]]
            v = self.to[e]
            if self.cap[e] > 0 and level[v] == level[u] + 1:
                got = self._push(v, t, min(limit, self.cap[e]), level, it)
                if got:
                    self.cap[e] -= got
                    self.cap[e ^ 1] += got
                    return got
            it[u] += 1
        return 0

    def maxflow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return flow
            it = [0] * self.n
            while True:
                got = self._push(s, t, 1 << 200, level, it)
                if not got:
                    break
                flow += got

    def source_side(self, s: int) -> set[int]:
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for e in self.head[u]:
                v = self.to[e]
                if self.cap[e] > 0 and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen


def _denser_than(g: Graph, lam: Fraction) -> list[int] | None:
    """A vertex set whose edge/vertex ratio strictly exceeds ``lam``, or None.

    Min-cut formulation: a unit of supply per edge must reach the sink
    through its endpoints, each endpoint charging ``lam``.  Capacities are
    scaled by the denominator so the flow is pure integer arithmetic.
    """
    p, q = lam.numerator, lam.denominator
    m, n = g.m, g.n
    source, sink = 0, 1 + m + n
    net = _Dinic(m + n + 2)
    inf = m * q + 1
    for i, (u, v) in enumerate(g.edges()):
        net.add(source, 1 + i, q)
        net.add(1 + i, 1 + m + u, inf)
        net.add(1 + i, 1 + m + v, inf)
    for v in range(n):
        net.add(1 + m + v, sink, p)
    flow = net.maxflow(source, sink)
    if flow >= m * q:
        return None
    side = net.source_side(source)
    chosen = sorted(v for v in range(n) if (1 + m + v) in side)
    if not chosen:
        raise AlgorithmError("cut side empty despite slack in the flow")
    return chosen


def _edges_inside(g: Graph, vertices: list[int]) -> int:
    inside = set(vertices)
    return sum(1 for u, v in g.edges() if u in inside and v in inside)


def mad_exact(g: Graph) -> tuple[Fraction, tuple[int, ...]]:
    """Maximum average degree with an attaining vertex set.

    Binary search over density guesses, each answered exactly by a scaled
    integer max-flow; runs in polynomial time.  Distinct subgraph densities
    differ by at least 1/(n(n-1)), so the search stops once the bracket is
    tighter than 1/n^2 and returns the best witness's exact value.
    """
    if g.n == 0:
        raise ValidationError("density of the empty graph is undefined")
    if g.m == 0:
        return Fraction(0), (0,)
    n = g.n
    best_set = list(range(n))
    best = Fraction(g.m, n)
    lo, hi = best, Fraction(g.m + 1)
    thresh = Fraction(1, n * n)
    while hi - lo > thresh:
        mid = (lo + hi) / 2
        found = _denser_than(g, mid)
        if found is None:
            hi = mid
        else:
            lo = mid
            dens = Fraction(_edges_inside(g, found), len(found))
            if dens > best:
                best, best_set = dens, found
    return 2 * best, tuple(best_set)


def mad_bruteforce(g: Graph, cap: int | None = None) -> tuple[Fraction, tuple[int, ...]]:
    """Maximum average degree by subset enumeration; oracle for small graphs."""
    if g.n == 0:
        raise ValidationError("density of the empty graph is undefined")
    limit = cap if cap is not None else current_caps().mad_bruteforce
    if g.n > limit:
        raise CapExceededError(f"brute force needs n <= {limit}, got {g.n}")
    masks = g.masks
    n = g.n
    edge_count = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        edge_count[mask] = edge_count[rest] + (masks[low] & rest).bit_count()
    best = Fraction(-1)
    best_mask = 1
    for mask in range(1, 1 << n):
        val = Fraction(2 * edge_count[mask], mask.bit_count())
        if val > best:
            best, best_mask = val, mask
    return best, tuple(v for v in range(n) if best_mask >> v & 1)


def degeneracy(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Degeneracy and a witnessing elimination order (smallest id first on ties)."""
    adj = g.adjacency_sets()
    alive = set(range(g.n))
    order = []
    k = 0
    while alive:
        v = min(alive, key=lambda u: (len(adj[u]), u))
        k = max(k, len(adj[v]))
        order.append(v)
        for u in adj[v]:
            adj[u].discard(v)
        adj[v].clear()
        alive.discard(v)
    return k, tuple(order)


# ---------------------------------------------------------------------------
# densest shallow-subdivision preimage

@dataclass(frozen=True)
class SubdivisionWitness:
    """A dense graph realized inside the host with paths of length 1 or 2.

    ``branch[i]`` hosts base vertex i; ``paths`` aligns with
    ``base.edges()`` and lists each realizing path, either (u, v) for a host
    edge or (u, w, v) through a private division vertex.
    """

    base: Graph
    branch: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]


def validate_subdivision_witness(g: Graph, w: SubdivisionWitness) -> list[str]:
    """All the ways the witness fails to embed; empty when it is sound."""
    problems = []
    if len(w.branch) != w.base.n:
        problems.append("branch table length differs from base order")
        return problems
    if len(set(w.branch)) != len(w.branch):
        problems.append("branch vertices repeat")
    seen_mid: set[int] = set()
    base_edges = list(w.base.edges())
    if len(w.paths) != len(base_edges):
        problems.append("one path per base edge required")
        return problems
    branch_set = set(w.branch)
    for (a, b), route in zip(base_edges, w.paths):
        if len(route) not in (2, 3):
            problems.append(f"path {route} has bad length")
            continue
        if route[0] != w.branch[a] or route[-1] != w.branch[b]:
            problems.append(f"path {route} does not join branch vertices of ({a},{b})")
        for x, y in zip(route, route[1:]):
            if not (0 <= x < g.n and 0 <= y < g.n) or not g.has_edge(x, y):
                problems.append(f"missing host edge ({x},{y}) on path {route}")
        if len(route) == 3:
            mid = route[1]
            if mid in branch_set:
                problems.append(f"division vertex {mid} is also a branch vertex")
            if mid in seen_mid:
                problems.append(f"division vertex {mid} reused")
            seen_mid.add(mid)
    return problems


def _identity_witness(g: Graph, vertices: tuple[int, ...]) -> SubdivisionWitness:
    sub, old = induced_subgraph(g, vertices)
    paths = tuple((old[a], old[b]) for a, b in sub.edges())
    return SubdivisionWitness(base=sub, branch=old, paths=paths)


def top_grad_half(
    g: Graph, cap: int | None = None
) -> tuple[Fraction, SubdivisionWitness, str]:
    """Densest edge/vertex ratio over graphs with a (<=1)-subdivision in ``g``.

    Exhaustive over branch sets with branch-and-bound: internal host edges
    count directly, and the remaining pairs are matched to distinct outside
    common neighbours by bipartite matching.  Above the cap the densest
    subgraph is returned instead as a certified lower bound
    (method "heuristic-lower-bound").
    """
    if g.n == 0:
        raise ValidationError("density of the empty graph is undefined")
    limit = cap if cap is not None else current_caps().top_grad
    mad, mad_set = mad_exact(g)
    best_num = _edges_inside(g, list(mad_set))
    best_den = len(mad_set)
    best_info: tuple[list[int], list[tuple[int, int, int]]] | None = None
    if g.n > limit:
        witness = _identity_witness(g, tuple(mad_set))
        return Fraction(best_num, best_den), witness, "heuristic-lower-bound"

    n = g.n
    masks = g.masks
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    degs = [g.degree(v) for v in order]
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + degs[i]

    def evaluate(s_bits: list[int], s_mask: int, e_in: int) -> None:
        nonlocal best_num, best_den, best_info
        size = len(s_bits)
        missing = [
            (u, v)
            for i, u in enumerate(s_bits)
            for v in s_bits[i + 1 :]
            if not masks[u] >> v & 1
        ]
        ub = e_in + min(len(missing), n - size)
        if ub * best_den <= best_num * size:
            return
        cand_masks = [masks[u] & masks[v] & ~s_mask for u, v in missing]
        rights = sorted(set().union(*(_bits(cm) for cm in cand_masks)) if cand_masks else set())
        index = {w: j for j, w in enumerate(rights)}
        adj = [[index[w] for w in _bits(cm)] for cm in cand_masks]
        msize, match_l, _ = max_bipartite_matching(len(missing), len(rights), adj)
        val = e_in + msize
        if val * best_den > best_num * size:
            best_num, best_den = val, size
            pairs = [
                (u, v, rights[match_l[i]])
                for i, (u, v) in enumerate(missing)
                if match_l[i] != -1
            ]
            best_info = (list(s_bits), pairs)

    def visit(s_bits: list[int], s_mask: int, e_in: int, start: int) -> None:
        if s_bits:
            evaluate(s_bits, s_mask, e_in)
        size = len(s_bits)
        # bound every extension by j more vertices: edges gained at most the
        # j largest remaining degrees, matching at most the leftover vertices
        feasible = False
        for j in range(1, n - start + 1):
            gain = suffix[start] - suffix[start + j]
            tot = size + j
            ub = min(e_in + gain + (n - tot), tot * (tot - 1) // 2)
            if ub * best_den > best_num * tot:
                feasible = True
                break
        if not feasible:
            return
        for idx in range(start, n):
            v = order[idx]
            gained = (masks[v] & s_mask).bit_count()
            s_bits.append(v)
            visit(s_bits, s_mask | (1 << v), e_in + gained, idx + 1)
            s_bits.pop()

    visit([], 0, 0, 0)

    if best_info is None:
        witness = _identity_witness(g, tuple(mad_set))
        return Fraction(best_num, best_den), witness, "brute-force"
    s_bits, pairs = best_info
    branch = tuple(sorted(s_bits))
    pos = {v: i for i, v in enumerate(branch)}
    base_edges = set()
    routes: dict[tuple[int, int], tuple[int, ...]] = {}
    for i, u in enumerate(branch):
        for v in branch[i + 1 :]:
            if masks[u] >> v & 1:
                base_edges.add((pos[u], pos[v]))
                routes[(pos[u], pos[v])] = (u, v)
    for u, v, w in pairs:
        a, b = min(pos[u], pos[v]), max(pos[u], pos[v])
        base_edges.add((a, b))
        routes[(a, b)] = (branch[a], w, branch[b])
    base = Graph(len(branch), sorted(base_edges))
    paths = tuple(routes[e] for e in base.edges())
    witness = SubdivisionWitness(base=base, branch=branch, paths=paths)
    bugs = validate_subdivision_witness(g, witness)
    if bugs:
        raise AlgorithmError(f"constructed witness fails validation: {bugs[0]}")
    return Fraction(best_num, best_den), witness, "brute-force"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


# ---------------------------------------------------------------------------
# combined report

@dataclass(frozen=True)
class DensityReport:
    mad: Fraction
    mad_witness: tuple[int, ...]
    degeneracy: int
    top_grad_half: Fraction
    top_grad_method: str

    def to_payload(self) -> dict:
        return {
            "mad": str(self.mad),
            "mad_witness": list(self.mad_witness),
            "degeneracy": self.degeneracy,
            "top_grad_half": str(self.top_grad_half),
            "top_grad_method": self.top_grad_method,
        }


def build_report(g: Graph, top_grad_cap: int | None = None) -> DensityReport:
    mad, wit = mad_exact(g)
    k, _ = degeneracy(g)
    tg, _, method = top_grad_half(g, cap=top_grad_cap)
    return DensityReport(
        mad=mad,
        mad_witness=wit,
        degeneracy=k,
        top_grad_half=tg,
        top_grad_method=method,
    )
