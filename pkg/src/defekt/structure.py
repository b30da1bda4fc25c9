"""Structural certificate searches.

The centrepiece is the three-way dichotomy: a graph whose density obeys the
caller-certified bounds must contain a low-degree vertex, a light edge, or a
starred complete-bipartite pattern.  All searches are deterministic
(lexicographic tie-breaks) and every certificate can be re-validated by a
pure function here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import floor

from .bounds import n1
from .caps import current_caps
from .errors import CapExceededError, PreconditionRefutedError, ValidationError
from .graphs import Graph, bits_of, component_mask
from .matching import max_bipartite_matching


# ---------------------------------------------------------------------------
# certificate types

@dataclass(frozen=True)
class LowDegreeVertex:
    vertex: int
    degree: int

    kind = "low-degree-vertex"

    def to_payload(self) -> dict:
        return {"kind": self.kind, "vertex": self.vertex, "degree": self.degree}


@dataclass(frozen=True)
class LightEdge:
    edge: tuple[int, int]
    degrees: tuple[int, int]

    kind = "light-edge"

    def to_payload(self) -> dict:
        return {"kind": self.kind, "edge": list(self.edge), "degrees": list(self.degrees)}


@dataclass(frozen=True)
class KstStarEmbedding:
    """K_{s,t} plus one private common neighbour per pair of the s-side.

    ``centres`` is the s-side, ``outer`` the t vertices adjacent to every
    centre, and ``pair_vertices`` assigns each centre pair its extra common
    neighbour.
    """

    centres: tuple[int, ...]
    outer: tuple[int, ...]
    pair_vertices: tuple[tuple[tuple[int, int], int], ...]

    kind = "kst-star"

    def to_payload(self) -> dict:
        return {
            "kind": self.kind,
            "centres": list(self.centres),
            "outer": list(self.outer),
            "pair_vertices": [[list(p), w] for p, w in self.pair_vertices],
        }


DichotomyCertificate = LowDegreeVertex | LightEdge | KstStarEmbedding


@dataclass(frozen=True)
class MinorModel:
    """Disjoint connected branch sets indexed by pattern vertex."""

    branch_sets: tuple[tuple[int, ...], ...]

    kind = "minor-model"

    def to_payload(self) -> dict:
        return {"kind": self.kind, "branch_sets": [list(b) for b in self.branch_sets]}


# ---------------------------------------------------------------------------
# the easy searches

def find_light_edge(g: Graph, ell: int) -> tuple[int, int] | None:
    """Lexicographically least edge whose endpoints both have degree <= ell."""
    if ell < 0:
        raise ValidationError("light-edge threshold must be non-negative")
    for u, v in g.edges():
        if g.degree(u) <= ell and g.degree(v) <= ell:
            return (u, v)
    return None


def find_kst_star(g: Graph, s: int, t: int) -> KstStarEmbedding | None:
    """Search for the starred K_{s,t} pattern as a subgraph.

    Centres are tried in lexicographic order; for each centre set the outer
    vertices and the pair vertices are filled in simultaneously by a
    bipartite matching over the candidate pools, so overlap between the
    pools is handled exactly.
    """
    if s < 1 or t < 1:
        raise ValidationError("need s >= 1 and t >= 1")
    need = s + t + s * (s - 1) // 2
    if g.n < need:
        return None
    masks = g.masks
    full = (1 << g.n) - 1
    min_deg = t + s - 1
    cands = [v for v in g.vertices() if g.degree(v) >= min_deg]
    n_pairs = s * (s - 1) // 2
    for centres in combinations(cands, s):
        amask = 0
        for a in centres:
            amask |= 1 << a
        common = full & ~amask
        for a in centres:
            common &= masks[a]
        if common.bit_count() < t:
            continue
        pairs = list(combinations(centres, 2))
        pair_cands = [masks[u] & masks[v] & ~amask for u, v in pairs]
        if any(pc == 0 for pc in pair_cands):
            continue
        right_mask = common
        for pc in pair_cands:
            right_mask |= pc
        rights = bits_of(right_mask)
        index = {w: i for i, w in enumerate(rights)}
        adj = [[index[w] for w in bits_of(pc)] for pc in pair_cands]
        common_slots = [index[w] for w in bits_of(common)]
        adj.extend([common_slots] * t)
        size, match_l, _ = max_bipartite_matching(len(adj), len(rights), adj)
        if size == len(adj):
            pair_vertices = tuple(
                ((u, v), rights[match_l[i]]) for i, (u, v) in enumerate(pairs)
            )
            outer = tuple(sorted(rights[match_l[n_pairs + j]] for j in range(t)))
            return KstStarEmbedding(
                centres=tuple(centres), outer=outer, pair_vertices=pair_vertices
            )
    return None


def validate_kst_star(g: Graph, emb: KstStarEmbedding, s: int, t: int) -> list[str]:
    problems = []
    if len(emb.centres) != s:
        problems.append(f"expected {s} centres, got {len(emb.centres)}")
    if len(emb.outer) != t:
        problems.append(f"expected {t} outer vertices, got {len(emb.outer)}")
    expected_pairs = set(combinations(sorted(emb.centres), 2))
    got_pairs = {tuple(sorted(p)) for p, _ in emb.pair_vertices}
    if got_pairs != expected_pairs:
        problems.append("pair vertices do not cover exactly the centre pairs")
    everyone = list(emb.centres) + list(emb.outer) + [w for _, w in emb.pair_vertices]
    if len(set(everyone)) != len(everyone):
        problems.append("embedding vertices are not distinct")
    if any(not 0 <= v < g.n for v in everyone):
        problems.append("vertex out of range")
        return problems
    for w in emb.outer:
        for a in emb.centres:
            if not g.has_edge(w, a):
                problems.append(f"outer {w} misses centre {a}")
    for (u, v), w in emb.pair_vertices:
        if not (g.has_edge(w, u) and g.has_edge(w, v)):
            problems.append(f"pair vertex {w} misses ({u},{v})")
    return problems


# ---------------------------------------------------------------------------
# the dichotomy

def dichotomy_threshold(s: int, t: int, delta, delta1) -> int:
    return floor(n1(s, t, delta, delta1))


def structural_dichotomy(
    g: Graph, s: int, t: int, delta, delta1
) -> DichotomyCertificate:
    """Produce one of the three certificates the density bounds promise.

    ``delta`` must bound the average degree of every subgraph and ``delta1``
    the average degree of every exact-1-subdivision preimage; both are the
    caller's responsibility.  If all three searches fail, those bounds were
    wrong, and the graph itself is raised as the refutation.
    """
    if g.n == 0:
        raise ValidationError("dichotomy needs at least one vertex")
    for v in g.vertices():
        if g.degree(v) <= s - 1:
            return LowDegreeVertex(vertex=v, degree=g.degree(v))
    # the density arguments are only consulted once the graph has no
    # low-degree vertex, so edgeless inputs never reach them
    ell = dichotomy_threshold(s, t, delta, delta1)
    if ell >= 0:
        edge = find_light_edge(g, ell)
        if edge is not None:
            u, v = edge
            return LightEdge(edge=edge, degrees=(g.degree(u), g.degree(v)))
    emb = find_kst_star(g, s, t)
    if emb is not None:
        return emb
    raise PreconditionRefutedError(
        f"no certificate for s={s}, t={t}, delta={delta}, delta1={delta1}, "
        f"ell={ell}: the stated density bounds cannot hold",
        witness=g,
    )


def validate_certificate(
    g: Graph, cert: DichotomyCertificate, s: int, t: int, ell: int
) -> list[str]:
    """Check any dichotomy certificate against the graph; empty means sound."""
    if isinstance(cert, LowDegreeVertex):
        if not 0 <= cert.vertex < g.n:
            return ["vertex out of range"]
        if g.degree(cert.vertex) != cert.degree:
            return ["recorded degree is wrong"]
        if cert.degree > s - 1:
            return [f"degree {cert.degree} exceeds s-1 = {s - 1}"]
        return []
    if isinstance(cert, LightEdge):
        u, v = cert.edge
        if not (0 <= u < g.n and 0 <= v < g.n and g.has_edge(u, v)):
            return ["edge not in graph"]
        if (g.degree(u), g.degree(v)) != cert.degrees:
            return ["recorded degrees are wrong"]
        if max(cert.degrees) > ell:
            return [f"edge is not {ell}-light"]
        return []
    if isinstance(cert, KstStarEmbedding):
        return validate_kst_star(g, cert, s, t)
    return [f"unknown certificate {cert!r}"]


# ---------------------------------------------------------------------------
# exact minor containment

def minor_test_bruteforce(
    g: Graph,
    h: Graph,
    host_cap: int | None = None,
    pattern_cap: int | None = None,
) -> MinorModel | None:
    """Exhaustive branch-set search for ``h`` as a minor of ``g``.

    Branch sets are grown as connected subsets in a canonical order, pattern
    vertices are placed most-constrained-first, and interchangeable pattern
    vertices (twins) are broken by forcing their branch minima to increase.
    Exact within the caps; returns the first model found or None.
    """
    caps = current_caps()
    h_limit = pattern_cap if pattern_cap is not None else caps.minor_pattern
    g_limit = host_cap if host_cap is not None else caps.minor_host
    if g.n > g_limit:
        raise CapExceededError(f"host has {g.n} vertices, cap is {g_limit}")
    if h.n > h_limit:
        raise CapExceededError(f"pattern has {h.n} vertices, cap is {h_limit}")
    if h.n == 0:
        return MinorModel(branch_sets=())
    if h.n > g.n or h.m > g.m:
        return None

    n, q = g.n, h.n
    masks = g.masks
    full = (1 << n) - 1

    # placement order: most placed neighbours first, then degree, then id
    first = max(h.vertices(), key=lambda v: (h.degree(v), -v))
    order = [first]
    placed = {first}
    while len(order) < q:
        nxt = max(
            (v for v in h.vertices() if v not in placed),
            key=lambda v: (sum(1 for u in h.neighbours(v) if u in placed), h.degree(v), -v),
        )
        order.append(nxt)
        placed.add(nxt)
    pos = {v: i for i, v in enumerate(order)}

    # twin classes: pairwise-interchangeable pattern vertices; swapping two
    # of them is an automorphism, so their branch minima may be forced to
    # increase along the placement order
    def twins(u: int, v: int) -> bool:
        su = set(h.neighbours(u)) - {v}
        sv = set(h.neighbours(v)) - {u}
        return su == sv

    twin_prev: list[int | None] = [None] * q
    classes: list[list[int]] = []  # members as positions in `order`
    for i, v in enumerate(order):
        home = None
        for cls in classes:
            if all(twins(v, order[j]) for j in cls):
                home = cls
                break
        if home is None:
            classes.append([i])
        else:
            twin_prev[i] = home[-1]
            home.append(i)

    branch = [0] * q
    nbr_cache = [0] * q  # host neighbourhood mask of each placed branch set

    def connected_subsets(root: int, allowed: int, max_size: int):
        """All connected subsets containing root with the rest in allowed,
        each produced exactly once."""

        def grow(cur: int, cand: int):
            yield cur
            if cur.bit_count() >= max_size:
                return
            tried = 0
            c = cand
            while c:
                b = c & -c
                c ^= b
                v = b.bit_length() - 1
                ncur = cur | b
                ncand = ((cand | (masks[v] & allowed)) & ~ncur) & ~tried
                yield from grow(ncur, ncand)
                tried |= b

        yield from grow(1 << root, masks[root] & allowed)

    def place(i: int, used: int) -> bool:
        if i == q:
            return True
        hv = order[i]
        base_avail = full & ~used
        avail = base_avail
        tp = twin_prev[i]
        if tp is not None:
            lowest = branch[tp] & -branch[tp]
            avail &= ~((lowest << 1) - 1)
        remaining = q - i - 1
        # this branch set draws from avail, but later ones only need room
        # in the unrestricted pool; capping by avail alone prunes models
        max_size = min(avail.bit_count(), base_avail.bit_count() - remaining)
        if max_size <= 0:
            return False
        req = [nbr_cache[pos[u]] for u in h.neighbours(hv) if pos[u] < i]
        root_pool = avail
        if req:
            root_pool &= req[0]
        # adjacency needs of yet-unplaced pattern vertices: positions of
        # already-placed neighbours, and whether hv itself is one
        future = []
        for f in order[i + 1 :]:
            fplaced = [pos[u] for u in h.neighbours(f) if pos[u] < i]
            future.append((fplaced, hv in h.neighbours(f)))
        tried_roots = 0
        pool = root_pool
        while pool:
            b = pool & -pool
            pool ^= b
            root = b.bit_length() - 1
            allowed = avail & ~tried_roots & ~b
            for smask in connected_subsets(root, allowed, max_size):
                if any(not smask & r for r in req):
                    continue
                nb = 0
                rest = smask
                while rest:
                    sb = rest & -rest
                    rest ^= sb
                    nb |= masks[sb.bit_length() - 1]
                nb &= ~smask
                after = base_avail & ~smask
                ok = True
                for fplaced, adj_current in future:
                    if adj_current and not after & nb:
                        ok = False
                        break
                    for j in fplaced:
                        if not after & nbr_cache[j]:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    continue
                branch[i] = smask
                nbr_cache[i] = nb
                if place(i + 1, used | smask):
                    return True
            tried_roots |= b
        return False

    if not place(0, 0):
        return None
    sets: list[tuple[int, ...]] = [()] * q
    for i, hv in enumerate(order):
        sets[hv] = tuple(bits_of(branch[i]))
    model = MinorModel(branch_sets=tuple(sets))
    return model


def validate_minor_model(g: Graph, h: Graph, model: MinorModel) -> list[str]:
    problems = []
    if len(model.branch_sets) != h.n:
        return ["one branch set per pattern vertex required"]
    seen: set[int] = set()
    masks = g.masks
    for i, bset in enumerate(model.branch_sets):
        if not bset:
            problems.append(f"branch set {i} is empty")
            continue
        if any(not 0 <= v < g.n for v in bset):
            problems.append(f"branch set {i} out of range")
            continue
        overlap = seen.intersection(bset)
        if overlap:
            problems.append(f"branch sets overlap on {sorted(overlap)[:3]}")
        seen.update(bset)
        bmask = 0
        for v in bset:
            bmask |= 1 << v
        start = bmask & -bmask
        if component_mask(masks, bmask, start) != bmask:
            problems.append(f"branch set {i} is not connected")
    for u, v in h.edges():
        found = any(
            g.has_edge(x, y)
            for x in model.branch_sets[u]
            for y in model.branch_sets[v]
        )
        if not found:
            problems.append(f"no host edge between branch sets {u} and {v}")
    return problems


# ---------------------------------------------------------------------------
# small pattern invariants

def vertex_cover_number(g: Graph, cap: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Exact minimum vertex cover by branch and bound on the max-degree vertex."""
    limit = cap if cap is not None else current_caps().vertex_cover
    if g.n > limit:
        raise CapExceededError(f"vertex cover needs n <= {limit}, got {g.n}")
    masks = g.masks
    n = g.n
    best_size = n
    best_mask = (1 << n) - 1

    def rec(alive: int, cover: int, size: int) -> None:
        nonlocal best_size, best_mask
        if size >= best_size:
            return
        deg_best, v_best = 0, -1
        a = alive
        while a:
            b = a & -a
            a ^= b
            v = b.bit_length() - 1
            d = (masks[v] & alive).bit_count()
            if d > deg_best:
                deg_best, v_best = d, v
        if deg_best == 0:
            best_size, best_mask = size, cover
            return
        if deg_best == 1:
            # remaining edges form a matching; the smaller endpoint of each
            # suffices
            taken = 0
            handled = 0
            a = alive
            while a:
                b = a & -a
                a ^= b
                v = b.bit_length() - 1
                if handled >> v & 1:
                    continue
                nb = masks[v] & alive
                if nb:
                    taken |= b
                    handled |= b | nb
            extra = taken.bit_count()
            if size + extra < best_size:
                best_size, best_mask = size + extra, cover | taken
            return
        vb = 1 << v_best
        rec(alive & ~vb, cover | vb, size + 1)
        nbrs = masks[v_best] & alive
        rec(alive & ~nbrs & ~vb, cover | nbrs, size + nbrs.bit_count())

    rec((1 << n) - 1, 0, 0)
    return best_size, tuple(bits_of(best_mask))


def tree_depth(g: Graph, cap: int | None = None) -> int:
    """Exact tree-depth by memoized component recursion."""
    limit = cap if cap is not None else current_caps().tree_depth
    if g.n > limit:
        raise CapExceededError(f"tree depth needs n <= {limit}, got {g.n}")
    if g.n == 0:
        return 0
    masks = g.masks
    memo: dict[int, int] = {}

    def td(mask: int) -> int:
        count = mask.bit_count()
        if count <= 1:
            return count
        cached = memo.get(mask)
        if cached is not None:
            return cached
        comp = component_mask(masks, mask, mask & -mask)
        if comp != mask:
            val = max(td(comp), td(mask ^ comp))
        else:
            floor_bound = (count + 1).bit_length() - 1
            if (1 << floor_bound) < count + 1:
                floor_bound += 1
            # connected: remove the best vertex
            val = count
            rest = mask
            while rest:
                b = rest & -rest
                rest ^= b
                cur = 1 + td(mask ^ b)
                if cur < val:
                    val = cur
                    if val == floor_bound:
                        break
        memo[mask] = val
        return val

    return td((1 << g.n) - 1)


def is_star_plus_isolated(h: Graph) -> tuple[int, int] | None:
    """Decompose ``h`` as one star plus isolated vertices, if possible.

    Returns (leaves, isolated) or None.  An edgeless graph counts: its star
    is a single vertex.
    """
    if h.n == 0:
        return None
    positive = [v for v in h.vertices() if h.degree(v) > 0]
    if not positive:
        return (0, h.n - 1)
    if h.m == 1:
        return (1, h.n - 2)
    centre = max(positive, key=lambda v: (h.degree(v), -v))
    if h.degree(centre) != len(positive) - 1 or h.m != len(positive) - 1:
        return None
    if any(h.degree(v) != 1 for v in positive if v != centre):
        return None
    return (h.degree(centre), h.n - len(positive))
