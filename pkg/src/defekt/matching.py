"""Maximum bipartite matching by augmenting paths.

Kuhn's algorithm, iterating left vertices in index order, so results are
deterministic for a fixed input.  Fine for the matchings this package needs
(tens of vertices); swap in Hopcroft-Karp if that ever changes.
"""

from __future__ import annotations

from collections.abc import Sequence


def max_bipartite_matching(
    num_left: int, num_right: int, adj: Sequence[Sequence[int]]
) -> tuple[int, list[int], list[int]]:
    """Match left vertices to right ones along ``adj[i]`` candidate lists.

    Returns (size, match_left, match_right) with -1 marking unmatched.
    """
    match_l = [-1] * num_left
    match_r = [-1] * num_right

    def augment(i: int, seen: list[bool]) -> bool:
        for j in adj[i]:
            if not seen[j]:
                seen[j] = True
                if match_r[j] == -1 or augment(match_r[j], seen):
                    match_l[i] = j
                    match_r[j] = i
                    return True
        return False

    size = 0
    for i in range(num_left):
        if augment(i, [False] * num_right):
            size += 1
    return size, match_l, match_r
