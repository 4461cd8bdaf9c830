"""Maximum cardinality matching in general graphs.

Classic blossom-contraction augmenting search (per-phase BFS with base
pointers), O(V^3).  Deterministic: vertices are scanned in ascending order,
so equal inputs give equal matchings.  Small and self-contained; the
antimatching search drives it on candidate edge sets.
"""

from __future__ import annotations

from collections import deque


def maximum_matching(n: int, adj: list[set[int]]) -> list[int]:
    """Return ``match`` with ``match[v]`` the partner of v or -1.

    ``adj`` is an undirected adjacency list over vertices 0..n-1.
    """
    match = [-1] * n
    parent = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        used = [False] * n
        while True:
            a = base[a]
            used[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if used[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_augmenting_path(root: int) -> bool:
        for i in range(n):
            parent[i] = -1
            base[i] = i
        used = [False] * n
        used[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in sorted(adj[v]):
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    # Odd cycle: contract the blossom at the common base.
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        # Augment along the alternating path back to root.
                        while to != -1:
                            v2 = parent[to]
                            nxt = match[v2]
                            match[v2] = to
                            match[to] = v2
                            to = nxt
                        return True
                    used[match[to]] = True
                    q.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1 and adj[v]:
            find_augmenting_path(v)
    return match


def maximum_matching_size(n: int, edges: list[tuple[int, int]]) -> int:
    """Cardinality of a maximum matching of the given undirected edges."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    match = maximum_matching(n, adj)
    return sum(1 for v in range(n) if match[v] != -1) // 2
