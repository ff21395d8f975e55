"""Breadth-first link search over the integer box 0 <= k <= bound.

A state k stands for the weight delta - sum_j k[j] alpha_j.  Each root is
given as ``(d, coeff, row)`` where ``d`` is the pairing of delta with the
coroot, ``coeff`` its simple-root coefficients and ``row[j]`` the pairing of
alpha_j with the coroot.  A step along a root with pairing c >= 1 adds
c * coeff to k.  Roots are tried in list order, so the first path found is
the lexicographically smallest among the shortest ones.

Returns ``(status, path, explored)`` with status 0 = found, 1 = exhausted,
2 = budget hit; ``path`` lists (root position, pairing) pairs.
"""
from collections import deque

FOUND, EXHAUSTED, BUDGET_HIT = 0, 1, 2


def search(bound, roots, budget):
    r = len(bound)
    start = (0,) * r
    target = tuple(bound)
    if start == target:
        return FOUND, [], 1
    parent = {start: None}
    queue = deque([start])
    explored = 1
    while queue:
        k = queue.popleft()
        for pos, (d, coeff, row) in enumerate(roots):
            c = d
            for j in range(r):
                c -= k[j] * row[j]
            if c < 1:
                continue
            nxt = []
            ok = True
            for j in range(r):
                v = k[j] + c * coeff[j]
                if v > bound[j]:
                    ok = False
                    break
                nxt.append(v)
            if not ok:
                continue
            nxt = tuple(nxt)
            if nxt in parent:
                continue
            parent[nxt] = (k, pos, c)
            if nxt == target:
                path = []
                node = nxt
                while parent[node] is not None:
                    prev, p, cc = parent[node]
                    path.append((p, cc))
                    node = prev
                path.reverse()
                return FOUND, path, explored + 1
            explored += 1
            if explored > budget:
                return BUDGET_HIT, [], explored
            queue.append(nxt)
    return EXHAUSTED, [], explored
