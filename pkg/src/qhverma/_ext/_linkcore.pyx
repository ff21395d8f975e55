# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled twin of qhverma._linkcore_py.search (same contract)."""
from libcpp.unordered_map cimport unordered_map
from libcpp.deque cimport deque
from libcpp.vector cimport vector
from libcpp.utility cimport pair

ctypedef long long i64

cdef struct Edge:
    i64 prev
    int pos
    i64 c


def search(bound, roots, long long budget):
    cdef int r = len(bound)
    cdef int m = len(roots)
    cdef vector[i64] K = bound
    cdef vector[i64] stride = vector[i64](r)
    cdef vector[i64] d = vector[i64](m)
    cdef vector[i64] coeff = vector[i64](m * r)
    cdef vector[i64] row = vector[i64](m * r)
    cdef i64 total = 1
    cdef int j, p
    for j in range(r):
        stride[j] = total
        if K[j] + 1 > ((<i64>1) << 62) // total:
            raise OverflowError("search box too large for the compiled kernel")
        total *= K[j] + 1
    for p in range(m):
        d[p] = roots[p][0]
        for j in range(r):
            coeff[p * r + j] = roots[p][1][j]
            row[p * r + j] = roots[p][2][j]

    cdef i64 target = 0
    for j in range(r):
        target += K[j] * stride[j]
    if target == 0:
        return 0, [], 1

    cdef unordered_map[i64, Edge] parent
    cdef deque[i64] queue
    cdef vector[i64] k = vector[i64](r)
    cdef Edge e
    cdef i64 state, nxt, c, v, rem, explored = 1
    cdef bint ok
    e.prev = -1
    e.pos = -1
    e.c = 0
    parent[0] = e
    queue.push_back(0)
    while not queue.empty():
        state = queue.front()
        queue.pop_front()
        rem = state
        for j in range(r):
            k[j] = rem % (K[j] + 1)
            rem //= K[j] + 1
        for p in range(m):
            c = d[p]
            for j in range(r):
                c -= k[j] * row[p * r + j]
            if c < 1:
                continue
            ok = True
            nxt = 0
            for j in range(r):
                v = k[j] + c * coeff[p * r + j]
                if v > K[j]:
                    ok = False
                    break
                nxt += v * stride[j]
            if not ok or parent.count(nxt):
                continue
            e.prev = state
            e.pos = p
            e.c = c
            parent[nxt] = e
            if nxt == target:
                path = []
                while parent[nxt].prev != -1:
                    e = parent[nxt]
                    path.append((e.pos, e.c))
                    nxt = e.prev
                path.reverse()
                return 0, path, explored + 1
            explored += 1
            if explored > budget:
                return 2, [], explored
            queue.push_back(nxt)
    return 1, [], explored
