# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled relaxation kernel.

Statement-for-statement twin of ``_bf_py.bellman_ford``; see that module
for the algorithm notes.  The arithmetic is plain IEEE double addition
and comparison in the same order, so results agree with the pure-Python
kernel bit for bit (the build deliberately avoids -ffast-math).
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc


def bellman_ford(int n_vertices, tails, heads, weights):
    cdef int[::1] t = tails
    cdef int[::1] h = heads
    cdef double[::1] w = weights
    cdef int n_arcs = t.shape[0]

    cdef double* dist = <double*> PyMem_Malloc(n_vertices * sizeof(double))
    cdef int* pred = <int*> PyMem_Malloc(n_vertices * sizeof(int))
    if dist == NULL or pred == NULL:
        PyMem_Free(dist)
        PyMem_Free(pred)
        raise MemoryError()

    cdef int i, a, p, v, start, improved, last_improved
    cdef double cand
    cdef list out_dist, cycle

    try:
        for i in range(n_vertices):
            dist[i] = 0.0
            pred[i] = -1

        last_improved = -1
        for i in range(n_vertices):
            improved = -1
            for a in range(n_arcs):
                cand = dist[t[a]] + w[a]
                if cand < dist[h[a]]:
                    dist[h[a]] = cand
                    pred[h[a]] = a
                    improved = h[a]
            if improved < 0:
                out_dist = [dist[i] for i in range(n_vertices)]
                return out_dist, None
            last_improved = improved

        v = last_improved
        for i in range(n_vertices):
            p = pred[v]
            if p < 0:
                raise RuntimeError("predecessor walk left the improved region")
            v = t[p]

        start = v
        cycle = []
        while True:
            p = pred[v]
            if p < 0 or len(cycle) > n_vertices:
                raise RuntimeError("predecessor graph lost the cycle")
            cycle.append(p)
            v = t[p]
            if v == start:
                break
        cycle.reverse()
        out_dist = [dist[i] for i in range(n_vertices)]
        return out_dist, cycle
    finally:
        PyMem_Free(dist)
        PyMem_Free(pred)
