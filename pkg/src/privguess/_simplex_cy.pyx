# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled simplex pivot kernel.

Mirrors ``_simplex_py.run_simplex`` exactly (same pivot choices, same float
operations, no FMA contraction); see that module for the layout contract.
"""

STATUS_OPTIMAL = 0
STATUS_UNBOUNDED = 1
STATUS_BUDGET = 2

BACKEND = "compiled"


def run_simplex(double[:, ::1] tableau, long long[::1] basis, Py_ssize_t n_enter,
                double pivot_tol, long long max_iter):
    """Pivot ``tableau`` in place; returns ``(status, iterations)``."""
    cdef Py_ssize_t m = tableau.shape[0] - 1
    cdef Py_ssize_t ncols = tableau.shape[1]
    cdef Py_ssize_t rhs = ncols - 1
    cdef Py_ssize_t j, r, i, c
    cdef long long it = 0
    cdef double best, ratio, piv, f
    cdef bint found

    while True:
        j = -1
        for c in range(n_enter):
            if tableau[m, c] > pivot_tol:
                j = c
                break
        if j < 0:
            return STATUS_OPTIMAL, it

        r = -1
        best = 0.0
        found = False
        for i in range(m):
            if tableau[i, j] > pivot_tol:
                ratio = tableau[i, rhs] / tableau[i, j]
                if not found or ratio < best or (ratio == best and basis[i] < basis[r]):
                    r = i
                    best = ratio
                    found = True
        if not found:
            return STATUS_UNBOUNDED, it

        piv = tableau[r, j]
        for c in range(ncols):
            tableau[r, c] /= piv
        tableau[r, j] = 1.0
        for i in range(m + 1):
            if i == r:
                continue
            f = tableau[i, j]
            if f != 0.0:
                for c in range(ncols):
                    tableau[i, c] -= f * tableau[r, c]
            tableau[i, j] = 0.0
        tableau[r, j] = 1.0
        basis[r] = j

        it += 1
        if it >= max_iter:
            return STATUS_BUDGET, it
