# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled composition kernels.

Both chip semantics reduce to pure 4-bit integer arithmetic: min-max
composition combines with min/max only, and max-product combines the
integer activation (0..15) with the integer consequent level (0..15),
giving products in 0..225 that callers rescale to reals.  Keeping the
kernels integer-exact makes the compiled and pure backends bit-identical.
"""


def minmax_fill(const unsigned char[:, :, ::1] ant,
                const unsigned char[:, :, ::1] con,
                const unsigned char[:, ::1] levels,
                unsigned char[:, ::1] activations,
                unsigned char[:, :, ::1] memberships):
    """Fill per-state activations and min-max output memberships.

    ant: [rules, inputs, 16], con: [rules, outputs, 16], levels: [states, inputs].
    """
    cdef Py_ssize_t S = levels.shape[0]
    cdef Py_ssize_t R = ant.shape[0]
    cdef Py_ssize_t NI = ant.shape[1]
    cdef Py_ssize_t NO = con.shape[1]
    cdef Py_ssize_t s, r, j, o, k
    cdef unsigned char a, v, c, m, best

    for s in range(S):
        for r in range(R):
            a = 15
            for j in range(NI):
                v = ant[r, j, levels[s, j]]
                if v < a:
                    a = v
            activations[s, r] = a
        for o in range(NO):
            for k in range(16):
                best = 0
                for r in range(R):
                    c = con[r, o, k]
                    a = activations[s, r]
                    m = a if a < c else c
                    if m > best:
                        best = m
                memberships[s, o, k] = best


def product_fill(const unsigned char[:, :, ::1] ant,
                 const unsigned char[:, :, ::1] con,
                 const unsigned char[:, ::1] levels,
                 unsigned char[:, ::1] activations,
                 unsigned char[:, :, ::1] memberships):
    """Max-product variant; memberships are scaled by 225 (= 15 * 15)."""
    cdef Py_ssize_t S = levels.shape[0]
    cdef Py_ssize_t R = ant.shape[0]
    cdef Py_ssize_t NI = ant.shape[1]
    cdef Py_ssize_t NO = con.shape[1]
    cdef Py_ssize_t s, r, j, o, k
    cdef unsigned char a, v
    cdef int m, best

    for s in range(S):
        for r in range(R):
            a = 15
            for j in range(NI):
                v = ant[r, j, levels[s, j]]
                if v < a:
                    a = v
            activations[s, r] = a
        for o in range(NO):
            for k in range(16):
                best = 0
                for r in range(R):
                    m = activations[s, r] * con[r, o, k]
                    if m > best:
                        best = m
                memberships[s, o, k] = <unsigned char> best
