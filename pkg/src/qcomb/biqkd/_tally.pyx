# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled round sampler; mirrors ``_tally_py`` decision for decision."""

cimport cython


def tally(const double[:, ::1] u,
          const double[:, :, :, ::1] guess_cum,
          const double[:, :, :, :, ::1] p_first,
          const signed char[:, :, ::1] decode,
          double net_w0,
          long long[::1] totals,
          long long[:, :, ::1] eve):
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t r
    cdef int inp, enc, net, guess, shifted, outcome, dec
    cdef long long conclusive = 0, errors = 0
    with nogil:
        for r in range(n):
            inp = <int>(u[r, 0] * 4.0)
            enc = 1 if u[r, 1] >= 0.5 else 0
            net = 1 if u[r, 2] >= net_w0 else 0
            guess = 0
            while guess < 3 and u[r, 3] >= guess_cum[inp, enc, net, guess]:
                guess += 1
            shifted = 1 if u[r, 4] >= 0.5 else 0
            outcome = 1 if u[r, 5] >= p_first[inp, enc, net, guess, shifted] else 0
            dec = decode[inp, shifted, outcome]
            eve[net, guess, enc] += 1
            if dec >= 0:
                conclusive += 1
                if dec != enc:
                    errors += 1
    totals[0] += conclusive
    totals[1] += errors
