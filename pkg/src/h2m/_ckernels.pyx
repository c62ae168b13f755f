# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled rank-arithmetic kernels; same contract as ``h2m._pykernels``."""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint64_t


cdef inline Py_ssize_t _find(const uint64_t[::1] skeys, uint64_t key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = skeys.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if skeys[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline int32_t _mul(const int32_t[:, ::1] perms, const int32_t[:, ::1] bimg,
                         const uint64_t[::1] pw, const uint64_t[::1] skeys,
                         const int32_t[::1] sranks, Py_ssize_t a, Py_ssize_t b) noexcept nogil:
    cdef uint64_t key = 0
    cdef Py_ssize_t k
    for k in range(bimg.shape[1]):
        key += <uint64_t>perms[b, bimg[a, k]] * pw[k]
    return sranks[_find(skeys, key)]


def mul_pairs(const int32_t[:, ::1] perms, const int32_t[:, ::1] bimg,
              const uint64_t[::1] pw, const uint64_t[::1] skeys,
              const int32_t[::1] sranks, a, b):
    a_arr, b_arr = np.broadcast_arrays(np.asarray(a, dtype=np.int64),
                                       np.asarray(b, dtype=np.int64))
    shape = a_arr.shape
    cdef const int64_t[::1] av = np.ascontiguousarray(a_arr).ravel()
    cdef const int64_t[::1] bv = np.ascontiguousarray(b_arr).ravel()
    out = np.empty(av.shape[0], dtype=np.int32)
    cdef int32_t[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(av.shape[0]):
            ov[i] = _mul(perms, bimg, pw, skeys, sranks, av[i], bv[i])
    return out.reshape(shape)


def closure(const int32_t[:, ::1] perms, const int32_t[:, ::1] bimg,
            const uint64_t[::1] pw, const uint64_t[::1] skeys,
            const int32_t[::1] sranks, members, gens, Py_ssize_t bound):
    cdef Py_ssize_t n = perms.shape[0]
    cdef const int64_t[::1] hv = np.ascontiguousarray(members, dtype=np.int64)
    cdef const int64_t[::1] gv = np.ascontiguousarray(gens, dtype=np.int64)
    cdef Py_ssize_t hsize = hv.shape[0], ng = gv.shape[0]
    if hsize > bound:
        return None
    mask_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] mask = mask_arr
    cap = min(n, bound + hsize) + 1
    out_arr = np.empty(cap, dtype=np.int32)
    reps_arr = np.empty(cap, dtype=np.int32)
    cdef int32_t[::1] out = out_arr
    cdef int32_t[::1] reps = reps_arr
    cdef Py_ssize_t size = 0, nreps = 1, ri = 0, gi, hi
    cdef int32_t r, t, x
    cdef bint overflow = False
    with nogil:
        for hi in range(hsize):
            mask[hv[hi]] = 1
            out[size] = <int32_t>hv[hi]
            size += 1
        reps[0] = 0
        while ri < nreps and not overflow:
            r = reps[ri]
            ri += 1
            for gi in range(ng):
                t = _mul(perms, bimg, pw, skeys, sranks, r, gv[gi])
                if mask[t]:
                    continue
                if size + hsize > bound:
                    overflow = True
                    break
                for hi in range(hsize):
                    x = _mul(perms, bimg, pw, skeys, sranks, hv[hi], t)
                    mask[x] = 1
                    out[size] = x
                    size += 1
                reps[nreps] = t
                nreps += 1
    if overflow:
        return None
    return np.sort(out_arr[:size])
