# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend.

Mirrors ``pure.py`` exactly: same PCG32 stream (XSH-RR, fixed sequence 54),
same selection thresholds, same double-precision expression tree in the
resampler.  Outputs are bit-identical to the pure backend by construction
and by test.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport floor
from libc.stdint cimport int64_t, uint8_t, uint32_t, uint64_t

cnp.import_array()

BACKEND = "compiled"

cdef uint64_t _MULT = <uint64_t>6364136223846793005
cdef uint64_t _INC = <uint64_t>109  # (54 << 1) | 1


cdef inline uint32_t _output(uint64_t state) nogil:
    cdef uint32_t xorshifted = <uint32_t>(((state >> 18) ^ state) >> 27)
    cdef uint32_t rot = <uint32_t>(state >> 59)
    return (xorshifted >> rot) | (xorshifted << ((32 - rot) & 31))


def pcg32_init(seed):
    cdef uint64_t state = _INC
    state = state + <uint64_t>seed
    return state * _MULT + _INC


def pcg32_next(state):
    cdef uint64_t s = <uint64_t>state
    return _output(s), s * _MULT + _INC


def pcg32_fill(state, count):
    cdef uint64_t s = <uint64_t>state
    cdef Py_ssize_t n = count
    cdef cnp.ndarray[cnp.uint32_t, ndim=1] out = np.empty(n, dtype=np.uint32)
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = _output(s)
        s = s * _MULT + _INC
    return out, s


cdef inline uint32_t _below(uint64_t* state, uint32_t bound) nogil:
    cdef uint32_t threshold = <uint32_t>(((<uint64_t>1) << 32) % bound)
    cdef uint32_t value
    while True:
        value = _output(state[0])
        state[0] = state[0] * _MULT + _INC
        if value >= threshold:
            return value % bound


def pcg32_below(state, bound):
    cdef uint64_t s
    cdef uint32_t value
    if bound <= 0:
        raise ValueError(f"bound must be positive, got {bound}")
    s = <uint64_t>state
    value = _below(&s, <uint32_t>bound)
    return value, s


def subset_permutation(state, n, p):
    cdef uint64_t s = <uint64_t>state
    cdef Py_ssize_t size = n
    cdef uint64_t threshold = <uint64_t>(p * 4294967296.0 + 0.5)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] src = np.arange(size, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] selected = np.empty(size, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] contents
    cdef Py_ssize_t i, m = 0
    cdef int64_t tmp
    cdef uint32_t j

    for i in range(size):
        if <uint64_t>_output(s) < threshold:
            selected[m] = i
            m += 1
        s = s * _MULT + _INC

    contents = selected[:m].copy()
    for i in range(m - 1, 0, -1):
        j = _below(&s, <uint32_t>(i + 1))
        tmp = contents[i]
        contents[i] = contents[j]
        contents[j] = tmp

    for i in range(m):
        src[selected[i]] = contents[i]
    return src, s


def resize_bilinear(img, out_h, out_w):
    cdef const uint8_t[:, :, ::1] pix = np.ascontiguousarray(img, dtype=np.uint8)
    cdef Py_ssize_t in_h = pix.shape[0]
    cdef Py_ssize_t in_w = pix.shape[1]
    cdef Py_ssize_t nc = pix.shape[2]
    cdef Py_ssize_t oh = out_h, ow = out_w
    cdef cnp.ndarray[cnp.uint8_t, ndim=3] out = np.empty((oh, ow, nc), dtype=np.uint8)
    cdef uint8_t[:, :, ::1] dst = out
    cdef double scale_y = in_h / <double>oh
    cdef double scale_x = in_w / <double>ow
    cdef Py_ssize_t i, j, c, y0, y1, x0, x1
    cdef double sy, sx, fy, fx, value

    for i in range(oh):
        sy = (i + 0.5) * scale_y - 0.5
        if sy < 0.0:
            sy = 0.0
        if sy > in_h - 1.0:
            sy = in_h - 1.0
        y0 = <Py_ssize_t>floor(sy)
        fy = sy - y0
        y1 = y0 + 1 if y0 + 1 < in_h else in_h - 1
        for j in range(ow):
            sx = (j + 0.5) * scale_x - 0.5
            if sx < 0.0:
                sx = 0.0
            if sx > in_w - 1.0:
                sx = in_w - 1.0
            x0 = <Py_ssize_t>floor(sx)
            fx = sx - x0
            x1 = x0 + 1 if x0 + 1 < in_w else in_w - 1
            for c in range(nc):
                value = (1.0 - fy) * ((1.0 - fx) * pix[y0, x0, c] + fx * pix[y0, x1, c]) \
                    + fy * ((1.0 - fx) * pix[y1, x0, c] + fx * pix[y1, x1, c])
                dst[i, j, c] = <uint8_t>floor(value + 0.5)
    return out
