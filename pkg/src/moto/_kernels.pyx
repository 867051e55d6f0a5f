# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Semantics must match ``_kernels_py`` exactly."""
import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()


def chain_fk(const double[:, ::1] root, const double[:, ::1] axes,
             const double[::1] lengths, const double[::1] q):
    """Frames of a revolute chain; frame i+1 = frame i * Rot(axis_i, q_i) * Tx(l_i)."""
    cdef Py_ssize_t n = q.shape[0]
    cdef Py_ssize_t i, r, c
    out = np.empty((n + 1, 4, 4), dtype=np.float64)
    cdef double[:, :, ::1] F = out
    cdef double kx, ky, kz, ct, st, vt, l
    cdef double R[3][3]
    cdef double acc
    for r in range(4):
        for c in range(4):
            F[0, r, c] = root[r, c]
    for i in range(n):
        kx = axes[i, 0]
        ky = axes[i, 1]
        kz = axes[i, 2]
        ct = cos(q[i])
        st = sin(q[i])
        vt = 1.0 - ct
        R[0][0] = ct + kx * kx * vt
        R[0][1] = kx * ky * vt - kz * st
        R[0][2] = kx * kz * vt + ky * st
        R[1][0] = ky * kx * vt + kz * st
        R[1][1] = ct + ky * ky * vt
        R[1][2] = ky * kz * vt - kx * st
        R[2][0] = kz * kx * vt - ky * st
        R[2][1] = kz * ky * vt + kx * st
        R[2][2] = ct + kz * kz * vt
        for r in range(3):
            for c in range(3):
                acc = F[i, r, 0] * R[0][c]
                acc = acc + F[i, r, 1] * R[1][c]
                acc = acc + F[i, r, 2] * R[2][c]
                F[i + 1, r, c] = acc
        l = lengths[i]
        for r in range(3):
            F[i + 1, r, 3] = F[i, r, 3] + l * F[i + 1, r, 0]
        F[i + 1, 3, 0] = 0.0
        F[i + 1, 3, 1] = 0.0
        F[i + 1, 3, 2] = 0.0
        F[i + 1, 3, 3] = 1.0
    return out


def vote_counts(const double[:, ::1] cloud, const double[:, ::1] voters, double tau):
    """counts[i] = #{j : ||cloud[i] - voters[j]|| < tau}."""
    cdef Py_ssize_t n = cloud.shape[0]
    cdef Py_ssize_t m = voters.shape[0]
    cdef Py_ssize_t i, j
    cdef double dx, dy, dz
    cdef long long cnt
    out = np.zeros(n, dtype=np.int64)
    cdef long long[::1] counts = out
    for i in range(n):
        cnt = 0
        for j in range(m):
            dx = cloud[i, 0] - voters[j, 0]
            dy = cloud[i, 1] - voters[j, 1]
            dz = cloud[i, 2] - voters[j, 2]
            if sqrt(dx * dx + dy * dy + dz * dz) < tau:
                cnt += 1
        counts[i] = cnt
    return out


def hinge_sum(const double[::1] d, double eps):
    """sum_j max(0, eps - d_j), accumulated left to right."""
    cdef Py_ssize_t j
    cdef double s = 0.0, v
    for j in range(d.shape[0]):
        v = eps - d[j]
        if v > 0.0:
            s += v
    return s
