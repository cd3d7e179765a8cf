# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense kernels for dimensions up to a few hundred.

Hot inner loops of the collision dynamics: Kronecker product, unitary
conjugation, partial trace, and a cyclic-Jacobi Hermitian eigensolver.
Matrices are complex128 and C-contiguous throughout.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "cython"

ctypedef double complex cplx


def kron(cnp.ndarray a_in, cnp.ndarray b_in):
    cdef cnp.ndarray[cplx, ndim=2] a = np.ascontiguousarray(a_in, dtype=np.complex128)
    cdef cnp.ndarray[cplx, ndim=2] b = np.ascontiguousarray(b_in, dtype=np.complex128)
    cdef Py_ssize_t na = a.shape[0], ma = a.shape[1]
    cdef Py_ssize_t nb = b.shape[0], mb = b.shape[1]
    cdef cnp.ndarray[cplx, ndim=2] out = np.empty((na * nb, ma * mb), dtype=np.complex128)
    cdef Py_ssize_t i, j, k, l
    cdef cplx aij
    for i in range(na):
        for j in range(ma):
            aij = a[i, j]
            for k in range(nb):
                for l in range(mb):
                    out[i * nb + k, j * mb + l] = aij * b[k, l]
    return out


def apply_unitary(cnp.ndarray u_in, cnp.ndarray rho_in):
    """U @ rho @ U†."""
    cdef cnp.ndarray[cplx, ndim=2] u = np.ascontiguousarray(u_in, dtype=np.complex128)
    cdef cnp.ndarray[cplx, ndim=2] rho = np.ascontiguousarray(rho_in, dtype=np.complex128)
    cdef Py_ssize_t n = u.shape[0]
    cdef cnp.ndarray[cplx, ndim=2] tmp = np.zeros((n, n), dtype=np.complex128)
    cdef cnp.ndarray[cplx, ndim=2] out = np.zeros((n, n), dtype=np.complex128)
    cdef Py_ssize_t i, j, k
    cdef cplx acc
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = acc + u[i, k] * rho[k, j]
            tmp[i, j] = acc
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = acc + tmp[i, k] * u[j, k].conjugate()
            out[i, j] = acc
    return out


def ptrace(cnp.ndarray rho_in, dims, keep):
    """Trace out every subsystem not listed in ``keep`` (kept order preserved)."""
    cdef cnp.ndarray[cplx, ndim=2] rho = np.ascontiguousarray(rho_in, dtype=np.complex128)
    cdef Py_ssize_t nsub = len(dims)
    cdef Py_ssize_t[8] dim_arr, stride_arr
    cdef Py_ssize_t i, j, t, d
    cdef Py_ssize_t n = rho.shape[0]

    for i in range(nsub):
        dim_arr[i] = dims[i]
    stride_arr[nsub - 1] = 1
    for i in range(nsub - 2, -1, -1):
        stride_arr[i] = stride_arr[i + 1] * dim_arr[i + 1]

    keep_t = tuple(keep)
    traced = [i for i in range(nsub) if i not in keep_t]

    cdef Py_ssize_t n_keep = 1, n_tr = 1
    for i in keep_t:
        n_keep *= dims[i]
    for i in traced:
        n_tr *= dims[i]

    # flat offsets of every kept / traced multi-index
    cdef cnp.ndarray[Py_ssize_t, ndim=1] koff = np.zeros(n_keep, dtype=np.intp)
    cdef cnp.ndarray[Py_ssize_t, ndim=1] toff = np.zeros(n_tr, dtype=np.intp)
    cdef Py_ssize_t rem, idx
    for j in range(n_keep):
        rem = j
        for i in range(len(keep_t) - 1, -1, -1):
            idx = keep_t[i]
            d = dim_arr[idx]
            koff[j] += (rem % d) * stride_arr[idx]
            rem //= d
    for j in range(n_tr):
        rem = j
        for i in range(len(traced) - 1, -1, -1):
            idx = traced[i]
            d = dim_arr[idx]
            toff[j] += (rem % d) * stride_arr[idx]
            rem //= d

    cdef cnp.ndarray[cplx, ndim=2] out = np.zeros((n_keep, n_keep), dtype=np.complex128)
    cdef Py_ssize_t a, b
    cdef cplx acc
    for a in range(n_keep):
        for b in range(n_keep):
            acc = 0
            for t in range(n_tr):
                acc = acc + rho[koff[a] + toff[t], koff[b] + toff[t]]
            out[a, b] = acc
    return out


cdef double _off_norm(cplx[:, ::1] a, Py_ssize_t n):
    cdef double s = 0.0
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(i + 1, n):
            s += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag
    return s


def _eigh2(cnp.ndarray[cplx, ndim=2] h, bint want_vectors):
    # closed form for the 2x2 Hermitian case
    cdef double alpha = h[0, 0].real, gamma = h[1, 1].real
    cdef cplx g = h[0, 1]
    cdef double m = 0.5 * (alpha + gamma)
    cdef double d = 0.5 * (alpha - gamma)
    cdef double absg = abs(g)
    cdef double r = (d * d + absg * absg) ** 0.5
    vals = np.array([m - r, m + r])
    if not want_vectors:
        return vals, None
    cdef cnp.ndarray[cplx, ndim=2] v = np.empty((2, 2), dtype=np.complex128)
    cdef double n1, n2
    if absg == 0.0:
        if alpha <= gamma:
            v[0, 0] = 1; v[1, 0] = 0; v[0, 1] = 0; v[1, 1] = 1
        else:
            v[0, 0] = 0; v[1, 0] = 1; v[0, 1] = 1; v[1, 1] = 0
        return vals, v
    n1 = (absg * absg + (d + r) * (d + r)) ** 0.5
    n2 = (absg * absg + (r - d) * (r - d)) ** 0.5
    v[0, 0] = g / n1
    v[1, 0] = -(d + r) / n1
    v[0, 1] = g / n2
    v[1, 1] = (r - d) / n2
    return vals, v


def _jacobi(cnp.ndarray h_in, bint want_vectors):
    cdef cnp.ndarray[cplx, ndim=2] a = np.array(h_in, dtype=np.complex128, copy=True, order="C")
    cdef Py_ssize_t n = a.shape[0]
    if n == 2:
        return _eigh2(a, want_vectors)
    cdef cnp.ndarray[cplx, ndim=2] v
    if want_vectors:
        v = np.eye(n, dtype=np.complex128)
    cdef Py_ssize_t p, q, k, sweep
    cdef double absg, tau, t, c, scale, tol, skip
    cdef cplx g, w, s, apk, aqk, vkp, vkq

    scale = 0.0
    for p in range(n):
        for q in range(n):
            absg = abs(a[p, q])
            if absg > scale:
                scale = absg
    if scale == 0.0:
        if want_vectors:
            return np.zeros(n), np.eye(n, dtype=np.complex128)
        return np.zeros(n), None
    # quadratic convergence makes ~1e-14*scale reachable in a few sweeps;
    # pushing further just burns sweeps without improving the reconstruction
    tol = (1e-14 * scale) ** 2 * n
    skip = 1e-16 * scale

    for sweep in range(60):
        if _off_norm(a, n) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                absg = abs(g)
                if absg <= skip:
                    continue
                w = g / absg
                tau = (a[q, q].real - a[p, p].real) / (2.0 * absg)
                if tau >= 0:
                    t = 1.0 / (tau + (1.0 + tau * tau) ** 0.5)
                else:
                    t = -1.0 / (-tau + (1.0 + tau * tau) ** 0.5)
                c = 1.0 / (1.0 + t * t) ** 0.5
                s = t * c * w
                # A <- J† A J with J[p,p]=J[q,q]=c, J[p,q]=s, J[q,p]=-s̄
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s.conjugate() * apk + c * aqk
                for k in range(n):
                    apk = a[k, p]
                    aqk = a[k, q]
                    a[k, p] = c * apk - s.conjugate() * aqk
                    a[k, q] = s * apk + c * aqk
                if want_vectors:
                    for k in range(n):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = c * vkp - s.conjugate() * vkq
                        v[k, q] = s * vkp + c * vkq

    vals = np.array([a[k, k].real for k in range(n)])
    order = np.argsort(vals, kind="stable")
    if want_vectors:
        return vals[order], np.asarray(v)[:, order]
    return vals[order], None


def eigh(h_in):
    """Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix.

    Closed form at 2x2, cyclic Jacobi rotations above.
    """
    vals, vecs = _jacobi(np.asarray(h_in), True)
    return vals, vecs


def eigvalsh(h_in):
    return _jacobi(np.asarray(h_in), False)[0]
