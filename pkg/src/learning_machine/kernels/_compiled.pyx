# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the hot kernels; contracts documented in pure.py."""

from libc.math cimport fabs, tanh, log1p, exp, INFINITY

import numpy as np

NAME = "compiled"

DEF ETA_MAX = 1e6
DEF ETA_MIN = 1e-18
DEF ARMIJO = 1e-4


def ks_statistic_sorted(double[::1] a, double[::1] b):
    cdef Py_ssize_t n = a.shape[0], m = b.shape[0]
    cdef Py_ssize_t i = 0, j = 0
    cdef double v, diff, d = 0.0
    while i < n or j < m:
        if j >= m or (i < n and a[i] <= b[j]):
            v = a[i]
        else:
            v = b[j]
        while i < n and a[i] == v:
            i += 1
        while j < m and b[j] == v:
            j += 1
        diff = fabs(i / <double> n - j / <double> m)
        if diff > d:
            d = diff
    return d


def best_split_column(double[::1] values, double[::1] labels, Py_ssize_t min_leaf):
    cdef Py_ssize_t n = values.shape[0]
    if n < 2 * min_leaf:
        return -INFINITY, 0.0, -1
    cdef double total_pos = 0.0
    cdef Py_ssize_t k
    for k in range(n):
        total_pos += labels[k]
    cdef double q = total_pos / n
    cdef double parent = 1.0 - q * q - (1.0 - q) * (1.0 - q)

    cdef double best_gain = -INFINITY, best_threshold = 0.0
    cdef Py_ssize_t best_split = -1
    cdef double cum_pos = 0.0
    cdef double n_l, n_r, pos_r, ql, qr, gini_l, gini_r, gain
    cdef Py_ssize_t i
    for i in range(1, n):
        cum_pos += labels[i - 1]
        if values[i] <= values[i - 1]:
            continue
        if i < min_leaf or i > n - min_leaf:
            continue
        n_l = <double> i
        n_r = <double> (n - i)
        pos_r = total_pos - cum_pos
        ql = cum_pos / n_l
        qr = pos_r / n_r
        gini_l = 1.0 - ql * ql - (1.0 - ql) * (1.0 - ql)
        gini_r = 1.0 - qr * qr - (1.0 - qr) * (1.0 - qr)
        gain = parent - (n_l / n) * gini_l - (n_r / n) * gini_r
        if gain > best_gain:
            best_gain = gain
            best_threshold = (values[i - 1] + values[i]) / 2.0
            best_split = i
    return best_gain, best_threshold, best_split


cdef double _loss(double[:, ::1] X, double[::1] y, double[::1] w, double b,
                  double lam, Py_ssize_t n, Py_ssize_t d):
    cdef double acc = 0.0, z, wsq = 0.0
    cdef Py_ssize_t i, j
    for i in range(n):
        z = b
        for j in range(d):
            z += X[i, j] * w[j]
        # softplus(z) - y*z, stable on both tails
        if z > 0:
            acc += z + log1p(exp(-z)) - y[i] * z
        else:
            acc += log1p(exp(z)) - y[i] * z
    for j in range(d):
        wsq += w[j] * w[j]
    return acc / n + 0.5 * lam * wsq


def logistic_gd(double[:, ::1] X, double[::1] y, double lam,
                Py_ssize_t max_iter, double tol):
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1]
    w_arr = np.zeros(d)
    gw_arr = np.zeros(d)
    w2_arr = np.zeros(d)
    cdef double[::1] w = w_arr, gw = gw_arr, w2 = w2_arr
    cdef double b = 0.0, gb, b2, eta = 1.0
    cdef double loss = _loss(X, y, w, b, lam, n, d)
    cdef double loss2, z, p, r, gsq, grad_inf = INFINITY
    cdef Py_ssize_t it, i, j
    cdef int flat = 0
    for it in range(max_iter):
        for j in range(d):
            gw[j] = 0.0
        gb = 0.0
        for i in range(n):
            z = b
            for j in range(d):
                z += X[i, j] * w[j]
            p = 0.5 * (1.0 + tanh(0.5 * z))
            r = (p - y[i]) / n
            for j in range(d):
                gw[j] += X[i, j] * r
            gb += r
        grad_inf = fabs(gb)
        for j in range(d):
            gw[j] += lam * w[j]
            if fabs(gw[j]) > grad_inf:
                grad_inf = fabs(gw[j])
        if grad_inf < tol:
            return w_arr, b, it, grad_inf, True
        gsq = gb * gb
        for j in range(d):
            gsq += gw[j] * gw[j]
        while True:
            for j in range(d):
                w2[j] = w[j] - eta * gw[j]
            b2 = b - eta * gb
            loss2 = _loss(X, y, w2, b2, lam, n, d)
            if loss2 <= loss - ARMIJO * eta * gsq or eta < ETA_MIN:
                break
            eta *= 0.5
        flat = flat + 1 if loss2 >= loss else 0
        for j in range(d):
            w[j] = w2[j]
        b = b2
        loss = loss2
        if flat >= 8:
            return w_arr, b, it + 1, grad_inf, True
        eta = eta * 2.0
        if eta > ETA_MAX:
            eta = ETA_MAX
    return w_arr, b, max_iter, grad_inf, grad_inf < tol
