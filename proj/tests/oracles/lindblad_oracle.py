"""Brute-force pumped Jaynes-Cummings steady state (dense-vectorized, scipy).

Levels ordered (empty, plus, minus) x Fock(0..n-1); photon loss sqrt(2 kappa) a
so that <a> decays at kappa, matching the semiclassical field equation.
"""
import numpy as np
import scipy.sparse as sps
import scipy.sparse.linalg as spl

TWO_PI = 2 * np.pi


def steady(g, kappa, gamma, gr, gc, nf, T=1.0, D=2.0, dw=0.0):
    om = np.hypot(2 * T, D)
    b = (om + D) / (2 * om)
    c = (om - D) / (2 * om)

    def k(i, j):
        m = np.zeros((3, 3))
        m[i, j] = 1
        return sps.csr_matrix(m)

    E, P, M = 0, 1, 2
    a = sps.diags(np.sqrt(np.arange(1, nf)), 1)
    If = sps.identity(nf)
    A = sps.kron(sps.identity(3), a)
    sp_ = sps.kron(k(P, M), If)
    sz = sps.kron(k(P, P) - k(M, M), If)
    H = TWO_PI * (dw * sz / 2 + g * (A.T @ sp_.T + A @ sp_))
    Ls = [np.sqrt(gamma * b) * sps.kron(k(P, E), If), np.sqrt(gamma * c) * sps.kron(k(M, E), If),
          np.sqrt(gamma * c) * sps.kron(k(E, P), If), np.sqrt(gamma * b) * sps.kron(k(E, M), If),
          np.sqrt(gr) * sps.kron(k(M, P), If), np.sqrt(gc / 2) * sz, np.sqrt(2 * kappa) * A]
    d = 3 * nf
    I = sps.identity(d)
    L = -1j * (sps.kron(I, H) - sps.kron(H.T, I))
    for l in Ls:
        l = sps.csr_matrix(l)
        LdL = l.conj().T @ l
        L = L + sps.kron(l.conj(), l) - 0.5 * sps.kron(I, LdL) - 0.5 * sps.kron(LdL.T, I)
    L = sps.lil_matrix(L)
    tr = np.zeros(d * d)
    tr[[i * d + i for i in range(d)]] = 1
    L[0, :] = tr
    rhs = np.zeros(d * d, complex)
    rhs[0] = 1
    rho = spl.spsolve(sps.csc_matrix(L), rhs).reshape(d, d, order='F')
    n = np.real(np.trace(A.T @ A @ rho))
    inv = np.real(np.trace(sz @ rho))
    asp = np.trace(A @ sp_ @ rho)
    return n, inv, asp


if __name__ == '__main__':
    print(repr(steady(5e6, 1e6, 50e6, 1e6, 10e6, 40)))
    print(repr(steady(5e6, 1e6, 100e6, 1e6, 10e6, 48)))
    print(repr(steady(10e6, 0.5e6, 100e6, 1e6, 10e6, 64)))
