"""Independent numpy oracle for the zeta/xi family values frozen into the C++ tests.

Builds the states directly from their kets (no shared code with the C++ library),
evaluates reduced entropies by brute-force reshaping, and prints the closed forms
next to the numeric values.
"""
import itertools
import numpy as np


def params(x):
    return np.sqrt(np.array([(5 - 2 * x) / 8, (3 - x) / 8, x / 8, x / 4]))


def xlogx(p):
    return 0.0 if p <= 0 else p * np.log2(p)


def entropy(psi, dims, keep):
    n = len(dims)
    t = psi.reshape(dims)
    rest = [i for i in range(n) if i not in keep]
    m = np.transpose(t, list(keep) + rest).reshape(int(np.prod([dims[i] for i in keep])), -1)
    ev = np.linalg.eigvalsh(m @ m.conj().T)
    return -sum(xlogx(e) for e in ev if e > 1e-12)


def ket(dims, terms):
    psi = np.zeros(int(np.prod(dims)), dtype=complex)
    for idx, amp in terms:
        psi[np.ravel_multi_index(idx, dims)] += amp
    return psi


def zeta(c):
    s = np.sqrt(2)
    return ket([6, 6, 6], [((0, 0, 0), c[0] / s), ((0, 1, 1), c[0] / s), ((1, 2, 2), c[1] / s),
                           ((2, 2, 3), c[1] / s), ((3, 3, 4), c[2] / s), ((4, 4, 4), c[2] / s),
                           ((5, 5, 5), c[3])])


def zeta_stretched(c):
    # eta=|0>, ancilla fill |3>, layout A B R A' B'
    s = np.sqrt(2)
    terms = [((3, 3, 4, 3, 3), c[2] / s), ((4, 4, 4, 3, 3), c[2] / s), ((5, 5, 5, 3, 3), c[3]),
             ((0, 0, 0, 0, 0), c[0] / s), ((0, 0, 1, 0, 1), c[0] / s),
             ((0, 0, 2, 1, 2), c[1] / s), ((0, 0, 3, 2, 2), c[1] / s)]
    return ket([6] * 5, terms)


def xi(c):
    s = np.sqrt(2)
    return ket([6] * 4, [((0, 0, 1, 0), c[0] / s), ((0, 1, 0, 1), c[0] / s), ((1, 2, 0, 2), c[1] / s),
                         ((2, 2, 1, 3), c[1] / s), ((3, 3, 3, 4), c[2] / s), ((4, 4, 4, 4), c[2] / s),
                         ((5, 5, 5, 5), c[3])])


def xi_stretched(c):
    # layout A1 A2 A3 R A1' A2' A3'
    s = np.sqrt(2)
    terms = [((3, 3, 3, 4, 3, 3, 3), c[2] / s), ((4, 4, 4, 4, 3, 3, 3), c[2] / s),
             ((5, 5, 5, 5, 3, 3, 3), c[3]),
             ((0, 0, 0, 0, 0, 0, 1), c[0] / s), ((0, 0, 0, 1, 0, 1, 0), c[0] / s),
             ((0, 0, 0, 2, 1, 2, 0), c[1] / s), ((0, 0, 0, 3, 2, 2, 1), c[1] / s)]
    return ket([6] * 7, terms)


def closed_zeta(c):
    p = c ** 2
    l1 = abs(p[0] - p[1])
    lnew = p[0] + p[1]
    unew = -xlogx(p[0]) + p[0] - xlogx(p[1]) + p[1] + xlogx(p[0] + p[1])
    u1 = -xlogx(p[0]) + p[0] - xlogx(p[1]) + p[1] - xlogx(p[2]) - xlogx(p[3])
    return l1, lnew, unew, u1


def closed_qsr(c):
    p = c ** 2
    L = lambda q: xlogx(q)  # q log q
    h = lambda q: -xlogx(q) + q  # -q log(q/2)
    s = p[0] + p[1]
    u1 = h(p[0]) - L(p[1]) + 2 * p[1] + h(p[2]) - L(p[3])
    u2 = 2 * h(p[0]) + (L(s) - s) + 2 * h(p[1]) + h(p[2]) - L(p[3])
    u3 = -L(p[0]) + 2 * p[0] + h(p[1]) + h(p[2]) - L(p[3])
    v1 = h(p[0]) + L(s) - L(p[1]) + 2 * p[1]
    v2 = 2 * h(p[0]) + 2 * L(s) - s + 2 * h(p[1])
    v3 = -L(p[0]) + 2 * p[0] + L(s) + h(p[1])
    return (u1, u2, u3), (v1, v2, v3)


def numeric_zeta(c):
    z = zeta(c)
    d3 = [6, 6, 6]
    l1 = abs(entropy(z, d3, [1]) - entropy(z, d3, [0]))
    u1 = entropy(z, d3, [0, 1])
    st = zeta_stretched(c)
    d5 = [6] * 5  # A B R A' B'
    unew = entropy(st, d5, [2, 0]) - entropy(st, d5, [0])
    merge = (entropy(st, d5, [3, 1, 4]) - entropy(st, d5, [1, 4])
             + entropy(st, d5, [4, 0]) - entropy(st, d5, [0]))
    return l1, unew, u1, merge


def numeric_qsr(c):
    x4 = xi(c)
    d4 = [6] * 4
    S = lambda keep: entropy(x4, d4, keep) if keep else 0.0
    u = []
    for i in range(3):
        a, b, cc = i, (i + 1) % 3, (i + 2) % 3
        u.append(S([a, b]) - S([b]) + S([b, cc]) - S([cc]) + S([cc]))
    st = xi_stretched(c)
    d7 = [6] * 7
    T = lambda keep: entropy(st, d7, keep)
    v = []
    for i in range(3):
        a, b, cc = i, (i + 1) % 3, (i + 2) % 3
        p = lambda k: 4 + k
        v.append(T([p(a), b, p(b)]) - T([b, p(b)]) + T([p(b), cc, p(cc)]) - T([cc, p(cc)])
                 + T([p(cc), a]) - T([a]))
    return u, v


if __name__ == "__main__":
    for x in (0.0, 0.25, 0.5, 1.0):
        c = params(x)
        print(f"x={x}")
        print("  zeta closed (l1,lnew,unew,u1):", ["%.15f" % v for v in closed_zeta(c)])
        print("  zeta numeric (l1,unew,u1,merge):", ["%.15f" % v for v in numeric_zeta(c)])
        cu, cv = closed_qsr(c)
        nu, nv = numeric_qsr(c)
        print("  qsr closed u:", ["%.15f" % v for v in cu], "v:", ["%.15f" % v for v in cv])
        print("  qsr numeric u:", ["%.15f" % v for v in nu], "v:", ["%.15f" % v for v in nv])
        p = c ** 2
        print("  r4 =", "%.15f" % -sum(xlogx(q) for q in p))
