"""Independent oracle for the coercive maps at k = 6.

Ternary: d = 2, theta3 = 0, phi = 1. Binary: d = 3, b2 = 1.
Random search over the parameter box, Nelder-Mead polish, dense re-evaluation.
"""
import numpy as np
from scipy.optimize import minimize

rng = np.random.default_rng(20240611)


def s3_rule(nt, na):
    t, wt = np.polynomial.legendre.leggauss(nt)
    t = 0.25 * np.pi * (t + 1.0)
    wt = wt * 0.25 * np.pi * np.cos(t) * np.sin(t)
    a = 2 * np.pi * (np.arange(na) + 0.5) / na
    T, A, B = np.meshgrid(t, a, a, indexing="ij")
    W = np.broadcast_to(wt[:, None, None], T.shape) * (2 * np.pi / na) ** 2
    w1 = np.stack([np.cos(T) * np.cos(A), np.cos(T) * np.sin(A)], -1).reshape(-1, 2)
    w2 = np.stack([np.sin(T) * np.cos(B), np.sin(T) * np.sin(B)], -1).reshape(-1, 2)
    return w1, w2, W.reshape(-1)


def ternary_J(k, xi, ubar, rule):
    w1, w2, w = rule
    u1, u2 = ubar[:2], ubar[2:]
    c = (w1 @ u1 + w2 @ u2) / (1.0 + np.sum(w1 * w2, 1))
    s1 = -u1 + c[:, None] * (2 * w1 + w2)
    s2 = -u2 + c[:, None] * (w1 + 2 * w2)
    r = 2 * np.sqrt(max(xi - xi * xi, 0.0))
    out = 0.0
    for sgn, vec in ((-1, s1 + s2), (1, 2 * s1 - s2), (1, 2 * s2 - s1)):
        mu = (1 + sgn * r * vec[:, 0] + xi * (np.sum(vec * vec, 1) - 1)) / 3
        out = out + np.maximum(mu, 0) ** (k / 2)
    return float(np.sum(w * out))


def ubar_from(x):
    a, b, c = x
    p = np.array([np.cos(a), np.sin(a) * np.cos(b), np.sin(a) * np.sin(b) * np.cos(c), np.sin(a) * np.sin(b) * np.sin(c)])
    pa, pb = p[:2], p[2:] / np.sqrt(3)
    return np.concatenate([(pa + pb) / np.sqrt(2), (pa - pb) / np.sqrt(2)])


def ternary_oracle(k=6.0, samples=4000):
    coarse, dense = s3_rule(20, 40), s3_rule(64, 128)

    def f(x, rule):
        xi = 0.5 * (1 - np.cos(x[0]))
        return -ternary_J(k, xi, ubar_from(x[1:]), rule)

    X = rng.uniform(0, 2 * np.pi, size=(samples, 4))
    vals = np.array([f(x, coarse) for x in X])
    best = None
    for i in np.argsort(vals)[:8]:
        r = minimize(f, X[i], args=(coarse,), method="Nelder-Mead", options=dict(xatol=1e-9, fatol=1e-12, maxiter=4000))
        r = minimize(f, r.x, args=(dense,), method="Nelder-Mead", options=dict(xatol=1e-9, fatol=1e-13, maxiter=2000))
        if best is None or r.fun < best.fun:
            best = r
    return -best.fun


def binary_oracle(k=6.0, samples=20000):
    t, wt = np.polynomial.legendre.leggauss(400)
    a = 2 * np.pi * (np.arange(800) + 0.5) / 800
    Z, A = np.meshgrid(t, a, indexing="ij")
    s = np.sqrt(1 - Z * Z)
    om = np.stack([s * np.cos(A), s * np.sin(A), Z], -1).reshape(-1, 3)
    w = (np.broadcast_to(wt[:, None], Z.shape) * 2 * np.pi / 800).reshape(-1)

    def g(x):
        beta = 0.5 * (1 - np.cos(x[0]))
        xi = beta * 0.5 * (1 - np.cos(x[1]))
        uh = np.array([np.cos(x[2]), np.sin(x[2]) * np.cos(x[3]), np.sin(x[2]) * np.sin(x[3])])
        c = om @ uh
        sig = uh[None, :] - 2 * c[:, None] * om
        r = np.sqrt(max(xi * (beta - xi), 0.0))
        nu = 0.5 - r * sig[:, 0]
        return -float(np.sum(w * (np.maximum(nu, 0) ** (k / 2) + np.maximum(1 - nu, 0) ** (k / 2))))

    X = rng.uniform(0, 2 * np.pi, size=(200, 4))
    vals = np.array([g(x) for x in X])
    best = min((minimize(g, X[i], method="Nelder-Mead", options=dict(xatol=1e-10, fatol=1e-13)) for i in np.argsort(vals)[:5]),
               key=lambda r: r.fun)
    return -best.fun


if __name__ == "__main__":
    print("norm S^3", 2 * np.pi**2, "rule sum", s3_rule(20, 40)[2].sum())
    print("lambda(k=6, d=2) =", repr(ternary_oracle()))
    print("alpha(k=6, d=3) =", repr(binary_oracle()))
