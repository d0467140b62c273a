"""Independent sympy derivation of the stored p_1 witness in dimension 2.

Builds the universal connection from scratch on the 11 jet coordinates,
evaluates p_1 = sigma_2(Omega) (the (2 pi)^-2 factor kept symbolic) at the
normal point on coordinate vectors and writes tests/golden/p1_witness_n2.json.
"""
import itertools
import json
import sys

import sympy as sp

N = 2
x = sp.symbols("x1 x2")
pairs = [(0, 0), (0, 1), (1, 1)]
y = {p: sp.Symbol(f"y{p[0]+1}{p[1]+1}") for p in pairs}
yk = {(p, k): sp.Symbol(f"y{p[0]+1}{p[1]+1},{k+1}") for p in pairs for k in range(N)}
coords = list(x) + [y[p] for p in pairs] + [yk[(p, k)] for p in pairs for k in range(N)]
index = {c: i for i, c in enumerate(coords)}


def sym(i, j):
    return (i, j) if i <= j else (j, i)


def form(terms):
    """Forms are dicts from sorted index tuples to coefficients."""
    return {k: v for k, v in terms.items() if v != 0}


def add(a, b, s=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
    return form(out)


def wedge(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            idx = ka + kb
            if len(set(idx)) < len(idx):
                continue
            perm = sorted(range(len(idx)), key=lambda t: idx[t])
            sign = sp.combinatorics.Permutation(perm).signature()
            key = tuple(sorted(idx))
            out[key] = out.get(key, 0) + sign * va * vb
    return form(out)


def d(a):
    out = {}
    for k, v in a.items():
        for c in coords:
            dv = sp.diff(v, c)
            if dv != 0:
                out = add(out, wedge({(index[c],): dv}, {k: 1}))
    return out


def dcoord(c):
    return {(index[c],): sp.Integer(1)}


G = sp.Matrix(N, N, lambda i, j: y[sym(i, j)])
Ginv = G.inv()
theta = [[add(dcoord(y[sym(i, j)]), {}, 1) for j in range(N)] for i in range(N)]
for i in range(N):
    for j in range(N):
        for k in range(N):
            theta[i][j] = add(theta[i][j], {(index[x[k]],): yk[(sym(i, j), k)]}, -1)
vartheta = [[{} for _ in range(N)] for _ in range(N)]
for i in range(N):
    for j in range(N):
        for a in range(N):
            vartheta[i][j] = add(vartheta[i][j], {k: Ginv[i, a] * v for k, v in theta[a][j].items()})
gamma = {}
for i, j, k in itertools.product(range(N), repeat=3):
    gamma[i, j, k] = sum(
        sp.Rational(1, 2) * Ginv[i, a] * (yk[(sym(a, j), k)] + yk[(sym(a, k), j)] - yk[(sym(j, k), a)]) for a in range(N)
    )
omega = [[{} for _ in range(N)] for _ in range(N)]
for i in range(N):
    for j in range(N):
        hor = form({(index[x[k]],): gamma[i, j, k] for k in range(N)})
        omega[i][j] = add(hor, {k: sp.Rational(1, 2) * v for k, v in vartheta[i][j].items()})
curv = [[{} for _ in range(N)] for _ in range(N)]
for i in range(N):
    for j in range(N):
        curv[i][j] = d(omega[i][j])
        for a in range(N):
            curv[i][j] = add(curv[i][j], wedge(omega[i][a], omega[a][j]))

normal = {c: 0 for c in coords}
for i in range(N):
    normal[y[(i, i)]] = 1


def at_normal(a):
    return form({k: sp.nsimplify(v.subs(normal)) for k, v in a.items()})


sigma2 = {}
for i in range(N):
    for j in range(i + 1, N):
        sigma2 = add(sigma2, wedge(at_normal(curv[i][i]), at_normal(curv[j][j])))
        sigma2 = add(sigma2, wedge(at_normal(curv[i][j]), at_normal(curv[j][i])), -1)

names = [str(c) for c in coords]
witness = None
for key in sorted(sigma2):
    witness = (key, sigma2[key])
    break
if witness is None:
    sys.exit("p_1 vanishes at the normal point")
key, value = witness
golden = {
    "dimension": N,
    "point": {"dimension": N, "coordinates": {str(c): f"{sp.Rational(normal[c]).p}/{sp.Rational(normal[c]).q}" for c in coords}},
    "vectors": [{names[t]: "1/1"} for t in key],
    "p_1": {"value": f"{sp.Rational(value).p}/{sp.Rational(value).q}", "two_pi_power": -2},
}
out = sys.argv[1] if len(sys.argv) > 1 else "tests/golden/p1_witness_n2.json"
with open(out, "w") as f:
    json.dump(golden, f, indent=2, sort_keys=True)
    f.write("\n")
print(json.dumps(golden, sort_keys=True))
