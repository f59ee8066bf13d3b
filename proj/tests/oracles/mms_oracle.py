"""Symbolic forcing for the unit-square manufactured solution.

Prints the body forces, pressure source and boundary traction at fixed
sample points; the values are frozen into tests/mms_values.hpp.
"""
import sympy as sp

x, y = sp.symbols("x y", real=True)
lam, a1, a2, a0, Da, phf, phs = 1, 1, 2, 1, 1, sp.Rational(3, 5), sp.Rational(2, 5)
a, b, c = 1, sp.Rational(1, 2), sp.Rational(1, 10)

V = sp.Matrix([sp.sin(sp.pi * x) * sp.cos(sp.pi * y), -sp.cos(sp.pi * x) * sp.sin(sp.pi * y)])
bub = x * (1 - x) * y * (1 - y)
U = sp.Matrix([bub, bub])
P = sp.cos(sp.pi * x) * sp.cos(sp.pi * y)
X = [x, y]


def grad(v):
    return sp.Matrix(2, 2, lambda i, j: sp.diff(v[i], X[j]))


def div(v):
    return sum(sp.diff(v[i], X[i]) for i in range(2))


def div_tensor(s):
    return sp.Matrix([sum(sp.diff(s[i, j], X[j]) for j in range(2)) for i in range(2)])


I = sp.eye(2)
sig_f = grad(V) + grad(V).T + (lam * div(V) - phf * P) * I
sig_s = a1 * (grad(U) + grad(U).T) + (a2 * div(U) - phs * P) * I
normU = sp.sqrt(U.dot(U))
K = (a * normU + c) * I + (a - b) * U * U.T / normU

b_f = -div_tensor(sig_f) + K * V / Da
b_s = -div_tensor(sig_s) - K * V / Da
s = phf * div(V) + a0 * P

interior = [(0.3, 0.7), (0.8, 0.25), (0.55, 0.45)]
for px, py in interior:
    sub = {x: sp.Rational(str(px)), y: sp.Rational(str(py))}
    bf = [sp.N(e.subs(sub), 20) for e in b_f]
    bs = [sp.N(e.subs(sub), 20) for e in b_s]
    print(f"{{{px}, {py}, {bf[0]}, {bf[1]}, {bs[0]}, {bs[1]}, {sp.N(s.subs(sub), 20)}}},")

boundary = [((1.0, 0.4), (1, 0)), ((0.35, 0.0), (0, -1)), ((0.0, 0.8), (-1, 0)), ((0.6, 1.0), (0, 1))]
for (px, py), (nx, ny) in boundary:
    sub = {x: sp.Rational(str(px)), y: sp.Rational(str(py))}
    t = sig_f.subs(sub) * sp.Matrix([nx, ny])
    print(f"{{{px}, {py}, {nx}, {ny}, {sp.N(t[0], 20)}, {sp.N(t[1], 20)}}},")
