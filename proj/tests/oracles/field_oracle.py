"""Independent oracle values for the algebraic / exact_poly tests (sympy + mpmath)."""
import sympy as sp
from mpmath import mp, mpf, mpc, polyroots

mp.dps = 60
X = sp.symbols('X')

def roots(coeffs):
    # coeffs low -> high
    return sorted(polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=300),
                  key=lambda z: (float(z.real), float(z.imag)))

print("x^3-2", roots([-2, 0, 0, 1]))
print("x^4+x+1", roots([1, 1, 0, 0, 1]))
print("Res(x^2+1,x^2-2)", sp.resultant(X**2 + 1, X**2 - 2, X))
print("Res(x^2+1,2x)", sp.resultant(X**2 + 1, 2 * X, X))
print("Res(x-1,x^2+1)", sp.resultant(X - 1, X**2 + 1, X))
print("disc x^4+x+1", sp.discriminant(X**4 + X + 1, X))

# 2^{1/5}+i
P = X**5 - 10 * X**3 + 5 * X - 2
Q = 5 * X**4 - 10 * X**2 + 1
f = sp.expand(P**2 + Q**2)
print("minpoly 2^(1/5)+i coeffs", sp.Poly(f, X).all_coeffs()[::-1])
print("disc", sp.discriminant(f, X))
# i = P(xi)/Q(xi) in Q(xi)
Qinv = sp.invert(Q, f, X)
ival = sp.rem(sp.expand(P * Qinv), f, X)
g = sp.rem(sp.expand(X - 2 * ival), f, X)
print("g coeffs", sp.Poly(g, X).all_coeffs()[::-1])
# check
print("f(g) mod f", sp.rem(sp.expand(f.subs(X, g)), f, X))
beta = sp.rem(sp.expand(X + g), f, X)
gamma = sp.rem(sp.expand(X * g), f, X)
print("beta coeffs", sp.Poly(beta, X).all_coeffs()[::-1])
print("gamma coeffs", sp.Poly(gamma, X).all_coeffs()[::-1])
print("roots of f", roots([int(c) for c in sp.Poly(f, X).all_coeffs()[::-1]]))
