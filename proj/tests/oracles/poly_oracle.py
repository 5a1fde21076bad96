"""Polynomial-space counts, Schwartz-Zippel maxima, restriction and Example 1.5 numbers."""
import itertools
from fractions import Fraction
from gf import GF


def field(q):
    return {2: GF(2), 3: GF(3), 4: GF(2, 2), 5: GF(5), 7: GF(7)}[q]


def monomials(m, d):
    return list(itertools.product(range(d + 1), repeat=m))


def evaluate(F, coeffs, mons, u):
    s = F.zero()
    for c, e in zip(coeffs, mons):
        term = c
        for ui, ei in zip(u, e):
            term = F.mul(term, F.power(ui, ei))
        s = F.add(s, term)
    return s


def all_tables(F, m, d):
    mons = monomials(m, d)
    pts = list(itertools.product(F.elems, repeat=m))
    return [tuple(evaluate(F, cs, mons, u) for u in pts) for cs in itertools.product(F.elems, repeat=len(mons))]


print("sizes", {(m, q, d): q ** ((d + 1) ** m) for (m, q, d) in [(1, 2, 1), (1, 3, 1), (2, 2, 1)]})

for (m, q, d) in [(1, 5, 2), (2, 3, 1), (2, 4, 1)]:
    F = field(q)
    tabs = sorted(set(all_tables(F, m, d)))
    M = q ** m
    worst = 0
    for a, b in itertools.combinations(tabs, 2):
        worst = max(worst, sum(x == y for x, y in zip(a, b)))
    print(f"SZ {(m, q, d)}: {len(tabs)} distinct tables, max agreement {Fraction(worst, M)} <= {Fraction(m * d, q)}")

F5 = GF(5)
agree = sum(x == F5.power(x, 2) for x in F5.elems)
print("x vs x^2 over F5:", Fraction(agree, 5))

# Example 1.5: points h(u) = u_1^{d+1}; axis-1 lines answer 0, other lines answer h restricted.
# Axis test: role uniform, u uniform, axis uniform; B answers the line through u.
for (m, q, d) in [(2, 5, 1), (3, 4, 1)]:
    F = field(q)
    e = d + 1
    pts = list(itertools.product(F.elems, repeat=m))
    fail = Fraction(0)
    for u in pts:
        for i in range(m):
            line_value = F.zero() if i == 0 else F.power(u[0], e)
            if line_value != F.power(u[0], e):
                fail += Fraction(1, len(pts) * m)
    tabs = all_tables(F, m, d)
    h = tuple(F.power(u[0], e) for u in pts)
    best = max(sum(x == y for x, y in zip(t, h)) for t in tabs)
    print(f"Example {(m, q, d)}: exact axis failure {fail}, accounting 1/m = {Fraction(1, m)},"
          f" max agreement {Fraction(best, len(pts))}, bound {1 - m * Fraction(1, m) + Fraction(d + 1, q)}")

# restriction of x1*x2 over F3 to the x1-axis line through (0, c): f(t) = c t
F3 = GF(3)
for c in F3.elems:
    vals = [F3.mul(t, c) for t in F3.elems]
    print("x1x2 on axis through (0,", c[0], "):", [v[0] for v in vals])
