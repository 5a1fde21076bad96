"""Hypercube spectra, protocol masses, TV distances, binomial tails and an SDP value."""
import itertools
from fractions import Fraction
import numpy as np
import cvxpy as cp


def kernel(m, q):
    pts = list(itertools.product(range(q), repeat=m))
    M = len(pts)
    K = np.zeros((M, M))
    for a, u in enumerate(pts):
        for b, v in enumerate(pts):
            for i in range(m):
                if all(u[j] == v[j] for j in range(m) if j != i):
                    K[a, b] += 1.0 / (M * m * q)
    return K, M


for m, q in [(1, 2), (2, 2), (2, 3), (3, 2)]:
    K, M = kernel(m, q)
    L = np.eye(M) / M - K
    ev = np.sort(np.linalg.eigvalsh(L))
    print(f"spectrum (m,q)=({m},{q}): lambda2={ev[1]:.15g} expected {Fraction(1, m * M)}")
K, _ = kernel(1, 2)
print("K(1,2) =", K.tolist())

# protocol masses
third = Fraction(1, 3)
print("selfcons (1,2) mass each:", third * Fraction(1, 2), "support", 2)
print("axis (2,2) mass each:", third * Fraction(1, 2) * Fraction(1, 4) * Fraction(1, 2), "support", 2 * 4 * 2)
print("restricted j=m (2,2) support:", 2 * 4 * 4)

# uniform random classical, m=1 q=2 d=0: two independent uniform values disagree w.p. 1/2
print("random selfcons failure:", Fraction(sum(a != b for a in range(2) for b in range(2)), 4))

# TV(uniform F_q^k, uniform distinct k-tuples)
for q, k in [(4, 2), (5, 3)]:
    tot = q ** k
    dist = sum(1 for t in itertools.product(range(q), repeat=k) if len(set(t)) == k)
    tv = Fraction(1) - Fraction(dist, tot)
    print(f"TV q={q} k={k}: {tv}  collision bound {Fraction(k * (k - 1), 2 * q)}  square {Fraction(k * k, q)}")

p = Fraction(9, 10)
from math import comb
tail = sum(comb(20, r) * p ** r * (1 - p) ** (20 - r) for r in range(2, 21))
print("P[Bin(20,0.9) >= 2] =", float(tail), " 1 - tail =", float(1 - tail))
print("P[Bin(10,0.5) >= 3] =", float(sum(comb(10, r) for r in range(3, 11)) / 2 ** 10))

# fixed non-commuting SDP instance: max sum_g Tr(T_g A_g), T_g >= 0, sum T_g = I
A = [np.array([[0.6, 0.2, 0.0], [0.2, 0.3, 0.1], [0.0, 0.1, 0.2]]),
     np.array([[0.1, 0.0, 0.05], [0.0, 0.5, -0.2], [0.05, -0.2, 0.4]]),
     np.array([[0.3, -0.1, 0.0], [-0.1, 0.2, 0.0], [0.0, 0.0, 0.4]])]
T = [cp.Variable((3, 3), symmetric=True) for _ in A]
cons = [t >> 0 for t in T] + [sum(T) == np.eye(3)]
prob = cp.Problem(cp.Maximize(sum(cp.trace(t @ a) for t, a in zip(T, A))), cons)
prob.solve(solver=cp.SCS, eps=1e-10, max_iters=200000)
Z = cp.Variable((3, 3), symmetric=True)
dual = cp.Problem(cp.Minimize(cp.trace(Z)), [Z - a >> 0 for a in A])
dual.solve(solver=cp.SCS, eps=1e-10, max_iters=200000)
print(f"SDP primal {prob.value:.9f} dual {dual.value:.9f}")
# diagonal instance: value = sum_j max_g (A_g)_jj
D = [np.diag([0.2, 0.7, 0.1]), np.diag([0.5, 0.1, 0.3]), np.diag([0.3, 0.2, 0.6])]
print("diagonal value:", sum(max(d[j, j] for d in D) for j in range(3)))
# maximally mixed family I/n on any state: consistency (n-1)/n
for n in (2, 3, 5):
    print(f"mixed n={n}: {Fraction(n - 1, n)}")
