"""Small reference GF(p^t) arithmetic, independent of the C++ library."""
import itertools

CONWAY = {(2, 2): [1, 1, 1], (2, 3): [1, 1, 0, 1], (3, 2): [2, 2, 1]}


class GF:
    def __init__(self, p, t=1, modulus=None):
        self.p, self.t = p, t
        self.q = p ** t
        self.mod = modulus or (CONWAY[(p, t)] if t > 1 else [0, 1])
        self.elems = [tuple(c) for c in itertools.product(range(p), repeat=t)]
        self.elems = [tuple(reversed(e)) for e in self.elems]  # low coefficient first
        self.elems.sort(key=self.pack)

    def pack(self, e):
        return sum(c * self.p ** i for i, c in enumerate(e))

    def unpack(self, v):
        return tuple((v // self.p ** i) % self.p for i in range(self.t))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        prod = [0] * (2 * self.t - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        for k in range(len(prod) - 1, self.t - 1, -1):
            c = prod[k]
            if c:
                for i, m in enumerate(self.mod):
                    prod[k - self.t + i] = (prod[k - self.t + i] - c * m) % self.p
        return tuple(prod[: self.t])

    def zero(self):
        return (0,) * self.t

    def one(self):
        return (1,) + (0,) * (self.t - 1)

    def power(self, a, e):
        r = self.one()
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def trace(self, a):
        s, x = self.zero(), a
        for _ in range(self.t):
            s = self.add(s, x)
            x = self.power(x, self.p)
        return s
