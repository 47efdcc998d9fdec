"""Exact arithmetic in the tower GF(p) <= GF(q) <= GF(q^2).

Elements of GF(q), q = p^h, are canonical integers in [0, q): the value
sum(a_i * p^i) encodes the polynomial sum(a_i * theta^i) over GF(p), where
theta is a root of the degree-h modulus ``gq``.  Elements of GF(q^2) are
integers in [0, q^2): the value u0 + q*u1 encodes u0 + eps*u1 with respect
to the basis {1, eps}, where eps is a root of the degree-2 modulus ``gq2``
over GF(q).  The integer encoding doubles as the wire format used by the
file formats and the CLI.

Multiplication in GF(q) is memoized in a full q x q table built once from
polynomial arithmetic; GF(q^2) operations reduce to component formulas in
GF(q).  No discrete-log tables are involved.
"""

import math


class FieldError(ValueError):
    """Invalid field construction or a domain error (e.g. inverting zero)."""


MAX_Q2 = 1 << 16  # all verification is exhaustive, so sizes stay desk-scale


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(math.isqrt(n)) + 1):
        if n % d == 0:
            return False
    return True


def factor_prime_power(q: int):
    """Return (p, h) with q = p^h, or raise FieldError."""
    if q < 2:
        raise FieldError(f"q={q} is not a prime power")
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            h = 0
            m = q
            while m % p == 0:
                m //= p
                h += 1
            if m != 1:
                raise FieldError(f"q={q} is not a prime power")
            return p, h
    raise FieldError(f"q={q} is not a prime power")


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p), coefficients ascending
# ---------------------------------------------------------------------------

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m, over GF(p)."""
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i in range(dm):
                a[shift + i] = (a[shift + i] - lead * m[i]) % p
        a.pop()
    return _poly_trim(a)


def _poly_irreducible(m, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(m)//2."""
    deg = len(m) - 1
    if deg <= 0:
        return False
    if m[-1] != 1:
        return False
    for d in range(1, deg // 2 + 1):
        for enc in range(p ** d):
            div = _int_to_poly(enc, p) + [0] * (d - _poly_deg_len(enc, p)) + [1]
            # div has degree exactly d and is monic
            if not _poly_mod(m, div, p):
                return False
    return True


def _poly_deg_len(enc: int, p: int) -> int:
    n = 0
    while enc:
        enc //= p
        n += 1
    return n


def _int_to_poly(enc: int, p: int):
    out = []
    while enc:
        out.append(enc % p)
        enc //= p
    return out


def _poly_to_int(a, p: int) -> int:
    out = 0
    for c in reversed(a):
        out = out * p + c
    return out


def smallest_irreducible(p: int, degree: int):
    """Monic irreducible of given degree over GF(p) with the smallest
    integer-encoded list of non-leading coefficients."""
    for enc in range(p ** degree):
        low = _int_to_poly(enc, p)
        m = low + [0] * (degree - len(low)) + [1]
        if _poly_irreducible(m, p):
            return m
    raise FieldError(f"no irreducible of degree {degree} over GF({p})")  # unreachable


class FieldTower:
    """The chain GF(p) <= GF(q = p^h) <= GF(q^2) with basis {1, eps}.

    ``gq`` is the degree-h modulus over GF(p) (ascending coefficients,
    None when h == 1) and ``gq2`` the degree-2 modulus over GF(q)
    (ascending, entries canonical GF(q) integers).  Both default to the
    irreducible polynomial of the required degree with the smallest
    integer encoding; both are re-checked for irreducibility here.
    """

    def __init__(self, p: int, h: int = 1, gq=None, gq2=None):
        if not is_prime(p):
            raise FieldError(f"p={p} is not prime")
        if h < 1:
            raise FieldError(f"h={h} must be >= 1")
        q = p ** h
        if q * q > MAX_Q2:
            raise FieldError(f"q={q} unsupported: q^2 exceeds {MAX_Q2}")
        self.p = p
        self.h = h
        self.q = q
        self.q2 = q * q

        if h == 1:
            if gq is not None:
                raise FieldError("gq must be absent when h=1")
            self.gq = None
        else:
            if gq is None:
                gq = smallest_irreducible(p, h)
            gq = list(gq)
            if len(gq) != h + 1 or gq[-1] != 1 or any(not 0 <= c < p for c in gq):
                raise FieldError(f"gq={gq} is not a monic degree-{h} polynomial over GF({p})")
            if not _poly_irreducible(gq, p):
                raise FieldError(f"gq={gq} is reducible over GF({p})")
            self.gq = gq

        self._build_q_tables()

        if gq2 is None:
            gq2 = self._smallest_irreducible_quadratic()
        gq2 = list(gq2)
        if len(gq2) != 3 or gq2[2] != 1 or any(not 0 <= c < q for c in gq2):
            raise FieldError(f"gq2={gq2} is not a monic quadratic over GF({q})")
        if self._quadratic_has_root(gq2):
            raise FieldError(f"gq2={gq2} is reducible over GF({q})")
        self.gq2 = gq2

        # eps^2 = r0 + r1*eps
        self._r0 = self.q_neg(gq2[0])
        self._r1 = self.q_neg(gq2[1])
        self.eps = q  # integer encoding of (0, 1)
        self.eps_q = self.pow(self.eps, q)  # Frobenius image of eps
        # trace is GF(q)-linear: T(u0 + eps*u1) = u0*T(1) + u1*T(eps)
        self._t1 = self.q_add(1, 1) if q % 2 else 0
        te = self.add(self.eps_q, self.eps)
        if te >= q:
            raise FieldError("trace(eps) not in GF(q); broken modulus")
        self._te = te

    # -- construction helpers ------------------------------------------------

    def _build_q_tables(self):
        p, h, q = self.p, self.h, self.q
        if h == 1:
            self._q_add = [[(a + b) % p for b in range(p)] for a in range(p)]
            self._q_neg = [(-a) % p for a in range(p)]
            self._q_mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            polys = [_int_to_poly(a, p) for a in range(q)]
            self._q_add = [
                [_poly_to_int([((pa[i] if i < len(pa) else 0) + (pb[i] if i < len(pb) else 0)) % p
                               for i in range(h)], p)
                 for pb in polys]
                for pa in polys
            ]
            self._q_neg = [_poly_to_int([(-c) % p for c in pa], p) for pa in polys]
            gq = self.gq
            self._q_mul = [
                [_poly_to_int(_poly_mod(_poly_mul(pa, pb, p), gq, p), p) for pb in polys]
                for pa in polys
            ]
        # inverses by Fermat: a^(q-2)
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self.q_pow(a, q - 2)
        self._q_inv = inv

    def _quadratic_has_root(self, g) -> bool:
        c0, c1, _ = g
        for x in range(self.q):
            if self.q_add(self.q_add(self.q_mul(x, x), self.q_mul(c1, x)), c0) == 0:
                return True
        return False

    def _smallest_irreducible_quadratic(self):
        for enc in range(self.q2):
            g = [enc % self.q, enc // self.q, 1]
            if not self._quadratic_has_root(g):
                return g
        raise FieldError("no irreducible quadratic found")  # unreachable

    # -- GF(q) arithmetic on integers in [0, q) ------------------------------

    def q_add(self, a: int, b: int) -> int:
        return self._q_add[a][b]

    def q_neg(self, a: int) -> int:
        return self._q_neg[a]

    def q_sub(self, a: int, b: int) -> int:
        return self._q_add[a][self._q_neg[b]]

    def q_mul(self, a: int, b: int) -> int:
        return self._q_mul[a][b]

    def q_inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("inverse of zero in GF(q)")
        return self._q_inv[a]

    def q_pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.q_pow(self.q_inv(a), -n)
        result = 1
        base = a
        while n:
            if n & 1:
                result = self.q_mul(result, base)
            base = self.q_mul(base, base)
            n >>= 1
        return result

    def q_elements(self):
        return range(self.q)

    # -- GF(q^2) arithmetic on integers in [0, q^2) ---------------------------

    def decompose(self, u: int):
        """Components (u0, u1) of u = u0 + eps*u1 with u0, u1 in GF(q)."""
        return u % self.q, u // self.q

    def compose(self, u0: int, u1: int) -> int:
        return u0 + self.q * u1

    def int_encode(self, u: int) -> int:
        """Canonical integer encoding (the representation itself)."""
        return self.int_decode(u)

    def int_decode(self, i: int) -> int:
        if not 0 <= i < self.q2:
            raise FieldError(f"{i} out of range for GF({self.q}^2)")
        return i

    def add(self, a: int, b: int) -> int:
        q = self.q
        return self._q_add[a % q][b % q] + q * self._q_add[a // q][b // q]

    def neg(self, a: int) -> int:
        q = self.q
        return self._q_neg[a % q] + q * self._q_neg[a // q]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        q = self.q
        a0, a1 = a % q, a // q
        b0, b1 = b % q, b // q
        mul = self._q_mul
        add = self._q_add
        cross = mul[a1][b1]
        lo = add[mul[a0][b0]][mul[cross][self._r0]]
        hi = add[add[mul[a0][b1]][mul[a1][b0]]][mul[cross][self._r1]]
        return lo + q * hi

    def inv(self, a: int) -> int:
        """Inverse via the conjugate: a^{-1} = frobenius(a) / norm(a)."""
        if a == 0:
            raise FieldError("inverse of zero in GF(q^2)")
        conj = self.frobenius(a)
        n = self.mul(a, conj)
        if n >= self.q:
            raise FieldError("norm left GF(q); broken field core")
        s = self._q_inv[n]
        q = self.q
        return self._q_mul[conj % q][s] + q * self._q_mul[conj // q][s]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = 1
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def elements(self):
        return range(self.q2)

    # -- Frobenius, trace, norm ----------------------------------------------

    def frobenius(self, u: int) -> int:
        """u^q, computed GF(q)-linearly as u0 + u1 * eps^q."""
        q = self.q
        u0, u1 = u % q, u // q
        e0, e1 = self.eps_q % q, self.eps_q // q
        return self._q_add[u0][self._q_mul[u1][e0]] + q * self._q_mul[u1][e1]

    def trace(self, u: int) -> int:
        """u^q + u, landing in GF(q)."""
        t = self.add(self.frobenius(u), u)
        if t >= self.q:
            raise FieldError("trace left GF(q); broken field core")
        return t

    def norm(self, u: int) -> int:
        """u^(q+1), landing in GF(q)."""
        n = self.mul(self.frobenius(u), u)
        if n >= self.q:
            raise FieldError("norm left GF(q); broken field core")
        return n

    # -- misc ------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FieldTower):
            return NotImplemented
        return (self.p, self.h, self.gq, self.gq2) == (other.p, other.h, other.gq, other.gq2)

    def __hash__(self):
        return hash((self.p, self.h, tuple(self.gq or ()), tuple(self.gq2)))

    def __repr__(self):
        return f"FieldTower(p={self.p}, h={self.h}, gq={self.gq}, gq2={self.gq2})"


def tower_for_q(q: int, gq=None, gq2=None) -> FieldTower:
    """Build the tower for a prime power q with default or given moduli."""
    p, h = factor_prime_power(q)
    return FieldTower(p, h, gq=gq, gq2=gq2)
