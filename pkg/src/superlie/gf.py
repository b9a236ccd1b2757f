"""Exact arithmetic in prime fields GF(p) and their extensions GF(p^k).

An element of GF(p^k) is stored as an integer code ``n = sum_i c_i * p**i``
where ``(c_0, ..., c_{k-1})`` are the coordinates in the power basis of a
fixed monic irreducible modulus polynomial.  All operations are table
driven (discrete logs for multiplication, digit vectors for addition), so
every computation built on top of this module is exact.

The module offers two layers:

* ``Field`` methods on raw integer codes (used by the heavy machinery);
* ``FieldElement``, a thin operator-overloaded wrapper for convenience.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple, Optional, Sequence

import numpy as np

_SMALL_TABLE_MAX = 512  # build full q x q scalar tables below this order


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomials over GF(p).
#
# A polynomial is a list/tuple of integer coefficients in ascending degree
# order, normalized so that the last entry is nonzero (the zero polynomial
# is the empty list).
# ---------------------------------------------------------------------------

def poly_trim(f: Sequence[int]) -> list[int]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_add(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c % p
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return poly_trim(out)


def poly_sub(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    return poly_add(f, [(-c) % p for c in g], p)


def poly_mul(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return poly_trim(out)


def poly_divmod(f: Sequence[int], g: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Quotient and remainder of f by g over GF(p).

    Args:
        f: dividend coefficients (ascending degree).
        g: divisor coefficients; must be nonzero.
        p: field characteristic.
    """
    g = poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = poly_trim(f)
    dg = len(g) - 1
    lead_inv = pow(g[-1], -1, p)
    quo = [0] * max(len(rem) - dg, 0)
    while len(rem) - 1 >= dg and rem:
        shift = len(rem) - 1 - dg
        coeff = (rem[-1] * lead_inv) % p
        quo[shift] = coeff
        for i, c in enumerate(g):
            rem[shift + i] = (rem[shift + i] - coeff * c) % p
        rem = poly_trim(rem)
    return poly_trim(quo), rem


def poly_mod(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    return poly_divmod(f, g, p)[1]


def poly_gcd(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    """Monic greatest common divisor over GF(p)."""
    a, b = poly_trim(f), poly_trim(g)
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def poly_powmod(f: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    """Compute f**e modulo mod over GF(p) by binary exponentiation."""
    result = [1]
    base = poly_mod(f, mod, p)
    while e > 0:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        base = poly_mod(poly_mul(base, base, p), mod, p)
        e >>= 1
    return result


def poly_deriv(f: Sequence[int], p: int) -> list[int]:
    return poly_trim([(i * c) % p for i, c in enumerate(f)][1:])


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin irreducibility test for a monic polynomial over GF(p)."""
    f = poly_trim(f)
    k = len(f) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    x = [0, 1]
    for ell in _prime_divisors(k):
        s = poly_powmod(x, p ** (k // ell), f, p)
        if len(poly_gcd(poly_sub(s, x, p), f, p)) != 1:
            return False
    s = poly_powmod(x, p ** k, f, p)
    return poly_sub(s, x, p) == []


def smallest_irreducible_modulus(p: int, k: int) -> tuple[int, ...]:
    """The lexicographically smallest monic irreducible of degree k over GF(p).

    Candidates x^k + c_{k-1} x^{k-1} + ... + c_0 are scanned in increasing
    order of the integer sum_i c_i p^i, so smaller low-degree coefficients
    win first (GF(9) gets x^2 + 1, GF(25) gets x^2 + 2).
    """
    for m in range(p ** k):
        coeffs = [(m // p ** i) % p for i in range(k)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible polynomial of degree {k} over GF({p})")


def _rref_mod_p(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Row-reduce an integer matrix mod p; returns (rref, pivot columns)."""
    m = np.array(mat, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        t = r + int(nz[0])
        if t != r:
            m[[r, t]] = m[[t, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        other = np.nonzero(m[:, c])[0]
        other = other[other != r]
        if other.size:
            m[other] = (m[other] - np.outer(m[other, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


class Field:
    """The finite field GF(p^k) with table-driven exact arithmetic.

    Use :func:`field_create` rather than instantiating directly; fields are
    cached so that elements of the same (p, k) share one instance.
    """

    def __init__(self, p: int, k: int = 1, modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if k < 1:
            raise ValueError(f"extension degree k = {k} must be >= 1")
        self.p = p
        self.k = k
        self.q = p ** k
        if modulus is None:
            modulus = smallest_irreducible_modulus(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = modulus
        self._build_tables()

    # -- construction helpers -------------------------------------------------

    def _encode(self, digits: Sequence[int]) -> int:
        code = 0
        for i, c in enumerate(digits):
            code += (c % self.p) * self.p ** i
        return code

    def _mul_raw(self, a: int, b: int) -> int:
        da = self._digit_tuple_raw(a)
        db = self._digit_tuple_raw(b)
        prod = poly_mul(da, db, self.p)
        prod = poly_mod(prod, self.modulus, self.p)
        return self._encode(prod)

    def _digit_tuple_raw(self, code: int) -> list[int]:
        return [(code // self.p ** i) % self.p for i in range(self.k)]

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        pows = p ** np.arange(k, dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self._digits = (codes[:, None] // pows[None, :]) % p  # (q, k)
        self._pows = pows

        # discrete log / exponent tables from a multiplicative generator
        gen = None
        for cand in range(2, q):
            seen = 1
            cur = cand
            order = 1
            while cur != 1:
                cur = self._mul_raw(cur, cand)
                order += 1
                if order > q - 1:
                    break
            if order == q - 1:
                gen = cand
                break
        if gen is None:  # q == 3 has generator 2; every field has one
            raise RuntimeError("no multiplicative generator found")
        exp = np.empty(q - 1, dtype=np.int64)
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            cur = self._mul_raw(cur, gen)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self.generator = gen
        self._exp = exp
        self._log = log

        # unary tables
        self._neg = self._encode_arr((-self._digits) % p)
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(q - 1 - log[np.arange(1, q)]) % (q - 1)]
        self._inv = inv
        frob = np.zeros(q, dtype=np.int64)
        frob[1:] = exp[(log[np.arange(1, q)] * p) % (q - 1)]
        self._frob = frob

        # scalar fast paths
        self._exp_l = exp.tolist()
        self._log_l = log.tolist()
        self._neg_l = self._neg.tolist()
        self._inv_l = inv.tolist()
        self._frob_l = frob.tolist()
        self._digit_tuples = [tuple(row) for row in self._digits.tolist()]
        if q <= _SMALL_TABLE_MAX:
            add_np = self._encode_arr((self._digits[:, None, :] + self._digits[None, :, :]) % p)
            mul_np = np.zeros((q, q), dtype=np.int64)
            nz = self._exp[(self._log[1:, None] + self._log[None, 1:]) % (q - 1)]
            mul_np[1:, 1:] = nz
            self._add_np: Optional[np.ndarray] = add_np
            self._mul_np: Optional[np.ndarray] = mul_np
            self._add_l = [row.tolist() for row in add_np]
            self._mul_l = [row.tolist() for row in mul_np]
        else:
            self._add_np = None
            self._mul_np = None
            self._add_l = None
            self._mul_l = None

    def _encode_arr(self, digits: np.ndarray) -> np.ndarray:
        return (digits * self._pows).sum(axis=-1)

    # -- scalar operations on integer codes -----------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add_l is not None:
            return self._add_l[a][b]
        da = self._digit_tuples[a]
        db = self._digit_tuples[b]
        p = self.p
        code = 0
        mult = 1
        for i in range(self.k):
            code += ((da[i] + db[i]) % p) * mult
            mult *= p
        return code

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg_l[b])

    def neg(self, a: int) -> int:
        return self._neg_l[a]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._mul_l is not None:
            return self._mul_l[a][b]
        return self._exp_l[(self._log_l[a] + self._log_l[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self._inv_l[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow_int(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero field element")
            return 0
        e_red = e % (self.q - 1)
        return self._exp_l[(self._log_l[a] * e_red) % (self.q - 1)]

    def frob(self, a: int) -> int:
        return self._frob_l[a]

    def trace(self, a: int) -> int:
        """Trace to the prime field GF(p), returned as a code (< p)."""
        t = 0
        cur = a
        for _ in range(self.k):
            t = self.add(t, cur)
            cur = self._frob_l[cur]
        return t

    def from_int(self, n: int) -> int:
        """Embed an integer (i.e. a prime-field scalar) as a code."""
        return n % self.p

    # -- vectorized operations on numpy arrays of codes ------------------------

    def add_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self._add_np is not None:
            return self._add_np[a, b]
        da = self._digits[a]
        db = self._digits[b]
        return self._encode_arr((da + db) % self.p)

    def sub_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.add_arr(a, self._neg[b])

    def neg_arr(self, a: np.ndarray) -> np.ndarray:
        return self._neg[a]

    def mul_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self._mul_np is not None:
            return self._mul_np[a, b]
        a = np.asarray(a)
        b = np.asarray(b)
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        zero = (a == 0) | (b == 0)
        return np.where(zero, 0, out)

    def smul_arr(self, c: int, a: np.ndarray) -> np.ndarray:
        if c == 0:
            return np.zeros_like(np.asarray(a))
        if c == 1:
            return np.asarray(a).copy()
        if self._mul_np is not None:
            return self._mul_np[c, a]
        a = np.asarray(a)
        out = self._exp[(self._log_l[c] + self._log[a]) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def frob_arr(self, a: np.ndarray) -> np.ndarray:
        return self._frob[a]

    # -- element interface ------------------------------------------------------

    def element(self, value) -> "FieldElement":
        """Build an element from an int (prime scalar), code tuple, or element."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (tuple, list)):
            if len(value) > self.k:
                raise ValueError("too many coordinates for this field")
            return FieldElement(self, self._encode(list(value) + [0] * (self.k - len(value))))
        return FieldElement(self, int(value) % self.p)

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self!r}")
        return FieldElement(self, code)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterator["FieldElement"]:
        for code in range(self.q):
            yield FieldElement(self, code)

    def random_codes(self, rng: np.random.Generator, size=None) -> np.ndarray:
        return rng.integers(0, self.q, size=size, dtype=np.int64)

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"


_FIELD_CACHE: dict[tuple[int, int], Field] = {}


def field_create(p: int, k: int = 1) -> Field:
    """Return the cached GF(p^k) with the canonical (smallest) modulus."""
    key = (p, k)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = Field(p, k)
    return _FIELD_CACHE[key]


class FieldElement:
    """An element of a :class:`Field`, wrapping an integer code."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field._digit_tuples[self.code]

    def _check(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("mixed-field arithmetic is not defined")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field.element(int(other))
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.code, other.code))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.code, other.code))

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(other.code, self.code))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.code, other.code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.code, other.code))

    def __rtruediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(other.code, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow_int(self.code, int(e)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def frobenius(self) -> "FieldElement":
        """The p-power map a -> a^p."""
        return FieldElement(self.field, self.field.frob(self.code))

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.code))

    def __repr__(self) -> str:
        if self.field.k == 1:
            return f"{self.code}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}x" if c != 1 else "x")
            else:
                terms.append(f"{c}x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(terms) if terms else "0"


def arith(a: FieldElement, b, op: str) -> FieldElement:
    """Dispatch a field operation by name.

    Args:
        a: left operand.
        b: right operand (a FieldElement, an int exponent for ``pow``, or
           None for the unary ops ``neg`` / ``inv``).
        op: one of add, sub, mul, div, pow, neg, inv.
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** int(b)
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")


class ArtinSchreierResult(NamedTuple):
    solutions: tuple[FieldElement, ...]
    extension_required: bool


def artin_schreier_solve(c: FieldElement, field: Optional[Field] = None) -> ArtinSchreierResult:
    """Solve t^p - t = c inside the field of c.

    The map t -> t^p - t is GF(p)-linear, so the equation reduces to a
    linear system over GF(p) in the power-basis coordinates.  When no
    solution exists in the field the result is empty with
    ``extension_required=True``; solutions then live in the extension of
    degree p (additive Hilbert 90: solvable iff the trace to GF(p) is 0).
    """
    if field is not None and field != c.field:
        raise ValueError("c does not belong to the given field")
    F = c.field
    p, k = F.p, F.k
    cols = []
    for j in range(k):
        e = p ** j  # code of basis element x^j
        cols.append(F._digit_tuples[F.sub(F.frob(e), e)])
    mat = np.array(cols, dtype=np.int64).T  # (k, k)
    aug = np.concatenate([mat, np.array(F._digit_tuples[c.code], dtype=np.int64)[:, None]], axis=1)
    red, pivots = _rref_mod_p(aug, p)
    if k in pivots:
        return ArtinSchreierResult((), True)
    particular = np.zeros(k, dtype=np.int64)
    for r, col in enumerate(pivots):
        particular[col] = red[r, k]
    free = [j for j in range(k) if j not in pivots]
    kernel = []
    red_h, piv_h = _rref_mod_p(mat, p)
    free_h = [j for j in range(k) if j not in piv_h]
    for fcol in free_h:
        vec = np.zeros(k, dtype=np.int64)
        vec[fcol] = 1
        for r, col in enumerate(piv_h):
            vec[col] = (-red_h[r, fcol]) % p
        kernel.append(vec)
    if len(kernel) != 1:
        raise RuntimeError("Artin-Schreier kernel should be the prime field")
    sols = []
    for t in range(p):
        digits = (particular + t * kernel[0]) % p
        sols.append(FieldElement(F, int((digits * F._pows).sum())))
    del free
    return ArtinSchreierResult(tuple(sorted(sols, key=lambda e: e.code)), False)


def artin_schreier_min_extension(c: FieldElement) -> int:
    """Smallest j such that t^p - t = c is solvable over GF(p^(k*j))."""
    return 1 if c.field.trace(c.code) == 0 else c.field.p
