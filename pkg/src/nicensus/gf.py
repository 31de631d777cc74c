"""Exact arithmetic in finite fields F_{p^k} at desk scale.

Field elements are plain ints in ``[0, p**k)`` encoding coefficient
vectors in base ``p``, low-degree digit first (so the prime subfield is
``0..p-1`` verbatim).  A :class:`FieldCtx` owns the modulus and lookup
tables; every element operation is a pure function of ints, which keeps
the exhaustive-enumeration and sampling loops fast.

Fields of order up to 256 get full addition/multiplication tables;
fields up to 2**16 get discrete log/exp tables; anything larger falls
back to direct polynomial arithmetic (still exact, just slower).
Enumeration-style helpers refuse fields beyond 2**20 elements.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    FieldMismatch,
    NonPrimeCharacteristic,
    NotASubfield,
    ParseError,
    ReducibleModulus,
)

_FULL_TABLE_MAX = 256
_LOG_TABLE_MAX = 1 << 16
FIELD_SIZE_LIMIT = 1 << 20

_DEFAULT_BUDGET = 1 << 24

_ctx_serial = itertools.count()


def enumeration_budget(budget=None):
    """Resolve the enumeration cap: explicit arg, else NICENSUS_BUDGET, else 2**24."""
    if budget is not None:
        return int(budget)
    env = os.environ.get("NICENSUS_BUDGET")
    if env:
        return int(env)
    return _DEFAULT_BUDGET


def is_prime(n):
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


def prime_factors(n):
    """Sorted distinct prime factors of n >= 1 (trial division, desk scale)."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def factor_int(n):
    """Full factorization of n >= 1 as a dict prime -> exponent."""
    out = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Minimal polynomial arithmetic over Z/p, used only for modulus selection.
# (The full poly module builds on FieldCtx, so it cannot be used here.)
# ---------------------------------------------------------------------------


def _pp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pp_trim(out)


def _pp_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * mi) % p
        a.pop()
    return _pp_trim(a)


def _pp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # make b monic for the reduction step
        lead = b[-1]
        if lead != 1:
            linv = pow(lead, p - 2, p)
            b = [(c * linv) % p for c in b]
        a, b = b, _pp_mod(a, b, p)
    return a


def _pp_powmod_x(e, m, p):
    """t**e mod m over Z/p (m monic)."""
    result = [1]
    base = _pp_mod([0, 1], m, p)
    while e:
        if e & 1:
            result = _pp_mod(_pp_mul(result, base, p), m, p)
        base = _pp_mod(_pp_mul(base, base, p), m, p)
        e >>= 1
    return result


def _pp_sub_x(a, p):
    """a - t, normalized mod p."""
    out = list(a)
    while len(out) < 2:
        out.append(0)
    out[1] = (out[1] - 1) % p
    return _pp_trim(out)


def _pp_is_irreducible(f, p):
    """Rabin test for a monic polynomial over Z/p."""
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    # t^(p^k) == t mod f
    if _pp_sub_x(_pp_powmod_x(p ** k, f, p), p):
        return False
    for ell in prime_factors(k):
        diff = _pp_sub_x(_pp_powmod_x(p ** (k // ell), f, p), p)
        if not diff:
            return False
        if len(_pp_gcd(list(f), diff, p)) > 1:
            return False
    return True


_canonical_modulus_cache = {}


def canonical_modulus(p, k):
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Coefficient vectors are compared low-degree first, so the scan order
    is independent of any integer encoding.
    """
    key = (p, k)
    if key in _canonical_modulus_cache:
        return _canonical_modulus_cache[key]
    if k == 1:
        # t itself: F_p[t]/(t) = F_p
        mod = (0, 1)
    else:
        mod = None
        for tail in itertools.product(range(p), repeat=k):
            cand = list(tail) + [1]
            if _pp_is_irreducible(cand, p):
                mod = tuple(cand)
                break
        if mod is None:  # pragma: no cover - irreducibles always exist
            raise ReducibleModulus(f"no irreducible of degree {k} over F_{p}")
    _canonical_modulus_cache[key] = mod
    return mod


# ---------------------------------------------------------------------------
# Field contexts
# ---------------------------------------------------------------------------


class FieldCtx:
    """A finite field F_{p^k} with a fixed monic irreducible modulus.

    Immutable after construction; safe to share across workers.  Use
    :func:`field_create` rather than calling this directly, so that
    contexts are cached and ``uid`` values are stable.
    """

    __slots__ = (
        "p", "k", "order", "modulus", "uid",
        "add_rows", "mul_rows", "neg_table", "inv_table",
        "_exp", "_log",
    )

    def __init__(self, p, k, modulus):
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = tuple(int(c) % p for c in modulus)
        self.uid = next(_ctx_serial)
        self.add_rows = None
        self.mul_rows = None
        self.neg_table = None
        self.inv_table = None
        self._exp = None
        self._log = None
        self._build_tables()

    # -- encoding ----------------------------------------------------------

    def digits(self, a):
        """Coefficient vector of element ``a``, low degree first, length k."""
        p = self.p
        return tuple((a // p ** i) % p for i in range(self.k))

    def from_digits(self, digs):
        p = self.p
        val = 0
        for d in reversed(digs):
            val = val * p + (d % p)
        return val

    def elements(self):
        return range(self.order)

    # -- raw polynomial arithmetic (no tables) ------------------------------

    def _raw_mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        p = self.p
        da = list(self.digits(a))
        db = list(self.digits(b))
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        red = _pp_mod(prod, list(self.modulus), p)
        red += [0] * (self.k - len(red))
        return self.from_digits(red)

    def _raw_add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        da = self.digits(a)
        db = self.digits(b)
        return self.from_digits(tuple((x + y) % p for x, y in zip(da, db)))

    def _raw_pow(self, a, e):
        result = 1
        base = a
        while e:
            if e & 1:
                result = self._raw_mul(result, base)
            base = self._raw_mul(base, base)
            e >>= 1
        return result

    # -- table construction --------------------------------------------------

    def _find_generator(self):
        n = self.order - 1
        primes = prime_factors(n) if n > 1 else []
        for g in range(1, self.order):
            if g == 0:
                continue
            if all(self._raw_pow(g, n // ell) != 1 for ell in primes):
                return g
        raise AssertionError("multiplicative group has a generator")

    def _build_tables(self):
        q = self.order
        if q <= _FULL_TABLE_MAX:
            add = [[self._raw_add(a, b) for b in range(q)] for a in range(q)]
            mul = [[self._raw_mul(a, b) for b in range(q)] for a in range(q)]
            self.add_rows = add
            self.mul_rows = mul
            self.neg_table = [add[a].index(0) for a in range(q)]
            inv = [0] * q
            for a in range(1, q):
                inv[a] = mul[a].index(1)
            self.inv_table = inv
        elif q <= _LOG_TABLE_MAX:
            g = self._find_generator()
            exp = [1] * (q - 1)
            log = [0] * q
            acc = 1
            for i in range(q - 1):
                exp[i] = acc
                log[acc] = i
                acc = self._raw_mul(acc, g)
            self._exp = exp
            self._log = log

    # -- element operations ---------------------------------------------------

    def add(self, a, b):
        if self.add_rows is not None:
            return self.add_rows[a][b]
        return self._raw_add(a, b)

    def neg(self, a):
        if self.neg_table is not None:
            return self.neg_table[a]
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p = self.p
        return self.from_digits(tuple((-d) % p for d in self.digits(a)))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.mul_rows is not None:
            return self.mul_rows[a][b]
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._raw_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.inv_table is not None:
            return self.inv_table[a]
        if self._exp is not None:
            n = self.order - 1
            return self._exp[(n - self._log[a]) % n]
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._raw_pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_elt(self, a, e):
        if e < 0:
            return self.pow_elt(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            n = self.order - 1
            return self._exp[(self._log[a] * e) % n]
        result = 1
        base = a
        mul = self.mul
        while e:
            if e & 1:
                result = mul(result, base)
            base = mul(base, base)
            e >>= 1
        return result

    # -- subfield structure ----------------------------------------------------

    def subfield_degree(self, q):
        """Return m with q == p**m and m | k, or raise NotASubfield."""
        p = self.p
        m = 0
        qq = q
        while qq > 1 and qq % p == 0:
            qq //= p
            m += 1
        if qq != 1 or m == 0 or self.k % m != 0:
            raise NotASubfield(f"{q} is not a subfield order of F_{p}^{self.k}")
        return m

    def frob(self, a, q):
        """The q-power map a -> a**q (a field automorphism fixing F_q)."""
        self.subfield_degree(q)
        return self.pow_elt(a, q)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, k={self.k}, order={self.order})"


_field_cache = {}


def field_create(p, k=1, modulus=None):
    """Create (or fetch from cache) the field F_{p^k}.

    When ``modulus`` is omitted the canonical one is used: the
    lexicographically smallest monic irreducible of degree k over F_p,
    coefficients compared low-degree first.  An explicit modulus may be
    a coefficient sequence (low degree first, length k+1) or its integer
    encoding.
    """
    p = int(p)
    k = int(k)
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if k < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {k}")
    if p ** k > FIELD_SIZE_LIMIT:
        raise BudgetExceeded(f"field order {p}^{k} exceeds the supported size {FIELD_SIZE_LIMIT}")
    if modulus is None:
        mod = canonical_modulus(p, k)
    else:
        if hasattr(modulus, "coeffs"):
            mod = tuple(int(c) for c in modulus.coeffs)
        elif isinstance(modulus, int):
            digs = []
            m = modulus
            while m:
                digs.append(m % p)
                m //= p
            mod = tuple(digs)
        else:
            mod = tuple(int(c) % p for c in modulus)
        if len(mod) != k + 1:
            raise DegreeMismatch(f"modulus degree {len(mod) - 1} != extension degree {k}")
        if mod[-1] != 1:
            raise ReducibleModulus("modulus must be monic")
        if k >= 1 and not _pp_is_irreducible(list(mod), p):
            raise ReducibleModulus(f"modulus {mod} is reducible over F_{p}")
    key = (p, k, mod)
    ctx = _field_cache.get(key)
    if ctx is None:
        ctx = FieldCtx(p, k, mod)
        _field_cache[key] = ctx
    return ctx


def modulus_int(ctx):
    """Integer encoding of the modulus (base-p evaluation, leading term included)."""
    val = 0
    for c in reversed(ctx.modulus):
        val = val * ctx.p + c
    return val


def describe_field(ctx):
    """Canonical text descriptor, parseable by :func:`parse_field_descriptor`."""
    if ctx.k == 1:
        return str(ctx.p)
    return f"{ctx.p}^{ctx.k}/{modulus_int(ctx)}"


def parse_field_descriptor(text):
    """Parse "p", "p^k" or "p^k/modulus-int" into a FieldCtx."""
    s = text.strip()
    mod = None
    if "/" in s:
        s, mod_s = s.split("/", 1)
        try:
            mod = int(mod_s)
        except ValueError:
            raise ParseError(f"bad modulus integer {mod_s!r}", position=text.find("/") + 1)
    if "^" in s:
        ps, ks = s.split("^", 1)
    else:
        ps, ks = s, "1"
    try:
        p, k = int(ps), int(ks)
    except ValueError:
        raise ParseError(f"bad field descriptor {text!r}", position=0)
    return field_create(p, k, mod)


# ---------------------------------------------------------------------------
# Wrapped elements (convenience surface; hot loops use raw ints)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FElt:
    """A field element: a context plus its integer encoding."""

    ctx: FieldCtx
    value: int

    @property
    def coeffs(self):
        return self.ctx.digits(self.value)

    def _check(self, other):
        if not isinstance(other, FElt):
            raise TypeError(f"cannot combine FElt with {type(other).__name__}")
        if other.ctx is not self.ctx:
            raise FieldMismatch("elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FElt(self.ctx, self.ctx.add(self.value, other.value))

    def __sub__(self, other):
        other = self._check(other)
        return FElt(self.ctx, self.ctx.sub(self.value, other.value))

    def __mul__(self, other):
        other = self._check(other)
        return FElt(self.ctx, self.ctx.mul(self.value, other.value))

    def __truediv__(self, other):
        other = self._check(other)
        return FElt(self.ctx, self.ctx.div(self.value, other.value))

    def __neg__(self):
        return FElt(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e):
        return FElt(self.ctx, self.ctx.pow_elt(self.value, e))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FElt({self.value} in F_{self.ctx.order})"


def frobenius(x, q):
    """Apply the q-power Frobenius to x (FElt or int with ctx implied)."""
    if isinstance(x, FElt):
        return FElt(x.ctx, x.ctx.frob(x.value, q))
    raise TypeError("frobenius expects an FElt; use ctx.frob for raw ints")


def degree_over_subfield(x, q):
    """Smallest e >= 1 with x**(q**e) == x; divides the extension degree."""
    if isinstance(x, FElt):
        ctx, val = x.ctx, x.value
    else:
        raise TypeError("degree_over_subfield expects an FElt")
    m = ctx.subfield_degree(q)
    bound = ctx.k // m
    y = ctx.frob(val, q)
    e = 1
    while y != val:
        y = ctx.frob(y, q)
        e += 1
        if e > bound:  # pragma: no cover - orbit length always divides
            raise AssertionError("Frobenius orbit exceeded extension degree")
    return e


# ---------------------------------------------------------------------------
# Subfield embeddings
# ---------------------------------------------------------------------------

_embedding_cache = {}


def subfield_embedding(sub, ext):
    """Embedding table F_sub -> F_ext (tuple indexed by sub elements).

    The embedding sends the generator of ``sub`` to the lexicographically
    smallest root of sub's modulus in ``ext`` (coefficient vectors of
    candidate roots compared low-degree first), which pins a single
    canonical map per tower.
    """
    key = (sub.uid, ext.uid)
    cached = _embedding_cache.get(key)
    if cached is not None:
        return cached
    if sub.p != ext.p:
        raise NotASubfield("different characteristics")
    if ext.k % sub.k != 0:
        raise NotASubfield(f"F_{sub.order} does not embed in F_{ext.order}")
    if sub.k == 1:
        table = tuple(range(sub.p))
        _embedding_cache[key] = table
        return table
    roots = []
    mod = sub.modulus  # coefficients < p are valid in ext too
    for y in ext.elements():
        acc = 0
        for c in reversed(mod):
            acc = ext.add(ext.mul(acc, y), c)
        if acc == 0:
            roots.append(y)
    if not roots:  # pragma: no cover - guaranteed by degree divisibility
        raise NotASubfield("modulus has no root in the extension")
    rho = min(roots, key=ext.digits)
    table = []
    for x in sub.elements():
        digs = sub.digits(x)
        acc = 0
        for d in reversed(digs):
            acc = ext.add(ext.mul(acc, rho), d)
        table.append(acc)
    table = tuple(table)
    _embedding_cache[key] = table
    return table


def subfield_lift(sub, ext):
    """Partial inverse of the embedding: dict ext-value -> sub-value."""
    table = subfield_embedding(sub, ext)
    return {v: i for i, v in enumerate(table)}
