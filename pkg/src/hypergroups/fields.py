"""Small finite fields GF(p^m) as explicit tables.

Element i encodes the polynomial whose coefficients are the base-p
digits of i (coefficient of x^j = j-th digit), so elements sort by
coefficient tuple with zero first and one second. Prime fields use the
same table-driven representation for uniformity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    InternalInconsistencyError,
    NotIrreducibleError,
    NotMonicError,
    NotPrimeError,
    SizeLimitExceededError,
    UnknownSpecError,
)
from .groups import FiniteGroup

MAX_FIELD_ORDER = 512
MAX_PRIME = 97


@dataclass
class FiniteField:
    p: int
    m: int
    modulus: list[int]  # ascending coefficients, length m+1, monic
    q: int
    add: list[list[int]]
    mul: list[list[int]]
    zero: int
    one: int
    name: str

    def neg(self, a: int) -> int:
        for b in range(self.q):
            if self.add[a][b] == self.zero:
                return b
        raise InternalInconsistencyError(f"no additive inverse for {a}")

    def mul_inverse(self, a: int) -> int:
        for b in range(self.q):
            if self.mul[a][b] == self.one:
                return b
        raise InternalInconsistencyError(f"no multiplicative inverse for {a}")

    def __repr__(self) -> str:
        return f"FiniteField({self.name})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _factor_prime_power(q: int) -> tuple[int, int]:
    """q = p^m with p prime, or NotPrime."""
    if q < 2:
        raise NotPrimeError(f"{q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    m = 0
    rest = q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise NotPrimeError(f"{q} is not a prime power")
    return p, m


def _digits(n: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        n, r = divmod(n, p)
        out.append(r)
    return out


def _undigits(coeffs, p: int) -> int:
    n = 0
    for c in reversed(list(coeffs)):
        n = n * p + c
    return n


def _poly_mulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    """(a*b) mod modulus over GF(p); inputs of degree < m, monic modulus."""
    m = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce from the top; modulus is monic so no inverse needed
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            shift = d - m
            for j in range(m):
                prod[shift + j] = (prod[shift + j] - c * modulus[j]) % p
    out = prod[:m]
    out += [0] * (m - len(out))
    return out


def _poly_divides(divisor: list[int], poly: list[int], p: int) -> bool:
    """Whether the monic divisor divides poly over GF(p)."""
    rem = list(poly)
    dd = len(divisor) - 1
    while True:
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dd:
            break
        lead = rem[-1]
        shift = len(rem) - 1 - dd
        for j in range(dd + 1):
            rem[shift + j] = (rem[shift + j] - lead * divisor[j]) % p
    return not rem


def _irreducibility_witness(modulus: list[int], p: int) -> list[int] | None:
    """A monic proper factor of the modulus, or None. Trial division by
    all monic polynomials of degree up to deg/2; fine at q <= 512."""
    m = len(modulus) - 1
    for d in range(1, m // 2 + 1):
        for enc in range(p ** d):
            candidate = _digits(enc, p, d) + [1]
            if _poly_divides(candidate, modulus, p):
                return candidate
    return None


def make_prime_field(p: int) -> FiniteField:
    if not _is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p > MAX_PRIME:
        raise SizeLimitExceededError(f"prime fields capped at p <= {MAX_PRIME}")
    add = [[(i + j) % p for j in range(p)] for i in range(p)]
    mul = [[(i * j) % p for j in range(p)] for i in range(p)]
    return FiniteField(
        p=p, m=1, modulus=[0, 1], q=p, add=add, mul=mul,
        zero=0, one=1 % p, name=f"GF({p})",
    )


def make_extension_field(p: int, modulus) -> FiniteField:
    if not _is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    modulus = [int(c) % p for c in modulus]
    if not modulus or modulus[-1] == 0:
        raise NotMonicError("leading coefficient is 0 mod p")
    m = len(modulus) - 1
    if m < 2:
        raise NotMonicError("extension modulus must have degree >= 2")
    if modulus[-1] != 1:
        raise NotMonicError(f"leading coefficient {modulus[-1]} != 1")
    q = p ** m
    if q > MAX_FIELD_ORDER:
        raise SizeLimitExceededError(
            f"field order {q} exceeds cap {MAX_FIELD_ORDER}"
        )
    factor = _irreducibility_witness(modulus, p)
    if factor is not None:
        raise NotIrreducibleError(factor)
    polys = [_digits(i, p, m) for i in range(q)]
    add = [
        [_undigits([(a + b) % p for a, b in zip(pa, pb)], p) for pb in polys]
        for pa in polys
    ]
    mul = [
        [_undigits(_poly_mulmod(pa, pb, modulus, p), p) for pb in polys]
        for pa in polys
    ]
    return FiniteField(
        p=p, m=m, modulus=modulus, q=q, add=add, mul=mul,
        zero=0, one=1, name=f"GF({q};{format_poly(modulus)})",
    )


def default_modulus(p: int, m: int) -> list[int]:
    """The first monic irreducible of degree m in the element encoding
    order (scan n = 0, 1, ... as the non-leading coefficients)."""
    for enc in range(p ** m):
        candidate = _digits(enc, p, m) + [1]
        if _irreducibility_witness(candidate, p) is None:
            return candidate
    raise InternalInconsistencyError(
        f"no irreducible monic polynomial of degree {m} over GF({p})"
    )


def make_field(q: int) -> FiniteField:
    """GF(q) with the default modulus when q is a proper prime power."""
    if q > MAX_FIELD_ORDER:
        raise SizeLimitExceededError(f"field order {q} exceeds cap {MAX_FIELD_ORDER}")
    p, m = _factor_prime_power(q)
    if m == 1:
        return make_prime_field(p)
    return make_extension_field(p, default_modulus(p, m))


_TERM_RE = re.compile(r"^(\d+)?(?:(x)(?:\^(\d+))?)?$")


def parse_poly(text: str) -> list[int]:
    """Parse "x^2+x+1" style polynomials into ascending coefficients."""
    text = text.replace(" ", "").replace("*", "")
    terms = text.split("+")
    coeffs: dict[int, int] = {}
    for term in terms:
        m = _TERM_RE.match(term)
        if not m or not term:
            raise UnknownSpecError(f"cannot parse polynomial term {term!r}")
        coef, has_x, exp = m.groups()
        if coef is None and has_x is None:
            raise UnknownSpecError(f"cannot parse polynomial term {term!r}")
        c = int(coef) if coef is not None else 1
        d = 0 if has_x is None else (int(exp) if exp is not None else 1)
        coeffs[d] = coeffs.get(d, 0) + c
    degree = max(coeffs)
    return [coeffs.get(d, 0) for d in range(degree + 1)]


def format_poly(coeffs: list[int]) -> str:
    parts = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        if d == 0:
            parts.append(str(c))
        elif d == 1:
            parts.append("x" if c == 1 else f"{c}x")
        else:
            parts.append(f"x^{d}" if c == 1 else f"{c}x^{d}")
    return "+".join(parts) if parts else "0"


_FIELD_SPEC_RE = re.compile(r"^GF\((\d+)(?:;(.*))?\)$")


def parse_field_spec(spec: str) -> FiniteField:
    """Field spec strings: "GF(5)", "GF(4;x^2+x+1)"."""
    m = _FIELD_SPEC_RE.match(spec.strip())
    if not m:
        raise UnknownSpecError(f"unknown field spec {spec!r}")
    q = int(m.group(1))
    poly = m.group(2)
    if poly is None:
        return make_field(q)
    p, _ = _factor_prime_power(q)
    f = make_extension_field(p, parse_poly(poly))
    if f.q != q:
        raise UnknownSpecError(
            f"modulus degree gives order {f.q}, spec says {q}"
        )
    return f


def multiplicative_group(f: FiniteField) -> FiniteGroup:
    """F* on the q-1 nonzero elements; group index h is field index h+1."""
    n = f.q - 1
    table = [[f.mul[i + 1][j + 1] - 1 for j in range(n)] for i in range(n)]
    if any(v < 0 for row in table for v in row):
        raise InternalInconsistencyError("zero divisor in the nonzero elements")
    inverse = [f.mul_inverse(i + 1) - 1 for i in range(n)]
    group = FiniteGroup(
        order=n, table=table, identity=f.one - 1, inverse=inverse,
        name=f"{f.name}*",
    )
    if _cyclic_generator(group) is None:
        raise InternalInconsistencyError(f"{group.name} is not cyclic")
    return group


def _cyclic_generator(group: FiniteGroup) -> int | None:
    for x in range(group.order):
        y = x
        k = 1
        while y != group.identity:
            y = group.table[y][x]
            k += 1
        if k == group.order:
            return x
    return None


def check_field_tables(
    add: list[list[int]],
    mul: list[list[int]],
    zero: int,
    one: int,
    require_commutative_mul: bool = True,
) -> tuple[bool, str, tuple | None]:
    """Field axioms on raw tables; returns (ok, failing check, witness).

    Shared between constructed fields and reconstruction candidates;
    with require_commutative_mul off it checks a division ring instead.
    """
    n = len(add)
    rng = range(n)
    if zero == one:
        return False, "zero_equals_one", (zero,)
    for a in rng:
        if add[a][zero] != a or add[zero][a] != a:
            return False, "add_neutral", (a,)
    for a in rng:
        if all(add[a][b] != zero for b in rng):
            return False, "add_inverse", (a,)
    for a in rng:
        for b in rng:
            if add[a][b] != add[b][a]:
                return False, "add_commutative", (a, b)
            for c in rng:
                if add[add[a][b]][c] != add[a][add[b][c]]:
                    return False, "add_associative", (a, b, c)
    for a in rng:
        if mul[a][one] != a or mul[one][a] != a:
            return False, "mul_neutral", (a,)
        if mul[a][zero] != zero or mul[zero][a] != zero:
            return False, "mul_zero", (a,)
    for a in rng:
        for b in rng:
            if require_commutative_mul and mul[a][b] != mul[b][a]:
                return False, "mul_commutative", (a, b)
            for c in rng:
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                    return False, "left_distributive", (a, b, c)
                if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
                    return False, "right_distributive", (a, b, c)
                if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                    return False, "mul_associative", (a, b, c)
    for a in rng:
        if a == zero:
            continue
        if all(mul[a][b] != one for b in rng):
            return False, "mul_inverse", (a,)
    return True, "ok", None


@dataclass
class FieldReport:
    checks: dict[str, tuple]

    @property
    def overall(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "overall": self.overall,
            "checks": {
                name: {"ok": ok, "detail": list(detail) if detail else None}
                for name, (ok, detail) in self.checks.items()
            },
        }


def verify_field_axioms(f: FiniteField) -> FieldReport:
    """Exhaustive check of the FiniteField invariants plus cyclicity of
    the nonzero elements under multiplication."""
    checks: dict[str, tuple] = {}
    ok, what, witness = check_field_tables(f.add, f.mul, f.zero, f.one)
    if ok:
        checks["field_axioms"] = (True, None)
    else:
        checks["field_axioms"] = (False, (what,) + (witness or ()))
    try:
        g = multiplicative_group(f)
        checks["multiplicative_cyclic"] = (g.order == f.q - 1, None)
    except InternalInconsistencyError as exc:
        checks["multiplicative_cyclic"] = (False, (str(exc),))
    return FieldReport(checks=checks)


def field_isomorphism(f1: FiniteField, f2: FiniteField) -> list[int] | None:
    """An explicit field isomorphism as a mapping list, or None.

    Sends a multiplicative generator of f1 to each element of the same
    multiplicative order in f2 (ascending), extends multiplicatively,
    and keeps the first map that is also additive.
    """
    if f1.q != f2.q:
        return None

    def mult_order(f, a):
        k = 1
        y = a
        while y != f.one:
            y = f.mul[y][a]
            k += 1
        return k

    g1 = None
    for a in range(1, f1.q):
        if mult_order(f1, a) == f1.q - 1:
            g1 = a
            break
    if g1 is None:
        return None
    for cand in range(1, f2.q):
        if mult_order(f2, cand) != f2.q - 1:
            continue
        mapping = [f2.zero] * f1.q
        mapping[f1.one] = f2.one
        x = f1.one
        image = f2.one
        for _ in range(f1.q - 2):
            x = f1.mul[x][g1]
            image = f2.mul[image][cand]
            mapping[x] = image
        good = all(
            mapping[f1.add[a][b]] == f2.add[mapping[a]][mapping[b]]
            for a in range(f1.q)
            for b in range(f1.q)
        )
        if good:
            return mapping
    return None
