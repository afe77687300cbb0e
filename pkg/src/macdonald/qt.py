"""Exact arithmetic in the parameters q, t.

Coefficients of Macdonald P-polynomials live in Q(q,t), but every denominator
that occurs in the alcove-walk formula or the nonattacking-filling formula is
a product of binomials 1 - q^a t^b.  Keeping denominators as multisets of such
factors turns exact reduction into a sequence of exact-division tests and
avoids general multivariate gcd.

Three layers:

  * Laurent polynomials in (q, t) over the integers, as sparse dicts mapping
    exponent pairs (a, b) to nonzero coefficients.  Negative exponents are
    allowed: individual walk terms carry t raised to a half-difference of
    Coxeter lengths, which can be negative.
  * RationalQT: a Laurent numerator over a multiset of binomial factors, kept
    in the canonical form where no factor divides the numerator exactly.
  * SymFun: a finite map from monomial content vectors to RationalQT
    coefficients, plus an accumulator used to collect formula terms per
    content over a fixed common denominator.

All values are treated as immutable; every operation returns fresh objects,
so they are safe to share across worker processes.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Iterator

Monomial = tuple[int, int]            # (a, b) standing for q^a * t^b
Laurent = dict[Monomial, int]         # sparse, zero coefficients never stored
DenomFactor = tuple[int, int]         # (a, b) standing for 1 - q^a t^b


class PoleError(ZeroDivisionError):
    """A denominator factor 1 - q^a t^b vanishes at the evaluation point."""


def l_zero() -> Laurent:
    return {}


def l_one() -> Laurent:
    return {(0, 0): 1}


def l_monomial(a: int, b: int, coef: int = 1) -> Laurent:
    return {(a, b): coef} if coef else {}


def binomial_factor(a: int, b: int) -> Laurent:
    """The Laurent polynomial 1 - q^a t^b."""
    _check_factor((a, b))
    return {(0, 0): 1, (a, b): -1}


def _check_factor(f: DenomFactor) -> None:
    a, b = f
    if a < 0 or b < 0 or (a, b) == (0, 0):
        raise ValueError(f"invalid denominator factor {f!r}")


def l_add(f: Laurent, g: Laurent) -> Laurent:
    if not f:
        return dict(g)
    if not g:
        return dict(f)
    out = dict(f)
    for m, c in g.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def l_neg(f: Laurent) -> Laurent:
    return {m: -c for m, c in f.items()}


def l_mul(f: Laurent, g: Laurent) -> Laurent:
    if not f or not g:
        return {}
    if len(f) > len(g):
        f, g = g, f
    out: Laurent = {}
    for (a1, b1), c1 in f.items():
        for (a2, b2), c2 in g.items():
            m = (a1 + a2, b1 + b2)
            s = out.get(m, 0) + c1 * c2
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def l_mul_monomial(f: Laurent, a: int, b: int, coef: int = 1) -> Laurent:
    if not coef:
        return {}
    return {(x + a, y + b): c * coef for (x, y), c in f.items()}


def l_eval(f: Laurent, q0: Fraction, t0: Fraction) -> Fraction:
    total = Fraction(0)
    for (a, b), c in f.items():
        total += c * q0**a * t0**b
    return total


def l_div_binomial(f: Laurent, a: int, b: int) -> Laurent | None:
    """Exact quotient of f by 1 - q^a t^b, or None if it does not divide.

    Exponents are grouped into classes modulo the step (a, b); within a class
    the division is the one-variable identity
    (sum c_i u^{m_i}) / (1 - u) = sum_j (prefix sum up to j) u^j,
    exact iff each class's coefficients sum to zero.
    """
    _check_factor((a, b))
    classes: dict[Monomial, list[tuple[int, int]]] = {}
    for (x, y), c in f.items():
        if a > 0:
            m = x // a
            key = (x - m * a, y - m * b)
        else:
            m = y // b
            key = (x, y - m * b)
        classes.setdefault(key, []).append((m, c))
    out: Laurent = {}
    for (kx, ky), terms in classes.items():
        if sum(c for _, c in terms) != 0:
            return None
        terms.sort()
        pos = {m: c for m, c in terms}
        prefix = 0
        for j in range(terms[0][0], terms[-1][0]):
            prefix += pos.get(j, 0)
            if prefix:
                out[(kx + j * a, ky + j * b)] = prefix
    return out


def laurent_mul(f: Laurent, g: Laurent) -> Laurent:
    """Product in canonical sparse form (alias kept for the public surface)."""
    return l_mul(f, g)


# ---------------------------------------------------------------------------
# Rational functions with structured denominators


class RationalQT:
    """A Laurent numerator over a multiset of factors 1 - q^a t^b.

    Zero is represented with an empty denominator.  Equality is semantic:
    cross-multiplication of numerators against the multiset difference of the
    denominators, so two reduced values built along different routes compare
    equal exactly when they are the same rational function.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Laurent, den: Iterable[DenomFactor] = ()):
        num = {m: c for m, c in num.items() if c}
        den = tuple(sorted(den)) if num else ()
        for f in den:
            _check_factor(f)
        self.num = num
        self.den = den

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalQT):
            return NotImplemented
        mine, theirs = Counter(self.den), Counter(other.den)
        lift_self = _factors_product(theirs - mine)
        lift_other = _factors_product(mine - theirs)
        return l_mul(self.num, lift_self) == l_mul(other.num, lift_other)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"RationalQT({rational_str(self)})"


def _factors_product(factors: Counter[DenomFactor]) -> Laurent:
    out = l_one()
    for (a, b), mult in factors.items():
        binom = binomial_factor(a, b)
        for _ in range(mult):
            out = l_mul(out, binom)
    return out


def rational_zero() -> RationalQT:
    return RationalQT({})


def rational_one() -> RationalQT:
    return RationalQT(l_one())


def rational_reduce(f: RationalQT) -> RationalQT:
    """Strip every denominator factor that divides the numerator exactly.

    Factors are retried in sorted order until none divides, so the result is
    a deterministic function of the input representation.
    """
    num = f.num
    remaining = list(f.den)
    changed = True
    while changed and remaining:
        changed = False
        for idx, (a, b) in enumerate(remaining):
            quot = l_div_binomial(num, a, b)
            if quot is not None:
                num = quot
                del remaining[idx]
                changed = True
                break
    return RationalQT(num, remaining)


def rational_add(f: RationalQT, g: RationalQT) -> RationalQT:
    """Exact sum over the multiset-lcm common denominator, reduced."""
    if not f:
        return rational_reduce(g)
    if not g:
        return rational_reduce(f)
    fc, gc = Counter(f.den), Counter(g.den)
    lcm = fc | gc
    num = l_add(
        l_mul(f.num, _factors_product(lcm - fc)),
        l_mul(g.num, _factors_product(lcm - gc)),
    )
    return rational_reduce(RationalQT(num, lcm.elements()))


def rational_mul(f: RationalQT, g: RationalQT) -> RationalQT:
    if not f or not g:
        return rational_zero()
    return rational_reduce(RationalQT(l_mul(f.num, g.num), f.den + g.den))


def rational_eval_at(f: RationalQT, q0: Fraction, t0: Fraction) -> Fraction:
    """Exact value at (q0, t0); raises PoleError on a vanishing factor."""
    q0, t0 = Fraction(q0), Fraction(t0)
    value = l_eval(f.num, q0, t0)
    for a, b in f.den:
        d = 1 - q0**a * t0**b
        if d == 0:
            raise PoleError(f"factor 1 - q^{a} t^{b} vanishes at ({q0}, {t0})")
        value /= d
    return value


# ---------------------------------------------------------------------------
# Canonical text rendering


def _power_str(sym: str, e: int) -> str:
    return sym if e == 1 else f"{sym}^{e}"


def monomial_str(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append(_power_str("q", a))
    if b:
        parts.append(_power_str("t", b))
    return "*".join(parts) if parts else "1"


def laurent_str(f: Laurent) -> str:
    if not f:
        return "0"
    chunks: list[str] = []
    for (a, b) in sorted(f):
        c = f[(a, b)]
        mono = monomial_str(a, b)
        mag = abs(c)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not chunks:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f"{' + ' if c > 0 else ' - '}{body}")
    return "".join(chunks)


def rational_str(f: RationalQT) -> str:
    num = laurent_str(f.num)
    if not f.den:
        return num
    factors = [f"(1 - {monomial_str(a, b)})" for a, b in f.den]
    den = factors[0] if len(factors) == 1 else "(" + "*".join(factors) + ")"
    return f"({num})/{den}"


def rational_json_obj(f: RationalQT) -> dict:
    return {
        "num": [[a, b, f.num[(a, b)]] for (a, b) in sorted(f.num)],
        "den": [[a, b] for (a, b) in f.den],
    }


# ---------------------------------------------------------------------------
# Symmetric-function accumulators keyed by content vectors

Content = tuple[int, ...]
SymFun = dict[Content, RationalQT]    # all keys share the same coordinate sum


def symfun_add_term(P: SymFun, content: Content, coef: RationalQT) -> SymFun:
    """Return P with coef added at x^content; zero coefficients are pruned."""
    content = tuple(content)
    if any(c < 0 for c in content):
        raise ValueError(f"negative entry in content vector {content}")
    if P:
        degree = sum(next(iter(P)))
        if sum(content) != degree or len(content) != len(next(iter(P))):
            raise ValueError(
                f"content {content} does not match ambient degree {degree}"
            )
    out = dict(P)
    new = rational_add(out.get(content, rational_zero()), coef)
    if new:
        out[content] = new
    else:
        out.pop(content, None)
    return out


def symfun_str(P: SymFun) -> str:
    if not P:
        return "0"
    terms = []
    for content in sorted(P, reverse=True):
        coef = P[content]
        xpart = f"x[{','.join(map(str, content))}]"
        if coef.den:
            cs = rational_str(coef)
        elif coef.num == l_one():
            cs = ""
        elif len(coef.num) == 1:
            ((a, b),) = coef.num
            c = coef.num[(a, b)]
            cs = laurent_str(coef.num) if c > 0 else f"({laurent_str(coef.num)})"
        else:
            cs = f"({laurent_str(coef.num)})"
        terms.append(f"{cs}*{xpart}" if cs else xpart)
    return " + ".join(terms)


def symfun_json_obj(parts: Content, n: int, P: SymFun) -> dict:
    return {
        "lambda": list(parts),
        "n": n,
        "monomials": [
            {"exp": list(content), **rational_json_obj(P[content])}
            for content in sorted(P, reverse=True)
        ],
    }


class ContentAccumulator:
    """Collects formula terms per content over a fixed shared denominator.

    Each term arrives as a numerator with a sub-multiset of the shared
    denominator; it is lifted by the complementary binomials before being
    added, so the stored numerator per content is a plain integer-dict sum and
    therefore independent of term order and of sharding.  A single reduction
    at the end yields canonical coefficients.
    """

    def __init__(self, den: Iterable[DenomFactor]):
        self.den = Counter(den)
        self._den_tuple = tuple(sorted(self.den.elements()))
        self.sums: dict[Content, Laurent] = {}

    def add(self, content: Content, num: Laurent, den: Counter[DenomFactor]) -> None:
        missing = self.den - den
        if missing:
            num = l_mul(num, _factors_product(missing))
        self.add_lifted(content, num)

    def add_lifted(self, content: Content, num: Laurent) -> None:
        slot = self.sums.get(content)
        if slot is None:
            self.sums[content] = dict(num)
        else:
            for m, c in num.items():
                s = slot.get(m, 0) + c
                if s:
                    slot[m] = s
                else:
                    del slot[m]

    def merge(self, other: "ContentAccumulator") -> None:
        if other._den_tuple != self._den_tuple:
            raise ValueError("cannot merge accumulators over different denominators")
        for content, num in other.sums.items():
            self.add_lifted(content, num)

    def finalize(self) -> SymFun:
        out: SymFun = {}
        for content in sorted(self.sums):
            num = self.sums[content]
            if not num:
                continue
            coef = rational_reduce(RationalQT(num, self._den_tuple))
            if coef:
                out[content] = coef
        return out


def symfun_eval_at(P: SymFun, q0: Fraction, t0: Fraction) -> dict[Content, Fraction]:
    return {c: rational_eval_at(coef, q0, t0) for c, coef in P.items()}


def iter_sorted(P: SymFun) -> Iterator[tuple[Content, RationalQT]]:
    for content in sorted(P, reverse=True):
        yield content, P[content]
