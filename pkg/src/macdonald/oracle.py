"""Independent check of P_lambda through Macdonald's orthogonality.

At an exact rational specialization (q0, t0), the polynomial is pinned down
by two facts: it is m_lambda plus lower terms in dominance order, and it is
orthogonal to every lower monomial symmetric function under the inner product
with <p_rho, p_rho> = z_rho * prod_i (1 - q0^rho_i)/(1 - t0^rho_i) on power
sums.  Solving that small linear system exactly over Fractions gives a value
for every coefficient that never touches the formulas being checked.

The solve runs over all partitions of |lambda| below lambda in dominance,
whatever their number of parts; only afterwards is the result restricted to
partitions with at most n parts, which is what survives in n variables.
Specializing at q0 = t0 must reproduce the Schur polynomial, computed here by
direct semistandard-tableau counting.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .chain import Partition
from .qt import PoleError, SymFun, rational_eval_at, rational_one

PartitionTuple = tuple[int, ...]
SymFunQ = dict[PartitionTuple, Fraction]


class OracleSingular(RuntimeError):
    """The Gram matrix is singular at the chosen specialization point."""


@lru_cache(maxsize=None)
def partitions_of(k: int) -> tuple[PartitionTuple, ...]:
    """All partitions of k, parts descending, in reverse lexicographic order."""
    if k == 0:
        return ((),)

    def rec(rest: int, limit: int) -> list[PartitionTuple]:
        if rest == 0:
            return [()]
        out = []
        for head in range(min(rest, limit), 0, -1):
            out.extend((head,) + tail for tail in rec(rest - head, head))
        return out

    return tuple(rec(k, k))


def dominance_le(mu: PartitionTuple, lam: PartitionTuple) -> bool:
    """Partial-sum comparison for partitions of the same size."""
    total_mu, total_lam = 0, 0
    for i in range(max(len(mu), len(lam))):
        total_mu += mu[i] if i < len(mu) else 0
        total_lam += lam[i] if i < len(lam) else 0
        if total_mu > total_lam:
            return False
    return True


def strip_zeros(parts) -> PartitionTuple:
    return tuple(p for p in parts if p > 0)


@lru_cache(maxsize=None)
def power_in_monomials(k: int) -> dict[PartitionTuple, dict[PartitionTuple, int]]:
    """Expansion of each power sum p_rho, rho |- k, in the monomial basis.

    Computed by literally multiplying out p_r = sum_i x_i^r in k variables;
    k variables are enough for every partition of k to survive.
    """
    nvars = max(k, 1)
    out: dict[PartitionTuple, dict[PartitionTuple, int]] = {}
    for rho in partitions_of(k):
        poly: dict[PartitionTuple, int] = {(0,) * nvars: 1}
        for r in rho:
            nxt: dict[PartitionTuple, int] = {}
            for expo, c in poly.items():
                for i in range(nvars):
                    e = list(expo)
                    e[i] += r
                    key = tuple(e)
                    nxt[key] = nxt.get(key, 0) + c
            poly = nxt
        # the m_mu coefficient is read off the sorted-descending monomial x^mu
        coeffs: dict[PartitionTuple, int] = {}
        for expo, c in poly.items():
            mu = strip_zeros(tuple(sorted(expo, reverse=True)))
            if expo == mu + (0,) * (nvars - len(mu)):
                coeffs[mu] = c
        out[rho] = coeffs
    return out


@lru_cache(maxsize=None)
def monomial_in_powers(k: int) -> dict[PartitionTuple, dict[PartitionTuple, Fraction]]:
    """Inverse transition: each m_mu as a rational combination of p_rho."""
    plist = partitions_of(k)
    p_in_m = power_in_monomials(k)
    size = len(plist)
    # mat[r][c] = coefficient of m_{plist[c]} in p_{plist[r]}, so p = mat * m
    # as basis columns and row mu of the inverse expands m_mu in power sums.
    mat = [[Fraction(p_in_m[rho].get(mu, 0)) for mu in plist] for rho in plist]
    inv = _invert(mat, size)
    out: dict[PartitionTuple, dict[PartitionTuple, Fraction]] = {}
    for i, mu in enumerate(plist):
        out[mu] = {
            plist[r]: inv[i][r] for r in range(size) if inv[i][r] != 0
        }
    return out


def _invert(mat: list[list[Fraction]], size: int) -> list[list[Fraction]]:
    aug = [row[:] + [Fraction(int(i == r)) for i in range(size)]
           for r, row in enumerate(mat)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            raise OracleSingular("transition matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


def _z(rho: PartitionTuple) -> int:
    out = 1
    mult: dict[int, int] = {}
    for r in rho:
        mult[r] = mult.get(r, 0) + 1
    for r, m in mult.items():
        fact = 1
        for x in range(2, m + 1):
            fact *= x
        out *= r**m * fact
    return out


def _solve(gram: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    size = len(rhs)
    aug = [gram[r][:] + [rhs[r]] for r in range(size)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            raise OracleSingular("Gram matrix is singular at this point")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][size] for r in range(size)]


def macdonald_oracle(lam: Partition, n: int, q0: Fraction,
                     t0: Fraction) -> SymFunQ:
    """Coefficients of P_lambda in the monomial basis at an exact point."""
    q0, t0 = Fraction(q0), Fraction(t0)
    lam_red = strip_zeros(lam.parts)
    k = sum(lam_red)
    below = [mu for mu in partitions_of(k)
             if mu != lam_red and dominance_le(mu, lam_red)]
    if not below:
        return {lam_red: Fraction(1)}
    m_in_p = monomial_in_powers(k)
    norms: dict[PartitionTuple, Fraction] = {}
    for rho in partitions_of(k):
        value = Fraction(_z(rho))
        for r in rho:
            dq = 1 - q0**r
            dt = 1 - t0**r
            if dt == 0:
                raise PoleError(f"1 - t0^{r} vanishes at t0={t0}")
            value *= Fraction(dq, 1) / dt
        norms[rho] = value

    def pair(mu: PartitionTuple, nu: PartitionTuple) -> Fraction:
        amu, anu = m_in_p[mu], m_in_p[nu]
        total = Fraction(0)
        for rho, c in amu.items():
            d = anu.get(rho)
            if d:
                total += c * d * norms[rho]
        return total

    gram = [[pair(mu, nu) for mu in below] for nu in below]
    rhs = [-pair(lam_red, nu) for nu in below]
    solution = _solve(gram, rhs)
    out: SymFunQ = {lam_red: Fraction(1)}
    for mu, c in zip(below, solution):
        if c != 0 and len(mu) <= n:
            out[mu] = c
    return out


def _count_ssyt(shape: PartitionTuple, content: PartitionTuple) -> int:
    """Semistandard tableaux of the given shape and content, by backtracking."""
    rows = len(shape)
    remaining = list(content)
    grid = [[0] * shape[r] for r in range(rows)]
    cells = [(r, c) for r in range(rows) for c in range(shape[r])]

    def rec(idx: int) -> int:
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        total = 0
        lo = grid[r][c - 1] if c else 1
        above = grid[r - 1][c] if r and c < shape[r - 1] else 0
        for v in range(max(lo, above + 1), len(remaining) + 1):
            if remaining[v - 1]:
                remaining[v - 1] -= 1
                grid[r][c] = v
                total += rec(idx + 1)
                remaining[v - 1] += 1
        grid[r][c] = 0
        return total

    return rec(0)


def schur_oracle(lam: Partition, n: int) -> SymFunQ:
    """Schur polynomial in the monomial basis via Kostka-number counting."""
    lam_red = strip_zeros(lam.parts)
    k = sum(lam_red)
    out: SymFunQ = {}
    for mu in partitions_of(k):
        if len(mu) > n or not dominance_le(mu, lam_red):
            continue
        count = _count_ssyt(lam_red, mu)
        if count:
            out[mu] = Fraction(count)
    return out


def collect_to_monomial_basis(P: SymFun, n: int) -> dict[PartitionTuple, object]:
    """Coefficient of m_mu = coefficient of the sorted content x^mu."""
    out = {}
    for content, coef in P.items():
        if tuple(sorted(content, reverse=True)) == content:
            out[strip_zeros(content)] = coef
    return out


@dataclass
class CheckEntry:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class SpecializationReport:
    lam: tuple[int, ...]
    n: int
    seed: int | None
    points: list[tuple[str, str]] = field(default_factory=list)
    checks: list[CheckEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(CheckEntry(name, ok, detail))


def _draw_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(2, 97), rng.randint(2, 97))


def _symmetry_failures(P: SymFun, n: int) -> list[str]:
    from math import factorial

    groups: dict[PartitionTuple, list] = {}
    for content, coef in P.items():
        groups.setdefault(tuple(sorted(content, reverse=True)), []).append(
            (content, coef)
        )
    problems = []
    for rep, members in groups.items():
        mult: dict[int, int] = {}
        for v in rep:
            mult[v] = mult.get(v, 0) + 1
        orbit = factorial(n)
        for m in mult.values():
            orbit //= factorial(m)
        if len(members) != orbit:
            problems.append(f"orbit of {rep} has {len(members)} of {orbit} terms")
            continue
        base = members[0][1]
        for content, coef in members[1:]:
            if coef != base:
                problems.append(f"coefficients differ inside orbit of {rep}")
                break
    return problems


def check_specializations(P: SymFun, lam: Partition, n: int,
                          seed: int | None = 0,
                          points: list[tuple[Fraction, Fraction]] | None = None,
                          ) -> SpecializationReport:
    """Symmetry, monicity, oracle agreement, and the Schur specialization."""
    report = SpecializationReport(lam=lam.parts, n=n, seed=seed)

    problems = _symmetry_failures(P, n)
    report.add("symmetry", not problems, "; ".join(problems))

    top = P.get(lam.parts)
    report.add(
        "monic",
        top is not None and top == rational_one(),
        "" if top else f"missing x^{lam.parts}",
    )

    collected = collect_to_monomial_basis(P, n)
    rng = random.Random(seed)

    def oracle_check(q0: Fraction, t0: Fraction) -> None:
        # raises PoleError/OracleSingular for an unusable point
        name = f"oracle@({q0},{t0})"
        expected = macdonald_oracle(lam, n, q0, t0)
        got = {
            mu: rational_eval_at(coef, q0, t0) for mu, coef in collected.items()
        }
        got = {mu: v for mu, v in got.items() if v != 0}
        report.points.append((str(q0), str(t0)))
        if got == expected:
            report.add(name, True)
        else:
            bad = sorted(set(expected) ^ set(got)) or sorted(
                mu for mu in expected if expected[mu] != got.get(mu)
            )
            report.add(name, False, f"mismatch at m_{bad[0]}")

    if points is not None:
        for q0, t0 in points:
            try:
                oracle_check(q0, t0)
            except (PoleError, OracleSingular) as exc:
                report.points.append((str(q0), str(t0)))
                report.add(f"oracle@({q0},{t0})", False, str(exc))
    else:
        # a drawn point may hit a pole or a singular Gram matrix; redraw
        done = attempts = 0
        while done < 3 and attempts < 60:
            attempts += 1
            q0, t0 = _draw_fraction(rng), _draw_fraction(rng)
            if q0 == 1 or t0 == 1 or q0 == t0:
                continue
            try:
                oracle_check(q0, t0)
            except (PoleError, OracleSingular):
                continue
            done += 1
        if done < 3:
            report.add("oracle-points", False,
                       f"only {done} usable points in {attempts} draws")

    # Schur rail: at q0 = t0 every coefficient must collapse to a Kostka number.
    q0 = None
    for _ in range(50):
        cand = _draw_fraction(rng)
        if cand != 1:
            try:
                got = {
                    mu: rational_eval_at(coef, cand, cand)
                    for mu, coef in collected.items()
                }
            except PoleError:
                continue
            q0 = cand
            break
    if q0 is None:
        report.add("schur", False, "no pole-free q0=t0 point found")
    else:
        got = {mu: v for mu, v in got.items() if v != 0}
        expected = schur_oracle(lam, n)
        report.add(
            "schur",
            got == expected,
            "" if got == expected else f"at q0=t0={q0}",
        )
    return report
