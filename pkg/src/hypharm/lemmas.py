"""Executable checkers for the supporting lemmas and the inequality chain.

Every checker either produces a witness that can be re-verified directly
(prime in a range, element with a large prime factor, both sides of an
lcm bound) or certifies an identity/inequality by exact rational
arithmetic.  Sweeps over parameter boxes return the failing instances
explicitly; an existential claim without a witness is a hard failure.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .kernel import (
    Enclosure,
    PrimeSieve,
    Verdict,
    lcm_progression,
    factorial_valuation,
)
from .sums import (
    DEFAULT_PRECISION_BITS,
    MAX_PRECISION_BITS,
    Interval,
    IntervalPair,
    eta_band_report,
    g_exact,
    solve_eta,
    telescope_check,
)


@dataclass(frozen=True)
class WitnessReport:
    """Outcome of one lemma instance, with a re-checkable witness."""

    claim: str
    params: dict
    witness: dict | None
    holds: bool


@dataclass
class SweepResult:
    """Outcome of an exhaustive run of one checker over a parameter box."""

    claim: str
    params: dict
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return not self.failures


# ---------------------------------------------------------------------------
# prime windows
# ---------------------------------------------------------------------------


def check_bertrand(n: int, sieve: PrimeSieve | None = None, remark: bool = False) -> WitnessReport:
    """Smallest prime in [n, 2n] (or [n, 2n-1] in the tightened mode)."""
    if remark and n < 2:
        raise ValueError("tightened window needs n > 1")
    if n < 1:
        raise ValueError("n must be positive")
    hi = 2 * n - 1 if remark else 2 * n
    if sieve is None:
        sieve = PrimeSieve(max(hi, 2))
    prime = sieve.smallest_prime_in(n, hi)
    return WitnessReport(
        claim="bertrand-remark" if remark else "bertrand",
        params={"n": n},
        witness=None if prime is None else {"prime": prime},
        holds=prime is not None,
    )


def sweep_bertrand(n_max: int, remark: bool = False) -> SweepResult:
    """Exhaustive prime-in-[n,2n] check for 1 <= n <= n_max (2 <= n in remark mode)."""
    sieve = PrimeSieve(2 * n_max + 1)
    primes = list(sieve.primes())
    result = SweepResult(
        claim="bertrand-remark" if remark else "bertrand",
        params={"n_max": n_max, "window": "[n,2n-1]" if remark else "[n,2n]"},
    )
    idx = 0
    for n in range(2 if remark else 1, n_max + 1):
        while primes[idx] < n:
            idx += 1
        result.checked += 1
        if primes[idx] > (2 * n - 1 if remark else 2 * n):
            result.failures.append({"n": n})
    return result


def greatest_prime_factor_table(limit: int) -> list[int]:
    """gpf[x] = largest prime factor of x (0 for x < 2)."""
    gpf = [0] * (limit + 1)
    for p in range(2, limit + 1):
        if gpf[p] == 0:
            for m in range(p, limit + 1, p):
                gpf[m] = p
    return gpf


def _largest_prime_factor(x: int) -> int:
    best = 1
    d = 2
    while d * d <= x:
        while x % d == 0:
            best = d
            x //= d
        d += 1
    return max(best, x) if x > 1 else best


def _window_witness(lo: int, count: int, threshold: int, gpf) -> dict | None:
    """First element of {lo, ..., lo+count-1} with a prime factor >= threshold."""
    for x in range(lo, lo + count):
        p = gpf[x] if gpf is not None else _largest_prime_factor(x)
        if p >= threshold:
            return {"element": x, "prime": p}
    return None


def check_prime_window(n: int, k: int, gpf=None) -> WitnessReport:
    """Element of {n, ..., n+k-1} with a prime factor >= k+1, given n > k >= 1."""
    if not n > k >= 1:
        raise ValueError("needs n > k >= 1")
    witness = _window_witness(n, k, k + 1, gpf)
    return WitnessReport("prime-window", {"n": n, "k": k}, witness, witness is not None)


def sweep_prime_window(k_max: int, n_span: int) -> SweepResult:
    """Check every window with 1 <= k <= k_max, k < n <= k + n_span."""
    gpf = greatest_prime_factor_table(k_max + n_span + k_max)
    result = SweepResult("prime-window", {"k_max": k_max, "n_span": n_span})
    for k in range(1, k_max + 1):
        for n in range(k + 1, k + n_span + 1):
            result.checked += 1
            if _window_witness(n, k, k + 1, gpf) is None:
                result.failures.append({"n": n, "k": k})
    return result


def check_large_prime_window(n: int, k: int, gpf=None) -> WitnessReport:
    """Element of {n, ..., n+k} with a prime factor >= 2(k+1), given n >= (k+1)^2."""
    if k < 1:
        raise ValueError("needs k >= 1")
    if n < (k + 1) ** 2:
        raise ValueError("needs n >= (k+1)^2")
    witness = _window_witness(n, k + 1, 2 * (k + 1), gpf)
    return WitnessReport("large-prime-window", {"n": n, "k": k}, witness, witness is not None)


def sweep_large_prime_window(k_max: int, n_span: int) -> SweepResult:
    """Check every window with 1 <= k <= k_max, (k+1)^2 <= n <= (k+1)^2 + n_span."""
    gpf = greatest_prime_factor_table((k_max + 1) ** 2 + n_span + k_max + 1)
    result = SweepResult("large-prime-window", {"k_max": k_max, "n_span": n_span})
    for k in range(1, k_max + 1):
        for n in range((k + 1) ** 2, (k + 1) ** 2 + n_span + 1):
            result.checked += 1
            if _window_witness(n, k + 1, 2 * (k + 1), gpf) is None:
                result.failures.append({"n": n, "k": k})
    return result


# ---------------------------------------------------------------------------
# lcm lower bound for arithmetic progressions
# ---------------------------------------------------------------------------


def _prime_divisors(x: int) -> list[int]:
    out = []
    d = 2
    while d * d <= x:
        if x % d == 0:
            out.append(d)
            while x % d == 0:
                x //= d
        d += 1
    if x > 1:
        out.append(x)
    return out


def check_lcm_bound(a: int, b: int, n: int) -> WitnessReport:
    """Exact comparison lcm{a, a+b, ..., a+nb} >= correction * product/(n!).

    The right side is prod_{p | b} p^(v_p(n!)) * (1/n!) * prod_{i=0..n} (a+ib),
    evaluated as an exact rational.  Requires gcd(a, b) = 1.
    """
    if math.gcd(a, b) != 1:
        raise ValueError("progression start and step must be coprime")
    if a < 1 or b < 1 or n < 0:
        raise ValueError("needs a, b >= 1 and n >= 0")
    lhs = lcm_progression(a, b, n)
    rhs = Fraction(math.prod(a + i * b for i in range(n + 1)), math.factorial(n))
    for p in _prime_divisors(b):
        rhs *= p ** factorial_valuation(n, p)
    return WitnessReport(
        claim="lcm-bound",
        params={"a": a, "b": b, "n": n},
        witness={"lhs": lhs, "rhs": rhs},
        holds=lhs >= rhs,
    )


def sweep_lcm_bound(a_max: int, b_max: int, n_max: int) -> SweepResult:
    result = SweepResult("lcm-bound", {"a_max": a_max, "b_max": b_max, "n_max": n_max})
    for a in range(1, a_max + 1):
        for b in range(1, b_max + 1):
            if math.gcd(a, b) != 1:
                continue
            for n in range(0, n_max + 1):
                result.checked += 1
                report = check_lcm_bound(a, b, n)
                if not report.holds:
                    result.failures.append(report.params | {"witness": report.witness})
    return result


# ---------------------------------------------------------------------------
# power-sum closed forms
# ---------------------------------------------------------------------------

# Numerator polynomials in m = r+1 shared by both parities; the even case
# divides by the second constant, the odd case by the first.
_POWER_SUM_FORMS = {
    2: (lambda m: m**3 - m, 6, 24),
    4: (lambda m: 3 * m**5 - 10 * m**3 + 7 * m, 30, 480),
    6: (lambda m: 3 * m**7 - 21 * m**5 + 49 * m**3 - 31 * m, 42, 2688),
}


def power_sum_closed_form(r: int, exponent: int) -> Fraction:
    """Closed form for the half-range power sum attached to extent r.

    Even r: sum of i^exponent for i = 1 .. r/2.
    Odd r:  sum of (2i-1)^exponent for i = 1 .. (r+1)/2.
    """
    if r < 1:
        raise ValueError("extent must be positive")
    if exponent not in _POWER_SUM_FORMS:
        raise ValueError(f"unsupported exponent {exponent}; expected one of 2, 4, 6")
    numerator, odd_div, even_div = _POWER_SUM_FORMS[exponent]
    return Fraction(numerator(r + 1), even_div if r % 2 == 0 else odd_div)


def centered_power_sum_closed(r: int, exponent: int) -> Fraction:
    """Closed form for sum of (i - r/2)^exponent, i = 0..r (both parities)."""
    if r < 0:
        raise ValueError("extent must be nonnegative")
    if exponent not in _POWER_SUM_FORMS:
        raise ValueError(f"unsupported exponent {exponent}; expected one of 2, 4, 6")
    numerator, _, even_div = _POWER_SUM_FORMS[exponent]
    return Fraction(numerator(r + 1), even_div // 2)


def centered_power_sum_direct(r: int, exponent: int) -> Fraction:
    """Direct evaluation of sum of (i - r/2)^exponent, i = 0..r."""
    return sum(Fraction(2 * i - r, 2) ** exponent for i in range(r + 1))


def sweep_power_sums(r_max: int, exponents=(2, 4, 6)) -> SweepResult:
    """Closed form versus running direct sums for every r <= r_max."""
    result = SweepResult("power-sums", {"r_max": r_max, "exponents": list(exponents)})
    even_sums = {e: 0 for e in exponents}  # sum of i^e, i = 1..r/2
    odd_sums = {e: 0 for e in exponents}  # sum of (2i-1)^e, i = 1..(r+1)/2
    for r in range(1, r_max + 1):
        for e in exponents:
            if r % 2 == 0:
                even_sums[e] += (r // 2) ** e
                direct = even_sums[e]
            else:
                odd_sums[e] += r**e
                direct = odd_sums[e]
            result.checked += 1
            if power_sum_closed_form(r, e) != direct:
                result.failures.append({"r": r, "exponent": e, "direct": direct})
    return result


# ---------------------------------------------------------------------------
# the necessary Diophantine identity and its equivalent forms
# ---------------------------------------------------------------------------


def diophantine_bracket(a: int, w: int) -> int:
    """(2a - 1)(2a + 2w + 1) + 1, the integer bracket of a window (a, w)."""
    return (2 * a - 1) * (2 * a + 2 * w + 1) + 1


def check_necessary_identity(pair: IntervalPair) -> bool:
    """Integer identity every equal-sum pair must satisfy:
    (r+1) * bracket(a2, s) == (s+1) * bracket(a1, r)."""
    a1, r = pair.first.a, pair.first.r
    a2, s = pair.second.a, pair.second.r
    return (r + 1) * diophantine_bracket(a2, s) == (s + 1) * diophantine_bracket(a1, r)


def solve_second_start(a1: int, r: int, s: int) -> int | None:
    """The unique a2 >= 1 making the necessary identity hold, if any.

    bracket(a2, s) = 4*a2^2 + 4*a2*s - 2*s is solved for a2 by integer
    square root, so the search over (a1, r, s) boxes is exact.
    """
    target, remainder = divmod((s + 1) * diophantine_bracket(a1, r), r + 1)
    if remainder:
        return None
    disc = s * s + 2 * s + target
    if disc < 0:
        return None
    d = math.isqrt(disc)
    if d * d != disc or (d - s) % 2:
        return None
    a2 = (d - s) // 2
    return a2 if a2 >= 1 else None


def search_necessary_identity(a_max: int, w_max: int) -> list[tuple[int, int, int, int]]:
    """All (a1, r, a2, s) in the box [1,a_max]^2 x [0,w_max]^2 satisfying
    the necessary identity, in lexicographic order."""
    found = []
    for a1 in range(1, a_max + 1):
        for r in range(0, w_max + 1):
            for s in range(0, w_max + 1):
                a2 = solve_second_start(a1, r, s)
                if a2 is not None and a2 <= a_max:
                    found.append((a1, r, a2, s))
    found.sort()
    return found


def compute_L(r: int, s: int) -> Fraction:
    """Exact gap term L = s(s+2)/(4(s+1)) - r(r+2)/(4(r+1)).

    Also re-derives L from the alternative split
    (1/4) [ (s+1) - 1/(s+1) - (r+1) + 1/(r+1) ] and checks L < (s+1)/4;
    both facts are identities and a violation raises.
    """
    if r < 0 or s < 0:
        raise ValueError("extents must be nonnegative")
    value = Fraction(s * (s + 2), 4 * (s + 1)) - Fraction(r * (r + 2), 4 * (r + 1))
    alternative = (
        Fraction(s + 1) - Fraction(1, s + 1) - Fraction(r + 1) + Fraction(1, r + 1)
    ) / 4
    if value != alternative:
        raise AssertionError(f"gap-term split mismatch at r={r}, s={s}")
    if not value < Fraction(s + 1, 4):
        raise AssertionError(f"gap-term bound failed at r={r}, s={s}")
    return value


@dataclass(frozen=True)
class EquivalenceReport:
    """Truth values of the three equivalent forms of the necessary identity."""

    pair: IntervalPair
    integer_form: bool
    completed_square_form: bool
    shifted_reciprocal_form: bool

    @property
    def equivalent(self) -> bool:
        return self.integer_form == self.completed_square_form == self.shifted_reciprocal_form

    @property
    def holds(self) -> bool:
        return self.integer_form

    def __bool__(self) -> bool:
        return self.equivalent


def check_eq11_equivalence(pair: IntervalPair) -> EquivalenceReport:
    """Exact check that the integer identity, its completed-square form and
    its shifted-reciprocal form all hold or all fail together."""
    a1, r = pair.first.a, pair.first.r
    a2, s = pair.second.a, pair.second.r
    c1 = Fraction(2 * a1 + r, 2)
    c2 = Fraction(2 * a2 + s, 2)

    def completed_square(c: Fraction, w: int) -> Fraction:
        return c * c / (w + 1) - (Fraction(w + 1) - Fraction(1, w + 1)) / 4

    gap = compute_L(r, s)
    return EquivalenceReport(
        pair=pair,
        integer_form=check_necessary_identity(pair),
        completed_square_form=completed_square(c1, r) == completed_square(c2, s),
        shifted_reciprocal_form=(
            Fraction(s + 1) / (c2 * c2) == Fraction(r + 1) / (c1 * c1 + (r + 1) * gap)
        ),
    )


# ---------------------------------------------------------------------------
# the seven-term decomposition of a sum difference
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecompositionReport:
    """The seven difference terms of G(a1, r) - G(a2, s) and their checks.

    terms[0..5] are exact closed forms; terms[6] is the exact residual, so
    the seven always sum to the difference by construction (asserted).
    ``bounds`` is populated by the positivity chain when all of its
    hypotheses hold; otherwise ``hypothesis_failures`` names what failed.
    """

    pair: IntervalPair
    L: Fraction
    terms: tuple[Fraction, ...]
    difference: Fraction
    e11: bool
    expansion_sums_verified: bool
    rewrites_verified: bool | None
    bounds: dict = field(default_factory=dict)
    hypothesis_failures: tuple[str, ...] = ()

    @property
    def chain_certified(self) -> bool:
        return bool(self.bounds) and all(self.bounds.values()) and not self.hypothesis_failures


def _decomposition_terms(pair: IntervalPair) -> tuple[tuple[Fraction, ...], Fraction]:
    a1, r = pair.first.a, pair.first.r
    a2, s = pair.second.a, pair.second.r
    c1 = Fraction(2 * a1 + r, 2)
    c2 = Fraction(2 * a2 + s, 2)
    m, n = r + 1, s + 1
    t1 = Fraction(m) / c1**2 - Fraction(n) / c2**2
    t2 = Fraction(m**3 - m, 4) / c1**4 - Fraction(n**3 - n, 4) / c2**4
    t3 = Fraction(m**5, 16) / c1**6 - Fraction(n**5, 16) / c2**6
    t4 = Fraction(5, 24) * (Fraction(n**3) / c2**6 - Fraction(m**3) / c1**6)
    t5 = Fraction(7, 48) * (Fraction(m) / c1**6 - Fraction(n) / c2**6)
    t6 = Fraction(1, 64) * (Fraction(m**7) / c1**8 - Fraction(n**7) / c2**8)
    difference = g_exact(pair.first) - g_exact(pair.second)
    t7 = difference - (t1 + t2 + t3 + t4 + t5 + t6)
    return (t1, t2, t3, t4, t5, t6, t7), difference


def _verify_expansion_sums(r: int, s: int) -> bool:
    return all(
        centered_power_sum_direct(w, e) == centered_power_sum_closed(w, e)
        for w in {r, s}
        for e in (2, 4, 6)
    )


def _verify_rewrites(pair: IntervalPair, terms, gap: Fraction) -> bool:
    # Under the necessary identity the leading terms collapse into forms
    # proportional to powers of the gap term; all checks are exact.
    a1, r = pair.first.a, pair.first.r
    a2, s = pair.second.a, pair.second.r
    c1sq = Fraction(2 * a1 + r, 2) ** 2
    c2sq = Fraction(2 * a2 + s, 2) ** 2
    m, n = r + 1, s + 1
    t1_rw = (m * gap / c1sq) * (Fraction(n) / c2sq)
    t12_rw = gap * (gap + Fraction(r * (r + 2), 2 * m)) * Fraction(n * n * m) / (
        c2sq**2 * c1sq
    ) + Fraction(r * (r + 2), 4 * m) * Fraction(n * n * m * m) * gap**2 / (c2sq**2 * c1sq**2)
    t123_rw = (
        Fraction(1, 16)
        * (Fraction(1, n * n) - Fraction(1, m * m))
        * Fraction(n * n * m)
        / (c2sq**2 * c1sq)
        + Fraction(n * n - m * m, 16) * Fraction(n**3 * m) * gap / (c2sq**3 * c1sq)
        + Fraction(r * (r + 2), 4 * m) * Fraction(n * n * m * m) * gap**2 / (c2sq**2 * c1sq**2)
        + Fraction(3 * m**3 * n**3, 16) * gap / (c2sq**3 * c1sq)
        + Fraction(3 * m**4 * n**3, 16) * gap**2 / (c2sq**3 * c1sq**2)
        + Fraction(m**5 * n**3, 16) * gap**3 / (c2sq**3 * c1sq**3)
    )
    return (
        terms[0] == t1_rw
        and terms[0] + terms[1] == t12_rw
        and terms[0] + terms[1] + terms[2] == t123_rw
    )


def taylor_decompose(pair: IntervalPair) -> DecompositionReport:
    """Split G(a1, r) - G(a2, s) into six closed-form terms plus a residual.

    Requires a disjoint pair in canonical order.  The closed forms arise
    from degree-8 expansion of 1/x^2 around each window's half-integer
    center; the centered power sums that justify them are re-verified
    against direct summation for the given extents.
    """
    if not pair.disjoint:
        raise ValueError(f"{pair} overlaps; reduce it to a disjoint pair first")
    r, s = pair.first.r, pair.second.r
    terms, difference = _decomposition_terms(pair)
    if sum(terms) != difference:
        raise AssertionError(f"residual bookkeeping broke for {pair}")
    gap = compute_L(r, s)
    e11 = check_necessary_identity(pair)
    return DecompositionReport(
        pair=pair,
        L=gap,
        terms=terms,
        difference=difference,
        e11=e11,
        expansion_sums_verified=_verify_expansion_sums(r, s),
        rewrites_verified=_verify_rewrites(pair, terms, gap) if e11 else None,
    )


# coefficient positivity facts used when regrouping the leading terms;
# each vanishes at extent 0, so the verified domain starts at r, s >= 1
def coefficient_sign_facts(r: int, s: int) -> dict[str, Fraction]:
    m, n = Fraction(r + 1), Fraction(s + 1)
    return {
        "head_regroup": n**2 + 2 * m**2 - 10 + 6 / m**2 + 1 / n**2,
        "gap_square": 3 * m**2 / 16 - Fraction(5, 8) + 7 / (16 * m**2),
        "gap_cube": m**2 / 16 - Fraction(5, 24) + 7 / (48 * m**2),
    }


def sweep_sign_facts(limit: int) -> SweepResult:
    """Record exactly where each coefficient sign fact fails on [0, limit]^2.

    Denominators are cleared (multiplied by positive squares), so the box
    is scanned in pure integer arithmetic; `coefficient_sign_facts` gives
    the same verdicts pointwise.  Both gap facts clear to the same
    polynomial 3m^4 - 10m^2 + 7 = (m^2 - 1)(3m^2 - 7), m = r + 1.
    """
    result = SweepResult("coefficient-sign-facts", {"limit": limit})
    failing = {"head_regroup": [], "gap_square": [], "gap_cube": []}
    for r in range(0, limit + 1):
        m2 = (r + 1) ** 2
        if not 3 * m2 * m2 - 10 * m2 + 7 > 0:
            failing["gap_square"].append(r)
            failing["gap_cube"].append(r)
        for s in range(0, limit + 1):
            result.checked += 1
            n2 = (s + 1) ** 2
            if not n2 * m2 * (n2 + 2 * m2 - 10) + 6 * n2 + m2 > 0:
                failing["head_regroup"].append((r, s))
    result.notes["failing"] = failing
    result.failures = [
        inst for inst in failing["head_regroup"] if inst[0] >= 1 and inst[1] >= 1
    ] + [r for r in failing["gap_square"] + failing["gap_cube"] if r >= 1]
    return result


# ---------------------------------------------------------------------------
# the positivity chain
# ---------------------------------------------------------------------------


def check_positivity_chain(pair: IntervalPair) -> DecompositionReport:
    """Certify the sign chain ruling out equal sums, under its hypotheses.

    Hypotheses: s > r, disjoint windows, the necessary identity, and
    a2 >= 4(s+1)^3.  When any fails the report names it and no bound is
    evaluated.  When all hold, every intermediate bound and the final
    positivity of the difference are certified by exact comparison.
    """
    a1, r = pair.first.a, pair.first.r
    a2, s = pair.second.a, pair.second.r
    failures = []
    if not s > r:
        failures.append("s > r")
    if not pair.disjoint:
        failures.append("a2 > a1 + r")
    if not check_necessary_identity(pair):
        failures.append("necessary-identity")
    if not a2 >= 4 * (s + 1) ** 3:
        failures.append("a2 >= 4(s+1)^3")
    if failures:
        report = taylor_decompose(pair) if pair.disjoint else None
        if report is None:
            return DecompositionReport(
                pair=pair,
                L=compute_L(r, s),
                terms=(),
                difference=g_exact(pair.first) - g_exact(pair.second),
                e11=check_necessary_identity(pair),
                expansion_sums_verified=False,
                rewrites_verified=None,
                hypothesis_failures=tuple(failures),
            )
        return DecompositionReport(
            pair=report.pair,
            L=report.L,
            terms=report.terms,
            difference=report.difference,
            e11=report.e11,
            expansion_sums_verified=report.expansion_sums_verified,
            rewrites_verified=report.rewrites_verified,
            hypothesis_failures=tuple(failures),
        )

    report = taylor_decompose(pair)
    t = report.terms
    c1 = Fraction(2 * a1 + r, 2)
    c2 = Fraction(2 * a2 + s, 2)
    n = s + 1
    head5 = t[0] + t[1] + t[2] + t[3] + t[4]
    head6 = head5 + t[5]
    residual_floor = -Fraction(7, 512 * n) / c2**6 - Fraction(1, 32768 * n**3) / c2**10
    bounds = {
        "head_terms_lower": head5 > Fraction(s - r, 6) / c2**6,
        "term6_lower": t[5] > Fraction(r - s, 512) / c2**6,
        "head_six_lower": head6 > Fraction(s - r, 7) / c2**6,
        "residual_intermediate_lower": t[6]
        > -Fraction(7 * (r + 1) ** 5, 64) / c1**8 - Fraction(n**9, 256) / Fraction(a2) ** 10,
        "residual_lower": t[6] > residual_floor,
        "margin_positive": Fraction(s - r, 7) / c2**6 + residual_floor > 0,
        "total_positive": sum(t) > 0,
        "difference_positive": report.difference > 0,
    }
    return DecompositionReport(
        pair=report.pair,
        L=report.L,
        terms=report.terms,
        difference=report.difference,
        e11=report.e11,
        expansion_sums_verified=report.expansion_sums_verified,
        rewrites_verified=report.rewrites_verified,
        bounds=bounds,
    )


# ---------------------------------------------------------------------------
# the unconditional bracket identity
# ---------------------------------------------------------------------------


def check_bracket_identity(
    pair: IntervalPair,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_bits: int = MAX_PRECISION_BITS,
) -> Verdict:
    """Certify the offset-bracket identity that ties the two windows together.

    With A(window) = (4a+2w)(1-2*eta) - 1 + (1-2*eta)^2, B the integer
    brackets and G the exact sums, the identity

        (s+1)*A1 - (r+1)*A2
            = (r+1)*B2 - (s+1)*B1 + 4(r+1)(s+1)(1/G1 - 1/G2)

    holds for every pair of windows (it reduces to the conditional printed
    form exactly when G1 = G2).  The left side is evaluated in enclosure
    arithmetic, the right side exactly; CERTIFIED means the residual
    enclosure contains 0 at width <= 2^(4 - precision_bits).
    """
    a1, r = pair.first.a, pair.first.r
    a2, s = pair.second.a, pair.second.r
    b1 = diophantine_bracket(a1, r)
    b2 = diophantine_bracket(a2, s)
    rhs = (r + 1) * b2 - (s + 1) * b1 + 4 * (r + 1) * (s + 1) * (
        1 / g_exact(pair.first) - 1 / g_exact(pair.second)
    )
    tolerance = Fraction(2) ** (4 - precision_bits)
    w = precision_bits
    while True:
        t1 = 1 - 2 * solve_eta(pair.first, w, max_bits).eta
        t2 = 1 - 2 * solve_eta(pair.second, w, max_bits).eta
        lhs = (s + 1) * ((4 * a1 + 2 * r) * t1 - 1 + t1 * t1) - (r + 1) * (
            (4 * a2 + 2 * s) * t2 - 1 + t2 * t2
        )
        residual = lhs - Enclosure.from_fraction(rhs, w)
        if not residual.contains_zero():
            return Verdict.FALSIFIED
        if residual.width <= tolerance:
            return Verdict.CERTIFIED
        if w >= max_bits:
            return Verdict.INCONCLUSIVE
        w = min(2 * w, max_bits)


# ---------------------------------------------------------------------------
# sweeps used by the CLI and the acceptance suite
# ---------------------------------------------------------------------------


def random_disjoint_pairs(count: int, seed: int, max_total: int = 500):
    """Deterministic stream of disjoint pairs with a2 + s <= max_total."""
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < count:
        r = rng.randint(0, 24)
        s = rng.randint(0, 24)
        a1 = rng.randint(1, 100)
        low = a1 + r + 1
        high = max_total - s
        if low > high:
            continue
        a2 = rng.randint(low, high)
        pairs.append(IntervalPair(Interval(a1, r), Interval(a2, s)))
    return pairs


def sweep_eta_band(
    a_max: int, r_max: int, precision_bits: int = DEFAULT_PRECISION_BITS
) -> SweepResult:
    """Band certification over the full (a, r) grid; failures are recorded
    per band side, faithfully (the quadratic-form upper side is known to
    fail near the diagonal of small windows)."""
    result = SweepResult(
        "eta-band", {"a_max": a_max, "r_max": r_max, "precision_bits": precision_bits}
    )
    for a in range(1, a_max + 1):
        for r in range(0, r_max + 1):
            result.checked += 1
            report = eta_band_report(Interval(a, r), precision_bits)
            if not report.all_hold:
                result.failures.append(
                    {
                        "a": a,
                        "r": r,
                        "q_lower": report.q_lower_holds,
                        "q_upper": report.q_upper_holds,
                        "expr_lower": report.expr_lower_holds,
                        "expr_upper": report.expr_upper_holds,
                        "expr_exact": report.expr_exact,
                        "expr_bound": report.expr_bound,
                    }
                )
    return result


def sweep_eta_enclosures(
    a_max: int, r_max: int, precision_bits: int = DEFAULT_PRECISION_BITS
) -> SweepResult:
    """solve_eta over the grid: width and strict-bracket certificates."""
    width_cap = Fraction(1, 2**precision_bits)
    result = SweepResult(
        "eta-enclosure", {"a_max": a_max, "r_max": r_max, "precision_bits": precision_bits}
    )
    for a in range(1, a_max + 1):
        for r in range(0, r_max + 1):
            result.checked += 1
            sol = solve_eta(Interval(a, r), precision_bits)
            ok = sol.eta.width <= width_cap and (r == 0 or sol.strict_inside)
            if not ok:
                result.failures.append({"a": a, "r": r})
    return result


def sweep_telescope(n_max: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> SweepResult:
    result = SweepResult("telescope", {"n_max": n_max, "precision_bits": precision_bits})
    for n in range(1, n_max + 1):
        result.checked += 1
        if telescope_check(n, precision_bits) is not Verdict.CERTIFIED:
            result.failures.append({"n": n})
    return result


def sweep_epsilon_monotone(
    n_max: int, precision_bits: int = DEFAULT_PRECISION_BITS
) -> SweepResult:
    """Strict increase of the telescoping offset via disjoint enclosures."""
    from .sums import epsilon

    result = SweepResult(
        "epsilon-monotone", {"n_max": n_max, "precision_bits": precision_bits}
    )
    previous = epsilon(1, precision_bits)
    for n in range(2, n_max + 1):
        current = epsilon(n, precision_bits)
        result.checked += 1
        if not previous.strictly_below(current):
            result.failures.append({"n": n})
        previous = current
    return result


def sweep_bracket_identity(
    count: int,
    seed: int,
    max_total: int = 200,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> SweepResult:
    result = SweepResult(
        "bracket-identity",
        {"count": count, "seed": seed, "max_total": max_total, "precision_bits": precision_bits},
    )
    for pair in random_disjoint_pairs(count, seed, max_total):
        result.checked += 1
        verdict = check_bracket_identity(pair, precision_bits)
        if verdict is not Verdict.CERTIFIED:
            result.failures.append({"pair": str(pair), "verdict": verdict.value})
    return result


def sweep_decompose(count: int, seed: int, max_total: int = 500) -> SweepResult:
    result = SweepResult(
        "decompose", {"count": count, "seed": seed, "max_total": max_total}
    )
    for pair in random_disjoint_pairs(count, seed, max_total):
        result.checked += 1
        report = taylor_decompose(pair)
        ok = (
            sum(report.terms) == report.difference
            and report.expansion_sums_verified
            and (report.rewrites_verified is None or report.rewrites_verified)
        )
        if not ok:
            result.failures.append({"pair": str(pair)})
    return result


def sweep_e11_box(a_max: int, w_max: int) -> SweepResult:
    """Search the box for identity solutions and vet every disjoint one.

    For disjoint nontrivial solutions the exact sums must differ; when the
    chain hypotheses also hold the difference must be certified positive
    through every intermediate bound.
    """
    result = SweepResult("e11-search", {"a_max": a_max, "w_max": w_max})
    solutions = search_necessary_identity(a_max, w_max)
    result.notes["solutions"] = solutions
    disjoint, eligible = [], []
    for a1, r, a2, s in solutions:
        result.checked += 1
        if (a1, r) == (a2, s):
            continue
        pair = IntervalPair(Interval(a1, r), Interval(a2, s))
        equivalence = check_eq11_equivalence(pair)
        if not equivalence.equivalent or not equivalence.holds:
            result.failures.append({"quad": (a1, r, a2, s), "reason": "forms disagree"})
            continue
        if a1 + r >= a2:
            continue
        disjoint.append((a1, r, a2, s))
        if g_exact(pair.first) == g_exact(pair.second):
            result.failures.append({"quad": (a1, r, a2, s), "reason": "equal sums"})
            continue
        if s > r and a2 >= 4 * (s + 1) ** 3:
            eligible.append((a1, r, a2, s))
            report = check_positivity_chain(pair)
            if not report.chain_certified:
                result.failures.append(
                    {"quad": (a1, r, a2, s), "reason": "chain bound failed", "bounds": report.bounds}
                )
    result.notes["disjoint"] = disjoint
    result.notes["chain_eligible"] = eligible
    return result
