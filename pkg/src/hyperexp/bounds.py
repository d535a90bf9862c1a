"""Closed-form expansion bounds, evaluated with outward rounding.

The formulas mix ``ln``, ``log2`` and powers of 2, so they are evaluated in
interval arithmetic and the *upper* endpoint is returned as an exact
``Fraction``. A set whose exact expansion is ``<=`` the returned value is then
guaranteed to satisfy the true bound as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath.ctx_iv import MPIntervalContext
from mpmath.libmp import finf, fnan, fninf

from .graph import DomainError

# private context so the working precision never depends on global mpmath state
iv = MPIntervalContext()
iv.prec = 256


def _iv(x) -> "iv.mpf":
    x = Fraction(x)
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def _log2(x):
    return iv.log(x) / iv.log(iv.mpf(2))


def _to_fraction(raw) -> Fraction:
    if raw in (finf, fninf, fnan):
        raise DomainError("bound evaluation overflowed")
    sign, man, exp, _ = raw
    val = Fraction(int(man)) * (Fraction(2) ** exp)
    return -val if sign else val


def _upper(x) -> Fraction:
    return _to_fraction(x._mpi_[1])


def _lower(x) -> Fraction:
    return _to_fraction(x._mpi_[0])


def _check(n: int, d: int, delta, mu) -> None:
    if n < 4:
        raise DomainError(f"bounds need n >= 4, got {n}")
    if d < 2:
        raise DomainError(f"bounds need d >= 2, got {d}")
    if Fraction(delta) < Fraction(1, 2):
        raise DomainError(f"bounds need delta >= 1/2 (use the effective delta), got {delta}")
    if not 0 < Fraction(mu) < 1:
        raise DomainError(f"mu must lie in (0, 1), got {mu}")


def _part_two_terms(Delta, n, d, delta, mu, const: int, denom_const: int, log_n):
    """(1/Delta)^(1-mu) and const*log_n / (Delta * 2^(Delta^mu / (denom_const*delta*log2(2d))))."""
    D = _iv(Delta)
    muv = _iv(mu)
    first = (1 / D) ** (1 - muv)
    expo = D ** muv / (denom_const * _iv(delta) * _log2(_iv(2 * d)))
    second = const * log_n / (D * iv.mpf(2) ** expo)
    return first, second


def theorem1_bound(Delta: int, n: int, d: int, delta, mu) -> Fraction:
    """min{ 8 ln(n/2)/Delta, max{ (1/Delta)^(1-mu), 500 ln n / (Delta 2^(Delta^mu/(28 delta log2(2d)))) } }."""
    return theorem1_terms(Delta, n, d, delta, mu).bound


@dataclass(frozen=True)
class Theorem1Terms:
    ball_term: Fraction      # 8 ln(n/2) / Delta
    power_term: Fraction     # (1/Delta)^(1-mu)
    decay_term: Fraction     # 500 ln n / (Delta 2^...)

    @property
    def cylinder_term(self) -> Fraction:
        return max(self.power_term, self.decay_term)

    @property
    def bound(self) -> Fraction:
        return min(self.ball_term, self.cylinder_term)


def theorem1_terms(Delta: int, n: int, d: int, delta, mu) -> Theorem1Terms:
    if Delta < 1:
        raise DomainError(f"Delta must be >= 1, got {Delta}")
    _check(n, d, delta, mu)
    ball_term = 8 * iv.log(_iv(Fraction(n, 2))) / _iv(Delta)
    first, second = _part_two_terms(Delta, n, d, delta, mu, 500, 28, iv.log(_iv(n)))
    return Theorem1Terms(_upper(ball_term), _upper(first), _upper(second))


def corollary1_bound(n: int, d: int, delta, mu) -> Fraction:
    """max{ (log d / log n)^(1-mu), 500 log d / 2^(log^mu n / (28 delta log^(1+mu)(2d))) }, logs base 2."""
    _check(n, d, delta, mu)
    muv = _iv(mu)
    logd, logn = _log2(_iv(d)), _log2(_iv(n))
    first = (logd / logn) ** (1 - muv)
    expo = logn ** muv / (28 * _iv(delta) * _log2(_iv(2 * d)) ** (1 + muv))
    second = 500 * logd / iv.mpf(2) ** expo
    return max(_upper(first), _upper(second))


def theorem3_bound(Delta: int, tau: int, n: int, d: int, delta, mu) -> Fraction:
    """Per-family bound with segment length Delta/tau:
    max{ (tau/Delta)^(1-mu), 360 log2 n / ((Delta/tau) 2^((Delta/tau)^mu / (7 delta log2(2d)))) }."""
    if tau < 1 or Delta < tau:
        raise DomainError(f"need 1 <= tau <= Delta, got tau={tau}, Delta={Delta}")
    _check(n, d, delta, mu)
    first, second = _part_two_terms(Fraction(Delta, tau), n, d, delta, mu, 360, 7,
                                    _log2(_iv(n)))
    return max(_upper(first), _upper(second))


def required_family_size(Delta, d: int, mu) -> int:
    """t = max{ floor(Delta^mu / (56 log2 d)), 1 }."""
    if d < 2:
        raise DomainError(f"need d >= 2, got {d}")
    val = _iv(Delta) ** _iv(mu) / (56 * _log2(_iv(d)))
    lo, hi = _lower(val), _upper(val)
    # floor is exact unless the enclosure straddles an integer
    t = int(lo // 1) if int(lo // 1) == int(hi // 1) else int(hi // 1)
    return max(t, 1)


def alpha1_radius(Delta: int, d: int, mu) -> Fraction:
    """alpha_1 * Delta = Delta^mu / (14 log2(2d)), returned as an upper enclosure."""
    return _upper(_iv(Delta) ** _iv(mu) / (14 * _log2(_iv(2 * d))))


def alpha1_radius_interval(Delta, d: int, mu) -> tuple[Fraction, Fraction]:
    val = _iv(Delta) ** _iv(mu) / (14 * _log2(_iv(2 * d)))
    return _lower(val), _upper(val)


@dataclass(frozen=True)
class TauCheck:
    ok: bool
    statement_ok: bool      # tau < Delta / (42 delta log2(2d) log2(2 Delta))^(1/mu)
    growth_ok: bool         # Delta/(60 tau) 2^((Delta/tau)^mu / (28 delta log2(2d))) > Delta/tau + 2 Delta
    quarter_ok: bool        # tau < Delta / 4
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def validate_tau(Delta: int, tau: int, delta, d: int, mu) -> TauCheck:
    """Check both constraints on the number of segments ``tau``.

    The growth inequality is compared in log2 space; both sides are enclosed
    and a constraint only counts as met when it holds for the whole enclosure.
    """
    if Delta <= 8:
        raise DomainError(f"need Delta > 8, got {Delta}")
    if tau < 1:
        raise DomainError(f"need tau >= 1, got {tau}")
    if not 0 < Fraction(mu) < 1:
        raise DomainError(f"mu must lie in (0, 1), got {mu}")
    D, T, muv, dl = _iv(Delta), _iv(tau), _iv(mu), _iv(delta)
    log2d = _log2(_iv(2 * d))
    limit = D / (42 * dl * log2d * _log2(2 * D)) ** (1 / muv)
    statement_ok = _upper(T) < _lower(limit)
    seg = D / T
    lhs = _log2(seg / 60) + seg ** muv / (28 * dl * log2d)
    rhs = _log2(seg + 2 * D)
    growth_ok = _lower(lhs) > _upper(rhs)
    quarter_ok = 4 * tau < Delta
    failed = [name for name, ok in (("statement", statement_ok), ("growth", growth_ok),
                                    ("quarter", quarter_ok)) if not ok]
    reason = "ok" if not failed else "failed: " + ", ".join(failed)
    return TauCheck(not failed, statement_ok, growth_ok, quarter_ok, reason)


def ehssc_ratio_bound(d: int, delta, n: int) -> Fraction:
    """max{ d^(12 delta + 1), 100 delta, 48 delta + 8 delta log2 n }, upper enclosure."""
    delta = Fraction(delta)
    if n < 2 or d < 1 or delta < 0:
        raise DomainError("need n >= 2, d >= 1, delta >= 0")
    power = _iv(d) ** (12 * _iv(delta) + 1)
    linear = 100 * _iv(delta)
    logterm = 48 * _iv(delta) + 8 * _iv(delta) * _log2(_iv(n))
    return max(_upper(power), _upper(linear), _upper(logterm))
