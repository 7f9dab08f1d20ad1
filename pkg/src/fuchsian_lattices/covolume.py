"""Exact covolumes.

With the Haar measure normalised so that a lattice's covolume equals
sum over vertex orbits of 1/|Γ_v|, the uniform lattice from G(Y_1) ∪ ... ∪
G(Y_N) has covolume sum_{n<=N} 1/(|U_P|^n |L_P|) and the nonuniform lattice
from G(Y_∞) has covolume 1/(|L_P| (|U_P| - 1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from .algebra import Rational, format_rational


class DivergentSeries(ValueError):
    pass


def covolume_series(orders: Sequence[int]) -> list[Rational]:
    """Partial sums of sum 1/order."""
    out = []
    total = Fraction(0)
    for o in orders:
        if not isinstance(o, int) or o < 1:
            raise ValueError(f"stabiliser order must be a positive integer, got {o!r}")
        total += Fraction(1, o)
        out.append(total)
    return out


def _orders(d) -> tuple[int, int]:
    """(|U_P|, |L_P|) from LeviData or a plain pair."""
    if isinstance(d, tuple):
        return d
    return d.U.order, d.L.order


def nonuniform_covolume(d) -> Rational:
    u, l = _orders(d)
    if u < 2:
        raise DivergentSeries("series diverges: U_P is trivial")
    return Fraction(1, l * (u - 1))


def uniform_covolumes(d, N: int) -> list[Rational]:
    u, l = _orders(d)
    return covolume_series([u ** n * l for n in range(1, N + 1)])


def tail(d, N: int) -> Rational:
    """limit - partial_sum(N) in closed form."""
    u, l = _orders(d)
    return Fraction(1, l * (u - 1) * u ** N)


def nondiscreteness_certificate(d, eps: Rational) -> int:
    """Least N with limit - partial_sum(N) < eps."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    limit = nonuniform_covolume(d)
    u, l = _orders(d)
    N = 1
    partial = Fraction(1, u * l)
    while not limit - partial < eps:
        N += 1
        partial += Fraction(1, u ** N * l)
    return N


def decimal_approx(x: Rational, digits: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


@dataclass
class CovolumeReport:
    summand_orders: list[int]
    partial_sums: list[Rational]
    limit: Rational
    closed_form_inputs: tuple[int, int]
    epsilon: Rational | None = None
    certificate_N: int | None = None

    @classmethod
    def build(cls, d, N: int, eps: Rational | None = None,
              orders: Sequence[int] | None = None) -> CovolumeReport:
        """From LeviData; ``orders`` overrides the summands (e.g. read off a complex)."""
        u, l = _orders(d)
        orders = list(orders) if orders is not None else [u ** n * l for n in range(1, N + 1)]
        cert = nondiscreteness_certificate(d, eps) if eps is not None else None
        return cls(orders, covolume_series(orders), nonuniform_covolume(d), (u, l),
                   Fraction(eps) if eps is not None else None, cert)

    def invariants(self) -> dict[str, bool]:
        u, l = self.closed_form_inputs
        ps = self.partial_sums
        return {
            "partial sums strictly increasing": all(a < b for a, b in zip(ps, ps[1:])),
            "partial sums below limit": all(p < self.limit for p in ps),
            "limit = 1/(|L_P|(|U_P|-1))": self.limit == Fraction(1, l * (u - 1)),
            "tail matches closed form": all(self.limit - p == tail((u, l), n)
                                            for n, p in enumerate(ps, start=1)),
            "covolumes pairwise distinct": len(set(ps)) == len(ps),
        }

    @property
    def ok(self) -> bool:
        return all(self.invariants().values())

    def to_json(self) -> dict:
        u, l = self.closed_form_inputs
        out = {
            "normalisation": "covolume = sum over 0-vertex orbits of 1/|stabiliser|",
            "closed_form_inputs": {"U_P": u, "L_P": l},
            "summand_orders": self.summand_orders,
            "partial_sums": [format_rational(x) for x in self.partial_sums],
            "partial_sums_approx": [decimal_approx(x) for x in self.partial_sums],
            "limit": format_rational(self.limit),
            "limit_approx": decimal_approx(self.limit),
            "invariants": self.invariants(),
            "ok": self.ok,
        }
        if self.epsilon is not None:
            n = self.certificate_N
            out["nondiscreteness"] = {
                "epsilon": format_rational(self.epsilon),
                "N": n,
                "gap": format_rational(tail((u, l), n)),
                "statement": "limit - partial_sum(N) < epsilon, with N distinct uniform covolumes",
            }
        return out


def find_collisions(rows: Sequence[tuple]) -> list[tuple[Rational, list[tuple]]]:
    """Equal covolumes arising from different (q, m).

    Rows are (q, m, k, N, covolume).  The value does not depend on k, so rows
    that differ only in k are not reported.
    """
    seen: dict[Rational, set] = {}
    for q, m, k, N, x in rows:
        seen.setdefault(x, set()).add((q, m, N))
    return [(x, sorted(keys)) for x, keys in sorted(seen.items())
            if len({(q, m) for q, m, _ in keys}) > 1]


def covolume_table(rows: Sequence[tuple], header: bool = True) -> str:
    """TSV lines: q, m, k, N, exact covolume, 12-digit decimal (approximate)."""
    out = ["q\tm\tk\tN\tcovolume\tcovolume_approx"] if header else []
    for q, m, k, N, x in rows:
        out.append(f"{q}\t{m}\t{k}\t{N}\t{format_rational(x)}\t~{decimal_approx(x)}")
    return "\n".join(out) + "\n"
