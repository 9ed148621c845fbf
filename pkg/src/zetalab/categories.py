"""Euler products over isomorphism classes of finite simple objects, each
class entering through its norm (the endomorphism count).  A category is
represented purely by its norm statistics: pairs (norm, class count) in
nondecreasing norm order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ParseError


@dataclass(frozen=True)
class SimpleObjectSpec:
    """Norm statistics (norm, class_count), nondecreasing, norms >= 2.

    density_hint = "prime" states that the norms are no denser than the
    integers (true for primes), enabling an integral tail bound.
    """

    items: tuple[tuple[int, int], ...]
    density_hint: str | None = None

    def __post_init__(self):
        prev = 2
        for norm, count in self.items:
            if norm < 2:
                raise DomainError(f"norm {norm} < 2 would make the Euler factor singular")
            if norm < prev:
                raise DomainError("norms must be nondecreasing")
            if count < 1:
                raise DomainError("class counts must be positive")
            prev = norm

    def up_to(self, norm_bound: int):
        for norm, count in self.items:
            if norm > norm_bound:
                break
            yield norm, count


def sieve_primes(bound: int) -> list[int]:
    if bound < 2:
        return []
    flags = bytearray([1]) * (bound + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, int(math.isqrt(bound)) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(range(p * p, bound + 1, p))
    return [i for i in range(bound + 1) if flags[i]]


def abelian_group_simples(bound: int) -> SimpleObjectSpec:
    """Simple finite abelian groups up to the bound: one class per prime p,
    with endomorphism count p."""
    if bound < 2:
        raise DomainError("bound must be >= 2")
    return SimpleObjectSpec(tuple((p, 1) for p in sieve_primes(bound)), density_hint="prime")


def simples_from_csv(text: str) -> SimpleObjectSpec:
    """Parse "norm,count" lines (optional header, blank lines skipped)."""
    items = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if lineno == 1 and line.lower().replace(" ", "") == "norm,count":
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise ParseError(f"expected 'norm,count', got {line!r}", line=lineno)
        try:
            items.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(f"non-integer field in {line!r}", line=lineno) from None
    return SimpleObjectSpec(tuple(items))


@dataclass(frozen=True)
class CategoryZetaValue:
    value: complex
    factors: tuple[complex, ...]
    norm_bound: int
    tail_log_bound: float | None


def category_zeta(spec: SimpleObjectSpec, s: complex, norm_bound: int) -> CategoryZetaValue:
    """Truncated Euler product of 1/(1 - norm^(-s)) over classes with norm
    <= norm_bound, each class repeated class_count times, multiplied left to
    right in enumeration order.

    When the norm statistics carry a density hint and Re(s) > 1, the log of
    the missing tail is bounded by the integral comparison
    sum_{n > B} n^(-sigma) <= B^(1-sigma)/(sigma-1).
    """
    if norm_bound < 2:
        raise DomainError("norm_bound must be >= 2")
    s = complex(s)
    value = 1.0 + 0.0j
    factors: list[complex] = []
    for norm, count in spec.up_to(norm_bound):
        factor = 1.0 / (1.0 - norm ** (-s))
        for _ in range(count):
            factors.append(factor)
            value *= factor
    tail = None
    sigma = s.real
    if spec.density_hint == "prime" and sigma > 1.0:
        tail = norm_bound ** (1.0 - sigma) / (sigma - 1.0) / (1.0 - norm_bound ** (-sigma))
    return CategoryZetaValue(value, tuple(factors), norm_bound, tail)
