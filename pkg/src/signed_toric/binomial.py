"""Pure difference binomials over edge variables e1..em."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence


@dataclass(frozen=True)
class Binomial:
    """``e^plus - e^minus`` with dense exponent tuples indexed by edge id - 1."""

    plus: tuple[int, ...]
    minus: tuple[int, ...]
    note: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.plus) != len(self.minus):
            raise ValueError("exponent vectors differ in length")
        if any(x < 0 for x in self.plus) or any(x < 0 for x in self.minus):
            raise ValueError("exponents must be nonnegative")

    @classmethod
    def from_vector(cls, b: Sequence[int], note: str = "") -> "Binomial":
        return cls(tuple(max(x, 0) for x in b), tuple(max(-x, 0) for x in b), note)

    @classmethod
    def from_dicts(cls, m: int, plus: dict, minus: dict, note: str = "") -> "Binomial":
        p = [0] * m
        q = [0] * m
        for side, target in ((plus, p), (minus, q)):
            for e, k in side.items():
                target[int(str(e).lstrip("e")) - 1] += int(k)
        return cls(tuple(p), tuple(q), note)

    @property
    def m(self) -> int:
        return len(self.plus)

    def is_zero(self) -> bool:
        return self.plus == self.minus

    def is_reduced(self) -> bool:
        return not any(a and b for a, b in zip(self.plus, self.minus))

    def reduced(self) -> "Binomial":
        common = [min(a, b) for a, b in zip(self.plus, self.minus)]
        return Binomial(
            tuple(a - c for a, c in zip(self.plus, common)),
            tuple(b - c for b, c in zip(self.minus, common)),
            self.note,
        )

    def difference(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.plus, self.minus))

    def negate(self) -> "Binomial":
        return Binomial(self.minus, self.plus, self.note)

    def key(self) -> tuple:
        """Identity up to global sign, after cancelling the common factor."""
        r = self.reduced()
        return min((r.plus, r.minus), (r.minus, r.plus))

    def degree(self) -> int:
        return max(sum(self.plus), sum(self.minus))

    def to_json(self) -> dict:
        def side(exps):
            return {f"e{i}": k for i, k in enumerate(exps, start=1) if k}
        return {"plus": side(self.plus), "minus": side(self.minus), "reduced": self.is_reduced()}

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return f"{monomial_str(self.plus)} - {monomial_str(self.minus)}"


def monomial_str(exps: Sequence[int]) -> str:
    parts = []
    for i, k in enumerate(exps, start=1):
        if k == 1:
            parts.append(f"e{i}")
        elif k > 1:
            parts.append(f"e{i}^{k}")
    return "*".join(parts) if parts else "1"


def binomial_set(bins) -> set:
    """Set of sign-free keys, ignoring zero binomials."""
    return {b.key() for b in bins if not b.reduced().is_zero()}
