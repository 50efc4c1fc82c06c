"""Symbol alphabets for M-ary ASK and their occurrence probabilities."""

from __future__ import annotations

from dataclasses import dataclass

SUM_TOL = 1e-12


def _is_power_of_two(n: int) -> bool:
    return n >= 2 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class SymbolSet:
    """An M-symbol alphabet with probabilities sorted descending.

    ``patterns`` keeps the bit-string identity of each symbol so reports can
    name symbols the way a codebook would, while the optimizers only ever
    look at the descending probability vector.
    """

    order: int
    probabilities: tuple[float, ...]
    patterns: tuple[str, ...]

    def __post_init__(self) -> None:
        if not _is_power_of_two(self.order):
            raise ValueError("order must be a power of two >= 2")
        if len(self.probabilities) != self.order:
            raise ValueError("probability count must equal order")
        if len(self.patterns) != self.order:
            raise ValueError("pattern count must equal order")
        if abs(sum(self.probabilities) - 1.0) > SUM_TOL:
            raise ValueError("probabilities must sum to one")
        width = self.order.bit_length() - 1
        for p in self.probabilities:
            if not 0.0 <= p <= 1.0:
                raise ValueError("each probability must lie in [0, 1]")
        for a, b in zip(self.probabilities, self.probabilities[1:]):
            if a < b:
                raise ValueError("probabilities must be sorted descending")
        if len(set(self.patterns)) != self.order:
            raise ValueError("patterns must be distinct")
        for pat in self.patterns:
            if len(pat) != width or set(pat) - {"0", "1"}:
                raise ValueError(f"pattern {pat!r} is not a {width}-bit string")

    @classmethod
    def from_probabilities(cls, probabilities) -> "SymbolSet":
        """Build a set from an explicit descending probability vector.

        Patterns are assigned in decimal-descending order; use this for
        synthetic alphabets whose probabilities do not come from a bit model.
        """
        probs = tuple(float(p) for p in probabilities)
        order = len(probs)
        width = max(order.bit_length() - 1, 1)
        patterns = tuple(format(v, f"0{width}b")
                         for v in range(order - 1, -1, -1))
        return cls(order, probs, patterns)


def from_bit_probability(p_one: float, order: int) -> SymbolSet:
    """Symbol probabilities for independent bits with P{bit = 1} = ``p_one``.

    Each pattern's probability is p_one^(#ones) * (1 - p_one)^(#zeros).
    Patterns start in decimal-descending order and are stably sorted by
    probability, so equal-probability patterns keep their decimal order.
    (For order 8 this genuinely reorders: pattern ``100`` is rarer than
    ``011`` whenever ones dominate.)
    """
    if not 0.0 <= p_one <= 1.0:
        raise ValueError("p_one must lie in [0, 1]")
    if not _is_power_of_two(order):
        raise ValueError("order must be a power of two >= 2")
    width = order.bit_length() - 1
    patterns = [format(v, f"0{width}b") for v in range(order - 1, -1, -1)]
    weighted = [(p_one ** pat.count("1") * (1.0 - p_one) ** pat.count("0"), pat)
                for pat in patterns]
    weighted.sort(key=lambda pair: -pair[0])  # stable: ties keep decimal order
    probs = tuple(w for w, _ in weighted)
    pats = tuple(pat for _, pat in weighted)
    return SymbolSet(order, probs, pats)
